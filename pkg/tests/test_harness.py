import csv
import io

import pytest

from pluricap.harness import (REGISTRY, SUITES, SuiteConfig, coverage, rollup_csv, run_all, sharpness_probe,
                              suite_json)
from pluricap.reports import audit

IDS = {
    "polya": {"classical-polya-area", "classical-polya-length", "polya-plane", "slicing", "polya-relative",
              "sphere-moment", "bernstein-walsh-volume", "polya-unified", "polya-norm-ball", "product-formula"},
    "capacity": {"ma-capacity-volume", "alexander-taylor", "logcap-vs-chebyshev"},
    "lemniscate": {"lemniscate-lelong", "lemniscate-polynomial", "lemniscate-cegrell", "sublevel-capacity"},
    "integrability": {"g-moment", "exp-integrability", "lp-integrability", "john-nirenberg", "bmo-bound",
                      "eta-integrability", "eta-exp-integrability", "limsup-integrability",
                      "cegrell-exp-integrability", "cegrell-lp-integrability"},
}


def test_registry_is_complete():
    assert len(REGISTRY) == 27
    for suite, ids in IDS.items():
        assert {k for k, e in REGISTRY.items() if e.suite == suite} == ids
    assert set(SUITES) == set(IDS)


def test_config_round_trip():
    cfg = SuiteConfig(suites=("polya",), theorems=("slicing",), budget="medium", seed=3)
    assert SuiteConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        SuiteConfig(budget="huge")


@pytest.fixture(scope="module")
def full_run():
    return run_all(SuiteConfig(seed=1))


def test_full_small_run(full_run):
    cov = coverage(full_run)
    assert all(v >= 1 for v in cov.values()), cov
    flat = [r for rs in full_run.values() for r in rs]
    assert audit(flat) == []
    assert not [r for r in flat if r.status == "fail"]


def test_rollup_csv(full_run):
    rows = list(csv.DictReader(io.StringIO(rollup_csv(full_run))))
    assert {r["theorem"] for r in rows} == set(REGISTRY)
    assert all(r["fail"] == "0" for r in rows)


def test_runs_are_deterministic():
    cfg = SuiteConfig(suites=("lemniscate",), seed=5)
    a = run_all(cfg)["lemniscate"]
    b = run_all(cfg)["lemniscate"]
    assert suite_json("lemniscate", a, cfg) == suite_json("lemniscate", b, cfg)


def test_theorem_filter():
    cfg = SuiteConfig(suites=("polya",), theorems=("sphere-moment",))
    reps = run_all(cfg)["polya"]
    assert {r.theorem for r in reps} == {"sphere-moment"}


def test_sharpness_slopes():
    rep = sharpness_probe()
    assert rep.ok
    slopes = [f.slope for f in rep.families]
    assert slopes[0] == pytest.approx(2.0, abs=0.05)
    assert slopes[1] == pytest.approx(1.0, abs=0.05)
    assert slopes[2] == pytest.approx(1.0, abs=0.05)
