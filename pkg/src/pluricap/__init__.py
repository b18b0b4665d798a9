"""Numerical pluripotential theory: capacities, extremal functions and verified inequalities."""
