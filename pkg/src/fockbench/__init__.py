"""Finite-section laboratory for operators on the Fock space F^2."""
