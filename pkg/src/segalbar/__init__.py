"""Simplex categories, reduced bar constructions and strict Segal checks."""
