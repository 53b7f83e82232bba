"""Computational toolkit for relative outer automorphism groups of
right-angled Artin groups: generator enumeration, invariant special
subgroups, restriction and projection exact sequences, decomposition trees
and bounds on the virtual cohomological dimension.
"""

__version__ = "0.1.0"
