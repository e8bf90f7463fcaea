"""Exact and certified tools for hyperelliptic curves with good reduction outside S.

Modules: numberfield (Q and imaginary quadratic fields, places, heights),
forms (polynomials, binary forms, discriminants), weierstrass (models and
changes of variables), reduction (twist, translation and covariant
reduction), bounds (certified evaluation of the height and counting
bounds), enumerate (box search and catalogs), cli.
"""

__version__ = "0.1.0"
