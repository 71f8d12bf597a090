"""
Polar varieties, critical loci and roadmaps of real algebraic sets, with
exact Groebner and zero-dimensional solving underneath and a numerical
harness for checking connectivity claims.
"""
__version__ = "0.1.0"
