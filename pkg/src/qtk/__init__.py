"""Exact cohomology rings of generalized quasitoric manifolds and bundles.

Three presentations of the same ring are implemented and cross-checked:
divisor polynomials modulo Stanley-Reisner and bundle relations (srbundle),
piecewise polynomials on the fan (ppbrion), and differential operators modulo
the annihilator of a potential (invsys).  Intersection numbers are computed
both topologically and as exact integrals over multi-polytopes (multipoly).
"""

__version__ = "0.1.0"
