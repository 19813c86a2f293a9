"""Exact-arithmetic lab for geometry over cyclotomic extensions of the
one-element field.

Subpackages by theme:

* :mod:`f1lab.f1core` - elements, monomials, prime ideals, spectra posets
* :mod:`f1lab.frames` - affine/projective frames and their symmetries
* :mod:`f1lab.congruences` - congruence closures, spectra, maximal points
* :mod:`f1lab.graphmodels` - Cayley cycles, lexicographic blowups, covers
* :mod:`f1lab.finitefield` - the exhaustive finite-field counting oracle
* :mod:`f1lab.counting` - counting polynomials and tower classification
* :mod:`f1lab.zeta` - exact zeta series, product forms, limit checks
* :mod:`f1lab.loosegraphs` - loose trees, their classes and zeta data
* :mod:`f1lab.cli` - the command-line front end
"""

from .finitefield import active_backend

__all__ = ["active_backend"]
__version__ = "0.1.0"
