"""Exact generating-function engines for moduli of bundles on a curve.

Three independent pipelines compute the same invariants and are tested
against each other:

* a gauge-theoretic recursion producing Poincare polynomials of the moduli
  spaces of stable bundles (``modrec.yangmills``),
* an arithmetic recursion over finite fields producing exact stacky masses
  and point counts (``modrec.tamagawa``),
* a matrix-divisor decomposition built from symmetric powers of the curve
  (``modrec.matrixdiv``).

Supporting layers: exact polynomial/rational/series arithmetic
(``modrec.exactalg``), curve models and zeta data (``modrec.curve``),
symmetric-power formulas (``modrec.symprod``), filtration types
(``modrec.hn``) and a rank-1 torus stratification toolkit
(``modrec.kirwan``).  ``modrec.cli`` exposes everything as a command line.
"""

from .errors import InvariantViolation, ModrecError, ValidationError

__version__ = "0.1.0"

__all__ = ["InvariantViolation", "ModrecError", "ValidationError", "__version__"]
