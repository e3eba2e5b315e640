"""p-adic unit roots of toric exponential sums.

Three independent computations of the unique unit root of the L-function of
an exponential sum on the torus, cross-checked against an exact
character-sum oracle:

  route A  evaluates the analytically continued ratio of hypergeometric
           coefficient series along the Frobenius orbit of the Teichmueller
           point;
  route B  runs power iteration on the dual Frobenius operator restricted
           to a weight-truncated monomial space;
  route C  extracts the unique slope-zero reciprocal root of the truncated
           Fredholm determinant of that operator.

See `unitroots.runner.run` for the orchestrated entry point and
`unitroots.cli` for the command line.
"""

from .errors import *  # noqa: F401,F403
from .hyperg import LaurentSpec, calF_series, hyperg_coefficient_series
from .padic import RingElem, RingSpec, make_ring, teichmueller, valuation, zeta_p
from .runner import JobConfig, Report, run
from .weights import ExponentSet, build_weight_data, weight

__all__ = [
    "LaurentSpec", "calF_series", "hyperg_coefficient_series",
    "RingElem", "RingSpec", "make_ring", "teichmueller", "valuation",
    "zeta_p", "JobConfig", "Report", "run", "ExponentSet",
    "build_weight_data", "weight",
]
