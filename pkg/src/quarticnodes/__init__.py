"""Exact computations around nodal quartic threefolds in P^4.

Subpackages and modules:

* ``core``: exact scalars over Q and F_p, projective points, linear
  subspaces, sparse homogeneous forms, exact linear algebra.
* ``config``: point configurations, the almost-general-position check and
  excluding subspaces.
* ``conditions`` / ``separators``: the defect of a point set with respect to
  forms of a given degree, the linear-algebra separating-form oracle and the
  constructive separating-cubic builder.
* ``families``: the explicit quartic families, exact node solving,
  Hessian-rank classification and the exhaustive scan over F_p.
* ``invariants``: Hodge numbers, Euler characteristic, Hirzebruch-surface
  divisor arithmetic and rule-based verdicts.
* ``cli``: the ``quarticnodes`` command.
"""

from __future__ import annotations

from .conditions import ci_ideal_cubics_dimension, conditions_defect, cone_over_form, separating_form_oracle
from .config import AgpThresholds, PointConfiguration, agp_check, find_excluding_subspace
from .core import GF, QQ, Form, LinearSubspace, ProjectivePoint, evaluate_form, span_dimension
from .separators import CubicCertificate, SeparatorError, build_separating_cubic

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "AgpThresholds",
    "CubicCertificate",
    "Form",
    "LinearSubspace",
    "PointConfiguration",
    "ProjectivePoint",
    "SeparatorError",
    "agp_check",
    "build_separating_cubic",
    "ci_ideal_cubics_dimension",
    "conditions_defect",
    "cone_over_form",
    "evaluate_form",
    "find_excluding_subspace",
    "separating_form_oracle",
    "span_dimension",
]
