"""Circulant structures ``Q`` (``Q^3 = id``) on 3-dimensional Riemannian manifolds.

Modules:

* :mod:`.expr` scalar expressions in ``x1, x2, x3`` and second-order jets
* :mod:`.tensor3` dense 3-dimensional tensor algebra, float or exact
* :mod:`.manifold` the metric pair ``g``, ``gt``, connection, ``F`` and Lee forms
* :mod:`.conformal` the conformal change ``gbar = alpha g``
* :mod:`.curvature` curvature of both metrics and the relations between them
* :mod:`.liegroup` left-invariant structures on Lie groups, in exact rationals
* :mod:`.suites`, :mod:`.report`, :mod:`.cli` verification suites and the command line
"""

from .expr import Jet2, eval_jet2, parse
from .manifold import MetricField, frame_at
from .curvature import curvature_frame_at
from .conformal import ConformalData, barred_frame_at
from .liegroup import LieAlgebraSpec, ReducedSpec, case_spec, lie_curvature

__version__ = "0.1.0"

__all__ = [
    "Jet2", "eval_jet2", "parse", "MetricField", "frame_at", "curvature_frame_at",
    "ConformalData", "barred_frame_at", "LieAlgebraSpec", "ReducedSpec", "case_spec", "lie_curvature",
]
