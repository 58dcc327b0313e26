"""Tangent-space model: indefinite inner product and optional almost complex structure.

Everything in this package is pointwise linear algebra on a single model
point: a real dimension ``m``, an index ``s`` (number of negative
directions), a symmetric nondegenerate metric (default
``diag(-1 x s, +1 x (m-s))``), and optionally an operator ``J``.  All
component tables are stored against the model's default basis, negatives
first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, InvalidModel, MissingComplexStructure


def signature_metric(dim: int, index: int) -> np.ndarray:
    """Diagonal metric with `index` leading -1 entries and +1 elsewhere."""
    d = np.ones(dim)
    d[:index] = -1.0
    return np.diag(d)


def standard_complex_structure(dim: int, index: int) -> np.ndarray:
    """Block J pairing coordinates (2k, 2k+1) inside each sign block.

    J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}.  Pairs never straddle the
    negative/positive boundary, which guarantees g-compatibility, so both
    `dim` and `index` must be even.
    """
    if dim % 2 or index % 2:
        raise InvalidModel("standard J needs even dimension and even index")
    J = np.zeros((dim, dim))
    for start, stop in ((0, index), (index, dim)):
        for i in range(start, stop, 2):
            J[i + 1, i] = 1.0
            J[i, i + 1] = -1.0
    return J


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance with a scale floor of 1.

    A residual r measured against a tensor T passes when
    r <= rel * max(1, max|T_component|).
    """

    rel: float = 1e-9

    def __post_init__(self):
        if self.rel <= 0:
            raise ValueError("tolerance must be positive")

    def threshold(self, *arrays) -> float:
        scale = 1.0
        for a in arrays:
            a = np.asarray(a)
            if a.size:
                scale = max(scale, float(np.max(np.abs(a))))
        return self.rel * scale


def as_tolerance(tol) -> Tolerance:
    return tol if isinstance(tol, Tolerance) else Tolerance(float(tol))


@dataclass(frozen=True)
class ModelPoint:
    """A tangent-space model: dimension, index, metric, optional J.

    The constructor checks the metric (symmetric, nondegenerate) and the
    shapes of J; the J axioms themselves (J^2 = -id, g-compatibility) are
    checked by :func:`validate_complex_structure` so that deliberately
    broken structures can still be inspected.
    """

    dim: int
    index: int
    metric: np.ndarray = None
    cplx: np.ndarray = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidModel("dimension must be positive")
        if not 0 <= self.index <= self.dim:
            raise InvalidModel("index must lie in [0, dim]")
        g = self.metric
        if g is None:
            g = signature_metric(self.dim, self.index)
        g = np.array(g, dtype=float)
        if g.shape != (self.dim, self.dim):
            raise InvalidModel("metric shape does not match dimension")
        if not np.allclose(g, g.T, rtol=1e-12, atol=1e-12):
            raise InvalidModel("metric must be symmetric")
        if abs(np.linalg.det(g)) <= 1e-12:
            raise InvalidModel("metric must be nondegenerate")
        g.setflags(write=False)
        object.__setattr__(self, "metric", g)
        if self.cplx is not None:
            if self.dim % 2:
                raise InvalidModel("complex structure needs even dimension")
            J = np.array(self.cplx, dtype=float)
            if J.shape != (self.dim, self.dim):
                raise InvalidModel("J shape does not match dimension")
            J.setflags(write=False)
            object.__setattr__(self, "cplx", J)

    @cached_property
    def metric_inv(self) -> np.ndarray:
        inv = np.linalg.inv(self.metric)
        inv.setflags(write=False)
        return inv

    @property
    def has_cplx(self) -> bool:
        return self.cplx is not None

    def require_cplx(self) -> np.ndarray:
        if self.cplx is None:
            raise MissingComplexStructure("model has no almost complex structure")
        return self.cplx

    def check_vec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected a vector of length {self.dim}, got shape {x.shape}")
        return x


def hermitian_model(dim: int, index: int) -> ModelPoint:
    """Model with the default diagonal metric and the standard J."""
    return ModelPoint(dim, index, cplx=standard_complex_structure(dim, index))


def inner(model: ModelPoint, x, y) -> float:
    """Indefinite inner product x^T g y."""
    x = model.check_vec(x)
    y = model.check_vec(y)
    return float(x @ model.metric @ y)


def j_apply(model: ModelPoint, x) -> np.ndarray:
    return model.require_cplx() @ model.check_vec(x)


@dataclass(frozen=True)
class ComplexStructureReport:
    square_residual: float
    compat_residual: float
    verdict: bool


def validate_complex_structure(model: ModelPoint, tol=Tolerance()) -> ComplexStructureReport:
    """Check J^2 = -id and g(JX, JY) = g(X, Y) componentwise."""
    tol = as_tolerance(tol)
    J = model.require_cplx()
    g = model.metric
    sq = float(np.max(np.abs(J @ J + np.eye(model.dim))))
    compat = float(np.max(np.abs(J.T @ g @ J - g)))
    cut = tol.threshold(J, g)
    return ComplexStructureReport(sq, compat, sq <= cut and compat <= cut)
