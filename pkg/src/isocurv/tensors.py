"""Contraction-level operations on dense rank-4 covariant tensors.

Tensors are plain ``(m, m, m, m)`` float arrays indexed (i, j, k, l),
fully covariant, against the model's default basis.  Bilinear forms are
``(m, m)`` arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .model import ModelPoint, Tolerance, as_tolerance


def check_quad(model: ModelPoint, T) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    if T.shape != (model.dim,) * 4:
        raise DimensionMismatch(f"expected a rank-4 tensor of dimension {model.dim}")
    return T


def max_norm(T) -> float:
    T = np.asarray(T)
    return float(np.max(np.abs(T))) if T.size else 0.0


def quad_eval(T, x, y, z, u) -> float:
    """T(x, y, z, u) for component vectors."""
    return float(np.einsum("ijkl,i,j,k,l->", T, x, y, z, u, optimize=True))


def is_symmetric(S, tol=Tolerance()) -> bool:
    S = np.asarray(S, dtype=float)
    return max_norm(S - S.T) <= as_tolerance(tol).threshold(S)


@dataclass(frozen=True)
class CurvatureLikeReport:
    skew_first: float
    skew_last: float
    bianchi: float
    pair_symmetry: float
    verdict: bool


def validate_curvature_like(model: ModelPoint, T, tol=Tolerance()) -> CurvatureLikeReport:
    """Max violations of the curvature-tensor symmetries.

    Checks skewness in the first and last index pairs, the first Bianchi
    cyclic identity, and the derived pair-exchange symmetry
    T(x,y,z,u) = T(z,u,x,y).
    """
    T = check_quad(model, T)
    tol = as_tolerance(tol)
    a = max_norm(T + T.transpose(1, 0, 2, 3))
    b = max_norm(T + T.transpose(0, 1, 3, 2))
    c = max_norm(T + T.transpose(1, 2, 0, 3) + T.transpose(2, 0, 1, 3))
    pair = max_norm(T - T.transpose(2, 3, 0, 1))
    cut = tol.threshold(T)
    return CurvatureLikeReport(a, b, c, pair, max(a, b, c, pair) <= cut)


def ricci(model: ModelPoint, T) -> np.ndarray:
    """Ricci contraction rho(y,z) = sum_i eps_i T(e_i, y, z, e_i)."""
    T = check_quad(model, T)
    return np.einsum("il,iyzl->yz", model.metric_inv, T, optimize=True)


def scalar_curv(model: ModelPoint, T) -> float:
    """Scalar curvature: metric trace of the Ricci contraction."""
    rho = ricci(model, T)
    return float(np.einsum("yz,yz->", model.metric_inv, rho))


def ricci_star(model: ModelPoint, T) -> np.ndarray:
    """J-twisted Ricci contraction rho*(y,z) = sum_i eps_i T(e_i, y, Jz, Je_i).

    Not symmetric in general.
    """
    T = check_quad(model, T)
    J = model.require_cplx()
    return np.einsum("il,iyab,az,bl->yz", model.metric_inv, T, J, J, optimize=True)


def scalar_star(model: ModelPoint, T) -> float:
    """Metric trace of the J-twisted Ricci contraction."""
    rs = ricci_star(model, T)
    return float(np.einsum("yz,yz->", model.metric_inv, rs))


def conjugate(model: ModelPoint, T) -> np.ndarray:
    """Pullback through J in all four slots: T(Jx, Jy, Jz, Ju)."""
    T = check_quad(model, T)
    J = model.require_cplx()
    return np.einsum("abcd,ax,by,cz,du->xyzu", T, J, J, J, J, optimize=True)


def trace_g(model: ModelPoint, S) -> float:
    """Metric trace of a bilinear form."""
    S = np.asarray(S, dtype=float)
    if S.shape != (model.dim,) * 2:
        raise DimensionMismatch(f"expected a bilinear form of dimension {model.dim}")
    return float(np.einsum("ij,ij->", model.metric_inv, S))
