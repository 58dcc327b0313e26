"""Frames and 2-planes: indefinite Gram-Schmidt, classification, sampling.

Plane kinds are named by the rank of the restricted metric (nondegenerate /
weakly isotropic / strongly isotropic) and, when a complex structure is
present, by their relation to J (holomorphic: J-invariant; antiholomorphic:
orthogonal to its J-image).

Sampling is deterministic: sample ``i`` of a call with seed ``k`` draws from
``numpy.random.default_rng([k, i])`` (PCG64 seeded through numpy's
SeedSequence mixing), so disjoint consumers can split work by sample index.
Every sampled object satisfies its kind's defining predicate by
construction, not by rejection near the light cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DegeneratePlane,
    DegenerateSubspace,
    DependentInput,
    UnsupportedSignature,
)
from .model import ModelPoint, Tolerance, as_tolerance, inner
from .tensors import check_quad, quad_eval

_SEED_MASK = (1 << 63) - 1


class PlaneKind(Enum):
    WEAKLY_ISOTROPIC = "weakly-isotropic"
    STRONGLY_ISOTROPIC = "strongly-isotropic"
    WEAKLY_ISOTROPIC_ANTIHOLOMORPHIC = "weakly-isotropic-antiholomorphic"
    STRONGLY_ISOTROPIC_ANTIHOLOMORPHIC = "strongly-isotropic-antiholomorphic"
    ISOTROPIC_HOLOMORPHIC = "isotropic-holomorphic"
    NONDEGENERATE_ANTIHOLOMORPHIC = "nondegenerate-antiholomorphic"
    QUADRUPLE_PPMM = "quadruple-ppmm"
    ANTIHOLOMORPHIC_QUADRUPLE_PPMM = "antiholomorphic-quadruple-ppmm"


class PlaneClass(Enum):
    NONDEGENERATE = "nondegenerate"
    WEAKLY_ISOTROPIC = "weakly isotropic"
    STRONGLY_ISOTROPIC = "strongly isotropic"


class Holomorphy(Enum):
    HOLOMORPHIC = "holomorphic"
    ANTIHOLOMORPHIC = "antiholomorphic"
    GENERIC = "generic"


@dataclass(frozen=True)
class Plane:
    """A 2-plane given by an (unnormalized) basis pair."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))

    def gram(self, model: ModelPoint) -> np.ndarray:
        gxx = inner(model, self.x, self.x)
        gxy = inner(model, self.x, self.y)
        gyy = inner(model, self.y, self.y)
        return np.array([[gxx, gxy], [gxy, gyy]])


@dataclass(frozen=True)
class Frame:
    """An ordered orthonormal vector list with +/-1 sign labels."""

    vectors: np.ndarray  # shape (k, m), rows are the frame vectors
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "vectors", np.asarray(self.vectors, dtype=float))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    def __len__(self):
        return len(self.signs)


def _check_independent(vectors: np.ndarray, count: int):
    if np.linalg.matrix_rank(vectors, tol=1e-12 * max(1.0, float(np.max(np.abs(vectors))))) < count:
        raise DependentInput("input vectors are linearly dependent")


def gram_schmidt_indefinite(model, vectors, seed: int = 0, extend: bool = False,
                            tol=Tolerance()) -> Frame:
    """Orthonormalize `vectors` with respect to the indefinite metric.

    Pivots on the candidate with the largest |g(w,w)| (ties broken by
    lowest index).  Raises DegenerateSubspace when all remaining
    self-products fall below tolerance, DependentInput for dependent
    inputs.  With ``extend=True``, the frame is completed to a full basis
    using seeded random candidates.
    """
    tol = as_tolerance(tol)
    work = [model.check_vec(v).copy() for v in vectors]
    if not work:
        raise DependentInput("need at least one vector")
    _check_independent(np.stack(work), len(work))
    scale = max(1.0, max(abs(inner(model, v, v)) for v in work))
    cut = tol.rel * scale

    chosen, signs = [], []
    while work:
        norms = [inner(model, w, w) for w in work]
        k = int(np.argmax([abs(q) for q in norms]))
        if abs(norms[k]) <= cut:
            raise DegenerateSubspace("the metric restricted to the span has a radical")
        w = work.pop(k)
        q = norms[k]
        u = w / np.sqrt(abs(q))
        sgn = 1 if q > 0 else -1
        chosen.append(u)
        signs.append(sgn)
        work = [v - sgn * inner(model, v, u) * u for v in work]

    if extend:
        rng = np.random.default_rng([seed & _SEED_MASK, 0])
        while len(chosen) < model.dim:
            for _ in range(500):
                v = rng.uniform(-1.0, 1.0, model.dim)
                for u, sgn in zip(chosen, signs):
                    v = v - sgn * inner(model, v, u) * u
                q = inner(model, v, v)
                if abs(q) > 0.05:
                    chosen.append(v / np.sqrt(abs(q)))
                    signs.append(1 if q > 0 else -1)
                    break
            else:  # pragma: no cover - cannot happen for a nondegenerate metric
                raise DegenerateSubspace("random completion failed")
    return Frame(np.stack(chosen), tuple(signs))


def classify_plane(model: ModelPoint, p: Plane, tol=Tolerance()) -> PlaneClass:
    """Rank of the restricted metric: 2, 1 or 0."""
    tol = as_tolerance(tol)
    _check_independent(np.stack([p.x, p.y]), 2)
    gram = p.gram(model)
    sv = np.linalg.svd(gram, compute_uv=False)
    cut = tol.rel * (1.0 + float(np.max(np.abs(gram))))
    rank = int(np.sum(sv > cut))
    return (PlaneClass.STRONGLY_ISOTROPIC, PlaneClass.WEAKLY_ISOTROPIC,
            PlaneClass.NONDEGENERATE)[rank]


def classify_holomorphy(model: ModelPoint, p: Plane, tol=Tolerance()) -> Holomorphy:
    """Holomorphic if J maps the plane to itself, antiholomorphic if J maps
    it into its g-orthogonal complement (and not onto itself)."""
    tol = as_tolerance(tol)
    J = model.require_cplx()
    basis = np.stack([p.x, p.y], axis=1)  # m x 2
    jx, jy = J @ p.x, J @ p.y
    # span membership is metric-independent, plain least squares suffices
    holo = True
    for w in (jx, jy):
        coeff, *_ = np.linalg.lstsq(basis, w, rcond=None)
        if np.max(np.abs(basis @ coeff - w)) > tol.rel * (1.0 + float(np.max(np.abs(w)))):
            holo = False
            break
    if holo:
        return Holomorphy.HOLOMORPHIC
    cut = tol.threshold(np.stack([p.x, p.y]))
    prods = [inner(model, u, J @ v) for u in (p.x, p.y) for v in (p.x, p.y)]
    if max(abs(q) for q in prods) <= cut:
        return Holomorphy.ANTIHOLOMORPHIC
    return Holomorphy.GENERIC


def sectional_curvature(model: ModelPoint, R, p: Plane, tol=Tolerance()) -> float:
    """K = R(x,y,y,x) / (g(x,x)g(y,y) - g(x,y)^2) on a nondegenerate plane."""
    R = check_quad(model, R)
    tol = as_tolerance(tol)
    gram = p.gram(model)
    disc = gram[0, 0] * gram[1, 1] - gram[0, 1] ** 2
    if abs(disc) <= tol.rel * (1.0 + float(np.max(np.abs(gram))) ** 2):
        raise DegeneratePlane("plane is metrically degenerate")
    return quad_eval(R, p.x, p.y, p.y, p.x) / disc


# ---------------------------------------------------------------------------
# seeded samplers
# ---------------------------------------------------------------------------


def _sample_rng(seed: int, i: int) -> np.random.Generator:
    return np.random.default_rng([seed & _SEED_MASK, i])


def _random_frame(model, signs, rng, antiholomorphic=False, orthogonal_to=()):
    """Orthonormal frame with prescribed sign labels by projection + rejection.

    With ``antiholomorphic=True`` each new vector is also projected off the
    J-images of the previous ones (and of the `orthogonal_to` seeds), so all
    pairs of the result span antiholomorphic planes.
    """
    m = model.dim
    J = model.cplx if (antiholomorphic or orthogonal_to) else None
    pinned = []
    for u in orthogonal_to:
        pinned.append((u, inner(model, u, u)))
        if J is not None:
            ju = J @ u
            pinned.append((ju, inner(model, ju, ju)))
    chosen = []
    for want in signs:
        for _ in range(1000):
            v = rng.uniform(-1.0, 1.0, m)
            for _pass in range(2):  # second pass tightens orthogonality to ~ulp
                for u, q in pinned:
                    v = v - (inner(model, v, u) / q) * u
                for u, sgn in chosen:
                    v = v - sgn * inner(model, v, u) * u
                    if antiholomorphic:
                        ju = J @ u
                        v = v - sgn * inner(model, v, ju) * ju
            q = inner(model, v, v)
            if abs(q) > 0.2 and (q > 0) == (want > 0):
                chosen.append((v / np.sqrt(abs(q)), want))
                break
        else:
            raise UnsupportedSignature(
                f"could not realize a frame of signature {signs} in ({model.index},{model.dim - model.index})")
    return [u for u, _ in chosen]


def _kind_admissible(model: ModelPoint, kind: PlaneKind) -> bool:
    s, pos = model.index, model.dim - model.index
    has_j = model.has_cplx
    if kind is PlaneKind.WEAKLY_ISOTROPIC:
        return (s >= 1 and pos >= 2) or (s >= 2 and pos >= 1)
    if kind in (PlaneKind.STRONGLY_ISOTROPIC, PlaneKind.QUADRUPLE_PPMM):
        return s >= 2 and pos >= 2
    if kind is PlaneKind.WEAKLY_ISOTROPIC_ANTIHOLOMORPHIC:
        return has_j and ((s >= 2 and pos >= 4) or (s >= 4 and pos >= 2))
    if kind in (PlaneKind.STRONGLY_ISOTROPIC_ANTIHOLOMORPHIC,
                PlaneKind.ANTIHOLOMORPHIC_QUADRUPLE_PPMM):
        return has_j and s >= 4 and pos >= 4
    if kind is PlaneKind.ISOTROPIC_HOLOMORPHIC:
        return has_j and ((s >= 1 and pos >= 2) or (s >= 2 and pos >= 1))
    if kind is PlaneKind.NONDEGENERATE_ANTIHOLOMORPHIC:
        return has_j and (pos >= 4 or s >= 4 or (s >= 2 and pos >= 2))
    raise ValueError(f"unknown plane kind {kind}")


def _sample_one(model: ModelPoint, kind: PlaneKind, rng):
    s, pos = model.index, model.dim - model.index
    if kind is PlaneKind.WEAKLY_ISOTROPIC:
        if s >= 1 and pos >= 2:
            x, y, a = _random_frame(model, (1, 1, -1), rng)
        else:
            x, y, a = _random_frame(model, (-1, -1, 1), rng)
        return Plane(x + a, y)
    if kind is PlaneKind.STRONGLY_ISOTROPIC:
        x, y, a, b = _random_frame(model, (1, 1, -1, -1), rng)
        return Plane(x + a, y + b)
    if kind is PlaneKind.WEAKLY_ISOTROPIC_ANTIHOLOMORPHIC:
        if s >= 2 and pos >= 4:
            x, y, a = _random_frame(model, (1, 1, -1), rng, antiholomorphic=True)
        else:
            x, y, a = _random_frame(model, (-1, -1, 1), rng, antiholomorphic=True)
        return Plane(y + a, x)
    if kind is PlaneKind.STRONGLY_ISOTROPIC_ANTIHOLOMORPHIC:
        x, y, a, b = _random_frame(model, (1, 1, -1, -1), rng, antiholomorphic=True)
        return Plane(x + a, y + b)
    if kind is PlaneKind.ISOTROPIC_HOLOMORPHIC:
        J = model.cplx
        sgn = 1 if (pos >= 2 and s >= 1) else -1
        (x,) = _random_frame(model, (sgn,), rng)
        (a,) = _random_frame(model, (-sgn,), rng, orthogonal_to=(x,))
        xi = x + a
        return Plane(xi, J @ xi)
    if kind is PlaneKind.NONDEGENERATE_ANTIHOLOMORPHIC:
        options = []
        if pos >= 4:
            options.append((1, 1))
        if s >= 2 and pos >= 2:
            options.append((1, -1))
        if s >= 4:
            options.append((-1, -1))
        signs = options[rng.integers(len(options))]
        u, v = _random_frame(model, signs, rng, antiholomorphic=True)
        return Plane(u, v)
    if kind is PlaneKind.QUADRUPLE_PPMM:
        vecs = _random_frame(model, (1, 1, -1, -1), rng)
        return Frame(np.stack(vecs), (1, 1, -1, -1))
    if kind is PlaneKind.ANTIHOLOMORPHIC_QUADRUPLE_PPMM:
        vecs = _random_frame(model, (1, 1, -1, -1), rng, antiholomorphic=True)
        return Frame(np.stack(vecs), (1, 1, -1, -1))
    raise ValueError(f"unknown plane kind {kind}")


_PLANE_CACHE: dict = {}
_PLANE_CACHE_LIMIT = 64


def _model_key(model: ModelPoint):
    return (model.dim, model.index, model.metric.tobytes(),
            model.cplx.tobytes() if model.has_cplx else None)


def sample_planes(model: ModelPoint, kind: PlaneKind, count: int, seed: int = 0) -> list:
    """Deterministic list of planes/frames of the given kind.

    Results are memoized per (model, kind, count, seed); all returned
    objects are immutable.
    """
    if not _kind_admissible(model, kind):
        raise UnsupportedSignature(
            f"kind {kind.value} impossible for signature ({model.index},{model.dim - model.index})"
            + ("" if model.has_cplx else " without J"))
    key = (_model_key(model), kind, count, seed)
    hit = _PLANE_CACHE.get(key)
    if hit is not None:
        return hit
    out = [_sample_one(model, kind, _sample_rng(seed, i)) for i in range(count)]
    if len(_PLANE_CACHE) >= _PLANE_CACHE_LIMIT:
        _PLANE_CACHE.clear()
    _PLANE_CACHE[key] = out
    return out
