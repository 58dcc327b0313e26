"""Tensor document files: JSON serialization of a model plus named tensors.

Layout: {"dim": m, "index": s, "metric": [[...]]?, "J": [[...]]?,
"tensors": {"name": [m^4 floats, row-major over (i,j,k,l)]}, "meta": {...}}.
Floats are written with Python's shortest round-trip repr (at most 17
significant digits), so write-then-read is bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDocument
from .model import ModelPoint, validate_complex_structure


@dataclass
class TensorDocument:
    model: ModelPoint
    tensors: dict = field(default_factory=dict)  # name -> (m,m,m,m) ndarray
    meta: dict = field(default_factory=dict)

    def tensor(self, name: str) -> np.ndarray:
        if name not in self.tensors:
            raise InvalidDocument(f"document has no tensor named {name!r}")
        return self.tensors[name]


def save_document(doc: TensorDocument, path) -> None:
    m = doc.model
    obj = {
        "dim": m.dim,
        "index": m.index,
        "metric": m.metric.tolist(),
        "tensors": {name: np.asarray(T).reshape(-1).tolist()
                    for name, T in sorted(doc.tensors.items())},
        "meta": doc.meta,
    }
    if m.has_cplx:
        obj["J"] = m.cplx.tolist()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_document(path) -> TensorDocument:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDocument(f"not valid JSON: {exc}") from exc
    try:
        dim = int(obj["dim"])
        index = int(obj["index"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDocument("document needs integer 'dim' and 'index'") from exc
    if not 0 <= index <= dim:
        raise InvalidDocument("declared index exceeds dimension")
    metric = np.array(obj["metric"], dtype=float) if "metric" in obj else None
    cplx = np.array(obj["J"], dtype=float) if "J" in obj else None
    try:
        model = ModelPoint(dim, index, metric=metric, cplx=cplx)
    except Exception as exc:
        raise InvalidDocument(str(exc)) from exc
    if model.has_cplx and not validate_complex_structure(model).verdict:
        raise InvalidDocument("J fails the complex-structure axioms")
    tensors = {}
    for name, flat in obj.get("tensors", {}).items():
        arr = np.array(flat, dtype=float)
        if arr.size != dim ** 4:
            raise InvalidDocument(f"tensor {name!r} has {arr.size} components, expected {dim ** 4}")
        tensors[name] = arr.reshape((dim,) * 4)
    return TensorDocument(model, tensors, obj.get("meta", {}))
