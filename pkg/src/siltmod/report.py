"""Verdict reports with re-checkable linear-algebra claims.

A claim records a matrix over F_p together with an asserted property (its
rank, surjectivity, injectivity, or a solution of a linear system).  ``recheck``
re-verifies every claim found in a serialized report using only ``exactlin``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el


def _matrix(m) -> list:
    m = np.asarray(m, dtype=np.int64)
    return m.tolist()


def _shape(m) -> list:
    return [int(x) for x in np.asarray(m).shape]


def rank_claim(m, p: int, label: str = "") -> dict:
    m = np.asarray(m, dtype=np.int64)
    return {"claim": "rank", "label": label, "p": p, "shape": _shape(m), "matrix": _matrix(m), "value": el.rank(m, p)}


def surjective_claim(m, p: int, label: str = "") -> dict:
    m = np.asarray(m, dtype=np.int64)
    return {
        "claim": "surjective",
        "label": label,
        "p": p,
        "shape": _shape(m),
        "matrix": _matrix(m),
        "value": el.is_surjective(m, p),
    }


def injective_claim(m, p: int, label: str = "") -> dict:
    m = np.asarray(m, dtype=np.int64)
    return {
        "claim": "injective",
        "label": label,
        "p": p,
        "shape": _shape(m),
        "matrix": _matrix(m),
        "value": el.is_injective(m, p),
    }


def solution_claim(m, rhs, x, p: int, label: str = "") -> dict:
    """Claim that ``m @ x == rhs`` (column vectors stacked as columns)."""
    m = np.asarray(m, dtype=np.int64)
    return {
        "claim": "solution",
        "label": label,
        "p": p,
        "shape": _shape(m),
        "matrix": _matrix(m),
        "rhs": _matrix(np.asarray(rhs, dtype=np.int64).reshape(m.shape[0], -1)),
        "solution": _matrix(np.asarray(x, dtype=np.int64).reshape(m.shape[1], -1)),
        "value": True,
    }


@dataclass
class Route:
    name: str
    verdict: bool
    certificate: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "verdict": bool(self.verdict), "certificate": self.certificate}


@dataclass
class Report:
    verdict: bool
    routes: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "verdict": bool(self.verdict),
            "routes": [r.as_dict() for r in self.routes],
            "witnesses": self.witnesses,
        }

    def route(self, name: str) -> Route:
        for r in self.routes:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> str:
        return dumps(self.as_dict())

    def __bool__(self) -> bool:
        return bool(self.verdict)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, Report):
        return o.as_dict()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, default=_default, indent=1)


# ---------------------------------------------------------------- recheck


def check_claim(c: dict) -> bool:
    p = el.check_modulus(c["p"])
    shape = tuple(c["shape"])
    m = el.zeros(*shape) if 0 in shape else el.as_matrix(c["matrix"], p, shape)
    kind = c["claim"]
    if kind == "rank":
        return el.rank(m, p) == c["value"]
    if kind == "surjective":
        return el.is_surjective(m, p) == c["value"]
    if kind == "injective":
        return el.is_injective(m, p) == c["value"]
    if kind == "solution":
        rhs = np.asarray(c["rhs"], dtype=np.int64).reshape(shape[0], -1)
        x = np.asarray(c["solution"], dtype=np.int64).reshape(shape[1], -1)
        return bool(np.array_equal(el.matmul(m, x, p), rhs % p))
    raise ValueError(f"unknown claim kind {kind!r}")


def iter_claims(doc, path: str = "$"):
    if isinstance(doc, dict):
        if "claim" in doc and "matrix" in doc:
            yield path, doc
            return
        for k in sorted(doc):
            yield from iter_claims(doc[k], f"{path}.{k}")
    elif isinstance(doc, list):
        for i, x in enumerate(doc):
            yield from iter_claims(x, f"{path}[{i}]")


def recheck(doc) -> list[tuple[str, bool]]:
    """Re-verify every claim embedded in a report document."""
    return [(path, check_claim(c)) for path, c in iter_claims(doc)]
