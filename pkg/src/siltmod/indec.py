"""Catalogs of indecomposable modules for representation-finite algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import repmod as rm
from .algebra import Algebra
from .config import settings
from .repmod import Module


class NotRepresentationFinite(RuntimeError):
    pass


class StrategyMismatch(ValueError):
    pass


class InconsistentDecomposition(ValueError):
    """Hom counts do not solve to a nonnegative integer vector: the catalog is incomplete."""


class CatalogError(ValueError):
    pass


STRATEGIES = ("hereditary-knitting", "nakayama-intervals", "user-supplied")


def _rational_inverse(h: np.ndarray) -> list[list[Fraction]]:
    import sympy

    inv = sympy.Matrix(h.tolist()).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]


@dataclass(eq=False)
class IndSet:
    """Pairwise non-isomorphic indecomposables with cached Hom/Ext tables.

    ``hom_table[i][j] = dim Hom(U_i, U_j)`` and ``ext_table[i][j] = dim Ext^1(U_i, U_j)``;
    ``tau_map[i]`` is the index of tau(U_i), or None when U_i is projective.
    """

    algebra: Algebra
    modules: list
    hom_table: np.ndarray = field(init=False)
    ext_table: np.ndarray = field(init=False)
    tau_map: list = field(init=False)

    def __post_init__(self):
        n = len(self.modules)
        self.hom_table = np.array(
            [[rm.hom_dim(x, y) for y in self.modules] for x in self.modules], dtype=np.int64
        ).reshape(n, n)
        self.ext_table = np.array(
            [[rm.ext1_dim(x, y) for y in self.modules] for x in self.modules], dtype=np.int64
        ).reshape(n, n)
        try:
            self._hom_inverse = _rational_inverse(self.hom_table) if n else []
        except ValueError:
            raise CatalogError("Hom table is singular; catalog is incomplete or has repeats") from None
        self.tau_map = []
        for u in self.modules:
            t = rm.tau(u)
            self.tau_map.append(None if t.is_zero() else self.index_of(t))

    def __len__(self) -> int:
        return len(self.modules)

    @property
    def names(self) -> list[str]:
        return [m.name for m in self.modules]

    def __getitem__(self, key):
        if isinstance(key, str):
            for m in self.modules:
                if m.name == key:
                    return m
            raise KeyError(key)
        return self.modules[key]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def hom_vector(self, m: Module) -> list[int]:
        return [rm.hom_dim(u, m) for u in self.modules]

    def decompose(self, m: Module) -> "Decomposition":
        """Multiplicities of the catalog modules in ``m`` from Hom counts."""
        if m.algebra is not self.algebra:
            raise CatalogError("module over a different algebra")
        n = len(self.modules)
        v = self.hom_vector(m)
        mult = []
        for i in range(n):
            x = sum((self._hom_inverse[i][j] * v[j] for j in range(n)), Fraction(0))
            if x.denominator != 1 or x < 0:
                raise InconsistentDecomposition(f"non-integral multiplicity {x} for {self.modules[i].name}")
            mult.append(int(x))
        dims = {w: sum(k * u.dims[w] for k, u in zip(mult, self.modules)) for w in self.algebra.vertices}
        if dims != m.dims:
            raise InconsistentDecomposition("dimension vectors disagree")
        back = [rm.hom_dim(m, u) for u in self.modules]
        expected = [sum(int(self.hom_table[j][i]) * mult[j] for j in range(n)) for i in range(n)]
        if back != expected:
            raise InconsistentDecomposition("Hom(m, -) counts disagree with the decomposition")
        return Decomposition(self, tuple(mult))

    def index_of(self, m: Module) -> int:
        """Catalog index of an indecomposable module (by decomposition)."""
        d = self.decompose(m)
        support = d.support()
        if len(support) != 1 or d.multiplicities[support[0]] != 1:
            raise CatalogError(f"{m} is not indecomposable")
        return support[0]

    def is_isomorphic(self, m: Module, n: Module) -> bool:
        return self.decompose(m).multiplicities == self.decompose(n).multiplicities

    def direct_sum(self, indices, multiplicities=None) -> Module:
        indices = list(indices)
        if not indices:
            return rm.zero_module(self.algebra)
        mults = multiplicities or [1] * len(indices)
        parts = [self.modules[i] for i, k in zip(indices, mults) for _ in range(k)]
        m = rm.direct_sum(*parts)
        m.name = "+".join(self.modules[i].name for i in indices)
        return m

    def find(self, dim_vector) -> int:
        hits = [i for i, m in enumerate(self.modules) if m.dim_vector() == tuple(dim_vector)]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} catalog modules with dimension vector {tuple(dim_vector)}")
        return hits[0]


@dataclass(frozen=True)
class Decomposition:
    ind: IndSet
    multiplicities: tuple

    def support(self) -> list[int]:
        return [i for i, k in enumerate(self.multiplicities) if k]

    def summand_count(self) -> int:
        return len(self.support())

    def as_dict(self) -> dict:
        return {self.ind.modules[i].name: k for i, k in enumerate(self.multiplicities) if k}


def _name(a: Algebra, m: Module, used: set) -> str:
    for v in a.vertices:
        if m.dims[v] == 1 and m.dim == 1:
            cand = f"S{v}"
            break
    else:
        cand = None
        for v in a.vertices:
            if m.dims == rm.projective(a, v).dims and rm.find_isomorphism(m, rm.projective(a, v)):
                cand = f"P{v}"
                break
        if cand is None:
            cand = "M" + "".join(v for v in a.vertices if m.dims[v])
    name, k = cand, 2
    while name in used:
        name = f"{cand}_{k}"
        k += 1
    used.add(name)
    return name


def _label(a: Algebra, modules: list[Module]) -> list[Module]:
    used: set = set()
    return [m.with_name(_name(a, m, used)) for m in modules]


def _knit(a: Algebra) -> list[Module]:
    found = [rm.projective(a, v) for v in a.vertices]
    queue = list(found)
    while queue:
        x = queue.pop(0)
        y = rm.tau_inverse(x)
        if y.is_zero():
            continue
        y = Module(a, y.dims, y.maps, check=False)
        if any(rm.find_isomorphism(y, z) is not None for z in found):
            continue
        found.append(y)
        queue.append(y)
        if len(found) > settings.knitting_cap:
            raise NotRepresentationFinite(f"knitting exceeded {settings.knitting_cap} modules")
    return found


def _intervals(a: Algebra) -> list[Module]:
    out = []
    for v in a.vertices:
        pv = rm.projective(a, v)
        k = 1
        while True:
            rad, inc = rm.radical_power(pv, k)
            out.append(rm.quotient(pv, inc.blocks)[0])
            if rad.is_zero():
                break
            k += 1
    return out


def _check_closed(a: Algebra, found: list[Module]) -> None:
    """A complete catalog contains the projectives and is closed under tau and tau^-1."""
    def present(y):
        return y.is_zero() or any(rm.find_isomorphism(y, z) is not None for z in found)

    for v in a.vertices:
        if not present(rm.projective(a, v)):
            raise CatalogError(f"supplied modules miss the projective at {v}")
    for x in found:
        if not (present(rm.tau(x)) and present(rm.tau_inverse(x))):
            raise CatalogError(f"supplied modules are not closed under tau around {x}")


def enumerate_indecomposables(a: Algebra, strategy: str | None = None, modules=None) -> IndSet:
    """Catalog of indecomposables by knitting, Nakayama intervals, or a supplied list."""
    if strategy is None:
        if modules is not None:
            strategy = "user-supplied"
        elif a.is_hereditary_path_algebra():
            strategy = "hereditary-knitting"
        elif a.quiver.is_nakayama():
            strategy = "nakayama-intervals"
        else:
            raise StrategyMismatch("no automatic strategy applies; supply the modules")
    if strategy == "hereditary-knitting":
        if not a.is_hereditary_path_algebra():
            raise StrategyMismatch("knitting needs an acyclic quiver without relations")
        found = _knit(a)
    elif strategy == "nakayama-intervals":
        if not a.quiver.is_nakayama():
            raise StrategyMismatch("interval modules need a Nakayama quiver")
        found = _intervals(a)
    elif strategy == "user-supplied":
        if modules is None:
            raise StrategyMismatch("user-supplied strategy needs modules")
        found = list(modules)
        for i, x in enumerate(found):
            for y in found[:i]:
                if rm.find_isomorphism(x, y) is not None:
                    raise CatalogError(f"supplied modules {y} and {x} are isomorphic")
        _check_closed(a, found)
    else:
        raise StrategyMismatch(f"unknown strategy {strategy!r}")
    for i, m in enumerate(found):
        if not rm.is_local(m, salt=i):
            raise CatalogError(f"{m} has a non-local endomorphism ring")
    names = [m.name for m in found] if strategy == "user-supplied" and all(m.name for m in found) else None
    labelled = [m.with_name(n) for m, n in zip(found, names)] if names else _label(a, found)
    labelled.sort(key=lambda m: (m.dim, [-m.dims[v] for v in a.vertices]))
    return IndSet(a, labelled)
