"""Bound quiver algebras A = kQ/I with an explicit basis of reduced paths.

Paths compose left to right: for arrows a: 1 -> 2 and b: 2 -> 3 the path
``ab`` goes 1 -> 2 -> 3, matching the right-module convention used in
:mod:`siltmod.repmod` (``x . a . b``).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import exactlin as el
from .config import DEFAULT_P


class AlgebraError(ValueError):
    pass


class NotAdmissible(AlgebraError):
    """A relation is malformed or not inside the square of the arrow ideal."""


class CapTooSmall(AlgebraError):
    """Paths of length ``length_cap`` do not all vanish modulo the relations."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise AlgebraError(f"arrow {a.name} has an undeclared endpoint")

    @classmethod
    def from_lists(cls, vertices, arrows) -> "Quiver":
        return cls(
            tuple(str(v) for v in vertices),
            tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows),
        )

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def is_acyclic(self) -> bool:
        succ = defaultdict(list)
        for a in self.arrows:
            succ[a.source].append(a.target)
        state: dict[str, int] = {}

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(v in state or visit(v) for v in self.vertices)

    def is_nakayama(self) -> bool:
        outs = defaultdict(int)
        ins = defaultdict(int)
        for a in self.arrows:
            outs[a.source] += 1
            ins[a.target] += 1
        return all(outs[v] <= 1 and ins[v] <= 1 for v in self.vertices)


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return f"e{self.source}" if not self.arrows else "*".join(self.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def of(cls, *terms) -> "Relation":
        return cls(tuple((int(c), tuple(str(x) for x in path)) for c, path in terms))

    def reversed(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(path))) for c, path in self.terms))


def _path_of(q: Quiver, arrows: tuple[str, ...]) -> Path:
    if not arrows:
        raise NotAdmissible("empty path in relation")
    try:
        seq = [q.arrow(a) for a in arrows]
    except KeyError as exc:
        raise NotAdmissible(f"unknown arrow {exc.args[0]!r}") from None
    for x, y in zip(seq, seq[1:]):
        if x.target != y.source:
            raise NotAdmissible(f"arrows {x.name}, {y.name} are not composable")
    return Path(seq[0].source, seq[-1].target, tuple(arrows))


class Algebra:
    """Finite dimensional algebra with basis, structure constants and idempotents.

    ``mult[i, j]`` holds the coordinates of ``basis[i] * basis[j]``.
    Instances are immutable after construction.
    """

    def __init__(self, quiver, relations, basis, mult, p, length_cap):
        self.quiver: Quiver = quiver
        self.relations: tuple[Relation, ...] = tuple(relations)
        self.basis: tuple[Path, ...] = tuple(basis)
        self.mult: np.ndarray = mult
        self.mult.flags.writeable = False
        self.p: int = p
        self.length_cap: int = length_cap
        self.dim = len(self.basis)
        self.nilpotency_degree = 1 + max((len(b) for b in self.basis), default=0)
        self.vertices = quiver.vertices
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.idempotent = {v: self.index[Path(v, v)] for v in self.vertices}
        self.arrow_index = {a.name: self.index[Path(a.source, a.target, (a.name,))] for a in quiver.arrows}
        between = defaultdict(list)
        for i, b in enumerate(self.basis):
            between[(b.source, b.target)].append(i)
        self._between = {k: tuple(v) for k, v in between.items()}
        self._opposite: Algebra | None = None

    def between(self, s: str, t: str) -> tuple[int, ...]:
        """Indices of basis paths from ``s`` to ``t``, i.e. a basis of e_s A e_t."""
        return self._between.get((s, t), ())

    def starting_at(self, s: str) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.source == s]

    def ending_at(self, t: str) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.target == t]

    def element(self, terms) -> np.ndarray:
        """Coordinate vector of a linear combination [(coeff, Path or label)]."""
        v = np.zeros(self.dim, dtype=np.int64)
        for c, b in terms:
            if not isinstance(b, Path):
                b = self.path(b)
            v[self.index[b]] += c
        return v % self.p

    def path(self, label) -> Path:
        """Basis path from a label such as ``"e1"``, ``"a"`` or ``"a*b"`` (or an arrow list)."""
        if isinstance(label, str):
            for b in self.basis:
                if b.label() == label:
                    return b
            raise KeyError(label)
        arrows = tuple(label)
        for b in self.basis:
            if b.arrows == arrows and arrows:
                return b
        raise KeyError(label)

    def unit(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for i in self.idempotent.values():
            v[i] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        return multiply(self, x, y)

    def opposite(self) -> "Algebra":
        return opposite(self)

    def is_hereditary_path_algebra(self) -> bool:
        return not self.relations and self.quiver.is_acyclic()

    def __repr__(self) -> str:
        return f"Algebra(vertices={list(self.vertices)}, arrows={[a.name for a in self.quiver.arrows]}, dim={self.dim})"


def build_algebra(q: Quiver, rels, length_cap: int, p: int = DEFAULT_P) -> Algebra:
    """Reduce paths of length < length_cap modulo the ideal generated by ``rels``.

    For each pair of vertices the ideal is spanned, modulo paths longer than the
    cap, by u * r * v for paths u, v and relations r.  Longest paths are
    eliminated first; the surviving paths form the basis.
    """
    p = el.check_modulus(p)
    if length_cap < 2:
        raise AlgebraError("length_cap must be at least 2")
    rels = tuple(rels)
    rel_paths = []
    for r in rels:
        if not r.terms:
            raise NotAdmissible("empty relation")
        paths = [(c % p, _path_of(q, arrows)) for c, arrows in r.terms]
        ends = {(pt.source, pt.target) for _, pt in paths}
        if len(ends) != 1:
            raise NotAdmissible(f"relation {r} mixes non-parallel paths")
        if any(len(pt) < 2 for _, pt in paths):
            raise NotAdmissible(f"relation {r} has a term of length < 2")
        rel_paths.append(paths)

    # all paths of length <= cap
    by_length: list[list[Path]] = [[Path(v, v) for v in q.vertices]]
    for _ in range(length_cap):
        nxt = []
        for pt in by_length[-1]:
            for a in q.arrows:
                if a.source == pt.target:
                    nxt.append(Path(pt.source, a.target, pt.arrows + (a.name,)))
        by_length.append(nxt)
    all_paths = [pt for layer in by_length for pt in layer]
    into = defaultdict(list)
    out_of = defaultdict(list)
    for pt in all_paths:
        into[pt.target].append(pt)
        out_of[pt.source].append(pt)

    arrow_pos = {a.name: i for i, a in enumerate(q.arrows)}
    vertex_pos = {v: i for i, v in enumerate(q.vertices)}

    def concat(x: Path, y: Path) -> Path:
        return Path(x.source, y.target, x.arrows + y.arrows)

    classes = defaultdict(list)
    for pt in all_paths:
        classes[(pt.source, pt.target)].append(pt)
    generators = defaultdict(list)
    for paths in rel_paths:
        s, t = paths[0][1].source, paths[0][1].target
        for u in into[s]:
            for v in out_of[t]:
                combo = {}
                for c, pt in paths:
                    w = concat(concat(u, pt), v)
                    if len(w) <= length_cap:
                        combo[w] = (combo.get(w, 0) + c) % p
                combo = {k: c for k, c in combo.items() if c}
                if combo:
                    generators[(u.source, v.target)].append(combo)

    normal_form: dict[Path, dict[Path, int]] = {}
    survivors: list[Path] = []
    for key, paths in classes.items():
        order = sorted(paths, key=lambda pt: (-len(pt), [arrow_pos[a] for a in pt.arrows]))
        col = {pt: i for i, pt in enumerate(order)}
        gens = generators.get(key, [])
        if gens:
            m = el.zeros(len(gens), len(order))
            for i, combo in enumerate(gens):
                for pt, c in combo.items():
                    m[i, col[pt]] = c
            r, pivots = el.rref(m, p)
        else:
            r, pivots = el.zeros(0, len(order)), []
        piv = set(pivots)
        for pt in order:
            if col[pt] not in piv:
                normal_form[pt] = {pt: 1}
        for i, pc in enumerate(pivots):
            nf = {}
            for j in range(len(order)):
                if j != pc and r[i, j]:
                    nf[order[j]] = (-r[i, j]) % p
            normal_form[order[pc]] = nf
        for pt in order:
            if len(pt) == length_cap and normal_form[pt]:
                raise CapTooSmall(
                    f"path {pt.label()} of length {length_cap} is nonzero modulo the relations; raise length_cap"
                )
            if col[pt] not in piv and len(pt) < length_cap:
                survivors.append(pt)

    basis = sorted(survivors, key=lambda pt: (len(pt), vertex_pos[pt.source], [arrow_pos[a] for a in pt.arrows]))
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    mult = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, x), (j, y) in product(enumerate(basis), repeat=2):
        if x.target != y.source:
            continue
        w = concat(x, y)
        if len(w) > length_cap:
            continue
        for b, c in normal_form[w].items():
            mult[i, j, index[b]] = c
    return Algebra(q, rels, basis, mult, p, length_cap)


def opposite(a: Algebra) -> Algebra:
    """Opposite algebra on the reversed quiver; cached so that op(op(A)) is A."""
    if a._opposite is None:
        mult = np.ascontiguousarray(np.transpose(a.mult, (1, 0, 2)))
        op = Algebra(
            a.quiver.opposite(),
            [r.reversed() for r in a.relations],
            [b.reversed() for b in a.basis],
            mult,
            a.p,
            a.length_cap,
        )
        op._opposite = a
        a._opposite = op
    return a._opposite


def multiply(a: Algebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return np.einsum("i,j,ijk->k", x, y, a.mult) % a.p


def path_algebra_a(n: int, p: int = DEFAULT_P) -> Algebra:
    """Linearly oriented A_n: 1 -> 2 -> ... -> n, no relations."""
    vertices = [str(i) for i in range(1, n + 1)]
    names = "abcdefghijklmnopqrstuvwxyz"
    arrows = [(names[i], vertices[i], vertices[i + 1]) for i in range(n - 1)]
    return build_algebra(Quiver.from_lists(vertices, arrows), [], max(n, 2), p)


def cyclic_nakayama(n: int, loewy: int = 2, p: int = DEFAULT_P) -> Algebra:
    """Cyclic quiver 1 -> 2 -> ... -> n -> 1 modulo all paths of length ``loewy``."""
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", vertices[i - 1], vertices[i % n]) for i in range(1, n + 1)]
    q = Quiver.from_lists(vertices, arrows)
    rels = []
    for i in range(n):
        path = tuple(f"a{(i + k) % n + 1}" for k in range(loewy))
        rels.append(Relation.of((1, path)))
    return build_algebra(q, rels, loewy + 1, p)
