"""Finite dimensional right modules as quiver representations.

A module assigns a space F_p^{d_v} to each vertex and to each arrow a: s -> t
a (d_s x d_t) matrix acting on row vectors, x |-> x @ M_a.  A module map
f: M -> N is a family of (dM_v x dN_v) blocks with M_a @ F_t = F_s @ N_a.

Projective modules P_i = e_i A use the path basis: P_i at vertex v is spanned by
the basis paths from i to v, and maps between sums of projectives are recorded
as matrices of algebra elements (see :class:`Presentation`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactlin as el
from .algebra import Algebra, Path
from .config import rng, settings


class ModuleError(ValueError):
    pass


class LiftFailure(AssertionError):
    """A lift through a projective cover failed; indicates a bug, never bad input."""


class Module:
    def __init__(self, algebra: Algebra, dims, maps=None, name: str | None = None, check: bool = True):
        self.algebra = algebra
        p = algebra.p
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ModuleError("negative dimension")
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            raise ModuleError(f"unknown vertices {sorted(unknown)}")
        maps = dict(maps or {})
        unknown = set(maps) - {a.name for a in algebra.quiver.arrows}
        if unknown:
            raise ModuleError(f"unknown arrows {sorted(unknown)}")
        self.maps: dict[str, np.ndarray] = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.source], self.dims[a.target])
            if a.name in maps and maps[a.name] is not None:
                m = np.array(maps[a.name], dtype=np.int64)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise ModuleError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
                self.maps[a.name] = m % p
            else:
                self.maps[a.name] = el.zeros(*shape)
            self.maps[a.name].flags.writeable = False
        self.name = name
        self._path_cache: dict[tuple[str, ...], np.ndarray] = {}
        if check:
            for r in algebra.relations:
                s = algebra.quiver.arrow(r.terms[0][1][0]).source
                t = algebra.quiver.arrow(r.terms[0][1][-1]).target
                acc = el.zeros(self.dims[s], self.dims[t])
                for c, arrows in r.terms:
                    acc = (acc + c * self._arrow_product(arrows)) % p
                if acc.any():
                    raise ModuleError(f"relation {r.terms} does not vanish on the representation")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, acc = {}, 0
        for v in self.algebra.vertices:
            out[v] = acc
            acc += self.dims[v]
        return out

    def _arrow_product(self, arrows: tuple[str, ...]) -> np.ndarray:
        if arrows in self._path_cache:
            return self._path_cache[arrows]
        q = self.algebra.quiver
        out = self.maps[arrows[0]]
        for a in arrows[1:]:
            out = el.matmul(out, self.maps[a], self.p)
        self._path_cache[arrows] = out
        return out

    def path_action(self, path: Path) -> np.ndarray:
        """Matrix (d_source x d_target) of right multiplication by a path."""
        if not path.arrows:
            return el.identity(self.dims[path.source])
        return self._arrow_product(path.arrows)

    def element_action(self, coords, s: str, t: str) -> np.ndarray:
        """Right multiplication by e_s a e_t as a (d_s x d_t) matrix."""
        a = self.algebra
        out = el.zeros(self.dims[s], self.dims[t])
        for i in a.between(s, t):
            c = int(coords[i])
            if c:
                out = (out + c * self.path_action(a.basis[i])) % self.p
        return out

    def total_action(self, coords) -> np.ndarray:
        a = self.algebra
        out = el.zeros(self.dim, self.dim)
        for i, b in enumerate(a.basis):
            c = int(coords[i])
            if c and self.dims[b.source] and self.dims[b.target]:
                o_s, o_t = self.offsets[b.source], self.offsets[b.target]
                blk = out[o_s : o_s + self.dims[b.source], o_t : o_t + self.dims[b.target]]
                blk[...] = (blk + c * self.path_action(b)) % self.p
        return out

    def with_name(self, name: str) -> "Module":
        m = Module(self.algebra, self.dims, self.maps, name=name, check=False)
        return m

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"Module({label}dims={self.dim_vector()})"


@dataclass(eq=False)
class ModuleMap:
    source: Module
    target: Module
    blocks: dict

    def __post_init__(self):
        for v in self.source.algebra.vertices:
            shape = (self.source.dims[v], self.target.dims[v])
            b = self.blocks.get(v)
            b = el.zeros(*shape) if b is None else np.asarray(b, dtype=np.int64).reshape(shape) % self.source.p
            self.blocks[v] = b

    @property
    def p(self) -> int:
        return self.source.p

    def is_homomorphism(self) -> bool:
        p = self.p
        for a in self.source.algebra.quiver.arrows:
            lhs = el.matmul(self.source.maps[a.name], self.blocks[a.target], p)
            rhs = el.matmul(self.blocks[a.source], self.target.maps[a.name], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def total(self) -> np.ndarray:
        out = el.zeros(self.source.dim, self.target.dim)
        for v in self.source.algebra.vertices:
            o_s, o_t = self.source.offsets[v], self.target.offsets[v]
            out[o_s : o_s + self.source.dims[v], o_t : o_t + self.target.dims[v]] = self.blocks[v]
        return out

    def vector(self) -> np.ndarray:
        parts = [self.blocks[v].ravel() for v in self.source.algebra.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(el.rank(b, self.p) == b.shape[0] for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(el.rank(b, self.p) == b.shape[1] for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, {v: self.blocks[v] + other.blocks[v] for v in self.blocks})

    def scaled(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, {v: b * int(c) for v, b in self.blocks.items()})


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    p = f.p
    return ModuleMap(f.source, g.target, {v: el.matmul(f.blocks[v], g.blocks[v], p) for v in f.blocks})


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, {v: el.identity(d) for v, d in m.dims.items()})


def zero_map(m: Module, n: Module) -> ModuleMap:
    return ModuleMap(m, n, {})


def combine(maps: list[ModuleMap], coeffs) -> ModuleMap:
    src, tgt = maps[0].source, maps[0].target
    blocks = {v: el.zeros(src.dims[v], tgt.dims[v]) for v in src.algebra.vertices}
    for f, c in zip(maps, coeffs):
        c = int(c)
        if c:
            for v in blocks:
                blocks[v] = (blocks[v] + c * f.blocks[v]) % src.p
    return ModuleMap(src, tgt, blocks)


def zero_module(a: Algebra) -> Module:
    return Module(a, {})


# ---------------------------------------------------------------- Hom spaces


@dataclass(eq=False)
class HomSpace:
    source: Module
    target: Module
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: ModuleMap) -> np.ndarray:
        """Coordinates of ``f`` in the basis; raises NoSolution if f is not a homomorphism."""
        if not self.basis:
            if not f.is_zero():
                raise el.NoSolution("nonzero map in a zero Hom space")
            return np.zeros(0, dtype=np.int64)
        mat = np.stack([b.vector() for b in self.basis], axis=1)
        return el.solve(mat, f.vector(), f.p)

    def random_element(self, gen: np.random.Generator) -> ModuleMap:
        coeffs = gen.integers(0, self.source.p, size=len(self.basis))
        return combine(self.basis, coeffs)


def commutation_system(m: Module, n: Module) -> np.ndarray:
    """Matrix whose kernel is Hom(m, n) in the coordinates of ``ModuleMap.vector``."""
    a = m.algebra
    p = m.p
    offs, acc = {}, 0
    for v in a.vertices:
        offs[v] = acc
        acc += m.dims[v] * n.dims[v]
    rows = []
    for arr in a.quiver.arrows:
        s, t = arr.source, arr.target
        ms, mt, ns, nt = m.dims[s], m.dims[t], n.dims[s], n.dims[t]
        if ms * nt == 0:
            continue
        blk = el.zeros(ms * nt, acc)
        # vec(M_a F_t) - vec(F_s N_a), row-major vectorisation
        blk[:, offs[t] : offs[t] + mt * nt] += np.kron(m.maps[arr.name], el.identity(nt))
        blk[:, offs[s] : offs[s] + ms * ns] -= np.kron(el.identity(ms), n.maps[arr.name].T)
        rows.append(blk % p)
    if not rows:
        return el.zeros(0, acc)
    return np.vstack(rows)


def _unvector(m: Module, n: Module, vec: np.ndarray) -> ModuleMap:
    blocks, pos = {}, 0
    for v in m.algebra.vertices:
        k = m.dims[v] * n.dims[v]
        blocks[v] = vec[pos : pos + k].reshape(m.dims[v], n.dims[v])
        pos += k
    return ModuleMap(m, n, blocks)


def hom_basis(m: Module, n: Module) -> HomSpace:
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return HomSpace(m, n, [])
    ns = el.nullspace(commutation_system(m, n), m.p)
    return HomSpace(m, n, [_unvector(m, n, ns[:, j]) for j in range(ns.shape[1])])


def hom_dim(m: Module, n: Module) -> int:
    if m.dim == 0 or n.dim == 0:
        return 0
    sysm = commutation_system(m, n)
    return sysm.shape[1] - el.rank(sysm, m.p)


# ------------------------------------------------------ sub and quotient modules


def _induced(rows_s: np.ndarray, amap: np.ndarray, rows_t: np.ndarray, p: int) -> np.ndarray:
    """X with X @ rows_t = rows_s @ amap."""
    lhs = el.matmul(rows_s, amap, p)
    if rows_t.shape[0] == 0:
        if lhs.any():
            raise ModuleError("subspace family is not closed under the arrow action")
        return el.zeros(rows_s.shape[0], 0)
    try:
        return el.solve_matrix(rows_t.T, lhs.T, p).T
    except el.NoSolution:
        raise ModuleError("subspace family is not closed under the arrow action") from None


def _as_rows(x, d: int) -> np.ndarray:
    if x is None:
        return el.zeros(0, d)
    x = np.asarray(x, dtype=np.int64)
    return el.zeros(0, d) if x.size == 0 else x.reshape(-1, d)


def submodule(m: Module, rows: dict) -> tuple[Module, ModuleMap]:
    """Submodule spanned at each vertex by the rows of ``rows[v]`` (a basis)."""
    a, p = m.algebra, m.p
    rows = {v: _as_rows(rows.get(v), m.dims[v]) for v in a.vertices}
    maps = {arr.name: _induced(rows[arr.source], m.maps[arr.name], rows[arr.target], p) for arr in a.quiver.arrows}
    sub = Module(a, {v: rows[v].shape[0] for v in a.vertices}, maps, check=False)
    return sub, ModuleMap(sub, m, {v: rows[v] for v in a.vertices})


def quotient(m: Module, rows: dict) -> tuple[Module, ModuleMap]:
    """Quotient of ``m`` by the submodule spanned by ``rows``; returns the projection."""
    a, p = m.algebra, m.p
    qs = {}
    for v in a.vertices:
        r = _as_rows(rows.get(v), m.dims[v])
        qs[v] = el.nullspace(r, p) if r.shape[0] else el.identity(m.dims[v])
    maps = {}
    for arr in a.quiver.arrows:
        s, t = arr.source, arr.target
        rhs = el.matmul(m.maps[arr.name], qs[t], p)
        if qs[s].shape[1] == 0:
            maps[arr.name] = el.zeros(0, qs[t].shape[1])
            continue
        try:
            maps[arr.name] = el.solve_matrix(qs[s], rhs, p)
        except el.NoSolution:
            raise ModuleError("quotient by a non-submodule") from None
    quo = Module(a, {v: qs[v].shape[1] for v in a.vertices}, maps, check=False)
    return quo, ModuleMap(m, quo, qs)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    p = f.p
    rows = {}
    for v, b in f.blocks.items():
        rows[v] = el.nullspace(b.T, p).T if b.shape[0] else el.zeros(0, 0)
    return submodule(f.source, rows)


def image_rows(f: ModuleMap) -> dict:
    return {v: el.row_basis(b, f.p) for v, b in f.blocks.items()}


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.target, image_rows(f))


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, image_rows(f))


def direct_sum(*modules: Module) -> Module:
    if not modules:
        raise ModuleError("direct_sum needs at least one module")
    a = modules[0].algebra
    dims = {v: sum(m.dims[v] for m in modules) for v in a.vertices}
    maps = {}
    for arr in a.quiver.arrows:
        out = el.zeros(dims[arr.source], dims[arr.target])
        r = c = 0
        for m in modules:
            blk = m.maps[arr.name]
            out[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
            r += blk.shape[0]
            c += blk.shape[1]
        maps[arr.name] = out
    return Module(a, dims, maps, check=False)


def sum_inclusions(modules: list[Module], total: Module) -> list[ModuleMap]:
    out = []
    offs = {v: 0 for v in total.algebra.vertices}
    for m in modules:
        blocks = {}
        for v in total.algebra.vertices:
            b = el.zeros(m.dims[v], total.dims[v])
            b[:, offs[v] : offs[v] + m.dims[v]] = el.identity(m.dims[v])
            blocks[v] = b
            offs[v] += m.dims[v]
        out.append(ModuleMap(m, total, blocks))
    return out


def map_into_sum(maps: list[ModuleMap], total: Module) -> ModuleMap:
    """The map X -> N_1 + ... + N_k with components ``maps``."""
    src = maps[0].source
    return ModuleMap(src, total, {v: np.hstack([f.blocks[v] for f in maps]) for v in src.algebra.vertices})


def power(m: Module, k: int) -> Module:
    return direct_sum(*([m] * k)) if k else zero_module(m.algebra)


def radical(m: Module) -> tuple[Module, ModuleMap]:
    """rad M = M J, the sum of the images of the arrow maps."""
    a = m.algebra
    rows = {}
    for v in a.vertices:
        parts = [m.maps[arr.name] for arr in a.quiver.arrows if arr.target == v]
        stacked = np.vstack(parts) if parts else el.zeros(0, m.dims[v])
        rows[v] = el.row_basis(stacked, m.p)
    return submodule(m, rows)


def top(m: Module) -> Module:
    rad, inc = radical(m)
    return quotient(m, inc.blocks)[0]


def radical_power(m: Module, k: int) -> tuple[Module, ModuleMap]:
    cur, inc = m, identity_map(m)
    for _ in range(k):
        r, i = radical(cur)
        inc = compose(inc, i)
        cur = r
    return cur, inc


# ---------------------------------------------------------------- projectives


def projective(a: Algebra, i: str) -> Module:
    """P_i = e_i A with the path basis."""
    dims = {v: len(a.between(i, v)) for v in a.vertices}
    maps = {}
    for arr in a.quiver.arrows:
        src, tgt = a.between(i, arr.source), a.between(i, arr.target)
        m = el.zeros(len(src), len(tgt))
        ai = a.arrow_index[arr.name]
        for r, b in enumerate(src):
            prod = a.mult[b, ai]
            for c, b2 in enumerate(tgt):
                m[r, c] = prod[b2]
        maps[arr.name] = m
    return Module(a, dims, maps, name=f"P{i}", check=False)


def projective_sum(a: Algebra, vertices) -> Module:
    vertices = tuple(vertices)
    if not vertices:
        return zero_module(a)
    if len(vertices) == 1:
        return projective(a, vertices[0])
    return direct_sum(*[projective(a, v) for v in vertices])


def regular_module(a: Algebra) -> Module:
    return projective_sum(a, a.vertices).with_name("A")


def simple(a: Algebra, i: str) -> Module:
    return Module(a, {i: 1}, name=f"S{i}", check=False)


def dual(m: Module) -> Module:
    """D M = Hom_k(M, k) as a right module over the opposite algebra."""
    op = m.algebra.opposite()
    return Module(op, dict(m.dims), {name: mat.T for name, mat in m.maps.items()}, check=False)


def injective(a: Algebra, i: str) -> Module:
    """I_i = D(A e_i), the dual of the projective e_i A^op."""
    return dual(projective(a.opposite(), i)).with_name(f"I{i}")


def map_from_projective(a: Algebra, vertices, x: Module, gens) -> ModuleMap:
    """Map P(vertices) -> x sending the r-th generator e_{u_r} to the row vector gens[r] in x_{u_r}."""
    src = projective_sum(a, vertices)
    blocks = {}
    for v in a.vertices:
        rows = []
        for u, g in zip(vertices, gens):
            g = np.asarray(g, dtype=np.int64).reshape(1, x.dims[u])
            for b in a.between(u, v):
                rows.append(el.matmul(g, x.path_action(a.basis[b]), a.p))
        blocks[v] = np.vstack(rows) if rows else el.zeros(0, x.dims[v])
    return ModuleMap(src, x, blocks)


def hom_from_projective_basis(a: Algebra, vertices, x: Module) -> list[ModuleMap]:
    """Basis of Hom(P(vertices), x): one generator sent to one basis vector of x_u."""
    out = []
    vertices = tuple(vertices)
    for r, u in enumerate(vertices):
        for k in range(x.dims[u]):
            gens = [np.zeros(x.dims[w], dtype=np.int64) for w in vertices]
            gens[r][k] = 1
            out.append(map_from_projective(a, vertices, x, gens))
    return out


# ------------------------------------------------------------- presentations


class Presentation:
    """A map P(p_minus1) -> P(p0) between sums of indecomposable projectives.

    ``entries[r, c]`` is the coordinate vector of the element a_rc in
    e_{p0[c]} A e_{p_minus1[r]}; the r-th generator e_{u_r} is sent to
    sum_c a_rc in the c-th summand.  Read either as a 2-term complex in
    degrees -1, 0 or as a projective presentation of its cokernel.
    """

    def __init__(self, algebra: Algebra, p_minus1, p0, entries=None, check: bool = True):
        self.algebra = algebra
        self.p_minus1 = tuple(str(v) for v in p_minus1)
        self.p0 = tuple(str(v) for v in p0)
        shape = (len(self.p_minus1), len(self.p0), algebra.dim)
        if entries is None:
            entries = np.zeros(shape, dtype=np.int64)
        self.entries = np.asarray(entries, dtype=np.int64).reshape(shape) % algebra.p
        self.entries.flags.writeable = False
        if check:
            for r, u in enumerate(self.p_minus1):
                for c, w in enumerate(self.p0):
                    allowed = set(algebra.between(w, u))
                    bad = [i for i in np.flatnonzero(self.entries[r, c]) if i not in allowed]
                    if bad:
                        raise ModuleError(
                            f"entry ({r},{c}) must lie in e_{w} A e_{u}; has {algebra.basis[bad[0]].label()}"
                        )

    @cached_property
    def map(self) -> ModuleMap:
        a = self.algebra
        src = projective_sum(a, self.p_minus1)
        tgt = projective_sum(a, self.p0)
        blocks = {}
        for v in a.vertices:
            blk = el.zeros(src.dims[v], tgt.dims[v])
            ro = 0
            for r, u in enumerate(self.p_minus1):
                rows_b = a.between(u, v)
                co = 0
                for c, w in enumerate(self.p0):
                    cols_b = a.between(w, v)
                    elt = self.entries[r, c]
                    if elt.any():
                        for i, b in enumerate(rows_b):
                            prod = np.einsum("i,ik->k", elt, a.mult[:, b]) % a.p
                            blk[ro + i, co : co + len(cols_b)] = prod[list(cols_b)]
                    co += len(cols_b)
                ro += len(rows_b)
            blocks[v] = blk
        return ModuleMap(src, tgt, blocks)

    def cokernel(self) -> Module:
        return cokernel(self.map)[0]

    def kernel(self) -> Module:
        return kernel(self.map)[0]

    def is_monomorphic(self) -> bool:
        return self.map.is_injective()

    def direct_sum(self, *others: "Presentation") -> "Presentation":
        parts = (self, *others)
        u = sum((x.p_minus1 for x in parts), ())
        w = sum((x.p0 for x in parts), ())
        e = np.zeros((len(u), len(w), self.algebra.dim), dtype=np.int64)
        r = c = 0
        for x in parts:
            e[r : r + len(x.p_minus1), c : c + len(x.p0)] = x.entries
            r += len(x.p_minus1)
            c += len(x.p0)
        return Presentation(self.algebra, u, w, e, check=False)

    def repeated(self, k: int) -> "Presentation":
        if k == 0:
            return Presentation(self.algebra, (), ())
        return self.direct_sum(*([self] * (k - 1)))

    def transpose(self) -> "Presentation":
        """Hom_A(-, A) applied to the map, a presentation over the opposite algebra."""
        op = self.algebra.opposite()
        return Presentation(op, self.p0, self.p_minus1, np.transpose(self.entries, (1, 0, 2)), check=False)

    def __repr__(self) -> str:
        def fmt(vs):
            return "+".join(f"P{v}" for v in vs) or "0"

        return f"Presentation({fmt(self.p_minus1)} -> {fmt(self.p0)})"


def presentation_from_map(a: Algebra, p_minus1, p0, f: ModuleMap) -> Presentation:
    """Read a module map P(p_minus1) -> P(p0) as a matrix of algebra elements."""
    p_minus1, p0 = tuple(p_minus1), tuple(p0)
    e = np.zeros((len(p_minus1), len(p0), a.dim), dtype=np.int64)
    tgt_off = {}
    for v in a.vertices:
        off = 0
        for c, w in enumerate(p0):
            tgt_off[(c, v)] = off
            off += len(a.between(w, v))
    row_off = {}
    for v in a.vertices:
        off = 0
        for r, u in enumerate(p_minus1):
            row_off[(r, v)] = off
            off += len(a.between(u, v))
    for r, u in enumerate(p_minus1):
        gen_row = f.blocks[u][row_off[(r, u)] + a.between(u, u).index(a.idempotent[u])]
        for c, w in enumerate(p0):
            cols = a.between(w, u)
            o = tgt_off[(c, u)]
            for k, b in enumerate(cols):
                e[r, c, b] = gen_row[o + k]
    return Presentation(a, p_minus1, p0, e)


@dataclass(eq=False)
class Cover:
    vertices: tuple
    map: ModuleMap


def projective_cover(m: Module) -> Cover:
    """Minimal projective cover P -> m lifting a basis of top(m)."""
    a, p = m.algebra, m.p
    _, rad_inc = radical(m)
    vertices, gens = [], []
    for v in a.vertices:
        comp = el.extend_to_basis(rad_inc.blocks[v], m.dims[v], p)
        for row in comp:
            vertices.append(v)
            gens.append(row)
    vertices = tuple(vertices)
    f = map_from_projective(a, vertices, m, gens)
    if not f.is_surjective():
        raise LiftFailure("projective cover is not surjective")
    return Cover(vertices, f)


def _contained_in(rows_small: np.ndarray, rows_big: np.ndarray, p: int) -> bool:
    if rows_small.shape[0] == 0:
        return True
    return el.rank(np.vstack([rows_big, rows_small]), p) == el.rank(rows_big, p)


def is_minimal_epi(f: ModuleMap) -> bool:
    """Kernel of ``f`` lies in the radical of its source."""
    ker_rows = {v: el.nullspace(b.T, f.p).T for v, b in f.blocks.items()}
    _, rad_inc = radical(f.source)
    return all(_contained_in(ker_rows[v], rad_inc.blocks[v], f.p) for v in f.blocks)


def min_presentation(m: Module) -> Presentation:
    a = m.algebra
    cov0 = projective_cover(m)
    k, inc = kernel(cov0.map)
    cov1 = projective_cover(k)
    sigma = compose(inc, cov1.map)
    pres = presentation_from_map(a, cov1.vertices, cov0.vertices, sigma)
    if not (is_minimal_epi(cov0.map) and is_minimal_epi(cov1.map)):
        raise LiftFailure("projective covers are not minimal")
    return pres


# ---------------------------------------------------------------------- Ext^1


@dataclass(eq=False)
class Ext1:
    dim: int
    cocycles: list
    syzygy_inclusion: ModuleMap
    cover: Cover


def ext1(m: Module, n: Module) -> Ext1:
    """Ext^1(m, n) as the cokernel of Hom(P0, n) -> Hom(K, n), K = ker(P0 -> m)."""
    a, p = m.algebra, m.p
    cov = projective_cover(m)
    k, inc = kernel(cov.map)
    hk = hom_basis(k, n)
    if hk.dim == 0:
        return Ext1(0, [], inc, cov)
    restricted = [compose(f, inc) for f in hom_from_projective_basis(a, cov.vertices, n)]
    basis_mat = np.stack([b.vector() for b in hk.basis], axis=1)
    if restricted:
        img = np.stack([el.solve(basis_mat, g.vector(), p) for g in restricted], axis=0)
        img = el.row_basis(img, p)
    else:
        img = el.zeros(0, hk.dim)
    comp = el.extend_to_basis(img, hk.dim, p)
    cocycles = [hk.basis[int(np.flatnonzero(row)[0])] for row in comp]
    return Ext1(len(cocycles), cocycles, inc, cov)


def ext1_dim(m: Module, n: Module) -> int:
    return ext1(m, n).dim


def middle_term(m: Module, n: Module, cocycle: ModuleMap, ext: Ext1 | None = None) -> Module:
    """Pushout E of K -> P0 along the cocycle K -> n: an extension 0 -> n -> E -> m -> 0."""
    ext = ext or ext1(m, n)
    inc = ext.syzygy_inclusion
    p0 = inc.target
    total = direct_sum(n, p0)
    g = map_into_sum([cocycle, inc.scaled(-1)], total)
    e, _ = cokernel(g)
    if e.dim != m.dim + n.dim:
        raise LiftFailure("extension has the wrong dimension")
    return e


# ------------------------------------------------------------ AR translation


def transpose(m: Module) -> Module:
    """Tr m: cokernel of Hom_A(min_presentation(m), A), a module over the opposite algebra."""
    return min_presentation(m).transpose().cokernel()


def tau(m: Module) -> Module:
    return dual(transpose(m))


def tau_inverse(m: Module) -> Module:
    return transpose(dual(m))


# -------------------------------------------------- traces and annihilators


def trace_rows(t: Module, m: Module) -> dict:
    hs = hom_basis(t, m)
    rows = {}
    for v in m.algebra.vertices:
        parts = [f.blocks[v] for f in hs.basis]
        stacked = np.vstack(parts) if parts else el.zeros(0, m.dims[v])
        rows[v] = el.row_basis(stacked, m.p)
    return rows


def trace(t: Module, m: Module) -> tuple[Module, ModuleMap]:
    """Sum of the images of all maps t -> m."""
    return submodule(m, trace_rows(t, m))


def in_gen(t: Module, m: Module) -> bool:
    rows = trace_rows(t, m)
    return all(rows[v].shape[0] == m.dims[v] for v in m.algebra.vertices)


def annihilator(m: Module) -> np.ndarray:
    """Basis (as rows of algebra coordinates) of {a in A : m a = 0}."""
    a = m.algebra
    cols = [m.total_action(np.eye(a.dim, dtype=np.int64)[i]).ravel() for i in range(a.dim)]
    mat = np.stack(cols, axis=1) if m.dim else el.zeros(0, a.dim)
    return el.nullspace(mat, a.p).T


def is_faithful(m: Module) -> bool:
    return annihilator(m).shape[0] == 0


def is_sincere(m: Module) -> bool:
    return all(d > 0 for d in m.dims.values())


# ---------------------------------------------------- randomized searches


def find_isomorphism(m: Module, n: Module, salt: int = 0) -> ModuleMap | None:
    """Search for an isomorphism among basis elements and random combinations.

    A miss is not a proof of non-isomorphism, but the non-invertible locus is a
    proper hypersurface, so random combinations miss with probability <= dim/p.
    """
    if m.dims != n.dims:
        return None
    if m.dim == 0:
        return zero_map(m, n)
    hs = hom_basis(m, n)
    if not hs.basis:
        return None
    for f in hs.basis:
        if f.is_isomorphism():
            return f
    gen = rng(0x150, salt)
    for _ in range(settings.witness_samples):
        f = hs.random_element(gen)
        if f.is_isomorphism():
            return f
    return None


def find_surjection(m: Module, n: Module, salt: int = 0) -> ModuleMap | None:
    if n.dim == 0:
        return zero_map(m, n)
    hs = hom_basis(m, n)
    for f in hs.basis:
        if f.is_surjective():
            return f
    if not hs.basis:
        return None
    gen = rng(0x5E, salt)
    for _ in range(settings.witness_samples):
        f = hs.random_element(gen)
        if f.is_surjective():
            return f
    return None


def endomorphisms(m: Module) -> HomSpace:
    return hom_basis(m, m)


def is_local(m: Module, salt: int = 0) -> bool:
    """Every sampled endomorphism is invertible or nilpotent (basis plus random combinations)."""
    if m.dim == 0:
        return False
    end = endomorphisms(m)
    samples = list(end.basis)
    gen = rng(0x10C, salt)
    samples += [end.random_element(gen) for _ in range(settings.indec_samples)]
    for f in samples:
        t = f.total()
        if not (el.is_nilpotent(t, m.p) or el.rank(t, m.p) == m.dim):
            return False
    return True


def split_fitting(m: Module, salt: int = 0, depth: int = 0) -> list[Module]:
    """Randomized Fitting-lemma splitting into summands with local endomorphism samples.

    For an endomorphism f and large k, m = Im f^k + Ker f^k; a random f is
    neither nilpotent nor invertible whenever m is decomposable, with high probability.
    """
    if m.dim == 0:
        return []
    end = endomorphisms(m)
    gen = rng(0xF17, salt, depth)
    candidates = list(end.basis) + [end.random_element(gen) for _ in range(settings.indec_samples)]
    for f in candidates:
        fk = el.stable_power(f.total(), m.p)
        r = el.rank(fk, m.p)
        if 0 < r < m.dim:
            g = ModuleMap(m, m, _split_blocks(m, fk))
            im, _ = image(g)
            ker, _ = kernel(g)
            return split_fitting(im, salt, depth + 1) + split_fitting(ker, salt, depth + 2)
    return [m]


def _split_blocks(m: Module, total: np.ndarray) -> dict:
    out = {}
    for v in m.algebra.vertices:
        o, d = m.offsets[v], m.dims[v]
        out[v] = total[o : o + d, o : o + d]
    return out
