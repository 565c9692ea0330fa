"""Silting-type predicates for finitely generated modules, approximations and completion.

For a presentation sigma: P_{-1} -> P_0, the class D_sigma consists of the
modules X for which composition with sigma, Hom(P_0, X) -> Hom(P_{-1}, X), is
onto.  A module T is silting with respect to sigma when Gen(T) = D_sigma.
Classes are compared as subsets of a catalog of indecomposables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from . import repmod as rm
from .indec import IndSet
from .report import Report, Route, rank_claim, solution_claim, surjective_claim
from .repmod import Module, ModuleMap, Presentation
from .torsion import IndSubset, ext_perp_class, gen_class, gen_claim, in_submodule_closure


class NotPartialSilting(ValueError):
    pass


class NotSilting(ValueError):
    pass


class PresentationMismatch(ValueError):
    pass


class VerdictDisagreement(AssertionError):
    """Independent routes to the same verdict disagree."""

    def __init__(self, message: str, report: Report):
        super().__init__(message)
        self.report = report


class ApproximationFailure(AssertionError):
    pass


class CertificationFailure(AssertionError):
    pass


# ------------------------------------------------------------- D classes


def induced_map(sigma: Presentation, x: Module) -> np.ndarray:
    """Matrix of Hom(P_0, x) -> Hom(P_{-1}, x), f -> f . sigma, on generator images."""
    rows = [x.dims[u] for u in sigma.p_minus1]
    cols = [x.dims[w] for w in sigma.p0]
    out = el.zeros(sum(rows), sum(cols))
    ro = 0
    for r, u in enumerate(sigma.p_minus1):
        co = 0
        for c, w in enumerate(sigma.p0):
            elt = sigma.entries[r, c]
            if elt.any() and rows[r] and cols[c]:
                out[ro : ro + rows[r], co : co + cols[c]] = x.element_action(elt, w, u).T
            co += cols[c]
        ro += rows[r]
    return out


def dsigma_contains(sigma: Presentation, x: Module) -> bool:
    if sigma.algebra is not x.algebra:
        raise rm.ModuleError("presentation and module over different algebras")
    return el.is_surjective(induced_map(sigma, x), x.p)


@dataclass(eq=False)
class DClassQuery:
    """Membership in D_sigma with cached verdicts."""

    sigma: Presentation
    verdicts: dict = field(default_factory=dict)

    def __call__(self, x: Module) -> bool:
        key = id(x)
        if key not in self.verdicts:
            self.verdicts[key] = (x, dsigma_contains(self.sigma, x))
        return self.verdicts[key][1]

    def claim(self, x: Module) -> dict:
        return surjective_claim(induced_map(self.sigma, x), x.p, f"Hom(sigma, {x.name})")


def d_class(sigma: Presentation, ind: IndSet) -> IndSubset:
    return IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if dsigma_contains(sigma, u)])


# ----------------------------------------------------------- presentations


def _check_presents(t: Module, sigma: Presentation) -> None:
    if sigma.algebra is not t.algebra:
        raise PresentationMismatch("presentation and module over different algebras")
    c = sigma.cokernel()
    if c.dims != t.dims or rm.find_isomorphism(c, t) is None:
        raise PresentationMismatch(f"{sigma!r} does not present {t.name or t}")


def support_idempotent(t: Module) -> tuple[str, ...]:
    return tuple(v for v in t.algebra.vertices if t.dims[v] == 0)


def sigma_tilde(t: Module) -> Presentation:
    """Minimal presentation plus (P_i -> 0) for every vertex i outside the support of t."""
    a = t.algebra
    sigma = rm.min_presentation(t)
    extra = [Presentation(a, (v,), ()) for v in support_idempotent(t)]
    return sigma.direct_sum(*extra) if extra else sigma


def presentation_label(sigma: Presentation) -> str:
    return repr(sigma).removeprefix("Presentation(").removesuffix(")")


def tau_rigidity_claim(t: Module) -> dict:
    """Rank claim on the commutation system of Hom(t, tau t); Hom vanishes iff rank = columns."""
    tt = rm.tau(t)
    if t.is_zero() or tt.is_zero():
        return rank_claim(el.zeros(0, 0), t.p, "Hom(T, tau T)")
    return rank_claim(rm.commutation_system(t, tt), t.p, "Hom(T, tau T)")


def is_tau_rigid(t: Module) -> bool:
    c = tau_rigidity_claim(t)
    return c["value"] == c["shape"][1]


# --------------------------------------------------------------- predicates


def is_partial_silting(t: Module, sigma: Presentation | None = None) -> Report:
    """T in D_sigma; D_sigma is a torsion class automatically for finite presentations."""
    default = sigma is None
    sigma = rm.min_presentation(t) if default else sigma
    _check_presents(t, sigma)
    q = DClassQuery(sigma)
    verdict = q(t)
    routes = [
        Route(
            "membership",
            verdict,
            {"S1": "automatic (compact case)", "sigma": presentation_label(sigma), "claims": [q.claim(t)]},
        )
    ]
    tau_claim = tau_rigidity_claim(t)
    rigid = tau_claim["value"] == tau_claim["shape"][1]
    report = Report(verdict, routes, {"tau_rigid": rigid})
    if default:
        report.routes.append(Route("tau-rigid", rigid, {"claims": [tau_claim]}))
        if rigid != verdict:
            raise VerdictDisagreement("membership and tau-rigidity disagree", report)
    return report


def _definitional(t: Module, sigma: Presentation, ind: IndSet) -> Route:
    q = DClassQuery(sigma)
    gen = gen_class(t, ind)
    dcl = IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if q(u)])
    claims = []
    for u in ind.modules:
        if not t.is_zero():
            claims.append(gen_claim(t, u))
        claims.append(q.claim(u))
    cert = {"sigma": presentation_label(sigma), "gen": gen.names, "d_sigma": dcl.names, "claims": claims}
    return Route("definitional", gen == dcl, cert)


def is_silting_wrt(t: Module, sigma: Presentation, ind: IndSet) -> Report:
    """Gen(t) = D_sigma on the catalog, for a given presentation of t."""
    _check_presents(t, sigma)
    route = _definitional(t, sigma, ind)
    return Report(route.verdict, [route])


def is_silting(t: Module, ind: IndSet) -> Report:
    """Silting with respect to sigma_tilde(t), decided by two independent routes."""
    sig = sigma_tilde(t)
    a = _definitional(t, sig, ind)
    e = support_idempotent(t)
    summands = ind.decompose(t).summand_count() if t.dim else 0
    support = len(t.algebra.vertices) - len(e)
    tau_claim = tau_rigidity_claim(t)
    rigid = tau_claim["value"] == tau_claim["shape"][1]
    b = Route(
        "support-tau-tilting",
        rigid and summands == support,
        {"tau_rigid": rigid, "summands": summands, "support_vertices": support, "claims": [tau_claim]},
    )
    report = Report(a.verdict, [a, b], {"support_idempotent": list(e)})
    if a.verdict != b.verdict:
        raise VerdictDisagreement("silting routes disagree", report)
    return report


def is_tilting(t: Module, ind: IndSet) -> Report:
    gen = gen_class(t, ind)
    perp = ext_perp_class(t, ind)
    a = Route("gen-equals-ext-perp", gen == perp, {"gen": gen.names, "ext_perp": perp.names})
    sigma = rm.min_presentation(t)
    mono = sigma.is_monomorphic()
    wrt = _definitional(t, sigma, ind)
    b = Route(
        "monomorphic-presentation",
        mono and wrt.verdict,
        {"monomorphic": mono, "silting_wrt_minimal": wrt.certificate},
    )
    faithful = rm.is_faithful(t)
    silting = is_silting(t, ind)
    c = Route(
        "faithful-silting",
        faithful and silting.verdict,
        {"faithful": faithful, "annihilator_dim": int(rm.annihilator(t).shape[0]), "silting": silting.verdict},
    )
    report = Report(a.verdict, [a, b, c])
    if not a.verdict == b.verdict == c.verdict:
        raise VerdictDisagreement("tilting routes disagree", report)
    return report


def _in_pres(t: Module, x: Module) -> bool:
    """Kernel of the universal map t^d -> x lies in Gen(t)."""
    hs = rm.hom_basis(t, x)
    if not hs.basis:
        return x.is_zero()
    total = rm.power(t, hs.dim)
    u = ModuleMap(total, x, {v: np.vstack([f.blocks[v] for f in hs.basis]) for v in x.algebra.vertices})
    if not u.is_surjective():
        return False
    k, _ = rm.kernel(u)
    return k.is_zero() or rm.in_gen(t, k)


def is_quasitilting(t: Module, ind: IndSet) -> Report:
    gen = gen_class(t, ind)
    perp = ext_perp_class(t, ind)
    closure = IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if in_submodule_closure(u, gen)])
    rhs = IndSubset.of(ind, closure.members & perp.members)
    a = Route(
        "gen-equals-closure-meet-ext-perp",
        gen == rhs,
        {"gen": gen.names, "submodule_closure": closure.names, "ext_perp": perp.names},
    )
    ext_proj = all(rm.ext1_dim(t, ind[i]) == 0 for i in gen) if t.dim else True
    pres = all(_in_pres(t, ind[i]) for i in gen) if t.dim else True
    b = Route("pres-equals-gen-and-ext-projective", ext_proj and pres, {"ext_projective": ext_proj, "pres_equals_gen": pres})
    s = is_silting(t, ind)
    c = Route("silting", s.verdict, {"silting": s.as_dict()["routes"][1]["certificate"]})
    report = Report(a.verdict, [a, b, c])
    if not a.verdict == b.verdict == c.verdict:
        raise VerdictDisagreement("quasitilting routes disagree", report)
    return report


def equivalent_silting(t1: Module, t2: Module, ind: IndSet) -> bool:
    for t in (t1, t2):
        if not is_silting(t, ind).verdict:
            raise NotSilting(f"{t.name or t} is not silting")
    return gen_class(t1, ind) == gen_class(t2, ind)


# ------------------------------------------------------------ approximation


@dataclass(eq=False)
class ApproximationSequence:
    """A -> T0 -> T1 -> 0 exact, with phi a left D_sigma-approximation of A."""

    phi: ModuleMap
    t0: Module
    t1: Module
    projection: ModuleMap
    components: list
    certificate: dict

    def t0_summands(self) -> list[str]:
        return list(self.components)


def left_approximation(t: Module, sigma: Presentation, ind: IndSet) -> ApproximationSequence:
    """Universal map from A to copies of the summands of t, greedily minimized."""
    if not is_silting_wrt(t, sigma, ind).verdict:
        raise NotSilting(f"{t.name or t} is not silting with respect to {sigma!r}")
    a = t.algebra
    vertices = tuple(a.vertices)
    areg = rm.regular_module(a)
    summands = ind.decompose(t).support() if t.dim else []
    comps = []  # (catalog index, map A -> U)
    for j in summands:
        for f in rm.hom_from_projective_basis(a, vertices, ind[j]):
            comps.append((j, f))
    dcl = d_class(sigma, ind)
    targets = {x: rm.hom_from_projective_basis(a, vertices, ind[x]) for x in dcl}
    # images h . phi_k of each component under Hom(U_j, X)
    spans = {x: [[rm.compose(h, f).vector() for h in rm.hom_basis(ind[j], ind[x]).basis] for j, f in comps] for x in dcl}

    def factors(keep) -> bool:
        for x in dcl:
            cols = [v for k in keep for v in spans[x][k]]
            fs = [f.vector() for f in targets[x]]
            if not fs:
                continue
            span = np.stack(cols, axis=1) if cols else el.zeros(len(fs[0]), 0)
            if el.rank(np.hstack([span, np.stack(fs, axis=1)]), a.p) != el.rank(span, a.p):
                return False
        return True

    keep = list(range(len(comps)))
    if not factors(keep):
        raise ApproximationFailure("universal map is not an approximation")
    for k in list(keep):
        trial = [i for i in keep if i != k]
        if factors(trial):
            keep = trial
    claims = []
    for x in dcl:
        cols = [v for k in keep for v in spans[x][k]]
        for n, f in enumerate(targets[x]):
            span = np.stack(cols, axis=1) if cols else el.zeros(f.vector().size, 0)
            sol = el.solve(span, f.vector(), a.p)
            claims.append(solution_claim(span, f.vector(), sol, a.p, f"A -> {ind[x].name} basis map {n}"))
    kept = [comps[k] for k in keep]
    if kept:
        t0 = rm.direct_sum(*[ind[j] for j, _ in kept])
        phi = rm.map_into_sum([f for _, f in kept], t0)
    else:
        t0 = rm.zero_module(a)
        phi = rm.zero_map(areg, t0)
    t0.name = "+".join(ind[j].name for j, _ in kept) or "0"
    t1, proj = rm.cokernel(phi)
    t1_support = ind.decompose(t1).support() if t1.dim else []
    if not set(t1_support) <= set(summands):
        raise ApproximationFailure("cokernel of the approximation is not in Add(T)")
    cert = {
        "t0": [ind[j].name for j, _ in kept],
        "t1": ind.decompose(t1).as_dict() if t1.dim else {},
        "claims": claims,
    }
    return ApproximationSequence(phi, t0, t1, proj, [ind[j].name for j, _ in kept], cert)


# --------------------------------------------------------------- completion


@dataclass(eq=False)
class Completion:
    t: Module
    complement: Module
    t_bar: Module
    sigma_bar: Presentation
    complement_presentation: Presentation
    certificate: dict


def _stack_blocks(rows_of_blocks, row_dims, col_dims) -> np.ndarray:
    out = el.zeros(sum(row_dims), sum(col_dims))
    ro = 0
    for i, row in enumerate(rows_of_blocks):
        co = 0
        for j, blk in enumerate(row):
            if blk is not None:
                out[ro : ro + row_dims[i], co : co + col_dims[j]] = blk
            co += col_dims[j]
        ro += row_dims[i]
    return out


def bongartz_complete(t: Module, sigma: Presentation, ind: IndSet) -> Completion:
    """Complement M = coker(P_{-1}^d -> A + P_0^d) built from a basis of Hom(P_{-1}, A)."""
    if not is_partial_silting(t, sigma).verdict:
        raise NotPartialSilting(f"{t.name or t} is not partial silting with respect to {sigma!r}")
    a, p = t.algebra, t.p
    vertices = tuple(a.vertices)
    areg = rm.regular_module(a)
    psis = rm.hom_from_projective_basis(a, sigma.p_minus1, areg)
    d = len(psis)
    src_v = sigma.p_minus1 * d
    tgt_v = vertices + sigma.p0 * d
    src = rm.projective_sum(a, src_v)
    tgt = rm.projective_sum(a, tgt_v)
    smap = sigma.map
    blocks = {}
    for v in vertices:
        pm, p0d, ad = smap.source.dims[v], smap.target.dims[v], areg.dims[v]
        neg = (-smap.blocks[v]) % p
        rows = []
        for k, psi in enumerate(psis):
            rows.append([psi.blocks[v]] + [neg if j == k else None for j in range(d)])
        blocks[v] = _stack_blocks(rows, [pm] * d, [ad] + [p0d] * d) if d else el.zeros(0, tgt.dims[v])
    g = ModuleMap(src, tgt, blocks)
    if not g.is_homomorphism():
        raise CertificationFailure("pushout map is not a homomorphism")
    pres_m = rm.presentation_from_map(a, src_v, tgt_v, g)
    m = pres_m.cokernel()
    m.name = "M"
    t_bar = rm.direct_sum(t, m) if t.dim else m
    t_bar.name = f"{t.name or 'T'}+M"
    sigma_bar = sigma.direct_sum(pres_m)
    gen = gen_class(t_bar, ind)
    dcl = d_class(sigma, ind)
    dcl_bar = d_class(sigma_bar, ind)
    silting = is_silting(t_bar, ind)
    cert = {
        "d": d,
        "complement_dims": list(m.dim_vector()),
        "complement_decomposition": ind.decompose(m).as_dict() if m.dim else {},
        "gen": gen.names,
        "d_sigma": dcl.names,
        "d_sigma_bar": dcl_bar.names,
        "silting": silting.as_dict(),
    }
    if not (gen == dcl == dcl_bar and silting.verdict):
        raise CertificationFailure(f"completion failed: {cert}")
    return Completion(t, m, t_bar, sigma_bar, pres_m, cert)
