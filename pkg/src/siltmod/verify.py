"""Run every module's invariants against one algebra and collect a pass/fail report."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import repmod as rm
from . import silting as si
from . import torsion as to
from . import twoterm as tt
from .algebra import Algebra
from .indec import IndSet, enumerate_indecomposables
from .report import Report, Route, recheck


@dataclass(eq=False)
class Context:
    algebra: Algebra
    ind: IndSet
    reports: list = field(default_factory=list)

    @cached_property
    def presentations(self) -> list:
        return [rm.min_presentation(u) for u in self.ind.modules]

    @cached_property
    def classes(self) -> list:
        return to.enumerate_silting_classes(self.algebra, self.ind)

    @cached_property
    def complexes(self) -> list:
        return tt.enumerate_two_silting(self.algebra, self.ind, self.classes)

    @cached_property
    def candidates(self) -> list:
        n = len(self.ind)
        return [s for k in range(n + 1) for s in combinations(range(n), k)]

    def module(self, subset):
        return to.basic_module(self.ind, subset)


def _tau_free(ctx: Context):
    ind = ctx.ind
    for t, sigma in zip(ind.modules, ctx.presentations):
        tau_t = rm.tau(t)
        for m in ind.modules:
            if si.dsigma_contains(sigma, m) != (rm.hom_dim(m, tau_t) == 0):
                return {"M": m.name, "T": t.name}


def _tau_of_projectives(ctx: Context):
    for v in ctx.algebra.vertices:
        if not rm.tau(rm.projective(ctx.algebra, v)).is_zero():
            return {"vertex": v}


def _catalog_decomposes(ctx: Context):
    for i, u in enumerate(ctx.ind.modules):
        mult = ctx.ind.decompose(u).multiplicities
        if mult != tuple(int(j == i) for j in range(len(ctx.ind))):
            return {"module": u.name, "multiplicities": list(mult)}


def _dclass_torsion(ctx: Context):
    for u, sigma in zip(ctx.ind.modules, ctx.presentations):
        if not to.is_torsion_class(si.d_class(sigma, ctx.ind)):
            return {"presentation_of": u.name}


def _dclass_ext_perp(ctx: Context):
    for u, sigma in zip(ctx.ind.modules, ctx.presentations):
        for j, x in enumerate(ctx.ind.modules):
            if si.dsigma_contains(sigma, x) and rm.ext1_dim(u, x):
                return {"presentation_of": u.name, "X": x.name}


def _dclass_sums(ctx: Context):
    ind, pres = ctx.ind, ctx.presentations
    for i, j in combinations(range(len(ind)), 2):
        both = pres[i].direct_sum(pres[j])
        for x in ind.modules:
            lhs = si.dsigma_contains(both, x)
            if lhs != (si.dsigma_contains(pres[i], x) and si.dsigma_contains(pres[j], x)):
                return {"sigma": ind[i].name, "gamma": ind[j].name, "X": x.name}


def _partial_tau_rigid(ctx: Context):
    for subset in ctx.candidates:
        if not 1 <= len(subset) <= 3:
            continue
        t = ctx.module(subset)
        # is_partial_silting raises on disagreement with tau-rigidity
        si.is_partial_silting(t)


def _silting_routes(ctx: Context):
    for subset in ctx.candidates:
        si.is_silting(ctx.module(subset), ctx.ind)


def _tilting_routes(ctx: Context):
    hereditary = ctx.algebra.is_hereditary_path_algebra()
    for subset in ctx.candidates:
        t = ctx.module(subset)
        rep = si.is_tilting(t, ctx.ind)
        if hereditary:
            sincere_silting = rep.route("faithful-silting").certificate["silting"] and rm.is_sincere(t)
            if sincere_silting != rep.verdict:
                return {"module": t.name}


def _silting_quasitilting(ctx: Context):
    for cl in ctx.classes:
        if not si.is_quasitilting(cl.module, ctx.ind).verdict:
            return {"module": cl.module.name}


def _bongartz(ctx: Context):
    for u, sigma in zip(ctx.ind.modules, ctx.presentations):
        if si.is_partial_silting(u, sigma).verdict:
            si.bongartz_complete(u, sigma, ctx.ind)


def _torsion_pairs(ctx: Context):
    for cl in ctx.classes:
        t = cl.module
        cert = to.is_torsion_pair(to.gen_class(t, ctx.ind), to.perp_class(t, ctx.ind))
        ctx.reports.append(Report(True, [Route("torsion-pair", True, cert.as_dict())]).as_dict())


def _ext_projectives(ctx: Context):
    for cl in ctx.classes:
        if to.ext_projectives(cl.torsion_class) != cl.summands:
            return {"module": cl.module.name}


def _quasitilting_equality(ctx: Context):
    ind = ctx.ind
    for cl in ctx.classes:
        gen = cl.torsion_class
        perp = to.ext_perp_class(cl.module, ind)
        rhs = {i for i, x in enumerate(ind.modules) if to.in_submodule_closure(x, gen)} & perp.members
        if gen.members != rhs:
            return {"module": cl.module.name}


def _closure_monotone(ctx: Context):
    ind = ctx.ind
    tors = [cl.torsion_class for cl in ctx.classes]
    for small in tors:
        for big in tors:
            if not small <= big:
                continue
            for x in ind.modules:
                if to.in_submodule_closure(x, small) and not to.in_submodule_closure(x, big):
                    return {"small": small.names, "big": big.names, "X": x.name}


def _h0_bijection(ctx: Context):
    ctx.reports.append(tt.verify_h0_bijection(ctx.algebra, ctx.ind, ctx.classes, ctx.complexes).as_dict())


def _stalk_shadows(ctx: Context):
    ind = ctx.ind
    for s in ctx.complexes:
        t = tt.h0(s)
        free = to.perp_class(t, ind)
        for k, x in enumerate(ind.modules):
            in_d = si.dsigma_contains(s.underlying, x)
            h1 = tt.module_stalk_derived_hom(s, x, 1)
            h0 = tt.module_stalk_derived_hom(s, x, 0)
            if (h1 == 0) != in_d or (h0 == 0) != (k in free) or h0 != rm.hom_dim(t, x):
                return {"complex": s.label(), "X": x.name}


def _hom_additivity(ctx: Context):
    cs = ctx.complexes[:5]
    for x, y in combinations(cs, 2):
        for z in cs[:2]:
            for i in (-1, 0, 1):
                whole = tt.hom_complex_dim(x.direct_sum(y), z, i).dim
                parts = tt.hom_complex_dim(x, z, i).dim + tt.hom_complex_dim(y, z, i).dim
                whole2 = tt.hom_complex_dim(z, x.direct_sum(y), i).dim
                parts2 = tt.hom_complex_dim(z, x, i).dim + tt.hom_complex_dim(z, y, i).dim
                if whole != parts or whole2 != parts2:
                    return {"pair": [x.label(), y.label()], "with": z.label(), "degree": i}


def _two_silting_routes(ctx: Context):
    for s in ctx.complexes:
        rep = tt.is_two_silting(s, ctx.ind)
        if not rep.verdict:
            return {"complex": s.label()}
        ctx.reports.append(rep.as_dict())


def _silting_reports(ctx: Context):
    for cl in ctx.classes:
        ctx.reports.append(si.is_silting(cl.module, ctx.ind).as_dict())


def _recheck(ctx: Context):
    for k, doc in enumerate(ctx.reports):
        for path, ok in recheck(doc):
            if not ok:
                return {"report": k, "claim": path}


INVARIANTS = [
    ("catalog decomposes into unit vectors", _catalog_decomposes),
    ("tau of projectives vanishes", _tau_of_projectives),
    ("D_sigma membership iff Hom(M, tau T) = 0", _tau_free),
    ("D_sigma is a torsion class", _dclass_torsion),
    ("D_sigma lies in (coker sigma)^perp1", _dclass_ext_perp),
    ("D of a sum is the intersection", _dclass_sums),
    ("partial silting iff tau-rigid", _partial_tau_rigid),
    ("silting routes agree on every basic candidate", _silting_routes),
    ("tilting routes agree; sincere silting iff tilting", _tilting_routes),
    ("silting modules are quasitilting", _silting_quasitilting),
    ("Bongartz completion certifies", _bongartz),
    ("(Gen T, T°) is a torsion pair", _torsion_pairs),
    ("Ext-projectives are the summands", _ext_projectives),
    ("Gen T = submodule closure meet T^perp1", _quasitilting_equality),
    ("submodule closure is monotone", _closure_monotone),
    ("H0 bijection", _h0_bijection),
    ("stalk shadows of derived Hom", _stalk_shadows),
    ("Hom complex is additive", _hom_additivity),
    ("2-silting routes agree", _two_silting_routes),
    ("silting certificates", _silting_reports),
    ("certificates recheck", _recheck),
]


def verify_all(a: Algebra, ind: IndSet | None = None, strategy: str | None = None) -> Report:
    """Run every invariant; the first counterexample of each failing invariant is recorded."""
    ind = ind or enumerate_indecomposables(a, strategy)
    ctx = Context(a, ind)
    routes = []
    for name, fn in INVARIANTS:
        try:
            counter = fn(ctx)
        except AssertionError as exc:
            counter = {"exception": type(exc).__name__, "reason": str(exc)}
        routes.append(Route(name, counter is None, {"counterexample": counter} if counter else {}))
    ok = all(r.verdict for r in routes)
    witnesses = {
        "catalog": ind.names,
        "silting_classes": len(ctx.classes),
        "certificates": ctx.reports,
    }
    return Report(ok, routes, witnesses)
