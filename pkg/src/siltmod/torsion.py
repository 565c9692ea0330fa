"""Torsion classes as subsets of a catalog of indecomposables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import exactlin as el
from . import repmod as rm
from .config import rng, settings
from .indec import IndSet
from .report import Report, Route, rank_claim
from .repmod import Module


class TorsionPairFailure(AssertionError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class OrthogonalityFailure(TorsionPairFailure):
    pass


class FiltrationFailure(TorsionPairFailure):
    pass


class ClosureFailure(TorsionPairFailure):
    pass


@dataclass(frozen=True)
class IndSubset:
    """A set of catalog indices; equality ignores the catalog reference."""

    ind: IndSet = field(compare=False, hash=False, repr=False)
    members: frozenset

    @classmethod
    def of(cls, ind: IndSet, members) -> "IndSubset":
        return cls(ind, frozenset(int(i) for i in members))

    @classmethod
    def everything(cls, ind: IndSet) -> "IndSubset":
        return cls.of(ind, range(len(ind)))

    def sorted(self) -> list[int]:
        return sorted(self.members)

    @property
    def names(self) -> list[str]:
        return [self.ind.modules[i].name for i in self.sorted()]

    def modules(self) -> list[Module]:
        return [self.ind.modules[i] for i in self.sorted()]

    def __contains__(self, i) -> bool:
        return i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __le__(self, other: "IndSubset") -> bool:
        return self.members <= other.members

    def complement(self) -> "IndSubset":
        return IndSubset.of(self.ind, set(range(len(self.ind))) - self.members)


def gen_class(t: Module, ind: IndSet) -> IndSubset:
    if t.is_zero():
        return IndSubset.of(ind, [])
    return IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if rm.in_gen(t, u)])


def perp_class(t: Module, ind: IndSet) -> IndSubset:
    return IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if rm.hom_dim(t, u) == 0])


def ext_perp_class(t: Module, ind: IndSet) -> IndSubset:
    if t.is_zero():
        return IndSubset.everything(ind)
    return IndSubset.of(ind, [i for i, u in enumerate(ind.modules) if rm.ext1_dim(t, u) == 0])


def gen_claim(t: Module, x: Module, label: str = "") -> dict:
    """Rank claim on the stacked images of a Hom(t, x) basis; full rank iff x is in Gen(t)."""
    hs = rm.hom_basis(t, x)
    mat = np.vstack([f.total() for f in hs.basis]) if hs.basis else el.zeros(0, x.dim)
    return rank_claim(mat, x.p, label or f"trace in {x.name}")


def _support(ind: IndSet, m: Module) -> set:
    return set(ind.decompose(m).support()) if m.dim else set()


def _sum_of(sub: IndSubset) -> Module | None:
    mods = sub.modules()
    return rm.direct_sum(*mods) if mods else None


@dataclass
class TorsionPairCertificate:
    torsion: IndSubset
    free: IndSubset
    filtrations: dict

    def as_dict(self) -> dict:
        return {"torsion": self.torsion.names, "free": self.free.names, "filtrations": self.filtrations}


def is_torsion_pair(tor: IndSubset, free: IndSubset, check_closure: bool = True) -> TorsionPairCertificate:
    """Certify that (tor, free) restricts a torsion pair to the catalog, or raise."""
    ind = tor.ind
    h = ind.hom_table
    for i in tor:
        for j in free:
            if h[i][j]:
                f = rm.hom_basis(ind[i], ind[j]).basis[0]
                raise OrthogonalityFailure(
                    f"Hom({ind[i].name}, {ind[j].name}) != 0",
                    {"source": ind[i].name, "target": ind[j].name, "map": f.vector().tolist()},
                )
    tsum = _sum_of(tor)
    filtrations = {}
    for k, m in enumerate(ind.modules):
        if tsum is None:
            tm, qm = rm.zero_module(ind.algebra), m
        else:
            rows = rm.trace_rows(tsum, m)
            tm, _ = rm.submodule(m, rows)
            qm, _ = rm.quotient(m, rows)
        t_supp, f_supp = _support(ind, tm), _support(ind, qm)
        if not t_supp <= tor.members or not f_supp <= free.members:
            raise FiltrationFailure(
                f"trace filtration of {m.name} leaves the pair",
                {"module": m.name, "trace": sorted(t_supp), "quotient": sorted(f_supp)},
            )
        filtrations[m.name] = {
            "trace": [ind[i].name for i in sorted(t_supp)],
            "quotient": [ind[i].name for i in sorted(f_supp)],
        }
    if check_closure:
        _check_closure(tor)
    return TorsionPairCertificate(tor, free, filtrations)


def _check_closure(tor: IndSubset) -> None:
    ind = tor.ind
    outside = tor.complement()
    for i in tor:
        for j in outside:
            if ind.hom_table[i][j] and rm.find_surjection(ind[i], ind[j], salt=i * 97 + j) is not None:
                raise ClosureFailure(
                    f"{ind[j].name} is a quotient of {ind[i].name}", {"source": ind[i].name, "target": ind[j].name}
                )
    for i in tor:
        for j in tor:
            if not ind.ext_table[i][j]:
                continue
            m, n = ind[i], ind[j]
            ext = rm.ext1(m, n)
            cocycles = list(ext.cocycles)
            gen = rng(0xE87, i, j)
            for _ in range(settings.cocycle_samples):
                cocycles.append(rm.combine(ext.cocycles, gen.integers(0, m.p, size=len(ext.cocycles))))
            for c in cocycles:
                e = rm.middle_term(m, n, c, ext)
                supp = _support(ind, e)
                if not supp <= tor.members:
                    raise ClosureFailure(
                        f"extension of {m.name} by {n.name} leaves the class",
                        {"ends": [m.name, n.name], "middle": [ind[k].name for k in sorted(supp)]},
                    )


def is_torsion_class(tor: IndSubset) -> bool:
    """Whether ``tor`` is the torsion part of a torsion pair on the catalog."""
    ind = tor.ind
    free = IndSubset.of(ind, [j for j in range(len(ind)) if all(ind.hom_table[i][j] == 0 for i in tor)])
    try:
        is_torsion_pair(tor, free)
    except TorsionPairFailure:
        return False
    return True


def ext_projectives(tor: IndSubset) -> IndSubset:
    ind = tor.ind
    return IndSubset.of(ind, [i for i in tor if all(ind.ext_table[i][j] == 0 for j in tor)])


def in_submodule_closure(n: Module, tor: IndSubset) -> bool:
    """Whether ``n`` embeds in a finite sum of members of ``tor``: the joint kernel of all maps vanishes."""
    if n.is_zero():
        return True
    maps = [f.total() for u in tor.modules() for f in rm.hom_basis(n, u).basis]
    if not maps:
        return False
    return el.rank(np.hstack(maps), n.p) == n.dim


# ------------------------------------------------------------ enumeration


@dataclass
class SiltingClass:
    module: Module
    torsion_class: IndSubset
    summands: IndSubset
    ext_projectives: IndSubset
    approximation: object = None

    def as_dict(self) -> dict:
        return {
            "module": self.module.name,
            "class": self.torsion_class.sorted(),
            "ext_projectives": self.ext_projectives.sorted(),
            "summands": self.summands.sorted(),
        }


def basic_module(ind: IndSet, indices) -> Module:
    indices = sorted(indices)
    if not indices:
        return rm.zero_module(ind.algebra).with_name("0")
    return ind.direct_sum(indices)


def enumerate_silting_classes(a, ind: IndSet, approximate: bool = True) -> list[SiltingClass]:
    """Silting modules among basic catalog sums, one representative per torsion class."""
    from . import silting

    if ind.algebra is not a:
        raise ValueError("catalog belongs to a different algebra")
    seen: dict = {}
    out = []
    n = len(ind)
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            t = basic_module(ind, subset)
            if not silting.is_silting(t, ind).verdict:
                continue
            gen = gen_class(t, ind)
            if gen in seen:
                continue
            seen[gen] = t
            approx = None
            if approximate:
                approx = silting.left_approximation(t, silting.sigma_tilde(t), ind)
                ep = ext_projectives(gen)
                if not _support(ind, approx.t1) <= ep.members:
                    raise silting.ApproximationFailure(f"cokernel of the approximation of A by {t.name} is not Ext-projective")
            out.append(SiltingClass(t, gen, IndSubset.of(ind, subset), ext_projectives(gen), approx))
    return out


def hrs_report(t: Module, ind: IndSet) -> Report:
    """Shadow of the HRS-tilted t-structure of (Gen t, t°) on stalk complexes of catalog modules."""
    from . import silting, twoterm

    rep = silting.is_silting(t, ind)
    if not rep.verdict:
        raise silting.NotSilting(f"{t.name} is not silting")
    tor, free = gen_class(t, ind), perp_class(t, ind)
    sigma = twoterm.TwoTermComplex(silting.sigma_tilde(t))
    rows, ok = [], True
    for k, x in enumerate(ind.modules):
        h1 = twoterm.module_stalk_derived_hom(sigma, x, 1)
        h0 = twoterm.module_stalk_derived_hom(sigma, x, 0)
        agree = (h1 == 0) == (k in tor) and (h0 == 0) == (k in free)
        ok = ok and agree
        rows.append({"module": x.name, "hom_sigma_x1": h1, "hom_sigma_x0": h0, "agrees": agree})
    cert = {
        "aisle": {"degree_0": tor.names, "degree_-1_and_below": "all"},
        "coaisle": {"degree_0": free.names, "degree_1_and_above": "all"},
        "stalk_checks": rows,
    }
    return Report(ok, [Route("stalk-shadows", ok, cert)], {"silting": rep.as_dict()})
