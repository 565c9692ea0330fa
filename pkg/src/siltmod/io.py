"""JSON readers and writers for algebras, modules and two-term complexes."""

from __future__ import annotations

import json
import os
from pathlib import Path as FsPath

import numpy as np

from .algebra import Algebra, AlgebraError, Quiver, Relation, build_algebra
from .repmod import Module, ModuleError, Presentation


class InputError(ValueError):
    """Malformed input file; carries the file, the offending field and a reason."""

    def __init__(self, file: str, field: str, reason: str):
        super().__init__(f"{file}: {field}: {reason}")
        self.file = str(file)
        self.field = field
        self.reason = reason

    def as_dict(self) -> dict:
        return {"error": "input", "file": self.file, "field": self.field, "reason": self.reason}


_ALGEBRAS: dict = {}


def _read(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(path, "", "file not found") from None
    except json.JSONDecodeError as exc:
        raise InputError(path, f"line {exc.lineno}", exc.msg) from None


def _require(doc: dict, key: str, path, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(path, key, "missing field")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(path, key, f"expected {kind.__name__}")
    return val


def algebra_from_dict(doc: dict, path="<algebra>", p: int | None = None) -> Algebra:
    field = _require(doc, "field", path, dict)
    modulus = p if p is not None else _require(field, "p", path, int)
    vertices = [str(v) for v in _require(doc, "vertices", path, list)]
    arrows = []
    for k, arr in enumerate(_require(doc, "arrows", path, list)):
        try:
            arrows.append((arr["name"], arr["from"], arr["to"]))
        except (KeyError, TypeError):
            raise InputError(path, f"arrows[{k}]", "needs name, from and to") from None
    rels = []
    for k, rel in enumerate(doc.get("relations", [])):
        try:
            rels.append(Relation.of(*[(t["coeff"], t["path"]) for t in rel]))
        except (KeyError, TypeError):
            raise InputError(path, f"relations[{k}]", "terms need coeff and path") from None
    cap = _require(doc, "length_cap", path, int)
    try:
        q = Quiver.from_lists(vertices, arrows)
        return build_algebra(q, rels, cap, modulus)
    except (AlgebraError, ValueError) as exc:
        raise InputError(path, "algebra", str(exc)) from None


def load_algebra(path, p: int | None = None) -> Algebra:
    """Load an algebra file; repeated loads of one file return the same object."""
    key = (os.path.realpath(path), p)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = algebra_from_dict(_read(path), path, p)
    return _ALGEBRAS[key]


def algebra_to_dict(a: Algebra) -> dict:
    return {
        "field": {"p": a.p},
        "vertices": list(a.vertices),
        "arrows": [{"name": x.name, "from": x.source, "to": x.target} for x in a.quiver.arrows],
        "relations": [[{"coeff": c, "path": list(arrows)} for c, arrows in r.terms] for r in a.relations],
        "length_cap": a.length_cap,
    }


def _check_algebra_ref(doc, path, algebra, p):
    ref = _require(doc, "algebra", path, str)
    a = algebra if algebra is not None else load_algebra(FsPath(path).parent / ref, p)
    field = doc.get("field")
    if p is None and isinstance(field, dict) and field.get("p", a.p) != a.p:
        raise InputError(path, "field.p", f"file records p = {field['p']}, algebra uses p = {a.p}")
    return a


def module_from_dict(doc: dict, a: Algebra, path="<module>") -> Module:
    dims = _require(doc, "dims", path, dict)
    maps = doc.get("maps", {})
    if not isinstance(maps, dict):
        raise InputError(path, "maps", "expected an object")
    try:
        clean = {str(k): int(v) for k, v in dims.items()}
        return Module(a, clean, {k: np.array(v, dtype=np.int64) for k, v in maps.items()}, name=doc.get("name"))
    except (ModuleError, ValueError, TypeError) as exc:
        raise InputError(path, "maps", str(exc)) from None


def load_module(path, algebra: Algebra | None = None, p: int | None = None) -> Module:
    doc = _read(path)
    a = _check_algebra_ref(doc, path, algebra, p)
    m = module_from_dict(doc, a, path)
    if m.name is None:
        m.name = FsPath(path).stem
    return m


def module_to_dict(m: Module, algebra_file: str = "algebra.json") -> dict:
    a = m.algebra
    return {
        "algebra": algebra_file,
        "field": {"p": a.p},
        "name": m.name,
        "dims": {v: m.dims[v] for v in a.vertices},
        "maps": {x.name: m.maps[x.name].tolist() for x in a.quiver.arrows},
    }


def _expand(items, path, field) -> tuple:
    out = []
    for k, it in enumerate(items):
        try:
            out += [str(it["vertex"])] * int(it.get("mult", 1))
        except (KeyError, TypeError):
            raise InputError(path, f"{field}[{k}]", "needs vertex and mult") from None
    return tuple(out)


def _element(a: Algebra, entry, path, field) -> np.ndarray:
    if isinstance(entry, list) and all(isinstance(x, int) for x in entry):
        if len(entry) != a.dim:
            raise InputError(path, field, f"coordinate vector of length {len(entry)}, algebra has dimension {a.dim}")
        return np.array(entry, dtype=np.int64)
    vec = np.zeros(a.dim, dtype=np.int64)
    try:
        for term in entry:
            vec[a.index[a.path(term["path"])]] += int(term["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(path, field, f"bad element term: {exc}") from None
    return vec


def complex_from_dict(doc: dict, a: Algebra, path="<complex>") -> Presentation:
    pm1 = _expand(_require(doc, "p_minus1", path, list), path, "p_minus1")
    p0 = _expand(_require(doc, "p0", path, list), path, "p0")
    rows = doc.get("map", [])
    e = np.zeros((len(pm1), len(p0), a.dim), dtype=np.int64)
    if pm1 and p0:
        if len(rows) != len(pm1) or any(len(r) != len(p0) for r in rows):
            raise InputError(path, "map", f"expected a {len(pm1)} x {len(p0)} matrix of elements")
        for r, row in enumerate(rows):
            for c, entry in enumerate(row):
                e[r, c] = _element(a, entry, path, f"map[{r}][{c}]")
    try:
        return Presentation(a, pm1, p0, e)
    except ModuleError as exc:
        raise InputError(path, "map", str(exc)) from None


def load_complex(path, algebra: Algebra | None = None, p: int | None = None) -> Presentation:
    doc = _read(path)
    a = _check_algebra_ref(doc, path, algebra, p)
    return complex_from_dict(doc, a, path)


def _collapse(vs: tuple) -> list:
    out = []
    for v in vs:
        if out and out[-1]["vertex"] == v:
            out[-1]["mult"] += 1
        else:
            out.append({"vertex": v, "mult": 1})
    return out


def complex_to_dict(s: Presentation, algebra_file: str = "algebra.json") -> dict:
    return {
        "algebra": algebra_file,
        "field": {"p": s.algebra.p},
        "p_minus1": _collapse(s.p_minus1),
        "p0": _collapse(s.p0),
        "map": s.entries.tolist(),
    }


def write_json(path, doc) -> None:
    from .report import dumps

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc) + "\n")


def export_indset(ind, directory, algebra_file: str = "algebra.json") -> list[str]:
    """Write one module file per catalog member plus an index with the Hom/Ext tables."""
    d = FsPath(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_json(d / algebra_file, algebra_to_dict(ind.algebra))
    files = []
    for m in ind.modules:
        name = f"{m.name}.json"
        write_json(d / name, module_to_dict(m, algebra_file))
        files.append(name)
    write_json(
        d / "indset.json",
        {"modules": files, "hom_table": ind.hom_table.tolist(), "ext_table": ind.ext_table.tolist()},
    )
    return files

