"""JSON workspace documents: an algebra with named modules, morphisms,
generator lists and Serre supports.

Matrices are row lists; entry [r][c] multiplies source coordinate c.  Entries
are reduced mod p on load, so negative integers are accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exceptions import ParseError, UnknownReference, ValidationError
from .linalg import Field
from .quiver import DEFAULT_LENGTH_CAP, Morphism, PathAlgebra, Quiver, Representation
from .stable import SerreContext, StableContext, StableVerdict


@dataclass(eq=False)
class Workspace:
    algebra: PathAlgebra
    modules: dict[str, Representation] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    subcategories: dict[str, list[str]] = field(default_factory=dict)
    serre: dict[str, list[str]] = field(default_factory=dict)

    def module(self, name: str) -> Representation:
        try:
            return self.modules[name]
        except KeyError:
            raise UnknownReference(f"unknown module {name!r}") from None

    def morphism(self, name: str) -> Morphism:
        try:
            return self.morphisms[name]
        except KeyError:
            raise UnknownReference(f"unknown morphism {name!r}") from None

    def context(self, name: str | None = None) -> StableContext:
        if name is None:
            if not self.subcategories:
                raise UnknownReference("workspace declares no subcategories")
            name = next(iter(self.subcategories))
        if name not in self.subcategories:
            raise UnknownReference(f"unknown subcategory {name!r}")
        return StableContext(self.algebra, [self.module(m) for m in self.subcategories[name]], name)

    def serre_context(self, name: str | None = None) -> SerreContext:
        if name is None:
            if not self.serre:
                raise UnknownReference("workspace declares no Serre supports")
            name = next(iter(self.serre))
        if name not in self.serre:
            raise UnknownReference(f"unknown Serre support {name!r}")
        return SerreContext(self.algebra, self.serre[name], name)

    def equals(self, other: "Workspace") -> bool:
        return (
            self.algebra == other.algebra
            and list(self.modules) == list(other.modules)
            and all(self.modules[k].equals(other.modules[k]) for k in self.modules)
            and list(self.morphisms) == list(other.morphisms)
            and all(self.morphisms[k].equals(other.morphisms[k]) for k in self.morphisms)
            and self.subcategories == other.subcategories
            and self.serre == other.serre
        )


# --- encoding --------------------------------------------------------------


def matrix_to_json(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def module_to_json(m: Representation) -> dict:
    return {
        "dims": {v: m.dims[v] for v in m.algebra.vertices},
        "maps": {a.name: matrix_to_json(m.maps[a.name]) for a in m.algebra.quiver.arrows},
    }


def morphism_to_json(f: Morphism, source: str | None = None, target: str | None = None) -> dict:
    """With names, the morphism refers to workspace modules; without, the
    modules are embedded so the document stands alone."""
    return {
        "from": source if source is not None else module_to_json(f.source),
        "to": target if target is not None else module_to_json(f.target),
        "maps": {v: matrix_to_json(f.maps[v]) for v in f.algebra.vertices},
    }


def algebra_to_json(alg: PathAlgebra) -> dict:
    return {
        "field": {"p": alg.field.p},
        "quiver": {
            "vertices": list(alg.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in alg.quiver.arrows],
        },
        "relations": [list(r) for r in alg.relations],
    }


def export_workspace(ws) -> dict:
    """Document for a :class:`Workspace` or anything shaped like one (a scenario)."""
    names = {id(m): k for k, m in ws.modules.items()}

    def name_of(m: Representation) -> str:
        if id(m) in names:
            return names[id(m)]
        for k, n in ws.modules.items():
            if n.equals(m):
                return k
        raise UnknownReference("morphism endpoint is not a named module")

    doc = algebra_to_json(ws.algebra)
    doc["modules"] = {k: module_to_json(m) for k, m in ws.modules.items()}
    doc["morphisms"] = {
        k: morphism_to_json(f, name_of(f.source), name_of(f.target)) for k, f in ws.morphisms.items()
    }
    doc["subcategories"] = {k: list(v) for k, v in ws.subcategories.items()}
    doc["serre"] = {k: list(v) for k, v in ws.serre.items()}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


# --- decoding --------------------------------------------------------------


def _expect(value, kind, where: str):
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(f"{where}: expected {names}, got {type(value).__name__}")
    return value


def _matrix(value, where: str) -> list[list[int]]:
    _expect(value, list, where)
    for r, row in enumerate(value):
        _expect(row, list, f"{where}[{r}]")
        for c, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"{where}[{r}][{c}]: expected integer, got {x!r}")
    return value


def _module(alg: PathAlgebra, name: str, doc, where: str) -> Representation:
    _expect(doc, dict, where)
    dims = _expect(doc.get("dims", {}), dict, f"{where}.dims")
    for v, d in dims.items():
        if isinstance(d, bool) or not isinstance(d, int):
            raise ParseError(f"{where}.dims.{v}: expected integer")
    maps = _expect(doc.get("maps", {}), dict, f"{where}.maps")
    maps = {a: _matrix(m, f"{where}.maps.{a}") for a, m in maps.items()}
    return Representation(alg, dims, maps, name=name)


def _morphism(alg: PathAlgebra, name: str, doc, modules: dict[str, Representation], where: str) -> Morphism:
    _expect(doc, dict, where)
    ends = []
    for key in ("from", "to"):
        if key not in doc:
            raise ParseError(f"{where}: missing {key!r}")
        ref = doc[key]
        if isinstance(ref, str):
            if ref not in modules:
                raise UnknownReference(f"{where}.{key}: unknown module {ref!r}")
            ends.append(modules[ref])
        else:
            ends.append(_module(alg, None, ref, f"{where}.{key}"))
    maps = _expect(doc.get("maps", {}), dict, f"{where}.maps")
    unknown = set(maps) - set(alg.vertices)
    if unknown:
        raise ValidationError(f"morphism {name!r}: unknown vertices {sorted(unknown)}")
    maps = {v: _matrix(m, f"{where}.maps.{v}") for v, m in maps.items()}
    try:
        return Morphism(ends[0], ends[1], maps)
    except ValidationError as e:
        raise ValidationError(f"morphism {name!r}: {e}") from None


def parse_algebra(doc: dict, field_p: int | None = None, len_cap: int | None = None) -> PathAlgebra:
    fdoc = _expect(doc.get("field", {}), dict, "field")
    p = field_p if field_p is not None else fdoc.get("p", 101)
    try:
        fld = Field(int(p))
    except ValueError as e:
        raise ValidationError(f"field: {e}") from None
    qdoc = _expect(doc.get("quiver"), dict, "quiver")
    vertices = [str(v) for v in _expect(qdoc.get("vertices", []), list, "quiver.vertices")]
    arrows = []
    for k, a in enumerate(_expect(qdoc.get("arrows", []), list, "quiver.arrows")):
        _expect(a, dict, f"quiver.arrows[{k}]")
        for key in ("name", "from", "to"):
            if key not in a:
                raise ParseError(f"quiver.arrows[{k}]: missing {key!r}")
        arrows.append((str(a["name"]), str(a["from"]), str(a["to"])))
    rels = []
    for k, r in enumerate(_expect(doc.get("relations", []), list, "relations")):
        rels.append(tuple(str(x) for x in _expect(r, list, f"relations[{k}]")))
    return PathAlgebra(Quiver(tuple(vertices), tuple(arrows)), rels, fld, len_cap or DEFAULT_LENGTH_CAP)


def parse_workspace(document, field_p: int | None = None, len_cap: int | None = None) -> Workspace:
    """Load and validate a workspace from JSON text or an already-decoded dict."""
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    else:
        doc = document
    _expect(doc, dict, "document")
    alg = parse_algebra(doc, field_p, len_cap)
    modules = {}
    for name, m in _expect(doc.get("modules", {}), dict, "modules").items():
        modules[name] = _module(alg, name, m, f"modules.{name}")
    morphisms = {}
    for name, f in _expect(doc.get("morphisms", {}), dict, "morphisms").items():
        morphisms[name] = _morphism(alg, name, f, modules, f"morphisms.{name}")
    subs = {}
    for name, gens in _expect(doc.get("subcategories", {}), dict, "subcategories").items():
        gens = [str(g) for g in _expect(gens, list, f"subcategories.{name}")]
        for g in gens:
            if g not in modules:
                raise UnknownReference(f"subcategories.{name}: unknown module {g!r}")
        subs[name] = gens
    serre = {}
    for name, vs in _expect(doc.get("serre", {}), dict, "serre").items():
        vs = [str(v) for v in _expect(vs, list, f"serre.{name}")]
        for v in vs:
            if v not in alg.vertices:
                raise UnknownReference(f"serre.{name}: unknown vertex {v!r}")
        serre[name] = vs
    return Workspace(alg, modules, morphisms, subs, serre)


def load_workspace(path: str, field_p: int | None = None, len_cap: int | None = None) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return parse_workspace(text, field_p, len_cap)


def workspace_from(scenario) -> Workspace:
    return Workspace(
        scenario.algebra,
        dict(scenario.modules),
        dict(scenario.morphisms),
        {k: list(v) for k, v in scenario.subcategories.items()},
        {k: list(v) for k, v in scenario.serre.items()},
    )


# --- verdicts --------------------------------------------------------------


def verdict_to_json(v: StableVerdict) -> dict:
    return {
        "answer": v.answer,
        "route": v.route,
        "certificates": {k: morphism_to_json(f) for k, f in v.certificate.items()},
        "relations": [[[c, list(names)] for c, names in rel] for rel in v.relations],
        "refutations": [list(r) for r in v.refutations],
        "details": {k: x for k, x in v.details.items() if isinstance(x, (bool, int, str, float))},
    }


def verdict_from_json(doc: dict, algebra: PathAlgebra) -> StableVerdict:
    cert = {k: _morphism(algebra, k, f, {}, f"certificates.{k}") for k, f in doc.get("certificates", {}).items()}
    rels = [[(int(c), tuple(names)) for c, names in rel] for rel in doc.get("relations", [])]
    refs = [tuple(r) for r in doc.get("refutations", [])]
    return StableVerdict(bool(doc["answer"]), doc.get("route", ""), cert, rels, refs, dict(doc.get("details", {})))


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
