"""JSON document format shared by every CLI verb.

A document is one JSON object with optional sections::

    {
      "quantales":  {"B": "bool", "T": {"elements": [...], "join": [[...]],
                                        "tensor": [[...]], "unit": "1"}},
      "homs":       {"h": "bool>chain:3",
                     "g": {"source": "B", "target": "T", "map": {"0": "0", "1": "1"}}},
      "categories": {"A": {"quantale": "B", "objects": ["a", "b"],
                           "hom": [["1", "1"], ["0", "1"]]}},
      "functors":   {"f": {"source": "U", "target": "A", "map": {"*": "b"}}},
      "modules":    {"m": {"source": "B1", "target": "A", "entries": {"a": {"*": "1"}}}},
      "int":        {"objects":   {"P": {"pos": "X", "neg": "U"}},
                     "morphisms": {"R": {"source": "P", "target": "P",
                                         "A": "m1", "B": "m2", "C": "m3", "D": "m4"}}},
      "set":        {"categories": {"C": {"objects": [...], "homs": [["a", "b", ["f"]], ...],
                                          "identities": {"a": "1a"},
                                          "compose": [["g", "f", "gf"], ...]}},
                     "functors":   {"F": {"source": "C", "target": "D",
                                          "objects": {...}, "morphisms": {...}}},
                     "modules":    {"M": {"source": "C", "target": "D",
                                          "elements": [["a", "b", ["x"]], ...],
                                          "left": [["alpha", "x", "y"], ...],
                                          "right": [["x", "beta", "y"], ...]}}},
      "claims":     [{"law": "...", "equal": ["compose(m, n)", "p"]}, ...]
    }

Matrices are lists of rows (row order = object order) or sparse nested maps
``{row: {col: id}}`` in which missing entries are bottom.  Emission always
writes full row lists, so defaults become explicit.  Set hom sets, module
element sets and action tables omitted for a pair are empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .enriched import QCategory, QFunctor, validate_category, validate_functor
from .errors import InputError, Verdict
from .homodular import QuantaleHom, builtin_hom, validate_hom
from .intcon import IntMorphism, IntObject
from .modules import QModule, validate_module
from .quantale import Quantale, builtin_quantale, is_builtin_name, validate_quantale
from .setmod import (
    FinCategory,
    FinFunctor,
    SetModule,
    validate_fincategory,
    validate_finfunctor,
    validate_setmodule,
)


class DocumentError(InputError):
    """One or more located problems found while loading a document."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


@dataclass
class Document:
    quantales: dict[str, Quantale] = field(default_factory=dict)
    homs: dict[str, QuantaleHom] = field(default_factory=dict)
    categories: dict[str, QCategory] = field(default_factory=dict)
    functors: dict[str, QFunctor] = field(default_factory=dict)
    modules: dict[str, QModule] = field(default_factory=dict)
    int_objects: dict[str, IntObject] = field(default_factory=dict)
    int_morphisms: dict[str, IntMorphism] = field(default_factory=dict)
    set_categories: dict[str, FinCategory] = field(default_factory=dict)
    set_functors: dict[str, FinFunctor] = field(default_factory=dict)
    set_modules: dict[str, SetModule] = field(default_factory=dict)
    claims: list[dict] = field(default_factory=list)

    def lookup(self, name: str):
        """Any entity by name, searched section by section."""
        for section in (self.modules, self.functors, self.categories, self.int_morphisms,
                        self.int_objects, self.homs, self.quantales, self.set_modules,
                        self.set_functors, self.set_categories):
            if name in section:
                return section[name]
        raise InputError(f"unknown name {name!r}")

    # -- registration of derived entities (used when emitting CLI results) --

    def add_quantale(self, q: Quantale, hint: str = "Q") -> str:
        return _register(self.quantales, q, q.name or hint)

    def add_category(self, c: QCategory, hint: str) -> str:
        self.add_quantale(c.base)
        return _register(self.categories, c, hint)

    def add_functor(self, f: QFunctor, hint: str) -> str:
        self.add_category(f.source, hint + ".source")
        self.add_category(f.target, hint + ".target")
        return _register(self.functors, f, hint)

    def add_module(self, m: QModule, hint: str) -> str:
        self.add_category(m.source, hint + ".source")
        self.add_category(m.target, hint + ".target")
        return _register(self.modules, m, hint)

    def add_int_object(self, ob: IntObject, hint: str) -> str:
        self.add_category(ob.pos, hint + ".pos")
        self.add_category(ob.neg, hint + ".neg")
        return _register(self.int_objects, ob, hint)

    def add_int_morphism(self, R: IntMorphism, hint: str) -> str:
        self.add_int_object(R.source, hint + ".source")
        self.add_int_object(R.target, hint + ".target")
        for label, blk in zip("ABCD", R.blocks):
            self.add_module(blk, f"{hint}.{label}")
        return _register(self.int_morphisms, R, hint)


def _register(section: dict, value, hint: str) -> str:
    for k, v in section.items():
        if v == value:
            return k
    name, n = hint, 1
    while name in section:
        n += 1
        name = f"{hint}{n}"
    section[name] = value
    return name


def _name_of(section: dict, value, what: str) -> str:
    for k, v in section.items():
        if v == value:
            return k
    raise InputError(f"cannot emit: {what} is not registered in the document")


# -- parsing -------------------------------------------------------------------

class _Loader:
    def __init__(self, raw: dict):
        self.raw = raw
        self.doc = Document()
        self.problems: list[str] = []

    def section(self, *path) -> dict:
        node: Any = self.raw
        for p in path:
            node = node.get(p, {}) if isinstance(node, dict) else {}
        if not isinstance(node, dict):
            self.problems.append(f"{'.'.join(path)}: expected an object")
            return {}
        return node

    def each(self, where: str, items: dict, build, into: dict):
        for name, desc in items.items():
            try:
                into[name] = build(name, desc)
            except InputError as e:
                self.problems.append(f"{where}.{name}: {e}")
            except (TypeError, KeyError, ValueError, AttributeError) as e:
                self.problems.append(f"{where}.{name}: malformed entry ({type(e).__name__}: {e})")

    def ref(self, section: dict, name, what: str):
        if not isinstance(name, str) or name not in section:
            raise InputError(f"unknown {what} {name!r}")
        return section[name]


def _quantale(name, desc) -> Quantale:
    if isinstance(desc, str):
        return builtin_quantale(desc)
    return Quantale.from_tables(desc["elements"], desc["join"], desc["tensor"], desc["unit"], name)


def parse(text: str, check: bool = True) -> Document:
    """Parse and resolve a document.  With ``check`` every entity must also
    pass its validator; otherwise law checking is left to the caller."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError([f"syntax error at line {e.lineno} column {e.colno}: {e.msg}"]) from None
    if not isinstance(raw, dict):
        raise DocumentError(["document root must be a JSON object"])
    known = {"quantales", "homs", "categories", "functors", "modules", "int", "set", "claims"}
    L = _Loader(raw)
    for k in raw:
        if k not in known:
            L.problems.append(f"unknown section {k!r}")
    d = L.doc

    L.each("quantales", L.section("quantales"), _quantale, d.quantales)

    def hom(name, desc):
        if isinstance(desc, str):
            return builtin_hom(desc)
        return QuantaleHom.from_ids(L.ref(d.quantales, desc["source"], "quantale"),
                                    L.ref(d.quantales, desc["target"], "quantale"), desc["map"], name)

    L.each("homs", L.section("homs"), hom, d.homs)

    def category(name, desc):
        q = L.ref(d.quantales, desc["quantale"], "quantale")
        return QCategory.from_ids(q, [str(o) for o in desc["objects"]], desc.get("hom", {}))

    L.each("categories", L.section("categories"), category, d.categories)

    def functor(name, desc):
        return QFunctor.from_mapping(L.ref(d.categories, desc["source"], "category"),
                                     L.ref(d.categories, desc["target"], "category"), desc["map"])

    L.each("functors", L.section("functors"), functor, d.functors)

    def module(name, desc):
        return QModule.from_ids(L.ref(d.categories, desc["source"], "category"),
                                L.ref(d.categories, desc["target"], "category"), desc.get("entries", {}))

    L.each("modules", L.section("modules"), module, d.modules)

    def int_object(name, desc):
        return IntObject(L.ref(d.categories, desc["pos"], "category"),
                         L.ref(d.categories, desc["neg"], "category"))

    L.each("int.objects", L.section("int", "objects"), int_object, d.int_objects)

    def int_morphism(name, desc):
        blocks = [L.ref(d.modules, desc[b], "module") for b in "ABCD"]
        return IntMorphism(L.ref(d.int_objects, desc["source"], "int object"),
                           L.ref(d.int_objects, desc["target"], "int object"), *blocks)

    L.each("int.morphisms", L.section("int", "morphisms"), int_morphism, d.int_morphisms)

    def set_category(name, desc):
        objs = [str(o) for o in desc["objects"]]
        homs = {}
        for a, b, ms in desc.get("homs", []):
            homs[(a, b)] = tuple(ms)
        comp = {(g, f): h for g, f, h in desc.get("compose", [])}
        C = FinCategory.build(objs, homs, desc["identities"], comp)
        C.ends  # surfaces duplicate morphism ids as input errors
        return C

    L.each("set.categories", L.section("set", "categories"), set_category, d.set_categories)

    def set_functor(name, desc):
        return FinFunctor(L.ref(d.set_categories, desc["source"], "set category"),
                          L.ref(d.set_categories, desc["target"], "set category"),
                          dict(desc["objects"]), dict(desc.get("morphisms", {})))

    L.each("set.functors", L.section("set", "functors"), set_functor, d.set_functors)

    def set_module(name, desc):
        B = L.ref(d.set_categories, desc["source"], "set category")
        A = L.ref(d.set_categories, desc["target"], "set category")
        elements = {(a, b): () for a in A.objects for b in B.objects}
        for a, b, xs in desc.get("elements", []):
            if (a, b) not in elements:
                raise InputError(f"elements indexed by unknown pair ({a!r}, {b!r})")
            elements[(a, b)] = tuple(xs)
        m = SetModule(B, A, elements,
                      {(al, x): y for al, x, y in desc.get("left", [])},
                      {(x, be): y for x, be, y in desc.get("right", [])})
        m.where
        return m

    L.each("set.modules", L.section("set", "modules"), set_module, d.set_modules)

    claims = raw.get("claims", [])
    if not isinstance(claims, list) or not all(isinstance(c, dict) for c in claims):
        L.problems.append("claims: expected a list of objects")
    else:
        d.claims = claims

    if L.problems:
        raise DocumentError(L.problems)
    if check:
        bad = [f"{where}: {v}" for where, v in validate_document(d) if not v]
        if bad:
            raise DocumentError(bad)
    return d


def load(path: str, check: bool = True) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError([f"cannot read {path}: {e.strerror}"]) from None
    return parse(text, check)


def validate_document(d: Document) -> list[tuple[str, Verdict]]:
    """Run every entity validator; one entry per entity in document order."""
    out = []
    for n, q in d.quantales.items():
        out.append((f"quantales.{n}", validate_quantale(q)))
    for n, h in d.homs.items():
        out.append((f"homs.{n}", validate_hom(h)))
    for n, c in d.categories.items():
        out.append((f"categories.{n}", validate_category(c)))
    for n, f in d.functors.items():
        out.append((f"functors.{n}", validate_functor(f)))
    for n, m in d.modules.items():
        out.append((f"modules.{n}", validate_module(m)))
    for n, c in d.set_categories.items():
        out.append((f"set.categories.{n}", validate_fincategory(c)))
    for n, f in d.set_functors.items():
        out.append((f"set.functors.{n}", validate_finfunctor(f)))
    for n, m in d.set_modules.items():
        out.append((f"set.modules.{n}", validate_setmodule(m)))
    return out


# -- emission ------------------------------------------------------------------

def _emit_quantale(q: Quantale):
    if q.name and is_builtin_name(q.name) and builtin_quantale(q.name) == q:
        return q.name
    E = q.elements
    return {"elements": list(E),
            "join": [[E[v] for v in row] for row in q.join_table],
            "tensor": [[E[v] for v in row] for row in q.tensor_table],
            "unit": E[q.unit]}


def to_json(d: Document) -> dict:
    out: dict = {}
    if d.quantales:
        out["quantales"] = {n: _emit_quantale(q) for n, q in d.quantales.items()}
    if d.homs:
        homs = {}
        for n, h in d.homs.items():
            try:
                if h.name and builtin_hom(h.name) == h:
                    homs[n] = h.name
                    continue
            except InputError:
                pass
            homs[n] = {"source": _name_of(d.quantales, h.source, "hom source"),
                       "target": _name_of(d.quantales, h.target, "hom target"),
                       "map": {x: h(x) for x in h.source.elements}}
        out["homs"] = homs
    if d.categories:
        out["categories"] = {
            n: {"quantale": _name_of(d.quantales, c.base, f"quantale of {n}"),
                "objects": list(c.objects), "hom": c.hom.as_ids(c.base)}
            for n, c in d.categories.items()}
    if d.functors:
        out["functors"] = {
            n: {"source": _name_of(d.categories, f.source, f"source of {n}"),
                "target": _name_of(d.categories, f.target, f"target of {n}"),
                "map": dict(zip(f.source.objects, f.object_map))}
            for n, f in d.functors.items()}
    if d.modules:
        out["modules"] = {
            n: {"source": _name_of(d.categories, m.source, f"source of {n}"),
                "target": _name_of(d.categories, m.target, f"target of {n}"),
                "entries": m.matrix.as_ids(m.base)}
            for n, m in d.modules.items()}
    if d.int_objects or d.int_morphisms:
        out["int"] = {
            "objects": {n: {"pos": _name_of(d.categories, ob.pos, "int pos"),
                            "neg": _name_of(d.categories, ob.neg, "int neg")}
                        for n, ob in d.int_objects.items()},
            "morphisms": {n: {"source": _name_of(d.int_objects, R.source, "int source"),
                              "target": _name_of(d.int_objects, R.target, "int target"),
                              **{b: _name_of(d.modules, blk, f"block {b} of {n}")
                                 for b, blk in zip("ABCD", R.blocks)}}
                          for n, R in d.int_morphisms.items()}}
    if d.set_categories or d.set_functors or d.set_modules:
        s: dict = {}
        s["categories"] = {
            n: {"objects": list(C.objects),
                "homs": [[a, b, list(ms)] for (a, b), ms in C.homs.items() if ms],
                "identities": dict(C.identities),
                "compose": [[g, f, h] for (g, f), h in sorted(C.comp.items())]}
            for n, C in d.set_categories.items()}
        s["functors"] = {
            n: {"source": _name_of(d.set_categories, F.source, "set functor source"),
                "target": _name_of(d.set_categories, F.target, "set functor target"),
                "objects": dict(F.object_map), "morphisms": dict(F.morphism_map)}
            for n, F in d.set_functors.items()}
        s["modules"] = {
            n: {"source": _name_of(d.set_categories, m.source, "set module source"),
                "target": _name_of(d.set_categories, m.target, "set module target"),
                "elements": [[a, b, list(xs)] for (a, b), xs in m.elements.items() if xs],
                "left": [[al, x, y] for (al, x), y in sorted(m.left.items())],
                "right": [[x, be, y] for (x, be), y in sorted(m.right.items())]}
            for n, m in d.set_modules.items()}
        out["set"] = s
    if d.claims:
        out["claims"] = d.claims
    return out


def emit(d: Document) -> str:
    return json.dumps(to_json(d), indent=2) + "\n"
