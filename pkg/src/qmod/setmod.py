"""Finite categories and modules enriched in finite sets.

Here a module composite is a genuine coend: a quotient of a tagged sum,
computed with union-find.  Morphism ids are unique within a category and
element ids unique within a module, so endpoints are recoverable from ids.

A module ``m: B -> A`` has sets ``m(a, b)``, a left action
``A(a', a) x m(a, b) -> m(a', b)`` and a right action
``m(a, b) x B(b, b') -> m(a, b')``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping

from .enriched import QCategory
from .errors import OK, BoundaryError, InputError, QmodError, Verdict, Violation, fail
from .modules import QModule
from .quantale import QMatrix, boolean

Triple = tuple[str, str, str]


class UnionFind:
    """Disjoint sets whose root is always the least member."""

    def __init__(self, items: Iterable = ()):
        self.parent = {}
        for x in items:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {r: sorted(ms) for r, ms in out.items()}


@dataclass(frozen=True, eq=True)
class FinCategory:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], tuple[str, ...]]
    identities: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]

    def __hash__(self):
        return hash(self.objects)

    @classmethod
    def build(cls, objects, homs, identities, comp) -> FinCategory:
        objects = tuple(objects)
        hs = {(a, b): tuple(homs.get((a, b), ())) for a in objects for b in objects}
        extra = set(homs) - set(hs)
        if extra:
            raise InputError(f"hom sets mention unknown objects: {sorted(extra)!r}")
        return cls(objects, hs, dict(identities), dict(comp))

    @property
    def ends(self) -> dict[str, tuple[str, str]]:
        try:
            return self._ends
        except AttributeError:
            ends = {}
            for (a, b), ms in self.homs.items():
                for f in ms:
                    if f in ends:
                        raise InputError(f"morphism id {f!r} appears in two hom sets")
                    ends[f] = (a, b)
            object.__setattr__(self, "_ends", ends)
            return ends

    def dom(self, f: str) -> str:
        return self.ends[f][0]

    def cod(self, f: str) -> str:
        return self.ends[f][1]

    def compose(self, g: str, f: str) -> str:
        """``g . f`` (f first)."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise QmodError(f"composite {g} . {f} is undefined") from None

    def morphisms(self) -> list[str]:
        return [f for a in self.objects for b in self.objects for f in self.homs[(a, b)]]


def validate_fincategory(C: FinCategory) -> Verdict:
    try:
        ends = C.ends
    except InputError as e:
        return fail("morphism ids unique", (), str(e))
    for a in C.objects:
        i = C.identities.get(a)
        if i is None or ends.get(i) != (a, a):
            return fail("identity in C(a,a)", (a,))
    for g, f in product(C.morphisms(), repeat=2):
        if ends[f][1] != ends[g][0]:
            continue
        h = C.comp.get((g, f))
        if h is None or ends.get(h) != (ends[f][0], ends[g][1]):
            return fail("composition total and well typed", (g, f))
    for f in C.morphisms():
        a, b = ends[f]
        if C.comp[(f, C.identities[a])] != f or C.comp[(C.identities[b], f)] != f:
            return fail("identity laws", (f,))
    for h, g, f in product(C.morphisms(), repeat=3):
        if ends[f][1] == ends[g][0] and ends[g][1] == ends[h][0]:
            if C.comp[(h, C.comp[(g, f)])] != C.comp[(C.comp[(h, g)], f)]:
                return fail("associativity", (h, g, f))
    return OK


@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def __hash__(self):
        return hash(tuple(sorted(self.object_map.items())))

    def __call__(self, x: str) -> str:
        if x in self.object_map:
            return self.object_map[x]
        return self.morphism_map[x]


def validate_finfunctor(F: FinFunctor) -> Verdict:
    S, T = F.source, F.target
    for a in S.objects:
        if F.object_map.get(a) not in T.objects:
            return fail("functor maps objects", (a,))
        if F.morphism_map.get(S.identities[a]) != T.identities[F.object_map[a]]:
            return fail("functor preserves identities", (a,))
    for f in S.morphisms():
        a, b = S.ends[f]
        if T.ends.get(F.morphism_map.get(f)) != (F.object_map[a], F.object_map[b]):
            return fail("functor maps morphisms with endpoints", (f,))
    for g, f in product(S.morphisms(), repeat=2):
        if S.cod(f) == S.dom(g):
            if F.morphism_map[S.compose(g, f)] != T.compose(F.morphism_map[g], F.morphism_map[f]):
                return fail("functor preserves composition", (g, f))
    return OK


def identity_finfunctor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms()})


@dataclass(frozen=True)
class SetModule:
    """``m: source -> target`` with ``elements[(a, b)]`` for a in target, b in source.

    ``left[(alpha, x)]`` is ``alpha . x`` for ``alpha: a' -> a``;
    ``right[(x, beta)]`` is ``x . beta`` for ``beta: b -> b'``.
    ``payload`` optionally ties element ids to the data they were built from
    (a morphism, or a coend class's member triples); it is not compared.
    """

    source: FinCategory
    target: FinCategory
    elements: Mapping[tuple[str, str], tuple[str, ...]]
    left: Mapping[tuple[str, str], str]
    right: Mapping[tuple[str, str], str]
    payload: Mapping[str, object] = field(default_factory=dict, compare=False)
    class_of: Mapping[Triple, str] = field(default_factory=dict, compare=False)

    def __hash__(self):
        return hash(tuple(sorted(self.elements.items())))

    @property
    def where(self) -> dict[str, tuple[str, str]]:
        try:
            return self._where
        except AttributeError:
            w = {}
            for ab, xs in self.elements.items():
                for x in xs:
                    if x in w:
                        raise InputError(f"module element id {x!r} appears twice")
                    w[x] = ab
            object.__setattr__(self, "_where", w)
            return w

    def act_left(self, alpha: str, x: str) -> str:
        return self.left[(alpha, x)]

    def act_right(self, x: str, beta: str) -> str:
        return self.right[(x, beta)]

    def size(self) -> int:
        return sum(len(xs) for xs in self.elements.values())


def validate_setmodule(m: SetModule) -> Verdict:
    A, B = m.target, m.source
    try:
        where = m.where
    except InputError as e:
        return fail("element ids unique", (), str(e))
    for (a, b) in m.elements:
        if a not in A.objects or b not in B.objects:
            return fail("elements indexed by (target, source) objects", (a, b))
    for x, (a, b) in where.items():
        for alpha in A.morphisms():
            if A.cod(alpha) != a:
                continue
            y = m.left.get((alpha, x))
            if y is None or where.get(y) != (A.dom(alpha), b):
                return fail("left action total and well typed", (alpha, x))
        for beta in B.morphisms():
            if B.dom(beta) != b:
                continue
            y = m.right.get((x, beta))
            if y is None or where.get(y) != (a, B.cod(beta)):
                return fail("right action total and well typed", (x, beta))
        if m.left[(A.identities[a], x)] != x or m.right[(x, B.identities[b])] != x:
            return fail("actions are unital", (x,))
    for x, (a, b) in where.items():
        for alpha in A.morphisms():
            if A.cod(alpha) != a:
                continue
            for alpha2 in A.morphisms():
                if A.cod(alpha2) == A.dom(alpha):
                    if m.left[(A.compose(alpha, alpha2), x)] != m.left[(alpha2, m.left[(alpha, x)])]:
                        return fail("left action composes", (alpha, alpha2, x))
            for beta in B.morphisms():
                if B.dom(beta) == b:
                    if m.right[(m.left[(alpha, x)], beta)] != m.left[(alpha, m.right[(x, beta)])]:
                        return fail("actions commute", (alpha, x, beta))
        for beta in B.morphisms():
            if B.dom(beta) != b:
                continue
            for beta2 in B.morphisms():
                if B.dom(beta2) == B.cod(beta):
                    if m.right[(x, B.compose(beta2, beta))] != m.right[(m.right[(x, beta)], beta2)]:
                        return fail("right action composes", (x, beta, beta2))
    return OK


# -- modules from functors --------------------------------------------------------

def hom_module(A: FinCategory) -> SetModule:
    """The identity module: hom sets acted on by composition."""
    left, right = {}, {}
    for x in A.morphisms():
        a, b = A.ends[x]
        for alpha in A.morphisms():
            if A.cod(alpha) == a:
                left[(alpha, x)] = A.compose(x, alpha)
            if A.dom(alpha) == b:
                right[(x, alpha)] = A.compose(alpha, x)
    return SetModule(A, A, dict(A.homs), left, right, {x: x for x in A.morphisms()})


def set_lower_star(f: FinFunctor) -> SetModule:
    """``f_*(a, b) = A(a, f b)``; element ``"alpha@b"`` carries the morphism alpha."""
    A, B = f.target, f.source
    elements, payload = {}, {}
    for a in A.objects:
        for b in B.objects:
            ids = []
            for alpha in A.homs[(a, f.object_map[b])]:
                e = f"{alpha}@{b}"
                ids.append(e)
                payload[e] = alpha
            elements[(a, b)] = tuple(ids)
    left, right = {}, {}
    for e, alpha in payload.items():
        b = e.rsplit("@", 1)[1]
        a = A.dom(alpha)
        for alpha2 in A.morphisms():
            if A.cod(alpha2) == a:
                left[(alpha2, e)] = f"{A.compose(alpha, alpha2)}@{b}"
        for beta in B.morphisms():
            if B.dom(beta) == b:
                right[(e, beta)] = f"{A.compose(f.morphism_map[beta], alpha)}@{B.cod(beta)}"
    return SetModule(B, A, elements, left, right, payload)


def set_upper_star(f: FinFunctor) -> SetModule:
    """``f^*(b, a) = A(f b, a)``; element ``"b@alpha"`` carries the morphism alpha."""
    A, B = f.target, f.source
    elements, payload = {}, {}
    for b in B.objects:
        for a in A.objects:
            ids = []
            for alpha in A.homs[(f.object_map[b], a)]:
                e = f"{b}@{alpha}"
                ids.append(e)
                payload[e] = alpha
            elements[(b, a)] = tuple(ids)
    left, right = {}, {}
    for e, alpha in payload.items():
        b = e.split("@", 1)[0]
        for beta in B.morphisms():
            if B.cod(beta) == b:
                left[(beta, e)] = f"{B.dom(beta)}@{A.compose(alpha, f.morphism_map[beta])}"
        for alpha2 in A.morphisms():
            if A.dom(alpha2) == A.cod(alpha):
                right[(e, alpha2)] = f"{b}@{A.compose(alpha2, alpha)}"
    return SetModule(A, B, elements, left, right, payload)


# -- the coend --------------------------------------------------------------------

def coend_triples(m: SetModule, n: SetModule) -> dict[tuple[str, str], list[Triple]]:
    """Tagged pairs ``(b, y in n(b,c), x in m(a,b))`` grouped by ``(a, c)``."""
    A, B, C = m.target, m.source, n.source
    out = {}
    for a in A.objects:
        for c in C.objects:
            out[(a, c)] = [(b, y, x) for b in B.objects
                           for y in n.elements[(b, c)] for x in m.elements[(a, b)]]
    return out


def coend_relations(m: SetModule, n: SetModule) -> list[tuple[Triple, Triple]]:
    """Generating identifications ``(b', y, x.beta) ~ (b, beta.y, x)`` for
    ``beta: b -> b'``, ``y in n(b', c)``, ``x in m(a, b)``."""
    B = m.source
    rel = []
    nwhere, mwhere = n.where, m.where
    for beta in B.morphisms():
        b, b2 = B.ends[beta]
        for y, (yb, _) in nwhere.items():
            if yb != b2:
                continue
            for x, (_, xb) in mwhere.items():
                if xb != b:
                    continue
                rel.append(((b2, y, m.act_right(x, beta)), (b, n.act_left(beta, y), x)))
    return rel


def class_id(rep: Triple) -> str:
    return "[" + "|".join(rep) + "]"


def set_compose(m: SetModule, n: SetModule) -> SetModule:
    """``m . n`` for ``n: C -> B`` and ``m: B -> A``, as a quotient of tagged pairs.

    Each class is named after its least member, so outputs are canonical.
    """
    if n.target != m.source:
        raise BoundaryError("cannot compose set modules: target of n is not the source of m")
    A, C = m.target, n.source
    triples = coend_triples(m, n)
    uf = UnionFind(t for ts in triples.values() for t in ts)
    for s, t in coend_relations(m, n):
        uf.union(s, t)
    members = uf.classes()
    class_of = {t: class_id(uf.find(t)) for t in uf.parent}
    payload = {class_id(r): tuple(ms) for r, ms in members.items()}
    elements = {ac: tuple(sorted({class_of[t] for t in ts})) for ac, ts in triples.items()}

    left, right = {}, {}
    for cid, ms in payload.items():
        for alpha in A.morphisms():
            if A.cod(alpha) != m.where[ms[0][2]][0]:
                continue
            imgs = {class_of[(b, y, m.act_left(alpha, x))] for b, y, x in ms}
            if len(imgs) != 1:
                raise QmodError(f"induced left action is not well defined on {cid}")
            left[(alpha, cid)] = imgs.pop()
        for gamma in C.morphisms():
            if C.dom(gamma) != n.where[ms[0][1]][1]:
                continue
            imgs = {class_of[(b, n.act_right(y, gamma), x)] for b, y, x in ms}
            if len(imgs) != 1:
                raise QmodError(f"induced right action is not well defined on {cid}")
            right[(cid, gamma)] = imgs.pop()
    return SetModule(C, A, elements, left, right, payload, class_of)


# -- adjunction, collage, associator -----------------------------------------------

Counit = Callable[[FinCategory, str, str], str]


def composition_counit(A: FinCategory, y: str, x: str) -> str:
    """``f_* . f^* -> 1_A``: a pair ``(y: fb -> a', x: a -> fb)`` goes to ``y . x``."""
    return A.compose(y, x)


def set_check_adjunction(f: FinFunctor, counit: Counit = composition_counit) -> Verdict:
    """Elementwise check of ``f_* -| f^*``.

    The unit at ``b`` is the class of ``(f b, id, id)`` in ``(f^* . f_*)(b, b)``.
    Both triangle composites are evaluated on *every* member of that class,
    which also exercises well-definedness of the counit.
    """
    A, B = f.target, f.source
    lo, up = set_lower_star(f), set_upper_star(f)
    P = set_compose(up, lo)
    E = set_compose(lo, up)
    out: list[Violation] = []

    def eps(triple):
        _, y, x = triple
        try:
            return counit(A, up.payload[y], lo.payload[x])
        except QmodError as e:
            raise _Witness(("counit defined", triple, str(e)))

    try:
        # counit is constant on coend classes
        for cid, ms in E.payload.items():
            vals = {eps(t) for t in ms}
            if len(vals) != 1:
                raise _Witness(("counit well defined", (cid,), f"values {sorted(vals)}"))
        unit = {}
        for b in B.objects:
            fb = f.object_map[b]
            i = A.identities[fb]
            rep = (fb, f"{i}@{b}", f"{b}@{i}")
            unit[b] = P.class_of[rep]
        for beta in B.morphisms():
            b, b2 = B.ends[beta]
            if P.act_right(unit[b], beta) != P.act_left(beta, unit[b2]):
                raise _Witness(("unit natural", (beta,), ""))
        for b in B.objects:
            reps = P.payload[unit[b]]
            for (a, b_), ys in lo.elements.items():
                if b_ != b:
                    continue
                for y0 in ys:
                    for a0, p, q in reps:
                        back = lo.act_left(eps((b, q, y0)), p)
                        if back != y0:
                            raise _Witness(("triangle: eps f_* . f_* eta = 1", (y0, (a0, p, q)), back))
            for (b_, a), xs in up.elements.items():
                if b_ != b:
                    continue
                for x0 in xs:
                    for a0, p, q in reps:
                        back = up.act_right(q, eps((b, x0, p)))
                        if back != x0:
                            raise _Witness(("triangle: f^* eps . eta f^* = 1", (x0, (a0, p, q)), back))
    except _Witness as w:
        law, wit, detail = w.args[0]
        out.append(Violation(law, wit if isinstance(wit, tuple) else (wit,), str(detail)))
    return Verdict(tuple(out)) if out else OK


class _Witness(Exception):
    pass


@dataclass(frozen=True)
class SetCollage:
    total: FinCategory
    i: FinFunctor
    j: FinFunctor


def set_collage(m: SetModule) -> SetCollage:
    """Objects ``"A:a"`` then ``"B:b"``; morphisms ``"A:alpha"``, ``"B:beta"``, ``"M:x"``."""
    A, B = m.target, m.source
    objs = tuple("A:" + a for a in A.objects) + tuple("B:" + b for b in B.objects)
    homs = {}
    for (a, a2), fs in A.homs.items():
        homs[("A:" + a, "A:" + a2)] = tuple("A:" + f for f in fs)
    for (b, b2), fs in B.homs.items():
        homs[("B:" + b, "B:" + b2)] = tuple("B:" + f for f in fs)
    for (a, b), xs in m.elements.items():
        homs[("A:" + a, "B:" + b)] = tuple("M:" + x for x in xs)
    ids = {"A:" + a: "A:" + A.identities[a] for a in A.objects}
    ids.update({"B:" + b: "B:" + B.identities[b] for b in B.objects})
    comp = {("A:" + g, "A:" + f): "A:" + h for (g, f), h in A.comp.items()}
    comp.update({("B:" + g, "B:" + f): "B:" + h for (g, f), h in B.comp.items()})
    for (alpha, x), y in m.left.items():
        comp[("M:" + x, "A:" + alpha)] = "M:" + y
    for (x, beta), y in m.right.items():
        comp[("B:" + beta, "M:" + x)] = "M:" + y
    total = FinCategory.build(objs, homs, ids, comp)
    i = FinFunctor(A, total, {a: "A:" + a for a in A.objects}, {f: "A:" + f for f in A.morphisms()})
    j = FinFunctor(B, total, {b: "B:" + b for b in B.objects}, {f: "B:" + f for f in B.morphisms()})
    return SetCollage(total, i, j)


def _check_canonical_map(source: SetModule, target: SetModule, image: Callable[[Triple], str],
                         law: str) -> Verdict:
    """``image`` sends each member triple of a class of ``source`` to an element
    of ``target``; check it is constant on classes and a bijection per hom set."""
    for (a, c), cids in source.elements.items():
        hit = []
        for cid in cids:
            imgs = {image(t) for t in source.payload[cid]}
            if len(imgs) != 1:
                return fail(f"{law}: well defined", (cid,), f"images {sorted(imgs)}")
            hit.append(imgs.pop())
        if sorted(hit) != sorted(target.elements[(a, c)]):
            return fail(f"{law}: bijective", (a, c), f"{sorted(hit)} vs {sorted(target.elements[(a, c)])}")
    return OK


def check_set_collage(m: SetModule, c: SetCollage | None = None) -> Verdict:
    """Category laws of the collage, fullness of the injections, and the
    canonical bijection ``i^* . j_* -> m``."""
    c = c or set_collage(m)
    out = validate_fincategory(c.total) + validate_finfunctor(c.i) + validate_finfunctor(c.j)
    if not out:
        return out
    for inj, S in ((c.i, m.target), (c.j, m.source)):
        for a, b in product(S.objects, repeat=2):
            imgs = sorted(inj.morphism_map[f] for f in S.homs[(a, b)])
            if imgs != sorted(c.total.homs[(inj.object_map[a], inj.object_map[b])]):
                return fail("collage injection fully faithful", (a, b))
    up, lo = set_upper_star(c.i), set_lower_star(c.j)
    K = set_compose(up, lo)
    T = c.total

    def image(t):
        _, y, x = t
        mor = T.compose(lo.payload[y], up.payload[x])
        return mor[2:]

    return _check_canonical_map(K, m, image, "collage recovery i^* . j_* = m")


def set_associator_check(m: SetModule, n: SetModule, p: SetModule) -> Verdict:
    """The map ``[c, z, [b, y, x]] -> [b, [c, z, y], x]`` from
    ``(m . n) . p`` to ``m . (n . p)`` is well defined and bijective."""
    mn = set_compose(m, n)
    left = set_compose(mn, p)
    np_ = set_compose(n, p)
    right = set_compose(m, np_)

    def image_of(t):
        c, z, e = t
        imgs = {right.class_of[(b, np_.class_of[(c, z, y)], x)] for b, y, x in mn.payload[e]}
        if len(imgs) != 1:
            return ("ill-defined", tuple(sorted(imgs)))
        return imgs.pop()

    return _check_canonical_map(left, right, image_of, "associator")


def support_category(C: FinCategory) -> QCategory:
    """Collapse hom sets to booleans (nonempty -> 1)."""
    q = boolean()
    return QCategory(q, C.objects, QMatrix.build(C.objects, C.objects,
                                                  lambda i, j: 1 if C.homs[(C.objects[i], C.objects[j])] else 0))


def support_module(m: SetModule) -> QModule:
    A, B = m.target, m.source
    return QModule(support_category(B), support_category(A),
                   QMatrix.build(A.objects, B.objects,
                                 lambda i, j: 1 if m.elements[(A.objects[i], B.objects[j])] else 0))
