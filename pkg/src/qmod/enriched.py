"""Quantale-enriched categories and functors.

A ``QCategory`` is a finite set of object ids with a hom matrix
``hom[a][b] = A(a, b)``.  Functors are object maps; because every hom is
an element of a poset, the functor inequality is all there is to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .errors import OK, BoundaryError, InputError, Verdict, Violation
from .quantale import QMatrix, Quantale, identity_matrix


@dataclass(frozen=True)
class QCategory:
    base: Quantale
    objects: tuple[str, ...]
    hom: QMatrix

    def __post_init__(self):
        if self.hom.rows != self.objects or self.hom.cols != self.objects:
            raise BoundaryError("hom matrix is not indexed by the category's objects")
        if len(set(self.objects)) != len(self.objects):
            raise InputError(f"duplicate object ids in {self.objects!r}")

    @classmethod
    def from_ids(cls, base: Quantale, objects: Sequence[str], hom) -> QCategory:
        """``hom`` is a square list of element ids or a mapping ``{a: {b: id}}``
        where missing entries mean bottom."""
        objects = tuple(objects)
        return cls(base, objects, _read_matrix(base, objects, objects, hom, "hom"))

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.objects)}

    def position(self, obj: str) -> int:
        try:
            return self._pos[obj]
        except KeyError:
            raise InputError(f"unknown object {obj!r}") from None

    def __len__(self) -> int:
        return len(self.objects)

    def h(self, a: str, b: str) -> int:
        """Hom A(a, b) as an element index."""
        return self.hom.data[self.position(a)][self.position(b)]

    def hom_id(self, a: str, b: str) -> str:
        return self.base.elements[self.h(a, b)]

    def __repr__(self) -> str:
        return f"QCategory({self.base.name or 'Q'}, objects={list(self.objects)})"


@dataclass(frozen=True)
class QFunctor:
    source: QCategory
    target: QCategory
    object_map: tuple[str, ...]

    def __post_init__(self):
        if len(self.object_map) != len(self.source.objects):
            raise BoundaryError("object map must list one image per source object")
        for t in self.object_map:
            self.target.position(t)

    @classmethod
    def from_mapping(cls, source: QCategory, target: QCategory, mapping: Mapping[str, str]) -> QFunctor:
        try:
            images = tuple(mapping[a] for a in source.objects)
        except KeyError as e:
            raise InputError(f"functor does not map object {e.args[0]!r}") from None
        return cls(source, target, images)

    def __call__(self, obj: str) -> str:
        return self.object_map[self.source.position(obj)]

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """Target positions of the images, aligned with source positions."""
        return tuple(self.target.position(t) for t in self.object_map)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}->{b}" for a, b in zip(self.source.objects, self.object_map))
        return f"QFunctor({pairs})"


def _read_matrix(base: Quantale, rows, cols, desc, label) -> QMatrix:
    if isinstance(desc, QMatrix):
        return desc
    if isinstance(desc, Mapping):
        unknown = set(desc) - set(rows)
        if unknown:
            raise InputError(f"{label}: unknown row ids {sorted(unknown)!r}")
        data = []
        for r in rows:
            row = desc.get(r, {})
            bad = set(row) - set(cols)
            if bad:
                raise InputError(f"{label}: unknown column ids {sorted(bad)!r} in row {r!r}")
            data.append(tuple(base.index(str(row[c])) if c in row else base.bottom for c in cols))
        return QMatrix(tuple(rows), tuple(cols), tuple(data))
    if len(desc) != len(rows) or any(len(r) != len(cols) for r in desc):
        raise InputError(f"{label}: expected a {len(rows)}x{len(cols)} matrix")
    return QMatrix(tuple(rows), tuple(cols), tuple(tuple(base.index(str(v)) for v in r) for r in desc))


def same_base(*things) -> Quantale:
    q = things[0].base
    for t in things[1:]:
        if t.base != q:
            raise BoundaryError("objects are enriched over different quantales")
    return q


# -- validation -----------------------------------------------------------------

def validate_category(A: QCategory) -> Verdict:
    q = A.base
    J, T, u = q.join_table, q.tensor_table, q.unit
    H = A.hom.data
    obs = A.objects
    out: list[Violation] = []
    for i, a in enumerate(obs):
        if J[u][H[i][i]] != H[i][i]:
            out.append(Violation("identity: unit <= A(a,a)", (a,)))
            break
    n = len(obs)
    for i, j, k in product(range(n), repeat=3):
        if J[T[H[j][k]][H[i][j]]][H[i][k]] != H[i][k]:
            out.append(Violation("composition: A(b,c) (x) A(a,b) <= A(a,c)", (obs[i], obs[j], obs[k])))
            break
    return Verdict(tuple(out)) if out else OK


def validate_functor(f: QFunctor) -> Verdict:
    q = same_base(f.source, f.target)
    J = q.join_table
    S, Tg = f.source.hom.data, f.target.hom.data
    p = f.positions
    n = len(f.source)
    for i, j in product(range(n), repeat=2):
        if J[S[i][j]][Tg[p[i]][p[j]]] != Tg[p[i]][p[j]]:
            return Verdict((Violation(
                "functor: A(a,a') <= B(fa,fa')", (f.source.objects[i], f.source.objects[j])),))
    return OK


# -- constructions --------------------------------------------------------------

def discrete_category(q: Quantale, objects: Sequence[str]) -> QCategory:
    objects = tuple(objects)
    return QCategory(q, objects, identity_matrix(q, objects))


def unit_category(q: Quantale) -> QCategory:
    return discrete_category(q, ("*",))


def empty_category(q: Quantale) -> QCategory:
    return discrete_category(q, ())


def identity_functor(A: QCategory) -> QFunctor:
    return QFunctor(A, A, A.objects)


def compose_functors(g: QFunctor, f: QFunctor) -> QFunctor:
    """``g . f``: apply f first."""
    if f.target != g.source:
        raise BoundaryError("functors are not composable")
    return QFunctor(f.source, g.target, tuple(g(x) for x in f.object_map))


def full_subcategory(X: QCategory, objects: Sequence[str]) -> QCategory:
    idx = [X.position(o) for o in objects]
    H = X.hom.data
    return QCategory(X.base, tuple(objects), QMatrix.build(objects, objects, lambda i, j: H[idx[i]][idx[j]]))


def inclusion(X: QCategory, objects: Sequence[str]) -> QFunctor:
    sub = full_subcategory(X, objects)
    return QFunctor(sub, X, sub.objects)


def relabel(A: QCategory, mapping: Mapping[str, str]) -> QCategory:
    """Rename objects; the hom data is untouched."""
    objs = tuple(mapping[o] for o in A.objects)
    return QCategory(A.base, objs, A.hom.with_labels(objs, objs))


def coproduct(A: QCategory, B: QCategory) -> tuple[QCategory, QFunctor, QFunctor]:
    """Tagged disjoint union ("L:" then "R:") with bottom cross homs."""
    q = same_base(A, B)
    objs = tuple("L:" + a for a in A.objects) + tuple("R:" + b for b in B.objects)
    na = len(A)
    HA, HB = A.hom.data, B.hom.data

    def entry(i, j):
        if i < na and j < na:
            return HA[i][j]
        if i >= na and j >= na:
            return HB[i - na][j - na]
        return q.bottom

    S = QCategory(q, objs, QMatrix.build(objs, objs, entry))
    return S, QFunctor(A, S, objs[:na]), QFunctor(B, S, objs[na:])


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def tensor_product(A: QCategory, B: QCategory) -> QCategory:
    q = same_base(A, B)
    T = q.tensor_table
    objs = tuple(pair_id(a, b) for a in A.objects for b in B.objects)
    nb = len(B)
    HA, HB = A.hom.data, B.hom.data

    def entry(i, j):
        return T[HA[i // nb][j // nb]][HB[i % nb][j % nb]]

    return QCategory(q, objs, QMatrix.build(objs, objs, entry))


def codiagonal(A: QCategory) -> QFunctor:
    S, _, _ = coproduct(A, A)
    return QFunctor(S, A, A.objects + A.objects)
