"""Collages, coslices, sieves and pushouts along sieve inclusions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .enriched import (
    QCategory,
    QFunctor,
    full_subcategory,
    same_base,
    validate_category,
    validate_functor,
)
from .errors import OK, BoundaryError, InputError, PreconditionError, Verdict, fail
from .modules import (
    QModule,
    compare,
    compare_leq,
    compose,
    lower_star,
    upper_star,
    validate_module,
)
from .quantale import QMatrix


@dataclass(frozen=True)
class Collage:
    """The collage ``m^B`` of ``m: B -> A``.

    Objects are ``"A:" + a`` followed by ``"B:" + b``.  ``gamma_holds`` records
    the defining 2-cell ``i_* . m <= j_*``.
    """

    total: QCategory
    i: QFunctor
    j: QFunctor
    module: QModule
    gamma_holds: bool


def collage(m: QModule) -> Collage:
    v = validate_module(m)
    if not v:
        raise PreconditionError("collage needs a valid module", v.first)
    q = m.base
    A, B = m.target, m.source
    objs = tuple("A:" + a for a in A.objects) + tuple("B:" + b for b in B.objects)
    na = len(A)
    HA, HB, M = A.hom.data, B.hom.data, m.matrix.data

    def entry(x, y):
        if x < na and y < na:
            return HA[x][y]
        if x >= na and y >= na:
            return HB[x - na][y - na]
        if x < na:
            return M[x][y - na]
        return q.bottom

    total = QCategory(q, objs, QMatrix.build(objs, objs, entry))
    i = QFunctor(A, total, objs[:na])
    j = QFunctor(B, total, objs[na:])
    gamma = compare_leq("collage 2-cell", compose(lower_star(i), m), lower_star(j)).ok
    return Collage(total, i, j, m, gamma)


def check_collage(c: Collage) -> Verdict:
    """Full faithfulness of both injections and recovery ``i^* . j_* = m``."""
    T = c.total
    HT = T.hom.data
    out = validate_category(T)
    for inj, label in ((c.i, "i"), (c.j, "j")):
        H = inj.source.hom.data
        p = inj.positions
        for x in range(len(inj.source)):
            for y in range(len(inj.source)):
                if HT[p[x]][p[y]] != H[x][y]:
                    out = out + fail(f"collage: {label} fully faithful",
                                     (inj.source.objects[x], inj.source.objects[y]))
                    break
            else:
                continue
            break
    out = out + compare("collage recovery: i^* . j_* = m", compose(upper_star(c.i), lower_star(c.j)), c.module)
    if not c.gamma_holds:
        out = out + fail("collage 2-cell: i_* . m <= j_*", ())
    return out


def coslice(u: QFunctor, v: QFunctor) -> Collage:
    """Coslice of the span ``A <-u- C -v-> B``: the collage of ``u_* . v^*``."""
    if u.source != v.source:
        raise BoundaryError("coslice needs a span with a shared source")
    return collage(compose(lower_star(u), upper_star(v)))


def check_coslice(u: QFunctor, v: QFunctor, c: Collage) -> Verdict:
    """The mate ``i^* . j_* = u_* . v^*`` and the functor 2-cell ``i u => j v``."""
    out = compare("coslice mate: i^* . j_* = u_* . v^*",
                  compose(upper_star(c.i), lower_star(c.j)),
                  compose(lower_star(u), upper_star(v)))
    q = c.total.base
    for x in u.source.objects:
        top, bot = c.i(u(x)), c.j(v(x))
        if not q.leq_idx(q.unit, c.total.h(top, bot)):
            out = out + fail("coslice 2-cell: unit <= T(i u c, j v c)", (x,))
            break
    return out


def _subset(X: QCategory, objs: Iterable[str]) -> set[str]:
    s = set(objs)
    for o in s:
        X.position(o)
    return s


def sieve_witness(X: QCategory, A: Iterable[str]) -> tuple[str, str] | None:
    """First ``(x, a)`` with ``x`` outside ``A``, ``a`` in ``A`` and ``X(x, a) != 0``."""
    inside = _subset(X, A)
    bot = X.base.bottom
    for x in X.objects:
        if x in inside:
            continue
        for a in X.objects:
            if a in inside and X.h(x, a) != bot:
                return x, a
    return None


def is_sieve(X: QCategory, A: Iterable[str]) -> bool:
    return sieve_witness(X, A) is None


def is_opsieve(X: QCategory, B: Iterable[str]) -> bool:
    inside = _subset(X, B)
    bot = X.base.bottom
    return all(X.h(b, x) == bot for b in X.objects if b in inside
               for x in X.objects if x not in inside)


class SievePushout(NamedTuple):
    Q: QCategory
    k: QFunctor
    h: QFunctor


def sieve_pushout(f: QFunctor, X: QCategory, sieve: Sequence[str] | None = None) -> SievePushout:
    """Pushout of ``Y <-f- A -i-> X`` where ``i`` includes the sieve ``A``.

    ``f.source`` must be the full subcategory of ``X`` on the sieve objects
    (same ids, same order); ``sieve`` defaults to those objects.  Objects of
    the result are ``"Y:" + y`` followed by ``"X:" + x`` for x outside A.
    The hom from ``y`` to ``x`` is the coend ``V_a X(a, x) (x) Y(y, f a)``.
    """
    q = same_base(f.source, X)
    A = tuple(f.source.objects) if sieve is None else tuple(sieve)
    if tuple(f.source.objects) != A or f.source != full_subcategory(X, A):
        raise InputError("source of f must be the full subcategory of X on the sieve")
    w = sieve_witness(X, A)
    if w is not None:
        raise PreconditionError("not a sieve: nonzero hom from outside into it", w)

    Y = f.target
    inside = set(A)
    rest = [x for x in X.objects if x not in inside]
    rest_pos = [X.position(x) for x in rest]
    a_pos = [X.position(a) for a in A]
    fa = f.positions
    HX, HY = X.hom.data, Y.hom.data
    J, T = q.join_table, q.tensor_table
    ny = len(Y)
    objs = tuple("Y:" + y for y in Y.objects) + tuple("X:" + x for x in rest)

    def entry(w_, z):
        if w_ < ny and z < ny:
            return HY[w_][z]
        if w_ >= ny and z >= ny:
            return HX[rest_pos[w_ - ny]][rest_pos[z - ny]]
        if w_ < ny:
            acc = q.bottom
            zx = rest_pos[z - ny]
            for ai, ap in enumerate(a_pos):
                acc = J[acc][T[HX[ap][zx]][HY[w_][fa[ai]]]]
            return acc
        return q.bottom

    Q = QCategory(q, objs, QMatrix.build(objs, objs, entry))
    k = QFunctor(Y, Q, objs[:ny])
    img = {a: "Y:" + f(a) for a in A}
    h = QFunctor(X, Q, tuple(img.get(x, "X:" + x) for x in X.objects))
    return SievePushout(Q, k, h)


def check_sieve_pushout(f: QFunctor, X: QCategory, po: SievePushout) -> Verdict:
    """Postconditions of :func:`sieve_pushout`, including Beck-Chevalley."""
    Q, k, h = po
    A = f.source.objects
    i = QFunctor(f.source, X, A)
    out = validate_category(Q) + validate_functor(k) + validate_functor(h)
    if not is_sieve(Q, k.object_map):
        out = out + fail("pushout: k is a sieve inclusion", ())
    for a in A:
        if h(a) != k(f(a)):
            out = out + fail("pushout square commutes: h i = k f", (a,))
            break
    return out + compare("Beck-Chevalley: f_* . i^* = k^* . h_*",
                         compose(lower_star(f), upper_star(i)),
                         compose(upper_star(k), lower_star(h)))


def collage_sieve_check(c: Collage) -> Verdict:
    a_part, b_part = c.i.object_map, c.j.object_map
    out = OK
    if not is_sieve(c.total, a_part):
        out = out + fail("collage: A-part is a sieve", ())
    if not is_opsieve(c.total, b_part):
        out = out + fail("collage: B-part is an opsieve", ())
    return out
