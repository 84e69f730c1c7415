"""The Int construction over quantale-valued modules.

Objects are signed pairs ``(X, U)``; a morphism ``(X, U) -> (Y, V)`` is a
module ``X + V -> Y + U`` kept as four blocks::

    A: X -> Y    B: V -> Y
    C: X -> U    D: V -> U

Composition feeds the middle negative part back through the free monad
(Kleene star) of the loop ``B . G``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enriched import QCategory, QFunctor, coproduct, empty_category, relabel, same_base, tensor_product
from .errors import OK, BoundaryError, Verdict
from .modules import (
    QModule,
    compare,
    compose,
    compose_all,
    direct_sum,
    identity_module,
    join_modules,
    lower_star,
    zero_module,
)
from .quantale import QMatrix, Quantale, matrix_star


@dataclass(frozen=True)
class IntObject:
    pos: QCategory
    neg: QCategory

    def __post_init__(self):
        same_base(self.pos, self.neg)

    @property
    def base(self) -> Quantale:
        return self.pos.base


@dataclass(frozen=True)
class IntMorphism:
    source: IntObject
    target: IntObject
    A: QModule
    B: QModule
    C: QModule
    D: QModule

    def __post_init__(self):
        (X, U), (Y, V) = (self.source.pos, self.source.neg), (self.target.pos, self.target.neg)
        for name, blk, src, tgt in (("A", self.A, X, Y), ("B", self.B, V, Y),
                                    ("C", self.C, X, U), ("D", self.D, V, U)):
            if blk.source != src or blk.target != tgt:
                raise BoundaryError(f"block {name} has the wrong boundary")

    @property
    def blocks(self) -> tuple[QModule, QModule, QModule, QModule]:
        return self.A, self.B, self.C, self.D


def free_monad(R: QModule) -> QModule:
    """``R^o = V_n R^n`` with ``R^0`` the identity module of the carrier."""
    if R.source != R.target:
        raise BoundaryError("free monad needs an endomodule")
    U = R.source
    return QModule(U, U, matrix_star(R.base, R.matrix, U.hom))


def int_compose(S: IntMorphism, R: IntMorphism) -> IntMorphism:
    """``S . R`` for ``R: (X,U) -> (Y,V)`` and ``S: (Y,V) -> (Z,W)``."""
    if R.target != S.source:
        raise BoundaryError("Int morphisms are not composable")
    A, B, C, D = R.blocks
    E, F, G, H = S.blocks
    loop_y = free_monad(compose(B, G))
    loop_v = free_monad(compose(G, B))
    return IntMorphism(
        R.source, S.target,
        compose_all(E, loop_y, A),
        join_modules(F, compose_all(E, loop_y, B, H)),
        join_modules(C, compose_all(D, loop_v, G, A)),
        compose_all(D, loop_v, H),
    )


def int_identity(ob: IntObject) -> IntMorphism:
    X, U = ob.pos, ob.neg
    return IntMorphism(ob, ob, identity_module(X), zero_module(U, X), zero_module(X, U), identity_module(U))


def compare_int(law: str, lhs: IntMorphism, rhs: IntMorphism) -> Verdict:
    out = OK
    for name, l, r in zip("ABCD", lhs.blocks, rhs.blocks):
        out = out + compare(f"{law} [block {name}]", l, r)
        if not out:
            break
    return out


# -- monoidal structure -------------------------------------------------------

def int_unit_object(q: Quantale) -> IntObject:
    e = empty_category(q)
    return IntObject(e, e)


def int_object_tensor(ob: IntObject, ob2: IntObject) -> IntObject:
    return IntObject(coproduct(ob.pos, ob2.pos)[0], coproduct(ob.neg, ob2.neg)[0])


def int_tensor(R: IntMorphism, R2: IntMorphism) -> IntMorphism:
    """Blockwise direct sum; cross blocks are bottom so feedback never crosses."""
    return IntMorphism(
        int_object_tensor(R.source, R2.source),
        int_object_tensor(R.target, R2.target),
        *(direct_sum(a, b) for a, b in zip(R.blocks, R2.blocks)),
    )


def int_dual(ob: IntObject) -> IntObject:
    return IntObject(ob.neg, ob.pos)


def _swap(X: QCategory, U: QCategory) -> QModule:
    """``X + U -> U + X`` with identity blocks crossing over: [[0, 1_U], [1_X, 0]]."""
    XU, _, _ = coproduct(X, U)
    UX, _, _ = coproduct(U, X)
    q = X.base
    nu, nx = len(U), len(X)
    HX, HU = X.hom.data, U.hom.data

    def entry(r, c):
        if r < nu and c >= nx:
            return HU[r][c - nx]
        if r >= nu and c < nx:
            return HX[r - nu][c]
        return q.bottom

    return QModule(XU, UX, QMatrix.build(UX.objects, XU.objects, entry))


def int_counit(ob: IntObject) -> IntMorphism:
    """``(X,U) [+] (U,X) -> (0,0)``: the only nonzero block is the swap ``X+U -> U+X``."""
    src = int_object_tensor(ob, int_dual(ob))
    unit = int_unit_object(ob.base)
    P, N = src.pos, src.neg
    e = unit.pos
    return IntMorphism(src, unit, zero_module(P, e), zero_module(e, e), _swap(ob.pos, ob.neg), zero_module(e, N))


def int_unit(ob: IntObject) -> IntMorphism:
    """``(0,0) -> (U,X) [+] (X,U)``: the mirror of the counit, swap in block B."""
    tgt = int_object_tensor(int_dual(ob), ob)
    unit = int_unit_object(ob.base)
    Y, V = tgt.pos, tgt.neg
    e = unit.pos
    return IntMorphism(unit, tgt, zero_module(e, Y), _swap(ob.pos, ob.neg), zero_module(e, e), zero_module(V, e))


def int_relabel(src: IntObject, pos_map: dict, neg_map: dict) -> IntMorphism:
    """Invertible morphism renaming the objects of both components."""
    X2, U2 = relabel(src.pos, pos_map), relabel(src.neg, neg_map)
    tgt = IntObject(X2, U2)
    fwd = QFunctor(src.pos, X2, X2.objects)
    back = QFunctor(U2, src.neg, src.neg.objects)
    return IntMorphism(src, tgt, lower_star(fwd), zero_module(U2, X2), zero_module(src.pos, src.neg),
                       lower_star(back))


def _assoc_maps(objs_a, objs_b, objs_c) -> dict:
    """(a [+] b) [+] c  ->  a [+] (b [+] c) on tagged object ids."""
    m = {}
    m.update({"L:L:" + x: "L:" + x for x in objs_a})
    m.update({"L:R:" + x: "R:L:" + x for x in objs_b})
    m.update({"R:" + x: "R:R:" + x for x in objs_c})
    return m


def associator(a: IntObject, b: IntObject, c: IntObject) -> IntMorphism:
    src = int_object_tensor(int_object_tensor(a, b), c)
    return int_relabel(src, _assoc_maps(a.pos.objects, b.pos.objects, c.pos.objects),
                       _assoc_maps(a.neg.objects, b.neg.objects, c.neg.objects))


def associator_inverse(a: IntObject, b: IntObject, c: IntObject) -> IntMorphism:
    src = int_object_tensor(a, int_object_tensor(b, c))
    inv = lambda d: {v: k for k, v in d.items()}  # noqa: E731
    return int_relabel(src, inv(_assoc_maps(a.pos.objects, b.pos.objects, c.pos.objects)),
                       inv(_assoc_maps(a.neg.objects, b.neg.objects, c.neg.objects)))


def _strip(prefix: str, objs) -> dict:
    return {prefix + x: x for x in objs}


def _add(prefix: str, objs) -> dict:
    return {x: prefix + x for x in objs}


def check_snake(ob: IntObject) -> Verdict:
    """Both zig-zag identities for the counit/unit pair of ``ob`` and its dual,
    with associators and unitors written out as relabelings."""
    I = int_unit_object(ob.base)
    d = int_dual(ob)
    eps, eta = int_counit(ob), int_unit(ob)

    # ob ~ ob [+] I -> ob [+] (ob* [+] ob) ~ (ob [+] ob*) [+] ob -> I [+] ob ~ ob
    r_inv = int_relabel(ob, _add("L:", ob.pos.objects), _add("L:", ob.neg.objects))
    zig = [
        r_inv,
        int_tensor(int_identity(ob), eta),
        associator_inverse(ob, d, ob),
        int_tensor(eps, int_identity(ob)),
        int_relabel(int_object_tensor(I, ob), _strip("R:", ob.pos.objects), _strip("R:", ob.neg.objects)),
    ]
    # ob* ~ I [+] ob* -> (ob* [+] ob) [+] ob* ~ ob* [+] (ob [+] ob*) -> ob* [+] I ~ ob*
    l_inv = int_relabel(d, _add("R:", d.pos.objects), _add("R:", d.neg.objects))
    zag = [
        l_inv,
        int_tensor(eta, int_identity(d)),
        associator(d, ob, d),
        int_tensor(int_identity(d), eps),
        int_relabel(int_object_tensor(d, I), _strip("L:", d.pos.objects), _strip("L:", d.neg.objects)),
    ]
    return (compare_int("snake: (eps [+] 1) . (1 [+] eta) = 1", _chain(zig), int_identity(ob))
            + compare_int("snake: (1 [+] eps) . (eta [+] 1) = 1", _chain(zag), int_identity(d)))


def _chain(steps: list[IntMorphism]) -> IntMorphism:
    out = steps[0]
    for s in steps[1:]:
        out = int_compose(s, out)
    return out


def boxtimes_objects(ob: IntObject, ob2: IntObject) -> IntObject:
    """``(X (x) X' + U (x) U', X (x) U' + U (x) X')``."""
    X, U, X2, U2 = ob.pos, ob.neg, ob2.pos, ob2.neg
    return IntObject(coproduct(tensor_product(X, X2), tensor_product(U, U2))[0],
                     coproduct(tensor_product(X, U2), tensor_product(U, X2))[0])


def include(X: QCategory) -> IntObject:
    return IntObject(X, empty_category(X.base))


def include_morphism(m: QModule) -> IntMorphism:
    e = empty_category(m.base)
    src, tgt = include(m.source), include(m.target)
    return IntMorphism(src, tgt, m, zero_module(e, m.target), zero_module(m.source, e), zero_module(e, e))


# -- the feedback identities ---------------------------------------------------

def _join(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = join_modules(out, m)
    return out


def lemma_clause(clause: str, R: QModule, S: QModule) -> Verdict:
    """One of the six free-monad identities, as an entrywise equality.

    ``rotate`` and ``slide`` take ``R: U -> V`` and ``S: V -> U``; the others
    take endomodules ``R, S`` on ``U``.
    """
    star = free_monad
    if clause == "sum":
        return compare("(R v S)^o = (R^o . S)^o . R^o",
                       star(join_modules(R, S)), compose(star(compose(star(R), S)), star(R)))
    if clause == "rotate":
        V = R.target
        return compare("(R . S)^o = 1_V v R . (S . R)^o . S",
                       star(compose(R, S)), _join(identity_module(V), compose_all(R, star(compose(S, R)), S)))
    if clause == "unfold":
        return compare("R^o = 1_U v R . R^o", star(R), _join(identity_module(R.source), compose(R, star(R))))
    if clause == "commute":
        return compare("R^o . R = R . R^o", compose(star(R), R), compose(R, star(R)))
    if clause == "slide":
        return compare("(R . S)^o . R = R . (S . R)^o",
                       compose(star(compose(R, S)), R), compose(R, star(compose(S, R))))
    if clause == "zero":
        U = R.source
        return compare("0^o = 1_U", star(zero_module(U, U)), identity_module(U))
    raise ValueError(f"unknown clause {clause!r}")


FEEDBACK_LAWS = ("sum", "rotate", "unfold", "commute", "slide", "zero")
