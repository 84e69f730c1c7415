"""Homodularity of base-change pseudofunctors and their extension to modules.

The pseudofunctor under test is always ``T = (-)_* . base_change(h)`` for a
quantale homomorphism ``h``: it sends a Q-functor ``f`` to the module
``(h f)_*`` over the target quantale.  Every clause is decided by comparing
two module composites entrywise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .collage import SievePushout, collage, is_opsieve, is_sieve, sieve_pushout
from .enriched import QCategory, QFunctor, coproduct, full_subcategory, inclusion
from .errors import OK, BoundaryError, InputError, PreconditionError, Verdict, Violation, fail
from .modules import (
    QModule,
    check_adjunction,
    compare,
    compose,
    direct_sum,
    join_modules,
    lower_star,
    module_tensor,
    upper_star,
)
from .quantale import Quantale, builtin_quantale, mat_map


@dataclass(frozen=True)
class QuantaleHom:
    source: Quantale
    target: Quantale
    table: tuple[int, ...]
    name: str = ""

    @classmethod
    def from_ids(cls, source: Quantale, target: Quantale, mapping: dict, name: str = "") -> QuantaleHom:
        try:
            table = tuple(target.index(str(mapping[x])) for x in source.elements)
        except KeyError as e:
            raise InputError(f"homomorphism does not map element {e.args[0]!r}") from None
        return cls(source, target, table, name)

    def __call__(self, x: str) -> str:
        return self.target.elements[self.table[self.source.index(x)]]


def validate_hom(h: QuantaleHom) -> Verdict:
    """Exhaustive check that ``h`` preserves bottom, binary joins, tensor and unit."""
    s, t, f = h.source, h.target, h.table
    E = s.elements
    out = []
    if f[s.bottom] != t.bottom:
        out.append(Violation("hom preserves bottom", ()))
    if f[s.unit] != t.unit:
        out.append(Violation("hom preserves unit", ()))
    for x, y in product(range(len(E)), repeat=2):
        if f[s.join_table[x][y]] != t.join_table[f[x]][f[y]]:
            out.append(Violation("hom preserves joins", (E[x], E[y])))
            break
    for x, y in product(range(len(E)), repeat=2):
        if f[s.tensor_table[x][y]] != t.tensor_table[f[x]][f[y]]:
            out.append(Violation("hom preserves tensor", (E[x], E[y])))
            break
    return Verdict(tuple(out)) if out else OK


_HOM = re.compile(r"^(?:id:(.+)|bool>chain:(\d+)|chain:(\d+)>bool|minplus:(\d+)>minplus:(\d+))$")

BUILTIN_HOMS = ("id:bool", "bool>chain:3", "chain:3>bool", "minplus:6>minplus:3")


def builtin_hom(name: str) -> QuantaleHom:
    """Named homomorphisms: ``id:<q>``, ``bool>chain:k`` (inclusion at the ends),
    ``chain:k>bool`` (collapse everything above 0), ``minplus:N>minplus:M``
    (clamp distances at M).  Each is validated on construction."""
    m = _HOM.match(name)
    if not m:
        raise InputError(f"unknown built-in homomorphism {name!r}")
    ident, up_k, down_k, big, small = m.groups()
    if ident is not None:
        q = builtin_quantale(ident)
        h = QuantaleHom(q, q, tuple(range(len(q))), name)
    elif up_k is not None:
        t = builtin_quantale(f"chain:{up_k}")
        h = QuantaleHom(builtin_quantale("bool"), t, (0, len(t) - 1), name)
    elif down_k is not None:
        s = builtin_quantale(f"chain:{down_k}")
        h = QuantaleHom(s, builtin_quantale("bool"), tuple(0 if i == 0 else 1 for i in range(len(s))), name)
    else:
        n, k = int(big), int(small)
        if k >= n:
            raise InputError("minplus coarsening needs a smaller target cap")
        s, t = builtin_quantale(f"minplus:{n}"), builtin_quantale(f"minplus:{k}")
        h = QuantaleHom(s, t, tuple(min(v, k) for v in range(n + 1)) + (k + 1,), name)
    v = validate_hom(h)
    if not v:
        raise InputError(f"built-in homomorphism {name!r} fails: {v}")
    return h


# -- base change --------------------------------------------------------------

def apply_base_change(h: QuantaleHom, x):
    """Map every hom/entry of a category, functor or module through ``h``."""
    if isinstance(x, QCategory):
        if x.base != h.source:
            raise BoundaryError("category is not over the homomorphism's source")
        return QCategory(h.target, x.objects, mat_map(x.hom, h.table))
    if isinstance(x, QFunctor):
        return QFunctor(apply_base_change(h, x.source), apply_base_change(h, x.target), x.object_map)
    if isinstance(x, QModule):
        return QModule(apply_base_change(h, x.source), apply_base_change(h, x.target),
                       mat_map(x.matrix, h.table))
    raise TypeError(f"cannot change base of {type(x).__name__}")


def check_H1(h: QuantaleHom, X: QCategory, sieve: Sequence[str]) -> Verdict:
    """The image of a sieve inclusion has a right adjoint in the target Q-Mod."""
    if not is_sieve(X, sieve):
        raise PreconditionError("H1 needs a sieve", tuple(sieve))
    Ti = apply_base_change(h, inclusion(X, sieve))
    return check_adjunction(lower_star(Ti), upper_star(Ti))


@dataclass(frozen=True)
class PushoutSquare:
    """``A -i-> X`` a sieve inclusion, ``A -j-> Y`` an opsieve inclusion,
    and the pushout ``(Q, k, h)`` of the span."""

    i: QFunctor
    j: QFunctor
    pushout: SievePushout

    @classmethod
    def from_span(cls, i: QFunctor, j: QFunctor) -> PushoutSquare:
        return cls(i, j, sieve_pushout(j, i.target))


def validate_square(sq: PushoutSquare) -> Verdict:
    Q, k, h = sq.pushout
    out = OK
    if sq.i.source != sq.j.source:
        raise InputError("square legs do not share a source")
    if not is_sieve(sq.i.target, sq.i.object_map):
        out = out + fail("square: i is a sieve inclusion", ())
    if not is_opsieve(sq.j.target, sq.j.object_map):
        out = out + fail("square: j is an opsieve inclusion", ())
    for a in sq.i.source.objects:
        if h(sq.i(a)) != k(sq.j(a)):
            out = out + fail("square commutes: h i = k j", (a,))
            break
    return out


def check_H2(h: QuantaleHom, sq: PushoutSquare) -> Verdict:
    """The mate ``Tj . Ti^* => Tk^* . Th`` is invertible, i.e. the two
    composites agree entrywise."""
    _, k, hh = sq.pushout
    Ti, Tj, Tk, Th = (apply_base_change(h, g) for g in (sq.i, sq.j, k, hh))
    return compare("H2: Tj_* . Ti^* = Tk^* . Th_*",
                   compose(lower_star(Tj), upper_star(Ti)),
                   compose(upper_star(Tk), lower_star(Th)))


# -- extension to modules -------------------------------------------------------

def extend(h: QuantaleHom, m: QModule) -> QModule:
    """``(T i_m)^* . (T j_m)_*`` computed through the collage of ``m``."""
    c = collage(m)
    Ti = apply_base_change(h, c.i)
    Tj = apply_base_change(h, c.j)
    return compose(upper_star(Ti), lower_star(Tj))


def extend_closed_form(h: QuantaleHom, m: QModule) -> QModule:
    return apply_base_change(h, m)


def check_extension_monoidal(h: QuantaleHom, m: QModule, n: QModule) -> Verdict:
    return compare("extension is monoidal: T(m (x) n) = Tm (x) Tn",
                   extend(h, module_tensor(m, n)),
                   module_tensor(extend(h, m), extend(h, n)))


def check_extension_coproducts(h: QuantaleHom, m: QModule, n: QModule) -> Verdict:
    """Coproducts of objects (block structure over ``A + B``) and of parallel
    modules (entrywise join) are preserved by the extension."""
    if (m.source, m.target) != (n.source, n.target):
        raise BoundaryError("coproduct check needs parallel modules")
    A, B = m.target, m.source
    TA, TB = apply_base_change(h, A), apply_base_change(h, B)
    S, i0, j0 = coproduct(A, B)
    TS, Ti0, Tj0 = coproduct(TA, TB)
    out = OK
    if apply_base_change(h, S) != TS:
        out = out + fail("extension preserves coproduct objects: T(A+B) = TA+TB", ())
    out = out + compare("extension preserves injections: T(in1)_* = (T in1)_*",
                        extend(h, lower_star(i0)), lower_star(Ti0))
    out = out + compare("extension preserves injections: T(in2)_* = (T in2)_*",
                        extend(h, lower_star(j0)), lower_star(Tj0))
    out = out + compare("extension preserves direct sums blockwise",
                        extend(h, direct_sum(m, n)), direct_sum(extend(h, m), extend(h, n)))
    return out + compare("extension preserves joins: T(m v n) = Tm v Tn",
                         extend(h, join_modules(m, n)),
                         join_modules(extend(h, m), extend(h, n)))


def square_from_modules(m: QModule, n: QModule) -> PushoutSquare:
    """A sieve/opsieve span built from ``m: B -> A`` and ``n: A -> C``.

    ``A`` is a sieve in the collage of ``m`` and an opsieve in the collage
    of ``n``; the square is their pushout.
    """
    cm, cn = collage(m), collage(n)
    X = cm.total
    a_ids = cm.i.object_map
    A_sub = full_subcategory(X, a_ids)
    i = QFunctor(A_sub, X, a_ids)
    j = QFunctor(A_sub, cn.total, cn.j.object_map)
    return PushoutSquare.from_span(i, j)
