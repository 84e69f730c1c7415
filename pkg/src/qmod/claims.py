"""Checkable claims inside a document.

A claim is a JSON object with an optional ``"law"`` label and one of the keys

* ``"equal": [e1, e2]``: two module expressions agree entrywise;
* ``"leq": [e1, e2]``: entrywise order (a 2-cell exists);
* ``"adjoint": [e1, e2]``: ``e1 -| e2`` by unit and counit inequalities;
* ``"sieve"`` / ``"opsieve"``: ``{"category": name, "objects": [...]}``;
* ``"int_equal": [e1, e2]``: two Int expressions agree blockwise;
* ``"set_adjunction": name``: elementwise triangle identities for a set functor;
  ``"counit": "swapped"`` evaluates them against the reversed composite.

Module expressions::

    e ::= name | compose(e, e, ...) | join(e, e) | star(e) | id(C) | zero(C, C)
        | lower(F) | upper(F) | base(h, e) | extend(h, e) | tensor(e, e)

where ``base`` also accepts a functor or category, so ``lower(base(h, f))``
reads as ``(T f)_*``.  Int expressions::

    e ::= name | compose(e, e) | id(P) | tensor(e, e) | counit(P) | unit(P) | include(m)
"""

from __future__ import annotations

import re
from functools import reduce

from .collage import is_opsieve, sieve_witness
from .enriched import QCategory, QFunctor
from .errors import InputError, Verdict, fail
from .homodular import QuantaleHom, apply_base_change, builtin_hom, extend
from .intcon import (
    IntMorphism,
    IntObject,
    compare_int,
    include_morphism,
    int_compose,
    int_counit,
    int_identity,
    int_tensor,
    int_unit,
)
from .modules import (
    QModule,
    check_adjunction,
    compare,
    compare_leq,
    compose,
    identity_module,
    join_modules,
    lower_star,
    module_tensor,
    upper_star,
    zero_module,
)
from .quantale import matrix_star
from .setmod import set_check_adjunction

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_:>.@*+\-]+)|(.))")


def parse_expr(text: str):
    """``name`` or ``(head, [args])``."""
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            toks.append(("name", m.group(1)))
        elif m.group(2) and not m.group(2).isspace():
            toks.append(("sym", m.group(2)))
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise InputError(f"unexpected end of expression {text!r}")
        pos += 1
        return toks[pos - 1]

    def expr():
        kind, val = take()
        if kind != "name":
            raise InputError(f"expected a name in {text!r}, got {val!r}")
        if pos < len(toks) and toks[pos] == ("sym", "("):
            take()
            args = [expr()]
            while toks[pos:pos + 1] == [("sym", ",")]:
                take()
                args.append(expr())
            if take() != ("sym", ")"):
                raise InputError(f"expected ')' in {text!r}")
            return (val, args)
        return val

    tree = expr()
    if pos != len(toks):
        raise InputError(f"trailing input in expression {text!r}")
    return tree


class _Env:
    def __init__(self, doc):
        self.doc = doc

    def name(self, n: str):
        return self.doc.lookup(n)

    def hom(self, node) -> QuantaleHom:
        if isinstance(node, str):
            if node in self.doc.homs:
                return self.doc.homs[node]
            return builtin_hom(node)
        raise InputError("expected a homomorphism name")

    def module(self, node):
        v = self.any(node)
        if not isinstance(v, QModule):
            raise InputError(f"expected a module, got {type(v).__name__}")
        return v

    def any(self, node):
        if isinstance(node, str):
            return self.name(node)
        head, args = node
        if head == "base":
            return apply_base_change(self.hom(args[0]), self.any(args[1]))
        if head == "extend":
            return extend(self.hom(args[0]), self.module(args[1]))
        vals = [self.any(a) for a in args]
        if head == "compose":
            return reduce(compose, vals)
        if head == "join":
            return reduce(join_modules, vals)
        if head == "tensor":
            return reduce(module_tensor, vals)
        if head == "star":
            (m,) = vals
            if m.source != m.target:
                raise InputError("star needs an endomodule")
            return QModule(m.source, m.target, matrix_star(m.base, m.matrix, m.source.hom))
        if head == "id":
            (c,) = vals
            return identity_module(_category(c))
        if head == "zero":
            s, t = vals
            return zero_module(_category(s), _category(t))
        if head in ("lower", "upper"):
            (f,) = vals
            if not isinstance(f, QFunctor):
                raise InputError(f"{head} needs a functor")
            return lower_star(f) if head == "lower" else upper_star(f)
        raise InputError(f"unknown operation {head!r}")

    def int_expr(self, node) -> IntMorphism:
        if isinstance(node, str):
            v = self.name(node)
            if not isinstance(v, IntMorphism):
                raise InputError(f"{node!r} is not an Int morphism")
            return v
        head, args = node
        if head == "compose":
            return reduce(int_compose, [self.int_expr(a) for a in args])
        if head == "tensor":
            return reduce(int_tensor, [self.int_expr(a) for a in args])
        if head in ("id", "counit", "unit"):
            ob = self.name(args[0]) if isinstance(args[0], str) else None
            if not isinstance(ob, IntObject):
                raise InputError(f"{head} needs an Int object name")
            return {"id": int_identity, "counit": int_counit, "unit": int_unit}[head](ob)
        if head == "include":
            return include_morphism(self.module(args[0]))
        raise InputError(f"unknown Int operation {head!r}")


def _category(c) -> QCategory:
    if not isinstance(c, QCategory):
        raise InputError(f"expected a category, got {type(c).__name__}")
    return c


def check_claim(doc, claim: dict) -> tuple[str, Verdict]:
    """Evaluate one claim; raises :class:`InputError` if it does not resolve."""
    env = _Env(doc)
    kinds = [k for k in ("equal", "leq", "adjoint", "sieve", "opsieve", "int_equal", "set_adjunction")
             if k in claim]
    if len(kinds) != 1:
        raise InputError(f"claim must have exactly one kind, got {sorted(claim)!r}")
    kind = kinds[0]
    body = claim[kind]
    law = claim.get("law", kind)
    if kind in ("equal", "leq", "adjoint", "int_equal"):
        if not (isinstance(body, list) and len(body) == 2):
            raise InputError(f"{kind} claim needs two expressions")
        lhs_t, rhs_t = (parse_expr(str(e)) for e in body)
        if kind == "int_equal":
            return law, compare_int(law, env.int_expr(lhs_t), env.int_expr(rhs_t))
        lhs, rhs = env.module(lhs_t), env.module(rhs_t)
        if kind == "equal":
            if (lhs.source, lhs.target) != (rhs.source, rhs.target):
                return law, fail(law, (body[0], body[1]), "boundaries differ")
            return law, compare(law, lhs, rhs)
        if kind == "leq":
            return law, compare_leq(law, lhs, rhs)
        v = check_adjunction(lhs, rhs)
        return law, v if v else fail(law, v.first.witness, f"{v.first.law} {v.first.detail}".strip())
    if kind in ("sieve", "opsieve"):
        X = _category(env.name(body["category"]))
        objs = [str(o) for o in body["objects"]]
        if kind == "sieve":
            w = sieve_witness(X, objs)
            return law, fail(law, w, "nonzero hom into the subset") if w else Verdict()
        return law, Verdict() if is_opsieve(X, objs) else fail(law, tuple(objs), "nonzero hom out of the subset")
    F = doc.set_functors.get(body)
    if F is None:
        raise InputError(f"unknown set functor {body!r}")
    counit = claim.get("counit", "composition")
    if counit == "composition":
        v = set_check_adjunction(F)
    elif counit == "swapped":
        v = set_check_adjunction(F, lambda A, y, x: A.compose(x, y))
    else:
        raise InputError(f"unknown counit {counit!r}")
    return law, v


def check_claims(doc) -> list[tuple[str, Verdict]]:
    return [check_claim(doc, c) for c in doc.claims]

