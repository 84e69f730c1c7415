"""Seeded property suites, one per law family and parameter.

Case ``k`` of suite ``s`` with seed ``n`` draws from
``random.Random(f"{s}:{n}:{k}")``, so any case can be replayed alone and the
result does not depend on evaluation order.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import generators as G
from .collage import (
    check_collage,
    check_coslice,
    check_sieve_pushout,
    collage,
    collage_sieve_check,
    coslice,
    sieve_pushout,
)
from .enriched import (
    QFunctor,
    codiagonal,
    compose_functors,
    coproduct,
    full_subcategory,
    identity_functor,
    relabel,
    tensor_product,
    validate_category,
    validate_functor,
)
from .errors import OK, Verdict, fail
from .homodular import (
    BUILTIN_HOMS,
    apply_base_change,
    builtin_hom,
    check_extension_coproducts,
    check_extension_monoidal,
    check_H1,
    check_H2,
    extend,
    extend_closed_form,
    validate_square,
)
from .intcon import (
    FEEDBACK_LAWS,
    boxtimes_objects,
    check_snake,
    compare_int,
    include,
    include_morphism,
    int_compose,
    int_identity,
    int_tensor,
    lemma_clause,
)
from .modules import (
    QModule,
    check_adjunction,
    compare,
    compare_leq,
    compose,
    direct_sum_check,
    identity_module,
    join_modules,
    lower_star,
    upper_star,
    validate_module,
)
from .oracles import equivalence_classes, floyd_warshall_capped, warshall
from .quantale import QMatrix, builtin_quantale, identity_matrix, matrix_star, validate_quantale
from .setmod import (
    check_set_collage,
    coend_triples,
    set_associator_check,
    set_check_adjunction,
    set_compose,
    set_lower_star,
    set_upper_star,
    support_module,
    validate_setmodule,
)

QUANTALES = ("bool", "chain:3", "minplus:6", "diamond")
INT_QUANTALES = ("bool", "minplus:6")
LAW_QUANTALES = ("bool", "chain:3", "chain:5", "minplus:6", "diamond")


@dataclass
class Report:
    suite: str
    anchor: str
    cases: int
    passed: int
    counterexample: dict | None
    seed: int
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.passed == self.cases

    def as_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        s = f"{status} {self.suite}  [{self.anchor}]  {self.passed}/{self.cases}  seed={self.seed}  {self.elapsed:.2f}s"
        if self.counterexample:
            c = self.counterexample
            s += f"\n    first counterexample (case {c['case']}): {c['law']} at {c['witness']}"
            if c.get("detail"):
                s += f"\n    {c['detail']}"
            for k, v in c.get("inputs", {}).items():
                s += f"\n    {k} = {v}"
        return s


CaseFn = Callable[[random.Random, object, int, dict], Verdict]


@dataclass(frozen=True)
class Suite:
    name: str
    anchor: str
    family: str
    fn: CaseFn
    param: object = None
    fixed_cases: int | None = None  # exhaustive suites ignore --cases
    max_objects: int | None = None  # size cap overriding --max-objects
    extra: dict = field(default_factory=dict)


def _render(x) -> object:
    if isinstance(x, QModule):
        return {"rows": list(x.matrix.rows), "cols": list(x.matrix.cols), "entries": x.matrix.as_ids(x.base)}
    if hasattr(x, "objects") and hasattr(x, "hom"):
        return {"objects": list(x.objects), "hom": x.hom.as_ids(x.base)}
    if isinstance(x, QFunctor):
        return dict(zip(x.source.objects, x.object_map))
    return repr(x)


def run_suite(s: Suite, seed: int = 0, cases: int = 300, max_objects: int = 4) -> Report:
    n = s.fixed_cases if s.fixed_cases is not None else cases
    size = min(max_objects, s.max_objects) if s.max_objects else max_objects
    passed, first = 0, None
    t0 = time.perf_counter()
    for k in range(n):
        rng = random.Random(f"{s.name}:{seed}:{k}")
        ctx: dict = {}
        v = s.fn(rng, s.param, size, ctx)
        if v:
            passed += 1
        elif first is None:
            w = v.first
            first = {"case": k, "law": w.law, "witness": list(w.witness), "detail": w.detail,
                     "inputs": {key: _render(val) for key, val in ctx.items()}}
    return Report(s.name, s.anchor, n, passed, first, seed, time.perf_counter() - t0)


# -- case functions ---------------------------------------------------------------

def _q(name):
    return builtin_quantale(name)


def case_quantale_laws(rng, name, size, ctx):
    return validate_quantale(_q(name))


def case_star_bool(rng, _, size, ctx):
    q = _q("bool")
    n = rng.randint(1, 8)
    adj = [[1 if rng.random() < rng.choice((0.15, 0.3, 0.5)) else 0 for _ in range(n)] for _ in range(n)]
    objs = tuple(f"n{i}" for i in range(n))
    M = QMatrix(objs, objs, tuple(tuple(r) for r in adj))
    S = matrix_star(q, M, identity_matrix(q, objs))
    ctx["adjacency"] = adj
    expected = warshall(adj)
    got = [list(r) for r in S.data]
    if got != expected:
        return fail("star = Warshall closure", (), f"star {got} vs oracle {expected}")
    return OK


def case_star_minplus(rng, _, size, ctx):
    cap = 6
    q = _q(f"minplus:{cap}")
    n = rng.randint(1, 6)
    w = [[rng.randint(0, cap) if rng.random() < 0.4 else math.inf for _ in range(n)] for _ in range(n)]
    objs = tuple(f"n{i}" for i in range(n))
    idx = lambda v: cap + 1 if v == math.inf else v  # noqa: E731
    M = QMatrix(objs, objs, tuple(tuple(idx(v) for v in r) for r in w))
    S = matrix_star(q, M, identity_matrix(q, objs))
    ctx["weights"] = w
    expected = [[idx(v) for v in r] for r in floyd_warshall_capped(w, cap)]
    got = [list(r) for r in S.data]
    if got != expected:
        return fail("star = capped Floyd-Warshall", (), f"star {got} vs oracle {expected}")
    return OK


def _triple(rng, q, size):
    A, B, C, D = (G.random_category(rng, q, size, prefix=p) for p in "abcd")
    return G.random_module(rng, B, A), G.random_module(rng, C, B), G.random_module(rng, D, C)


def case_assoc(rng, name, size, ctx):
    m, n, p = _triple(rng, _q(name), size)
    ctx.update(m=m, n=n, p=p)
    return compare("associativity: (m.n).p = m.(n.p)", compose(compose(m, n), p), compose(m, compose(n, p)))


def case_unit(rng, name, size, ctx):
    q = _q(name)
    A, B = G.random_category(rng, q, size, prefix="a"), G.random_category(rng, q, size, prefix="b")
    m = G.random_module(rng, B, A)
    ctx.update(m=m)
    return (compare("left unit: 1_A . m = m", compose(identity_module(A), m), m)
            + compare("right unit: m . 1_B = m", compose(m, identity_module(B)), m))


def case_monotone(rng, name, size, ctx):
    q = _q(name)
    A, B, C = (G.random_category(rng, q, size, prefix=p) for p in "abc")
    m = G.random_module(rng, B, A)
    m2 = join_modules(m, G.random_module(rng, B, A))
    n = G.random_module(rng, C, B)
    k = G.random_module(rng, A, C)
    ctx.update(m=m, m2=m2, n=n, k=k)
    return (compare_leq("monotone in the left argument", compose(m, n), compose(m2, n))
            + compare_leq("monotone in the right argument", compose(k, m), compose(k, m2)))


def case_joins(rng, name, size, ctx):
    q = _q(name)
    A, B, C = (G.random_category(rng, q, size, prefix=p) for p in "abc")
    m, m2 = G.random_module(rng, B, A), G.random_module(rng, B, A)
    n, n2 = G.random_module(rng, C, B), G.random_module(rng, C, B)
    ctx.update(m=m, m2=m2, n=n, n2=n2)
    return (compare("(m v m').n = m.n v m'.n", compose(join_modules(m, m2), n),
                    join_modules(compose(m, n), compose(m2, n)))
            + compare("m.(n v n') = m.n v m.n'", compose(m, join_modules(n, n2)),
                      join_modules(compose(m, n), compose(m, n2))))


def case_adjunction(rng, name, size, ctx):
    q = _q(name)
    A = G.random_category(rng, q, size, prefix="a")
    f = G.random_functor(rng, A, size)
    ctx.update(f=f, A=A)
    return validate_functor(f) + check_adjunction(lower_star(f), upper_star(f))


def case_pseudofunctor(rng, name, size, ctx):
    g, f = G.random_composable_functors(rng, _q(name), size)
    gf = compose_functors(g, f)
    ctx.update(g=g, f=f)
    return (compare("(g f)_* = g_* . f_*", lower_star(gf), compose(lower_star(g), lower_star(f)))
            + compare("(g f)^* = f^* . g^*", upper_star(gf), compose(upper_star(f), upper_star(g))))


def case_direct_sum(rng, name, size, ctx):
    q = _q(name)
    A = G.random_category(rng, q, size, 0, prefix="a")
    B = G.random_category(rng, q, size, 0, prefix="b")
    ctx.update(A=A, B=B)
    return direct_sum_check(A, B)


def case_constructions(rng, name, size, ctx):
    q = _q(name)
    A = G.random_category(rng, q, size, 0, prefix="a")
    A2 = G.random_category(rng, q, size, 0, prefix="x")
    ctx.update(A=A, A2=A2)
    S, i0, j0 = coproduct(A, A2)
    out = validate_category(S) + validate_functor(i0) + validate_functor(j0)
    out = out + validate_category(tensor_product(A, A2))
    nab = codiagonal(A)
    out = out + validate_functor(nab)
    if compose_functors(nab, coproduct(A, A)[1]) != identity_functor(A):
        out = out + fail("codiagonal after first injection is the identity", ())
    return out


def case_collage(rng, name, size, ctx):
    q = _q(name)
    A, B = G.random_category(rng, q, size, prefix="a"), G.random_category(rng, q, size, prefix="b")
    m = G.random_module(rng, B, A)
    ctx.update(m=m)
    c = collage(m)
    out = validate_module(m) + check_collage(c) + collage_sieve_check(c)
    z = collage(QModule(B, A, QMatrix.constant(A.objects, B.objects, q.bottom)))
    S = coproduct(A, B)[0]
    tags = {("L:" + a): "A:" + a for a in A.objects}
    tags.update({("R:" + b): "B:" + b for b in B.objects})
    if z.total != relabel(S, tags):
        out = out + fail("collage of the zero module = coproduct", ())
    return out


def case_coslice(rng, name, size, ctx):
    q = _q(name)
    A = G.random_category(rng, q, size, prefix="a")
    u = G.random_functor(rng, A, size, prefix="c")
    v = G.random_extension(rng, u.source, prefix="e")
    ctx.update(u=u, v=v)
    c = coslice(u, v)
    return check_collage(c) + check_coslice(u, v, c)


def case_sieve_pushout(rng, name, size, ctx):
    q = _q(name)
    if rng.random() < 0.5:
        sq = G.random_square(rng, q, size)
        f, X = sq.j, sq.i.target
    else:
        Am = G.random_category(rng, q, size, prefix="a")
        Bm = G.random_category(rng, q, size, prefix="b")
        c = collage(G.random_module(rng, Bm, Am))
        X = c.total
        f = G.random_extension(rng, full_subcategory(X, c.i.object_map), prefix="y")
    ctx.update(f=f, X=X)
    po = sieve_pushout(f, X)
    return check_sieve_pushout(f, X, po)


def case_H1(rng, hname, size, ctx):
    h = builtin_hom(hname)
    X, sieve = G.random_sieve(rng, h.source, size)
    ctx.update(X=X, sieve=list(sieve))
    return check_H1(h, X, sieve)


def case_H2(rng, hname, size, ctx):
    h = builtin_hom(hname)
    sq = G.random_square(rng, h.source, size)
    ctx.update(i=sq.i, j=sq.j)
    return validate_square(sq) + check_H2(h, sq)


def _closed(h, m, out):
    return out + compare("extend = entrywise base change", extend(h, m), extend_closed_form(h, m))


def case_extend_lower(rng, hname, size, ctx):
    h = builtin_hom(hname)
    A = G.random_category(rng, h.source, size, prefix="a")
    f = G.random_functor(rng, A, size)
    ctx.update(f=f)
    out = compare("extension on functors: T(f_*) = (T f)_*", extend(h, lower_star(f)),
                  lower_star(apply_base_change(h, f)))
    return _closed(h, lower_star(f), out)


def case_extend_compose(rng, hname, size, ctx):
    h = builtin_hom(hname)
    A, B, C = (G.random_category(rng, h.source, size, prefix=p) for p in "abc")
    m, n = G.random_module(rng, B, A), G.random_module(rng, C, B)
    ctx.update(m=m, n=n)
    out = compare("extension preserves composition: T(m.n) = Tm.Tn", extend(h, compose(m, n)),
                  compose(extend(h, m), extend(h, n)))
    out = out + compare("extension preserves identities", extend(h, identity_module(A)),
                        identity_module(apply_base_change(h, A)))
    return _closed(h, m, out)


def case_extend_monoidal(rng, hname, size, ctx):
    h = builtin_hom(hname)
    s = max(1, min(size, 3))
    A, B, A2, B2 = (G.random_category(rng, h.source, s, prefix=p) for p in ("a", "b", "x", "y"))
    m, m2 = G.random_module(rng, B, A), G.random_module(rng, B2, A2)
    ctx.update(m=m, m2=m2)
    return _closed(h, m2, check_extension_monoidal(h, m, m2))


def case_extend_coproducts(rng, hname, size, ctx):
    h = builtin_hom(hname)
    A, B = G.random_category(rng, h.source, size, prefix="a"), G.random_category(rng, h.source, size, prefix="b")
    m, m2 = G.random_module(rng, B, A), G.random_module(rng, B, A)
    ctx.update(m=m, m2=m2)
    return _closed(h, m, check_extension_coproducts(h, m, m2))


def case_int_identity(rng, name, size, ctx):
    q = _q(name)
    P, P2 = G.random_int_object(rng, q, size), G.random_int_object(rng, q, size)
    R = G.random_int_morphism(rng, P, P2)
    ctx.update(A=R.A, B=R.B, C=R.C, D=R.D)
    return (compare_int("left identity: 1 . R = R", int_compose(int_identity(P2), R), R)
            + compare_int("right identity: R . 1 = R", int_compose(R, int_identity(P)), R))


def case_int_assoc(rng, name, size, ctx):
    q = _q(name)
    P = [G.random_int_object(rng, q, size) for _ in range(4)]
    R, S, T = (G.random_int_morphism(rng, P[k], P[k + 1]) for k in range(3))
    ctx.update(RA=R.A, SA=S.A, TA=T.A)
    return compare_int("associativity of feedback composition",
                       int_compose(T, int_compose(S, R)), int_compose(int_compose(T, S), R))


def _feedback_case(clause):
    def fn(rng, name, size, ctx):
        q = _q(name)
        U = G.random_category(rng, q, size, prefix="u")
        if clause in ("rotate", "slide"):
            V = G.random_category(rng, q, size, prefix="v")
            R, S = G.random_module(rng, U, V), G.random_module(rng, V, U)
        else:
            R, S = G.random_module(rng, U, U), G.random_module(rng, U, U)
        ctx.update(R=R, S=S)
        return lemma_clause(clause, R, S)
    return fn


def case_snake(rng, name, size, ctx):
    P = G.random_int_object(rng, _q(name), size)
    ctx.update(pos=P.pos, neg=P.neg)
    return check_snake(P)


def case_include(rng, name, size, ctx):
    q = _q(name)
    A, B, C = (G.random_category(rng, q, size, prefix=p) for p in "abc")
    m, n = G.random_module(rng, B, A), G.random_module(rng, C, B)
    ctx.update(m=m, n=n)
    return (compare_int("inclusion preserves composition", include_morphism(compose(m, n)),
                        int_compose(include_morphism(m), include_morphism(n)))
            + compare_int("inclusion preserves identities", include_morphism(identity_module(A)),
                          int_identity(include(A))))


def case_boxtimes(rng, name, size, ctx):
    q = _q(name)
    X, X2 = G.random_category(rng, q, size, prefix="x"), G.random_category(rng, q, size, prefix="y")
    ctx.update(X=X, X2=X2)
    out = OK
    ob = boxtimes_objects(include(X), include(X2))
    expected = relabel(tensor_product(X, X2), {o: "L:" + o for o in tensor_product(X, X2).objects})
    if ob.pos != expected or len(ob.neg) != 0:
        out = out + fail("inclusion is strong monoidal on objects", ())
    P, P2 = G.random_int_object(rng, q, 3), G.random_int_object(rng, q, 3)
    b = boxtimes_objects(P, P2)
    (x, u), (x2, u2) = (len(P.pos), len(P.neg)), (len(P2.pos), len(P2.neg))
    if (len(b.pos), len(b.neg)) != (x * x2 + u * u2, x * u2 + u * x2):
        out = out + fail("object sizes of the second tensor", (x, u, x2, u2))
    return out


def case_int_tensor(rng, name, size, ctx):
    q = _q(name)
    s = max(1, min(size, 2))
    P = [G.random_int_object(rng, q, s) for _ in range(6)]
    R, S = G.random_int_morphism(rng, P[0], P[1]), G.random_int_morphism(rng, P[1], P[2])
    R2, S2 = G.random_int_morphism(rng, P[3], P[4]), G.random_int_morphism(rng, P[4], P[5])
    return compare_int("tensor is functorial: (S+S').(R+R') = S.R + S'.R'",
                       int_compose(int_tensor(S, S2), int_tensor(R, R2)),
                       int_tensor(int_compose(S, R), int_compose(S2, R2)))


def _brute_classes(m, n):
    """Equivalence classes of the coend relation, found by testing every pair of
    tagged triples against every morphism of the middle category."""
    B = m.source
    out = set()
    for (a, c), triples in coend_triples(m, n).items():
        pairs = []
        for t1 in triples:
            for t2 in triples:
                b2, y, z = t1
                b, w, x = t2
                for beta in B.homs[(b, b2)]:
                    if m.right[(x, beta)] == z and n.left[(beta, y)] == w:
                        pairs.append((t1, t2))
        out |= equivalence_classes(triples, pairs)
    return out


def case_set_coend(rng, _, size, ctx):
    m, n = G.random_restricted_chain(rng, 2, min(size, 3))
    mn = set_compose(m, n)
    ctx.update(m=m.elements, n=n.elements)
    got = {frozenset(ms) for ms in mn.payload.values()}
    out = validate_setmodule(mn)
    expected = _brute_classes(m, n)
    if got != expected:
        out = out + fail("union-find classes = equivalence closure", (), f"{len(got)} vs {len(expected)} classes")
    if support_module(mn) != compose(support_module(m), support_module(n)):
        out = out + fail("support of the coend = boolean composite", ())
    return out


def case_set_adjunction(rng, _, size, ctx):
    f = G.random_set_functor(rng, min(size, 3))
    ctx.update(objects=f.object_map)
    return (validate_setmodule(set_lower_star(f)) + validate_setmodule(set_upper_star(f))
            + set_check_adjunction(f))


def case_set_associator(rng, _, size, ctx):
    m, n, p = G.random_restricted_chain(rng, 3, min(size, 3))
    return set_associator_check(m, n, p)


def case_set_collage(rng, _, size, ctx):
    if rng.random() < 0.5:
        (m,) = G.random_restricted_chain(rng, 1, min(size, 3))
    else:
        f = G.random_set_functor(rng, min(size, 3))
        m = set_lower_star(f) if rng.random() < 0.5 else set_upper_star(f)
    return check_set_collage(m)


# -- registry ------------------------------------------------------------------

def _build() -> dict[str, Suite]:
    out: dict[str, Suite] = {}

    def add(name, anchor, family, fn, param=None, **kw):
        out[name] = Suite(name, anchor, family, fn, param, **kw)

    for qn in LAW_QUANTALES:
        add(f"quantale-laws[{qn}]", "quantale laws: lattice, monoid, distributivity", "quantale",
            case_quantale_laws, qn, fixed_cases=1)
    add("star-warshall[bool]", "matrix star as least fixpoint (geometric series)", "star", case_star_bool,
        max_objects=8)
    add("star-floyd[minplus:6]", "matrix star as least fixpoint (geometric series)", "star", case_star_minplus,
        max_objects=6)
    for qn in QUANTALES:
        add(f"compose-assoc[{qn}]", "module composition (coend): associativity", "modules", case_assoc, qn)
        add(f"compose-unit[{qn}]", "module composition (coend): unit laws", "modules", case_unit, qn)
        add(f"compose-monotone[{qn}]", "module composition (coend): monotone", "modules", case_monotone, qn)
        add(f"compose-joins[{qn}]", "module composition (coend): preserves joins", "modules", case_joins, qn)
        add(f"adjunction[{qn}]", "f_* -| f^* adjunction", "modules", case_adjunction, qn)
        add(f"pseudofunctor[{qn}]", "(-)_* and (-)^* preserve composition", "modules", case_pseudofunctor, qn)
        add(f"direct-sum[{qn}]", "coproducts are direct sums", "modules", case_direct_sum, qn)
        add(f"constructions[{qn}]", "coproduct, tensor product, codiagonal", "categories",
            case_constructions, qn)
        add(f"collage[{qn}]", "collage: hom formula and recovery i^*.j_* = m", "collage", case_collage, qn)
        add(f"coslice[{qn}]", "coslice via collage: mate equality", "collage", case_coslice, qn)
        add(f"sieve-pushout[{qn}]", "pushout along a sieve: Beck-Chevalley", "sieve", case_sieve_pushout, qn)
    for hn in BUILTIN_HOMS:
        add(f"H1[{hn}]", "homodular H1: sieve inclusions go to left adjoints", "homodular", case_H1, hn)
        add(f"H2[{hn}]", "homodular H2: mate of a sieve/opsieve pushout invertible", "homodular",
            case_H2, hn)
        add(f"extend-functors[{hn}]", "universal extension: T(f_*) = (Tf)_*", "homodular",
            case_extend_lower, hn)
        add(f"extend-compose[{hn}]", "universal extension: functorial", "homodular", case_extend_compose, hn)
        add(f"extend-monoidal[{hn}]", "universal extension: strong monoidal", "homodular",
            case_extend_monoidal, hn)
        add(f"extend-coproducts[{hn}]", "universal extension: preserves coproducts", "homodular",
            case_extend_coproducts, hn)
    for qn in INT_QUANTALES:
        add(f"int-identity[{qn}]", "Int: identity morphisms", "int", case_int_identity, qn, max_objects=3)
        add(f"int-assoc[{qn}]", "Int: feedback composition associative", "int", case_int_assoc, qn,
            max_objects=3)
        add(f"int-snake[{qn}]", "Int: duality counit and snake identities", "int", case_snake, qn,
            max_objects=3)
        add(f"int-include[{qn}]", "Int: inclusion X -> (X, 0)", "int", case_include, qn)
        add(f"int-boxtimes[{qn}]", "Int: second tensor on objects", "int", case_boxtimes, qn, max_objects=3)
        add(f"int-tensor[{qn}]", "Int: direct-sum tensor on morphisms", "int", case_int_tensor, qn)
    for qn in QUANTALES:
        for c in FEEDBACK_LAWS:
            add(f"feedback-{c}[{qn}]", f"free monad identity: {c}", "int", _feedback_case(c), qn)
    add("set-coend", "set-valued coend by union-find", "set", case_set_coend, max_objects=3)
    add("set-adjunction", "set-valued f_* -| f^* triangle identities", "set", case_set_adjunction,
        max_objects=3)
    add("set-associator", "set-valued associator bijection", "set", case_set_associator, max_objects=3)
    add("set-collage", "set-valued collage recovery", "set", case_set_collage, max_objects=3)
    return out


SUITES = _build()


def select(names: list[str] | None = None, family: str | None = None) -> list[Suite]:
    """Suites whose name starts with any of ``names`` (all when empty)."""
    picked = [s for s in SUITES.values()
              if (not names or any(s.name == n or s.name.startswith(n) for n in names))
              and (family is None or s.family == family)]
    return picked


def run_many(suites: list[Suite], seed: int = 0, cases: int = 300, max_objects: int = 4) -> list[Report]:
    return [run_suite(s, seed, cases, max_objects) for s in suites]
