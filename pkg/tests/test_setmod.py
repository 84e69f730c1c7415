import random

import pytest

from qmod.errors import BoundaryError, QmodError
from qmod.generators import (
    free_dag_category,
    full_fin_subcategory,
    random_concrete_category,
    random_restricted_chain,
    random_set_functor,
    restricted_hom_module,
)
from qmod.modules import compose
from qmod.oracles import equivalence_classes
from qmod.setmod import (
    FinCategory,
    FinFunctor,
    UnionFind,
    check_set_collage,
    hom_module,
    identity_finfunctor,
    set_associator_check,
    set_check_adjunction,
    set_collage,
    set_compose,
    set_lower_star,
    set_upper_star,
    support_module,
    validate_fincategory,
    validate_finfunctor,
    validate_setmodule,
)


def walking_arrow() -> FinCategory:
    return free_dag_category([("f", "0", "1")], ["0", "1"])


def swap_monoid() -> FinCategory:
    """One object, the two permutations of a 2-element set."""
    return FinCategory.build(["*"], {("*", "*"): ("e", "s")}, {"*": "e"},
                             {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})


def test_union_find_least_root():
    uf = UnionFind("dcba")
    uf.union("d", "c")
    uf.union("c", "b")
    assert uf.find("d") == "b"
    assert uf.classes() == {"a": ["a"], "b": ["b", "c", "d"]}


def test_free_dag_category_frozen():
    C = free_dag_category([("f", "x", "y"), ("g", "y", "z")], ["x", "y", "z"])
    assert validate_fincategory(C)
    assert C.homs[("x", "z")] == ("g.f",)
    assert C.compose("g", "f") == "g.f" and C.compose("g.f", "1_x") == "g.f"
    with pytest.raises(QmodError):
        C.compose("f", "g")


def test_broken_category_detected():
    M = swap_monoid()
    # s . s = s is still a monoid (the idempotent one)
    assert validate_fincategory(FinCategory.build(M.objects, M.homs, M.identities, {**M.comp, ("s", "s"): "s"}))
    bad = FinCategory.build(M.objects, M.homs, M.identities, {**M.comp, ("e", "s"): "e"})
    v = validate_fincategory(bad)
    assert v.first.law == "identity laws" and v.first.witness == ("s",)
    missing = FinCategory.build(M.objects, M.homs, M.identities,
                                {k: v for k, v in M.comp.items() if k != ("s", "s")})
    assert validate_fincategory(missing).first.law == "composition total and well typed"


def test_hom_module_and_representables_valid():
    A = walking_arrow()
    assert validate_setmodule(hom_module(A))
    f = FinFunctor(full_fin_subcategory(A, ["1"]), A, {"1": "1"}, {"1_1": "1_1"})
    assert validate_finfunctor(f)
    lo, up = set_lower_star(f), set_upper_star(f)
    assert validate_setmodule(lo) and validate_setmodule(up)
    assert lo.elements[("0", "1")] == ("f@1",) and up.elements[("1", "0")] == ()


def test_monoid_tensor_over_itself():
    # M (x)_M M = M: two classes, named by their least triple
    M = swap_monoid()
    h = hom_module(M)
    c = set_compose(h, h)
    assert c.elements[("*", "*")] == ("[*|e|e]", "[*|e|s]")
    assert sorted(c.payload["[*|e|s]"]) == [("*", "e", "s"), ("*", "s", "e")]
    assert validate_setmodule(c)


def test_composite_of_walking_arrow_homs_frozen():
    A = walking_arrow()
    h = hom_module(A)
    c = set_compose(h, h)
    assert {k: len(v) for k, v in c.elements.items()} == {("0", "0"): 1, ("0", "1"): 1, ("1", "0"): 0, ("1", "1"): 1}
    assert c.elements[("0", "1")] == ("[0|f|1_0]",)


def _independent_classes(m, n):
    """Triples and generating pairs recomputed straight from the actions."""
    items, pairs = [], []
    for (a, b), xs in m.elements.items():
        for (b2, c), ys in n.elements.items():
            if b2 == b:
                items += [(b, y, x) for y in ys for x in xs]
    for (alpha, y), y2 in n.left.items():
        b, b_src = m.source.cod(alpha), m.source.dom(alpha)
        for (x, beta), x2 in m.right.items():
            if beta == alpha:
                pairs.append(((b, y, x2), (b_src, y2, x)))
    return items, pairs


def test_coend_classes_match_brute_force():
    for case in range(80):
        rng = random.Random(f"coend:{case}")
        m, n = random_restricted_chain(rng, 2)
        c = set_compose(m, n)
        items, pairs = _independent_classes(m, n)
        oracle = equivalence_classes(items, pairs)
        assert {frozenset(ms) for ms in c.payload.values()} == oracle
        assert support_module(c) == compose(support_module(m), support_module(n))
        assert validate_setmodule(c)


def test_yoneda_when_middle_is_everything():
    for case in range(40):
        rng = random.Random(f"yoneda:{case}")
        D = random_concrete_category(rng)
        A = full_fin_subcategory(D, D.objects[:1])
        C = full_fin_subcategory(D, D.objects[-1:])
        m, n = restricted_hom_module(D, A, D), restricted_hom_module(D, D, C)
        c = set_compose(m, n)
        a, z = A.objects[0], C.objects[0]
        assert len(c.elements[(a, z)]) == len(D.homs[(a, z)])


def test_adjunction_holds_and_swapped_counit_fails():
    failures = 0
    for case in range(60):
        rng = random.Random(f"adj:{case}")
        F = random_set_functor(rng)
        assert validate_finfunctor(F)
        assert set_check_adjunction(F)
        if not set_check_adjunction(F, lambda A, y, x: A.compose(x, y)):
            failures += 1
    assert failures > 0


def test_swapped_counit_on_walking_arrow():
    A = walking_arrow()
    F = identity_finfunctor(A)
    v = set_check_adjunction(F, lambda C, y, x: C.compose(x, y))
    assert not v and v.first.law == "counit defined"


def test_collage_and_associator():
    for case in range(40):
        rng = random.Random(f"col:{case}")
        m, n, p = random_restricted_chain(rng, 3)
        assert check_set_collage(m)
        assert set_associator_check(m, n, p)
    c = set_collage(hom_module(walking_arrow()))
    assert c.total.homs[("A:0", "B:1")] == ("M:f",)
    assert c.total.compose("B:f", "M:1_0") == "M:f"


def test_compose_boundary():
    h = hom_module(walking_arrow())
    with pytest.raises(BoundaryError):
        set_compose(h, hom_module(swap_monoid()))


def test_bad_module_detected():
    h = hom_module(walking_arrow())
    broken = type(h)(h.source, h.target, h.elements, {**h.left, ("1_0", "f"): "1_0"}, h.right)
    assert not validate_setmodule(broken)
