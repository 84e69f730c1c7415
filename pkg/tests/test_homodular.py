import random

import pytest

from qmod.collage import collage, sieve_pushout
from qmod.enriched import QCategory, QFunctor, full_subcategory
from qmod.errors import InputError, PreconditionError
from qmod.generators import random_category, random_module, random_sieve, random_square
from qmod.homodular import (
    BUILTIN_HOMS,
    PushoutSquare,
    QuantaleHom,
    apply_base_change,
    builtin_hom,
    check_extension_coproducts,
    check_extension_monoidal,
    check_H1,
    check_H2,
    extend,
    extend_closed_form,
    validate_hom,
    validate_square,
)
from qmod.modules import QModule, identity_module, lower_star
from qmod.quantale import builtin_quantale

from conftest import arrow


@pytest.mark.parametrize("name", BUILTIN_HOMS)
def test_builtin_homs_are_homs(name):
    assert validate_hom(builtin_hom(name))


def test_hom_tables_frozen():
    assert builtin_hom("bool>chain:3").table == (0, 2)
    assert builtin_hom("chain:3>bool").table == (0, 1, 1)
    assert builtin_hom("minplus:6>minplus:3").table == (0, 1, 2, 3, 3, 3, 3, 4)
    assert builtin_hom("minplus:6>minplus:3")("5") == "3"


def test_non_hom_rejected():
    b, c = builtin_quantale("bool"), builtin_quantale("chain:3")
    bad = QuantaleHom.from_ids(b, c, {"0": "0", "1": "1"})
    v = validate_hom(bad)
    assert not v and "hom preserves unit" in v.laws()
    with pytest.raises(InputError):
        QuantaleHom.from_ids(b, c, {"0": "0"})
    with pytest.raises(InputError):
        builtin_hom("minplus:3>minplus:6")
    with pytest.raises(InputError):
        builtin_hom("bool>diamond")


def test_base_change_of_arrow():
    h = builtin_hom("bool>chain:3")
    TA = apply_base_change(h, arrow())
    assert TA.hom_id("a", "b") == "2" and TA.hom_id("b", "a") == "0"
    with pytest.raises(Exception):
        apply_base_change(h, apply_base_change(h, arrow()))


@pytest.mark.parametrize("name", BUILTIN_HOMS)
def test_h1_h2_generated(name):
    h = builtin_hom(name)
    q = h.source
    for case in range(25):
        rng = random.Random(f"hom:{name}:{case}")
        X, A = random_sieve(rng, q, 3)
        assert check_H1(h, X, A)
        sq = random_square(rng, q, 3)
        assert validate_square(sq)
        assert check_H2(h, sq)


@pytest.mark.parametrize("name", BUILTIN_HOMS)
def test_extension_generated(name):
    h = builtin_hom(name)
    q = h.source
    for case in range(25):
        rng = random.Random(f"ext:{name}:{case}")
        A = random_category(rng, q, 3, prefix="a")
        B = random_category(rng, q, 3, prefix="b")
        m, n = random_module(rng, B, A), random_module(rng, B, A)
        assert extend(h, m) == extend_closed_form(h, m)
        assert check_extension_monoidal(h, m, n)
        assert check_extension_coproducts(h, m, n)
        assert extend(h, identity_module(A)) == identity_module(apply_base_change(h, A))


def test_extension_of_representable_is_representable():
    h = builtin_hom("chain:3>bool")
    q = h.source
    rng = random.Random("rep")
    A = random_category(rng, q, 3, prefix="a")
    sub = full_subcategory(A, A.objects[:1])
    f = QFunctor(sub, A, sub.objects)
    assert extend(h, lower_star(f)) == lower_star(apply_base_change(h, f))


def test_h1_requires_sieve():
    A = arrow()
    with pytest.raises(PreconditionError):
        check_H1(builtin_hom("id:bool"), A, ["b"])


def test_h2_detects_non_pushout():
    q = builtin_quantale("bool")
    X = QCategory.from_ids(q, ["a", "x"], {"a": {"a": "1", "x": "1"}, "x": {"x": "1"}})
    Y = QCategory.from_ids(q, ["y"], [["1"]])
    Asub = full_subcategory(X, ["a"])
    i = QFunctor(Asub, X, ("a",))
    j = QFunctor(Asub, Y, ("y",))
    good = PushoutSquare.from_span(i, j)
    assert check_H2(builtin_hom("bool>chain:3"), good)
    assert good.pushout.Q.hom_id("Y:y", "X:x") == "1"
    # keep a as its own object instead of gluing it to y: valid pieces, wrong corner
    Q = QCategory.from_ids(q, ["Y:y", "X:a", "X:x"],
                           {"Y:y": {"Y:y": "1"}, "X:a": {"X:a": "1", "X:x": "1"}, "X:x": {"X:x": "1"}})
    k = QFunctor(Y, Q, ("Y:y",))
    hh = QFunctor(X, Q, ("X:a", "X:x"))
    bad = PushoutSquare(i, j, good.pushout._replace(Q=Q, k=k, h=hh))
    v = check_H2(builtin_hom("bool>chain:3"), bad)
    assert not v and v.first.witness == ("y", "a")
    assert v.first.detail == "lhs=2 rhs=0"


def test_collage_sieve_feeds_h1():
    h = builtin_hom("minplus:6>minplus:3")
    q = h.source
    rng = random.Random("cs")
    A = random_category(rng, q, 2, prefix="a")
    B = random_category(rng, q, 2, prefix="b")
    c = collage(random_module(rng, B, A))
    assert check_H1(h, c.total, c.i.object_map)
    po = sieve_pushout(QFunctor(full_subcategory(c.total, c.i.object_map), A, A.objects), c.total)
    assert po.Q.objects[: len(A)] == tuple("Y:" + a for a in A.objects)
    assert isinstance(extend(h, QModule(B, A, c.module.matrix)), QModule)
