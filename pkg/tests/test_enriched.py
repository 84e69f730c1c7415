import pytest

from qmod.enriched import (
    QCategory,
    QFunctor,
    codiagonal,
    compose_functors,
    coproduct,
    discrete_category,
    full_subcategory,
    identity_functor,
    inclusion,
    tensor_product,
    validate_category,
    validate_functor,
)
from qmod.errors import BoundaryError, InputError
from qmod.generators import random_category, random_composable_functors
from qmod.quantale import builtin_quantale, minplus

from conftest import QUANTALE_NAMES, arrow, rng_for


def metric_triangle():
    """Three points on a line at 0, 2, 3 as a Lawvere metric space."""
    q = minplus(6)
    pos = {"p": 0, "q": 2, "r": 3}
    return QCategory.from_ids(q, list(pos), {a: {b: str(abs(pos[a] - pos[b])) for b in pos} for a in pos})


def test_metric_space_is_category():
    assert validate_category(metric_triangle())


def test_broken_triangle_inequality_witness():
    q = minplus(6)
    X = QCategory.from_ids(q, ["p", "q", "r"], [["0", "1", "5"], ["1", "0", "1"], ["5", "1", "0"]])
    v = validate_category(X)
    assert not v and v.first.law.startswith("composition")
    assert v.first.witness == ("p", "q", "r")


def test_missing_identity_witness():
    q = builtin_quantale("bool")
    X = QCategory.from_ids(q, ["a"], [["0"]])
    v = validate_category(X)
    assert v.first.law == "identity: unit <= A(a,a)" and v.first.witness == ("a",)


def test_functor_inequality():
    A = arrow()
    D = discrete_category(A.base, ["x", "y"])
    assert validate_functor(QFunctor.from_mapping(D, A, {"x": "a", "y": "b"}))
    bad = QFunctor.from_mapping(A, D, {"a": "x", "b": "y"})
    v = validate_functor(bad)
    assert not v and v.first.witness == ("a", "b")


def test_from_ids_errors():
    q = builtin_quantale("bool")
    with pytest.raises(InputError):
        QCategory.from_ids(q, ["a", "a"], [["1", "0"], ["0", "1"]])
    with pytest.raises(InputError):
        QCategory.from_ids(q, ["a"], {"a": {"zz": "1"}})
    with pytest.raises(InputError):
        QCategory.from_ids(q, ["a"], [["2"]])
    with pytest.raises(InputError):
        QFunctor.from_mapping(arrow(), arrow(), {"a": "a"})


def test_coproduct_and_tensor_shapes():
    A = arrow()
    S, i, j = coproduct(A, A)
    assert S.objects == ("L:a", "L:b", "R:a", "R:b")
    assert S.hom_id("L:a", "R:b") == "0" and S.hom_id("R:a", "R:b") == "1"
    assert validate_functor(i) and validate_functor(j)
    T = tensor_product(A, A)
    assert T.hom_id("(a,a)", "(b,b)") == "1" and T.hom_id("(b,a)", "(a,a)") == "0"
    assert validate_category(T)
    assert validate_functor(codiagonal(A))


def test_compose_functors_boundary():
    A = arrow()
    with pytest.raises(BoundaryError):
        compose_functors(identity_functor(A), identity_functor(metric_triangle()))


@pytest.mark.parametrize("name", QUANTALE_NAMES)
def test_generated_categories_and_functors_are_valid(name):
    q = builtin_quantale(name)
    for case in range(30):
        rng = rng_for(f"enriched:{name}", case)
        A = random_category(rng, q)
        assert validate_category(A)
        g, f = random_composable_functors(rng, q)
        assert validate_category(g.source) and validate_category(f.source)
        assert validate_functor(g) and validate_functor(f)
        assert validate_functor(compose_functors(g, f))
        sub = list(A.objects[:1])
        assert validate_category(full_subcategory(A, sub))
        assert validate_functor(inclusion(A, sub))
