import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmod.errors import InputError
from qmod.oracles import floyd_warshall_capped, warshall
from qmod.quantale import (
    QMatrix,
    Quantale,
    builtin_quantale,
    chain,
    identity_matrix,
    join_all,
    kleene_ascent,
    leq,
    mat_compose,
    mat_join,
    mat_leq,
    matrix_star,
    minplus,
    tensor,
    validate_quantale,
)

from conftest import rng_for

ALL = ("bool", "chain:3", "chain:5", "minplus:6", "diamond")


@pytest.mark.parametrize("name", ALL)
def test_builtins_validate(name):
    assert validate_quantale(builtin_quantale(name))


def test_boolean_order_and_empty_join():
    q = builtin_quantale("bool")
    assert leq(q, "0", "1") and not leq(q, "1", "0")
    assert join_all(q, []) == "0"
    assert q.unit_id == "1" and q.bottom_id == "0"


def test_chain_tables_from_ids():
    q = Quantale.from_tables(
        ["0", "h", "1"],
        [["0", "h", "1"], ["h", "h", "1"], ["1", "1", "1"]],
        [["0", "0", "0"], ["0", "h", "h"], ["0", "h", "1"]],
        "1",
    )
    assert validate_quantale(q)
    assert q.tensor("h", "1") == "h"


def test_mutated_chain_rejected_with_witness():
    # the half-way element squares to the top: monotonicity and distributivity break
    q = Quantale.from_tables(
        ["0", "h", "1"],
        [["0", "h", "1"], ["h", "h", "1"], ["1", "1", "1"]],
        [["0", "0", "0"], ["0", "1", "h"], ["0", "h", "1"]],
        "1",
    )
    v = validate_quantale(q)
    assert not v
    assert "tensor distributes over join" in v.laws()
    dist = next(x for x in v.violations if x.law == "tensor distributes over join")
    assert dist.witness[:2] == ("h", "h")


def test_minplus_cap_tensor():
    q = minplus(5)
    assert tensor(q, "2", "4") == "5"
    assert tensor(q, "2", "inf") == "inf"
    assert q.bottom_id == "inf" and q.unit_id == "0"


def test_missing_table_entry_is_input_error():
    with pytest.raises(InputError):
        Quantale.from_tables(["0", "1"], {"0": {"0": "0"}, "1": {"0": "1", "1": "1"}},
                             [["0", "0"], ["0", "1"]], "1")
    with pytest.raises(InputError):
        Quantale.from_tables(["0", "1"], [["0", "1"], ["1", "1"]], [["0", "0"], ["0", "x"]], "1")


@pytest.mark.parametrize("name", ["bool", "chain:3", "minplus:6", "diamond"])
def test_mutation_of_each_builtin_is_caught(name):
    q = builtin_quantale(name)
    # swap one tensor entry for another value; exhaustively some law must fail
    E = q.elements
    t = [list(r) for r in q.tensor_table]
    i, j = 1, len(E) - 1
    t[i][j] = (t[i][j] + 1) % len(E)
    bad = Quantale(E, q.join_table, tuple(tuple(r) for r in t), q.unit)
    v = validate_quantale(bad)
    assert not v and v.first.witness


def test_unknown_builtin():
    with pytest.raises(InputError):
        builtin_quantale("chain:1")
    with pytest.raises(InputError):
        builtin_quantale("lattice")


def test_height():
    assert builtin_quantale("bool").height == 1
    assert chain(5).height == 4
    assert minplus(6).height == 7


# -- matrix star -----------------------------------------------------------------

def _bool_matrix(adj):
    n = len(adj)
    objs = tuple(f"n{i}" for i in range(n))
    return objs, QMatrix(objs, objs, tuple(tuple(r) for r in adj))


def test_star_of_zero_is_base():
    q = builtin_quantale("chain:3")
    objs = ("x", "y")
    base = identity_matrix(q, objs)
    zero = QMatrix.constant(objs, objs, q.bottom)
    assert matrix_star(q, zero, base) == base


def test_star_path4_frozen():
    adj = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
    q = builtin_quantale("bool")
    objs, M = _bool_matrix(adj)
    S = matrix_star(q, M, identity_matrix(q, objs))
    assert [list(r) for r in S.data] == [[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]]


def test_star_minplus_5_nodes_frozen():
    inf = float("inf")
    w = [[inf, 2, inf, inf, 9], [inf, inf, 3, inf, inf], [inf, inf, inf, 1, inf],
         [inf, inf, inf, inf, 1], [1, inf, inf, inf, inf]]
    expected = floyd_warshall_capped(w, 6)
    assert expected[0] == [0, 2, 5, 6, 6]  # 0->4 costs 7, capped to 6
    q = minplus(6)
    objs = tuple(f"n{i}" for i in range(5))
    M = QMatrix(objs, objs, tuple(tuple(7 if v == inf else min(v, 6) for v in r) for r in w))
    S = matrix_star(q, M, identity_matrix(q, objs))
    assert [list(r) for r in S.data] == [[7 if v == inf else v for v in r] for r in expected]


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return [[draw(st.integers(0, 1)) for _ in range(n)] for _ in range(n)]


@given(digraphs())
def test_star_matches_warshall(adj):
    q = builtin_quantale("bool")
    objs, M = _bool_matrix(adj)
    S = matrix_star(q, M, identity_matrix(q, objs))
    assert [list(r) for r in S.data] == warshall(adj)


@given(digraphs(5))
def test_star_is_closure_and_bounded(adj):
    q = builtin_quantale("bool")
    objs, M = _bool_matrix(adj)
    base = identity_matrix(q, objs)
    S, steps = kleene_ascent(q, M, base)
    assert mat_leq(q, base, S)
    assert mat_leq(q, mat_compose(q, M, S), S)
    assert mat_leq(q, mat_compose(q, S, S), S)
    assert steps <= q.height * len(objs) ** 2


@given(digraphs(5), digraphs(5))
def test_star_monotone(a1, a2):
    n = min(len(a1), len(a2))
    a1 = [r[:n] for r in a1[:n]]
    a2 = [r[:n] for r in a2[:n]]
    q = builtin_quantale("bool")
    objs, M1 = _bool_matrix(a1)
    _, M2 = _bool_matrix(a2)
    base = identity_matrix(q, objs)
    big = mat_join(q, M1, M2)
    assert mat_leq(q, matrix_star(q, M1, base), matrix_star(q, big, base))


def test_star_dimension_errors():
    q = builtin_quantale("bool")
    objs = ("a", "b")
    M = QMatrix(objs, ("a",), ((0,), (1,)))
    with pytest.raises(InputError):
        matrix_star(q, M, identity_matrix(q, objs))


def test_exhaustive_small_chain_laws_agree_with_brute_force():
    q = chain(4)
    n = len(q)
    for x, y, z in itertools.product(range(n), repeat=3):
        assert q.tensor_table[x][q.join_table[y][z]] == max(min(x, y), min(x, z))


def test_seeded_rng_helper_is_deterministic():
    assert rng_for("a", 1).random() == rng_for("a", 1).random()
