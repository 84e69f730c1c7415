import math

from qmod.oracles import equivalence_classes, floyd_warshall_capped, geometric_series, matrix_product, warshall
from qmod.quantale import builtin_quantale


def test_warshall_cycle():
    assert warshall([[0, 1, 0], [0, 0, 1], [1, 0, 0]]) == [[1] * 3] * 3


def test_warshall_empty_graph_is_identity():
    assert warshall([[0, 0], [0, 0]]) == [[1, 0], [0, 1]]


def test_floyd_caps_and_keeps_inf():
    inf = math.inf
    d = floyd_warshall_capped([[inf, 4, inf], [inf, inf, 4], [inf, inf, inf]], 6)
    assert d == [[0, 4, 6], [inf, 0, 4], [inf, inf, 0]]


def test_geometric_series_on_integers_with_or():
    # bit-shift as "composition", bitwise or as join: 1 | 2 | 4 | 8
    assert geometric_series(lambda m, x: x << m, lambda a, b: a | b, 1, 1, 3) == 15


def test_equivalence_classes_transitive():
    cls = equivalence_classes("abcde", [("a", "b"), ("c", "b"), ("d", "e")])
    assert cls == {frozenset("abc"), frozenset("de")}


def test_matrix_product_bool():
    q = builtin_quantale("bool")
    assert matrix_product(q, [[1, 0], [0, 0]], [[0, 1], [1, 1]]) == [[0, 1], [0, 0]]
