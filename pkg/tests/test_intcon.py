import random

import pytest

from qmod.enriched import QCategory
from qmod.errors import BoundaryError
from qmod.generators import random_category, random_int_morphism, random_int_object, random_module
from qmod.intcon import (
    FEEDBACK_LAWS,
    IntMorphism,
    IntObject,
    associator,
    associator_inverse,
    boxtimes_objects,
    check_snake,
    compare_int,
    free_monad,
    include,
    include_morphism,
    int_compose,
    int_counit,
    int_identity,
    int_object_tensor,
    int_tensor,
    int_unit,
    int_unit_object,
    lemma_clause,
)
from qmod.modules import QModule, compose, identity_module, join_modules, zero_module
from qmod.oracles import geometric_series, matrix_product
from qmod.quantale import builtin_quantale

INT_Q = ("bool", "minplus:6")


def _join_tables(q, m, n):
    return [[q.join_table[a][b] for a, b in zip(r, s)] for r, s in zip(m, n)]


def path_oracle(S: IntMorphism, R: IntMorphism):
    """Blocks of ``S . R`` by summing over all paths in the glued flow graph.

    Nodes are the objects of X, U, Y, V, Z, W; every block contributes edges,
    every hom category contributes its homs; the closure is the explicit
    geometric series of the big matrix.
    """
    q = R.source.base
    parts = [("X", R.source.pos), ("U", R.source.neg), ("Y", R.target.pos), ("V", R.target.neg),
             ("Z", S.target.pos), ("W", S.target.neg)]
    index, offset = {}, 0
    for tag, cat in parts:
        index[tag] = offset
        offset += len(cat)
    n = offset
    big = [[q.bottom] * n for _ in range(n)]
    base = [[q.bottom] * n for _ in range(n)]
    for tag, cat in parts:
        o = index[tag]
        for i in range(len(cat)):
            for j in range(len(cat)):
                base[o + i][o + j] = cat.hom.data[i][j]
    blocks = [(R.A, "X", "Y"), (R.B, "V", "Y"), (R.C, "X", "U"), (R.D, "V", "U"),
              (S.A, "Y", "Z"), (S.B, "W", "Z"), (S.C, "Y", "V"), (S.D, "W", "V")]
    for m, src, tgt in blocks:
        for i, row in enumerate(m.matrix.data):
            for j, v in enumerate(row):
                big[index[tgt] + i][index[src] + j] = v
    total = geometric_series(lambda a, b: matrix_product(q, a, b),
                             lambda a, b: _join_tables(q, a, b), base, big, n * q.height + 1)

    def cut(tgt, src):
        rt, rs = index[tgt], index[src]
        nt = len(dict(parts)[tgt])
        ns = len(dict(parts)[src])
        return [row[rs:rs + ns] for row in total[rt:rt + nt]]

    return cut("Z", "X"), cut("Z", "W"), cut("U", "X"), cut("U", "W")


def _tables(f: IntMorphism):
    return tuple([list(r) for r in b.matrix.data] for b in f.blocks)


@pytest.mark.parametrize("name", INT_Q)
def test_composition_matches_path_oracle(name):
    q = builtin_quantale(name)
    for case in range(40):
        rng = random.Random(f"int-oracle:{name}:{case}")
        a, b, c = (random_int_object(rng, q, 2) for _ in range(3))
        R, S = random_int_morphism(rng, a, b), random_int_morphism(rng, b, c)
        assert _tables(int_compose(S, R)) == tuple(path_oracle(S, R))


@pytest.mark.parametrize("name", INT_Q)
def test_category_laws(name):
    q = builtin_quantale(name)
    for case in range(30):
        rng = random.Random(f"int-cat:{name}:{case}")
        a, b, c, d = (random_int_object(rng, q, 2) for _ in range(4))
        R = random_int_morphism(rng, a, b)
        S = random_int_morphism(rng, b, c)
        T = random_int_morphism(rng, c, d)
        assert compare_int("left unit", int_compose(int_identity(b), R), R)
        assert compare_int("right unit", int_compose(R, int_identity(a)), R)
        assert compare_int("assoc", int_compose(T, int_compose(S, R)), int_compose(int_compose(T, S), R))


def test_free_monad_matches_geometric_series():
    q = builtin_quantale("minplus:6")
    for case in range(30):
        rng = random.Random(f"fm:{case}")
        U = random_category(rng, q, 4)
        R = random_module(rng, U, U)
        oracle = geometric_series(lambda a, b: matrix_product(q, a, b),
                                  lambda a, b: _join_tables(q, a, b),
                                  [list(r) for r in U.hom.data], [list(r) for r in R.matrix.data],
                                  len(U) * q.height + 1)
        assert [list(r) for r in free_monad(R).matrix.data] == oracle


@pytest.mark.parametrize("clause", FEEDBACK_LAWS)
@pytest.mark.parametrize("name", INT_Q + ("chain:3", "diamond"))
def test_feedback_laws(clause, name):
    q = builtin_quantale(name)
    for case in range(25):
        rng = random.Random(f"fb:{clause}:{name}:{case}")
        U = random_category(rng, q, 3, prefix="u")
        if clause in ("rotate", "slide"):
            V = random_category(rng, q, 3, prefix="v")
            R, S = random_module(rng, U, V), random_module(rng, V, U)
        else:
            R, S = random_module(rng, U, U), random_module(rng, U, U)
        assert lemma_clause(clause, R, S)


def test_unknown_clause():
    q = builtin_quantale("bool")
    U = random_category(random.Random(0), q, 2)
    with pytest.raises(ValueError):
        lemma_clause("nope", identity_module(U), identity_module(U))


def test_free_monad_of_a_step_frozen():
    q = builtin_quantale("bool")
    D = QCategory.from_ids(q, ["a", "b", "c"], {o: {o: "1"} for o in "abc"})
    step = QModule.from_ids(D, D, {"b": {"a": "1"}, "c": {"b": "1"}})
    assert free_monad(step).matrix.as_ids(q) == [["1", "0", "0"], ["1", "1", "0"], ["1", "1", "1"]]
    # with no star on the inner factor the sum rule would fail here
    wrong = compose(free_monad(zero_module(D, D)), step)
    assert wrong != free_monad(join_modules(zero_module(D, D), step))


@pytest.mark.parametrize("name", INT_Q)
def test_snake_and_tensor(name):
    q = builtin_quantale(name)
    for case in range(15):
        rng = random.Random(f"snake:{name}:{case}")
        ob = random_int_object(rng, q, 2)
        assert check_snake(ob)
        a, b, c = (random_int_object(rng, q, 2) for _ in range(3))
        fwd, back = associator(a, b, c), associator_inverse(a, b, c)
        assert compare_int("assoc iso", int_compose(back, fwd), int_identity(fwd.source))
        R, S = random_int_morphism(rng, a, b), random_int_morphism(rng, b, c)
        R2, S2 = random_int_morphism(rng, c, a), random_int_morphism(rng, a, b)
        assert compare_int("interchange",
                           int_tensor(int_compose(S, R), int_compose(S2, R2)),
                           int_compose(int_tensor(S, S2), int_tensor(R, R2)))


def test_unit_object_and_duality_shapes():
    q = builtin_quantale("bool")
    ob = random_int_object(random.Random(5), q, 2, allow_empty=False)
    I = int_unit_object(q)
    assert len(I.pos) == len(I.neg) == 0
    eps, eta = int_counit(ob), int_unit(ob)
    assert eps.target == I and eta.source == I
    assert eps.source == int_object_tensor(ob, IntObject(ob.neg, ob.pos))


@pytest.mark.parametrize("name", INT_Q)
def test_include_is_functorial_and_faithful(name):
    q = builtin_quantale(name)
    for case in range(25):
        rng = random.Random(f"incl:{name}:{case}")
        A, B, C = (random_category(rng, q, 3, prefix=p) for p in "abc")
        m, n = random_module(rng, B, A), random_module(rng, C, B)
        assert compare_int("include compose", include_morphism(compose(m, n)),
                           int_compose(include_morphism(m), include_morphism(n)))
        assert compare_int("include id", include_morphism(identity_module(A)), int_identity(include(A)))
        assert include_morphism(m).A == m


def test_boxtimes_object_components():
    q = builtin_quantale("bool")
    rng = random.Random(9)
    ob, ob2 = random_int_object(rng, q, 2, False), random_int_object(rng, q, 2, False)
    bx = boxtimes_objects(ob, ob2)
    assert len(bx.pos) == len(ob.pos) * len(ob2.pos) + len(ob.neg) * len(ob2.neg)
    assert len(bx.neg) == len(ob.pos) * len(ob2.neg) + len(ob.neg) * len(ob2.pos)


def test_boundary_errors():
    q = builtin_quantale("bool")
    rng = random.Random(2)
    a = IntObject(random_category(rng, q, 2, 1, "x"), random_category(rng, q, 2, 1, "u"))
    b = IntObject(random_category(rng, q, 2, 1, "y"), random_category(rng, q, 2, 1, "v"))
    R = random_int_morphism(rng, a, b)
    with pytest.raises(BoundaryError):
        int_compose(R, R)
    with pytest.raises(BoundaryError):
        free_monad(random_module(rng, a.pos, b.pos))
    with pytest.raises(BoundaryError):
        IntMorphism(a, b, R.B, R.A, R.C, R.D)
