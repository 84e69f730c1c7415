import random

import pytest

from qmod.enriched import validate_category, validate_functor
from qmod.generators import (
    random_category,
    random_extension,
    random_int_morphism,
    random_int_object,
    random_module,
    random_restricted_chain,
    random_set_functor,
    random_sieve,
    random_square,
)
from qmod.collage import is_sieve
from qmod.homodular import validate_square
from qmod.modules import validate_module
from qmod.quantale import builtin_quantale
from qmod.setmod import validate_fincategory, validate_finfunctor, validate_setmodule

from conftest import QUANTALE_NAMES


def test_same_seed_same_instance():
    q = builtin_quantale("chain:3")
    a = random_category(random.Random("s:1"), q)
    b = random_category(random.Random("s:1"), q)
    assert a == b


@pytest.mark.parametrize("name", QUANTALE_NAMES)
def test_generated_instances_pass_validators(name):
    q = builtin_quantale(name)
    for case in range(30):
        rng = random.Random(f"gen:{name}:{case}")
        A = random_category(rng, q, 4, prefix="a")
        B = random_category(rng, q, 4, prefix="b")
        assert validate_category(A) and validate_module(random_module(rng, B, A))
        X, S = random_sieve(rng, q, 3)
        assert is_sieve(X, S)
        assert validate_square(random_square(rng, q, 3))
        e = random_extension(rng, A)
        assert validate_functor(e) and validate_category(e.target)
        ob, ob2 = random_int_object(rng, q, 2), random_int_object(rng, q, 2)
        R = random_int_morphism(rng, ob, ob2)
        assert all(validate_module(b) for b in R.blocks)


def test_set_generators_valid_and_small():
    for case in range(60):
        rng = random.Random(f"setgen:{case}")
        F = random_set_functor(rng)
        assert validate_fincategory(F.source) and validate_fincategory(F.target)
        assert validate_finfunctor(F)
        assert len(F.target.objects) <= 3
        assert max(len(h) for h in F.target.homs.values()) <= 3
        for m in random_restricted_chain(rng, 2):
            assert validate_setmodule(m)
