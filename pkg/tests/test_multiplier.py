import random
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toomcook import multiplier
from toomcook.core import VandermondeSolver
from toomcook.multiplier import NonIntegralResult, problem_size, sign_combine, toomk
from toomcook.numeric import schoolbook_int
from toomcook.params import validate


def test_problem_size(toom3):
    assert problem_size(toom3, 123, 456) == 3
    assert problem_size(toom3, 0, 0) == 0
    assert problem_size(toom3, -1000, 5) == 4


def test_sign_combine():
    assert sign_combine(True, False, 6) == -6
    assert sign_combine(True, True, 6) == 6
    assert sign_combine(False, False, 0) == 0
    assert sign_combine(False, True, 0) == 0


def test_base_case_example(toom3):
    # P = 3 <= theta = 3, so this never recurses
    assert toomk(toom3, 123, 456) == 56088


def test_signs_under_every_config(any_config):
    assert toomk(any_config, -12, 34) == -408
    for x, y in [(-12, -34), (12, -34), (0, -5), (-5, 0)]:
        assert toomk(any_config, x, y) == x * y


def test_500_digit_operands_match_schoolbook(any_config):
    rng = random.Random(500)
    x = rng.randrange(10**499, 10**500)
    y = rng.randrange(10**499, 10**500)
    assert toomk(any_config, x, y) == schoolbook_int(10, x, y)


def test_unbalanced_operands(toom3):
    rng = random.Random(9)
    for _ in range(20):
        x = rng.getrandbits(rng.randrange(1, 2000))
        y = rng.getrandbits(rng.randrange(1, 40))
        assert toomk(toom3, x, y) == x * y
        assert toomk(toom3, y, x) == x * y


def test_rejects_non_int(toom3):
    with pytest.raises(TypeError):
        toomk(toom3, 1.5, 2)
    with pytest.raises(TypeError):
        toomk(toom3, True, 2)


configs = st.one_of(
    st.just((10, 2, 2, (0, 1, -1))),
    st.tuples(
        st.sampled_from([2, 3, 10, 16, 1000]),
        st.integers(2, 4),
        st.integers(2, 4),
    ).flatmap(lambda t: st.tuples(
        st.just(t[0]), st.just(t[1]), st.just(t[2]),
        st.lists(st.integers(-50, 50), min_size=t[1] + t[2] - 1,
                 max_size=t[1] + t[2] - 1, unique=True),
    )),
)


@settings(max_examples=150, deadline=None)
@given(configs, st.integers(-10**120, 10**120), st.integers(-10**120, 10**120))
def test_product_property(cfg_args, x, y):
    cfg = validate(*cfg_args)
    assert toomk(cfg, x, y) == x * y


def test_concurrent_calls_match_sequential(toom3):
    rng = random.Random(2)
    pairs = [(rng.getrandbits(900), -rng.getrandbits(700)) for _ in range(16)]
    sequential = [toomk(toom3, x, y) for x, y in pairs]
    with ThreadPoolExecutor(4) as pool:
        assert list(pool.map(lambda p: toomk(toom3, *p), pairs)) == sequential


def test_non_integral_interpolation_is_loud(toom3, monkeypatch):
    real = VandermondeSolver(toom3.points)

    class Broken:
        denominator = real.denominator * 7
        numerators = real.numerators

        def solve_scaled(self, w):
            return real.solve_scaled(w)

    monkeypatch.setattr(multiplier, "solver_for", lambda pts: Broken())
    with pytest.raises(NonIntegralResult):
        toomk(toom3, 123456789, 987654321)
