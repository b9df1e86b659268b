import itertools

import numpy as np
import pytest

from seqconvex import (
    Family,
    GeneratorSpec,
    QuantifierMode,
    Sequence,
    ValidationError,
    affine_approx,
    bisect_convex_bound,
    brute_min_eps,
    brute_wright,
    generate,
    is_convex,
    is_wright_convex,
    min_eps_convex,
)

E = QuantifierMode.EXISTS
F = QuantifierMode.FORALL


# --- brute_min_eps ---------------------------------------------------------


def test_brute_convex_is_zero():
    assert brute_min_eps([0, 1, 4, 9], E) == 0.0
    assert brute_min_eps([0, 1, 4, 9], F) == 0.0


def test_brute_peak():
    assert brute_min_eps([0, 1, 0], E) == 2.0
    assert brute_min_eps([0, 1, 0], F) == 2.0


def test_brute_guard():
    with pytest.raises(ValidationError, match="fast path|min_eps_convex"):
        brute_min_eps([0.0] * 501, E)


@pytest.mark.parametrize("mode", [E, F])
def test_brute_agrees_with_fast_path(mode):
    rng = np.random.default_rng(101)
    for _ in range(100):
        m = int(rng.integers(2, 21))
        u = Sequence(rng.uniform(-1, 1, m))
        assert min_eps_convex(u, mode)[0] == pytest.approx(
            brute_min_eps(u, mode), abs=1e-12
        )


# --- brute_wright -----------------------------------------------------------


def test_brute_wright_squares():
    assert brute_wright([0, 1, 4, 9]).holds


def test_brute_wright_alternating():
    v = brute_wright([0, 1, 0, 1])
    assert not v.holds


def test_brute_wright_guard():
    with pytest.raises(ValidationError, match="is_wright_convex"):
        brute_wright([0.0] * 101)


def test_brute_wright_exhaustive_small_grid():
    # all sequences of length <= 6 over {-1, 0, 1} agree with convexity
    for m in range(1, 7):
        for values in itertools.product((-1, 0, 1), repeat=m):
            b = brute_wright(values).holds
            assert b == is_convex(values).holds, values
            assert b == is_wright_convex(values).holds, values


# --- generators --------------------------------------------------------------


def test_generate_is_deterministic():
    spec = GeneratorSpec(99, 17, Family.CONVEX_PLUS_NOISE, eps=0.4)
    assert generate(spec).values == generate(spec).values


def test_generate_integer_grid():
    u = generate(GeneratorSpec(5, 50, Family.INTEGER_GRID, grid_range=3))
    assert all(v == int(v) and -3 <= v <= 3 for v in u)


def test_generate_convex_plus_noise_eps_budget():
    # noise of amplitude eps/2 can move each difference gap by at most 2*eps
    for k in range(300):
        rng = np.random.default_rng(400 + k)
        m = int(rng.integers(2, 40))
        budget = float(rng.uniform(0.05, 2.0))
        u = generate(GeneratorSpec(400 + k, m, Family.CONVEX_PLUS_NOISE, eps=budget))
        assert min_eps_convex(u, E)[0] <= 2 * budget + 1e-9


def test_generate_arithmetic_plus_noise_eps_budget():
    for k in range(300):
        rng = np.random.default_rng(500 + k)
        m = int(rng.integers(1, 40))
        budget = float(rng.uniform(0.05, 2.0))
        u = generate(GeneratorSpec(500 + k, m, Family.ARITHMETIC_PLUS_NOISE, eps=budget))
        assert affine_approx(u).bound <= budget + 1e-9


def test_generator_spec_validation():
    with pytest.raises(ValidationError, match="positive"):
        GeneratorSpec(0, 0, Family.RANDOM_UNIFORM)
    with pytest.raises(ValidationError, match="eps"):
        GeneratorSpec(0, 5, Family.CONVEX_PLUS_NOISE)
    with pytest.raises(ValidationError, match="grid_range"):
        GeneratorSpec(0, 5, Family.INTEGER_GRID)
    with pytest.raises(ValidationError):
        GeneratorSpec(0, 5, Family.ARITHMETIC_PLUS_NOISE, eps=-1.0)


# --- bisection oracle ---------------------------------------------------------


def test_bisect_convex_bound_on_convex():
    assert bisect_convex_bound([0, 1, 4, 9]) == 0.0


def test_bisect_convex_bound_peak():
    assert bisect_convex_bound([0, 1, 0]) == pytest.approx(0.5, abs=1e-9)


def test_bisect_matches_min_eps_affine_relation():
    # affine fit error never beats the convex fit error
    rng = np.random.default_rng(7)
    for _ in range(50):
        m = int(rng.integers(2, 30))
        u = Sequence(rng.uniform(-1, 1, m))
        assert bisect_convex_bound(u) <= affine_approx(u).bound + 1e-8
