import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqconvex import (
    QuantifierMode,
    Sequence,
    ValidationError,
    is_convex,
    is_eps_affine,
    is_eps_convex,
    is_wright_convex,
    min_eps_affine,
    min_eps_convex,
    replay_margin,
)

E = QuantifierMode.EXISTS
F = QuantifierMode.FORALL

finite = st.floats(min_value=-100, max_value=100, allow_nan=False)
value_lists = st.lists(finite, min_size=2, max_size=20)


def rand_seq(seed, m_lo=2, m_hi=20):
    rng = np.random.default_rng(seed)
    return Sequence(rng.uniform(-1, 1, int(rng.integers(m_lo, m_hi + 1))))


# --- is_convex ---------------------------------------------------------


def test_convex_squares():
    assert is_convex([0, 1, 4, 9]).holds


def test_convex_peak_violation():
    v = is_convex([0, 1, 0])
    assert not v.holds
    cert = v.certificate
    assert cert.kind == "violation"
    assert (cert.i, cert.j) == (1, 2)
    assert cert.margin == -2.0


def test_convex_constant():
    assert is_convex([5, 5, 5, 5]).holds


def test_convex_short_vacuous():
    assert is_convex([3.0]).holds
    assert is_convex([2.0, -9.0]).holds


# --- is_eps_convex ------------------------------------------------------


@pytest.mark.parametrize("mode", [E, F])
@pytest.mark.parametrize("eps", [0.0, 0.5, 10.0])
def test_eps_convex_on_convex(mode, eps):
    assert is_eps_convex([0, 1, 4, 9], eps, mode).holds


def test_eps_convex_peak_exists():
    assert is_eps_convex([0, 1, 0], 2.0, E).holds
    v = is_eps_convex([0, 1, 0], 1.9, E)
    assert not v.holds
    assert (v.certificate.i, v.certificate.j) == (1, 2)


def test_eps_convex_alternating_forall():
    assert is_eps_convex([0, 1, 0, 1], 2.0, F).holds
    v = is_eps_convex([0, 1, 0, 1], 1.99, F)
    assert not v.holds
    assert (v.certificate.i, v.certificate.j) == (1, 2)


def test_eps_convex_rejects_bad_eps():
    with pytest.raises(ValidationError):
        is_eps_convex([0, 1, 0], -1.0)
    with pytest.raises(ValidationError):
        is_eps_convex([0, 1, 0], float("nan"))


# --- min_eps ------------------------------------------------------------


def test_min_eps_convex_of_convex_is_zero():
    value, tight = min_eps_convex([0, 1, 4, 9], E)
    assert value == 0.0 and tight is None


def test_min_eps_convex_peak():
    value, tight = min_eps_convex([0, 1, 0], E)
    assert value == 2.0
    assert (tight.i, tight.j) == (1, 2)
    assert tight.kind == "witness"
    assert abs(tight.margin) <= 1e-12


def test_min_eps_convex_forall_zigzag():
    # brute enumeration over all (i, j, n): binding pair is (1, 4) at n = 4
    from seqconvex import brute_min_eps

    u = [0, 1, 0, 1, 0]
    value, tight = min_eps_convex(u, F)
    assert value == 6.0
    assert value == brute_min_eps(u, F)
    assert (tight.i, tight.j) == (1, 4)


@pytest.mark.parametrize("mode", [E, F])
def test_min_eps_is_tight(mode):
    for seed in range(60):
        u = rand_seq(seed)
        value, _ = min_eps_convex(u, mode)
        assert is_eps_convex(u, value, mode, tol=1e-12).holds
        if value > 1e-9:
            assert not is_eps_convex(u, value * (1 - 1e-6) - 1e-9, mode, tol=0.0).holds


# --- is_eps_affine ------------------------------------------------------


@pytest.mark.parametrize("eps", [0.0, 1.0])
def test_eps_affine_on_arithmetic(eps):
    assert is_eps_affine([3, 5, 7, 9], eps, E).holds
    assert is_eps_affine([3, 5, 7, 9], eps, F).holds


def test_eps_affine_peak():
    assert is_eps_affine([0, 1, 0], 2.0, E).holds
    assert not is_eps_affine([0, 1, 0], 1.9, E).holds


def test_eps_affine_equals_two_sided_eps_convex():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        m = int(rng.integers(2, 15))
        u = Sequence(rng.uniform(-1, 1, m))
        eps = float(rng.uniform(0, 2))
        mode = E if rng.integers(2) else F
        both = is_eps_convex(u, eps, mode).holds and is_eps_convex(-u, eps, mode).holds
        assert is_eps_affine(u, eps, mode).holds == both


def test_min_eps_affine_arithmetic_is_zero():
    value, tight = min_eps_affine([3, 5, 7, 9], E)
    assert value == 0.0 and tight is None


def test_min_eps_affine_peak():
    value, tight = min_eps_affine([0, 1, 0], E)
    assert value == 2.0
    assert (tight.i, tight.j) == (1, 2)


def test_min_eps_affine_equals_max_over_signs():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        m = int(rng.integers(2, 15))
        u = Sequence(rng.uniform(-1, 1, m))
        mode = E if rng.integers(2) else F
        value, _ = min_eps_affine(u, mode)
        expected = max(min_eps_convex(u, mode)[0], min_eps_convex(-u, mode)[0])
        assert value == pytest.approx(expected, abs=1e-12)


# --- Wright convexity ---------------------------------------------------


def test_wright_squares():
    assert is_wright_convex([0, 1, 4, 9]).holds


def test_wright_alternating_fails():
    v = is_wright_convex([0, 1, 0, 1])
    assert not v.holds
    cert = v.certificate
    # worst quadruple is p=0, q=r=1, s=2: u1 + u1 > u0 + u2 by 2
    assert cert.margin == -2.0
    r = cert.i + cert.j - cert.n
    assert cert.n + r == cert.i + cert.j


def test_wright_matches_convex_exhaustively():
    # every integer sequence of length 4..7 over {-2,...,2}
    for m in range(4, 8):
        for values in itertools.product(range(-2, 3), repeat=m):
            w = is_wright_convex(values).holds
            c = is_convex(values).holds
            assert w == c, values


# --- cross-cutting invariants -------------------------------------------


@given(value_lists, st.floats(min_value=0, max_value=5), st.floats(min_value=0, max_value=5))
@settings(max_examples=150, deadline=None)
def test_eps_monotonicity(values, eps1, extra):
    u = Sequence(values)
    for mode in (E, F):
        if is_eps_convex(u, eps1, mode).holds:
            assert is_eps_convex(u, eps1 + extra, mode).holds


@given(value_lists, st.floats(min_value=0, max_value=5))
@settings(max_examples=150, deadline=None)
def test_forall_implies_exists(values, eps):
    u = Sequence(values)
    if is_eps_convex(u, eps, F).holds:
        assert is_eps_convex(u, eps, E).holds
    assert min_eps_convex(u, E)[0] <= min_eps_convex(u, F)[0] + 1e-12


@given(value_lists, st.floats(min_value=-5, max_value=5), st.floats(min_value=-5, max_value=5))
@settings(max_examples=150, deadline=None)
def test_arithmetic_shift_invariance(values, alpha, beta):
    u = Sequence(values)
    shifted = Sequence([v + alpha + beta * n for n, v in enumerate(values)])
    for mode in (E, F):
        assert min_eps_convex(u, mode)[0] == pytest.approx(
            min_eps_convex(shifted, mode)[0], abs=1e-9
        )
        assert min_eps_affine(u, mode)[0] == pytest.approx(
            min_eps_affine(shifted, mode)[0], abs=1e-9
        )
    # verdicts compared at slacks safely away from the decision boundary
    base = min_eps_convex(u, E)[0]
    assert is_eps_convex(shifted, base + 1.0, E).holds
    if base > 0.2:
        assert not is_eps_convex(shifted, base - 0.1, E, tol=0.0).holds


def test_certificate_replay_soundness():
    rng = np.random.default_rng(23)
    replayed = 0
    for _ in range(400):
        m = int(rng.integers(3, 15))
        u = Sequence(rng.uniform(-1, 1, m))
        eps = float(rng.uniform(0, 1))
        mode = E if rng.integers(2) else F
        for verdict, kwargs in (
            (is_convex(u), {}),
            (is_eps_convex(u, eps, mode), {"eps": eps}),
            (is_eps_affine(u, eps, mode), {"eps": eps}),
            (is_wright_convex(u), {}),
        ):
            if verdict.certificate is None:
                continue
            again = replay_margin(u, verdict.certificate, **kwargs)
            assert again == pytest.approx(verdict.certificate.margin, abs=1e-12)
            assert verdict.certificate.margin < -1e-9  # violations only
            replayed += 1
    assert replayed > 100
