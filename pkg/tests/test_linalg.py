import itertools

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from reedykit import linalg as la

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, p=None, max_side=4):
    p = p or draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(vals, dtype=np.int64).reshape(r, c)


def span_size(a, p):
    """Brute force: number of distinct vectors a @ x over all x in F_p^cols."""
    if a.shape[1] == 0:
        return 1
    seen = {tuple((a @ np.array(x)) % p) for x in itertools.product(range(p), repeat=a.shape[1])}
    return len(seen)


@given(matrices(max_side=3))
def test_rank_matches_span_count(pa):
    p, a = pa
    assert p ** la.rank(a, p) == span_size(a, p)


@given(matrices())
def test_nullspace_is_kernel(pa):
    p, a = pa
    n = la.nullspace(a, p)
    assert n.shape == (a.shape[1], a.shape[1] - la.rank(a, p))
    assert not np.any((a @ n) % p)
    assert la.rank(n, p) == n.shape[1]


@given(matrices(), st.data())
def test_solve_finds_solution_when_consistent(pa, data):
    p, a = pa
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])),
                 dtype=np.int64).reshape(a.shape[1], 1)
    b = (a @ x) % p
    y = la.solve(a, b, p)
    assert y is not None
    assert np.array_equal((a @ y) % p, b)


def test_solve_inconsistent():
    a = np.array([[1, 0], [1, 0]])
    assert la.solve(a, np.array([[1], [0]]), 2) is None


@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(0, 10**6))
def test_inverse(p, n, seed):
    m = la.random_invertible(np.random.default_rng(seed), n, p)
    assert np.array_equal((m @ la.inverse(m, p)) % p, la.eye(n))


def test_rref_small_example():
    r, piv = la.rref(np.array([[0, 1, 1], [1, 1, 0]]), 2)
    assert piv == [0, 1]
    assert np.array_equal(r, [[1, 0, 1], [0, 1, 1]])


def test_matrix_equations_two_unknowns():
    # X + Y = I, X = 0 over F_2
    eqs = la.MatrixEquations(2)
    eqs.unknown("x", 2, 2)
    eqs.unknown("y", 2, 2)
    eqs.equation([(None, "x", None), (None, "y", None)], la.eye(2))
    eqs.equation([(None, "x", None)], la.zeros(2, 2))
    sol = eqs.solve()
    assert np.array_equal(sol["y"], la.eye(2))
    assert eqs.solution_dimension() == 0


@pytest.mark.parametrize("p", PRIMES)
def test_quotient_map_kernel_is_sub(p):
    sub = np.array([[1], [1], [0]])
    q, s = la.quotient_map(sub, p)
    assert not np.any((q @ sub) % p)
    assert q.shape[0] == 2
