import itertools

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from reedykit import chainlab as ch
from reedykit import linalg as la
from reedykit import reedy as rd
from reedykit import sampling as sp
from reedykit.diagram import core
from reedykit.diagram import limits as lm

seeds = st.integers(0, 2**32 - 1)


def brute_homology(x):
    """Betti numbers over F_2 by enumerating every vector of each degree."""
    out = {}
    for n, k in x.dims.items():
        vecs = [np.array(v) for v in itertools.product(range(2), repeat=k)]
        cycles = [v for v in vecs if not np.any(x.diff(n) @ v % 2)]
        kb = x.dim(n + 1)
        bounds = {tuple(x.diff(n + 1) @ np.array(w) % 2) for w in itertools.product(range(2), repeat=kb)}
        h = int(round(np.log2(len(cycles)))) - int(round(np.log2(len(bounds))))
        if h:
            out[n] = h
    return out


@given(seeds)
def test_random_complex_squares_to_zero(seed):
    x = sp.random_complex(sp.rng_for(seed), max_dim=3)
    assert ch.validate_complex(x) == []


@given(seeds)
def test_homology_matches_enumeration(seed):
    x = sp.random_complex(sp.rng_for(seed), max_dim=3)
    assert ch.homology_dims(x) == brute_homology(x)


def test_sphere_and_disk():
    assert ch.homology_dims(ch.sphere(2)) == {2: 1}
    assert ch.is_acyclic(ch.disk(1))
    assert ch.disk(1).dims == {0: 1, 1: 1}


@given(seeds)
def test_random_map_is_chain_map(seed):
    rng = sp.rng_for(seed)
    x, y = sp.random_complex(rng), sp.random_complex(rng)
    assert ch.is_chain_map(sp.random_map(rng, x, y))


@given(seeds)
def test_hom_space_dimension_is_degree_zero_cycles(seed):
    rng = sp.rng_for(seed)
    x, y = sp.random_complex(rng), sp.random_complex(rng)
    h = ch.hom_complex(x, y)
    assert ch.validate_complex(h) == []
    cycles0 = h.dim(0) - h.diff_rank(0)
    assert ch.hom_dimension(x, y) == cycles0


@given(seeds)
def test_tensor_is_complex_and_kunneth(seed):
    rng = sp.rng_for(seed)
    x, y = sp.random_complex(rng), sp.random_complex(rng)
    t = ch.tensor(x, y)
    assert ch.validate_complex(t) == []
    hx, hy = ch.homology_dims(x), ch.homology_dims(y)
    expect = {}
    for i, a in hx.items():
        for j, b in hy.items():
            expect[i + j] = expect.get(i + j, 0) + a * b
    assert ch.homology_dims(t) == expect


@given(seeds)
def test_pushout_universal_square(seed):
    rng = sp.rng_for(seed)
    f = sp.random_complex_cofibration(rng)
    g = sp.random_map(rng, f.src, sp.random_complex(rng))
    po = ch.pushout(f, g)
    assert ch.compose(po.left, f) == ch.compose(po.right, g)
    assert po.induced(po.left, po.right) == ch.identity(po.obj)


@given(seeds)
def test_pullback_universal_square(seed):
    rng = sp.rng_for(seed)
    f = ch.dual_map(sp.random_complex_cofibration(rng))
    g = sp.random_map(rng, sp.random_complex(rng), f.dst)
    pb = ch.pullback(f, g)
    assert ch.compose(f, pb.left) == ch.compose(g, pb.right)
    assert pb.induced(pb.left, pb.right) == ch.identity(pb.obj)


@given(seeds)
def test_kernel_and_cokernel_exact(seed):
    rng = sp.rng_for(seed)
    x, y = sp.random_complex(rng), sp.random_complex(rng)
    f = sp.random_map(rng, x, y)
    k, c = ch.kernel(f), ch.cokernel(f)
    assert ch.compose(f, k.inclusion) == ch.zero_map(k.obj, y)
    assert ch.compose(c.projection, f) == ch.zero_map(x, c.obj)
    for n in x.dims:
        assert k.obj.dim(n) == x.dim(n) - la.rank(f.comp(n), 2)
    for n in y.dims:
        assert c.obj.dim(n) == y.dim(n) - la.rank(f.comp(n), 2)


@given(seeds)
def test_find_isomorphism_on_shuffled_copy(seed):
    rng = sp.rng_for(seed)
    x = sp.random_complex(rng, max_dim=3)
    g = {n: la.random_invertible(rng, k, 2) for n, k in x.dims.items()}
    d = {n: g[n - 1] @ x.diff(n) @ la.inverse(g[n], 2) % 2 for n in x.dims if x.dim(n - 1)}
    y = ch.ChainComplex(2, x.dims, d)
    iso = ch.find_isomorphism(x, y)
    assert iso is not None and ch.is_isomorphism(iso)


@given(seeds)
def test_pushout_of_weq_along_cofibration_is_weq(seed):
    rng = sp.rng_for(seed)
    i = sp.random_complex_cofibration(rng)
    w = sp.random_complex_weq(rng, i.src)
    assert ch.is_quasi_isomorphism(w)
    assert ch.is_quasi_isomorphism(ch.pushout(i, w).left)


@given(seeds)
def test_lifting_cofibration_against_trivial_fibration(seed):
    rng = sp.rng_for(seed)
    i = sp.random_complex_cofibration(rng)
    _, q = ch.factor_cofibration_trivial_fibration(sp.random_map(rng, sp.random_complex(rng), sp.random_complex(rng)))
    assert ch.classify_map(q).trivial_fibration
    # squares are drawn from the solution space over the one-object index
    star = rd.terminal_reedy()
    di, dq = core.constant_map(star, i), core.constant_map(star, q)
    u, v = lm.random_square(di, dq, rng)
    (a,) = star.objects
    h = ch.solve_lifting(i, q, u[a], v[a])
    assert h is not None
    assert ch.compose(h, i) == u[a] and ch.compose(q, h) == v[a]


def test_lifting_fails_without_cofibration():
    # S^0 -> 0 is not injective; it has no lift against D^1 -> 0 for u = inclusion
    s0, d1 = ch.sphere(0), ch.disk(1)
    i = ch.to_zero(s0)
    q = ch.to_zero(d1)
    u = ch.ChainMap(s0, d1, {0: [[1]]})
    v = ch.zero_map(ch.zero_complex(), ch.zero_complex())
    assert ch.solve_lifting(i, q, u, v) is None


def test_dual_is_involution(rng):
    x = sp.random_complex(rng, max_dim=3)
    assert ch.dual(ch.dual(x)) == x


def test_prime_mismatch():
    with pytest.raises(ch.PrimeMismatch):
        ch.ChainMap(ch.unit(2), ch.unit(3), {})


@pytest.mark.parametrize("p", [2, 3])
def test_factorization(p, rng):
    x = ch.sphere(0, p)
    f = ch.to_zero(x)
    i, q = ch.factor_cofibration_trivial_fibration(f)
    assert ch.compose(q, i) == f
    assert ch.is_injective(i) and ch.classify_map(q).trivial_fibration
