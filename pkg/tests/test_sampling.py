import numpy as np
from hypothesis import given, strategies as st

from reedykit import chainlab as ch
from reedykit import instances as ins
from reedykit import sampling as smp
from reedykit.diagram import core
from reedykit.diagram.core import COVARIANT, PRESHEAF


@given(st.integers(0, 2**31), st.integers(0, 50))
def test_seeded_streams_repeat(seed, salt):
    a = smp.rng_for(seed, salt).integers(0, 10**9, size=5)
    b = smp.rng_for(seed, salt).integers(0, 10**9, size=5)
    assert (a == b).all()


def test_salts_separate_streams():
    a = smp.rng_for(0, 1).integers(0, 10**9, size=5)
    b = smp.rng_for(0, 2).integers(0, 10**9, size=5)
    assert (a != b).any()


@given(st.integers(0, 2**31))
def test_random_diagram_is_deterministic(seed):
    r = ins.fixture("delta1")
    x = smp.random_diagram(np.random.default_rng(seed), r, PRESHEAF)
    y = smp.random_diagram(np.random.default_rng(seed), r, PRESHEAF)
    assert x == y


@given(st.data())
def test_dimension_bound(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    r = ins.fixture(data.draw(st.sampled_from(["delta1", "span", "ordinal2", "delta2"])))
    bound = data.draw(st.integers(1, 3))
    x = smp.random_diagram(rng, r, data.draw(st.sampled_from([COVARIANT, PRESHEAF])), bound)
    assert smp.max_dim(x) <= bound


@given(st.data())
def test_complex_samplers(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    x = smp.random_complex(rng)
    assert ch.validate_complex(x) == []
    f = smp.random_map(rng, x, smp.random_complex(rng))
    assert ch.is_chain_map(f)
    c = smp.random_complex_cofibration(rng)
    assert ch.is_injective(c)
    w = smp.random_complex_weq(rng)
    assert ch.is_quasi_isomorphism(w)


@given(st.data())
def test_random_natural_map_is_natural(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    r = ins.fixture("parallel-pair")
    phi = smp.random_diagram_map(rng, r, COVARIANT)
    assert core.validate_diagram_map(phi) == []
