import numpy as np
from hypothesis import given, settings, strategies as st

from reedykit import chainlab as ch
from reedykit import instances as ins
from reedykit import reedy as rd
from reedykit import sampling as smp
from reedykit.diagram import core
from reedykit.diagram import kan
from reedykit.diagram import limits as lm
from reedykit.diagram.core import COVARIANT, PRESHEAF
from reedykit.diagram.monoidal import coend_kan_dims

SHAPES = ["terminal", "discrete2", "ordinal1", "ordinal1-op", "span", "delta1", "parallel-pair"]
VARIANCES = [COVARIANT, PRESHEAF]


def _rng(data):
    return np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))


def _functors():
    names = ins.small_fixtures(2)
    out = []
    for a in names:
        for b in names:
            out += ins.enumerate_functors(ins.fixture(a), ins.fixture(b), limit=4)
    return out


FUNCTORS = _functors()


def _nonzero(dims):
    return {n: d for n, d in dims.items() if d}


@given(st.data())
def test_kan_along_identity_is_the_diagram(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    x = smp.random_diagram(rng, r, data.draw(st.sampled_from(VARIANCES)))
    f = rd.identity_reedy_functor(r)
    eta = kan.unit(f, x)
    assert all(ch.is_isomorphism(eta[a]) for a in x.shape.objects)


@given(st.data())
def test_kan_to_terminal_is_the_colimit(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    x = smp.random_diagram(rng, r, data.draw(st.sampled_from(VARIANCES)))
    k = kan.left_kan(rd.to_terminal(r), x).diagram
    assert ch.find_isomorphism(k["*"], lm.colimit(x).obj) is not None


@settings(max_examples=30)
@given(st.data())
def test_kan_dims_match_coend_formula(data):
    rng = _rng(data)
    f = data.draw(st.sampled_from(FUNCTORS))
    x = smp.random_diagram(rng, f.source, data.draw(st.sampled_from(VARIANCES)), 2)
    k = kan.left_kan(f, x).diagram
    coend = coend_kan_dims(f, x)
    assert {b: _nonzero(k[b].dims) for b in f.target.objects} == {b: _nonzero(coend[b]) for b in f.target.objects}


@settings(max_examples=30)
@given(st.data())
def test_triangle_identities(data):
    rng = _rng(data)
    f = data.draw(st.sampled_from(FUNCTORS))
    v = data.draw(st.sampled_from(VARIANCES))
    x = smp.random_diagram(rng, f.source, v, 2)
    y = smp.random_diagram(rng, f.target, v, 2)
    assert kan.triangle_identities(f, x, y) == (True, True)


@settings(max_examples=30)
@given(st.data())
def test_restriction_and_kan_produce_valid_diagrams(data):
    rng = _rng(data)
    f = data.draw(st.sampled_from(FUNCTORS))
    v = data.draw(st.sampled_from(VARIANCES))
    phi = smp.random_diagram_map(rng, f.target, v, 2)
    assert core.validate_diagram_map(kan.restrict_map(f, phi)) == []
    psi = smp.random_diagram_map(rng, f.source, v, 2)
    k = kan.left_kan_map(f, psi)
    assert core.validate_diagram(k.src) == [] and core.validate_diagram_map(k) == []


@settings(max_examples=20)
@given(st.data())
def test_adjunction_dimensions(data):
    # Mor(f_! X, Y) and Mor(X, f^* Y) have the same dimension
    rng = _rng(data)
    f = data.draw(st.sampled_from(FUNCTORS))
    v = data.draw(st.sampled_from(VARIANCES))
    x = smp.random_diagram(rng, f.source, v, 2)
    y = smp.random_diagram(rng, f.target, v, 2)
    assert lm.hom_dimension(kan.left_kan(f, x).diagram, y) == lm.hom_dimension(x, kan.restrict(f, y))


def test_restriction_along_composite():
    rng = np.random.default_rng(11)
    d1 = ins.fixture("delta1")
    f = rd.diagonal(d1)
    g = ins.enumerate_functors(ins.fixture("ordinal1"), d1)[0]
    y = smp.random_diagram(rng, f.target, PRESHEAF, 2)
    h = rd.compose_reedy_functors(f, g)
    a, b = kan.restrict(h, y), kan.restrict(g, kan.restrict(f, y))
    assert a == b


@settings(max_examples=10)
@given(st.sampled_from(FUNCTORS))
def test_right_oracle_matches_right_fibration(f):
    from reedykit import fibration as fb

    assert kan.right_quillen_oracle(f).verdict == fb.is_right_fibration(f).verdict


def test_restriction_rejects_wrong_index():
    import pytest

    x = core.constant(ins.fixture("delta1"), ch.unit())
    with pytest.raises(core.DiagramError):
        kan.restrict(rd.identity_reedy_functor(ins.fixture("span")), x)
