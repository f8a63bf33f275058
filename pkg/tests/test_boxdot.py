import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedykit import chainlab as ch
from reedykit import instances as ins
from reedykit import sampling as smp
from reedykit import simplicial as sx
from reedykit.diagram import boxdot as bd
from reedykit.diagram import core
from reedykit.diagram import limits as lm
from reedykit.diagram.core import COVARIANT, PRESHEAF

SHAPES = ["terminal", "discrete2", "ordinal1", "ordinal1-op", "span", "delta1", "parallel-pair", "delta2"]
VARIANCES = [COVARIANT, PRESHEAF]


def _rng(data):
    return np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))


def _pick(data):
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    v = data.draw(st.sampled_from(VARIANCES))
    a = data.draw(st.sampled_from(list(r.objects)))
    return r, v, a


def _scaled(dims, k):
    return {n: k * d for n, d in dims.items() if k * d}


@given(st.data())
def test_empty_presheaf_gives_zero_diagram(data):
    rng = _rng(data)
    r, v, _ = _pick(data)
    b = bd.boxdot(core.empty_presheaf(r, v), smp.random_complex(rng))
    assert all(b.diagram[g].is_zero() for g in b.diagram.shape.objects)


@given(st.data())
def test_representable_copower_dims(data):
    rng = _rng(data)
    r, v, a = _pick(data)
    x = smp.random_complex(rng)
    rep = bd.representable(r, a, v, x)
    assert core.validate_diagram(rep.diagram) == []
    shape = core.shape_of(r, v).base
    for g in shape.objects:
        assert {n: d for n, d in rep.diagram[g].dims.items() if d} == _scaled(x.dims, len(shape.hom(a, g)))


@given(st.data())
def test_yoneda_evaluation_is_iso(data):
    rng = _rng(data)
    r, v, a = _pick(data)
    y = smp.random_diagram(rng, r, v, 2)
    ev, _ = bd.yoneda_evaluation(y, a)
    assert ch.is_isomorphism(ev)


@given(st.data())
def test_boundary_comparison_is_iso(data):
    rng = _rng(data)
    r, v, a = _pick(data)
    y = smp.random_diagram(rng, r, v, 2)
    assert ch.is_isomorphism(bd.boundary_comparison(y, a))
    assert bd.boundary_comparison(y, a).dst.dims == lm.matching_object(y, a).dims


@pytest.mark.parametrize("k", [0, 1, 2])
def test_boundary_of_simplex_matches_simplicial_boundary(k):
    d = ins.fixture("delta2")
    b = bd.boundary_presheaf(d, sx.obj(k), PRESHEAF)
    expected = sx.boundary_simplex(k, 2, d) if k else core.empty_presheaf(d, PRESHEAF)
    assert {g: b.presheaf.size(g) for g in d.objects} == {g: expected.size(g) for g in d.objects}
    assert core.validate_set_presheaf(b.presheaf) == []
    # the boundary includes into the representable
    for g in d.objects:
        assert len(set(b.inclusion[g].values())) == b.presheaf.size(g)


@settings(max_examples=30)
@given(st.data())
def test_two_variable_adjunction(data):
    rng = _rng(data)
    r, v, a = _pick(data)
    k = data.draw(st.sampled_from([
        core.representable_set(r, a, v),
        bd.boundary_presheaf(r, a, v).presheaf,
        core.terminal_presheaf(r, v),
        core.empty_presheaf(r, v),
    ]))
    x = smp.random_complex(rng, 2, range(0, 2), 2)
    y = smp.random_diagram(rng, r, v, 2)
    adj = bd.check_two_variable_adjunction(k, x, y)
    assert adj.ok, adj.to_json()


@settings(max_examples=30)
@given(st.data())
def test_generating_maps_are_cofibrations(data):
    r, v, a = _pick(data)
    k_i, k_j = bd.cell_generators()
    for k, trivial in [(k_i[0], False), (k_i[1], False), (k_j[0], True)]:
        g = bd.generating_map(r, a, k, v).map
        assert core.validate_diagram_map(g) == []
        cls = lm.classify_reedy(g)
        assert cls.cof and (cls.triv_cof or not trivial)


def test_generating_set_size():
    d = ins.fixture("delta2")
    k_i, _ = bd.cell_generators()
    assert len(bd.generating_set(d, k_i)) == len(d.objects) * len(k_i)


@given(st.data())
def test_pushout_diagram_square_commutes(data):
    rng = _rng(data)
    r, v, _ = _pick(data)
    x = smp.random_diagram(rng, r, v, 2)
    f = smp.random_natural_map(rng, x, smp.random_diagram(rng, r, v, 2))
    g = smp.random_natural_map(rng, x, smp.random_diagram(rng, r, v, 2))
    po = bd.pushout_diagram(f, g)
    assert core.validate_diagram(po.diagram) == []
    assert core.compose(po.left, f) == core.compose(po.right, g)


def test_mismatched_presheaf_rejected():
    y = core.constant(ins.fixture("delta1"), ch.unit(), PRESHEAF)
    with pytest.raises(core.DiagramError):
        bd.mor_boxdot(core.terminal_presheaf(ins.fixture("delta1"), COVARIANT), y)
