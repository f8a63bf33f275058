import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedykit import chainlab as ch
from reedykit import instances as ins
from reedykit import sampling as smp
from reedykit.diagram import core
from reedykit.diagram import limits as lm
from reedykit.diagram.core import COVARIANT, PRESHEAF, Diagram, DiagramMap

SHAPES = ["terminal", "discrete2", "ordinal1", "ordinal1-op", "span", "cospan", "delta1", "parallel-pair"]
VARIANCES = [COVARIANT, PRESHEAF]


def _rng(data):
    return np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))


@given(st.data())
def test_random_diagrams_and_maps_are_valid(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    phi = smp.random_diagram_map(rng, r, data.draw(st.sampled_from(VARIANCES)))
    assert core.validate_diagram(phi.src) == []
    assert core.validate_diagram(phi.dst) == []
    assert core.validate_diagram_map(phi) == []


def test_broken_functoriality_is_reported():
    r = ins.fixture("ordinal1")
    x = core.constant(r, ch.unit(), COVARIANT)
    maps = dict(x.maps)
    maps[r.base.identity("0")] = ch.zero_map(ch.unit(), ch.unit())
    assert core.validate_diagram(Diagram(r, COVARIANT, x.objects, maps))
    r2 = ins.fixture("ordinal2")
    y = core.constant(r2, ch.unit(), COVARIANT)
    maps = dict(y.maps)
    maps["0<2"] = ch.zero_map(ch.unit(), ch.unit())
    assert core.validate_diagram(Diagram(r2, COVARIANT, y.objects, maps))


def test_unnatural_map_is_reported():
    r = ins.fixture("ordinal1")
    x = core.constant(r, ch.unit(), COVARIANT)
    comps = {"0": ch.identity(ch.unit()), "1": ch.zero_map(ch.unit(), ch.unit())}
    assert core.validate_diagram_map(DiagramMap(x, x, comps))


def test_unknown_variance_rejected():
    with pytest.raises(core.DiagramError):
        core.constant(ins.fixture("terminal"), ch.unit(), "sideways")


# -- colimits and limits ------------------------------------------------------

@given(st.data())
def test_colimit_of_discrete_diagram_is_direct_sum(data):
    rng = _rng(data)
    x = smp.random_diagram(rng, ins.fixture("discrete3"), COVARIANT)
    col = lm.colimit(x)
    total = {}
    for a in x.shape.objects:
        for n, d in x[a].dims.items():
            total[n] = total.get(n, 0) + d
    assert {n: d for n, d in col.obj.dims.items() if d} == {n: d for n, d in total.items() if d}
    lim = lm.limit(x)
    assert lim.obj.dims == col.obj.dims


def test_empty_colimit_is_zero():
    from reedykit import fincat as fc

    col = lm.colimit_of(fc.empty(), {}, {}, 2)
    assert col.obj.is_zero()
    assert lm.limit_of(fc.empty(), {}, {}, 2).obj.is_zero()


def _span_diagram(f, g):
    r = ins.fixture("span")
    base = r.base
    # span fixture: the apex has two raising arrows out of it
    (apex,) = [a for a in base.objects if len([m for m in base.morphisms_from(a) if not base.is_identity(m)]) == 2]
    left, right = [m for m in base.morphisms_from(apex) if not base.is_identity(m)]
    objs = {apex: f.src, base.dst(left): f.dst, base.dst(right): g.dst}
    maps = {left: f, right: g}
    maps.update({base.identity(a): ch.identity(c) for a, c in objs.items()})
    return Diagram(r, COVARIANT, objs, maps)


@given(st.data())
def test_span_colimit_matches_pushout(data):
    rng = _rng(data)
    a = smp.random_complex(rng)
    f = smp.random_map(rng, a, smp.random_complex(rng))
    g = smp.random_map(rng, a, smp.random_complex(rng))
    x = _span_diagram(f, g)
    assert core.validate_diagram(x) == []
    col = lm.colimit(x)
    po = ch.pushout(f, g)
    assert ch.find_isomorphism(col.obj, po.obj) is not None


@given(st.data())
def test_colimit_universal_property(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    x = smp.random_diagram(rng, r, data.draw(st.sampled_from(VARIANCES)))
    col = lm.colimit(x)
    base = x.shape.base
    for m, (a, b) in base.morphisms.items():
        assert ch.compose(col.legs[b], x.maps[m]) == col.legs[a]
    # induced map out of the colimit into itself along the legs is the identity
    assert col.induced(col.legs, col.obj) == ch.identity(col.obj)


@given(st.data())
def test_limit_universal_property(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    x = smp.random_diagram(rng, r, data.draw(st.sampled_from(VARIANCES)))
    lim = lm.limit(x)
    for m, (a, b) in x.shape.base.morphisms.items():
        assert ch.compose(x.maps[m], lim.legs[a]) == lim.legs[b]
    assert lim.induced(lim.legs, lim.obj) == ch.identity(lim.obj)


# -- latching and matching -------------------------------------------------------

@given(st.data())
def test_latching_of_constant_delta1(data):
    rng = _rng(data)
    c = smp.random_complex(rng)
    d1 = ins.fixture("delta1")
    cov = core.constant(d1, c, COVARIANT)
    # two cofaces [0] -> [1], no maps between them
    assert lm.latching_object(cov, "[1]").dims == {n: 2 * k for n, k in c.dims.items()}
    assert lm.latching_object(cov, "[0]").is_zero()
    # one codegeneracy [1] -> [0]
    assert lm.matching_object(cov, "[1]").dims == c.dims
    pre = core.constant(d1, c, PRESHEAF)
    assert lm.latching_object(pre, "[1]").dims == c.dims
    assert lm.matching_object(pre, "[1]").dims == {n: 2 * k for n, k in c.dims.items()}


def test_zero_to_constant_is_objectwise_but_not_reedy_cofibration():
    phi = core.from_zero(core.constant(ins.fixture("delta1"), ch.unit(), COVARIANT))
    assert lm.classify_objectwise(phi).cof
    cls = lm.classify_reedy(phi)
    assert not cls.cof
    assert not ch.is_injective(lm.relative_latching_map(phi, "[1]"))


def test_identity_is_in_every_class():
    rng = np.random.default_rng(3)
    x = smp.random_diagram(rng, ins.fixture("delta1"), PRESHEAF)
    cls = lm.classify_reedy(core.identity(x))
    assert cls.cof and cls.triv_cof and cls.fib and cls.triv_fib and cls.weq


@settings(max_examples=30)
@given(st.data())
def test_sandwich_property(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    phi = smp.random_diagram_map(rng, r, data.draw(st.sampled_from(VARIANCES)))
    reedy, obj = lm.classify_reedy(phi), lm.classify_objectwise(phi)
    assert reedy.weq == obj.weq
    assert not reedy.cof or obj.cof
    assert not reedy.fib or obj.fib
    assert reedy.triv_cof == (reedy.cof and reedy.weq)
    assert reedy.triv_fib == (reedy.fib and reedy.weq)


@settings(max_examples=20)
@given(st.data())
def test_sampled_classes_hold(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(SHAPES)))
    v = data.draw(st.sampled_from(VARIANCES))
    trivial = data.draw(st.booleans())
    cls = lm.classify_reedy(smp.random_cofibration(rng, r, v, trivial=trivial))
    assert cls.cof and (cls.triv_cof or not trivial)
    cls = lm.classify_reedy(smp.random_fibration(rng, r, v, trivial=trivial))
    assert cls.fib and (cls.triv_fib or not trivial)
    assert lm.classify_reedy(smp.random_weak_equivalence(rng, r, v)).weq


@settings(max_examples=20)
@given(st.data())
def test_cofibrations_lift_against_trivial_fibrations(data):
    rng = _rng(data)
    r = ins.fixture(data.draw(st.sampled_from(["ordinal1", "delta1", "span", "parallel-pair"])))
    v = data.draw(st.sampled_from(VARIANCES))
    trivial_left = data.draw(st.booleans())
    i = smp.random_cofibration(rng, r, v, trivial=trivial_left, dim_bound=2)
    q = smp.random_fibration(rng, r, v, trivial=not trivial_left, dim_bound=2)
    u, w = lm.random_square(i, q, rng)
    h = lm.solve_lifting(i, q, u, w)
    assert h is not None
    assert core.compose(h, i) == u and core.compose(q, h) == w
    assert lm.has_lifting_property(i, q)


def _split_coface_diagram():
    """E on Δ≤1 with E_0 = k, E_1 = k ⊕ D where the two cofaces differ by the
    bottom of the disk D.  The projection E -> const k is a Reedy trivial
    fibration with no natural section."""
    r = ins.fixture("delta1")
    k = ch.unit()
    e1 = ch.ChainComplex(2, {0: 2, 1: 1}, {1: [[0], [1]]})
    da = ch.ChainMap(k, e1, {0: [[1], [0]]})
    db = ch.ChainMap(k, e1, {0: [[1], [1]]})
    s = ch.ChainMap(e1, k, {0: [[1, 0]]})
    maps = {"[0]>[1]:0": da, "[0]>[1]:1": db, "[1]>[0]:00": s,
            "[1]>[1]:00": ch.compose(da, s), "[1]>[1]:11": ch.compose(db, s),
            "[0]>[0]:0": ch.identity(k), "[1]>[1]:01": ch.identity(e1)}
    e = Diagram(r, COVARIANT, {"[0]": k, "[1]": e1}, maps)
    b = core.constant(r, k, COVARIANT)
    q = DiagramMap(e, b, {"[0]": ch.identity(k), "[1]": s})
    return r, q


def test_objectwise_cofibration_fails_to_lift():
    r, q = _split_coface_diagram()
    assert core.validate_diagram(q.src) == [] and core.validate_diagram_map(q) == []
    assert lm.classify_reedy(q).triv_fib
    i = core.from_zero(q.dst)
    assert lm.classify_objectwise(i).cof and not lm.classify_reedy(i).cof
    assert not lm.has_lifting_property(i, q)
    assert lm.solve_lifting(i, q, core.from_zero(q.src), core.identity(q.dst)) is None


def test_hom_dimension_of_constant_diagrams():
    # natural maps between constant diagrams on a connected index are just chain maps
    r = ins.fixture("delta1")
    x, y = ch.disk(1), ch.sphere(1)
    assert lm.hom_dimension(core.constant(r, x), core.constant(r, y)) == ch.hom_dimension(x, y)
