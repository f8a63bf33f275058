import time
from math import comb

import pytest
from hypothesis import given, strategies as st

from reedykit import fincat as fc
from reedykit import instances as ins
from reedykit import reedy as rd
from reedykit import simplicial as sx

VALID = ins.fixture_names(valid_only=True)


def _monotone_count(a, b):
    # stars and bars: monotone maps [a] -> [b]
    return comb(a + b + 1, a + 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_truncated_simplex_category_counts(n):
    d = sx.delta(n)
    assert len(d.base.morphisms) == sum(_monotone_count(a, b) for a in range(n + 1) for b in range(n + 1))
    injections = sum(comb(b + 1, a + 1) for a in range(n + 1) for b in range(a, n + 1))
    # surjections [a] -> [b]: choose b cut points among a gaps
    surjections = sum(comb(a, b) for a in range(n + 1) for b in range(a + 1))
    assert len(d.raising) == injections
    assert len(d.lowering) == surjections


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_truncated_simplex_category_is_reedy(n):
    t0 = time.perf_counter()
    assert rd.verify_reedy(sx.delta(n)) == []
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.parametrize("name", VALID)
def test_every_valid_fixture_verifies(name):
    r = ins.fixture(name)
    assert rd.verify_reedy(r) == []
    for m in r.base.morphisms:
        low, rise = rd.factorize(r, m)
        assert low in r.lowering and rise in r.raising
        assert r.base.compose(rise, low) == m


def test_nonunique_factorization_rejected_with_witness():
    r = ins.fixture("nonunique-factorization")
    bad = rd.verify_reedy(r)
    assert [v.kind for v in bad] == ["non-unique factorization"]
    w = bad[0].witness
    assert w["morphism"] == "m"
    assert sorted(map(tuple, w["factorizations"])) == [("p", "i"), ("q", "j")]
    for low, rise in w["factorizations"]:
        assert r.base.compose(rise, low) == "m"


def test_wrong_degree_reports_linear_extension_violation():
    r = ins.fixture("ordinal1")
    bad = rd.ReedyCategory(r.base, {a: 0 for a in r.objects}, r.raising, r.lowering, r.factorization)
    assert "linear extension violation" in {v.kind for v in rd.verify_reedy(bad)}


def test_missing_identity_reports_lluf():
    r = ins.fixture("ordinal1")
    bad = rd.ReedyCategory(r.base, r.degree, r.raising - {r.base.identity("0")}, r.lowering, r.factorization)
    assert "lluf" in {v.kind for v in rd.verify_reedy(bad)}


@pytest.mark.parametrize("name", VALID)
def test_opposite_swaps_classes(name):
    r = ins.fixture(name)
    op = rd.opposite_reedy(r)
    assert rd.verify_reedy(op) == []
    assert op.raising == r.lowering and op.lowering == r.raising
    assert rd.opposite_reedy(op) is r


@pytest.mark.parametrize("name", VALID)
def test_degree_search_finds_a_valid_degree(name):
    r = ins.fixture(name)
    deg = rd.search_degrees(r.base, r.raising, r.lowering)
    assert deg is not None
    r2 = rd.ReedyCategory(r.base, deg, r.raising, r.lowering, r.factorization)
    assert rd.verify_reedy(r2) == []


def test_degree_search_detects_cycle():
    r = ins.fixture("ordinal1")
    # declaring 0<1 both raising and lowering forces deg 0 < deg 1 < deg 0
    assert rd.search_degrees(r.base, {"0<1"}, {"0<1"}) is None


@given(st.sampled_from(["terminal", "ordinal1", "delta1", "span", "parallel-pair"]),
       st.sampled_from(["terminal", "ordinal1-op", "delta1", "discrete2"]))
def test_products_of_reedy_categories_are_reedy(a, b):
    p = rd.product_reedy(ins.fixture(a), ins.fixture(b))
    assert rd.verify_reedy(p) == []


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_latching_and_matching_categories_of_delta(k):
    d = sx.delta(3)
    lat = rd.latching_category(d, sx.obj(k))
    mat = rd.matching_category(d, sx.obj(k))
    # proper injections into [k] and proper surjections out of [k]
    assert len(lat.objects) == sum(comb(k + 1, a + 1) for a in range(k))
    assert len(mat.objects) == sum(comb(k, b) for b in range(k))
    assert fc.validate_category(lat) == [] and fc.validate_category(mat) == []


@pytest.mark.parametrize("name", ["delta2", "span", "split-idempotent", "delta1xdelta1"])
def test_direct_and_inverse_parts(name):
    r = ins.fixture(name)
    assert rd.is_direct(rd.raise_part(r))
    assert rd.is_inverse(rd.lower_part(r))
    assert rd.verify_reedy(rd.raise_part(r)) == []
    assert rd.verify_reedy(rd.lower_part(r)) == []


@pytest.mark.parametrize("name,objects", [
    ("delta1/simplex1", 2 + 3),
    ("delta2/simplex1", 2 + 3 + 4),
    ("delta2/boundary2", 3 + 6 + 9),
    ("delta2/horn21", 3 + 5 + 7),
])
def test_simplex_slices(name, objects):
    # objects of Δ≤n/K are the simplices of K up to dimension n
    assert len(ins.fixture(name).objects) == objects


def test_functor_examples_preserve_classes():
    for r in [ins.fixture("delta2"), ins.fixture("span")]:
        assert rd.verify_reedy_functor(rd.identity_reedy_functor(r)) == []
        assert rd.verify_reedy_functor(rd.to_terminal(r)) == []
        assert rd.verify_reedy_functor(rd.diagonal(r)) == []


def test_enumerated_functors_are_reedy_functors():
    fs = ins.enumerate_functors(ins.fixture("ordinal1"), ins.fixture("delta1"))
    # [1] -> Δ≤1 preserving raising: pick images of 0 < 1 among raising arrows
    raising = [m for m in ins.fixture("delta1").raising]
    assert len(fs) == len(raising)
    for f in fs:
        assert rd.verify_reedy_functor(f) == []
