import pytest
from hypothesis import given, settings, strategies as st

from reedykit import fibration as fb
from reedykit import fincat as fc
from reedykit import instances as ins
from reedykit import reedy as rd
from reedykit.diagram.kan import left_quillen_oracle

VALID = ins.fixture_names(valid_only=True)


def _functors(max_objects=2, cap=6):
    out = []
    names = ins.small_fixtures(max_objects)
    for a in names:
        for b in names:
            out += ins.enumerate_functors(ins.fixture(a), ins.fixture(b), limit=cap)
    return out


FUNCTORS = _functors()


def test_identity_is_both_fibrations():
    for name in VALID:
        f = rd.identity_reedy_functor(ins.fixture(name))
        assert fb.is_left_fibration(f) and fb.is_right_fibration(f)


@pytest.mark.parametrize("name", [n for n in VALID if rd.is_direct(ins.fixture(n))])
def test_direct_categories_are_left_fibrant(name):
    assert fb.is_left_fibrant(ins.fixture(name))


def test_functors_between_direct_categories_are_left_fibrations():
    direct = [n for n in ins.small_fixtures(3) if rd.is_direct(ins.fixture(n))]
    for a in direct:
        for b in direct:
            for f in ins.enumerate_functors(ins.fixture(a), ins.fixture(b), limit=5):
                assert fb.is_left_fibration(f)


def test_parallel_pair_not_left_fibrant_with_witness():
    v = fb.is_left_fibrant(ins.fixture("parallel-pair"))
    assert not v
    assert v.witness is not None and v.witness.components == 2
    assert not fc.nerve_is_empty_or_connected(v.witness_category)
    assert len(v.witness_components) == 2
    js = v.to_json()
    assert js["verdict"] is False and len(js["witness"]["components"]) == 2


def test_diagonal_of_delta2_is_left_fibration():
    assert fb.is_left_fibration(rd.diagonal(ins.fixture("delta2")))


@pytest.mark.parametrize("name", VALID)
def test_fibrancy_agrees_with_matching_and_latching_categories(name):
    r = ins.fixture(name)
    assert fb.is_left_fibrant(r).verdict == fb.left_fibrant_by_matching(r)
    assert fb.is_right_fibrant(r).verdict == fb.right_fibrant_by_latching(r)


def test_negative_witness_is_minimal():
    for f in FUNCTORS:
        v = fb.is_left_fibration(f)
        if v:
            continue
        bad = [c.objects for c in v.checked if not c.ok]
        assert v.witness.objects == min(bad)
        assert not fc.nerve_is_empty_or_connected(v.witness_category)


@settings(max_examples=40)
@given(st.sampled_from(FUNCTORS))
def test_four_characterizations_agree(f):
    left = fb.lemma_verdicts(f)
    assert len(set(left.values())) == 1, left
    right = fb.right_lemma_verdicts(f)
    assert len(set(right.values())) == 1, right


@settings(max_examples=40)
@given(st.sampled_from(FUNCTORS))
def test_left_is_right_of_opposite(f):
    assert fb.is_left_fibration(f).verdict == fb.is_right_fibration(rd.opposite_reedy_functor(f)).verdict


@settings(max_examples=15)
@given(st.sampled_from(FUNCTORS))
def test_nerve_criterion_matches_quillen_oracle(f):
    assert fb.is_left_fibration(f).verdict == left_quillen_oracle(f).verdict


def test_parallel_pair_fails_the_quillen_oracle():
    f = rd.to_terminal(ins.fixture("parallel-pair"))
    oracle = left_quillen_oracle(f)
    assert not oracle and oracle.failures


@pytest.mark.parametrize("name,valid", [
    ("discrete2", True), ("delta1", True), ("delta2", True),
    ("delta2/simplex1", True), ("parallel-pair", False),
])
def test_monoidal_diagonal_validity(name, valid):
    rep = fb.monoidal_diagonal_valid(ins.fixture(name))
    assert rep.valid == valid
    if not valid:
        assert not rep.left_fibrant


def _coequalizing_fork():
    """Inverse category x -p-> y =g,h=> z with g∘p = h∘p, so p is not epi."""
    objs = ("x", "y", "z")
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "id_z": ("z", "z"),
            "p": ("x", "y"), "g": ("y", "z"), "h": ("y", "z"), "k": ("x", "z")}
    ids = {o: f"id_{o}" for o in objs}
    table = {(ids[b], f): f for f, (a, b) in mors.items()}
    table.update({(f, ids[a]): f for f, (a, b) in mors.items()})
    table[("g", "p")] = table[("h", "p")] = "k"
    base = fc.FiniteCategory(objs, mors, ids, table)
    return rd.ReedyCategory.from_classes(base, {"x": 2, "y": 1, "z": 0}, (), ["p", "g", "h", "k"])


def test_non_epimorphism_reported():
    r = _coequalizing_fork()
    assert rd.verify_reedy(r) == []
    rep = fb.monoidal_diagonal_valid(r)
    assert not rep.valid
    assert [m for m, _ in rep.non_epimorphisms] == ["p"]
    (_, (g, h)), = rep.non_epimorphisms
    assert g != h and r.base.compose(g, "p") == r.base.compose(h, "p")


def test_slice_forgetful_identity_and_simplicial_map():
    r, cc, c, emb = ins.delta_slice_data(1, "simplex1")
    d = ins.fixture("delta1")
    for gamma in c.objects:
        rep = fb.slice_forgetful_is_fibration(d, emb, c.identity(gamma))
        assert rep.verdict
    non_identity = [m for m in c.morphisms if not c.is_identity(m)]
    assert non_identity
    reps = [fb.slice_forgetful_is_fibration(d, emb, m) for m in non_identity]
    for rep in reps:
        if rep.hypothesis_ok:
            assert rep.verdict
    # some morphisms of the presheaf completion lack pullbacks; that is a hypothesis failure, not a verdict
    failing = [rep for rep in reps if not rep.hypothesis_ok]
    assert failing and all(v.kind == "missing pullback" for rep in failing for v in rep.hypothesis_failures)


def test_simplex_to_point_forgetful_is_left_fibration():
    r, cc, c, emb = ins.delta_slice_data(1, "simplex1")
    rep = fb.slice_forgetful_is_fibration(ins.fixture("delta1"), emb, "K>[0]:#0")
    assert rep.verdict
