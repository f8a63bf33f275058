from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from reedykit import fincat as fc
from reedykit.fincat import CategoryError, FiniteCategory


@st.composite
def posets(draw, max_size=5):
    """A random partial order on ``0..n-1`` as a thin category."""
    n = draw(st.integers(0, max_size))
    edges = draw(st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=8))
    # orient edges upward so the closure is antisymmetric
    rel = {(i, i) for i in range(n)} | {(min(a, b), max(a, b)) for a, b in edges if a < n and b < n}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in iproduct(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    elems = [str(i) for i in range(n)]
    return fc.poset(elems, lambda a, b: (int(a), int(b)) in rel), rel


def _components_oracle(n, rel):
    seen, count = set(), 0
    for start in range(n):
        if start in seen:
            continue
        count += 1
        stack = [start]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack += [b for a, b in rel if a == x] + [a for a, b in rel if b == x]
    return count


@given(posets())
def test_posets_are_valid_categories(data):
    c, rel = data
    assert fc.validate_category(c) == []
    assert len(c.morphisms) == len(rel)


@given(posets())
def test_opposite_is_an_involution(data):
    c, _ = data
    assert fc.validate_category(fc.opposite(c)) == []
    assert fc.opposite(fc.opposite(c)) == c


@given(posets(max_size=3), posets(max_size=3))
def test_product_counts(d1, d2):
    (a, _), (b, _) = d1, d2
    p = fc.product(a, b)
    assert fc.validate_category(p) == []
    assert len(p.objects) == len(a.objects) * len(b.objects)
    assert len(p.morphisms) == len(a.morphisms) * len(b.morphisms)


@given(posets())
def test_components_match_graph_search(data):
    c, rel = data
    assert len(fc.connected_components(c)) == _components_oracle(len(c.objects), rel)
    assert fc.nerve_is_empty_or_connected(c) == (_components_oracle(len(c.objects), rel) <= 1)


@given(posets(max_size=4), st.data())
def test_slice_of_identity_has_one_object_per_arrow(d, data):
    c, _ = d
    if not c.objects:
        return
    gamma = data.draw(st.sampled_from(c.objects))
    cc = fc.comma(fc.identity_functor(c), gamma)
    assert fc.validate_category(cc.category) == []
    assert len(cc.category.objects) == len(c.morphisms_to(gamma))
    co = fc.cocomma(fc.identity_functor(c), gamma)
    assert len(co.category.objects) == len(c.morphisms_from(gamma))
    # the slice over γ has a terminal object, hence a connected nerve
    assert fc.nerve_is_empty_or_connected(cc.category)


def test_broken_composition_is_reported():
    c = fc.ordinal(2)
    table = dict(c.table)
    table[("1<2", "0<1")] = "id_0"
    bad = FiniteCategory(c.objects, c.morphisms, c.identities, table)
    kinds = {v.kind for v in fc.validate_category(bad)}
    assert kinds


def test_missing_composite_raises():
    c = fc.discrete(["a", "b"])
    with pytest.raises(CategoryError):
        c.compose("id_a", "id_b")


def test_duplicate_objects_rejected():
    with pytest.raises(CategoryError):
        FiniteCategory(("a", "a"), {}, {}, {})


def test_epimorphisms_in_a_poset_and_a_fork():
    c = fc.ordinal(1)
    assert fc.is_epimorphism(c, "0<1")
    # two parallel arrows out of the target make m non-epi when m coequalizes them
    objs = ("x", "y", "z")
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "id_z": ("z", "z"),
            "m": ("x", "y"), "g": ("y", "z"), "h": ("y", "z"), "k": ("x", "z")}
    ids = {o: f"id_{o}" for o in objs}
    table = {(ids[b], f): f for f, (a, b) in mors.items()}
    table.update({(f, ids[a]): f for f, (a, b) in mors.items()})
    table[("g", "m")] = "k"
    table[("h", "m")] = "k"
    fork = FiniteCategory(objs, mors, ids, table)
    assert fc.validate_category(fork) == []
    assert not fc.is_epimorphism(fork, "m")
    assert set(fc.epimorphism_witness(fork, "m")) == {"g", "h"}


def test_relabeling_detects_isomorphism():
    c = fc.ordinal(2)
    d = fc.relabel(c, {"0": "a", "1": "b", "2": "c"}, {m: "m" + m for m in c.morphisms})
    assert fc.isomorphic_by_relabeling(c, d)
    assert not fc.isomorphic_by_relabeling(c, fc.discrete(["0", "1", "2"]))


def test_fully_faithful():
    c = fc.ordinal(1)
    assert fc.is_fully_faithful(fc.identity_functor(c))
    assert not fc.is_fully_faithful(fc.functor_to_terminal(fc.discrete(["a", "b"])))
