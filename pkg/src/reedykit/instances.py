"""Library of small Reedy categories and functors used by tests and suites."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import fincat as fc
from . import reedy as rd
from . import simplicial as sx
from .fincat import FiniteCategory, FunctorData
from .reedy import ReedyCategory, ReedyFunctor


def _table_category(objects, arrows, compose_pairs, name) -> FiniteCategory:
    """Category from non-identity arrows ``{id: (src, dst)}`` and the
    non-identity composites ``{(g, f): gf}``; identities are ``id_<obj>``."""
    morphisms = {f"id_{a}": (a, a) for a in objects}
    morphisms.update(arrows)
    identities = {a: f"id_{a}" for a in objects}
    table = {}
    for f, (s, t) in morphisms.items():
        table[(f"id_{t}", f)] = f
        table[(f, f"id_{s}")] = f
    table.update(compose_pairs)
    return FiniteCategory(tuple(objects), morphisms, identities, table, name)


def ordinal_direct(n: int) -> ReedyCategory:
    c = fc.ordinal(n)
    c = FiniteCategory(c.objects, c.morphisms, c.identities, c.table, f"[{n}]")
    return rd.ReedyCategory.from_classes(c, {a: int(a) for a in c.objects}, c.morphisms, ())


def ordinal_inverse(n: int) -> ReedyCategory:
    """``[n]^op``: every arrow lowers degree."""
    c = fc.opposite(fc.ordinal(n))
    c = FiniteCategory(c.objects, c.morphisms, c.identities, c.table, f"[{n}]^op")
    return rd.ReedyCategory.from_classes(c, {a: int(a) for a in c.objects}, (), c.morphisms)


def discrete(k: int) -> ReedyCategory:
    return rd.discrete_reedy([f"x{i}" for i in range(k)], name=f"discrete{k}")


def span() -> ReedyCategory:
    """``b <- a -> c`` (the pushout shape), direct with ``a`` in degree 0."""
    c = _table_category(["a", "b", "c"], {"f": ("a", "b"), "g": ("a", "c")}, {}, "span")
    return rd.ReedyCategory.from_classes(c, {"a": 0, "b": 1, "c": 1}, ["f", "g"], ())


def cospan() -> ReedyCategory:
    """``b -> d <- c`` (the pullback shape), direct with ``d`` in degree 1."""
    c = _table_category(["b", "c", "d"], {"f": ("b", "d"), "g": ("c", "d")}, {}, "cospan")
    return rd.ReedyCategory.from_classes(c, {"b": 0, "c": 0, "d": 1}, ["f", "g"], ())


def span_inverse() -> ReedyCategory:
    """``b <- a -> c`` with both legs lowering from ``a`` in degree 1."""
    c = _table_category(["a", "b", "c"], {"f": ("a", "b"), "g": ("a", "c")}, {}, "span-inverse")
    return rd.ReedyCategory.from_classes(c, {"a": 1, "b": 0, "c": 0}, (), ["f", "g"])


def cospan_inverse() -> ReedyCategory:
    """``b -> d <- c`` with both legs lowering into ``d`` in degree 0."""
    c = _table_category(["b", "c", "d"], {"f": ("b", "d"), "g": ("c", "d")}, {}, "cospan-inverse")
    return rd.ReedyCategory.from_classes(c, {"b": 1, "c": 1, "d": 0}, (), ["f", "g"])


def parallel_pair() -> ReedyCategory:
    """Two unrelated lowering arrows ``a ⇉ b``; Reedy but not left fibrant."""
    c = _table_category(["a", "b"], {"p": ("a", "b"), "q": ("a", "b")}, {}, "parallel-pair")
    return rd.ReedyCategory.from_classes(c, {"a": 1, "b": 0}, (), ["p", "q"])


def parallel_pair_direct() -> ReedyCategory:
    c = _table_category(["a", "b"], {"p": ("a", "b"), "q": ("a", "b")}, {}, "parallel-pair-direct")
    return rd.ReedyCategory.from_classes(c, {"a": 0, "b": 1}, ["p", "q"], ())


def split_idempotent() -> ReedyCategory:
    """``s: a -> b``, ``d: b -> a`` with ``s∘d = id``; the retraction ``d∘s``
    on ``a`` factors through ``b``.  The smallest non-direct, non-inverse
    Reedy category."""
    c = _table_category(
        ["a", "b"],
        {"d": ("b", "a"), "s": ("a", "b"), "e": ("a", "a")},
        {("s", "d"): "id_b", ("d", "s"): "e", ("e", "e"): "e", ("e", "d"): "d", ("s", "e"): "s"},
        "split-idempotent",
    )
    return rd.ReedyCategory.from_classes(c, {"a": 1, "b": 0}, ["d"], ["s"])


def nonunique_factorization() -> ReedyCategory:
    """``m = i∘p = j∘q`` through two different objects of degree 0: the
    classes and degrees are fine but factorization is not unique."""
    c = _table_category(
        ["x", "y", "b", "c"],
        {"p": ("x", "b"), "q": ("x", "c"), "i": ("b", "y"), "j": ("c", "y"), "m": ("x", "y")},
        {("i", "p"): "m", ("j", "q"): "m"},
        "nonunique-factorization",
    )
    return rd.ReedyCategory.from_classes(c, {"x": 1, "y": 1, "b": 0, "c": 0}, ["i", "j"], ["p", "q"])


def delta1_squared() -> ReedyCategory:
    return rd.product_reedy(sx.delta(1), sx.delta(1))


def delta_slice(n: int, k_name: str) -> ReedyCategory:
    """``Δ≤n / K`` for one of the small simplicial sets in :data:`SIMPLICIAL_SETS`."""
    r, *_ = delta_slice_data(n, k_name)
    return r


@lru_cache(maxsize=None)
def delta_slice_data(n: int, k_name: str):
    d = sx.delta(n)
    k = SIMPLICIAL_SETS[k_name](n, d)
    r, cc, c, emb = sx.elements_category(d, "K", k)
    r = rd.ReedyCategory(
        FiniteCategory(r.base.objects, r.base.morphisms, r.base.identities, r.base.table, f"Δ≤{n}/{k_name}"),
        r.degree, r.raising, r.lowering, r.factorization,
    )
    return r, cc, c, emb


SIMPLICIAL_SETS: dict[str, Callable] = {
    "simplex1": lambda n, d: sx.standard_simplex(1, n, d),
    "simplex2": lambda n, d: sx.standard_simplex(2, n, d),
    "boundary1": lambda n, d: sx.boundary_simplex(1, n, d),
    "boundary2": lambda n, d: sx.boundary_simplex(2, n, d),
    "horn21": lambda n, d: sx.horn(2, 1, n, d),
    "horn20": lambda n, d: sx.horn(2, 0, n, d),
}


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], ReedyCategory]
    valid: bool = True
    note: str = ""


FIXTURES: dict[str, Fixture] = {f.name: f for f in [
    Fixture("terminal", rd.terminal_reedy),
    Fixture("discrete2", lambda: discrete(2)),
    Fixture("discrete3", lambda: discrete(3)),
    Fixture("ordinal1", lambda: ordinal_direct(1)),
    Fixture("ordinal2", lambda: ordinal_direct(2)),
    Fixture("ordinal1-op", lambda: ordinal_inverse(1)),
    Fixture("ordinal2-op", lambda: ordinal_inverse(2)),
    Fixture("span", span, note="pushout shape"),
    Fixture("cospan", cospan, note="pullback shape"),
    Fixture("span-inverse", span_inverse),
    Fixture("cospan-inverse", cospan_inverse),
    Fixture("parallel-pair", parallel_pair, note="Reedy, not left fibrant"),
    Fixture("parallel-pair-direct", parallel_pair_direct),
    Fixture("split-idempotent", split_idempotent),
    Fixture("delta0", lambda: sx.delta(0)),
    Fixture("delta1", lambda: sx.delta(1)),
    Fixture("delta2", lambda: sx.delta(2)),
    Fixture("delta3", lambda: sx.delta(3)),
    Fixture("delta1xdelta1", delta1_squared),
    Fixture("delta1/simplex1", lambda: delta_slice(1, "simplex1")),
    Fixture("delta1/boundary1", lambda: delta_slice(1, "boundary1")),
    Fixture("delta2/simplex1", lambda: delta_slice(2, "simplex1")),
    Fixture("delta2/horn21", lambda: delta_slice(2, "horn21")),
    Fixture("delta2/boundary2", lambda: delta_slice(2, "boundary2")),
    Fixture("nonunique-factorization", nonunique_factorization, valid=False,
            note="intentional counterexample: two (lower, raise) factorizations"),
]}


@lru_cache(maxsize=None)
def fixture(name: str) -> ReedyCategory:
    try:
        return FIXTURES[name].build()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None


def fixture_names(valid_only: bool = False) -> list[str]:
    return [n for n, f in FIXTURES.items() if f.valid or not valid_only]


def small_fixtures(max_objects: int) -> list[str]:
    return [n for n in fixture_names(valid_only=True) if len(fixture(n).objects) <= max_objects]


# -- functors ----------------------------------------------------------------

def enumerate_functors(a: ReedyCategory, b: ReedyCategory, limit: int | None = None) -> list[ReedyFunctor]:
    """All structure-preserving functors ``a -> b`` (raising to raising,
    lowering to lowering), by backtracking over object and morphism images."""
    ca, cb = a.base, b.base
    out: list[ReedyFunctor] = []
    objs = list(ca.objects)
    # morphisms in an order where generators come first helps pruning
    mors = sorted(ca.non_identity_morphisms, key=lambda m: (a.degree[ca.src(m)] + a.degree[ca.dst(m)], m))
    for images in _object_maps(objs, list(cb.objects)):
        omap = dict(zip(objs, images))
        mmap = {ca.identity(x): cb.identity(omap[x]) for x in objs}
        _extend(a, b, omap, mmap, mors, 0, out, limit)
        if limit is not None and len(out) >= limit:
            break
    return out


def _object_maps(objs, targets):
    from itertools import product as _p
    return _p(targets, repeat=len(objs))


def _extend(a, b, omap, mmap, mors, i, out, limit):
    ca, cb = a.base, b.base
    if limit is not None and len(out) >= limit:
        return
    if i == len(mors):
        out.append(ReedyFunctor.build(a, b, omap, dict(mmap)))
        return
    m = mors[i]
    s, t = ca.morphisms[m]
    for cand in cb.hom(omap[s], omap[t]):
        if m in a.raising and cand not in b.raising:
            continue
        if m in a.lowering and cand not in b.lowering:
            continue
        mmap[m] = cand
        if _consistent(ca, cb, mmap, m):
            _extend(a, b, omap, mmap, mors, i + 1, out, limit)
        del mmap[m]


def _consistent(ca, cb, mmap, m) -> bool:
    for g in ca.morphisms_from(ca.dst(m)):
        if g in mmap:
            gm = ca.table[(g, m)]
            if gm in mmap and cb.table[(mmap[g], mmap[m])] != mmap[gm]:
                return False
    for f in ca.morphisms_to(ca.src(m)):
        if f in mmap:
            mf = ca.table[(m, f)]
            if mf in mmap and cb.table[(mmap[m], mmap[f])] != mmap[mf]:
                return False
    # m may itself be a composite of already-mapped morphisms
    for (g, f), gf in ca.table.items():
        if gf == m and g in mmap and f in mmap and cb.table[(mmap[g], mmap[f])] != mmap[m]:
            return False
    return True


def diagonal_functor(r: ReedyCategory) -> ReedyFunctor:
    return rd.diagonal(r)


def to_terminal(r: ReedyCategory) -> ReedyFunctor:
    return rd.to_terminal(r)
