"""Truncated simplex categories, small simplicial sets, and categories of
elements of presheaves.

Morphisms of ``Δ≤n`` are monotone maps ``[a] -> [b]`` written as their image
tuple, with ids like ``"[1]>[2]:02"``.  Raising morphisms are the
injections, lowering morphisms the surjections, and the degree of ``[k]``
is ``k``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Callable, Mapping, Sequence

from . import fincat as fc
from . import reedy as rd
from .diagram.core import PRESHEAF, SetPresheaf, natural_transformations, representable_set
from .fincat import CategoryError, FiniteCategory, FunctorData
from .reedy import ReedyCategory

Monotone = tuple[int, ...]


def obj(k: int) -> str:
    return f"[{k}]"


def monotone_maps(a: int, b: int) -> list[Monotone]:
    """All monotone maps ``[a] -> [b]``."""
    return list(combinations_with_replacement(range(b + 1), a + 1))


def simplex_id(a: int, b: int, f: Monotone) -> str:
    return f"[{a}]>[{b}]:" + "".join(str(i) for i in f)


def parse_simplex_id(m: str) -> tuple[int, int, Monotone]:
    head, vals = m.split(":")
    a, b = head.split(">")
    return int(a[1:-1]), int(b[1:-1]), tuple(int(ch) for ch in vals)


def compose_monotone(g: Monotone, f: Monotone) -> Monotone:
    return tuple(g[i] for i in f)


def face(n: int, i: int) -> str:
    """``d^i: [n-1] -> [n]`` skipping ``i``."""
    return simplex_id(n - 1, n, tuple(j for j in range(n + 1) if j != i))


def degeneracy(n: int, i: int) -> str:
    """``s^i: [n+1] -> [n]`` hitting ``i`` twice."""
    return simplex_id(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def delta(n: int) -> ReedyCategory:
    """``Δ≤n`` with injections raising and surjections lowering."""
    if n > 9:
        raise ValueError("ids use one digit per vertex; n must be at most 9")
    objects = [obj(k) for k in range(n + 1)]
    homs = {(obj(a), obj(b)): monotone_maps(a, b) for a in range(n + 1) for b in range(n + 1)}
    c = fc.concrete(
        objects,
        homs,
        compose=compose_monotone,
        identity=lambda o: tuple(range(int(o[1:-1]) + 1)),
        label=lambda s, t, f: simplex_id(int(s[1:-1]), int(t[1:-1]), f),
        name=f"Δ≤{n}",
    )
    raising, lowering = set(), set()
    for m, (s, t) in c.morphisms.items():
        a, b, f = parse_simplex_id(m)
        if len(set(f)) == len(f):
            raising.add(m)
        if set(f) == set(range(b + 1)):
            lowering.add(m)
    return rd.ReedyCategory.from_classes(c, {obj(k): k for k in range(n + 1)}, raising, lowering)


# -- simplicial sets ---------------------------------------------------------

def simplicial_subset(n: int, m: int, keep: Callable[[Monotone], bool], index: ReedyCategory | None = None) -> SetPresheaf:
    """The simplices ``[k] -> [m]`` (k ≤ n) of ``Δ[m]`` passing ``keep``,
    as a presheaf on ``Δ≤n``.  ``keep`` must be closed under faces and
    degeneracies."""
    index = index or delta(n)
    sets = {obj(k): tuple("".join(map(str, f)) for f in monotone_maps(k, m) if keep(f)) for k in range(n + 1)}
    maps = {}
    for mor in index.base.morphisms:
        a, b, f = parse_simplex_id(mor)
        # presheaf: K(f): K_b -> K_a, x ↦ x ∘ f
        maps[mor] = {x: "".join(str(int(x[i])) for i in f) for x in sets[obj(b)]}
    return SetPresheaf(index, sets, maps, PRESHEAF)


def standard_simplex(m: int, n: int, index: ReedyCategory | None = None) -> SetPresheaf:
    return simplicial_subset(n, m, lambda f: True, index)


def boundary_simplex(m: int, n: int, index: ReedyCategory | None = None) -> SetPresheaf:
    return simplicial_subset(n, m, lambda f: set(f) != set(range(m + 1)), index)


def horn(m: int, k: int, n: int, index: ReedyCategory | None = None) -> SetPresheaf:
    """``Λ^m_k``: simplices missing some vertex other than k."""
    need = set(range(m + 1)) - {k}
    return simplicial_subset(n, m, lambda f: not need <= set(f), index)


# -- categories of presheaves ------------------------------------------------

def presheaf_completion(index: ReedyCategory, extra: Mapping[str, SetPresheaf]) -> tuple[FiniteCategory, FunctorData]:
    """Full subcategory of presheaves on the representables and ``extra``.

    Returns the category C and the Yoneda embedding ``index -> C``, which is
    the identity on ids.  Morphisms ``y(α) -> K`` are named ``"α>K:x"`` for
    the element ``x`` of ``K_α``; other new morphisms ``"P>Q:#i"``.
    """
    base = index.base
    clash = set(extra) & set(base.objects)
    if clash:
        raise CategoryError(f"extra presheaves reuse object names {sorted(clash)}")
    presheaves: dict[str, SetPresheaf] = {a: representable_set(index, a, PRESHEAF) for a in base.objects}
    presheaves.update(extra)
    names = list(base.objects) + list(extra)
    shape = rd.opposite_reedy(index).base

    morphisms: dict[str, tuple[str, str]] = {}
    comps: dict[str, dict[str, dict[str, str]]] = {}
    for s in names:
        for t in names:
            if s in base.objects and t in base.objects:
                # Yoneda: natural maps y(s) -> y(t) are the morphisms s -> t,
                # acting by w ↦ m ∘ w on y(s)_g = A(g, s)
                for m in base.hom(s, t):
                    morphisms[m] = (s, t)
                    comps[m] = {g: {w: base.compose(m, w) for w in presheaves[s].sets[g]} for g in shape.objects}
                continue
            if s in base.objects:
                k = presheaves[t]
                ident = base.identity(s)
                for x in k.sets[s]:
                    mid = f"{s}>{t}:{x}"
                    morphisms[mid] = (s, t)
                    comps[mid] = {g: {w: k.maps[w][x] for w in presheaves[s].sets[g]} for g in shape.objects}
                continue
            for i, nat in enumerate(natural_transformations(presheaves[s], presheaves[t])):
                mid = f"id_{s}" if s == t and _is_identity(nat) else f"{s}>{t}:#{i}"
                morphisms[mid] = (s, t)
                comps[mid] = nat
    key = {}
    for mid, (s, t) in morphisms.items():
        frozen = tuple(sorted((g, tuple(sorted(f.items()))) for g, f in comps[mid].items()))
        key[(s, t, frozen)] = mid
    identities = {}
    for s in names:
        for mid, (a, b) in morphisms.items():
            if a == s and b == s and _is_identity(comps[mid]):
                identities[s] = mid
    table = {}
    out_of: dict[str, list[str]] = {}
    for mid, (s, _) in morphisms.items():
        out_of.setdefault(s, []).append(mid)
    for f, (s, t) in morphisms.items():
        for g in out_of.get(t, ()):
            u = morphisms[g][1]
            gf = {o: {x: comps[g][o][y] for x, y in comps[f][o].items()} for o in comps[f]}
            frozen = tuple(sorted((o, tuple(sorted(h.items()))) for o, h in gf.items()))
            table[(g, f)] = key[(s, u, frozen)]
    c = FiniteCategory(tuple(names), morphisms, identities, table, f"Psh({base.name})")
    emb = FunctorData(base, c, {a: a for a in base.objects}, {m: m for m in base.morphisms})
    return c, emb


def _is_identity(nat: Mapping[str, Mapping[str, str]]) -> bool:
    return all(x == y for f in nat.values() for x, y in f.items())


def elements_category(index: ReedyCategory, name: str, k: SetPresheaf) -> tuple[ReedyCategory, fc.CommaCategory, FiniteCategory, FunctorData]:
    """``(A/K)``: the slice of the Yoneda embedding over K, with its Reedy
    structure.  Also returns the ambient presheaf category and embedding."""
    c, emb = presheaf_completion(index, {name: k})
    r, cc = rd.slice_reedy(index, emb, name)
    return r, cc, c, emb
