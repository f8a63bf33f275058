"""Reedy structures on finite categories."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from . import fincat as fc
from .fincat import CategoryError, CommaCategory, FiniteCategory, FunctorData, Violation


@dataclass(frozen=True)
class ReedyCategory:
    """A finite category with degree-raising and degree-lowering lluf
    subcategories and a factorization table ``m -> (lower, raise)``."""

    base: FiniteCategory
    degree: Mapping[str, int]
    raising: frozenset[str]
    lowering: frozenset[str]
    factorization: Mapping[str, tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "degree", dict(self.degree))
        object.__setattr__(self, "raising", frozenset(self.raising))
        object.__setattr__(self, "lowering", frozenset(self.lowering))
        object.__setattr__(self, "factorization", {m: tuple(lr) for m, lr in self.factorization.items()})

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def objects(self) -> tuple[str, ...]:
        return self.base.objects

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived constructions (instances are immutable)."""
        return {}

    @classmethod
    def from_classes(
        cls,
        base: FiniteCategory,
        degree: Mapping[str, int],
        raising: Iterable[str],
        lowering: Iterable[str],
    ) -> "ReedyCategory":
        """Fill in the factorization table by exhaustive search.

        Identities are added to both classes.  When a morphism admits several
        factorizations the first one found is stored; :func:`verify_reedy`
        reports the ambiguity.
        """
        ids = set(base.identities.values())
        raising = frozenset(raising) | ids
        lowering = frozenset(lowering) | ids
        fact = {}
        for m in base.morphisms:
            found = _factorizations(base, raising, lowering, m)
            if found:
                fact[m] = found[0]
        return cls(base, degree, raising, lowering, fact)

    def __repr__(self):
        return f"<ReedyCategory {self.name or '?'}: {len(self.objects)} objects>"


def _factorizations(base: FiniteCategory, raising, lowering, m: str) -> list[tuple[str, str]]:
    a, b = base.morphisms[m]
    out = []
    for c in base.objects:
        lows = [x for x in base.hom(a, c) if x in lowering]
        if not lows:
            continue
        for r in base.hom(c, b):
            if r not in raising:
                continue
            for low in lows:
                if base.table[(r, low)] == m:
                    out.append((low, r))
    return out


def all_factorizations(r: ReedyCategory, m: str) -> list[tuple[str, str]]:
    """Every ``(ℓ, ρ)`` in ``A^← × A^→`` with ``ρ ∘ ℓ = m``."""
    return _factorizations(r.base, r.raising, r.lowering, m)


def verify_reedy(r: ReedyCategory, check_base: bool = True) -> list[Violation]:
    """All violated Reedy axioms with witnesses; an empty list means valid."""
    c = r.base
    if check_base:
        problems = fc.validate_category(c)
        if problems:
            return problems
    problems: list[Violation] = []
    for a in c.objects:
        deg = r.degree.get(a)
        if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
            problems.append(Violation("degree", f"object {a} has no natural-number degree", {"object": a}))
    for label, cls in (("raising", r.raising), ("lowering", r.lowering)):
        unknown = sorted(cls - set(c.morphisms))
        if unknown:
            problems.append(Violation("class", f"{label} class names unknown morphisms {unknown}", {"morphisms": unknown}))
        for a in c.objects:
            if c.identity(a) not in cls:
                problems.append(Violation("lluf", f"identity of {a} missing from the {label} class", {"object": a}))
    if problems:
        return problems
    for label, cls in (("raising", r.raising), ("lowering", r.lowering)):
        for f in cls:
            for g in c.morphisms_from(c.dst(f)):
                if g in cls and c.table[(g, f)] not in cls:
                    problems.append(Violation(
                        "closure",
                        f"{label} class not closed under composition: {g} ∘ {f}",
                        {"pair": [g, f]},
                    ))
    for m in sorted(r.raising):
        a, b = c.morphisms[m]
        if not c.is_identity(m) and not r.degree[a] < r.degree[b]:
            problems.append(Violation(
                "linear extension violation",
                f"raising morphism {m}: {a} -> {b} does not raise degree ({r.degree[a]} -> {r.degree[b]})",
                {"morphism": m},
            ))
    for m in sorted(r.lowering):
        a, b = c.morphisms[m]
        if not c.is_identity(m) and not r.degree[a] > r.degree[b]:
            problems.append(Violation(
                "linear extension violation",
                f"lowering morphism {m}: {a} -> {b} does not lower degree ({r.degree[a]} -> {r.degree[b]})",
                {"morphism": m},
            ))
    both = sorted(m for m in r.raising & r.lowering if not c.is_identity(m))
    if both:
        problems.append(Violation("intersection", f"non-identity morphisms in both classes: {both}", {"morphisms": both}))
    for m in c.morphisms:
        found = _factorizations(c, r.raising, r.lowering, m)
        stored = r.factorization.get(m)
        if not found:
            problems.append(Violation("missing factorization", f"{m} has no (lower, raise) factorization", {"morphism": m}))
            continue
        if len(found) > 1:
            problems.append(Violation(
                "non-unique factorization",
                f"{m} factors as {found[1][1]} ∘ {found[1][0]} and as {found[0][1]} ∘ {found[0][0]}",
                {"morphism": m, "factorizations": [list(x) for x in found[:2]]},
            ))
        if stored is None or stored not in found:
            problems.append(Violation(
                "bad factorization entry",
                f"stored factorization {stored} of {m} is not a valid (lower, raise) pair",
                {"morphism": m},
            ))
    return problems


def is_reedy(r: ReedyCategory) -> bool:
    return not verify_reedy(r)


def factorize(r: ReedyCategory, m: str) -> tuple[str, str]:
    """The stored ``(lower, raise)`` pair with ``raise ∘ lower = m``."""
    try:
        return r.factorization[m]
    except KeyError:
        raise CategoryError(f"unknown morphism {m!r}") from None


def search_degrees(base: FiniteCategory, raising: Iterable[str], lowering: Iterable[str]) -> dict[str, int] | None:
    """Smallest degree function making both classes strictly monotone, or
    None when the induced order has a cycle."""
    edges: dict[str, set[str]] = {a: set() for a in base.objects}
    for m in raising:
        if not base.is_identity(m):
            a, b = base.morphisms[m]
            edges[a].add(b)
    for m in lowering:
        if not base.is_identity(m):
            a, b = base.morphisms[m]
            edges[b].add(a)
    indeg = {a: 0 for a in base.objects}
    for a, outs in edges.items():
        for b in outs:
            indeg[b] += 1
    ready = [a for a in base.objects if indeg[a] == 0]
    degree = {a: 0 for a in base.objects}
    seen = 0
    while ready:
        a = ready.pop()
        seen += 1
        for b in edges[a]:
            degree[b] = max(degree[b], degree[a] + 1)
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    return degree if seen == len(base.objects) else None


# -- constructions -----------------------------------------------------------

def opposite_reedy(r: ReedyCategory) -> ReedyCategory:
    """``(A^op)^→ = (A^←)^op`` and ``(A^op)^← = (A^→)^op``, same degrees."""
    cached = r.memo.get("op")
    if cached is None:
        cached = ReedyCategory(
            fc.opposite(r.base),
            r.degree,
            r.lowering,
            r.raising,
            {m: (rho, low) for m, (low, rho) in r.factorization.items()},
        )
        cached.memo["op"] = r
        r.memo["op"] = cached
    return cached


def terminal_reedy() -> ReedyCategory:
    return ReedyCategory.from_classes(fc.terminal(), {"*": 0}, (), ())


def discrete_reedy(objects, name: str = "") -> ReedyCategory:
    c = fc.discrete(objects, name)
    return ReedyCategory.from_classes(c, {a: 0 for a in objects}, (), ())


def product_reedy(a: ReedyCategory, b: ReedyCategory) -> ReedyCategory:
    """Componentwise classes, degree the sum of degrees."""
    key = ("product", id(b))
    cached = a.memo.get(key)
    if cached is not None and cached[0] is b:
        return cached[1]
    pid = fc.pair_id
    base = fc.product(a.base, b.base)
    degree = {pid(x, y): a.degree[x] + b.degree[y] for x in a.objects for y in b.objects}
    raising = {pid(f, g) for f in a.raising for g in b.raising}
    lowering = {pid(f, g) for f in a.lowering for g in b.lowering}
    fact = {}
    for f, (lf, rf) in a.factorization.items():
        for g, (lg, rg) in b.factorization.items():
            fact[pid(f, g)] = (pid(lf, lg), pid(rf, rg))
    out = ReedyCategory(base, degree, raising, lowering, fact)
    a.memo[key] = (b, out)
    return out


def comma_reedy(r: ReedyCategory, f: FunctorData, gamma: str, coslice: bool = False) -> tuple[ReedyCategory, CommaCategory]:
    """Reedy structure on ``(f/γ)`` (or ``(γ/f)``) lifted from ``r``.

    A comma morphism is raising (lowering) when its underlying morphism is;
    degrees are those of the underlying objects.
    """
    if f.source is not r.base and f.source != r.base:
        raise CategoryError("functor source is not the Reedy category's base")
    cc = fc.cocomma(f, gamma) if coslice else fc.comma(f, gamma)
    cat = cc.category
    degree = {o: r.degree[alpha] for o, (alpha, _) in cc.object_data.items()}
    raising = {m for m, g in cc.morphism_data.items() if g in r.raising}
    lowering = {m for m, g in cc.morphism_data.items() if g in r.lowering}
    fact = {}
    tgt = f.target
    for m, g in cc.morphism_data.items():
        o1, o2 = cat.morphisms[m]
        low, rho = r.factorization[g]
        mid_alpha = r.base.dst(low)
        if coslice:
            u1 = cc.object_data[o1][1]
            mid = cc.object_for(mid_alpha, tgt.compose(f.morphism_map[low], u1))
        else:
            u2 = cc.object_data[o2][1]
            mid = cc.object_for(mid_alpha, tgt.compose(u2, f.morphism_map[rho]))
        fact[m] = (f"[{low}:{o1}>{mid}]", f"[{rho}:{mid}>{o2}]")
    return ReedyCategory(cat, degree, raising, lowering, fact), cc


def slice_reedy(r: ReedyCategory, embedding: FunctorData, gamma: str, coslice: bool = False) -> tuple[ReedyCategory, CommaCategory]:
    """``(A/γ)`` (or ``(γ/A)``) for a fully faithful ``A -> C``."""
    if not fc.is_fully_faithful(embedding):
        raise CategoryError("embedding is not fully faithful")
    return comma_reedy(r, embedding, gamma, coslice)


def _subcomma(cc: CommaCategory, keep) -> CommaCategory:
    cat = fc.full_subcategory(cc.category, keep)
    obj = {o: cc.object_data[o] for o in cat.objects}
    mor = {m: cc.morphism_data[m] for m in cat.morphisms}
    proj = FunctorData(cat, cc.projection.target, {o: cc.projection.object_map[o] for o in cat.objects}, mor)
    return CommaCategory(cat, proj, obj, mor, cc.coslice)


def raise_subcategory(r: ReedyCategory) -> FiniteCategory:
    c = r.memo.get("raise_cat")
    if c is None:
        c = r.memo["raise_cat"] = fc.wide_subcategory(r.base, r.raising, f"{r.name}^→")
    return c


def lower_subcategory(r: ReedyCategory) -> FiniteCategory:
    c = r.memo.get("lower_cat")
    if c is None:
        c = r.memo["lower_cat"] = fc.wide_subcategory(r.base, r.lowering, f"{r.name}^←")
    return c


def latching_comma(r: ReedyCategory, alpha: str) -> CommaCategory:
    """``∂(A^→/α)``: non-identity raising morphisms into α."""
    key = ("latching", alpha)
    if key not in r.memo:
        if alpha not in set(r.objects):
            raise CategoryError(f"unknown object {alpha!r}")
        sub = raise_subcategory(r)
        cc = fc.comma(fc.identity_functor(sub), alpha)
        drop = cc.object_for(alpha, r.base.identity(alpha))
        r.memo[key] = _subcomma(cc, lambda o: o != drop)
    return r.memo[key]


def matching_comma(r: ReedyCategory, alpha: str) -> CommaCategory:
    """``∂(α/A^←)``: non-identity lowering morphisms out of α."""
    key = ("matching", alpha)
    if key not in r.memo:
        if alpha not in set(r.objects):
            raise CategoryError(f"unknown object {alpha!r}")
        sub = lower_subcategory(r)
        cc = fc.cocomma(fc.identity_functor(sub), alpha)
        drop = cc.object_for(alpha, r.base.identity(alpha))
        r.memo[key] = _subcomma(cc, lambda o: o != drop)
    return r.memo[key]


def latching_category(r: ReedyCategory, alpha: str) -> FiniteCategory:
    return latching_comma(r, alpha).category


def matching_category(r: ReedyCategory, alpha: str) -> FiniteCategory:
    return matching_comma(r, alpha).category


def is_direct(r: ReedyCategory) -> bool:
    return all(r.base.is_identity(m) for m in r.lowering)


def is_inverse(r: ReedyCategory) -> bool:
    return all(r.base.is_identity(m) for m in r.raising)


def raise_part(r: ReedyCategory) -> ReedyCategory:
    """``A^→`` as a (direct) Reedy category."""
    sub = raise_subcategory(r)
    return ReedyCategory(sub, r.degree, set(sub.morphisms), set(sub.identities.values()),
                         {m: (sub.identity(sub.src(m)), m) for m in sub.morphisms})


def lower_part(r: ReedyCategory) -> ReedyCategory:
    """``A^←`` as an (inverse) Reedy category."""
    sub = lower_subcategory(r)
    return ReedyCategory(sub, r.degree, set(sub.identities.values()), set(sub.morphisms),
                         {m: (m, sub.identity(sub.dst(m))) for m in sub.morphisms})


# -- morphisms of Reedy categories -------------------------------------------

@dataclass(frozen=True)
class ReedyFunctor:
    source: ReedyCategory
    target: ReedyCategory
    functor: FunctorData

    @property
    def object_map(self) -> Mapping[str, str]:
        return self.functor.object_map

    @property
    def morphism_map(self) -> Mapping[str, str]:
        return self.functor.morphism_map

    @classmethod
    def build(cls, source: ReedyCategory, target: ReedyCategory, object_map, morphism_map) -> "ReedyFunctor":
        return cls(source, target, FunctorData(source.base, target.base, dict(object_map), dict(morphism_map)))


def verify_reedy_functor(f: ReedyFunctor) -> list[Violation]:
    problems = fc.validate_functor(f.functor)
    if problems:
        return problems
    for m in f.source.raising:
        if f.morphism_map[m] not in f.target.raising:
            problems.append(Violation("raising", f"raising morphism {m} is sent outside the raising class", {"morphism": m}))
    for m in f.source.lowering:
        if f.morphism_map[m] not in f.target.lowering:
            problems.append(Violation("lowering", f"lowering morphism {m} is sent outside the lowering class", {"morphism": m}))
    return problems


def identity_reedy_functor(r: ReedyCategory) -> ReedyFunctor:
    return ReedyFunctor(r, r, fc.identity_functor(r.base))


def to_terminal(r: ReedyCategory, star: ReedyCategory | None = None) -> ReedyFunctor:
    star = star or terminal_reedy()
    return ReedyFunctor(r, star, fc.functor_to_terminal(r.base, star.base))


def diagonal(r: ReedyCategory) -> ReedyFunctor:
    rr = product_reedy(r, r)
    d = fc.diagonal_functor(r.base)
    return ReedyFunctor(r, rr, FunctorData(r.base, rr.base, d.object_map, d.morphism_map))


def opposite_reedy_functor(f: ReedyFunctor) -> ReedyFunctor:
    s, t = opposite_reedy(f.source), opposite_reedy(f.target)
    return ReedyFunctor(s, t, FunctorData(s.base, t.base, f.object_map, f.morphism_map))


def lower_restriction(f: ReedyFunctor) -> ReedyFunctor:
    """``f^←: A^← -> B^←``."""
    s, t = lower_part(f.source), lower_part(f.target)
    return ReedyFunctor(s, t, FunctorData(
        s.base, t.base, f.object_map, {m: f.morphism_map[m] for m in s.base.morphisms}))


def raise_restriction(f: ReedyFunctor) -> ReedyFunctor:
    """``f^→: A^→ -> B^→``."""
    s, t = raise_part(f.source), raise_part(f.target)
    return ReedyFunctor(s, t, FunctorData(
        s.base, t.base, f.object_map, {m: f.morphism_map[m] for m in s.base.morphisms}))


def compose_reedy_functors(g: ReedyFunctor, f: ReedyFunctor) -> ReedyFunctor:
    h = fc.compose_functors(g.functor, f.functor)
    return ReedyFunctor(f.source, g.target, h)
