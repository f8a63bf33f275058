"""Finite categories given by explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _product
from typing import Callable, Hashable, Iterable, Mapping, Sequence


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One broken law, with a machine-readable witness."""

    kind: str
    message: str
    witness: Mapping = field(default_factory=dict)

    def __str__(self) -> str:
        return self.message

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "witness": dict(self.witness)}


@dataclass(frozen=True)
class FiniteCategory:
    """Objects, morphisms ``id -> (src, dst)``, identities and a total table
    ``(g, f) -> g∘f`` over composable pairs.  All ids are strings."""

    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    table: Mapping[tuple[str, str], str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", {m: tuple(st) for m, st in self.morphisms.items()})
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "table", dict(self.table))
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object ids")

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def dst(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, a: str) -> str:
        return self.identities[a]

    def compose(self, g: str, f: str) -> str:
        """``g ∘ f``; raises CategoryError if undefined."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise CategoryError(f"composite {g} ∘ {f} is not defined") from None

    def compose_path(self, *ms: str) -> str:
        """``ms[0] ∘ ms[1] ∘ ... ∘ ms[-1]``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    @cached_property
    def _identity_set(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    def is_identity(self, m: str) -> bool:
        return m in self._identity_set

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {}
        for m, (a, b) in self.morphisms.items():
            out.setdefault((a, b), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs.get((a, b), ())

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (a, _) in self.morphisms.items():
            out[a].append(m)
        return {a: tuple(v) for a, v in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (_, b) in self.morphisms.items():
            out[b].append(m)
        return {a: tuple(v) for a, v in out.items()}

    def morphisms_from(self, a: str) -> tuple[str, ...]:
        return self._out.get(a, ())

    def morphisms_to(self, b: str) -> tuple[str, ...]:
        return self._in.get(b, ())

    @property
    def non_identity_morphisms(self) -> list[str]:
        return [m for m in self.morphisms if not self.is_identity(m)]

    def __len__(self) -> int:
        return len(self.objects)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


@dataclass(frozen=True)
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def __call__(self, m: str) -> str:
        return self.morphism_map[m]

    def on_object(self, a: str) -> str:
        return self.object_map[a]


@dataclass(frozen=True)
class CommaCategory:
    """``(f/γ)`` or ``(γ/f)`` with bookkeeping back to the base.

    ``object_data[o] = (α, u)`` with ``u: f(α) -> γ`` (slice) or
    ``u: γ -> f(α)`` (coslice); ``morphism_data[m]`` is the underlying
    morphism of the source of ``f``.
    """

    category: FiniteCategory
    projection: FunctorData
    object_data: Mapping[str, tuple[str, str]]
    morphism_data: Mapping[str, str]
    coslice: bool = False

    def object_for(self, alpha: str, u: str) -> str:
        return self._lookup[(alpha, u)]

    @cached_property
    def _lookup(self) -> dict[tuple[str, str], str]:
        return {v: k for k, v in self.object_data.items()}


# -- construction ------------------------------------------------------------

def concrete(
    objects: Sequence[str],
    homs: Mapping[tuple[str, str], Iterable[Hashable]],
    compose: Callable[[Hashable, Hashable], Hashable],
    identity: Callable[[str], Hashable],
    label: Callable[[str, str, Hashable], str],
    name: str = "",
) -> FiniteCategory:
    """Build a category whose morphisms are concrete values.

    ``homs[(a, b)]`` lists the values ``a -> b``; ``compose(g, f)`` and
    ``identity(a)`` operate on values, ``label`` names them.
    """
    ids: dict[tuple[str, str, Hashable], str] = {}
    morphisms: dict[str, tuple[str, str]] = {}
    for (a, b), values in homs.items():
        for v in values:
            key = (a, b, v)
            if key in ids:
                continue
            mid = label(a, b, v)
            if mid in morphisms:
                raise CategoryError(f"label collision on {mid!r}")
            ids[key] = mid
            morphisms[mid] = (a, b)
    identities = {a: ids[(a, a, identity(a))] for a in objects}
    table = {}
    for (a, b, fv), f in ids.items():
        for c in objects:
            for gv in homs.get((b, c), ()):
                g = ids[(b, c, gv)]
                table[(g, f)] = ids[(a, c, compose(gv, fv))]
    return FiniteCategory(tuple(objects), morphisms, identities, table, name)


def discrete(objects: Sequence[str], name: str = "") -> FiniteCategory:
    return FiniteCategory(
        tuple(objects),
        {f"id_{a}": (a, a) for a in objects},
        {a: f"id_{a}" for a in objects},
        {(f"id_{a}", f"id_{a}"): f"id_{a}" for a in objects},
        name or f"discrete{len(objects)}",
    )


def terminal() -> FiniteCategory:
    return discrete(["*"], name="terminal")


def empty() -> FiniteCategory:
    return FiniteCategory((), {}, {}, {}, "empty")


def poset(elements: Sequence[str], leq: Callable[[str, str], bool], name: str = "") -> FiniteCategory:
    """Thin category with a morphism ``a -> b`` exactly when ``leq(a, b)``."""
    homs = {(a, b): [None] for a in elements for b in elements if leq(a, b)}
    return concrete(
        elements,
        homs,
        compose=lambda g, f: None,
        identity=lambda a: None,
        label=lambda a, b, _: f"id_{a}" if a == b else f"{a}<{b}",
        name=name,
    )


def ordinal(n: int) -> FiniteCategory:
    """The poset ``0 < 1 < ... < n``."""
    elems = [str(i) for i in range(n + 1)]
    return poset(elems, lambda a, b: int(a) <= int(b), name=f"[{n}]")


# -- validation --------------------------------------------------------------

def validate_category(c: FiniteCategory) -> list[Violation]:
    """Every violated category law, with witnesses; empty means valid."""
    problems: list[Violation] = []
    objs = set(c.objects)
    for m, (a, b) in c.morphisms.items():
        if a not in objs or b not in objs:
            problems.append(Violation("unknown endpoint", f"morphism {m} has unknown endpoint ({a} -> {b})", {"morphism": m}))
    for a in c.objects:
        i = c.identities.get(a)
        if i is None:
            problems.append(Violation("missing identity", f"object {a} has no identity", {"object": a}))
        elif c.morphisms.get(i) != (a, a):
            problems.append(Violation("bad identity", f"identity {i} of {a} is not an endomorphism of {a}", {"object": a, "morphism": i}))
    if problems:
        return problems
    for (g, f), gf in c.table.items():
        if f not in c.morphisms or g not in c.morphisms or gf not in c.morphisms:
            problems.append(Violation("unknown morphism", f"composite entry {g} ∘ {f} = {gf} names an unknown morphism", {"pair": [g, f]}))
        elif c.dst(f) != c.src(g):
            problems.append(Violation("non-composable entry", f"composite entry for non-composable pair ({g}, {f})", {"pair": [g, f]}))
        elif c.morphisms[gf] != (c.src(f), c.dst(g)):
            problems.append(Violation("wrong endpoints", f"composite {g} ∘ {f} = {gf} has wrong endpoints", {"pair": [g, f]}))
    if problems:
        return problems
    for f, (a, b) in c.morphisms.items():
        for g in c.morphisms_from(b):
            if (g, f) not in c.table:
                problems.append(Violation("missing composite", f"missing composite for pair ({g}, {f})", {"pair": [g, f]}))
    if problems:
        return problems
    for f, (a, b) in c.morphisms.items():
        if c.table[(f, c.identity(a))] != f:
            problems.append(Violation("identity law", f"right identity law fails: {f} ∘ id_{a} != {f}", {"morphism": f}))
        if c.table[(c.identity(b), f)] != f:
            problems.append(Violation("identity law", f"left identity law fails: id_{b} ∘ {f} != {f}", {"morphism": f}))
    table = c.table
    for f, (a, b) in c.morphisms.items():
        for g in c.morphisms_from(b):
            gf = table[(g, f)]
            for h in c.morphisms_from(c.dst(g)):
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    problems.append(Violation("associativity", f"associativity fails on ({h}, {g}, {f})", {"triple": [h, g, f]}))
    return problems


def validate_functor(f: FunctorData) -> list[Violation]:
    problems: list[Violation] = []
    s, t = f.source, f.target
    for a in s.objects:
        if f.object_map.get(a) not in set(t.objects):
            problems.append(Violation("object map", f"object {a} maps to unknown object {f.object_map.get(a)!r}", {"object": a}))
    for m in s.morphisms:
        if f.morphism_map.get(m) not in t.morphisms:
            problems.append(Violation("morphism map", f"morphism {m} maps to unknown morphism {f.morphism_map.get(m)!r}", {"morphism": m}))
    if problems:
        return problems
    for m, (a, b) in s.morphisms.items():
        fm = f.morphism_map[m]
        if t.morphisms[fm] != (f.object_map[a], f.object_map[b]):
            problems.append(Violation("endpoints", f"morphism {m} is sent to {fm} with mismatched endpoints", {"morphism": m}))
    for a in s.objects:
        if f.morphism_map[s.identity(a)] != t.identity(f.object_map[a]):
            problems.append(Violation("identity", f"identity of {a} is not preserved", {"object": a}))
    if problems:
        return problems
    for (g, h), gh in s.table.items():
        if t.compose(f.morphism_map[g], f.morphism_map[h]) != f.morphism_map[gh]:
            problems.append(Violation("composition", f"composition not preserved on ({g}, {h})", {"pair": [g, h]}))
    return problems


# -- constructions -----------------------------------------------------------

def opposite(c: FiniteCategory) -> FiniteCategory:
    """Same ids, sources and targets swapped, composition transposed."""
    name = c.name[:-3] if c.name.endswith("^op") else (c.name + "^op" if c.name else "")
    return FiniteCategory(
        c.objects,
        {m: (b, a) for m, (a, b) in c.morphisms.items()},
        c.identities,
        {(f, g): gf for (g, f), gf in c.table.items()},
        name,
    )


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def product(a: FiniteCategory, b: FiniteCategory) -> FiniteCategory:
    objects = tuple(pair_id(x, y) for x in a.objects for y in b.objects)
    morphisms = {
        pair_id(f, g): (pair_id(a.src(f), b.src(g)), pair_id(a.dst(f), b.dst(g)))
        for f in a.morphisms
        for g in b.morphisms
    }
    identities = {pair_id(x, y): pair_id(a.identity(x), b.identity(y)) for x in a.objects for y in b.objects}
    table = {
        (pair_id(g1, g2), pair_id(f1, f2)): pair_id(h1, h2)
        for (g1, f1), h1 in a.table.items()
        for (g2, f2), h2 in b.table.items()
    }
    name = f"{a.name}×{b.name}" if a.name and b.name else ""
    return FiniteCategory(objects, morphisms, identities, table, name)


def full_subcategory(c: FiniteCategory, keep: Callable[[str], bool], name: str = "") -> FiniteCategory:
    objs = tuple(a for a in c.objects if keep(a))
    kept = set(objs)
    morphisms = {m: st for m, st in c.morphisms.items() if st[0] in kept and st[1] in kept}
    table = {k: v for k, v in c.table.items() if k[0] in morphisms and k[1] in morphisms}
    return FiniteCategory(objs, morphisms, {a: c.identity(a) for a in objs}, table, name)


def wide_subcategory(c: FiniteCategory, keep: Iterable[str], name: str = "") -> FiniteCategory:
    """Subcategory on all objects with the given morphisms (plus identities)."""
    ms = set(keep) | set(c.identities.values())
    morphisms = {m: st for m, st in c.morphisms.items() if m in ms}
    table = {k: v for k, v in c.table.items() if k[0] in ms and k[1] in ms}
    return FiniteCategory(c.objects, morphisms, c.identities, table, name)


def identity_functor(c: FiniteCategory) -> FunctorData:
    return FunctorData(c, c, {a: a for a in c.objects}, {m: m for m in c.morphisms})


def functor_to_terminal(c: FiniteCategory, star: FiniteCategory | None = None) -> FunctorData:
    star = star or terminal()
    (pt,) = star.objects
    return FunctorData(c, star, {a: pt for a in c.objects}, {m: star.identity(pt) for m in c.morphisms})


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    return FunctorData(
        f.source,
        g.target,
        {a: g.object_map[b] for a, b in f.object_map.items()},
        {m: g.morphism_map[n] for m, n in f.morphism_map.items()},
    )


def opposite_functor(f: FunctorData) -> FunctorData:
    return FunctorData(opposite(f.source), opposite(f.target), f.object_map, f.morphism_map)


def product_functor(f: FunctorData, g: FunctorData) -> FunctorData:
    return FunctorData(
        product(f.source, g.source),
        product(f.target, g.target),
        {pair_id(a, b): pair_id(f.object_map[a], g.object_map[b]) for a in f.source.objects for b in g.source.objects},
        {pair_id(m, n): pair_id(f.morphism_map[m], g.morphism_map[n]) for m in f.source.morphisms for n in g.source.morphisms},
    )


def diagonal_functor(c: FiniteCategory) -> FunctorData:
    cc = product(c, c)
    return FunctorData(c, cc, {a: pair_id(a, a) for a in c.objects}, {m: pair_id(m, m) for m in c.morphisms})


def _comma_object_id(alpha: str, u: str) -> str:
    return f"<{alpha}|{u}>"


def comma(f: FunctorData, gamma: str) -> CommaCategory:
    """The slice ``(f/γ)``: objects ``(α, u: f(α) -> γ)``, morphisms ``g: α -> α'``
    with ``u' ∘ f(g) = u``."""
    b = f.target
    if gamma not in set(b.objects):
        raise CategoryError(f"unknown object {gamma!r}")
    a = f.source
    obj_data: dict[str, tuple[str, str]] = {}
    for alpha in a.objects:
        for u in b.hom(f.object_map[alpha], gamma):
            obj_data[_comma_object_id(alpha, u)] = (alpha, u)
    return _assemble_comma(f, obj_data, coslice=False, name=f"({a.name or 'A'}/{gamma})")


def cocomma(f: FunctorData, gamma: str) -> CommaCategory:
    """The coslice ``(γ/f)``: objects ``(α, u: γ -> f(α))``, morphisms
    ``g: α -> α'`` with ``f(g) ∘ u = u'``."""
    b = f.target
    if gamma not in set(b.objects):
        raise CategoryError(f"unknown object {gamma!r}")
    a = f.source
    obj_data: dict[str, tuple[str, str]] = {}
    for alpha in a.objects:
        for u in b.hom(gamma, f.object_map[alpha]):
            obj_data[_comma_object_id(alpha, u)] = (alpha, u)
    return _assemble_comma(f, obj_data, coslice=True, name=f"({gamma}/{a.name or 'A'})")


def _assemble_comma(f: FunctorData, obj_data, coslice: bool, name: str) -> CommaCategory:
    a, b = f.source, f.target
    by_alpha: dict[str, list[str]] = {}
    for o, (alpha, _) in obj_data.items():
        by_alpha.setdefault(alpha, []).append(o)
    morphisms: dict[str, tuple[str, str]] = {}
    mor_data: dict[str, str] = {}
    for o, (alpha, u) in obj_data.items():
        for g in a.morphisms_from(alpha):
            fg = f.morphism_map[g]
            for o2 in by_alpha.get(a.dst(g), ()):
                u2 = obj_data[o2][1]
                ok = b.compose(fg, u) == u2 if coslice else b.compose(u2, fg) == u
                if ok:
                    mid = f"[{g}:{o}>{o2}]"
                    morphisms[mid] = (o, o2)
                    mor_data[mid] = g
    identities = {o: f"[{a.identity(alpha)}:{o}>{o}]" for o, (alpha, _) in obj_data.items()}
    lookup = {(mor_data[m], *morphisms[m]): m for m in morphisms}
    out_of: dict[str, list[str]] = {}
    for m, (o1, _) in morphisms.items():
        out_of.setdefault(o1, []).append(m)
    table = {}
    for fm, (o1, o2) in morphisms.items():
        for gm in out_of.get(o2, ()):
            h = a.compose(mor_data[gm], mor_data[fm])
            table[(gm, fm)] = lookup[(h, o1, morphisms[gm][1])]
    cat = FiniteCategory(tuple(obj_data), morphisms, identities, table, name)
    proj = FunctorData(cat, a, {o: alpha for o, (alpha, _) in obj_data.items()}, dict(mor_data))
    return CommaCategory(cat, proj, obj_data, mor_data, coslice)


# -- properties --------------------------------------------------------------

def is_epimorphism(c: FiniteCategory, m: str) -> bool:
    """True iff ``g ∘ m = h ∘ m`` forces ``g = h`` (checked exhaustively)."""
    if m not in c.morphisms:
        raise CategoryError(f"unknown morphism {m!r}")
    b = c.dst(m)
    seen: dict[tuple[str, str], str] = {}
    for g in c.morphisms_from(b):
        key = (c.dst(g), c.compose(g, m))
        if key in seen and seen[key] != g:
            return False
        seen[key] = g
    return True


def epimorphism_witness(c: FiniteCategory, m: str) -> tuple[str, str] | None:
    """A pair ``g != h`` with ``g ∘ m = h ∘ m``, if any."""
    b = c.dst(m)
    seen: dict[tuple[str, str], str] = {}
    for g in c.morphisms_from(b):
        key = (c.dst(g), c.compose(g, m))
        if key in seen:
            return seen[key], g
        seen[key] = g
    return None


def is_fully_faithful(f: FunctorData) -> bool:
    a, b = f.source, f.target
    for x in a.objects:
        for y in a.objects:
            images = [f.morphism_map[m] for m in a.hom(x, y)]
            if len(set(images)) != len(images):
                return False
            if len(images) != len(b.hom(f.object_map[x], f.object_map[y])):
                return False
    return True


def connected_components(c: FiniteCategory) -> list[list[str]]:
    """Components of the undirected graph with one edge per morphism."""
    parent = {a: a for a in c.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m, (a, b) in c.morphisms.items():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, list[str]] = {}
    for a in c.objects:
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def nerve_is_empty_or_connected(c: FiniteCategory) -> bool:
    return len(connected_components(c)) <= 1


def relabel(c: FiniteCategory, objects: Mapping[str, str], morphisms: Mapping[str, str]) -> FiniteCategory:
    """Rename ids (bijections); used by relabeling-invariance tests."""
    return FiniteCategory(
        tuple(objects[a] for a in c.objects),
        {morphisms[m]: (objects[a], objects[b]) for m, (a, b) in c.morphisms.items()},
        {objects[a]: morphisms[i] for a, i in c.identities.items()},
        {(morphisms[g], morphisms[f]): morphisms[h] for (g, f), h in c.table.items()},
        c.name,
    )


def isomorphic_by_relabeling(c: FiniteCategory, d: FiniteCategory) -> bool:
    """Brute-force isomorphism test for small categories (object bijections
    extended by morphism bijections on each hom-set)."""
    from itertools import permutations

    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return False
    for perm in permutations(d.objects):
        omap = dict(zip(c.objects, perm))
        if any(len(c.hom(x, y)) != len(d.hom(omap[x], omap[y])) for x in c.objects for y in c.objects):
            continue
        if _extend_to_isomorphism(c, d, omap) is not None:
            return True
    return False


def _extend_to_isomorphism(c, d, omap):
    from itertools import permutations

    homs = [(x, y) for x in c.objects for y in c.objects if c.hom(x, y)]
    choices = [list(permutations(d.hom(omap[x], omap[y]))) for x, y in homs]
    for pick in _product(*choices):
        mmap = {}
        for (x, y), images in zip(homs, pick):
            mmap.update(zip(c.hom(x, y), images))
        if all(d.table.get((mmap[g], mmap[f])) == mmap[h] for (g, f), h in c.table.items()):
            return mmap
    return None
