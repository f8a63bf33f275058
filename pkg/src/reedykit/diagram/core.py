"""Diagrams of chain complexes and of finite sets indexed by a Reedy category.

A diagram carries its index and a variance flag.  A covariant diagram sends
``m: a -> b`` to a map ``X_a -> X_b``; a presheaf sends it to ``X_b -> X_a``.
Since :func:`reedykit.reedy.opposite_reedy` keeps morphism ids, a presheaf on
``A`` is literally the same data as a covariant diagram on ``A^op``.  Every
algorithm in this package therefore works covariantly on :attr:`shape`,
which is the index itself or its opposite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .. import chainlab as ch
from .. import reedy as rd
from ..chainlab import ChainComplex, ChainMap
from ..fincat import Violation
from ..reedy import ReedyCategory

COVARIANT = "covariant"
PRESHEAF = "presheaf"
VARIANCES = (COVARIANT, PRESHEAF)


class DiagramError(ValueError):
    pass


def shape_of(index: ReedyCategory, variance: str) -> ReedyCategory:
    if variance == COVARIANT:
        return index
    if variance == PRESHEAF:
        return rd.opposite_reedy(index)
    raise DiagramError(f"unknown variance {variance!r}")


@dataclass(frozen=True, eq=False)
class Diagram:
    index: ReedyCategory
    variance: str
    objects: Mapping[str, ChainComplex]
    maps: Mapping[str, ChainMap]
    p: int = 2

    def __post_init__(self):
        if self.variance not in VARIANCES:
            raise DiagramError(f"unknown variance {self.variance!r}")
        object.__setattr__(self, "objects", dict(self.objects))
        object.__setattr__(self, "maps", dict(self.maps))

    @property
    def shape(self) -> ReedyCategory:
        return shape_of(self.index, self.variance)

    def __getitem__(self, a: str) -> ChainComplex:
        return self.objects[a]

    def along(self, m: str) -> ChainMap:
        return self.maps[m]

    def dims(self) -> dict[str, dict[int, int]]:
        return {a: dict(x.dims) for a, x in self.objects.items()}

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.index is other.index or self.index.base == other.index.base
        ) and self.variance == other.variance and self.p == other.p and all(
            self.objects[a] == other.objects[a] for a in self.index.objects
        ) and all(self.maps[m] == other.maps[m] for m in self.index.base.morphisms)

    def __repr__(self):
        return f"<Diagram over {self.index.name or '?'} ({self.variance})>"


@dataclass(frozen=True, eq=False)
class DiagramMap:
    src: Diagram
    dst: Diagram
    comps: Mapping[str, ChainMap]

    def __post_init__(self):
        object.__setattr__(self, "comps", dict(self.comps))

    def __getitem__(self, a: str) -> ChainMap:
        return self.comps[a]

    def __matmul__(self, other: "DiagramMap") -> "DiagramMap":
        return compose(self, other)

    def __add__(self, other: "DiagramMap") -> "DiagramMap":
        return DiagramMap(self.src, self.dst, {a: self.comps[a] + other.comps[a] for a in self.comps})

    def __sub__(self, other: "DiagramMap") -> "DiagramMap":
        return DiagramMap(self.src, self.dst, {a: self.comps[a] - other.comps[a] for a in self.comps})

    def __eq__(self, other):
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and all(
            self.comps[a] == other.comps[a] for a in self.comps
        )

    def __repr__(self):
        return f"<DiagramMap over {self.src.index.name or '?'}>"


@dataclass(frozen=True, eq=False)
class SetPresheaf:
    """Finite sets and functions indexed like a :class:`Diagram`.

    Elements are strings; ``maps[m]`` is a dict following the shape
    direction of ``m``.
    """

    index: ReedyCategory
    sets: Mapping[str, tuple[str, ...]]
    maps: Mapping[str, Mapping[str, str]]
    variance: str = PRESHEAF

    def __post_init__(self):
        object.__setattr__(self, "sets", {a: tuple(s) for a, s in self.sets.items()})
        object.__setattr__(self, "maps", {m: dict(f) for m, f in self.maps.items()})

    @property
    def shape(self) -> ReedyCategory:
        return shape_of(self.index, self.variance)

    def size(self, a: str) -> int:
        return len(self.sets[a])

    def position(self, a: str, x: str) -> int:
        return self._positions[a][x]

    @property
    def _positions(self) -> dict[str, dict[str, int]]:
        cached = self.__dict__.get("_pos")
        if cached is None:
            cached = {a: {x: i for i, x in enumerate(s)} for a, s in self.sets.items()}
            object.__setattr__(self, "_pos", cached)
        return cached

    def __eq__(self, other):
        if not isinstance(other, SetPresheaf):
            return NotImplemented
        return (self.index.base == other.index.base and self.variance == other.variance
                and self.sets == other.sets and self.maps == other.maps)

    def __repr__(self):
        sizes = {a: len(s) for a, s in self.sets.items()}
        return f"<SetPresheaf over {self.index.name or '?'} {sizes}>"


# -- validation --------------------------------------------------------------

def validate_diagram(x: Diagram) -> list[Violation]:
    problems: list[Violation] = []
    c = x.shape.base
    for a in c.objects:
        if a not in x.objects:
            problems.append(Violation("missing object", f"no complex at {a}", {"object": a}))
        elif x.objects[a].p != x.p:
            problems.append(Violation("prime", f"complex at {a} is over F_{x.objects[a].p}", {"object": a}))
        else:
            for msg in ch.validate_complex(x.objects[a]):
                problems.append(Violation("complex", f"at {a}: {msg}", {"object": a}))
    if problems:
        return problems
    for m, (a, b) in c.morphisms.items():
        f = x.maps.get(m)
        if f is None:
            problems.append(Violation("missing map", f"no map for {m}", {"morphism": m}))
        elif f.src != x.objects[a] or f.dst != x.objects[b]:
            problems.append(Violation("endpoints", f"map for {m} has wrong endpoints", {"morphism": m}))
        elif not ch.is_chain_map(f):
            problems.append(Violation("chain map", f"map for {m} is not a chain map", {"morphism": m}))
    if problems:
        return problems
    for a in c.objects:
        if x.maps[c.identity(a)] != ch.identity(x.objects[a]):
            problems.append(Violation("identity", f"identity of {a} is not sent to an identity", {"object": a}))
    for (g, f), gf in c.table.items():
        if c.is_identity(g) or c.is_identity(f):
            continue
        if ch.compose(x.maps[g], x.maps[f]) != x.maps[gf]:
            problems.append(Violation("functoriality", f"X({g}) ∘ X({f}) != X({gf})", {"pair": [g, f]}))
    return problems


def validate_diagram_map(phi: DiagramMap) -> list[Violation]:
    x, y = phi.src, phi.dst
    if x.index.base != y.index.base or x.variance != y.variance:
        return [Violation("index", "source and target live over different indices", {})]
    problems: list[Violation] = []
    c = x.shape.base
    for a in c.objects:
        f = phi.comps.get(a)
        if f is None or f.src != x[a] or f.dst != y[a]:
            problems.append(Violation("component", f"bad component at {a}", {"object": a}))
        elif not ch.is_chain_map(f):
            problems.append(Violation("chain map", f"component at {a} is not a chain map", {"object": a}))
    if problems:
        return problems
    for m, (a, b) in c.morphisms.items():
        if c.is_identity(m):
            continue
        if ch.compose(y.maps[m], phi[a]) != ch.compose(phi[b], x.maps[m]):
            problems.append(Violation("naturality", f"naturality square for {m} does not commute", {"morphism": m}))
    return problems


def validate_set_presheaf(k: SetPresheaf) -> list[Violation]:
    problems: list[Violation] = []
    c = k.shape.base
    for m, (a, b) in c.morphisms.items():
        f = k.maps.get(m)
        if f is None or set(f) != set(k.sets[a]) or not set(f.values()) <= set(k.sets[b]):
            problems.append(Violation("function", f"map for {m} is not a function {a} -> {b}", {"morphism": m}))
    if problems:
        return problems
    for a in c.objects:
        if any(k.maps[c.identity(a)][x] != x for x in k.sets[a]):
            problems.append(Violation("identity", f"identity of {a} is not sent to an identity", {"object": a}))
    for (g, f), gf in c.table.items():
        fg, ff, fgf = k.maps[g], k.maps[f], k.maps[gf]
        if any(fg[ff[x]] != fgf[x] for x in ff):
            problems.append(Violation("functoriality", f"K({g}) ∘ K({f}) != K({gf})", {"pair": [g, f]}))
    return problems


# -- constructors ------------------------------------------------------------

def build(index: ReedyCategory, variance: str, objects: Mapping[str, ChainComplex],
          make_map: Callable[[str, ChainComplex, ChainComplex], ChainMap], p: int = 2) -> Diagram:
    """Diagram with the given objects and ``make_map(m, X_src, X_dst)`` per
    morphism (source and target taken in the shape)."""
    shape = shape_of(index, variance)
    maps = {}
    for m, (a, b) in shape.base.morphisms.items():
        if shape.base.is_identity(m):
            maps[m] = ch.identity(objects[a])
        else:
            maps[m] = make_map(m, objects[a], objects[b])
    return Diagram(index, variance, objects, maps, p)


def constant(index: ReedyCategory, x: ChainComplex, variance: str = PRESHEAF) -> Diagram:
    objs = {a: x for a in index.objects}
    return build(index, variance, objs, lambda m, s, t: ch.identity(x), x.p)


def zero_diagram(index: ReedyCategory, variance: str = PRESHEAF, p: int = 2) -> Diagram:
    return constant(index, ch.zero_complex(p), variance)


def identity(x: Diagram) -> DiagramMap:
    return DiagramMap(x, x, {a: ch.identity(c) for a, c in x.objects.items()})


def zero_map(x: Diagram, y: Diagram) -> DiagramMap:
    return DiagramMap(x, y, {a: ch.zero_map(x[a], y[a]) for a in x.objects})


def from_zero(y: Diagram) -> DiagramMap:
    return zero_map(zero_diagram(y.index, y.variance, y.p), y)


def to_zero(x: Diagram) -> DiagramMap:
    return zero_map(x, zero_diagram(x.index, x.variance, x.p))


def compose(g: DiagramMap, f: DiagramMap) -> DiagramMap:
    return DiagramMap(f.src, g.dst, {a: ch.compose(g[a], f[a]) for a in f.comps})


def constant_map(index: ReedyCategory, f: ChainMap, variance: str = PRESHEAF) -> DiagramMap:
    return DiagramMap(constant(index, f.src, variance), constant(index, f.dst, variance),
                      {a: f for a in index.objects})


def covariant_view(x: Diagram) -> Diagram:
    """The same data regarded as a covariant diagram on :attr:`shape`."""
    if x.variance == COVARIANT:
        return x
    return Diagram(x.shape, COVARIANT, x.objects, x.maps, x.p)


def reindexed(x: Diagram, index: ReedyCategory, variance: str) -> Diagram:
    """Reinterpret covariant data on ``shape_of(index, variance)``."""
    return Diagram(index, variance, x.objects, x.maps, x.p)


def set_presheaf_from(index: ReedyCategory, variance: str, sets: Mapping[str, list],
                      act: Callable[[str, object], object], label=str) -> SetPresheaf:
    """Build a SetPresheaf from Python values.

    ``act(m, x)`` applies the (shape-direction) function of ``m`` to the
    value ``x``; ``label`` turns values into element ids.
    """
    shape = shape_of(index, variance)
    ids = {a: [label(x) for x in sets[a]] for a in shape.objects}
    maps = {}
    for m, (a, b) in shape.base.morphisms.items():
        maps[m] = {label(x): label(act(m, x)) for x in sets[a]}
    return SetPresheaf(index, ids, maps, variance)


def empty_presheaf(index: ReedyCategory, variance: str = PRESHEAF) -> SetPresheaf:
    shape = shape_of(index, variance)
    return SetPresheaf(index, {a: () for a in shape.objects}, {m: {} for m in shape.base.morphisms}, variance)


def representable_set(index: ReedyCategory, alpha: str, variance: str = PRESHEAF) -> SetPresheaf:
    """``y(α) = shape(α, -)``; for a presheaf this is ``A(-, α)``."""
    shape = shape_of(index, variance)
    c = shape.base
    if alpha not in set(c.objects):
        raise DiagramError(f"unknown object {alpha!r}")
    sets = {g: c.hom(alpha, g) for g in c.objects}
    maps = {m: {w: c.compose(m, w) for w in sets[c.src(m)]} for m in c.morphisms}
    return SetPresheaf(index, sets, maps, variance)


def terminal_presheaf(index: ReedyCategory, variance: str = PRESHEAF) -> SetPresheaf:
    shape = shape_of(index, variance)
    return SetPresheaf(index, {a: ("*",) for a in shape.objects}, {m: {"*": "*"} for m in shape.base.morphisms}, variance)


def product_presheaf(k: SetPresheaf, l: SetPresheaf) -> SetPresheaf:
    shape = k.shape
    sets = {a: tuple(f"({x},{y})" for x in k.sets[a] for y in l.sets[a]) for a in shape.objects}
    maps = {
        m: {f"({x},{y})": f"({k.maps[m][x]},{l.maps[m][y]})" for x in k.sets[a] for y in l.sets[a]}
        for m, (a, _) in shape.base.morphisms.items()
    }
    return SetPresheaf(k.index, sets, maps, k.variance)


def natural_transformations(k: SetPresheaf, l: SetPresheaf, limit: int | None = None) -> list[dict[str, dict[str, str]]]:
    """All natural transformations ``K -> L`` (component functions per object),
    by backtracking with constraint propagation."""
    shape = k.shape
    c = shape.base
    elems = [(a, x) for a in sorted(c.objects, key=lambda o: -shape.degree[o]) for x in k.sets[a]]
    # constraint (a, x) --m--> (b, K(m)x): t_b(K(m) x) = L(m)(t_a(x))
    constraints: dict[tuple[str, str], list[tuple[str, tuple[str, str], tuple[str, str]]]] = {e: [] for e in elems}
    for m, (a, b) in c.morphisms.items():
        if c.is_identity(m):
            continue
        for x in k.sets[a]:
            edge = (m, (a, x), (b, k.maps[m][x]))
            constraints[edge[1]].append(edge)
            constraints[edge[2]].append(edge)
    out: list[dict] = []
    assign: dict[tuple[str, str], str] = {}

    def consistent(e) -> bool:
        for m, s, t in constraints[e]:
            if s in assign and t in assign and l.maps[m][assign[s]] != assign[t]:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(elems):
            comp = {a: {} for a in c.objects}
            for (a, x), v in assign.items():
                comp[a][x] = v
            out.append(comp)
            return limit is not None and len(out) >= limit
        e = elems[i]
        for v in l.sets[e[0]]:
            assign[e] = v
            if consistent(e) and rec(i + 1):
                return True
            del assign[e]
        return False

    rec(0)
    return out
