"""Seeded random complexes, diagrams and maps for property checks.

Everything takes a ``numpy.random.Generator`` so a seed reproduces a run
bit-exactly.
"""

from __future__ import annotations

import numpy as np

from . import chainlab as ch
from . import linalg as la
from .chainlab import ChainComplex, ChainMap
from .diagram import boxdot as bd
from .diagram import core, limits as lm, monoidal as mo
from .diagram.core import COVARIANT, PRESHEAF, Diagram, DiagramMap
from .reedy import ReedyCategory


def rng_for(seed: int, *salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, *salt])


# -- complexes -----------------------------------------------------------------

def random_complex(rng: np.random.Generator, p: int = 2, degrees: range = range(-1, 2), max_dim: int = 2) -> ChainComplex:
    """Random dimensions, then ``d_n`` with image inside ``ker d_{n-1}`` so
    that ``d² = 0`` by construction."""
    dims = {n: int(rng.integers(0, max_dim + 1)) for n in degrees}
    d = {}
    prev = None
    for n in degrees:
        if prev is None or not dims[n] or not dims[n - 1]:
            d[n] = la.zeros(dims.get(n - 1, 0), dims[n])
        else:
            ker = la.nullspace(prev, p)
            d[n] = (ker @ la.random_matrix(rng, ker.shape[1], dims[n], p)) % p
        prev = d[n]
    return ChainComplex(p, dims, d)


def random_map(rng: np.random.Generator, x: ChainComplex, y: ChainComplex) -> ChainMap:
    """Uniform random chain map from the space of all chain maps."""
    basis = ch.hom_space(x, y)
    out = ch.zero_map(x, y)
    for b in basis:
        if rng.integers(0, x.p):
            out = out + b
    return out


# -- diagrams ------------------------------------------------------------------

def random_natural_map(rng: np.random.Generator, x: Diagram, y: Diagram) -> DiagramMap:
    out = core.zero_map(x, y)
    for b in lm.hom_space(x, y):
        c = int(rng.integers(0, x.p))
        for _ in range(c):
            out = out + b
    return out


def free_diagram(rng: np.random.Generator, index: ReedyCategory, variance: str, max_dim: int = 3,
                 cells: int = 2) -> Diagram:
    """``⊕ y(α_i) ⊡ V_i`` for random objects and small complexes, choosing
    only representables small enough to respect ``max_dim``."""
    shape = core.shape_of(index, variance).base
    size = {a: max(len(shape.hom(a, g)) for g in shape.objects) for a in shape.objects}
    parts, budget = [], max_dim
    for _ in range(int(rng.integers(1, cells + 1))):
        fits = [a for a in shape.objects if size[a] <= budget]
        if not fits:
            break
        a = fits[int(rng.integers(0, len(fits)))]
        v = random_complex(rng, 2, range(0, 2), 1)
        budget -= size[a]
        parts.append(bd.boxdot(core.representable_set(index, a, variance), v).diagram)
    return direct_sum_diagram(parts, index, variance)


def direct_sum_diagram(parts: list[Diagram], index: ReedyCategory, variance: str, p: int = 2) -> Diagram:
    shape = core.shape_of(index, variance).base
    if not parts:
        return core.zero_diagram(index, variance, p)
    sums = {a: ch.direct_sum([d[a] for d in parts], p) for a in shape.objects}
    maps = {m: ch.direct_sum_map([d.maps[m] for d in parts], sums[a], sums[b])
            for m, (a, b) in shape.morphisms.items()}
    return Diagram(index, variance, {a: s.obj for a, s in sums.items()}, maps, p)


def cokernel_diagram(phi: DiagramMap) -> tuple[Diagram, DiagramMap]:
    """Objectwise cokernel with the quotient map."""
    shape = phi.dst.shape.base
    qs = {a: ch.cokernel(phi[a]) for a in shape.objects}
    maps = {m: qs[a].descend(ch.compose(qs[b].projection, phi.dst.maps[m])) for m, (a, b) in shape.morphisms.items()}
    d = Diagram(phi.dst.index, phi.dst.variance, {a: q.obj for a, q in qs.items()}, maps, phi.dst.p)
    return d, DiagramMap(phi.dst, d, {a: q.projection for a, q in qs.items()})


def max_dim(x: Diagram) -> int:
    return max((c.dim(n) for c in x.objects.values() for n in c.dims), default=0)


def random_diagram(rng: np.random.Generator, index: ReedyCategory, variance: str = PRESHEAF,
                   dim_bound: int = 3, attempts: int = 40) -> Diagram:
    """A random diagram with every per-degree dimension at most ``dim_bound``.

    Draws from a few families: constants, free diagrams, quotients of free
    diagrams by random images, and duals of free diagrams over the opposite
    variance.
    """
    for _ in range(attempts):
        kind = int(rng.integers(0, 4))
        if kind == 0:
            x = core.constant(index, random_complex(rng, 2, range(0, 2), 2), variance)
        elif kind == 1:
            x = free_diagram(rng, index, variance)
        elif kind == 2:
            f = free_diagram(rng, index, variance)
            g = free_diagram(rng, index, variance, cells=1)
            x, _ = cokernel_diagram(random_natural_map(rng, g, f))
        else:
            other = COVARIANT if variance == PRESHEAF else PRESHEAF
            x = mo.dual_diagram(free_diagram(rng, index, other))
        if max_dim(x) <= dim_bound:
            return x
    return core.constant(index, random_complex(rng, 2, range(0, 1), 1), variance)


def random_diagram_map(rng: np.random.Generator, index: ReedyCategory, variance: str = PRESHEAF,
                       dim_bound: int = 3) -> DiagramMap:
    x = random_diagram(rng, index, variance, dim_bound)
    y = random_diagram(rng, index, variance, dim_bound)
    return random_natural_map(rng, x, y)


# -- maps with a prescribed class ---------------------------------------------------

def _cell_maps(trivial: bool) -> list[ChainMap]:
    k_i, k_j = bd.cell_generators()
    return k_j if trivial else k_i


def random_cofibration(rng: np.random.Generator, index: ReedyCategory, variance: str = PRESHEAF,
                       trivial: bool = False, base: Diagram | None = None, dim_bound: int = 3) -> DiagramMap:
    """Pushout of a random generating (trivial) cofibration along a random map
    out of its source, retried until the dimension bound holds."""
    shape = core.shape_of(index, variance).base
    x = base if base is not None else random_diagram(rng, index, variance, max(dim_bound - 1, 1))
    ks = _cell_maps(trivial)
    size = {a: max(len(shape.hom(a, g)) for g in shape.objects) for a in shape.objects}
    fits = [a for a in shape.objects if size[a] <= dim_bound] or list(shape.objects)
    for _ in range(20):
        a = fits[int(rng.integers(0, len(fits)))]
        k = ks[int(rng.integers(0, len(ks)))]
        g = bd.generating_map(index, a, k, variance).map
        f = random_natural_map(rng, g.src, x)
        po = bd.pushout_diagram(g, f)
        if max_dim(po.diagram) <= dim_bound:
            return po.right
    return core.identity(x)


def random_fibration(rng: np.random.Generator, index: ReedyCategory, variance: str = PRESHEAF,
                     trivial: bool = False, dim_bound: int = 3) -> DiagramMap:
    """Dual of a random (trivial) cofibration of the opposite variance."""
    other = COVARIANT if variance == PRESHEAF else PRESHEAF
    return mo.dual_diagram_map(random_cofibration(rng, index, other, trivial, dim_bound=dim_bound))


def random_weak_equivalence(rng: np.random.Generator, index: ReedyCategory, variance: str = PRESHEAF) -> DiagramMap:
    """``X -> X ⊕ D`` with D a constant contractible diagram."""
    x = random_diagram(rng, index, variance, 2)
    d = core.constant(index, ch.disk(int(rng.integers(0, 2)), x.p), variance)
    sums = direct_sum_diagram([x, d], index, variance)
    shape = x.shape.base
    comps = {}
    for a in shape.objects:
        s = ch.direct_sum([x[a], d[a]], x.p)
        comps[a] = s.injections[0]
    return DiagramMap(x, sums, comps)


# -- plain complexes: cofibrations and weak equivalences ----------------------------

def random_complex_cofibration(rng: np.random.Generator, max_dim: int = 2) -> ChainMap:
    """Inclusion of the subcomplex generated by random vectors of a random
    complex; in general not split as a map of complexes."""
    y = random_complex(rng, max_dim=max_dim)
    gens = {n: la.random_matrix(rng, k, int(rng.integers(0, k + 1)), y.p) for n, k in y.dims.items()}
    return ch.subcomplex_spanned(y, gens).inclusion


def random_complex_weq(rng: np.random.Generator, x: ChainComplex | None = None, max_dim: int = 2) -> ChainMap:
    """A quasi-isomorphism out of X: collapse a random contractible
    subcomplex ``span(v, dv)``, then shear into a sum with a disk."""
    x = x if x is not None else random_complex(rng, max_dim=max_dim)
    f = ch.identity(x)
    movers = [n for n in x.dims if la.rank(x.diff(n), x.p)]
    if movers and rng.integers(0, 2):
        n = movers[int(rng.integers(0, len(movers)))]
        while True:
            v = la.random_matrix(rng, x.dim(n), 1, x.p)
            if np.any(x.diff(n) @ v % x.p):
                break
        f = ch.quotient_by(ch.subcomplex_spanned(x, {n: v})).projection
    if rng.integers(0, 2):
        y = f.dst
        s = ch.direct_sum([y, ch.disk(int(rng.integers(-1, 2)), x.p)], x.p)
        dsk = s.injections[1].src
        shear = s.pair([ch.identity(y), random_map(rng, y, dsk)], y)
        f = ch.compose(shear, f)
    return f
