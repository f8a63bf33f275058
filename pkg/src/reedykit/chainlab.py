"""Finitely supported chain complexes over F_p.

This is the concrete model category used as the oracle throughout the
package: cofibrations are degreewise injections, fibrations degreewise
surjections and weak equivalences quasi-isomorphisms.  Every question about
it reduces to finite linear algebra (see :mod:`reedykit.linalg`).

Conventions: ``d[n]`` maps degree ``n`` to degree ``n - 1`` and is stored as a
``dim(n-1) x dim(n)`` matrix.  Map components are ``dst.dim(n) x src.dim(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg as la
from .linalg import MatrixEquations


class PrimeMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ChainComplex:
    p: int
    dims: Mapping[int, int]
    d: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        dims = {int(n): int(k) for n, k in self.dims.items() if int(k) > 0}
        d = {}
        for n, m in self.d.items():
            n = int(n)
            if dims.get(n, 0) and dims.get(n - 1, 0):
                mat = np.array(m, dtype=np.int64) % self.p
                if mat.ndim != 2:
                    mat = mat.reshape(dims[n - 1], dims[n])
                d[n] = mat
        object.__setattr__(self, "dims", dict(sorted(dims.items())))
        object.__setattr__(self, "d", d)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> np.ndarray:
        m = self.d.get(n)
        if m is None:
            return la.zeros(self.dim(n - 1), self.dim(n))
        return m

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    @cached_property
    def _ranks(self) -> dict[int, int]:
        return {n: la.rank(m, self.p) for n, m in self.d.items()}

    def diff_rank(self, n: int) -> int:
        return self._ranks.get(n, 0)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.p != other.p or self.dims != other.dims:
            return False
        return all(np.array_equal(self.diff(n), other.diff(n)) for n in self.dims)

    def __repr__(self):
        return f"ChainComplex(p={self.p}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    src: ChainComplex
    dst: ChainComplex
    comps: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.src.p != self.dst.p:
            raise PrimeMismatch(f"map between F_{self.src.p} and F_{self.dst.p} complexes")
        comps = {}
        for n, m in self.comps.items():
            n = int(n)
            if self.src.dim(n) and self.dst.dim(n):
                mat = np.array(m, dtype=np.int64) % self.p
                if mat.ndim != 2:
                    mat = mat.reshape(self.dst.dim(n), self.src.dim(n))
                comps[n] = mat
        object.__setattr__(self, "comps", comps)

    @property
    def p(self) -> int:
        return self.src.p

    def comp(self, n: int) -> np.ndarray:
        m = self.comps.get(n)
        if m is None:
            return la.zeros(self.dst.dim(n), self.src.dim(n))
        return m

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return compose(self, other)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.comp(n) + other.comp(n) for n in self.src.dims})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.comp(n) - other.comp(n) for n in self.src.dims})

    def scaled(self, c: int) -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: c * m for n, m in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        return all(np.array_equal(self.comp(n), other.comp(n)) for n in self.src.dims)

    def __repr__(self):
        return f"ChainMap({self.src.dims} -> {self.dst.dims})"


# -- basic objects -----------------------------------------------------------

def zero_complex(p: int = 2) -> ChainComplex:
    return ChainComplex(p, {})


def unit(p: int = 2) -> ChainComplex:
    """The monoidal unit: F_p concentrated in degree 0."""
    return sphere(0, p)


def sphere(n: int, p: int = 2, dim: int = 1) -> ChainComplex:
    return ChainComplex(p, {n: dim})


def disk(n: int, p: int = 2) -> ChainComplex:
    """F_p in degrees n and n-1 joined by the identity (contractible)."""
    return ChainComplex(p, {n: 1, n - 1: 1}, {n: [[1]]})


def identity(x: ChainComplex) -> ChainMap:
    return ChainMap(x, x, {n: la.eye(k) for n, k in x.dims.items()})


def zero_map(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap(x, y, {})


def from_zero(x: ChainComplex) -> ChainMap:
    return ChainMap(zero_complex(x.p), x, {})


def to_zero(x: ChainComplex) -> ChainMap:
    return ChainMap(x, zero_complex(x.p), {})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g ∘ f``."""
    if f.dst is not g.src and f.dst != g.src:
        raise ValueError("maps are not composable")
    return ChainMap(f.src, g.dst, {n: g.comp(n) @ f.comp(n) for n in f.src.dims})


def _check_prime(*objs) -> int:
    ps = {o.p for o in objs}
    if len(ps) > 1:
        raise PrimeMismatch(f"mixed primes {sorted(ps)}")
    return ps.pop()


# -- validation ---------------------------------------------------------------

def validate_complex(x: ChainComplex) -> list[str]:
    problems = []
    for n, m in x.d.items():
        if m.shape != (x.dim(n - 1), x.dim(n)):
            problems.append(f"d[{n}] has shape {m.shape}, expected {(x.dim(n - 1), x.dim(n))}")
    if problems:
        return problems
    for n in x.dims:
        dd = (x.diff(n - 1) @ x.diff(n)) % x.p
        if dd.any():
            problems.append(f"d∘d != 0 from degree {n} to degree {n - 2}")
    return problems


def validate_map(f: ChainMap) -> list[str]:
    problems = []
    for n, m in f.comps.items():
        if m.shape != (f.dst.dim(n), f.src.dim(n)):
            problems.append(f"component {n} has shape {m.shape}")
    if problems:
        return problems
    for n in sorted(set(f.src.dims) | {k + 1 for k in f.src.dims}):
        lhs = f.dst.diff(n) @ f.comp(n)
        rhs = f.comp(n - 1) @ f.src.diff(n)
        if ((lhs - rhs) % f.p).any():
            problems.append(f"square at degree {n} -> {n - 1} does not commute")
    return problems


def is_chain_map(f: ChainMap) -> bool:
    return not validate_map(f)


# -- homology and classification ---------------------------------------------

def homology_dims(x: ChainComplex) -> dict[int, int]:
    """Nonzero Betti numbers ``dim ker d_n - rank d_{n+1}``."""
    out = {}
    for n, k in x.dims.items():
        h = k - x.diff_rank(n) - x.diff_rank(n + 1)
        if h:
            out[n] = h
    return out


def is_acyclic(x: ChainComplex) -> bool:
    return not homology_dims(x)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``cone_n = X_{n-1} ⊕ Y_n`` with ``d(x, y) = (-dx, f x + dy)``."""
    x, y, p = f.src, f.dst, f.p
    degrees = set(y.dims) | {n + 1 for n in x.dims}
    dims = {n: x.dim(n - 1) + y.dim(n) for n in degrees}
    d = {}
    for n in degrees:
        top = np.concatenate([-x.diff(n - 1), la.zeros(x.dim(n - 2), y.dim(n))], axis=1)
        bot = np.concatenate([f.comp(n - 1), y.diff(n)], axis=1)
        d[n] = np.concatenate([top, bot], axis=0) % p
    return ChainComplex(p, dims, d)


def is_injective(f: ChainMap) -> bool:
    return all(la.rank(f.comp(n), f.p) == k for n, k in f.src.dims.items())


def is_surjective(f: ChainMap) -> bool:
    return all(la.rank(f.comp(n), f.p) == k for n, k in f.dst.dims.items())


def is_quasi_isomorphism(f: ChainMap) -> bool:
    return is_acyclic(mapping_cone(f))


def is_isomorphism(f: ChainMap) -> bool:
    return f.src.dims == f.dst.dims and is_injective(f) and is_chain_map(f)


@dataclass(frozen=True)
class MapClass:
    cofibration: bool
    fibration: bool
    weak_equivalence: bool

    @property
    def trivial_cofibration(self) -> bool:
        return self.cofibration and self.weak_equivalence

    @property
    def trivial_fibration(self) -> bool:
        return self.fibration and self.weak_equivalence


def classify_map(f: ChainMap) -> MapClass:
    return MapClass(is_injective(f), is_surjective(f), is_quasi_isomorphism(f))


# -- sums, kernels, cokernels ------------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectSum:
    obj: ChainComplex
    injections: tuple[ChainMap, ...]
    projections: tuple[ChainMap, ...]

    def copair(self, maps: Sequence[ChainMap], target: ChainComplex | None = None) -> ChainMap:
        """The map out of the sum restricting to ``maps[i]`` on summand i."""
        if target is None:
            target = maps[0].dst
        comps = {}
        for n in self.obj.dims:
            comps[n] = np.concatenate([m.comp(n) for m in maps], axis=1)
        return ChainMap(self.obj, target, comps)

    def pair(self, maps: Sequence[ChainMap], source: ChainComplex | None = None) -> ChainMap:
        """The map into the sum with components ``maps[i]``."""
        if source is None:
            source = maps[0].src
        comps = {}
        for n in source.dims:
            comps[n] = np.concatenate([m.comp(n) for m in maps], axis=0)
        return ChainMap(source, self.obj, comps)


def direct_sum(xs: Sequence[ChainComplex], p: int | None = None) -> DirectSum:
    if p is None:
        if not xs:
            raise ValueError("empty direct sum needs an explicit prime")
        p = _check_prime(*xs)
    degrees = sorted(set().union(*[set(x.dims) for x in xs])) if xs else []
    dims = {n: sum(x.dim(n) for x in xs) for n in degrees}
    d = {}
    for n in degrees:
        d[n] = _block_diag([x.diff(n) for x in xs])
    total = ChainComplex(p, dims, d)
    injections, projections = [], []
    for i, x in enumerate(xs):
        inj, proj = {}, {}
        for n in x.dims:
            before = sum(y.dim(n) for y in xs[:i])
            e = la.zeros(dims[n], x.dim(n))
            e[before:before + x.dim(n)] = la.eye(x.dim(n))
            inj[n], proj[n] = e, e.T.copy()
        injections.append(ChainMap(x, total, inj))
        projections.append(ChainMap(total, x, proj))
    return DirectSum(total, tuple(injections), tuple(projections))


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = la.zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def direct_sum_map(fs: Sequence[ChainMap], src: DirectSum, dst: DirectSum) -> ChainMap:
    comps = {n: _block_diag([f.comp(n) for f in fs]) for n in src.obj.dims}
    return ChainMap(src.obj, dst.obj, comps)


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A subcomplex with its inclusion and a degreewise linear retraction."""

    obj: ChainComplex
    inclusion: ChainMap
    retraction: Mapping[int, np.ndarray]

    def lift(self, f: ChainMap) -> ChainMap:
        """Factor ``f`` (landing inside the subcomplex) through the inclusion."""
        comps = {n: self.retraction[n] @ f.comp(n) for n in f.src.dims if n in self.retraction}
        g = ChainMap(f.src, self.obj, comps)
        if compose(self.inclusion, g) != f:
            raise ValueError("map does not land in the subcomplex")
        return g


@dataclass(frozen=True, eq=False)
class QuotientComplex:
    """A quotient complex with its projection and a degreewise linear section."""

    obj: ChainComplex
    projection: ChainMap
    section: Mapping[int, np.ndarray]

    def descend(self, f: ChainMap) -> ChainMap:
        """Factor ``f`` (vanishing on the kernel) through the projection."""
        comps = {n: f.comp(n) @ self.section[n] for n in self.obj.dims}
        g = ChainMap(self.obj, f.dst, comps)
        if compose(g, self.projection) != f:
            raise ValueError("map does not vanish on the kernel of the projection")
        return g


def kernel(f: ChainMap) -> Subcomplex:
    p, w = f.p, f.src
    basis, retr = {}, {}
    for n, k in w.dims.items():
        b, r = la.kernel_with_retraction(f.comp(n), p)
        basis[n], retr[n] = b, r
    return _subcomplex(w, basis, retr)


def _subcomplex(w: ChainComplex, basis, retr) -> Subcomplex:
    p = w.p
    dims = {n: b.shape[1] for n, b in basis.items()}
    d = {}
    for n in w.dims:
        if n - 1 in basis:
            d[n] = retr[n - 1] @ w.diff(n) @ basis[n] % p
    k = ChainComplex(p, dims, d)
    return Subcomplex(k, ChainMap(k, w, basis), {n: r for n, r in retr.items()})


def subcomplex_spanned(w: ChainComplex, gens: Mapping[int, np.ndarray]) -> Subcomplex:
    """Smallest subcomplex containing the given degreewise column vectors."""
    p = w.p
    cols = {n: (gens.get(n, la.zeros(k, 0)) % p) for n, k in w.dims.items()}
    for n in sorted(w.dims):
        if n - 1 in cols:
            cols[n - 1] = np.concatenate([cols[n - 1], w.diff(n) @ cols[n] % p], axis=1)
    basis, retr = {}, {}
    for n, c in cols.items():
        b = la.image_basis(c, p)
        basis[n], retr[n] = b, la.left_inverse(b, p)
    return _subcomplex(w, basis, retr)


def cokernel(f: ChainMap) -> QuotientComplex:
    p, w = f.p, f.dst
    proj, sect = {}, {}
    for n, k in w.dims.items():
        proj[n], sect[n] = la.quotient_map(f.comp(n), p)
    dims = {n: m.shape[0] for n, m in proj.items()}
    d = {}
    for n in w.dims:
        if n - 1 in proj:
            d[n] = proj[n - 1] @ w.diff(n) @ sect[n] % p
    q = ChainComplex(p, dims, d)
    return QuotientComplex(q, ChainMap(w, q, proj), sect)


def quotient_by(sub: Subcomplex) -> QuotientComplex:
    return cokernel(sub.inclusion)


# -- pushouts and pullbacks --------------------------------------------------

@dataclass(frozen=True, eq=False)
class Pushout:
    obj: ChainComplex
    left: ChainMap
    right: ChainMap
    _sum: DirectSum
    _quotient: QuotientComplex

    def induced(self, a: ChainMap, b: ChainMap) -> ChainMap:
        """The map out of the pushout restricting to ``a`` and ``b``."""
        return self._quotient.descend(self._sum.copair([a, b]))


def pushout(f: ChainMap, g: ChainMap) -> Pushout:
    """Pushout of ``Y <-f- X -g-> Z`` as ``(Y ⊕ Z) / {(f x, -g x)}``."""
    if f.src != g.src:
        raise ValueError("pushout legs must share a source")
    _check_prime(f.dst, g.dst)
    s = direct_sum([f.dst, g.dst])
    q = cokernel(s.pair([f, g.scaled(-1)]))
    left = compose(q.projection, s.injections[0])
    right = compose(q.projection, s.injections[1])
    return Pushout(q.obj, left, right, s, q)


@dataclass(frozen=True, eq=False)
class Pullback:
    obj: ChainComplex
    left: ChainMap
    right: ChainMap
    _sum: DirectSum
    _sub: Subcomplex

    def induced(self, a: ChainMap, b: ChainMap) -> ChainMap:
        """The map into the pullback with components ``a`` and ``b``."""
        return self._sub.lift(self._sum.pair([a, b]))


def pullback(f: ChainMap, g: ChainMap) -> Pullback:
    """Pullback of ``Y -f-> X <-g- Z`` as the kernel of ``(y, z) ↦ f y - g z``."""
    if f.dst != g.dst:
        raise ValueError("pullback legs must share a target")
    s = direct_sum([f.src, g.src])
    k = kernel(s.copair([f, g.scaled(-1)]))
    left = compose(s.projections[0], k.inclusion)
    right = compose(s.projections[1], k.inclusion)
    return Pullback(k.obj, left, right, s, k)


# -- tensor, hom, copower ----------------------------------------------------

def _sign(k: int, p: int) -> int:
    return 1 if (k % 2 == 0 or p == 2) else -1


def _tensor_blocks(x: ChainComplex, y: ChainComplex, n: int) -> list[tuple[int, int, int]]:
    """(i, offset, size) for the blocks ``X_i ⊗ Y_{n-i}`` of degree n."""
    out, off = [], 0
    for i in x.dims:
        size = x.dim(i) * y.dim(n - i)
        if size:
            out.append((i, off, size))
            off += size
    return out


def tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Graded tensor product with the Koszul sign ``d(a⊗b) = da⊗b + (-1)^|a| a⊗db``."""
    p = _check_prime(x, y)
    degrees = sorted({i + j for i in x.dims for j in y.dims})
    dims = {n: sum(s for _, _, s in _tensor_blocks(x, y, n)) for n in degrees}
    d = {}
    for n in degrees:
        if n - 1 not in dims:
            continue
        m = la.zeros(dims[n - 1], dims[n])
        lower = {i: off for i, off, _ in _tensor_blocks(x, y, n - 1)}
        for i, off, size in _tensor_blocks(x, y, n):
            j = n - i
            if i - 1 in lower and x.dim(i - 1):
                blk = np.kron(x.diff(i), la.eye(y.dim(j)))
                o = lower[i - 1]
                m[o:o + blk.shape[0], off:off + size] += blk
            if i in lower and y.dim(j - 1):
                blk = _sign(i, p) * np.kron(la.eye(x.dim(i)), y.diff(j))
                o = lower[i]
                m[o:o + blk.shape[0], off:off + size] += blk
        d[n] = m % p
    return ChainComplex(p, dims, d)


def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    src, dst = tensor(f.src, g.src), tensor(f.dst, g.dst)
    comps = {}
    for n in src.dims:
        m = la.zeros(dst.dim(n), src.dim(n))
        tgt = {i: off for i, off, _ in _tensor_blocks(f.dst, g.dst, n)}
        for i, off, size in _tensor_blocks(f.src, g.src, n):
            if i in tgt:
                blk = np.kron(f.comp(i), g.comp(n - i))
                m[tgt[i]:tgt[i] + blk.shape[0], off:off + size] = blk
        comps[n] = m
    return ChainMap(src, dst, comps)


def _hom_blocks(x: ChainComplex, y: ChainComplex, n: int) -> list[tuple[int, int, int, int]]:
    """(k, offset, rows, cols) for blocks ``Hom(X_k, Y_{k+n})`` (row-major)."""
    out, off = [], 0
    for k in x.dims:
        r, c = y.dim(k + n), x.dim(k)
        if r and c:
            out.append((k, off, r, c))
            off += r * c
    return out


def _hom_degrees(x: ChainComplex, y: ChainComplex) -> list[int]:
    return sorted({j - i for i in x.dims for j in y.dims})


def hom_complex(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Internal hom with ``(df) = d_Y f - (-1)^n f d_X`` on degree-n maps.

    Degree-0 cycles are exactly the chain maps ``X -> Y``.
    """
    p = _check_prime(x, y)
    degrees = _hom_degrees(x, y)
    dims = {n: sum(r * c for _, _, r, c in _hom_blocks(x, y, n)) for n in degrees}
    d = {}
    for n in degrees:
        if n - 1 not in dims:
            continue
        m = la.zeros(dims[n - 1], dims[n])
        lower = {k: (off, r, c) for k, off, r, c in _hom_blocks(x, y, n - 1)}
        for k, off, r, c in _hom_blocks(x, y, n):
            size = r * c
            if k in lower:  # d_Y ∘ F_k
                o, rr, cc = lower[k]
                blk = np.kron(y.diff(k + n), la.eye(c))
                m[o:o + rr * cc, off:off + size] += blk
            if k + 1 in lower:  # -(-1)^n F_k ∘ d_X lands in block k+1
                o, rr, cc = lower[k + 1]
                blk = -_sign(n, p) * np.kron(la.eye(r), x.diff(k + 1).T)
                m[o:o + rr * cc, off:off + size] += blk
        d[n] = m % p
    return ChainComplex(p, dims, d)


def hom_post(g: ChainMap, x: ChainComplex) -> ChainMap:
    """``Hom(X, g): Hom(X, Y) -> Hom(X, Y')``."""
    src, dst = hom_complex(x, g.src), hom_complex(x, g.dst)
    comps = {}
    for n in src.dims:
        m = la.zeros(dst.dim(n), src.dim(n))
        tgt = {k: off for k, off, _, _ in _hom_blocks(x, g.dst, n)}
        for k, off, r, c in _hom_blocks(x, g.src, n):
            if k in tgt:
                blk = np.kron(g.comp(k + n), la.eye(c))
                m[tgt[k]:tgt[k] + blk.shape[0], off:off + r * c] = blk
        comps[n] = m
    return ChainMap(src, dst, comps)


def hom_pre(f: ChainMap, y: ChainComplex) -> ChainMap:
    """``Hom(f, Y): Hom(X, Y) -> Hom(X', Y)`` for ``f: X' -> X``."""
    src, dst = hom_complex(f.dst, y), hom_complex(f.src, y)
    comps = {}
    for n in src.dims:
        m = la.zeros(dst.dim(n), src.dim(n))
        tgt = {k: off for k, off, _, _ in _hom_blocks(f.src, y, n)}
        for k, off, r, c in _hom_blocks(f.dst, y, n):
            if k in tgt:
                blk = np.kron(la.eye(r), f.comp(k).T)
                m[tgt[k]:tgt[k] + blk.shape[0], off:off + r * c] = blk
        comps[n] = m
    return ChainMap(src, dst, comps)


def hom_element(f: ChainMap) -> np.ndarray:
    """The degree-0 vector of ``Hom(X, Y)`` representing a chain map."""
    parts = [f.comp(k).reshape(-1) for k, _, _, _ in _hom_blocks(f.src, f.dst, 0)]
    return np.concatenate(parts) if parts else la.zeros(0, 1)[:, 0]


def map_from_hom_element(x: ChainComplex, y: ChainComplex, vec: np.ndarray) -> ChainMap:
    comps = {k: vec[off:off + r * c].reshape(r, c) for k, off, r, c in _hom_blocks(x, y, 0)}
    return ChainMap(x, y, comps)


def copower(s: int | Sequence, x: ChainComplex) -> DirectSum:
    """``S · X``: one copy of X per element of the finite set S."""
    n = s if isinstance(s, int) else len(s)
    return direct_sum([x] * n, p=x.p)


def copower_map(fn: Sequence[int], src: DirectSum, dst: DirectSum, f: ChainMap | None = None) -> ChainMap:
    """Map ``S·X -> T·Y`` sending summand s to summand ``fn[s]`` via ``f``."""
    if not fn:
        return zero_map(src.obj, dst.obj)
    if f is None:
        f = identity(src.injections[0].src)
    x, y = f.src, f.dst
    comps = {}
    for n in src.obj.dims:
        kx, ky = x.dim(n), y.dim(n)
        if not ky:
            continue
        m = la.zeros(dst.obj.dim(n), src.obj.dim(n))
        block = f.comp(n)
        for s_, t in enumerate(fn):
            m[t * ky:(t + 1) * ky, s_ * kx:(s_ + 1) * kx] = block
        comps[n] = m
    return ChainMap(src.obj, dst.obj, comps)


# -- isomorphisms and normal forms -------------------------------------------

def _adapted_basis(x: ChainComplex) -> tuple[dict[int, np.ndarray], dict[int, tuple[int, int, int]]]:
    """Per degree a basis ``[B | H | P]`` with ``d P_n = B_{n-1}``, B and H cycles.

    Also returns the block sizes ``(len B, len H, len P)`` per degree.
    """
    p = x.p
    pre: dict[int, np.ndarray] = {}
    cyc: dict[int, np.ndarray] = {}
    for n, k in x.dims.items():
        z = la.nullspace(x.diff(n), p)
        cyc[n] = z
        pre[n] = la.complete_basis(z, p)
    bases, sizes = {}, {}
    for n, k in x.dims.items():
        b = x.diff(n + 1) @ pre[n + 1] % p if n + 1 in pre else la.zeros(k, 0)
        z = cyc[n]
        coords = la.solve(z, b, p) if b.shape[1] else la.zeros(z.shape[1], 0)
        h = z @ la.complete_basis(coords, p) % p
        bases[n] = np.concatenate([b, h, pre[n]], axis=1) % p
        sizes[n] = (b.shape[1], h.shape[1], pre[n].shape[1])
    return bases, sizes


def find_isomorphism(x: ChainComplex, y: ChainComplex) -> ChainMap | None:
    """An explicit chain isomorphism ``X -> Y`` or None.

    Over a field a complex is determined up to isomorphism by its dimensions
    and the ranks of its differentials; the map sends an adapted basis of X
    to one of Y.
    """
    if x.p != y.p or x.dims != y.dims:
        return None
    bx, sx = _adapted_basis(x)
    by, sy = _adapted_basis(y)
    if sx != sy:
        return None
    comps = {n: by[n] @ la.inverse(bx[n], x.p) % x.p for n in x.dims}
    return ChainMap(x, y, comps)


def dual(x: ChainComplex) -> ChainComplex:
    """Linear dual, regraded so that ``(X*)_n = (X_{-n})^*``."""
    dims = {-n: k for n, k in x.dims.items()}
    d = {1 - n: m.T.copy() for n, m in x.d.items()}
    return ChainComplex(x.p, dims, d)


def dual_map(f: ChainMap) -> ChainMap:
    """``f*: Y* -> X*`` for ``f: X -> Y``."""
    return ChainMap(dual(f.dst), dual(f.src), {-n: m.T.copy() for n, m in f.comps.items()})


# -- chain maps as solutions of linear systems -------------------------------

def _declare(eqs: MatrixEquations, key, x: ChainComplex, y: ChainComplex) -> None:
    for n in x.dims:
        if y.dim(n):
            eqs.unknown((key, n), y.dim(n), x.dim(n))


def _chain_equations(eqs: MatrixEquations, key, x: ChainComplex, y: ChainComplex) -> None:
    """Constrain unknown ``key`` by ``d_Y h_n = h_{n-1} d_X``."""
    for n in x.dims:
        if y.dim(n - 1):
            eqs.equation([
                (y.diff(n), (key, n), None),
                (-la.eye(y.dim(n - 1)), (key, n - 1), x.diff(n)),
            ], la.zeros(y.dim(n - 1), x.dim(n)))


def chain_map_unknowns(eqs: MatrixEquations, key, x: ChainComplex, y: ChainComplex) -> None:
    """Declare an unknown chain map ``x -> y`` named ``key``."""
    _declare(eqs, key, x, y)
    _chain_equations(eqs, key, x, y)


def map_from_solution(sol: dict, key, x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap(x, y, {n: sol[(key, n)] for n in x.dims if (key, n) in sol})


def hom_space(x: ChainComplex, y: ChainComplex) -> list[ChainMap]:
    """A basis of the F_p-vector space of chain maps ``X -> Y``."""
    eqs = MatrixEquations(_check_prime(x, y))
    chain_map_unknowns(eqs, "h", x, y)
    return [map_from_solution(s, "h", x, y) for s in eqs.solution_space()]


def hom_dimension(x: ChainComplex, y: ChainComplex) -> int:
    eqs = MatrixEquations(_check_prime(x, y))
    chain_map_unknowns(eqs, "h", x, y)
    return eqs.solution_dimension()


class LiftingError(ValueError):
    pass


def solve_lifting(i: ChainMap, q: ChainMap, u: ChainMap, v: ChainMap) -> ChainMap | None:
    """Diagonal ``h: Y -> E`` in the square ``q∘u = v∘i`` or None if none exists.

    ``i: X -> Y``, ``q: E -> B``, ``u: X -> E``, ``v: Y -> B``.  The answer is
    exact: None means the linear system for h is inconsistent.
    """
    if compose(q, u) != compose(v, i):
        raise LiftingError("lifting square does not commute")
    p = _check_prime(i.src, q.src)
    x, y, e, b = i.src, i.dst, q.src, q.dst
    eqs = MatrixEquations(p)
    chain_map_unknowns(eqs, "h", y, e)
    for n in set(x.dims) | set(y.dims) | set(e.dims):
        if x.dim(n) and e.dim(n):
            if y.dim(n):
                eqs.equation([(None, ("h", n), i.comp(n))], u.comp(n))
            else:
                eqs.equation([], u.comp(n))
        if y.dim(n) and b.dim(n):
            if e.dim(n):
                eqs.equation([(q.comp(n), ("h", n), None)], v.comp(n))
            else:
                eqs.equation([], v.comp(n))
    sol = eqs.solve()
    if sol is None:
        return None
    return map_from_solution(sol, "h", y, e)


def factor_cofibration_trivial_fibration(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """``f = q ∘ i`` with i injective and q a surjective quasi-isomorphism.

    Middle object ``Y ⊕ cone(id_X)``; i is ``x ↦ (f x, (0, x))`` and q the
    projection onto Y, whose kernel ``cone(id_X)`` is contractible.
    """
    x, y = f.src, f.dst
    c = mapping_cone(identity(x))
    incl = {}
    for n, k in x.dims.items():
        m = la.zeros(c.dim(n), k)
        m[x.dim(n - 1):, :] = la.eye(k)
        incl[n] = m
    into_cone = ChainMap(x, c, incl)
    s = direct_sum([y, c])
    return s.pair([f, into_cone]), s.projections[0]
