"""Finite (co)limits of chain complexes, latching and matching objects, Reedy
classification of diagram maps, and diagram-level linear systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .. import chainlab as ch
from .. import linalg as la
from .. import reedy as rd
from ..chainlab import ChainComplex, ChainMap
from ..fincat import CommaCategory, FiniteCategory
from ..linalg import MatrixEquations
from .core import Diagram, DiagramMap, compose


@dataclass(frozen=True, eq=False)
class Colimit:
    obj: ChainComplex
    legs: Mapping[str, ChainMap]
    _sum: ch.DirectSum
    _quotient: ch.QuotientComplex
    _order: tuple[str, ...]

    def induced(self, cocone: Mapping[str, ChainMap], target: ChainComplex) -> ChainMap:
        """The map out of the colimit restricting to ``cocone[j]`` on leg j."""
        if not self._order:
            return ch.zero_map(self.obj, target)
        return self._quotient.descend(self._sum.copair([cocone[j] for j in self._order], target))


@dataclass(frozen=True, eq=False)
class Limit:
    obj: ChainComplex
    legs: Mapping[str, ChainMap]
    _sum: ch.DirectSum
    _sub: ch.Subcomplex
    _order: tuple[str, ...]

    def induced(self, cone: Mapping[str, ChainMap], source: ChainComplex) -> ChainMap:
        if not self._order:
            return ch.zero_map(source, self.obj)
        return self._sub.lift(self._sum.pair([cone[j] for j in self._order], source))


def colimit_of(j: FiniteCategory, objects: Mapping[str, ChainComplex], maps: Mapping[str, ChainMap], p: int) -> Colimit:
    """Colimit as the cokernel of ``⊕_{f: a -> b} D(a) -> ⊕_a D(a)``,
    ``x ↦ ι_b D(f) x - ι_a x`` over non-identity ``f``."""
    order = tuple(j.objects)
    s = ch.direct_sum([objects[a] for a in order], p)
    pos = {a: i for i, a in enumerate(order)}
    arrows = j.non_identity_morphisms
    rel = ch.direct_sum([objects[j.src(f)] for f in arrows], p)
    if arrows:
        parts = []
        for f in arrows:
            a, b = j.morphisms[f]
            parts.append(ch.compose(s.injections[pos[b]], maps[f]) - s.injections[pos[a]])
        r = rel.copair(parts, s.obj)
    else:
        r = ch.zero_map(rel.obj, s.obj)
    q = ch.cokernel(r)
    legs = {a: ch.compose(q.projection, s.injections[pos[a]]) for a in order}
    return Colimit(q.obj, legs, s, q, order)


def limit_of(j: FiniteCategory, objects: Mapping[str, ChainComplex], maps: Mapping[str, ChainMap], p: int) -> Limit:
    """Limit as the kernel of ``∏_a D(a) -> ∏_{f: a -> b} D(b)``,
    ``(x_a) ↦ D(f) x_a - x_b``."""
    order = tuple(j.objects)
    s = ch.direct_sum([objects[a] for a in order], p)
    pos = {a: i for i, a in enumerate(order)}
    arrows = j.non_identity_morphisms
    rel = ch.direct_sum([objects[j.dst(f)] for f in arrows], p)
    if arrows:
        parts = []
        for f in arrows:
            a, b = j.morphisms[f]
            parts.append(ch.compose(maps[f], s.projections[pos[a]]) - s.projections[pos[b]])
        r = rel.pair(parts, s.obj)
    else:
        r = ch.zero_map(s.obj, rel.obj)
    k = ch.kernel(r)
    legs = {a: ch.compose(s.projections[pos[a]], k.inclusion) for a in order}
    return Limit(k.obj, legs, s, k, order)


def colimit(x: Diagram) -> Colimit:
    return colimit_of(x.shape.base, x.objects, x.maps, x.p)


def limit(x: Diagram) -> Limit:
    return limit_of(x.shape.base, x.objects, x.maps, x.p)


def _along_comma(x: Diagram, cc: CommaCategory):
    objs = {o: x[alpha] for o, (alpha, _) in cc.object_data.items()}
    maps = {m: x.maps[g] for m, g in cc.morphism_data.items()}
    return objs, maps


# -- latching and matching ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class Latching:
    colimit: Colimit
    to_object: ChainMap  # L_α X -> X_α

    @property
    def obj(self) -> ChainComplex:
        return self.colimit.obj


@dataclass(frozen=True, eq=False)
class Matching:
    limit: Limit
    from_object: ChainMap  # X_α -> M^α X

    @property
    def obj(self) -> ChainComplex:
        return self.limit.obj


def latching(x: Diagram, alpha: str) -> Latching:
    cc = rd.latching_comma(x.shape, alpha)
    objs, maps = _along_comma(x, cc)
    col = colimit_of(cc.category, objs, maps, x.p)
    to = col.induced({o: x.maps[u] for o, (_, u) in cc.object_data.items()}, x[alpha])
    return Latching(col, to)


def matching(x: Diagram, alpha: str) -> Matching:
    cc = rd.matching_comma(x.shape, alpha)
    objs, maps = _along_comma(x, cc)
    lim = limit_of(cc.category, objs, maps, x.p)
    frm = lim.induced({o: x.maps[u] for o, (_, u) in cc.object_data.items()}, x[alpha])
    return Matching(lim, frm)


def latching_object(x: Diagram, alpha: str) -> ChainComplex:
    return latching(x, alpha).obj


def matching_object(x: Diagram, alpha: str) -> ChainComplex:
    return matching(x, alpha).obj


def relative_latching_map(phi: DiagramMap, alpha: str) -> ChainMap:
    """``X_α ⊔_{L_α X} L_α Y -> Y_α``."""
    x, y = phi.src, phi.dst
    lx, ly = latching(x, alpha), latching(y, alpha)
    cc = rd.latching_comma(x.shape, alpha)
    l_phi = lx.colimit.induced(
        {o: ch.compose(ly.colimit.legs[o], phi[beta]) for o, (beta, _) in cc.object_data.items()}, ly.obj)
    po = ch.pushout(lx.to_object, l_phi)
    return po.induced(phi[alpha], ly.to_object)


def relative_matching_map(phi: DiagramMap, alpha: str) -> ChainMap:
    """``X_α -> M^α X ×_{M^α Y} Y_α``."""
    x, y = phi.src, phi.dst
    mx, my = matching(x, alpha), matching(y, alpha)
    cc = rd.matching_comma(x.shape, alpha)
    m_phi = my.limit.induced(
        {o: ch.compose(phi[beta], mx.limit.legs[o]) for o, (beta, _) in cc.object_data.items()}, mx.obj)
    pb = ch.pullback(m_phi, my.from_object)
    return pb.induced(mx.from_object, phi[alpha])


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ReedyClass:
    cof: bool
    triv_cof: bool
    fib: bool
    triv_fib: bool
    weq: bool

    def to_json(self) -> dict:
        return {"cof": self.cof, "triv_cof": self.triv_cof, "fib": self.fib,
                "triv_fib": self.triv_fib, "weq": self.weq}


def classify_reedy(phi: DiagramMap) -> ReedyClass:
    cof = triv_cof = fib = triv_fib = True
    for a in phi.src.shape.objects:
        lm = relative_latching_map(phi, a)
        inj = ch.is_injective(lm)
        cof &= inj
        triv_cof &= inj and ch.is_quasi_isomorphism(lm)
        mm = relative_matching_map(phi, a)
        sur = ch.is_surjective(mm)
        fib &= sur
        triv_fib &= sur and ch.is_quasi_isomorphism(mm)
    weq = all(ch.is_quasi_isomorphism(phi[a]) for a in phi.src.shape.objects)
    return ReedyClass(cof, triv_cof, fib, triv_fib, weq)


def is_reedy_cofibration(phi: DiagramMap, trivial: bool = False) -> bool:
    """Latching-side test only, stopping at the first failing object."""
    for a in phi.src.shape.objects:
        lm = relative_latching_map(phi, a)
        if not ch.is_injective(lm) or (trivial and not ch.is_quasi_isomorphism(lm)):
            return False
    return True


def classify_objectwise(phi: DiagramMap) -> ReedyClass:
    cls = [ch.classify_map(phi[a]) for a in phi.src.shape.objects]
    cof = all(c.cofibration for c in cls)
    fib = all(c.fibration for c in cls)
    weq = all(c.weak_equivalence for c in cls)
    return ReedyClass(cof, cof and weq, fib, fib and weq, weq)


# -- linear systems over diagrams --------------------------------------------

def natural_map_unknowns(eqs: MatrixEquations, key, x: Diagram, y: Diagram) -> None:
    """Declare an unknown natural chain map ``x -> y`` named ``key``."""
    c = x.shape.base
    for a in c.objects:
        ch.chain_map_unknowns(eqs, (key, a), x[a], y[a])
    for m, (a, b) in c.morphisms.items():
        if c.is_identity(m):
            continue
        fx, fy = x.maps[m], y.maps[m]
        for n in x[a].dims:
            if y[b].dim(n):
                eqs.equation([
                    (fy.comp(n), ((key, a), n), None),
                    (-la.eye(y[b].dim(n)), ((key, b), n), fx.comp(n)),
                ], la.zeros(y[b].dim(n), x[a].dim(n)))


def natural_map_from_solution(sol: dict, key, x: Diagram, y: Diagram) -> DiagramMap:
    return DiagramMap(x, y, {a: ch.map_from_solution(sol, (key, a), x[a], y[a]) for a in x.shape.objects})


def hom_space(x: Diagram, y: Diagram) -> list[DiagramMap]:
    eqs = MatrixEquations(x.p)
    natural_map_unknowns(eqs, "h", x, y)
    return [natural_map_from_solution(s, "h", x, y) for s in eqs.solution_space()]


def hom_dimension(x: Diagram, y: Diagram) -> int:
    eqs = MatrixEquations(x.p)
    natural_map_unknowns(eqs, "h", x, y)
    return eqs.solution_dimension()


def solve_lifting(i: DiagramMap, q: DiagramMap, u: DiagramMap, v: DiagramMap) -> DiagramMap | None:
    """Natural diagonal ``h: Y -> E`` with ``h∘i = u`` and ``q∘h = v``."""
    if compose(q, u) != compose(v, i):
        raise ch.LiftingError("lifting square does not commute")
    x, y, e, b = i.src, i.dst, q.src, q.dst
    eqs = MatrixEquations(x.p)
    natural_map_unknowns(eqs, "h", y, e)
    for a in y.shape.objects:
        for n in set(x[a].dims) | set(y[a].dims) | set(e[a].dims):
            if x[a].dim(n) and e[a].dim(n):
                if y[a].dim(n):
                    eqs.equation([(None, (("h", a), n), i[a].comp(n))], u[a].comp(n))
                else:
                    eqs.equation([], u[a].comp(n))
            if y[a].dim(n) and b[a].dim(n):
                if e[a].dim(n):
                    eqs.equation([(q[a].comp(n), (("h", a), n), None)], v[a].comp(n))
                else:
                    eqs.equation([], v[a].comp(n))
    sol = eqs.solve()
    if sol is None:
        return None
    return natural_map_from_solution(sol, "h", y, e)


def _square_system(i: DiagramMap, q: DiagramMap) -> MatrixEquations:
    """Unknowns ``u: X -> E`` and ``v: Y -> B`` (natural) with ``q u = v i``."""
    x, y, e, b = i.src, i.dst, q.src, q.dst
    eqs = MatrixEquations(x.p)
    natural_map_unknowns(eqs, "u", x, e)
    natural_map_unknowns(eqs, "v", y, b)
    for a in x.shape.objects:
        for n in x[a].dims:
            if b[a].dim(n):
                eqs.equation([
                    (q[a].comp(n), (("u", a), n), None),
                    (-la.eye(b[a].dim(n)), (("v", a), n), i[a].comp(n)),
                ], la.zeros(b[a].dim(n), x[a].dim(n)))
    return eqs


def commuting_squares(i: DiagramMap, q: DiagramMap) -> tuple[MatrixEquations, list[dict]]:
    eqs = _square_system(i, q)
    return eqs, eqs.solution_space()


def random_square(i: DiagramMap, q: DiagramMap, rng: np.random.Generator) -> tuple[DiagramMap, DiagramMap]:
    """A uniformly random commuting square ``q u = v i``."""
    eqs, basis = commuting_squares(i, q)
    p = i.src.p
    sol = {k: la.zeros(*shape) for k, shape in eqs.shapes.items()}
    for vec in basis:
        c = int(rng.integers(0, p))
        for k in sol:
            sol[k] = (sol[k] + c * vec[k]) % p
    u = natural_map_from_solution(sol, "u", i.src, q.src)
    v = natural_map_from_solution(sol, "v", i.dst, q.dst)
    return u, v


def has_lifting_property(i: DiagramMap, q: DiagramMap) -> bool:
    """Exact test that every commuting square from ``i`` to ``q`` has a lift.

    Lifts form the fibres of the linear map ``h ↦ (h∘i, q∘h)`` from natural
    maps ``Y -> E`` to commuting squares, so the property holds iff that map
    is onto, i.e. its rank equals the dimension of the space of squares.
    """
    sq_eqs, squares = commuting_squares(i, q)
    lifts = hom_space(i.dst, q.src)
    cols = []
    for h in lifts:
        u = compose(h, i)
        v = compose(q, h)
        vec = np.zeros(sq_eqs.size, dtype=np.int64)
        for (key, n), (r, c) in sq_eqs.shapes.items():
            name, a = key
            m = (u if name == "u" else v)[a].comp(n)
            o = sq_eqs.offsets[(key, n)]
            vec[o:o + r * c] = m.reshape(-1)
        cols.append(vec)
    if not cols:
        return len(squares) == 0
    return la.rank(np.stack(cols, axis=1), i.src.p) == len(squares)
