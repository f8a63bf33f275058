"""Restriction and pointwise left Kan extension along Reedy functors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .. import chainlab as ch
from .. import fincat as fc
from .. import reedy as rd
from ..fincat import FunctorData
from ..reedy import ReedyFunctor
from .core import COVARIANT, Diagram, DiagramError, DiagramMap
from .limits import Colimit, colimit_of


def shape_functor(f: ReedyFunctor, variance: str) -> FunctorData:
    """``f`` itself for covariant diagrams, ``f^op`` for presheaves."""
    if variance == COVARIANT:
        return f.functor
    return rd.opposite_reedy_functor(f).functor


def restrict(f: ReedyFunctor, y: Diagram) -> Diagram:
    """``f^* Y = Y ∘ f``."""
    if y.index.base != f.target.base:
        raise DiagramError("diagram is not indexed by the functor's target")
    objs = {a: y[f.object_map[a]] for a in f.source.objects}
    maps = {m: y.maps[f.morphism_map[m]] for m in f.source.base.morphisms}
    return Diagram(f.source, y.variance, objs, maps, y.p)


def restrict_map(f: ReedyFunctor, phi: DiagramMap) -> DiagramMap:
    return DiagramMap(restrict(f, phi.src), restrict(f, phi.dst),
                      {a: phi[f.object_map[a]] for a in f.source.objects})


@dataclass(frozen=True, eq=False)
class LeftKan:
    diagram: Diagram
    colimits: Mapping[str, Colimit]
    commas: Mapping[str, fc.CommaCategory]


def left_kan(f: ReedyFunctor, x: Diagram) -> LeftKan:
    """``(f_! X)_β = colim_{(α, u) ∈ (f/β)} X_α``, computed in the shape."""
    if x.index.base != f.source.base:
        raise DiagramError("diagram is not indexed by the functor's source")
    sf = shape_functor(f, x.variance)
    target_shape = sf.target
    commas, cols = {}, {}
    for beta in target_shape.objects:
        cc = fc.comma(sf, beta)
        objs = {o: x[alpha] for o, (alpha, _) in cc.object_data.items()}
        maps = {m: x.maps[g] for m, g in cc.morphism_data.items()}
        commas[beta] = cc
        cols[beta] = colimit_of(cc.category, objs, maps, x.p)
    maps = {}
    for m, (b1, b2) in target_shape.morphisms.items():
        src, dst = cols[b1], cols[b2]
        cocone = {o: dst.legs[commas[b2].object_for(alpha, target_shape.table[(m, u)])]
                  for o, (alpha, u) in commas[b1].object_data.items()}
        maps[m] = src.induced(cocone, dst.obj)
    d = Diagram(f.target, x.variance, {b: cols[b].obj for b in target_shape.objects}, maps, x.p)
    return LeftKan(d, cols, commas)


def left_kan_map(f: ReedyFunctor, phi: DiagramMap, kx: LeftKan | None = None, ky: LeftKan | None = None) -> DiagramMap:
    kx = kx or left_kan(f, phi.src)
    ky = ky or left_kan(f, phi.dst)
    comps = {}
    for beta, cc in kx.commas.items():
        cocone = {o: ch.compose(ky.colimits[beta].legs[o], phi[alpha]) for o, (alpha, _) in cc.object_data.items()}
        comps[beta] = kx.colimits[beta].induced(cocone, ky.colimits[beta].obj)
    return DiagramMap(kx.diagram, ky.diagram, comps)


def unit(f: ReedyFunctor, x: Diagram, kx: LeftKan | None = None) -> DiagramMap:
    """``η: X -> f^* f_! X``, the leg at ``(α, id)``."""
    kx = kx or left_kan(f, x)
    tgt = kx.diagram.shape.base
    comps = {}
    for alpha in x.shape.objects:
        beta = f.object_map[alpha]
        o = kx.commas[beta].object_for(alpha, tgt.identity(beta))
        comps[alpha] = kx.colimits[beta].legs[o]
    return DiagramMap(x, restrict(f, kx.diagram), comps)


def counit(f: ReedyFunctor, y: Diagram) -> tuple[DiagramMap, LeftKan]:
    """``ε: f_! f^* Y -> Y``, induced by the maps ``Y(u)``."""
    ky = left_kan(f, restrict(f, y))
    comps = {}
    for beta, cc in ky.commas.items():
        cocone = {o: y.maps[u] for o, (_, u) in cc.object_data.items()}
        comps[beta] = ky.colimits[beta].induced(cocone, y[beta])
    return DiagramMap(ky.diagram, y, comps), ky


def triangle_identities(f: ReedyFunctor, x: Diagram, y: Diagram) -> tuple[bool, bool]:
    """``ε_{f_!X} ∘ f_!η_X = id`` and ``f^*ε_Y ∘ η_{f^*Y} = id``."""
    from .core import compose, identity

    kx = left_kan(f, x)
    eta = unit(f, x, kx)
    k_eta = left_kan_map(f, eta, kx)
    eps, _ = counit(f, kx.diagram)
    first = compose(eps, DiagramMap(k_eta.src, eps.src, k_eta.comps)) == identity(kx.diagram)
    ry = restrict(f, y)
    eta_y = unit(f, ry)
    eps_y, _ = counit(f, y)
    second = compose(restrict_map(f, eps_y), DiagramMap(eta_y.src, restrict(f, eps_y.src), eta_y.comps)) == identity(ry)
    return first, second


# -- brute-force Quillen oracles -------------------------------------------------

@dataclass(frozen=True)
class OracleFailure:
    alpha: str
    generator: str
    expected: str

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "generator": self.generator, "expected": self.expected}


@dataclass(frozen=True)
class OracleVerdict:
    verdict: bool
    side: str
    checked: int
    failures: tuple[OracleFailure, ...]

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "side": self.side, "checked": self.checked,
                "failures": [x.to_json() for x in self.failures]}


def _generators(index: rd.ReedyCategory):
    cached = index.memo.get("quillen-generators")
    if cached is not None:
        return cached
    from .boxdot import cell_generators, generating_set

    k_i, k_j = cell_generators()
    out = [(g, "cof") for g in generating_set(index, k_i, COVARIANT, ["0->S0", "S0->D1"])]
    out += [(g, "triv_cof") for g in generating_set(index, k_j, COVARIANT, ["0->D1"])]
    index.memo["quillen-generators"] = out
    return out


def left_quillen_oracle(f: ReedyFunctor, samples=()) -> OracleVerdict:
    """Does ``f_!`` send the generating (trivial) cofibrations of the
    covariant Reedy structure on A (and any extra sampled maps, given as
    ``(map, "cof" | "triv_cof")``) to Reedy (trivial) cofibrations?"""
    from .limits import is_reedy_cofibration

    failures = []
    checks = [(g.map, g.alpha, g.label, want) for g, want in _generators(f.source)]
    checks += [(m, "*", f"sample{i}", want) for i, (m, want) in enumerate(samples)]
    kans: dict[int, LeftKan] = {}

    def kan_of(x: Diagram) -> LeftKan:
        if id(x) not in kans:
            kans[id(x)] = left_kan(f, x)
        return kans[id(x)]

    for m, alpha, label, want in checks:
        if not is_reedy_cofibration(left_kan_map(f, m, kan_of(m.src), kan_of(m.dst)), want == "triv_cof"):
            failures.append(OracleFailure(alpha, label, want))
    return OracleVerdict(not failures, "left", len(checks), tuple(failures))


def right_quillen_oracle(f: ReedyFunctor, samples=()) -> OracleVerdict:
    """Does ``f^*`` send the generating (trivial) cofibrations on B to Reedy
    (trivial) cofibrations on A?  This is ``f^*`` being left Quillen, i.e.
    ``f^* ⊣ f_*`` a Quillen adjunction."""
    from .limits import is_reedy_cofibration

    failures = []
    checks = [(g.map, g.alpha, g.label, want) for g, want in _generators(f.target)]
    checks += [(m, "*", f"sample{i}", want) for i, (m, want) in enumerate(samples)]
    for m, alpha, label, want in checks:
        if not is_reedy_cofibration(restrict_map(f, m), want == "triv_cof"):
            failures.append(OracleFailure(alpha, label, want))
    return OracleVerdict(not failures, "right", len(checks), tuple(failures))
