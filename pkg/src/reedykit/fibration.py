"""Left and right fibrations of Reedy categories via the nerve criterion.

``f: A -> B`` is a left fibration when for every object α of A and every
``u: f(α) -> β`` in B the category of pairs ``(g, v)``, with ``g: α -> α'`` a
non-identity lowering map and ``v: f(α') -> β`` satisfying ``v∘f(g) = u``,
is empty or connected.  Right fibrations use the dual category built from
raising maps into α; it is implemented separately so that the duality
``left(f) == right(f^op)`` is a genuine check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import fincat as fc
from . import reedy as rd
from .fincat import FiniteCategory, FunctorData, Violation
from .reedy import ReedyCategory, ReedyFunctor


@dataclass(frozen=True)
class CommaCheck:
    """One ``(α, u)`` pair and the size/connectivity of its comma category."""

    alpha: str
    u: str
    beta: str
    objects: int
    components: int

    @property
    def ok(self) -> bool:
        return self.components <= 1

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "u": self.u, "beta": self.beta,
                "objects": self.objects, "components": self.components}


@dataclass(frozen=True)
class FibrationVerdict:
    verdict: bool
    side: str
    checked: tuple[CommaCheck, ...] = ()
    witness: CommaCheck | None = None
    witness_category: FiniteCategory | None = field(default=None, compare=False)
    witness_components: tuple[tuple[str, ...], ...] = ()

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "side": self.side, "checked": len(self.checked)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness"]["components"] = [list(c) for c in self.witness_components]
        return out


# -- the comma categories ----------------------------------------------------

def left_comma(f: ReedyFunctor, alpha: str, u: str) -> FiniteCategory:
    """``∂((α,u)/(f^←/β))`` for ``u: f(α) -> β``.

    Objects ``(g, v)``: ``g: α -> α'`` non-identity in A^←, ``v: f(α') -> β``
    with ``v∘f(g) = u``.  Morphisms ``h: α1 -> α2`` in A^← with
    ``h∘g1 = g2`` and ``v2∘f(h) = v1``.
    """
    a, b = f.source.base, f.target.base
    fm = f.morphism_map
    beta = b.dst(u)
    objects: dict[str, tuple[str, str]] = {}
    for g in a.morphisms_from(alpha):
        if g not in f.source.lowering or a.is_identity(g):
            continue
        tgt = a.dst(g)
        for v in b.hom(f.object_map[tgt], beta):
            if b.table[(v, fm[g])] == u:
                objects[f"<{g}|{v}>"] = (g, v)
    return _assemble(a, objects, f.source.lowering, lambda h, o1, o2: (
        a.table[(h, o1[0])] == o2[0] and b.table[(o2[1], fm[h])] == o1[1]), forward=True)


def right_comma(f: ReedyFunctor, alpha: str, u: str) -> FiniteCategory:
    """``∂((β/f^→)/(α,u))`` for ``u: β -> f(α)``.

    Objects ``(g, v)``: ``g: α' -> α`` non-identity in A^→, ``v: β -> f(α')``
    with ``f(g)∘v = u``.  Morphisms ``h: α1 -> α2`` in A^→ with
    ``g2∘h = g1`` and ``f(h)∘v1 = v2``.
    """
    a, b = f.source.base, f.target.base
    fm = f.morphism_map
    beta = b.src(u)
    objects: dict[str, tuple[str, str]] = {}
    for g in a.morphisms_to(alpha):
        if g not in f.source.raising or a.is_identity(g):
            continue
        src = a.src(g)
        for v in b.hom(beta, f.object_map[src]):
            if b.table[(fm[g], v)] == u:
                objects[f"<{g}|{v}>"] = (g, v)
    return _assemble(a, objects, f.source.raising, lambda h, o1, o2: (
        a.table[(o2[0], h)] == o1[0] and b.table[(fm[h], o1[1])] == o2[1]), forward=False)


def _assemble(a: FiniteCategory, objects, allowed, ok, forward: bool) -> FiniteCategory:
    """Comma category on ``objects`` whose morphisms are maps ``h`` in
    ``allowed`` between the underlying objects passing ``ok``."""
    def under(o):
        g = objects[o][0]
        return a.dst(g) if forward else a.src(g)

    morphisms, data = {}, {}
    for o1 in objects:
        for o2 in objects:
            for h in a.hom(under(o1), under(o2)):
                if h in allowed and ok(h, objects[o1], objects[o2]):
                    mid = f"[{h}:{o1}>{o2}]"
                    morphisms[mid] = (o1, o2)
                    data[mid] = h
    identities = {o: f"[{a.identity(under(o))}:{o}>{o}]" for o in objects}
    lookup = {(data[m], *morphisms[m]): m for m in morphisms}
    table = {}
    for f_, (o1, o2) in morphisms.items():
        for g_, (p1, p2) in morphisms.items():
            if p1 == o2:
                table[(g_, f_)] = lookup[(a.table[(data[g_], data[f_])], o1, p2)]
    return FiniteCategory(tuple(objects), morphisms, identities, table)


def _pairs_left(f: ReedyFunctor) -> Iterable[tuple[str, str]]:
    b = f.target.base
    for alpha in f.source.objects:
        for u in b.morphisms_from(f.object_map[alpha]):
            yield alpha, u


def _pairs_right(f: ReedyFunctor) -> Iterable[tuple[str, str]]:
    b = f.target.base
    for alpha in f.source.objects:
        for u in b.morphisms_to(f.object_map[alpha]):
            yield alpha, u


def _decide(f: ReedyFunctor, side: str) -> FibrationVerdict:
    build = left_comma if side == "left" else right_comma
    pairs = _pairs_left(f) if side == "left" else _pairs_right(f)
    b = f.target.base
    checked = []
    worst = None
    for alpha, u in pairs:
        cat = build(f, alpha, u)
        comps = fc.connected_components(cat)
        beta = b.dst(u) if side == "left" else b.src(u)
        check = CommaCheck(alpha, u, beta, len(cat.objects), len(comps))
        checked.append(check)
        if not check.ok:
            key = (check.objects, alpha, u)
            if worst is None or key < worst[0]:
                worst = (key, check, cat, comps)
    if worst is None:
        return FibrationVerdict(True, side, tuple(checked))
    _, check, cat, comps = worst
    return FibrationVerdict(False, side, tuple(checked), check, cat,
                            tuple(tuple(sorted(c)) for c in comps))


def is_left_fibration(f: ReedyFunctor) -> FibrationVerdict:
    """Nerve criterion; a negative verdict carries the failing comma
    category with the fewest objects."""
    return _decide(f, "left")


def is_right_fibration(f: ReedyFunctor) -> FibrationVerdict:
    return _decide(f, "right")


def is_left_fibrant(r: ReedyCategory) -> FibrationVerdict:
    return is_left_fibration(rd.to_terminal(r))


def is_right_fibrant(r: ReedyCategory) -> FibrationVerdict:
    return is_right_fibration(rd.to_terminal(r))


def left_fibrant_by_matching(r: ReedyCategory) -> bool:
    """Every matching category ``∂(α/A^←)`` is empty or connected."""
    return all(fc.nerve_is_empty_or_connected(rd.matching_category(r, a)) for a in r.objects)


def right_fibrant_by_latching(r: ReedyCategory) -> bool:
    return all(fc.nerve_is_empty_or_connected(rd.latching_category(r, a)) for a in r.objects)


# -- the alternative characterizations ---------------------------------------

def left_verdict_via_slices(f: ReedyFunctor) -> bool:
    """``f`` is a left fibration iff every ``(f/β)`` is left fibrant."""
    for beta in f.target.objects:
        r, _ = rd.comma_reedy(f.source, f.functor, beta)
        if not left_fibrant_by_matching(r):
            return False
    return True


def right_verdict_via_slices(f: ReedyFunctor) -> bool:
    for beta in f.target.objects:
        r, _ = rd.comma_reedy(f.source, f.functor, beta, coslice=True)
        if not right_fibrant_by_latching(r):
            return False
    return True


def lemma_verdicts(f: ReedyFunctor) -> dict[str, bool]:
    """The left-fibration verdict for ``f`` computed four ways."""
    return {
        "nerve": is_left_fibration(f).verdict,
        "opposite-right": is_right_fibration(rd.opposite_reedy_functor(f)).verdict,
        "lower-restriction": is_left_fibration(rd.lower_restriction(f)).verdict,
        "slices": left_verdict_via_slices(f),
    }


def right_lemma_verdicts(f: ReedyFunctor) -> dict[str, bool]:
    return {
        "nerve": is_right_fibration(f).verdict,
        "opposite-left": is_left_fibration(rd.opposite_reedy_functor(f)).verdict,
        "raise-restriction": is_right_fibration(rd.raise_restriction(f)).verdict,
        "slices": right_verdict_via_slices(f),
    }


# -- monoidal validity -------------------------------------------------------

@dataclass(frozen=True)
class MonoidalReport:
    valid: bool
    left_fibrant: FibrationVerdict
    non_epimorphisms: tuple[tuple[str, tuple[str, str]], ...]

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "left_fibrant": self.left_fibrant.to_json(),
            "non_epimorphisms": [{"morphism": m, "witness": list(w)} for m, w in self.non_epimorphisms],
        }


def monoidal_diagonal_valid(r: ReedyCategory) -> MonoidalReport:
    """Left fibrant and every lowering morphism an epimorphism."""
    lf = is_left_fibrant(r)
    bad = []
    for m in sorted(r.lowering):
        w = fc.epimorphism_witness(r.base, m)
        if w is not None:
            bad.append((m, w))
    return MonoidalReport(lf.verdict and not bad, lf, tuple(bad))


# -- forgetful functors between slices ----------------------------------------

@dataclass(frozen=True)
class SliceReport:
    hypothesis_ok: bool
    hypothesis_failures: tuple[Violation, ...]
    verdict: FibrationVerdict
    characterization: bool | None = None

    def to_json(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "hypothesis_failures": [v.to_json() for v in self.hypothesis_failures],
            "verdict": self.verdict.to_json(),
            "characterization": self.characterization,
        }


def forgetful_functor(r: ReedyCategory, embedding: FunctorData, m: str) -> tuple[ReedyFunctor, ReedyCategory, ReedyCategory]:
    """``(A/γ) -> (A/γ')`` induced by ``m: γ -> γ'`` in C."""
    c = embedding.target
    gamma, gamma2 = c.morphisms[m]
    s, scc = rd.slice_reedy(r, embedding, gamma)
    t, tcc = rd.slice_reedy(r, embedding, gamma2)
    omap = {o: tcc.object_for(alpha, c.table[(m, u)]) for o, (alpha, u) in scc.object_data.items()}
    mmap = {}
    for mid, g in scc.morphism_data.items():
        o1, o2 = s.base.morphisms[mid]
        mmap[mid] = f"[{g}:{omap[o1]}>{omap[o2]}]"
    return ReedyFunctor.build(s, t, omap, mmap), s, t


def find_pullback(c: FiniteCategory, f: str, g: str) -> tuple[str, str, str] | None:
    """An object P with projections ``(p1, p2)`` forming a pullback of
    ``f: x -> z <- y: g``, checked against every cone in C."""
    x, z = c.morphisms[f]
    y, z2 = c.morphisms[g]
    if z != z2:
        raise fc.CategoryError("pullback legs must share a target")

    def cones(q):
        return [(a, b) for a in c.hom(q, x) for b in c.hom(q, y) if c.table[(f, a)] == c.table[(g, b)]]

    for p in c.objects:
        for p1, p2 in cones(p):
            universal = True
            for q in c.objects:
                for a, b in cones(q):
                    ts = [t for t in c.hom(q, p) if c.table[(p1, t)] == a and c.table[(p2, t)] == b]
                    if len(ts) != 1:
                        universal = False
                        break
                if not universal:
                    break
            if universal:
                return p, p1, p2
    return None


def slice_forgetful_is_fibration(r: ReedyCategory, embedding: FunctorData, m: str) -> SliceReport:
    """Decide whether ``(A/γ) -> (A/γ')`` is a left fibration, reporting the
    sufficient hypotheses separately: every slice ``(A/c)`` over an object
    of C is left fibrant, and the pullbacks ``α ×_{γ'} γ`` exist in C."""
    c = embedding.target
    failures: list[Violation] = []
    for obj in c.objects:
        s, _ = rd.slice_reedy(r, embedding, obj)
        v = is_left_fibrant(s)
        if not v.verdict:
            failures.append(Violation("slice not left fibrant", f"(A/{obj}) is not left fibrant",
                                      {"object": obj, "comma": v.witness.to_json() if v.witness else None}))
    f, s, t = forgetful_functor(r, embedding, m)
    _, tcc = rd.slice_reedy(r, embedding, c.dst(m))
    pullbacks = {}
    for o, (alpha, w) in tcc.object_data.items():
        pb = find_pullback(c, w, m)
        if pb is None:
            failures.append(Violation("missing pullback", f"no pullback of {w} and {m} in C", {"object": o}))
        else:
            pullbacks[o] = pb
    verdict = is_left_fibration(f)
    characterization = None
    if len(pullbacks) == len(tcc.object_data):
        characterization = all(
            is_left_fibrant(rd.slice_reedy(r, embedding, p)[0]).verdict for p, _, _ in pullbacks.values()
        )
    return SliceReport(not failures, tuple(failures), verdict, characterization)
