"""Named verification suites with deterministic, machine-readable reports.

A suite walks a family of fixture indices, draws seeded random instances and
records one :class:`Check` per property instance.  Reports never contain
timings, so the same ``(suite, seed, bounds)`` always gives byte-identical
JSON.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import chainlab as ch
from . import fibration as fb
from . import fincat as fc
from . import instances as ins
from . import reedy as rd
from . import sampling as sp
from .diagram import boxdot as bd
from .diagram import core, kan
from .diagram import limits as lm
from .diagram import monoidal as mo
from .diagram.core import COVARIANT, PRESHEAF, Diagram, DiagramMap

VARIANCES = (PRESHEAF, COVARIANT)


@dataclass(frozen=True)
class Check:
    key: str
    ok: bool
    witness: dict | None = None
    detail: dict | None = None

    def to_json(self) -> dict:
        out = {"key": self.key, "status": "pass" if self.ok else "fail"}
        if self.detail:
            out["detail"] = self.detail
        if not self.ok:
            out["witness"] = self.witness or {}
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    instances: int | None
    max_objects: int
    checks: list[Check] = field(default_factory=list)
    # wall-clock seconds; shown in the summary line only, never in reports
    duration: float | None = field(default=None, compare=False)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0 and bool(self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def get(self, key: str) -> Check:
        for c in self.checks:
            if c.key == key:
                return c
        raise KeyError(key)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "max_objects": self.max_objects,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.key)],
        }

    def headline(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{self.suite}: {verdict} ({self.passed} passed, {self.failed} failed, seed {self.seed})"

    def summary(self) -> str:
        if self.duration is None:
            return self.headline()
        return f"{self.headline()} in {self.duration:.1f}s"

    def to_text(self) -> str:
        lines = [self.headline()]
        for c in sorted(self.checks, key=lambda c: c.key):
            lines.append(f"  {'ok  ' if c.ok else 'FAIL'} {c.key}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Context:
    suite: str
    seed: int
    instances: int | None
    max_objects: int

    def count(self, default: int) -> int:
        return default if self.instances is None else self.instances

    def replay(self, **extra) -> dict:
        cmd = f"reedykit suite {self.suite} --seed {self.seed} --max-objects {self.max_objects}"
        if self.instances is not None:
            cmd += f" --instances {self.instances}"
        return {"replay": cmd, **extra}

    def rng(self, *salt: int):
        return sp.rng_for(self.seed, _SALT[self.suite], *salt)


def _fixture_pos(name: str) -> int:
    return list(ins.FIXTURES).index(name)


def _fixtures(max_objects: int, exclude: Iterable[str] = ()) -> list[str]:
    return [n for n in ins.small_fixtures(max_objects) if n not in set(exclude)]


def _classes(cls: lm.ReedyClass) -> list[str]:
    return [k for k, v in cls.to_json().items() if v]


def _iso(f: ch.ChainMap) -> bool:
    return ch.is_isomorphism(f)


def _diagram_iso(phi: DiagramMap) -> bool:
    return not core.validate_diagram_map(phi) and all(_iso(phi[a]) for a in phi.comps)


# -- reedy-classification --------------------------------------------------------

def _consistency(phi: DiagramMap) -> list[str]:
    """Which of the structural laws fail for one classified map."""
    cls = lm.classify_reedy(phi)
    obj = lm.classify_objectwise(phi)
    bad = []
    if cls.weq != obj.weq:
        bad.append("weq is not objectwise")
    if cls.triv_cof != (cls.cof and cls.weq):
        bad.append("triv_cof != cof and weq")
    if cls.triv_fib != (cls.fib and cls.weq):
        bad.append("triv_fib != fib and weq")
    if cls.cof and not obj.cof:
        bad.append("Reedy cof is not objectwise cof")
    if cls.fib and not obj.fib:
        bad.append("Reedy fib is not objectwise fib")
    shape = phi.src.shape
    if rd.is_direct(shape) and cls.fib != obj.fib:
        bad.append("direct shape: fib differs from objectwise fib")
    if rd.is_inverse(shape) and cls.cof != obj.cof:
        bad.append("inverse shape: cof differs from objectwise cof")
    return bad


def _lifting_problems(pool: list[tuple[str, DiagramMap, lm.ReedyClass]]):
    """Pairs (left, right) from the pool that the model structure says lift."""
    for ni, i, ci in pool:
        for nq, q, cq in pool:
            if (ci.triv_cof and cq.fib) or (ci.cof and cq.triv_fib):
                yield ni, i, nq, q


def zero_to_constant_example(p: int = 2) -> tuple[DiagramMap, lm.ReedyClass, lm.ReedyClass]:
    """``0 -> const(F_p)`` on the covariant Δ≤1: objectwise a cofibration but
    its relative latching map at [1] is ``F_p ⊕ F_p -> F_p``."""
    phi = core.from_zero(core.constant(ins.fixture("delta1"), ch.unit(p), COVARIANT))
    return phi, lm.classify_reedy(phi), lm.classify_objectwise(phi)


def suite_reedy_classification(ctx: Context) -> list[Check]:
    out = []
    n = ctx.count(50)
    for name in _fixtures(ctx.max_objects):
        r = ins.fixture(name)
        pos = _fixture_pos(name)
        problems = 0
        for k in range(n):
            rng = ctx.rng(pos, k)
            var = VARIANCES[k % 2]
            trivial = bool((k // 2) % 2)
            phi = sp.random_diagram_map(rng, r, var, 3)
            i = sp.random_cofibration(rng, r, var, trivial=trivial, dim_bound=3)
            q = sp.random_fibration(rng, r, var, trivial=not trivial, dim_bound=3)
            pool = [("random", phi, lm.classify_reedy(phi)), ("cof", i, lm.classify_reedy(i)),
                    ("fib", q, lm.classify_reedy(q))]
            key = f"{name}/{k:04d}"
            for label, m, cls in pool:
                bad = _consistency(m)
                out.append(Check(f"{key}/{label}/laws", not bad,
                                 ctx.replay(fixture=name, instance=k, variance=var, failures=bad),
                                 {"classes": _classes(cls)}))
            ci, cq = pool[1][2], pool[2][2]
            sampled_ok = ci.cof and (ci.triv_cof or not trivial) and cq.fib and (cq.triv_fib or trivial)
            out.append(Check(f"{key}/sampler", sampled_ok,
                             ctx.replay(fixture=name, instance=k, cof=_classes(ci), fib=_classes(cq))))
            for ni, mi, nq, mq in _lifting_problems(pool):
                if mi is mq:
                    continue
                problems += 1
                u, v = lm.random_square(mi, mq, rng)
                h = lm.solve_lifting(mi, mq, u, v)
                ok = h is not None and core.compose(h, mi) == u and core.compose(mq, h) == v
                ok = ok and lm.has_lifting_property(mi, mq)
                out.append(Check(f"{key}/lift/{ni}-vs-{nq}", ok,
                                 ctx.replay(fixture=name, instance=k, left=ni, right=nq)))
        out.append(Check(f"{name}/lifting-problems-posed", problems > 0, ctx.replay(fixture=name),
                         {"problems": problems}))
    phi, cls, obj = zero_to_constant_example()
    out.append(Check("example/zero-to-constant-delta1", obj.cof and not cls.cof,
                     ctx.replay(reedy=cls.to_json(), objectwise=obj.to_json()),
                     {"objectwise_cof": obj.cof, "reedy_cof": cls.cof}))
    return out


# -- fibration-oracle ------------------------------------------------------------

def _functor_json(f: rd.ReedyFunctor) -> dict:
    return {"source": f.source.base.name, "target": f.target.base.name, "object_map": dict(f.object_map)}


def fibration_oracle_checks(names: list[str], per_pair: int | None, sides=("left", "right"),
                            replay: Callable[..., dict] = dict) -> list[Check]:
    out = []
    total = negatives = 0
    pp_negative = False
    for a in names:
        for b in names:
            fs = ins.enumerate_functors(ins.fixture(a), ins.fixture(b), limit=per_pair)
            for k, f in enumerate(fs):
                total += 1
                for side in sides:
                    nerve = fb.is_left_fibration(f) if side == "left" else fb.is_right_fibration(f)
                    oracle = kan.left_quillen_oracle(f) if side == "left" else kan.right_quillen_oracle(f)
                    agree = nerve.verdict == oracle.verdict
                    if side == "left" and not nerve.verdict:
                        negatives += 1
                        pp_negative |= "parallel-pair" in (a, b) and not oracle.verdict
                    out.append(Check(f"{a}->{b}/{k:03d}/{side}", agree,
                                     replay(functor=_functor_json(f), nerve=nerve.to_json(), oracle=oracle.to_json()),
                                     {"verdict": nerve.verdict}))
    out.append(Check("summary/functors-checked", total >= 20, replay(count=total), {"count": total}))
    out.append(Check("summary/genuine-negative", negatives > 0 and pp_negative,
                     replay(negatives=negatives), {"negatives": negatives, "parallel_pair_negative": pp_negative}))
    return out


def suite_fibration_oracle(ctx: Context) -> list[Check]:
    names = _fixtures(ctx.max_objects)
    return fibration_oracle_checks(names, ctx.instances, replay=ctx.replay)


# -- slice-corollary -------------------------------------------------------------

_SIMPLICIAL_DIM = {"simplex1": 1, "boundary1": 1, "simplex2": 2, "boundary2": 2, "horn21": 2, "horn20": 2}


def _slice_settings(max_objects: int):
    """``(label, Δ≤n, Yoneda embedding into presheaves, morphism)`` for the
    small simplicial sets K: one forgetful functor between slices per
    non-identity morphism of the ambient category."""
    for n in (1, 2):
        if n + 1 > max_objects:
            continue
        for k_name in sorted(ins.SIMPLICIAL_SETS):
            if _SIMPLICIAL_DIM[k_name] > n:
                continue
            _, _, c, emb = ins.delta_slice_data(n, k_name)
            index = ins.fixture(f"delta{n}")
            for m in sorted(c.non_identity_morphisms):
                yield f"delta{n}+{k_name}", index, emb, m


def suite_slice_corollary(ctx: Context) -> list[Check]:
    out = []
    settings = list(_slice_settings(ctx.max_objects))
    if ctx.instances is not None:
        settings = settings[:ctx.instances]
    for label, index, emb, m in settings:
        rep = fb.slice_forgetful_is_fibration(index, emb, m)
        key = f"{label}/{m}"
        w = ctx.replay(setting=label, morphism=m, report=rep.to_json())
        out.append(Check(f"{key}/hypotheses-imply-fibration", not rep.hypothesis_ok or rep.verdict.verdict, w,
                         {"hypothesis_ok": rep.hypothesis_ok, "verdict": rep.verdict.verdict}))
        if rep.characterization is not None:
            out.append(Check(f"{key}/characterization", rep.characterization == rep.verdict.verdict, w))
        f, s, t = fb.forgetful_functor(index, emb, m)
        if len(s.objects) <= 6 and len(t.objects) <= 6:
            oracle = kan.left_quillen_oracle(f)
            out.append(Check(f"{key}/oracle", oracle.verdict == rep.verdict.verdict,
                             ctx.replay(setting=label, morphism=m, oracle=oracle.to_json())))
    out.append(Check("summary/settings", bool(settings), ctx.replay(), {"count": len(settings)}))
    return out


# -- properness ------------------------------------------------------------------

def complex_pushout_check(rng) -> tuple[bool, dict]:
    """Push a random quasi-isomorphism out of X along a random cofibration
    ``X -> Y``; the pushed map ``Y -> Y ⊔_X X'`` must be a quasi-isomorphism."""
    i = sp.random_complex_cofibration(rng)
    w = sp.random_complex_weq(rng, i.src)
    po = ch.pushout(i, w)
    ok = ch.is_quasi_isomorphism(w) and ch.is_injective(i) and ch.is_quasi_isomorphism(po.left)
    return ok, {"cof_dims": dict(i.dst.dims), "weq_dims": dict(w.dst.dims)}


def complex_pullback_check(rng) -> tuple[bool, dict]:
    """Dually, pull a quasi-isomorphism back along a surjection."""
    i = sp.random_complex_cofibration(rng)
    q = ch.dual_map(i)
    w = ch.dual_map(sp.random_complex_weq(rng, ch.dual(q.dst)))
    pb = ch.pullback(w, q)
    ok = ch.is_surjective(q) and ch.is_quasi_isomorphism(w) and ch.is_quasi_isomorphism(pb.right)
    return ok, {"fib_dims": dict(q.src.dims)}


def _diagram_weq_from(rng, x: Diagram) -> DiagramMap:
    """``X -> X ⊕ const(D)`` for a random disk D."""
    d = core.constant(x.index, ch.disk(int(rng.integers(0, 2)), x.p), x.variance)
    s = sp.direct_sum_diagram([x, d], x.index, x.variance)
    return DiagramMap(x, s, {a: ch.direct_sum([x[a], d[a]], x.p).injections[0] for a in x.shape.objects})


def suite_properness(ctx: Context) -> list[Check]:
    out = []
    n = ctx.count(100)
    for k in range(n):
        ok, w = complex_pushout_check(ctx.rng(0, k))
        out.append(Check(f"complexes/{k:04d}/left", ok, ctx.replay(instance=k, **w)))
        ok, w = complex_pullback_check(ctx.rng(1, k))
        out.append(Check(f"complexes/{k:04d}/right", ok, ctx.replay(instance=k, **w)))
    per_fixture = max(1, n // 10)
    for name in _fixtures(min(ctx.max_objects, 3)):
        r = ins.fixture(name)
        pos = _fixture_pos(name)
        for k in range(per_fixture):
            rng = ctx.rng(2, pos, k)
            var = VARIANCES[k % 2]
            i = sp.random_cofibration(rng, r, var, dim_bound=3)
            w = _diagram_weq_from(rng, i.src)
            po = bd.pushout_diagram(i, w)
            ok = lm.classify_reedy(i).cof and lm.classify_reedy(po.left).weq
            out.append(Check(f"diagrams/{name}/{k:04d}", ok, ctx.replay(fixture=name, instance=k, variance=var)))
    return out


# -- adjunction-two-variables -----------------------------------------------------

def _random_set_presheaf(rng, r: rd.ReedyCategory, var: str) -> tuple[str, core.SetPresheaf]:
    objs = list(r.objects)
    a = objs[int(rng.integers(0, len(objs)))]
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return f"y({a})", core.representable_set(r, a, var)
    if kind == 1:
        return f"dy({a})", bd.boundary_presheaf(r, a, var).presheaf
    if kind == 2:
        return "terminal", core.terminal_presheaf(r, var)
    b = objs[int(rng.integers(0, len(objs)))]
    return f"y({a})xy({b})", core.product_presheaf(core.representable_set(r, a, var), core.representable_set(r, b, var))


def suite_adjunction(ctx: Context) -> list[Check]:
    out = []
    n = ctx.count(50)
    for name in _fixtures(min(ctx.max_objects, 3)):
        r = ins.fixture(name)
        pos = _fixture_pos(name)
        for k in range(n):
            rng = ctx.rng(pos, k)
            var = VARIANCES[k % 2]
            key = f"{name}/{k:04d}"
            label, kp = _random_set_presheaf(rng, r, var)
            x = sp.random_complex(rng, 2, range(0, 2), 2)
            y = sp.random_diagram(rng, r, var, 2)
            adj = bd.check_two_variable_adjunction(kp, x, y)
            out.append(Check(f"{key}/adjunction", adj.ok, ctx.replay(fixture=name, instance=k, presheaf=label),
                             adj.to_json()))
            objs = list(y.shape.objects)
            a = objs[k % len(objs)]
            ev, _ = bd.yoneda_evaluation(y, a)
            out.append(Check(f"{key}/yoneda-mor", _iso(ev), ctx.replay(fixture=name, instance=k, object=a)))
            out.append(Check(f"{key}/yoneda-enriched", _iso(mo.representable_evaluation(y, a)),
                             ctx.replay(fixture=name, instance=k, object=a)))
            out.append(Check(f"{key}/boundary-matching", _iso(bd.boundary_comparison(y, a)),
                             ctx.replay(fixture=name, instance=k, object=a)))
            c = sp.random_complex_cofibration(rng)
            g = bd.generating_map(r, a, c, var).map
            cls = lm.classify_reedy(g)
            want_triv = ch.is_quasi_isomorphism(c)
            out.append(Check(f"{key}/boxdot-pushout-product", cls.cof and (cls.triv_cof or not want_triv),
                             ctx.replay(fixture=name, instance=k, object=a, classes=_classes(cls)),
                             {"trivial_factor": want_triv}))
    return out


# -- enrichment-sm7 --------------------------------------------------------------

def suite_enrichment_sm7(ctx: Context) -> list[Check]:
    out = []
    n = ctx.count(50)
    for name in _fixtures(min(ctx.max_objects, 3)):
        r = ins.fixture(name)
        pos = _fixture_pos(name)
        for k in range(n):
            rng = ctx.rng(pos, k)
            var = VARIANCES[k % 2]
            key = f"{name}/{k:04d}"
            mode = k % 3  # 0: plain, 1: trivial cofibration, 2: trivial fibration
            i = sp.random_cofibration(rng, r, var, trivial=mode == 1, dim_bound=2)
            q = sp.random_fibration(rng, r, var, trivial=mode == 2, dim_bound=2)
            ci, cq = lm.classify_reedy(i), lm.classify_reedy(q)
            m = mo.sm7_map(i, q)
            want_triv = ci.triv_cof or cq.triv_fib
            ok = ci.cof and cq.fib and ch.is_surjective(m) and (ch.is_quasi_isomorphism(m) or not want_triv)
            out.append(Check(f"{key}/sm7", ok, ctx.replay(fixture=name, instance=k, cof=_classes(ci), fib=_classes(cq)),
                             {"trivial": want_triv}))
            c = sp.random_complex_cofibration(rng)
            pp = mo.pushout_product(core.constant_map(r, c, var), i)
            cls = lm.classify_reedy(pp)
            want_triv = ch.is_quasi_isomorphism(c) or ci.triv_cof
            out.append(Check(f"{key}/tensor-pushout-product", cls.cof and (cls.triv_cof or not want_triv),
                             ctx.replay(fixture=name, instance=k, classes=_classes(cls)), {"trivial": want_triv}))
            cpx = sp.random_complex(rng)
            ti = lm.classify_reedy(mo.objectwise_tensor_map(i, cpx))
            out.append(Check(f"{key}/tensor-preserves-cof", ti.cof, ctx.replay(fixture=name, instance=k)))
            a = list(r.objects)[k % len(r.objects)]
            same = mo.objectwise_tensor(bd.representable(r, a, var).diagram, cpx) == bd.representable(r, a, var, cpx).diagram
            out.append(Check(f"{key}/tensor-of-representable", same, ctx.replay(fixture=name, instance=k, object=a)))
    return out


# -- exterior-quillen ------------------------------------------------------------

def _exterior_pairs(max_objects: int) -> list[tuple[str, str]]:
    names = _fixtures(2, exclude=("terminal",))
    pairs = [(a, b) for a in names for b in names if len(ins.fixture(a).objects) * len(ins.fixture(b).objects) <= max(4, max_objects)]
    return pairs


def suite_exterior_quillen(ctx: Context) -> list[Check]:
    out = []
    n = ctx.count(50)
    pairs = _exterior_pairs(ctx.max_objects)
    for k in range(n):
        a_name, b_name = pairs[k % len(pairs)]
        A, B = ins.fixture(a_name), ins.fixture(b_name)
        rng = ctx.rng(k)
        var = VARIANCES[(k // len(pairs)) % 2]
        key = f"{a_name}x{b_name}/{k:04d}"
        mode = k % 3
        i = sp.random_cofibration(rng, A, var, trivial=mode == 1, dim_bound=2)
        j = sp.random_cofibration(rng, B, var, trivial=mode == 2, dim_bound=2)
        pp = mo.exterior_pushout_product(i, j)
        cls = lm.classify_reedy(pp)
        want_triv = mode != 0
        out.append(Check(f"{key}/pushout-product", cls.cof and (cls.triv_cof or not want_triv),
                         ctx.replay(pair=[a_name, b_name], instance=k, classes=_classes(cls)), {"trivial": want_triv}))
        al = list(A.objects)[int(rng.integers(0, len(A.objects)))]
        be = list(B.objects)[int(rng.integers(0, len(B.objects)))]
        iso = mo.exterior_representable_iso(A, B, al, be, var)
        out.append(Check(f"{key}/representable-product", _diagram_iso(iso),
                         ctx.replay(pair=[a_name, b_name], instance=k, objects=[al, be])))
        f = sp.random_diagram(rng, rd.product_reedy(A, B), var, 2)
        x = sp.random_diagram(rng, A, var, 2)
        ok_cols = all(_iso(mo.exterior_hom_comparison(x, f, B, b)) for b in B.objects)
        out.append(Check(f"{key}/exterior-hom-columns", ok_cols, ctx.replay(pair=[a_name, b_name], instance=k)))
        out.append(Check(f"{key}/exterior-representable", mo.exterior_representable_check(f, A, B, al),
                         ctx.replay(pair=[a_name, b_name], instance=k, object=al)))
        out.append(Check(f"{key}/exterior-matching", _iso(mo.exterior_matching_comparison(x, f, B, be)),
                         ctx.replay(pair=[a_name, b_name], instance=k, object=be)))
    return out


# -- diagonal-monoidal and delta-slice-example ------------------------------------

DIAGONAL_INDICES = {
    "delta1": True,
    "delta2": True,
    "delta2/simplex1": True,
    "delta2/horn21": True,
    "delta2/boundary2": True,
    "parallel-pair": False,
}


def _diagonal_checks(ctx: Context, name: str, n: int, salt: int) -> list[Check]:
    out = []
    r = ins.fixture(name)
    report = fb.monoidal_diagonal_valid(r)
    key = name
    if report.valid:
        out.append(Check(f"{key}/valid", True, None, {"valid": True}))
    else:
        located = bool(report.non_epimorphisms) or report.left_fibrant.witness is not None
        out.append(Check(f"{key}/hypothesis-failure-located", located, ctx.replay(fixture=name, report=report.to_json()),
                         {"valid": False, "report": report.to_json()}))
    failures = 0
    for k in range(n):
        rng = ctx.rng(salt, k)
        mode = k % 3
        i = sp.random_cofibration(rng, r, PRESHEAF, trivial=mode == 1, dim_bound=2)
        j = sp.random_cofibration(rng, r, PRESHEAF, trivial=mode == 2, dim_bound=2)
        cls = lm.classify_reedy(mo.pushout_product(i, j))
        good = cls.cof and (cls.triv_cof or mode == 0)
        if report.valid:
            out.append(Check(f"{key}/{k:04d}/pushout-product", good,
                             ctx.replay(fixture=name, instance=k, classes=_classes(cls)), {"trivial": mode != 0}))
        else:
            failures += not good
        if report.valid and k % 5 == 0:
            x = sp.random_diagram(rng, r, PRESHEAF, 2)
            unit = mo.unit_diagram(r, PRESHEAF, x.p)
            out.append(Check(f"{key}/{k:04d}/unit", mo.diagonal_tensor(x, unit) == x, ctx.replay(fixture=name, instance=k)))
            y = sp.random_diagram(rng, r, PRESHEAF, 1)
            z = sp.random_diagram(rng, r, PRESHEAF, 2)
            lhs = lm.hom_dimension(mo.diagonal_tensor(x, y), z)
            rhs = lm.hom_dimension(x, mo.diagonal_hom(y, z))
            out.append(Check(f"{key}/{k:04d}/closed", lhs == rhs, ctx.replay(fixture=name, instance=k, dims=[lhs, rhs])))
    if not report.valid:
        out.append(Check(f"{key}/counterexample-search", True, None,
                         {"samples": n, "pushout_product_failures": failures}))
    return out


def suite_diagonal_monoidal(ctx: Context) -> list[Check]:
    out = []
    for pos, (name, expected) in enumerate(DIAGONAL_INDICES.items()):
        size = len(ins.fixture(name).objects)
        if size > ctx.max_objects:
            continue
        # pushout products over the larger slices cost about a second each
        n = ctx.count(50 if size <= 5 else 8)
        valid = fb.monoidal_diagonal_valid(ins.fixture(name)).valid
        out.append(Check(f"{name}/expected-validity", valid == expected, ctx.replay(fixture=name),
                         {"expected": expected, "valid": valid}))
        out += _diagonal_checks(ctx, name, n, pos)
    return out


def suite_delta_slice_example(ctx: Context) -> list[Check]:
    out = []
    names = [nm for nm in ins.FIXTURES if nm.startswith("delta") and "/" in nm]
    for pos, name in enumerate(names):
        r = ins.fixture(name)
        if len(r.objects) > ctx.max_objects:
            continue
        n = ctx.count(10 if len(r.objects) <= 5 else 3)
        out.append(Check(f"{name}/is-reedy", rd.is_reedy(r), ctx.replay(fixture=name)))
        lf = fb.is_left_fibrant(r)
        out.append(Check(f"{name}/left-fibrant", lf.verdict, ctx.replay(fixture=name, verdict=lf.to_json())))
        report = fb.monoidal_diagonal_valid(r)
        out.append(Check(f"{name}/lowering-epimorphisms", not report.non_epimorphisms,
                         ctx.replay(fixture=name, report=report.to_json())))
        out += _diagonal_checks(ctx, name, n, 100 + pos)
    return out


# -- registry ----------------------------------------------------------------------

SUITES: dict[str, tuple[Callable[[Context], list[Check]], int]] = {
    "reedy-classification": (suite_reedy_classification, 4),
    "fibration-oracle": (suite_fibration_oracle, 3),
    "slice-corollary": (suite_slice_corollary, 3),
    "properness": (suite_properness, 3),
    "adjunction-two-variables": (suite_adjunction, 3),
    "enrichment-sm7": (suite_enrichment_sm7, 3),
    "exterior-quillen": (suite_exterior_quillen, 4),
    "diagonal-monoidal": (suite_diagonal_monoidal, 18),
    "delta-slice-example": (suite_delta_slice_example, 18),
}

_SALT = {name: i for i, name in enumerate(SUITES)}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, seed: int = 0, instances: int | None = None, max_objects: int | None = None) -> SuiteReport:
    """Run a named suite.  ``instances=None`` uses the suite's default count
    (all functors for ``fibration-oracle``); ``max_objects=None`` the
    suite's default fixture size bound."""
    if name not in SUITES:
        raise UnknownSuite(name)
    fn, default_max = SUITES[name]
    mo_ = default_max if max_objects is None else max_objects
    ctx = Context(name, seed, instances, mo_)
    start = time.perf_counter()
    checks = fn(ctx)
    return SuiteReport(name, seed, instances, mo_, checks, time.perf_counter() - start)
