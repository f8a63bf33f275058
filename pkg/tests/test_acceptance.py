"""Acceptance criteria 1-8, each run at its stated tolerance.

Every test records a single PASS/FAIL line; the lines are printed as they are
produced and again in the pytest terminal summary.
"""
import time

import pytest

from conftest import ACCEPTANCE
from reedykit import cli
from reedykit import fibration as fb
from reedykit import instances as ins
from reedykit import reedy as rd
from reedykit import sampling as smp
from reedykit import suites


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def classification():
    t = time.perf_counter()
    rep = suites.run_suite("reedy-classification")
    return rep, time.perf_counter() - t


def test_criterion_1_reedy_verification():
    t = time.perf_counter()
    delta3 = rd.verify_reedy(ins.fixture("delta3"))
    bad = rd.verify_reedy(ins.fixture("nonunique-factorization"))
    elapsed = time.perf_counter() - t
    witnesses = [v for v in bad if v.kind == "non-unique factorization"
                 and len(v.witness["factorizations"]) == 2]
    ok = delta3 == [] and bool(witnesses) and elapsed < 1.0
    report(1, ok, f"delta3 violations={len(delta3)}, two-factorization witnesses={len(witnesses)}, {elapsed:.2f}s")


def test_criterion_2_classification_oracle(classification):
    rep, elapsed = classification
    fixtures = suites._fixtures(4)
    per_fixture = {name: sum(1 for c in rep.checks if c.key.startswith(name + "/") and c.key.endswith("/sampler"))
                   for name in fixtures}
    lifts = [c for c in rep.checks if "/lift/" in c.key]
    posed = all(rep.get(f"{name}/lifting-problems-posed").ok for name in fixtures)
    ok = rep.ok and min(per_fixture.values()) >= 50 and posed and all(c.ok for c in lifts) and elapsed < 60
    report(2, ok, f"{len(fixtures)} indices, min {min(per_fixture.values())} maps each, "
                  f"{len(lifts)} lifting problems, {rep.failed} failures, {elapsed:.1f}s")


def test_criterion_3_fibration_criterion_oracle():
    names = suites._fixtures(3)
    checks = suites.fibration_oracle_checks(names, None, sides=("left",))
    by_key = {c.key: c for c in checks}
    count = by_key["summary/functors-checked"].detail["count"]
    disagreements = sum(not c.ok for c in checks if not c.key.startswith("summary/"))
    negative = by_key["summary/genuine-negative"]
    ok = disagreements == 0 and count >= 20 and negative.ok
    report(3, ok, f"{count} functors, {negative.detail['negatives']} negatives "
                  f"(parallel-pair: {negative.detail['parallel_pair_negative']}), {disagreements} disagreements")


def _lemma_functors():
    names = suites._fixtures(3)
    for a in names:
        for b in names:
            yield from ins.enumerate_functors(ins.fixture(a), ins.fixture(b))
    for build in cli._functor_instances().values():
        yield build()


def test_criterion_4_lemma_consistency():
    total = disagreements = 0
    for f in _lemma_functors():
        total += 1
        for verdicts in (fb.lemma_verdicts(f), fb.right_lemma_verdicts(f)):
            disagreements += len(set(verdicts.values())) != 1
    report(4, total > 0 and disagreements == 0, f"{total} functors, both sides, {disagreements} disagreements")


def test_criterion_5_enrichment_and_adjunctions():
    reps = [suites.run_suite(name, instances=30)
            for name in ("adjunction-two-variables", "enrichment-sm7", "exterior-quillen")]
    ok = all(r.ok for r in reps)
    report(5, ok, ", ".join(f"{r.suite} {r.passed}/{len(r.checks)}" for r in reps))


def test_criterion_6_diagonal_monoidal():
    rep = suites.run_suite("diagonal-monoidal")
    valid = {name: fb.monoidal_diagonal_valid(ins.fixture(name)).valid
             for name in ("delta2", "delta2/simplex1", "delta2/horn21", "delta2/boundary2", "parallel-pair")}
    sliced = [k for k in rep.checks if k.key.startswith("delta2/") and k.key.endswith("/pushout-product")]
    located = rep.get("parallel-pair/hypothesis-failure-located")
    ok = (rep.ok and all(v for n, v in valid.items() if n != "parallel-pair") and not valid["parallel-pair"]
          and located.ok and not located.detail["valid"] and len(sliced) > 0)
    report(6, ok, f"valid={valid}, {len(sliced)} slice pushout-products, parallel-pair failure located={located.ok}")


def test_criterion_7_properness():
    t = time.perf_counter()
    results = [suites.complex_pushout_check(smp.rng_for(0, k))[0] for k in range(100)]
    elapsed = time.perf_counter() - t
    report(7, all(results) and elapsed < 5, f"{sum(results)}/100 pushouts are weak equivalences, {elapsed:.2f}s")


def test_criterion_8_sandwich(classification):
    rep, _ = classification
    laws = [c for c in rep.checks if c.key.endswith("/laws")]
    _, reedy, objectwise = suites.zero_to_constant_example()
    exhibited = objectwise.cof and not reedy.cof
    ok = laws and all(c.ok for c in laws) and exhibited
    report(8, bool(ok), f"{len(laws)} classified maps obey the sandwich laws, "
                        f"0 -> const: objectwise cof={objectwise.cof}, Reedy cof={reedy.cof}")
