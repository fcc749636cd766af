"""Invariant suite: engine and advisor behavior on randomized instances.

Each property draws a full (kb, case) instance from a seeded generator and
cross-checks the engine against the brute-force oracles where one exists.
The heavyweight 1000-seed oracle-equivalence run lives in the acceptance
module; these runs keep the per-property coverage broad.
"""

import copy
import json
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from moscow_dss import (
    Case,
    Priority,
    Requirement,
    evaluate,
    filter_feasible,
    load_kb,
    quality_breakdown,
    rank_vulnerabilities,
    relax_until_feasible,
    save_kb,
    score_platform,
    suggest_only,
    validate_kb,
)
from moscow_dss.kb import kb_from_dict

from oracles import (
    oracle_filter,
    oracle_quality_breakdown,
    oracle_score,
    oracle_vulnerability_order,
)
from randgen import random_case_doc, random_kb_doc

seeds = st.integers(min_value=0, max_value=10**9)


def instance(seed, max_platforms=12, max_features=25):
    rng = random.Random(seed)
    kb_doc = random_kb_doc(rng, max_platforms=max_platforms, max_features=max_features)
    case_doc = random_case_doc(rng, kb_doc)
    return kb_doc, case_doc, kb_from_dict(kb_doc), Case.from_dict(case_doc)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_filter_matches_oracle(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    feasible, infeasible = filter_feasible(kb, case)
    oracle_feasible, oracle_violations = oracle_filter(kb_doc, case_doc)
    assert set(feasible) == oracle_feasible
    got = {
        pid: {(v.requirement.feature_id, v.kind.value) for v in violations}
        for pid, violations in infeasible.items()
    }
    assert got == oracle_violations


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_scores_match_oracle_and_stay_bounded(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    feasible, _ = filter_feasible(kb, case)
    soft = [r for r in case.requirements if r.priority in (Priority.SHOULD, Priority.COULD)]
    for pid in feasible:
        score = score_platform(kb, case, pid)
        assert score == oracle_score(kb_doc, case_doc, pid)
        assert Fraction(0) <= score <= Fraction(100)
        from moscow_dss import satisfies

        all_supported = all(satisfies(kb, pid, r) for r in soft)
        assert (score == Fraction(100)) == (all_supported or not soft)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_quality_breakdown_matches_restriction_oracle(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    feasible, _ = filter_feasible(kb, case)
    for pid in feasible[:5]:
        got = quality_breakdown(kb, case, pid)
        expected = oracle_quality_breakdown(kb_doc, case_doc, pid)
        assert got == expected
        assert all(Fraction(0) <= s <= Fraction(100) for s in got.values())


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_partition_of_platforms(seed):
    _, _, kb, case = instance(seed)
    evaluation = evaluate(kb, case)
    feasible_ids = evaluation.feasible_ids()
    all_ids = sorted(feasible_ids + list(evaluation.infeasible))
    assert all_ids == sorted(p.id for p in kb.platforms)
    assert not (set(feasible_ids) & set(evaluation.infeasible))


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=9))
def test_weight_scaling_leaves_scores_identical(seed, factor):
    kb_doc, case_doc, kb, case = instance(seed)
    scaled_doc = copy.deepcopy(case_doc)
    scaled_doc["weights"] = {
        "wShould": case_doc["weights"]["wShould"] * factor,
        "wCould": case_doc["weights"]["wCould"] * factor,
    }
    scaled = Case.from_dict(scaled_doc)
    base_eval = evaluate(kb, case)
    scaled_eval = evaluate(kb, scaled)
    assert base_eval.feasible_ids() == scaled_eval.feasible_ids()
    for a, b in zip(base_eval.feasible, scaled_eval.feasible):
        assert a.score == b.score  # exact rational equality, not approximate
        assert a.quality_subscores == b.quality_subscores


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_monotone_exclusion_under_added_must(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    used = {r["featureId"] for r in case_doc["requirements"]}
    unused = [f["id"] for f in kb_doc["booleanFeatures"] if f["id"] not in used]
    before, _ = filter_feasible(kb, case)
    if unused:
        extra = Requirement(unused[0], Priority.MUST)
        after, _ = filter_feasible(kb, case.with_requirements(case.requirements + (extra,)))
        assert set(after) <= set(before)
    musts = [r for r in case.requirements if r.priority is Priority.MUST]
    if musts:
        dropped = tuple(r for r in case.requirements if r is not musts[0])
        wider, _ = filter_feasible(kb, case.with_requirements(dropped))
        assert set(before) <= set(wider)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_soft_support_flip_never_lowers_score(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    feasible, _ = filter_feasible(kb, case)
    soft_boolean = [
        r["featureId"]
        for r in case_doc["requirements"]
        if r["priority"] in ("should", "could")
        and any(f["id"] == r["featureId"] for f in kb_doc["booleanFeatures"])
    ]
    if not feasible or not soft_boolean:
        return
    pid = feasible[0]
    fid = soft_boolean[0]
    if kb_doc["bfp"][fid][pid] == 1:
        return
    flipped_doc = copy.deepcopy(kb_doc)
    flipped_doc["bfp"][fid][pid] = 1
    flipped = kb_from_dict(flipped_doc)
    assert score_platform(flipped, case, pid) >= score_platform(kb, case, pid)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_vulnerability_ranking_matches_counting_oracle(seed):
    kb_doc, case_doc, kb, case = instance(seed)
    ranked = rank_vulnerabilities(kb, case)
    assert [v.requirement.feature_id for v in ranked] == oracle_vulnerability_order(
        kb_doc, case_doc
    )
    counts = [v.support_count for v in ranked]
    assert counts == sorted(counts)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_relaxation_terminates_and_monotone(seed):
    _, _, kb, case = instance(seed)
    if not kb.platforms:
        return
    plan = relax_until_feasible(kb, case)
    hard = [r for r in case.requirements if r.priority in (Priority.MUST, Priority.WONT)]
    assert len(plan.steps) <= len(hard)
    assert plan.final_evaluation.feasible  # non-empty KB always ends feasible
    counts = [s.feasible_count_after for s in plan.steps]
    assert counts == sorted(counts)
    # purity: suggesting the whole plan equals planning it
    assert suggest_only(kb, case, len(hard) + 1) == list(plan.steps)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_kb_round_trip_on_random_instances(seed):
    kb_doc, _, kb, _ = instance(seed)
    assert validate_kb(kb) == []
    again = load_kb(save_kb(kb))
    assert again == kb
    assert json.loads(save_kb(again)) == json.loads(save_kb(kb))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_evaluate_is_deterministic(seed):
    _, _, kb, case = instance(seed)
    a = evaluate(kb, case).to_dict()
    b = evaluate(kb, case).to_dict()
    a.pop("timestamp")
    b.pop("timestamp")
    assert a == b
