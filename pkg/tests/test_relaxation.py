import pytest

from moscow_dss import (
    Case,
    EmptyKnowledgeBase,
    KnowledgeBase,
    Priority,
    evaluate,
    rank_vulnerabilities,
    relax_until_feasible,
    suggest_only,
)

from test_engine import mk_case, req


def test_rank_empty_without_hard_constraints(mini_kb):
    case = mk_case(req("token-distribution", "should"), req("conviction-voting", "could"))
    assert rank_vulnerabilities(mini_kb, case) == []


def test_rank_extremal_ordering(mini_kb):
    case = mk_case(
        req("token-distribution", "must"),   # supported by all 3
        req("intellectual-property", "must"),  # supported by none
    )
    ranked = rank_vulnerabilities(mini_kb, case)
    assert [v.requirement.feature_id for v in ranked] == [
        "intellectual-property",
        "token-distribution",
    ]
    assert [v.support_count for v in ranked] == [0, 3]
    assert ranked[0].coverage_pct == 0.0
    assert ranked[1].coverage_pct == 100.0


def test_rank_wont_counts_non_supporters(mini_kb):
    # revenue-sharing supported by colony+daostack: a Won't admits only aragon
    case = mk_case(req("revenue-sharing", "wont"), req("delegable-voting", "must"))
    ranked = rank_vulnerabilities(mini_kb, case)
    by_id = {v.requirement.feature_id: v for v in ranked}
    assert by_id["revenue-sharing"].support_count == 1
    assert by_id["delegable-voting"].support_count == 1
    # tie on support count falls back to feature id
    assert [v.requirement.feature_id for v in ranked] == ["delegable-voting", "revenue-sharing"]


def test_rank_ordinal_must_uses_threshold_coverage(mini_kb):
    case = mk_case(req("scalability", "must", "H"))
    (v,) = rank_vulnerabilities(mini_kb, case)
    assert v.support_count == 1  # only aragon is High
    assert v.coverage_pct == pytest.approx(100 / 3)


def test_single_zero_coverage_must_relaxes_in_one_step(mini_kb):
    case = mk_case(req("intellectual-property", "must"))
    plan = relax_until_feasible(mini_kb, case)
    assert len(plan.steps) == 1
    step = plan.steps[0]
    assert step.from_priority is Priority.MUST
    assert step.to_priority is Priority.SHOULD
    assert step.feasible_count_after == 3
    assert len(plan.final_evaluation.feasible) == 3


def test_feasible_case_yields_zero_step_plan(mini_kb):
    case = mk_case(req("token-distribution", "must"))
    plan = relax_until_feasible(mini_kb, case)
    assert plan.steps == ()
    assert plan.final_case == case
    assert len(plan.final_evaluation.feasible) == 3


def test_aratoo_fixture_two_step_plan(sample_kb, sample_cases):
    case = sample_cases["aratoo"]
    assert evaluate(sample_kb, case).feasible == ()
    plan = relax_until_feasible(sample_kb, case)
    moves = [(s.requirement.feature_id, s.from_priority.value, s.to_priority.value) for s in plan.steps]
    assert moves == [
        ("intellectual-property", "must", "should"),
        ("membership-management", "wont", "none"),
    ]
    assert plan.final_evaluation.feasible_ids() == ["colony", "aragon", "daostack"]
    # the relaxed requirements stay on the case at their downgraded priorities
    final = {r.feature_id: r.priority for r in plan.final_case.requirements}
    assert final["intellectual-property"] is Priority.SHOULD
    assert final["membership-management"] is Priority.NONE


def test_adversarial_case_relaxes_every_hard_constraint(mini_kb):
    # both hard constraints admit zero platforms, so neither step alone can
    # restore feasibility: the plan must exhaust them all
    case = mk_case(
        req("intellectual-property", "must"),
        req("token-distribution", "wont"),
    )
    plan = relax_until_feasible(mini_kb, case)
    assert len(plan.steps) == 2
    assert len(plan.final_evaluation.feasible) == 3
    counts = [s.feasible_count_after for s in plan.steps]
    assert counts == sorted(counts)
    assert counts[0] == 0 and counts[-1] == 3


def test_relaxation_does_not_mutate_the_input_case(mini_kb):
    case = mk_case(req("intellectual-property", "must"))
    before = case.to_dict()
    relax_until_feasible(mini_kb, case)
    assert case.to_dict() == before


def test_empty_kb_is_rejected():
    empty = KnowledgeBase(version="0", platforms=(), boolean_features=(),
                          ordinal_features=(), qualities=())
    with pytest.raises(EmptyKnowledgeBase):
        relax_until_feasible(empty, Case(id="c", name="c"))


def test_suggest_only_prefixes_the_full_plan(sample_kb, sample_cases):
    case = sample_cases["aratoo"]
    plan = relax_until_feasible(sample_kb, case)
    assert suggest_only(sample_kb, case, 1) == list(plan.steps[:1])
    assert suggest_only(sample_kb, case, 99) == list(plan.steps)
    assert suggest_only(sample_kb, case, 1)[0].requirement.feature_id == "intellectual-property"


def test_suggest_only_feasible_case_is_empty(mini_kb):
    assert suggest_only(mini_kb, mk_case(req("token-distribution", "must")), 3) == []


def test_suggest_only_requires_positive_k(mini_kb):
    with pytest.raises(ValueError):
        suggest_only(mini_kb, mk_case(), 0)
