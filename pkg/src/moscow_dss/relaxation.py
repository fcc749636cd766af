"""Greedy relaxation of hard constraints when nothing is feasible.

Hard requirements are ranked by vulnerability: how few platforms the
constraint lets through. The advisor downgrades the single most vulnerable
one (Must -> Should, Won't -> None), re-evaluates, and repeats until at
least one platform is feasible. One downgrade per step keeps the loop
human-confirmable; it makes no claim of minimality beyond the greedy policy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .engine import (
    Case,
    Evaluation,
    HARD_PRIORITIES,
    Priority,
    Requirement,
    evaluate,
    satisfies,
)
from .kb import KnowledgeBase, feature_coverage


class EmptyKnowledgeBase(ValueError):
    """No platforms: no amount of relaxation can produce a feasible set."""


@dataclass(frozen=True)
class Vulnerability:
    """How exposed one hard requirement is, against the current KB.

    support_count is the number of platforms the constraint admits: platforms
    satisfying it for a Must, platforms not supporting it for a Won't.
    coverage_pct is the plain share of platforms meeting the feature
    (threshold coverage for ordinal requirements).
    """

    requirement: Requirement
    support_count: int
    coverage_pct: float

    def to_dict(self) -> dict:
        return {
            "requirement": self.requirement.to_dict(),
            "supportCount": self.support_count,
            "coveragePct": round(self.coverage_pct, 2),
        }


@dataclass(frozen=True)
class RelaxationStep:
    requirement: Requirement  # as it stood before the downgrade
    from_priority: Priority
    to_priority: Priority
    vulnerability: Vulnerability
    feasible_count_after: int

    def to_dict(self) -> dict:
        return {
            "requirement": self.requirement.to_dict(),
            "fromPriority": self.from_priority.value,
            "toPriority": self.to_priority.value,
            "vulnerabilityAtStep": self.vulnerability.to_dict(),
            "feasibleCountAfter": self.feasible_count_after,
        }


@dataclass(frozen=True)
class RelaxationPlan:
    steps: tuple[RelaxationStep, ...]
    final_case: Case
    final_evaluation: Evaluation

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "finalCase": self.final_case.to_dict(),
            "finalEvaluation": self.final_evaluation.to_dict(),
        }


def _requirement_coverage(kb: KnowledgeBase, requirement: Requirement) -> float:
    if kb.is_ordinal(requirement.feature_id):
        if not kb.platforms:
            return 0.0
        meets = sum(1 for p in kb.platforms if satisfies(kb, p.id, requirement))
        return 100.0 * meets / len(kb.platforms)
    return feature_coverage(kb, requirement.feature_id)


def rank_vulnerabilities(kb: KnowledgeBase, case: Case) -> list[Vulnerability]:
    """All hard requirements, most vulnerable first.

    Sorted by ascending admitted-platform count, ties by feature id.
    """
    out = []
    for req in case.requirements:
        if req.priority not in HARD_PRIORITIES:
            continue
        supporting = sum(1 for p in kb.platforms if satisfies(kb, p.id, req))
        if req.priority is Priority.MUST:
            support_count = supporting
        else:
            support_count = len(kb.platforms) - supporting
        out.append(
            Vulnerability(
                requirement=req,
                support_count=support_count,
                coverage_pct=_requirement_coverage(kb, req),
            )
        )
    out.sort(key=lambda v: (v.support_count, v.requirement.feature_id))
    return out


def _downgrade(case: Case, requirement: Requirement) -> tuple[Case, Priority]:
    if requirement.priority is Priority.MUST:
        to = Priority.SHOULD
    elif requirement.priority is Priority.WONT:
        to = Priority.NONE
    else:
        raise ValueError(f"only hard requirements can be relaxed, got {requirement.priority}")
    new_reqs = [
        replace(r, priority=to) if r.feature_id == requirement.feature_id else r
        for r in case.requirements
    ]
    return case.with_requirements(new_reqs), to


def relax_until_feasible(kb: KnowledgeBase, case: Case) -> RelaxationPlan:
    """Downgrade hard constraints one at a time until something is feasible.

    A case that is already feasible yields a zero-step plan. Terminates in
    at most |hard constraints| steps: with every hard constraint relaxed,
    all platforms are feasible, which is non-empty for any non-empty KB.
    """
    if not kb.platforms:
        raise EmptyKnowledgeBase("knowledge base declares no platforms")
    current = case
    evaluation = evaluate(kb, current)
    steps = []
    while not evaluation.feasible:
        vulnerabilities = rank_vulnerabilities(kb, current)
        if not vulnerabilities:
            break  # unreachable for a non-empty KB: no hard constraints means all feasible
        worst = vulnerabilities[0]
        current, to_priority = _downgrade(current, worst.requirement)
        evaluation = evaluate(kb, current)
        steps.append(
            RelaxationStep(
                requirement=worst.requirement,
                from_priority=worst.requirement.priority,
                to_priority=to_priority,
                vulnerability=worst,
                feasible_count_after=len(evaluation.feasible),
            )
        )
    return RelaxationPlan(steps=tuple(steps), final_case=current, final_evaluation=evaluation)


def apply_steps(case: Case, steps) -> Case:
    """Replay recorded downgrades onto a case (used for k-limited applies)."""
    current = case
    for step in steps:
        current, _ = _downgrade(current, step.requirement)
    return current


def suggest_only(kb: KnowledgeBase, case: Case, k: int) -> list[RelaxationStep]:
    """First k planned downgrades, without touching the case.

    Everything downstream of the suggestion is recomputed from scratch on
    the caller's next request, so suggesting is free of side effects.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    plan = relax_until_feasible(kb, case)
    return list(plan.steps[:k])
