"""Exhaustive loss ranking of admissible rules.

Admissible rules are upper sets, so ranking scans the antichain stream
of the chosen poset: ``extended`` mode ranks every admissible rule,
``compact`` mode only the class-constant ones (upper sets of the
quotient).  Exhaustive scans are refused above n = 5 (extended) or
n = 9 (compact) unless force is set.

Ties are broken deterministically: ascending loss, then ascending
false positive probability, then lexicographic positive-set bitset in
node order.  Repeated runs of the same request produce byte-identical
rankings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError
from .optimal import classical_rule
from .poset import build_poset
from .probability import (Homogeneous, PerVoter, RuleEvaluation, State,
                          as_profile, loss, profile_thetas, table_law)
from .rules import DecisionRule
from .tables import class_members, validate_n

MODES = ("extended", "compact")
ENUMERATION_BOUND = {"extended": 5, "compact": 9}
DEFAULT_K = 5


@dataclass(frozen=True)
class RankingRequest:
    n: int
    w: float
    profile: Homogeneous | PerVoter
    mode: str = "extended"
    k: int = DEFAULT_K
    force: bool = False


@dataclass(frozen=True)
class RankedRule:
    rank: int | None
    antichain: tuple  # tables (extended) or classes (compact)
    name: str | None
    rule: DecisionRule
    evaluation: RuleEvaluation


def _classical_name(rule: DecisionRule) -> str | None:
    names = [kind for kind in ("pb", "cb", "hb")
             if rule.positives == classical_rule(kind, rule.n).positives]
    return ",".join(names) if names else None


def evaluate_rule(rule: DecisionRule, w, profile) -> RankedRule:
    """Loss evaluation plus detection of the textbook rules."""
    profile = as_profile(profile)
    return RankedRule(None, rule.antichain, _classical_name(rule), rule,
                      loss(rule, w, profile))


def rank_rules(request: RankingRequest) -> list[RankedRule]:
    """Top-k admissible rules by expected loss, deterministic order."""
    n = validate_n(request.n)
    if request.mode not in MODES:
        raise InvalidParameterError(f"mode must be one of {MODES}, got {request.mode!r}")
    if request.k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {request.k}")
    w = float(request.w)
    if not 0.0 < w < 1.0:
        raise InvalidParameterError(f"loss weight w must lie in (0, 1), got {w}")
    bound = ENUMERATION_BOUND[request.mode]
    if n > bound and not request.force:
        raise InvalidParameterError(
            f"exhaustive {request.mode} ranking is bounded at n = {bound}; "
            f"pass force=True to scan n = {n} anyway")
    profile = as_profile(request.profile)
    profile_thetas(profile, n)  # length check up front

    po = build_poset(n, "extended" if request.mode == "extended" else "quotient")
    law_fp = table_law(n, State.PnQ, profile)
    law_fn = table_law(n, State.PQ, profile)

    def members(node):
        return (node,) if request.mode == "extended" else class_members(node, n)

    def mass(law, node):
        total = 0.0
        for T in members(node):
            total += law[T]
            if T.y != T.z:
                total += law[T.transpose()]
        return total

    fp_c = [mass(law_fp, v) for v in po.nodes]
    fn_c = [mass(law_fn, v) for v in po.nodes]
    fn_total = sum(fn_c)
    N = len(po.nodes)

    candidates = []
    for ac in po.antichains():
        pos = po.upper_set(ac)
        fp = 0.0
        miss = 0.0
        bitset = 0
        for i, v in enumerate(po.nodes):
            if v in pos:
                fp += fp_c[i]
                miss += fn_c[i]
                bitset |= 1 << (N - 1 - i)
        score = w * fp + (1.0 - w) * (fn_total - miss)
        candidates.append((score, fp, bitset, ac))
    candidates.sort(key=lambda c: c[:3])

    ranked = []
    for rank, (_, _, _, ac) in enumerate(candidates[:request.k], start=1):
        if request.mode == "extended":
            rule = DecisionRule.from_antichain(n, ac)
        else:
            rule = DecisionRule.from_classes(n, po.upper_set(ac))
        ranked.append(RankedRule(rank, ac, _classical_name(rule), rule,
                                 loss(rule, w, profile)))
    return ranked


def ranking_record(request: RankingRequest, ranked: list[RankedRule]) -> dict:
    """JSON-ready summary of one ranking run."""
    profile = as_profile(request.profile)
    thetas = [profile.theta] if isinstance(profile, Homogeneous) \
        else list(profile.thetas)
    rules = []
    for r in ranked:
        entry = {"rank": r.rank,
                 "antichain": [list(v) for v in r.antichain]}
        if r.name:
            entry["name"] = r.name
        entry.update(p_fp=r.evaluation.p_fp, p_fn=r.evaluation.p_fn,
                     loss=r.evaluation.loss)
        rules.append(entry)
    return {"mode": request.mode, "n": request.n, "w": float(request.w),
            "thetas": thetas, "rules": rules}
