"""Table probabilities under the four states of nature.

Voters judge each premiss independently and are right about each with
probability theta (their competence).  Conditional on which premisses
actually hold (PQ, PnQ, nPQ, nPnQ), a ballot lands in one of the four
table slots with a product law, and the committee table is the sum of
n independent ballots.  For a homogeneous committee the table law has
a closed form: the multinomial count times theta**a * (1-theta)**b
with exponents read off the table; per-voter competences are handled
by convolving the single ballot laws.

False positives weigh the positive tables under PnQ (by symmetry nPQ
gives the same number for any rule considered here); false negatives
weigh the negative tables under PQ.  Everything is double precision
with exact integer multinomials converted late; sums run in canonical
node order through math.fsum, so repeated calls give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError
from .rules import DecisionRule
from .tables import (VoteTable, enumerate_tables, multinomial, node_sort_key,
                     ordered_tables, validate_table)


class State(Enum):
    PQ = "PQ"
    PnQ = "PnQ"
    nPQ = "nPQ"
    nPnQ = "nPnQ"


NEGATIVE_STATES = (State.PnQ, State.nPQ, State.nPnQ)


def as_state(value) -> State:
    if isinstance(value, State):
        return value
    try:
        return State(value)
    except ValueError:
        raise InvalidParameterError(
            f"state must be one of {[s.value for s in State]}, got {value!r}") from None


def _check_theta(th) -> float:
    th = float(th)
    if not 0.0 < th < 1.0:
        raise InvalidParameterError(f"competence must lie in (0, 1), got {th}")
    return th


@dataclass(frozen=True)
class Homogeneous:
    """Every voter has the same competence."""
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _check_theta(self.theta))


@dataclass(frozen=True)
class PerVoter:
    """One competence per voter, in voter order."""
    thetas: tuple

    def __post_init__(self):
        object.__setattr__(self, "thetas",
                           tuple(_check_theta(t) for t in self.thetas))
        if not self.thetas:
            raise InvalidParameterError("per-voter profile needs at least one theta")


Profile = Homogeneous | PerVoter


def as_profile(theta) -> Profile:
    """Float -> Homogeneous; sequence -> PerVoter (singleton -> Homogeneous)."""
    if isinstance(theta, (Homogeneous, PerVoter)):
        return theta
    if isinstance(theta, (int, float)):
        return Homogeneous(theta)
    seq = tuple(theta)
    if len(seq) == 1:
        return Homogeneous(seq[0])
    return PerVoter(seq)


def profile_thetas(profile: Profile, n: int) -> tuple:
    if isinstance(profile, Homogeneous):
        return (profile.theta,) * n
    if len(profile.thetas) != n:
        raise InvalidParameterError(
            f"profile has {len(profile.thetas)} thetas for committee size {n}")
    return profile.thetas


def _profile_key(profile: Profile):
    if isinstance(profile, Homogeneous):
        return ("hom", profile.theta)
    return ("per", profile.thetas)


@dataclass(frozen=True)
class NegativePrior:
    """Prior weights over the three states where the conclusion fails."""
    pnq: float
    npq: float
    npnq: float

    def __post_init__(self):
        ws = (self.pnq, self.npq, self.npnq)
        if any(w < 0 for w in ws):
            raise InvalidParameterError(f"prior weights must be >= 0, got {ws}")
        if abs(math.fsum(ws) - 1.0) > 1e-12:
            raise InvalidParameterError(f"prior weights must sum to 1, got {ws}")

    @classmethod
    def uniform(cls) -> "NegativePrior":
        third = 1.0 / 3.0
        return cls(third, third, third)


@dataclass(frozen=True)
class RuleEvaluation:
    w: float
    p_fp: float
    p_fn: float
    loss: float


def single_vote_law(state, theta) -> tuple:
    """One ballot's slot probabilities (both, P only, Q only, neither)."""
    state = as_state(state)
    c = _check_theta(theta)
    i = 1.0 - c
    if state is State.PQ:
        return (c * c, c * i, i * c, i * i)
    if state is State.PnQ:
        return (c * i, c * c, i * i, i * c)
    if state is State.nPQ:
        return (i * c, i * i, c * c, c * i)
    return (i * i, i * c, c * i, c * c)


def _exponents(T: VoteTable, state: State) -> tuple:
    x, y, z, t = T
    if state is State.PQ:
        return (2 * x + y + z, y + z + 2 * t)
    if state is State.PnQ:
        return (x + 2 * y + t, x + 2 * z + t)
    if state is State.nPQ:
        return (x + 2 * z + t, x + 2 * y + t)
    return (y + z + 2 * t, 2 * x + y + z)


def _per_voter_law(n, state, thetas):
    dist = {(0, 0, 0, 0): 1.0}
    for th in thetas:
        step = single_vote_law(state, th)
        new = {}
        for (x, y, z, t), p in dist.items():
            for slot, (nx, ny, nz, nt) in enumerate(
                    ((x + 1, y, z, t), (x, y + 1, z, t),
                     (x, y, z + 1, t), (x, y, z, t + 1))):
                key = (nx, ny, nz, nt)
                new[key] = new.get(key, 0.0) + p * step[slot]
        dist = new
    return {VoteTable(*key): p for key, p in dist.items()}


# memo of full ordered-table laws keyed by (n, state, profile); entries
# are immutable once written, so concurrent readers are fine
_LAW_CACHE: dict = {}


def table_law(n: int, state, profile) -> dict:
    """Probability of every ordered table under one state, as a dict."""
    state = as_state(state)
    profile = as_profile(profile)
    thetas = profile_thetas(profile, n)
    key = (n, state, _profile_key(profile))
    law = _LAW_CACHE.get(key)
    if law is None:
        if isinstance(profile, Homogeneous):
            th = profile.theta
            law = {}
            for T in ordered_tables(n):
                a, b = _exponents(T, state)
                law[T] = multinomial(T) * th**a * (1.0 - th) ** b
        else:
            law = _per_voter_law(n, state, thetas)
        _LAW_CACHE[key] = law
    return law


def table_prob(table, state, profile) -> float:
    """Probability of one ordered table under a state of nature."""
    T = validate_table(table)
    return table_law(T.n, state, profile)[T]


def _pair_mass(law, T: VoteTable) -> float:
    # canonical table stands for itself and, when distinct, its transpose
    p = law[T]
    if T.y != T.z:
        p += law[T.transpose()]
    return p


def positive_mass(rule: DecisionRule, state, profile) -> float:
    """Probability that the rule answers yes under the given state."""
    law = table_law(rule.n, state, profile)
    pos = sorted(rule.positives, key=node_sort_key)
    return math.fsum(_pair_mass(law, T) for T in pos)


def negative_mass(rule: DecisionRule, state, profile) -> float:
    law = table_law(rule.n, state, profile)
    return math.fsum(_pair_mass(law, T) for T in enumerate_tables(rule.n)
                     if T not in rule.positives)


def rule_fp(rule: DecisionRule, profile) -> float:
    """False positive probability: yes while only P holds."""
    return positive_mass(rule, State.PnQ, profile)


def rule_fn(rule: DecisionRule, profile) -> float:
    """False negative probability: no while both premisses hold."""
    return negative_mass(rule, State.PQ, profile)


def rule_fp_bayes(rule: DecisionRule, profile, prior: NegativePrior) -> float:
    """False positive probability against a prior over the failing states."""
    if not isinstance(prior, NegativePrior):
        prior = NegativePrior(*prior)
    weights = (prior.pnq, prior.npq, prior.npnq)
    tn = math.fsum(wgt * negative_mass(rule, state, profile)
                   for state, wgt in zip(NEGATIVE_STATES, weights))
    return 1.0 - tn


def _check_w(w) -> float:
    w = float(w)
    if not 0.0 < w < 1.0:
        raise InvalidParameterError(f"loss weight w must lie in (0, 1), got {w}")
    return w


def loss(rule: DecisionRule, w, profile) -> RuleEvaluation:
    """Expected loss w * P(FP) + (1 - w) * P(FN)."""
    w = _check_w(w)
    p_fp = rule_fp(rule, profile)
    p_fn = rule_fn(rule, profile)
    return RuleEvaluation(w, p_fp, p_fn, w * p_fp + (1.0 - w) * p_fn)
