"""Monte Carlo cross-check of the closed-form table probabilities.

Trials draw every voter's two premiss judgments, aggregate them into a
vote table, and tally tables (and rule verdicts, when a rule is
given).  Trials run in blocks of 2**16; each block gets its own child
seed from numpy's SeedSequence spawn, so results are reproducible and
independent of how blocks might be distributed over workers.  The
generator algorithm is PCG64 and is recorded in every result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .probability import State, as_profile, as_state, profile_thetas
from .rules import DecisionRule
from .tables import VoteTable, validate_n

BLOCK_TRIALS = 1 << 16
RNG_ALGORITHM = "pcg64"


@dataclass(frozen=True)
class SimulationSpec:
    n: int
    state: State
    profile: object
    trials: int
    seed: int
    rule: DecisionRule | None = None

    def __post_init__(self):
        validate_n(self.n)
        object.__setattr__(self, "state", as_state(self.state))
        object.__setattr__(self, "profile", as_profile(self.profile))
        profile_thetas(self.profile, self.n)
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidParameterError(f"trials must be a positive int, got {self.trials!r}")
        if not isinstance(self.seed, int):
            raise InvalidParameterError(f"seed must be an int, got {self.seed!r}")
        if self.rule is not None and self.rule.n != self.n:
            raise InvalidParameterError(
                f"rule is for n = {self.rule.n}, spec says n = {self.n}")


@dataclass(frozen=True)
class SimulationResult:
    spec: SimulationSpec
    counts: dict          # ordered VoteTable -> trial count
    frequencies: dict
    stderrs: dict         # sqrt(f (1 - f) / trials) per table
    positives: int | None
    positive_rate: float | None
    positive_stderr: float | None
    rng: str = RNG_ALGORITHM
    block_trials: int = field(default=BLOCK_TRIALS)

    def to_json(self) -> dict:
        spec = self.spec
        rec = {
            "spec": {
                "n": spec.n,
                "state": spec.state.value,
                "thetas": list(profile_thetas(spec.profile, spec.n)),
                "trials": spec.trials,
                "seed": spec.seed,
                "rule": None if spec.rule is None
                        else [list(T) for T in spec.rule.antichain],
            },
            "rng": self.rng,
            "block_trials": self.block_trials,
            "tables": [
                {"table": list(T), "count": self.counts[T],
                 "frequency": self.frequencies[T], "stderr": self.stderrs[T]}
                for T in sorted(self.counts, key=lambda T: (-T.rho, -T.x, -T.y))
            ],
        }
        if spec.rule is not None:
            rec["positive"] = {"count": self.positives,
                               "rate": self.positive_rate,
                               "stderr": self.positive_stderr}
        return rec


def simulate(spec: SimulationSpec) -> SimulationResult:
    """Run the trials; same spec, same result, regardless of scheduling."""
    n = spec.n
    thetas = np.asarray(profile_thetas(spec.profile, n))
    p_true = spec.state in (State.PQ, State.PnQ)
    q_true = spec.state in (State.PQ, State.nPQ)

    nblocks = (spec.trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS
    children = np.random.SeedSequence(spec.seed).spawn(nblocks)
    base = n + 1
    tally = np.zeros(base**3, dtype=np.int64)
    remaining = spec.trials
    for child in children:
        m = min(BLOCK_TRIALS, remaining)
        remaining -= m
        rng = np.random.Generator(np.random.PCG64(child))
        correct_p = rng.random((m, n)) < thetas
        correct_q = rng.random((m, n)) < thetas
        vote_p = correct_p if p_true else ~correct_p
        vote_q = correct_q if q_true else ~correct_q
        x = (vote_p & vote_q).sum(axis=1)
        y = (vote_p & ~vote_q).sum(axis=1)
        z = (~vote_p & vote_q).sum(axis=1)
        tally += np.bincount((x * base + y) * base + z, minlength=base**3)

    counts = {}
    for key in np.flatnonzero(tally):
        x, rest = divmod(int(key), base * base)
        y, z = divmod(rest, base)
        counts[VoteTable(x, y, z, n - x - y - z)] = int(tally[key])
    freqs = {T: c / spec.trials for T, c in counts.items()}
    errs = {T: math.sqrt(f * (1.0 - f) / spec.trials) for T, f in freqs.items()}

    positives = rate = err = None
    if spec.rule is not None:
        positives = sum(c for T, c in counts.items() if spec.rule.decides(T))
        rate = positives / spec.trials
        err = math.sqrt(rate * (1.0 - rate) / spec.trials)
    return SimulationResult(spec, counts, freqs, errs, positives, rate, err)
