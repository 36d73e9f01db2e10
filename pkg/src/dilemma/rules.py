"""Decision rules: symmetric yes/no verdicts on vote tables.

A rule maps each table of a fixed committee size to a conclusion
verdict.  Rules here are always premiss-symmetric (they cannot tell y
from z), so the positive set is stored as canonical tables.  A rule is
admissible when its positive set is also upward closed in the single
ballot shift order: shifting any voter toward the premisses never
flips a yes back to a no.  Admissible rules are exactly the upper sets
of the extended poset and are encoded compactly by their antichain of
minimal positive tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError
from .poset import build_poset
from .tables import (VoteTable, canonical, class_members, node_sort_key,
                     table_class, validate_n)


@dataclass(frozen=True)
class DecisionRule:
    n: int
    positives: frozenset  # canonical tables answered "yes"
    antichain: tuple      # minimal positives, node order
    admissible: bool

    @classmethod
    def from_tables(cls, n: int, tables) -> "DecisionRule":
        validate_n(n)
        pos = frozenset(canonical(T) for T in tables)
        for T in pos:
            if T.n != n:
                raise InvalidParameterError(f"table {tuple(T)} has size {T.n}, not {n}")
        po = build_poset(n, "extended")
        minimal = tuple(sorted(
            (T for T in pos
             if not any(S != T and po.leq(S, T) for S in pos)),
            key=node_sort_key))
        admissible = po.upper_set(minimal) == pos
        return cls(n, pos, minimal, admissible)

    @classmethod
    def from_antichain(cls, n: int, antichain) -> "DecisionRule":
        po = build_poset(validate_n(n), "extended")
        pos = po.upper_set(tuple(canonical(T) for T in antichain))
        return cls.from_tables(n, pos)

    @classmethod
    def from_classes(cls, n: int, classes) -> "DecisionRule":
        tabs = [T for c in classes for T in class_members(c, n)]
        return cls.from_tables(n, tabs)

    @classmethod
    def from_predicate(cls, n: int, predicate) -> "DecisionRule":
        """Rule accepting the canonical tables where predicate(T) is true."""
        po = build_poset(validate_n(n), "extended")
        return cls.from_tables(n, [T for T in po.nodes if predicate(T)])

    def decides(self, table) -> int:
        T = canonical(table)
        if T.n != self.n:
            raise InvalidParameterError(f"table {tuple(table)} has size {T.n}, not {self.n}")
        return int(T in self.positives)

    def positive_classes(self) -> tuple:
        """Classes touched by the positive set, descending (rho, alpha)."""
        return tuple(sorted({table_class(T) for T in self.positives},
                            key=lambda c: (-c.rho, -c.alpha)))

    def is_class_constant(self) -> bool:
        """True when the verdict depends on the table only through its class."""
        return all(set(class_members(c, self.n)) <= self.positives
                   for c in self.positive_classes())

    def __repr__(self):
        tag = "admissible" if self.admissible else "inadmissible"
        return (f"DecisionRule(n={self.n}, {tag}, "
                f"antichain={[tuple(T) for T in self.antichain]})")


def empty_rule(n: int) -> DecisionRule:
    """The constant-no rule (admissible; empty antichain)."""
    return DecisionRule.from_tables(n, ())
