"""Vote tables for a committee judging a two-premiss conclusion.

A committee of n voters (n odd) votes yes/no on two premisses P and Q;
the conclusion passes for a voter iff they accept both.  A vote table
(x, y, z, t) counts voters by ballot: x accepted both premisses, y only
P, z only Q, t neither.  Swapping y and z (the transpose) relabels the
premisses, and reasonable rules treat P and Q symmetrically, so most
code works with the canonical representative having y >= z.

Tables carry two coordinates that drive everything downstream: the
margin rho = x - t and the imbalance alpha = |y - z|.  Tables sharing
(rho, alpha) form a class; for odd n, rho + alpha is always odd.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

from .errors import InvalidParameterError

MAX_N = 99


class VoteTable(NamedTuple):
    x: int
    y: int
    z: int
    t: int

    @property
    def n(self) -> int:
        return self.x + self.y + self.z + self.t

    @property
    def rho(self) -> int:
        return self.x - self.t

    @property
    def alpha(self) -> int:
        return abs(self.y - self.z)

    def transpose(self) -> "VoteTable":
        return VoteTable(self.x, self.z, self.y, self.t)

    def is_canonical(self) -> bool:
        return self.y >= self.z


class TableClass(NamedTuple):
    rho: int
    alpha: int


def validate_n(n) -> int:
    """Committee size: odd integer in 1..MAX_N."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParameterError(f"committee size must be an int, got {n!r}")
    if n < 1 or n > MAX_N or n % 2 == 0:
        raise InvalidParameterError(
            f"committee size must be odd and in 1..{MAX_N}, got {n}")
    return n


def validate_table(table) -> VoteTable:
    try:
        t = VoteTable(*table)
    except TypeError:
        raise InvalidParameterError(
            f"a table needs exactly 4 entries, got {table!r}") from None
    if not all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in t):
        raise InvalidParameterError(f"table entries must be ints >= 0, got {table!r}")
    if t.n % 2 == 0 or t.n < 1:
        raise InvalidParameterError(f"table {table!r} sums to even or zero size {t.n}")
    return t


def validate_class(cls, n: int | None = None) -> TableClass:
    try:
        c = TableClass(*cls)
    except TypeError:
        raise InvalidParameterError(
            f"a class needs exactly 2 coordinates, got {cls!r}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
        raise InvalidParameterError(f"class coordinates must be ints, got {cls!r}")
    if c.alpha < 0:
        raise InvalidParameterError(f"alpha must be >= 0, got {cls!r}")
    if (c.rho + c.alpha) % 2 == 0:
        # odd committees only: rho and alpha have opposite parity
        raise InvalidParameterError(f"rho + alpha must be odd, got {cls!r}")
    if n is not None:
        validate_n(n)
        if abs(c.rho) + c.alpha > n:
            raise InvalidParameterError(f"class {cls!r} does not occur for n={n}")
    return c


def transpose(table) -> VoteTable:
    return validate_table(table).transpose()


def canonical(table) -> VoteTable:
    """Representative of the transpose pair with y >= z."""
    t = validate_table(table)
    return t if t.y >= t.z else t.transpose()


def table_class(table) -> TableClass:
    t = validate_table(table)
    return TableClass(t.rho, t.alpha)


def node_sort_key(table: VoteTable):
    """Descending (rho, x, y); fixes node indices everywhere."""
    return (-table.rho, -table.x, -table.y)


def class_sort_key(cls: TableClass):
    return (-cls.rho, -cls.alpha)


def table_count(n: int) -> int:
    """Number of canonical tables for committee size n."""
    validate_n(n)
    return (2 * n**3 + 15 * n**2 + 34 * n + 21) // 24


def class_count(n: int) -> int:
    validate_n(n)
    return (n + 1) * (n + 2) // 2


def enumerate_tables(n: int) -> list[VoteTable]:
    """All canonical tables, sorted by descending (rho, x, y)."""
    validate_n(n)
    out = []
    for x in range(n + 1):
        for y in range(n + 1 - x):
            for z in range(min(y, n - x - y) + 1):
                out.append(VoteTable(x, y, z, n - x - y - z))
    out.sort(key=node_sort_key)
    return out


def enumerate_classes(n: int) -> list[TableClass]:
    """All classes (rho, alpha) occurring at size n, descending (rho, alpha)."""
    validate_n(n)
    out = [TableClass(rho, alpha)
           for rho in range(-n, n + 1)
           for alpha in range(n + 1)
           if (rho + alpha) % 2 == 1 and abs(rho) + alpha <= n]
    out.sort(key=class_sort_key)
    return out


def class_members(cls, n: int) -> list[VoteTable]:
    """Canonical tables of a class, in node order.

    Solving x - t = rho, y - z = alpha, x + y + z + t = n gives one
    table per feasible t.
    """
    c = validate_class(cls, n)
    out = []
    for t in range(max(0, -c.rho), (n - c.rho - c.alpha) // 2 + 1):
        x = c.rho + t
        z = (n - c.rho - c.alpha - 2 * t) // 2
        out.append(VoteTable(x, z + c.alpha, z, t))
    out.sort(key=node_sort_key)
    return out


def whitney_numbers(n: int) -> dict[int, int]:
    """Canonical tables per rank rho, for rho in -n..n.

    Closed form: (n - rho + 4)(n - rho + 2)/8 at odd rho >= 1, constant
    across the even rank just below, mirrored at negative ranks.
    """
    validate_n(n)
    w = {}
    for rho in range(n, -1, -1):
        w[rho] = (n - rho + 4) * (n - rho + 2) // 8 if rho % 2 else w[rho + 1]
    for rho in range(1, n + 1):
        w[-rho] = w[rho]
    return dict(sorted(w.items()))


def multinomial(table) -> int:
    """Exact count of voter orderings producing the ordered table."""
    t = validate_table(table)
    n = t.n
    return math.comb(n, t.x) * math.comb(n - t.x, t.y) * math.comb(n - t.x - t.y, t.z)


def ordered_tables(n: int) -> Iterator[VoteTable]:
    """All ordered tables (transposes not identified)."""
    validate_n(n)
    for x in range(n + 1):
        for y in range(n + 1 - x):
            for z in range(n + 1 - x - y):
                yield VoteTable(x, y, z, n - x - y - z)
