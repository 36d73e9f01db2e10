"""Partial orders on vote tables induced by single-ballot shifts.

A table moves up the order when one voter shifts one ballot toward a
premiss: either a "neither" voter accepts P or Q, or a one-premiss
voter accepts the other premiss.  On canonical tables (x, y, z, t) the
four covering moves are

    (x, y, z+1, t-1)   (x, y+1, z, t-1)   (x+1, y-1, z, t)   (x+1, y, z-1, t)

re-canonicalized and deduplicated.  The margin rho = x - t is a rank:
every cover raises it by one.  Three poset modes exist:

* ``extended``: canonical tables under the shift order.
* ``quotient``: classes (rho, alpha) with covers (rho+1, alpha+-1);
  shifts never tell y-heavy from z-heavy tables apart.
* ``optimality_reduced``: classes reordered so that the upper sets are
  exactly the candidate optimal rules: covers (rho, alpha-2) and
  (rho+1, alpha+1), plus a final (n-1, 1) <= (n, 0).  This mode is not
  graded by rho.

Upper sets of these posets are in bijection with monotone symmetric
rules; the antichain of minimal elements is the compact encoding.

Posets are immutable after construction and safe to share across
threads; the lazily built comparability bitmap is an idempotent cache.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InvalidParameterError, StructuralError
from .tables import (TableClass, VoteTable, class_sort_key, enumerate_classes,
                     enumerate_tables, node_sort_key, validate_n)

MODES = ("extended", "quotient", "optimality_reduced")

# comparability bitmaps are precomputed up to this size, DFS beyond
_BITMAP_MAX_N = 9


def _canon(x, y, z, t) -> VoteTable:
    return VoteTable(x, y, z, t) if y >= z else VoteTable(x, z, y, t)


def _table_covers(T: VoteTable) -> set[VoteTable]:
    x, y, z, t = T
    succ = set()
    if t:
        succ.add(_canon(x, y, z + 1, t - 1))
        succ.add(_canon(x, y + 1, z, t - 1))
    if y:
        succ.add(_canon(x + 1, y - 1, z, t))
    if z:
        succ.add(_canon(x + 1, y, z - 1, t))
    return succ


class Poset:
    """Finite poset given by nodes in a fixed order plus its cover relation."""

    def __init__(self, n: int, mode: str, nodes, covers):
        self.n = n
        self.mode = mode
        self.nodes = tuple(nodes)
        self.covers = tuple(covers)
        self.index = {v: i for i, v in enumerate(self.nodes)}
        up = [[] for _ in self.nodes]
        for lo, hi in self.covers:
            up[self.index[lo]].append(self.index[hi])
        self._up = tuple(tuple(sorted(js)) for js in up)
        self._masks = self._reach_masks() if n <= _BITMAP_MAX_N else None
        self._comp = None

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"Poset(n={self.n}, mode={self.mode!r}, {len(self.nodes)} nodes)"

    def rank(self, node) -> int:
        return self.nodes[self._idx(node)].rho

    def _idx(self, node) -> int:
        try:
            return self.index[node]
        except (KeyError, TypeError):
            raise InvalidParameterError(
                f"{node!r} is not a node of this {self.mode} poset") from None

    def _reach_masks(self) -> list[int]:
        # mask[i] = bitset of nodes >= i, including i; memoized post-order
        # walk of the cover DAG (index order is not topological in
        # optimality_reduced mode)
        N = len(self.nodes)
        masks = [0] * N
        state = [0] * N
        for s in range(N):
            if state[s]:
                continue
            stack = [s]
            while stack:
                i = stack[-1]
                if state[i] == 0:
                    state[i] = 1
                    stack.extend(j for j in self._up[i] if state[j] == 0)
                else:
                    stack.pop()
                    if state[i] == 2:
                        continue
                    m = 1 << i
                    for j in self._up[i]:
                        m |= masks[j]
                    masks[i] = m
                    state[i] = 2
        return masks

    def _reach_up(self, i: int) -> set[int]:
        if self._masks is not None:
            m = self._masks[i]
            return {j for j in range(len(self.nodes)) if m >> j & 1}
        seen = {i}
        stack = [i]
        while stack:
            for j in self._up[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    def _leq_idx(self, a: int, b: int) -> bool:
        if a == b:
            return True
        if self._masks is not None:
            return bool(self._masks[a] >> b & 1)
        stack = [a]
        seen = {a}
        while stack:
            for j in self._up[stack.pop()]:
                if j == b:
                    return True
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return False

    def leq(self, a, b) -> bool:
        """a <= b in this poset."""
        return self._leq_idx(self._idx(a), self._idx(b))

    def comparable(self, a, b) -> bool:
        ia, ib = self._idx(a), self._idx(b)
        return self._leq_idx(ia, ib) or self._leq_idx(ib, ia)

    def _comp_masks(self) -> list[int]:
        if self._comp is None:
            masks = self._masks if self._masks is not None else self._reach_masks()
            comp = [m & ~(1 << i) for i, m in enumerate(masks)]
            for i, m in enumerate(masks):
                m &= ~(1 << i)
                j = 0
                while m:
                    if m & 1:
                        comp[j] |= 1 << i
                    m >>= 1
                    j += 1
            self._comp = comp
        return self._comp

    def upper_set(self, antichain) -> frozenset:
        """Upward closure of a pairwise-incomparable node set."""
        idxs = [self._idx(a) for a in antichain]
        if len(set(idxs)) != len(idxs):
            raise StructuralError(f"antichain has repeated nodes: {antichain!r}")
        for p, a in enumerate(idxs):
            for b in idxs[p + 1:]:
                if self._leq_idx(a, b) or self._leq_idx(b, a):
                    raise StructuralError(
                        f"{self.nodes[a]!r} and {self.nodes[b]!r} are comparable")
        closure = set()
        for i in idxs:
            closure |= self._reach_up(i)
        return frozenset(self.nodes[i] for i in closure)

    def minimal_elements(self, nodes) -> tuple:
        """Minimal elements of an upper set, in node order."""
        idxs = sorted({self._idx(v) for v in nodes})
        minimal = [i for i in idxs
                   if not any(j != i and self._leq_idx(j, i) for j in idxs)]
        closure = set()
        for i in minimal:
            closure |= self._reach_up(i)
        if closure != set(idxs):
            raise StructuralError("input node set is not an upper set")
        return tuple(self.nodes[i] for i in minimal)

    def antichains(self, first=None) -> Iterator[tuple]:
        """Stream every antichain exactly once, elements in node order.

        Depth-first extension in index order; the empty antichain comes
        first, then streams ordered lexicographically by index tuple.
        ``first`` restricts to antichains whose lowest-index element is
        that node, which partitions the work for parallel scans.
        """
        comp = self._comp_masks()
        N = len(self.nodes)
        nodes = self.nodes

        def extend(prefix, forbidden, start):
            for i in range(start, N):
                if forbidden >> i & 1:
                    continue
                cur = prefix + (nodes[i],)
                yield cur
                yield from extend(cur, forbidden | comp[i], i + 1)

        if first is None:
            yield ()
            yield from extend((), 0, 0)
        else:
            i = self._idx(first)
            head = (nodes[i],)
            yield head
            yield from extend(head, comp[i], i + 1)


def _quotient_covers(n, classes):
    have = set(classes)
    cov = []
    for c in classes:
        for na in (c.alpha + 1, c.alpha - 1):
            target = TableClass(c.rho + 1, na)
            if na >= 0 and target in have:
                cov.append((c, target))
    return cov


def _reduced_covers(n, classes):
    have = set(classes)
    cov = []
    for c in classes:
        if c.alpha >= 2:
            cov.append((c, TableClass(c.rho, c.alpha - 2)))
        target = TableClass(c.rho + 1, c.alpha + 1)
        if target in have:
            cov.append((c, target))
    cov.append((TableClass(n - 1, 1), TableClass(n, 0)))
    return cov


@lru_cache(maxsize=None)
def build_poset(n: int, mode: str = "extended") -> Poset:
    """Construct (and cache) the poset for committee size n."""
    validate_n(n)
    if mode not in MODES:
        raise InvalidParameterError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "extended":
        nodes = enumerate_tables(n)
        index = {v: i for i, v in enumerate(nodes)}
        covers = [(T, S) for T in nodes
                  for S in sorted(_table_covers(T), key=index.get)]
    else:
        nodes = enumerate_classes(n)
        index = {v: i for i, v in enumerate(nodes)}
        raw = _quotient_covers(n, nodes) if mode == "quotient" \
            else _reduced_covers(n, nodes)
        covers = sorted(set(raw), key=lambda e: (index[e[0]], index[e[1]]))
    return Poset(n, mode, nodes, covers)


def enumerate_antichains(poset: Poset, first=None) -> Iterator[tuple]:
    return poset.antichains(first)


def upper_set(antichain, poset: Poset) -> frozenset:
    return poset.upper_set(antichain)


def minimal_elements(nodes, poset: Poset) -> tuple:
    return poset.minimal_elements(nodes)


def max_antichain_size(n: int, mode: str = "extended") -> int:
    """Width of the poset (largest antichain), closed form."""
    validate_n(n)
    if mode == "extended":
        return (n + 3) * (n + 1) // 8
    if mode == "quotient":
        return (n + 1) // 2
    raise InvalidParameterError(f"no width formula for mode {mode!r}")


def to_dot(poset: Poset) -> str:
    """Graphviz source for the Hasse diagram, one rank level per row."""
    def label(v):
        return '"(' + ",".join(str(c) for c in v) + ')"'

    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=plaintext];"]
    levels: dict[int, list] = {}
    for v in poset.nodes:
        levels.setdefault(v.rho, []).append(v)
    for rho in sorted(levels, reverse=True):
        row = " ".join(label(v) + ";" for v in levels[rho])
        lines.append("  { rank=same; " + row + " }")
    for lo, hi in poset.covers:
        lines.append(f"  {label(lo)} -> {label(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
