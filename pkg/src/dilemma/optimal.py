"""The goodness test: which tables belong in the loss-minimizing rule.

For a homogeneous committee, whether a positive verdict on a table
lowers the expected loss depends on the table only through its class
(rho, alpha) and on the competence odds eta = theta / (1 - theta) > 1.
Writing

    G(eta) = eta**(-rho - alpha) + eta**(-rho + alpha)

the class is good (belongs in the optimal rule) exactly when
G(eta) < 2 * (1 - w) / w, with ties resolved against inclusion.  G
always starts at 2 as eta -> 1 with slope -2 * rho; its shape splits
classes into three types:

* type a (rho <= 0): G increases, so the class is good only for small
  w and weak competence;
* type b (rho > alpha): G decreases to zero, good whenever competence
  is high enough;
* type c (0 < rho < alpha): G dips to a minimum at eta_star and then
  diverges, good on at most one competence window.

The greatest competence at which a type-c class stays good is the root
theta_0 reported by goodness_intervals; those roots drive the order in
which classes leave the optimal rule as competence grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError
from .rules import DecisionRule
from .tables import TableClass, enumerate_classes, table_class, validate_class, validate_n

# |G(eta_star) - xi| below this band is reported as a degenerate
# tangency instead of guessing zero or two crossings
TANGENCY_BAND = 1e-14


class TableType(Enum):
    A = "a"
    B = "b"
    C = "c"


def _as_class(cls_or_table) -> TableClass:
    seq = tuple(cls_or_table)
    if len(seq) == 4:
        return table_class(seq)
    return validate_class(seq)


def classify(cls_or_table) -> TableType:
    c = _as_class(cls_or_table)
    if c.rho <= 0:
        return TableType.A
    if c.rho > c.alpha:
        return TableType.B
    # rho == +-alpha is ruled out by the parity check in validate_class
    return TableType.C


def g_eval(cls_or_table, eta) -> float:
    c = _as_class(cls_or_table)
    eta = float(eta)
    if eta <= 1.0:
        raise InvalidParameterError(f"eta must exceed 1, got {eta}")
    return eta ** (-c.rho - c.alpha) + eta ** (-c.rho + c.alpha)


def eta_star(cls_or_table) -> float:
    """Location of the minimum of G; only type-c classes have one."""
    c = _as_class(cls_or_table)
    if classify(c) is not TableType.C:
        raise InvalidParameterError(f"class {tuple(c)} is not type c")
    return ((c.alpha + c.rho) / (c.alpha - c.rho)) ** (1.0 / (2 * c.alpha))


def _check_w(w) -> float:
    w = float(w)
    if not 0.0 < w < 1.0:
        raise InvalidParameterError(f"loss weight w must lie in (0, 1), got {w}")
    return w


def _check_theta(theta) -> float:
    theta = float(theta)
    if not 0.5 < theta < 1.0:
        raise InvalidParameterError(
            f"competence must lie in (1/2, 1) here, got {theta}")
    return theta


def _xi(w: float) -> float:
    return 2.0 * (1.0 - w) / w


def is_good(cls_or_table, w, theta) -> bool:
    """Strict goodness test; boundary equality counts as bad."""
    c = _as_class(cls_or_table)
    w = _check_w(w)
    theta = _check_theta(theta)
    eta = theta / (1.0 - theta)
    return g_eval(c, eta) < _xi(w)


@dataclass(frozen=True)
class GoodnessProfile:
    """Where in theta a class is good, at fixed w.

    ``intervals`` holds open intervals with endpoints in [1/2, 1]; the
    boundary values 0.5 and 1.0 stand for the ends of the competence
    range.  ``degenerate`` flags a type-c minimum within TANGENCY_BAND
    of the threshold, where the crossing count is numerically
    undecidable; no intervals are reported in that case.
    """
    cls: TableClass
    kind: TableType
    w: float
    intervals: tuple
    degenerate: bool = False


def _theta_of(eta: float) -> float:
    return eta / (1.0 + eta)


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    sign_lo = f(lo) > 0
    for _ in range(300):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def goodness_intervals(cls_or_table, w, tol: float = 1e-12) -> GoodnessProfile:
    """Solve G(eta) = 2(1-w)/w and return the good theta windows.

    Every crossing is bracketed analytically before bisection: the
    bound eta_a = xi**(1/(alpha-rho)) caps any crossing on a rising
    branch since eta**(alpha-rho) < G(eta), and for falling type-b
    curves (w/(1-w))**(1/(rho-alpha)) caps the single crossing.
    """
    c = _as_class(cls_or_table)
    kind = classify(c)
    w = _check_w(w)
    rho, alpha = c
    xi = _xi(w)

    def f(eta):
        # the bracket may start at the open end of the domain; G -> 2 there
        g = 2.0 if eta == 1.0 else g_eval(c, eta)
        return g - xi

    degenerate = False
    if kind is TableType.A:
        if w >= 0.5:
            intervals = ()
        else:
            eta0 = _bisect(f, 1.0, xi ** (1.0 / (alpha - rho)), tol)
            intervals = ((0.5, _theta_of(eta0)),)
    elif kind is TableType.B:
        if w <= 0.5:
            intervals = ((0.5, 1.0),)
        else:
            hi = (w / (1.0 - w)) ** (1.0 / (rho - alpha))
            eta0 = _bisect(f, 1.0, hi, tol)
            intervals = ((_theta_of(eta0), 1.0),)
    else:
        es = eta_star(c)
        if w <= 0.5:
            eta0 = _bisect(f, es, xi ** (1.0 / (alpha - rho)), tol)
            intervals = ((0.5, _theta_of(eta0)),)
        else:
            gap = g_eval(c, es) - xi
            if abs(gap) <= TANGENCY_BAND:
                intervals = ()
                degenerate = True
            elif gap > 0:
                intervals = ()
            else:
                lo = _bisect(f, 1.0, es, tol)
                hi = _bisect(f, es, xi ** (1.0 / (alpha - rho)), tol)
                intervals = ((_theta_of(lo), _theta_of(hi)),)
    return GoodnessProfile(c, kind, w, intervals, degenerate)


def optimal_rule(n: int, w, theta) -> DecisionRule:
    """Loss-minimizing admissible rule for a homogeneous committee."""
    validate_n(n)
    w = _check_w(w)
    theta = _check_theta(theta)
    good = [c for c in enumerate_classes(n) if is_good(c, w, theta)]
    rule = DecisionRule.from_classes(n, good)
    assert rule.admissible
    return rule


def pb_optimal(n: int, w, theta) -> bool:
    """Exact test: the premiss-wise majority rule minimizes the loss."""
    validate_n(n)
    w = _check_w(w)
    theta = _check_theta(theta)
    eta = theta / (1.0 - theta)
    return theta >= w and eta + eta ** (-n) >= _xi(w)


def pb_optimal_sufficient(w, theta) -> bool:
    """Size-free sufficient condition for premiss-wise optimality."""
    w = _check_w(w)
    theta = _check_theta(theta)
    return theta >= w and theta >= (2.0 - 2.0 * w) / (2.0 - w)


_CLASSICAL = {
    # premiss-wise: majority on P and majority on Q
    "pb": lambda T: T.x + T.y > T.z + T.t and T.x + T.z > T.y + T.t,
    # conclusion-wise: majority of voters accept both premisses
    "cb": lambda T: T.x > T.y + T.z + T.t,
    # both mixed margins: between the two above
    "hb": lambda T: T.x > T.z + T.t and T.x > T.y + T.t,
}


def classical_rule(kind: str, n: int) -> DecisionRule:
    """The named textbook rule: 'pb', 'cb' or 'hb'."""
    try:
        pred = _CLASSICAL[kind]
    except KeyError:
        raise InvalidParameterError(
            f"kind must be one of {sorted(_CLASSICAL)}, got {kind!r}") from None
    return DecisionRule.from_predicate(n, pred)


def pb_region(n: int, resolution: int = 100):
    """Midpoint grid over (theta, w) with both premiss-wise optimality tests.

    Yields (theta, w, exact, sufficient) rows, theta-major.
    """
    validate_n(n)
    if resolution < 1:
        raise InvalidParameterError(f"resolution must be >= 1, got {resolution}")
    for i in range(resolution):
        theta = 0.5 + (i + 0.5) / (2.0 * resolution)
        for j in range(resolution):
            w = (j + 0.5) / resolution
            yield (theta, w, pb_optimal(n, w, theta), pb_optimal_sufficient(w, theta))
