"""Exact equilibrium computation and certification for normal-form games.

Zero-sum games are solved by exact-rational linear programming; small
bimatrix games by support enumeration with exact feasibility checks.
Nash gaps and eps-equilibrium certificates are computed against exact
best-response oracles, and zero-sum strategy uniqueness is decided by
probing every coordinate of the optimal face.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from . import lp
from .adapters import as_adapter, as_support
from .errors import EnumerationCapExceeded, NotZeroSum

DEFAULT_SUPPORT_CAP = 200_000


@dataclass(frozen=True)
class EquilibriumResult:
    """Strategy pair with exact values and per-player improvement bounds.

    certificate holds (impr1, impr2): how much each player could gain by
    deviating to a best pure strategy; exactly (0, 0) for an equilibrium.
    """

    row_strategy: tuple
    col_strategy: tuple
    values: tuple
    certificate: tuple

    @property
    def value(self):
        return self.values[0]


@dataclass(frozen=True)
class UniquenessCertificate:
    unique: bool
    witness: tuple = None  # (player, alternative optimal strategy)


@dataclass(frozen=True)
class GapReport:
    improvements: tuple
    gap: Fraction
    values: tuple

    @property
    def impr1(self):
        return self.improvements[0]

    @property
    def impr2(self):
        return self.improvements[1]


@dataclass(frozen=True)
class EquilibriumCheck:
    passed: bool
    eps: Fraction
    improvements: tuple
    values: tuple


def _pure_improvements(nfg, x, y):
    m, n = nfg.shape
    v1 = sum(x[i] * y[j] * nfg.v1[i][j] for i in range(m) for j in range(n))
    v2 = sum(x[i] * y[j] * nfg.v2[i][j] for i in range(m) for j in range(n))
    best1 = max(sum(nfg.v1[i][j] * y[j] for j in range(n)) for i in range(m))
    best2 = max(sum(nfg.v2[i][j] * x[i] for i in range(m)) for j in range(n))
    return (best1 - v1, best2 - v2), (v1, v2)


def solve_zero_sum(nfg):
    """Exact maximin/minimax strategies and value via rational LP."""
    if not nfg.zero_sum:
        raise NotZeroSum("solve_zero_sum needs a zero-sum game")
    x, y, value = lp.zero_sum_strategies(nfg.v1)
    cert, values = _pure_improvements(nfg, x, y)
    return EquilibriumResult(tuple(x), tuple(y), values, cert)


def enumerate_nash_bimatrix(nfg, max_support, cap=DEFAULT_SUPPORT_CAP):
    """All equilibria with square supports of size <= max_support.

    Support enumeration: for each candidate support pair solve the two
    indifference systems exactly, keep solutions that are strictly positive
    on their support and survive the best-response inequalities.  Singular
    (degenerate) systems are skipped, so the result enumerates the isolated
    equilibria of that support size.
    """
    m, n = nfg.shape
    smax = min(max_support, m, n)
    total = sum(comb(m, s) * comb(n, s) for s in range(1, smax + 1))
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} support pairs exceed cap {cap}")
    out = []
    for s in range(1, smax + 1):
        for rows in combinations(range(m), s):
            for cols in combinations(range(n), s):
                eq = _support_candidate(nfg, rows, cols)
                if eq is not None:
                    out.append(eq)
    return out


def _support_candidate(nfg, rows, cols):
    s = len(rows)
    # Column mixture y and value v1: rows indifferent, weights sum to 1.
    a = [[nfg.v1[i][j] for j in cols] + [Fraction(-1)] for i in rows]
    a.append([Fraction(1)] * s + [Fraction(0)])
    b = [Fraction(0)] * s + [Fraction(1)]
    sol = lp.solve_linear_system(a, b)
    if sol is None:
        return None
    yj, v1 = sol[:s], sol[s]
    if any(w <= 0 for w in yj):
        return None
    # Row mixture x and value v2: columns indifferent.
    a = [[nfg.v2[i][j] for i in rows] + [Fraction(-1)] for j in cols]
    a.append([Fraction(1)] * s + [Fraction(0)])
    sol = lp.solve_linear_system(a, b)
    if sol is None:
        return None
    xi, v2 = sol[:s], sol[s]
    if any(w <= 0 for w in xi):
        return None
    m, n = nfg.shape
    x = [Fraction(0)] * m
    y = [Fraction(0)] * n
    for k, i in enumerate(rows):
        x[i] = xi[k]
    for k, j in enumerate(cols):
        y[j] = yj[k]
    for i in range(m):
        if sum(nfg.v1[i][j] * y[j] for j in range(n)) > v1:
            return None
    for j in range(n):
        if sum(nfg.v2[i][j] * x[i] for i in range(m)) > v2:
            return None
    cert, values = _pure_improvements(nfg, x, y)
    return EquilibriumResult(tuple(x), tuple(y), values, cert)


def nash_gap(game, m1, m2, oracle=None):
    """Per-player best-response improvements and their sum (the Nash gap)."""
    ad = as_adapter(game)
    s1 = as_support(ad, 1, m1)
    s2 = as_support(ad, 2, m2)
    v1 = Fraction(0)
    v2 = Fraction(0)
    for p, wp in s1:
        for q, wq in s2:
            a, b = ad.evaluate(p, q)
            v1 += wp * wq * a
            v2 += wp * wq * b
    if oracle is None:
        b1 = ad.best_response(1, s2).value
        b2 = ad.best_response(2, s1).value
    else:
        b1 = oracle(game, 1, s2)
        b2 = oracle(game, 2, s1)
    return GapReport((b1 - v1, b2 - v2), (b1 - v1) + (b2 - v2), (v1, v2))


def verify_equilibrium(game, m1, m2, eps):
    """Per-player eps-equilibrium check: max improvement <= eps."""
    report = nash_gap(game, m1, m2)
    eps = Fraction(eps)
    return EquilibriumCheck(
        passed=max(report.improvements) <= eps,
        eps=eps,
        improvements=report.improvements,
        values=report.values,
    )


def is_unique_zero_sum_equilibrium(nfg):
    """Decide whether each player's optimal-strategy polytope is a point.

    After the LP solve, for every strategy coordinate maximize it over the
    optimal face; the polytope is {x*} iff no coordinate can exceed its
    value at x*.  Returns a differing optimal strategy as witness when a
    probe escapes.
    """
    if not nfg.zero_sum:
        raise NotZeroSum("uniqueness test needs a zero-sum game")
    res = solve_zero_sum(nfg)
    m, n = nfg.shape
    value = res.value
    # Row player's optimal face: x in simplex with x' V1 >= value columnwise.
    a_ub = [[-nfg.v1[i][j] for i in range(m)] for j in range(n)]
    b_ub = [-value] * n
    a_eq = [[Fraction(1)] * m]
    b_eq = [Fraction(1)]
    for i in range(m):
        c = [Fraction(0)] * m
        c[i] = Fraction(1)
        probe, best = lp.maximize(c, a_ub, b_ub, a_eq, b_eq)
        if best > res.row_strategy[i]:
            return UniquenessCertificate(False, (1, tuple(probe)))
    # Column player's optimal face: V1 y <= value rowwise.
    a_ub = [[nfg.v1[i][j] for j in range(n)] for i in range(m)]
    b_ub = [value] * m
    a_eq = [[Fraction(1)] * n]
    b_eq = [Fraction(1)]
    for j in range(n):
        c = [Fraction(0)] * n
        c[j] = Fraction(1)
        probe, best = lp.maximize(c, a_ub, b_ub, a_eq, b_eq)
        if best > res.col_strategy[j]:
            return UniquenessCertificate(False, (2, tuple(probe)))
    return UniquenessCertificate(True, None)
