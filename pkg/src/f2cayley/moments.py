"""Exact first and second moments of the subspace-clique count.

M is the number of m-dimensional subspaces whose 2^m - 1 nonzero elements all
land in a uniformly random generator set, so E M = [n choose m]_2 * 2^-(2^m-1)
and the second moment decomposes over pairs of subspaces by intersection
dimension j, the union of the two nonzero parts having 2^(m+1) - 2^j - 1
elements.  Everything is computed in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PreconditionError
from .gf2 import gaussian_binomial

__all__ = [
    "pairs_by_intersection",
    "expected_M",
    "variance_M",
    "MomentReport",
    "moment_report",
    "moment_csv_header",
    "moment_csv_row",
    "EqknCheck",
    "eqkn_check",
]


def pairs_by_intersection(n: int, m: int, j: int) -> int:
    """Ordered pairs of m-dimensional subspaces of F_2^n meeting in dim j.

    Fix H, pick the intersection inside it, then extend to H' meeting H
    exactly there: [n,m] * [m,j] * 2^((m-j)^2) * [n-m, m-j], all base-2
    Gaussian binomials.
    """
    if not 0 <= j <= m <= n:
        raise PreconditionError("pairs_by_intersection needs 0 <= j <= m <= n")
    if m - j > n - m:
        return 0
    return (
        gaussian_binomial(n, m)
        * gaussian_binomial(m, j)
        * (1 << ((m - j) * (m - j)))
        * gaussian_binomial(n - m, m - j)
    )


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def expected_M(n: int, m: int) -> Fraction:
    """E M = [n choose m]_2 * 2^-(2^m - 1), exactly."""
    if not 0 <= m <= n:
        raise PreconditionError("expected_M needs 0 <= m <= n")
    return gaussian_binomial(n, m) * _pow2(-((1 << m) - 1))


def variance_M(n: int, m: int) -> Fraction:
    """Var M over pairs of subspaces split by intersection dimension."""
    if not 0 <= m <= n:
        raise PreconditionError("variance_M needs 0 <= m <= n")
    second = Fraction(0)
    for j in range(m + 1):
        second += pairs_by_intersection(n, m, j) * _pow2(-((1 << (m + 1)) - (1 << j) - 1))
    return second - expected_M(n, m) ** 2


@dataclass(frozen=True)
class MomentReport:
    n: int
    m: int
    e_m: Fraction
    var_m: Fraction
    paper_e_lb: Fraction
    paper_var_ub: Fraction
    cheb: Fraction
    cheb_ub: Fraction
    holds_e: bool
    holds_var: bool
    holds_cheb: bool


def moment_report(n: int, m: int) -> MomentReport:
    """Exact moments next to the closed-form bounds they are claimed to obey.

    holds_e (E M >= 2^(nm - m^2 - 2^m)) is a theorem at every size; the
    variance and Chebyshev comparisons are asymptotic claims and their flags
    are reported without being asserted anywhere.
    """
    if not 1 <= m <= n:
        raise PreconditionError("moment_report needs 1 <= m <= n")
    e = expected_M(n, m)
    v = variance_M(n, m)
    e_lb = _pow2(n * m - m * m - (1 << m))
    var_ub = 2 * sum(
        (_pow2(2 * m * n - (1 << (m + 1)) + (1 << l) - n * l) for l in range(1, m + 1)),
        Fraction(0),
    )
    cheb = v / (e * e)
    cheb_ub = 8 * m * _pow2(2 * m * m - n)
    return MomentReport(
        n=n, m=m, e_m=e, var_m=v, paper_e_lb=e_lb, paper_var_ub=var_ub,
        cheb=cheb, cheb_ub=cheb_ub,
        holds_e=e >= e_lb, holds_var=v <= var_ub, holds_cheb=cheb <= cheb_ub,
    )


def moment_csv_header() -> str:
    return "n,m,E_M,Var_M,paper_E_lb,paper_Var_ub,cheb,cheb_ub,holds_E,holds_Var,holds_cheb"


def moment_csv_row(r: MomentReport) -> str:
    return (
        f"{r.n},{r.m},{r.e_m},{r.var_m},{r.paper_e_lb},{r.paper_var_ub},"
        f"{r.cheb},{r.cheb_ub},{r.holds_e},{r.holds_var},{r.holds_cheb}"
    )


@dataclass(frozen=True)
class EqknCheck:
    n: int
    m: int
    value: int
    nonpositive: bool


def eqkn_check(n: int, m: int) -> EqknCheck:
    """Evaluate 2^m - n(m - 1) - 2, the margin that keeps the second-moment
    exponent nonnegative; pure integer arithmetic."""
    if n < 2:
        raise PreconditionError("eqkn_check needs n >= 2")
    if m < 1:
        raise PreconditionError("eqkn_check needs m >= 1")
    value = (1 << m) - n * (m - 1) - 2
    return EqknCheck(n=n, m=m, value=value, nonpositive=value <= 0)
