"""Closed-form average-case bounds on the clique number omega.

All logarithms are natural.  The asymptotic bounds need ``ln ln n`` to be
comfortably positive, so they refuse ``n < 16``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

C_DEFAULT = 1.0 / math.log(2.0)
MIN_N = 16


def _require_n(n) -> None:
    if n < MIN_N:
        raise ValueError(f"n must be at least {MIN_N}, got {n}")


def alpha(L: float, gamma: float, eps: float) -> float:
    """Edge-probability constant: p_n <= alpha / n."""
    if not L > 0:
        raise ValueError("Lipschitz constant L must be positive")
    if not gamma >= 0:
        raise ValueError("moment gamma must be nonnegative")
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return max(1.0, 8.0 * L * (1.0 + gamma) / eps)


@dataclass(frozen=True)
class BoundParams:
    L: float
    gamma: float
    eps: float

    @property
    def alpha(self) -> float:
        return alpha(self.L, self.gamma, self.eps)


def entropy_h(xi: float) -> float:
    """H(xi) = 1 - xi + xi ln xi."""
    if not xi > 0:
        raise ValueError("H is defined for xi > 0")
    return 1.0 - xi + xi * math.log(xi)


def binomial_tail_bound(n: int, p: float, kappa: float) -> float:
    """Upper bound on Pr[Bin(n, p) >= kappa] valid for kappa >= n p."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    mu = n * p
    if kappa < mu:
        raise ValueError(f"kappa={kappa} below the mean n*p={mu}")
    return math.exp(-mu * entropy_h(kappa / mu))


def k_n(n: int, c: float = C_DEFAULT) -> float:
    _require_n(n)
    ln = math.log(n)
    return c * ln / math.log(ln)


def expected_two_omega_bound(n: int) -> float:
    """1 + 2 n^(1 / ln ln n)."""
    _require_n(n)
    ln = math.log(n)
    return 1.0 + 2.0 * math.exp(ln / math.log(ln))


def expected_omega_bound(n: int) -> float:
    """1.5 (1 + ln n / ln ln n)."""
    _require_n(n)
    ln = math.log(n)
    return 1.5 * (1.0 + ln / math.log(ln))


def log_tail_omega_bound(n: int) -> float:
    _require_n(n)
    return -n * math.log(math.log(n))


def tail_omega_bound(n: int) -> float:
    """exp(-n ln ln n); underflows to 0.0 for very large n."""
    return math.exp(log_tail_omega_bound(n))


def _check_u_args(n, a, ell):
    if n < 2:
        raise ValueError("n must be at least 2")
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if not a >= 1:
        raise ValueError("alpha must be at least 1")
    beta = a * (n - 1) / n
    if ell / beta < 1:
        raise ValueError(f"ell={ell} below alpha (n-1)/n = {beta}; outside the H-form regime")
    return beta


def log_u_ell_hform(n: int, a: float, ell: int) -> float:
    beta = _check_u_args(n, a, ell)
    return math.log(2.0 * n) + ell * math.log(2.0) - beta * entropy_h(ell / beta)


def log_u_ell_product(n: int, a: float, ell: int) -> float:
    beta = _check_u_args(n, a, ell)
    return math.log(2.0 * n) - beta + ell * math.log(2.0 * math.e * beta / ell)


def u_ell(n: int, a: float, ell: int, rtol: float = 1e-10) -> float:
    """Summand u_ell of the E 2^omega estimate, evaluated two ways.

    The H-function form and the expanded product form must agree to ``rtol``;
    the product form is returned.  Values below ~1e-308 underflow to 0.0.
    """
    lh = log_u_ell_hform(n, a, ell)
    lp = log_u_ell_product(n, a, ell)
    # |exp(lh) - exp(lp)| / exp(lp) = |expm1(lh - lp)|
    if abs(math.expm1(lh - lp)) > rtol:
        raise ArithmeticError(f"u_ell forms disagree: log {lh!r} vs {lp!r}")
    return math.exp(lp)


def _log_zeta(log_n: float, a: float, c: float) -> float:
    lln = math.log(log_n)
    if lln <= 0:
        raise ValueError("ln ln ln n is undefined for n <= e")
    K = math.log(8.0 * a / c)
    return log_n * ((1.0 - c) + c * (K + math.log(lln)) / lln)


def zeta_n(n, a: float, c: float = C_DEFAULT) -> float:
    """n^(1-c) n^(c (K + ln ln ln n) / ln ln n) with K = ln(8 alpha / c)."""
    _require_n(n)
    if not c > 0:
        raise ValueError("c must be positive")
    if not a >= 1:
        raise ValueError("alpha must be at least 1")
    return math.exp(_log_zeta(math.log(n), a, c))


def log_zeta_from_log_n(log_n: float, a: float, c: float = C_DEFAULT) -> float:
    """ln zeta_n as a function of ln n, usable far beyond float range of n."""
    if log_n < math.log(MIN_N):
        raise ValueError(f"n must be at least {MIN_N}")
    return _log_zeta(log_n, a, c)


def zeta_k_constant(a: float, c: float) -> float:
    return math.log(8.0 * a / c)


def bounds_table(n_values, L: float, gamma: float, eps: float, c: float = C_DEFAULT):
    a = alpha(L, gamma, eps)
    rows = []
    for n in n_values:
        rows.append({
            "n": int(n),
            "alpha": a,
            "k_n": k_n(n, c),
            "expected_omega_bound": expected_omega_bound(n),
            "expected_two_omega_bound": expected_two_omega_bound(n),
            "tail_omega_bound": tail_omega_bound(n),
            "log_tail_omega_bound": log_tail_omega_bound(n),
        })
    return rows
