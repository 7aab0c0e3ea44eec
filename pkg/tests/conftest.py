"""Shared test helpers.

`oracle_utility` is a high-precision evaluator kept deliberately independent
of the package: it builds the distribution over distinct outcomes straight
from each mechanism's definition and evaluates the weighted value sum with
40-digit mpmath arithmetic. Tests use it to cross-check the production path.
"""

from __future__ import annotations

from mpmath import mp, mpf, power

from prizelab.mechanisms import winners_count

mp.dps = 40


def oracle_value(x, alpha=0.88, loss_aversion=2.25):
    x = mpf(x)
    if x >= 0:
        return power(x, mpf(alpha))
    return -mpf(loss_aversion) * power(-x, mpf(alpha))


def oracle_weight_tk(p, delta=0.65):
    p = mpf(p)
    d = mpf(delta)
    if p == 0:
        return mpf(0)
    num = power(p, d)
    return num / power(num + power(1 - p, d), 1 / d)


def oracle_outcomes(kind: str, k, n: int, fee, rake):
    """Distinct (profit, probability) outcomes per mechanism definition."""
    pool = mpf(n) * mpf(fee) * (1 - mpf(rake))
    f = mpf(fee)
    big_n = mpf(n)
    if kind == "wta":
        out = [(pool - f, 1 / big_n)]
        if n > 1:
            out.append((-f, (big_n - 1) / big_n))
    elif kind == "topk-linear":
        m = winners_count(k, n)
        denom = mpf(m) * (m + 1) / 2
        out = [(pool * (m - j + 1) / denom - f, 1 / big_n) for j in range(1, m + 1)]
        if m < n:
            out.append((-f, (big_n - m) / big_n))
    elif kind == "topk-exp":
        m = winners_count(k, n)
        out = [(pool / power(2, j) - f, 1 / big_n) for j in range(1, m + 1)]
        if m < n:
            out.append((-f, (big_n - m) / big_n))
    elif kind == "three-bands":
        if n < 50:
            raise ValueError("three-bands needs at least 50 participants")
        out = [
            (pool / 3 - f, 1 / big_n),
            (pool / 27 - f, 9 / big_n),
            (pool / 120 - f, 40 / big_n),
        ]
        if n > 50:
            out.append((-f, (big_n - 50) / big_n))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def oracle_utility(kind: str, k, n: int, fee, rake,
                   alpha=0.88, loss_aversion=2.25, delta=0.65) -> float:
    total = mpf(0)
    for profit, probability in oracle_outcomes(kind, k, n, fee, rake):
        total += oracle_weight_tk(probability, delta) * oracle_value(
            profit, alpha, loss_aversion
        )
    return float(total)


def rel_err(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(abs(expected), 1e-300)
