"""Closed-form parameters and Singleton-type bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .pbasis import ParamProfile
from .ring import is_prime

ENUM_MAX_K = 200
ENUM_MAX_R = 8


@dataclass(frozen=True)
class CodeShape:
    """(n, k, delta) code over Z_{p^r}; k is the p-dimension, delta the p-degree."""

    n: int
    k: int
    delta: int
    p: int
    r: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if not 0 <= self.k <= self.n * self.r:
            raise ValueError(f"need 0 <= k <= n*r = {self.n * self.r}, got k={self.k}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def r_optimal_params(k: int, r: int) -> ParamProfile:
    """The profile c_0 = floor(k/r), plus c_{r-a} = 1 when a = k mod r > 0."""
    if k < 0 or r < 1:
        raise ValueError("need k >= 0 and r >= 1")
    counts = [0] * r
    counts[0] = k // r
    a = k % r
    if a:
        counts[r - a] += 1
    return ParamProfile(counts)


def all_r_optimal_params(k: int, r: int) -> set[ParamProfile]:
    """Every profile with sum (r-i) c_i = k and sum c_i = ceil(k/r)."""
    if k < 0 or r < 1:
        raise ValueError("need k >= 0 and r >= 1")
    if k > ENUM_MAX_K or r > ENUM_MAX_R:
        raise ValueError(f"enumeration limited to k <= {ENUM_MAX_K}, r <= {ENUM_MAX_R}")
    target = _ceil_div(k, r)
    out = set()

    def rec(i, remaining_k, remaining_c, acc):
        coin = r - i
        if i == r - 1:
            # last coin has value 1
            if remaining_k == remaining_c:
                out.add(ParamProfile(acc + [remaining_c]))
            return
        for c in range(min(remaining_c, remaining_k // coin) + 1):
            rest_k = remaining_k - c * coin
            rest_c = remaining_c - c
            # the remaining coins are worth at most coin - 1 each
            if rest_k > rest_c * (coin - 1):
                continue
            rec(i + 1, rest_k, rest_c, acc + [c])

    rec(0, k, target, [])
    return out


def block_singleton_from_params(n: int, profile: ParamProfile) -> int:
    total = sum(profile)
    if total > n:
        raise ValueError(f"profile sum {total} exceeds n = {n}")
    return n - total + 1


def block_singleton_from_pdim(n: int, k: int, r: int) -> int:
    c = _ceil_div(k, r)
    if c > n or k < 0:
        raise ValueError(f"infeasible block shape: ceil(k/r) = {c} > n = {n}")
    return n - c + 1


def conv_row_bound(n: int, nu: int, ell_profile: ParamProfile) -> int:
    total = sum(ell_profile)
    if total < 1:
        raise ValueError("last-block profile must be nonzero")
    return n * (nu + 1) - total + 1


def conv_generalized_singleton(shape: CodeShape) -> int:
    n, k, delta, r = shape.n, shape.k, shape.delta, shape.r
    if k == 0:
        raise ValueError("the bound needs k >= 1")
    nu = delta // k
    inner = Fraction(k * (nu + 1), r) - Fraction(delta, r)
    return n * (nu + 1) - ceil(inner) + 1


def field_mds_distance(n: int, k: int, delta: int) -> int:
    if not 1 <= k <= n or delta < 0:
        raise ValueError(f"need 1 <= k <= n and delta >= 0, got n={n} k={k} delta={delta}")
    return (n - k) * (delta // k + 1) + delta + 1
