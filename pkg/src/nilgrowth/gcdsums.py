"""Exact gcd sums over lattice balls and their zeta-ratio asymptotics.

Sums are exact integers.  The default engine enumerates ball points directly
(numpy-chunked, iterating leading axes and vectorizing the trailing ones).
A totient-sieve evaluation of the same sums is kept as an independent oracle:
gcd(x) = sum_{e | x} phi(e) for x != 0 turns the ball sum into
sum_e phi(e) * (#multiples of e in the ball, minus the zero point).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetError, SpecError
from .words import resolve_budget

CUBE = "cube"
L1 = "l1"


@dataclass(frozen=True)
class LatticeBallSpec:
    """A cubical or l1 ball in Z^dim, optionally translated by offset."""

    dim: int
    radius: int
    norm: str = CUBE
    offset: tuple[int, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise SpecError("dim must be >= 1")
        if self.radius < 0:
            raise SpecError("radius must be >= 0")
        if self.norm not in (CUBE, L1):
            raise SpecError(f"norm must be {CUBE!r} or {L1!r}")
        if not self.offset:
            object.__setattr__(self, "offset", (0,) * self.dim)
        elif len(self.offset) != self.dim:
            raise SpecError("offset length must equal dim")


def l1_ball_count(dim: int, radius: int) -> int:
    """|B_l1(radius)| in Z^dim: sum_k 2^k C(dim,k) C(radius,k)."""
    if radius < 0:
        return 0
    return sum(
        (1 << k) * math.comb(dim, k) * math.comb(radius, k)
        for k in range(0, min(dim, radius) + 1)
    )


def cube_ball_count(dim: int, radius: int) -> int:
    return (2 * radius + 1) ** dim


def _totients(limit: int) -> np.ndarray:
    """phi(1..limit) by a linear sieve."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            phi[p::p] -= phi[p::p] // p
    return phi


def _check_budget(points: int, budget: int | None):
    cap = resolve_budget(budget)
    if points > cap:
        raise BudgetError(f"ball has {points} points, beyond the {cap} cap", needed=points, budget=cap)


def _outer_gcd_sum(g: int, ys: np.ndarray, xs: np.ndarray) -> int:
    """Sum of gcd(g, y, x) over the grid ys x xs, in bounded-memory row blocks."""
    block = max(1, (1 << 22) // max(len(xs), 1))
    total = 0
    for lo in range(0, len(ys), block):
        tab = np.gcd.outer(ys[lo : lo + block], xs)
        if g:
            tab = np.gcd(g, tab)
        total += int(tab.sum())
    return total


def _cube_sum_direct(ball: LatticeBallSpec, budget: int | None) -> int:
    """Direct enumeration over the (possibly offset) box, trailing two axes vectorized."""
    n, dim, a = ball.radius, ball.dim, ball.offset
    _check_budget(cube_ball_count(dim, n), budget)
    axes = [np.abs(np.arange(-n + a[p], n + a[p] + 1, dtype=np.int64)) for p in range(dim)]
    if dim == 1:
        return int(axes[0].sum())
    if dim == 2:
        return _outer_gcd_sum(0, axes[0], axes[1])
    total = 0
    lead_axes = axes[:-2]
    idx = [0] * len(lead_axes)
    while True:
        g = 0
        for p, ax in enumerate(lead_axes):
            g = math.gcd(g, int(ax[idx[p]]))
        total += _outer_gcd_sum(g, axes[-2], axes[-1])
        p = len(lead_axes) - 1
        while p >= 0:
            idx[p] += 1
            if idx[p] < len(lead_axes[p]):
                break
            idx[p] = 0
            p -= 1
        if p < 0:
            break
    return total


def _l1_sum_direct(ball: LatticeBallSpec, budget: int | None) -> int:
    """Direct enumeration over {x : |x|_1 <= n}, last axis vectorized."""
    n, dim, a = ball.radius, ball.dim, ball.offset
    _check_budget(l1_ball_count(dim, n), budget)
    if dim == 1:
        xs = np.arange(-n + a[0], n + a[0] + 1, dtype=np.int64)
        return int(np.abs(xs).sum())
    total = 0

    def rec(axis: int, remaining: int, g: int):
        nonlocal total
        if axis == dim - 1:
            xs = np.arange(-remaining + a[axis], remaining + a[axis] + 1, dtype=np.int64)
            total += int(np.gcd(g, np.abs(xs)).sum())
            return
        for x in range(-remaining, remaining + 1):
            rec(axis + 1, remaining - abs(x), math.gcd(g, abs(x + a[axis])))

    rec(0, n, 0)
    return total


def _cube_sum_sieve(ball: LatticeBallSpec) -> int:
    """Totient identity over the offset box; exact."""
    n, dim, a = ball.radius, ball.dim, ball.offset
    lo = [-n + a[p] for p in range(dim)]
    hi = [n + a[p] for p in range(dim)]
    limit = max(max(abs(l), abs(h)) for l, h in zip(lo, hi))
    if limit == 0:
        return 0
    phi = _totients(limit)
    zero_inside = all(l <= 0 <= h for l, h in zip(lo, hi))
    total = 0
    for e in range(1, limit + 1):
        count = 1
        for l, h in zip(lo, hi):
            count *= h // e - -(-l // e) + 1
            if count <= 0:
                count = 0
                break
        if zero_inside:
            count -= 1
        if count > 0:
            total += int(phi[e]) * count
    return total


def _l1_sum_sieve(ball: LatticeBallSpec) -> int:
    """Totient identity over a centered l1 ball (zero offset only)."""
    if any(ball.offset):
        raise SpecError("sieve engine does not support l1 balls with offsets")
    n, dim = ball.radius, ball.dim
    if n == 0:
        return 0
    phi = _totients(n)
    return sum(int(phi[e]) * (l1_ball_count(dim, n // e) - 1) for e in range(1, n + 1))


def gcd_sum(ball: LatticeBallSpec, budget: int | None = None, method: str = "direct") -> int:
    """Exact sum of gcd(x) over the ball, with gcd(0,...,0) = 0."""
    if method == "direct":
        if ball.norm == CUBE:
            return _cube_sum_direct(ball, budget)
        return _l1_sum_direct(ball, budget)
    if method == "sieve":
        if ball.norm == CUBE:
            return _cube_sum_sieve(ball)
        return _l1_sum_sieve(ball)
    raise SpecError(f"unknown method {method!r}")


def positive_cube_gcd_sum(dim: int, n: int, budget: int | None = None, method: str = "direct") -> int:
    """Exact sum of gcd over {1..n}^dim."""
    if dim < 1:
        raise SpecError("dim must be >= 1")
    if n < 1:
        return 0
    if method == "sieve":
        phi = _totients(n)
        return sum(int(phi[e]) * (n // e) ** dim for e in range(1, n + 1))
    if method != "direct":
        raise SpecError(f"unknown method {method!r}")
    _check_budget(n**dim, budget)
    xs = np.arange(1, n + 1, dtype=np.int64)
    if dim == 1:
        return int(xs.sum())
    if dim == 2:
        return _outer_gcd_sum(0, xs, xs)
    total = 0
    idx = [0] * (dim - 2)
    while True:
        g = 0
        for v in idx:
            g = math.gcd(g, v + 1)
        total += _outer_gcd_sum(g, xs, xs)
        p = len(idx) - 1
        while p >= 0:
            idx[p] += 1
            if idx[p] < n:
                break
            idx[p] = 0
            p -= 1
        if p < 0:
            break
    return total


def expected_gcd(dim: int, n: int, budget: int | None = None, method: str = "direct") -> float:
    """Exact mean of gcd over the positive cube {1..n}^dim, returned as a float."""
    if dim < 2:
        raise SpecError("dim must be >= 2")
    if n < 1:
        raise SpecError("n must be >= 1")
    total = positive_cube_gcd_sum(dim, n, budget=budget, method=method)
    return float(Fraction(total, n**dim))


def zeta(s: float) -> float:
    """Riemann zeta for s >= 2, via partial sums with an Euler-Maclaurin tail.

    With N terms the remainder is N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12
    up to O(N^{-s-3}), far below the 1e-10 contract at N = 20000.
    """
    if s < 2:
        raise SpecError("zeta is only supported for s >= 2")
    n = 20000
    total = sum(k ** (-float(s)) for k in range(1, n + 1))
    total += n ** (1 - s) / (s - 1) - 0.5 * n ** (-float(s)) + s * n ** (-s - 1) / 12.0
    return total


@dataclass
class FitReport:
    """Normalized gcd-sum ratios along a radius schedule and their spread."""

    dim: int
    norm: str
    radii: tuple[int, ...]
    sums: tuple[int, ...]
    ratios: tuple[float, ...]
    drift: float
    constant_estimate: float
    theory_constant: float
    log_factor: bool = field(default=False)


def ball_volume_constant(dim: int, norm: str) -> Fraction:
    """Leading coefficient R of |B(n)| = R n^dim + O(n^{dim-1})."""
    if norm == CUBE:
        return Fraction(2**dim)
    return Fraction(2**dim, math.factorial(dim))


def gcd_sum_fit(
    dim: int,
    norm: str,
    radii,
    budget: int | None = None,
    method: str = "direct",
) -> FitReport:
    """Fit gcd sums against R n^2 log n (dim 2) or R n^dim (dim >= 3)."""
    radii = tuple(int(n) for n in radii)
    if len(radii) < 3 or any(a >= b for a, b in zip(radii, radii[1:])):
        raise SpecError("need at least 3 strictly increasing radii")
    if radii[0] < 2:
        raise SpecError("radii must start at 2 or more")
    sums = tuple(gcd_sum(LatticeBallSpec(dim, n, norm), budget=budget, method=method) for n in radii)
    r = float(ball_volume_constant(dim, norm))
    if dim == 2:
        ratios = tuple(s / (n * n * math.log(n)) for s, n in zip(sums, radii))
        theory = r / zeta(2)
        log_factor = True
    else:
        ratios = tuple(s / n**dim for s, n in zip(sums, radii))
        theory = r * zeta(dim - 1) / zeta(dim)
        log_factor = False
    mean = sum(ratios) / len(ratios)
    if mean == 0:
        raise SpecError("degenerate fit: zero ratios")
    drift = (max(ratios) - min(ratios)) / mean
    return FitReport(
        dim=dim,
        norm=norm,
        radii=radii,
        sums=sums,
        ratios=ratios,
        drift=drift,
        constant_estimate=ratios[-1],
        theory_constant=theory,
        log_factor=log_factor,
    )
