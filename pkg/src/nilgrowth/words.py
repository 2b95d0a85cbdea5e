"""Word-metric balls, word lengths, and growth-exponent fits.

Balls are enumerated by exact breadth-first search over the Cayley graph of a
finite generating set (inverses added automatically).  Lengths are stored in a
hash map keyed by the full coordinate tuple; coordinates in a radius-n ball
stay small (|i|, |j| <= n, |k| = O(n^2)), so plain Python integers suffice.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetError, SpecError
from .groups import Element, GroupSpec, _inverse, standard_generators

DEFAULT_BUDGET = 10**8


def resolve_budget(budget: int | None) -> int:
    """Explicit budget, else NILGROWTH_BUDGET from the environment, else 10^8 elements."""
    if budget is not None:
        return budget
    return int(os.environ.get("NILGROWTH_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class GeneratingSet:
    """A finite generating set; inverses are implicit."""

    gens: tuple[Element, ...]
    label: str = "custom"

    def __post_init__(self):
        if not self.gens:
            raise SpecError("generating set must be non-empty")


def standard_generating_set(spec: GroupSpec) -> GeneratingSet:
    """The s+2r unit-coordinate generators z_1..z_s, a_1, b_1, ..., a_r, b_r."""
    return GeneratingSet(standard_generators(spec), label="standard")


@dataclass
class BallTable:
    """Exact word lengths for every element of the radius-n ball."""

    spec: GroupSpec
    gens: GeneratingSet
    radius: int
    entries: dict[Element, int]
    sphere_sizes: list[int]

    def ball_sizes(self) -> list[int]:
        """Cumulative counts beta(m) for m = 0..radius."""
        out = []
        total = 0
        for c in self.sphere_sizes:
            total += c
            out.append(total)
        return out

    def sphere(self, length: int) -> list[Element]:
        return sorted(g for g, l in self.entries.items() if l == length)


def _step_set(spec: GroupSpec, gens: GeneratingSet) -> list[Element]:
    """Generators and their inverses, deduplicated, identity dropped."""
    steps: dict[Element, None] = {}
    e = spec.identity()
    for g in gens.gens:
        if len(g) != spec.ncoords:
            raise SpecError("generator does not match spec")
        for h in (g, _inverse(spec, g)):
            if h != e:
                steps[h] = None
    return list(steps)


def _step_plan(spec: GroupSpec, steps: list[Element]):
    """Per step: (coordinate tuple, k-correction terms) for the in-loop product.

    g*x adds x's coordinates and corrects k by -sum_t w_t * j_t(g) * i_t(x);
    only the t with i_t(x) != 0 contribute, recorded as (b-slot index, -w_t i_t(x)).
    """
    s = spec.s
    plan = []
    for x in steps:
        terms = tuple(
            (s + 2 * t + 1, -w * x[s + 2 * t])
            for t, w in enumerate(spec.weights)
            if x[s + 2 * t]
        )
        plan.append((x, terms))
    return plan


def _expand(plan, chunk: list[Element]) -> list[Element]:
    """All one-step products g*x for g in chunk, in deterministic order."""
    out = []
    for g in chunk:
        gk = g[-1]
        body = g[:-1]
        for x, terms in plan:
            k = gk + x[-1]
            for idx, coeff in terms:
                k += coeff * g[idx]
            out.append(tuple(a + b for a, b in zip(body, x)) + (k,))
    return out


def enumerate_ball(
    spec: GroupSpec,
    gens: GeneratingSet,
    n: int,
    budget: int | None = None,
    threads: int = 1,
) -> BallTable:
    """Exact BFS ball of radius n; raises BudgetError past the element cap.

    The parallel path splits each frontier level into chunks and merges them in
    chunk order; with the per-level sort this is bit-identical to sequential.
    """
    if n < 0:
        raise SpecError("radius must be nonnegative")
    cap = resolve_budget(budget)
    plan = _step_plan(spec, _step_set(spec, gens))
    entries: dict[Element, int] = {spec.identity(): 0}
    sphere_sizes = [1]
    frontier = [spec.identity()]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for level in range(1, n + 1):
            if pool is not None and len(frontier) >= 4 * threads:
                size = -(-len(frontier) // threads)
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                parts = pool.map(lambda ch: _expand(plan, ch), chunks)
                candidates = [g for part in parts for g in part]
            else:
                candidates = _expand(plan, frontier)
            fresh = {g for g in candidates if g not in entries}
            if len(entries) + len(fresh) > cap:
                raise BudgetError(
                    f"ball of radius {level} needs more than {cap} stored elements",
                    needed=len(entries) + len(fresh),
                    budget=cap,
                )
            frontier = sorted(fresh)
            for g in frontier:
                entries[g] = level
            sphere_sizes.append(len(frontier))
            if not frontier:
                break
        while len(sphere_sizes) < n + 1:
            sphere_sizes.append(0)
    finally:
        if pool is not None:
            pool.shutdown()
    return BallTable(spec=spec, gens=gens, radius=n, entries=entries, sphere_sizes=sphere_sizes)


def word_length(
    spec: GroupSpec,
    g: Element,
    gens: GeneratingSet,
    cutoff: int,
    budget: int | None = None,
) -> int | None:
    """Exact word length if <= cutoff, else None."""
    if cutoff < 0:
        raise SpecError("cutoff must be nonnegative")
    if len(g) != spec.ncoords:
        raise SpecError("element does not match spec")
    cap = resolve_budget(budget)
    plan = _step_plan(spec, _step_set(spec, gens))
    seen: set[Element] = {spec.identity()}
    if g == spec.identity():
        return 0
    frontier = [spec.identity()]
    for level in range(1, cutoff + 1):
        fresh = {h for h in _expand(plan, frontier) if h not in seen}
        if g in fresh:
            return level
        if len(seen) + len(fresh) > cap:
            raise BudgetError(
                f"length search at radius {level} exceeds {cap} stored elements",
                needed=len(seen) + len(fresh),
                budget=cap,
            )
        seen.update(fresh)
        frontier = list(fresh)
        if not frontier:
            break
    return None


def central_growth(
    spec: GroupSpec,
    gens: GeneratingSet,
    n: int,
    budget: int | None = None,
    table: BallTable | None = None,
) -> list[int]:
    """beta_<c>(m) for m = 0..n: how many c^k lie in the m-ball."""
    if table is None:
        table = enumerate_ball(spec, gens, n, budget=budget)
    elif table.radius < n:
        raise SpecError("supplied ball table is too small")
    counts = [0] * (n + 1)
    body = spec.dim
    for g, l in table.entries.items():
        if l <= n and all(g[p] == 0 for p in range(body)):
            counts[l] += 1
    out = []
    total = 0
    for c in counts:
        total += c
        out.append(total)
    return out


def bass_guivarch_exponent(spec: GroupSpec) -> int:
    """Polynomial growth degree: s + 2r + 2, or s when r = 0 (no central c)."""
    if spec.r == 0:
        return spec.s
    return spec.s + 2 * spec.r + 2


def growth_exponent_fit(values, window: tuple[int, int]) -> float:
    """Least-squares slope of log values[n] vs log n for n in the inclusive window."""
    lo, hi = window
    if hi - lo + 1 < 3:
        raise SpecError("fit window needs at least 3 points")
    if lo < 1 or hi >= len(values):
        raise SpecError("fit window out of range")
    xs, ys = [], []
    for m in range(lo, hi + 1):
        if values[m] <= 0:
            raise SpecError("values must be positive on the fit window")
        xs.append(math.log(m))
        ys.append(math.log(values[m]))
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def check_generates(spec: GroupSpec, gens: GeneratingSet, radius: int, budget: int | None = None) -> bool:
    """Empirical generation check: the radius-ball contains every standard generator."""
    table = enumerate_ball(spec, gens, radius, budget=budget)
    return all(g in table.entries for g in standard_generators(spec))
