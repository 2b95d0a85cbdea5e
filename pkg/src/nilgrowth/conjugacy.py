"""Conjugacy classes, conjugacy growth, sandwich bounds, and commensurability embeddings.

Conjugating alpha c^k shifts k by commutator_form(xbar, alphabar), so the class
of a non-central element is the coset alpha c^k <c^g> with g the gcd of the
weighted pair entries of alphabar; central classes are singletons.  The class
key below encodes exactly that, and an independent orbit-closure oracle must
reproduce its counts on every computed ball.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SpecError, StructuralError
from .gcdsums import LatticeBallSpec, gcd_sum
from .groups import (
    Element,
    GroupSpec,
    Vector,
    abelianize,
    central_pairing_gcd,
    check_element,
    commutator_form,
    conjugate,
    inverse,
    make_group_spec,
    multiply,
    power,
    standard_generators,
)
from .words import BallTable, GeneratingSet, enumerate_ball, standard_generating_set


def class_modulus(spec: GroupSpec, v: Vector) -> int:
    """Positive generator of {commutator_form(u, v) : u}, i.e. gcd_t(w_t i_t, w_t j_t); 0 if central."""
    return central_pairing_gcd(spec, v)


@dataclass(frozen=True)
class ConjClassKey:
    """Conjugacy invariant: abelianization plus c-exponent residue.

    For non-central classes resid is k mod class_modulus(abel); central
    classes are singletons keyed by k itself (modulus 0).
    """

    abel: Vector
    resid: int


def class_key(spec: GroupSpec, g: Element) -> ConjClassKey:
    check_element(spec, g)
    v = g[:-1]
    m = class_modulus(spec, v)
    if m == 0:
        return ConjClassKey(v, g[-1])
    return ConjClassKey(v, g[-1] % m)


class UnionFind:
    """Disjoint sets over hashable items."""

    def __init__(self):
        self.parent = {}
        self.size = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def class_lengths(spec: GroupSpec, table: BallTable) -> dict[ConjClassKey, int]:
    """Minimal word length per class key over the ball."""
    lengths: dict[ConjClassKey, int] = {}
    for g, l in table.entries.items():
        key = class_key(spec, g)
        if lengths.get(key, l + 1) > l:
            lengths[key] = l
    return lengths


def _cumulative_counts(lengths, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for l in lengths:
        if l <= n:
            counts[l] += 1
    out, total = [], 0
    for c in counts:
        total += c
        out.append(total)
    return out


def conjugacy_growth_exact(
    spec: GroupSpec,
    gens: GeneratingSet,
    n: int,
    budget: int | None = None,
    table: BallTable | None = None,
) -> list[int]:
    """c(m) for m = 0..n: distinct class keys meeting the m-ball."""
    if table is None:
        table = enumerate_ball(spec, gens, n, budget=budget)
    elif table.radius < n:
        raise SpecError("supplied ball table is too small")
    return _cumulative_counts(class_lengths(spec, table).values(), n)


def conjugacy_growth_oracle(
    spec: GroupSpec,
    gens: GeneratingSet,
    n: int,
    guard: int = 10,
    budget: int | None = None,
) -> list[int]:
    """Brute-force counts: close the (n+2)-ball under conjugation by generators.

    Independent of class_key: orbits come from composed conjugation only.  The
    +2 margin lets same-class ball members connect through one-step detours
    (a single generator conjugation moves word length by at most 2).
    """
    if n > guard:
        raise SpecError(f"oracle guarded at radius {guard}; asked for {n}")
    table = enumerate_ball(spec, gens, n + 2, budget=budget)
    steps = list(gens.gens) + [inverse(spec, g) for g in gens.gens]
    uf = UnionFind()
    for g in table.entries:
        uf.add(g)
    for g in table.entries:
        for x in steps:
            h = conjugate(spec, x, g)
            if h in table.entries:
                uf.union(g, h)
    part_len: dict = {}
    for g, l in table.entries.items():
        root = uf.find(g)
        if part_len.get(root, l + 1) > l:
            part_len[root] = l
    return _cumulative_counts(part_len.values(), n)


def central_ball_window(n: int) -> tuple[int, int]:
    """Bounds on #\\{k : |c^k| <= n\\} in H_r.

    Lower: commutator words [a^p, b^q] reach every |k| <= floor(n/4)^2 within
    length n.  Upper: a length-L word encloses area at most (L/4)^2.
    """
    lo = 2 * (n // 4) ** 2 + 1
    hi = 2 * (n * n // 16) + 1
    return lo, hi


@dataclass(frozen=True)
class BoundsReport:
    """Sandwich bounds for c_{H_r}(n); central_exact marks a BFS-exact beta_<c>."""

    n: int
    lower: int
    upper: int
    central_exact: bool

    def as_tuple(self) -> tuple[int, int]:
        return (self.lower, self.upper)


def conjugacy_growth_bounds(
    spec: GroupSpec,
    n: int,
    cache_radius: int = 12,
    budget: int | None = None,
) -> BoundsReport:
    """beta_<c>(n) + gcd sums over l1 balls of radius n-2 and n, bracketing c(n)."""
    if spec.s != 0 or spec.r == 0 or any(d != 1 for d in spec.delta):
        raise SpecError("sandwich bounds are proven for H_r only (s=0, trivial D)")
    if n < 0:
        raise SpecError("radius must be nonnegative")
    dim = 2 * spec.r
    inner = gcd_sum(LatticeBallSpec(dim, n - 2, "l1"), method="sieve") if n >= 2 else 0
    outer = gcd_sum(LatticeBallSpec(dim, n, "l1"), method="sieve")
    if n <= cache_radius:
        gens = standard_generating_set(spec)
        table = enumerate_ball(spec, gens, n, budget=budget)
        body = spec.dim
        beta = sum(1 for g in table.entries if all(g[p] == 0 for p in range(body)))
        return BoundsReport(n=n, lower=beta + inner, upper=beta + outer, central_exact=True)
    beta_lo, beta_hi = central_ball_window(n)
    return BoundsReport(n=n, lower=beta_lo + inner, upper=beta_hi + outer, central_exact=False)


@dataclass
class WindowReport:
    """Length-window audit: every class with abel != 0 has length in [|abel|_1, |abel|_1 + 2]."""

    n: int
    classes_checked: int
    violations: list[tuple[ConjClassKey, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def conjugacy_length_window_check(
    spec: GroupSpec,
    n: int,
    budget: int | None = None,
    table: BallTable | None = None,
) -> WindowReport:
    if spec.s != 0 or spec.r == 0 or any(d != 1 for d in spec.delta):
        raise SpecError("length window is proven for H_r only (s=0, trivial D)")
    if table is None:
        table = enumerate_ball(spec, standard_generating_set(spec), n, budget=budget)
    report = WindowReport(n=n, classes_checked=0)
    for key, length in class_lengths(spec, table).items():
        if length > n or all(x == 0 for x in key.abel):
            continue
        report.classes_checked += 1
        l1 = sum(abs(x) for x in key.abel)
        if not l1 <= length <= l1 + 2:
            report.violations.append((key, length, l1))
    return report


def colinear_commute_check(spec: GroupSpec, g: Element, h: Element) -> tuple[bool, bool]:
    """(do g,h commute?, are their abelianizations colinear?) — must agree in H_1."""
    if spec.s != 0 or spec.r != 1:
        raise SpecError("colinearity criterion applies to H_1 only")
    commute = multiply(spec, g, h) == multiply(spec, h, g)
    u, v = abelianize(spec, g), abelianize(spec, h)
    colinear = u[0] * v[1] - u[1] * v[0] == 0
    return commute, colinear


def _product_pair_counts(lengths_a: list[int], lengths_b: list[int], n: int) -> list[int]:
    """Counts of class pairs with length sum <= m, m = 0..n."""
    hist_b = [0] * (n + 1)
    for l in lengths_b:
        if l <= n:
            hist_b[l] += 1
    prefix_b = []
    total = 0
    for c in hist_b:
        total += c
        prefix_b.append(total)
    out = []
    for m in range(n + 1):
        cnt = 0
        for la in lengths_a:
            if la <= m:
                cnt += prefix_b[m - la]
        out.append(cnt)
    return out


@dataclass
class ProductReport:
    n: int
    counts_a: list[int]
    counts_b: list[int]
    counts_product: list[int]

    @property
    def ok(self) -> bool:
        half = (len(self.counts_product) - 1) // 2
        for m in range(half + 1):
            if self.counts_a[m] * self.counts_b[m] > self.counts_product[2 * m]:
                return False
            if self.counts_product[m] > self.counts_a[m] * self.counts_b[m]:
                return False
        return True


def direct_product_inequality_check(
    spec_a: GroupSpec,
    spec_b: GroupSpec,
    n: int,
    budget: int | None = None,
) -> ProductReport:
    """c_A(m) c_B(m) <= c_{AxB}(2m) and c_{AxB}(m) <= c_A(m) c_B(m) for m <= n.

    The product is modeled by pairwise keys: a class of A x B meets the m-ball
    iff its component class lengths sum to <= m (lengths add across factors).
    """
    lengths = []
    counts = []
    for spec in (spec_a, spec_b):
        table = enumerate_ball(spec, standard_generating_set(spec), 2 * n, budget=budget)
        ls = [l for l in class_lengths(spec, table).values() if l <= 2 * n]
        lengths.append(ls)
        counts.append(_cumulative_counts(ls, 2 * n))
    product_counts = _product_pair_counts(lengths[0], lengths[1], 2 * n)
    report = ProductReport(
        n=n, counts_a=counts[0], counts_b=counts[1], counts_product=product_counts
    )
    if not report.ok:
        raise StructuralError("direct product conjugacy inequalities violated")
    return report


@dataclass
class EmbeddingReport:
    """Indices and verification flags for Gamma_1 <= H_D <= Gamma_2."""

    spec: GroupSpec
    gamma: tuple[int, ...]
    index_gamma1: int
    index_gamma1_formula: int
    index_gamma2: int
    index_gamma2_formula: int
    label_invariance_ok: bool
    reduction_ok: bool
    phi_relators_ok: bool
    phi_injective_ok: bool
    phi_homomorphism_ok: bool


def _gamma1_label(spec: GroupSpec, gamma: tuple[int, ...], x: Element):
    """Coset invariant of x Gamma_1: a-coordinates mod gamma_t and k mod delta_{r-1}."""
    dmax = gamma[0]  # delta_{r-1}
    return tuple(x[2 * t] % gamma[t] for t in range(spec.r)) + (x[-1] % dmax,)


def hd_embeddings(spec: GroupSpec, ball_radius: int = 4, budget: int | None = None) -> EmbeddingReport:
    """Verify the two commensurability embeddings around H_D by coset enumeration.

    Gamma_1 = <a_t^{gamma_t}, b_t> with gamma_t = delta_{r-1}/w_t; its index is
    prod(gamma) * delta_{r-1}.  phi: a_t -> d_t^{w_t}, b_t -> e_t embeds H_D in
    H_r with index prod(delta).
    """
    if spec.s != 0 or spec.r == 0:
        raise SpecError("embeddings are defined for H_D (s=0, r >= 1)")
    r = spec.r
    dmax = spec.weights[-1] if r >= 1 else 1  # delta_{r-1}; 1 when r = 1
    gamma = tuple(dmax // w for w in spec.weights)
    index1_formula = dmax
    for g in gamma:
        index1_formula *= g
    index2_formula = 1
    for w in spec.weights:
        index2_formula *= w

    gens = standard_generators(spec)
    gamma1_gens = [power(spec, gens[2 * t], gamma[t]) for t in range(r)]
    gamma1_gens += [gens[2 * t + 1] for t in range(r)]

    table = enumerate_ball(spec, standard_generating_set(spec), ball_radius, budget=budget)

    # label invariance under right multiplication by Gamma_1 generators
    label_ok = True
    for x in table.entries:
        lab = _gamma1_label(spec, gamma, x)
        for y in gamma1_gens:
            for z in (y, inverse(spec, y)):
                if _gamma1_label(spec, gamma, multiply(spec, x, z)) != lab:
                    label_ok = False

    # explicit reduction of each ball element to its canonical coset representative:
    # clear j with b_t, reduce i mod gamma_t with a_t^{gamma_t}, reduce k mod
    # delta_{r-1} with the Gamma_1 commutator [a_t^{gamma_t}, b_t] = c^{dmax}.
    c_gamma1 = (0,) * spec.dim + (dmax,)
    reps = set()
    reduction_ok = True
    for x in table.entries:
        y = x
        for t in range(r):
            y = multiply(spec, y, power(spec, gens[2 * t + 1], -y[2 * t + 1]))
            q = y[2 * t] % gamma[t]
            y = multiply(spec, y, power(spec, gamma1_gens[t], -((y[2 * t] - q) // gamma[t])))
        y = multiply(spec, y, power(spec, c_gamma1, -(y[-1] // dmax)))
        if _gamma1_label(spec, gamma, y) != _gamma1_label(spec, gamma, x):
            reduction_ok = False
        if any(y[2 * t + 1] for t in range(r)) or not (0 <= y[-1] < dmax):
            reduction_ok = False
        if any(not (0 <= y[2 * t] < gamma[t]) for t in range(r)):
            reduction_ok = False
        reps.add(y)
    index1 = len(reps)

    # phi into H_r: coordinates (i_t, j_t, k) -> (w_t i_t, j_t, k)
    hr = make_group_spec(0, r, (1,) * (r - 1))

    def phi(g: Element) -> Element:
        out = []
        for t in range(r):
            out.append(spec.weights[t] * g[2 * t])
            out.append(g[2 * t + 1])
        out.append(g[-1])
        return tuple(out)

    hom_ok = True
    items = list(table.entries)[:400]
    for g in items[::7] or items:
        for h in items[::11] or items:
            if phi(multiply(spec, g, h)) != multiply(hr, phi(g), phi(h)):
                hom_ok = False
    injective_ok = len({phi(g) for g in table.entries}) == len(table.entries)

    hr_gens = standard_generators(hr)
    relators_ok = True
    for t in range(r):
        img_a, img_b = phi(gens[2 * t]), phi(gens[2 * t + 1])
        com = multiply(hr, multiply(hr, img_a, img_b), multiply(hr, inverse(hr, img_a), inverse(hr, img_b)))
        if com != (0,) * hr.dim + (spec.weights[t],):
            relators_ok = False
        for u in range(t + 1, r):
            for p in (img_a, img_b):
                for q in (phi(gens[2 * u]), phi(gens[2 * u + 1])):
                    if multiply(hr, p, q) != multiply(hr, q, p):
                        relators_ok = False

    # index of phi(H_D) in Gamma_2 = H_r: labels are a-coordinates mod w_t
    hr_table = enumerate_ball(hr, GeneratingSet(hr_gens), ball_radius, budget=budget)
    labels2 = {tuple(x[2 * t] % spec.weights[t] for t in range(r)) for x in hr_table.entries}
    index2 = len(labels2)

    report = EmbeddingReport(
        spec=spec,
        gamma=gamma,
        index_gamma1=index1,
        index_gamma1_formula=index1_formula,
        index_gamma2=index2,
        index_gamma2_formula=index2_formula,
        label_invariance_ok=label_ok,
        reduction_ok=reduction_ok,
        phi_relators_ok=relators_ok,
        phi_injective_ok=injective_ok,
        phi_homomorphism_ok=hom_ok,
    )
    if index1 != index1_formula or index2 != index2_formula:
        raise StructuralError(
            f"embedding index mismatch: Gamma_1 {index1} vs {index1_formula}, "
            f"Gamma_2 {index2} vs {index2_formula}"
        )
    if not (label_ok and reduction_ok and relators_ok and injective_ok and hom_ok):
        raise StructuralError("embedding verification failed")
    return report


@dataclass
class DominationReport:
    """Smallest lambda with c_sub(n) <= lambda c_amb(lambda n) + lambda on computed radii."""

    radius: int
    counts_sub: list[int]
    counts_ambient: list[int]
    fitted_lambda: int | None


def subgroup_domination_report(
    spec: GroupSpec,
    n: int,
    lam_cap: int = 20,
    budget: int | None = None,
) -> DominationReport:
    """Exploratory check that c_{Gamma_1} is dominated by c_{H_D}.

    Gamma_1 is isomorphic to H_r (all its pair commutators hit the same power
    of c), so its intrinsic counts are those of H_r.
    """
    if spec.s != 0 or spec.r == 0:
        raise SpecError("domination report is defined for H_D")
    hr = make_group_spec(0, spec.r, (1,) * (spec.r - 1))
    lam_max = min(lam_cap, 2)  # ambient ball at radius lam*n; degree-(2r+2) balls grow fast
    sub_counts = conjugacy_growth_exact(hr, standard_generating_set(hr), n, budget=budget)
    amb_counts = conjugacy_growth_exact(
        spec, standard_generating_set(spec), lam_max * n, budget=budget
    )
    fitted = None
    for lam in range(1, lam_max + 1):
        if all(sub_counts[m] <= lam * amb_counts[min(lam * m, len(amb_counts) - 1)] + lam for m in range(n + 1)):
            fitted = lam
            break
    return DominationReport(
        radius=n, counts_sub=sub_counts, counts_ambient=amb_counts, fitted_lambda=fitted
    )
