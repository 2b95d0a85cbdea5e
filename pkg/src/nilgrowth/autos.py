"""Automorphisms (M, kappa), twisted conjugacy growth, and finite cyclic extensions.

An automorphism is determined by an integer matrix M with M Omega M^T =
eps * Omega (eps = +/-1) and a shift vector kappa: the generator x_p maps to
lift(row_p M) c^{kappa_p}, and c maps to c^eps.  The action on a general
element is realized by multiplying generator images in normal-form order, so
the quadratic correction gamma is produced by the group law itself and never
evaluated symbolically.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iter_product
from math import gcd

from .errors import SpecError, StructuralError
from .groups import (
    Element,
    GroupSpec,
    Vector,
    _inverse,
    _multiply,
    check_element,
    multiply,
    omega_apply,
    omega_form,
    power,
    standard_generators,
)
from .intlinalg import (
    Matrix,
    hermite_normal_form,
    hnf_reduce,
    identity_matrix,
    mat_inverse,
    mat_mul,
    mat_neg,
    mat_sub,
    mat_transpose,
    rank,
    row_kernel_vector,
    vec_mat,
)
from .conjugacy import UnionFind, _cumulative_counts
from .words import BallTable, GeneratingSet, enumerate_ball


def check_in_M(spec: GroupSpec, m: Matrix) -> int | None:
    """eps with M Omega M^T = eps Omega, or None if neither sign works."""
    dim = spec.dim
    if len(m) != dim or any(len(row) != dim for row in m):
        raise SpecError(f"matrix must be {dim}x{dim}")
    omega = omega_form(spec)
    lhs = mat_mul(mat_mul(m, omega), mat_transpose(m))
    if lhs == omega:
        return 1
    if lhs == mat_neg(omega):
        return -1
    return None


@dataclass(frozen=True)
class Automorphism:
    """f = kappa o phi_M; images holds the precomputed generator images."""

    m: Matrix
    kappa: tuple[int, ...]
    eps: int
    images: tuple[Element, ...] = field(repr=False)

    def to_json_dict(self) -> dict:
        return {"M": [list(r) for r in self.m], "kappa": list(self.kappa)}


def make_automorphism(spec: GroupSpec, m, kappa=None) -> Automorphism:
    m = tuple(tuple(int(x) for x in row) for row in m)
    kappa = tuple(int(x) for x in kappa) if kappa is not None else (0,) * spec.dim
    if len(kappa) != spec.dim:
        raise SpecError(f"kappa must have {spec.dim} entries")
    eps = check_in_M(spec, m)
    if eps is None:
        raise SpecError("matrix does not preserve the commutator form up to sign")
    # row_p of M is the abelianized image of generator p; lift and append c^kappa_p
    images = tuple(tuple(row) + (k,) for row, k in zip(m, kappa))
    return Automorphism(m=m, kappa=kappa, eps=eps, images=images)


def identity_automorphism(spec: GroupSpec) -> Automorphism:
    return make_automorphism(spec, identity_matrix(spec.dim))


def swap_automorphism(spec: GroupSpec) -> Automorphism:
    """a_t <-> b_t on every pair (eps = -1); needs s = 0 and symmetric weights."""
    if spec.s != 0:
        raise SpecError("swap automorphism is defined for H_D")
    dim = spec.dim
    m = [[0] * dim for _ in range(dim)]
    for t in range(spec.r):
        m[2 * t][2 * t + 1] = 1
        m[2 * t + 1][2 * t] = 1
    return make_automorphism(spec, m)


def automorphism_from_json_dict(spec: GroupSpec, data: dict) -> Automorphism:
    try:
        return make_automorphism(spec, data["M"], data.get("kappa"))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad automorphism payload: {exc}") from exc


def apply_automorphism(spec: GroupSpec, f: Automorphism, g: Element) -> Element:
    """f(g) as the normal-form product of generator images, times c^{eps k}."""
    check_element(spec, g)
    acc = spec.identity()
    for p in range(spec.dim):
        if g[p]:
            acc = _multiply(spec, acc, power(spec, f.images[p], g[p]))
    if g[-1]:
        acc = acc[:-1] + (acc[-1] + f.eps * g[-1],)
    return acc


def gamma_sample(spec: GroupSpec, f: Automorphism, v: Vector) -> int:
    """The quadratic correction gamma(v): c-exponent of f(lift(v)) minus kappa terms.

    Defined by f(lift(v)) = lift(vM) c^{gamma(v) + <kappa, v>}.
    """
    img = apply_automorphism(spec, f, tuple(v) + (0,))
    return img[-1] - sum(k * x for k, x in zip(f.kappa, v))


def compose_automorphisms(spec: GroupSpec, f: Automorphism, g: Automorphism) -> Automorphism:
    """f o g (apply g first)."""
    gens = standard_generators(spec)
    m_rows = []
    kappa = []
    for x in gens:
        img = apply_automorphism(spec, f, apply_automorphism(spec, g, x))
        m_rows.append(img[:-1])
        kappa.append(img[-1])
    comp = make_automorphism(spec, tuple(m_rows), tuple(kappa))
    if comp.eps != f.eps * g.eps:
        raise StructuralError("composite sign mismatch")
    return comp


def automorphism_power(spec: GroupSpec, f: Automorphism, i: int) -> Automorphism:
    if i < 0:
        raise SpecError("nonnegative powers only")
    acc = identity_automorphism(spec)
    for _ in range(i):
        acc = compose_automorphisms(spec, f, acc)
    return acc


def automorphism_order(spec: GroupSpec, f: Automorphism, bound: int = 12) -> int | None:
    """Smallest m <= bound with f^m fixing every generator, else None."""
    gens = standard_generators(spec)
    current = list(gens)
    for m in range(1, bound + 1):
        current = [apply_automorphism(spec, f, x) for x in current]
        if all(x == g for x, g in zip(current, gens)):
            return m
    return None


def inverse_automorphism(spec: GroupSpec, f: Automorphism) -> Automorphism:
    """The (M^{-1}, kappa') automorphism undoing f on every generator."""
    minv = mat_inverse(f.m)
    eps_inv = check_in_M(spec, minv)
    if eps_inv is None:
        raise StructuralError("inverse matrix left the matrix group")
    # Solve f'(f(gen_p)) = gen_p: with f' = kappa' o phi_{M^{-1}},
    # gamma'(row_p M) + <kappa', row_p M> + eps' kappa_p = 0, i.e. M kappa' = rhs.
    bare = make_automorphism(spec, minv)
    rhs = []
    for p in range(spec.dim):
        v = f.m[p]
        g0 = apply_automorphism(spec, bare, tuple(v) + (0,))[-1]
        rhs.append(-g0 - eps_inv * f.kappa[p])
    kappa_inv = vec_mat(tuple(rhs), mat_transpose(minv))
    return make_automorphism(spec, minv, kappa_inv)


@dataclass
class VerifyReport:
    trials: int
    homomorphism_ok: bool
    inverse_ok: bool
    central_ok: bool
    relators_ok: bool

    @property
    def ok(self) -> bool:
        return self.homomorphism_ok and self.inverse_ok and self.central_ok and self.relators_ok


def verify_automorphism(spec: GroupSpec, f: Automorphism, trials: int = 1000, seed: int = 0) -> VerifyReport:
    """Homomorphism fuzz, inverse round-trip, f(c) = c^eps, relator preservation."""
    rng = random.Random(seed)
    hom_ok = True
    for _ in range(trials):
        g = tuple(rng.randint(-9, 9) for _ in range(spec.ncoords))
        h = tuple(rng.randint(-9, 9) for _ in range(spec.ncoords))
        if apply_automorphism(spec, f, multiply(spec, g, h)) != multiply(
            spec, apply_automorphism(spec, f, g), apply_automorphism(spec, f, h)
        ):
            hom_ok = False
            break
    finv = inverse_automorphism(spec, f)
    gens = standard_generators(spec)
    inverse_ok = all(
        apply_automorphism(spec, finv, apply_automorphism(spec, f, x)) == x
        and apply_automorphism(spec, f, apply_automorphism(spec, finv, x)) == x
        for x in gens
    )
    c1 = (0,) * spec.dim + (1,)
    central_ok = apply_automorphism(spec, f, c1) == (0,) * spec.dim + (f.eps,)
    relators_ok = True
    s = spec.s
    for t in range(spec.r):
        a_t, b_t = gens[s + 2 * t], gens[s + 2 * t + 1]
        img = apply_automorphism(
            spec,
            f,
            _multiply(spec, _multiply(spec, _multiply(spec, a_t, b_t), _inverse(spec, a_t)), _inverse(spec, b_t)),
        )
        if img != (0,) * spec.dim + (f.eps * spec.weights[t],):
            relators_ok = False
        for u in range(spec.r):
            if u == t:
                continue
            b_u = gens[s + 2 * u + 1]
            com = _multiply(
                spec, _multiply(spec, _multiply(spec, a_t, b_u), _inverse(spec, a_t)), _inverse(spec, b_u)
            )
            if apply_automorphism(spec, f, com) != spec.identity():
                relators_ok = False
    report = VerifyReport(
        trials=trials,
        homomorphism_ok=hom_ok,
        inverse_ok=inverse_ok,
        central_ok=central_ok,
        relators_ok=relators_ok,
    )
    if not report.ok:
        raise StructuralError(f"automorphism verification failed: {report}")
    return report


def twisted_modulus(spec: GroupSpec, f: Automorphism, vbar: Vector) -> int:
    """gcd of the twisted shift set at abelianized point vbar, for M = I, eps = +1.

    Conjugating twisted by x shifts the c-exponent by <xbar, Omega vbar^T + kappa>,
    so the class modulus is the gcd of the entries of Omega vbar^T + kappa.
    """
    ov = omega_apply(spec, vbar)
    g = 0
    for a, b in zip(ov, f.kappa):
        g = gcd(g, abs(a + b))
    return g


def _twisted_partition(
    spec: GroupSpec,
    gens: GeneratingSet,
    f: Automorphism,
    n: int,
    conjugator_radius: int,
    budget: int | None = None,
    table: BallTable | None = None,
):
    """Union-find parts of the n-ball under h -> f(x) h x^{-1}, x in the conjugator ball.

    Conjugators are grouped by abelianization: x = lift(xbar) c^k gives
    f(x) h x^{-1} = f(lift) h lift^{-1} c^{(eps-1)k}, so only the k-set per
    xbar matters.  Images are matched against the per-fiber k-sets of the ball.
    """
    if table is None:
        table = enumerate_ball(spec, gens, n, budget=budget)
    conj_table = enumerate_ball(spec, gens, conjugator_radius, budget=budget)
    shifts_by_abel: dict[Vector, set[int]] = {}
    for x in conj_table.entries:
        shifts_by_abel.setdefault(x[:-1], set()).add((f.eps - 1) * x[-1])
    fibers: dict[Vector, list[int]] = {}
    for h in table.entries:
        fibers.setdefault(h[:-1], []).append(h[-1])
    nodes = list(table.entries)
    uf = UnionFind()
    for h in nodes:
        uf.add(h)
    for xbar, shift_set in shifts_by_abel.items():
        lift0 = xbar + (0,)
        flift = apply_automorphism(spec, f, lift0)
        linv = _inverse(spec, lift0)
        for h in nodes:
            base = _multiply(spec, _multiply(spec, flift, h), linv)
            fib = fibers.get(base[:-1])
            if fib is None:
                continue
            bk = base[-1]
            for kk in fib:
                if kk - bk in shift_set:
                    uf.union(h, base[:-1] + (kk,))
    return table, uf


def _partition_counts(table: BallTable, uf: UnionFind, n: int) -> list[int]:
    part_len: dict = {}
    for g, l in table.entries.items():
        root = uf.find(g)
        if part_len.get(root, l + 1) > l:
            part_len[root] = l
    return _cumulative_counts(part_len.values(), n)


@dataclass
class TwistedGrowthResult:
    """Twisted class counts; `counts` comes from the deeper (radius + 2) recheck run."""

    counts: list[int]
    stable: bool
    conjugator_radius: int
    first_pass_counts: list[int]
    part_of: dict[Element, Element] = field(repr=False, default_factory=dict)


def twisted_growth_bruteforce(
    spec: GroupSpec,
    gens: GeneratingSet,
    f: Automorphism,
    n: int,
    conjugator_radius: int | None = None,
    budget: int | None = None,
) -> TwistedGrowthResult:
    """Orbit-closure twisted counts; recomputed at conjugator_radius + 2 for stability."""
    if n < 0:
        raise SpecError("radius must be nonnegative")
    radius = conjugator_radius if conjugator_radius is not None else n + 2
    table, uf = _twisted_partition(spec, gens, f, n, radius, budget=budget)
    counts = _partition_counts(table, uf, n)
    table2, uf2 = _twisted_partition(spec, gens, f, n, radius + 2, budget=budget, table=table)
    recheck = _partition_counts(table2, uf2, n)
    part_of = {g: uf2.find(g) for g in table.entries}
    return TwistedGrowthResult(
        counts=recheck,
        stable=counts == recheck,
        conjugator_radius=radius,
        first_pass_counts=counts,
        part_of=part_of,
    )


def twisted_growth_structural(
    spec: GroupSpec,
    f: Automorphism,
    n: int,
    gens: GeneratingSet | None = None,
    budget: int | None = None,
    table: BallTable | None = None,
) -> list[int]:
    """Exact twisted counts for M = I, eps = +1 via the shifted-gcd key.

    Key = (hbar, k mod twisted_modulus(hbar)); modulus 0 marks singleton fibers.
    With kappa = 0 this is exactly the ordinary conjugacy count structure.
    """
    if f.m != identity_matrix(spec.dim) or f.eps != 1:
        raise SpecError("structural twisted counts need M = I and eps = +1")
    if table is None:
        if gens is None:
            raise SpecError("need gens or a precomputed ball table")
        table = enumerate_ball(spec, gens, n, budget=budget)
    lengths: dict = {}
    for g, l in table.entries.items():
        vbar = g[:-1]
        m = twisted_modulus(spec, f, vbar)
        key = (vbar, g[-1] % m) if m else (vbar, g[-1])
        if lengths.get(key, l + 1) > l:
            lengths[key] = l
    return _cumulative_counts(lengths.values(), n)


def classes_per_abelianized_point(result: TwistedGrowthResult) -> dict[Vector, int]:
    """How many twisted classes touch each abelianized point of the ball."""
    seen: dict[Vector, set] = {}
    for g, root in result.part_of.items():
        seen.setdefault(g[:-1], set()).add(root)
    return {v: len(roots) for v, roots in seen.items()}


@dataclass
class CaseReport:
    label: str
    eps: int
    rank_m_minus_i: int
    kernel_vector: tuple[int, ...] | None


def rank_case_classifier(spec: GroupSpec, f: Automorphism) -> CaseReport:
    """Case split of the finite-extension analysis: eps and rank(M - I)."""
    m_minus_i = mat_sub(f.m, identity_matrix(spec.dim))
    rk = rank(m_minus_i)
    if f.eps == 1 and rk == 0 and all(k == 0 for k in f.kappa):
        return CaseReport("identity", f.eps, rk, None)
    if f.eps == -1:
        return CaseReport("eps_minus_one", f.eps, rk, None)
    if rk >= 2:
        return CaseReport("rank_ge_2", f.eps, rk, None)
    if rk == 1:
        return CaseReport("rank_1", f.eps, rk, row_kernel_vector(m_minus_i))
    return CaseReport("rank_0", f.eps, rk, None)


def extension_conjugacy_growth(
    spec: GroupSpec,
    gens: GeneratingSet,
    f: Automorphism,
    order: int,
    n: int,
    conjugator_radius: int | None = None,
    budget: int | None = None,
) -> list[int]:
    """Conjugacy growth of G = H x|_phi Z/order with gens + t, |t^i h| = min(i, order-i) + |h|.

    Coset i carries the phi^i-twisted partition of H; conjugation by t then
    merges the parts of h and phi(h).
    """
    if order < 1:
        raise SpecError("order must be >= 1")
    gens_std = standard_generators(spec)
    cur = list(gens_std)
    for _ in range(order):
        cur = [apply_automorphism(spec, f, x) for x in cur]
    if any(x != g for x, g in zip(cur, gens_std)):
        raise SpecError(f"automorphism does not have order dividing {order}")
    totals = [0] * (n + 1)
    for i in range(order):
        ct = min(i, order - i)
        ni = n - ct
        if ni < 0:
            continue
        phi_i = automorphism_power(spec, f, i)
        radius = conjugator_radius if conjugator_radius is not None else ni + 2
        table, uf = _twisted_partition(spec, gens, phi_i, ni, radius, budget=budget)
        # merge under conjugation by t: t (t^i h) t^{-1} = t^i f(h)
        for h in table.entries:
            fh = apply_automorphism(spec, f, h)
            if fh in table.entries:
                uf.union(h, fh)
        part_len: dict = {}
        for g, l in table.entries.items():
            root = uf.find(g)
            if part_len.get(root, l + 1) > l:
                part_len[root] = l
        for l in part_len.values():
            if ct + l <= n:
                totals[ct + l] += 1
    out, acc = [], 0
    for c in totals:
        acc += c
        out.append(acc)
    return out


def coset_count(sublattice_basis, dim: int, n: int) -> int:
    """Distinct cosets of the row span meeting the cubical n-ball in Z^dim."""
    basis = tuple(tuple(int(x) for x in row) for row in sublattice_basis)
    if any(len(row) != dim for row in basis):
        raise SpecError("basis rows must have length dim")
    if basis and rank(basis) != len(basis):
        raise SpecError("basis rows must be independent")
    hnf = hermite_normal_form(basis) if basis else ()
    reps = set()
    for point in iter_product(range(-n, n + 1), repeat=dim):
        reps.add(hnf_reduce(hnf, point))
    return len(reps)
