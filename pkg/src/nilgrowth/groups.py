"""Mal'cev coordinate arithmetic for Z^s x H_D.

H_D is the higher Heisenberg group with generators a_1, b_1, ..., a_r, b_r
and central c, subject to [a_t, b_t] = c^{w_t} and all other generator pairs
commuting.  The weights are w_1 = 1 and w_t = delta_{t-1} for t >= 2, where
D = (delta_1, ..., delta_{r-1}) is a chain of positive integers with
delta_t | delta_{t+1}.  The free abelian factor Z^s contributes central
generators z_1, ..., z_s.

An element is a flat tuple of s + 2r + 1 integers

    (l_1, ..., l_s, i_1, j_1, ..., i_r, j_r, k)

recording the normal form z_1^{l_1}...z_s^{l_s} a_1^{i_1} b_1^{j_1} ...
a_r^{i_r} b_r^{j_r} c^k.  Group operations only ever touch k through the
weighted cross terms, so all coordinate arithmetic below is exact integer
arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import SpecError

Element = tuple[int, ...]
Vector = tuple[int, ...]

NAMED_SPECS = {
    "H1": (0, 1, ()),
    "H2": (0, 2, (1,)),
    "H3": (0, 3, (1, 1)),
    "ZxH1": (1, 1, ()),
    "HD2": (0, 2, (2,)),
}


@dataclass(frozen=True)
class GroupSpec:
    """Parameters (s, r, delta) of Z^s x H_D, with derived weights."""

    s: int
    r: int
    delta: tuple[int, ...]
    weights: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.s < 0 or self.r < 0:
            raise SpecError("s and r must be nonnegative")
        if self.s == 0 and self.r == 0:
            raise SpecError("trivial group: need s > 0 or r > 0")
        if len(self.delta) != max(self.r - 1, 0):
            raise SpecError(f"delta must have r-1 = {max(self.r - 1, 0)} entries")
        for d in self.delta:
            if d < 1:
                raise SpecError("delta entries must be positive")
        for lo, hi in zip(self.delta, self.delta[1:]):
            if hi % lo != 0:
                raise SpecError("delta chain must satisfy delta_t | delta_{t+1}")
        # w_1 = 1, w_t = delta_{t-1}; the chain condition makes w_t | w_{t+1}.
        object.__setattr__(self, "weights", (1,) + self.delta if self.r else ())

    @property
    def dim(self) -> int:
        """Number of non-central-c coordinates, s + 2r."""
        return self.s + 2 * self.r

    @property
    def ncoords(self) -> int:
        """Full coordinate count including the c exponent."""
        return self.s + 2 * self.r + 1

    def identity(self) -> Element:
        return (0,) * self.ncoords

    def to_json_dict(self) -> dict:
        return {"s": self.s, "r": self.r, "delta": list(self.delta)}


def make_group_spec(s: int, r: int, delta: tuple[int, ...] | list[int] = ()) -> GroupSpec:
    """Validated GroupSpec; r = 0 gives the degenerate pure Z^s case."""
    return GroupSpec(s, r, tuple(delta))


def spec_from_json_dict(data: dict) -> GroupSpec:
    try:
        return make_group_spec(int(data["s"]), int(data["r"]), [int(d) for d in data["delta"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad group spec payload: {exc}") from exc


def named_spec(name: str) -> GroupSpec:
    if name not in NAMED_SPECS:
        raise SpecError(f"unknown named spec {name!r}; known: {sorted(NAMED_SPECS)}")
    s, r, delta = NAMED_SPECS[name]
    return make_group_spec(s, r, delta)


def check_element(spec: GroupSpec, g: Element) -> Element:
    if len(g) != spec.ncoords:
        raise SpecError(f"element has {len(g)} coordinates, spec needs {spec.ncoords}")
    return g


def element_to_json_dict(spec: GroupSpec, g: Element) -> dict:
    check_element(spec, g)
    s, r = spec.s, spec.r
    return {
        "z": list(g[:s]),
        "ab": [[g[s + 2 * t], g[s + 2 * t + 1]] for t in range(r)],
        "k": g[-1],
    }


def element_from_json_dict(spec: GroupSpec, data: dict) -> Element:
    try:
        z = [int(x) for x in data["z"]]
        ab = [(int(i), int(j)) for i, j in data["ab"]]
        k = int(data["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad element payload: {exc}") from exc
    if len(z) != spec.s or len(ab) != spec.r:
        raise SpecError("element payload shape does not match spec")
    flat = list(z)
    for i, j in ab:
        flat.extend((i, j))
    flat.append(k)
    return tuple(flat)


def multiply(spec: GroupSpec, g: Element, h: Element) -> Element:
    """Product gh in normal form.

    All z/a/b coordinates add; the c exponent picks up the cross term
    -sum_t w_t * j_t(g) * i_t(h) from commuting h's a-letters past g's
    b-letters.
    """
    check_element(spec, g)
    check_element(spec, h)
    return _multiply(spec, g, h)


def _multiply(spec: GroupSpec, g: Element, h: Element) -> Element:
    s = spec.s
    out = [x + y for x, y in zip(g, h)]
    k = g[-1] + h[-1]
    for t, w in enumerate(spec.weights):
        k -= w * g[s + 2 * t + 1] * h[s + 2 * t]
    out[-1] = k
    return tuple(out)


def inverse(spec: GroupSpec, g: Element) -> Element:
    """Inverse; the c exponent needs -k - sum_t w_t i_t j_t to cancel the cross term."""
    check_element(spec, g)
    return _inverse(spec, g)


def _inverse(spec: GroupSpec, g: Element) -> Element:
    s = spec.s
    out = [-x for x in g]
    k = -g[-1]
    for t, w in enumerate(spec.weights):
        k -= w * g[s + 2 * t] * g[s + 2 * t + 1]
    out[-1] = k
    return tuple(out)


def power(spec: GroupSpec, g: Element, m: int) -> Element:
    """g^m for any integer m, via the closed form k_m = m k - C(m,2) sum_t w_t i_t j_t."""
    check_element(spec, g)
    s = spec.s
    q = 0
    for t, w in enumerate(spec.weights):
        q += w * g[s + 2 * t] * g[s + 2 * t + 1]
    out = [m * x for x in g]
    out[-1] = m * g[-1] - (m * (m - 1) // 2) * q
    return tuple(out)


def commutator(spec: GroupSpec, g: Element, h: Element) -> Element:
    """[g, h] = g h g^-1 h^-1, computed by composition (not the bilinear form)."""
    gh = multiply(spec, g, h)
    return _multiply(spec, _multiply(spec, gh, _inverse(spec, g)), _inverse(spec, h))


def conjugate(spec: GroupSpec, x: Element, g: Element) -> Element:
    """x g x^-1, computed by composition."""
    return _multiply(spec, multiply(spec, x, g), _inverse(spec, x))


def abelianize(spec: GroupSpec, g: Element) -> Vector:
    """Image in Z^{s+2r}: drop the c coordinate."""
    check_element(spec, g)
    return g[:-1]


def canonical_lift(spec: GroupSpec, v: Vector) -> Element:
    """The section v -> (v, 0) of abelianize."""
    if len(v) != spec.dim:
        raise SpecError(f"vector has {len(v)} coordinates, expected {spec.dim}")
    return tuple(v) + (0,)


def central_element(spec: GroupSpec, k: int) -> Element:
    """c^k."""
    return (0,) * spec.dim + (k,)


def is_central(spec: GroupSpec, g: Element) -> bool:
    """True iff g commutes with everything, i.e. all a/b coordinates vanish."""
    check_element(spec, g)
    s = spec.s
    return all(x == 0 for x in g[s:-1])


def omega_form(spec: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Skew matrix of the commutator pairing on Z^{s+2r}.

    Zero on the s block; per Heisenberg pair t a 2x2 block w_t * [[0, 1], [-1, 0]].
    """
    n = spec.dim
    mat = [[0] * n for _ in range(n)]
    s = spec.s
    for t, w in enumerate(spec.weights):
        mat[s + 2 * t][s + 2 * t + 1] = w
        mat[s + 2 * t + 1][s + 2 * t] = -w
    return tuple(tuple(row) for row in mat)


def commutator_form(spec: GroupSpec, u: Vector, v: Vector) -> int:
    """u Omega v^T = sum_t w_t (u_{a_t} v_{b_t} - u_{b_t} v_{a_t})."""
    if len(u) != spec.dim or len(v) != spec.dim:
        raise SpecError(f"vectors must have {spec.dim} coordinates")
    s = spec.s
    total = 0
    for t, w in enumerate(spec.weights):
        total += w * (u[s + 2 * t] * v[s + 2 * t + 1] - u[s + 2 * t + 1] * v[s + 2 * t])
    return total


def omega_apply(spec: GroupSpec, v: Vector) -> Vector:
    """Omega v^T as a vector: zero on z slots, (w_t v_{b_t}, -w_t v_{a_t}) per pair."""
    if len(v) != spec.dim:
        raise SpecError(f"vector must have {spec.dim} coordinates")
    out = [0] * spec.dim
    s = spec.s
    for t, w in enumerate(spec.weights):
        out[s + 2 * t] = w * v[s + 2 * t + 1]
        out[s + 2 * t + 1] = -w * v[s + 2 * t]
    return tuple(out)


def standard_generators(spec: GroupSpec) -> tuple[Element, ...]:
    """z_1, ..., z_s, a_1, b_1, ..., a_r, b_r as elements (c is not a generator)."""
    gens = []
    for pos in range(spec.dim):
        e = [0] * spec.ncoords
        e[pos] = 1
        gens.append(tuple(e))
    return tuple(gens)


def central_pairing_gcd(spec: GroupSpec, v: Vector) -> int:
    """gcd of the entries of Omega v^T, i.e. gcd_t(w_t i_t, w_t j_t); 0 when v kills the form."""
    if len(v) != spec.dim:
        raise SpecError(f"vector must have {spec.dim} coordinates")
    s = spec.s
    g = 0
    for t, w in enumerate(spec.weights):
        g = gcd(g, gcd(abs(w * v[s + 2 * t]), abs(w * v[s + 2 * t + 1])))
    return g
