"""Core arithmetic oracles: presentation relators, associativity, frozen examples."""
from __future__ import annotations

import random

import pytest

from nilgrowth.errors import SpecError
from nilgrowth.groups import (
    abelianize,
    canonical_lift,
    central_element,
    central_pairing_gcd,
    check_element,
    commutator,
    commutator_form,
    conjugate,
    element_from_json_dict,
    element_to_json_dict,
    inverse,
    is_central,
    make_group_spec,
    multiply,
    named_spec,
    omega_apply,
    omega_form,
    power,
    standard_generators,
)

ALL_NAMED = ["H1", "H2", "H3", "ZxH1", "HD2"]


def rand_element(rng, spec, lim=9):
    return tuple(rng.randint(-lim, lim) for _ in range(spec.ncoords))


def test_spec_validation():
    assert make_group_spec(0, 1).weights == (1,)
    assert make_group_spec(0, 2, (2,)).weights == (1, 2)
    assert make_group_spec(1, 3, (2, 6)).weights == (1, 2, 6)
    assert make_group_spec(2, 0).dim == 2
    with pytest.raises(SpecError):
        make_group_spec(0, 0)
    with pytest.raises(SpecError):
        make_group_spec(0, 2, ())  # missing delta entry
    with pytest.raises(SpecError):
        make_group_spec(0, 3, (2, 3))  # 2 does not divide 3
    with pytest.raises(SpecError):
        make_group_spec(0, 2, (0,))
    with pytest.raises(SpecError):
        make_group_spec(-1, 1)


def test_named_specs():
    assert named_spec("H1").dim == 2
    assert named_spec("H2").weights == (1, 1)
    assert named_spec("HD2").weights == (1, 2)
    assert named_spec("ZxH1").s == 1
    with pytest.raises(SpecError):
        named_spec("H99")


def test_multiply_heisenberg_example():
    # H1: (i,j,k) = (1,2,0) times (3,1,0) has k = 0 + 0 - 2*3 = -6.
    spec = named_spec("H1")
    assert multiply(spec, (1, 2, 0), (3, 1, 0)) == (4, 3, -6)


def test_multiply_weighted_example():
    # H_(2): weight 2 on the second pair; pure t=2 product picks up -2*1*1.
    spec = named_spec("HD2")
    g = (0, 0, 0, 1, 0)  # b_2
    h = (0, 0, 1, 0, 0)  # a_2
    assert multiply(spec, g, h) == (0, 0, 1, 1, -2)
    # weight 1 on the first pair
    assert multiply(spec, (0, 1, 0, 0, 0), (1, 0, 0, 0, 0)) == (1, 1, 0, 0, -1)


def test_multiply_identity_and_mismatch():
    spec = named_spec("H2")
    e = spec.identity()
    g = (1, -2, 3, 0, 7)
    assert multiply(spec, e, g) == g
    assert multiply(spec, g, e) == g
    with pytest.raises(SpecError):
        multiply(spec, g, (1, 2, 3))
    with pytest.raises(SpecError):
        check_element(named_spec("H1"), g)


def test_inverse_roundtrip_exhaustive_small():
    spec = named_spec("H1")
    e = spec.identity()
    for i in range(-3, 4):
        for j in range(-3, 4):
            for k in range(-3, 4):
                g = (i, j, k)
                assert multiply(spec, g, inverse(spec, g)) == e
                assert multiply(spec, inverse(spec, g), g) == e


def test_inverse_roundtrip_fuzz():
    rng = random.Random(11)
    for name in ALL_NAMED:
        spec = named_spec(name)
        e = spec.identity()
        for _ in range(300):
            g = rand_element(rng, spec)
            assert multiply(spec, g, inverse(spec, g)) == e
            assert multiply(spec, inverse(spec, g), g) == e


def test_associativity_fuzz():
    rng = random.Random(7)
    for name in ALL_NAMED:
        spec = named_spec(name)
        for _ in range(500):
            g, h, f = (rand_element(rng, spec) for _ in range(3))
            assert multiply(spec, multiply(spec, g, h), f) == multiply(spec, g, multiply(spec, h, f))


def test_relator_suite():
    # [a_t, b_t] = c^{w_t}; all other generator pairs commute; z and c central.
    for name in ALL_NAMED:
        spec = named_spec(name)
        gens = standard_generators(spec)
        s = spec.s
        for t, w in enumerate(spec.weights):
            a_t, b_t = gens[s + 2 * t], gens[s + 2 * t + 1]
            assert commutator(spec, a_t, b_t) == central_element(spec, w)
            for u in range(spec.r):
                if u == t:
                    continue
                a_u, b_u = gens[s + 2 * u], gens[s + 2 * u + 1]
                e = spec.identity()
                assert commutator(spec, a_t, a_u) == e
                assert commutator(spec, a_t, b_u) == e
                assert commutator(spec, b_t, b_u) == e
        rng = random.Random(3)
        for _ in range(50):
            g = rand_element(rng, spec)
            assert commutator(spec, g, central_element(spec, rng.randint(-5, 5))) == spec.identity()
            for zpos in range(s):
                assert commutator(spec, g, gens[zpos]) == spec.identity()


def test_power_matches_repeated_multiply():
    rng = random.Random(19)
    for name in ALL_NAMED:
        spec = named_spec(name)
        for _ in range(60):
            g = rand_element(rng, spec, lim=5)
            acc = spec.identity()
            for m in range(0, 7):
                assert power(spec, g, m) == acc
                assert power(spec, g, -m) == inverse(spec, acc)
                acc = multiply(spec, acc, g)


def test_commutator_equals_form():
    rng = random.Random(23)
    for name in ALL_NAMED:
        spec = named_spec(name)
        for _ in range(200):
            g, h = rand_element(rng, spec), rand_element(rng, spec)
            com = commutator(spec, g, h)
            assert is_central(spec, com)
            assert com == central_element(spec, commutator_form(spec, abelianize(spec, g), abelianize(spec, h)))


def test_commutator_form_examples():
    # H1: (2,4) vs (3,1): 2*1 - 4*3 = -10.
    spec = named_spec("H1")
    assert commutator_form(spec, (2, 4), (3, 1)) == -10
    # weighted: H_(2) pairs ((1,0),(0,0)) vs ((0,0),(0,1)) decouple; t=2 block carries weight 2.
    spec2 = named_spec("HD2")
    assert commutator_form(spec2, (0, 0, 1, 0), (0, 0, 0, 1)) == 2
    assert commutator_form(spec2, (1, 0, 0, 0), (0, 1, 0, 0)) == 1


def test_commutator_form_bilinear_skew():
    rng = random.Random(5)
    spec = named_spec("HD2")
    for _ in range(200):
        u = tuple(rng.randint(-9, 9) for _ in range(spec.dim))
        v = tuple(rng.randint(-9, 9) for _ in range(spec.dim))
        w = tuple(rng.randint(-9, 9) for _ in range(spec.dim))
        lam = rng.randint(-4, 4)
        assert commutator_form(spec, u, v) == -commutator_form(spec, v, u)
        uv = tuple(x + lam * y for x, y in zip(u, v))
        assert commutator_form(spec, uv, w) == commutator_form(spec, u, w) + lam * commutator_form(spec, v, w)


def test_conjugate_example():
    # H1: a (2,4,7) a^-1 shifts k by +j = 4.
    spec = named_spec("H1")
    a = (1, 0, 0)
    assert conjugate(spec, a, (2, 4, 7)) == (2, 4, 11)


def test_conjugate_is_central_shift():
    # x g x^-1 = g c^{xbar Omega gbar^T} for all elements, both weighted and not.
    rng = random.Random(37)
    for name in ALL_NAMED:
        spec = named_spec(name)
        for _ in range(200):
            x, g = rand_element(rng, spec), rand_element(rng, spec)
            shift = commutator_form(spec, abelianize(spec, x), abelianize(spec, g))
            expect = g[:-1] + (g[-1] + shift,)
            assert conjugate(spec, x, g) == expect


def test_abelianize_lift():
    spec = named_spec("HD2")
    rng = random.Random(41)
    for _ in range(100):
        g, h = rand_element(rng, spec), rand_element(rng, spec)
        assert abelianize(spec, multiply(spec, g, h)) == tuple(
            x + y for x, y in zip(abelianize(spec, g), abelianize(spec, h))
        )
    v = (3, -1, 2, 5)
    assert abelianize(spec, canonical_lift(spec, v)) == v
    with pytest.raises(SpecError):
        canonical_lift(spec, (1, 2, 3))


def test_omega_form_matrix():
    spec = make_group_spec(1, 2, (3,))
    mat = omega_form(spec)
    assert len(mat) == 5
    assert mat[0] == (0, 0, 0, 0, 0)
    assert mat[1][2] == 1 and mat[2][1] == -1
    assert mat[3][4] == 3 and mat[4][3] == -3
    # commutator_form agrees with the explicit matrix product
    rng = random.Random(2)
    for _ in range(100):
        u = tuple(rng.randint(-6, 6) for _ in range(5))
        v = tuple(rng.randint(-6, 6) for _ in range(5))
        quad = sum(u[p] * mat[p][q] * v[q] for p in range(5) for q in range(5))
        assert commutator_form(spec, u, v) == quad
        assert quad == sum(x * y for x, y in zip(u, omega_apply(spec, v)))


def test_central_pairing_gcd():
    spec = named_spec("HD2")
    assert central_pairing_gcd(spec, (0, 0, 1, 0)) == 2
    assert central_pairing_gcd(spec, (2, 4, 0, 0)) == 2
    assert central_pairing_gcd(spec, (0, 0, 0, 0)) == 0
    assert central_pairing_gcd(spec, (3, 0, 1, 0)) == 1
    zspec = make_group_spec(2, 0)
    assert central_pairing_gcd(zspec, (5, 7)) == 0


def test_standard_generators():
    spec = make_group_spec(1, 2, (2,))
    gens = standard_generators(spec)
    assert len(gens) == 5
    assert gens[0] == (1, 0, 0, 0, 0, 0)
    assert gens[4] == (0, 0, 0, 0, 1, 0)


def test_element_json_roundtrip():
    spec = named_spec("HD2")
    g = (2, -1, 0, 5, -7)
    payload = element_to_json_dict(spec, g)
    assert payload == {"z": [], "ab": [[2, -1], [0, 5]], "k": -7}
    assert element_from_json_dict(spec, payload) == g
    zspec = make_group_spec(1, 1)
    h = (4, 1, -2, 9)
    assert element_from_json_dict(zspec, element_to_json_dict(zspec, h)) == h
    with pytest.raises(SpecError):
        element_from_json_dict(spec, {"z": [1], "ab": [], "k": 0})
