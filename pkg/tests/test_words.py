"""Ball enumeration, word lengths, growth fits."""
from __future__ import annotations

import math

import pytest

from nilgrowth.errors import BudgetError, SpecError
from nilgrowth.groups import central_element, make_group_spec, multiply, named_spec
from nilgrowth.words import (
    GeneratingSet,
    bass_guivarch_exponent,
    central_growth,
    check_generates,
    enumerate_ball,
    growth_exponent_fit,
    standard_generating_set,
    word_length,
)


@pytest.fixture(scope="module")
def h1_ball12():
    spec = named_spec("H1")
    return spec, enumerate_ball(spec, standard_generating_set(spec), 12)


def test_ball_radius_one():
    spec = named_spec("H1")
    table = enumerate_ball(spec, standard_generating_set(spec), 1)
    assert sorted(table.entries.values()).count(0) == 1
    assert len(table.entries) == 5
    assert set(table.entries) == {(0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)}


def test_ball_contains_c_at_four(h1_ball12):
    spec, table = h1_ball12
    assert table.entries[central_element(spec, 1)] == 4


def test_ball_monotone(h1_ball12):
    _, table = h1_ball12
    sizes = table.ball_sizes()
    assert sizes[0] == 1
    assert all(a <= b for a, b in zip(sizes, sizes[1:]))


def test_bfs_parent_property():
    spec = named_spec("HD2")
    gens = standard_generating_set(spec)
    table = enumerate_ball(spec, gens, 4)
    from nilgrowth.groups import inverse

    steps = list(gens.gens) + [inverse(spec, g) for g in gens.gens]
    for g, l in table.entries.items():
        if l == 0:
            continue
        assert any(table.entries.get(multiply(spec, g, x)) == l - 1 for x in steps)


def test_word_length_basics(h1_ball12):
    spec, table = h1_ball12
    gens = standard_generating_set(spec)
    assert word_length(spec, spec.identity(), gens, 5) == 0
    # c^4 via the square spelling: length <= 8
    l8 = word_length(spec, central_element(spec, 4), gens, 8)
    assert l8 is not None and l8 <= 8
    assert l8 == table.entries[central_element(spec, 4)]
    # cutoff exceeded -> None
    assert word_length(spec, (9, 9, 0), gens, 3) is None


def test_length_lower_bound_by_abelian_norm(h1_ball12):
    spec, table = h1_ball12
    for g, l in table.entries.items():
        if l <= 8:
            assert l >= abs(g[0]) + abs(g[1])


def test_central_growth(h1_ball12):
    spec, table = h1_ball12
    gens = standard_generating_set(spec)
    beta = central_growth(spec, gens, 12, table=table)
    assert beta[0] == 1
    assert beta[4] >= 3
    assert all(a <= b for a, b in zip(beta, beta[1:]))
    # parity: nonzero c^k needs even length, so beta only grows at even radii
    assert beta[5] == beta[4] and beta[7] == beta[6]


def test_bass_guivarch():
    assert bass_guivarch_exponent(named_spec("H1")) == 4
    assert bass_guivarch_exponent(make_group_spec(1, 2, (1,))) == 7
    assert bass_guivarch_exponent(named_spec("HD2")) == 6
    assert bass_guivarch_exponent(make_group_spec(3, 0)) == 3


def test_growth_exponent_fit_exact_polynomial():
    values = [0] + [n**4 for n in range(1, 40)]
    assert abs(growth_exponent_fit(values, (10, 30)) - 4.0) < 1e-6


def test_growth_exponent_fit_log_factor():
    values = [0] + [n * n * math.ceil(math.log(n)) for n in range(1, 101)]
    slope = growth_exponent_fit(values, (10, 100))
    assert 2 < slope < 2.5


def test_growth_exponent_fit_errors():
    with pytest.raises(SpecError):
        growth_exponent_fit([1, 2, 3, 4], (1, 2))
    with pytest.raises(SpecError):
        growth_exponent_fit([1, 0, 2, 3, 4], (1, 3))


def test_generating_set_validation():
    with pytest.raises(SpecError):
        GeneratingSet(())
    spec = named_spec("H1")
    with pytest.raises(SpecError):
        enumerate_ball(spec, GeneratingSet(((1, 0),)), 2)


def test_budget_error():
    spec = named_spec("H1")
    with pytest.raises(BudgetError) as info:
        enumerate_ball(spec, standard_generating_set(spec), 6, budget=20)
    assert info.value.budget == 20
    assert info.value.needed > 20


def test_parallel_matches_sequential():
    spec = named_spec("H2")
    gens = standard_generating_set(spec)
    seq = enumerate_ball(spec, gens, 5, threads=1)
    par = enumerate_ball(spec, gens, 5, threads=4)
    assert seq.entries == par.entries
    assert seq.sphere_sizes == par.sphere_sizes
    assert sorted(seq.entries) == sorted(par.entries)


def test_generating_set_robustness(h1_ball12):
    # T = S + {c}: beta_T(n) <= beta_S(4n) and beta_S(n) <= beta_T(n).
    spec, table_s = h1_ball12
    gens_t = GeneratingSet(standard_generating_set(spec).gens + (central_element(spec, 1),), label="std+c")
    table_t = enumerate_ball(spec, gens_t, 3)
    sizes_s = table_s.ball_sizes()
    sizes_t = table_t.ball_sizes()
    for n in range(4):
        assert sizes_s[n] <= sizes_t[n]
        assert sizes_t[n] <= sizes_s[4 * n]


def test_relative_growth_parity_translate(h1_ball12):
    # multiplying by a^{+/-1} swaps i-parity and moves length by at most 1
    spec, table = h1_ball12
    even = [0] * (table.radius + 1)
    odd = [0] * (table.radius + 1)
    for g, l in table.entries.items():
        (even if g[0] % 2 == 0 else odd)[l] += 1
    ceven = [sum(even[: m + 1]) for m in range(len(even))]
    codd = [sum(odd[: m + 1]) for m in range(len(odd))]
    for n in range(table.radius):
        assert ceven[n] <= codd[n + 1]
        assert codd[n] <= ceven[n + 1]


def test_check_generates():
    spec = named_spec("H1")
    assert check_generates(spec, standard_generating_set(spec), 1)
    # {a, ab} generates: b = a^-1 (ab) reachable at radius 2
    gens = GeneratingSet(((1, 0, 0), (1, 1, 0)), label="a,ab")
    assert check_generates(spec, gens, 2)
    # {a} alone does not generate within any radius
    assert not check_generates(spec, GeneratingSet(((1, 0, 0),)), 6)


def test_custom_generators_shift_lengths():
    # with T = S + {c}, c has length 1 instead of 4
    spec = named_spec("H1")
    gens_t = GeneratingSet(standard_generating_set(spec).gens + (central_element(spec, 1),))
    table = enumerate_ball(spec, gens_t, 2)
    assert table.entries[central_element(spec, 1)] == 1
    assert table.entries[central_element(spec, 2)] == 2
