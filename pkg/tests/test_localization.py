import pytest

from oracles import brute_fraction_classes, is_multiplicatively_closed
from nilring import make_cyclic_ring
from nilring.errors import NotCommutative, ZeroInClosure
from nilring.ideals import enumerate_ideals, generate_ideal, ideal_sum, zero_ideal
from nilring.localization import (
    enumerate_multiplicative_sets,
    localize_ideal,
    localize_ring,
    multiplicative_closure,
    non_zero_divisors,
)
from nilring.predicates import is_essential, is_nil_essential
from nilring.specs import build_ring


def test_closure_examples(z12, z6):
    assert multiplicative_closure(z12, [5]).members == (1, 5)
    assert multiplicative_closure(z6, [3]).members == (1, 3)
    assert multiplicative_closure(z12, []).members == (1,)


def test_zero_in_closure():
    with pytest.raises(ZeroInClosure) as exc:
        multiplicative_closure(make_cyclic_ring(8), [2])
    assert exc.value.chain == ["2", "4", "0"]
    assert "2 -> 4 -> 0" in str(exc.value)


def test_noncommutative_refused(ut2):
    with pytest.raises(NotCommutative):
        multiplicative_closure(ut2, [1])


def test_non_zero_divisors(z12, z6):
    assert non_zero_divisors(z12).members == (1, 5, 7, 11)
    assert non_zero_divisors(z6).members == (1, 5)
    assert non_zero_divisors(make_cyclic_ring(7)).members == tuple(range(1, 7))


def test_localize_z6_at_3(z6):
    L = localize_ring(z6, multiplicative_closure(z6, [3]))
    assert L.result.order == 2
    assert L.torsion.indices == (0, 2, 4)
    assert L.result.unit_elements[L.canonical(3)]
    assert localize_ideal(L, generate_ideal(z6, [3])).is_whole
    assert localize_ideal(L, generate_ideal(z6, [2])).is_zero
    assert localize_ideal(L, zero_ideal(z6)).is_zero


def test_localize_at_units_is_isomorphism(z12):
    L = localize_ring(z12, non_zero_divisors(z12))
    assert L.result.order == 12 and L.torsion.is_zero
    assert len(set(L.canonical.map)) == 12
    L1 = localize_ring(z12, multiplicative_closure(z12, []))
    assert L1.result.order == 12


@pytest.mark.parametrize("spec", ["cyclic:6", "cyclic:12", "cyclic:8", "product:cyclic:2+cyclic:4", "product:cyclic:3+cyclic:3"])
def test_fraction_classes_match_oracle(spec):
    ring = build_ring(spec)
    for S in enumerate_multiplicative_sets(ring):
        L = localize_ring(ring, S)
        assert L.result.order == brute_fraction_classes(ring, set(S.members))


def test_multiplicative_sets_z6(z6):
    sets = [S.members for S in enumerate_multiplicative_sets(z6)]
    assert sets == [(1,), (1, 3), (1, 4), (1, 5), (1, 2, 4), (1, 3, 5), (1, 2, 4, 5)]


@pytest.mark.parametrize("n", [6, 8, 12])
def test_multiplicative_sets_are_exhaustive(n):
    from itertools import combinations
    ring = make_cyclic_ring(n)
    got = {frozenset(S.members) for S in enumerate_multiplicative_sets(ring)}
    want = set()
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            if is_multiplicatively_closed(ring, set(combo)):
                want.add(frozenset(combo))
    assert got == want


def test_regular_sets_restriction(z12):
    nzd = non_zero_divisors(z12)
    inside = enumerate_multiplicative_sets(z12, within=nzd)
    assert all(set(S.members) <= set(nzd.members) for S in inside)
    assert len(inside) == sum(1 for S in enumerate_multiplicative_sets(z12) if set(S.members) <= set(nzd.members))


@pytest.mark.parametrize("spec", ["cyclic:12", "cyclic:18", "product:cyclic:2+cyclic:4"])
def test_localization_commutes_with_sums(spec):
    ring = build_ring(spec)
    L = enumerate_ideals(ring)
    for S in enumerate_multiplicative_sets(ring):
        loc = localize_ring(ring, S)
        for I in L:
            for J in L:
                assert localize_ideal(loc, ideal_sum(I, J)) == ideal_sum(localize_ideal(loc, I), localize_ideal(loc, J))


@pytest.mark.parametrize("n", [4, 8, 9, 27])
def test_prime_power_essential_iff_localized_nil_essential(n):
    ring = make_cyclic_ring(n)
    for S in enumerate_multiplicative_sets(ring):
        assert all(ring.unit_elements[x] for x in S.members)
        loc = localize_ring(ring, S)
        for I in enumerate_ideals(ring):
            assert is_essential(I).holds == is_nil_essential(localize_ideal(loc, I)).holds


def test_localized_json(z6):
    L = localize_ring(z6, multiplicative_closure(z6, [3]))
    data = L.to_json()
    assert data["S"] == ["1", "3"] and data["kernel"] == ["0", "2", "4"] and data["result_order"] == 2
