import pytest

from conftest import ut
from oracles import brute_essential, brute_ideals, brute_nil_essential, brute_nilpotency_index
from nilring import make_cyclic_ring
from nilring.errors import NotCommutative, ZeroIdealNotCovered
from nilring.ideals import enumerate_ideals, generate_ideal, whole_ring, zero_ideal
from nilring.predicates import (
    classify_lattice,
    is_essential,
    is_nil_essential,
    is_nilpotent_ideal,
    is_reduced,
    is_semisimple,
    jacobson_radical,
    nil_essential_by_element_criterion,
    nilradical,
    socle,
)
from nilring.specs import build_ring


def labels(ideals):
    return {I.label() for I in ideals}


def test_nilpotency_examples(z12):
    six = is_nilpotent_ideal(generate_ideal(z12, [6]))
    assert six.nilpotent and six.index == 2
    two = is_nilpotent_ideal(generate_ideal(z12, [2]))
    assert not two.nilpotent and two.stable_power.label() == "(4)"
    zero = is_nilpotent_ideal(zero_ideal(z12))
    assert zero.nilpotent and zero.index == 1


@pytest.mark.parametrize("spec", ["cyclic:16", "cyclic:36", "product:cyclic:4+cyclic:8", "ut3:2"])
def test_nilpotency_matches_kfold_products(spec):
    ring = build_ring(spec)
    side = "two-sided" if ring.commutative else "left"
    for I in enumerate_ideals(ring, side):
        assert is_nilpotent_ideal(I).index == brute_nilpotency_index(ring, I.indices)


def test_essential_examples(z12):
    two, three = generate_ideal(z12, [2]), generate_ideal(z12, [3])
    assert is_essential(two)
    v = is_essential(three)
    assert not v and v.witness.label() == "(4)"
    assert is_essential(whole_ring(z12))


def test_nil_essential_examples(z12, ut2):
    I3 = generate_ideal(ut2, [ut(2, c=1)], "left")
    assert is_nil_essential(I3) and not is_essential(I3)
    v = is_nil_essential(generate_ideal(z12, [3]))
    assert not v and v.witness.label() == "(4)"
    # R always qualifies as a witness for 0; the reported one is the canonically first
    v = is_nil_essential(zero_ideal(z12))
    assert not v and not is_nilpotent_ideal(v.witness).nilpotent
    assert v.witness.label() == "(4)"
    v = is_nil_essential(zero_ideal(make_cyclic_ring(5)))
    assert not v and v.witness.is_whole


@pytest.mark.parametrize("spec", ["cyclic:12", "cyclic:24", "product:cyclic:2+cyclic:4", "ut3:2"])
def test_predicates_match_brute_force(spec):
    ring = build_ring(spec)
    for side in ("left", "right", "two-sided"):
        L = enumerate_ideals(ring, side)
        sets = brute_ideals(ring, side)
        for I in L:
            A = frozenset(I.indices)
            assert is_essential(I).holds == brute_essential(ring, A, sets)
            assert is_nil_essential(I).holds == brute_nil_essential(ring, A, sets)
        for J in L:
            for I in L.within(J):
                assert is_nil_essential(I, J).holds == brute_nil_essential(ring, frozenset(I.indices), sets, frozenset(J.indices))


def test_element_criterion(z12, ut2):
    two, three = generate_ideal(z12, [2]), generate_ideal(z12, [3])
    assert nil_essential_by_element_criterion(two)
    v = nil_essential_by_element_criterion(three)
    assert not v and v.witness == 4
    assert nil_essential_by_element_criterion(whole_ring(z12))
    with pytest.raises(NotCommutative):
        nil_essential_by_element_criterion(whole_ring(ut2, "left"))
    with pytest.raises(ZeroIdealNotCovered):
        nil_essential_by_element_criterion(zero_ideal(z12))


def test_socle(z12, ut2):
    assert socle(z12, "two-sided").label() == "(2)"
    assert socle(make_cyclic_ring(30), "two-sided").is_whole
    assert socle(make_cyclic_ring(7), "two-sided").is_whole
    assert set(socle(ut2, "left").indices) == {0, ut(2, b=1), ut(2, c=1), ut(2, b=1, c=1)}


def test_radicals(z12, z6, ut2):
    assert jacobson_radical(z12).label() == "(6)"
    assert jacobson_radical(z6).is_zero
    assert jacobson_radical(make_cyclic_ring(5)).is_zero
    assert jacobson_radical(build_ring("product:cyclic:3+cyclic:3")).is_zero
    N = {x for x in range(ut2.order) if ut2.nilpotent_elements[x]}
    assert set(jacobson_radical(ut2).indices) == N
    assert nilradical(z12).label() == "(6)"
    assert nilradical(make_cyclic_ring(30)).is_zero
    with pytest.raises(NotCommutative):
        nilradical(ut2)


def test_reduced_and_semisimple(z12, z6):
    assert is_reduced(make_cyclic_ring(30)) and not is_reduced(z12) and is_reduced(make_cyclic_ring(7))
    assert is_semisimple(z6) and not is_semisimple(z12)
    z4 = make_cyclic_ring(4)
    assert not is_semisimple(z4) and is_nil_essential(generate_ideal(z4, [2]))


def test_zero_ring_convention():
    z1 = make_cyclic_ring(1)
    I = whole_ring(z1)
    assert I.is_zero and is_nilpotent_ideal(I).nilpotent
    assert is_essential(I) and is_nil_essential(I)
    assert nil_essential_by_element_criterion(I)


def test_classification_ut2(ut2):
    flags = classify_lattice(enumerate_ideals(ut2, "left"))
    assert sum(f.nil_essential for f in flags) == 8
    assert sum(f.essential for f in flags) == 3


def test_classification_z12(z12):
    L = enumerate_ideals(z12)
    flags = classify_lattice(L)
    assert {I.label() for I, f in zip(L, flags) if f.nil_essential} == {"(1)", "(2)"}
    assert {I.label() for I, f in zip(L, flags) if f.nilpotent} == {"(0)", "(6)"}
