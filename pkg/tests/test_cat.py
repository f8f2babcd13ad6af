import random
from fractions import Fraction

import pytest

from freicat.addset import aset, sigma
from freicat.cat import (
    Cone,
    MediatorError,
    NotNormalizedError,
    coequalizer0,
    commuting_maps,
    coproduct0,
    disjoint_copair,
    disjoint_union_check,
    equalizer0,
    product,
    pullback0,
    pushout0,
    structure_report,
    terminal_initial,
    validate_competitor,
    verify_universal_property,
)
from freicat.fgab import GroupHom, Z, cyclic, direct_sum
from freicat.freiman import (
    FreimanMap,
    compose,
    enumerate_homs,
    hom_violation,
    identity_map,
    is_freiman_hom,
    restrict_group_hom,
)
from freicat.oracle import naive_mediator_search

K = 2


def zset(*xs):
    return aset(Z, *xs)


def legs_are_homs(cone):
    return all(is_freiman_hom(leg) for leg in cone.legs)


def test_product_of_two_pairs():
    cone = product(zset(0, 1), zset(0, 1), K)
    assert len(cone.apex) == 4
    assert legs_are_homs(cone)
    assert cone.apex.is_normalized


@pytest.mark.parametrize("seed", range(10))
def test_product_mediator_is_unique(seed):
    rng = random.Random(seed)
    a, b = zset(0, 1), zset(0, 1)
    cone = product(a, b, K)
    d = zset(*rng.sample(range(-2, 4), rng.randint(1, 3)))
    f = rng.choice(enumerate_homs(d, a, K))
    g = rng.choice(enumerate_homs(d, b, K))
    comp = Cone(d, (f, g))
    assert verify_universal_property(cone, comp)
    assert commuting_maps(cone, comp) == naive_mediator_search(cone, comp, K)


def test_product_works_without_zero():
    cone = product(zset(1, 2), zset(5), K)
    assert not cone.apex.is_normalized
    d = zset(3, 4)
    comp = Cone(d, tuple(enumerate_homs(d, s, K)[0] for s in (zset(1, 2), zset(5))))
    assert verify_universal_property(cone, comp)


def test_coproduct_with_summable_competitor():
    a, b = zset(0, 1), zset(0, 2)
    cone = coproduct0(a, b, K)
    assert legs_are_homs(cone)
    d = zset(0, 1, 2, 3)
    f = FreimanMap.from_mapping(a, d, {0: 0, 1: 1}, K)
    g = FreimanMap.from_mapping(b, d, {0: 0, 2: 2}, K)
    assert verify_universal_property(cone, Cone(d, (f, g)))


def test_coproduct_fails_when_sums_leave_the_competitor():
    # f(1) + g(1) = 2 is not in D, so no map out of A x B fits both legs
    a = zset(0, 1)
    cone = coproduct0(a, a, K)
    comp = Cone(a, (identity_map(a, K), identity_map(a, K)))
    assert commuting_maps(cone, comp) == []
    with pytest.raises(MediatorError):
        cone.mediator(comp)
    assert not verify_universal_property(cone, comp)


def test_coproduct_needs_normalized_sets():
    with pytest.raises(NotNormalizedError):
        coproduct0(zset(1, 2), zset(0), K)


def _zero_preserving(a, b, k=K):
    return enumerate_homs(a, b, k, preserve_zero=True)


def test_pullback_over_a_common_target():
    a, b, c = zset(0, 1, 2), zset(0, 1), zset(0, 1)
    f = FreimanMap.from_mapping(a, c, {0: 0, 1: 1, 2: 0}, K)
    g = FreimanMap(b, c, b.elements, K)
    cone = pullback0(f, g)
    pairs = {cone.legs[0](z).coords + cone.legs[1](z).coords for z in cone.apex}
    assert pairs == {(0, 0), (1, 1), (2, 0)}
    assert legs_are_homs(cone) and cone.apex.is_normalized


@pytest.mark.parametrize("seed", range(8))
def test_pullback_universal_on_random_cones(seed):
    rng = random.Random(seed)
    a, b, c = zset(0, 1, 2), zset(-1, 0, 1), zset(0, 1)
    f = rng.choice(_zero_preserving(a, c))
    g = rng.choice(_zero_preserving(b, c))
    cone = pullback0(f, g)
    d = zset(0, *rng.sample([1, 2, 3], rng.randint(0, 2)))
    comps = [
        Cone(d, (p, q))
        for p in _zero_preserving(d, a)
        for q in _zero_preserving(d, b)
        if compose(f, p) == compose(g, q)
    ]
    assert comps
    for comp in comps:
        assert verify_universal_property(cone, comp)


def test_pushout_identifies_along_the_span():
    c, a, b = zset(0, 1), zset(0, 1, 2), zset(0, 1)
    f = FreimanMap(c, a, [Z(0), Z(1)], K)
    g = FreimanMap(c, b, [Z(0), Z(1)], K)
    cone = pushout0(f, g)
    assert legs_are_homs(cone)
    assert compose(cone.legs[0], f) == compose(cone.legs[1], g)
    q = cone.quotient
    # every class is valued at a single coset
    for cls, v in zip(q.classes, q.class_images):
        assert all(q.ambient_quotient.projection(_pair(cone, p)) == v for p in cls)
    assert cone.apex.is_normalized


def _pair(cone, p):
    f, g = cone.diagram
    return direct_sum(f.target.ambient, g.target.ambient).pair(*p)


def test_equalizer_of_identity_and_zero():
    a = zset(-1, 0, 1)
    f = identity_map(a, K)
    g = FreimanMap(a, a, [Z(0)] * 3, K)
    cone = equalizer0(f, g)
    assert cone.apex == zset(0)
    h = FreimanMap(zset(0, 5), a, [Z(0), Z(0)], K)
    assert verify_universal_property(cone, Cone(zset(0, 5), (h,)))


def test_coequalizer_of_equal_maps_keeps_the_target():
    a, b = zset(0, 1), zset(0, 1, 2)
    f = FreimanMap(a, b, [Z(0), Z(2)], K)
    cone = coequalizer0(f, f)
    assert cone.apex == b
    assert cone.quotient.collapsed == ()


def test_coequalizer_in_a_cyclic_group():
    z6 = cyclic(6)
    a, b = aset(z6, 0, 3), aset(z6, 0, 1, 3, 4)
    f = FreimanMap(a, b, [z6(0), z6(3)], K)
    g = FreimanMap(a, b, [z6(0), z6(0)], K)
    cone = coequalizer0(f, g)
    assert cone.apex.ambient == cyclic(3)
    assert compose(cone.legs[0], f) == compose(cone.legs[0], g)
    assert [list(map(repr, cls)) for cls in cone.quotient.classes] == [["0", "3"], ["1"], ["4"]]
    # 1 and 4 are separate classes that meet in the same coset of <3>
    assert cone.quotient.collapsed == ((1, 2),)
    assert len(cone.apex) == 2


def test_coequalizer_fails_when_distinct_classes_share_a_coset():
    # f(-1) - g(-1) = -1 generates Z, so the classes {-1, 0} and {2}
    # both land on the single element of the trivial quotient
    a, b = zset(-1, 0), zset(-1, 0, 2)
    f = FreimanMap.from_mapping(a, b, {-1: -1, 0: 0}, K)
    g = FreimanMap.from_mapping(a, b, {-1: 0, 0: 0}, K)
    cone = coequalizer0(f, g)
    assert cone.apex.ambient.is_trivial
    assert cone.quotient.collapsed == ((0, 1),)
    h = FreimanMap.from_mapping(b, b, {-1: 0, 0: 0, 2: -1}, K)
    comp = Cone(b, (h,))
    validate_competitor(cone, comp)
    assert commuting_maps(cone, comp) == []
    assert not verify_universal_property(cone, comp)


def test_competitor_validation():
    a = zset(0, 1)
    cone = product(a, a, K)
    bad = FreimanMap.from_mapping(zset(0, 1, 2), a, {0: 0, 1: 1, 2: 0}, K)
    assert hom_violation(bad) is not None
    with pytest.raises(ValueError):
        validate_competitor(cone, Cone(zset(0, 1, 2), (bad, bad)))
    with pytest.raises(ValueError):
        validate_competitor(cone, Cone(a, (identity_map(a, K),)))


def test_terminal_and_initial_object():
    ti = terminal_initial(K)
    for d in (zset(0, 3), zset(-2, 0, 1)):
        assert verify_universal_property(ti.terminal, Cone(d, ()))
        assert verify_universal_property(ti.initial, Cone(d, ()))
        assert ti.to_terminal(d).images == (Z(0),) * len(d)
    point = zset(7)
    assert len(ti.weak_initial_maps(point, zset(0, 1, 2))) == 3


def test_disjoint_union_copair_is_not_a_hom():
    a, b, c = zset(0, 1), zset(3, 4), zset(1, 2)
    f = FreimanMap.from_mapping(a, c, {0: 1, 1: 2}, K)
    g = FreimanMap.from_mapping(b, c, {3: 2, 4: 1}, K)
    assert is_freiman_hom(f) and is_freiman_hom(g)
    v = hom_violation(disjoint_copair(f, g))
    assert v is not None
    assert str(v) == "0+4 = 1+3 = 4, but images sum to 2 != 4"


def test_structure_checks_on_simple_objects():
    cone = product(zset(1, 2, 3), aset(cyclic(3), 0, 1, 2), K)
    (check,) = structure_report(cone)
    assert check.value == Fraction(5, 3) and check.holds
    zero = terminal_initial(K).terminal
    (check,) = structure_report(zero)
    assert check.value == 1 and check.holds


def test_disjoint_union_bound_example():
    check = disjoint_union_check(zset(0, 1), zset(3, 4))
    # {0,1,3,4} doubles to 0..8 and {0,1}+{3,4} = {3,4,5}
    assert check.value == Fraction(9, 4)
    assert check.upper == Fraction(3, 2) + Fraction(3, 2) + Fraction(3, 4)
    assert check.holds


def _times(c, a, target, k):
    """Restriction of ``x -> c*x`` from ``a``'s cyclic ambient into ``target``."""
    return restrict_group_hom(GroupHom(a.ambient, target.ambient, (target.ambient(c),)), a, k, target)


def test_equalizer_can_double_more_than_its_source():
    z6 = cyclic(6)
    a = aset(z6, 0, 1, 3, 4, 5)
    b = aset(z6, 0, 3)
    f = _times(0, a, b, 3)
    g = _times(3, a, b, 3)
    cone = equalizer0(f, g)
    assert cone.apex == aset(z6, 0, 4)
    assert sigma(cone.apex) == Fraction(3, 2) > sigma(a) == Fraction(6, 5)
    (check,) = structure_report(cone)
    assert not check.holds


def test_fiber_product_can_double_more_than_the_product():
    z6, z2 = cyclic(6), cyclic(2)
    a = aset(z6, 0, 1, 3, 4, 5)
    b = aset(z6, 0, 3)
    c = aset(z2, 0, 1)
    f = _times(1, a, c, 3)
    g = _times(0, b, c, 3)
    assert is_freiman_hom(g)
    cone = pullback0(f, g)
    assert sigma(cone.apex) == Fraction(3, 2)
    (check,) = structure_report(cone)
    assert check.upper == Fraction(6, 5)
    assert not check.holds


def test_coequalizer_quotient_bound_on_small_instance():
    a, b = zset(0, 1), zset(0, 1, 2, 3)
    f = FreimanMap(a, b, [Z(0), Z(2)], K)
    g = FreimanMap(a, b, [Z(0), Z(0)], K)
    cone = coequalizer0(f, g)
    (check,) = structure_report(cone)
    assert check.holds
    assert cone.apex.ambient == cyclic(2)
