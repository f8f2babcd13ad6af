import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freicat.fgab import (
    FgaGroup,
    GroupHom,
    GroupMismatchError,
    InfiniteGroupError,
    Z,
    canonical_group,
    cyclic,
    direct_sum,
    enumerate_elements,
    free,
    group_sum,
    hom_is_well_defined,
    quotient,
    subgroup_generated_equals,
)
from freicat.oracle import naive_subgroup_closure

FINITE = [cyclic(n) for n in range(2, 9)] + [FgaGroup(0, (2, 2)), FgaGroup(0, (2, 4)), FgaGroup(0, (3, 6)), FgaGroup(0, (2, 2, 2))]
MIXED = [Z, free(2), FgaGroup(1, (2,)), FgaGroup(1, (3,)), FgaGroup(2, (2, 4))]


def elements_of(g):
    return st.tuples(*[st.integers(-6, 6) if d == 0 else st.integers(0, d - 1) for d in g.moduli]).map(g)


def test_invalid_torsion_rejected():
    with pytest.raises(ValueError):
        FgaGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FgaGroup(0, (1,))
    with pytest.raises(ValueError):
        FgaGroup(-1)


def test_group_basics():
    g = FgaGroup(1, (2, 4))
    assert str(g) == "Z + Z/2 + Z/4"
    assert not g.is_finite
    assert FgaGroup(0, (2, 4)).order == 8
    assert str(FgaGroup()) == "0"
    assert cyclic(1).is_trivial
    assert cyclic(0) == Z
    assert g(5, 3, 9).coords == (5, 1, 1)


def test_elements_across_groups_do_not_mix():
    with pytest.raises(GroupMismatchError):
        cyclic(3)(1) + cyclic(4)(1)
    with pytest.raises(GroupMismatchError):
        cyclic(3)(1) < cyclic(4)(1)
    # equality is strict too: comparing across groups is a bug, not False
    with pytest.raises(GroupMismatchError):
        cyclic(3)(1) == cyclic(4)(1)


def test_element_pickles():
    x = FgaGroup(1, (6,))(2, 5)
    assert pickle.loads(pickle.dumps(x)) == x


@given(st.sampled_from(FINITE + MIXED).flatmap(lambda g: st.tuples(elements_of(g), elements_of(g), elements_of(g))))
def test_group_axioms(xyz):
    x, y, z = xyz
    g = x.group
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + g.zero() == x
    assert x + (-x) == g.zero()
    assert x * 3 == x + x + x
    assert x - y == x + (-y)


def test_canonical_group_regroups_torsion():
    assert canonical_group([2, 3]) == cyclic(6)
    assert canonical_group([4, 6]) == FgaGroup(0, (2, 12))
    assert canonical_group([0, 2, 0]) == FgaGroup(2, (2,))
    assert canonical_group([1, 1]) == FgaGroup()


def test_quotient_of_z3_by_two_relations():
    g = free(3)
    q = quotient(g, [g(1, 1, -2), g(1, -2, 1)])
    assert q.quotient == FgaGroup(1, (3,))
    assert q.projection(g(1, 1, -2)).is_zero()


def test_quotient_of_z_by_n():
    q = quotient(Z, [Z(6)])
    assert q.quotient == cyclic(6)
    assert q.projection(Z(7)) == cyclic(6)(1)


@st.composite
def finite_group_and_gens(draw):
    g = draw(st.sampled_from(FINITE))
    gens = draw(st.lists(elements_of(g), max_size=3))
    return g, gens


@given(finite_group_and_gens())
def test_quotient_kernel_matches_closure(data):
    g, gens = data
    q = quotient(g, gens)
    closure = naive_subgroup_closure(g, gens)
    kernel = {x for x in enumerate_elements(g) if q.projection(x).is_zero()}
    assert kernel == closure
    assert q.quotient.order * len(closure) == g.order


@st.composite
def any_group_and_gens(draw):
    g = draw(st.sampled_from(FINITE + MIXED))
    gens = draw(st.lists(elements_of(g), max_size=3))
    return g, gens


@given(any_group_and_gens())
def test_quotient_projection_structure(data):
    g, gens = data
    q = quotient(g, gens)
    assert hom_is_well_defined(q.projection)
    for x in gens:
        assert q.projection(x).is_zero()
    # sections are preimages of the generators, so the projection is onto
    for j, sec in enumerate(q.sections):
        assert q.projection(sec) == q.quotient.gen(j)


def test_subgroup_generation():
    assert subgroup_generated_equals(cyclic(6), [cyclic(6)(2), cyclic(6)(3)])
    assert not subgroup_generated_equals(cyclic(6), [cyclic(6)(2)])
    assert subgroup_generated_equals(free(2), [free(2)(1, 0), free(2)(1, 1)])
    assert not subgroup_generated_equals(free(2), [free(2)(2, 0), free(2)(0, 1)])


def test_direct_sum_of_coprime_cyclics_is_cyclic():
    ds = direct_sum(cyclic(2), cyclic(3))
    assert ds.group == cyclic(6)
    assert ds.inj1(cyclic(2)(1)) == cyclic(6)(3)
    assert ds.inj2(cyclic(3)(1)) == cyclic(6)(4)
    assert ds.pr1(cyclic(6)(1)) == cyclic(2)(1)
    assert ds.pr2(cyclic(6)(1)) == cyclic(3)(1)


@given(
    st.sampled_from(FINITE + MIXED).flatmap(
        lambda g: st.sampled_from(FINITE + MIXED).flatmap(
            lambda h: st.tuples(st.just(g), st.just(h), elements_of(g), elements_of(h))
        )
    )
)
def test_direct_sum_structure_maps(data):
    g, h, x, y = data
    ds = direct_sum(g, h)
    assert ds.group.free_rank == g.free_rank + h.free_rank
    if g.is_finite and h.is_finite:
        assert ds.group.order == g.order * h.order
    assert ds.split(ds.pair(x, y)) == (x, y)
    assert ds.pr1(ds.inj2(y)).is_zero()
    assert ds.pr2(ds.inj1(x)).is_zero()
    for hom in (ds.inj1, ds.inj2, ds.pr1, ds.pr2):
        assert hom_is_well_defined(hom)


def test_group_hom_basics():
    h = GroupHom.from_matrix(cyclic(4), cyclic(2), [[1]])
    assert h.is_well_defined()
    assert h(cyclic(4)(3)) == cyclic(2)(1)
    assert not GroupHom.from_matrix(cyclic(3), cyclic(2), [[1]]).is_well_defined()
    ident = GroupHom.identity(free(2))
    assert ident.compose(ident) == ident
    assert GroupHom.zero(Z, cyclic(3))(Z(5)).is_zero()


def test_group_sum_and_enumeration():
    g = cyclic(5)
    assert group_sum([g(2), g(4)], g) == g(1)
    assert group_sum([], g).is_zero()
    assert [x.coords for x in enumerate_elements(FgaGroup(0, (2, 2)))] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(InfiniteGroupError):
        list(enumerate_elements(Z))
