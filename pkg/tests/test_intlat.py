import pytest
from hypothesis import given
from hypothesis import strategies as st

from freicat.intlat import determinant, hnf, identity, lattice_membership, matmul, snf, solve_integer
from freicat.oracle import naive_minor_gcd_factors


@st.composite
def matrices(draw, max_dim=4, lo=-9, hi=9):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]


def test_snf_small_example():
    d = snf([[2, 4], [6, 8]])
    assert d.invariant_factors == [2, 4]
    assert matmul(matmul(d.u, [[2, 4], [6, 8]]), d.v) == d.s


def test_snf_of_zero_and_empty():
    assert snf([[0, 0], [0, 0]]).invariant_factors == []
    d = snf([], cols=3)
    assert d.v == identity(3) and d.invariant_factors == []


def test_determinant_matches_expansion():
    assert determinant([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0


@given(matrices())
def test_snf_decomposes(m):
    d = snf(m)
    assert matmul(matmul(d.u, m), d.v) == d.s
    assert abs(determinant(d.u)) == 1
    assert abs(determinant(d.v)) == 1
    assert matmul(d.v, d.v_inv) == identity(len(d.v))
    rows, cols = len(m), len(m[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d.s[i][j] == 0
    diag = d.diagonal
    nz = [x for x in diag if x]
    # nonzero entries first, all positive, each dividing the next
    assert diag[: len(nz)] == nz
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices())
def test_snf_matches_minor_gcds(m):
    assert snf(m).invariant_factors == naive_minor_gcd_factors(m)


@given(matrices())
def test_snf_is_deterministic(m):
    assert snf(m) == snf(m)


def test_hnf_examples():
    assert hnf([[2, 0], [0, 3], [1, 1]]) == [[1, 0], [0, 1], [0, 0]]
    assert hnf([[0]]) == [[0]]
    assert hnf([[4, 6]]) == [[4, 6]]


@given(matrices())
def test_hnf_spans_same_lattice(m):
    h = hnf(m)
    assert len(h) == len(m)
    for row in m:
        assert lattice_membership(h, row)
    for row in h:
        assert lattice_membership(m, row)


@given(matrices())
def test_hnf_is_echelon(m):
    h = hnf(m)
    leads = []
    seen_zero = False
    for row in h:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            seen_zero = True
            continue
        assert not seen_zero, "zero rows must sit at the bottom"
        assert row[lead] > 0
        leads.append((lead, row[lead]))
    assert [c for c, _ in leads] == sorted({c for c, _ in leads})
    for r, (c, p) in enumerate(leads):
        for above in h[:r]:
            assert 0 <= above[c] < p


def test_lattice_membership_basic():
    assert lattice_membership([[2, 0], [0, 3]], [4, -3])
    assert not lattice_membership([[2, 0], [0, 3]], [1, 0])
    assert lattice_membership([], [0, 0])
    with pytest.raises(ValueError):
        lattice_membership([[1, 2]], [1, 2, 3])


@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_membership_of_combinations(m, coeffs):
    vec = [sum(c * row[j] for c, row in zip(coeffs, m)) for j in range(len(m[0]))]
    assert lattice_membership(m, vec)


def test_solve_integer_examples():
    assert solve_integer([[2, 1]], [5]) is not None
    assert solve_integer([[2]], [3]) is None
    assert solve_integer([[2, 4]], [3]) is None


@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_integer_recovers_consistent_systems(m, xs):
    x = xs[: len(m[0])]
    b = [sum(row[j] * x[j] for j in range(len(x))) for row in m]
    sol = solve_integer(m, b)
    assert sol is not None
    assert [sum(row[j] * sol[j] for j in range(len(sol))) for row in m] == b
