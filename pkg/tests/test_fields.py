import pytest
from hypothesis import given
from hypothesis import strategies as st

from vectorgroupoids import (
    DivisionByZero,
    DimensionMismatch,
    FLinearMap,
    FVector,
    NotPrime,
    Subspace,
    field_inv,
    make_field,
    rref,
    subspace_membership,
)


class TestMakeField:
    def test_five(self):
        assert make_field(5).modulus == 5

    def test_two(self):
        assert make_field(2).modulus == 2

    def test_composite_rejected(self):
        with pytest.raises(NotPrime):
            make_field(6)

    @pytest.mark.parametrize("n", [0, 1, 4, 9, 15])
    def test_non_primes(self, n):
        with pytest.raises(NotPrime):
            make_field(n)


class TestFieldInv:
    def test_two_in_z5(self):
        # oracle: exhaustive search over residues
        f = make_field(5)
        expected = next(b for b in range(1, 5) if (2 * b) % 5 == 1)
        assert expected == 3
        assert field_inv(f, 2) == 3

    def test_one(self):
        assert field_inv(make_field(5), 1) == 1

    def test_zero(self):
        with pytest.raises(DivisionByZero):
            field_inv(make_field(5), 0)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_inverse_sweep(self, p):
        f = make_field(p)
        for a in range(1, p):
            assert f.mul(a, field_inv(f, a)) == 1


class TestFVector:
    def test_add_reduces(self):
        f = make_field(3)
        v = FVector(f, (2, 2)) + FVector(f, (2, 1))
        assert v.coords == (1, 0)

    def test_dimension_mismatch(self):
        f = make_field(3)
        with pytest.raises(DimensionMismatch):
            FVector(f, (1,)) + FVector(f, (1, 0))

    def test_scalar(self):
        f = make_field(5)
        assert (3 * FVector(f, (2, 4))).coords == (1, 2)


class TestLinearMap:
    def test_apply(self):
        f = make_field(3)
        m = FLinearMap(f, ((1, 1), (0, 2)))
        assert m.apply((1, 2)) == (0, 1)

    def test_compose_identity(self):
        f = make_field(3)
        m = FLinearMap(f, ((1, 2), (2, 1)))
        assert m.compose(FLinearMap.identity(f, 2)).matrix == m.matrix


class TestRref:
    def test_canonical(self):
        assert rref([(2, 2), (1, 1)], 3) == ((1, 1),)

    def test_full_rank(self):
        assert rref([(0, 1), (1, 0)], 2) == ((1, 0), (0, 1))

    def test_zero_rows_dropped(self):
        assert rref([(0, 0)], 5) == ()


class TestSubspace:
    def test_membership_in(self):
        f = make_field(2)
        s = Subspace.from_vectors(f, 2, [(1, 0)])
        assert subspace_membership(s, (1, 0))

    def test_membership_out(self):
        f = make_field(2)
        s = Subspace.from_vectors(f, 2, [(1, 0)])
        assert not subspace_membership(s, (0, 1))

    def test_membership_scaled(self):
        # 2*(1,1) = (2,2) in Z3
        f = make_field(3)
        s = Subspace.from_vectors(f, 2, [(1, 1)])
        assert subspace_membership(s, (2, 2))

    def test_dimension_mismatch(self):
        f = make_field(2)
        s = Subspace.from_vectors(f, 2, [(1, 0)])
        with pytest.raises(DimensionMismatch):
            s.contains((1, 0, 0))

    def test_equality_is_structural(self):
        f = make_field(3)
        a = Subspace.from_vectors(f, 2, [(1, 1)])
        b = Subspace.from_vectors(f, 2, [(2, 2)])
        assert a == b

    def test_elements_lex_order(self):
        f = make_field(3)
        s = Subspace.from_vectors(f, 2, [(1, 0)])
        assert s.elements() == ((0, 0), (1, 0), (2, 0))


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6))
def test_field_arithmetic_matches_ints(a, b):
    f = make_field(7)
    assert f.add(a, b) == (a + b) % 7
    assert f.mul(a, b) == (a * b) % 7
    assert f.sub(a, b) == (a - b) % 7
