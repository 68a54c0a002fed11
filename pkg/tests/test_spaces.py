import pytest

from vectorgroupoids import (
    CoordSpace,
    DomainMismatch,
    FieldMismatch,
    ProductSpace,
    RestrictedSpace,
    SpaceFromOps,
    Subspace,
    SubspaceSpace,
    check_linear,
    enumerate_elements,
    make_field,
)

f2 = make_field(2)
f3 = make_field(3)
f5 = make_field(5)


class TestEnumerate:
    def test_z2_squared_lex(self):
        s = CoordSpace(f2, 2)
        assert enumerate_elements(s) == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_subspace_span(self):
        s = Subspace.from_vectors(f3, 2, [(1, 0)])
        assert enumerate_elements(s) == ((0, 0), (1, 0), (2, 0))

    def test_z5_length(self):
        assert len(enumerate_elements(CoordSpace(f5, 1))) == 5

    def test_duplicate_free(self):
        for s in (CoordSpace(f3, 2), ProductSpace(CoordSpace(f2, 1), CoordSpace(f2, 2))):
            es = enumerate_elements(s)
            assert len(set(es)) == len(es) == s.n


class TestAxiomSuite:
    @pytest.mark.parametrize(
        "space",
        [
            CoordSpace(f2, 2),
            CoordSpace(f3, 1),
            CoordSpace(f5, 1),
            ProductSpace(CoordSpace(f2, 1), CoordSpace(f2, 1)),
            SubspaceSpace(Subspace.from_vectors(f3, 2, [(1, 1)])),
        ],
    )
    def test_passes(self, space):
        rep = space.verify_axioms()
        assert rep.passed, rep.summary()

    def test_subspace_suite_inherited(self):
        # every Subspace passes the space axioms under inherited operations
        sub = Subspace.from_vectors(f2, 3, [(1, 0, 1), (0, 1, 0)])
        assert SubspaceSpace(sub).verify_axioms().passed

    def test_broken_space_caught(self):
        # a subset not closed under addition fails closure only
        bad = RestrictedSpace.__new__(RestrictedSpace)
        parent = CoordSpace(f3, 1)
        bad.parent = parent
        bad.field = f3
        bad.elements = ((0,), (1,))
        bad.zero = (0,)
        rep = bad.verify_axioms()
        assert not rep.passed
        assert not rep.law("closure").passed

    def test_space_from_ops(self):
        # shifted operations with zero u = (1,): x (+) y = x + y - u
        parent = CoordSpace(f3, 1)
        u = (1,)
        s = SpaceFromOps(
            f3,
            parent.elements,
            lambda x, y: parent.sub(parent.add(x, y), u),
            lambda k, x: parent.add(parent.scale(k, x), parent.scale((1 - k) % 3, u)),
            u,
        )
        assert s.verify_axioms().passed


class TestProductSpace:
    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            ProductSpace(CoordSpace(f2, 1), CoordSpace(f3, 1))

    def test_nested_elements(self):
        s = ProductSpace(CoordSpace(f2, 1), CoordSpace(f2, 1))
        assert s.elements[0] == ((0,), (0,))
        assert s.add(((0,), (1,)), ((1,), (1,))) == ((1,), (0,))


class TestRestrictedSpace:
    def test_missing_element(self):
        with pytest.raises(DomainMismatch):
            RestrictedSpace(CoordSpace(f2, 1), [(7,)])

    def test_parent_order(self):
        s = RestrictedSpace(CoordSpace(f3, 1), [(2,), (0,), (1,)])
        assert s.elements == ((0,), (1,), (2,))


class TestCheckLinear:
    def test_negation_linear(self):
        s = CoordSpace(f3, 2)
        rep = check_linear({e: s.neg(e) for e in s.elements}, s, s)
        assert rep.passed

    def test_affine_shift_fails_at_zero(self):
        s = CoordSpace(f3, 2)
        rep = check_linear({e: s.add(e, (1, 0)) for e in s.elements}, s, s)
        assert not rep.passed
        w = rep.all_witnesses()[0]
        # first witness in canonical order: a=b=0, x=y=0 (image of 0 is not 0)
        assert w.inputs == (0, 0, (0, 0), (0, 0))

    def test_identity_linear(self):
        s = CoordSpace(f2, 3)
        assert check_linear({e: e for e in s.elements}, s, s).passed

    def test_undefined_entry(self):
        s = CoordSpace(f2, 1)
        with pytest.raises(DomainMismatch):
            check_linear({(0,): (0,)}, s, s)

    def test_value_outside_codomain(self):
        s = CoordSpace(f2, 1)
        with pytest.raises(DomainMismatch):
            check_linear({(0,): (0,), (1,): (5,)}, s, s)

    def test_between_different_spaces(self):
        dom = CoordSpace(f2, 2)
        cod = CoordSpace(f2, 1)
        rep = check_linear({e: (e[0],) for e in dom.elements}, dom, cod)
        assert rep.passed
