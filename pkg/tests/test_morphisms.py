import pytest

from vectorgroupoids import (
    CoordSpace,
    DomainMismatch,
    ImageOutsidePullback,
    PartialBijection,
    PartialMap,
    SizeGuard,
    anchor_morphism,
    build_morphism,
    compose_morphisms,
    identity_morphism,
    make_field,
    null_vg,
    pair_vg,
    sgn_sharp,
    single_unit,
    symmetry_groupoid,
    trivial_tvg,
    v3,
    validate_noncomposability_witness,
    verify_homomorphism,
    verify_morphism,
    verify_vector_morphism,
    vpq,
    whitney_projections,
    whitney_sum,
    whitney_universal,
    Subspace,
)

f2 = make_field(2)
f3 = make_field(3)
f5 = make_field(5)


class TestBuildMorphism:
    def test_partial_map_rejected(self):
        g = pair_vg(CoordSpace(f2, 1)).groupoid
        with pytest.raises(PartialMap):
            build_morphism(g, g, {g.carrier[0]: g.carrier[0]})

    def test_conflicting_f0_rejected(self):
        g = pair_vg(CoordSpace(f2, 1)).groupoid
        f = {x: x for x in g.carrier}
        with pytest.raises(DomainMismatch):
            build_morphism(g, g, f, f0={g.units[0]: g.units[1]})

    def test_f0_derived_from_units(self):
        g = pair_vg(CoordSpace(f2, 1)).groupoid
        m = identity_morphism(g)
        assert m.f0 == {u: u for u in g.units}


class TestVerifyMorphism:
    def test_identity_passes(self):
        m = identity_morphism(pair_vg(CoordSpace(f2, 1)).groupoid)
        assert verify_morphism(m).passed

    def test_constant_to_unit_passes(self):
        v = single_unit(CoordSpace(f2, 2))
        g = v.groupoid
        m = build_morphism(g, g, {x: (0, 0) for x in g.carrier})
        assert verify_morphism(m).passed

    def test_swap_map_fails(self):
        g = pair_vg(CoordSpace(f2, 1)).groupoid
        m = build_morphism(g, g, {e: (e[1], e[0]) for e in g.carrier})
        rep = verify_morphism(m)
        assert not rep.law("def2.2(i)").passed

    def test_composite_of_morphisms_passes(self):
        v = v3(CoordSpace(f2, 1))
        a = anchor_morphism(v)
        ident = identity_morphism(a.target)
        comp = compose_morphisms(ident, a)
        assert verify_morphism(comp).passed


class TestHomomorphism:
    def test_anchor_of_v3_passes(self):
        m = anchor_morphism(v3(CoordSpace(f2, 1)))
        assert verify_homomorphism(m).passed

    def test_sgn_sharp_sg4_fails_with_disjoint_domain_witness(self):
        m = sgn_sharp(4)
        rep = verify_homomorphism(m)
        assert not rep.passed
        x, y = rep.all_witnesses()[0].inputs
        assert x.domain != y.domain

    def test_identity_passes(self):
        m = identity_morphism(pair_vg(CoordSpace(f3, 1)).groupoid)
        assert verify_homomorphism(m).passed

    def test_single_unit_anchor_vacuous(self):
        # constant anchor is still a homomorphism: every pair composable upstairs
        m = anchor_morphism(single_unit(CoordSpace(f3, 1)))
        assert verify_homomorphism(m).passed


class TestSgnSharp:
    def test_known_sign_values(self):
        m = sgn_sharp(4)
        f = PartialBijection(4, (0, 1, 2), (1, 2, 0))
        g = PartialBijection(4, (0, 2, 3), (3, 2, 0))
        assert m.f[f] == 1
        assert m.f[g] == -1

    def test_morphism_but_not_homomorphism(self):
        m = sgn_sharp(4)
        assert verify_morphism(m).passed
        assert not verify_homomorphism(m).passed

    def test_disjoint_domain_witness_accepted(self):
        m = sgn_sharp(4)
        f = PartialBijection(4, (0, 1, 2), (1, 2, 0))
        g = PartialBijection(4, (0, 2, 3), (3, 2, 0))
        assert validate_noncomposability_witness(m, f, g)

    def test_composable_pair_not_a_witness(self):
        m = sgn_sharp(3)
        f = PartialBijection(3, (0, 1), (1, 0))
        assert not validate_noncomposability_witness(m, f, f)

    def test_identity_on_singleton(self):
        m = sgn_sharp(1)
        f = PartialBijection(1, (0,), (0,))
        assert m.f[f] == 1

    def test_size_guard(self):
        with pytest.raises(SizeGuard):
            sgn_sharp(7)


class TestVectorMorphism:
    def test_whitney_projections_pass(self):
        a = pair_vg(CoordSpace(f2, 1))
        w = whitney_sum(a, a)
        p1, p2 = whitney_projections(w, a, a)
        assert verify_vector_morphism(p1, w, a).passed
        assert verify_vector_morphism(p2, w, a).passed

    @pytest.mark.parametrize(
        "v",
        [
            single_unit(CoordSpace(f2, 2)),
            null_vg(CoordSpace(f3, 1)),
            pair_vg(CoordSpace(f3, 1)),
            vpq(CoordSpace(f5, 1), 2, 3),
            v3(CoordSpace(f2, 1)),
            trivial_tvg(CoordSpace(f2, 2), Subspace.from_vectors(f2, 2, [(1, 0)])),
        ],
    )
    def test_anchor_all_three_levels(self, v):
        m = anchor_morphism(v)
        assert verify_morphism(m).passed
        assert verify_homomorphism(m).passed
        assert verify_vector_morphism(m, v, m.target_vg).passed

    def test_affine_shift_fails_linearity(self):
        v = pair_vg(CoordSpace(f3, 1))
        g = v.groupoid
        sp = v.space
        shift = (((1,), (1,)))
        m = build_morphism(g, g, {e: sp.add(e, shift) for e in g.carrier})
        rep = verify_vector_morphism(m, v, v)
        assert not rep.law("def3.2-linear").passed


class TestWhitneyUniversal:
    def test_diagonal_embedding(self):
        a = pair_vg(CoordSpace(f2, 1))
        q = identity_morphism(a.groupoid)
        phi, w = whitney_universal(a, q, q, a, a)
        assert all(phi.f[x] == (x, x) for x in a.groupoid.carrier)
        assert verify_vector_morphism(phi, a, w).passed

    def test_commutation_equations(self):
        a = v3(CoordSpace(f2, 1))
        q = identity_morphism(a.groupoid)
        phi, w = whitney_universal(a, q, q, a, a)
        p1, p2 = whitney_projections(w, a, a)
        for x in a.groupoid.carrier:
            assert p1.f[phi.f[x]] == q.f[x]
            assert p2.f[phi.f[x]] == q.f[x]

    def test_pointwise_uniqueness_under_perturbation(self):
        a = pair_vg(CoordSpace(f2, 1))
        q = identity_morphism(a.groupoid)
        phi, w = whitney_universal(a, q, q, a, a)
        p1, _ = whitney_projections(w, a, a)
        carrier = list(w.groupoid.carrier)
        for x in a.groupoid.carrier:
            for other in carrier:
                if other == phi.f[x]:
                    continue
                psi = dict(phi.f)
                psi[x] = other
                # the perturbed table breaks a projection equation at x
                assert p1.f[psi[x]] != q.f[x] or other[1] != q.f[x]

    def test_image_outside_pullback(self):
        a = pair_vg(CoordSpace(f2, 1))
        q = identity_morphism(a.groupoid)
        # q2 mapping through the flip breaks the alpha/beta matching
        flip = build_morphism(
            a.groupoid, a.groupoid, {e: (e[1], e[0]) for e in a.groupoid.carrier}
        )
        with pytest.raises(ImageOutsidePullback):
            whitney_universal(a, q, flip, a, a)


def test_morphism_preserves_inversion_and_units():
    # consequences checked exhaustively for every verified morphism
    for v in (pair_vg(CoordSpace(f3, 1)), v3(CoordSpace(f2, 1))):
        m = anchor_morphism(v)
        g, h = m.source, m.target
        assert all(m.f[g.inv[x]] == h.inv[m.f[x]] for x in g.carrier)
        assert all(m.f[u] in set(h.units) for u in g.units)
