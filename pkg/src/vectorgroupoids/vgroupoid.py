"""Vector groupoids: a groupoid whose carrier is a finite vector space with
linear structure maps, plus the compatibility laws between the partial
multiplication and the linear structure.

The verifier quantifies every scalar law over the whole field, including
k = 0 and k = 1, and computes 0-fibres from the verified alpha/beta tables
rather than from construction formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CarrierMismatch,
    NotAUnit,
    UnitSetMismatch,
    VerificationFailed,
)
from .groupoid import FiniteGroupoid, build_groupoid
from .report import DEFAULT_WITNESS_CAP, AxiomReport, LawCollector
from .spaces import AbstractSpace, RestrictedSpace, SpaceFromOps, check_linear


@dataclass
class VectorGroupoid:
    """A candidate vector groupoid: carrier space, unit-set base, groupoid.

    ``attach_vector_structure`` performs only well-formedness checks; the
    laws are verified by :func:`verify_vector_axioms`.
    """

    space: AbstractSpace
    base: AbstractSpace
    groupoid: FiniteGroupoid

    @property
    def field(self):
        return self.space.field


def attach_vector_structure(
    g: FiniteGroupoid, space: AbstractSpace, base: AbstractSpace
) -> VectorGroupoid:
    if tuple(g.carrier) != tuple(space.elements):
        raise CarrierMismatch(
            "groupoid carrier and space enumeration differ (order matters)"
        )
    if set(g.units) != set(base.elements):
        raise UnitSetMismatch("groupoid units differ from the declared base")
    return VectorGroupoid(space, base, g)


def _space_arrays(v: VectorGroupoid):
    space = v.space
    return space.add_idx(), space.scale_idx(), space.neg_idx(), space.zero_index


def verify_vector_axioms(
    v: VectorGroupoid, witness_cap: int = DEFAULT_WITNESS_CAP
) -> AxiomReport:
    """Exhaustive check of the vector-groupoid compatibility laws.

    Checks: the base is a subspace; alpha, beta, iota are linear; the
    inversion identity x + x^-1 = alpha(x) + beta(x); and the four laws
    relating the partial multiplication to addition and scaling.  Before
    each multiplication the checker confirms composability; a non-composable
    left side is reported under "IllFormedLaw".
    """
    g = v.groupoid
    gi = g._ix()
    space = v.space
    p = space.field.modulus
    add, scl, neg, zero = _space_arrays(v)
    M = gi.M
    elems = space.elements
    report = AxiomReport()
    ill = LawCollector("IllFormedLaw", witness_cap)

    # (3.1.1) the unit set is a subspace of the carrier space
    lc = LawCollector("3.1.1", witness_cap)
    base_idx = np.array(sorted(space.index(u) for u in v.base.elements), dtype=np.int64)
    base_mask = np.zeros(space.n, dtype=bool)
    base_mask[base_idx] = True
    lc.count(len(base_idx) ** 2 + p * len(base_idx) + 1)
    if not base_mask[zero]:
        lc.add((space.zero,), expected=space.zero)
    sub_add = add[np.ix_(base_idx, base_idx)]
    for i, j in np.argwhere(~base_mask[sub_add])[:witness_cap]:
        if not lc.full:
            lc.add(
                (elems[int(base_idx[i])], elems[int(base_idx[j])]),
                actual=elems[int(sub_add[i, j])],
            )
    sub_scl = scl[:, base_idx]
    for k, i in np.argwhere(~base_mask[sub_scl])[:witness_cap]:
        if not lc.full:
            lc.add((int(k), elems[int(base_idx[i])]), actual=elems[int(sub_scl[k, i])])
    report.laws.append(lc.check)

    # (3.1.2) alpha and beta linear, (3.1.3) iota linear
    for name, table in (
        ("3.1.2-alpha", g.alpha),
        ("3.1.2-beta", g.beta),
        ("3.1.3-linear", g.inv),
    ):
        sub = check_linear(table, space, space, witness_cap, law=name)
        report.laws.extend(sub.laws)

    # 3.1.3(1): x + iota(x) = alpha(x) + beta(x)
    lc = LawCollector("3.1.3(1)", witness_cap)
    rng = np.arange(space.n)
    lc.count(space.n)
    lhs = add[rng, gi.inv]
    rhs = add[gi.alpha, gi.beta]
    for (i,) in np.argwhere(lhs != rhs)[:witness_cap]:
        i = int(i)
        lc.add((elems[i],), expected=elems[int(rhs[i])], actual=elems[int(lhs[i])])
    report.laws.append(lc.check)

    # 3.1.4: compatibility of the multiplication with + and scalars
    law1 = LawCollector("3.1.4(1)", witness_cap)
    law2 = LawCollector("3.1.4(2)", witness_cap)
    law3 = LawCollector("3.1.4(3)", witness_cap)
    law4 = LawCollector("3.1.4(4)", witness_cap)

    def report_grid(lc_target, viol, lhs, rhs, idx_of):
        for pos in np.argwhere(viol)[:witness_cap]:
            if lc_target.full:
                break
            inputs = idx_of(tuple(int(t) for t in pos))
            lv, rv = int(lhs[tuple(pos)]), int(rhs[tuple(pos)])
            lc_target.add(
                tuple(elems[i] for i in inputs),
                expected=elems[rv] if rv >= 0 else None,
                actual=elems[lv] if lv >= 0 else None,
            )

    for u in sorted(int(space.index(x)) for x in g.units):
        X = np.nonzero(gi.beta == u)[0]   # beta(x) = u
        Y = np.nonzero(gi.alpha == u)[0]  # alpha(y) = u
        if len(X) == 0 or len(Y) == 0:
            continue
        A = M[X[:, None], Y[None, :]]     # x . y
        for i, j in np.argwhere(A < 0)[:witness_cap]:
            if not ill.full:
                ill.add((elems[int(X[i])], elems[int(Y[j])]))
        Aok = A >= 0
        Ac = np.maximum(A, 0)
        negX = neg[X]

        # law 1: x . (y + z - beta(x)) = x.y + x.z - x
        arg = add[add[Y[:, None], Y[None, :]], neg[u]]
        lhs = M[X[:, None, None], arg[None, :, :]]
        law1.count(len(X) * len(Y) * len(Y))
        bad_l = lhs < 0
        for i, j, k in np.argwhere(bad_l)[:witness_cap]:
            if not ill.full:
                ill.add(
                    (elems[int(X[i])], elems[int(arg[j, k])]),
                )
        rhs = add[add[Ac[:, :, None], Ac[:, None, :]], negX[:, None, None]]
        valid = Aok[:, :, None] & Aok[:, None, :] & (lhs >= 0)
        report_grid(
            law1,
            valid & (lhs != rhs),
            lhs,
            rhs,
            lambda pos: (int(X[pos[0]]), int(Y[pos[1]]), int(Y[pos[2]])),
        )

        # law 2: x . (k y + (1-k) beta(x)) = k (x.y) + (1-k) x
        for k in range(p):
            argv = add[scl[k][Y], scl[(1 - k) % p][u]]
            lhs = M[X[:, None], argv[None, :]]
            law2.count(len(X) * len(Y))
            for i, j in np.argwhere(lhs < 0)[:witness_cap]:
                if not ill.full:
                    ill.add((elems[int(X[i])], elems[int(argv[j])]))
            rhs = add[scl[k][Ac], scl[(1 - k) % p][X][:, None]]
            valid = Aok & (lhs >= 0)
            report_grid(
                law2,
                valid & (lhs != rhs),
                lhs,
                rhs,
                lambda pos, _k=k: (_k, int(X[pos[0]]), int(Y[pos[1]])),
            )

        # mirrored laws: x with alpha(x) = u, y/z with beta = u
        X2 = Y   # alpha(x) = u
        Y2 = X   # beta(y) = u
        A2 = M[Y2[:, None], X2[None, :]]  # y . x
        A2ok = A2 >= 0
        A2c = np.maximum(A2, 0)
        negX2 = neg[X2]

        # law 3: (y + z - alpha(x)) . x = y.x + z.x - x
        arg = add[add[Y2[:, None], Y2[None, :]], neg[u]]
        lhs = M[arg[:, :, None], X2[None, None, :]]
        law3.count(len(Y2) * len(Y2) * len(X2))
        for i, j, k in np.argwhere(lhs < 0)[:witness_cap]:
            if not ill.full:
                ill.add((elems[int(arg[i, j])], elems[int(X2[k])]))
        rhs = add[add[A2c[:, None, :], A2c[None, :, :]], negX2[None, None, :]]
        valid = A2ok[:, None, :] & A2ok[None, :, :] & (lhs >= 0)
        report_grid(
            law3,
            valid & (lhs != rhs),
            lhs,
            rhs,
            lambda pos: (int(Y2[pos[0]]), int(Y2[pos[1]]), int(X2[pos[2]])),
        )

        # law 4: (k y + (1-k) alpha(x)) . x = k (y.x) + (1-k) x
        for k in range(p):
            argv = add[scl[k][Y2], scl[(1 - k) % p][u]]
            lhs = M[argv[:, None], X2[None, :]]
            law4.count(len(Y2) * len(X2))
            for i, j in np.argwhere(lhs < 0)[:witness_cap]:
                if not ill.full:
                    ill.add((elems[int(argv[i])], elems[int(X2[j])]))
            rhs = add[scl[k][A2c], scl[(1 - k) % p][X2][None, :]]
            valid = A2ok & (lhs >= 0)
            report_grid(
                law4,
                valid & (lhs != rhs),
                lhs,
                rhs,
                lambda pos, _k=k: (_k, int(Y2[pos[0]]), int(X2[pos[1]])),
            )

    report.laws.extend([law1.check, law2.check, law3.check, law4.check, ill.check])
    return report


def verify_structural_consequences(
    v: VectorGroupoid, witness_cap: int = DEFAULT_WITNESS_CAP
) -> AxiomReport:
    """Check the structural consequences of the vector-groupoid laws:
    alpha/beta are epimorphisms onto the base, iota is a linear automorphism,
    the 0-fibres and the isotropy set at 0 are subspaces, 0 is a left/right
    unit on the corresponding fibres, and the two injectivity implications
    for fibre elements."""
    g = v.groupoid
    gi = g._ix()
    space = v.space
    add, scl, neg, zero = _space_arrays(v)
    elems = space.elements
    base_set = set(v.base.elements)
    report = AxiomReport()

    for name, table in (("alpha-epi", g.alpha), ("beta-epi", g.beta)):
        lc = LawCollector(name, witness_cap)
        lc.count(space.n + len(base_set))
        image = set(table.values())
        for x in elems:
            if table[x] not in base_set:
                if not lc.full:
                    lc.add((x,), actual=table[x])
        for u in v.base.elements:
            if u not in image and not lc.full:
                lc.add((u,), expected=u)
        report.laws.append(lc.check)

    lc = LawCollector("iota-automorphism", witness_cap)
    lc.count(space.n)
    if len(set(g.inv.values())) != space.n:
        seen: dict = {}
        for x in elems:
            y = g.inv[x]
            if y in seen and not lc.full:
                lc.add((seen[y], x), actual=y)
            seen[y] = x
    linear = check_linear(g.inv, space, space, witness_cap, law="iota-automorphism")
    lc.check.examined += linear.laws[0].examined
    lc.check.witnesses.extend(linear.laws[0].witnesses[: witness_cap - len(lc.check.witnesses)])
    report.laws.append(lc.check)

    fa = np.nonzero(gi.alpha == zero)[0]
    fb = np.nonzero(gi.beta == zero)[0]
    v0 = np.nonzero((gi.alpha == zero) & (gi.beta == zero))[0]
    p = space.field.modulus
    for name, F in (
        ("fibre-alpha-subspace", fa),
        ("fibre-beta-subspace", fb),
        ("isotropy-zero-subspace", v0),
    ):
        lc = LawCollector(name, witness_cap)
        mask = np.zeros(space.n, dtype=bool)
        mask[F] = True
        lc.count(len(F) ** 2 + p * len(F) + 1)
        if not mask[zero] and not lc.full:
            lc.add((space.zero,), expected=space.zero)
        if len(F):
            sub = add[np.ix_(F, F)]
            for i, j in np.argwhere(~mask[sub])[:witness_cap]:
                if not lc.full:
                    lc.add(
                        (elems[int(F[i])], elems[int(F[j])]),
                        actual=elems[int(sub[i, j])],
                    )
            sub = scl[:, F]
            for k, i in np.argwhere(~mask[sub])[:witness_cap]:
                if not lc.full:
                    lc.add((int(k), elems[int(F[i])]), actual=elems[int(sub[k, i])])
        report.laws.append(lc.check)

    M = gi.M
    lc = LawCollector("left-unit-zero", witness_cap)
    lc.count(len(fa))
    got = M[zero, fa]
    for (i,) in np.argwhere(got != fa)[:witness_cap]:
        i = int(i)
        lc.add(
            (elems[int(fa[i])],),
            expected=elems[int(fa[i])],
            actual=elems[int(got[i])] if got[i] >= 0 else None,
        )
    report.laws.append(lc.check)

    lc = LawCollector("right-unit-zero", witness_cap)
    lc.count(len(fb))
    got = M[fb, zero]
    for (i,) in np.argwhere(got != fb)[:witness_cap]:
        i = int(i)
        lc.add(
            (elems[int(fb[i])],),
            expected=elems[int(fb[i])],
            actual=elems[int(got[i])] if got[i] >= 0 else None,
        )
    report.laws.append(lc.check)

    # Injectivity implications: x - alpha(x) on the beta-fibre, x - beta(x)
    # on the alpha-fibre, each determine x.
    for name, F, other in (
        ("prop3.1(iii)", fb, gi.alpha),
        ("prop3.1(iv)", fa, gi.beta),
    ):
        lc = LawCollector(name, witness_cap)
        lc.count(len(F) * (len(F) - 1) // 2)
        t = add[F, neg[other[F]]]
        seen: dict = {}
        for pos, ti in zip(F, t):
            ti = int(ti)
            if ti in seen and not lc.full:
                lc.add((elems[int(seen[ti])], elems[int(pos)]), actual=elems[ti])
            seen.setdefault(ti, pos)
        report.laws.append(lc.check)
    return report


@dataclass
class FibreTranslation:
    """A verified linear bijection between the two 0-fibres."""

    direction: str  # "beta" (alpha-fibre -> beta-fibre) or "alpha" (reverse)
    table: dict
    domain: tuple
    codomain: tuple

    def __call__(self, x):
        return self.table[x]


def fibre_translations(v: VectorGroupoid, witness_cap: int = DEFAULT_WITNESS_CAP):
    """Build t_beta(x) = beta(x) - x and t_alpha(x) = alpha(x) - x on the
    0-fibres, verifying linearity, bijectivity, and mutual inversion."""
    g = v.groupoid
    gi = g._ix()
    space = v.space
    add, scl, neg, zero = _space_arrays(v)
    elems = space.elements
    fa = np.nonzero(gi.alpha == zero)[0]
    fb = np.nonzero(gi.beta == zero)[0]
    tb = add[gi.beta[fa], neg[fa]]    # beta(x) - x on alpha fibre
    ta = add[gi.alpha[fb], neg[fb]]   # alpha(x) - x on beta fibre

    fb_set = set(int(i) for i in fb)
    fa_set = set(int(i) for i in fa)
    if not all(int(i) in fb_set for i in tb):
        raise VerificationFailed("t_beta image leaves the beta fibre")
    if not all(int(i) in fa_set for i in ta):
        raise VerificationFailed("t_alpha image leaves the alpha fibre")
    if len(set(tb.tolist())) != len(fa) or len(fa) != len(fb):
        raise VerificationFailed("t_beta is not bijective")
    if len(set(ta.tolist())) != len(fb):
        raise VerificationFailed("t_alpha is not bijective")

    # mutual inversion
    pos_in_fb = {int(x): i for i, x in enumerate(fb)}
    pos_in_fa = {int(x): i for i, x in enumerate(fa)}
    for i, x in enumerate(fa):
        if int(ta[pos_in_fb[int(tb[i])]]) != int(x):
            raise VerificationFailed("t_alpha o t_beta is not the identity")
    for i, x in enumerate(fb):
        if int(tb[pos_in_fa[int(ta[i])]]) != int(x):
            raise VerificationFailed("t_beta o t_alpha is not the identity")

    # linearity over the fibres
    p = space.field.modulus
    full_tb = add[gi.beta, neg[np.arange(space.n)]]
    full_ta = add[gi.alpha, neg[np.arange(space.n)]]
    for F, full in ((fa, full_tb), (fb, full_ta)):
        for a in range(p):
            for b in range(p):
                combo = add[scl[a][F][:, None], scl[b][F][None, :]]
                lhs = full[combo]
                rhs = add[scl[a][full[F]][:, None], scl[b][full[F]][None, :]]
                if not np.array_equal(lhs, rhs):
                    raise VerificationFailed("fibre translation is not linear")

    t_beta = FibreTranslation(
        "beta",
        {elems[int(x)]: elems[int(y)] for x, y in zip(fa, tb)},
        tuple(elems[int(i)] for i in fa),
        tuple(elems[int(i)] for i in fb),
    )
    t_alpha = FibreTranslation(
        "alpha",
        {elems[int(x)]: elems[int(y)] for x, y in zip(fb, ta)},
        tuple(elems[int(i)] for i in fb),
        tuple(elems[int(i)] for i in fa),
    )
    return t_beta, t_alpha


def isotropy_vector_groupoid(v: VectorGroupoid, u) -> VectorGroupoid:
    """The isotropy group at u re-equipped with the shifted vector operations
    (zero = u) and the conjugated multiplication; a single-unit vector
    groupoid over the same field."""
    g = v.groupoid
    if u not in set(g.units):
        raise NotAUnit(f"{u!r} is not a unit")
    space = v.space
    members = tuple(
        x for x in g.carrier if g.alpha[x] == u and g.beta[x] == u
    )

    def box_add(x, y):
        return space.sub(space.add(x, y), u)

    def box_scale(k, x):
        p = space.field.modulus
        return space.add(space.scale(k, x), space.scale((1 - k) % p, u))

    iso_space = SpaceFromOps(space.field, members, box_add, box_scale, u)

    mset = set(members)
    mul = {}
    for x in members:
        for y in members:
            inner = g.mul.get((space.sub(x, u), space.sub(y, u)))
            if inner is None:
                raise VerificationFailed(
                    "shifted product undefined; the isotropy construction "
                    "requires a verified vector groupoid"
                )
            z = space.add(inner, u)
            if z not in mset:
                raise VerificationFailed("shifted product leaves the isotropy set")
            mul[(x, y)] = z
    for x in members:
        if g.inv[x] not in mset:
            raise VerificationFailed("inversion leaves the isotropy set")

    iso_g = build_groupoid(
        members,
        {x: u for x in members},
        {x: u for x in members},
        mul,
        {x: g.inv[x] for x in members},
        (u,),
    )
    base = RestrictedSpace(iso_space, (u,))
    return VectorGroupoid(iso_space, base, iso_g)
