"""Groupoid morphisms, strong morphisms (homomorphisms), and vector groupoid
morphisms, with exhaustive verification; plus the anchor map, the signature
map on the symmetry groupoid, Whitney projections, and the universal property
of the Whitney sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    DEFAULT_MAX_CARRIER,
    pair_vg,
    sign_group,
    symmetry_groupoid,
    whitney_sum,
)
from .errors import (
    CarrierMismatch,
    DomainMismatch,
    ImageOutsidePullback,
    PartialMap,
    UnknownElement,
    VerificationFailed,
)
from .groupoid import FiniteGroupoid
from .report import DEFAULT_WITNESS_CAP, AxiomReport, LawCollector
from .spaces import check_linear
from .vgroupoid import VectorGroupoid


@dataclass
class GroupoidMorphism:
    """A total element map between groupoid carriers.

    The unit map f0 is always the restriction of f to the units; a
    user-supplied f0 disagreeing with that restriction is rejected.
    ``target_vg`` optionally carries the vector structure of the target when
    the morphism was produced by a construction that knows it.
    """

    source: FiniteGroupoid
    target: FiniteGroupoid
    f: dict
    f0: dict = field(default_factory=dict)
    target_vg: VectorGroupoid | None = None

    def __call__(self, x):
        return self.f[x]


def build_morphism(
    source: FiniteGroupoid,
    target: FiniteGroupoid,
    f,
    f0: dict | None = None,
    target_vg: VectorGroupoid | None = None,
) -> GroupoidMorphism:
    """Checked constructor: f total on the source, values in the target,
    f0 derived from (and consistent with) f restricted to the units."""
    if callable(f) and not hasattr(f, "__getitem__"):
        f = {x: f(x) for x in source.carrier}
    else:
        f = dict(f)
    tset = set(target.carrier)
    for x in source.carrier:
        if x not in f:
            raise PartialMap(f"morphism undefined on {x!r}")
        if f[x] not in tset:
            raise UnknownElement(f"morphism value {f[x]!r} outside target carrier")
    derived = {u: f[u] for u in source.units}
    if f0 is not None:
        for u, v in dict(f0).items():
            if u not in derived or derived[u] != v:
                raise DomainMismatch(
                    f"supplied unit map disagrees with f restricted to units at {u!r}"
                )
    return GroupoidMorphism(source, target, f, derived, target_vg)


def _fidx(m: GroupoidMorphism) -> np.ndarray:
    six = m.source._ix()
    tix = m.target._ix()
    return np.array([tix.of[m.f[x]] for x in m.source.carrier], dtype=np.int32)


def verify_morphism(
    m: GroupoidMorphism, witness_cap: int = DEFAULT_WITNESS_CAP
) -> AxiomReport:
    """Check the defining morphism conditions and cross-validate the derived
    identities.

    Laws: "def2.2(i)" composability is preserved; "def2.2(ii)" products are
    preserved; "prop2.3(a)" inversion is preserved; "prop2.3(b)" units map to
    units; "prop2.4(i)" the source/target maps intertwine; "eq(2.1)" the four
    commutation relations taken together.
    """
    six = m.source._ix()
    tix = m.target._ix()
    fidx = _fidx(m)
    n = six.n
    report = AxiomReport()
    comp_up = six.beta[:, None] == six.alpha[None, :]
    comp_down = tix.beta[fidx][:, None] == tix.alpha[fidx][None, :]

    lc = LawCollector("def2.2(i)", witness_cap)
    lc.count(int(comp_up.sum()))
    for i, j in np.argwhere(comp_up & ~comp_down)[:witness_cap]:
        lc.add((six.elem(i), six.elem(j)))
    report.laws.append(lc.check)

    lc = LawCollector("def2.2(ii)", witness_cap)
    lc.count(int(comp_up.sum()))
    down = tix.M[fidx[:, None], fidx[None, :]]
    up = six.M
    lhs = np.where(up >= 0, fidx[np.maximum(up, 0)], -2)
    bad = comp_up & comp_down & (lhs != down)
    for i, j in np.argwhere(bad)[:witness_cap]:
        i, j = int(i), int(j)
        lc.add(
            (six.elem(i), six.elem(j)),
            expected=tix.elem(down[i, j]) if down[i, j] >= 0 else None,
            actual=tix.elem(lhs[i, j]) if lhs[i, j] >= 0 else None,
        )
    report.laws.append(lc.check)

    rng = np.arange(n)
    lc = LawCollector("prop2.3(a)", witness_cap)
    lc.count(n)
    lhs = fidx[six.inv]
    rhs = tix.inv[fidx]
    for (i,) in np.argwhere(lhs != rhs)[:witness_cap]:
        i = int(i)
        lc.add((six.elem(i),), expected=tix.elem(rhs[i]), actual=tix.elem(lhs[i]))
    report.laws.append(lc.check)

    lc = LawCollector("prop2.3(b)", witness_cap)
    lc.count(len(six.unit_idx))
    for i in six.unit_idx:
        if not tix.unit_mask[fidx[i]] and not lc.full:
            lc.add((six.elem(i),), actual=tix.elem(fidx[i]))
    report.laws.append(lc.check)

    lc = LawCollector("prop2.4(i)", witness_cap)
    lc.count(2 * n)
    for smap, tmap in ((six.alpha, tix.alpha), (six.beta, tix.beta)):
        lhs = tmap[fidx]
        rhs = fidx[smap]
        for (i,) in np.argwhere(lhs != rhs)[:witness_cap]:
            if lc.full:
                break
            i = int(i)
            lc.add((six.elem(i),), expected=tix.elem(rhs[i]), actual=tix.elem(lhs[i]))
    report.laws.append(lc.check)

    # eq (2.1): the four relations bundled, exhaustively
    lc = LawCollector("eq(2.1)", witness_cap)
    lc.count(3 * n + int(comp_up.sum()))
    ok = (
        np.array_equal(tix.alpha[fidx], fidx[six.alpha])
        and np.array_equal(tix.beta[fidx], fidx[six.beta])
        and np.array_equal(tix.inv[fidx], fidx[six.inv])
    )
    prod_bad = comp_up & (
        (down < 0) | (np.where(up >= 0, fidx[np.maximum(up, 0)], -2) != down)
    )
    if not ok:
        for arr_l, arr_r in (
            (tix.alpha[fidx], fidx[six.alpha]),
            (tix.beta[fidx], fidx[six.beta]),
            (tix.inv[fidx], fidx[six.inv]),
        ):
            for (i,) in np.argwhere(arr_l != arr_r)[:witness_cap]:
                if lc.full:
                    break
                i = int(i)
                lc.add((six.elem(i),), expected=tix.elem(arr_r[i]), actual=tix.elem(arr_l[i]))
    for i, j in np.argwhere(prod_bad)[:witness_cap]:
        if lc.full:
            break
        lc.add((six.elem(i), six.elem(j)))
    report.laws.append(lc.check)
    return report


def verify_homomorphism(
    m: GroupoidMorphism, witness_cap: int = DEFAULT_WITNESS_CAP
) -> AxiomReport:
    """Check the strong-morphism relation: images composable implies the
    originals composable.  Witnesses are pairs composable downstairs but not
    upstairs."""
    six = m.source._ix()
    tix = m.target._ix()
    fidx = _fidx(m)
    comp_up = six.beta[:, None] == six.alpha[None, :]
    comp_down = tix.beta[fidx][:, None] == tix.alpha[fidx][None, :]
    lc = LawCollector(
        "rel2.2",
        witness_cap,
        note="pairs composable downstairs but not upstairs",
    )
    lc.count(six.n * six.n)
    for i, j in np.argwhere(comp_down & ~comp_up)[:witness_cap]:
        lc.add((six.elem(i), six.elem(j)))
    return AxiomReport([lc.check])


def validate_noncomposability_witness(m: GroupoidMorphism, x, y) -> bool:
    """True iff (x, y) is a genuine counterexample to the strong-morphism
    relation: (f(x), f(y)) is composable in the target but (x, y) is not
    composable in the source."""
    if x not in m.f or y not in m.f:
        raise UnknownElement("witness element outside source carrier")
    return m.target.composable(m.f[x], m.f[y]) and not m.source.composable(x, y)


def verify_vector_morphism(
    m: GroupoidMorphism,
    src: VectorGroupoid,
    dst: VectorGroupoid,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> AxiomReport:
    """A vector groupoid morphism is a groupoid morphism that is also linear
    between the carrier spaces."""
    if tuple(m.source.carrier) != tuple(src.space.elements):
        raise CarrierMismatch("source carrier does not match the source space")
    if tuple(m.target.carrier) != tuple(dst.space.elements):
        raise CarrierMismatch("target carrier does not match the target space")
    report = verify_morphism(m, witness_cap)
    report.extend(
        check_linear(m.f, src.space, dst.space, witness_cap, law="def3.2-linear")
    )
    return report


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return build_morphism(g, g, {x: x for x in g.carrier})


def compose_morphisms(
    m2: GroupoidMorphism, m1: GroupoidMorphism
) -> GroupoidMorphism:
    """m2 after m1."""
    if m1.target is not m2.source and tuple(m1.target.carrier) != tuple(
        m2.source.carrier
    ):
        raise CarrierMismatch("inner carriers do not match")
    return build_morphism(
        m1.source,
        m2.target,
        {x: m2.f[m1.f[x]] for x in m1.source.carrier},
        target_vg=m2.target_vg,
    )


def anchor_morphism(
    v: VectorGroupoid, max_carrier: int = DEFAULT_MAX_CARRIER
) -> GroupoidMorphism:
    """x -> (alpha(x), beta(x)), from v into the pair groupoid of its base."""
    target = pair_vg(v.base, max_carrier=max_carrier)
    g = v.groupoid
    return build_morphism(
        g,
        target.groupoid,
        {x: (g.alpha[x], g.beta[x]) for x in g.carrier},
        target_vg=target,
    )


def sgn_sharp(n: int) -> GroupoidMorphism:
    """The signature map from the symmetry groupoid of degree n to the
    two-element group {+1, -1} regarded as a groupoid over {+1}."""
    src = symmetry_groupoid(n)
    dst = sign_group()
    return build_morphism(src, dst, {f: f.sign() for f in src.carrier})


def whitney_projections(
    w: VectorGroupoid, v: VectorGroupoid, v2: VectorGroupoid
) -> tuple[GroupoidMorphism, GroupoidMorphism]:
    """The two componentwise projections of a Whitney sum onto its factors."""
    g = w.groupoid
    p1 = build_morphism(g, v.groupoid, {e: e[0] for e in g.carrier}, target_vg=v)
    p2 = build_morphism(g, v2.groupoid, {e: e[1] for e in g.carrier}, target_vg=v2)
    return p1, p2


def whitney_universal(
    u: VectorGroupoid,
    q: GroupoidMorphism,
    q2: GroupoidMorphism,
    v: VectorGroupoid,
    v2: VectorGroupoid,
    max_carrier: int = DEFAULT_MAX_CARRIER,
) -> tuple[GroupoidMorphism, VectorGroupoid]:
    """The pairing phi(x) = (q(x), q2(x)) into the Whitney sum of v and v2,
    with both commutation equations checked.

    Raises ImageOutsidePullback when some pair violates the alpha/beta
    matching constraints (the given morphisms were not base-compatible).
    """
    w = whitney_sum(v, v2, max_carrier=max_carrier)
    wset = set(w.groupoid.carrier)
    table = {}
    for x in u.groupoid.carrier:
        e = (q.f[x], q2.f[x])
        if e not in wset:
            raise ImageOutsidePullback(
                f"phi({x!r}) = {e!r} violates the pullback constraints"
            )
        table[x] = e
    phi = build_morphism(u.groupoid, w.groupoid, table, target_vg=w)
    p1, p2 = whitney_projections(w, v, v2)
    for x in u.groupoid.carrier:
        if p1.f[phi.f[x]] != q.f[x] or p2.f[phi.f[x]] != q2.f[x]:
            raise VerificationFailed("projection equations fail for the pairing")
    return phi, w
