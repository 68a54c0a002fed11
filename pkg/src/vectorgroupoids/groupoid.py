"""Finite Brandt groupoids: representation, axiom sweeps, isotropy, bundles.

A groupoid is stored verbatim as lookup tables over an indexed carrier.
``build_groupoid`` validates only well-formedness (totality, mul domain);
the axioms are checked separately by ``verify_brandt`` / ``verify_calculus``
so that deliberately broken structures can be built for mutation testing.

The sweeps run on numpy index tables; the partial multiplication becomes an
n x n matrix with -1 marking non-composable pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    MulDomainMismatch,
    NotAUnit,
    PartialMap,
    UnknownElement,
    VerificationFailed,
)
from .report import DEFAULT_WITNESS_CAP, AxiomReport, LawCollector


@dataclass
class FiniteGroupoid:
    """Carrier plus structure tables alpha, beta, mul, inv and the unit set.

    Instances built through :func:`build_groupoid` are well-formed; direct
    construction skips all checks (used to seed mutations in tests).
    """

    carrier: tuple
    alpha: dict
    beta: dict
    mul: dict
    inv: dict
    units: tuple

    def index(self, x) -> int:
        try:
            return self._ix().of[x]
        except KeyError:
            raise UnknownElement(f"{x!r} not in carrier") from None

    def composable(self, x, y) -> bool:
        if x not in self._ix().of or y not in self._ix().of:
            raise UnknownElement("element outside carrier")
        return self.beta[x] == self.alpha[y]

    def alpha_fibre(self, u) -> tuple:
        if u not in set(self.units):
            raise NotAUnit(f"{u!r} is not a unit")
        return tuple(x for x in self.carrier if self.alpha[x] == u)

    def beta_fibre(self, u) -> tuple:
        if u not in set(self.units):
            raise NotAUnit(f"{u!r} is not a unit")
        return tuple(x for x in self.carrier if self.beta[x] == u)

    def anchor(self, x) -> tuple:
        return (self.alpha[x], self.beta[x])

    @property
    def n(self) -> int:
        return len(self.carrier)

    def _ix(self) -> "_Index":
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = _Index(self)
            self._index_cache = cached
        return cached


class _Index:
    """Numpy view of a groupoid: int arrays for the maps, -1-padded mul matrix."""

    def __init__(self, g: FiniteGroupoid):
        self.g = g
        self.n = len(g.carrier)
        self.of = {e: i for i, e in enumerate(g.carrier)}
        of = self.of

        def arr(table):
            try:
                return np.array([of[table[x]] for x in g.carrier], dtype=np.int32)
            except KeyError as exc:
                raise UnknownElement(f"map value {exc.args[0]!r} outside carrier") from None

        self.alpha = arr(g.alpha)
        self.beta = arr(g.beta)
        self.inv = arr(g.inv)
        self.unit_idx = np.array(sorted(of[u] for u in g.units), dtype=np.int32)
        self.unit_mask = np.zeros(self.n, dtype=bool)
        self.unit_mask[self.unit_idx] = True
        M = np.full((self.n, self.n), -1, dtype=np.int32)
        for (x, y), z in g.mul.items():
            M[of[x], of[y]] = of[z]
        self.M = M

    def elem(self, i) -> object:
        return self.g.carrier[int(i)]


def _as_table(m, carrier) -> dict:
    if callable(m) and not hasattr(m, "__getitem__"):
        return {x: m(x) for x in carrier}
    return dict(m)


def build_groupoid(carrier, alpha, beta, mul, inv, units) -> FiniteGroupoid:
    """Checked constructor: totality of the maps and exactness of the mul domain.

    No axioms are assumed; run ``verify_brandt`` on the result.
    """
    carrier = tuple(carrier)
    cset = set(carrier)
    if len(cset) != len(carrier):
        raise UnknownElement("carrier contains duplicates")
    alpha = _as_table(alpha, carrier)
    beta = _as_table(beta, carrier)
    inv = _as_table(inv, carrier)
    for name, table in (("alpha", alpha), ("beta", beta), ("inv", inv)):
        missing = [x for x in carrier if x not in table]
        if missing:
            raise PartialMap(f"{name} undefined on {missing[0]!r}")
        for x in carrier:
            if table[x] not in cset:
                raise UnknownElement(f"{name}({x!r}) = {table[x]!r} outside carrier")
    units = tuple(units)
    for u in units:
        if u not in cset:
            raise UnknownElement(f"declared unit {u!r} outside carrier")

    by_alpha: dict = {}
    for y in carrier:
        by_alpha.setdefault(alpha[y], []).append(y)
    if callable(mul) and not hasattr(mul, "__getitem__"):
        mul = {
            (x, y): mul(x, y)
            for x in carrier
            for y in by_alpha.get(beta[x], ())
        }
    else:
        mul = dict(mul)
        expected = sum(len(by_alpha.get(beta[x], ())) for x in carrier)
        for (x, y) in mul:
            if x not in cset or y not in cset:
                raise UnknownElement(f"mul key ({x!r}, {y!r}) outside carrier")
            if beta[x] != alpha[y]:
                raise MulDomainMismatch(
                    f"mul defined on non-composable pair ({x!r}, {y!r})"
                )
        if len(mul) != expected:
            raise MulDomainMismatch(
                f"mul defined on {len(mul)} pairs, composable set has {expected}"
            )
    for z in mul.values():
        if z not in cset:
            raise UnknownElement(f"mul value {z!r} outside carrier")
    return FiniteGroupoid(carrier, alpha, beta, mul, inv, units)


def composable(g: FiniteGroupoid, x, y) -> bool:
    return g.composable(x, y)


# ---------------------------------------------------------------------------
# verification sweeps


def _collect_mask(lc: LawCollector, ix: _Index, mask, *spec):
    """Turn a violation mask into element witnesses.

    Each spec entry is (array, dim): the witness component is the element at
    index array[pos[dim]] for each violating position pos.
    """
    for pos in np.argwhere(mask)[: lc.cap]:
        if lc.full:
            break
        inputs = tuple(ix.elem(arr[int(pos[dim])]) for arr, dim in spec)
        lc.add(inputs)


def verify_brandt(g: FiniteGroupoid, witness_cap: int = DEFAULT_WITNESS_CAP) -> AxiomReport:
    """Exhaustive check of the Brandt groupoid laws.

    Law families: alpha/beta surjectivity onto the unit set, the mul-domain
    condition (defined exactly on composable pairs), units (G2), inverses
    (G3), and associativity (G1) including both definedness directions.
    """
    ix = g._ix()
    n = ix.n
    M = ix.M
    D = M >= 0
    rng = np.arange(n)
    report = AxiomReport()

    for name, arr in (("alpha-onto-units", ix.alpha), ("beta-onto-units", ix.beta)):
        lc = LawCollector(name, witness_cap)
        lc.count(n + len(ix.unit_idx))
        off = ~ix.unit_mask[arr]
        for (i,) in np.argwhere(off)[:witness_cap]:
            lc.add((ix.elem(i),), actual=ix.elem(arr[int(i)]))
        image = set(arr.tolist())
        for u in ix.unit_idx:
            if int(u) not in image and not lc.full:
                lc.add((ix.elem(u),), expected=ix.elem(u))
        report.laws.append(lc.check)

    lc = LawCollector("domain", witness_cap)
    comp = ix.beta[:, None] == ix.alpha[None, :]
    lc.count(n * n)
    _collect_mask(lc, ix, D != comp, (rng, 0), (rng, 1))
    report.laws.append(lc.check)

    lc = LawCollector("G2", witness_cap)
    lc.count(2 * n)
    left = M[ix.alpha, rng]
    right = M[rng, ix.beta]
    _collect_mask(lc, ix, (left != rng) | (right != rng), (rng, 0))
    report.laws.append(lc.check)

    lc = LawCollector("G3", witness_cap)
    lc.count(2 * n)
    left = M[ix.inv, rng]   # x^-1 . x, should be beta(x)
    right = M[rng, ix.inv]  # x . x^-1, should be alpha(x)
    _collect_mask(lc, ix, (left != ix.beta) | (right != ix.alpha), (rng, 0))
    report.laws.append(lc.check)

    report.laws.append(_g1_sweep(ix, witness_cap))
    return report


def _g1_sweep(ix: _Index, witness_cap: int):
    """Associativity over every triple where either side is defined."""
    M, n = ix.M, ix.n
    D = M >= 0
    px, py = np.nonzero(D)
    pw = M[px, py]
    order = np.argsort(pw, kind="stable")
    spx, spy, spw = px[order], py[order], pw[order]
    uniq, starts = np.unique(spw, return_index=True)
    ends = np.append(starts[1:], len(spw))

    lc = LawCollector("G1", witness_cap)
    found: list[tuple[int, int, int, int, int]] = []
    left_count = right_count = both_count = 0

    # triples with the left side (x.y).z defined, grouped by w = x.y
    for w, s, e in zip(uniq, starts, ends):
        Z = np.nonzero(D[w])[0]
        m = e - s
        left_count += m * len(Z)
        if len(Z) == 0:
            continue
        xs, ys = spx[s:e], spy[s:e]
        lhs = M[w, Z]
        yz = M[ys[:, None], Z[None, :]]
        rhs = np.where(yz >= 0, M[xs[:, None], np.maximum(yz, 0)], -1)
        ok = rhs >= 0
        both_count += int(ok.sum())
        viol = (~ok) | (rhs != lhs[None, :])
        if viol.any():
            for i, j in np.argwhere(viol)[:witness_cap]:
                i, j = int(i), int(j)
                found.append(
                    (int(xs[i]), int(ys[i]), int(Z[j]), int(lhs[j]), int(rhs[i, j]))
                )

    # triples with the right side x.(y.z) defined but the left side not
    for w, s, e in zip(uniq, starts, ends):
        X = np.nonzero(D[:, w])[0]
        m = e - s
        right_count += len(X) * m
        if len(X) == 0:
            continue
        ys, zs = spx[s:e], spy[s:e]
        xy = M[X[:, None], ys[None, :]]
        lhs = np.where(xy >= 0, M[np.maximum(xy, 0), zs[None, :]], -1)
        viol = lhs < 0
        if viol.any():
            rv = M[X, w]
            for i, j in np.argwhere(viol)[:witness_cap]:
                i, j = int(i), int(j)
                found.append(
                    (int(X[i]), int(ys[j]), int(zs[j]), -1, int(rv[i]))
                )

    lc.count(left_count + right_count - both_count)
    found.sort()
    for x, y, z, lv, rv in found[:witness_cap]:
        lc.add(
            (ix.elem(x), ix.elem(y), ix.elem(z)),
            expected=ix.elem(lv) if lv >= 0 else None,
            actual=ix.elem(rv) if rv >= 0 else None,
        )
    return lc.check


def verify_calculus(g: FiniteGroupoid, witness_cap: int = DEFAULT_WITNESS_CAP) -> AxiomReport:
    """Check the derived calculus rules (unit behavior, source/target of
    products and inverses, cancellation, involution, antimorphism of the
    inverse, the two division identities, and the inverse/anchor identities).

    These rules are theorems in any Brandt groupoid, so a failure here means
    the structure tables are inconsistent, not that an axiom is refutable;
    the report says so.
    """
    ix = g._ix()
    n = ix.n
    M = ix.M
    D = M >= 0
    rng = np.arange(n)
    px, py = np.nonzero(D)
    pm = M[px, py]
    report = AxiomReport(
        note="calculus rules are derivable; failures indicate a table inconsistency"
    )

    lc = LawCollector("calc-i", witness_cap)
    lc.count(4 * len(ix.unit_idx))
    u = ix.unit_idx
    bad = (
        (ix.alpha[u] != u)
        | (ix.beta[u] != u)
        | (M[u, u] != u)
        | (ix.inv[u] != u)
    )
    _collect_mask(lc, ix, bad, (u, 0))
    report.laws.append(lc.check)

    lc = LawCollector("calc-ii", witness_cap)
    lc.count(2 * len(px))
    bad = (ix.alpha[pm] != ix.alpha[px]) | (ix.beta[pm] != ix.beta[py])
    _collect_mask(lc, ix, bad, (px, 0), (py, 0))
    report.laws.append(lc.check)

    lc = LawCollector("calc-iii", witness_cap)
    lc.count(2 * n)
    bad = (ix.alpha[ix.inv] != ix.beta) | (ix.beta[ix.inv] != ix.alpha)
    _collect_mask(lc, ix, bad, (rng, 0))
    report.laws.append(lc.check)

    report.laws.append(_cancellation_sweep(ix, witness_cap))

    lc = LawCollector("calc-v", witness_cap)
    lc.count(n)
    _collect_mask(lc, ix, ix.inv[ix.inv] != rng, (rng, 0))
    report.laws.append(lc.check)

    lc = LawCollector("calc-vi", witness_cap)
    lc.count(len(px))
    rev = M[ix.inv[py], ix.inv[px]]
    bad = (rev < 0) | (rev != ix.inv[pm])
    _collect_mask(lc, ix, bad, (px, 0), (py, 0))
    report.laws.append(lc.check)

    lc = LawCollector("calc-vii", witness_cap)
    lc.count(2 * len(px))
    back1 = M[ix.inv[px], pm]   # x^-1 . (x.y) = y
    back2 = M[pm, ix.inv[py]]   # (x.y) . y^-1 = x
    bad = (back1 != py) | (back2 != px)
    _collect_mask(lc, ix, bad, (px, 0), (py, 0))
    report.laws.append(lc.check)

    for name, lhs, rhs in (
        ("iota-alpha", ix.alpha[ix.inv], ix.beta),
        ("iota-beta", ix.beta[ix.inv], ix.alpha),
        ("iota-involution", ix.inv[ix.inv], rng),
    ):
        lc = LawCollector(name, witness_cap)
        lc.count(n)
        _collect_mask(lc, ix, lhs != rhs, (rng, 0))
        report.laws.append(lc.check)
    return report


def _cancellation_sweep(ix: _Index, witness_cap: int):
    """Prop-style cancellation on both sides (calc-iv)."""
    M = ix.M
    D = M >= 0
    lc = LawCollector("calc-iv", witness_cap)
    for axis, name in ((1, "left"), (0, "right")):
        for i in range(ix.n):
            row = M[i] if axis == 1 else M[:, i]
            defined = np.nonzero(row >= 0)[0]
            c = len(defined)
            lc.count(c * (c - 1) // 2)
            vals = row[defined]
            if len(np.unique(vals)) == c:
                continue
            order = np.argsort(vals, kind="stable")
            sv, sd = vals[order], defined[order]
            dup = np.nonzero(sv[1:] == sv[:-1])[0]
            for d in dup[:witness_cap]:
                if lc.full:
                    break
                a, b = sorted((int(sd[d]), int(sd[d + 1])))
                if axis == 1:
                    lc.add((ix.elem(i), ix.elem(a), ix.elem(b)), actual=ix.elem(sv[d]))
                else:
                    lc.add((ix.elem(a), ix.elem(b), ix.elem(i)), actual=ix.elem(sv[d]))
    return lc.check


# ---------------------------------------------------------------------------
# isotropy, transitivity, bundles


@dataclass
class IsotropyGroup:
    """The group G(u) of arrows with both source and target at u."""

    base_unit: object
    elements: tuple
    mul: dict
    identity: object
    inv: dict

    @property
    def order(self) -> int:
        return len(self.elements)


def isotropy_group(g: FiniteGroupoid, u) -> IsotropyGroup:
    """Extract G(u) and verify the group axioms exhaustively."""
    if u not in set(g.units):
        raise NotAUnit(f"{u!r} is not a unit")
    members = tuple(x for x in g.carrier if g.alpha[x] == u and g.beta[x] == u)
    mset = set(members)
    mul = {}
    for x in members:
        for y in members:
            z = g.mul.get((x, y))
            if z is None or z not in mset:
                raise VerificationFailed(
                    f"isotropy set at {u!r} is not closed under multiplication"
                )
            mul[(x, y)] = z
    inv = {}
    for x in members:
        ixv = g.inv[x]
        if ixv not in mset:
            raise VerificationFailed(f"isotropy set at {u!r} not closed under inversion")
        inv[x] = ixv
        if mul[(x, ixv)] != u or mul[(ixv, x)] != u:
            raise VerificationFailed(f"inverse law fails in isotropy group at {u!r}")
        if mul[(u, x)] != x or mul[(x, u)] != x:
            raise VerificationFailed(f"identity law fails in isotropy group at {u!r}")
    # associativity, vectorized on the index matrix
    k = len(members)
    of = {e: i for i, e in enumerate(members)}
    R = np.array(
        [[of[mul[(x, y)]] for y in members] for x in members], dtype=np.int32
    )
    for i in range(k):
        if not np.array_equal(R[R[i], :], R[i, R]):
            raise VerificationFailed(f"associativity fails in isotropy group at {u!r}")
    return IsotropyGroup(u, members, mul, u, inv)


@dataclass
class GroupIsomorphism:
    """A verified isomorphism between two isotropy groups."""

    source: IsotropyGroup
    target: IsotropyGroup
    mapping: dict

    def __call__(self, z):
        return self.mapping[z]


def conjugation_iso(g: FiniteGroupoid, x) -> GroupIsomorphism:
    """The conjugation map z -> x^-1 . z . x from G(alpha(x)) to G(beta(x)),
    verified bijective and multiplication-preserving."""
    src = isotropy_group(g, g.alpha[x])
    dst = isotropy_group(g, g.beta[x])
    xi = g.inv[x]
    mapping = {}
    for z in src.elements:
        t = g.mul.get((xi, z))
        w = None if t is None else g.mul.get((t, x))
        if w is None or w not in set(dst.elements):
            raise VerificationFailed("conjugation image leaves the target isotropy group")
        mapping[z] = w
    if len(set(mapping.values())) != dst.order or src.order != dst.order:
        raise VerificationFailed("conjugation map is not bijective")
    for z1 in src.elements:
        for z2 in src.elements:
            if mapping[src.mul[(z1, z2)]] != dst.mul[(mapping[z1], mapping[z2])]:
                raise VerificationFailed("conjugation map does not preserve products")
    return GroupIsomorphism(src, dst, mapping)


def is_transitive(g: FiniteGroupoid) -> bool:
    """True iff the anchor map is onto units x units.

    For a transitive groupoid this additionally verifies that all isotropy
    groups are pairwise isomorphic via conjugation.
    """
    seen = {}
    for x in g.carrier:
        seen.setdefault((g.alpha[x], g.beta[x]), x)
    for u in g.units:
        for v in g.units:
            if (u, v) not in seen:
                return False
    for (u, v), x in seen.items():
        conjugation_iso(g, x)
    return True


def is_group_bundle(g: FiniteGroupoid) -> bool:
    return all(g.alpha[x] == g.beta[x] for x in g.carrier)


def isotropy_bundle(g: FiniteGroupoid) -> FiniteGroupoid:
    """The restriction of g to {x : alpha(x) = beta(x)}; a group bundle."""
    members = [x for x in g.carrier if g.alpha[x] == g.beta[x]]
    mset = set(members)
    mul = {
        (x, y): z
        for (x, y), z in g.mul.items()
        if x in mset and y in mset
    }
    return build_groupoid(
        members,
        {x: g.alpha[x] for x in members},
        {x: g.beta[x] for x in members},
        mul,
        {x: g.inv[x] for x in members},
        g.units,
    )
