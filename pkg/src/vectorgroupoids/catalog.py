"""The construction catalog: concrete groupoid and vector-groupoid families
plus the two combinators (direct product, Whitney sum) and the symmetry
groupoid of partial bijections.

Every constructor returns well-formed tables; it does not verify the axioms
itself (run the verifier suites on the result).  Constructions refuse carriers
above a configurable cap, since the associativity sweep is cubic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    BaseMismatch,
    FieldMismatch,
    NotASubspace,
    NotInverse,
    SizeGuard,
    VerificationFailed,
)
from .fields import PrimeField, Subspace
from .groupoid import FiniteGroupoid, build_groupoid
from .spaces import (
    AbstractSpace,
    CoordSpace,
    ProductSpace,
    RestrictedSpace,
    SubspaceSpace,
)
from .vgroupoid import VectorGroupoid

DEFAULT_MAX_CARRIER = 10_000


def _guard(n: int, max_carrier: int):
    if n > max_carrier:
        raise SizeGuard(f"carrier size {n} exceeds the cap of {max_carrier}")


def _make_vg(space, base_elems, alpha, beta, mul, inv) -> VectorGroupoid:
    base = RestrictedSpace(space, base_elems)
    g = build_groupoid(space.elements, alpha, beta, mul, inv, base.elements)
    return VectorGroupoid(space, base, g)


# ---------------------------------------------------------------------------
# single-instance families


def single_unit(space: AbstractSpace, max_carrier: int = DEFAULT_MAX_CARRIER) -> VectorGroupoid:
    """(V, +) as a vector groupoid with one unit 0: every pair composable."""
    _guard(space.n, max_carrier)
    zero = space.zero
    return _make_vg(
        space,
        (zero,),
        lambda x: zero,
        lambda x: zero,
        space.add,
        space.neg,
    )


def null_vg(space: AbstractSpace, max_carrier: int = DEFAULT_MAX_CARRIER) -> VectorGroupoid:
    """Every element a unit; the only products are x . x = x."""
    _guard(space.n, max_carrier)
    ident = lambda x: x
    return _make_vg(space, space.elements, ident, ident, lambda x, y: x, ident)


def pair_vg(space: AbstractSpace, max_carrier: int = DEFAULT_MAX_CARRIER) -> VectorGroupoid:
    """The coarse groupoid on V x V: (x,y) . (y,z) = (x,z), units the diagonal."""
    carrier = ProductSpace(space, space)
    _guard(carrier.n, max_carrier)
    return _make_vg(
        carrier,
        tuple((x, x) for x in space.elements),
        lambda e: (e[0], e[0]),
        lambda e: (e[1], e[1]),
        lambda e, f: (e[0], f[1]),
        lambda e: (e[1], e[0]),
    )


def vpq(
    space: AbstractSpace,
    p_scalar: int,
    q_scalar: int,
    max_carrier: int = DEFAULT_MAX_CARRIER,
) -> VectorGroupoid:
    """The coarse groupoid of type (p, q) on V x V, requiring p*q = 1 in the
    field: units (x, p*x), inversion (x,y) -> (q*y, p*x)."""
    mod = space.field.modulus
    ps, qs = p_scalar % mod, q_scalar % mod
    if (ps * qs) % mod != 1:
        raise NotInverse(p_scalar, q_scalar)
    carrier = ProductSpace(space, space)
    _guard(carrier.n, max_carrier)
    return _make_vg(
        carrier,
        tuple((x, space.scale(ps, x)) for x in space.elements),
        lambda e: (e[0], space.scale(ps, e[0])),
        lambda e: (space.scale(qs, e[1]), e[1]),
        lambda e, f: (e[0], f[1]),
        lambda e: (space.scale(qs, e[1]), space.scale(ps, e[0])),
    )


def v3(space: AbstractSpace, max_carrier: int = DEFAULT_MAX_CARRIER) -> VectorGroupoid:
    """The groupoid on V^3 with (x1,x2,x3).(x2,y2,y3) = (x1,y2,x3+y3) and
    base {(x,x,0)}."""
    carrier = ProductSpace(space, space, space)
    _guard(carrier.n, max_carrier)
    zero = space.zero
    return _make_vg(
        carrier,
        tuple((x, x, zero) for x in space.elements),
        lambda e: (e[0], e[0], zero),
        lambda e: (e[1], e[1], zero),
        lambda e, f: (e[0], f[1], space.add(e[2], f[2])),
        lambda e: (e[1], e[0], space.neg(e[2])),
    )


def trivial_tvg(
    space: AbstractSpace, w: Subspace, max_carrier: int = DEFAULT_MAX_CARRIER
) -> VectorGroupoid:
    """The trivial vector groupoid on W x V x W: middle components add,
    base {(w, 0, w)}."""
    if not isinstance(w, Subspace):
        raise NotASubspace(f"{w!r} is not a subspace")
    dim = getattr(space, "dim", None)
    if w.field != space.field or dim is None or w.ambient_dim != dim:
        raise NotASubspace(
            f"subspace of Z{w.field.modulus}^{w.ambient_dim} does not sit inside {space!r}"
        )
    wspace = SubspaceSpace(w)
    carrier = ProductSpace(wspace, space, wspace)
    _guard(carrier.n, max_carrier)
    zero = space.zero
    return _make_vg(
        carrier,
        tuple((x, zero, x) for x in wspace.elements),
        lambda e: (e[0], zero, e[0]),
        lambda e: (e[2], zero, e[2]),
        lambda e, f: (e[0], space.add(e[1], f[1]), f[2]),
        lambda e: (e[2], space.neg(e[1]), e[0]),
    )


# ---------------------------------------------------------------------------
# combinators


def direct_product(
    v: VectorGroupoid, w: VectorGroupoid, max_carrier: int = DEFAULT_MAX_CARRIER
) -> VectorGroupoid:
    """Componentwise product structure on the product carrier."""
    if v.field != w.field:
        raise FieldMismatch("operands over different fields")
    space = ProductSpace(v.space, w.space)
    _guard(space.n, max_carrier)
    gv, gw = v.groupoid, w.groupoid

    def mul(e, f):
        a = gv.mul.get((e[0], f[0]))
        b = gw.mul.get((e[1], f[1]))
        if a is None or b is None:
            raise VerificationFailed(
                "componentwise product undefined on a composable pair; "
                "operands are not groupoids"
            )
        return (a, b)

    base = tuple(
        itertools.product(v.base.elements, w.base.elements)
    )
    return _make_vg(
        space,
        base,
        lambda e: (gv.alpha[e[0]], gw.alpha[e[1]]),
        lambda e: (gv.beta[e[0]], gw.beta[e[1]]),
        mul,
        lambda e: (gv.inv[e[0]], gw.inv[e[1]]),
    )


def whitney_sum(
    v: VectorGroupoid, v2: VectorGroupoid, max_carrier: int = DEFAULT_MAX_CARRIER
) -> VectorGroupoid:
    """The pullback of two vector groupoids over the same base: pairs whose
    alpha images and beta images agree, with componentwise structure.

    A pair of pairs is composable when beta of the first equals alpha of the
    second, componentwise.
    """
    if v.field != v2.field:
        raise BaseMismatch("operands over different fields")
    if tuple(v.base.elements) != tuple(v2.base.elements):
        raise BaseMismatch("operands have different bases")
    g1, g2 = v.groupoid, v2.groupoid
    ambient = ProductSpace(v.space, v2.space)
    members = tuple(
        e
        for e in ambient.elements
        if g1.alpha[e[0]] == g2.alpha[e[1]] and g1.beta[e[0]] == g2.beta[e[1]]
    )
    _guard(len(members), max_carrier)
    space = RestrictedSpace(ambient, members)

    def mul(e, f):
        a = g1.mul.get((e[0], f[0]))
        b = g2.mul.get((e[1], f[1]))
        if a is None or b is None:
            raise VerificationFailed(
                "componentwise product undefined on a composable pair; "
                "operands are not groupoids"
            )
        return (a, b)

    return _make_vg(
        space,
        tuple((u, u) for u in v.base.elements),
        lambda e: (g1.alpha[e[0]], g2.alpha[e[1]]),
        lambda e: (g1.beta[e[0]], g2.beta[e[1]]),
        mul,
        lambda e: (g1.inv[e[0]], g2.inv[e[1]]),
    )


# ---------------------------------------------------------------------------
# symmetry groupoid of partial bijections


@dataclass(frozen=True, order=True)
class PartialBijection:
    """A bijection of a nonempty subset of {0, ..., n-1} onto itself,
    stored as a sorted domain tuple with a parallel image tuple."""

    n: int
    domain: tuple
    image: tuple

    def __post_init__(self):
        if not self.domain:
            raise ValueError("domain must be nonempty")
        if tuple(sorted(self.domain)) != tuple(self.domain):
            raise ValueError("domain must be sorted")
        if sorted(self.image) != list(self.domain):
            raise ValueError("image must be a bijection of the domain onto itself")
        if any(x < 0 or x >= self.n for x in self.domain):
            raise ValueError("domain outside the ground set")

    def __call__(self, x: int) -> int:
        return self.image[self.domain.index(x)]

    @classmethod
    def from_mapping(cls, n: int, mapping: dict) -> "PartialBijection":
        dom = tuple(sorted(mapping))
        return cls(n, dom, tuple(mapping[x] for x in dom))

    @classmethod
    def identity(cls, n: int, domain) -> "PartialBijection":
        dom = tuple(sorted(domain))
        return cls(n, dom, dom)

    def compose(self, other: "PartialBijection") -> "PartialBijection":
        """self after other; domains must coincide."""
        if self.n != other.n or self.domain != other.domain:
            raise ValueError("domains differ")
        return PartialBijection(
            self.n, self.domain, tuple(self(y) for y in other.image)
        )

    def invert(self) -> "PartialBijection":
        return PartialBijection.from_mapping(
            self.n, {y: x for x, y in zip(self.domain, self.image)}
        )

    def sign(self) -> int:
        """Permutation parity: +1 for even, -1 for odd."""
        pos = {x: i for i, x in enumerate(self.domain)}
        seen = [False] * len(self.domain)
        cycles = 0
        for i in range(len(self.domain)):
            if seen[i]:
                continue
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = pos[self.image[j]]
        return 1 if (len(self.domain) - cycles) % 2 == 0 else -1

    def render(self) -> str:
        return "[" + ",".join(f"{x}->{y}" for x, y in zip(self.domain, self.image)) + "]"

    def __repr__(self):
        return f"PartialBijection({self.n}, {self.render()})"


def _all_partial_bijections(n: int):
    for k in range(1, n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(dom):
                yield PartialBijection(n, dom, img)


def symmetry_groupoid(n: int) -> FiniteGroupoid:
    """All partial bijections of an n-set, composable only on equal domains;
    a group bundle whose units are the identity maps of nonempty subsets."""
    if not 1 <= n <= 6:
        raise SizeGuard(f"symmetry groupoid degree must be in 1..6, got {n}")
    carrier = tuple(sorted(_all_partial_bijections(n)))
    units = tuple(f for f in carrier if f.domain == f.image and all(
        f(x) == x for x in f.domain
    ))
    ident = {f.domain: PartialBijection.identity(n, f.domain) for f in carrier}
    return build_groupoid(
        carrier,
        lambda f: ident[f.domain],
        lambda f: ident[f.domain],
        lambda f, g: f.compose(g),
        lambda f: f.invert(),
        units,
    )


def sg_cardinality(n: int) -> tuple[int, int]:
    """(|SG_n|, number of units) by the closed formulas, cross-checked by
    brute-force enumeration for n <= 6."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum(math.factorial(k) * math.comb(n, k) for k in range(1, n + 1))
    units = 2**n - 1
    if n <= 6:
        seen = set(_all_partial_bijections(n))
        if len(seen) != total:
            raise VerificationFailed(
                f"cardinality formula {total} != enumerated {len(seen)}"
            )
        unit_count = sum(
            1 for f in seen if all(f(x) == x for x in f.domain)
        )
        if unit_count != units:
            raise VerificationFailed(
                f"unit formula {units} != enumerated {unit_count}"
            )
    return total, units


# ---------------------------------------------------------------------------
# small groups as groupoids


def group_as_groupoid(elements, op, identity, inverse) -> FiniteGroupoid:
    """A group presented as a single-unit groupoid: every pair composable."""
    elements = tuple(elements)
    return build_groupoid(
        elements,
        lambda x: identity,
        lambda x: identity,
        op,
        inverse,
        (identity,),
    )


def sign_group() -> FiniteGroupoid:
    """{+1, -1} under multiplication, as a groupoid over {+1}."""
    return group_as_groupoid((1, -1), lambda a, b: a * b, 1, lambda a: a)


# ---------------------------------------------------------------------------
# construction specs (unit of exchange with the definition language)


CATALOG_KINDS = (
    ("single_unit", "the whole space over the single unit 0; x . y = x + y"),
    ("null", "every element a unit; only x . x = x"),
    ("pair", "coarse groupoid on V x V with (x,y).(y,z) = (x,z)"),
    ("vpq", "coarse groupoid of type (p,q) on V x V; requires p*q = 1"),
    ("v3", "groupoid on V^3: (x1,x2,x3).(x2,y2,y3) = (x1,y2,x3+y3)"),
    ("tvg", "trivial vector groupoid on W x V x W; middle components add"),
    ("product", "direct product of two vector groupoids, componentwise"),
    ("whitney", "Whitney sum: pullback over a common base, componentwise"),
    ("sg", "symmetry groupoid of partial bijections of an n-set (1 <= n <= 6)"),
)


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction with its parameters, resolvable to an instance."""

    kind: str
    params: tuple

    def build(self, max_carrier: int = DEFAULT_MAX_CARRIER):
        kind, params = self.kind, self.params
        if kind == "single_unit":
            return single_unit(*params, max_carrier=max_carrier)
        if kind == "null":
            return null_vg(*params, max_carrier=max_carrier)
        if kind == "pair":
            return pair_vg(*params, max_carrier=max_carrier)
        if kind == "vpq":
            return vpq(*params, max_carrier=max_carrier)
        if kind == "v3":
            return v3(*params, max_carrier=max_carrier)
        if kind == "tvg":
            return trivial_tvg(*params, max_carrier=max_carrier)
        if kind == "product":
            return direct_product(*params, max_carrier=max_carrier)
        if kind == "whitney":
            return whitney_sum(*params, max_carrier=max_carrier)
        if kind == "sg":
            return symmetry_groupoid(*params)
        raise ValueError(f"unknown construction kind {kind!r}")
