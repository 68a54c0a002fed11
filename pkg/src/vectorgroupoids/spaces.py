"""Finite vector spaces as enumerable carriers.

An :class:`AbstractSpace` is a finite set of elements with add / scale / zero
over a prime field.  Verifiers only ever go through this interface, so
nonstandard spaces (such as the re-based isotropy spaces) are handled by the
same code that handles coordinate spaces.

Element order is canonical: lexicographic on (flattened) coordinate tuples.
Spaces cache index tables (numpy arrays mapping element indices to element
indices) that the exhaustive sweeps run on.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import DomainMismatch, FieldMismatch
from .fields import FVector, PrimeField, Subspace
from .report import DEFAULT_WITNESS_CAP, AxiomReport, LawCollector


class AbstractSpace:
    """Finite vector space interface: element enumeration plus add/scale/zero."""

    field: PrimeField
    elements: tuple
    zero: object

    def add(self, x, y):
        raise NotImplementedError

    def scale(self, k: int, x):
        raise NotImplementedError

    def neg(self, x):
        return self.scale(self.field.modulus - 1, x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    # -- indexing ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, e) -> int:
        idx = self._index_map()
        try:
            return idx[e]
        except KeyError:
            raise DomainMismatch(f"element {e!r} not in space") from None

    def __contains__(self, e) -> bool:
        return e in self._index_map()

    def _index_map(self) -> dict:
        cache = getattr(self, "_idx_cache", None)
        if cache is None:
            cache = {e: i for i, e in enumerate(self.elements)}
            self._idx_cache = cache
        return cache

    # -- flattening (coordinate-backed fast path) -------------------------

    def flatten(self, e) -> tuple[int, ...] | None:
        """Flat coordinate tuple of e, or None if the space is not
        coordinate-backed (ops then go through the generic closure path)."""
        return None

    def coord_matrix(self):
        if not hasattr(self, "_coords_cache"):
            first = self.flatten(self.elements[0]) if self.elements else None
            if first is None:
                self._coords_cache = None
            else:
                self._coords_cache = np.array(
                    [self.flatten(e) for e in self.elements], dtype=np.int64
                )
        return self._coords_cache

    # -- cached index tables ----------------------------------------------

    @property
    def zero_index(self) -> int:
        return self.index(self.zero)

    def add_idx(self) -> np.ndarray:
        """n x n table: add_idx[i, j] = index of elements[i] + elements[j]."""
        cached = getattr(self, "_add_idx", None)
        if cached is None:
            cached = self._build_add_idx()
            self._add_idx = cached
        return cached

    def scale_idx(self) -> np.ndarray:
        """p x n table: scale_idx[k, i] = index of k * elements[i]."""
        cached = getattr(self, "_scale_idx", None)
        if cached is None:
            cached = self._build_scale_idx()
            self._scale_idx = cached
        return cached

    def neg_idx(self) -> np.ndarray:
        return self.scale_idx()[self.field.modulus - 1]

    def _codes(self):
        C = self.coord_matrix()
        if C is None:
            return None, None
        p = self.field.modulus
        D = C.shape[1] if C.ndim == 2 else 0
        powers = p ** np.arange(D - 1, -1, -1, dtype=np.int64)
        codes = C @ powers
        if not np.all(codes[1:] > codes[:-1]):
            raise DomainMismatch("element enumeration is not in canonical order")
        return codes, powers

    def _lookup_codes(self, codes, wanted):
        pos = np.searchsorted(codes, wanted)
        pos = np.minimum(pos, len(codes) - 1)
        if not np.all(codes[pos] == wanted):
            raise DomainMismatch("operation result outside the element set")
        return pos

    def _build_add_idx(self) -> np.ndarray:
        C = self.coord_matrix()
        if C is None:
            idx = self._index_map()
            n = self.n
            table = np.empty((n, n), dtype=np.int32)
            for i, x in enumerate(self.elements):
                row = table[i]
                for j, y in enumerate(self.elements):
                    row[j] = idx[self.add(x, y)]
            return table
        codes, powers = self._codes()
        p = self.field.modulus
        S = (C[:, None, :] + C[None, :, :]) % p
        wanted = S.reshape(-1, C.shape[1]) @ powers
        return self._lookup_codes(codes, wanted).reshape(self.n, self.n).astype(np.int32)

    def _build_scale_idx(self) -> np.ndarray:
        C = self.coord_matrix()
        p = self.field.modulus
        if C is None:
            idx = self._index_map()
            table = np.empty((p, self.n), dtype=np.int32)
            for k in range(p):
                for i, x in enumerate(self.elements):
                    table[k, i] = idx[self.scale(k, x)]
            return table
        codes, powers = self._codes()
        rows = []
        for k in range(p):
            wanted = ((k * C) % p) @ powers
            rows.append(self._lookup_codes(codes, wanted))
        return np.array(rows, dtype=np.int32)

    # -- exhaustive axiom suite -------------------------------------------

    def verify_axioms(self, witness_cap: int = DEFAULT_WITNESS_CAP) -> AxiomReport:
        """Exhaustively check the vector-space axioms over the field.

        Closure failures are reported under "closure"; the remaining laws are
        evaluated only where both sides stay inside the element set, so one
        closure defect does not cascade into every other law.
        """
        p = self.field.modulus
        n = self.n
        idx = self._index_map()
        elems = self.elements
        closure = LawCollector("closure", witness_cap)
        add = np.empty((n, n), dtype=np.int32)
        for i, x in enumerate(elems):
            row = add[i]
            for j, y in enumerate(elems):
                closure.count()
                r = idx.get(self.add(x, y), -1)
                if r < 0:
                    closure.add((x, y), actual=self.add(x, y))
                row[j] = r
        scl = np.empty((p, n), dtype=np.int32)
        for k in range(p):
            for i, x in enumerate(elems):
                closure.count()
                r = idx.get(self.scale(k, x), -1)
                if r < 0:
                    closure.add((k, x), actual=self.scale(k, x))
                scl[k, i] = r

        report = AxiomReport([closure.check])
        ok = add >= 0
        okscl = scl >= 0
        z = idx.get(self.zero, -1)

        def collect(law, mask, inputs_of):
            lc = LawCollector(law, witness_cap)
            lc.count(int(mask.size))
            for row in np.argwhere(mask)[:witness_cap]:
                lc.add(inputs_of(tuple(int(v) for v in row)))
            report.laws.append(lc.check)

        collect(
            "add-commutative",
            ok & ok.T & (add != add.T),
            lambda ij: (elems[ij[0]], elems[ij[1]]),
        )

        # associativity, chunked over the first operand
        assoc = LawCollector("add-associative", witness_cap)
        cols = np.arange(n)[None, :]
        for i in range(n):
            row = add[i]  # x + y for y in elems
            lv = (row >= 0)[:, None] & np.ones(n, dtype=bool)[None, :]
            lhs = np.where(lv, add[np.maximum(row, 0)[:, None], cols], -2)
            lv &= lhs >= 0
            rv = ok
            rhs = np.where(rv, add[i, np.maximum(add, 0)], -3)
            rv = rv & (rhs >= 0)
            assoc.count(n * n)
            bad = np.argwhere(lv & rv & (lhs != rhs))
            for j, k in bad[:witness_cap]:
                if assoc.full:
                    break
                assoc.add((elems[i], elems[int(j)], elems[int(k)]))
        report.laws.append(assoc.check)

        zlaw = LawCollector("zero-identity", witness_cap)
        zlaw.count(n)
        if z < 0:
            zlaw.add((self.zero,), actual=self.zero)
        else:
            for (i,) in np.argwhere(add[:, z] != np.arange(n))[:witness_cap]:
                zlaw.add((elems[int(i)],))
        report.laws.append(zlaw.check)

        if z >= 0:
            collect(
                "add-inverse-exists",
                ~(add == z).any(axis=1),
                lambda ij: (elems[ij[0]],),
            )
        collect(
            "one-scale",
            okscl[1 % p] & (scl[1 % p] != np.arange(n)),
            lambda ij: (elems[ij[0]],),
        )

        sm = LawCollector("scale-mul-associative", witness_cap)
        ds = LawCollector("distributes-over-scalar-add", witness_cap)
        for k1 in range(p):
            for k2 in range(p):
                sm.count(n)
                valid = okscl[k2]
                lhs = np.where(valid, scl[k1][np.maximum(scl[k2], 0)], -2)
                valid = valid & (lhs >= 0) & okscl[(k1 * k2) % p]
                for (i,) in np.argwhere(valid & (lhs != scl[(k1 * k2) % p]))[:witness_cap]:
                    if not sm.full:
                        sm.add((k1, k2, elems[int(i)]))
                ds.count(n)
                a1, a2 = scl[k1], scl[k2]
                valid = (a1 >= 0) & (a2 >= 0)
                lhs = np.where(valid, add[np.maximum(a1, 0), np.maximum(a2, 0)], -2)
                valid = valid & (lhs >= 0) & okscl[(k1 + k2) % p]
                for (i,) in np.argwhere(valid & (lhs != scl[(k1 + k2) % p]))[:witness_cap]:
                    if not ds.full:
                        ds.add((k1, k2, elems[int(i)]))

        dv = LawCollector("distributes-over-vector-add", witness_cap)
        for k in range(p):
            dv.count(n * n)
            sk = scl[k]
            lhs = np.where(ok, sk[np.maximum(add, 0)], -2)
            valid = ok & (lhs >= 0) & (sk >= 0)[:, None] & (sk >= 0)[None, :]
            rhs = np.where(valid, add[np.maximum(sk, 0)[:, None], np.maximum(sk, 0)[None, :]], -3)
            valid = valid & (rhs >= 0)
            for i, j in np.argwhere(valid & (lhs != rhs))[:witness_cap]:
                if not dv.full:
                    dv.add((k, elems[int(i)], elems[int(j)]))
        report.laws.extend([sm.check, ds.check, dv.check])
        return report


class CoordSpace(AbstractSpace):
    """Z_p^dim with componentwise operations; elements in lexicographic order."""

    def __init__(self, field: PrimeField, dim: int):
        self.field = field
        self.dim = dim
        self.elements = tuple(
            itertools.product(range(field.modulus), repeat=dim)
        )
        self.zero = (0,) * dim

    def add(self, x, y):
        p = self.field.modulus
        return tuple((a + b) % p for a, b in zip(x, y))

    def scale(self, k, x):
        p = self.field.modulus
        return tuple((k * a) % p for a in x)

    def flatten(self, e):
        return e

    def __repr__(self):
        return f"Z{self.field.modulus}^{self.dim}"


class ProductSpace(AbstractSpace):
    """Direct product of spaces; elements are tuples of component elements."""

    def __init__(self, *components: AbstractSpace):
        fields = {c.field for c in components}
        if len(fields) != 1:
            raise FieldMismatch("product components over different fields")
        self.components = components
        self.field = components[0].field
        self.elements = tuple(itertools.product(*(c.elements for c in components)))
        self.zero = tuple(c.zero for c in components)

    def add(self, x, y):
        return tuple(c.add(a, b) for c, a, b in zip(self.components, x, y))

    def scale(self, k, x):
        return tuple(c.scale(k, a) for c, a in zip(self.components, x))

    def flatten(self, e):
        parts = []
        for c, a in zip(self.components, e):
            f = c.flatten(a)
            if f is None:
                return None
            parts.extend(f)
        return tuple(parts)


class SubspaceSpace(AbstractSpace):
    """A Subspace viewed as a space of its own (ambient coordinates)."""

    def __init__(self, subspace: Subspace):
        self.subspace = subspace
        self.field = subspace.field
        self.elements = subspace.elements()
        self.zero = (0,) * subspace.ambient_dim

    def add(self, x, y):
        p = self.field.modulus
        return tuple((a + b) % p for a, b in zip(x, y))

    def scale(self, k, x):
        p = self.field.modulus
        return tuple((k * a) % p for a in x)

    def flatten(self, e):
        return e


class RestrictedSpace(AbstractSpace):
    """A subset of a parent space with inherited operations.

    Used for unit-set bases and pullback carriers; the subset must be closed
    under the parent operations for the index tables to build.
    """

    def __init__(self, parent: AbstractSpace, elements):
        self.parent = parent
        self.field = parent.field
        want = set(elements)
        self.elements = tuple(e for e in parent.elements if e in want)
        missing = want.difference(self.elements)
        if missing:
            raise DomainMismatch(f"elements not in parent space: {sorted(missing)!r:.80s}")
        self.zero = parent.zero

    def add(self, x, y):
        return self.parent.add(x, y)

    def scale(self, k, x):
        return self.parent.scale(k, x)

    def flatten(self, e):
        return self.parent.flatten(e)


class SpaceFromOps(AbstractSpace):
    """A space given by explicit closures; never assumed coordinate-backed."""

    def __init__(self, field: PrimeField, elements, add, scale, zero):
        self.field = field
        self.elements = tuple(elements)
        self._add = add
        self._scale = scale
        self.zero = zero

    def add(self, x, y):
        return self._add(x, y)

    def scale(self, k, x):
        return self._scale(k, x)


def enumerate_elements(s) -> tuple:
    """Deterministic element sequence of a space or subspace."""
    if isinstance(s, Subspace):
        return s.elements()
    return tuple(s.elements)


def check_linear(
    table,
    dom: AbstractSpace,
    cod: AbstractSpace,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    law: str = "linear",
) -> AxiomReport:
    """Exhaustive linearity check of an element-map table from dom to cod.

    Passes iff m(a*x + b*y) = a*m(x) + b*m(y) for all field scalars a, b and
    all x, y in dom.  The table must be defined on every element of dom and
    may not reference elements outside cod.
    """
    if callable(table) and not hasattr(table, "__getitem__"):
        table = {e: table(e) for e in dom.elements}
    fidx = np.empty(dom.n, dtype=np.int32)
    cod_index = cod._index_map()
    for i, e in enumerate(dom.elements):
        try:
            v = table[e]
        except KeyError:
            raise DomainMismatch(f"map undefined on {e!r}") from None
        if v not in cod_index:
            raise DomainMismatch(f"map value {v!r} outside codomain")
        fidx[i] = cod_index[v]

    p = dom.field.modulus
    if cod.field.modulus != p:
        raise DomainMismatch("domain and codomain over different fields")
    dadd, dscl = dom.add_idx(), dom.scale_idx()
    cadd, cscl = cod.add_idx(), cod.scale_idx()
    lc = LawCollector(law, witness_cap)
    elems = dom.elements
    for a in range(p):
        for b in range(p):
            sa, sb = dscl[a], dscl[b]
            combo = dadd[sa[:, None], sb[None, :]]
            lhs = fidx[combo]
            fa, fb = cscl[a][fidx], cscl[b][fidx]
            rhs = cadd[fa[:, None], fb[None, :]]
            lc.count(dom.n * dom.n)
            if not np.array_equal(lhs, rhs):
                for i, j in np.argwhere(lhs != rhs)[: witness_cap]:
                    if lc.full:
                        break
                    i, j = int(i), int(j)
                    lc.add(
                        (a, b, elems[i], elems[j]),
                        expected=cod.elements[int(rhs[i, j])],
                        actual=cod.elements[int(lhs[i, j])],
                    )
    return AxiomReport([lc.check])
