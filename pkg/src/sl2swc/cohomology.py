"""Finitely presented graded F2-algebras, restriction homomorphisms, Steenrod
squares on polynomial rings, and Dickson invariants.

Normal forms are computed degree by degree: the monomials of each degree are
row-reduced against all relation multiples, and the surviving monomials form
that degree's basis.  Coordinate vectors are bit-packed into Python ints.
Rings are truncated at a fixed degree D; per-degree data and monomial products
are materialized lazily and cached.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import binom_mod2


class InhomogeneousRelation(Exception):
    pass


class RingMismatch(Exception):
    pass


class UnsupportedRing(Exception):
    pass


class RelationViolation(Exception):
    pass


class TruncationTooLow(Exception):
    pass


class OutsideDomain(Exception):
    """Class involves a generator the restriction map does not define."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Ring:
    """Graded F2-algebra F2[gens]/(relations), truncated at degree D."""

    def __init__(self, names, degrees, relations, D):
        self.names = tuple(names)
        self.degs = tuple(degrees)
        self.D = D
        rels = []
        for rel in relations:
            rel = frozenset(tuple(e) for e in rel)
            rdegs = {sum(e * d for e, d in zip(mon, self.degs)) for mon in rel}
            if len(rdegs) != 1:
                raise InhomogeneousRelation(f"relation {sorted(rel)} is not homogeneous")
            rels.append((rdegs.pop(), rel))
        self.relations = tuple(rels)
        self._deg_cache: dict[int, tuple[list, dict, dict | None]] = {}
        self._pair_cache: dict[tuple, tuple[int, int]] = {}
        self._sq_cache: dict[tuple, tuple[int, int]] = {}

    # -- per-degree data ----------------------------------------------------

    def _monomials_of_degree(self, d):
        out = []

        def rec(i, rem, acc):
            if i == len(self.degs) - 1:
                if rem % self.degs[i] == 0:
                    out.append(tuple(acc + [rem // self.degs[i]]))
                return
            step = self.degs[i]
            for e in range(rem // step + 1):
                rec(i + 1, rem - e * step, acc + [e])

        if d == 0:
            return [tuple([0] * len(self.degs))]
        rec(0, d, [])
        return sorted(out, reverse=True)

    def _degree_data(self, d):
        """(basis monomials, basis positions, residue-by-monomial or None)."""
        if d in self._deg_cache:
            return self._deg_cache[d]
        mons = self._monomials_of_degree(d)
        pos_all = {m: i for i, m in enumerate(mons)}
        if not self.relations:
            data = (mons, pos_all, None)
            self._deg_cache[d] = data
            return data
        rows = []
        for rdeg, rel in self.relations:
            if rdeg > d:
                continue
            for mu in self._monomials_of_degree(d - rdeg):
                mask = 0
                for mon in rel:
                    prod = tuple(a + b for a, b in zip(mu, mon))
                    mask ^= 1 << pos_all[prod]
                if mask:
                    rows.append(mask)
        # F2 row reduction over the monomial list; pivot = lowest set bit
        pivots: dict[int, int] = {}
        for row in rows:
            while row:
                p = (row & -row).bit_length() - 1
                if p in pivots:
                    row ^= pivots[p]
                else:
                    pivots[p] = row
                    break
        # back-substitute so each pivot row has a single pivot bit
        for p in sorted(pivots, reverse=True):
            row = pivots[p]
            rest = row ^ (1 << p)
            fixed = 1 << p
            for b in list(_bits(rest)):
                if b in pivots and b != p:
                    row ^= pivots[b]
            pivots[p] = row
        basis = [m for i, m in enumerate(mons) if i not in pivots]
        basis_pos = {m: i for i, m in enumerate(basis)}
        old_to_new = {pos_all[m]: basis_pos[m] for m in basis}
        residue = {}
        for i, m in enumerate(mons):
            if i in old_to_new:
                residue[m] = 1 << old_to_new[i]
            else:
                mask = pivots[i] ^ (1 << i)
                out = 0
                for b in _bits(mask):
                    assert b in old_to_new, "reduction did not terminate in basis"
                    out ^= 1 << old_to_new[b]
                residue[m] = out
        data = ([m for m in basis], basis_pos, residue)
        self._deg_cache[d] = data
        return data

    def basis(self, d):
        return self._degree_data(d)[0]

    def dim(self, d):
        return len(self.basis(d))

    def reduce_monomial(self, expvec) -> tuple[int, int]:
        """(degree, bitmask) of the residue of a raw monomial."""
        d = sum(e * g for e, g in zip(expvec, self.degs))
        if d > self.D:
            return d, 0
        mons, pos, residue = self._degree_data(d)
        if residue is None:
            return d, 1 << pos[expvec]
        return d, residue[expvec]

    # -- element constructors -------------------------------------------------

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return self.monomial((0,) * len(self.names))

    def monomial(self, expvec) -> "GradedClass":
        d, mask = self.reduce_monomial(tuple(expvec))
        return GradedClass(self, {d: mask} if mask else {})

    def gen_class(self, name) -> "GradedClass":
        i = self.names.index(name)
        e = [0] * len(self.names)
        e[i] = 1
        return self.monomial(e)

    def from_monomials(self, expvecs) -> "GradedClass":
        out = self.zero()
        for e in expvecs:
            out = out + self.monomial(e)
        return out

    # -- products -------------------------------------------------------------

    def _pair_product(self, d1, i1, d2, i2):
        key = (d1, i1, d2, i2) if (d1, i1) <= (d2, i2) else (d2, i2, d1, i1)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        m1 = self.basis(d1)[i1]
        m2 = self.basis(d2)[i2]
        prod = tuple(a + b for a, b in zip(m1, m2))
        val = self.reduce_monomial(prod)
        self._pair_cache[key] = val
        return val

    def _square_basis(self, d, i):
        key = (d, i)
        hit = self._sq_cache.get(key)
        if hit is not None:
            return hit
        m = self.basis(d)[i]
        val = self.reduce_monomial(tuple(2 * e for e in m))
        self._sq_cache[key] = val
        return val

    def mul_masks(self, d1, mask1, d2, mask2) -> int:
        """Product of two homogeneous components; degree d1+d2 (must be <= D)."""
        out = 0
        for i1 in _bits(mask1):
            for i2 in _bits(mask2):
                _, m = self._pair_product(d1, i1, d2, i2)
                out ^= m
        return out

    def monomial_string(self, expvec) -> str:
        parts = []
        for name, e in zip(self.names, expvec):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        rel = " and ".join(
            " + ".join(self.monomial_string(m) for m in sorted(r, reverse=True))
            for _, r in self.relations
        )
        gens = ", ".join(f"{n}(deg {d})" for n, d in zip(self.names, self.degs))
        return f"Ring(F2[{gens}]" + (f" / ({rel})" if rel else "") + f", D={self.D})"


def ring_make(names, degrees, relations, D) -> Ring:
    return Ring(names, degrees, relations, D)


class GradedClass:
    """Element of a truncated graded ring: degree -> bit-packed coordinates."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: Ring, comps: dict[int, int]):
        self.ring = ring
        self.comps = {d: m for d, m in comps.items() if m}

    def component(self, d: int) -> int:
        return self.comps.get(d, 0)

    def is_zero(self) -> bool:
        return not self.comps

    def is_one(self) -> bool:
        return self.comps == {0: 1}

    def has_constant_term(self) -> bool:
        return self.comps.get(0, 0) == 1

    def support_degrees(self):
        return sorted(self.comps)

    def lowest_positive_degree(self):
        pos = [d for d in self.comps if d > 0]
        return min(pos) if pos else None

    def __add__(self, other):
        if self.ring is not other.ring:
            raise RingMismatch("classes live in different rings")
        out = dict(self.comps)
        for d, m in other.comps.items():
            out[d] = out.get(d, 0) ^ m
        return GradedClass(self.ring, out)

    __sub__ = __add__   # characteristic 2

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            return NotImplemented
        if self.ring is not other.ring:
            raise RingMismatch("classes live in different rings")
        ring = self.ring
        out: dict[int, int] = {}
        for d1, m1 in self.comps.items():
            for d2, m2 in other.comps.items():
                d = d1 + d2
                if d > ring.D:
                    continue
                m = ring.mul_masks(d1, m1, d2, m2)
                if m:
                    out[d] = out.get(d, 0) ^ m
        return GradedClass(ring, out)

    def square(self) -> "GradedClass":
        # char 2: squaring is additive, one lookup per basis monomial
        ring = self.ring
        out: dict[int, int] = {}
        for d, mask in self.comps.items():
            if 2 * d > ring.D:
                continue
            for i in _bits(mask):
                sd, sm = ring._square_basis(d, i)
                if sm:
                    out[sd] = out.get(sd, 0) ^ sm
        return GradedClass(ring, out)

    def inverse(self) -> "GradedClass":
        """Series inverse of a unit (constant term 1), degree by degree."""
        if not self.has_constant_term():
            raise ValueError("only units with constant term 1 are invertible")
        ring = self.ring
        inv: dict[int, int] = {0: 1}
        for d in range(1, ring.D + 1):
            acc = 0
            for i in range(1, d + 1):
                ui = self.comps.get(i)
                wj = inv.get(d - i)
                if ui and wj:
                    acc ^= ring.mul_masks(i, ui, d - i, wj)
            if acc:
                inv[d] = acc
        return GradedClass(ring, inv)

    def pow_int(self, n: int) -> "GradedClass":
        if n < 0:
            return self.inverse().pow_int(-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def truncate(self, d_max: int) -> "GradedClass":
        return GradedClass(self.ring, {d: m for d, m in self.comps.items() if d <= d_max})

    def frobenius(self, k: int = 1) -> "GradedClass":
        """Raise every monomial exponent vector to the 2^k-th power."""
        out = self
        for _ in range(k):
            out = out.square()
        return out

    def monomials(self, d: int):
        ring = self.ring
        basis = ring.basis(d)
        return [basis[i] for i in _bits(self.component(d))]

    def monomial_strings(self, d: int):
        return [self.ring.monomial_string(m) for m in self.monomials(d)]

    def to_dict(self) -> dict[str, list[str]]:
        return {str(d): self.monomial_strings(d) for d in self.support_degrees()}

    def __eq__(self, other):
        return (
            isinstance(other, GradedClass)
            and self.ring is other.ring
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.comps.items()))))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for d in self.support_degrees():
            parts.extend(self.monomial_strings(d))
        return " + ".join(parts)


def ring_mul(a: GradedClass, b: GradedClass) -> GradedClass:
    return a * b


# ---------------------------------------------------------------------------
# Standard presentations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...], D: int) -> Ring:
    """Free polynomial ring on degree-1 generators."""
    return Ring(names, (1,) * len(names), (), D)


@lru_cache(maxsize=None)
def center_ring(D: int) -> Ring:
    """F2[v], the cohomology of the order-2 group."""
    return poly_ring(("v",), D)


@lru_cache(maxsize=None)
def quaternion8_ring(D: int) -> Ring:
    """F2[x,y,e]/(xy + x^2 + y^2, x^2 y + x y^2) with |x|=|y|=1, |e|=4."""
    rels = (
        ((1, 1, 0), (2, 0, 0), (0, 2, 0)),
        ((2, 1, 0), (1, 2, 0)),
    )
    return Ring(("x", "y", "e"), (1, 1, 4), rels, D)


@lru_cache(maxsize=None)
def genq_ring(D: int) -> Ring:
    """F2[X,Y,E]/(XY, X^3 + Y^3) with |X|=|Y|=1, |E|=4 (order >= 16)."""
    rels = (
        ((1, 1, 0),),
        ((3, 0, 0), (0, 3, 0)),
    )
    return Ring(("X", "Y", "E"), (1, 1, 4), rels, D)


@lru_cache(maxsize=None)
def sl2_odd_ring(D: int) -> Ring:
    """F2[e] tensor F2[b]/(b^2) with |e|=4, |b|=3."""
    return Ring(("e", "b"), (4, 3), (((0, 2),),), D)


@lru_cache(maxsize=None)
def dickson_ring(r: int, D: int) -> Ring:
    """Free ring on the r Dickson invariants, deg d_i = 2^r - 2^(r-i)."""
    names = tuple(f"d{i}" for i in range(1, r + 1))
    degs = tuple(2**r - 2 ** (r - i) for i in range(1, r + 1))
    return Ring(names, degs, (), D)


@lru_cache(maxsize=None)
def unipotent_ring(r: int, D: int) -> Ring:
    """F2[v1..vr], the cohomology of an elementary abelian group of rank r."""
    return poly_ring(tuple(f"v{i}" for i in range(1, r + 1)), D)


# ---------------------------------------------------------------------------
# Restriction maps
# ---------------------------------------------------------------------------

class RestrictionMap:
    """Graded ring homomorphism given on (a subset of) the generators.

    Generators without an image may not appear in applied classes; relations
    involving only mapped generators are verified to map to zero.
    """

    def __init__(self, src: Ring, dst: Ring, images: dict[str, GradedClass], name=""):
        self.src = src
        self.dst = dst
        self.images = dict(images)
        self.name = name
        self._mono_cache: dict[tuple, GradedClass] = {}
        for g, img in images.items():
            gd = src.degs[src.names.index(g)]
            if not all(d == gd for d in img.comps):
                raise RelationViolation(f"image of {g} is not homogeneous of degree {gd}")
        for rdeg, rel in src.relations:
            if any(
                e and src.names[i] not in images
                for mon in rel
                for i, e in enumerate(mon)
            ):
                continue
            acc = dst.zero()
            for mon in rel:
                acc = acc + self._image_of_monomial(mon)
            if not acc.is_zero():
                raise RelationViolation(
                    f"relation of degree {rdeg} does not map to zero under {name or 'map'}"
                )

    def _image_of_monomial(self, expvec) -> GradedClass:
        key = tuple(expvec)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        out = self.dst.one()
        for i, e in enumerate(expvec):
            if e == 0:
                continue
            g = self.src.names[i]
            if g not in self.images:
                raise OutsideDomain(f"generator {g} has no image under {self.name or 'map'}")
            out = out * self.images[g].pow_int(e)
        self._mono_cache[key] = out
        return out

    def __call__(self, a: GradedClass) -> GradedClass:
        if a.ring is not self.src:
            raise RingMismatch("class is not in the source ring")
        out = self.dst.zero()
        for d in a.support_degrees():
            for mon in a.monomials(d):
                out = out + self._image_of_monomial(mon)
        return out


def restriction_apply(rmap: RestrictionMap, a: GradedClass) -> GradedClass:
    return rmap(a)


@lru_cache(maxsize=None)
def restrict_q8_to_center(D: int) -> RestrictionMap:
    """H*(quaternion group) -> H*(center): x, y -> 0, e -> v^4."""
    src, dst = quaternion8_ring(D), center_ring(D)
    return RestrictionMap(
        src, dst,
        {"x": dst.zero(), "y": dst.zero(), "e": dst.monomial((4,))},
        name="Q8 -> Z",
    )


@lru_cache(maxsize=None)
def restrict_genq_to_q8(D: int) -> RestrictionMap:
    """H*(generalized quaternion) -> H*(Q8): X, Y -> 0, E -> e.

    Defined (and used) on the subalgebra generated by E; the degree-1 images
    are not pinned down by the ring structure alone.
    """
    src, dst = genq_ring(D), quaternion8_ring(D)
    return RestrictionMap(
        src, dst,
        {"X": dst.zero(), "Y": dst.zero(), "E": dst.gen_class("e")},
        name="Q2n -> Q8",
    )


@lru_cache(maxsize=None)
def restrict_sl2odd_to_center(D: int) -> RestrictionMap:
    """The characteristic-class subalgebra F2[e] of H*(SL(2,q)) into H*(center).

    Partial on purpose: b has no image, so classes outside F2[e] are rejected.
    """
    src, dst = sl2_odd_ring(D), center_ring(D)
    return RestrictionMap(src, dst, {"e": dst.monomial((4,))}, name="SL2 odd -> Z")


@lru_cache(maxsize=None)
def dickson_expansion(r: int, D: int) -> RestrictionMap:
    """Abstract Dickson generators -> their expansions in F2[v1..vr]."""
    src = dickson_ring(r, D)
    dst = unipotent_ring(r, D)
    ds = dickson(r, D)
    return RestrictionMap(
        src, dst, {f"d{i+1}": ds[i] for i in range(r)}, name="Dickson expansion"
    )


# ---------------------------------------------------------------------------
# Steenrod squares and Dickson invariants
# ---------------------------------------------------------------------------

def steenrod_sq(i: int, a: GradedClass) -> GradedClass:
    """Sq^i on a polynomial ring with degree-1 generators (total square
    Sq(v) = v + v^2 extended multiplicatively)."""
    ring = a.ring
    if ring.relations or any(d != 1 for d in ring.degs):
        raise UnsupportedRing("Steenrod squares implemented on free rings with degree-1 generators")
    if i < 0:
        raise ValueError("negative Steenrod index")
    out = ring.zero()
    nvars = len(ring.names)
    for d in a.support_degrees():
        for mon in a.monomials(d):
            # distribute i among the variables; C(e_j, k_j) odd iff k_j submask of e_j
            def rec(j, rem, acc):
                nonlocal out
                if j == nvars - 1:
                    if rem <= mon[j] and binom_mod2(mon[j], rem):
                        out = out + ring.monomial(tuple(acc + [mon[j] + rem]))
                    return
                for k in range(min(rem, mon[j]) + 1):
                    if binom_mod2(mon[j], k):
                        rec(j + 1, rem - k, acc + [mon[j] + k])

            if i <= d:
                rec(0, i, [])
    return out


def steenrod_total(a: GradedClass) -> GradedClass:
    out = a.ring.zero()
    for i in range(a.ring.D + 1):
        out = out + steenrod_sq(i, a)
    return out


@lru_cache(maxsize=None)
def dickson(r: int, D: int) -> tuple[GradedClass, ...]:
    """Dickson invariants d_1..d_r in F2[v1..vr], deg d_i = 2^r - 2^(r-i).

    Read off the product over all 2^r - 1 nonzero linear forms of (1 + form);
    every other positive-degree component of that product must vanish.
    """
    top = 2**r - 1
    if D < top:
        raise TruncationTooLow(f"need D >= {top}, got {D}")
    ring = unipotent_ring(r, D)
    prod = ring.one()
    for mask in range(1, 2**r):
        form = ring.from_monomials(
            [tuple(1 if j == b else 0 for j in range(r)) for b in _bits(mask)]
        )
        prod = prod * (ring.one() + form)
    want = {2**r - 2 ** (r - i) for i in range(1, r + 1)}
    for d in prod.support_degrees():
        if d != 0 and d not in want:
            raise AssertionError(f"unexpected degree {d} in the Dickson product")
    out = []
    for i in range(1, r + 1):
        d = 2**r - 2 ** (r - i)
        out.append(GradedClass(ring, {d: prod.component(d)}))
    return tuple(out)


def dickson_sum(r: int, D: int) -> GradedClass:
    out = unipotent_ring(r, D).zero()
    for d in dickson(r, D):
        out = out + d
    return out
