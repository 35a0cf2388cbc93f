import random
from itertools import product

import pytest

from sl2swc.cohomology import (
    InhomogeneousRelation,
    OutsideDomain,
    RestrictionMap,
    RingMismatch,
    TruncationTooLow,
    UnsupportedRing,
    center_ring,
    dickson,
    dickson_expansion,
    dickson_ring,
    genq_ring,
    poly_ring,
    quaternion8_ring,
    restrict_genq_to_q8,
    restrict_q8_to_center,
    restrict_sl2odd_to_center,
    ring_make,
    sl2_odd_ring,
    steenrod_sq,
    steenrod_total,
    unipotent_ring,
)


def test_q8_graded_dims():
    R = quaternion8_ring(12)
    assert [R.dim(d) for d in range(13)] == [1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1]


def test_center_dims():
    R = center_ring(5)
    assert [R.dim(d) for d in range(6)] == [1] * 6


def test_sl2odd_dims():
    R = sl2_odd_ring(8)
    assert [R.dim(d) for d in range(9)] == [1, 0, 0, 1, 1, 0, 0, 1, 1]


def test_genq_dims():
    # same 4-periodic Poincare series as the order-8 quaternion ring
    R = genq_ring(8)
    assert [R.dim(d) for d in range(9)] == [1, 2, 2, 1, 1, 2, 2, 1, 1]
    X, Y = R.gen_class("X"), R.gen_class("Y")
    assert (X * Y).is_zero()
    assert X.pow_int(3) == Y.pow_int(3)


def test_q8_relations():
    R = quaternion8_ring(8)
    x, y = R.gen_class("x"), R.gen_class("y")
    assert (x * x * x).is_zero()
    assert (y * y * y).is_zero()
    assert x * y == x * x + y * y
    assert ((x + y) * (x + y) * (x + y)).is_zero()
    assert x * x * y == x * y * y


def test_free_ring_product():
    R = center_ring(8)
    v = R.gen_class("v")
    assert v.pow_int(2) * v.pow_int(3) == v.pow_int(5)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        center_ring(4).gen_class("v") * center_ring(5).gen_class("v")


def test_inhomogeneous_relation_rejected():
    with pytest.raises(InhomogeneousRelation):
        ring_make(("a", "b"), (1, 2), (((1, 0), (0, 1)),), 6)


def test_truncation_drops_high_degrees():
    R = center_ring(4)
    v = R.gen_class("v")
    assert v.pow_int(5).is_zero()


def test_e_multiplication_is_bijective():
    R = quaternion8_ring(12)
    e = R.gen_class("e")
    for d in range(0, 9):
        images = []
        for mon in R.basis(d):
            img = R.monomial(mon) * e
            images.append(img.component(d + 4))
        # distinct nonzero images spanning the target: ranks match
        assert len(set(images)) == len(images)
        assert all(images)
        assert len(images) == R.dim(d + 4)


def test_restriction_maps():
    D = 16
    q8 = quaternion8_ring(D)
    m = restrict_q8_to_center(D)
    assert m(q8.gen_class("e")) == center_ring(D).monomial((4,))
    assert m(q8.gen_class("e").pow_int(2)) == center_ring(D).monomial((8,))
    assert m(q8.gen_class("x")).is_zero()
    mg = restrict_genq_to_q8(D)
    assert mg(genq_ring(D).gen_class("E").pow_int(3)) == q8.gen_class("e").pow_int(3)
    ms = restrict_sl2odd_to_center(D)
    assert ms(sl2_odd_ring(D).gen_class("e")) == center_ring(D).monomial((4,))
    with pytest.raises(OutsideDomain):
        ms(sl2_odd_ring(D).gen_class("b"))


def test_restriction_rejects_relation_violation():
    from sl2swc.cohomology import RelationViolation

    D = 8
    src = quaternion8_ring(D)
    dst = center_ring(D)
    v = dst.gen_class("v")
    with pytest.raises(RelationViolation):
        RestrictionMap(src, dst, {"x": v, "y": dst.zero(), "e": dst.monomial((4,))})


def test_restriction_maps_preserve_products():
    D = 12
    rng = random.Random(42)
    q8 = quaternion8_ring(D)
    m = restrict_q8_to_center(D)

    def rand_cls():
        out = q8.zero()
        for _ in range(3):
            d = rng.randrange(0, 9)
            basis = q8.basis(d)
            if basis:
                out = out + q8.monomial(basis[rng.randrange(len(basis))])
        return out

    for _ in range(200):
        a, b = rand_cls(), rand_cls()
        assert m(a * b) == m(a) * m(b)


# ---------------------------------------------------------------------------
# Steenrod squares
# ---------------------------------------------------------------------------

def test_sq_basics():
    P = poly_ring(("v1", "v2"), 10)
    v1, v2 = P.gen_class("v1"), P.gen_class("v2")
    assert steenrod_sq(1, v1) == v1.pow_int(2)
    assert steenrod_sq(1, v1 * v2) == v1.pow_int(2) * v2 + v1 * v2.pow_int(2)
    assert steenrod_sq(0, v1.pow_int(3)) == v1.pow_int(3)
    # vanishing above the degree, top square
    assert steenrod_sq(4, v1.pow_int(3)).is_zero()
    assert steenrod_sq(3, v1.pow_int(3)) == v1.pow_int(6)


def test_sq_rejects_quotient_rings():
    with pytest.raises(UnsupportedRing):
        steenrod_sq(1, quaternion8_ring(8).gen_class("x"))


def test_sq_total_multiplicative():
    rng = random.Random(42)
    P = poly_ring(("v1", "v2", "v3"), 12)

    def rand_cls():
        out = P.zero()
        for _ in range(3):
            e = tuple(rng.randrange(0, 3) for _ in range(3))
            out = out + P.monomial(e)
        return out

    for _ in range(200):
        a, b = rand_cls(), rand_cls()
        assert steenrod_total(a * b) == steenrod_total(a) * steenrod_total(b)


# ---------------------------------------------------------------------------
# Dickson invariants
# ---------------------------------------------------------------------------

def test_dickson_rank1():
    d1, = dickson(1, 4)
    assert d1 == poly_ring(("v1",), 4).gen_class("v1")


def test_dickson_rank2_display():
    d1, d2 = dickson(2, 8)
    P = unipotent_ring(2, 8)
    v1, v2 = P.gen_class("v1"), P.gen_class("v2")
    assert d1 == v1 * v1 + v1 * v2 + v2 * v2
    assert d2 == v1 * v2 * (v1 + v2)


def test_dickson_degrees():
    for r in (1, 2, 3):
        ds = dickson(r, 2**r - 1)
        assert [min(d.comps) for d in ds] == [2**r - 2 ** (r - i) for i in range(1, r + 1)]


def test_dickson_truncation_too_low():
    with pytest.raises(TruncationTooLow):
        dickson(3, 5)


def _gl_matrices(r):
    """All invertible r x r matrices over F2."""
    def rank(mat):
        rows = [int("".join(map(str, row)), 2) for row in mat]
        rk = 0
        for col in range(r - 1, -1, -1):
            piv = next((i for i in range(rk, r) if rows[i] >> col & 1), None)
            if piv is None:
                continue
            rows[rk], rows[piv] = rows[piv], rows[rk]
            for i in range(r):
                if i != rk and rows[i] >> col & 1:
                    rows[i] ^= rows[rk]
            rk += 1
        return rk

    for entries in product((0, 1), repeat=r * r):
        mat = [entries[i * r:(i + 1) * r] for i in range(r)]
        if rank(mat) == r:
            yield mat


@pytest.mark.parametrize("r", [1, 2, 3])
def test_dickson_gl_invariance(r):
    D = 2**r - 1
    P = unipotent_ring(r, D)
    gens = [P.gen_class(f"v{i+1}") for i in range(r)]
    ds = dickson(r, D)
    for mat in _gl_matrices(r):
        images = {}
        for i in range(r):
            img = P.zero()
            for j in range(r):
                if mat[i][j]:
                    img = img + gens[j]
            images[f"v{i+1}"] = img
        sub = RestrictionMap(P, P, images, name="substitution")
        for d in ds:
            assert sub(d) == d


def test_dickson_expansion_map():
    r, D = 2, 12
    exp = dickson_expansion(r, D)
    A = dickson_ring(r, D)
    ds = dickson(r, D)
    assert exp(A.gen_class("d1")) == ds[0]
    assert exp(A.gen_class("d1") * A.gen_class("d2")) == ds[0] * ds[1]


def test_series_inverse():
    S = sl2_odd_ring(20)
    u = S.one() + S.gen_class("e")
    w = u.inverse()
    assert (u * w).is_one()
    # all-ones series
    assert all(w.component(4 * i) for i in range(6))
    assert u.pow_int(-3) == w * w * w
