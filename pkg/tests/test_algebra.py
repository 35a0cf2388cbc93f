import random

import pytest

from sl2swc.algebra import (
    CompositeP,
    Cyclo,
    FieldTable,
    NotRationalInteger,
    binom_mod2,
    cyclo_make,
    cyclo_to_integer,
    cyclotomic_polynomial,
    euler_phi,
    field_make,
    field_trace,
    is_prime,
    ord2,
)


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def test_gf4_modulus_and_product():
    spec = field_make(2, 2)
    assert spec.modulus == (1, 1)  # t^2 + t + 1, the only irreducible quadratic
    t = spec.gen()
    assert (t * t).coeffs == (1, 1)  # t^2 = t + 1


def test_gf5_inverse():
    spec = field_make(5, 1)
    assert spec.from_int(2).inverse() == spec.from_int(3)


def test_gf9_enumeration_and_cyclic_units():
    spec = field_make(3, 2)
    elems = spec.elements()
    assert len(set(e.coeffs for e in elems)) == 9
    # exhaustive: some unit generates the full multiplicative group
    units = [e for e in elems if not e.is_zero()]

    def order(a):
        k, cur = 1, a
        one = spec.one()
        while cur != one:
            cur = cur * a
            k += 1
        return k

    assert sorted(order(u) for u in units).count(8) > 0
    assert max(order(u) for u in units) == 8


def test_composite_p_rejected():
    with pytest.raises(CompositeP):
        field_make(6, 1)


def test_trace_gf4():
    spec = field_make(2, 2)
    zero, one, t = spec.zero(), spec.one(), spec.gen()
    assert field_trace(zero) == 0
    assert field_trace(one) == 0       # 1 + 1 in characteristic 2
    assert field_trace(t) == 1         # t + t^2 = t + (t+1) = 1


@pytest.mark.parametrize("p,r", [(2, 2), (5, 1), (3, 2)])
def test_field_axioms_exhaustive_small(p, r):
    spec = field_make(p, r)
    elems = spec.elements()
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c
    for a in elems:
        if not a.is_zero():
            assert a * a.inverse() == spec.one()


@pytest.mark.parametrize("q", [25, 27, 49, 81])
def test_field_axioms_exhaustive_tables(q):
    # larger fields: exhaustive through the index tables
    p = 5 if q in (25,) else (3 if q in (27, 81) else 7)
    r = {25: 2, 27: 3, 49: 2, 81: 4}[q]
    F = FieldTable(field_make(p, r))
    add, mul = F.add, F.mul
    rng = range(q)
    for a in rng:
        for b in rng:
            assert add[a][b] == add[b][a]
            assert mul[a][b] == mul[b][a]
            for c in rng:
                assert add[add[a][b]][c] == add[a][add[b][c]]
                assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
    for a in range(1, q):
        assert mul[a][F.inv[a]] == 1


@pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2), (5, 1)])
def test_frobenius_and_trace(p, r):
    spec = field_make(p, r)
    elems = spec.elements()
    for a in elems:
        for b in elems:
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    # trace is GF(p)-linear and onto GF(p)
    for a in elems:
        for b in elems:
            assert field_trace(a + b) == (field_trace(a) + field_trace(b)) % p
    assert set(field_trace(a) for a in elems) == set(range(p))


# ---------------------------------------------------------------------------
# cyclotomic integers
# ---------------------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclo_examples():
    assert Cyclo.root(4, 2) == -1
    assert Cyclo.root(3, 1) + Cyclo.root(3, 2) == -1
    assert Cyclo.root(8, 1) * Cyclo.root(8, 7) == 1


def test_cyclo_to_integer():
    assert cyclo_to_integer(Cyclo.integer(12, 7)) == 7
    with pytest.raises(NotRationalInteger):
        cyclo_to_integer(Cyclo.root(4, 1))
    assert cyclo_to_integer(cyclo_make(3, [0, -1, -1])) == 1


def test_cyclo_random_numeric_agreement():
    rng = random.Random(42)
    for _ in range(1000):
        m = rng.randrange(1, 25)
        a = cyclo_make(m, [rng.randrange(-9, 10) for _ in range(m)])
        b = cyclo_make(m, [rng.randrange(-9, 10) for _ in range(m)])
        assert abs((a * b).evalf() - a.evalf() * b.evalf()) < 1e-6
        assert abs((a + b).evalf() - (a.evalf() + b.evalf())) < 1e-6


def test_conjugation_involution_and_norm():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(1, 25)
        c = cyclo_make(m, [rng.randrange(-5, 6) for _ in range(m)])
        assert c.conj().conj() == c
        # multiplicative: conj is a ring map
        d = cyclo_make(m, [rng.randrange(-5, 6) for _ in range(m)])
        assert (c * d).conj() == c.conj() * d.conj()
        val = (c * c.conj()).evalf()
        assert abs(val.imag) < 1e-6 and val.real > -1e-6


def test_roundtrip_evaluation():
    rng = random.Random(3)
    for _ in range(100):
        m = rng.randrange(2, 20)
        vec = [rng.randrange(-4, 5) for _ in range(m)]
        c = cyclo_make(m, vec)
        direct = sum(v * (Cyclo.root(m, 1).evalf() ** k) for k, v in enumerate(vec))
        assert abs(c.evalf() - direct) < 1e-9


def test_upcast():
    z3 = Cyclo.root(3, 1)
    assert z3.upcast(12) == Cyclo.root(12, 4)
    c = cyclo_make(4, [1, 2])
    assert c.upcast(8).coeffs == cyclo_make(8, [1, 0, 2]).coeffs


def test_binom_mod2_and_ord2():
    import math

    for n in range(0, 40):
        for k in range(0, n + 1):
            assert binom_mod2(n, k) == math.comb(n, k) % 2
    # negative upper index: C(-n, k) = (-1)^k C(n+k-1, k)
    for n in range(1, 12):
        for k in range(0, 12):
            assert binom_mod2(-n, k) == math.comb(n + k - 1, k) % 2
    assert [ord2(n) for n in (1, 2, 3, 4, 6, 8, 12, 80)] == [0, 1, 0, 2, 1, 3, 2, 4]


def test_phi_and_primes():
    assert [euler_phi(m) for m in (1, 2, 3, 4, 12, 120)] == [1, 1, 2, 2, 4, 32]
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
