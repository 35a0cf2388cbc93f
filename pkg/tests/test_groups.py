import pytest

from sl2swc.groups import (
    EvenQ,
    TooLarge,
    UnsupportedTag,
    build_gl2,
    build_sl2,
    conjugacy,
    find_quaternion,
    gen_quaternion,
    quaternion_embeddings,
    standard_subgroup,
    subgroup_from_indices,
)


def test_orders():
    assert len(build_sl2(3)) == 24
    assert len(build_sl2(4)) == 60
    assert len(build_gl2(5)) == 480


def test_too_large():
    with pytest.raises(TooLarge):
        build_sl2(83)


def test_class_counts():
    assert conjugacy(build_sl2(2)).nclasses() == 3
    assert conjugacy(build_sl2(3)).nclasses() == 7
    assert conjugacy(build_sl2(4)).nclasses() == 5


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_class_equation(q):
    G = build_sl2(q)
    conj = conjugacy(G)
    assert sum(conj.sizes) == len(G)
    assert all(len(G) % s == 0 for s in conj.sizes)


def test_power_class_consistency_recomputed():
    # the build itself asserts this; recheck one group explicitly
    G = build_sl2(3)
    conj = conjugacy(G)
    for x in range(len(G)):
        cur = x
        for k in range(2, conj.exponent + 1):
            cur = G.mult(cur, x)
            assert conj.class_of[cur] == conj.power_class(conj.class_of[x], k)


def test_center_sl25():
    Z = standard_subgroup(build_sl2(5), "Z")
    assert len(Z) == 2
    G = Z.parent
    m1 = G.field.neg[1]
    assert set(Z.group.elems) == {(1, 0, 0, 1), (m1, 0, 0, m1)}


def test_center_even_is_trivial():
    assert len(standard_subgroup(build_sl2(4), "Z")) == 1


def test_unitriangular_sl24():
    N = standard_subgroup(build_sl2(4), "N")
    assert len(N) == 4
    H = N.group
    assert all(H.mult(i, i) == H.identity for i in range(len(H)))


@pytest.mark.parametrize("q", [2, 4, 8])
def test_unitriangular_is_sylow_for_even_q(q):
    G = build_sl2(q)
    N = standard_subgroup(G, "N")
    assert len(N) == q
    assert (len(G) // len(N)) % 2 == 1
    assert all(N.group.mult(i, i) == N.group.identity for i in range(len(N.group)))


def test_elliptic_torus_gl23():
    Te = standard_subgroup(build_gl2(3), "Te")
    assert len(Te) == 8
    orders = [Te.group.elem_order(i) for i in range(8)]
    assert max(orders) == 8  # cyclic


def test_subgroup_orders():
    G = build_sl2(5)
    assert len(standard_subgroup(G, "N")) == 5
    assert len(standard_subgroup(G, "T")) == 4
    assert len(standard_subgroup(G, "B")) == 20
    assert len(standard_subgroup(G, "ZN")) == 10
    Gt = build_gl2(3)
    assert len(standard_subgroup(Gt, "T")) == 4
    assert len(standard_subgroup(Gt, "B")) == 12
    assert len(standard_subgroup(Gt, "ZN")) == 6
    with pytest.raises(UnsupportedTag):
        standard_subgroup(G, "Te")
    with pytest.raises(UnsupportedTag):
        standard_subgroup(G, "nope")


def test_find_quaternion_sl23():
    G = build_sl2(3)
    Q = find_quaternion(G)
    assert len(Q) == 8
    H = Q.group
    invol = [i for i in range(8) if i != H.identity and H.mult(i, i) == H.identity]
    assert len(invol) == 1


@pytest.mark.parametrize("q", [5, 7])
def test_find_quaternion_square_is_minus_one(q):
    G = build_sl2(q)
    Q = find_quaternion(G)
    x, y = Q.gens
    m1 = G.field.neg[1]
    minus_one = G.index[(m1, 0, 0, m1)]
    assert G.mult(x, x) == minus_one
    assert G.mult(y, y) == minus_one
    assert G.mult(G.mult(y, x), G.inv(y)) == G.inv(x)


def test_find_quaternion_even_q_rejected():
    with pytest.raises(EvenQ):
        find_quaternion(build_sl2(4))


def test_quaternion_embeddings_counts():
    for q in (3, 5, 7):
        embs = quaternion_embeddings(build_sl2(q), 3)
        assert len(embs) == 3
        assert len(set(e.gens for e in embs)) == 3
    # SL(2,3) has a unique (normal) subgroup of order 8
    assert len(set(e.indices for e in quaternion_embeddings(build_sl2(3), 3))) == 1
    assert len(set(e.indices for e in quaternion_embeddings(build_sl2(5), 3))) == 3


def test_gen_quaternion_q8():
    Q = gen_quaternion(3)
    assert len(Q) == 8
    invol = [i for i in range(8) if i != Q.identity and Q.mult(i, i) == Q.identity]
    assert len(invol) == 1


def test_gen_quaternion_q16():
    Q = gen_quaternion(4)
    assert len(Q) == 16
    a = Q.index[(1, 0)]
    b = Q.index[(0, 1)]
    assert Q.elem_order(a) == 8
    # a^{2^{n-2}} = b^2 and b a b^-1 = a^-1
    assert Q.mult(b, b) == Q.index[(4, 0)]
    assert Q.mult(Q.mult(b, a), Q.inv(b)) == Q.inv(a)


def test_q16_contains_q8():
    Q = gen_quaternion(4)
    a2 = Q.index[(2, 0)]
    b = Q.index[(0, 1)]
    # closure of <a^2, b> has the quaternion presentation of order 8
    idxs = {Q.identity}
    frontier = [a2, b]
    while frontier:
        nxt = []
        for g in frontier:
            for h in (a2, b):
                for prod in (Q.mult(g, h), Q.mult(h, g)):
                    if prod not in idxs:
                        idxs.add(prod)
                        nxt.append(prod)
        frontier = nxt
    assert len(idxs) == 8
    x2 = Q.mult(a2, a2)
    assert x2 == Q.mult(b, b) and Q.mult(x2, x2) == Q.identity
    assert Q.mult(Q.mult(b, a2), Q.inv(b)) == Q.inv(a2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_gen_quaternion_derived_subgroup_index_4(n):
    Q = gen_quaternion(n)
    comms = {Q.identity}
    for x in range(len(Q)):
        for y in range(len(Q)):
            comms.add(Q.mult(Q.mult(x, y), Q.mult(Q.inv(x), Q.inv(y))))
    # close under multiplication
    changed = True
    while changed:
        changed = False
        for a in list(comms):
            for b in list(comms):
                p = Q.mult(a, b)
                if p not in comms:
                    comms.add(p)
                    changed = True
    assert len(Q) // len(comms) == 4


def test_subgroup_from_indices():
    G = gen_quaternion(3)
    z = next(i for i in range(8) if i != G.identity and G.mult(i, i) == G.identity)
    Z = subgroup_from_indices(G, [G.identity, z], "Z")
    assert len(Z) == 2
