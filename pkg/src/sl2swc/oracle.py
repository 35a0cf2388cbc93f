"""Independent brute-force verifiers: characteristic classes computed purely
from restriction to small detecting subgroups plus multiplicativity over
linear characters, and suites checking every closed formula against them.

Nothing here reuses the closed-form route: classes come from character inner
products over the center, a quaternion subgroup of order 8, or the
unitriangular subgroup, then products of (1 + w1) factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import binom_mod2, ord2
from .characters import (
    VirtualRep,
    char_table,
    oir_labels,
    random_genuine_rep,
    random_orthogonal_rep,
    rep_from_oir_blocks,
    restrict_to_group,
)
from .cohomology import (
    GradedClass,
    center_ring,
    quaternion8_ring,
    restrict_q8_to_center,
    restrict_sl2odd_to_center,
    steenrod_sq,
    unipotent_ring,
)
from .groups import Group, Subgroup, build_sl2, find_quaternion
from .swc import (
    TotalSWC,
    WrongParity,
    minus_one_class,
    quaternionic_multiplicity,
    total_swc,
    total_swc_expanded,
    unipotent_multiplicities,
)

DEFAULT_SEED = 42


class BadEmbedding(Exception):
    """Claimed quaternion embedding fails the defining relations."""


class Mismatch(Exception):
    """Two routes to the same class disagree; carries a structured diff."""

    def __init__(self, context, degree, lhs, rhs):
        self.context = context
        self.degree = degree
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{context}: first difference in degree {degree}: {lhs} != {rhs}")


@dataclass
class RestrictionProfile:
    tag: str
    mults: tuple[int, ...]


def central_involution(G: Group) -> int:
    """Index of the unique central element of order 2."""
    if G.kind == "sl2":
        if G.field.spec.p == 2:
            raise WrongParity("SL(2,q) with even q has no central involution")
        m1 = G.field.neg[1]
        return G.index[(m1, 0, 0, m1)]
    found = []
    for z in range(len(G)):
        if z != G.identity and G.mult(z, z) == G.identity:
            if all(G.mult(z, x) == G.mult(x, z) for x in range(len(G))):
                found.append(z)
    if len(found) != 1:
        raise ValueError(f"{G.name} has {len(found)} central involutions")
    return found[0]


# ---------------------------------------------------------------------------
# The three restriction oracles
# ---------------------------------------------------------------------------

def swc_from_center(pi: VirtualRep, D: int) -> TotalSWC:
    """(1+v)^b with b = (deg - chi(z))/2 over the central order-2 subgroup."""
    assert pi.is_genuine()
    G = pi.table.group
    z = central_involution(G)
    deg = pi.degree()
    chi_z = pi.int_at(pi.table.conj.class_of[z])
    b = (deg - chi_z) // 2
    assert (deg - chi_z) % 2 == 0 and b >= 0
    d_max = min(D, deg)
    ring = center_ring(d_max)
    comps = {d: 1 for d in range(d_max + 1) if binom_mod2(b, d)}
    return TotalSWC(GradedClass(ring, comps), "center")


def _check_embedding(emb: Subgroup):
    if emb.gens is None or len(emb.gens) != 2:
        raise BadEmbedding("embedding must carry generator indices (x, y)")
    G = emb.parent
    x, y = emb.gens
    x2 = G.mult(x, x)
    if G.mult(x2, x2) != G.identity or x2 == G.identity:
        raise BadEmbedding("x does not have order 4")
    if G.mult(y, y) != x2:
        raise BadEmbedding("y^2 != x^2")
    if G.mult(G.mult(y, x), G.inv(y)) != G.inv(x):
        raise BadEmbedding("y x y^-1 != x^-1")
    if len(emb.group) != 8:
        raise BadEmbedding("embedding does not span 8 elements")


def quaternion_profile(pi: VirtualRep, emb: Subgroup) -> RestrictionProfile:
    """(m0, m1, m2, m3, m4): multiplicities of the trivial, the three order-2
    characters labeled by the generators, and the 4-dimensional block, in the
    restriction along the embedding."""
    _check_embedding(emb)
    G = pi.table.group
    assert emb.parent is G
    res = restrict_to_group(pi.character(), emb.group)
    qt = char_table(emb.group)
    x, y = emb.gens
    cx = qt.conj.class_of_elem(G.elems[x])
    cy = qt.conj.class_of_elem(G.elems[y])
    chi1 = chi2 = chi3 = triv = rho = None
    for i, chi in enumerate(qt.chars):
        if qt.degrees[i] == 2:
            rho = i
            continue
        vx, vy = chi.int_at(cx), chi.int_at(cy)
        if (vx, vy) == (1, 1):
            triv = i
        elif (vx, vy) == (1, -1):
            chi1 = i
        elif (vx, vy) == (-1, 1):
            chi2 = i
        else:
            chi3 = i
    m0 = res.inner_int(qt.chars[triv])
    m1 = res.inner_int(qt.chars[chi1])
    m2 = res.inner_int(qt.chars[chi2])
    m3 = res.inner_int(qt.chars[chi3])
    k = res.inner_int(qt.chars[rho])
    if k % 2:
        raise BadEmbedding(f"2-dimensional constituent multiplicity {k} is odd "
                           "(input not orthogonal)")
    m4 = k // 2
    deg = pi.degree()
    z_class = pi.table.conj.class_of[G.mult(x, x)]
    chi_z = pi.int_at(z_class)
    assert m0 + m1 + m2 + m3 + 4 * m4 == deg, "degree balance failed"
    assert m0 + m1 + m2 + m3 - 4 * m4 == chi_z, "central balance failed"
    return RestrictionProfile("Q8", (m0, m1, m2, m3, m4))


def swc_from_quaternion(pi: VirtualRep, emb: Subgroup, D: int) -> TotalSWC:
    """(1+x)^m1 (1+y)^m2 (1+x+y)^m3 (1+e)^m4 from the restriction profile."""
    assert pi.is_genuine()
    prof = quaternion_profile(pi, emb)
    _, m1, m2, m3, m4 = prof.mults
    d_max = min(D, pi.degree())
    ring = quaternion8_ring(d_max)
    x, y, e = ring.gen_class("x"), ring.gen_class("y"), ring.gen_class("e")
    one = ring.one()
    out = (
        (one + x).pow_int(m1)
        * (one + y).pow_int(m2)
        * (one + x + y).pow_int(m3)
        * (one + e).pow_int(m4)
    )
    return TotalSWC(out.truncate(d_max), "quaternion8")


def unipotent_character_multiplicities(pi: VirtualRep) -> list[int]:
    """Multiplicity of each additive character (indexed by a in F_q) in the
    restriction to the unitriangular subgroup; exact integer arithmetic."""
    G = pi.table.group
    assert G.kind == "sl2" and G.field.spec.p == 2
    F = G.field
    q = G.q
    conj = pi.table.conj
    chi_at = [pi.int_at(conj.class_of_elem((1, xx, 0, 1))) for xx in range(q)]
    out = []
    for a in range(q):
        tot = sum(chi_at[xx] * (-1) ** F.trace[F.mul[a][xx]] for xx in range(q))
        assert tot % q == 0
        out.append(tot // q)
    assert sum(out) == pi.degree(), "multiplicities do not add up to the degree"
    return out


def swc_from_unipotent(pi: VirtualRep, D: int) -> TotalSWC:
    """Product over the additive characters of (1 + w1)^multiplicity, with w1
    read off through the trace pairing against the polynomial basis."""
    assert pi.is_genuine()
    G = pi.table.group
    F = G.field
    q, r = G.q, G.field.spec.r
    mults = unipotent_character_multiplicities(pi)
    assert all(m >= 0 for m in mults)
    d_max = min(D, pi.degree())
    ring = unipotent_ring(r, max(d_max, 2**r - 1))
    out = ring.one()
    one = ring.one()
    for a in range(1, q):
        n = mults[a]
        if n == 0:
            continue
        # t^i has canonical rank 2^i; pair against the basis via the trace
        coeffs = [F.trace[F.mul[a][2**i]] for i in range(r)]
        form = ring.zero()
        for i, c in enumerate(coeffs):
            if c:
                form = form + ring.monomial(tuple(1 if j == i else 0 for j in range(r)))
        u = form
        while n:
            if n & 1:
                out = out * (one + u)
            n >>= 1
            if n:
                u = u.square()
    return TotalSWC(out.truncate(d_max), "unipotent")


# ---------------------------------------------------------------------------
# Formula verification
# ---------------------------------------------------------------------------

def _compare(context, lhs: GradedClass, rhs: GradedClass):
    if lhs == rhs:
        return
    for d in sorted(set(lhs.support_degrees()) | set(rhs.support_degrees())):
        if lhs.component(d) != rhs.component(d):
            raise Mismatch(context, d,
                           " + ".join(lhs.monomial_strings(d)) or "0",
                           " + ".join(rhs.monomial_strings(d)) or "0")
    raise AssertionError("classes unequal but no differing degree found")


def verify_swc_formula(pi: VirtualRep, D: int, emb: Subgroup | None = None) -> dict:
    """Check the closed formula against the restriction oracles.

    Odd q: the image of (1+e)^r in H*(Z) must equal the center oracle, and the
    quaternion oracle must restrict to the same class.  Even q: the expansion
    of (1+D)^m must equal the unipotent oracle, and all nontrivial additive
    character multiplicities must coincide.  Raises Mismatch on failure.
    """
    G = pi.table.group
    q = G.q
    deg = pi.degree()
    d_eff = min(D, deg)
    if G.field.spec.p != 2:
        total = total_swc(pi, d_eff)
        mapped = restrict_sl2odd_to_center(d_eff)(total.cls)
        oz = swc_from_center(pi, d_eff)
        _compare(f"q={q} closed formula vs center oracle", mapped, oz.cls)
        if emb is None:
            emb = find_quaternion(G)
        oq = swc_from_quaternion(pi, emb, d_eff)
        mq = restrict_q8_to_center(d_eff)(oq.cls)
        _compare(f"q={q} quaternion oracle vs center oracle", mq, oz.cls)
        return {
            "q": q, "parity": "odd", "degree": deg,
            "r": quaternionic_multiplicity(pi),
            "common_center_image": oz.cls.to_dict(),
        }
    expanded = total_swc_expanded(pi, d_eff)
    on = swc_from_unipotent(pi, d_eff)
    _compare(f"q={q} closed formula vs unipotent oracle", expanded.cls, on.cls)
    mults = unipotent_character_multiplicities(pi)
    nontrivial = set(mults[1:])
    if len(nontrivial) > 1:
        raise Mismatch(f"q={q} torus invariance of additive multiplicities",
                       1, str(sorted(nontrivial)), "a single value")
    ell, m = unipotent_multiplicities(pi)
    return {
        "q": q, "parity": "even", "degree": deg, "ell": ell, "m": m,
        "expanded": on.cls.to_dict(),
    }


def restricted_total_class(pi: VirtualRep, D: int) -> GradedClass:
    """Oracle total class of the restriction to the parity's detecting
    elementary abelian subgroup (center for odd q, unitriangular for even)."""
    G = pi.table.group
    if G.kind == "sl2" and G.field.spec.p == 2:
        return swc_from_unipotent(pi, D).cls
    return swc_from_center(pi, D).cls


def wu_formula_holds(pi: VirtualRep, i: int, j: int) -> bool:
    """Sq^i(w_j) = sum_t C(j+t-i-1, t) w_{i-t} w_{j+t} on the restriction."""
    assert 0 <= i <= j
    D = i + j
    w = restricted_total_class(pi, D)
    ring = w.ring
    wj = GradedClass(ring, {j: w.component(j)})
    lhs = steenrod_sq(i, wj)
    rhs = ring.zero()
    for t in range(i + 1):
        if not binom_mod2(j + t - i - 1, t):
            continue
        wa = GradedClass(ring, {i - t: w.component(i - t)}) if i - t <= ring.D else ring.zero()
        wb = GradedClass(ring, {j + t: w.component(j + t)}) if j + t <= ring.D else ring.zero()
        rhs = rhs + wa * wb
    return lhs == rhs


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass
class SuiteReport:
    suite: str
    q: int
    cases: int = 0
    passes: int = 0
    seed: int | None = None
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None):
        self.cases += 1
        if ok:
            self.passes += 1
        else:
            self.failures.append(detail)

    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "schema": "sl2swc/1",
            "suite": self.suite,
            "q": self.q,
            "cases": self.cases,
            "passes": self.passes,
            "failures": self.failures,
            "seed": self.seed,
        }


def _theorem_truncation(q: int, single_block: bool) -> int:
    # expansions in three variables grow cubically with the truncation; large
    # random combinations at q = 8 are compared up to degree 24, which still
    # covers every Dickson invariant, their pairwise products and d1^(2^s)
    # obstruction classes through s = 2
    if q == 8 and not single_block:
        return 24
    return 64


def suite_gow(q: int) -> SuiteReport:
    """Every irreducible self-dual character satisfies eps = omega(-1)."""
    rep = SuiteReport("gow", q)
    table = char_table(build_sl2(q))
    if q % 2 == 0:
        for i in range(table.nchars()):
            ok = table.fs[i] == 1
            rep.record(ok, None if ok else
                       {"rep": f"X{i+1}", "lhs": table.fs[i], "rhs": 1})
        return rep
    zc = minus_one_class(table)
    for i, chi in enumerate(table.chars):
        if table.dual[i] != i:
            continue
        omega = chi.int_at(zc) // table.degrees[i]
        ok = table.fs[i] == omega
        rep.record(ok, None if ok else
                   {"rep": f"X{i+1}", "lhs": table.fs[i], "rhs": omega})
    return rep


def suite_theorem(q: int, trials: int = 200, seed: int = DEFAULT_SEED,
                  max_degree: int = 2000) -> SuiteReport:
    """Closed formula vs restriction oracles: all OIRs, then seeded random
    genuine orthogonal combinations."""
    rep = SuiteReport("theorem", q, seed=seed)
    table = char_table(build_sl2(q))
    for lab, _ in oir_labels(table):
        pi = rep_from_oir_blocks(table, {lab: 1})
        _run_theorem_case(rep, pi, q, _theorem_truncation(q, True),
                          {"rep": f"oir:{lab}"})
    rng = random.Random(seed)
    for n in range(trials):
        pi = random_orthogonal_rep(table, rng, max_degree=max_degree)
        _run_theorem_case(rep, pi, q, _theorem_truncation(q, False),
                          {"rep": f"random:{n}"})
    return rep


def _run_theorem_case(rep: SuiteReport, pi, q, D, detail):
    try:
        verify_swc_formula(pi, D)
        rep.record(True)
    except Mismatch as e:
        detail.update({"degree": e.degree, "lhs": e.lhs, "rhs": e.rhs,
                       "context": e.context})
        rep.record(False, detail)


def suite_wu(q: int, trials: int = 100, seed: int = DEFAULT_SEED) -> SuiteReport:
    """Wu formula for i <= j, i + j <= 6 on restrictions of random reps."""
    rep = SuiteReport("wu", q, seed=seed)
    table = char_table(build_sl2(q))
    rng = random.Random(seed)
    for n in range(trials):
        pi = random_genuine_rep(table, rng, max_degree=60)
        for i in range(0, 4):
            for j in range(i, 7 - i):
                ok = wu_formula_holds(pi, i, j)
                rep.record(ok, None if ok else {"rep": f"random:{n}", "i": i, "j": j})
    return rep


def suite_obstruction(q: int, n_max: int = 1024) -> SuiteReport:
    """Lowest nonzero coefficient of (1+g)^n sits at index 2^ord2(n); checked
    against an actual expansion of the binomial series over F2."""
    rep = SuiteReport("obstruction", q)
    p2 = q % 2 == 0
    r = q.bit_length() - 1 if p2 else None
    for n in range(1, n_max + 1):
        # independent expansion: bits of z are the coefficients of (1+g)^n
        z = 1
        for _ in range(n):
            z ^= z << 1
        t = z ^ 1
        low = (t & -t).bit_length() - 1
        want_idx = 2 ** ord2(n)
        closed = 2 ** (ord2(n) + 2) if not p2 else 2 ** (r + ord2(n) - 1)
        via_idx = 4 * low if not p2 else 2 ** (r - 1) * low
        ok = low == want_idx and closed == via_idx and binom_mod2(n, low) == 1 \
            and all(binom_mod2(n, i) == 0 for i in range(1, low))
        rep.record(ok, None if ok else {"rep": f"n={n}", "degree": low,
                                        "lhs": low, "rhs": want_idx})
    return rep


def run_suite(name: str, q: int, trials: int | None = None,
              seed: int = DEFAULT_SEED) -> list[SuiteReport]:
    if name == "gow":
        return [suite_gow(q)]
    if name == "theorem":
        return [suite_theorem(q, trials or 200, seed)]
    if name == "wu":
        return [suite_wu(q, trials or 100, seed)]
    if name == "obstruction":
        return [suite_obstruction(q)]
    if name == "all":
        out = []
        for n in ("gow", "theorem", "wu", "obstruction"):
            out.extend(run_suite(n, q, trials, seed))
        return out
    raise ValueError(f"unknown suite {name!r}")
