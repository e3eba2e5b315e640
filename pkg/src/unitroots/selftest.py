"""Seeded invariant suites runnable from the command line.

Condensed versions of the library's mathematical invariants: ring axioms,
Teichmueller multiplicativity, weight function properties against the
definitional oracle, splitting-series and kernel bounds, dual-step norm
control, and adjointness.  Each suite returns (name, ok, detail).
"""

import random
from fractions import Fraction

from . import dwork, hyperg, oracle, weights
from .padic import make_ring, teichmueller, valuation, zeta_p


def _suite_ring_laws(rng):
    from .padic import RingElem
    for p, m in ((2, 1), (3, 1), (5, 1), (3, 2)):
        ring = make_ring(p, m, None, 4)
        elems = [RingElem(ring, [[rng.randrange(ring.pN) for _ in range(m)]
                                 for _ in range(ring.npi)]) for _ in range(12)]
        pi = ring.pi()
        if not (pi ** (p - 1) + ring.from_int(p)).is_zero():
            return False, f"pi^(p-1) + p != 0 at p={p}"
        for _ in range(40):
            x, y, z = rng.choice(elems), rng.choice(elems), rng.choice(elems)
            if (x + y) * z != x * z + y * z:
                return False, f"distributivity fails at p={p}"
            if x * y != y * x or (x * y) * z != x * (y * z):
                return False, f"commutativity/associativity fails at p={p}"
            vx, vy, vxy = x.valuation(), y.valuation(), (x * y).valuation()
            if vx is not None and vy is not None and vx + vy < ring.N:
                if vxy != vx + vy:
                    return False, f"valuation not additive at p={p}"
    return True, "ring laws, pi relation, valuation additivity"


def _suite_teichmueller(rng):
    for p, m in ((3, 1), (5, 1), (3, 2), (2, 2)):
        ring = make_ring(p, m, None, 4)
        q = p ** m
        for _ in range(10):
            a = [rng.randrange(p) for _ in range(m)]
            b = [rng.randrange(p) for _ in range(m)]
            ta, tb = teichmueller(ring, a), teichmueller(ring, b)
            if (ta * tb) ** q != ta * tb:
                return False, f"product is not Teichmueller at p={p},m={m}"
            if ta ** q != ta:
                return False, f"lift not fixed by q-power at p={p},m={m}"
        z = zeta_p(ring)
        phi = ring.zero()
        for k in range(p):
            phi = phi + z ** k
        if not phi.is_zero():
            return False, f"cyclotomic value nonzero at p={p}"
        if valuation(z - ring.one()) != Fraction(1, p - 1):
            return False, f"zeta - 1 has wrong order at p={p}"
    return True, "multiplicativity, q-power fixing, cyclotomic identity"


def _suite_weights(rng):
    for aname in ("kloosterman", "skew", "triangle", "edge"):
        from .battery import EXPONENT_SETS
        vecs = EXPONENT_SETS[aname]
        A = weights.ExponentSet(len(vecs[0]), vecs)
        W = weights.build_weight_data(A)
        n = A.n
        for _ in range(200):
            cs = [rng.randrange(9) for _ in vecs]
            nu = tuple(sum(c * v[i] for c, v in zip(cs, vecs)) for i in range(n))
            w = weights.weight(W, nu)
            if w < 0 or (w == 0) != (not any(nu)):
                return False, f"positivity fails on {aname}"
            if weights.weight(W, tuple(3 * x for x in nu)) != 3 * w:
                return False, f"homogeneity fails on {aname}"
            if w != weights.weight_definitional(A, nu):
                return False, f"oracle mismatch on {aname} at {nu}"
            if (W.D * w).denominator != 1:
                return False, f"denominator fails on {aname}"
            cs2 = [rng.randrange(9) for _ in vecs]
            mu = tuple(sum(c * v[i] for c, v in zip(cs2, vecs)) for i in range(n))
            both = tuple(a + b for a, b in zip(nu, mu))
            if weights.weight(W, both) > w + weights.weight(W, mu):
                return False, f"subadditivity fails on {aname}"
    return True, "properties of the weight function vs the definitional oracle"


def _suite_kernel_bounds(rng):
    ring = make_ring(3, 1, None, 4)
    sc = dwork.splitting_coefficients(ring, dwork.default_s_cut(ring))
    for i, b in enumerate(sc.b):
        if not b.val_at_least(Fraction(i * 2, 9)):
            return False, f"splitting bound fails at {i}"
    from .battery import EXPONENT_SETS
    A = weights.ExponentSet(1, EXPONENT_SETS["kloosterman"])
    W = weights.build_weight_data(A)
    lam = (ring.one(), ring.one())
    for mu in weights.enumerate_weighted_monomials(W, 6):
        val = dwork.bigF_coefficient(lam, mu, W, ring, sc)
        if not val.val_at_least(weights.weight(W, mu) * Fraction(2, 9)):
            return False, f"kernel bound fails at {mu}"
    return True, "splitting-series and kernel coefficient bounds"


def _suite_dual_operator(rng):
    ring = make_ring(3, 1, None, 3)
    from .battery import EXPONENT_SETS
    A = weights.ExponentSet(1, EXPONENT_SETS["kloosterman"])
    spec = hyperg.LaurentSpec(A, 3, 1, 1, ((1,), (1,)))
    W = weights.build_weight_data(A)
    od = dwork.OperatorData(spec, W, ring, 6)
    basis = od.basis
    for _ in range(6):
        support = {}
        for mu in basis:
            if rng.random() < 0.5:
                from .padic import RingElem
                support[mu] = RingElem(
                    ring, [[rng.randrange(ring.pN)] for _ in range(ring.npi)])
        if not support:
            continue
        xi = dwork.XSeries(support, Fraction(6), "B*")
        eta = dwork.one_step_dual(od.lam_orbit[0], xi, W, ring, od.sc,
                                  od.s_cut, lookup=od.kernel_table(0).get)
        nin, nout = xi.norm_order(W, ring), eta.norm_order(W, ring)
        if nout is not None and (nin is None or nout < nin):
            return False, "dual step increased the weighted norm"
    if dwork.adjoint_check(spec, 6, ring) is not None:
        return False, "adjointness discrepancy above the precision floor"
    return True, "dual-step norm control and adjointness"


def _suite_oracle(rng):
    from .battery import EXPONENT_SETS
    A = weights.ExponentSet(1, EXPONENT_SETS["kloosterman"])
    spec = hyperg.LaurentSpec(A, 3, 1, 1, ((1,), (1,)))
    table = oracle.char_sum_table(spec, 3)
    for row in table.rows:
        if sum(row.counts) != (3 ** row.field_degree - 1):
            return False, "count conservation fails"
    ring = make_ring(3, 1, None, 4)
    est = oracle.embed_and_estimate(table, ring)
    if any(v != 0 for v in est.s_valuations):
        return False, "character sum is not a unit"
    # Frobenius invariance at a quadratic point
    spec1 = hyperg.LaurentSpec(A, 3, 2, 1, ((0, 1), (1,)))
    spec2 = hyperg.LaurentSpec(A, 3, 2, 1, ((0, 2), (1,)))  # (t)^3 = 2t in F9
    t1 = oracle.char_sum_table(spec1, 3)
    t2 = oracle.char_sum_table(spec2, 3)
    for r1, r2 in zip(t1.rows, t2.rows):
        if r1.S != r2.S:
            return False, "Frobenius invariance fails"
    return True, "count conservation, unit sums, Frobenius invariance"


SUITES = [
    ("ring-laws", _suite_ring_laws),
    ("teichmueller", _suite_teichmueller),
    ("weights", _suite_weights),
    ("kernel-bounds", _suite_kernel_bounds),
    ("dual-operator", _suite_dual_operator),
    ("oracle", _suite_oracle),
]


def run_selftest(seed=20240801):
    results = []
    for name, fn in SUITES:
        rng = random.Random(seed)
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crashed suite is a failed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
