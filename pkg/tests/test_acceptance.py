"""Acceptance battery: every criterion as one test printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the shared fixture executes all battery cases once (a few minutes,
dominated by the two largest oracle enumerations and the slow-tail route-A
case at p = 5).
"""

import time
from fractions import Fraction as F

import pytest

from unitroots.battery import (BATTERY, DEGENERATE_BATTERY, EXPONENT_SETS,
                               job_dict)
from unitroots.dwork import (OperatorData, adjoint_check, default_s_cut,
                             splitting_coefficients)
from unitroots.hyperg import (LaurentSpec, calF_series, check_annihilators,
                              route_a_once)
from unitroots.padic import make_ring
from unitroots.runner import run
from unitroots.weights import (ExponentSet, build_weight_data,
                               enumerate_weighted_monomials,
                               relation_lattice_basis, weight,
                               weight_definitional)

PRECISION = 4


@pytest.fixture(scope="session")
def battery_reports():
    out = {}
    for case in BATTERY:
        t0 = time.perf_counter()
        report = run(job_dict(case, precision=PRECISION))
        out[case["id"]] = (case, report, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def degenerate_reports():
    out = {}
    for case in DEGENERATE_BATTERY:
        report = run(job_dict(case, precision=PRECISION))
        out[case["id"]] = (case, report)
    return out


def _ord_value(entry, cap):
    """Report orders are [num, den] or None (meaning >= precision cap)."""
    return F(cap) if entry is None else F(entry[0], entry[1])


def test_criterion_01_cross_route_consensus(battery_reports):
    d2 = 0
    for cid, (case, report, elapsed) in battery_reports.items():
        agree = report.data["agreement"]
        assert not report.data["errors"], (cid, report.data["errors"])
        assert set(report.data["routes"]) == {"A", "B", "C"}, cid
        for pair, digits in agree["pairs"].items():
            assert digits >= PRECISION, (cid, pair, digits)
        assert elapsed < 60.0, (cid, elapsed)
        assert report.data["orbit"]["d"] == case["expected_d"], cid
        d2 += case["expected_d"] == 2
    assert d2 >= 2
    print(f"\nACCEPTANCE 01 cross-route consensus: PASS "
          f"({len(battery_reports)} cases, {d2} with orbit degree 2)")


def test_criterion_02_oracle_convergence(battery_reports):
    for cid, (case, report, _) in battery_reports.items():
        orders = report.data["oracle"]["consensus_orders"]
        assert len(orders) == 5, cid
        vals = [_ord_value(v, PRECISION) for v in orders]
        for a, b in zip(vals, vals[1:]):
            assert b >= a, (cid, vals)
        assert vals[3] >= 2, (cid, vals)
        # strict gain over the first estimate, unless that one already sits
        # at the precision cap (the exact cases)
        assert vals[3] > vals[0] or vals[0] >= PRECISION, (cid, vals)
    print("\nACCEPTANCE 02 oracle ratio convergence: PASS")


def test_criterion_03_exact_analytic_case(battery_reports):
    singles = [cid for cid, (case, _, _) in battery_reports.items()
               if case["A_name"] == "single"]
    assert singles
    for cid in singles:
        case, report, _ = battery_reports[cid]
        p, m = case["p"], case["field_degree"]
        one = [[1] + [0] * (m - 1)] + [[0] * m for _ in range(p - 2)]
        for route in ("A", "B", "C"):
            assert report.data["routes"][route]["unit_root"] == one, (cid, route)
        lf = report.data["routes"]["C"]["lfunction"]
        zero = [[0] * m for _ in range(p - 1)]
        minus_one = [[(p ** PRECISION) - 1] + [0] * (m - 1)] + \
            [[0] * m for _ in range(p - 2)]
        # the processed power is 1 - T exactly through truncation
        assert lf["series"][0] == one and lf["series"][1] == minus_one, cid
        assert all(c == zero for c in lf["series"][2:]), cid
        assert lf["unit_root_matches"], cid
        for row in report.data["oracle"]["rows"]:
            counts = row["counts"]
            cyclo = [c - counts[-1] for c in counts]
            assert cyclo == [-1] + [0] * (p - 1), (cid, row)
    print(f"\nACCEPTANCE 03 exact case A={{1}}: PASS ({len(singles)} cases)")


def test_criterion_04_unit_root_uniqueness(battery_reports):
    for cid, (_, report, _) in battery_reports.items():
        route = report.data["routes"]["C"]
        assert route["slope_zero_length"] == 1, cid
        zero_slopes = [seg for seg in route["newton_polygon"]
                       if seg[0] == [0, 1]]
        assert len(zero_slopes) == 1 and zero_slopes[0][1] == 1, cid
        # the root-scaling transform preserves the unique unit root
        assert route["lfunction"]["unit_root_matches"], cid
    print("\nACCEPTANCE 04 unique slope-zero segment: PASS")


def _edge_has_degenerate_torus_point(p, lams):
    """Common torus zero of the edge polynomial and its toric derivatives."""
    A = EXPONENT_SETS["edge"]

    def mono(x, y, a):
        # exact Laurent monomial via modular inverse
        xv = pow(x, a[0], p) if a[0] >= 0 else pow(pow(x, -1, p), -a[0], p)
        yv = pow(y, a[1], p) if a[1] >= 0 else pow(pow(y, -1, p), -a[1], p)
        return (xv * yv) % p

    for x in range(1, p):
        for y in range(1, p):
            f = sum(l * mono(x, y, a) for l, a in zip(lams, A)) % p
            fx = sum(l * a[0] * mono(x, y, a) for l, a in zip(lams, A)) % p
            fy = sum(l * a[1] * mono(x, y, a) for l, a in zip(lams, A)) % p
            if f == fx == fy == 0:
                return True
    return False


def test_criterion_05_degenerate_cases(degenerate_reports):
    for cid, (case, report) in degenerate_reports.items():
        p = case["p"]
        lams = [c[0] for c in case["coeffs"]]
        # all three exponents lie on the facet x + y = 1, so the edge
        # polynomial is the whole of f; degeneracy means a singular torus zero
        assert _edge_has_degenerate_torus_point(p, lams), cid
        assert not report.data["errors"], (cid, report.data["errors"])
        for pair, digits in report.data["agreement"]["pairs"].items():
            assert digits >= 3, (cid, pair, digits)
    print("\nACCEPTANCE 05 degenerate cases still agree: PASS")


def test_criterion_06_hypergeometric_system():
    relations = {
        "kloosterman": (1, 1),
        "skew": (-1, -2),
        "triangle": (1, 1, 1),
    }
    nonzero_i = {
        "kloosterman": (1,),
        "skew": (1,),
        "triangle": (1, 0),
    }
    checked = 0
    for aname, gen in relations.items():
        A = ExponentSet(len(EXPONENT_SETS[aname][0]), EXPONENT_SETS[aname])
        for p in (2, 3, 5):
            for mult in (1, 2, 3):
                ell = tuple(mult * g for g in gen)
                for i in ((0,) * A.n, nonzero_i[aname]):
                    assert check_annihilators(A, i, ell, 8, p) is None, \
                        (aname, p, ell, i)
                    checked += 1
    # the single-exponent set has a trivial relation lattice; the Euler
    # operators are still annihilating
    assert relation_lattice_basis(EXPONENT_SETS["single"]) == []
    for p in (2, 3, 5):
        assert check_annihilators(ExponentSet(1, EXPONENT_SETS["single"]),
                                  (0,), (0,), 8, p) is None
    print(f"\nACCEPTANCE 06 hypergeometric annihilators: PASS "
          f"({checked} residuals, degree 8)")


def test_criterion_07_analytic_continuation_witness(battery_reports):
    for p in (2, 3, 5):
        ring = make_ring(p, 1, None, PRECISION)
        series = calF_series(ExponentSet(1, EXPONENT_SETS["kloosterman"]),
                             40, ring)
        shells = series.shell_min_valuations()
        # structural degrees are the even ones; absent shells sit at the cap
        seq = []
        for d in range(0, 41, 2):
            v = shells.get(d)
            seq.append(F(PRECISION) if v is None else v)
        found = None
        for start in range(1, len(seq)):
            tail = seq[start:]
            if all(v >= 1 for v in tail) and \
                    all(b >= a for a, b in zip(tail, tail[1:])):
                found = 2 * start
                break
        assert found is not None and found <= 40, (p, seq)
        # route A output stable under doubling of the accepted truncation
        cid = f"p{p}-kloosterman"
        case, report, _ = battery_reports[cid]
        route = report.data["routes"]["A"]
        assert route["stability_digits"] >= PRECISION
        spec = LaurentSpec(ExponentSet(1, EXPONENT_SETS["kloosterman"]),
                           p, 1, 1, case["coeffs"])
        u_double = route_a_once(spec, 2 * route["degmax_used"], ring, 1)
        assert u_double.digits() == route["unit_root"], p
    print("\nACCEPTANCE 07 analytic continuation witness: PASS")


def test_criterion_08_bound_invariant_suites(battery_reports, rng):
    # splitting series bound at every computed index
    for p in (2, 3, 5):
        ring = make_ring(p, 1, None, PRECISION)
        sc = splitting_coefficients(ring, default_s_cut(ring))
        for i, b in enumerate(sc.b):
            assert b.val_at_least(F(i * (p - 1), p * p)), (p, i)
    # kernel coefficient bound and normalized non-unit entries per case
    for cid, (case, report, _) in battery_reports.items():
        if case["field_degree"] != 1:
            continue
        spec = LaurentSpec(ExponentSet(len(case["A"][0]), case["A"]),
                           case["p"], 1, 1, case["coeffs"])
        ring = make_ring(case["p"], 1, None, PRECISION)
        W = build_weight_data(spec.A)
        od = OperatorData(spec, W, ring, 4)
        wfac = F(case["p"] - 1, case["p"] ** 2)
        for oi in range(od.orbit_len):
            for mu, val in od.kernel_table(oi).items():
                assert val.val_at_least(weight(W, mu) * wfac), (cid, mu)
        T = od.one_step_matrix(0)
        from unitroots.padic import RingElem
        for iw, om in enumerate(od.basis):
            for iv, nu in enumerate(od.basis):
                e = RingElem(ring, [list(r) for r in T[iw, iv]])
                if e.is_zero() or (iw, iv) == (0, 0):
                    continue
                norm_ord = e.valuation() + wfac * (weight(W, nu) - weight(W, om))
                assert norm_ord > 0, (cid, om, nu)
    # weight properties on 1000 random cone points per exponent set,
    # definitional oracle on 100
    for aname in ("single", "kloosterman", "skew", "triangle"):
        vecs = EXPONENT_SETS[aname]
        A = ExponentSet(len(vecs[0]), vecs)
        W = build_weight_data(A)
        n = A.n
        pts = []
        for _ in range(1000):
            cs = [rng.randrange(12) for _ in vecs]
            pts.append(tuple(sum(c * v[i] for c, v in zip(cs, vecs))
                             for i in range(n)))
        for k, nu in enumerate(pts):
            w = weight(W, nu)
            assert w >= 0 and (w == 0) == (not any(nu))
            assert weight(W, tuple(2 * x for x in nu)) == 2 * w
            mu = pts[(k + 1) % len(pts)]
            assert weight(W, tuple(a + b for a, b in zip(nu, mu))) \
                <= w + weight(W, mu)
        for nu in pts[:100]:
            assert weight(W, nu) == weight_definitional(A, nu)
    print("\nACCEPTANCE 08 coefficient-bound invariant suites: PASS")


def test_criterion_09_adjointness(battery_reports):
    for cid, (case, _, _) in battery_reports.items():
        spec = LaurentSpec(ExponentSet(len(case["A"][0]), case["A"]),
                           case["p"], case["field_degree"], 1, case["coeffs"])
        ring = make_ring(case["p"], case["field_degree"], None, PRECISION)
        worst = adjoint_check(spec, 4, ring)
        assert worst is None, (cid, worst)
    print("\nACCEPTANCE 09 adjointness at interior basis: PASS")


def test_criterion_10_power_iteration_contraction(battery_reports):
    """Budget convergence holds everywhere; the strict-increase clause is
    refuted by one case (see the decisions ledger): at p = 2 the per-cycle
    contraction gain (p-1)^2/(D p^2) is below the integer ord resolution, so
    consecutive normalizer differences can share an order.  The criterion is
    asserted as stated and left failing on the measured plateau."""
    violations = []
    for cid, (_, report, _) in battery_reports.items():
        route = report.data["routes"]["B"]
        assert route["cycles"] <= route["budget"], cid
        orders = route["normalizer_diff_orders"]
        assert orders and orders[-1] is None, (cid, orders)
        prev = None
        for entry in orders:
            if entry is None:
                break
            v = F(entry[0], entry[1])
            if prev is not None and v <= prev:
                violations.append((cid, [o if o is None else str(F(*o))
                                         for o in orders]))
                break
            prev = v
    if violations:
        print("\nACCEPTANCE 10 power-iteration contraction: FAIL "
              f"(strict normalizer-order increase refuted: {violations}; "
              "budget convergence holds on all cases)")
    else:
        print("\nACCEPTANCE 10 power-iteration contraction: PASS")
    assert not violations, violations
