"""Job orchestration: configuration, route execution, reporting, caching.

A job names a prime power, an exponent set, residue-field coefficients and a
precision, then runs any subset of the three analytic routes plus the exact
character-sum oracle and cross-checks the results digit by digit.  Reports
are deterministic JSON with integers only (timings are milliseconds).
"""

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import dwork, hyperg, oracle, weights
from .errors import (ConfigInvalid, PrecisionUnstable, UnitRootError)
from .padic import make_ring

SCHEMA_VERSION = 1
ROUTES = ("A", "B", "C", "oracle")


@dataclass
class JobConfig:
    p: int
    A: tuple
    coeffs: tuple
    epsilon: int = 1
    field_degree: int = 1
    field_poly: tuple = None
    precision: int = 4
    routes: tuple = ROUTES
    degmax: int = None
    wmax: Fraction = None
    lmax: int = 6
    cache_dir: str = None
    override_enumeration_guard: bool = False
    output: str = None

    @classmethod
    def from_dict(cls, raw):
        if not isinstance(raw, dict):
            raise ConfigInvalid("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known - {"n"}
        if unknown:
            raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
        try:
            p = int(raw["p"])
            A = tuple(tuple(int(c) for c in v) for v in raw["A"])
            coeffs = tuple(tuple(int(c) for c in v) for v in raw["coeffs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigInvalid(f"p, A and coeffs are required: {exc}") from None
        if "n" in raw and any(len(v) != int(raw["n"]) for v in A):
            raise ConfigInvalid("exponent vectors do not match the declared n")
        kw = {}
        for key in ("epsilon", "field_degree", "precision", "lmax"):
            if key in raw and raw[key] is not None:
                kw[key] = int(raw[key])
        if raw.get("field_poly") is not None:
            kw["field_poly"] = tuple(int(c) for c in raw["field_poly"])
        if raw.get("routes") is not None:
            routes = tuple(str(r) for r in raw["routes"])
            bad = [r for r in routes if r not in ROUTES]
            if bad:
                raise ConfigInvalid(f"unknown routes: {bad}")
            kw["routes"] = routes
        if raw.get("degmax") is not None:
            kw["degmax"] = int(raw["degmax"])
        if raw.get("wmax") is not None:
            w = raw["wmax"]
            kw["wmax"] = Fraction(w[0], w[1]) if isinstance(w, (list, tuple)) \
                else Fraction(int(w))
        for key in ("cache_dir", "output"):
            if raw.get(key) is not None:
                kw[key] = str(raw[key])
        if raw.get("override_enumeration_guard"):
            kw["override_enumeration_guard"] = True
        cfg = cls(p=p, A=A, coeffs=coeffs, **kw)
        cfg.validate()
        return cfg

    def validate(self):
        if self.field_degree % self.epsilon:
            raise ConfigInvalid("epsilon must divide field_degree")
        if len(self.coeffs) != len(self.A):
            raise ConfigInvalid("need exactly one coefficient per exponent")
        if self.precision < 1:
            raise ConfigInvalid("precision must be at least 1")
        if not all(0 < len(v) for v in self.A):
            raise ConfigInvalid("empty exponent vector")

    def laurent_spec(self):
        try:
            A = weights.ExponentSet(len(self.A[0]), self.A)
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from None
        return hyperg.LaurentSpec(A, self.p, self.field_degree, self.epsilon,
                                  self.coeffs, self.field_poly)

    def canonical(self):
        return {
            "p": self.p,
            "n": len(self.A[0]),
            "A": [list(v) for v in self.A],
            "coeffs": [list(c) for c in self.coeffs],
            "epsilon": self.epsilon,
            "field_degree": self.field_degree,
            "field_poly": list(self.field_poly) if self.field_poly else None,
            "precision": self.precision,
            "routes": list(self.routes),
            "degmax": self.degmax,
            "wmax": _frac(self.wmax) if self.wmax is not None else None,
            "lmax": self.lmax,
            "override_enumeration_guard": self.override_enumeration_guard,
        }


def _frac(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def _ord_field(v):
    return None if v is None else _frac(v)


def elem_digits(x):
    return x.digits()


def ring_meta(ring):
    return {"p": ring.p, "m": ring.m, "modulus": list(ring.g),
            "precision": ring.N}


def default_wmax(ring, D):
    bound = max(4, Fraction(ring.N * ring.p ** 2, (ring.p - 1) ** 2))
    import math
    return Fraction(math.ceil(bound * D), D)


class KernelCache:
    """Content-addressed store for kernel coefficient tables."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def key(self, odata, oi):
        lam = odata.lam_orbit[oi]
        payload = json.dumps({
            "ring": ring_meta(odata.ring),
            "A": [list(v) for v in odata.W.A.vectors],
            "lam": [x.digits() for x in lam],
            "s_cut": odata.s_cut,
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def load(self, odata, oi):
        path = self.root / f"kernel-{self.key(odata, oi)}.json"
        if not path.exists():
            return False
        data = json.loads(path.read_text())
        ring = odata.ring
        table = {}
        for mu_s, rows in data["table"].items():
            mu = tuple(int(c) for c in mu_s.split(","))
            from .padic import RingElem
            table[mu] = RingElem(ring, tuple(tuple(r) for r in rows))
        odata._btables[oi] = table
        return True

    def store(self, odata, oi):
        table = odata.kernel_table(oi)
        path = self.root / f"kernel-{self.key(odata, oi)}.json"
        data = {"table": {",".join(str(c) for c in mu): v.digits()
                          for mu, v in sorted(table.items())}}
        path.write_text(json.dumps(data, sort_keys=True))


@dataclass
class Report:
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return self.data.get("exit_code", 1)

    def to_json(self):
        return json.dumps(self.data, sort_keys=True, indent=1)

    def without_timing(self):
        clone = json.loads(self.to_json())
        clone.pop("timing", None)
        return clone


def run(config):
    """Execute the requested routes and assemble the cross-checked report."""
    if isinstance(config, dict):
        config = JobConfig.from_dict(config)
    config.validate()
    spec = config.laurent_spec()
    ring = make_ring(config.p, config.field_degree, config.field_poly,
                     config.precision)
    W = weights.build_weight_data(spec.A)
    d = oracle.orbit_degree(spec)
    orbit_len = config.epsilon * d
    timing = {}
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": config.canonical(),
        "field": ring_meta(ring),
        "weights": {
            "facet_forms": [[_frac(c) for c in form] for form in W.facet_forms],
            "cone_facets": [list(g) for g in W.cone_facets],
            "D": W.D,
            "lineality_basis": [list(v) for v in W.lineality_basis],
            "lineality_rank": len(W.lineality_basis),
        },
        "orbit": {"d": d, "epsilon": config.epsilon, "length": orbit_len},
        "routes": {},
        "errors": {},
    }
    unit_roots = {}

    wmax = config.wmax if config.wmax is not None else default_wmax(ring, W.D)
    degmax = config.degmax if config.degmax is not None \
        else hyperg.default_degmax(ring)
    basis = weights.enumerate_weighted_monomials(W, wmax)
    cap = dwork.charpoly_degree_cap([weights.weight(W, mu) for mu in basis],
                                    ring.p, ring.N, len(basis))
    boost = dwork.charpoly_boost(ring.p, min(cap + 2, len(basis)))
    report["truncation"] = {
        "wmax": _frac(wmax),
        "degmax_initial": degmax,
        "basis_size": len(basis),
        "s_cut": dwork.default_s_cut(ring),
        "charpoly_degree_cap": min(cap + 2, len(basis)),
        "charpoly_precision_boost": boost,
        "power_iteration_budget": dwork.power_iteration_budget(ring, W.D),
    }

    odata_boost = None
    if "B" in config.routes or "C" in config.routes:
        ring_boost = make_ring(config.p, config.field_degree, config.field_poly,
                               config.precision + boost)
        t0 = time.perf_counter()
        odata_boost = dwork.OperatorData(spec, W, ring_boost, wmax)
        if config.cache_dir:
            cache = KernelCache(config.cache_dir)
            for oi in range(orbit_len):
                if not cache.load(odata_boost, oi):
                    odata_boost.kernel_table(oi)
                    cache.store(odata_boost, oi)
        timing["operator_tables_ms"] = int(1000 * (time.perf_counter() - t0))

    if "A" in config.routes:
        t0 = time.perf_counter()
        try:
            u, agreed, used = hyperg.unit_root_route_A_detailed(
                spec, degmax, ring, orbit_len)
            unit_roots["A"] = u
            report["routes"]["A"] = {
                "unit_root": elem_digits(u),
                "stability_digits": agreed,
                "degmax_used": used,
            }
        except PrecisionUnstable as exc:
            report["errors"]["A"] = f"PrecisionUnstable: {exc}"
        timing["route_a_ms"] = int(1000 * (time.perf_counter() - t0))

    if "B" in config.routes:
        t0 = time.perf_counter()
        try:
            odata_b = _reduced_operator(odata_boost, spec, W, ring, wmax)
            res = dwork.power_iteration_unit_root(spec, wmax, ring, W=W,
                                                  odata=odata_b)
            unit_roots["B"] = res.u
            lin = set(map(tuple, _lineality_points(W, res.eigenvector)))
            off = [c for mu, c in res.eigenvector.support.items()
                   if mu not in lin]
            off_ord = None
            for c in off:
                v = c.valuation()
                if v is not None and (off_ord is None or v < off_ord):
                    off_ord = v
            report["routes"]["B"] = {
                "unit_root": elem_digits(res.u),
                "cycles": res.cycles,
                "budget": res.budget,
                "normalizer_diff_orders": [_ord_field(v)
                                           for v in res.normalizer_diff_orders],
                "eigenvector_support_size": len(res.eigenvector.support),
                "off_lineality_min_order": _ord_field(off_ord),
            }
        except UnitRootError as exc:
            report["errors"]["B"] = f"{type(exc).__name__}: {exc}"
        timing["route_b_ms"] = int(1000 * (time.perf_counter() - t0))

    if "C" in config.routes:
        t0 = time.perf_counter()
        try:
            Mx = odata_boost.full_matrix()
            P, u = dwork.fredholm_unit_root(Mx, ring)
            unit_roots["C"] = u
            poly = dwork.newton_polygon(P)
            lf = dwork.lfunction_from_fredholm(P, spec.A.n, orbit_len)
            report["routes"]["C"] = {
                "unit_root": elem_digits(u),
                "fredholm": [elem_digits(c) for c in P.coeffs],
                "newton_polygon": [[_frac(s), ln] for s, ln in poly.segments],
                "slope_zero_length": poly.slope_zero_length(),
                "lfunction": {
                    "numerator": [elem_digits(c) for c in lf.numerator],
                    "denominator": [elem_digits(c) for c in lf.denominator],
                    "series": [elem_digits(c) for c in lf.series],
                    "unit_root_matches": lf.unit_root_matches,
                },
            }
        except UnitRootError as exc:
            report["errors"]["C"] = f"{type(exc).__name__}: {exc}"
        timing["route_c_ms"] = int(1000 * (time.perf_counter() - t0))

    if "oracle" in config.routes:
        t0 = time.perf_counter()
        try:
            table = oracle.char_sum_table(
                spec, config.lmax,
                override=config.override_enumeration_guard)
            est = oracle.embed_and_estimate(table, ring)
            report["oracle"] = {
                "d": table.d,
                "rows": [{"l": r.l, "field_degree": r.field_degree,
                          "counts": list(r.counts)} for r in table.rows],
                "ratios": [elem_digits(u) for u in est.ratios],
                "ratio_diff_orders": [_ord_field(v)
                                      for v in est.ratio_diff_orders],
                "s_valuations": [_ord_field(v) for v in est.s_valuations],
            }
            if unit_roots:
                consensus = next(iter(unit_roots.values()))
                report["oracle"]["consensus_orders"] = [
                    _ord_field((u - consensus).valuation()) for u in est.ratios]
        except UnitRootError as exc:
            report["errors"]["oracle"] = f"{type(exc).__name__}: {exc}"
        timing["oracle_ms"] = int(1000 * (time.perf_counter() - t0))

    # pairwise agreement of the analytic routes
    pairs = {}
    names = sorted(unit_roots)
    digits = None
    for i, r1 in enumerate(names):
        for r2 in names[i + 1:]:
            v = (unit_roots[r1] - unit_roots[r2]).valuation()
            agree = ring.N if v is None else int(v)
            pairs[f"{r1}-{r2}"] = agree
            digits = agree if digits is None else min(digits, agree)
    requested = [r for r in config.routes if r != "oracle"]
    ok = (not report["errors"]
          and (len(names) < 2 or digits >= config.precision)
          and set(requested) == set(names))
    report["agreement"] = {
        "pairs": pairs,
        "digits": digits,
        "requested_digits": config.precision,
        "ok": bool(ok),
    }
    if digits is not None and digits < config.precision and len(names) >= 2:
        report["agreement"]["diff_digits"] = _digit_diff(unit_roots, ring)
    report["timing"] = timing
    report["exit_code"] = 0 if ok else 1
    rep = Report(report)
    if config.output:
        Path(config.output).write_text(rep.to_json())
    return rep


def _digit_diff(unit_roots, ring):
    """Side-by-side digit matrices for a disagreement report."""
    return {name: elem_digits(u) for name, u in sorted(unit_roots.items())}


def _reduced_operator(odata_boost, spec, W, ring, wmax):
    """Reuse boosted kernel tables at the report precision."""
    if odata_boost is None:
        return None
    od = dwork.OperatorData.__new__(dwork.OperatorData)
    od.spec = spec
    od.W = W
    od.ring = ring
    od.wmax = Fraction(wmax)
    od.basis = odata_boost.basis
    od.index = odata_boost.index
    od.d = odata_boost.d
    od.orbit_len = odata_boost.orbit_len
    od.lam_orbit = [tuple(x.reduce_to(ring) for x in lam)
                    for lam in odata_boost.lam_orbit]
    od.s_cut = odata_boost.s_cut
    od.sc = dwork.SplittingCoeffs(ring, tuple(b.reduce_to(ring)
                                              for b in odata_boost.sc.b))
    od._btables = {}
    od._onestep = {oi: T % ring.pN
                   for oi, T in odata_boost._onestep.items()}
    for oi in range(od.orbit_len):
        if oi not in od._onestep:
            od._onestep[oi] = odata_boost.one_step_matrix(oi) % ring.pN
        od._btables[oi] = {mu: v.reduce_to(ring)
                           for mu, v in odata_boost.kernel_table(oi).items()}
    return od


def _lineality_points(W, xseries):
    """Support points lying in the lineality lattice."""
    if not W.lineality_basis:
        return [mu for mu in xseries.support if not any(mu)]
    # mu is in the lineality lattice iff every cone facet vanishes on it
    out = []
    for mu in xseries.support:
        if all(sum(g * x for g, x in zip(row, mu)) == 0 for row in W.cone_facets):
            out.append(mu)
    return out
