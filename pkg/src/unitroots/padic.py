"""Exact truncated arithmetic in Z_q[pi], pi^(p-1) = -p.

Elements live in O_N = (Z_q[pi] / (pi^(p-1) + p)) mod p^N, where
Z_q = Z_p[t]/(g) is the unramified extension of residue degree m.  An element
is a (p-1) x m array of residues mod p^N:

    sum_{j < p-1} sum_{k < m} c[j][k] * t^k * pi^j.

The normalization ord p = 1 makes valuations rationals with denominator
p - 1; ord pi = 1/(p-1).  All elements handled here are p-integral.  Division
is only provided for units (and for exact powers of p, with a divisibility
check); anything else raises NonUnitDivision rather than degrading precision.

Teichmueller lifting, the primitive p-th root of unity normalized by
zeta == 1 + pi (mod pi^2), and exact valuation extraction round out the
toolkit.
"""

from fractions import Fraction
from math import comb

from . import gfpoly
from .errors import (CompositeP, NonUnitDivision, PrecisionTooLow,
                     ReduciblePolynomial)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RingSpec:
    """Descriptor of one working ring O_N; immutable after construction."""

    def __init__(self, p, m, g, N):
        self.p = p
        self.m = m
        self.N = N
        self.g = tuple(int(c) for c in g)  # monic, length m+1
        self.pN = p ** N
        self.npi = p - 1
        self.gbar = gfpoly.trim(c % p for c in self.g)
        # t^(m+j) reduction rows, j = 0..m-2, each a length-m vector mod p^N
        red = []
        row = [(-self.g[k]) % self.pN for k in range(m)]
        red.append(tuple(row))
        for _ in range(m - 2):
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                base = red[0]
                for i in range(m):
                    row[i] = (row[i] + top * base[i]) % self.pN
            red.append(tuple(row))
        self._tred = tuple(red)
        self._zeta = None

    def key(self):
        return (self.p, self.m, self.N, self.g)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"RingSpec(p={self.p}, m={self.m}, N={self.N})"

    # --- element constructors -------------------------------------------

    def zero(self):
        return RingElem(self, ((0,) * self.m,) * self.npi, check=False)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        rows = [[0] * self.m for _ in range(self.npi)]
        rows[0][0] = n % self.pN
        return RingElem(self, tuple(tuple(r) for r in rows), check=False)

    def from_tpoly(self, coeffs):
        """Element of Z_q given by an ascending t-coefficient list."""
        if len(coeffs) > self.m:
            raise ValueError("t-polynomial degree exceeds ring degree")
        rows = [[0] * self.m for _ in range(self.npi)]
        for k, c in enumerate(coeffs):
            rows[0][k] = int(c) % self.pN
        return RingElem(self, tuple(tuple(r) for r in rows), check=False)

    def from_fraction(self, fr):
        fr = Fraction(fr)
        den = fr.denominator
        if den % self.p == 0:
            raise NonUnitDivision(f"denominator {den} is divisible by p={self.p}")
        return self.from_int(fr.numerator) * self.from_int(den).inverse()

    def pi(self):
        if self.p == 2:
            return self.from_int(-2)
        rows = [[0] * self.m for _ in range(self.npi)]
        rows[1][0] = 1
        return RingElem(self, tuple(tuple(r) for r in rows), check=False)

    def t_gen(self):
        return self.from_tpoly((0, 1))


def make_ring(p, m=1, g=None, N=4):
    """Validated ring descriptor; deterministic defining polynomial if absent."""
    if not _is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if m < 1 or N < 1:
        raise ValueError("need m >= 1 and N >= 1")
    if g is None:
        g = gfpoly.find_irreducible(p, m)
    g = tuple(int(c) for c in g)
    if len(g) != m + 1 or g[m] % p ** N != 1:
        raise ValueError("defining polynomial must be monic of degree m")
    if not gfpoly.is_irreducible(gfpoly.trim(c % p for c in g), p):
        raise ReduciblePolynomial(f"{g} is reducible mod {p}")
    return RingSpec(p, m, g, N)


class RingElem:
    """Value type; all operations return new elements."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec, rows, check=True):
        if check:
            pN = spec.pN
            rows = tuple(tuple(int(c) % pN for c in r) for r in rows)
            if len(rows) != spec.npi or any(len(r) != spec.m for r in rows):
                raise ValueError("coefficient array has wrong shape")
        self.spec = spec
        self.rows = rows

    # --- predicates ------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for r in self.rows for c in r)

    def is_unit(self):
        return any(c % self.spec.p != 0 for c in self.rows[0])

    def __eq__(self, other):
        return (isinstance(other, RingElem) and self.spec == other.spec
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.spec.key(), self.rows))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RingElem({self.rows})"

    # --- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.spec != self.spec:
                raise ValueError("mixed ring specs")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        if isinstance(other, Fraction):
            return self.spec.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        pN = self.spec.pN
        rows = tuple(tuple((a + b) % pN for a, b in zip(ra, rb))
                     for ra, rb in zip(self.rows, other.rows))
        return RingElem(self.spec, rows, check=False)

    __radd__ = __add__

    def __neg__(self):
        pN = self.spec.pN
        return RingElem(self.spec,
                        tuple(tuple((-c) % pN for c in r) for r in self.rows),
                        check=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        pN, npi, m = spec.pN, spec.npi, spec.m
        raw = [[0] * (2 * m - 1) for _ in range(2 * npi - 1)]
        for j1, r1 in enumerate(self.rows):
            for k1, a in enumerate(r1):
                if not a:
                    continue
                row2 = other.rows
                for j2 in range(npi):
                    r2 = row2[j2]
                    tgt = raw[j1 + j2]
                    for k2, b in enumerate(r2):
                        if b:
                            tgt[k1 + k2] = (tgt[k1 + k2] + a * b) % pN
        # pi^(p-1) -> -p
        for j in range(2 * npi - 2, npi - 1, -1):
            src = raw[j]
            dst = raw[j - npi]
            for k in range(2 * m - 1):
                if src[k]:
                    dst[k] = (dst[k] - spec.p * src[k]) % pN
        # t^m and above reduce mod g
        rows = []
        for j in range(npi):
            row = raw[j]
            for k in range(2 * m - 2, m - 1, -1):
                c = row[k]
                if c:
                    red = spec._tred[k - m]
                    for i in range(m):
                        row[i] = (row[i] + c * red[i]) % pN
            rows.append(tuple(row[:m]))
        return RingElem(spec, tuple(rows), check=False)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        """Inverse of a unit, by Newton lifting from the residue field."""
        spec = self.spec
        if not self.is_unit():
            raise NonUnitDivision("element is not a unit")
        # invert mod (p, pi): extended Euclid in GF(p)[t]/(gbar)
        a0 = gfpoly.trim(c % spec.p for c in self.rows[0])
        inv0 = _ff_inverse(a0, spec.gbar, spec.p)
        y = spec.from_tpoly(inv0 + (0,) * (spec.m - len(inv0)))
        two = spec.from_int(2)
        steps = (spec.N * spec.npi).bit_length() + 1
        for _ in range(steps):
            y = y * (two - self * y)
        assert (self * y - spec.one()).is_zero()
        return y

    def divide_exact_p(self, k):
        """Exact division by p^k; raises if any coefficient is not divisible.

        The result is only trustworthy modulo p^(N-k); callers are expected
        to run at boosted precision when they use this.
        """
        pk = self.spec.p ** k
        rows = []
        for r in self.rows:
            row = []
            for c in r:
                if c % pk:
                    raise NonUnitDivision(f"coefficient {c} not divisible by p^{k}")
                row.append(c // pk)
            rows.append(tuple(row))
        return RingElem(self.spec, tuple(rows), check=False)

    # --- valuation and serialization --------------------------------------

    def valuation(self):
        """Exact order if nonzero at working precision, else None (>= N)."""
        spec = self.spec
        best = None
        for j, r in enumerate(self.rows):
            vrow = None
            for c in r:
                if c:
                    v = 0
                    while c % spec.p == 0:
                        c //= spec.p
                        v += 1
                    if vrow is None or v < vrow:
                        vrow = v
            if vrow is None:
                continue
            cand = Fraction(vrow) + Fraction(j, spec.npi)
            if best is None or cand < best:
                best = cand
        return best

    def val_at_least(self, bound):
        v = self.valuation()
        return v is None or v >= Fraction(bound)

    def reduce_to(self, spec):
        """Image in a ring of lower precision (same p, m, g mod p^N')."""
        if (spec.p, spec.m) != (self.spec.p, self.spec.m) or spec.N > self.spec.N:
            raise ValueError("not a precision reduction of the same ring")
        pN = spec.pN
        return RingElem(spec, tuple(tuple(c % pN for c in r) for r in self.rows),
                        check=False)

    def digits(self):
        """Canonical integer digit matrix, rows indexed by pi-degree."""
        return [list(r) for r in self.rows]


def _ff_inverse(a, modulus, p):
    """Inverse in GF(p)[t]/(modulus) by extended Euclid."""
    if not a:
        raise NonUnitDivision("zero has no inverse in the residue field")
    r0, r1 = gfpoly.trim(modulus), gfpoly.trim(a)
    s0, s1 = (), (1,)
    while r1:
        # divide r0 by r1
        q = ()
        rr = list(r0)
        d1, l1 = len(r1) - 1, r1[-1]
        invl = pow(l1, -1, p)
        qc = [0] * (max(len(r0) - len(r1) + 1, 1))
        while len(rr) - 1 >= d1 and gfpoly.trim(rr):
            if rr[-1] == 0:
                rr.pop()
                continue
            f = (rr[-1] * invl) % p
            sh = len(rr) - 1 - d1
            qc[sh] = f
            for i in range(d1 + 1):
                rr[sh + i] = (rr[sh + i] - f * r1[i]) % p
            rr.pop()
        q = gfpoly.trim(qc)
        r0, r1 = r1, gfpoly.trim(rr)
        s0, s1 = s1, gfpoly.add(s0, tuple((-c) % p for c in gfpoly.mul(q, s1, p)), p)
    # r0 is the gcd, a nonzero constant since the modulus is irreducible
    c = pow(r0[0], -1, p)
    return gfpoly.trim((x * c) % p for x in s0)


def valuation(x):
    return x.valuation()


def teichmueller(spec, xbar):
    """The root-of-unity (or zero) lift of a residue-field element.

    xbar is an ascending t-coefficient list mod p.  Fixed point of the
    q-power map, q = p^m; each step gains at least one p-adic digit, so at
    most N+2 iterations are needed and the equality test makes it exact.
    """
    x = spec.from_tpoly(tuple(c % spec.p for c in xbar))
    if x.is_zero():
        return x
    q = spec.p ** spec.m
    for _ in range(spec.N + 2):
        nxt = x ** q
        if nxt == x:
            return x
        x = nxt
    raise AssertionError("Teichmueller iteration failed to stabilize")


def zeta_p(spec):
    """Primitive p-th root of unity with zeta == 1 + pi (mod pi^2).

    Writing zeta = 1 + pi*y, the cyclotomic equation becomes
        G(y) = 1 - y^(p-1) + sum_{k=2}^{p-1} (C(p,k)/p) pi^(k-1) y^(k-1) = 0,
    which has a simple root at y == 1 mod pi; Newton iteration on G converges
    quadratically from y = 1.
    """
    if spec.N * spec.npi < 2:
        raise PrecisionTooLow("cannot separate zeta_p from 1 at this precision")
    if spec._zeta is not None:
        return spec._zeta
    p = spec.p
    if p == 2:
        z = spec.from_int(-1)
        spec._zeta = z
        return z
    pi = spec.pi()
    # G as coefficient list in y (ascending); degree p-1 term is -y^(p-1)
    coeffs = [spec.one()]
    for k in range(2, p):
        coeffs.append(spec.from_int(comb(p, k) // p) * pi ** (k - 1))
    coeffs.append(-spec.one())
    dcoeffs = [spec.from_int(k) * c for k, c in enumerate(coeffs) if k >= 1]

    def _eval(cs, y):
        acc = spec.zero()
        for c in reversed(cs):
            acc = acc * y + c
        return acc

    y = spec.one()
    steps = (spec.N * spec.npi).bit_length() + 2
    for _ in range(steps):
        gy = _eval(coeffs, y)
        if gy.is_zero():
            break
        y = y - gy * _eval(dcoeffs, y).inverse()
    z = spec.one() + pi * y
    assert (z ** p - spec.one()).is_zero() and not (z - spec.one()).is_zero()
    spec._zeta = z
    return z


class _FactorialTable:
    """Incremental p-stripped factorials mod p^N: k! = p^vp(k!) * unit."""

    def __init__(self, spec):
        self.spec = spec
        self.vp = [0]      # vp(k!)
        self.unit = [1]    # prod_{j<=k} j/p^vp(j) mod p^N

    def grow(self, k):
        p, pN = self.spec.p, self.spec.pN
        while len(self.vp) <= k:
            j = len(self.vp)
            v = 0
            while j % p == 0:
                j //= p
                v += 1
            self.vp.append(self.vp[-1] + v)
            self.unit.append((self.unit[-1] * j) % pN)

    def __call__(self, k):
        self.grow(k)
        return self.vp[k], self.unit[k]


def pi_pow_over_factorials(spec, k, factorials):
    """pi^k / prod(f!) as a ring element, for p-integral combinations.

    pi^k = pi^(k mod (p-1)) * (-p)^floor(k/(p-1)); the leftover power of p
    is nonnegative whenever k is the sum of the factorial arguments (the
    base-p digit sums make up the difference), which covers every exp-type
    coefficient used here.  Factorials enter through p-stripped unit parts
    mod p^N, so large indices stay cheap.
    """
    table = getattr(spec, "_fact_table", None)
    if table is None:
        table = spec._fact_table = _FactorialTable(spec)
    r, e = k % spec.npi, k // spec.npi
    vsum = 0
    upar = 1
    for f in factorials:
        v, u = table(f)
        vsum += v
        upar = (upar * u) % spec.pN
    e_p = e - vsum
    if e_p < 0:
        raise NonUnitDivision("combination is not p-integral")
    if e_p >= spec.N:
        return spec.zero()
    val = spec.from_int((-1) ** (e % 2) * spec.p ** e_p)
    return val * spec.from_int(upar).inverse() * spec.pi() ** r
