"""Exact rational polytope machinery for the weight function.

Given a finite spanning set A of Z^n, the polytope is the convex hull of
A together with the origin and the cone C is generated by A.  The weight of
a lattice point nu in C is the least c >= 0 with nu in c*polytope; it is
computed as the maximum of the facet forms normalized to 1 on the facets
missing the origin.  Cone membership uses the facets through the origin.
Everything is Fraction-exact; dimensions of interest are small, so facet
search is a brute-force scan over point subsets.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NotSpanning, OutsideCone


@dataclass(frozen=True)
class ExponentSet:
    n: int
    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(int(c) for c in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if any(len(v) != self.n for v in vecs):
            raise ValueError("exponent vectors have inconsistent dimension")
        if len(set(vecs)) != len(vecs):
            raise ValueError("duplicate exponent vectors")
        if _rank([list(v) for v in vecs]) < self.n:
            raise NotSpanning(f"exponents do not span R^{self.n}")


@dataclass(frozen=True)
class WeightData:
    A: ExponentSet
    facet_forms: tuple      # Fraction row vectors; 1 on facets missing 0
    cone_facets: tuple      # integer row vectors g with C = {g.x <= 0}
    D: int                  # weights lie in (1/D) Z
    lineality_basis: tuple  # lattice basis of C cap (-C) cap Z^n


def _rank(rows):
    """Rank over Q by fraction-free elimination (destroys rows)."""
    rows = [[Fraction(c) for c in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _nullspace_1d(rows, ncols):
    """One integer basis vector of the nullspace if it is 1-dimensional."""
    mat = [[Fraction(c) for c in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        inv = pr[col]
        mat[rank] = [a / inv for a in pr]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    if ncols - rank != 1:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    vec = [Fraction(0)] * ncols
    vec[free] = Fraction(1)
    for r, col in enumerate(pivots):
        vec[col] = -mat[r][free]
    den = lcm(*(f.denominator for f in vec))
    ints = [int(f * den) for f in vec]
    g = gcd(*(abs(c) for c in ints))
    return [c // g for c in ints]


def _hnf_transform(mat):
    """Row HNF of an integer matrix with unimodular transform U (U@mat = H)."""
    nrows = len(mat)
    H = [list(r) for r in mat]
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    row = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if H[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        H[row], H[piv] = H[piv], H[row]
        U[row], U[piv] = U[piv], U[row]
        # euclidean elimination below the pivot
        while True:
            done = True
            for i in range(row + 1, nrows):
                if H[i][col] != 0:
                    done = False
                    q = H[i][col] // H[row][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                    if H[i][col] != 0 and abs(H[i][col]) < abs(H[row][col]):
                        H[row], H[i] = H[i], H[row]
                        U[row], U[i] = U[i], U[row]
            if done:
                break
        if H[row][col] < 0:
            H[row] = [-a for a in H[row]]
            U[row] = [-a for a in U[row]]
        row += 1
    return H, U


def _integer_kernel(rows, ncols):
    """Saturated lattice basis of {x in Z^ncols : rows @ x = 0}."""
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    # left kernel of rows^T equals the kernel of rows
    at = [[rows[r][c] for r in range(len(rows))] for c in range(ncols)]
    H, U = _hnf_transform(at)
    basis = [tuple(U[i]) for i in range(ncols) if all(h == 0 for h in H[i])]
    return basis


def build_weight_data(A):
    """Facet forms, weight denominator, cone facets and lineality lattice."""
    if not isinstance(A, ExponentSet):
        A = ExponentSet(len(A[0]), tuple(A))
    n = A.n
    pts = list(A.vectors)
    origin = tuple([0] * n)
    if origin not in pts:
        pts = pts + [origin]
    facet_forms = []
    cone_facets = []
    seen = set()
    for subset in itertools.combinations(pts, n):
        # hyperplane g.x = c through the subset: nullspace of [x | -1]
        rows = [list(x) + [-1] for x in subset]
        sol = _nullspace_1d(rows, n + 1)
        if sol is None:
            continue
        g, c = sol[:n], sol[n]
        vals = [sum(gi * xi for gi, xi in zip(g, x)) for x in pts]
        if all(v <= c for v in vals):
            pass
        elif all(v >= c for v in vals):
            g, c = [-a for a in g], -c
        else:
            continue
        key = (tuple(g), c)
        if key in seen:
            continue
        seen.add(key)
        # origin inside the hull forces c >= 0
        assert c >= 0
        if c == 0:
            cone_facets.append(tuple(g))
        else:
            facet_forms.append(tuple(Fraction(gi, c) for gi in g))
    assert facet_forms, "bounded polytope must have a facet missing the origin"
    D = lcm(*(f.denominator for form in facet_forms for f in form))
    lineality = _integer_kernel([list(g) for g in cone_facets], n)
    return WeightData(A, tuple(sorted(facet_forms)), tuple(sorted(cone_facets)),
                      D, tuple(sorted(lineality)))


def in_cone(W, nu):
    return all(sum(gi * xi for gi, xi in zip(g, nu)) <= 0 for g in W.cone_facets)


def weight(W, nu):
    """max of the facet forms; raises OutsideCone off the cone."""
    nu = tuple(int(c) for c in nu)
    if not in_cone(W, nu):
        raise OutsideCone(f"{nu} is outside the cone")
    w = max(sum(fi * xi for fi, xi in zip(form, nu)) for form in W.facet_forms)
    return max(w, Fraction(0))


def weight_definitional(A, nu):
    """Independent oracle: least c with nu in c*polytope.

    Equals min{sum s_a : s >= 0, sum s_a a = nu}; the optimum of this little
    program sits on a basic solution, so scanning linearly independent
    subsets of A of size <= n and solving exactly is a complete search.
    """
    if not isinstance(A, ExponentSet):
        A = ExponentSet(len(A[0]), tuple(A))
    nu = tuple(int(c) for c in nu)
    n = A.n
    if all(c == 0 for c in nu):
        return Fraction(0)
    best = None
    for r in range(1, n + 1):
        for subset in itertools.combinations(A.vectors, r):
            sol = _solve_nonneg(subset, nu)
            if sol is None:
                continue
            total = sum(sol, Fraction(0))
            if best is None or total < best:
                best = total
    if best is None:
        raise OutsideCone(f"{nu} is outside the cone")
    return best


def _solve_nonneg(cols, target):
    """Unique solution of sum s_i cols[i] = target with all s_i >= 0, if any."""
    ncols = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(len(target))]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col]
        mat[rank] = [a / inv for a in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank < ncols:
        return None  # dependent columns; a smaller subset covers this case
    for i in range(rank, len(mat)):
        if mat[i][ncols] != 0:
            return None  # inconsistent
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    if any(s < 0 for s in sol):
        return None
    return sol


def enumerate_weighted_monomials(W, wmax):
    """All mu in M with weight(mu) <= wmax, ordered by (weight, lex)."""
    wmax = Fraction(wmax)
    if wmax < 0:
        raise ValueError("wmax must be nonnegative")
    n = W.A.n
    pts = list(W.A.vectors) + [tuple([0] * n)]
    out = []
    ranges = []
    for i in range(n):
        lo = min(Fraction(x[i]) * wmax for x in pts)
        hi = max(Fraction(x[i]) * wmax for x in pts)
        ranges.append(range(math.floor(lo), math.ceil(hi) + 1))
    for mu in itertools.product(*ranges):
        if not in_cone(W, mu):
            continue
        w = weight(W, mu)
        if w <= wmax:
            out.append((w, mu))
    out.sort()
    return [mu for _, mu in out]


def relation_lattice_basis(A):
    """Lattice basis of {ell in Z^|A| : sum ell_a a = 0}."""
    if not isinstance(A, ExponentSet):
        A = ExponentSet(len(A[0]), tuple(A))
    rows = [[v[i] for v in A.vectors] for i in range(A.n)]
    return _integer_kernel(rows, len(A.vectors))
