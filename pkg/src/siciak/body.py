"""Exact convex polytopes in the nonnegative orthant.

A body is the convex hull of finitely many generators with coordinates in
Q(sqrt(d)), one of which must be the origin.  Supporting functions evaluate
in floats; hull membership, rational density and preimages stay exact.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import (ExactMatrix, QuadExt, exact_kernel, exact_solve,
                    format_rational, is_square_free, parse_rational,
                    qext_ceil, qext_sign)


@dataclass(frozen=True)
class LatticePointSet:
    """Integer points of the dilate m*S, sorted lexicographically."""

    m: int
    points: tuple


class ConvexBody:
    """Convex hull of generators in Q(sqrt(d))^n with 0 among them."""

    def __init__(self, n: int, radicand: int, vertices):
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        if not is_square_free(radicand):
            raise ValueError(f"radicand {radicand} is not square-free and >= 2")
        verts = []
        for v in vertices:
            if len(v) != n:
                raise ValueError("vertex length does not match ambient dimension")
            row = []
            for c in v:
                q = c if isinstance(c, QuadExt) else QuadExt.rational(c, radicand)
                if not q.is_rat and q.d != radicand:
                    raise ValueError("mixed radicands in vertex coordinates")
                q = QuadExt(q.a, q.b, radicand)
                if qext_sign(q) < 0:
                    raise ValueError("body must lie in the nonnegative orthant")
                row.append(q)
            verts.append(tuple(row))
        if not verts:
            raise ValueError("vertex list must be non-empty")
        if not any(all(c.is_zero() for c in v) for v in verts):
            raise ValueError("the origin must be among the generators")
        self.n = n
        self.radicand = radicand
        self.vertices = tuple(verts)
        self._float_vertices = np.array(
            [[c.to_float() for c in v] for v in verts], dtype=float)
        self._lattice_cache: dict[int, LatticePointSet] = {}
        self._span_kernel = None
        self._ell = None
        self._density = None

    # ---- linear span ---------------------------------------------------

    def _vertex_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.vertices, self.radicand)

    @property
    def ell(self) -> int:
        """Affine dimension of the body (0 is a vertex, so = dim of span)."""
        if self._ell is None:
            from .field import exact_rank
            self._ell = exact_rank(self._vertex_matrix())
        return self._ell

    def span_kernel(self):
        """Basis of the orthogonal complement of span(S) over Q(sqrt(d))."""
        if self._span_kernel is None:
            self._span_kernel = exact_kernel(self._vertex_matrix())
        return self._span_kernel

    # ---- supporting functions -------------------------------------------

    def support_value(self, xi) -> float:
        """sup over the body of <s, xi>; max over generators for a polytope."""
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (self.n,):
            raise ValueError("direction has wrong length")
        if not np.all(np.isfinite(xi)):
            raise ValueError("direction must be finite")
        return float(np.max(self._float_vertices @ xi))

    def log_support(self, z) -> float:
        """Support value at (log|z_1|, ..., log|z_n|); needs all z_j != 0."""
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.n,):
            raise ValueError("point has wrong length")
        if np.any(z == 0):
            raise ValueError("log_support is undefined on coordinate hyperplanes")
        return self.support_value(np.log(np.abs(z)))

    # ---- lattice points -------------------------------------------------

    def lattice_points(self, m: int) -> LatticePointSet:
        if m < 0:
            raise ValueError("dilation degree must be non-negative")
        cached = self._lattice_cache.get(m)
        if cached is not None:
            return cached
        if m == 0:
            result = LatticePointSet(0, (tuple([0] * self.n),))
            self._lattice_cache[0] = result
            return result
        bounds = []
        for j in range(self.n):
            top = self.vertices[0][j]
            for v in self.vertices[1:]:
                if qext_sign(v[j] - top) > 0:
                    top = v[j]
            bounds.append(max(qext_ceil(top * m), 0))
        candidates = np.array(
            list(itertools.product(*[range(b + 1) for b in bounds])), dtype=np.int64)
        # span prefilter (float, conservative): alpha must lie in span(S)
        kern = self.span_kernel()
        if kern and len(candidates) > 1:
            kf = np.array([[e.to_float() for e in v] for v in kern])
            res = np.abs(candidates @ kf.T).max(axis=1)
            scale = 1.0 + np.abs(candidates).sum(axis=1) * np.abs(kf).max()
            candidates = candidates[res < 1e-7 * scale]
        scaled = [tuple(c * m for c in v) for v in self.vertices]
        pts = [tuple(int(x) for x in alpha) for alpha in candidates
               if _hull_contains(scaled, alpha, self.radicand)]
        pts.sort()
        result = LatticePointSet(m, tuple(pts))
        self._lattice_cache[m] = result
        return result

    # ---- rational density -----------------------------------------------

    def is_rationally_dense(self):
        """True iff the rational points of the body are dense in it.

        Equivalent to: the rational solutions of the doubled orthogonality
        system (rational and surd parts of each span-complement constraint)
        span a space of dimension equal to dim(span S).  Returns the verdict
        plus a witness: a rational basis of span(S) over Q when dense, a
        separating constraint pair (c, e) otherwise.
        """
        if self._density is not None:
            return self._density
        kern = self.span_kernel()
        doubled = []
        pairs = []
        for w in kern:
            c = [e.a for e in w]
            s = [e.b for e in w]
            pairs.append((c, s))
            doubled.append(c)
            doubled.append(s)
        if not doubled:
            # full-dimensional body: span is all of R^n
            basis = [[Fraction(int(i == j)) for j in range(self.n)]
                     for i in range(self.n)]
            self._density = (True, basis)
            return self._density
        basis = _rational_kernel(doubled, self.n)
        dense = len(basis) == self.ell
        if dense:
            self._density = (True, basis)
        else:
            witness = next((p for p in pairs if _pair_independent(p, self.n)),
                           pairs[0])
            self._density = (False, witness)
        return self._density

    # ---- transforms -----------------------------------------------------

    def scale(self, k: int) -> "ConvexBody":
        """The dilate k*S as a body (generators scaled by k)."""
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        return ConvexBody(self.n, self.radicand,
                          [tuple(c * k for c in v) for v in self.vertices])

    # ---- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "radicand": self.radicand,
            "vertices": [[c.to_json() for c in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ConvexBody":
        d = int(obj["radicand"])
        verts = [[QuadExt.from_json(pair, d) for pair in v]
                 for v in obj["vertices"]]
        return cls(int(obj["n"]), d, verts)

    @classmethod
    def load(cls, path: str) -> "ConvexBody":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return f"ConvexBody(n={self.n}, ell={self.ell}, {len(self.vertices)} generators)"


def _pair_independent(pair, n) -> bool:
    c, e = pair
    M = ExactMatrix.from_rows([c, e], 2)
    from .field import exact_rank
    return exact_rank(M) == 2


def _rational_kernel(rows, n):
    """Rational kernel basis of a rational constraint matrix (rows x n)."""
    nz = [r for r in rows if any(x != 0 for x in r)]
    if not nz:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    M = ExactMatrix.from_rows(nz, 2)
    return [[e.a for e in v] for v in exact_kernel(M)]


def _hull_contains(vertices, point, d: int) -> bool:
    """Exact test: point in conv(vertices)?  Phase-I simplex over Q(sqrt(d)).

    Feasibility of  sum_k lam_k v_k = point,  sum_k lam_k = 1,  lam >= 0.
    """
    n = len(point)
    nv = len(vertices)
    zero = QuadExt.rational(0, d)
    one = QuadExt.rational(1, d)
    # rows: n equality constraints + convexity row; make all rhs >= 0
    rows = []
    rhs = []
    for i in range(n):
        coeffs = [v[i] for v in vertices]
        b = QuadExt.rational(int(point[i]), d)
        if qext_sign(b) < 0:
            coeffs = [-c for c in coeffs]
            b = -b
        rows.append(coeffs)
        rhs.append(b)
    rows.append([one] * nv)
    rhs.append(one)
    m = len(rows)
    width = nv + m  # lambdas + one artificial per row
    tab = []
    for i in range(m):
        row = list(rows[i]) + [zero] * m + [rhs[i]]
        row[nv + i] = one
        tab.append(row)
    # objective: minimize sum of artificials; reduced costs w.r.t. artificial basis
    obj = [zero] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] = obj[j] - tab[i][j]
    for i in range(m):
        obj[nv + i] = zero
    basis = list(range(nv, nv + m))
    while True:
        enter = next((j for j in range(width) if qext_sign(obj[j]) < 0), None)
        if enter is None:
            break
        # Bland ratio test: smallest basis index among minimizers
        best = None
        best_ratio = None
        for i in range(m):
            piv = tab[i][enter]
            if qext_sign(piv) > 0:
                ratio = tab[i][width] / piv
                if best is None or qext_sign(ratio - best_ratio) < 0 or (
                        qext_sign(ratio - best_ratio) == 0 and basis[i] < basis[best]):
                    best, best_ratio = i, ratio
        if best is None:
            # Phase-I objective is bounded below by 0; cannot happen
            raise RuntimeError("unbounded Phase-I simplex")
        piv = tab[best][enter]
        inv = piv.inverse()
        tab[best] = [e * inv for e in tab[best]]
        for i in range(m):
            if i != best and not tab[i][enter].is_zero():
                f = tab[i][enter]
                tab[i] = [e - f * p for e, p in zip(tab[i], tab[best])]
        if not obj[enter].is_zero():
            f = obj[enter]
            obj = [e - f * p for e, p in zip(obj, tab[best])]
        basis[best] = enter
    # feasible iff artificials sum to zero, i.e. -obj[width] == 0
    return obj[width].is_zero()


def preimage_body(S: ConvexBody, L) -> ConvexBody:
    """The body T = L^{-1}(S) in R^ell_+, computed vertex-wise.

    L is a LatticeMap (injective, integer columns).  Fails if a generator of
    S has no preimage or a preimage leaves the nonnegative orthant.
    """
    d = S.radicand
    cols = L.columns  # ell columns of length n
    M = ExactMatrix.from_rows(
        [[cols[k][j] for k in range(L.ell)] for j in range(S.n)], d)
    tverts = []
    for v in S.vertices:
        t = exact_solve(M, list(v))
        if t is None:
            raise ValueError("generator of S lies outside the image of L")
        tverts.append(tuple(t))
    for t in tverts:
        if any(qext_sign(c) < 0 for c in t):
            raise ValueError("preimage leaves the nonnegative orthant; "
                             "defective lattice map")
    return ConvexBody(L.ell, d, tverts)
