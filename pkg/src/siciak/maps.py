"""Monomial maps attached to an integer lattice map.

The map sends z to (z^eta_1, ..., z^eta_ell) where eta_k are the integer
columns of the lattice map; the kernel rows complete them to a square basis
used to parametrize fibers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly import SparsePolynomial


@dataclass(frozen=True)
class LatticeMap:
    """Integer columns eta_1..eta_ell plus an integer basis of the
    orthogonal-complement lattice, forming the square matrix B row-wise."""

    n: int
    ell: int
    columns: list  # ell columns, each of length n
    kernel_rows: list  # n - ell rows, each of length n

    def __post_init__(self):
        if len(self.columns) != self.ell or any(len(c) != self.n for c in self.columns):
            raise ValueError("column dimensions do not match")
        if len(self.kernel_rows) != self.n - self.ell or any(
                len(r) != self.n for r in self.kernel_rows):
            raise ValueError("kernel row dimensions do not match")
        for c in self.columns:
            for r in self.kernel_rows:
                if sum(x * y for x, y in zip(c, r)) != 0:
                    raise ValueError("kernel rows must be orthogonal to columns")
        if round(abs(np.linalg.det(np.array(self.B, dtype=float)))) == 0:
            raise ValueError("basis rows are linearly dependent")

    @property
    def B(self) -> list:
        """Square matrix whose rows are eta_1..eta_n."""
        return [list(c) for c in self.columns] + [list(r) for r in self.kernel_rows]

    # ---- evaluation -------------------------------------------------------

    def apply(self, z):
        """Componentwise z^eta_k; z must have no zero coordinates."""
        z = tuple(complex(c) for c in z)
        if len(z) != self.n:
            raise ValueError("point has wrong length")
        if any(c == 0 for c in z):
            raise ValueError("monomial maps are undefined on coordinate hyperplanes")
        return tuple(_monomial(z, col) for col in self.columns)

    def pullback_poly(self, p: SparsePolynomial) -> SparsePolynomial:
        """Relabel exponents beta -> L(beta); coefficients carry over."""
        if p.n != self.ell:
            raise ValueError("polynomial dimension does not match map domain")
        terms = {}
        for beta, coeff in p.terms.items():
            alpha = tuple(sum(self.columns[k][j] * beta[k] for k in range(self.ell))
                          for j in range(self.n))
            if any(a < 0 for a in alpha):
                raise ValueError("pullback exponent leaves the nonnegative "
                                 "orthant; inconsistent body pair")
            terms[alpha] = terms.get(alpha, 0) + coeff
        return SparsePolynomial(self.n, p.m, terms, body_tag=p.body_tag)

    def pushforward_weight(self, samples):
        """Image samples with the fiberwise minimum weight.

        Images coinciding within 1e-9 relative per coordinate are merged;
        each group gets the minimum of its weights.
        """
        from .samples import WeightedSampleSet
        reps = np.zeros((0, self.ell), dtype=complex)
        weights = []
        points = []
        for z, q in zip(samples.points, samples.weights):
            w = self.apply(z)
            if len(reps):
                close = np.all(
                    np.abs(np.array(w) - reps) <= 1e-9 * (1 + np.abs(reps)),
                    axis=1)
                hits = np.flatnonzero(close)
            else:
                hits = []
            if len(hits):
                i = int(hits[0])
                weights[i] = min(weights[i], q)
            else:
                reps = np.vstack([reps, np.array(w)[None, :]])
                points.append(w)
                weights.append(q)
        return WeightedSampleSet(
            points=points,
            weights=weights,
            descriptor={"kind": "explicit"},
        )

    def solve_preimage(self, w):
        """Minimal-norm point z with map(z) = w, via principal logarithms."""
        w = tuple(complex(c) for c in w)
        if len(w) != self.ell:
            raise ValueError("target has wrong length")
        if any(c == 0 for c in w):
            raise ValueError("targets must avoid coordinate hyperplanes")
        A = np.array([list(c) for c in self.columns], dtype=float)  # ell x n
        b = np.log(np.array(w, dtype=complex))
        c, *_ = np.linalg.lstsq(A.astype(complex), b, rcond=None)
        return tuple(np.exp(c))

    def fiber_point(self, z, t_pp):
        """Point on the fiber through z indexed by t'' in C^{*(n-ell)}."""
        z = tuple(complex(c) for c in z)
        t_pp = tuple(complex(c) for c in t_pp)
        if len(z) != self.n or len(t_pp) != self.n - self.ell:
            raise ValueError("dimension mismatch")
        if any(c == 0 for c in z) or any(c == 0 for c in t_pp):
            raise ValueError("fiber points require nonzero coordinates")
        out = []
        for j in range(self.n):
            f = z[j]
            for r, t in enumerate(t_pp):
                f *= _ipow(t, self.kernel_rows[r][j])
            out.append(f)
        return tuple(out)


def _ipow(base: complex, e: int) -> complex:
    if e >= 0:
        return base ** e
    return 1.0 / (base ** (-e))


def _monomial(z, exponents) -> complex:
    out = 1.0 + 0.0j
    for base, e in zip(z, exponents):
        out *= _ipow(base, e)
    return out
