"""Sparse polynomials with a declared grading degree."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SparsePolynomial:
    """Finite exponent-to-coefficient map in n variables, graded at degree m."""

    n: int
    m: int
    terms: dict
    body_tag: str | None = None

    def __post_init__(self):
        clean = {}
        for alpha, coeff in self.terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent {alpha}")
            clean[alpha] = complex(coeff)
        object.__setattr__(self, "terms", clean)

    def evaluate(self, z) -> complex:
        """Sum of terms in lexicographic exponent order; z^0 = 1 throughout."""
        z = tuple(complex(c) for c in z)
        if len(z) != self.n:
            raise ValueError("point has wrong length")
        total = 0j
        for alpha in sorted(self.terms):
            term = self.terms[alpha]
            for base, e in zip(z, alpha):
                if e:
                    term *= base ** e
            total += term
        return total

    def multiply(self, other: "SparsePolynomial") -> "SparsePolynomial":
        """Term convolution; grading degrees add."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        if self.body_tag != other.body_tag:
            raise ValueError("polynomials are graded by different bodies")
        terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                terms[key] = terms.get(key, 0) + ca * cb
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            terms = {tuple([0] * self.n): 0j}
        return SparsePolynomial(self.n, self.m + other.m, terms, self.body_tag)

    def scaled(self, factor: complex) -> "SparsePolynomial":
        return SparsePolynomial(
            self.n, self.m, {a: c * factor for a, c in self.terms.items()},
            self.body_tag)

    def support_in(self, lattice_set) -> bool:
        allowed = set(lattice_set.points)
        return all(a in allowed for a, c in self.terms.items() if c != 0)

    def to_json(self) -> dict:
        return {"m": self.m,
                "terms": [{"alpha": list(a), "re": c.real, "im": c.imag}
                          for a, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj: dict, n: int) -> "SparsePolynomial":
        terms = {tuple(t["alpha"]): complex(t["re"], t.get("im", 0.0))
                 for t in obj["terms"]}
        return cls(n, int(obj["m"]), terms)


def weighted_sup_norm(p: SparsePolynomial, samples, m: int) -> float:
    """max over samples of |p(w)| * exp(-m q(w)); infinite weights drop out."""
    import numpy as np

    if m != p.m:
        raise ValueError("norm degree must equal the polynomial grading degree")
    q = np.array(samples.weights, dtype=float)
    finite = np.isfinite(q)
    if not finite.any():
        return 0.0
    W = np.array(samples.points, dtype=complex)[finite]
    alphas = sorted(p.terms)
    exps = np.array(alphas, dtype=np.int64)
    coeffs = np.array([p.terms[a] for a in alphas], dtype=complex)
    vals = np.abs(np.power(W[:, None, :], exps[None, :, :]).prod(axis=2) @ coeffs)
    return float(np.max(vals * np.exp(-m * q[finite])))
