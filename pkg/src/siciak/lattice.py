"""Integer-matrix normal forms and lattice-map construction.

Smith normal form by gcd-driven row/column reduction, saturation of rational
subspaces to integer lattices, the half-open-parallelepiped reduction loop
that produces a unimodular generating set inside the original cone, and the
assembly of the lattice map together with machine-checkable certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .body import ConvexBody, preimage_body
from .field import ExactMatrix, exact_rank
from .maps import LatticeMap


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _det(A):
    """Exact integer determinant by fraction-free expansion (small matrices)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    det = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        det += (-1) ** j * A[0][j] * _det(minor)
    return det


@dataclass(frozen=True)
class SnfResult:
    """U . A . V = D with U, V unimodular and D diagonal with a divisor chain."""

    U: list
    D: list
    V: list

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def smith_normal_form(A) -> SnfResult:
    A = [list(map(int, row)) for row in A]
    r = len(A)
    c = len(A[0])
    D = [row[:] for row in A]
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(r, c):
        # pivot: nonzero entry of minimal magnitude in the trailing block
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if D[i][j] != 0 and (pivot is None
                                     or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, r):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t] != 0:
                        swap_rows(i, t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, c):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
                        break
            if dirty:
                continue
            # divisibility: pivot must divide the trailing block

            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if D[i][j] % D[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return SnfResult(U, D, V)


def saturate(generators) -> list:
    """Integer basis of W := span_Q(generators) intersected with Z^n.

    Generators are rational column vectors, linearly independent over Q.
    Returns the basis as a list of integer column vectors.
    """
    gens = [[Fraction(x) for x in g] for g in generators]
    n = len(gens[0])
    ell = len(gens)
    M = ExactMatrix.from_rows(gens, 2)  # rows = generators
    if exact_rank(M) != ell:
        raise ValueError("generators must be linearly independent over Q")
    from .field import exact_kernel
    kern = exact_kernel(M)  # rational basis of the orthogonal complement
    if not kern:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    C = []
    for v in kern:
        fracs = [e.a for e in v]
        if any(e.b != 0 for e in v):
            raise ValueError("saturation requires rational generators")
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // _gcd(lcm, f.denominator)
        C.append([int(f * lcm) for f in fracs])
    snf = smith_normal_form(C)
    rank = sum(1 for x in snf.diagonal if x != 0)
    # kernel of C = columns of V matching zero diagonal entries
    basis = [[snf.V[i][j] for i in range(n)] for j in range(rank, n)]
    return _size_reduce(basis)


def _size_reduce(basis):
    """Pairwise integer size reduction; same lattice, smaller entries.

    Guards against the entry blow-up of the unimodular Smith factors on
    skew inputs.
    """
    basis = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                denom = sum(x * x for x in basis[j])
                num = sum(x * y for x, y in zip(basis[i], basis[j]))
                # nearest integer to num/denom
                f = (2 * num + denom) // (2 * denom)
                if f:
                    cand = [x - f * y for x, y in zip(basis[i], basis[j])]
                    if sum(x * x for x in cand) < sum(x * x for x in basis[i]):
                        basis[i] = cand
                        changed = True
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def parallelepiped_lattice_points(vectors) -> list:
    """Integer points of the half-open parallelepiped spanned by the vectors.

    Enumerates the |det| cosets of Z^ell modulo the lattice generated by the
    vectors (via Smith form) and reduces each representative into the
    parallelepiped: x belongs iff 0 <= sign(det) * (adj x)_k < |det| for all
    k, where adj = det * inverse is the integer adjugate.  Exact, and the
    cost scales with |det| rather than with any bounding box.
    """
    ell = len(vectors)
    A = [[vectors[k][i] for k in range(ell)] for i in range(ell)]  # columns
    det = _det(A)
    if det == 0:
        raise ValueError("vectors must be linearly independent")
    adj = _adjugate(A, det)
    sgn = 1 if det > 0 else -1
    D = abs(det)
    snf = smith_normal_form(A)
    dU = _det(snf.U)  # +-1, so U^-1 = dU * adjugate(U)
    Uinv = [[e * dU for e in row] for row in _adjugate(snf.U, dU)]
    pts = []
    for y in itertools.product(*(range(di) for di in snf.diagonal)):
        r = [sum(Uinv[i][j] * y[j] for j in range(ell)) for i in range(ell)]
        mu = [sgn * sum(adj[k][i] * r[i] for i in range(ell)) for k in range(ell)]
        x = list(r)
        for k in range(ell):
            f = mu[k] // D
            if f:
                for i in range(ell):
                    x[i] -= f * vectors[k][i]
        pts.append(tuple(x))
    assert len(pts) == D
    return sorted(pts)


def _adjugate(A, det):
    """Integer adjugate via exact rational inverse times determinant."""
    n = len(A)
    M = ExactMatrix.from_rows([[Fraction(x) for x in row] for row in A], 2)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        from .field import exact_solve
        x = exact_solve(M, e)
        cols.append([f.a * det for f in x])
    adj = [[int(cols[j][i]) for j in range(n)] for i in range(n)]
    return adj


def parallelepiped_reduce(vectors, history=None):
    """Replace generators until the half-open parallelepiped is lattice-free.

    Repeatedly finds a nonzero lattice point in the parallelepiped, swaps it
    for one of the generators, and records the strictly decreasing |det| in
    ``history`` when given.  The swap target is chosen to minimise the new
    |det| (ties broken by the lexicographically smallest point, then the
    smallest index), which at least halves |det| per step: if a point has
    coefficient mu/|det| at index k then its complement has (|det|-mu)/|det|.
    The output spans a unimodular lattice basis inside the closed cone of the
    inputs.
    """
    vs = [list(map(int, v)) for v in vectors]
    ell = len(vs)
    while True:
        A = [[vs[k][i] for k in range(ell)] for i in range(ell)]
        det = _det(A)
        if det == 0:
            raise ValueError("vectors must be linearly independent")
        if history is not None:
            history.append(abs(det))
        if abs(det) == 1:
            return [tuple(v) for v in vs]
        pts = [p for p in parallelepiped_lattice_points(vs)
               if any(x != 0 for x in p)]
        if not pts:
            # |det| > 1 guarantees a nonzero point exists
            raise RuntimeError("no lattice point found in parallelepiped")
        adj = _adjugate(A, det)
        sgn = 1 if det > 0 else -1
        best = None
        for p in pts:
            mu = [sgn * sum(adj[k][i] * p[i] for i in range(ell))
                  for k in range(ell)]
            for k, m in enumerate(mu):
                if m != 0 and (best is None or (m, p, k) < best):
                    best = (m, p, k)
        _, x, m = best
        vs[m] = list(x)


def _solve_rational(A, b):
    M = ExactMatrix.from_rows([[Fraction(x) for x in row] for row in A], 2)
    from .field import exact_solve
    x = exact_solve(M, [Fraction(v) for v in b])
    return [e.a for e in x]


def construct_L(S: ConvexBody) -> LatticeMap:
    """Build the lattice map of the body's span, with certified properties.

    Requires the rational points of S to be dense in S.  Saturates the span
    to an integer basis (columns of M), picks the lexicographically first
    independent row set, reduces it to a unimodular dual-cone basis B, and
    returns L = M . B^{-1} together with an integer basis of the orthogonal
    complement lattice.
    """
    dense, witness = S.is_rationally_dense()
    if not dense:
        raise ValueError("rational points are not dense in the body")
    gens = witness  # rational basis of span(S)
    if not gens:
        raise ValueError("body span is zero-dimensional")
    G = saturate(gens)  # ell integer columns of length n
    ell = len(G)
    n = S.n
    M = [[G[k][j] for k in range(ell)] for j in range(n)]  # n x ell
    rows_idx = _first_independent_rows(M, ell)
    a_vecs = [tuple(M[j]) for j in rows_idx]
    xi = parallelepiped_reduce(a_vecs)
    B = [list(x) for x in xi]  # ell x ell, |det| = 1
    Binv = _integer_inverse(B)
    L = _matmul(M, Binv)  # n x ell, integer since Binv is integer
    columns = [[L[j][k] for j in range(n)] for k in range(ell)]
    kernel_rows = _saturate_complement(M, n, ell)
    lat = LatticeMap(n=n, ell=ell, columns=columns, kernel_rows=kernel_rows)
    cert = verify_map(lat, S)
    if not all(cert.values()):
        raise RuntimeError(f"lattice map certificates failed: {cert}")
    return lat


def _first_independent_rows(M, ell):
    n = len(M)
    for combo in itertools.combinations(range(n), ell):
        sub = [[Fraction(M[j][k]) for k in range(ell)] for j in combo]
        if exact_rank(ExactMatrix.from_rows(sub, 2)) == ell:
            return combo
    raise ValueError("saturated basis has rank below its column count")


def _integer_inverse(B):
    ell = len(B)
    det = _det(B)
    if abs(det) != 1:
        raise ValueError("matrix is not unimodular")
    adj = _adjugate(B, det)
    return [[x * det for x in row] for row in adj] if det == -1 else adj


def _saturate_complement(M, n, ell):
    """Integer basis of the orthogonal-complement lattice of the column span."""
    if ell == n:
        return []
    MT = [[M[j][k] for j in range(n)] for k in range(ell)]  # ell x n
    snf = smith_normal_form(MT)
    rank = sum(1 for x in snf.diagonal if x != 0)
    basis = [[snf.V[i][j] for i in range(n)] for j in range(rank, n)]
    return _size_reduce(basis)


def verify_map(L: LatticeMap, S: ConvexBody) -> dict:
    """Certificate record for a lattice map against a body.

    (a) integer entries, (b) columns generate the saturated span lattice,
    (c) unimodular Smith diagonal, (d) the preimage body stays nonnegative.
    """
    cert = {}
    cert["integer_entries"] = all(
        isinstance(x, int) for col in L.columns for x in col)

    dense, witness = S.is_rationally_dense()
    if dense:
        G = saturate(witness)
        cert["columns_generate_lattice"] = (
            len(G) == L.ell
            and _integer_span_contains(G, L.columns)
            and _integer_span_contains(L.columns, G))
    else:
        cert["columns_generate_lattice"] = False

    A = [[L.columns[k][j] for k in range(L.ell)] for j in range(L.n)]
    snf = smith_normal_form(A)
    diag = snf.diagonal
    cert["unimodular_snf"] = all(abs(x) == 1 for x in diag)

    try:
        preimage_body(S, L)
        cert["preimage_nonnegative"] = True
    except (ValueError, RuntimeError):
        cert["preimage_nonnegative"] = False
    return cert


def _integer_span_contains(basis, vectors) -> bool:
    """Every vector is an integer combination of the basis columns."""
    n = len(basis[0])
    M = ExactMatrix.from_rows(
        [[Fraction(basis[k][j]) for k in range(len(basis))] for j in range(n)], 2)
    from .field import exact_solve
    for v in vectors:
        x = exact_solve(M, [Fraction(c) for c in v])
        if x is None or any(e.a.denominator != 1 or e.b != 0 for e in x):
            return False
    return True
