"""Monomial maps: evaluation, pullback, weight pushforward, fibers."""

import cmath
import math
import random

import pytest

from siciak.body import ConvexBody, preimage_body
from siciak.lattice import construct_L
from siciak.maps import LatticeMap
from siciak.poly import SparsePolynomial
from siciak.samples import explicit_samples

LINE12 = LatticeMap(n=2, ell=1, columns=[[1, 2]], kernel_rows=[[-2, 1]])
IDENT2 = LatticeMap(n=2, ell=2, columns=[[1, 0], [0, 1]], kernel_rows=[])


class TestInvariants:
    def test_kernel_rows_must_be_orthogonal(self):
        with pytest.raises(ValueError):
            LatticeMap(n=2, ell=1, columns=[[1, 2]], kernel_rows=[[1, 1]])

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError):
            LatticeMap(n=2, ell=2, columns=[[1, 2], [2, 4]], kernel_rows=[])


class TestApply:
    def test_line(self):
        (w,) = LINE12.apply((2.0, 3.0))
        assert w == pytest.approx(18.0)

    def test_unit_point(self):
        assert LINE12.apply((1.0, 1.0)) == (1.0,)
        assert IDENT2.apply((1.0, 1.0)) == (1.0, 1.0)

    def test_identity_map(self):
        z = (1.5 + 0.5j, -2.0)
        assert IDENT2.apply(z) == z

    def test_zero_coordinate_rejected(self):
        with pytest.raises(ValueError):
            LINE12.apply((0.0, 1.0))


class TestPullback:
    def test_cube_of_generator(self):
        p = SparsePolynomial(1, 3, {(3,): 1.0})
        q = LINE12.pullback_poly(p)
        assert dict(q.terms) == {(3, 6): 1.0}

    def test_constant(self):
        p = SparsePolynomial(1, 1, {(0,): 2.5})
        assert dict(LINE12.pullback_poly(p).terms) == {(0, 0): 2.5}

    def test_termwise(self):
        p = SparsePolynomial(1, 1, {(0,): 2.0, (1,): 5.0})
        q = LINE12.pullback_poly(p)
        assert dict(q.terms) == {(0, 0): 2.0, (1, 2): 5.0}

    def test_evaluation_identity_random(self):
        rng = random.Random(3)
        S = ConvexBody(2, 2, [(0, 0), (1, 2)])
        lat = construct_L(S)
        T = preimage_body(S, lat)
        for _ in range(100):
            m = rng.randint(1, 4)
            support = T.lattice_points(m).points
            p = SparsePolynomial(T.n, m, {a: complex(rng.gauss(0, 1),
                                                     rng.gauss(0, 1))
                                          for a in support})
            z = tuple(cmath.exp(complex(rng.uniform(-1, 1),
                                        rng.uniform(-3, 3)))
                      for _ in range(2))
            lhs = lat.pullback_poly(p).evaluate(z)
            rhs = p.evaluate(lat.apply(z))
            assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))

    def test_basis_bijection(self):
        S = ConvexBody(2, 2, [(0, 0), (1, 2)])
        lat = construct_L(S)
        T = preimage_body(S, lat)
        for m in (1, 2, 5):
            src = T.lattice_points(m).points
            dst = S.lattice_points(m).points
            image = {next(iter(lat.pullback_poly(
                SparsePolynomial(T.n, m, {a: 1.0})).terms)) for a in src}
            assert image == set(dst)


class TestPushforward:
    def test_constant_weight(self):
        K = explicit_samples([(2.0, 3.0), (1.0, 1.0)], [0.5, 0.5])
        pushed = LINE12.pushforward_weight(K)
        assert pushed.weights == [0.5, 0.5]

    def test_fiber_infimum(self):
        # both points map to w = 4
        K = explicit_samples([(1.0, 2.0), (4.0, 1.0)], [1.0, 0.25])
        pushed = LINE12.pushforward_weight(K)
        assert len(pushed.points) == 1
        assert pushed.points[0][0] == pytest.approx(4.0)
        assert pushed.weights == [0.25]

    def test_injective_carries_weights(self):
        K = explicit_samples([(1.0, 1.0), (2.0, 1.0)], [0.1, 0.9])
        pushed = LINE12.pushforward_weight(K)
        assert sorted(pushed.weights) == [0.1, 0.9]


class TestPreimageSolve:
    def test_unit_vector(self):
        z = LINE12.solve_preimage((1.0,))
        assert z == pytest.approx((1.0, 1.0))

    def test_line_least_squares(self):
        (z1, z2) = LINE12.solve_preimage((4.0,))
        assert z1 * z2 ** 2 == pytest.approx(4.0)
        # minimal-norm log solution: c = log(4) * (1,2)/5
        assert math.log(abs(z1)) == pytest.approx(math.log(4) / 5)

    def test_round_trip_random(self):
        rng = random.Random(13)
        for _ in range(100):
            w = tuple(cmath.exp(complex(rng.uniform(-2, 2),
                                        rng.uniform(-3, 3)))
                      for _ in range(1))
            z = LINE12.solve_preimage(w)
            img = LINE12.apply(z)
            assert all(abs(a - b) <= 1e-10 * (1 + abs(b))
                       for a, b in zip(img, w))


class TestFiber:
    def test_trivial_parameter(self):
        z = (1.5, 2.5)
        assert LINE12.fiber_point(z, (1.0,)) == pytest.approx(z)

    def test_example_point(self):
        out = LINE12.fiber_point((1.0, 1.0), (2.0,))
        # kernel row (-2, 1) moves z to (1/4, 2); the map value is unchanged
        assert LINE12.apply(out)[0] == pytest.approx(LINE12.apply((1.0, 1.0))[0])

    def test_constancy_random(self):
        rng = random.Random(29)
        S = ConvexBody(2, 2, [(0, 0), (1, 2)])
        lat = construct_L(S)
        z = (1.3 + 0.2j, 0.8 - 0.1j)
        base = lat.apply(z)
        for _ in range(100):
            t = tuple(math.exp(rng.uniform(-2, 2)) *
                      cmath.exp(1j * rng.uniform(0, 2 * math.pi))
                      for _ in range(lat.n - lat.ell))
            img = lat.apply(lat.fiber_point(z, t))
            assert all(abs(a - b) <= 1e-9 * (1 + abs(b))
                       for a, b in zip(img, base))

    def test_log_support_constant_on_fibers(self):
        rng = random.Random(31)
        S = ConvexBody(2, 2, [(0, 0), (1, 2)])
        lat = construct_L(S)
        z = (2.0, 3.0)
        ref = S.log_support(z)
        T = preimage_body(S, lat)
        assert T.log_support(lat.apply(z)) == pytest.approx(ref, abs=1e-9)
        for _ in range(50):
            t = tuple(math.exp(rng.uniform(-2, 2))
                      for _ in range(lat.n - lat.ell))
            assert S.log_support(lat.fiber_point(z, t)) == pytest.approx(
                ref, abs=1e-9 * (1 + abs(ref)))
