from fractions import Fraction as F

import pytest

from genvamos.exactpoly import Poly, PolyError, real_roots_exact
from genvamos.rng import generator, rational_vector
from genvamos.stability import (HyperbolicityError, Membership, cone_member, depolarize, eigenvalues,
                                hyp_rank, polarize, probe_hyperbolicity, probe_line, probe_stability,
                                support_matroid_check)
from genvamos.symfun import elementary


def x(i, n):
    return Poly.var(n, i)


X123 = x(0, 3) * x(1, 3) * x(2, 3)


class TestProbes:
    def test_e2_clean(self):
        rep = probe_stability(elementary(2, 4), trials=256)
        assert rep.failures == 0 and rep.worst_witness is None

    def test_sum_of_squares_line(self):
        w = probe_line(x(0, 2) ** 2 + x(1, 2) ** 2, [0, 1], [1, 0])
        assert w is not None and abs(abs(w["root"][1]) - 1) < 1e-9

    def test_x1x2_plus_x3x4_refuted(self):
        P = x(0, 4) * x(1, 4) + x(2, 4) * x(3, 4)
        rep = probe_stability(P, trials=256)
        assert rep.failures >= 1
        w = rep.worst_witness
        f = P.restrict_line([F(a) for a in w["x0"]], [F(b) for b in w["v"]])
        assert real_roots_exact(f)[1] is False

    def test_deterministic(self):
        P = x(0, 4) * x(1, 4) + x(2, 4) * x(3, 4)
        assert probe_stability(P, 64, seed=7).to_json() == probe_stability(P, 64, seed=7).to_json()

    def test_rejects_bad_input(self):
        with pytest.raises(PolyError):
            probe_stability(Poly.zero(2))
        with pytest.raises(PolyError):
            probe_stability(x(0, 2) + 1)
        with pytest.raises(PolyError):
            probe_hyperbolicity(x(0, 2) * x(1, 2), [1, 0])

    def test_hyperbolicity_probe(self):
        h = x(0, 3) * x(1, 3) - x(2, 3) ** 2
        assert probe_hyperbolicity(h, [1, 1, 0], trials=64).clean


class TestEigenvalues:
    def test_product(self):
        assert eigenvalues(X123, [1, 1, 1], [3, 1, 2]).exact_values() == [3, 2, 1]

    def test_e2(self):
        assert eigenvalues(elementary(2, 3), [1, 1, 1], [1, 0, 0]).exact_values() == [F(2, 3), 0]

    def test_lorentz(self):
        h = x(0, 3) * x(1, 3) - x(2, 3) ** 2
        assert eigenvalues(h, [1, 1, 0], [0, 0, 1]).exact_values() == [1, -1]

    def test_bad_direction(self):
        with pytest.raises(PolyError, match="not hyperbolic direction"):
            eigenvalues(X123, [1, 1, 0], [1, 0, 0])

    def test_non_hyperbolic(self):
        with pytest.raises(HyperbolicityError):
            eigenvalues(x(0, 2) ** 2 + x(1, 2) ** 2, [1, 0], [0, 1])

    def test_irrational_eigenvalues(self):
        h = x(0, 3) * x(1, 3) - x(2, 3) ** 2
        spec = eigenvalues(h, [1, 1, 0], [1, 0, 1])
        assert spec.values() == pytest.approx([(1 + 5 ** 0.5) / 2, (1 - 5 ** 0.5) / 2])

    def test_shift(self):
        gen = generator(11)
        h = elementary(3, 4)
        e = [1, 1, 1, 1]
        for _ in range(100):
            xv, _ = rational_vector(gen, 4, -5, 5)
            c = rational_vector(gen, 1, -3, 3)[0][0]
            a = eigenvalues(h, e, xv)
            b = eigenvalues(h, e, [v + c for v in xv])
            if all(v is not None for v in a.exact_values()):
                assert [v + c for v in a.exact_values()] == b.exact_values()
            else:
                assert [v + float(c) for v in a.values()] == pytest.approx(b.values(), abs=1e-9)


class TestRank:
    def test_examples(self):
        assert hyp_rank(X123, [1, 1, 1], [1, 1, 0]) == 2
        assert hyp_rank(X123, [1, 1, 1], [0, 0, 0]) == 0
        assert hyp_rank(elementary(2, 3), [1, 1, 1], [1, 0, 0]) == 1

    def test_rank_matches_nonzero_eigenvalues(self):
        gen = generator(5)
        h = elementary(2, 4)
        for _ in range(50):
            ints = [int(v) for v in gen.integers(-2, 3, size=4)]
            spec = eigenvalues(h, [1] * 4, ints)
            assert hyp_rank(h, [1] * 4, ints) == spec.nonzero_count()


class TestCone:
    def test_examples(self):
        h = x(0, 2) * x(1, 2)
        assert cone_member(h, [1, 1], [1, -1]) is Membership.OUTSIDE
        assert cone_member(h, [1, 1], [1, 1]) is Membership.INTERIOR
        assert cone_member(h, [1, 1], [1, 0]) is Membership.BOUNDARY

    def test_float_path(self):
        h = x(0, 2) * x(1, 2)
        assert cone_member(h, [1.0, 1.0], [1.0, -1.0]) is Membership.OUTSIDE
        assert cone_member(h, [1.0, 1.0], [2.0, 0.5]) is Membership.INTERIOR

    def test_scale_invariance(self):
        gen = generator(3)
        h = elementary(2, 3)
        for _ in range(100):
            xv, _ = rational_vector(gen, 3, -4, 4)
            c = rational_vector(gen, 1, F(1, 8), 4)[0][0]
            assert cone_member(h, [1, 1, 1], xv) is cone_member(h, [1, 1, 1], [c * v for v in xv])


class TestPolarize:
    def test_examples(self):
        y = lambda i: Poly.var(2, i)
        assert polarize(Poly.var(1, 0) ** 2, [2]) == y(0) * y(1)
        assert polarize(Poly.var(1, 0), [2]) == (y(0) + y(1)) * F(1, 2)
        P = x(0, 2) ** 2 + x(0, 2) * x(1, 2)
        z = lambda i: Poly.var(3, i)
        assert polarize(P, [2, 1]) == z(0) * z(1) + (z(0) + z(1)) * z(2) * F(1, 2)

    def test_cap_exceeded(self):
        with pytest.raises(PolyError):
            polarize(x(0, 1) ** 3, [2])

    def test_diagonal_inverse(self):
        gen = generator(9)
        for _ in range(500):
            n = int(gen.integers(1, 5))
            terms = {}
            for _ in range(int(gen.integers(1, 5))):
                mono = [0] * n
                for _ in range(int(gen.integers(0, 4))):
                    mono[int(gen.integers(0, n))] += 1
                terms[tuple(mono)] = int(gen.integers(-9, 10))
            P = Poly(n, terms)
            caps = [max(P.degree_in(i), 0) + int(gen.integers(0, 2)) for i in range(n)]
            caps = [max(c, 1) for c in caps]
            Q = polarize(P, caps)
            assert Q.is_multiaffine()
            assert depolarize(Q, caps) == P


class TestSupport:
    def test_u23(self):
        P = x(0, 3) * x(1, 3) + x(1, 3) * x(2, 3) + x(0, 3) * x(2, 3)
        res = support_matroid_check(P)
        assert res.ok and res.bases == [(1, 2), (1, 3), (2, 3)]

    def test_exchange_failure(self):
        res = support_matroid_check(x(0, 4) * x(1, 4) + x(2, 4) * x(3, 4))
        assert not res.ok and res.witness == ((1, 2), (3, 4), 1)

    def test_polarized_diamond(self):
        from genvamos.matroid import diamond
        from genvamos.vamoslab import polarized_witness, w_poly
        res = support_matroid_check(polarized_witness(w_poly(diamond())[1]))
        assert res.ok and len(res.bases) == 65

    def test_preconditions(self):
        with pytest.raises(PolyError):
            support_matroid_check(x(0, 2) ** 2)
        with pytest.raises(PolyError):
            support_matroid_check(x(0, 2) - x(1, 2))
