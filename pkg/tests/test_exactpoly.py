import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from genvamos.exactpoly import (Poly, PolyError, UPoly, complex_roots_numeric, count_real_roots,
                                isolate_real_roots, real_roots_exact, squarefree_factorization,
                                squarefree_part)
from genvamos.symfun import elementary


def x(i, n):
    return Poly.var(n, i)


def polys(arity, max_deg=4, max_terms=5):
    mono = st.lists(st.integers(0, max_deg), min_size=arity, max_size=arity).filter(lambda m: sum(m) <= max_deg)
    return st.dictionaries(mono.map(tuple), st.integers(-9, 9), max_size=max_terms).map(lambda t: Poly(arity, t))


def triples():
    return st.integers(1, 6).flatmap(lambda n: st.tuples(polys(n), polys(n), polys(n)))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


class TestArithmetic:
    def test_additive_inverse(self):
        p = x(0, 2) - x(0, 2)
        assert p.is_zero() and p.terms == {}

    def test_binomial_square(self):
        s = x(0, 2) + x(1, 2)
        assert s * s == Poly(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_e1_e3_at_ones(self):
        assert (elementary(1, 4) * elementary(3, 4)).evaluate([1] * 4) == 16

    def test_arity_mismatch(self):
        with pytest.raises(PolyError):
            x(0, 2) + x(0, 3)

    def test_power_and_scale(self):
        p = x(0, 1) + 1
        assert p ** 3 == Poly(1, {(3,): 1, (2,): 3, (1,): 3, (0,): 1})
        assert p.scale(F(1, 2)).coefficient((1,)) == F(1, 2)
        assert p ** 0 == Poly.const(1, 1)

    @settings(max_examples=1000, deadline=None)
    @given(triples())
    def test_ring_axioms(self, t):
        a, b, c = t
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a


class TestEvaluate:
    def test_e2_ones(self):
        assert elementary(2, 3).evaluate([1, 1, 1]) == 3

    def test_h22_at_ones(self):
        from genvamos.vamoslab import reference_h22
        assert reference_h22().evaluate([1] * 4) == 65

    @given(polys(3))
    def test_origin_is_constant_term(self, p):
        assert p.evaluate([0, 0, 0]) == p.constant_term()

    def test_float_and_complex(self):
        p = x(0, 2) * x(1, 2) + 2
        assert p.evaluate([0.5, 4.0]) == pytest.approx(4.0)
        assert p.evaluate([1j, 1j]) == pytest.approx(1.0)

    def test_length_mismatch(self):
        with pytest.raises(PolyError):
            x(0, 2).evaluate([1])


class TestRestrictLine:
    def test_examples(self):
        assert (x(0, 2) * x(1, 2)).restrict_line([0, 0], [1, 1]) == UPoly([0, 0, 1])
        assert elementary(2, 3).restrict_line([-1, 0, 0], [1, 1, 1]) == UPoly([0, -2, 3])
        p = x(0, 2) ** 2 + x(1, 2) ** 2
        assert p.restrict_line([0, 1], [1, 0]) == UPoly([1, 0, 1])

    @settings(max_examples=1000, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(
        polys(n), st.lists(rationals, min_size=n, max_size=n), st.lists(rationals, min_size=n, max_size=n), rationals)))
    def test_consistent_with_evaluate(self, case):
        p, x0, v, t0 = case
        f = p.restrict_line(x0, v)
        assert f(t0) == p.evaluate([a + t0 * b for a, b in zip(x0, v)])


class TestRealRoots:
    def test_examples(self):
        assert real_roots_exact(UPoly([-1, 0, 1])) == (2, True)
        assert real_roots_exact(UPoly([1, 0, 1])) == (0, False)
        assert real_roots_exact(UPoly([0, -2, 3])) == (2, True)

    def test_multiplicity_folded(self):
        f = UPoly.from_roots([1, 1, 2])
        assert real_roots_exact(f) == (2, True)
        assert squarefree_part(f) == UPoly.from_roots([1, 2])
        assert squarefree_factorization(f) == [(UPoly.from_roots([2]), 1), (UPoly.from_roots([1]), 2)]

    def test_zero_rejected(self):
        with pytest.raises(PolyError):
            real_roots_exact(UPoly([]))

    def test_isolation_exact_rational_roots(self):
        f = UPoly.from_roots([F(-7, 3), 0, F(2, 3), 5])
        assert [r[2] for r in isolate_real_roots(f)] == [F(-7, 3), 0, F(2, 3), 5]

    def test_isolation_irrational(self):
        (lo1, hi1, e1), (lo2, hi2, e2) = isolate_real_roots(UPoly([-2, 0, 1]))
        assert e1 is None and e2 is None
        assert lo2 < F(14142135623731, 10**13) and hi2 > F(14142135623730, 10**13)
        assert hi1 - lo1 <= F(1, 2**40)

    def test_count_interval(self):
        f = UPoly.from_roots([1, 2, 3])
        assert count_real_roots(f, F(0), F(2)) == 2
        assert count_real_roots(f, None, None) == 3

    @settings(max_examples=500, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=9).filter(lambda c: c[-1] != 0))
    def test_sturm_agrees_with_numeric(self, coeffs):
        f = UPoly(coeffs)
        n_real, _ = real_roots_exact(f)
        sf = squarefree_part(f)
        roots = complex_roots_numeric(sf)
        numeric = sum(1 for z in roots if abs(z.imag) <= 1e-9 * (1 + abs(z)))
        assert numeric == n_real


class TestNumericRoots:
    @pytest.mark.parametrize("coeffs,expected", [
        ([1, 0, 1], [-1j, 1j]),
        ([2, -3, 1], [1, 2]),
        ([0, -1, 0, 1], [-1, 0, 1]),
    ])
    def test_examples(self, coeffs, expected):
        got = sorted(complex_roots_numeric(UPoly(coeffs)), key=lambda z: (z.real, z.imag))
        for a, b in zip(got, sorted(expected, key=lambda z: (complex(z).real, complex(z).imag))):
            assert abs(a - b) < 1e-9

    def test_degree_zero_rejected(self):
        with pytest.raises(PolyError):
            complex_roots_numeric(UPoly([3]))


class TestStructure:
    def test_support(self):
        p = x(0, 4) * x(1, 4) + x(2, 4) * x(3, 4) * 2
        assert p.support() == {(1, 1, 0, 0), (0, 0, 1, 1)}
        assert Poly.zero(3).support() == set()

    def test_substitute(self):
        t = Poly.var(1, 0)
        assert (x(0, 2) * x(1, 2)).substitute([t, t]) == t * t
        p = x(0, 3) * x(1, 3) + x(2, 3)
        assert p.substitute([Poly.zero(3), x(1, 3), x(2, 3)]) == x(2, 3)

    def test_substitute_arity_mismatch(self):
        with pytest.raises(PolyError):
            x(0, 2).substitute([Poly.var(1, 0), Poly.var(2, 0)])

    def test_is_symmetric(self):
        assert elementary(2, 4).is_symmetric() is None
        assert (x(0, 2) + x(1, 2) * 2).is_symmetric() is not None

    @given(st.integers(1, 5).flatmap(polys))
    def test_json_round_trip(self, p):
        doc = p.to_json()
        again = Poly.from_json(json.loads(json.dumps(doc)))
        assert again == p
        assert again.to_json() == doc

    def test_json_order_grlex(self):
        p = x(0, 2) + x(1, 2) ** 2 + 3
        assert [t["exp"] for t in p.to_json()["terms"]] == [[0, 2], [1, 0], [0, 0]]
