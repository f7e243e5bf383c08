import itertools
import random
from fractions import Fraction as F

import pytest

from genvamos.exactpoly import Poly, real_roots_exact
from genvamos.matroid import (Hypergraph, MatroidError, build_vh, burton_cycle, complete_hypergraph,
                              diamond, dfz_hypergraph, empty_hypergraph, enumerate_family,
                              random_hypergraph)
from genvamos.symfun import elementary
from genvamos.vamoslab import (H22_RELABEL, bases_gen_poly, bases_gen_poly_closed, build_hnk,
                               counterex_ranks, diagonalize, h22_matches_reference, hpp_falsify_complete63,
                               hpp_restriction, kummer_check, kummer_q, polarized_witness, reference_h22,
                               w_poly, whpp_witness)


class TestBasesPoly:
    def test_diamond(self):
        h = bases_gen_poly(build_vh(diamond()))
        assert h.evaluate([1] * 8) == 65
        assert h.is_multiaffine() and set(h.terms.values()) == {1}

    def test_empty_graph_is_uniform(self):
        assert bases_gen_poly(build_vh(empty_hypergraph(3))) == elementary(4, 6)

    def test_diamond_non_edge_term(self):
        H = diamond()
        assert H.non_edges() == [(1, 4)]
        n = 4
        N = Poly.var(8, 0) * Poly.var(8, 4) * Poly.var(8, 3) * Poly.var(8, 7)
        ys = [Poly.var(8, i) * Poly.var(8, i + n) for i in range(n)]
        assert bases_gen_poly_closed(H) == elementary(4, 8) - elementary(2, 4).substitute(ys) + N

    def test_corpus_enumeration_equals_closed_form(self, corpus):
        for H in corpus:
            M = build_vh(H)
            h = bases_gen_poly(M)  # raises on mismatch
            assert len(h) == len(enumerate_family(M, "bases"))


class TestWPoly:
    def test_diamond(self):
        f, W, same = w_poly(diamond())
        assert f == W and same
        x = lambda i: Poly.var(4, i)
        assert W == elementary(1, 4) * elementary(3, 4) * 4 + x(0) ** 2 * x(3) ** 2
        assert W.evaluate([1] * 4) == 65

    def test_complete_63(self):
        f, W, same = w_poly(complete_hypergraph(6, 3))
        assert same and W == elementary(4, 6) * elementary(2, 6) * 4

    def test_empty_5(self):
        _, W, _ = w_poly(empty_hypergraph(5))
        sq = sum((Poly.var(5, i) ** 2 * Poly.var(5, j) ** 2 for i, j in itertools.combinations(range(5), 2)),
                 Poly.zero(5))
        assert W == elementary(3, 5) * elementary(1, 5) * 4 + sq

    def test_needs_d2(self):
        with pytest.raises(MatroidError):
            w_poly(Hypergraph(3, 1, [(1,)]))

    def test_support_equal_on_corpus(self, corpus):
        for H in corpus:
            assert w_poly(H)[2], H


class TestWitness:
    @pytest.mark.parametrize("H", [diamond(), burton_cycle(5), dfz_hypergraph()], ids=["diamond", "burton5", "dfz"])
    def test_named(self, H):
        b = whpp_witness(H, trials=128)
        assert b.support_match and b.diagonal_match and b.probe.clean
        wp = b.witness_poly
        assert wp.is_multiaffine() and wp.is_homogeneous() and wp.degree() == 2 * H.d
        assert all(c > 0 for c in wp.terms.values())

    def test_diamond_witness_size(self):
        assert len(polarized_witness(w_poly(diamond())[1])) == 65

    def test_random(self):
        rng = random.Random(8)
        for _ in range(4):
            n = rng.randint(3, 6)
            H = random_hypergraph(rng, n, rng.randint(2, n - 1))
            b = whpp_witness(H, trials=32)
            assert b.support_match and b.diagonal_match and b.probe.clean

    def test_json(self):
        doc = whpp_witness(diamond(), trials=4).to_json()
        assert doc["support_match"] and doc["witness_terms"] == 65


class TestHPPFalsifier:
    def test_complete_63(self):
        f, disc, non_real = hpp_falsify_complete63()
        assert f.degree() == 2 and disc < 0 and non_real
        assert not real_roots_exact(f)[1]

    def test_diamond_control(self):
        f = hpp_restriction(diamond())
        assert real_roots_exact(f)[1]

    def test_restriction_matches_substitution(self):
        H = complete_hypergraph(6, 3)
        h = bases_gen_poly(build_vh(H))
        t = Poly.var(1, 0)
        one, m2 = Poly.const(1, 1), Poly.const(1, -2)
        vals = [t, m2, m2, one, one, one]
        sub = h.substitute(vals + vals)
        f = hpp_restriction(H)
        assert [sub.coefficient((k,)) for k in range(3)] == list(f.coeffs)


class TestHnk:
    def test_h22(self):
        assert h22_matches_reference()
        _, h = build_hnk(2, 2)
        assert h.evaluate([1] * 4) == 65
        assert h.relabel(H22_RELABEL) == reference_h22()
        x = lambda i: Poly.var(4, i)
        assert h == elementary(1, 4) * elementary(3, 4) * 4 + x(2) ** 2 * x(3) ** 2

    @pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (3, 3), (4, 3), (2, 4)])
    def test_homogeneous(self, n, k):
        _, h = build_hnk(n, k)
        assert h.is_homogeneous() and h.degree() == 2 * k and h.arity == n + 2

    def test_weighted(self):
        _, W = build_hnk(3, 3, weighted=True)
        _, h = build_hnk(3, 3)
        assert W.support() == h.support() and W != h

    def test_range(self):
        with pytest.raises(MatroidError):
            build_hnk(2, 5)


class TestKummer:
    def test_q_values(self):
        q = kummer_q()
        assert q.evaluate([1] * 4) == 2304
        assert (q * reference_h22()).degree() == 7

    def test_small_run(self):
        rep = kummer_check(trials=64, samples=100)
        assert rep.ok and rep.interior_samples == 100


class TestCounterexRanks:
    def test_examples(self):
        r = counterex_ranks(3, 2, [], 1, 2)
        assert (r["lhs"], r["rhs"], r["violated"]) == (16, 15, True)
        r = counterex_ranks(5, 3, [1], 2, 3)
        assert (r["lhs"], r["rhs"]) == (26, 25) and r["full_rank_sets"]

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_grid(self, k):
        for n in range(k + 1, 7):
            Z = list(range(1, k - 1))
            r = counterex_ranks(n, k, Z, k - 1, n)
            assert (r["lhs"], r["rhs"]) == (10 * k - 4, 10 * k - 5)

    @pytest.mark.parametrize("args", [(3, 2, [1], 2, 3), (3, 2, [], 1, 1), (3, 2, [], 1, 4), (2, 2, [], 1, 2)])
    def test_bad_shapes(self, args):
        with pytest.raises(MatroidError):
            counterex_ranks(*args)
