import itertools
import math
import random

import pytest

from genvamos.matroid import (Hypergraph, MatroidError, RankOracle, brute_force_oracle, build_vh,
                              burton_cycle, complete_hypergraph, diagonal_polymatroid, diamond,
                              dfz_hypergraph, doubleton_sets, empty_hypergraph, enumerate_family,
                              has_minor, hnk_hypergraph, is_isomorphic, isomorphism, linear_rank_ineq,
                              minor, random_hypergraph, uniform, verify_axioms, verify_polymatroid,
                              verify_polymatroid_pairs, violation_search)

# the five non-bases of the Vamos matroid in its standard labeling
V8_REFERENCE_NONBASES = [{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {3, 4, 5, 6}, {5, 6, 7, 8}]
# diamond element -> reference label
DIAMOND_TO_REFERENCE = {1: 3, 5: 4, 2: 1, 6: 2, 3: 5, 7: 6, 4: 7, 8: 8}


@pytest.fixture(scope="module")
def v8():
    return build_vh(diamond())


class TestHypergraph:
    def test_validation(self):
        with pytest.raises(MatroidError):
            Hypergraph(3, 2, [(1, 1)])
        with pytest.raises(MatroidError):
            Hypergraph(3, 2, [(1, 4)])
        with pytest.raises(MatroidError):
            Hypergraph(2, 3, [])

    def test_json_round_trip(self):
        H = dfz_hypergraph()
        assert Hypergraph.from_json(H.to_json()) == H

    def test_burton(self):
        assert burton_cycle(5).edges == ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5))

    def test_hnk(self):
        H = hnk_hypergraph(2, 2)
        assert (3, 4) not in H.edges and len(H.edges) == 5


class TestVH:
    def test_diamond_bases(self, v8):
        assert len(enumerate_family(v8, "bases")) == 65

    def test_diamond_nonbases_match_reference(self, v8):
        mapped = [{DIAMOND_TO_REFERENCE[e] for e in v8.subset(c)} for c in v8.circuit_hyperplanes]
        assert sorted(map(sorted, mapped)) == sorted(map(sorted, V8_REFERENCE_NONBASES))

    def test_empty_graph_is_uniform(self):
        for n in (3, 4, 5):
            M = build_vh(empty_hypergraph(n))
            assert is_isomorphic(M, uniform(4, 2 * n))

    def test_complete_63(self):
        assert len(enumerate_family(build_vh(complete_hypergraph(6, 3)), "bases")) == math.comb(12, 6) - 20

    def test_no_bases(self):
        with pytest.raises(MatroidError):
            build_vh(Hypergraph(2, 2, [(1, 2)]))

    def test_rank_examples(self, v8):
        assert v8.rank([]) == 0
        assert v8.rank([1, 5, 2, 6]) == 3
        assert all(v8.rank(S) == 4 for S in itertools.combinations(range(1, 9), 7))
        with pytest.raises(MatroidError):
            v8.rank([9])

    def test_closed_form_equals_brute_force(self, corpus):
        for H in corpus:
            M = build_vh(H)
            B = brute_force_oracle(M)
            assert all(M.rank_mask(s) == B.rank_mask(s) for s in range(1 << M.size)), H

    def test_basis_exchange_random(self):
        rng = random.Random(1)
        for _ in range(20):
            n = rng.randint(2, 6)
            M = build_vh(random_hypergraph(rng, n, rng.randint(1, n - 1)))
            assert verify_axioms(enumerate_family(M, "bases"), M.labels, "basis_exchange").ok

    def test_hyperplanes_d_partition(self, corpus):
        for H in corpus:
            M = build_vh(H)
            res = verify_axioms(enumerate_family(M, "hyperplanes"), M.labels, "d_partition", d=2 * H.d - 1)
            assert res.ok and not res.trivial

    def test_polymatroid_axioms(self, corpus):
        for H in corpus:
            assert verify_polymatroid(build_vh(H)) is None

    def test_local_and_pairwise_checks_agree(self):
        bad = RankOracle.from_table(range(1, 4), {m: [0, 1, 1, 2, 1, 2, 2, 2][m] for m in range(8)})
        assert verify_polymatroid(bad) is None and verify_polymatroid_pairs(bad) is None
        non_sub = RankOracle(range(1, 3), lambda m: [0, 1, 1, 3][m])
        assert verify_polymatroid(non_sub) is not None
        assert verify_polymatroid_pairs(non_sub) is not None


class TestEnumerate:
    def test_closed_form_matches_generic(self, corpus):
        for H in corpus[:12]:
            M = build_vh(H)
            for what in ("bases", "circuits", "hyperplanes"):
                assert enumerate_family(M, what) == enumerate_family(M, what, closed_form=False)

    def test_u23_circuits(self):
        assert enumerate_family(uniform(2, 3), "circuits") == [(1, 2, 3)]

    def test_diamond_hyperplanes(self, v8):
        hyp = enumerate_family(v8, "hyperplanes")
        chs = [set(v8.subset(c)) for c in v8.circuit_hyperplanes]
        triples = [t for t in itertools.combinations(range(1, 9), 3) if not any(set(t) <= c for c in chs)]
        assert sorted(hyp) == sorted([tuple(sorted(c)) for c in chs] + triples)

    def test_size_cap(self):
        with pytest.raises(MatroidError):
            enumerate_family(build_vh(empty_hypergraph(9)), "bases")


class TestAxioms:
    def test_exchange_witness(self):
        res = verify_axioms([[1, 2], [3, 4]], range(1, 5), "basis_exchange")
        assert not res.ok and res.witness == ((1, 2), (3, 4), 1)

    def test_trivial_partition(self):
        assert verify_axioms([range(1, 6)], range(1, 6), "d_partition", d=2).trivial

    def test_d_partition_failure(self):
        res = verify_axioms([[1, 2, 3], [3, 4, 5]], range(1, 6), "d_partition", d=2)
        assert not res.ok

    def test_empty_family(self):
        with pytest.raises(MatroidError):
            verify_axioms([], range(1, 3), "basis_exchange")


class TestInequalities:
    def test_ingleton_v8(self, v8):
        res = linear_rank_ineq("ingleton", v8, doubleton_sets(v8, [[1], [4], [2], [3]]))
        assert (res.lhs, res.rhs, res.violated) == (16, 15, True)

    def test_ingleton_u24(self):
        res = linear_rank_ineq("ingleton", uniform(2, 4), [[1], [2], [3], [4]])
        assert not res.violated

    def test_dfz(self):
        M = build_vh(dfz_hypergraph())
        res = linear_rank_ineq("dfz", M, doubleton_sets(M, [[i] for i in range(1, 7)]))
        assert res.violated and (res.lhs, res.rhs) == (46, 45)

    def test_wrong_arity(self, v8):
        with pytest.raises(MatroidError):
            linear_rank_ineq("ingleton", v8, [[1], [2]])

    def test_search(self, v8):
        wits = violation_search(v8, "ingleton")
        assert {"vertices": [[1], [4], [2], [3]], "lhs": 16, "rhs": 15} in wits
        assert violation_search(build_vh(empty_hypergraph(4)), "ingleton") == []
        assert violation_search(build_vh(dfz_hypergraph()), "dfz")

    def test_full_search_contains_doubletons(self, v8):
        full = violation_search(v8, "ingleton", full=True)
        assert len(full) >= len(violation_search(v8, "ingleton"))
        with pytest.raises(MatroidError):
            violation_search(build_vh(dfz_hypergraph()), "dfz", full=True)

    def test_dfz_hypergraph_satisfies_ingleton_on_doubletons(self):
        assert violation_search(build_vh(dfz_hypergraph()), "ingleton") == []


class TestMinors:
    def test_self_minor(self, v8):
        assert has_minor(v8, v8)

    def test_dfz_has_no_vamos_minor(self, v8):
        assert not has_minor(build_vh(dfz_hypergraph()), v8)

    def test_uniform_contraction(self):
        N = minor(uniform(4, 8), contract=[1, 2])
        assert N.full_rank() == 2 and N.size == 6
        assert all(N.rank_mask(s) == min(bin(s).count("1"), 2) for s in range(64))
        assert is_isomorphic(N, uniform(2, 6))

    def test_overlap(self, v8):
        with pytest.raises(MatroidError):
            minor(v8, delete=[1], contract=[1])

    def test_isolated_vertex_deletion(self):
        rng = random.Random(4)
        for _ in range(10):
            n = rng.randint(3, 5)
            H = random_hypergraph(rng, n, 2, p=0.5)
            if len(H.non_edges()) == 0:
                continue
            big = build_vh(H.with_isolated_vertex())
            # element labels shift: i' is i+n in H and i+n+1 in the extension
            N = minor(big, delete=[n + 1, 2 * n + 2])
            assert is_isomorphic(N, build_vh(H))

    def test_non_isomorphic(self, v8):
        assert not is_isomorphic(v8, uniform(4, 8))
        other = build_vh(Hypergraph(4, 2, [(1, 2), (1, 3), (2, 3), (2, 4)]))
        assert not is_isomorphic(v8, other)

    def test_isomorphism_is_a_bijection(self, v8):
        H2 = Hypergraph(4, 2, [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)])  # diamond relabelled
        phi = isomorphism(v8, build_vh(H2))
        assert phi is not None and sorted(phi.values()) == list(range(1, 9))


class TestDiagonal:
    def test_examples(self):
        for n, k in ((3, 2), (4, 3), (5, 3)):
            r0 = diagonal_polymatroid(build_vh(hnk_hypergraph(n, k)))
            assert r0.rank([]) == 0
            for s in range(1, k):
                assert all(r0.rank(S) == 2 * s for S in itertools.combinations(range(1, n + 3), s))
            assert r0.full_rank() == 2 * k
