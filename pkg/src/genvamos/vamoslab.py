"""Bases-generating polynomials of V_H, the stable weighted polynomial W, the
polarized WHPP witness, the HPP falsifier for the complete 3-uniform
hypergraph on six vertices, the family h_{n,k}, and the Kummer checks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import Poly, PolyError, UPoly, real_roots_exact
from .matroid import (
    Hypergraph,
    MatroidError,
    VHMatroid,
    build_vh,
    complete_hypergraph,
    diagonal_polymatroid,
    diamond,
    hnk_hypergraph,
    ingleton_sides,
    vh_basis_masks,
)
from .rng import DEFAULT_SEED, generator, rational_vector
from .stability import (
    Membership,
    ProbeReport,
    cone_member,
    polarize,
    probe_hyperbolicity,
    probe_stability,
)
from .symfun import elementary


class ConsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""


# ---------------------------------------------------------------------------
# bases-generating polynomial
# ---------------------------------------------------------------------------


def _pair_products(n: int):
    """y_i = x_i x_{i'} as polynomials in 2n variables."""
    return [Poly.var(2 * n, i) * Poly.var(2 * n, i + n) for i in range(n)]


def _non_edge_term(H: Hypergraph, ys):
    arity = ys[0].arity if ys else 0
    out = Poly.zero(arity)
    for S in H.non_edges():
        term = Poly.const(arity, 1)
        for i in S:
            term = term * ys[i - 1]
        out = out + term
    return out


def bases_gen_poly_closed(H: Hypergraph) -> Poly:
    """e_{2d}(x, x') - e_d(x_1 x_1', ...) + N(x)."""
    n, d = H.n, H.d
    ys = _pair_products(n)
    e_y = elementary(d, n).substitute(ys)
    return elementary(2 * d, 2 * n) - e_y + _non_edge_term(H, ys)


def bases_gen_poly(M: VHMatroid) -> Poly:
    if M.size > 16:
        raise MatroidError("basis enumeration is capped at 16 elements")
    terms = {}
    for mask in vh_basis_masks(M):
        terms[tuple((mask >> j) & 1 for j in range(M.size))] = 1
    h = Poly(M.size, terms)
    if h != bases_gen_poly_closed(M.hypergraph):
        raise ConsistencyError("enumerated bases polynomial differs from the closed form")
    return h


def diagonalize(P: Poly, n: int) -> Poly:
    """Identify x_{i'} with x_i (variables i-1 and n+i-1)."""
    vs = [Poly.var(n, i) for i in range(n)]
    return P.substitute(vs + vs)


def _non_edge_squares(H: Hypergraph) -> Poly:
    n = H.n
    out = Poly.zero(n)
    for S in H.non_edges():
        exps = [0] * n
        for i in S:
            exps[i - 1] = 2
        out = out + Poly.monomial(exps)
    return out


def f_closed(H: Hypergraph) -> Poly:
    """4 sum_j e_{r+2j+1} e_{r-2j-1} + N(x, x) in n variables."""
    n, r = H.n, H.d
    out = _non_edge_squares(H)
    j = 0
    while r - 2 * j - 1 >= 0:
        out = out + elementary(r + 2 * j + 1, n) * elementary(r - 2 * j - 1, n) * 4
        j += 1
    return out


def w_poly(H: Hypergraph):
    """(f, W, support_equal) where f is the diagonalized bases polynomial."""
    if H.d < 2:
        raise MatroidError("W_{V_H} needs d >= 2")
    n, r = H.n, H.d
    f = diagonalize(bases_gen_poly_closed(H), n)
    if f != f_closed(H):
        raise ConsistencyError("diagonalized bases polynomial differs from its e-expansion")
    W = elementary(r + 1, n) * elementary(r - 1, n) * 4 + _non_edge_squares(H) * Fraction(3, r + 1)
    return f, W, f.support() == W.support()


# ---------------------------------------------------------------------------
# WHPP witness
# ---------------------------------------------------------------------------


@dataclass
class WitnessBundle:
    matroid: VHMatroid
    f_poly: Poly
    w_poly: Poly
    witness_poly: Poly
    support_match: bool
    diagonal_match: bool
    probe: ProbeReport

    def to_json(self):
        return {
            "hypergraph": self.matroid.hypergraph.to_json(),
            "f_poly": self.f_poly.to_json(),
            "w_poly": self.w_poly.to_json(),
            "witness_poly": self.witness_poly.to_json(),
            "witness_terms": len(self.witness_poly),
            "support_match": self.support_match,
            "diagonal_match": self.diagonal_match,
            "probe": self.probe.to_json(),
        }


def polarized_witness(W: Poly) -> Poly:
    """GWS polarization with cap 2 per variable, blocks sent to (i, i')."""
    n = W.arity
    P = polarize(W, [2] * n)
    # block layout is (x_1a, x_1b, x_2a, ...); move b-copies to the primes
    perm = [0] * (2 * n)
    for i in range(n):
        perm[2 * i] = i
        perm[2 * i + 1] = n + i
    return P.relabel(perm)


def whpp_witness(H: Hypergraph, trials: int = 256, seed: int = DEFAULT_SEED, tol: float = 1e-9) -> WitnessBundle:
    M = build_vh(H)
    f, W, _ = w_poly(H)
    wit = polarized_witness(W)
    h = bases_gen_poly(M)
    support_match = wit.support() == h.support()
    diagonal_match = diagonalize(wit, H.n) == W
    probe = probe_stability(wit, trials=trials, seed=seed, tol=tol)
    return WitnessBundle(M, f, W, wit, support_match, diagonal_match, probe)


# ---------------------------------------------------------------------------
# HPP falsifier
# ---------------------------------------------------------------------------


def _pair_substitution(H: Hypergraph):
    """x_1 = x_1' = t, x_2 = x_2' = x_3 = x_3' = -2, everything else 1."""
    n = H.n
    x0 = [Fraction(1)] * (2 * n)
    v = [Fraction(0)] * (2 * n)
    x0[0] = x0[n] = Fraction(0)
    v[0] = v[n] = Fraction(1)
    for i in (1, 2):
        x0[i] = x0[n + i] = Fraction(-2)
    return x0, v


def hpp_restriction(H: Hypergraph) -> UPoly:
    x0, v = _pair_substitution(H)
    return bases_gen_poly(build_vh(H)).restrict_line(x0, v)


def discriminant2(f: UPoly) -> Fraction:
    if f.degree() != 2:
        raise PolyError("discriminant2 needs a quadratic")
    c, b, a = f.coeffs
    return b * b - 4 * a * c


def hpp_falsify_complete63():
    """The restriction, its discriminant, and whether it has non-real zeros."""
    f = hpp_restriction(complete_hypergraph(6, 3))
    disc = discriminant2(f)
    _, real_rooted = real_roots_exact(f)
    non_real = not real_rooted
    if not non_real or disc >= 0:
        raise ConsistencyError("substitution did not produce non-real zeros")
    return f, disc, non_real


# ---------------------------------------------------------------------------
# h_{n,k} and the Kummer checks
# ---------------------------------------------------------------------------


def build_hnk(n: int, k: int, weighted: bool = False):
    """(H_{n,k}, h) with h the diagonalized bases polynomial in n+2 variables.

    With ``weighted`` the stable polynomial W_{V_H} is returned instead.
    """
    if not 1 <= k <= n + 2:
        raise MatroidError(f"need 1 <= k <= n+2, got n={n}, k={k}")
    H = hnk_hypergraph(n, k)
    if weighted:
        return H, w_poly(H)[1]
    return H, diagonalize(bases_gen_poly_closed(H), H.n)


# (1 3)(2 4): moves the special pair {3, 4} of build_hnk to {1, 2}
H22_RELABEL = (2, 3, 0, 1)


def reference_h22() -> Poly:
    """x1^2 x2^2 + 4 (x1+x2+x3+x4) e_3, special pair at {1, 2}."""
    return Poly.monomial((2, 2, 0, 0)) + elementary(1, 4) * elementary(3, 4) * 4


def h22_matches_reference() -> bool:
    _, h = build_hnk(2, 2)
    return h.relabel(H22_RELABEL) == reference_h22()


def kummer_q() -> Poly:
    x = [Poly.var(4, i) for i in range(4)]
    lin = x[0] * 2 + x[1] * 3 + x[2] * 3 + x[3] * 4
    quad = x[0] * x[1] + x[0] * x[2] + x[0] * x[3] * 2 + x[1] * x[3] + x[2] * x[3]
    return lin * quad * 32


@dataclass
class KummerReport:
    q_at_ones: Fraction
    product_degree: int
    probe_q: ProbeReport
    probe_product: ProbeReport
    interior_samples: int
    draws: int
    inclusion_failures: list

    @property
    def ok(self):
        return (self.probe_q.clean and self.probe_product.clean
                and not self.inclusion_failures and self.interior_samples > 0)

    def to_json(self):
        return {
            "q_at_ones": str(self.q_at_ones),
            "product_degree": self.product_degree,
            "probe_q": self.probe_q.to_json(),
            "probe_product": self.probe_product.to_json(),
            "interior_samples": self.interior_samples,
            "draws": self.draws,
            "inclusion_failures": self.inclusion_failures,
            "ok": self.ok,
        }


def kummer_check(trials: int = 256, seed: int = DEFAULT_SEED, samples: int = 1000,
                 tol: float = 1e-9, box=(-2, 4), max_draws: int | None = None) -> KummerReport:
    """Hyperbolicity probes of q and q h_{2,2} at the all-ones direction, and
    rejection-sampled inclusion of the h_{2,2} cone interior in the q cone."""
    h = reference_h22()
    q = kummer_q()
    ones = [1, 1, 1, 1]
    prod = q * h
    pq = probe_hyperbolicity(q, ones, trials=trials, seed=seed, tol=tol)
    pp = probe_hyperbolicity(prod, ones, trials=trials, seed=seed, tol=tol)
    gen = generator(seed, stream=1)
    max_draws = max_draws or 200 * samples
    got = draws = 0
    failures = []
    while got < samples and draws < max_draws:
        x, _ = rational_vector(gen, 4, *box)
        draws += 1
        if cone_member(h, ones, x, tol) is not Membership.INTERIOR:
            continue
        got += 1
        if cone_member(q, ones, x, tol) is Membership.OUTSIDE:
            failures.append([str(c) for c in x])
    return KummerReport(q.evaluate(ones), prod.degree(), pq, pp, got, draws, failures)


# ---------------------------------------------------------------------------
# Ingleton arithmetic on h_{n,k}
# ---------------------------------------------------------------------------


def counterex_ranks(n: int, k: int, Z, x: int, y: int):
    """Ingleton sides under r0 for A = Z+{n+1}, B = Z+{n+2}, C = Z+{x}, D = Z+{y}."""
    Z = sorted(int(z) for z in Z)
    if k < 2 or n < k + 1:
        raise MatroidError(f"need k >= 2 and n >= k+1, got n={n}, k={k}")
    if len(Z) != k - 2:
        raise MatroidError(f"Z must have k-2 = {k - 2} elements")
    elems = Z + [x, y]
    if len(set(elems)) != len(elems) or any(not 1 <= e <= n for e in elems):
        raise MatroidError("Z, x, y must be distinct elements of [n]")
    r0 = diagonal_polymatroid(build_vh(hnk_hypergraph(n, k)))
    zmask = r0.mask(Z)
    A = zmask | r0.mask([n + 1])
    B = zmask | r0.mask([n + 2])
    C = zmask | r0.mask([x])
    D = zmask | r0.mask([y])
    lhs, rhs = ingleton_sides(r0.rank_mask, A, B, C, D)
    full = [r0.rank_mask(S) for S in (A | B, A | C | D, B | C | D)]
    return {
        "lhs": lhs,
        "rhs": rhs,
        "violated": lhs > rhs,
        "expected": [10 * k - 4, 10 * k - 5],
        "full_rank_sets": all(v == 2 * k for v in full),
    }
