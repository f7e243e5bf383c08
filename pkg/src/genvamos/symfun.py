"""Symmetric polynomials: bases, e-basis rewriting, the lift operator, and
exact/sampled checks of the identities and inequalities used for the
generalized Vamos witnesses."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exactpoly import Poly, PolyError
from .rng import DEFAULT_SEED, rational_points


class SymmetryError(PolyError):
    """Input to the e-basis rewriting is not symmetric."""


def partition(parts) -> tuple:
    parts = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be positive")
    return parts


def power_notation(*pairs) -> tuple:
    """``power_notation((2, r), (1, 2))`` is the partition 2^r 1^2."""
    return partition([k for k, a in pairs for _ in range(a)])


def partitions_of(d: int, max_part=None):
    """All partitions of d, largest first."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    for k in range(min(d, max_part), 0, -1):
        for rest in partitions_of(d - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def monomial_sym(lam: tuple, n: int) -> Poly:
    lam = partition(lam)
    if len(lam) > n:
        return Poly.zero(n)
    padded = lam + (0,) * (n - len(lam))
    terms = {perm: 1 for perm in set(itertools.permutations(padded))}
    return Poly(n, terms)


@lru_cache(maxsize=None)
def elementary(k: int, n: int) -> Poly:
    if k < 0 or k > n:
        return Poly.zero(n)
    if k == 0:
        return Poly.const(n, 1)
    terms = {}
    for S in itertools.combinations(range(n), k):
        m = [0] * n
        for i in S:
            m[i] = 1
        terms[tuple(m)] = 1
    return Poly._raw(n, {m: Fraction(1) for m in terms})


def power_sum(k: int, n: int) -> Poly:
    if k == 0:
        return Poly.const(n, n)
    return monomial_sym((k,), n)


def basis_poly(kind: str, shape, n: int) -> Poly:
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "monomial":
        return monomial_sym(partition(shape), n)
    if kind == "elementary":
        return elementary(int(shape), n)
    if kind == "power":
        return power_sum(int(shape), n)
    raise ValueError(f"unknown basis kind {kind!r}")


@lru_cache(maxsize=None)
def _e_power_product(exps: tuple, n: int) -> Poly:
    """prod_i e_i(x)^exps[i-1] in n variables."""
    out = Poly.const(n, 1)
    for i, a in enumerate(exps, start=1):
        if a:
            out = out * elementary(i, n) ** a
    return out


def to_e_basis(P: Poly, n: int | None = None) -> Poly:
    """Write a symmetric polynomial as Q(e_1, ..., e_n).

    Returns Q as a Poly in n variables where variable i stands for e_{i+1}.
    """
    n = P.arity if n is None else n
    if P.arity != n:
        raise PolyError(f"polynomial has arity {P.arity}, expected {n}")
    bad = P.is_symmetric()
    if bad is not None:
        i, j = bad
        raise SymmetryError(f"not symmetric under the transposition (x{i + 1} x{j + 1})")
    Q: dict = {}
    R = P
    while R:
        mono, c = R.leading_term()
        # leading monomial of a symmetric polynomial is a partition
        exps = tuple(mono[i] - (mono[i + 1] if i + 1 < n else 0) for i in range(n))
        if any(e < 0 for e in exps):
            raise SymmetryError("leading exponent is not weakly decreasing")
        Q[exps] = Q.get(exps, 0) + c
        R = R - _e_power_product(exps, n).scale(c)
    return Poly(n, Q)


def from_e_basis(Q: Poly, n: int) -> Poly:
    """Back-substitute e_i(x_1..x_n) for the variables of Q."""
    return Q.substitute([elementary(i + 1, n) for i in range(Q.arity)])


def lift(P: Poly, n: int | None = None, n_out: int | None = None, degree: int | None = None) -> Poly:
    """The lift L(P) = H(e_1, 2 e_2, ..., (m+1) e_{m+1}) in ``n_out`` variables.

    H is the homogenization of the e-basis form Q of P.  ``degree`` overrides
    the homogenization degree (default: total degree of Q in the e-symbols);
    it must be at least that degree.
    """
    n = P.arity if n is None else n
    n_out = n + 1 if n_out is None else n_out
    Q = to_e_basis(P, n)
    if Q.is_zero():
        return Poly.zero(n_out)
    d = Q.degree()
    if degree is not None:
        if degree < d:
            raise ValueError(f"homogenization degree {degree} below degree {d} of Q")
        d = degree
    subs_e1 = elementary(1, n_out)
    images = [elementary(k + 2, n_out).scale(k + 2) for k in range(Q.arity)]
    out = Poly.zero(n_out)
    for mono, c in Q.terms.items():
        term = subs_e1 ** (d - sum(mono)) * c
        for k, a in enumerate(mono):
            if a:
                term = term * images[k] ** a
        out = out + term
    return out


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def m_2r(r: int, n: int) -> Poly:
    return monomial_sym(power_notation((2, r)), n)


def jensen_rhs(r: int, n: int) -> Poly:
    e = lambda k: elementary(k, n)
    out = Poly.zero(n)
    for k in range(2 * r + 1):
        out = out + (e(k) * e(2 * r - k)).scale((-1) ** (k + r))
    return out


def _doubled_e(k: int, n: int) -> Poly:
    doubled = elementary(k, 2 * n)
    subs = [Poly.var(n, i % n) for i in range(2 * n)]
    return doubled.substitute(subs)


def _tsos_lhs(r: int, n: int) -> Poly:
    out = Poly.zero(n)
    for S in itertools.combinations(range(n), r - 1):
        rest = [i for i in range(n) if i not in S]
        p2 = Poly.zero(n)
        for i in rest:
            m = [0] * n
            m[i] = 2
            p2 = p2 + Poly.monomial(m)
        sq = [0] * n
        for i in S:
            sq[i] = 2
        out = out + p2 * Poly.monomial(sq)
    return out.scale(Fraction(1, 2))


IDENTITIES = ("jensen", "boost", "tsos_constant", "doubled_elementary")


@dataclass
class IdentityResult:
    which: str
    r: int
    n: int
    holds: bool
    difference: Poly

    def to_json(self):
        return {
            "which": self.which,
            "r": self.r,
            "n": self.n,
            "holds": self.holds,
            "difference": self.difference.to_json(),
        }


def verify_identity(which: str, r: int, n: int) -> IdentityResult:
    """Check one of the symmetric-function identities as exact polynomial equality."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if which in ("tsos_constant", "doubled_elementary") and r < 2:
        raise ValueError(f"{which} needs r >= 2")
    e = lambda k: elementary(k, n)
    if which == "jensen":
        diff = m_2r(r, n) - jensen_rhs(r, n)
    elif which == "boost":
        # m_{2^{r-1}} is read as the quadratic form sum_j +-e_j e_{2r-2-j}, so
        # the homogenization degree is 2 (this matters only for r = 1)
        P = m_2r(r - 1, n)
        L = lift(P, n, n + 1, degree=2)
        rhs = m_2r(r, n + 1).scale(r * r) + monomial_sym(
            power_notation((2, r - 1), (1, 2)), n + 1
        ).scale(2)
        diff = L - rhs
    elif which == "tsos_constant":
        diff = _tsos_lhs(r, n) - m_2r(r, n).scale(Fraction(r, 2))
    elif which == "doubled_elementary":
        rhs = Poly.zero(n)
        j = 1
        while r - j >= 0:
            rhs = rhs + e(r - j) * e(r + j)
            j += 2
        diff = _doubled_e(2 * r, n) - m_2r(r, n) - rhs.scale(4)
    else:
        raise ValueError(f"unknown identity {which!r}")
    return IdentityResult(which, r, n, diff.is_zero(), diff)


# ---------------------------------------------------------------------------
# inequalities
# ---------------------------------------------------------------------------

INEQUALITIES = ("laguerre_turan", "newton", "turan_refined", "eng")


def eng_constants(r: int):
    return Fraction(3 * (r - 1), r + 1), Fraction(9 * (r - 1), (r + 1) ** 2)


def _e_values(x, n):
    """e_0..e_n at an integer point (dynamic programming)."""
    e = [1] + [0] * n
    for xi in x:
        for k in range(n, 0, -1):
            e[k] += e[k - 1] * xi
    return e


def _gap_from_values(which, r, n, e, m2r):
    E = lambda k: e[k] if 0 <= k <= n else 0
    if which == "laguerre_turan":
        return r * E(r) ** 2 - (r + 1) * E(r - 1) * E(r + 1)
    if which == "newton":
        return Fraction(E(r) ** 2, math.comb(n, r) ** 2) - Fraction(
            E(r - 1) * E(r + 1), math.comb(n, r - 1) * math.comb(n, r + 1)
        )
    if which == "turan_refined":
        return r * E(r) ** 2 - (r + 1) * E(r - 1) * E(r + 1) - m2r
    if which == "eng":
        a, C = eng_constants(r)
        return (a * E(r - 1) * E(r) - E(r - 2) * E(r + 1)) ** 2 - C * E(r - 2) * E(r) * m2r
    raise ValueError(f"unknown inequality {which!r}")


def _gap_degree(which, r):
    return {"laguerre_turan": 2 * r, "newton": 2 * r, "turan_refined": 2 * r, "eng": 4 * r - 2}[which]


def _check_range(which, r, n):
    if which == "eng" and r < 2:
        raise ValueError("eng needs r >= 2")
    if which == "newton" and not 1 <= r <= n - 1:
        raise ValueError("newton needs 1 <= r <= n-1")
    if r < 1:
        raise ValueError("r must be >= 1")


def gap_poly(which: str, r: int, n: int) -> Poly:
    """The inequality's gap (right side minus left, so the claim is gap >= 0)."""
    _check_range(which, r, n)
    e = lambda k: elementary(k, n)
    if which == "laguerre_turan":
        return (e(r) ** 2).scale(r) - (e(r - 1) * e(r + 1)).scale(r + 1)
    if which == "newton":
        return (e(r) ** 2).scale(Fraction(1, math.comb(n, r) ** 2)) - (e(r - 1) * e(r + 1)).scale(
            Fraction(1, math.comb(n, r - 1) * math.comb(n, r + 1))
        )
    if which == "turan_refined":
        return gap_poly("laguerre_turan", r, n) - m_2r(r, n)
    if which == "eng":
        a, C = eng_constants(r)
        lhs = (e(r - 1) * e(r)).scale(a) - e(r - 2) * e(r + 1)
        return lhs * lhs - (e(r - 2) * e(r) * m_2r(r, n)).scale(C)
    raise ValueError(f"unknown inequality {which!r}")


@dataclass
class SampleReport:
    which: str
    r: int
    n: int
    seed: int
    samples: int
    min_value: Fraction
    witness_point: list | None
    exact_zero_gap: bool
    nonnegative_on_samples: bool = field(init=False)

    def __post_init__(self):
        self.nonnegative_on_samples = self.min_value >= 0

    def to_json(self):
        return {
            "which": self.which,
            "r": self.r,
            "n": self.n,
            "seed": self.seed,
            "samples": self.samples,
            "min_value": f"{self.min_value.numerator}/{self.min_value.denominator}",
            "witness_point": None
            if self.witness_point is None
            else [f"{x.numerator}/{x.denominator}" for x in self.witness_point],
            "exact_zero_gap": self.exact_zero_gap,
            "nonnegative_on_samples": self.nonnegative_on_samples,
        }


def inequality_gap(which: str, r: int, n: int, samples: int = 10000, seed: int = DEFAULT_SEED,
                   want_poly: bool = True):
    """Gap polynomial plus a falsification report over seeded rational samples.

    Sampling never proves the inequality; a negative sample is a refutation
    and is recorded as ``witness_point``.
    """
    _check_range(which, r, n)
    gap = gap_poly(which, r, n) if want_poly else None
    exact_zero = gap.is_zero() if gap is not None else (which == "turan_refined" and r == 1)
    deg = _gap_degree(which, r)
    min_val, witness = None, None
    for pt, ints, den in rational_points(seed, samples, n, -10, 10):
        e = _e_values(ints, n)
        m2r = _e_values([v * v for v in ints], n)[r] if r <= n else 0
        val = Fraction(_gap_from_values(which, r, n, e, m2r)) / den ** deg
        if min_val is None or val < min_val:
            min_val = val
            if val < 0:
                witness = pt
    report = SampleReport(which, r, n, seed, samples, min_val if min_val is not None else Fraction(0),
                          witness, exact_zero)
    return gap, report


def sample_min(P: Poly, samples: int, seed: int = DEFAULT_SEED, lo=-10, hi=10):
    """Exact minimum of P over seeded rational sample points, and its argmin."""
    best, arg = None, None
    for pt, _, _ in rational_points(seed, samples, P.arity, lo, hi):
        v = P.evaluate(pt)
        if best is None or v < best:
            best, arg = v, pt
    return best, arg


def evaluator(which: str, r: int, n: int) -> Callable:
    """Fast exact evaluator of the gap at a rational point."""
    _check_range(which, r, n)

    def f(point):
        pt = [Fraction(x) for x in point]
        e = [Fraction(1)] + [Fraction(0)] * n
        for xi in pt:
            for k in range(n, 0, -1):
                e[k] += e[k - 1] * xi
        sq = [Fraction(1)] + [Fraction(0)] * n
        for xi in pt:
            for k in range(n, 0, -1):
                sq[k] += sq[k - 1] * xi * xi
        return Fraction(_gap_from_values(which, r, n, e, sq[r] if r <= n else 0))

    return f
