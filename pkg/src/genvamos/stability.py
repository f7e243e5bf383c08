"""Stability and hyperbolicity probes, hyperbolic eigenvalues and rank, cone
membership, Grace-Walsh-Szego polarization, and the support/basis-exchange
check for multiaffine polynomials.

Probes only ever falsify: a clean report means "no counterexample in N
trials", never "stable".
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .exactpoly import (
    Poly,
    PolyError,
    UPoly,
    complex_roots_numeric,
    isolate_real_roots,
    real_roots_exact,
    squarefree_factorization,
    squarefree_part,
    count_real_roots,
)
from .rng import DEFAULT_SEED, generator, rational_vector

EXACT_DEGREE_LIMIT = 12
DIRECTION_RANGE = (1, 10)
BASE_RANGE = (-10, 10)


class HyperbolicityError(ArithmeticError):
    """A restriction along the hyperbolic direction has a non-real root."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _fmt(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass
class ProbeReport:
    trials: int
    failures: int
    worst_witness: dict | None
    seed: int
    tol: float
    mode: str = "stability"
    note: str = "probe: no counterexample found is evidence, not proof"

    @property
    def clean(self):
        return self.failures == 0

    def to_json(self):
        return {
            "trials": self.trials,
            "failures": self.failures,
            "worst_witness": self.worst_witness,
            "seed": self.seed,
            "tol": self.tol,
            "mode": self.mode,
            "sampling": {
                "direction_range": list(DIRECTION_RANGE),
                "base_range": list(BASE_RANGE),
            },
            "note": self.note,
        }


def _offending_root(f: UPoly, tol):
    """Root with the largest imaginary part, or None if f looks real-rooted."""
    if f.degree() < 1:
        return None
    if f.degree() <= EXACT_DEGREE_LIMIT:
        _, ok = real_roots_exact(f)
        if ok:
            return None
        roots = complex_roots_numeric(f)
        return max(roots, key=lambda z: abs(z.imag))
    roots = complex_roots_numeric(f)
    worst = max(roots, key=lambda z: abs(z.imag))
    if abs(worst.imag) > tol * (1 + abs(worst)):
        return worst
    return None


def _require_homogeneous(P: Poly):
    if P.is_zero():
        raise PolyError("probe of the zero polynomial")
    if not P.is_homogeneous():
        raise PolyError("probe needs a homogeneous polynomial")


def probe_line(P: Poly, x0, v, tol=1e-9):
    """Witness dict if t -> P(x0 + t v) fails real-rootedness, else None."""
    f = P.restrict_line(x0, v)
    if f.is_zero():
        return None
    z = _offending_root(f, tol)
    if z is None:
        return None
    return {
        "x0": [_fmt(a) for a in x0],
        "v": [_fmt(b) for b in v],
        "root": [z.real, z.imag],
        "restriction": f.to_json(),
    }


def _run_probe(P, trials, seed, tol, draw, mode):
    failures, worst, worst_im = 0, None, -1.0
    gen = generator(seed)
    for _ in range(trials):
        x0, v = draw(gen)
        w = probe_line(P, x0, v, tol)
        if w is not None:
            failures += 1
            if abs(w["root"][1]) > worst_im:
                worst, worst_im = w, abs(w["root"][1])
    return ProbeReport(trials, failures, worst, seed, tol, mode)


def probe_stability(P: Poly, trials: int = 256, seed: int = DEFAULT_SEED, tol: float = 1e-9) -> ProbeReport:
    """Random real base points along strictly positive directions.

    A homogeneous P is stable iff every such restriction is real-rooted.
    """
    _require_homogeneous(P)
    n = P.arity

    def draw(gen):
        v, _ = rational_vector(gen, n, *DIRECTION_RANGE)
        x0, _ = rational_vector(gen, n, *BASE_RANGE)
        return x0, v

    return _run_probe(P, trials, seed, tol, draw, "stability")


def probe_hyperbolicity(P: Poly, e: Sequence, trials: int = 256, seed: int = DEFAULT_SEED,
                        tol: float = 1e-9) -> ProbeReport:
    """Random base points x, restriction t -> P(x + t e)."""
    _require_homogeneous(P)
    e = [Fraction(c) for c in e]
    if P.evaluate(e) == 0:
        raise PolyError("P(e) = 0: not a hyperbolic direction")
    n = P.arity

    def draw(gen):
        x0, _ = rational_vector(gen, n, *BASE_RANGE)
        return x0, e

    return _run_probe(P, trials, seed, tol, draw, "hyperbolicity")


# ---------------------------------------------------------------------------
# eigenvalues and rank
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eigenvalue:
    """A real algebraic number: exact when rational, otherwise an isolating
    interval (lo, hi] of the square-free defining polynomial."""

    lo: Fraction
    hi: Fraction
    poly: UPoly
    exact: Fraction | None

    @property
    def value(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float((self.lo + self.hi) / 2)

    def sign(self) -> int:
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        if self.lo >= 0:
            return 1
        if self.hi <= 0:
            return -1
        # a zero root is always reported exactly, so the root is nonzero here
        f = self.poly
        return -1 if (f(self.lo) > 0) != (f(Fraction(0)) > 0) else 1

    def to_json(self):
        if self.exact is not None:
            return {"exact": _fmt(self.exact)}
        return {"interval": [_fmt(self.lo), _fmt(self.hi)], "poly": self.poly.to_json(), "approx": self.value}


@dataclass
class Spectrum:
    eigenvalues: list  # descending, with multiplicity

    @property
    def lambda_max(self):
        return self.eigenvalues[0]

    @property
    def lambda_min(self):
        return self.eigenvalues[-1]

    def values(self):
        return [ev.value for ev in self.eigenvalues]

    def exact_values(self):
        return [ev.exact for ev in self.eigenvalues]

    def nonzero_count(self):
        return sum(1 for ev in self.eigenvalues if not (ev.exact is not None and ev.exact == 0))

    def to_json(self):
        return [ev.to_json() for ev in self.eigenvalues]


def characteristic(h: Poly, e, x) -> UPoly:
    """t -> h(t e - x)."""
    return h.restrict_line([-Fraction(c) for c in x], e)


def spectrum_of(f: UPoly) -> Spectrum:
    """Real roots of f with multiplicity, descending; raises if f is not real-rooted."""
    evs = []
    total = 0
    for g, mult in squarefree_factorization(f):
        roots = isolate_real_roots(g.monic())
        if len(roots) != g.degree():
            raise HyperbolicityError("non-real root", witness=f.to_json())
        for lo, hi, ex in roots:
            evs.extend([Eigenvalue(lo, hi, g.monic(), ex)] * mult)
        total += g.degree() * mult
    if total != f.degree():
        raise HyperbolicityError("non-real root", witness=f.to_json())
    evs.sort(key=lambda ev: ev.value, reverse=True)
    return Spectrum(evs)


def eigenvalues(h: Poly, e: Sequence, x: Sequence) -> Spectrum:
    e = [Fraction(c) for c in e]
    if h.evaluate(e) == 0:
        raise PolyError("h(e) = 0: not hyperbolic direction for h")
    f = characteristic(h, e, x)
    try:
        return spectrum_of(f)
    except HyperbolicityError as exc:
        raise HyperbolicityError("h not hyperbolic w.r.t. e at x",
                                 witness={"x": [_fmt(c) for c in x], "restriction": f.to_json()}) from exc


def hyp_rank(h: Poly, e: Sequence, x: Sequence) -> int:
    """deg_t h(e + t x)."""
    e = [Fraction(c) for c in e]
    if h.evaluate(e) == 0:
        raise PolyError("h(e) = 0: not hyperbolic direction for h")
    return max(h.restrict_line(e, x).degree(), 0)


class Membership(str, Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


def cone_member(h: Poly, e: Sequence, x: Sequence, tol: float = 1e-9) -> Membership:
    """Locate x relative to the hyperbolicity cone of h at e.

    Rational data is decided exactly by Sturm counts; float data uses the
    numeric roots with tolerance ``tol``.
    """
    if any(isinstance(c, float) for c in list(x) + list(e)):
        return _cone_member_float(h, e, x, tol)
    e = [Fraction(c) for c in e]
    if h.evaluate(e) == 0:
        raise PolyError("h(e) = 0: not hyperbolic direction for h")
    f = characteristic(h, e, x)
    n_real, ok = real_roots_exact(f)
    if not ok:
        raise HyperbolicityError("h not hyperbolic w.r.t. e at x",
                                 witness={"x": [_fmt(c) for c in x], "restriction": f.to_json()})
    sf = squarefree_part(f)
    negatives = count_real_roots(sf, None, Fraction(0)) - (1 if sf(Fraction(0)) == 0 else 0)
    if negatives > 0:
        return Membership.OUTSIDE
    if f(Fraction(0)) == 0:
        return Membership.BOUNDARY
    return Membership.INTERIOR


def _cone_member_float(h, e, x, tol):
    n = h.arity
    fx = [float(c) for c in x]
    fe = [float(c) for c in e]
    d = h.degree()
    # sample t -> h(t e - x) at d+1 Chebyshev-like points and interpolate
    import numpy as np

    ts = np.cos(np.pi * (np.arange(d + 1) + 0.5) / (d + 1)) * (1 + max(map(abs, fx + fe)))
    vals = [h.evaluate([t * a - b for a, b in zip(fe, fx)]) for t in ts]
    coeffs = np.polyfit(ts, vals, d)
    roots = np.roots(coeffs)
    if np.any(np.abs(roots.imag) > tol * (1 + np.abs(roots))):
        raise HyperbolicityError("h not hyperbolic w.r.t. e at x", witness={"x": fx})
    lmin = float(np.min(roots.real))
    if lmin > tol:
        return Membership.INTERIOR
    if lmin >= -tol:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


# ---------------------------------------------------------------------------
# polarization
# ---------------------------------------------------------------------------


def polarize(P: Poly, degrees: Sequence[int]) -> Poly:
    """Grace-Walsh-Szego polarization.

    Variable i becomes a block of ``degrees[i]`` variables and x_i^k is
    replaced by e_k(block)/C(d_i, k).  Blocks are laid out consecutively.
    """
    if len(degrees) != P.arity:
        raise PolyError("one degree cap per variable")
    for i, d in enumerate(degrees):
        if P.degree_in(i) > d:
            raise PolyError(f"degree of x{i + 1} exceeds cap {d}")
    offsets = [0]
    for d in degrees:
        offsets.append(offsets[-1] + d)
    N = offsets[-1]
    out: dict = {}
    for mono, c in P.terms.items():
        choices = [itertools.combinations(range(offsets[i], offsets[i + 1]), k) for i, k in enumerate(mono)]
        weight = Fraction(1, math.prod(math.comb(degrees[i], k) for i, k in enumerate(mono)))
        for picks in itertools.product(*choices):
            m = [0] * N
            for block in picks:
                for j in block:
                    m[j] = 1
            m = tuple(m)
            out[m] = out.get(m, 0) + c * weight
    return Poly(N, out)


def depolarize(Q: Poly, degrees: Sequence[int]) -> Poly:
    """Set every variable in block i equal to x_i."""
    subs = []
    for i, d in enumerate(degrees):
        subs.extend([Poly.var(len(degrees), i)] * d)
    return Q.substitute(subs)


# ---------------------------------------------------------------------------
# support and basis exchange
# ---------------------------------------------------------------------------


@dataclass
class ExchangeResult:
    ok: bool
    bases: list  # sorted list of sorted 1-based tuples
    witness: tuple | None = None

    def to_json(self):
        return {
            "ok": self.ok,
            "bases": [list(b) for b in self.bases],
            "count": len(self.bases),
            "witness": None
            if self.witness is None
            else {"B1": list(self.witness[0]), "B2": list(self.witness[1]), "element": self.witness[2]},
        }


def basis_exchange_witness(masks: Sequence[int], size: int):
    """First (B1, B2, x) violating exchange, scanning bases in sorted order."""
    family = set(masks)
    for b1 in masks:
        for b2 in masks:
            diff1 = b1 & ~b2
            if not diff1:
                continue
            diff2 = b2 & ~b1
            x = diff1
            while x:
                low = x & -x
                x ^= low
                base = b1 ^ low
                y = diff2
                found = False
                while y:
                    lowy = y & -y
                    y ^= lowy
                    if base | lowy in family:
                        found = True
                        break
                if not found:
                    return b1, b2, low.bit_length()
    return None


def mask_to_tuple(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def support_matroid_check(P: Poly) -> ExchangeResult:
    """Support of a homogeneous multiaffine positive polynomial, with the
    basis-exchange axiom checked over all ordered pairs."""
    if P.is_zero():
        raise PolyError("zero polynomial")
    if not P.is_multiaffine():
        raise PolyError("polynomial is not multiaffine")
    if not P.is_homogeneous():
        raise PolyError("polynomial is not homogeneous")
    if any(c <= 0 for c in P.terms.values()):
        raise PolyError("coefficients must be positive")
    masks = sorted(
        (sum(1 << i for i, e in enumerate(m) if e) for m in P.terms),
        key=lambda b: mask_to_tuple(b),
    )
    bases = [mask_to_tuple(b) for b in masks]
    w = basis_exchange_witness(masks, P.degree())
    if w is None:
        return ExchangeResult(True, bases)
    return ExchangeResult(False, bases, (mask_to_tuple(w[0]), mask_to_tuple(w[1]), w[2]))
