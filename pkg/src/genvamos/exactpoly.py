"""Exact sparse multivariate polynomials over the rationals.

Polynomials are immutable.  A polynomial owns a fixed arity and a mapping
from exponent tuples to nonzero :class:`fractions.Fraction` coefficients.
Univariate restrictions live in :class:`UPoly`, which also carries the
Sturm-sequence machinery used to decide real-rootedness exactly.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np


class PolyError(ValueError):
    """Malformed polynomial input (arity mismatch, zero polynomial, ...)."""


class RootFindingError(ArithmeticError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial or []


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)
    return Fraction(c)


def _grlex_key(mono):
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial in ``arity`` variables with rational coefficients."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[tuple, object] | Iterable = ()):
        if arity < 0:
            raise PolyError("arity must be nonnegative")
        self.arity = arity
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != arity:
                raise PolyError(f"monomial {mono} has length {len(mono)}, expected {arity}")
            if any(e < 0 for e in mono):
                raise PolyError(f"negative exponent in {mono}")
            c = _frac(c)
            if c:
                c = clean.get(mono, 0) + c
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, arity, terms):
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity):
        return cls._raw(arity, {})

    @classmethod
    def const(cls, arity, c):
        c = _frac(c)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def var(cls, arity, i, coef=1):
        """The variable ``x_i`` (0-based index)."""
        if not 0 <= i < arity:
            raise PolyError(f"variable index {i} out of range for arity {arity}")
        mono = [0] * arity
        mono[i] = 1
        return cls._raw(arity, {tuple(mono): _frac(coef)})

    @classmethod
    def monomial(cls, exps, coef=1):
        return cls(len(exps), {tuple(exps): coef})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_multiaffine(self) -> bool:
        return all(e <= 1 for m in self.terms for e in m)

    def support(self) -> set:
        return set(self.terms)

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.arity, Fraction(0))

    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly.const(self.arity, other)
        if other.arity != self.arity:
            raise PolyError(f"arity mismatch: {self.arity} vs {other.arity}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = _frac(c)
        if not c:
            return Poly.zero(self.arity)
        return Poly._raw(self.arity, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        return Poly._raw(self.arity, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / _frac(c))

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = Poly.const(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.arity, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and substitution ---------------------------------
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple, np.ndarray)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``.

        Rational/int points give an exact Fraction; float or complex points
        give a float/complex value.
        """
        if len(point) != self.arity:
            raise PolyError(f"point has length {len(point)}, expected {self.arity}")
        inexact = any(isinstance(x, (float, complex, np.floating, np.complexfloating)) for x in point)
        if inexact:
            pt = [complex(x) if isinstance(x, (complex, np.complexfloating)) else float(x) for x in point]
            total = 0
            for m, c in self.terms.items():
                v = float(c)
                for x, e in zip(pt, m):
                    if e:
                        v *= x ** e
                total += v
            return total
        pt = [_frac(x) for x in point]
        # clear denominators so the inner loop runs on ints
        den = reduce(math.lcm, (x.denominator for x in pt), 1)
        ipt = [x.numerator * (den // x.denominator) for x in pt]
        deg = self.degree()
        total = Fraction(0)
        acc = {}
        for m, c in self.terms.items():
            v = 1
            for x, e in zip(ipt, m):
                if e:
                    v *= x ** e if e > 1 else x
            k = deg - sum(m)
            acc[k] = acc.get(k, Fraction(0)) + c * v
        for k, s in acc.items():
            total += s * den ** k
        return total / den ** deg if deg > 0 else total

    def substitute(self, assignment: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable i by ``assignment[i]``."""
        if len(assignment) != self.arity:
            raise PolyError(f"need {self.arity} substitutions, got {len(assignment)}")
        arities = {a.arity for a in assignment}
        if len(arities) > 1:
            raise PolyError("substituted polynomials disagree on arity")
        target = arities.pop() if arities else 0
        powers: list[dict] = [dict() for _ in range(self.arity)]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = assignment[i] ** e
            return cache[e]

        out = Poly.zero(target)
        for m, c in self.terms.items():
            term = Poly.const(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def relabel(self, perm: Sequence[int]) -> "Poly":
        """Send variable i to variable ``perm[i]`` (0-based)."""
        if sorted(perm) != list(range(self.arity)):
            raise PolyError("relabel needs a permutation")
        out = {}
        for m, c in self.terms.items():
            nm = [0] * self.arity
            for i, e in enumerate(m):
                nm[perm[i]] = e
            out[tuple(nm)] = c
        return Poly._raw(self.arity, out)

    def extend(self, arity: int) -> "Poly":
        """Embed into more variables (new ones appended, unused)."""
        if arity < self.arity:
            raise PolyError("cannot shrink arity")
        pad = (0,) * (arity - self.arity)
        return Poly._raw(arity, {m + pad: c for m, c in self.terms.items()})

    def is_symmetric(self):
        """Return None if symmetric, else the first violating transposition (i, j)."""
        for i in range(self.arity - 1):
            perm = list(range(self.arity))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.relabel(perm) != self:
                return (i, i + 1)
        return None

    # -- line restriction ---------------------------------------------
    def restrict_line(self, x0: Sequence, v: Sequence) -> "UPoly":
        """Exact univariate polynomial t -> P(x0 + t v)."""
        if len(x0) != self.arity or len(v) != self.arity:
            raise PolyError("line data must match the arity")
        x0 = [_frac(a) for a in x0]
        v = [_frac(b) for b in v]
        den = reduce(math.lcm, (q.denominator for q in itertools.chain(x0, v)), 1)
        A = [a.numerator * (den // a.denominator) for a in x0]
        B = [b.numerator * (den // b.denominator) for b in v]
        cden = reduce(math.lcm, (c.denominator for c in self.terms.values()), 1)
        deg = self.degree()
        if deg < 0:
            return UPoly([])
        lin_pows: list[dict] = [dict() for _ in range(self.arity)]

        def lin(i, e):
            cache = lin_pows[i]
            if e not in cache:
                cache[e] = _ipow([A[i], B[i]], e)
            return cache[e]

        acc = [0] * (deg + 1)
        for m, c in self.terms.items():
            ic = c.numerator * (cden // c.denominator)
            poly = [ic * den ** (deg - sum(m))]
            for i, e in enumerate(m):
                if e:
                    poly = _imul(poly, lin(i, e))
            for k, a in enumerate(poly):
                acc[k] += a
        scale = Fraction(1, cden * den ** deg)
        return UPoly([a * scale for a in acc])

    # -- printing -------------------------------------------------------
    def __repr__(self):
        return f"Poly({self.arity}, {self.to_str()})"

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.arity)]
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [
                {"exp": list(m), "coef": f"{c.numerator}/{c.denominator}"}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        try:
            arity = int(data["arity"])
            terms = [(t["exp"], Fraction(t["coef"])) for t in data["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise PolyError(f"malformed polynomial JSON: {exc}") from exc
        return cls(arity, terms)


def _imul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ipow(a, e):
    out = [1]
    for _ in range(e):
        out = _imul(out, a)
    return out


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------


class UPoly:
    """Univariate polynomial, coefficients ascending, exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __call__(self, t):
        acc = 0 if isinstance(t, (float, complex)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + (float(c) if isinstance(t, (float, complex)) else c)
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * _frac(other) for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly([])
        return UPoly(_imul(list(self.coeffs), list(other.coeffs)))

    def derivative(self):
        return UPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, c):
        """The polynomial t -> f(t + c)."""
        c = _frac(c)
        out = UPoly([])
        lin = UPoly([c, 1])
        for coef in reversed(self.coeffs):
            out = out * lin + UPoly([coef])
        return out

    def monic(self):
        if not self.coeffs:
            return self
        return UPoly([c / self.coeffs[-1] for c in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(r) >= len(d) and r:
            k = len(r) - len(d)
            f = r[-1] / d[-1]
            q[k] = f
            for i, c in enumerate(d):
                r[k + i] -= f * c
            r.pop()
            while r and not r[-1]:
                r.pop()
        return UPoly(q), UPoly(r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def to_float(self):
        return [float(c) for c in self.coeffs]

    def to_json(self):
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: UPoly) -> UPoly:
    if f.is_zero():
        raise PolyError("zero polynomial")
    g = upoly_gcd(f, f.derivative())
    return (f // g).monic()


def squarefree_factorization(f: UPoly):
    """Yun's algorithm: list of (g_i, i) with f = lead * prod g_i^i."""
    if f.is_zero():
        raise PolyError("zero polynomial")
    if f.degree() == 0:
        return []
    out = []
    fp = f.derivative()
    a = upoly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = upoly_gcd(b, d)
        if a.degree() > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        i += 1
        d = c - b.derivative()
    return out


def sturm_sequence(f: UPoly):
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(p: UPoly, positive: bool):
    s = _sign(p.lead())
    if not positive and p.degree() % 2:
        s = -s
    return s


def count_real_roots(f: UPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of f in (lo, hi]; None means infinite."""
    if f.is_zero():
        raise PolyError("zero polynomial")
    seq = sturm_sequence(f)
    v_lo = _variations([_sign_at_inf(p, False) for p in seq] if lo is None else [_sign(p(lo)) for p in seq])
    v_hi = _variations([_sign_at_inf(p, True) for p in seq] if hi is None else [_sign(p(hi)) for p in seq])
    return v_lo - v_hi


def real_roots_exact(f: UPoly):
    """Return (distinct real root count, is_real_rooted) via Sturm sequences."""
    if f.is_zero():
        raise PolyError("real_roots_exact: zero polynomial")
    if f.degree() == 0:
        return 0, True
    sf = squarefree_part(f)
    n = count_real_roots(sf)
    return n, n == sf.degree()


def root_bound(f: UPoly) -> Fraction:
    """Cauchy bound: every root has |z| < bound."""
    lead = abs(f.lead())
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: UPoly, width=Fraction(1, 2**40)):
    """Disjoint isolating intervals (lo, hi] for the distinct real roots of a
    square-free polynomial, refined to at most ``width``; each entry is
    (lo, hi, exact) with ``exact`` a Fraction when the root was hit exactly."""
    if f.degree() < 1:
        return []
    seq = sturm_sequence(f)

    def var(x):
        return _variations([_sign(p(x)) for p in seq])

    B = root_bound(f)
    out = []
    stack = [(-B, B, var(-B), var(B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(f, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        vm = var(mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort(key=lambda t: t[0])
    return out


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with smallest denominator in the closed interval [lo, hi]."""
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo, hi share integer part fl
    rest = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def _refine(f, lo, hi, width):
    if f(hi) == 0:
        return hi, hi, hi
    # one simple root in (lo, hi) and f(hi) != 0; f(lo) may itself vanish
    slo = -_sign(f(hi))
    tried = False
    while hi - lo > width:
        if not tried and hi - lo < Fraction(1, 2**12):
            cand = _simplest_between(lo, hi)
            tried = True
            if lo < cand <= hi and f(cand) == 0:
                return cand, cand, cand
        mid = (lo + hi) / 2
        sm = _sign(f(mid))
        if sm == 0:
            return mid, mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    cand = _simplest_between(lo, hi)
    if lo < cand <= hi and f(cand) == 0:
        return cand, cand, cand
    return lo, hi, None


def complex_roots_numeric(f: UPoly, tol: float = 1e-12, max_iter: int = 1000):
    """Roots of the float image of f.

    Companion-matrix eigenvalues, polished by Newton steps; raises
    :class:`RootFindingError` (carrying the unpolished roots) if the residual
    test fails after ``max_iter`` polishing steps.
    """
    if f.degree() < 1:
        raise PolyError("complex_roots_numeric needs degree >= 1")
    cs = np.array(f.to_float()[::-1], dtype=float)
    scale = np.max(np.abs(cs))
    cs = cs / scale
    roots = np.roots(cs).astype(complex)
    df = np.polyder(cs)
    bound = tol * (1 + np.max(np.abs(cs)))
    for it in range(max_iter):
        vals = np.polyval(cs, roots)
        if np.all(np.abs(vals) <= bound * np.maximum(1, np.abs(roots)) ** f.degree()):
            return [complex(r) for r in roots]
        dv = np.polyval(df, roots)
        step = np.where(np.abs(dv) > 0, vals / np.where(dv == 0, 1, dv), 0)
        roots = roots - step
        if not np.all(np.isfinite(roots)):
            break
    raise RootFindingError("root polishing did not converge", partial=[complex(r) for r in roots])
