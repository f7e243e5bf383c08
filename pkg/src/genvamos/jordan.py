"""Composition algebras by Cayley-Dickson doubling, the rank-3 Jordan algebras
H_3(K), and verification of rank-one point configurations against matroids.

Levels 0..3 are R, C, H, O.  Doubling convention:
(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exactpoly import PolyError, UPoly
from .matroid import RankOracle
from .rng import generator, rational_vector
from .stability import Spectrum, spectrum_of

ALGEBRAS = {"R": 0, "C": 1, "H": 2, "O": 3}
ALGEBRA_NAMES = {v: k for k, v in ALGEBRAS.items()}


class JordanError(ValueError):
    pass


def _tconj(x):
    return (x[0],) + tuple(-a for a in x[1:])


def _tadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _tsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _tmul(x, y):
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    return _tsub(_tmul(a, c), _tmul(_tconj(d), b)) + _tadd(_tmul(d, a), _tmul(b, _tconj(c)))


def _num(v):
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


class CD:
    """An element of the Cayley-Dickson algebra of dimension 2^level."""

    __slots__ = ("level", "c")

    def __init__(self, level: int, coords: Iterable):
        if not 0 <= level <= 3:
            raise JordanError(f"level must be 0..3, got {level}")
        c = tuple(_num(v) for v in coords)
        if len(c) != 1 << level:
            raise JordanError(f"level {level} needs {1 << level} coordinates, got {len(c)}")
        self.level = level
        self.c = c

    @classmethod
    def real(cls, level, value):
        return cls(level, (value,) + (0,) * ((1 << level) - 1))

    @classmethod
    def unit(cls, level, k):
        coords = [0] * (1 << level)
        coords[k] = 1
        return cls(level, coords)

    def _same(self, other):
        if not isinstance(other, CD) or other.level != self.level:
            raise JordanError("CD operands must share a level")

    def __add__(self, other):
        self._same(other)
        return CD(self.level, _tadd(self.c, other.c))

    def __sub__(self, other):
        self._same(other)
        return CD(self.level, _tsub(self.c, other.c))

    def __neg__(self):
        return CD(self.level, (-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, CD):
            self._same(other)
            return CD(self.level, _tmul(self.c, other.c))
        return CD(self.level, (a * other for a in self.c))

    def __rmul__(self, other):
        return CD(self.level, (other * a for a in self.c))

    def conj(self):
        return CD(self.level, _tconj(self.c))

    def norm(self):
        return sum(a * a for a in self.c)

    def re(self):
        return self.c[0]

    def is_zero(self):
        return not any(self.c)

    def is_real(self):
        return not any(self.c[1:])

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise JordanError("zero has no inverse")
        return self.conj() * (1 / n if isinstance(n, float) else Fraction(1) / n)

    def truncate(self, level):
        return CD(level, self.c[: 1 << level])

    def __eq__(self, other):
        return isinstance(other, CD) and self.level == other.level and self.c == other.c

    def __hash__(self):
        return hash((self.level, self.c))

    def __repr__(self):
        return f"CD{self.level}({', '.join(str(a) for a in self.c)})"

    def to_json(self):
        return [str(a) for a in self.c]


def _cd_sum(items, level):
    out = (0,) * (1 << level)
    for x in items:
        out = _tadd(out, x.c)
    return CD(level, out)


class H3:
    """A Hermitian 3x3 matrix over the level-``level`` algebra."""

    __slots__ = ("level", "d", "x12", "x13", "x23")

    def __init__(self, level, diag, x12=None, x13=None, x23=None):
        self.level = level
        self.d = tuple(_num(v) for v in diag)
        if len(self.d) != 3:
            raise JordanError("three diagonal entries required")
        z = CD(level, [0] * (1 << level))
        self.x12 = x12 if x12 is not None else z
        self.x13 = x13 if x13 is not None else z
        self.x23 = x23 if x23 is not None else z
        for x in (self.x12, self.x13, self.x23):
            if x.level != level:
                raise JordanError("off-diagonal entries must match the algebra level")

    @classmethod
    def identity(cls, level):
        return cls(level, (1, 1, 1))

    @classmethod
    def diag(cls, level, a, b, c):
        return cls(level, (a, b, c))

    def matrix(self):
        L = self.level
        a, b, c = (CD.real(L, v) for v in self.d)
        return [
            [a, self.x12, self.x13],
            [self.x12.conj(), b, self.x23],
            [self.x13.conj(), self.x23.conj(), c],
        ]

    @classmethod
    def from_matrix(cls, m, level):
        for i in range(3):
            if not m[i][i].is_real():
                raise JordanError("diagonal is not real")
        return cls(level, [m[i][i].re() for i in range(3)], m[0][1], m[0][2], m[1][2])

    def _lin(self, other, s, t):
        return H3(
            self.level,
            [s * a + t * b for a, b in zip(self.d, other.d)],
            self.x12 * s + other.x12 * t,
            self.x13 * s + other.x13 * t,
            self.x23 * s + other.x23 * t,
        )

    def __add__(self, other):
        return self._lin(other, 1, 1)

    def __sub__(self, other):
        return self._lin(other, 1, -1)

    def scale(self, s):
        return H3(self.level, [s * a for a in self.d], self.x12 * s, self.x13 * s, self.x23 * s)

    def jordan(self, other):
        """(XY + YX) / 2."""
        A, B = self.matrix(), other.matrix()
        L = self.level
        half = 0.5 if any(isinstance(v, float) for v in self.d + other.d) else Fraction(1, 2)
        out = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                s = _cd_sum([A[i][k] * B[k][j] + B[i][k] * A[k][j] for k in range(3)], L)
                out[i][j] = s * half
        return H3(L, [out[i][i].re() for i in range(3)], out[0][1], out[0][2], out[1][2])

    def square(self):
        return self.jordan(self)

    def trace(self):
        return sum(self.d)

    def sigma(self):
        a, b, c = self.d
        return a * b + b * c + c * a - self.x12.norm() - self.x13.norm() - self.x23.norm()

    def det(self):
        a, b, c = self.d
        triple = (self.x12 * self.x23) * self.x13.conj()
        return (a * b * c - a * self.x23.norm() - b * self.x13.norm() - c * self.x12.norm()
                + 2 * triple.re())

    def char(self) -> UPoly:
        """t^3 - tr t^2 + sigma t - det."""
        return UPoly([-self.det(), self.sigma(), -self.trace(), 1])

    def sharp(self):
        """Adjoint X# = X^2 - tr(X) X + sigma(X) I, so that X o X# = det(X) I."""
        return self.square() - self.scale(self.trace()) + H3.identity(self.level).scale(self.sigma())

    def cross(self, other):
        return (self + other).sharp() - self.sharp() - other.sharp()

    def inner(self, other):
        return self.jordan(other).trace()

    def is_zero(self):
        return not any(self.d) and all(x.is_zero() for x in (self.x12, self.x13, self.x23))

    def __eq__(self, other):
        return (isinstance(other, H3) and self.level == other.level and self.d == other.d
                and (self.x12, self.x13, self.x23) == (other.x12, other.x13, other.x23))

    def __hash__(self):
        return hash((self.level, self.d, self.x12, self.x13, self.x23))

    def __repr__(self):
        return f"H3[{ALGEBRA_NAMES[self.level]}](diag={[str(v) for v in self.d]}, x12={self.x12}, x13={self.x13}, x23={self.x23})"

    def to_json(self):
        return {"algebra": ALGEBRA_NAMES[self.level], "diag": [str(v) for v in self.d],
                "x12": self.x12.to_json(), "x13": self.x13.to_json(), "x23": self.x23.to_json()}


# ---------------------------------------------------------------------------
# cubic form, spectrum, idempotents
# ---------------------------------------------------------------------------


def freudenthal(X: H3):
    return {"det": X.det(), "trace": X.trace(), "sigma": X.sigma(), "char": X.char()}


def cayley_hamilton_residual(X: H3) -> H3:
    X2 = X.square()
    X3 = X.jordan(X2)
    I = H3.identity(X.level)
    return X3 - X2.scale(X.trace()) + X.scale(X.sigma()) - I.scale(X.det())


def jrank(X: H3, tol: float | None = None) -> int:
    """Number of nonzero eigenvalues; read off the char coefficients since the
    cubic is real-rooted."""
    coeffs = [X.det(), X.sigma(), X.trace()]
    for k, c in enumerate(coeffs):
        if (abs(c) > tol) if tol is not None else (c != 0):
            return 3 - k
    return 0


def spectral(X: H3):
    """(Spectrum, jrank) with the eigenvalues isolated exactly."""
    return spectrum_of(X.char()), jrank(X)


def is_idempotent(X: H3) -> bool:
    return X.square() == X


def frame_verify(c1: H3, c2: H3, c3: H3) -> bool:
    cs = (c1, c2, c3)
    if not all(is_idempotent(c) for c in cs):
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            if not cs[i].jordan(cs[j]).is_zero():
                return False
    return c1 + c2 + c3 == H3.identity(c1.level)


def spectral_frame(X: H3):
    """Jordan frame for X when its eigenvalues are rational and distinct.

    c_i = prod_{j != i} (X - l_j)/(l_i - l_j), evaluated with Jordan powers.
    Returns (eigenvalues, frame) or None.
    """
    spec = spectrum_of(X.char())
    lams = spec.exact_values()
    if any(v is None for v in lams) or len(set(lams)) != 3:
        return None
    I = H3.identity(X.level)
    X2 = X.square()
    frame = []
    for i in range(3):
        a, b = [lams[j] for j in range(3) if j != i]
        num = X2 - X.scale(a + b) + I.scale(a * b)
        frame.append(num.scale(Fraction(1) / ((lams[i] - a) * (lams[i] - b))))
    return lams, frame


# ---------------------------------------------------------------------------
# rank-one points
# ---------------------------------------------------------------------------


def _cd_vector(v, level):
    out = []
    for x in v:
        if isinstance(x, CD):
            if x.level != level:
                raise JordanError("vector coordinates must share the algebra level")
            out.append(x)
        else:
            out.append(CD(level, x))
    return out


def rank_one_from_vector(v: Sequence, level: int | None = None) -> H3:
    """P = v v* / sum n(v_i).

    Over the octonions v must have a nonzero real coordinate; otherwise it is
    right-multiplied by the conjugate of its last nonzero coordinate, and the
    result is gated by an idempotency check.
    """
    if level is None:
        level = v[0].level
    v = _cd_vector(v, level)
    if len(v) != 3:
        raise JordanError("need three coordinates")
    if all(x.is_zero() for x in v):
        raise JordanError("zero vector")
    if level == 3 and not any(x.is_real() and not x.is_zero() for x in v):
        last = [x for x in v if not x.is_zero()][-1].conj()
        v = [x * last for x in v]
    N = sum(x.norm() for x in v)
    inv = 1 / N if isinstance(N, float) else Fraction(1) / N
    P = H3(level, [x.norm() * inv for x in v],
           (v[0] * v[1].conj()) * inv, (v[0] * v[2].conj()) * inv, (v[1] * v[2].conj()) * inv)
    if level == 3 and not isinstance(N, float) and not is_idempotent(P):
        raise JordanError("octonionic vector is not normalizable: rescale so one coordinate is real")
    return P


def vector_from_point(P: H3):
    """A vector v with a real coordinate and P = v v* / |v|^2."""
    i = max(range(3), key=lambda k: P.d[k])
    m = P.matrix()
    return [m[i][k].conj() for k in range(3)]


def join(P: H3, Q: H3) -> H3:
    """The line through two points, as a dual rank-one element."""
    L = P.cross(Q)
    if L.is_zero():
        raise JordanError("points coincide")
    return L


def meet(L: H3, M: H3) -> H3:
    """The point on two lines, normalized to trace one."""
    P = L.cross(M)
    if P.is_zero():
        raise JordanError("lines coincide")
    return P.scale(Fraction(1) / P.trace())


def incident(P: H3, L: H3) -> bool:
    return P.inner(L) == 0


# ---------------------------------------------------------------------------
# point sets and matroids
# ---------------------------------------------------------------------------


class PointSet:
    def __init__(self, points: Sequence[H3], vectors=None):
        self.points = list(points)
        self.vectors = vectors
        if not self.points:
            raise JordanError("empty point set")
        self.level = self.points[0].level

    def __len__(self):
        return len(self.points)

    @classmethod
    def from_vectors(cls, level, vectors):
        vecs = [_cd_vector(v, level) for v in vectors]
        return cls([rank_one_from_vector(v, level) for v in vecs], vecs)

    @classmethod
    def from_json(cls, data):
        try:
            level = ALGEBRAS[data["algebra"]]
            return cls.from_vectors(level, data["points"])
        except (KeyError, TypeError, ValueError) as exc:
            raise JordanError(f"malformed point-set JSON: {exc}") from exc

    def to_json(self, note=None):
        vecs = self.vectors or [vector_from_point(P) for P in self.points]
        out = {"algebra": ALGEBRA_NAMES[self.level], "points": [[x.to_json() for x in v] for v in vecs]}
        if note:
            out["provenance"] = note
        return out

    def truncate(self, level):
        """Drop coordinates beyond the given level (e.g. quaternions -> complex)."""
        vecs = self.vectors or [vector_from_point(P) for P in self.points]
        return PointSet.from_vectors(level, [[x.truncate(level) for x in v] for v in vecs])


def check_points(pts: PointSet, tol=None):
    bad = []
    for i, P in enumerate(pts.points, start=1):
        if tol is None:
            ok = is_idempotent(P) and jrank(P) == 1
        else:
            ok = jrank(P, tol) == 1
        if not ok:
            bad.append(i)
    return bad


def matroid_from_points(pts: PointSet, tol: float | None = None) -> RankOracle:
    """r(S) = jrank(sum of the points in S)."""
    bad = check_points(pts, tol)
    if bad:
        raise JordanError(f"not rank-one idempotents: points {bad}")
    P = pts.points
    L = pts.level

    def rk(mask):
        if not mask:
            return 0
        total = None
        j = 0
        m = mask
        while m:
            if m & 1:
                total = P[j] if total is None else total + P[j]
            m >>= 1
            j += 1
        return jrank(total, tol)

    return RankOracle(range(1, len(P) + 1), rk, name=f"points over {ALGEBRA_NAMES[L]}")


def target_matroid(data) -> RankOracle:
    if int(data.get("rank", 3)) != 3:
        raise JordanError("target matroids must have rank 3")
    return RankOracle.paving_rank3(int(data["ground"]), data["nonbases"], name=data.get("name", "target"))


def verify_representation(pts: PointSet, target: RankOracle, tol: float | None = None):
    """Compare ranks on every subset; returns (ok, mismatches)."""
    if len(pts) != target.size:
        raise JordanError(f"{len(pts)} points for a ground set of size {target.size}")
    M = matroid_from_points(pts, tol)
    mismatches = []
    for mask in range(1 << target.size):
        a, b = M.rank_mask(mask), target.rank_mask(mask)
        if a != b:
            mismatches.append({"subset": list(target.subset(mask)), "points_rank": a, "target_rank": b})
    return not mismatches, mismatches


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def random_cd(gen, level, lo=-4, hi=4, denom=8):
    return CD(level, rational_vector(gen, 1 << level, lo, hi, denom)[0])


def random_h3(gen, level, lo=-4, hi=4, denom=8):
    d, _ = rational_vector(gen, 3, lo, hi, denom)
    return H3(level, d, *(random_cd(gen, level, lo, hi, denom) for _ in range(3)))


def random_point(gen, level, lo=-3, hi=3):
    """Rank-one idempotent from an integer vector with real first coordinate."""
    while True:
        v = [CD.real(level, int(gen.integers(1, hi + 1)))]
        v += [CD(level, [int(a) for a in gen.integers(lo, hi, endpoint=True, size=1 << level)]) for _ in range(2)]
        return rank_one_from_vector(v, level)


def cayley_hamilton_suite(level, count=500, seed=0):
    gen = generator(seed, stream=level + 10)
    failures = 0
    for _ in range(count):
        if not cayley_hamilton_residual(random_h3(gen, level)).is_zero():
            failures += 1
    return failures
