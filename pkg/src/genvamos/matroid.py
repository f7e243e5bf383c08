"""Uniform hypergraphs, the sparse paving matroids V_H built from them, rank
oracles, axiom checks, linear rank inequalities, and minors.

Ground-set convention for V_H on a hypergraph with n vertices: elements are
1..2n and the partner of i is i' = i + n.  Internally subsets are bitmasks
with element e stored at bit e - 1 of the oracle's position list.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

MAX_EXHAUSTIVE = 16


class MatroidError(ValueError):
    pass


def popcount(x: int) -> int:
    return x.bit_count()


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# hypergraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    n: int
    d: int
    edges: tuple

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise MatroidError(f"need 1 <= d <= n, got d={self.d}, n={self.n}")
        clean = set()
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.d or len(set(e)) != self.d:
                raise MatroidError(f"edge {e} does not have {self.d} distinct vertices")
            if e[0] < 1 or e[-1] > self.n:
                raise MatroidError(f"edge {e} leaves the vertex set [1, {self.n}]")
            clean.add(e)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    def to_json(self):
        return {"n": self.n, "d": self.d, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(int(data["n"]), int(data["d"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise MatroidError(f"malformed hypergraph JSON: {exc}") from exc

    def non_edges(self):
        es = set(self.edges)
        return [S for S in itertools.combinations(range(1, self.n + 1), self.d) if S not in es]

    def with_isolated_vertex(self):
        return Hypergraph(self.n + 1, self.d, self.edges)


def diamond() -> Hypergraph:
    """K_4 minus the edge {1,4}; V_diamond is the Vamos matroid."""
    return Hypergraph(4, 2, ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4)))


def empty_hypergraph(n: int, d: int = 2) -> Hypergraph:
    return Hypergraph(n, d, ())


def complete_hypergraph(n: int, d: int) -> Hypergraph:
    return Hypergraph(n, d, tuple(itertools.combinations(range(1, n + 1), d)))


def burton_cycle(n: int) -> Hypergraph:
    """n-cycle with the chords {1, i} added."""
    edges = {tuple(sorted((i, i % n + 1))) for i in range(1, n + 1)}
    edges |= {(1, i) for i in range(2, n + 1)}
    return Hypergraph(n, 2, tuple(edges))


def dfz_hypergraph() -> Hypergraph:
    return Hypergraph(6, 3, ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
                             (2, 3, 4), (2, 3, 5), (3, 5, 6), (4, 5, 6)))


def hnk_hypergraph(n: int, k: int) -> Hypergraph:
    """All k-subsets of [n+2] except those containing both n+1 and n+2."""
    edges = tuple(e for e in itertools.combinations(range(1, n + 3), k)
                  if not (n + 1 in e and n + 2 in e))
    return Hypergraph(n + 2, k, edges)


def random_hypergraph(rng: random.Random, n: int, d: int, p: float = 0.5) -> Hypergraph:
    edges = tuple(e for e in itertools.combinations(range(1, n + 1), d) if rng.random() < p)
    return Hypergraph(n, d, edges)


# ---------------------------------------------------------------------------
# rank oracles
# ---------------------------------------------------------------------------


class RankOracle:
    """A set function on a labelled ground set, evaluated on bitmasks.

    ``labels[j]`` is the external name of the element stored at bit j.
    """

    def __init__(self, labels: Sequence, rank_fn: Callable[[int], int], name: str = ""):
        self.labels = tuple(labels)
        self.size = len(self.labels)
        self._rank_fn = rank_fn
        self._index = {lab: j for j, lab in enumerate(self.labels)}
        self._cache: dict = {}
        self.name = name

    def rank_mask(self, mask: int) -> int:
        r = self._cache.get(mask)
        if r is None:
            r = self._rank_fn(mask)
            self._cache[mask] = r
        return r

    def mask(self, S: Iterable) -> int:
        m = 0
        for s in S:
            j = self._index.get(s)
            if j is None:
                raise MatroidError(f"element {s!r} is not in the ground set")
            m |= 1 << j
        return m

    def subset(self, mask: int) -> tuple:
        return tuple(self.labels[j] for j in bits(mask))

    def rank(self, S: Iterable) -> int:
        return self.rank_mask(self.mask(S))

    @property
    def full_mask(self):
        return (1 << self.size) - 1

    def full_rank(self):
        return self.rank_mask(self.full_mask)

    def __repr__(self):
        return f"RankOracle({self.name or 'anon'}, size={self.size}, rank={self.full_rank()})"

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_table(cls, labels, table: dict, name=""):
        return cls(labels, table.__getitem__, name)

    @classmethod
    def from_bases(cls, labels, basis_masks: Iterable[int], name=""):
        """Brute-force matroid rank: size of the largest subset of a basis.

        Built bottom-up over all 2^m subsets from the downward closure of the
        basis family; independent of any closed form.
        """
        m = len(labels)
        if m > MAX_EXHAUSTIVE:
            raise MatroidError(f"ground set of size {m} exceeds exhaustive cap {MAX_EXHAUSTIVE}")
        indep = bytearray(1 << m)
        for b in basis_masks:
            indep[b] = 1
        for mask in range((1 << m) - 1, -1, -1):
            if indep[mask]:
                for j in bits(mask):
                    indep[mask ^ (1 << j)] = 1
        table = [0] * (1 << m)
        for mask in range(1, 1 << m):
            if indep[mask]:
                table[mask] = popcount(mask)
            else:
                table[mask] = max(table[mask ^ (1 << j)] for j in bits(mask))
        return cls(labels, table.__getitem__, name)

    @classmethod
    def paving_rank3(cls, ground: int, nonbases: Iterable[Sequence[int]], name=""):
        """Rank-3 matroid on 1..ground whose only dependent triples are ``nonbases``."""
        trip = set()
        for t in nonbases:
            t = tuple(sorted(t))
            if len(t) != 3:
                raise MatroidError(f"non-basis {t} is not a triple")
            trip.add(sum(1 << (x - 1) for x in t))

        def rk(mask):
            k = popcount(mask)
            if k == 3 and mask in trip:
                return 2
            return min(k, 3)

        return cls(range(1, ground + 1), rk, name)


class VHMatroid(RankOracle):
    """The sparse paving matroid V_H of rank 2d on {1, 1', ..., n, n'}."""

    def __init__(self, H: Hypergraph):
        self.hypergraph = H
        self.n = H.n
        self.d = H.d
        self.rank_value = 2 * H.d
        n = H.n
        self.circuit_hyperplanes = tuple(
            sum((1 << (i - 1)) | (1 << (i + n - 1)) for i in e) for e in H.edges
        )
        self._ch_set = frozenset(self.circuit_hyperplanes)
        if 2 * self.d == 2 * n and self._ch_set:
            raise MatroidError("every 2d-subset is excluded: V_H has no bases")
        super().__init__(range(1, 2 * n + 1), self._closed_rank, name=f"V_H(n={n}, d={H.d})")

    def _closed_rank(self, mask):
        k = popcount(mask)
        r = self.rank_value
        if k < r:
            return k
        if k == r:
            return r - 1 if mask in self._ch_set else r
        return r

    def pair_mask(self, i: int) -> int:
        return (1 << (i - 1)) | (1 << (i + self.n - 1))

    def partner(self, e: int) -> int:
        return e + self.n if e <= self.n else e - self.n


def build_vh(H: Hypergraph) -> VHMatroid:
    if not isinstance(H, Hypergraph):
        raise MatroidError("build_vh needs a Hypergraph")
    return VHMatroid(H)


def vh_basis_masks(M: VHMatroid):
    """Bases straight from the definition: 2d-subsets minus the sets e u e'."""
    size = 2 * M.n
    excluded = M._ch_set
    out = []
    for combo in itertools.combinations(range(size), M.rank_value):
        mask = sum(1 << j for j in combo)
        if mask not in excluded:
            out.append(mask)
    return out


def brute_force_oracle(M: VHMatroid) -> RankOracle:
    return RankOracle.from_bases(M.labels, vh_basis_masks(M), name="brute-force " + M.name)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _sorted_family(masks, oracle: RankOracle):
    fam = [oracle.subset(m) for m in masks]
    return sorted(fam, key=lambda t: (len(t), t))


def enumerate_family(M: RankOracle, what: str, closed_form: bool = True):
    """Bases, circuits, or hyperplanes, as sorted tuples of labels."""
    if M.size > MAX_EXHAUSTIVE:
        raise MatroidError(f"ground set of size {M.size} exceeds exhaustive cap {MAX_EXHAUSTIVE}")
    if what not in ("bases", "circuits", "hyperplanes"):
        raise MatroidError(f"unknown family {what!r}")
    if closed_form and isinstance(M, VHMatroid):
        return _sorted_family(_vh_family(M, what), M)
    return _sorted_family(_generic_family(M, what), M)


def _vh_family(M: VHMatroid, what):
    m, r = M.size, M.rank_value
    chs = M.circuit_hyperplanes
    if what == "bases":
        return vh_basis_masks(M)
    if what == "hyperplanes":
        out = list(chs)
        for combo in itertools.combinations(range(m), r - 1):
            mask = sum(1 << j for j in combo)
            if not any(mask & c == mask for c in chs):
                out.append(mask)
        return out
    out = list(chs)
    if r + 1 <= m:
        for combo in itertools.combinations(range(m), r + 1):
            mask = sum(1 << j for j in combo)
            if not any(mask & c == c for c in chs):
                out.append(mask)
    return out


def _generic_family(M: RankOracle, what):
    full = M.full_mask
    r = M.full_rank()
    rk = M.rank_mask
    out = []
    for mask in range(full + 1):
        k = popcount(mask)
        if what == "bases":
            if k == r and rk(mask) == r:
                out.append(mask)
        elif what == "circuits":
            if rk(mask) == k - 1 and all(rk(mask ^ (1 << j)) == k - 1 for j in bits(mask)):
                out.append(mask)
        else:
            if rk(mask) == r - 1 and all(rk(mask | (1 << j)) == r for j in bits(full & ~mask)):
                out.append(mask)
    return out


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


@dataclass
class AxiomResult:
    ok: bool
    mode: str
    witness: object = None
    trivial: bool = False

    def to_json(self):
        w = self.witness
        if isinstance(w, tuple):
            w = [list(x) if isinstance(x, tuple) else x for x in w]
        return {"ok": self.ok, "mode": self.mode, "witness": w, "trivial": self.trivial}


def verify_axioms(family: Iterable[Sequence], ground: Sequence, mode: str, d: int | None = None) -> AxiomResult:
    """Check the basis-exchange axiom or the d-partition property.

    ``mode`` is "basis_exchange" or "d_partition" (then ``d`` is required).
    """
    from .stability import basis_exchange_witness, mask_to_tuple

    ground = list(ground)
    index = {g: j for j, g in enumerate(ground)}
    fam = [tuple(sorted(S)) for S in family]
    if not fam:
        raise MatroidError("empty family")
    masks = []
    for S in fam:
        try:
            masks.append(sum(1 << index[s] for s in S))
        except KeyError as exc:
            raise MatroidError(f"element {exc.args[0]} outside the ground set") from exc
    masks = sorted(set(masks), key=lambda b: mask_to_tuple(b))
    lab = lambda mask: tuple(ground[j] for j in bits(mask))
    if mode == "basis_exchange":
        sizes = {popcount(b) for b in masks}
        if len(sizes) != 1:
            return AxiomResult(False, mode, ("unequal sizes",))
        w = basis_exchange_witness(masks, sizes.pop())
        if w is None:
            return AxiomResult(True, mode)
        return AxiomResult(False, mode, (lab(w[0]), lab(w[1]), ground[w[2] - 1]))
    if mode == "d_partition":
        if d is None:
            raise MatroidError("d_partition needs d")
        trivial = len(masks) == 1 and masks[0] == (1 << len(ground)) - 1
        for b in masks:
            if popcount(b) < d:
                return AxiomResult(False, mode, ("member too small", lab(b)), trivial)
        for combo in itertools.combinations(range(len(ground)), d):
            s = sum(1 << j for j in combo)
            hits = sum(1 for b in masks if b & s == s)
            if hits != 1:
                return AxiomResult(False, mode, ("d-subset covered %d times" % hits, lab(s)), trivial)
        return AxiomResult(True, mode, None, trivial)
    raise MatroidError(f"unknown mode {mode!r}")


def verify_polymatroid(M: RankOracle):
    """Exhaustive check of normalization, monotonicity and semimodularity.

    Uses the local forms (r(S) <= r(S+x), and
    r(S+x) + r(S+y) >= r(S) + r(S+x+y)), which are equivalent to the global
    axioms.  Returns None or a witness tuple.
    """
    if M.size > MAX_EXHAUSTIVE:
        raise MatroidError("ground set too large for an exhaustive check")
    rk = M.rank_mask
    if rk(0) != 0:
        return ("r(empty) != 0",)
    full = M.full_mask
    for S in range(full + 1):
        rs = rk(S)
        outside = [j for j in range(M.size) if not S >> j & 1]
        for j in outside:
            if rk(S | 1 << j) < rs:
                return ("not monotone", M.subset(S), M.labels[j])
        for a, b in itertools.combinations(outside, 2):
            if rk(S | 1 << a) + rk(S | 1 << b) < rs + rk(S | 1 << a | 1 << b):
                return ("not semimodular", M.subset(S), M.labels[a], M.labels[b])
    return None


def verify_polymatroid_pairs(M: RankOracle):
    """The global semimodular inequality over all pairs (small grounds only)."""
    rk = M.rank_mask
    full = M.full_mask
    for S in range(full + 1):
        for T in range(full + 1):
            if rk(S) + rk(T) < rk(S & T) + rk(S | T):
                return (M.subset(S), M.subset(T))
    return None


# ---------------------------------------------------------------------------
# linear rank inequalities
# ---------------------------------------------------------------------------


def _u(*sets):
    out = 0
    for s in sets:
        out |= s
    return out


def ingleton_sides(rk, A, B, C, D):
    lhs = rk(A | B) + rk(_u(A, C, D)) + rk(C) + rk(D) + rk(_u(B, C, D))
    rhs = rk(A | C) + rk(A | D) + rk(B | C) + rk(B | D) + rk(C | D)
    return lhs, rhs


def dfz_sides(rk, A, B, C, D, E, F):
    lhs = (rk(A | D) + rk(B | C) + rk(C | E) + rk(E | F) + rk(_u(B, D, F))
           + rk(_u(A, B, C, D)) + rk(_u(A, B, C, E)) + rk(_u(A, C, E, F)) + rk(_u(A, D, E, F)))
    rhs = (rk(_u(A, B, C)) + rk(_u(A, B, D)) + rk(_u(A, C, E)) + rk(_u(A, D, F)) + rk(_u(A, E, F))
           + rk(_u(B, C, D)) + rk(_u(B, C, E)) + rk(_u(C, E, F)) + rk(_u(D, E, F)))
    return lhs, rhs


INEQUALITY_ARITY = {"ingleton": 4, "dfz": 6}


@dataclass
class RankInequality:
    which: str
    lhs: int
    rhs: int

    @property
    def violated(self):
        return self.lhs > self.rhs

    def to_json(self):
        return {"which": self.which, "lhs": self.lhs, "rhs": self.rhs, "violated": self.violated}


def linear_rank_ineq(which: str, M: RankOracle, sets: Sequence[Iterable]) -> RankInequality:
    if which not in INEQUALITY_ARITY:
        raise MatroidError(f"unknown inequality {which!r}")
    if len(sets) != INEQUALITY_ARITY[which]:
        raise MatroidError(f"{which} needs {INEQUALITY_ARITY[which]} sets, got {len(sets)}")
    masks = [M.mask(S) for S in sets]
    fn = ingleton_sides if which == "ingleton" else dfz_sides
    lhs, rhs = fn(M.rank_mask, *masks)
    return RankInequality(which, lhs, rhs)


def violation_search(M: VHMatroid, which: str, full: bool = False, limit: int = 2_000_000):
    """All violating tuples whose sets are paired doubletons {i, i'}.

    With ``full`` every set ranges over nonempty unions of doubletons.
    """
    k = INEQUALITY_ARITY[which]
    fn = ingleton_sides if which == "ingleton" else dfz_sides
    n = M.n
    if full:
        choices = list(range(1, 1 << n))
        count = len(choices) ** k
        if count > limit:
            raise MatroidError(f"full search would visit {count} tuples (limit {limit})")
        tuples = itertools.product(choices, repeat=k)
        to_mask = lambda vs: sum(M.pair_mask(i + 1) for i in bits(vs))
        to_sets = lambda vs: [i + 1 for i in bits(vs)]
    else:
        tuples = itertools.permutations(range(1, n + 1), k)
        to_mask = M.pair_mask
        to_sets = lambda i: [i]
    out = []
    for tup in tuples:
        lhs, rhs = fn(M.rank_mask, *(to_mask(t) for t in tup))
        if lhs > rhs:
            out.append({"vertices": [to_sets(t) for t in tup], "lhs": lhs, "rhs": rhs})
    return out


def doubleton_sets(M: VHMatroid, vertex_groups: Sequence[Sequence[int]]):
    """Label sets for unions of doubletons {i, i'}."""
    return [sorted(x for i in grp for x in (i, i + M.n)) for grp in vertex_groups]


# ---------------------------------------------------------------------------
# minors and isomorphism
# ---------------------------------------------------------------------------


def minor(M: RankOracle, delete: Iterable = (), contract: Iterable = ()) -> RankOracle:
    """M / contract \\ delete with rank r'(S) = r(S u C) - r(C)."""
    dmask, cmask = M.mask(delete), M.mask(contract)
    if dmask & cmask:
        raise MatroidError("delete and contract sets overlap")
    keep = [j for j in range(M.size) if not (dmask | cmask) >> j & 1]
    rc = M.rank_mask(cmask)
    base_rank = M.rank_mask

    def rk(mask):
        big = cmask
        for idx in bits(mask):
            big |= 1 << keep[idx]
        return base_rank(big) - rc

    return RankOracle([M.labels[j] for j in keep], rk, name=f"minor of {M.name}")


def _basis_set(M: RankOracle):
    r = M.full_rank()
    return r, {sum(1 << j for j in c) for c in itertools.combinations(range(M.size), r)
               if M.rank_mask(sum(1 << j for j in c)) == r}


def _invariants(M: RankOracle, bases):
    hyper = _generic_family(M, "hyperplanes")
    circuits = _generic_family(M, "circuits")
    per_elem = [sum(1 for c in circuits if c >> j & 1) for j in range(M.size)]
    return (M.size, len(bases), tuple(sorted(popcount(h) for h in hyper)), tuple(sorted(per_elem))), per_elem


def isomorphism(M: RankOracle, N: RankOracle):
    """A label map M -> N preserving bases, or None."""
    if M.size != N.size:
        return None
    rM, BM = _basis_set(M)
    rN, BN = _basis_set(N)
    if rM != rN or len(BM) != len(BN):
        return None
    invM, cM = _invariants(M, BM)
    invN, cN = _invariants(N, BN)
    if invM != invN:
        return None
    m = M.size
    order = sorted(range(m), key=lambda j: -cM[j])
    image = [-1] * m
    used = [False] * m
    r = rM

    def consistent(pos):
        j = order[pos]
        assigned = order[: pos + 1]
        if len(assigned) < r:
            return True
        others = [a for a in assigned if a != j]
        for combo in itertools.combinations(others, r - 1):
            src = (1 << j) | sum(1 << a for a in combo)
            dst = (1 << image[j]) | sum(1 << image[a] for a in combo)
            if (src in BM) != (dst in BN):
                return False
        return True

    def search(pos):
        if pos == m:
            return True
        j = order[pos]
        for t in range(m):
            if used[t] or cN[t] != cM[j]:
                continue
            image[j] = t
            used[t] = True
            if consistent(pos) and search(pos + 1):
                return True
            used[t] = False
        image[j] = -1
        return False

    if not search(0):
        return None
    return {M.labels[j]: N.labels[image[j]] for j in range(m)}


def is_isomorphic(M: RankOracle, N: RankOracle) -> bool:
    return isomorphism(M, N) is not None


def has_minor(M: RankOracle, target: RankOracle, witness: bool = False):
    """Search every M / I \\ D with I independent of size r(M) - r(target)."""
    if M.size > MAX_EXHAUSTIVE:
        raise MatroidError("ground set too large for an exhaustive minor search")
    k = M.full_rank() - target.full_rank()
    drop = M.size - target.size
    if k < 0 or drop < k:
        return (False, None) if witness else False
    rT, BT = _basis_set(target)
    n_bases = len(BT)
    elems = range(M.size)
    for I in itertools.combinations(elems, k):
        imask = sum(1 << j for j in I)
        if M.rank_mask(imask) != k:
            continue
        rest = [j for j in elems if j not in I]
        for D in itertools.combinations(rest, drop - k):
            keep = [j for j in rest if j not in D]
            # quick reject on the number of bases
            full = M.full_rank()
            count = 0
            for c in itertools.combinations(keep, rT):
                if M.rank_mask(imask | sum(1 << j for j in c)) == full:
                    count += 1
            if count != n_bases:
                continue
            N = minor(M, delete=[M.labels[j] for j in D], contract=[M.labels[j] for j in I])
            if is_isomorphic(N, target):
                found = {"contract": [M.labels[j] for j in I], "delete": [M.labels[j] for j in D]}
                return (True, found) if witness else True
    return (False, None) if witness else False


def diagonal_polymatroid(M: VHMatroid) -> RankOracle:
    """r0(S) = rank of S u S' in V_H, on the vertex set [n]."""
    n = M.n

    def rk(mask):
        return M.rank_mask(mask | (mask << n))

    return RankOracle(range(1, n + 1), rk, name="diagonal " + M.name)


def uniform(r: int, m: int) -> RankOracle:
    return RankOracle(range(1, m + 1), lambda mask: min(popcount(mask), r), name=f"U_{r},{m}")
