"""Exact half-open interval algebra on rational endpoints.

Every interval is (a, b] with a < b, endpoints stored as ``fractions.Fraction``
so that the endpoint bookkeeping of dyadic decompositions is bit-exact: a
family member of length ``len`` is cut, from each end inward, into pieces of
lengths 2, 4, 8, ... anchored two units outside the endpoint, with the final
piece clipped at the midpoint.  All combinatorics here (degree counting,
relative-position completion, mod-3 splitting of doubled pieces) are exact;
no floats enter this module.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, PreconditionError

__all__ = [
    "Interval",
    "EMPTY",
    "Piece",
    "DisjointFamily",
    "DyadicDecomposition",
    "RelativeDecomposition",
    "Mod3Split",
    "normalize_family",
    "dyadic_decompose",
    "well_distributed_degree",
    "complete_relative_decomposition",
    "split_mod3",
    "family_to_json",
    "family_from_json",
    "decomposition_to_json",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open interval (a, b] with rational endpoints, a < b."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if not self.a < self.b:
            raise DomainError(f"need a < b, got ({self.a}, {self.b}]")

    @property
    def is_empty(self) -> bool:
        return False

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    @property
    def center(self) -> Fraction:
        return (self.a + self.b) / 2

    def doubled(self) -> "Interval":
        """Interval of twice the length and the same centre."""
        return Interval(self.center - self.length, self.center + self.length)

    def contains(self, x) -> bool:
        x = _frac(x)
        return self.a < x <= self.b

    def intersects(self, other: "Interval") -> bool:
        """Half-open semantics: (x, y] and (y, z] do not intersect."""
        return max(self.a, other.a) < min(self.b, other.b)

    def contains_interval(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b

    def translate(self, t) -> "Interval":
        t = _frac(t)
        return Interval(self.a + t, self.b + t)

    def scale(self, s) -> "Interval":
        s = _frac(s)
        if s <= 0:
            raise DomainError("scale factor must be positive")
        return Interval(self.a * s, self.b * s)

    def __repr__(self):
        return f"({self.a}, {self.b}]"


class _EmptyInterval:
    """Distinguished empty piece; decompositions record it explicitly."""

    __slots__ = ()
    is_empty = True
    length = Fraction(0)

    def __repr__(self):
        return "Empty"


EMPTY = _EmptyInterval()

Piece = Union[Interval, _EmptyInterval]


def _maybe_interval(a: Fraction, b: Fraction) -> Piece:
    return EMPTY if a >= b else Interval(a, b)


@dataclass(frozen=True)
class DisjointFamily:
    """Pairwise disjoint intervals, sorted by left endpoint."""

    intervals: tuple

    def __init__(self, intervals: Iterable[Interval]):
        ivs = tuple(sorted(intervals, key=lambda I: (I.a, I.b)))
        for prev, nxt in zip(ivs, ivs[1:]):
            if prev.intersects(nxt):
                raise DomainError(f"intervals {prev} and {nxt} overlap")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, j) -> Interval:
        return self.intervals[j]

    @property
    def min_length(self) -> Fraction:
        if not self.intervals:
            raise DomainError("empty family has no minimum length")
        return min(I.length for I in self.intervals)

    def scaled(self, s) -> "DisjointFamily":
        return DisjointFamily(I.scale(s) for I in self.intervals)


def normalize_family(fam: DisjointFamily):
    """Dilate a family so every member has length >= 4.

    Returns ``(scale, scaled_family)`` with ``scale = 1`` when no dilation is
    needed and ``scale = 4 / min_length`` otherwise; recording the factor lets
    callers map frequencies back to the original family.  Idempotent after the
    first application.
    """
    if len(fam) == 0:
        raise DomainError("cannot normalize an empty family")
    m = fam.min_length
    if m >= 4:
        return Fraction(1), fam
    scale = Fraction(4) / m
    return scale, fam.scaled(scale)


@dataclass(frozen=True)
class DyadicDecomposition:
    """Endpoint-anchored dyadic split of each family member.

    For member j with I_j = (a_j, b_j] and n_j = max{n : 2^(n+1) <= |I_j| + 4},
    the left half (a_j, mid] is tiled by ``a_pieces[j]`` with

        piece k = (a_j - 2 + 2^k, a_j - 2 + 2^(k+1)]   for k < n_j,

    the last piece clipped to end at the midpoint (and recorded as EMPTY when
    it degenerates); ``b_pieces[j]`` mirrors this from the right endpoint.
    ``tilde_a[j]`` / ``tilde_b[j]`` are the full dyadic intervals containing
    the respective clipped last pieces.
    """

    family: DisjointFamily
    n: tuple
    a_pieces: tuple
    b_pieces: tuple
    tilde_a: tuple
    tilde_b: tuple

    def pieces(self, side: str, j: int) -> tuple:
        if side == "a":
            return self.a_pieces[j]
        if side == "b":
            return self.b_pieces[j]
        raise DomainError(f"side must be 'a' or 'b', got {side!r}")

    def side_family(self, side: str) -> DisjointFamily:
        """All nonempty pieces of one side as a disjoint family."""
        out = []
        for j in range(len(self.family)):
            out.extend(p for p in self.pieces(side, j) if not p.is_empty)
        return DisjointFamily(out)

    def tilde(self, side: str, j: int) -> Interval:
        return self.tilde_a[j] if side == "a" else self.tilde_b[j]


def _decompose_one(I: Interval):
    a, b = I.a, I.b
    length = b - a
    n = 1
    while 2 ** (n + 2) <= length + 4:
        n += 1
    mid = (a + b) / 2
    a_cuts = [a - 2 + 2**k for k in range(1, n + 1)] + [mid]
    b_cuts = [b + 2 - 2**k for k in range(1, n + 1)] + [mid]
    a_pieces = tuple(_maybe_interval(a_cuts[k], a_cuts[k + 1]) for k in range(n))
    b_pieces = tuple(_maybe_interval(b_cuts[k + 1], b_cuts[k]) for k in range(n))
    tilde_a = Interval(a - 2 + 2**n, a - 2 + 2 ** (n + 1))
    tilde_b = Interval(b + 2 - 2 ** (n + 1), b + 2 - 2**n)
    return n, a_pieces, b_pieces, tilde_a, tilde_b


def dyadic_decompose(fam: DisjointFamily) -> DyadicDecomposition:
    """Decompose every member of ``fam``; requires all lengths >= 4."""
    for I in fam:
        if I.length < 4:
            raise PreconditionError(f"{I} has length {I.length} < 4; normalize first")
    ns, aps, bps, tas, tbs = [], [], [], [], []
    for I in fam:
        n, ap, bp, ta, tb = _decompose_one(I)
        ns.append(n)
        aps.append(ap)
        bps.append(bp)
        tas.append(ta)
        tbs.append(tb)
    return DyadicDecomposition(fam, tuple(ns), tuple(aps), tuple(bps), tuple(tas), tuple(tbs))


def _max_overlap_count(intervals: Sequence[Interval]) -> int:
    """Max over list members of how many other members meet it.

    Exact sweep over the sorted order; callers pass already-doubled intervals.
    """
    n = len(intervals)
    if n <= 1:
        return 0
    ivs = sorted(intervals, key=lambda I: (I.a, I.b))
    counts = [0] * n
    for i in range(n):
        k = i + 1
        while k < n and ivs[k].a < ivs[i].b:
            counts[i] += 1
            counts[k] += 1
            k += 1
    return max(counts)


def well_distributed_degree(fam: DisjointFamily) -> int:
    """d = max_j #{j' != j : 2I_j meets 2I_j'}, computed exactly."""
    return _max_overlap_count([I.doubled() for I in fam])


@dataclass(frozen=True)
class RelativeDecomposition:
    """Completion of per-member subinterval lists to full tilings.

    ``relative_pieces`` is the global left-to-right list of pieces in relative
    coordinates (translated so each member starts at 0); ``is_given`` flags
    which of them came from the input versus the constructed complement.
    Member j is tiled by the first ``counts[j]`` pieces translated by a_j.
    """

    family: DisjointFamily
    relative_pieces: tuple
    is_given: tuple
    counts: tuple

    @property
    def given_positions(self) -> frozenset:
        """K: 1-based positions of input pieces in the global order."""
        return frozenset(s + 1 for s, g in enumerate(self.is_given) if g)

    @property
    def complement_positions(self) -> frozenset:
        """L: 1-based positions of constructed complement pieces."""
        return frozenset(s + 1 for s, g in enumerate(self.is_given) if not g)

    def merged(self, j: int) -> tuple:
        """Pieces tiling member j, left to right, in absolute coordinates."""
        a = self.family[j].a
        return tuple(p.translate(a) for p in self.relative_pieces[: self.counts[j]])

    def given_positions_for(self, j: int) -> frozenset:
        return frozenset(s for s in self.given_positions if s <= self.counts[j])

    def complement_positions_for(self, j: int) -> frozenset:
        return frozenset(s for s in self.complement_positions if s <= self.counts[j])


def complete_relative_decomposition(
    fam: DisjointFamily, given: Sequence[Sequence[Interval]]
) -> RelativeDecomposition:
    """Extend per-member subinterval lists to exact tilings of each member.

    ``given[j]`` lists disjoint subintervals of ``fam[j]`` (EMPTY entries are
    ignored) whose relative positions agree across members where present, the
    shorter lists being prefixes of the longer ones.  The complement of the
    given pieces is tiled by new pieces cut so that no member length is an
    interior point, which keeps the relative layout member-independent.
    """
    if len(given) != len(fam):
        raise PreconditionError("need one given-piece list per family member")

    rel_lists = []
    for j, I in enumerate(fam):
        pieces = [p for p in given[j] if not p.is_empty]
        pieces.sort(key=lambda P: (P.a, P.b))
        for p in pieces:
            if not I.contains_interval(p):
                raise PreconditionError(f"given piece {p} is not inside member {I}")
        for prev, nxt in zip(pieces, pieces[1:]):
            if prev.intersects(nxt):
                raise PreconditionError(f"given pieces {prev}, {nxt} overlap in member {I}")
        rel_lists.append([p.translate(-I.a) for p in pieces])

    longest = max(rel_lists, key=len) if rel_lists else []
    for j, rl in enumerate(rel_lists):
        if rl != longest[: len(rl)]:
            raise PreconditionError(
                f"relative positions of member {j} disagree with the longest list"
            )

    horizon = max(I.length for I in fam)
    gaps = []
    cursor = Fraction(0)
    for p in longest:
        if p.a > cursor:
            gaps.append(Interval(cursor, p.a))
        cursor = max(cursor, p.b)
    if cursor < horizon:
        gaps.append(Interval(cursor, horizon))

    cuts = sorted({I.length for I in fam})
    complement = []
    for g in gaps:
        lo = g.a
        for c in cuts:
            if lo < c < g.b:
                complement.append(Interval(lo, c))
                lo = c
        complement.append(Interval(lo, g.b))

    pieces = [(p, True) for p in longest] + [(p, False) for p in complement]
    pieces.sort(key=lambda t: (t[0].a, t[0].b))
    rel = tuple(p for p, _ in pieces)
    flags = tuple(g for _, g in pieces)

    counts = []
    for j, I in enumerate(fam):
        c = sum(1 for p in rel if p.b <= I.length)
        counts.append(c)
        tiles = rel[:c]
        cursor = Fraction(0)
        ok = all(p.b <= I.length for p in tiles)
        for p in tiles:
            ok = ok and p.a == cursor
            cursor = p.b
        if not (ok and cursor == I.length):
            raise PreconditionError(
                f"given pieces of member {j} are inconsistent with the global layout; "
                "cannot tile the member exactly"
            )
        n_given = len(rel_lists[j])
        if sum(1 for s in range(c) if flags[s]) != n_given:
            raise PreconditionError(
                f"member {j} omits a given piece that fits inside it"
            )

    return RelativeDecomposition(fam, rel, flags, tuple(counts))


@dataclass(frozen=True)
class Mod3Split:
    """Doubled decomposition pieces grouped by piece index mod 3.

    ``classes[l]`` holds the doubled pieces with k = l (mod 3), sorted;
    ``labels[l]`` the matching (j, k) pairs; ``disjoint[l]`` reports whether
    the class is exactly pairwise disjoint.  Disjointness within one member is
    automatic (piece k+3 starts beyond the double of piece k) but across
    members it can genuinely fail, so it is verified, never assumed.
    """

    classes: tuple
    labels: tuple
    disjoint: tuple

    def family(self, l: int) -> DisjointFamily:
        if not self.disjoint[l]:
            raise DomainError(f"class {l} is not pairwise disjoint")
        return DisjointFamily(self.classes[l])


def split_mod3(dec: DyadicDecomposition, side: str) -> Mod3Split:
    """Split the doubled pieces of one side into the three k mod 3 classes."""
    classes = [[], [], []]
    labels = [[], [], []]
    for j in range(len(dec.family)):
        for k0, p in enumerate(dec.pieces(side, j)):
            if p.is_empty:
                continue
            k = k0 + 1
            classes[k % 3].append(p.doubled())
            labels[k % 3].append((j, k))
    order = [sorted(range(len(cl)), key=lambda i: (cl[i].a, cl[i].b)) for cl in classes]
    classes = [tuple(cl[i] for i in idx) for cl, idx in zip(classes, order)]
    labels = [tuple(lb[i] for i in idx) for lb, idx in zip(labels, order)]
    flags = []
    for cl in classes:
        ok = all(not u.intersects(v) for u, v in zip(cl, cl[1:]))
        # sorted order: it suffices to check neighbours only when no interval
        # spans past its successor; fall back to the full check otherwise
        if ok and any(u.b > v.b for u, v in zip(cl, cl[1:])):
            ok = all(
                not cl[i].intersects(cl[k])
                for i in range(len(cl))
                for k in range(i + 1, len(cl))
            )
        flags.append(ok)
    return Mod3Split(tuple(classes), tuple(labels), tuple(flags))


# -- serialization ------------------------------------------------------------
#
# Families travel as lists of [num_a, den_a, num_b, den_b]; decompositions as
# explicit piece lists with None marking EMPTY.


def _quad(I: Interval):
    return [I.a.numerator, I.a.denominator, I.b.numerator, I.b.denominator]


def _piece_json(p: Piece):
    return None if p.is_empty else _quad(p)


def family_to_json(fam: DisjointFamily) -> list:
    return [_quad(I) for I in fam]


def family_from_json(doc: Sequence) -> DisjointFamily:
    out = []
    for q in doc:
        na, da, nb, db = q
        out.append(Interval(Fraction(na, da), Fraction(nb, db)))
    return DisjointFamily(out)


def decomposition_to_json(dec: DyadicDecomposition) -> dict:
    return {
        "family": family_to_json(dec.family),
        "n": list(dec.n),
        "a_pieces": [[_piece_json(p) for p in ps] for ps in dec.a_pieces],
        "b_pieces": [[_piece_json(p) for p in ps] for ps in dec.b_pieces],
        "tilde_a": [_quad(t) for t in dec.tilde_a],
        "tilde_b": [_quad(t) for t in dec.tilde_b],
    }
