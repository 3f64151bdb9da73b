"""Word-problem oracles and the small-cancellation engine.

A marked group is represented operationally by an oracle deciding which
words in the marked generators are trivial.  This module provides exact
oracles for reference groups (free, free-abelian, trivial, weighted
integer quotients), finite presentations with their symmetrized relator
sets, a metric small-cancellation checker, Dehn reduction with
deterministic tie-breaking, and a brute-force normal-closure
semidecision used to cross-check the Dehn machinery.

Internally relator rotations are handled as strings with one character
per letter, chosen so that code-unit order equals the letter order
x1 < X1 < x2 < X2 < ...; lexicographic string comparison then matches
the word order used everywhere else.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .words import (
    Word,
    cyclic_reduce,
    empty_word,
    enumerate_words,
    format_word,
    free_reduce,
    invert,
    parse_word,
    reduce_letters,
)


class Answer(enum.Enum):
    """Verdict of a word-problem query."""

    IDENTITY = "identity"
    NONIDENTITY = "nonidentity"
    UNKNOWN = "unknown"


class OracleUnknownError(RuntimeError):
    """An exact answer was required but the oracle was inconclusive."""

    def __init__(self, query: Word):
        super().__init__(
            f"oracle gave no exact answer on {format_word(query)!r}"
        )
        self.query = query


class GroupOracle:
    """Base class for word-problem oracles.

    Subclasses set ``rank`` and ``label`` and implement :meth:`decide`.
    The contract, property-tested for every built-in oracle: the empty
    word is IDENTITY, and the verdict is invariant under free reduction,
    inversion, and conjugation.  ``exact`` marks oracles whose decide
    never returns UNKNOWN.

    Subclasses may additionally provide ``normal_key(w)``, a hashable
    value equal for two words iff they represent the same group
    element.  The ball builder uses it as a fast path and falls back to
    pairwise oracle queries when it is absent.
    """

    rank: int
    label: str
    exact: bool = True

    def decide(self, w: Word) -> Answer:
        raise NotImplementedError

    def is_identity(self, w: Word) -> bool:
        a = self.decide(w)
        if a is Answer.UNKNOWN:
            raise OracleUnknownError(w)
        return a is Answer.IDENTITY

    def _check_rank(self, w: Word) -> None:
        if w.rank != self.rank:
            raise ValueError(f"word rank {w.rank} != oracle rank {self.rank}")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


def exponent_vector(w: Word) -> tuple[int, ...]:
    """Per-generator exponent sums of a word."""
    vec = [0] * w.rank
    for lt in w.letters:
        if lt > 0:
            vec[lt - 1] += 1
        else:
            vec[-lt - 1] -= 1
    return tuple(vec)


class FreeOracle(GroupOracle):
    """The free group on n marked generators."""

    def __init__(self, rank: int):
        self.rank = rank
        self.label = f"free:{rank}"

    def decide(self, w: Word) -> Answer:
        self._check_rank(w)
        return Answer.IDENTITY if not reduce_letters(w.letters) else Answer.NONIDENTITY

    def normal_key(self, w: Word):
        return reduce_letters(w.letters)


class AbelianOracle(GroupOracle):
    """Z^n marked by the standard basis."""

    def __init__(self, rank: int):
        self.rank = rank
        self.label = f"abelian:{rank}"

    def decide(self, w: Word) -> Answer:
        self._check_rank(w)
        if all(e == 0 for e in exponent_vector(w)):
            return Answer.IDENTITY
        return Answer.NONIDENTITY

    def normal_key(self, w: Word):
        return exponent_vector(w)


class TrivialOracle(GroupOracle):
    """The one-element group with n redundant marked generators."""

    def __init__(self, rank: int):
        self.rank = rank
        self.label = f"trivial:{rank}"

    def decide(self, w: Word) -> Answer:
        self._check_rank(w)
        return Answer.IDENTITY

    def normal_key(self, w: Word):
        return 0


class WeightedExponentOracle(GroupOracle):
    """Z marked by integers: generator i maps to weights[i-1].

    A word is trivial iff its weighted exponent sum vanishes.  The
    marking (2, 3), say, gives Z with two non-unit generators.
    """

    def __init__(self, weights: Sequence[int]):
        ws = tuple(int(x) for x in weights)
        if not ws:
            raise ValueError("need at least one weight")
        self.weights = ws
        self.rank = len(ws)
        self.label = "weights:" + ",".join(str(x) for x in ws)

    def decide(self, w: Word) -> Answer:
        self._check_rank(w)
        total = sum(c * e for c, e in zip(self.weights, exponent_vector(w)))
        return Answer.IDENTITY if total == 0 else Answer.NONIDENTITY

    def normal_key(self, w: Word):
        return sum(c * e for c, e in zip(self.weights, exponent_vector(w)))


def free_oracle(rank: int) -> GroupOracle:
    return FreeOracle(rank)


def abelian_oracle(rank: int) -> GroupOracle:
    return AbelianOracle(rank)


def trivial_oracle(rank: int) -> GroupOracle:
    return TrivialOracle(rank)


def weighted_exponent_oracle(weights: Sequence[int]) -> GroupOracle:
    return WeightedExponentOracle(weights)


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """A finite presentation: rank plus cyclically reduced relators.

    Relators are cyclically reduced on input and must be nonempty after
    that; duplicates are dropped, keeping first occurrences.  The
    relator list itself may be empty (a free presentation).
    """

    def __init__(self, rank: int, relators: Iterable[Word]):
        self.rank = rank
        seen = set()
        out: list[Word] = []
        for r in relators:
            if r.rank != rank:
                raise ValueError(f"relator rank {r.rank} != presentation rank {rank}")
            r = cyclic_reduce(r)
            if len(r) == 0:
                raise ValueError("empty relator (after cyclic reduction)")
            if r.letters not in seen:
                seen.add(r.letters)
                out.append(r)
        self.relators = tuple(out)

    def __repr__(self) -> str:
        rs = "; ".join(format_word(r) for r in self.relators)
        return f"Presentation(rank={self.rank}, relators=[{rs}])"


def read_presentation(text: str) -> Presentation:
    """Parse the text format: first line ``rank n``, one relator per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("rank "):
        raise ValueError("presentation text must start with a 'rank n' line")
    try:
        rank = int(lines[0][5:])
    except ValueError:
        raise ValueError(f"bad rank line {lines[0]!r}") from None
    relators = [parse_word(ln, rank) for ln in lines[1:]]
    return Presentation(rank, relators)


def format_presentation(p: Presentation) -> str:
    lines = [f"rank {p.rank}"]
    lines.extend(format_word(r) for r in p.relators)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# letter <-> character encoding

_CODE_BASE = 32  # even, so inverting a letter toggles the low bit


def _encode_letters(letters: Sequence[int]) -> str:
    return "".join(
        chr(_CODE_BASE + 2 * (lt - 1)) if lt > 0 else chr(_CODE_BASE + 2 * (-lt - 1) + 1)
        for lt in letters
    )


def _decode_str(s: str, rank: int) -> Word:
    letters = []
    for ch in s:
        c = ord(ch) - _CODE_BASE
        letters.append(c // 2 + 1 if c % 2 == 0 else -(c // 2 + 1))
    return Word(letters, rank)


def _invert_table(rank: int) -> dict[int, int]:
    return {
        _CODE_BASE + k: _CODE_BASE + (k ^ 1) for k in range(2 * rank)
    }


def _reduce_str(s: str) -> str:
    stack: list[str] = []
    for ch in s:
        if stack and (ord(stack[-1]) ^ ord(ch)) == 1:
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def _common_prefix_len(a: str, i: int, b: str, j: int, cap: int) -> int:
    """Length of the longest common prefix of a[i:i+cap] and b[j:j+cap]."""
    if cap <= 0:
        return 0
    n = 0
    chunk = 32
    while n < cap:
        step = min(chunk, cap - n)
        if a[i + n : i + n + step] == b[j + n : j + n + step]:
            n += step
            chunk = min(chunk * 2, 1 << 14)
        else:
            sa = a[i + n : i + n + step]
            sb = b[j + n : j + n + step]
            k = 0
            while sa[k] == sb[k]:
                k += 1
            return n + k
    return cap


# ---------------------------------------------------------------------------
# symmetrized relator sets


class SymmetrizedRelatorSet:
    """Closure of a relator set under cyclic permutation and inversion.

    Rotations are kept implicit: each base relator is stored as an
    encoded string per direction, and a rotation is addressed by a
    (relator index, direction, shift) triple.  ``elements`` materializes
    the closure as Words, which is only sensible for small sets; the
    piece computation and the Dehn matchers never need it.
    """

    def __init__(self, rank: int, relators: Sequence[Word], matcher: str = "auto"):
        self.rank = rank
        self.relators = tuple(relators)
        # half_lengths[i]: length of the shortest prefix of relator i
        # that is strictly longer than half of it.
        self.half_lengths = tuple(len(r) // 2 + 1 for r in self.relators)
        inv = _invert_table(rank)
        self._enc: list[tuple[str, str]] = []
        for r in self.relators:
            s = _encode_letters(r.letters)
            self._enc.append((s, s[::-1].translate(inv)))
        self._d3 = [(sp * 3, sm * 3) for sp, sm in self._enc]
        self._inv_table = inv
        self._matcher_mode = matcher
        self._matcher_obj = None
        self._metric_cache: dict[Fraction, "MetricReport"] = {}
        self._c6_ok = False

    @property
    def elements(self) -> frozenset[Word]:
        out = set()
        for (sp, sm), r in zip(self._enc, self.relators):
            n = len(sp)
            for s in (sp, sm):
                d = s + s
                for shift in range(n):
                    out.add(_decode_str(d[shift : shift + n], self.rank))
        return frozenset(out)

    @property
    def c6_verified(self) -> bool:
        return self._c6_ok

    def mark_c6_verified(self) -> None:
        # for relator subsets of an already verified set: pieces only
        # shrink and per-relator thresholds are unchanged.
        self._c6_ok = True

    def _handles(self) -> list[tuple[int, int, int]]:
        out = []
        for ri, r in enumerate(self.relators):
            for d in (0, 1):
                out.extend((ri, d, shift) for shift in range(len(r)))
        return out

    def _rotation_prefix(self, handle: tuple[int, int, int], length: int) -> Word:
        ri, d, shift = handle
        s3 = self._d3[ri][d]
        return _decode_str(s3[shift : shift + length], self.rank)

    def matcher_kind(self) -> str:
        return type(self._matcher()).__name__

    def _matcher(self):
        if self._matcher_obj is None:
            mode = self._matcher_mode
            small_cost = sum(2 * len(r) * len(r) for r in self.relators)
            if mode == "small" or (mode == "auto" and small_cost <= 4_000_000):
                self._matcher_obj = _SmallSetMatcher(self)
            else:
                try:
                    self._matcher_obj = _RunAnchorMatcher(self)
                except _AnchorInapplicable as e:
                    if mode == "anchor":
                        raise RuntimeError(f"anchor matcher inapplicable: {e}") from None
                    raise RuntimeError(
                        "relator set is too large to materialize and has no "
                        f"usable run structure ({e})"
                    ) from None
        return self._matcher_obj


def symmetrize(p: Presentation, matcher: str = "auto") -> SymmetrizedRelatorSet:
    """Build the symmetrized relator set of a presentation.

    ``matcher`` selects the Dehn subword-search backend ("auto",
    "small", or "anchor"); it does not change any observable result.
    """
    return SymmetrizedRelatorSet(p.rank, p.relators, matcher=matcher)


# ---------------------------------------------------------------------------
# metric small-cancellation condition


@dataclass
class MetricReport:
    """Outcome of the piece-length check against lambda * |relator|."""

    max_piece_length: int
    shortest_relator: int
    satisfied: bool
    witness_piece: Optional[Word] = None

    def to_json_dict(self) -> dict:
        d = {
            "max_piece_length": self.max_piece_length,
            "shortest_relator": self.shortest_relator,
            "satisfied": self.satisfied,
        }
        if not self.satisfied and self.witness_piece is not None:
            d["witness_piece"] = format_word(self.witness_piece)
        return d


def _piece_lengths(s: SymmetrizedRelatorSet) -> list[int]:
    """Max piece length at every rotation position.

    A piece is a common prefix of two distinct occurrence positions
    (relator, direction, shift) in the symmetrized set; proper powers
    therefore yield pieces against their own shifted copies.  Sorting
    all rotations lexicographically reduces the computation to common
    prefixes of sort neighbours.
    """
    handles = s._handles()
    if len(handles) < 2:
        return [0] * len(handles)
    lens = [len(r) for r in s.relators]
    d3 = s._d3

    def cmp(p, q):
        sa = d3[p[0]][p[1]]
        sb = d3[q[0]][q[1]]
        la, lb = lens[p[0]], lens[q[0]]
        cap = la if la < lb else lb
        k = _common_prefix_len(sa, p[2], sb, q[2], cap)
        if k < cap:
            return -1 if sa[p[2] + k] < sb[q[2] + k] else 1
        return la - lb

    order = sorted(range(len(handles)), key=functools.cmp_to_key(
        lambda i, j: cmp(handles[i], handles[j])
    ))
    piece = [0] * len(handles)
    for a, b in zip(order, order[1:]):
        p, q = handles[a], handles[b]
        cap = min(lens[p[0]], lens[q[0]])
        l = _common_prefix_len(d3[p[0]][p[1]], p[2], d3[q[0]][q[1]], q[2], cap)
        if l > piece[a]:
            piece[a] = l
        if l > piece[b]:
            piece[b] = l
    return piece


def max_piece_bruteforce(s: SymmetrizedRelatorSet) -> tuple[int, dict[int, int]]:
    """Quadratic reference: pairwise common prefixes over all positions.

    Returns (global max piece, per-relator max piece).  Test oracle for
    the sorted computation; only usable on small sets.
    """
    handles = s._handles()
    lens = [len(r) for r in s.relators]
    per = {ri: 0 for ri in range(len(s.relators))}
    best = 0
    for i in range(len(handles)):
        p = handles[i]
        for j in range(i + 1, len(handles)):
            q = handles[j]
            cap = min(lens[p[0]], lens[q[0]])
            l = _common_prefix_len(
                s._d3[p[0]][p[1]], p[2], s._d3[q[0]][q[1]], q[2], cap
            )
            if l > best:
                best = l
            if l > per[p[0]]:
                per[p[0]] = l
            if l > per[q[0]]:
                per[q[0]] = l
    return best, per


def check_metric_condition(
    s: SymmetrizedRelatorSet, lam: Fraction = Fraction(1, 6)
) -> MetricReport:
    """Check the metric small-cancellation condition at parameter lam.

    Satisfied iff every piece occurring in a relator r is strictly
    shorter than lam * |r|.  The report carries the global maximum
    piece length, the shortest relator length, and, on failure, one
    maximal offending piece.
    """
    lam = Fraction(lam)
    if not (0 < lam < 1):
        raise ValueError(f"lambda must be in (0,1), got {lam}")
    cached = s._metric_cache.get(lam)
    if cached is not None:
        return cached
    if not s.relators:
        report = MetricReport(0, 0, True)
        s._metric_cache[lam] = report
        return report
    handles = s._handles()
    piece = _piece_lengths(s)
    lens = [len(r) for r in s.relators]
    max_piece = max(piece) if piece else 0
    shortest = min(lens)
    witness = None
    satisfied = True
    for h, pl in zip(handles, piece):
        if pl >= lam * lens[h[0]]:
            satisfied = False
            witness = s._rotation_prefix(h, pl)
            break
    report = MetricReport(max_piece, shortest, satisfied, witness)
    s._metric_cache[lam] = report
    if lam == Fraction(1, 6) and satisfied:
        s._c6_ok = True
    return report


# ---------------------------------------------------------------------------
# Dehn matchers

# A match is (start, length, replacement string): the word carries an
# over-half prefix of some rotation beginning at `start`; replacing it
# by the inverted complement strictly shortens the word.  Tie-break:
# leftmost start, then longest match, then shortlex-least replacement.


def _better(a, b):
    if b is None:
        return a
    ka = (a[0], -a[1], len(a[2]), a[2])
    kb = (b[0], -b[1], len(b[2]), b[2])
    return a if ka < kb else b


class _SmallSetMatcher:
    """Materializes every rotation; str.find does the searching."""

    def __init__(self, s: SymmetrizedRelatorSet):
        self._items: list[tuple[str, int]] = []
        seen = set()
        for (sp, sm), r in zip(s._enc, s.relators):
            n = len(r)
            h = n // 2 + 1
            for enc in (sp, sm):
                dd = enc + enc
                for shift in range(n):
                    rot = dd[shift : shift + n]
                    if rot not in seen:
                        seen.add(rot)
                        self._items.append((rot, h))
        # deterministic scan order
        self._items.sort(key=lambda t: (len(t[0]), t[0]))
        self._inv = s._inv_table
        self.min_half = min((h for _, h in self._items), default=1)

    def find(self, w: str):
        best = None
        for rot, h in self._items:
            if h > len(w):
                continue
            needle = rot[:h]
            start = 0
            while True:
                p = w.find(needle, start)
                if p < 0:
                    break
                q = h + _common_prefix_len(w, p + h, rot, h, min(len(w) - p, len(rot)) - h)
                repl = rot[q:][::-1].translate(self._inv)
                best = _better((p, q, repl), best)
                start = p + 1
        return best


class _AnchorInapplicable(Exception):
    pass


class _RunAnchorMatcher:
    """Subword search for large relator sets with long letter runs.

    Requires every adjacent pair of maximal letter runs to occur at one
    position only, across all relators and directions, and each relator
    to satisfy half_length >= 4*max_run+5.  Any over-half prefix then
    contains a fully enclosed adjacent run pair, which pins down the
    unique candidate alignment; the match is grown outward from that
    anchor and checked for the half-length threshold.
    """

    def __init__(self, s: SymmetrizedRelatorSet):
        self._lens = [len(r) for r in s.relators]
        self._d3 = s._d3
        self._rev3 = [(a[::-1], b[::-1]) for a, b in s._d3]
        self._half = s.half_lengths
        self._inv = s._inv_table
        self.min_half = min(s.half_lengths, default=1)
        index: dict[tuple, tuple[int, int, int]] = {}
        for ri, (sp, sm) in enumerate(s._enc):
            n = len(sp)
            max_run = 0
            for d, enc in enumerate((sp, sm)):
                runs = _cyclic_runs(enc)
                if len(runs) < 2:
                    raise _AnchorInapplicable(
                        f"relator {ri} direction {d} is a single run"
                    )
                for k, (ch, ln, off) in enumerate(runs):
                    max_run = max(max_run, ln)
                    ch2, ln2, _ = runs[(k + 1) % len(runs)]
                    key = (ch, ln, ch2, ln2)
                    if key in index:
                        raise _AnchorInapplicable(
                            f"run pair {key!r} occurs at two positions"
                        )
                    index[key] = (ri, d, off)
            if s.half_lengths[ri] < 4 * max_run + 5:
                raise _AnchorInapplicable(
                    f"relator {ri}: half length {s.half_lengths[ri]} below "
                    f"run-coverage bound {4 * max_run + 5}"
                )
        self._index = index

    def find(self, w: str):
        runs = _linear_runs(w)
        if len(runs) < 2:
            return None
        best = None
        seen = set()
        for k in range(len(runs) - 1):
            ch, ln, off = runs[k]
            ch2, ln2, off2 = runs[k + 1]
            src = self._index.get((ch, ln, ch2, ln2))
            if src is None:
                continue
            ri, d, o = src
            n = self._lens[ri]
            s3 = self._d3[ri][d]
            # grow right from the anchor start, then left; the total is
            # capped at n afterwards, but the left extent must reach the
            # true interval start for the leftmost tie-break
            ext = _common_prefix_len(w, off, s3, n + o, min(len(w) - off, n))
            left_cap = min(off, n + o)
            r3 = self._rev3[ri][d]
            # position o-1 of the cyclic word sits at 3n-1-(n+o-1) = 2n-o
            # in the reversed triple
            lext = _common_prefix_len(w[::-1], len(w) - off, r3, 2 * n - o, left_cap)
            start = off - lext
            q = min(lext + ext, n)
            c = (o - lext) % n
            key = (ri, d, c, start)
            if key in seen:
                continue
            seen.add(key)
            if q < self._half[ri]:
                continue
            repl = s3[n + c + q : n + c + n][::-1].translate(self._inv)
            best = _better((start, q, repl), best)
        return best


def _linear_runs(s: str) -> list[tuple[str, int, int]]:
    """Maximal equal-character runs of s as (char, length, offset)."""
    out = []
    i = 0
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] == s[i]:
            j += 1
        out.append((s[i], j - i, i))
        i = j
    return out


def _cyclic_runs(s: str) -> list[tuple[str, int, int]]:
    """Runs of s read cyclically; offsets refer to s itself."""
    runs = _linear_runs(s)
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        ch, ln, off = runs.pop()
        runs[0] = (ch, runs[0][1] + ln, off)
    return runs


# ---------------------------------------------------------------------------
# Dehn's algorithm


class DehnPreconditionError(RuntimeError):
    """Dehn reduction was asked to run on an unverified relator set."""


def dehn_reduce(w: Word, s: SymmetrizedRelatorSet, unchecked: bool = False) -> Word:
    """Shorten w by Dehn replacements until none applies.

    Whenever a subword is strictly more than half of some relator
    rotation, the leftmost, then longest, then shortlex-least such
    over-half prefix u (rotation u*v) is replaced by invert(v); each
    step strictly shortens the word, so at most |w| steps run.  The
    relator set must have passed the metric condition check at 1/6
    unless ``unchecked`` is given.
    """
    if w.rank != s.rank:
        raise ValueError(f"word rank {w.rank} != relator set rank {s.rank}")
    if not s.c6_verified and not unchecked:
        raise DehnPreconditionError(
            "relator set not verified at lambda=1/6; "
            "run check_metric_condition or pass unchecked=True"
        )
    cur = _encode_letters(reduce_letters(w.letters))
    if not s.relators or len(cur) < min(s.half_lengths):
        return _decode_str(cur, w.rank)
    matcher = s._matcher()
    while len(cur) >= matcher.min_half:
        hit = matcher.find(cur)
        if hit is None:
            break
        p, q, repl = hit
        nxt = _reduce_str(cur[:p] + repl + cur[p + q :])
        assert len(nxt) < len(cur)
        cur = nxt
    return _decode_str(cur, w.rank)


def dehn_is_identity(w: Word, s: SymmetrizedRelatorSet, unchecked: bool = False) -> bool:
    """Whether Dehn reduction kills w.

    For relator sets passing the 1/6 metric condition this decides
    membership in the normal closure of the relators.
    """
    return len(dehn_reduce(w, s, unchecked=unchecked)) == 0


# ---------------------------------------------------------------------------
# brute-force normal closure semidecision


def brute_force_is_identity(
    w: Word,
    p: Presentation,
    length_budget: int,
    max_conjugators: int = 20_000,
    max_states: int = 250_000,
) -> Answer:
    """Semidecide membership of w in the normal closure of p's relators.

    BFS over products of conjugates h * rot * h^-1 (rot a rotation of a
    relator or its inverse), keeping only freely reduced intermediate
    products of length <= length_budget; conjugates longer than
    2*length_budget cannot contribute on that budget and are skipped.
    Returns IDENTITY when w is reached and UNKNOWN otherwise; it never
    claims NONIDENTITY.
    """
    if w.rank != p.rank:
        raise ValueError(f"word rank {w.rank} != presentation rank {p.rank}")
    if length_budget < 0:
        raise ValueError("length_budget must be >= 0")
    target = reduce_letters(w.letters)
    if not target:
        return Answer.IDENTITY
    if len(target) > length_budget:
        return Answer.UNKNOWN

    rotations: set[tuple[int, ...]] = set()
    for r in p.relators:
        for base in (r.letters, invert(r).letters):
            if len(base) > 2 * length_budget:
                continue
            dd = base + base
            for shift in range(len(base)):
                rotations.add(dd[shift : shift + len(base)])

    gens: list[tuple[int, ...]] = []
    seen_gens: set[tuple[int, ...]] = set()
    capped = False
    for sigma in sorted(rotations, key=lambda t: (len(t), t)):
        h_max = (2 * length_budget - len(sigma)) // 2
        for h in enumerate_words(p.rank, h_max):
            hl = h.letters
            # junction letters must not cancel, otherwise the conjugate
            # reduces to one with a shorter conjugator
            if hl and (hl[-1] == -sigma[0] or hl[-1] == sigma[-1]):
                continue
            g = hl + sigma + invert(h).letters
            if g not in seen_gens:
                seen_gens.add(g)
                gens.append(g)
                if len(gens) >= max_conjugators:
                    capped = True
                    break
        if capped:
            break

    visited: set[tuple[int, ...]] = {()}
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for u in frontier:
            for g in gens:
                v = reduce_letters(u + g)
                if len(v) > length_budget or v in visited:
                    continue
                if v == target:
                    return Answer.IDENTITY
                visited.add(v)
                if len(visited) > max_states:
                    return Answer.UNKNOWN
                nxt.append(v)
        frontier = nxt
    return Answer.UNKNOWN
