"""Exact finite-radius Cayley balls for marked groups.

Vertices are named by their shortlex-least geodesic representatives,
which form a prefix-closed set: breadth-first search that processes
each level in shortlex order therefore discovers every element through
its canonical name, with no postprocessing.  Element identification
uses the oracle's ``normal_key`` when present and falls back to
pairwise oracle queries (of length at most 2r+1 for a radius-r ball)
otherwise.

Balls compare by canonical signature: two balls are isomorphic as
rooted labelled graphs iff their signatures are byte-identical, since a
root- and label-preserving isomorphism is unique when it exists and
canonical naming pins the vertex order.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .oracles import GroupOracle
from .words import (
    Word,
    empty_word,
    enumerate_words,
    format_word,
    letters_for_rank,
    reduce_letters,
    reduced_word_count,
)

DEFAULT_WORD_BUDGET = 10_000_000


class WordBudgetError(RuntimeError):
    """Raised when a construction would enumerate too many words."""

    def __init__(self, needed: int, budget: int, what: str):
        super().__init__(
            f"{what} needs about {needed} oracle words, over the budget {budget}; "
            "raise word_budget to proceed"
        )
        self.needed = needed
        self.budget = budget


class MarkedGroup:
    """A group together with an ordered marking, accessed via its oracle.

    Every operation in this module needs exact answers; an oracle that
    returns UNKNOWN makes the query abort with OracleUnknownError.
    """

    def __init__(self, oracle: GroupOracle, rank: Optional[int] = None):
        if rank is not None and rank != oracle.rank:
            raise ValueError(f"rank {rank} != oracle rank {oracle.rank}")
        self.oracle = oracle
        self.rank = oracle.rank
        self.label = oracle.label
        self._engine: Optional[BallEngine] = None

    def engine(self) -> "BallEngine":
        if self._engine is None:
            self._engine = BallEngine(self.oracle)
        return self._engine

    def __repr__(self) -> str:
        return f"MarkedGroup({self.label})"


@dataclass(frozen=True)
class Ball:
    """A radius-r ball: canonical vertex words plus labelled edges.

    vertices[0] is the root (empty word) and the vertex order is
    shortlex.  Edges are (vertex, generator index, sign, vertex)
    quadruples, closed under inversion and sorted.
    """

    rank: int
    radius: int
    vertices: tuple[Word, ...]
    edges: tuple[tuple[int, int, int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class BallSignature:
    """Canonical bytes of a ball; equality here is ball equality."""

    data: bytes

    def hexdigest(self) -> str:
        return hashlib.sha256(self.data).hexdigest()

    def __repr__(self) -> str:
        return f"BallSignature(sha256={self.hexdigest()[:16]})"


class BallEngine:
    """Incremental breadth-first exploration of one marked group."""

    def __init__(self, oracle: GroupOracle):
        self.oracle = oracle
        self.rank = oracle.rank
        self.letters = letters_for_rank(self.rank)
        self._slot = {lt: i for i, lt in enumerate(self.letters)}
        self.words: list[tuple[int, ...]] = [()]
        self.level_of: list[int] = [0]
        self.level_end: list[int] = [1]
        self.neighbors: list[list[Optional[int]]] = [[None] * len(self.letters)]
        self.radius = 0
        self.enumerated = 0
        self._key_fn = getattr(oracle, "normal_key", None)
        self._key_index = None
        if self._key_fn is not None:
            self._key_index = {self._key_fn(empty_word(self.rank)): 0}
        self._ball_cache: dict[int, Ball] = {}

    # -- identification helpers

    def _same_element(self, letters_a: tuple[int, ...], vertex: int) -> bool:
        inv = tuple(-x for x in reversed(self.words[vertex]))
        q = Word(reduce_letters(letters_a + inv), self.rank)
        return self.oracle.is_identity(q)

    def _locate(self, letters: tuple[int, ...], levels: range) -> Optional[int]:
        """Scan vertices of the given index range for this element."""
        for u in levels:
            if self._same_element(letters, u):
                return u
        return None

    # -- expansion

    def _frontier(self) -> range:
        lo = self.level_end[self.radius - 1] if self.radius > 0 else 0
        return range(lo, self.level_end[self.radius])

    def _gen_candidates(self, vs: range):
        out = []
        key_fn = self._key_fn
        for v in vs:
            w = self.words[v]
            last = w[-1] if w else 0
            for slot, lt in enumerate(self.letters):
                if lt == -last:
                    continue  # free cancellation: that edge is the parent link
                w2 = w + (lt,)
                if key_fn is not None:
                    out.append((v, slot, lt, w2, key_fn(Word(w2, self.rank))))
                else:
                    out.append((v, slot, lt, w2, None))
        return out

    def _expand_level(self, workers: int) -> None:
        d = self.radius
        frontier = self._frontier()
        if workers > 1 and len(frontier) >= workers:
            size = len(frontier)
            bounds = [
                (
                    frontier.start + (size * i) // workers,
                    frontier.start + (size * (i + 1)) // workers,
                )
                for i in range(workers)
            ]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(
                    pool.map(lambda b: self._gen_candidates(range(b[0], b[1])), bounds)
                )
            candidates = [c for chunk in chunks for c in chunk]
        else:
            candidates = self._gen_candidates(frontier)
        self.enumerated += len(candidates)

        prev_lo = self.level_end[d - 1] if d > 0 else 0
        new_lo = self.level_end[d]
        for v, slot, lt, w2, key in candidates:
            if self.neighbors[v][slot] is not None:
                continue
            if key is not None:
                idx = self._key_index.get(key)
            else:
                # the element sits at distance d-1, d, or d+1
                idx = self._locate(w2, range(prev_lo, len(self.words)))
            if idx is None:
                idx = len(self.words)
                self.words.append(w2)
                self.level_of.append(d + 1)
                self.neighbors.append([None] * len(self.letters))
                if key is not None:
                    self._key_index[key] = idx
            self.neighbors[v][slot] = idx
            self.neighbors[idx][self._slot[-lt]] = v
        self.level_end.append(len(self.words))
        self.radius += 1

    def ensure_radius(
        self, r: int, word_budget: int = DEFAULT_WORD_BUDGET, workers: int = 1
    ) -> None:
        while self.radius < r:
            projected = self.enumerated + len(self._frontier()) * len(self.letters)
            if projected > word_budget:
                raise WordBudgetError(projected, word_budget, f"radius {r}")
            self._expand_level(workers)

    # -- queries

    def size_at(self, r: int, word_budget: int = DEFAULT_WORD_BUDGET) -> int:
        self.ensure_radius(r, word_budget)
        return self.level_end[r]

    def canonical_index(
        self,
        letters: Sequence[int],
        within: int,
        word_budget: int = DEFAULT_WORD_BUDGET,
    ) -> Optional[int]:
        """Vertex index of this element, or None if beyond radius `within`."""
        target = reduce_letters(tuple(letters))
        r = min(within, len(target))
        self.ensure_radius(r, word_budget)
        if self._key_fn is not None:
            return self._key_index.get(self._key_fn(Word(target, self.rank)))
        return self._locate(target, range(self.level_end[r]))

    def distance(
        self,
        letters: Sequence[int],
        cutoff: int,
        word_budget: int = DEFAULT_WORD_BUDGET,
    ) -> Optional[int]:
        """Root distance of the element, or None when it exceeds cutoff."""
        idx = self.canonical_index(letters, cutoff, word_budget)
        return None if idx is None else self.level_of[idx]

    def _boundary_target(self, v: int, lt: int, r: int) -> Optional[int]:
        w2 = self.words[v] + (lt,)
        if self._key_fn is not None:
            return self._key_index.get(self._key_fn(Word(w2, self.rank)))
        prev_lo = self.level_end[r - 1] if r > 0 else 0
        return self._locate(w2, range(prev_lo, self.level_end[r]))

    def ball(
        self, r: int, word_budget: int = DEFAULT_WORD_BUDGET, workers: int = 1
    ) -> Ball:
        cached = self._ball_cache.get(r)
        if cached is not None:
            return cached
        self.ensure_radius(r, word_budget, workers)
        count = self.level_end[r]
        edges = []
        for v in range(count):
            row = self.neighbors[v]
            for slot, lt in enumerate(self.letters):
                u = row[slot]
                if u is None and self.level_of[v] == r:
                    u = self._boundary_target(v, lt, r)
                    if u is not None:
                        row[slot] = u
                        self.neighbors[u][self._slot[-lt]] = v
                if u is not None and u < count and self.level_of[u] <= r:
                    edges.append((v, abs(lt), 1 if lt > 0 else -1, u))
        ball = Ball(
            rank=self.rank,
            radius=r,
            vertices=tuple(Word(w, self.rank) for w in self.words[:count]),
            edges=tuple(sorted(edges)),
        )
        self._ball_cache[r] = ball
        return ball


# ---------------------------------------------------------------------------
# module-level operations


def build_ball(
    g: MarkedGroup,
    r: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
    workers: int = 1,
) -> Ball:
    """The radius-r ball of g around the identity."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    return g.engine().ball(r, word_budget, workers)


def signature(ball: Ball) -> BallSignature:
    lines = [f"rank {ball.rank}", f"radius {ball.radius}", "vertices"]
    lines.extend(format_word(w) for w in ball.vertices)
    lines.append("edges")
    lines.extend(f"{v} {g} {s} {u}" for v, g, s, u in ball.edges)
    return BallSignature("\n".join(lines).encode("utf-8"))


def ball_to_json_dict(ball: Ball) -> dict:
    return {
        "rank": ball.rank,
        "radius": ball.radius,
        "vertices": [format_word(w) for w in ball.vertices],
        "edges": [list(e) for e in ball.edges],
    }


def ball_to_dot(ball: Ball) -> str:
    """Graphviz text: undirected, root double-circled, inverses suppressed."""
    lines = ["graph ball {", "  node [shape=circle];"]
    for i, w in enumerate(ball.vertices):
        label = format_word(w) if len(w) else "1"
        shape = ", shape=doublecircle" if i == 0 else ""
        lines.append(f'  {i} [label="{label}"{shape}];')
    positive = {(v, g, u) for v, g, s, u in ball.edges if s > 0}
    for v, g, u in sorted(positive):
        if (u, g, v) in positive and u < v:
            continue  # involution partner already drawn
        lines.append(f'  {v} -- {u} [label="x{g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def r_locally_isomorphic(
    a: MarkedGroup,
    b: MarkedGroup,
    r: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
    workers: int = 1,
) -> bool:
    """Whether the radius-r balls agree as rooted labelled graphs."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} != {b.rank}")
    sa = signature(build_ball(a, r, word_budget, workers))
    sb = signature(build_ball(b, r, word_budget, workers))
    return sa == sb


def local_agreement_radius(
    a: MarkedGroup,
    b: MarkedGroup,
    max_radius: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> int:
    """Largest scanned radius at which the balls still agree.

    Radii are scanned upward from 0 and the scan stops at the first
    disagreement, returning the radius before it; -1 means the groups
    differ already at radius 0 (distinct ranks).
    """
    if a.rank != b.rank:
        return -1
    last = -1
    for r in range(max_radius + 1):
        if not r_locally_isomorphic(a, b, r, word_budget):
            break
        last = r
    return last


def kernel_disagreement_witness(
    a: MarkedGroup,
    b: MarkedGroup,
    max_length: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> Optional[Word]:
    """Shortlex-first word on which the two oracles disagree, if any."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} != {b.rank}")
    total = reduced_word_count(a.rank, max_length)
    if total > word_budget:
        raise WordBudgetError(total, word_budget, f"kernel agreement at {max_length}")
    for w in enumerate_words(a.rank, max_length):
        if a.oracle.is_identity(w) != b.oracle.is_identity(w):
            return w
    return None


def kernel_agreement(
    a: MarkedGroup,
    b: MarkedGroup,
    max_length: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> bool:
    """Whether the marked kernels agree on all words up to max_length."""
    return kernel_disagreement_witness(a, b, max_length, word_budget) is None


class _NotStabilized:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NotStabilized"


NOT_STABILIZED = _NotStabilized()


def convergence_check(
    chain: Sequence[MarkedGroup],
    limit: MarkedGroup,
    r: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
):
    """Least index from which the whole tail of the chain agrees with
    the limit on kernels up to length 2r; NOT_STABILIZED if the last
    entry still disagrees.
    """
    flags = [kernel_agreement(g, limit, 2 * r, word_budget) for g in chain]
    i0 = len(flags)
    while i0 > 0 and flags[i0 - 1]:
        i0 -= 1
    if i0 == len(flags) and flags:
        return NOT_STABILIZED
    return i0
