"""Words over a ranked free-group alphabet.

A letter is a nonzero signed integer: ``+i`` is the i-th generator and
``-i`` its inverse (indices are 1-based).  A :class:`Word` is a finite
letter sequence together with the ambient rank.  All canonical choices
in this package follow shortlex order, with letters ordered

    x1 < X1 < x2 < X2 < ...

where ``x<i>`` renders ``+i`` and ``X<i>`` renders ``-i``.  For ranks up
to 26 the single-character aliases ``a..z`` / ``A..Z`` are accepted on
input; output always uses the ``x<i>`` / ``X<i>`` syntax.  The empty
string parses to the empty word (the identity).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class WordSyntaxError(ValueError):
    """Raised when word text cannot be parsed."""


def letter(index: int, sign: int) -> int:
    """Build a letter code from a 1-based generator index and sign (+1/-1)."""
    if index < 1:
        raise ValueError(f"letter index must be >= 1, got {index}")
    if sign not in (1, -1):
        raise ValueError(f"letter sign must be +1 or -1, got {sign}")
    return index * sign


def letter_index(lt: int) -> int:
    return lt if lt > 0 else -lt


def letter_sign(lt: int) -> int:
    return 1 if lt > 0 else -1


def invert_letter(lt: int) -> int:
    return -lt


def letter_sort_key(lt: int) -> tuple[int, int]:
    # x<i> precedes X<i>; smaller indices first.
    return (abs(lt), 0 if lt > 0 else 1)


def letters_for_rank(rank: int) -> tuple[int, ...]:
    """All 2*rank letters in canonical order: x1, X1, x2, X2, ..."""
    out: list[int] = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return tuple(out)


def reduce_letters(letters: Sequence[int]) -> tuple[int, ...]:
    """Freely reduce a raw letter sequence (stack cancellation)."""
    stack: list[int] = []
    for lt in letters:
        if stack and stack[-1] == -lt:
            stack.pop()
        else:
            stack.append(lt)
    return tuple(stack)


class Word:
    """An immutable word over the rank-``rank`` alphabet.

    Words are not reduced implicitly; use :func:`free_reduce`.  Equality
    is letter-for-letter (and rank must match).  Ordering is shortlex.
    """

    __slots__ = ("letters", "rank")

    def __init__(self, letters: Iterable[int], rank: int):
        lts = tuple(letters)
        if rank < 1:
            raise ValueError(f"rank must be >= 1, got {rank}")
        for lt in lts:
            if lt == 0 or abs(lt) > rank:
                raise ValueError(f"letter {lt} out of range for rank {rank}")
        object.__setattr__(self, "letters", lts)
        object.__setattr__(self, "rank", rank)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.letters, self.rank))

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(letter_sort_key(lt) for lt in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Word") -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "Word") -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: "Word") -> bool:
        return self.sort_key() >= other.sort_key()

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, rank={self.rank})"

    def is_reduced(self) -> bool:
        lts = self.letters
        return all(lts[i] != -lts[i + 1] for i in range(len(lts) - 1))


def empty_word(rank: int) -> Word:
    return Word((), rank)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    if w.is_reduced():
        return w
    return Word(reduce_letters(w.letters), w.rank)


def cyclic_reduce(w: Word) -> Word:
    """Freely reduce, then strip cancelling first/last letter pairs."""
    lts = reduce_letters(w.letters)
    lo, hi = 0, len(lts)
    while hi - lo >= 2 and lts[lo] == -lts[hi - 1]:
        lo += 1
        hi -= 1
    return Word(lts[lo:hi], w.rank)


def invert(w: Word) -> Word:
    return Word(tuple(-lt for lt in reversed(w.letters)), w.rank)


def concat(u: Word, v: Word) -> Word:
    """Concatenate and freely reduce.  Ranks must agree."""
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    return Word(reduce_letters(u.letters + v.letters), u.rank)


def word_power(w: Word, n: int) -> Word:
    if n < 0:
        return word_power(invert(w), -n)
    return Word(reduce_letters(w.letters * n), w.rank)


def reduced_word_count(rank: int, max_len: int) -> int:
    """Number of freely reduced words of length <= max_len.

    1 + sum over k in [1..max_len] of 2n * (2n-1)^(k-1).
    """
    n2 = 2 * rank
    total = 1
    width = n2
    for _ in range(max_len):
        total += width
        width *= n2 - 1
    return total


def enumerate_words(rank: int, max_len: int) -> Iterator[Word]:
    """Yield all freely reduced words of length <= max_len in shortlex order."""
    if max_len < 0:
        return
    yield empty_word(rank)
    order = letters_for_rank(rank)
    level: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt: list[tuple[int, ...]] = []
        for base in level:
            last = base[-1] if base else 0
            for lt in order:
                if lt == -last:
                    continue
                w = base + (lt,)
                nxt.append(w)
                yield Word(w, rank)
        level = nxt


_ALIAS_BASE = ord("a")
_ALIAS_BASE_UPPER = ord("A")


def parse_word(text: str, rank: int) -> Word:
    """Parse whitespace-separated letters.

    Accepts ``x<i>`` / ``X<i>`` tokens for any rank, and alias strings
    over ``a..z`` / ``A..Z`` (generator 1..26, lower = positive) when
    the rank allows; an alias token like ``abA`` means one letter per
    character.  The empty string is the empty word.
    """
    letters: list[int] = []
    for pos, token in enumerate(text.split()):
        if len(token) >= 2 and token[0] in ("x", "X") and token[1:].isdigit():
            idx = int(token[1:])
            if idx < 1:
                raise WordSyntaxError(f"bad generator index in token {token!r}")
            sign = 1 if token[0] == "x" else -1
            pairs = [(idx, sign)]
        elif token.isalpha():
            pairs = []
            for ch in token:
                if ch.islower():
                    pairs.append((ord(ch) - _ALIAS_BASE + 1, 1))
                else:
                    pairs.append((ord(ch) - _ALIAS_BASE_UPPER + 1, -1))
        else:
            raise WordSyntaxError(f"cannot parse token {token!r} (position {pos})")
        for idx, sign in pairs:
            if idx > rank:
                raise WordSyntaxError(
                    f"token {token!r} needs generator {idx} but rank is {rank}"
                )
            letters.append(idx * sign)
    return Word(letters, rank)


def format_word(w: Word) -> str:
    return " ".join(
        (f"x{lt}" if lt > 0 else f"X{-lt}") for lt in w.letters
    )
