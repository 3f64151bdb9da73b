import itertools
import random

import pytest

from markedgroups.words import (
    Word,
    WordSyntaxError,
    concat,
    cyclic_reduce,
    empty_word,
    enumerate_words,
    format_word,
    free_reduce,
    invert,
    letters_for_rank,
    parse_word,
    reduced_word_count,
    word_power,
)


def test_letter_order_within_rank():
    assert letters_for_rank(2) == (1, -1, 2, -2)
    w = sorted(Word((lt,), 3) for lt in letters_for_rank(3))
    assert [v.letters for v in w] == [(1,), (-1,), (2,), (-2,), (3,), (-3,)]


def test_shortlex_length_dominates():
    a = parse_word("X2 X2", 2)
    b = parse_word("x1 x1 x1", 2)
    assert a < b
    assert empty_word(2) < parse_word("x1", 2)


def test_enumerate_counts_match_formula():
    for rank, max_len in [(1, 6), (2, 4), (3, 3)]:
        got = sum(1 for _ in enumerate_words(rank, max_len))
        assert got == reduced_word_count(rank, max_len)


def test_enumerate_rank2_len2_is_17():
    assert reduced_word_count(2, 2) == 17
    assert sum(1 for _ in enumerate_words(2, 2)) == 17


def test_enumerate_matches_bruteforce_set():
    rank, max_len = 2, 3
    brute = {()}
    alphabet = letters_for_rank(rank)
    for k in range(1, max_len + 1):
        for tup in itertools.product(alphabet, repeat=k):
            if all(tup[i] != -tup[i + 1] for i in range(k - 1)):
                brute.add(tup)
    out = [w.letters for w in enumerate_words(rank, max_len)]
    assert len(out) == len(set(out))
    assert set(out) == brute


def test_enumerate_is_shortlex_sorted():
    out = list(enumerate_words(2, 3))
    assert out == sorted(out)
    keys = [w.sort_key() for w in out]
    assert keys == sorted(keys)


def test_free_reduce_basics():
    assert free_reduce(parse_word("x1 X1", 1)) == empty_word(1)
    w = parse_word("x1 x2 X2 X1 x2", 2)
    assert free_reduce(w) == parse_word("x2", 2)
    assert free_reduce(free_reduce(w)) == free_reduce(w)


def test_free_reduce_random_properties():
    rng = random.Random(7001)
    for _ in range(300):
        rank = rng.randint(1, 3)
        letters = [
            rng.choice(letters_for_rank(rank)) for _ in range(rng.randint(0, 12))
        ]
        w = Word(letters, rank)
        r = free_reduce(w)
        assert r.is_reduced()
        assert len(r) <= len(w)
        assert (len(w) - len(r)) % 2 == 0
        assert concat(w, invert(w)) == empty_word(rank)
        assert concat(invert(w), w) == empty_word(rank)


def test_cyclic_reduce():
    assert cyclic_reduce(parse_word("X1 x2 x1", 2)) == parse_word("x2", 2)
    assert cyclic_reduce(parse_word("x1 X1", 2)) == empty_word(2)
    w = parse_word("x1 x2 X1", 2)
    assert cyclic_reduce(w) == parse_word("x2", 2)
    fixed = parse_word("x1 x2", 2)
    assert cyclic_reduce(fixed) == fixed


def test_invert_is_involution():
    rng = random.Random(7002)
    for _ in range(100):
        letters = [rng.choice(letters_for_rank(2)) for _ in range(rng.randint(0, 8))]
        w = Word(letters, 2)
        assert invert(invert(w)) == w
    assert invert(parse_word("x1 x2", 2)) == parse_word("X2 X1", 2)


def test_concat_rank_mismatch():
    with pytest.raises(ValueError):
        concat(empty_word(1), empty_word(2))


def test_word_power():
    x = parse_word("x1", 1)
    assert word_power(x, 3) == parse_word("x1 x1 x1", 1)
    assert word_power(x, 0) == empty_word(1)
    assert word_power(x, -2) == parse_word("X1 X1", 1)
    ab = parse_word("x1 x2", 2)
    assert word_power(ab, 2) == parse_word("x1 x2 x1 x2", 2)


def test_parse_format_roundtrip():
    rng = random.Random(7003)
    for _ in range(100):
        rank = rng.randint(1, 4)
        letters = [rng.choice(letters_for_rank(rank)) for _ in range(rng.randint(0, 9))]
        w = Word(letters, rank)
        assert parse_word(format_word(w), rank) == w


def test_parse_aliases():
    assert parse_word("abA", 2) == Word((1, 2, -1), 2)
    assert parse_word("a b A B", 2) == Word((1, 2, -1, -2), 2)
    assert parse_word("x1 X2", 2) == Word((1, -2), 2)
    assert parse_word("", 2) == empty_word(2)


def test_parse_errors():
    with pytest.raises(WordSyntaxError):
        parse_word("x0", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x1!", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x3", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("c", 2)


def test_word_validation():
    with pytest.raises(ValueError):
        Word((3,), 2)
    with pytest.raises(ValueError):
        Word((0,), 2)
    with pytest.raises(ValueError):
        Word((), 0)


def test_word_is_hashable_and_immutable():
    w = parse_word("x1", 2)
    assert len({w, parse_word("x1", 2)}) == 1
    with pytest.raises(AttributeError):
        w.letters = ()
