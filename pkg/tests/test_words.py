import random

import pytest

from palfac.words import (
    Word,
    Eertree,
    palindromic_factors,
    naive_palindromic_factors,
    enumerate_palindromes,
    minimal_elements,
)


def test_word_basics():
    w = Word.from_digits("0012", 3)
    assert len(w) == 4
    assert str(w) == "0012"
    assert w.reverse() == Word.from_digits("2100")
    assert not w.is_palindrome()
    assert Word.from_digits("01210").is_palindrome()
    assert Word(()).is_palindrome()


def test_word_equality_ignores_alphabet():
    assert Word((0, 1), 2) == Word((0, 1), 5)
    assert hash(Word((0, 1), 2)) == hash(Word((0, 1), 5))


def test_word_rejects_bad_symbols():
    with pytest.raises(ValueError):
        Word((0, 2), 2)


def test_word_order_is_length_then_lex():
    ws = [Word.from_digits(t) for t in ("10", "0", "1", "011", "00")]
    assert sorted(str(w) for w in sorted(ws)) == sorted(["0", "1", "00", "10", "011"])
    assert [str(w) for w in sorted(ws)] == ["0", "1", "00", "10", "011"]


def test_factor_and_conjugates_and_root():
    w = Word.from_digits("001011")
    assert Word.from_digits("010").is_factor_of(w)
    assert not Word.from_digits("11011").is_factor_of(w)
    assert len(w.conjugates()) == 6
    assert Word.from_digits("010101").primitive_root() == Word.from_digits("01")
    assert w.primitive_root() == w


def test_palfac_small_cases():
    pf = palindromic_factors(Word.from_digits("0011"))
    names = sorted(str(w) for w in pf)
    assert names == sorted(["", "0", "1", "00", "11"])
    even, odd = pf.counts_by_parity()
    assert (even, odd) == (3, 2)
    assert pf.max_length_by_parity() == (2, 1)
    assert pf.max_length() == 2


def test_palfac_empty_word():
    pf = palindromic_factors(Word(()))
    assert len(pf) == 1
    assert Word(()) in pf


def test_eertree_against_naive_bulk():
    rng = random.Random(1)
    for _ in range(10_000):
        k = rng.choice((2, 2, 3, 4))
        n = rng.randrange(0, 33)
        w = Word(tuple(rng.randrange(k) for _ in range(n)), k)
        assert palindromic_factors(w).palindromes == naive_palindromic_factors(w).palindromes


def test_palfac_count_at_most_length_plus_one():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randrange(0, 60)
        w = Word(tuple(rng.randrange(2) for _ in range(n)), 2)
        assert len(palindromic_factors(w)) <= n + 1


def test_eertree_rollback():
    rng = random.Random(3)
    t = Eertree()
    stack = []
    # random push/pop walk, checking counts match a fresh eertree on the word
    for _ in range(3000):
        if stack and rng.random() < 0.45:
            t.pop()
            stack.pop()
        else:
            c = rng.randrange(3)
            t.push(c)
            stack.append(c)
        fresh = Eertree()
        for c in stack:
            fresh.push(c)
        assert t.distinct_count == fresh.distinct_count
        assert (t.even_count, t.odd_count) == (fresh.even_count, fresh.odd_count)
        assert t.last_palindrome_length() == fresh.last_palindrome_length()


def test_eertree_parity_counts():
    t = Eertree()
    for c in (0, 0, 1, 0, 1, 1):
        t.push(c)
    # palindromes of 001011: 0, 1, 00, 11, 010, 101, 0110? no -- check via naive
    pf = naive_palindromic_factors(Word.from_digits("001011"))
    even, odd = pf.counts_by_parity()
    assert t.even_count == even - 1  # eertree tracks nonempty only
    assert t.odd_count == odd


def test_enumerate_palindromes():
    pals = enumerate_palindromes(2, 3)
    assert [str(w) for w in pals] == ["", "0", "1", "00", "11", "000", "010", "101", "111"]
    evens = enumerate_palindromes(2, 4, parity="even")
    assert [str(w) for w in evens] == ["", "00", "11", "0000", "0110", "1001", "1111"]
    odds = enumerate_palindromes(3, 1, parity="odd")
    assert [str(w) for w in odds] == ["0", "1", "2"]
    for w in enumerate_palindromes(3, 5):
        assert w.is_palindrome()
    assert len(enumerate_palindromes(2, 5)) == 1 + 2 + 2 + 4 + 4 + 8


def test_minimal_elements():
    pool = [Word.from_digits(t) for t in ("00", "000", "0110", "11", "101")]
    out = minimal_elements(pool)
    assert sorted(str(w) for w in out) == ["00", "101", "11"]
    # 000 contains 00; 0110 contains 11


def test_minimal_elements_is_antichain():
    rng = random.Random(4)
    pool = [Word(tuple(rng.randrange(2) for _ in range(rng.randrange(1, 8))), 2)
            for _ in range(60)]
    out = minimal_elements(pool)
    for a in out:
        for b in out:
            assert a == b or not a.is_factor_of(b)
