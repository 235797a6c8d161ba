"""Brute-force ground truth for the constraint families.

Counts are produced by a pruned depth-first search over words, evaluating
palindromic factors with an incremental palindromic tree (push one letter,
roll back).  None of the automaton machinery is involved, so these results
are an independent check on the constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automaton import minimize
from .construct import (AllowedSet, CapacityError, ConstraintSpec, MaxCountByParity,
                        MaxDistinct, MaxLen, MaxLenByParity, build_direct)
from .words import Eertree, Word, palindromic_factors

DEFAULT_EVAL_BUDGET = 100_000_000


@dataclass(frozen=True)
class OracleResult:
    n: int
    count: int
    witnesses: tuple[Word, ...] | None = None


def satisfies(spec: ConstraintSpec, w: Word) -> bool:
    """Whole-word evaluation of a constraint, from the full factor set."""
    pf = palindromic_factors(w)
    if isinstance(spec, AllowedSet):
        return all(p in spec.allowed for p in pf)
    if isinstance(spec, MaxDistinct):
        return len(pf) <= spec.cap
    if isinstance(spec, MaxLen):
        return pf.max_length() <= spec.cap
    if isinstance(spec, MaxLenByParity):
        even, odd = pf.max_length_by_parity()
        return even <= spec.even_cap and odd <= spec.odd_cap
    if isinstance(spec, MaxCountByParity):
        even, odd = pf.counts_by_parity()
        if not spec.count_empty:
            even -= 1
        return even <= spec.even_cap and odd <= spec.odd_cap
    raise TypeError(f"not a constraint spec: {spec!r}")


def _step_check(spec: ConstraintSpec):
    """Liveness test applied right after a push that created a palindrome.

    Sound because pushing a letter changes the factor set by at most that
    one new palindrome, and the families are monotone in the factor set.
    """
    if isinstance(spec, AllowedSet):
        allowed = frozenset(w.symbols for w in spec.allowed)

        def ok(tree: Eertree, node: int) -> bool:
            return tree.new_palindrome(node) in allowed
    elif isinstance(spec, MaxDistinct):
        cap = spec.cap

        def ok(tree: Eertree, node: int) -> bool:
            return tree.distinct_count + 1 <= cap
    elif isinstance(spec, MaxLen):
        cap = spec.cap

        def ok(tree: Eertree, node: int) -> bool:
            return tree.length[node] <= cap
    elif isinstance(spec, MaxLenByParity):
        even_cap, odd_cap = spec.even_cap, spec.odd_cap

        def ok(tree: Eertree, node: int) -> bool:
            l = tree.length[node]
            return l <= (even_cap if l % 2 == 0 else odd_cap)
    elif isinstance(spec, MaxCountByParity):
        even_cap = spec.even_cap - (1 if spec.count_empty else 0)
        odd_cap = spec.odd_cap

        def ok(tree: Eertree, node: int) -> bool:
            return tree.even_count <= even_cap and tree.odd_count <= odd_cap
    else:
        raise TypeError(f"not a constraint spec: {spec!r}")
    return ok


def _search(spec: ConstraintSpec, max_depth: int, visit, budget: int) -> None:
    """Pruned DFS over accepted words of length <= max_depth.

    visit(depth, tree) runs once per accepted word (tree is None for the
    empty word), lexicographically within each branch; returning False
    aborts the whole search.
    """
    if not satisfies(spec, Word(())):
        return
    if not visit(0, None) or max_depth == 0:
        return
    k = spec.alphabet_size
    ok = _step_check(spec)
    tree = Eertree()
    pending = [0]  # pending[-1] = next symbol to try at the current depth
    evaluations = 0
    while pending:
        c = pending[-1]
        if c == k:
            pending.pop()
            if tree.word:
                tree.pop()
            continue
        pending[-1] += 1
        evaluations += 1
        if evaluations > budget:
            raise CapacityError(f"oracle evaluation budget {budget} exceeded")
        node = tree.push(c)
        if node is not None and not ok(tree, node):
            tree.pop()
            continue
        if not visit(len(tree.word), tree):
            return
        if len(tree.word) < max_depth:
            pending.append(0)
        else:
            tree.pop()


def brute_count(spec: ConstraintSpec, n: int, max_witnesses: int = 0,
                budget: int = DEFAULT_EVAL_BUDGET) -> OracleResult:
    """Exact number of length-n words satisfying the constraint."""
    count = 0
    witnesses: list[Word] = []

    def visit(depth: int, tree: Eertree | None) -> bool:
        nonlocal count
        if depth == n:
            count += 1
            if len(witnesses) < max_witnesses:
                syms = tuple(tree.word) if tree is not None else ()
                witnesses.append(Word(syms, spec.alphabet_size))
        return True

    _search(spec, n, visit, budget)
    return OracleResult(n=n, count=count,
                        witnesses=tuple(witnesses) if max_witnesses else None)


def brute_count_profile(spec: ConstraintSpec, n_max: int,
                        budget: int = DEFAULT_EVAL_BUDGET) -> list[int]:
    """Counts for every length 0..n_max from a single search."""
    counts = [0] * (n_max + 1)

    def visit(depth: int, tree: Eertree | None) -> bool:
        counts[depth] += 1
        return True

    _search(spec, n_max, visit, budget)
    return counts


def brute_count_unpruned(spec: ConstraintSpec, n: int) -> int:
    """Reference count by evaluating every word of length n independently."""
    k = spec.alphabet_size
    return sum(1 for syms in itertools.product(range(k), repeat=n)
               if satisfies(spec, Word(syms, k)))


def longest_word(spec: ConstraintSpec, threshold: int | None = None,
                 budget: int = DEFAULT_EVAL_BUDGET) -> int | None:
    """Maximum accepted length, or None when the language is infinite.

    An accepted word at least as long as the minimized automaton's live
    state count repeats a live state, so it pumps to arbitrary lengths;
    reaching that depth is the infinite signal.  Returns -1 if nothing at
    all is accepted.
    """
    if threshold is None:
        threshold = minimize(build_direct(spec)).live_state_count()
    longest = -1
    infinite = False

    def visit(depth: int, tree: Eertree | None) -> bool:
        nonlocal longest, infinite
        if depth >= threshold:
            infinite = True
            return False
        longest = max(longest, depth)
        return True

    _search(spec, threshold, visit, budget)
    return None if infinite else longest
