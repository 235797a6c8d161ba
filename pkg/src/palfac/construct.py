"""Automata recognizing words with constrained palindromic factors.

Five constraint families are supported.  Every family's language is
factorial (closed under taking factors), so each automaton has a single
absorbing rejecting state and every other state is accepting.

build_direct runs a breadth-first closure over (window, bookkeeping)
states, where the window keeps just enough recent symbols that every
first occurrence of a palindromic factor in a not-yet-rejected word is
visible as a suffix of window+letter.  build_avoidance reaches the same
languages for the AllowedSet family through a forbidden-factor keyword
automaton, giving an independent construction to cross-check against.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .automaton import Dfa, minimize
from .words import Word, enumerate_palindromes, minimal_elements


DEFAULT_STATE_BUDGET = 10_000_000
_BUDGET_ENV = "PALFAC_STATE_BUDGET"


class CapacityError(RuntimeError):
    """Raised when a construction would exceed the state budget."""


@dataclass(frozen=True)
class AllowedSet:
    """Words whose palindromic factors all lie in a fixed finite set."""
    alphabet_size: int
    allowed: frozenset

    def __init__(self, alphabet_size: int, allowed: Iterable[Word]):
        allowed = frozenset(allowed)
        for w in allowed:
            if not w.is_palindrome():
                raise ValueError(f"allowed set contains non-palindrome {w!r}")
        object.__setattr__(self, "alphabet_size", alphabet_size)
        object.__setattr__(self, "allowed", allowed)


@dataclass(frozen=True)
class MaxDistinct:
    """Words with at most `cap` distinct palindromic factors, counting the empty word."""
    alphabet_size: int
    cap: int


@dataclass(frozen=True)
class MaxLen:
    """Words with no palindromic factor longer than `cap`."""
    alphabet_size: int
    cap: int


@dataclass(frozen=True)
class MaxLenByParity:
    """Words with even/odd palindromic factor lengths capped separately."""
    alphabet_size: int
    even_cap: int
    odd_cap: int


@dataclass(frozen=True)
class MaxCountByParity:
    """Words with at most even_cap even and odd_cap odd distinct palindromic factors.

    With count_empty (the default) the empty word counts toward the even cap.
    """
    alphabet_size: int
    even_cap: int
    odd_cap: int
    count_empty: bool = True


ConstraintSpec = AllowedSet | MaxDistinct | MaxLen | MaxLenByParity | MaxCountByParity


def state_budget() -> int:
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_STATE_BUDGET


def _check_spec(spec: ConstraintSpec) -> None:
    for name in ("cap", "even_cap", "odd_cap"):
        value = getattr(spec, name, None)
        if value is not None and value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")
    if spec.alphabet_size < 1:
        raise ValueError("alphabet must have at least one symbol")


def window_bound(spec: ConstraintSpec) -> int:
    """Length of recent-symbol window that makes the direct construction exact.

    Chosen so that window+letter always covers the first occurrence (as a
    suffix) of any palindromic factor a live word can acquire, including
    the arrival that first violates the constraint.
    """
    _check_spec(spec)
    if isinstance(spec, AllowedSet):
        longest = max((len(w) for w in spec.allowed), default=0)
        return longest + 2
    if isinstance(spec, MaxDistinct):
        return max(2 * spec.cap - 1, 1)
    if isinstance(spec, MaxLen):
        return spec.cap + 1
    if isinstance(spec, MaxLenByParity):
        return max(spec.even_cap, spec.odd_cap) + 2
    if isinstance(spec, MaxCountByParity):
        # a surviving word's even palindromes have length <= 2e where e is
        # the nonempty-even allowance, odd ones <= 2*odd_cap - 1; the first
        # violation arrives as a suffix two longer, which must still fit in
        # window+letter
        nonempty_even = spec.even_cap - 1 if spec.count_empty else spec.even_cap
        return max(2 * nonempty_even + 1, 2 * spec.odd_cap, 1)
    raise TypeError(f"not a constraint spec: {spec!r}")


def _pal_suffix_lengths(xs: tuple[int, ...]) -> tuple[int, ...]:
    """Lengths s >= 1 with xs[-s:] a palindrome."""
    out = []
    n = len(xs)
    for s in range(1, n + 1):
        tail = xs[n - s:]
        if tail == tail[::-1]:
            out.append(s)
    return tuple(out)


class _Family:
    """One constraint family's bookkeeping for the BFS construction."""

    __slots__ = ("bound", "k")

    def empty_alive(self) -> bool:
        return True

    def initial(self):
        raise NotImplementedError

    def step(self, extended, extra):
        """extra' for window+letter `extended`, or None when the word dies."""
        raise NotImplementedError


class _AllowedFamily(_Family):
    __slots__ = ("allowed",)

    def __init__(self, spec: AllowedSet):
        self.k = spec.alphabet_size
        self.bound = window_bound(spec)
        self.allowed = frozenset(w.symbols for w in spec.allowed)

    def empty_alive(self) -> bool:
        # the empty word is a palindromic factor of every word
        return () in self.allowed

    def initial(self):
        return ()

    def step(self, extended, extra):
        n = len(extended)
        allowed = self.allowed
        for s in _pal_suffix_lengths(extended):
            if extended[n - s:] not in allowed:
                return None
        return ()


class _MaxLenFamily(_Family):
    __slots__ = ("cap",)

    def __init__(self, spec: MaxLen):
        self.k = spec.alphabet_size
        self.bound = window_bound(spec)
        self.cap = spec.cap

    def initial(self):
        return ()

    def step(self, extended, extra):
        lengths = _pal_suffix_lengths(extended)
        if lengths and lengths[-1] > self.cap:
            return None
        return ()


class _MaxLenParityFamily(_Family):
    __slots__ = ("even_cap", "odd_cap")

    def __init__(self, spec: MaxLenByParity):
        self.k = spec.alphabet_size
        self.bound = window_bound(spec)
        self.even_cap = spec.even_cap
        self.odd_cap = spec.odd_cap

    def initial(self):
        return ()

    def step(self, extended, extra):
        for s in _pal_suffix_lengths(extended):
            cap = self.even_cap if s % 2 == 0 else self.odd_cap
            if s > cap:
                return None
        return ()


class _Interner:
    """Palindrome tuples to small ids, shared across one construction."""

    __slots__ = ("ids",)

    def __init__(self):
        self.ids: dict[tuple[int, ...], int] = {}

    def intern(self, pal: tuple[int, ...]) -> int:
        got = self.ids.get(pal)
        if got is None:
            got = len(self.ids)
            self.ids[pal] = got
        return got


class _MaxDistinctFamily(_Family):
    __slots__ = ("cap", "interner")

    def __init__(self, spec: MaxDistinct):
        self.k = spec.alphabet_size
        self.bound = window_bound(spec)
        self.cap = spec.cap
        self.interner = _Interner()

    def empty_alive(self) -> bool:
        return self.cap >= 1

    def initial(self):
        return frozenset()

    def step(self, extended, seen):
        n = len(extended)
        intern = self.interner.intern
        new = seen | frozenset(intern(extended[n - s:]) for s in _pal_suffix_lengths(extended))
        if len(new) + 1 > self.cap:  # the empty word always counts
            return None
        return new


class _MaxCountParityFamily(_Family):
    __slots__ = ("even_cap", "odd_cap", "interner")

    def __init__(self, spec: MaxCountByParity):
        self.k = spec.alphabet_size
        self.bound = window_bound(spec)
        self.even_cap = spec.even_cap - (1 if spec.count_empty else 0)
        self.odd_cap = spec.odd_cap
        self.interner = _Interner()

    def empty_alive(self) -> bool:
        return self.even_cap >= 0

    def initial(self):
        return (frozenset(), frozenset())

    def step(self, extended, extra):
        evens, odds = extra
        n = len(extended)
        intern = self.interner.intern
        for s in _pal_suffix_lengths(extended):
            pid = intern(extended[n - s:])
            if s % 2 == 0:
                evens = evens | {pid}
            else:
                odds = odds | {pid}
        if len(evens) > self.even_cap or len(odds) > self.odd_cap:
            return None
        return (evens, odds)


def _family_engine(spec: ConstraintSpec) -> _Family:
    _check_spec(spec)
    if isinstance(spec, AllowedSet):
        return _AllowedFamily(spec)
    if isinstance(spec, MaxDistinct):
        return _MaxDistinctFamily(spec)
    if isinstance(spec, MaxLen):
        return _MaxLenFamily(spec)
    if isinstance(spec, MaxLenByParity):
        return _MaxLenParityFamily(spec)
    if isinstance(spec, MaxCountByParity):
        return _MaxCountParityFamily(spec)
    raise TypeError(f"not a constraint spec: {spec!r}")


def build_direct(spec: ConstraintSpec, budget: int | None = None) -> Dfa:
    """Breadth-first construction of a complete DFA for the spec's language.

    Live states are numbered in discovery order starting from 0; the dead
    state, if the language is proper, gets the final number.
    """
    engine = _family_engine(spec)
    k = engine.k
    bound = engine.bound
    if budget is None:
        budget = state_budget()

    if not engine.empty_alive():
        return Dfa([[0] * k], 0, [], dead=0, alphabet_size=k)

    # window transitions repeat across states sharing a window: memoize them
    window_step: dict[tuple, tuple] = {}

    init = ((), engine.initial())
    index = {init: 0}
    states = [init]
    rows: list[list[int]] = []
    queue = deque((0,))
    dead = -1  # patched to the real index afterwards
    used_dead = False

    while queue:
        qi = queue.popleft()
        window, extra = states[qi]
        row = [0] * k
        for a in range(k):
            key = (window, a)
            hit = window_step.get(key)
            if hit is None:
                extended = window + (a,)
                hit = (extended[-bound:], extended)
                window_step[key] = hit
            new_window, extended = hit
            new_extra = engine.step(extended, extra)
            if new_extra is None:
                used_dead = True
                row[a] = dead
                continue
            nxt = (new_window, new_extra)
            ti = index.get(nxt)
            if ti is None:
                ti = len(states)
                if ti >= budget:
                    raise CapacityError(
                        f"state budget {budget} exceeded while building {spec!r}")
                index[nxt] = ti
                states.append(nxt)
                queue.append(ti)
            row[a] = ti
        rows.append(row)

    n = len(rows)
    if used_dead:
        rows.append([n] * k)
        for row in rows:
            for a in range(k):
                if row[a] == -1:
                    row[a] = n
        return Dfa(rows, 0, range(n), dead=n, alphabet_size=k)
    return Dfa(rows, 0, range(n), dead=None, alphabet_size=k)


def forbidden_set(allowed: Iterable[Word], alphabet_size: int) -> frozenset:
    """Minimal palindromes whose absence as factors characterizes the language.

    These are the minimal elements, in the factor order, of the palindromes
    up to (longest allowed) + 2 that are not in the allowed set.
    """
    allowed = frozenset(allowed)
    for w in allowed:
        if not w.is_palindrome():
            raise ValueError(f"allowed set contains non-palindrome {w!r}")
    longest = max((len(w) for w in allowed), default=0)
    universe = enumerate_palindromes(alphabet_size, longest + 2)
    extra = [w for w in universe if w not in allowed]
    return frozenset(minimal_elements(extra))


def build_avoidance(forbidden: Iterable[Word], alphabet_size: int) -> Dfa:
    """DFA for the words having no member of `forbidden` as a factor.

    Keyword-tree construction with failure links; nodes at or past a match
    collapse into the single dead state.
    """
    forbidden = sorted(set(forbidden))
    if any(len(w) == 0 for w in forbidden):
        # the empty word is a factor of everything: empty language
        return Dfa([[0] * alphabet_size], 0, [], dead=0, alphabet_size=alphabet_size)

    children: list[dict[int, int]] = [{}]
    terminal = [False]
    for w in forbidden:
        node = 0
        for c in w.symbols:
            nxt = children[node].get(c)
            if nxt is None:
                nxt = len(children)
                children[node][c] = nxt
                children.append({})
                terminal.append(False)
            node = nxt
        terminal[node] = True

    # failure links and goto closure, breadth-first
    n = len(children)
    fail = [0] * n
    goto = [[0] * alphabet_size for _ in range(n)]
    queue = deque()
    for c in range(alphabet_size):
        child = children[0].get(c)
        if child is None:
            goto[0][c] = 0
        else:
            goto[0][c] = child
            queue.append(child)
    while queue:
        node = queue.popleft()
        terminal[node] = terminal[node] or terminal[fail[node]]
        for c in range(alphabet_size):
            child = children[node].get(c)
            if child is None:
                goto[node][c] = goto[fail[node]][c]
            else:
                fail[child] = goto[fail[node]][c]
                goto[node][c] = child
                queue.append(child)

    live = [i for i in range(n) if not terminal[i]]
    remap = {old: new for new, old in enumerate(live)}
    dead = len(live)
    delta = []
    for old in live:
        row = []
        for c in range(alphabet_size):
            t = goto[old][c]
            row.append(dead if terminal[t] else remap[t])
        delta.append(row)
    delta.append([dead] * alphabet_size)
    return Dfa(delta, 0, range(len(live)), dead=dead, alphabet_size=alphabet_size)


@dataclass(frozen=True)
class BuildReport:
    """Size diagnostics for one constraint spec."""
    spec: ConstraintSpec
    window: int
    unminimized_states: int       # live states + dead, as constructed
    unminimized_live_states: int  # excluding the dead state
    minimized_states: int         # excluding the dead state
    minimized_total: int


def build_report(spec: ConstraintSpec, budget: int | None = None) -> BuildReport:
    raw = build_direct(spec, budget)
    small = minimize(raw)
    return BuildReport(
        spec=spec,
        window=window_bound(spec),
        unminimized_states=raw.state_count,
        unminimized_live_states=raw.live_state_count(),
        minimized_states=small.live_state_count(),
        minimized_total=small.state_count,
    )
