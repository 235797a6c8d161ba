"""Exact word counting and linear recurrences from transfer matrices.

A complete DFA yields a counting system (M, v, w) with a(n) = v M^n w.
From there this module derives annihilating polynomials two independent
ways: by computing the matrix minimal polynomial and stripping removable
irreducible factors (checked against sequence windows), and by exact
rational elimination on the sequence alone.  Dominant-root asymptotics
close the loop.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence as SeqABC

import numpy as np

from .automaton import Dfa
from .polys import (
    Polynomial,
    RootInterval,
    dominant_root,
    exact_div,
    factor_int_poly,
)

__all__ = [
    "CountingSystem",
    "Polynomial",
    "RootInterval",
    "AsymptoticFit",
    "InconclusiveError",
    "transfer_matrix",
    "sequence",
    "window_apply",
    "matrix_min_poly",
    "factor_int_poly",
    "lda",
    "minimal_recurrence",
    "dominant_root",
    "asymptotic_fit",
]

_MAX_MINPOLY_STATES = 4000


class InconclusiveError(Exception):
    """No recurrence found within the degree budget; not a claim about the sequence."""


class CountingSystem:
    """Transfer matrix M with start vector v and acceptance vector w.

    M[i][j] is the number of letters moving state i to state j, so row
    sums equal the alphabet size and a(n) = v M^n w counts accepted
    words of length n.  The matrix is kept sparse internally (each row
    has at most k distinct targets); M materializes a dense copy.
    """

    __slots__ = ("rows", "v", "w")

    def __init__(self, rows, v, w):
        self.rows = tuple(tuple(sorted(r)) for r in rows)
        self.v = tuple(int(x) for x in v)
        self.w = tuple(int(x) for x in w)
        n = len(self.rows)
        if len(self.v) != n or len(self.w) != n:
            raise ValueError("vector lengths must match the matrix size")
        for r in self.rows:
            for j, m in r:
                if not 0 <= j < n or m <= 0:
                    raise ValueError("malformed transfer row")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def alphabet_size(self) -> int:
        return sum(m for _, m in self.rows[0]) if self.rows else 0

    @property
    def M(self) -> list[list[int]]:
        """Dense matrix copy; built on demand."""
        n = self.size
        out = [[0] * n for _ in range(n)]
        for i, r in enumerate(self.rows):
            for j, m in r:
                out[i][j] = m
        return out


def transfer_matrix(d: Dfa) -> CountingSystem:
    """Counting system of a complete DFA, dead state included."""
    n = d.state_count
    rows = []
    for q in range(n):
        counts: dict[int, int] = {}
        for target in d.delta[q]:
            counts[target] = counts.get(target, 0) + 1
        rows.append(tuple(counts.items()))
    v = [0] * n
    v[d.start] = 1
    w = [0] * n
    for q in d.accepting:
        w[q] = 1
    return CountingSystem(rows, v, w)


def sequence(cs: CountingSystem, n_max: int) -> list[int]:
    """Exact a(0..n_max) by iterated vector-matrix products."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    accept = [i for i, wi in enumerate(cs.w) if wi]
    x = list(cs.v)
    out = []
    for n in range(n_max + 1):
        out.append(sum(x[i] for i in accept))
        if n == n_max:
            break
        nxt = [0] * cs.size
        for i, xi in enumerate(x):
            if xi:
                for j, m in cs.rows[i]:
                    nxt[j] += xi * m
        x = nxt
    return out


def window_apply(q: Polynomial, a: SeqABC, i: int) -> int:
    """Dot product of q's coefficients with the window a(i..i+deg q)."""
    d = max(q.degree, 0)
    if i < 0 or i + d >= len(a):
        raise ValueError(f"window [{i}, {i + d}] outside sequence of length {len(a)}")
    return sum(c * a[i + j] for j, c in enumerate(q.coeffs))


def _annihilates(q: Polynomial, a: SeqABC, start: int, stop: int | None = None) -> bool:
    """True when every window at start <= i < stop (or end of data) vanishes."""
    if stop is None:
        stop = len(a) - q.degree
    stop = min(stop, len(a) - q.degree)
    return all(window_apply(q, a, i) == 0 for i in range(start, stop))


# ---------------------------------------------------------------------------
# matrix minimal polynomial

def _sparse_rows(M) -> tuple[tuple[tuple[int, int], ...], ...]:
    if isinstance(M, CountingSystem):
        return M.rows
    rows = []
    for r in M:
        rows.append(tuple((j, int(x)) for j, x in enumerate(r) if x))
    return tuple(rows)


def _projection_terms(rows, u, x, count, p):
    """u . M^t . x for t = 0..count-1, all modulo p."""
    terms = []
    x = list(x)
    n = len(rows)
    for _ in range(count):
        terms.append(sum(u[i] * x[i] for i in range(n)) % p)
        nxt = [0] * n
        for i, row in enumerate(rows):
            xi = x[i]
            if xi:
                for j, m in row:
                    nxt[j] = (nxt[j] + m * xi)
        x = [v % p for v in nxt]
    return terms


def _berlekamp_massey(s: list[int], p: int) -> list[int]:
    """Connection polynomial c (ascending, c[0]=1) of the shortest LFSR mod p.

    Satisfies s[n] + c[1] s[n-1] + ... + c[L] s[n-L] = 0 for L <= n < len(s).
    """
    c, b = [1], [1]
    L, m, bb = 0, 1, 1
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d = (d + c[i] * s[n - i]) % p
        if d == 0:
            m += 1
            continue
        coef = d * pow(bb, p - 2, p) % p
        if 2 * L <= n:
            old = c[:]
            if len(c) < len(b) + m:
                c = c + [0] * (len(b) + m - len(c))
            for i, bi in enumerate(b):
                c[i + m] = (c[i + m] - coef * bi) % p
            L, b, bb, m = n + 1 - L, old, d, 1
        else:
            if len(c) < len(b) + m:
                c = c + [0] * (len(b) + m - len(c))
            for i, bi in enumerate(b):
                c[i + m] = (c[i + m] - coef * bi) % p
            m += 1
    return c[:L + 1] + [0] * (L + 1 - len(c))


def _min_poly_mod(rows, p, rng, n):
    """Monic candidate (ascending coefficients mod p) from one random projection."""
    u = [rng.randrange(p) for _ in range(n)]
    x = [rng.randrange(p) for _ in range(n)]
    terms: list[int] = []
    count = min(128, 2 * n + 4)
    while True:
        terms = _projection_terms(rows, u, x, count, p)
        conn = _berlekamp_massey(terms, p)
        L = len(conn) - 1
        if 2 * L + 16 <= count or count >= 2 * n + 4:
            break
        count = min(count * 2, 2 * n + 4)
    # reverse the connection polynomial: X^L + c1 X^(L-1) + ... + cL
    return list(reversed(conn))


def _random_prime(rng, lo=1 << 29, hi=1 << 30):
    while True:
        c = rng.randrange(lo, hi) | 1
        if all(c % q for q in (3, 5, 7, 11, 13)) and _is_prime(c):
            return c


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % a == 0:
            return n == a
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _crt_symmetric(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    x %= m
    return x - m if 2 * x > m else x


def _verify_annihilates_matrix(p: Polynomial, rows, n: int) -> bool:
    """Certified check that p(M) = 0, via modular Horner with a CRT bound.

    Entries of M^t are bounded by R^t with R the maximum absolute row
    sum, so every entry of p(M) lies in [-B, B] for
    B = sum|p_i| * R^deg.  Vanishing modulo primes whose product exceeds
    2B therefore proves exact vanishing.
    """
    if p.is_zero():
        return False
    R = max((sum(abs(m) for _, m in r) for r in rows), default=0)
    bound = sum(abs(c) for c in p.coeffs) * max(R, 1) ** p.degree
    # prime cap keeping float64 matrix products exact: q^2 * n < 2^53
    q_hi = math.isqrt((1 << 53) // max(n, 1)) - 1
    q_lo = max(3, q_hi // 2)
    dense = np.zeros((n, n), dtype=np.float64)
    for i, row in enumerate(rows):
        for j, m in row:
            dense[i, j] = m
    eye = np.eye(n, dtype=np.float64)
    primes: list[int] = []
    q = q_lo
    need = 2 * bound + 1
    have = 1
    while have < need:
        q = _next_prime_above(q)
        primes.append(q)
        have *= q
    for q in primes:
        Mq = np.mod(dense, q)
        H = eye * 1.0  # leading coefficient handled in the first fold
        coeffs = p.coeffs
        H = H * (coeffs[-1] % q)
        for c in reversed(coeffs[:-1]):
            H = np.mod(H @ Mq + (c % q) * eye, q)
        if np.any(H):
            return False
    return True


def _next_prime_above(n: int) -> int:
    n += 1 + (n % 2)
    while not _is_prime(n):
        n += 2
    return n


def matrix_min_poly(M, seed: int = 0) -> Polynomial:
    """Minimal polynomial of a square integer matrix, monic over the integers.

    Candidates come from Berlekamp-Massey applied to random projection
    sequences u M^t x modulo two independent random primes; a candidate
    is accepted only after an exact divisibility certificate (p(M) = 0
    checked with a rigorous coefficient bound).  Degree disagreements
    between the primes trigger a retry with fresh primes.

    Accepts a CountingSystem or any square matrix given as rows.
    """
    rows = _sparse_rows(M)
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n > _MAX_MINPOLY_STATES:
        raise ValueError(f"matrix size {n} exceeds the {_MAX_MINPOLY_STATES} limit")
    rng = random.Random(seed)
    used: set[int] = set()
    for attempt in range(8):
        k_primes = 2 + attempt
        primes = []
        while len(primes) < k_primes:
            q = _random_prime(rng)
            if q not in used:
                used.add(q)
                primes.append(q)
        cands = [_min_poly_mod(rows, q, rng, n) for q in primes]
        degs = {len(c) - 1 for c in cands}
        if len(degs) != 1:
            continue
        coeffs = [
            _crt_symmetric([c[i] for c in cands], primes)
            for i in range(len(cands[0]))
        ]
        cand = Polynomial(coeffs)
        if cand.lead != 1:
            continue
        if _verify_annihilates_matrix(cand, rows, n):
            return cand
    raise ArithmeticError("minimal polynomial not confirmed within retry budget")


# ---------------------------------------------------------------------------
# annihilator extraction

def lda(p: Polynomial, a: SeqABC) -> tuple[Polynomial, int]:
    """Strip removable irreducible factors from an annihilator.

    p must annihilate every available window of a.  Each irreducible
    factor is dropped when the quotient still annihilates the first
    deg(quotient) windows (that check extends to all windows); powers of
    X are not reported in the result but as the window offset n0.
    Returns (q, n0) with q primitive, positive leading coefficient, and
    q verified against every available window at i >= n0.
    """
    p = p.primitive()
    if p.degree < 1:
        raise ValueError("annihilator must have positive degree")
    if len(a) < 2 * p.degree:
        raise ValueError("sequence too short for the given annihilator")
    if not _annihilates(p, a, 0):
        raise ValueError("polynomial does not annihilate the sequence")

    shift = p.x_multiplicity()
    h = p.shift_down(shift)
    occurrences: list[Polynomial] = []
    for q, mult in factor_int_poly(h):
        occurrences.extend([q] * mult)
    occurrences.sort(key=lambda q: q.degree)

    for q in occurrences:
        r = exact_div(h, q)
        if r.degree < 1:
            continue
        if len(a) - r.degree <= shift:
            continue  # not enough data to justify the strip
        if _annihilates(r, a, shift, shift + r.degree):
            h = r

    # smallest offset from which h annihilates every remaining window
    n0 = 0
    for i in range(len(a) - h.degree - 1, -1, -1):
        if window_apply(h, a, i) != 0:
            n0 = i + 1
            break
    if not _annihilates(h, a, n0):
        raise AssertionError("stripped annihilator failed final verification")
    return h.primitive(), n0


def _nullspace(rows: list[list[int]]) -> list[list[Fraction]]:
    """Basis of the right kernel, by exact Gauss-Jordan elimination."""
    cols = len(rows[0])
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for pi, pc in enumerate(pivots):
            v[pc] = -m[pi][free]
        basis.append(v)
    return basis


def _primitive_from_fractions(vec: list[Fraction]) -> Polynomial:
    denom = math.lcm(*(f.denominator for f in vec))
    ints = [int(f * denom) for f in vec]
    return Polynomial(ints).primitive()


def minimal_recurrence(a: SeqABC, max_degree: int | None = None) -> tuple[Polynomial, int]:
    """Lowest-degree annihilator of a sequence, with its window offset.

    Works from the terms alone: for each degree d the windows drawn from
    the tail half of the sequence (clear of any transient) are solved
    exactly over the rationals; the first degree with a kernel wins, and
    the offset n0 is the smallest index from which every window
    vanishes.  Raises InconclusiveError when no recurrence is found
    within the budget.
    """
    n = len(a)
    if n < 4:
        raise InconclusiveError("sequence too short")
    if max_degree is None:
        max_degree = (n - 4) // 3
    for d in range(0, max_degree + 1):
        i_hi = n - d - 1
        if i_hi < 0:
            break
        lo = max(0, min(i_hi // 2, i_hi - (2 * d + 8)))
        rows = [[a[i + j] for j in range(d + 1)] for i in range(lo, i_hi + 1)]
        kernel = _nullspace(rows)
        if not kernel:
            continue
        assert len(kernel) == 1, "minimal annihilator must be unique up to scale"
        q = _primitive_from_fractions(kernel[0])
        if q.degree != d:
            continue
        # powers of X only shift the window; fold them into the offset
        shift = q.x_multiplicity()
        q = q.shift_down(shift)
        n0 = 0
        for i in range(len(a) - q.degree - 1, -1, -1):
            if window_apply(q, a, i) != 0:
                n0 = i + 1
                break
        if n0 > lo + shift:
            continue  # kernel fit the sampled windows but not the tail proper
        if n < 2 * d + n0:
            continue
        return q, n0
    raise InconclusiveError(f"no annihilator up to degree {max_degree}")


# ---------------------------------------------------------------------------
# asymptotics

@dataclass(frozen=True)
class AsymptoticFit:
    """Growth constants fitted from exact terms against a known root.

    Single-root mode fills c; the even/odd split mode (for spectra with
    a +alpha/-alpha real pair) fills c1 and c2.  drift is the relative
    spread of the fitted ratios over the averaging window; when it
    exceeds the tolerance, converged is False and the values are
    reported for diagnostics only.
    """
    alpha: float
    c: float | None
    c1: float | None
    c2: float | None
    drift: float
    converged: bool


def _deflation_cofactor(annihilator: Polynomial, alpha) -> Polynomial:
    """The annihilator with the irreducible factor owning root alpha removed.

    Applying the cofactor as a sliding window annihilates every root of
    the recurrence except those sharing alpha's irreducible factor, so
    the windowed sequence converges like the gaps within that one factor
    instead of the full spectrum.
    """
    if isinstance(alpha, RootInterval):
        lo, hi = alpha.lo, alpha.hi
    else:
        pad = Fraction(1, 10 ** 6)
        lo, hi = Fraction(alpha) - pad, Fraction(alpha) + pad
    owners = []
    cofactor = Polynomial([1])
    for f, mult in factor_int_poly(annihilator):
        if f.degree >= 1 and f(lo) * f(hi) <= 0:
            owners.append(f)
        else:
            cofactor = cofactor * f ** mult
    if len(owners) != 1:
        raise ValueError("alpha does not isolate one irreducible factor")
    return cofactor


def asymptotic_fit(a: SeqABC, alpha, annihilator: Polynomial | None = None,
                   split_parity: bool = False,
                   drift_tolerance: float = 0.02) -> AsymptoticFit:
    """Fit a(n) ~ C alpha^n (or C1 alpha^n + C2 (-alpha)^n when split).

    Single-root mode averages a(n)/alpha^n over the last quarter of the
    terms and reports the relative spread as drift.  When the sequence's
    annihilator is supplied, its other irreducible factors are divided
    out of the data first (an exact integer windowing), which removes
    subdominant roots that would otherwise decay too slowly to average
    away.  alpha may be a float, Fraction, or a certified root interval.
    """
    alpha_f = float(alpha)
    if alpha_f <= 1:
        raise ValueError("alpha must exceed 1")
    scale = 1.0
    terms: SeqABC = a
    if annihilator is not None:
        h = _deflation_cofactor(annihilator, alpha)
        if h.degree >= 1:
            terms = [window_apply(h, a, i) for i in range(len(a) - h.degree)]
            x = alpha.midpoint if isinstance(alpha, RootInterval) else Fraction(alpha_f)
            scale = float(h(x))
            if scale == 0:
                raise ValueError("alpha appears to be a repeated root")
    n = len(terms)
    if n < 8:
        raise ValueError("need at least 8 terms")
    start = (3 * n) // 4
    indices = range(start, n)
    ratios = [terms[i] / (scale * alpha_f ** i) for i in indices]
    even = [r for i, r in zip(indices, ratios) if i % 2 == 0]
    odd = [r for i, r in zip(indices, ratios) if i % 2 == 1]
    if not even or not odd:
        raise ValueError("need terms of both parities")

    def spread(vals, center):
        if not vals or center == 0:
            return math.inf
        return (max(vals) - min(vals)) / abs(center)

    if not split_parity:
        c = math.fsum(ratios) / len(ratios)
        drift = spread(ratios, c)
        return AsymptoticFit(alpha_f, c, None, None, drift, drift <= drift_tolerance)

    s_plus = math.fsum(even) / len(even)
    s_minus = math.fsum(odd) / len(odd)
    c1 = (s_plus + s_minus) / 2
    c2 = (s_plus - s_minus) / 2
    drift = max(spread(even, c1), spread(odd, c1))
    return AsymptoticFit(alpha_f, None, c1, c2, drift, drift <= drift_tolerance)
