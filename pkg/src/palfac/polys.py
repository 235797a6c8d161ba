"""Exact integer/rational polynomial arithmetic.

Everything here is deterministic and exact: arbitrary-precision integer
coefficients, Fraction evaluation, factorization over the integers by the
classical route (squarefree split, factorization modulo a good prime,
Hensel lifting, subset recombination), and Sturm-sequence real root
isolation with certified rational interval endpoints.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

MAX_FACTOR_DEGREE = 128


class NoRealRootError(ValueError):
    """Raised when a real root is requested of a polynomial without one."""


class Polynomial:
    """Integer-coefficient polynomial, coefficients stored ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @staticmethod
    def x_power(n: int, coeff: int = 1) -> "Polynomial":
        return Polynomial([0] * n + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-x for x in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial([other * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "X" if i == 1 else f"X^{i}"
                term = var if mag == 1 else f"{mag}{var}"
            parts.append(f"{sign}{term}" if not parts else f" {sign} {term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        """GCD of coefficients, carrying the sign of the leading one."""
        if not self.coeffs:
            return 0
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return -g if self.lead < 0 else g

    def primitive(self) -> "Polynomial":
        """Content removed; leading coefficient made positive."""
        c = self.content()
        if c in (0, 1):
            return self
        return Polynomial([x // c for x in self.coeffs])

    def shift_down(self, n: int) -> "Polynomial":
        """Divide by X^n (requires the n lowest coefficients to vanish)."""
        if any(self.coeffs[:n]):
            raise ValueError("not divisible by that power of X")
        return Polynomial(self.coeffs[n:])

    def x_multiplicity(self) -> int:
        """Largest n with X^n dividing the polynomial (0 for the zero poly)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0


def divmod_exact(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Division over the rationals, demanding an integer quotient/remainder.

    Valid whenever b is monic or the division is exact; raises otherwise.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * max(0, len(rem) - len(b.coeffs) + 1)
    bl = Fraction(b.lead)
    for i in range(len(rem) - len(b.coeffs), -1, -1):
        f = rem[i + len(b.coeffs) - 1] / bl
        q[i] = f
        if f:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= f * bc
    def to_int(fracs):
        out = []
        for f in fracs:
            if f.denominator != 1:
                raise ValueError("division not exact over the integers")
            out.append(f.numerator)
        return out
    return Polynomial(to_int(q)), Polynomial(to_int(rem))


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b with zero remainder required."""
    q, r = divmod_exact(a, b)
    if not r.is_zero():
        raise ValueError(f"{b} does not divide {a}")
    return q


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        exact_div(a, b)
        return True
    except ValueError:
        return False


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for j, bc in enumerate(b):
            a[off + j] -= f * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, primitive with positive leading coefficient."""
    fa = [Fraction(c) for c in a.coeffs]
    fb = [Fraction(c) for c in b.coeffs]
    while fb:
        fa, fb = fb, _frac_rem(fa, fb)
    if not fa:
        return Polynomial()
    # clear denominators, then normalize
    denom = math.lcm(*(f.denominator for f in fa))
    return Polynomial([int(f * denom) for f in fa]).primitive()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: p = content * prod A_i^i with the A_i squarefree."""
    p = p.primitive()
    out = []
    g = gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    c = exact_div(p, g)
    d = exact_div(p.derivative(), g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c2 = exact_div(c, a)
        d = exact_div(d, a) - c2.derivative()
        c = c2
        i += 1
    return out


# ---------------------------------------------------------------------------
# factorization modulo a prime (Cantor–Zassenhaus)

def _pmod_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _pmod_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod_trim(out)

def _pmod_divmod(a, b, p):
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        f = (a[i + len(b) - 1] * inv) % p
        q[i] = f
        if f:
            for j, bc in enumerate(b):
                a[i + j] = (a[i + j] - f * bc) % p
    return _pmod_trim(q), _pmod_trim(a[:len(b) - 1])

def _pmod_gcd(a, b, p):
    a, b = a[:], b[:]
    while b:
        a, b = b, _pmod_divmod(a, b, p)[1]
    inv = pow(a[-1], p - 2, p)
    return [(x * inv) % p for x in a]

def _pmod_powmod(base, e, mod, p):
    result = [1]
    base = _pmod_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pmod_divmod(_pmod_mul(result, base, p), mod, p)[1]
        base = _pmod_divmod(_pmod_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result

def _pmod_monic(a, p):
    inv = pow(a[-1], p - 2, p)
    return [(x * inv) % p for x in a]


def _distinct_degree(f, p):
    """[(product of irreducible factors of degree d, d)] for monic squarefree f."""
    out = []
    h = [0, 1]  # X, iterated through the Frobenius
    d = 0
    f = f[:]
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _pmod_powmod(h, p, f, p)
        diff = h[:] + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        diff = _pmod_trim(diff)
        g = f[:] if not diff else _pmod_gcd(f, diff, p)
        if len(g) > 1:
            out.append((g, d))
            f = _pmod_divmod(f, g, p)[0]
            if len(f) > 1:
                h = _pmod_divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree_split(f, d, p, rng):
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _pmod_trim(a)
        if len(a) < 2:
            continue
        g = _pmod_gcd(f, a, p)
        if 1 < len(g) < len(f):
            break
        # a^((p^d - 1)/2) - 1 splits the factors into quadratic residues
        b = _pmod_powmod(a, (p ** d - 1) // 2, f, p)
        b = b[:]
        if not b:
            b = [0]
        b[0] = (b[0] - 1) % p
        b = _pmod_trim(b)
        if not b:
            continue
        g = _pmod_gcd(f, b, p)
        if 1 < len(g) < len(f):
            break
    left = _equal_degree_split(g, d, p, rng)
    right = _equal_degree_split(_pmod_divmod(f, g, p)[0], d, p, rng)
    return left + right


def _factor_mod_p(f, p, rng):
    """Irreducible monic factors of monic squarefree f over GF(p)."""
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree_split(g, d, p, rng))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting

def _pmod_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    for i in range(len(out)):
        out[i] %= p
    return _pmod_trim(out)


def _ext_euclid(a, b, p):
    """(s, t) with s*a + t*b = gcd = 1 (mod p) for coprime monic-ish a, b."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pmod_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pmod_sub(s0, _pmod_mul(q, s1, p), p)
        t0, t1 = t1, _pmod_sub(t0, _pmod_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    s0 = [(x * inv) % p for x in s0]
    t0 = [(x * inv) % p for x in t0]
    return s0, t0


def _centered(x: int, m: int) -> int:
    x %= m
    return x - m if 2 * x > m else x


def _mod_list(a, m):
    return _trim_int([x % m for x in a])


def _hensel_pair(f: list[int], g: list[int], h: list[int], p: int, k: int):
    """Lift monic f = g*h (mod p) to mod p^k by quadratic Hensel steps."""
    s, t = _ext_euclid(g, h, p)
    m = p
    target = p ** k
    while m < target:
        m2 = min(m * m, target)
        e = _mod_list(_poly_add_int(f, [-x for x in _poly_mul_int(g, h)]), m2)
        q, r = _poly_divmod_mod(_poly_mul_int(s, e), h, m2)
        g = _mod_list(_poly_add_int(g, _poly_add_int(_poly_mul_int(t, e),
                                                     _poly_mul_int(q, g))), m2)
        h = _mod_list(_poly_add_int(h, r), m2)
        # refresh s, t so s*g + t*h = 1 holds mod m2
        b = _poly_add_int(_poly_mul_int(s, g), _poly_mul_int(t, h))
        b = _mod_list(_poly_add_int(b, [-1]), m2)
        c, d = _poly_divmod_mod(_poly_mul_int(s, b), h, m2)
        s = _mod_list(_poly_add_int(s, [-x for x in d]), m2)
        tb_cg = _poly_add_int(_poly_mul_int(t, b), _poly_mul_int(c, g))
        t = _mod_list(_poly_add_int(t, [-x for x in tb_cg]), m2)
        m = m2
    return g, h


def _trim_int(a):
    while a and a[-1] == 0:
        a.pop()
    return a

def _poly_mul_int(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out

def _poly_add_int(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return out

def _poly_divmod_mod(a, b, m):
    """Division mod m by b with lead(b) invertible mod m (b monic here)."""
    a = [x % m for x in a]
    inv = pow(b[-1], -1, m)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        f = (a[i + len(b) - 1] * inv) % m
        q[i] = f
        if f:
            for j, bc in enumerate(b):
                a[i + j] = (a[i + j] - f * bc) % m
    return _trim_int(q), _trim_int(a[:len(b) - 1])


def _hensel_multi(f: list[int], factors: list[list[int]], p: int, k: int):
    """Lift monic f = prod(factors) (mod p) to mod p^k, recursively pairing."""
    if len(factors) == 1:
        return [[c % (p ** k) for c in f]]
    half = len(factors) // 2
    g = [1]
    for fac in factors[:half]:
        g = [x % p for x in _poly_mul_int(g, fac)]
    h = [1]
    for fac in factors[half:]:
        h = [x % p for x in _poly_mul_int(h, fac)]
    g_lift, h_lift = _hensel_pair(f, _trim_int(g), _trim_int(h), p, k)
    return (_hensel_multi(g_lift, factors[:half], p, k) +
            _hensel_multi(h_lift, factors[half:], p, k))


def _mignotte_bound(p: Polynomial) -> int:
    norm = math.isqrt(sum(c * c for c in p.coeffs)) + 1
    return (2 ** p.degree) * norm * abs(p.lead)


def _factor_squarefree(p: Polynomial, rng: random.Random) -> list[Polynomial]:
    """Irreducible factors of a primitive squarefree polynomial, degree >= 1."""
    if p.degree == 1:
        return [p]
    lc = p.lead

    # a prime keeping the leading coefficient a unit and p squarefree mod q
    q = 2
    while True:
        q = _next_prime(q)
        if lc % q == 0:
            continue
        fq = [c % q for c in p.coeffs]
        d = _pmod_trim([(i * c) % q for i, c in enumerate(fq)][1:])
        if not d:
            continue
        if len(_pmod_gcd(fq[:], d, q)) == 1:
            break

    monic = _pmod_monic([c % q for c in p.coeffs], q)
    mod_factors = _factor_mod_p(monic, q, rng)
    if len(mod_factors) == 1:
        return [p]
    mod_factors.sort(key=len)

    bound = 2 * _mignotte_bound(p) + 1
    k = 1
    while q ** k < bound:
        k += 1
    pk = q ** k
    # lift the factorization of the monic associate p/lc
    inv = pow(lc, -1, pk)
    monic_f = [(c * inv) % pk for c in p.coeffs]
    lifted = _hensel_multi(monic_f, mod_factors, q, k)

    # subset recombination
    remaining = list(range(len(lifted)))
    current = p
    out: list[Polynomial] = []
    size = 1
    import itertools as _it
    while 2 * size <= len(remaining):
        found = True
        while found:
            found = False
            for combo in _it.combinations(remaining, size):
                prod = [current.lead % pk]
                for i in combo:
                    prod = [x % pk for x in _poly_mul_int(prod, lifted[i])]
                cand = Polynomial([_centered(c, pk) for c in prod]).primitive()
                if cand.degree < 1:
                    continue
                if divides(cand, current):
                    out.append(cand)
                    current = exact_div(current, cand)
                    remaining = [i for i in remaining if i not in combo]
                    found = True
                    break
            if 2 * size > len(remaining):
                break
        size += 1
    if current.degree >= 1:
        out.append(current.primitive())
    return out


def _next_prime(n: int) -> int:
    n += 1 + (n % 2 if n > 2 else 0)
    if n <= 2:
        return 2
    while True:
        for d in range(3, math.isqrt(n) + 1, 2):
            if n % d == 0:
                break
        else:
            return n
        n += 2


def factor_int_poly(p: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Irreducible factorization over the integers.

    Returns [(factor, multiplicity)] with primitive positive-lead factors,
    constants dropped; content and sign are recoverable from the input.
    The product of factor^multiplicity times the content equals the input.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree {p.degree} exceeds the {MAX_FACTOR_DEGREE} limit")
    rng = random.Random(seed)
    out: list[tuple[Polynomial, int]] = []
    work = p.primitive()
    xm = work.x_multiplicity()
    if xm:
        out.append((Polynomial.x_power(1), xm))
        work = work.shift_down(xm)
    if work.degree < 1:
        return out
    for sqfree, mult in squarefree_decomposition(work):
        for irr in _factor_squarefree(sqfree, rng):
            out.append((irr.primitive(), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


# ---------------------------------------------------------------------------
# real roots

@dataclass(frozen=True)
class RootInterval:
    """Certified interval [lo, hi] containing exactly one real root."""
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def _sturm_chain(p: Polynomial) -> list[list[Fraction]]:
    chain = [[Fraction(c) for c in p.coeffs]]
    d = [Fraction(c) for c in p.derivative().coeffs]
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _frac_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _eval_frac(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for coeffs in chain:
        v = _eval_frac(coeffs, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _roots_in(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi]."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _squarefree_part(p: Polynomial) -> Polynomial:
    g = gcd(p, p.derivative())
    return p.primitive() if g.degree == 0 else exact_div(p, g).primitive()


def real_root_count(p: Polynomial) -> int:
    """Number of distinct real roots."""
    if p.degree < 1:
        return 0
    p = _squarefree_part(p)
    b = cauchy_bound(p)
    chain = _sturm_chain(p)
    return _roots_in(chain, -b, b)


def cauchy_bound(p: Polynomial) -> Fraction:
    """Strict bound on the absolute value of every complex root."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    lead = abs(p.lead)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1])


def largest_real_root(p: Polynomial,
                      tolerance: Fraction = Fraction(1, 10 ** 12)) -> RootInterval:
    """The largest real root, certified to an interval of width <= tolerance.

    Raises NoRealRootError when the polynomial has no real root.
    """
    if p.degree < 1:
        raise NoRealRootError("constant polynomial")
    xm = p.x_multiplicity()
    if xm:
        # 0 is a root; the largest root is max(0, largest root of the rest)
        rest = p.shift_down(xm)
        if rest.degree >= 1:
            try:
                sub = largest_real_root(rest, tolerance)
                if sub.hi >= 0:
                    return sub
            except NoRealRootError:
                pass
        zero = Fraction(0)
        return RootInterval(zero, zero)
    if p.degree == 1:
        root = Fraction(-p.coeffs[0], p.coeffs[1])
        return RootInterval(root, root)

    p = _squarefree_part(p)
    b = cauchy_bound(p)
    chain = _sturm_chain(p)
    lo, hi = -b, b
    if _roots_in(chain, lo, hi) == 0:
        raise NoRealRootError(f"{p} has no real root")
    # keep the rightmost root-containing half until the interval is tight
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if _eval_frac(chain[0], mid) == 0:
            return RootInterval(mid, mid)
        if _roots_in(chain, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)


def dominant_root(p: Polynomial,
                  tolerance: Fraction = Fraction(1, 10 ** 12)) -> RootInterval:
    """Largest real root as a certified interval (alias used by callers)."""
    return largest_real_root(p, tolerance)
