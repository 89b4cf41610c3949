"""Dense univariate polynomials over Q with exact arithmetic.

Coefficients are ``fractions.Fraction`` values stored constant term
first, so ``RatPoly.of(1, -2, 16)`` is ``1 - 2t + 16t^2``.  The zero
polynomial is the empty tuple and has degree -1.  Instances are
immutable; every operation returns a new polynomial and no code path
touches floating point.

On top of ring arithmetic this module carries the root-arithmetic
toolbox the Weil-polynomial pipeline is built from:

* gcd over Q via a primitive polynomial remainder sequence on integer
  coefficients;
* resultants via the subresultant PRS (never a Sylvester determinant),
  generic over the coefficient domain so the same core serves Z, Q and
  Q[t];
* ``composed_product`` and ``power_roots``, the resultant
  constructions Res_x(f(x), x^deg(g) * g(t/x)) and Res_x(f(x), t - x^e)
  whose root multisets are {alpha*beta} and {alpha^e};
* cyclotomic polynomials by iterated exact division of t^d - 1, capped
  at phi(d) <= 64 so every detection scan stays exact;
* Sturm counting of real roots in an interval, and p-adic valuations.

JSON convention used across the package: a polynomial serializes as an
array of coefficient strings like ``["1", "-1/2", "1"]``, constant term
first.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, TypeVar, Union

from .errors import (
    BoundaryRoot,
    DivisionByZero,
    NonExactDivision,
    NotPrime,
    OrderTooLarge,
    ZeroConstantTerm,
)

CoeffLike = Union[Fraction, int, str]

#: Largest Euler phi value for which cyclotomic polynomials are computed.
#: Detection scans refuse (OrderTooLarge) rather than silently miss orders.
PHI_CAP = 64


def _frac(c: CoeffLike) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RatPoly:
    """Immutable dense polynomial over Q, constant coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[CoeffLike] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def of(cls, *coeffs: CoeffLike) -> "RatPoly":
        return cls(coeffs)

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls()

    @classmethod
    def one(cls) -> "RatPoly":
        return cls((1,))

    @classmethod
    def t(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: CoeffLike = 1) -> "RatPoly":
        if n < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls([0] * n + [c])

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RatPoly":
        return cls(Fraction(s) for s in items)

    def to_strings(self) -> list[str]:
        """Coefficient strings, constant first; the zero polynomial is ["0"]."""
        if not self.coeffs:
            return ["0"]
        return [str(c) for c in self.coeffs]

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RatPoly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RatPoly('0')"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = f"{abs(c)}" if (abs(c) != 1 or i == 0) else ""
            var = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            term = f"{mag}*{var}" if mag and var else mag + var
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        s = s[2:] if s.startswith("+ ") else "-" + s[2:]
        return f"RatPoly('{s}')"

    # -- ring arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly((other,))
        return None

    def __add__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "RatPoly":
        return -(self - other)

    def __mul__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = RatPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: object) -> tuple["RatPoly", "RatPoly"]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero("polynomial division by zero")
        if self.degree < o.degree:
            return RatPoly(), self
        rem = list(self.coeffs)
        dq = self.degree - o.degree
        quo = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[o.degree + i] / lead
            quo[i] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[i + j] -= c * b
        return RatPoly(quo), RatPoly(rem[: o.degree])

    def __floordiv__(self, other: object) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: object) -> "RatPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        """Quotient self/other, raising NonExactDivision on a nonzero remainder."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise NonExactDivision(f"{self!r} is not divisible by {other!r}")
        return q

    # -- evaluation and shape ----------------------------------------------------

    def __call__(self, x: CoeffLike) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reverse(self) -> "RatPoly":
        """t^deg * f(1/t): the coefficient tuple reversed.

        Needs f(0) != 0, otherwise the degree would silently drop.
        """
        if self.constant == 0:
            raise ZeroConstantTerm("reverse needs a nonzero constant term")
        return RatPoly(reversed(self.coeffs))

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return RatPoly(c / lead for c in self.coeffs)


# -- integer scaling helpers ----------------------------------------------------


def _int_coeffs(f: RatPoly) -> list[int]:
    """Integer coefficient list of f scaled by the lcm of its denominators."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in f.coeffs]


def _primitive_int(cs: Sequence[int]) -> list[int]:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return list(cs) if g in (0, 1) else [c // g for c in cs]


def primitive_positive(f: RatPoly) -> RatPoly:
    """f scaled to primitive integer coefficients with positive leading one."""
    if f.is_zero:
        return f
    cs = _primitive_int(_int_coeffs(f))
    if cs[-1] < 0:
        cs = [-c for c in cs]
    return RatPoly(cs)


def _primitive_same_sign(f: RatPoly) -> RatPoly:
    """f scaled by a positive rational to primitive integer coefficients.

    Sign-preserving, so safe inside Sturm chains.
    """
    if f.is_zero:
        return f
    return RatPoly(_primitive_int(_int_coeffs(f)))


# -- root extraction --------------------------------------------------------------


def _div_linear(f: RatPoly, c: Fraction) -> RatPoly:
    """Quotient of f by (t - c), assuming f(c) == 0 (synthetic division)."""
    out = [Fraction(0)] * f.degree
    acc = Fraction(0)
    for i in range(f.degree, 0, -1):
        acc = f.coeffs[i] + c * acc
        out[i - 1] = acc
    return RatPoly(out)


def factor_out_root(f: RatPoly, c: CoeffLike) -> tuple[int, RatPoly]:
    """Multiplicity of the root c in f, and the root-free quotient.

    f = (t - c)^mult * quotient, except that for c = 1 the factor is
    written as (1 - t)^mult so a constant term of 1 survives into the
    quotient: factor_out_root((1-t)**23, 1) == (23, RatPoly.one()).
    """
    if f.is_zero:
        raise ValueError("cannot factor roots out of the zero polynomial")
    c = _frac(c)
    mult = 0
    g = f
    while not g.is_zero and g.degree >= 1 and g(c) == 0:
        g = _div_linear(g, c)
        mult += 1
    if c == 1 and mult % 2 == 1:
        g = -g
    return mult, g


# -- gcd ----------------------------------------------------------------------------


def _prem(A: list, B: list) -> list:
    """Pseudo-remainder lc(B)^(dA-dB+1) * A mod B over any integral domain.

    A and B are trimmed coefficient lists (constant first) with
    deg A >= deg B >= 0.  Works for int and RatPoly entries alike.
    """
    dA, dB = len(A) - 1, len(B) - 1
    lead = B[-1]
    R = list(A)
    for i in range(dA - dB, -1, -1):
        c = R[dB + i]
        R = [lead * r for r in R]
        for j in range(dB + 1):
            R[i + j] = R[i + j] - c * B[j]
        del R[-1]  # the x^(dB+i) term cancelled exactly
    while R and not R[-1]:
        R.pop()
    return R


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over Q, computed by a primitive PRS on integer coefficients."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    A = _primitive_int(_int_coeffs(f))
    B = _primitive_int(_int_coeffs(g))
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _prem(A, B)
        A, B = B, _primitive_int(R)
    return RatPoly(A).monic()


# -- resultants -------------------------------------------------------------------


def _res_prs(A: list, B: list, *, div: Callable, zero, one):
    """Resultant of two nonzero coefficient lists over an integral domain.

    Subresultant PRS (pseudo-remainders with exact division by g*h^delta),
    which keeps intermediate entries at determinant size instead of the
    exponential growth of a naive Euclidean sequence.  ``div`` must be the
    domain's exact division.
    """
    s = 1
    if len(A) - 1 < len(B) - 1:
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    if len(B) - 1 == 0:
        if len(A) - 1 == 0:
            return one
        acc = one
        for _ in range(len(A) - 1):
            acc = acc * B[0]
        return acc if s == 1 else -acc
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return zero  # common factor of positive degree
        denom = g
        for _ in range(delta):
            denom = denom * h
        A = B
        B = [div(c, denom) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            num = one
            for _ in range(delta):
                num = num * g
            hd = one
            for _ in range(delta - 1):
                hd = hd * h
            h = div(num, hd)
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    num = one
    for _ in range(dA):
        num = num * B[0]
    if dA > 1:
        hd = one
        for _ in range(dA - 1):
            hd = hd * h
        num = div(num, hd)
    return num if s == 1 else -num


def _int_exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division inside the subresultant PRS")
    return q


def _res_int(A: list[int], B: list[int]) -> int:
    """Integer resultant with content extracted up front for growth control."""
    ca, cb = 1, 1
    ga = _primitive_int(A)
    if ga and A and A[-1]:
        ca = A[-1] // ga[-1]
    gb = _primitive_int(B)
    if gb and B and B[-1]:
        cb = B[-1] // gb[-1]
    scale = ca ** (len(B) - 1) * cb ** (len(A) - 1)
    return scale * _res_prs(ga, gb, div=_int_exact_div, zero=0, one=1)


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g), exact over Q.

    Cleared to integer coefficients first, then the subresultant PRS; the
    denominator scaling Res(c*f, g) = c^deg(g) * Res(f, g) is undone at
    the end.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial")
    F = _int_coeffs(f)
    G = _int_coeffs(g)
    sf = f.coeffs[-1] / F[-1]  # f = sf * F
    sg = g.coeffs[-1] / G[-1]
    return sf ** g.degree * sg ** f.degree * Fraction(_res_int(F, G))


def _res_over_polyring(A: list[RatPoly], B: list[RatPoly]) -> RatPoly:
    return _res_prs(
        A, B, div=RatPoly.exact_div, zero=RatPoly.zero(), one=RatPoly.one()
    )


def composed_product(f: RatPoly, g: RatPoly) -> RatPoly:
    """Polynomial whose root multiset is {alpha * beta : f(alpha) = g(beta) = 0}.

    Computed as Res_x(f(x), x^deg(g) * g(t/x)) over Q[t] and normalized to
    primitive integer coefficients with positive leading coefficient.
    Degree multiplies: deg = deg(f) * deg(g).
    """
    if f.is_zero or g.is_zero:
        raise ValueError("composed product of the zero polynomial")
    if f.constant == 0 or g.constant == 0:
        raise ZeroConstantTerm("composed product needs nonzero constant terms")
    if f.degree == 0 or g.degree == 0:
        return RatPoly.one()
    m = g.degree
    A = [RatPoly((c,)) for c in f.coeffs]
    B = [RatPoly.monomial(m - i, g.coeffs[m - i]) for i in range(m + 1)]
    return primitive_positive(_res_over_polyring(A, B))


def power_roots(f: RatPoly, e: int) -> RatPoly:
    """Polynomial whose root multiset is {alpha^e : f(alpha) = 0}.

    Computed as Res_x(f(x), t - x^e), same normalization as
    composed_product.  Degree is preserved.
    """
    if f.is_zero:
        raise ValueError("power_roots of the zero polynomial")
    if e < 1:
        raise ValueError("power exponent must be >= 1")
    if f.degree == 0:
        return RatPoly.one()
    A = [RatPoly((c,)) for c in f.coeffs]
    B = [RatPoly.zero()] * (e + 1)
    B[0] = RatPoly.t()
    B[e] = RatPoly((-1,))
    return primitive_positive(_res_over_polyring(A, B))


# -- cyclotomic polynomials ----------------------------------------------------------


def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError("euler_phi needs d >= 1")
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            result -= result // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        result -= result // n
    return result


@functools.lru_cache(maxsize=None)
def _cyclotomic_cached(d: int) -> RatPoly:
    poly = RatPoly.monomial(d, 1) - RatPoly.one()
    for e in range(1, d):
        if d % e == 0:
            poly = poly.exact_div(_cyclotomic_cached(e))
    return poly


def cyclotomic(d: int) -> RatPoly:
    """The d-th cyclotomic polynomial, by iterated exact division of t^d - 1.

    Guarded at phi(d) <= 64 (OrderTooLarge beyond): detection scans in this
    package never need larger orders, and the bound keeps every scan exact.
    """
    if d < 1:
        raise ValueError("cyclotomic order must be >= 1")
    if euler_phi(d) > PHI_CAP:
        raise OrderTooLarge(f"phi({d}) exceeds the exact detection cap {PHI_CAP}")
    return _cyclotomic_cached(d)


# -- Sturm counting -----------------------------------------------------------------


def sturm_roots_in_interval(f: RatPoly, lo: CoeffLike, hi: CoeffLike) -> int:
    """Exact count of distinct real roots of f in (lo, hi].

    Callers are expected to pass a squarefree f (divide by gcd(f, f')
    first).  Endpoints must not be roots; BoundaryRoot otherwise.  The
    chain is reduced to primitive integer coefficients after every
    remainder step, scaling by positive rationals only so sign variations
    are untouched.
    """
    if f.is_zero:
        raise ValueError("Sturm count of the zero polynomial")
    lo, hi = _frac(lo), _frac(hi)
    if lo >= hi:
        raise ValueError("empty interval")
    if f(lo) == 0 or f(hi) == 0:
        raise BoundaryRoot(f"interval endpoint is a root of {f!r}")
    chain = [_primitive_same_sign(f)]
    d = f.derivative()
    if not d.is_zero:
        chain.append(_primitive_same_sign(d))
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero:
            break
        chain.append(_primitive_same_sign(r))

    def variations(x: Fraction) -> int:
        signs = [s(x) for s in chain]
        count = 0
        prev = 0
        for v in signs:
            if v == 0:
                continue
            cur = 1 if v > 0 else -1
            if prev and cur != prev:
                count += 1
            prev = cur
        return count

    return variations(lo) - variations(hi)


# -- valuations -----------------------------------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3 * 10**24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _ival(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x: CoeffLike, p: int) -> int | float:
    """p-adic valuation of a rational; +infinity for 0, NotPrime for bad p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    x = _frac(x)
    if x == 0:
        return math.inf
    return _ival(x.numerator, p) - _ival(x.denominator, p)


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = max(n + 1, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate
