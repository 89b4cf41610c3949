"""Analysis pipeline for integral Frobenius characteristic polynomials.

Input is a polynomial P2m with integer coefficients and constant term 1,
together with a context (p, q, m).  The pipeline

* twists it to Pm (coefficient i divided by q^(m*i)), putting the
  reciprocal roots on the unit circle when the input is a genuine
  weight-2m Weil polynomial;
* certifies q-admissibility exactly (coefficient ring, self-inversive
  symmetry, unit-circle roots via Sturm counting);
* scans for cyclotomic factors to decide semistability, and when a root
  of unity other than 1 is present, computes the base-change exponent r
  and re-analyzes over the degree-r extension;
* splits off the unit-root part (1-t)^a, leaving the transcendental
  factor Ptr;
* attaches Newton polygons and the K3-type verdict;
* runs a one-sided irreducibility certificate on Ptr (distinct-degree
  factorization patterns mod several primes);
* scans for pairwise multiplicative relations among the roots of Ptr
  (composed-product plus cyclotomic scan) and runs a bounded search for
  higher multiplicative relations.

Everything is exact; no step is numerical.  The result is a WeilReport
that serializes to a stable JSON dictionary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    BadConstantTerm,
    BoundTooLarge,
    InputError,
    NotPrime,
    NotSelfInversive,
    NotSquarefree,
    OrderTooLarge,
    RootAtUnity,
    SchemaError,
    WrongDegree,
    ZeroConstantTerm,
)
from .newton import NewtonPolygon, is_k3_type, newton_polygon
from .ratpoly import (
    PHI_CAP,
    RatPoly,
    composed_product,
    cyclotomic,
    euler_phi,
    factor_out_root,
    is_prime,
    next_prime,
    poly_gcd,
    power_roots,
    primitive_positive,
    resultant,
    sturm_roots_in_interval,
)

PROVED = "proved"
INCONCLUSIVE = "inconclusive"

#: Exponent-sum cap for the bounded multiplicative-relation search.
N_CAP = 4
#: Cap on s*N (pairs times exponent bound); products square degrees fast.
SN_CAP = 24
#: Degree cap for composed-product scans: deg(C) = deg(Ptr)^2 must stay
#: within the cyclotomic detection bound.
PRODUCT_DEGREE_CAP = PHI_CAP


@dataclass(frozen=True)
class WeilContext:
    """Arithmetic context: characteristic p, field size q = p^e, weight 2m."""

    p: int
    q: int
    m: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        q = self.q
        if q < self.p:
            raise InputError(f"q = {q} is not a positive power of p = {self.p}")
        while q % self.p == 0:
            q //= self.p
        if q != 1:
            raise InputError(f"q = {self.q} is not a power of p = {self.p}")
        if self.m < 0:
            raise InputError(f"m must be non-negative, got {self.m}")

    def to_json(self) -> dict[str, int]:
        return {"p": self.p, "q": self.q, "m": self.m}

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "WeilContext":
        if not isinstance(data, dict):
            raise SchemaError("expected a context object", pointer)
        out = {}
        for key in ("p", "q", "m"):
            if key not in data:
                raise SchemaError(f"missing key '{key}'", pointer)
            v = data[key]
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError("expected an integer", f"{pointer}/{key}")
            out[key] = v
        try:
            return cls(**out)
        except (NotPrime, InputError) as e:
            raise SchemaError(str(e), pointer)


def twist(p2m: RatPoly, ctx: WeilContext) -> RatPoly:
    """Divide coefficient i by q^(m*i): P2m(t/q^m) with the scaling absorbed."""
    if p2m.constant != 1:
        raise BadConstantTerm("twist needs constant term 1")
    scale = ctx.q ** ctx.m
    return RatPoly(c / Fraction(scale) ** i for i, c in enumerate(p2m.coeffs))


def untwist(pm: RatPoly, ctx: WeilContext) -> RatPoly:
    """Inverse of twist: multiply coefficient i by q^(m*i)."""
    if pm.constant != 1:
        raise BadConstantTerm("untwist needs constant term 1")
    scale = ctx.q ** ctx.m
    return RatPoly(c * Fraction(scale) ** i for i, c in enumerate(pm.coeffs))


def self_inversive_sign(f: RatPoly) -> Optional[int]:
    """+1 if reverse(f) = f, -1 if reverse(f) = -f, None otherwise."""
    if f.is_zero or f.constant == 0:
        return None
    rev = f.reverse()
    if rev == f:
        return 1
    if rev == -f:
        return -1
    return None


def chebyshev_reduce(h: RatPoly) -> RatPoly:
    """H with h(t) = t^s * H(t + 1/t), for palindromic h of even degree 2s.

    Uses the basis C_k(u) = t^k + t^(-k): C_0 = 2, C_1 = u,
    C_k = u*C_(k-1) - C_(k-2).  Raises NotSelfInversive unless
    reverse(h) = h with even degree.
    """
    if h.is_zero or h.constant == 0:
        raise NotSelfInversive("input is zero or has zero constant term")
    if h.degree % 2 != 0 or h.reverse() != h:
        raise NotSelfInversive(f"{h!r} is not palindromic of even degree")
    s = h.degree // 2
    if s == 0:
        return RatPoly((h.constant,))
    u = RatPoly.t()
    c_prev = RatPoly.of(2)
    c_cur = u
    H = RatPoly((h.coeffs[s],)) + h.coeffs[s + 1] * c_cur
    for k in range(2, s + 1):
        c_prev, c_cur = c_cur, u * c_cur - c_prev
        H = H + h.coeffs[s + k] * c_cur
    return H


def unit_circle_certificate(pm: RatPoly) -> bool:
    """Exact certificate that every complex root of pm lies on |t| = 1.

    Roots at +-1 are stripped first; the residual part must be
    palindromic of even degree, and its image H under t + 1/t -> u must
    have all roots real in [-2, 2].  That is decided by a Sturm count of
    the squarefree part of H on (-2, 2], with u = +-2 handled exactly by
    explicit root extraction.  Raises NotSelfInversive when pm is not
    self-inversive up to sign.
    """
    if pm.is_zero or pm.constant == 0:
        return False  # root at 0 is off the circle
    if self_inversive_sign(pm) is None:
        raise NotSelfInversive(f"{pm!r} is not self-inversive up to sign")
    if pm.degree == 0:
        return True
    _, h = factor_out_root(pm, 1)
    _, h = factor_out_root(h, -1)
    if h.degree == 0:
        return True
    if h.degree % 2 != 0 or h.reverse() != h:
        # cannot happen for self-inversive input with +-1 stripped
        return False
    H = chebyshev_reduce(h)
    H0 = H.exact_div(poly_gcd(H, H.derivative()))
    target = H0.degree
    good, rest = factor_out_root(H0, 2)
    m2, rest = factor_out_root(rest, -2)
    good += m2
    if rest.degree > 0:
        good += sturm_roots_in_interval(rest, -2, 2)
    return good == target


def is_q_admissible(pm: RatPoly, ctx: WeilContext) -> bool:
    """Constant term 1, coefficients in Z[1/q], self-inversive, roots on |t|=1."""
    if pm.is_zero or pm.constant != 1:
        return False
    for c in pm.coeffs:
        den = c.denominator
        while den % ctx.p == 0:
            den //= ctx.p
        if den != 1:
            return False
    if self_inversive_sign(pm) is None:
        return False
    return unit_circle_certificate(pm)


def cyclotomic_scan(f: RatPoly) -> tuple[tuple[int, int], ...]:
    """Exact multiplicity of every cyclotomic factor of f, as (order, mult).

    Complete for all orders d with phi(d) <= deg(f); since
    phi(d) >= sqrt(d/2), scanning d <= 2*deg^2 suffices.  Degrees above
    the phi cap cannot be scanned exactly and raise OrderTooLarge.
    """
    if f.is_zero:
        raise ValueError("cannot scan the zero polynomial")
    n = f.degree
    if n == 0:
        return ()
    if n > PHI_CAP:
        raise OrderTooLarge(
            f"degree {n} exceeds the cyclotomic detection cap {PHI_CAP}"
        )
    found: list[tuple[int, int]] = []
    for d in range(1, 2 * n * n + 2):
        if euler_phi(d) > n:
            continue
        phi_d = cyclotomic(d)
        mult = 0
        g = f
        while g.degree >= phi_d.degree:
            q, r = divmod(g, phi_d)
            if not r.is_zero:
                break
            g = q
            mult += 1
        if mult:
            found.append((d, mult))
    return tuple(found)


def semistable_exponent(f: RatPoly) -> tuple[bool, int]:
    """(semistable, r): semistable iff only order 1 appears; r = lcm of orders."""
    scan = cyclotomic_scan(f)
    orders = [d for d, _ in scan]
    semistable = all(d == 1 for d in orders)
    r = 1
    for d in orders:
        r = math.lcm(r, d)
    return semistable, r


def base_change(f: RatPoly, r: int) -> RatPoly:
    """Polynomial with root multiset {rho^r}, renormalized to constant term 1."""
    if f.is_zero or f.constant == 0:
        raise ZeroConstantTerm("base change needs a nonzero constant term")
    if r < 1:
        raise ValueError("base-change exponent must be >= 1")
    if f.degree == 0:
        return RatPoly.one()
    g = power_roots(f, r)
    return RatPoly(c / g.constant for c in g.coeffs)


def split_unit(pm: RatPoly) -> tuple[int, RatPoly]:
    """(a, Ptr) with pm = (1-t)^a * Ptr, Ptr(0) = pm(0) and Ptr(1) != 0."""
    if pm.is_zero or pm.constant == 0:
        raise ZeroConstantTerm("unit-root splitting needs a nonzero constant term")
    return factor_out_root(pm, 1)


# -- irreducibility certificate ----------------------------------------------------

#: Number of usable primes for the mod-l degree-pattern certificate.
CERT_PRIMES = 25


def _mod_trim(cs: list[int], l: int) -> list[int]:
    out = [c % l for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mod_divmod(a: list[int], b: list[int], l: int) -> tuple[list[int], list[int]]:
    inv = pow(b[-1], -1, l)
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % l
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % l
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _mod_gcd(a: list[int], b: list[int], l: int) -> list[int]:
    while b:
        _, a = _mod_divmod(a, b, l)
        a, b = b, a
    inv = pow(a[-1], -1, l)
    return [c * inv % l for c in a]


def _mod_mulmod(a: list[int], b: list[int], f: list[int], l: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % l
    while out and out[-1] == 0:
        out.pop()
    _, r = _mod_divmod(out, f, l)
    return r


def _frobenius_degrees(F: list[int], l: int) -> list[int]:
    """Degrees (with multiplicity) of the irreducible factors of F mod l.

    Distinct-degree factorization of a squarefree F: at stage d, the gcd
    with t^(l^d) - t collects every irreducible factor of degree d.
    """
    g = list(F)
    degrees: list[int] = []
    h = [0, 1]  # t
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        # h := h^l mod g, so h = t^(l^d) mod g throughout
        base = h
        acc = [1]
        e = l
        while e:
            if e & 1:
                acc = _mod_mulmod(acc, base, g, l)
            base = _mod_mulmod(base, base, g, l)
            e >>= 1
        h = acc
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % l
        while diff and diff[-1] == 0:
            diff.pop()
        if not diff:
            # every remaining factor has degree dividing d; g splits fully
            factor = g
        else:
            factor = _mod_gcd(g, diff, l)
        if len(factor) - 1 > 0:
            count, rem = divmod(len(factor) - 1, d)
            if rem:
                # mixed degrees dividing d slipped in; treat conservatively
                degrees.extend([1] * (len(factor) - 1))
            else:
                degrees.extend([d] * count)
            g, _ = _mod_divmod(g, factor, l)
        if not diff:
            break
    if len(g) - 1 > 0:
        degrees.append(len(g) - 1)
    return degrees


def irreducibility_certificate(ptr: RatPoly) -> str:
    """One-sided irreducibility certificate over Q: "proved" or "inconclusive".

    Clears denominators, then computes the irreducible-factor degree
    multiset of F mod l for the first CERT_PRIMES primes l dividing
    neither the leading coefficient nor Res(F, F').  A rational factor
    of degree k forces k to be a subset sum of every multiset; if the
    intersection of achievable subset sums across primes is {0, deg},
    the polynomial is irreducible.  Never claims reducibility.
    Raises NotSquarefree when Res(F, F') = 0.
    """
    if ptr.is_zero:
        raise ValueError("certificate of the zero polynomial")
    if ptr.degree <= 1:
        return PROVED
    F = primitive_positive(ptr)
    disc_res = resultant(F, F.derivative())
    if disc_res == 0:
        raise NotSquarefree(f"{ptr!r} has a repeated factor")
    bad = abs(int(F.leading) * disc_res.numerator)
    n = F.degree
    full = (1 << (n + 1)) - 1
    combined = full
    target = 1 | (1 << n)
    Fint = [int(c) for c in F.coeffs]
    l = 1
    used = 0
    while used < CERT_PRIMES:
        l = next_prime(l)
        if bad % l == 0:
            continue
        used += 1
        degrees = _frobenius_degrees(_mod_trim(Fint, l), l)
        mask = 1
        for d in degrees:
            mask |= mask << d
        combined &= mask & full
        if combined == target:
            return PROVED
    return INCONCLUSIVE


# -- pairwise relation scan ----------------------------------------------------------


@dataclass(frozen=True)
class PairScan:
    """Outcome of the pairwise multiplicative-relation scan on Ptr."""

    ok: bool
    witnesses: tuple[tuple[int, int], ...]
    inversion_closed: bool
    no_roots_of_unity: bool
    even_degree: bool
    product_clean: bool


def pair_relation_scan(ptr: RatPoly) -> PairScan:
    """Check that the roots of Ptr split into inverse pairs with no relations.

    Verifies: reverse(Ptr) = +-Ptr; no cyclotomic factor; even degree;
    and that C = composed_product(Ptr, Ptr) carries the unit root 1 with
    multiplicity exactly deg(Ptr) (the forced products rho * rho^(-1))
    and no other cyclotomic factor.  Any deviation in C is returned as a
    witness (order, excess-multiplicity) of a relation rho * sigma =
    root of unity with sigma != rho^(-1).
    """
    if ptr.is_zero or ptr.constant == 0:
        raise ZeroConstantTerm("pair scan needs a nonzero constant term")
    if ptr(1) == 0 or ptr(-1) == 0:
        raise RootAtUnity("Ptr vanishes at +-1")
    n = ptr.degree
    if n == 0:
        return PairScan(True, (), True, True, True, True)
    if n * n > PRODUCT_DEGREE_CAP:
        raise OrderTooLarge(
            f"composed product degree {n * n} exceeds the scan cap "
            f"{PRODUCT_DEGREE_CAP}"
        )
    inversion_closed = self_inversive_sign(ptr) is not None
    no_ru = cyclotomic_scan(ptr) == ()
    even = n % 2 == 0
    C = composed_product(ptr, ptr)
    scan = dict(cyclotomic_scan(C))
    forced = {1: n}
    witnesses = []
    for d in sorted(set(scan) | set(forced)):
        excess = scan.get(d, 0) - forced.get(d, 0)
        if excess:
            witnesses.append((d, excess))
    product_clean = not witnesses
    ok = inversion_closed and no_ru and even and product_clean
    return PairScan(ok, tuple(witnesses), inversion_closed, no_ru, even, product_clean)


# -- bounded independence search ------------------------------------------------------


@dataclass(frozen=True)
class IndependenceSearch:
    """Result of the bounded search for multiplicative relations.

    witness is the exponent multiset (n_1 <= ... <= n_w) whose composed
    power product picked up an unexpected cyclotomic factor, or None.
    checked_to is the largest exponent sum whose vectors were all tested;
    a None witness certifies nothing beyond that bound.
    """

    witness: Optional[tuple[int, ...]]
    checked_to: int
    requested: int


def _partitions(total: int, max_parts: int):
    """Nondecreasing positive tuples summing to total, lexicographically."""

    def rec(remaining: int, lo: int, parts_left: int):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for first in range(lo, remaining + 1):
            for rest in rec(remaining - first, first, parts_left - 1):
                yield (first,) + rest

    yield from rec(total, 1, max_parts)


def _forced_unit_count(s: int, parts: tuple[int, ...]) -> int:
    """Number of sign-and-pair assignments whose exponents cancel exactly.

    Each slot i picks a pair j in 1..s and a sign; the product is forced
    to 1 precisely when, for every pair, the signed exponents assigned
    to it sum to zero.  Brute force over (2s)^w assignments.
    """
    w = len(parts)
    count = 0
    for assign in itertools.product(range(2 * s), repeat=w):
        sums = [0] * s
        for exp, slot in zip(parts, assign):
            pair, sign = divmod(slot, 2)
            sums[pair] += exp if sign == 0 else -exp
        if all(v == 0 for v in sums):
            count += 1
    return count


def bounded_independence_check(ptr: RatPoly, N: int) -> IndependenceSearch:
    """Search for multiplicative relations among the root pairs of Ptr.

    For every exponent multiset (n_1..n_w) with sum <= N, the composed
    product of power_roots(Ptr, n_i) contains every product of w roots
    raised to those exponents; under independence its only cyclotomic
    content is the unit root with the combinatorially forced
    multiplicity.  Any other cyclotomic content is returned as a witness
    multiset.  Multisets whose composed product would exceed the exact
    detection cap are skipped, which freezes checked_to at the last
    fully exhausted exponent sum.  A clean result is a bounded search
    outcome, not a proof.
    """
    if ptr.is_zero or ptr.constant == 0:
        raise ZeroConstantTerm("independence check needs nonzero constant term")
    if N < 0:
        raise ValueError("exponent bound must be >= 0")
    if N > N_CAP:
        raise BoundTooLarge(f"exponent bound {N} exceeds the cap {N_CAP}")
    n = ptr.degree
    if n == 0:
        return IndependenceSearch(None, N, N)
    if n % 2 != 0:
        raise WrongDegree(f"expected even degree, got {n}")
    if ptr(1) == 0 or ptr(-1) == 0:
        raise RootAtUnity("Ptr vanishes at +-1")
    s = n // 2
    if s * N > SN_CAP:
        raise BoundTooLarge(f"s*N = {s * N} exceeds the cap {SN_CAP}")
    checked_to = 0
    for total in range(1, N + 1):
        complete = True
        for parts in _partitions(total, s):
            w = len(parts)
            if (2 * s) ** w > PRODUCT_DEGREE_CAP:
                complete = False
                continue
            C = power_roots(ptr, parts[0])
            for e in parts[1:]:
                C = composed_product(C, power_roots(ptr, e))
            forced = _forced_unit_count(s, parts)
            expected = ((1, forced),) if forced else ()
            if cyclotomic_scan(C) != expected:
                return IndependenceSearch(parts, checked_to, N)
        if not complete:
            break
        checked_to = total
    return IndependenceSearch(None, checked_to, N)


# -- the report ------------------------------------------------------------------------

THEOREM_DERIVED = "theorem-derived"
SEARCH_VERIFIED = "search-verified"
WITNESS_FOUND = "witness-found"
UNVERIFIED = "unverified"

PRODUCT_SCAN_CLEAN = "clean"
PRODUCT_SCAN_ANOMALOUS = "anomalous"
PRODUCT_SCAN_SKIPPED = "skipped"


@dataclass(frozen=True)
class WeilReport:
    """Complete output of analyze(); serializes to a stable JSON dictionary."""

    ctx: WeilContext
    p2m: RatPoly
    pm: RatPoly
    q_admissible: bool
    self_inversive_sign: Optional[int]
    unit_circle_certified: bool
    cyclotomic_part: tuple[tuple[int, int], ...]
    semistable: bool
    semistable_exponent: int
    a: int
    ptr: RatPoly
    newton_untwisted: NewtonPolygon
    newton_twisted: NewtonPolygon
    k3_type: bool
    ptr_irreducible: str
    pair_structure_ok: bool
    pair_product_scan: str
    pair_witnesses: tuple[tuple[int, int], ...]
    independence: str
    independence_checked_to: int
    independence_witness: Optional[tuple[int, ...]]
    base_change: Optional["WeilReport"] = field(default=None)

    def to_json_dict(self) -> dict:
        return {
            "context": self.ctx.to_json(),
            "p2m": self.p2m.to_strings(),
            "pm": self.pm.to_strings(),
            "q_admissible": self.q_admissible,
            "self_inversive_sign": self.self_inversive_sign,
            "unit_circle_certified": self.unit_circle_certified,
            "cyclotomic_part": [list(x) for x in self.cyclotomic_part],
            "semistable": self.semistable,
            "semistable_exponent": self.semistable_exponent,
            "a": self.a,
            "ptr": self.ptr.to_strings(),
            "newton_untwisted": self.newton_untwisted.to_json(),
            "newton_twisted": self.newton_twisted.to_json(),
            "k3_type": self.k3_type,
            "ptr_irreducible": self.ptr_irreducible,
            "pair_structure_ok": self.pair_structure_ok,
            "pair_product_scan": self.pair_product_scan,
            "pair_witnesses": [list(x) for x in self.pair_witnesses],
            "independence": self.independence,
            "independence_checked_to": self.independence_checked_to,
            "independence_witness": (
                list(self.independence_witness)
                if self.independence_witness is not None
                else None
            ),
            "base_change": (
                self.base_change.to_json_dict()
                if self.base_change is not None
                else None
            ),
        }

    @classmethod
    def from_json_dict(cls, data: object, pointer: str = "") -> "WeilReport":
        if not isinstance(data, dict):
            raise SchemaError("expected a report object", pointer)

        def need(key: str):
            if key not in data:
                raise SchemaError(f"missing key '{key}'", pointer)
            return data[key]

        def poly(key: str) -> RatPoly:
            raw = need(key)
            return _poly_from_json(raw, f"{pointer}/{key}")

        def boolean(key: str) -> bool:
            v = need(key)
            if not isinstance(v, bool):
                raise SchemaError("expected a boolean", f"{pointer}/{key}")
            return v

        def integer(key: str) -> int:
            v = need(key)
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError("expected an integer", f"{pointer}/{key}")
            return v

        def string(key: str, allowed: tuple[str, ...]) -> str:
            v = need(key)
            if not isinstance(v, str) or v not in allowed:
                raise SchemaError(
                    f"expected one of {sorted(allowed)}", f"{pointer}/{key}"
                )
            return v

        def int_pairs(key: str) -> tuple[tuple[int, int], ...]:
            v = need(key)
            if not isinstance(v, list):
                raise SchemaError("expected an array", f"{pointer}/{key}")
            out = []
            for i, item in enumerate(v):
                if (
                    not isinstance(item, list)
                    or len(item) != 2
                    or not all(
                        isinstance(x, int) and not isinstance(x, bool) for x in item
                    )
                ):
                    raise SchemaError(
                        "expected a pair of integers", f"{pointer}/{key}/{i}"
                    )
                out.append((item[0], item[1]))
            return tuple(out)

        ctx = WeilContext.from_json(need("context"), f"{pointer}/context")
        sign = need("self_inversive_sign")
        if sign is not None and (isinstance(sign, bool) or sign not in (1, -1)):
            raise SchemaError(
                "expected 1, -1 or null", f"{pointer}/self_inversive_sign"
            )
        witness = need("independence_witness")
        if witness is not None:
            if not isinstance(witness, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) and x >= 1
                for x in witness
            ):
                raise SchemaError(
                    "expected an array of positive integers or null",
                    f"{pointer}/independence_witness",
                )
            witness = tuple(witness)
        sub = need("base_change")
        base = (
            cls.from_json_dict(sub, f"{pointer}/base_change")
            if sub is not None
            else None
        )
        return cls(
            ctx=ctx,
            p2m=poly("p2m"),
            pm=poly("pm"),
            q_admissible=boolean("q_admissible"),
            self_inversive_sign=sign,
            unit_circle_certified=boolean("unit_circle_certified"),
            cyclotomic_part=int_pairs("cyclotomic_part"),
            semistable=boolean("semistable"),
            semistable_exponent=integer("semistable_exponent"),
            a=integer("a"),
            ptr=poly("ptr"),
            newton_untwisted=NewtonPolygon.from_json(
                need("newton_untwisted"), f"{pointer}/newton_untwisted"
            ),
            newton_twisted=NewtonPolygon.from_json(
                need("newton_twisted"), f"{pointer}/newton_twisted"
            ),
            k3_type=boolean("k3_type"),
            ptr_irreducible=string("ptr_irreducible", (PROVED, INCONCLUSIVE)),
            pair_structure_ok=boolean("pair_structure_ok"),
            pair_product_scan=string(
                "pair_product_scan",
                (PRODUCT_SCAN_CLEAN, PRODUCT_SCAN_ANOMALOUS, PRODUCT_SCAN_SKIPPED),
            ),
            pair_witnesses=int_pairs("pair_witnesses"),
            independence=string(
                "independence",
                (THEOREM_DERIVED, SEARCH_VERIFIED, WITNESS_FOUND, UNVERIFIED),
            ),
            independence_checked_to=integer("independence_checked_to"),
            independence_witness=witness,
            base_change=base,
        )


def _poly_from_json(raw: object, pointer: str) -> RatPoly:
    if not isinstance(raw, list):
        raise SchemaError("expected an array of coefficient strings", pointer)
    coeffs = []
    for i, item in enumerate(raw):
        if not isinstance(item, str):
            raise SchemaError("expected a coefficient string", f"{pointer}/{i}")
        try:
            coeffs.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise SchemaError("not a rational number", f"{pointer}/{i}")
    return RatPoly(coeffs)


def analyze(p2m: RatPoly, ctx: WeilContext, _depth: int = 0) -> WeilReport:
    """Run the full pipeline on an integral polynomial with constant term 1.

    Every report field is filled; verdicts are recorded rather than
    raised, so a polynomial that fails admissibility or semistability
    still produces a complete report.  When the input is not semistable,
    the analysis of the base-changed polynomial over the degree-r
    extension is attached under base_change.
    """
    if p2m.is_zero:
        raise InputError("cannot analyze the zero polynomial")
    for i, c in enumerate(p2m.coeffs):
        if c.denominator != 1:
            raise InputError(f"coefficient {i} of P2m is not an integer: {c}")
    if p2m.constant != 1:
        raise BadConstantTerm(f"P2m must have constant term 1, got {p2m.constant}")

    pm = twist(p2m, ctx)
    sign = self_inversive_sign(pm)
    circle = unit_circle_certificate(pm) if sign is not None else False
    q_adm = is_q_admissible(pm, ctx)
    scan = cyclotomic_scan(pm)
    orders = [d for d, _ in scan]
    semistable = all(d == 1 for d in orders)
    r = 1
    for d in orders:
        r = math.lcm(r, d)
    a, ptr = split_unit(pm)
    np_untwisted = newton_polygon(p2m, ctx.p)
    np_twisted = newton_polygon(pm, ctx.p)
    k3 = is_k3_type(np_twisted)

    try:
        ptr_irr = irreducibility_certificate(ptr)
    except NotSquarefree:
        ptr_irr = INCONCLUSIVE

    inversion_closed = self_inversive_sign(ptr) is not None if ptr.degree else True
    ptr_scan = cyclotomic_scan(ptr)
    no_ru = ptr_scan == ()
    even = ptr.degree % 2 == 0
    pair_ok = inversion_closed and no_ru and even
    if pair_ok and ptr.degree ** 2 <= PRODUCT_DEGREE_CAP:
        ps = pair_relation_scan(ptr)
        product_scan = (
            PRODUCT_SCAN_CLEAN if ps.product_clean else PRODUCT_SCAN_ANOMALOUS
        )
        pair_witnesses = ps.witnesses
    else:
        product_scan = PRODUCT_SCAN_SKIPPED
        pair_witnesses = ()

    s = ptr.degree // 2
    if pair_ok and s > 0:
        n_eff = min(N_CAP, SN_CAP // s)
        search = bounded_independence_check(ptr, n_eff)
    elif pair_ok:
        search = IndependenceSearch(None, N_CAP, N_CAP)
    else:
        search = IndependenceSearch(None, 0, 0)
    theorem = semistable and k3 and ptr_irr == PROVED and pair_ok
    if search.witness is not None:
        independence = WITNESS_FOUND
    elif theorem:
        independence = THEOREM_DERIVED
    elif pair_ok and search.checked_to >= 1:
        independence = SEARCH_VERIFIED
    elif pair_ok and s == 0:
        independence = SEARCH_VERIFIED
    else:
        independence = UNVERIFIED

    sub: Optional[WeilReport] = None
    if not semistable and r > 1 and _depth == 0:
        pm_r = base_change(pm, r)
        ctx_r = WeilContext(ctx.p, ctx.q ** r, ctx.m)
        p2m_r = untwist(pm_r, ctx_r)
        sub = analyze(p2m_r, ctx_r, _depth=1)

    return WeilReport(
        ctx=ctx,
        p2m=p2m,
        pm=pm,
        q_admissible=q_adm,
        self_inversive_sign=sign,
        unit_circle_certified=circle,
        cyclotomic_part=scan,
        semistable=semistable,
        semistable_exponent=r,
        a=a,
        ptr=ptr,
        newton_untwisted=np_untwisted,
        newton_twisted=np_twisted,
        k3_type=k3,
        ptr_irreducible=ptr_irr,
        pair_structure_ok=pair_ok,
        pair_product_scan=product_scan,
        pair_witnesses=pair_witnesses,
        independence=independence,
        independence_checked_to=search.checked_to,
        independence_witness=search.witness,
        base_change=sub,
    )
