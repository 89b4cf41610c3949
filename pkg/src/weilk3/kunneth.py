"""Tate-class bookkeeping on powers of a fourfold with all odd Betti numbers zero.

Middle-weight cohomology of the r-th power decomposes over weight maps
j: {1..r} -> {0,1,2,3,4} of total weight m.  Slots with j(i) != 2 are
one-dimensional Tate lines; slots with j(i) = 2 carry the middle
cohomology.  The symmetric group permutes the maps, so everything is
enumerated on non-decreasing representatives with orbit sizes.

decomposable_check asks whether every Tate class on the power is a span
of products of pullbacks: pairs of middle slots carrying an invariant of
V (x) V plus singleton middle slots carrying a unit eigenvector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial

from .errors import ModelTooLarge, OutOfRange
from .invariants import EigenStructure, inv_dim
from .spanmodel import DiagonalModel, Laurent, invariant_basis_vv, span_rank

R_CAP = 8
DECOMP_R_CAP = 4
DECOMP_A_CAP = 3
DECOMP_K_CAP = 3


def betti_profile(st: EigenStructure) -> tuple[tuple[int, int], ...]:
    """Per degree 0..8, the pair (total dimension, Tate dimension).

    Degrees 0, 2, 6, 8 are one-dimensional Tate lines, odd degrees
    vanish, and the middle carries (a + 2k, a).
    """
    line = (1, 1)
    odd = (0, 0)
    return (line, odd, line, odd, (st.dimension, st.a), odd, line, odd, line)


def enumerate_jmaps(r: int, m: int) -> list[tuple[tuple[int, ...], int]]:
    """Non-decreasing weight maps of total weight m with their orbit sizes.

    Each map assigns a value in 0..4 to each of the r slots; the orbit
    size is the multinomial coefficient of its value multiplicities, so
    orbit sizes sum to the count of all (unordered-to-ordered) maps.
    Weights above 4r are unreachable and give an empty list.
    """
    if not 1 <= r <= R_CAP:
        raise OutOfRange(f"r = {r} outside 1..{R_CAP}")
    if m < 0:
        raise OutOfRange(f"m = {m} is negative")
    out = []
    for values in combinations_with_replacement(range(5), r):
        if sum(values) != m:
            continue
        orbit = factorial(r)
        for v in set(values):
            orbit //= factorial(values.count(v))
        out.append((values, orbit))
    return out


def tate_dim_power(st: EigenStructure, r: int, m: int) -> int:
    """Total Tate-class dimension in weight m on the r-th power.

    Every slot with value other than 2 contributes a one-dimensional
    line; the n slots with value 2 jointly contribute inv_dim(st, n).
    """
    total = 0
    for values, orbit in enumerate_jmaps(r, m):
        n2 = sum(1 for v in values if v == 2)
        total += orbit * inv_dim(st, n2)
    return total


def chunk_table(st: EigenStructure, r: int, m: int) -> list[dict]:
    """Per canonical weight map: orbit size and Tate-dimension contribution."""
    out = []
    for values, orbit in enumerate_jmaps(r, m):
        n2 = sum(1 for v in values if v == 2)
        dim = inv_dim(st, n2)
        out.append(
            {
                "jmap": list(values),
                "orbit": orbit,
                "two_slots": n2,
                "chunk_dim": dim,
                "contribution": orbit * dim,
            }
        )
    return out


def _matchings(slots: tuple[int, ...]):
    """All perfect matchings of an even-size slot tuple, as pair tuples."""
    if not slots:
        yield ()
        return
    first, rest = slots[0], slots[1:]
    for i in range(len(rest)):
        remaining = rest[:i] + rest[i + 1 :]
        for sub in _matchings(remaining):
            yield ((first, rest[i]),) + sub


@lru_cache(maxsize=None)
def _chunk_decomposable(st: EigenStructure, n: int) -> bool:
    """Do pairing products span the invariants of n middle slots?

    Generators: partition the n slots into pairs plus one singleton when
    n is odd; each pair carries an invariant basis tensor of V (x) V,
    the singleton a unit eigenvector.  The span is compared against
    inv_dim(st, n) by exact rank.
    """
    model = DiagonalModel(st)
    pair_basis = invariant_basis_vv(model)
    slots = tuple(range(n))
    keys = set()
    structures = []
    if n % 2 == 0:
        structures = [(None, matching) for matching in _matchings(slots)]
    else:
        for s in slots:
            rest = tuple(x for x in slots if x != s)
            structures.extend((s, matching) for matching in _matchings(rest))
    for singleton, matching in structures:
        unit_choices = range(st.a) if singleton is not None else (None,)
        for unit in unit_choices:
            for assignment in product(pair_basis, repeat=len(matching)):
                key = [0] * n
                if singleton is not None:
                    key[singleton] = unit
                for (p, q), (i, j) in zip(matching, assignment):
                    key[p] = i
                    key[q] = j
                keys.add(tuple(key))
    one = Laurent.const(st.k, Fraction(1))
    vectors = [{key: one} for key in sorted(keys)]
    return span_rank(vectors) == inv_dim(st, n)


def decomposable_check(st: EigenStructure, r: int, m: int) -> bool:
    """Is every Tate class on the r-th power a product of pullbacks?

    Non-2 slots are one-dimensional lines, decomposable outright; each
    distinct count of 2-slots among the canonical maps is certified once
    by the pairing-span rank check.
    """
    if r > DECOMP_R_CAP:
        raise ModelTooLarge(f"r = {r} > {DECOMP_R_CAP}")
    if st.a > DECOMP_A_CAP or st.k > DECOMP_K_CAP:
        raise ModelTooLarge(f"structure ({st.a}, {st.k}) exceeds caps")
    for values, _ in enumerate_jmaps(r, m):
        n2 = sum(1 for v in values if v == 2)
        if not _chunk_decomposable(st, n2):
            return False
    return True
