"""Invariant counting in the diagonal eigenvalue model.

A certified report pins down the eigenvalue structure of the middle
cohomology: the unit eigenvalue 1 with multiplicity a, plus k
multiplicatively independent pairs (beta_i, beta_i^-1).  Under
independence, a product of eigenvalues equals 1 exactly when the
exponents cancel, so Galois-invariant dimensions in tensor powers are
zero-sum counts over the exponent alphabet {0, +-e_1, ..., +-e_k} with
the 0 symbol carrying weight a.

inv_dim evaluates the closed multinomial form; inv_dim_bruteforce is
the independent enumeration oracle; pair_decomposition_check verifies
that every zero-sum tuple splits into zero-sum pairs (plus a lone 0
slot in odd degree), which is the combinatorial core of the
tensor-decomposition statement for invariants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import HypothesesNotMet, SchemaError, TooLarge
from .weil import PROVED, WeilReport

#: Enumeration guard for the brute-force oracles.
BRUTE_CAP = 10 ** 7


@dataclass(frozen=True)
class EigenStructure:
    """Eigenvalue multiplicities: a copies of 1 and k independent pairs."""

    a: int
    k: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.k < 0:
            raise ValueError("a and k must be non-negative")

    @property
    def dimension(self) -> int:
        return self.a + 2 * self.k

    def to_json(self) -> dict[str, int]:
        return {"a": self.a, "k": self.k}

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "EigenStructure":
        if not isinstance(data, dict):
            raise SchemaError("expected an object with keys 'a' and 'k'", pointer)
        out = {}
        for key in ("a", "k"):
            if key not in data:
                raise SchemaError(f"missing key '{key}'", pointer)
            v = data[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise SchemaError(
                    "expected a non-negative integer", f"{pointer}/{key}"
                )
            out[key] = v
        return cls(**out)


def from_report(rep: WeilReport, allow_inconclusive: bool = False) -> EigenStructure:
    """Extract (a, k) from a report whose hypotheses are all certified.

    Requires semistable, pair_structure_ok, and a proved irreducibility
    certificate (the latter waivable via allow_inconclusive).  Raises
    HypothesesNotMet naming every failed condition.
    """
    failed = []
    if not rep.semistable:
        failed.append("semistable")
    if not rep.pair_structure_ok:
        failed.append("pair_structure_ok")
    if rep.ptr_irreducible != PROVED and not allow_inconclusive:
        failed.append("ptr_irreducible")
    if failed:
        raise HypothesesNotMet(failed)
    return EigenStructure(a=rep.a, k=rep.ptr.degree // 2)


def _weak_compositions(total: int, parts: int):
    """All tuples of `parts` non-negative integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def inv_dim(st: EigenStructure, n: int) -> int:
    """Invariant dimension of the n-th tensor power: zero-sum tuple count.

    Equals the constant term of (a + sum_i (x_i + 1/x_i))^n; computed by
    the multinomial closed form sum over n_0 + 2(p_1+...+p_k) = n of
    n! / (n_0! * prod (p_i!)^2) * a^n_0.
    """
    if n < 0:
        raise ValueError("tensor power must be non-negative")
    a, k = st.a, st.k
    total = 0
    for n0 in range(n, -1, -2):
        if a == 0 and n0 > 0:
            continue
        w = (n - n0) // 2
        base = math.factorial(n) // math.factorial(n0) * a ** n0
        for comp in _weak_compositions(w, k):
            denom = 1
            for p in comp:
                denom *= math.factorial(p) ** 2
            total += base // denom
    return total


def _check_cap(st: EigenStructure, n: int) -> None:
    if st.dimension ** n > BRUTE_CAP:
        raise TooLarge(
            f"enumeration size {st.dimension}^{n} exceeds {BRUTE_CAP}"
        )


def inv_dim_bruteforce(st: EigenStructure, n: int) -> int:
    """Independent oracle for inv_dim by direct enumeration.

    Walks all n-tuples over the alphabet {0, +e_1..+e_k, -e_1..-e_k},
    weights each tuple by a^(number of 0 slots), and sums the weights of
    the zero-sum tuples.
    """
    if n < 0:
        raise ValueError("tensor power must be non-negative")
    _check_cap(st, n)
    a, k = st.a, st.k
    total = 0
    for tup in itertools.product(range(2 * k + 1), repeat=n):
        sums = [0] * k
        zeros = 0
        for sym in tup:
            if sym == 0:
                zeros += 1
            elif sym <= k:
                sums[sym - 1] += 1
            else:
                sums[sym - k - 1] -= 1
        if all(v == 0 for v in sums):
            total += a ** zeros
    return total


def pair_decomposition_check(st: EigenStructure, n: int) -> bool:
    """Verify every zero-sum n-tuple splits into zero-sum pairs.

    For even n the split is a perfect pairing of slots into {v, -v} and
    {0, 0}; for odd n one 0 slot stays as a singleton.  The pairing is
    constructed explicitly per tuple (matching +e_i with -e_i positions
    and zeros with zeros), so a True verdict means the invariants of the
    n-th tensor power are exhausted by products of invariants of degree
    at most 2.
    """
    if n < 0:
        raise ValueError("tensor power must be non-negative")
    _check_cap(st, n)
    a, k = st.a, st.k
    for tup in itertools.product(range(2 * k + 1), repeat=n):
        positions: dict[int, list[int]] = {}
        for i, sym in enumerate(tup):
            positions.setdefault(sym, []).append(i)
        zeros = positions.get(0, [])
        if a == 0 and zeros:
            continue  # no unit eigenvectors to occupy 0 slots
        sums = [0] * k
        for sym, pos in positions.items():
            if 1 <= sym <= k:
                sums[sym - 1] += len(pos)
            elif sym > k:
                sums[sym - k - 1] -= len(pos)
        if any(v != 0 for v in sums):
            continue
        # build the explicit pairing and verify it covers every slot
        used = [False] * n
        pairs: list[tuple[int, int]] = []
        ok = True
        for i in range(1, k + 1):
            plus = positions.get(i, [])
            minus = positions.get(k + i, [])
            if len(plus) != len(minus):
                ok = False
                break
            pairs.extend(zip(plus, minus))
        if ok:
            zs = list(zeros)
            if n % 2 == 1:
                if not zs:
                    ok = False
                else:
                    singleton = zs.pop()
                    used[singleton] = True
            if ok and len(zs) % 2 != 0:
                ok = False
            if ok:
                pairs.extend(zip(zs[0::2], zs[1::2]))
        if ok:
            for x, y in pairs:
                if used[x] or used[y]:
                    ok = False
                    break
                used[x] = used[y] = True
            if ok and not all(used):
                ok = False
        if not ok:
            return False
    return True
