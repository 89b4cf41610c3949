"""Symbolic span checks in the diagonal eigenvalue model.

The k pair eigenvalues are modeled as honest Laurent indeterminates
x_1..x_k over Q; multiplicative independence is what licenses this.
Basis vectors of the middle cohomology carry eigenvalues

    index 0..a-1     -> 1
    index a+i        -> x_i          (0 <= i < k)
    index a+k+i      -> x_i^(-1)

and the Poincare involution swaps each pair and fixes the unit block.
Invariants of V (x) V are spanned by the a^2 unit-block pairs plus the
2k cross pairs.  The graph tensor G_j puts eigenvalue powers on the
diagonal pairs; spanning questions are settled by exact fraction-free
rank computation over the Laurent ring, never by specializing the
variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DivisionByZero, JTooSmall, NonExactDivision
from .invariants import EigenStructure, inv_dim


class Laurent:
    """Multivariate Laurent polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] = ()):
        self.nvars = nvars
        clean = {}
        for exps, c in dict(terms).items():
            c = Fraction(c)
            if c:
                if len(exps) != nvars:
                    raise ValueError("exponent tuple of wrong length")
                clean[tuple(exps)] = c
        self.terms: dict[tuple[int, ...], Fraction] = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Laurent":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def monomial(cls, nvars: int, var: int, power: int) -> "Laurent":
        exps = [0] * nvars
        exps[var] = power
        return cls(nvars, {tuple(exps): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Laurent(self.nvars, out)

    def __neg__(self) -> "Laurent":
        return Laurent(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Laurent(self.nvars, out)

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact quotient self / other; NonExactDivision on any remainder.

        Repeatedly cancels the lex-leading monomial.  When the division
        is exact the attempted quotient monomials stay lex-between
        max(self) - max(other) and min(self) - min(other), so dropping
        below the lower bound proves inexactness.
        """
        if other.is_zero:
            raise DivisionByZero("Laurent division by zero")
        if self.is_zero:
            return Laurent(self.nvars, {})
        g_lead = max(other.terms)
        g_lc = other.terms[g_lead]
        q_floor = tuple(
            a - b for a, b in zip(min(self.terms), min(other.terms))
        )
        rem = dict(self.terms)
        out: dict[tuple[int, ...], Fraction] = {}
        steps = 0
        while rem:
            steps += 1
            if steps > 1_000_000:
                raise NonExactDivision("Laurent division did not terminate")
            f_lead = max(rem)
            q_exp = tuple(a - b for a, b in zip(f_lead, g_lead))
            if q_exp < q_floor:
                raise NonExactDivision("Laurent division left a remainder")
            q_c = rem[f_lead] / g_lc
            out[q_exp] = q_c
            for e, c in other.terms.items():
                ne = tuple(x + y for x, y in zip(q_exp, e))
                v = rem.get(ne, Fraction(0)) - q_c * c
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return Laurent(self.nvars, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "Laurent(0)"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"x{i}^{p}" for i, p in enumerate(e) if p
            )
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return "Laurent(" + " + ".join(parts) + ")"


#: A vector over the Laurent ring, sparse on hashable basis keys.
LaurentVec = dict


@dataclass(frozen=True)
class DiagonalModel:
    """Eigenvalue assignment and involution for the structure (a, k)."""

    st: EigenStructure

    @property
    def a(self) -> int:
        return self.st.a

    @property
    def k(self) -> int:
        return self.st.k

    @property
    def dimension(self) -> int:
        return self.st.dimension

    def eigenvalue(self, i: int) -> Laurent:
        """The eigenvalue attached to basis index i, as a Laurent monomial."""
        a, k = self.a, self.k
        if not 0 <= i < a + 2 * k:
            raise IndexError(f"basis index {i} out of range")
        if i < a:
            return Laurent.const(k, 1)
        if i < a + k:
            return Laurent.monomial(k, i - a, 1)
        return Laurent.monomial(k, i - a - k, -1)

    def involution(self, i: int) -> int:
        """The Poincare partner: fixes the unit block, swaps each pair."""
        a, k = self.a, self.k
        if not 0 <= i < a + 2 * k:
            raise IndexError(f"basis index {i} out of range")
        if i < a:
            return i
        if i < a + k:
            return i + k
        return i - k

    def eigenvalue_power(self, i: int, j: int) -> Laurent:
        """eigenvalue(i)**j without repeated multiplication."""
        a, k = self.a, self.k
        if i < a:
            return Laurent.const(k, 1)
        if i < a + k:
            return Laurent.monomial(k, i - a, j)
        return Laurent.monomial(k, i - a - k, -j)


def invariant_basis_vv(model: DiagonalModel) -> list[tuple[int, int]]:
    """Index pairs (i, j) with eigenvalue product 1: the invariant basis of V(x)V.

    The a^2 unit-block pairs in row-major order, then (a+i, a+k+i) and
    (a+k+i, a+i) for each pair i; a^2 + 2k entries in total.
    """
    a, k = model.a, model.k
    out = [(i, j) for i in range(a) for j in range(a)]
    for i in range(k):
        out.append((a + i, a + k + i))
        out.append((a + k + i, a + i))
    return out


def graph_tensor(model: DiagonalModel, j: int) -> LaurentVec:
    """G_j = sum_i eigenvalue(i)^j * e_i (x) e_(i*), in the invariant basis.

    Components: 1 on every unit-block diagonal pair, x_i^j and x_i^(-j)
    on the two slots of pair i.  Every component lies in the invariant
    basis because eigenvalue(i) * eigenvalue(i*) = 1.
    """
    a, k = model.a, model.k
    vec: LaurentVec = {}
    for i in range(a):
        vec[(i, i)] = Laurent.const(k, 1)
    for i in range(k):
        vec[(a + i, a + k + i)] = Laurent.monomial(k, i, j)
        vec[(a + k + i, a + i)] = Laurent.monomial(k, i, -j)
    return vec


def span_rank(vectors: Sequence[LaurentVec]) -> int:
    """Rank over the Laurent fraction field by Bareiss elimination.

    Vectors are sparse maps from hashable basis keys to Laurent scalars.
    Columns are processed in sorted key order; the pivot row is the one
    whose entry has the fewest terms (ties to the lowest row index).
    Every surviving row updates fraction-free by

        row' = (pivot_entry * row - row_entry * pivot_row) / prev_pivot

    where the division by the previous pivot is exact (Sylvester's
    identity); it keeps entries minor-sized instead of compounding.
    """
    rows = []
    for v in vectors:
        row = {key: c for key, c in v.items() if not c.is_zero}
        if row:
            rows.append(row)
    if not rows:
        return 0
    nvars = next(iter(rows[0].values())).nvars
    keys = sorted({key for row in rows for key in row})
    prev_pivot = Laurent.const(nvars, 1)
    rank = 0
    for key in keys:
        pivot_idx = None
        best = None
        for idx, row in enumerate(rows):
            entry = row.get(key)
            if entry is not None:
                if best is None or entry.n_terms < best:
                    best = entry.n_terms
                    pivot_idx = idx
        if pivot_idx is None:
            continue
        pivot_row = rows.pop(pivot_idx)
        pivot = pivot_row[key]
        rank += 1
        new_rows = []
        for row in rows:
            entry = row.get(key)
            combined = {}
            if entry is None:
                # zero in the pivot column: row' = pivot * row / prev
                for col, r in row.items():
                    combined[col] = (pivot * r).exact_div(prev_pivot)
            else:
                for col in set(row) | set(pivot_row):
                    if col == key:
                        continue
                    r = row.get(col)
                    p = pivot_row.get(col)
                    if r is not None and p is not None:
                        val = pivot * r - entry * p
                    elif r is not None:
                        val = pivot * r
                    else:
                        val = -(entry * p)
                    if not val.is_zero:
                        combined[col] = val.exact_div(prev_pivot)
            if combined:
                new_rows.append(combined)
        rows = new_rows
        prev_pivot = pivot
    return rank


def generation_rank(model: DiagonalModel, J: int) -> int:
    """Rank of the a^2 unit-block products together with G_0..G_J.

    Requires J >= 2k (fewer graph powers cannot separate the 2k pair
    coordinates); raises JTooSmall below that.
    """
    a, k = model.a, model.k
    if J < 2 * k:
        raise JTooSmall(f"J = {J} < 2k = {2 * k}")
    vectors: list[LaurentVec] = []
    for u in range(a):
        for v in range(a):
            vectors.append({(u, v): Laurent.const(k, 1)})
    for j in range(J + 1):
        vectors.append(graph_tensor(model, j))
    return span_rank(vectors)


def verify_generation_vv(model: DiagonalModel, J: int) -> bool:
    """Do unit-block products plus G_0..G_J span all invariants of V (x) V?

    The unit-block products are the a^2 tensors e_u (x) e_v with
    u, v < a.  True iff the span has full rank a^2 + 2k.
    """
    a, k = model.a, model.k
    return generation_rank(model, J) == a * a + 2 * k


def square_tate_dim(st: EigenStructure) -> int:
    """Tate-class dimension of the middle-weight cohomology of the square.

    The profile has one-dimensional Tate lines in degrees 0, 2, 6, 8;
    pairing degree d with 8-d gives four one-dimensional contributions
    plus the middle block, inv_dim(st, 2).
    """
    return inv_dim(st, 2) + 4


def product_tate_check(
    stY: EigenStructure,
    stZ: EigenStructure,
    deg_ptr_y: int,
    deg_ptr_z: int,
) -> tuple[bool, Optional[int]]:
    """Gate for products of two distinct fourfolds.

    When the transcendental factors are irreducible of different degrees
    (or either is trivial), they share no roots, so no cross pair of
    eigenvalues can multiply to 1 and the mixed invariant dimension of
    V_Y (x) V_Z is exactly a_Y * a_Z.  Equal nonzero degrees are
    inconclusive: (False, None).
    """
    if deg_ptr_y < 0 or deg_ptr_z < 0:
        raise ValueError("degrees must be non-negative")
    ok = deg_ptr_y != deg_ptr_z or deg_ptr_y == 0 or deg_ptr_z == 0
    if not ok:
        return False, None
    return True, stY.a * stZ.a
