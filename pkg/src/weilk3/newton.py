"""p-adic Newton polygons of polynomials with rational coefficients.

The polygon of f = sum a_i t^i at a prime p is the lower convex hull of
the points (i, val_p(a_i)); points with a_i = 0 are skipped.  Segments
are reported as (slope, length) pairs where length is the horizontal
run, so lengths always sum to deg(f) when the constant term is nonzero.
Slopes are exact fractions and strictly increase left to right.

The K3-type test asks that the nonzero slopes are exactly {c, -c} for
some c > 0, each with horizontal length 1; the fourfold profiles are
the two fixed shapes the analysis pipeline matches degree-23 data
against, before and after the weight-normalizing twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SchemaError, WrongDegree, ZeroConstantTerm
from .ratpoly import RatPoly, val_p

Segment = tuple[Fraction, int]


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull of a valuation cloud, as (slope, horizontal length) pairs."""

    segments: tuple[Segment, ...]

    @property
    def total_length(self) -> int:
        return sum(length for _, length in self.segments)

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(slope for slope, _ in self.segments)

    def slope_multiset(self) -> list[Fraction]:
        """Every slope repeated by its length, ascending."""
        out: list[Fraction] = []
        for slope, length in self.segments:
            out.extend([slope] * length)
        return out

    def to_json(self) -> list[dict[str, object]]:
        return [
            {"slope": str(slope), "length": length}
            for slope, length in self.segments
        ]

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "NewtonPolygon":
        if not isinstance(data, list):
            raise SchemaError("expected an array of segments", pointer)
        segs: list[Segment] = []
        for i, item in enumerate(data):
            here = f"{pointer}/{i}"
            if not isinstance(item, dict):
                raise SchemaError("expected a segment object", here)
            if "slope" not in item:
                raise SchemaError("missing key 'slope'", here)
            if "length" not in item:
                raise SchemaError("missing key 'length'", here)
            try:
                slope = Fraction(str(item["slope"]))
            except (ValueError, ZeroDivisionError):
                raise SchemaError("slope is not a rational number", f"{here}/slope")
            length = item["length"]
            if not isinstance(length, int) or isinstance(length, bool) or length < 1:
                raise SchemaError("length must be a positive integer", f"{here}/length")
            segs.append((slope, length))
        for a, b in zip(segs, segs[1:]):
            if a[0] >= b[0]:
                raise SchemaError("slopes must strictly increase", pointer)
        return cls(tuple(segs))


def newton_polygon(f: RatPoly, p: int) -> NewtonPolygon:
    """Newton polygon of f at p, by a monotone-chain lower hull.

    Exact throughout: valuations are integers and hull turns are decided
    by integer cross products.  Collinear points merge into one segment.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has no Newton polygon")
    if f.constant == 0:
        raise ZeroConstantTerm("Newton polygon needs a nonzero constant term")
    pts: list[tuple[int, int]] = []
    for i, c in enumerate(f.coeffs):
        if c != 0:
            v = val_p(c, p)
            pts.append((i, int(v)))
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # pop while the last hull edge fails to turn left (keeps the lower hull;
        # cross == 0 merges collinear points)
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1)
            if cross > 0:
                break
            hull.pop()
        hull.append(pt)
    segs: list[Segment] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs))


def is_k3_type(np: NewtonPolygon) -> bool:
    """True when the nonzero slopes are {c, -c} for some c > 0, each of length 1."""
    nonzero = [(s, l) for s, l in np.segments if s != 0]
    if len(nonzero) != 2:
        return False
    (s1, l1), (s2, l2) = nonzero
    return l1 == 1 and l2 == 1 and s1 == -s2 and s1 < 0


#: Polygon of an ordinary weight-4 middle factor of degree 23.
FOURFOLD_ORDINARY = NewtonPolygon(
    ((Fraction(1), 1), (Fraction(2), 21), (Fraction(3), 1))
)

#: The same shape after dividing out the half-weight twist.
FOURFOLD_TWISTED = NewtonPolygon(
    ((Fraction(-1), 1), (Fraction(0), 21), (Fraction(1), 1))
)


def is_ordinary_fourfold_profile(f: RatPoly, p: int) -> bool:
    """True when the degree-23 polynomial f has slopes [(1,1), (2,21), (3,1)] at p."""
    if f.degree != 23:
        raise WrongDegree(f"expected degree 23, got {f.degree}")
    return newton_polygon(f, p) == FOURFOLD_ORDINARY
