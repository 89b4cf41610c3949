import json
from fractions import Fraction

import pytest

from weilk3.errors import (
    BadConstantTerm,
    BoundTooLarge,
    InputError,
    NotPrime,
    NotSelfInversive,
    NotSquarefree,
    RootAtUnity,
)
from weilk3.ratpoly import RatPoly
from weilk3.weil import (
    INCONCLUSIVE,
    PROVED,
    WeilContext,
    WeilReport,
    analyze,
    base_change,
    bounded_independence_check,
    chebyshev_reduce,
    cyclotomic_scan,
    irreducibility_certificate,
    is_q_admissible,
    pair_relation_scan,
    self_inversive_sign,
    semistable_exponent,
    split_unit,
    twist,
    unit_circle_certificate,
    untwist,
)

CTX = WeilContext(2, 2, 2)
FIXTURE = RatPoly.of(1, -2, 16) * RatPoly.of(1, -4) ** 21
# gamma1 * gamma2 = i for the 3-4-5 triangle angles: a planted relation
PLANTED = RatPoly.of(1, Fraction(-6, 5), 1) * RatPoly.of(1, Fraction(-8, 5), 1)


def test_context_validation():
    WeilContext(2, 4, 2)
    for bad in [(4, 4, 2), (2, 3, 2), (2, 1, 2), (2, 2, -1), (2, 6, 1)]:
        with pytest.raises((NotPrime, InputError)):
            WeilContext(*bad)


def test_twist_untwist():
    f = RatPoly.of(1, -2, 16)
    fm = twist(f, CTX)
    assert fm == RatPoly.of(1, Fraction(-1, 2), 1)
    assert untwist(fm, CTX) == f
    assert twist(RatPoly.of(1, -4), CTX) == RatPoly.of(1, -1)
    assert twist(f, WeilContext(2, 2, 0)) == f


def test_self_inversive_sign():
    assert self_inversive_sign(RatPoly.of(1, Fraction(-1, 2), 1)) == 1
    assert self_inversive_sign(RatPoly.of(1, -1)) == -1
    assert self_inversive_sign(RatPoly.of(1, 1)) == 1
    assert self_inversive_sign(RatPoly.of(1, -2)) is None
    assert self_inversive_sign(RatPoly.of(0, 1)) is None


def test_chebyshev_reduce():
    assert chebyshev_reduce(RatPoly.of(1, Fraction(-1, 2), 1)) == RatPoly.of(
        Fraction(-1, 2), 1
    )
    h4 = RatPoly.of(1, Fraction(-1, 2), 1) * RatPoly.of(1, Fraction(-1, 3), 1)
    assert chebyshev_reduce(h4) == RatPoly.of(Fraction(1, 6), Fraction(-5, 6), 1)
    with pytest.raises(NotSelfInversive):
        chebyshev_reduce(RatPoly.of(1, -2))


def test_unit_circle_certificate():
    assert unit_circle_certificate(RatPoly.of(1, Fraction(-1, 2), 1)) is True
    assert unit_circle_certificate(RatPoly.of(1, -1) ** 23) is True
    assert unit_circle_certificate(RatPoly.of(1, Fraction(-5, 2), 1)) is False
    assert unit_circle_certificate(RatPoly.of(1, 1) * RatPoly.of(1, Fraction(-1, 2), 1)) is True
    assert unit_circle_certificate(RatPoly.of(1)) is True
    g = RatPoly.of(1, -1) * RatPoly.of(1, Fraction(-1, 2), 1)
    assert unit_circle_certificate(g) == unit_circle_certificate(g.reverse().monic())
    with pytest.raises(NotSelfInversive):
        unit_circle_certificate(RatPoly.of(1, -2))


def test_q_admissibility():
    assert is_q_admissible(RatPoly.of(1, -1) * RatPoly.of(1, Fraction(-1, 2), 1), CTX) is True
    assert is_q_admissible(RatPoly.of(1, -2), CTX) is False  # root off circle
    assert is_q_admissible(RatPoly.of(1, Fraction(-1, 3), 1), CTX) is False  # denom 3
    assert is_q_admissible(RatPoly.of(2, -1), CTX) is False  # constant != 1


def test_cyclotomic_scan():
    quad = RatPoly.of(1, Fraction(-1, 2), 1)
    assert cyclotomic_scan(RatPoly.of(1, -1) ** 2 * quad) == ((1, 2),)
    assert cyclotomic_scan(RatPoly.of(1, -1, 1) * quad) == ((6, 1),)
    assert cyclotomic_scan(quad) == ()
    assert cyclotomic_scan(RatPoly.of(1)) == ()


def test_semistable_exponent():
    quad = RatPoly.of(1, Fraction(-1, 2), 1)
    assert semistable_exponent(RatPoly.of(1, -1) ** 21 * quad) == (True, 1)
    assert semistable_exponent(RatPoly.of(1, -1, 1) * quad) == (False, 6)
    assert semistable_exponent(RatPoly.of(1, 1) * quad) == (False, 2)
    assert semistable_exponent(RatPoly.of(1)) == (True, 1)


def test_base_change():
    assert base_change(RatPoly.of(1, -1, 1), 6) == RatPoly.of(1, -1) ** 2
    assert base_change(RatPoly.of(1, 1), 2) == RatPoly.of(1, -1)
    quad = RatPoly.of(1, Fraction(-1, 2), 1)
    assert base_change(quad, 1) == quad
    mixed = RatPoly.of(1, -1, 1) * quad
    ss, r = semistable_exponent(mixed)
    assert not ss and r == 6
    assert semistable_exponent(base_change(mixed, r))[0] is True


def test_split_unit():
    quad = RatPoly.of(1, Fraction(-1, 2), 1)
    assert split_unit(RatPoly.of(1, -1) ** 21 * quad) == (21, quad)
    assert split_unit(RatPoly.of(1, -1) ** 23) == (23, RatPoly.one())
    assert split_unit(quad) == (0, quad)


def test_irreducibility_certificate():
    assert irreducibility_certificate(RatPoly.of(1, 0, 1)) == PROVED
    assert irreducibility_certificate(RatPoly.of(1, Fraction(-1, 2), 1)) == PROVED
    # t^4 + 4 = (t^2-2t+2)(t^2+2t+2): must never prove
    assert irreducibility_certificate(RatPoly.of(4, 0, 0, 0, 1)) != PROVED
    assert irreducibility_certificate(RatPoly.of(1, 1)) == PROVED
    assert irreducibility_certificate(RatPoly.of(5)) == PROVED
    assert irreducibility_certificate(RatPoly.of(1, 1, 0, 0, 1)) in (PROVED, INCONCLUSIVE)
    with pytest.raises(NotSquarefree):
        irreducibility_certificate(RatPoly.of(1, -2, 1))


def test_pair_relation_scan():
    ps = pair_relation_scan(RatPoly.of(1, Fraction(-1, 2), 1))
    assert ps.ok and ps.witnesses == () and ps.product_clean
    ps2 = pair_relation_scan(PLANTED)
    assert not ps2.ok
    assert ps2.inversion_closed and ps2.no_roots_of_unity and ps2.even_degree
    assert ps2.witnesses == ((4, 2),)
    assert pair_relation_scan(RatPoly.one()).ok
    with pytest.raises(RootAtUnity):
        pair_relation_scan(RatPoly.of(1, 1) * RatPoly.of(1, Fraction(-1, 2), 1))


def test_bounded_independence():
    quad = RatPoly.of(1, Fraction(-1, 2), 1)
    res = bounded_independence_check(quad, 4)
    assert res.witness is None and res.checked_to == 4 and res.requested == 4
    res2 = bounded_independence_check(PLANTED, 4)
    assert res2.witness == (1, 1) and res2.checked_to == 1
    assert bounded_independence_check(RatPoly.one(), 3).checked_to == 3
    with pytest.raises(BoundTooLarge):
        bounded_independence_check(quad, 5)


def test_analyze_fixture():
    rep = analyze(FIXTURE, CTX)
    assert rep.q_admissible is True
    assert rep.self_inversive_sign == -1
    assert rep.unit_circle_certified is True
    assert rep.cyclotomic_part == ((1, 21),)
    assert rep.semistable is True and rep.semistable_exponent == 1
    assert rep.a == 21
    assert rep.ptr == RatPoly.of(1, Fraction(-1, 2), 1)
    assert rep.k3_type is True
    assert rep.ptr_irreducible == PROVED
    assert rep.pair_structure_ok is True
    assert rep.pair_product_scan == "clean"
    assert rep.independence == "theorem-derived"
    assert rep.independence_checked_to == 4
    assert rep.independence_witness is None
    assert rep.base_change is None
    assert rep.newton_untwisted.to_json() == [
        {"slope": "1", "length": 1},
        {"slope": "2", "length": 21},
        {"slope": "3", "length": 1},
    ]
    assert rep.newton_twisted.to_json() == [
        {"slope": "-1", "length": 1},
        {"slope": "0", "length": 21},
        {"slope": "1", "length": 1},
    ]


def test_analyze_degenerate():
    rep = analyze(RatPoly.of(1, -4) ** 23, CTX)
    assert rep.a == 23 and rep.ptr == RatPoly.one()
    assert rep.k3_type is False
    assert rep.pair_structure_ok is True
    assert rep.independence == "search-verified"


def test_analyze_base_change():
    rep = analyze(RatPoly.of(1, -4, 16), CTX)  # twisted factor of order 6
    assert rep.semistable is False and rep.semistable_exponent == 6
    assert rep.q_admissible is True
    sub = rep.base_change
    assert sub is not None
    assert sub.ctx.q == 2 ** 6 and sub.semistable is True
    assert sub.a == 2 and sub.ptr == RatPoly.one()
    assert sub.p2m == RatPoly.of(1, -4096) ** 2
    assert sub.base_change is None


def test_analyze_input_validation():
    with pytest.raises(InputError):
        analyze(RatPoly.of(1, Fraction(1, 2)), CTX)
    with pytest.raises(BadConstantTerm):
        analyze(RatPoly.of(2, 1), CTX)


def test_report_json_round_trip():
    rep = analyze(RatPoly.of(1, -4, 16), CTX)
    s1 = json.dumps(rep.to_json_dict(), sort_keys=True)
    rt = WeilReport.from_json_dict(json.loads(s1))
    assert json.dumps(rt.to_json_dict(), sort_keys=True) == s1
    # determinism across repeated analyses
    d0 = analyze(FIXTURE, CTX).to_json_dict()
    d1 = analyze(FIXTURE, CTX).to_json_dict()
    assert json.dumps(d0, sort_keys=True) == json.dumps(d1, sort_keys=True)
