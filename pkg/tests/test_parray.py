"""Array validation, dihedral transforms, base extraction, enumeration."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leonard import (
    array_from_json,
    base_candidates,
    beta_plus_one,
    complete_from_theta,
    d4_apply,
    enumerate_arrays,
    extension_field,
    make_array,
    prime_field,
    rational_field,
    validate,
)
from conftest import Q, qarr


def test_fix_d1_is_valid(fix_d1):
    rep = validate(fix_d1)
    assert rep.ok()
    assert rep.lines() == [f"PA{i} pass" for i in range(1, 6)]


def test_fixtures_are_valid(kraw2, kraw3, qrac3, orphan3):
    for p in (kraw2, kraw3, qrac3, orphan3):
        assert validate(p).ok()


def test_pa1_flags_repeats():
    p = qarr([0, 1, 0], [0, 1, 2], [1, 1], [1, 1])
    rep = validate(p)
    assert not rep.condition_ok("PA1")
    assert any("PA1" in line and "fail" in line for line in rep.lines())


def test_pa2_flags_zero_entry():
    p = qarr([0, 1, 2], [0, 1, 2], [0, 1], [1, 1])
    rep = validate(p)
    assert not rep.condition_ok("PA2")


def test_pa3_pa4_flag_wrong_products(kraw3):
    broken = make_array(
        kraw3.field, kraw3.theta, kraw3.theta_star,
        (Q.from_int(1),) + kraw3.varphi[1:], kraw3.phi)
    rep = validate(broken)
    assert not rep.condition_ok("PA3")
    assert rep.condition_ok("PA1") and rep.condition_ok("PA2")


def test_pa5_flags_non_constant_ratio():
    # theta = 0,1,2,4 breaks the common-ratio condition but keeps PA1
    p = complete_from_theta(Q, [Q.from_int(v) for v in (0, 1, 2, 4)],
                            [Q.from_int(v) for v in (0, 1, 2, 3)],
                            Q.from_int(1))
    assert p is None


def test_pa5_vacuous_below_d3():
    p = qarr([0, 1, 5], [0, 1, 3], [1, 1], [2, 2])
    assert validate(p).condition_ok("PA5")


def test_json_round_trip(qrac3, orphan3):
    for p in (qrac3, orphan3):
        again = array_from_json(p.to_json())
        assert again == p
        assert again.to_json() == p.to_json()


def test_d4_generators_are_involutions(kraw3, qrac3, orphan3):
    for p in (kraw3, qrac3, orphan3):
        for g in ("star", "down", "ddown"):
            assert d4_apply(p, [g, g]) == p


def test_d4_star_swaps_sides(qrac3):
    s = d4_apply(qrac3, ["star"])
    assert s.theta == qrac3.theta_star
    assert s.theta_star == qrac3.theta
    assert s.varphi == qrac3.varphi
    assert s.phi == tuple(reversed(qrac3.phi))


def test_d4_down_reverses_dual_eigenvalues(qrac3):
    t = d4_apply(qrac3, ["down"])
    assert t.theta == qrac3.theta
    assert t.theta_star == tuple(reversed(qrac3.theta_star))
    assert t.varphi == tuple(reversed(qrac3.phi))
    assert t.phi == tuple(reversed(qrac3.varphi))


def test_d4_commutation_relations(qrac3):
    p = qrac3
    assert d4_apply(p, ["ddown", "star"]) == d4_apply(p, ["star", "down"])
    assert d4_apply(p, ["down", "star"]) == d4_apply(p, ["star", "ddown"])
    assert d4_apply(p, ["down", "ddown"]) == d4_apply(p, ["ddown", "down"])


ORBIT_WORDS = [[], ["star"], ["down"], ["ddown"], ["down", "ddown"],
               ["star", "down"], ["star", "ddown"], ["star", "down", "ddown"]]


def test_d4_orbit_members_all_validate(qrac3, orphan3):
    for p in (qrac3, orphan3):
        for word in ORBIT_WORDS:
            assert validate(d4_apply(p, word)).ok()


def test_d4_orbit_distinct_for_asymmetric_array():
    theta = [Q.from_int(v) for v in (0, 1, 2, 3)]
    theta_star = [Q.from_int(v) for v in (0, 2, 4, 6)]
    p = complete_from_theta(Q, theta, theta_star, Q.from_int(-5))
    assert p is not None and validate(p).ok()
    orbit = [d4_apply(p, w) for w in ORBIT_WORDS]
    assert len(set(orbit)) == 8


def test_d4_unknown_generator(fix_d1):
    with pytest.raises(ValueError):
        d4_apply(fix_d1, ["flip"])


def test_beta_small_d(fix_d1, kraw2):
    assert beta_plus_one(fix_d1) is None
    assert beta_plus_one(kraw2) is None


def test_beta_and_base_qrac3(qrac3):
    assert beta_plus_one(qrac3) == Q.parse("7/2")
    bc = base_candidates(qrac3)
    assert bc.kind == "in_field"
    assert [Q.format(r) for r in bc.roots] == ["2", "1/2"]


def test_base_kraw3(kraw3):
    # beta = 2, double root at q = 1
    assert beta_plus_one(kraw3) == Q.from_int(3)
    bc = base_candidates(kraw3)
    assert bc.kind == "in_field"
    assert bc.roots == (Q.one(), Q.one())


def test_base_orphan_char2(orphan3):
    bc = base_candidates(orphan3)
    assert bc.kind == "in_field"
    one = orphan3.field.one()
    assert bc.roots == (one, one)


def test_base_quadratic_only():
    # theta follows theta_{i+1} = 3 + theta_i - theta_{i-1}, so beta = 1
    # and x^2 - x + 1 has no rational root
    theta = [Q.from_int(v) for v in (0, 1, 4, 6)]
    p = complete_from_theta(Q, theta, theta, Q.from_int(1))
    assert p is not None and validate(p).ok()
    bc = base_candidates(p)
    assert bc.kind == "quadratic_only"
    assert bc.roots is None
    c0, c1, c2 = bc.quadratic
    assert (Q.format(c0), Q.format(c1), Q.format(c2)) == ("1", "-1", "1")


def test_complete_from_theta_matches_fixture(kraw3):
    p = complete_from_theta(Q, list(kraw3.theta), list(kraw3.theta_star),
                            kraw3.phi[0])
    assert p == kraw3


def test_complete_from_theta_none_when_inconsistent():
    f5 = prime_field(5)
    theta = [f5.from_int(v) for v in (0, 1, 2, 3)]
    theta_star = [f5.from_int(v) for v in (0, 1, 2, 4)]
    assert complete_from_theta(f5, theta, theta_star, f5.one()) is None


def _naive_arrays(field, d):
    """Filter the full cartesian grid; only feasible for tiny fields."""
    elems = list(field.elements())
    nonzero = [x for x in elems if x]
    found = []
    for theta in itertools.permutations(elems, d + 1):
        for theta_star in itertools.permutations(elems, d + 1):
            for varphi_1 in nonzero:
                p = complete_from_theta(field, list(theta), list(theta_star),
                                        varphi_1)
                if p is not None:
                    found.append(p)
    return found


def test_enumeration_matches_naive_filter_gf3():
    f3 = prime_field(3)
    ours = list(enumerate_arrays(f3, 1))
    naive = _naive_arrays(f3, 1)
    assert set(ours) == set(naive)
    assert len(ours) == len(naive)


def test_enumeration_matches_naive_filter_gf4():
    f4 = extension_field(2, 2, (1, 1, 1))
    ours = list(enumerate_arrays(f4, 2))
    naive = _naive_arrays(f4, 2)
    assert set(ours) == set(naive)


def test_enumeration_all_valid_gf5():
    f5 = prime_field(5)
    count = 0
    for p in enumerate_arrays(f5, 2):
        assert validate(p).ok()
        count += 1
    assert count > 0


def test_enumeration_shards_partition():
    f5 = prime_field(5)
    whole = list(enumerate_arrays(f5, 2))
    parts = [list(enumerate_arrays(f5, 2, shard=(i, 3))) for i in range(3)]
    merged = [p for part in parts for p in part]
    assert sorted(map(hash, merged)) == sorted(map(hash, whole))


def test_enumeration_gf2_empty():
    f2 = prime_field(2)
    assert list(enumerate_arrays(f2, 1)) == []


def test_enumeration_respects_budget():
    from leonard import BudgetExceeded
    f5 = prime_field(5)
    with pytest.raises(BudgetExceeded):
        list(enumerate_arrays(f5, 2, budget=10))


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 60))
def test_d1_completion_exactly_when_varphi_nonzero(a, b, v):
    # varphi_1 = phi_1 - (theta*_1 - theta*_0)(theta_1 - theta_0), so the
    # candidate survives exactly when that difference is nonzero
    t1, s1 = a or 7, b or 7
    theta = [Q.from_int(0), Q.from_int(t1)]
    theta_star = [Q.from_int(0), Q.from_int(s1)]
    p = complete_from_theta(Q, theta, theta_star, Q.from_int(v))
    if v == t1 * s1:
        assert p is None
    else:
        assert p is not None and validate(p).ok()
