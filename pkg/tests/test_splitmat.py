"""Exact matrices: bidiagonal pair, transition matrices, idempotents."""

import pytest

from leonard import (
    BaseNotApplicable,
    IdentityViolated,
    RepeatedEigenvalue,
    SingularMatrix,
    SquareMatrix,
    build,
    make_array,
    primitive_idempotents,
    s_matrix,
    verify_conjugation,
    verify_leonard_conditions,
)
from conftest import Q, qarr


def mat(rows):
    return SquareMatrix.from_rows(Q, [[Q.from_int(v) for v in row]
                                      for row in rows])


def test_matrix_algebra_basics():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert a + b == mat([[1, 3], [4, 4]])
    assert a - a == mat([[0, 0], [0, 0]])
    assert a * b == mat([[2, 1], [4, 3]])
    assert a.transpose() == mat([[1, 3], [2, 4]])
    assert a.scale(Q.from_int(2)) == mat([[2, 4], [6, 8]])
    assert a[(0, 1)] == Q.from_int(2)


def test_matrix_inverse_exact():
    a = mat([[1, 2], [3, 4]])
    assert a * a.inverse() == SquareMatrix.identity(Q, 2)
    # needs a row swap to find the pivot
    b = mat([[0, 1], [1, 0]])
    assert b.inverse() == b
    with pytest.raises(SingularMatrix):
        mat([[1, 2], [2, 4]]).inverse()


def test_matrix_json_round_trip():
    a = mat([[1, 2], [3, 4]])
    assert SquareMatrix.from_json(Q, a.to_json()) == a


def test_fix_d1_split_matrices(fix_d1):
    m = build(fix_d1)
    expect = {
        "A": [[0, 0], [1, 1]],
        "B": [[1, 0], [1, 0]],
        "Astar": [[0, 1], [0, 1]],
        "Bstar": [[0, 2], [0, 1]],
        "T": [[1, 0], [1, 1]],
        "Tstar": [[1, 0], [1, 1]],
        "Tdown": [[1, 0], [1, -1]],
        "D": [[1, 0], [0, 1]],
        "Ddown": [[1, 0], [0, 2]],
        "Z": [[0, 1], [1, 0]],
        "H": [[0, 0], [0, 1]],
        "Hstar": [[0, 0], [0, 1]],
        "G": [[1, -1], [0, 1]],
    }
    for name, rows in expect.items():
        assert getattr(m, name) == mat(rows), name


def test_conjugation_moves_one_matrix_pair_to_other(qrac3):
    m = build(qrac3)
    gi = m.G.inverse()
    assert gi * m.A * m.G == m.B
    assert gi * m.Astar * m.G == m.Bstar


def test_conjugation_report_passes_on_fixtures(fix_d1, kraw3, qrac3, orphan3):
    for p in (fix_d1, kraw3, qrac3, orphan3):
        rep = verify_conjugation(p)
        assert rep.ok(), rep.failures


def test_conjugation_detects_broken_varphi(kraw3):
    broken = make_array(
        kraw3.field, kraw3.theta, kraw3.theta_star,
        (Q.from_int(3),) + kraw3.varphi[1:], kraw3.phi)
    rep = verify_conjugation(broken)
    assert not rep.ok()


def test_leonard_conditions_on_fixtures(fix_d1, kraw3, qrac3, orphan3):
    for p in (fix_d1, kraw3, qrac3, orphan3):
        rep = verify_leonard_conditions(p)
        assert rep.ok(), rep.failures


def test_leonard_conditions_fail_off_tridiagonal(kraw3):
    # a vanishing varphi entry decouples the flag and kills the
    # required nonzero blocks next to the diagonal
    broken = make_array(kraw3.field, kraw3.theta, kraw3.theta_star,
                        (Q.zero(),) + kraw3.varphi[1:], kraw3.phi)
    rep = verify_leonard_conditions(broken)
    assert not rep.ok()
    assert any("nonzero" in f for f in rep.failures)


def test_primitive_idempotents_resolve_identity(kraw3):
    m = build(kraw3)
    es = primitive_idempotents(m.A, list(kraw3.theta))
    n = kraw3.d + 1
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == SquareMatrix.identity(Q, n)
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            assert e * f == (e if i == j else SquareMatrix.build(
                Q, n, lambda r, c: Q.zero()))


def test_primitive_idempotents_reject_repeats():
    a = mat([[1, 0], [0, 1]])
    with pytest.raises(RepeatedEigenvalue):
        primitive_idempotents(a, [Q.one(), Q.one()])


def test_s_matrix_matches_g_for_qrac3(qrac3):
    m = build(qrac3)
    for q in (Q.from_int(2), Q.parse("1/2")):
        S = s_matrix(qrac3, q)
        alpha = S.rows[0][0].inverse()
        assert m.G == S.scale(alpha)


def test_s_matrix_low_d_is_base_independent(fix_d1, kraw2):
    for p, q_texts in ((fix_d1, ("2", "3", "-5", "7/3")),
                       (kraw2, ("2", "-2", "1/3"))):
        tables = {s_matrix(p, Q.parse(t)) for t in q_texts}
        assert len(tables) == 1
        S = tables.pop()
        alpha = S.rows[0][0].inverse()
        assert build(p).G == S.scale(alpha)


def test_s_matrix_rejects_degenerate_base(kraw3):
    for text in ("0", "1", "-1"):
        with pytest.raises(BaseNotApplicable):
            s_matrix(kraw3, Q.parse(text))


def test_s_matrix_rejects_wrong_ratio(qrac3):
    # beta + 1 = 7/2 here, but q = 3 gives 3 + 1/3 + 1
    with pytest.raises(BaseNotApplicable):
        s_matrix(qrac3, Q.from_int(3))


def test_g_unit_corner_enforced(fix_d1):
    m = build(fix_d1)
    assert m.G.rows[0][0] == Q.one()
