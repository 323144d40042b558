"""Unit tests for the degree-2/3 classification and determinant apparatus."""

import pytest

from polmod import (
    QQ,
    UsageError,
    aux_poly,
    build_matrix,
    classify,
    det_T,
    det_identity_check,
    exception_equation,
    gcd_form_check,
    h_gram_check,
    is_n_exception,
    rank_lower_bound_check,
)

from conftest import random_nonzero_rational, random_rational, seeded


def test_classify_degree_two():
    assert classify(2, (1, 2), 5) == "P1_SQUARED"
    assert classify(2, (QQ(1, 2), 1), 3) == "P1_SQUARED"
    assert classify(2, (1, 0), 3) == "P2"
    assert classify(2, (0, 1), 3) == "P2"
    assert classify(2, (1, -2), 3) == "P2"
    # b = 2a with a = 0 is the zero ray in disguise only when b = 0 too;
    # (0, b) is a genuine P2 point
    assert classify(2, (0, 5), 4) == "P2"


def test_classify_degree_three():
    assert classify(3, (1, 3, 6), 4) == "P1_CUBED"
    assert classify(3, (QQ(1, 2), QQ(3, 2), 3), 6) == "P1_CUBED"
    # m[3] is the power sum p_3, a collapse point for every n >= 3
    assert classify(3, (1, 0, 0), 4) == "P3"
    assert classify(3, (0, 1, 0), 3) == "H3"
    # collapse points solved from the defining equation
    assert classify(3, (1, 1, 0), 4) == "P3"
    assert classify(3, (1, 1, QQ(2, 9)), 5) == "P3"


def test_classify_input_validation():
    with pytest.raises(UsageError):
        classify(2, (0, 0), 3)
    with pytest.raises(UsageError):
        classify(3, (0, 0, 0), 3)
    with pytest.raises(UsageError):
        classify(4, (1, 0, 0, 0), 3)
    with pytest.raises(UsageError):
        classify(2, (1, 0, 0), 3)
    with pytest.raises(UsageError):
        classify(3, (1, 0), 3)
    with pytest.raises(UsageError):
        classify(3, (1, 0, 0), 1)


def test_exception_predicate_known_points():
    for n in range(2, 12):
        assert not is_n_exception(1, 3, 6, n)
        assert not is_n_exception(QQ(1, 3), 1, 2, n)
    for n in range(3, 12):
        # 12ab + 6(n-2)ac = 4(n-1)b^2 fails at (1, 1, 1) for every n >= 3
        assert not is_n_exception(1, 1, 1, n)
        # power sums and pure products solve it only when b = 0 and one
        # of a, c is free: (1, 0, 0) gives 0 = 0
        assert is_n_exception(1, 0, 0, n)
        assert is_n_exception(0, 0, 1, n)
        assert not is_n_exception(0, 1, 0, n)
    # the pinned two-variable convention
    assert is_n_exception(1, 0, 5, 2)
    assert is_n_exception(1, 3, 5, 2)
    assert not is_n_exception(1, 1, 1, 2)


def test_exception_predicate_solved_points():
    rng = seeded("solve-c")
    for n in range(3, 20):
        for _ in range(5):
            a = random_nonzero_rational(rng)
            b = random_nonzero_rational(rng)
            # solve 12ab + 6(n-2)ac = 4(n-1)b^2 for c
            c = (4 * (n - 1) * b * b - 12 * a * b) / (6 * (n - 2) * a)
            if b == 3 * a and c == 6 * a:
                continue
            assert is_n_exception(a, b, c, n)
            assert not is_n_exception(a, b, c + 1, n)


def test_exception_equation_reduced_tuples():
    # frozen values of the reduced integer form for small n
    assert exception_equation(3) == (3, 2, 1, 4)
    assert exception_equation(4) == (1, 1, 1, 1)
    assert exception_equation(5) == (3, 2, 3, 8)
    assert exception_equation(6) == (3, 1, 2, 5)
    assert exception_equation(7) == (1, 2, 5, 4)
    with pytest.raises(UsageError):
        exception_equation(2)


def test_reduced_equation_is_primitive_and_consistent():
    rng = seeded("gcd-form")
    for n in range(3, 43):
        n1, n2, n3, n4 = exception_equation(n)
        assert all(v > 0 for v in (n1, n2, n3, n4))
        for _ in range(10):
            a, b, c = (random_rational(rng) for _ in range(3))
            assert gcd_form_check(a, b, c, n)


def test_t_pattern_matrix_and_determinant():
    m = build_matrix("T", 2, (7, 99, 3, 5, 11))
    assert m.rows == ((QQ(7), QQ(5)), (QQ(3), QQ(11)))
    assert m.det() == 7 * 11 - 5 * 3
    assert det_T(7, 99, 3, 5, 11, 2) == m.det()
    rng = seeded("detT")
    for n in range(2, 9):
        params = tuple(random_rational(rng) for _ in range(5))
        assert det_T(*params, n) == build_matrix("T", n, params).det()
    # the degenerate direction x = y
    assert det_T(2, 2, 1, 1, 1, 5) == 0


def test_gram_matrices_and_closed_forms():
    rng = seeded("gram")
    for kind in ("E", "D", "G"):
        for n in (3, 4, 5):
            params = tuple(random_nonzero_rational(rng) for _ in range(3))
            assert det_identity_check(kind, *params, n)
    with pytest.raises(UsageError):
        det_identity_check("X", 1, 1, 1, 4)
    with pytest.raises(UsageError):
        det_identity_check("E", 1, 1, 1, 2)


def test_matrix_shapes():
    n = 4
    pairs = n * (n - 1) // 2
    e = build_matrix("E", n, (1, 2, 3))
    assert len(e.rows) == n + pairs
    assert all(len(row) == n + 1 for row in e.rows)
    d = build_matrix("D", n, (1, 2, 3))
    assert all(len(row) == n for row in d.rows)
    g = build_matrix("G", n, (1, 2, 3))
    assert all(len(row) == n for row in g.rows)
    h = build_matrix("H", n, (1, 2, 3))
    assert len(h.rows) == n
    assert all(len(row) == n - 1 for row in h.rows)


def test_h_gram_factorization():
    rng = seeded("hgram")
    for n in (3, 4, 5, 6):
        for _ in range(5):
            x, y, z = (random_rational(rng) for _ in range(3))
            assert h_gram_check(x, y, z, n)
    with pytest.raises(UsageError):
        h_gram_check(1, 1, 1, 2)


def test_aux_poly_relations():
    # P is the defining equation; a point solved for c makes it vanish
    a, b = QQ(2), QQ(5)
    n = 6
    c = (4 * (n - 1) * b * b - 12 * a * b) / (6 * (n - 2) * a)
    assert aux_poly("P", a, b, c, n) == 0
    assert aux_poly("P", a, b, c + 1, n) != 0
    with pytest.raises(UsageError):
        aux_poly("Z", 1, 1, 1, 3)


def test_rank_lower_bound():
    # generic cubics reach n + 1; collapse points settle at n; the
    # binomial cube stays far below
    assert rank_lower_bound_check(1, 1, 1, 4)
    assert rank_lower_bound_check(1, 0, 0, 5)
    assert not rank_lower_bound_check(1, 3, 6, 4)
    with pytest.raises(UsageError):
        rank_lower_bound_check(0, 0, 0, 4)
