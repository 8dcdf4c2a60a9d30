from fractions import Fraction

import pytest

from polarb.qcount import eigen_data
from polarb.scheme import (
    SchemeError,
    check_intersection_numbers,
    eigenspace_support,
    idempotent,
    verify_spectrum,
)


def test_valencies_h34(relations):
    rel = relations("Hodd", 2, 4)
    assert rel.valencies == (1, 10, 16)
    assert sum(rel.valencies) == rel.n


def test_valencies_q42(relations):
    rel = relations("Qparabolic", 2, 2)
    assert rel.valencies == (1, 6, 8)


def test_relations_partition_and_symmetry(relations):
    rel = relations("W", 2, 3)
    n = rel.n
    full = (1 << n) - 1
    for x in range(n):
        acc = 0
        for i in range(rel.d + 1):
            assert acc & rel.rows[i][x] == 0  # pairwise disjoint
            acc |= rel.rows[i][x]
        assert acc == full
    for i in range(rel.d + 1):
        for x in range(n):
            for y in range(n):
                assert (rel.rows[i][x] >> y) & 1 == (rel.rows[i][y] >> x) & 1
    assert all(rel.rows[0][x] == 1 << x for x in range(n))


def test_intersection_numbers_w33(relations):
    rel = relations("W", 2, 3)
    p = check_intersection_numbers(rel)  # full homogeneity sweep over 40x40 pairs
    for i in range(3):
        assert p[i][i][0] == rel.valencies[i]
        for j in range(3):
            for k in range(3):
                assert p[0][j][k] == (1 if j == k else 0)


def test_annihilating_polynomials(relations):
    # Q(4,2): A_1 annihilated by (x-6)(x-1)(x+3); H(3,4): A_2 by (x-16)(x+2)(x-4)
    rel = relations("Qparabolic", 2, 2)
    eig = eigen_data("Qparabolic", 2, 2)
    assert [eig.P[r][1] for r in range(3)] == [6, 1, -3]
    assert verify_spectrum(rel, eig)

    rel34 = relations("Hodd", 2, 4)
    eig34 = eigen_data("Hodd", 2, 4)
    assert [eig34.P[r][2] for r in range(3)] == [16, -2, 4]
    assert verify_spectrum(rel34, eig34)


def test_spectrum_mismatch_is_detected(relations):
    rel = relations("Qparabolic", 2, 2)
    wrong = eigen_data("W", 2, 3)  # wrong space entirely
    with pytest.raises((SchemeError, ValueError)):
        verify_spectrum(rel, wrong)


def test_idempotency_and_orthogonality_h34(relations):
    rel = relations("Hodd", 2, 4)
    eig = eigen_data("Hodd", 2, 4)
    n = rel.n
    E1 = idempotent(rel, eig, 1)
    sq = [[sum(E1[i][t] * E1[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    assert sq == E1
    E2 = idempotent(rel, eig, 2)
    prod = [[sum(E1[i][t] * E2[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    assert all(x == 0 for row in prod for x in row)


def test_support_of_all_ones(relations):
    rel = relations("Hodd", 2, 4)
    eig = eigen_data("Hodd", 2, 4)
    assert eigenspace_support([1] * rel.n, rel, eig) == {0}


def test_support_of_latins_minus_greeks(relations):
    from polarb.extremal import bipartition_latins_greeks

    rel = relations("Qplus", 4, 2)
    eig = eigen_data("Qplus", 4, 2)
    x1, _ = bipartition_latins_greeks(rel.cat)
    inside = set(x1)
    v = [1 if i in inside else -1 for i in range(rel.n)]
    assert eigenspace_support(v, rel, eig) == {4}


def test_support_of_point_pencil_q42(relations):
    rel = relations("Qparabolic", 2, 2)
    eig = eigen_data("Qparabolic", 2, 2)
    cat = rel.cat
    pencil = [1 if (cat.point_masks[i] >> 0) & 1 else 0 for i in range(cat.n)]
    assert sum(pencil) == 3
    assert eigenspace_support(pencil, rel, eig) == {0, 1}


def test_support_handles_rational_vectors(relations):
    rel = relations("Qparabolic", 2, 2)
    eig = eigen_data("Qparabolic", 2, 2)
    v = [Fraction(1, 3)] * rel.n
    assert eigenspace_support(v, rel, eig) == {0}
