import pytest

from forestlie import dyck

# full coefficient lists for lengths 1..3
TABLE_1 = {(0,): 1, (1,): 2}
TABLE_2 = {(0, 0): 1, (0, 1): 3, (0, 2): 2, (1, 0): 2, (1, 1): 4}
TABLE_3 = {
    (0, 0, 0): 1, (0, 0, 1): 4, (0, 0, 2): 5, (0, 0, 3): 2, (0, 1, 0): 3,
    (0, 1, 1): 9, (0, 1, 2): 6, (0, 2, 0): 2, (0, 2, 1): 4, (1, 0, 0): 2,
    (1, 0, 1): 6, (1, 0, 2): 4, (1, 1, 0): 4, (1, 1, 1): 8,
}


def test_enumerate_small():
    assert list(dyck.enumerate_dyck(0)) == [()]
    assert list(dyck.enumerate_dyck(1)) == [(0,), (1,)]
    assert list(dyck.enumerate_dyck(2)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)]
    assert list(dyck.enumerate_dyck(3)) == sorted(TABLE_3)


def test_enumerate_is_lexicographic_and_counted():
    for k in range(9):
        vectors = list(dyck.enumerate_dyck(k))
        assert vectors == sorted(vectors)
        assert len(vectors) == len(set(vectors)) == dyck.catalan(k + 1)
        assert dyck.count_dyck(k) == dyck.catalan(k + 1)


def test_deficit_profile_examples():
    assert dyck.deficit_profile((0, 1, 0, 1, 3, 0, 1)) == (0, 1, 1, 2, 2, 0, 1, 1)
    assert dyck.deficit_profile(()) == (0,)
    assert dyck.deficit_profile((1, 1, 1)) == (0, 0, 0, 0)


def test_deficit_recurrence():
    # D_j = D_{j-1} - p_j + 1
    for k in range(7):
        for p in dyck.enumerate_dyck(k):
            d = dyck.deficit_profile(p)
            assert all(d[j] == d[j - 1] - p[j - 1] + 1 for j in range(1, k + 1))


def test_rejects_non_dyck():
    with pytest.raises(ValueError, match="index 1"):
        dyck.deficit_profile((2,))
    with pytest.raises(ValueError, match="index 3"):
        dyck.coeff_cp((0, 1, 3))
    with pytest.raises(ValueError, match="not a Dyck vector"):
        dyck.coeff_cp((1, -1))
    assert not dyck.is_dyck((0, 3))
    assert dyck.is_dyck((1, 0, 2))


def test_coeff_examples():
    assert dyck.coeff_cp((0, 1, 0, 1, 3, 0, 1)) == 72
    assert dyck.coeff_cp((0, 0, 2, 1, 1)) == 45
    assert dyck.coeff_cp((1, 1, 1)) == 8
    assert dyck.coeff_cp(()) == 1


def test_coefficient_tables():
    assert dyck.coefficient_table(1) == TABLE_1
    assert dyck.coefficient_table(2) == TABLE_2
    assert dyck.coefficient_table(3) == TABLE_3


def test_two_product_forms_agree():
    # coeff_cp raises SelfCheckError if the restricted rational product differs
    for k in range(8):
        for p in dyck.enumerate_dyck(k):
            assert dyck.coeff_cp(p) >= 1


def test_paths_match_figures():
    # the two length-7 vectors drawn as 16-step paths
    assert dyck.vector_to_path((1, 0, 2, 0, 0, 1, 2)) == (0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1)
    assert dyck.vector_to_path((0, 1, 0, 1, 3, 0, 1)) == (0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1)
    assert dyck.path_to_vector((0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1)) == (1, 0, 2, 0, 0, 1, 2)


def test_path_empty_convention():
    assert dyck.vector_to_path(()) == ()
    assert dyck.path_to_vector(()) == ()


def test_path_roundtrip():
    for k in range(7):
        for p in dyck.enumerate_dyck(k):
            path = dyck.vector_to_path(p)
            if k > 0:
                assert len(path) == 2 * (k + 1)
                assert dyck.vector_to_path(dyck.path_to_vector(path)) == path
            assert dyck.path_to_vector(path) == p


def test_malformed_paths():
    with pytest.raises(ValueError, match="step 1"):
        dyck.path_to_vector((1, 0))  # starts with North
    with pytest.raises(ValueError, match="East steps vs"):
        dyck.path_to_vector((0, 0, 1))
    with pytest.raises(ValueError, match="not 0"):
        dyck.path_to_vector((0, 2))


def test_binom_is_total():
    assert dyck.binom(3, -1) == 0
    assert dyck.binom(3, 4) == 0
    assert dyck.binom(3, 2) == 3
    assert dyck.binom(0, 0) == 1
