import pytest

from nestcodes.bounds import (
    comparison_row,
    johnson,
    predicted_size,
    rows_to_csv,
    table1_size,
    tower_size,
)
from nestcodes.errors import BadParams, GuardViolation


def johnson_direct(q, n, d, k):
    """Recursive form: floor((q^n-1)/(q^k-1) * J(n-1, d, k-1)), with J = 1 below d/2."""
    if k < d // 2:
        return 1
    inner = johnson_direct(q, n - 1, d, k - 1)
    num, den = (q**n - 1) * inner, q**k - 1
    return (num - num % den) // den


@pytest.mark.parametrize("q,n,d,k,val", [(3, 8, 2, 2, 896260), (2, 6, 2, 2, 651)])
def test_known_values(q, n, d, k, val):
    assert johnson(q, n, d, k) == val == johnson_direct(q, n, d, k)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n,k", [(6, 2), (6, 3), (8, 4), (9, 3)])
def test_matches_recursive_form(q, n, k):
    for d in range(2, 2 * k + 1, 2):
        assert johnson(q, n, d, k) == johnson_direct(q, n, d, k)


def test_bad_queries():
    with pytest.raises(BadParams):
        johnson(2, 6, 3, 2)
    with pytest.raises(BadParams):
        johnson(2, 6, 8, 2)


def test_table_sizes():
    assert table1_size(1, 3, 2, 2) == 40
    assert table1_size(3, 2, 2, 3) == 252
    with pytest.raises(GuardViolation):
        table1_size(1, 2, 2, 2)
    with pytest.raises(GuardViolation):
        table1_size(4, 2, 2, 4)


def test_predicted_sizes():
    assert predicted_size({"family": "rrt", "q": 3, "k": 2}) == 40
    assert predicted_size({"family": "nested2e", "q": 3, "k": 2, "e": 2}) == 131200
    assert predicted_size({"family": "nestedpe", "q": 2, "k": 2, "p": 3, "e": 2}) == 252 * (2**6 * (2**6 - 1) * (2**18 - 1) // (2**6 - 1))
    assert tower_size(2, 2, [3, 3]) == predicted_size({"family": "nestedpe", "q": 2, "k": 2, "p": 3, "e": 2})
    with pytest.raises(GuardViolation):
        predicted_size({"family": "rrt", "q": 2, "k": 2})


def test_csv_has_header_and_rows():
    text = rows_to_csv([comparison_row(3, 2, 4)])
    lines = text.strip().splitlines()
    assert lines[0].startswith("q,k,r,family")
    assert len(lines) == 2
