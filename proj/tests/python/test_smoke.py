import os
import subprocess

import pytest

import popstack


def test_passes():
    assert popstack.pop_pass([4, 1, 3, 5, 2]) == [1, 4, 3, 2, 5]
    assert popstack.pop_pass_k([3, 2, 4, 1], 2) == [2, 1, 3, 4]
    assert not popstack.is_k_sortable([3, 2, 4, 1], 2)
    assert popstack.min_passes([3, 2, 4, 1]) == 3
    assert popstack.block_decompose(popstack.parse("87634521")) == [[8, 7, 6, 3], [4], [5, 2, 1]]
    trace = popstack.sort_trace([2, 1, 3])
    assert trace == [([2, 1, 3], [[2, 1], [3]], [1, 2, 3])]


def test_patterns():
    assert popstack.reduce([25, 3, 9]) == [3, 1, 2]
    assert popstack.contains([3, 1, 2], [5, 4, 1, 2, 3])
    assert popstack.inversions([4, 1, 3, 5, 2]) == 5
    assert not popstack.barred_avoids([4, 7, 3, 1, 5, 6, 2], "4 6! 3 1! 5 7 2")
    with pytest.raises(ValueError):
        popstack.reduce([1, 1])


def test_two_avoidance():
    f, g = [[3, 2, 4, 1]], [[4, 1, 3, 5, 2]]
    assert popstack.two_contains([1, 4, 3, 5, 6, 2], f, g) == ([3, 2, 4, 1], [1, 2, 3, 5])
    assert popstack.two_contains([1, 5, 2, 4, 6, 3], f, g) is None
    assert popstack.two_avoids([4, 1, 3, 5, 2], *popstack.two_pass_pair())


def test_characterization():
    assert popstack.bounds([[2, 3, 1], [3, 1, 2]], 2) == (3, 9, 243)
    assert popstack.construct_omega1(1, 3) == [[2, 3, 1], [3, 1, 2]]
    rows = popstack.verify_pair(*popstack.two_pass_pair(), k=2, n_max=6)
    assert [r["sortable_count"] for r in rows] == [1, 2, 6, 16, 42, 112]
    assert all(not r["mismatches"] for r in rows)
    assert popstack.count_sortable(1, 5) == 16
    f, g = popstack.reduce_lemma_c([[2, 1], [3, 2, 1]], [[1, 2, 3]])
    assert f == [[2, 1]]
    with pytest.raises(popstack.BudgetExceeded):
        popstack.count_sortable(2, 12)


def test_pair_text():
    text = popstack.format_pair(*popstack.one_pass_pair())
    assert text == "[F]\n2 3 1\n3 1 2\n[G]\n"
    assert popstack.parse_pair(text) == popstack.one_pass_pair()


@pytest.mark.skipif("POPSTACK_CLI" not in os.environ, reason="POPSTACK_CLI not set")
def test_cli():
    done = subprocess.run([os.environ["POPSTACK_CLI"], "sort-trace", "41352"], capture_output=True, text=True)
    assert done.returncode == 0
    assert done.stdout.endswith("sorted after 2 passes: 12345\n")
