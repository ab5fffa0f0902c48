import cmath
import itertools

import pytest

import mirror_models as mm


def test_p1_values():
    recs = mm.solve(1, q=[2.0])
    assert len(recs) == 2
    root = 2 * cmath.sqrt(2.0)
    for r in recs:
        assert min(abs(r["value"] - root), abs(r["value"] + root)) < 1e-10
        assert not r["degenerate"]


def test_fl3_count_and_toda():
    recs = mm.solve(2, q=[1.1 + 0.3j, 0.8])
    assert len(recs) == mm.expected_count(2) == 6
    for r in recs:
        assert max(abs(c) for c in r["conserved"]) < 1e-8
        assert r["stabilizer_ok"]


def test_expected_counts():
    assert mm.expected_count(3, [1, 3]) == 6
    assert mm.expected_count(2, [2]) == 3


def test_braid_suite_report():
    report, code = mm.run("braid", samples=5)
    assert code == 0
    names = [row["name"] for row in report["rows"]]
    assert sum(n.startswith("transform/") for n in names) == 16


def test_report_is_deterministic():
    a, _ = mm.run("compare", rank=2, samples=5, seed=7)
    b, _ = mm.run("compare", rank=2, samples=5, seed=7)
    assert a == b


def test_invalid_config():
    with pytest.raises(ValueError):
        mm.run("solve", rank=0)
    with pytest.raises(ValueError):
        mm.run("braid", bogus=1)


def brute_count(v, w, p):
    # points of B+ v B- / B- meeting B- w B- / B- for rank 1 are p - 1 (v = e, w = s) or 1 (v = w)
    return p - 1 if (v, w) == ((), (1,)) else 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_rank_one_counts(p):
    for v in [(), (1,)]:
        assert mm.cell_count(1, list(v), [1], p) == brute_count(v, (1,), p)
        assert mm.stratum_count(1, [1], list(v), p) == brute_count(v, (1,), p)


def test_reduced_words_a2():
    words = {tuple(w) for w in mm.reduced_words(2, mm.longest_word(2))}
    assert words == {(1, 2, 1), (2, 1, 2)}
    assert all(len(w) == 6 for w in mm.reduced_words(3, mm.longest_word(3)))
    assert len(list(itertools.islice(mm.reduced_words(3, mm.longest_word(3)), 100))) == 16
