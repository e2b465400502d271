import json

import pytest

from lcdkit.classifier import (
    are_equivalent,
    bruteforce_classify,
    bruteforce_equiv_oracle,
    canonical_form,
    classify,
    csv_row,
    enumerate_candidates,
    exists,
    multiplicity_bounds,
    read_records,
    write_records,
)
from lcdkit.codes import MultiplicityVector, dual_distance_at_least, is_lcd, min_weight
from lcdkit.gf import GFMatrix
from lcdkit.simplex import induced_point_group
from lcdkit.theory import griesmer_bound, gaussian_count

T11 = [MultiplicityVector(3, 2, m) for m in [(4, 4, 3, 0), (3, 4, 3, 1), (3, 4, 2, 2)]]


def test_bounds_examples():
    b = multiplicity_bounds(2, 4, 20, 10)
    assert (b.lo, b.hi, b.pivot_indices) == (0, 2, (0, 1, 3, 7))
    b = multiplicity_bounds(3, 2, 11, 7)
    assert (b.lo, b.hi, b.pivot_indices) == (0, 4, (0, 1))
    b = multiplicity_bounds(2, 3, 7, 4)
    assert (b.lo, b.hi) == (1, 1) and not b.empty
    assert multiplicity_bounds(3, 3, 10, 7).pivot_indices == (0, 1, 4)
    assert multiplicity_bounds(2, 3, 7, 5).empty
    with pytest.raises(ValueError):
        multiplicity_bounds(2, 2, 5, 2)


def test_enumerate_candidates():
    assert list(enumerate_candidates(2, 3, 7, 4)) == []
    reps = {canonical_form(mv) for mv in enumerate_candidates(3, 2, 11, 7)}
    assert len(reps) == 3
    reps = {canonical_form(mv) for mv in enumerate_candidates(2, 4, 20, 10)}
    assert len(reps) == 1


def test_candidates_satisfy_constraints():
    b = multiplicity_bounds(3, 3, 14, 8)
    for mv in enumerate_candidates(3, 3, 14, 8):
        assert mv.n == 14 and is_lcd(mv) and min_weight(mv) == 8
        assert all(b.lo <= x <= b.hi for x in mv.m)
        assert all(mv.m[p] >= 1 for p in b.pivot_indices)


def test_canonical_form_examples(rng):
    a, b = MultiplicityVector(3, 2, (0, 3, 4, 4)), T11[0]
    assert canonical_form(a) == canonical_form(b) == MultiplicityVector(3, 2, (0, 3, 4, 4))
    const = MultiplicityVector(2, 4, (3,) * 15)
    assert canonical_form(const) == const
    g = induced_point_group(3, 3)
    mv = MultiplicityVector(3, 3, tuple(rng.integers(0, 5, size=13)))
    c = canonical_form(mv)
    assert canonical_form(c) == c
    for t in rng.integers(0, g.order, size=100):
        assert canonical_form(MultiplicityVector(3, 3, tuple(g.act(mv.m, int(t))))) == c


def test_are_equivalent():
    assert are_equivalent(T11[0], T11[0])
    assert not are_equivalent(T11[0], T11[1])
    assert not are_equivalent(T11[0], T11[2])
    with pytest.raises(ValueError):
        are_equivalent(T11[0], MultiplicityVector(2, 2, (1, 1, 1)))


def test_bruteforce_equiv_oracle():
    g = GFMatrix.from_rows(2, [[1, 0, 1, 1], [0, 1, 1, 0]])
    assert bruteforce_equiv_oracle(g, g)
    assert bruteforce_equiv_oracle(g, GFMatrix(2, g.entries[:, [3, 1, 0, 2]]))
    a = GFMatrix.from_rows(2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = GFMatrix.from_rows(2, [[1, 1, 0, 0], [0, 0, 1, 0]])
    assert not bruteforce_equiv_oracle(a, b)
    t = GFMatrix.from_rows(3, [[1, 0, 1], [0, 1, 2]])
    assert bruteforce_equiv_oracle(t, GFMatrix.from_rows(3, [[2, 0, 1], [0, 1, 1]]))
    with pytest.raises(ValueError):
        bruteforce_equiv_oracle(GFMatrix.zeros(3, 2, 7), GFMatrix.zeros(3, 2, 7))


def test_classify_examples():
    assert classify(3, 2, 11, 7).count == 3
    assert classify(2, 3, 14, 7).count == 1
    assert classify(2, 4, 26, 12).count == 106
    assert classify(3, 3, 27, 17).count == 110


def test_classify_refuses_small_dimensions():
    with pytest.raises(ValueError):
        classify(2, 2, 6, 3)
    with pytest.raises(ValueError):
        classify(3, 1, 6, 6)


@pytest.mark.parametrize("q,k,n,d", [(3, 2, 11, 7), (2, 3, 15, 7), (2, 4, 22, 11), (3, 3, 24, 15)])
def test_classify_soundness(q, k, n, d):
    res = classify(q, k, n, d)
    b = multiplicity_bounds(q, k, n, d)
    for mv in res.representatives:
        assert canonical_form(mv) == mv
        assert is_lcd(mv) and min_weight(mv) == d and mv.n == n
        assert dual_distance_at_least(mv, 2)
        assert all(b.lo <= x <= b.hi for x in mv.m)
    assert [mv.m for mv in res.representatives] == sorted(mv.m for mv in res.representatives)


@pytest.mark.parametrize("q,k,n,d", [(3, 2, 11, 7), (2, 3, 11, 5), (3, 3, 11, 6), (2, 4, 13, 6)])
def test_orderly_agrees_with_dedup_and_without_pivots(q, k, n, d):
    a = classify(q, k, n, d).representatives
    assert classify(q, k, n, d, method="dedup").representatives == a
    assert classify(q, k, n, d, method="dedup", pivots=False).representatives == a


def test_at_least_mode():
    exact = sum(classify(2, 3, 11, d).count for d in range(5, 8))
    assert classify(2, 3, 11, 5, mode="at-least").count == exact


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 2), (3, 3)])
@pytest.mark.parametrize("s", [1, 2])
def test_no_code_at_griesmer_for_multiples(q, k, s):
    n = gaussian_count(q, k) * s
    assert classify(q, k, n, griesmer_bound(q, n, k)).count == 0


def test_workers_shard_same_result():
    assert classify(2, 4, 30, 14, workers=2).representatives == classify(2, 4, 30, 14).representatives


def test_exists():
    assert exists(3, 2, 11, 7)
    assert not exists(2, 3, 7, 4)
    assert not exists(2, 3, 2, 1)


def test_oracle_counts_small():
    assert bruteforce_classify(3, 2, 4) == {k: classify(3, 2, 4, k).count
                                            for k in range(1, 4) if classify(3, 2, 4, k).count}


def test_record_io(tmp_path):
    res = classify(3, 2, 11, 7)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_records(res, a)
    write_records(classify(3, 2, 11, 7), b)
    assert a.read_bytes() == b.read_bytes()
    recs = read_records(a)
    assert [set(r) for r in recs] == [{"q", "k", "n", "d", "m", "canonical"}] * 3
    assert all(r["canonical"] is True and r["d"] == 7 for r in recs)
    assert csv_row(res) == "3,2,11,7,3"
    json.dumps(recs)
