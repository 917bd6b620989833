"""Smoke test for the `lfsort` Python extension.

Build and install first, e.g. `pip install ./crates/python`, then run
`python python/smoke_test.py`.
"""

import random
from fractions import Fraction

import lfsort


def main():
    rng = random.Random(0)
    values = [rng.randrange(-1000, 1000) for _ in range(5000)]
    for k in (1, 2, 3, 4):
        assert lfsort.sort(values, k) == sorted(values)
    assert lfsort.lf_sort([]) == []

    out, m = lfsort.run_instrumented([1, 2, 3])
    assert out == [1, 2, 3] and m.comparisons == 3
    _, m = lfsort.run_instrumented(list(range(7)))
    assert m.comparisons == 16 and m.moves == 0
    assert m.stages == lfsort.compute_schedule(7) == [(1, 2), (3, 4), (7, 0)]

    assert lfsort.compute_schedule(4095, k=3) == [(1, 14), (15, 112), (127, 896), (1023, 3072)]
    assert lfsort.stage_points(1, 40) == [1, 3, 7, 15, 31]

    perm = lfsort.generate("random", 100, seed=42)
    assert sorted(perm) == list(range(100))
    assert perm == lfsort.generate("random", 100, seed=42)
    try:
        lfsort.generate("fewunique:0", 10)
    except ValueError:
        pass
    else:
        raise AssertionError("fewunique:0 accepted")

    assert lfsort.worst_case_bound(7) == 17.0
    assert lfsort.avg_case_model(7) == 10.0
    assert lfsort.brute_force_avg(3) == Fraction(8, 3)
    model = lfsort.CostModel(2)
    assert model.worst_case_bound(15) <= model.worst_case_bound(63)
    lfsort.CostModel(5).worst_case_bound(1000)

    sample = list(range(200, 0, -1))
    sorted_qs, count = lfsort.quicksort_ref(sample)
    assert sorted_qs == sorted(sample)
    assert count == 200 * 199 // 2

    assert lfsort.verify_invariants(max_n=32, ks=[1, 2]) == []

    for bad in (0, lfsort.MAX_K + 1):
        try:
            lfsort.sort([2, 1], bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"k={bad} accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
