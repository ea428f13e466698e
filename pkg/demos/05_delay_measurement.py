"""Enumeration-delay instrumentation: the contranominal scale has 2^n
concepts, and emitting on backtrack keeps the gap between outputs small.
"""
from fcakit import Context, measure_delay
from fcakit.bitset import full_mask


def contranominal(n):
    full = full_mask(n)
    return Context(tuple(f"g{i}" for i in range(n)), tuple(f"m{i}" for i in range(n)),
                   tuple(full & ~(1 << i) for i in range(n)))


print(f"{'n':>3} {'concepts':>9} {'closures':>9} {'max delay':>10} {'bound n^3':>10}")
for n in range(2, 9):
    stats = measure_delay(contranominal(n))
    print(f"{n:>3} {stats.concept_count:>9} {stats.total_steps:>9} "
          f"{stats.max_delay:>10} {n ** 3:>10}")
