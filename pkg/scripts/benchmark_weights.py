"""Print expected event rates and uncorrelated-null planning weights for
the bundled benchmark grid: Weibull reference laws over six shapes and
three medians, recruited uniformly for 3 years and analyzed after 1 more.

Usage: python3 scripts/benchmark_weights.py
"""

from singlearm.design import expected_event_rate, weight_uncorrelated_null
from singlearm.presets import (
    BENCHMARK_MEDIANS,
    BENCHMARK_SHAPES,
    benchmark_censoring,
    benchmark_null,
)


def main() -> None:
    censoring = benchmark_censoring()
    header = f"{'shape':>7}"
    for median in BENCHMARK_MEDIANS:
        header += f"  {'rate(m=%g)' % median:>10}  {'w0(m=%g)' % median:>9}"
    print(header)
    for shape in BENCHMARK_SHAPES:
        row = f"{shape:>7.2f}"
        for median in BENCHMARK_MEDIANS:
            null = benchmark_null(shape, median)
            rate = expected_event_rate(null, censoring)
            weight = weight_uncorrelated_null(null, censoring)
            row += f"  {rate:>10.4f}  {weight:>9.4f}"
        print(row)


if __name__ == "__main__":
    main()
