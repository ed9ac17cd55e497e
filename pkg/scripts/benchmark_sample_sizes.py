"""Print required sample sizes across the bundled benchmark grid for the
four standard variance policies (compensator, counting, wu,
uncorrelated_null), at two-sided level 0.05 and power 0.8.

Usage: python3 scripts/benchmark_sample_sizes.py [--delta 1.2 1.5 2.0]
"""

import argparse

from singlearm.design import DesignSpec, sample_size
from singlearm.presets import (
    BENCHMARK_ACCRUAL,
    BENCHMARK_FOLLOW_UP,
    BENCHMARK_HAZARD_RATIOS,
    BENCHMARK_MEDIANS,
    BENCHMARK_POLICIES,
    BENCHMARK_SHAPES,
    benchmark_null,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--delta",
        type=float,
        nargs="+",
        default=list(BENCHMARK_HAZARD_RATIOS),
        help="planning hazard ratios to tabulate",
    )
    args = parser.parse_args()

    labels = [policy.label for policy in BENCHMARK_POLICIES]
    for delta in args.delta:
        print(f"hazard ratio {delta:g}")
        print(f"{'shape':>7} {'median':>7}  " + "  ".join(f"{lab:>17}" for lab in labels))
        for shape in BENCHMARK_SHAPES:
            for median in BENCHMARK_MEDIANS:
                sizes = []
                for policy in BENCHMARK_POLICIES:
                    spec = DesignSpec(
                        null_model=benchmark_null(shape, median),
                        follow_up=BENCHMARK_FOLLOW_UP,
                        weight_policy=policy,
                        hazard_ratio=delta,
                        accrual_length=BENCHMARK_ACCRUAL,
                    )
                    sizes.append(sample_size(spec).n)
                print(
                    f"{shape:>7.2f} {median:>7.1f}  "
                    + "  ".join(f"{n:>17d}" for n in sizes)
                )
        print()


if __name__ == "__main__":
    main()
