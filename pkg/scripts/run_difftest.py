#!/usr/bin/env python3
"""Standard differential campaign: exhaustive tiny profiles plus random grids."""

import sys

from semitrans.generate import GenSpec
from semitrans.harness import METHODS, difftest


def main() -> int:
    failed = False
    for t in range(0, 4):
        report = difftest(GenSpec(k=4, t=t, mode="exhaustive"), methods=METHODS)
        print(report.render())
        failed |= not report.ok
    for k, t, density, count in [
        (5, 3, 0.5, 400),
        (6, 4, 0.35, 300),
        (6, 4, 0.5, 300),
        (6, 4, 0.65, 300),
    ]:
        report = difftest(
            GenSpec(k=k, t=t, density=density, seed=20_000 + k * 100 + t), count=count
        )
        print(report.render())
        failed |= not report.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
