#!/usr/bin/env python3
"""Regenerates tests/data/welch_cases.inc.

Emits randomized sample pairs together with Welch t-test reference results
(statistic, Welch-Satterthwaite df, two-sided p) computed by SciPy. The file
is frozen into the repository so the C++ tests never depend on Python.
"""

import random
from pathlib import Path

import numpy as np
from scipy import stats

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "welch_cases.inc"


def welch_df(a, b):
    va, vb = np.var(a, ddof=1), np.var(b, ddof=1)
    na, nb = len(a), len(b)
    num = (va / na + vb / nb) ** 2
    den = (va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1)
    return num / den


def fmt(values):
    return "{" + ", ".join(f"{v!r}" for v in values) + "}"


def main():
    rng = random.Random(20190601)
    cases = []
    for i in range(50):
        na = rng.randint(2, 40)
        nb = rng.randint(2, 40)
        loc_a = rng.uniform(-50.0, 50.0)
        loc_b = loc_a + rng.uniform(-10.0, 10.0)
        scale_a = rng.uniform(0.5, 20.0)
        scale_b = rng.uniform(0.5, 20.0)
        a = [round(rng.gauss(loc_a, scale_a), 6) for _ in range(na)]
        b = [round(rng.gauss(loc_b, scale_b), 6) for _ in range(nb)]
        # Skip accidental zero-variance draws; the degenerate convention is
        # covered by dedicated hand-written tests.
        if np.var(a, ddof=1) == 0.0 or np.var(b, ddof=1) == 0.0:
            continue
        t, p = stats.ttest_ind(a, b, equal_var=False)
        cases.append((a, b, float(t), float(welch_df(a, b)), float(p)))

    with OUT.open("w") as f:
        f.write("// Generated by tools/gen_welch_cases.py; do not edit by hand.\n")
        f.write("// Reference statistics come from scipy.stats.ttest_ind(equal_var=False).\n")
        for a, b, t, df, p in cases:
            f.write("{%s,\n %s,\n %r, %r, %r},\n" % (fmt(a), fmt(b), t, df, p))
    print(f"wrote {len(cases)} cases to {OUT}")


if __name__ == "__main__":
    main()
