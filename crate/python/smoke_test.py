#!/usr/bin/env python3
"""Smoke test for the hlzeta_py extension module.

Builds the cdylib with cargo if needed, loads it, and exercises a few
evaluators against known values. Run from the repository root:

    python3 python/smoke_test.py
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def build_and_import():
    lib = os.path.join(ROOT, "target", "release", "libhlzeta_py.so")
    if not os.path.exists(lib):
        subprocess.run(
            ["cargo", "build", "--release", "-p", "hlzeta-py"],
            cwd=ROOT,
            check=True,
        )
    stage = tempfile.mkdtemp(prefix="hlzeta_py_")
    shutil.copy(lib, os.path.join(stage, "hlzeta_py.so"))
    sys.path.insert(0, stage)
    import hlzeta_py

    return hlzeta_py


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    hl = build_and_import()

    # zeta family
    approx(hl.zeta(2.0), math.pi**2 / 6, 1e-12)
    approx(hl.hurwitz_zeta(2.0, 1.0), math.pi**2 / 6, 1e-12)

    # gamma
    g_re, g_im = hl.gamma(0.5)
    approx(g_re, math.sqrt(math.pi), 1e-13)
    approx(g_im, 0.0, 1e-15)

    # Bessel
    approx(hl.bessel("j0", 0.0), 1.0, 0.0)
    approx(hl.bessel("k0", 1.0), 0.421024438240708333, 1e-12)

    # the series and its oddness
    v, bound = hl.eval_f(1.0)
    approx(v, 1.4728282319561854, 1e-9)
    assert bound < 1e-9
    vneg, _ = hl.eval_f(-1.0)
    assert vneg == -v

    # arithmetic
    assert hl.mobius(12) == 0
    assert hl.mobius(6) == 1

    # Franel second kind: closed form vs oracle
    formula, value = hl.franel2_closed(2, 1)
    assert "zeta2" in formula, formula
    oracle, _ = hl.franel2_oracle(2, 1)
    approx(value, oracle, 1e-8)
    approx(value, 2.5 - math.log(2) - math.pi**2 / 6, 1e-12)

    # theta cube near q -> 0
    approx(hl.theta4_cubed(1e-6), 1.0 - 6e-6, 1e-10)

    # a slice of the verification suite
    results = hl.verify("kubert.*")
    assert len(results) >= 10
    assert all(passed for (_, _, _, passed, _) in results), results

    ids = hl.list_identities()
    assert "crandall.s3" in ids and "franel2.certify" in ids

    print(f"smoke test passed: {len(ids)} identities registered")


if __name__ == "__main__":
    main()
