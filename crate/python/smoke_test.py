#!/usr/bin/env python3
"""Smoke test for the cliffordian_py extension module.

Builds the cdylib with cargo, loads it, and exercises the bound surface:
representations, relation verification, sign coefficients, prolongation
dimensions, S^xi membership and the planar-connection demo.

Usage: python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import sysconfig
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
BUILD_DIR = REPO / "python" / "_build"


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "cliffordian-py"],
        cwd=REPO,
        check=True,
    )
    if sys.platform == "darwin":
        lib = REPO / "target" / "release" / "libcliffordian_py.dylib"
    elif sys.platform.startswith("win"):
        lib = REPO / "target" / "release" / "cliffordian_py.dll"
    else:
        lib = REPO / "target" / "release" / "libcliffordian_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    BUILD_DIR.mkdir(parents=True, exist_ok=True)
    target = BUILD_DIR / f"cliffordian_py{suffix}"
    shutil.copy2(lib, target)
    return target


def as_fraction_matrix(rows):
    return [[Fraction(int(n), int(d)) for (n, d) in row] for row in rows]


def main() -> int:
    build_extension()
    sys.path.insert(0, str(BUILD_DIR))
    import cliffordian_py as cp

    checks = 0

    def check(name, cond):
        nonlocal checks
        checks += 1
        if not cond:
            print(f"FAIL  {name}")
            raise SystemExit(1)
        print(f"PASS  {name}")

    check("classify(3,0)", cp.classify(3, 0) == ["Cl(0,1)", "Cl(2,0)"])
    check("classify(2,2)", cp.classify(2, 2) == ["Cl(1,1)", "Cl(1,1)"])

    rep = cp.Representation(0, 2, kind="left-regular")
    check("blade names", rep.blades() == ["E", "I1", "I2", "I1I2"])
    valid, violations = rep.verify()
    check("relations valid", valid and violations == [])
    check("monomial", rep.monomial())
    check("span rank", rep.span_rank() == 4)

    mats = [as_fraction_matrix(m) for m in rep.matrices()]
    check("unit blade is identity", mats[0] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    # I1^2 = -E through exact Fraction arithmetic
    i1 = mats[1]
    sq = [
        [sum(i1[r][l] * i1[l][c] for l in range(4)) for c in range(4)]
        for r in range(4)
    ]
    check("I1 squares to -E", sq == [[-1 if r == c else 0 for c in range(4)] for r in range(4)])

    g = as_fraction_matrix(rep.generic_element([(1, 1), (2, 1), (0, 1), (0, 1)]))
    check("generic element entry", g[1][0] == Fraction(2) and g[0][0] == Fraction(1))

    rep30 = cp.Representation(3, 0)
    check("periodicity Cl(3,0) verifies", rep30.verify()[0] and rep30.span_rank() == 8)

    eps = cp.epsilon_signs(0, 2)
    check("signs (0,2)", eps["signs"] == [1, -1, -1, -1] and eps["exact_identity"])

    pd = cp.prolongation_dims(0, 2, m=1, flavor="clifford")
    check("clifford prolongation vanishes", pd["dim_g"] == 4 and pd["dim_g1"] == 0)
    pd = cp.prolongation_dims(0, 2, m=1, flavor="cliffordian")
    check("cliffordian prolongation", pd["dim_g"] == 7 and pd["dim_g1"] == 4)

    sx = cp.sxi_membership(0, 2, m=1)
    check("S^xi membership", sx["ok"] and sx["injectivity_rank"] == 4)

    demo = cp.planar_demo(1, 1, seed=3)
    check(
        "planar demo",
        demo["ok"] and demo["forward_residual"] <= 1e-7 and demo["torsion_preserved"],
    )

    print(f"ok: {checks} checks passed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
