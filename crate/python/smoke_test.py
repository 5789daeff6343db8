#!/usr/bin/env python3
"""Smoke test for the collatz_py extension module.

Build the module first, then run this script:

    cargo build -p collatz-py --release
    python3 python/smoke_test.py

The script copies the built cdylib next to a temp dir under the import
name `collatz_py` and drives the main types and operations end to end.
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_module():
    candidates = [
        ROOT / "target" / "release" / "libcollatz_py.so",
        ROOT / "target" / "debug" / "libcollatz_py.so",
        ROOT / "target" / "release" / "libcollatz_py.dylib",
        ROOT / "target" / "debug" / "libcollatz_py.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p collatz-py --release")
    stage = Path(tempfile.mkdtemp(prefix="collatz_py_"))
    suffix = ".so" if built.suffix == ".so" else ".so"  # CPython loads .so on mac too
    shutil.copy2(built, stage / f"collatz_py{suffix}")
    sys.path.insert(0, str(stage))
    import collatz_py

    return collatz_py


def main():
    cz = import_module()
    checks = 0

    def ok(cond, label):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL: {label}")
        checks += 1
        print(f"ok: {label}")

    # rings
    f2 = cz.Ring("F2")
    z4 = cz.Ring("Z/4")
    f9 = cz.Ring("F9=F3[y]/(y^2+1)")
    ok(f2.characteristic == 2 and f9.characteristic == 3, "ring characteristics")
    ok(z4.cardinality == 4 and f9.cardinality == 9, "ring cardinalities")
    ok(z4.char_factors() == [(2, 2)], "characteristic factorization")
    ok(z4.is_unit("3") and not z4.is_unit("2"), "unit tests in Z/4")
    try:
        cz.Ring("F4=F2[y]/(y^2+y)")
        sys.exit("FAIL: reducible modulus accepted")
    except ValueError:
        ok(True, "reducible modulus rejected")

    # polynomial orbits
    f = f2.poly("[1,1]")
    report = f.orbit()
    ok(report["cycle_found"] and report["preperiod"] == 2, "orbit of x+1 over F2")
    ok([str(g) for g in report["cycle"]] == ["[0,1]", "[1]"], "cycle members (x, 1)")

    f3 = cz.Ring("F3")
    g = f3.poly("[1,0,1]")
    ok(g.is_periodic() and g.exact_period() == 6, "x^2+1 over F3 has period 6")
    ok(g.period_divisor_bound() == 6, "period equals the divisor bound")
    ok(not f3.poly("[1,1]").is_periodic(), "x+1 over F3 is not periodic")

    z = cz.Ring("Z")
    ok(z.poly("[1,1]").classify_char_zero() == "not-periodic", "char-zero classification")

    # valuations
    ok(cz.vp(2, 12) == 2, "v_2(12) = 2")
    ok(cz.binom_valuation(2, 4, 2) == 1, "v_2(C(4,2)) = 1")
    ok(cz.threshold_constant(12, 3) == 72, "K(3) = 72 at characteristic 12")
    ok(cz.divisibility_equivalence(4, 1, 4) == (True, True), "divisor equivalence sides agree")

    # censuses and counts
    ok(cz.brute_force_census(f3, 3) == {1: 1, 2: 2, 6: 2}, "brute census over F3")
    ok(cz.matrix_census(f3, 2)[18] == 56, "matrix census finds 56 length-18 cycles")
    ok(cz.count_cycles_formula(3, 3, 1) == 2, "closed-form count at q=3, k=1")

    # series
    s = f2.series("[1]", "[1]")  # 1/(1+x) = 1 + x + x^2 + ...
    ok(s.truncate(5) == ["1", "1", "1", "1", "1"], "series truncation")
    ok(s.step().u == "[]", "geometric series maps to 0")
    constructed = cz.periodic_from_cyclic_parity(f2, ["1", "0", "0"])
    ok(constructed.parity_vector(3) == ["1", "0", "0"], "series parity round-trip")
    count, cycles = cz.omega_census(z4, 3)
    ok(count == 10 and len(cycles) == 3, "omega census at q=4, n=3")

    # 2-adic dynamics
    one_fifth = cz.periodic_from_parity_z2([1, 0, 0])
    ok(str(one_fifth) == "1/5", "condensed construction gives 1/5")
    orbit = one_fifth.orbit()
    ok(orbit["cycle_found"] and len(orbit["cycle"]) == 4, "1/5 lies on a 4-cycle")
    ok([int(cz.z2_cycle_count(n)) for n in range(1, 6)] == [1, 1, 1, 1, 2], "cycle counts 1..5")
    ok(int(cz.condensed_cycle_count(6)) == 9, "condensed count at n=6")
    cycles5 = cz.enumerate_z2_cycles(5)
    ok(len(cycles5) == 2, "two 5-cycles")
    ok(cz.DyadicRational("-1").digits(4) == [1, 1, 1, 1], "2-adic digits of -1")
    try:
        cz.DyadicRational("1/2")
        sys.exit("FAIL: even denominator accepted")
    except ValueError:
        ok(True, "even denominator rejected")

    # parity combinatorics
    ok(int(cz.lucas_like(2, 5)) == 11, "Lucas value L_5 = 11")
    ok(cz.expand([1, 0]) == [1, 0, 0] and cz.condense([1, 0, 0]) == [1, 0], "condense/expand")
    ok(len(cz.enumerate_cyclically_zero_dense(4, 3)) == 10, "10 cyclic vectors at q=4, n=3")
    ok(abs(cz.asymptotic_ratio(2, 60) - 1.0) <= 0.001, "asymptotic ratio near 1")

    # one verification suite end to end
    result = cz.run_suite("asymptotics")
    ok(result["passed"], "asymptotics suite passes")

    print(f"\nPASS: {checks} checks")


if __name__ == "__main__":
    main()
