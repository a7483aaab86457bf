#!/usr/bin/env python3
"""Smoke test for the qcorr_py extension module.

Builds the release cdylib if needed, imports it, and exercises the main
surface: family constructors, analysis report, save/load round trip,
discord optimization, and a small sweep.

Run from anywhere:  python3 python/smoke_test.py
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)


def ensure_module():
    so = os.path.join(ROOT, "target", "release", "libqcorr_py.so")
    if not os.path.exists(so):
        subprocess.run(
            ["cargo", "build", "--release", "-p", "qcorr-py"], cwd=ROOT, check=True
        )
    dst = os.path.join(HERE, "qcorr_py.so")
    if not os.path.exists(dst) or os.path.getmtime(dst) < os.path.getmtime(so):
        shutil.copyfile(so, dst)
    sys.path.insert(0, HERE)


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    ensure_module()
    import qcorr_py as q

    # Family constructors and the known point value D(bell(1)) = -(2/3) ln 3.
    bell = q.bell_eps(1.0)
    assert (bell.d_h, bell.d_k) == (3, 3)
    report = bell.analyze()
    approx(report["D"], -(2.0 / 3.0) * math.log(3.0), 1e-9)
    approx(report["I"], report["S_rho"] + report["S_sigma"] - report["S_theta"], 1e-12)
    assert report["ppt"] is True

    # Spectrum family: eigenvalues sum to one, D ordering matches the report.
    horo = q.horodecki(3.1)
    approx(sum(horo.eigenvalues()), 1.0, 1e-12)
    assert q.d_correlation(bell) > q.d_correlation(horo)
    approx(q.analytic_d_value("horodecki", 3.1), q.d_correlation(horo), 1e-10)

    # Save / load round trip through the JSON state format.
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "state.json")
        horo.save(path)
        again = q.load(path)
        assert again.matrix() == horo.matrix(), "round trip must be bit-exact"

    # Validation errors surface as ValueError.
    try:
        q.horodecki(99.0)
    except ValueError as e:
        assert "domain" in str(e)
    else:
        raise AssertionError("out-of-domain parameter must raise")

    # Discord: zero (up to clamp) on a product state, ln 2 on a Bell pair.
    product = q.State(
        2, 2, [[(0.25, 0.0) if i == j else (0.0, 0.0) for j in range(4)] for i in range(4)]
    )
    approx(q.discord(product, side="H", restarts=4), 0.0, 1e-9)
    pair = q.max_entangled(2)
    approx(q.discord(pair, side="K", restarts=8), math.log(2.0), 1e-6)
    approx(
        q.symmetric_discord(pair, restarts=8, seed=7),
        math.log(2.0),
        1e-6,
    )

    # Sweep: five grid points with the documented classification labels.
    rows = q.sweep("horodecki", 0.0, 5.0, 5)
    assert [r["param"] for r in rows] == [0.0, 1.25, 2.5, 3.75, 5.0]
    assert [r["label"] for r in rows] == ["NPT", "PPT_ENT", "SEP", "PPT_ENT", "NPT"]
    assert min(rows, key=lambda r: r["D"])["param"] == 2.5

    print("smoke test passed")


if __name__ == "__main__":
    main()
