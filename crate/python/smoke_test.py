#!/usr/bin/env python3
"""Smoke test for the pymolien extension module.

Builds nothing itself: expects `cargo build --workspace` to have produced
target/debug/libpymolien.so. Copies it next to a temp dir as pymolien.so,
imports it, and exercises the main entry points.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

LORENTZ_ROUNDED = [1, 0, 3, 0, 6, 0, 10, 0, 15, 0, 21, 0, 28, 0, 36, 0, 45]


def load_module():
    candidates = [
        ROOT / "target" / "debug" / "libpymolien.so",
        ROOT / "target" / "release" / "libpymolien.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("libpymolien.so not found; run `cargo build --workspace` first")
    stage = Path(tempfile.mkdtemp(prefix="pymolien."))
    shutil.copy2(built, stage / "pymolien.so")
    sys.path.insert(0, str(stage))
    import pymolien

    return pymolien


def main():
    pymolien = load_module()
    fixtures = ROOT / "crates" / "core" / "fixtures"

    # reference series from the bundled group description
    spec = pymolien.GroupSpec.from_file(str(fixtures / "lorentz.spec"))
    assert spec.dim == 4
    assert spec.theta == 1.0
    assert "involutions=2" in repr(spec)
    spec.validate()
    assert pymolien.molien_series_rounded(spec, 16) == LORENTZ_ROUNDED

    coeffs = pymolien.molien_series(spec, 16)
    assert len(coeffs) == 17
    assert all(abs(c - r) < 1e-6 for c, r in zip(coeffs, LORENTZ_ROUNDED))

    # theta override leaves the rounded series alone
    other = pymolien.GroupSpec.from_file(str(fixtures / "lorentz.spec"), theta=2.5)
    assert other.theta == 2.5
    assert pymolien.molien_series_rounded(other, 16) == LORENTZ_ROUNDED

    # quadrature path agrees with exact integration
    quad = pymolien.quad_series(spec, 16, 64)
    assert max(abs(a - b) for a, b in zip(coeffs, quad)) < 1e-8

    # a finite group built by hand: quarter rotation generates order 4
    c4 = pymolien.GroupSpec(2)
    c4.add_finite_generator([[0, -1], [1, 0]])
    assert pymolien.finite_series(c4, 4) == [1, 0, 1, 0, 3]
    assert pymolien.reynolds_dims(c4, 4) == [1, 0, 1, 0, 3]

    # rational string entries stay exact through closure enumeration
    mirror = pymolien.GroupSpec(2)
    mirror.add_finite_generator([["-2/2", "0"], ["0", "1/1"]])
    assert pymolien.finite_series(mirror, 2) == [1, 1, 2]

    # decomposition flags for the bundled order-8 example and its broken twin
    good = pymolien.GroupSpec.from_file(str(fixtures / "signdiag8.spec"))
    report = pymolien.verify_decomposition(good)
    assert report["overall"] is True

    bad = pymolien.GroupSpec.from_file(str(fixtures / "signdiag8_bad.spec"))
    report = pymolien.verify_decomposition(bad)
    assert report["intersections_trivial"] is False
    assert report["overall"] is False

    # invariance of the bundled basis polynomials
    results = pymolien.check_invariant_file(spec, str(fixtures / "lorentz_invariants.poly"))
    assert [name for name, _ in results] == [
        "plane_radius",
        "hyperbolic_difference",
        "boost_square",
    ]
    assert all(residual < 1e-9 for _, residual in results)

    # inline terms: x3^2 - x4^2 is invariant, x1^2 alone is not
    assert pymolien.check_invariant(spec, [(1, [0, 0, 2, 0]), (-1, [0, 0, 0, 2])]) < 1e-9
    assert pymolien.check_invariant(spec, [(1, [2, 0, 0, 0])]) > 0.01

    # float coefficients work too
    s, c = math.sinh(1.0), math.cosh(1.0)
    boost = [(s * s, [0, 0, 2, 0]), (2 * s * (c - 1), [0, 0, 1, 1]), ((c - 1) ** 2, [0, 0, 0, 2])]
    assert pymolien.check_invariant(spec, boost) < 1e-9

    # validation failures surface as ValueError
    broken = pymolien.GroupSpec(2)
    broken.add_involution([[2, 0], [0, 1]])
    try:
        broken.validate()
    except ValueError as e:
        assert "involution" in str(e)
    else:
        sys.exit("expected validate() to raise")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
