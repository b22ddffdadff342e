#!/usr/bin/env python3
"""Smoke test for the toroidal_py extension module.

Builds the cdylib if needed (``cargo build -p toroidal-py``), loads it, and
exercises the main types and operations.  Run from anywhere:

    python3 python/smoke_test.py
"""

import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    lib = None
    for profile in ("release", "debug"):
        cand = REPO / "target" / profile / "libtoroidal_py.so"
        if cand.exists():
            lib = cand
            break
    if lib is None:
        subprocess.run(
            ["cargo", "build", "-p", "toroidal-py"], cwd=REPO, check=True
        )
        lib = REPO / "target" / "debug" / "libtoroidal_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    tmp = tempfile.mkdtemp(prefix="toroidal_py_")
    shutil.copy2(lib, pathlib.Path(tmp) / f"toroidal_py{suffix}")
    sys.path.insert(0, tmp)
    import toroidal_py

    return toroidal_py


def main():
    t = load_module()

    a1 = t.RootSystem("A1")
    assert a1.rank == 1 and a1.name == "A1"
    assert a1.positive_roots() == [[1]]

    # bracket reference value
    x = a1.element("E(1)*s*t")
    y = a1.element("F(1)*s*t^-1")
    assert str(x.bracket(y)) == "H(1)*s^2 + C(2,0)"

    # exact rational arithmetic and antisymmetry
    z = x.scale("2/3").bracket(y).__sub__(y.bracket(x).scale("-2/3"))
    assert z.is_zero()

    # automorphisms
    assert str(a1.element("C(3,1)").apply_s(-1)) == "3*C(1,-3)"
    shifted = a1.element("H(1)*s*t").tau_shift("2")
    assert str(shifted) == a1.element("2*H(1)*t + H(1)*s*t").__str__()

    # presentation relations
    checked, failures = t.check_presentation(a1, range=2)
    assert checked > 0 and failures == []

    # vertex module: vacuum action and basis counts
    terms, truncated = a1.element("E(1)*s^-1").act_on_vacuum(4)
    assert not truncated and len(terms) == 1  # the lattice state e^alpha
    killed, _ = a1.element("F(1)*t^-1").act_on_vacuum(4)
    assert killed == []  # current-type loop elements annihilate the vacuum
    assert t.basis_count(a1, 1, 0, 0) == 5

    # characters and Weyl-module dimensions agree with the product formula
    a2 = t.RootSystem("A2")
    pres = dict(((tuple(w), m, n), d) for w, m, n, d in t.presented_dims(a1, 2, 2))
    formula = dict(
        ((tuple(w), m, n), d) for w, m, n, d in t.formula_dims(a1, 2, 2, "pq")
    )
    for key, dim in pres.items():
        assert formula.get(key, 0) == dim, (key, dim, formula.get(key, 0))

    ranks = dict(((tuple(w), m, n), d) for w, m, n, d in t.rank_dims(a1, 2, "1"))
    pform = dict(
        ((tuple(w), m, n), d) for w, m, n, d in t.formula_dims(a1, 2, 0, "p")
    )
    for key, dim in ranks.items():
        assert pform.get(key, 0) == dim, (key, dim, pform.get(key, 0))

    ch = dict(((tuple(w), m), c) for w, m, c in t.affine_character(a2, 2))
    # weight 0, depth 2: three h_{-1} pairs plus two h_{-2} modes
    assert ch[((0, 0), 0)] == 1 and ch[((0, 0), 2)] == 5

    print("smoke test passed")


if __name__ == "__main__":
    main()
