#!/usr/bin/env python3
"""Smoke test for the kronrep_py extension.

Builds nothing itself: run `cargo build -p kronrep-py` first, then
`python3 python/smoke_test.py`. The script copies the cdylib next to a
temp dir under an importable name and exercises the public surface.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_extension():
    candidates = [
        ROOT / "target" / profile / "libkronrep_py.so"
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("libkronrep_py.so not found; run `cargo build -p kronrep-py` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = pathlib.Path(tempfile.mkdtemp(prefix="kronrep_py_"))
    shutil.copy2(newest, stage / "kronrep_py.so")
    sys.path.insert(0, str(stage))
    import kronrep_py

    return kronrep_py


k = load_extension()

# Root geometry.
assert k.tits_form(3, 2, 2) == -4
assert k.classify(3, 2, 2) == "imaginary"
assert k.classify(3, 1, 3) == "real"
assert k.classify(3, 1, 4) == "not_a_root"
assert k.in_fundamental_domain(3, 2, 2)
assert not k.cover_thin_exists(3, 2, 6)
for v in [(2, 2), (5, 6), (-3, 7)]:
    fwd = k.coxeter(3, *v, "forward")
    assert k.coxeter(3, *fwd, "inverse") == v
    assert k.tits_form(3, *k.reflect_source(3, *v)) == k.tits_form(3, *v)
reduced, steps = k.reduce_to_fundamental_domain(3, 5, 6)
assert k.in_fundamental_domain(3, *reduced) and steps >= 0
assert k.preprojective_dims(3, 6) == [
    (0, 1), (1, 3), (3, 8), (8, 21), (21, 55), (55, 144),
]
assert k.region_csv(3, 2).startswith("x,y,q,class,in_cone,in_F,cover_thin\n")
print("root geometry ok")

# Subtrees.
t = k.Subtree.construct(3, 2, 3)
assert t.dim() == (2, 3) and t.arrows() == 3
assert len(t.edges()) == 4 and len(t.vertices()) == 5
assert t.to_dot().startswith("digraph")
assert t.to_json()["code"] == t.code()
swapped = t.permute([2, 1, 3])
assert not k.iso_cover_thin(t, swapped)
assert k.iso_cover_thin(t.dualize().dualize(), t)

classes = k.Subtree.enumerate(3, 1, 1)
assert len(classes) == 3
assert len({c.code() for c in classes}) == 3
print("subtrees ok")

# Modules.
m = t.pushdown("f2")
assert m.dim() == (2, 3) and m.field() == "F2" and m.nonzeros() == 4
assert len(m.matrices()) == 3
assert m.coefficient_report()["is_tree_presentation"]
assert m.to_json()["nonzeros"] == 4

end = m.end_is_local()
assert end["verdict"] == "Indecomposable"
assert end["dim_end"] == m.hom_dim(m) == k.hom_dim_via_overlaps(t, t)
assert t.pushdown("q").end_is_local()["dim_end"] == end["dim_end"]
assert t.pushdown("f17").field() == "F17"

zigzag = k.Subtree.construct(3, 2, 3, composition=[1, 2])
assert zigzag.pushdown("f2").end_is_local() == {
    "dim_end": 1, "verdict": "Indecomposable",
}
assert m.find_isomorphism(swapped.pushdown("f2")) is None

double = m.direct_sum(m)
assert double.total_dim() == 10
assert double.end_is_local()["verdict"] == "Decomposable"
print("modules ok")

# Batch verification.
window = k.verify_theorem_window(3, 6)
assert window["all_pass"] and len(window["roots"]) > 0
oracle = k.verify_hom_oracle(2, 5)
assert oracle["all_agree"] and oracle["pairs_checked"] > 0
print("verification ok")

# Error mapping.
for bad in [
    lambda: k.Subtree.construct(3, 2, 6),
    lambda: k.classify(0, 1, 1),
    lambda: t.pushdown("f9"),
    lambda: k.coxeter(3, 1, 1, "sideways"),
]:
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
try:
    k.Subtree.enumerate(3, 9, 9)
except RuntimeError:
    pass
else:
    raise AssertionError("expected RuntimeError for an exhausted budget")
print("error mapping ok")

print("smoke test passed")
