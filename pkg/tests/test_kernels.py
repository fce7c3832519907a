import json
import os
import subprocess
import sys

import numpy as np

from f1rep import _kernels
from f1rep.search import Structure, find_maps

SCRIPT = r"""
import json
from f1rep import _kernels
from f1rep.quiver import hom_dim, linear_quiver, resolve_name
from f1rep.homology import ext
q = linear_quiver(3)
r = lambda s: resolve_name(q, s)
out = {
    "backend": _kernels.BACKEND,
    "hom": [hom_dim(r(a), r(b)) for a in ("[1,3]", "[2,3]+S2", "S1+S2+S3") for b in ("[1,2]+[2,3]", "[1,3]+S1")],
    "ext": ext(2, r("[3,3]"), r("[1,1]"), threads=1).to_json(),
}
print(json.dumps(out, sort_keys=True))
"""


def _run(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("F1REP_DISABLE_JIT", None)
    if disable:
        env["F1REP_DISABLE_JIT"] = "1"
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_jit_and_python_paths_agree():
    fast, slow = _run(False), _run(True)
    assert slow.pop("backend") == "python"
    assert fast.pop("backend") in {"numba", "python"}
    assert fast == slow


def test_empty_source_has_one_map():
    src = Structure([], np.zeros((1, 0), dtype=np.int64))
    tgt = Structure([1], np.array([[-1]]))
    assert find_maps(src, tgt).shape == (1, 0)


def test_limit_and_growth():
    # three isolated elements of one class into three targets: sum_k C(3,k)^2 k! = 34 maps
    src = Structure([0, 0, 0], np.full((1, 3), -1))
    assert len(find_maps(src, src)) == 34
    assert len(find_maps(src, src, limit=5)) == 5


def test_component_labels():
    funcs = np.array([[1, -1, 3, -1]], dtype=np.int64)
    labels = _kernels.component_labels(funcs)
    assert labels[0] == labels[1] and labels[2] == labels[3] and labels[0] != labels[2]
