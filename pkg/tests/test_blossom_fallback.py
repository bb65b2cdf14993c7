import subprocess
import sys
from pathlib import Path

FALLBACK_SCRIPT = r"""
import builtins
import random
import sys

real_import = builtins.__import__

def block_numba(name, *args, **kwargs):
    if name == "numba" or name.startswith("numba."):
        raise ImportError("numba blocked for fallback test")
    return real_import(name, *args, **kwargs)

builtins.__import__ = block_numba
for mod in [m for m in sys.modules if m == "numba" or m.startswith("numba.")]:
    del sys.modules[mod]

import numpy as np
from linksched import blossom

assert not blossom.NUMBA_ENABLED, "fallback path not active"

def brute_best(n, edges):
    best = 0
    def rec(i, used, score):
        nonlocal best
        best = max(best, score)
        if i == len(edges):
            return
        rec(i + 1, used, score)
        u, v, w = edges[i]
        if not (used >> u) & 1 and not (used >> v) & 1:
            rec(i + 1, used | (1 << u) | (1 << v), score + w)
    rec(0, 0, 0)
    return best

rng = random.Random(2718)
import itertools
for trial in range(150):
    n = rng.randint(1, 7)
    pairs = list(itertools.combinations(range(n), 2))
    chosen = rng.sample(pairs, rng.randint(0, len(pairs)))
    edges = [(u, v, rng.randint(0, 9)) for (u, v) in chosen]
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    ew = np.array([e[2] for e in edges], dtype=np.int64)
    mate = blossom.solve_max_weight_matching(n, eu, ev, ew)
    score = sum(w for (u, v, w) in edges if mate[u] == v)
    assert score == brute_best(n, edges), (trial, edges, mate)
print("fallback OK")
"""


def test_kernel_runs_without_numba(tmp_path):
    """The matching kernel must stay correct as plain Python when numba
    is unavailable (slow path)."""
    script = tmp_path / "fallback_check.py"
    script.write_text(FALLBACK_SCRIPT)
    proc = subprocess.run(
        [sys.executable, str(script)],
        capture_output=True,
        text=True,
        timeout=600,
        cwd=Path(__file__).resolve().parent.parent,
    )
    assert proc.returncode == 0, proc.stderr
    assert "fallback OK" in proc.stdout
