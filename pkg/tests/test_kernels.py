import os
import subprocess
import sys

import numpy as np
import pytest

from pierce2d import _kernels
from pierce2d.generators import random_family
from pierce2d.geometry import normalize_to_disk
from pierce2d.line_solver import compositions

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")


@needs_numba
@pytest.mark.parametrize("seed, m, n", [(1, 2, 40), (2, 4, 16), (3, 6, 10), (4, 8, 8)])
def test_grid_hits_parity(seed, m, n):
    fam = normalize_to_disk(random_family(seed, 9).exact())
    verts, nverts = _kernels.pack_vertices(fam.sets)
    parts = np.array(list(compositions(n, m)), dtype=np.int64)
    cum = np.zeros((len(parts), m + 1))
    cum[:, 1:] = np.cumsum(parts, axis=1) / n
    a = _kernels.grid_hits(cum, verts, nverts, 1e-9, use_numba=False)
    b = _kernels.grid_hits(cum, verts, nverts, 1e-9, use_numba=True)
    assert a.shape == (len(parts), len(fam)) and (a == b).all()


def test_env_flag_selects_numpy():
    code = "from pierce2d import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, PIERCE2D_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_solver_same_answer_without_numba():
    code = (
        "from pierce2d.generators import regular_gon_edges; from pierce2d.line_solver import solve_lines; "
        "r = solve_lines(regular_gon_edges(2)); print(r.source, r.x_star)"
    )
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, PIERCE2D_NO_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert outs[0] == outs[1] and "KKM_SEARCH" in outs[0]
