"""Time the numba and numpy paths of the two float kernels.

    python3 benchmarks/bench_kernels.py [--points N] [--grid N] [--repeat R]

The numba timings exclude the first (compiling) call.  Both paths must
agree exactly on every run; a mismatch aborts the benchmark.
"""
import argparse
import time

import numpy as np

from pierce2d import _kernels
from pierce2d.config_space import _kernel_args, chord_system
from pierce2d.generators import random_family
from pierce2d.geometry import normalize_to_disk
from pierce2d.line_solver import compositions


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--grid", type=int, default=24, help="simplex resolution for the hit screen")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    r = np.sqrt(rng.uniform(0, 0.98, args.points))
    th = rng.uniform(0, 2 * np.pi, args.points)
    px, py = r * np.cos(th), r * np.sin(th)
    cs = chord_system([0.1, 0.2, 0.05, 0.15, 0.3, 0.2])
    kargs = _kernel_args(cs)

    fam = normalize_to_disk(random_family(7, 12).exact())
    verts, nverts = _kernels.pack_vertices(fam.sets)
    parts = np.array(list(compositions(args.grid, 6)), dtype=np.int64)
    cum = np.zeros((len(parts), 7))
    cum[:, 1:] = np.cumsum(parts, axis=1) / args.grid

    rows = []
    for name, call in [
        ("region_labels", lambda nb: _kernels.region_labels(px, py, *kargs, 1e-9, use_numba=nb)),
        ("grid_hits", lambda nb: _kernels.grid_hits(cum, verts, nverts, 1e-9, use_numba=nb)),
    ]:
        call(True)  # compile
        t_nb, out_nb = best_of(lambda: call(True), args.repeat)
        t_np, out_np = best_of(lambda: call(False), args.repeat)
        if not np.array_equal(out_nb, out_np):
            raise SystemExit(f"{name}: numba and numpy results differ")
        rows.append((name, t_np, t_nb))

    print(f"{'kernel':<15}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name, t_np, t_nb in rows:
        print(f"{name:<15}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")
    print(f"({args.points} labelled points, {len(parts)} grid points x {len(fam)} sets)")


if __name__ == "__main__":
    main()
