#!/usr/bin/env python3
"""Compare the numba and numpy backends of the point-enumeration kernel.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs the singular-point system of a fixed model over every point
of the ambient space and checks that both backends return the same mask.
The first numba call (compilation, or loading from the on-disk cache) is
timed separately.  A second table times the pencil-kernel loop used for
quadric pairs over large fields, compiled against uncompiled.
"""
import argparse
import time

import numpy as np

from genusone import _kernels
from genusone.ffield import finite_field
from genusone.models import QuadricPairModel, TernaryCubicModel
from genusone.reduction import _chart_points, _flatten, _hessian_matrix, _pencil_determinant, singular_systems

CASES = [
    ("cubic / P2(F_343)", TernaryCubicModel(1, 2, 3, 0, 1, -1, 2, 0, 1, 1), 7, 3),
    ("cubic / P2(F_2197)", TernaryCubicModel(1, 2, 3, 0, 1, -1, 2, 0, 1, 1), 13, 3),
    (
        "quadric pair / P3(F_49)",
        QuadricPairModel.from_quadrics("x0*x1 + x0*x2 + x2*x3", "x0*x3 + x1*x2 + x1*x3"),
        7,
        2,
    ),
]


def kernel_args(m, p, k):
    field = finite_field(p, k)
    (polys, chart), *_ = singular_systems(m, p)
    tp, tc, te = _flatten(polys)
    pts = _chart_points(chart, field.q)
    return (tp, tc, te, len(polys), pts, field.log, field.exp, field.digits, p)


PAIR = CASES[2][1]
PENCIL_CASES = [(7, 3), (13, 2), (5, 4)]


def pencil_args(m, p, k, force):
    field = finite_field(p, k)
    (polys, _), = singular_systems(m, p)
    M1, M2 = (_hessian_matrix(f, p) for f in polys[:2])
    det = np.zeros(5, dtype=np.int64) if force else _pencil_determinant(M1, M2, p)
    return (M1, M2, det, field.log, field.exp, field.digits, p)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed")

    t0 = time.perf_counter()
    _kernels.common_zeros_numba(*kernel_args(*CASES[0][1:]))
    print(f"numba first call: {time.perf_counter() - t0:.2f}s")
    print(f"{'case':<26}{'points':>10}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for name, m, p, k in CASES:
        a = kernel_args(m, p, k)
        t_np, mask_np = best_of(_kernels.common_zeros_numpy, a, args.repeat)
        t_nb, mask_nb = best_of(_kernels.common_zeros_numba, a, args.repeat)
        assert np.array_equal(mask_np, mask_nb), name
        print(f"{name:<26}{len(a[4]):>10}{t_np:>9.3f}s{t_nb:>9.3f}s{t_np / t_nb:>8.1f}x")

    print()
    print(f"{'pencil over':<26}{'members':>10}{'python':>10}{'numba':>10}{'speedup':>9}")
    for p, k in PENCIL_CASES:
        for force in (False, True):
            a = pencil_args(PAIR, p, k, force)
            t_py, out_py = best_of(_kernels._pencil_kernels_loop, a, 1)
            t_nb, out_nb = best_of(_kernels.pencil_kernels_numba, a, args.repeat)
            assert np.array_equal(out_py[1], out_nb[1])
            label = f"F_{p}^{k}" + (" (no det filter)" if force else "")
            print(f"{label:<26}{p**k + 1:>10}{t_py:>9.3f}s{t_nb:>9.3f}s{t_py / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
