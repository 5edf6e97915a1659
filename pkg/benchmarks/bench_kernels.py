#!/usr/bin/env python3
"""Time the four hot kernels on their compiled and pure-numpy paths.

Workloads mirror real call sites: the axiom sweep on P2(F7), the full
Desargues sweep on P2(F3), the brute-force matrix filter on P2(F5), and
the multiplicativity scan from the q = 13 function-field demo.  Run from
the repo root:

    python3 benchmarks/bench_kernels.py [--repeat N]

If numba is missing (or COLLINEXT_NO_NUMBA=1 is set) only the numpy
column is produced.
"""

import argparse
import time

import numpy as np

from collinext import _kernels
from collinext.gf import make_field
from collinext.projgeom import ProjSpace, noncollinear_triples
from collinext.semilinear import random_semilinear
from collinext.ample import AmpleFamily
from collinext.extend import (_candidate_matrices, random_ample_instance,
                              restrict, extend)
from collinext.funcfield import (ample_certificate, demo_instance,
                                 recover_ring_iso, scramble,
                                 _normalize_fixing_one)


def build_axiom2():
    space = ProjSpace(make_field(7), 3)
    tri = noncollinear_triples(space)
    args = (tri, space.join_t, space.meet_t, space.line_pts)
    return "axiom2_scan", "P2(F7), %d triples" % len(tri), \
        _kernels._axiom2_jit, _kernels._axiom2_np, args


def build_desargues():
    space = ProjSpace(make_field(3), 3)
    tri = noncollinear_triples(space)
    args = (tri, space.join_t, space.meet_t, space.on_line)
    return "desargues_scan", "P2(F3), %d triples" % len(tri), \
        _kernels._desargues_jit, _kernels._desargues_np, args


def build_matrix_filter():
    space = ProjSpace(make_field(5), 3)
    f = space.field
    rng = np.random.default_rng(0)
    truth = random_semilinear(space, rng).induce()
    U, _ = random_ample_instance(space, 1, rng)
    pc = restrict(truth, U)
    u_pts = space.pts[pc.U1].astype(np.int64)
    expect = np.array([pc.sigma[p] for p in pc.U1], dtype=np.int64)
    reps = f.frob_t[0].astype(np.int64)[u_pts]
    cands = max(_candidate_matrices(f, 3), key=len)
    args = (cands, reps, expect, f.mul_t, f.add_t, f.inv_t,
            space._offs, space._qpow, 3)
    return "matrix_filter", "P2(F5), %d candidate matrices" % len(cands), \
        _kernels._matfilter_jit, _kernels._matfilter_np, args


def build_mult_scan():
    f, D, E, gmat, frob = demo_instance("q13")
    scr = scramble(gmat, frob, D, E)
    cert = ample_certificate(scr.unit)
    res = extend(scr.pc, cert.family)
    rr, space = scr.unit.rr, scr.unit.space
    psi = _normalize_fixing_one(res.decoded, rr)
    row = f.frob_t[res.decoded.frob_exp].astype(np.int64)
    nums = space.pts.astype(np.int64)
    psin = np.zeros_like(nums)
    for i in range(space.d):
        acc = np.zeros(len(nums), dtype=np.int64)
        for j in range(space.d):
            acc = f.add_t[acc, f.mul_t[psi[i, j], row[nums[:, j]]]]
        psin[:, i] = acc
    mpoly = np.array(rr.mpoly, dtype=np.int64)
    degcap = len(rr.mpoly) - 1 + rr.dim - 1
    args = (nums, psin, psi, row, mpoly, degcap, f.mul_t, f.add_t, f.neg_t)
    return "pair_mult_scan", "q=13 demo, %d classes" % len(nums), \
        _kernels._multscan_jit, _kernels._multscan_np, args


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()

    rows = []
    for build in (build_axiom2, build_desargues, build_matrix_filter,
                  build_mult_scan):
        name, workload, jit_fn, np_fn, args = build()
        t_np = best_of(np_fn, args, opts.repeat)
        if _kernels.USE_NUMBA:
            jit_fn(*args)  # compile outside the timed region
            t_jit = best_of(jit_fn, args, opts.repeat)
            rows.append((name, workload, t_jit, t_np, t_np / t_jit))
        else:
            rows.append((name, workload, None, t_np, None))

    print("%-16s %-34s %10s %10s %9s" % ("kernel", "workload", "numba [s]",
                                         "numpy [s]", "speedup"))
    print("-" * 83)
    for name, workload, t_jit, t_np, gain in rows:
        jit_s = "%.4f" % t_jit if t_jit is not None else "-"
        gain_s = "%.1fx" % gain if gain is not None else "-"
        print("%-16s %-34s %10s %10.4f %9s"
              % (name, workload, jit_s, t_np, gain_s))
    if not _kernels.USE_NUMBA:
        print("\nnumba path disabled (COLLINEXT_NO_NUMBA set or numba "
              "missing); numpy column only.")


if __name__ == "__main__":
    main()
