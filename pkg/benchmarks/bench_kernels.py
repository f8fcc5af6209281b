"""Compiled vs numpy kernels on element sifting and class orbit labelling.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from charinv import _kernels_py
from charinv.groups import construct_named

try:
    from charinv import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

GROUPS = ["sym:6", "psl2:11", "alt:7", "gl2:5", "sym:7"]


def bench(spec, repeat):
    G = construct_named(spec)
    a = G.arrays
    rows = G.elements
    maps = np.stack([G.conj_map(s) for s in G.generators])
    out = {}
    for name, mod in (("numpy", _kernels_py), ("compiled", _compiled)):
        if mod is None:
            continue
        sift = min(timeit.repeat(
            lambda: mod.sift_indices(a.base, a.pos, a.tinv_pad, a.strides, rows),
            number=1, repeat=repeat))
        orbit = min(timeit.repeat(lambda: mod.orbit_labels(maps), number=1, repeat=repeat))
        out[name] = (sift, orbit)
    if _compiled is not None:
        same = (_kernels_py.sift_indices(a.base, a.pos, a.tinv_pad, a.strides, rows)
                == _compiled.sift_indices(a.base, a.pos, a.tinv_pad, a.strides, rows)).all()
        same &= (_kernels_py.orbit_labels(maps) == _compiled.orbit_labels(maps)).all()
        out["agree"] = bool(same)
    return G.order, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'group':10s} {'|G|':>6s} {'kernel':9s} {'sift (ms)':>10s} {'orbits (ms)':>12s}")
    for spec in GROUPS:
        order, res = bench(spec, args.repeat)
        for name in ("numpy", "compiled"):
            if name in res:
                s, o = res[name]
                print(f"{spec:10s} {order:6d} {name:9s} {s * 1e3:10.2f} {o * 1e3:12.2f}")
        if "agree" in res:
            print(f"{'':10s} {'':6s} outputs {'agree' if res['agree'] else 'DIFFER'}")


if __name__ == "__main__":
    main()
