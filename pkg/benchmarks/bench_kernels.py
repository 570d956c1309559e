"""Compare the compiled and pure-numpy smoothing kernels on the default grid.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--nodes 40]
"""
import argparse
import time

import numpy as np

from wignerpacs import ChannelParams, GridSpec, PacsSpec, PacsWigner, compiled_available
from wignerpacs import _fallback
from wignerpacs.channel import KernelParams, gauss_hermite


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--nodes", type=int, default=40)
    args = parser.parse_args()

    grid = GridSpec.default()
    w = PacsWigner(PacsSpec(0.5, 2))
    kp = KernelParams.from_channel(ChannelParams(0.2, 1.0))
    xs, ws = gauss_hermite(args.nodes)
    call = (grid.q, grid.p, *w.centre, *w.terms, kp.scale, kp.sigma, xs, ws)
    print(f"grid {grid.nq}x{grid.np}, {args.nodes}x{args.nodes} nodes, best of {args.repeat}")

    t_py, ref = best_of(lambda: _fallback.convolve_pacs_grid(*call), args.repeat)
    print(f"python    {t_py:8.3f} s")
    if not compiled_available():
        print("compiled  not built")
        return
    from wignerpacs import _kernels
    t_c, out = best_of(lambda: _kernels.convolve_pacs_grid(*call), args.repeat)
    print(f"compiled  {t_c:8.3f} s   speedup {t_py / t_c:5.1f}x   "
          f"max |diff| {np.max(np.abs(out - ref)):.2e}")


if __name__ == "__main__":
    main()
