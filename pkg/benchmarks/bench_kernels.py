"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from ringcav import _backend, _pykernels, linalg
from ringcav.model import build_diffusion, build_drift
from ringcav.params import PhysicalParams
from ringcav.sweep import SweepSpec, run_sweep


def bench(label, fn, repeat, number):
    best = min(timeit.repeat(fn, repeat=repeat, number=number)) / number
    print(f"  {label:<34}{best * 1e6:12.1f} us")
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    p = PhysicalParams(T=2e-4, r=0.3)
    A, D = build_drift(p), build_diffusion(p)
    rng = np.random.default_rng(0)
    Ar = rng.normal(size=(8, 8))
    Ar -= (np.linalg.eigvals(Ar).real.max() + 0.5) * np.eye(8)
    Dr = np.eye(8)
    V0 = 0.5 * np.eye(8)

    backends = [("python", _pykernels)]
    if _backend.compiled is not None:
        backends.append(("cython", _backend.compiled))
    else:
        print("compiled kernels unavailable; timing the fallback only")

    results = {}
    for name, mod in backends:
        print(f"[{name}]")
        results[name] = (
            bench("lyapunov_kron (8x8)", lambda: mod.lyapunov_kron(A, D), args.repeat, 200),
            bench("rk4_lyapunov (2000 steps)", lambda: mod.rk4_lyapunov(Ar, Dr, V0, 0.01, 2000, 1e12), args.repeat, 3),
        )
        linalg.kernels = mod
        spec = SweepSpec(PhysicalParams(), "T", 1e-6, 2e-3, 100)
        bench("100-point sweep, 10 quantities", lambda: run_sweep(spec), args.repeat, 1)
    linalg.kernels = _backend.kernels

    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speedup: lyapunov {py[0] / cy[0]:.1f}x, rk4 {py[1] / cy[1]:.1f}x")


if __name__ == "__main__":
    main()
