"""Benchmark the Jacobi eigensolver: numba kernel vs pure-numpy fallback.

Run:  python3 bench/bench_eig.py [--sizes 16,32,64,128] [--repeats 3]

The numpy path can also be forced package-wide with CARFOCK_DISABLE_NUMBA=1.
"""

import argparse
import time

import numpy as np

from carfock.eig import _jacobi_sweep_numpy, jacobi_eigenvalues

try:
    from carfock.eig import _jacobi_sweep_jit
except ImportError:
    _jacobi_sweep_jit = None


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2.0


def time_backend(sweep, matrices, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for m in matrices:
            jacobi_eigenvalues(m, sweep=sweep)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="16,32,64,128")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(7)

    if _jacobi_sweep_jit is not None:
        # trigger compilation outside the timed region
        jacobi_eigenvalues(random_hermitian(4, rng), sweep=_jacobi_sweep_jit)

    print(f"{'n':>6} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for n in sizes:
        matrices = [random_hermitian(n, rng) for _ in range(3)]
        t_np = time_backend(_jacobi_sweep_numpy, matrices, args.repeats)
        if _jacobi_sweep_jit is None:
            print(f"{n:>6} {1e3 * t_np:>12.2f} {'n/a':>12} {'n/a':>9}")
            continue
        t_nb = time_backend(_jacobi_sweep_jit, matrices, args.repeats)
        print(f"{n:>6} {1e3 * t_np:>12.2f} {1e3 * t_nb:>12.2f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
