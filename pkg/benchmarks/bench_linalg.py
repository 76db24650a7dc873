"""Benchmark the exact GF(2^n) linear-algebra kernels: numba vs numpy.

Run directly:  python3 benchmarks/bench_linalg.py

These kernels (reduced row echelon, semilinear matrix product) dominate
the package's runtime at m = 3, where the de Rham module is 2032
dimensional over GF(128).  The numba path is the default; the numpy
path is what you get with SUZUKICOH_BACKEND=numpy.
"""

import time

import numpy as np

from suzukicoh import gf2m, linalg


def _random_matrix(rng, field, n):
    return rng.integers(0, field.q, size=(n, n)).astype(np.uint16)


def bench(backend, field, sizes, reps=3):
    linalg.set_backend(backend)
    rng = np.random.default_rng(12345)
    rows = []
    for n in sizes:
        A = _random_matrix(rng, field, n)
        B = _random_matrix(rng, field, n)
        # warm up the jit before timing
        k = min(n, 8)
        linalg.rref(A[:k, :k].copy(), field)
        linalg.matmul(A[:k, :k].copy(), B[:k, :k].copy(), field)
        t0 = time.perf_counter()
        for _ in range(reps):
            linalg.rref(A, field)
        t_rref = (time.perf_counter() - t0) / reps
        t0 = time.perf_counter()
        for _ in range(reps):
            linalg.matmul(A, B, field)
        t_mm = (time.perf_counter() - t0) / reps
        rows.append((n, t_rref, t_mm))
    return rows


def main():
    field = gf2m.make_field(3)  # GF(128), the m=3 scalar field
    sizes = [64, 128, 256, 512]
    backends = ["numpy"]
    try:
        import numba  # noqa: F401

        backends.insert(0, "numba")
    except ImportError:
        print("numba not installed; benchmarking the numpy path only")
    results = {b: bench(b, field, sizes) for b in backends}
    print("\nGF(%d) kernels, seconds per call" % field.q)
    print("%6s  %-22s  %-22s" % ("n", "rref", "matmul"))
    for i, n in enumerate(sizes):
        cells = []
        for kind in (1, 2):
            part = "  ".join(
                "%s %.4f" % (b, results[b][i][kind]) for b in backends
            )
            cells.append(part)
        print("%6d  %-22s  %-22s" % (n, cells[0], cells[1]))
    if len(backends) == 2:
        n, tr_nb, tm_nb = results["numba"][-1]
        _, tr_np, tm_np = results["numpy"][-1]
        print(
            "\nat n=%d: numba is %.1fx (rref) and %.1fx (matmul) vs numpy"
            % (n, tr_np / tr_nb, tm_np / tm_nb)
        )


if __name__ == "__main__":
    main()
