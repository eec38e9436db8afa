"""Benchmark the compiled kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""
import time

import numpy as np

import shadowlab._core  # noqa: F401  (select backend)


def _time(fn, *args, reps=10):
    best = np.inf
    for _ in range(reps):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    from shadowlab._core import fallback

    try:
        from shadowlab._core import _kernels as compiled
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return

    rng = np.random.default_rng(0)
    rows = []

    # statevector gate application: 512 trajectories on 12 qubits
    psi = rng.standard_normal((512, 4096)) + 1j * rng.standard_normal((512, 4096))
    psi = np.ascontiguousarray(psi)
    u2 = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
    u4 = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    rows.append(("apply_1q (512x4096)",
                 _time(fallback.apply_1q, psi.copy(), 5, u2),
                 _time(compiled.apply_1q, psi.copy(), 5, u2)))
    rows.append(("apply_2q (512x4096)",
                 _time(fallback.apply_2q, psi.copy(), 2, 9, u4),
                 _time(compiled.apply_2q, psi.copy(), 2, 9, u4)))

    # Born sampling
    uniforms = rng.random(512)
    out = np.zeros(512, dtype=np.int64)
    rows.append(("born_sample (512x4096)",
                 _time(fallback.born_sample, psi.copy(), uniforms, out),
                 _time(compiled.born_sample, psi.copy(), uniforms, out)))

    # snapshot-overlap Gram accumulation: T=300, n=9
    rows_a = np.ascontiguousarray(
        rng.standard_normal((300, 9, 2)) + 1j * rng.standard_normal((300, 9, 2)))
    gram = np.zeros((300, 300))
    rows.append(("overlap_gram (T=300, n=9)",
                 _time(fallback.overlap_gram, rows_a, rows_a, gram),
                 _time(compiled.overlap_gram, rows_a, rows_a, gram)))

    # Gaussian-covariance sampling: 4096 shots at n=12 (physical covariance)
    from shadowlab.fermion import (
        CompiledNetwork,
        build_hopping,
        givens_decompose,
        ground_correlation,
        uniform_spec,
    )

    _, q, _ = ground_correlation(build_hopping(uniform_spec(12, rng)))
    program = CompiledNetwork(givens_decompose(q), 6)
    m = np.broadcast_to(program.final_noiseless, (4096, 24, 24)).copy()
    uniforms = rng.random((4096, 12))
    bits = np.zeros((4096, 12), dtype=np.uint8)
    rows.append(("gaussian_sample (4096x n=12)",
                 _time(fallback.gaussian_sample, m.copy(), uniforms, bits, reps=3),
                 _time(compiled.gaussian_sample, m.copy(), uniforms, bits, reps=3)))

    o4 = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    rows.append(("rotate_block (4096x 24x24)",
                 _time(fallback.rotate_block, m.copy(), 4, o4),
                 _time(compiled.rotate_block, m.copy(), 4, np.ascontiguousarray(o4))))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'cython':>10}  {'speedup':>8}")
    for name, t_py, t_cy in rows:
        print(f"{name:<{width}}  {t_py*1e3:>8.2f}ms  {t_cy*1e3:>8.2f}ms  {t_py/t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
