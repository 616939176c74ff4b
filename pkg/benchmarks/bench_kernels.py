"""Compare the compiled kernel against the pure-Python fallback.

Two levels: microbenchmarks call the scalar and polynomial kernels from
both backend modules in one process; the macro benchmark runs a whole
verification suite in subprocesses, once per backend, selected through
PENCILFORMS_PURE.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time

from pencilforms import _core_cy, _core_py  # type: ignore[attr-defined]


def _random_rational(rng: random.Random):
    return _core_py.qnorm(rng.randint(-99, 99), rng.randint(1, 40),
                          rng.randint(-99, 99), rng.randint(1, 40))


def _random_poly(rng: random.Random, n: int, nterms: int):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, 3) for _ in range(n))
        terms[exps] = _random_rational(rng)
    return terms


def _time(fn, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_qmul(impl, pairs) -> float:
    qmul = impl.qmul

    def work():
        for a, b in pairs:
            qmul(a, b)

    return _time(work)


def bench_poly_mul(impl, pairs) -> float:
    poly_mul = impl.poly_mul

    def work():
        for p, q in pairs:
            poly_mul(p, q)

    return _time(work)


def micro() -> None:
    rng = random.Random(7)
    scalar_pairs = [(_random_rational(rng), _random_rational(rng))
                    for _ in range(20000)]
    poly_pairs = [(_random_poly(rng, 4, 12), _random_poly(rng, 4, 12))
                  for _ in range(400)]

    print("microbenchmarks (best of 5)")
    for name, fn, pairs in (
            ("qmul x20000", bench_qmul, scalar_pairs),
            ("poly_mul 12x12 terms x400", bench_poly_mul, poly_pairs)):
        pure = fn(_core_py, pairs)
        compiled = fn(_core_cy, pairs)
        print(f"  {name:28s} pure {pure * 1e3:8.2f} ms   "
              f"compiled {compiled * 1e3:8.2f} ms   "
              f"speedup {pure / compiled:5.2f}x")


def macro() -> None:
    print("macro: verify --suite theorem33 --seed 1 (one subprocess each)")
    rows = []
    for label, pure in (("compiled", ""), ("pure", "1")):
        env = dict(os.environ)
        if pure:
            env["PENCILFORMS_PURE"] = pure
        else:
            env.pop("PENCILFORMS_PURE", None)
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "pencilforms.cli", "verify",
             "--suite", "theorem33", "--seed", "1"],
            capture_output=True, text=True, env=env)
        elapsed = time.perf_counter() - start
        status = "ok" if proc.returncode == 0 else f"rc={proc.returncode}"
        rows.append((label, elapsed, status, proc.stdout))
        print(f"  {label:8s} {elapsed:6.2f} s   {status}")
    if rows[0][3] != rows[1][3]:
        print("  WARNING: backends produced different reports")
    else:
        print("  reports byte-identical across backends")


if __name__ == "__main__":
    micro()
    macro()
