"""Benchmark the pure-Python term kernel against the compiled one.

Two workloads: synthetic sparse-term multiplication at growing sizes, and
the end-to-end certificate loop (decompose + verify at the degree bound),
the second run in subprocesses so each backend is selected at import.

Run:  python3 benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from cherncert import _kernel_py

try:
    from cherncert import _kernel_cy
except ImportError:
    _kernel_cy = None


def random_terms(rng, nterms, nvars=8, max_exp=6):
    out = {}
    while len(out) < nterms:
        ids = sorted(rng.sample(range(nvars), rng.randint(1, 4)))
        mono = tuple(x for v in ids for x in (v, rng.randint(1, max_exp)))
        out[mono] = Fraction(rng.randint(1, 50), rng.randint(1, 9))
    return out


def time_mul(kernel, t1, t2, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        kernel.mul_terms(t1, t2)
    return (time.perf_counter() - start) / repeats


def synthetic_table():
    rng = random.Random(12345)
    print("sparse multiplication, exact rational coefficients")
    print(f"{'terms':>12} {'python':>12} {'cython':>12} {'speedup':>9}")
    for size, repeats in [(30, 200), (100, 40), (300, 8), (800, 2)]:
        t1 = random_terms(rng, size)
        t2 = random_terms(rng, size)
        py = time_mul(_kernel_py, t1, t2, repeats)
        if _kernel_cy is None:
            print(f"{size:>5} x {size:<5} {py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")
            continue
        cy = time_mul(_kernel_cy, t1, t2, repeats)
        assert _kernel_py.mul_terms(t1, t2) == _kernel_cy.mul_terms(t1, t2)
        print(f"{size:>5} x {size:<5} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms {py / cy:>8.1f}x")


CERT_LOOP = r"""
import random, time
from cherncert.kernel import BACKEND
from cherncert.decomposer import decompose, degree_bound, verify_decomposition

rng = random.Random(5)
g, n = 3, 2
slots = [(q, i, j) for q in range(1, n + 1) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
start = time.perf_counter()
for _ in range(40):
    exponents = {}
    for _ in range(degree_bound(g, n)):
        key = rng.choice(slots)
        exponents[key] = exponents.get(key, 0) + 1
    cert = decompose(g, n, exponents)
    assert verify_decomposition(cert)
print(f"{BACKEND}: {time.perf_counter() - start:.3f}s for 40 decompose+verify rounds at (g,n)=(3,2)")
"""


def certificate_loop():
    print()
    print("certificate pipeline (decompose + verify), backend selected at import")
    sys.stdout.flush()
    for backend in ("python", "cython"):
        if backend == "cython" and _kernel_cy is None:
            print("cython: extension not built")
            continue
        env = dict(os.environ, CHERNCERT_BACKEND=backend)
        subprocess.run([sys.executable, "-c", CERT_LOOP], env=env, check=True)


if __name__ == "__main__":
    synthetic_table()
    certificate_loop()
