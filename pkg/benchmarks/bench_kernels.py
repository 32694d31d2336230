"""Time the F_p polynomial kernels under both backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--sizes 64,256,1024]

Each backend runs in its own interpreter (the backend is fixed at import
time by COMPOLY_KERNELS), and the script checks that both produced the
same digests before printing the table.  Numba timings exclude the first
(compiling) call.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import timeit

P = 1_000_003


def _worker(sizes, repeat):
    import numpy as np

    from compoly import _kernels as K
    from compoly.compose_uni import composed_mul_uni
    from compoly.fields import FiniteField
    from compoly.unipoly import UPoly

    rng = np.random.default_rng(0)
    rows, digest = [], hashlib.sha256()

    def poly(n):
        a = rng.integers(0, P, n + 1, dtype=np.int64)
        a[-1] = 1
        return a

    def bench(name, n, fn):
        out = fn()  # warm-up, compiles under numba
        digest.update(np.asarray(out if not isinstance(out, tuple) else np.concatenate(out), dtype=np.int64).tobytes())
        t = min(timeit.repeat(fn, number=1, repeat=repeat))
        rows.append((name, n, t))

    for n in sizes:
        a, b, m = poly(n), poly(n // 2), poly(n)
        bench("mul", n, lambda: K.mul(a, b, P))
        bench("divmod", n, lambda: K.divmod_(a, b, P))
        bench("gcd", n, lambda: K.gcd(a, m, P))
        bench("powmod", n, lambda: K.powmod(b, P, m, P))
    for n in (4, 8):
        M = rng.integers(0, P, (n, n, 4), dtype=np.int64)
        bench("polymat_det", n, lambda: K.polymat_det(M, P))

    F = FiniteField(P)
    for d in (3, 5):
        f = UPoly(F, [int(v) for v in poly(d)], "x")
        g = UPoly(F, [int(v) for v in poly(d + 1)], "x")
        bench("composed_mul_uni", d * (d + 1), lambda: [c.value for c in composed_mul_uni(f, g).coeffs])
    return {"backend": K.BACKEND, "rows": rows, "digest": digest.hexdigest()}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="64,256,1024")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    a = ap.parse_args(argv)
    sizes = [int(s) for s in a.sizes.split(",")]
    if a.worker:
        json.dump(_worker(sizes, a.repeat), sys.stdout)
        return 0

    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, COMPOLY_KERNELS=backend)
        cmd = [sys.executable, __file__, "--worker", "--repeat", str(a.repeat), "--sizes", a.sizes]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
        results[backend] = json.loads(out)

    nb, np_ = results["numba"], results["numpy"]
    if nb["backend"] != "numba":
        print("numba is not importable; both columns use numpy")
    same = nb["digest"] == np_["digest"]
    print(f"{'kernel':<18}{'n':>6}{'numba ms':>12}{'numpy ms':>12}{'ratio':>8}")
    for (name, n, t1), (_, _, t2) in zip(nb["rows"], np_["rows"]):
        print(f"{name:<18}{n:>6}{t1 * 1e3:>12.3f}{t2 * 1e3:>12.3f}{t2 / t1:>8.1f}")
    print("outputs identical" if same else "OUTPUTS DIFFER")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
