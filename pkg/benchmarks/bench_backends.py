"""Time the compiled loop kernels against their numpy fallbacks.

    python3 benchmarks/bench_backends.py [--repeat 5] [--batch 64]

Shapes match one MNIST training step (batch 64, 28x28, 32 channels). The
last section times a full forward/backward pass of the OOCS network with
each backend switched in.
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from oocs import backend
from oocs.harness.models import build_network
from oocs.kernels import build_oocs_kernel
from oocs.nn import backward, forward, init_params


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(batch, rng):
    x = rng.random((batch, 28, 28, 32), dtype=np.float32)
    cols = backend.im2col(x, 3)
    out, arg = backend.maxpool2(x)
    planes = rng.random((batch, 28, 28), dtype=np.float32)
    k3 = build_oocs_kernel(3, Fraction(1, 2)).weights
    k5 = build_oocs_kernel(5, Fraction(2, 3)).weights
    return {
        "correlate_same 3x3": lambda impl: backend.correlate_same(planes, k3, impl=impl),
        "correlate_same 5x5": lambda impl: backend.correlate_same(planes, k5, impl=impl),
        "im2col": lambda impl: backend.im2col(x, 3, impl=impl),
        "col2im": lambda impl: backend.col2im(cols, 3, impl=impl),
        "maxpool2": lambda impl: backend.maxpool2(x, impl=impl),
        "maxpool2_backward": lambda impl: backend.maxpool2_backward(out, arg, 28, 28, impl=impl),
    }


def train_step(batch, rng):
    spec = build_network("oocs")
    params = init_params(spec, 0)
    x = rng.random((batch, 28, 28, 1), dtype=np.float32)
    y = rng.integers(0, 10, batch)

    def step(impl):
        saved = backend._impl
        backend._impl = backend.get(impl)
        try:
            _, cache = forward(spec, params, x, mode="train", seed=0)
            backward(spec, params, cache, y)
        finally:
            backend._impl = saved

    return step


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=64)
    args = ap.parse_args()
    names = backend.available()
    rng = np.random.default_rng(0)
    print(f"backends: {', '.join(names)} (active: {backend.NAME})")
    print(f"{'case':24s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    cases = kernel_cases(args.batch, rng)
    cases["oocs train step"] = train_step(args.batch, rng)
    for label, fn in cases.items():
        t = [best_of(lambda: fn(n), args.repeat) for n in names]
        row = f"{label:24s}" + "".join(f"{1e3 * v:10.2f}ms" for v in t)
        if len(t) > 1:
            row += f"{t[0] / t[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
