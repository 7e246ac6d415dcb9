"""Time the compiled and numpy Monte Carlo kernels on the same workload.

    python benchmarks/bench_backends.py --samples 200000 --repeat 3
"""
import argparse
import time

from zfbend._backend import BACKENDS
from zfbend.montecarlo import mc_ergodic_exponential, mc_ergodic_zf


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rho", type=float, default=10.0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cases = [("exponential", mc_ergodic_exponential, n) for n in (1, 4)]
    cases += [("rayleigh-zf", mc_ergodic_zf, n) for n in (1, 2, 4, 8)]
    names = sorted(BACKENDS)
    print(f"{'model':<12} {'n':>2} " + " ".join(f"{b + ' [s]':>12}" for b in names)
          + ("   speedup" if len(names) > 1 else ""))
    for model, fn, n in cases:
        times, means = [], []
        for b in names:
            t, est = best_of(lambda: fn(args.rho, n, args.samples, 1, workers=args.workers, backend=b),
                             args.repeat)
            times.append(t)
            means.append(est.mean)
        line = f"{model:<12} {n:>2} " + " ".join(f"{t:12.4f}" for t in times)
        if len(names) > 1:
            line += f"   {times[names.index('python')] / times[names.index('cython')]:7.2f}x"
            line += f"   |dmean|={abs(means[0] - means[1]):.1e}"
        print(line)


if __name__ == "__main__":
    main()
