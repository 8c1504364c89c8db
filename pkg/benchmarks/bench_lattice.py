"""Compare the compiled and pure-Python lattice kernels.

    python3 benchmarks/bench_lattice.py [--repeat 3] [--shells 60]

Times the raw row-sum kernel and the two user-facing calls built on it
(eisenstein_g2_g3 and wp_eval), then checks that both backends agree.
"""

import argparse
import time

import mpmath

from ectorus.curves import analytic, eisenstein_g2_g3, lattice, wp_eval

TAUS = [mpmath.mpc(0.1, 1.3), mpmath.mpc(-0.4, 0.95), mpmath.mpc(0.27, 2.2)]
Z = mpmath.mpc(0.31, 0.47)


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        analytic._tau_rows.cache_clear()
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(shells=60, precision=100, repeat=3):
    mpmath.mp.prec = precision + 20
    offsets = [Z - n * TAUS[0] for n in range(-shells, shells + 1)]
    cases = {
        "row_sums": lambda: lattice.row_sums(offsets, shells, precision),
        "eisenstein_g2_g3": lambda: [eisenstein_g2_g3(t, shells, precision) for t in TAUS],
        "wp_eval": lambda: [wp_eval(Z, t, shells, precision) for t in TAUS],
    }
    results = {}
    for name in lattice.available_backends():
        with lattice.use_backend(name):
            results[name] = {case: _best(fn, repeat) for case, fn in cases.items()}

    print(f"shells={shells} precision={precision} best of {repeat}")
    print(f"{'case':<18}" + "".join(f"{b:>12}" for b in results) + "     speedup")
    for case in cases:
        times = [results[b][case] for b in results]
        speed = f"{times[1] / times[0]:10.1f}x" if len(times) == 2 else "       n/a"
        print(f"{case:<18}" + "".join(f"{t:11.4f}s" for t in times) + speed)

    if len(results) == 2:
        worst = 0.0
        for t in TAUS:
            with lattice.use_backend("compiled"):
                a = wp_eval(Z, t, shells, precision)
                ga = eisenstein_g2_g3(t, shells, precision)
            with lattice.use_backend("python"):
                b = wp_eval(Z, t, shells, precision)
                gb = eisenstein_g2_g3(t, shells, precision)
            for x, y in ((a.value, b.value), (a.derivative, b.derivative), (ga.g2, gb.g2), (ga.g3, gb.g3)):
                worst = max(worst, float(abs(x - y) / max(1, abs(y))))
        print(f"max relative difference between backends: {worst:.2e}")
    return results


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shells", type=int, default=60)
    ap.add_argument("--precision", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    run(a.shells, a.precision, a.repeat)
