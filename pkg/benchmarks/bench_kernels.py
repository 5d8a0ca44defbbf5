"""Compare the compiled and pure-Python float kernels.

    python benchmarks/bench_kernels.py [--problems 200] [--repeat 3]

Times pnorm, residual and a full coordinate-descent solve on the same
seeded planar problems for each implementation, checks the results agree
bit for bit, and prints the speedup.
"""

import argparse
import random
import sys
import timeit

from ndortho import _pykernels

try:
    from ndortho import _ckernels
except ImportError:
    _ckernels = None

P_VALUES = (1.0, 1.5, 3.0, 4.0, float("inf"))


def make_problems(count: int, seed: int) -> list:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        verts = [[rng.uniform(-5, 5), rng.uniform(-5, 5)] for _ in range(3)]
        x0 = [sum(v[i] for v in verts) / 3 for i in range(2)]
        out.append((x0, verts, rng.choice(P_VALUES)))
    return out


def workloads(mod, problems):
    dirs = [[1.0, 0.0], [0.0, 1.0]]

    def pnorm():
        for x0, verts, p in problems:
            for v in verts:
                mod.pnorm([a - b for a, b in zip(x0, v)], p)

    def residual():
        for x0, verts, p in problems:
            mod.residual(x0, verts, p)

    def descend():
        return [mod.descend(x0, verts, p, dirs, 1e-24, 200, 1.0) for x0, verts, p in problems]

    return {"pnorm": pnorm, "residual": residual, "descend": descend}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--problems", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    problems = make_problems(args.problems, args.seed)
    py, cy = workloads(_pykernels, problems), workloads(_ckernels, problems)

    if py["descend"]() != cy["descend"]():
        print("MISMATCH: compiled and pure-Python descend disagree")
        return 1

    print(f"{args.problems} planar problems, best of {args.repeat}")
    print(f"{'kernel':<10}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name in py:
        tp = min(timeit.repeat(py[name], number=1, repeat=args.repeat))
        tc = min(timeit.repeat(cy[name], number=1, repeat=args.repeat))
        print(f"{name:<10}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
