"""Compare the compiled and pure-Python polynomial kernels.

Each backend runs in its own interpreter, since the choice is made at import::

    python3 benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from quivgrass import fixtures
from quivgrass.lift import projective_pipeline
from quivgrass.polyring import BACKEND, Poly, Var, groebner
from quivgrass.presentation import parse_skeleton

def random_ideal(rng, xs):
    gens = []
    for _ in range(3):
        p = Poly.const(0)
        for _ in range(4):
            m = Poly.const(rng.randint(-5, 5))
            for v in xs:
                m = m * Poly.var(v) ** rng.randint(0, 1)
            p = p + m
        gens.append(p)
    return gens

def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    return best

repeat = REPEAT
rng = random.Random(7)
xs = [Var("x", (i,), f"x{i}") for i in range(4)]
ideals = [random_ideal(rng, xs) for _ in range(40)]
a0 = fixtures.a0(); carlson = fixtures.carlson()
out = {"backend": BACKEND}
out["groebner_grevlex"] = bench(lambda: [groebner(I, "grevlex") for I in ideals], repeat)
out["groebner_lex"] = bench(lambda: [groebner(I, "lex") for I in ideals], repeat)
out["a0_projective"] = bench(lambda: projective_pipeline(a0, parse_skeleton("z1 @ 1 : e, a", a0), {"1": 2}), repeat)
out["carlson_line_projective"] = bench(lambda: projective_pipeline(carlson, parse_skeleton("z1 @ 1 : e, a", carlson)), repeat)
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("QUIVGRASS_PURE_PYTHON", None)
    if pure:
        env["QUIVGRASS_PURE_PYTHON"] = "1"
    code = WORKLOAD.replace("REPEAT", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("note: compiled kernels unavailable; both columns use the pure-Python backend")
    print(f"{'workload':28s} {fast['backend']:>10s} {'python':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:28s} {fast[key]:10.4f} {slow[key]:10.4f} {slow[key] / fast[key]:8.2f}x")


if __name__ == "__main__":
    main()
