"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row times one workload under every available backend and reports the
best of ``--repeat`` runs. The Groebner rows swap the backend used by the
whole package, so they measure end-to-end effect rather than a single call.
"""
import argparse
import random
import timeit
from contextlib import contextmanager

from frobsplit import kernels
from frobsplit.frobenius import tau_for_fiber, verify_compatible
from frobsplit.groebner import Ideal
from frobsplit.poly import PolyRing
from frobsplit.slgroup import SlnRing
from frobsplit.steinberg import fiber_ideal

NAMES = ("python", "cython")
SWAPPED = ("order_key", "mul", "axpy", "reduce", "cartier")


@contextmanager
def backend(mod):
    saved = {name: getattr(kernels, name) for name in SWAPPED}
    for name in SWAPPED:
        setattr(kernels, name, getattr(mod, name))
    try:
        yield
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def random_terms(ring, rng, nterms, maxexp):
    d = {}
    for _ in range(nterms):
        d[tuple(rng.randrange(maxexp + 1) for _ in range(ring.nvars))] = rng.randrange(1, ring.p)
    return ring.from_dict(d).terms


def workloads():
    rng = random.Random(0)
    r = PolyRing([f"x{i}" for i in range(6)], 7)
    a, b = random_terms(r, rng, 120, 4), random_terms(r, rng, 120, 4)

    R3 = SlnRing(3, 3)
    g = tau_for_fiber(R3, (0, 0)).g
    big = (g * g).terms

    R2 = SlnRing(2, 5)
    F = fiber_ideal(R2, (1,))
    lts, tails, blocks = F.ideal._reducers()
    h = random_terms(R2.ring, rng, 200, 6)

    def sl3_fiber():
        Ideal(fiber_ideal(SlnRing(3, 2), (1, 1)).generators).basis

    def random_ideal():
        rr = PolyRing(["a", "b", "c"], 7)
        Ideal([rr.from_dict({(2, 1, 0): 1, (0, 0, 2): 3, (0, 0, 0): 1}),
               rr.from_dict({(1, 2, 0): 1, (0, 1, 1): 2, (0, 0, 0): 2}),
               rr.from_dict({(1, 0, 2): 1, (0, 3, 0): 1, (0, 0, 0): 3})], "lex").basis

    def compat():
        R = SlnRing(2, 5)
        s = tau_for_fiber(R, (2,))
        verify_compatible(s, fiber_ideal(R, (2,)).ideal)

    return [
        ("mul 120x120 terms, 6 vars", lambda k: k.mul(a, b, 7)),
        ("cartier of tau^2, SL_3 p=3", lambda k: k.cartier(big, 3, 9, R3.ring.bits)),
        ("reduce 200 terms mod SL_2 fiber", lambda k: k.reduce(h, lts, tails, blocks, R2.ring.guard, 5, True)),
        ("groebner: random lex ideal", lambda k: random_ideal()),
        ("groebner: SL_3 unipotent fiber", lambda k: sl3_fiber()),
        ("compatibility check SL_2 p=5", lambda k: compat()),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=3)
    args = ap.parse_args(argv)

    mods = kernels.backends()
    names = [n for n in NAMES if n in mods]
    if "cython" not in mods:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'workload':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads():
        times = {}
        for n in names:
            mod = mods[n]
            with backend(mod):
                times[n] = min(timeit.repeat(lambda: fn(mod), number=args.number, repeat=args.repeat)) / args.number
        row = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.2f}x"
        print(row)


if __name__ == "__main__":
    main()
