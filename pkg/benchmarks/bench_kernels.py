"""Compare the compiled and pure-Python term-product kernels.

Raw products of random dense-ish elements, then end-to-end workloads with
``paragrass.kernel.product`` swapped for the Python implementation.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import random
import timeit
from fractions import Fraction

from paragrass import kernel
from paragrass.algebra import Element, Monomial
from paragrass.coherent import solve_weight
from paragrass.displacement import displacement_operator
from paragrass.fock import LadderSpec, random_alpha
from paragrass.scalars import EXACT, GaussianRational, float_backend

try:
    from paragrass import _ckernel
except ImportError:
    _ckernel = None


def random_operator(rng, n, terms, exact=True):
    backend = EXACT if exact else float_backend()
    entries = {}
    for _ in range(terms):
        mono = Monomial.of(n, rng.randint(0, n), rng.randint(0, n))
        if exact:
            val = GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-3, 3))
        else:
            val = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        entries[(mono, rng.randint(0, n), rng.randint(0, n))] = val
    return Element.from_terms(n, "operator", entries, backend)


def raw_cases():
    rng = random.Random(0)
    for exact in (True, False):
        for n, terms in ((3, 40), (6, 200), (8, 400)):
            x, y = random_operator(rng, n, terms, exact), random_operator(rng, n, terms, exact)
            args = (list(x.terms), list(x.terms.values()), list(y.terms), list(y.terms.values()), n, True)
            tag = "exact" if exact else "complex"
            yield f"raw {tag} product n={n}, {len(x.terms)}x{len(y.terms)}", args


def workloads():
    spec = LadderSpec(5, random_alpha(5, random.Random(1)))
    fb = float_backend()
    return [
        ("displacement D' n=6, exact", lambda: displacement_operator(6, "Dprime")),
        ("displacement D' n=6, float", lambda: displacement_operator(6, "Dprime", fb, check=False)),
        ("weight solve n=5 random alpha", lambda: solve_weight(spec, "normalized-right")),
    ]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; only the Python timings are meaningful")
    compiled = _ckernel.product if _ckernel else kernel.python_product
    print(f"{'case':<44}{'python s':>12}{'compiled s':>12}{'speedup':>10}")

    for label, a in raw_cases():
        tp = best(lambda: kernel.python_product(*a), args.repeat)
        tc = best(lambda: compiled(*a), args.repeat)
        print(f"{label:<44}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")

    saved = kernel.product
    try:
        for label, fn in workloads():
            kernel.product = kernel.python_product
            tp = best(fn, args.repeat)
            kernel.product = compiled
            tc = best(fn, args.repeat)
            print(f"{label:<44}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    finally:
        kernel.product = saved


if __name__ == "__main__":
    main()
