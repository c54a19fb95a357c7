"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from discpack import kernels
from discpack.corona import enumerate_coronas
from discpack.generate import C9Fill, generate
from discpack.geometry import LARGE
from discpack.model import build_tangency_graph
from discpack.radii import get_class


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--extent", type=int, default=12, help="c9 patch size for the contact search")
    args = ap.parse_args(argv)

    c9 = get_class("c9")
    patch = generate(c9, C9Fill(extent=(args.extent, args.extent)))
    cases = {
        "corona words (c9 large)": lambda: enumerate_coronas(LARGE, c9),
        f"tangency graph ({len(patch.discs)} discs, periodic)": lambda: build_tangency_graph(patch),
    }
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.active_backend()})")
    previous = kernels.active_backend()
    try:
        for name, fn in cases.items():
            times = {}
            for b in backends:
                kernels.use_backend(b)
                times[b] = _best(fn, args.repeat)
            row = "  ".join(f"{b} {t * 1e3:9.2f} ms" for b, t in times.items())
            ratio = ""
            if "compiled" in times and "python" in times:
                ratio = f"  speedup x{times['python'] / times['compiled']:.1f}"
            print(f"{name:<40}{row}{ratio}")
    finally:
        kernels.use_backend(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
