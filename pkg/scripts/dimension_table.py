"""Ground-state dimensions on closed surfaces, next to the Verlinde count.

    python3 scripts/dimension_table.py                      # spheres and torus
    python3 scripts/dimension_table.py --genus2 fibonacci   # add genus 2 (slow)

Prints one row per (category, surface): size of the edge/vertex space, rank
of the projector product, the Verlinde sum from the center, and wall time.
"""

import argparse
import time

from stringnet.category import BUILTINS, builtin
from stringnet.cli import _verlinde
from stringnet.scalars import format_scalar
from stringnet.surfaces import parse_surface_spec
from stringnet.tube import compute_center
from stringnet.tv import tv_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--categories", default=",".join(BUILTINS))
    ap.add_argument("--genus2", default="vec_z2", help="categories for which genus 2 is also run")
    args = ap.parse_args()
    big = set(args.genus2.split(",")) if args.genus2 else set()
    print(f"{'category':<10} {'surface':<13} {'dim H':>6} {'dim Z':>6} {'verlinde':>9} {'time':>7}")
    for name in args.categories.split(","):
        cat = builtin(name)
        center = compute_center(cat)
        surfaces = ["sphere(2)", "sphere(3)", "torus_square"] + (["genus(2)"] if name in big else [])
        for s in surfaces:
            t0 = time.perf_counter()
            cx = parse_surface_spec(s)
            rep = tv_report(cat, cx)
            v = format_scalar(_verlinde(center, cx.genus()), center.cat.field)
            print(f"{name:<10} {s:<13} {rep['dim_HTV']:>6} {rep['dim_ZTV']:>6} {v:>9} "
                  f"{time.perf_counter() - t0:>6.1f}s")


if __name__ == "__main__":
    main()
