"""Simple objects of the Drinfeld center for each built-in category.

    python3 scripts/center_table.py [name ...]

For every simple: its name, underlying object, quantum dimension, twist
(exact and as an angle in units of pi), and whether the half-braiding
passes the hexagon and unit checks.
"""

import cmath
import sys
import time

from stringnet.category import BUILTINS, builtin, total_dim_squared
from stringnet.scalars import format_scalar
from stringnet.tube import compute_center


def show(name):
    t0 = time.perf_counter()
    C = compute_center(builtin(name))
    K = C.cat.field
    D4 = total_dim_squared(C.cat) ** 2
    print(f"== {name}: tube algebra dim {C.tube.dim}, {len(C.simples)} simples, "
          f"sum d^2 = D^4: {C.dim_squared() == D4} ({time.perf_counter() - t0:.1f}s)")
    for Y in C.simples:
        under = " + ".join(f"{n}*{x}" if n > 1 else x for x, n in Y.underlying_names(C.cat).items())
        angle = cmath.phase(complex(K.embed(Y.twist))) / cmath.pi
        checks = Y.hb.hexagon_ok() and Y.hb.unit_ok()
        print(f"  {Y.label:<8} F(Y) = {under:<14} d = {format_scalar(Y.qdim, K):<22} "
              f"theta = exp({angle:+.4f} pi i)  checks {'ok' if checks else 'FAIL'}")


if __name__ == "__main__":
    for n in sys.argv[1:] or BUILTINS:
        show(n)
