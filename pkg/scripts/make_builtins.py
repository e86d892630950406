"""Regenerate the shipped category files in src/stringnet/data/.

F-symbols are the standard gauge for each example: trivial cocycle for the
cyclic groups, the usual 2x2 matrix for Fibonacci, and the Hadamard block
plus two sign entries for Ising.  The pentagon checker certifies them.

    python scripts/make_builtins.py
"""

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "stringnet" / "data"


def group_category(n):
    labels = [str(i) for i in range(n)]
    fusion = [[str(a), str(b), str((a + b) % n)] for a in range(n) for b in range(n)]
    F = []
    for a, b, c in itertools.product(range(n), repeat=3):
        if 0 in (a, b, c):
            continue
        e, f, d = (a + b) % n, (b + c) % n, (a + b + c) % n
        F.append([str(a), str(b), str(c), str(d), str(e), str(f), 0, 0, 0, 0, "1"])
    return {
        "format": "sfc-1",
        "name": f"vec_z{n}",
        "field_generators": [],
        "center_field_generators": ["-3"] if n == 3 else [],
        "simples": labels,
        "unit": "0",
        "dual": {str(a): str((-a) % n) for a in range(n)},
        "fusion": fusion,
        "qdim": {l: "1" for l in labels},
        "sqrt_qdim": {l: "1" for l in labels},
        "F": F,
        "fs_indicator": {str(a): 1 for a in range(n) if (2 * a) % n == 0},
    }


def admissible_F(labels, prod, special, unit):
    """All multiplicity-free F entries with no unit leg; default value 1."""
    F = []
    for a, b, c, d in itertools.product(labels, repeat=4):
        if unit in (a, b, c):
            continue
        for e in prod[(a, b)]:
            if d not in prod[(e, c)]:
                continue
            for f in prod[(b, c)]:
                if d not in prod[(a, f)]:
                    continue
                val = special.get((a, b, c, d, e, f), "1")
                if val != "0":
                    F.append([a, b, c, d, e, f, 0, 0, 0, 0, val])
    return F


def fibonacci():
    labels = ["1", "tau"]
    prod = {("1", "1"): ["1"], ("1", "tau"): ["tau"], ("tau", "1"): ["tau"],
            ("tau", "tau"): ["1", "tau"]}
    phi_inv = "(sqrt(5)-1)/2"
    rs = "1/sqrt((1+sqrt(5))/2)"
    t = "tau"
    special = {
        (t, t, t, t, "1", "1"): phi_inv,
        (t, t, t, t, "1", t): rs,
        (t, t, t, t, t, "1"): rs,
        (t, t, t, t, t, t): "-" + "(" + phi_inv + ")",
    }
    return {
        "format": "sfc-1",
        "name": "fibonacci",
        "field_generators": ["5", "(1+sqrt(5))/2"],
        "center_field_generators": ["-(10+2*sqrt(5))"],
        "simples": labels,
        "unit": "1",
        "dual": {"1": "1", t: t},
        "fusion": [[a, b, c] for (a, b), cs in prod.items() for c in cs],
        "qdim": {"1": "1", t: "(1+sqrt(5))/2"},
        "sqrt_qdim": {"1": "1", t: "sqrt((1+sqrt(5))/2)"},
        "F": admissible_F(labels, prod, special, "1"),
        "fs_indicator": {"1": 1, t: 1},
    }


def ising():
    labels = ["1", "sigma", "psi"]
    s, p = "sigma", "psi"
    prod = {}
    for a in labels:
        prod[("1", a)] = [a]
        prod[(a, "1")] = [a]
    prod[(s, s)] = ["1", p]
    prod[(s, p)] = [s]
    prod[(p, s)] = [s]
    prod[(p, p)] = ["1"]
    h = "1/sqrt(2)"
    special = {
        (s, s, s, s, "1", "1"): h,
        (s, s, s, s, "1", p): h,
        (s, s, s, s, p, "1"): h,
        (s, s, s, s, p, p): "-1/sqrt(2)",
        (p, s, p, s, s, s): "-1",
        (s, p, s, p, s, s): "-1",
    }
    return {
        "format": "sfc-1",
        "name": "ising",
        "field_generators": ["2", "sqrt(2)"],
        "center_field_generators": ["-1", "2+sqrt(2)"],
        "simples": labels,
        "unit": "1",
        "dual": {a: a for a in labels},
        "fusion": [[a, b, c] for (a, b), cs in prod.items() for c in cs],
        "qdim": {"1": "1", s: "sqrt(2)", p: "1"},
        "sqrt_qdim": {"1": "1", s: "sqrt(sqrt(2))", p: "1"},
        "F": admissible_F(labels, prod, special, "1"),
        "fs_indicator": {a: 1 for a in labels},
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for data in (group_category(2), group_category(3), fibonacci(), ising()):
        path = OUT / f"{data['name']}.json"
        path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
        print("wrote", path)


if __name__ == "__main__":
    main()
