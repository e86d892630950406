"""Command-line front end.

JSON reports go to stdout (sorted keys, so runs are byte-stable) and a short
human-readable summary goes to stderr.  Exit codes: 0 success, 1 a check or
cross-check failed, 2 bad input (missing file, parse error, unknown name).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import category as catmod
from .category import CategoryFormatError, builtin, load_category, total_dim_squared
from .graph import GraphError, evaluate, graph_from_json, random_planar_graph
from .homspaces import HomVector, all_words, rotate, trees
from .scalars import FieldError, ParseError, format_scalar
from .surfaces import SurfaceError, parse_surface_spec, random_coarsening, random_refinement, surface_from_json
from .tube import compute_center, punctured_sphere_dim
from .tv import CapExceeded, basis_cap, build_state_space, projector_set, tv_report, verify_move_invariance

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    """Anything that should end the run with exit code 2."""


@dataclass
class RunConfig:
    command: str
    builtin: str | None = None
    file: str | None = None
    surface: str | None = None
    graph: str | None = None
    labels: tuple = ()
    output: str | None = None
    cap: int | None = None
    seed: int = 0
    crosscheck: bool = False
    threads: int = 1


def _category(cfg):
    if (cfg.builtin is None) == (cfg.file is None):
        raise InputError("give exactly one of --builtin or --file")
    try:
        if cfg.builtin is not None:
            return builtin(cfg.builtin)
        return load_category(cfg.file)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    except (OSError, CategoryFormatError, ParseError, FieldError) as e:
        raise InputError(f"cannot load category: {e}") from None


def _surface(text):
    if text is None:
        raise InputError("--surface is required")
    try:
        if text.endswith(".json"):
            with open(text, encoding="utf-8") as fh:
                cx = surface_from_json(json.load(fh))
        else:
            cx = parse_surface_spec(text)
        cx.validate(closed=True)
        return cx
    except (OSError, ValueError, SurfaceError) as e:
        raise InputError(f"cannot load surface: {e}") from None


# ---------------------------------------------------------------------------
# commands; each returns (exit code, report dict, summary line)

def cmd_validate(cfg):
    cat = _category(cfg)
    rep = catmod.validate(cat)
    out = {"category": cat.name, **rep.as_dict(cat)}
    bad = [c.name for c in rep.failures]
    msg = f"{cat.name}: {len(rep.checks)} checks, " + ("all pass" if not bad else f"FAILED {', '.join(bad)}")
    return (OK if rep.ok else FAIL), out, msg


def cmd_eval(cfg):
    cat = _category(cfg)
    if cfg.graph is None:
        raise InputError("--graph is required")
    try:
        with open(cfg.graph, encoding="utf-8") as fh:
            g = graph_from_json(cat, json.load(fh))
    except (OSError, json.JSONDecodeError, GraphError, ValueError, KeyError) as e:
        raise InputError(f"cannot load graph: {e}") from None
    v = evaluate(g)
    out = {"category": cat.name, "value": v.to_json()}
    if not v.labels:
        out["scalar"] = format_scalar(v.data.get((), cat.field.zero), cat.field)
    return OK, out, f"{cat.name}: evaluated graph with {len(g.rot)} vertices"


def _verlinde(center, genus):
    """sum_Y (D_Z / d_Y)^(2g-2), with D_Z^2 = (sum_i d_i^2)^2."""
    K = center.cat.field
    DZ2 = total_dim_squared(center.cat) ** 2
    acc = K.zero
    for Y in center.simples:
        r = DZ2 / (Y.qdim * Y.qdim)
        acc = acc + (r ** (genus - 1) if genus >= 1 else 1 / r)
    return acc


def cmd_tv_dim(cfg):
    cat = _category(cfg)
    cx = _surface(cfg.surface)
    rep = tv_report(cat, cx, cfg.cap, surface=cfg.surface)
    code = OK
    if cfg.crosscheck:
        center = compute_center(cat, cfg.seed)
        v = _verlinde(center, cx.genus())
        agrees = v == rep["dim_ZTV"]
        rep["crosscheck"] = {"verlinde": format_scalar(v, center.cat.field), "agrees": agrees}
        code = OK if agrees else FAIL
    return code, rep, f"{cat.name} on {cfg.surface}: dim Z_TV = {rep['dim_ZTV']} (state space {rep['dim_HTV']})"


def cmd_center(cfg):
    from .tube import center_report

    cat = _category(cfg)
    center = compute_center(cat, cfg.seed)
    torus = None
    if cfg.crosscheck:
        torus = tv_report(cat, parse_surface_spec("torus_square"), cfg.cap)["dim_ZTV"]
    rep = center_report(center, torus)
    code = OK if rep["sum_d2_equals_D4"] else FAIL
    if torus is not None and not rep["torus_dim_crosscheck"]["agrees"]:
        code = FAIL
    names = ", ".join(Y.label for Y in center.simples)
    return code, rep, f"{cat.name}: {len(center.simples)} center simples ({names}); tube algebra dim {center.tube.dim}"


def cmd_punctured_sphere(cfg):
    cat = _category(cfg)
    center = compute_center(cat, cfg.seed)
    if not cfg.labels:
        raise InputError("--labels is required, e.g. --labels e,m,f")
    try:
        objs = [center.by_label(x) for x in cfg.labels]
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    out = {"category": cat.name, "labels": list(cfg.labels)}
    code = OK
    if cfg.crosscheck:
        d, hz = punctured_sphere_dim(center, objs, crosscheck=True)
        out["hom_z_dim"] = hz
        code = OK if d == hz else FAIL
    else:
        d = punctured_sphere_dim(center, objs)
    out["dim"] = d
    return code, out, f"{cat.name}: sphere with points {','.join(cfg.labels)} has dimension {d}"


# property suite ------------------------------------------------------------

def _prop_validate(cat, rng):
    return catmod.validate(cat).ok


def _prop_rotation(cat, rng):
    for n in range(1, 5):
        for w in all_words(cat, n):
            for t in trees(cat, w):
                v = HomVector.basis_vector(cat, w, t)
                if rotate(v, n) != v:
                    return False
    return True


def _prop_contraction_order(cat, rng):
    for _ in range(10):
        g = random_planar_graph(cat, rng, n_ops=rng.randint(2, 6))
        ref = evaluate(g)
        if evaluate(g, random.Random(rng.random())) != ref:
            return False
    return True


def _prop_projectors(cat, rng):
    S = build_state_space(cat, parse_surface_spec("torus_square"))
    return projector_set(S).check()


def _prop_moves(cat, rng):
    """Two refinements then up to two coarsenings of the torus."""
    cx = cur = parse_surface_spec("torus_square")
    moves = []
    for step in range(4):
        nxt, mv = (random_refinement if step < 2 else random_coarsening)(cur, rng)
        if mv is None:
            break
        moves.append(mv)
        cur = nxt
    ok, _ = verify_move_invariance(cat, cx, moves)
    return ok


def _prop_center(cat, rng):
    center = compute_center(cat, rng.randrange(1000))
    return all(Y.hb.unit_ok() and Y.hb.hexagon_ok() for Y in center.simples) \
        and center.dim_squared() == total_dim_squared(center.cat) ** 2


PROPERTIES = [
    ("validate", _prop_validate),
    ("rotation_order", _prop_rotation),
    ("contraction_order", _prop_contraction_order),
    ("torus_projectors", _prop_projectors),
    ("move_invariance", _prop_moves),
    ("center_half_braidings", _prop_center),
]


def cmd_property_suite(cfg):
    cat = _category(cfg)
    seeds = [cfg.seed * 1000 + k for k in range(len(PROPERTIES))]

    def run(job):
        (name, fn), seed = job
        return name, bool(fn(cat, random.Random(seed)))

    jobs = list(zip(PROPERTIES, seeds))
    with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as ex:
        results = list(ex.map(run, jobs))       # ex.map keeps the input order
    out = {"category": cat.name, "seed": cfg.seed, "results": {n: r for n, r in results}}
    bad = [n for n, r in results if not r]
    msg = f"{cat.name}: {len(results)} properties, " + ("all pass" if not bad else f"FAILED {', '.join(bad)}")
    return (FAIL if bad else OK), out, msg


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "tv-dim": cmd_tv_dim,
    "center": cmd_center,
    "punctured-sphere": cmd_punctured_sphere,
    "property-suite": cmd_property_suite,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="stringnet", description="String-net and Turaev-Viro computations.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=list(catmod.BUILTINS))
    src.add_argument("--file", help="category JSON (format sfc-1)")
    ap.add_argument("--surface", help="torus, sphere(3), genus2, ... or a plcw-1 JSON file")
    ap.add_argument("--graph", help="graph JSON (format sng-1) for eval")
    ap.add_argument("--labels", default="", help="comma separated center labels for punctured-sphere")
    ap.add_argument("--output", help="also write the JSON report here")
    ap.add_argument("--cap", type=int, default=None, help="basis-size cap (default: STRINGNET_CAP or 10^6)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--crosscheck", action="store_true", help="run the independent oracle and fail on mismatch")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for property-suite")
    return ap


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    labels = tuple(x.strip() for x in ns.labels.split(",") if x.strip())
    return RunConfig(ns.command, ns.builtin, ns.file, ns.surface, ns.graph, labels, ns.output,
                     ns.cap if ns.cap is not None else basis_cap(), ns.seed, ns.crosscheck, ns.threads)


def main(argv=None):
    try:
        cfg = parse_config(argv)
    except SystemExit as e:             # argparse already printed the usage
        return BAD_INPUT if e.code else OK
    try:
        code, report, msg = COMMANDS[cfg.command](cfg)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return FAIL
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as e:
            print(f"error: cannot write {cfg.output}: {e}", file=sys.stderr)
            return BAD_INPUT
    print(msg, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
