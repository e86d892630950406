"""Skeletal data for spherical fusion categories.

A category is given by its simple labels, duals, fusion multiplicities
N_ab^c, quantum dimensions (with chosen square roots), and F-symbols in the
convention

    |d; (a b -> e) c>  =  sum_f  F^{abc}_d[e, f]  |d; a (b c -> f)>

for left-comb splitting trees.  Internally labels are integers indexing
``labels``; JSON files use the string names.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .scalars import Field, format_scalar, mat_inverse, parse_scalar

__all__ = [
    "FusionCategory", "ValidationReport", "CheckResult", "CategoryFormatError",
    "validate", "total_dim_squared", "builtin", "BUILTINS", "load_category",
    "category_from_json", "category_to_json",
]

BUILTINS = ("vec_z2", "vec_z3", "fibonacci", "ising")
FORMAT = "sfc-1"


class CategoryFormatError(ValueError):
    """Structurally malformed category file."""


class FusionCategory:
    """Immutable skeletal data of a fusion category.

    F-symbol keys are 10-tuples ``(a, b, c, d, e, alpha, beta, f, gamma,
    delta)`` where alpha indexes (a b -> e), beta (e c -> d), gamma
    (b c -> f) and delta (a f -> d).  Entries with a unit leg are filled in
    as the identity when absent.
    """

    def __init__(self, name, labels, unit, dual, fusion, qdim, sqrt_qdim, F,
                 fs_indicator, field, center_generators=()):
        self.name = name
        self.labels = list(labels)
        self.rank = len(self.labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        self.unit = unit
        self.dual = list(dual)
        self.field = field
        self.center_generators = tuple(center_generators)
        self._N = {k: v for k, v in fusion.items() if v}
        self.qdim = [field(x) for x in qdim]
        self.sqrt_qdim = [field(x) for x in sqrt_qdim]
        self.fs_indicator = dict(fs_indicator)
        self.F = {k: field(v) for k, v in F.items() if v}
        self.products = {}
        for (a, b, c), n in self._N.items():
            self.products.setdefault((a, b), []).append(c)
        for k in self.products:
            self.products[k].sort()
        self._fill_unit_entries()
        self._mfree = None
        self._F6 = None
        self._Finv6 = None

    # basic queries -------------------------------------------------------
    def N(self, a, b, c):
        return self._N.get((a, b, c), 0)

    def fuse(self, a, b):
        """Simple summands of a (x) b, in label order."""
        return self.products.get((a, b), [])

    @property
    def multiplicity_free(self):
        if self._mfree is None:
            self._mfree = all(v == 1 for v in self._N.values())
        return self._mfree

    def label(self, i):
        return self.labels[i]

    def lookup(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown simple {name!r} in category {self.name}") from None

    def __repr__(self):
        return f"FusionCategory({self.name!r}, rank={self.rank})"

    def _fill_unit_entries(self):
        one = self.field.one
        u = self.unit
        R = range(self.rank)
        for a, b, c, d in itertools.product(R, repeat=4):
            if u not in (a, b, c):
                continue
            for key in self._identity_keys(a, b, c, d):
                self.F.setdefault(key, one)

    def _identity_keys(self, a, b, c, d):
        """Keys of the identity F-matrix for a unit leg among a, b, c."""
        u = self.unit
        out = []
        if a == u:
            for m in range(self.N(b, c, d)):
                out.append((a, b, c, d, b, 0, m, d, m, 0))
        elif b == u:
            for m in range(self.N(a, c, d)):
                out.append((a, b, c, d, a, 0, m, c, 0, m))
        elif c == u:
            for m in range(self.N(a, b, d)):
                out.append((a, b, c, d, d, m, 0, b, 0, m))
        return out

    # multiplicity-free engine view ----------------------------------------
    def require_multiplicity_free(self):
        if not self.multiplicity_free:
            raise NotImplementedError(
                f"category {self.name} has fusion multiplicities > 1; the evaluator "
                "handles multiplicity-free data only")

    def F6(self, a, b, c, d, e, f):
        """Multiplicity-free F^{abc}_d[e, f]."""
        if self._F6 is None:
            self._build_F6()
        return self._F6.get((a, b, c, d, e, f), self.field.zero)

    def Finv6(self, a, b, c, d, f, e):
        """Entry of the inverse F-matrix, mapping a(bc->f) to (ab->e)c."""
        if self._Finv6 is None:
            self._build_F6()
        return self._Finv6.get((a, b, c, d, f, e), self.field.zero)

    def F_block(self, a, b, c, d):
        """(rows e, columns f) of the multiplicity-free F^{abc}_d."""
        es = [e for e in self.fuse(a, b) if self.N(e, c, d)]
        fs = [f for f in self.fuse(b, c) if self.N(a, f, d)]
        return es, fs

    def _build_F6(self):
        self.require_multiplicity_free()
        self._F6 = {(k[0], k[1], k[2], k[3], k[4], k[7]): v for k, v in self.F.items()}
        self._Finv6 = {}
        R = range(self.rank)
        for a, b, c, d in itertools.product(R, repeat=4):
            es, fs = self.F_block(a, b, c, d)
            if not es or len(es) != len(fs):
                continue
            M = [[self._F6.get((a, b, c, d, e, f), self.field.zero) for f in fs] for e in es]
            try:
                Mi = mat_inverse(M)
            except ZeroDivisionError:
                continue
            for i, f in enumerate(fs):
                for j, e in enumerate(es):
                    if Mi[i][j]:
                        self._Finv6[(a, b, c, d, f, e)] = Mi[i][j]

    def with_field(self, field):
        """Same data with scalars coerced into a larger field."""
        return FusionCategory(self.name, self.labels, self.unit, self.dual, self._N,
                              [field(x) for x in self.qdim], [field(x) for x in self.sqrt_qdim],
                              {k: field(v) for k, v in self.F.items()}, self.fs_indicator,
                              field, self.center_generators)

    def center_field(self):
        """Field used for splitting the tube algebra."""
        return self.field.extend(self.center_generators)


# ---------------------------------------------------------------------------
# validation

@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: tuple = ()

    def as_dict(self, cat=None):
        d = {"check": self.name, "pass": self.ok}
        if not self.ok:
            d["witness"] = [cat.labels[w] if cat is not None and isinstance(w, int) and not isinstance(w, bool)
                            and 0 <= w < cat.rank else w for w in self.witness]
        return d


@dataclass
class ValidationReport:
    checks: list = dc_field(default_factory=list)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self):
        return not self.failures

    def add(self, name, ok, witness=()):
        self.checks.append(CheckResult(name, bool(ok), tuple(witness)))

    def as_dict(self, cat=None):
        return {"ok": self.ok, "checks": [c.as_dict(cat) for c in self.checks]}


def _first_failure(items, pred):
    for it in items:
        if not pred(*it):
            return it
    return None


def _F10(cat, a, b, c, d, e, al, be, f, ga, de):
    return cat.F.get((a, b, c, d, e, al, be, f, ga, de), cat.field.zero)


def _pentagon_witness(cat):
    """First (a,b,c,d,e) where the pentagon fails, or None."""
    R = range(cat.rank)
    N = cat.N
    zero = cat.field.zero
    for a, b, c, d in itertools.product(R, repeat=4):
        for e in R:
            left = [(f, m1, g, m2, m3)
                    for f in R for m1 in range(N(a, b, f))
                    for g in R for m2 in range(N(f, c, g))
                    for m3 in range(N(g, d, e))]
            if not left:
                continue
            right = [(l, n1, k, n3, n4)
                     for l in R for n1 in range(N(c, d, l))
                     for k in R for n3 in range(N(b, l, k))
                     for n4 in range(N(a, k, e))]
            for (f, m1, g, m2, m3) in left:
                for (l, n1, k, n3, n4) in right:
                    lhs = zero
                    for n2 in range(N(f, l, e)):
                        x = _F10(cat, f, c, d, e, g, m2, m3, l, n1, n2)
                        if x:
                            lhs = lhs + x * _F10(cat, a, b, l, e, f, m1, n2, k, n3, n4)
                    rhs = zero
                    for h in R:
                        for r1 in range(N(b, c, h)):
                            for r2 in range(N(a, h, g)):
                                x = _F10(cat, a, b, c, g, f, m1, m2, h, r1, r2)
                                if not x:
                                    continue
                                for r3 in range(N(h, d, k)):
                                    y = _F10(cat, a, h, d, e, g, r2, m3, k, r3, n4)
                                    if y:
                                        rhs = rhs + x * y * _F10(cat, b, c, d, k, h, r1, r3, l, n1, n3)
                    if lhs != rhs:
                        return (a, b, c, d, e, f, g, l, k)
    return None


def validate(cat):
    """Run every structural check; failures are reported, never raised."""
    rep = ValidationReport()
    R = range(cat.rank)
    u, D, N = cat.unit, cat.dual, cat.N
    trip = list(itertools.product(R, repeat=3))

    rep.add("dual_involution", all(D[D[i]] == i for i in R),
            [i for i in R if D[D[i]] != i][:1])
    rep.add("dual_unit", D[u] == u, (u,))
    w = _first_failure(trip, lambda a, b, c: N(u, a, b) == (a == b) and N(a, u, b) == (a == b))
    rep.add("fusion_unit", w is None, w or ())
    w = _first_failure(trip, lambda a, b, c: N(a, b, c) == N(D[b], D[a], D[c]))
    rep.add("fusion_dual_symmetry", w is None, w or ())
    w = _first_failure([(a,) for a in R], lambda a: N(a, D[a], u) == 1)
    rep.add("fusion_rigidity", w is None, w or ())

    def assoc(i, j, l):
        for m in R:
            lhs = sum(N(i, j, k) * N(k, l, m) for k in R)
            rhs = sum(N(j, l, k) * N(i, k, m) for k in R)
            if lhs != rhs:
                return False
        return True
    w = _first_failure(trip, assoc)
    rep.add("fusion_associativity", w is None, w or ())

    d, s = cat.qdim, cat.sqrt_qdim
    rep.add("qdim_unit", d[u] == 1 and s[u] == 1, (u,))
    w = _first_failure([(i,) for i in R], lambda i: s[i] * s[i] == d[i])
    rep.add("sqrt_qdim_squares", w is None, w or ())
    w = _first_failure([(i,) for i in R], lambda i: s[i] == s[D[i]] and d[i] == d[D[i]])
    rep.add("qdim_dual_invariant", w is None, w or ())
    w = _first_failure([(i,) for i in R], lambda i: bool(d[i]))
    rep.add("qdim_nonzero", w is None, w or ())
    w = _first_failure([(i, j) for i in R for j in R],
                       lambda i, j: d[i] * d[j] == sum((N(i, j, k) * d[k] for k in R), cat.field.zero))
    rep.add("qdim_fusion_consistency", w is None, w or ())

    # F-symbol shape: entries only at admissible indices, square blocks
    bad = None
    for k in cat.F:
        a, b, c, dd, e, al, be, f, ga, de = k
        if not (al < N(a, b, e) and be < N(e, c, dd) and ga < N(b, c, f) and de < N(a, f, dd)):
            bad = (a, b, c, dd, e, f)
            break
    if bad is None:
        for a, b, c, dd in itertools.product(R, repeat=4):
            left = sum(N(a, b, e) * N(e, c, dd) for e in R)
            right = sum(N(b, c, f) * N(a, f, dd) for f in R)
            if left != right:
                bad = (a, b, c, dd)
                break
    rep.add("F_shape", bad is None, bad or ())

    bad = None
    for a, b, c, dd in itertools.product(R, repeat=4):
        if u not in (a, b, c):
            continue
        ident = set(cat._identity_keys(a, b, c, dd))
        for k, v in cat.F.items():
            if k[:4] != (a, b, c, dd):
                continue
            if (k in ident) != (v == 1) or (k not in ident and v):
                bad = (a, b, c, dd)
                break
        if bad:
            break
    rep.add("F_unit_constraints", bad is None, bad or ())

    shape_ok = all(c.ok for c in rep.checks if c.name in ("F_shape", "fusion_associativity"))
    w = _pentagon_witness(cat) if shape_ok else ("skipped",)
    rep.add("pentagon", w is None, w or ())

    rep.add("multiplicity_free", cat.multiplicity_free,
            next(([a, b, c] for (a, b, c), n in cat._N.items() if n > 1), []))

    # Frobenius-Schur indicators and pivotal consistency
    if cat.multiplicity_free and rep.ok:
        from .homspaces import bending_check
        fs_bad, unsupported, zig_bad = bending_check(cat)
        rep.add("fs_indicator_consistent", fs_bad is None, fs_bad or ())
        rep.add("fs_indicator_supported", unsupported is None, unsupported or ())
        rep.add("pivotal_zigzag", zig_bad is None, zig_bad or ())
    return rep


def total_dim_squared(cat):
    """Global dimension squared, sum of d_i^2."""
    out = cat.field.zero
    for x in cat.qdim:
        out = out + x * x
    return out


# ---------------------------------------------------------------------------
# JSON

def _parse(x, field, where):
    try:
        return parse_scalar(str(x), field)
    except ValueError as e:
        raise CategoryFormatError(f"{where}: {e}") from None


def category_from_json(obj):
    """Build a category from the parsed sfc-1 dictionary."""
    if not isinstance(obj, dict):
        raise CategoryFormatError("category file must contain a JSON object")
    if obj.get("format", FORMAT) != FORMAT:
        raise CategoryFormatError(f"unsupported format {obj.get('format')!r}")
    for key in ("simples", "unit", "dual", "fusion", "qdim", "sqrt_qdim", "F"):
        if key not in obj:
            raise CategoryFormatError(f"missing field {key!r}")
    try:
        field = Field([str(g) for g in obj.get("field_generators", [])])
    except ValueError as e:
        raise CategoryFormatError(f"field_generators: {e}") from None
    labels = [str(x) for x in obj["simples"]]
    if len(set(labels)) != len(labels) or not labels:
        raise CategoryFormatError("simples must be a non-empty list of distinct labels")
    idx = {l: i for i, l in enumerate(labels)}

    def L(x, where):
        if str(x) not in idx:
            raise CategoryFormatError(f"{where}: unknown label {x!r}")
        return idx[str(x)]

    unit = L(obj["unit"], "unit")
    dual_map = obj["dual"]
    if not isinstance(dual_map, dict):
        raise CategoryFormatError("dual must map labels to labels")
    dual = [L(dual_map.get(l, None) if l in dual_map else "", f"dual[{l}]") for l in labels]
    fusion = {}
    for ent in obj["fusion"]:
        if not isinstance(ent, list) or len(ent) not in (3, 4):
            raise CategoryFormatError(f"fusion entry {ent!r} must be [a, b, c] or [a, b, c, n]")
        n = int(ent[3]) if len(ent) == 4 else 1
        if n < 0:
            raise CategoryFormatError(f"negative multiplicity in {ent!r}")
        fusion[(L(ent[0], "fusion"), L(ent[1], "fusion"), L(ent[2], "fusion"))] = n

    def per_label(key):
        m = obj[key]
        if not isinstance(m, dict) or set(m) != set(labels):
            raise CategoryFormatError(f"{key} must give a value for every simple")
        return [_parse(m[l], field, f"{key}[{l}]") for l in labels]

    qdim = per_label("qdim")
    sqrt_qdim = per_label("sqrt_qdim")
    F = {}
    for ent in obj["F"]:
        if not isinstance(ent, list) or len(ent) != 11:
            raise CategoryFormatError(
                f"F entry {ent!r} must be [a,b,c,d,e,f,alpha,beta,gamma,delta,value]")
        a, b, c, d, e, f = (L(x, "F") for x in ent[:6])
        al, be, ga, de = (int(x) for x in ent[6:10])
        F[(a, b, c, d, e, al, be, f, ga, de)] = _parse(ent[10], field, f"F{ent[:10]}")
    fs = {}
    for l, v in obj.get("fs_indicator", {}).items():
        if int(v) not in (1, -1):
            raise CategoryFormatError(f"fs_indicator[{l}] must be +1 or -1")
        fs[L(l, "fs_indicator")] = int(v)
    return FusionCategory(obj.get("name", "custom"), labels, unit, dual, fusion, qdim,
                          sqrt_qdim, F, fs, field, obj.get("center_field_generators", []))


def category_to_json(cat):
    """Serialize to the sfc-1 dictionary (inverse of category_from_json)."""
    lab = cat.labels
    fmt = lambda x: format_scalar(x, cat.field)
    ents = []
    for k in sorted(cat.F):
        a, b, c, d, e, al, be, f, ga, de = k
        if cat.unit in (a, b, c):
            continue
        ents.append([lab[a], lab[b], lab[c], lab[d], lab[e], lab[f], al, be, ga, de, fmt(cat.F[k])])
    return {
        "format": FORMAT,
        "name": cat.name,
        "field_generators": list(cat.field.radicands),
        "center_field_generators": list(cat.center_generators),
        "simples": lab,
        "unit": lab[cat.unit],
        "dual": {lab[i]: lab[cat.dual[i]] for i in range(cat.rank)},
        "fusion": [[lab[a], lab[b], lab[c]] + ([n] if n != 1 else [])
                   for (a, b, c), n in sorted(cat._N.items())],
        "qdim": {lab[i]: fmt(cat.qdim[i]) for i in range(cat.rank)},
        "sqrt_qdim": {lab[i]: fmt(cat.sqrt_qdim[i]) for i in range(cat.rank)},
        "F": ents,
        "fs_indicator": {lab[i]: v for i, v in sorted(cat.fs_indicator.items())},
    }


def load_category(path):
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise CategoryFormatError(f"invalid JSON: {e}") from None
    return category_from_json(obj)


_BUILTIN_CACHE = {}


def builtin(name):
    """One of the shipped example categories."""
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    if name not in _BUILTIN_CACHE:
        text = resources.files("stringnet").joinpath(f"data/{name}.json").read_text(encoding="utf-8")
        _BUILTIN_CACHE[name] = category_from_json(json.loads(text))
    return _BUILTIN_CACHE[name]
