"""Invariant spaces <V1, ..., Vn> = Hom(1, V1 (x) ... (x) Vn) in tree bases.

A basis tree for the word (x_1, ..., x_n) and charge c is the tuple of
internal labels (a_1, ..., a_n) of the left comb

    a_0 = 1,   a_{j-1} (x) x_j -> a_j,   a_n = c.

Trees are unnormalized splitting vertices; the matching fusion vertices are
their duals, so fusing after splitting gives the identity.  All metric data
comes from the cup and cap coefficients solved below and from pairings.
"""

from __future__ import annotations

import itertools

from .scalars import mat_inverse

__all__ = [
    "trees", "basis", "dim", "HomVector", "Bending", "bending", "bending_check",
    "join", "cap_vector", "concat", "rotate", "rotation_matrix", "compose",
    "pairing", "dual_basis", "gram_matrix", "identity_vector", "dual_word",
]


# ---------------------------------------------------------------------------
# per-category caches hang off the category object

def _cache(cat, name):
    store = cat.__dict__.setdefault("_hs_cache", {})
    return store.setdefault(name, {})


def dual_word(cat, word):
    """(x_n*, ..., x_1*)."""
    return tuple(cat.dual[x] for x in reversed(word))


def trees(cat, word, charge=None):
    """All left-comb trees on ``word`` with total charge ``charge``."""
    if charge is None:
        charge = cat.unit
    word = tuple(word)
    C = _cache(cat, "trees")
    key = (word, charge)
    if key in C:
        return C[key]
    out = []
    if not word:
        if charge == cat.unit:
            out.append(())
    else:
        prev = [((), cat.unit)]
        for j, x in enumerate(word):
            nxt = []
            last = j == len(word) - 1
            for t, a in prev:
                for b in cat.fuse(a, x):
                    if last and b != charge:
                        continue
                    nxt.append((t + (b,), b))
            prev = nxt
        out = [t for t, _ in prev]
    C[key] = out
    return out


def basis(cat, word):
    for x in word:
        if not 0 <= x < cat.rank:
            raise KeyError(f"unknown label index {x}")
    return trees(cat, word)


def dim(cat, word, charge=None):
    return len(trees(cat, word, charge))


# ---------------------------------------------------------------------------
# cups and caps

class Bending:
    """Coefficients of cup_x = u_x * split(x x* -> 1), cap_x = v_x * fuse(x x* -> 1).

    cap_x maps x (x) x* to 1 and cup_x maps 1 to x (x) x*.  The values solve
    both zigzag identities and give loop value d_x in either orientation.
    """

    def __init__(self, u, v, kappa):
        self.u = u
        self.v = v
        self.kappa = kappa


def _solve_bending(cat):
    cat.require_multiplicity_free()
    F, Fi = cat.F6, cat.Finv6
    one, u1 = cat.field.one, cat.unit
    u = [None] * cat.rank
    v = [None] * cat.rank
    kappa = {}
    problems = {"fs": None, "unsupported": None, "zigzag": None}
    for a in range(cat.rank):
        b = cat.dual[a]
        if u[a] is not None:
            continue
        d = cat.qdim[a]
        f = F(a, b, a, a, u1, u1)
        fi = Fi(a, b, a, a, u1, u1)
        if not f or not fi:
            problems["zigzag"] = problems["zigzag"] or (a,)
            u[a] = v[a] = u[b] = v[b] = one
            continue
        if a == b:
            k = d * f
            kappa[a] = 1 if k == 1 else (-1 if k == -1 else None)
            if kappa[a] is None:
                problems["zigzag"] = problems["zigzag"] or (a,)
            elif kappa[a] != cat.fs_indicator.get(a, kappa[a]):
                problems["fs"] = problems["fs"] or (a,)
            if kappa[a] == -1:
                problems["unsupported"] = problems["unsupported"] or (a,)
            u[a], v[a] = one, d
            continue
        u[a] = one
        v[b] = 1 / f
        u[b] = d * f
        v[a] = 1 / (u[b] * fi)
    # verify the remaining zigzags and loops
    for a in range(cat.rank):
        b = cat.dual[a]
        d = cat.qdim[a]
        ok = (u[a] * v[a] == d and u[a] * v[b] * F(a, b, a, a, u1, u1) == 1
              and u[b] * v[a] * Fi(a, b, a, a, u1, u1) == 1)
        if not ok and problems["zigzag"] is None and problems["unsupported"] is None:
            problems["zigzag"] = (a,)
    return Bending(u, v, kappa), problems


def bending(cat):
    store = cat.__dict__.setdefault("_hs_cache", {})
    if "bending" not in store:
        b, problems = _solve_bending(cat)
        if problems["unsupported"]:
            raise NotImplementedError(
                f"label {cat.labels[problems['unsupported'][0]]} has Frobenius-Schur indicator -1; "
                "the strict pivotal evaluator needs +1")
        if problems["zigzag"]:
            raise ValueError(f"no consistent cups/caps at label {cat.labels[problems['zigzag'][0]]}")
        store["bending"] = b
    return store["bending"]


def bending_check(cat):
    """(fs mismatch witness, kappa=-1 witness, zigzag failure witness)."""
    _, p = _solve_bending(cat)
    return p["fs"], p["unsupported"], p["zigzag"]


# ---------------------------------------------------------------------------
# the basic tree moves

def join(cat, w1, t1, w2, t2, e):
    """Re-comb c (x) (t2 -> c') -> e into left combs on w1 + w2.

    ``t1`` is a tree on ``w1`` with charge c (the empty tree has charge 1).
    Returns {tree: coefficient}.
    """
    C = _cache(cat, "join")
    key = (w1, t1, w2, t2, e)
    r = C.get(key)
    if r is not None:
        return r
    c = t1[-1] if t1 else cat.unit
    k = len(w2)
    if k == 0:
        r = {t1: cat.field.one} if e == c else {}
    elif k == 1:
        r = {t1 + (e,): cat.field.one} if cat.N(c, w2[0], e) else {}
    else:
        cp = t2[-1]
        bprev = t2[-2]
        y = w2[-1]
        r = {}
        for g in cat.fuse(c, bprev):
            if not cat.N(g, y, e):
                continue
            coef = cat.Finv6(c, bprev, y, e, cp, g)
            if not coef:
                continue
            for t, x in join(cat, w1, t1, w2[:-1], t2[:-1], g).items():
                tt = t + (e,)
                r[tt] = r.get(tt, 0) + coef * x
        r = {t: x for t, x in r.items() if x}
    C[key] = r
    return r


def cap_tree(cat, word, tree, p):
    """Apply cap_X to leaves p, p+1 (labels X, X*) of one tree.

    Returns (new tree, coefficient) or None when the term vanishes.
    """
    X = word[p]
    a_p = tree[p - 1] if p > 0 else cat.unit
    a_p1 = tree[p]
    a_p2 = tree[p + 1]
    if a_p2 != a_p:
        return None
    coef = cat.F6(a_p, X, cat.dual[X], a_p, a_p1, cat.unit)
    if not coef:
        return None
    return tree[:p] + tree[p + 2:], coef * bending(cat).v[X]


# ---------------------------------------------------------------------------

class HomVector:
    """Vector in <labels> stored as {tree: scalar}."""

    __slots__ = ("cat", "labels", "data")

    def __init__(self, cat, labels, data=None):
        self.cat = cat
        self.labels = tuple(labels)
        self.data = {t: x for t, x in (data or {}).items() if x}

    @classmethod
    def basis_vector(cls, cat, labels, tree):
        return cls(cat, labels, {tree: cat.field.one})

    def copy(self):
        return HomVector(self.cat, self.labels, dict(self.data))

    def __add__(self, other):
        if other.labels != self.labels:
            raise ValueError("label mismatch in vector sum")
        d = dict(self.data)
        for t, x in other.data.items():
            d[t] = d.get(t, 0) + x
        return HomVector(self.cat, self.labels, d)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, s):
        return HomVector(self.cat, self.labels, {t: x * s for t, x in self.data.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def __eq__(self, other):
        return isinstance(other, HomVector) and self.labels == other.labels and \
            (self - other).is_zero()

    def is_zero(self):
        return not any(self.data.values())

    def coords(self):
        """Coordinates in ``basis(labels)`` order."""
        return [self.data.get(t, self.cat.field.zero) for t in trees(self.cat, self.labels)]

    @classmethod
    def from_coords(cls, cat, labels, coords):
        return cls(cat, labels, dict(zip(trees(cat, labels), coords)))

    def __repr__(self):
        lab = ",".join(self.cat.labels[x] for x in self.labels)
        terms = ", ".join(f"{t}: {x!r}" for t, x in sorted(self.data.items()))
        return f"<{lab}>{{{terms}}}"

    def to_json(self):
        from .scalars import format_scalar
        return {
            "labels": [self.cat.labels[x] for x in self.labels],
            "terms": [[[self.cat.labels[a] for a in t], format_scalar(x, self.cat.field)]
                      for t, x in sorted(self.data.items())],
        }

    @classmethod
    def from_json(cls, cat, obj):
        from .scalars import parse_scalar
        labels = tuple(cat.lookup(x) for x in obj["labels"])
        valid = set(trees(cat, labels))
        data = {}
        for tree, val in obj.get("terms", []):
            t = tuple(cat.lookup(a) for a in tree)
            if t not in valid:
                raise ValueError(f"tree {tree} is not admissible for labels {obj['labels']}")
            data[t] = data.get(t, 0) + parse_scalar(str(val), cat.field)
        return cls(cat, labels, data)


def concat(phi, psi):
    """phi (x) psi for charge-one vectors: trees simply concatenate."""
    d = {}
    for t1, x in phi.data.items():
        for t2, y in psi.data.items():
            d[t1 + t2] = x * y
    return HomVector(phi.cat, phi.labels + psi.labels, d)


def cap_vector(vec, p):
    """Contract leaves p, p+1 (labels X, X*) with cap_X."""
    cat = vec.cat
    w = vec.labels
    if cat.dual[w[p]] != w[p + 1]:
        raise ValueError(f"cannot cap labels {cat.labels[w[p]]}, {cat.labels[w[p + 1]]}")
    out = {}
    for t, x in vec.data.items():
        r = cap_tree(cat, w, t, p)
        if r is None:
            continue
        nt, c = r
        out[nt] = out.get(nt, 0) + c * x
    return HomVector(cat, w[:p] + w[p + 2:], out)


def rotation_matrix(cat, word):
    """Sparse z on <word>: {source tree: {target tree: coeff}}."""
    word = tuple(word)
    C = _cache(cat, "rot")
    if word in C:
        return C[word]
    n = len(word)
    out = {}
    if n <= 1:
        out = {t: {t: cat.field.one} for t in trees(cat, word)}
        C[word] = out
        return out
    X = word[-1]
    Xs = cat.dual[X]
    u = bending(cat).u[X]
    big = (X,) + word + (Xs,)
    for t in trees(cat, word):
        acc = {}
        for T, c in join(cat, (X,), (X,), word, t, X).items():
            T2 = T + (cat.unit,)
            r = cap_tree(cat, big, T2, n)
            if r is None:
                continue
            nt, cc = r
            acc[nt] = acc.get(nt, 0) + u * c * cc
        out[t] = {k: v for k, v in acc.items() if v}
    C[word] = out
    return out


def rotation_power(cat, word, k):
    """Sparse z^k on <word>, cached: {source tree: {target tree: coeff}}."""
    word = tuple(word)
    C = _cache(cat, "rotpow")
    key = (word, k)
    if key in C:
        return C[key]
    if k == 1:
        C[key] = rotation_matrix(cat, word)
        return C[key]
    prev = rotation_power(cat, word, k - 1)
    w = word[-(k - 1):] + word[:-(k - 1)]
    step = rotation_matrix(cat, w)
    out = {}
    for t, row in prev.items():
        acc = {}
        for s, c in row.items():
            for r, c2 in step[s].items():
                acc[r] = acc.get(r, 0) + c * c2
        out[t] = {r: x for r, x in acc.items() if x}
    C[key] = out
    return out


def rotate(vec, times=1):
    """z: <V1..Vn> -> <Vn, V1..V(n-1)>, applied ``times`` times (mod n)."""
    n = len(vec.labels)
    if n == 0:
        return vec
    times %= n
    if not times:
        return vec
    M = rotation_power(vec.cat, vec.labels, times)
    out = {}
    for t, x in vec.data.items():
        for s, c in M[t].items():
            out[s] = out.get(s, 0) + c * x
    return HomVector(vec.cat, vec.labels[-times:] + vec.labels[:-times], out)


def compose(phi, psi, X=None):
    """phi o_X psi = cap_X applied to phi (x) psi."""
    if X is not None and (phi.labels[-1] != X or psi.labels[0] != phi.cat.dual[X]):
        raise ValueError("label mismatch in composition")
    if phi.cat.dual[phi.labels[-1]] != psi.labels[0]:
        raise ValueError("label mismatch in composition")
    return cap_vector(concat(phi, psi), len(phi.labels) - 1)


def pairing(phi, psi):
    """(phi, psi) for phi in <V1..Vn>, psi in <Vn*..V1*>."""
    cat = phi.cat
    if psi.labels != dual_word(cat, phi.labels):
        raise ValueError("pairing needs dual-reversed label sequences")
    v = concat(phi, psi)
    n = len(phi.labels)
    for k in range(n):
        v = cap_vector(v, n - 1 - k)
    return v.data.get((), cat.field.zero)


def gram_matrix(cat, word):
    word = tuple(word)
    dw = dual_word(cat, word)
    B1, B2 = trees(cat, word), trees(cat, dw)
    return [[pairing(HomVector.basis_vector(cat, word, s), HomVector.basis_vector(cat, dw, t))
             for t in B2] for s in B1]


def dual_basis(cat, word):
    """(e_alpha, e^alpha) with pairing(e_alpha, e^beta) = delta."""
    word = tuple(word)
    C = _cache(cat, "dual")
    if word in C:
        return C[word]
    dw = dual_word(cat, word)
    B1, B2 = trees(cat, word), trees(cat, dw)
    if len(B1) != len(B2):
        raise ValueError("dual spaces have different dimensions; invalid category data")
    if not B1:
        C[word] = ([], [])
        return C[word]
    G = gram_matrix(cat, word)
    try:
        Gi = mat_inverse(G)
    except ZeroDivisionError:
        raise ValueError("degenerate pairing; invalid category data") from None
    es = [HomVector.basis_vector(cat, word, t) for t in B1]
    duals = [HomVector(cat, dw, {B2[g]: Gi[g][b] for g in range(len(B2))}) for b in range(len(B1))]
    C[word] = (es, duals)
    return C[word]


def identity_vector(cat, x):
    """The vector in <x*, x> acting as the identity under composition."""
    xs = cat.dual[x]
    # cup_{x*} = u_{x*} * split(x* x -> 1); composing with it must return psi
    return HomVector(cat, (xs, x), {(xs, cat.unit): bending(cat).u[xs]})


def all_words(cat, n):
    return itertools.product(range(cat.rank), repeat=n)
