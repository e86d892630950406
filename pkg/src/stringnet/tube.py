"""Tube algebra and Drinfeld center at the skeletal level.

A tube from i to j with wrapping color k is a vector psi in <i*, k, j, k*>.
Cutting the annulus open along a radial arc turns it into a morphism

    T_psi : i (x) k -> k (x) j,

and stacking two annuli multiplies tubes: the two wrapping strands k1, k2
become parallel and are fused to a single k'' by the resolution of the
identity on k1 (x) k2.  The product a * b means "b first, then a".

Simple modules of the tube algebra are the simple objects of the center.
For each block we take a primitive idempotent p = z_Y 1_{i0}, identify the
module Tube p with Hom(Y, -) and solve a linear system for the inverse
half-braiding.  This is a direct linear solve, so any convention mismatch
shows up as an inconsistent system instead of a wrong answer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from functools import reduce


from .category import total_dim_squared
from .graph import EmbeddedGraph, evaluate, resolve_cable
from .homspaces import HomVector, rotate, trees
from .morphisms import Mor, Obj, inclusion, projection
from .scalars import mat_inverse, mat_rank, nullspace, solve, split_idempotents

__all__ = [
    "TubeAlgebra", "CenterObject", "HalfBraidedObject", "build_tube_algebra",
    "simple_center_objects", "induction", "p_y_projector", "verify_adjunction_triangle",
    "punctured_sphere_dim", "center_report", "hom_z_dim", "Center", "compute_center",
    "stacked_product", "graph_engine_agrees",
]


def _word(cat, *xs):
    return Obj.word(cat, xs)


def _id(cat, *xs):
    return Mor.identity(Obj.word(cat, xs))


def _tensor(*ms):
    return reduce(lambda a, b: a.tensor(b), ms)


def _compose(*ms):
    """_compose(f, g, h) = f o g o h."""
    return reduce(lambda a, b: a.compose(b), ms)


def _fuse(cat, k1, k2, c):
    """Projection k1 (x) k2 -> c (a 1x1 block)."""
    return Mor(_word(cat, k1, k2), _word(cat, c), {c: [[cat.field.one]]})


def _split(cat, k1, k2, c):
    """Inclusion c -> k1 (x) k2, with fuse o split = id_c."""
    return Mor(_word(cat, c), _word(cat, k1, k2), {c: [[cat.field.one]]})


def _flatten(m):
    """All block entries of a morphism in a fixed order."""
    out = []
    for c in range(m.cat.rank):
        rows = m.dst.index(c)[0]
        cols = m.src.index(c)[0]
        B = m.blocks.get(c)
        for r in range(len(rows)):
            for q in range(len(cols)):
                out.append(B[r][q] if B is not None else m.cat.field.zero)
    return out


def _unit_mors(src, dst):
    """Basis of Hom(src, dst): one morphism per block entry."""
    cat = src.cat
    out = []
    for c in range(cat.rank):
        rows, cols = dst.index(c)[0], src.index(c)[0]
        for r in range(len(rows)):
            for q in range(len(cols)):
                B = [[cat.field.zero] * len(cols) for _ in rows]
                B[r][q] = cat.field.one
                out.append(Mor(src, dst, {c: B}))
    return out


def _from_flat(src, dst, vals):
    cat = src.cat
    blocks, pos = {}, 0
    for c in range(cat.rank):
        rows, cols = dst.index(c)[0], src.index(c)[0]
        if rows and cols:
            blocks[c] = [list(vals[pos + r * len(cols):pos + (r + 1) * len(cols)]) for r in range(len(rows))]
        pos += len(rows) * len(cols)
    return Mor(src, dst, blocks)


def _invert(m):
    blocks = {c: mat_inverse(B) for c, B in m.blocks.items()}
    for c in range(m.cat.rank):
        if bool(m.src.index(c)[0]) != (c in blocks):
            raise ZeroDivisionError("morphism is not invertible")
    return Mor(m.dst, m.src, blocks)


# ---------------------------------------------------------------------------
# tube algebra

class TubeAlgebra:
    """Tube algebra with basis (i, k, j, tree) and exact structure constants.

    ``struct[a][b]`` is {c: coefficient} for basis[a] * basis[b].
    """

    def __init__(self, cat):
        cat.require_multiplicity_free()
        self.cat = cat
        d = cat.dual
        R = range(cat.rank)
        self.basis = [(i, k, j, t) for i in R for k in R for j in R
                      for t in trees(cat, (d[i], k, j, d[k]))]
        self.index = {b: n for n, b in enumerate(self.basis)}
        self._T = {}
        self.struct = [[self._product(a, b) for b in range(self.dim)] for a in range(self.dim)]
        self.unit = [cat.field.zero] * self.dim
        for i in R:
            for n, x in self.identity_tube(i).items():
                self.unit[n] = self.unit[n] + x

    @property
    def dim(self):
        return len(self.basis)

    def vector(self, n):
        i, k, j, t = self.basis[n]
        d = self.cat.dual
        return HomVector.basis_vector(self.cat, (d[i], k, j, d[k]), t)

    def T(self, n):
        """The cut-open tube i (x) k -> k (x) j."""
        if n in self._T:
            return self._T[n]
        cat = self.cat
        i, k, j, _ = self.basis[n]
        d = cat.dual
        w = rotate(self.vector(n), 3)                    # <k, j, k*, i*>
        step1 = Mor.from_vector(w).tensor(_id(cat, i, k)).reshape(src=_word(cat, i, k))
        step2 = _id(cat, k, j).tensor(Mor.cap_word(cat, (d[k], d[i])))
        out = step2.compose(step1).reshape(dst=_word(cat, k, j))
        self._T[n] = out
        return out

    def coords_of(self, i, k, j, m):
        """Coordinates {basis index: scalar} of a morphism m: i (x) k -> k (x) j."""
        cat = self.cat
        d = cat.dual
        cup = Mor.cup_word(cat, (i, k))
        v = m.tensor(_id(cat, d[k], d[i])).reshape(src=cup.dst).compose(cup)
        v = v.reshape(dst=_word(cat, k, j, d[k], d[i])).to_vector()
        psi = rotate(v, 1)
        return {self.index[(i, k, j, t)]: x for t, x in psi.data.items() if x}

    def identity_tube(self, i):
        cat = self.cat
        return self.coords_of(i, cat.unit, i, _id(cat, i))

    def _product(self, a, b):
        """basis[a] * basis[b] (b first)."""
        cat = self.cat
        j2, k2, l, _ = self.basis[a]
        i, k1, j, _ = self.basis[b]
        if j != j2:
            return {}
        Tb, Ta = self.T(b), self.T(a)
        out = {}
        for c in cat.fuse(k1, k2):
            m = _compose(
                _fuse(cat, k1, k2, c).tensor(_id(cat, l)),
                _id(cat, k1).tensor(Ta),
                Tb.tensor(_id(cat, k2)),
                _id(cat, i).tensor(_split(cat, k1, k2, c)),
            )
            for n, x in self.coords_of(i, c, l, m).items():
                out[n] = out.get(n, 0) + x
        return {n: x for n, x in out.items() if x}

    def mul(self, x, y):
        """Product of coordinate vectors."""
        F = self.cat.field
        out = [F.zero] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.struct[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                w = xa * yb
                for c, s in row[b].items():
                    out[c] = out[c] + w * s
        return out

    def e(self, n):
        F = self.cat.field
        return [F.one if m == n else F.zero for m in range(self.dim)]

    def ends(self, n):
        """(source, target) simple of a basis tube."""
        i, _, j, _ = self.basis[n]
        return i, j

    def is_associative(self, triples=None):
        idx = range(self.dim)
        for a in idx:
            for b in idx:
                ab = self.mul(self.e(a), self.e(b))
                for c in idx:
                    if triples is not None and (a, b, c) not in triples:
                        continue
                    if self.mul(ab, self.e(c)) != self.mul(self.e(a), self.mul(self.e(b), self.e(c))):
                        return False
        return True


def stacked_product(T, a, b):
    """basis[a] * basis[b] through the graph engine.

    The two tubes are stacked in the annulus (b inside), the two strands
    crossing the radial cut are fused into one strand of label c, and the
    resulting rectangle is evaluated as a disk graph.  Independent of the
    morphism-engine product used for ``T.struct``.
    """
    cat = T.cat
    i, _, j, _ = T.basis[b]
    j2, _, l, _ = T.basis[a]
    if j != j2:
        return {}
    g = EmbeddedGraph(cat)
    A, B = g.add_vertex(T.vector(b)), g.add_vertex(T.vector(a))
    g.connect(A[2], B[0])
    g.connect(A[1], A[3])
    g.connect(B[1], B[3])
    g.boundary = [A[0], B[2]]
    out = {}
    for c, gs in resolve_cable(g, [A[1], B[1]], fused=(1, 2)).items():
        for t, s in evaluate(gs).data.items():
            if s:
                n = T.index[(i, c, l, t)]
                out[n] = out.get(n, 0) + s * cat.qdim[c]
    return {n: x for n, x in out.items() if x}


def graph_engine_agrees(T):
    """True when every structure constant matches the stacked-annulus evaluation."""
    return all(stacked_product(T, a, b) == T.struct[a][b] for a in range(T.dim) for b in range(T.dim))


def build_tube_algebra(cat):
    return TubeAlgebra(cat)


# ---------------------------------------------------------------------------
# half-braided objects

class HalfBraidedObject:
    """An object Y of the category with a half-braiding phi(w): Y w -> w Y on simples."""

    def __init__(self, cat, obj, phi, label=None):
        self.cat = cat
        self.obj = obj
        self.phi = dict(phi)
        self.label = label
        self._chi = {}

    def chi(self, w):
        if w not in self._chi:
            self._chi[w] = _invert(self.phi[w])
        return self._chi[w]

    def phi_word(self, word):
        """Half-braiding over a tensor word of simples."""
        cat, Y = self.cat, self.obj
        word = tuple(word)
        if not word:
            return Mor.identity(Y)
        if len(word) == 1:
            return self.phi[word[0]]
        head, last = word[:-1], word[-1]
        first = self.phi_word(head).tensor(_id(cat, last))
        second = Mor.identity(Obj.word(cat, head)).tensor(self.phi[last])
        return second.compose(first.reshape(dst=second.src))

    def phi_on(self, X):
        """Half-braiding over a direct sum X of words."""
        Y = self.obj
        out = None
        for p, w in enumerate(X.words):
            inc, pr = inclusion(X, p), projection(X, p)
            m = _compose(inc.tensor(Mor.identity(Y)), self.phi_word(w), Mor.identity(Y).tensor(pr))
            out = m if out is None else out + m
        return out

    def tensor(self, other):
        """Composite half-braiding on Y (x) Y'."""
        cat = self.cat
        Y, Z = self.obj, other.obj
        phi = {}
        for w in range(cat.rank):
            W = Obj.simple(cat, w)
            a = Mor.identity(Y).tensor(other.phi[w])
            b = self.phi[w].tensor(Mor.identity(Z))
            phi[w] = b.compose(a)
            phi[w] = Mor(Y * Z * W, W * Y * Z, phi[w].blocks)
        return HalfBraidedObject(cat, Y * Z, phi)

    def dual(self):
        """Y* with the half-braiding transported through ev_Y and coev_Y."""
        cat, Y = self.cat, self.obj
        Yd = Y.dual()
        phi = {}
        for w in range(cat.rank):
            W = Obj.simple(cat, w)
            m = _compose(
                _ev_obj(Y).tensor(Mor.identity(W * Yd)),
                _tensor(Mor.identity(Yd), self.chi(w), Mor.identity(Yd)),
                Mor.identity(Yd * W).tensor(_coev_obj(Y)),
            )
            phi[w] = Mor(Yd * W, W * Yd, m.blocks)
        return HalfBraidedObject(cat, Yd, phi)

    # checks --------------------------------------------------------------
    def unit_ok(self):
        m = self.phi[self.cat.unit]
        return Mor(self.obj, self.obj, m.blocks) == Mor.identity(self.obj)

    def invertible(self):
        try:
            for w in range(self.cat.rank):
                self.chi(w)
        except ZeroDivisionError:
            return False
        return True

    def hexagon_ok(self, pairs=None):
        """phi over w1 (x) w2, decomposed through simples, equals the composite."""
        cat = self.cat
        Y = self.obj
        R = range(cat.rank)
        for w1, w2 in pairs or [(a, b) for a in R for b in R]:
            lhs = None
            for c in cat.fuse(w1, w2):
                m = _compose(_split(cat, w1, w2, c).tensor(Mor.identity(Y)), self.phi[c],
                             Mor.identity(Y).tensor(_fuse(cat, w1, w2, c)))
                lhs = m if lhs is None else lhs + m
            rhs = self.phi_word((w1, w2))
            lhs = Mor(rhs.src, rhs.dst, lhs.blocks)
            if lhs != rhs:
                return False
        return True

    def natural_in(self, f, other):
        """Whether f: self -> other intertwines the half-braidings."""
        cat = self.cat
        for w in range(cat.rank):
            a = _id(cat, w).tensor(f).compose(self.phi[w])
            b = other.phi[w].compose(f.tensor(_id(cat, w)))
            if a != b:
                return False
        return True

    def hom_z_basis(self, other):
        """Basis of Hom_Z(self, other) as morphisms."""
        cat = self.cat
        basis = _unit_mors(self.obj, other.obj)
        if not basis:
            return []
        cols = []
        for E in basis:
            col = []
            for w in range(cat.rank):
                a = _id(cat, w).tensor(E).compose(self.phi[w])
                b = other.phi[w].compose(E.tensor(_id(cat, w)))
                col += _flatten(a - b)
            cols.append(col)
        rows = [list(r) for r in zip(*cols)]
        ker = nullspace(rows, len(basis), cat.field)
        out = []
        for v in ker:
            m = None
            for x, E in zip(v, basis):
                if x:
                    m = E * x if m is None else m + E * x
            out.append(m)
        return out

    def twist(self):
        """theta with (id (x) ev~)(phi_Y(Y) (x) id)(id (x) coev) = theta id_Y, for simple Y."""
        Y = self.obj
        Yd = Y.dual()
        ph = self.phi_on(Y)                              # Y Y -> Y Y
        coev = _coev_obj(Y)                              # 1 -> Y Y*
        ev = _ev_tilde_obj(Y)                            # Y Y* -> 1
        m = _compose(Mor.identity(Y).tensor(ev), ph.tensor(Mor.identity(Yd)),
                     Mor.identity(Y).tensor(coev))
        m = Mor(Y, Y, m.blocks)
        d = self.qdim()
        # theta * id_Y; read it off the trace
        return m.trace() / d

    def qdim(self):
        return Mor.identity(self.obj).trace()


def _coev_obj(X):
    """1 -> X (x) X* for a direct sum of words."""
    cat = X.cat
    Xd = X.dual()
    out = None
    for p, w in enumerate(X.words):
        cw = Mor.cup_word(cat, w)
        m = _compose(inclusion(X, p).tensor(inclusion(Xd, p)).reshape(src=cw.dst), cw)
        out = m if out is None else out + m
    return out


def _ev_tilde_obj(X):
    """X (x) X* -> 1 for a direct sum of words (the right evaluation)."""
    cat = X.cat
    Xd = X.dual()
    out = None
    for p, w in enumerate(X.words):
        cw = Mor.cap_word(cat, w)
        m = _compose(cw, projection(X, p).tensor(projection(Xd, p)).reshape(dst=cw.src))
        out = m if out is None else out + m
    return out


def _ev_obj(X):
    """X* (x) X -> 1."""
    cat = X.cat
    Xd = X.dual()
    out = None
    for p, w in enumerate(Xd.words):
        cw = Mor.cap_word(cat, w)
        m = _compose(cw, projection(Xd, p).tensor(projection(X, p)).reshape(dst=cw.src))
        out = m if out is None else out + m
    return out


@dataclass
class CenterObject:
    """A simple object of the center."""

    label: str
    underlying: dict               # simple label index -> multiplicity
    hb: HalfBraidedObject
    qdim: object
    twist: object
    block: int
    idempotent: list = dc_field(repr=False, default=None)

    @property
    def obj(self):
        return self.hb.obj

    @property
    def phi(self):
        return self.hb.phi

    def underlying_names(self, cat):
        return {cat.labels[i]: n for i, n in sorted(self.underlying.items()) if n}


# ---------------------------------------------------------------------------
# center from the tube algebra

def _as_int(K, x):
    if not K.is_rational(x):
        raise ValueError(f"expected an integer, got {x!r}")
    q = K.coeffs(x)[0]
    if q.denominator != 1:
        raise ValueError(f"expected an integer, got {q}")
    return int(q.numerator)


def _independent(vectors):
    """Indices of a maximal independent subset, greedily in order."""
    keep = []
    for n, v in enumerate(vectors):
        if mat_rank([vectors[m] for m in keep] + [v]) > len(keep):
            keep.append(n)
    return keep


def _act(T, n, Y, s, chi_k):
    """Tube basis[n] acting on the projection Y -> i onto summand s."""
    cat = T.cat
    i, k, j, _ = T.basis[n]
    ks = cat.dual[k]
    m = projection(Y, s)
    return _compose(
        Mor.cap(cat, ks).tensor(_id(cat, j)),
        _id(cat, ks).tensor(T.T(n)),
        _id(cat, ks).tensor(m).tensor(_id(cat, k)),
        _id(cat, ks).tensor(chi_k),
        Mor.cup(cat, ks).tensor(Mor.identity(Y)),
    )


def _half_braiding(T, z, mult):
    """Recover (Y, phi_Y) from the block with central idempotent z."""
    cat = T.cat
    R = range(cat.rank)
    i0 = next((i for i in R if mult[i] == 1), None)
    if i0 is None:
        raise NotImplementedError("every simple occurs more than once in F(Y); "
                                  "splitting a corner of size > 1 is not implemented")
    p = T.mul(z, T.e_sum(T.identity_tube(i0)))
    Y = Obj(cat, [(j,) for j in R for _ in range(mult[j])])
    summand = {}
    for s, (j,) in enumerate(Y.words):
        summand.setdefault(j, []).append(s)
    # basis of the module Tube p, graded by target
    mod = {}
    for j in R:
        cand = [T.mul(T.e(n), p) for n in range(T.dim) if T.ends(n) == (i0, j)]
        keep = _independent(cand)
        if len(keep) != mult[j]:
            raise AssertionError("module dimension disagrees with the block trace")
        mod[j] = [cand[q] for q in keep]
    chi = {}
    for k in R:
        src, dst = Obj.simple(cat, k) * Y, Y * Obj.simple(cat, k)
        unknowns = _unit_mors(src, dst)
        A, b = [], []
        for n in range(T.dim):
            i, kk, j, _ = T.basis[n]
            if kk != k or not mult[i] or not mult[j]:
                continue
            cols = [[row[q] for row in mod[j]] for q in range(T.dim)]   # dim x n_j
            for r, s in enumerate(summand[i]):
                img = T.mul(T.e(n), mod[i][r])
                coef = solve(cols, img)
                if coef is None:
                    raise AssertionError("module not closed under the tube action")
                target = None
                for c, s2 in zip(coef, summand[j]):
                    term = projection(Y, s2) * c
                    target = term if target is None else target + term
                eqs = [_flatten(_act(T, n, Y, s, E)) for E in unknowns]
                tflat = _flatten(target)
                for row_i in range(len(tflat)):
                    A.append([e[row_i] for e in eqs])
                    b.append(tflat[row_i])
        if not unknowns:
            chi[k] = Mor(src, dst, {})
            continue
        sol = solve(A, b) if A else None
        if sol is None or mat_rank(A) != len(unknowns):
            raise ArithmeticError(f"half-braiding over {cat.labels[k]} is not determined by the module")
        chi[k] = _from_flat(src, dst, sol)
    phi = {k: _invert(chi[k]) for k in R}
    hb = HalfBraidedObject(cat, Y, phi)
    hb._chi = chi
    return hb


def _tube_e_sum(self, coords):
    v = [self.cat.field.zero] * self.dim
    for n, x in coords.items():
        v[n] = v[n] + x
    return v


TubeAlgebra.e_sum = _tube_e_sum


@dataclass
class Center:
    """Simple objects of the center with the data they were built from."""

    base: object
    cat: object
    tube: TubeAlgebra
    splitting: object
    simples: list

    def by_label(self, label):
        for Y in self.simples:
            if Y.label == label:
                return Y
        raise KeyError(f"no center simple named {label!r}; known: {[Y.label for Y in self.simples]}")

    def unit_object(self):
        return self.simples[0]

    def dual_of(self, Y):
        """The simple isomorphic to Y*, found through Hom_Z(Y*, -)."""
        Yd = Y.hb.dual()
        hits = [Z for Z in self.simples if Z.underlying == {self.cat.dual[i]: n for i, n in Y.underlying.items()}
                and Yd.hom_z_basis(Z.hb)]
        if len(hits) != 1:
            raise ArithmeticError(f"dual of {Y.label} is not a unique simple")
        return hits[0]

    def dim_squared(self):
        out = self.cat.field.zero
        for Y in self.simples:
            out = out + Y.qdim * Y.qdim
        return out


def _cyclic_order(cat):
    n = cat.rank
    try:
        vals = [int(x) for x in cat.labels]
    except ValueError:
        return None
    if sorted(vals) != list(range(n)) or cat.labels[cat.unit] != "0":
        return None
    lab = {v: i for i, v in enumerate(vals)}
    for a in range(n):
        for b in range(n):
            if cat.fuse(lab[a], lab[b]) != [lab[(a + b) % n]]:
                return None
    return n, lab


def _name_objects(cat, objs, K):
    """Attach labels; cyclic groups get (flux, charge) names."""
    cyc = _cyclic_order(cat)
    if cyc is not None:
        n, lab = cyc
        gen = lab[1 % n] if n > 1 else lab[0]
        for Y in objs:
            (g,) = [x for x, m in Y.underlying.items() if m]
            B = Y.hb.phi[gen].blocks
            lam = complex(K.embed(next(iter(B.values()))[0][0]))
            q = round(cmath.phase(lam) * n / (2 * math.pi)) % n
            flux = int(cat.labels[g])
            if n == 2:
                Y.label = {(0, 0): "1", (0, 1): "e", (1, 0): "m", (1, 1): "f"}[(flux, q)]
            else:
                Y.label = f"({flux},{q})"
        return
    groups = {}
    for Y in objs:
        base = "+".join((f"{m}*" if m > 1 else "") + cat.labels[x]
                        for x, m in sorted(Y.underlying.items()) if m)
        groups.setdefault(base, []).append(Y)
    for base, ys in groups.items():
        for r, Y in enumerate(ys, 1):
            Y.label = base if len(ys) == 1 else f"{base}#{r}"
    objs[0].label = cat.labels[cat.unit]


def compute_center(cat, seed=0):
    """Split the tube algebra over the center field and recover every simple."""
    K = cat.center_field()
    catK = cat.with_field(K)
    T = TubeAlgebra(catK)
    sp = split_idempotents(T.struct, K, T.unit, seed=seed)
    R = range(catK.rank)
    objs = []
    for b, z in enumerate(sp.idempotents):
        N = math.isqrt(sp.block_dims[b])
        if N * N != sp.block_dims[b]:
            raise ArithmeticError("tube algebra block is not a full matrix algebra")
        mult = {}
        for i in R:
            e = T.mul(z, T.e_sum(T.identity_tube(i)))
            tr = K.zero
            for a in range(T.dim):
                tr = tr + T.mul(e, T.e(a))[a]
            mult[i] = _as_int(K, tr / N)
        if sum(mult.values()) != N:
            raise ArithmeticError("block multiplicities do not add up")
        hb = _half_braiding(T, z, mult)
        d = K.zero
        for i in R:
            d = d + mult[i] * catK.qdim[i]
        objs.append(CenterObject("", mult, hb, d, hb.twist(), b, z))

    def is_unit(Y):
        if Y.underlying != {i: (1 if i == catK.unit else 0) for i in R}:
            return False
        return all(x == K.one for w in R for B in Y.hb.phi[w].blocks.values()
                   for row in B for x in row)

    def key(Y):
        d = float(K.embed(Y.qdim).real)
        th = cmath.phase(complex(K.embed(Y.twist))) % (2 * math.pi)
        mult = tuple(-m for _, m in sorted(Y.underlying.items()))
        return (not is_unit(Y), round(d, 9), mult, round(th, 9))

    objs.sort(key=key)
    if not is_unit(objs[0]):
        raise ArithmeticError("no center simple looks like the unit")
    _name_objects(catK, objs, K)
    for Y in objs:
        Y.hb.label = Y.label
    return Center(cat, catK, T, sp, objs)


def simple_center_objects(T_or_cat, seed=0):
    cat = T_or_cat.cat if isinstance(T_or_cat, TubeAlgebra) else T_or_cat
    return compute_center(cat, seed).simples


# ---------------------------------------------------------------------------
# induction and the projectors P_Y

def _embed_sub(m, src, s_off, dst, d_off):
    """Place m (between sub-sums of src and dst) at the given summand offsets."""
    cat = m.cat
    blocks = {}
    for c, M in m.blocks.items():
        rl, rpos = dst.index(c)
        cl, cpos = src.index(c)
        out = [[cat.field.zero] * len(cl) for _ in rl]
        rows = m.dst.index(c)[0]
        cols = m.src.index(c)[0]
        for r, (sq, t) in enumerate(rows):
            for q, (sp, u) in enumerate(cols):
                if M[r][q]:
                    out[rpos[(sq + d_off, t)]][cpos[(sp + s_off, u)]] = M[r][q]
        blocks[c] = out
    return Mor(src, dst, blocks)


def _induced_obj(cat, X):
    d = cat.dual
    return Obj(cat, [(i,) + x + (d[i],) for i in range(cat.rank) for x in X.words])


def induced(cat, X):
    """I(X) = sum_i i X i* with its half-braiding."""
    d = cat.dual
    sq = cat.sqrt_qdim
    I = _induced_obj(cat, X)
    nX = len(X.words)
    phi = {}
    for w in range(cat.rank):
        W = Obj.simple(cat, w)
        src, dst = I * W, W * I
        out = Mor.zero(src, dst)
        for i in range(cat.rank):
            for j in range(cat.rank):
                if not cat.N(w, j, i):
                    continue
                L = _split(cat, w, j, i)                                   # i -> w j
                M = _fuse(cat, w, j, i) * (1 / cat.qdim[i])               # w j -> i
                Rm = _compose(
                    Mor.cap(cat, d[i]).tensor(_id(cat, d[j])),
                    _id(cat, d[i]).tensor(M).tensor(_id(cat, d[j])),
                    _id(cat, d[i], w).tensor(Mor.cup(cat, j)),
                )                                                         # i* w -> j*
                piece = _tensor(L, Mor.identity(X), Rm) * (sq[i] * sq[j])
                out = out + _embed_sub(piece, src, i * nX, dst, j * nX)
        phi[w] = out
    return HalfBraidedObject(cat, I, phi, label=None)


@dataclass
class AdjunctionData:
    V: int
    hb: HalfBraidedObject
    multiplicities: dict          # center label -> dim Hom_Z(I(V), Y)
    expected: dict                # center label -> n_Y(V)

    @property
    def ok(self):
        return self.multiplicities == self.expected and self.hb.unit_ok() and self.hb.hexagon_ok()


def induction(center, V):
    cat = center.cat
    hb = induced(cat, Obj.simple(cat, V))
    mult = {Y.label: len(hb.hom_z_basis(Y.hb)) for Y in center.simples}
    exp = {Y.label: Y.underlying.get(V, 0) for Y in center.simples}
    return AdjunctionData(V, hb, mult, exp)


def p_y_projector(center, Y):
    """P_Y on I(F(Y)), built from the half-braiding of Y."""
    cat = center.cat
    d = cat.dual
    sq = cat.sqrt_qdim
    D2 = total_dim_squared(cat)
    Yo = Y.obj
    I = _induced_obj(cat, Yo)
    n = len(Yo.words)
    P = Mor.zero(I, I)
    for j in range(cat.rank):
        for i in range(cat.rank):
            m = _compose(
                Y.hb.phi[i].tensor(_id(cat, d[i])),
                Mor.identity(Yo).tensor(Mor.cup(cat, i)),
                Mor.identity(Yo).tensor(Mor.cap(cat, j)),
                Y.hb.chi(j).tensor(_id(cat, d[j])),
            ) * (sq[i] * sq[j] / D2)
            P = P + _embed_sub(m, I, j * n, I, i * n)
    return P


def check_p_y(center, Y):
    """(idempotent, commutes with I(F(Y)), block ranks equal n_Y, trace equals d_Y)."""
    cat = center.cat
    P = p_y_projector(center, Y)
    idem = P.compose(P) == P
    hb = induced(cat, Y.obj)
    central = hb.natural_in(P, hb)
    ranks = {c: mat_rank(B) for c, B in P.blocks.items()}
    rank_ok = all(ranks.get(c, 0) == Y.underlying.get(c, 0) for c in range(cat.rank))
    return idem, central, rank_ok, P.trace() == Y.qdim


def hom_z_dim(X, Y):
    return len(X.hom_z_basis(Y))


# ---------------------------------------------------------------------------
# the triangle f2 = f3 o f1

def _f1(center, Z, ph, ps):
    """D * f1(ph (x) ps) as {i: morphism V -> i W i*}."""
    cat = center.cat
    d, sq = cat.dual, cat.sqrt_qdim
    out = {}
    for i in range(cat.rank):
        m = _compose(
            _id(cat, i).tensor(ps).tensor(_id(cat, d[i])),
            Z.hb.phi[i].tensor(_id(cat, d[i])),
            Mor.identity(Z.obj).tensor(Mor.cup(cat, i)),
            ph,
        ) * sq[i]
        out[i] = m
    return out


def _f3(center, V, W, g):
    """D * f3 applied to {i: V -> i W i*}, as a morphism I(V) -> I(W)."""
    cat = center.cat
    d, sq = cat.dual, cat.sqrt_qdim
    IV, IW = _induced_obj(cat, Obj.simple(cat, V)), _induced_obj(cat, Obj.simple(cat, W))
    out = Mor.zero(IV, IW)
    for i, gi in g.items():
        for k in range(cat.rank):
            for j in range(cat.rank):
                if not cat.N(k, i, j):
                    continue
                aL = _fuse(cat, k, i, j)
                beta = _split(cat, k, i, j) * (1 / cat.qdim[j])
                aR = beta.dual()
                m = _compose(_tensor(aL, _id(cat, W), aR),
                             _tensor(_id(cat, k), gi, _id(cat, d[k]))) * (sq[i] * sq[j] * sq[k])
                out = out + _embed_sub(m, IV, k, IW, j)
    return out


def _f2(center, V, W, Z, ph, ps):
    """D^2 * f2(ph (x) ps) as a morphism I(V) -> I(W)."""
    cat = center.cat
    d, sq = cat.dual, cat.sqrt_qdim
    IV, IW = _induced_obj(cat, Obj.simple(cat, V)), _induced_obj(cat, Obj.simple(cat, W))
    Zo = Z.obj
    out = Mor.zero(IV, IW)
    for i in range(cat.rank):
        for j in range(cat.rank):
            m = _compose(
                _id(cat, j).tensor(ps).tensor(_id(cat, d[j])),
                Z.hb.phi[j].tensor(_id(cat, d[j])),
                Mor.identity(Zo).tensor(Mor.cup(cat, j)),
                Mor.identity(Zo).tensor(Mor.cap(cat, i)),
                Z.hb.chi(i).tensor(_id(cat, d[i])),
                _tensor(_id(cat, i), ph, _id(cat, d[i])),
            ) * (sq[i] * sq[j])
            out = out + _embed_sub(m, IV, i, IW, j)
    return out


def verify_adjunction_triangle(center, V, W):
    """Check D^2 f2 = (D f3)(D f1) on a basis of sum_Z Hom(V, Z) (x) Hom(Z, W).

    Returns (commutes, dimension of the source, dimension of the middle space).
    """
    cat = center.cat
    ok = True
    n_src = 0
    for Z in center.simples:
        ins = [inclusion(Z.obj, s) for s, w in enumerate(Z.obj.words) if w == (V,)]
        outs = [projection(Z.obj, s) for s, w in enumerate(Z.obj.words) if w == (W,)]
        for ph in ins:
            for ps in outs:
                n_src += 1
                lhs = _f2(center, V, W, Z, ph, ps)
                rhs = _f3(center, V, W, _f1(center, Z, ph, ps))
                ok = ok and lhs == rhs
    d = cat.dual
    n_mid = sum(len(trees(cat, (i, W, d[i]), V)) for i in range(cat.rank))
    return ok and n_src == n_mid, n_src, n_mid


# ---------------------------------------------------------------------------
# punctured spheres

def unit_center_object(cat):
    U = Obj.unit(cat)
    phi = {w: Mor.identity(Obj.simple(cat, w)).reshape(src=U * Obj.simple(cat, w),
                                                      dst=Obj.simple(cat, w) * U)
           for w in range(cat.rank)}
    return HalfBraidedObject(cat, U, phi, label="1")


def punctured_sphere_dim(center, labels, crosscheck=False):
    """dim of the sphere space with marked points colored by center simples.

    Computed as the rank of the marked-point projector on Hom(1, F(Y_1) ... F(Y_n));
    with ``crosscheck`` also returns dim Hom_Z(1, Y_1 ... Y_n).
    """
    if not labels:
        raise ValueError("at least one marked point is required; use tv_dimension for the closed sphere")
    cat = center.cat
    Ys = [center.by_label(x) if isinstance(x, str) else x for x in labels]
    hb = reduce(lambda a, b: a.tensor(b), [Y.hb for Y in Ys])
    Yo = hb.obj
    D2 = total_dim_squared(cat)
    d = cat.dual
    U = Obj.unit(cat)
    vecs = _unit_mors(U, Yo)
    cols = []
    for v in vecs:
        acc = None
        for k in range(cat.rank):
            m = _compose(
                Mor.identity(Yo).tensor(Mor.cap(cat, k)),
                hb.chi(k).tensor(_id(cat, d[k])),
                _tensor(_id(cat, k), v, _id(cat, d[k])),
                Mor.cup(cat, k),
            ) * (cat.qdim[k] / D2)
            m = Mor(U, Yo, m.blocks)
            acc = m if acc is None else acc + m
        cols.append(_flatten(acc))
    r = mat_rank([list(x) for x in zip(*cols)]) if cols else 0
    if crosscheck:
        return r, hom_z_dim(unit_center_object(cat), hb)
    return r


def center_report(center, torus_dim=None):
    cat, K = center.cat, center.cat.field
    from .scalars import format_scalar
    simples = []
    for Y in center.simples:
        simples.append({
            "label": Y.label,
            "underlying": Y.underlying_names(cat),
            "qdim": format_scalar(Y.qdim, K),
            "qdim_squared": format_scalar(Y.qdim * Y.qdim, K),
            "twist": format_scalar(Y.twist, K),
        })
    D2 = total_dim_squared(cat)
    out = {
        "category": cat.name,
        "tube_dim": center.tube.dim,
        "simples": simples,
        "num_simples": len(simples),
        "sum_d2": format_scalar(center.dim_squared(), K),
        "sum_d2_equals_D4": center.dim_squared() == D2 * D2,
    }
    if torus_dim is not None:
        out["torus_dim_crosscheck"] = {"tv_dim_torus": torus_dim, "agrees": torus_dim == len(simples)}
    return out
