"""Morphisms between direct sums of tensor words of simples.

An object is a tuple of words (its direct summands).  A morphism A -> B is
stored per total charge c as a dense matrix whose rows run over pairs
(summand of B, splitting tree c -> word) and whose columns run over pairs
(summand of A, fusion tree word -> c).  Composition is blockwise matrix
multiplication; tensor products re-comb trees with the same ``join`` used
for invariant vectors.
"""

from __future__ import annotations

from .homspaces import HomVector, bending, dual_word, join, trees
from .scalars import mat_inverse, mat_mul

__all__ = ["Obj", "Mor"]


class Obj:
    """Direct sum of words of simple labels."""

    __slots__ = ("cat", "words", "_idx")

    def __init__(self, cat, words):
        self.cat = cat
        self.words = tuple(tuple(w) for w in words)
        self._idx = {}

    @classmethod
    def word(cls, cat, w):
        return cls(cat, [tuple(w)])

    @classmethod
    def simple(cls, cat, x):
        return cls(cat, [(x,)])

    @classmethod
    def unit(cls, cat):
        return cls(cat, [()])

    def index(self, c):
        """List of (summand, tree) for charge c, and its position map."""
        r = self._idx.get(c)
        if r is None:
            lst = [(s, t) for s, w in enumerate(self.words) for t in trees(self.cat, w, c)]
            r = (lst, {k: i for i, k in enumerate(lst)})
            self._idx[c] = r
        return r

    def charges(self):
        return [c for c in range(self.cat.rank) if self.index(c)[0]]

    def __add__(self, other):
        return Obj(self.cat, self.words + other.words)

    def __mul__(self, other):
        """Tensor product; summands ordered with the left factor outermost."""
        return Obj(self.cat, [w1 + w2 for w1 in self.words for w2 in other.words])

    def dual(self):
        return Obj(self.cat, [dual_word(self.cat, w) for w in self.words])

    def __eq__(self, other):
        return isinstance(other, Obj) and self.words == other.words

    def __hash__(self):
        return hash(self.words)

    def __repr__(self):
        return " + ".join("(" + ",".join(self.cat.labels[x] for x in w) + ")" for w in self.words) or "0"


def _recomb(cat, w1, w2, e):
    """Rows: joined trees J = (c, t1, c', t2); matrix to left-comb trees on w1+w2."""
    C = cat.__dict__.setdefault("_hs_cache", {}).setdefault("recomb", {})
    key = (w1, w2, e)
    if key in C:
        return C[key]
    targets = trees(cat, w1 + w2, e)
    tpos = {t: i for i, t in enumerate(targets)}
    Js = []
    rows = []
    for c in range(cat.rank):
        T1 = trees(cat, w1, c)
        if not T1:
            continue
        for cp in range(cat.rank):
            if not cat.N(c, cp, e):
                continue
            T2 = trees(cat, w2, cp)
            for t1 in T1:
                for t2 in T2:
                    row = [cat.field.zero] * len(targets)
                    for t, x in join(cat, w1, t1, w2, t2, e).items():
                        row[tpos[t]] = x
                    Js.append((c, t1, cp, t2))
                    rows.append(row)
    inv = mat_inverse(rows) if rows else []
    C[key] = (Js, {J: i for i, J in enumerate(Js)}, rows, inv)
    return C[key]


class Mor:
    """Morphism ``src -> dst``; ``blocks[c]`` is a list-of-rows matrix."""

    __slots__ = ("src", "dst", "blocks")

    def __init__(self, src, dst, blocks=None):
        self.src = src
        self.dst = dst
        self.blocks = blocks if blocks is not None else {}

    @property
    def cat(self):
        return self.src.cat

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, src, dst):
        return cls(src, dst, {})

    @classmethod
    def identity(cls, A):
        cat = A.cat
        blocks = {}
        for c in A.charges():
            n = len(A.index(c)[0])
            blocks[c] = [[cat.field.one if i == j else cat.field.zero for j in range(n)] for i in range(n)]
        return cls(A, A, blocks)

    @classmethod
    def cup(cls, cat, x):
        """1 -> x (x) x*."""
        xs = cat.dual[x]
        return cls(Obj.unit(cat), Obj.word(cat, (x, xs)), {cat.unit: [[bending(cat).u[x]]]})

    @classmethod
    def cap(cls, cat, x):
        """x (x) x* -> 1."""
        xs = cat.dual[x]
        return cls(Obj.word(cat, (x, xs)), Obj.unit(cat), {cat.unit: [[bending(cat).v[x]]]})

    @classmethod
    def cup_word(cls, cat, w):
        """1 -> W (x) W* by nested cups."""
        w = tuple(w)
        if not w:
            return cls.identity(Obj.unit(cat))
        inner = cls.cup_word(cat, w[1:])
        x = w[0]
        mid = Mor.identity(Obj.simple(cat, x)).tensor(inner).tensor(Mor.identity(Obj.simple(cat, cat.dual[x])))
        return mid.compose(cls.cup(cat, x).reshape(dst=mid.src))

    @classmethod
    def cap_word(cls, cat, w):
        """W (x) W* -> 1 by nested caps."""
        w = tuple(w)
        if not w:
            return cls.identity(Obj.unit(cat))
        inner = cls.cap_word(cat, w[1:])
        x = w[0]
        mid = Mor.identity(Obj.simple(cat, x)).tensor(inner).tensor(Mor.identity(Obj.simple(cat, cat.dual[x])))
        cap = cls.cap(cat, x)
        return Mor(mid.dst, cap.dst, cap.blocks).compose(mid)

    @classmethod
    def from_vector(cls, vec):
        """The morphism 1 -> (labels) whose single column is ``vec``."""
        cat = vec.cat
        dst = Obj.word(cat, vec.labels)
        lst, pos = dst.index(cat.unit)
        col = [cat.field.zero] * len(lst)
        for t, x in vec.data.items():
            col[pos[(0, t)]] = x
        return cls(Obj.unit(cat), dst, {cat.unit: [[x] for x in col]} if lst else {})

    def to_vector(self):
        """Inverse of from_vector for a morphism 1 -> single word."""
        cat = self.cat
        assert len(self.dst.words) == 1 and self.src.words == ((),)
        lst, _ = self.dst.index(cat.unit)
        B = self.blocks.get(cat.unit)
        data = {}
        if B:
            for (s, t), row in zip(lst, B):
                data[t] = row[0]
        return HomVector(cat, self.dst.words[0], data)

    def reshape(self, src=None, dst=None):
        """Same matrices viewed between objects with identical tree sets."""
        return Mor(src or self.src, dst or self.dst, self.blocks)

    # algebra -------------------------------------------------------------
    def compose(self, other):
        """self o other."""
        if other.dst != self.src:
            raise ValueError(f"cannot compose {self.src} <- {other.dst}")
        blocks = {}
        for c, B in self.blocks.items():
            A = other.blocks.get(c)
            if A is None:
                continue
            M = mat_mul(B, A)
            blocks[c] = M
        return Mor(other.src, self.dst, blocks)

    __matmul__ = compose

    def __add__(self, other):
        if other.src != self.src or other.dst != self.dst:
            raise ValueError("adding morphisms between different objects")
        blocks = {c: [list(r) for r in B] for c, B in self.blocks.items()}
        for c, B in other.blocks.items():
            if c not in blocks:
                blocks[c] = [list(r) for r in B]
            else:
                blocks[c] = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(blocks[c], B)]
        return Mor(self.src, self.dst, blocks)

    def __mul__(self, s):
        return Mor(self.src, self.dst, {c: [[x * s for x in r] for r in B] for c, B in self.blocks.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * (-1)

    def is_zero(self):
        return not any(x for B in self.blocks.values() for r in B for x in r)

    def __eq__(self, other):
        return isinstance(other, Mor) and self.src == other.src and self.dst == other.dst \
            and (self - other).is_zero()

    def entry(self, c, row, col):
        B = self.blocks.get(c)
        if B is None:
            return self.cat.field.zero
        return B[row][col]

    def tensor(self, other):
        """self (x) other, summands of the result ordered left-factor-major."""
        cat = self.cat
        src = self.src * other.src
        dst = self.dst * other.dst
        n2s, n2d = len(other.src.words), len(other.dst.words)
        blocks = {}
        for e in range(cat.rank):
            rows_l, rpos = dst.index(e)
            cols_l, cpos = src.index(e)
            if not rows_l or not cols_l:
                continue
            M = None
            for q, v in enumerate(self.dst.words):
                for qq, vv in enumerate(other.dst.words):
                    Jo, Jopos, Ro, _ = _recomb(cat, v, vv, e)
                    if not Jo:
                        continue
                    sdst = q * n2d + qq
                    for p, w in enumerate(self.src.words):
                        for pp, ww in enumerate(other.src.words):
                            Ji, Jipos, _, Rinv = _recomb(cat, w, ww, e)
                            if not Ji:
                                continue
                            ssrc = p * n2s + pp
                            K = {}
                            for (c, t2, cp, t4) in Jo:
                                fb = self.blocks.get(c)
                                gb = other.blocks.get(cp)
                                if fb is None or gb is None:
                                    continue
                                frow = fb[self.dst.index(c)[1][(q, t2)]]
                                grow = gb[other.dst.index(cp)[1][(qq, t4)]]
                                for (c1, t1, cp1, t3) in Ji:
                                    if c1 != c or cp1 != cp:
                                        continue
                                    x = frow[self.src.index(c)[1][(p, t1)]]
                                    if not x:
                                        continue
                                    y = grow[other.src.index(cp)[1][(pp, t3)]]
                                    if y:
                                        K[(Jopos[(c, t2, cp, t4)], Jipos[(c1, t1, cp1, t3)])] = x * y
                            if not K:
                                continue
                            if M is None:
                                M = [[cat.field.zero] * len(cols_l) for _ in rows_l]
                            Tout = trees(cat, v + vv, e)
                            Tin = trees(cat, w + ww, e)
                            # M[Lout, Lin] += sum K[Jo, Ji] Ro[Jo][Lout] Rinv[Lin][Ji]
                            tmp = {}
                            for (jo, ji), k in K.items():
                                Rrow = Ro[jo]
                                for lo, r in enumerate(Rrow):
                                    if r:
                                        tmp[(lo, ji)] = tmp.get((lo, ji), 0) + k * r
                            for (lo, ji), val in tmp.items():
                                if not val:
                                    continue
                                ri = rpos[(sdst, Tout[lo])]
                                for li, tin in enumerate(Tin):
                                    r = Rinv[li][ji]
                                    if r:
                                        ci = cpos[(ssrc, tin)]
                                        M[ri][ci] = M[ri][ci] + val * r
            if M is not None:
                blocks[e] = M
        return Mor(src, dst, blocks)

    def trace(self):
        """Spherical trace of an endomorphism."""
        cat = self.cat
        acc = cat.field.zero
        for c, B in self.blocks.items():
            s = cat.field.zero
            for i in range(len(B)):
                s = s + B[i][i]
            acc = acc + cat.qdim[c] * s
        return acc

    def dual(self):
        """The transpose f*: B* -> A* built from cups and caps."""
        cat = self.cat
        out = None
        for p, w in enumerate(self.src.words):
            for q, v in enumerate(self.dst.words):
                piece = self.restrict(p, q)
                if piece.is_zero():
                    continue
                vs = Obj.word(cat, dual_word(cat, v))
                ws = Obj.word(cat, dual_word(cat, w))
                # v* -> v* (x) w (x) w* -> v* (x) v (x) w* -> w*
                step1 = Mor.identity(vs).tensor(Mor.cup_word(cat, w))
                step2 = Mor.identity(vs).tensor(piece).tensor(Mor.identity(ws))
                capv = Mor.cap_word(cat, dual_word(cat, v))
                step3 = capv.tensor(Mor.identity(ws))
                step1 = step1.reshape(dst=vs * Obj.word(cat, w) * ws)
                step3 = step3.reshape(src=vs * Obj.word(cat, v) * ws)
                m = step3.compose(step2.compose(step1))
                m = m.reshape(src=vs, dst=ws)
                m = m.embed(self.dst.dual(), self.src.dual(), q, p)
                out = m if out is None else out + m
        return out if out is not None else Mor.zero(self.dst.dual(), self.src.dual())

    def restrict(self, p, q):
        """Component from source summand p to target summand q."""
        cat = self.cat
        A = Obj.word(cat, self.src.words[p])
        B = Obj.word(cat, self.dst.words[q])
        blocks = {}
        for c, M in self.blocks.items():
            rl, _ = self.dst.index(c)
            cl, _ = self.src.index(c)
            ri = [i for i, (s, t) in enumerate(rl) if s == q]
            ci = [j for j, (s, t) in enumerate(cl) if s == p]
            if ri and ci:
                blocks[c] = [[M[i][j] for j in ci] for i in ri]
        return Mor(A, B, blocks)

    def embed(self, src, dst, p, q):
        """Place a single-word morphism as the (p -> q) component."""
        cat = self.cat
        blocks = {}
        for c, M in self.blocks.items():
            rl, rpos = dst.index(c)
            cl, cpos = src.index(c)
            out = [[cat.field.zero] * len(cl) for _ in rl]
            for i, t in enumerate(trees(cat, self.dst.words[0], c)):
                for j, s in enumerate(trees(cat, self.src.words[0], c)):
                    if M[i][j]:
                        out[rpos[(q, t)]][cpos[(p, s)]] = M[i][j]
            blocks[c] = out
        return Mor(src, dst, blocks)

    def __repr__(self):
        return f"Mor({self.src} -> {self.dst})"


def inclusion(A, p):
    """Summand p of A included into A."""
    cat = A.cat
    w = Obj.word(cat, A.words[p])
    return Mor.identity(w).embed(w, A, 0, p)


def projection(A, p):
    cat = A.cat
    w = Obj.word(cat, A.words[p])
    return Mor.identity(w).embed(A, w, p, 0)
