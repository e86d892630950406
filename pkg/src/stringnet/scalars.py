"""Exact arithmetic in towers of quadratic extensions of Q.

A field is built as Q = K_0 < K_1 < ... < K_n with K_t = K_{t-1}(g_t) and
g_t^2 = r_t for a radicand r_t in K_{t-1} that is not a square there.
Elements of K_n are stored as flat tuples of 2^n rationals; index bit t-1
marks the presence of g_t.  Radicands may be negative or themselves
irrational, which covers sqrt(phi), 2^(1/4) and the roots of unity that
appear in Drinfeld centers.

Depth-zero fields hand out plain ``gmpy2.mpq`` values; deeper fields wrap
the coefficient tuple in :class:`Scalar`.  Both support the arithmetic
operators, so the linear algebra below is written once for either.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction

import mpmath
from gmpy2 import mpq

__all__ = [
    "Field", "Scalar", "FieldError", "ParseError", "QQ",
    "parse_scalar", "format_scalar",
    "mat_mul", "mat_rank", "rref", "nullspace", "solve", "mat_inverse",
    "identity_matrix", "zero_matrix", "split_idempotents", "AlgebraSplitting",
]


class FieldError(ValueError):
    """Raised when a value does not live in the requested field."""


class ParseError(ValueError):
    """Raised for malformed scalar expressions; carries the column."""

    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at column {pos})")


# ---------------------------------------------------------------------------
# flat-tuple kernels

def _is_zero(a):
    for x in a:
        if x:
            return False
    return True


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _scale(a, q):
    return tuple(x * q for x in a)


def _mul(a, b, rads, d):
    if d == 0:
        return (a[0] * b[0],)
    h = 1 << (d - 1)
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    z1a, z1b = _is_zero(a1), _is_zero(b1)
    if z1a and z1b:
        return _mul(a0, b0, rads, d - 1) + (mpq(0),) * h
    if z1a:
        return _mul(a0, b0, rads, d - 1) + _mul(a0, b1, rads, d - 1)
    if z1b:
        return _mul(a0, b0, rads, d - 1) + _mul(a1, b0, rads, d - 1)
    p0 = _mul(a0, b0, rads, d - 1)
    p1 = _mul(a1, b1, rads, d - 1)
    cross = _add(_mul(a0, b1, rads, d - 1), _mul(a1, b0, rads, d - 1))
    return _add(p0, _mul(rads[d - 1], p1, rads, d - 1)) + cross


def _inv(a, rads, d):
    if d == 0:
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return (1 / a[0],)
    h = 1 << (d - 1)
    x, y = a[:h], a[h:]
    if _is_zero(y):
        return _inv(x, rads, d - 1) + (mpq(0),) * h
    norm = _sub(_mul(x, x, rads, d - 1), _mul(rads[d - 1], _mul(y, y, rads, d - 1), rads, d - 1))
    ninv = _inv(norm, rads, d - 1)
    return _mul(x, ninv, rads, d - 1) + _neg(_mul(y, ninv, rads, d - 1))


# ---------------------------------------------------------------------------

class Field:
    """A tower Q(g_1)(g_2)...(g_n) with g_t^2 = radicand t.

    Args:
        radicands: sequence of expression strings (or elements of the
            partial tower).  Each is parsed in the field generated by the
            earlier ones.
    """

    def __init__(self, radicands=()):
        self._rads = []           # flat tuples, rads[t] has length 2^t
        self._exprs = []
        self._num = []            # numeric values of generators (mpc)
        self._num_prec = None
        for r in radicands:
            self._push(r)
        self.depth = len(self._rads)
        self.size = 1 << self.depth
        self._zero_t = (mpq(0),) * self.size
        self.zero = self._wrap(self._zero_t)
        self.one = self._wrap((mpq(1),) + (mpq(0),) * (self.size - 1))

    # construction -------------------------------------------------------
    def _push(self, r):
        partial = Field.__new__(Field)
        partial._rads = list(self._rads)
        partial._exprs = list(self._exprs)
        partial._num = []
        partial._num_prec = None
        partial.depth = len(partial._rads)
        partial.size = 1 << partial.depth
        partial._zero_t = (mpq(0),) * partial.size
        partial.zero = partial._wrap(partial._zero_t)
        partial.one = partial._wrap((mpq(1),) + (mpq(0),) * (partial.size - 1))
        if isinstance(r, str):
            expr = r
            val = parse_scalar(r, partial)
        else:
            val = partial(r)
            expr = format_scalar(val, partial)
        flat = partial.coeffs(val)
        if partial.is_square(val):
            raise FieldError(f"radicand {expr!r} is already a square")
        self._rads.append(flat)
        self._exprs.append(expr)

    @property
    def radicands(self):
        return tuple(self._exprs)

    def extend(self, radicands):
        """The tower with further generators appended."""
        return Field(list(self._exprs) + list(radicands))

    def __eq__(self, other):
        return isinstance(other, Field) and self._rads == other._rads

    def __hash__(self):
        return hash(tuple(self._rads))

    def __repr__(self):
        if not self._exprs:
            return "Field(Q)"
        return "Field(" + ", ".join(f"sqrt({e})" for e in self._exprs) + ")"

    def contains(self, other):
        """True if ``other`` is a prefix sub-tower of this field."""
        return other._rads == self._rads[: other.depth]

    # elements -----------------------------------------------------------
    def _wrap(self, flat):
        if self.depth == 0:
            return flat[0]
        return Scalar(self, flat)

    def coeffs(self, x):
        """Flat coefficient tuple of ``x`` (coerced into this field)."""
        if isinstance(x, Scalar):
            if x.field is self or x.field == self:
                return x.c
            if self.contains(x.field):
                return x.c + (mpq(0),) * (self.size - x.field.size)
            raise FieldError(f"{x!r} is not in {self!r}")
        if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
            return (mpq(x),) + (mpq(0),) * (self.size - 1)
        if isinstance(x, str):
            return self.coeffs(parse_scalar(x, self))
        raise TypeError(f"cannot coerce {type(x).__name__} into a field element")

    def __call__(self, x):
        if isinstance(x, Scalar) and x.field is self:
            return x
        return self._wrap(self.coeffs(x))

    def gen(self, t):
        """The generator g_t (1-based)."""
        c = [mpq(0)] * self.size
        c[1 << (t - 1)] = mpq(1)
        return self._wrap(tuple(c))

    def basis(self):
        """Monomial basis as field elements, in flat-index order."""
        out = []
        for i in range(self.size):
            c = [mpq(0)] * self.size
            c[i] = mpq(1)
            out.append(self._wrap(tuple(c)))
        return out

    def is_rational(self, x):
        c = self.coeffs(x)
        return _is_zero(c[1:])

    # square roots -------------------------------------------------------
    def _sqrt_flat(self, a, d):
        """A square root of flat ``a`` at depth d, or None."""
        if d == 0:
            q = a[0]
            if q < 0:
                return None
            n, m = q.numerator, q.denominator
            import gmpy2
            if gmpy2.is_square(n) and gmpy2.is_square(m):
                return (mpq(gmpy2.isqrt(n), gmpy2.isqrt(m)),)
            return None
        h = 1 << (d - 1)
        p, q = a[:h], a[h:]
        rads = self._rads
        if _is_zero(q):
            u = self._sqrt_flat(p, d - 1)
            if u is not None:
                return u + (mpq(0),) * h
            # p = r * v^2 ?
            v2 = _mul(p, _inv(rads[d - 1], rads, d - 1), rads, d - 1)
            v = self._sqrt_flat(v2, d - 1)
            if v is not None:
                return (mpq(0),) * h + v
            return None
        disc = _sub(_mul(p, p, rads, d - 1), _mul(rads[d - 1], _mul(q, q, rads, d - 1), rads, d - 1))
        s = self._sqrt_flat(disc, d - 1)
        if s is None:
            return None
        half = mpq(1, 2)
        for sign in (1, -1):
            u2 = _scale(_add(p, s) if sign > 0 else _sub(p, s), half)
            if _is_zero(u2):
                continue
            u = self._sqrt_flat(u2, d - 1)
            if u is None:
                continue
            v = _mul(_scale(q, half), _inv(u, rads, d - 1), rads, d - 1)
            return u + v
        return None

    def is_square(self, x):
        return self._sqrt_flat(self.coeffs(x), self.depth) is not None

    def sqrt(self, x):
        """Exact square root with the branch of non-negative real part.

        Ties (purely imaginary roots) are broken toward positive imaginary
        part.  Raises FieldError when the root lies outside the field.
        """
        c = self.coeffs(x)
        if _is_zero(c):
            return self.zero
        r = self._sqrt_flat(c, self.depth)
        if r is None:
            raise FieldError(f"sqrt({format_scalar(self._wrap(c), self)}) is not in {self!r}")
        z = self.embed(self._wrap(r), 30)
        if z.real < 0 or (abs(z.real) < mpmath.mpf(10) ** -25 and z.imag < 0):
            r = _neg(r)
        return self._wrap(r)

    # numerics -----------------------------------------------------------
    def _gens_numeric(self, dps):
        if self._num_prec is None or self._num_prec < dps:
            with mpmath.workdps(dps + 10):
                self._num = []
                for t, r in enumerate(self._rads):
                    val = self._embed_flat(r, t)
                    self._num.append(mpmath.sqrt(mpmath.mpc(val)))
            self._num_prec = dps
        return self._num

    def _embed_flat(self, a, d):
        if d == 0:
            return mpmath.mpf(a[0].numerator) / a[0].denominator
        h = 1 << (d - 1)
        return self._embed_flat(a[:h], d - 1) + self._num[d - 1] * self._embed_flat(a[h:], d - 1)

    def embed(self, x, dps=50):
        """Complex value under the principal-root embedding."""
        c = self.coeffs(x)
        with mpmath.workdps(dps + 10):
            self._gens_numeric(dps)
            return mpmath.mpc(self._embed_flat(c, self.depth))

    def to_complex(self, x):
        z = self.embed(x, 20)
        return complex(z)

    def random_element(self, rng, height=3):
        return self._wrap(tuple(mpq(rng.randint(-height, height), rng.randint(1, height))
                                for _ in range(self.size)))


QQ = Field(())


class Scalar:
    """Element of a quadratic tower of positive depth."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _other(self, o):
        if isinstance(o, Scalar):
            if o.field is self.field or o.field == self.field:
                return self.field, self.c, o.c
            if o.field.contains(self.field):
                return o.field, o.field.coeffs(self), o.c
            return self.field, self.c, self.field.coeffs(o)
        return self.field, self.c, self.field.coeffs(o)

    def __add__(self, o):
        F, a, b = self._other(o)
        return F._wrap(_add(a, b))

    __radd__ = __add__

    def __sub__(self, o):
        F, a, b = self._other(o)
        return F._wrap(_sub(a, b))

    def __rsub__(self, o):
        F, a, b = self._other(o)
        return F._wrap(_sub(b, a))

    def __mul__(self, o):
        if not isinstance(o, Scalar):
            q = mpq(o)
            return Scalar(self.field, tuple(x * q for x in self.c))
        F, a, b = self._other(o)
        return F._wrap(_mul(a, b, F._rads, F.depth))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, _neg(self.c))

    def __pos__(self):
        return self

    def inverse(self):
        F = self.field
        return F._wrap(_inv(self.c, F._rads, F.depth))

    def __truediv__(self, o):
        if not isinstance(o, Scalar):
            q = mpq(o)
            if not q:
                raise ZeroDivisionError("division by zero")
            return Scalar(self.field, tuple(x / q for x in self.c))
        F, a, b = self._other(o)
        return F._wrap(_mul(a, _inv(b, F._rads, F.depth), F._rads, F.depth))

    def __rtruediv__(self, o):
        F, a, b = self._other(o)
        return F._wrap(_mul(b, _inv(a, F._rads, F.depth), F._rads, F.depth))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        try:
            _, a, b = self._other(o)
        except (FieldError, TypeError):
            return NotImplemented
        return a == b

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if _is_zero(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return not _is_zero(self.c)

    def __repr__(self):
        return format_scalar(self, self.field)

    def __complex__(self):
        return self.field.to_complex(self)

    def conj_coeffs(self):
        return self.c


# ---------------------------------------------------------------------------
# expression grammar
#
#   expr   := term (('+' | '-') term)*
#   term   := unary (('*' | '/') unary)*
#   unary  := ('+' | '-') unary | power
#   power  := atom ('^' ['-'] INT)?
#   atom   := INT | DECIMAL | 'sqrt' '(' expr ')' | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(sqrt)|(.))")


def _tokenize(s):
    toks = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("sqrt", "sqrt", start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start + 1)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", "", len(s)))
    return toks


class _Parser:
    def __init__(self, text, field):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = field

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2] + 1)
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in "+-" and self.peek() != "":
            op = self.take(self.peek())[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take(self.peek())
            w = self.unary()
            if op[0] == "*":
                v = v * w
            else:
                if not w:
                    raise ParseError("division by zero", op[2] + 1)
                v = v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take("-")
            return -self.unary()
        if self.peek() == "+":
            self.take("+")
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take("^")
            neg = False
            if self.peek() == "-":
                self.take("-")
                neg = True
            tok = self.take("num")
            if "." in tok[1]:
                raise ParseError("exponent must be an integer", tok[2] + 1)
            n = int(tok[1])
            if neg:
                if not v:
                    raise ParseError("division by zero", tok[2] + 1)
                v = self.F.one / v
            r = self.F.one
            for _ in range(n):
                r = r * v
            v = r
        return v

    def atom(self):
        kind = self.peek()
        tok = self.toks[self.i]
        if kind == "num":
            self.take("num")
            return self.F(Fraction(tok[1]))
        if kind == "sqrt":
            self.take("sqrt")
            self.take("(")
            inner = self.expr()
            self.take(")")
            try:
                return self.F.sqrt(inner)
            except FieldError as e:
                raise ParseError(str(e), tok[2] + 1) from None
        if kind == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2] + 1)


def parse_scalar(text, field=QQ):
    """Parse an expression string into an element of ``field``."""
    if not isinstance(text, str):
        return field(text)
    p = _Parser(text, field)
    v = p.expr()
    if p.peek() != "end":
        tok = p.toks[p.i]
        raise ParseError(f"trailing input {tok[1]!r}", tok[2] + 1)
    return field(v)


def _fmt_q(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x, field=None):
    """Canonical expression string; it re-parses to the same element.

    Generator t prints as ``sqrt(<radicand t>)``.
    """
    if not isinstance(x, Scalar):
        return _fmt_q(x)
    F = x.field
    terms = []
    for idx, q in enumerate(x.c):
        if not q:
            continue
        mono = [f"sqrt({F._exprs[t]})" for t in range(F.depth) if idx >> t & 1]
        if not mono:
            terms.append(_fmt_q(q))
            continue
        m = "*".join(mono)
        if q == 1:
            terms.append(m)
        elif q == -1:
            terms.append("-" + m)
        else:
            terms.append(f"{_fmt_q(q)}*{m}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


# ---------------------------------------------------------------------------
# dense linear algebra over any of the fields above

def zero_matrix(n, m, field=QQ):
    return [[field.zero] * m for _ in range(n)]


def identity_matrix(n, field=QQ):
    M = zero_matrix(n, n, field)
    for i in range(n):
        M[i][i] = field.one
    return M


def mat_mul(A, B):
    if not A:
        return []
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * m
        for k, a in enumerate(row):
            if not a:
                continue
            Bk = B[k]
            for j in range(m):
                b = Bk[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def rref(M):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in M]
    n = len(A)
    m = len(A[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        p = None
        for i in range(r, n):
            if A[i][c]:
                p = i
                break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv if x else x for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                Ar = A[r]
                A[i] = [x - f * y if y else x for x, y in zip(A[i], Ar)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return A[:r], pivots


def mat_rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M, ncols=None, field=QQ):
    """Basis (list of vectors) of {x : M x = 0}."""
    m = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return [[field.one if i == j else field.zero for i in range(m)] for j in range(m)]
    R, piv = rref(M)
    free = [c for c in range(m) if c not in set(piv)]
    basis = []
    for f in free:
        v = [field.zero] * m
        v[f] = field.one
        for row, pc in zip(R, piv):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(A, b):
    """A particular solution of A x = b, or None when inconsistent."""
    n = len(A)
    m = len(A[0]) if n else 0
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = rref(aug)
    if m in piv:
        return None
    zero = b[0] * 0 if b else 0
    x = [zero] * m
    for row, pc in zip(R, piv):
        x[pc] = row[m]
    return x


def mat_inverse(M):
    n = len(M)
    one = None
    for r in M:
        for x in r:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        raise ZeroDivisionError("singular matrix")
    aug = [list(M[i]) + [one if i == j else one * 0 for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


# ---------------------------------------------------------------------------
# splitting semisimple algebras

class AlgebraSplitting:
    """Central idempotents of a split semisimple algebra.

    Attributes:
        field: field the idempotents are written over.
        center: basis of the center (coordinate vectors).
        idempotents: primitive central idempotents.
        block_dims: dimension of each two-sided block.
        min_poly: coefficients (low to high) of the splitting element's
            minimal polynomial.
    """

    def __init__(self, field, center, idempotents, block_dims, min_poly):
        self.field = field
        self.center = center
        self.idempotents = idempotents
        self.block_dims = block_dims
        self.min_poly = min_poly


def _algebra_mul(struct, x, y, field):
    n = len(x)
    out = [field.zero] * n
    for a, xa in enumerate(x):
        if not xa:
            continue
        row = struct[a]
        for b, yb in enumerate(y):
            if not yb:
                continue
            w = xa * yb
            for c, s in row[b].items():
                out[c] = out[c] + w * s
    return out


def _recognize(z, field, dps):
    """Find an element of ``field`` with embedding close to ``z``."""
    basis = field.basis()
    with mpmath.workdps(dps):
        gamma = mpmath.pi / 7 + mpmath.e
        vals = [field.embed(b, dps) for b in basis]
        proj = [v.real + gamma * v.imag for v in vals]
        target = z.real + gamma * z.imag
        if abs(z) < mpmath.mpf(10) ** (-(dps // 2)):
            return field.zero
        rel = mpmath.pslq([target] + proj, maxcoeff=10 ** 12, maxsteps=10 ** 6)
    if rel is None or rel[0] == 0:
        return None
    c0 = rel[0]
    return field._wrap(tuple(mpq(-r, c0) for r in rel[1:]))


def _poly_eval(coeffs, x, field):
    acc = field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def split_idempotents(struct, field, unit, seed=0, ext_field=None, max_tries=12, dps=60):
    """Primitive central idempotents of the algebra with given structure.

    Args:
        struct: struct[a][b] is a dict {c: coefficient} for b_a * b_b.
        field: field of the structure constants.
        unit: coordinates of the unit element.
        seed: seed for the random central element.
        ext_field: optional larger field in which eigenvalues are sought.

    Returns:
        AlgebraSplitting over ``ext_field or field``.

    Raises:
        FieldError: if the minimal polynomial does not split; the message
            contains its coefficients.
    """
    n = len(struct)
    K = ext_field or field
    # center: x with x*b_a = b_a*x for all a
    rows = []
    for a in range(n):
        for c in range(n):
            row = []
            for x in range(n):
                v = struct[x][a].get(c, field.zero) - struct[a][x].get(c, field.zero)
                row.append(v)
            if any(row):
                rows.append(row)
    center = nullspace(rows, n, field) if rows else [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    r = len(center)
    S = [[K(v) for v in vec] for vec in center]
    structK = [[{c: K(s) for c, s in d.items()} for d in row] for row in struct]
    unitK = [K(u) for u in unit]
    rng = random.Random(seed)
    last = None
    for attempt in range(max_tries):
        coeffs = [rng.randint(-5, 5) or 1 for _ in range(r)]
        z = [K.zero] * n
        for cf, vec in zip(coeffs, S):
            z = [zi + cf * vi for zi, vi in zip(z, vec)]
        # Krylov sequence 1, z, z^2, ...
        powers = [unitK]
        while True:
            nxt = _algebra_mul(structK, powers[-1], z, K)
            M = [list(col) for col in zip(*(powers + [nxt]))]
            ker = nullspace(M, len(powers) + 1, K)
            if ker:
                rel = ker[0]
                lead = rel[-1]
                poly = [c / lead for c in rel]
                break
            powers.append(nxt)
        last = poly
        deg = len(poly) - 1
        if deg < r:
            continue
        with mpmath.workdps(dps):
            numeric = [K.embed(c, dps) for c in poly]
            try:
                roots = mpmath.polyroots(list(reversed(numeric)), maxsteps=400, extraprec=4 * dps)
            except mpmath.libmp.NoConvergence:
                continue
        exact = []
        for zr in roots:
            lam = _recognize(zr, K, dps)
            if lam is None or _poly_eval(poly, lam, K):
                exact = None
                break
            exact.append(lam)
        if exact is None or len(set(exact)) < deg:
            if exact is None:
                raise FieldError("minimal polynomial does not split over "
                                 f"{K!r}; coefficients (low to high): "
                                 + ", ".join(format_scalar(c, K) for c in poly))
            continue
        idems = []
        for lam in exact:
            e = list(unitK)
            for mu in exact:
                if mu is lam:
                    continue
                fac = [zi - (mu * ui) for zi, ui in zip(z, unitK)]
                e = _algebra_mul(structK, e, fac, K)
                inv = 1 / (lam - mu)
                e = [x * inv for x in e]
            idems.append(e)
        dims = []
        for e in idems:
            L = [_algebra_mul(structK, e, [K.one if i == j else K.zero for i in range(n)], K) for j in range(n)]
            dims.append(mat_rank(L))
        return AlgebraSplitting(K, S, idems, dims, poly)
    raise FieldError("could not find a separating central element; last minimal polynomial: "
                     + ", ".join(format_scalar(c, K) for c in (last or [])))
