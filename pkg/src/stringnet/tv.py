"""Turaev-Viro state spaces and the plaquette projectors B_p.

A state on a closed PLCW complex is an edge labeling l together with one
vector per 2-cell C in <l(s_1), ..., l(s_n)>, where s_j runs over the sides
of C counterclockwise and a reversed side contributes the dual label.
Geometrically the cell vector is a vertex of the dual graph whose darts
cross the sides of C.

B_p inserts sum_k d_k/D^2 (loop colored k) around the vertex p and folds the
loop back into the dual edges.  Concretely, near every edge incident to p
the loop strands and the dual edge form a cable of up to three parallel
strands; the cable is resolved into a single strand l' with a dual pair of
vertices on the two sides of the edge, after which every cell around p is a
disk graph that the graph engine evaluates.  The same cable machinery
gives the transport maps used for move invariance.

Basis coefficients carry the factor prod_e sqrt(d_l(e)), so a resolved edge
contributes sqrt(d_l d_l') instead of the bare d_l' of the resolution of
the identity.  This is a diagonal change of basis: ranks and idempotence do
not depend on it.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .category import total_dim_squared
from .graph import _rotate_to
from .homspaces import HomVector, cap_vector, compose, dual_basis, rotate, trees
from .scalars import identity_matrix, mat_mul, mat_rank
from .surfaces import SurfaceError, move_m1, move_m2, split_cell, subdivide_edge

__all__ = [
    "TVStateSpace", "ProjectorSet", "CapExceeded", "build_state_space", "b_p_matrix",
    "projector_set", "tv_dimension", "tv_report", "verify_move_invariance",
    "merge_map", "refine_map", "DEFAULT_CAP",
]

DEFAULT_CAP = 10 ** 6


class CapExceeded(RuntimeError):
    """The state space is larger than the configured basis cap."""


def basis_cap():
    """The cap from ``STRINGNET_CAP`` or the default of one million."""
    raw = os.environ.get("STRINGNET_CAP")
    return int(raw) if raw else DEFAULT_CAP


class TVStateSpace:
    """Basis of H_TV for a closed complex.

    Basis vectors are indexed in this order: labelings l in lexicographic
    order of label indices over ``edges`` (sorted edge names), then the
    per-cell trees in lexicographic order, cells in complex order.
    ``basis[i]`` is (labeling tuple, tuple of trees).
    """

    def __init__(self, cat, cx, cap=None):
        cat.require_multiplicity_free()
        cx.validate(closed=True)
        self.cat = cat
        self.cx = cx
        self.edges = sorted(cx.edges)
        self.eidx = {e: i for i, e in enumerate(self.edges)}
        cap = basis_cap() if cap is None else cap
        self.basis = []
        self.blocks = {}
        for lab in self._labelings():
            words = [self.cell_word(ci, lab) for ci in range(len(cx.cells))]
            tl = [trees(cat, w) for w in words]
            size = 1
            for t in tl:
                size *= len(t)
            if not size:
                continue
            if len(self.basis) + size > cap:
                raise CapExceeded(f"state space exceeds the basis cap of {cap}")
            self.blocks[lab] = (len(self.basis), size)
            self.basis.extend((lab, ts) for ts in itertools.product(*tl))
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def _labelings(self):
        """Labelings with every cell space nonzero, by backtracking."""
        cat, cx = self.cat, self.cx
        n = len(self.edges)
        # a cell can be checked once its last edge (in our order) is set
        last = {}
        for ci, c in enumerate(cx.cells):
            last.setdefault(max(self.eidx[e] for e, _ in c), []).append(ci)
        lab = [None] * n

        def rec(i):
            if i == n:
                yield tuple(lab)
                return
            for x in range(cat.rank):
                lab[i] = x
                if all(trees(cat, self.cell_word(ci, lab)) for ci in last.get(i, ())):
                    yield from rec(i + 1)
            lab[i] = None

        yield from rec(0)

    def cell_word(self, ci, lab):
        d = self.cat.dual
        return tuple(lab[self.eidx[e]] if s > 0 else d[lab[self.eidx[e]]] for e, s in self.cx.cells[ci])

    def vector(self, i):
        """Basis vector i as a list of HomVectors, one per cell."""
        lab, ts = self.basis[i]
        return [HomVector.basis_vector(self.cat, self.cell_word(ci, lab), t) for ci, t in enumerate(ts)]

    def __repr__(self):
        return f"TVStateSpace({self.cat.name}, {self.cx!r}, dim={self.dim})"


def build_state_space(cat, cx, cap=None):
    return TVStateSpace(cat, cx, cap)


# ---------------------------------------------------------------------------
# contraction helper

def _fuse(wu, du, wv, dv, links):
    """Join two vertices along ``links`` (pairs of darts) and return (vec, darts).

    The first link must join u to v; the remaining ones become adjacent
    self-loops one after the other and are capped.
    """
    su = set(du)
    links = list(links)
    for i, (a, b) in enumerate(links):
        if (a in su) != (b in su):
            break
    else:
        raise ValueError("no link joins the two vertices")
    a, b = links.pop(i)
    if b in su:
        a, b = b, a
    wu, du = _rotate_to(wu, du, a, len(du) - 1)
    wv, dv = _rotate_to(wv, dv, b, 0)
    w, ds = compose(wu, wv), du[:-1] + dv[1:]
    while links:
        for i, (a, b) in enumerate(links):
            n = len(ds)
            ia, ib = ds.index(a), ds.index(b)
            if (ib - ia) % n == 1:
                first = a
            elif (ia - ib) % n == 1:
                first = b
            else:
                continue
            w, ds = _rotate_to(w, ds, first, 0)
            w, ds = cap_vector(w, 0), ds[2:]
            links.pop(i)
            break
        else:
            raise ValueError("remaining links are not adjacent; the picture is not planar")
    return w, ds


# ---------------------------------------------------------------------------
# cable plans
#
# A plan describes, for one cell, its output sides in counterclockwise
# order.  Each side is (edge, sign, crossings, resolved): ``crossings`` lists
# the strands met when walking the side in the cell's direction, each
# ("phi", i) for the input dart i, "ns" for a loop strand entering the cell
# near the start, or "ne" for one leaving near the end.  A loop strand
# leaving near the end of side t re-enters near the start of side t+1.

@dataclass
class _Side:
    edge: str
    sign: int
    crossings: list
    resolved: bool


@dataclass
class _Plan:
    cells: dict                      # cell index -> list of _Side
    resolved: list                   # output edges that are resolved
    consumed: list                   # input edges whose strands are absorbed
    out_label: object                # (in_lab, {edge: l'}) -> out labeling
    loop: bool = False
    extra: dict = field(default_factory=dict)


def _strand_color(cat, word, item, k):
    """Color of a crossing strand, oriented into the cell."""
    if item == "ns":
        return k
    if item == "ne":
        return cat.dual[k]
    return cat.dual[word[item[1]]]


def _edge_words(cat, plan, words, k):
    """For each resolved edge: (l', ...) -> word of the A vertex on the + side."""
    ys = {}
    for ci, sides in plan.cells.items():
        for s in sides:
            if s.resolved and s.sign > 0:
                ys[s.edge] = tuple(_strand_color(cat, words[ci], it, k) for it in s.crossings)
    return ys


def _cell_images(cat, vec, sides, ys, k):
    """Images of ``vec`` under the cable resolution of one cell.

    Returns {key: HomVector} where key is a sorted tuple of (edge, l', alpha).
    """
    n = len(sides)
    word = vec.labels
    states = [({}, vec, [("phi", i) for i in range(len(word))])]
    # where the loop strands sit: side t's "ne" joins side t+1's "ns"
    ne_dart, ns_dart = {}, {}
    for t, s in enumerate(sides):
        for q, it in enumerate(s.crossings):
            if it == "ne":
                ne_dart[t] = ("c", t, q)
            elif it == "ns":
                ns_dart[t] = ("c", t, q)
    for t, s in enumerate(sides):
        if not s.resolved:
            continue
        m = len(s.crossings)
        sd = [("x", t)] + [("c", t, q) for q in reversed(range(m))]
        links = []
        for q, it in enumerate(s.crossings):
            if isinstance(it, tuple):
                links.append((("phi", it[1]), ("c", t, q)))
        if t in ns_dart and t > 0:
            links.append((ne_dart[(t - 1) % n], ns_dart[t]))
        if t in ne_dart and (t + 1) % n == 0 and 0 in ns_dart:
            links.append((ne_dart[t], ns_dart[0]))
        Y = ys[s.edge]
        new = []
        for key, w, ds in states:
            if s.edge in key:
                choices = [key[s.edge]]
            else:
                choices = []
                for lp in range(cat.rank):
                    es, _ = dual_basis(cat, (lp,) + tuple(reversed(Y)))
                    choices += [(lp, a) for a in range(len(es))]
            for lp, a in choices:
                es, duals = dual_basis(cat, (lp,) + tuple(reversed(Y)))
                S = es[a] if s.sign > 0 else rotate(duals[a])
                w2, ds2 = _fuse(w, ds, S, sd, links)
                if w2.is_zero():
                    continue
                k2 = dict(key)
                k2[s.edge] = (lp, a)
                new.append((k2, w2, ds2))
        states = new
    out_ds = [("x", t) if s.resolved else s.crossings[0] for t, s in enumerate(sides)]
    res = {}
    for key, w, ds in states:
        if out_ds:
            w, ds = _rotate_to(w, ds, out_ds[0], 0)
        if ds != out_ds:
            raise AssertionError("output darts out of order")
        kk = tuple(sorted((e, lp, a) for e, (lp, a) in key.items()))
        res[kk] = res[kk] + w if kk in res else w
    return res


def _apply_plan(S_in, S_out, plan, weight):
    """Sparse operator {col: {row: value}} from a cable plan.

    ``weight(in_lab, out_lab, k)`` is the scalar in front of each term.
    """
    cat = S_in.cat
    F = cat.field
    op = {}
    ks = range(cat.rank) if plan.loop else [None]
    touched = sorted(plan.cells)
    for lab, (start, size) in S_in.blocks.items():
        words = [S_in.cell_word(ci, lab) for ci in range(len(S_in.cx.cells))]
        for k in ks:
            ys = _edge_words(cat, plan, words, k)
            cache = {}
            for col in range(start, start + size):
                _, ts = S_in.basis[col]
                parts = []
                for ci in touched:
                    ck = (ci, ts[ci])
                    if ck not in cache:
                        v = HomVector.basis_vector(cat, words[ci], ts[ci])
                        cache[ck] = _cell_images(cat, v, plan.cells[ci], ys, k)
                    parts.append(cache[ck])
                combos = [({}, [])]
                for imgs in parts:
                    nxt = []
                    for asg, vecs in combos:
                        for key, w in imgs.items():
                            if all(asg.get(e, (lp, a)) == (lp, a) for e, lp, a in key):
                                a2 = dict(asg)
                                a2.update({e: (lp, a) for e, lp, a in key})
                                nxt.append((a2, vecs + [w]))
                    combos = nxt
                col_out = op.setdefault(col, {})
                for asg, vecs in combos:
                    if set(asg) != set(plan.resolved):
                        # an edge resolved in one cell must be resolved in its partner too
                        raise AssertionError("inconsistent cable assignment")
                    out_lab = plan.out_label(lab, {e: lp for e, (lp, a) in asg.items()})
                    c0 = weight(lab, out_lab, k)
                    if not c0:
                        continue
                    trees_out = list(ts)
                    items = [list(v.data.items()) for v in vecs]
                    for combo in itertools.product(*items):
                        c = c0
                        for ci, (t, x) in zip(touched, combo):
                            trees_out[ci] = t
                            c = c * x
                        row = S_out.index.get((out_lab, tuple(trees_out)))
                        if row is None:
                            raise AssertionError("image outside the target state space")
                        col_out[row] = col_out.get(row, F.zero) + c
    return op


def _to_dense(op, n_rows, n_cols, F):
    M = [[F.zero] * n_cols for _ in range(n_rows)]
    for c, col in op.items():
        for r, x in col.items():
            M[r][c] = x
    return M


# ---------------------------------------------------------------------------
# B_p

def _bp_plan(S, p):
    cx = S.cx
    at_p = sorted(e for e, (t, h) in cx.edges.items() if p in (t, h))
    cells = {}
    for ci, c in enumerate(cx.cells):
        if not any(cx.end(s) == p for s in c):
            continue
        sides = []
        for i, s in enumerate(c):
            e, sign = s
            if e in at_p:
                cr = (["ns"] if cx.start(s) == p else []) + [("phi", i)] + \
                     (["ne"] if cx.end(s) == p else [])
                sides.append(_Side(e, sign, cr, True))
            else:
                sides.append(_Side(e, sign, [("phi", i)], False))
        cells[ci] = sides

    def out_label(lab, new):
        out = list(lab)
        for e, lp in new.items():
            out[S.eidx[e]] = lp
        return tuple(out)

    return _Plan(cells, at_p, at_p, out_label, loop=True)


def b_p_matrix(S, p):
    """Dense matrix of B_p on the state space ``S``."""
    if p not in S.cx.vertices:
        raise SurfaceError(f"{p!r} is not a vertex")
    cat = S.cat
    plan = _bp_plan(S, p)
    D2 = total_dim_squared(cat)
    sq = cat.sqrt_qdim
    idx = [S.eidx[e] for e in plan.resolved]

    def weight(lab, out, k):
        c = cat.qdim[k] / D2
        for i in idx:
            c = c * sq[lab[i]] * sq[out[i]]
        return c

    op = _apply_plan(S, S, plan, weight)
    return _to_dense(op, S.dim, S.dim, cat.field)


@dataclass
class ProjectorSet:
    """B_p for every vertex p and their product B (in vertex order)."""

    space: TVStateSpace
    B: dict
    product: list

    def rank(self):
        return mat_rank(self.product)

    def idempotent(self, p):
        return mat_mul(self.B[p], self.B[p]) == self.B[p]

    def commute(self, p, q):
        return mat_mul(self.B[p], self.B[q]) == mat_mul(self.B[q], self.B[p])

    def check(self):
        """Every B_p is idempotent and every pair commutes."""
        vs = list(self.B)
        return all(self.idempotent(p) for p in vs) and \
            all(self.commute(p, q) for a, p in enumerate(vs) for q in vs[a + 1:])


def projector_set(S):
    Bs = {p: b_p_matrix(S, p) for p in S.cx.vertices}
    prod = None
    for p in S.cx.vertices:
        prod = Bs[p] if prod is None else mat_mul(prod, Bs[p])
    return ProjectorSet(S, Bs, prod)


def tv_dimension(cat, cx, cap=None):
    """rank of prod_p B_p."""
    S = build_state_space(cat, cx, cap)
    if not S.dim:
        return 0
    return projector_set(S).rank()


def trace(M):
    out = 0
    for i in range(len(M)):
        out = out + M[i][i]
    return out


def tv_report(cat, cx, cap=None, surface=None):
    """JSON-ready summary: state space size, per-vertex ranks and rank of B."""
    S = build_state_space(cat, cx, cap)
    P = projector_set(S) if S.dim else None
    ranks = {str(p): (mat_rank(P.B[p]) if P else 0) for p in cx.vertices}
    return {
        "surface": surface or cx.name,
        "category": cat.name,
        "dim_HTV": S.dim,
        "ranks": ranks,
        "dim_ZTV": P.rank() if P else 0,
    }


# ---------------------------------------------------------------------------
# transport along M1

def merge_map(S_fine, S_coarse, e1, e2):
    """pi: H(fine) -> H(coarse) fusing the strands of e1, e2 into one edge.

    ``S_coarse`` must come from ``move_m1`` on the middle vertex, which
    keeps the name e1 for the merged edge.
    """
    cat, fine, coarse = S_fine.cat, S_fine.cx, S_coarse.cx
    t, q = fine.edges[e1]
    q2, h = fine.edges[e2]
    if q != q2 or coarse.edges.get(e1) != (t, h) or e2 in coarse.edges:
        raise SurfaceError("merge_map needs e1 = (t -> q), e2 = (q -> h) merged into e1")
    cells = {}
    for ci, c in enumerate(fine.cells):
        if not any(e in (e1, e2) for e, _ in c):
            continue
        sides, n = [], len(c)
        # rotate the word so that no e1/e2 pair straddles the start
        pos = list(range(n))
        while c[pos[0]][0] == e2 and c[pos[0]][1] > 0 or c[pos[0]][0] == e1 and c[pos[0]][1] < 0:
            pos = pos[1:] + pos[:1]
        j = 0
        while j < n:
            e, s = c[pos[j]]
            if e in (e1, e2):
                nxt = c[pos[j + 1]]
                if s > 0:
                    assert (e, nxt) == (e1, (e2, 1))
                else:
                    assert (e, nxt) == (e2, (e1, -1))
                sides.append(_Side(e1, s, [("phi", pos[j]), ("phi", pos[j + 1])], True))
                j += 2
            else:
                sides.append(_Side(e, s, [("phi", pos[j])], False))
                j += 1
        # the coarse cell word starts where the fine one does
        cw = coarse.cells[ci]
        shift = next(r for r in range(len(sides))
                     if [(sd.edge, sd.sign) for sd in sides[r:] + sides[:r]] == list(cw))
        cells[ci] = sides[shift:] + sides[:shift]

    def out_label(lab, new):
        out = []
        for e in S_coarse.edges:
            out.append(new[e] if e in new else lab[S_fine.eidx[e]])
        return tuple(out)

    plan = _Plan(cells, [e1], [e1, e2], out_label)
    sq = cat.sqrt_qdim
    i1, i2, j1 = S_fine.eidx[e1], S_fine.eidx[e2], S_coarse.eidx[e1]

    def weight(lab, out, k):
        return sq[lab[i1]] * sq[lab[i2]] * sq[out[j1]]

    op = _apply_plan(S_fine, S_coarse, plan, weight)
    return _to_dense(op, S_coarse.dim, S_fine.dim, cat.field)


def unit_insertion(S_coarse, S_fine, e1, e2):
    """iota: H(coarse) -> H(fine), labeling e1 as e and e2 by the unit."""
    cat, fine = S_coarse.cat, S_fine.cx
    M = [[cat.field.zero] * S_coarse.dim for _ in range(S_fine.dim)]
    for col, (lab, ts) in enumerate(S_coarse.basis):
        flab = []
        for e in S_fine.edges:
            flab.append(cat.unit if e == e2 else lab[S_coarse.eidx[e]])
        new_ts = []
        for ci, c in enumerate(fine.cells):
            old = iter(ts[ci])
            charge, out = cat.unit, []
            for e, s in c:
                if e == e2:
                    out.append(charge)
                else:
                    charge = next(old)
                    out.append(charge)
            new_ts.append(tuple(out))
        M[S_fine.index[(tuple(flab), tuple(new_ts))]][col] = cat.field.one
    return M


def refine_map(S_coarse, S_fine, e1, e2, q):
    """s = B_q o iota: H(coarse) -> H(fine)."""
    return mat_mul(b_p_matrix(S_fine, q), unit_insertion(S_coarse, S_fine, e1, e2))


def _m1_transport(cat, fine, v, cap):
    """Check pi s = id, s pi = B_q and pi B'_p = B_p pi for an M1 move at v."""
    coarse = move_m1(fine, v)
    e1 = next(e for e in fine.edges if fine.edges[e][1] == v and e in coarse.edges)
    e2 = next(e for e in fine.edges if fine.edges[e][0] == v and e != e1)
    if fine.edges[e1][1] != v or fine.edges[e2][0] != v:
        return None
    Sf, Sc = build_state_space(cat, fine, cap), build_state_space(cat, coarse, cap)
    pi = merge_map(Sf, Sc, e1, e2)
    s = refine_map(Sc, Sf, e1, e2, v)
    Bq = b_p_matrix(Sf, v)
    ok = mat_mul(pi, s) == identity_matrix(Sc.dim, cat.field) and mat_mul(s, pi) == Bq
    for p in coarse.vertices:
        ok = ok and mat_mul(pi, b_p_matrix(Sf, p)) == mat_mul(b_p_matrix(Sc, p), pi)
    return ok


def _apply_move(cx, mv):
    kind = mv[0]
    if kind == "m1":
        return move_m1(cx, mv[1])
    if kind == "m2":
        return move_m2(cx, mv[1])
    if kind == "subdivide":
        return subdivide_edge(cx, mv[1])
    if kind == "split":
        return split_cell(cx, *mv[1:])
    raise SurfaceError(f"unknown move {kind!r}")


def verify_move_invariance(cat, cx, moves, strong=False, cap=None):
    """Apply ``moves`` in turn and compare tv_dimension at every step.

    Moves are ("m1", vertex), ("m2", edge), ("subdivide", edge) or
    ("split", cell, i, j).  With ``strong`` the M1-type steps (M1 and edge
    subdivision) are also checked at the level of maps: the merge map pi
    and the refinement s satisfy pi s = id, s pi = B_q, and pi intertwines
    the remaining B_p.  Returns (ok, list of per-step records).
    """
    records = []
    cur = cx
    d0 = tv_dimension(cat, cur, cap)
    ok = True
    for mv in moves:
        nxt = _apply_move(cur, mv)
        d1 = tv_dimension(cat, nxt, cap)
        rec = {"move": list(mv), "dim_before": d0, "dim_after": d1}
        step_ok = d0 == d1
        if strong and mv[0] in ("m1", "subdivide"):
            if mv[0] == "m1":
                fine, v = cur, mv[1]
            else:
                fine = nxt
                v = next(x for x in nxt.vertices if x not in cur.vertices)
            t = _m1_transport(cat, fine, v, cap)
            rec["transport"] = t
            step_ok = step_ok and bool(t)
        rec["ok"] = step_ok
        ok = ok and step_ok
        records.append(rec)
        cur, d0 = nxt, d1
    return ok, records
