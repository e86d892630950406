"""Colored embedded graphs in a disk and their evaluation.

A graph is a rotation system: every interior vertex owns an ordered list of
darts (half-edges), paired darts form edges, and unpaired darts are legs
ending on the boundary circle.  Each dart carries the simple label of the
edge oriented away from its vertex, and each vertex carries a vector in
<labels of its darts, in rotation order>.  The same cyclic sense is used for
vertex rotations, the boundary order and (in ``surfaces``) cell words; we
call it counterclockwise.

``evaluate`` contracts edges one at a time.  Contracting an edge between
two vertices composes their vectors; a self-loop whose darts are adjacent
is removed by a cap.  Any contraction order gives the same answer, which
the test-suite checks by randomizing the order.
"""

from __future__ import annotations

import itertools

from .homspaces import HomVector, cap_vector, compose, concat, dual_basis, rotate, trees
from .scalars import format_scalar, parse_scalar

__all__ = [
    "EmbeddedGraph", "GraphSum", "GraphError", "evaluate", "merge_vertices",
    "expand_colors", "insert_regular_loop", "resolve_cable", "cut_annulus",
    "edge_crossing_identity_check", "graph_from_json", "graph_to_json",
    "MultiColorGraph", "theta_graph", "random_planar_graph",
]


class GraphError(ValueError):
    """Inconsistent colors, rotations or boundary data."""


class EmbeddedGraph:
    """Rotation-system graph in a disk (or an annulus with a declared cut).

    Attributes:
        rot: {vertex: [darts in rotation order]}.
        color: {dart: simple label (outgoing)}.
        pair: {dart: partner dart} for interior edges (symmetric).
        vec: {vertex: HomVector over the dart labels in rotation order}.
        boundary: legs (unpaired darts) in boundary order.
        loops: free loops, each {label: coefficient}; a loop colored X
            evaluates to sum coefficient * d_X.
        ambient: "disk" or "annulus".
        cut: for an annulus, darts crossing the radial cut, inner to outer,
            each oriented so that it leaves the side at the start of the
            boundary order.
    """

    def __init__(self, cat, rot=None, color=None, pair=None, vec=None, boundary=None,
                 loops=None, ambient="disk", cut=None):
        self.cat = cat
        self.rot = {v: list(ds) for v, ds in (rot or {}).items()}
        self.color = dict(color or {})
        self.pair = dict(pair or {})
        self.vec = dict(vec or {})
        self.boundary = list(boundary or [])
        self.loops = [dict(l) for l in (loops or [])]
        self.ambient = ambient
        self.cut = list(cut or [])

    # building ------------------------------------------------------------
    def _new_dart(self):
        return max(itertools.chain(self.color, [-1])) + 1

    def _new_vertex(self):
        return max(itertools.chain(self.rot, [-1])) + 1

    def add_vertex(self, vector, vid=None):
        """Add a vertex colored by ``vector``; returns its darts in order."""
        v = self._new_vertex() if vid is None else vid
        if v in self.rot:
            raise GraphError(f"vertex {v} already exists")
        start = self._new_dart()
        ds = list(range(start, start + len(vector.labels)))
        for d, x in zip(ds, vector.labels):
            self.color[d] = x
        self.rot[v] = ds
        self.vec[v] = vector
        return ds

    def connect(self, d1, d2):
        if self.cat.dual[self.color[d1]] != self.color[d2]:
            raise GraphError(f"darts {d1}, {d2} carry non-dual colors")
        if d1 in self.pair or d2 in self.pair or d1 == d2:
            raise GraphError(f"dart {d1} or {d2} is already paired")
        self.pair[d1] = d2
        self.pair[d2] = d1

    def add_loop(self, coloring):
        self.loops.append(dict(coloring))

    def copy(self):
        return EmbeddedGraph(self.cat, self.rot, self.color, self.pair, self.vec, self.boundary,
                             self.loops, self.ambient, self.cut)

    # queries -------------------------------------------------------------
    def vertex_of(self):
        return {d: v for v, ds in self.rot.items() for d in ds}

    def legs(self):
        return [d for ds in self.rot.values() for d in ds if d not in self.pair]

    def edges(self):
        return sorted({(min(a, b), max(a, b)) for a, b in self.pair.items()})

    def boundary_labels(self):
        return tuple(self.color[d] for d in self.boundary)

    def faces(self):
        """Face cycles of the map closed up by a boundary vertex."""
        nxt = {}
        for v, ds in self.rot.items():
            for i, d in enumerate(ds):
                nxt[d] = ds[(i + 1) % len(ds)]
        alpha = dict(self.pair)
        # legs are attached to an outer vertex whose rotation is the reverse boundary order
        outer = [("o", d) for d in reversed(self.boundary)]
        for i, od in enumerate(outer):
            nxt[od] = outer[(i + 1) % len(outer)]
        for d in self.boundary:
            alpha[d] = ("o", d)
            alpha[("o", d)] = d
        seen = set()
        faces = []
        for d in nxt:
            if d in seen or d not in alpha:
                continue
            f = []
            x = d
            while x not in seen:
                seen.add(x)
                f.append(x)
                x = nxt[alpha[x]]
            faces.append(f)
        return faces

    def validate(self):
        """Raise GraphError unless colors, pairing and embedding are consistent."""
        cat = self.cat
        seen = set()
        for v, ds in self.rot.items():
            for d in ds:
                if d in seen:
                    raise GraphError(f"dart {d} appears twice")
                seen.add(d)
            labels = tuple(self.color[d] for d in ds)
            if self.vec[v].labels != labels:
                raise GraphError(f"vertex {v}: vector labels do not match dart colors")
        for a, b in self.pair.items():
            if self.pair.get(b) != a:
                raise GraphError(f"pairing is not an involution at dart {a}")
            if cat.dual[self.color[a]] != self.color[b]:
                raise GraphError(f"edge ({a},{b}) has non-dual colors")
        legs = set(self.legs())
        if legs != set(self.boundary) or len(self.boundary) != len(legs):
            raise GraphError("boundary list must enumerate exactly the unpaired darts")
        if self.ambient == "disk" and not self._planar():
            raise GraphError("rotation system is not planar with the declared boundary order")
        if self.ambient not in ("disk", "annulus"):
            raise GraphError(f"unknown ambient {self.ambient!r}")
        return self

    def _planar(self):
        """Euler characteristic of the closed-up map, component by component."""
        if not self.rot:
            return True
        adj = {v: set() for v in self.rot}
        vo = self.vertex_of()
        for a, b in self.pair.items():
            adj[vo[a]].add(vo[b])
        hub = "o"
        if self.boundary:
            adj[hub] = set()
            for d in self.boundary:
                adj[hub].add(vo[d])
                adj[vo[d]].add(hub)
        comps = 0
        seen = set()
        for v in adj:
            if v in seen:
                continue
            comps += 1
            stack = [v]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(adj[x] - seen)
        V = len(self.rot) + (1 if self.boundary else 0)
        E = len(self.pair) // 2 + len(self.boundary)
        F = len(self.faces())
        # isolated vertices with no darts contribute one face each
        F += sum(1 for ds in self.rot.values() if not ds)
        return V - E + F == 2 * comps


class GraphSum:
    """Formal linear combination of graphs with a common boundary."""

    def __init__(self, terms=()):
        self.terms = list(terms)

    def __add__(self, other):
        return GraphSum(self.terms + other.terms)

    def scaled(self, s):
        return GraphSum([(c * s, g) for c, g in self.terms])


# ---------------------------------------------------------------------------
# evaluation

def _rotate_to(vec, ds, dart, pos):
    """Rotate so that ``dart`` sits at index ``pos``."""
    n = len(ds)
    i = ds.index(dart)
    k = (pos - i) % n
    if k:
        vec = rotate(vec, k)
        ds = ds[-k:] + ds[:-k]
    return vec, ds


def evaluate(g, rng=None):
    """<g> as a HomVector over the boundary labels.

    Args:
        g: EmbeddedGraph or GraphSum in a disk.
        rng: optional ``random.Random``; when given, the contraction order
            is randomized (used to test order independence).
    """
    if isinstance(g, GraphSum):
        out = None
        for c, h in g.terms:
            v = evaluate(h, rng) * c
            out = v if out is None else out + v
        if out is None:
            raise GraphError("empty graph sum")
        return out
    if g.ambient != "disk":
        raise GraphError("evaluate needs a disk; cut an annulus first")
    cat = g.cat
    scalar = cat.field.one
    for lp in g.loops:
        val = cat.field.zero
        for x, c in lp.items():
            val = val + c * cat.qdim[x]
        scalar = scalar * val
    labels = g.boundary_labels()
    if not scalar:
        return HomVector(cat, labels, {})
    rot = {v: list(ds) for v, ds in g.rot.items()}
    vec = dict(g.vec)
    pair = dict(g.pair)
    where = g.vertex_of()
    fresh = itertools.count(max(itertools.chain(rot, [0])) + 1) if all(isinstance(v, int) for v in rot) \
        else (("m", i) for i in itertools.count())

    def zero():
        return HomVector(cat, labels, {})

    while True:
        # drop closed vertices
        for v in [v for v, ds in rot.items() if not ds]:
            scalar = scalar * vec[v].data.get((), cat.field.zero)
            del rot[v], vec[v]
        if not scalar:
            return zero()
        edges = {(min(a, b), max(a, b)) for a, b in pair.items()}
        if not edges:
            break
        edges = sorted(edges, key=repr)
        if rng is not None:
            rng.shuffle(edges)
        choice = None
        best = None
        for a, b in edges:
            u, v = where[a], where[b]
            if u == v:
                ds = rot[u]
                n = len(ds)
                ia, ib = ds.index(a), ds.index(b)
                if (ib - ia) % n == 1 or (ia - ib) % n == 1:
                    choice = (a, b)
                    break
                continue
            cost = len(rot[u]) + len(rot[v]) - 2
            if rng is not None:
                if best is None:
                    best = (cost, (a, b))
            elif best is None or cost < best[0]:
                best = (cost, (a, b))
        if choice is None:
            if best is None:
                raise GraphError("stuck on non-adjacent self-loops; embedding is not planar")
            choice = best[1]
        a, b = choice
        u, v = where[a], where[b]
        del pair[a], pair[b]
        if u == v:
            ds = rot[u]
            n = len(ds)
            ia, ib = ds.index(a), ds.index(b)
            first = a if (ib - ia) % n == 1 else b
            w, ds = _rotate_to(vec[u], ds, first, 0)
            w = cap_vector(w, 0)
            rot[u] = ds[2:]
            vec[u] = w
        else:
            wu, du = _rotate_to(vec[u], rot[u], a, len(rot[u]) - 1)
            wv, dv = _rotate_to(vec[v], rot[v], b, 0)
            w = compose(wu, wv)
            nv = next(fresh)
            rot[nv] = du[:-1] + dv[1:]
            vec[nv] = w
            for d in rot[nv]:
                where[d] = nv
            del rot[u], rot[v], vec[u], vec[v]
        if vec.get(u if u == v else nv) is not None and vec[u if u == v else nv].is_zero():
            return zero()
    # remaining vertices all carry legs
    if not rot:
        return HomVector(cat, labels, {(): scalar}) if not labels else zero()
    order = {d: i for i, d in enumerate(g.boundary)}
    groups = []
    for v, ds in rot.items():
        pos = [order[d] for d in ds]
        # find the rotation putting this vertex's legs in boundary order
        k = min(range(len(ds)), key=lambda i: pos[i])
        cyc = pos[k:] + pos[:k]
        if cyc != sorted(cyc):
            raise GraphError("boundary order is inconsistent with the embedding")
        w = vec[v]
        if k:
            w = rotate(w, len(ds) - k)
        groups.append((cyc, w))
    return _assemble(groups) * scalar


def _assemble(groups):
    """Tensor the pieces of a disconnected graph into one boundary vector.

    Each group is (sorted boundary positions, vector over those legs).  The
    pieces form a non-crossing partition of the boundary, so some piece
    always occupies a run of consecutive positions; it is folded into the
    piece owning the position just before the run (or just after, at the
    start of the boundary).
    """
    groups = [(list(c), w) for c, w in groups]
    while len(groups) > 1:
        owner = {p: gi for gi, (c, _) in enumerate(groups) for p in c}
        allpos = sorted(owner)
        rank = {p: i for i, p in enumerate(allpos)}
        gi = next((gi for gi, (c, _) in enumerate(groups)
                   if rank[c[-1]] - rank[c[0]] == len(c) - 1), None)
        if gi is None:
            raise GraphError("components with legs interleave on the boundary")
        c, w = groups[gi]
        first = rank[c[0]]
        if first == 0:
            hi = owner[allpos[len(c)]]
            hc, hw = groups[hi]
            merged = (c + hc, concat(w, hw))
        else:
            hi = owner[allpos[first - 1]]
            hc, hw = groups[hi]
            j = hc.index(allpos[first - 1]) + 1          # legs of H before the gap
            r = len(hc)
            if j == r:
                merged = (hc + c, concat(hw, w))
            else:
                v = concat(rotate(hw, r - j), w)
                v = rotate(v, len(v.labels) - (r - j))
                merged = (hc[:j] + c + hc[j:], v)
        groups = [g for k, g in enumerate(groups) if k not in (gi, hi)] + [merged]
    return groups[0][1]




def merge_vertices(g, edge):
    """Contract the edge (a, b) between distinct vertices."""
    a, b = edge
    where = g.vertex_of()
    u, v = where[a], where[b]
    if u == v:
        raise GraphError("merge_vertices needs an edge between distinct vertices")
    if g.pair.get(a) != b:
        raise GraphError(f"darts {a}, {b} do not form an edge")
    h = g.copy()
    wu, du = _rotate_to(h.vec[u], h.rot[u], a, len(h.rot[u]) - 1)
    wv, dv = _rotate_to(h.vec[v], h.rot[v], b, 0)
    del h.pair[a], h.pair[b], h.rot[u], h.rot[v], h.vec[u], h.vec[v]
    del h.color[a], h.color[b]
    nv = h._new_vertex()
    h.rot[nv] = du[:-1] + dv[1:]
    h.vec[nv] = compose(wu, wv)
    return h


# ---------------------------------------------------------------------------
# linearity and regular loops

class MultiColorGraph:
    """Graph whose edges may carry direct sums of simples.

    ``summands[d]`` lists the simple summands of dart d's color; the two
    darts of an edge list dual summands in the same order.  ``family[v]``
    maps a tuple of summand indices (one per dart of v) to the vertex
    vector for that choice; missing keys mean the projection is zero.
    """

    def __init__(self, cat, rot, summands, pair, family, boundary, loops=()):
        self.cat = cat
        self.rot = {v: list(ds) for v, ds in rot.items()}
        self.summands = {d: list(s) for d, s in summands.items()}
        self.pair = dict(pair)
        self.family = family
        self.boundary = list(boundary)
        self.loops = list(loops)


def expand_colors(mg):
    """Sum over simple summands of every non-simple edge (and leg)."""
    for a, b in mg.pair.items():
        sa, sb = mg.summands[a], mg.summands[b]
        if len(sa) != len(sb) or any(mg.cat.dual[x] != y for x, y in zip(sa, sb)):
            raise GraphError(f"edge ({a},{b}) lists non-dual summands")
    edges = sorted({(min(a, b), max(a, b)) for a, b in mg.pair.items()})
    legs = [d for d in mg.boundary]
    units = edges + [(d, None) for d in legs]
    ranges = [range(len(mg.summands[a])) for a, _ in units]
    out = GraphSum()
    for choice in itertools.product(*ranges):
        pick = {}
        for (a, b), k in zip(units, choice):
            pick[a] = k
            if b is not None:
                pick[b] = k
        vec = {}
        ok = True
        for v, ds in mg.rot.items():
            key = tuple(pick[d] for d in ds)
            w = mg.family[v].get(key)
            if w is None:
                ok = False
                break
            vec[v] = w
        if not ok:
            continue
        color = {d: mg.summands[d][pick[d]] for ds in mg.rot.values() for d in ds}
        g = EmbeddedGraph(mg.cat, mg.rot, color, mg.pair, vec, mg.boundary, mg.loops)
        out.terms.append((mg.cat.field.one, g))
    return out


def regular_color(cat):
    """Coloring {i: d_i} of the regular object."""
    return {i: cat.qdim[i] for i in range(cat.rank)}


def insert_regular_loop(g, face=None):
    """Add sum_i d_i (loop colored i) inside ``face`` (index into g.faces())."""
    if face is not None:
        fs = g.faces()
        if not 0 <= face < max(1, len(fs)):
            raise GraphError(f"no face {face}")
    terms = []
    for i in range(g.cat.rank):
        h = g.copy()
        h.add_loop({i: g.cat.field.one})
        terms.append((g.cat.qdim[i], h))
    return GraphSum(terms)


# ---------------------------------------------------------------------------
# cut-and-resolve

def resolve_cable(g, cable, fused):
    """Replace the strands ``cable`` by two vertices joined by one edge.

    ``cable`` lists darts p_1..p_m on one side of a transversal segment.
    Going counterclockwise around the new vertex A (placed on the p-side)
    one meets the fused dart first and then p_m, ..., p_1; the partner of
    each p_j ends up at the second new vertex on the other side.

    With ``fused`` None the result is a GraphSum over fused labels c
    (weighted d_c) and dual-basis pairs, evaluating to the same vector as
    ``g``.  With ``fused`` = (pos_a, pos_b) the two new darts become boundary
    legs inserted at those positions of the boundary order; the result is
    then a dict {c: GraphSum} without the d_c weight.
    """
    cat = g.cat
    X = [g.color[p] for p in cable]
    qs = [g.pair[p] for p in cable]
    word = (None,) + tuple(cat.dual[x] for x in reversed(X))
    out = {} if fused is not None else GraphSum()
    for c in range(cat.rank):
        w = (c,) + word[1:]
        es, duals = dual_basis(cat, w)
        if not es:
            continue
        for ea, eb in zip(es, duals):
            h = g.copy()
            for p, q in zip(cable, qs):
                del h.pair[p], h.pair[q]
            da = h.add_vertex(ea)
            db = h.add_vertex(rotate(eb))
            # da = [fused, p_m*, ..., p_1*], db = [fused*, q_1*, ..., q_m*]
            for j, p in enumerate(reversed(cable)):
                h.connect(da[1 + j], p)
            for j, q in enumerate(qs):
                h.connect(db[1 + j], q)
            if fused is None:
                h.connect(da[0], db[0])
                out.terms.append((cat.qdim[c], h))
            else:
                pos_a, pos_b = fused
                bd = list(h.boundary)
                ins = sorted([(pos_a, da[0]), (pos_b, db[0])], reverse=True)
                for pos, d in ins:
                    bd.insert(pos, d)
                h.boundary = bd
                out.setdefault(c, GraphSum()).terms.append((cat.field.one, h))
    return out


def cut_annulus(g):
    """Cut an annulus graph along its radial arc.

    The darts in ``g.cut`` (inner to outer) are resolved into one strand of
    label c on each side of the cut.  Returns {c: GraphSum} of disk graphs
    whose boundary is: the leg on the side where the cut darts start, then
    the original boundary, then the leg on the other side.  Each term
    carries the weight d_c.
    """
    if g.ambient != "annulus":
        raise GraphError("cut_annulus needs an annulus graph")
    h = g.copy()
    h.ambient = "disk"
    cable = list(reversed(h.cut))
    m = len(h.boundary)
    res = resolve_cable(h, cable, fused=(0, m))
    out = {}
    for c, gs in res.items():
        for coef, k in gs.terms:
            k.cut = []
        out[c] = gs.scaled(g.cat.qdim[c])
    return out


# ---------------------------------------------------------------------------

def theta_graph(cat, phi, psi):
    """Closed graph joining phi in <V1..Vn> to psi in <Vn*..V1*> strand by strand."""
    g = EmbeddedGraph(cat)
    da = g.add_vertex(phi)
    db = g.add_vertex(psi)
    n = len(da)
    for j in range(n):
        g.connect(da[n - 1 - j], db[j])
    return g


def edge_crossing_identity_check(V, W, Phi, i):
    """Both sides of moving a morphism across a resolved edge.

    Args:
        V, W: objects (morphisms.Obj).
        Phi: morphism V -> W.
        i: simple label.

    Compares sum_a (a o Phi) (x) b^a with sum_b a' (x) (Phi o b'^b) in
    Hom(V, i) (x) Hom(i, W), where a runs over a basis of Hom(W, i),
    a' over a basis of Hom(V, i), and b, b' over the trace-dual bases.
    Returns (equal, lhs, rhs) with tensors as dicts.
    """
    from .morphisms import Mor, Obj

    cat = V.cat
    I = Obj.simple(cat, i)

    def hom_basis(A, B):
        out = []
        for c in range(cat.rank):
            rl, _ = B.index(c)
            cl, _ = A.index(c)
            for r in range(len(rl)):
                for s in range(len(cl)):
                    blk = [[cat.field.one if (x, y) == (r, s) else cat.field.zero
                            for y in range(len(cl))] for x in range(len(rl))]
                    out.append(Mor(A, B, {c: blk}))
        return out

    def trace_dual(basis_a, basis_b):
        from .scalars import mat_inverse
        G = [[(a.compose(b)).trace() for b in basis_b] for a in basis_a]
        if not G:
            return []
        Gi = mat_inverse(G)
        duals = []
        for k in range(len(basis_a)):
            m = None
            for j, b in enumerate(basis_b):
                if Gi[j][k]:
                    t = b * Gi[j][k]
                    m = t if m is None else m + t
            duals.append(m if m is not None else Mor.zero(basis_b[0].src, basis_b[0].dst))
        return duals

    def flat(m, target):
        return tuple(x for c in sorted(target.charges()) for r in m.blocks.get(c, []) for x in r) \
            if m is not None else ()

    A = hom_basis(W, I)
    Bd = trace_dual(A, hom_basis(I, W))
    Ap = hom_basis(V, I)
    Bpd = trace_dual(Ap, hom_basis(I, V))
    # express each side in the product basis hom_basis(V, I) x hom_basis(I, W)
    HV = hom_basis(V, I)
    HW = hom_basis(I, W)

    def coords(m, basis):
        vec = []
        for b in basis:
            (c,) = b.blocks.keys()
            blk = b.blocks[c]
            r, s = next((x, y) for x in range(len(blk)) for y in range(len(blk[0])) if blk[x][y])
            vec.append(m.blocks[c][r][s] if c in m.blocks else cat.field.zero)
        return vec

    def tensor_sum(pairs):
        T = {}
        for m1, m2 in pairs:
            c1 = coords(m1, HV)
            c2 = coords(m2, HW)
            for x, a in enumerate(c1):
                if not a:
                    continue
                for y, b in enumerate(c2):
                    if b:
                        T[(x, y)] = T.get((x, y), 0) + a * b
        return {k: v for k, v in T.items() if v}

    lhs = tensor_sum([(a.compose(Phi), b) for a, b in zip(A, Bd)])
    rhs = tensor_sum([(a, Phi.compose(b)) for a, b in zip(Ap, Bpd)])
    return lhs == rhs, lhs, rhs


# ---------------------------------------------------------------------------
# JSON

def graph_to_json(g):
    cat = g.cat
    darts = sorted(g.color)
    idx = {d: i for i, d in enumerate(darts)}
    nxt = {}
    for v, ds in g.rot.items():
        for k, d in enumerate(ds):
            nxt[d] = ds[(k + 1) % len(ds)]
    verts = []
    for v in sorted(g.rot, key=repr):
        ds = g.rot[v]
        verts.append({"darts": [idx[d] for d in ds], "color": g.vec[v].to_json()})
    return {
        "format": "sng-1",
        "ambient": g.ambient,
        "darts": {
            "involution": [idx[g.pair[d]] if d in g.pair else None for d in darts],
            "rotation": [idx[nxt[d]] for d in darts],
        },
        "colors": [cat.labels[g.color[d]] for d in darts],
        "vertices": verts,
        "boundary": [idx[d] for d in g.boundary],
        "loops": [{cat.labels[x]: format_scalar(c, cat.field) for x, c in sorted(l.items())} for l in g.loops],
        "cut": [idx[d] for d in g.cut],
    }


def graph_from_json(cat, obj):
    try:
        n = len(obj["colors"])
        inv = obj["darts"]["involution"]
        rotation = obj["darts"].get("rotation")
        color = {d: cat.lookup(x) for d, x in enumerate(obj["colors"])}
        pair = {d: p for d, p in enumerate(inv) if p is not None}
        rot, vec = {}, {}
        for v, ent in enumerate(obj["vertices"]):
            ds = [int(d) for d in ent["darts"]]
            rot[v] = ds
            vec[v] = HomVector.from_json(cat, ent["color"])
        if rotation is not None:
            for v, ds in rot.items():
                for k, d in enumerate(ds):
                    if rotation[d] != ds[(k + 1) % len(ds)]:
                        raise GraphError(f"rotation array disagrees with vertex {v}")
        loops = [{cat.lookup(x): parse_scalar(str(c), cat.field) for x, c in l.items()}
                 for l in obj.get("loops", [])]
        g = EmbeddedGraph(cat, rot, color, pair, vec, [int(d) for d in obj.get("boundary", [])],
                          loops, obj.get("ambient", "disk"), [int(d) for d in obj.get("cut", [])])
    except (KeyError, TypeError, IndexError) as e:
        raise GraphError(f"malformed graph file: {e}") from None
    if len(inv) != n:
        raise GraphError("involution array has the wrong length")
    return g.validate()


# ---------------------------------------------------------------------------
# random graphs for property checks


def _random_vector(cat, labels, rng):
    ts = trees(cat, labels)
    if not ts:
        return None
    return HomVector(cat, labels, {t: cat.field(rng.randint(-3, 3) or 1) for t in ts})


def _random_vertex_labels(cat, first, arity, rng, tries=50):
    for _ in range(tries):
        labels = (first,) + tuple(rng.randrange(cat.rank) for _ in range(arity - 1))
        if trees(cat, labels):
            return labels
    return None


def random_planar_graph(cat, rng, n_ops=6, max_arity=4, close_prob=0.4, legs=None):
    """Grow a planar graph by attaching vertices at legs and closing adjacent legs.

    If ``legs`` is given, the graph is closed up until at most that many
    boundary legs remain (when the colors allow it).
    """
    g = EmbeddedGraph(cat)
    while True:
        k = rng.randint(1, max_arity)
        labels = _random_vertex_labels(cat, rng.randrange(cat.rank), k, rng)
        if labels:
            break
    ds = g.add_vertex(_random_vector(cat, labels, rng))
    g.boundary = list(ds)
    for _ in range(n_ops):
        bd = g.boundary
        if len(bd) >= 2 and rng.random() < close_prob:
            i = rng.randrange(len(bd))
            a, b = bd[i], bd[(i + 1) % len(bd)]
            if cat.dual[g.color[a]] == g.color[b]:
                g.connect(a, b)
                g.boundary = [d for d in bd if d not in (a, b)]
                continue
        if not bd:
            break
        i = rng.randrange(len(bd))
        d = bd[i]
        arity = rng.randint(1, max_arity)
        labels = _random_vertex_labels(cat, cat.dual[g.color[d]], arity, rng)
        if labels is None:
            continue
        nd = g.add_vertex(_random_vector(cat, labels, rng))
        g.connect(d, nd[0])
        g.boundary = bd[:i] + nd[1:] + bd[i + 1:]
    if legs is not None:
        changed = True
        while len(g.boundary) > legs and changed:
            changed = False
            bd = g.boundary
            for i in range(len(bd)):
                a, b = bd[i], bd[(i + 1) % len(bd)]
                if a != b and cat.dual[g.color[a]] == g.color[b]:
                    g.connect(a, b)
                    g.boundary = [d for d in bd if d not in (a, b)]
                    changed = True
                    break
    return g.validate()
