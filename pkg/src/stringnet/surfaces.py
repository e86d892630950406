"""PLCW cell decompositions of oriented surfaces.

Edges are oriented (tail -> head).  A 2-cell is a cyclic word of signed
edges read counterclockwise: ``(e, +1)`` traverses e from tail to head and
``(e, -1)`` from head to tail.  Cells may repeat edges and vertices, which
is what makes one-vertex presentations like the square torus legal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

__all__ = [
    "PLCWComplex", "SurfaceError", "standard_surface", "dual_graph", "DualGraph",
    "move_m1", "move_m2", "subdivide_edge", "split_cell", "random_refinement",
    "random_coarsening", "surface_from_json", "surface_to_json", "parse_surface_spec",
]


class SurfaceError(ValueError):
    """Invalid complex or move precondition violated."""


class PLCWComplex:
    """Vertices, oriented edges and counterclockwise cell words."""

    def __init__(self, vertices, edges, cells, name=None):
        self.vertices = list(vertices)
        self.edges = {e: tuple(th) for e, th in edges.items()}
        self.cells = [tuple((e, int(s)) for e, s in c) for c in cells]
        self.name = name

    # side helpers -----------------------------------------------------------
    def start(self, side):
        e, s = side
        t, h = self.edges[e]
        return t if s > 0 else h

    def end(self, side):
        e, s = side
        t, h = self.edges[e]
        return h if s > 0 else t

    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.cells)

    def occurrences(self):
        """{edge: [(cell index, position, sign)]}."""
        occ = {e: [] for e in self.edges}
        for ci, c in enumerate(self.cells):
            for j, (e, s) in enumerate(c):
                occ[e].append((ci, j, s))
        return occ

    def boundary_edges(self):
        return [e for e, o in self.occurrences().items() if len(o) == 1]

    @property
    def closed(self):
        return not self.boundary_edges()

    def corners(self, v=None):
        """Corners (cell, j): between side j and side j+1, at end(side j)."""
        out = []
        for ci, c in enumerate(self.cells):
            n = len(c)
            for j in range(n):
                if v is None or self.end(c[j]) == v:
                    out.append((ci, j))
        return out

    def valence(self, v):
        return len(self.corners(v))

    def genus(self):
        b = self._boundary_components()
        return (2 - self.euler_characteristic() - b) // 2

    def _boundary_components(self):
        bd = self.boundary_edges()
        if not bd:
            return 0
        adj = {}
        for e in bd:
            t, h = self.edges[e]
            adj.setdefault(t, set()).add(h)
            adj.setdefault(h, set()).add(t)
        seen, comps = set(), 0
        for v in adj:
            if v in seen:
                continue
            comps += 1
            stack = [v]
            while stack:
                x = stack.pop()
                if x not in seen:
                    seen.add(x)
                    stack.extend(adj[x])
        return comps

    def validate(self, closed=True):
        """Raise SurfaceError unless this is a valid oriented PLCW complex."""
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise SurfaceError("duplicate vertex names")
        for e, (t, h) in self.edges.items():
            if t not in vs or h not in vs:
                raise SurfaceError(f"edge {e} has an unknown endpoint")
        if not self.cells:
            raise SurfaceError("no cells")
        for ci, c in enumerate(self.cells):
            if not c:
                raise SurfaceError(f"cell {ci} is empty")
            for e, s in c:
                if e not in self.edges or s not in (1, -1):
                    raise SurfaceError(f"cell {ci} references unknown edge {e!r}")
            for j in range(len(c)):
                if self.end(c[j]) != self.start(c[(j + 1) % len(c)]):
                    raise SurfaceError(f"cell {ci} is not a closed edge path at position {j}")
        for e, o in self.occurrences().items():
            if closed and len(o) != 2:
                raise SurfaceError(f"edge {e} appears {len(o)} times; a closed surface needs exactly 2")
            if len(o) > 2 or len(o) == 0:
                raise SurfaceError(f"edge {e} appears {len(o)} times")
            if len(o) == 2 and o[0][2] == o[1][2]:
                raise SurfaceError(f"edge {e} is traversed twice in the same direction; surface not oriented")
        used = {v for t_h in self.edges.values() for v in t_h}
        if used != vs:
            raise SurfaceError("isolated vertex")
        if closed:
            for v in self.vertices:
                if len(self._link_cycles(v)) != 1:
                    raise SurfaceError(f"the link of vertex {v} is not a single circle")
        # connectivity
        adj = {v: set() for v in vs}
        for t, h in self.edges.values():
            adj[t].add(h)
            adj[h].add(t)
        seen = set()
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(adj[x])
        if seen != vs:
            raise SurfaceError("complex is not connected")
        return self

    def _link_cycles(self, v):
        """Cycles of corners at v glued across edges."""
        occ = self.occurrences()
        nxt = {}
        for ci, j in self.corners(v):
            c = self.cells[ci]
            e, s = c[(j + 1) % len(c)]        # outgoing side, starts at v
            other = [(cj, jj, ss) for (cj, jj, ss) in occ[e] if (cj, jj) != (ci, (j + 1) % len(c))]
            if not other:
                continue
            cj, jj, ss = other[0]
            # in the other occurrence the same end of e is the end of that side
            nxt[(ci, j)] = (cj, jj)
        cycles, seen = [], set()
        for k in nxt:
            if k in seen:
                continue
            cyc = []
            x = k
            while x not in seen and x in nxt:
                seen.add(x)
                cyc.append(x)
                x = nxt[x]
            cycles.append(cyc)
        return cycles

    def copy(self):
        return PLCWComplex(self.vertices, self.edges, self.cells, self.name)

    def summary(self):
        return {"vertices": len(self.vertices), "edges": len(self.edges), "cells": len(self.cells),
                "euler_characteristic": self.euler_characteristic(), "genus": self.genus()}

    def __eq__(self, other):
        return isinstance(other, PLCWComplex) and surface_to_json(self) == surface_to_json(other)

    def __repr__(self):
        return f"PLCWComplex(V={len(self.vertices)}, E={len(self.edges)}, F={len(self.cells)})"

    def _fresh(self, prefix, used):
        for k in itertools.count():
            name = f"{prefix}{k}"
            if name not in used:
                return name


# ---------------------------------------------------------------------------

def standard_surface(kind, n=None):
    """Small closed complexes.

    ``sphere`` with n cells: n = 2 gives two monogons on one loop edge,
    n >= 3 gives n lunes between two poles.  ``equator_sphere`` with n
    gives two n-gons glued along an n-vertex equator.  ``torus_square`` is
    the square with opposite sides identified, ``genus`` with g the
    standard 4g-gon.
    """
    if kind == "sphere":
        n = 2 if n is None else n
        if n == 2:
            return PLCWComplex(["v0"], {"e0": ("v0", "v0")},
                               [[("e0", 1)], [("e0", -1)]], name="sphere(2)").validate()
        if n < 2:
            raise SurfaceError("sphere needs at least 2 cells")
        edges = {f"e{j}": ("N", "S") for j in range(n)}
        cells = [[(f"e{j}", 1), (f"e{(j + 1) % n}", -1)] for j in range(n)]
        return PLCWComplex(["N", "S"], edges, cells, name=f"sphere({n})").validate()
    if kind == "equator_sphere":
        if n is None or n < 1:
            raise SurfaceError("equator_sphere needs n >= 1")
        vs = [f"v{j}" for j in range(n)]
        edges = {f"e{j}": (vs[j], vs[(j + 1) % n]) for j in range(n)}
        north = [(f"e{j}", 1) for j in range(n)]
        south = [(f"e{j}", -1) for j in reversed(range(n))]
        return PLCWComplex(vs, edges, [north, south], name=f"equator_sphere({n})").validate()
    if kind == "torus_square":
        return PLCWComplex(["v0"], {"a": ("v0", "v0"), "b": ("v0", "v0")},
                           [[("a", 1), ("b", 1), ("a", -1), ("b", -1)]], name="torus_square").validate()
    if kind == "genus":
        g = n
        if g is None or g < 0:
            raise SurfaceError("genus needs g >= 0")
        if g == 0:
            return standard_surface("sphere", 2)
        if g == 1:
            return standard_surface("torus_square")
        edges, word = {}, []
        for k in range(1, g + 1):
            a, b = f"a{k}", f"b{k}"
            edges[a] = ("v0", "v0")
            edges[b] = ("v0", "v0")
            word += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return PLCWComplex(["v0"], edges, [word], name=f"genus({g})").validate()
    raise SurfaceError(f"unknown surface kind {kind!r}")


def parse_surface_spec(text):
    """'torus_square' or 'torus', 'sphere(3)', 'genus(2)' or 'genus2', 'equator_sphere(4)'."""
    text = text.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise SurfaceError(f"cannot parse surface {text!r}")
        kind, arg = text[:-1].split("(", 1)
        try:
            n = int(arg)
        except ValueError:
            raise SurfaceError(f"cannot parse surface {text!r}") from None
        return standard_surface(kind.strip(), n)
    if text in ("torus_square", "torus"):
        return standard_surface("torus_square")
    if text == "sphere":
        return standard_surface("sphere", 2)
    m = re.fullmatch(r"(genus|sphere|equator_sphere)(\d+)", text)
    if m:
        return standard_surface(m.group(1), int(m.group(2)))
    raise SurfaceError(f"unknown surface {text!r}")


# ---------------------------------------------------------------------------

@dataclass
class DualGraph:
    """One vertex per cell with darts in cell-word order; one edge per edge.

    ``darts[c]`` lists (edge, sign) for the darts of dual vertex c;
    ``edge_darts[e]`` = ((cell, pos) of the + side, (cell, pos) of the - side).
    """

    darts: list
    edge_darts: dict

    def valence(self, c):
        return len(self.darts[c])


def dual_graph(cx):
    if not cx.closed:
        raise SurfaceError("dual_graph needs a closed surface")
    darts = [list(c) for c in cx.cells]
    ed = {}
    for e, o in cx.occurrences().items():
        plus = next((ci, j) for ci, j, s in o if s > 0)
        minus = next((ci, j) for ci, j, s in o if s < 0)
        ed[e] = (plus, minus)
    return DualGraph(darts, ed)


# ---------------------------------------------------------------------------
# moves

def subdivide_edge(cx, e, new_vertex=None, new_edges=None):
    """Inverse of M1: split e = (t -> h) into e' = (t -> q), e'' = (q -> h)."""
    if e not in cx.edges:
        raise SurfaceError(f"no edge {e!r}")
    t, h = cx.edges[e]
    q = new_vertex or cx._fresh("q", set(cx.vertices))
    used = set(cx.edges)
    if new_edges:
        e1, e2 = new_edges
    else:
        e1 = cx._fresh(f"{e}_", used)
        e2 = cx._fresh(f"{e}_", used | {e1})
    edges = {k: v for k, v in cx.edges.items() if k != e}
    edges[e1] = (t, q)
    edges[e2] = (q, h)
    cells = []
    for c in cx.cells:
        w = []
        for f, s in c:
            if f != e:
                w.append((f, s))
            elif s > 0:
                w += [(e1, 1), (e2, 1)]
            else:
                w += [(e2, -1), (e1, -1)]
        cells.append(w)
    return PLCWComplex(cx.vertices + [q], edges, cells, cx.name).validate(closed=cx.closed)


def move_m1(cx, v):
    """Erase a valence-two vertex, merging its two distinct edges."""
    if v not in cx.vertices:
        raise SurfaceError(f"no vertex {v!r}")
    inc = [e for e, (t, h) in cx.edges.items() if v in (t, h)]
    if cx.valence(v) != 2 or len(inc) != 2 or any(cx.edges[e] == (v, v) for e in inc):
        raise SurfaceError(f"vertex {v} does not have valence 2 with two distinct edges")
    e1, e2 = inc
    # orient: e1 into v, e2 out of v (flip signs where needed)
    flip = {}
    t1, h1 = cx.edges[e1]
    flip[e1] = 1 if h1 == v else -1
    t2, h2 = cx.edges[e2]
    flip[e2] = 1 if t2 == v else -1
    a = t1 if h1 == v else h1
    b = h2 if t2 == v else t2
    if a == v or b == v:
        raise SurfaceError("degenerate configuration at the vertex")
    edges = {k: val for k, val in cx.edges.items() if k not in (e1, e2)}
    edges[e1] = (a, b)
    cells = []
    for c in cx.cells:
        # after flipping, +e1 is always followed by +e2 and -e2 by -e1,
        # so dropping e2 leaves the merged edge in place
        cells.append([(f, s * flip.get(f, 1)) for f, s in c if f != e2])
    res = PLCWComplex([x for x in cx.vertices if x != v], edges, cells, cx.name)
    return res.validate(closed=cx.closed)


def split_cell(cx, ci, i, j, new_edge=None):
    """Inverse of M2: add an edge inside cell ci between corners i and j."""
    c = cx.cells[ci]
    n = len(c)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise SurfaceError("split_cell needs two distinct corners of the cell")
    f = new_edge or cx._fresh("f", set(cx.edges))
    vi, vj = cx.end(c[i]), cx.end(c[j])
    edges = dict(cx.edges)
    edges[f] = (vi, vj)
    c1 = [c[(k) % n] for k in range(i + 1, j + 1 if j > i else j + 1 + n)] + [(f, -1)]
    c2 = [c[k % n] for k in range(j + 1, i + 1 if i > j else i + 1 + n)] + [(f, 1)]
    cells = [w for k, w in enumerate(cx.cells) if k != ci] + [c1, c2]
    return PLCWComplex(cx.vertices, edges, cells, cx.name).validate(closed=cx.closed)


def move_m2(cx, e):
    """Erase an edge separating two distinct cells, merging them."""
    occ = cx.occurrences().get(e)
    if occ is None:
        raise SurfaceError(f"no edge {e!r}")
    if len(occ) != 2 or occ[0][0] == occ[1][0]:
        raise SurfaceError(f"edge {e} does not separate two distinct cells")
    (ca, ja, sa), (cb, jb, sb) = occ
    A, B = cx.cells[ca], cx.cells[cb]
    # A with e at the end, B rotated to start just after e
    A = A[ja + 1:] + A[:ja]
    B = B[jb + 1:] + B[:jb]
    merged = A + B
    t, h = cx.edges[e]
    edges = {k: v for k, v in cx.edges.items() if k != e}
    cells = [w for k, w in enumerate(cx.cells) if k not in (ca, cb)] + [merged]
    verts = [v for v in cx.vertices if any(v in th for th in edges.values())]
    if len(verts) != len(cx.vertices):
        raise SurfaceError(f"erasing {e} would isolate a vertex")
    return PLCWComplex(verts, edges, cells, cx.name).validate(closed=cx.closed)


def random_refinement(cx, rng):
    """One random inverse move (edge subdivision or cell split)."""
    if rng.random() < 0.5:
        e = rng.choice(sorted(cx.edges))
        return subdivide_edge(cx, e), ("subdivide", e)
    ci = rng.randrange(len(cx.cells))
    n = len(cx.cells[ci])
    if n < 2:
        e = rng.choice(sorted(cx.edges))
        return subdivide_edge(cx, e), ("subdivide", e)
    i, j = rng.sample(range(n), 2)
    return split_cell(cx, ci, i, j), ("split", ci, i, j)


def random_coarsening(cx, rng):
    """One random valid M1 or M2 move, or None if neither applies."""
    opts = []
    for v in cx.vertices:
        try:
            move_m1(cx, v)
            opts.append(("m1", v))
        except SurfaceError:
            pass
    for e in sorted(cx.edges):
        try:
            move_m2(cx, e)
            opts.append(("m2", e))
        except SurfaceError:
            pass
    if not opts:
        return None, None
    mv = rng.choice(opts)
    return (move_m1(cx, mv[1]) if mv[0] == "m1" else move_m2(cx, mv[1])), mv


# ---------------------------------------------------------------------------
# JSON

def surface_to_json(cx):
    return {
        "format": "plcw-1",
        "name": cx.name,
        "vertices": list(cx.vertices),
        "edges": {e: list(th) for e, th in cx.edges.items()},
        "cells": [[("" if s > 0 else "-") + e for e, s in c] for c in cx.cells],
    }


def surface_from_json(obj):
    try:
        vertices = [str(v) for v in obj["vertices"]]
        edges = {str(e): (str(th[0]), str(th[1])) for e, th in obj["edges"].items()}
        cells = []
        for c in obj["cells"]:
            w = []
            for tok in c:
                tok = str(tok)
                if tok.startswith("-"):
                    w.append((tok[1:], -1))
                else:
                    w.append((tok[1:] if tok.startswith("+") else tok, 1))
            cells.append(w)
    except (KeyError, TypeError, IndexError, AttributeError) as e:
        raise SurfaceError(f"malformed surface file: {e}") from None
    cx = PLCWComplex(vertices, edges, cells, obj.get("name"))
    try:
        closed = cx.closed
    except KeyError as e:
        raise SurfaceError(f"cell references unknown edge {e}") from None
    return cx.validate(closed=closed)
