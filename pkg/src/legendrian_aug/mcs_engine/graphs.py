"""Ruling graphs, their disk equations, and contraction along an edge.

A vertex label is a signed t-monomial ``(sign, exponents)``.  Edges are
``(tail, head, kind)`` with kind ``"D"`` or ``"N"``; a loop has tail == head.
For the vertex v, an edge contributes

    -x  if it leaves v,   x  if it enters v with kind D,
    1/x if it enters v with kind N,   -x^2 if it is a loop at v,

and the product of the contributions must equal the label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import LoopEdge
from ..kernels import PolySystem, decode_point, scan_system

__all__ = [
    "RulingGraph",
    "ruling_graph",
    "disk_equations",
    "contract",
    "count_solutions",
    "solutions",
    "random_ruling_graph",
    "edge_disks",
    "brute_count",
]


@dataclass(frozen=True)
class RulingGraph:
    labels: tuple  # per vertex: (sign, t-exponent tuple)
    edges: tuple  # (tail, head, kind)
    n_t: int

    @property
    def n_vertices(self):
        return len(self.labels)

    def degree(self, v):
        return sum((a == v) + (b == v) for a, b, _ in self.edges)

    def to_json(self):
        return {
            "vertices": [{"sign": s, "t": list(e)} for s, e in self.labels],
            "edges": [{"tail": a, "head": b, "type": k} for a, b, k in self.edges],
        }


def _disk_right_cusp(rho):
    """Map disk id -> right cusp event where the disk closes."""
    d = rho.diagram
    out = {}
    for ev in d.right_cusps:
        k = d.events[ev].position
        out[rho.disks[ev][k - 1]] = ev
    return out


def edge_disks(rho, crossing):
    """(tail disk, head disk, kind) of the edge for a switch (1-based ordinal)."""
    d = rho.diagram
    ev = d.crossings[crossing - 1]
    k = d.events[ev].position
    upper, lower = rho.disks[ev][k - 1], rho.disks[ev][k]
    t = rho.classification(crossing)
    if t == "S1":
        return upper, lower, "D"
    if t == "S2":  # the disk through k is inside the one through k+1
        return upper, lower, "N"
    if t == "S3":  # the disk through k+1 is inside the one through k
        return lower, upper, "N"
    raise ValueError(f"crossing {crossing} is not a switch")


def ruling_graph(d, rho):
    """One vertex per disk of rho, one edge per switch (in crossing order)."""
    closes = _disk_right_cusp(rho)
    labels = []
    for disk in range(rho.n_disks):
        ev = closes[disk]
        comp = d.marked_component(ev)
        texp = [0] * d.n_components
        if comp is not None:
            texp[comp] = 1
        labels.append((-1, tuple(texp)))
    edges = tuple(edge_disks(rho, c) for c in rho.switches)
    return RulingGraph(tuple(labels), edges, d.n_components)


def disk_equations(g):
    """Per vertex: (factors, label) with factors a list of (edge, kind) where
    kind is one of "out", "inD", "inN", "loop"."""
    eqs = []
    for v in range(g.n_vertices):
        factors = []
        for j, (a, b, k) in enumerate(g.edges):
            if a == v and b == v:
                factors.append((j, "loop"))
            elif a == v:
                factors.append((j, "out"))
            elif b == v:
                factors.append((j, "in" + k))
        eqs.append((factors, g.labels[v]))
    return eqs


def _poly_system(g, fq):
    """Equations prod(y) - w = 0 over the units (t_1..t_c, x_1..x_n)."""
    n_t = g.n_t
    eqs = []
    for factors, (sign, texp) in disk_equations(g):
        sgn = 1
        fac = []
        for j, kind in factors:
            var = n_t + j
            if kind == "out":
                sgn = -sgn
                fac.append((var, False))
            elif kind == "inD":
                fac.append((var, False))
            elif kind == "inN":
                fac.append((var, True))
            else:
                sgn = -sgn
                fac += [(var, False), (var, False)]
        rhs = []
        for i, e in enumerate(texp):
            rhs += [(i, e < 0)] * abs(e)
        eqs.append([(fq.from_int(sgn), fac), (fq.neg(fq.from_int(sign)), rhs)])
    return PolySystem(eqs, n_t + len(g.edges), 0)


def count_solutions(g, fq, cap=None):
    """|Z(g)|: points of (F^x)^(c + n) solving every disk equation."""
    return scan_system(fq, _poly_system(g, fq), cap=cap)


def solutions(g, fq, cap=None):
    """Solutions as (t values, x values) in box order."""
    system = _poly_system(g, fq)
    hits = scan_system(fq, system, collect=True, cap=cap)
    out = []
    for idx in hits:
        pt = decode_point(int(idx), system.n_units, 0, fq.q)
        out.append((pt[: g.n_t], pt[g.n_t:]))
    return out


def contract(g, edge):
    """Contract along ``edge``; returns (new graph, s) with s the number of
    edges removed."""
    vi, vj, kind = g.edges[edge]
    if vi == vj:
        raise LoopEdge(f"edge {edge} is a loop")
    removed = [e for e, (a, b, k) in enumerate(g.edges) if {a, b} == {vi, vj} and k == kind]
    s = len(removed)
    (si, ti), (sj, tj) = g.labels[vi], g.labels[vj]
    sign = (-1) ** s
    if kind == "N":
        label = (sign * si * sj, tuple(a + b for a, b in zip(ti, tj)))
    else:
        label = (sign * si * sj, tuple(b - a for a, b in zip(ti, tj)))
    # vi and vj merge into vj's slot renumbered; vi disappears
    keep = [v for v in range(g.n_vertices) if v != vi]
    new_id = {v: n for n, v in enumerate(keep)}
    new_id[vi] = new_id[vj]
    labels = [g.labels[v] for v in keep]
    labels[new_id[vj]] = label
    edges = []
    for e, (a, b, k) in enumerate(g.edges):
        if e in removed:
            continue
        if kind == "D" and (a == vi) != (b == vi):
            k = "N" if k == "D" else "D"
        edges.append((new_id[a], new_id[b], k))
    return RulingGraph(tuple(labels), tuple(edges), g.n_t), s


def random_ruling_graph(rng, max_vertices=5, max_edges=8, n_t=None):
    """A random graph with signed t-monomial labels (loops allowed)."""
    nv = rng.randint(2, max_vertices)
    ne = rng.randint(1, max_edges)
    n_t = n_t if n_t is not None else rng.randint(1, 2)
    labels = []
    for _ in range(nv):
        texp = [0] * n_t
        if rng.random() < 0.6:
            texp[rng.randrange(n_t)] = rng.choice((-1, 1))
        labels.append((rng.choice((-1, 1)), tuple(texp)))
    edges = []
    for _ in range(ne):
        a = rng.randrange(nv)
        b = a if rng.random() < 0.1 else rng.randrange(nv)
        edges.append((a, b, rng.choice("DN")))
    return RulingGraph(tuple(labels), tuple(edges), n_t)


def brute_count(g, fq):
    """|Z(g)| by a plain loop over all unit points (an independent route)."""
    units = list(fq.units())
    total = 0
    eqs = disk_equations(g)
    for pt in itertools.product(units, repeat=g.n_t + len(g.edges)):
        t, x = pt[: g.n_t], pt[g.n_t:]
        ok = True
        for factors, (sign, texp) in eqs:
            lhs = 1
            for j, kind in factors:
                if kind == "out":
                    y = fq.neg(x[j])
                elif kind == "inD":
                    y = x[j]
                elif kind == "inN":
                    y = fq.inv(x[j])
                else:
                    y = fq.neg(fq.mul(x[j], x[j]))
                lhs = fq.mul(lhs, y)
            rhs = fq.from_int(sign)
            for i, e in enumerate(texp):
                rhs = fq.mul(rhs, fq.pow(t[i], e))
            if lhs != rhs:
                ok = False
                break
        total += ok
    return total

