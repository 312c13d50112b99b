"""Graph model for scar-supporting lattices.

Edges carry a flow label sigma in {-1, 0, +1} (0 marks isotropic SU(2) bonds),
a positive integer multiplier r, and a bond strength.  Two rules decide
whether a helical product state can live on the graph:

  * vertex rule: the signed flow into every vertex sums to zero;
  * circuit rule: around any closed path the accumulated phase sum(sigma*r)*q
    must vanish modulo 4K(kappa).

The circuit rule is checked on a fundamental-cycle basis only (cycle-space
linearity covers every other circuit) and is evaluated in exact integer
arithmetic on the rational tag q/(4K) = p/denominator.

On toroidal graphs the cycles that wrap the boundary are allowed a nonzero
winding (they only restrict the admissible q); the lattice-independence
classification constrains contractible cycles alone.  Each edge therefore
carries a boundary-crossing vector so cycle contractibility is computable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .elliptic import CommensurateQ
from .errors import (DisconnectedGraph, InconsistentPhases, ScarlabError,
                     UnsupportedDims)

CSSE = "csse"
SU2 = "su2"

CLASS_NONE = "None"
CLASS_DEPENDENT = "LatticeDependent"
CLASS_INDEPENDENT = "LatticeIndependent"
CLASS_UNKNOWN = "Unknown"

SIGMA_SEARCH_CAP = 30   # exact sigma-assignment search above this many CSSE edges


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    sigma: int
    kind: str = CSSE
    r: int = 1
    J: float = 1.0
    crossing: tuple = (0, 0)   # boundary-wrap counts (x, y)


@dataclass
class ScarGraph:
    num_vertices: int
    edges: list
    boundary: dict = field(default_factory=lambda: {"type": "none"})

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if e.u == e.v:
                raise ScarlabError(f"self-loop at vertex {e.u}")
            if not (0 <= e.u < self.num_vertices and 0 <= e.v < self.num_vertices):
                raise ScarlabError(f"edge ({e.u},{e.v}) outside vertex range")
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                raise ScarlabError(f"duplicate edge {key}")
            seen.add(key)
            if e.kind == SU2:
                if e.sigma != 0:
                    raise ScarlabError("SU(2) edges must carry sigma = 0")
            elif e.kind == CSSE:
                if e.sigma not in (-1, 1):
                    raise ScarlabError("CSSE edges must carry sigma = +1 or -1")
            else:
                raise ScarlabError(f"unknown edge kind {e.kind!r}")
            if e.r < 1:
                raise ScarlabError("multiplier r must be >= 1")

    def adjacency(self):
        """Per-vertex list of (edge_index, direction) with direction +1 for u->v."""
        adj = [[] for _ in range(self.num_vertices)]
        for i, e in enumerate(self.edges):
            adj[e.u].append((i, +1))
            adj[e.v].append((i, -1))
        return adj

    def to_json(self) -> str:
        doc = {
            "vertices": self.num_vertices,
            "edges": [{"u": e.u, "v": e.v, "sigma": e.sigma, "kind": e.kind,
                       "r": e.r, "J": e.J, "crossing": list(e.crossing)}
                      for e in self.edges],
            "boundary": dict(self.boundary),
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ScarGraph":
        doc = json.loads(text)
        boundary = dict(doc.get("boundary", {"type": "none"}))
        edges = []
        for rec in doc["edges"]:
            if "crossing" in rec:
                crossing = tuple(int(c) for c in rec["crossing"])
            else:
                crossing = _infer_crossing(rec, doc["vertices"], boundary)
            edges.append(Edge(u=int(rec["u"]), v=int(rec["v"]),
                              sigma=int(rec["sigma"]), kind=str(rec["kind"]),
                              r=int(rec.get("r", 1)), J=float(rec.get("J", 1.0)),
                              crossing=crossing))
        return cls(num_vertices=int(doc["vertices"]), edges=edges, boundary=boundary)


def _infer_crossing(rec, num_vertices, boundary) -> tuple:
    """Reconstruct boundary crossings for plain-grid vertex numbering.

    Only applies when vertices are numbered v = x + nx*y on a torus; other
    encodings get (0, 0), which is the conservative choice (every cycle is
    treated as contractible, so classification can only get stricter).
    """
    if boundary.get("type") not in ("toroidal", "toroidal_shifted"):
        return (0, 0)
    nx, ny = int(boundary.get("nx", 0)), int(boundary.get("ny", 0))
    if nx * ny != num_vertices or nx < 2 or ny < 1:
        return (0, 0)
    xu, yu = rec["u"] % nx, rec["u"] // nx
    xv, yv = rec["v"] % nx, rec["v"] // nx
    return (_wrap_count(xu, xv, nx), _wrap_count(yu, yv, ny))


def _wrap_count(a, b, n) -> int:
    """Wraps crossed going from coordinate a to b, minimal-step assumption."""
    if n < 3:
        return 0
    d = b - a
    dmin = (d + n // 2) % n - n // 2   # minimal-magnitude representative
    return (dmin - d) // n


def check_vertex_rule(g: ScarGraph) -> list:
    """Vertices where the signed sigma flow does not balance."""
    flow = [0] * g.num_vertices
    for e in g.edges:
        flow[e.u] += e.sigma
        flow[e.v] -= e.sigma
    return [n for n, s in enumerate(flow) if s != 0]


def _spanning_tree(g: ScarGraph):
    """BFS tree: (parent_edge per vertex as (edge_idx, dir), order, non-tree edges)."""
    adj = g.adjacency()
    parent = [None] * g.num_vertices
    seen = [False] * g.num_vertices
    seen[0] = True
    order = [0]
    tree_edges = set()
    queue = [0]
    while queue:
        n = queue.pop(0)
        for ei, dirn in adj[n]:
            e = g.edges[ei]
            m = e.v if dirn > 0 else e.u
            if not seen[m]:
                seen[m] = True
                parent[m] = (ei, dirn)
                tree_edges.add(ei)
                order.append(m)
                queue.append(m)
    if not all(seen):
        raise DisconnectedGraph(f"{seen.count(False)} vertices unreachable from vertex 0")
    chords = [i for i in range(len(g.edges)) if i not in tree_edges]
    return parent, order, chords


def _root_path(g: ScarGraph, parent, n):
    """Edge walk (edge_idx, dir) from the tree root down to vertex n."""
    path = []
    while parent[n] is not None:
        ei, dirn = parent[n]
        path.append((ei, dirn))
        e = g.edges[ei]
        n = e.u if dirn > 0 else e.v
    path.reverse()
    return path


def fundamental_cycles(g: ScarGraph) -> list:
    """One cycle per non-tree edge, each a list of (edge_index, direction)."""
    parent, _, chords = _spanning_tree(g)
    cycles = []
    for ci in chords:
        e = g.edges[ci]
        to_u = _root_path(g, parent, e.u)
        to_v = _root_path(g, parent, e.v)
        k = 0
        while k < len(to_u) and k < len(to_v) and to_u[k] == to_v[k]:
            k += 1
        # u -> v along the chord, v -> ancestor against the tree, ancestor -> u
        cycle = [(ci, +1)]
        cycle += [(ei, -d) for ei, d in reversed(to_v[k:])]
        cycle += to_u[k:]
        cycles.append(cycle)
    return cycles


def cycle_winding(g: ScarGraph, cycle) -> int:
    return sum(d * g.edges[ei].sigma * g.edges[ei].r for ei, d in cycle)


def cycle_crossing(g: ScarGraph, cycle) -> tuple:
    wx = sum(d * g.edges[ei].crossing[0] for ei, d in cycle)
    wy = sum(d * g.edges[ei].crossing[1] for ei, d in cycle)
    return (wx, wy)


def cycle_vertices(g: ScarGraph, cycle) -> list:
    verts = []
    for ei, d in cycle:
        e = g.edges[ei]
        verts.append(e.u if d > 0 else e.v)
    return verts


@dataclass
class RuleReport:
    vertex_violations: list
    circuit_constraints: list      # (vertex list, winding W) per fundamental cycle
    circuit_violations: list       # subset failing W * p/denom integer test
    admissible_q: str
    classification: str

    @property
    def satisfied(self) -> bool:
        return not self.vertex_violations and not self.circuit_violations


def _admissible_description(windings) -> str:
    nonzero = [abs(w) for w in windings if w != 0]
    if not nonzero:
        return "any commensurate q = 4pK(kappa)/denominator"
    g0 = 0
    for w in nonzero:
        g0 = math.gcd(g0, w)
    return f"q = 4pK(kappa)/d for integer p and any divisor d of {g0}"


def check_circuit_rule(g: ScarGraph, q: CommensurateQ) -> RuleReport:
    """Evaluate both rules for a given commensurate q; exact on the rational tag."""
    violations = check_vertex_rule(g)
    cycles = fundamental_cycles(g)
    constraints = []
    failed = []
    contractible_ok = True
    for cyc in cycles:
        w = cycle_winding(g, cyc)
        verts = cycle_vertices(g, cyc)
        constraints.append((verts, w))
        if (w * q.fraction).denominator != 1:
            failed.append((verts, w))
        if cycle_crossing(g, cyc) == (0, 0) and w != 0:
            contractible_ok = False
    if violations:
        classification = CLASS_NONE
    elif contractible_ok:
        classification = CLASS_INDEPENDENT
    else:
        classification = CLASS_DEPENDENT
    return RuleReport(vertex_violations=violations,
                      circuit_constraints=constraints,
                      circuit_violations=failed,
                      admissible_q=_admissible_description([w for _, w in constraints]),
                      classification=classification)


def assign_site_phases(g: ScarGraph, q: CommensurateQ, root: int = 0) -> list:
    """Per-vertex phase q_n as an exact Fraction of 4K(kappa), root at zero.

    Propagates q_m = q_n - sigma_nm * r * q over a breadth-first traversal and
    cross-checks every non-tree edge, so an inconsistent sigma pattern (a
    circuit-rule violation) is caught rather than silently averaged.
    """
    step = q.fraction
    adj = g.adjacency()
    phases = [None] * g.num_vertices
    phases[root] = Fraction(0)
    queue = [root]
    while queue:
        n = queue.pop(0)
        for ei, dirn in adj[n]:
            e = g.edges[ei]
            m = e.v if dirn > 0 else e.u
            sigma_nm = dirn * e.sigma
            expected = (phases[n] - sigma_nm * e.r * step) % 1
            if phases[m] is None:
                phases[m] = expected
                queue.append(m)
            elif phases[m] != expected:
                raise InconsistentPhases(
                    f"edge ({e.u},{e.v}) implies phase {expected} at vertex {m}, "
                    f"but propagation already fixed {phases[m]}")
    if any(p is None for p in phases):
        raise DisconnectedGraph("phase propagation did not reach every vertex")
    return phases


def as_uniform_csse(g: ScarGraph) -> ScarGraph:
    """Copy of the graph with every bond treated as a CSSE bond.

    Used to classify the underlying uniform lattice of a mixed-bond design:
    the classification question (which sigma assignments satisfy both rules)
    concerns the bond topology, not the couplings.
    """
    edges = [Edge(u=e.u, v=e.v, sigma=e.sigma if e.sigma != 0 else 1,
                  kind=CSSE, r=e.r, J=e.J, crossing=e.crossing)
             for e in g.edges]
    return ScarGraph(num_vertices=g.num_vertices, edges=edges, boundary=g.boundary)


def _csse_degrees(g: ScarGraph):
    deg = [0] * g.num_vertices
    for e in g.edges:
        if e.kind == CSSE:
            deg[e.u] += 1
            deg[e.v] += 1
    return deg


def classify(g: ScarGraph) -> str:
    """None / LatticeDependent / LatticeIndependent over all sigma assignments.

    The vertex rule is satisfiable iff every CSSE degree is even (an Eulerian
    orientation of each component realizes it).  Lattice independence
    additionally needs zero winding on every contractible fundamental cycle;
    that is decided by exhaustive assignment search with vertex-sum pruning,
    capped at SIGMA_SEARCH_CAP CSSE edges.
    """
    if any(d % 2 for d in _csse_degrees(g)):
        return CLASS_NONE
    csse_idx = [i for i, e in enumerate(g.edges) if e.kind == CSSE]
    if not csse_idx:
        return CLASS_INDEPENDENT
    if len(csse_idx) > SIGMA_SEARCH_CAP:
        return CLASS_UNKNOWN
    cycles = [c for c in fundamental_cycles(g) if cycle_crossing(g, c) == (0, 0)]
    if not cycles:
        return CLASS_INDEPENDENT

    pos = {ei: k for k, ei in enumerate(csse_idx)}
    # per-vertex incident (slot, direction) over CSSE edges only
    incident = [[] for _ in range(g.num_vertices)]
    for ei in csse_idx:
        e = g.edges[ei]
        incident[e.u].append((pos[ei], +1))
        incident[e.v].append((pos[ei], -1))
    # cycle -> list of (slot, coefficient d*r); SU(2) edges contribute nothing
    cyc_terms = []
    for cyc in cycles:
        terms = [(pos[ei], d * g.edges[ei].r) for ei, d in cyc if g.edges[ei].kind == CSSE]
        last = max((t[0] for t in terms), default=-1)
        cyc_terms.append((terms, last))

    sigma = [0] * len(csse_idx)

    def feasible_vertex(n) -> bool:
        total, free = 0, 0
        for slot, d in incident[n]:
            if sigma[slot] == 0:
                free += 1
            else:
                total += d * sigma[slot]
        return abs(total) <= free

    def dfs(k: int) -> bool:
        if k == len(csse_idx):
            return True
        e = g.edges[csse_idx[k]]
        for s in (1, -1):
            sigma[k] = s
            ok = feasible_vertex(e.u) and feasible_vertex(e.v)
            if ok:
                for terms, last in cyc_terms:
                    if last == k and sum(c * sigma[slot] for slot, c in terms) != 0:
                        ok = False
                        break
            if ok and dfs(k + 1):
                return True
        sigma[k] = 0
        return False

    return CLASS_INDEPENDENT if dfs(0) else CLASS_DEPENDENT


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _torus(nx, ny, shift=None):
    b = {"type": "toroidal", "nx": nx, "ny": ny}
    if shift is not None:
        b = {"type": "toroidal_shifted", "nx": nx, "ny": ny, "shift": shift}
    return b


def chain(N: int, J: float = 1.0) -> ScarGraph:
    """Periodic chain, sigma = +1 along the ring."""
    if N < 3:
        raise UnsupportedDims("chain needs N >= 3 to stay a simple graph")
    edges = [Edge(n, (n + 1) % N, +1, CSSE, 1, J,
                  crossing=(1 if n == N - 1 else 0, 0)) for n in range(N)]
    return ScarGraph(N, edges, _torus(N, 1))


def square(Nx: int, Ny: int, J: float = 1.0) -> ScarGraph:
    """Toroidal square lattice with diagonal phase flow (all plaquettes W = 0)."""
    if Nx < 3 or Ny < 3:
        raise UnsupportedDims("square torus needs Nx, Ny >= 3 to avoid duplicate edges")
    edges = []
    for y in range(Ny):
        for x in range(Nx):
            u = x + Nx * y
            edges.append(Edge(u, (x + 1) % Nx + Nx * y, -1, CSSE, 1, J,
                              crossing=(1 if x == Nx - 1 else 0, 0)))
            edges.append(Edge(u, x + Nx * ((y + 1) % Ny), -1, CSSE, 1, J,
                              crossing=(0, 1 if y == Ny - 1 else 0)))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny))


def square_shifted(Nx: int, Ny: int, shift: int | None = None, J: float = 1.0) -> ScarGraph:
    """Square lattice whose y-wrap is glued with an x shift (default |Nx-Ny|)."""
    if Nx < 3 or Ny < 3:
        raise UnsupportedDims("shifted square torus needs Nx, Ny >= 3")
    if shift is None:
        shift = abs(Nx - Ny)
    edges = []
    for y in range(Ny):
        for x in range(Nx):
            u = x + Nx * y
            edges.append(Edge(u, (x + 1) % Nx + Nx * y, -1, CSSE, 1, J,
                              crossing=(1 if x == Nx - 1 else 0, 0)))
            if y < Ny - 1:
                edges.append(Edge(u, x + Nx * (y + 1), -1, CSSE, 1, J))
            else:
                edges.append(Edge(u, (x - shift) % Nx, -1, CSSE, 1, J, crossing=(0, 1)))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny, shift=shift))


def _lieb_ids(i, j, Nx, Ny):
    cell = (i % Nx) + Nx * (j % Ny)
    return 3 * cell, 3 * cell + 1, 3 * cell + 2   # corner, x-midpoint, y-midpoint


def lieb(Nx: int, Ny: int, J: float = 1.0) -> ScarGraph:
    """Toroidal Lieb lattice; every bond is a half step of the diagonal flow."""
    if Nx < 2 or Ny < 2:
        raise UnsupportedDims("Lieb torus needs Nx, Ny >= 2")
    edges = []
    for j in range(Ny):
        for i in range(Nx):
            c, mx, my = _lieb_ids(i, j, Nx, Ny)
            cx, _, _ = _lieb_ids(i + 1, j, Nx, Ny)
            cy, _, _ = _lieb_ids(i, j + 1, Nx, Ny)
            edges.append(Edge(c, mx, -1, CSSE, 1, J))
            edges.append(Edge(mx, cx, -1, CSSE, 1, J,
                              crossing=(1 if i == Nx - 1 else 0, 0)))
            edges.append(Edge(c, my, -1, CSSE, 1, J))
            edges.append(Edge(my, cy, -1, CSSE, 1, J,
                              crossing=(0, 1 if j == Ny - 1 else 0)))
    return ScarGraph(3 * Nx * Ny, edges, _torus(Nx, Ny))


def triangular_su2(Nx: int, Ny: int, J: float = 1.0, Jprime: float = 1.0) -> ScarGraph:
    """Triangular lattice whose anti-diagonal bonds are isotropic SU(2).

    Removing the SU(2) bonds leaves the square lattice; they connect sites of
    equal phase under the diagonal flow, so both rules keep holding.
    """
    g = square(Nx, Ny, J=J)
    edges = list(g.edges)
    for y in range(Ny):
        for x in range(Nx):
            u = (x + 1) % Nx + Nx * y
            v = x + Nx * ((y + 1) % Ny)
            edges.append(Edge(u, v, 0, SU2, 1, Jprime,
                              crossing=(-1 if x == Nx - 1 else 0,
                                        1 if y == Ny - 1 else 0)))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny))


def kagome_su2(Nx: int, Ny: int, J: float = 1.0, Jprime: float = 1.0) -> ScarGraph:
    """Kagome lattice with the triangle-closing bonds made isotropic SU(2).

    Removing the SU(2) bonds leaves the Lieb lattice; each SU(2) bond joins
    the two midpoint sites of equal phase in a triangle.
    """
    g = lieb(Nx, Ny, J=J)
    edges = list(g.edges)
    for j in range(Ny):
        for i in range(Nx):
            _, mx, my = _lieb_ids(i, j, Nx, Ny)
            _, _, my2 = _lieb_ids(i + 1, j - 1, Nx, Ny)
            edges.append(Edge(mx, my, 0, SU2, 1, Jprime))
            edges.append(Edge(mx, my2, 0, SU2, 1, Jprime,
                              crossing=(1 if i == Nx - 1 else 0,
                                        -1 if j == 0 else 0)))
    return ScarGraph(3 * Nx * Ny, edges, _torus(Nx, Ny))


def honeycomb_su2(Nx: int, Ny: int, J: float = 1.0, Jprime: float = 1.0) -> ScarGraph:
    """Brick-wall honeycomb: horizontal helical chains tied by vertical SU(2) bonds.

    Every site keeps coordination three (two chain bonds plus one SU(2) bond);
    removing the SU(2) bonds leaves decoupled periodic chains.
    """
    if Nx < 4 or Nx % 2 or Ny < 2 or Ny % 2:
        raise UnsupportedDims("brick-wall honeycomb needs even Nx >= 4 and even Ny >= 2")
    edges = []
    for y in range(Ny):
        for x in range(Nx):
            u = x + Nx * y
            edges.append(Edge(u, (x + 1) % Nx + Nx * y, +1, CSSE, 1, J,
                              crossing=(1 if x == Nx - 1 else 0, 0)))
            if (x + y) % 2 == 0:
                edges.append(Edge(u, x + Nx * ((y + 1) % Ny), 0, SU2, 1, Jprime,
                                  crossing=(0, 1 if y == Ny - 1 else 0)))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny))


def modified_honeycomb(Nx: int, Ny: int, J: float = 1.0) -> ScarGraph:
    """Brick-wall honeycomb completed with the missing vertical bonds.

    Adding one nearest-neighbor bond per hexagon raises every coordination
    number from three to four, the minimal change that makes the vertex rule
    satisfiable; the completed graph is square-lattice-like and hosts both
    plaquette-locked and free-q scar patterns.
    """
    if Nx < 4 or Nx % 2 or Ny < 3:
        raise UnsupportedDims("modified honeycomb needs even Nx >= 4 and Ny >= 3")
    edges = []
    for y in range(Ny):
        for x in range(Nx):
            u = x + Nx * y
            edges.append(Edge(u, (x + 1) % Nx + Nx * y, -1, CSSE, 1, J,
                              crossing=(1 if x == Nx - 1 else 0, 0)))
            edges.append(Edge(u, x + Nx * ((y + 1) % Ny), -1, CSSE, 1, J,
                              crossing=(0, 1 if y == Ny - 1 else 0)))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny))


def trimer_ladder(L: int, J: float = 1.0, Jprime: float = 1.0) -> ScarGraph:
    """Ring of SU(2) trimers joined by two helical legs per rung pair.

    Sites 3t, 3t+1, 3t+2 form trimer t (isotropic triangle, one common phase);
    the outer sites of consecutive trimers are linked by sigma = +1 bonds.
    """
    if L < 3:
        raise UnsupportedDims("trimer ladder needs at least 3 trimers")
    edges = []
    for t in range(L):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        a2, c2 = 3 * ((t + 1) % L), 3 * ((t + 1) % L) + 2
        wrap = 1 if t == L - 1 else 0
        edges.append(Edge(a, b, 0, SU2, 1, J))
        edges.append(Edge(b, c, 0, SU2, 1, J))
        edges.append(Edge(a, c, 0, SU2, 1, J))
        edges.append(Edge(a, a2, +1, CSSE, 1, Jprime, crossing=(wrap, 0)))
        edges.append(Edge(c, c2, +1, CSSE, 1, Jprime, crossing=(wrap, 0)))
    return ScarGraph(3 * L, edges, _torus(L, 1))


def trimer_brickwall(Nx: int, Ny: int, J: float = 1.0, Jprime: float = 1.0) -> ScarGraph:
    """Helical chains stacked in rows, tied by vertical SU(2) trimers.

    Rows 3k, 3k+1, 3k+2 are bound into trimers column by column; the trimer
    bonds join equal-phase sites so they carry no arrowheads.
    """
    if Nx < 3 or Ny < 3 or Ny % 3:
        raise UnsupportedDims("trimer brick wall needs Nx >= 3 and Ny a multiple of 3")
    edges = []
    for y in range(Ny):
        for x in range(Nx):
            u = x + Nx * y
            edges.append(Edge(u, (x + 1) % Nx + Nx * y, +1, CSSE, 1, Jprime,
                              crossing=(1 if x == Nx - 1 else 0, 0)))
            if y % 3 != 2:
                edges.append(Edge(u, x + Nx * (y + 1), 0, SU2, 1, J))
    return ScarGraph(Nx * Ny, edges, _torus(Nx, Ny))


def nnn_chain(N: int, J: float = 1.0, Jnnn: float = 1.0) -> ScarGraph:
    """Periodic chain with next-nearest bonds carrying a doubled multiplier."""
    if N < 5:
        raise UnsupportedDims("next-nearest chain needs N >= 5 to stay simple")
    edges = []
    for n in range(N):
        edges.append(Edge(n, (n + 1) % N, +1, CSSE, 1, J,
                          crossing=(1 if n == N - 1 else 0, 0)))
        edges.append(Edge(n, (n + 2) % N, +1, CSSE, 2, Jnnn,
                          crossing=(1 if n >= N - 2 else 0, 0)))
    return ScarGraph(N, edges, _torus(N, 1))


GENERATORS = {
    "chain": chain,
    "square": square,
    "square_shifted": square_shifted,
    "lieb": lieb,
    "triangular_su2": triangular_su2,
    "kagome_su2": kagome_su2,
    "honeycomb_su2": honeycomb_su2,
    "modified_honeycomb": modified_honeycomb,
    "trimer_ladder": trimer_ladder,
    "trimer_brickwall": trimer_brickwall,
    "nnn_chain": nnn_chain,
}


def generate(kind: str, *dims, **options) -> ScarGraph:
    if kind not in GENERATORS:
        raise UnsupportedDims(f"unknown lattice kind {kind!r}; "
                              f"choose from {sorted(GENERATORS)}")
    return GENERATORS[kind](*dims, **options)
