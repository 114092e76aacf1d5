"""Weighted neighbor graphs on i-faces and the two-step high-order walk.

Two i-faces are neighbors when their union is an (i+1)-face; the edge
between them carries the degree of that union as multiplicity.  The walk
picks a containing (i+1)-face with probability proportional to its degree,
then moves to a uniformly random other i-face of it; this is exactly the
degree-weighted random walk on the neighbor graph.

Transition arithmetic is exact rational; simulation uses the counter-based
Philox generator keyed by the caller's seed (stream k of a batch uses key
``seed + k``), so trajectories are reproducible bit for bit for a fixed
numpy version.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .complexes import SimplicialComplex
from .errors import (
    BoundViolated,
    DisconnectedGraph,
    FaceNotInComplex,
    LevelOutOfRange,
    SupportMismatch,
)


@dataclass(frozen=True)
class IGraph:
    """Multigraph on the i-faces of a complex, with integer edge weights."""

    complex: SimplicialComplex
    level: int
    vertices: tuple            # lex-sorted i-faces
    index: dict                # face -> position in `vertices`
    edges: tuple               # ((u, v, weight), ...) with u < v
    neighbors: tuple           # per vertex: tuple of (other, weight)
    weighted_degree: tuple     # per vertex, self-loops excluded
    self_loop_weight: tuple    # per vertex
    connected: bool

    def total_degree(self, v):
        return self.weighted_degree[v] + self.self_loop_weight[v]

    def volume(self):
        return sum(self.weighted_degree[v] + self.self_loop_weight[v]
                   for v in range(len(self.vertices)))

    def order(self):
        return len(self.vertices)


def build_igraph(x, i):
    """Neighbor graph at level i: edge weight = degree of the shared face.

    Connectivity is computed and recorded but not required.
    """
    if not 0 <= i < x.dimension:
        raise LevelOutOfRange(f"walk level {i} outside [0, {x.dimension - 1}]")
    vertices = x.faces(i)
    index = {f: k for k, f in enumerate(vertices)}
    edges = []
    for tau in x.faces(i + 1):
        w = x.degree(tau)
        subs = [index[s] for s in combinations(tau, i + 1)]
        for a in range(len(subs)):
            for b in range(a + 1, len(subs)):
                u, v = subs[a], subs[b]
                edges.append((u, v, w) if u < v else (v, u, w))
    neighbors = [[] for _ in vertices]
    wdeg = [0] * len(vertices)
    for u, v, w in edges:
        neighbors[u].append((v, w))
        neighbors[v].append((u, w))
        wdeg[u] += w
        wdeg[v] += w
    connected = _connected(len(vertices), neighbors)
    return IGraph(
        complex=x,
        level=i,
        vertices=vertices,
        index=index,
        edges=tuple(sorted(edges)),
        neighbors=tuple(tuple(sorted(nb)) for nb in neighbors),
        weighted_degree=tuple(wdeg),
        self_loop_weight=(0,) * len(vertices),
        connected=connected,
    )


def _connected(n, neighbors):
    if n == 0:
        return True
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u, _ in neighbors[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == n


def lazy_igraph(g):
    """Add weighted-degree-many self-loops at every vertex.

    The resulting walk stays put with probability 1/2; the normalized
    adjacency becomes (I + A~)/2.
    """
    return IGraph(
        complex=g.complex,
        level=g.level,
        vertices=g.vertices,
        index=g.index,
        edges=g.edges,
        neighbors=g.neighbors,
        weighted_degree=g.weighted_degree,
        self_loop_weight=tuple(g.weighted_degree),
        connected=g.connected,
    )


@dataclass(frozen=True)
class Distribution:
    """Exact probability vector over the vertices of one graph."""

    graph: IGraph
    probs: tuple  # Fractions aligned with graph.vertices

    def __post_init__(self):
        if len(self.probs) != len(self.graph.vertices):
            raise SupportMismatch("probability vector length mismatch")
        if any(p < 0 for p in self.probs):
            raise SupportMismatch("negative probability")
        if sum(self.probs) != 1:
            raise SupportMismatch("probabilities must sum to exactly 1")

    @classmethod
    def point(cls, g, face):
        if face not in g.index:
            raise SupportMismatch(f"{face!r} is not a vertex of the graph")
        probs = [Fraction(0)] * len(g.vertices)
        probs[g.index[face]] = Fraction(1)
        return cls(g, tuple(probs))

    @classmethod
    def uniform(cls, g):
        n = len(g.vertices)
        return cls(g, (Fraction(1, n),) * n)

    @classmethod
    def from_mapping(cls, g, mapping):
        probs = [Fraction(0)] * len(g.vertices)
        for face, p in mapping.items():
            if face not in g.index:
                raise SupportMismatch(f"{face!r} is not a vertex of the graph")
            probs[g.index[face]] = Fraction(p)
        return cls(g, tuple(probs))

    def value(self, face):
        return self.probs[self.graph.index[face]]

    def as_dict(self):
        return {f: p for f, p in zip(self.graph.vertices, self.probs)}


def stationary(g):
    """Degree-proportional stationary distribution, exact."""
    total = g.volume()
    return Distribution(
        g, tuple(Fraction(g.total_degree(v), total) for v in range(g.order()))
    )


def transition_step(g, dist):
    """One exact step of the walk: row-stochastic degree-weighted move."""
    if dist.graph is not g:
        raise SupportMismatch("distribution belongs to a different graph")
    out = [Fraction(0)] * g.order()
    for u in range(g.order()):
        p = dist.probs[u]
        if p == 0:
            continue
        du = g.total_degree(u)
        loop = g.self_loop_weight[u]
        if loop:
            out[u] += p * Fraction(loop, du)
        for v, w in g.neighbors[u]:
            out[v] += p * Fraction(w, du)
    return Distribution(g, tuple(out))


def transition_row(g, face):
    """Exact one-step distribution from a point mass (a matrix row)."""
    return transition_step(g, Distribution.point(g, face))


# ---------------------------------------------------------------------------
# simulation


def _containing_table(x, i):
    """Per i-face: lex-sorted containing (i+1)-faces with cumulative degrees."""
    table = {}
    for sigma in x.faces(i):
        cof = x.cofaces(sigma)
        cum = np.cumsum([x.degree(t) for t in cof])
        table[sigma] = (cof, cum)
    return table


def _others(tau, sigma):
    """The i-faces of tau other than sigma, lex order."""
    return [s for s in combinations(tau, len(sigma)) if s != sigma]


def simulate_walk(x, i, sigma0, steps, seed, lazy=False):
    """Simulate the two-step walk; returns a trajectory of steps+1 faces.

    Each step draws a containing (i+1)-face with probability proportional
    to its degree (via an integer draw against cumulative degrees), then
    one of its other i-faces uniformly.  With ``lazy`` a fair coin is
    drawn first and the walk stays put on heads, matching the self-looped
    graph.  Deterministic given the seed.
    """
    if not 0 <= i < x.dimension:
        raise LevelOutOfRange(f"walk level {i} outside [0, {x.dimension - 1}]")
    if len(sigma0) != i + 1 or sigma0 not in x:
        raise FaceNotInComplex(f"{sigma0!r} is not an {i}-face")
    gen = np.random.Generator(np.random.Philox(key=seed))
    table = _containing_table(x, i)
    traj = [sigma0]
    cur = sigma0
    for _ in range(steps):
        if lazy and int(gen.integers(0, 2)) == 0:
            traj.append(cur)
            continue
        cof, cum = table[cur]
        r = int(gen.integers(0, int(cum[-1])))
        tau = cof[int(np.searchsorted(cum, r, side="right"))]
        choice = int(gen.integers(0, i + 1))
        cur = _others(tau, cur)[choice]
        traj.append(cur)
    return traj


def one_step_counts(x, i, sigma0, trials, seed, stream=0):
    """Empirical counts of single steps from sigma0 over many trials.

    Vectorized batch draw with the same two-stage integer scheme as
    :func:`simulate_walk`; stream k is keyed by ``seed + k``.  Returns a
    dict face -> count.
    """
    if not 0 <= i < x.dimension:
        raise LevelOutOfRange(f"walk level {i} outside [0, {x.dimension - 1}]")
    if len(sigma0) != i + 1 or sigma0 not in x:
        raise FaceNotInComplex(f"{sigma0!r} is not an {i}-face")
    gen = np.random.Generator(np.random.Philox(key=seed + stream))
    cof = x.cofaces(sigma0)
    cum = np.cumsum([x.degree(t) for t in cof])
    r = gen.integers(0, int(cum[-1]), size=trials)
    tau_idx = np.searchsorted(cum, r, side="right")
    pick = gen.integers(0, i + 1, size=trials)
    flat = np.bincount(tau_idx * (i + 1) + pick, minlength=len(cof) * (i + 1))
    counts = {}
    for t, tau in enumerate(cof):
        for c, other in enumerate(_others(tau, sigma0)):
            k = int(flat[t * (i + 1) + c])
            if k:
                counts[other] = counts.get(other, 0) + k
    return counts


# ---------------------------------------------------------------------------
# mixing verification


@dataclass(frozen=True)
class MixingReport:
    """Per-step distances against the spectral envelope."""

    ratio: float               # sqrt(d_max / d_min)
    rate: float                # the supplied lambda
    rows: tuple                # (t, distance, bound, margin)

    @property
    def passed(self):
        return all(m >= 0 for *_, m in self.rows)


def verify_mixing_bound(g, pi0, steps, rate, eps_num=1e-9):
    """Check ``|pi_t - pi|_2 <= sqrt(d_max/d_min) * rate**t + eps_num``.

    ``pi_t`` is iterated exactly; only the final comparison converts to
    float.  Refuses disconnected graphs (the spectral envelope argument
    needs a unique top eigenvector).  Raises BoundViolated with the
    offending step and both sides.
    """
    if not g.connected:
        raise DisconnectedGraph("mixing bound needs a connected graph")
    degs = [g.total_degree(v) for v in range(g.order())]
    ratio = math.sqrt(max(degs) / min(degs))
    pi = stationary(g)
    cur = pi0
    rows = []
    for t in range(steps + 1):
        dist_sq = sum((a - b) ** 2 for a, b in zip(cur.probs, pi.probs))
        dist = math.sqrt(float(dist_sq))
        bound = ratio * rate**t + eps_num
        if dist > bound:
            raise BoundViolated("mixing-bound", t, dist, bound)
        rows.append((t, dist, bound, bound - dist))
        if t < steps:
            cur = transition_step(g, cur)
    return MixingReport(ratio=ratio, rate=rate, rows=tuple(rows))


# ---------------------------------------------------------------------------
# trajectory dump


def format_trajectory(x, traj, level, seed, steps):
    """One face per line as sorted labels joined by commas, after a header."""
    lines = [f"# level={level} seed={seed} steps={steps}"]
    for face in traj:
        lines.append(x.face_label(face))
    return "\n".join(lines) + "\n"
