"""Seeded random graph generators: Erdos-Renyi, Barabasi-Albert, Affiliation.

All generators are deterministic for a given config + seed: the root
seed is split into independent per-phase substreams, so the emitted
edge set is bit-identical across runs.
"""

from __future__ import annotations

import array
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .graph import Graph

__all__ = [
    "GeneratorConfig",
    "BipartiteAffiliation",
    "generate",
    "generate_er",
    "generate_ba",
    "generate_affiliation",
    "fold_bipartite",
    "write_bipartite",
]

_ER_CHUNK = 1 << 16


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for one generator run.

    ``model`` selects which fields apply: ``er`` uses ``n, p`` (and
    ``directed``), ``ba`` uses ``n, mprime`` (edges per arriving node,
    also the seed clique size), ``affiliation`` uses ``actors`` (target
    actor count), ``cq``/``cu`` (edges copied per new actor/society),
    ``s`` (preferential-attachment edges per new actor) and ``beta``
    (probability an evolution step grows the actor side).
    """

    model: str
    seed: int
    n: int = 0
    p: float = 0.0
    mprime: int = 0
    actors: int = 0
    cq: int = 2
    cu: int = 2
    s: int = 2
    beta: float = 0.5
    directed: bool = False

    @classmethod
    def er(cls, n, p, seed, directed=False):
        return cls(model="er", seed=seed, n=n, p=p, directed=directed)

    @classmethod
    def ba(cls, n, mprime, seed):
        return cls(model="ba", seed=seed, n=n, mprime=mprime)

    @classmethod
    def affiliation(cls, actors, seed, cq=2, cu=2, s=2, beta=0.5):
        return cls(model="affiliation", seed=seed, actors=actors,
                   cq=cq, cu=cu, s=s, beta=beta)

    def validate(self):
        if self.model == "er":
            if self.n < 1:
                raise ValueError("er: n must be >= 1")
            # p = 1.0 is allowed for degenerate complete graphs
            if not 0.0 < self.p <= 1.0:
                raise ValueError("er: p must be in (0, 1]")
        elif self.model == "ba":
            if self.mprime < 1:
                raise ValueError("ba: mprime must be >= 1")
            if self.n < self.mprime:
                raise ValueError("ba: n must be >= mprime")
            if self.directed:
                raise ValueError("ba: directed mode not supported")
        elif self.model == "affiliation":
            if self.actors < 2:
                raise ValueError("affiliation: need at least 2 actors")
            if min(self.cq, self.cu, self.s) < 0:
                raise ValueError("affiliation: cq, cu, s must be >= 0")
            if not 0.0 < self.beta < 1.0:
                raise ValueError("affiliation: beta must be in (0, 1)")
            if self.directed:
                raise ValueError("affiliation: directed mode not supported")
        else:
            raise ValueError(f"unknown model {self.model!r}")
        return self


@dataclass
class BipartiteAffiliation:
    """Actor-society bipartite graph: ``edges`` holds (actor, society)."""

    actor_count: int
    society_count: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def society_members(self) -> list[list[int]]:
        members: list[list[int]] = [[] for _ in range(self.society_count)]
        for a, u in self.edges:
            members[u].append(a)
        return members


def generate(cfg: GeneratorConfig):
    """Dispatch on ``cfg.model``; affiliation returns (bipartite, graph)."""
    cfg.validate()
    if cfg.model == "er":
        return generate_er(cfg)
    if cfg.model == "ba":
        return generate_ba(cfg)
    return generate_affiliation(cfg)


def _skip_positions(rng, total, p):
    """Indices of successes among ``total`` Bernoulli(p) trials.

    Samples geometric gaps in chunks instead of testing every trial,
    so the cost is proportional to the number of successes.  The gap
    stream is identical to drawing ``rng.geometric(p)`` one at a time.
    """
    if total <= 0:
        return np.empty(0, dtype=np.int64)
    out = []
    pos = -1
    while pos < total:
        gaps = rng.geometric(p, size=_ER_CHUNK)
        chunk = pos + np.cumsum(gaps)
        out.append(chunk)
        pos = int(chunk[-1])
    hits = np.concatenate(out)
    return hits[hits < total]


def generate_er(cfg: GeneratorConfig) -> Graph:
    """G(n, p): every node pair is an edge independently with prob ``p``.

    With ``directed=True`` every ordered pair becomes an arc
    independently, which is the natural directed analogue.
    """
    cfg.validate()
    n, p = cfg.n, cfg.p
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    if cfg.directed:
        idx = _skip_positions(rng, n * (n - 1), p)
        src = idx // (n - 1) if n > 1 else idx
        rem = idx - src * (n - 1)
        dst = np.where(rem < src, rem, rem + 1)
    else:
        us = np.arange(n, dtype=np.int64)
        offsets = us * (n - 1) - us * (us - 1) // 2  # pairs before row u
        idx = _skip_positions(rng, n * (n - 1) // 2, p)
        src = np.searchsorted(offsets, idx, side="right") - 1
        dst = idx - offsets[src] + src + 1
    return Graph.from_edges(n, src, dst, directed=cfg.directed)


def generate_ba(cfg: GeneratorConfig) -> Graph:
    """Barabasi-Albert preferential attachment.

    Starts from a clique on ``mprime`` nodes; each arriving node links
    to ``mprime`` distinct existing nodes drawn with probability
    proportional to degree (resampling duplicate targets).  Sampling
    uses the endpoint-list trick: every edge contributes both endpoints
    to a pool, and a uniform pool index is an exact degree-proportional
    draw.
    """
    cfg.validate()
    n, mp = cfg.n, cfg.mprime
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    total_edges = mp * (mp - 1) // 2 + (n - mp) * mp
    ends = np.empty(max(2 * total_edges, 1), dtype=np.int32)
    src = np.empty(total_edges, dtype=np.int64)
    dst = np.empty(total_edges, dtype=np.int64)
    e = 0
    pos = 0
    for i in range(mp):
        for j in range(i + 1, mp):
            src[e] = i
            dst[e] = j
            e += 1
            ends[pos] = i
            ends[pos + 1] = j
            pos += 2
    for v in range(mp, n):
        chosen: set[int] = set()
        if pos == 0:
            # degenerate mprime=1 start: no edges yet, attach uniformly
            chosen.add(int(rng.integers(0, v)))
        while len(chosen) < mp:
            need = mp - len(chosen)
            draws = ends[rng.integers(0, pos, size=need + 2)]
            for t in draws.tolist():
                if t not in chosen:
                    chosen.add(t)
                    if len(chosen) == mp:
                        break
        for t in sorted(chosen):
            src[e] = v
            dst[e] = t
            e += 1
            ends[pos] = v
            ends[pos + 1] = t
            pos += 2
    return Graph.from_edges(n, src[:e], dst[:e], directed=False)


class _FoldedAccumulator:
    """Incrementally folded actor graph plus its degree-draw pool.

    Endpoints live in compact typed arrays; only the dedupe key set
    pays per-entry object overhead.
    """

    def __init__(self):
        self.seen: set[int] = set()       # canonical pair keys
        self.src = array.array("i")
        self.dst = array.array("i")
        self.pool = array.array("i")      # both endpoints of every edge

    def add(self, a, b):
        if a == b:
            return False
        lo, hi = (a, b) if a < b else (b, a)
        key = lo * 2_000_000_000 + hi
        if key in self.seen:
            return False
        self.seen.add(key)
        self.src.append(lo)
        self.dst.append(hi)
        self.pool.append(a)
        self.pool.append(b)
        return True

    def has(self, a, b):
        lo, hi = (a, b) if a < b else (b, a)
        return lo * 2_000_000_000 + hi in self.seen


def generate_affiliation(cfg: GeneratorConfig):
    """Grow a bipartite actor-society graph and fold it to an actor graph.

    Starting from a complete 2x2 bipartite seed, each evolution step
    adds an actor (probability ``beta``) or a society.  A new actor
    copies ``cq`` membership edges drawn uniformly from all existing
    non-helper edges and joins their societies (the prototype of each
    copy is therefore degree-proportional); a new society copies ``cu``
    edges the same way and recruits their actors.  Half of the
    membership mass thus lands on fresh societies, which keeps society
    sizes power-law with a sqrt(n)-scale maximum.  Each new actor
    additionally attaches to ``s`` distinct actors drawn proportionally
    to folded-graph degree; those links are realized as fresh
    two-member helper societies, so the returned social graph is
    exactly the folding of the returned bipartite graph.  Helper
    societies are invisible to copying.

    Returns ``(bipartite, folded_graph)``.
    """
    cfg.validate()
    ss = np.random.SeedSequence(cfg.seed).spawn(3)
    rng_evo = np.random.default_rng(ss[0])
    rng_copy = np.random.default_rng(ss[1])
    rng_pa = np.random.default_rng(ss[2])

    # copyable (non-helper) memberships per actor; helper memberships
    # are recorded separately and only surface in the bipartite output
    actor_societies: list[list[int]] = [[0, 1], [0, 1]]
    helper_memberships: list[tuple[int, int]] = []
    society_members: list[list[int]] = [[0, 1], [0, 1]]
    edge_actor = array.array("i", [0, 0, 1, 1])    # real edges, flat
    edge_society = array.array("i", [0, 1, 0, 1])
    folded = _FoldedAccumulator()
    folded.add(0, 1)

    def join(actor, society, helper=False):
        for other in society_members[society]:
            folded.add(actor, other)
        society_members[society].append(actor)
        if helper:
            helper_memberships.append((actor, society))
        else:
            actor_societies[actor].append(society)
            edge_actor.append(actor)
            edge_society.append(society)

    while len(actor_societies) < cfg.actors:
        if rng_evo.random() < cfg.beta:
            q = len(actor_societies)
            actor_societies.append([])
            mine = actor_societies[q]
            for _ in range(cfg.cq):
                u = edge_society[int(rng_copy.integers(0, len(edge_society)))]
                if u not in mine:
                    join(q, u)
            targets: set[int] = set()
            attempts = 0
            while len(targets) < cfg.s and attempts < 50 * (cfg.s + 1):
                attempts += 1
                t = folded.pool[int(rng_pa.integers(0, len(folded.pool)))]
                if t != q and t not in targets and not folded.has(q, t):
                    targets.add(t)
            for t in sorted(targets):
                society_members.append([])
                sid = len(society_members) - 1
                join(t, sid, helper=True)
                join(q, sid, helper=True)
        else:
            society_members.append([])
            sid = len(society_members) - 1
            mine = society_members[sid]
            for _ in range(cfg.cu):
                a = edge_actor[int(rng_copy.integers(0, len(edge_actor)))]
                if a not in mine:
                    join(a, sid)

    n_actors = len(actor_societies)
    edges = [(a, u) for a in range(n_actors) for u in actor_societies[a]]
    edges += helper_memberships
    edges.sort()
    bip = BipartiteAffiliation(n_actors, len(society_members), edges)
    g = Graph.from_edges(n_actors, np.array(folded.src, dtype=np.int64),
                         np.array(folded.dst, dtype=np.int64),
                         directed=False)
    return bip, g


def fold_bipartite(b: BipartiteAffiliation) -> Graph:
    """Project actors sharing at least one society onto a simple graph.

    Enumerates member pairs per society (quadratic in society size), so
    intended for inspection and moderate inputs; the generator folds
    incrementally instead.
    """
    src: list[int] = []
    dst: list[int] = []
    for members in b.society_members():
        members = sorted(set(members))
        for i, a in enumerate(members):
            for c in members[i + 1:]:
                src.append(a)
                dst.append(c)
    if b.actor_count < 1:
        raise ValueError("bipartite graph has no actors")
    return Graph.from_edges(b.actor_count, np.array(src, dtype=np.int64),
                            np.array(dst, dtype=np.int64), directed=False)


def write_bipartite(b: BipartiteAffiliation, out: IO[str] | str) -> None:
    """Write actor<TAB>society lines under a ``# bipartite`` header."""
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "wt", encoding="utf-8") as fh:
            write_bipartite(b, fh)
            return
    out.write(f"# bipartite actors={b.actor_count} "
              f"societies={b.society_count}\n")
    out.writelines(f"{a}\t{u}\n" for a, u in b.edges)
