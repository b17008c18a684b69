"""Pattern containment in the Kneser subgraph induced by a family.

A family spans a subgraph of the Kneser cube; "contains G" means a not
necessarily induced subgraph copy: an injection of V(G) into the family
sending every pattern edge to a disjoint pair.  Isolated pattern vertices
still consume distinct host vertices.

The search backtracks over pattern vertices in decreasing-degree order
(ties by label) and tries host candidates in canonical family order, so the
first witness found is deterministic.  Candidate sets are bitmasks over
family indices; forward checking abandons a branch as soon as some
unassigned pattern vertex has no remaining candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import PatternGraph
from .sets import Family, complement, kneser_adjacent, validate_ground, validate_mask

MAX_VERTICES = 1 << 20


class InducedKneser:
    """Disjointness graph on a family, adjacency rows built lazily per vertex."""

    def __init__(self, vertices: Family):
        if len(vertices) > MAX_VERTICES:
            raise ValueError(f"family too large: {len(vertices)} > {MAX_VERTICES}")
        self.vertices = vertices
        self.n = vertices.n
        self._index = {m: i for i, m in enumerate(vertices.members)}
        self._rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.vertices)

    def index_of(self, mask: int) -> int:
        return self._index[mask]

    def is_edge(self, i: int, j: int) -> bool:
        return kneser_adjacent(self.vertices.members[i], self.vertices.members[j])

    def neighbor_mask(self, i: int) -> int:
        """Bitset of family indices disjoint from member i."""
        row = self._rows.get(i)
        if row is not None:
            return row
        members = self.vertices.members
        mask = members[i]
        free = complement(mask, self.n)
        row = 0
        if 1 << free.bit_count() <= 2 * len(members):
            # every neighbor is a subset of the complement: enumerate submasks
            sub = free
            while True:
                j = self._index.get(sub)
                if j is not None and j != i:
                    row |= 1 << j
                if sub == 0:
                    break
                sub = (sub - 1) & free
        else:
            for j, other in enumerate(members):
                if other & mask == 0 and j != i:
                    row |= 1 << j
        self._rows[i] = row
        return row

    def degree(self, i: int) -> int:
        return self.neighbor_mask(i).bit_count()

    def max_degree(self) -> int:
        return max((self.degree(i) for i in range(len(self))), default=0)


def induced_kneser(fam: Family) -> InducedKneser:
    return InducedKneser(fam)


@dataclass(frozen=True)
class GraphWitness:
    """Injective map pattern vertex -> family index realizing every pattern edge."""

    mapping: dict[int, int]


def check_witness(host: InducedKneser, pattern: PatternGraph, witness: GraphWitness) -> bool:
    """Soundness: injectivity plus adjacency of every mapped pattern edge."""
    mapping = witness.mapping
    if sorted(mapping) != list(range(pattern.vertex_count)):
        return False
    if len(set(mapping.values())) != pattern.vertex_count:
        return False
    return all(host.is_edge(mapping[u], mapping[v]) for u, v in pattern.edges)


def _embed(pattern: PatternGraph, host_size: int, nbr, deg, forced=None):
    """Injective edge-preserving map of the pattern into an abstract host.

    nbr(i) and deg(i) describe the host graph as index bitsets.  With
    forced=(p, h) the pattern vertex p is pinned to host index h.  Returns
    the assignment dict or None.
    """
    pv = pattern.vertex_count
    if pv > host_size:
        return None
    pat_deg = pattern.degrees
    order = sorted(range(pv), key=lambda v: (-pat_deg[v], v))
    all_hosts = (1 << host_size) - 1

    assign: dict[int, int] = {}
    used = 0
    domains = [all_hosts] * pv

    if forced is not None:
        p, h = forced
        if deg(h) < pat_deg[p]:
            return None
        assign[p] = h
        used = 1 << h
        row = nbr(h)
        for u in range(pv):
            if pattern.adjacency[p] >> u & 1:
                domains[u] &= row
        order = [p] + [v for v in order if v != p]

    def place(pos: int, domains: list[int]) -> bool:
        if pos == pv:
            return True
        v = order[pos]
        if v in assign:
            return place(pos + 1, domains)
        cands = domains[v] & ~used_ref[0]
        while cands:
            low = cands & -cands
            cands ^= low
            h = low.bit_length() - 1
            if deg(h) < pat_deg[v]:
                continue
            row = nbr(h)
            new_domains = domains
            dead = False
            touched = False
            for u in range(pv):
                if pattern.adjacency[v] >> u & 1 and u not in assign:
                    if not touched:
                        new_domains = list(domains)
                        touched = True
                    new_domains[u] &= row
                    if new_domains[u] == 0:
                        dead = True
                        break
            if dead:
                continue
            assign[v] = h
            used_ref[0] |= low
            if place(pos + 1, new_domains):
                return True
            del assign[v]
            used_ref[0] ^= low
        return False

    used_ref = [used]
    if place(0, domains):
        return dict(assign)
    return None


def contains_subgraph(host: InducedKneser, pattern: PatternGraph) -> GraphWitness | None:
    """Exhaustive search for a subgraph copy of the pattern; None if absent."""
    mapping = _embed(pattern, len(host), host.neighbor_mask, host.degree)
    return GraphWitness(mapping) if mapping is not None else None


def is_free(fam: Family, pattern: PatternGraph) -> bool:
    """True when the subgraph induced by the family contains no copy of the pattern."""
    return contains_subgraph(induced_kneser(fam), pattern) is None


class IncrementalChecker:
    """Stack of vertices with pattern-freeness tracked across push/pop.

    Pushed masks must be distinct (the search engines guarantee this).
    Freeness is monotone under push, so only the depth of the first
    violation needs to be remembered.
    """

    def __init__(self, pattern: PatternGraph, n: int):
        validate_ground(n)
        self.pattern = pattern
        self.n = n
        self._masks: list[int] = []
        self._rows: list[int] = []
        self._violated_at: int | None = None

    def __len__(self) -> int:
        return len(self._masks)

    def push(self, mask: int) -> None:
        validate_mask(mask, self.n)
        idx = len(self._masks)
        row = 0
        for j, other in enumerate(self._masks):
            if kneser_adjacent(mask, other):
                row |= 1 << j
                self._rows[j] |= 1 << idx
        self._masks.append(mask)
        self._rows.append(row)
        if self._violated_at is None and self._completes_copy(idx):
            self._violated_at = len(self._masks)

    def pop(self) -> int:
        if not self._masks:
            raise IndexError("pop from empty checker")
        mask = self._masks.pop()
        idx = len(self._masks)
        self._rows.pop()
        keep = ~(1 << idx)
        for j in range(idx):
            self._rows[j] &= keep
        if self._violated_at is not None and self._violated_at > len(self._masks):
            self._violated_at = None
        return mask

    def currently_free(self) -> bool:
        return self._violated_at is None

    def current_family(self) -> Family:
        return Family.of(self.n, self._masks)

    def _completes_copy(self, new_index: int) -> bool:
        # any new copy must use the vertex just pushed
        pattern = self.pattern
        size = len(self._masks)
        if pattern.vertex_count > size:
            return False
        nbr = self._rows.__getitem__
        deg = lambda i: self._rows[i].bit_count()
        for p in range(pattern.vertex_count):
            if _embed(pattern, size, nbr, deg, forced=(p, new_index)) is not None:
                return True
        return False


def incremental_checker(pattern: PatternGraph, n: int) -> IncrementalChecker:
    return IncrementalChecker(pattern, n)
