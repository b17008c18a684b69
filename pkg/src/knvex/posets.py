"""Forbidden subposet machinery for the bipartite side of the problem.

Bipartite patterns reduce to posets: orienting every edge of a bipartite
graph into one side gives a height-2 poset whose copies inside a set family
obstruct pattern copies in the Kneser cube.  This module owns

  * the Poset type (strict order on <= 16 labeled elements, bitmask rows),
  * weak-copy detection in families (order-preserving injections; an
    injection makes every required inclusion proper automatically),
  * La(n, *) exact maximization at desk scale via the shared search engine,
  * bounded certification of e(P), the number of consecutive Boolean-cube
    levels that stay P-free,
  * the symmetric band extraction and the poset-copy -> graph-copy witness
    conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .freeness import GraphWitness, induced_kneser
from .patterns import Bipartition, PatternGraph, bipartition, make_pattern
from .sets import Family, complement, family_complement, level_slice, validate_ground

MAX_POSET_SIZE = 16


class CollisionError(ValueError):
    """A set and its complement straddle the two sides of a poset copy."""


@dataclass(frozen=True)
class Poset:
    """Strict partial order on 0..size-1; above[p] is the bitmask of q with p < q."""

    size: int
    above: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.size <= MAX_POSET_SIZE:
            raise ValueError(f"poset size must be 1..{MAX_POSET_SIZE}")
        if len(self.above) != self.size:
            raise ValueError("relation rows do not match size")
        for p, row in enumerate(self.above):
            if row >> self.size:
                raise ValueError("relation row mentions unknown element")
            if row >> p & 1:
                raise ValueError(f"reflexive relation at {p}")
            rest = row
            while rest:
                low = rest & -rest
                rest ^= low
                q = low.bit_length() - 1
                if self.above[q] >> p & 1:
                    raise ValueError(f"cycle between {p} and {q}")
                if self.above[q] & ~row:
                    raise ValueError("relation not transitively closed")

    @classmethod
    def from_relations(cls, size: int, pairs) -> "Poset":
        """Build from (p, q) pairs meaning p < q; transitive closure applied."""
        above = [0] * size
        for p, q in pairs:
            if not (0 <= p < size and 0 <= q < size):
                raise ValueError(f"relation ({p},{q}) outside 0..{size - 1}")
            if p == q:
                raise ValueError(f"reflexive relation at {p}")
            above[p] |= 1 << q
        changed = True
        while changed:
            changed = False
            for p in range(size):
                row = above[p]
                rest = row
                while rest:
                    low = rest & -rest
                    rest ^= low
                    row |= above[low.bit_length() - 1]
                if row != above[p]:
                    above[p] = row
                    changed = True
        for p in range(size):
            if above[p] >> p & 1:
                raise ValueError(f"relations are cyclic through {p}")
        return cls(size, tuple(above))

    @cached_property
    def below(self) -> tuple[int, ...]:
        rows = [0] * self.size
        for p in range(self.size):
            rest = self.above[p]
            while rest:
                low = rest & -rest
                rest ^= low
                rows[low.bit_length() - 1] |= 1 << p
        return tuple(rows)

    def less(self, p: int, q: int) -> bool:
        return bool(self.above[p] >> q & 1)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram arcs (p, q): p < q with nothing strictly between."""
        out = []
        for q in range(self.size):
            lower = self.below[q]
            rest = lower
            while rest:
                low = rest & -rest
                rest ^= low
                p = low.bit_length() - 1
                if self.above[p] & lower == 0:
                    out.append((p, q))
        return tuple(sorted(out))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Topological order, smallest label first among available minima."""
        remaining = set(range(self.size))
        placed = 0
        order = []
        while remaining:
            v = min(p for p in remaining if self.below[p] & ~placed == 0)
            order.append(v)
            remaining.remove(v)
            placed |= 1 << v
        return tuple(order)


def dual(poset: Poset) -> Poset:
    """Same elements with the order reversed; an involution."""
    return Poset(poset.size, poset.below)


def height(poset: Poset) -> int:
    """Size of the longest chain."""
    depth = [1] * poset.size
    for v in poset.linear_extension:
        rest = poset.below[v]
        while rest:
            low = rest & -rest
            rest ^= low
            depth[v] = max(depth[v], depth[low.bit_length() - 1] + 1)
    return max(depth)


def is_tree_poset(poset: Poset) -> bool:
    """Whether the Hasse diagram is a tree as an undirected graph."""
    edges = poset.covers
    if len(edges) != poset.size - 1:
        return False
    parent = list(range(poset.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in edges:
        rp, rq = find(p), find(q)
        if rp == rq:
            return False
        parent[rp] = rq
    return True


def poset_from_bipartite(graph: PatternGraph, side_a: frozenset[int] | None = None) -> Poset:
    """Height-2 poset on V(G): b < a for every edge with a on side A.

    side_a defaults to the canonical bipartition; an explicit side must be a
    valid 2-coloring class (both orientations of the same graph are useful).
    """
    bip = bipartition(graph)
    if bip is None:
        raise ValueError("graph is not bipartite")
    if side_a is None:
        side_a = bip.side_a
    else:
        side_a = frozenset(side_a)
        for u, v in graph.edges:
            if (u in side_a) == (v in side_a):
                raise ValueError(f"side {sorted(side_a)} does not split edge ({u},{v})")
    pairs = []
    for u, v in graph.edges:
        if u in side_a:
            pairs.append((v, u))
        else:
            pairs.append((u, v))
    return Poset.from_relations(graph.vertex_count, pairs)


def complete_three_level(s: int, t: int) -> Poset:
    """s bottoms under one middle element under t tops, all relations implied."""
    if s < 0 or t < 0:
        raise ValueError("side sizes must be nonnegative")
    size = s + 1 + t
    if size > MAX_POSET_SIZE:
        raise ValueError(f"poset size {size} exceeds {MAX_POSET_SIZE}")
    mid = s
    pairs = [(i, mid) for i in range(s)]
    pairs += [(mid, s + 1 + j) for j in range(t)]
    return Poset.from_relations(size, pairs)


def chain(length: int) -> Poset:
    return Poset.from_relations(length, [(i, i + 1) for i in range(length - 1)])


def antichain(size: int) -> Poset:
    return Poset.from_relations(size, [])


def v_poset() -> Poset:
    """One bottom below two tops."""
    return Poset.from_relations(3, [(0, 1), (0, 2)])


def lambda_poset() -> Poset:
    """Two bottoms below one top."""
    return complete_three_level(2, 0)


def butterfly() -> Poset:
    """Two bottoms each below the same two tops (the 4-cycle oriented alternately)."""
    return poset_from_bipartite(make_pattern("cycle", 4))


def crown(m: int) -> Poset:
    """The height-2 poset whose Hasse diagram is the cycle on m vertices (m even >= 4)."""
    if m < 4 or m % 2:
        raise ValueError("crown needs an even cycle length >= 4")
    return poset_from_bipartite(make_pattern("cycle", m))


def named_poset(name: str) -> Poset:
    """Resolve CLI poset names: butterfly, crown6, chain3, antichain4, V, Lambda, K2,1,3."""
    if name == "butterfly":
        return butterfly()
    if name == "V":
        return v_poset()
    if name == "Lambda":
        return lambda_poset()
    for prefix, builder in (("crown", crown), ("chain", chain), ("antichain", antichain)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return builder(int(name[len(prefix):]))
    parts = name.split(",")
    if len(parts) == 3 and parts[0].startswith("K") and parts[1] == "1":
        return complete_three_level(int(parts[0][1:]), int(parts[2]))
    raise ValueError(f"unknown poset name {name!r}")


def poset_to_text(poset: Poset) -> str:
    """Serialize: "e <size>" then one "u < v" cover line per Hasse arc."""
    lines = [f"e {poset.size}"]
    for p, q in poset.covers:
        lines.append(f"{p} < {q}")
    return "\n".join(lines) + "\n"


def poset_from_text(text: str) -> Poset:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("e "):
        raise ValueError("poset text must start with an 'e <size>' line")
    size = int(lines[0].split()[1])
    pairs = []
    for ln in lines[1:]:
        parts = ln.split("<")
        if len(parts) != 2:
            raise ValueError(f"bad relation line {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return Poset.from_relations(size, pairs)


@dataclass(frozen=True)
class PosetCopy:
    """Injective map poset element -> member mask with p < q turning into inclusion."""

    mapping: dict[int, int]


def _containment_rows(members: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """up[i]: indices of proper supersets of member i; down[i]: proper subsets."""
    count = len(members)
    up = [0] * count
    down = [0] * count
    for i in range(count):
        mi = members[i]
        for j in range(i + 1, count):
            mj = members[j]
            if mi & mj == mi:
                up[i] |= 1 << j
                down[j] |= 1 << i
            elif mi & mj == mj:
                up[j] |= 1 << i
                down[i] |= 1 << j
    return up, down


def _embed_poset(poset: Poset, count: int, up, down, forced=None):
    """Backtracking in linear-extension order with forward checking."""
    size = poset.size
    if size > count:
        return None
    all_hosts = (1 << count) - 1
    order = list(poset.linear_extension)
    assign: dict[int, int] = {}
    domains = [all_hosts] * size
    used = [0]

    if forced is not None:
        e, h = forced
        assign[e] = h
        used[0] = 1 << h
        for u in range(size):
            if poset.less(e, u):
                domains[u] &= up[h]
            elif poset.less(u, e):
                domains[u] &= down[h]
        order = [e] + [v for v in order if v != e]

    def place(pos: int, domains: list[int]) -> bool:
        if pos == size:
            return True
        e = order[pos]
        if e in assign:
            return place(pos + 1, domains)
        cands = domains[e] & ~used[0]
        while cands:
            low = cands & -cands
            cands ^= low
            h = low.bit_length() - 1
            new_domains = domains
            dead = False
            touched = False
            for u in range(size):
                if u in assign:
                    continue
                if poset.less(e, u):
                    narrowed = new_domains[u] & up[h]
                elif poset.less(u, e):
                    narrowed = new_domains[u] & down[h]
                else:
                    continue
                if not touched:
                    new_domains = list(new_domains)
                    touched = True
                new_domains[u] = narrowed
                if narrowed == 0:
                    dead = True
                    break
            if dead:
                continue
            assign[e] = h
            used[0] |= low
            if place(pos + 1, new_domains):
                return True
            del assign[e]
            used[0] ^= low
        return False

    if place(0, domains):
        return dict(assign)
    return None


def contains_poset_copy(fam: Family, poset: Poset) -> PosetCopy | None:
    """Search for a weak copy of the poset inside the family; None if absent."""
    members = fam.members
    up, down = _containment_rows(members)
    assign = _embed_poset(poset, len(members), up, down)
    if assign is None:
        return None
    return PosetCopy({e: members[i] for e, i in assign.items()})


class IncrementalPosetChecker:
    """push/pop stack tracking freeness from every poset in a forbidden list."""

    def __init__(self, forbidden: list[Poset], n: int):
        validate_ground(n)
        self.forbidden = list(forbidden)
        self.n = n
        self._masks: list[int] = []
        self._up: list[int] = []
        self._down: list[int] = []
        self._violated_at: int | None = None

    def __len__(self) -> int:
        return len(self._masks)

    def push(self, mask: int) -> None:
        idx = len(self._masks)
        up_row = down_row = 0
        for j, other in enumerate(self._masks):
            if other == mask:
                continue
            if other & mask == other:
                down_row |= 1 << j
                self._up[j] |= 1 << idx
            elif other & mask == mask:
                up_row |= 1 << j
                self._down[j] |= 1 << idx
        self._masks.append(mask)
        self._up.append(up_row)
        self._down.append(down_row)
        if self._violated_at is None and self._completes_copy(idx):
            self._violated_at = len(self._masks)

    def pop(self) -> int:
        if not self._masks:
            raise IndexError("pop from empty checker")
        mask = self._masks.pop()
        idx = len(self._masks)
        self._up.pop()
        self._down.pop()
        keep = ~(1 << idx)
        for j in range(idx):
            self._up[j] &= keep
            self._down[j] &= keep
        if self._violated_at is not None and self._violated_at > len(self._masks):
            self._violated_at = None
        return mask

    def currently_free(self) -> bool:
        return self._violated_at is None

    def _completes_copy(self, new_index: int) -> bool:
        count = len(self._masks)
        for poset in self.forbidden:
            if poset.size > count:
                continue
            for e in range(poset.size):
                if _embed_poset(poset, count, self._up, self._down, forced=(e, new_index)):
                    return True
        return False


@dataclass(frozen=True)
class LaResult:
    value: int
    witness: Family
    exact: bool


def la(
    n: int,
    forbidden: list[Poset],
    symmetric: bool = False,
    *,
    max_nodes: int | None = None,
) -> LaResult:
    """Largest family in 2^[n] avoiding weak copies of every forbidden poset.

    Exact for n <= 5 (branch and bound over the 2^n ground elements); with an
    exhausted node budget the value is still a certified lower bound.
    """
    validate_ground(n)
    if n > 5:
        raise ValueError("exact La computation is limited to n <= 5")
    from .search import max_family_avoiding  # deferred: search imports this module

    ground = level_slice(n, 0, n)
    # middle-level windows seed the incumbent when they happen to be free
    seeds = []
    for width in (1, 2):
        lo = (n - width + 1) // 2
        if lo + width - 1 <= n:
            seeds.append(level_slice(n, lo, lo + width - 1))
    checker = IncrementalPosetChecker(forbidden, n)
    value, witness, exact = max_family_avoiding(
        ground, checker, symmetric=symmetric, seeds=seeds, max_nodes=max_nodes
    )
    return LaResult(value, witness, exact)


@dataclass(frozen=True)
class LevelCertification:
    """Bounded certification of e(P).

    value: largest k with every k consecutive levels of 2^[n] P-free for all
    n <= n_max.  certificate: a copy of P in k+1 consecutive levels (when one
    exists within the budget), pinning e(P) <= value for every n at once.
    """

    value: int
    certificate: PosetCopy | None
    certificate_n: int | None
    certificate_lowest_level: int | None


def e_of_poset(poset: Poset, n_max: int) -> LevelCertification:
    """Certify e(P) by exhausting all level windows of 2^[n] for n <= n_max."""
    if n_max > 12:
        raise ValueError("level certification budget is n_max <= 12")
    validate_ground(n_max)

    def find_copy(k: int):
        for n in range(1, n_max + 1):
            for j in range(0, n - k + 1):
                fam = level_slice(n, j + 1, j + k)
                copy = contains_poset_copy(fam, poset)
                if copy is not None:
                    return copy, n, j + 1
        return None

    k = 1
    while k <= n_max:
        hit = find_copy(k)
        if hit is not None:
            copy, n, lowest = hit
            return LevelCertification(k - 1, copy, n, lowest)
        k += 1
    return LevelCertification(n_max, None, None, None)


def extract_sym_band(fam: Family) -> Family:
    """Complement-closed core restricted to levels within n^(2/3) of n/2.

    Band limits are computed with exact integer cube comparisons, never
    floating point.  At small n the band covers every level.
    """
    n = fam.n
    lo = 0
    while not (n - 2 * lo) ** 3 <= 8 * n * n:  # lo >= n/2 - n^(2/3)
        lo += 1
    hi = n
    while not (2 * hi - n) ** 3 <= 8 * n * n:  # hi <= n/2 + n^(2/3)
        hi -= 1
    keep = []
    for mask in fam:
        size = mask.bit_count()
        if lo <= size <= hi and complement(mask, n) in fam:
            keep.append(mask)
    return Family.of(n, keep)


def poset_copy_to_graph_copy(
    copy: PosetCopy,
    graph: PatternGraph,
    bip: Bipartition,
    host: Family,
) -> GraphWitness:
    """Turn a copy of the oriented poset of a bipartite pattern into a pattern copy.

    Side-B elements keep their sets, side-A elements go to the complements of
    theirs; an inclusion b < a then forces the disjointness edge b, a^c.  The
    host must be complement-closed so the complements are present.  If some
    set sits on side A while its complement sits on side B the two images
    collide; that finite-n artifact is reported as CollisionError.
    """
    n = host.n
    if family_complement(host) != host:
        raise ValueError("host family is not complement-closed")
    poset = poset_from_bipartite(graph, bip.side_a)
    mapping = copy.mapping
    if sorted(mapping) != list(range(poset.size)):
        raise ValueError("copy does not cover the poset elements")
    if len(set(mapping.values())) != poset.size:
        raise ValueError("copy is not injective")
    for p in range(poset.size):
        for q in range(poset.size):
            if poset.less(p, q) and mapping[p] & mapping[q] != mapping[p]:
                raise ValueError("copy does not preserve the order")

    image: dict[int, int] = {}
    for v in range(graph.vertex_count):
        if v in bip.side_a:
            image[v] = complement(mapping[v], n)
        else:
            image[v] = mapping[v]
    for a in bip.side_a:
        for b in bip.side_b:
            if image[a] == image[b]:
                raise CollisionError(
                    f"set {mapping[b]:#x} and its complement straddle the two sides"
                )

    kneser = induced_kneser(host)
    witness = GraphWitness({v: kneser.index_of(image[v]) for v in range(graph.vertex_count)})
    for u, v in graph.edges:
        if not kneser.is_edge(witness.mapping[u], witness.mapping[v]):
            raise ValueError("converted map misses a pattern edge")  # unreachable by construction
    return witness
