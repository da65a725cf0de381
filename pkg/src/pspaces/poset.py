"""Finite T0-spaces as posets: cores, subdivisions, complexes, homology.

Strict orders are stored as bitmask rows (`above[i]` = elements strictly
greater than i), which keeps beat-point scans and chain enumeration cheap at
desk scale.  Library constructors index elements along a linear extension,
so chain tuples are ascending both in the order and in the index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

import networkx as nx

from .errors import Disconnected, SizeExceeded

CHAIN_CAP = 2_000_000
ISO_CAP = 10_000
COSET_CAP = 100_000
SDR_CAP = 1_000_000


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite poset: labels plus a strict-order reachability bitmatrix."""

    __slots__ = ("labels", "n", "above", "below")

    def __init__(self, labels: Sequence, above: list[int], _checked: bool = False):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.above = list(above)
        self.below = [0] * self.n
        for i in range(self.n):
            for j in _bits(self.above[i]):
                self.below[j] |= 1 << i
        if not _checked:
            self._validate()

    def _validate(self) -> None:
        for i in range(self.n):
            if self.above[i] >> self.n:
                raise ValueError("order relation mentions unknown elements")
            if self.above[i] & (1 << i):
                raise ValueError(f"order is not irreflexive at element {i}")
            for j in _bits(self.above[i]):
                if self.above[j] & ~self.above[i]:
                    raise ValueError(f"order is not transitive at {i} < {j}")
                if self.above[j] & (1 << i):
                    raise ValueError(f"order is not antisymmetric on {i}, {j}")

    @classmethod
    def from_relation(cls, labels: Sequence, pairs: Iterable[tuple[int, int]],
                      close: bool = False) -> "Poset":
        """Build from strict-order pairs (i, j) meaning i < j.

        With `close=True` the transitive closure is taken first; otherwise the
        pairs must already be transitive.
        """
        n = len(labels)
        above = [0] * n
        for i, j in pairs:
            above[i] |= 1 << j
        if close:
            changed = True
            while changed:
                changed = False
                for i in range(n):
                    acc = above[i]
                    for j in _bits(above[i]):
                        acc |= above[j]
                    if acc != above[i]:
                        above[i] = acc
                        changed = True
        return cls(labels, above)

    @classmethod
    def from_covers(cls, labels: Sequence, pairs: Iterable[tuple[int, int]]) -> "Poset":
        return cls.from_relation(labels, pairs, close=True)

    @classmethod
    def antichain(cls, labels: Sequence) -> "Poset":
        return cls(labels, [0] * len(labels), _checked=True)

    @classmethod
    def chain(cls, labels: Sequence) -> "Poset":
        n = len(labels)
        above = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                above[i] |= 1 << j
        return cls(labels, above, _checked=True)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n})"

    def lt(self, i: int, j: int) -> bool:
        return bool(self.above[i] & (1 << j))

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j) or self.lt(j, i)

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j): i is covered by j."""
        out = []
        for i in range(self.n):
            direct = self.above[i]
            for j in _bits(self.above[i]):
                direct &= ~self.above[j]
            out.extend((i, j) for j in _bits(direct))
        return out

    def cover_mask_up(self, i: int, alive: int | None = None) -> int:
        up = self.above[i] if alive is None else self.above[i] & alive
        direct = up
        for j in _bits(up):
            direct &= ~self.above[j]
        return direct

    def heights(self) -> list[int]:
        """Element heights: length of the longest chain strictly below."""
        order = sorted(range(self.n), key=lambda i: self.below[i].bit_count())
        h = [0] * self.n
        for i in order:
            below = self.below[i]
            h[i] = max((h[j] + 1 for j in _bits(below)), default=0)
        return h

    def height(self) -> int:
        return max(self.heights(), default=0)

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.n) if not self.above[i]]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.n) if not self.below[i]]

    def has_maximum(self) -> bool:
        return self.n > 0 and len(self.maximal_elements()) == 1

    def has_minimum(self) -> bool:
        return self.n > 0 and len(self.minimal_elements()) == 1

    def is_antichain(self) -> bool:
        return all(m == 0 for m in self.above)

    def is_connected(self) -> bool:
        """Connectivity of the comparability graph (empty posets count as connected)."""
        if self.n <= 1:
            return True
        seen = 1
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for y in _bits((self.above[x] | self.below[x]) & ~seen):
                seen |= 1 << y
                frontier.append(y)
        return seen == (1 << self.n) - 1

    def restrict(self, keep: Iterable[int]) -> tuple["Poset", dict[int, int]]:
        """Induced subposet on `keep`; returns it with the old->new index map."""
        keep = sorted(set(keep))
        remap = {old: new for new, old in enumerate(keep)}
        above = []
        for old in keep:
            mask = 0
            for j in _bits(self.above[old]):
                if j in remap:
                    mask |= 1 << remap[j]
            above.append(mask)
        return Poset([self.labels[i] for i in keep], above, _checked=True), remap

    def relabel(self, f: Callable) -> "Poset":
        return Poset([f(x) for x in self.labels], list(self.above), _checked=True)

    def dual(self) -> "Poset":
        return Poset(self.labels, list(self.below), _checked=True)

    # --- chains ---------------------------------------------------------------

    def chains(self, cap: int = CHAIN_CAP) -> list[tuple[int, ...]]:
        """All nonempty chains as order-increasing index tuples."""
        out: list[tuple[int, ...]] = []
        above = self.above
        def extend(prefix: tuple[int, ...], allowed: int) -> None:
            for j in _bits(allowed):
                chain = prefix + (j,)
                out.append(chain)
                if len(out) > cap:
                    raise SizeExceeded(f"chain enumeration passed the cap of {cap}")
                extend(chain, allowed & above[j])
        for i in range(self.n):
            chain = (i,)
            out.append(chain)
            if len(out) > cap:
                raise SizeExceeded(f"chain enumeration passed the cap of {cap}")
            extend(chain, above[i])
        return out

    def chain_count_by_length(self, cap: int = CHAIN_CAP) -> list[int]:
        """Number of chains of each length (index 0 = singletons)."""
        counts: list[int] = []
        total = 0
        above = self.above
        def walk(last_mask: int, depth: int) -> None:
            nonlocal total
            for j in _bits(last_mask):
                while len(counts) <= depth:
                    counts.append(0)
                counts[depth] += 1
                total += 1
                if total > cap:
                    raise SizeExceeded(f"chain enumeration passed the cap of {cap}")
                walk(above[j] & last_mask, depth + 1)
        walk((1 << self.n) - 1, 0)
        return counts


# --- beat points, cores, homotopy type ---------------------------------------

def _down_beat(poset: Poset, i: int, alive: int) -> bool:
    down = poset.below[i] & alive
    if not down:
        return False
    for m in _bits(down):
        if not down & ~(poset.below[m] | (1 << m)):
            return True
    return False


def _up_beat(poset: Poset, i: int, alive: int) -> bool:
    up = poset.above[i] & alive
    if not up:
        return False
    for m in _bits(up):
        if not up & ~(poset.above[m] | (1 << m)):
            return True
    return False


def beat_points(poset: Poset, alive: int | None = None) -> tuple[list[int], list[int]]:
    """(down beats, up beats): strict down-set has a maximum / up-set a minimum."""
    if alive is None:
        alive = (1 << poset.n) - 1
    downs = [i for i in _bits(alive) if _down_beat(poset, i, alive)]
    ups = [i for i in _bits(alive) if _up_beat(poset, i, alive)]
    return downs, ups


def core(poset: Poset) -> tuple[Poset, list[int]]:
    """Remove beat points (smallest index first) until none remain.

    Returns the core and the surviving original indices.
    """
    alive = (1 << poset.n) - 1
    status: dict[int, bool] = {}
    while True:
        found = None
        for i in _bits(alive):
            known = status.get(i)
            if known is False:
                continue
            if known is None:
                status[i] = _down_beat(poset, i, alive) or _up_beat(poset, i, alive)
            if status[i]:
                found = i
                break
        if found is None:
            break
        alive &= ~(1 << found)
        del status[found]
        for j in _bits((poset.above[found] | poset.below[found]) & alive):
            status.pop(j, None)
    kept = list(_bits(alive))
    sub, _ = poset.restrict(kept)
    return sub, kept


def is_contractible(poset: Poset) -> bool:
    return core(poset)[0].n == 1


def _hasse_digraph(poset: Poset) -> nx.DiGraph:
    heights = poset.heights()
    g = nx.DiGraph()
    for i in range(poset.n):
        g.add_node(i, inv=(heights[i], poset.above[i].bit_count(), poset.below[i].bit_count()))
    g.add_edges_from(poset.covers())
    return g


def posets_isomorphic(x: Poset, y: Poset, cap: int = ISO_CAP) -> bool:
    """Order isomorphism via backtracking on Hasse diagrams with invariants."""
    if x.n != y.n:
        return False
    if max(x.n, y.n) > cap:
        raise SizeExceeded(f"isomorphism test beyond the bound of {cap} elements")
    gx, gy = _hasse_digraph(x), _hasse_digraph(y)
    invx = sorted(data["inv"] for _, data in gx.nodes(data=True))
    invy = sorted(data["inv"] for _, data in gy.nodes(data=True))
    if invx != invy:
        return False
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        gx, gy, node_match=lambda a, b: a["inv"] == b["inv"])
    return matcher.is_isomorphic()


def homotopy_equivalent(x: Poset, y: Poset, cap: int = ISO_CAP) -> bool:
    """Same homotopy type of finite spaces: isomorphic cores."""
    cx, _ = core(x)
    cy, _ = core(y)
    return posets_isomorphic(cx, cy, cap=cap)


def strong_deformation_retract(poset: Poset, keep: Iterable[int],
                               budget: int = SDR_CAP) -> bool | None:
    """Whether the subposet on `keep` arises by deleting beat points.

    Backtracks over deletion orders; returns None when the node budget runs
    out before the search is decided.
    """
    target = 0
    for i in keep:
        target |= 1 << i
    full = (1 << poset.n) - 1
    if target & ~full:
        raise ValueError("keep-set mentions elements outside the poset")
    if full == target:
        return True

    def deletable(alive: int):
        for i in _bits(alive & ~target):
            if _down_beat(poset, i, alive) or _up_beat(poset, i, alive):
                yield alive & ~(1 << i)

    failed: set[int] = set()
    nodes = 0
    stack: list[tuple[int, Iterator[int]]] = [(full, deletable(full))]
    while stack:
        alive, children = stack[-1]
        pushed = False
        for child in children:
            if child == target:
                return True
            if child in failed:
                continue
            nodes += 1
            if nodes > budget:
                return None
            stack.append((child, deletable(child)))
            pushed = True
            break
        if not pushed:
            failed.add(alive)
            stack.pop()
    return False


# --- subdivisions and complexes ----------------------------------------------

def _inclusion_poset(labels: list[tuple[int, ...]], cap: int) -> Poset:
    """Poset of index tuples ordered by strict subset inclusion."""
    if len(labels) > cap:
        raise SizeExceeded(f"inclusion poset of {len(labels)} elements passes the cap {cap}")
    index = {frozenset(t): i for i, t in enumerate(labels)}
    above = [0] * len(labels)
    from itertools import combinations
    for i, t in enumerate(labels):
        for k in range(1, len(t)):
            for sub in combinations(t, k):
                j = index.get(frozenset(sub))
                if j is not None:
                    above[j] |= 1 << i
    return Poset(labels, above, _checked=True)


def subdivide(poset: Poset, cap: int = CHAIN_CAP) -> Poset:
    """The poset of nonempty chains ordered by subchain inclusion."""
    chains = poset.chains(cap=cap)
    chains.sort(key=lambda c: (len(c), c))
    return _inclusion_poset(chains, cap)


class SimplicialComplex:
    """An abstract simplicial complex given by its maximal faces."""

    __slots__ = ("vertex_labels", "maximal_faces", "_faces")

    def __init__(self, vertex_labels: Sequence, faces: Iterable[Iterable[int]]):
        self.vertex_labels = list(vertex_labels)
        sets = {frozenset(f) for f in faces if f}
        maximal = {f for f in sets if not any(f < g for g in sets)}
        if not maximal:
            raise ValueError("a complex needs at least one nonempty face")
        self.maximal_faces = frozenset(maximal)
        self._faces: list[list[tuple[int, ...]]] | None = None

    def dim(self) -> int:
        return max(len(f) for f in self.maximal_faces) - 1

    def faces(self) -> list[list[tuple[int, ...]]]:
        """All faces grouped by dimension, each sorted canonically."""
        if self._faces is None:
            from itertools import combinations
            by_dim: list[set[tuple[int, ...]]] = [set() for _ in range(self.dim() + 1)]
            for face in self.maximal_faces:
                verts = sorted(face)
                for d in range(len(verts)):
                    by_dim[d].update(combinations(verts, d + 1))
            self._faces = [sorted(s) for s in by_dim]
        return self._faces

    def f_vector(self) -> list[int]:
        return [len(level) for level in self.faces()]

    def euler(self) -> int:
        return sum((-1) ** d * count for d, count in enumerate(self.f_vector()))

    def vertices(self) -> list[int]:
        return [t[0] for t in self.faces()[0]]

    def has_face(self, verts: Iterable[int]) -> bool:
        f = frozenset(verts)
        return any(f <= m for m in self.maximal_faces)

    def labeled_faces(self) -> set[frozenset]:
        """Maximal faces with vertex labels substituted, for comparisons."""
        return {frozenset(self.vertex_labels[v] for v in f) for f in self.maximal_faces}

    def __eq__(self, other) -> bool:
        return (isinstance(other, SimplicialComplex)
                and set(self.vertex_labels) == set(other.vertex_labels)
                and self.labeled_faces() == other.labeled_faces())

    def __hash__(self) -> int:
        return hash(frozenset(self.labeled_faces()))

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertex_labels)}, f={self.f_vector()})"


def order_complex(poset: Poset, cap: int = CHAIN_CAP) -> SimplicialComplex:
    """The complex whose simplices are the nonempty chains of the poset."""
    maximal: list[tuple[int, ...]] = []
    above = poset.above
    full = (1 << poset.n) - 1

    def walk(prefix: tuple[int, ...], allowed: int, comp: int) -> None:
        if len(maximal) > cap:
            raise SizeExceeded(f"order complex enumeration passed the cap of {cap}")
        extensions = list(_bits(allowed))
        used = 0
        for j in prefix:
            used |= 1 << j
        if not extensions:
            if not (comp & ~used):
                maximal.append(prefix)
            return
        for j in extensions:
            walk(prefix + (j,), allowed & above[j],
                 comp & (above[j] | poset.below[j] | (1 << j)))

    for i in range(poset.n):
        if not poset.below[i]:
            walk((i,), above[i], (above[i] | poset.below[i] | (1 << i)) & full)
    return SimplicialComplex(poset.labels, maximal)


def face_poset(complex_: SimplicialComplex, cap: int = CHAIN_CAP) -> Poset:
    """Poset of faces ordered by inclusion; labels are sorted vertex tuples."""
    labels = [t for level in complex_.faces() for t in level]
    return _inclusion_poset(labels, cap)


# --- integral simplicial homology ---------------------------------------------

@dataclass
class HomologyProfile:
    """Reduced integral homology summary of a complex."""

    reduced_betti: list[int]
    torsion: list[list[int]]
    euler: int
    face_counts: list[int] = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(b == 0 for b in self.reduced_betti) and all(not t for t in self.torsion)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        def trim(xs):
            xs = list(xs)
            while xs and (xs[-1] == 0 or xs[-1] == []):
                xs.pop()
            return xs
        return (trim(self.reduced_betti) == trim(other.reduced_betti)
                and trim(self.torsion) == trim(other.torsion))


def _invariant_factors(row_entries: list[dict[int, int]]) -> list[int]:
    """Invariant factors (> 0, divisibility-ordered) of a sparse integer matrix."""
    rows: dict[int, dict[int, int]] = {i: dict(r) for i, r in enumerate(row_entries) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for c in r:
            cols.setdefault(c, set()).add(i)
    diagonal: list[int] = []

    def drop(i: int, c: int) -> None:
        del rows[i][c]
        cols[c].discard(i)
        if not cols[c]:
            del cols[c]

    def put(i: int, c: int, v: int) -> None:
        if v:
            rows[i][c] = v
            cols.setdefault(c, set()).add(i)
        elif c in rows[i]:
            drop(i, c)

    def row_sub(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j; removes row i entirely if it becomes zero
        if not q:
            return
        for c, v in list(rows[j].items()):
            put(i, c, rows[i].get(c, 0) - q * v)
        if not rows[i]:
            del rows[i]

    while rows:
        # pivot: smallest |value|, then least fill-in
        best_score = None
        pi = pc = -1
        for i, r in rows.items():
            for c, v in r.items():
                score = (abs(v), (len(r) - 1) * (len(cols[c]) - 1))
                if best_score is None or score < best_score:
                    best_score, pi, pc = score, i, c
            if best_score == (1, 0):
                break
        while True:
            # make the pivot column a singleton via row operations
            while True:
                others = cols[pc] - {pi}
                if not others:
                    break
                i = min(others)
                v = rows[pi][pc]
                row_sub(i, pi, rows[i][pc] // v)
                if i in cols.get(pc, ()):  # nonzero remainder, strictly smaller
                    pi = i
            # clear the pivot row by column operations (touch only this row)
            v = rows[pi][pc]
            moved = None
            for c in list(rows[pi]):
                if c == pc:
                    continue
                w = rows[pi][c] % v
                put(pi, c, w)
                if w and moved is None:
                    moved = c
            if moved is None:
                break
            pc = moved  # smaller entry appeared in the pivot row; keep reducing
        diagonal.append(abs(rows[pi][pc]))
        drop(pi, pc)
        del rows[pi]

    # enforce d1 | d2 | ... by pairwise gcd/lcm exchanges
    diagonal.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(diagonal)):
            for j in range(i + 1, len(diagonal)):
                a, b = diagonal[i], diagonal[j]
                if b % a:
                    g = gcd(a, b)
                    diagonal[i], diagonal[j] = g, a * b // g
                    changed = True
        diagonal.sort()
    return diagonal


def _boundary_rows(faces: list[list[tuple[int, ...]]], d: int) -> list[dict[int, int]]:
    """Boundary map rows: one row per d-face, columns indexed by (d-1)-faces,
    signs alternating over the deleted vertex."""
    lower_index = {f: i for i, f in enumerate(faces[d - 1])}
    rows = []
    for face in faces[d]:
        row: dict[int, int] = {}
        for k in range(len(face)):
            sub = face[:k] + face[k + 1:]
            row[lower_index[sub]] = (-1) ** k
        rows.append(row)
    return rows


def homology(complex_: SimplicialComplex, cap: int = CHAIN_CAP) -> HomologyProfile:
    """Reduced integral simplicial homology via Smith normal form (exact)."""
    faces = complex_.faces()
    counts = [len(level) for level in faces]
    if sum(counts) > cap:
        raise SizeExceeded(f"homology on {sum(counts)} faces passes the cap {cap}")
    dim = len(faces) - 1
    ranks = [0] * (dim + 2)          # ranks[d] = rank of boundary_d, d = 0..dim+1
    torsion: list[list[int]] = [[] for _ in range(dim + 1)]
    ranks[0] = 1 if counts[0] else 0  # augmentation to the empty face
    for d in range(1, dim + 1):
        factors = _invariant_factors(_boundary_rows(faces, d))
        ranks[d] = len(factors)
        torsion[d - 1] = [f for f in factors if f > 1]
    betti = [counts[d] - ranks[d] - ranks[d + 1] for d in range(dim + 1)]
    euler = sum((-1) ** d * counts[d] for d in range(dim + 1))
    reduced = 1 + sum((-1) ** d * betti[d] for d in range(dim + 1))
    if euler != reduced:
        raise AssertionError(f"Euler characteristic mismatch: {euler} vs {reduced}")
    return HomologyProfile(reduced_betti=betti, torsion=torsion, euler=euler, face_counts=counts)


# --- fundamental group status ---------------------------------------------------

class Pi1Status(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


def pi1_status(complex_: SimplicialComplex, coset_cap: int = COSET_CAP) -> Pi1Status:
    """Edge-path group triviality: certified, refuted, or budget-limited.

    Nontrivial abelianization (H1) refutes immediately; otherwise a bounded
    coset enumeration of the presentation tries to certify triviality.
    """
    faces = complex_.faces()
    vertices = [t[0] for t in faces[0]]
    edges = [t for t in faces[1]] if len(faces) > 1 else []
    # connectivity over the 1-skeleton
    parent = {v: v for v in vertices}
    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v
    for u, v in edges:
        parent[find(u)] = find(v)
    if len({find(v) for v in vertices}) != 1:
        raise Disconnected("fundamental group status requires a connected complex")

    profile = homology(complex_)
    if len(profile.reduced_betti) > 1 and (profile.reduced_betti[1] or profile.torsion[1]):
        return Pi1Status.NONTRIVIAL

    # spanning tree via BFS
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = vertices[0]
    tree: set[tuple[int, int]] = set()
    seen = {root}
    queue = [root]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                queue.append(w)
    gens = [e for e in edges if e not in tree]
    if not gens:
        return Pi1Status.TRIVIAL

    from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
    from sympy.combinatorics.free_groups import free_group

    free = free_group(" ".join(f"x{k}" for k in range(len(gens))))
    symbols = list(free[1:])
    gen_of = {e: symbols[k] for k, e in enumerate(gens)}

    def word(u, v):
        if u == v:
            raise AssertionError("degenerate edge")
        if u < v:
            e, invert = (u, v), False
        else:
            e, invert = (v, u), True
        if e in tree:
            return None
        sym = gen_of[e]
        return sym ** -1 if invert else sym

    relators = []
    if len(faces) > 2:
        for a, b, c in faces[2]:
            rel = free[0].identity
            for u, v in ((a, b), (b, c), (c, a)):
                w = word(u, v)
                if w is not None:
                    rel = rel * w
            if rel != free[0].identity:
                relators.append(rel)
    fp = FpGroup(free[0], relators)
    try:
        table = coset_enumeration_r(fp, [], max_cosets=coset_cap)
    except ValueError:
        return Pi1Status.UNKNOWN
    table.compress()
    return Pi1Status.TRIVIAL if table.n == 1 else Pi1Status.NONTRIVIAL


# --- export ---------------------------------------------------------------------

def format_label(label) -> str:
    if isinstance(label, tuple):
        return "(" + "<".join(format_label(x) for x in label) + ")"
    return str(label)


def poset_to_json(poset: Poset, names: Sequence[str] | None = None) -> dict:
    names = list(names) if names is not None else [format_label(x) for x in poset.labels]
    return {"labels": names, "covers": sorted(poset.covers())}


def poset_to_dot(poset: Poset, names: Sequence[str] | None = None, title: str = "poset") -> str:
    """Rank-layered DOT rendering of the Hasse diagram."""
    names = list(names) if names is not None else [format_label(x) for x in poset.labels]
    heights = poset.heights()
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", '  node [shape=box, fontsize=10];']
    for i, name in enumerate(names):
        lines.append(f'  n{i} [label="{name}"];')
    for level in range(max(heights, default=0) + 1):
        same = [f"n{i}" for i in range(poset.n) if heights[i] == level]
        if same:
            lines.append("  { rank=same; " + "; ".join(same) + "; }")
    for i, j in sorted(poset.covers()):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

