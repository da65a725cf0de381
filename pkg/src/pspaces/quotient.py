"""Group actions on posets, orbit spaces X/G and X'/G, and the alpha map.

An action is a callable (element index, group element id) -> element index.
Orbit machinery only walks generator images, so quotients of large groups
stay cheap; scans over every group element are confined to transporter
searches (property (B)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import ActionInvalid, OrderNotTransitive
from .permgrp import Group
from .poset import CHAIN_CAP, Poset, SimplicialComplex, _bits, order_complex, subdivide

FULL_VALIDATE_LIMIT = 200_000


class GPoset:
    """A finite poset with a right action of a group by order automorphisms."""

    def __init__(self, space: Poset, group: Group, act: Callable[[int, int], int],
                 validate: bool = True):
        self.space = space
        self.group = group
        self.act = act
        self._gen_ids = sorted({group.id_of(g) for g in group.generators})
        self._gen_arrays: list[list[int]] | None = None
        if validate:
            self.validate()

    def generator_arrays(self) -> list[list[int]]:
        if self._gen_arrays is None:
            n = self.space.n
            self._gen_arrays = [[self.act(x, g) for x in range(n)] for g in self._gen_ids]
        return self._gen_arrays

    def _check_automorphism(self, gid: int) -> None:
        n = self.space.n
        arr = [self.act(x, gid) for x in range(n)]
        if sorted(arr) != list(range(n)):
            raise ActionInvalid(f"group element {gid} does not permute the poset")
        above = self.space.above
        for x in range(n):
            image = 0
            for j in _bits(above[x]):
                image |= 1 << arr[j]
            if image != above[arr[x]]:
                raise ActionInvalid(f"group element {gid} is not order-preserving")

    def validate(self) -> None:
        """Check the action laws: identity, automorphisms, compatibility.

        Automorphism and identity laws are checked exhaustively; the
        composition law act(x, gh) = act(act(x, g), h) is checked on all
        pairs when |G|^2 * n is small, otherwise on generator pairs.
        """
        g = self.group
        n = self.space.n
        for x in range(n):
            if self.act(x, g.identity_id) != x:
                raise ActionInvalid("identity does not act trivially")
        for gid in self._gen_ids:
            self._check_automorphism(gid)
        if g.order * g.order * n <= FULL_VALIDATE_LIMIT:
            ids = range(g.order)
        else:
            ids = self._gen_ids
        for a in ids:
            for b in ids:
                ab = g.mul(a, b)
                for x in range(n):
                    if self.act(x, ab) != self.act(self.act(x, a), b):
                        raise ActionInvalid(f"composition law fails at ({a}, {b})")

    def orbits(self) -> tuple[list[int], list[list[int]]]:
        """(fiber, orbits): orbit index per element, orbits sorted by minimum."""
        n = self.space.n
        arrays = self.generator_arrays()
        fiber = [-1] * n
        orbits: list[list[int]] = []
        for start in range(n):
            if fiber[start] != -1:
                continue
            idx = len(orbits)
            queue = [start]
            fiber[start] = idx
            members = [start]
            while queue:
                x = queue.pop()
                for arr in arrays:
                    y = arr[x]
                    if fiber[y] == -1:
                        fiber[y] = idx
                        members.append(y)
                        queue.append(y)
            orbits.append(sorted(members))
        return fiber, orbits


@dataclass
class OrbitPoset:
    """Quotient space X/G with representative bookkeeping."""

    space: Poset
    fiber: list[int]
    reps: list[int]
    source: GPoset | None = None
    chains: list[tuple[int, ...]] | None = None
    chain_index: dict[tuple[int, ...], int] = field(default_factory=dict)

    def orbit_of(self, x: int) -> int:
        return self.fiber[x]

    def orbit_of_chain(self, chain: tuple[int, ...]) -> int:
        return self.fiber[self.chain_index[chain]]


def _quotient_relation(n_orbits: int, witnessed: set[tuple[int, int]]) -> list[int]:
    """Verify the witnessed orbit relation is a strict order; return above masks."""
    above = [0] * n_orbits
    for a, b in witnessed:
        if a == b:
            raise ActionInvalid("orbit contains two comparable elements")
        above[a] |= 1 << b
    for a in range(n_orbits):
        for b in _bits(above[a]):
            if above[b] & (1 << a):
                raise OrderNotTransitive(f"orbit relation is not antisymmetric on {a}, {b}")
            if above[b] & ~above[a]:
                raise OrderNotTransitive(f"orbit relation is not transitive at {a} < {b}")
    return above


def orbit_poset(xg: GPoset, prefer: Callable[[int], bool] | None = None) -> OrbitPoset:
    """The quotient poset X/G: orbits ordered by comparable representatives."""
    space = xg.space
    fiber, orbits = xg.orbits()
    witnessed: set[tuple[int, int]] = set()
    for x in range(space.n):
        for y in _bits(space.above[x]):
            witnessed.add((fiber[x], fiber[y]))
    above = _quotient_relation(len(orbits), witnessed)
    reps = []
    for members in orbits:
        chosen = [x for x in members if prefer(x)] if prefer is not None else members
        reps.append(min(chosen) if chosen else min(members))
    labels = [space.labels[r] for r in reps]
    return OrbitPoset(space=Poset(labels, above, _checked=True),
                      fiber=fiber, reps=reps, source=xg)


def _chain_subtuples(chain: tuple[int, ...]):
    from itertools import combinations
    for k in range(1, len(chain)):
        yield from combinations(chain, k)


def chain_orbit_poset(xg: GPoset, cap: int = CHAIN_CAP,
                      prefer: Callable[[tuple[int, ...]], bool] | None = None) -> OrbitPoset:
    """The quotient X'/G of the chain poset, without materializing X'.

    Equal to orbit_poset over the subdivision with the induced chain-wise
    action; representatives are chosen among preferred chains when `prefer`
    is given (the convention is "inside the fixed Sylow subgroup").
    """
    space = xg.space
    chains = space.chains(cap=cap)
    chains.sort(key=lambda c: (len(c), c))
    index = {c: i for i, c in enumerate(chains)}
    arrays = xg.generator_arrays()

    fiber = [-1] * len(chains)
    orbits: list[list[int]] = []
    for start in range(len(chains)):
        if fiber[start] != -1:
            continue
        oid = len(orbits)
        fiber[start] = oid
        members = [start]
        queue = [start]
        while queue:
            ci = queue.pop()
            chain = chains[ci]
            for arr in arrays:
                img = tuple(arr[x] for x in chain)
                j = index[img]
                if fiber[j] == -1:
                    fiber[j] = oid
                    members.append(j)
                    queue.append(j)
        orbits.append(sorted(members))

    witnessed: set[tuple[int, int]] = set()
    for ci, chain in enumerate(chains):
        for sub in _chain_subtuples(chain):
            witnessed.add((fiber[index[sub]], fiber[ci]))
    above = _quotient_relation(len(orbits), witnessed)

    reps = []
    for members in orbits:
        chosen = [i for i in members if prefer(chains[i])] if prefer is not None else members
        reps.append(min(chosen) if chosen else min(members))
    labels = [tuple(space.labels[x] for x in chains[r]) for r in reps]
    return OrbitPoset(space=Poset(labels, above, _checked=True),
                      fiber=fiber, reps=reps, source=xg,
                      chains=chains, chain_index=index)


def subdivide_gposet(xg: GPoset, cap: int = CHAIN_CAP) -> GPoset:
    """The subdivision X' carrying the induced chain-wise action."""
    sub = subdivide(xg.space, cap=cap)
    index = {c: i for i, c in enumerate(sub.labels)}

    def act(ci: int, gid: int) -> int:
        chain = sub.labels[ci]
        return index[tuple(xg.act(x, gid) for x in chain)]

    return GPoset(sub, xg.group, act, validate=False)


# --- properties (A) and (B) ---------------------------------------------------

def property_a(xg: GPoset) -> bool:
    """No simplex of K(X) contains two distinct vertices of one orbit."""
    fiber, orbits = xg.orbits()
    space = xg.space
    masks = [0] * len(orbits)
    for x, o in enumerate(fiber):
        masks[o] |= 1 << x
    for x in range(space.n):
        if space.above[x] & masks[fiber[x]]:
            return False
    return True


def property_b(xg: GPoset, witness: bool = False):
    """Bredon's property (B) on H = G for the complex K(X).

    Simplices are chains; two chains with orbit-equal vertex sequences must
    be carried one onto the other by a single group element.
    """
    space = xg.space
    group = xg.group
    fiber, _ = xg.orbits()
    by_profile: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for chain in space.chains():
        by_profile.setdefault(tuple(fiber[x] for x in chain), []).append(chain)
    for profile, members in by_profile.items():
        if len(set(profile)) != len(profile):
            raise ActionInvalid("orbit repeats inside a chain")
        for a_idx in range(len(members)):
            for b_idx in range(a_idx + 1, len(members)):
                sigma, tau = members[a_idx], members[b_idx]
                if not any(all(xg.act(x, g) == y for x, y in zip(sigma, tau))
                           for g in range(group.order)):
                    return (False, (sigma, tau)) if witness else False
    return (True, None) if witness else True


# --- the alpha comparison map ---------------------------------------------------

@dataclass
class AlphaResult:
    """alpha : X'/G -> (X/G)' with its injectivity/isomorphism verdicts."""

    mapping: list[int]
    injective: bool
    isomorphism: bool
    chain_quotient: OrbitPoset
    quotient_subdivision: Poset


def alpha_map(xg: GPoset, cap: int = CHAIN_CAP) -> AlphaResult:
    """Compute alpha(orbit of a chain) = chain of orbits and classify it."""
    chain_orbits = chain_orbit_poset(xg, cap=cap)
    plain = orbit_poset(xg)
    target = subdivide(plain.space, cap=cap)
    target_index = {c: i for i, c in enumerate(target.labels)}

    mapping = []
    for rep in chain_orbits.reps:
        chain = chain_orbits.chains[rep]
        orbit_chain = tuple(dict.fromkeys(plain.fiber[x] for x in chain))
        mapping.append(target_index[orbit_chain])
    injective = len(set(mapping)) == len(mapping)
    isomorphism = False
    if injective and len(mapping) == target.n:
        src = chain_orbits.space
        isomorphism = all(
            src.lt(a, b) == target.lt(mapping[a], mapping[b])
            for a in range(src.n) for b in range(src.n))
    return AlphaResult(mapping=mapping, injective=injective, isomorphism=isomorphism,
                       chain_quotient=chain_orbits, quotient_subdivision=target)


def subdivision_quotient_iso(xg: GPoset, n: int, cap: int = CHAIN_CAP) -> bool:
    """Whether X^(n)/G and (X'/G)^(n-1) agree via the canonical map (n <= 2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 2:
        raise ValueError("iterated subdivisions are capped at n = 2")
    if n == 1:
        return True
    return alpha_map(subdivide_gposet(xg, cap=cap), cap=cap).isomorphism


# --- orbit complexes --------------------------------------------------------------

def orbit_complex(k: SimplicialComplex, vertex_orbit: Sequence[int],
                  orbit_labels: Sequence) -> SimplicialComplex:
    """K/G: vertices are orbits, simplices are images of simplices of K."""
    faces = [frozenset(vertex_orbit[v] for v in face) for face in k.maximal_faces]
    return SimplicialComplex(list(orbit_labels), faces)


def quotient_order_complexes_agree(xg: GPoset) -> bool:
    """Check K(X)/G == K(X/G) as labeled simplicial complexes."""
    quotient = orbit_poset(xg)
    k = order_complex(xg.space)
    left = orbit_complex(k, quotient.fiber, quotient.space.labels)
    right = order_complex(quotient.space)
    return left == right
