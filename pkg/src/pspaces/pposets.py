"""Posets of p-subgroups and the fusion-flavored maps on their quotients.

Enumeration follows the bottom-up route: subgroups of one fixed Sylow
subgroup P, closed under conjugation by group generators.  Poset elements
are sorted by (order, member ids), a linear extension of inclusion, and all
"representative inside P" conventions refer to the canonical P returned by
`sylow`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    NotFullyCentralized,
    NotInSylow,
    PreconditionViolated,
    PrimeDoesNotDivide,
    SizeExceeded,
)
from .permgrp import (
    Group,
    Permutation,
    Subgroup,
    centralizer,
    conjugate_subgroup,
    fully_centralized,
    is_elementary_abelian,
    normalizer,
    omega1,
    center,
    p_core,
    sylow,
    sylow_subgroups,
)
from .poset import CHAIN_CAP, Poset
from .quotient import GPoset, OrbitPoset, chain_orbit_poset, orbit_poset

POSET_KINDS = ("Sp", "Ap", "Bp", "Xp", "iSp")
CHAIN_KINDS = ("Rp", "N")
SUBGROUP_POSET_CAP = 200_000
FUSION_CAP = 100_000


def _letters(i: int) -> str:
    out = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        out = chr(ord("a") + r) + out
    return out


def subgroups_of_pgroup(p_syl: Subgroup, p: int) -> list[Subgroup]:
    """All nontrivial subgroups of a p-group, by extension of maximal chains.

    Every subgroup of order p^(k+1) contains one of its maximal subgroups
    normally with cyclic quotient, so extending each order-p^k subgroup by
    normalizing elements g with g^p inside finds everything.
    """
    group = p_syl.group
    seen: dict[tuple[int, ...], Subgroup] = {}
    level = []
    for i in sorted(p_syl.members):
        if group.element_order(i) == p:
            s = Subgroup.generated(group, [i])
            if s.key() not in seen:
                seen[s.key()] = s
                level.append(s)
    while level:
        nxt = []
        for s in level:
            norm = normalizer(p_syl, s)
            for gid in sorted(norm.members - s.members):
                power = gid
                for _ in range(p - 1):
                    power = group.mul(power, gid)
                if power not in s.members:
                    continue
                t = Subgroup.generated(group, list(s.generating_ids()) + [gid])
                if t.key() not in seen:
                    seen[t.key()] = t
                    nxt.append(t)
        level = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.key()))


def _conjugation_orbit(sub: Subgroup, gen_ids: Sequence[int]) -> list[Subgroup]:
    seen = {sub.key(): sub}
    frontier = [sub]
    while frontier:
        new = []
        for s in frontier:
            for g in gen_ids:
                c = conjugate_subgroup(s, g)
                if c.key() not in seen:
                    seen[c.key()] = c
                    new.append(c)
        frontier = new
    return list(seen.values())


def is_normal_in(q: Subgroup, s: Subgroup) -> bool:
    """Q <= S and S normalizes Q (tested on generating sets)."""
    if not q.members <= s.members:
        return False
    group = q.group
    return all(group.conj(x, g) in q.members
               for x in q.generating_ids() for g in s.generating_ids())


def sylow_intersections(g: Group, p: int) -> list[Subgroup]:
    """Nontrivial intersections of sets of Sylow p-subgroups."""
    sylows = sylow_subgroups(g, p)
    family: dict[tuple[int, ...], Subgroup] = {s.key(): s for s in sylows}
    frontier = list(sylows)
    while frontier:
        new = []
        for a in frontier:
            for s in sylows:
                inter = a.members & s.members
                if len(inter) > 1:
                    sub = Subgroup(g, inter, _trusted=True)
                    if sub.key() not in family:
                        family[sub.key()] = sub
                        new.append(sub)
        frontier = new
    return sorted(family.values(), key=lambda s: (s.order, s.key()))


@dataclass
class PSubgroupPoset:
    """A poset of p-subgroups together with the conjugation action."""

    group: Group
    prime: int
    kind: str
    poset: Poset                      # labels are Subgroup objects
    gposet: GPoset
    names: list[str]
    sylow: Subgroup
    index: dict[tuple[int, ...], int] = field(default_factory=dict)

    def index_of(self, sub: Subgroup) -> int:
        return self.index[sub.key()]

    def subgroups(self) -> list[Subgroup]:
        return list(self.poset.labels)


def _inclusion_above_masks(subs: list[Subgroup]) -> list[int]:
    above = [0] * len(subs)
    by_order: dict[int, list[int]] = {}
    for i, s in enumerate(subs):
        by_order.setdefault(s.order, []).append(i)
    orders = sorted(by_order)
    for small in orders:
        for big in orders:
            if big <= small or big % small:
                continue
            for i in by_order[small]:
                mem = subs[i].members
                probe = subs[i].key()[-1]
                for j in by_order[big]:
                    if probe in subs[j].members and mem <= subs[j].members:
                        above[i] |= 1 << j
    return above


def _package(group: Group, p: int, kind: str, subs: list[Subgroup],
             p_syl: Subgroup) -> PSubgroupPoset:
    subs = sorted(subs, key=lambda s: (s.order, s.key()))
    index = {s.key(): i for i, s in enumerate(subs)}
    poset = Poset(subs, _inclusion_above_masks(subs), _checked=True)

    def act(x: int, gid: int) -> int:
        img = frozenset(group.conj(i, gid) for i in subs[x].members)
        return index[tuple(sorted(img))]

    gposet = GPoset(poset, group, act, validate=False)
    counters: dict[int, int] = {}
    names = []
    for s in subs:
        k = counters.get(s.order, 0)
        counters[s.order] = k + 1
        names.append(f"{s.order}{_letters(k)}")
    return PSubgroupPoset(group=group, prime=p, kind=kind, poset=poset,
                          gposet=gposet, names=names, sylow=p_syl, index=index)


def build_p_subgroup_poset(g: Group, p: int, kind: str,
                           cap: int = SUBGROUP_POSET_CAP) -> PSubgroupPoset:
    """Construct Sp, Ap, Bp, Xp or iSp with its conjugation GPoset."""
    if kind not in POSET_KINDS:
        raise ValueError(f"unknown poset kind {kind!r}; expected one of {POSET_KINDS}")
    if g.order % p != 0 or p < 2:
        raise PrimeDoesNotDivide(f"{p} does not divide |G| = {g.order}")
    p_syl = sylow(g, p)
    gen_ids = [g.id_of(x) for x in g.generators]

    if kind == "iSp":
        elements = sylow_intersections(g, p)
        return _package(g, p, kind, elements, p_syl)

    base = subgroups_of_pgroup(p_syl, p)
    if kind == "Xp":
        sylows = sylow_subgroups(g, p)

    def keeps(rep: Subgroup) -> bool:
        if kind == "Sp":
            return True
        if kind == "Ap":
            return is_elementary_abelian(rep, p)
        if kind == "Bp":
            return p_core(normalizer(g, rep), p).members == rep.members
        if kind == "Xp":
            return all(is_normal_in(rep, s) for s in sylows if rep.members <= s.members)
        raise AssertionError(kind)

    classified: set[tuple[int, ...]] = set()
    elements: list[Subgroup] = []
    for s in base:
        if s.key() in classified:
            continue
        orbit = _conjugation_orbit(s, gen_ids)
        for t in orbit:
            if t.members <= p_syl.members:
                classified.add(t.key())
        if keeps(s):
            elements.extend(orbit)
        if len(elements) > cap:
            raise SizeExceeded(f"subgroup poset passed the cap of {cap}")
    return _package(g, p, kind, elements, p_syl)


@dataclass
class ChainSubcomplexPoset:
    """A poset of distinguished chains of Sp(G) with the chain-wise action."""

    group: Group
    prime: int
    kind: str
    base: PSubgroupPoset
    poset: Poset                      # labels are tuples of base indices
    gposet: GPoset
    names: list[str]
    index: dict[tuple[int, ...], int] = field(default_factory=dict)


def build_chain_subcomplex_poset(g: Group, p: int, kind: str,
                                 cap: int = CHAIN_CAP) -> ChainSubcomplexPoset:
    """Rp: chains with every member normal in the top member (a face poset);
    N: chains whose members are all normal in one common Sylow subgroup."""
    if kind not in CHAIN_KINDS:
        raise ValueError(f"unknown chain kind {kind!r}; expected one of {CHAIN_KINDS}")
    sp = build_p_subgroup_poset(g, p, "Sp")
    subs = sp.poset.labels
    chains = sp.poset.chains(cap=cap)

    if kind == "Rp":
        normal_memo: dict[tuple[int, int], bool] = {}

        def normal(a: int, b: int) -> bool:
            got = normal_memo.get((a, b))
            if got is None:
                got = normal_memo[(a, b)] = is_normal_in(subs[a], subs[b])
            return got

        kept = [c for c in chains if all(normal(x, c[-1]) for x in c[:-1])]
    else:
        sylows = sylow_subgroups(g, p)
        norm_mask = []
        for s in subs:
            mask = 0
            for k, syl in enumerate(sylows):
                if is_normal_in(s, syl):
                    mask |= 1 << k
            norm_mask.append(mask)
        full = (1 << len(sylows)) - 1

        def common(c: tuple[int, ...]) -> int:
            acc = full
            for x in c:
                acc &= norm_mask[x]
            return acc

        kept = [c for c in chains if common(c)]

    kept.sort(key=lambda c: (len(c), c))
    index = {c: i for i, c in enumerate(kept)}
    above = [0] * len(kept)
    from itertools import combinations
    for ci, chain in enumerate(kept):
        for k in range(1, len(chain)):
            for sub in combinations(chain, k):
                j = index.get(sub)
                if j is not None:
                    above[j] |= 1 << ci
    poset = Poset(kept, above, _checked=True)

    def act(ci: int, gid: int) -> int:
        return index[tuple(sp.gposet.act(x, gid) for x in poset.labels[ci])]

    gposet = GPoset(poset, g, act, validate=False)
    names = ["(" + "<".join(sp.names[x] for x in c) + ")" for c in kept]
    return ChainSubcomplexPoset(group=g, prime=p, kind=kind, base=sp, poset=poset,
                                gposet=gposet, names=names, index=index)


def chain_quotient(psp: PSubgroupPoset, cap: int = CHAIN_CAP) -> OrbitPoset:
    """X'/G for a subgroup poset, with representatives inside the fixed Sylow."""
    p_mem = psp.sylow.members
    prefer = lambda c: all(psp.poset.labels[x].members <= p_mem for x in c)
    return chain_orbit_poset(psp.gposet, cap=cap, prefer=prefer)


def chain_complex_quotient(csp: ChainSubcomplexPoset) -> OrbitPoset:
    """Quotient of a chain subcomplex poset, representatives inside the Sylow."""
    sp = csp.base
    p_mem = sp.sylow.members
    prefer = lambda i: all(sp.poset.labels[x].members <= p_mem
                           for x in csp.poset.labels[i])
    return orbit_poset(csp.gposet, prefer=prefer)


# --- ranks -------------------------------------------------------------------

def elementary_abelian_subgroups(p_syl: Subgroup, p: int) -> list[Subgroup]:
    """Nontrivial elementary abelian subgroups of a p-group."""
    group = p_syl.group
    seen: dict[tuple[int, ...], Subgroup] = {}
    level = []
    for i in sorted(p_syl.members):
        if group.element_order(i) == p:
            s = Subgroup.generated(group, [i])
            if s.key() not in seen:
                seen[s.key()] = s
                level.append(s)
    while level:
        nxt = []
        for s in level:
            cent = centralizer(p_syl, s)
            for gid in sorted(cent.members - s.members):
                if group.element_order(gid) != p:
                    continue
                t = Subgroup.generated(group, list(s.generating_ids()) + [gid])
                if t.key() not in seen:
                    seen[t.key()] = t
                    nxt.append(t)
        level = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.key()))


def p_rank(h: Group | Subgroup, p: int) -> int:
    """Largest r with an elementary abelian subgroup of order p^r."""
    amb = h.full() if isinstance(h, Group) else h
    if len(amb.members) % p != 0:
        return 0
    p_syl = sylow(amb, p)
    best = max((s.order for s in elementary_abelian_subgroups(p_syl, p)), default=1)
    r = 0
    while best > 1:
        best //= p
        r += 1
    return r


def central_omega(p_syl: Subgroup, p: int) -> Subgroup:
    """Omega = the subgroup of central elements of order dividing p."""
    return omega1(center(p_syl), p)


def rank_gap(g: Group, p: int) -> int:
    """p-rank of G minus the rank of Omega for the canonical Sylow subgroup."""
    if g.order % p != 0:
        raise PrimeDoesNotDivide(f"{p} does not divide |G| = {g.order}")
    p_syl = sylow(g, p)
    omega = central_omega(p_syl, p)
    r_omega = 0
    n = omega.order
    while n > 1:
        n //= p
        r_omega += 1
    return p_rank(g, p) - r_omega


# --- the contraction map on elementary abelian quotients ------------------------

def elementary_hull(a: Subgroup, p_syl: Subgroup, g: Group | None = None) -> Subgroup:
    """The canonical elementary abelian envelope of a fully centralized A <= P.

    Equals the intersection of all maximal elementary abelian subgroups of P
    containing A; computed as Omega1(Z(Omega1(C_P(A)))).
    """
    group = a.group
    p = _prime_of(p_syl)
    if not a.members <= p_syl.members:
        raise NotInSylow("A is not contained in the given Sylow subgroup")
    if not is_elementary_abelian(a, p):
        raise PreconditionViolated("A must be nontrivial elementary abelian")
    if not fully_centralized(a, p_syl, g):
        raise NotFullyCentralized("A is not fully centralized in P")
    return omega1(center(omega1(centralizer(p_syl, a), p)), p)


def _prime_of(p_syl: Subgroup) -> int:
    n = p_syl.order
    p = 2
    while n % p:
        p += 1
    return p


@dataclass
class ConicalReport:
    """Outcome of checking a conical contraction on an orbit poset."""

    ok: bool
    apex: int
    f: list[int]
    not_well_defined: list[tuple[int, tuple[int, ...]]]
    not_order_preserving: list[tuple[int, int]]
    not_conical: list[int]


def verify_conical_contraction(orbit: OrbitPoset, candidates: dict[int, Iterable[int]],
                               apex: int) -> ConicalReport:
    """Check that the candidate images define an order-preserving f with
    x <= f(x) >= apex; every orbit element needs at least one candidate and
    all its candidates (one per admissible representative) must agree."""
    space = orbit.space
    not_well_defined = []
    f = [-1] * space.n
    for x in range(space.n):
        images = sorted(set(candidates.get(x, ())))
        if not images:
            raise PreconditionViolated(f"f has no candidate image on element {x}")
        if len(images) > 1:
            not_well_defined.append((x, tuple(images)))
        f[x] = images[0]
    not_order_preserving = [
        (x, y)
        for x in range(space.n) for y in range(space.n)
        if space.lt(x, y) and not space.leq(f[x], f[y])
    ]
    not_conical = [
        x for x in range(space.n)
        if not (space.leq(x, f[x]) and space.leq(apex, f[x]))
    ]
    ok = not (not_well_defined or not_order_preserving or not_conical)
    return ConicalReport(ok=ok, apex=apex, f=f,
                         not_well_defined=not_well_defined,
                         not_order_preserving=not_order_preserving,
                         not_conical=not_conical)


def elementary_orbit_contraction(g: Group, p: int) -> tuple[OrbitPoset, dict[int, set[int]], int]:
    """Contraction data for Ap(G)/G: candidates from every fully centralized
    representative inside P, apex the class of Omega."""
    ap = build_p_subgroup_poset(g, p, "Ap")
    orbit = orbit_poset(ap.gposet,
                        prefer=lambda x: ap.poset.labels[x].members <= ap.sylow.members)
    omega = central_omega(ap.sylow, p)
    apex = orbit.fiber[ap.index_of(omega)]
    candidates: dict[int, set[int]] = {}
    p_syl = ap.sylow
    for x, sub in enumerate(ap.poset.labels):
        if not sub.members <= p_syl.members:
            continue
        if not fully_centralized(sub, p_syl):
            continue
        hull = elementary_hull(sub, p_syl)
        candidates.setdefault(orbit.fiber[x], set()).add(orbit.fiber[ap.index_of(hull)])
    return orbit, candidates, apex


def sylow_chain_contraction(g: Group, p: int, kind: str) -> tuple[OrbitPoset, dict[int, set[int]], int]:
    """Contraction data for Xp(G)'/G (kind "Xp") or for N/G (kind "N"):
    append the fixed Sylow subgroup to chains represented inside it."""
    if kind == "Xp":
        xp = build_p_subgroup_poset(g, p, "Xp")
        p_syl = xp.sylow
        top = xp.index_of(p_syl)
        inside = lambda c: all(xp.poset.labels[x].members <= p_syl.members for x in c)
        orbit = chain_orbit_poset(xp.gposet, prefer=inside)
        chains, index = orbit.chains, orbit.chain_index
        apex_item = index[(top,)]
    elif kind == "N":
        np_ = build_chain_subcomplex_poset(g, p, "N")
        sp = np_.base
        p_syl = sp.sylow
        top = sp.index_of(p_syl)
        inside = lambda c: all(is_normal_in(sp.poset.labels[x], p_syl) for x in c)
        orbit = orbit_poset(np_.gposet, prefer=lambda i: inside(np_.poset.labels[i]))
        chains, index = np_.poset.labels, np_.index
        apex_item = index[(top,)]
    else:
        raise ValueError(f"kind must be 'Xp' or 'N', got {kind!r}")

    candidates: dict[int, set[int]] = {}
    for item, chain in enumerate(chains):
        if not inside(chain):
            continue
        joined = tuple(sorted(set(chain) | {top}))
        j = index[joined]
        o = orbit.fiber[item]
        candidates.setdefault(o, set()).add(orbit.fiber[j])
    apex = orbit.fiber[apex_item]
    return orbit, candidates, apex


def omega_comparable_subposet(g: Group, p: int) -> tuple[OrbitPoset, list[int]]:
    """The subposet of Ap(G)'/G whose fully centralized chain members are
    comparable with Omega, plus the ambient chain quotient."""
    ap = build_p_subgroup_poset(g, p, "Ap")
    p_syl = ap.sylow
    inside = lambda c: all(ap.poset.labels[x].members <= p_syl.members for x in c)
    orbit = chain_orbit_poset(ap.gposet, prefer=inside)
    omega = central_omega(p_syl, p)
    om = omega.members
    ok_memo: dict[int, bool] = {}

    def member_ok(x: int) -> bool:
        got = ok_memo.get(x)
        if got is None:
            sub = ap.poset.labels[x]
            if not fully_centralized(sub, p_syl):
                got = True
            else:
                got = sub.members <= om or om <= sub.members
            ok_memo[x] = got
        return got

    keep = []
    for o in range(orbit.space.n):
        good = True
        for item, chain in enumerate(orbit.chains):
            if orbit.fiber[item] != o or not inside(chain):
                continue
            if not all(member_ok(x) for x in chain):
                good = False
                break
        if good:
            keep.append(o)
    return orbit, keep


# --- fusion certificates ---------------------------------------------------------

@dataclass
class FusionStep:
    subgroup: Subgroup      # Q_i <= P with the current image inside it
    element: Permutation    # g_i in N_G(Q_i)


def check_fusion_certificate(g: Group, p_syl: Subgroup, a: Subgroup,
                             target: Permutation, steps: list[FusionStep]) -> bool:
    """Conditions: images stay inside each Q_i, Q_i <= P, g_i normalizes Q_i,
    and the composite agrees with conjugation by the target on A."""
    ids = a.key()
    current = list(ids)
    for step in steps:
        q = step.subgroup
        gid = g.id_of(step.element)
        if not q.members <= p_syl.members:
            return False
        if not all(x in q.members for x in current):
            return False
        if conjugate_subgroup(q, gid).members != q.members:
            return False
        current = [g.conj(x, gid) for x in current]
    tid = g.id_of(target)
    return current == [g.conj(x, tid) for x in ids]


def fusion_certificate(g: Group, p_syl: Subgroup, a: Subgroup, target: Permutation,
                       budget: int = FUSION_CAP) -> list[FusionStep] | None:
    """Alperin-style decomposition of c_target on A into normalizer steps.

    Breadth-first search over restriction states; intermediate subgroups are
    taken from the enumerated subgroups of P.  Returns None only when the
    state budget is exhausted.
    """
    p = _prime_of(p_syl)
    tid = g.id_of(target)
    ids = a.key()
    if not a.members <= p_syl.members:
        raise PreconditionViolated("A must be contained in P")
    if not frozenset(g.conj(x, tid) for x in a.members) <= p_syl.members:
        raise PreconditionViolated("A^g must be contained in P")
    goal = tuple(g.conj(x, tid) for x in ids)
    start = tuple(ids)
    if start == goal:
        return []

    overgroups: dict[frozenset[int], list[Subgroup]] = {}
    all_subs = subgroups_of_pgroup(p_syl, p)
    norm_cache: dict[tuple[int, ...], list[int]] = {}

    def overs(image: frozenset[int]) -> list[Subgroup]:
        got = overgroups.get(image)
        if got is None:
            got = [q for q in all_subs if image <= q.members]
            overgroups[image] = got
        return got

    def normalizer_ids(q: Subgroup) -> list[int]:
        got = norm_cache.get(q.key())
        if got is None:
            got = sorted(normalizer(g, q).members)
            norm_cache[q.key()] = got
        return got

    parents: dict[tuple[int, ...], tuple[tuple[int, ...], Subgroup, int]] = {start: None}
    queue = [start]
    visited = 0
    while queue:
        new_queue = []
        for state in queue:
            visited += 1
            if visited > budget:
                return None
            image = frozenset(state)
            for q in overs(image):
                for hid in normalizer_ids(q):
                    nxt = tuple(g.conj(x, hid) for x in state)
                    if nxt in parents:
                        continue
                    parents[nxt] = (state, q, hid)
                    if nxt == goal:
                        steps = []
                        cur = nxt
                        while parents[cur] is not None:
                            prev, qq, hh = parents[cur]
                            steps.append(FusionStep(subgroup=qq, element=g.perm(hh)))
                            cur = prev
                        steps.reverse()
                        return steps
                    new_queue.append(nxt)
        queue = new_queue
    return None
