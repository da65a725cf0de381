"""Exact arithmetic for finite permutation groups.

Groups are fully enumerated element tables over the point set 0..degree-1.
Composition applies the left factor first, so x^(g*h) = (x^g)^h and
conjugation A^g = g^-1 A g is a right action.  Element ids are positions in
the lexicographically sorted table; every "smallest/first" tie-break below
refers to that order.  Subgroups never own elements: they are id-sets into
their parent's table, so ids stay stable across all operators.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DegreeMismatch,
    NotInSylow,
    PrimeDoesNotDivide,
    UnknownSpec,
)

ENUMERATION_CAP = 200_000


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


class Permutation:
    """A permutation of 0..degree-1, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images!r}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]], base: int = 0) -> "Permutation":
        """Build from disjoint cycles; `base=1` accepts 1-based points."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            pts = [x - base for x in cycle]
            if any(x < 0 or x >= degree for x in pts):
                raise ValueError(f"cycle {cycle!r} leaves 0..{degree - 1}")
            if seen.intersection(pts) or len(set(pts)) != len(pts):
                raise ValueError("cycles are not disjoint")
            seen.update(pts)
            for i, x in enumerate(pts):
                images[x] = pts[(i + 1) % len(pts)]
        return cls(images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # left factor acts first: (self*other)(x) = other(self(x))
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"degree {len(self.images)} vs {len(other.images)}")
        o = other.images
        return Permutation(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """self^g = g^-1 * self * g."""
        if len(self.images) != len(g.images):
            raise DegreeMismatch(f"degree {len(self.images)} vs {len(g.images)}")
        res = [0] * len(self.images)
        gi = g.images
        si = self.images
        for i in range(len(si)):
            res[gi[i]] = gi[si[i]]
        return Permutation(res)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out = []
        seen = [False] * len(self.images)
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        n = 1
        for cyc in self.cycles():
            n = lcm(n, len(cyc))
        return n

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)


class Group:
    """A finite permutation group with a complete, canonically sorted table."""

    def __init__(self, degree: int, generators: list[Permutation], elements: list[Permutation], name: str | None = None):
        self.degree = degree
        self.generators = list(generators)
        self.elements = sorted(elements)
        self.index: dict[tuple[int, ...], int] = {g.images: i for i, g in enumerate(self.elements)}
        self.order = len(self.elements)
        self.name = name
        self.identity_id = self.index[tuple(range(degree))]
        self._inverses: list[int] | None = None
        self._elem_orders: list[int] | None = None
        self._full: Subgroup | None = None

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree}"
        return f"Group({label}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def perm(self, i: int) -> Permutation:
        return self.elements[i]

    def id_of(self, g: Permutation) -> int:
        try:
            return self.index[g.images]
        except KeyError:
            raise ValueError(f"{g!r} is not an element of {self!r}") from None

    def mul(self, i: int, j: int) -> int:
        a = self.elements[i].images
        b = self.elements[j].images
        return self.index[tuple(b[x] for x in a)]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            inv = [0] * self.order
            for k, g in enumerate(self.elements):
                inv[k] = self.index[g.inverse().images]
            self._inverses = inv
        return self._inverses[i]

    def conj(self, q: int, g: int) -> int:
        """Id of q^g."""
        return self.index[self.elements[q].conjugate(self.elements[g]).images]

    def element_order(self, i: int) -> int:
        if self._elem_orders is None:
            self._elem_orders = [g.order() for g in self.elements]
        return self._elem_orders[i]

    def full(self) -> "Subgroup":
        if self._full is None:
            self._full = Subgroup(self, frozenset(range(self.order)), _trusted=True)
        return self._full


def generate_group(generators: Iterable[Permutation], degree: int | None = None,
                   cap: int = ENUMERATION_CAP, name: str | None = None) -> Group:
    """Enumerate the closure of `generators` (BFS over right products)."""
    gens = list(generators)
    if not gens:
        if degree is None:
            raise DegreeMismatch("empty generator list needs an explicit degree")
        ident = Permutation.identity(degree)
        return Group(degree, [], [ident], name=name)
    deg = gens[0].degree
    if degree is not None and degree != deg:
        raise DegreeMismatch(f"declared degree {degree}, generators have degree {deg}")
    if any(g.degree != deg for g in gens):
        raise DegreeMismatch("generators have mixed degrees")
    ident = Permutation.identity(deg)
    seen: dict[tuple[int, ...], Permutation] = {ident.images: ident}
    frontier = [ident]
    while frontier:
        new: list[Permutation] = []
        for a in frontier:
            for g in gens:
                c = a * g
                if c.images not in seen:
                    seen[c.images] = c
                    new.append(c)
                    if len(seen) > cap:
                        raise CapExceeded(f"group closure passed the cap of {cap} elements")
        frontier = new
    return Group(deg, gens, list(seen.values()), name=name)


class Subgroup:
    """A subgroup of a parent Group, stored as a frozenset of element ids."""

    __slots__ = ("group", "members", "_key", "_gens")

    def __init__(self, group: Group, members: Iterable[int], _trusted: bool = False):
        self.group = group
        self.members = frozenset(members)
        self._key: tuple[int, ...] | None = None
        self._gens: tuple[int, ...] | None = None
        if not self.members:
            raise ValueError("a subgroup must contain the identity")
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        g = self.group
        if g.identity_id not in self.members:
            raise ValueError("a subgroup must contain the identity")
        if any(i < 0 or i >= g.order for i in self.members):
            raise ValueError("member id outside the parent table")
        if g.order % len(self.members) != 0:
            raise ValueError(f"|H| = {len(self.members)} does not divide |G| = {g.order}")
        if any(g.inv(i) not in self.members for i in self.members):
            raise ValueError("member set is not closed under inversion")
        # closure of a greedy generating set must give back exactly the members
        if _closure_ids(g, self.generating_ids()) != self.members:
            raise ValueError("member set is not closed under composition")

    @classmethod
    def generated(cls, group: Group, gens: Iterable[Permutation | int]) -> "Subgroup":
        ids = [g if isinstance(g, int) else group.id_of(g) for g in gens]
        return cls(group, _closure_ids(group, ids), _trusted=True)

    @property
    def order(self) -> int:
        return len(self.members)

    def key(self) -> tuple[int, ...]:
        if self._key is None:
            self._key = tuple(sorted(self.members))
        return self._key

    def generating_ids(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily over sorted ids."""
        if self._gens is None:
            g = self.group
            have = {g.identity_id}
            gens: list[int] = []
            for i in self.key():
                if i not in have:
                    gens.append(i)
                    have = _closure_ids(g, gens)
                    if len(have) == len(self.members):
                        break
            self._gens = tuple(gens)
        return self._gens

    def perms(self) -> list[Permutation]:
        return [self.group.elements[i] for i in self.key()]

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def __contains__(self, x) -> bool:
        if isinstance(x, Permutation):
            i = self.group.index.get(x.images)
            return i is not None and i in self.members
        return x in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.group is other.group and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.group), self.members))

    def __repr__(self) -> str:
        gens = ", ".join(repr(self.group.elements[i]) for i in self.generating_ids()) or "()"
        return f"Subgroup(order={self.order}, gens=<{gens}>)"


def _closure_ids(group: Group, gens: Iterable[int]) -> frozenset[int]:
    members = {group.identity_id}
    gens = [i for i in gens]
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in gens:
                c = group.mul(a, b)
                if c not in members:
                    members.add(c)
                    new.append(c)
        frontier = new
    return frozenset(members)


def _ambient(x: Group | Subgroup) -> Subgroup:
    return x.full() if isinstance(x, Group) else x


def conjugate_subgroup(q: Subgroup, g: Permutation | int) -> Subgroup:
    gid = g if isinstance(g, int) else q.group.id_of(g)
    return Subgroup(q.group, frozenset(q.group.conj(i, gid) for i in q.members), _trusted=True)


def centralizer(ambient: Group | Subgroup, target: Subgroup | Iterable[Permutation | int]) -> Subgroup:
    """Elements of `ambient` fixing every element of `target` under conjugation."""
    amb = _ambient(ambient)
    group = amb.group
    if isinstance(target, Subgroup):
        if target.group is not group:
            raise ValueError("target lives in a different parent table")
        ids = target.generating_ids()
    else:
        ids = tuple(t if isinstance(t, int) else group.id_of(t) for t in target)
    keep = [g for g in amb.members if all(group.conj(t, g) == t for t in ids)]
    return Subgroup(group, frozenset(keep), _trusted=True)


def normalizer(ambient: Group | Subgroup, s: Subgroup) -> Subgroup:
    """Elements of `ambient` with S^g = S."""
    amb = _ambient(ambient)
    group = amb.group
    if s.group is not group:
        raise ValueError("subgroup lives in a different parent table")
    gens = s.generating_ids()
    mem = s.members
    keep = [g for g in amb.members if all(group.conj(t, g) in mem for t in gens)]
    return Subgroup(group, frozenset(keep), _trusted=True)


def p_elements(ambient: Group | Subgroup, p: int) -> list[int]:
    """Ids of nontrivial elements of p-power order, sorted."""
    amb = _ambient(ambient)
    group = amb.group
    out = []
    for i in sorted(amb.members):
        n = group.element_order(i)
        if n > 1 and p_part(n, p) == n:
            out.append(i)
    return out


def sylow(ambient: Group | Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by smallest-first p-element closure.

    Each round adjoins the smallest p-element of the current normalizer not
    already present; the partial subgroup stays a p-group throughout, and the
    final order is checked against the arithmetic p-part.
    """
    amb = _ambient(ambient)
    group = amb.group
    if p < 2 or len(amb.members) % p != 0:
        raise PrimeDoesNotDivide(f"{p} does not divide the ambient order {len(amb.members)}")
    target = p_part(len(amb.members), p)
    pelems = p_elements(amb, p)
    current = Subgroup(group, frozenset([group.identity_id]), _trusted=True)
    while current.order < target:
        norm = normalizer(amb, current)
        nxt = next(i for i in pelems if i in norm.members and i not in current.members)
        current = Subgroup.generated(group, list(current.generating_ids()) + [nxt])
    if current.order != target:
        raise AssertionError(f"Sylow search produced order {current.order}, expected {target}")
    return current


def sylow_subgroups(ambient: Group | Subgroup, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups: the conjugation orbit of the canonical one."""
    amb = _ambient(ambient)
    group = amb.group
    first = sylow(amb, p)
    gens = amb.generating_ids() if not isinstance(ambient, Group) else [group.id_of(g) for g in group.generators]
    seen = {first.key(): first}
    frontier = [first]
    while frontier:
        new = []
        for s in frontier:
            for g in gens:
                c = conjugate_subgroup(s, g)
                if c.key() not in seen:
                    seen[c.key()] = c
                    new.append(c)
        frontier = new
    return sorted(seen.values(), key=lambda s: s.key())


def omega1(h: Subgroup, p: int) -> Subgroup:
    """Subgroup generated by the elements of order p (trivial if none)."""
    group = h.group
    gens = [i for i in h.key() if group.element_order(i) == p]
    return Subgroup(group, _closure_ids(group, gens), _trusted=True)


def center(h: Subgroup) -> Subgroup:
    return centralizer(h, h)


def p_core(ambient: Group | Subgroup, p: int) -> Subgroup:
    """Largest normal p-subgroup: the intersection of all Sylow p-subgroups."""
    amb = _ambient(ambient)
    group = amb.group
    if len(amb.members) % p != 0:
        return Subgroup(group, frozenset([group.identity_id]), _trusted=True)
    sylows = sylow_subgroups(amb, p)
    members = frozenset.intersection(*(s.members for s in sylows))
    core = Subgroup(group, members, _trusted=True)
    norm = normalizer(amb, core)
    if not amb.members <= norm.members:
        raise AssertionError("p-core is not normal in its ambient group")
    return core


def is_elementary_abelian(h: Subgroup, p: int) -> bool:
    if h.is_trivial():
        return False
    group = h.group
    gens = h.generating_ids()
    if any(group.element_order(i) != p for i in gens):
        return False
    return all(group.mul(a, b) == group.mul(b, a) for a in gens for b in gens)


def is_abelian(h: Subgroup) -> bool:
    gens = h.generating_ids()
    return all(h.group.mul(a, b) == h.group.mul(b, a) for a in gens for b in gens)


def fully_centralized(q: Subgroup, p_syl: Subgroup, ambient: Group | Subgroup | None = None) -> bool:
    """Whether C_P(Q) is a Sylow p-subgroup of C_G(Q)."""
    amb = _ambient(ambient) if ambient is not None else q.group.full()
    if not q.members <= p_syl.members:
        raise NotInSylow("Q is not contained in the given Sylow subgroup")
    p = _subgroup_prime(p_syl)
    c_in_p = centralizer(p_syl, q)
    c_in_g = centralizer(amb, q)
    return c_in_p.order == p_part(c_in_g.order, p)


def fc_representative(q: Subgroup, p_syl: Subgroup, ambient: Group | Subgroup | None = None) -> tuple[Subgroup, Permutation]:
    """First (Q^g, g) with Q^g <= P maximizing |C_P(Q^g)|, over canonical g.

    Idempotent on fully centralized inputs: those return (Q, identity).
    """
    amb = _ambient(ambient) if ambient is not None else q.group.full()
    group = q.group
    if not q.members <= p_syl.members:
        raise NotInSylow("Q is not contained in the given Sylow subgroup")
    best: tuple[Subgroup, int] | None = None
    cache: dict[frozenset[int], int] = {}
    pm = p_syl.members
    for g in sorted(amb.members):
        img = frozenset(group.conj(i, g) for i in q.members)
        if not img <= pm:
            continue
        size = cache.get(img)
        if size is None:
            size = centralizer(p_syl, Subgroup(group, img, _trusted=True)).order
            cache[img] = size
        if best is None or size > best[1]:
            best = (Subgroup(group, img, _trusted=True), g)
            if size == p_syl.order:
                break
    assert best is not None  # g = identity always qualifies
    return best[0], group.elements[best[1]]


def _subgroup_prime(p_syl: Subgroup) -> int:
    """The prime of a nontrivial p-group (smallest prime factor check)."""
    n = p_syl.order
    if n == 1:
        raise ValueError("trivial subgroup has no defining prime")
    p = 2
    while n % p != 0:
        p += 1
    if p_part(n, p) != n:
        raise ValueError(f"subgroup of order {n} is not a p-group")
    return p


# --- builtin constructors and catalog files ---------------------------------

def _sym_gens(n: int) -> list[Permutation]:
    if n <= 1:
        return []
    if n == 2:
        return [Permutation((1, 0))]
    return [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]

def _alt_gens(n: int) -> list[Permutation]:
    if n <= 2:
        return []
    if n == 3:
        return [Permutation.from_cycles(3, [(0, 1, 2)])]
    cyc = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
    return [Permutation.from_cycles(n, [(0, 1, 2)]), Permutation.from_cycles(n, [cyc])]

def _dihedral_gens(order: int) -> list[Permutation]:
    if order % 2 != 0 or order < 2:
        raise UnknownSpec(f"dihedral groups here have even order >= 2, got {order}")
    n = order // 2
    if n == 1:
        return [Permutation((1, 0))]
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    refl = Permutation(tuple((n - i) % n for i in range(n)))
    return [rot, refl]

def _wreath_s3_c2_gens() -> list[Permutation]:
    return [
        Permutation.from_cycles(6, [(0, 1)]),
        Permutation.from_cycles(6, [(0, 1, 2)]),
        Permutation.from_cycles(6, [(0, 3), (1, 4), (2, 5)]),
    ]

def _gl32_gens() -> list[Permutation]:
    # act on the 7 nonzero vectors of F_2^3; point i encodes vector i+1 in binary
    mats = [
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ]
    def apply(mat, v):
        bits = ((v >> 2) & 1, (v >> 1) & 1, v & 1)
        out = 0
        for r in range(3):
            val = sum(mat[r][c] * bits[c] for c in range(3)) % 2
            out = (out << 1) | val
        return out
    gens = []
    for mat in mats:
        images = [apply(mat, v + 1) - 1 for v in range(7)]
        gens.append(Permutation(images))
    return gens


_SHORTHAND = {
    "GL32": "GL(3,2)",
    "PSL32": "GL(3,2)",
    "S3WRC2": "Wreath(Sym(3),Cyclic(2))",
    "S3WRZ2": "Wreath(Sym(3),Cyclic(2))",
}


@lru_cache(maxsize=None)
def builtin_group(name: str) -> Group:
    """Named constructors: Sym(n), Alt(n), Cyclic(n), Dihedral(2n),
    Wreath(Sym(3),Cyclic(2)), GL(3,2); shorthands like S4, A6, C6, D8, GL32.
    """
    raw = name
    spec = re.sub(r"\s+", "", name)
    up = spec.upper()
    spec = _SHORTHAND.get(up, spec)
    m = re.fullmatch(r"([SACD])(\d+)", up)
    if m and up not in _SHORTHAND:
        kind, num = m.group(1), int(m.group(2))
        spec = {"S": f"Sym({num})", "A": f"Alt({num})",
                "C": f"Cyclic({num})", "D": f"Dihedral({num})"}[kind]
    m = re.fullmatch(r"(Sym|Alt|Cyclic|Dihedral)\((\d+)\)", spec, re.IGNORECASE)
    if m:
        kind = m.group(1).lower()
        n = int(m.group(2))
        if kind == "sym":
            return generate_group(_sym_gens(n), degree=max(n, 1), name=raw)
        if kind == "alt":
            return generate_group(_alt_gens(n), degree=max(n, 1), name=raw)
        if kind == "cyclic":
            if n < 1:
                raise UnknownSpec(f"bad cyclic order {n}")
            gens = [] if n == 1 else [Permutation.from_cycles(n, [tuple(range(n))])]
            return generate_group(gens, degree=n, name=raw)
        if kind == "dihedral":
            return generate_group(_dihedral_gens(n), name=raw)
    if spec.replace(" ", "") == "Wreath(Sym(3),Cyclic(2))":
        return generate_group(_wreath_s3_c2_gens(), name=raw)
    if spec.upper() in ("GL(3,2)",):
        return generate_group(_gl32_gens(), name=raw)
    raise UnknownSpec(f"unknown builtin group spec {name!r}")


def load_group(path: str | Path, cap: int = ENUMERATION_CAP) -> Group:
    """Read a group catalog file {"name", "degree", "generators"} (0-based image lists)."""
    data = json.loads(Path(path).read_text())
    try:
        degree = int(data["degree"])
        raw_gens = data["generators"]
        name = data.get("name")
    except (KeyError, TypeError) as exc:
        raise UnknownSpec(f"malformed group file {path}: {exc}") from exc
    gens = []
    for images in raw_gens:
        if len(images) != degree:
            raise DegreeMismatch(f"generator of length {len(images)} in degree-{degree} file")
        gens.append(Permutation(images))
    return generate_group(gens, degree=degree, cap=cap, name=name)
