"""Acceptance suite: one test per criterion, one printed verdict line each.

Everything here is exact combinatorics; "tolerance" is equality throughout.
Expensive constructions are memoized per (group, prime) so the whole module
stays well inside the per-criterion runtime budgets.
"""

import json
from functools import lru_cache
from pathlib import Path

import pytest

from pspaces.cli import main as cli_main
from pspaces.permgrp import (
    Subgroup,
    builtin_group,
    center,
    conjugate_subgroup,
    is_abelian,
    load_group,
    omega1,
    p_core,
    p_part,
    sylow,
)
from pspaces.poset import (
    Pi1Status,
    Poset,
    core,
    homology,
    is_contractible,
    order_complex,
    pi1_status,
    posets_isomorphic,
    strong_deformation_retract,
)
from pspaces.pposets import (
    build_chain_subcomplex_poset,
    build_p_subgroup_poset,
    chain_complex_quotient,
    chain_quotient,
    elementary_abelian_subgroups,
    elementary_hull,
    elementary_orbit_contraction,
    fully_centralized,
    omega_comparable_subposet,
    p_rank,
    rank_gap,
    sylow_chain_contraction,
    verify_conical_contraction,
)
from pspaces.quotient import (
    GPoset,
    alpha_map,
    chain_orbit_poset,
    orbit_complex,
    orbit_poset,
    property_a,
    property_b,
    subdivide_gposet,
    subdivision_quotient_iso,
)

from conftest import CATALOG_PAIRS, cyc

DATA_26T62 = Path(__file__).resolve().parent.parent / "data" / "26t62.json"


def report(number, description, ok):
    print(f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'} {description}")
    assert ok, f"criterion {number}: {description}"


@lru_cache(maxsize=None)
def psp(name, p, kind):
    return build_p_subgroup_poset(builtin_group(name), p, kind)


@lru_cache(maxsize=None)
def quotient_of_chains(name, p, kind):
    return chain_quotient(psp(name, p, kind))


def flip_circle_gposet():
    circle = Poset.from_relation(
        ["m0", "m1", "M0", "M1"], [(0, 2), (0, 3), (1, 2), (1, 3)])
    c2 = builtin_group("C2")
    flip = [1, 0, 3, 2]
    return GPoset(circle, c2, lambda x, gid: x if gid == c2.identity_id else flip[x])


def test_criterion_01_sylow_fusion_base():
    s4 = builtin_group("S4")
    d = sylow(s4, 2)
    dihedral = (d.order == 8
                and any(s4.element_order(i) == 4 for i in d.members)
                and not is_abelian(d))
    paper_d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    h1 = Subgroup.generated(s4, [cyc(4, (1, 3), (2, 4))])
    h2 = Subgroup.generated(s4, [cyc(4, (1, 2), (3, 4))])
    z_ok = center(paper_d).members == h1.members
    conj_ok = conjugate_subgroup(h2, s4.id_of(cyc(4, (2, 3)))).members == h1.members
    sp = psp("S4", 2, "Sp")
    co = chain_orbit_poset(sp.gposet)
    chain1 = (sp.index_of(h1), sp.index_of(paper_d))
    chain2 = (sp.index_of(h2), sp.index_of(paper_d))
    distinct = co.orbit_of_chain(chain1) != co.orbit_of_chain(chain2)
    report(1, "Sylow 2-subgroup of S4 dihedral; Z(D), conjugating element,"
              " and distinct chain orbits reproduced",
           dihedral and z_ok and conj_ok and distinct)


def test_criterion_02_property_machinery():
    xg = psp("S4", 2, "Sp").gposet
    a_ok = property_a(xg)
    b_fails = not property_b(xg)
    alpha = alpha_map(xg)
    noninj = not alpha.injective
    alpha_sub = alpha_map(subdivide_gposet(xg))
    iso_on_subdivision = alpha_sub.injective and alpha_sub.isomorphism
    iterated = subdivision_quotient_iso(xg, 2)
    report(2, "property (A) holds, (B) fails, alpha non-injective, alpha iso"
              " on the subdivision, iterated quotient iso at n = 2",
           a_ok and b_fails and noninj and iso_on_subdivision and iterated)


def test_criterion_03_flip_circle_suite():
    xg = flip_circle_gposet()
    quotient = orbit_poset(xg)
    two_chain = quotient.space.n == 2 and quotient.space.lt(0, 1)
    k_quotient = orbit_complex(order_complex(xg.space), quotient.fiber,
                               quotient.space.labels)
    k_of_quotient = order_complex(quotient.space)
    single_edge = (k_quotient == k_of_quotient
                   and k_quotient.f_vector() == [2, 1]
                   and homology(k_quotient).is_zero())
    chains_quotient = chain_orbit_poset(xg)
    circle_homology = homology(order_complex(chains_quotient.space)).reduced_betti == [0, 1]
    report(3, "flip circle: X/G is the 2-chain, K(X)/G = K(X/G) is one"
              " 1-simplex, X'/G has reduced betti [0, 1]",
           two_chain and single_edge and circle_homology)


def test_criterion_04_brown_congruence():
    failures = []
    for name, p in CATALOG_PAIRS:
        counts = psp(name, p, "Sp").poset.chain_count_by_length()
        euler = sum((-1) ** k * c for k, c in enumerate(counts))
        modulus = p_part(builtin_group(name).order, p)
        if euler % modulus != 1 % modulus:
            failures.append((name, p, euler, modulus))
    report(4, f"Euler characteristic congruent to 1 mod |G|_p on all"
              f" {len(CATALOG_PAIRS)} catalog pairs", not failures)


def test_criterion_05_quillen_weak_equivalence():
    failures = []
    for name, p in CATALOG_PAIRS:
        h_sp = homology(order_complex(psp(name, p, "Sp").poset))
        h_ap = homology(order_complex(psp(name, p, "Ap").poset))
        if h_sp != h_ap:
            failures.append((name, p))
    report(5, f"homology of K(Ap) equals K(Sp) on all {len(CATALOG_PAIRS)}"
              f" catalog pairs", not failures)


def test_criterion_06_stong_criterion():
    failures = []
    for name, p in CATALOG_PAIRS:
        contractible = is_contractible(psp(name, p, "Sp").poset)
        nontrivial_core = p_core(builtin_group(name), p).order > 1
        if contractible != nontrivial_core:
            failures.append((name, p))
    report(6, "Sp contractible exactly when the p-core is nontrivial,"
              " across the catalog", not failures)


def test_criterion_07_conical_contraction_with_oracle():
    failures = []
    for name, p in CATALOG_PAIRS:
        g = builtin_group(name)
        orbit, candidates, apex = elementary_orbit_contraction(g, p)
        if not verify_conical_contraction(orbit, candidates, apex).ok:
            failures.append((name, p, "conical"))
        p_syl = psp(name, p, "Ap").sylow
        subs = elementary_abelian_subgroups(p_syl, p)
        maximal = [s for s in subs if not any(s.members < t.members for t in subs)]
        for a in subs:
            if not fully_centralized(a, p_syl):
                continue
            over = [s for s in maximal if a.members <= s.members]
            oracle = frozenset.intersection(*(s.members for s in over))
            if elementary_hull(a, p_syl).members != oracle:
                failures.append((name, p, "hull"))
    report(7, "Ap(G)/G conically contractible with the hull map agreeing"
              " with the maximal-intersection oracle, across the catalog",
           not failures)


def test_criterion_08_webb_at_desk_scale():
    failures = []
    inconclusive = []
    for name in ("S4", "A5", "A6", "GL32"):
        quotients = {kind: quotient_of_chains(name, 2, kind)
                     for kind in ("Sp", "Ap", "Bp")}
        rp = build_chain_subcomplex_poset(builtin_group(name), 2, "Rp")
        quotients["Rp"] = chain_complex_quotient(rp)
        for kind, quotient in quotients.items():
            k = order_complex(quotient.space)
            if not homology(k).is_zero():
                failures.append((name, kind, "homology"))
            status = pi1_status(k)
            if status is Pi1Status.NONTRIVIAL:
                failures.append((name, kind, "pi1"))
            elif status is Pi1Status.UNKNOWN:
                inconclusive.append((name, kind))
    if inconclusive:
        print(f"ACCEPTANCE  8 NOTE inconclusive pi1 checks: {inconclusive}")
    report(8, "orbit spaces of K(S2), K(A2), K(B2), R2 homologically trivial"
              " with trivial fundamental group over S4, A5, A6, GL(3,2)",
           not failures)


def test_criterion_09_noncontractibility_witnesses():
    core_a6 = core(quotient_of_chains("A6", 2, "Sp").space)[0].n
    core_gl = core(quotient_of_chains("GL32", 2, "Sp").space)[0].n
    report(9, f"cores of S2(A6)'/G and S2(GL32)'/G have {core_a6} and"
              f" {core_gl} points (both > 1)", core_a6 > 1 and core_gl > 1)


FIGURE_LABELS = ["P", "Q", "R", "A", "B", "QP", "RP", "AP", "BRg", "BR", "BP",
                 "BhP", "BhQ", "T1", "T2", "T3", "T4"]
FIGURE_COVERS = [
    (0, 5), (0, 6), (0, 7), (0, 10), (0, 11),
    (1, 5), (1, 12),
    (2, 6), (2, 8), (2, 9),
    (3, 7),
    (4, 8), (4, 9), (4, 10), (4, 11), (4, 12),
    (5, 15),
    (6, 13), (6, 14), (6, 16),
    (8, 13), (8, 16),
    (9, 14),
    (10, 13), (10, 14),
    (11, 15), (11, 16),
    (12, 15),
]


def test_criterion_10_radical_quotient_of_degree26_group():
    if not DATA_26T62.exists():
        print("ACCEPTANCE 10 SKIP generator file data/26t62.json is absent")
        pytest.skip("external generator file for the degree-26 group is absent")
    g = load_group(DATA_26T62)
    order_ok = g.order == 31200
    bp = build_p_subgroup_poset(g, 2, "Bp")
    quotient = chain_quotient(bp)
    heights = quotient.space.heights()
    shape_ok = quotient.space.n == 17 and heights.count(0) == 5 \
        and heights.count(1) == 8 and heights.count(2) == 4
    expected = Poset.from_covers(FIGURE_LABELS, FIGURE_COVERS)
    iso_ok = posets_isomorphic(quotient.space, expected)
    core_size = core(quotient.space)[0].n
    report(10, f"B2'/G of the degree-26 order-31200 group: 17 elements"
               f" (5/8/4 by height), figure-isomorphic, core {core_size} > 1",
           order_ok and shape_ok and iso_ok and core_size > 1)


def test_criterion_11_xp_suite():
    w_core, _ = core(psp("S3wrC2", 2, "Xp").poset)
    antichain9 = w_core.n == 9 and w_core.is_antichain()
    betti = homology(order_complex(psp("S3wrC2", 2, "Sp").poset)).reduced_betti
    wedge16 = betti[:2] == [0, 16] and all(b == 0 for b in betti[2:])
    failures = []
    for name, p in CATALOG_PAIRS:
        g = builtin_group(name)
        for kind in ("Xp", "N"):
            orbit, candidates, apex = sylow_chain_contraction(g, p, kind)
            if not verify_conical_contraction(orbit, candidates, apex).ok:
                failures.append((name, p, kind))
    report(11, "X2(S3wrC2) core is a 9-point antichain, K(S2) is a wedge of"
               " 16 circles, and Xp'/G plus N/G are conically contractible"
               " across the catalog", antichain9 and wedge16 and not failures)


def test_criterion_12_section5_conditional_sweeps():
    failures = []
    sdr_lemma_ok = True
    for name, p in CATALOG_PAIRS:
        g = builtin_group(name)
        p_syl = psp(name, p, "Sp").sylow
        quotient = quotient_of_chains(name, p, "Ap")
        contractible = is_contractible(quotient.space)
        hypotheses = []
        if is_abelian(omega1(p_syl, p)):
            hypotheses.append("omega1-abelian")
            if not is_contractible(quotient_of_chains(name, p, "Sp").space):
                failures.append((name, p, "sp-quotient"))
        cofactor = g.order // p_part(g.order, p)
        if cofactor > 1 and all(cofactor % q for q in range(2, cofactor)):
            hypotheses.append("pq")
        if rank_gap(g, p) <= 1:
            hypotheses.append("rank-gap")
        if quotient.space.height() == 1:
            hypotheses.append("height-one")
        if p_syl.order <= p ** 4:
            hypotheses.append("small-sylow")
        if hypotheses and not contractible:
            failures.append((name, p, hypotheses))
        if is_abelian(p_syl):
            isp_keys = {s.key() for s in psp(name, p, "iSp").subgroups()}
            bp_keys = {s.key() for s in psp(name, p, "Bp").subgroups()}
            if isp_keys != bp_keys:
                failures.append((name, p, "isp-vs-bp"))
            if not is_contractible(quotient_of_chains(name, p, "Bp").space):
                failures.append((name, p, "bp-quotient"))
    orbit, keep = omega_comparable_subposet(builtin_group("S4"), 2)
    sdr_lemma_ok = strong_deformation_retract(orbit.space, keep) is True
    report(12, "conditional contractibility sweeps (abelian Omega1, p^a*q,"
               " rank gap, height one, |P| <= p^4), radical/intersection"
               " coincidence, and the omega-comparable retract of A2(S4)'/G",
           not failures and sdr_lemma_ok)


def test_criterion_13_conjecture_scan(tmp_path):
    out = tmp_path / "summary.json"
    code = cli_main(["catalog", "--tasks", "conjecture", "--out", str(out)])
    summary = json.loads(out.read_text())
    violations = summary["violations"]
    entries = summary["entries"]
    report(13, f"catalog sweep over {len(entries)} (G, p) pairs finds"
               f" {len(violations)} counterexamples to the contractibility"
               f" conjecture", code == 0 and not violations and len(entries) == len(CATALOG_PAIRS))
