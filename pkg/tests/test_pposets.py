import itertools

import pytest

from pspaces.errors import NotFullyCentralized, PreconditionViolated, PrimeDoesNotDivide
from pspaces.permgrp import (
    Subgroup,
    builtin_group,
    center,
    centralizer,
    conjugate_subgroup,
    fully_centralized,
    is_elementary_abelian,
    normalizer,
    omega1,
    p_core,
    sylow,
    sylow_subgroups,
)
from pspaces.poset import core, is_contractible, strong_deformation_retract
from pspaces.pposets import (
    FusionStep,
    build_chain_subcomplex_poset,
    build_p_subgroup_poset,
    central_omega,
    check_fusion_certificate,
    elementary_abelian_subgroups,
    elementary_hull,
    elementary_orbit_contraction,
    fusion_certificate,
    is_normal_in,
    omega_comparable_subposet,
    p_rank,
    rank_gap,
    subgroups_of_pgroup,
    sylow_chain_contraction,
    sylow_intersections,
    verify_conical_contraction,
)
from pspaces.quotient import alpha_map, orbit_poset, property_b, subdivision_quotient_iso

from conftest import cyc


@pytest.fixture(scope="module")
def s4():
    return builtin_group("S4")


@pytest.fixture(scope="module")
def sp_s4(s4):
    return build_p_subgroup_poset(s4, 2, "Sp")


# --- enumeration -----------------------------------------------------------------

def brute_force_2_subgroups(group):
    """Oracle: closures of <=3-element subsets of 2-elements (Burnside basis
    bound: 2-groups of order <= 8 are at most 3-generated)."""
    twos = [i for i in range(group.order)
            if group.element_order(i) > 1 and group.element_order(i) in (2, 4, 8)]
    found = set()
    for r in (1, 2, 3):
        for gens in itertools.combinations(twos, r):
            s = Subgroup.generated(group, list(gens))
            if 1 < s.order <= 8 and s.order in (2, 4, 8):
                found.add(s.key())
    return found


def test_sp_s4_has_19_elements_matching_brute_force(s4, sp_s4):
    assert sp_s4.poset.n == 19
    assert {s.key() for s in sp_s4.subgroups()} == brute_force_2_subgroups(s4)


def test_subgroups_of_pgroup_d8(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    subs = subgroups_of_pgroup(d, 2)
    assert [s.order for s in subs] == [2, 2, 2, 2, 2, 4, 4, 4, 8]


def test_ap_s4_has_13_elements(s4):
    ap = build_p_subgroup_poset(s4, 2, "Ap")
    assert ap.poset.n == 13
    assert all(is_elementary_abelian(s, 2) for s in ap.subgroups())


def test_bp_s4_is_klein_under_three_sylows(s4):
    bp = build_p_subgroup_poset(s4, 2, "Bp")
    assert bp.poset.n == 4
    orders = sorted(s.order for s in bp.subgroups())
    assert orders == [4, 8, 8, 8]
    v = bp.poset.labels[0]
    assert v.order == 4
    assert bp.poset.above[0].bit_count() == 3


def test_xp_s4(s4):
    xp = build_p_subgroup_poset(s4, 2, "Xp")
    assert xp.poset.n == 10
    sylows = sylow_subgroups(s4, 2)
    for s in xp.subgroups():
        for syl in sylows:
            if s.members <= syl.members:
                assert is_normal_in(s, syl)


def test_isp_matches_brute_force_intersection_closure(s4):
    isp = build_p_subgroup_poset(s4, 2, "iSp")
    sylows = sylow_subgroups(s4, 2)
    family = {s.members for s in sylows}
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                inter = a & b
                if len(inter) > 1 and inter not in family:
                    family.add(inter)
                    changed = True
    assert {s.members for s in isp.subgroups()} == family


def test_sylows_belong_to_every_kind(s4):
    sylows = {s.key() for s in sylow_subgroups(s4, 2)}
    for kind in ("Sp", "Bp", "Xp", "iSp"):
        psp = build_p_subgroup_poset(s4, 2, kind)
        assert sylows <= {s.key() for s in psp.subgroups()}


def test_kind_laws_on_small_catalog():
    for name, p in (("S4", 2), ("A5", 2), ("S3wrC2", 2), ("S4", 3)):
        g = builtin_group(name)
        bp = build_p_subgroup_poset(g, p, "Bp")
        for q in bp.subgroups():
            assert p_core(normalizer(g, q), p).members == q.members
        xp = build_p_subgroup_poset(g, p, "Xp")
        sylows = sylow_subgroups(g, p)
        for q in xp.subgroups():
            assert all(is_normal_in(q, s) for s in sylows if q.members <= s.members)


def test_abelian_sylow_forces_isp_equal_bp():
    for name, p in (("S4", 3), ("A5", 2), ("A5", 5), ("GL32", 7), ("S3", 3)):
        g = builtin_group(name)
        from pspaces.permgrp import is_abelian
        assert is_abelian(sylow(g, p))
        isp = build_p_subgroup_poset(g, p, "iSp")
        bp = build_p_subgroup_poset(g, p, "Bp")
        assert {s.key() for s in isp.subgroups()} == {s.key() for s in bp.subgroups()}


def test_prime_must_divide(s4):
    with pytest.raises(PrimeDoesNotDivide):
        build_p_subgroup_poset(s4, 7, "Sp")


def test_unknown_kind(s4):
    with pytest.raises(ValueError):
        build_p_subgroup_poset(s4, 2, "Zp")


def test_names_are_order_letter(sp_s4):
    assert sp_s4.names[0] == "2a"
    assert sp_s4.names[-1] == "8c"
    assert len(set(sp_s4.names)) == 19


# --- chain subcomplex posets -------------------------------------------------------

def test_rp_s4_membership(s4, sp_s4):
    rp = build_chain_subcomplex_poset(s4, 2, "Rp")
    d = sp_s4.index_of(Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))]))
    v = sp_s4.index_of(Subgroup.generated(s4, [cyc(4, (1, 2), (3, 4)), cyc(4, (1, 3), (2, 4))]))
    t = sp_s4.index_of(Subgroup.generated(s4, [cyc(4, (1, 3))]))
    assert (v, d) in rp.index              # V < D with V normal in D
    assert (t, d) not in rp.index          # <(1 3)> is not normal in D
    assert (t,) in rp.index                # singletons always qualify


def test_rp_chains_closed_under_subchains(s4):
    rp = build_chain_subcomplex_poset(s4, 2, "Rp")
    for chain in rp.poset.labels:
        for k in range(1, len(chain)):
            for sub in itertools.combinations(chain, k):
                assert sub in rp.index


def test_n_contains_singletons_normal_in_some_sylow(s4, sp_s4):
    n = build_chain_subcomplex_poset(s4, 2, "N")
    sylows = sylow_subgroups(s4, 2)
    for i, q in enumerate(sp_s4.subgroups()):
        expected = any(is_normal_in(q, s) for s in sylows)
        assert ((i,) in n.index) == expected


# --- ranks --------------------------------------------------------------------------

def test_p_rank_values(s4):
    v = Subgroup.generated(s4, [cyc(4, (1, 2), (3, 4)), cyc(4, (1, 3), (2, 4))])
    assert p_rank(v, 2) == 2
    assert p_rank(builtin_group("C4"), 2) == 1
    assert p_rank(s4, 2) == 2
    assert p_rank(s4, 3) == 1
    assert p_rank(builtin_group("A6"), 2) == 2


def d8_times_d8():
    from pspaces.permgrp import generate_group
    gens = [cyc(8, (1, 3)), cyc(8, (1, 2, 3, 4)), cyc(8, (5, 7)), cyc(8, (5, 6, 7, 8))]
    return generate_group(gens, name="D8xD8")


def test_rank_gap(s4):
    assert rank_gap(s4, 2) == 1
    assert rank_gap(s4, 3) == 0
    assert rank_gap(builtin_group("A6"), 2) == 1
    assert rank_gap(builtin_group("S3wrC2"), 2) == 1
    assert rank_gap(d8_times_d8(), 2) == 2
    with pytest.raises(PrimeDoesNotDivide):
        rank_gap(s4, 5)


def test_elementary_abelian_enumeration_inside_d8(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    subs = elementary_abelian_subgroups(d, 2)
    assert [s.order for s in subs] == [2, 2, 2, 2, 2, 4, 4]


# --- the hull map -------------------------------------------------------------------

def hull_oracle(a, p_syl, p):
    """Independent oracle: intersect the maximal elementary abelian subgroups
    of P containing A."""
    subs = elementary_abelian_subgroups(p_syl, p)
    maximal = [s for s in subs if not any(s.members < t.members for t in subs)]
    over = [s for s in maximal if a.members <= s.members]
    members = frozenset.intersection(*(s.members for s in over))
    return members


def test_hull_of_sylow_center(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    z = center(d)
    assert elementary_hull(z, d).members == z.members


def test_hull_matches_maximal_intersection_oracle():
    for name, p in (("S4", 2), ("A6", 2), ("S3wrC2", 2), ("GL32", 2), ("S4", 3)):
        g = builtin_group(name)
        p_syl = sylow(g, p)
        for a in elementary_abelian_subgroups(p_syl, p):
            if not fully_centralized(a, p_syl):
                continue
            hull = elementary_hull(a, p_syl)
            assert hull.members == hull_oracle(a, p_syl, p)
            assert is_elementary_abelian(hull, p)
            assert a.members <= hull.members
            assert central_omega(p_syl, p).members <= hull.members


def test_hull_of_maximal_is_itself(s4):
    d = sylow(s4, 2)
    subs = elementary_abelian_subgroups(d, 2)
    maximal = [s for s in subs if not any(s.members < t.members for t in subs)]
    for a in maximal:
        if fully_centralized(a, d):
            assert elementary_hull(a, d).members == a.members


def test_hull_in_abelian_sylow_is_omega1():
    g = builtin_group("C4")
    p_syl = sylow(g, 2)
    a = omega1(p_syl, 2)
    assert elementary_hull(a, p_syl).members == omega1(p_syl, 2).members


def test_hull_requires_fully_centralized(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    q = Subgroup.generated(s4, [cyc(4, (1, 2), (3, 4))])
    with pytest.raises(NotFullyCentralized):
        elementary_hull(q, d)


def test_fc_product_with_omega_lemma():
    # fully centralized C <= P forces C*Omega fully centralized with the
    # same centralizer in P
    for name, p in (("S4", 2), ("A6", 2), ("S3wrC2", 2), ("GL32", 2)):
        g = builtin_group(name)
        p_syl = sylow(g, p)
        omega = central_omega(p_syl, p)
        for c in subgroups_of_pgroup(p_syl, p):
            if not fully_centralized(c, p_syl):
                continue
            c_omega = Subgroup.generated(g, list(c.generating_ids()) + list(omega.generating_ids()))
            assert fully_centralized(c_omega, p_syl)
            assert centralizer(p_syl, c_omega).members == centralizer(p_syl, c).members


# --- conical contractions -------------------------------------------------------------

def test_elementary_orbit_contraction_s4(s4):
    orbit, candidates, apex = elementary_orbit_contraction(s4, 2)
    report = verify_conical_contraction(orbit, candidates, apex)
    assert report.ok
    assert orbit.space.leq(apex, report.f[apex])


def test_conical_contraction_small_catalog():
    for name, p in (("S4", 2), ("S4", 3), ("A5", 2), ("A5", 5), ("S3wrC2", 2)):
        g = builtin_group(name)
        orbit, candidates, apex = elementary_orbit_contraction(g, p)
        assert verify_conical_contraction(orbit, candidates, apex).ok


def test_constant_poset_conical():
    from pspaces.quotient import GPoset
    from pspaces.poset import Poset
    g = builtin_group("Cyclic(1)")
    xg = GPoset(Poset.antichain(["pt"]), g, lambda x, gid: x)
    orbit = orbit_poset(xg)
    report = verify_conical_contraction(orbit, {0: {0}}, 0)
    assert report.ok


def test_sylow_chain_contraction_xp_and_n():
    for name, p in (("S4", 2), ("S3wrC2", 2), ("A5", 2)):
        g = builtin_group(name)
        for kind in ("Xp", "N"):
            orbit, candidates, apex = sylow_chain_contraction(g, p, kind)
            assert verify_conical_contraction(orbit, candidates, apex).ok


def test_verify_conical_flags_missing_candidates():
    s4 = builtin_group("S4")
    orbit, candidates, apex = elementary_orbit_contraction(s4, 2)
    candidates.pop(0)
    with pytest.raises(PreconditionViolated):
        verify_conical_contraction(orbit, candidates, apex)


def test_verify_conical_reports_bad_map(s4):
    orbit, candidates, apex = elementary_orbit_contraction(s4, 2)
    minimal = orbit.space.minimal_elements()
    bad = {x: {minimal[0]} for x in range(orbit.space.n)}
    report = verify_conical_contraction(orbit, bad, apex)
    assert not report.ok
    assert report.not_conical or report.not_order_preserving


# --- the omega-comparable retract ------------------------------------------------------

def test_omega_comparable_subposet_s4_is_sdr(s4):
    orbit, keep = omega_comparable_subposet(s4, 2)
    assert orbit.space.n == 7
    assert len(keep) == 5
    assert strong_deformation_retract(orbit.space, keep) is True


def test_omega_comparable_on_gap_two_group():
    g = d8_times_d8()
    assert rank_gap(g, 2) == 2
    orbit, keep = omega_comparable_subposet(g, 2)
    assert strong_deformation_retract(orbit.space, keep) is True


# --- fusion certificates -----------------------------------------------------------------

def test_fusion_certificate_paper_pair(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    a = Subgroup.generated(s4, [cyc(4, (1, 2), (3, 4))])
    g = cyc(4, (2, 3))
    steps = fusion_certificate(s4, d, a, g)
    assert steps is not None
    assert check_fusion_certificate(s4, d, a, g, steps)


def test_fusion_certificate_normalizer_single_step(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    a = Subgroup.generated(s4, [cyc(4, (1, 3), (2, 4))])
    g = cyc(4, (1, 3))  # inside D, normalizes it
    assert check_fusion_certificate(s4, d, a, g, [FusionStep(subgroup=d, element=g)])
    steps = fusion_certificate(s4, d, a, g)
    assert steps is not None and len(steps) <= 1


def test_fusion_certificate_centralizing_element_empty(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    a = Subgroup.generated(s4, [cyc(4, (1, 3), (2, 4))])
    g = cyc(4, (2, 4))  # centralizes (1 3)(2 4)
    assert fusion_certificate(s4, d, a, g) == []


def test_fusion_certificate_exhaustive_on_s4(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    for a in subgroups_of_pgroup(d, 2):
        for gid in range(s4.order):
            img = conjugate_subgroup(a, gid)
            if not img.members <= d.members:
                continue
            steps = fusion_certificate(s4, d, a, s4.perm(gid))
            assert steps is not None
            assert check_fusion_certificate(s4, d, a, s4.perm(gid), steps)


def test_fusion_certificate_precondition(s4):
    d = Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])
    a = Subgroup.generated(s4, [cyc(4, (1, 3))])
    with pytest.raises(PreconditionViolated):
        fusion_certificate(s4, d, a, cyc(4, (1, 2, 3)))  # image leaves P


# --- spec acceptance slices used elsewhere ---------------------------------------------

def test_s2_s4_quotient_machinery(sp_s4):
    assert not property_b(sp_s4.gposet)
    res = alpha_map(sp_s4.gposet)
    assert not res.injective
    assert subdivision_quotient_iso(sp_s4.gposet, 2)


def test_homotopy_types_of_ap_vs_sp_for_s4(s4, sp_s4):
    # both are contractible here: S2 by the nontrivial 2-core, A2 by collapse
    ap = build_p_subgroup_poset(s4, 2, "Ap")
    assert is_contractible(sp_s4.poset)
    assert is_contractible(ap.poset)
    from pspaces.poset import homotopy_equivalent
    assert homotopy_equivalent(ap.poset, sp_s4.poset)


def test_ap_not_sdr_of_sp_when_omega1_nonabelian(s4, sp_s4):
    ap_keys = {s.key() for s in build_p_subgroup_poset(s4, 2, "Ap").subgroups()}
    keep = [i for i, s in enumerate(sp_s4.subgroups()) if s.key() in ap_keys]
    assert strong_deformation_retract(sp_s4.poset, keep) is False


def test_sp_quotient_has_sylow_orbit_maximum():
    for name, p in (("S4", 2), ("A5", 2), ("A6", 3), ("GL32", 2)):
        sp = build_p_subgroup_poset(builtin_group(name), p, "Sp")
        quotient = orbit_poset(sp.gposet)
        assert quotient.space.has_maximum()
        top = quotient.space.maximal_elements()[0]
        assert quotient.space.labels[top].order == sp.sylow.order


def test_quotient_complex_law_on_subgroup_poset(sp_s4):
    from pspaces.quotient import quotient_order_complexes_agree
    assert quotient_order_complexes_agree(sp_s4.gposet)


def test_contractible_posets_have_contractible_chain_quotients():
    # pairs with a nontrivial p-core, so Sp(G) itself is contractible
    from pspaces.pposets import chain_quotient
    for name, p in (("S4", 2), ("A4", 2), ("D8", 2), ("S3", 3)):
        g = builtin_group(name)
        assert p_core(g, p).order > 1
        sp = build_p_subgroup_poset(g, p, "Sp")
        assert is_contractible(sp.poset)
        assert is_contractible(chain_quotient(sp).space)


def test_xp_of_wreath_is_nine_point_antichain():
    from pspaces.poset import Poset, homotopy_equivalent
    xp = build_p_subgroup_poset(builtin_group("S3wrC2"), 2, "Xp")
    assert homotopy_equivalent(xp.poset, Poset.antichain(range(9)))
