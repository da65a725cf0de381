"""Command-line verification harness: build posets, run checks, emit reports.

Subcommands: `build` dumps a requested poset (JSON/DOT/figure), `verify`
runs one named check pipeline for a (group, prime) pair, and `catalog`
sweeps tasks over a whole collection.  Reports are JSON, summaries are CSV,
and figures are rendered next to them when requested.

Exit codes: 0 all checks passed, 1 a check failed (or a sweep entry
errored), 2 usage or input error, 3 a size or search budget was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

from .errors import BudgetError, ToolkitError, UnknownSpec, UsageError
from .permgrp import (
    ENUMERATION_CAP,
    Group,
    builtin_group,
    is_abelian,
    load_group,
    omega1,
    p_core,
    p_part,
    sylow,
)
from .poset import (
    CHAIN_CAP,
    COSET_CAP,
    SDR_CAP,
    Pi1Status,
    Poset,
    core,
    homology,
    order_complex,
    pi1_status,
    poset_to_dot,
    poset_to_json,
    strong_deformation_retract,
)
from .pposets import (
    CHAIN_KINDS,
    FUSION_CAP,
    POSET_KINDS,
    build_chain_subcomplex_poset,
    build_p_subgroup_poset,
    chain_complex_quotient,
    chain_quotient,
    check_fusion_certificate,
    elementary_abelian_subgroups,
    elementary_hull,
    elementary_orbit_contraction,
    fully_centralized,
    fusion_certificate,
    omega_comparable_subposet,
    p_rank,
    rank_gap,
    subgroups_of_pgroup,
    sylow_chain_contraction,
    verify_conical_contraction,
)
from .quotient import chain_orbit_poset, orbit_poset, subdivide_gposet

BUILTIN_CATALOG = ["S3", "S4", "S5", "A4", "A5", "A6", "D8", "GL32", "S3wrC2"]
TASKS = ("webb", "conjecture", "conical", "brown", "stong", "rankgap", "pq", "sdr",
         "alperin", "xp")

PASS, FAIL, INCONCLUSIVE, HYP, INFO, ERROR = (
    "pass", "fail", "inconclusive", "hypothesis-not-met", "info", "error")


@dataclass
class Budgets:
    cap: int = ENUMERATION_CAP
    chains: int = CHAIN_CAP
    cosets: int = COSET_CAP
    sdr: int = SDR_CAP
    fusion: int = FUSION_CAP

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckResult:
    name: str
    verdict: str
    detail: str = ""
    witness: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    task: str
    group: str
    prime: int
    checks: list[CheckResult]
    budgets: dict
    timings: dict

    @property
    def overall(self) -> str:
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts or ERROR in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return PASS

    def as_dict(self) -> dict:
        return {
            "task": self.task,
            "group": self.group,
            "prime": self.prime,
            "overall": self.overall,
            "checks": [asdict(c) for c in self.checks],
            "budgets": self.budgets,
            "timings": self.timings,
        }


def primes_of(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def parse_group(spec: str, cap: int = ENUMERATION_CAP) -> Group:
    if spec.startswith("builtin:"):
        return builtin_group(spec[len("builtin:"):])
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        if not path.exists():
            raise UnknownSpec(f"group file not found: {path}")
        return load_group(path, cap=cap)
    return builtin_group(spec)


def group_label(g: Group) -> str:
    return g.name or f"degree{g.degree}-order{g.order}"


# --- verification tasks --------------------------------------------------------

def _contractibility(poset: Poset) -> tuple[bool, int]:
    c, _ = core(poset)
    return c.n == 1, c.n


def task_webb(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Orbit spaces of the classifying-complex family have trivial homology
    and trivial fundamental group."""
    checks = []
    variants = {}
    for kind in ("Sp", "Ap", "Bp"):
        psp = build_p_subgroup_poset(g, p, kind)
        variants[kind] = chain_quotient(psp, cap=budgets.chains)
    variants["Rp"] = chain_complex_quotient(build_chain_subcomplex_poset(g, p, "Rp", cap=budgets.chains))
    for kind, quotient in variants.items():
        k = order_complex(quotient.space, cap=budgets.chains)
        profile = homology(k, cap=budgets.chains)
        checks.append(CheckResult(
            name=f"{kind}-quotient-homology-zero",
            verdict=PASS if profile.is_zero() else FAIL,
            detail=f"reduced betti {profile.reduced_betti}, torsion {profile.torsion}",
            witness={"betti": profile.reduced_betti, "torsion": profile.torsion}))
        status = pi1_status(k, coset_cap=budgets.cosets)
        verdict = {Pi1Status.TRIVIAL: PASS, Pi1Status.NONTRIVIAL: FAIL,
                   Pi1Status.UNKNOWN: INCONCLUSIVE}[status]
        checks.append(CheckResult(
            name=f"{kind}-quotient-pi1-trivial",
            verdict=verdict,
            detail=f"fundamental group status: {status.value}",
            witness={"coset_budget": budgets.cosets} if verdict == INCONCLUSIVE else {}))
        contractible, size = _contractibility(quotient.space)
        checks.append(CheckResult(
            name=f"{kind}-quotient-contractible",
            verdict=INFO,
            detail=f"contractible: {contractible} (core has {size} points)",
            witness={"contractible": contractible, "core_size": size}))
    return checks


def task_conjecture(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """The subdivided elementary abelian quotient is a contractible space."""
    ap = build_p_subgroup_poset(g, p, "Ap")
    quotient = chain_quotient(ap, cap=budgets.chains)
    contractible, size = _contractibility(quotient.space)
    p_order = ap.sylow.order
    return [
        CheckResult(
            name="ap-chain-quotient-contractible",
            verdict=PASS if contractible else FAIL,
            detail=f"{quotient.space.n} chain orbits, core has {size} points",
            witness={"orbits": quotient.space.n, "core_size": size}),
        CheckResult(
            name="sylow-size",
            verdict=INFO,
            detail=f"|P| = {p_order} (p^4 = {p ** 4})",
            witness={"sylow_order": p_order}),
    ]


def task_conical(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """The unsubdivided elementary abelian quotient is conically contractible."""
    orbit, candidates, apex = elementary_orbit_contraction(g, p)
    report = verify_conical_contraction(orbit, candidates, apex)
    checks = [CheckResult(
        name="ap-quotient-conically-contractible",
        verdict=PASS if report.ok else FAIL,
        detail=(f"apex orbit {apex}; f well-defined on {orbit.space.n} orbits"
                if report.ok else "violations recorded"),
        witness={} if report.ok else {
            "not_well_defined": report.not_well_defined,
            "not_order_preserving": report.not_order_preserving,
            "not_conical": report.not_conical})]
    p_syl = sylow(g, p)
    subs = elementary_abelian_subgroups(p_syl, p)
    maximal = [s for s in subs if not any(s.members < t.members for t in subs)]
    bad = []
    for a in subs:
        if not fully_centralized(a, p_syl):
            continue
        hull = elementary_hull(a, p_syl)
        over = [s for s in maximal if a.members <= s.members]
        oracle = frozenset.intersection(*(s.members for s in over))
        if hull.members != oracle:
            bad.append(repr(a))
    checks.append(CheckResult(
        name="hull-matches-maximal-intersection",
        verdict=PASS if not bad else FAIL,
        detail=f"checked {len(subs)} elementary abelian subgroups of P",
        witness={"mismatches": bad} if bad else {}))
    return checks


def task_brown(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Euler characteristic of the p-subgroup complex is 1 modulo |G|_p."""
    sp = build_p_subgroup_poset(g, p, "Sp")
    counts = sp.poset.chain_count_by_length(cap=budgets.chains)
    euler = sum((-1) ** k * c for k, c in enumerate(counts))
    modulus = p_part(g.order, p)
    ok = euler % modulus == 1 % modulus
    return [CheckResult(
        name="euler-congruence",
        verdict=PASS if ok else FAIL,
        detail=f"chi = {euler} == 1 mod {modulus}" if ok else f"chi = {euler} != 1 mod {modulus}",
        witness={"euler": euler, "modulus": modulus, "face_counts": counts})]


def task_stong(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Contractibility of the p-subgroup poset matches a nontrivial p-core."""
    sp = build_p_subgroup_poset(g, p, "Sp")
    contractible, size = _contractibility(sp.poset)
    core_order = p_core(g, p).order
    ok = contractible == (core_order > 1)
    return [CheckResult(
        name="contractible-iff-nontrivial-pcore",
        verdict=PASS if ok else FAIL,
        detail=f"core of Sp has {size} points; |O_p(G)| = {core_order}",
        witness={"core_size": size, "pcore_order": core_order})]


def task_rankgap(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Small rank gap forces the subdivided elementary quotient contractible."""
    gap = rank_gap(g, p)
    r = p_rank(g, p)
    p_ord = sylow(g, p).order
    log_p = 0
    n = p_ord
    while n > 1:
        n //= p
        log_p += 1
    applicable = gap <= 1 or (gap == 2 and r >= log_p - 1)
    if not applicable:
        return [CheckResult(
            name="ap-chain-quotient-contractible",
            verdict=HYP,
            detail=f"rank gap {gap}, p-rank {r}, log_p|P| = {log_p}",
            witness={"gap": gap, "rank": r})]
    ap = build_p_subgroup_poset(g, p, "Ap")
    quotient = chain_quotient(ap, cap=budgets.chains)
    contractible, size = _contractibility(quotient.space)
    return [CheckResult(
        name="ap-chain-quotient-contractible",
        verdict=PASS if contractible else FAIL,
        detail=f"rank gap {gap}; core has {size} points",
        witness={"gap": gap, "core_size": size})]


def task_pq(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """|G| = p^a * q with q prime forces all three quotients contractible."""
    q = g.order // p_part(g.order, p)
    if len(primes_of(q)) != 1 or q != primes_of(q)[0]:
        return [CheckResult(
            name="all-chain-quotients-contractible",
            verdict=HYP,
            detail=f"|G|/|G|_p = {q} is not prime",
            witness={"cofactor": q})]
    checks = []
    for kind in ("Ap", "Sp", "Bp"):
        psp = build_p_subgroup_poset(g, p, kind)
        quotient = chain_quotient(psp, cap=budgets.chains)
        contractible, size = _contractibility(quotient.space)
        checks.append(CheckResult(
            name=f"{kind}-chain-quotient-contractible",
            verdict=PASS if contractible else FAIL,
            detail=f"core has {size} points",
            witness={"core_size": size}))
    return checks


def task_sdr(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Retract criteria: abelian Omega1(P), abelian Sylow, and the
    Omega-comparable subposet of the subdivided elementary quotient."""
    checks = []
    p_syl = sylow(g, p)
    omega_abelian = is_abelian(omega1(p_syl, p))
    sp = build_p_subgroup_poset(g, p, "Sp")
    if not omega_abelian:
        checks.append(CheckResult(
            name="ap-retract-of-sp", verdict=HYP,
            detail="Omega1(P) is not abelian"))
    else:
        ap_keys = {s.key() for s in build_p_subgroup_poset(g, p, "Ap").subgroups()}
        keep = [i for i, s in enumerate(sp.subgroups()) if s.key() in ap_keys]
        verdict_map = {True: PASS, False: FAIL, None: INCONCLUSIVE}
        found = strong_deformation_retract(sp.poset, keep, budget=budgets.sdr)
        checks.append(CheckResult(
            name="ap-retract-of-sp", verdict=verdict_map[found],
            detail=f"Omega1(P) abelian; retract search returned {found}",
            witness={"sdr_budget": budgets.sdr} if found is None else {}))
        for kind in ("Ap", "Sp"):
            psp = build_p_subgroup_poset(g, p, kind)
            contractible, size = _contractibility(chain_quotient(psp, cap=budgets.chains).space)
            checks.append(CheckResult(
                name=f"{kind}-chain-quotient-contractible",
                verdict=PASS if contractible else FAIL,
                detail=f"core has {size} points"))
    if not is_abelian(p_syl):
        checks.append(CheckResult(
            name="isp-equals-bp", verdict=HYP, detail="Sylow subgroup is not abelian"))
    else:
        isp = build_p_subgroup_poset(g, p, "iSp")
        bp = build_p_subgroup_poset(g, p, "Bp")
        same = {s.key() for s in isp.subgroups()} == {s.key() for s in bp.subgroups()}
        checks.append(CheckResult(
            name="isp-equals-bp", verdict=PASS if same else FAIL,
            detail=f"{isp.poset.n} intersections vs {bp.poset.n} radicals"))
        contractible, size = _contractibility(chain_quotient(bp, cap=budgets.chains).space)
        checks.append(CheckResult(
            name="Bp-chain-quotient-contractible",
            verdict=PASS if contractible else FAIL,
            detail=f"core has {size} points"))
    gap = rank_gap(g, p)
    if gap > 2:
        checks.append(CheckResult(
            name="omega-comparable-retract", verdict=HYP,
            detail=f"rank gap {gap} exceeds 2"))
    else:
        orbit, keep = omega_comparable_subposet(g, p)
        found = strong_deformation_retract(orbit.space, keep, budget=budgets.sdr)
        verdict_map = {True: PASS, False: FAIL, None: INCONCLUSIVE}
        checks.append(CheckResult(
            name="omega-comparable-retract", verdict=verdict_map[found],
            detail=f"subposet keeps {len(keep)} of {orbit.space.n} orbits",
            witness={"kept": len(keep), "orbits": orbit.space.n}))
    return checks


def task_alperin(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """Normalizer-step certificates exist for all fusions inside the Sylow."""
    p_syl = sylow(g, p)
    subs = subgroups_of_pgroup(p_syl, p)
    attempted = 0
    valid = 0
    exhausted = 0
    bad: list[str] = []
    for a in subs:
        seen_restrictions: set[tuple[int, ...]] = set()
        for gid in range(g.order):
            restriction = tuple(g.conj(x, gid) for x in a.key())
            if restriction in seen_restrictions:
                continue
            if not frozenset(restriction) <= p_syl.members:
                continue
            seen_restrictions.add(restriction)
            attempted += 1
            steps = fusion_certificate(g, p_syl, a, g.perm(gid), budget=budgets.fusion)
            if steps is None:
                exhausted += 1
            elif check_fusion_certificate(g, p_syl, a, g.perm(gid), steps):
                valid += 1
            else:
                bad.append(f"{a!r} with {g.perm(gid)!r}")
    if bad:
        verdict = FAIL
    elif exhausted:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS
    return [CheckResult(
        name="fusion-certificates",
        verdict=verdict,
        detail=f"{valid}/{attempted} fusions certified, {exhausted} hit the budget",
        witness={"invalid": bad} if bad else {"budget": budgets.fusion} if exhausted else {})]


def task_xp(g: Group, p: int, budgets: Budgets) -> list[CheckResult]:
    """The poset of subgroups normal in all their Sylow overgroups: conical
    quotients, links with Sp, and the exploratory weak-equivalence report."""
    checks = []
    for kind, label in (("Xp", "xp-chain-quotient"), ("N", "common-sylow-chains-quotient")):
        orbit, candidates, apex = sylow_chain_contraction(g, p, kind)
        report = verify_conical_contraction(orbit, candidates, apex)
        checks.append(CheckResult(
            name=f"{label}-conically-contractible",
            verdict=PASS if report.ok else FAIL,
            detail=f"{orbit.space.n} orbits",
            witness={} if report.ok else {
                "not_well_defined": report.not_well_defined,
                "not_order_preserving": report.not_order_preserving,
                "not_conical": report.not_conical}))
    xp = build_p_subgroup_poset(g, p, "Xp")
    sp = build_p_subgroup_poset(g, p, "Sp")
    xp_contract, xp_core = _contractibility(xp.poset)
    sp_contract, _ = _contractibility(sp.poset)
    checks.append(CheckResult(
        name="contractibility-link",
        verdict=PASS if xp_contract == sp_contract else FAIL,
        detail=f"Xp contractible: {xp_contract}, Sp contractible: {sp_contract}"))
    xp_conn = xp.poset.is_connected()
    sp_conn = sp.poset.is_connected()
    checks.append(CheckResult(
        name="connectivity-link",
        verdict=PASS if (not xp_conn or sp_conn) else FAIL,
        detail=f"Xp connected: {xp_conn}, Sp connected: {sp_conn}"))
    c, _ = core(xp.poset)
    checks.append(CheckResult(
        name="xp-core-shape",
        verdict=INFO,
        detail=f"core has {c.n} points; antichain: {c.is_antichain()}",
        witness={"core_size": c.n, "antichain": c.is_antichain()}))
    if xp_conn:
        same = homology(order_complex(xp.poset), cap=budgets.chains) == \
            homology(order_complex(sp.poset), cap=budgets.chains)
        detail = f"homology of K(Xp) equals K(Sp): {same}"
    else:
        detail = "Xp is disconnected; weak-equivalence comparison skipped"
    checks.append(CheckResult(name="weak-equivalence-exploration", verdict=INFO, detail=detail))
    return checks


TASK_RUNNERS = {
    "webb": task_webb,
    "conjecture": task_conjecture,
    "conical": task_conical,
    "brown": task_brown,
    "stong": task_stong,
    "rankgap": task_rankgap,
    "pq": task_pq,
    "sdr": task_sdr,
    "alperin": task_alperin,
    "xp": task_xp,
}


def run_task(task: str, g: Group, p: int, budgets: Budgets) -> VerificationReport:
    if task not in TASK_RUNNERS:
        raise UsageError(f"unknown task {task!r}; expected one of {sorted(TASK_RUNNERS)}")
    if g.order % p != 0:
        raise UsageError(f"{p} does not divide |{group_label(g)}| = {g.order}")
    started = time.perf_counter()
    checks = TASK_RUNNERS[task](g, p, budgets)
    elapsed = time.perf_counter() - started
    return VerificationReport(
        task=task, group=group_label(g), prime=p, checks=checks,
        budgets=budgets.as_dict(),
        timings={"seconds": round(elapsed, 3)})


# --- the build pipeline -----------------------------------------------------------

def build_object(g: Group, p: int, kind: str, quotient: str, subdivisions: int,
                 budgets: Budgets) -> tuple[Poset, list[str]]:
    """Resolve --poset/--quotient/--subdivide into a poset plus labels."""
    if kind in POSET_KINDS:
        base = build_p_subgroup_poset(g, p, kind)
        gposet, names = base.gposet, list(base.names)
        p_mem = base.sylow.members
        chain_prefer = lambda c: all(base.poset.labels[x].members <= p_mem for x in c)
        plain_prefer = lambda i: base.poset.labels[i].members <= p_mem
    elif kind in CHAIN_KINDS:
        csp = build_chain_subcomplex_poset(g, p, kind, cap=budgets.chains)
        gposet, names = csp.gposet, list(csp.names)
        sp = csp.base
        p_mem = sp.sylow.members
        chain_prefer = lambda c: all(
            all(sp.poset.labels[x].members <= p_mem for x in csp.poset.labels[i])
            for i in c)
        plain_prefer = lambda i: all(sp.poset.labels[x].members <= p_mem
                                     for x in csp.poset.labels[i])
    else:
        raise UsageError(f"unknown poset kind {kind!r}")

    def compose(labels, prev_names):
        return ["(" + "<".join(prev_names[x] for x in chain) + ")" for chain in labels]

    if quotient == "none":
        for _ in range(subdivisions):
            gposet = subdivide_gposet(gposet, cap=budgets.chains)
            names = compose(gposet.space.labels, names)
        return gposet.space, names
    if quotient != "orbit":
        raise UsageError(f"--quotient must be 'none' or 'orbit', got {quotient!r}")
    if subdivisions == 0:
        orbit = orbit_poset(gposet, prefer=plain_prefer)
        return orbit.space, [names[r] for r in orbit.reps]
    for level in range(subdivisions - 1):
        gposet = subdivide_gposet(gposet, cap=budgets.chains)
        names = compose(gposet.space.labels, names)
        chain_prefer = None
    orbit = chain_orbit_poset(gposet, cap=budgets.chains, prefer=chain_prefer)
    return orbit.space, compose([orbit.chains[r] for r in orbit.reps], names)


# --- command implementations ---------------------------------------------------------

def _budgets_from(args) -> Budgets:
    return Budgets(cap=args.budget_cap, chains=args.budget_chains,
                   cosets=args.budget_cosets, sdr=args.budget_sdr,
                   fusion=args.budget_fusion)


def cmd_build(args) -> int:
    budgets = _budgets_from(args)
    g = parse_group(args.group, cap=budgets.cap)
    poset, names = build_object(g, args.prime, args.poset, args.quotient,
                                args.subdivide, budgets)
    payload = poset_to_json(poset, names)
    payload["group"] = group_label(g)
    payload["prime"] = args.prime
    payload["poset"] = args.poset
    payload["quotient"] = args.quotient
    payload["subdivide"] = args.subdivide
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.dot:
        Path(args.dot).write_text(poset_to_dot(poset, names, title=f"{group_label(g)} {args.poset}"))
    if args.fig:
        from .render import hasse_figure
        hasse_figure(poset, args.fig, names,
                     title=f"{group_label(g)}: {args.poset} p={args.prime}")
    print(f"{group_label(g)} p={args.prime} {args.poset}"
          f" quotient={args.quotient} subdivide={args.subdivide}:"
          f" {poset.n} elements", file=sys.stderr)
    return 0


def _write_report_csv(path: str, reports: list[VerificationReport]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["group", "prime", "task", "check", "verdict", "detail"])
        for report in reports:
            for check in report.checks:
                writer.writerow([report.group, report.prime, report.task,
                                 check.name, check.verdict, check.detail])


def cmd_verify(args) -> int:
    budgets = _budgets_from(args)
    g = parse_group(args.group, cap=budgets.cap)
    report = run_task(args.task, g, args.prime, budgets)
    text = json.dumps(report.as_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.csv:
        _write_report_csv(args.csv, [report])
    if args.fig:
        from .render import verdict_grid
        row_label = f"{report.group} p={report.prime}"
        verdict_grid([(row_label, {c.name: c.verdict for c in report.checks})],
                     [c.name for c in report.checks], args.fig,
                     title=f"task {report.task}")
    for check in report.checks:
        print(f"[{check.verdict:>18}] {check.name}: {check.detail}", file=sys.stderr)
    return 0 if report.overall != FAIL else 1


def cmd_catalog(args) -> int:
    budgets = _budgets_from(args)
    tasks = [t.strip() for t in args.tasks.split(",") if t.strip()]
    for t in tasks:
        if t not in TASK_RUNNERS:
            raise UsageError(f"unknown task {t!r}")
    groups: list[Group] = []
    if args.dir:
        directory = Path(args.dir)
        if not directory.is_dir():
            raise UnknownSpec(f"not a directory: {directory}")
        for path in sorted(directory.glob("*.json")):
            groups.append(load_group(path, cap=budgets.cap))
    else:
        groups = [builtin_group(name) for name in BUILTIN_CATALOG]

    reports: list[VerificationReport] = []
    errors: list[dict] = []
    entries = []
    for g in sorted(groups, key=group_label):
        for p in primes_of(g.order):
            for task in tasks:
                entries.append((g, p, task))
    entries.sort(key=lambda e: (group_label(e[0]), e[1], e[2]))
    for g, p, task in entries:
        try:
            reports.append(run_task(task, g, p, budgets))
        except ToolkitError as exc:
            errors.append({"group": group_label(g), "prime": p, "task": task,
                           "error": f"{type(exc).__name__}: {exc}"})

    violations = [
        {"group": r.group, "prime": r.prime, "task": r.task, "check": c.name,
         "detail": c.detail}
        for r in reports for c in r.checks if c.verdict == FAIL]
    inconclusive = [
        {"group": r.group, "prime": r.prime, "task": r.task, "check": c.name,
         "detail": c.detail}
        for r in reports for c in r.checks if c.verdict == INCONCLUSIVE]
    summary = {
        "tasks": tasks,
        "entries": [r.as_dict() for r in reports],
        "violations": violations,
        "inconclusive": inconclusive,
        "errors": errors,
    }
    text = json.dumps(summary, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.csv:
        _write_report_csv(args.csv, reports)
    if args.fig_dir:
        from .render import verdict_grid
        fig_dir = Path(args.fig_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        for task in tasks:
            rows = []
            for r in reports:
                if r.task != task:
                    continue
                worst = r.overall
                rows.append((f"{r.group} p={r.prime}",
                             {c.name: c.verdict for c in r.checks}))
            columns = sorted({c.name for r in reports if r.task == task for c in r.checks})
            if rows:
                verdict_grid(rows, columns, fig_dir / f"catalog-{task}.png",
                             title=f"catalog sweep: {task}")
    print(f"{len(reports)} reports, {len(violations)} violations,"
          f" {len(inconclusive)} inconclusive, {len(errors)} errors", file=sys.stderr)
    return 1 if violations or errors else 0


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget-cap", type=int, default=ENUMERATION_CAP,
                        help="group enumeration cap")
    parser.add_argument("--budget-chains", type=int, default=CHAIN_CAP,
                        help="chain/complex size cap")
    parser.add_argument("--budget-cosets", type=int, default=COSET_CAP,
                        help="coset enumeration cap for pi1 certificates")
    parser.add_argument("--budget-sdr", type=int, default=SDR_CAP,
                        help="node budget for retract searches")
    parser.add_argument("--budget-fusion", type=int, default=FUSION_CAP,
                        help="state budget for fusion certificate searches")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pspaces",
        description="p-subgroup posets, orbit spaces, and contractibility checks")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a poset and dump JSON/DOT/figure")
    b.add_argument("--group", required=True, help="builtin:<name> or file:<path>")
    b.add_argument("--prime", type=int, required=True)
    b.add_argument("--poset", required=True, choices=POSET_KINDS + CHAIN_KINDS)
    b.add_argument("--quotient", default="none", choices=("none", "orbit"))
    b.add_argument("--subdivide", type=int, default=0, metavar="K")
    b.add_argument("--out", help="JSON dump path (stdout when omitted)")
    b.add_argument("--dot", help="DOT output path")
    b.add_argument("--fig", help="figure output path (png/pdf)")
    _add_budget_flags(b)
    b.set_defaults(fn=cmd_build)

    v = sub.add_parser("verify", help="run one verification task")
    v.add_argument("--task", required=True, choices=TASKS)
    v.add_argument("--group", required=True)
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--out", help="JSON report path (stdout when omitted)")
    v.add_argument("--csv", help="delimited summary path")
    v.add_argument("--fig", help="verdict figure path")
    _add_budget_flags(v)
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("catalog", help="sweep tasks over a group collection")
    c.add_argument("--dir", help="directory of group JSON files (default: builtins)")
    c.add_argument("--tasks", default="conjecture", help="comma-separated task list")
    c.add_argument("--out", help="summary JSON path (stdout when omitted)")
    c.add_argument("--csv", help="delimited summary path")
    c.add_argument("--fig-dir", help="directory for verdict grid figures")
    _add_budget_flags(c)
    c.set_defaults(fn=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (UsageError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"check failed with hard error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
