"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import time
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd

from acceptance_log import record
from lenssurgery.alexander import (
    NoTorusRepresentative,
    check_alternating,
    delta_via_phi,
    delta_via_torus,
    folded_phi,
    is_alternating_table,
    torus_representative,
)
from lenssurgery.dinvariant import check_pos, d_lens, d_lens_q1_closed, d_numerators, torsion_sequence
from lenssurgery.families import (
    BERGE_TYPES,
    POINCARE_FAMILIES,
    SPORADIC_BERGE,
    berge_members,
    match_all,
    match_berge,
    quadratic_members,
    reproduce_assoc_table,
    reproduce_tau1_table,
)
from lenssurgery.globalview import (
    cyclic_lift,
    difference_mismatches,
    find_blocks,
    find_runs,
    grid,
    in_width_regime,
)
from lenssurgery.harness import class_minima, verify_main_theorem
from lenssurgery.quadratic import (
    QuadraticRelation,
    UnknotBranch,
    all_relations,
    associated_relation,
    tau_decompose,
    underline_involution,
)


def check(number, passed, detail):
    record(number, passed, detail)
    assert passed, detail


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    compared = missing = 0
    bad = []
    for p in range(2, 201):
        for k in range(1, p):
            if gcd(p, k) != 1:
                continue
            try:
                hg = torus_representative(p, k)
            except NoTorusRepresentative:
                missing += 1
                continue
            compared += 1
            if delta_via_phi(p, k) != delta_via_torus(p, k, hg):
                bad.append((p, k))
    elapsed = time.perf_counter() - start
    check(
        1,
        not bad and elapsed < 10,
        f"{compared} pairs equal, {len(bad)} differ, {missing} without torus pair, {elapsed:.1f}s",
    )


def test_criterion_2_trefoil():
    poly = delta_via_phi(7, 2)
    ok = poly.coeffs == {-1: 1, 0: -1, 1: 1} and poly[0] == -1 and poly[1] == 1
    check(2, ok, f"Delta_(7,2) terms {dict((e, int(v)) for e, v in poly.terms)}")


def test_criterion_3_torsion_counterexample():
    ts = torsion_sequence(22, 5)
    pos = check_pos(22, 5)
    alt = check_alternating(delta_via_phi(22, 5))
    ok = ts[11] == -2 and not pos and bool(alt)
    check(3, ok, f"t_11 = {ts[11]}, pos passed={pos.passed}, alternating passed={alt.passed}")


def test_criterion_4_quadratic_anchors():
    rel = associated_relation(43, 12)
    scan = {(r.a, r.eps1, r.eps2) for r in all_relations(43, 12, 5)}
    dec = tau_decompose(191, 15)
    ok = (
        (rel.a, rel.eps1, rel.eps2) == (2, 1, 1)
        and (5, 1, -1) in scan
        and (dec.a, dec.n, dec.tau, dec.q2) == (22, 26, 0, -73)
    )
    check(
        4,
        ok,
        f"(43,12) -> {rel}; scan has (5,+1,-1): {(5, 1, -1) in scan}; "
        f"(191,15) -> a={dec.a} n={dec.n} tau={dec.tau} q2={dec.q2}",
    )


def test_criterion_5_involution():
    start = time.perf_counter()
    chain = [(191, 15)]
    for _ in range(2):
        chain.append(underline_involution(*chain[-1]))
    stable = holds = exact = a_one = 0
    failures = []
    for p in range(3, 2001):
        for k in class_minima(p):
            if k == 1:
                continue
            dec = tau_decompose(p, k)
            if dec.tau < 2:
                continue
            stable += 1
            image = underline_involution(p, k, dec)
            target = QuadraticRelation(dec.a, -dec.eps1, dec.eps2, dec.n)
            if target.holds(*image):
                holds += 1
            else:
                failures.append((p, k))
            if dec.a == 1:
                a_one += 1
                continue
            try:
                same = associated_relation(*image) == target
            except UnknotBranch:
                same = False
            if same:
                exact += 1
            else:
                failures.append((p, k))
    elapsed = time.perf_counter() - start
    ok = chain == [(191, 15), (102, 11), (87, 10)] and not failures and elapsed < 60
    check(
        5,
        ok,
        f"chain {chain}; {stable} stable classes, relation holds on image for {holds}, "
        f"associated relation equal for {exact} with a>=2 ({a_one} with a=1 checked on the image only), "
        f"{elapsed:.1f}s",
    )


def test_criterion_6_tables():
    start = time.perf_counter()
    tau1 = reproduce_tau1_table()
    tau1_ok = len(tau1) == 22 and all(r.agrees for r in tau1)
    sampled = ["A1", "A2", "C1", "C2", "D1", "D2", "E1", "E2", "F1", "F2", "G1", "G2", "H1", "H2", "IX", "X"]
    js = [J for J in range(-5, 6) if abs(J) >= 2]
    covered = Counter()
    bad = []
    for tag in sampled:
        for row in reproduce_assoc_table(tag, js):
            if row.expected is None:
                continue
            covered[tag] += 1
            if row.computed != row.expected:
                bad.append((tag, row.J))
    for row in reproduce_assoc_table("K", [None]):
        covered["K"] += 1
        if row.computed != row.expected:
            bad.append(("K", None))
    missing = [t for t in sampled + ["K"] if not covered[t]]
    elapsed = time.perf_counter() - start
    ok = tau1_ok and not bad and not missing and elapsed < 10
    check(
        6,
        ok,
        f"table of tau=1 relations {sum(r.agrees for r in tau1)}/{len(tau1)}; "
        f"sampled relations {sum(covered.values()) - len(bad)}/{sum(covered.values())} "
        f"over {len(covered)} families, uncovered {missing}, {elapsed:.2f}s",
    )


def test_criterion_7_duality():
    checked = 0
    misses = []
    for tag in list(SPORADIC_BERGE) + list(POINCARE_FAMILIES):
        for J, p, k in quadratic_members(tag, 25):
            checked += 1
            if not any(m.family == tag and m.parameter == J for m in match_all(p, k)):
                misses.append((tag, J))
    for tag in BERGE_TYPES:
        if tag in SPORADIC_BERGE:
            continue
        for r, param, p in berge_members(tag, 30, 25):
            checked += 1
            if not any(m.family == tag and m.parameter == param for m in match_berge(p, r)):
                misses.append((tag, r, param, p))
    check(7, not misses, f"{checked} generated members, {len(misses)} not recovered {misses[:5]}")


def test_criterion_8_main_theorem():
    start = time.perf_counter()
    report = verify_main_theorem(1000, workers=1)
    elapsed = time.perf_counter() - start
    ok = report.holds and elapsed < 300
    check(
        8,
        ok,
        f"{report.classes} classes, {report.hypothesis} satisfy the hypothesis, "
        f"{len(report.exceptions)} exceptions, {len(report.v_only)} V-only, "
        f"{len(report.no_torus)} without torus pair, {elapsed:.1f}s",
    )


def test_criterion_9_global_view():
    start = time.perf_counter()
    c = Counter()
    problems = []
    for p in range(3, 1001):
        for k in class_minima(p):
            if k == 1:
                continue
            folded = folded_phi(p, k)
            if not is_alternating_table(folded, p):
                continue
            dec = tau_decompose(p, k)
            if dec.tau < 2:
                continue
            c["stable alternating"] += 1
            poly = delta_via_phi(p, k)
            cc = cyclic_lift(poly, dec)
            if dec.n >= 2:
                c["n>=2"] += 1
                if difference_mismatches(cc, dec):
                    problems.append(("difference", p, k))
            else:
                c["n=1"] += 1
                if not {m.family for m in match_berge(p, k)} & {"I", "II"}:
                    problems.append(("n=1 not type I/II", p, k))
            g = poly.genus
            if 2 * g < p:
                admitted = [(r.start, r.end) for r in find_runs(cc) if r.kind == "admitted"]
                if admitted != [(g, p - g)]:
                    problems.append(("admitted run", p, k))
            else:
                c["2g=p"] += 1
            if in_width_regime(dec):
                for b in find_blocks(grid(cc, dec, p, range(-1, 2 * dec.tau + 3)), dec):
                    c["blocks"] += 1
                    if not {b.top_width, b.bottom_width} <= {dec.tau, dec.tau + 1}:
                        problems.append(("width", p, k))
            elif dec.n >= 2:
                c["n>=2 outside width regime"] += 1
    gcd_checked = gcd_unstable = 0
    for p in range(3, 1001):
        for k in class_minima(p):
            if k == 1 or not match_all(p, k):
                continue
            dec = tau_decompose(p, k)
            if dec.tau < 2:
                gcd_unstable += gcd(dec.a, dec.n) > 2
                continue
            gcd_checked += 1
            if gcd(dec.a, dec.n) > 2:
                problems.append(("gcd", p, k))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 120
    check(
        9,
        ok,
        f"{dict(c)}; gcd(a,n)<=2 on {gcd_checked} stable matched classes "
        f"({gcd_unstable} unstable matched classes exceed 2); problems {problems[:5]}; {elapsed:.1f}s",
    )


@lru_cache(maxsize=None)
def _d_reference(p, q, i):
    if p == 1:
        return Fraction(0)
    head = Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q)
    return head - _d_reference(q, p % q, i % q)


def test_criterion_10_correction_terms():
    closed_bad = [
        (p, i) for p in range(1, 501) for i in range(p) if d_lens(p, 1, i) != d_lens_q1_closed(p, i)
    ]
    den_bad = []
    ref_bad = []
    tables = 0
    for p in range(2, 501):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            nums = d_numerators(p, q)
            tables += 1
            if p <= 60:
                for i in range(p):
                    ref = _d_reference(p, q, i)
                    if ref != Fraction(int(nums[i]), 4 * p * q):
                        ref_bad.append((p, q, i))
                    if (4 * p * q) % ref.denominator:
                        den_bad.append((p, q, i))
    ok = not closed_bad and not den_bad and not ref_bad
    check(
        10,
        ok,
        f"closed form agrees for p<=500 ({len(closed_bad)} differ); {tables} tables over 4pq built "
        f"by exact division; fraction recursion agrees for p<=60 ({len(ref_bad)} differ)",
    )
