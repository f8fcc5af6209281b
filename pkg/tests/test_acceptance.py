"""Acceptance criteria, one test each, with their time limits.

Each criterion prints a single ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest (``-s`` shows the lines;
they are also repeated in the terminal summary).
"""
from __future__ import annotations

import copy
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from charinv.brauer import BUNDLED, analyze_brauer, load_bundled  # noqa: E402
from charinv.chartab import dixon_schneider, verify_table  # noqa: E402
from charinv.chartab.symmetric import mn_symmetric_table  # noqa: E402
from charinv.cyclo import Cyc, prime_factors  # noqa: E402
from charinv.exactla import elementary_divisors  # noqa: E402
from charinv.groups import construct_named  # noqa: E402
from charinv.invariants import (  # noqa: E402
    audit_theorems, compute_e, compute_e_via_snf, symmetric_digit_criterion, verify_3955_example,
)

import oracles  # noqa: E402

DATA = Path(__file__).parent / "data"

AUDIT_CORPUS = [
    "cyclic:1", "cyclic:12", "dihedral:8", "dihedral:10", "dihedral:16", "dihedral:24",
    "quaternion:8", "quaternion:16", "quaternion:32", "sym:3", "sym:4", "sym:5", "sym:6",
    "alt:4", "alt:5", "alt:6", "psl2:7", "psl2:8", "psl2:11", "psl2:13", "sl2:3", "sl2:5",
    "sl2:7", "gl2:3", "gl2:4", "gl2:5",
    "product:sym:3+cyclic:2", "product:quaternion:8+cyclic:3", "product:dihedral:8+cyclic:9",
    "product:alt:4+cyclic:5", "product:sym:3+sym:3", "product:cyclic:3+cyclic:3",
    "product:alt:5+cyclic:2", "product:sym:4+dihedral:8", "product:dihedral:16+quaternion:8",
]

REPORT: list[str] = []


def _record(n: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    bound = f" (limit {limit:g}s)" if limit else ""
    line = f"{status} criterion {n}: {title} [{elapsed:.2f}s{bound}] {detail}"
    REPORT.append(line)
    print(line)
    return ok and within


def _e_routes(T):
    e, ep = compute_e(T)
    e2, _ = compute_e_via_snf(T)
    return e, ep, e == e2


# -- the criteria ----------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    bad = []
    for n in range(2, 25):
        _, ep, _ = _e_routes(dixon_schneider(construct_named(f"dihedral:{2 * n}")))
        want = 4 if n % 4 == 2 else 2
        if ep != want:
            bad.append(f"n={n}: {ep} != {want}")
    return _record(1, "dihedral e' for n = 2..24", not bad, time.perf_counter() - t, 5,
                   "; ".join(bad) or "23/23 exact")


def criterion_2():
    t = time.perf_counter()
    want = {}
    for q in (4, 5, 7, 8, 9):
        v = 6 if q == 9 else 2
        want[f"sl2:{q}"] = v
        want[f"psl2:{q}"] = v
    for q in (3, 5):
        want[f"gl2:{q}"] = q - 1
    for q in (2, 4):
        want[f"gl2:{q}"] = 2 * (q - 1)
    bad = []
    for spec, w in want.items():
        _, ep, _ = _e_routes(dixon_schneider(construct_named(spec)))
        if ep != w:
            bad.append(f"{spec}: {ep} != {w}")
    return _record(2, "SL2/PSL2/GL2 e'", not bad, time.perf_counter() - t, 60,
                   "; ".join(bad) or f"{len(want)}/{len(want)} exact")


def criterion_3():
    t = time.perf_counter()
    want = {5: 1, 6: 3, 7: 3, 8: 3, 9: 1}
    got = {}
    for n in want:
        _, ep, _ = _e_routes(dixon_schneider(construct_named(f"alt:{n}")))
        got[n] = Fraction(ep, 2)
    ok = all(got[n] == want[n] for n in want)
    return _record(3, "alternating e~ via Dixon-Schneider", ok, time.perf_counter() - t, 120,
                   "e~(A5..A9) = (" + ",".join(str(got[n]) for n in want) + ")")


def criterion_4():
    t = time.perf_counter()
    bad = []
    for n in range(2, 13):
        _, ep = compute_e(mn_symmetric_table(n))
        if set(prime_factors(ep)) != symmetric_digit_criterion(n):
            bad.append(f"n={n}")
    return _record(4, "S_n prime support vs digit criterion, n = 2..12", not bad,
                   time.perf_counter() - t, None, ", ".join(bad) or "11/11 exact")


def criterion_5():
    t = time.perf_counter()
    v = verify_3955_example()
    ok = v.ok and v.sum_mod_3 == (-1) % 3 and v.sum_mod_5 == (-2) % 5 and v.e_prime == 1
    return _record(5, "order 3^9 5^5 congruences", ok, time.perf_counter() - t, 30,
                   f"sum mod 3 = {v.sum_mod_3}, sum mod 5 = {v.sum_mod_5}, e' = {v.e_prime}")


def criterion_6():
    t = time.perf_counter()
    specs = [f"dihedral:{2 * n}" for n in range(2, 25)]
    specs += [f"{k}:{q}" for k in ("sl2", "psl2") for q in (4, 5, 7, 8, 9)]
    specs += [f"gl2:{q}" for q in (2, 3, 4, 5)]
    specs += [f"alt:{n}" for n in range(5, 10)]
    specs += ["quaternion:8", "quaternion:16", "quaternion:32", "quaternion:64",
              "dihedral:32", "dihedral:64"]
    bad, count = [], 0
    for spec in specs:
        if not _e_routes(dixon_schneider(construct_named(spec)))[2]:
            bad.append(spec)
        count += 1
    for n in range(2, 13):
        if not _e_routes(mn_symmetric_table(n))[2]:
            bad.append(f"S{n}")
        count += 1
    _, ep_m11, agree = _e_routes(dixon_schneider(construct_named(f"perm:{DATA / 'm11.perm'}")))
    count += 1
    if not agree:
        bad.append("M11")
    ok = not bad and ep_m11 == 2
    return _record(6, "denominator route = SNF route", ok, time.perf_counter() - t, None,
                   f"{count - len(bad)}/{count} agree; e'(M11) = {ep_m11}"
                   + (f"; disagree: {', '.join(bad)}" if bad else ""))


def criterion_7():
    t = time.perf_counter()
    failures, skipped = [], []
    for spec in AUDIT_CORPUS:
        G = construct_named(spec)
        assert G.order <= 2000, spec
        for v in audit_theorems(G):
            if v.verdict == "fail":
                failures.append(f"{spec}({v.audit})")
            elif v.verdict == "skipped":
                skipped.append(f"{spec}({v.audit})")
    ok = not failures and len(AUDIT_CORPUS) >= 25
    return _record(7, "theorem audits (a)-(j) on the corpus", ok, time.perf_counter() - t, None,
                   f"{len(AUDIT_CORPUS)} groups, {len(failures)} failures, {len(skipped)} skipped"
                   + (f": {', '.join(failures)}" if failures else ""))


def criterion_8():
    t = time.perf_counter()
    bad = []
    f = {}
    for stem in BUNDLED:
        B = load_bundled(stem)
        A = analyze_brauer(B, dixon_schneider(construct_named(B.ordinary_ref)))
        f[stem] = A.f_p
        if not A.routes_agree:
            bad.append(f"{stem} routes {A.f_ordinary}/{A.f_coefficients}/{A.f_snf}")
        if A.det != A.det_expected:
            bad.append(f"{stem} det {A.det} != {A.det_expected}")
        if A.recovered != A.stored:
            bad.append(f"{stem} centralizers {A.recovered} != {A.stored}")
    if f["s3_p3"] != 1 or f["s3_p2"] != 3:
        bad.append(f"f3(S3) = {f['s3_p3']}, f2(S3) = {f['s3_p2']}")
    return _record(8, "Brauer suite", not bad, time.perf_counter() - t, None,
                   "; ".join(bad) or f"f3(S3) = {f['s3_p3']}, f2(S3) = {f['s3_p2']}, 6/6 tables")


def criterion_9():
    t = time.perf_counter()
    bad = []
    rng = random.Random(9)
    for _ in range(500):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        want = oracles.divisors_by_minors(M)
        want += [0] * (min(r, c) - len(want))
        if elementary_divisors(M) != want:
            bad.append(f"SNF {M}")
            break
    caught = 0
    for spec in ("sym:3", "sym:4", "alt:5", "quaternion:8"):
        T = dixon_schneider(construct_named(spec))
        for i in range(T.nclasses):
            for j in range(T.nclasses):
                P = copy.deepcopy(T)
                P.irr[i][j] = P.irr[i][j] + Cyc(1)
                caught += not verify_table(P)
                if verify_table(P):
                    bad.append(f"perturbation {spec} ({i + 1},{j + 1}) missed")
    knorr = 0
    for spec in AUDIT_CORPUS:
        G = construct_named(spec)
        e, _ = compute_e(dixon_schneider(G))
        if (e == 1) != G.is_abelian():
            bad.append(f"abelian/e mismatch on {spec}")
        j = next(v for v in audit_theorems(G) if v.audit == "j")
        if j.verdict == "fail":
            bad.append(f"gamma on {spec}")
        knorr += j.verdict == "pass"
    return _record(9, "property suites", not bad, time.perf_counter() - t, None,
                   "; ".join(bad[:3]) or f"500 SNF matrices, {caught} perturbations caught, "
                   f"abelian<=>e=1 on {len(AUDIT_CORPUS)} groups, gamma integral on {knorr}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    assert criterion(), REPORT[-1]


def main() -> int:
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
