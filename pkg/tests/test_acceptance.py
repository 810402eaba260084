"""
Acceptance criteria 1-9, run exactly over the catalog.

Each test prints one ``PASS``/``FAIL`` line. Running this file directly
(``python tests/test_acceptance.py``) prints the same lines without pytest.
"""
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wkl.chains import (  # noqa: E402
    coeff_p,
    coeff_q,
    degree_window,
    p_via_chains,
    p_via_multichains,
    q_via_chains,
    q_via_multichains,
)
from wkl.coxeter import all_subsets, format_element, new_system, parse_element  # noqa: E402
from wkl.heckemod import get_module  # noqa: E402
from wkl.klcore import comparable_pairs, p_poly, q_poly, r_poly, r_tilde, verify_r_identities  # noqa: E402
from wkl.laurent import ONE, LaurentPoly  # noqa: E402
from wkl.verify import (  # noqa: E402
    check_chain_laws,
    check_degrees,
    check_chain_expansions,
    check_module_laws,
    check_q_identity,
)

from conftest import CATALOG  # noqa: E402

CHAIN_GAP_B3 = 5  # B3 chain-formula checks use intervals of length <= 5
VANISH_GAP = 3  # over-enumeration depth for the vanishing laws
B3_COEFF_SAMPLE = 12  # sampled pairs per J for B3 coefficient checks


def configurations():
    for name, weights in CATALOG:
        sys_ = new_system(name, weights)
        for J in all_subsets(sys_):
            yield name, get_module(sys_, J)


def label(ctx):
    return f"{ctx.sys.name}{ctx.sys.weights} J={{{','.join(f's{s}' for s in sorted(ctx.J))}}}"


def chain_gap(name):
    return CHAIN_GAP_B3 if name == "B3" else None


def report(capsys, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return line


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    checked, bad = 0, None
    for name, ctx in configurations():
        for x, y in comparable_pairs(ctx, chain_gap(name)):
            P = p_poly(ctx, None, x, y)
            checked += 1
            via_multi = p_via_multichains(ctx, None, x, y)
            via_chains = p_via_chains(ctx, None, x, y)
            exhaustive = p_via_multichains(ctx, None, x, y, exhaustive=True) if y.length - x.length <= 2 else P
            if not (P == via_multi == via_chains == exhaustive) and bad is None:
                bad = f"{label(ctx)} ({format_element(ctx.sys, x)}, {format_element(ctx.sys, y)})"
    dt = time.perf_counter() - t0
    ok = bad is None and dt < 300
    return ok, f"dual-path P on {checked} pairs in {dt:.1f}s" + (f"; mismatch at {bad}" if bad else "")


def criterion_2():
    t0 = time.perf_counter()
    checked, bad = 0, None
    for name, ctx in configurations():
        for x, y in comparable_pairs(ctx, chain_gap(name)):
            Q = q_poly(ctx, None, x, y)
            checked += 1
            via_multi = q_via_multichains(ctx, None, x, y)
            via_chains = q_via_chains(ctx, None, x, y)
            exhaustive = q_via_multichains(ctx, None, x, y, exhaustive=True) if y.length - x.length <= 2 else Q
            if not (Q == via_multi == via_chains == exhaustive) and bad is None:
                bad = f"{label(ctx)} ({format_element(ctx.sys, x)}, {format_element(ctx.sys, y)})"
    dt = time.perf_counter() - t0
    ok = bad is None and dt < 300
    return ok, f"dual-path Q on {checked} pairs in {dt:.1f}s" + (f"; mismatch at {bad}" if bad else "")


def criterion_3():
    t0 = time.perf_counter()
    rng = random.Random(20240611)
    checked, bad = 0, None
    for name, ctx in configurations():
        pairs = comparable_pairs(ctx)
        if name == "B3":
            pairs = comparable_pairs(ctx, CHAIN_GAP_B3)
            pairs = rng.sample(pairs, min(B3_COEFF_SAMPLE, len(pairs)))
        for x, y in pairs:
            P, Q = p_poly(ctx, None, x, y), q_poly(ctx, None, x, y)
            for gamma in degree_window(ctx, None, x, y):
                checked += 1
                if (coeff_p(ctx, None, x, y, gamma) != P.coeff(gamma) or coeff_q(ctx, None, x, y, gamma) != Q.coeff(gamma)) and bad is None:
                    bad = f"{label(ctx)} ({format_element(ctx.sys, x)}, {format_element(ctx.sys, y)}) q^{gamma}"
    dt = time.perf_counter() - t0
    ok = bad is None and dt < 600
    return ok, f"{checked} coefficients of P and Q in {dt:.1f}s" + (f"; mismatch at {bad}" if bad else "")


def _run_suites(suites):
    checked, bad = 0, None
    for name, ctx in configurations():
        for res in suites(name, ctx):
            checked += res.checked
            if not res.passed and bad is None:
                bad = f"{label(ctx)} {res.name}: {res.counterexample}"
    return checked, bad


def criterion_4():
    checked, bad = _run_suites(lambda name, ctx: [*verify_r_identities(ctx), check_q_identity(ctx)])
    return bad is None, f"R/R~ inversion, strict-interval identity and Q/R~ identity: {checked} checks" + (f"; {bad}" if bad else "")


def criterion_5():
    def suites(name, ctx):
        return [*check_degrees(ctx), check_chain_laws(ctx, VANISH_GAP)]

    checked, bad = _run_suites(suites)
    return bad is None, f"support, degree windows, vanishing and strictness: {checked} checks" + (f"; {bad}" if bad else "")


def criterion_6():
    checked, bad = _run_suites(lambda name, ctx: check_module_laws(ctx))
    return bad is None, f"quadratic, braid, involution and C_y invariance: {checked} checks" + (f"; {bad}" if bad else "")


def criterion_7():
    problems = []
    n = 0
    for name, weights in CATALOG:
        if len(set(weights)) > 1:
            continue
        ctx = get_module(new_system(name, weights), "")
        for x, y in comparable_pairs(ctx):
            n += 1
            if r_poly(ctx, None, x, y) != r_tilde(ctx, None, x, y):
                problems.append(f"R != R~ in {name}")
                break
    s3 = get_module(new_system("A2"), "")
    if any(p_poly(s3, None, x, y) != ONE for x, y in comparable_pairs(s3)):
        problems.append("S3 has P != 1")
    a3 = new_system("A3")
    x, y = parse_element(a3, "s2"), parse_element(a3, "s2.s1.s3.s2")
    oracle = p_poly(a3, "", x, y)  # recursion first
    if oracle != LaurentPoly.parse("1 + q"):
        problems.append(f"S4 recursion gives {oracle}")
    if p_via_chains(a3, "", x, y) != oracle or p_via_multichains(a3, "", x, y) != oracle:
        problems.append("S4 chain formula disagrees")
    return not problems, f"R = R~ on {n} equal-weight pairs, S3 all P = 1, S4 P(s2, s2s1s3s2) = {oracle}" + (
        f"; {problems[0]}" if problems else ""
    )


def criterion_8():
    def suites(name, ctx):
        results = check_chain_expansions(ctx)
        return results[:2]

    checked, bad = _run_suites(suites)
    return bad is None, f"expansion of P - R_(x,y) and chain constant terms: {checked} checks" + (f"; {bad}" if bad else "")


def criterion_9(tmp_dir=None):
    cmd = [sys.executable, "-m", "wkl", "table", "--type", "B3", "--weights", "2,1,1", "-J", "s2", "--kind", "Q", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    csv_cmd = [sys.executable, "-m", "wkl", "table", "--type", "I2(6)", "--weights", "1,3", "--kind", "P", "--format", "csv"]
    csv_runs = [subprocess.run(csv_cmd, capture_output=True, check=False) for _ in range(2)]
    ok = (
        all(r.returncode == 0 for r in runs + csv_runs)
        and runs[0].stdout == runs[1].stdout
        and csv_runs[0].stdout == csv_runs[1].stdout
        and len(runs[0].stdout) > 0
    )
    return ok, f"two `wkl table` runs byte-identical ({len(runs[0].stdout)} and {len(csv_runs[0].stdout)} bytes)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10))
def test_acceptance_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    report(capsys, number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for i, crit in enumerate(CRITERIA, start=1):
        ok, detail = crit()
        report(None, i, ok, detail)
        failures += not ok
    sys.exit(1 if failures else 0)
