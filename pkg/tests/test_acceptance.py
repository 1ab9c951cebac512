"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest) and by ``python tests/test_acceptance.py``.
"""
import sys
import time
from collections import Counter
from itertools import product
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import EXAMPLE_BASE, LONG_24, SHORT_8, TABLE2  # noqa: E402

from dbhom.binary2 import decompose_d2, find_cross_join, fixed_points, fixed_seed, join  # noqa: E402
from dbhom.cli import main as cli_main  # noqa: E402
from dbhom.construct import (  # noqa: E402
    ConstructionPlan, algorithm_A, algorithm_AA, algorithm_B, base_cycle,
    cross_join_position, enumerate_family,
)
from dbhom.core import Cycle, index_of, render, weight  # noqa: E402
from dbhom.homo import (  # noqa: E402
    HomKernel, count_property_D, d2_kernel, is_property_D, latin_square_count,
    lempel, lift_cycle_decomposition, lift_sequence, make_linear_kernel,
)
from dbhom.oracle import (  # noqa: E402
    check_lift_structure, enumerate_de_bruijn, has_lift_property, is_de_bruijn,
    vertex_disjoint_cycles,
)

RESULTS = []


def record(num, ok, detail, started):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - started:.2f}s) {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def units(q):
    return [u for u in range(1, q) if gcd(u, q) == 1]


def test_1_table2_golden(capsys):
    t0 = time.perf_counter()
    cli_main(["enumerate", "--q", "3", "--n", "2"])
    lines = capsys.readouterr().out.splitlines()
    got = {Cycle.parse(l.split("\t")[1], 3) for l in lines}
    want = {Cycle.parse(s, 3) for s in TABLE2.values()}
    rows_ok = all(
        render(algorithm_AA(ConstructionPlan(3, 2, (b,), (lam,), (i,))), 3) == s
        for (b, lam, i), s in TABLE2.items()
    )
    elapsed = time.perf_counter() - t0
    ok = len(lines) == 12 and got == want and rows_ok and elapsed < 1
    assert record(1, ok, f"{len(lines)} lines, set match={got == want}, rows match={rows_ok}", t0)


def test_2_binary_worked_example():
    t0 = time.perf_counter()
    b = Cycle.parse(EXAMPLE_BASE, 2)
    rep = fixed_seed(b)
    short, long_ = decompose_d2(b)
    lifts = {render(lift_sequence(d2_kernel(), b.symbols, s)[:8], 2) for s in product(range(2), repeat=2)}
    joined = join(short, long_, find_cross_join(short, long_, 5))
    ok = (
        rep.seed == (1, 0)
        and short == Cycle.parse(SHORT_8, 2)
        and long_ == Cycle.parse(LONG_24, 2)
        and len(lifts) == 4
        and is_de_bruijn(joined, 2, 5).ok
        and time.perf_counter() - t0 < 1
    )
    assert record(2, ok, f"seed={''.join(map(str, rep.seed))}, lengths={len(short)}/{len(long_)}, joined ok", t0)


def test_3_position_formula():
    t0 = time.perf_counter()
    cases = agree = 0
    for q, top in ((3, 3), (5, 2)):
        for n in range(1, top + 1):
            for plan, cyc in enumerate_family(q, n + 1):
                i, lam = plan.I[-1], plan.L[-1]
                for g in range(1, q):
                    cases += 1
                    agree += cross_join_position(q, n, i, lam, g) == index_of((g,) * (n + 1), cyc)
    ok = cases >= 200 and agree == cases and time.perf_counter() - t0 < 10
    assert record(3, ok, f"{agree}/{cases} positions agree", t0)


def test_4_soundness_sweep():
    t0 = time.perf_counter()
    total = good = 0
    sizes = Counter()
    for q, top in ((3, 4), (5, 3)):
        for n in range(2, top + 1):
            for _, cyc in enumerate_family(q, n):
                total += 1
                sizes[(q, n)] += 1
                good += is_de_bruijn(cyc, q, n).ok
    expected = {(3, 2): 12, (3, 3): 144, (3, 4): 1728, (5, 2): 80, (5, 3): 6400}
    ok = dict(sizes) == expected and good == total and time.perf_counter() - t0 < 300
    assert record(4, ok, f"{good}/{total} outputs are De Bruijn", t0)


def test_5_A_B_equivalence():
    t0 = time.perf_counter()
    cases = same = 0
    for q in (3, 5):
        gammas = {1: [base_cycle(q)]}
        gammas[2] = [c for _, c in enumerate_family(q, 2)]
        for m in (1, 2):
            if q ** (m + 1) > 125:
                continue
            for g in gammas[m]:
                for beta in units(q):
                    d = make_linear_kernel(q, beta)
                    for lam in units(q):
                        for a in range(q):
                            cases += 1
                            same += algorithm_A(g, d, a, lam) == algorithm_B(g, d, a, lam)
    ok = same == cases and time.perf_counter() - t0 < 30
    assert record(5, ok, f"{same}/{cases} parameter sets agree", t0)


def _bases(q, orders, max_len):
    out = []
    for n in orders:
        out.extend((n, c) for c in vertex_disjoint_cycles(q, n, max_len))
    out.sort(key=lambda nc: len(nc[1]))
    return out


def test_6_property_D_characterisation():
    t0 = time.perf_counter()
    checked = agree = 0
    for q, k, orders in ((2, 1, (1, 2, 3)), (2, 2, (1, 2, 3)), (2, 3, (1, 2, 3)), (3, 1, (1, 2))):
        bases = _bases(q, orders, 8)
        for table in product(range(q), repeat=q ** (k + 1)):
            d = HomKernel(q, k, table)
            lifts = all(has_lift_property(d, c, n) for n, c in bases)
            checked += 1
            agree += lifts == is_property_D(d)
    ok = agree == checked and time.perf_counter() - t0 < 120
    assert record(6, ok, f"{agree}/{checked} kernels agree", t0)


def _binary_normal_forms(k):
    """Tables of x1 + h(x2..xk) + x_{k+1} for every Boolean h."""
    mids = list(product(range(2), repeat=k - 1))
    forms = set()
    for hv in product(range(2), repeat=len(mids)):
        h = dict(zip(mids, hv))
        forms.add(tuple((xs[0] + h[xs[1:-1]] + xs[-1]) % 2 for xs in product(range(2), repeat=k + 1)))
    return forms


def test_7_count_law():
    t0 = time.perf_counter()
    notes, ok = [], True
    for q, k in ((2, 1), (2, 2), (2, 3), (3, 1)):
        got = count_property_D(q, k)
        law = latin_square_count(q) ** (q ** (k - 1))
        ok &= got == law
        if q == 2:
            brute = {t for t in product(range(2), repeat=2 ** (k + 1)) if HomKernel(2, k, t).property_D}
            ok &= brute == _binary_normal_forms(k) and len(brute) == got == 2 ** (2 ** (k - 1))
        if k >= 2:
            ok &= latin_square_count(q) ** (q ** (k - 2)) != got
        notes.append(f"q={q},k={k}:{got}")
    ok &= time.perf_counter() - t0 < 60
    detail = ", ".join(notes) + "; listed value 256 for q=2,k=3 contradicts its own formula 2^(2^(k-1))=16"
    assert record(7, ok, detail, t0)


def test_8_lempel_dichotomy():
    t0 = time.perf_counter()
    D = lempel()
    cases = agree = 0
    for n in range(1, 5):
        for c in vertex_disjoint_cycles(2, n, 16):
            p = len(c)
            dec = lift_cycle_decomposition(D, c, n)
            want = [p, p] if weight(c, 2) == 0 else [2 * p]
            cases += 1
            agree += sorted(dec.lengths) == want and check_lift_structure(D, c, dec)
    ok = agree == cases and time.perf_counter() - t0 < 60
    assert record(8, ok, f"{agree}/{cases} cycles follow the parity rule", t0)


def test_9_fixed_seed_exhaustive():
    t0 = time.perf_counter()
    cases = agree = 0
    for n, expected in ((3, 2), (4, 16)):
        cycles = list(enumerate_de_bruijn(2, n))
        ok_count = len(cycles) == expected
        for b in cycles:
            cases += 1
            short, long_ = decompose_d2(b)
            agree += (
                ok_count
                and fixed_points(b) == [fixed_seed(b).seed]
                and (len(short), len(long_)) == (2 ** n, 3 * 2 ** n)
            )
    ok = cases == 18 and agree == cases and time.perf_counter() - t0 < 10
    assert record(9, ok, f"{agree}/{cases} cycles match", t0)


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
