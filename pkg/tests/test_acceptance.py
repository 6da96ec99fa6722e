"""Acceptance criteria 1-8, one test each.

Every test prints a single ``CRITERION k PASS|FAIL`` line (outside pytest's
capture) and then asserts the criterion at its stated tolerance.
"""

import io
import math
import random
import time

import pytest

from minmaxfine import ClassicMinMaxHeap, CostModelParams, MinMaxFineHeap, creation_bound, creation_closed_form
from minmaxfine.bench import BenchConfig, create_keys, run_bench, run_cell
from minmaxfine.cli import main
from minmaxfine.instrumentation import ceil_log2, delete_bound, insert_bound, measure

SEED = 1


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number} {'PASS' if ok else 'FAIL'}: {title} | {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def big_rows():
    """Insert/delete cells on a heap of exactly 2^20 keys, 10^4 trials each."""
    rows = run_bench(BenchConfig([2**20], 10_000, SEED, ["fine"], ["insert", "delete_min", "delete_max"]))
    return {r.op: r for r in rows}


def test_criterion_1_oracle_equivalence(report):
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(["verify", "--nmax", "7", "--seed", "1", "--seeds", "10", "--length", "100000"], out)
    elapsed = time.perf_counter() - t0
    ok = code == 0 and elapsed < 120
    detail = f"exit {code} in {elapsed:.1f}s; " + "; ".join(out.getvalue().strip().splitlines())
    report(1, "exhaustive n<=7 plus 10 x 10^5 random ops, no divergence", ok, detail)


def test_criterion_2_creation_bound(report):
    failures, notes = [], []
    for parity in ("min", "max"):
        for h in range(1, 10):
            p = CostModelParams(h, parity)
            bound = creation_bound(p)  # includes 2^(2h-1) for a max bottom
            row = run_cell("fine", "create", p.n, 50, SEED)
            notes.append(f"{parity} h={h}: {row.comparisons_max}/{bound}")
            if row.comparisons_max > bound:
                failures.append(f"{parity} h={h} max {row.comparisons_max} > {bound}")
    p15 = CostModelParams(15, "min")
    ratio = creation_bound(p15) / p15.n
    if not 1.973 <= ratio <= 1.993:
        failures.append(f"ratio {ratio:.4f}")
    detail = f"ratio(h=15)={ratio:.4f}; measured/bound " + ", ".join(notes)
    if failures:
        detail = f"{len(failures)} cells over bound; " + detail
    report(2, "build_from comparisons_max <= creation bound, h=1..9, both parities", not failures, detail)


def test_criterion_3_comparative_ordering(report):
    failures, notes = [], []
    for n in (2**15 - 1, 2**18 - 1):
        worst_gap = None
        for t in range(30):
            values = create_keys(SEED, n, t)
            fine = MinMaxFineHeap.build_from(values).comparator.comparisons
            classic = ClassicMinMaxHeap.build_from(values).comparator.comparisons
            gap = classic - fine
            worst_gap = gap if worst_gap is None else min(worst_gap, gap)
            if not fine < classic:
                failures.append(f"create n={n} trial {t}: {fine} >= {classic}")
        notes.append(f"n={n} create min(classic-fine)={worst_gap}")
        for op in ("delete_min", "delete_max"):
            f = run_cell("fine", op, n, 1000, SEED)
            c = run_cell("classic", op, n, 1000, SEED)
            notes.append(f"{op} max {f.comparisons_max} vs {c.comparisons_max}")
            if f.comparisons_max > c.comparisons_max:
                failures.append(f"{op} n={n}")
    report(3, "fine < classic on create, fine <= classic on delete maxima", not failures, "; ".join(failures + notes))


def test_criterion_4_insert_bound(report):
    n = 2**20 - 1
    row = run_cell("fine", "insert", n, 10_000, SEED)
    bound = insert_bound(n)
    ok = bound == 8 and row.comparisons_max <= bound
    report(4, "single insert at n=2^20-1 within 8 comparisons", ok,
           f"max {row.comparisons_max}, mean {row.comparisons_mean:.3f}, bound {bound}")


def test_criterion_5_delete_bound(report, big_rows):
    bound = delete_bound(2**20)
    maxima = {op: big_rows[op].comparisons_max for op in ("delete_min", "delete_max")}
    ok = bound == 28 and all(m <= bound for m in maxima.values())
    report(5, "delete_min/delete_max at n=2^20 within 28 comparisons", ok, f"maxima {maxima}, bound {bound}")


def test_criterion_6_data_movements(report, big_rows):
    n = 2**20
    delete_cap = ceil_log2(n + 1)
    insert_cap = math.floor(0.5 * math.log2(n + 1) + 1)
    create = run_cell("fine", "create", n, 3, SEED)
    moves = {op: big_rows[op].moves_max for op in ("insert", "delete_min", "delete_max")}
    ok = (
        delete_cap == 21
        and insert_cap == 11
        and moves["delete_min"] <= delete_cap
        and moves["delete_max"] <= delete_cap
        and moves["insert"] <= insert_cap
        and create.moves_max <= n
    )
    report(6, "moves at n=2^20: deletes <= 21, inserts <= 11, create <= n", ok,
           f"per-op maxima {moves}, create max {create.moves_max}")


def test_criterion_7_constant_time_finds(report):
    rng = random.Random(SEED)
    worst = 0
    for n in list(range(1, 101)) + [2**20]:
        h = MinMaxFineHeap.build_from([rng.getrandbits(64) for _ in range(n)])
        for fn in (h.find_min, h.find_max):
            _, cost = measure(h, fn)
            worst = max(worst, cost.comparisons)
    report(7, "find_min/find_max use 0 comparisons for n in 1..100 and 2^20", worst == 0,
           f"largest count {worst}")


def test_criterion_8_cost_model_consistency(report):
    bad = [h for h in range(16) if creation_bound(h, "min") != creation_closed_form(h)]
    report(8, "recurrence equals closed form for h=0..15", not bad, f"mismatches at h={bad}" if bad else "all equal")
