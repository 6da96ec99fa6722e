"""``minmaxfine`` command line: bench, verify, trace and model."""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence, TextIO

from . import oracle
from .bench import FORMATS, OPS, STRUCTURES, BenchConfig, format_rows, gnuplot_data, run_bench
from .errors import ConfigurationError, HeapDomainError
from .heap_core import MinMaxFineHeap
from .instrumentation import MAX_H, CostModelParams, creation_bound

_SIZE = re.compile(r"^\s*(\d+)(?:\s*(?:\^|\*\*)\s*(\d+))?\s*(?:([+-])\s*(\d+))?\s*$")


def parse_size(text: str) -> int:
    """``1000``, ``2^20``, ``2**15-1`` and the like."""
    m = _SIZE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad size {text!r}")
    base, exp, sign, off = m.groups()
    n = int(base) ** int(exp) if exp else int(base)
    if sign:
        n = n + int(off) if sign == "+" else n - int(off)
    if n < 1:
        raise argparse.ArgumentTypeError(f"size must be positive: {text!r}")
    return n


def _csv_list(choices: Sequence[str]):
    def parse(text: str) -> list[str]:
        items = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in items if t not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(f"choose from {','.join(choices)}; got {text!r}")
        return items

    return parse


def _sizes(text: str) -> list[int]:
    return [parse_size(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minmaxfine", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="count comparisons and moves per operation")
    b.add_argument("--sizes", type=_sizes, default=[2**11 - 1, 2**15 - 1], help="comma list, e.g. 2^15-1,2^20")
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--structures", type=_csv_list(STRUCTURES), default=list(STRUCTURES))
    b.add_argument("--ops", type=_csv_list(OPS), default=list(OPS))
    b.add_argument("--format", choices=FORMATS, default="csv")
    b.add_argument("--output", help="write the report here instead of stdout")
    b.add_argument("--plot-data", help="also write a gnuplot data file")

    v = sub.add_parser("verify", help="differential and exhaustive checks against a sorted multiset")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--seeds", type=int, default=10, help="number of consecutive seeds")
    v.add_argument("--length", type=int, default=10**5)
    v.add_argument("--nmax", type=int, default=7)
    v.add_argument("--structures", type=_csv_list(STRUCTURES), default=list(STRUCTURES))
    # negative control: the fine heap without frontier candidates
    v.add_argument("--no-frontier", action="store_true", help=argparse.SUPPRESS)

    t = sub.add_parser("trace", help="DOT dump of the fine heap after every transcript step")
    t.add_argument("transcript", help="file of 'I <key>' / 'DM' / 'DX' lines, or - for stdin")
    t.add_argument("--output")

    m = sub.add_parser("model", help="evaluate the creation cost model")
    m.add_argument("--h", type=int, required=True)
    m.add_argument("--parity", choices=("min", "max"), default="min")
    return p


# -- bench ---------------------------------------------------------------------


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    config = BenchConfig(args.sizes, args.trials, args.seed, args.structures, args.ops, args.format)
    rows = run_bench(config)
    text = format_rows(rows, config.format)
    _emit(text, args.output, out)
    if args.plot_data:
        with open(args.plot_data, "w") as fh:
            fh.write(gnuplot_data(rows))
    exceeded = [r for r in rows if r.bound_exceeded]
    for r in exceeded:
        print(f"bound exceeded: {r.structure} {r.op} n={r.n} max={r.comparisons_max} bound={r.bound}", file=sys.stderr)
    return 1 if exceeded else 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    fine_kw = {"frontier_candidates": False} if args.no_frontier else {}
    for structure in args.structures:
        kw = fine_kw if structure == "fine" else {}
        found = oracle.exhaustive_small(args.nmax, structure, **kw)
        if found:
            print(f"{structure} exhaustive n<={args.nmax}: {found}", file=out)
            return 1
        for j in range(args.seeds):
            seed = args.seed + j
            key_range = oracle.KEY_RANGES[j % len(oracle.KEY_RANGES)]
            mix = (1 / 3, 1 / 3, 1 / 3) if structure != "binheap" else (1 / 2, 1 / 2, 0.0)
            workload = oracle.gen_workload(seed, args.length, mix, key_range)
            heap = oracle.make_structure(structure, **kw)
            found = oracle.run_differential(workload, heap)
            if found:
                print(f"{structure} seed {seed}: {found}", file=out)
                return 1
        print(f"{structure}: clean (exhaustive n<={args.nmax}, {args.seeds} x {args.length} random ops)", file=out)
    return 0


# -- trace ---------------------------------------------------------------------


def heap_dot(heap: MinMaxFineHeap, name: str, caption: str = "") -> str:
    """DOT for the heap: ``key|bit`` record nodes, solid child edges, and the
    last operation's chain as bold red edges from the hole."""
    keys, bits = heap.keys, heap.bits
    n = len(keys) - 1
    lines = [f"digraph {name} {{", "  node [shape=record];"]
    if caption:
        lines.append(f'  label="{caption}";')
    for i in range(1, n + 1):
        lines.append(f'  n{i} [label="{keys[i]}|{bits[i]}"];')
    for i in range(2, n + 1):
        lines.append(f"  n{i >> 1} -> n{i};")
    prev = heap.last_hole
    for s in heap.last_chain:
        if 1 <= prev <= n and s <= n:
            lines.append(f"  n{prev} -> n{s} [color=red, penwidth=2, constraint=false];")
        prev = s
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_trace(ops: list, out: TextIO) -> int:
    heap = MinMaxFineHeap()
    for step, op in enumerate(ops, 1):
        if op[0] == oracle.INSERT:
            heap.insert(op[1])
            caption = f"{step}: I {op[1]}"
        else:
            try:
                got = heap.delete_min() if op[0] == oracle.DELETE_MIN else heap.delete_max()
                caption = f"{step}: {op[0]} -> {got}"
            except IndexError:
                heap.last_hole, heap.last_chain = 0, []
                caption = f"{step}: {op[0]} on empty heap"
        out.write(heap_dot(heap, f"step{step}", caption))
    return 0


# -- model ---------------------------------------------------------------------


def cmd_model(h: int, parity: str, out: TextIO) -> int:
    params = CostModelParams(h, parity)  # type: ignore[arg-type]
    bound = creation_bound(params)
    print(f"h={h} parity={parity} bound={bound} n={params.n} ratio={bound / params.n:.4f}", file=out)
    return 0


def _emit(text: str, path: Optional[str], out: TextIO) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            return cmd_bench(args, out)
        if args.command == "verify":
            if args.nmax < 0 or args.length < 0 or args.seeds < 0:
                parser.error("--nmax, --length and --seeds must be non-negative")
            return cmd_verify(args, out)
        if args.command == "trace":
            if args.transcript == "-":
                ops = oracle.parse_transcript(sys.stdin)
            else:
                with open(args.transcript) as fh:
                    ops = oracle.parse_transcript(fh)
            if args.output:
                with open(args.output, "w") as fh:
                    return cmd_trace(ops, fh)
            return cmd_trace(ops, out)
        if not 0 <= args.h <= MAX_H:
            parser.error(f"--h must lie in 0..{MAX_H}")
        return cmd_model(args.h, args.parity, out)
    except (ConfigurationError, HeapDomainError, OSError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
