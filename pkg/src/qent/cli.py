"""Command-line front end.

    qent analyze FILE [--mode levels|no-levels|unsafe-leveling] [--trace]
                      [--format text|json] [--check-oracle] [--max-oracle-qubits N]
    qent compare FILE

Exit codes: 0 success, 1 parse error, 2 validation error (or oracle qubit
limit exceeded), 3 soundness violation. Diagnostics go to stderr; results
to stdout. Output is deterministic for a given input file and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from .analyzer import AnalysisMode, TraceStep, analyze, analyze_traced
from .circuit import CircuitSyntaxError, ValidationError, parse_circuit, validate
from .domain import AbstractState, BasisLabel, Partition
from .oracle import QubitLimitError, SoundnessReport, check_soundness, simulate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_UNSOUND = 3


def state_to_document(state: AbstractState, mode: AnalysisMode,
                      trace: list[TraceStep] | None = None) -> dict:
    """Serialize an analysis result; blocks and members sorted ascending."""
    doc = {
        "qubits": state.n,
        "mode": mode.value,
        "labels": [label.value for label in state.labels],
        "separability": state.sep.blocks(),
        "levels": state.lvl.blocks(),
    }
    if trace is not None:
        doc["trace"] = [
            {
                "gate": step.gate.value,
                "index": step.index,
                "labels": [label.value for label in step.state.labels],
                "separability": step.state.sep.blocks(),
                "levels": step.state.lvl.blocks(),
            }
            for step in trace
        ]
    return doc


def document_to_state(doc: dict) -> AbstractState:
    """Rebuild the AbstractState a document was serialized from."""
    n = doc["qubits"]
    return AbstractState(
        [BasisLabel(value) for value in doc["labels"]],
        Partition.from_blocks(doc["separability"], n),
        Partition.from_blocks(doc["levels"], n),
    )


def _blocks_text(blocks: list[list[int]]) -> str:
    return " ".join("{" + ",".join(str(q) for q in block) + "}" for block in blocks)


def _state_line(state: AbstractState) -> str:
    return (f"labels: {' '.join(label.value for label in state.labels)} | "
            f"separability: {_blocks_text(state.sep.blocks())} | "
            f"levels: {_blocks_text(state.lvl.blocks())}")


def _print_text(state: AbstractState, mode: AnalysisMode,
                trace: list[TraceStep] | None) -> None:
    print(f"qubits: {state.n}")
    print(f"mode: {mode.value}")
    print(f"labels: {' '.join(label.value for label in state.labels)}")
    print(f"separability: {_blocks_text(state.sep.blocks())}")
    print(f"levels: {_blocks_text(state.lvl.blocks())}")
    if trace is not None:
        for k, step in enumerate(trace):
            print(f"step {k + 1}: {step.gate.value}@{step.index} -> {_state_line(step.state)}")


def _soundness_doc(report: SoundnessReport) -> dict:
    return {
        "entanglement_ok": report.entanglement_ok,
        "level_ok": report.level_ok,
        "label_ok": report.label_ok,
        "violations": [list(v) for v in report.violations],
    }


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        print(f"error: cannot read {path}: {err}", file=sys.stderr)
        return None, EXIT_PARSE
    try:
        circuit = parse_circuit(text)
    except CircuitSyntaxError as err:
        print(f"error: {path}:{err.line}:{err.column}: {err.message}", file=sys.stderr)
        return None, EXIT_PARSE
    try:
        validate(circuit)
    except ValidationError as err:
        print(f"error: {path}: {err}", file=sys.stderr)
        return None, EXIT_VALIDATION
    return circuit, EXIT_OK


def _cmd_analyze(args) -> int:
    circuit, status = _load(args.file)
    if circuit is None:
        return status
    mode = AnalysisMode(args.mode)

    if args.trace:
        state, trace = analyze_traced(circuit, mode)
    else:
        state, trace = analyze(circuit, mode), None

    report = None
    if args.check_oracle:
        try:
            exact = simulate(circuit, max_qubits=args.max_oracle_qubits)
        except QubitLimitError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_VALIDATION
        report = check_soundness(state, exact, max_qubits=args.max_oracle_qubits)

    if args.format == "json":
        doc = state_to_document(state, mode, trace)
        if report is not None:
            doc["soundness"] = _soundness_doc(report)
        print(json.dumps(doc, indent=2))
    else:
        _print_text(state, mode, trace)
        if report is not None:
            verdict = "ok" if report.ok else "VIOLATED"
            print(f"soundness: {verdict} (entanglement={report.entanglement_ok} "
                  f"level={report.level_ok} label={report.label_ok})")
            for kind, subject, explanation in report.violations:
                print(f"  violation[{kind}] {subject}: {explanation}")

    if report is not None and not report.ok:
        print("error: analysis is unsound for this circuit", file=sys.stderr)
        return EXIT_UNSOUND
    return EXIT_OK


def _cmd_compare(args) -> int:
    circuit, status = _load(args.file)
    if circuit is None:
        return status
    with_levels = analyze(circuit, AnalysisMode.LEVELS)
    without = analyze(circuit, AnalysisMode.NO_LEVELS)
    delta = [
        (i, j)
        for i, j in combinations(range(with_levels.n), 2)
        if without.sep.same_block(i, j) and not with_levels.sep.same_block(i, j)
    ]
    print(f"qubits: {with_levels.n}")
    print(f"levels:    {_state_line(with_levels)}")
    print(f"no-levels: {_state_line(without)}")
    if delta:
        print("more precise on: " + " ".join(f"({i},{j})" for i, j in delta))
    else:
        print("more precise on: (none)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qent",
        description="Static entanglement analysis for quantum circuit files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyze a circuit file")
    p_analyze.add_argument("file")
    p_analyze.add_argument("--mode", choices=[m.value for m in AnalysisMode],
                           default=AnalysisMode.LEVELS.value)
    p_analyze.add_argument("--no-levels", dest="mode", action="store_const",
                           const=AnalysisMode.NO_LEVELS.value,
                           help="alias for --mode no-levels")
    p_analyze.add_argument("--trace", action="store_true",
                           help="include a per-gate snapshot of the state")
    p_analyze.add_argument("--format", choices=["text", "json"], default="text")
    p_analyze.add_argument("--check-oracle", action="store_true",
                           help="simulate the circuit exactly and verify the analysis")
    p_analyze.add_argument("--max-oracle-qubits", type=int, default=12, metavar="N")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_compare = sub.add_parser("compare",
                               help="run levels and no-levels modes side by side")
    p_compare.add_argument("file")
    p_compare.set_defaults(func=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
