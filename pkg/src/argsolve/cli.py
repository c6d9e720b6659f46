"""Command-line front end: generate instances, solve and decide
problems on them, and run the benchmark protocol.

Exit codes: 0 success, 2 usage error, 3 input-format error, 4 when a
search was interrupted by the timeout (override with --timeout-ok).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import budget as budget_mod
from . import netgen
from .encodings import EncodingRequest, UserRequirement, enumerate_extensions, is_preferred
from .engine import (
    DEFAULT_TIMEOUT_MS,
    INPUT_ORDER,
    MOST_CONSTRAINED_STATIC,
    ONE_FIRST,
    SEEDED_RANDOM,
    ZERO_FIRST,
    Literal,
    SearchConfig,
)
from .interchange import DlParseError, emit_dl, emit_dot, emit_results, parse_dl, parse_scalar
from .model import Framework
from .oracle import ALL_KINDS, ANY_ATTACK, STABLE, STRICT, SemanticsSpec
from .semiring import format_value

_ALPHA_PREFIX = "alpha-"
_SEMANTICS_CHOICES = list(ALL_KINDS) + [_ALPHA_PREFIX + kind for kind in ALL_KINDS]


def _default_timeout_ms() -> float:
    return float(os.environ.get("ARGSOLVE_TIMEOUT_MS", DEFAULT_TIMEOUT_MS))


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class BenchPlan:
    """One benchmark run: a generator template swept over sizes, with
    repetitions per size and a list of semantics to enumerate."""

    kind: str
    sizes: tuple[int, ...]
    semantics: tuple[str, ...]
    reps: int = 10
    timeout_ms: float = DEFAULT_TIMEOUT_MS
    seed: int = 0
    alpha: "str | None" = None
    edges_per_step: int = 3
    theta: float = 0.5
    long_range_per_node: int = 1
    orient: str = "coin"
    weights: "str | None" = None

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.sizes or not self.semantics:
            raise ValueError("a bench plan needs sizes and semantics")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argsolve",
        description="Solve acceptability problems on (weighted) attack graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate an instance file")
    gen.add_argument("--kind", required=True, choices=["barabasi", "kleinberg", "fig4"])
    gen.add_argument("--nodes", type=int, default=10, help="node count (barabasi)")
    gen.add_argument("--edges-per-step", type=int, default=3, help="attachment edges per new node")
    gen.add_argument("--n", type=int, default=5, help="lattice side (kleinberg); the graph has n*n nodes")
    gen.add_argument("--theta", type=float, default=0.5, help="clustering exponent")
    gen.add_argument("--long-range", type=int, default=1, help="long-range links per node")
    gen.add_argument("--orient", choices=["coin", "both"], default="coin")
    gen.add_argument("--weights", default=None,
                     help="none, int:MAX or fuzzy (fig4 carries its own fixed weights)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--weight-seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    solve = sub.add_parser("solve", help="enumerate extensions of an instance")
    solve.add_argument("input")
    solve.add_argument("--semantics", choices=_SEMANTICS_CHOICES)
    solve.add_argument("--alpha", help="tolerance threshold for the alpha- semantics")
    solve.add_argument("--stable-rule", choices=[STRICT, ANY_ATTACK], default=STRICT)
    solve.add_argument("--require", action="append", default=[], metavar="EXPR",
                       help="side requirement, e.g. 'if a&!b then !c|!d'")
    solve.add_argument("--forbid", action="append", default=[], metavar="EXPR",
                       help="forbidden membership pattern, e.g. 'a&b'")
    solve.add_argument("--timeout", type=float, default=_default_timeout_ms(), metavar="MS",
                       help="search timeout (also via ARGSOLVE_TIMEOUT_MS)")
    solve.add_argument("--seed", type=int)
    solve.add_argument("--var-heuristic", choices=[MOST_CONSTRAINED_STATIC, INPUT_ORDER],
                       default=MOST_CONSTRAINED_STATIC)
    solve.add_argument("--val-heuristic", choices=[ONE_FIRST, ZERO_FIRST, SEEDED_RANDOM],
                       default=ONE_FIRST)
    solve.add_argument("--check-preferred", metavar="SET",
                       help="decide whether the comma-separated set is preferred")
    solve.add_argument("--out", help="write a results document here")
    solve.add_argument("--dot", help="write a DOT rendering here")
    solve.add_argument("--stats", action="store_true",
                       help="include wall-clock time in the results document")
    solve.add_argument("--timeout-ok", action="store_true",
                       help="exit 0 even when the search timed out")

    decide = sub.add_parser("decide", help="budgeted grounded decision problems")
    decide.add_argument("problem",
                        choices=["credulous-wge", "skeptical-wge", "minimal-budget", "is-minimal"])
    decide.add_argument("input")
    decide.add_argument("--beta", type=int)
    decide.add_argument("--arg", dest="argument")
    decide.add_argument("--set", dest="target")

    bench = sub.add_parser("bench", help="run the benchmark protocol")
    bench.add_argument("--kind", required=True, choices=["barabasi", "kleinberg", "fig4"])
    bench.add_argument("--sizes", required=True,
                       help="comma-separated sizes (nodes for barabasi, side for kleinberg)")
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--semantics", required=True, help="comma-separated semantics names")
    bench.add_argument("--alpha")
    bench.add_argument("--edges-per-step", type=int, default=3)
    bench.add_argument("--theta", type=float, default=0.5)
    bench.add_argument("--long-range", type=int, default=1)
    bench.add_argument("--orient", choices=["coin", "both"], default="coin")
    bench.add_argument("--weights", default="none")
    bench.add_argument("--timeout", type=float, default=_default_timeout_ms(), metavar="MS")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", required=True)
    bench.add_argument("--raw", help="per-run records path (default: OUT.raw)")

    return parser


# -- requirement micro-syntax -------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>!?[A-Za-z0-9_]+)|(?P<sym>[()&|]))")


def _tokenize(expr: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(expr):
        match = _TOKEN.match(expr, pos)
        if match is None:
            rest = expr[pos:].strip()
            if not rest:
                break
            raise _UsageError(f"cannot parse requirement near {rest!r}")
        tokens.append(match.group("name") or match.group("sym"))
        pos = match.end()
    return tokens


def _parse_condition(expr: str, framework: Framework) -> tuple[tuple[Literal, ...], ...]:
    """Parse '&'-separated groups of '|'-separated literals into clauses."""

    def literal(token: str) -> Literal:
        negated = token.startswith("!")
        name = token[1:] if negated else token
        try:
            index = framework.index_of(name)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        return Literal(index, 0 if negated else 1)

    tokens = _tokenize(expr)
    clauses: list[tuple[Literal, ...]] = []
    current: list[Literal] = []
    expect_literal = True
    depth = 0
    for token in tokens:
        if token == "(":
            if not expect_literal or current:
                raise _UsageError(f"unexpected '(' in {expr!r}")
            depth += 1
        elif token == ")":
            if depth == 0 or not current:
                raise _UsageError(f"unexpected ')' in {expr!r}")
            depth -= 1
        elif token == "&":
            if expect_literal or not current:
                raise _UsageError(f"unexpected '&' in {expr!r}")
            clauses.append(tuple(current))
            current = []
            expect_literal = True
        elif token == "|":
            if expect_literal:
                raise _UsageError(f"unexpected '|' in {expr!r}")
            expect_literal = True
        else:
            if not expect_literal:
                raise _UsageError(f"missing connective before {token!r} in {expr!r}")
            current.append(literal(token))
            expect_literal = False
    if depth != 0:
        raise _UsageError(f"unbalanced parentheses in {expr!r}")
    if expect_literal or not current:
        raise _UsageError(f"incomplete requirement {expr!r}")
    clauses.append(tuple(current))
    return tuple(clauses)


def _parse_requirement(expr: str, framework: Framework) -> UserRequirement:
    stripped = expr.strip()
    match = re.fullmatch(r"if\s+(?P<guard>.+?)\s+then\s+(?P<cons>.+)", stripped, re.S)
    if match:
        guard = _parse_condition(match.group("guard"), framework)
        consequence = _parse_condition(match.group("cons"), framework)
    else:
        guard = ()
        consequence = _parse_condition(stripped, framework)
    return UserRequirement(guard, consequence)


def _parse_forbid(expr: str, framework: Framework) -> UserRequirement:
    """Compile a forbidden conjunction into a requirement: if all but
    the last literal hold, the last one must not."""
    clauses = _parse_condition(expr, framework)
    literals = []
    for clause in clauses:
        if len(clause) != 1:
            raise _UsageError("--forbid takes a plain conjunction of literals")
        literals.append(clause[0])
    last = literals[-1]
    guard = tuple((lit,) for lit in literals[:-1])
    return UserRequirement(guard, ((Literal(last.var, 1 - last.value),),))


# -- command implementations --------------------------------------------


def _parse_weight_scheme(text: "str | None") -> tuple[str, int]:
    if text is None or text == "none":
        return netgen.WEIGHTS_NONE, 9
    if text == "fuzzy":
        return netgen.WEIGHTS_FUZZY, 9
    match = re.fullmatch(r"int:(\d+)", text)
    if match:
        return netgen.WEIGHTS_INT, int(match.group(1))
    raise _UsageError(f"cannot parse weight scheme {text!r} (use none, int:MAX or fuzzy)")


def _fig4_framework(weights_flag: "str | None") -> Framework:
    # The example graph carries its own fixed weights; --weights none
    # exports the plain form, random schemes make no sense here.
    if weights_flag is None:
        return netgen.fig4(weighted=True)
    if weights_flag == "none":
        return netgen.fig4(weighted=False)
    raise _UsageError("the example graph carries fixed weights; only --weights none applies")


def _cmd_generate(args) -> int:
    if args.kind == "fig4":
        framework = _fig4_framework(args.weights)
    else:
        scheme, weight_max = _parse_weight_scheme(args.weights)
        spec = netgen.GenSpec(
            kind=args.kind,
            node_count=args.nodes,
            edges_per_step=args.edges_per_step,
            side=args.n,
            theta=args.theta,
            long_range_per_node=args.long_range,
            seed=args.seed,
            orient=args.orient,
            weight_scheme=scheme,
            weight_max=weight_max,
            weight_seed=args.weight_seed,
        )
        framework = netgen.generate(spec)
    Path(args.out).write_text(emit_dl(framework), encoding="utf-8")
    return 0


def _semantics_spec(args, framework: Framework) -> SemanticsSpec:
    name = args.semantics
    weighted = name.startswith(_ALPHA_PREFIX)
    kind = name[len(_ALPHA_PREFIX):] if weighted else name
    if weighted != framework.is_weighted:
        if weighted:
            raise _UsageError("alpha- semantics need a weighted instance")
        raise _UsageError("weighted instances are solved with the alpha- semantics")
    alpha = None
    if weighted:
        if args.alpha is None:
            raise _UsageError("the alpha- semantics need --alpha")
        try:
            alpha = parse_scalar(args.alpha)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        if alpha.tag != framework.semiring.tag:
            raise _UsageError(
                f"--alpha {args.alpha} does not match the instance's weight kind"
            )
    elif args.alpha is not None:
        raise _UsageError("--alpha only applies to the alpha- semantics")
    stable_rule = args.stable_rule if weighted and kind == STABLE else None
    return SemanticsSpec(kind, weighted, alpha, stable_rule)


def _search_config(args) -> SearchConfig:
    try:
        return SearchConfig(
            var_heuristic=args.var_heuristic,
            val_heuristic=args.val_heuristic,
            seed=args.seed,
            timeout_ms=args.timeout,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_solve(args) -> int:
    framework = parse_dl(Path(args.input).read_text(encoding="utf-8"))

    if args.check_preferred is not None:
        if framework.is_weighted:
            raise _UsageError("the preferred check works on unweighted instances")
        members = [m for m in args.check_preferred.split(",") if m]
        try:
            candidate = framework.extension(members)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        config = SearchConfig(timeout_ms=args.timeout)
        print("yes" if is_preferred(framework, candidate, config) else "no")
        return 0

    if args.semantics is None:
        raise _UsageError("--semantics is required unless --check-preferred is used")
    spec = _semantics_spec(args, framework)
    config = _search_config(args)
    requirements = tuple(_parse_requirement(e, framework) for e in args.require)
    requirements += tuple(_parse_forbid(e, framework) for e in args.forbid)
    request = EncodingRequest(framework, spec, config, requirements)
    outcome = enumerate_extensions(request)

    for extension in outcome.solutions:
        print(extension.format(framework.names))
    print(
        f"count={len(outcome.solutions)} complete={'true' if outcome.complete else 'false'} "
        f"nodes={outcome.nodes} elapsed-ms={outcome.elapsed_ms:.2f}"
    )

    if args.out:
        meta = {"semantics": args.semantics}
        if args.alpha is not None:
            meta["alpha"] = format_value(spec.alpha)
        if spec.stable_rule is not None:
            meta["stable-rule"] = spec.stable_rule
        meta["seed"] = str(args.seed) if args.seed is not None else "none"
        meta["var-heuristic"] = args.var_heuristic
        meta["val-heuristic"] = args.val_heuristic
        meta["timeout-ms"] = f"{args.timeout:g}"
        Path(args.out).write_text(
            emit_results(framework, outcome, meta, include_timing=args.stats),
            encoding="utf-8",
        )
    if args.dot:
        highlight = outcome.solutions.items[0] if len(outcome.solutions) else None
        Path(args.dot).write_text(emit_dot(framework, highlight), encoding="utf-8")

    if not outcome.complete and not args.timeout_ok:
        return 4
    return 0


def _cmd_decide(args) -> int:
    framework = parse_dl(Path(args.input).read_text(encoding="utf-8"))
    names = framework.names

    def target_extension():
        if args.target is None:
            raise _UsageError("--set is required for this problem")
        members = [m for m in args.target.split(",") if m]
        try:
            return framework.extension(members)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None

    try:
        if args.problem in ("credulous-wge", "skeptical-wge"):
            if args.beta is None or args.argument is None:
                raise _UsageError("--beta and --arg are required for this problem")
            try:
                argument = framework.index_of(args.argument)
            except ValueError as exc:
                raise _UsageError(str(exc)) from None
            if args.problem == "credulous-wge":
                verdict, witness = budget_mod.credulous(framework, args.beta, argument)
                suffix = f" witness={witness.format(names)}" if witness is not None else ""
            else:
                verdict, counter = budget_mod.skeptical(framework, args.beta, argument)
                suffix = f" counterexample={counter.format(names)}" if counter is not None else ""
            print(("true" if verdict else "false") + suffix)
        elif args.problem == "minimal-budget":
            least, removal = budget_mod.minimal_budget(framework, target_extension())
            if least is None:
                print("none")
            else:
                removed = ",".join(
                    f"({names[s]},{names[d]})" for s, d in removal.attacks(framework)
                )
                print(f"{least} removal={{{removed}}}")
        else:
            if args.beta is None:
                raise _UsageError("--beta is required for this problem")
            verdict = budget_mod.is_minimal(framework, target_extension(), args.beta)
            print("true" if verdict else "false")
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    return 0


def run_bench(plan: BenchPlan) -> list[dict]:
    """Execute a bench plan; one record per (size, repetition, semantics)."""
    scheme, weight_max = _parse_weight_scheme(plan.weights)
    for name in plan.semantics:
        if name not in _SEMANTICS_CHOICES:
            raise _UsageError(f"unknown semantics {name!r}")
    alpha_names = [s for s in plan.semantics if s.startswith(_ALPHA_PREFIX)]
    if alpha_names and len(alpha_names) != len(plan.semantics):
        raise _UsageError("classical and alpha- semantics cannot be mixed in one bench run")

    records = []
    for size in plan.sizes:
        for rep in range(plan.reps):
            seed = plan.seed * 100003 + size * 1009 + rep
            if plan.kind == "fig4":
                framework = netgen.fig4(weighted=bool(alpha_names))
            else:
                spec = netgen.GenSpec(
                    kind=plan.kind,
                    node_count=size,
                    edges_per_step=plan.edges_per_step,
                    side=size,
                    theta=plan.theta,
                    long_range_per_node=plan.long_range_per_node,
                    seed=seed,
                    orient=plan.orient,
                    weight_scheme=scheme,
                    weight_max=weight_max,
                    weight_seed=seed + 1,
                )
                framework = netgen.generate(spec)
            for name in plan.semantics:
                run_args = argparse.Namespace(
                    semantics=name, alpha=plan.alpha, stable_rule=STRICT
                )
                spec_obj = _semantics_spec(run_args, framework)
                config = SearchConfig(timeout_ms=plan.timeout_ms)
                started = time.monotonic()
                outcome = enumerate_extensions(
                    EncodingRequest(framework, spec_obj, config)
                )
                wall_ms = (time.monotonic() - started) * 1000.0
                records.append(
                    {
                        "size": size,
                        "rep": rep,
                        "seed": seed,
                        "semantics": name,
                        "count": len(outcome.solutions),
                        "ms": wall_ms,
                        "complete": outcome.complete,
                    }
                )
    return records


def format_bench_table(plan: BenchPlan, records: list[dict]) -> str:
    """Aggregate per (size, semantics): mean count over all runs, mean
    wall time over completed runs, and a ``*`` marker when any run hit
    the timeout."""
    lines = ["# size semantics mean-count mean-ms timeout"]
    for size in plan.sizes:
        for name in plan.semantics:
            rows = [r for r in records if r["size"] == size and r["semantics"] == name]
            counts = [r["count"] for r in rows]
            done = [r["ms"] for r in rows if r["complete"]]
            mean_count = sum(counts) / len(counts)
            mean_ms = sum(done) / len(done) if done else float("nan")
            marker = "*" if any(not r["complete"] for r in rows) else "-"
            lines.append(f"{size} {name} {mean_count:.1f} {mean_ms:.2f} {marker}")
    return "\n".join(lines) + "\n"


def _cmd_bench(args) -> int:
    try:
        plan = BenchPlan(
            kind=args.kind,
            sizes=tuple(int(s) for s in args.sizes.split(",") if s),
            semantics=tuple(s for s in args.semantics.split(",") if s),
            reps=args.reps,
            timeout_ms=args.timeout,
            seed=args.seed,
            alpha=args.alpha,
            edges_per_step=args.edges_per_step,
            theta=args.theta,
            long_range_per_node=args.long_range,
            orient=args.orient,
            weights=args.weights,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    records = run_bench(plan)

    table = format_bench_table(plan, records)
    Path(args.out).write_text(table, encoding="utf-8")
    print(table, end="")

    raw_path = args.raw or (args.out + ".raw")
    raw_lines = [
        "# size rep seed semantics count ms complete",
    ] + [
        f"{r['size']} {r['rep']} {r['seed']} {r['semantics']} {r['count']} "
        f"{r['ms']:.2f} {'true' if r['complete'] else 'false'}"
        for r in records
    ]
    Path(raw_path).write_text("\n".join(raw_lines) + "\n", encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "decide":
            return _cmd_decide(args)
        return _cmd_bench(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DlParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
