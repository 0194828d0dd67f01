"""Command-line interface: validate, query, scenario, dsep, audit, serve.

Exit codes: 0 ok, 1 usage or I/O error, 2 invalid model, 3 impossible
evidence."""

from __future__ import annotations

import argparse
import json
import sys

from .dsep import active_paths, d_separated
from .errors import (
    CausalBnError,
    ImpossibleEvidenceError,
    InvalidNetworkError,
)
from .inference import marginals, posterior
from .network import Network
from .policing import (
    FIGURE_NAMES,
    bundled_model_text,
    collider_audit,
    run_figure_scenarios,
)
from .textfmt import parse, to_network_spec
from .network import compile_network

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_MODEL = 2
EXIT_IMPOSSIBLE_EVIDENCE = 3

JSON_DECIMALS = 9
TABLE_DECIMALS = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_model_text(path: str) -> str:
    if path == "paper":
        return bundled_model_text()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path: str) -> Network:
    text = _read_model_text(path)
    result = parse(text)
    if not result.ok:
        for d in result.diagnostics:
            print(str(d), file=sys.stderr)
        raise SystemExit(EXIT_INVALID_MODEL)
    try:
        return compile_network(to_network_spec(result.document))
    except InvalidNetworkError as exc:
        for issue in exc.issues:
            print(str(issue), file=sys.stderr)
        raise SystemExit(EXIT_INVALID_MODEL)


def _parse_evidence(pairs: list[str]) -> dict[str, str]:
    evidence: dict[str, str] = {}
    for pair in pairs:
        var, sep, state = pair.partition("=")
        if not sep or not var or not state:
            print(f"error: bad evidence {pair!r}; expected Var=State", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        if var in evidence and evidence[var] != state:
            print(
                f"error: evidence assigns {var!r} twice with different states",
                file=sys.stderr,
            )
            raise SystemExit(EXIT_USAGE)
        evidence[var] = state
    return evidence


def _round(p: float) -> float:
    return round(p, JSON_DECIMALS)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_validate(args) -> int:
    _load(args.model)
    print("ok")
    return EXIT_OK


def _posterior_table(posts) -> str:
    lines = []
    for post in posts:
        for state, p in post.distribution.items():
            lines.append(f"{post.variable:<16} {state:<10} {p:.{TABLE_DECIMALS}f}")
    return "\n".join(lines)


def cmd_query(args) -> int:
    network = _load(args.model)
    evidence = _parse_evidence(args.evidence)
    try:
        if args.target:
            posts = [posterior(network, t, evidence) for t in args.target]
        else:
            posts = marginals(network, evidence)
    except ImpossibleEvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE_EVIDENCE
    except CausalBnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    prob_evidence = posts[0].prob_evidence if posts else 1.0
    if args.json:
        _print_json(
            {
                "posteriors": {
                    p.variable: {s: _round(v) for s, v in p.distribution.items()}
                    for p in posts
                },
                "probEvidence": _round(prob_evidence),
            }
        )
    else:
        if evidence:
            print("evidence: " + ", ".join(f"{v}={s}" for v, s in evidence.items()))
        print(_posterior_table(posts))
        print(f"P(evidence) = {prob_evidence:.{TABLE_DECIMALS}f}")
    return EXIT_OK


def _report_to_obj(report) -> dict:
    return {
        "name": report.name,
        "runs": [
            {
                "label": run.label,
                "evidence": dict(run.evidence),
                "posteriors": {
                    p.variable: {s: _round(v) for s, v in p.distribution.items()}
                    for p in run.posteriors
                },
                "probEvidence": _round(run.prob_evidence),
            }
            for run in report.runs
        ],
    }


def cmd_scenario(args) -> int:
    network = _load(args.model)
    which = args.which
    if which != "all" and which not in FIGURE_NAMES:
        print(
            f"error: unknown scenario {which!r}; choose from "
            f"{', '.join(FIGURE_NAMES)} or all",
            file=sys.stderr,
        )
        return EXIT_USAGE
    reports = run_figure_scenarios(network)
    selected = reports if which == "all" else {which: reports[which]}
    if args.json:
        obj = {name: _report_to_obj(r) for name, r in selected.items()}
        _print_json(obj if which == "all" else obj[which])
    else:
        for name, report in selected.items():
            print(f"== {name} ==")
            for run in report.runs:
                ev = ", ".join(f"{v}={s}" for v, s in run.evidence.items()) or "(none)"
                print(f"-- {run.label}: evidence {ev}")
                print(_posterior_table(run.posteriors))
    return EXIT_OK


def _parse_given(values: list[str]) -> set[str]:
    out: set[str] = set()
    for v in values:
        out.update(x.strip() for x in v.split(",") if x.strip())
    return out


def cmd_dsep(args) -> int:
    network = _load(args.model)
    given = _parse_given(args.given)
    try:
        separated = d_separated(network, {args.x}, {args.y}, given)
        paths = active_paths(network, args.x, args.y, given)
    except CausalBnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    given_str = "{" + ", ".join(sorted(given)) + "}"
    if separated:
        print(f"{args.x} and {args.y} are d-separated given {given_str}")
    else:
        print(f"{args.x} and {args.y} are NOT d-separated given {given_str}")
        for p in paths:
            note = (
                f" (open colliders: {', '.join(sorted(p.unblocking_colliders))})"
                if p.unblocking_colliders
                else ""
            )
            print(f"  active path: {' - '.join(p.nodes)}{note}")
    return EXIT_OK


def cmd_audit(args) -> int:
    network = _load(args.model)
    given = _parse_given(args.given)
    try:
        findings = collider_audit(network, args.outcome, args.group, given)
    except CausalBnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not findings:
        print("no findings: the conditioning set opens no collider paths")
    else:
        for f in findings:
            print(f"finding: {f.note}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import run_server

    network = _load(args.model)
    return run_server(network, host=args.host, port=args.port)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="causalbn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("query", help="posterior of targets given evidence")
    p.add_argument("model")
    p.add_argument("--target", action="append", default=[])
    p.add_argument("--evidence", action="append", default=[], metavar="VAR=STATE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("scenario", help="run the built-in figure scenarios")
    p.add_argument("model", help="model path or 'paper' for the bundled model")
    p.add_argument("--which", default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("dsep", help="d-separation query")
    p.add_argument("model")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--given", action="append", default=[])
    p.set_defaults(func=cmd_dsep)

    p = sub.add_parser("audit", help="flag collider-opening conditioning")
    p.add_argument("model")
    p.add_argument("--outcome", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--given", action="append", default=[])
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("serve", help="run the local JSON/HTTP service")
    p.add_argument("--model", default="paper")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
