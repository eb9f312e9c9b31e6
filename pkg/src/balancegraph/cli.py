"""Command-line front end.

Exit codes: 0 labelable / yes, 2 not labelable / no, 3 unknown, 1 input error.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .bridge import ImageConfig, NotInSpanError, StructureError, decide_in_image
from .defects import detect_all
from .engine import EngineConfig, Status, decide
from .formats import FormatError
from .graph import verify_labeling
from .groups import decide_commutator
from .oracle import DEFAULT_BUDGET, BudgetExceededError, count_graphs, oracle_image, oracle_label
from .sweep import run_sweep

EXIT_OK, EXIT_INPUT, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2, 3

_GRAPH_EXIT = {
    Status.LABELABLE: EXIT_OK,
    Status.NOT_LABELABLE: EXIT_NO,
    Status.NOT_LABELABLE_ORACLE: EXIT_NO,
    Status.UNKNOWN: EXIT_UNKNOWN,
}
_IMAGE_EXIT = {"yes": EXIT_OK, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}


def _emit(obj) -> None:
    sys.stdout.write(formats.dumps(obj) + "\n")


def cmd_check_graph(args) -> int:
    g = formats.graph_from_json(formats.load_json(args.input))
    cfg = EngineConfig(budget=args.budget, max_m=args.max_m, seed=args.seed, use_oracle=not args.no_oracle)
    dec = decide(g, cfg)
    _emit(formats.decision_to_json(dec))
    return _GRAPH_EXIT[dec.status]


def cmd_detect(args) -> int:
    g = formats.graph_from_json(formats.load_json(args.input))
    certs = detect_all(g, args.max_m)
    _emit({"certificates": [formats.certificate_to_json(c) for c in certs]})
    return EXIT_OK


def cmd_verify_labeling(args) -> int:
    g = formats.graph_from_json(formats.load_json(args.input))
    labels = formats.labeling_from_json(formats.load_json(args.labels), g.field)
    bad = verify_labeling(g, labels)
    _emit({
        "consistent": not bad,
        "violations": [{"u": v.u, "v": v.v, "lhs": str(v.lhs), "weight": str(v.weight)} for v in bad],
    })
    return EXIT_OK if not bad else EXIT_NO


def _image_config(args) -> ImageConfig:
    return ImageConfig(budget=args.budget, range=args.range, max_presentations=args.max_presentations)


def cmd_check_lie(args) -> int:
    S = formats.structure_from_json(formats.load_json(args.structure))
    x = formats.element_from_json(formats.load_json(args.element), S.field)
    dec = decide_in_image(S, x, _image_config(args))
    _emit(formats.image_decision_to_json(dec))
    return _IMAGE_EXIT[dec.status]


def cmd_check_group(args) -> int:
    P = formats.group_from_json(formats.load_json(args.group))
    target = formats.target_from_json(formats.load_json(args.target))
    dec = decide_commutator(P, target, _image_config(args))
    _emit(formats.commutator_decision_to_json(dec))
    return _IMAGE_EXIT[dec.status]


def cmd_oracle_graph(args) -> int:
    g = formats.graph_from_json(formats.load_json(args.input))
    labels = oracle_label(g, args.budget)
    _emit({
        "labelable": labels is not None,
        "labeling": None if labels is None else formats.labeling_to_json(labels),
    })
    return EXIT_OK if labels is not None else EXIT_NO


def cmd_oracle_image(args) -> int:
    S = formats.structure_from_json(formats.load_json(args.structure))
    x = formats.element_from_json(formats.load_json(args.element), S.field)
    found = oracle_image(S, x, args.budget)
    _emit({
        "in_image": found is not None,
        "witness": None if found is None else {"a": [str(t) for t in found[0]], "b": [str(t) for t in found[1]]},
    })
    return EXIT_OK if found is not None else EXIT_NO


def cmd_verify_sweep(args) -> int:
    if args.mode == "exhaustive":
        cost = count_graphs(args.n, args.p) * args.p ** (2 * args.n)
        if cost > args.budget:
            raise BudgetExceededError(
                f"exhaustive sweep needs about {cost} oracle steps, budget is {args.budget}; use --mode sample"
            )
    seed = args.seed if args.seed is not None else 0
    report = run_sweep(args.n, args.p, args.mode, args.samples, args.workers, seed, args.budget)
    _emit(report)
    return EXIT_OK if report["disagree"] == 0 else EXIT_NO


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "not labelable"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="balancegraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, helptext, aliases=()):
        p = sub.add_parser(name, help=helptext, aliases=list(aliases))
        p.add_argument("--input", required=True, help="graph JSON file")
        p.set_defaults(func=fn)
        return p

    p = graph_cmd("check-graph", cmd_check_graph, "decide whether a graph has a consistent labeling", ["label-graph"])
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="randomize free table parameters")
    p.add_argument("--no-oracle", action="store_true", help="never fall back to brute force")

    p = graph_cmd("detect-defects", cmd_detect, "list defect certificates")
    p.add_argument("--max-m", type=int, default=None)

    p = graph_cmd("verify-labeling", cmd_verify_labeling, "check a labeling against a graph")
    p.add_argument("--labels", required=True, help="labeling JSON file")

    p = graph_cmd("oracle-graph", cmd_oracle_graph, "brute-force labeling search over F_p")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    def image_opts(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--range", type=int, default=2, help="integer coefficient range for rational presentations")
        p.add_argument("--max-presentations", type=int, default=10_000)

    p = sub.add_parser("check-lie", help="is an element a single bracket?")
    p.add_argument("--structure", required=True)
    p.add_argument("--element", required=True)
    image_opts(p)
    p.set_defaults(func=cmd_check_lie)

    p = sub.add_parser("check-group", help="is a central element a single commutator?")
    p.add_argument("--group", required=True)
    p.add_argument("--target", required=True)
    image_opts(p)
    p.set_defaults(func=cmd_check_group)

    p = sub.add_parser("oracle-image", help="brute-force image search over F_p")
    p.add_argument("--structure", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_oracle_image)

    p = sub.add_parser("verify-sweep", help="compare the engine with the oracle over many graphs")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotInSpanError as exc:
        print(f"error: {exc} (the question is ill-posed, not a negative answer)", file=sys.stderr)
    except (FormatError, StructureError, BudgetExceededError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
