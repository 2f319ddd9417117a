"""Command-line interface for the tame SL2 toolkit."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Callable

from lib.codec import (
    decode_auto,
    decode_word,
    encode_auto,
    encode_word,
    field_ring,
    format_pretty,
    parse_pretty,
)
from tame_sl2.complex import grids, isometry, subcomplex
from tame_sl2.config import FIELDS, FORMATS, JobConfig, load_config_file, resolve_config, use_color
from tame_sl2.degrees import degree_report
from tame_sl2.errors import PayloadError, TameError
from tame_sl2.fixtures import NAMED, Fixture, named, random_word
from tame_sl2.grouplab.families import gen_hyperelliptic
from tame_sl2.grouplab.linearize import FiniteSubgroup, linearize
from tame_sl2.grouplab.resonance import resonant
from tame_sl2.polyring import RING_QI, ring_for
from tame_sl2.reduction import (
    Tame,
    auto_inverse,
    batch_reduce,
    is_tame,
    reduce,
    trace_payload,
    verdict_payload,
)
from tame_sl2.tame import TameAuto, TameWord, compose, evaluate_word

EVIDENCE_LABEL = "experimental evidence only"
REPORT_WORD_LENGTH = 3
REPORT_MAX_DEGREE = 2
_DIM, _UNDIM = "\033[2m", "\033[22m"


def _add_common_flags(parser: argparse.ArgumentParser, *, budget: bool = False) -> None:
    parser.add_argument(
        "--config",
        type=Path,
        help="Optional JSON file with job settings; explicit flags take precedence.",
    )
    parser.add_argument(
        "--field",
        choices=FIELDS,
        help="Coefficient field: rationals (q) or Gaussian rationals (qi).",
    )
    parser.add_argument(
        "--format",
        choices=FORMATS,
        help="Output format; dot is only available for explore and grid.",
    )
    parser.add_argument(
        "--out",
        dest="output",
        type=Path,
        help="Write the result to this path instead of standard output.",
    )
    parser.add_argument(
        "--no-progress",
        action="store_true",
        help="Disable progress bar output during long searches.",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Increase logging verbosity for troubleshooting.",
    )
    if budget:
        parser.add_argument(
            "--budget-depth",
            type=int,
            help="Maximum number of degree layers solved per reduction attempt (default 4).",
        )
        parser.add_argument(
            "--budget-support",
            type=int,
            help="Maximum monomial support of the polynomial solved for (default 64).",
        )
        parser.add_argument(
            "--max-steps",
            type=int,
            help="Maximum number of reduction steps before giving up (default 200).",
        )


def _add_input(parser: argparse.ArgumentParser, name: str = "input", help_text: str | None = None) -> None:
    parser.add_argument(
        name,
        help=help_text
        or "JSON file holding an automorphism or a word, or the name of a built-in example.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tame-sl2",
        description="Exact computations in the tame automorphism group of the quadric SL2.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    reduce_parser = subparsers.add_parser(
        "reduce",
        help="Reduce an automorphism by elementary maps and print the reduction trace.",
    )
    _add_input(reduce_parser)
    reduce_parser.add_argument(
        "--batch",
        action="store_true",
        help="Treat the input as a JSON list of automorphisms and reduce each of them.",
    )
    _add_common_flags(reduce_parser, budget=True)
    reduce_parser.set_defaults(handler=_handle_reduce)

    verify_parser = subparsers.add_parser(
        "verify",
        help="Decide tameness within the budget and print the verdict.",
    )
    _add_input(verify_parser)
    _add_common_flags(verify_parser, budget=True)
    verify_parser.set_defaults(handler=_handle_verify)

    compose_parser = subparsers.add_parser(
        "compose",
        help="Compose two automorphisms (first o second).",
    )
    _add_input(compose_parser, "first")
    _add_input(compose_parser, "second")
    _add_common_flags(compose_parser)
    compose_parser.set_defaults(handler=_handle_compose)

    invert_parser = subparsers.add_parser(
        "invert",
        help="Invert a tame automorphism through its reduction word.",
    )
    _add_input(invert_parser)
    _add_common_flags(invert_parser, budget=True)
    invert_parser.set_defaults(handler=_handle_invert)

    explore_parser = subparsers.add_parser(
        "explore",
        help="Build the ball of big squares around [id] and check links and square intersections.",
    )
    explore_parser.add_argument(
        "--generator",
        action="append",
        default=[],
        help="Word or automorphism whose action extends the ball; may be repeated.",
    )
    explore_parser.add_argument(
        "--depth",
        type=int,
        help="Number of breadth-first layers to explore (default 1).",
    )
    explore_parser.add_argument(
        "--sample-p",
        type=Path,
        help="JSON file with a list of two-variable polynomials used for elementary moves.",
    )
    explore_parser.add_argument(
        "--search-grids",
        action="store_true",
        help="Also look for 6x6 grids centered at type-1 vertices of the explored ball.",
    )
    _add_common_flags(explore_parser)
    explore_parser.set_defaults(handler=_handle_explore)

    classify_parser = subparsers.add_parser(
        "classify",
        help="Classify a word as elliptic or hyperbolic on the explored skeleton.",
    )
    _add_input(classify_parser)
    classify_parser.add_argument(
        "--horizon",
        type=int,
        help="Number of orbit steps compared when testing for linear growth (default 3).",
    )
    _add_common_flags(classify_parser, budget=True)
    classify_parser.set_defaults(handler=_handle_classify)

    grid_parser = subparsers.add_parser(
        "grid",
        help="Build the 4x4 grid for four univariate polynomials.",
    )
    for side, variable in (("n", "x2"), ("s", "x3"), ("e", "x4"), ("w", "x1")):
        grid_parser.add_argument(
            f"--{side}",
            required=True,
            help=f"Polynomial in {variable} for the {side.upper()} side, e.g. '{variable}^2'.",
        )
    _add_common_flags(grid_parser)
    grid_parser.set_defaults(handler=_handle_grid)

    linearize_parser = subparsers.add_parser(
        "linearize",
        help="Conjugate a finite group to a linear one and print the conjugator.",
    )
    _add_input(
        linearize_parser,
        help_text="JSON file holding a list of generators (automorphisms or words).",
    )
    _add_common_flags(linearize_parser)
    linearize_parser.set_defaults(handler=_handle_linearize)

    resonance_parser = subparsers.add_parser(
        "resonance",
        help="Test whether two nonzero scalars are resonant.",
    )
    resonance_parser.add_argument("a", help="First scalar, e.g. '2', '1/2' or '1+I'.")
    resonance_parser.add_argument("b", help="Second scalar.")
    resonance_parser.add_argument(
        "--witness",
        action="store_true",
        help="Also build the hyperelliptic map and its commuting hyperbolic word.",
    )
    _add_common_flags(resonance_parser)
    resonance_parser.set_defaults(handler=_handle_resonance)

    examples_parser = subparsers.add_parser(
        "examples",
        help="Print the built-in named automorphisms and words.",
    )
    examples_parser.add_argument(
        "--name",
        choices=sorted(NAMED),
        help="Only print the example with this name.",
    )
    _add_common_flags(examples_parser)
    examples_parser.set_defaults(handler=_handle_examples)

    degree_parser = subparsers.add_parser(
        "degree-report",
        help="Compare deg p with the degree of its normal form over random tame words.",
    )
    degree_parser.add_argument(
        "--samples",
        type=int,
        default=20,
        help="Number of random words to sample (default 20).",
    )
    degree_parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed for the random word generator (default 0).",
    )
    _add_common_flags(degree_parser)
    degree_parser.set_defaults(handler=_handle_degree_report)

    return parser


Handler = Callable[[argparse.Namespace], int]


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.config is not None:
        args.config = args.config.expanduser()
    if args.output is not None:
        args.output = args.output.expanduser()

    if args.command in ("reduce", "verify", "invert", "classify", "linearize"):
        args.input = _expand_input(args.input)
    elif args.command == "compose":
        args.first = _expand_input(args.first)
        args.second = _expand_input(args.second)
    elif args.command == "explore":
        args.generator = [_expand_input(item) for item in args.generator]
        if args.sample_p is not None:
            args.sample_p = args.sample_p.expanduser()
    elif args.command == "degree-report":
        if args.samples <= 0:
            parser.error("--samples must be positive")
    elif args.command in ("grid", "resonance", "examples"):
        pass
    else:  # pragma: no cover
        parser.error("Unsupported command")

    return args


def _expand_input(value: str) -> str:
    return value if value in NAMED else str(Path(value).expanduser())


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handler: Handler = args.handler
    try:
        return handler(args)
    except TameError as exc:
        _report_error("TameError", str(exc), exc.witness)
        return 2
    except PayloadError as exc:
        _report_error("PayloadError", str(exc), None)
        return 1
    except FileNotFoundError as exc:
        _report_error("FileNotFoundError", str(exc), None)
        return 1
    except json.JSONDecodeError as exc:
        _report_error("JSONDecodeError", str(exc), None)
        return 1


def _report_error(kind: str, message: str, witness: Any) -> None:
    payload = {"error": {"kind": kind, "message": message, "witness": witness}}
    print(json.dumps(payload, sort_keys=True, default=str), file=sys.stderr)


def _config(args: argparse.Namespace, **extra: Any) -> JobConfig:
    file_values = load_config_file(args.config) if args.config is not None else None
    flags = {
        "input": getattr(args, "input", None),
        "field": args.field,
        "format": args.format,
        "output": str(args.output) if args.output is not None else None,
        "budget_depth": getattr(args, "budget_depth", None),
        "budget_support": getattr(args, "budget_support", None),
        "max_steps": getattr(args, "max_steps", None),
        "depth": getattr(args, "depth", None),
        "horizon": getattr(args, "horizon", None),
        **extra,
    }
    return resolve_config(args.command, file_values, flags)


def _read_json(path_text: str) -> Any:
    path = Path(path_text)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def _decode_item(payload: Any, config: JobConfig) -> Fixture:
    ring_ = RING_QI if config.field == "qi" else field_ring(payload)
    if isinstance(payload, dict) and "word" in payload:
        return decode_word(payload, ring_)
    if isinstance(payload, dict) and "components" in payload:
        return decode_auto(payload, ring_)
    raise PayloadError("expected an object with a \"components\" or a \"word\" list")


def _load(source: str, config: JobConfig) -> Fixture:
    if source in NAMED:
        return named(source)
    return _decode_item(_read_json(source), config)


def _as_auto(item: Fixture) -> TameAuto:
    return evaluate_word(item) if isinstance(item, TameWord) else item


def _load_auto(source: str, config: JobConfig) -> TameAuto:
    return _as_auto(_load(source, config))


def _encode(item: Fixture) -> dict:
    return encode_word(item) if isinstance(item, TameWord) else encode_auto(item)


def _pretty_auto(f: TameAuto, color: bool) -> str:
    lines = []
    for index, component in enumerate(f, start=1):
        label = f"f{index}"
        if color:
            label = f"{_DIM}{label}{_UNDIM}"
        lines.append(f"  {label}  {format_pretty(component)}")
    return "\n".join(lines)


def _emit(
    config: JobConfig,
    payload: Any,
    *,
    pretty: Callable[[bool], str] | None = None,
    dot: Callable[[], str] | None = None,
) -> None:
    if config.format == "dot":
        if dot is None:
            raise PayloadError(f"--format dot is not available for {config.command}")
        text = dot()
    elif config.format == "pretty" and pretty is not None:
        color = config.output is None and use_color(sys.stdout)
        text = pretty(color) + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"

    if config.output is None:
        sys.stdout.write(text)
    else:
        Path(config.output).write_text(text, encoding="utf-8")
        print(f"Result written to {config.output}")


def _handle_reduce(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.batch:
        if args.input in NAMED:
            raise PayloadError("--batch expects a JSON list of automorphisms")
        payload = _read_json(args.input)
        if not isinstance(payload, list):
            raise PayloadError("--batch expects a JSON list of automorphisms")
        autos = [_as_auto(_decode_item(item, config)) for item in payload]
        traces = batch_reduce(autos, config.budget(), show_progress=not args.no_progress)
        _emit(config, [trace_payload(trace) for trace in traces])
        return 0

    trace = reduce(_load_auto(args.input, config), config.budget())
    _emit(config, trace_payload(trace))
    return 0


def _handle_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    verdict = is_tame(_load_auto(args.input, config), config.budget())

    def pretty(color: bool) -> str:
        name = verdict_payload(verdict)["verdict"]
        if isinstance(verdict, Tame):
            return f"{name}: word of length {len(verdict.word)}"
        return name

    _emit(config, verdict_payload(verdict), pretty=pretty)
    return 0


def _handle_compose(args: argparse.Namespace) -> int:
    config = _config(args, input=args.first)
    result = compose(_load_auto(args.first, config), _load_auto(args.second, config))
    _emit(config, encode_auto(result), pretty=lambda color: _pretty_auto(result, color))
    return 0


def _handle_invert(args: argparse.Namespace) -> int:
    config = _config(args)
    result = auto_inverse(_load_auto(args.input, config), config.budget())
    _emit(config, encode_auto(result), pretty=lambda color: _pretty_auto(result, color))
    return 0


def _handle_explore(args: argparse.Namespace) -> int:
    sample_p = None
    if args.sample_p is not None:
        sample_p = _read_json(str(args.sample_p))
    config = _config(args, sample_p=sample_p)
    generators = []
    for source in args.generator:
        item = _load(source, config)
        if isinstance(item, TameAuto):
            raise PayloadError(f"explore generators must be words, got an automorphism: {source}")
        generators.append(item)

    S = subcomplex.explore(
        generators,
        config.depth,
        config.sample_polys(),
        show_progress=not args.no_progress,
    )
    payload = subcomplex.to_json(S)
    links = [subcomplex.link_girth_ok(v, S) for v in S.sorted_vertices()]
    intersections = subcomplex.square_intersection_ok(S)
    payload["checks"] = {
        "links_ok": all(report.ok for report in links),
        "bad_links": [report.vertex.label() for report in links if not report.ok],
        "squares_intersect_ok": intersections.ok,
        "intersection_violations": len(intersections.violations),
    }
    if args.search_grids:
        search = grids.search_6x6(S, show_progress=not args.no_progress)
        payload["checks"]["grid_centers_checked"] = search.centers_checked
        payload["checks"]["grids_6x6_found"] = len(search.found)

    def pretty(color: bool) -> str:
        counts = {kind: len(S.of_kind(kind)) for kind in (1, 2, 3)}
        header = f"  {'Type'.ljust(6)}  {'Vertices':>8}"
        lines = [
            f"Explored ball of depth {config.depth}: {len(S.squares)} squares.",
            header,
            "  " + "-" * (len(header) - 2),
        ]
        lines.extend(f"  {str(kind).ljust(6)}  {counts[kind]:8d}" for kind in (1, 2, 3))
        checks = payload["checks"]
        lines.append(f"Links ok: {checks['links_ok']}; square intersections ok: {checks['squares_intersect_ok']}.")
        return "\n".join(lines)

    _emit(config, payload, pretty=pretty, dot=lambda: subcomplex.to_dot(S))
    return 0


def _isometry_payload(verdict: isometry.IsometryVerdict) -> dict:
    if isinstance(verdict, isometry.EllipticWitness):
        return {"verdict": "elliptic", "vertex": verdict.vertex.label()}
    if isinstance(verdict, isometry.HyperbolicWitness):
        return {
            "verdict": "hyperbolic",
            "base": verdict.base.label(),
            "length": verdict.length,
            "axis": [v.label() for v in verdict.axis],
            "certificate": verdict.certificate,
        }
    return {"verdict": "undetermined", "reason": verdict.reason}


def _handle_classify(args: argparse.Namespace) -> int:
    config = _config(args)
    item = _load(args.input, config)
    if isinstance(item, TameAuto):
        verdict = is_tame(item, config.budget())
        if not isinstance(verdict, Tame):
            raise TameError("no tame word found within budget; cannot classify")
        item = verdict.word
    result = isometry.classify_isometry(item, config.horizon)
    payload = _isometry_payload(result)
    _emit(config, payload, pretty=lambda color: " ".join(f"{k}={v}" for k, v in sorted(payload.items())))
    return 0


def _handle_grid(args: argparse.Namespace) -> int:
    config = _config(args)
    ring_ = ring_for(config.field)  # type: ignore[arg-type]
    result = grids.grid_4x4(
        parse_pretty(args.n, ring_),
        parse_pretty(args.s, ring_),
        parse_pretty(args.e, ring_),
        parse_pretty(args.w, ring_),
    )
    payload = {
        "degenerate": result.degenerate,
        "corners": {name: encode_auto(f) for name, f in sorted(result.corners.items())},
        "positions": [
            {"x": x, "y": y, "label": v.label()} for (x, y), v in sorted(result.positions.items())
        ],
        "complex": subcomplex.to_json(result.complex),
    }
    _emit(config, payload, dot=lambda: subcomplex.to_dot(result.complex))
    return 0


def _handle_linearize(args: argparse.Namespace) -> int:
    config = _config(args)
    payload = _read_json(args.input)
    if not isinstance(payload, list) or not payload:
        raise PayloadError("linearize expects a non-empty JSON list of generators")
    generators = [_decode_item(item, config) for item in payload]
    gamma = FiniteSubgroup.generated_by(generators)
    report = linearize(gamma)
    _emit(
        config,
        {
            "case": report.case,
            "order": len(gamma),
            "conjugator": encode_auto(report.conjugator),
            "images": [encode_auto(image) for image in report.images],
        },
        pretty=lambda color: f"{report.case} (order {len(gamma)})\n"
        + _pretty_auto(report.conjugator, color),
    )
    return 0


def _scalar(text: str, config: JobConfig):
    ring_ = ring_for(config.field)  # type: ignore[arg-type]
    p = parse_pretty(text, ring_)
    if any(any(monom) for monom in p.itermonoms()):
        raise PayloadError(f"expected a scalar, got {text!r}")
    value = p.get((0, 0, 0, 0), ring_.domain.zero)
    if not value:
        raise PayloadError(f"scalar must be nonzero, got {text!r}")
    return value


def _handle_resonance(args: argparse.Namespace) -> int:
    config = _config(args)
    a, b = _scalar(args.a, config), _scalar(args.b, config)
    witness = resonant(a, b, ring_for(config.field))  # type: ignore[arg-type]
    payload: dict = {"resonant": witness is not None}
    if witness is not None:
        payload.update({"p": witness.p, "q": witness.q})
        if args.witness:
            report = gen_hyperelliptic(a, b, "resonant", ring_=ring_for(config.field))  # type: ignore[arg-type]
            payload["hyperelliptic"] = encode_auto(report.f)
            payload["commuting_word"] = encode_word(report.witness)["word"]
    _emit(config, payload, pretty=lambda color: " ".join(f"{k}={v}" for k, v in sorted(payload.items()) if k in ("resonant", "p", "q")))
    return 0


def _handle_examples(args: argparse.Namespace) -> int:
    config = _config(args)
    names = [args.name] if args.name else sorted(NAMED)
    payload = {name: _encode(named(name)) for name in names}

    def pretty(color: bool) -> str:
        blocks = []
        for name in names:
            blocks.append(name)
            blocks.append(_pretty_auto(_as_auto(named(name)), color))
        return "\n".join(blocks)

    _emit(config, payload, pretty=pretty)
    return 0


def _handle_degree_report(args: argparse.Namespace) -> int:
    config = _config(args)
    rng = random.Random(args.seed)
    autos = [
        evaluate_word(random_word(rng, length=REPORT_WORD_LENGTH, max_degree=REPORT_MAX_DEGREE))
        for _ in range(args.samples)
    ]
    report = degree_report(autos, show_progress=not args.no_progress)
    payload = {
        "label": EVIDENCE_LABEL,
        "samples": args.samples,
        "seed": args.seed,
        "components": len(report.rows),
        "mismatches": [
            {
                "sample": row.index,
                "component": row.component,
                "degree": row.degree.to_json(),
                "quotient_degree": row.quotient_degree.to_json(),
            }
            for row in report.mismatches
        ],
    }
    _emit(
        config,
        payload,
        pretty=lambda color: f"{len(report.rows)} components compared, "
        f"{len(report.mismatches)} mismatches ({EVIDENCE_LABEL}).",
    )
    return 0


if __name__ == "__main__":  # pragma: no cover - manual execution entry point
    raise SystemExit(main())
