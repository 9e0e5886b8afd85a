"""Main CLI entry point for boxc."""

import argparse
import json
import logging
import os
from enum import IntEnum
from pathlib import Path

from rich.logging import RichHandler

from boxc.core.canonical import from_json, to_canonical_json
from boxc.core.document import Document
from boxc.core.errors import BoxcError
from boxc.core.taxonomy import Taxonomy, builtin_taxonomy
from boxc.parsers import format_document, parse_file
from boxc.patterns import builtin_patterns, detect, get_pattern, instantiate
from boxc.render import RenderOptions, to_dot
from boxc.sim import SimulationRegistry, bind_trace
from boxc.utils import console_handler as ui
from boxc.utils.storage import TraceStorage
from boxc.validation import validate

logger = logging.getLogger(__name__)


class ExitStatus(IntEnum):
    OK = 0
    FINDINGS = 1
    FAILURE = 2


def setup_logging(verbose: bool = False) -> None:
    """Setup logging with rich handler on stderr; stdout carries results only."""
    level = logging.DEBUG if verbose else logging.WARNING

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=ui.err_console,
                show_time=verbose,
                show_path=False,
                markup=False,
            )
        ],
        force=True,
    )


def load_document(path: Path, tax: Taxonomy) -> Document | None:
    """Parse a .bxl file (or read canonical JSON); print diagnostics on failure."""
    if path.suffix == ".json":
        return from_json(path.read_text(encoding="utf-8"), tax)
    result = parse_file(path, tax)
    if not result.ok:
        ui.print_diagnostics(str(path), result.diagnostics)
        return None
    return result.document


def emit(text: str, output: str | None) -> None:
    if output is None:
        ui.write_raw(text)
    else:
        TraceStorage.save_text(text, output)


def cmd_check(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    path = Path(args.file)
    if path.suffix == ".json":
        doc = from_json(path.read_text(encoding="utf-8"), tax)
        diagnostics = validate(doc, tax)
    else:
        result = parse_file(path, tax)
        diagnostics = list(result.diagnostics)
        if result.document is not None:
            diagnostics += validate(result.document, tax)
    if args.strict:
        diagnostics = [d.promoted() for d in diagnostics]

    if args.format == "json":
        payload = [d.to_dict(args.file) for d in diagnostics]
        ui.write_raw(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        ui.print_diagnostics(args.file, diagnostics)
    errors = sum(1 for d in diagnostics if d.is_error)
    logger.info(f"{args.file}: {len(diagnostics)} diagnostic(s), {errors} error(s)")
    return ExitStatus.FINDINGS if errors else ExitStatus.OK


def cmd_fmt(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    path = Path(args.file)
    doc = load_document(path, tax)
    if doc is None:
        return ExitStatus.FINDINGS
    as_json = args.json
    if args.write:
        # The rewritten file keeps the format it was read in.
        as_json = path.suffix == ".json"
        if args.json and not as_json:
            logger.warning(f"--json ignored: {path} is rewritten as .bxl")
    text = to_canonical_json(doc) if as_json else format_document(doc)
    if args.write:
        if path.read_text(encoding="utf-8") != text:
            TraceStorage.save_text(text, path)
        else:
            logger.info(f"{path} is already formatted")
    else:
        ui.write_raw(text)
    return ExitStatus.OK


def cmd_render(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    doc = load_document(Path(args.file), tax)
    if doc is None:
        return ExitStatus.FINDINGS
    opts = RenderOptions(
        show_pattern_frames=not args.no_pattern_frames,
        show_zoom_frames=not args.no_zoom_frames,
        rankdir=args.rankdir,
    )
    emit(to_dot(doc, opts), args.output)
    return ExitStatus.OK


def cmd_detect(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    doc = load_document(Path(args.file), tax)
    if doc is None:
        return ExitStatus.FINDINGS
    patterns = [get_pattern(args.pattern)] if args.pattern else builtin_patterns()
    matches = [m for pattern in patterns for m in detect(doc, pattern, tax)]

    if args.format == "json":
        payload = [m.to_dict() for m in matches]
        ui.write_raw(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif matches:
        ui.console.print(ui.create_matches_table(args.file, matches))
    else:
        ui.print_message("No pattern matches.", colour="yellow")
    return ExitStatus.OK


def cmd_expand(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    doc = instantiate(get_pattern(args.pattern), args.prefix, tax)
    emit(format_document(doc), args.output)
    return ExitStatus.OK


def cmd_sim(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    simulation = SimulationRegistry.create(args.name)
    data = TraceStorage.load_config(args.config)
    config = simulation.config_from_dict(data).with_seed(args.seed)
    result = simulation.execute(config)
    trace = result.trace

    if args.bind:
        doc = load_document(Path(args.bind), tax)
        if doc is None:
            return ExitStatus.FAILURE
        trace, unbound = bind_trace(trace, simulation.binding(config), doc)
        if unbound:
            ui.print_message(f"{unbound} event(s) left unbound", colour="yellow")

    TraceStorage.save_trace(trace, args.trace)
    ui.print_message(
        f"[bold]{simulation.name}[/bold]: {len(trace)} event(s) written to "
        f"[cyan]{args.trace}[/cyan]"
    )
    ui.print_message(json.dumps(result.outcome, sort_keys=True), colour="green")

    if args.check:
        report = simulation.check(trace)
        ui.console.print(ui.create_conformance_table(report))
        for violation in report.violations:
            ui.print_message(
                f"event {violation.event_index} ({violation.conversation}): "
                f"{violation.reason}",
                colour="red",
            )
        if not report.conformant:
            return ExitStatus.FINDINGS
    return ExitStatus.OK


def cmd_patterns(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    ui.console.print(ui.create_patterns_table(builtin_patterns()))
    return ExitStatus.OK


def cmd_sims(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    simulations = [cls() for _, cls in sorted(SimulationRegistry.all().items())]
    ui.console.print(ui.create_simulations_table(simulations))
    return ExitStatus.OK


def cmd_taxonomy(args: argparse.Namespace, tax: Taxonomy) -> ExitStatus:
    ui.console.print(ui.create_taxonomy_tree(tax))
    return ExitStatus.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxc",
        description="boxc: compiler and simulator for hybrid AI design diagrams",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Validate a diagram
  boxc check corpus/ml_pipeline.bxl

  # Render it with Graphviz
  boxc render corpus/ml_pipeline.bxl -o pipeline.dot

  # Run a seeded ContractNet round and check the protocol
  boxc sim contract-net --config configs/contract_net.json --seed 7 \\
      --trace trace.jsonl --check
        """,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose output",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    check = commands.add_parser("check", help="Parse and validate a diagram")
    check.add_argument("file", help="Diagram (.bxl or canonical .json)")
    check.add_argument("--format", choices=["text", "json"], default="text")
    check.add_argument(
        "--strict", action="store_true", help="Treat warnings as errors"
    )
    check.set_defaults(handler=cmd_check)

    fmt = commands.add_parser("fmt", help="Print a diagram in canonical form")
    fmt.add_argument("file", help="Diagram (.bxl or canonical .json)")
    fmt.add_argument("--write", action="store_true", help="Rewrite the file in place")
    fmt.add_argument(
        "--json", action="store_true", help="Emit canonical JSON instead of .bxl"
    )
    fmt.set_defaults(handler=cmd_fmt)

    render = commands.add_parser("render", help="Render a diagram as Graphviz DOT")
    render.add_argument("file", help="Diagram (.bxl or canonical .json)")
    render.add_argument("-o", "--output", help="Output file (default: stdout)")
    render.add_argument("--no-pattern-frames", action="store_true")
    render.add_argument("--no-zoom-frames", action="store_true")
    render.add_argument("--rankdir", choices=["LR", "TB"], default="LR")
    render.set_defaults(handler=cmd_render)

    detect_cmd = commands.add_parser("detect", help="Find design pattern occurrences")
    detect_cmd.add_argument("file", help="Diagram (.bxl or canonical .json)")
    detect_cmd.add_argument("--pattern", help="Only look for this pattern")
    detect_cmd.add_argument("--format", choices=["text", "json"], default="text")
    detect_cmd.set_defaults(handler=cmd_detect)

    expand = commands.add_parser("expand", help="Instantiate a pattern as a diagram")
    expand.add_argument("--pattern", required=True, help="Built-in pattern name")
    expand.add_argument("--prefix", required=True, help="Node id prefix")
    expand.add_argument("-o", "--output", help="Output file (default: stdout)")
    expand.set_defaults(handler=cmd_expand)

    sim = commands.add_parser("sim", help="Run a seeded simulation")
    sim.add_argument("name", help="Simulation name (see `boxc sims`)")
    sim.add_argument("--config", required=True, help="JSON config file")
    sim.add_argument("--seed", required=True, type=int, help="Random seed")
    sim.add_argument("--trace", required=True, help="JSON Lines trace output file")
    sim.add_argument(
        "--check", action="store_true", help="Check the trace against its protocol"
    )
    sim.add_argument("--bind", metavar="DIAGRAM", help="Attach diagram node ids")
    sim.set_defaults(handler=cmd_sim)

    for name, handler, text in (
        ("patterns", cmd_patterns, "List the built-in patterns"),
        ("sims", cmd_sims, "List the available simulations"),
        ("taxonomy", cmd_taxonomy, "Print the concept taxonomy"),
    ):
        commands.add_parser(name, help=text).set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point; returns the exit status."""
    ui.use_colour(not os.environ.get("BOXC_NO_COLOR"))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ExitStatus.FAILURE

    setup_logging(args.verbose)

    try:
        return args.handler(args, builtin_taxonomy())
    except BoxcError as e:
        ui.print_error(str(e))
        return ExitStatus.FAILURE
    except OSError as e:
        ui.print_error(f"{e.filename or ''}: {e.strerror or e}")
        return ExitStatus.FAILURE
    except UnicodeDecodeError as e:
        ui.print_error(f"{getattr(args, 'file', '')}: not valid UTF-8 ({e.reason})")
        return ExitStatus.FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
