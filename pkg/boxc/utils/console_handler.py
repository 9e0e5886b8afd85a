from collections.abc import Iterable

from rich.console import Console
from rich.table import Table
from rich.tree import Tree

from boxc.core.diagnostic import Diagnostic, Severity
from boxc.core.document import EdgeKind
from boxc.core.taxonomy import ConceptRef, Taxonomy
from boxc.patterns.matcher import Match
from boxc.patterns.templates import PatternTemplate
from boxc.sim.protocol import ConformanceReport
from boxc.sim.simulation import Simulation

console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)

SEVERITY_COLOURS = {Severity.ERROR: "red", Severity.WARNING: "yellow"}


def use_colour(enabled: bool) -> None:
    global console, err_console
    console = Console(highlight=False, no_color=not enabled)
    err_console = Console(stderr=True, highlight=False, no_color=not enabled)


def print_message(msg: str, colour: str = "default") -> None:
    if colour == "default":
        console.print(msg)
    else:
        console.print(f"[{colour}]{msg}[/{colour}]")


def print_error(msg: str) -> None:
    err_console.print(f"[red]error:[/red] {msg}", markup=True)


def write_raw(text: str) -> None:
    """Machine-readable output: no markup, highlighting or wrapping."""
    console.out(text, end="", highlight=False)


def print_diagnostics(file: str, diagnostics: Iterable[Diagnostic]) -> None:
    for diagnostic in diagnostics:
        assert diagnostic.severity is not None
        colour = SEVERITY_COLOURS[diagnostic.severity]
        console.out(diagnostic.to_text(file), style=colour, highlight=False)


def create_patterns_table(patterns: Iterable[PatternTemplate]) -> Table:
    table = Table(title="Built-in patterns")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Slots", justify="right", style="magenta")
    table.add_column("Flows", justify="right")
    table.add_column("Messages", justify="right")
    table.add_column("Description", style="green")
    for pattern in patterns:
        table.add_row(
            pattern.name,
            str(len(pattern.slots)),
            str(pattern.count(EdgeKind.FLOW)),
            str(pattern.count(EdgeKind.MESSAGE)),
            pattern.doc,
        )
    return table


def create_matches_table(file: str, matches: Iterable[Match]) -> Table:
    table = Table(title=f"Pattern matches in {file}")
    table.add_column("Pattern", style="cyan", no_wrap=True)
    table.add_column("Binding", style="green")
    for match in matches:
        binding = ", ".join(f"{slot}={node}" for slot, node in match.binding.items())
        table.add_row(match.pattern, binding)
    return table


def create_simulations_table(simulations: Iterable[Simulation]) -> Table:
    table = Table(title="Simulations")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Description", style="green")
    for simulation in simulations:
        table.add_row(simulation.name, simulation.description)
    return table


def create_conformance_table(report: ConformanceReport) -> Table:
    if report.conformant:
        verdict = "[green]conformant[/green]"
    else:
        verdict = "[red]violations[/red]"
    table = Table(title=f"Protocol conformance: {verdict}")
    table.add_column("Conversation", style="cyan", no_wrap=True)
    table.add_column("Protocol", style="magenta")
    table.add_column("State")
    table.add_column("Complete", justify="center")
    for conversation in report.conversations:
        table.add_row(
            conversation.conversation,
            conversation.protocol,
            conversation.state,
            "✓" if conversation.complete else "[red]✗[/red]",
        )
    return table


def create_taxonomy_tree(tax: Taxonomy) -> Tree:
    tree = Tree("[bold]taxonomy[/bold]")

    def grow(branch: Tree, concept: ConceptRef) -> None:
        node = branch.add(f"{concept.name} [dim]({tax.label_of(concept)})[/dim]")
        for child in tax.children(concept):
            grow(node, child)

    for root in tax.roots:
        grow(tree, root)
    return tree
