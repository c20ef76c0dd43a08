# ui.py
"""
Terminal output for PicardCalc using the Rich library.
Everything here writes to stderr; stdout is reserved for the envelope.
"""

import logging

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

import config
from errors import PicardError
from report import OutputEnvelope

console = Console(stderr=True)
out = Console(soft_wrap=True, highlight=False)

VERDICT_STYLE = {"nonzero": "bold cyan1", "inconclusive": "yellow1", "zero": "dim"}


def setup_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=verbose)],
        force=True,
    )


def print_error(err: PicardError):
    details = "\n".join(f"[dim]{k}:[/dim] {v}" for k, v in err.details.items())
    body = f"[red]{err.message}[/red]" + (f"\n{details}" if details else "")
    console.print(Panel(body, title=f"Error ({err.code})", border_style="red"))


def render_table(envelope: OutputEnvelope):
    """Prints the envelope as a Rich table on stdout."""
    ctx = ", ".join(f"{k}={v}" for k, v in envelope.context.items())
    title = Text(f"{config.APP_NAME} {envelope.command}" + (f"  ({ctx})" if ctx else ""),
                 style="bold magenta")
    table = Table(title=title, box=box.SIMPLE_HEAVY, header_style="bold cyan")
    for column in envelope.columns:
        table.add_column(column, overflow="fold")
    for record in envelope.payload:
        cells = []
        for column in envelope.columns:
            value = record.get(column, "")
            style = VERDICT_STYLE.get(value) if column == "verdict" else None
            cells.append(Text(value, style=style) if style else value)
        table.add_row(*cells)
    out.print(table)
    if not envelope.payload:
        console.print("[yellow]No records.[/yellow]")


def draw_verdict_strip(envelope: OutputEnvelope, width: int = 72):
    """
    One character per degree, wrapped at `width`:
    █ nonzero, ▒ inconclusive, · zero.
    """
    marks = {"nonzero": "[cyan1]█[/cyan1]", "inconclusive": "[yellow1]▒[/yellow1]",
             "zero": "[dim]·[/dim]"}
    rows = list(envelope.payload)
    if not rows:
        console.print("[yellow]No data to plot.[/yellow]")
        return

    console.print()
    for start in range(0, len(rows), width):
        chunk = rows[start:start + width]
        line = "".join(marks[r["verdict"]] for r in chunk)
        console.print(f"{chunk[0]['t'].rjust(8)} │ {line}")
    nonzero = sum(r["verdict"] == "nonzero" for r in rows)
    console.print(f"[dim]{nonzero} nonzero of {len(rows)} degrees[/dim]\n")
