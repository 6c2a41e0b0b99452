"""Console reports rendered with rich."""

from typing import Any, List, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from src.sweeps import SweepRow

from .writer import format_value


class FeasibilityReporter:
    """Prints analysis results as rich tables."""

    def __init__(self, console: Console = None):
        """
        Initialize the reporter.

        Args:
            console: Console to print to (a new stdout console if None)
        """
        self.console = console or Console()

    def format_ratio(self, ratio: float) -> str:
        """Colour a Λ/Λ_min ratio: green when detectable."""
        text = format_value(ratio)
        if ratio != ratio:  # NaN
            return f"[dim]{text}[/dim]"
        if ratio >= 1.0:
            return f"[green]{text}[/green]"
        return f"[red]{text}[/red]"

    def print_metadata(self, metadata: Sequence[Tuple[str, str]]):
        """Print the metadata header dimmed."""
        for key, value in metadata:
            self.console.print(f"[dim]# {key}: {value}[/dim]", highlight=False)

    def print_quantities(self, title: str, rows: List[Tuple[str, Any]]):
        """
        Print a two-column quantity/value table.

        Args:
            title: Table title
            rows: (quantity, value) pairs; values use the CSV formatting
        """
        table = Table(title=title, show_header=True)
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", justify="right", style="bold")
        for name, value in rows:
            if name.startswith('ratio_'):
                table.add_row(name, self.format_ratio(value))
            else:
                table.add_row(name, format_value(value))
        self.console.print(table)

    def print_sweep_summary(self, rows: List[SweepRow], with_t_d: bool):
        """Print per-density extremes of a sweep."""
        table = Table(title="Sweep summary", show_header=True)
        table.add_column("Density (kg/m³)", style="cyan")
        table.add_column("Radii", justify="right")
        if with_t_d:
            table.add_column("min t_D (s)", justify="right")
            table.add_column("max t_D (s)", justify="right")
        else:
            table.add_column("max Λ_DP/Λ_min", justify="right")
            table.add_column("max Λ_CSL/Λ_min", justify="right")

        densities = []
        for row in rows:
            if row.density not in densities:
                densities.append(row.density)
        for density in densities:
            group = [r for r in rows if r.density == density]
            if with_t_d:
                values = [r.t_d for r in group]
                table.add_row(f"{density:g}", str(len(group)), format_value(min(values)), format_value(max(values)))
            else:
                table.add_row(
                    f"{density:g}",
                    str(len(group)),
                    self.format_ratio(max(r.ratio_dp for r in group)),
                    self.format_ratio(max(r.ratio_csl for r in group)),
                )
        self.console.print(table)
