"""Shared visual constants and helpers for polsim's terminal output."""

from __future__ import annotations

from rich.style import Style
from rich.text import Text

# ── Color Palette ───────────────────────────────────────────────────────

SURFACE = "#161b22"
MUTED = "#8b949e"

CYAN = "#58a6ff"
GREEN = "#39d353"
PURPLE = "#bc8cff"
YELLOW = "#e3b341"
RED = "#f85149"

# ── ASCII Banner ────────────────────────────────────────────────────────

BANNER = r"""
             _     _
  _ __  ___ | |___(_)_ __ ___
 | '_ \/ _ \| / __| | '_ ` _ \
 | |_) | (_) | \__ \ | | | | | |
 | .__/ \___/|_|___/_|_| |_| |_|
 |_|"""

TAGLINE = "frequency to polarization entanglement"

# ── Sparkline ───────────────────────────────────────────────────────────

SPARK_CHARS = "▁▂▃▄▅▆▇█"


def sparkline(values: list[float], width: int = 40) -> str:
    """Render values on a fixed 0..1 scale, downsampled to `width` characters."""
    if not values:
        return ""
    if len(values) > width:
        step = len(values) / width
        values = [values[int(i * step)] for i in range(width)]
    top = len(SPARK_CHARS) - 1
    return "".join(SPARK_CHARS[min(max(int(v * top + 0.5), 0), top)] for v in values)


def concurrence_color(value: float) -> str:
    if value >= 0.9:
        return GREEN
    if value >= 0.5:
        return YELLOW
    return RED


def concurrence_text(value: float) -> Text:
    return Text(f"{value:.4f}", style=Style(color=concurrence_color(value), bold=True))


def status_text(passed: bool) -> Text:
    if passed:
        return Text("pass", style=Style(color=GREEN, bold=True))
    return Text("FAIL", style=Style(color=RED, bold=True))


# ── Banner Rendering ────────────────────────────────────────────────────

def render_banner() -> Text:
    """Render the polsim ASCII banner as styled Rich Text."""
    text = Text(justify="center")
    for line in BANNER.strip("\n").split("\n"):
        text.append(line + "\n", style=Style(color=PURPLE, bold=True))
    text.append(f"  {TAGLINE}\n", style=Style(color=MUTED, italic=True))
    return text
