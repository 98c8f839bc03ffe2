"""Plot renderer for wignerlab result tables.

Consumes the CSV artifacts written by the experiment CLI and produces
static comparison and diagnostic figures.  The renderer is read-only
and deterministic: identical inputs yield identical image bytes.
"""

from .render import PlotJob, SchemaMismatch, main, render

__version__ = "0.1.0"
