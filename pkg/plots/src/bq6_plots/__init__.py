"""Static figure rendering for the solver's CSV artifacts (no solver import)."""

from .cli import main, render_report
from .figures import (FIGURES, render_contraction, render_convergence,
                      render_plateau, render_traces, render_waterfall)
from .readers import (SchemaError, read_convergence, read_field,
                      read_iterations, read_rows, read_traces)

__version__ = "0.1.0"
