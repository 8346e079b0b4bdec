"""Semi-analytic half-line solver and estimate lab for the sixth-order
Boussinesq equation u_tt - u_xx + beta u_xxxx - u_xxxxxx + (u^2)_xx = 0."""

from .boundaryprop import (BoundarySpectrum, BoundaryTriple,
                           boundary_spectrum, boundary_transform, wbdr_eval,
                           wbdr_traces)
from .duhamel import duhamel_halfline, duhamel_line, duhamel_traces
from .fd import fd_solve, manufactured_solution, pde_residual
from .lineprop import (Field2D, LineData, NyquistError, extend_halfline,
                       line_data_from_halfline, line_traces, propagate_line,
                       shift_state, v1, v2)
from .norms import NormReport, sobolev_norm, time_sobolev_norm, xsb_norm
from .solver import (ConfigError, IBVPData, IterationReport, NoContraction,
                     SolverConfig, ibvp_data_from_profiles, picard_step,
                     solve_linear_ibvp, solve_nonlinear_ibvp)
from .spectral import (BoundarySystem, DegenerateDeterminant, PhaseSpec,
                       RootTriple, boundary_system, characteristic_roots,
                       phase, phase_derivative, surrogate_phase)

__version__ = "0.1.0"
