"""Hierarchical spectral solver for the multi-allele Wright-Fisher diffusion
on the closed probability simplex, with moment-ODE and Monte Carlo oracles."""

from .simplex import (FaceChart, FaceId, FaceLattice, LatticeError,
                      SimplexSizeError, build_lattice, chart_of, embed_point)
from .poly import PolyParseError, ShapeError, SimplexPolynomial
from .timeprofile import TimeProfile, convolve
from .spectral import (GegenbauerMode, build_mode, eigenvalue, evolve, omega,
                       omega_shift, project, reconstruct)
from .flux import (adjointness_residual, apply_backward, apply_forward,
                   flux_of, half_trace_flux, normal_flux_on_facet,
                   restrict_ambient_to_face, restrict_to_child)
from .hierarchy import (FaceSolution, HierarchicalSolution, extend,
                        hierarchical_product, hierarchical_product_profile,
                        mass_profile, moment, moment_profile,
                        solution_from_json, solution_to_json,
                        stratum_mass_profile, weak_residual,
                        weak_residual_profile)
from .moments import (MomentTrajectory, compare, initial_moments_from_poly,
                      multi_indices, rk4_crosscheck, solve_moment_ode)
from .montecarlo import WfConfig, WfReport, run, step
from .estimator import HierarchicalSolver, check_simplex_points

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
