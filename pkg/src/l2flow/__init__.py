"""Kernel L2 support vector machines trained by a gradient flow on the simplex."""

from ._accel import BACKEND
from .classifier import DecisionGrid, decision_grid, decision_value, decision_values, predict
from .dataset import Dataset, generate_two_moons, load_csv, save_csv
from .dual import DualProblem, TrainedModel, build, extract_model, gradient, objective
from .flow import FlowConfig, FlowDivergenceError, Trajectory, integrate, rhs, step_rk4
from .frank_wolfe import FWConfig, FWTrace, lmo_simplex
from .frank_wolfe import solve as solve_frank_wolfe
from .kernel import KernelSpec, eval_kernel, gram_matrix, kernel_vector
from .oracle import OracleSolution, solve_exact

__version__ = "0.1.0"
