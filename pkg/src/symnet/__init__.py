"""Symmetry-constrained auto-associative networks.

Construct, train, and analyze small auto-associators whose weight structure
is tied to the permutation symmetry group of their binary training set:
group and orbit machinery, weight-sharing templates, closed-form linear
solution families, SGD/ADAM training with a compiled inner loop, and
spectrum / flow-field / fixed-point analysis.
"""

from .backend import BACKEND
from .errors import CapabilityError, DivergenceError, NumericError, SymnetError
from .groups import (OrbitPartition, PatternSet, Permutation, SymmetryGroup,
                     act_on_matrix, act_on_vector, orbits, pair_orbits,
                     permutation_compose, symmetry_group)
from .nets import (Activation, IDENTITY, Template, build_template,
                   equivariance_check, forward, instantiate, is_autoassociator,
                   is_compatible, iterate, symmetry_deviation)
from .families import (LinearFamily, NonlinearCorrection, family_member,
                       nonlinear_correction, plane_span, pseudoinverse_projection,
                       solve_linear_family, span_residual)
from .training import (EnsembleResult, TrainConfig, TrainResult, ensemble_train,
                       init_weights, loss_gradient, mse_loss, train)
from .analysis import (FamilyFit, FixedPointSet, FlowField, Spectrum,
                       classify_attractor, fit_family, fixed_points, flow_field,
                       generalization_table, linearized_spectrum_at, spectrum)

__version__ = "0.1.0"
