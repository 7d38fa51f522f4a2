"""Nonlocality of noisy multipartite qubit states via conditioned CHSH tests."""
from .qstate import (DensityMatrix, GraphSpec, Observable, PureState, basis_state,
                     correlation_tensor, expectation, ghz_state, graph_state,
                     maximally_mixed, partial_trace, project_and_condition,
                     pure_to_density, read_graph, w_state)
from .channels import (PauliChannel, apply_channel, apply_channel_all, dephased_ghz_x,
                       dephased_ghz_z, dephased_w_z, noisy)
from .chsh import (ChshSettings, chsh_value, conditioned_m_chsh, correlation_matrix,
                   m_chsh, optimal_chsh_settings)
from .families import ghz_family, graph_family, make_family, noise_threshold, w_family
from .bell import (CorrelatorInequality, GraphBellOperator, conditioned_chsh_value,
                   graph_bell_local_bound, graph_bell_value, lhv_local_bound,
                   load_inequalities, mk_operator_value, mk_threshold_z,
                   paired_chsh_value)
from .content import (ContentBound, chsh_paired_bound, chsh_weighted_bound,
                      content_curve, epr2_bound)
from .optimize import OptimizerConfig, maximize, optimize_conditioning, optimize_mk

__version__ = "0.1.0"
