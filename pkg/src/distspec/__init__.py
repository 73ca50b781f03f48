"""Distance spectral radius of hypertrees and cacti."""

__version__ = "0.1.0"

from .hypergraph import (DisconnectedError, Hypergraph, HypergraphError, ParseError, degree,
                         distance_matrix, from_text, is_connected, is_hypertree, pendant_edges,
                         read_hypergraph, to_text, two_section, write_hypergraph)
from .spectral import (SpectralResult, eigenequation_residual, min_status, rayleigh, sigma,
                       spectral_radius, status)
from .families import (HypertreeParams, SawParams, check_o_correspondence, parse_family, path,
                       saw_graph, t_hypertree)
from .enumeration import (ClassSpec, argmax_rho, canonical_form, enumerate_cacti,
                          enumerate_hypertrees)
from .transforms import (GraftReport, check_edge_move_lemma, check_entry_inequality,
                         check_rebalance, check_vertex_move_lemma, move_edges, move_vertices)
from .lemmas import (LemmaOutcome, check_difference_monotonicity, check_perron_ordering,
                     check_sigma_split, check_status_bound, check_two_edge_identity)
