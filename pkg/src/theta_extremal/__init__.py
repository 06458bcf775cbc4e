"""Generalized theta graphs: exact detection, the moment-curve construction,
executable extraction lemmas and small extremal numbers."""

__version__ = "0.1.0"

from .detect import DetectResult, Embedding, detect_theta, enumerate_cycles, verify_embedding
from .errors import *  # noqa: F401,F403
from .geometry import build_incidence_graph, freeness_certificate, verify_c8_direction_pattern
from .graph import Graph, bfs_layers, degree_stats, from_edge_list
from .graph6 import decode_graph6, encode_graph6
from .kernels import BACKEND
from .theta import ThetaSpec, build_theta, k_star, parse_spec, upper_bound_exponent, validate_spec
