"""Exact computation in free metabelian and free solvable groups via the Magnus embedding."""

from .errors import CapacityError, RadiusExceeded, RankError, StructureError, WordSyntaxError
from .flows import EdgeKey, Flow, divergence, equal_mod_nprime, flow_of_word, support_graph, translate_flow
from .fox import RingElement, augmentation, fox_derivative, fox_derivatives, fundamental_identity_check
from .geodesic import build_delta_star, euler_geodesic_word, geodesic_length_fn
from .groups import Config, FreeSolvable, Lattice, SolvableElement, evaluate, free_solvable, solvable_from_word
from .kernels import minimal_connecting_forest, shortest_closed_tour, shortest_walk
from .oracles import EXCEEDS_RADIUS, bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath
from .qi import CampaignConfig, QiRecord, run_campaign, verify_qi
from .words import Letter, Word, commutator, free_reduce, x
from .wreath import WreathElement, magnus_embed, sum_lamp_costs, wreath_length_circuit, wreath_length_walk

__all__ = [name for name in dir() if not name.startswith("_")]
