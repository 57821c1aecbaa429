from src.netgraph.graph import NetGraph, build_graph, is_connected, EDGE_FACTOR
from src.netgraph.metrics import (
    as_mask,
    as_vertex_set,
    graph_metric,
    distances,
    ball,
    annulus,
    boundary_ring,
    induced_components,
    outside_ball,
)
from src.netgraph.geometry import (
    LLCResult,
    VolumeReport,
    check_bounded_degree,
    greedy_5b_cover,
    check_llc,
    estimate_volume_growth,
    ball_fits,
)
from src.netgraph.cache import save_graph, load_graph
from src.netgraph.model import default_epsilon, model_graph

__all__ = [
    'NetGraph',
    'build_graph',
    'is_connected',
    'EDGE_FACTOR',
    'as_mask',
    'as_vertex_set',
    'graph_metric',
    'distances',
    'ball',
    'annulus',
    'boundary_ring',
    'induced_components',
    'outside_ball',
    'LLCResult',
    'VolumeReport',
    'check_bounded_degree',
    'greedy_5b_cover',
    'check_llc',
    'estimate_volume_growth',
    'ball_fits',
    'save_graph',
    'load_graph',
    'default_epsilon',
    'model_graph',
]
