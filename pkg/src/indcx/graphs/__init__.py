from .core import (
    Graph,
    closed_neighborhood,
    complement,
    delete_vertices,
    disjoint_union,
    induced_subgraph,
    relabel,
    subgraph_by_indices,
    tensor_product,
)
from .families import (
    FamilySpec,
    atomic,
    build,
    build_atomic,
    build_family,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    matching_graph,
    parse_spec,
    path_graph,
    product,
    star_graph,
)
from .iso import color_classes, connected_components, find_isomorphism, isomorphic

__all__ = [
    "FamilySpec", "Graph", "atomic", "build", "build_atomic", "build_family",
    "closed_neighborhood", "color_classes", "complement", "complete_graph",
    "connected_components", "cycle_graph", "delete_vertices", "disjoint_union",
    "edgeless_graph", "find_isomorphism", "induced_subgraph", "isomorphic",
    "matching_graph", "parse_spec", "path_graph", "product", "relabel",
    "star_graph", "subgraph_by_indices", "tensor_product",
]
