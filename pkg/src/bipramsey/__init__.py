"""Two-colored balanced bipartite graphs: constructions, exact oracles and extremal routing."""

from .bigraph import (BLUE, RED, Color, ColoredBigraph, Side, VertexRef, build, complete, degree,
                      color_degree, color_edge_count, edge_count, load, min_degree, parse, save,
                      serialize)
from .errors import (BelowRegimeError, BipramseyError, InternalError, PreconditionError,
                     SearchCapExceeded)
from .extremal import (BiConnectedPair, RouteCertificate, RouteParams, big_part_prop,
                       extract_ham_path, extremal_route, find_witness, long_path_prop,
                       separator_partition, verify_witness)
from .families import (FAMILIES, FamilyClaims, FamilySpec, gen_cycle_extremal, gen_large_deg,
                       gen_medium_deg, gen_small_deg)
from .routes import (CycleResult, PathResult, SimpleGraphView, berge_check, erdos_gallai_cycle,
                     ham_path_between, longest_mono_cycle_exact, longest_mono_path_exact)
from .structure import (ConnectedMatching, ExtremalWitness, MonoComponent, StabilityOutcome,
                        VertexCover, best_balanced_component, component_bound, cycle_bound,
                        large_double_star, matching_bound, matching_or_witness,
                        max_connected_matching, min_cover, mono_components)

__version__ = "0.1.0"
