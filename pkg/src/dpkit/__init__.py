"""DP-coloring of plane graphs and a mechanical replay of its discharging proof."""

__version__ = "0.1.0"

from dpkit.plane_graph import (
    ConfigWitness,
    Cycle,
    EmbeddingError,
    Face,
    PlaneGraph,
    VertexProfile,
    build_plane_graph,
    cycles_adjacent,
    enumerate_short_cycles,
    find_chord_configs,
    forbidden_pattern_witness,
    structural_audit,
    vertex_profile,
)
from dpkit.cover import (
    Cover,
    CoverGraph,
    SimpleGraph,
    Transversal,
    enumerate_covers,
    identity_cover,
    normalize_cover,
    random_cover,
    residual_restrict,
    validate_cover,
)
from dpkit.solver import (
    Verdict,
    check_lemma3_bounds,
    find_transversal,
    is_dp_k_colorable,
    lemma3_color,
)
from dpkit.discharging import (
    Rule,
    apply_discharging,
    audit_charges,
    initial_charges,
    transfer_amount,
)
