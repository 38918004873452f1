"""diwallkit: planar digraph structure toolkit.

Didrawings (digraphs embedded on the sphere via rotation systems), directed
duals and change numbers, pattern multicuts, alternating rings, diwall and
grid generators with layout and box-system certificates, the blowup
construction, carvings with diwidth and dart-width, and directed minor
operators, each paired with brute-force oracles in the test suite.
"""

from .digraph import Digraph, Edge, digraph
from .core import (
    ConnectivityProfile,
    Dart,
    Didrawing,
    HEAD,
    Region,
    TAIL,
    build_didrawing,
    connectivity_profile,
    didrawing_from_positions,
    interleaving,
)
from .textio import parse, read_didrawing, serialize, to_dot, write_didrawing
from .duality import (
    DualMap,
    bond_change_number,
    bond_cycle,
    change_number,
    cut_change_number,
    dual,
)
from .multicut import (
    Concatenation,
    Multicut,
    Path,
    Pattern,
    connectify,
    crossing_profile,
    find_multicut,
    find_multicut_with_witness,
    path_case,
    verify_multicut,
)
from .walls import (
    BoxSystem,
    DiwallLayout,
    SubdivisionModel,
    alternating_grid_paths,
    box_to_layout,
    diwall_layout,
    diwall_positions,
    embeds,
    generate,
    identity_box_system,
    verify_box_system,
    verify_layout,
)
from .width import (
    Carving,
    DartPartition,
    GoodCurve,
    dart_width_exact,
    dart_width_via_blowup,
    diwidth_exact,
    diwidth_greedy,
    enumerate_good_curves,
    validate_carving,
    verify_bond_carving,
    verify_dart_carving,
)
from .blowup import Blowup, blow_up, dart_vertex, recover, transfer_carving
from .rings import (
    Ring,
    find_ring,
    ring_from_cycles,
    rings_to_layout,
    thin_ring,
    verify_ring,
)
from .minors import (
    ContractionStep,
    EmbeddingDropped,
    LoopCreated,
    contract,
    is_semi_strong_minor,
)
from . import errors
from .errors import (
    BadParity,
    CutEdge,
    DanglingDart,
    Disconnected,
    DiwallkitError,
    DuplicateDart,
    HasLoop,
    InterleavingExceeded,
    InvalidArcs,
    InvalidDrawing,
    InvalidMulticut,
    InvalidRing,
    NestingViolated,
    NotAlternating,
    NotBond,
    NotButterfly,
    NotOdd,
    NotOneWeak,
    NotPath,
    NotSphere,
    NotStrong,
    NotTwoEdgeConnected,
    NotTwoWeak,
    NotWalk,
    ParseError,
    RingTooSmall,
    RoutingFailed,
    SameVertex,
    ScaleExceeded,
    TooSmall,
    TransferCostExceeded,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "BadParity",
    "Blowup",
    "BoxSystem",
    "Carving",
    "ConnectivityProfile",
    "ContractionStep",
    "CutEdge",
    "DanglingDart",
    "Dart",
    "DartPartition",
    "Didrawing",
    "Digraph",
    "Disconnected",
    "DiwallLayout",
    "DiwallkitError",
    "DualMap",
    "DuplicateDart",
    "Edge",
    "EmbeddingDropped",
    "GoodCurve",
    "HEAD",
    "HasLoop",
    "InterleavingExceeded",
    "InvalidArcs",
    "InvalidDrawing",
    "InvalidMulticut",
    "InvalidRing",
    "LoopCreated",
    "NestingViolated",
    "NotAlternating",
    "NotBond",
    "NotButterfly",
    "NotOdd",
    "NotOneWeak",
    "NotPath",
    "NotSphere",
    "NotStrong",
    "NotTwoEdgeConnected",
    "NotTwoWeak",
    "NotWalk",
    "ParseError",
    "Region",
    "Ring",
    "RingTooSmall",
    "RoutingFailed",
    "SameVertex",
    "ScaleExceeded",
    "SubdivisionModel",
    "TAIL",
    "TooSmall",
    "TransferCostExceeded",
    "ValidationError",
    "Concatenation",
    "Multicut",
    "Path",
    "Pattern",
    "alternating_grid_paths",
    "blow_up",
    "bond_change_number",
    "bond_cycle",
    "box_to_layout",
    "build_didrawing",
    "change_number",
    "connectify",
    "connectivity_profile",
    "contract",
    "crossing_profile",
    "cut_change_number",
    "dart_vertex",
    "dart_width_exact",
    "dart_width_via_blowup",
    "didrawing_from_positions",
    "digraph",
    "diwall_layout",
    "diwall_positions",
    "diwidth_exact",
    "diwidth_greedy",
    "dual",
    "embeds",
    "enumerate_good_curves",
    "find_multicut",
    "find_multicut_with_witness",
    "find_ring",
    "errors",
    "generate",
    "identity_box_system",
    "interleaving",
    "is_semi_strong_minor",
    "parse",
    "path_case",
    "read_didrawing",
    "recover",
    "ring_from_cycles",
    "rings_to_layout",
    "serialize",
    "thin_ring",
    "to_dot",
    "transfer_carving",
    "validate_carving",
    "verify_bond_carving",
    "verify_box_system",
    "verify_dart_carving",
    "verify_layout",
    "verify_multicut",
    "verify_ring",
    "write_didrawing",
    "__version__",
]
