"""Distance spectra of connected graphs, the distance Estrada index and its bounds."""

from .bounds import (
    BOUND_IDS,
    BoundReport,
    bound_eq4,
    bound_eq5_eq6,
    bound_eq7,
    bound_eq11,
    bound_eq14,
    bound_eq19,
    detect_equality_cases,
    evaluate_all,
    evaluate_graph,
    mu1_lower_chain,
    mu1_lower_power,
    mu1_lower_size,
)
from .exceptions import ConvergenceError, DisconnectedGraphError, GenerationError, GraphFormatError
from .formats import parse_edgelist, parse_graph6, to_edgelist, to_graph6
from .graph_core import (
    DistanceProfile,
    Graph,
    PowerSequence,
    distance_profile,
    generate_family,
    is_connected,
    power_sequence,
    random_connected_gnp,
)
from .harness import FamilySpec, ScanConfig, VerificationSummary, exhaustive_small, scan_tightness, verify
from .spectral import (
    DistanceSpectrum,
    count_positive,
    d_eigenvalues,
    distance_energy,
    distance_estrada,
    distance_estrada_series,
)

__version__ = "0.1.0"
