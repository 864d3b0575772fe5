"""Graph-state entanglement routing and bottleneck analysis."""

from gsroute.graph import (
    Graph,
    canonical_form,
    delete_vertex,
    exterior_neighborhood,
    is_repeater_line,
    local_complement,
    neighborhood,
)
from gsroute.measurement import (
    MeasurementLog,
    MeasurementStep,
    apply_sequence,
    measure_x,
    measure_y,
    measure_z,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "MeasurementLog",
    "MeasurementStep",
    "apply_sequence",
    "canonical_form",
    "delete_vertex",
    "exterior_neighborhood",
    "is_repeater_line",
    "local_complement",
    "measure_x",
    "measure_y",
    "measure_z",
    "neighborhood",
]
