# Public re-exports
from .synopsis_store import SynopsisState, WindowSpec, slide
from .metrics import (
    ClassBreakdown,
    Trip,
    TripStats,
    characterise,
    classify_breakdown,
    compression_ratio,
    fleet_rmse,
    reconstruct_trips,
    rmse,
    rmse_histogram,
    summarize_trips,
)
from .serialization import jsonable, to_feature, to_record
from .exporters import ExportFormat, export, export_format, read_critical_points, write_export, write_per_vessel

__all__ = [
    "WindowSpec",
    "SynopsisState",
    "slide",
    "rmse",
    "compression_ratio",
    "classify_breakdown",
    "ClassBreakdown",
    "characterise",
    "rmse_histogram",
    "fleet_rmse",
    "Trip",
    "TripStats",
    "reconstruct_trips",
    "summarize_trips",
    "jsonable",
    "to_record",
    "to_feature",
    "ExportFormat",
    "export_format",
    "export",
    "write_export",
    "write_per_vessel",
    "read_critical_points",
]
