'''Energy series, CSV/JSON artifacts, and method comparison tables.'''

from .compare import ComparisonRow, ComparisonTable, MethodConfig, compare_methods
from .energy import EnergyDiagnostics, compute_energy
from .io import as_frame, read_summary_json, summarize, write_csv, write_summary_json

__all__ = [
    'ComparisonRow',
    'ComparisonTable',
    'EnergyDiagnostics',
    'MethodConfig',
    'as_frame',
    'compare_methods',
    'compute_energy',
    'read_summary_json',
    'summarize',
    'write_csv',
    'write_summary_json',
]
