from bochner_lab.infrastructure.reporting.csv_writer import residual_table, write_csv
from bochner_lab.infrastructure.reporting.json_writer import dumps, format_float, write_json

__all__ = ["dumps", "format_float", "residual_table", "write_csv", "write_json"]
