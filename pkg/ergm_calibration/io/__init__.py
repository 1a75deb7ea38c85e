from .artifacts import (read_calibration_map, read_chain_csv,
                        write_calibration_map, write_chain_csv,
                        write_density_csv, write_edge_histogram,
                        write_summary, write_text, write_timings,
                        write_tv_grid)
from .edge_list import (load_graph, read_attributes, read_edge_list,
                        write_edge_list)

__all__ = [
    "read_edge_list",
    "read_attributes",
    "load_graph",
    "write_edge_list",
    "write_chain_csv",
    "read_chain_csv",
    "write_calibration_map",
    "read_calibration_map",
    "write_summary",
    "write_timings",
    "write_text",
    "write_density_csv",
    "write_edge_histogram",
    "write_tv_grid",
]
