"""Higher-order random-walk ranking and experiment harnesses.

The package splits along the pipeline: graph ingestion (`graph`),
maximal-simplex structure (`simplicial`), the mixed walk and its
stationary scores (`walk`), classical baselines (`centrality`), and the
three experiment harnesses (`epidemic`, `dismantle`, `resolution`), with
a CLI front end (`cli`) writing deterministic artifacts.
"""

__version__ = "0.1.0"

from .errors import CliqueCapError, ConvergenceError, HorwError, ParseError  # noqa: F401
from .graph import (  # noqa: F401
    EdgeListFormat,
    Graph,
    GraphStats,
    giant_component,
    load_edge_list,
    stats,
)
from .simplicial import SimplicialCover, Simplex, build_cover, maximal_cliques  # noqa: F401
from .walk import RankResult, TransitionSystem, rank, stationary  # noqa: F401
