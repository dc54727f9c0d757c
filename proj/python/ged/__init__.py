"""Group evolution discovery over temporal social networks."""

from ._ged import (
    AlignmentError,
    ConfigError,
    ConvergenceError,
    EmptyInput,
    EventLog,
    EvolutionEvent,
    GedError,
    Group,
    GroupingSnapshot,
    InvalidEvent,
    InvalidGroup,
    InvalidInput,
    IoError,
    MissingScore,
    ParseError,
    ParseReport,
    Snapshot,
    TemporalSocialNetwork,
    TimedEdge,
    classify_pair,
    degree_importance,
    event_log_from_json,
    inclusion,
    induced_subgraph,
    label_propagation,
    load_groupings,
    parse_edge_file,
    parse_edges,
    slice_timeframes,
    social_position,
    track_evolution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
