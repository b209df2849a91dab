//! File formats, fixture groups and result reports.

mod builtins;
mod formats;
mod relabel;

pub use builtins::{builtin_group, BUILTIN_NAMES};
pub use formats::{
    emit_report, merge_classes, parse_graph, parse_group, parse_report, to_json_string, write_graph, write_group,
    GraphFile, GroupFile, GroupRef, IsoResultJson, ResultReport,
};
pub use relabel::random_relabeling;
