//! Std companion to `specgraph-core`: graph6 streams, the parallel survey
//! pipeline, table serialization, fixture management and the family-spec
//! grammar used by the `specgraph` binary.

pub mod fixtures;
pub mod g6io;
pub mod pipeline;
pub mod spec;
pub mod tables;

pub use pipeline::{classify_stream, survey_graphs, survey_reader, Diagnostics, SurveyOptions, SurveyTables};
pub use tables::Format;
