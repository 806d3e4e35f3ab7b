//! Library surface of the curvelift command-line tool: the input parsers
//! and the structured output records, shared by the binary and its tests.

pub mod parse;
pub mod records;
