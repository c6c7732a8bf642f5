//! Library side of the `palette` command: graph corpora and verification suites.

pub mod corpus;
pub mod suites;
