//! Command-line driver around the `cmweight` kernel: job files in, exact
//! JSON reports out, plus an oracle dump mode and golden-corpus comparison.
//!
//! Exit-code contract: `0` success, `1` input error (unreadable job, parse
//! or homogeneity failure, bad range), `2` internal invariant violation
//! (m-independence or route-agreement failure — a mathematical bug, never
//! silent). The corpus runner additionally uses `3` for "no failures, but
//! some jobs have no golden report yet".

pub mod corpus;
pub mod job;
pub mod pipeline;
pub mod report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_NEW_GOLDENS: i32 = 3;
