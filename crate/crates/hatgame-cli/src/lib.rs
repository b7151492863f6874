//! Library side of the CLI: artifact formats shared with integration
//! tests.

pub mod artifact;
