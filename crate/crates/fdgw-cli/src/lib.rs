//! Report types and rendering shared between the `fdgw` binary and its
//! integration tests.

pub mod report;
