// SPDX-License-Identifier: Apache-2.0

//! Expression language, canonical serialization, command sessions and the
//! acceptance suites behind the `polyadic` binary.

pub mod parser;
pub mod serial;
pub mod session;
pub mod suites;
