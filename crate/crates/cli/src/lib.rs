//! Library half of the `silting` binary: the text formats and the built-in
//! two-vertex verification table. Kept as a lib so the integration tests can
//! parse what the binary prints.

pub mod formats;
pub mod verify;
