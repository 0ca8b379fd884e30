//! CF systems (to be implemented).
pub mod interval {}
