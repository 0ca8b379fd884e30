//! Boundary-orbit engine (to be implemented).
pub fn iterate_boundary() {}
