//! Invariant density estimation (to be implemented).
