//! Hyperplane-and-sphere calculus (to be implemented).
