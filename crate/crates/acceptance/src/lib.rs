//! Acceptance checks for the `cftorsion` workspace live in `tests/acceptance.rs`.
