//! Holds the acceptance target; see `tests/acceptance.rs`.
