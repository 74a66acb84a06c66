//! Acceptance checks for `oracle_forge`; see `tests/acceptance.rs`.
