//! Acceptance suite for cotree; see tests/acceptance.rs.
