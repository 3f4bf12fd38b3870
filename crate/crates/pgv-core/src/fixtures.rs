//! Frozen reference data: hand-derived congruence systems and golden
//! presentation files.
//!
//! The congruence texts were worked out independently of [`crate::symbolic`]
//! and are written in *deviation coordinates*: the unknown `aij` stands for
//! the deviation of the image-exponent matrix from the identity, so the zero
//! assignment describes the identity endomorphism. Tests cross-check them
//! against the generated systems; see `tests/acceptance.rs`.
//!
//! The `.pcp` files pin the canonical serialization of the shipped
//! presentations so that accidental changes to either the constructors or the
//! serializer show up as test failures.

/// Hand-derived congruences for the four-generator family at `p = 3`, `n = 4`.
pub const SYSTEM_FAMILY_A_N4: &str = include_str!("../fixtures/systems/family_a_n4.txt");

/// Hand-derived congruences for the five-generator family at `p = 3`.
pub const SYSTEM_FAMILY_B: &str = include_str!("../fixtures/systems/family_b.txt");

/// Hand-derived congruences for the special four-generator family at `p = 3`.
pub const SYSTEM_FAMILY_C: &str = include_str!("../fixtures/systems/family_c.txt");

/// Golden canonical text of the four-generator family at `p = 3`, `n = 4`.
pub const PCP_FAMILY_A_P3_N4: &str = include_str!("../fixtures/presentations/family_a_p3_n4.pcp");

/// Golden canonical text of the five-generator family at `p = 3`.
pub const PCP_FAMILY_B_P3: &str = include_str!("../fixtures/presentations/family_b_p3.pcp");

/// Golden canonical text of the special four-generator family at `p = 3`.
pub const PCP_FAMILY_C_P3: &str = include_str!("../fixtures/presentations/family_c_p3.pcp");
