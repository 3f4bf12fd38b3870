//! Verification toolkit for the automorphism structure of finite p-groups of
//! nilpotency class at most two.
//!
//! Groups enter as polycyclic presentations with trivial power relations
//! (`x_i^{p^{e_i}} = 1`) and central commutator relations. On top of exact
//! collection arithmetic the crate computes characteristic subgroups (derived
//! subgroup, center, agemo and omega layers, Frattini subgroup), evaluates
//! classical abelian-automorphism-group criteria, derives the congruence
//! system an endomorphism's exponents must satisfy, and runs a complete
//! digit-by-digit search certifying that every automorphism is central — or
//! exhibiting one that is not.
//!
//! Modules, bottom to top:
//!
//! - [`arith`] — exact integer/residue linear algebra (Hermite, Smith and
//!   Howell forms, prime-power kernels).
//! - [`presentation`] — presentation type, parser, serializer, consistency
//!   validation.
//! - [`collect`] — collection arithmetic on normal forms (multiply, inverse,
//!   power, commutator, element order).
//! - [`structure`] — characteristic subgroups, section types, exponent,
//!   enumeration, purely-non-abelian test.
//! - [`homs`] — central homomorphism spaces, endomorphism/automorphism
//!   predicates, deterministic sampling.
//! - [`criteria`] — abelian-automorphism-group criteria and guards.
//! - [`symbolic`] — polynomial collection over unknown exponents and
//!   congruence-system generation.
//! - [`solver`] — complete digit search with certified-central pruning, plus
//!   small-group brute-force oracles.
//! - [`families`] — the shipped group families and control fixtures.
//! - [`fixtures`] — frozen congruence systems and golden presentation files.

pub mod arith;
pub mod collect;
pub mod criteria;
pub mod families;
pub mod fixtures;
pub mod homs;
pub mod par;
pub mod presentation;
pub mod solver;
pub mod structure;
pub mod symbolic;
