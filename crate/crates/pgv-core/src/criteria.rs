//! Decision criteria for the commutativity of the central automorphism
//! group, stated purely in terms of computable subgroup data.
//!
//! All of these are classical characterizations for finite p-groups of
//! class at most two. Each function returns a report carrying the
//! intermediate subgroup comparisons, not just the verdict, so callers can
//! print exactly which clause decided the outcome. The reports are
//! *computed* for any valid presentation; their *interpretation* as
//! statements about the automorphism group requires the stated hypotheses
//! (odd or even prime, no abelian direct factor), which remain the
//! caller's responsibility to certify.

use crate::collect::Element;
use crate::presentation::PcPresentation;
use crate::structure::{
    agemo_with_derived, center, central_subgroup_from_generators, coset_order_exponent,
    derived_join, derived_subgroup, exponent_of_group, frattini_subgroup,
    linear_span_of_central, omega_of_central, quotient_basis, StructureError,
};
use std::ops::ControlFlow;

/// The four exponents every criterion is phrased in: center, derived
/// subgroup, quotient by the derived subgroup, and the minimum of the outer
/// two. All as p-exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentData {
    /// log_p exponent of the center.
    pub center: u32,
    /// log_p exponent of the derived subgroup.
    pub derived: u32,
    /// log_p exponent of the quotient by the derived subgroup.
    pub quotient: u32,
    /// min(center, quotient).
    pub floor: u32,
}

/// Gather [`ExponentData`] for a presentation.
pub fn exponent_data(g: &PcPresentation) -> ExponentData {
    let z = center(g);
    let der = derived_subgroup(g);
    let qb = quotient_basis(g, &der);
    let center_e = z.exponent_exponent();
    let quotient_e = qb.order_exps.iter().copied().max().unwrap_or(0);
    ExponentData {
        center: center_e,
        derived: der.span().exponent_exponent(),
        quotient: quotient_e,
        floor: center_e.min(quotient_e),
    }
}

/// Report for the abelian-Autcent criterion at odd primes.
///
/// With exponents `a` (center), `b` (derived), `c` (quotient) and
/// `d = min(a, c)`, the two subgroups compared are the layer of central
/// elements of order at most `p^d` and the subgroup generated by all
/// `p^b`-th powers together with the derived subgroup. For a purely
/// nonabelian group of class two the central automorphisms commute iff the
/// layers coincide and either `d = b`, or `d > b` and the small layer is
/// generated modulo the derived subgroup by the `p^b`-th power of a single
/// maximal-order quotient generator.
#[derive(Clone, Debug)]
pub struct AutcentAbelianReport {
    pub exps: ExponentData,
    /// Central layer `{z central : |z| <= p^floor}` equals the power layer
    /// `G^(p^derived)` times the derived subgroup.
    pub layers_match: bool,
    /// `floor > derived` and the central layer is, modulo the derived
    /// subgroup, the cyclic group on a maximal-order generator's
    /// `p^derived`-th power.
    pub tail_cyclic: bool,
    /// The criterion's verdict.
    pub abelian: bool,
}

/// Evaluate the abelian-Autcent criterion (odd primes only).
pub fn autcent_abelian_odd(g: &PcPresentation) -> AutcentAbelianReport {
    assert!(g.p() != 2, "this criterion applies to odd primes");
    let z = center(g);
    let der = derived_subgroup(g);
    let qb = quotient_basis(g, &der);
    let a = z.exponent_exponent();
    let b = der.span().exponent_exponent();
    let c = qb.order_exps.iter().copied().max().unwrap_or(0);
    let d = a.min(c);
    let exps = ExponentData { center: a, derived: b, quotient: c, floor: d };

    let small_layer = linear_span_of_central(g, &omega_of_central(g, &z, d));
    let power_layer = agemo_with_derived(g, b);
    let layers_match = small_layer == power_layer;

    let pb = (g.p() as u128).pow(b);
    let tail_cyclic = d > b
        && qb
            .reps
            .iter()
            .zip(&qb.order_exps)
            .filter(|&(_, &s)| s == c)
            .any(|(h, _)| {
                let tail = g.pow_element(h, pb);
                derived_join(g, &[tail.to_vec()]) == small_layer
            });

    let abelian = layers_match && (d == b || tail_cyclic);
    AutcentAbelianReport { exps, layers_match, tail_cyclic, abelian }
}

/// Whether the central automorphism group of a purely nonabelian group is
/// elementary abelian, at odd primes: exactly when the center or the
/// quotient by the derived subgroup has exponent p.
pub fn autcent_elementary_abelian_odd(g: &PcPresentation) -> bool {
    assert!(g.p() != 2, "this criterion applies to odd primes");
    let e = exponent_data(g);
    e.center == 1 || e.quotient == 1
}

/// Report for the elementary-abelian-Autcent criterion at `p = 2`. The
/// verdict holds iff one of the three clauses does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoGroupReport {
    /// The quotient by the derived subgroup has exponent 2.
    pub quotient_exponent_two: bool,
    /// The center has exponent 2.
    pub center_exponent_two: bool,
    /// The mixed clause: both exponents at least 4 with gcd exactly 4, the
    /// center and the quotient each split as cyclic times elementary with
    /// an elementary part of the center inside the derived subgroup, and an
    /// order-4 element of a cyclic part of the center lands in a cyclic
    /// part of the quotient at half the quotient exponent.
    pub mixed_clause: bool,
    /// The criterion's verdict.
    pub elementary_abelian: bool,
}

/// Evaluate the elementary-abelian-Autcent criterion (`p = 2` only).
pub fn autcent_elementary_abelian_two(g: &PcPresentation) -> TwoGroupReport {
    assert!(g.p() == 2, "this criterion applies to p = 2");
    let z = center(g);
    let der = derived_subgroup(g);
    let qb = quotient_basis(g, &der);
    let a = z.exponent_exponent();
    let mut quotient_type: Vec<u32> = qb.order_exps.clone();
    quotient_type.sort_unstable_by(|x, y| y.cmp(x));
    let c = quotient_type.first().copied().unwrap_or(0);

    let quotient_exponent_two = c == 1;
    let center_exponent_two = a == 1;
    let mixed_clause = a.min(c) == 2
        && is_cyclic_times_elementary(z.abelian_type())
        && is_cyclic_times_elementary(&quotient_type)
        && elementary_center_part_in_derived(g, &z)
        && order_four_witness_exists(g, &z, c);

    TwoGroupReport {
        quotient_exponent_two,
        center_exponent_two,
        mixed_clause,
        elementary_abelian: quotient_exponent_two || center_exponent_two || mixed_clause,
    }
}

/// Type `[n, 1, 1, ..., 1]` with `n >= 2`: cyclic of order at least
/// `p^2` times an elementary abelian group (possibly trivial).
fn is_cyclic_times_elementary(t: &[u32]) -> bool {
    t.first().is_some_and(|&n| n >= 2) && t[1..].iter().all(|&x| x == 1)
}

/// Whether the center (cyclic times elementary, exponent `2^a`, `a >= 2`)
/// admits a decomposition whose elementary part lies in the derived
/// subgroup. The elementary complements of a cyclic part are exactly the
/// full-rank elementary subgroups avoiding the canonical order-2 subgroup
/// of `(2^(a-1))`-th powers, so this reduces to comparing ranks inside
/// `Omega_1(center) ∩ derived`.
fn elementary_center_part_in_derived(
    g: &PcPresentation,
    z: &crate::structure::CentralSubgroup,
) -> bool {
    let der = derived_subgroup(g);
    let a = z.exponent_exponent();
    let k = z.abelian_type().iter().filter(|&&t| t == 1).count() as u32;
    let omega1 = omega_of_central(g, z, 1);
    let mut inside = 0u64;
    omega1.for_each_element::<()>(g, &mut |el| {
        if der.contains_vector(el) {
            inside += 1;
        }
        ControlFlow::Continue(())
    });
    assert!(inside.is_power_of_two());
    let rank_e = inside.trailing_zeros();
    let socle = g.pow_element(&z.basis()[0], 1u128 << (a - 1));
    let socle_inside = der.contains_vector(&socle);
    if socle_inside {
        rank_e >= k + 1
    } else {
        rank_e >= k
    }
}

/// Whether some central element of order 4 with maximal height lands, in
/// the quotient by the derived subgroup, inside a cyclic part at exactly
/// half the quotient exponent. Elements of order 4 in a cyclic part of the
/// center are the order-4 elements of `(2^(a-2))`-th powers of the center;
/// cosets in a cyclic part at half the exponent are squares of coset order
/// `2^(c-1)`.
fn order_four_witness_exists(
    g: &PcPresentation,
    z: &crate::structure::CentralSubgroup,
    c: u32,
) -> bool {
    let a = z.exponent_exponent();
    if a < 2 || c < 2 {
        return false;
    }
    let der = derived_subgroup(g);
    let phi = frattini_subgroup(g);
    let deep: Vec<Element> = z
        .basis()
        .iter()
        .map(|b| g.pow_element(b, 1u128 << (a - 2)))
        .collect();
    let candidates = central_subgroup_from_generators(g, &deep);
    let hit = candidates.for_each_element(g, &mut |el| {
        let order_four = g.element_order_exponent(el) == 2;
        if order_four
            && phi.contains_vector(el)
            && coset_order_exponent(g, &der, el) == c - 1
        {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    hit.is_some()
}

/// Whether the obstruction "a nonabelian group of exponent p (p odd) has a
/// nonabelian automorphism group" applies.
pub fn exponent_p_obstruction(g: &PcPresentation, cap: u64) -> Result<bool, StructureError> {
    let nonabelian = g.nontrivial_comms().next().is_some();
    Ok(nonabelian && g.p() != 2 && exponent_of_group(g, cap)? == 1)
}

/// Structural shape forced on any odd-p group whose full automorphism group
/// is elementary abelian: the center or the derived subgroup coincides with
/// the Frattini subgroup and is elementary abelian, and the group exponent
/// is exactly p^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// Center = Frattini subgroup, elementary abelian.
    pub center_branch: bool,
    /// Derived = Frattini subgroup, elementary abelian.
    pub derived_branch: bool,
    /// Group exponent is exactly p^2.
    pub exponent_p_squared: bool,
    /// Some branch holds and the exponent is right: the necessary shape for
    /// an elementary abelian automorphism group.
    pub admissible: bool,
}

/// Evaluate the necessary shape conditions for an elementary abelian full
/// automorphism group at odd primes.
pub fn elementary_aut_shape(g: &PcPresentation, cap: u64) -> Result<ShapeReport, StructureError> {
    assert!(g.p() != 2, "the shape dichotomy applies to odd primes");
    let z = center(g);
    let der = derived_subgroup(g);
    let phi = frattini_subgroup(g);
    let center_branch = z.exponent_exponent() <= 1
        && crate::structure::central_equals_linear(g, &z, &phi);
    let derived_branch = der.span().exponent_exponent() <= 1 && der == phi;
    let exponent_p_squared = exponent_of_group(g, cap)? == 2;
    Ok(ShapeReport {
        center_branch,
        derived_branch,
        exponent_p_squared,
        admissible: (center_branch || derived_branch) && exponent_p_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::presentation::PcPresentation;

    /// 2-generator group of order p^5 in which the commutator is a p^2-th
    /// power: central automorphisms do not commute.
    fn modular_like(p: u64) -> PcPresentation {
        let g = PcPresentation::new(p, vec![3, 2], &[(0, 1, vec![p * p, 0])]).unwrap();
        assert!(g.validate_consistency().failures.is_empty());
        g
    }

    #[test]
    fn abelian_criterion_on_first_family() {
        let r4 = autcent_abelian_odd(&families::family_a(3, 4));
        assert_eq!(
            (r4.exps.center, r4.exps.derived, r4.exps.quotient, r4.exps.floor),
            (2, 2, 2, 2)
        );
        assert!(r4.layers_match && !r4.tail_cyclic && r4.abelian);

        let r5 = autcent_abelian_odd(&families::family_a(3, 5));
        assert_eq!(
            (r5.exps.center, r5.exps.derived, r5.exps.quotient, r5.exps.floor),
            (3, 2, 3, 3)
        );
        assert!(r5.layers_match && r5.tail_cyclic && r5.abelian);

        let r6 = autcent_abelian_odd(&families::family_a(3, 6));
        assert_eq!(r6.exps.floor, 4);
        assert!(r6.abelian);
    }

    #[test]
    fn abelian_criterion_on_elementary_families() {
        let rb = autcent_abelian_odd(&families::family_b(3));
        assert_eq!(
            (rb.exps.center, rb.exps.derived, rb.exps.quotient, rb.exps.floor),
            (2, 1, 1, 1)
        );
        assert!(rb.layers_match && rb.abelian);

        let rc = autcent_abelian_odd(&families::family_c(3));
        assert_eq!(
            (rc.exps.center, rc.exps.derived, rc.exps.quotient, rc.exps.floor),
            (1, 1, 2, 1)
        );
        assert!(rc.layers_match && rc.abelian);
    }

    #[test]
    fn abelian_criterion_rejects_modular_like_group() {
        let r = autcent_abelian_odd(&modular_like(3));
        assert_eq!(
            (r.exps.center, r.exps.derived, r.exps.quotient, r.exps.floor),
            (2, 1, 2, 2)
        );
        assert!(r.layers_match);
        assert!(!r.tail_cyclic);
        assert!(!r.abelian);
    }

    #[test]
    fn layer_mismatch_is_reported() {
        // With an abelian direct factor the small central layer strictly
        // exceeds the power layer (data-level check; the abelian-Autcent
        // interpretation would additionally need pure nonabelianness).
        let r = autcent_abelian_odd(&families::heisenberg_times_cyclic(3));
        assert!(!r.layers_match);
        assert!(!r.abelian);
    }

    #[test]
    fn elementary_criterion_odd() {
        assert!(autcent_elementary_abelian_odd(&families::family_b(3)));
        assert!(autcent_elementary_abelian_odd(&families::family_c(3)));
        assert!(!autcent_elementary_abelian_odd(&families::family_a(3, 4)));
        assert!(!autcent_elementary_abelian_odd(&modular_like(3)));
        assert!(autcent_elementary_abelian_odd(&families::heisenberg(3)));
    }

    #[test]
    fn elementary_criterion_two_families() {
        let rb = autcent_elementary_abelian_two(&families::family_b(2));
        assert_eq!(
            (rb.quotient_exponent_two, rb.center_exponent_two, rb.mixed_clause),
            (true, false, false)
        );
        assert!(rb.elementary_abelian);

        let rc = autcent_elementary_abelian_two(&families::family_c(2));
        assert_eq!(
            (rc.quotient_exponent_two, rc.center_exponent_two, rc.mixed_clause),
            (false, true, false)
        );
        assert!(rc.elementary_abelian);
    }

    #[test]
    fn elementary_criterion_two_mixed_clause() {
        // Modular group of order 16: center C_4, quotient C_4 x C_2; only
        // the mixed clause applies.
        let g = PcPresentation::new(2, vec![3, 1], &[(0, 1, vec![4, 0])]).unwrap();
        assert!(g.validate_consistency().failures.is_empty());
        let r = autcent_elementary_abelian_two(&g);
        assert_eq!(
            (r.quotient_exponent_two, r.center_exponent_two, r.mixed_clause),
            (false, false, true)
        );
        assert!(r.elementary_abelian);

        // Its order-32 sibling has quotient C_4 x C_4, which does not split
        // as cyclic times elementary: no clause applies.
        let h = modular_like(2);
        let rh = autcent_elementary_abelian_two(&h);
        assert!(!rh.quotient_exponent_two && !rh.center_exponent_two && !rh.mixed_clause);
        assert!(!rh.elementary_abelian);
    }

    #[test]
    fn exponent_p_obstruction_cases() {
        let cap = 1 << 16;
        assert!(exponent_p_obstruction(&families::heisenberg(3), cap).unwrap());
        assert!(exponent_p_obstruction(&families::heisenberg(5), cap).unwrap());
        assert!(!exponent_p_obstruction(&families::family_b(3), cap).unwrap());
        assert!(!exponent_p_obstruction(&families::family_c(3), cap).unwrap());
        assert!(!exponent_p_obstruction(&families::elementary_abelian(3, 2), cap).unwrap());
    }

    #[test]
    fn shape_dichotomy_across_families() {
        let cap = 1 << 24;
        let rb = elementary_aut_shape(&families::family_b(3), cap).unwrap();
        assert!(!rb.center_branch && rb.derived_branch && rb.exponent_p_squared);
        assert!(rb.admissible);

        let rc = elementary_aut_shape(&families::family_c(3), cap).unwrap();
        assert!(rc.center_branch && !rc.derived_branch && rc.exponent_p_squared);
        assert!(rc.admissible);

        // The first family has abelian but not elementary abelian Aut, and
        // indeed fails the shape test.
        let ra = elementary_aut_shape(&families::family_a(3, 4), cap).unwrap();
        assert!(!ra.center_branch && !ra.derived_branch);
        assert!(!ra.admissible);
    }
}
