//! Constructors for the group families under study and small control groups.
//!
//! The three parameterized families are four- and five-generator p-groups of
//! class two whose automorphism structure the rest of the crate certifies.
//! Every constructor validates its presentation on the spot, so a returned
//! value is always a consistent group table. The controls (cyclic groups,
//! elementary abelian groups, extraspecial examples) are deliberately plain:
//! they exercise the same code paths on groups whose answers are classical.

use crate::arith::{checked_p_power, is_prime};
use crate::presentation::PcPresentation;

fn build(p: u64, orders: Vec<u32>, comms: &[(usize, usize, Vec<u64>)]) -> PcPresentation {
    let g = PcPresentation::new(p, orders, comms).expect("family data is well-shaped");
    let report = g.validate_consistency();
    assert!(report.is_consistent(), "family data is inconsistent: {:?}", report.failures);
    g
}

fn unit(d: usize, coord: usize, value: u64) -> Vec<u64> {
    let mut v = vec![0u64; d];
    v[coord] = value;
    v
}

/// Family A: generators of orders `p^n, p^4, p^4, p^2` for an odd prime `p`
/// and `n >= 4`, so the group has order `p^(n+10)`.
///
/// Commutators: `[x1,x2] = [x1,x3] = [x3,x4] = x2^(p^2)`,
/// `[x1,x4] = [x2,x4] = x3^(p^2)`, `[x2,x3] = x1^(p^(n-2))`.
pub fn family_a(p: u64, n: u32) -> PcPresentation {
    assert!(is_prime(p) && p != 2, "family A needs an odd prime, got {p}");
    assert!(n >= 4, "family A needs n >= 4, got {n}");
    let p2 = p * p;
    let pn2 = checked_p_power(p, n - 2).expect("p^(n-2) must fit in 63 bits");
    build(
        p,
        vec![n, 4, 4, 2],
        &[
            (0, 1, unit(4, 1, p2)),
            (0, 2, unit(4, 1, p2)),
            (0, 3, unit(4, 2, p2)),
            (1, 2, unit(4, 0, pn2)),
            (1, 3, unit(4, 2, p2)),
            (2, 3, unit(4, 1, p2)),
        ],
    )
}

/// Family B: five generators of orders `p^2, p^2, p^2, p^2, p`, any prime,
/// group order `p^9`.
///
/// Commutators: `[x1,x2] = [x1,x5] = x1^p`, `[x1,x3] = x3^p`,
/// `[x2,x3] = x2^p`, `[x2,x5] = [x3,x5] = x4^p`; all pairs involving `x4`
/// commute.
pub fn family_b(p: u64) -> PcPresentation {
    assert!(is_prime(p), "family B needs a prime, got {p}");
    build(
        p,
        vec![2, 2, 2, 2, 1],
        &[
            (0, 1, unit(5, 0, p)),
            (0, 2, unit(5, 2, p)),
            (0, 4, unit(5, 0, p)),
            (1, 2, unit(5, 1, p)),
            (1, 4, unit(5, 3, p)),
            (2, 4, unit(5, 3, p)),
        ],
    )
}

/// Family C: four generators of order `p^2` each, any prime, group order
/// `p^8`.
///
/// Commutators: `[x1,x3] = [x1,x4] = [x3,x4] = x4^p`, `[x2,x3] = x1^p`,
/// `[x2,x4] = x2^p`; `x1` and `x2` commute.
pub fn family_c(p: u64) -> PcPresentation {
    assert!(is_prime(p), "family C needs a prime, got {p}");
    build(
        p,
        vec![2, 2, 2, 2],
        &[
            (0, 2, unit(4, 3, p)),
            (0, 3, unit(4, 3, p)),
            (1, 2, unit(4, 0, p)),
            (1, 3, unit(4, 1, p)),
            (2, 3, unit(4, 3, p)),
        ],
    )
}

/// The extraspecial group of order `p^3` and exponent `p` for odd `p`
/// (for `p = 2` this table is the dihedral group of order 8).
pub fn heisenberg(p: u64) -> PcPresentation {
    assert!(is_prime(p), "need a prime, got {p}");
    build(p, vec![1, 1, 1], &[(0, 1, unit(3, 2, 1))])
}

/// Direct product of [`heisenberg`] with a cyclic group of order `p`,
/// attached as a detached central generator.
pub fn heisenberg_times_cyclic(p: u64) -> PcPresentation {
    assert!(is_prime(p), "need a prime, got {p}");
    build(p, vec![1, 1, 1, 1], &[(0, 1, unit(4, 2, 1))])
}

/// Cyclic group of order `p^e`.
pub fn cyclic(p: u64, e: u32) -> PcPresentation {
    assert!(is_prime(p), "need a prime, got {p}");
    build(p, vec![e], &[])
}

/// Elementary abelian group of rank `d`.
pub fn elementary_abelian(p: u64, d: usize) -> PcPresentation {
    assert!(is_prime(p), "need a prime, got {p}");
    build(p, vec![1; d], &[])
}
