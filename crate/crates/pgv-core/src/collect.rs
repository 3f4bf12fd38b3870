//! Exact group operations on normal-form coordinate vectors.
//!
//! An element of a consistent presentation is the coordinate vector of its
//! normal form `x_1^{u_1} ... x_d^{u_d}`. Multiplying two normal forms
//! collects the right-hand word through the left one: moving `x_k^{u_k}` past
//! `x_j^{v_j}` with `k > j` deposits the central correction
//! `[x_k, x_j]^{u_k v_j}`, so coordinatewise
//!
//! ```text
//! (u * v)_m = u_m + v_m + sum_{k > j} u_k v_j c(k,j)_m   (mod p^{e_m})
//! ```
//!
//! where `c(k,j)` is the stored commutator vector. Nothing else takes a
//! shortcut: inverses fold generator powers through this product one at a
//! time, integer powers use binary exponentiation over it, and commutators
//! expand their defining word `u^-1 v^-1 u v`. In particular no operation
//! assumes that central elements combine by plain vector addition — the
//! correction sum can be nonzero even when one factor is central.

use smallvec::SmallVec;

use crate::arith::{add_mod, mul_mod, neg_mod, reduce_i128};
use crate::presentation::PcPresentation;

/// Normal-form coordinate vector. The inline capacity covers every group
/// this crate ships; larger ranks spill to the heap transparently.
pub type Element = SmallVec<[u64; 8]>;

/// True for the identity vector.
pub fn is_identity(u: &[u64]) -> bool {
    u.iter().all(|&x| x == 0)
}

impl PcPresentation {
    /// The identity element.
    pub fn identity(&self) -> Element {
        SmallVec::from_elem(0, self.ngens())
    }

    /// The `i`-th generator (0-based) as an element.
    pub fn generator(&self, i: usize) -> Element {
        self.generator_power(i, 1)
    }

    /// `x_i^a` for a signed exponent; exact because powers of a single
    /// generator never produce collection corrections.
    pub fn generator_power(&self, i: usize, a: i128) -> Element {
        let mut u = self.identity();
        u[i] = reduce_i128(a, self.moduli()[i]);
        u
    }

    /// The correction sum `sum_{k > j} u_k v_j c(k,j)` reduced coordinatewise.
    pub fn b_correction(&self, u: &[u64], v: &[u64]) -> Element {
        let d = self.ngens();
        let moduli = self.moduli();
        let mut out = self.identity();
        for k in 1..d {
            if u[k] == 0 {
                continue;
            }
            for j in 0..k {
                if v[j] == 0 {
                    continue;
                }
                let uv = u[k] as u128 * v[j] as u128;
                let c = self.comm(k, j);
                for m in 0..d {
                    if c[m] != 0 {
                        let f = (uv % moduli[m] as u128) as u64;
                        out[m] = add_mod(out[m], mul_mod(f, c[m], moduli[m]), moduli[m]);
                    }
                }
            }
        }
        out
    }

    /// The group product of two normal forms.
    pub fn multiply(&self, u: &[u64], v: &[u64]) -> Element {
        let moduli = self.moduli();
        let mut out = self.b_correction(u, v);
        for m in 0..self.ngens() {
            out[m] = add_mod(out[m], add_mod(u[m], v[m], moduli[m]), moduli[m]);
        }
        out
    }

    /// The group inverse, as the product `x_d^{-u_d} ... x_1^{-u_1}`.
    pub fn inverse(&self, u: &[u64]) -> Element {
        let mut acc = self.identity();
        for k in (0..self.ngens()).rev() {
            if u[k] != 0 {
                let g = self.generator_power(k, -(u[k] as i128));
                acc = self.multiply(&acc, &g);
            }
        }
        debug_assert!(is_identity(&self.multiply(u, &acc)));
        acc
    }

    /// `u^n` for a non-negative exponent, by binary exponentiation.
    pub fn pow_element(&self, u: &[u64], n: u128) -> Element {
        let mut base: Element = SmallVec::from_slice(u);
        let mut acc = self.identity();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `u^n` for any signed exponent.
    pub fn power(&self, u: &[u64], n: i128) -> Element {
        if n >= 0 {
            self.pow_element(u, n as u128)
        } else {
            let inv = self.inverse(u);
            self.pow_element(&inv, n.unsigned_abs())
        }
    }

    /// The commutator `u^-1 v^-1 u v`.
    pub fn commutator(&self, u: &[u64], v: &[u64]) -> Element {
        let a = self.multiply(&self.inverse(u), &self.inverse(v));
        let b = self.multiply(u, v);
        self.multiply(&a, &b)
    }

    /// `t` such that the order of `u` is `p^t`; repeated p-th powers must
    /// reach the identity within the group's order, so the loop is bounded.
    pub fn element_order_exponent(&self, u: &[u64]) -> u32 {
        let cap = self.total_order_exponent();
        let mut v: Element = SmallVec::from_slice(u);
        let mut t = 0;
        while !is_identity(&v) {
            v = self.pow_element(&v, self.p() as u128);
            t += 1;
            assert!(t <= cap, "order exceeds the group order; presentation is inconsistent");
        }
        t
    }

    /// The order of `u` as an integer.
    pub fn element_order(&self, u: &[u64]) -> u64 {
        self.p().pow(self.element_order_exponent(u))
    }

    /// Negate a vector coordinatewise. This is the group inverse only for
    /// elements of the derived subgroup of a validated presentation; general
    /// callers want [`PcPresentation::inverse`].
    pub fn negate_coords(&self, u: &[u64]) -> Element {
        u.iter().zip(self.moduli()).map(|(&x, &m)| neg_mod(x, m)).collect()
    }
}
