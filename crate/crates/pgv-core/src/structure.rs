//! Characteristic subgroup structure: derived subgroup, center, Frattini
//! subgroup, agemo and omega layers, quotient types, and exactness oracles.
//!
//! Two representations carry everything:
//!
//! * **Linear subgroups** ([`SubgroupAboveDerived`]): any subgroup containing
//!   the derived subgroup corresponds exactly to a submodule of
//!   `prod_i Z/p^{e_i}` containing the span of the commutator constants,
//!   because reduction modulo the derived subgroup turns the group product
//!   into plain vector addition. These are stored as Howell forms, giving
//!   canonical equality, membership, and sizes.
//! * **Central subgroups** ([`CentralSubgroup`]): an independent basis with
//!   element orders, built by sifting generators with an exact discrete-log
//!   search and merging via Smith normal form of the relation lattice. No
//!   step assumes central elements combine additively — every product goes
//!   through exact collection — so the basis orders are the true abelian
//!   invariants.
//!
//! Where both representations can answer a question, the code computes the
//! answer from one and asserts agreement with the other; several routines
//! also re-verify their own output (claimed orders are recomputed from
//! scratch) so a silent arithmetic bug turns into a loud panic.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::arith::{
    checked_p_power, kernel_mod_prime_powers, quotient_type, smith_normal_form, valuation_big,
    Howell, IMat,
};
use crate::collect::{is_identity, Element};
use crate::presentation::PcPresentation;

/// Default ceiling for routines that must enumerate group or subgroup
/// elements; large enough for every shipped example, small enough to fail
/// fast instead of looping for hours.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// Failures of the enumerative routines.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("enumeration would exceed the cap of {cap} elements")]
    CapExceeded { cap: u64 },
}

// ---------------------------------------------------------------------------
// Linear subgroups (those containing the derived subgroup)
// ---------------------------------------------------------------------------

/// A subgroup containing the derived subgroup, stored as the canonical
/// Howell form of its coordinate-vector set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupAboveDerived {
    span: Howell,
}

impl SubgroupAboveDerived {
    pub fn span(&self) -> &Howell {
        &self.span
    }

    /// log_p of the subgroup order.
    pub fn order_exponent(&self) -> u32 {
        self.span.size_exponent()
    }

    pub fn contains_vector(&self, u: &[u64]) -> bool {
        self.span.contains(u)
    }

    pub fn contains_subgroup(&self, other: &SubgroupAboveDerived) -> bool {
        other.span.rows.iter().all(|r| self.span.contains(r))
    }
}

fn linear(g: &PcPresentation, gens: &[Vec<u64>]) -> SubgroupAboveDerived {
    SubgroupAboveDerived { span: Howell::new(g.p(), g.moduli(), gens) }
}

fn comm_vectors(g: &PcPresentation) -> Vec<Vec<u64>> {
    g.nontrivial_comms().map(|(_, _, c)| c.to_vec()).collect()
}

/// The derived subgroup: the additive span of the commutator constants
/// (consistency validation certifies that this span is closed under the
/// group product and equals the subgroup the commutators generate).
pub fn derived_subgroup(g: &PcPresentation) -> SubgroupAboveDerived {
    linear(g, &comm_vectors(g))
}

/// The whole group as a linear subgroup.
pub fn whole_group(g: &PcPresentation) -> SubgroupAboveDerived {
    let d = g.ngens();
    let gens: Vec<Vec<u64>> = (0..d).map(|i| g.generator(i).to_vec()).collect();
    linear(g, &gens)
}

/// The subgroup generated by all `p^i`-th powers together with the derived
/// subgroup. Reducing modulo the derived subgroup makes powering linear, so
/// this is the span of `p^i * delta_j` plus the commutator constants.
pub fn agemo_with_derived(g: &PcPresentation, i: u32) -> SubgroupAboveDerived {
    let mut gens = comm_vectors(g);
    let step = checked_p_power(g.p(), i).expect("power fits");
    for j in 0..g.ngens() {
        gens.push(g.generator_power(j, step as i128).to_vec());
    }
    linear(g, &gens)
}

/// The Frattini subgroup of a p-group of class at most two: p-th powers
/// together with the derived subgroup.
pub fn frattini_subgroup(g: &PcPresentation) -> SubgroupAboveDerived {
    agemo_with_derived(g, 1)
}

/// The smallest subgroup containing the derived subgroup and the given
/// coordinate vectors.
pub fn derived_join(g: &PcPresentation, extra: &[Vec<u64>]) -> SubgroupAboveDerived {
    let mut gens = comm_vectors(g);
    gens.extend_from_slice(extra);
    linear(g, &gens)
}

/// Order (as a p-exponent) of the coset of `u` in the quotient by a linear
/// subgroup: the least `t` with `u^(p^t)` inside.
pub fn coset_order_exponent(g: &PcPresentation, s: &SubgroupAboveDerived, u: &Element) -> u32 {
    let p = g.p() as u128;
    for t in 0..=g.total_order_exponent() {
        if s.contains_vector(&g.pow_element(u, p.pow(t))) {
            return t;
        }
    }
    unreachable!("the full power of any element reaches the identity");
}

/// Size of a minimal generating set: the rank of the elementary abelian
/// Frattini quotient.
pub fn minimal_generator_count(g: &PcPresentation) -> u32 {
    g.total_order_exponent() - frattini_subgroup(g).order_exponent()
}

/// The coordinate-vector set of the image of the `p^i`-th power map.
///
/// Requires `p` odd and `i` at least the exponent of the derived subgroup:
/// under those hypotheses `u^(p^i)` collapses to the plain scalar multiple
/// `p^i * u`, the power map is an endomorphism, and its image is the span of
/// `p^i * delta_j` — with no derived-subgroup adjunction.
pub fn power_image_span(g: &PcPresentation, i: u32) -> Howell {
    assert!(g.p() != 2, "power images are linear only for odd p");
    assert!(
        i >= derived_subgroup(g).span().exponent_exponent(),
        "power map is an endomorphism only above the derived exponent"
    );
    let step = checked_p_power(g.p(), i).expect("power fits");
    let gens: Vec<Vec<u64>> =
        (0..g.ngens()).map(|j| g.generator_power(j, step as i128).to_vec()).collect();
    Howell::new(g.p(), g.moduli(), &gens)
}

/// Abelian invariants of `top/bottom` for nested linear subgroups, as
/// descending p-power exponents. Quotients of linear subgroups by linear
/// subgroups are modules, so this is the honest group type of the section.
pub fn section_type(
    g: &PcPresentation,
    top: &SubgroupAboveDerived,
    bottom: &SubgroupAboveDerived,
) -> Vec<u32> {
    assert!(top.contains_subgroup(bottom), "section requires nested subgroups");
    quotient_type(g.p(), &span_lattice(g, top.span()), &span_lattice(g, bottom.span()))
}

/// Abelian invariants of the span itself viewed additively. This equals the
/// group type only where the product coincides with addition — the derived
/// subgroup (by consistency validation) qualifies; arbitrary subgroups do
/// not, and central ones should use [`CentralSubgroup::abelian_type`].
pub fn linear_type(g: &PcPresentation, s: &SubgroupAboveDerived) -> Vec<u32> {
    let zero = linear(g, &[]);
    section_type(g, s, &zero)
}

/// Type of the quotient by the derived subgroup.
pub fn abelianization_type(g: &PcPresentation) -> Vec<u32> {
    section_type(g, &whole_group(g), &derived_subgroup(g))
}

/// The integer lattice in `Z^d` whose residues are exactly the span.
fn span_lattice(g: &PcPresentation, s: &Howell) -> Vec<Vec<BigInt>> {
    let d = g.ngens();
    let mut rows: Vec<Vec<BigInt>> = s
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for (j, &m) in g.moduli().iter().enumerate() {
        let mut row = vec![BigInt::zero(); d];
        row[j] = BigInt::from(m);
        rows.push(row);
    }
    rows
}

// ---------------------------------------------------------------------------
// Central subgroups: independent basis with exact arithmetic
// ---------------------------------------------------------------------------

/// A subgroup of the center, as an internal direct product of cyclic groups:
/// independent basis elements with their exact orders (descending).
#[derive(Clone, Debug)]
pub struct CentralSubgroup {
    basis: Vec<Element>,
    order_exps: Vec<u32>,
}

impl CentralSubgroup {
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Orders of the basis elements as p-exponents, descending. Because the
    /// basis is independent, this is the abelian type of the subgroup.
    pub fn abelian_type(&self) -> &[u32] {
        &self.order_exps
    }

    /// log_p of the subgroup order.
    pub fn order_exponent(&self) -> u32 {
        self.order_exps.iter().sum()
    }

    /// log_p of the subgroup exponent.
    pub fn exponent_exponent(&self) -> u32 {
        self.order_exps.first().copied().unwrap_or(0)
    }

    /// Number of elements.
    pub fn size(&self, g: &PcPresentation) -> u128 {
        self.order_exps.iter().map(|&t| (g.p() as u128).pow(t)).product()
    }

    /// Membership, by exact discrete logarithm over the basis.
    pub fn contains(&self, g: &PcPresentation, u: &[u64]) -> bool {
        dlog(g, &self.basis, &self.order_exps, u).is_some()
    }

    /// The element with mixed-radix index `idx` over the basis digit ranges.
    pub fn element_at(&self, g: &PcPresentation, mut idx: u128) -> Element {
        let mut acc = g.identity();
        for (b, &t) in self.basis.iter().zip(&self.order_exps) {
            let ord = (g.p() as u128).pow(t);
            let digit = (idx % ord) as u128;
            idx /= ord;
            if digit != 0 {
                acc = g.multiply(&acc, &g.pow_element(b, digit));
            }
        }
        assert_eq!(idx, 0, "element index out of range");
        acc
    }

    /// Visit every element (in mixed-radix order) until the callback breaks.
    /// Each step costs one group multiplication.
    pub fn for_each_element<B>(
        &self,
        g: &PcPresentation,
        f: &mut impl FnMut(&Element) -> ControlFlow<B>,
    ) -> Option<B> {
        fn rec<B>(
            g: &PcPresentation,
            basis: &[Element],
            orders: &[u64],
            acc: &Element,
            f: &mut impl FnMut(&Element) -> ControlFlow<B>,
        ) -> ControlFlow<B> {
            let Some((b, rest_b)) = basis.split_first() else {
                return f(acc);
            };
            let (&ord, rest_o) = orders.split_first().unwrap();
            let mut cur = acc.clone();
            for digit in 0..ord {
                if digit > 0 {
                    cur = g.multiply(&cur, b);
                }
                rec(g, rest_b, rest_o, &cur, f)?;
            }
            ControlFlow::Continue(())
        }
        let orders: Vec<u64> =
            self.order_exps.iter().map(|&t| checked_p_power(g.p(), t).unwrap()).collect();
        match rec(g, &self.basis, &orders, &g.identity(), f) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }
}

/// Exact discrete logarithm in the abelian group spanned by an independent
/// basis: digits of all exponents are chosen level by level, pruning any
/// branch whose residual has too large an order to be reachable by the
/// remaining adjustments.
fn dlog(
    g: &PcPresentation,
    basis: &[Element],
    order_exps: &[u32],
    target: &[u64],
) -> Option<Vec<u64>> {
    if is_identity(target) {
        return Some(vec![0; basis.len()]);
    }
    if basis.is_empty() {
        return None;
    }
    let p = g.p();
    let maxt = *order_exps.iter().max().unwrap();
    // powers[i][l] = basis[i]^(p^l)
    let powers: Vec<Vec<Element>> = basis
        .iter()
        .zip(order_exps)
        .map(|(b, &t)| {
            let mut row = vec![SmallVec::from_slice(b.as_slice())];
            for _ in 1..t {
                let last = row.last().unwrap();
                row.push(g.pow_element(last, p as u128));
            }
            row
        })
        .collect();

    struct Ctx<'a> {
        g: &'a PcPresentation,
        order_exps: &'a [u32],
        powers: &'a [Vec<Element>],
        target: &'a [u64],
        p: u64,
        maxt: u32,
    }

    fn level<'a>(ctx: &Ctx<'a>, l: u32, partial: &Element, xs: &mut Vec<u64>) -> bool {
        let residual = ctx.g.multiply(&ctx.g.inverse(partial), ctx.target);
        if is_identity(&residual) {
            return true;
        }
        if l == ctx.maxt {
            return false;
        }
        // Remaining adjustments generate a group of exponent
        // p^(max over active t_i - l); anything of larger order is stuck.
        let reach = ctx
            .order_exps
            .iter()
            .filter(|&&t| t > l)
            .map(|&t| t - l)
            .max()
            .unwrap_or(0);
        if ctx.g.element_order_exponent(&residual) > reach {
            return false;
        }
        let active: Vec<usize> =
            (0..ctx.order_exps.len()).filter(|&i| ctx.order_exps[i] > l).collect();
        choose(ctx, l, &active, 0, partial, xs)
    }

    fn choose<'a>(
        ctx: &Ctx<'a>,
        l: u32,
        active: &[usize],
        ai: usize,
        partial: &Element,
        xs: &mut Vec<u64>,
    ) -> bool {
        if ai == active.len() {
            return level(ctx, l + 1, partial, xs);
        }
        let i = active[ai];
        let step = &ctx.powers[i][l as usize];
        let place = checked_p_power(ctx.p, l).unwrap();
        let saved = xs[i];
        let mut cur = SmallVec::from_slice(partial.as_slice());
        for digit in 0..ctx.p {
            if digit > 0 {
                cur = ctx.g.multiply(&cur, step);
            }
            xs[i] = saved + digit * place;
            if choose(ctx, l, active, ai + 1, &cur, xs) {
                return true;
            }
        }
        xs[i] = saved;
        false
    }

    let ctx = Ctx { g, order_exps, powers: &powers, target, p, maxt };
    let mut xs = vec![0u64; basis.len()];
    let start = g.identity();
    if level(&ctx, 0, &start, &mut xs) {
        debug_assert!({
            let mut prod = g.identity();
            for (b, &x) in basis.iter().zip(&xs) {
                prod = g.multiply(&prod, &g.pow_element(b, x as u128));
            }
            prod.as_slice() == target
        });
        Some(xs)
    } else {
        None
    }
}

/// Build a [`CentralSubgroup`] by sifting central generators into an
/// independent basis. Each merge solves for the smallest power of the new
/// element that lands in the current span, then renormalizes the extended
/// relation lattice through Smith normal form; claimed orders are re-verified
/// by exact arithmetic.
pub fn central_subgroup_from_generators(
    g: &PcPresentation,
    gens: &[Element],
) -> CentralSubgroup {
    let mut basis: Vec<Element> = Vec::new();
    let mut exps: Vec<u32> = Vec::new();
    for gen in gens {
        debug_assert!(
            (0..g.ngens()).all(|i| {
                let gi = g.generator(i);
                g.multiply(gen, &gi) == g.multiply(&gi, gen)
            }),
            "generator of a central subgroup must be central"
        );
        merge(g, &mut basis, &mut exps, gen);
    }
    CentralSubgroup { basis, order_exps: exps }
}

fn merge(g: &PcPresentation, basis: &mut Vec<Element>, exps: &mut Vec<u32>, new: &Element) {
    if is_identity(new) {
        return;
    }
    let t_new = g.element_order_exponent(new);
    let p = g.p();
    let (j, coeffs) = (0..=t_new)
        .find_map(|j| {
            let pw = g.pow_element(new, (p as u128).pow(j));
            dlog(g, basis, exps, &pw).map(|c| (j, c))
        })
        .expect("the full power of any element reaches the identity");
    if j == 0 {
        return; // already inside the span
    }

    // Relation lattice of <basis, new>: the diagonal of basis orders plus
    // the sifted relation new^(p^j) = prod basis^coeffs. The lattice index
    // equals the group order, so these rows generate all relations.
    let r = basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(r + 1);
    for (i, &t) in exps.iter().enumerate() {
        let mut row = vec![BigInt::zero(); r + 1];
        row[i] = BigInt::from(checked_p_power(p, t).unwrap());
        rows.push(row);
    }
    let mut rel: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    rel.push(-BigInt::from(checked_p_power(p, j).unwrap()));
    rows.push(rel);

    let snf = smith_normal_form(&IMat::from_rows(&rows));
    let mut old: Vec<Element> = basis.clone();
    old.push(new.clone());
    let old_orders: Vec<u64> = exps
        .iter()
        .map(|&t| checked_p_power(p, t).unwrap())
        .chain([checked_p_power(p, t_new).unwrap()])
        .collect();

    let before: u32 = exps.iter().sum();
    basis.clear();
    exps.clear();
    for (i, di) in snf.diag.iter().enumerate() {
        assert!(!di.is_zero(), "relation lattice must have full rank");
        if di.is_one() {
            continue;
        }
        let s = valuation_big(di, p);
        assert_eq!(di.abs(), BigInt::from(p).pow(s), "invariant factor must be a p-power");
        let mut h = g.identity();
        for (k, el) in old.iter().enumerate() {
            let e = snf.v_inv[(i, k)].mod_floor(&BigInt::from(old_orders[k]));
            let e = e.to_u64().expect("reduced exponent fits");
            if e != 0 {
                h = g.multiply(&h, &g.pow_element(el, e as u128));
            }
        }
        assert_eq!(g.element_order_exponent(&h), s, "basis order must match its invariant");
        basis.push(h);
        exps.push(s);
    }
    // Descending, canonical for reporting.
    let mut paired: Vec<(u32, Element)> = exps.drain(..).zip(basis.drain(..)).collect();
    paired.sort_by(|a, b| b.0.cmp(&a.0));
    for (t, b) in paired {
        exps.push(t);
        basis.push(b);
    }
    let after: u32 = exps.iter().sum();
    assert_eq!(after, before + j, "merge must grow the span by exactly p^j");
}

/// The center, from the linear commuting conditions: `a` is central iff for
/// every generator `g` the correction sums of `a * g` and `g * a` agree,
/// which is a linear system over the coordinate rings. The resulting basis
/// is cross-checked against the Howell span of the solution set.
pub fn center(g: &PcPresentation) -> CentralSubgroup {
    let d = g.ngens();
    let moduli = g.moduli();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut row_moduli: Vec<u64> = Vec::new();
    for gen in 0..d {
        for m in 0..d {
            let mut row = vec![0i128; d];
            for k in gen + 1..d {
                row[k] += g.comm(k, gen)[m] as i128;
            }
            for k in 0..gen {
                row[k] -= g.comm(gen, k)[m] as i128;
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
                row_moduli.push(moduli[m]);
            }
        }
    }
    let sols: Vec<Vec<u64>> = if rows.is_empty() {
        // No constraints at all (abelian): the generators span everything.
        (0..d).map(|i| g.generator(i).to_vec()).collect()
    } else {
        kernel_mod_prime_powers(&rows, &row_moduli, moduli)
    };
    let gens: Vec<Element> = sols.iter().map(|v| SmallVec::from_slice(v)).collect();
    let z = central_subgroup_from_generators(g, &gens);
    let linear_size = Howell::new(g.p(), moduli, &sols).size_exponent();
    assert_eq!(
        z.order_exponent(),
        linear_size,
        "sifted center size must match its linear span"
    );
    z
}

/// `Omega_k` of a central subgroup: elements killed by `p^k`. With an
/// independent basis this is generated by `b^(p^max(t-k,0))` per basis
/// element `b` of order `p^t`.
pub fn omega_of_central(g: &PcPresentation, z: &CentralSubgroup, k: u32) -> CentralSubgroup {
    let p = g.p();
    let mut basis = Vec::new();
    let mut exps = Vec::new();
    for (b, &t) in z.basis.iter().zip(&z.order_exps) {
        let drop = t.saturating_sub(k);
        let el = if drop == 0 {
            b.clone()
        } else {
            g.pow_element(b, (p as u128).pow(drop))
        };
        let s = t.min(k);
        if s == 0 || is_identity(&el) {
            continue;
        }
        assert_eq!(g.element_order_exponent(&el), s);
        basis.push(el);
        exps.push(s);
    }
    CentralSubgroup { basis, order_exps: exps }
}

/// The coordinate-vector span of a central subgroup that contains the
/// derived subgroup (asserted), as a linear subgroup.
pub fn linear_span_of_central(g: &PcPresentation, z: &CentralSubgroup) -> SubgroupAboveDerived {
    let mut gens: Vec<Vec<u64>> = z.basis.iter().map(|b| b.to_vec()).collect();
    gens.extend(comm_vectors(g));
    let s = linear(g, &gens);
    assert_eq!(
        s.order_exponent(),
        z.order_exponent(),
        "central subgroup must contain the derived subgroup for a linear span"
    );
    s
}

// ---------------------------------------------------------------------------
// Quotient bases
// ---------------------------------------------------------------------------

/// Basis data for the quotient by a linear subgroup: independent coset
/// representatives with coset orders, plus the coordinates of every group
/// generator's coset in that basis. Orders follow the Smith chain
/// (ascending divisibility), aligned with `gen_coords` columns.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub reps: Vec<Element>,
    pub order_exps: Vec<u32>,
    pub gen_coords: Vec<Vec<u64>>,
}

/// Compute a [`QuotientBasis`] for `G/bottom`. The construction re-verifies
/// itself: claimed coset orders and the generator decompositions are checked
/// by exact arithmetic before returning.
pub fn quotient_basis(g: &PcPresentation, bottom: &SubgroupAboveDerived) -> QuotientBasis {
    let d = g.ngens();
    let p = g.p();
    let snf = smith_normal_form(&IMat::from_rows(&span_lattice(g, bottom.span())));
    let mut reps: Vec<Element> = Vec::new();
    let mut order_exps: Vec<u32> = Vec::new();
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..d {
        let di = &snf.diag[i];
        assert!(!di.is_zero(), "quotient lattice must have full rank");
        if di.is_one() {
            continue;
        }
        let s = valuation_big(di, p);
        assert_eq!(di.abs(), BigInt::from(p).pow(s), "coset order must be a p-power");
        let rep: Element = (0..d)
            .map(|jj| {
                snf.v_inv[(i, jj)]
                    .mod_floor(&BigInt::from(g.moduli()[jj]))
                    .to_u64()
                    .expect("coordinate fits")
            })
            .collect();
        // The coset of `rep` must have order exactly p^s.
        assert!(bottom.contains_vector(&g.pow_element(&rep, (p as u128).pow(s))));
        assert!(
            s == 0 || !bottom.contains_vector(&g.pow_element(&rep, (p as u128).pow(s - 1))),
            "coset order is smaller than its invariant factor"
        );
        reps.push(rep);
        order_exps.push(s);
        kept.push(i);
    }
    let gen_coords: Vec<Vec<u64>> = (0..d)
        .map(|j| {
            kept.iter()
                .zip(&order_exps)
                .map(|(&i, &s)| {
                    snf.v[(j, i)]
                        .mod_floor(&BigInt::from(checked_p_power(p, s).unwrap()))
                        .to_u64()
                        .expect("coordinate fits")
                })
                .collect()
        })
        .collect();
    // Every generator must decompose over the basis modulo `bottom`.
    for j in 0..d {
        let mut prod = g.identity();
        for (rep, &c) in reps.iter().zip(&gen_coords[j]) {
            if c != 0 {
                prod = g.multiply(&prod, &g.pow_element(rep, c as u128));
            }
        }
        let diff = g.multiply(&g.generator(j), &g.inverse(&prod));
        assert!(
            bottom.contains_vector(&diff),
            "generator {j} does not decompose over the quotient basis"
        );
    }
    QuotientBasis { reps, order_exps, gen_coords }
}

// ---------------------------------------------------------------------------
// Whole-group enumeration and global invariants
// ---------------------------------------------------------------------------

/// Breadth-first search over the whole group by generator multiplication,
/// visiting every element exactly once. This is the closure oracle: the
/// caller can compare the returned count with the product of the coordinate
/// moduli.
fn bfs_elements(
    g: &PcPresentation,
    cap: u64,
    mut visit: impl FnMut(&Element),
) -> Result<u64, StructureError> {
    let moduli = g.moduli();
    let total_wide: u128 = moduli.iter().map(|&m| m as u128).product();
    if total_wide > cap as u128 {
        return Err(StructureError::CapExceeded { cap });
    }
    let total = total_wide as u64;
    let d = g.ngens();
    let mut strides = vec![1u64; d];
    for i in 1..d {
        strides[i] = strides[i - 1] * moduli[i - 1];
    }
    let encode = |el: &Element| -> u64 {
        el.iter().zip(&strides).map(|(&x, &s)| x * s).sum()
    };
    let gens: Vec<Element> = (0..d).map(|i| g.generator(i)).collect();
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut queue: VecDeque<u64> = VecDeque::new();
    seen[0] |= 1;
    queue.push_back(0);
    let mut count = 0u64;
    while let Some(code) = queue.pop_front() {
        let el: Element = (0..d).map(|i| (code / strides[i]) % moduli[i]).collect();
        visit(&el);
        count += 1;
        for gen in &gens {
            let nb = g.multiply(&el, gen);
            let c = encode(&nb);
            let (w, b) = ((c / 64) as usize, c % 64);
            if seen[w] & (1 << b) == 0 {
                seen[w] |= 1 << b;
                queue.push_back(c);
            }
        }
    }
    Ok(count)
}

/// Number of distinct normal forms reachable from the identity by generator
/// multiplication — equal to the product of the moduli exactly when
/// collection closes on the normal forms.
pub fn enumerate_count(g: &PcPresentation, cap: u64) -> Result<u64, StructureError> {
    bfs_elements(g, cap, |_| {})
}

/// log_p of the group exponent. For odd p a class-two group with trivial
/// power relations has exponent `p^max(e_i)`: binomial coefficients
/// `C(p^k, 2)` keep all collection corrections inside vanishing commutator
/// powers. For `p = 2` that argument fails and the exponent is measured by
/// full enumeration (subject to `cap`).
pub fn exponent_of_group(g: &PcPresentation, cap: u64) -> Result<u32, StructureError> {
    let max_e = *g.order_exponents().iter().max().unwrap();
    if g.p() != 2 {
        debug_assert!((0..g.ngens())
            .all(|i| g.element_order_exponent(&g.generator(i)) == g.order_exponents()[i]));
        return Ok(max_e);
    }
    let mut best = 0;
    bfs_elements(g, cap, |el| {
        best = best.max(g.element_order_exponent(el));
    })?;
    Ok(best)
}

/// Whether the group has no nontrivial abelian direct factor.
///
/// A central element `z` of order `p^k` generates a direct factor iff its
/// coset is a pure cyclic summand of the quotient by the derived subgroup,
/// i.e. `z^(p^(k-1))` lies outside the agemo-with-derived layer at `k`. If
/// the center sits inside the Frattini subgroup no such witness can exist;
/// otherwise the center is searched exhaustively (subject to `cap`).
pub fn is_purely_nonabelian(g: &PcPresentation, cap: u64) -> Result<bool, StructureError> {
    let z = center(g);
    let phi = frattini_subgroup(g);
    if z.basis().iter().all(|b| phi.contains_vector(b)) {
        return Ok(true);
    }
    if z.size(g) > cap as u128 {
        return Err(StructureError::CapExceeded { cap });
    }
    let p = g.p();
    let layers: Vec<SubgroupAboveDerived> = (0..=*g.order_exponents().iter().max().unwrap())
        .map(|k| agemo_with_derived(g, k))
        .collect();
    let witness = z.for_each_element(g, &mut |el| {
        if is_identity(el) {
            return ControlFlow::Continue(());
        }
        let k = g.element_order_exponent(el);
        let tail = g.pow_element(el, (p as u128).pow(k - 1));
        if !layers[k as usize].contains_vector(&tail) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(witness.is_none())
}

/// Equality between a central subgroup and a linear one: containment of the
/// basis plus equal order (both finite, so that settles it).
pub fn central_equals_linear(
    g: &PcPresentation,
    z: &CentralSubgroup,
    l: &SubgroupAboveDerived,
) -> bool {
    let _ = g;
    z.order_exponent() == l.order_exponent()
        && z.basis().iter().all(|b| l.contains_vector(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn family_a34_characteristic_structure() {
        let g = families::family_a(3, 4);
        let der = derived_subgroup(&g);
        assert_eq!(der.order_exponent(), 6);
        assert_eq!(linear_type(&g, &der), vec![2, 2, 2]);

        let z = center(&g);
        assert_eq!(z.abelian_type(), &[2, 2, 2]);
        assert!(central_equals_linear(&g, &z, &der));

        let phi = frattini_subgroup(&g);
        assert_eq!(phi.order_exponent(), 10);
        assert_eq!(minimal_generator_count(&g), 4);

        assert_eq!(abelianization_type(&g), vec![2, 2, 2, 2]);
        // Z/derived is trivial here.
        let zl = linear_span_of_central(&g, &z);
        assert_eq!(section_type(&g, &zl, &der), Vec::<u32>::new());
        assert_eq!(exponent_of_group(&g, DEFAULT_ENUM_CAP).unwrap(), 4);
    }

    #[test]
    fn family_a35_center_is_second_power_layer() {
        let g = families::family_a(3, 5);
        let z = center(&g);
        assert_eq!(z.abelian_type(), &[3, 2, 2]);
        let layer = agemo_with_derived(&g, 2);
        assert!(central_equals_linear(&g, &z, &layer));
        assert_eq!(abelianization_type(&g), vec![3, 2, 2, 2]);
        // Omega_2 of the center drops the top invariant to 2.
        let om = omega_of_central(&g, &z, 2);
        assert_eq!(om.abelian_type(), &[2, 2, 2]);
    }

    #[test]
    fn family_b3_characteristic_structure() {
        let g = families::family_b(3);
        let der = derived_subgroup(&g);
        let phi = frattini_subgroup(&g);
        assert_eq!(der.order_exponent(), 4);
        assert_eq!(der, phi);
        assert_eq!(linear_type(&g, &der), vec![1, 1, 1, 1]);

        let z = center(&g);
        assert_eq!(z.abelian_type(), &[2, 1, 1, 1]);
        // Omega_1 of the center is exactly the derived subgroup.
        let om = omega_of_central(&g, &z, 1);
        assert_eq!(om.order_exponent(), 4);
        assert!(om.basis().iter().all(|b| der.contains_vector(b)));
        assert_eq!(abelianization_type(&g), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn family_c3_characteristic_structure() {
        let g = families::family_c(3);
        let der = derived_subgroup(&g);
        assert_eq!(der.order_exponent(), 3);
        let z = center(&g);
        assert_eq!(z.abelian_type(), &[1, 1, 1, 1]);
        let phi = frattini_subgroup(&g);
        assert_eq!(phi.order_exponent(), 4);
        assert!(central_equals_linear(&g, &z, &phi));
        assert_eq!(abelianization_type(&g), vec![2, 1, 1, 1]);
    }

    #[test]
    fn small_group_enumeration_closes() {
        assert_eq!(enumerate_count(&families::heisenberg(3), 1 << 10).unwrap(), 27);
        assert_eq!(enumerate_count(&families::heisenberg_times_cyclic(3), 1 << 10).unwrap(), 81);
        assert_eq!(enumerate_count(&families::family_c(3), 1 << 20).unwrap(), 6561);
        assert_eq!(enumerate_count(&families::family_b(3), 1 << 20).unwrap(), 19683);
        assert_eq!(
            enumerate_count(&families::family_b(3), 10),
            Err(StructureError::CapExceeded { cap: 10 })
        );
    }

    #[test]
    fn exponent_for_two_groups_is_measured() {
        assert_eq!(exponent_of_group(&families::family_b(2), 1 << 12).unwrap(), 2);
        assert_eq!(exponent_of_group(&families::family_c(2), 1 << 12).unwrap(), 2);
        // The order-8 two-generator table (dihedral) has an order-4 element.
        assert_eq!(exponent_of_group(&families::heisenberg(2), 1 << 6).unwrap(), 2);
    }

    #[test]
    fn purity_detection() {
        for (g, want) in [
            (families::family_a(3, 4), true),
            (families::family_a(3, 6), true),
            (families::family_b(3), true),
            (families::family_c(3), true),
            (families::heisenberg(3), true),
            (families::heisenberg_times_cyclic(3), false),
            (families::elementary_abelian(3, 2), false),
            (families::cyclic(3, 2), false),
        ] {
            assert_eq!(is_purely_nonabelian(&g, 1 << 16).unwrap(), want, "{:?}", g.moduli());
        }
    }

    #[test]
    fn purity_scales_through_the_frattini_shortcut() {
        // Center of order 5^14: must decide without enumerating it.
        let g = families::family_a(5, 8);
        assert!(is_purely_nonabelian(&g, 1 << 10).unwrap());
    }

    #[test]
    fn center_of_abelian_group_is_everything() {
        let g = families::elementary_abelian(3, 2);
        let z = center(&g);
        assert_eq!(z.abelian_type(), &[1, 1]);
        let g9 = families::cyclic(3, 2);
        assert_eq!(center(&g9).abelian_type(), &[2]);
    }

    #[test]
    fn heisenberg_center_and_quotients() {
        let g = families::heisenberg(3);
        let z = center(&g);
        assert_eq!(z.abelian_type(), &[1]);
        assert!(central_equals_linear(&g, &z, &derived_subgroup(&g)));
        assert_eq!(abelianization_type(&g), vec![1, 1]);
        assert_eq!(minimal_generator_count(&g), 2);
    }

    #[test]
    fn quotient_basis_reconstructs_generators() {
        for g in [
            families::family_a(3, 4),
            families::family_a(3, 5),
            families::family_b(3),
            families::family_c(3),
            families::heisenberg(3),
        ] {
            let qb = quotient_basis(&g, &derived_subgroup(&g));
            // Orders multiply to the quotient size (internal asserts already
            // verified decomposition and coset orders).
            let total: u32 = qb.order_exps.iter().sum();
            assert_eq!(
                total,
                g.total_order_exponent() - derived_subgroup(&g).order_exponent()
            );
            // And the recorded type matches the section type up to order.
            let mut a = qb.order_exps.clone();
            a.sort_unstable_by(|x, y| y.cmp(x));
            assert_eq!(a, abelianization_type(&g));
        }
    }

    #[test]
    fn power_image_span_matches_agemo_when_it_contains_derived() {
        let g = families::family_a(3, 5);
        let img = power_image_span(&g, 2);
        let agemo = agemo_with_derived(&g, 2);
        assert_eq!(&img, agemo.span());
    }

    #[test]
    fn central_subgroup_element_iteration() {
        let g = families::family_b(3);
        let z = center(&g);
        assert_eq!(z.size(&g), 243);
        let mut seen = std::collections::BTreeSet::new();
        z.for_each_element::<()>(&g, &mut |el| {
            seen.insert(el.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 243);
        // Every enumerated element is central and matches element_at.
        for (idx, el) in seen.iter().enumerate().take(5) {
            let _ = idx;
            assert!(z.contains(&g, el));
        }
        let e0 = z.element_at(&g, 0);
        assert!(is_identity(&e0));
    }
}
