//! Symbolic relation systems: the defining relations applied to a generic
//! endomorphism, as polynomial congruences over the image coordinates.
//!
//! A candidate endomorphism sends generator `x_i` to the normal form with
//! coordinates `(a_i1, ..., a_id)`; the `a_ij` are the unknowns, with
//! `a_ij` ranging modulo the order of `x_j`. Replaying the power and
//! commutator relations on these generic images produces, per relation and
//! coordinate, one congruence `F(a) = 0 (mod p^t)` with `F` a polynomial of
//! degree at most four. A separate *linear* system expresses that the map
//! moves every generator by a central factor.
//!
//! Exactness is load-bearing and guarded twice. The closed power formula
//! `u^N = N*u + binom(N,2)*B(u,u)` (with `B` the collection correction)
//! holds when corrections never interact with commutator constants; that
//! is precisely the orthogonality [`generate_system`] asserts before
//! building anything. Independently, the test suite bridges every symbolic
//! operation against exact collection on concrete assignments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::arith::{checked_p_power, signed_rep};
use crate::collect::is_identity;
use crate::presentation::PcPresentation;

/// Index of an image coordinate variable: `a_ij` (the j-th coordinate of
/// the image of generator i, both 0-based) has id `i * d + j`.
pub type VarId = usize;

/// Display name of a variable, 1-based as in written systems: `a32` is the
/// second coordinate of the third generator's image.
pub fn var_name(d: usize, v: VarId) -> String {
    format!("a{}{}", v / d + 1, v % d + 1)
}

/// A monomial: sorted variable-exponent pairs (exponents at least one).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(VarId, u8); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(SmallVec::from_slice(&[(v, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(VarId, u8); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j == other.0.len()
                || (i < self.0.len() && self.0[i].0 <= other.0[j].0);
            if take_left && j < other.0.len() && i < self.0.len() && self.0[i].0 == other.0[j].0
            {
                out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                i += 1;
                j += 1;
            } else if take_left {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        Monomial(out)
    }

    fn eval_mod(&self, assign: &[u64], m: u64) -> u64 {
        let mut acc = 1 % m;
        for &(v, e) in &self.0 {
            for _ in 0..e {
                acc = crate::arith::mul_mod(acc, assign[v] % m, m);
            }
        }
        acc
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, u8)> + '_ {
        self.0.iter().copied()
    }
}

/// A polynomial with integer coefficients over the image variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        let mut out = Poly::zero();
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Formal partial derivative with respect to one variable.
    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.0.iter().position(|&(w, _)| w == v) {
                let e = m.0[pos].1;
                let mut rest = m.clone();
                if e == 1 {
                    rest.0.remove(pos);
                } else {
                    rest.0[pos].1 -= 1;
                }
                out.add_term(rest, c * BigInt::from(e));
            }
        }
        out
    }

    /// Evaluate modulo `m`.
    pub fn eval_mod(&self, assign: &[u64], m: u64) -> u64 {
        let mut acc = 0u64;
        for (mono, c) in &self.terms {
            let cm = c.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits");
            acc = crate::arith::add_mod(
                acc,
                crate::arith::mul_mod(cm, mono.eval_mod(assign, m), m),
                m,
            );
        }
        acc
    }

    /// Reduce every coefficient to its minimal signed representative modulo
    /// `m`, dropping terms that vanish.
    pub fn reduce_signed(&self, m: u64) -> Poly {
        let mut out = Poly::zero();
        for (mono, c) in &self.terms {
            let r = c.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits");
            out.add_term(mono.clone(), BigInt::from(signed_rep(r, m)));
        }
        out
    }

    /// Render in the written-system format: signed terms, `*`-joined
    /// factors, 1-based variable names.
    pub fn to_text(&self, d: usize) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || mono.is_one() {
                factors.push(abs.to_string());
            }
            for (v, e) in mono.vars() {
                for _ in 0..e {
                    factors.push(var_name(d, v));
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

/// One congruence `poly = 0 (mod p^modulus_exp)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub poly: Poly,
    pub modulus_exp: u32,
}

impl Congruence {
    /// Whether the congruence holds at a concrete assignment.
    pub fn holds(&self, p: u64, assign: &[u64]) -> bool {
        let m = checked_p_power(p, self.modulus_exp).expect("modulus fits");
        self.poly.eval_mod(assign, m) == 0
    }

    /// Canonical form: coefficients reduced to signed representatives, the
    /// p-power content divided out (lowering the modulus), repeated until
    /// stable. `None` when the congruence is vacuous.
    pub fn normalized(&self, p: u64) -> Option<Congruence> {
        let mut t = self.modulus_exp;
        let mut poly = self.poly.clone();
        loop {
            if t == 0 {
                return None;
            }
            let m = checked_p_power(p, t).expect("modulus fits");
            poly = poly.reduce_signed(m);
            if poly.is_zero() {
                return None;
            }
            let content = poly
                .terms()
                .map(|(_, c)| crate::arith::valuation_big(&c.abs(), p))
                .min()
                .unwrap();
            if content == 0 {
                return Some(Congruence { poly, modulus_exp: t });
            }
            let divisor = BigInt::from(p).pow(content.min(t));
            let mut reduced = Poly::zero();
            for (mono, c) in poly.terms() {
                reduced.add_term(mono.clone(), c / &divisor);
            }
            poly = reduced;
            t -= content.min(t);
        }
    }
}

/// A symbolic group element: one polynomial per normal-form coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement(pub Vec<Poly>);

impl SymElement {
    pub fn identity(d: usize) -> Self {
        SymElement(vec![Poly::zero(); d])
    }

    /// Concrete element, as a symbolic one.
    pub fn from_vector(v: &[u64], moduli: &[u64]) -> Self {
        SymElement(
            v.iter()
                .zip(moduli)
                .map(|(&x, &m)| {
                    if x == 0 {
                        Poly::zero()
                    } else {
                        Poly::constant(BigInt::from(signed_rep(x, m)))
                    }
                })
                .collect(),
        )
    }

    /// The generic image of generator `i`: coordinate `j` is variable `a_ij`.
    pub fn generic(d: usize, i: usize) -> Self {
        SymElement((0..d).map(|j| Poly::var(i * d + j)).collect())
    }

    /// Evaluate every coordinate at an assignment, giving a normal form.
    pub fn eval(&self, g: &PcPresentation, assign: &[u64]) -> crate::collect::Element {
        self.0
            .iter()
            .zip(g.moduli())
            .map(|(p, &m)| p.eval_mod(assign, m))
            .collect()
    }
}

/// Signed minimal representative of a stored commutator coordinate.
fn signed_comm(g: &PcPresentation, k: usize, j: usize, m: usize) -> BigInt {
    BigInt::from(signed_rep(g.comm(k, j)[m], g.moduli()[m]))
}

/// Collection correction of two symbolic elements:
/// `B(u, v)_m = sum over k > j of u_k v_j c_(k,j),m`.
fn sym_correction(g: &PcPresentation, u: &SymElement, v: &SymElement) -> SymElement {
    let d = g.ngens();
    let mut out = SymElement::identity(d);
    for (k, j, _) in g.nontrivial_comms() {
        let prod = u.0[k].mul(&v.0[j]);
        for m in 0..d {
            let c = signed_comm(g, k, j, m);
            if !c.is_zero() {
                out.0[m] = out.0[m].add(&prod.scale(&c));
            }
        }
    }
    out
}

/// Symbolic collection product: `u * v = u + v + B(u, v)` coordinate-wise.
pub fn sym_multiply(g: &PcPresentation, u: &SymElement, v: &SymElement) -> SymElement {
    let b = sym_correction(g, u, v);
    SymElement(
        (0..g.ngens())
            .map(|m| u.0[m].add(&v.0[m]).add(&b.0[m]))
            .collect(),
    )
}

/// Symbolic power: `u^n = n*u + binom(n,2) * B(u, u)`. Exact under the
/// correction orthogonality that [`generate_system`] asserts.
pub fn sym_power(g: &PcPresentation, u: &SymElement, n: u128) -> SymElement {
    let b = sym_correction(g, u, u);
    let n_big = BigInt::from(n);
    let choose2 = (&n_big * (&n_big - BigInt::one())) / BigInt::from(2);
    SymElement(
        (0..g.ngens())
            .map(|m| u.0[m].scale(&n_big).add(&b.0[m].scale(&choose2)))
            .collect(),
    )
}

/// Symbolic commutator:
/// `[u, v]_m = sum over k > j of (u_k v_j - u_j v_k) c_(k,j),m`.
pub fn sym_commutator(g: &PcPresentation, u: &SymElement, v: &SymElement) -> SymElement {
    let d = g.ngens();
    let mut out = SymElement::identity(d);
    for (k, j, _) in g.nontrivial_comms() {
        let skew = u.0[k].mul(&v.0[j]).sub(&u.0[j].mul(&v.0[k]));
        for m in 0..d {
            let c = signed_comm(g, k, j, m);
            if !c.is_zero() {
                out.0[m] = out.0[m].add(&skew.scale(&c));
            }
        }
    }
    out
}

/// The full congruence system for a generic endomorphism, plus the linear
/// system describing central maps.
#[derive(Clone, Debug)]
pub struct CongruenceSystem {
    /// Normalized congruences any endomorphism's coordinates satisfy
    /// (power relations and commutator relations, all coordinates).
    pub relations: Vec<Congruence>,
    /// Normalized linear congruences characterizing central maps: the shift
    /// of every generator commutes with every generator.
    pub centrality: Vec<Congruence>,
    /// Number of generators; there are `ngens^2` variables.
    pub ngens: usize,
    /// Modulus of each variable: `a_ij` ranges modulo the order of `x_j`.
    pub var_moduli: Vec<u64>,
}

/// Build the relation and centrality systems for a presentation.
///
/// Panics if the presentation's collection corrections interact with the
/// commutator constants (then the closed power formula would be wrong);
/// all presentations of class-two groups with centrally closed constant
/// spans — in particular every one shipped here — pass.
pub fn generate_system(g: &PcPresentation) -> CongruenceSystem {
    let d = g.ngens();
    let moduli = g.moduli();

    // Correction orthogonality: constants never contribute corrections
    // against generators, in either order.
    for (_, _, c) in g.nontrivial_comms() {
        let c_el: crate::collect::Element = SmallVec::from_slice(c);
        for j in 0..d {
            let gj = g.generator(j);
            assert!(
                is_identity(&g.b_correction(&c_el, &gj))
                    && is_identity(&g.b_correction(&gj, &c_el)),
                "collection corrections must not interact with commutator constants"
            );
        }
    }

    let rows: Vec<SymElement> = (0..d).map(|i| SymElement::generic(d, i)).collect();
    let mut relations = Vec::new();
    let push_zero = |list: &mut Vec<Congruence>, el: &SymElement| {
        for m in 0..d {
            let raw = Congruence { poly: el.0[m].clone(), modulus_exp: g.order_exponents()[m] };
            if let Some(c) = raw.normalized(g.p()) {
                list.push(c);
            }
        }
    };

    // Power relations: the image of x_i dies at the order of x_i.
    for (i, row) in rows.iter().enumerate() {
        let n = checked_p_power(g.p(), g.order_exponents()[i]).expect("order fits") as u128;
        let powered = sym_power(g, row, n);
        push_zero(&mut relations, &powered);
    }

    // Commutator relations: images commute to the image of the recorded
    // normal form.
    for k in 1..d {
        for j in 0..k {
            let lhs = sym_commutator(g, &rows[k], &rows[j]);
            let mut rhs = SymElement::identity(d);
            for (m, &w) in g.comm(k, j).iter().enumerate() {
                if w != 0 {
                    rhs = sym_multiply(g, &rhs, &sym_power(g, &rows[m], w as u128));
                }
            }
            let diff = SymElement(
                (0..d).map(|m| lhs.0[m].sub(&rhs.0[m])).collect(),
            );
            push_zero(&mut relations, &diff);
        }
    }

    // Centrality: for every generator pair (i, gen), the commutator of the
    // image of x_i with x_gen equals that of x_i with x_gen.
    let mut centrality = Vec::new();
    for i in 0..d {
        for gen in 0..d {
            let target = SymElement::generic(d, i);
            let lhs = sym_commutator(
                g,
                &target,
                &SymElement::from_vector(&g.generator(gen), moduli),
            );
            let want = g.commutator(&g.generator(i), &g.generator(gen));
            for m in 0..d {
                let rhs = BigInt::from(signed_rep(want[m], moduli[m]));
                let raw = Congruence {
                    poly: lhs.0[m].sub(&Poly::constant(rhs)),
                    modulus_exp: g.order_exponents()[m],
                };
                if let Some(c) = raw.normalized(g.p()) {
                    centrality.push(c);
                }
            }
        }
    }

    CongruenceSystem {
        relations,
        centrality,
        ngens: d,
        var_moduli: (0..d * d).map(|v| moduli[v % d]).collect(),
    }
}

/// Parse a written system: lines of `t : polynomial`, `#` comments and
/// blank lines ignored. Polynomials use 1-based `aij` variables, `*` for
/// products, and integer coefficients.
pub fn parse_system(d: usize, text: &str) -> Result<Vec<Congruence>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (t_part, poly_part) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected 't : polynomial'", lineno + 1))?;
        let t: u32 = t_part
            .trim()
            .parse()
            .map_err(|_| format!("line {}: bad modulus exponent", lineno + 1))?;
        let poly = parse_poly(d, poly_part)
            .map_err(|e| format!("line {}: {}", lineno + 1, e))?;
        out.push(Congruence { poly, modulus_exp: t });
    }
    Ok(out)
}

fn parse_poly(d: usize, text: &str) -> Result<Poly, String> {
    let mut poly = Poly::zero();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut rest = compact.as_str();
    let mut sign = BigInt::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest
            .find(['+', '-'])
            .unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let (mono, coef) = parse_term(d, term)?;
        poly.add_term(mono, coef * &sign);
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('+') { BigInt::one() } else { -BigInt::one() };
        rest = &tail[1..];
    }
    Ok(poly)
}

fn parse_term(d: usize, term: &str) -> Result<(Monomial, BigInt), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let mut mono = Monomial::one();
    let mut coef = BigInt::one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(format!("empty factor in '{term}'"));
        }
        if let Some(idx) = factor.strip_prefix('a') {
            let digits: Vec<u32> = idx
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| format!("bad variable '{factor}'")))
                .collect::<Result<_, _>>()?;
            if digits.len() != 2 || digits.contains(&0) {
                return Err(format!("bad variable '{factor}'"));
            }
            let (i, j) = (digits[0] as usize - 1, digits[1] as usize - 1);
            if i >= d || j >= d {
                return Err(format!("variable '{factor}' out of range"));
            }
            mono = mono.mul(&Monomial::var(i * d + j));
        } else {
            let n: BigInt = factor
                .parse()
                .map_err(|_| format!("bad coefficient '{factor}'"))?;
            coef *= n;
        }
    }
    Ok((mono, coef))
}
