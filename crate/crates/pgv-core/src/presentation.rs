//! Polycyclic presentations for finite p-groups of nilpotency class at most
//! two, with trivial power relations.
//!
//! A presentation consists of a prime `p`, generator order exponents
//! `e_1, ..., e_d` (generator `x_i` satisfies `x_i^{p^{e_i}} = 1`), and for
//! each pair `i < j` a commutator `[x_i, x_j]` given in normal-form
//! coordinates. Class at most two means every commutator value is central,
//! so words collect to the normal form `x_1^{u_1} ... x_d^{u_d}` and elements
//! are coordinate vectors (see [`crate::collect`]).
//!
//! Internally the table stores, for `k > j`, the collection constant
//! `c(k,j) = [x_k, x_j]` — the value deposited when `x_k` moves left past
//! `x_j`. The text format and the programmatic constructor both take the
//! conventional `[x_i, x_j]` with `i < j`; the constant for the reversed
//! pair is its coordinatewise negation, which agrees with the group inverse
//! on every presentation that passes [`PcPresentation::validate_consistency`]
//! (inconsistent data is rejected before anything downstream runs).
//!
//! The text format, one directive per line, `#` starting a comment line:
//!
//! ```text
//! p = 3
//! generators = 4
//! orders = 4 4 4 2
//! comm 1 2 = 0 9 0 0
//! ```
//!
//! `orders` lists the exponents `e_i`. A `comm i j = v_1 ... v_d` line uses
//! 1-based generator indices with `i < j` and gives the coordinates of
//! `[x_i, x_j]`; omitted pairs commute.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::{checked_p_power, is_prime};
use crate::collect::is_identity;

/// A class-two polycyclic presentation with trivial power relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
    /// For `k > j`, the collection constant `[x_k, x_j]`, indexed by
    /// `k(k-1)/2 + j`.
    comms: Vec<Vec<u64>>,
}

/// Rejection reasons for structurally invalid presentation data.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("generator {gen}: order exponent must be at least 1")]
    ZeroOrder { gen: usize },
    #[error("generator {gen}: p^{exp} does not fit in 63 bits")]
    OrderOverflow { gen: usize, exp: u32 },
    #[error("commutator pair ({i},{j}): indices must be distinct, in range, and ordered i < j")]
    BadCommutatorPair { i: usize, j: usize },
    #[error("commutator pair ({i},{j}) given twice")]
    DuplicateCommutator { i: usize, j: usize },
    #[error("commutator ({i},{j}): value has {got} coordinates, expected {want}")]
    BadCommutatorLength { i: usize, j: usize, got: usize, want: usize },
    #[error("commutator ({i},{j}) coordinate {coord}: value {value} is not below the generator order {modulus}")]
    CoordinateOutOfRange { i: usize, j: usize, coord: usize, value: u64, modulus: u64 },
}

/// A text-format error, pointing at the offending line (1-based).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl PcPresentation {
    /// Build a presentation from order exponents and commutator values.
    ///
    /// `commutators` entries are `(i, j, value)` with 0-based generator
    /// indices, `i < j`, and `value` the normal-form coordinates of the
    /// commutator of generator `i` with generator `j`; omitted pairs commute.
    /// This constructor checks shape only — run
    /// [`Self::validate_consistency`] to certify that the data defines a
    /// group.
    pub fn new(
        p: u64,
        order_exponents: Vec<u32>,
        commutators: &[(usize, usize, Vec<u64>)],
    ) -> Result<Self, PresentationError> {
        if !is_prime(p) {
            return Err(PresentationError::NotPrime(p));
        }
        let d = order_exponents.len();
        if d == 0 {
            return Err(PresentationError::NoGenerators);
        }
        let mut moduli = Vec::with_capacity(d);
        for (gen, &e) in order_exponents.iter().enumerate() {
            if e == 0 {
                return Err(PresentationError::ZeroOrder { gen });
            }
            let m = checked_p_power(p, e)
                .ok_or(PresentationError::OrderOverflow { gen, exp: e })?;
            moduli.push(m);
        }
        let mut comms = vec![vec![0u64; d]; d * (d - 1) / 2];
        let mut seen = vec![false; comms.len()];
        for (i, j, value) in commutators {
            let (i, j) = (*i, *j);
            if i >= j || j >= d {
                return Err(PresentationError::BadCommutatorPair { i, j });
            }
            let idx = j * (j - 1) / 2 + i;
            if seen[idx] {
                return Err(PresentationError::DuplicateCommutator { i, j });
            }
            seen[idx] = true;
            if value.len() != d {
                return Err(PresentationError::BadCommutatorLength {
                    i,
                    j,
                    got: value.len(),
                    want: d,
                });
            }
            for (coord, (&x, &m)) in value.iter().zip(&moduli).enumerate() {
                if x >= m {
                    return Err(PresentationError::CoordinateOutOfRange {
                        i,
                        j,
                        coord,
                        value: x,
                        modulus: m,
                    });
                }
            }
            // Store the constant for moving x_j left past x_i: the negation
            // of the given [x_i, x_j].
            comms[idx] = value
                .iter()
                .zip(&moduli)
                .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
                .collect();
        }
        Ok(PcPresentation { p, exponents: order_exponents, moduli, comms })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of generators.
    pub fn ngens(&self) -> usize {
        self.exponents.len()
    }

    /// Order exponents `e_i` of the generators.
    pub fn order_exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Coordinate moduli `p^{e_i}`.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `log_p` of the group order.
    pub fn total_order_exponent(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// The collection constant `[x_k, x_j]` for `k > j` (0-based).
    pub fn comm(&self, k: usize, j: usize) -> &[u64] {
        assert!(k > j && k < self.ngens());
        &self.comms[k * (k - 1) / 2 + j]
    }

    /// All nontrivial collection constants as `(k, j, value)` with `k > j`.
    pub fn nontrivial_comms(&self) -> impl Iterator<Item = (usize, usize, &[u64])> {
        (1..self.ngens()).flat_map(move |k| {
            (0..k).filter_map(move |j| {
                let c = self.comm(k, j);
                if is_identity(c) {
                    None
                } else {
                    Some((k, j, c))
                }
            })
        })
    }

    /// Parse the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p: Option<(u64, usize)> = None;
        let mut gens: Option<(usize, usize)> = None;
        let mut orders: Option<(Vec<u32>, usize)> = None;
        let mut comms: Vec<(usize, usize, Vec<u64>)> = Vec::new();
        let mut comm_lines: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut last_line = 0;

        fn parse_num<T: std::str::FromStr>(
            tok: &str,
            line: usize,
            what: &str,
        ) -> Result<T, ParseError> {
            tok.parse().map_err(|_| {
                ParseError::new(line, format!("expected {what}, found `{tok}`"))
            })
        }

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = s.split_whitespace().collect();
            match toks[0] {
                "p" => {
                    if toks.len() != 3 || toks[1] != "=" {
                        return Err(ParseError::new(line, "expected `p = <prime>`"));
                    }
                    let v: u64 = parse_num(toks[2], line, "a prime")?;
                    if !is_prime(v) {
                        return Err(ParseError::new(line, format!("{v} is not prime")));
                    }
                    p = Some((v, line));
                }
                "generators" => {
                    if toks.len() != 3 || toks[1] != "=" {
                        return Err(ParseError::new(line, "expected `generators = <count>`"));
                    }
                    let v: usize = parse_num(toks[2], line, "a generator count")?;
                    if v == 0 {
                        return Err(ParseError::new(line, "generator count must be positive"));
                    }
                    gens = Some((v, line));
                }
                "orders" => {
                    let (d, _) = gens.ok_or_else(|| {
                        ParseError::new(line, "`orders` must come after `generators`")
                    })?;
                    if toks.len() != 2 + d || toks[1] != "=" {
                        return Err(ParseError::new(
                            line,
                            format!("expected `orders = <{d} exponents>`"),
                        ));
                    }
                    let mut es = Vec::with_capacity(d);
                    for t in &toks[2..] {
                        es.push(parse_num::<u32>(t, line, "an order exponent")?);
                    }
                    orders = Some((es, line));
                }
                "comm" => {
                    let (d, _) = gens.ok_or_else(|| {
                        ParseError::new(line, "`comm` must come after `generators`")
                    })?;
                    if toks.len() != 4 + d || toks[3] != "=" {
                        return Err(ParseError::new(
                            line,
                            format!("expected `comm i j = <{d} coordinates>`"),
                        ));
                    }
                    let fi: usize = parse_num(toks[1], line, "a generator index")?;
                    let fj: usize = parse_num(toks[2], line, "a generator index")?;
                    if fi == 0 || fj == 0 || fi > d || fj > d || fi >= fj {
                        return Err(ParseError::new(
                            line,
                            format!(
                                "commutator indices must satisfy 1 <= i < j <= {d}, found ({fi},{fj})"
                            ),
                        ));
                    }
                    let (i, j) = (fi - 1, fj - 1);
                    if comm_lines.insert((i, j), line).is_some() {
                        return Err(ParseError::new(
                            line,
                            format!("commutator ({fi},{fj}) given twice"),
                        ));
                    }
                    let mut v = Vec::with_capacity(d);
                    for t in &toks[4..] {
                        v.push(parse_num::<u64>(t, line, "a coordinate")?);
                    }
                    comms.push((i, j, v));
                }
                other => {
                    return Err(ParseError::new(
                        line,
                        format!("unrecognized directive `{other}`"),
                    ));
                }
            }
        }

        let (p, p_line) = p.ok_or_else(|| ParseError::new(last_line, "missing `p = ...` line"))?;
        let (d, gens_line) =
            gens.ok_or_else(|| ParseError::new(last_line, "missing `generators = ...` line"))?;
        let (orders, orders_line) =
            orders.ok_or_else(|| ParseError::new(last_line, "missing `orders = ...` line"))?;
        if orders.len() != d {
            return Err(ParseError::new(
                orders_line,
                format!("`orders` lists {} exponents for {d} generators", orders.len()),
            ));
        }
        Self::new(p, orders, &comms).map_err(|e| {
            let line = match &e {
                PresentationError::NotPrime(_) => p_line,
                PresentationError::NoGenerators => gens_line,
                PresentationError::ZeroOrder { .. }
                | PresentationError::OrderOverflow { .. } => orders_line,
                PresentationError::BadCommutatorPair { i, j }
                | PresentationError::DuplicateCommutator { i, j }
                | PresentationError::BadCommutatorLength { i, j, .. }
                | PresentationError::CoordinateOutOfRange { i, j, .. } => {
                    comm_lines.get(&(*i, *j)).copied().unwrap_or(last_line)
                }
            };
            ParseError::new(line, e.to_string())
        })
    }

    /// Serialize to the canonical text form: headers, then the nontrivial
    /// commutators `[x_i, x_j]` with `i < j` in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p = {}", self.p).unwrap();
        writeln!(out, "generators = {}", self.ngens()).unwrap();
        let es: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        writeln!(out, "orders = {}", es.join(" ")).unwrap();
        for j in 0..self.ngens() {
            for k in j + 1..self.ngens() {
                let c = self.comm(k, j);
                if is_identity(c) {
                    continue;
                }
                let value = self.negate_coords(c);
                let vs: Vec<String> = value.iter().map(u64::to_string).collect();
                writeln!(out, "comm {} {} = {}", j + 1, k + 1, vs.join(" ")).unwrap();
            }
        }
        out
    }

    /// Certify that the stored data defines a group of class at most two in
    /// which the table is the honest collection rule. The checks, all run
    /// through the exact product:
    ///
    /// 1. every commutator constant is central;
    /// 2. constants are killed by both generator orders of their pair;
    /// 3. the product is associative on all generator triples (with the
    ///    bilinear correction sum, this extends to all elements);
    /// 4. power relations close: `x_i^{p^{e_i}} = 1` under exact powering;
    /// 5. the commutator word `[x_k, x_j]` reproduces the stored constant,
    ///    and the reversed word its coordinatewise negation;
    /// 6. correction sums between commutator constants vanish, so the derived
    ///    subgroup is exactly the additive span of the constants.
    pub fn validate_consistency(&self) -> ConsistencyReport {
        let mut failures = Vec::new();
        let d = self.ngens();
        let pairs: Vec<(usize, usize, Vec<u64>)> = self
            .nontrivial_comms()
            .map(|(k, j, c)| (k, j, c.to_vec()))
            .collect();

        for (k, j, c) in &pairs {
            let name = format!("[x_{}, x_{}]", k + 1, j + 1);
            for g in 0..d {
                let gv = self.generator(g);
                if self.multiply(c, &gv) != self.multiply(&gv, c) {
                    failures.push(format!(
                        "commutator value {name} does not commute with x_{}",
                        g + 1
                    ));
                }
            }
            for &gen in &[*k, *j] {
                if !is_identity(&self.pow_element(c, self.moduli[gen] as u128)) {
                    failures.push(format!(
                        "commutator value {name} is not killed by the order of x_{}",
                        gen + 1
                    ));
                }
            }
        }

        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (ga, gb, gc) = (self.generator(a), self.generator(b), self.generator(c));
                    let lhs = self.multiply(&self.multiply(&ga, &gb), &gc);
                    let rhs = self.multiply(&ga, &self.multiply(&gb, &gc));
                    if lhs != rhs {
                        failures.push(format!(
                            "product is not associative on (x_{}, x_{}, x_{})",
                            a + 1,
                            b + 1,
                            c + 1
                        ));
                    }
                }
            }
        }

        for i in 0..d {
            if !is_identity(&self.pow_element(&self.generator(i), self.moduli[i] as u128)) {
                failures.push(format!("power relation for x_{} does not close", i + 1));
            }
        }

        for k in 1..d {
            for j in 0..k {
                let c = self.comm(k, j);
                let (gk, gj) = (self.generator(k), self.generator(j));
                if self.commutator(&gk, &gj).as_slice() != c {
                    failures.push(format!(
                        "commutator word [x_{}, x_{}] does not reproduce its table entry",
                        k + 1,
                        j + 1
                    ));
                }
                if self.commutator(&gj, &gk) != self.negate_coords(c) {
                    failures.push(format!(
                        "reversed commutator word [x_{}, x_{}] is not the negated table entry",
                        j + 1,
                        k + 1
                    ));
                }
            }
        }

        for (k1, j1, c1) in &pairs {
            for (k2, j2, c2) in &pairs {
                if !is_identity(&self.b_correction(c1, c2)) {
                    failures.push(format!(
                        "correction between [x_{}, x_{}] and [x_{}, x_{}] does not vanish",
                        k1 + 1,
                        j1 + 1,
                        k2 + 1,
                        j2 + 1
                    ));
                }
            }
        }

        ConsistencyReport { failures }
    }
}

/// Outcome of [`PcPresentation::validate_consistency`]: empty means the data
/// defines a group and every collection-based routine in this crate is exact.
#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub failures: Vec<String>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = "\
# order 81 * 81 * 81 * 9
p = 3
generators = 4
orders = 4 4 4 2

comm 1 2 = 0 9 0 0
comm 2 3 = 9 0 0 0
";

    #[test]
    fn parse_stores_negated_constants() {
        let g = PcPresentation::parse(SAMPLE).unwrap();
        assert_eq!(g.p(), 3);
        assert_eq!(g.moduli(), &[81, 81, 81, 9]);
        // [x_1, x_2] = x_2^9, so the constant for moving x_2 past x_1 is
        // x_2^-9 = x_2^72.
        assert_eq!(g.comm(1, 0), &[0, 72, 0, 0]);
        assert_eq!(g.comm(2, 1), &[72, 0, 0, 0]);
        assert_eq!(g.comm(3, 0), &[0, 0, 0, 0]);
        assert_eq!(g.total_order_exponent(), 14);
    }

    #[test]
    fn serializer_round_trips_and_is_canonical() {
        let g = PcPresentation::parse(SAMPLE).unwrap();
        let text = g.to_text();
        assert_eq!(PcPresentation::parse(&text).unwrap(), g);
        // Canonical output lists the original [x_i, x_j] values.
        assert!(text.contains("comm 1 2 = 0 9 0 0"));
        assert!(text.contains("comm 2 3 = 9 0 0 0"));
        assert!(!text.contains("72"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("p = 4\ngenerators = 1\norders = 1", 1, "not prime"),
            ("p = 3\ngenerators = 0\norders =", 2, "positive"),
            ("p = 3\ngenerators = 1\norders = 0", 3, "at least 1"),
            ("p = 3\ngenerators = 1\norders = 99", 3, "63 bits"),
            ("p = 3\ngenerators = 2\norders = 1 1\ncomm 2 1 = 0 0", 4, "1 <= i < j"),
            ("p = 3\ngenerators = 2\norders = 1 1\ncomm 1 1 = 0 0", 4, "1 <= i < j"),
            (
                "p = 3\ngenerators = 2\norders = 1 1\ncomm 1 2 = 0 0\ncomm 1 2 = 0 1",
                5,
                "twice",
            ),
            ("p = 3\ngenerators = 2\norders = 1 1\ncomm 1 2 = 0", 4, "expected `comm"),
            ("p = 3\ngenerators = 2\norders = 1 1\ncomm 1 2 = 0 3", 4, "not below"),
            ("p = 3\ngenerators = 2\norders = 1", 3, "expected `orders"),
            ("p = 3\nbogus = 1", 2, "unrecognized"),
            ("p = 3\ngenerators = 1", 2, "missing `orders"),
            ("orders = 1", 1, "after `generators`"),
            ("p = x", 1, "found `x`"),
        ];
        for (text, line, frag) in cases {
            let err = PcPresentation::parse(text).unwrap_err();
            assert_eq!(err.line, *line, "case {text:?}: {err}");
            assert!(err.message.contains(frag), "case {text:?}: {err}");
        }
    }

    #[test]
    fn consistency_accepts_heisenberg() {
        let g = PcPresentation::new(3, vec![1, 1, 1], &[(0, 1, vec![0, 0, 1])]).unwrap();
        let report = g.validate_consistency();
        assert!(report.is_consistent(), "{:?}", report.failures);
    }

    #[test]
    fn consistency_rejects_noncentral_value() {
        // "[x_1, x_2] = x_2" is not a class-two presentation: the value is
        // not central.
        let g = PcPresentation::new(3, vec![1, 1], &[(0, 1, vec![0, 1])]).unwrap();
        let report = g.validate_consistency();
        assert!(!report.is_consistent());
        assert!(report.failures.iter().any(|f| f.contains("commute")));
    }

    #[test]
    fn consistency_rejects_value_of_excessive_order() {
        // [x_1, x_2] = x_3 where x_3 has order 9 but x_1, x_2 have order 3:
        // the value survives the generator orders.
        let g = PcPresentation::new(3, vec![1, 1, 2], &[(0, 1, vec![0, 0, 1])]).unwrap();
        let report = g.validate_consistency();
        assert!(!report.is_consistent());
        assert!(report.failures.iter().any(|f| f.contains("killed")));
    }

    fn arbitrary_presentation() -> impl Strategy<Value = PcPresentation> {
        (prop::sample::select(vec![2u64, 3, 5]), 1usize..=4)
            .prop_flat_map(|(p, d)| {
                let exps = prop::collection::vec(1u32..=3, d);
                (Just(p), Just(d), exps)
            })
            .prop_flat_map(|(p, d, exps)| {
                let moduli: Vec<u64> =
                    exps.iter().map(|&e| checked_p_power(p, e).unwrap()).collect();
                let pairs: Vec<(usize, usize)> =
                    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
                let comm_strategy = pairs
                    .into_iter()
                    .map(|(i, j)| {
                        let coords: Vec<_> =
                            moduli.iter().map(|&m| (0u64..m).boxed()).collect();
                        (prop::bool::ANY, coords)
                            .prop_map(move |(keep, v)| (keep, (i, j, v)))
                            .boxed()
                    })
                    .collect::<Vec<_>>();
                (Just(p), Just(exps), comm_strategy)
            })
            .prop_map(|(p, exps, comms)| {
                let kept: Vec<_> =
                    comms.into_iter().filter(|(keep, _)| *keep).map(|(_, c)| c).collect();
                PcPresentation::new(p, exps, &kept).unwrap()
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arbitrary_presentation()) {
            // Round-tripping is purely syntactic: it must hold for any
            // well-shaped table, consistent or not.
            prop_assert_eq!(PcPresentation::parse(&g.to_text()).unwrap(), g);
        }
    }
}
