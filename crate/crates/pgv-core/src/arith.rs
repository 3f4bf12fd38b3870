//! Exact integer and residue arithmetic.
//!
//! Everything downstream reduces to a handful of primitives collected here:
//! modular arithmetic on `u64` residues (all moduli are prime powers that fit
//! in 63 bits), Hermite and Smith normal forms over the integers with tracked
//! column transforms, integer matrix kernels, kernels modulo prime powers,
//! and Howell normal forms over products of residue rings `Z/p^{e_j}`. The
//! matrices involved are tiny (at most a few dozen rows), so the normal-form
//! routines favour clarity over asymptotics and use arbitrary-precision
//! integers to dodge overflow entirely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic primality check by trial division; adequate for the small
/// primes that appear as group exponents.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut f = 7u64;
    while f.checked_mul(f).map_or(false, |ff| ff <= n) {
        for g in [f, f + 4] {
            if n % g == 0 {
                return false;
            }
        }
        f += 6;
    }
    true
}

/// `p^e` if it fits in 63 bits (the coordinate-modulus contract), else `None`.
pub fn checked_p_power(p: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
        if acc > (1u64 << 63) {
            return None;
        }
    }
    Some(acc)
}

/// Mathematical remainder of a signed 128-bit value, in `[0, m)`.
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    let m = m as i128;
    let r = x % m;
    (if r < 0 { r + m } else { r }) as u64
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a + b mod m` without overflow.
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// `-a mod m`.
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Modular inverse via extended Euclid; `None` when `gcd(a, m) > 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(reduce_i128(s0, m))
}

/// p-adic valuation of a nonzero residue.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    assert!(x != 0, "valuation of zero is undefined");
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero big integer.
pub fn valuation_big(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Signed representative of `x mod m` with the smallest absolute value
/// (ties broken towards the positive one).
pub fn signed_rep(x: u64, m: u64) -> i64 {
    let x = x % m;
    if x * 2 <= m {
        x as i64
    } else {
        x as i64 - m as i64
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Row-major arbitrary-precision matrix; a thin wrapper, since only the
/// normal-form routines below ever touch the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IMat { rows: r, cols: c, a: rows.iter().flatten().cloned().collect() }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_dst += q * row_src
    fn addmul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = &self[(src, k)] * q;
            self[(dst, k)] += t;
        }
    }

    /// col_dst += q * col_src
    fn addmul_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = &self[(r, src)] * q;
            self[(r, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let t = -self[(i, k)].clone();
            self[(i, k)] = t;
        }
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.a[i * self.cols + j]
    }
}

/// Hermite normal form of the lattice spanned by `gens` (row convention):
/// a triangular basis, one row per pivot column, pivot entries positive,
/// entries above each pivot reduced to `[0, pivot)`.
pub fn hermite_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let cols = gens[0].len();
    let mut m = IMat::from_rows(gens);
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    for col in 0..cols {
        // Euclid over the entries of this column at/below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.rows {
                if !m[(r, col)].is_zero()
                    && best.map_or(true, |b| m[(r, col)].abs() < m[(b, col)].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let q = -(&m[(r, col)] / &m[(pivot_row, col)]);
                m.addmul_row(r, pivot_row, &q);
                if !m[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m.rows && !m[(pivot_row, col)].is_zero() {
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    // Reduce entries above each pivot.
    for &(r, c) in &pivots {
        for above in 0..r {
            let q = -m[(above, c)].div_floor(&m[(r, c)]);
            m.addmul_row(above, r, &q);
        }
    }
    (0..pivot_row).map(|r| m.row(r).to_vec()).collect()
}

/// Express `target` in a Hermite basis (as produced by [`hermite_basis`]);
/// `None` when the vector is outside the lattice.
pub fn solve_in_lattice(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut t = target.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for row in basis {
        let col = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = t[col].div_rem(&row[col]);
        if !r.is_zero() {
            return None;
        }
        for k in 0..t.len() {
            let s = &q * &row[k];
            t[k] -= s;
        }
        coeffs.push(q);
    }
    if t.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Smith normal form `D = U * A * V` of a matrix `A`, tracking only the
/// column transform `V` (and its inverse): row operations do not change the
/// row span, which is all the quotient constructions care about.
pub struct Snf {
    /// Diagonal entries, non-negative, each dividing the next.
    pub diag: Vec<BigInt>,
    /// Column transform: basis change on the ambient coordinates.
    pub v: IMat,
    /// Inverse of `v`.
    pub v_inv: IMat,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let mut m = a.clone();
    let mut v = IMat::identity(a.cols);
    let mut v_inv = IMat::identity(a.cols);

    // Tracked elementary column operations.
    macro_rules! col_swap {
        ($j:expr, $k:expr) => {{
            m.swap_cols($j, $k);
            v.swap_cols($j, $k);
            v_inv.swap_rows($j, $k);
        }};
    }
    macro_rules! col_addmul {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            m.addmul_col($dst, $src, &q);
            v.addmul_col($dst, $src, &q);
            let nq = -q;
            v_inv.addmul_row($src, $dst, &nq);
        }};
    }

    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // Locate the smallest nonzero entry of the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !m[(i, j)].is_zero()
                    && best.map_or(true, |(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        col_swap!(t, bj);

        'pivot: loop {
            for i in t + 1..m.rows {
                if !m[(i, t)].is_zero() {
                    let q = -(&m[(i, t)] / &m[(t, t)]);
                    m.addmul_row(i, t, &q);
                    if !m[(i, t)].is_zero() {
                        m.swap_rows(t, i);
                        continue 'pivot;
                    }
                }
            }
            for j in t + 1..m.cols {
                if !m[(t, j)].is_zero() {
                    let q = -(&m[(t, j)] / &m[(t, t)]);
                    col_addmul!(j, t, q);
                    if !m[(t, j)].is_zero() {
                        col_swap!(t, j);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
        }
        // Divisibility repair: fold any offending entry into the pivot.
        let mut repaired = false;
        'scan: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !(&m[(i, j)] % &m[(t, t)]).is_zero() {
                    m.addmul_row(t, i, &BigInt::one());
                    repaired = true;
                    break 'scan;
                }
            }
        }
        if !repaired {
            t += 1;
        }
    }

    let diag = (0..n).map(|i| m[(i, i)].clone()).collect();
    debug_assert_eq!(v.mul(&v_inv), IMat::identity(a.cols));
    Snf { diag, v, v_inv }
}

/// Basis of the integer kernel `{x : A x = 0}` (column vectors, returned as
/// rows), via column reduction of `A` stacked over an identity block.
pub fn integer_kernel(a: &IMat) -> Vec<Vec<BigInt>> {
    let mut m = IMat::zero(a.rows + a.cols, a.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for j in 0..a.cols {
        m[(a.rows + j, j)] = BigInt::one();
    }
    let mut pivot_col = 0;
    for row in 0..a.rows {
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..a.cols {
                if !m[(row, j)].is_zero()
                    && best.map_or(true, |b| m[(row, j)].abs() < m[(row, b)].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            m.swap_cols(pivot_col, b);
            let mut done = true;
            for j in pivot_col + 1..a.cols {
                if m[(row, j)].is_zero() {
                    continue;
                }
                let q = -(&m[(row, j)] / &m[(row, pivot_col)]);
                m.addmul_col(j, pivot_col, &q);
                if !m[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_col < a.cols && !m[(row, pivot_col)].is_zero() {
            pivot_col += 1;
        }
    }
    (pivot_col..a.cols)
        .map(|j| (0..a.cols).map(|i| m[(a.rows + i, j)].clone()).collect())
        .collect()
}

/// Generators of `{x in prod Z/var_moduli : A x = 0 mod row_moduli}`,
/// obtained from the integer kernel of `[A | diag(row_moduli)]`.
///
/// The caller must pass a well-posed system: for every variable `j`,
/// `var_moduli[j] * column_j(A)` must vanish modulo the row moduli, so that
/// the equations are well-defined on residues. All systems produced in this
/// crate come from identities in a group where generator `j` has order
/// `var_moduli[j]`, which guarantees exactly that.
pub fn kernel_mod_prime_powers(
    a: &[Vec<i128>],
    row_moduli: &[u64],
    var_moduli: &[u64],
) -> Vec<Vec<u64>> {
    let rows = a.len();
    let d = var_moduli.len();
    assert_eq!(rows, row_moduli.len());
    let mut m = IMat::zero(rows, d + rows);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), d);
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = BigInt::from(*x);
        }
        m[(i, d + i)] = BigInt::from(row_moduli[i]);
    }
    let kernel = integer_kernel(&m);
    let mut out: Vec<Vec<u64>> = Vec::new();
    for k in kernel {
        let vec: Vec<u64> = (0..d)
            .map(|j| {
                let q = k[j].mod_floor(&BigInt::from(var_moduli[j]));
                q.to_u64().expect("residue fits u64")
            })
            .collect();
        if vec.iter().any(|&x| x != 0) && !out.contains(&vec) {
            out.push(vec);
        }
    }
    out
}

/// Abelian invariants of the finite quotient `L_ambient / L_sub` as p-power
/// exponents in descending order. `ambient` must span a full-rank lattice and
/// `sub` a finite-index sublattice of it.
pub fn quotient_type(p: u64, ambient: &[Vec<BigInt>], sub: &[Vec<BigInt>]) -> Vec<u32> {
    let basis = hermite_basis(ambient);
    let d = ambient[0].len();
    assert_eq!(basis.len(), d, "ambient lattice must have full rank");
    let coords: Vec<Vec<BigInt>> = sub
        .iter()
        .map(|s| solve_in_lattice(&basis, s).expect("sublattice vector outside ambient lattice"))
        .collect();
    let snf = smith_normal_form(&IMat::from_rows(&coords));
    let mut exps: Vec<u32> = snf
        .diag
        .iter()
        .map(|x| {
            assert!(!x.is_zero(), "quotient is infinite: sublattice not of full rank");
            x
        })
        .filter(|x| !x.is_one())
        .map(|x| {
            let v = valuation_big(x, p);
            assert_eq!(
                x.abs(),
                BigInt::from(p).pow(v),
                "quotient invariant factor is not a p-power"
            );
            v
        })
        .collect();
    assert_eq!(snf.diag.len(), d, "sublattice must have full rank");
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps
}

// ---------------------------------------------------------------------------
// Howell normal form over a product of residue rings Z/p^{e_j}
// ---------------------------------------------------------------------------

/// Canonical form for a submodule of `prod_j Z/p^{e_j}`: at most one row per
/// pivot column, pivot entries are pure p-powers `p^s`, entries above a pivot
/// are reduced modulo it, and the row list is closed under annihilator
/// multiples, so reduction against the rows decides membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Howell {
    pub p: u64,
    pub moduli: Vec<u64>,
    pub rows: Vec<Vec<u64>>,
    /// Per row: (pivot column, valuation s of the pivot entry p^s).
    pub pivots: Vec<(usize, u32)>,
}

impl Howell {
    pub fn new(p: u64, moduli: &[u64], gens: &[Vec<u64>]) -> Self {
        let d = moduli.len();
        let emax: u32 = moduli.iter().map(|&m| valuation(m, p)).max().unwrap_or(0);
        let pe_max = checked_p_power(p, emax).expect("modulus fits");
        let mut worklist: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), d);
                g.iter().zip(moduli).map(|(&x, &m)| x % m).collect()
            })
            .filter(|g: &Vec<u64>| g.iter().any(|&x| x != 0))
            .collect();
        let mut processed: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<(usize, u32)> = Vec::new();

        for col in 0..d {
            let e_col = valuation(moduli[col], p);
            // Worklist rows all have first nonzero column >= col here; pick
            // the entry of minimal valuation as the pivot for this column.
            let mut best: Option<(usize, u32)> = None;
            for (i, r) in worklist.iter().enumerate() {
                if r[col] != 0 {
                    let v = valuation(r[col], p);
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((i, v));
                    }
                }
            }
            let Some((bi, v)) = best else { continue };
            let mut pivot_row = worklist.swap_remove(bi);
            // Normalize the pivot entry to the pure power p^s.
            let pv = checked_p_power(p, v).unwrap();
            let unit = pivot_row[col] / pv;
            let unit_inv = inv_mod(unit % pe_max, pe_max).expect("unit is invertible");
            for (x, &m) in pivot_row.iter_mut().zip(moduli) {
                *x = mul_mod(*x, unit_inv, m);
            }
            debug_assert_eq!(pivot_row[col], pv);
            // Clear this column from the remaining worklist rows.
            for r in worklist.iter_mut() {
                if r[col] != 0 {
                    let q = r[col] / pv;
                    for ((x, pr), &m) in r.iter_mut().zip(&pivot_row).zip(moduli) {
                        let sub = mul_mod(q, *pr, m);
                        *x = add_mod(*x, neg_mod(sub, m), m);
                    }
                    debug_assert_eq!(r[col], 0);
                }
            }
            worklist.retain(|r| r.iter().any(|&x| x != 0));
            // The annihilator multiple keeps the span closed on later columns.
            let ann = checked_p_power(p, e_col - v).unwrap();
            let ann_row: Vec<u64> = pivot_row
                .iter()
                .zip(moduli)
                .map(|(&x, &m)| mul_mod(x, ann, m))
                .collect();
            if ann_row.iter().any(|&x| x != 0) {
                worklist.push(ann_row);
            }
            processed.push(pivot_row);
            pivots.push((col, v));
        }
        debug_assert!(worklist.is_empty(), "rows left after the final column");

        // Reduce entries above each pivot.
        for i in 0..processed.len() {
            let (col, s) = pivots[i];
            let ps = checked_p_power(p, s).unwrap();
            for b in 0..i {
                let q = processed[b][col] / ps;
                if q != 0 {
                    for k in 0..d {
                        let m = moduli[k];
                        let sub = mul_mod(q % m, processed[i][k] % m, m);
                        processed[b][k] = add_mod(processed[b][k], neg_mod(sub, m), m);
                    }
                }
            }
        }
        Howell { p, moduli: moduli.to_vec(), rows: processed, pivots }
    }

    /// Canonical coset representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut t: Vec<u64> =
            v.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect();
        for (row, &(col, s)) in self.rows.iter().zip(&self.pivots) {
            let ps = checked_p_power(self.p, s).unwrap();
            let q = t[col] / ps;
            if q != 0 {
                for k in 0..t.len() {
                    let m = self.moduli[k];
                    let sub = mul_mod(q % m, row[k] % m, m);
                    t[k] = add_mod(t[k], neg_mod(sub, m), m);
                }
            }
        }
        t
    }

    /// Membership in the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// log_p of the span's cardinality.
    pub fn size_exponent(&self) -> u32 {
        self.pivots
            .iter()
            .map(|&(col, s)| valuation(self.moduli[col], self.p) - s)
            .sum()
    }

    /// log_p of the additive exponent of the span: the largest additive
    /// order among its elements, attained on a generating row.
    pub fn exponent_exponent(&self) -> u32 {
        self.rows
            .iter()
            .flat_map(|row| {
                row.iter().zip(&self.moduli).filter_map(|(&x, &m)| {
                    if x == 0 {
                        None
                    } else {
                        Some(valuation(m, self.p) - valuation(x, self.p))
                    }
                })
            })
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(65537));
        assert!(!is_prime(65536));
    }

    #[test]
    fn modular_basics() {
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(reduce_i128(-1, 81), 80);
        assert_eq!(signed_rep(72, 81), -9);
        assert_eq!(signed_rep(9, 81), 9);
        assert_eq!(valuation(72, 3), 2);
    }

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_triangular() {
        let basis = hermite_basis(&bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]));
        // Every basis vector must solve back through itself and sums of rows
        // must stay inside the lattice.
        for row in &basis {
            assert!(solve_in_lattice(&basis, row).is_some());
        }
        let sum: Vec<BigInt> =
            (0..3).map(|k| basis.iter().map(|r| &r[k]).sum::<BigInt>()).collect();
        assert!(solve_in_lattice(&basis, &sum).is_some());
        assert!(solve_in_lattice(&basis, &[BigInt::one(), BigInt::zero(), BigInt::zero()])
            .is_none());
    }

    #[test]
    fn smith_diag_divisibility() {
        let m = IMat::from_rows(&bi(&[&[2, 4], &[6, 8]]));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(snf.v.mul(&snf.v_inv), IMat::identity(2));
    }

    #[test]
    fn smith_handles_rank_deficiency() {
        let m = IMat::from_rows(&bi(&[&[2, 4], &[1, 2]]));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![BigInt::one(), BigInt::zero()]);
    }

    #[test]
    fn kernel_of_rectangular() {
        let m = IMat::from_rows(&bi(&[&[1, 2, 3]]));
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v
                .iter()
                .zip([1, 2, 3])
                .map(|(x, c)| x * BigInt::from(c))
                .sum();
            assert!(dot.is_zero());
        }
    }

    /// Closure of a generating set inside prod Z/moduli, for brute checks.
    fn span_closure(gens: &[Vec<u64>], moduli: &[u64]) -> std::collections::BTreeSet<Vec<u64>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; moduli.len()]);
        let mut frontier: Vec<Vec<u64>> = vec![vec![0; moduli.len()]];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .zip(moduli)
                    .map(|((&a, &b), &m)| add_mod(a, b % m, m))
                    .collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        set
    }

    #[test]
    fn kernel_mod_matches_bruteforce() {
        // x + 3y ≡ 0 (mod 9) with x defined mod 9 and y mod 3. The system is
        // well-posed: 9*1 and 3*3 both vanish mod 9.
        let a = vec![vec![1i128, 3i128]];
        let sols = kernel_mod_prime_powers(&a, &[9], &[9, 3]);
        let lattice = span_closure(&sols, &[9, 3]);
        let brute: Vec<Vec<u64>> = (0..9u64)
            .flat_map(|x| (0..3u64).map(move |y| vec![x, y]))
            .filter(|v| (v[0] + 3 * v[1]) % 9 == 0)
            .collect();
        assert_eq!(lattice.len(), brute.len());
        for v in brute {
            assert!(lattice.contains(&v));
        }
    }

    #[test]
    fn quotient_type_plain() {
        let ambient = bi(&[&[1, 0], &[0, 1]]);
        let sub = bi(&[&[2, 0], &[0, 8]]);
        assert_eq!(quotient_type(2, &ambient, &sub), vec![3, 1]);
    }

    #[test]
    fn quotient_type_skew_sublattice() {
        // Z^2 / <(1,1), (0,3)> has order 3: type (3).
        let ambient = bi(&[&[1, 0], &[0, 1]]);
        let sub = bi(&[&[1, 1], &[0, 3]]);
        assert_eq!(quotient_type(3, &ambient, &sub), vec![1]);
    }

    #[test]
    fn howell_membership_matches_closure() {
        let moduli = [27u64, 9, 3];
        let gens = vec![vec![3, 1, 0], vec![0, 3, 2]];
        let h = Howell::new(3, &moduli, &gens);
        let closure = span_closure(&gens, &moduli);
        let mut count = 0u64;
        for a in 0..27u64 {
            for b in 0..9u64 {
                for c in 0..3u64 {
                    let v = vec![a, b, c];
                    assert_eq!(h.contains(&v), closure.contains(&v), "vector {v:?}");
                    if h.contains(&v) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 3u64.pow(h.size_exponent()));
    }

    #[test]
    fn howell_canonical_across_generating_sets() {
        let moduli = [27u64, 9, 3];
        let gens = vec![vec![3, 1, 0], vec![0, 3, 2]];
        let h = Howell::new(3, &moduli, &gens);
        // Regenerate from scrambled combinations of the original rows.
        let g2: Vec<Vec<u64>> = vec![
            (0..3).map(|k| add_mod(mul_mod(5, gens[0][k], moduli[k]), gens[1][k], moduli[k])).collect(),
            (0..3).map(|k| mul_mod(7, gens[1][k], moduli[k])).collect(),
            (0..3).map(|k| add_mod(gens[0][k], gens[0][k], moduli[k])).collect(),
            gens[1].clone(),
        ];
        let h2 = Howell::new(3, &moduli, &g2);
        // Spans agree here (the scramble is invertible on the span), so the
        // canonical forms must be identical.
        assert_eq!(h, h2);
    }

    #[test]
    fn howell_annihilator_rows_matter() {
        // Span of (3,1) in Z/9 x Z/3 is {(0,0), (3,1), (6,2)}: the generator
        // has additive order 3 because 3*(3,1) = (9 mod 9, 3 mod 3) = (0,0).
        let h = Howell::new(3, &[9, 3], &[vec![3, 1]]);
        assert!(!h.contains(&[0, 1]));
        assert!(!h.contains(&[3, 0]));
        assert!(h.contains(&[3, 1]));
        assert!(h.contains(&[6, 2]));
        assert_eq!(h.size_exponent(), 1);

        // By contrast (1,1) has additive order 9, giving a span of order 9
        // (still not all 27 elements: second coordinate is determined).
        let h2 = Howell::new(3, &[9, 3], &[vec![1, 1]]);
        assert!(h2.contains(&[3, 0]));
        assert!(!h2.contains(&[0, 1]));
        assert_eq!(h2.size_exponent(), 2);
    }
}
