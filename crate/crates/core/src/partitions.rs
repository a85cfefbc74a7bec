//! Integer partitions and partition-moment polynomials.
//!
//! For a list of orders `r = (r_1, ..., r_m)` the moment polynomial is
//!
//! ```text
//! M_n^r(X) = sum_{|mu| = n} X^{l(mu)-1} / z_mu * sum_i prod_j (mu_i)_{r_j}
//! ```
//!
//! which has degree `n - 1`. Expanding it in the basis
//! `B_k(X) = binom(X+n-1, n-k)`, `k = 1..n`, and rescaling by
//! `|r| / prod_j r_j!` gives the coefficients `c_k`. For `m = 2` they are
//! `gb(r+s, s, k)`; for larger `m` they are expected (not known) to be
//! positive integers independent of `n`, which [`check_conjecture`] probes.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{factorial, int, raising_factorial, ExactInt, ExactRat};
use crate::genbinom::{gb_canonical, GbKey};
use crate::identity::Identity;
use crate::par::Exec;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("multi-index must be a nonempty list of positive integers, got {0:?}")]
    BadMultiIndex(Vec<u32>),
    #[error("polynomial of degree {degree} is not in the span of binom(X+{n}-1, {n}-k), k=1..{n}")]
    DegreeOverflow { degree: usize, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &part in &self.parts {
            match out.last_mut() {
                Some((p, m)) if *p == part => *m += 1,
                _ => out.push((part, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Streams the partitions of `n` in reverse lexicographic order, starting
/// from `(n)` and ending at `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        let out = Partition {
            parts: parts.clone(),
        };
        let mut next = parts;
        let mut spill = 0u32;
        while next.last() == Some(&1) {
            next.pop();
            spill += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let size = *last;
            spill += 1;
            while spill >= size {
                next.push(size);
                spill -= size;
            }
            if spill > 0 {
                next.push(spill);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn enumerate_partitions(n: u32) -> PartitionIter {
    assert!(n >= 1, "enumerate_partitions needs n >= 1");
    PartitionIter {
        current: Some(vec![n]),
    }
}

/// Number of partitions of `n` by Euler's pentagonal-number recurrence,
/// independent of [`enumerate_partitions`].
pub fn partition_count(n: u32) -> ExactInt {
    let n = n as usize;
    let mut p = vec![ExactInt::zero(); n + 1];
    p[0] = ExactInt::one();
    for m in 1..=n {
        let mut acc = ExactInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[m] = acc;
    }
    p.swap_remove(n)
}

/// `z_mu = prod_i i^{m_i} m_i!`
pub fn z_weight(mu: &Partition) -> ExactInt {
    mu.multiplicities()
        .into_iter()
        .fold(ExactInt::one(), |acc, (part, mult)| {
            acc * num_traits::pow(int(part as i64), mult as usize) * factorial(mult as u64)
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    orders: Vec<u32>,
}

impl MultiIndex {
    pub fn new(orders: Vec<u32>) -> Result<Self, PartitionError> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(PartitionError::BadMultiIndex(orders));
        }
        Ok(MultiIndex { orders })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn weight(&self) -> u32 {
        self.orders.iter().sum()
    }

    /// `prod_j r_j!`
    pub fn factorial_product(&self) -> ExactInt {
        self.orders.iter().map(|&r| factorial(r as u64)).product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The moment polynomial for raw orders; a zero order contributes the
/// factor `(mu_i)_0 = 1`.
pub fn moment_lhs(n: u32, orders: &[u32]) -> Poly {
    let mut coeffs = vec![ExactRat::zero(); n as usize];
    for mu in enumerate_partitions(n) {
        let inner: ExactInt = mu
            .multiplicities()
            .into_iter()
            .map(|(part, mult)| {
                orders
                    .iter()
                    .map(|&r| raising_factorial(part as i64, r as u64))
                    .product::<ExactInt>()
                    * mult
            })
            .sum();
        coeffs[mu.length() - 1] += ExactRat::new(inner, z_weight(&mu));
    }
    Poly::from_coeffs(coeffs)
}

/// `B_k(X) = binom(X+n-1, n-k)` as a polynomial in `X`.
pub fn binomial_basis_poly(n: u32, k: u32) -> Poly {
    assert!((1..=n).contains(&k));
    let d = n - k;
    let top = n as i64 - 1;
    let mut out = Poly::one();
    for j in 0..d as i64 {
        // (X + n - 1 - j)
        out = &out * &Poly::from_ints([int(top - j), int(1)]);
    }
    out.scale(&ExactRat::new(ExactInt::one(), factorial(d as u64)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialBasisExpansion {
    n: u32,
    coeffs: Vec<ExactRat>,
}

impl BinomialBasisExpansion {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `a_k` for `k = 1..=n`; zero outside that range.
    pub fn coeff(&self, k: u32) -> ExactRat {
        if k == 0 {
            return ExactRat::zero();
        }
        self.coeffs
            .get(k as usize - 1)
            .cloned()
            .unwrap_or_else(ExactRat::zero)
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn reconstruct(&self) -> Poly {
        (1..=self.n).fold(Poly::zero(), |acc, k| {
            &acc + &binomial_basis_poly(self.n, k).scale(&self.coeff(k))
        })
    }
}

/// Expands `poly` in `binom(X+n-1, n-k)`, `k = 1..n`.
///
/// `B_k` has exact degree `n-k`, so the coefficients come out of a
/// triangular elimination from the top degree down.
pub fn to_binomial_basis(poly: &Poly, n: u32) -> Result<BinomialBasisExpansion, PartitionError> {
    assert!(n >= 1);
    if let Some(degree) = poly.degree() {
        if degree >= n as usize {
            return Err(PartitionError::DegreeOverflow { degree, n });
        }
    }
    let mut remainder = poly.clone();
    let mut coeffs = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let d = (n - k) as usize;
        let basis = binomial_basis_poly(n, k);
        let a = remainder.coeff(d) / basis.coeff(d);
        remainder = &remainder - &basis.scale(&a);
        coeffs.push(a);
    }
    assert!(
        remainder.is_zero(),
        "triangular elimination left {remainder}"
    );
    Ok(BinomialBasisExpansion { n, coeffs })
}

/// `moment_lhs(n, (r, s))` against
/// `r! s!/(r+s) sum_{k=1}^{min(n,r+s)} gb(r+s, s, k) B_k(X)`.
pub fn check_moment_identity(n: u32, r: u32, s: u32) -> Identity<Poly> {
    assert!(n >= 1 && s >= 1);
    let m = r + s;
    let prefactor = ExactRat::new(factorial(r as u64) * factorial(s as u64), int(m as i64));
    let mut rhs = Poly::zero();
    for k in 1..=n.min(m) {
        let gb = gb_canonical(GbKey::new(m, s, k).expect("s <= r+s"));
        rhs = &rhs + &binomial_basis_poly(n, k).scale(&ExactRat::from_integer(gb));
    }
    Identity::new(moment_lhs(n, &[r, s]), rhs.scale(&prefactor))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureCoeffs {
    pub n: u32,
    /// `(k, c_k)` for `k = 1..=min(n, |r|)`.
    pub coeffs: Vec<(u32, ExactRat)>,
    /// Nonzero basis coefficients `(k, a_k)` with `k > min(n, |r|)`; any entry
    /// here means the moment polynomial does not have the expected shape.
    pub overflow: Vec<(u32, ExactRat)>,
}

impl ConjectureCoeffs {
    pub fn shape_ok(&self) -> bool {
        self.overflow.is_empty()
    }

    pub fn integral(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_integer())
    }

    pub fn positive(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_positive())
    }

    pub fn get(&self, k: u32) -> Option<&ExactRat> {
        self.coeffs.iter().find(|(j, _)| *j == k).map(|(_, c)| c)
    }
}

pub fn conjecture_coeffs(n: u32, r: &MultiIndex) -> ConjectureCoeffs {
    let expansion =
        to_binomial_basis(&moment_lhs(n, r.orders()), n).expect("moment polynomial has degree n-1");
    let top = n.min(r.weight());
    let rescale = ExactRat::new(int(r.weight() as i64), r.factorial_product());
    let coeffs = (1..=top)
        .map(|k| (k, expansion.coeff(k) * &rescale))
        .collect();
    let overflow = (top + 1..=n)
        .map(|k| (k, expansion.coeff(k)))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    ConjectureCoeffs {
        n,
        coeffs,
        overflow,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRun {
    pub coeffs: ConjectureCoeffs,
    pub integral: bool,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub r: MultiIndex,
    pub runs: Vec<ConjectureRun>,
    /// `c_k` agrees across all runs for every `k` every run computed.
    pub stable: bool,
}

impl ConjectureReport {
    pub fn shape_ok(&self) -> bool {
        self.runs.iter().all(|run| run.coeffs.shape_ok())
    }

    pub fn all_integral(&self) -> bool {
        self.runs.iter().all(|run| run.integral)
    }

    pub fn all_positive(&self) -> bool {
        self.runs.iter().all(|run| run.positive)
    }
}

/// Runs [`conjecture_coeffs`] for each `n` and reports integrality,
/// positivity and `n`-independence. Violations are data, not errors.
pub fn check_conjecture(r: &MultiIndex, n_values: &[u32], exec: Exec) -> ConjectureReport {
    let runs: Vec<ConjectureRun> = exec.map(n_values, |&n| {
        let coeffs = conjecture_coeffs(n, r);
        ConjectureRun {
            integral: coeffs.integral(),
            positive: coeffs.positive(),
            coeffs,
        }
    });
    let shared = n_values
        .iter()
        .map(|&n| n.min(r.weight()))
        .min()
        .unwrap_or(0);
    let stable = stable_up_to(&runs, shared);
    ConjectureReport {
        r: r.clone(),
        runs,
        stable,
    }
}

fn stable_up_to(runs: &[ConjectureRun], shared: u32) -> bool {
    (1..=shared).all(|k| {
        let mut values = runs.iter().map(|run| run.coeffs.get(k));
        let first = values.next().flatten();
        values.all(|v| v == first)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let mu = part(&[3, 3, 2, 1, 1]);
        assert_eq!(mu.weight(), 10);
        assert_eq!(mu.length(), 5);
        assert_eq!(mu.multiplicities(), vec![(3, 2), (2, 1), (1, 2)]);
        assert_eq!(mu.multiplicity(1), 2);
        assert_eq!(mu.multiplicity(4), 0);
        assert_eq!(mu.to_string(), "(3,3,2,1,1)");
    }

    #[test]
    fn enumeration_order() {
        let got: Vec<Vec<u32>> = enumerate_partitions(3)
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(got, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_partitions(1).count(), 1);
        let four: Vec<String> = enumerate_partitions(4).map(|p| p.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn pentagonal_counts() {
        let counts: Vec<ExactInt> = (1..=10).map(partition_count).collect();
        let want = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42].map(int);
        assert_eq!(counts, want);
        assert_eq!(partition_count(40), int(37338));
    }

    #[test]
    fn z_weights() {
        assert_eq!(z_weight(&part(&[2, 1])), int(2));
        assert_eq!(z_weight(&part(&[1, 1, 1])), int(6));
        assert_eq!(z_weight(&part(&[3, 3, 2])), int(36));
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(vec![]).is_err());
        assert!(MultiIndex::new(vec![1, 0]).is_err());
        let r = MultiIndex::new(vec![2, 3]).unwrap();
        assert_eq!(r.weight(), 5);
        assert_eq!(r.factorial_product(), int(12));
    }

    #[test]
    fn moment_examples() {
        assert_eq!(
            moment_lhs(2, &[1, 1]),
            Poly::from_coeffs(vec![rat(2, 1), rat(1, 1)])
        );
        assert_eq!(
            moment_lhs(3, &[1, 1]),
            Poly::from_coeffs(vec![rat(3, 1), rat(5, 2), rat(1, 2)])
        );
        assert_eq!(moment_lhs(1, &[4]), Poly::constant(rat(24, 1)));
    }

    #[test]
    fn basis_examples() {
        let e = to_binomial_basis(&Poly::from_coeffs(vec![rat(2, 1), rat(1, 1)]), 2).unwrap();
        assert_eq!(e.coeffs(), &[rat(1, 1), rat(1, 1)]);
        let e = to_binomial_basis(&Poly::one(), 3).unwrap();
        assert_eq!(e.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        let x2 = Poly::monomial(rat(1, 1), 2);
        assert_eq!(
            to_binomial_basis(&x2, 2),
            Err(PartitionError::DegreeOverflow { degree: 2, n: 2 })
        );
        assert_eq!(to_binomial_basis(&x2, 3).unwrap().reconstruct(), x2);
    }

    #[test]
    fn basis_matches_falling_factorial() {
        use crate::exact::lowering_factorial;
        for n in 1..7u32 {
            for k in 1..=n {
                let b = binomial_basis_poly(n, k);
                assert_eq!(b.degree(), Some((n - k) as usize));
                for x in -3i64..6 {
                    let d = (n - k) as u64;
                    let want = ExactRat::new(lowering_factorial(x + n as i64 - 1, d), factorial(d));
                    assert_eq!(b.eval(&rat(x, 1)), want);
                }
            }
        }
    }

    #[test]
    fn moment_identity_examples() {
        let c = check_moment_identity(2, 1, 1);
        assert!(c.holds());
        assert_eq!(c.rhs, Poly::from_coeffs(vec![rat(2, 1), rat(1, 1)]));
        assert!(check_moment_identity(3, 1, 1).holds());
        assert!(check_moment_identity(4, 0, 3).holds());
    }

    #[test]
    fn conjecture_examples() {
        let r11 = MultiIndex::new(vec![1, 1]).unwrap();
        let c = conjecture_coeffs(2, &r11);
        assert_eq!(c.coeffs, vec![(1, rat(2, 1)), (2, rat(2, 1))]);
        assert!(c.shape_ok());

        let r = MultiIndex::new(vec![1]).unwrap();
        let report = check_conjecture(&r, &[1, 2, 3], Exec::Sequential);
        assert!(report.stable && report.all_integral() && report.all_positive());
        for run in &report.runs {
            assert_eq!(run.coeffs.coeffs, vec![(1, rat(1, 1))]);
        }

        let r21 = MultiIndex::new(vec![2, 1]).unwrap();
        let report = check_conjecture(&r21, &[3, 4], Exec::Parallel);
        for run in &report.runs {
            let want: Vec<(u32, ExactRat)> = (1..=3)
                .map(|k| {
                    (
                        k,
                        ExactRat::from_integer(crate::exact::binomial(3, k as i64) * k),
                    )
                })
                .collect();
            assert_eq!(run.coeffs.coeffs, want);
        }
        assert!(report.stable);
    }

    #[test]
    fn stability_detects_disagreement() {
        let r = MultiIndex::new(vec![3]).unwrap();
        let mut report = check_conjecture(&r, &[3, 4], Exec::Sequential);
        assert!(report.stable);
        report.runs[1].coeffs.coeffs[0].1 += ExactRat::one();
        assert!(!stable_up_to(&report.runs, 3));
        assert!(stable_up_to(&report.runs[..1], 3));
    }
}
