//! Generating functions for `gb(n, p, k)` checked as exact polynomial
//! identities.
//!
//! The bivariate generating function is `alpha^n + beta^n` where `alpha`,
//! `beta` are the roots of `t^2 - (1+x)(1+y) t + x(1+y)`. No radicals are
//! formed: the power sum is produced by its characteristic recurrence
//! `L_n = (1+x)(1+y) L_{n-1} - x(1+y) L_{n-2}` with `L_0 = 2`, `L_1 = (1+x)(1+y)`.
//! The same trick handles the univariate helper sequence
//! `u_n = u_{n-1} + z u_{n-2}`, `u_0 = 2`, `u_1 = 1`.
//!
//! Gauss `2F1` series are expanded by their term ratio, so negative integer
//! parameters terminate the series instead of producing `0/0`.

use num_traits::{One, Zero};

use crate::exact::{binomial, int, rat, ExactRat};
use crate::genbinom::{gb_table, GbTable};
use crate::identity::Identity;
use crate::poly::{BiPoly, Poly};

fn one() -> ExactRat {
    ExactRat::one()
}

/// `(1+x)(1+y)`, the trace of the characteristic quadratic.
fn trace() -> BiPoly {
    let one_x = &BiPoly::constant(one()) + &BiPoly::monomial(one(), 1, 0);
    let one_y = &BiPoly::constant(one()) + &BiPoly::monomial(one(), 0, 1);
    &one_x * &one_y
}

/// `x(1+y)`, the norm of the characteristic quadratic.
fn norm() -> BiPoly {
    &BiPoly::monomial(one(), 1, 0) + &BiPoly::monomial(one(), 1, 1)
}

/// `L_n(x, y)` computed by the trace/norm recurrence.
pub fn lucas_bivariate(n: u32) -> BiPoly {
    let (t, q) = (trace(), norm());
    let mut prev = BiPoly::constant(rat(2, 1));
    if n == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..n {
        let next = &(&t * &cur) - &(&q * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `sum_{p,k} table[p][k] x^p y^k`, boundary column `k = 0` included.
pub fn gb_bipoly_from(table: &GbTable) -> BiPoly {
    let mut out = BiPoly::zero();
    for (p, row) in table.rows().iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            out.add_term(p as u32, k as u32, ExactRat::from_integer(v.clone()));
        }
    }
    out
}

pub fn gb_bipoly(n: u32) -> BiPoly {
    gb_bipoly_from(&gb_table(n))
}

pub fn check_bivariate_gf_with(table: &GbTable) -> Identity<BiPoly> {
    Identity::new(gb_bipoly_from(table), lucas_bivariate(table.n()))
}

/// The coefficient table against the closed-form bivariate generating function.
pub fn check_bivariate_gf(n: u32) -> bool {
    check_bivariate_gf_with(&gb_table(n)).holds()
}

/// `gb_bipoly(n)` against `(1+x)(1+y) gb_bipoly(n-1) - x(1+y) gb_bipoly(n-2)`,
/// which needs no closed form at all. Requires `n >= 3` so both earlier
/// tables exist.
pub fn check_bipoly_recurrence(n: u32) -> Identity<BiPoly> {
    assert!(n >= 3);
    let rhs = &(&trace() * &gb_bipoly(n - 1)) - &(&norm() * &gb_bipoly(n - 2));
    Identity::new(gb_bipoly(n), rhs)
}

/// `sum_{0<=i<n} n/(n-i) binom(n-i,i) z^i` against `u_n(z)`.
pub fn lucas_univariate_check(n: u32) -> Identity<Poly> {
    assert!(n >= 1);
    let ni = n as i64;
    let lhs = Poly::from_coeffs(
        (0..ni)
            .map(|i| ExactRat::new(binomial(ni - i, i) * ni, int(ni - i)))
            .collect(),
    );
    let z = Poly::monomial(one(), 1);
    let mut prev = Poly::constant(rat(2, 1));
    let mut cur = Poly::one();
    for _ in 1..n {
        let next = &cur + &(&z * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Identity::new(lhs, cur)
}

/// `sum_{j<=degree} (a)_j (b)_j / ((c)_j j!) (sign*y)^j`, stopping early when
/// an upper parameter reaches zero.
fn hyp2f1_series(a: i64, b: i64, c: i64, degree: usize, sign: i64) -> Poly {
    assert!(c >= 1, "lower parameter must be a positive integer");
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut term = one();
    for j in 0..=degree as i64 {
        coeffs.push(term.clone());
        let numer = (a + j) * (b + j);
        if numer == 0 {
            break;
        }
        term *= rat(numer * sign, (c + j) * (1 + j));
    }
    Poly::from_coeffs(coeffs)
}

/// `2F1[a, b; c; -y]` as a polynomial in `y`, truncated at `degree`.
pub fn hyp2f1_trunc(a: i64, b: i64, c: i64, degree: usize) -> Poly {
    hyp2f1_series(a, b, c, degree, -1)
}

/// `n y (y+1)^p 2F1[p+1, p-n+1; 2; -y]`, truncated at `y^n`.
///
/// For `p < n` the series terminates and nothing is lost; for `p = n` the
/// truncation keeps exactly the coefficients the left side can have.
pub fn column_gf(n: u32, p: u32) -> Poly {
    assert!(n >= 1 && p <= n);
    let (ni, pi) = (n as i64, p as i64);
    let f = hyp2f1_trunc(pi + 1, pi - ni + 1, 2, n as usize);
    let prefactor = Poly::one_plus_t_pow(p).shift(1).scale(&rat(ni, 1));
    (&prefactor * &f).truncate(n as usize)
}

/// `sum_{k>=1} table[p][k] y^k`
pub fn column_generating_poly(table: &GbTable, p: u32) -> Poly {
    let mut coeffs = vec![ExactRat::zero()];
    coeffs.extend((1..=table.n()).map(|k| ExactRat::from_integer(table.get(p, k))));
    Poly::from_coeffs(coeffs)
}

pub fn check_column_gf_at(table: &GbTable, p: u32) -> Identity<Poly> {
    Identity::new(column_generating_poly(table, p), column_gf(table.n(), p))
}

/// Every row `p` of the table against the univariate generating function.
pub fn check_column_gf(n: u32) -> bool {
    let table = gb_table(n);
    (0..=n).all(|p| check_column_gf_at(&table, p).holds())
}

/// `(c-b-1) F[a,b;c;y] - a(1-y) F[a+1,b+1;c;y] = (c-a-b-1) F[a,b+1;c;y]`,
/// compared coefficientwise up to `y^degree`.
pub fn check_contiguity(a: i64, b: i64, c: i64, degree: usize) -> Identity<Poly> {
    let f = |a, b| hyp2f1_series(a, b, c, degree, 1);
    let one_minus_y = Poly::from_coeffs(vec![one(), -one()]);
    let lhs =
        &f(a, b).scale(&rat(c - b - 1, 1)) - &(&one_minus_y * &f(a + 1, b + 1)).scale(&rat(a, 1));
    let rhs = f(a, b + 1).scale(&rat(c - a - b - 1, 1));
    Identity::new(lhs.truncate(degree), rhs.truncate(degree))
}

/// `L_n(x,y) = 1 + x^n + sum_p x^p * column_gf(n, p)`.
pub fn check_closing_identity(n: u32) -> Identity<BiPoly> {
    let mut rhs = &BiPoly::constant(one()) + &BiPoly::monomial(one(), n, 0);
    for p in 0..=n {
        rhs = &rhs + &BiPoly::from_y_poly(p, &column_gf(n, p));
    }
    Identity::new(lucas_bivariate(n), rhs)
}
