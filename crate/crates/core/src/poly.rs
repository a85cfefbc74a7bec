//! Dense univariate and sparse bivariate polynomials over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{ExactInt, ExactRat};

/// Univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// Never stores a trailing zero, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<ExactRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRat::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: ExactRat, degree: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = ExactInt>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(ExactRat::from_integer).collect())
    }

    /// `(1 + t)^n`
    pub fn one_plus_t_pow(n: u32) -> Self {
        let base = Self::from_coeffs(vec![ExactRat::one(), ExactRat::one()]);
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactRat {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops every term of degree above `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(degree + 1).cloned().collect())
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRat::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, t: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * t + c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ExactRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, other: $ty) -> $ty {
                (&self).$method(&other)
            }
        }
    };
}

forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c, monomial_name("t", i))),
        )
    }
}

fn monomial_name(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a ExactRat, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (c.is_one(), mono.is_empty()) {
            (_, true) => write!(f, "{c}")?,
            (true, false) => f.write_str(&mono)?,
            (false, false) => write!(f, "({c})*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Polynomial in `x` and `y`, keyed by `(x-degree, y-degree)`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), ExactRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: ExactRat) -> Self {
        let mut out = BiPoly::zero();
        out.add_term(0, 0, c);
        out
    }

    /// `c x^i y^j`
    pub fn monomial(c: ExactRat, i: u32, j: u32) -> Self {
        let mut out = BiPoly::zero();
        out.add_term(i, j, c);
        out
    }

    /// `x^i * q(y)`
    pub fn from_y_poly(i: u32, q: &Poly) -> Self {
        let mut out = BiPoly::zero();
        for (j, c) in q.coeffs().iter().enumerate() {
            out.add_term(i, j as u32, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: ExactRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(ExactRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExactRat {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(ExactRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExactRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    /// Largest x-degree present, or `None` when zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Substitutes `x -> 1/x` and multiplies by `x^n`.
    pub fn mirror_x(&self, n: u32) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            assert!(i <= n, "x-degree {i} exceeds mirror order {n}");
            out.add_term(n - i, j, c.clone());
        }
        out
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

forward_owned!(BiPoly, Add, add);
forward_owned!(BiPoly, Sub, sub);
forward_owned!(BiPoly, Mul, mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&(i, j), c)| {
                let x = monomial_name("x", i as usize);
                let y = monomial_name("y", j as usize);
                let mono = match (x.is_empty(), y.is_empty()) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => format!("{x}*{y}"),
                };
                (c, mono)
            }),
        )
    }
}
