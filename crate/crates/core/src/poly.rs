//! Exact integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A univariate integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .poly
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial(&[(self.var, i)])));
        write_terms(f, terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("t").fmt(f)
    }
}

/// A bivariate integer polynomial as a map from exponent pairs `(i, j)` of `x^i y^j` to
/// non-zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
    names: Option<(&'static str, &'static str)>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Renames the variables used when printing; `("x", "y")` by default.
    pub fn with_names(mut self, x: &'static str, y: &'static str) -> Self {
        self.names = Some((x, y));
        self
    }

    pub fn names(&self) -> (&'static str, &'static str) {
        self.names.unwrap_or(("x", "y"))
    }

    pub fn add_term(&mut self, i: u32, j: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Non-zero terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }

    /// Sorted term list, one `coeff x^i y^j` entry per non-zero term.
    pub fn term_list(&self) -> Vec<String> {
        let (x, y) = self.names();
        self.terms().map(|(i, j, c)| format!("{c} {x}^{i} {y}^{j}")).collect()
    }

    /// The univariate polynomial `p(x) = self(x, 0)`.
    pub fn at_y_zero(&self) -> Poly {
        let deg = self.terms().map(|(i, _, _)| i as usize).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (i, j, c) in self.terms() {
            if j == 0 {
                coeffs[i as usize] += c;
            }
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for BiPoly {
    /// Terms by decreasing `x`-degree then decreasing `y`-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.names();
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| (c.clone(), monomial(&[(x, i as usize), (y, j as usize)])));
        write_terms(f, terms)
    }
}

fn monomial(vars: &[(&str, usize)]) -> String {
    let mut out = String::new();
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => out.push_str(v),
            _ => out.push_str(&format!("{v}^{e}")),
        }
    }
    out
}

fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigInt, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let abs = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{abs}{mono}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
