//! Sparse polynomials with integer coefficients over a fixed symbol list.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{QuadScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPolynomial {
    symbols: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MonomialPolynomial {
    pub fn zero(symbols: &[&str]) -> Self {
        MonomialPolynomial {
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(symbols: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(symbols);
        p.add_term(vec![0; symbols.len()], c.into());
        p
    }

    /// The polynomial consisting of symbol `idx` alone.
    pub fn var(symbols: &[&str], idx: usize) -> Self {
        let mut e = vec![0; symbols.len()];
        e[idx] = 1;
        let mut p = Self::zero(symbols);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: BigInt) {
        assert_eq!(exponents.len(), self.symbols.len(), "exponent arity");
        let slot = self.terms.entry(exponents).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn assert_same_symbols(&self, other: &Self) {
        assert_eq!(self.symbols, other.symbols, "polynomials over different symbols");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_symbols(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MonomialPolynomial {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = Self::zero(&self.symbol_refs());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * &k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_symbols(other);
        let mut out = Self::zero(&self.symbol_refs());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.symbol_refs(), 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn symbol_refs(&self) -> Vec<&str> {
        self.symbols.iter().map(String::as_str).collect()
    }

    /// Replaces symbol `idx` by `value` (a polynomial over the same symbols).
    pub fn substitute(&self, idx: usize, value: &Self) -> Self {
        self.assert_same_symbols(value);
        let mut out = Self::zero(&self.symbol_refs());
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[idx] = 0;
            let mut mono = Self::zero(&self.symbol_refs());
            mono.add_term(rest, c.clone());
            out = out.add(&mono.mul(&value.pow(e[idx])));
        }
        out
    }

    pub fn eval(&self, values: &[QuadScalar]) -> QuadScalar {
        assert_eq!(values.len(), self.symbols.len(), "one value per symbol");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: QuadScalar = values.iter().zip(e).map(|(v, &k)| v.pow(k)).product();
                mono * QuadScalar::from_rational(Rational::from_integer(c.clone()))
            })
            .sum()
    }

    /// Renders one monomial such as `a^2*b`.
    pub fn monomial_label(symbols: &[String], exponents: &[u32]) -> String {
        let parts: Vec<String> = symbols
            .iter()
            .zip(exponents)
            .filter(|(_, &k)| k > 0)
            .map(|(s, &k)| if k == 1 { s.clone() } else { format!("{}^{}", s, k) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MonomialPolynomial {
    /// Highest exponents of the first symbol first, e.g. `-a^4 + 2*a^2*b^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = Self::monomial_label(&self.symbols, e);
            let mag = c.abs();
            let body = match (mag.is_one(), mono == "1") {
                (true, false) => mono,
                (_, true) => mag.to_string(),
                (false, false) => format!("{}*{}", mag, mono),
            };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABC: [&str; 3] = ["a", "b", "c"];

    fn v(i: usize) -> MonomialPolynomial {
        MonomialPolynomial::var(&ABC, i)
    }

    #[test]
    fn binomial_square() {
        let s = v(0).add(&v(1)).pow(2);
        assert_eq!(s.coeff(&[2, 0, 0]), BigInt::from(1));
        assert_eq!(s.coeff(&[1, 1, 0]), BigInt::from(2));
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.to_string(), "a^2 + 2*a*b + b^2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let d = v(0).sub(&v(0));
        assert!(d.is_zero());
        assert_eq!(d.to_string(), "0");
        assert_eq!(v(2).scale(-3).to_string(), "-3*c");
    }

    #[test]
    fn substitution_and_evaluation() {
        // a^2 with a := b + 1
        let one = MonomialPolynomial::constant(&ABC, 1);
        let p = v(0).pow(2).substitute(0, &v(1).add(&one));
        assert_eq!(p.to_string(), "b^2 + 2*b + 1");
        let vals = [
            QuadScalar::from_int(7),
            QuadScalar::from_int(3),
            QuadScalar::from_int(0),
        ];
        assert_eq!(p.eval(&vals), QuadScalar::from_int(16));
    }
}
