//! Laurent polynomials in the grading variable `q`, with integer
//! coefficients. Graded ranks and graded Euler characteristics live here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial `Σ c_k q^k` with integer coefficients.
///
/// Zero coefficients are never stored, so equality is exact term-wise
/// equality.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    pub fn monomial(exponent: i64, coefficient: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coefficient != 0 {
            terms.insert(exponent, coefficient);
        }
        LaurentPoly { terms }
    }

    pub fn constant(value: i64) -> Self {
        LaurentPoly::monomial(0, value)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: i64) {
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at an integer value of `q`.
    pub fn eval(&self, q: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&e, &c)| {
                assert!(e >= 0, "cannot evaluate negative exponent at an integer");
                c * q.pow(e as u32)
            })
            .sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly::zero() - self.clone()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Canonical rendering, terms in ascending exponent order:
    /// `1 + q`, `-q + q^3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, magnitude) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}*q")?,
                (_, 1) => write!(f, "q^{e}")?,
                (_, m) => write!(f, "{m}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_normalization() {
        let p = LaurentPoly::one() + LaurentPoly::q();
        assert_eq!(p.to_string(), "1 + q");
        let square = &p * &p;
        assert_eq!(square.to_string(), "1 + 2*q + q^2");
        let diff = &square - &p;
        assert_eq!(diff.to_string(), "q + q^2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn power_and_eval() {
        let p = LaurentPoly::one() + LaurentPoly::q();
        assert_eq!(p.pow(3).coefficient(2), 3);
        assert_eq!(p.pow(3).eval(1), 8);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn display_negative_leading_term() {
        let p = LaurentPoly::monomial(3, 1) - LaurentPoly::q();
        assert_eq!(p.to_string(), "-q + q^3");
        let m = LaurentPoly::monomial(-1, 2);
        assert_eq!(m.to_string(), "2*q^-1");
    }
}
