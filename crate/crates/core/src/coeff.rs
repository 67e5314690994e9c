//! Truncated polynomials in the deformation scale `a0` over Gaussian
//! rationals. Every coefficient tracks the a0-order through which it is
//! meaningful (`known_order`); exponents beyond that order are discarded by
//! every operation, so arithmetic stays exact order-by-order.

use crate::error::{AlgebraError, Result};
use crate::scalar::GaussRat;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coefficient {
    /// Dense coefficient list indexed by a0-exponent; no trailing zeros.
    coeffs: Vec<GaussRat>,
    /// Highest a0-exponent this value is meaningful through.
    known: u32,
}

impl Coefficient {
    pub fn zero(known: u32) -> Self {
        Coefficient { coeffs: Vec::new(), known }
    }

    pub fn scalar(v: GaussRat, known: u32) -> Self {
        Self::a0_power(v, 0, known)
    }

    pub fn one(known: u32) -> Self {
        Self::scalar(GaussRat::one(), known)
    }

    /// `v * a0^exp`, silently dropped when `exp` is beyond `known`.
    pub fn a0_power(v: GaussRat, exp: u32, known: u32) -> Self {
        if v.is_zero() || exp > known {
            return Self::zero(known);
        }
        let mut coeffs = vec![GaussRat::zero(); exp as usize + 1];
        coeffs[exp as usize] = v;
        Coefficient { coeffs, known }
    }

    pub fn known_order(&self) -> u32 {
        self.known
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, exp: u32) -> GaussRat {
        self.coeffs.get(exp as usize).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Non-zero terms as `(a0-exponent, value)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (e as u32, v))
    }

    pub fn constant_part(&self) -> GaussRat {
        self.get(0)
    }

    /// Lowest a0-exponent with a non-zero value.
    pub fn min_a0_order(&self) -> Option<u32> {
        self.terms().next().map(|(e, _)| e)
    }

    fn trim(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(v) if v.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn plus(&self, o: &Self) -> Self {
        let known = self.known.min(o.known);
        if self.is_zero() {
            return o.truncated(known);
        }
        if o.is_zero() {
            return self.truncated(known);
        }
        let len = self.coeffs.len().max(o.coeffs.len()).min(known as usize + 1);
        let mut coeffs = Vec::with_capacity(len);
        for e in 0..len {
            coeffs.push(match (self.coeffs.get(e), o.coeffs.get(e)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => GaussRat::zero(),
            });
        }
        Coefficient { coeffs, known }.trim()
    }

    pub fn minus(&self, o: &Self) -> Self {
        let known = self.known.min(o.known);
        if self.is_zero() {
            return o.truncated(known).negated();
        }
        if o.is_zero() {
            return self.truncated(known);
        }
        let len = self.coeffs.len().max(o.coeffs.len()).min(known as usize + 1);
        let mut coeffs = Vec::with_capacity(len);
        for e in 0..len {
            coeffs.push(match (self.coeffs.get(e), o.coeffs.get(e)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negated(),
                (None, None) => GaussRat::zero(),
            });
        }
        Coefficient { coeffs, known }.trim()
    }

    pub fn negated(&self) -> Self {
        Coefficient {
            coeffs: self.coeffs.iter().map(GaussRat::negated).collect(),
            known: self.known,
        }
    }

    pub fn times(&self, o: &Self) -> Self {
        let known = self.known.min(o.known);
        if self.is_zero() || o.is_zero() {
            return Self::zero(known);
        }
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(known as usize + 1);
        let mut coeffs = vec![GaussRat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len || b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Coefficient { coeffs, known }.trim()
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        if s.is_zero() {
            return Self::zero(self.known);
        }
        if s.is_one() {
            return self.clone();
        }
        if s.is_neg_one() {
            return self.negated();
        }
        Coefficient {
            coeffs: self.coeffs.iter().map(|v| v.times(s)).collect(),
            known: self.known,
        }
        .trim()
    }

    /// Exact division by `a0`. The constant part must vanish, and one order
    /// of knowledge is consumed.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.constant_part().is_zero() {
            return Err(AlgebraError::ConstantTermNotZero);
        }
        if self.known == 0 {
            return Err(AlgebraError::OrderExhausted);
        }
        let coeffs = if self.coeffs.is_empty() {
            Vec::new()
        } else {
            self.coeffs[1..].to_vec()
        };
        Ok(Coefficient { coeffs, known: self.known - 1 }.trim())
    }

    /// Drop every exponent above `order` and cap the known order there.
    pub fn truncated(&self, order: u32) -> Self {
        let known = self.known.min(order);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(known as usize + 1);
        Coefficient { coeffs, known }.trim()
    }

    /// Render one `value * a0^exp` factor without a leading sign.
    fn write_term(f: &mut fmt::Formatter<'_>, v: &GaussRat, exp: u32) -> fmt::Result {
        let abs = v.display_abs();
        if exp == 0 {
            return write!(f, "{abs}");
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        if exp == 1 {
            write!(f, "a0")
        } else {
            write!(f, "a0^{exp}")
        }
    }

    /// A multiplicative factor for term rendering: the leading displayed
    /// sign, and the body (`None` when the factor is exactly `1`, i.e. when
    /// the attached monomial should print bare).
    pub(crate) fn render_factor(&self) -> (bool, Option<String>) {
        let terms: Vec<(u32, &GaussRat)> = self.terms().collect();
        match terms.as_slice() {
            [] => (false, Some("0".to_string())),
            [(exp, v)] => {
                let neg = v.prints_negative();
                let abs = v.display_abs();
                if *exp == 0 && abs.is_one() {
                    (neg, None)
                } else {
                    (neg, Some(format!("{}", FactorDisplay { v, exp: *exp })))
                }
            }
            _ => (false, Some(format!("({self})"))),
        }
    }
}

struct FactorDisplay<'a> {
    v: &'a GaussRat,
    exp: u32,
}

impl fmt::Display for FactorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Coefficient::write_term(f, self.v, self.exp)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exp, v)) in self.terms().enumerate() {
            if k == 0 {
                if v.prints_negative() {
                    write!(f, "-")?;
                }
            } else if v.prints_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            Self::write_term(f, v, exp)?;
        }
        Ok(())
    }
}
