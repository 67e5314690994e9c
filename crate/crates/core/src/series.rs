//! Scalar series: elements of the commuting derivative-only subalgebra, and
//! the closed-form series operations (exponential, square root, inverse,
//! shift powers) used to build operator realizations. All series terminate
//! exactly because their arguments carry at least one power of `a0` per term.

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::context::Context;
use crate::scalar::GaussRat;
use num::{BigInt, BigRational, One, Zero};

/// An element containing derivative generators only. Such elements commute
/// with one another, so ordinary power-series manipulations apply.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarSeries {
    el: Element,
}

impl ScalarSeries {
    pub fn try_new(el: Element) -> Result<Self> {
        if el
            .terms()
            .any(|(m, _)| !m.coord_part().is_empty() || m.degree() > 0)
        {
            return Err(AlgebraError::NotScalarSeries);
        }
        Ok(ScalarSeries { el })
    }

    pub fn one(ctx: Context) -> Self {
        ScalarSeries { el: Element::one(ctx) }
    }

    pub fn element(&self) -> &Element {
        &self.el
    }

    pub fn into_element(self) -> Element {
        self.el
    }

    pub fn ctx(&self) -> Context {
        self.el.ctx()
    }

    pub fn plus(&self, o: &Self) -> Self {
        ScalarSeries { el: self.el.try_add(&o.el).expect("context mismatch in series sum") }
    }

    pub fn times(&self, o: &Self) -> Self {
        ScalarSeries { el: self.el.multiply(&o.el) }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        ScalarSeries { el: self.el.scale(s) }
    }

    fn has_zero_constant_slice(&self) -> bool {
        self.el.classical_part().is_zero()
    }
}

/// `exp(s)` for a scalar series whose a0-order-0 part vanishes (so the sum
/// terminates at the truncation order).
pub fn series_exp(s: &ScalarSeries) -> Result<ScalarSeries> {
    if !s.has_zero_constant_slice() {
        return Err(AlgebraError::SeriesConstantNotZero);
    }
    let ctx = s.ctx();
    let mut acc = Element::one(ctx);
    let mut term = Element::one(ctx);
    for k in 1..=ctx.order() + 1 {
        term = term.multiply(s.element()).scale(&GaussRat::ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.try_add(&term).unwrap();
    }
    Ok(ScalarSeries { el: acc })
}

/// `(1 + s)^{1/2}` by the binomial series; `s` must vanish at a0-order 0.
pub fn series_sqrt_one_plus(s: &ScalarSeries) -> Result<ScalarSeries> {
    if !s.has_zero_constant_slice() {
        return Err(AlgebraError::SeriesConstantNotZero);
    }
    let ctx = s.ctx();
    let mut acc = Element::one(ctx);
    let mut term = Element::one(ctx);
    let mut binom = BigRational::one();
    for k in 1..=ctx.order() + 1 {
        // C(1/2, k) = C(1/2, k-1) * (1/2 - (k-1)) / k
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let step = (half - BigRational::from_integer(BigInt::from(k as i64 - 1)))
            / BigRational::from_integer(BigInt::from(k as i64));
        binom *= step;
        term = term.multiply(s.element());
        if term.is_zero() {
            break;
        }
        acc = acc
            .try_add(&term.scale(&GaussRat::from_rational(binom.clone())))
            .unwrap();
    }
    Ok(ScalarSeries { el: acc })
}

/// Multiplicative inverse of a scalar series whose a0-order-0 part is exactly
/// `1` (geometric series in `s - 1`).
pub fn series_inverse(s: &ScalarSeries) -> Result<ScalarSeries> {
    let ctx = s.ctx();
    let t = s.element().try_sub(&Element::one(ctx)).unwrap();
    if !t.classical_part().is_zero() {
        return Err(AlgebraError::SeriesConstantNotOne);
    }
    let neg_t = t.negated();
    let mut acc = Element::one(ctx);
    let mut term = Element::one(ctx);
    for _ in 1..=ctx.order() + 1 {
        term = term.multiply(&neg_t);
        if term.is_zero() {
            break;
        }
        acc = acc.try_add(&term).unwrap();
    }
    Ok(ScalarSeries { el: acc })
}

/// The generator of time shifts: `A = -i a0 del[0]`.
pub fn shift_generator(ctx: Context) -> ScalarSeries {
    let a = Element::deriv(ctx, 0)
        .scale_coeff(&Coefficient::a0_power(GaussRat::ratio_i(-1, 1), 1, ctx.order()));
    ScalarSeries { el: a }
}

/// The shift operator power `Z^c = exp(c A)` for exact rational `c`.
pub fn shift_power(ctx: Context, c: &BigRational) -> ScalarSeries {
    if c.is_zero() {
        return ScalarSeries::one(ctx);
    }
    let arg = shift_generator(ctx).scale(&GaussRat::from_rational(c.clone()));
    series_exp(&arg).expect("shift generator vanishes at a0-order 0")
}

/// Natural logarithm of a scalar series whose a0-order-0 part is exactly `1`
/// (alternating series in `s - 1`).
pub fn series_log(s: &ScalarSeries) -> Result<ScalarSeries> {
    let ctx = s.ctx();
    let t = s.element().try_sub(&Element::one(ctx)).unwrap();
    if !t.classical_part().is_zero() {
        return Err(AlgebraError::SeriesConstantNotOne);
    }
    let mut acc = Element::zero(ctx);
    let mut term = Element::one(ctx);
    for k in 1..=ctx.order() + 1 {
        term = term.multiply(&t);
        if term.is_zero() {
            break;
        }
        let sign: i64 = if k % 2 == 0 { -1 } else { 1 };
        acc = acc
            .try_add(&term.scale(&GaussRat::ratio(sign, k as i64)))
            .unwrap();
    }
    Ok(ScalarSeries { el: acc })
}

/// `s^r` for exact rational `r`, via `exp(r log s)`; the a0-order-0 part of
/// `s` must be exactly `1`.
pub fn series_pow(s: &ScalarSeries, r: &BigRational) -> Result<ScalarSeries> {
    if r.is_zero() {
        series_log(s)?; // still insist on a well-formed base
        return Ok(ScalarSeries::one(s.ctx()));
    }
    let lg = series_log(s)?;
    series_exp(&lg.scale(&GaussRat::from_rational(r.clone())))
}
