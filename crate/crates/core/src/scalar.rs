//! Exact Gaussian rationals: complex numbers whose real and imaginary parts
//! are arbitrary-precision rationals. These are the ground scalars of the
//! whole engine; no floating point appears anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    pub fn from_bigint(v: BigInt) -> Self {
        GaussRat::new(BigRational::from_integer(v), BigRational::zero())
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        GaussRat::new(BigRational::new(BigInt::from(p), BigInt::from(q)), BigRational::zero())
    }

    /// `(p/q)*i`.
    pub fn ratio_i(p: i64, q: i64) -> Self {
        GaussRat::new(BigRational::zero(), BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub(crate) fn is_neg_one(&self) -> bool {
        self.im.is_zero() && (-self.re.clone()).is_one()
    }

    pub fn plus(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        GaussRat::new(add_rat(&self.re, &o.re), add_rat(&self.im, &o.im))
    }

    pub fn minus(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.negated();
        }
        GaussRat::new(sub_rat(&self.re, &o.re), sub_rat(&self.im, &o.im))
    }

    pub fn times(&self, o: &Self) -> Self {
        // Values here are overwhelmingly zero, +-1, or purely real/imaginary;
        // dispatching on those shapes avoids most big-integer traffic.
        if self.is_zero() || o.is_zero() {
            return GaussRat::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        match (self.im.is_zero(), self.re.is_zero(), o.im.is_zero(), o.re.is_zero()) {
            // real * real
            (true, _, true, _) => GaussRat::new(&self.re * &o.re, BigRational::zero()),
            // real * imaginary
            (true, _, _, true) => GaussRat::new(BigRational::zero(), &self.re * &o.im),
            // imaginary * real
            (_, true, true, _) => GaussRat::new(BigRational::zero(), &self.im * &o.re),
            // imaginary * imaginary
            (_, true, _, true) => GaussRat::new(-(&self.im * &o.im), BigRational::zero()),
            // real * mixed
            (true, _, false, false) => {
                GaussRat::new(&self.re * &o.re, &self.re * &o.im)
            }
            // imaginary * mixed
            (_, true, false, false) => {
                GaussRat::new(-(&self.im * &o.im), &self.im * &o.re)
            }
            // mixed * real
            (false, false, true, _) => {
                GaussRat::new(&self.re * &o.re, &self.im * &o.re)
            }
            // mixed * imaginary
            (false, false, _, true) => {
                GaussRat::new(-(&self.im * &o.im), &self.re * &o.im)
            }
            // mixed * mixed
            (false, false, false, false) => GaussRat::new(
                &self.re * &o.re - &self.im * &o.im,
                &self.re * &o.im + &self.im * &o.re,
            ),
        }
    }

    pub fn negated(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Whether the canonical rendering starts with a minus sign.
    pub(crate) fn prints_negative(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }

    /// The value with the displayed leading sign stripped (identity for
    /// mixed real/imaginary values, which render inside parentheses).
    pub(crate) fn display_abs(&self) -> Self {
        if self.prints_negative() {
            self.negated()
        } else {
            self.clone()
        }
    }
}

fn add_rat(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a + b
    }
}

fn sub_rat(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        -b.clone()
    } else {
        a - b
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im).is_one() {
        write!(f, "-i")
    } else {
        write_rat(f, im)?;
        write!(f, "*i")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write_rat(f, &self.re);
        }
        if self.re.is_zero() {
            return write_imag(f, &self.im);
        }
        // Mixed values are parenthesized so they compose as a single factor.
        write!(f, "(")?;
        write_rat(f, &self.re)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            write_imag(f, &(-self.im.clone()))?;
        } else {
            write!(f, " + ")?;
            write_imag(f, &self.im)?;
        }
        write!(f, ")")
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        self.plus(&o)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        self.minus(&o)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        self.times(&o)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        self.negated()
    }
}
