//! Ambient parameters shared by every object in a computation: the number of
//! spacetime directions and the a0-truncation order.

use std::fmt;

/// Spacetime dimension `n` (index `0` is timelike, `1..n` spacelike) together
/// with the a0-order through which series are carried. All elements entering
/// a binary operation must agree on both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Context {
    n: u32,
    order: u32,
}

impl Context {
    pub fn new(n: u32, order: u32) -> Self {
        assert!(n >= 2, "need at least one timelike and one spacelike direction");
        Context { n, order }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn with_order(&self, order: u32) -> Self {
        Context { n: self.n, order }
    }

    /// Diagonal Minkowski metric `diag(-1, 1, ..., 1)`.
    pub fn eta(&self, mu: u32, nu: u32) -> i32 {
        debug_assert!(mu < self.n && nu < self.n);
        if mu != nu {
            0
        } else if mu == 0 {
            -1
        } else {
            1
        }
    }

    pub(crate) fn check_index(&self, index: u32) {
        assert!(index < self.n, "generator index {index} out of range for n = {}", self.n);
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n = {}, order = {})", self.n, self.order)
    }
}

/// The block of the canonical word a generator belongs to. The variant order
/// is exactly the canonical block order of a normally ordered monomial:
/// coordinates, then one-forms, then form duals, then derivatives.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenFamily {
    /// Coordinate `x[mu]` (even).
    Coord,
    /// One-form `dx[mu]` (odd, squares to zero).
    Form,
    /// Dual of a one-form, `q[mu]` (odd, squares to zero).
    FormDeriv,
    /// Derivative `del[mu]` (even).
    Deriv,
}

impl GenFamily {
    /// Grading: one-forms and their duals are odd, everything else even.
    pub fn is_odd(&self) -> bool {
        matches!(self, GenFamily::Form | GenFamily::FormDeriv)
    }
}

/// A single generator of the ambient algebra.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorRef {
    pub family: GenFamily,
    pub index: u32,
}

impl GeneratorRef {
    pub fn new(family: GenFamily, index: u32) -> Self {
        GeneratorRef { family, index }
    }
}
