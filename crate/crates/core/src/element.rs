//! Elements of the ambient super-algebra: finite sums of normally ordered
//! monomials with truncated a0-polynomial coefficients. All operations are
//! pure and exact; zero coefficients are pruned so equality is structural.

use crate::coeff::Coefficient;
use crate::context::{Context, GenFamily, GeneratorRef};
use crate::error::{AlgebraError, Result};
use crate::monomial::{normal_ordered_product, Monomial};
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    ctx: Context,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Element {
    pub fn zero(ctx: Context) -> Self {
        Element { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Context) -> Self {
        Element::scalar(ctx, GaussRat::one())
    }

    pub fn scalar(ctx: Context, v: GaussRat) -> Self {
        Element::from_coefficient(ctx, Coefficient::scalar(v, ctx.order()))
    }

    pub fn from_coefficient(ctx: Context, c: Coefficient) -> Self {
        let mut e = Element::zero(ctx);
        e.insert(Monomial::unit(), c);
        e
    }

    pub fn generator(ctx: Context, g: GeneratorRef) -> Self {
        ctx.check_index(g.index);
        let mut e = Element::zero(ctx);
        e.insert(Monomial::generator(g), Coefficient::one(ctx.order()));
        e
    }

    /// Coordinate `x[mu]`.
    pub fn coord(ctx: Context, mu: u32) -> Self {
        Element::generator(ctx, GeneratorRef::new(GenFamily::Coord, mu))
    }

    /// Derivative `del[mu]`.
    pub fn deriv(ctx: Context, mu: u32) -> Self {
        Element::generator(ctx, GeneratorRef::new(GenFamily::Deriv, mu))
    }

    /// One-form `dx[mu]`.
    pub fn form(ctx: Context, mu: u32) -> Self {
        Element::generator(ctx, GeneratorRef::new(GenFamily::Form, mu))
    }

    /// Form dual `q[mu]`.
    pub fn form_deriv(ctx: Context, mu: u32) -> Self {
        Element::generator(ctx, GeneratorRef::new(GenFamily::FormDeriv, mu))
    }

    pub fn with_term(ctx: Context, m: Monomial, c: Coefficient) -> Self {
        let mut e = Element::zero(ctx);
        e.insert(m, c);
        e
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.ctx.order()))
    }

    /// The a0-order through which this element is meaningful: the minimum of
    /// its coefficients' known orders (the ambient order when empty).
    pub fn known_order(&self) -> u32 {
        self.terms
            .values()
            .map(Coefficient::known_order)
            .min()
            .unwrap_or_else(|| self.ctx.order())
    }

    /// Lowest a0-exponent carrying a non-zero value anywhere.
    pub fn min_a0_order(&self) -> Option<u32> {
        self.terms.values().filter_map(Coefficient::min_a0_order).min()
    }

    fn insert(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let merged = o.get().plus(&c);
                if merged.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
        }
    }

    fn require_same_ctx(&self, o: &Element) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(AlgebraError::ContextMismatch {
                left: self.ctx.to_string(),
                right: o.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Element) -> Result<Element> {
        self.require_same_ctx(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Element) -> Result<Element> {
        self.try_add(&o.negated())
    }

    pub fn negated(&self) -> Element {
        Element {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> Element {
        if s.is_zero() {
            return Element::zero(self.ctx);
        }
        Element {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(s))).collect(),
        }
    }

    /// Multiply every coefficient by a fixed a0-polynomial.
    pub fn scale_coeff(&self, s: &Coefficient) -> Element {
        let mut out = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.times(s));
        }
        out
    }

    /// Multiply by `i*a0` (ubiquitous in the deformed relations).
    pub fn times_ia0(&self) -> Element {
        self.scale_coeff(&Coefficient::a0_power(GaussRat::i(), 1, self.ctx.order()))
    }

    pub fn try_multiply(&self, o: &Element) -> Result<Element> {
        self.require_same_ctx(o)?;
        let mut out = Element::zero(self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let cab = ca.times(cb);
                if cab.is_zero() {
                    continue;
                }
                for (m, s) in normal_ordered_product(&self.ctx, ma, mb) {
                    out.insert(m, cab.scale(&s));
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, o: &Element) -> Element {
        self.try_multiply(o).expect("context mismatch in product")
    }

    /// Split into (even, odd) grading components.
    pub fn parity_split(&self) -> (Element, Element) {
        let mut even = Element::zero(self.ctx);
        let mut odd = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            if m.is_odd() {
                odd.insert(m.clone(), c.clone());
            } else {
                even.insert(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// Form degree when every monomial shares one, `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// The common parity of every monomial, when there is one (`Some(false)`
    /// for zero: vacuously even).
    fn uniform_parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(Monomial::is_odd);
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    /// Graded commutator `[[u, v]] = u v - (-1)^{|u||v|} v u`, extended
    /// bilinearly from grading-homogeneous components.
    pub fn graded_commutator(&self, o: &Element) -> Element {
        // Parity-homogeneous operands need a single sign and no splitting.
        if let (Some(uo), Some(vo)) = (self.uniform_parity(), o.uniform_parity()) {
            let uv = self.multiply(o);
            let vu = o.multiply(self);
            return if uo && vo { uv.try_add(&vu).unwrap() } else { uv.try_sub(&vu).unwrap() };
        }
        let uv = self.multiply(o);
        let (ue, uo) = self.parity_split();
        let (ve, vo) = o.parity_split();
        // v u with the grading sign folded in per component pair:
        // only odd*odd picks up a plus (anticommutator), the rest subtract.
        let mut vu_signed = Element::zero(self.ctx);
        for (v_part, v_odd) in [(&ve, false), (&vo, true)] {
            if v_part.is_zero() {
                continue;
            }
            for (u_part, u_odd) in [(&ue, false), (&uo, true)] {
                if u_part.is_zero() {
                    continue;
                }
                let prod = v_part.multiply(u_part);
                if u_odd && v_odd {
                    vu_signed = vu_signed.try_add(&prod.negated()).unwrap();
                } else {
                    vu_signed = vu_signed.try_add(&prod).unwrap();
                }
            }
        }
        uv.try_sub(&vu_signed).unwrap()
    }

    /// Plain commutator `u v - v u`.
    pub fn commutator(&self, o: &Element) -> Element {
        self.multiply(o).try_sub(&o.multiply(self)).unwrap()
    }

    /// Anticommutator `u v + v u`.
    pub fn anticommutator(&self, o: &Element) -> Element {
        self.multiply(o).try_add(&o.multiply(self)).unwrap()
    }

    /// Graded Jacobi residual
    /// `(-1)^{|u||w|} [[u, [[v, w]]]] + (-1)^{|v||u|} [[v, [[w, u]]]] +
    ///  (-1)^{|w||v|} [[w, [[u, v]]]]`,
    /// extended bilinearly from grading-homogeneous components. Identically
    /// zero in any associative super-algebra, so a non-zero value always
    /// indicates an engine defect.
    pub fn jacobi_residual(u: &Element, v: &Element, w: &Element) -> Element {
        let ctx = u.ctx;
        let us = u.parity_split();
        let vs = v.parity_split();
        let ws = w.parity_split();
        fn parts(s: &(Element, Element)) -> [(&Element, bool); 2] {
            [(&s.0, false), (&s.1, true)]
        }
        let mut total = Element::zero(ctx);
        for &(up, uo) in parts(&us).iter() {
            if up.is_zero() {
                continue;
            }
            for &(vp, vo) in parts(&vs).iter() {
                if vp.is_zero() {
                    continue;
                }
                for &(wp, wo) in parts(&ws).iter() {
                    if wp.is_zero() {
                        continue;
                    }
                    let sign = |a: bool, b: bool| if a && b { GaussRat::from_int(-1) } else { GaussRat::one() };
                    let t1 = up.graded_commutator(&vp.graded_commutator(wp)).scale(&sign(uo, wo));
                    let t2 = vp.graded_commutator(&wp.graded_commutator(up)).scale(&sign(vo, uo));
                    let t3 = wp.graded_commutator(&up.graded_commutator(vp)).scale(&sign(wo, vo));
                    total = total
                        .try_add(&t1)
                        .and_then(|t| t.try_add(&t2))
                        .and_then(|t| t.try_add(&t3))
                        .unwrap();
                }
            }
        }
        total
    }

    /// Project onto the vacuum module: drop every monomial containing a
    /// derivative or form-dual factor.
    pub fn act_on_vacuum(&self) -> Element {
        Element {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.survives_vacuum())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division by `a0`; every coefficient must vanish at a0-order 0,
    /// and the result is known to one order less.
    pub fn divide_by_a0(&self) -> Result<Element> {
        let mut out = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.shift_down()?);
        }
        Ok(out)
    }

    /// Whether `self` and `o` agree through a0-order `k` (exactly, on every
    /// monomial). Asking beyond the known order of either side is an error:
    /// such a comparison would claim more than the truncation supports.
    pub fn equals_up_to_order(&self, o: &Element, k: u32) -> Result<bool> {
        self.require_same_ctx(o)?;
        let known = self.known_order().min(o.known_order());
        if k > known {
            return Err(AlgebraError::OrderExceeded { asked: k, known });
        }
        let diff = self.try_sub(o)?;
        Ok(diff
            .terms
            .values()
            .all(|c| c.terms().all(|(e, _)| e > k)))
    }

    /// Truncate to a lower ambient order (context order becomes `order`).
    pub fn truncate_to_order(&self, order: u32) -> Element {
        assert!(order <= self.ctx.order());
        let ctx = self.ctx.with_order(order);
        let mut out = Element::zero(ctx);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.truncated(order));
        }
        out
    }

    /// The a0-order-0 part, with full knowledge retained.
    pub fn classical_part(&self) -> Element {
        let mut out = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            out.insert(m.clone(), Coefficient::scalar(c.constant_part(), c.known_order()));
        }
        out
    }

    /// The coefficient of `a0^t` as a scalar-valued element (exponent 0).
    pub fn a0_slice(&self, t: u32) -> Element {
        let mut out = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            out.insert(m.clone(), Coefficient::scalar(c.get(t), c.known_order()));
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = c.render_factor();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (body, m.is_unit()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{m}")?,
                (Some(b), true) => write!(f, "{b}")?,
                (Some(b), false) => write!(f, "{b}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, o: Element) -> Element {
        self.try_add(&o).expect("context mismatch in sum")
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        self.try_sub(&o).expect("context mismatch in difference")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, o: Element) -> Element {
        self.multiply(&o)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(4, 6)
    }

    #[test]
    fn deriv_coord_commutator_is_metric() {
        let c = ctx();
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = Element::deriv(c, mu).commutator(&Element::coord(c, nu));
                let expected = Element::scalar(c, GaussRat::from_int(c.eta(mu, nu) as i64));
                assert_eq!(lhs, expected, "([del[{mu}], x[{nu}]])");
            }
        }
    }

    #[test]
    fn graded_commutator_of_forms_anticommutes() {
        let c = ctx();
        // [[dx1, dx2]] = dx1 dx2 + dx2 dx1 = 0
        let r = Element::form(c, 1).graded_commutator(&Element::form(c, 2));
        assert!(r.is_zero());
        // [[q1, dx1]] = eta(1,1) = 1
        let r = Element::form_deriv(c, 1).graded_commutator(&Element::form(c, 1));
        assert_eq!(r, Element::one(c));
    }

    #[test]
    fn mixed_grading_commutator_splits_by_parity() {
        let c = ctx();
        // u = dx1 + x1 (inhomogeneous), v = q1:
        // [[u, v]] = {dx1, q1} + [x1, q1] = 1 + 0
        let u = Element::form(c, 1) + Element::coord(c, 1);
        let r = u.graded_commutator(&Element::form_deriv(c, 1));
        assert_eq!(r, Element::one(c));
    }

    #[test]
    fn vacuum_projection_filters_blocks() {
        let c = ctx();
        let e = Element::coord(c, 1).multiply(&Element::deriv(c, 2))
            + Element::form(c, 1)
            + Element::form_deriv(c, 3)
            + Element::coord(c, 0);
        let v = e.act_on_vacuum();
        assert_eq!(v, Element::form(c, 1) + Element::coord(c, 0));
    }

    #[test]
    fn divide_by_a0_shifts_orders() {
        let c = ctx();
        let e = Element::coord(c, 1).times_ia0();
        let d = e.divide_by_a0().unwrap();
        assert_eq!(d.to_string(), "i*x[1]");
        assert_eq!(d.known_order(), 5);
        assert!(Element::one(c).divide_by_a0().is_err());
    }

    #[test]
    fn equals_up_to_order_guards_overclaims() {
        let c = ctx();
        let u = Element::coord(c, 1).times_ia0().divide_by_a0().unwrap(); // known 5
        let v = Element::coord(c, 1).scale(&GaussRat::i());
        assert!(u.equals_up_to_order(&v, 5).unwrap());
        assert!(matches!(
            u.equals_up_to_order(&v, 6),
            Err(AlgebraError::OrderExceeded { asked: 6, known: 5 })
        ));
    }

    #[test]
    fn jacobi_residual_vanishes_on_generators() {
        let c = ctx();
        let u = Element::deriv(c, 0);
        let v = Element::coord(c, 0).multiply(&Element::coord(c, 1));
        let w = Element::form(c, 1).multiply(&Element::form_deriv(c, 1));
        assert!(Element::jacobi_residual(&u, &v, &w).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let c = ctx();
        let e = Element::coord(c, 0).times_ia0().negated() + Element::one(c);
        assert_eq!(e.to_string(), "1 - i*a0*x[0]");
        assert_eq!(Element::zero(c).to_string(), "0");
    }
}
