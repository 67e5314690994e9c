//! Abstract noncommutative expressions in the deformed coordinates `xhat[mu]`
//! and one-forms `xi[mu]`, normalized to an ordered-word basis.
//!
//! The basis words are: spatial coordinates with ascending indices, then
//! powers of the time coordinate, then one-forms with strictly increasing
//! indices. Reordering uses the deformed coordinate bracket
//! `[xhat[0], xhat[j]] = i a0 xhat[j]` and the family's one-form/coordinate
//! brackets, so normalization is family- and c-aware. The `sitarz` family's
//! one-form brackets do not close over the one-forms alone, so swapping a
//! one-form past a coordinate there is an error rather than a rewrite.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One};

use crate::coeff::Coefficient;
use crate::context::Context;
use crate::error::{AlgebraError, Result};
use crate::realization::Family;
use crate::scalar::GaussRat;

/// One abstract generator symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NCAtom {
    XHat(u32),
    Xi(u32),
}

impl NCAtom {
    pub fn is_odd(&self) -> bool {
        matches!(self, NCAtom::Xi(_))
    }

    /// Canonical block: spatial coordinates, then the time coordinate, then
    /// one-forms.
    fn block(&self) -> u8 {
        match self {
            NCAtom::XHat(i) if *i > 0 => 0,
            NCAtom::XHat(_) => 1,
            NCAtom::Xi(_) => 2,
        }
    }

    fn index(&self) -> u32 {
        match self {
            NCAtom::XHat(i) | NCAtom::Xi(i) => *i,
        }
    }
}

impl fmt::Display for NCAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NCAtom::XHat(mu) => write!(f, "xhat[{mu}]"),
            NCAtom::Xi(mu) => write!(f, "xi[{mu}]"),
        }
    }
}

/// A basis word: spatial coordinates (ascending, with multiplicity), then
/// `x0_power` factors of the time coordinate, then strictly increasing
/// one-form indices.
///
/// Words order by total degree descending, then lexicographically, so the
/// leading term of an expression is its highest-degree word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NCWord {
    pub spatial: Vec<u32>,
    pub x0_power: u32,
    pub forms: Vec<u32>,
}

impl Ord for NCWord {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        o.degree()
            .cmp(&self.degree())
            .then_with(|| self.spatial.cmp(&o.spatial))
            .then_with(|| self.x0_power.cmp(&o.x0_power))
            .then_with(|| self.forms.cmp(&o.forms))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl NCWord {
    pub fn unit() -> Self {
        NCWord::default()
    }

    pub fn is_unit(&self) -> bool {
        self.spatial.is_empty() && self.x0_power == 0 && self.forms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.spatial.len() as u32 + self.x0_power + self.forms.len() as u32
    }

    pub fn form_degree(&self) -> u32 {
        self.forms.len() as u32
    }

    pub fn atoms(&self) -> Vec<NCAtom> {
        let mut v: Vec<NCAtom> = self.spatial.iter().map(|&i| NCAtom::XHat(i)).collect();
        v.extend(std::iter::repeat_n(NCAtom::XHat(0), self.x0_power as usize));
        v.extend(self.forms.iter().map(|&i| NCAtom::Xi(i)));
        v
    }

    fn from_sorted_atoms(atoms: &[NCAtom]) -> Self {
        let mut w = NCWord::unit();
        for a in atoms {
            match a {
                NCAtom::XHat(0) => w.x0_power += 1,
                NCAtom::XHat(i) => w.spatial.push(*i),
                NCAtom::Xi(i) => w.forms.push(*i),
            }
        }
        w
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for a in self.atoms() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Family- and c-specific rewriting rules bringing abstract words to the
/// ordered basis.
#[derive(Clone, Debug)]
pub struct PbwRules {
    ctx: Context,
    family: Family,
    c: BigRational,
}

impl PbwRules {
    pub fn new(ctx: Context, family: Family, c: BigRational) -> Self {
        PbwRules { ctx, family, c }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    /// `[xi[mu], xhat[nu]]` as a combination of one-forms: pairs
    /// `(alpha, s)` meaning `s * a0 * xi[alpha]`.
    fn xi_x_bracket(&self, mu: u32, nu: u32) -> Result<Vec<(u32, GaussRat)>> {
        let ic = GaussRat::i().times(&GaussRat::from_rational(self.c.clone()));
        match self.family {
            Family::Sitarz => Err(AlgebraError::FamilyNotClosed {
                family: self.family.to_string(),
            }),
            Family::D1 => {
                if nu != 0 {
                    Ok(vec![])
                } else if mu == 0 {
                    Ok(vec![(0, ic)])
                } else {
                    Ok(vec![(mu, GaussRat::ratio_i(-1, 1))])
                }
            }
            Family::D2 => {
                if mu == 0 {
                    Ok(vec![(nu, ic)])
                } else if nu == 0 {
                    // i (c - 1) a0 xi[mu]
                    let s = GaussRat::i()
                        .times(&GaussRat::from_rational(self.c.clone() - BigRational::one()));
                    Ok(vec![(mu, s)])
                } else {
                    Ok(vec![])
                }
            }
        }
    }
}

/// A finite linear combination of basis words with truncated a0-polynomial
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCExpression {
    ctx: Context,
    terms: BTreeMap<NCWord, Coefficient>,
}

impl NCExpression {
    pub fn zero(ctx: Context) -> Self {
        NCExpression { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Context) -> Self {
        NCExpression::scalar(ctx, Coefficient::one(ctx.order()))
    }

    pub fn scalar(ctx: Context, c: Coefficient) -> Self {
        let mut e = NCExpression::zero(ctx);
        e.insert(NCWord::unit(), c);
        e
    }

    /// A single generator (already a basis word).
    pub fn atom(ctx: Context, a: NCAtom) -> Self {
        ctx.check_index(a.index());
        let mut e = NCExpression::zero(ctx);
        e.insert(NCWord::from_sorted_atoms(&[a]), Coefficient::one(ctx.order()));
        e
    }

    /// Normalize the product of the given symbols (in the written order) to
    /// the ordered basis.
    pub fn word(rules: &PbwRules, atoms: &[NCAtom]) -> Result<Self> {
        let ctx = rules.ctx();
        for a in atoms {
            ctx.check_index(a.index());
        }
        let mut e = NCExpression::zero(ctx);
        normalize_into(rules, atoms.to_vec(), Coefficient::one(ctx.order()), &mut e)?;
        Ok(e)
    }

    /// A basis word taken as given (the caller guarantees canonical shape).
    pub fn with_word(ctx: Context, w: NCWord, c: Coefficient) -> Self {
        debug_assert!(w.spatial.windows(2).all(|p| p[0] <= p[1]));
        debug_assert!(w.forms.windows(2).all(|p| p[0] < p[1]));
        let mut e = NCExpression::zero(ctx);
        e.insert(w, c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Coefficient)> {
        self.terms.iter()
    }

    pub fn known_order(&self) -> u32 {
        self.terms
            .values()
            .map(Coefficient::known_order)
            .min()
            .unwrap_or_else(|| self.ctx.order())
    }

    pub(crate) fn insert(&mut self, w: NCWord, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    fn require_same_ctx(&self, o: &NCExpression) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(AlgebraError::ContextMismatch {
                left: self.ctx.to_string(),
                right: o.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &NCExpression) -> Result<NCExpression> {
        self.require_same_ctx(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &NCExpression) -> Result<NCExpression> {
        self.try_add(&o.negated())
    }

    pub fn negated(&self) -> NCExpression {
        NCExpression {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.negated())).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> NCExpression {
        if s.is_zero() {
            return NCExpression::zero(self.ctx);
        }
        NCExpression {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.scale(s))).collect(),
        }
    }

    pub fn scale_coeff(&self, s: &Coefficient) -> NCExpression {
        let mut out = NCExpression::zero(self.ctx);
        for (w, c) in &self.terms {
            out.insert(w.clone(), c.times(s));
        }
        out
    }

    /// Multiply by `i*a0`.
    pub fn times_ia0(&self) -> NCExpression {
        self.scale_coeff(&Coefficient::a0_power(GaussRat::i(), 1, self.ctx.order()))
    }

    /// The normalized product under the given family rules.
    pub fn multiply(&self, o: &NCExpression, rules: &PbwRules) -> Result<NCExpression> {
        self.require_same_ctx(o)?;
        let mut out = NCExpression::zero(self.ctx);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let c = ca.times(cb);
                if c.is_zero() {
                    continue;
                }
                let mut atoms = wa.atoms();
                atoms.extend(wb.atoms());
                normalize_into(rules, atoms, c, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Split into the even and odd parts of the form grading.
    pub fn parity_split(&self) -> (NCExpression, NCExpression) {
        let mut even = NCExpression::zero(self.ctx);
        let mut odd = NCExpression::zero(self.ctx);
        for (w, c) in &self.terms {
            let target = if w.form_degree() % 2 == 0 { &mut even } else { &mut odd };
            target.insert(w.clone(), c.clone());
        }
        (even, odd)
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &NCExpression, rules: &PbwRules) -> Result<NCExpression> {
        self.multiply(o, rules)?.try_sub(&o.multiply(self, rules)?)
    }

    /// `self * o + o * self`.
    pub fn anticommutator(&self, o: &NCExpression, rules: &PbwRules) -> Result<NCExpression> {
        self.multiply(o, rules)?.try_add(&o.multiply(self, rules)?)
    }

    /// The graded bracket: anticommutator on odd-odd parts, commutator
    /// otherwise.
    pub fn graded_commutator(&self, o: &NCExpression, rules: &PbwRules) -> Result<NCExpression> {
        let (se, so) = self.parity_split();
        let (oe, oo) = o.parity_split();
        se.commutator(&oe, rules)?
            .try_add(&se.commutator(&oo, rules)?)?
            .try_add(&so.commutator(&oe, rules)?)?
            .try_add(&so.anticommutator(&oo, rules)?)
    }

    /// Whether `self` and `o` agree through a0-order `k` on every word.
    pub fn equals_up_to_order(&self, o: &NCExpression, k: u32) -> Result<bool> {
        self.require_same_ctx(o)?;
        let known = self.known_order().min(o.known_order());
        if k > known {
            return Err(AlgebraError::OrderExceeded { asked: k, known });
        }
        let diff = self.try_sub(o)?;
        Ok(diff.terms.values().all(|c| c.terms().all(|(e, _)| e > k)))
    }
}

impl fmt::Display for NCExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
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
            match (body, w.is_unit()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{w}")?,
                (Some(b), true) => write!(f, "{b}")?,
                (Some(b), false) => write!(f, "{b}*{w}")?,
            }
        }
        Ok(())
    }
}

/// Rewrite `atoms` (with overall coefficient `coeff`) into basis words,
/// merging the results into `out`.
fn normalize_into(
    rules: &PbwRules,
    atoms: Vec<NCAtom>,
    coeff: Coefficient,
    out: &mut NCExpression,
) -> Result<()> {
    let order = rules.ctx().order();
    let mut work: Vec<(Vec<NCAtom>, Coefficient)> = vec![(atoms, coeff)];
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let Some(p) = first_violation(&w) else {
            out.insert(NCWord::from_sorted_atoms(&w), c);
            continue;
        };
        let (a, b) = (w[p], w[p + 1]);
        let swapped = |w: &[NCAtom]| {
            let mut v = w.to_vec();
            v.swap(p, p + 1);
            v
        };
        // the word with the pair at `p` replaced by a single symbol
        let contracted = |w: &[NCAtom], sym: NCAtom| {
            let mut v = w.to_vec();
            v.remove(p + 1);
            v[p] = sym;
            v
        };
        match (a, b) {
            // spatial coordinates commute
            (NCAtom::XHat(i), NCAtom::XHat(j)) if i > 0 && j > 0 => {
                work.push((swapped(&w), c));
            }
            // xhat[0] xhat[j] = xhat[j] xhat[0] + i a0 xhat[j]
            (NCAtom::XHat(0), NCAtom::XHat(j)) => {
                work.push((
                    contracted(&w, NCAtom::XHat(j)),
                    c.times(&Coefficient::a0_power(GaussRat::i(), 1, order)),
                ));
                work.push((swapped(&w), c));
            }
            // xi[mu] xhat[nu] = xhat[nu] xi[mu] + [xi[mu], xhat[nu]]
            (NCAtom::Xi(mu), NCAtom::XHat(nu)) => {
                for (alpha, s) in rules.xi_x_bracket(mu, nu)? {
                    work.push((
                        contracted(&w, NCAtom::Xi(alpha)),
                        c.times(&Coefficient::a0_power(s, 1, order)),
                    ));
                }
                work.push((swapped(&w), c));
            }
            // one-forms anticommute and square to zero
            (NCAtom::Xi(i), NCAtom::Xi(j)) => {
                if i != j {
                    work.push((swapped(&w), c.negated()));
                }
                // i == j: the branch vanishes
            }
            _ => unreachable!("no rewrite for a non-violating pair"),
        }
    }
    Ok(())
}

/// Position of the leftmost adjacent pair violating the basis order.
fn first_violation(w: &[NCAtom]) -> Option<usize> {
    w.windows(2).position(|pair| {
        let (a, b) = (pair[0], pair[1]);
        match a.block().cmp(&b.block()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => match a.block() {
                0 => a.index() > b.index(),
                1 => false,
                _ => a.index() >= b.index(),
            },
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn rules_d1() -> PbwRules {
        PbwRules::new(Context::new(4, 6), Family::D1, rat(1, 1))
    }

    #[test]
    fn coordinate_reordering_uses_the_deformed_bracket() {
        let r = rules_d1();
        let e = NCExpression::word(&r, &[NCAtom::XHat(0), NCAtom::XHat(1)]).unwrap();
        assert_eq!(e.to_string(), "xhat[1]*xhat[0] + i*a0*xhat[1]");
        // already ordered words pass through unchanged
        let e = NCExpression::word(&r, &[NCAtom::XHat(1), NCAtom::XHat(0)]).unwrap();
        assert_eq!(e.to_string(), "xhat[1]*xhat[0]");
        // spatial coordinates just commute
        let e = NCExpression::word(&r, &[NCAtom::XHat(3), NCAtom::XHat(2)]).unwrap();
        assert_eq!(e.to_string(), "xhat[2]*xhat[3]");
    }

    #[test]
    fn deep_time_powers_normalize() {
        let r = rules_d1();
        // xhat[0]^2 xhat[1] = xhat[1] xhat[0]^2 + 2 i a0 xhat[1] xhat[0] - a0^2 xhat[1]
        let e = NCExpression::word(&r, &[NCAtom::XHat(0), NCAtom::XHat(0), NCAtom::XHat(1)])
            .unwrap();
        assert_eq!(
            e.to_string(),
            "xhat[1]*xhat[0]*xhat[0] + 2*i*a0*xhat[1]*xhat[0] - a0^2*xhat[1]"
        );
    }

    #[test]
    fn one_form_reordering_is_family_aware() {
        let r = rules_d1();
        let e = NCExpression::word(&r, &[NCAtom::Xi(1), NCAtom::XHat(0)]).unwrap();
        assert_eq!(e.to_string(), "xhat[0]*xi[1] - i*a0*xi[1]");
        let e = NCExpression::word(&r, &[NCAtom::Xi(0), NCAtom::XHat(0)]).unwrap();
        assert_eq!(e.to_string(), "xhat[0]*xi[0] + i*a0*xi[0]");
        let e = NCExpression::word(&r, &[NCAtom::Xi(1), NCAtom::XHat(2)]).unwrap();
        assert_eq!(e.to_string(), "xhat[2]*xi[1]");

        let r2 = PbwRules::new(Context::new(4, 6), Family::D2, rat(1, 2));
        let e = NCExpression::word(&r2, &[NCAtom::Xi(0), NCAtom::XHat(2)]).unwrap();
        assert_eq!(e.to_string(), "xhat[2]*xi[0] + 1/2*i*a0*xi[2]");
        let e = NCExpression::word(&r2, &[NCAtom::Xi(1), NCAtom::XHat(0)]).unwrap();
        assert_eq!(e.to_string(), "xhat[0]*xi[1] - 1/2*i*a0*xi[1]");
    }

    #[test]
    fn sitarz_form_swaps_are_rejected() {
        let r = PbwRules::new(Context::new(4, 6), Family::Sitarz, rat(1, 1));
        let res = NCExpression::word(&r, &[NCAtom::Xi(1), NCAtom::XHat(0)]);
        assert!(matches!(res, Err(AlgebraError::FamilyNotClosed { .. })));
        // words already in basis order need no rewriting
        let e = NCExpression::word(&r, &[NCAtom::XHat(1), NCAtom::Xi(0)]).unwrap();
        assert_eq!(e.to_string(), "xhat[1]*xi[0]");
    }

    #[test]
    fn forms_anticommute_and_square_to_zero() {
        let r = rules_d1();
        let e = NCExpression::word(&r, &[NCAtom::Xi(2), NCAtom::Xi(1)]).unwrap();
        assert_eq!(e.to_string(), "-xi[1]*xi[2]");
        let e = NCExpression::word(&r, &[NCAtom::Xi(1), NCAtom::Xi(1)]).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn bracket_operations_follow_the_grading() {
        let r = rules_d1();
        let x0 = NCExpression::atom(r.ctx(), NCAtom::XHat(0));
        let x1 = NCExpression::atom(r.ctx(), NCAtom::XHat(1));
        let xi1 = NCExpression::atom(r.ctx(), NCAtom::Xi(1));
        let xi2 = NCExpression::atom(r.ctx(), NCAtom::Xi(2));
        // even-even: plain commutator
        assert_eq!(
            x0.graded_commutator(&x1, &r).unwrap().to_string(),
            "i*a0*xhat[1]"
        );
        assert_eq!(x0.commutator(&x1, &r).unwrap(), x0.graded_commutator(&x1, &r).unwrap());
        // odd-odd: anticommutator, which vanishes on one-forms
        assert!(xi1.graded_commutator(&xi2, &r).unwrap().is_zero());
        assert_eq!(
            xi1.anticommutator(&xi2, &r).unwrap(),
            xi1.graded_commutator(&xi2, &r).unwrap()
        );
        // mixed parity splits cleanly
        let mixed = x1.try_add(&xi1).unwrap();
        let (even, odd) = mixed.parity_split();
        assert_eq!(even, x1);
        assert_eq!(odd, xi1);
    }

    #[test]
    fn multiplication_is_associative_on_words() {
        let r = rules_d1();
        let a = NCExpression::word(&r, &[NCAtom::Xi(1)]).unwrap();
        let b = NCExpression::word(&r, &[NCAtom::XHat(0)]).unwrap();
        let c = NCExpression::word(&r, &[NCAtom::XHat(2)]).unwrap();
        let ab_c = a.multiply(&b, &r).unwrap().multiply(&c, &r).unwrap();
        let a_bc = a.multiply(&b.multiply(&c, &r).unwrap(), &r).unwrap();
        assert_eq!(ab_c, a_bc);
        assert_eq!(
            ab_c,
            NCExpression::word(&r, &[NCAtom::Xi(1), NCAtom::XHat(0), NCAtom::XHat(2)]).unwrap()
        );
    }

    #[test]
    fn normalization_terminates_on_a_long_scramble() {
        let r = rules_d1();
        let e = NCExpression::word(
            &r,
            &[
                NCAtom::Xi(2),
                NCAtom::XHat(0),
                NCAtom::Xi(1),
                NCAtom::XHat(2),
                NCAtom::XHat(0),
                NCAtom::XHat(1),
            ],
        )
        .unwrap();
        assert!(!e.is_zero());
        for (w, _) in e.terms() {
            assert!(w.spatial.windows(2).all(|p| p[0] <= p[1]));
            assert!(w.forms.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
