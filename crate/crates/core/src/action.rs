//! The Lorentz-sector module action on noncommutative polynomials.
//!
//! A generator acts on a polynomial in the deformed coordinates and one-forms
//! by realizing everything as Weyl-algebra operators, taking the commutator,
//! projecting on the vacuum, and expressing the resulting symbol back in the
//! ordered-word basis. The engine caches the vacuum symbols of all basis
//! words up to a degree bound so that the last step is an exact triangular
//! solve.

use std::collections::BTreeMap;

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ncexpr::{NCAtom, NCExpression, NCWord, PbwRules};
use crate::realization::Realization;
use crate::scalar::GaussRat;

/// Default degree bound for the cached word basis.
pub const DEFAULT_MAX_DEGREE: u32 = 4;

/// One tensor leg of a coproduct term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    /// Identity leg.
    One,
    /// Lorentz generator `M[mu,nu]`.
    M(u32, u32),
    /// Momentum `p[mu]`.
    P(u32),
    /// The shift operator `Z` (the exponentiated time derivative).
    Shift,
}

/// Action engine bound to one realization table.
pub struct ActionEngine<'r> {
    rea: &'r Realization,
    rules: PbwRules,
    max_degree: u32,
    words: Vec<NCWord>,
    symbols: Vec<Element>,
    classical: BTreeMap<Monomial, usize>,
}

impl<'r> ActionEngine<'r> {
    pub fn new(rea: &'r Realization, max_degree: u32) -> Self {
        let ctx = rea.ctx();
        let rules = PbwRules::new(ctx, rea.family(), rea.c().clone());
        let words = enumerate_words(ctx.n(), max_degree);
        let mut symbols = Vec::with_capacity(words.len());
        let mut classical = BTreeMap::new();
        for (idx, w) in words.iter().enumerate() {
            let full = realize_word(rea, w);
            let symbol = full.act_on_vacuum();
            let m = classical_monomial(w);
            debug_assert_eq!(
                symbol.classical_part(),
                Element::with_term(ctx, m.clone(), Coefficient::one(ctx.order())),
                "the symbol of a basis word must lead with its classical monomial"
            );
            let previous = classical.insert(m, idx);
            debug_assert!(previous.is_none(), "basis words have distinct classical monomials");
            symbols.push(symbol);
        }
        ActionEngine { rea, rules, max_degree, words, symbols, classical }
    }

    pub fn realization(&self) -> &Realization {
        self.rea
    }

    pub fn rules(&self) -> &PbwRules {
        &self.rules
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// The full operator realization of an abstract expression.
    pub fn realize(&self, e: &NCExpression) -> Element {
        let mut out = Element::zero(self.rea.ctx());
        for (w, c) in e.terms() {
            out = out.try_add(&realize_word(self.rea, w).scale_coeff(c)).unwrap();
        }
        out
    }

    /// The vacuum symbol of an abstract expression: a polynomial in the
    /// plain coordinates and form generators.
    pub fn symbol_of(&self, e: &NCExpression) -> Element {
        self.realize(e).act_on_vacuum()
    }

    /// Express a vacuum symbol as an abstract expression in the ordered-word
    /// basis, exactly, by peeling a0-orders against the cached word symbols.
    pub fn unrealize(&self, p: &Element) -> Result<NCExpression> {
        let ctx = self.rea.ctx();
        let known = p.known_order();
        let mut remainder = p.clone();
        let mut out = NCExpression::zero(ctx);
        for t in 0..=known {
            let slice: Vec<(Monomial, GaussRat)> = remainder
                .a0_slice(t)
                .terms()
                .map(|(m, c)| (m.clone(), c.constant_part()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            for (m, v) in slice {
                let Some(&idx) = self.classical.get(&m) else {
                    return Err(AlgebraError::NoBasisExpansion {
                        monomial: m.to_string(),
                        order: t,
                        max_degree: self.max_degree,
                    });
                };
                let scale = Coefficient::a0_power(v, t, known);
                out.insert(self.words[idx].clone(), scale.clone());
                remainder = remainder.try_sub(&self.symbols[idx].scale_coeff(&scale)).unwrap();
            }
        }
        debug_assert!(
            remainder.equals_up_to_order(&Element::zero(ctx), known).unwrap(),
            "peeling must consume the symbol through its known order"
        );
        Ok(out)
    }

    /// Act with a realized even generator: commutator, vacuum projection,
    /// and expansion back into basis words.
    pub fn lorentz_act(&self, gen: &Element, e: &NCExpression) -> Result<NCExpression> {
        let full = self.realize(e);
        self.unrealize(&gen.graded_commutator(&full).act_on_vacuum())
    }

    fn leg_element(&self, leg: Leg) -> Result<Element> {
        match leg {
            Leg::One => unreachable!("the identity leg is handled without realization"),
            Leg::M(mu, nu) => self.rea.m(mu, nu),
            Leg::P(mu) => Ok(self.rea.p(mu).clone()),
            Leg::Shift => Ok(self.rea.z().clone()),
        }
    }

    /// Apply one coproduct leg to an abstract expression.
    pub fn leg_act(&self, leg: Leg, e: &NCExpression) -> Result<NCExpression> {
        if leg == Leg::One {
            return Ok(e.clone());
        }
        let op = self.leg_element(leg)?;
        self.unrealize(&op.multiply(&self.realize(e)).act_on_vacuum())
    }

    /// The coproduct of `M[i,nu]` as a list of `(left leg, right leg,
    /// scalar factor)` terms. Boosts twist: `M[i,0] (x) 1 + Z (x) M[i,0]
    /// - a0 sum_j p[j] (x) M[i,j]`; rotations are primitive.
    pub fn coproduct_terms(&self, i: u32, nu: u32) -> Vec<(Leg, Leg, Coefficient)> {
        let order = self.rea.ctx().order();
        let one = Coefficient::one(order);
        if nu == 0 {
            let mut v = vec![
                (Leg::M(i, 0), Leg::One, one.clone()),
                (Leg::Shift, Leg::M(i, 0), one),
            ];
            let minus_a0 = Coefficient::a0_power(GaussRat::from_int(-1), 1, order);
            for j in 1..self.rea.ctx().n() {
                if j != i {
                    v.push((Leg::P(j), Leg::M(i, j), minus_a0.clone()));
                }
            }
            v
        } else {
            vec![
                (Leg::M(i, nu), Leg::One, one.clone()),
                (Leg::One, Leg::M(i, nu), one),
            ]
        }
    }

    /// Act with `M[i,nu]` on the product `xhat[lambda] * xhat[rho]` through
    /// the coproduct: apply the legs to the factors and multiply the results.
    pub fn coproduct_act_deg2(
        &self,
        i: u32,
        nu: u32,
        lambda: u32,
        rho: u32,
    ) -> Result<NCExpression> {
        let ctx = self.rea.ctx();
        let left = NCExpression::atom(ctx, NCAtom::XHat(lambda));
        let right = NCExpression::atom(ctx, NCAtom::XHat(rho));
        let mut out = NCExpression::zero(ctx);
        for (l1, l2, factor) in self.coproduct_terms(i, nu) {
            let a = self.leg_act(l1, &left)?;
            let b = self.leg_act(l2, &right)?;
            out = out.try_add(&a.multiply(&b, &self.rules)?.scale_coeff(&factor))?;
        }
        Ok(out)
    }
}

/// The realized operator for one basis word: the product of the table
/// entries for its factors.
fn realize_word(rea: &Realization, w: &NCWord) -> Element {
    let mut out = Element::one(rea.ctx());
    for a in w.atoms() {
        let f = match a {
            NCAtom::XHat(mu) => rea.xhat(mu),
            NCAtom::Xi(mu) => rea.xi(mu),
        };
        out = out.multiply(f);
    }
    out
}

/// The classical monomial a basis word's symbol leads with.
fn classical_monomial(w: &NCWord) -> Monomial {
    let mut coord = vec![0u32; w.x0_power as usize];
    coord.extend_from_slice(&w.spatial);
    Monomial::from_parts(coord, w.forms.clone(), Vec::new(), Vec::new())
}

/// All basis words of total degree at most `max_degree`.
fn enumerate_words(n: u32, max_degree: u32) -> Vec<NCWord> {
    let mut spatials: Vec<Vec<u32>> = vec![Vec::new()];
    let mut by_degree: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    for _ in 1..=max_degree {
        let mut next = Vec::new();
        for s in by_degree.last().unwrap() {
            let lo = s.last().copied().unwrap_or(1);
            for i in lo..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        spatials.extend(next.iter().cloned());
        by_degree.push(next);
    }
    let mut form_sets: Vec<Vec<u32>> = vec![Vec::new()];
    for mu in 0..n {
        for k in 0..form_sets.len() {
            if form_sets[k].last().is_none_or(|&last| last < mu) {
                let mut t = form_sets[k].clone();
                t.push(mu);
                form_sets.push(t);
            }
        }
    }
    let mut words = Vec::new();
    for s in &spatials {
        for f in &form_sets {
            let used = s.len() as u32 + f.len() as u32;
            if used > max_degree {
                continue;
            }
            for x0 in 0..=(max_degree - used) {
                words.push(NCWord { spatial: s.clone(), x0_power: x0, forms: f.clone() });
            }
        }
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::realization::Family;
    use num::{BigInt, BigRational};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn engine_ctx() -> Context {
        Context::new(3, 4)
    }

    #[test]
    fn word_enumeration_counts_match_the_combinatorics() {
        // n = 2, degree <= 2: spatial multisets {}, {1}, {1,1}; forms {}, {0},
        // {1}, {0,1}; powers of the time coordinate filling the rest.
        let words = enumerate_words(2, 2);
        assert_eq!(words.len(), 13);
        let words = enumerate_words(3, 1);
        // 1, xhat[0], xhat[1], xhat[2], xi[0], xi[1], xi[2]
        assert_eq!(words.len(), 7);
        assert!(words.iter().all(|w| w.degree() <= 1));
    }

    #[test]
    fn symbols_and_unrealize_roundtrip_the_ordering_example() {
        let ctx = engine_ctx();
        let rea = Realization::build(ctx, Family::D1, rat(1, 1));
        let eng = ActionEngine::new(&rea, 3);
        let w = NCExpression::word(eng.rules(), &[NCAtom::XHat(0), NCAtom::XHat(1)]).unwrap();
        let sym = eng.symbol_of(&w);
        assert_eq!(sym.to_string(), "x[0]*x[1] + i*a0*x[1]");
        let back = eng.unrealize(&sym).unwrap();
        assert_eq!(back.to_string(), "xhat[1]*xhat[0] + i*a0*xhat[1]");
        assert_eq!(back, w);
    }

    #[test]
    fn momentum_and_shift_legs_act_as_expected() {
        let ctx = engine_ctx();
        let rea = Realization::build(ctx, Family::D1, rat(1, 1));
        let eng = ActionEngine::new(&rea, 2);
        for mu in 0..ctx.n() {
            for nu in 0..ctx.n() {
                let x = NCExpression::atom(ctx, NCAtom::XHat(nu));
                let acted = eng.leg_act(Leg::P(mu), &x).unwrap();
                let expected = NCExpression::scalar(
                    ctx,
                    Coefficient::scalar(
                        GaussRat::ratio_i(-1, 1).times(&GaussRat::from_int(ctx.eta(mu, nu) as i64)),
                        ctx.order(),
                    ),
                );
                assert_eq!(acted, expected, "p[{mu}] acting on xhat[{nu}]");
            }
        }
        let x0 = NCExpression::atom(ctx, NCAtom::XHat(0));
        let shifted = eng.leg_act(Leg::Shift, &x0).unwrap();
        let expected = x0
            .try_add(&NCExpression::scalar(
                ctx,
                Coefficient::a0_power(GaussRat::i(), 1, ctx.order()),
            ))
            .unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn degree_one_action_rotates_the_coordinates() {
        let ctx = engine_ctx();
        let rea = Realization::build(ctx, Family::D1, rat(1, 1));
        let eng = ActionEngine::new(&rea, 2);
        // boost on the time coordinate: the time metric entry is -1
        let m10 = rea.m(1, 0).unwrap();
        let acted = eng
            .lorentz_act(&m10, &NCExpression::atom(ctx, NCAtom::XHat(0)))
            .unwrap();
        assert_eq!(acted.to_string(), "-xhat[1]");
        // rotation moves one spatial coordinate onto another
        let m12 = rea.m(1, 2).unwrap();
        let acted = eng
            .lorentz_act(&m12, &NCExpression::atom(ctx, NCAtom::XHat(2)))
            .unwrap();
        assert_eq!(acted.to_string(), "xhat[1]");
        let acted = eng
            .lorentz_act(&m12, &NCExpression::atom(ctx, NCAtom::XHat(0)))
            .unwrap();
        assert!(acted.is_zero());
    }

    #[test]
    fn coproduct_route_matches_the_direct_route_on_a_boost() {
        let ctx = engine_ctx();
        let rea = Realization::build(ctx, Family::D1, rat(1, 1));
        let eng = ActionEngine::new(&rea, 4);
        let m10 = rea.m(1, 0).unwrap();
        for (lambda, rho) in [(0, 1), (1, 0), (1, 1), (2, 2), (0, 0)] {
            let word = NCExpression::word(
                eng.rules(),
                &[NCAtom::XHat(lambda), NCAtom::XHat(rho)],
            )
            .unwrap();
            let direct = eng.lorentz_act(&m10, &word).unwrap();
            let coprod = eng.coproduct_act_deg2(1, 0, lambda, rho).unwrap();
            assert_eq!(direct, coprod, "boost action on xhat[{lambda}]*xhat[{rho}]");
        }
    }

    #[test]
    fn unrealize_rejects_symbols_outside_the_basis() {
        let ctx = engine_ctx();
        let rea = Realization::build(ctx, Family::D1, rat(1, 1));
        let eng = ActionEngine::new(&rea, 2);
        let err = eng.unrealize(&Element::deriv(ctx, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::NoBasisExpansion { .. }));
        // a coordinate monomial past the degree bound is also rejected
        let cube = Element::coord(ctx, 1)
            .multiply(&Element::coord(ctx, 1))
            .multiply(&Element::coord(ctx, 1));
        let err = eng.unrealize(&cube).unwrap_err();
        assert!(matches!(err, AlgebraError::NoBasisExpansion { max_degree: 2, .. }));
    }
}
