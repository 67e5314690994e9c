//! Operator realizations: symbol tables mapping the deformed coordinates,
//! one-forms, exterior derivative, momenta and Lorentz generators to exact
//! truncated-series elements of the ambient Weyl super-algebra.
//!
//! Three families of differential calculi are provided. They share the same
//! deformed coordinate bracket `[xhat[0], xhat[j]] = i a0 xhat[j]` but differ
//! in the exterior derivative and hence in the one-forms `xi[mu] = [[dhat,
//! xhat[mu]]]`:
//!
//! * [`Family::Sitarz`] — the calculus whose one-form/coordinate brackets
//!   close only after adjoining one extra odd direction `thetap`;
//! * [`Family::D1`] and [`Family::D2`] — two families parametrized by an
//!   exact rational shift exponent `c` whose one-form/coordinate brackets
//!   close on the one-forms alone.
//!
//! The momenta `p[mu]`, the generator `M1[mu,nu]` built from one-forms and
//! their duals, and the shift operators `Z`, `Zinv` are carried by every
//! table. The Lorentz generators `M[mu,nu]`, their extensions `Mt[mu,nu]`
//! and the scalar factors `phi[mu]` are anchored to the coordinate
//! realization used by `d1`/`d2` and are carried by those two tables only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};

use crate::coeff::Coefficient;
use crate::context::Context;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::scalar::GaussRat;
use crate::series::{
    series_inverse, series_pow, series_sqrt_one_plus, shift_power, ScalarSeries,
};

/// The family of differential calculus a [`Realization`] table carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// One-form/coordinate brackets close only after adjoining the extra odd
    /// direction `thetap`; the coordinates are realized through the square
    /// root of `1 + a0^2 del^2`.
    Sitarz,
    /// c-parametrized calculus whose spatial one-forms are `dx[k] * Zinv`.
    D1,
    /// c-parametrized calculus whose spatial one-forms are `dx[k] * Z^(c-1)`.
    D2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sitarz => "sitarz",
            Family::D1 => "d1",
            Family::D2 => "d2",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sitarz" => Ok(Family::Sitarz),
            "d1" => Ok(Family::D1),
            "d2" => Ok(Family::D2),
            other => Err(format!("unknown family `{other}` (expected sitarz, d1 or d2)")),
        }
    }
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Sitarz, Family::D1, Family::D2];

    /// The families whose one-form sector closes over the coordinate module
    /// without extra directions (and which carry the Lorentz generators).
    pub const CLOSED: [Family; 2] = [Family::D1, Family::D2];

    /// Whether the exterior derivative of this family depends on the shift
    /// exponent `c`.
    pub fn uses_c(&self) -> bool {
        matches!(self, Family::D1 | Family::D2)
    }
}

/// Name of an entry in a [`Realization`] table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymKey {
    /// Deformed coordinate `xhat[mu]`.
    XHat(u32),
    /// One-form `xi[mu]`, always the graded commutator of `dhat` with
    /// `xhat[mu]`.
    Xi(u32),
    /// Extra odd direction of the `sitarz` family.
    ThetaPrime,
    /// Exterior derivative `dhat`.
    ExtDeriv,
    /// Plain derivative `del[mu]`.
    Del(u32),
    /// Momentum `p[mu] = -i del[mu]`.
    P(u32),
    /// Lorentz generator acting on coordinates; canonical keys are `M[i,0]`
    /// and `M[i,j]` with `0 < i < j`.
    M(u32, u32),
    /// Odd-sector generator `M1[mu,nu] = dx[mu] q[nu] - dx[nu] q[mu]`.
    M1(u32, u32),
    /// Extended generator `Mt[mu,nu] = M[mu,nu] + M1[mu,nu]`.
    MTilde(u32, u32),
    /// Scalar factor `phi[mu]` entering the boosts: `M[i,0] = x[i] phi[0] -
    /// xhat[0] phi[i]`.
    Phi(u32),
    /// Shift operator `Z`.
    Z,
    /// Inverse shift operator `Zinv`.
    ZInv,
}

impl fmt::Display for SymKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymKey::XHat(mu) => write!(f, "xhat[{mu}]"),
            SymKey::Xi(mu) => write!(f, "xi[{mu}]"),
            SymKey::ThetaPrime => write!(f, "thetap"),
            SymKey::ExtDeriv => write!(f, "dhat"),
            SymKey::Del(mu) => write!(f, "del[{mu}]"),
            SymKey::P(mu) => write!(f, "p[{mu}]"),
            SymKey::M(mu, nu) => write!(f, "M[{mu},{nu}]"),
            SymKey::M1(mu, nu) => write!(f, "M1[{mu},{nu}]"),
            SymKey::MTilde(mu, nu) => write!(f, "Mt[{mu},{nu}]"),
            SymKey::Phi(mu) => write!(f, "phi[{mu}]"),
            SymKey::Z => write!(f, "Z"),
            SymKey::ZInv => write!(f, "Zinv"),
        }
    }
}

/// An immutable symbol table realizing one family of differential calculus
/// at a fixed dimension, truncation order and shift exponent.
#[derive(Clone, Debug)]
pub struct Realization {
    ctx: Context,
    family: Family,
    c: BigRational,
    table: BTreeMap<SymKey, Element>,
}

impl Realization {
    /// Construct the full table for `family` at shift exponent `c` (ignored
    /// by the `sitarz` family), truncated to the order carried by `ctx`.
    ///
    /// Everything is assembled two orders higher internally so that the exact
    /// divisions by `a0` occurring in scalar prefactors do not erode the
    /// requested precision; every stored element is known through
    /// `ctx.order()`.
    pub fn build(ctx: Context, family: Family, c: BigRational) -> Realization {
        let hi = ctx.with_order(ctx.order() + 2);
        let n = ctx.n();

        // sum_k dx[k] del[k] over the spatial directions
        let mut spatial_sum = Element::zero(hi);
        for k in 1..n {
            spatial_sum = spatial_sum + Element::form(hi, k).multiply(&Element::deriv(hi, k));
        }

        let mut table: BTreeMap<SymKey, Element> = BTreeMap::new();
        let (z_el, zinv_el, xhat, dhat) = match family {
            Family::Sitarz => {
                // del^2 = eta^{mu nu} del[mu] del[nu]
                let mut dsq = Element::deriv(hi, 0)
                    .multiply(&Element::deriv(hi, 0))
                    .negated();
                for k in 1..n {
                    dsq = dsq + Element::deriv(hi, k).multiply(&Element::deriv(hi, k));
                }
                let a0sq = Coefficient::a0_power(GaussRat::one(), 2, hi.order());
                let root = series_sqrt_one_plus(
                    &ScalarSeries::try_new(dsq.scale_coeff(&a0sq)).unwrap(),
                )
                .unwrap();
                // Zinv = i a0 del[0] + sqrt(1 + a0^2 del^2)
                let zinv_el = Element::deriv(hi, 0)
                    .times_ia0()
                    .try_add(root.element())
                    .unwrap();
                let z_el = series_inverse(&ScalarSeries::try_new(zinv_el.clone()).unwrap())
                    .unwrap()
                    .into_element();
                // xhat[mu] = x[mu] Zinv - i a0 x[0] del[mu]
                let xhat: Vec<Element> = (0..n)
                    .map(|mu| {
                        Element::coord(hi, mu)
                            .multiply(&zinv_el)
                            .try_sub(
                                &Element::coord(hi, 0)
                                    .multiply(&Element::deriv(hi, mu))
                                    .times_ia0(),
                            )
                            .unwrap()
                    })
                    .collect();
                // dhat = -dx[0] del[0] + (sum_k dx[k] del[k]) Z
                let dhat = Element::form(hi, 0)
                    .multiply(&Element::deriv(hi, 0))
                    .negated()
                    .try_add(&spatial_sum.multiply(&z_el))
                    .unwrap();
                table.insert(
                    SymKey::ThetaPrime,
                    Element::form(hi, 0).multiply(&zinv_el).truncate_to_order(ctx.order()),
                );
                (z_el, zinv_el, xhat, dhat)
            }
            Family::D1 | Family::D2 => {
                let z_el = shift_power(hi, &BigRational::one()).into_element();
                let zinv_el = shift_power(hi, &(-BigRational::one())).into_element();
                // xhat[0] = x[0] + i a0 sum_k x[k] del[k], xhat[k] = x[k]
                let mut x0 = Element::coord(hi, 0);
                for k in 1..n {
                    x0 = x0
                        + Element::coord(hi, k)
                            .multiply(&Element::deriv(hi, k))
                            .times_ia0();
                }
                let mut xhat = vec![x0];
                for k in 1..n {
                    xhat.push(Element::coord(hi, k));
                }
                // time factor (Z^c - 1)/(i a0 c), with limit -del[0] at c = 0
                let time_factor = if c.is_zero() {
                    Element::deriv(hi, 0).negated()
                } else {
                    let num = shift_power(hi, &c)
                        .into_element()
                        .try_sub(&Element::one(hi))
                        .unwrap();
                    // 1/(i c) = -(1/c) i
                    let s = GaussRat::from_rational(-c.recip()).times(&GaussRat::i());
                    num.divide_by_a0().unwrap().scale(&s)
                };
                let spatial_factor = match family {
                    Family::D1 => zinv_el.clone(),
                    Family::D2 => shift_power(hi, &(c.clone() - BigRational::one())).into_element(),
                    Family::Sitarz => unreachable!(),
                };
                let dhat = Element::form(hi, 0)
                    .multiply(&time_factor)
                    .try_add(&spatial_sum.multiply(&spatial_factor))
                    .unwrap();
                (z_el, zinv_el, xhat, dhat)
            }
        };

        for (mu, x) in xhat.iter().enumerate() {
            let mu = mu as u32;
            table.insert(SymKey::XHat(mu), x.truncate_to_order(ctx.order()));
            table.insert(
                SymKey::Xi(mu),
                dhat.graded_commutator(x).truncate_to_order(ctx.order()),
            );
        }
        table.insert(SymKey::ExtDeriv, dhat.truncate_to_order(ctx.order()));
        table.insert(SymKey::Z, z_el.truncate_to_order(ctx.order()));
        table.insert(SymKey::ZInv, zinv_el.truncate_to_order(ctx.order()));
        for mu in 0..n {
            table.insert(
                SymKey::Del(mu),
                Element::deriv(hi, mu).truncate_to_order(ctx.order()),
            );
            table.insert(
                SymKey::P(mu),
                Element::deriv(hi, mu)
                    .scale(&GaussRat::ratio_i(-1, 1))
                    .truncate_to_order(ctx.order()),
            );
        }
        for (mu, nu) in canonical_pairs(n) {
            // M1[mu,nu] = dx[mu] q[nu] - dx[nu] q[mu]
            let m1 = Element::form(hi, mu)
                .multiply(&Element::form_deriv(hi, nu))
                .try_sub(&Element::form(hi, nu).multiply(&Element::form_deriv(hi, mu)))
                .unwrap();
            table.insert(SymKey::M1(mu, nu), m1.truncate_to_order(ctx.order()));
        }

        if matches!(family, Family::D1 | Family::D2) {
            // Lorentz sector, anchored to the d1/d2 coordinate realization.
            // phi[0] = (1 - Z)/(i a0) + (i a0/2) sum_k del[k]^2
            //          + 2i ((Z + Zinv - 2)/4)/a0 * Z
            let mut lap = Element::zero(hi);
            for k in 1..n {
                lap = lap + Element::deriv(hi, k).multiply(&Element::deriv(hi, k));
            }
            let p1 = Element::one(hi)
                .try_sub(&z_el)
                .unwrap()
                .divide_by_a0()
                .unwrap()
                .scale(&GaussRat::ratio_i(-1, 1));
            let p2 = lap.scale_coeff(&Coefficient::a0_power(
                GaussRat::ratio_i(1, 2),
                1,
                hi.order(),
            ));
            let sinh_sq = z_el
                .try_add(&zinv_el)
                .unwrap()
                .try_sub(&Element::scalar(hi, GaussRat::from_int(2)))
                .unwrap()
                .scale(&GaussRat::ratio(1, 4));
            let p3 = sinh_sq
                .divide_by_a0()
                .unwrap()
                .multiply(&z_el)
                .scale(&GaussRat::ratio_i(2, 1));
            let phi0 = p1.try_add(&p2).unwrap().try_add(&p3).unwrap();
            table.insert(SymKey::Phi(0), phi0.truncate_to_order(ctx.order()));
            for k in 1..n {
                table.insert(
                    SymKey::Phi(k),
                    Element::deriv(hi, k).truncate_to_order(ctx.order()),
                );
            }
            for (mu, nu) in canonical_pairs(n) {
                let m = if nu == 0 {
                    // boost: M[i,0] = x[i] phi[0] - xhat[0] del[i]
                    Element::coord(hi, mu)
                        .multiply(&phi0)
                        .try_sub(&xhat[0].multiply(&Element::deriv(hi, mu)))
                        .unwrap()
                } else {
                    // rotation: M[i,j] = x[i] del[j] - x[j] del[i]
                    Element::coord(hi, mu)
                        .multiply(&Element::deriv(hi, nu))
                        .try_sub(&Element::coord(hi, nu).multiply(&Element::deriv(hi, mu)))
                        .unwrap()
                };
                let m = m.truncate_to_order(ctx.order());
                let mt = m.try_add(&table[&SymKey::M1(mu, nu)]).unwrap();
                table.insert(SymKey::M(mu, nu), m);
                table.insert(SymKey::MTilde(mu, nu), mt);
            }
        }

        Realization { ctx, family, c, table }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The shift exponent the table was built with; meaningful for the
    /// `d1`/`d2` families and ignored by `sitarz`.
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn get(&self, key: &SymKey) -> Result<&Element> {
        self.table.get(key).ok_or_else(|| {
            AlgebraError::SymbolMissing(format!("{key} (family {})", self.family))
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = &SymKey> {
        self.table.keys()
    }

    pub fn xhat(&self, mu: u32) -> &Element {
        self.ctx.check_index(mu);
        &self.table[&SymKey::XHat(mu)]
    }

    pub fn xi(&self, mu: u32) -> &Element {
        self.ctx.check_index(mu);
        &self.table[&SymKey::Xi(mu)]
    }

    pub fn ext_deriv(&self) -> &Element {
        &self.table[&SymKey::ExtDeriv]
    }

    pub fn theta_prime(&self) -> Result<&Element> {
        self.get(&SymKey::ThetaPrime)
    }

    pub fn del(&self, mu: u32) -> &Element {
        self.ctx.check_index(mu);
        &self.table[&SymKey::Del(mu)]
    }

    pub fn p(&self, mu: u32) -> &Element {
        self.ctx.check_index(mu);
        &self.table[&SymKey::P(mu)]
    }

    pub fn z(&self) -> &Element {
        &self.table[&SymKey::Z]
    }

    pub fn z_inv(&self) -> &Element {
        &self.table[&SymKey::ZInv]
    }

    pub fn phi(&self, mu: u32) -> Result<&Element> {
        self.ctx.check_index(mu);
        self.get(&SymKey::Phi(mu))
    }

    /// `M[mu,nu]` for any index pair, using antisymmetry off the canonical
    /// keys; zero on the diagonal.
    pub fn m(&self, mu: u32, nu: u32) -> Result<Element> {
        self.signed_pair(mu, nu, SymKey::M)
    }

    /// `M1[mu,nu]` for any index pair (see [`Realization::m`]).
    pub fn m1(&self, mu: u32, nu: u32) -> Result<Element> {
        self.signed_pair(mu, nu, SymKey::M1)
    }

    /// `Mt[mu,nu]` for any index pair (see [`Realization::m`]).
    pub fn m_tilde(&self, mu: u32, nu: u32) -> Result<Element> {
        self.signed_pair(mu, nu, SymKey::MTilde)
    }

    fn signed_pair(&self, mu: u32, nu: u32, mk: fn(u32, u32) -> SymKey) -> Result<Element> {
        self.ctx.check_index(mu);
        self.ctx.check_index(nu);
        if mu == nu {
            return Ok(Element::zero(self.ctx));
        }
        let canonical = if nu == 0 || (mu != 0 && mu < nu) {
            mk(mu, nu)
        } else {
            mk(nu, mu)
        };
        let el = self.get(&canonical)?;
        Ok(if canonical == mk(mu, nu) { el.clone() } else { el.negated() })
    }

    /// `Z^r` for an exact rational `r`, consistent with this family's `Z`.
    pub fn z_power(&self, r: &BigRational) -> Result<Element> {
        let z = ScalarSeries::try_new(self.z().clone())?;
        Ok(series_pow(&z, r)?.into_element())
    }

    /// Canonical text dump of the whole table, one `key = element` line per
    /// entry, preceded by a header describing the build parameters.
    pub fn table_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        if self.family.uses_c() {
            writeln!(
                out,
                "# family {}, c = {}, n = {}, order = {}",
                self.family,
                self.c,
                self.ctx.n(),
                self.ctx.order()
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "# family {}, n = {}, order = {}",
                self.family,
                self.ctx.n(),
                self.ctx.order()
            )
            .unwrap();
        }
        for (k, el) in &self.table {
            writeln!(out, "{k} = {el}").unwrap();
        }
        out
    }

    /// A copy with one table entry replaced. This deliberately breaks the
    /// realization; it exists so the checks can be exercised against known-bad
    /// tables (negative controls).
    pub fn with_replaced(&self, key: SymKey, el: Element) -> Realization {
        assert_eq!(
            el.ctx(),
            self.ctx,
            "replacement entry must be built at the table's dimension and order"
        );
        let mut table = self.table.clone();
        table.insert(key, el);
        Realization { ctx: self.ctx, family: self.family, c: self.c.clone(), table }
    }
}

/// Canonical antisymmetric index pairs: `(i, 0)` for spatial `i`, then
/// `(i, j)` with `0 < i < j`.
fn canonical_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (1..n).map(|i| (i, 0)).collect();
    for i in 1..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}
