//! Normally ordered words in the ambient super-algebra and their product.
//!
//! A monomial is a word in the canonical block order
//! `x[..] dx[..] q[..] del[..]`: coordinates and derivatives are commuting
//! multisets, one-forms and their duals are anticommuting and therefore kept
//! strictly increasing (any sign from sorting them is normalized into the
//! coefficient; a repeated odd generator kills the word).
//!
//! The non-trivial rewriting rules are
//! `del[m] x[n] = x[n] del[m] + eta(m, n)` in the even sector and
//! `q[m] dx[n] = -dx[n] q[m] + eta(m, n)` in the odd sector; every other pair
//! of generators commutes (between sectors) or anticommutes (within the odd
//! sector) freely. Products therefore factor into an even contraction part
//! and an odd reordering part that are computed independently.

use crate::context::{Context, GenFamily, GeneratorRef};
use crate::scalar::GaussRat;
use num::BigInt;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    /// Coordinate indices, ascending (multiset).
    pub(crate) coord: Vec<u32>,
    /// One-form indices, strictly ascending.
    pub(crate) form: Vec<u32>,
    /// Form-dual indices, strictly ascending.
    pub(crate) formderiv: Vec<u32>,
    /// Derivative indices, ascending (multiset).
    pub(crate) deriv: Vec<u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn generator(g: GeneratorRef) -> Self {
        let mut m = Monomial::unit();
        match g.family {
            GenFamily::Coord => m.coord.push(g.index),
            GenFamily::Form => m.form.push(g.index),
            GenFamily::FormDeriv => m.formderiv.push(g.index),
            GenFamily::Deriv => m.deriv.push(g.index),
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.coord.is_empty() && self.form.is_empty() && self.formderiv.is_empty() && self.deriv.is_empty()
    }

    /// Form degree: the number of odd factors.
    pub fn degree(&self) -> u32 {
        (self.form.len() + self.formderiv.len()) as u32
    }

    /// Grading in the super-algebra (form degree mod 2).
    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Whether the word survives the vacuum projection, i.e. contains no
    /// derivative and no form-dual factor.
    pub fn survives_vacuum(&self) -> bool {
        self.deriv.is_empty() && self.formderiv.is_empty()
    }

    pub fn coord_part(&self) -> &[u32] {
        &self.coord
    }

    pub fn form_part(&self) -> &[u32] {
        &self.form
    }

    pub fn formderiv_part(&self) -> &[u32] {
        &self.formderiv
    }

    pub fn deriv_part(&self) -> &[u32] {
        &self.deriv
    }

    pub(crate) fn from_parts(
        mut coord: Vec<u32>,
        form: Vec<u32>,
        formderiv: Vec<u32>,
        mut deriv: Vec<u32>,
    ) -> Self {
        coord.sort_unstable();
        deriv.sort_unstable();
        debug_assert!(form.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(formderiv.windows(2).all(|w| w[0] < w[1]));
        Monomial { coord, form, formderiv, deriv }
    }

    fn write_block(
        f: &mut fmt::Formatter<'_>,
        name: &str,
        indices: &[u32],
        first: &mut bool,
    ) -> fmt::Result {
        let mut i = 0;
        while i < indices.len() {
            let idx = indices[i];
            let mut count = 1;
            while i + count < indices.len() && indices[i + count] == idx {
                count += 1;
            }
            if !*first {
                write!(f, "*")?;
            }
            *first = false;
            if count == 1 {
                write!(f, "{name}[{idx}]")?;
            } else {
                write!(f, "{name}[{idx}]^{count}")?;
            }
            i += count;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        Monomial::write_block(f, "x", &self.coord, &mut first)?;
        Monomial::write_block(f, "dx", &self.form, &mut first)?;
        Monomial::write_block(f, "q", &self.formderiv, &mut first)?;
        Monomial::write_block(f, "del", &self.deriv, &mut first)
    }
}

fn counts(indices: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &i in indices {
        *m.entry(i).or_insert(0) += 1;
    }
    m
}

/// Whether two ascending index lists have an element in common.
fn shares_index(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, v| acc * BigInt::from(v))
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    for v in (n - k + 1)..=n {
        num *= BigInt::from(v);
    }
    num / factorial(k)
}

/// One resolved Wick contraction of the even sector: which derivative copies
/// of the left factor pair off against coordinate copies of the right factor.
struct EvenTerm {
    factor: BigInt,
    removed: BTreeMap<u32, u32>,
}

/// All ways of moving the left factor's derivatives past the right factor's
/// coordinates. For index `m` with `a` derivative copies on the left and `b`
/// coordinate copies on the right, contracting `k` pairs contributes
/// `k! C(a,k) C(b,k) eta(m,m)^k`; distinct indices never contract because the
/// metric is diagonal.
fn even_contractions(ctx: &Context, left_deriv: &[u32], right_coord: &[u32]) -> Vec<EvenTerm> {
    // No shared index means no contraction: the factors slide past freely.
    if !shares_index(left_deriv, right_coord) {
        return vec![EvenTerm { factor: BigInt::from(1), removed: BTreeMap::new() }];
    }
    let da = counts(left_deriv);
    let xb = counts(right_coord);
    let shared: Vec<(u32, u32, u32)> = da
        .iter()
        .filter_map(|(&idx, &a)| xb.get(&idx).map(|&b| (idx, a, b)))
        .collect();
    let mut out = Vec::new();
    let mut removed = BTreeMap::new();
    fn rec(
        ctx: &Context,
        shared: &[(u32, u32, u32)],
        pos: usize,
        factor: BigInt,
        removed: &mut BTreeMap<u32, u32>,
        out: &mut Vec<EvenTerm>,
    ) {
        if pos == shared.len() {
            out.push(EvenTerm { factor, removed: removed.clone() });
            return;
        }
        let (idx, a, b) = shared[pos];
        for k in 0..=a.min(b) {
            let mut f = factor.clone() * factorial(k) * binomial(a, k) * binomial(b, k);
            if ctx.eta(idx, idx) < 0 && k % 2 == 1 {
                f = -f;
            }
            if k > 0 {
                removed.insert(idx, k);
            }
            rec(ctx, shared, pos + 1, f, removed, out);
            removed.remove(&idx);
        }
    }
    rec(ctx, &shared, 0, BigInt::from(1), &mut removed, &mut out);
    out
}

fn remove_copies(indices: &[u32], removed: &BTreeMap<u32, u32>) -> Vec<u32> {
    let mut left = removed.clone();
    let mut out = Vec::with_capacity(indices.len());
    for &i in indices {
        match left.get_mut(&i) {
            Some(c) if *c > 0 => *c -= 1,
            _ => out.push(i),
        }
    }
    out
}

/// One resolved reordering of the odd sector.
struct OddTerm {
    sign: i32,
    form: Vec<u32>,
    formderiv: Vec<u32>,
}

/// Normal-order a word of odd generators (`false` = one-form, `true` = form
/// dual) by adjacent rewriting: equal odd generators square to zero, distinct
/// ones anticommute, and `q[m] dx[m] = -dx[m] q[m] + eta(m, m)`.
fn odd_normal_order(ctx: &Context, word: Vec<(bool, u32)>) -> Vec<OddTerm> {
    let mut out = Vec::new();
    let mut work = vec![(1i32, word)];
    while let Some((sign, w)) = work.pop() {
        let mut rewritten = false;
        for p in 0..w.len().saturating_sub(1) {
            let (qa, ia) = w[p];
            let (qb, ib) = w[p + 1];
            let violation = match (qa, qb) {
                // form dual before one-form: always out of order
                (true, false) => true,
                // within a block: indices must strictly increase
                (true, true) | (false, false) => ia >= ib,
                (false, true) => false,
            };
            if !violation {
                continue;
            }
            rewritten = true;
            if qa == qb {
                if ia == ib {
                    // repeated odd generator: the branch vanishes
                } else {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    work.push((-sign, swapped));
                }
            } else {
                // q[a] dx[b] -> -dx[b] q[a] + eta(a, b)
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                work.push((-sign, swapped));
                if ia == ib {
                    let mut contracted = w.clone();
                    contracted.drain(p..p + 2);
                    work.push((sign * ctx.eta(ia, ib), contracted));
                }
            }
            break;
        }
        if !rewritten {
            let form: Vec<u32> = w.iter().filter(|(q, _)| !q).map(|&(_, i)| i).collect();
            let formderiv: Vec<u32> = w.iter().filter(|(q, _)| *q).map(|&(_, i)| i).collect();
            out.push(OddTerm { sign, form, formderiv });
        }
    }
    out
}

/// The normally ordered product of two monomials as a list of
/// `(monomial, scalar)` contributions.
pub(crate) fn normal_ordered_product(
    ctx: &Context,
    a: &Monomial,
    b: &Monomial,
) -> Vec<(Monomial, GaussRat)> {
    // Odd sector: a.form a.formderiv b.form b.formderiv, reordered. When the
    // left factor contributes no form dual and the right no one-form, the
    // concatenation is already normally ordered (each block stays strictly
    // ascending, no dual crosses a one-form) up to possible repeats.
    let odd_terms = if a.formderiv.is_empty() && b.form.is_empty() {
        vec![OddTerm { sign: 1, form: a.form.clone(), formderiv: b.formderiv.clone() }]
    } else {
        let mut odd_word: Vec<(bool, u32)> =
            Vec::with_capacity(a.degree() as usize + b.degree() as usize);
        odd_word.extend(a.form.iter().map(|&i| (false, i)));
        odd_word.extend(a.formderiv.iter().map(|&i| (true, i)));
        odd_word.extend(b.form.iter().map(|&i| (false, i)));
        odd_word.extend(b.formderiv.iter().map(|&i| (true, i)));
        odd_normal_order(ctx, odd_word)
    };
    if odd_terms.is_empty() {
        return Vec::new();
    }

    let even_terms = even_contractions(ctx, &a.deriv, &b.coord);

    let mut out = Vec::with_capacity(even_terms.len() * odd_terms.len());
    for ev in &even_terms {
        let mut coord = a.coord.clone();
        coord.extend(remove_copies(&b.coord, &ev.removed));
        let mut deriv = remove_copies(&a.deriv, &ev.removed);
        deriv.extend_from_slice(&b.deriv);
        for od in &odd_terms {
            let scalar =
                GaussRat::from_bigint(ev.factor.clone() * BigInt::from(od.sign));
            if scalar.is_zero() {
                continue;
            }
            out.push((
                Monomial::from_parts(coord.clone(), od.form.clone(), od.formderiv.clone(), deriv.clone()),
                scalar,
            ));
        }
    }
    out
}
