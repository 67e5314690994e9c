//! An independent normal-ordering oracle for the ambient super-algebra.
//!
//! Products here are computed by literal adjacent-pair rewriting on words of
//! generators — no contraction combinatorics, no factorials — so the result
//! can be compared against the engine's product kernel. The only engine
//! functionality the oracle relies on is assembling an element from an
//! already normally ordered word, which exercises nothing but coefficient
//! bookkeeping and trivially ordered concatenation.

use kappa_core::{Context, Element, GaussRat};

/// One generator of the ambient algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    X(u32),
    Dx(u32),
    Q(u32),
    Del(u32),
}

impl Gen {
    /// Position of the generator's block in the canonical order
    /// `x < dx < q < del`.
    pub fn block(self) -> u8 {
        match self {
            Gen::X(_) => 0,
            Gen::Dx(_) => 1,
            Gen::Q(_) => 2,
            Gen::Del(_) => 3,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Gen::X(i) | Gen::Dx(i) | Gen::Q(i) | Gen::Del(i) => i,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Dx(_) | Gen::Q(_))
    }

    pub fn element(self, ctx: Context) -> Element {
        match self {
            Gen::X(i) => Element::coord(ctx, i),
            Gen::Dx(i) => Element::form(ctx, i),
            Gen::Q(i) => Element::form_deriv(ctx, i),
            Gen::Del(i) => Element::deriv(ctx, i),
        }
    }
}

/// What to do about one adjacent pair.
enum Step {
    /// Already in normal order.
    Ordered,
    /// Swap with the given sign and, when `contract` is set, also branch into
    /// the word with both generators removed, weighted by the metric.
    Rewrite { swap_sign: i64, contract: bool },
    /// A repeated odd generator: the whole word vanishes.
    Kill,
}

fn classify(a: Gen, b: Gen) -> Step {
    use std::cmp::Ordering;
    match a.block().cmp(&b.block()) {
        Ordering::Less => Step::Ordered,
        Ordering::Equal => match (a.is_odd(), a.index().cmp(&b.index())) {
            (_, Ordering::Less) => Step::Ordered,
            (false, Ordering::Equal) => Step::Ordered,
            (true, Ordering::Equal) => Step::Kill,
            (false, Ordering::Greater) => Step::Rewrite { swap_sign: 1, contract: false },
            (true, Ordering::Greater) => Step::Rewrite { swap_sign: -1, contract: false },
        },
        Ordering::Greater => match (a, b) {
            // del[m] x[n] = x[n] del[m] + eta(m, n)
            (Gen::Del(_), Gen::X(_)) => Step::Rewrite { swap_sign: 1, contract: true },
            // q[m] dx[n] = -dx[n] q[m] + eta(m, n)
            (Gen::Q(_), Gen::Dx(_)) => Step::Rewrite { swap_sign: -1, contract: true },
            // every other out-of-order pair involves an even generator and
            // commutes freely
            _ => Step::Rewrite { swap_sign: 1, contract: false },
        },
    }
}

/// The normal form of a generator word as `(normal word, integer weight)`
/// pairs, computed purely by adjacent rewriting.
pub fn naive_normal_form(ctx: Context, word: &[Gen]) -> Vec<(Vec<Gen>, i64)> {
    let mut done: Vec<(Vec<Gen>, i64)> = Vec::new();
    let mut work: Vec<(i64, Vec<Gen>)> = vec![(1, word.to_vec())];
    'outer: while let Some((weight, w)) = work.pop() {
        for p in 0..w.len().saturating_sub(1) {
            match classify(w[p], w[p + 1]) {
                Step::Ordered => continue,
                Step::Kill => continue 'outer,
                Step::Rewrite { swap_sign, contract } => {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    work.push((weight * swap_sign, swapped));
                    if contract && w[p].index() == w[p + 1].index() {
                        let eta = ctx.eta(w[p].index(), w[p + 1].index()) as i64;
                        let mut contracted = w.clone();
                        contracted.drain(p..p + 2);
                        work.push((weight * eta, contracted));
                    }
                    continue 'outer;
                }
            }
        }
        // no violations left: accumulate
        if let Some(entry) = done.iter_mut().find(|(u, _)| *u == w) {
            entry.1 += weight;
        } else {
            done.push((w, weight));
        }
    }
    done.retain(|(_, k)| *k != 0);
    done
}

/// The oracle's product of two words, assembled into an engine element. Every
/// word fed to the assembly step is already normally ordered.
pub fn naive_product_element(ctx: Context, a: &[Gen], b: &[Gen]) -> Element {
    let joined: Vec<Gen> = a.iter().chain(b.iter()).copied().collect();
    let mut out = Element::zero(ctx);
    for (w, k) in naive_normal_form(ctx, &joined) {
        let mut e = Element::scalar(ctx, GaussRat::from_int(k));
        for g in w {
            e = e.multiply(&g.element(ctx));
        }
        out = out.try_add(&e).unwrap();
    }
    out
}

/// The engine's product of the same two words: fold the generator elements
/// through the product kernel in the given (possibly unordered) sequence.
pub fn engine_product_element(ctx: Context, a: &[Gen], b: &[Gen]) -> Element {
    let mut e = Element::one(ctx);
    for g in a.iter().chain(b.iter()) {
        e = e.multiply(&g.element(ctx));
    }
    e
}

/// All generators with indices below `n`. Not every test binary that links
/// this module uses it.
#[allow(dead_code)]
pub fn all_generators(n: u32) -> Vec<Gen> {
    let mut v = Vec::new();
    for i in 0..n {
        v.push(Gen::X(i));
        v.push(Gen::Dx(i));
        v.push(Gen::Q(i));
        v.push(Gen::Del(i));
    }
    v
}
