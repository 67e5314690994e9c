//! The product kernel against the independent adjacent-rewriting oracle,
//! exhaustively over short generator words.

mod common;

use common::{all_generators, engine_product_element, naive_product_element, Gen};
use kappa_core::Context;

fn assert_words_agree(ctx: Context, a: &[Gen], b: &[Gen]) {
    let engine = engine_product_element(ctx, a, b);
    let oracle = naive_product_element(ctx, a, b);
    assert_eq!(engine, oracle, "word {a:?} * {b:?}");
}

#[test]
fn single_words_up_to_length_three() {
    let ctx = Context::new(2, 3);
    let gens = all_generators(2);
    for &g in &gens {
        assert_words_agree(ctx, &[g], &[]);
        for &h in &gens {
            assert_words_agree(ctx, &[g, h], &[]);
            for &k in &gens {
                assert_words_agree(ctx, &[g, h, k], &[]);
            }
        }
    }
}

#[test]
fn products_of_length_two_words() {
    let ctx = Context::new(2, 3);
    let gens = all_generators(2);
    for &a in &gens {
        for &b in &gens {
            for &c in &gens {
                for &d in &gens {
                    assert_words_agree(ctx, &[a, b], &[c, d]);
                }
            }
        }
    }
}

#[test]
fn longer_mixed_words() {
    let ctx = Context::new(3, 3);
    use Gen::*;
    let cases: &[&[Gen]] = &[
        // repeated contractions against the same coordinate
        &[Del(0), Del(0), X(0), X(0)],
        &[Del(1), Del(2), X(2), X(1)],
        &[Del(0), X(0), Del(0), X(0)],
        // odd generators threaded through even ones
        &[Q(0), X(1), Dx(0), Del(1)],
        &[Dx(2), Q(2), Dx(1), Q(1)],
        &[Q(1), Q(0), Dx(0), Dx(1)],
        // words that vanish by odd repetition
        &[Dx(0), Q(1), Dx(0)],
        &[Q(2), X(0), Q(2)],
        // five letters with both kinds of contraction
        &[Del(0), Q(0), X(0), Dx(0), X(1)],
        &[Q(1), Del(2), Dx(1), X(2), Del(0)],
        &[Del(1), Del(1), X(1), X(1), X(1)],
    ];
    for w in cases {
        assert_words_agree(ctx, w, &[]);
        // and as a split product, exercising the two-factor path
        let mid = w.len() / 2;
        assert_words_agree(ctx, &w[..mid], &w[mid..]);
    }
}

#[test]
fn metric_signs_in_contractions() {
    let ctx = Context::new(2, 2);
    use Gen::*;
    // del[0] x[0] = x[0] del[0] - 1 and del[1] x[1] = x[1] del[1] + 1
    let time = naive_product_element(ctx, &[Del(0)], &[X(0)]);
    let expected_time = engine_product_element(ctx, &[X(0), Del(0)], &[])
        .try_sub(&kappa_core::Element::one(ctx))
        .unwrap();
    assert_eq!(time, expected_time);
    let space = naive_product_element(ctx, &[Del(1)], &[X(1)]);
    let expected_space = engine_product_element(ctx, &[X(1), Del(1)], &[])
        .try_add(&kappa_core::Element::one(ctx))
        .unwrap();
    assert_eq!(space, expected_space);
    // same signature in the odd sector: q[mu] dx[mu] = -dx[mu] q[mu] + eta
    let odd_time = naive_product_element(ctx, &[Q(0)], &[Dx(0)]);
    let expected_odd = engine_product_element(ctx, &[Dx(0), Q(0)], &[])
        .negated()
        .try_sub(&kappa_core::Element::one(ctx))
        .unwrap();
    assert_eq!(odd_time, expected_odd);
}
