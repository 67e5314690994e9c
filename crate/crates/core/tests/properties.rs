//! Randomized structural laws of the operator algebra: agreement with the
//! independent rewriting oracle, associativity, parity bookkeeping, graded
//! antisymmetry, truncation compatibility, vacuum projection, and the group
//! law of rational shift powers.

mod common;

use std::sync::OnceLock;

use common::{engine_product_element, naive_product_element, Gen};
use kappa_core::{Context, Element, Family, Realization, SymKey};
use num::BigRational;
use proptest::prelude::*;

fn gen_strategy(n: u32) -> impl Strategy<Value = Gen> {
    (0u8..4, 0..n).prop_map(|(block, i)| match block {
        0 => Gen::X(i),
        1 => Gen::Dx(i),
        2 => Gen::Q(i),
        _ => Gen::Del(i),
    })
}

fn word(n: u32, max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    proptest::collection::vec(gen_strategy(n), 0..=max_len)
}

fn word_element(ctx: Context, w: &[Gen]) -> Element {
    engine_product_element(ctx, w, &[])
}

fn realized() -> &'static Realization {
    static CELL: OnceLock<Realization> = OnceLock::new();
    CELL.get_or_init(|| {
        Realization::build(Context::new(2, 5), Family::D1, BigRational::from_integer(1.into()))
    })
}

fn realized_closed_form() -> &'static Realization {
    static CELL: OnceLock<Realization> = OnceLock::new();
    CELL.get_or_init(|| {
        Realization::build(Context::new(2, 4), Family::Sitarz, BigRational::from_integer(1.into()))
    })
}

/// A pool of operators with genuine series content in the deformation
/// parameter, for properties that are vacuous on plain generator words.
fn series_pool() -> Vec<&'static Element> {
    let rea = realized();
    vec![
        rea.xhat(0),
        rea.xhat(1),
        rea.xi(0),
        rea.xi(1),
        rea.z(),
        rea.z_inv(),
        rea.ext_deriv(),
        rea.get(&SymKey::M(1, 0)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_rewriting_oracle(a in word(3, 3), b in word(3, 3)) {
        let ctx = Context::new(3, 2);
        prop_assert_eq!(
            engine_product_element(ctx, &a, &b),
            naive_product_element(ctx, &a, &b)
        );
    }

    #[test]
    fn product_is_associative(a in word(3, 3), b in word(3, 3), c in word(3, 3)) {
        let ctx = Context::new(3, 2);
        let (ea, eb, ec) = (word_element(ctx, &a), word_element(ctx, &b), word_element(ctx, &c));
        prop_assert_eq!(ea.multiply(&eb).multiply(&ec), ea.multiply(&eb.multiply(&ec)));
    }

    #[test]
    fn parity_adds_modulo_two(a in word(2, 4), b in word(2, 4)) {
        let ctx = Context::new(2, 2);
        let odd_letters =
            a.iter().chain(b.iter()).filter(|g| g.is_odd()).count();
        let expected_odd = odd_letters % 2 == 1;
        let product = engine_product_element(ctx, &a, &b);
        for (m, _) in product.terms() {
            prop_assert_eq!(m.is_odd(), expected_odd, "term {} in {}", m, product);
        }
    }

    #[test]
    fn graded_bracket_antisymmetry(a in word(2, 3), b in word(2, 3)) {
        let ctx = Context::new(2, 2);
        let u = word_element(ctx, &a);
        let v = word_element(ctx, &b);
        let u_odd = a.iter().filter(|g| g.is_odd()).count() % 2 == 1;
        let v_odd = b.iter().filter(|g| g.is_odd()).count() % 2 == 1;
        let uv = u.graded_commutator(&v);
        let vu = v.graded_commutator(&u);
        let expected = if u_odd && v_odd { vu.clone() } else { vu.negated() };
        prop_assert_eq!(uv, expected);
    }

    #[test]
    fn truncation_commutes_with_product(i in 0usize..8, j in 0usize..8, k in 0u32..=5) {
        let pool = series_pool();
        let (a, b) = (pool[i], pool[j]);
        let full = a.multiply(b).truncate_to_order(k);
        let cut = a
            .truncate_to_order(k)
            .multiply(&b.truncate_to_order(k))
            .truncate_to_order(k);
        prop_assert_eq!(full, cut);
    }

    #[test]
    fn vacuum_projection_composes(a in word(2, 4), b in word(2, 4)) {
        let ctx = Context::new(2, 2);
        let f = word_element(ctx, &a);
        let g = word_element(ctx, &b);
        prop_assert_eq!(
            f.multiply(&g).act_on_vacuum(),
            f.multiply(&g.act_on_vacuum()).act_on_vacuum()
        );
    }

    #[test]
    fn shift_powers_form_a_group(
        p in -4i64..=4, q in 1i64..=4, r in -4i64..=4, s in 1i64..=4
    ) {
        let lhs = BigRational::new(p.into(), q.into());
        let rhs = BigRational::new(r.into(), s.into());
        let sum = &lhs + &rhs;
        for rea in [realized(), realized_closed_form()] {
            let product = rea.z_power(&lhs).unwrap().multiply(&rea.z_power(&rhs).unwrap());
            prop_assert_eq!(product, rea.z_power(&sum).unwrap(), "family {}", rea.family());
        }
    }
}
