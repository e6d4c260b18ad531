use std::sync::OnceLock;

use hallbase::basis::{bar_matrix, directed_representatives, monomial, transition_matrix};
use hallbase::context::Context;
use hallbase::hall::phi_word;
use hallbase::monoid::{fibre, star, star_simple, wp};
use hallbase::order::leq;
use hallbase::poly::LaurentPoly;
use hallbase::quiver::{parse_quiver, Quiver};
use hallbase::roots::{Partition, Word};
use proptest::prelude::*;

fn a3() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::with_defaults(Quiver::linear_a(3)).unwrap())
}

fn d4() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| {
        Context::with_defaults(parse_quiver(r#"{"vertices":4,"arrows":[[1,4],[2,4],[3,4]]}"#).unwrap()).unwrap()
    })
}

fn word(n: usize, max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..n, 1..=max).prop_map(Word::new)
}

/// Partitions of total dimension at most `max_len`.
fn partition(ctx: &'static Context, max_len: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..ctx.nroots(), 0..=max_len as usize).prop_map(move |idx| {
        let mut l = Partition::zero(ctx.nroots());
        for i in idx {
            if ctx.roots().length(&l) + ctx.roots().roots()[i].length() <= max_len {
                l.0[i] += 1;
            }
        }
        l
    })
}

#[test]
fn euler_form_is_hom_minus_ext() {
    let e6 = parse_quiver(r#"{"vertices":6,"arrows":[[1,2],[2,3],[3,4],[4,5],[6,3]]}"#).unwrap();
    for ctx in [a3(), d4(), &Context::with_defaults(e6).unwrap()] {
        let rs = ctx.roots();
        for b in 0..rs.len() {
            for g in 0..rs.len() {
                let h = ctx.hom().hom(b, g) as i64 - ctx.hom().ext(b, g) as i64;
                assert_eq!(h, ctx.quiver().euler_form(rs.dim(b), rs.dim(g)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_lies_in_its_fibre(w in word(3, 6)) {
        let ctx = a3();
        let l = wp(ctx, &w).unwrap();
        prop_assert!(fibre(ctx, &l).unwrap().contains(&w));
        prop_assert_eq!(ctx.dimvec(&l), w.content(3));
    }

    #[test]
    fn type_a_hall_polynomials_are_positive(w in word(3, 6)) {
        let ctx = a3();
        let top = wp(ctx, &w).unwrap();
        for (l, f) in phi_word(ctx, &w).unwrap() {
            prop_assert!(f.is_nonnegative(), "φ_w at {:?} is {}", l, f);
            prop_assert!(leq(ctx, &l, &top));
        }
    }

    #[test]
    fn star_with_a_simple_agrees(i in 0usize..3, nu in partition(a3(), 4)) {
        let ctx = a3();
        let s = ctx.roots().semisimple_layer(i, 1);
        prop_assert_eq!(star_simple(ctx, i, &nu).unwrap(), star(ctx, &s, &nu).unwrap());
    }

    #[test]
    fn star_raises_the_order(a in partition(a3(), 3), b in partition(a3(), 3)) {
        let ctx = a3();
        let ab = star(ctx, &a, &b).unwrap();
        prop_assert!(leq(ctx, &a.direct_sum(&b), &ab));
    }

    #[test]
    fn degeneration_order_is_antisymmetric(a in partition(d4(), 5), i in any::<usize>(), j in any::<usize>()) {
        let ctx = d4();
        let parts = ctx.partitions(&ctx.dimvec(&a));
        let (a, b) = (&parts[i % parts.len()], &parts[j % parts.len()]);
        if leq(ctx, a, b) && leq(ctx, b, a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn monomials_are_bar_invariant(w in word(3, 4)) {
        let ctx = a3();
        let d = w.content(3);
        let f = transition_matrix(ctx, &d, &directed_representatives(ctx, &d).unwrap()).unwrap();
        let r = bar_matrix(&f).unwrap();
        let m = monomial(ctx, &w).unwrap().tilde_coeffs(ctx);
        let zeta: Vec<LaurentPoly> = r.labels.iter().map(|l| m.get(l).cloned().unwrap_or_default()).collect();
        for k in 0..r.size() {
            let mut s = LaurentPoly::zero();
            for (j, z) in zeta.iter().enumerate() {
                s = &s + &(r.get(k, j) * &z.bar());
            }
            prop_assert_eq!(&s, &zeta[k]);
        }
    }
}
