use std::collections::BTreeSet;

use hallbase::basis::{
    bar_matrix, canonical_basis, directed_representatives, first_distinguished_representatives, lemma67_experiment,
    monomial, monomial_from_gamma, monomial_from_products, tilde_exponent, transition_matrix,
};
use hallbase::context::{Config, Context};
use hallbase::error::Error;
use hallbase::hall::{count_layer, gamma_word, general_hall, layer_poly, phi_word};
use hallbase::monoid::{
    all_directed_words, directed_word, fibre, is_distinguished, star, star_simple, wp, DirectedPartition,
};
use hallbase::order::leq;
use hallbase::poly::{IntPoly, LaurentPoly};
use hallbase::quiver::{parse_quiver, Quiver};
use hallbase::roots::{Partition, Word};

const S2: usize = 0;
const S1: usize = 1;
const M12: usize = 2;

fn a2() -> Context {
    Context::with_defaults(Quiver::linear_a(2)).unwrap()
}

fn d4() -> Context {
    Context::with_defaults(parse_quiver(r#"{"vertices":4,"arrows":[[1,4],[2,4],[3,4]]}"#).unwrap()).unwrap()
}

fn part(n: usize, entries: &[(usize, u32)]) -> Partition {
    let mut v = vec![0; n];
    for &(i, m) in entries {
        v[i] = m;
    }
    Partition(v)
}

fn q(c: &[i64]) -> IntPoly {
    IntPoly::new(c.to_vec())
}

fn w(ctx: &Context, s: &str) -> Word {
    Word::parse(s, ctx.quiver().vertex_count()).unwrap()
}

fn d4_indec(ctx: &Context) -> Partition {
    Partition::single(ctx.nroots(), ctx.roots().index_of(&[1, 1, 1, 2]).unwrap())
}

#[test]
fn layer_census_and_polynomials() {
    let ctx = a2();
    let lam = part(3, &[(S1, 2), (M12, 1)]);
    assert_eq!(
        count_layer(&ctx, &lam, 0, 2, 2).unwrap(),
        [(part(3, &[(M12, 1)]), 4), (part(3, &[(S1, 1), (S2, 1)]), 3)].into()
    );
    assert_eq!(
        *layer_poly(&ctx, &lam, 0, 2).unwrap(),
        [(part(3, &[(M12, 1)]), q(&[0, 0, 1])), (part(3, &[(S1, 1), (S2, 1)]), q(&[1, 1]))].into()
    );
    assert_eq!(*layer_poly(&ctx, &part(3, &[(S1, 2)]), 0, 1).unwrap(), [(part(3, &[(S1, 1)]), q(&[1, 1]))].into());
    assert_eq!(*layer_poly(&ctx, &part(3, &[(M12, 1)]), 0, 1).unwrap(), [(part(3, &[(S2, 1)]), IntPoly::one())].into());
    assert!(layer_poly(&ctx, &part(3, &[(M12, 1)]), 1, 1).unwrap().is_empty());
}

#[test]
fn word_polynomials() {
    let ctx = a2();
    let g = gamma_word(&ctx, &w(&ctx, "1121")).unwrap();
    assert_eq!(g[&part(3, &[(S1, 2), (M12, 1)])], q(&[1, 1]));
    let g = gamma_word(&ctx, &w(&ctx, "12")).unwrap();
    assert_eq!(*g, [(part(3, &[(M12, 1)]), IntPoly::one()), (part(3, &[(S1, 1), (S2, 1)]), IntPoly::one())].into());
    assert_eq!(phi_word(&ctx, &w(&ctx, "11")).unwrap(), [(part(3, &[(S1, 2)]), q(&[1, 1]))].into());
    assert_eq!(phi_word(&ctx, &w(&ctx, "21")).unwrap(), [(part(3, &[(S1, 1), (S2, 1)]), IntPoly::one())].into());

    let ctx = d4();
    assert_eq!(gamma_word(&ctx, &w(&ctx, "12344")).unwrap()[&d4_indec(&ctx)], IntPoly::one());
}

#[test]
fn general_hall_polynomials() {
    let ctx = a2();
    let s1 = part(3, &[(S1, 1)]);
    let s2 = part(3, &[(S2, 1)]);
    let m12 = part(3, &[(M12, 1)]);
    let split = part(3, &[(S1, 1), (S2, 1)]);
    assert_eq!(general_hall(&ctx, &part(3, &[(S1, 2)]), &s1, &s1).unwrap(), q(&[1, 1]));
    assert_eq!(general_hall(&ctx, &m12, &s1, &s2).unwrap(), IntPoly::one());
    assert!(general_hall(&ctx, &m12, &s2, &s1).unwrap().is_zero());
    assert_eq!(general_hall(&ctx, &split, &s1, &s2).unwrap(), IntPoly::one());
    assert_eq!(general_hall(&ctx, &split, &s2, &s1).unwrap(), IntPoly::one());
    assert!(general_hall(&ctx, &m12, &s1, &s1).unwrap().is_zero());
    let small = Context::new(Quiver::linear_a(2), Config { max_length: 2, ..Default::default() }).unwrap();
    assert!(matches!(
        general_hall(&small, &part(3, &[(S1, 3)]), &s1, &part(3, &[(S1, 2)])),
        Err(Error::CapExceeded(_))
    ));
}

#[test]
fn generic_extensions() {
    let ctx = a2();
    let s1 = part(3, &[(S1, 1)]);
    let s2 = part(3, &[(S2, 1)]);
    assert_eq!(star(&ctx, &s1, &s2).unwrap(), part(3, &[(M12, 1)]));
    assert_eq!(star(&ctx, &s2, &s1).unwrap(), part(3, &[(S1, 1), (S2, 1)]));
    assert_eq!(star_simple(&ctx, 0, &s2).unwrap(), part(3, &[(M12, 1)]));
    assert_eq!(star(&ctx, &Partition::zero(3), &s1).unwrap(), s1);
    let ctx = d4();
    assert_eq!(wp(&ctx, &w(&ctx, "1,2,3,4,4")).unwrap(), d4_indec(&ctx));
}

#[test]
fn fibres_and_distinguished_words() {
    let ctx = a2();
    assert_eq!(fibre(&ctx, &part(3, &[(M12, 1)])).unwrap(), [w(&ctx, "12")]);
    assert_eq!(fibre(&ctx, &part(3, &[(S1, 1), (S2, 1)])).unwrap(), [w(&ctx, "21")]);
    assert!(!is_distinguished(&ctx, &w(&ctx, "1121")).unwrap());
    assert!(is_distinguished(&ctx, &w(&ctx, "12")).unwrap());
    let ctx = d4();
    assert!(is_distinguished(&ctx, &w(&ctx, "12434")).unwrap());
    assert_eq!(fibre(&ctx, &d4_indec(&ctx)).unwrap().len(), 12);
}

#[test]
fn directed_words() {
    let ctx = a2();
    assert_eq!(directed_word(&ctx, &part(3, &[(M12, 1)]), None, None).unwrap(), w(&ctx, "12"));
    assert_eq!(directed_word(&ctx, &part(3, &[(S1, 1), (S2, 1)]), None, None).unwrap(), w(&ctx, "21"));
    // S1 before S2 violates the Ext condition
    let bad = DirectedPartition { parts: vec![vec![S1], vec![S2]] };
    assert!(directed_word(&ctx, &part(3, &[(S1, 1), (S2, 1)]), Some(&bad), None).is_err());
    assert_eq!(all_directed_words(&ctx, &part(3, &[(M12, 1)])).unwrap(), BTreeSet::from([w(&ctx, "12")]));
    for i in 0..2 {
        let l = ctx.roots().semisimple_layer(i, 1);
        assert_eq!(all_directed_words(&ctx, &l).unwrap(), BTreeSet::from([Word::new(vec![i])]));
    }

    let ctx = d4();
    let lam = d4_indec(&ctx);
    assert_eq!(directed_word(&ctx, &lam, None, None).unwrap(), w(&ctx, "12344"));
    assert_eq!(directed_word(&ctx, &lam, None, Some(&[2, 0, 1, 3])).unwrap(), w(&ctx, "31244"));
    let all = all_directed_words(&ctx, &lam).unwrap();
    let want: BTreeSet<Word> =
        ["12344", "13244", "21344", "23144", "31244", "32144"].iter().map(|s| w(&ctx, s)).collect();
    assert_eq!(all, want);
}

#[test]
fn tilde_exponents() {
    let ctx = a2();
    assert_eq!(tilde_exponent(&ctx, &part(3, &[(M12, 1)])), -1);
    assert_eq!(tilde_exponent(&ctx, &part(3, &[(S1, 1)])), 0);
    assert_eq!(tilde_exponent(&ctx, &part(3, &[(S1, 2)])), 2);
}

#[test]
fn monomials_and_transition_a2() {
    let ctx = a2();
    for s in ["12", "21", "1121", "112", "2211"] {
        let word = w(&ctx, s);
        assert_eq!(monomial_from_gamma(&ctx, &word).unwrap(), monomial_from_products(&ctx, &word).unwrap(), "{s}");
    }
    let m = monomial(&ctx, &w(&ctx, "12")).unwrap().tilde_coeffs(&ctx);
    assert_eq!(m[&part(3, &[(M12, 1)])], LaurentPoly::one());
    assert_eq!(m[&part(3, &[(S1, 1), (S2, 1)])], LaurentPoly::monomial(1, -1));

    let f = transition_matrix(&ctx, &[1, 1], &directed_representatives(&ctx, &[1, 1]).unwrap()).unwrap();
    assert_eq!(f.labels, [part(3, &[(S1, 1), (S2, 1)]), part(3, &[(M12, 1)])]);
    assert_eq!(*f.get(0, 1), LaurentPoly::monomial(1, -1));
    assert!(f.get(1, 0).is_zero());
    assert!(f.diagonal().iter().all(|x| x.is_one()));
    let r = bar_matrix(&f).unwrap();
    assert_eq!(*r.get(0, 1), &LaurentPoly::monomial(1, -1) - &LaurentPoly::monomial(1, 1));

    let f = transition_matrix(&ctx, &[1, 0], &directed_representatives(&ctx, &[1, 0]).unwrap()).unwrap();
    assert!(f.is_identity());
}

#[test]
fn transition_a3_has_unit_diagonal() {
    let ctx = Context::with_defaults(Quiver::linear_a(3)).unwrap();
    let f = transition_matrix(&ctx, &[1, 1, 1], &directed_representatives(&ctx, &[1, 1, 1]).unwrap()).unwrap();
    assert_eq!(f.size(), 4);
    assert!(f.is_upper_triangular());
    assert!(f.diagonal().iter().all(|x| x.as_unit().is_some()));
    let g =
        transition_matrix(&ctx, &[2, 1, 1], &first_distinguished_representatives(&ctx, &[2, 1, 1]).unwrap()).unwrap();
    assert!(g.diagonal().iter().all(|x| x.as_unit().is_some()));
}

#[test]
fn canonical_bases() {
    let ctx = a2();
    let cb = canonical_basis(&ctx, &[1, 1]).unwrap();
    let c = cb[&part(3, &[(M12, 1)])].tilde_coeffs(&ctx);
    assert_eq!(c.len(), 2);
    assert_eq!(c[&part(3, &[(S1, 1), (S2, 1)])], LaurentPoly::monomial(1, -1));
    assert_eq!(canonical_basis(&ctx, &[0, 1]).unwrap()[&part(3, &[(S2, 1)])].tilde_coeffs(&ctx).len(), 1);

    // unitriangular, off-diagonal coefficients in v⁻¹Z[v⁻¹]
    for ctx in [Context::with_defaults(Quiver::linear_a(3)).unwrap(), d4()] {
        let n = ctx.quiver().vertex_count();
        for d in [vec![1; n], {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }] {
            if ctx.partitions(&d).len() > 40 {
                continue;
            }
            for (l, c) in canonical_basis(&ctx, &d).unwrap() {
                for (k, coeff) in c.tilde_coeffs(&ctx) {
                    if k == l {
                        assert!(coeff.is_one());
                    } else {
                        assert!(leq(&ctx, &k, &l));
                        assert!(coeff.in_negative_lattice(), "{coeff}");
                    }
                }
            }
        }
    }
}

#[test]
fn lemma67_scan() {
    let ctx = a2();
    let r = lemma67_experiment(&ctx, 4).unwrap();
    assert_eq!(r.words, 2 + 4 + 8 + 16);
    assert!(r.distinguished >= r.directed && r.directed > 0);
    assert!(r.violations.is_empty());
}
