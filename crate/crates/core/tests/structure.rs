use hallbase::context::Context;
use hallbase::field::Matrix;
use hallbase::order::{leq, linear_extension, max_elements};
use hallbase::quiver::{parse_quiver, Quiver};
use hallbase::rep::{build_rep, hom_dim, identify, indecomposable_rep, simple_rep, submodules_with_layer, Rep};
use hallbase::roots::{Partition, RootSystem, Word};

fn a2() -> Quiver {
    Quiver::linear_a(2)
}

fn d4() -> Quiver {
    parse_quiver(r#"{"vertices":4,"arrows":[[1,4],[2,4],[3,4]]}"#).unwrap()
}

#[test]
fn quiver_parsing_and_validation() {
    assert_eq!(parse_quiver(r#"{"vertices":2,"arrows":[[1,2]]}"#).unwrap(), a2());
    assert!(parse_quiver(r#"{"vertices":2,"arrows":[[1,2],[2,1]]}"#).is_err());
    assert!(parse_quiver(r#"{"vertices":3,"arrows":[[1,2],[2,3],[3,1]]}"#).is_err());
    assert!(parse_quiver(r#"{"vertices":2,"arrows":[[1,3]]}"#).is_err());
    assert!(parse_quiver("not json").is_err());
    let diag = d4().validate_dynkin();
    assert!(diag.accepted && diag.positive_definite);
    assert_eq!(diag.types().iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["D4"]);
    assert_eq!(Quiver::linear_a(3).validate_dynkin().types()[0].to_string(), "A3");
    // affine D4 is not Dynkin
    let q = Quiver::unchecked(5, &[(1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
    assert!(!q.validate_dynkin().accepted);
}

#[test]
fn forms() {
    let q = a2();
    assert_eq!(q.euler_form(&[1, 0], &[0, 1]).unwrap(), -1);
    assert_eq!(q.euler_form(&[1, 1], &[1, 1]).unwrap(), 1);
    assert_eq!(q.tits_form(&[1, 1]).unwrap(), 1);
    assert_eq!(q.tits_form(&[2, 0]).unwrap(), 4);
    assert_eq!(d4().euler_form(&[1, 1, 1, 2], &[1, 1, 1, 2]).unwrap(), 1);
    assert_eq!(d4().tits_form(&[1, 1, 1, 2]).unwrap(), 1);
    assert!(q.euler_form(&[1], &[1, 0]).is_err());
}

#[test]
fn vertex_orders() {
    assert_eq!(a2().vertex_order_dfb(), [0, 1]);
    assert_eq!(Quiver::linear_a(3).vertex_order_dfb(), [0, 1, 2]);
    assert_eq!(d4().vertex_order_dfb(), [0, 1, 2, 3]);
    assert_eq!(d4().all_vertex_orders().len(), 6);
}

#[test]
fn root_counts() {
    let rs = RootSystem::new(&a2());
    let dims: Vec<&[u32]> = rs.roots().iter().map(|r| r.dim.as_slice()).collect();
    assert_eq!(dims, [&[0, 1][..], &[1, 0], &[1, 1]]);
    for n in 1..=6 {
        assert_eq!(RootSystem::new(&Quiver::linear_a(n)).len(), n * (n + 1) / 2);
    }
    assert_eq!(RootSystem::new(&d4()).len(), 12);
    let e6 = parse_quiver(r#"{"vertices":6,"arrows":[[1,2],[2,3],[3,4],[4,5],[6,3]]}"#).unwrap();
    assert_eq!(RootSystem::new(&e6).len(), 36);
}

#[test]
fn kostant_partitions() {
    let rs = RootSystem::new(&a2());
    assert_eq!(rs.partitions(&[1, 1]).len(), 2);
    assert_eq!(rs.partitions(&[0, 0]), vec![Partition::zero(3)]);
    assert_eq!(RootSystem::new(&Quiver::linear_a(3)).partitions(&[1, 1, 1]).len(), 4);
}

#[test]
fn tight_forms() {
    let w = Word::parse("12344", 4).unwrap();
    assert_eq!(w.tight_form().runs(), [(0, 1), (1, 1), (2, 1), (3, 2)]);
    assert_eq!(Word::parse("1121", 2).unwrap().tight_form().runs(), [(0, 2), (1, 1), (0, 1)]);
    assert!(Word::new(vec![]).tight_form().runs().is_empty());
    assert_eq!(Word::parse("1,2,3,4,4", 4).unwrap(), w);
}

#[test]
fn representations() {
    let q = a2();
    let s1 = simple_rep(&q, 0, 2);
    assert_eq!(s1.dims(), [1, 0]);
    assert_eq!(simple_rep(&q, 1, 3).dims(), [0, 1]);
    assert_eq!(simple_rep(&d4(), 3, 2).dims(), [0, 0, 0, 1]);
    let m = indecomposable_rep(&q, &[1, 1], 2).unwrap();
    assert_eq!(hom_dim(&m, &m).unwrap(), 1);
    assert_eq!(indecomposable_rep(&q, &[1, 0], 2).unwrap(), s1);
    let x = indecomposable_rep(&d4(), &[1, 1, 1, 2], 5).unwrap();
    assert_eq!(hom_dim(&x, &x).unwrap(), 1);
    let cols: Vec<Vec<u32>> = x.maps().iter().map(|m| (0..2).map(|r| m.get(r, 0)).collect()).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let det = (cols[i][0] * cols[j][1] % 5 + 5 - cols[i][1] * cols[j][0] % 5) % 5;
            assert_ne!(det, 0, "columns {i} and {j} are dependent");
        }
    }
    assert!(indecomposable_rep(&q, &[2, 1], 2).is_err());
}

#[test]
fn block_sums_and_identification() {
    let q = a2();
    let rs = RootSystem::new(&q);
    let x = build_rep(&q, &rs, &Partition(vec![0, 1, 1]), 2).unwrap();
    assert_eq!(x.dims(), [2, 1]);
    assert_eq!(x.maps()[0].rank(2), 1);
    assert_eq!(build_rep(&q, &rs, &Partition(vec![0, 2, 0]), 2).unwrap().dims(), [2, 0]);
    assert_eq!(build_rep(&q, &rs, &Partition::zero(3), 2).unwrap().total_dim(), 0);

    let ctx = Context::with_defaults(q.clone()).unwrap();
    let inds = ctx.indecomposables(2).unwrap();
    let split = Rep::new(&q, 2, vec![1, 1], vec![Matrix::from_flat(1, 1, vec![0])]).unwrap();
    let glued = Rep::new(&q, 2, vec![1, 1], vec![Matrix::from_flat(1, 1, vec![1])]).unwrap();
    assert_eq!(identify(&split, &inds, ctx.hom(), ctx.roots()).unwrap(), Partition(vec![1, 1, 0]));
    assert_eq!(identify(&glued, &inds, ctx.hom(), ctx.roots()).unwrap(), Partition(vec![0, 0, 1]));
    assert_eq!(ctx.hom().ext(rs.simple(0), rs.simple(1)), 1);
    assert_eq!(ctx.hom().ext(rs.simple(1), rs.simple(0)), 0);
}

#[test]
fn identification_round_trip_a3() {
    let ctx = Context::with_defaults(Quiver::linear_a(3)).unwrap();
    let inds = ctx.indecomposables(3).unwrap();
    for a in 0..=2u32 {
        for b in 0..=2u32 {
            for c in 0..=2u32 {
                for l in ctx.partitions(&[a, b, c]).iter() {
                    if ctx.roots().length(l) > 5 {
                        continue;
                    }
                    let x = build_rep(ctx.quiver(), ctx.roots(), l, 3).unwrap();
                    assert_eq!(&identify(&x, &inds, ctx.hom(), ctx.roots()).unwrap(), l);
                }
            }
        }
    }
}

#[test]
fn layer_submodules() {
    let q = a2();
    let rs = RootSystem::new(&q);
    let x = build_rep(&q, &rs, &Partition(vec![0, 2, 0]), 2).unwrap();
    let subs = submodules_with_layer(&x, 0, 1);
    assert_eq!(subs.len(), 3);
    assert!(subs.iter().all(|u| u.dims() == [1, 0]));
    let m = build_rep(&q, &rs, &Partition(vec![0, 0, 1]), 2).unwrap();
    let subs = submodules_with_layer(&m, 0, 1);
    assert_eq!(subs.len(), 1);
    assert_eq!(subs[0].dims(), [0, 1]);
    assert!(submodules_with_layer(&m, 1, 1).is_empty());
}

#[test]
fn degeneration_order() {
    let ctx = Context::with_defaults(a2()).unwrap();
    let parts = ctx.partitions(&[1, 1]);
    let split = Partition(vec![1, 1, 0]);
    let m12 = Partition(vec![0, 0, 1]);
    assert_eq!(linear_extension(&ctx, &parts), vec![split.clone(), m12.clone()]);
    assert!(leq(&ctx, &split, &m12) && !leq(&ctx, &m12, &split));
    assert_eq!(max_elements(&ctx, &parts), vec![m12]);
    assert!(max_elements(&ctx, &[]).is_empty());

    let ctx = Context::with_defaults(Quiver::linear_a(3)).unwrap();
    let order = linear_extension(&ctx, &ctx.partitions(&[1, 1, 1]));
    assert_eq!(order.len(), 4);
    assert_eq!(
        order[0],
        ctx.roots()
            .semisimple_layer(0, 1)
            .direct_sum(&ctx.roots().semisimple_layer(1, 1))
            .direct_sum(&ctx.roots().semisimple_layer(2, 1))
    );
    assert_eq!(ctx.dimvec(&order[3]), [1, 1, 1]);
    assert_eq!(order[3].support().len(), 1);
}
