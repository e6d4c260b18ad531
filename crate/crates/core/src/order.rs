//! The degeneration order on `Λ_d`: `λ ≤ μ` iff `hv(λ) ≥ hv(μ)` pointwise.

use serde::Serialize;

use crate::context::Context;
use crate::roots::Partition;

pub fn hom_vector(ctx: &Context, lambda: &Partition) -> Vec<u32> {
    ctx.hom().hom_vector(lambda)
}

/// `M(λ)` is a degeneration of `M(μ)`.
pub fn leq(ctx: &Context, lambda: &Partition, mu: &Partition) -> bool {
    if ctx.dimvec(lambda) != ctx.dimvec(mu) {
        return false;
    }
    let (a, b) = (hom_vector(ctx, lambda), hom_vector(ctx, mu));
    a.iter().zip(&b).all(|(x, y)| x >= y)
}

pub fn lt(ctx: &Context, lambda: &Partition, mu: &Partition) -> bool {
    lambda != mu && leq(ctx, lambda, mu)
}

/// Smaller elements first; ties broken by serialization.
pub fn linear_extension(ctx: &Context, parts: &[Partition]) -> Vec<Partition> {
    let mut keyed: Vec<(u32, String, Partition)> =
        parts.iter().map(|l| (hom_vector(ctx, l).iter().sum(), l.to_json_string(), l.clone())).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, _, l)| l).collect()
}

pub fn max_elements(ctx: &Context, subset: &[Partition]) -> Vec<Partition> {
    subset.iter().filter(|l| !subset.iter().any(|m| lt(ctx, l, m))).cloned().collect()
}

/// Pairs `(i, j)` with `parts[i] ⋖ parts[j]`.
pub fn covers(ctx: &Context, parts: &[Partition]) -> Vec<(usize, usize)> {
    let n = parts.len();
    let less: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| lt(ctx, &parts[i], &parts[j])).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetExport {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// Cover relations of `Λ_d` in linear-extension order, labelled by serialization.
pub fn poset_export(ctx: &Context, d: &[u32]) -> PosetExport {
    let parts = linear_extension(ctx, &ctx.partitions(d));
    let nodes: Vec<String> = parts.iter().map(|l| l.to_json_string()).collect();
    let edges = covers(ctx, &parts).into_iter().map(|(i, j)| (nodes[i].clone(), nodes[j].clone())).collect();
    PosetExport { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn summands(l: &Partition) -> u32 {
        l.mults().iter().sum()
    }

    #[test]
    fn a2_order() {
        let ctx = Context::with_defaults(Quiver::linear_a(2)).unwrap();
        let split = Partition(vec![1, 1, 0]);
        let m12 = Partition(vec![0, 0, 1]);
        assert_eq!(hom_vector(&ctx, &split), vec![1, 1, 1]);
        assert_eq!(hom_vector(&ctx, &m12), vec![1, 0, 1]);
        assert!(leq(&ctx, &split, &m12));
        assert!(!leq(&ctx, &m12, &split));
        assert!(leq(&ctx, &m12, &m12));
        let parts = ctx.partitions(&[1, 1]);
        assert_eq!(linear_extension(&ctx, &parts), vec![split.clone(), m12.clone()]);
        assert_eq!(max_elements(&ctx, &parts), vec![m12.clone()]);
        assert_eq!(max_elements(&ctx, std::slice::from_ref(&split)), vec![split.clone()]);
        assert!(max_elements(&ctx, &[]).is_empty());
        assert_eq!(covers(&ctx, &[split, m12]), vec![(0, 1)]);
    }

    #[test]
    fn a3_extremes() {
        let ctx = Context::with_defaults(Quiver::linear_a(3)).unwrap();
        let parts = ctx.partitions(&[1, 1, 1]);
        let ext = linear_extension(&ctx, &parts);
        assert_eq!(ext.len(), 4);
        assert_eq!(ctx.dimvec(&ext[0]), vec![1, 1, 1]);
        assert_eq!(summands(&ext[0]), 3);
        assert_eq!(summands(&ext[3]), 1);
        for (i, a) in ext.iter().enumerate() {
            for b in &ext[..i] {
                assert!(!lt(&ctx, a, b));
            }
        }
    }

    #[test]
    fn partial_order_laws_d4() {
        let q = Quiver::from_labels(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        let ctx = Context::with_defaults(q).unwrap();
        let parts = ctx.partitions(&[1, 1, 1, 2]);
        for a in parts.iter() {
            for b in parts.iter() {
                if a != b {
                    assert!(!(leq(&ctx, a, b) && leq(&ctx, b, a)));
                }
                for c in parts.iter() {
                    if leq(&ctx, a, b) && leq(&ctx, b, c) {
                        assert!(leq(&ctx, a, c));
                    }
                }
            }
        }
        // unique minimum is semisimple, unique maximum the indecomposable
        let ext = linear_extension(&ctx, &parts);
        assert_eq!(summands(&ext[0]), 5);
        assert_eq!(max_elements(&ctx, &parts), vec![ext.last().unwrap().clone()]);
        assert_eq!(summands(ext.last().unwrap()), 1);
    }
}
