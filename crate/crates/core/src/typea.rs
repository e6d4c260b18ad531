//! Combinatorics of the linear quiver `1 → 2 → ⋯ → n`, where `M_ij` has top
//! `S_i` and dimension vector `e_i + ⋯ + e_j`.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::roots::{Partition, Word};

fn check(ctx: &Context) -> Result<usize> {
    if !ctx.quiver().is_linear_a() {
        return Err(Error::invalid("the type A calculus needs the linear quiver 1 -> 2 -> ... -> n"));
    }
    Ok(ctx.quiver().vertex_count())
}

/// Root index of `M_ij` (0-based, `i ≤ j`).
fn idx(ctx: &Context, n: usize, i: usize, j: usize) -> usize {
    let d: Vec<u32> = (0..n).map(|v| u32::from(i <= v && v <= j)).collect();
    ctx.roots().index_of(&d).expect("interval dimension vectors are roots")
}

fn entry(ctx: &Context, n: usize, l: &Partition, i: usize, j: usize) -> u32 {
    l.mult(idx(ctx, n, i, j))
}

/// `σ_i λ`, so that `S_i ∗ M(λ) ≅ M(σ_i λ)`.
pub fn sigma(ctx: &Context, i: usize, lambda: &Partition) -> Result<Partition> {
    let n = check(ctx)?;
    ctx.check_partition(lambda)?;
    if i >= n {
        return Err(Error::invalid(format!("vertex {} out of range", i + 1)));
    }
    let mut out = lambda.clone();
    let j = if i + 1 < n { (i + 1..n).rev().find(|&j| entry(ctx, n, lambda, i + 1, j) != 0) } else { None };
    match j {
        None => out.0[idx(ctx, n, i, i)] += 1,
        Some(j) => {
            out.0[idx(ctx, n, i, j)] += 1;
            out.0[idx(ctx, n, i + 1, j)] -= 1;
        }
    }
    Ok(out)
}

pub fn wp_type_a(ctx: &Context, w: &Word) -> Result<Partition> {
    check(ctx)?;
    let mut acc = Partition::zero(ctx.nroots());
    for &i in w.letters().iter().rev() {
        acc = sigma(ctx, i, &acc)?;
    }
    Ok(acc)
}

/// The run-by-run criterion for `γ_w^{℘(w)} = 1`.
pub fn is_distinguished_type_a(ctx: &Context, w: &Word) -> Result<bool> {
    let n = check(ctx)?;
    let runs = w.tight_form().runs().to_vec();
    // suffix partitions λ^{(r)}, built from the right
    let mut lam = Partition::zero(ctx.nroots());
    for &(j, e) in runs.iter().rev() {
        let row: Vec<u32> = (j..n).map(|b| entry(ctx, n, &lam, j, b)).collect();
        if row.iter().any(|&x| x != 0) {
            let l = j + row.iter().rposition(|&x| x != 0).unwrap();
            let room: u32 = if j + 1 < n { (l + 1..n).map(|a| entry(ctx, n, &lam, j + 1, a)).sum() } else { 0 };
            if e > room {
                return Ok(false);
            }
        }
        for _ in 0..e {
            lam = sigma(ctx, j, &lam)?;
        }
    }
    Ok(true)
}
