//! Hall polynomials by counting over prime fields and interpolating.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::context::{memo, Census, Context, LayerKey, PolyMap};
use crate::error::{Error, Result};
use crate::field::{for_each_subspace, gaussian_binomial_count, Matrix, Subspace};
use crate::poly::{gaussian_binomial, interpolate, quantum_factorial, IntPoly};
use crate::rep::{build_rep_from, for_each_layer_sub, sub_and_quotient, Rep};
use crate::roots::{Partition, Word};

pub use crate::poly::{quantum_factorial as qfactorial, quantum_integer};

fn layer_target(ctx: &Context, lambda: &Partition, j: usize, e: u32) -> Result<Vec<u32>> {
    ctx.check_partition(lambda)?;
    if j >= ctx.quiver().vertex_count() {
        return Err(Error::invalid(format!("vertex {} out of range", j + 1)));
    }
    let mut d = ctx.dimvec(lambda);
    if e > d[j] {
        return Err(Error::invalid(format!("layer multiplicity {e} exceeds dimension {} at vertex {}", d[j], j + 1)));
    }
    d[j] -= e;
    Ok(d)
}

/// Number of `U ⊆ M(λ)` over `F_p` with `M(λ)/U ≅ e·S_j`, tallied by isoclass of `U`.
pub fn count_layer(ctx: &Context, lambda: &Partition, j: usize, e: u32, p: u32) -> Result<BTreeMap<Partition, u128>> {
    let target = layer_target(ctx, lambda, j, e)?;
    let ind = ctx.indecomposables(p)?;
    let x = build_rep_from(&ind, ctx.quiver(), lambda, p);
    let idf = ctx.identifier(&target);
    let mut tally = vec![0u128; idf.candidates().len()];
    let mut err = None;
    for_each_layer_sub(&x, j, e as usize, |u| {
        if err.is_some() {
            return;
        }
        match idf.identify(u, &ind) {
            Ok(i) => tally[i] += 1,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(idf.candidates().iter().zip(tally).filter(|(_, c)| *c > 0).map(|(l, c)| (l.clone(), c)).collect())
}

/// Fit one polynomial per key through counts at `primes[..n-1]` and check it at `primes[n-1]`.
fn fit<K: Ord + Clone + std::fmt::Debug>(primes: &[u32], counts: &[BTreeMap<K, u128>]) -> Result<BTreeMap<K, IntPoly>> {
    let keys: std::collections::BTreeSet<&K> = counts.iter().flat_map(|c| c.keys()).collect();
    let (fit_primes, held) = primes.split_at(primes.len() - 1);
    let mut out = BTreeMap::new();
    for k in keys {
        let val = |i: usize| *counts[i].get(k).unwrap_or(&0) as i128;
        let pts: Vec<(i64, i128)> = fit_primes.iter().enumerate().map(|(i, &p)| (p as i64, val(i))).collect();
        let poly = interpolate(&pts)
            .ok_or_else(|| Error::verify(format!("counts for {k:?} are not interpolated by an integer polynomial")))?;
        let check = val(primes.len() - 1);
        if poly.eval(held[0] as i128) != check {
            return Err(Error::verify(format!(
                "interpolant for {k:?} gives {} at held-out prime {} but the count is {check}",
                poly.eval(held[0] as i128),
                held[0]
            )));
        }
        if !poly.is_zero() {
            out.insert(k.clone(), poly);
        }
    }
    Ok(out)
}

/// `ν ↦ F^{M(λ)}_{e S_j, M(ν)}(q)`.
pub fn layer_poly(ctx: &Context, lambda: &Partition, j: usize, e: u32) -> Result<Arc<PolyMap>> {
    let key = LayerKey { lambda: lambda.clone(), vertex: j, e };
    if let Some(v) = ctx.layers.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute_layer_poly(ctx, lambda, j, e)?);
    Ok(ctx.layers.write().unwrap().entry(key).or_insert(v).clone())
}

pub(crate) fn compute_layer_poly(ctx: &Context, lambda: &Partition, j: usize, e: u32) -> Result<PolyMap> {
    let target = layer_target(ctx, lambda, j, e)?;
    if e == 0 {
        return Ok([(lambda.clone(), IntPoly::one())].into());
    }
    let m = ctx.hom().top_multiplicity(ctx.roots(), lambda, j);
    if e > m {
        return Ok(PolyMap::new());
    }
    let cands = ctx.partitions(&target);
    if cands.len() == 1 {
        return Ok([(cands[0].clone(), gaussian_binomial(m, e))].into());
    }
    let degree = (e * (m - e)) as usize;
    let primes = ctx.take_primes(degree + 2)?;
    let work: u128 = primes.iter().map(|&p| gaussian_binomial_count(m as usize, e as usize, p)).sum();
    if e >= 2 && work > ctx.config().enum_budget {
        return layer_by_chains(ctx, lambda, j, e);
    }
    let counts = crate::parallel::try_map(primes, |&p| count_layer(ctx, lambda, j, e, p))?;
    for (c, &p) in counts.iter().zip(primes) {
        let total: u128 = c.values().sum();
        if total != gaussian_binomial_count(m as usize, e as usize, p) {
            return Err(Error::verify("layer census does not add up to the Gaussian binomial"));
        }
    }
    fit(primes, &counts)
}

/// Chains of `e` single-step layers, divided by the number of complete flags `[[e]]!`.
fn layer_by_chains(ctx: &Context, lambda: &Partition, j: usize, e: u32) -> Result<PolyMap> {
    let mut current: PolyMap = [(lambda.clone(), IntPoly::one())].into();
    for _ in 0..e {
        let mut next = PolyMap::new();
        for (k, c) in &current {
            for (nu, f) in layer_poly(ctx, k, j, 1)?.iter() {
                let slot = next.entry(nu.clone()).or_insert_with(IntPoly::zero);
                *slot = &*slot + &(c * f);
            }
        }
        current = next;
    }
    let fac = quantum_factorial(e);
    current
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            c.div_exact(&fac).map(|q| (k, q)).ok_or_else(|| Error::verify("flag count is not divisible by [[e]]!"))
        })
        .collect()
}

/// `λ ↦ γ_w^λ(q)`, built right to left over the tight form of `w`.
pub fn gamma_word(ctx: &Context, w: &Word) -> Result<Arc<PolyMap>> {
    let n = ctx.quiver().vertex_count();
    if w.letters().iter().any(|&i| i >= n) {
        return Err(Error::invalid("word uses a vertex outside the quiver"));
    }
    let tf = w.tight_form();
    memo(&ctx.gammas, &tf, || {
        let runs = tf.runs();
        let nroots = ctx.nroots();
        let Some(&(jt, et)) = runs.last() else {
            return Ok(Arc::new([(Partition::zero(nroots), IntPoly::one())].into()));
        };
        let mut current: PolyMap = [(ctx.roots().semisimple_layer(jt, et), IntPoly::one())].into();
        let mut dim = vec![0u32; n];
        dim[jt] = et;
        for &(j, e) in runs[..runs.len() - 1].iter().rev() {
            dim[j] += e;
            let cands = ctx.partitions(&dim);
            let vals = crate::parallel::try_map(&cands, |lp| -> Result<IntPoly> {
                let layer = layer_poly(ctx, lp, j, e)?;
                let mut acc = IntPoly::zero();
                for (nu, f) in layer.iter() {
                    if let Some(g) = current.get(nu) {
                        acc = &acc + &(f * g);
                    }
                }
                Ok(acc)
            })?;
            current = cands.iter().cloned().zip(vals).filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(Arc::new(current))
    })
}

/// `φ_w^λ = γ_w^λ · Π [[e_r]]!`.
pub fn phi_word(ctx: &Context, w: &Word) -> Result<PolyMap> {
    let scale = w.tight_form().runs().iter().fold(IntPoly::one(), |acc, &(_, e)| &acc * &quantum_factorial(e));
    Ok(gamma_word(ctx, w)?.iter().map(|(k, g)| (k.clone(), g * &scale)).collect())
}

/// `φ^λ_{μν}(q)`: submodules `U ≅ M(ν)` of `M(λ)` with `M(λ)/U ≅ M(μ)`.
pub fn general_hall(ctx: &Context, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<IntPoly> {
    for x in [lambda, mu, nu] {
        ctx.check_partition(x)?;
    }
    let (dl, dm, dn) = (ctx.dimvec(lambda), ctx.dimvec(mu), ctx.dimvec(nu));
    if dl.iter().zip(dm.iter().zip(&dn)).any(|(a, (b, c))| *a != b + c) {
        return Ok(IntPoly::zero());
    }
    let census = hall_census(ctx, lambda, &dn)?;
    Ok(census.get(&(mu.clone(), nu.clone())).cloned().unwrap_or_default())
}

/// All `φ^λ_{μν}` with `dim ν = l`, keyed by `(μ, ν)`.
pub fn hall_census(ctx: &Context, lambda: &Partition, l: &[u32]) -> Result<Arc<Census>> {
    ctx.check_partition(lambda)?;
    ctx.check_dimvec(l)?;
    let len = ctx.roots().length(lambda);
    if len > ctx.config().max_length {
        return Err(Error::cap(format!(
            "general Hall polynomials are limited to length {} (got {len})",
            ctx.config().max_length
        )));
    }
    let d = ctx.dimvec(lambda);
    if l.iter().zip(&d).any(|(a, b)| a > b) {
        return Ok(Arc::new(Census::new()));
    }
    memo(&ctx.census, &(lambda.clone(), l.to_vec()), || {
        let degree: u32 = l.iter().zip(&d).map(|(&a, &b)| a * (b - a)).sum();
        let primes = ctx.take_primes(degree as usize + 2)?;
        let counts = crate::parallel::try_map(primes, |&p| count_census(ctx, lambda, l, p))?;
        Ok(Arc::new(fit(primes, &counts)?))
    })
}

struct CensusSearch<'a> {
    x: &'a Rep,
    ind: &'a [Rep],
    order: Vec<usize>,
    l: &'a [u32],
    sub_id: Arc<crate::rep::Identifier>,
    quo_id: Arc<crate::rep::Identifier>,
    shortcut: bool,
    subs: Vec<Option<Subspace>>,
    tally: BTreeMap<(usize, usize), u128>,
    err: Option<Error>,
}

impl CensusSearch<'_> {
    /// Vectors at `t` whose images lie in the already chosen subspaces.
    fn allowed(&self, t: usize) -> Vec<Vec<u32>> {
        let p = self.x.prime();
        let dt = self.x.dims()[t];
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (a, &(ta, h)) in self.x.arrows().iter().enumerate() {
            if ta != t {
                continue;
            }
            let uh = self.subs[h].as_ref().expect("heads are chosen before tails");
            let comp = uh.non_pivots();
            let m = &self.x.maps()[a];
            let cols: Vec<Vec<u32>> = (0..dt)
                .map(|c| {
                    let v: Vec<u32> = (0..m.rows()).map(|r| m.get(r, c)).collect();
                    let red = uh.reduce(&v, p);
                    comp.iter().map(|&i| red[i]).collect()
                })
                .collect();
            for i in 0..comp.len() {
                rows.push(cols.iter().map(|c| c[i]).collect());
            }
        }
        if rows.is_empty() {
            return (0..dt)
                .map(|i| {
                    let mut v = vec![0; dt];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        Matrix::from_flat(rows.len(), dt, rows.concat()).nullspace(p)
    }

    fn search(&mut self, step: usize) {
        if self.err.is_some() {
            return;
        }
        let p = self.x.prime();
        if step == self.order.len() {
            let subs: Vec<Subspace> = self.subs.iter().map(|s| s.clone().unwrap()).collect();
            let (u, quo) = sub_and_quotient(self.x, &subs);
            let r = self.sub_id.identify(&u, self.ind).and_then(|a| Ok((self.quo_id.identify(&quo, self.ind)?, a)));
            match r {
                Ok(k) => *self.tally.entry(k).or_insert(0) += 1,
                Err(e) => self.err = Some(e),
            }
            return;
        }
        let t = self.order[step];
        let kbasis = self.allowed(t);
        let k = kbasis.len();
        let want = self.l[t] as usize;
        if want > k {
            return;
        }
        // the remaining vertices only admit the zero subspace
        if self.shortcut && self.order[step + 1..].iter().all(|&s| self.l[s] == 0) {
            *self.tally.entry((0, 0)).or_insert(0) += gaussian_binomial_count(k, want, p);
            return;
        }
        let dt = self.x.dims()[t];
        let kmat = Matrix::from_flat(k, dt, kbasis.concat());
        for_each_subspace(k, want, p, |c| {
            if self.err.is_none() {
                self.subs[t] = Some(Subspace::span(&c.mul(&kmat, p), p));
                self.search(step + 1);
            }
        });
        self.subs[t] = None;
    }
}

/// Counts of `U ⊆ M(λ)` with `dim U = l` over `F_p`, keyed by `(quotient, submodule)`.
pub fn count_census(
    ctx: &Context,
    lambda: &Partition,
    l: &[u32],
    p: u32,
) -> Result<BTreeMap<(Partition, Partition), u128>> {
    let ind = ctx.indecomposables(p)?;
    let x = build_rep_from(&ind, ctx.quiver(), lambda, p);
    let d = ctx.dimvec(lambda);
    let rest: Vec<u32> = d.iter().zip(l).map(|(a, b)| a - b).collect();
    let sub_id = ctx.identifier(l);
    let quo_id = ctx.identifier(&rest);
    let shortcut = sub_id.candidates().len() == 1 && quo_id.candidates().len() == 1;
    let order: Vec<usize> = ctx.quiver().vertex_order_dfb().into_iter().rev().collect();
    let mut s = CensusSearch {
        x: &x,
        ind: &ind,
        order,
        l,
        sub_id: sub_id.clone(),
        quo_id: quo_id.clone(),
        shortcut,
        subs: vec![None; d.len()],
        tally: BTreeMap::new(),
        err: None,
    };
    s.search(0);
    if let Some(e) = s.err {
        return Err(e);
    }
    Ok(s.tally
        .into_iter()
        .map(|((qi, si), c)| ((quo_id.candidates()[qi].clone(), sub_id.candidates()[si].clone()), c))
        .collect())
}
