//! Matrix representations over prime fields.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Matrix, Subspace};
use crate::quiver::Quiver;
use crate::roots::{Partition, RootSystem};

const BGP_DEPTH: usize = 256;

/// A representation: a vector space per vertex and a `d_h × d_t` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    p: u32,
    arrows: Arc<[(usize, usize)]>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    pub fn new(q: &Quiver, p: u32, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        Self::from_parts(q.arrows().into(), p, dims, maps)
    }

    fn from_parts(arrows: Arc<[(usize, usize)]>, p: u32, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() != arrows.len() {
            return Err(Error::invalid("one matrix per arrow is required"));
        }
        for (a, &(t, h)) in arrows.iter().enumerate() {
            let m = &maps[a];
            if m.rows() != dims[h] || m.cols() != dims[t] {
                return Err(Error::invalid(format!(
                    "arrow {} -> {}: matrix is {}x{}, expected {}x{}",
                    t + 1,
                    h + 1,
                    m.rows(),
                    m.cols(),
                    dims[h],
                    dims[t]
                )));
            }
            if m.data_iter().any(|x| x >= p) {
                return Err(Error::invalid("matrix entries must be reduced modulo p"));
            }
        }
        Ok(Rep { p, arrows, dims, maps })
    }

    pub fn zero(q: &Quiver, p: u32) -> Self {
        let arrows: Arc<[(usize, usize)]> = q.arrows().into();
        let maps = arrows.iter().map(|_| Matrix::zeros(0, 0)).collect();
        Rep { p, arrows, dims: vec![0; q.vertex_count()], maps }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimvec(&self) -> Vec<u32> {
        self.dims.iter().map(|&d| d as u32).collect()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Rep { p: self.p, arrows: self.arrows.clone(), dims, maps }
    }
}

pub fn simple_rep(q: &Quiver, i: usize, p: u32) -> Rep {
    let mut dims = vec![0; q.vertex_count()];
    dims[i] = 1;
    let maps = q.arrows().iter().map(|&(t, h)| Matrix::zeros(dims[h], dims[t])).collect();
    Rep { p, arrows: q.arrows().into(), dims, maps }
}

/// `dim Hom(A, B)`: the solution space of `f_h A_ρ = B_ρ f_t` for all arrows.
pub fn hom_dim(a: &Rep, b: &Rep) -> Result<usize> {
    if a.p != b.p {
        return Err(Error::invalid(format!("modulus mismatch: {} vs {}", a.p, b.p)));
    }
    if a.arrows != b.arrows {
        return Err(Error::invalid("representations of different quivers"));
    }
    Ok(hom_dim_unchecked(a, b))
}

fn hom_dim_unchecked(a: &Rep, b: &Rep) -> usize {
    let p = a.p;
    let n = a.dims.len();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + b.dims[i] * a.dims[i];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return 0;
    }
    let eqs: usize = a.arrows.iter().map(|&(t, h)| b.dims[h] * a.dims[t]).sum();
    let mut sys = Matrix::zeros(eqs, unknowns);
    let mut row = 0;
    for (k, &(t, h)) in a.arrows.iter().enumerate() {
        let (am, bm) = (&a.maps[k], &b.maps[k]);
        for r in 0..b.dims[h] {
            for c in 0..a.dims[t] {
                // Σ_s B[r][s] f_t[s][c] − Σ_s f_h[r][s] A[s][c]
                for s in 0..b.dims[t] {
                    let v = bm.get(r, s);
                    if v != 0 {
                        let var = offset[t] + s * a.dims[t] + c;
                        sys.set(row, var, crate::field::add_mod(sys.get(row, var), v, p));
                    }
                }
                for s in 0..a.dims[h] {
                    let v = am.get(s, c);
                    if v != 0 {
                        let var = offset[h] + r * a.dims[h] + s;
                        sys.set(row, var, crate::field::sub_mod(sys.get(row, var), v, p));
                    }
                }
                row += 1;
            }
        }
    }
    unknowns - sys.rank(p)
}

fn reflect_dim(arrows: &[(usize, usize)], x: usize, beta: &[i64]) -> Vec<i64> {
    let mut out = beta.to_vec();
    let nb: i64 = arrows
        .iter()
        .filter_map(|&(t, h)| {
            if t == x {
                Some(beta[h])
            } else if h == x {
                Some(beta[t])
            } else {
                None
            }
        })
        .sum();
    out[x] = nb - beta[x];
    out
}

fn is_sink(arrows: &[(usize, usize)], x: usize) -> bool {
    arrows.iter().all(|&(t, _)| t != x)
}

/// The indecomposable representation with dimension vector `beta`, built by
/// reflection functors along a sink-admissible sequence.
pub fn indecomposable_rep(q: &Quiver, beta: &[u32], p: u32) -> Result<Rep> {
    if beta.len() != q.vertex_count() {
        return Err(Error::invalid("dimension vector length does not match the quiver"));
    }
    if q.euler(beta, beta) != 1 {
        return Err(Error::invalid(format!("{beta:?} is not a positive root")));
    }
    let topo = q.vertex_order_dfb();
    let seq: Vec<usize> = topo.iter().rev().copied().collect();
    let beta: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
    let arrows: Vec<(usize, usize)> = q.arrows().to_vec();
    let (dims, maps) = bgp(&arrows, &seq, 0, &beta, p, 0)?;
    let rep = Rep::new(q, p, dims, maps)?;
    let end = hom_dim_unchecked(&rep, &rep);
    if end != 1 {
        return Err(Error::verify(format!("constructed representation for {beta:?} has End of dimension {end}")));
    }
    Ok(rep)
}

/// Returns dims and maps on the orientation `arrows`.
fn bgp(
    arrows: &[(usize, usize)],
    seq: &[usize],
    step: usize,
    beta: &[i64],
    p: u32,
    depth: usize,
) -> Result<(Vec<usize>, Vec<Matrix>)> {
    if depth > BGP_DEPTH {
        return Err(Error::verify("reflection recursion did not terminate"));
    }
    if beta.iter().any(|&b| b < 0) {
        return Err(Error::verify(format!("reflection produced a non-positive vector {beta:?}")));
    }
    if beta.iter().sum::<i64>() == 1 {
        let dims: Vec<usize> = beta.iter().map(|&b| b as usize).collect();
        let maps = arrows.iter().map(|&(t, h)| Matrix::zeros(dims[h], dims[t])).collect();
        return Ok((dims, maps));
    }
    let x = seq[step % seq.len()];
    if !is_sink(arrows, x) {
        return Err(Error::verify(format!("vertex {} is not a sink at reflection step {step}", x + 1)));
    }
    let gamma = reflect_dim(arrows, x, beta);
    let flipped: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| if h == x { (h, t) } else { (t, h) }).collect();
    let (ndims, mut nmaps) = bgp(&flipped, seq, step + 1, &gamma, p, depth + 1)?;

    // In `flipped`, x is a source. Stack the maps x -> y_k and take the cokernel.
    let incident: Vec<usize> = (0..arrows.len()).filter(|&a| flipped[a].0 == x).collect();
    let dx = ndims[x];
    let mut stacked = Matrix::zeros(0, dx);
    for &a in &incident {
        stacked = stacked.vstack(&nmaps[a]);
    }
    let total = stacked.rows();
    let left_null = stacked.transpose().nullspace(p);
    let c = left_null.len();
    if c as i64 != beta[x] {
        return Err(Error::verify(format!("inverse reflection at {} gave dimension {c}, expected {}", x + 1, beta[x])));
    }
    let pmat = Matrix::from_flat(c, total, left_null.into_iter().flatten().collect());
    let mut dims = ndims;
    dims[x] = c;
    let mut col = 0;
    for &a in &incident {
        let y = flipped[a].1;
        let idx: Vec<usize> = (col..col + dims[y]).collect();
        nmaps[a] = pmat.select_cols(&idx);
        col += dims[y];
    }
    Ok((dims, nmaps))
}

/// `M(λ) = ⊕ λ(β) M(β)` in canonical root order, given `M(β)` for every root.
pub fn build_rep_from(indecomposables: &[Rep], q: &Quiver, lambda: &Partition, p: u32) -> Rep {
    let mut out = Rep::zero(q, p);
    for (idx, &m) in lambda.mults().iter().enumerate() {
        for _ in 0..m {
            out = out.direct_sum(&indecomposables[idx]);
        }
    }
    out
}

/// All indecomposables over `F_p`, indexed like the root system.
pub fn all_indecomposables(q: &Quiver, rs: &RootSystem, p: u32) -> Result<Vec<Rep>> {
    rs.roots().iter().map(|r| indecomposable_rep(q, &r.dim, p)).collect()
}

pub fn build_rep(q: &Quiver, rs: &RootSystem, lambda: &Partition, p: u32) -> Result<Rep> {
    let mut out = Rep::zero(q, p);
    for (idx, &m) in lambda.mults().iter().enumerate() {
        if m > 0 {
            let ind = indecomposable_rep(q, rs.dim(idx), p)?;
            for _ in 0..m {
                out = out.direct_sum(&ind);
            }
        }
    }
    Ok(out)
}

/// Hom and Ext dimensions between indecomposables, plus a Hom-directed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomData {
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl HomData {
    /// Computed at `p = 2` and checked at `p = 3`.
    pub fn compute(q: &Quiver, rs: &RootSystem) -> Result<Self> {
        let at2 = hom_table(&all_indecomposables(q, rs, 2)?);
        let at3 = hom_table(&all_indecomposables(q, rs, 3)?);
        if at2 != at3 {
            return Err(Error::verify("Hom dimensions differ between F_2 and F_3"));
        }
        Self::from_hom(q, rs, at2)
    }

    fn from_hom(q: &Quiver, rs: &RootSystem, hom: Vec<Vec<u32>>) -> Result<Self> {
        let n = rs.len();
        let mut ext = vec![vec![0u32; n]; n];
        for b in 0..n {
            if hom[b][b] != 1 {
                return Err(Error::verify(format!("root {b} is not a brick")));
            }
            for g in 0..n {
                let e = hom[b][g] as i64 - q.euler(rs.dim(b), rs.dim(g));
                if e < 0 {
                    return Err(Error::verify("negative Ext dimension"));
                }
                ext[b][g] = e as u32;
            }
            if ext[b][b] != 0 {
                return Err(Error::verify(format!("root {b} has self-extensions")));
            }
        }
        // edges b -> g mean "b comes before g"
        let mut indeg = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for b in 0..n {
            for g in 0..n {
                if b != g && (hom[b][g] != 0 || ext[g][b] != 0) {
                    succ[b].push(g);
                    indeg[g] += 1;
                }
            }
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &g in &succ[v] {
                indeg[g] -= 1;
                if indeg[g] == 0 {
                    ready.insert(g);
                }
            }
        }
        if order.len() != n {
            return Err(Error::verify("the Hom/Ext relation on roots is cyclic"));
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Ok(HomData { hom, ext, order, position })
    }

    pub fn hom(&self, b: usize, g: usize) -> u32 {
        self.hom[b][g]
    }

    pub fn ext(&self, b: usize, g: usize) -> u32 {
        self.ext[b][g]
    }

    pub fn hom_matrix(&self) -> &[Vec<u32>] {
        &self.hom
    }

    pub fn ext_matrix(&self) -> &[Vec<u32>] {
        &self.ext
    }

    /// Roots listed so that `Hom(M(β), M(γ)) ≠ 0` or `Ext(M(γ), M(β)) ≠ 0` puts β first.
    pub fn directed_order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, root: usize) -> usize {
        self.position[root]
    }

    /// `hv(λ)_β = Σ_γ λ(γ) h(β, γ)`.
    pub fn hom_vector(&self, lambda: &Partition) -> Vec<u32> {
        (0..self.hom.len()).map(|b| lambda.mults().iter().enumerate().map(|(g, &m)| m * self.hom[b][g]).sum()).collect()
    }

    /// `dim Hom(M(λ), S_j)`, the multiplicity of `S_j` in the top of `M(λ)`.
    pub fn top_multiplicity(&self, rs: &RootSystem, lambda: &Partition, j: usize) -> u32 {
        let s = rs.simple(j);
        lambda.mults().iter().enumerate().map(|(g, &m)| m * self.hom[g][s]).sum()
    }

    /// `Σ_{β,γ} λ(β) μ(γ) ext(β, γ)`.
    pub fn ext_pairing(&self, lambda: &Partition, mu: &Partition) -> u64 {
        let mut s = 0u64;
        for (b, &x) in lambda.mults().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (g, &y) in mu.mults().iter().enumerate() {
                s += (x * y * self.ext[b][g]) as u64;
            }
        }
        s
    }

    /// Recover λ from its Hom vector by back-substitution along the directed order.
    pub fn solve(&self, hv: &[u32]) -> Result<Partition> {
        let n = self.hom.len();
        let mut lambda = vec![0u32; n];
        for &b in self.order.iter().rev() {
            let mut v = hv[b] as i64;
            for &g in &self.order[self.position[b] + 1..] {
                v -= lambda[g] as i64 * self.hom[b][g] as i64;
            }
            if v < 0 {
                return Err(Error::verify("inconsistent Hom vector during identification"));
            }
            lambda[b] = v as u32;
        }
        let out = Partition(lambda);
        if self.hom_vector(&out) != hv {
            return Err(Error::verify("Hom vector is not realised by any partition"));
        }
        Ok(out)
    }
}

fn hom_table(ind: &[Rep]) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (0..ind.len()).flat_map(|b| (0..ind.len()).map(move |g| (b, g))).collect();
    let vals = crate::parallel::map(&pairs, |&(b, g)| hom_dim_unchecked(&ind[b], &ind[g]) as u32);
    vals.chunks(ind.len().max(1)).map(|c| c.to_vec()).collect()
}

/// Isoclass of `x` by comparing `dim Hom(M(β), x)` against the Hom matrix.
pub fn identify(x: &Rep, indecomposables: &[Rep], hd: &HomData, rs: &RootSystem) -> Result<Partition> {
    let hv: Vec<u32> = indecomposables.iter().map(|m| hom_dim(m, x).map(|d| d as u32)).collect::<Result<_>>()?;
    let lambda = hd.solve(&hv)?;
    if rs.dimvec(&lambda) != x.dimvec() {
        return Err(Error::verify("identified partition has the wrong dimension vector"));
    }
    Ok(lambda)
}

/// Fast isoclass lookup among the partitions of one dimension vector,
/// using only as many Hom computations as needed to tell them apart.
#[derive(Clone, Debug)]
pub struct Identifier {
    candidates: Vec<Partition>,
    probes: Vec<usize>,
    table: HashMap<Vec<u32>, usize>,
}

impl Identifier {
    pub fn new(hd: &HomData, candidates: Vec<Partition>) -> Self {
        let hvs: Vec<Vec<u32>> = candidates.iter().map(|l| hd.hom_vector(l)).collect();
        let nroots = hd.hom.len();
        let mut probes = Vec::new();
        // greedily add the root that splits the most classes
        let classes = |probes: &[usize]| {
            let mut keys: Vec<Vec<u32>> = hvs.iter().map(|h| probes.iter().map(|&b| h[b]).collect()).collect();
            keys.sort();
            keys.dedup();
            keys.len()
        };
        let mut current = classes(&probes);
        while current < candidates.len() {
            let (best, count) = (0..nroots)
                .filter(|b| !probes.contains(b))
                .map(|b| {
                    let mut trial = probes.clone();
                    trial.push(b);
                    (b, classes(&trial))
                })
                .max_by_key(|&(b, c)| (c, std::cmp::Reverse(b)))
                .expect("distinct partitions have distinct Hom vectors");
            assert!(count > current, "distinct partitions have distinct Hom vectors");
            probes.push(best);
            current = count;
        }
        let table = hvs.iter().enumerate().map(|(i, h)| (probes.iter().map(|&b| h[b]).collect(), i)).collect();
        Identifier { candidates, probes, table }
    }

    pub fn candidates(&self) -> &[Partition] {
        &self.candidates
    }

    /// Index of the isoclass of `x` among the candidates.
    pub fn identify(&self, x: &Rep, indecomposables: &[Rep]) -> Result<usize> {
        if self.candidates.len() == 1 {
            return Ok(0);
        }
        let key: Vec<u32> = self.probes.iter().map(|&b| hom_dim_unchecked(&indecomposables[b], x) as u32).collect();
        self.table.get(&key).copied().ok_or_else(|| Error::verify("representation matches no candidate isoclass"))
    }
}

/// `U_0 = Σ_{h(ρ)=j} im X_ρ`.
pub fn layer_floor(x: &Rep, j: usize) -> Subspace {
    let mut gens = Matrix::zeros(0, x.dims[j]);
    for (a, &(_, h)) in x.arrows.iter().enumerate() {
        if h == j {
            gens = gens.vstack(&x.maps[a].transpose());
        }
    }
    Subspace::span(&gens, x.p)
}

/// The subrepresentation agreeing with `x` away from `j` and equal to the
/// row space of `w` (in RREF) at `j`.
pub fn layer_sub(x: &Rep, j: usize, w: &Matrix, w_pivots: &[usize]) -> Rep {
    let p = x.p;
    let mut dims = x.dims.clone();
    dims[j] = w.rows();
    let wt = w.transpose();
    let maps = x
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(t, h))| {
            let m = &x.maps[a];
            if h == j && t == j {
                unreachable!("loops are rejected")
            } else if h == j {
                m.select_rows(w_pivots)
            } else if t == j {
                m.mul(&wt, p)
            } else {
                m.clone()
            }
        })
        .collect();
    Rep { p, arrows: x.arrows.clone(), dims, maps }
}

/// Visit every submodule `U ⊆ x` with `x/U ≅ e·S_j`. Returns the number visited.
pub fn for_each_layer_sub<F: FnMut(&Rep)>(x: &Rep, j: usize, e: usize, mut f: F) -> u128 {
    let dj = x.dims[j];
    if e > dj {
        return 0;
    }
    let floor = layer_floor(x, j);
    let comp = floor.non_pivots();
    let m = comp.len();
    if e > m {
        return 0;
    }
    let k = m - e;
    crate::field::for_each_subspace(m, k, x.p, |t| {
        let mut gens = floor.basis().clone();
        let mut lifted = Matrix::zeros(k, dj);
        for r in 0..k {
            for (i, &c) in comp.iter().enumerate() {
                lifted.set(r, c, t.get(r, i));
            }
        }
        gens = gens.vstack(&lifted);
        let pivots = gens.rref(x.p);
        f(&layer_sub(x, j, &gens, &pivots));
    })
}

/// All submodules `U ⊆ x` with `x/U ≅ e·S_j`.
pub fn submodules_with_layer(x: &Rep, j: usize, e: usize) -> Vec<Rep> {
    let mut out = Vec::new();
    for_each_layer_sub(x, j, e, |u| out.push(u.clone()));
    out
}

/// The subrepresentation `U` and quotient `x/U` for a subspace per vertex
/// (each an RREF basis) closed under the arrow maps.
pub fn sub_and_quotient(x: &Rep, subs: &[Subspace]) -> (Rep, Rep) {
    let p = x.p;
    let n = x.dims.len();
    let comps: Vec<Vec<usize>> = subs.iter().map(|s| s.non_pivots()).collect();
    let sub_dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
    let quo_dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let mut sub_maps = Vec::with_capacity(x.maps.len());
    let mut quo_maps = Vec::with_capacity(x.maps.len());
    for (a, &(t, h)) in x.arrows.iter().enumerate() {
        let m = &x.maps[a];
        let img = m.mul(&subs[t].basis().transpose(), p);
        sub_maps.push(img.select_rows(subs[h].pivots()));
        let mut qm = Matrix::zeros(quo_dims[h], quo_dims[t]);
        for (ci, &c) in comps[t].iter().enumerate() {
            let col: Vec<u32> = (0..x.dims[h]).map(|r| m.get(r, c)).collect();
            let red = subs[h].reduce(&col, p);
            for (ri, &r) in comps[h].iter().enumerate() {
                qm.set(ri, ci, red[r]);
            }
        }
        quo_maps.push(qm);
    }
    debug_assert_eq!(sub_dims.len(), n);
    (
        Rep { p, arrows: x.arrows.clone(), dims: sub_dims, maps: sub_maps },
        Rep { p, arrows: x.arrows.clone(), dims: quo_dims, maps: quo_maps },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gaussian_binomial_count;

    fn a2() -> (Quiver, RootSystem) {
        let q = Quiver::linear_a(2);
        let rs = RootSystem::new(&q);
        (q, rs)
    }

    fn d4() -> Quiver {
        Quiver::from_labels(4, &[(1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn simple_reps() {
        let q = Quiver::linear_a(2);
        assert_eq!(simple_rep(&q, 0, 2).dims(), &[1, 0]);
        assert_eq!(simple_rep(&q, 1, 3).dims(), &[0, 1]);
        assert_eq!(simple_rep(&d4(), 3, 2).dims(), &[0, 0, 0, 1]);
    }

    #[test]
    fn indecomposables_are_bricks() {
        let (q, _) = a2();
        let m = indecomposable_rep(&q, &[1, 1], 2).unwrap();
        assert_eq!(m.maps()[0].get(0, 0), 1);
        assert_eq!(indecomposable_rep(&q, &[1, 0], 2).unwrap(), simple_rep(&q, 0, 2));

        let q = d4();
        let m = indecomposable_rep(&q, &[1, 1, 1, 2], 5).unwrap();
        let cols: Vec<Vec<u32>> = m.maps().iter().map(|a| vec![a.get(0, 0), a.get(1, 0)]).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let pair = Matrix::from_flat(2, 2, [cols[i].clone(), cols[j].clone()].concat());
                assert_eq!(pair.rank(5), 2);
            }
        }
        let rs = RootSystem::new(&q);
        for p in [2, 3, 5] {
            for r in rs.roots() {
                let x = indecomposable_rep(&q, &r.dim, p).unwrap();
                assert_eq!(x.dimvec(), r.dim);
                assert_eq!(hom_dim(&x, &x).unwrap(), 1);
            }
        }
    }

    #[test]
    fn e_type_indecomposables() {
        let q = Quiver::from_labels(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (6, 3)]).unwrap();
        let rs = RootSystem::new(&q);
        assert_eq!(rs.len(), 36);
        assert!(HomData::compute(&q, &rs).is_ok());
    }

    #[test]
    fn build_and_hom() {
        let (q, rs) = a2();
        let s1 = rs.index_of(&[1, 0]).unwrap();
        let m12 = rs.index_of(&[1, 1]).unwrap();
        let two_s1 = Partition::single(3, s1).direct_sum(&Partition::single(3, s1));
        assert_eq!(build_rep(&q, &rs, &two_s1, 2).unwrap().dims(), &[2, 0]);
        let l = Partition::single(3, m12).direct_sum(&Partition::single(3, s1));
        let x = build_rep(&q, &rs, &l, 3).unwrap();
        assert_eq!(x.dims(), &[2, 1]);
        assert_eq!(x.maps()[0].rank(3), 1);
        assert_eq!(build_rep(&q, &rs, &Partition::zero(3), 2).unwrap().total_dim(), 0);

        let s1r = simple_rep(&q, 0, 2);
        let m = indecomposable_rep(&q, &[1, 1], 2).unwrap();
        assert_eq!(hom_dim(&s1r, &m).unwrap(), 0);
        assert_eq!(hom_dim(&m, &s1r).unwrap(), 1);
        assert!(hom_dim(&m, &simple_rep(&q, 0, 3)).is_err());
    }

    #[test]
    fn a2_hom_data() {
        let (q, rs) = a2();
        let hd = HomData::compute(&q, &rs).unwrap();
        let (s2, s1, m) = (0, 1, 2);
        assert_eq!(rs.dim(s2), &[0, 1]);
        assert_eq!(hd.hom(s1, m), 0);
        assert_eq!(hd.hom(s2, m), 1);
        assert_eq!(hd.hom(m, s1), 1);
        for b in 0..3 {
            assert_eq!(hd.hom(b, b), 1);
            assert_eq!(hd.ext(b, b), 0);
        }
        assert_eq!(hd.ext(s1, s2), 1);
        assert_eq!(hd.ext(s2, s1), 0);
    }

    #[test]
    fn field_independence() {
        for q in [Quiver::linear_a(3), d4()] {
            let rs = RootSystem::new(&q);
            let base = hom_table(&all_indecomposables(&q, &rs, 2).unwrap());
            assert_eq!(base, hom_table(&all_indecomposables(&q, &rs, 5).unwrap()));
        }
    }

    #[test]
    fn identify_round_trip() {
        for q in [Quiver::linear_a(3), d4()] {
            let rs = RootSystem::new(&q);
            let hd = HomData::compute(&q, &rs).unwrap();
            let ind = all_indecomposables(&q, &rs, 3).unwrap();
            let n = q.vertex_count() as u32;
            // every dimension vector with total ≤ 4
            let mut dims = vec![vec![]];
            for _ in 0..n {
                dims = dims
                    .into_iter()
                    .flat_map(|d: Vec<u32>| (0..=2).map(move |k| [d.clone(), vec![k]].concat()))
                    .collect();
            }
            for d in dims.into_iter().filter(|d| d.iter().sum::<u32>() <= 4) {
                let parts = rs.partitions(&d);
                let idf = Identifier::new(&hd, parts.clone());
                for (i, l) in parts.iter().enumerate() {
                    let x = build_rep_from(&ind, &q, l, 3);
                    assert_eq!(&identify(&x, &ind, &hd, &rs).unwrap(), l);
                    assert_eq!(idf.identify(&x, &ind).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn identify_a2_by_hand() {
        let (q, rs) = a2();
        let hd = HomData::compute(&q, &rs).unwrap();
        let ind = all_indecomposables(&q, &rs, 2).unwrap();
        let split = Rep::new(&q, 2, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        let l = identify(&split, &ind, &hd, &rs).unwrap();
        assert_eq!(l, Partition(vec![1, 1, 0]));
        assert_eq!(hd.hom_vector(&l), vec![1, 1, 1]);
        let nonsplit = Rep::new(&q, 2, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        let l = identify(&nonsplit, &ind, &hd, &rs).unwrap();
        assert_eq!(l, Partition(vec![0, 0, 1]));
        assert_eq!(hd.hom_vector(&l), vec![1, 0, 1]);
    }

    #[test]
    fn layer_submodules() {
        let (q, rs) = a2();
        let ind = all_indecomposables(&q, &rs, 2).unwrap();
        let two_s1 = build_rep_from(&ind, &q, &Partition(vec![0, 2, 0]), 2);
        let subs = submodules_with_layer(&two_s1, 0, 1);
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|u| u.dims() == [1, 0]));

        let m = build_rep_from(&ind, &q, &Partition(vec![0, 0, 1]), 2);
        let subs = submodules_with_layer(&m, 0, 1);
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].dims(), &[0, 1]);
        assert!(submodules_with_layer(&m, 1, 1).is_empty());
    }

    #[test]
    fn layer_counts_are_gaussian() {
        let q = d4();
        let rs = RootSystem::new(&q);
        let hd = HomData::compute(&q, &rs).unwrap();
        for p in [2, 3] {
            let ind = all_indecomposables(&q, &rs, p).unwrap();
            for l in rs.partitions(&[1, 1, 2, 3]) {
                let x = build_rep_from(&ind, &q, &l, p);
                for j in 0..4 {
                    let m = hd.top_multiplicity(&rs, &l, j) as usize;
                    assert_eq!(m, x.dims()[j] - layer_floor(&x, j).dim());
                    for e in 0..=m {
                        let count = for_each_layer_sub(&x, j, e, |_| {});
                        assert_eq!(count, gaussian_binomial_count(m, e, p));
                    }
                }
            }
        }
    }

    #[test]
    fn sub_and_quotient_dims() {
        let (q, rs) = a2();
        let ind = all_indecomposables(&q, &rs, 2).unwrap();
        let hd = HomData::compute(&q, &rs).unwrap();
        let m = build_rep_from(&ind, &q, &Partition(vec![0, 0, 1]), 2);
        let subs = [Subspace::zero(1), Subspace::full(1)];
        let (u, quo) = sub_and_quotient(&m, &subs);
        assert_eq!(identify(&u, &ind, &hd, &rs).unwrap(), Partition(vec![1, 0, 0]));
        assert_eq!(identify(&quo, &ind, &hd, &rs).unwrap(), Partition(vec![0, 1, 0]));
    }
}
