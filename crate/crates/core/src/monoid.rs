//! The generic-extension monoid: star products, the word map ℘, fibres and
//! distinguished words.

use std::collections::{BTreeMap, BTreeSet};

use crate::context::{memo, Context};
use crate::error::{Error, Result};
use crate::hall::{gamma_word, general_hall, layer_poly};
use crate::order::max_elements;
use crate::roots::{Partition, Word};

fn unique_max(ctx: &Context, cands: Vec<Partition>, what: &str) -> Result<Partition> {
    let max = max_elements(ctx, &cands);
    match max.as_slice() {
        [one] => Ok(one.clone()),
        [] => Err(Error::verify(format!("{what}: no extension found"))),
        _ => Err(Error::verify(format!("{what}: {} maximal extensions", max.len()))),
    }
}

/// `[S_i] ∗ [M(ν)]`.
pub fn star_simple(ctx: &Context, i: usize, nu: &Partition) -> Result<Partition> {
    ctx.check_partition(nu)?;
    if i >= ctx.quiver().vertex_count() {
        return Err(Error::invalid(format!("vertex {} out of range", i + 1)));
    }
    memo(&ctx.stars, &(i, nu.clone()), || {
        let mut d = ctx.dimvec(nu);
        d[i] += 1;
        let cands = ctx.partitions(&d);
        let hits = crate::parallel::try_map(&cands, |l| -> Result<bool> {
            if ctx.hom().top_multiplicity(ctx.roots(), l, i) == 0 {
                return Ok(false);
            }
            Ok(layer_poly(ctx, l, i, 1)?.contains_key(nu))
        })?;
        let set = cands.iter().zip(hits).filter(|(_, h)| *h).map(|(l, _)| l.clone()).collect();
        unique_max(ctx, set, "generic extension")
    })
}

/// `[M(μ)] ∗ [M(ν)]` via general Hall polynomials.
pub fn star(ctx: &Context, mu: &Partition, nu: &Partition) -> Result<Partition> {
    ctx.check_partition(mu)?;
    ctx.check_partition(nu)?;
    if mu.is_empty() {
        return Ok(nu.clone());
    }
    if nu.is_empty() {
        return Ok(mu.clone());
    }
    let len = ctx.roots().length(mu) + ctx.roots().length(nu);
    if len > ctx.config().max_length {
        return Err(Error::cap(format!("star product limited to total length {}", ctx.config().max_length)));
    }
    let d: Vec<u32> = ctx.dimvec(mu).iter().zip(ctx.dimvec(nu)).map(|(a, b)| a + b).collect();
    let cands = ctx.partitions(&d);
    let hits = crate::parallel::try_map(&cands, |l| Ok::<_, Error>(!general_hall(ctx, l, mu, nu)?.is_zero()))?;
    let set = cands.iter().zip(hits).filter(|(_, h)| *h).map(|(l, _)| l.clone()).collect();
    unique_max(ctx, set, "generic extension")
}

fn check_word(ctx: &Context, w: &Word) -> Result<()> {
    if w.letters().iter().any(|&i| i >= ctx.quiver().vertex_count()) {
        return Err(Error::invalid("word uses a vertex outside the quiver"));
    }
    Ok(())
}

/// `℘(w)`: fold `star_simple` from the right.
pub fn wp(ctx: &Context, w: &Word) -> Result<Partition> {
    check_word(ctx, w)?;
    let mut acc = Partition::zero(ctx.nroots());
    for &i in w.letters().iter().rev() {
        acc = star_simple(ctx, i, &acc)?;
    }
    Ok(acc)
}

fn multinomial(d: &[u32]) -> u128 {
    let mut out = 1u128;
    let mut total = 0u128;
    for &k in d {
        for i in 1..=k as u128 {
            total += 1;
            out = out * total / i;
        }
    }
    out
}

/// Every word with letter content `d`, grouped by its image under ℘.
pub fn fibres_of_content(ctx: &Context, d: &[u32]) -> Result<BTreeMap<Partition, Vec<Word>>> {
    ctx.check_dimvec(d)?;
    let count = multinomial(d);
    if count > ctx.config().word_cap as u128 {
        return Err(Error::cap(format!("{count} words exceed the word cap {}", ctx.config().word_cap)));
    }
    let mut out: BTreeMap<Partition, Vec<Word>> = BTreeMap::new();
    let mut remaining = d.to_vec();
    let mut suffix = Vec::new();
    walk(ctx, &mut remaining, &mut suffix, &Partition::zero(ctx.nroots()), &mut out)?;
    for words in out.values_mut() {
        words.sort();
    }
    Ok(out)
}

fn walk(
    ctx: &Context,
    remaining: &mut Vec<u32>,
    suffix: &mut Vec<usize>,
    state: &Partition,
    out: &mut BTreeMap<Partition, Vec<Word>>,
) -> Result<()> {
    if remaining.iter().all(|&r| r == 0) {
        let letters: Vec<usize> = suffix.iter().rev().copied().collect();
        out.entry(state.clone()).or_default().push(Word::new(letters));
        return Ok(());
    }
    for i in 0..remaining.len() {
        if remaining[i] == 0 {
            continue;
        }
        let next = star_simple(ctx, i, state)?;
        remaining[i] -= 1;
        suffix.push(i);
        walk(ctx, remaining, suffix, &next, out)?;
        suffix.pop();
        remaining[i] += 1;
    }
    Ok(())
}

/// `℘⁻¹(λ)`, sorted.
pub fn fibre(ctx: &Context, lambda: &Partition) -> Result<Vec<Word>> {
    ctx.check_partition(lambda)?;
    let mut all = fibres_of_content(ctx, &ctx.dimvec(lambda))?;
    Ok(all.remove(lambda).unwrap_or_default())
}

/// `γ_w^{℘(w)} = 1`.
pub fn is_distinguished(ctx: &Context, w: &Word) -> Result<bool> {
    let top = wp(ctx, w)?;
    let g = gamma_word(ctx, w)?;
    Ok(g.get(&top).is_some_and(|p| p.is_one()))
}

/// An ordered partition of a set of roots into parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedPartition {
    pub parts: Vec<Vec<usize>>,
}

impl DirectedPartition {
    /// Singleton parts along the Hom-directed order, restricted to `roots`.
    pub fn singletons(ctx: &Context, roots: &[usize]) -> Self {
        let keep: BTreeSet<usize> = roots.iter().copied().collect();
        let parts = ctx.hom().directed_order().iter().filter(|r| keep.contains(r)).map(|&r| vec![r]).collect();
        DirectedPartition { parts }
    }

    /// Checks disjointness and the Ext/Hom vanishing conditions.
    pub fn validate(&self, ctx: &Context) -> Result<()> {
        let hd = ctx.hom();
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            for &r in part {
                if r >= ctx.nroots() {
                    return Err(Error::invalid(format!("root index {r} out of range")));
                }
                if !seen.insert(r) {
                    return Err(Error::invalid(format!("root {r} appears in two parts")));
                }
            }
            for &a in part {
                for &b in part {
                    if hd.ext(a, b) != 0 {
                        return Err(Error::invalid(format!("Ext between roots {a} and {b} inside one part")));
                    }
                }
            }
        }
        for (r, early) in self.parts.iter().enumerate() {
            for late in &self.parts[r + 1..] {
                for &m in early {
                    for &n in late {
                        if hd.ext(m, n) != 0 || hd.hom(n, m) != 0 {
                            return Err(Error::invalid(format!(
                                "roots {m} and {n} violate the ordering between parts"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn covers(&self, roots: &[usize]) -> bool {
        roots.iter().all(|r| self.parts.iter().any(|p| p.contains(r)))
    }
}

fn check_vertex_order(ctx: &Context, order: &[usize]) -> Result<()> {
    let n = ctx.quiver().vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::invalid("vertex order must list every vertex once"));
        }
        pos[v] = k;
    }
    if order.len() != n {
        return Err(Error::invalid("vertex order must list every vertex once"));
    }
    if ctx.quiver().arrows().iter().any(|&(t, h)| pos[t] > pos[h]) {
        return Err(Error::invalid("vertex order must put the tail of every arrow before its head"));
    }
    Ok(())
}

fn word_for(ctx: &Context, lambda: &Partition, order: &DirectedPartition, vorder: &[usize]) -> Word {
    let mut letters = Vec::new();
    for part in &order.parts {
        let piece = lambda.restrict(part);
        let d = ctx.dimvec(&piece);
        for &v in vorder {
            letters.extend(std::iter::repeat_n(v, d[v] as usize));
        }
    }
    Word::new(letters)
}

/// The directed distinguished word of `λ` for a directed partition and a
/// vertex order with arrows pointing forward.
pub fn directed_word(
    ctx: &Context,
    lambda: &Partition,
    order: Option<&DirectedPartition>,
    vorder: Option<&[usize]>,
) -> Result<Word> {
    ctx.check_partition(lambda)?;
    let support = lambda.support();
    let default_order;
    let order = match order {
        Some(o) => {
            o.validate(ctx)?;
            if !o.covers(&support) {
                return Err(Error::invalid("directed partition does not cover the support"));
            }
            o
        }
        None => {
            default_order = DirectedPartition::singletons(ctx, &support);
            &default_order
        }
    };
    let default_vorder;
    let vorder = match vorder {
        Some(v) => {
            check_vertex_order(ctx, v)?;
            v
        }
        None => {
            default_vorder = ctx.quiver().vertex_order_dfb();
            &default_vorder
        }
    };
    let w = word_for(ctx, lambda, order, vorder);
    let got = wp(ctx, &w)?;
    if &got != lambda {
        return Err(Error::verify(format!("directed word {w} maps to {}", ctx.display(&got))));
    }
    if !is_distinguished(ctx, &w)? {
        return Err(Error::verify(format!("directed word {w} is not distinguished")));
    }
    Ok(w)
}

const SUPPORT_CAP: usize = 8;

/// All ordered partitions of `roots` satisfying the directed conditions.
pub fn directed_partitions(ctx: &Context, roots: &[usize]) -> Result<Vec<DirectedPartition>> {
    if roots.len() > SUPPORT_CAP {
        return Err(Error::cap(format!("support of size {} exceeds {SUPPORT_CAP}", roots.len())));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_partitions(ctx, roots, &mut prefix, &mut out);
    Ok(out)
}

fn extend_partitions(ctx: &Context, rest: &[usize], prefix: &mut Vec<Vec<usize>>, out: &mut Vec<DirectedPartition>) {
    if rest.is_empty() {
        out.push(DirectedPartition { parts: prefix.clone() });
        return;
    }
    let hd = ctx.hom();
    let k = rest.len();
    for mask in 1u32..(1 << k) {
        let (part, later): (Vec<usize>, Vec<usize>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &r) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(r);
                } else {
                    b.push(r);
                }
            }
            (a, b)
        };
        let inside = part.iter().all(|&a| part.iter().all(|&b| hd.ext(a, b) == 0));
        let across = part.iter().all(|&m| later.iter().all(|&n| hd.ext(m, n) == 0 && hd.hom(n, m) == 0));
        if inside && across {
            prefix.push(part);
            extend_partitions(ctx, &later, prefix, out);
            prefix.pop();
        }
    }
}

/// Union of directed words over all directed partitions of the support and
/// all admissible vertex orders.
pub fn all_directed_words(ctx: &Context, lambda: &Partition) -> Result<BTreeSet<Word>> {
    ctx.check_partition(lambda)?;
    let support = lambda.support();
    let orders = directed_partitions(ctx, &support)?;
    let vorders = ctx.quiver().all_vertex_orders();
    let mut words = BTreeSet::new();
    for o in &orders {
        for v in &vorders {
            words.insert(word_for(ctx, lambda, o, v));
        }
    }
    for w in &words {
        if &wp(ctx, w)? != lambda || !is_distinguished(ctx, w)? {
            return Err(Error::verify(format!("directed word {w} failed its postcondition")));
        }
    }
    Ok(words)
}
