//! The twisted Hall algebra over `Z[v, v⁻¹]`: u- and ũ-bases, monomials,
//! transition matrices and the canonical basis.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::hall::{gamma_word, hall_census, layer_poly};
use crate::monoid::{directed_word, fibre, is_distinguished};
use crate::order::{leq, linear_extension};
use crate::poly::{balanced_quantum_factorial, LaurentPoly};
use crate::roots::{delta, epsilon, Partition, Word};

/// `−ℓ(λ) + Σ λ(β)λ(γ) h(β,γ)`, so that `ũ_λ = v^{t(λ)} u_λ`.
pub fn tilde_exponent(ctx: &Context, lambda: &Partition) -> i64 {
    let hd = ctx.hom();
    let mut s = 0i64;
    for (b, &x) in lambda.mults().iter().enumerate() {
        for (g, &y) in lambda.mults().iter().enumerate() {
            s += (x * y * hd.hom(b, g)) as i64;
        }
    }
    s - ctx.roots().length(lambda) as i64
}

/// A finite combination `Σ c_λ u_λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UPlusElement {
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl UPlusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `u_λ`.
    pub fn basis(lambda: Partition) -> Self {
        UPlusElement { terms: [(lambda, LaurentPoly::one())].into() }
    }

    pub fn one(nroots: usize) -> Self {
        Self::basis(Partition::zero(nroots))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, LaurentPoly)>) -> Self {
        let mut out = Self::zero();
        for (l, c) in terms {
            out.add_term(l, &c);
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, x)| (l.clone(), x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    /// The common dimension vector, or `None` if empty or inhomogeneous.
    pub fn dimvec(&self, ctx: &Context) -> Option<Vec<u32>> {
        let mut dims = self.terms.keys().map(|l| ctx.dimvec(l));
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    /// Coefficients in the ũ-basis.
    pub fn tilde_coeffs(&self, ctx: &Context) -> BTreeMap<Partition, LaurentPoly> {
        self.terms.iter().map(|(l, c)| (l.clone(), c.shift(-(tilde_exponent(ctx, l) as i32)))).collect()
    }

    /// `Σ c_λ ũ_λ`.
    pub fn from_tilde(ctx: &Context, coeffs: &BTreeMap<Partition, LaurentPoly>) -> Self {
        Self::from_terms(coeffs.iter().map(|(l, c)| (l.clone(), c.shift(tilde_exponent(ctx, l) as i32))))
    }

    /// `[{partition, laurent}]` in the u-basis, or the ũ-basis when `tilde`.
    pub fn to_json(&self, ctx: &Context, tilde: bool) -> Value {
        let terms = if tilde { self.tilde_coeffs(ctx) } else { self.terms.clone() };
        Value::Array(terms.iter().map(|(l, c)| json!({"partition": l.to_json_map(), "laurent": c})).collect())
    }

    /// Human form in the ũ-basis, e.g. `ũ[(1,1)] + v^-1 ũ[(0,1) + (1,0)]`.
    pub fn display_tilde(&self, ctx: &Context) -> String {
        display_terms(ctx, &self.tilde_coeffs(ctx), "ũ")
    }

    pub fn display_u(&self, ctx: &Context) -> String {
        display_terms(ctx, &self.terms, "u")
    }
}

fn display_terms(ctx: &Context, terms: &BTreeMap<Partition, LaurentPoly>, sym: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .rev()
        .map(|(l, c)| {
            let label = format!("{sym}[{}]", ctx.display(l));
            if c.is_one() {
                label
            } else {
                format!("({c}) {label}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `u_μ ⋆ u_ν = v^{⟨μ,ν⟩} Σ_λ φ^λ_{μν}(v²) u_λ`.
pub fn star_basis(ctx: &Context, mu: &Partition, nu: &Partition) -> Result<UPlusElement> {
    let (dm, dn) = (ctx.dimvec(mu), ctx.dimvec(nu));
    let twist = ctx.quiver().euler(&dm, &dn) as i32;
    let d: Vec<u32> = dm.iter().zip(&dn).map(|(a, b)| a + b).collect();
    let mut out = UPlusElement::zero();
    if mu.is_empty() || nu.is_empty() {
        return Ok(UPlusElement::basis(mu.direct_sum(nu)));
    }
    let layer = ctx.roots().as_layer(mu);
    for l in ctx.partitions(&d).iter() {
        let phi = match layer {
            Some((j, e)) => layer_poly(ctx, l, j, e)?.get(nu).cloned(),
            None => hall_census(ctx, l, &dn)?.get(&(mu.clone(), nu.clone())).cloned(),
        };
        if let Some(phi) = phi {
            out.add_term(l.clone(), &phi.at_v_squared().shift(twist));
        }
    }
    Ok(out)
}

pub fn star_multiply(ctx: &Context, a: &UPlusElement, b: &UPlusElement) -> Result<UPlusElement> {
    let mut out = UPlusElement::zero();
    for (mu, x) in a.terms() {
        for (nu, y) in b.terms() {
            let prod = star_basis(ctx, mu, nu)?;
            out = out.add(&prod.scale(&(x * y)));
        }
    }
    Ok(out)
}

/// `m^{(w)} = v^{δ+ε} Σ_λ γ_w^λ(v²) u_λ`.
pub fn monomial_from_gamma(ctx: &Context, w: &Word) -> Result<UPlusElement> {
    let shift = (delta(w) + epsilon(ctx.quiver(), w)) as i32;
    let g = gamma_word(ctx, w)?;
    Ok(UPlusElement::from_terms(g.iter().map(|(l, c)| (l.clone(), c.at_v_squared().shift(shift)))))
}

/// `E_{j_1}^{(e_1)} ⋯ E_{j_t}^{(e_t)}` as iterated products of generators
/// divided by `Π [e_r]!`.
pub fn monomial_from_products(ctx: &Context, w: &Word) -> Result<UPlusElement> {
    let nroots = ctx.nroots();
    let mut acc = UPlusElement::one(nroots);
    for &i in w.letters().iter().rev() {
        let gen = UPlusElement::basis(Partition::single(nroots, ctx.roots().simple(i)));
        acc = star_multiply(ctx, &gen, &acc)?;
    }
    let denom = w.tight_form().runs().iter().fold(LaurentPoly::one(), |d, &(_, e)| &d * &balanced_quantum_factorial(e));
    let mut out = UPlusElement::zero();
    for (l, c) in acc.terms() {
        let q = c
            .div_exact(&denom)
            .ok_or_else(|| Error::verify(format!("monomial of {w} is not divisible by its factorials")))?;
        out.add_term(l.clone(), &q);
    }
    Ok(out)
}

/// The divided-power monomial `m^{(w)}`, computed two ways and compared.
pub fn monomial(ctx: &Context, w: &Word) -> Result<UPlusElement> {
    if w.letters().iter().any(|&i| i >= ctx.quiver().vertex_count()) {
        return Err(Error::invalid("word uses a vertex outside the quiver"));
    }
    let a = monomial_from_gamma(ctx, w)?;
    let b = monomial_from_products(ctx, w)?;
    if a != b {
        return Err(Error::verify(format!("the two expansions of the monomial {w} disagree")));
    }
    Ok(a)
}

/// A square matrix over `Z[v, v⁻¹]` with rows and columns labelled by partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub labels: Vec<Partition>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r][c]
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.size()).all(|r| (0..r).all(|c| self.entries[r][c].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.size()).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn bar(&self) -> Self {
        LaurentMatrix {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|x| x.bar()).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(LaurentPoly::zero(), |acc, k| &acc + &(&self.entries[r][k] * &other.entries[k][c]))
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix { labels: self.labels.clone(), entries }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size()).all(|r| {
            (0..self.size()).all(|c| if r == c { self.entries[r][c].is_one() } else { self.entries[r][c].is_zero() })
        })
    }

    /// Inverse of an upper triangular matrix whose diagonal entries are units.
    pub fn inverse_unitriangular(&self) -> Result<Self> {
        let n = self.size();
        if !self.is_upper_triangular() {
            return Err(Error::verify("matrix is not upper triangular"));
        }
        let mut inv = vec![vec![LaurentPoly::zero(); n]; n];
        for c in 0..n {
            for r in (0..=c).rev() {
                // Σ_k F[r][k] X[k][c] = δ_rc for k ≥ r
                let mut rhs = if r == c { LaurentPoly::one() } else { LaurentPoly::zero() };
                for k in r + 1..=c {
                    rhs = &rhs - &(&self.entries[r][k] * &inv[k][c]);
                }
                let d = &self.entries[r][r];
                let (sign, k) =
                    d.as_unit().ok_or_else(|| Error::verify(format!("diagonal entry {d} is not a unit")))?;
                inv[r][c] = rhs.shift(-k);
                if sign < 0 {
                    inv[r][c] = -&inv[r][c];
                }
            }
        }
        Ok(LaurentMatrix { labels: self.labels.clone(), entries: inv })
    }

    /// Determinant modulo `2^61 − 1` after substituting `v = x`.
    pub fn det_mod(&self, x: u64) -> u64 {
        const P: u64 = (1 << 61) - 1;
        let n = self.size();
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
        let powm = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulm(r, b);
                }
                b = mulm(b, b);
                e >>= 1;
            }
            r
        };
        let mut a: Vec<Vec<u64>> = self.entries.iter().map(|r| r.iter().map(|c| c.eval_mod(x, P)).collect()).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                a.swap(piv, col);
                det = (P - det) % P;
            }
            det = mulm(det, a[col][col]);
            let inv = powm(a[col][col], P - 2);
            for r in col + 1..n {
                let f = mulm(a[r][col], inv);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    a[r][c] = (a[r][c] + P - mulm(f, a[col][c])) % P;
                }
            }
        }
        det
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.labels.iter().map(|l| l.to_json_map()).collect::<Vec<_>>(),
            "entries": self.entries,
        })
    }
}

/// One word per partition.
pub type Representatives = BTreeMap<Partition, Word>;

pub fn directed_representatives(ctx: &Context, d: &[u32]) -> Result<Representatives> {
    ctx.partitions(d).iter().map(|l| Ok((l.clone(), directed_word(ctx, l, None, None)?))).collect()
}

/// The lexicographically first distinguished word of each fibre.
pub fn first_distinguished_representatives(ctx: &Context, d: &[u32]) -> Result<Representatives> {
    let mut out = Representatives::new();
    for l in ctx.partitions(d).iter() {
        let mut found = None;
        for w in fibre(ctx, l)? {
            if is_distinguished(ctx, &w)? {
                found = Some(w);
                break;
            }
        }
        let w = found.ok_or_else(|| Error::verify(format!("fibre of {} has no distinguished word", ctx.display(l))))?;
        out.insert(l.clone(), w);
    }
    Ok(out)
}

/// The lexicographically first word of each fibre.
pub fn first_representatives(ctx: &Context, d: &[u32]) -> Result<Representatives> {
    let mut out = Representatives::new();
    for l in ctx.partitions(d).iter() {
        let w = fibre(ctx, l)?.into_iter().next().ok_or_else(|| Error::verify("empty fibre"))?;
        out.insert(l.clone(), w);
    }
    Ok(out)
}

/// `F[λ, μ]`: the ũ_λ-coefficient of `m^{(w_μ)}`, in linear-extension order.
pub fn transition_matrix(ctx: &Context, d: &[u32], reps: &Representatives) -> Result<LaurentMatrix> {
    ctx.check_dimvec(d)?;
    let labels = linear_extension(ctx, &ctx.partitions(d));
    for l in &labels {
        let w = reps.get(l).ok_or_else(|| Error::invalid(format!("no representative for {}", ctx.display(l))))?;
        if &crate::monoid::wp(ctx, w)? != l {
            return Err(Error::invalid(format!("{w} is not in the fibre of {}", ctx.display(l))));
        }
    }
    let cols = crate::parallel::try_map(&labels, |mu| -> Result<BTreeMap<Partition, LaurentPoly>> {
        Ok(monomial(ctx, &reps[mu])?.tilde_coeffs(ctx))
    })?;
    let n = labels.len();
    let entries =
        (0..n).map(|r| (0..n).map(|c| cols[c].get(&labels[r]).cloned().unwrap_or_default()).collect()).collect();
    let f = LaurentMatrix { labels, entries };
    if !f.is_upper_triangular() {
        return Err(Error::verify("transition matrix is not triangular"));
    }
    if f.diagonal().iter().any(|x| x.is_zero()) {
        return Err(Error::verify("transition matrix has a zero diagonal entry"));
    }
    Ok(f)
}

/// `R = F · bar(F⁻¹)`, the matrix of the bar involution on the ũ-basis.
pub fn bar_matrix(f: &LaurentMatrix) -> Result<LaurentMatrix> {
    let inv = f.inverse_unitriangular()?;
    let r = f.mul(&inv.bar());
    if r.diagonal().iter().any(|x| !x.is_one()) {
        return Err(Error::verify("bar matrix is not unitriangular"));
    }
    if !r.mul(&r.bar()).is_identity() {
        return Err(Error::verify("bar matrix is not an involution"));
    }
    Ok(r)
}

/// Divide each column by its diagonal unit.
pub fn renormalize(f: &LaurentMatrix) -> Result<LaurentMatrix> {
    let mut out = f.clone();
    for c in 0..f.size() {
        let (sign, k) = f.entries[c][c].as_unit().ok_or_else(|| Error::verify("diagonal entry is not a unit"))?;
        for r in 0..f.size() {
            let x = out.entries[r][c].shift(-k);
            out.entries[r][c] = if sign < 0 { -&x } else { x };
        }
    }
    Ok(out)
}

/// Canonical basis elements as columns `ζ_{·λ}` over the ũ-basis.
pub fn canonical_from_bar(ctx: &Context, r: &LaurentMatrix) -> Result<BTreeMap<Partition, UPlusElement>> {
    let n = r.size();
    let labels = &r.labels;
    let mut out = BTreeMap::new();
    for lam in 0..n {
        let mut zeta = vec![LaurentPoly::zero(); n];
        zeta[lam] = LaurentPoly::one();
        for k in (0..lam).rev() {
            if !leq(ctx, &labels[k], &labels[lam]) {
                continue;
            }
            let mut a = LaurentPoly::zero();
            for m in k + 1..=lam {
                a = &a + &(r.get(k, m) * &zeta[m].bar());
            }
            if !(&a + &a.bar()).is_zero() {
                return Err(Error::verify("bar defect is not antisymmetric"));
            }
            zeta[k] = a.negative_part();
        }
        // ι(c) = c
        for k in 0..n {
            let mut s = LaurentPoly::zero();
            for m in 0..n {
                s = &s + &(r.get(k, m) * &zeta[m].bar());
            }
            if s != zeta[k] {
                return Err(Error::verify("canonical element is not bar-invariant"));
            }
        }
        let coeffs: BTreeMap<Partition, LaurentPoly> =
            labels.iter().cloned().zip(zeta).filter(|(_, c)| !c.is_zero()).collect();
        out.insert(labels[lam].clone(), UPlusElement::from_tilde(ctx, &coeffs));
    }
    Ok(out)
}

pub fn canonical_basis_with(
    ctx: &Context,
    d: &[u32],
    reps: &Representatives,
) -> Result<BTreeMap<Partition, UPlusElement>> {
    let f = renormalize(&transition_matrix(ctx, d, reps)?)?;
    canonical_from_bar(ctx, &bar_matrix(&f)?)
}

/// `{c_λ : λ ∈ Λ_d}` with off-diagonal ũ-coefficients in `v⁻¹Z[v⁻¹]`.
pub fn canonical_basis(ctx: &Context, d: &[u32]) -> Result<BTreeMap<Partition, UPlusElement>> {
    canonical_basis_with(ctx, d, &directed_representatives(ctx, d)?)
}

/// `δ(w) + ε(w) = t(℘(w))`.
pub fn lemma67_holds(ctx: &Context, w: &Word) -> Result<bool> {
    let l = crate::monoid::wp(ctx, w)?;
    Ok(delta(w) + epsilon(ctx.quiver(), w) == tilde_exponent(ctx, &l))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Lemma67Report {
    pub max_length: u32,
    pub words: u64,
    pub distinguished: u64,
    pub directed: u64,
    pub violations: Vec<String>,
}

/// Checks the identity on every distinguished word up to `max_length`,
/// including words that are not directed.
pub fn lemma67_experiment(ctx: &Context, max_length: u32) -> Result<Lemma67Report> {
    let n = ctx.quiver().vertex_count();
    let mut report = Lemma67Report { max_length, ..Default::default() };
    let mut contents = vec![vec![0u32; n]];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for c in &contents {
            let last = c.iter().rposition(|&x| x > 0).unwrap_or(0);
            for i in last..n {
                let mut d = c.clone();
                d[i] += 1;
                next.push(d);
            }
        }
        // every content of total `total`, built by non-decreasing letters
        next.sort();
        next.dedup();
        for d in &next {
            for (l, words) in crate::monoid::fibres_of_content(ctx, d)? {
                let directed = crate::monoid::all_directed_words(ctx, &l)?;
                for w in words {
                    report.words += 1;
                    if !is_distinguished(ctx, &w)? {
                        continue;
                    }
                    report.distinguished += 1;
                    if directed.contains(&w) {
                        report.directed += 1;
                    }
                    if !lemma67_holds(ctx, &w)? {
                        report.violations.push(w.to_label_string());
                    }
                }
            }
        }
        contents = next;
    }
    Ok(report)
}
