//! Positive roots, Kostant partitions, words and their tight forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Largest coordinate of any positive root of a simply-laced Dynkin diagram
/// (attained by the highest root of E8).
pub const ROOT_BOX: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub index: usize,
    pub dim: Vec<u32>,
}

impl Root {
    pub fn length(&self) -> u32 {
        self.dim.iter().sum()
    }
}

/// All positive roots of `q` in lexicographic order of dimension vectors.
pub fn positive_roots(q: &Quiver) -> Vec<Root> {
    let n = q.vertex_count();
    let mut dims = Vec::new();
    for comp in q.components() {
        let k = comp.len();
        let mut digits = vec![0u32; k];
        loop {
            // increment odometer
            let mut i = 0;
            while i < k {
                digits[i] += 1;
                if digits[i] <= ROOT_BOX {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            let mut d = vec![0u32; n];
            for (slot, &v) in comp.iter().enumerate() {
                d[v] = digits[slot];
            }
            if q.euler(&d, &d) == 1 {
                dims.push(d);
            }
        }
    }
    dims.sort();
    dims.into_iter().enumerate().map(|(index, dim)| Root { index, dim }).collect()
}

/// The positive roots of a quiver together with lookup tables.
#[derive(Clone, Debug)]
pub struct RootSystem {
    n: usize,
    roots: Vec<Root>,
    lookup: HashMap<Vec<u32>, usize>,
    simple: Vec<usize>,
}

impl RootSystem {
    pub fn new(q: &Quiver) -> Self {
        let roots = positive_roots(q);
        let lookup: HashMap<Vec<u32>, usize> = roots.iter().map(|r| (r.dim.clone(), r.index)).collect();
        let n = q.vertex_count();
        let simple = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                lookup[&e]
            })
            .collect();
        RootSystem { n, roots, lookup, simple }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dim(&self, idx: usize) -> &[u32] {
        &self.roots[idx].dim
    }

    pub fn index_of(&self, dim: &[u32]) -> Option<usize> {
        self.lookup.get(dim).copied()
    }

    /// Root index of the simple root at vertex `i` (0-based).
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// The vertex of a simple root, if `idx` is simple.
    pub fn simple_vertex(&self, idx: usize) -> Option<usize> {
        self.simple.iter().position(|&s| s == idx)
    }

    /// Every `λ` with `dimvec(λ) = d`, in lexicographic order of multiplicity vectors.
    pub fn partitions(&self, d: &[u32]) -> Vec<Partition> {
        assert_eq!(d.len(), self.n);
        let mut out = Vec::new();
        let mut mults = vec![0u32; self.roots.len()];
        let mut rest = d.to_vec();
        self.knapsack(0, &mut rest, &mut mults, &mut out);
        out.sort();
        out
    }

    fn knapsack(&self, idx: usize, rest: &mut Vec<u32>, mults: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(Partition(mults.clone()));
            return;
        }
        if idx == self.roots.len() {
            return;
        }
        let dim = &self.roots[idx].dim;
        let max = dim.iter().zip(rest.iter()).filter(|(&b, _)| b > 0).map(|(&b, &r)| r / b).min().unwrap_or(0);
        for k in (0..=max).rev() {
            for (r, &b) in rest.iter_mut().zip(dim) {
                *r -= k * b;
            }
            mults[idx] = k;
            self.knapsack(idx + 1, rest, mults, out);
            for (r, &b) in rest.iter_mut().zip(dim) {
                *r += k * b;
            }
        }
        mults[idx] = 0;
    }

    pub fn dimvec(&self, lambda: &Partition) -> Vec<u32> {
        let mut d = vec![0u32; self.n];
        for (idx, &m) in lambda.0.iter().enumerate() {
            if m > 0 {
                for (x, &b) in d.iter_mut().zip(&self.roots[idx].dim) {
                    *x += m * b;
                }
            }
        }
        d
    }

    pub fn length(&self, lambda: &Partition) -> u32 {
        self.dimvec(lambda).iter().sum()
    }

    /// `e · S_j` as a partition.
    pub fn semisimple_layer(&self, j: usize, e: u32) -> Partition {
        let mut p = Partition::zero(self.len());
        p.0[self.simple[j]] = e;
        p
    }

    /// `Some((j, e))` when `λ = e S_j` with `e ≥ 1`.
    pub fn as_layer(&self, lambda: &Partition) -> Option<(usize, u32)> {
        let supp = lambda.support();
        if supp.len() != 1 {
            return None;
        }
        self.simple_vertex(supp[0]).map(|j| (j, lambda.0[supp[0]]))
    }

    /// Human-readable form, e.g. `(1,1) + 2(1,0)`.
    pub fn display(&self, lambda: &Partition) -> String {
        if lambda.is_empty() {
            return "0".to_string();
        }
        lambda
            .support()
            .into_iter()
            .map(|i| {
                let dim = self.roots[i].dim.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                match lambda.0[i] {
                    1 => format!("({dim})"),
                    m => format!("{m}({dim})"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A Kostant partition: multiplicity of each positive root, indexed by the
/// canonical root order. Absent roots have multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn zero(nroots: usize) -> Self {
        Partition(vec![0; nroots])
    }

    pub fn single(nroots: usize, idx: usize) -> Self {
        let mut p = Partition::zero(nroots);
        p.0[idx] = 1;
        p
    }

    pub fn mult(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn mults(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Multiplicity-wise sum, i.e. the direct sum of modules.
    pub fn direct_sum(&self, other: &Partition) -> Partition {
        Partition(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Restriction to a set of root indices.
    pub fn restrict(&self, roots: &[usize]) -> Partition {
        let mut p = Partition::zero(self.0.len());
        for &r in roots {
            p.0[r] = self.0[r];
        }
        p
    }

    /// JSON form: map from root index (as a string) to multiplicity.
    pub fn to_json_map(&self) -> BTreeMap<String, u32> {
        self.support().into_iter().map(|i| (i.to_string(), self.0[i])).collect()
    }

    pub fn from_json_map(map: &BTreeMap<String, u32>, nroots: usize) -> Result<Self> {
        let mut p = Partition::zero(nroots);
        for (k, &v) in map {
            let idx: usize = k.parse().map_err(|_| Error::invalid(format!("bad root index {k:?}")))?;
            if idx >= nroots {
                return Err(Error::invalid(format!("root index {idx} out of range (have {nroots} roots)")));
            }
            p.0[idx] += v;
        }
        Ok(p)
    }

    pub fn parse_json(text: &str, nroots: usize) -> Result<Self> {
        let map: BTreeMap<String, u32> = serde_json::from_str(text)?;
        Self::from_json_map(&map, nroots)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_map()).expect("serializable")
    }
}

/// A word on the vertex alphabet, letters stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// Parse `"1,2,3,4,4"`; a plain digit string such as `"12344"` is also
    /// accepted when `n ≤ 9`. The empty string is the empty word.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Word::default());
        }
        let labels: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad letter {s:?} in word"))))
                .collect::<Result<_>>()?
        } else if n <= 9 {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::invalid(format!("bad letter {c:?}"))))
                .collect::<Result<_>>()?
        } else {
            vec![t.parse::<usize>().map_err(|_| Error::invalid(format!("bad word {t:?}")))?]
        };
        for &l in &labels {
            if l == 0 || l > n {
                return Err(Error::invalid(format!("letter {l} outside 1..={n}")));
            }
        }
        Ok(Word(labels.into_iter().map(|l| l - 1).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Letter multiset as a dimension vector.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut d = vec![0u32; n];
        for &l in &self.0 {
            d[l] += 1;
        }
        d
    }

    /// Run-length encoding `(j_r, e_r)` with consecutive letters distinct.
    pub fn tight_form(&self) -> TightForm {
        let mut runs: Vec<(usize, u32)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((j, e)) if *j == l => *e += 1,
                _ => runs.push((l, 1)),
            }
        }
        TightForm(runs)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Comma-separated 1-based labels.
    pub fn to_label_string(&self) -> String {
        self.0.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 9) {
            for l in &self.0 {
                write!(f, "{}", l + 1)?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.to_label_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TightForm(pub Vec<(usize, u32)>);

impl TightForm {
    pub fn runs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for (r, &(j, e)) in self.0.iter().enumerate() {
            if j >= n {
                return Err(Error::invalid(format!("letter {} outside 1..={n}", j + 1)));
            }
            if e == 0 {
                return Err(Error::invalid("tight form exponents must be positive"));
            }
            if r > 0 && self.0[r - 1].0 == j {
                return Err(Error::invalid("consecutive runs must use distinct letters"));
            }
        }
        Ok(())
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.iter().flat_map(|&(j, e)| std::iter::repeat_n(j, e as usize)).collect())
    }
}

/// `δ(w) = Σ_r e_r(e_r − 1)/2` over the tight form.
pub fn delta(w: &Word) -> i64 {
    w.tight_form().runs().iter().map(|&(_, e)| (e as i64) * (e as i64 - 1) / 2).sum()
}

/// `ε(w) = Σ_{r<s} <e_{i_r}, e_{i_s}>` over all pairs of letter positions.
pub fn epsilon(q: &Quiver, w: &Word) -> i64 {
    let n = q.vertex_count();
    let unit = |i: usize| {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e
    };
    let mut total = 0;
    let letters = w.letters();
    for r in 0..letters.len() {
        for s in r + 1..letters.len() {
            total += q.euler(&unit(letters[r]), &unit(letters[s]));
        }
    }
    total
}
