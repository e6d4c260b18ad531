//! Quivers, their Euler and Tits forms, Dynkin recognition and the
//! sink-last vertex ordering used to build words.
//!
//! Vertices are labelled `1..=n` at every external boundary (JSON, words,
//! CLI output). Internally they are indices `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    /// `(tail, head)` as 0-based indices.
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

/// ADE type of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentDiagnosis {
    /// 1-based labels.
    pub vertices: Vec<usize>,
    pub kind: Option<DynkinType>,
    pub problem: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynkinDiagnosis {
    pub accepted: bool,
    pub positive_definite: bool,
    pub components: Vec<ComponentDiagnosis>,
    pub problems: Vec<String>,
}

impl DynkinDiagnosis {
    pub fn types(&self) -> Vec<DynkinType> {
        self.components.iter().filter_map(|c| c.kind).collect()
    }
}

impl Quiver {
    /// Build from 1-based `(tail, head)` pairs and validate.
    pub fn from_labels(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let q = Self::unchecked(n, arrows)?;
        let diag = q.validate_dynkin();
        if !diag.accepted {
            return Err(Error::invalid(format!("quiver is not Dynkin: {}", diag.problems.join("; "))));
        }
        Ok(q)
    }

    /// Structural checks only (labels in range, no loops, no parallel edges).
    pub fn unchecked(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("quiver must have at least one vertex"));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for &(t, h) in arrows {
            if t == 0 || h == 0 || t > n || h > n {
                return Err(Error::invalid(format!("arrow {t}->{h} uses a label outside 1..={n}")));
            }
            if t == h {
                return Err(Error::invalid(format!("loop at vertex {t}")));
            }
            if !seen.insert((t.min(h), t.max(h))) {
                return Err(Error::invalid(format!(
                    "more than one arrow between {} and {} (oriented cycle or multiple edge; not a tree)",
                    t.min(h),
                    t.max(h)
                )));
            }
            out.push((t - 1, h - 1));
        }
        Ok(Quiver { n, arrows: out })
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_labels(n, &arrows).expect("linear A_n is Dynkin")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Arrows as 0-based `(tail, head)`.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn to_json(&self) -> String {
        let j = QuiverJson { vertices: self.n, arrows: self.arrows.iter().map(|&(t, h)| [t + 1, h + 1]).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Stable textual identity, used to key persisted caches.
    pub fn fingerprint(&self) -> String {
        let mut arrows: Vec<_> = self.arrows.iter().map(|&(t, h)| format!("{}>{}", t + 1, h + 1)).collect();
        arrows.sort();
        format!("n={};arrows={}", self.n, arrows.join(","))
    }

    fn check_dim(&self, a: &[u32]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::invalid(format!(
                "dimension vector has length {} but the quiver has {} vertices",
                a.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// `<a,b> = sum_i a_i b_i - sum_arrows a_tail b_head`.
    pub fn euler_form(&self, a: &[u32], b: &[u32]) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.euler(a, b))
    }

    /// Unchecked Euler form; callers guarantee matching lengths.
    pub(crate) fn euler(&self, a: &[u32], b: &[u32]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(t, h)| a[t] as i64 * b[h] as i64).sum();
        diag - off
    }

    pub fn tits_form(&self, a: &[u32]) -> Result<i64> {
        self.euler_form(a, a)
    }

    pub fn symmetric_form(&self, a: &[u32], b: &[u32]) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    /// Cartan-type matrix of the symmetrized form.
    pub fn symmetric_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.n]; self.n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(t, h) in &self.arrows {
            m[t][h] -= 1;
            m[h][t] -= 1;
        }
        m
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|&(t, h)| {
                if t == v {
                    Some(h)
                } else if h == v {
                    Some(t)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components of the underlying graph, each sorted, listed by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                for nb in self.neighbours(comp[i]) {
                    if !seen[nb] {
                        seen[nb] = true;
                        comp.push(nb);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Recognise each component as A/D/E and independently check positive
    /// definiteness of the symmetrized form via leading principal minors.
    pub fn validate_dynkin(&self) -> DynkinDiagnosis {
        let positive_definite = leading_minors_positive(&self.symmetric_matrix());
        let mut problems = Vec::new();
        let mut components = Vec::new();
        for comp in self.components() {
            let labels: Vec<usize> = comp.iter().map(|v| v + 1).collect();
            let (kind, problem) = match self.classify(&comp) {
                Ok(k) => (Some(k), None),
                Err(msg) => {
                    problems.push(format!("component {:?}: {msg}", labels));
                    (None, Some(msg))
                }
            };
            components.push(ComponentDiagnosis { vertices: labels, kind, problem });
        }
        let shapes_ok = problems.is_empty();
        if shapes_ok != positive_definite {
            problems.push(format!(
                "shape recognition ({shapes_ok}) disagrees with positive definiteness ({positive_definite})"
            ));
        }
        if self.topological_order().is_none() {
            problems.push("quiver has an oriented cycle".to_string());
        }
        DynkinDiagnosis { accepted: problems.is_empty(), positive_definite, components, problems }
    }

    fn classify(&self, comp: &[usize]) -> std::result::Result<DynkinType, String> {
        let k = comp.len();
        let edges = self.arrows.iter().filter(|(t, _)| comp.contains(t)).count();
        if edges != k - 1 {
            return Err(format!("not a tree ({edges} edges on {k} vertices)"));
        }
        let degree = |v: usize| self.neighbours(v).len();
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
        if branch.is_empty() {
            return Ok(DynkinType::A(k));
        }
        if branch.len() > 1 {
            return Err("more than one branch vertex".to_string());
        }
        let centre = branch[0];
        if degree(centre) > 3 {
            return Err(format!("vertex {} has degree {}", centre + 1, degree(centre)));
        }
        let mut arms: Vec<usize> = self
            .neighbours(centre)
            .into_iter()
            .map(|start| {
                let mut len = 1;
                let (mut prev, mut cur) = (centre, start);
                loop {
                    let next: Vec<usize> = self.neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                    if next.is_empty() {
                        break len;
                    }
                    prev = cur;
                    cur = next[0];
                    len += 1;
                }
            })
            .collect();
        arms.sort_unstable();
        match (arms[0], arms[1], arms[2]) {
            (1, 1, c) => Ok(DynkinType::D(c + 3)),
            (1, 2, 2) => Ok(DynkinType::E(6)),
            (1, 2, 3) => Ok(DynkinType::E(7)),
            (1, 2, 4) => Ok(DynkinType::E(8)),
            (a, b, c) => Err(format!("branch arms of lengths {a},{b},{c} are not of type D or E")),
        }
    }

    /// Kahn's algorithm, smallest available index first. `None` on a cycle.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        ready.insert(h);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Vertex order in which every arrow's tail precedes its head, ties
    /// broken by smallest label. Returned as 0-based indices.
    pub fn vertex_order_dfb(&self) -> Vec<usize> {
        self.topological_order().expect("validated quivers are acyclic")
    }

    /// Every vertex order compatible with the arrows (tails before heads).
    pub fn all_vertex_orders(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut indeg = vec![0usize; self.n];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut used = vec![false; self.n];
        let mut cur = Vec::with_capacity(self.n);
        self.extend_orders(&mut indeg, &mut used, &mut cur, &mut out);
        out
    }

    fn extend_orders(&self, indeg: &mut [usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == self.n {
            out.push(cur.clone());
            return;
        }
        for v in 0..self.n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            cur.push(v);
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                }
            }
            self.extend_orders(indeg, used, cur, out);
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] += 1;
                }
            }
            cur.pop();
            used[v] = false;
        }
    }

    /// True when the quiver is `1 -> 2 -> ... -> n`.
    pub fn is_linear_a(&self) -> bool {
        self.arrows.len() + 1 == self.n && (0..self.n - 1).all(|i| self.arrows.contains(&(i, i + 1)))
    }
}

/// Parse the JSON quiver format `{"vertices": n, "arrows": [[t,h], ...]}`.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let j: QuiverJson = serde_json::from_str(text)?;
    let arrows: Vec<(usize, usize)> = j.arrows.iter().map(|a| (a[0], a[1])).collect();
    Quiver::from_labels(j.vertices, &arrows)
}

/// Exact determinant test on all leading principal minors (fraction-free
/// elimination on `i128`).
fn leading_minors_positive(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let sub: Vec<Vec<i128>> = (0..k).map(|r| (0..k).map(|c| m[r][c] as i128).collect()).collect();
        bareiss_det(sub) > 0
    })
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
