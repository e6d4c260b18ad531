//! Dense linear algebra over prime fields `F_p`.
//!
//! Entries are stored reduced into `0..p` as `u32`; products go through `u64`.
//! The modulus is passed explicitly to every operation that needs it, so a
//! [`Matrix`] is just a shaped buffer.

use std::fmt;

/// The primes used as sample points for counting and interpolation.
pub const PRIMES: [u32; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse of a non-zero residue (Fermat).
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

/// Reduce a signed integer into `0..p`.
pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Number of `k`-dimensional subspaces of `F_p^m` (the Gaussian binomial at `q = p`).
pub fn gaussian_binomial_count(m: usize, k: usize, p: u32) -> u128 {
    if k > m {
        return 0;
    }
    let q = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((m - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from signed integer rows, reducing modulo `p`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = reduce_i64(x, p);
            }
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data_iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.data.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, p: u32) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = add_mod(out.data[idx], mul_mod(a, other.get(k, c), p), p);
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p as u64) as u32
            })
            .collect()
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        if self.rows == 0 {
            return Matrix { rows: other.rows, cols: other.cols, data: other.data.clone() };
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (i, &c) in idx.iter().enumerate() {
                out.set(r, i, self.get(r, c));
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns; rows past
    /// the rank are zero and are truncated away.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for c in 0..self.cols {
                    self.data.swap(sel * self.cols + c, row * self.cols + c);
                }
            }
            let inv = inv_mod(self.get(row, col), p);
            for c in col..self.cols {
                let idx = row * self.cols + c;
                self.data[idx] = mul_mod(self.data[idx], inv, p);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let sub = mul_mod(f, self.get(row, c), p);
                    let idx = r * self.cols + c;
                    self.data[idx] = sub_mod(self.data[idx], sub, p);
                }
            }
            pivots.push(col);
            row += 1;
        }
        self.rows = row;
        self.data.truncate(row * self.cols);
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        let mut m = self.clone();
        m.rref(p).len()
    }

    /// Basis of the right null space `{x : A x = 0}`, one vector per entry.
    pub fn nullspace(&self, p: u32) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let a = m.get(r, free);
                if a != 0 {
                    v[pc] = (p - a) % p;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, p: u32) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n));
        let pivots = aug.rref(p);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(aug.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }
}

/// A subspace of `F_p^dim`, held as a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { basis: Matrix::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace { basis: Matrix::identity(dim), pivots: (0..dim).collect() }
    }

    /// Row space of `m`.
    pub fn span(m: &Matrix, p: u32) -> Self {
        let mut basis = m.clone();
        let pivots = basis.rref(p);
        Subspace { basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns not used as pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduce `v` modulo the subspace, clearing all pivot coordinates.
    pub fn reduce(&self, v: &[u32], p: u32) -> Vec<u32> {
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.basis.get(r, c);
                if b != 0 {
                    *o = sub_mod(*o, mul_mod(f, b, p), p);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32], p: u32) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }
}

/// Call `f` once for every `k`-dimensional subspace of `F_p^m`, passing its
/// basis in reduced row echelon form (`k x m`). Returns the number visited.
pub fn for_each_subspace<F: FnMut(&Matrix)>(m: usize, k: usize, p: u32, mut f: F) -> u128 {
    if k > m {
        return 0;
    }
    let mut visited = 0u128;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let mut is_pivot = vec![false; m];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..m {
                if !is_pivot[c] {
                    free.push((r, c));
                }
            }
        }
        let mut mat = Matrix::zeros(k, m);
        for (r, &pc) in pivots.iter().enumerate() {
            mat.set(r, pc, 1);
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            f(&mat);
            visited += 1;
            // odometer increment
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < p {
                    let (r, c) = free[i];
                    mat.set(r, c, digits[i]);
                    break;
                }
                digits[i] = 0;
                let (r, c) = free[i];
                mat.set(r, c, 0);
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return visited;
            }
            i -= 1;
            if pivots[i] < m - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
