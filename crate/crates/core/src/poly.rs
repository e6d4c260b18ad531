//! Integer polynomials in `q`, Laurent polynomials in `v` (with `q = v²`),
//! exact interpolation and quantum integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense polynomial in `q` with integer coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![c])
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
    }

    /// Every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Exact quotient; `None` if `d` does not divide `self` over `Z`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dl = *d.coeffs.last()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        if rem.len() < dn {
            return None;
        }
        let mut quot = vec![0i64; rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dn - 1];
            if lead % dl != 0 {
                return None;
            }
            let f = lead / dl;
            quot[k] = f;
            for (i, &c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= f * c;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| IntPoly::new(quot))
    }

    /// Substitute `q = v²`.
    pub fn at_v_squared(&self) -> LaurentPoly {
        let mut c = vec![0i64; self.coeffs.len().saturating_mul(2).saturating_sub(1)];
        for (k, &x) in self.coeffs.iter().enumerate() {
            c[2 * k] = x;
        }
        LaurentPoly::new(0, c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().rev().map(|(k, &c)| (k as i64, c)), "q")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, i64)>, var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.unsigned_abs();
        match k {
            0 => write!(f, "{a}")?,
            _ => {
                if a != 1 {
                    write!(f, "{a}")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&0) + rhs.coeffs.get(i).unwrap_or(&0)).collect();
        IntPoly::new(c)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&0) - rhs.coeffs.get(i).unwrap_or(&0)).collect();
        IntPoly::new(c)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

/// `[[e]] = (q^e − 1)/(q − 1) = 1 + q + ... + q^{e−1}`.
pub fn quantum_integer(e: u32) -> IntPoly {
    IntPoly::new(vec![1; e as usize])
}

/// `[[e]]! = [[1]][[2]]...[[e]]`.
pub fn quantum_factorial(e: u32) -> IntPoly {
    (1..=e).fold(IntPoly::one(), |acc, k| &acc * &quantum_integer(k))
}

/// Gaussian binomial `[m choose k]_q` as a polynomial.
pub fn gaussian_binomial(m: u32, k: u32) -> IntPoly {
    if k > m {
        return IntPoly::zero();
    }
    let num = (m - k + 1..=m).fold(IntPoly::one(), |acc, i| &acc * &quantum_integer(i));
    num.div_exact(&quantum_factorial(k)).expect("Gaussian binomials are polynomials")
}

/// Unique polynomial of degree `< points.len()` through the given points,
/// provided it has integer coefficients.
pub fn interpolate(points: &[(i64, i128)]) -> Option<IntPoly> {
    let n = points.len();
    if n == 0 {
        return Some(IntPoly::zero());
    }
    // Newton divided differences over Q.
    let xs: Vec<BigRational> = points.iter().map(|&(x, _)| BigRational::from_integer(BigInt::from(x))).collect();
    let mut table: Vec<BigRational> = points.iter().map(|&(_, y)| BigRational::from_integer(BigInt::from(y))).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = num / den;
        }
    }
    // Expand Newton form into monomial coefficients.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut basis: Vec<BigRational> = vec![BigRational::one()];
    for (i, a) in table.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] = &coeffs[k] + a * b;
        }
        if i + 1 < n {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + b;
                next[k] = &next[k] - b * &xs[i];
            }
            basis = next;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer().to_i64()?);
    }
    Some(IntPoly::new(out))
}

/// Laurent polynomial `Σ coeffs[k] v^{lo + k}` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    lo: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn new(lo: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c · v^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs == [1]
    }

    /// Highest exponent with a non-zero coefficient.
    pub fn hi(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, k: i32) -> i64 {
        let i = k - self.lo;
        if i < 0 {
            return 0;
        }
        *self.coeffs.get(i as usize).unwrap_or(&0)
    }

    /// Terms as `(exponent, coefficient)`, skipping zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.lo + i as i32, c))
    }

    /// The bar involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        match self.hi() {
            None => LaurentPoly::zero(),
            Some(hi) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                LaurentPoly::new(-hi, c)
            }
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    /// `Some((sign, k))` when the polynomial is `±v^k`, a unit of `Z[v, v⁻¹]`.
    pub fn as_unit(&self) -> Option<(i64, i32)> {
        match self.coeffs.as_slice() {
            [c] if c.abs() == 1 => Some((*c, self.lo)),
            _ => None,
        }
    }

    /// Exact quotient over `Z[v, v⁻¹]`; `None` if the division is not exact.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let a = IntPoly::new(self.coeffs.clone());
        let b = IntPoly::new(d.coeffs.clone());
        let q = a.div_exact(&b)?;
        Some(LaurentPoly::new(self.lo - d.lo, q.coeffs))
    }

    /// The terms with negative exponent.
    pub fn negative_part(&self) -> Self {
        let keep = (-self.lo).clamp(0, self.coeffs.len() as i32) as usize;
        LaurentPoly::new(self.lo, self.coeffs[..keep].to_vec())
    }

    /// Only exponents `< 0` occur (the zero polynomial qualifies).
    pub fn in_negative_lattice(&self) -> bool {
        self.hi().is_none_or(|h| h < 0)
    }

    /// Evaluate at `v = x` modulo a prime `m < 2^63`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % m as u128) as u64;
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
        let xinv = powm(x % m, m - 2);
        let base = if self.lo >= 0 { powm(x, self.lo as u64) } else { powm(xinv, (-self.lo) as u64) };
        let mut acc = 0u64;
        let mut pw = base;
        for &c in &self.coeffs {
            let cm = (c as i128).rem_euclid(m as i128) as u64;
            acc = (acc + mulm(cm, pw)) % m;
            pw = mulm(pw, x % m);
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().rev().map(|(i, &c)| (self.lo as i64 + i as i64, c)), "v")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().unwrap().max(rhs.hi().unwrap());
        let c = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentPoly::new(lo, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, c)
    }
}

/// Balanced quantum integer `[m] = (v^m − v^{−m})/(v − v^{−1})`.
pub fn balanced_quantum_integer(m: u32) -> LaurentPoly {
    if m == 0 {
        return LaurentPoly::zero();
    }
    // v^{-(m-1)} + v^{-(m-3)} + ... + v^{m-1}
    let mut c = vec![0i64; 2 * m as usize - 1];
    for k in 0..m as usize {
        c[2 * k] = 1;
    }
    LaurentPoly::new(-(m as i32 - 1), c)
}

/// `[m]! = [1][2]...[m]`.
pub fn balanced_quantum_factorial(m: u32) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, k| &acc * &balanced_quantum_integer(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quantum_examples() {
        assert_eq!(quantum_integer(2), IntPoly::new(vec![1, 1]));
        assert_eq!(quantum_factorial(1), IntPoly::one());
        // (q+1)(q^2+q+1) = q^3 + 2q^2 + 2q + 1
        assert_eq!(quantum_factorial(3), IntPoly::new(vec![1, 2, 2, 1]));
        assert_eq!(gaussian_binomial(4, 2), IntPoly::new(vec![1, 1, 2, 1, 1]));
    }

    #[test]
    fn bridge_between_quantum_integers() {
        // [[m]] = v^{m-1}[m] and [[m]]! = v^{m(m-1)/2}[m]!
        for m in 1..6u32 {
            assert_eq!(quantum_integer(m).at_v_squared(), balanced_quantum_integer(m).shift(m as i32 - 1));
            assert_eq!(
                quantum_factorial(m).at_v_squared(),
                balanced_quantum_factorial(m).shift((m * (m - 1) / 2) as i32)
            );
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let p = IntPoly::new(vec![3, 0, -2, 1]);
        let pts: Vec<_> = [2i64, 3, 5, 7].iter().map(|&x| (x, p.eval(x as i128))).collect();
        assert_eq!(interpolate(&pts), Some(p));
        // non-integer interpolant
        assert_eq!(interpolate(&[(2, 0), (3, 1), (5, 0)]), None);
    }

    #[test]
    fn laurent_basics() {
        let p = LaurentPoly::new(-1, vec![1, 0, -1]); // v^-1 - v
        assert_eq!(p.bar(), LaurentPoly::new(-1, vec![-1, 0, 1]));
        assert_eq!(p.to_string(), "-v + v^-1");
        assert_eq!(LaurentPoly::monomial(-1, 3).as_unit(), Some((-1, 3)));
        assert!(p.as_unit().is_none());
        assert!(LaurentPoly::monomial(2, -1).in_negative_lattice());
        assert!(!LaurentPoly::one().in_negative_lattice());
        assert_eq!(LaurentPoly::new(-2, vec![1, 2, 3, 4]).negative_part(), LaurentPoly::new(-2, vec![1, 2]));
        assert!(LaurentPoly::new(1, vec![1]).negative_part().is_zero());
        let prod = &p * &p;
        assert_eq!(prod.div_exact(&p), Some(p.clone()));
        assert_eq!(IntPoly::new(vec![1, 1]).to_string(), "q + 1");
    }

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        (-4i32..4, proptest::collection::vec(-5i64..5, 0..5)).prop_map(|(lo, c)| LaurentPoly::new(lo, c))
    }

    proptest! {
        #[test]
        fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn eval_mod_is_multiplicative(a in laurent(), b in laurent(), x in 2u64..1000) {
            let m = (1u64 << 61) - 1;
            let lhs = (&a * &b).eval_mod(x, m);
            let rhs = ((a.eval_mod(x, m) as u128 * b.eval_mod(x, m) as u128) % m as u128) as u64;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
