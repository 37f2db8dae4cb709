//! Exact arithmetic in cyclotomic fields ℚ(ζ_L) and q-integers.
//!
//! An element of ℚ(ζ_L) is stored as its remainder modulo the cyclotomic
//! polynomial Φ_L, in the basis 1, ζ, …, ζ^{φ(L)−1}. Trailing zero
//! coefficients are trimmed, so rationals have at most one coefficient and
//! compare equal across orders.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{solve_affine, Field, Ring, SparseVec};

static CYCLOTOMIC: LazyLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Integer coefficients of Φ_L, lowest degree first (monic).
pub fn cyclotomic_polynomial(order: u32) -> Arc<Vec<i64>> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(p) = CYCLOTOMIC.lock().unwrap().get(&order) {
        return p.clone();
    }
    // x^L - 1 divided by every Φ_d for proper divisors d.
    let mut num = vec![0i64; order as usize + 1];
    num[0] = -1;
    num[order as usize] = 1;
    for d in 1..order {
        if order.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let out = Arc::new(num);
    CYCLOTOMIC.lock().unwrap().insert(order, out.clone());
    out
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (dd..=nd).rev() {
        let c = rem[k];
        if c != 0 {
            quo[k - dd] = c;
            for (i, di) in den.iter().enumerate() {
                rem[k - dd + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of the cyclotomic field ℚ(ζ_L).
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn from_rational(q: BigRational) -> Self {
        let mut s = CycScalar {
            order: 1,
            coeffs: vec![q],
        };
        s.trim();
        s
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Element of ℚ(ζ_order) from coefficients in the power basis; reduced
    /// modulo Φ_order.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let mut s = CycScalar { order, coeffs };
        s.reduce();
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced coefficients (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        if self.coeffs.len() > deg {
            for k in (deg..self.coeffs.len()).rev() {
                let c = std::mem::take(&mut self.coeffs[k]);
                if c.is_zero() {
                    continue;
                }
                for (i, pi) in phi.iter().enumerate().take(deg) {
                    if *pi != 0 {
                        let t = &c * BigRational::from_integer(BigInt::from(*pi));
                        self.coeffs[k - deg + i] -= t;
                    }
                }
            }
            self.coeffs.truncate(deg);
        }
        self.trim();
    }

    fn common_order(&self, other: &Self) -> u32 {
        match (self.coeffs.len() <= 1, other.coeffs.len() <= 1) {
            (true, true) => self.order.max(other.order),
            (true, false) => other.order,
            (false, true) => self.order,
            (false, false) => {
                assert_eq!(
                    self.order, other.order,
                    "arithmetic between different cyclotomic fields"
                );
                self.order
            }
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs.len() > 1 && other.coeffs.len() > 1 && self.order != other.order {
            return false;
        }
        self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        self.add_ref(&rhs)
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self.mul_ref(&rhs)
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar {
            order: 1,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for CycScalar {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl Ring for CycScalar {
    fn add_ref(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut s = CycScalar { order, coeffs };
        s.trim();
        s
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return CycScalar::zero();
        }
        let order = self.common_order(rhs);
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut s = CycScalar { order, coeffs };
        s.reduce();
        s
    }

    fn neg_ref(&self) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn from_i64(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl Field for CycScalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        // Solve (self · v) = 1 in the power basis.
        let order = self.order;
        let n = totient(order) as usize;
        let columns: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                let mut basis = vec![BigRational::zero(); j + 1];
                basis[j] = BigRational::one();
                let p = self.mul_ref(&CycScalar::from_coeffs(order, basis));
                let mut c = p.coeffs.clone();
                c.resize(n, BigRational::zero());
                c
            })
            .collect();
        let equations: Vec<(SparseVec<BigRational>, BigRational)> = (0..n)
            .map(|i| {
                let row = SparseVec::from_pairs((0..n).map(|j| (j, columns[j][i].clone())));
                let rhs = if i == 0 { BigRational::one() } else { BigRational::zero() };
                (row, rhs)
            })
            .collect();
        let sol = solve_affine(n, &equations)?;
        Some(CycScalar::from_coeffs(order, sol.to_dense(n)))
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "ζ{}", self.order)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// ζ_L^e, reduced modulo Φ_L.
pub fn root_of_unity(order: u32, e: i64) -> CycScalar {
    assert!(order >= 1);
    let k = e.rem_euclid(order as i64) as usize;
    let mut coeffs = vec![BigRational::zero(); k + 1];
    coeffs[k] = BigRational::one();
    CycScalar::from_coeffs(order, coeffs)
}

/// The q-integer 1 + q + ⋯ + q^{n−1}.
pub fn q_int(n: u32, q: &CycScalar) -> CycScalar {
    let mut acc = CycScalar::zero();
    let mut p = CycScalar::one();
    for _ in 0..n {
        acc = acc.add_ref(&p);
        p = p.mul_ref(q);
    }
    acc
}

/// The q-factorial [n]_q! = [n]_q · [n−1]_q!, with [0]! = 1.
pub fn q_factorial(n: u32, q: &CycScalar) -> CycScalar {
    (1..=n).fold(CycScalar::one(), |acc, k| acc.mul_ref(&q_int(k, q)))
}

/// Gaussian binomial coefficient, via q-factorials when they are invertible
/// and otherwise via the q-Pascal recursion.
pub fn q_binomial(n: u32, k: u32, q: &CycScalar) -> CycScalar {
    if k > n {
        return CycScalar::zero();
    }
    // [n choose k] = [n-1 choose k-1] + q^k [n-1 choose k]
    let mut row = vec![CycScalar::one()];
    for m in 1..=n {
        let mut next = vec![CycScalar::one(); m as usize + 1];
        for j in 1..m as usize {
            next[j] = row[j - 1].add_ref(&q.pow(j as i64).mul_ref(&row[j]));
        }
        row = next;
    }
    row[k as usize].clone()
}

/// True iff q^N = 1 and q^d ≠ 1 for every proper divisor d of N.
pub fn is_primitive_root(q: &CycScalar, n: u32) -> bool {
    if n == 0 || q.is_zero() {
        return false;
    }
    if !q.pow(n as i64).is_one() {
        return false;
    }
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| !q.pow(d as i64).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9).len() - 1, totient(9) as usize);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(root_of_unity(2, 1), CycScalar::from_integer(-1));
        assert_eq!(root_of_unity(4, 2), CycScalar::from_integer(-1));
        assert_eq!(root_of_unity(3, 3), CycScalar::one());
        let z = root_of_unity(12, 1);
        assert_eq!(z.pow(12), CycScalar::one());
        assert_ne!(z.pow(6), CycScalar::one());
    }

    #[test]
    fn q_integer_examples() {
        let m1 = CycScalar::from_integer(-1);
        assert!(q_int(2, &m1).is_zero());
        assert_eq!(q_int(3, &CycScalar::one()), CycScalar::from_integer(3));
        assert!(q_int(0, &m1).is_zero());
        for n in 2..8 {
            assert!(q_int(n, &root_of_unity(n, 1)).is_zero());
        }
        assert_eq!(q_factorial(3, &CycScalar::one()), CycScalar::from_integer(6));
        let z3 = root_of_unity(3, 1);
        assert_eq!(q_factorial(2, &z3), CycScalar::one().add_ref(&z3));
        assert!(q_factorial(0, &z3).is_one());
    }

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(&CycScalar::from_integer(-1), 2));
        assert!(!is_primitive_root(&CycScalar::one(), 2));
        assert!(is_primitive_root(&root_of_unity(6, 2), 3));
        assert!(!is_primitive_root(&root_of_unity(6, 2), 6));
    }

    #[test]
    fn inverse_in_q_zeta5() {
        let a = CycScalar::from_coeffs(5, vec![BigRational::from_i64(2), BigRational::from_i64(1)]);
        let b = a.inv().unwrap();
        assert!(a.mul_ref(&b).is_one());
    }

    #[test]
    fn q_binomial_matches_factorials() {
        let q = root_of_unity(7, 2);
        for n in 0..6 {
            for k in 0..=n {
                let lhs = q_binomial(n, k, &q)
                    .mul_ref(&q_factorial(k, &q))
                    .mul_ref(&q_factorial(n - k, &q));
                assert_eq!(lhs, q_factorial(n, &q));
            }
        }
    }

    #[test]
    fn display() {
        let a = CycScalar::from_coeffs(6, vec![BigRational::from_i64(1), BigRational::from_i64(-2)]);
        assert_eq!(a.to_string(), "1 - 2*ζ6");
    }
}
