use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::linalg::{Field, Ring};

/// Sparse Laurent polynomial in `nvars` variables over a commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<R> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, R>,
}

/// Laurent polynomials with integer coefficients, i.e. ℤ[ℤʳ].
pub type IntLaurent = LaurentPoly<BigInt>;

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], R::one())
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Vec<i64>, c: R) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable z_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, R)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: R) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(cur) => {
                *cur = cur.add_ref(&c);
                if cur.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> R {
        self.terms.get(exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, x) in self.terms() {
            p.add_term(e.clone(), x.mul_ref(c));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.mul_ref(c2));
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Multiplies by the monomial z^shift.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent; zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.nvars, self.terms().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Leading term under graded-lex order (total degree, then lex).
    fn leading(&self) -> Option<(&Vec<i64>, &R)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex(a, b))
    }
}

fn grlex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl IntLaurent {
    pub fn from_i64_terms<I: IntoIterator<Item = (Vec<i64>, i64)>>(nvars: usize, terms: I) -> Self {
        Self::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    }

    /// The univariate polynomial Σ c_i z^i.
    pub fn univariate(coeffs: &[i64]) -> Self {
        Self::from_i64_terms(1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as i64], *c)))
    }

    fn to_rational(&self) -> LaurentPoly<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

/// Divides `p` by `f` in ℚ[z^±] after shifting both to ordinary polynomials.
/// Returns the quotient when the remainder vanishes.
fn divide_rational<F: Field>(f: &LaurentPoly<F>, p: &LaurentPoly<F>) -> Option<LaurentPoly<F>> {
    assert!(!f.is_zero(), "division by the zero polynomial");
    let n = f.nvars;
    if p.is_zero() {
        return Some(LaurentPoly::zero(n));
    }
    let fmin = f.min_exponents();
    let pmin = p.min_exponents();
    let f0 = f.shift(&fmin.iter().map(|x| -x).collect::<Vec<_>>());
    let mut r = p.shift(&pmin.iter().map(|x| -x).collect::<Vec<_>>());
    let (lt_e, lt_c) = f0.leading().map(|(e, c)| (e.clone(), c.clone()))?;
    let lt_inv = lt_c.inv()?;
    let mut q = LaurentPoly::zero(n);
    // Single-divisor division: a principal ideal's generator is a Gröbner
    // basis, so the remainder vanishes iff p lies in the ideal.
    while let Some((e, c)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
        if e.iter().zip(&lt_e).any(|(a, b)| a < b) {
            return None;
        }
        let qe: Vec<i64> = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
        let qc = c.mul_ref(&lt_inv);
        let t = LaurentPoly::monomial(qe, qc);
        r = r.sub(&t.mul(&f0));
        q = q.add(&t);
    }
    // p = z^pmin·r₀ = z^pmin·q·f0 = z^{pmin−fmin}·q·f
    Some(q.shift(&pmin.iter().zip(&fmin).map(|(a, b)| a - b).collect::<Vec<_>>()))
}

/// Quotient p / f in ℤ[z^±] when f divides p there.
pub fn divides(f: &IntLaurent, p: &IntLaurent) -> Option<IntLaurent> {
    let q = divide_rational(&f.to_rational(), &p.to_rational())?;
    let mut out = IntLaurent::zero(f.nvars);
    for (e, c) in q.terms() {
        if !c.is_integer() {
            return None;
        }
        out.add_term(e.clone(), c.to_integer());
    }
    Some(out)
}

/// Remainder of `a` modulo the univariate generator `f`, taken among
/// polynomials of degree below deg f. Needs f to have unit leading and
/// constant coefficients after shifting, so that z is invertible modulo f.
pub fn reduce_univariate(f: &IntLaurent, a: &IntLaurent) -> Option<IntLaurent> {
    assert_eq!(f.nvars, 1);
    let fmin = f.min_exponents()[0];
    let f0 = f.shift(&[-fmin]);
    let deg = *f0.terms.keys().last()?.first()?;
    let lead = f0.coefficient(&[deg]);
    let c0 = f0.coefficient(&[0]);
    if !lead.abs().is_one() || !c0.abs().is_one() || deg == 0 {
        return None;
    }
    let rem = |p: &IntLaurent| -> IntLaurent {
        let mut r = p.clone();
        loop {
            let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (e[0], c.clone())) else {
                return r;
            };
            if e < deg {
                return r;
            }
            let t = IntLaurent::monomial(vec![e - deg], c * &lead);
            r = r.sub(&t.mul(&f0));
        }
    };
    // z⁻¹ ≡ −c0⁻¹·(f0 − c0)/z modulo f0
    let zinv = f0
        .sub(&IntLaurent::constant(1, c0.clone()))
        .shift(&[-1])
        .scale(&(-&c0));
    let amin = a.min_exponents()[0];
    let mut r = rem(&a.shift(&[-amin]));
    let (unit, count) = if amin < 0 {
        (zinv, -amin)
    } else {
        (IntLaurent::var(1, 0), amin)
    };
    for _ in 0..count {
        r = rem(&r.mul(&unit));
    }
    Some(r)
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|ch| DIGITS[ch.to_digit(10).unwrap() as usize])
        .collect()
}

/// Name of the i-th variable: `z` in one variable, `z₁, z₂, …` otherwise.
pub fn variable_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "z".to_string()
    } else {
        format!("z{}", subscript(i + 1))
    }
}

pub fn format_power(base: &str, e: i64) -> String {
    match e {
        1 => base.to_string(),
        _ => format!("{base}{}", superscript(e)),
    }
}

fn format_monomial(exp: &[i64]) -> String {
    exp.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| format_power(&variable_name(exp.len(), i), *e))
        .collect()
}

impl<R: Ring + fmt::Display + Signed> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<i64>, &R)> = self.terms().collect();
        terms.sort_by(|a, b| grlex(a.0, b.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = format_monomial(e);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(coeffs: &[i64]) -> IntLaurent {
        IntLaurent::univariate(coeffs)
    }

    #[test]
    fn division_examples() {
        let f = z(&[1, 2, 1]);
        let p = z(&[-1, -1, 1, 1]);
        assert_eq!(divides(&f, &p), Some(z(&[-1, 1])));
        assert_eq!(divides(&z(&[1, 1]), &z(&[1, 1])), Some(z(&[1])));
        assert_eq!(divides(&z(&[1, 1]), &z(&[0, 1])), None);
        assert_eq!(divides(&z(&[2]), &z(&[1])), None);
    }

    #[test]
    fn laurent_membership() {
        // z⁻¹ + 2 + z = z⁻¹(1+z)² divides z⁻² + 2z⁻¹ + 1
        let f = IntLaurent::from_i64_terms(1, [(vec![-1], 1), (vec![0], 2), (vec![1], 1)]);
        let p = IntLaurent::from_i64_terms(1, [(vec![-2], 1), (vec![-1], 2), (vec![0], 1)]);
        assert_eq!(divides(&f, &p), Some(IntLaurent::from_i64_terms(1, [(vec![-1], 1)])));
    }

    #[test]
    fn rank_two_membership() {
        let z1 = IntLaurent::var(2, 0);
        let z2 = IntLaurent::var(2, 1);
        let one = IntLaurent::one(2);
        let f = one.add(&z1).mul(&one.add(&z2).add(&z2.mul(&z2)));
        let q = z1.sub(&z2.shift(&[-3, 1]));
        assert_eq!(divides(&f, &f.mul(&q)), Some(q));
        assert_eq!(divides(&f, &one.add(&z1)), None);
    }

    #[test]
    fn rank_one_reduction() {
        let f = z(&[1, 1]);
        let z5 = IntLaurent::from_i64_terms(1, [(vec![5], 1)]);
        assert_eq!(reduce_univariate(&f, &z5), Some(z(&[-1])));
        let f3 = z(&[1, 1, 1]);
        let z3 = IntLaurent::from_i64_terms(1, [(vec![3], 1)]);
        assert_eq!(reduce_univariate(&f3, &z3), Some(z(&[1])));
        assert_eq!(reduce_univariate(&f, &IntLaurent::zero(1)), Some(IntLaurent::zero(1)));
        let zinv = IntLaurent::from_i64_terms(1, [(vec![-3], 1)]);
        assert_eq!(reduce_univariate(&f, &zinv), Some(z(&[-1])));
    }

    #[test]
    fn display() {
        let p = IntLaurent::from_i64_terms(1, [(vec![-1], 1), (vec![0], 2), (vec![1], 1)]);
        assert_eq!(p.to_string(), "z⁻¹+2+z");
        let q = IntLaurent::from_i64_terms(2, [(vec![0, 0], 1), (vec![0, 2], -3)]);
        assert_eq!(q.to_string(), "1-3z₂²");
    }
}
