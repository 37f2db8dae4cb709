use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::laurent::{divides, format_power, reduce_univariate, variable_name, IntLaurent};
use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::hopf::HopfDatum;

/// Σ_{c<N} z^{c·γ} for one generator.
fn generator_factor(d: &HopfDatum, i: usize) -> IntLaurent {
    let g = &d.generators[i];
    IntLaurent::from_i64_terms(
        d.rank,
        (0..g.nilpotency as i64).map(|c| (g.degree.iter().map(|x| c * x).collect(), 1)),
    )
}

/// The character of B, ∏_i Σ_{c<N_i} z^{c·γ_i}. It generates the ideal
/// spanned by injective classes.
pub fn ideal_generator(d: &HopfDatum) -> IntLaurent {
    (0..d.generators.len()).fold(IntLaurent::one(d.rank), |acc, i| acc.mul(&generator_factor(d, i)))
}

/// A class in K₀ of the stable category, stored as a Laurent polynomial
/// representative together with the ideal generator of its datum.
#[derive(Clone, Debug)]
pub struct K0Class {
    pub representative: IntLaurent,
    pub generator: IntLaurent,
}

impl K0Class {
    pub fn new(d: &HopfDatum, representative: IntLaurent) -> Self {
        K0Class {
            representative,
            generator: ideal_generator(d),
        }
    }

    pub fn zero(d: &HopfDatum) -> Self {
        Self::new(d, IntLaurent::zero(d.rank))
    }

    fn with(&self, representative: IntLaurent) -> Self {
        K0Class {
            representative,
            generator: self.generator.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(self.representative.add(&other.representative))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(self.representative.sub(&other.representative))
    }

    pub fn neg(&self) -> Self {
        self.with(self.representative.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with(self.representative.mul(&other.representative))
    }

    pub fn is_zero(&self) -> bool {
        divides(&self.generator, &self.representative).is_some()
    }
}

impl PartialEq for K0Class {
    fn eq(&self, other: &Self) -> bool {
        k0_equal(self, other)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

/// [M] = Σ dim M_a z^a.
pub fn k0_class(m: &Comodule) -> K0Class {
    let d = m.alg().datum();
    let rep = IntLaurent::from_terms(
        d.rank,
        m.graded_dims().into_iter().map(|(a, n)| (a, BigInt::from(n))),
    );
    K0Class::new(d, rep)
}

/// Equality modulo the ideal generated by the class of B.
pub fn k0_equal(a: &K0Class, b: &K0Class) -> bool {
    divides(&a.generator, &a.representative.sub(&b.representative)).is_some()
}

/// The unique representative of degree below the generator's, for rank 1.
pub fn reduce_rank1(d: &HopfDatum, a: &IntLaurent) -> Result<IntLaurent> {
    if d.rank != 1 {
        return Err(Error::RankUnsupported(d.rank));
    }
    reduce_univariate(&ideal_generator(d), a).ok_or_else(|| {
        Error::IncompatibleStructures("the ideal generator is not monic up to a unit".into())
    })
}

/// Factor normalized by a monomial unit so its lowest exponents are zero.
fn normalize_unit(f: &IntLaurent) -> IntLaurent {
    let m: Vec<i64> = f.min_exponents().iter().map(|x| -x).collect();
    f.shift(&m)
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Presentation {
    /// Ring presentation, e.g. `ℤ[z^{±1}]/(1+z) ≅ ℤ`.
    pub presentation: String,
    /// The ideal generator as a Laurent polynomial.
    pub ideal: String,
    /// Distinct factors after unit normalization, with multiplicities.
    pub factors: Vec<(String, u32)>,
    /// Rank 1 only: the rewriting rule for the leading power of z.
    pub normal_form: Option<String>,
}

impl fmt::Display for K0Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K0 = {}", self.presentation)?;
        write!(f, "ideal generator: {}", self.ideal)?;
        if let Some(rule) = &self.normal_form {
            write!(f, "\nnormal form: {rule}")?;
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn superscript_count(m: u32) -> String {
    format_power("", m as i64)
}

/// Recognizes the standard forms 1+z+…+z^{N−1} in one variable.
fn geometric_length(f: &IntLaurent) -> Option<u32> {
    if f.nvars() != 1 {
        return None;
    }
    let n = f.len() as i64;
    let ok = (0..n).all(|c| f.coefficient(&[c]).is_one());
    ok.then_some(n as u32)
}

pub fn k0_presentation(d: &HopfDatum) -> K0Presentation {
    let generator = ideal_generator(d);
    // grouped in generator order
    let mut factors: Vec<(IntLaurent, u32)> = Vec::new();
    for i in 0..d.generators.len() {
        let f = normalize_unit(&generator_factor(d, i));
        match factors.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => factors.push((f, 1)),
        }
    }
    let vars: Vec<String> = (0..d.rank)
        .map(|i| format!("{}^{{±1}}", variable_name(d.rank, i)))
        .collect();
    let ring = format!("ℤ[{}]", vars.join(","));
    let show = |f: &IntLaurent, m: u32, alone: bool| {
        let body = if f.len() > 1 || !alone || m > 1 {
            format!("({f})")
        } else {
            f.to_string()
        };
        if m > 1 {
            format!("{body}{}", superscript_count(m))
        } else {
            body
        }
    };
    let ideal = match factors.as_slice() {
        [] => "0".to_string(),
        [(f, m)] => {
            let s = show(f, *m, true);
            if s.starts_with('(') {
                s
            } else {
                format!("({s})")
            }
        }
        fs => format!("({})", fs.iter().map(|(f, m)| show(f, *m, false)).collect::<String>()),
    };
    let mut presentation = format!("{ring}/{ideal}");
    if let [(f, m)] = factors.as_slice() {
        match (geometric_length(f), m) {
            (Some(2), 1) => presentation.push_str(" ≅ ℤ"),
            (Some(2), m) => presentation.push_str(&format!(" ≅ ℤ[t]/t{}", superscript_count(*m))),
            (Some(p), 1) if is_prime(p) => presentation.push_str(&format!(" ≅ ℤ[ξ_{p}]")),
            _ => {}
        }
    }
    let normal_form = (d.rank == 1).then(|| {
        let g = normalize_unit(&generator);
        let deg = g.terms().map(|(e, _)| e[0]).max().unwrap_or(0);
        let lead = IntLaurent::from_i64_terms(1, [(vec![deg], 1)]);
        match reduce_univariate(&generator, &lead) {
            Some(r) => format!("{} ≡ {}", format_power("z", deg), r),
            None => "no monic normal form".to_string(),
        }
    });
    K0Presentation {
        presentation,
        ideal: generator.to_string(),
        factors: factors.iter().map(|(f, m)| (f.to_string(), *m)).collect(),
        normal_form,
    }
}

/// Scalar multiple of the unit class.
pub fn integer_class(d: &HopfDatum, n: i64) -> K0Class {
    K0Class::new(d, IntLaurent::constant(d.rank, BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{regular_b, simple, tensor};
    use crate::HopfAlgebra;

    fn z(coeffs: &[i64]) -> IntLaurent {
        IntLaurent::univariate(coeffs)
    }

    #[test]
    fn generators_of_examples() {
        assert_eq!(ideal_generator(&HopfDatum::dg()), z(&[1, 1]));
        for n in [2, 3, 5] {
            assert_eq!(ideal_generator(&HopfDatum::n_complex(n)), z(&vec![1; n as usize]));
        }
        let mixed = IntLaurent::from_i64_terms(1, [(vec![-1], 1), (vec![0], 2), (vec![1], 1)]);
        assert_eq!(ideal_generator(&HopfDatum::mixed()), mixed);
    }

    #[test]
    fn presentations() {
        assert_eq!(k0_presentation(&HopfDatum::dg()).presentation, "ℤ[z^{±1}]/(1+z) ≅ ℤ");
        assert_eq!(k0_presentation(&HopfDatum::dg()).normal_form.unwrap(), "z ≡ -1");
        assert_eq!(k0_presentation(&HopfDatum::n_complex(3)).presentation, "ℤ[z^{±1}]/(1+z+z²) ≅ ℤ[ξ_3]");
        assert_eq!(k0_presentation(&HopfDatum::n_complex(4)).presentation, "ℤ[z^{±1}]/(1+z+z²+z³)");
        assert_eq!(k0_presentation(&HopfDatum::mixed()).presentation, "ℤ[z^{±1}]/(1+z)² ≅ ℤ[t]/t²");
        let p = k0_presentation(&HopfDatum::rank_two_example());
        assert_eq!(p.presentation, "ℤ[z₁^{±1},z₂^{±1}]/((1+z₁)(1+z₂+z₂²))");
        assert!(p.normal_form.is_none());
    }

    #[test]
    fn classes_of_simples() {
        let d = HopfDatum::dg();
        let alg = HopfAlgebra::new(d.clone()).unwrap();
        for n in -3..=3 {
            let c = k0_class(&simple(&alg, &[n]).unwrap());
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, integer_class(&d, sign));
            assert_eq!(reduce_rank1(&d, &c.representative).unwrap(), z(&[sign]));
        }
        assert!(k0_class(&regular_b(&alg)).is_zero());
    }

    #[test]
    fn rank_one_only() {
        let d = HopfDatum::rank_two_example();
        assert_eq!(reduce_rank1(&d, &IntLaurent::one(2)), Err(Error::RankUnsupported(2)));
    }

    #[test]
    fn multiplicative_on_tensors() {
        let d = HopfDatum::rank_two_example();
        let alg = HopfAlgebra::new(d).unwrap();
        let b = regular_b(&alg);
        let s = simple(&alg, &[1, -2]).unwrap();
        let t = tensor(&s, &b).unwrap();
        assert_eq!(k0_class(&t).representative, k0_class(&s).mul(&k0_class(&b)).representative);
        assert!(k0_class(&t).is_zero());
        assert!(!k0_class(&s).is_zero());
    }
}
