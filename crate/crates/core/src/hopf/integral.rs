use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::algebra::HopfAlgebra;
use super::element::{HElement, HMonomial};
use crate::error::{Error, Result};
use crate::linalg::Ring;
use crate::scalars::CycScalar;

/// A functional on H supported on one monomial: Λ(h) = c · [coefficient of
/// `support` in h].
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralFunctional {
    pub support: HMonomial,
    pub normalization: CycScalar,
}

impl IntegralFunctional {
    pub fn eval_monomial(&self, h: &HMonomial) -> CycScalar {
        if *h == self.support {
            self.normalization.clone()
        } else {
            CycScalar::zero()
        }
    }

    pub fn eval(&self, u: &HElement) -> CycScalar {
        u.coefficient(&self.support).mul_ref(&self.normalization)
    }

    /// Λ′ = Λ∘S evaluated on u.
    pub fn eval_right(&self, alg: &HopfAlgebra, u: &HElement) -> CycScalar {
        self.eval(&alg.antipode(u))
    }
}

/// (id⊗Λ)Δ(u).
pub fn left_integral_image(alg: &HopfAlgebra, lambda: &IntegralFunctional, u: &HElement) -> HElement {
    let mut out = HElement::zero();
    for ((a, b), c) in alg.comultiply(u).iter() {
        let v = lambda.eval_monomial(b);
        if !v.is_zero() {
            out.add_term(a.clone(), c.mul_ref(&v));
        }
    }
    out
}

/// (Λ′⊗id)Δ(u) with Λ′ = Λ∘S.
pub fn right_integral_image(alg: &HopfAlgebra, lambda: &IntegralFunctional, u: &HElement) -> HElement {
    let mut out = HElement::zero();
    for ((a, b), c) in alg.comultiply(u).iter() {
        let v = lambda.eval(&alg.antipode_monomial(a));
        if !v.is_zero() {
            out.add_term(b.clone(), c.mul_ref(&v));
        }
    }
    out
}

pub fn left_identity_holds(alg: &HopfAlgebra, lambda: &IntegralFunctional, h: &HMonomial) -> bool {
    let u = HElement::basis(h.clone());
    left_integral_image(alg, lambda, &u) == alg.one().scale(&lambda.eval(&u))
}

pub fn right_identity_holds(alg: &HopfAlgebra, lambda: &IntegralFunctional, h: &HMonomial) -> bool {
    let u = HElement::basis(h.clone());
    right_integral_image(alg, lambda, &u) == alg.one().scale(&lambda.eval_right(alg, &u))
}

/// Group parts on which the left-integral identity for a candidate support
/// g^{a*}x^{top} can fail, plus a sentinel outside them.
fn verification_set(alg: &HopfAlgebra, a_star: &[i64]) -> Vec<HMonomial> {
    let mut out = Vec::new();
    for p in 0..alg.pbw_count() {
        let mut groups: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (m, _, _) in alg.pbw_coproduct(p) {
            // the right factor of Δ(g^b x^p) has group part b + deg m
            groups.insert(a_star.iter().zip(alg.pbw_degree(*m)).map(|(a, d)| a - d).collect());
        }
        let sentinel: Vec<i64> = a_star.iter().map(|a| a + 1000).collect();
        groups.insert(sentinel);
        for b in groups {
            out.push(alg.monomial(b, p));
        }
    }
    out
}

/// The left integral, found by searching group shifts a* = −Σc_iγ_i for a
/// support g^{a*}x^{top} and verifying the identity h₁Λ(h₂) = Λ(h)1.
pub fn left_integral(alg: &HopfAlgebra) -> Result<IntegralFunctional> {
    let mut candidates: Vec<Vec<i64>> = vec![vec![0; alg.rank()]];
    let mut seen: BTreeSet<Vec<i64>> = candidates.iter().cloned().collect();
    for p in 0..alg.pbw_count() {
        let a: Vec<i64> = alg.pbw_degree(p).iter().map(|d| -d).collect();
        if seen.insert(a.clone()) {
            candidates.push(a);
        }
    }
    for a_star in candidates {
        let lambda = IntegralFunctional {
            support: alg.monomial(a_star.clone(), alg.top()),
            normalization: CycScalar::one(),
        };
        if verification_set(alg, &a_star)
            .iter()
            .all(|h| left_identity_holds(alg, &lambda, h))
        {
            return Ok(lambda);
        }
    }
    Err(Error::NoIntegralFound)
}

/// Group element a_D with ρ(x^top) containing x^top ⊗ g^{a_D}.
pub fn quantum_determinant(alg: &HopfAlgebra) -> Result<Vec<i64>> {
    let top = alg.monomial(vec![0; alg.rank()], alg.top());
    let delta = alg.comultiply(&HElement::basis(top.clone()));
    let paired: Vec<(&HMonomial, &CycScalar)> = delta
        .iter()
        .filter(|((l, _), _)| *l == top)
        .map(|((_, r), c)| (r, c))
        .collect();
    let [(r, c)] = paired.as_slice() else {
        return Err(Error::MalformedTop);
    };
    if !r.is_group_like() || !c.is_one() {
        return Err(Error::MalformedTop);
    }
    let g = HElement::basis((*r).clone());
    let dg = alg.comultiply(&g);
    if dg.len() != 1 || !dg.coefficient(&((*r).clone(), (*r).clone())).is_one() {
        return Err(Error::MalformedTop);
    }
    Ok(r.group.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfDatum;

    #[test]
    fn integrals_of_named_data() {
        for (datum, det) in [
            (HopfDatum::dg(), vec![1]),
            (HopfDatum::n_complex(3), vec![2]),
            (HopfDatum::n_complex(5), vec![4]),
            (HopfDatum::mixed(), vec![0]),
            (HopfDatum::rank_two_example(), vec![1, 2]),
        ] {
            let alg = HopfAlgebra::new(datum).unwrap();
            let lambda = left_integral(&alg).unwrap();
            assert_eq!(lambda.support.group, vec![0; alg.rank()]);
            assert_eq!(lambda.support.pbw, alg.pbw(alg.top()).to_vec());
            assert_eq!(quantum_determinant(&alg).unwrap(), det);
        }
    }

    #[test]
    fn integral_kills_unit() {
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        let lambda = left_integral(&alg).unwrap();
        assert!(lambda.eval(&alg.one()).is_zero());
        for h in alg.monomials_in_box(2) {
            assert!(left_identity_holds(&alg, &lambda, &h));
            assert!(right_identity_holds(&alg, &lambda, &h));
        }
    }

    #[test]
    fn wrong_support_fails() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let bad = IntegralFunctional {
            support: alg.monomial(vec![1], alg.top()),
            normalization: CycScalar::one(),
        };
        assert!(!alg
            .monomials_in_box(2)
            .iter()
            .all(|h| left_identity_holds(&alg, &bad, h)));
    }
}
