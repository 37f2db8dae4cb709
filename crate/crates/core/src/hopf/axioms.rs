//! Exhaustive and randomized checks of the Hopf algebra axioms.

use rand::Rng;
use serde::Serialize;

use super::algebra::HopfAlgebra;
use super::element::{HElement, HMonomial, HTensorElement};
use super::integral::{left_identity_holds, left_integral, right_identity_holds};
use crate::linalg::Ring;

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

impl AxiomCheck {
    fn run<T>(name: &str, cases: &[T], ok: impl Fn(&T) -> bool, show: impl Fn(&T) -> String) -> Self {
        let failure = cases.iter().find(|c| !ok(c)).map(show);
        AxiomCheck {
            name: name.to_string(),
            cases: cases.len(),
            passed: failure.is_none(),
            failure,
        }
    }
}

fn random_monomial<R: Rng>(alg: &HopfAlgebra, rng: &mut R, radius: i64) -> HMonomial {
    let g = (0..alg.rank()).map(|_| rng.gen_range(-radius..=radius)).collect();
    alg.monomial(g, rng.gen_range(0..alg.pbw_count()))
}

/// Runs every axiom on the monomials with group part in a ±`radius` box,
/// plus `random_trials` random products for associativity and
/// multiplicativity of Δ.
pub fn check_hopf_axioms<R: Rng>(alg: &HopfAlgebra, radius: i64, random_trials: usize, rng: &mut R) -> Vec<AxiomCheck> {
    let monos = alg.monomials_in_box(radius);
    let mut out = Vec::new();

    let triples: Vec<[HMonomial; 3]> = (0..random_trials)
        .map(|_| std::array::from_fn(|_| random_monomial(alg, rng, radius)))
        .collect();
    out.push(AxiomCheck::run(
        "associativity",
        &triples,
        |[a, b, c]| {
            let (a, b, c) = (HElement::basis(a.clone()), HElement::basis(b.clone()), HElement::basis(c.clone()));
            alg.multiply(&alg.multiply(&a, &b), &c) == alg.multiply(&a, &alg.multiply(&b, &c))
        },
        |[a, b, c]| format!("({a})({b})({c})"),
    ));

    out.push(AxiomCheck::run(
        "coassociativity",
        &monos,
        |h| {
            let u = HElement::basis(h.clone());
            alg.coassoc_left(&u) == alg.coassoc_right(&u)
        },
        |h| h.to_string(),
    ));

    out.push(AxiomCheck::run(
        "counit",
        &monos,
        |h| {
            let u = HElement::basis(h.clone());
            let d = alg.comultiply(&u);
            let mut left = HElement::zero();
            let mut right = HElement::zero();
            for ((a, b), c) in d.iter() {
                left.add_term(b.clone(), c.mul_ref(&alg.counit(&HElement::basis(a.clone()))));
                right.add_term(a.clone(), c.mul_ref(&alg.counit(&HElement::basis(b.clone()))));
            }
            left == u && right == u
        },
        |h| h.to_string(),
    ));

    let pairs: Vec<[HMonomial; 2]> = (0..random_trials)
        .map(|_| std::array::from_fn(|_| random_monomial(alg, rng, radius)))
        .collect();
    out.push(AxiomCheck::run(
        "bialgebra",
        &pairs,
        |[a, b]| {
            let (a, b) = (HElement::basis(a.clone()), HElement::basis(b.clone()));
            let lhs = alg.comultiply(&alg.multiply(&a, &b));
            let rhs: HTensorElement = alg.multiply_tensors(&alg.comultiply(&a), &alg.comultiply(&b));
            lhs == rhs
        },
        |[a, b]| format!("({a})({b})"),
    ));

    out.push(AxiomCheck::run(
        "antipode",
        &monos,
        |h| {
            let u = HElement::basis(h.clone());
            let e = alg.one().scale(&alg.counit(&u));
            alg.antipode_convolution(&u, true) == e && alg.antipode_convolution(&u, false) == e
        },
        |h| h.to_string(),
    ));

    match left_integral(alg) {
        Ok(lambda) => {
            out.push(AxiomCheck::run(
                "left integral",
                &monos,
                |h| left_identity_holds(alg, &lambda, h),
                |h| h.to_string(),
            ));
            out.push(AxiomCheck::run(
                "right integral",
                &monos,
                |h| right_identity_holds(alg, &lambda, h),
                |h| h.to_string(),
            ));
        }
        Err(e) => out.push(AxiomCheck {
            name: "left integral".into(),
            cases: 0,
            passed: false,
            failure: Some(e.to_string()),
        }),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{HopfDatum, Orientation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_data_satisfy_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed(), HopfDatum::rank_two_example()] {
            let alg = HopfAlgebra::new(d.clone()).unwrap();
            for c in check_hopf_axioms(&alg, 1, 30, &mut rng) {
                assert!(c.passed, "{:?}: {} failed at {:?}", d, c.name, c.failure);
            }
        }
    }

    #[test]
    fn inverse_orientation_is_also_a_hopf_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let alg = HopfAlgebra::new(HopfDatum::n_complex(4).with_orientation(Orientation::Inverse)).unwrap();
        assert!(check_hopf_axioms(&alg, 1, 20, &mut rng).iter().all(|c| c.passed));
    }
}
