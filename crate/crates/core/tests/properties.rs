use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hopfology::comodule::{direct_sum, regular_b, tensor};
use hopfology::homology::hn;
use hopfology::hopf::{HElement, HMonomial};
use hopfology::ktheory::{k0_class, k0_equal, IntLaurent};
use hopfology::linalg::{Echelon, Field, Ring, SparseVec};
use hopfology::random::{random_comodule, trial_rng, Limits};
use hopfology::scalars::{is_primitive_root, q_binomial, q_int, root_of_unity};
use hopfology::stable::{suspend, ul_hom_dim};
use hopfology::{CycScalar, HopfAlgebra, HopfDatum};

const ORDERS: [u32; 5] = [1, 2, 3, 4, 6];

fn scalar(order: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec((-4i64..=4, 1i64..=3), order as usize).prop_map(move |cs| {
        cs.iter().enumerate().fold(CycScalar::zero(), |acc, (e, &(n, d))| {
            acc.add_ref(&CycScalar::from_fraction(n, d).mul_ref(&root_of_unity(order, e as i64)))
        })
    })
}

fn scalar_triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|l| (scalar(l), scalar(l), scalar(l)))
}

fn datum() -> impl Strategy<Value = HopfDatum> {
    prop::sample::select(vec![
        HopfDatum::dg(),
        HopfDatum::n_complex(3),
        HopfDatum::mixed(),
        HopfDatum::rank_two_example(),
    ])
}

fn small_limits() -> Limits {
    Limits {
        max_dim: 6,
        ..Limits::default()
    }
}

proptest! {
    #[test]
    fn cyclotomic_field_axioms((a, b, c) in scalar_triple()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        match a.inv() {
            Some(i) => prop_assert!(a.mul_ref(&i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn roots_of_unity_multiply_by_exponent(l in 1u32..=12, e in -30i64..30, f in -30i64..30) {
        prop_assert_eq!(root_of_unity(l, e).mul_ref(&root_of_unity(l, f)), root_of_unity(l, e + f));
        prop_assert!(root_of_unity(l, l as i64).is_one());
    }

    #[test]
    fn q_binomials_vanish_at_primitive_roots(n in 2u32..=8, k in 1u32..8) {
        let q = root_of_unity(n, 1);
        prop_assert!(is_primitive_root(&q, n));
        prop_assert!(q_int(n, &q).is_zero());
        if k < n {
            prop_assert!(q_binomial(n, k, &q).is_zero());
        }
    }

    #[test]
    fn q_binomial_is_symmetric(l in 1u32..=6, e in 0i64..6, n in 0u32..7, k in 0u32..7) {
        let q = root_of_unity(l, e);
        prop_assume!(k <= n);
        prop_assert_eq!(q_binomial(n, k, &q), q_binomial(n, n - k, &q));
    }

    #[test]
    fn bicharacter_is_multiplicative(
        d in datum(),
        a in prop::collection::vec(-4i64..=4, 2),
        b in prop::collection::vec(-4i64..=4, 2),
        c in prop::collection::vec(-4i64..=4, 2),
    ) {
        let alg = HopfAlgebra::new(d).unwrap();
        let r = alg.rank();
        let (a, b, c) = (&a[..r], &b[..r], &c[..r]);
        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let chi = |x: &[i64], y: &[i64]| alg.zeta(alg.chi_exp(x, y)).clone();
        prop_assert_eq!(chi(&ab, c), chi(a, c).mul_ref(&chi(b, c)));
        prop_assert_eq!(chi(c, &ab), chi(c, a).mul_ref(&chi(c, b)));
    }

    #[test]
    fn monomial_multiplication_is_associative(d in datum(), picks in prop::collection::vec((any::<prop::sample::Index>(), -2i64..=2, -2i64..=2), 3)) {
        let alg = HopfAlgebra::new(d).unwrap();
        let r = alg.rank();
        let ms: Vec<_> = picks
            .iter()
            .map(|(i, x, y)| alg.monomial([*x, *y][..r].to_vec(), i.index(alg.pbw_count())))
            .collect();
        let el = |m: &HMonomial| HElement::from_terms([(m.clone(), CycScalar::one())]);
        let (u, v, w) = (el(&ms[0]), el(&ms[1]), el(&ms[2]));
        prop_assert_eq!(alg.multiply(&alg.multiply(&u, &v), &w), alg.multiply(&u, &alg.multiply(&v, &w)));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..6)) {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let vecs = rows.iter().map(|r| SparseVec::from_dense(&r.iter().map(|&x| q(x)).collect::<Vec<_>>()));
        let ech = Echelon::from_rows(5, vecs);
        let null = ech.nullspace();
        prop_assert_eq!(ech.rank() + null.len(), 5);
        for v in &null {
            for r in &rows {
                let dense: Vec<BigRational> = r.iter().map(|&x| q(x)).collect();
                prop_assert!(v.dot_dense(&dense).is_zero());
            }
        }
    }

    #[test]
    fn laurent_ring_axioms(
        f in prop::collection::vec((-3i64..=3, -3i64..=3), 0..4),
        g in prop::collection::vec((-3i64..=3, -3i64..=3), 0..4),
        h in prop::collection::vec((-3i64..=3, -3i64..=3), 0..4),
    ) {
        let poly = |ts: &[(i64, i64)]| IntLaurent::from_i64_terms(1, ts.iter().map(|&(e, c)| (vec![e], c)));
        let (f, g, h) = (poly(&f), poly(&g), poly(&h));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn homology_is_additive(d in datum(), seed in any::<u64>(), n in -1i64..=1) {
        let alg = HopfAlgebra::new(d).unwrap();
        let mut rng = trial_rng(seed, 0);
        let m = random_comodule(&alg, &mut rng, &small_limits());
        let k = random_comodule(&alg, &mut rng, &small_limits());
        let s = direct_sum(&m, &k).unwrap();
        prop_assert_eq!(hn(&s, n).unwrap(), hn(&m, n).unwrap() + hn(&k, n).unwrap());
    }

    #[test]
    fn suspension_shifts_homology(d in datum(), seed in any::<u64>(), n in -1i64..=1) {
        let alg = HopfAlgebra::new(d).unwrap();
        let m = random_comodule(&alg, &mut trial_rng(seed, 1), &small_limits());
        prop_assert_eq!(hn(&suspend(&m).unwrap(), n).unwrap(), hn(&m, n - 1).unwrap());
    }

    #[test]
    fn injectives_are_stably_zero(d in datum(), seed in any::<u64>()) {
        let alg = HopfAlgebra::new(d).unwrap();
        let m = random_comodule(&alg, &mut trial_rng(seed, 2), &small_limits());
        let mb = tensor(&m, &regular_b(&alg)).unwrap();
        prop_assert_eq!(hn(&mb, 0).unwrap(), 0);
        prop_assert_eq!(ul_hom_dim(&m, &regular_b(&alg)).unwrap(), 0);
        prop_assert!(k0_class(&mb).is_zero());
    }

    #[test]
    fn k0_class_is_additive_and_multiplicative(d in datum(), seed in any::<u64>()) {
        let alg = HopfAlgebra::new(d).unwrap();
        let mut rng = trial_rng(seed, 3);
        let m = random_comodule(&alg, &mut rng, &small_limits());
        let k = random_comodule(&alg, &mut rng, &small_limits());
        let (cm, ck) = (k0_class(&m), k0_class(&k));
        prop_assert!(k0_equal(&k0_class(&direct_sum(&m, &k).unwrap()), &cm.add(&ck)));
        prop_assert!(k0_equal(&k0_class(&tensor(&m, &k).unwrap()), &cm.mul(&ck)));
    }
}
