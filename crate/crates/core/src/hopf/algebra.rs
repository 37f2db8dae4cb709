use std::sync::Arc;

use num_traits::{One, Zero};

use super::datum::{HopfDatum, Orientation};
use super::element::{HElement, HMonomial, HTensor3Element, HTensorElement};
use crate::error::{Error, Result};
use crate::linalg::Ring;
use crate::scalars::{root_of_unity, CycScalar};

/// A validated datum together with the tables the rewriting engine needs.
///
/// PBW exponent vectors are indexed in mixed radix with the first generator
/// most significant, so index order agrees with lexicographic order and
/// index 0 is the empty monomial.
#[derive(Clone)]
pub struct HopfAlgebra(Arc<Inner>);

struct Inner {
    datum: HopfDatum,
    sign: i64,
    nil: Vec<u32>,
    strides: Vec<usize>,
    pbw_count: usize,
    pbw_vectors: Vec<Vec<u32>>,
    pbw_degrees: Vec<Vec<i64>>,
    /// Unsigned exponent of the reordering scalar for x^p·x^q.
    pair_exp: Vec<Vec<i64>>,
    zeta: Vec<CycScalar>,
    /// Δ(x^p) = Σ c · x^m ⊗ g^{deg m} x^n, stored as (m, n, c).
    coproduct: Vec<Vec<(usize, usize, CycScalar)>>,
    /// c_{m,n}, the coefficient of x^m ⊗ g^{deg m}x^n in Δ(x^{m+n}).
    split: Vec<Vec<CycScalar>>,
    antipode_pbw: Vec<HElement>,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("HopfAlgebra").field(&self.0.datum).finish()
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.datum == other.0.datum
    }
}

impl HopfAlgebra {
    pub fn new(datum: HopfDatum) -> Result<Self> {
        let report = datum.validate();
        if !report.valid {
            return Err(Error::InvalidDatum(report.violations.join("; ")));
        }
        let nil: Vec<u32> = datum.generators.iter().map(|g| g.nilpotency).collect();
        let m = nil.len();
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * nil[i + 1] as usize;
        }
        let pbw_count: usize = nil.iter().map(|n| *n as usize).product();
        let pbw_vectors: Vec<Vec<u32>> = (0..pbw_count)
            .map(|mut idx| {
                strides
                    .iter()
                    .map(|s| {
                        let e = idx / s;
                        idx %= s;
                        e as u32
                    })
                    .collect()
            })
            .collect();
        let pbw_degrees: Vec<Vec<i64>> = pbw_vectors
            .iter()
            .map(|p| {
                let mut d = vec![0i64; datum.rank];
                for (g, e) in datum.generators.iter().zip(p) {
                    for (k, x) in g.degree.iter().enumerate() {
                        d[k] += x * *e as i64;
                    }
                }
                d
            })
            .collect();
        let l = datum.cyclotomic_order as i64;
        let q: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| datum.q_exponent(i, j)).collect()).collect();
        let pair_exp: Vec<Vec<i64>> = pbw_vectors
            .iter()
            .map(|p| {
                pbw_vectors
                    .iter()
                    .map(|qv| {
                        let mut s = 0i64;
                        for i in 0..m {
                            for j in i + 1..m {
                                s += p[j] as i64 * qv[i] as i64 * q[i][j];
                            }
                        }
                        s.rem_euclid(l)
                    })
                    .collect()
            })
            .collect();
        let zeta = (0..l).map(|e| root_of_unity(datum.cyclotomic_order, e)).collect();
        let sign = match datum.orientation {
            Orientation::Standard => 1,
            Orientation::Inverse => -1,
        };
        let base = HopfAlgebra(Arc::new(Inner {
            datum,
            sign,
            nil,
            strides,
            pbw_count,
            pbw_vectors,
            pbw_degrees,
            pair_exp,
            zeta,
            coproduct: Vec::new(),
            split: Vec::new(),
            antipode_pbw: Vec::new(),
        }));
        // The tables below only use the fields filled in so far.
        let coproduct = base.compute_pbw_coproducts()?;
        let mut split = vec![vec![CycScalar::zero(); pbw_count]; pbw_count];
        for terms in &coproduct {
            for (mi, ni, c) in terms {
                split[*mi][*ni] = c.clone();
            }
        }
        let antipode_pbw = base.compute_pbw_antipodes();
        let mut inner = Arc::try_unwrap(base.0).unwrap_or_else(|_| unreachable!());
        inner.coproduct = coproduct;
        inner.split = split;
        inner.antipode_pbw = antipode_pbw;
        Ok(HopfAlgebra(Arc::new(inner)))
    }

    pub fn datum(&self) -> &HopfDatum {
        &self.0.datum
    }

    pub fn rank(&self) -> usize {
        self.0.datum.rank
    }

    pub fn order(&self) -> u32 {
        self.0.datum.cyclotomic_order
    }

    pub fn generator_count(&self) -> usize {
        self.0.nil.len()
    }

    pub fn nilpotency(&self) -> &[u32] {
        &self.0.nil
    }

    /// Number of PBW monomials, i.e. dim B.
    pub fn pbw_count(&self) -> usize {
        self.0.pbw_count
    }

    pub fn pbw(&self, idx: usize) -> &[u32] {
        &self.0.pbw_vectors[idx]
    }

    pub fn pbw_index(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for ((e, n), s) in exps.iter().zip(&self.0.nil).zip(&self.0.strides) {
            if e >= n {
                return None;
            }
            idx += *e as usize * s;
        }
        Some(idx)
    }

    /// Index of the generator x_i as a PBW monomial.
    pub fn generator_index(&self, i: usize) -> usize {
        self.0.strides[i]
    }

    /// Σ p_i γ_i.
    pub fn pbw_degree(&self, idx: usize) -> &[i64] {
        &self.0.pbw_degrees[idx]
    }

    pub fn pbw_total(&self, idx: usize) -> u32 {
        self.0.pbw_vectors[idx].iter().sum()
    }

    /// The monomial x^top with every exponent at N_i − 1.
    pub fn top(&self) -> usize {
        self.0.pbw_count - 1
    }

    pub fn top_total(&self) -> u32 {
        self.0.nil.iter().map(|n| n - 1).sum()
    }

    /// PBW index of x^p·x^q when it is nonzero.
    pub fn pbw_add(&self, p: usize, q: usize) -> Option<usize> {
        let v: Vec<u32> = self.pbw(p).iter().zip(self.pbw(q)).map(|(a, b)| a + b).collect();
        self.pbw_index(&v)
    }

    /// PBW index of x^{p−q} when q ≤ p componentwise.
    pub fn pbw_sub(&self, p: usize, q: usize) -> Option<usize> {
        let mut v = Vec::with_capacity(self.generator_count());
        for (a, b) in self.pbw(p).iter().zip(self.pbw(q)) {
            if b > a {
                return None;
            }
            v.push(a - b);
        }
        self.pbw_index(&v)
    }

    pub fn zeta(&self, e: i64) -> &CycScalar {
        &self.0.zeta[e.rem_euclid(self.order() as i64) as usize]
    }

    /// Signed exponent of χ(a,b) under the engine's orientation.
    pub fn chi_exp(&self, a: &[i64], b: &[i64]) -> i64 {
        (self.0.sign * self.0.datum.form(a, b)).rem_euclid(self.order() as i64)
    }

    /// Exponent e such that x^p·g^b x^q = ζ^e g^b x^{p+q} (before nilpotency).
    pub fn commutation_exp(&self, p: usize, b: &[i64], q: usize) -> i64 {
        let e = self.0.datum.form(b, self.pbw_degree(p)) + self.0.pair_exp[p][q];
        (-self.0.sign * e).rem_euclid(self.order() as i64)
    }

    /// Product of normal-form monomials.
    pub fn multiply_monomials(&self, u: &HMonomial, v: &HMonomial) -> Option<(CycScalar, HMonomial)> {
        let p = self.pbw_index(&u.pbw).expect("monomial outside PBW bounds");
        let q = self.pbw_index(&v.pbw).expect("monomial outside PBW bounds");
        let s = self.pbw_add(p, q)?;
        let e = self.commutation_exp(p, &v.group, q);
        let group = u.group.iter().zip(&v.group).map(|(a, b)| a + b).collect();
        Some((self.zeta(e).clone(), HMonomial::new(group, self.pbw(s).to_vec())))
    }

    pub fn one(&self) -> HElement {
        HElement::basis(self.group_monomial(vec![0; self.rank()]))
    }

    pub fn group_monomial(&self, a: Vec<i64>) -> HMonomial {
        HMonomial::group_like(a, self.generator_count())
    }

    pub fn monomial(&self, a: Vec<i64>, pbw: usize) -> HMonomial {
        HMonomial::new(a, self.pbw(pbw).to_vec())
    }

    pub fn generator(&self, i: usize) -> HElement {
        HElement::basis(self.monomial(vec![0; self.rank()], self.generator_index(i)))
    }

    pub fn multiply(&self, u: &HElement, v: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                if let Some((c, m)) = self.multiply_monomials(a, b) {
                    out.add_term(m, c.mul_ref(ca).mul_ref(cb));
                }
            }
        }
        out
    }

    pub fn multiply_tensors(&self, u: &HTensorElement, v: &HTensorElement) -> HTensorElement {
        let mut out = HTensorElement::zero();
        for ((a1, a2), ca) in u.iter() {
            for ((b1, b2), cb) in v.iter() {
                let Some((c1, m1)) = self.multiply_monomials(a1, b1) else {
                    continue;
                };
                let Some((c2, m2)) = self.multiply_monomials(a2, b2) else {
                    continue;
                };
                out.add_term((m1, m2), c1.mul_ref(&c2).mul_ref(ca).mul_ref(cb));
            }
        }
        out
    }

    fn generator_coproduct(&self, i: usize) -> HTensorElement {
        let zero = vec![0; self.rank()];
        let x = self.monomial(zero.clone(), self.generator_index(i));
        let g = self.group_monomial(self.0.datum.generators[i].degree.clone());
        let one = self.group_monomial(zero);
        HTensorElement::from_terms([((x.clone(), g), CycScalar::one()), ((one, x), CycScalar::one())])
    }

    fn compute_pbw_coproducts(&self) -> Result<Vec<Vec<(usize, usize, CycScalar)>>> {
        let zero = vec![0; self.rank()];
        let gens: Vec<HTensorElement> = (0..self.generator_count()).map(|i| self.generator_coproduct(i)).collect();
        let mut out = Vec::with_capacity(self.pbw_count());
        for p in 0..self.pbw_count() {
            let one = self.group_monomial(zero.clone());
            let mut acc = HTensorElement::basis((one.clone(), one));
            for (i, e) in self.pbw(p).to_vec().into_iter().enumerate() {
                for _ in 0..e {
                    acc = self.multiply_tensors(&acc, &gens[i]);
                }
            }
            let mut terms = Vec::new();
            for ((l, r), c) in acc.iter() {
                let m = self.pbw_index(&l.pbw).unwrap();
                let n = self.pbw_index(&r.pbw).unwrap();
                if l.group != zero || r.group != self.pbw_degree(m) || self.pbw_add(m, n) != Some(p) {
                    return Err(Error::InvalidDatum(format!(
                        "coproduct of PBW monomial {p} has an unexpected term"
                    )));
                }
                terms.push((m, n, c.clone()));
            }
            out.push(terms);
        }
        Ok(out)
    }

    fn compute_pbw_antipodes(&self) -> Vec<HElement> {
        let zero = vec![0; self.rank()];
        let s_gen: Vec<HElement> = (0..self.generator_count())
            .map(|i| {
                let inv = self.group_monomial(self.0.datum.generators[i].degree.iter().map(|x| -x).collect());
                self.multiply(&self.generator(i), &HElement::basis(inv))
                    .scale(&CycScalar::from_integer(-1))
            })
            .collect();
        (0..self.pbw_count())
            .map(|p| {
                // S(x₁^{p₁}⋯x_m^{p_m}) = S(x_m)^{p_m}⋯S(x₁)^{p₁}
                let mut acc = HElement::basis(self.group_monomial(zero.clone()));
                for i in (0..self.generator_count()).rev() {
                    for _ in 0..self.pbw(p)[i] {
                        acc = self.multiply(&acc, &s_gen[i]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Terms (m, n, c) of Δ(x^p) = Σ c · x^m ⊗ g^{deg m}x^n.
    pub fn pbw_coproduct(&self, p: usize) -> &[(usize, usize, CycScalar)] {
        &self.0.coproduct[p]
    }

    /// Coefficient c_{m,n} of x^m ⊗ g^{deg m}x^n in Δ(x^{m+n}); zero when
    /// x^{m+n} vanishes.
    pub fn split_coefficient(&self, m: usize, n: usize) -> &CycScalar {
        &self.0.split[m][n]
    }

    pub fn comultiply_monomial(&self, h: &HMonomial) -> HTensorElement {
        let p = self.pbw_index(&h.pbw).expect("monomial outside PBW bounds");
        let mut out = HTensorElement::zero();
        for (m, n, c) in self.pbw_coproduct(p) {
            let right_group = h.group.iter().zip(self.pbw_degree(*m)).map(|(a, b)| a + b).collect();
            out.add_term(
                (self.monomial(h.group.clone(), *m), self.monomial(right_group, *n)),
                c.clone(),
            );
        }
        out
    }

    pub fn comultiply(&self, u: &HElement) -> HTensorElement {
        u.map_linear(|h| self.comultiply_monomial(h))
    }

    pub fn counit(&self, u: &HElement) -> CycScalar {
        u.iter()
            .filter(|(h, _)| h.is_group_like())
            .fold(CycScalar::zero(), |acc, (_, c)| acc.add_ref(c))
    }

    pub fn antipode_monomial(&self, h: &HMonomial) -> HElement {
        let p = self.pbw_index(&h.pbw).expect("monomial outside PBW bounds");
        let inv = self.group_monomial(h.group.iter().map(|x| -x).collect());
        self.multiply(&self.0.antipode_pbw[p], &HElement::basis(inv))
    }

    pub fn antipode(&self, u: &HElement) -> HElement {
        u.map_linear(|h| self.antipode_monomial(h))
    }

    /// (Δ⊗id)Δ(u).
    pub fn coassoc_left(&self, u: &HElement) -> HTensor3Element {
        let mut out = HTensor3Element::zero();
        for ((a, b), c) in self.comultiply(u).iter() {
            for ((a1, a2), c2) in self.comultiply_monomial(a).iter() {
                out.add_term((a1.clone(), a2.clone(), b.clone()), c.mul_ref(c2));
            }
        }
        out
    }

    /// (id⊗Δ)Δ(u).
    pub fn coassoc_right(&self, u: &HElement) -> HTensor3Element {
        let mut out = HTensor3Element::zero();
        for ((a, b), c) in self.comultiply(u).iter() {
            for ((b1, b2), c2) in self.comultiply_monomial(b).iter() {
                out.add_term((a.clone(), b1.clone(), b2.clone()), c.mul_ref(c2));
            }
        }
        out
    }

    /// m∘(S⊗id)∘Δ, or m∘(id⊗S)∘Δ when `left` is false.
    pub fn antipode_convolution(&self, u: &HElement, left: bool) -> HElement {
        let mut out = HElement::zero();
        for ((a, b), c) in self.comultiply(u).iter() {
            let prod = if left {
                self.multiply(&self.antipode_monomial(a), &HElement::basis(b.clone()))
            } else {
                self.multiply(&HElement::basis(a.clone()), &self.antipode_monomial(b))
            };
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Every monomial with group part in the box [−radius, radius]^r.
    pub fn monomials_in_box(&self, radius: i64) -> Vec<HMonomial> {
        let mut groups: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.rank() {
            groups = groups
                .into_iter()
                .flat_map(|g| {
                    (-radius..=radius).map(move |x| {
                        let mut h = g.clone();
                        h.push(x);
                        h
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for g in &groups {
            for p in 0..self.pbw_count() {
                out.push(self.monomial(g.clone(), p));
            }
        }
        out
    }

    pub fn is_one(&self, u: &HElement) -> bool {
        u.len() == 1 && u.coefficient(&self.group_monomial(vec![0; self.rank()])).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_int;

    fn mono(alg: &HopfAlgebra, g: i64, pbw: &[u32]) -> HElement {
        let _ = alg;
        HElement::basis(HMonomial::new(vec![g], pbw.to_vec()))
    }

    #[test]
    fn dg_relations() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let x = mono(&alg, 0, &[1]);
        let g = mono(&alg, 1, &[0]);
        // x·g = −g·x
        assert_eq!(alg.multiply(&x, &g), mono(&alg, 1, &[1]).scale(&CycScalar::from_integer(-1)));
        assert_eq!(alg.multiply(&g, &x), mono(&alg, 1, &[1]));
        // (g²x)(gx) = 0
        assert!(alg.multiply(&mono(&alg, 2, &[1]), &mono(&alg, 1, &[1])).is_zero());
    }

    #[test]
    fn dg_coproduct_and_antipode() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let x = alg.generator(0);
        let d = alg.comultiply(&x);
        let expect = HTensorElement::from_terms([
            ((HMonomial::new(vec![0], vec![1]), HMonomial::new(vec![1], vec![0])), CycScalar::one()),
            ((HMonomial::new(vec![0], vec![0]), HMonomial::new(vec![0], vec![1])), CycScalar::one()),
        ]);
        assert_eq!(d, expect);
        // S(x) = −x g⁻¹ = g⁻¹ x
        assert_eq!(alg.antipode(&x), mono(&alg, -1, &[1]));
        assert_eq!(alg.antipode(&mono(&alg, 3, &[0])), mono(&alg, -3, &[0]));
        let g5 = mono(&alg, 5, &[0]);
        assert_eq!(alg.comultiply(&g5), HTensorElement::basis((HMonomial::new(vec![5], vec![0]), HMonomial::new(vec![5], vec![0]))));
    }

    #[test]
    fn n_complex_square_coproduct() {
        // Δ(x²) = x²⊗g² + [2]_ξ x⊗g x + 1⊗x² for N = 3.
        let alg = HopfAlgebra::new(HopfDatum::n_complex(3)).unwrap();
        let d = alg.comultiply(&mono(&alg, 0, &[2]));
        assert_eq!(d.len(), 3);
        let xi = root_of_unity(3, 1);
        let mid = d.coefficient(&(HMonomial::new(vec![0], vec![1]), HMonomial::new(vec![1], vec![1])));
        assert!(mid == q_int(2, &xi) || mid == q_int(2, &xi.pow(-1)));
        assert!(d
            .coefficient(&(HMonomial::new(vec![0], vec![2]), HMonomial::new(vec![2], vec![0])))
            .is_one());
    }

    #[test]
    fn counit_is_linear() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let u = mono(&alg, 0, &[0])
            .scale(&CycScalar::from_integer(3))
            .add(&mono(&alg, 1, &[1]).scale(&CycScalar::from_integer(2)));
        assert_eq!(alg.counit(&u), CycScalar::from_integer(3));
        assert!(alg.counit(&alg.generator(0)).is_zero());
        assert!(alg.counit(&mono(&alg, 5, &[0])).is_one());
    }

    #[test]
    fn mixed_antipode_of_product() {
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        let xy = mono(&alg, 0, &[1, 1]);
        let lhs = alg.antipode(&xy);
        let rhs = alg.multiply(&alg.antipode(&alg.generator(1)), &alg.antipode(&alg.generator(0)));
        assert_eq!(lhs, rhs);
        assert_eq!(alg.antipode_convolution(&xy, true), HElement::zero());
    }
}
