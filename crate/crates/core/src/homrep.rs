//! Hom spaces between equivariant modules over an H-comodule algebra, the
//! action of functionals on H on linear maps, homotopy classes
//! H_0(Hom_A(M,N)) and stable Homs in the derived category D_H(A).

use std::collections::HashMap;

use serde::Serialize;

use crate::comodule::{is_colinear, tensor, unit as trivial_comodule, ComodMap, Comodule, HomSystem};
use crate::error::{Error, Result};
use crate::hopf::{left_integral, HElement, HMonomial, HopfAlgebra};
use crate::linalg::{kernel_from_equations, Echelon, Ring, SparseMatrix, SparseVec};
use crate::scalars::CycScalar;
use crate::stable::embed_e;
use crate::{Matrix, Vector};
use num_traits::{One, Zero};

/// A finite-dimensional H-comodule algebra, given by left multiplication
/// matrices `left[i] = L_{a_i}` in the basis a_0, …, a_{n−1}.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pub comodule: Comodule,
    pub left: Vec<Matrix>,
    pub unit: Vector,
}

impl ComoduleAlgebra {
    /// Checks associativity, unitality and colinearity of the
    /// multiplication and unit.
    pub fn new(comodule: Comodule, left: Vec<Matrix>, unit: Vector) -> Result<Self> {
        let n = comodule.dim();
        let bad = |msg: &str| Err(Error::IncompatibleStructures(msg.to_string()));
        if left.len() != n || left.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return bad("multiplication table does not match the basis");
        }
        let l_of = |v: &Vector| {
            v.iter()
                .fold(SparseMatrix::zero(n, n), |acc, (i, c)| acc.add(&left[i].scale(c)))
        };
        if l_of(&unit) != SparseMatrix::identity(n) {
            return bad("unit does not act as the identity");
        }
        for (i, li) in left.iter().enumerate() {
            if li.apply(&unit) != SparseVec::unit(i) {
                return bad("unit is not a right unit");
            }
            for j in 0..n {
                // L_{a_i} L_{a_j} = L_{a_i a_j}
                if li.compose(&left[j]) != l_of(left[i].column(j)) {
                    return bad("multiplication is not associative");
                }
            }
        }
        let aa = tensor(&comodule, &comodule)?;
        let mult = SparseMatrix::from_columns(
            n,
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| left[i].column(j).clone()).collect(),
        );
        if !is_colinear(&aa, &comodule, &mult) {
            return bad("multiplication is not colinear");
        }
        let k = trivial_comodule(comodule.alg());
        if !is_colinear(&k, &comodule, &SparseMatrix::from_columns(n, vec![unit.clone()])) {
            return bad("unit is not colinear");
        }
        Ok(ComoduleAlgebra { comodule, left, unit })
    }

    /// The ground field k with its trivial coaction.
    pub fn ground(alg: &HopfAlgebra) -> Self {
        Self::new(trivial_comodule(alg), vec![SparseMatrix::identity(1)], SparseVec::unit(0)).expect("k is an algebra")
    }

    /// k[t]/t^n with trivial coaction in degree 0.
    pub fn truncated_polynomial(alg: &HopfAlgebra, n: usize) -> Self {
        let m = crate::comodule::semisimple(alg, &[(vec![0; alg.rank()], n)]).expect("trivial comodule");
        let left = (0..n)
            .map(|i| {
                SparseMatrix::from_columns(
                    n,
                    (0..n)
                        .map(|j| if i + j < n { SparseVec::unit(i + j) } else { SparseVec::zero() })
                        .collect(),
                )
            })
            .collect();
        Self::new(m, left, SparseVec::unit(0)).expect("k[t]/t^n is a comodule algebra")
    }

    pub fn dim(&self) -> usize {
        self.comodule.dim()
    }
}

/// An object of _A M^H: a comodule with a compatible left A-action.
#[derive(Clone, Debug)]
pub struct EquivariantModule {
    pub algebra: ComoduleAlgebra,
    pub comodule: Comodule,
    /// Action matrix of each basis element of A.
    pub action: Vec<Matrix>,
}

impl EquivariantModule {
    pub fn new(algebra: &ComoduleAlgebra, comodule: Comodule, action: Vec<Matrix>) -> Result<Self> {
        let n = comodule.dim();
        let bad = |msg: &str| Err(Error::IncompatibleStructures(msg.to_string()));
        if algebra.comodule.alg() != comodule.alg() {
            return Err(Error::DatumMismatch);
        }
        if action.len() != algebra.dim() || action.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return bad("action does not match the algebra");
        }
        let act_of = |v: &Vector| {
            v.iter()
                .fold(SparseMatrix::zero(n, n), |acc, (i, c)| acc.add(&action[i].scale(c)))
        };
        if act_of(&algebra.unit) != SparseMatrix::identity(n) {
            return bad("unit does not act as the identity");
        }
        for (i, ai) in action.iter().enumerate() {
            for (j, aj) in action.iter().enumerate() {
                if ai.compose(aj) != act_of(algebra.left[i].column(j)) {
                    return bad("action is not associative");
                }
            }
        }
        let am = tensor(&algebra.comodule, &comodule)?;
        let act = SparseMatrix::from_columns(
            n,
            (0..algebra.dim())
                .flat_map(|i| (0..n).map(move |v| (i, v)))
                .map(|(i, v)| action[i].column(v).clone())
                .collect(),
        );
        if !is_colinear(&am, &comodule, &act) {
            return bad("action is not colinear");
        }
        Ok(EquivariantModule {
            algebra: algebra.clone(),
            comodule,
            action,
        })
    }

    /// A ⊗ N with A acting on the left factor.
    pub fn free(algebra: &ComoduleAlgebra, n: &Comodule) -> Result<Self> {
        let m = tensor(&algebra.comodule, n)?;
        let id = SparseMatrix::identity(n.dim());
        let action = algebra.left.iter().map(|l| l.kron(&id)).collect();
        Self::new(algebra, m, action)
    }

    /// A comodule over the ground field.
    pub fn over_ground(m: &Comodule) -> Self {
        let a = ComoduleAlgebra::ground(m.alg());
        EquivariantModule {
            algebra: a,
            comodule: m.clone(),
            action: vec![SparseMatrix::identity(m.dim())],
        }
    }

    /// M ⊗ B with A acting on M, and the A-linear embedding m ↦ m⊗1.
    pub fn embedding(&self) -> Result<(EquivariantModule, ComodMap)> {
        let i = embed_e(&self.comodule)?;
        let id = SparseMatrix::identity(self.comodule.alg().pbw_count());
        let action = self.action.iter().map(|a| a.kron(&id)).collect();
        let mb = EquivariantModule::new(&self.algebra, i.target.clone(), action)?;
        Ok((mb, i))
    }
}

fn same_algebra(m: &EquivariantModule, n: &EquivariantModule) -> Result<()> {
    let (a, b) = (&m.algebra, &n.algebra);
    if a.comodule.same_structure(&b.comodule) && a.left == b.left && a.unit == b.unit {
        Ok(())
    } else {
        Err(Error::IncompatibleStructures("modules over different algebras".into()))
    }
}

/// Equations f·a_i = a_i·f on the entries of f, with unknown index `var(u, v)`.
fn linearity_equations(
    m: &EquivariantModule,
    n: &EquivariantModule,
    var: impl Fn(usize, usize) -> Option<usize>,
) -> Vec<Vector> {
    let mut out = Vec::new();
    for (am, an) in m.action.iter().zip(&n.action) {
        let mut eqs: HashMap<(usize, usize), Vec<(usize, CycScalar)>> = HashMap::new();
        for v in 0..m.comodule.dim() {
            // (f am)[u, v] = Σ_w f[u, w] am[w, v]
            for (w, c) in am.column(v).iter() {
                for u in 0..n.comodule.dim() {
                    if let Some(k) = var(u, w) {
                        eqs.entry((u, v)).or_default().push((k, c.clone()));
                    }
                }
            }
            // (an f)[u, v] = Σ_w an[u, w] f[w, v]
            for w in 0..n.comodule.dim() {
                if let Some(k) = var(w, v) {
                    for (u, c) in an.column(w).iter() {
                        eqs.entry((u, v)).or_default().push((k, c.neg_ref()));
                    }
                }
            }
        }
        let mut keys: Vec<_> = eqs.into_iter().collect();
        keys.sort_by_key(|(k, _)| *k);
        out.extend(keys.into_iter().map(|(_, e)| SparseVec::from_pairs(e)).filter(|e| !e.is_zero()));
    }
    out
}

/// Basis of Hom_A(M, N), all A-linear maps (not necessarily graded).
pub fn hom_a(m: &EquivariantModule, n: &EquivariantModule) -> Result<Vec<Matrix>> {
    same_algebra(m, n)?;
    let (dm, dn) = (m.comodule.dim(), n.comodule.dim());
    let eqs = linearity_equations(m, n, |u, v| Some(v * dn + u));
    Ok(kernel_from_equations(dm * dn, &eqs)
        .iter()
        .map(|x| SparseMatrix::unflatten(dn, dm, x))
        .collect())
}

/// The linear system for maps that are both A-linear and colinear.
fn hom_a_h_system(m: &EquivariantModule, n: &EquivariantModule) -> Result<HomSystem> {
    same_algebra(m, n)?;
    let mut sys = HomSystem::new(&m.comodule, &n.comodule)?;
    let eqs = linearity_equations(m, n, |u, v| sys.var(u, v));
    sys.add_equations(eqs);
    Ok(sys)
}

/// Basis of Hom_A^H(M, N).
pub fn hom_a_h(m: &EquivariantModule, n: &EquivariantModule) -> Result<Vec<Matrix>> {
    Ok(hom_a_h_system(m, n)?.basis())
}

/// Evaluates x(f(m₀)₁ S(m₁)) f(m₀)₀ for a functional x on H given on
/// monomials.
pub fn functional_action(
    m: &Comodule,
    n: &Comodule,
    f: &Matrix,
    x: &dyn Fn(&HMonomial) -> CycScalar,
) -> Matrix {
    let alg = m.alg();
    let mut cache: HashMap<(Vec<i64>, usize, Vec<i64>, usize), CycScalar> = HashMap::new();
    let mut value = |a: &[i64], q: usize, b: &[i64], p: usize| -> CycScalar {
        cache
            .entry((a.to_vec(), q, b.to_vec(), p))
            .or_insert_with(|| {
                let left = HElement::basis(alg.monomial(a.to_vec(), q));
                let right = alg.antipode_monomial(&alg.monomial(b.to_vec(), p));
                alg.multiply(&left, &right)
                    .iter()
                    .fold(CycScalar::zero(), |acc, (h, c)| acc.add_ref(&c.mul_ref(&x(h))))
            })
            .clone()
    };
    let mut cols: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); m.dim()];
    for (v, col) in cols.iter_mut().enumerate() {
        for p in 0..alg.pbw_count() {
            for (w, c1) in m.phi(p).column(v).iter() {
                // m₀ = w, m₁ = g^{deg w} x^p
                for (u, c2) in f.column(w).iter() {
                    let c12 = c1.mul_ref(c2);
                    for q in 0..alg.pbw_count() {
                        for (u2, c3) in n.phi(q).column(u).iter() {
                            let val = value(n.degree(u2), q, m.degree(w), p);
                            if !val.is_zero() {
                                col.push((u2, c12.mul_ref(c3).mul_ref(&val)));
                            }
                        }
                    }
                }
            }
        }
    }
    SparseMatrix::from_columns(n.dim(), cols.into_iter().map(SparseVec::from_pairs).collect())
}

/// Λ·f for the left integral Λ.
pub fn lambda_action(m: &Comodule, n: &Comodule, f: &Matrix) -> Result<Matrix> {
    let lambda = left_integral(m.alg())?;
    Ok(functional_action(m, n, f, &|h| lambda.eval_monomial(h)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomotopyReport {
    pub hom_a: usize,
    pub hom_a_h: usize,
    pub lambda_image: usize,
    /// Λ·Hom_A(M,N) ⊆ Hom_A^H(M,N) was verified.
    pub image_inside: bool,
    pub dim: usize,
}

/// dim H_0(Hom_A(M,N)) = dim Hom_A^H(M,N) − dim Λ·Hom_A(M,N).
pub fn hom_homotopy(m: &EquivariantModule, n: &EquivariantModule) -> Result<(usize, HomotopyReport)> {
    let all = hom_a(m, n)?;
    let sys = hom_a_h_system(m, n)?;
    let inv = sys.basis();
    let (mc, nc) = (&m.comodule, &n.comodule);
    let images: Vec<Matrix> = all.iter().map(|f| lambda_action(mc, nc, f)).collect::<Result<_>>()?;
    let width = mc.dim() * nc.dim();
    let inv_span = Echelon::from_rows(width, inv.iter().map(|f| f.flatten()));
    let image_inside = images.iter().all(|g| inv_span.contains(&g.flatten()));
    if !image_inside {
        return Err(Error::IncompatibleStructures("Λ·Hom_A is not inside Hom_A^H".into()));
    }
    let lambda_image = Echelon::from_rows(width, images.iter().map(|g| g.flatten())).rank();
    let report = HomotopyReport {
        hom_a: all.len(),
        hom_a_h: inv.len(),
        lambda_image,
        image_inside,
        dim: inv.len() - lambda_image,
    };
    Ok((report.dim, report))
}

/// dim Hom_A^H(M,N) modulo maps that extend along the A-linear injective
/// embedding M → M⊗B.
pub fn stable_hom_a(m: &EquivariantModule, n: &EquivariantModule) -> Result<usize> {
    let full = hom_a_h(m, n)?;
    if full.is_empty() {
        return Ok(0);
    }
    let (mb, i) = m.embedding()?;
    let width = m.comodule.dim() * n.comodule.dim();
    let zero = hom_a_h(&mb, n)?.into_iter().map(|g| g.compose(&i.matrix).flatten());
    Ok(full.len() - Echelon::from_rows(width, zero).rank())
}

/// Whether Λ·(Λ·f) = Λ(1)(Λ·f) and, for colinear f, Λ·f = Λ(1)f.
pub fn lambda_identities(m: &Comodule, n: &Comodule, f: &Matrix) -> Result<bool> {
    let alg = m.alg();
    let lambda = left_integral(alg)?;
    let l1 = lambda.eval(&alg.one());
    let g = lambda_action(m, n, f)?;
    let gg = lambda_action(m, n, &g)?;
    let mut ok = gg == g.scale(&l1);
    if is_colinear(m, n, f) {
        ok &= g == f.scale(&l1);
    }
    Ok(ok)
}

type Functional<'a> = Box<dyn Fn(&HMonomial) -> CycScalar + 'a>;

/// x·(Λ·f) = x(1)(Λ·f) for x among ε, Λ, Λ∘S and the coordinate
/// functionals of the given monomials.
pub fn invariance_checks(m: &Comodule, n: &Comodule, f: &Matrix, monomials: &[HMonomial]) -> Result<bool> {
    let alg = m.alg().clone();
    let lambda = left_integral(&alg)?;
    let g = lambda_action(m, n, f)?;
    let one = alg.group_monomial(vec![0; alg.rank()]);
    let mut functionals: Vec<Functional> = vec![
        Box::new(|h: &HMonomial| alg.counit(&HElement::basis(h.clone()))),
        Box::new(|h: &HMonomial| lambda.eval_monomial(h)),
        Box::new(|h: &HMonomial| lambda.eval(&alg.antipode_monomial(h))),
    ];
    for mono in monomials {
        let mono = mono.clone();
        functionals.push(Box::new(move |h: &HMonomial| {
            if *h == mono {
                CycScalar::one()
            } else {
                CycScalar::zero()
            }
        }));
    }
    Ok(functionals.iter().all(|x| functional_action(m, n, &g, x.as_ref()) == g.scale(&x(&one))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{regular_b, simple, unit};
    use crate::homology::h0;
    use crate::hopf::HopfDatum;
    use crate::stable::ul_hom_dim;

    fn alg(d: HopfDatum) -> HopfAlgebra {
        HopfAlgebra::new(d).unwrap()
    }

    #[test]
    fn ground_field_degenerations() {
        for d in [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed()] {
            let a = alg(d);
            let k = EquivariantModule::over_ground(&unit(&a));
            for n in [unit(&a), regular_b(&a), simple(&a, &[1]).unwrap(), crate::stable::suspend(&unit(&a)).unwrap()] {
                let nm = EquivariantModule::over_ground(&n);
                let h = h0(&n).unwrap().dim;
                assert_eq!(hom_homotopy(&k, &nm).unwrap().0, h);
                assert_eq!(stable_hom_a(&k, &nm).unwrap(), h);
                assert_eq!(stable_hom_a(&k, &nm).unwrap(), ul_hom_dim(&unit(&a), &n).unwrap());
            }
            let b = EquivariantModule::over_ground(&regular_b(&a));
            assert_eq!(hom_homotopy(&b, &b).unwrap().0, 0);
        }
    }

    #[test]
    fn truncated_polynomial_example() {
        let a = alg(HopfDatum::dg());
        let r = ComoduleAlgebra::truncated_polynomial(&a, 2);
        let m = EquivariantModule::free(&r, &unit(&a)).unwrap();
        let (d, rep) = hom_homotopy(&m, &m).unwrap();
        assert_eq!(rep.hom_a, 2);
        assert_eq!(d, 2);
    }

    #[test]
    fn colinear_maps_are_killed() {
        let a = alg(HopfDatum::n_complex(3));
        let b = regular_b(&a);
        for f in crate::comodule::hom_space(&b, &b).unwrap() {
            assert!(lambda_identities(&b, &b, &f.matrix).unwrap());
            assert!(lambda_action(&b, &b, &f.matrix).unwrap().is_zero());
        }
        let any = SparseMatrix::identity(3).add(&SparseMatrix::from_columns(3, vec![SparseVec::zero(), SparseVec::unit(0), SparseVec::zero()]));
        assert!(lambda_identities(&b, &b, &any).unwrap());
        let monos = a.monomials_in_box(1);
        assert!(invariance_checks(&b, &b, &any, &monos).unwrap());
    }

    #[test]
    fn rejects_bad_modules() {
        let a = alg(HopfDatum::dg());
        let r = ComoduleAlgebra::truncated_polynomial(&a, 2);
        let k = unit(&a);
        let zero_action = vec![SparseMatrix::identity(1), SparseMatrix::identity(1)];
        assert!(EquivariantModule::new(&r, k, zero_action).is_err());
    }
}
