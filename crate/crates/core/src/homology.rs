//! Hopfological homology H_n and its long exact sequences.
//!
//! H_0(M) = M^{coH}/Λ·M, and H_n(M) = H_0(T′ⁿM) for n > 0, H_{−n}(M) =
//! H_0(TⁿM). The integral is supported on g⁰x^{top}, so Λ·M only sees the
//! graded piece of degree a_D and the coinvariants only the degree-0 piece.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::comodule::{ComodMap, Comodule};
use crate::error::{Error, Result};
use crate::hopf::left_integral;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::stable::{shift, shift_map, suspend, suspend_map, ses_to_triangle};
use crate::{Matrix, Vector};

/// Largest |n| accepted by `homology_table` unless overridden.
pub const DEFAULT_WINDOW: i64 = 6;

/// M^{coH}: the degree-0 vectors killed by every φ_p with p ≠ 0.
pub fn coinvariants(m: &Comodule) -> Vec<Vector> {
    let zero = vec![0; m.alg().rank()];
    let slice = m.indices_of_degree(&zero);
    if slice.is_empty() {
        return Vec::new();
    }
    let mut eqs = Echelon::new(slice.len());
    for op in &m.operators()[1..] {
        let block = op.submatrix(&(0..m.dim()).collect::<Vec<_>>(), &slice);
        for row in block.transpose().columns() {
            eqs.insert(row);
        }
    }
    eqs.nullspace()
        .into_iter()
        .map(|v| v.map_indices(|j| slice[j]))
        .collect()
}

/// Spanning set of Λ·M = {Λ(m₁)m₀}.
pub fn integral_action(m: &Comodule) -> Result<Vec<Vector>> {
    let alg = m.alg();
    let lambda = left_integral(alg)?;
    let p = alg
        .pbw_index(&lambda.support.pbw)
        .expect("integral support is a PBW monomial");
    // ρ(v) contains φ_p(v) ⊗ g^{deg v − deg p} x^p, and Λ sees only the
    // support monomial
    let source: Vec<i64> = lambda
        .support
        .group
        .iter()
        .zip(alg.pbw_degree(p))
        .map(|(a, d)| a + d)
        .collect();
    Ok(m.indices_of_degree(&source)
        .into_iter()
        .map(|v| m.phi(p).column(v).scale(&lambda.normalization))
        .filter(|v| !v.is_zero())
        .collect())
}

/// H_0(M) with a basis of coinvariant representatives.
#[derive(Clone, Debug)]
pub struct H0 {
    pub dim: usize,
    pub coinvariant_dim: usize,
    pub boundary_dim: usize,
    pub representatives: Vec<Vector>,
    boundaries: Echelon<crate::CycScalar>,
    classes: Echelon<crate::CycScalar>,
}

impl H0 {
    /// Coordinates of a coinvariant vector in the representative basis.
    pub fn coordinates(&self, c: &Vector) -> Vector {
        let r = self.boundaries.reduce(c);
        SparseVec::from_pairs(
            self.classes
                .coordinates(&r)
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !num_traits::Zero::is_zero(x)),
        )
    }

    /// Whether a coinvariant vector is zero in H_0.
    pub fn is_boundary(&self, c: &Vector) -> bool {
        self.boundaries.contains(c)
    }
}

pub fn h0(m: &Comodule) -> Result<H0> {
    let coinv = coinvariants(m);
    let lam = integral_action(m)?;
    let boundaries = Echelon::from_rows(m.dim(), lam);
    let classes = Echelon::from_rows(m.dim(), coinv.iter().map(|c| boundaries.reduce(c)));
    Ok(H0 {
        dim: classes.rank(),
        coinvariant_dim: coinv.len(),
        boundary_dim: boundaries.rank(),
        representatives: classes.rows().to_vec(),
        boundaries,
        classes,
    })
}

/// dim H_n(M).
pub fn hn(m: &Comodule, n: i64) -> Result<usize> {
    Ok(h0(&shift(m, n)?)?.dim)
}

/// The matrix of H_0(f): H_0(M) → H_0(N).
pub fn h0_map(f: &ComodMap, hm: &H0, hn: &H0) -> Matrix {
    SparseMatrix::from_columns(
        hn.dim,
        hm.representatives.iter().map(|r| hn.coordinates(&f.apply(r))).collect(),
    )
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyReport {
    pub window: (i64, i64),
    pub dims: BTreeMap<i64, usize>,
}

impl HomologyReport {
    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|d| *d == 0)
    }
}

fn check_window(lo: i64, hi: i64, bound: i64) -> Result<()> {
    if lo > hi || lo < -bound || hi > bound {
        return Err(Error::WindowTooLarge(lo, hi));
    }
    Ok(())
}

/// dim H_n(M) for n in [lo, hi], with |n| ≤ `DEFAULT_WINDOW`.
pub fn homology_table(m: &Comodule, lo: i64, hi: i64) -> Result<HomologyReport> {
    homology_table_bounded(m, lo, hi, DEFAULT_WINDOW)
}

pub fn homology_table_bounded(m: &Comodule, lo: i64, hi: i64, bound: i64) -> Result<HomologyReport> {
    check_window(lo, hi, bound)?;
    let mut dims = BTreeMap::new();
    // walk outward from 0 so each shift reuses the previous one
    let mut up = m.clone();
    for n in 0..=hi.max(0) {
        if n > 0 {
            up = crate::stable::desuspend(&up)?;
        }
        if n >= lo {
            dims.insert(n, h0(&up)?.dim);
        }
    }
    let mut down = m.clone();
    for n in (lo.min(0)..0).rev() {
        down = suspend(&down)?;
        if n <= hi {
            dims.insert(n, h0(&down)?.dim);
        }
    }
    Ok(HomologyReport { window: (lo, hi), dims })
}

/// One exactness test A → B → C at the middle term.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessEntry {
    pub degree: i64,
    pub position: String,
    pub dims: [usize; 3],
    pub ranks: [usize; 2],
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LesReport {
    pub window: (i64, i64),
    pub entries: Vec<ExactnessEntry>,
    pub exact: bool,
    /// ψ∘φ = id and φ∘ψ ≃ id for the comparison Z ⇄ Co(u).
    pub comparison_ok: bool,
}

impl LesReport {
    /// The first failure as an error.
    pub fn into_result(self) -> Result<Self> {
        match self.entries.iter().find(|e| !e.exact) {
            None => Ok(self),
            Some(e) => Err(Error::ExactnessFailure {
                degree: e.degree,
                position: e.position.clone(),
                detail: format!("dims {:?}, ranks {:?}", e.dims, e.ranks),
            }),
        }
    }
}

fn rank(m: &Matrix) -> usize {
    crate::comodule::rank(m)
}

fn exactness(degree: i64, position: &str, alpha: &Matrix, beta: &Matrix) -> ExactnessEntry {
    let (ra, rb) = (rank(alpha), rank(beta));
    let mid = alpha.nrows();
    let composite_zero = beta.compose(alpha).is_zero();
    ExactnessEntry {
        degree,
        position: position.to_string(),
        dims: [alpha.ncols(), mid, beta.nrows()],
        ranks: [ra, rb],
        composite_zero,
        exact: composite_zero && ra + rb == mid,
    }
}

/// Verifies the long exact sequence of 0 → X →u Y →v Z → 0 on a window.
///
/// The sequence is the triangle X → Y → Co(u) → TX of the pushout followed
/// by T(u): TX → TY; at each n exactness is tested at H_n(Y), H_n(Co(u))
/// and H_n(TX). Co(u) ≅ Z stably, checked separately.
pub fn les_check(u: &ComodMap, v: &ComodMap, lo: i64, hi: i64) -> Result<LesReport> {
    check_window(lo, hi, DEFAULT_WINDOW)?;
    let st = ses_to_triangle(u, v)?;
    let (tx, ty) = (st.cone.suspension.clone(), crate::stable::suspend(&u.target)?);
    let tu = suspend_map(u, &tx, &ty);
    let maps = [u.clone(), st.triangle.v.clone(), st.triangle.w.clone(), tu];
    let mut entries = Vec::new();
    for n in lo..=hi {
        let shifted: Vec<ComodMap> = maps.iter().map(|f| shift_map(f, n)).collect::<Result<_>>()?;
        let mut objects: Vec<Comodule> = shifted.iter().map(|f| f.source.clone()).collect();
        objects.push(shifted[3].target.clone());
        let hs: Vec<H0> = objects.iter().map(h0).collect::<Result<_>>()?;
        let mats: Vec<Matrix> = (0..4).map(|k| h0_map(&shifted[k], &hs[k], &hs[k + 1])).collect();
        for (k, name) in ["Y", "Co(u)", "TX"].iter().enumerate() {
            entries.push(exactness(n, name, &mats[k], &mats[k + 1]));
        }
    }
    let exact = entries.iter().all(|e| e.exact);
    Ok(LesReport {
        window: (lo, hi),
        entries,
        exact,
        comparison_ok: st.comparison.left_inverse_exact && st.comparison.right_inverse_stable,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KunnethReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

/// H_0(M)⊗H_0(N) → H_0(M⊗N) induced by c⊗c′ ↦ c⊗c′ on coinvariants.
pub fn kunneth0(m: &Comodule, n: &Comodule) -> Result<(Matrix, KunnethReport)> {
    let mn = crate::comodule::tensor(m, n)?;
    let (hm, hn_, hmn) = (h0(m)?, h0(n)?, h0(&mn)?);
    let dn = n.dim();
    let kron = |a: &Vector, b: &Vector| -> Vector {
        SparseVec::from_pairs(a.iter().flat_map(|(i, x)| {
            b.iter().map(move |(k, y)| (i * dn + k, crate::linalg::Ring::mul_ref(x, y)))
        }))
    };
    let cols: Vec<Vector> = hm
        .representatives
        .iter()
        .flat_map(|r| hn_.representatives.iter().map(|s| hmn.coordinates(&kron(r, s))))
        .collect();
    let matrix = SparseMatrix::from_columns(hmn.dim, cols);
    // Λ·M ⊗ N^{coH} and M^{coH} ⊗ Λ·N must land in Λ·(M⊗N)
    let (cm, cn) = (coinvariants(m), coinvariants(n));
    let (lm, ln) = (integral_action(m)?, integral_action(n)?);
    let well_defined = lm.iter().all(|a| cn.iter().all(|b| hmn.is_boundary(&kron(a, b))))
        && cm.iter().all(|a| ln.iter().all(|b| hmn.is_boundary(&kron(a, b))));
    let r = rank(&matrix);
    let report = KunnethReport {
        source_dim: hm.dim * hn_.dim,
        target_dim: hmn.dim,
        rank: r,
        well_defined,
        injective: r == hm.dim * hn_.dim,
        surjective: r == hmn.dim,
    };
    Ok((matrix, report))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KunnethDims {
    pub degree: i64,
    /// Σ_{p+q=n} dim H_p(M)·dim H_q(N) over p, q in the window.
    pub product_side: usize,
    /// dim H_n(M⊗N).
    pub tensor_side: usize,
}

pub fn kunneth_dims(m: &Comodule, n: &Comodule, degree: i64, window: (i64, i64)) -> Result<KunnethDims> {
    let (lo, hi) = window;
    let tm = homology_table(m, lo, hi)?;
    let tn = homology_table(n, lo, hi)?;
    let product_side = (lo..=hi)
        .filter(|p| (lo..=hi).contains(&(degree - p)))
        .map(|p| tm.dims[&p] * tn.dims[&(degree - p)])
        .sum();
    let tensor_side = hn(&crate::comodule::tensor(m, n)?, degree)?;
    Ok(KunnethDims {
        degree,
        product_side,
        tensor_side,
    })
}
