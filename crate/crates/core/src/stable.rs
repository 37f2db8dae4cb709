//! The stable category: functorial injective embedding, suspension and
//! desuspension, mapping cones, stably-zero maps and the triangle attached
//! to a short exact sequence.

use serde::Serialize;

use crate::comodule::{
    b_lower, hom_space, regular_b, simple, tensor, ComodMap, Comodule, HomSystem,
};
use crate::error::{Error, Result};
use crate::hopf::quantum_determinant;
use crate::linalg::{solve_affine, Echelon, SparseMatrix, SparseVec};
use crate::scalars::CycScalar;
use crate::{Matrix, Vector};

/// i_M: M → M⊗B, m ↦ m⊗1, together with its target.
pub fn embed_e(m: &Comodule) -> Result<ComodMap> {
    let b = regular_b(m.alg());
    let mb = tensor(m, &b)?;
    let db = b.dim();
    let cols = (0..m.dim()).map(|v| SparseVec::unit(v * db)).collect();
    Ok(ComodMap::trusted(m, &mb, SparseMatrix::from_columns(mb.dim(), cols)))
}

/// Indices of M⊗B outside the image of i_M, i.e. the pairs (v, k) with k ≠ 0.
fn off_unit(dim_m: usize, dim_b: usize) -> Vec<usize> {
    (0..dim_m).flat_map(|v| (1..dim_b).map(move |k| v * dim_b + k)).collect()
}

/// Quotient of M⊗B by the coordinate subcomodule M⊗1.
fn coordinate_quotient(mb: &Comodule, keep: &[usize]) -> Result<Comodule> {
    let phi = mb.operators().iter().map(|op| op.submatrix(keep, keep)).collect();
    Comodule::from_operators(
        mb.alg(),
        keep.iter().map(|k| mb.degree(*k).to_vec()).collect(),
        keep.iter().map(|k| mb.name(*k).to_string()).collect(),
        phi,
    )
}

/// T M = (M⊗B)/M.
pub fn suspend(m: &Comodule) -> Result<Comodule> {
    let i = embed_e(m)?;
    let keep = off_unit(m.dim(), m.alg().pbw_count());
    coordinate_quotient(&i.target, &keep)
}

/// T′M = M ⊗ B_{<top} ⊗ k g^{−a_D}.
pub fn desuspend(m: &Comodule) -> Result<Comodule> {
    let alg = m.alg();
    let det: Vec<i64> = quantum_determinant(alg)?.iter().map(|x| -x).collect();
    tensor(&tensor(m, &b_lower(alg))?, &simple(alg, &det)?)
}

/// Tⁿ for n < 0 and T′ⁿ for n > 0, so that H_n(M) = H_0(shift(M, n)).
pub fn shift(m: &Comodule, n: i64) -> Result<Comodule> {
    let mut out = m.clone();
    for _ in 0..n.unsigned_abs() {
        out = if n > 0 { desuspend(&out)? } else { suspend(&out)? };
    }
    Ok(out)
}

/// T(f): TX → TY.
pub fn suspend_map(f: &ComodMap, tx: &Comodule, ty: &Comodule) -> ComodMap {
    let db = f.source.alg().pbw_count();
    let full = f.matrix.kron(&SparseMatrix::identity(db));
    let rows = off_unit(f.target.dim(), db);
    let cols = off_unit(f.source.dim(), db);
    ComodMap::trusted(tx, ty, full.submatrix(&rows, &cols))
}

/// T′(f): T′X → T′Y.
pub fn desuspend_map(f: &ComodMap, tx: &Comodule, ty: &Comodule) -> ComodMap {
    let k = b_lower(f.source.alg()).dim();
    ComodMap::trusted(tx, ty, f.matrix.kron(&SparseMatrix::identity(k)))
}

/// shift applied to a map, with the shifted source and target.
pub fn shift_map(f: &ComodMap, n: i64) -> Result<ComodMap> {
    let mut g = f.clone();
    for _ in 0..n.unsigned_abs() {
        g = if n > 0 {
            let (s, t) = (desuspend(&g.source)?, desuspend(&g.target)?);
            desuspend_map(&g, &s, &t)
        } else {
            let (s, t) = (suspend(&g.source)?, suspend(&g.target)?);
            suspend_map(&g, &s, &t)
        };
    }
    Ok(g)
}

/// The pushout Co(f) = (X⊗B ⊕ Y)/{(i(x), −f(x))} of f: X → Y along i_X.
/// Its basis is the pairs (x, k ≠ 0) followed by the basis of Y.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: Comodule,
    /// Y → Co(f).
    pub from_target: ComodMap,
    /// Co(f) → T X.
    pub to_suspension: ComodMap,
    /// X⊗B → Co(f), the other pushout leg.
    pub from_injective: ComodMap,
    pub suspension: Comodule,
}

pub fn cone(f: &ComodMap) -> Result<Cone> {
    let (x, y) = (&f.source, &f.target);
    let i = embed_e(x)?;
    let xb = &i.target;
    let db = x.alg().pbw_count();
    let keep = off_unit(x.dim(), db);
    let nk = keep.len();
    let mut pos = vec![usize::MAX; xb.dim()];
    for (j, k) in keep.iter().enumerate() {
        pos[*k] = j;
    }
    // class(e, 0) = (e restricted to k ≠ 0, f(e at k = 0))
    let class_of = |e: &Vector| -> Vector {
        let mut out = Vec::new();
        let mut unit_part = Vec::new();
        for (idx, c) in e.iter() {
            if idx % db == 0 {
                unit_part.push((idx / db, c.clone()));
            } else {
                out.push((pos[idx], c.clone()));
            }
        }
        let fy = f.matrix.apply(&SparseVec::from_pairs(unit_part));
        SparseVec::from_pairs(out).add(&fy.map_indices(|j| j + nk))
    };
    let dim = nk + y.dim();
    let phi = xb
        .operators()
        .iter()
        .zip(y.operators())
        .map(|(opx, opy)| {
            let mut cols: Vec<Vector> = keep.iter().map(|k| class_of(opx.column(*k))).collect();
            cols.extend(opy.columns().iter().map(|c| c.map_indices(|j| j + nk)));
            SparseMatrix::from_columns(dim, cols)
        })
        .collect();
    let mut degrees: Vec<Vec<i64>> = keep.iter().map(|k| xb.degree(*k).to_vec()).collect();
    degrees.extend(y.degrees().iter().cloned());
    let mut names: Vec<String> = keep.iter().map(|k| xb.name(*k).to_string()).collect();
    names.extend(y.names().iter().cloned());
    let co = Comodule::from_operators(x.alg(), degrees, names, phi)?;
    let tx = coordinate_quotient(xb, &keep)?;
    let from_target = ComodMap::trusted(
        y,
        &co,
        SparseMatrix::from_columns(dim, (0..y.dim()).map(|j| SparseVec::unit(j + nk)).collect()),
    );
    let to_suspension = ComodMap::trusted(
        &co,
        &tx,
        SparseMatrix::from_columns(
            nk,
            (0..dim)
                .map(|j| if j < nk { SparseVec::unit(j) } else { SparseVec::zero() })
                .collect(),
        ),
    );
    let from_injective = ComodMap::trusted(
        xb,
        &co,
        SparseMatrix::from_columns(dim, (0..xb.dim()).map(|j| class_of(&SparseVec::unit(j))).collect()),
    );
    Ok(Cone {
        object: co,
        from_target,
        to_suspension,
        from_injective,
        suspension: tx,
    })
}

/// A colinear g: M⊗B → N with g∘i_M = f, when one exists.
pub fn extension_along_embedding(f: &ComodMap) -> Result<Option<Matrix>> {
    let i = embed_e(&f.source)?;
    let sys = HomSystem::new(&i.target, &f.target)?;
    let cons = sys.precomposition_constraints(&i.matrix, &f.matrix);
    Ok(sys.solve(&cons))
}

/// Whether f factors through an injective object, tested as extendability
/// along the injective embedding of its source.
pub fn stable_zero(f: &ComodMap) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(extension_along_embedding(f)?.is_some())
}

pub fn is_injective_object(m: &Comodule) -> Result<bool> {
    stable_zero(&ComodMap::identity(m))
}

fn rank_of_flattened(maps: impl IntoIterator<Item = Matrix>, width: usize) -> usize {
    Echelon::from_rows(width, maps.into_iter().map(|m| m.flatten())).rank()
}

/// dim of Hom(M,N) modulo maps factoring through injectives.
pub fn ul_hom_dim(m: &Comodule, n: &Comodule) -> Result<usize> {
    let full = hom_space(m, n)?;
    if full.is_empty() {
        return Ok(0);
    }
    let i = embed_e(m)?;
    let width = m.dim() * n.dim();
    let zero_maps = hom_space(&i.target, n)?.into_iter().map(|g| g.matrix.compose(&i.matrix));
    Ok(full.len() - rank_of_flattened(zero_maps, width))
}

/// A triangle X → Y → Z → TX.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub u: ComodMap,
    pub v: ComodMap,
    pub w: ComodMap,
}

impl Triangle {
    /// v∘u and w∘v are stably zero.
    pub fn composites_vanish(&self) -> Result<bool> {
        Ok(stable_zero(&self.v.compose(&self.u))? && stable_zero(&self.w.compose(&self.v))?)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComparisonReport {
    /// ψ∘φ = id_Z exactly.
    pub left_inverse_exact: bool,
    /// φ∘ψ − id_Co(u) factors through an injective.
    pub right_inverse_stable: bool,
}

/// The triangle X → Y → Co(u) → TX of a short exact sequence together with
/// the comparison maps φ: Z → Co(u) and ψ: Co(u) → Z.
#[derive(Clone, Debug)]
pub struct SesTriangle {
    pub triangle: Triangle,
    pub cone: Cone,
    /// U: Y → X⊗B with U∘u = i_X.
    pub lift: ComodMap,
    pub z_to_cone: ComodMap,
    pub cone_to_z: ComodMap,
    /// Connecting map Z → TX.
    pub connecting: ComodMap,
    pub comparison: ComparisonReport,
}

pub fn rank(m: &Matrix) -> usize {
    crate::comodule::rank(m)
}

/// Checks that 0 → X → Y → Z → 0 is exact.
pub fn check_exact(u: &ComodMap, v: &ComodMap) -> Result<()> {
    if u.target.dim() != v.source.dim() || !u.target.same_structure(&v.source) {
        return Err(Error::NotExact("maps are not composable".into()));
    }
    if !v.compose(u).is_zero() {
        return Err(Error::NotExact("v∘u ≠ 0".into()));
    }
    if rank(&u.matrix) != u.source.dim() {
        return Err(Error::NotExact("u is not injective".into()));
    }
    if rank(&v.matrix) != v.target.dim() {
        return Err(Error::NotExact("v is not surjective".into()));
    }
    if u.source.dim() + v.target.dim() != u.target.dim() {
        return Err(Error::NotExact("not exact in the middle".into()));
    }
    Ok(())
}

/// A linear (not colinear) section s of a surjection v, with v∘s = id.
fn linear_section(v: &Matrix) -> Matrix {
    let rows = v.transpose();
    let eqs_base: Vec<Vector> = rows.columns().to_vec();
    let cols = (0..v.nrows())
        .map(|z| {
            let eqs: Vec<(Vector, CycScalar)> = eqs_base
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let rhs = if r == z { CycScalar::from_integer(1) } else { CycScalar::from_integer(0) };
                    (row.clone(), rhs)
                })
                .collect();
            solve_affine(v.ncols(), &eqs).expect("surjective map has a section")
        })
        .collect();
    SparseMatrix::from_columns(v.ncols(), cols)
}

pub fn ses_to_triangle(u: &ComodMap, v: &ComodMap) -> Result<SesTriangle> {
    check_exact(u, v)?;
    let (x, y, z) = (&u.source, &u.target, &v.target);
    let i = embed_e(x)?;
    let sys = HomSystem::new(y, &i.target)?;
    let cons = sys.precomposition_constraints(&u.matrix, &i.matrix);
    let lift_m = sys
        .solve(&cons)
        .ok_or_else(|| Error::NotExact("no lift to the injective embedding".into()))?;
    let lift = ComodMap::trusted(y, &i.target, lift_m);
    let c = cone(u)?;
    // y ↦ class(−U y, y) vanishes on u(X), so it descends to Z
    let hat = c
        .from_target
        .matrix
        .sub(&c.from_injective.matrix.compose(&lift.matrix));
    let s = linear_section(&v.matrix);
    let z_to_cone = ComodMap::new(z, &c.object, hat.compose(&s))?;
    let nk = c.object.dim() - y.dim();
    let psi_cols = (0..c.object.dim())
        .map(|j| if j < nk { SparseVec::zero() } else { v.matrix.column(j - nk).clone() })
        .collect();
    let cone_to_z = ComodMap::new(&c.object, z, SparseMatrix::from_columns(z.dim(), psi_cols))?;
    let connecting = c.to_suspension.compose(&z_to_cone);
    let left_inverse_exact = cone_to_z.compose(&z_to_cone).matrix == SparseMatrix::identity(z.dim());
    let right_inverse_stable = stable_zero(&z_to_cone.compose(&cone_to_z).sub(&ComodMap::identity(&c.object)))?;
    Ok(SesTriangle {
        triangle: Triangle {
            u: u.clone(),
            v: c.from_target.clone(),
            w: c.to_suspension.clone(),
        },
        cone: c,
        lift,
        z_to_cone,
        cone_to_z,
        connecting,
        comparison: ComparisonReport {
            left_inverse_exact,
            right_inverse_stable,
        },
    })
}
