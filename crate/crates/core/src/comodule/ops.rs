use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::model::{ComodMap, Comodule};
use crate::error::{Error, Result};
use crate::linalg::{kernel_from_equations, solve_affine, Echelon, Ring, SparseMatrix, SparseVec};
use crate::scalars::CycScalar;
use crate::{Matrix, Vector};

/// M ⊗ N with the diagonal coaction ρ(v⊗w) = v₀⊗w₀ ⊗ v₁w₁. The basis
/// vector (i, k) sits at index `i * dim N + k`.
pub fn tensor(m: &Comodule, n: &Comodule) -> Result<Comodule> {
    if m.alg() != n.alg() {
        return Err(Error::DatumMismatch);
    }
    let alg = m.alg();
    let (dm, dn) = (m.dim(), n.dim());
    let dim = dm * dn;
    let mut phi = vec![SparseMatrix::zero(dim, dim); alg.pbw_count()];
    for p in 0..alg.pbw_count() {
        if m.phi(p).is_zero() {
            continue;
        }
        for q in 0..alg.pbw_count() {
            let Some(s) = alg.pbw_add(p, q) else { continue };
            if n.phi(q).is_zero() {
                continue;
            }
            // (g^{a−p}x^p)(g^{b'}x^q) = ζ^e g^{a−p+b'} x^{p+q} with b' the
            // degree of the N-component after applying φ_q
            let cols: Vec<Vector> = n
                .phi(q)
                .columns()
                .iter()
                .map(|col| {
                    SparseVec::from_pairs(
                        col.iter()
                            .map(|(w, c)| (w, c.mul_ref(alg.zeta(alg.commutation_exp(p, n.degree(w), q))))),
                    )
                })
                .collect();
            let twisted = SparseMatrix::from_columns(dn, cols);
            phi[s] = phi[s].add(&m.phi(p).kron(&twisted));
        }
    }
    let mut degrees = Vec::with_capacity(dim);
    let mut names = Vec::with_capacity(dim);
    for i in 0..dm {
        for k in 0..dn {
            degrees.push(m.degree(i).iter().zip(n.degree(k)).map(|(a, b)| a + b).collect());
            names.push(format!("{}⊗{}", m.name(i), n.name(k)));
        }
    }
    Comodule::from_operators(alg, degrees, names, phi)
}

/// f ⊗ g between tensor products formed with `tensor`.
pub fn tensor_maps(f: &ComodMap, g: &ComodMap, source: &Comodule, target: &Comodule) -> ComodMap {
    ComodMap::trusted(source, target, f.matrix.kron(&g.matrix))
}

/// M ⊕ N, with the basis of M first.
pub fn direct_sum(m: &Comodule, n: &Comodule) -> Result<Comodule> {
    if m.alg() != n.alg() {
        return Err(Error::DatumMismatch);
    }
    let phi = m
        .operators()
        .iter()
        .zip(n.operators())
        .map(|(a, b)| a.block_diagonal(b))
        .collect();
    let mut degrees = m.degrees().to_vec();
    degrees.extend(n.degrees().iter().cloned());
    let mut names = m.names().to_vec();
    names.extend(n.names().iter().cloned());
    Comodule::from_operators(m.alg(), degrees, names, phi)
}

/// Inclusions and projections of M ⊕ N.
pub fn direct_sum_maps(m: &Comodule, n: &Comodule, sum: &Comodule) -> [ComodMap; 4] {
    let (dm, dn) = (m.dim(), n.dim());
    let inc = |k: usize, shift: usize| {
        SparseMatrix::from_columns(dm + dn, (0..k).map(|j| SparseVec::unit(j + shift)).collect())
    };
    let i_m = ComodMap::trusted(m, sum, inc(dm, 0));
    let i_n = ComodMap::trusted(n, sum, inc(dn, dm));
    let p_m = ComodMap::trusted(sum, m, i_m.matrix.transpose());
    let p_n = ComodMap::trusted(sum, n, i_n.matrix.transpose());
    [i_m, i_n, p_m, p_n]
}

/// A subcomodule, kept as a fully reduced echelon basis. Since the
/// spanning vectors are homogeneous, so are the echelon rows.
#[derive(Clone, Debug)]
pub struct Subcomodule {
    pub ambient: Comodule,
    pub echelon: Echelon<CycScalar>,
}

fn homogeneous_parts(m: &Comodule, v: &Vector) -> Vec<Vector> {
    let mut parts: BTreeMap<&[i64], Vec<(usize, CycScalar)>> = BTreeMap::new();
    for (i, c) in v.iter() {
        parts.entry(m.degree(i)).or_default().push((i, c.clone()));
    }
    parts.into_values().map(SparseVec::from_pairs).collect()
}

impl Subcomodule {
    /// The smallest subcomodule containing the given vectors. It is spanned
    /// by the φ_p images of their homogeneous components.
    pub fn spanned_by(m: &Comodule, vectors: &[Vector]) -> Self {
        let mut e = Echelon::new(m.dim());
        for v in vectors {
            for part in homogeneous_parts(m, v) {
                for op in m.operators() {
                    e.insert(&op.apply(&part));
                }
            }
        }
        Subcomodule {
            ambient: m.clone(),
            echelon: e,
        }
    }

    /// Wraps vectors already known to span a graded subcomodule.
    pub fn from_stable_span(m: &Comodule, vectors: &[Vector]) -> Result<Self> {
        let mut e = Echelon::new(m.dim());
        for v in vectors {
            for part in homogeneous_parts(m, v) {
                e.insert(&part);
            }
        }
        let s = Subcomodule {
            ambient: m.clone(),
            echelon: e,
        };
        for row in s.echelon.rows() {
            if m.operators().iter().any(|op| !s.echelon.contains(&op.apply(row))) {
                return Err(Error::InvalidComodule("span is not closed under the coaction".into()));
            }
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.echelon.contains(v)
    }

    /// The subcomodule as an object together with its inclusion.
    pub fn to_comodule(&self) -> (Comodule, ComodMap) {
        let m = &self.ambient;
        let rows = self.echelon.rows();
        let k = rows.len();
        let coords = |v: &Vector| {
            SparseVec::from_pairs(
                self.echelon
                    .coordinates(v)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero()),
            )
        };
        let phi = m
            .operators()
            .iter()
            .map(|op| SparseMatrix::from_columns(k, rows.iter().map(|r| coords(&op.apply(r))).collect()))
            .collect();
        let degrees = rows.iter().map(|r| m.vector_degree(r).expect("homogeneous row")).collect();
        let names = self.echelon.pivots().iter().map(|p| format!("[{}]", m.name(*p))).collect();
        let sub = Comodule::from_operators(m.alg(), degrees, names, phi).expect("subcomodule");
        let inc = ComodMap::trusted(&sub, m, SparseMatrix::from_columns(m.dim(), rows.to_vec()));
        (sub, inc)
    }

    /// M/S on the non-pivot coordinates, with the projection M → M/S.
    pub fn quotient(&self) -> (Comodule, ComodMap) {
        let m = &self.ambient;
        let free = self.echelon.free_columns();
        let mut pos = vec![usize::MAX; m.dim()];
        for (k, f) in free.iter().enumerate() {
            pos[*f] = k;
        }
        let project = |v: &Vector| {
            SparseVec::from_pairs(
                self.echelon
                    .reduce(v)
                    .iter()
                    .map(|(i, c)| (pos[i], c.clone())),
            )
        };
        let k = free.len();
        let phi = m
            .operators()
            .iter()
            .map(|op| {
                SparseMatrix::from_columns(k, free.iter().map(|f| project(op.column(*f))).collect())
            })
            .collect();
        let degrees = free.iter().map(|f| m.degree(*f).to_vec()).collect();
        let names = free.iter().map(|f| m.name(*f).to_string()).collect();
        let q = Comodule::from_operators(m.alg(), degrees, names, phi).expect("quotient comodule");
        let proj = SparseMatrix::from_columns(k, (0..m.dim()).map(|j| project(&SparseVec::unit(j))).collect());
        let pmap = ComodMap::trusted(m, &q, proj);
        (q, pmap)
    }
}

fn rows_of(m: &Matrix) -> Vec<Vector> {
    let t = m.transpose();
    t.columns().to_vec()
}

/// ker f as a subcomodule of the source.
pub fn kernel(f: &ComodMap) -> Subcomodule {
    let basis = kernel_from_equations(f.source.dim(), &rows_of(&f.matrix));
    Subcomodule {
        ambient: f.source.clone(),
        echelon: Echelon::from_rows(f.source.dim(), basis),
    }
}

/// im f as a subcomodule of the target.
pub fn image(f: &ComodMap) -> Subcomodule {
    Subcomodule {
        ambient: f.target.clone(),
        echelon: Echelon::from_rows(f.target.dim(), f.matrix.columns().iter().cloned()),
    }
}

/// coker f with the projection from the target.
pub fn cokernel(f: &ComodMap) -> (Comodule, ComodMap) {
    image(f).quotient()
}

pub fn rank(m: &Matrix) -> usize {
    Echelon::from_rows(m.nrows(), m.columns().iter().cloned()).rank()
}

/// Graded dimension Σ dim M_a z^a, as a map from degrees to dimensions.
pub fn character(m: &Comodule) -> BTreeMap<Vec<i64>, usize> {
    m.graded_dims()
}

/// The linear system describing colinear maps M → N. Unknowns are the
/// matrix entries (u, v) with deg u = deg v.
pub struct HomSystem {
    pub source: Comodule,
    pub target: Comodule,
    vars: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    equations: Vec<Vector>,
}

impl HomSystem {
    pub fn new(source: &Comodule, target: &Comodule) -> Result<Self> {
        if source.alg() != target.alg() {
            return Err(Error::DatumMismatch);
        }
        let mut by_degree: HashMap<&[i64], Vec<usize>> = HashMap::new();
        for u in 0..target.dim() {
            by_degree.entry(target.degree(u)).or_default().push(u);
        }
        let mut vars = Vec::new();
        let mut index = HashMap::new();
        for v in 0..source.dim() {
            if let Some(us) = by_degree.get(source.degree(v)) {
                for &u in us {
                    index.insert((u, v), vars.len());
                    vars.push((u, v));
                }
            }
        }
        // f φ^M − φ^N f = 0 entrywise, for each generator
        let mut equations = Vec::new();
        for i in 0..source.alg().generator_count() {
            let (pm, pn) = (source.generator_op(i), target.generator_op(i));
            let mut eqs: BTreeMap<(usize, usize), Vec<(usize, CycScalar)>> = BTreeMap::new();
            for v in 0..source.dim() {
                for (w, c) in pm.column(v).iter() {
                    for &u in by_degree.get(source.degree(w)).map(Vec::as_slice).unwrap_or(&[]) {
                        eqs.entry((u, v)).or_default().push((index[&(u, w)], c.clone()));
                    }
                }
                for &w in by_degree.get(source.degree(v)).map(Vec::as_slice).unwrap_or(&[]) {
                    for (u, c) in pn.column(w).iter() {
                        eqs.entry((u, v)).or_default().push((index[&(w, v)], c.neg_ref()));
                    }
                }
            }
            equations.extend(eqs.into_values().map(SparseVec::from_pairs).filter(|e| !e.is_zero()));
        }
        Ok(HomSystem {
            source: source.clone(),
            target: target.clone(),
            vars,
            index,
            equations,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.vars.len()
    }

    /// Index of the unknown for entry (u, v), if that entry may be nonzero.
    pub fn var(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u, v)).copied()
    }

    /// Adds linear equations on the unknowns.
    pub fn add_equations(&mut self, eqs: impl IntoIterator<Item = Vector>) {
        self.equations.extend(eqs);
    }

    pub fn to_matrix(&self, x: &Vector) -> Matrix {
        let mut cols: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); self.source.dim()];
        for (k, c) in x.iter() {
            let (u, v) = self.vars[k];
            cols[v].push((u, c.clone()));
        }
        SparseMatrix::from_columns(self.target.dim(), cols.into_iter().map(SparseVec::from_pairs).collect())
    }

    /// Unknown vector of a matrix; entries outside the graded pattern are
    /// dropped.
    pub fn to_unknowns(&self, m: &Matrix) -> Vector {
        SparseVec::from_pairs(
            m.columns()
                .iter()
                .enumerate()
                .flat_map(|(v, col)| col.iter().filter_map(move |(u, c)| self.var(u, v).map(|k| (k, c.clone())))),
        )
    }

    /// Basis of the solution space, as matrices.
    pub fn basis(&self) -> Vec<Matrix> {
        kernel_from_equations(self.vars.len(), &self.equations)
            .iter()
            .map(|x| self.to_matrix(x))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.vars.len() - Echelon::from_rows(self.vars.len(), self.equations.iter().cloned()).rank()
    }

    /// A solution that also satisfies the affine constraints, if any.
    pub fn solve(&self, constraints: &[(Vector, CycScalar)]) -> Option<Matrix> {
        let mut eqs: Vec<(Vector, CycScalar)> = self.equations.iter().map(|e| (e.clone(), CycScalar::zero())).collect();
        eqs.extend(constraints.iter().cloned());
        solve_affine(self.vars.len(), &eqs).map(|x| self.to_matrix(&x))
    }

    /// Constraints g ∘ pre = rhs for an unknown map g, with `pre`: P → source
    /// and `rhs`: P → target.
    pub fn precomposition_constraints(&self, pre: &Matrix, rhs: &Matrix) -> Vec<(Vector, CycScalar)> {
        let mut out = Vec::new();
        for c in 0..pre.ncols() {
            let mut rows: BTreeMap<usize, Vec<(usize, CycScalar)>> = BTreeMap::new();
            for (w, x) in pre.column(c).iter() {
                for r in 0..self.target.dim() {
                    if let Some(k) = self.var(r, w) {
                        rows.entry(r).or_default().push((k, x.clone()));
                    }
                }
            }
            for r in 0..self.target.dim() {
                let lhs = SparseVec::from_pairs(rows.remove(&r).unwrap_or_default());
                let value = rhs.get(r, c);
                if lhs.is_zero() && value.is_zero() {
                    continue;
                }
                out.push((lhs, value));
            }
        }
        out
    }
}

/// Basis of Hom^H(M, N), the colinear maps.
pub fn hom_space(m: &Comodule, n: &Comodule) -> Result<Vec<ComodMap>> {
    Ok(HomSystem::new(m, n)?
        .basis()
        .into_iter()
        .map(|x| ComodMap::trusted(m, n, x))
        .collect())
}

pub fn hom_dim(m: &Comodule, n: &Comodule) -> Result<usize> {
    Ok(HomSystem::new(m, n)?.dimension())
}

/// Scalar matrix c·I.
pub fn scalar_identity(n: usize, c: &CycScalar) -> Matrix {
    if c.is_one() {
        SparseMatrix::identity(n)
    } else {
        SparseMatrix::identity(n).scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::constructors::*;
    use crate::hopf::{HopfAlgebra, HopfDatum};

    #[test]
    fn tensor_with_unit_is_identity() {
        for d in [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed(), HopfDatum::rank_two_example()] {
            let alg = HopfAlgebra::new(d).unwrap();
            let b = regular_b(&alg);
            let t = tensor(&b, &unit(&alg)).unwrap();
            assert!(t.same_structure(&b));
            let t = tensor(&unit(&alg), &b).unwrap();
            assert!(t.same_structure(&b));
        }
    }

    #[test]
    fn tensor_products_are_comodules() {
        for d in [HopfDatum::dg(), HopfDatum::n_complex(4), HopfDatum::mixed(), HopfDatum::rank_two_example()] {
            let alg = HopfAlgebra::new(d).unwrap();
            let b = regular_b(&alg);
            let bb = tensor(&b, &b).unwrap();
            assert!(bb.validate().valid);
            let s = simple(&alg, &vec![2; alg.rank()]).unwrap();
            assert!(tensor(&s, &bb).unwrap().validate().valid);
        }
    }

    #[test]
    fn hom_from_unit_to_b() {
        // colinear maps k → B pick out coinvariants of B in degree 0, which
        // are spanned by 1
        let alg = HopfAlgebra::new(HopfDatum::n_complex(3)).unwrap();
        let b = regular_b(&alg);
        assert_eq!(hom_dim(&unit(&alg), &b).unwrap(), 1);
        assert_eq!(hom_dim(&b, &b).unwrap(), 1);
        for f in hom_space(&b, &b).unwrap() {
            assert!(f.is_colinear());
        }
    }

    #[test]
    fn kernel_image_cokernel() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let b = regular_b(&alg);
        let homs = hom_space(&b, &b).unwrap();
        // the non-identity endomorphism of B sends x ↦ 1 twisted, or is zero
        for f in homs {
            let (k, i) = kernel(&f).to_comodule();
            assert!(i.is_colinear());
            let (c, p) = cokernel(&f);
            assert!(p.is_colinear());
            assert_eq!(k.dim() + image(&f).dim(), b.dim());
            assert_eq!(c.dim() + image(&f).dim(), b.dim());
        }
    }

    #[test]
    fn subcomodule_closure() {
        let alg = HopfAlgebra::new(HopfDatum::n_complex(4)).unwrap();
        let b = regular_b(&alg);
        let s = Subcomodule::spanned_by(&b, &[SparseVec::unit(2)]);
        assert_eq!(s.dim(), 3);
        let (q, p) = s.quotient();
        assert_eq!(q.dim(), 1);
        assert!(p.is_colinear());
        assert!(Subcomodule::from_stable_span(&b, &[SparseVec::unit(2)]).is_err());
    }

    #[test]
    fn direct_sum_structure() {
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        let b = regular_b(&alg);
        let k = unit(&alg);
        let s = direct_sum(&b, &k).unwrap();
        let [i_m, i_n, p_m, p_n] = direct_sum_maps(&b, &k, &s);
        assert!(p_m.compose(&i_m).matrix == SparseMatrix::identity(b.dim()));
        assert!(p_n.compose(&i_m).is_zero());
        assert!(i_n.is_colinear());
    }

    #[test]
    fn precomposition_solve() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let b = regular_b(&alg);
        let k = unit(&alg);
        // find g: B → B with g∘(1 ↦ 1) = (1 ↦ 1)
        let sys = HomSystem::new(&b, &b).unwrap();
        let pre = SparseMatrix::from_columns(2, vec![SparseVec::unit(0)]);
        let cons = sys.precomposition_constraints(&pre, &pre);
        let g = sys.solve(&cons).unwrap();
        assert!(is_colinear_matrix(&b, &b, &g));
        assert_eq!(g.compose(&pre), pre);
        let _ = k;
    }

    fn is_colinear_matrix(m: &Comodule, n: &Comodule, x: &Matrix) -> bool {
        crate::comodule::model::is_colinear(m, n, x)
    }
}
