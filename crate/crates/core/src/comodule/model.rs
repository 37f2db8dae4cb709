use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{HMonomial, HopfAlgebra};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalars::CycScalar;
use crate::{Matrix, Vector};

/// A finite-dimensional right H-comodule.
///
/// The coaction of a basis vector v of degree a is
/// ρ(v) = Σ_p φ_p(v) ⊗ g^{a − deg p} x^p, summed over PBW exponents p, where
/// φ_p lowers the ℤʳ-degree by deg p = Σ p_i γ_i and φ_0 is the identity.
/// This is exactly the general shape of a coaction over k[ℤʳ]#B, and the
/// comodule axioms become φ_m φ_n = c_{m,n} φ_{m+n} with c_{m,n} the
/// coproduct coefficients of x^{m+n}.
#[derive(Clone)]
pub struct Comodule(Arc<Data>);

struct Data {
    alg: HopfAlgebra,
    degrees: Vec<Vec<i64>>,
    names: Vec<String>,
    phi: Vec<Matrix>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Comodule")
            .field("dim", &self.dim())
            .field("degrees", &self.0.degrees)
            .finish()
    }
}

impl Comodule {
    /// Builds and validates a comodule from its structure operators.
    /// `phi[0]` must be the identity.
    pub fn from_operators(
        alg: &HopfAlgebra,
        degrees: Vec<Vec<i64>>,
        names: Vec<String>,
        phi: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Comodule(Arc::new(Data {
            alg: alg.clone(),
            degrees,
            names,
            phi,
        }));
        let report = m.validate();
        if report.valid {
            Ok(m)
        } else {
            Err(Error::InvalidComodule(report.failures.join("; ")))
        }
    }

    /// As `from_operators`, but returns the object together with its report
    /// instead of failing.
    pub fn from_operators_reported(
        alg: &HopfAlgebra,
        degrees: Vec<Vec<i64>>,
        names: Vec<String>,
        phi: Vec<Matrix>,
    ) -> (Self, ValidationReport) {
        let m = Comodule(Arc::new(Data {
            alg: alg.clone(),
            degrees,
            names,
            phi,
        }));
        let r = m.validate();
        (m, r)
    }

    /// Builds a comodule from a coaction table: `table[v]` lists the triples
    /// (w, h, c) with ρ(v) = Σ c·w⊗h.
    pub fn from_coaction_table(
        alg: &HopfAlgebra,
        degrees: Vec<Vec<i64>>,
        names: Vec<String>,
        table: &[Vec<(usize, HMonomial, CycScalar)>],
    ) -> Result<Self> {
        let n = degrees.len();
        if table.len() != n || names.len() != n {
            return Err(Error::Dimension("coaction table does not match the basis".into()));
        }
        let mut cols: Vec<Vec<Vec<(usize, CycScalar)>>> = vec![vec![Vec::new(); n]; alg.pbw_count()];
        for (v, terms) in table.iter().enumerate() {
            for (w, h, c) in terms {
                let p = alg
                    .pbw_index(&h.pbw)
                    .ok_or_else(|| Error::InvalidComodule(format!("monomial {h} is not in normal form")))?;
                if *w >= n {
                    return Err(Error::Dimension(format!("basis index {w} out of range")));
                }
                if h.group != degrees[*w] {
                    return Err(Error::InvalidComodule(format!(
                        "degree coherence fails on {}: {h} paired with {}",
                        names[v], names[*w]
                    )));
                }
                cols[p][v].push((*w, c.clone()));
            }
        }
        let phi = cols
            .into_iter()
            .map(|cs| SparseMatrix::from_columns(n, cs.into_iter().map(SparseVec::from_pairs).collect()))
            .collect();
        Self::from_operators(alg, degrees, names, phi)
    }

    pub fn alg(&self) -> &HopfAlgebra {
        &self.0.alg
    }

    pub fn dim(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn degree(&self, i: usize) -> &[i64] {
        &self.0.degrees[i]
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.0.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Structure operator φ_p.
    pub fn phi(&self, p: usize) -> &Matrix {
        &self.0.phi[p]
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.0.phi
    }

    /// φ for the generator x_i.
    pub fn generator_op(&self, i: usize) -> &Matrix {
        &self.0.phi[self.alg().generator_index(i)]
    }

    /// ρ(e_v) as (w, h, c) triples.
    pub fn coaction(&self, v: usize) -> Vec<(usize, HMonomial, CycScalar)> {
        let alg = self.alg();
        let mut out = Vec::new();
        for p in 0..alg.pbw_count() {
            for (w, c) in self.0.phi[p].column(v).iter() {
                out.push((w, alg.monomial(self.degree(w).to_vec(), p), c.clone()));
            }
        }
        out
    }

    /// Basis indices of the given degree.
    pub fn indices_of_degree(&self, a: &[i64]) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.degree(*i) == a).collect()
    }

    /// Dimension of each graded piece.
    pub fn graded_dims(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for d in self.degrees() {
            *out.entry(d.clone()).or_insert(0) += 1;
        }
        out
    }

    /// The common degree of the support of `v`, if it is homogeneous.
    pub fn vector_degree(&self, v: &Vector) -> Option<Vec<i64>> {
        let mut it = v.iter();
        let first = self.degree(it.next()?.0).to_vec();
        it.all(|(i, _)| self.degree(i) == first.as_slice()).then_some(first)
    }

    /// Same algebra, basis degrees and structure operators.
    pub fn same_structure(&self, other: &Comodule) -> bool {
        self.alg() == other.alg() && self.degrees() == other.degrees() && self.operators() == other.operators()
    }

    pub fn validate(&self) -> ValidationReport {
        let alg = self.alg();
        let n = self.dim();
        let mut failures = Vec::new();
        if self.0.names.len() != n {
            failures.push("names do not match the basis".to_string());
        }
        if self.0.phi.len() != alg.pbw_count() {
            failures.push(format!(
                "expected {} structure operators, got {}",
                alg.pbw_count(),
                self.0.phi.len()
            ));
        }
        if self.0.degrees.iter().any(|d| d.len() != alg.rank()) {
            failures.push("basis degree of the wrong rank".to_string());
        }
        if self.0.phi.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            failures.push("structure operator of the wrong size".to_string());
        }
        if !failures.is_empty() {
            return ValidationReport { valid: false, failures };
        }
        if self.0.phi[0] != SparseMatrix::identity(n) {
            let bad: Vec<&str> = (0..n)
                .filter(|v| self.0.phi[0].column(*v) != &SparseVec::unit(*v))
                .map(|v| self.name(v))
                .collect();
            failures.push(format!("counitality fails on {}", bad.join(", ")));
        }
        for p in 1..alg.pbw_count() {
            let shift = alg.pbw_degree(p);
            for (v, col) in self.0.phi[p].columns().iter().enumerate() {
                for (w, _) in col.iter() {
                    let ok = self
                        .degree(v)
                        .iter()
                        .zip(shift)
                        .zip(self.degree(w))
                        .all(|((a, s), b)| a - s == *b);
                    if !ok {
                        failures.push(format!(
                            "degree coherence fails on {} (term {} under x^{:?})",
                            self.name(v),
                            self.name(w),
                            alg.pbw(p)
                        ));
                    }
                }
            }
        }
        for m in 1..alg.pbw_count() {
            for k in 1..alg.pbw_count() {
                let lhs = self.0.phi[m].compose(&self.0.phi[k]);
                let rhs = match alg.pbw_add(m, k) {
                    Some(s) => self.0.phi[s].scale(alg.split_coefficient(m, k)),
                    None => SparseMatrix::zero(n, n),
                };
                if lhs != rhs {
                    let diff = lhs.sub(&rhs);
                    let bad: Vec<&str> = (0..n)
                        .filter(|v| !diff.column(*v).is_zero())
                        .map(|v| self.name(v))
                        .collect();
                    failures.push(format!(
                        "coassociativity fails on {} (x^{:?} ⊗ x^{:?})",
                        bad.join(", "),
                        alg.pbw(m),
                        alg.pbw(k)
                    ));
                }
            }
        }
        ValidationReport {
            valid: failures.is_empty(),
            failures,
        }
    }
}

/// An H-colinear linear map.
#[derive(Clone, Debug)]
pub struct ComodMap {
    pub source: Comodule,
    pub target: Comodule,
    pub matrix: Matrix,
}

/// True when `matrix` (target × source) preserves degrees and commutes with
/// every generator operator.
pub fn is_colinear(source: &Comodule, target: &Comodule, matrix: &Matrix) -> bool {
    if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
        return false;
    }
    for (v, col) in matrix.columns().iter().enumerate() {
        if col.iter().any(|(u, _)| target.degree(u) != source.degree(v)) {
            return false;
        }
    }
    (0..source.alg().generator_count())
        .all(|i| matrix.compose(source.generator_op(i)) == target.generator_op(i).compose(matrix))
}

impl ComodMap {
    pub fn new(source: &Comodule, target: &Comodule, matrix: Matrix) -> Result<Self> {
        if source.alg() != target.alg() {
            return Err(Error::DatumMismatch);
        }
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Dimension(format!(
                "map is {}x{}, objects have dimensions {} and {}",
                matrix.nrows(),
                matrix.ncols(),
                source.dim(),
                target.dim()
            )));
        }
        if !is_colinear(source, target, &matrix) {
            return Err(Error::NotColinear);
        }
        Ok(Self::trusted(source, target, matrix))
    }

    /// Wraps a matrix known to be colinear by construction.
    pub(crate) fn trusted(source: &Comodule, target: &Comodule, matrix: Matrix) -> Self {
        debug_assert!(is_colinear(source, target, &matrix), "constructed map is not colinear");
        ComodMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &Comodule) -> Self {
        Self::trusted(m, m, SparseMatrix::identity(m.dim()))
    }

    pub fn zero(source: &Comodule, target: &Comodule) -> Self {
        Self::trusted(source, target, SparseMatrix::zero(target.dim(), source.dim()))
    }

    /// self ∘ rhs.
    pub fn compose(&self, rhs: &ComodMap) -> ComodMap {
        assert_eq!(rhs.target.dim(), self.source.dim(), "composition of incompatible maps");
        Self::trusted(&rhs.source, &self.target, self.matrix.compose(&rhs.matrix))
    }

    pub fn add(&self, other: &ComodMap) -> ComodMap {
        Self::trusted(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &ComodMap) -> ComodMap {
        Self::trusted(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &CycScalar) -> ComodMap {
        Self::trusted(&self.source, &self.target, self.matrix.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.apply(v)
    }

    pub fn is_colinear(&self) -> bool {
        is_colinear(&self.source, &self.target, &self.matrix)
    }
}

/// Operators for a comodule with no structure beyond its grading.
pub(crate) fn trivial_operators(alg: &HopfAlgebra, n: usize) -> Vec<Matrix> {
    (0..alg.pbw_count())
        .map(|p| {
            if p == 0 {
                SparseMatrix::identity(n)
            } else {
                SparseMatrix::zero(n, n)
            }
        })
        .collect()
}
