use std::collections::BTreeMap;

use super::model::{trivial_operators, Comodule};
use super::ops::tensor;
use crate::error::{Error, Result};
use crate::hopf::{quantum_determinant, HElement, HopfAlgebra};
use crate::linalg::{Field, Ring, SparseMatrix, SparseVec};
use crate::scalars::{q_factorial, CycScalar};
use crate::Matrix;

/// A graded vector space with a degree −1 map ∂_n: M_n → M_{n−1}.
/// `maps[n]` has `dims[n−1]` rows and `dims[n]` columns; missing entries are
/// zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedComplex {
    pub dims: BTreeMap<i64, usize>,
    pub maps: BTreeMap<i64, Matrix>,
}

/// A graded space with d of degree −1 (`d[n]`: M_n → M_{n−1}) and B of degree
/// +1 (`b[n]`: M_n → M_{n+1}).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MixedComplex {
    pub dims: BTreeMap<i64, usize>,
    pub d: BTreeMap<i64, Matrix>,
    pub b: BTreeMap<i64, Matrix>,
}

/// Basis layout of a ℤ-graded space: degrees in increasing order, each a
/// consecutive block.
struct Layout {
    offsets: BTreeMap<i64, usize>,
    dims: BTreeMap<i64, usize>,
    total: usize,
}

impl Layout {
    fn new(dims: &BTreeMap<i64, usize>) -> Self {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (n, d) in dims {
            offsets.insert(*n, total);
            total += d;
        }
        Layout {
            offsets,
            dims: dims.clone(),
            total,
        }
    }

    fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    fn degrees(&self) -> Vec<Vec<i64>> {
        self.dims
            .iter()
            .flat_map(|(n, d)| std::iter::repeat_n(vec![*n], *d))
            .collect()
    }

    fn names(&self) -> Vec<String> {
        self.dims
            .iter()
            .flat_map(|(n, d)| (0..*d).map(move |j| format!("m{n}.{j}")))
            .collect()
    }

    /// Embeds blocks `maps[n]`: M_n → M_{n+shift} into one global matrix.
    fn global(&self, maps: &BTreeMap<i64, Matrix>, shift: i64) -> Result<Matrix> {
        let mut cols = vec![SparseVec::zero(); self.total];
        for (n, m) in maps {
            let (src, tgt) = (self.dim(*n), self.dim(n + shift));
            if m.is_zero() {
                continue;
            }
            if m.ncols() != src || m.nrows() != tgt {
                return Err(Error::Dimension(format!(
                    "map out of degree {n} is {}x{}, expected {tgt}x{src}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let (so, to) = (self.offsets[n], self.offsets.get(&(n + shift)).copied().unwrap_or(0));
            for j in 0..src {
                cols[so + j] = m.column(j).map_indices(|i| i + to);
            }
        }
        Ok(SparseMatrix::from_columns(self.total, cols))
    }

    fn degree_of(&self, idx: usize) -> i64 {
        let mut last = 0;
        for (n, o) in &self.offsets {
            if *o <= idx && self.dim(*n) > 0 {
                last = *n;
            }
        }
        last
    }
}

/// The one-dimensional comodule k g^a.
pub fn simple(alg: &HopfAlgebra, a: &[i64]) -> Result<Comodule> {
    if a.len() != alg.rank() {
        return Err(Error::Dimension(format!("degree of length {} in rank {}", a.len(), alg.rank())));
    }
    Comodule::from_operators(alg, vec![a.to_vec()], vec![format!("g{a:?}")], trivial_operators(alg, 1))
}

/// The trivial comodule k.
pub fn unit(alg: &HopfAlgebra) -> Comodule {
    simple(alg, &vec![0; alg.rank()]).expect("trivial comodule")
}

fn monomial_name(alg: &HopfAlgebra, p: usize) -> String {
    let names: Vec<String> = match alg.generator_count() {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        m => (1..=m).map(|i| format!("x{i}")).collect(),
    };
    let s: String = alg
        .pbw(p)
        .iter()
        .zip(&names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// B = span{x^p} with the coaction obtained by restricting Δ:
/// φ_n(x^p) = c_{p−n,n} x^{p−n}.
pub fn regular_b(alg: &HopfAlgebra) -> Comodule {
    let n = alg.pbw_count();
    let phi = (0..n)
        .map(|k| {
            let cols = (0..n)
                .map(|p| match alg.pbw_sub(p, k) {
                    Some(m) => SparseVec::from_pairs([(m, alg.split_coefficient(m, k).clone())]),
                    None => SparseVec::zero(),
                })
                .collect();
            SparseMatrix::from_columns(n, cols)
        })
        .collect();
    let degrees = (0..n).map(|p| alg.pbw_degree(p).to_vec()).collect();
    let names = (0..n).map(|p| monomial_name(alg, p)).collect();
    Comodule::from_operators(alg, degrees, names, phi).expect("B is a comodule")
}

/// Restriction to a set of basis coordinates closed under every φ.
pub fn restrict_to_coordinates(m: &Comodule, keep: &[usize]) -> Result<Comodule> {
    let mut inside = vec![false; m.dim()];
    for k in keep {
        inside[*k] = true;
    }
    for op in m.operators() {
        for k in keep {
            if op.column(*k).iter().any(|(i, _)| !inside[i]) {
                return Err(Error::InvalidComodule(format!(
                    "coordinates are not closed under the coaction at {}",
                    m.name(*k)
                )));
            }
        }
    }
    let phi = m.operators().iter().map(|op| op.submatrix(keep, keep)).collect();
    Comodule::from_operators(
        m.alg(),
        keep.iter().map(|k| m.degree(*k).to_vec()).collect(),
        keep.iter().map(|k| m.name(*k).to_string()).collect(),
        phi,
    )
}

/// B_{<top}, spanned by the PBW monomials below the top total degree.
pub fn b_lower(alg: &HopfAlgebra) -> Comodule {
    let keep: Vec<usize> = (0..alg.pbw_count())
        .filter(|p| alg.pbw_total(*p) < alg.top_total())
        .collect();
    restrict_to_coordinates(&regular_b(alg), &keep).expect("B_<top is a subcomodule")
}

/// P = B ⊗ k g^{−a_D}.
pub fn projective_p(alg: &HopfAlgebra) -> Result<Comodule> {
    let det: Vec<i64> = quantum_determinant(alg)?.iter().map(|x| -x).collect();
    tensor(&regular_b(alg), &simple(alg, &det)?)
}

fn require_single_generator(alg: &HopfAlgebra) -> Result<u32> {
    let d = alg.datum();
    if d.rank != 1 || d.generators.len() != 1 || d.generators[0].degree != vec![1] {
        return Err(Error::IncompatibleStructures(
            "complexes need rank 1 and a single generator of degree 1".into(),
        ));
    }
    Ok(d.generators[0].nilpotency)
}

/// Scalar c with (x^p)(g^b) = c·g^b x^p.
fn commutation(alg: &HopfAlgebra, p: &[u32], b: i64) -> CycScalar {
    let x = HElement::basis(crate::hopf::HMonomial::new(vec![0], p.to_vec()));
    let g = HElement::basis(alg.group_monomial(vec![b]));
    let prod = alg.multiply(&x, &g);
    prod.coefficient(&crate::hopf::HMonomial::new(vec![b], p.to_vec()))
}

/// N-complex (N the nilpotency of the single generator) with coaction
/// ρ(m) = Σ_i 1/[i]_ξ! ∂^i m ⊗ x^i g^{n−i} for m of degree n.
pub fn from_n_complex(alg: &HopfAlgebra, c: &GradedComplex) -> Result<Comodule> {
    let n = require_single_generator(alg)?;
    let layout = Layout::new(&c.dims);
    let d = layout.global(&c.maps, -1)?;
    let dim = layout.total;
    // ∂^N = 0
    let mut power = SparseMatrix::identity(dim);
    let mut powers = vec![power.clone()];
    for _ in 1..n {
        power = d.compose(&power);
        powers.push(power.clone());
    }
    let top = d.compose(&power);
    if let Some(j) = (0..dim).find(|j| !top.column(*j).is_zero()) {
        let degree = layout.degree_of(j);
        return Err(if n == 2 {
            Error::NotSquareZero(degree)
        } else {
            Error::NotNilpotent { n, degree }
        });
    }
    let gamma = alg.datum().generators[0].degree.clone();
    let xi = alg.zeta(alg.chi_exp(&gamma, &gamma)).clone();
    let degrees = layout.degrees();
    let mut phi = Vec::with_capacity(n as usize);
    for i in 0..n {
        let inv_fact = q_factorial(i, &xi).inv().ok_or_else(|| {
            Error::InvalidDatum("q-factorial vanishes below the nilpotency order".into())
        })?;
        let cols = (0..dim)
            .map(|v| {
                let deg = degrees[v][0];
                let coef = commutation(alg, &[i], deg - i as i64).mul_ref(&inv_fact);
                powers[i as usize].column(v).scale(&coef)
            })
            .collect();
        phi.push(SparseMatrix::from_columns(dim, cols));
    }
    Comodule::from_operators(alg, degrees, layout.names(), phi)
}

/// dg vector space with ρ(m) = m⊗gⁿ + ∂m⊗x g^{n−1}.
pub fn from_complex(alg: &HopfAlgebra, c: &GradedComplex) -> Result<Comodule> {
    if require_single_generator(alg)? != 2 {
        return Err(Error::IncompatibleStructures("complexes need a generator with x² = 0".into()));
    }
    from_n_complex(alg, c)
}

/// Recovers ∂ from a comodule over a single-generator datum, in the
/// basis layout produced by `from_n_complex`.
pub fn read_differential(m: &Comodule) -> Result<GradedComplex> {
    require_single_generator(m.alg())?;
    let alg = m.alg();
    let mut dims = BTreeMap::new();
    for d in m.degrees() {
        *dims.entry(d[0]).or_insert(0usize) += 1;
    }
    let layout = Layout::new(&dims);
    let op = m.generator_op(0);
    let mut maps = BTreeMap::new();
    for (&n, &dn) in &dims {
        let rows = layout.dim(n - 1);
        if rows == 0 || dn == 0 {
            continue;
        }
        let coef = commutation(alg, &[1], n - 1).inv().expect("root of unity");
        let so = layout.offsets[&n];
        let to = layout.offsets[&(n - 1)];
        let cols = (0..dn)
            .map(|j| SparseVec::from_pairs(op.column(so + j).iter().map(|(i, c)| (i - to, c.mul_ref(&coef)))))
            .collect();
        let block = SparseMatrix::from_columns(rows, cols);
        if !block.is_zero() {
            maps.insert(n, block);
        }
    }
    Ok(GradedComplex { dims, maps })
}

fn require_mixed(alg: &HopfAlgebra) -> Result<()> {
    let d = alg.datum();
    let ok = d.rank == 1
        && d.generators.len() == 2
        && d.generators[0].degree == vec![1]
        && d.generators[1].degree == vec![-1]
        && d.generators.iter().all(|g| g.nilpotency == 2);
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleStructures(
            "mixed complexes need generators x, y of degrees 1, −1 with x² = y² = 0".into(),
        ))
    }
}

/// Mixed complex with ρ(m) = m⊗g^n + dm⊗x g^{n−1} + Bm⊗y g^{n+1} + dBm⊗yx g^n.
pub fn from_mixed(alg: &HopfAlgebra, c: &MixedComplex) -> Result<Comodule> {
    require_mixed(alg)?;
    let layout = Layout::new(&c.dims);
    let d = layout.global(&c.d, -1)?;
    let b = layout.global(&c.b, 1)?;
    let first_bad = |m: &Matrix| (0..m.ncols()).find(|j| !m.column(*j).is_zero()).map(|j| layout.degree_of(j));
    if let Some(n) = first_bad(&d.compose(&d)) {
        return Err(Error::NotMixed(format!("d² ≠ 0 on degree {n}")));
    }
    if let Some(n) = first_bad(&b.compose(&b)) {
        return Err(Error::NotMixed(format!("B² ≠ 0 on degree {n}")));
    }
    let db = d.compose(&b);
    if let Some(n) = first_bad(&db.add(&b.compose(&d))) {
        return Err(Error::NotMixed(format!("dB + Bd ≠ 0 on degree {n}")));
    }
    let degrees = layout.degrees();
    let dim = layout.total;
    let x = alg.generator(0);
    let y = alg.generator(1);
    let yx = alg.multiply(&y, &x);
    let xy_key = crate::hopf::HMonomial::new(vec![0], vec![1, 1]);
    let scaled = |m: &Matrix, coef: &dyn Fn(i64) -> CycScalar| {
        let cols = (0..dim).map(|v| m.column(v).scale(&coef(degrees[v][0]))).collect();
        SparseMatrix::from_columns(dim, cols)
    };
    let phi_x = scaled(&d, &|n| commutation(alg, &[1, 0], n - 1));
    let phi_y = scaled(&b, &|n| commutation(alg, &[0, 1], n + 1));
    let phi_xy = scaled(&db, &|n| {
        let g = HElement::basis(alg.group_monomial(vec![n]));
        let prod = alg.multiply(&yx, &g);
        prod.coefficient(&crate::hopf::HMonomial::new(vec![n], xy_key.pbw.clone()))
    });
    let mut phi = vec![SparseMatrix::zero(dim, dim); 4];
    phi[0] = SparseMatrix::identity(dim);
    phi[alg.generator_index(0)] = phi_x;
    phi[alg.generator_index(1)] = phi_y;
    phi[alg.pbw_index(&[1, 1]).unwrap()] = phi_xy;
    Comodule::from_operators(alg, degrees, layout.names(), phi)
}

/// Direct sum of simples k g^{a} with the given multiplicities.
pub fn semisimple(alg: &HopfAlgebra, parts: &[(Vec<i64>, usize)]) -> Result<Comodule> {
    let mut degrees = Vec::new();
    let mut names = Vec::new();
    for (a, mult) in parts {
        if a.len() != alg.rank() {
            return Err(Error::Dimension("degree of the wrong rank".into()));
        }
        for j in 0..*mult {
            degrees.push(a.clone());
            names.push(format!("g{a:?}.{j}"));
        }
    }
    let n = degrees.len();
    Comodule::from_operators(alg, degrees, names, trivial_operators(alg, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfDatum;
    use crate::linalg::SparseMatrix;

    fn q(n: i64) -> CycScalar {
        CycScalar::from_integer(n)
    }

    fn mat(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        let dense: Vec<Vec<CycScalar>> = (0..rows)
            .map(|i| (0..cols).map(|j| q(entries[i * cols + j])).collect())
            .collect();
        SparseMatrix::from_dense_rows(rows, cols, &dense)
    }

    #[test]
    fn b_of_dg_datum() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let b = regular_b(&alg);
        assert_eq!(b.dim(), 2);
        assert_eq!(b.degrees(), &[vec![0], vec![1]]);
        // ρ(x) = x⊗g + 1⊗x
        let rho = b.coaction(1);
        assert_eq!(rho.len(), 2);
        // B is the complex kx → k with x ↦ 1
        let c = read_differential(&b).unwrap();
        assert_eq!(c.maps[&1], mat(1, 1, &[1]));
    }

    #[test]
    fn square_zero_is_enforced() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let c = GradedComplex {
            dims: [(0, 1), (1, 1), (2, 1)].into_iter().collect(),
            maps: [(1, mat(1, 1, &[1])), (2, mat(1, 1, &[1]))].into_iter().collect(),
        };
        assert_eq!(from_complex(&alg, &c).unwrap_err(), Error::NotSquareZero(2));
    }

    #[test]
    fn acyclic_and_trivial_complexes() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let c = GradedComplex {
            dims: [(0, 1), (1, 1)].into_iter().collect(),
            maps: [(1, mat(1, 1, &[1]))].into_iter().collect(),
        };
        let m = from_complex(&alg, &c).unwrap();
        assert!(m.same_structure(&regular_b(&alg)));
        let k = from_complex(
            &alg,
            &GradedComplex {
                dims: [(0, 1)].into_iter().collect(),
                maps: BTreeMap::new(),
            },
        )
        .unwrap();
        assert!(k.same_structure(&unit(&alg)));
    }

    #[test]
    fn three_complex_chain() {
        let alg = HopfAlgebra::new(HopfDatum::n_complex(3)).unwrap();
        let c = GradedComplex {
            dims: [(0, 1), (1, 1), (2, 1)].into_iter().collect(),
            maps: [(1, mat(1, 1, &[1])), (2, mat(1, 1, &[1]))].into_iter().collect(),
        };
        let m = from_n_complex(&alg, &c).unwrap();
        assert_eq!(read_differential(&m).unwrap(), c);
        // B for N = 3 has ∂(x^i) = [i] x^{i−1}, read back up to the [i]_ξ scalars
        let b = regular_b(&alg);
        let back = read_differential(&b).unwrap();
        let rebuilt = from_n_complex(&alg, &back).unwrap();
        assert!(rebuilt.same_structure(&b));
        let too_long = GradedComplex {
            dims: [(0, 1), (1, 1), (2, 1), (3, 1)].into_iter().collect(),
            maps: [(1, mat(1, 1, &[1])), (2, mat(1, 1, &[1])), (3, mat(1, 1, &[1]))]
                .into_iter()
                .collect(),
        };
        assert_eq!(
            from_n_complex(&alg, &too_long).unwrap_err(),
            Error::NotNilpotent { n: 3, degree: 3 }
        );
    }

    #[test]
    fn mixed_constructor() {
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        let k = from_mixed(
            &alg,
            &MixedComplex {
                dims: [(0, 1)].into_iter().collect(),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(k.same_structure(&unit(&alg)));
        // d: M_1 → M_0 and B: M_0 → M_1 with dB + Bd = 0 needs dB = −Bd
        let c = MixedComplex {
            dims: [(0, 1), (1, 1)].into_iter().collect(),
            d: [(1, mat(1, 1, &[1]))].into_iter().collect(),
            b: BTreeMap::new(),
        };
        assert!(from_mixed(&alg, &c).is_ok());
        let bad = MixedComplex {
            dims: [(0, 1), (1, 1)].into_iter().collect(),
            d: [(1, mat(1, 1, &[1]))].into_iter().collect(),
            b: [(0, mat(1, 1, &[1]))].into_iter().collect(),
        };
        assert!(matches!(from_mixed(&alg, &bad), Err(Error::NotMixed(_))));
        let b = regular_b(&alg);
        assert_eq!(b.dim(), 4);
        assert!(b.validate().valid);
    }

    #[test]
    fn lower_part_of_b() {
        let alg = HopfAlgebra::new(HopfDatum::n_complex(3)).unwrap();
        assert_eq!(b_lower(&alg).dim(), 2);
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        assert_eq!(b_lower(&alg).degrees(), &[vec![0], vec![-1], vec![1]]);
    }
}
