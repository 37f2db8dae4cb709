//! Seeded random instances: Hopf data, staged complexes, comodules from the
//! constructor grammar, colinear maps and short exact sequences.
//!
//! Raw coaction tables almost never satisfy coassociativity, so every
//! object is built from validated constructors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comodule::{
    b_lower, cokernel, direct_sum, direct_sum_maps, from_complex, from_mixed, from_n_complex, hom_space,
    image, kernel, regular_b, simple, tensor, ComodMap, Comodule, GradedComplex, MixedComplex,
};
use crate::error::Result;
use crate::hopf::{Generator, HopfAlgebra, HopfDatum, Orientation};
use crate::linalg::{kernel_from_equations, solve_affine, Ring, SparseMatrix, SparseVec};
use crate::scalars::{root_of_unity, CycScalar};
use crate::stable::{cone, desuspend, embed_e, suspend};
use crate::{Matrix, Vector};
use num_integer::Integer;
use num_traits::Zero;

/// The generator for trial `index` of a run seeded with `seed`. Each index
/// gets its own ChaCha stream, so trials are independent of scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A small nonzero rational.
pub fn random_rational<R: Rng>(rng: &mut R) -> CycScalar {
    let num = *[-2, -1, 1, 2, 3].choose(rng).unwrap();
    CycScalar::from_fraction(num, rng.gen_range(1..=2))
}

/// A small element of ℚ(ζ_order), possibly zero.
pub fn random_scalar<R: Rng>(rng: &mut R, order: u32) -> CycScalar {
    if rng.gen_bool(0.3) {
        return CycScalar::zero();
    }
    let mut s = random_rational(rng);
    if order > 2 && rng.gen_bool(0.4) {
        let e = rng.gen_range(1..order as i64);
        s = s.add_ref(&root_of_unity(order, e).mul_ref(&random_rational(rng)));
    }
    s
}

fn random_degree<R: Rng>(rng: &mut R, rank: usize, radius: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect()
}

/// Rejection-samples a valid quantum-linear-space datum with rank ≤ 2,
/// nilpotencies ≤ 4 and cyclotomic order ≤ 12.
pub fn random_datum<R: Rng>(rng: &mut R) -> HopfDatum {
    loop {
        let rank = rng.gen_range(1..=2);
        let count = rng.gen_range(1..=2);
        let generators: Vec<Generator> = (0..count)
            .map(|_| Generator {
                degree: random_degree(rng, rank, 1),
                nilpotency: rng.gen_range(2..=4),
            })
            .collect();
        if generators.iter().any(|g| g.degree.iter().all(|x| *x == 0)) {
            continue;
        }
        let lcm = generators.iter().fold(1u32, |a, g| a.lcm(&g.nilpotency));
        let order = lcm * rng.gen_range(1..=12 / lcm);
        let bicharacter = (0..rank)
            .map(|_| (0..rank).map(|_| rng.gen_range(0..order as i64)).collect())
            .collect();
        let d = HopfDatum {
            rank,
            cyclotomic_order: order,
            bicharacter,
            generators,
            orientation: Orientation::Standard,
        };
        if d.validate().valid && HopfAlgebra::new(d.clone()).is_ok() {
            return d;
        }
    }
}

/// Which of the named families a datum belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// One generator of degree 1 with q = ζ_N (N = 2 is dg).
    NComplex(u32),
    Mixed,
    Other,
}

impl Family {
    pub fn of(d: &HopfDatum) -> Self {
        if *d == HopfDatum::mixed() {
            return Family::Mixed;
        }
        match d.generators.as_slice() {
            [g] if *d == HopfDatum::n_complex(g.nilpotency) => Family::NComplex(g.nilpotency),
            _ => Family::Other,
        }
    }
}

/// Size bounds for generated objects.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_dim: usize,
    /// Nesting depth of grammar operations.
    pub depth: u32,
    /// Bound on |degree| of simples and on the degree range of complexes.
    pub radius: i64,
    /// Bound on each graded piece of a complex.
    pub piece: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 8,
            depth: 2,
            radius: 2,
            piece: 2,
        }
    }
}

/// A random matrix with `ncols` columns drawn from the span of `basis`.
fn columns_in<R: Rng>(rng: &mut R, order: u32, rows: usize, ncols: usize, basis: &[Vector]) -> Matrix {
    let cols = (0..ncols)
        .map(|_| {
            basis.iter().fold(SparseVec::zero(), |acc, b| {
                let c = random_scalar(rng, order);
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&b.scale(&c))
                }
            })
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

fn rows_of(m: &Matrix) -> Vec<Vector> {
    m.transpose().columns().to_vec()
}

fn random_dims<R: Rng>(rng: &mut R, lo: i64, hi: i64, piece: usize) -> BTreeMap<i64, usize> {
    (lo..=hi).map(|n| (n, rng.gen_range(0..=piece))).collect()
}

/// A random N-complex on degrees lo..=hi. Each ∂_n is sampled with columns
/// in the kernel of ∂^{N−1} on M_{n−1}, so ∂^N = 0 by construction.
pub fn random_n_complex<R: Rng>(rng: &mut R, order: u32, n: u32, lo: i64, hi: i64, piece: usize) -> GradedComplex {
    let dims = random_dims(rng, lo, hi, piece);
    let dim = |k: i64| dims.get(&k).copied().unwrap_or(0);
    let mut maps: BTreeMap<i64, Matrix> = BTreeMap::new();
    for deg in lo + 1..=hi {
        // ∂^{N−1}: M_{deg−1} → M_{deg−N}
        let mut p = SparseMatrix::identity(dim(deg - 1));
        for k in (deg - n as i64 + 1..deg).rev() {
            let step = maps.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zero(dim(k - 1), dim(k)));
            p = step.compose(&p);
        }
        let allowed = kernel_from_equations(dim(deg - 1), &rows_of(&p));
        maps.insert(deg, columns_in(rng, order, dim(deg - 1), dim(deg), &allowed));
    }
    GradedComplex { dims, maps }
}

/// A random mixed complex on degrees lo..=hi. d is a staged random complex;
/// each B_n is then solved from dB + Bd = 0 and B_n B_{n−1} = 0, with the
/// extra condition B_n(im d_{n+1}) ⊆ im d_{n+2} that keeps the next step
/// solvable. If a step is still inconsistent B is resampled, and after a
/// few attempts B = 0 is used.
pub fn random_mixed<R: Rng>(rng: &mut R, lo: i64, hi: i64, piece: usize) -> MixedComplex {
    let c = random_n_complex(rng, 2, 2, lo, hi, piece);
    let dims = c.dims.clone();
    let dim = |k: i64| dims.get(&k).copied().unwrap_or(0);
    let dmap = |k: i64| c.maps.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zero(dim(k - 1), dim(k)));
    'attempt: for _ in 0..6 {
        let mut b: BTreeMap<i64, Matrix> = BTreeMap::new();
        for n in lo..hi {
            let (rows, cols) = (dim(n + 1), dim(n));
            let var = |r: usize, col: usize| col * rows + r;
            let width = rows * cols;
            let prev = b.get(&(n - 1)).cloned().unwrap_or_else(|| SparseMatrix::zero(cols, dim(n - 1)));
            let mut eqs: Vec<(Vector, CycScalar)> = Vec::new();
            // d_{n+1} B_n = −B_{n−1} d_n on M_n
            let d_up = dmap(n + 1);
            let rhs = prev.compose(&dmap(n)).scale(&CycScalar::from_integer(-1));
            for j in 0..cols {
                for i in 0..cols {
                    let row = SparseVec::from_pairs((0..rows).filter_map(|r| {
                        let c = d_up.get(i, r);
                        (!c.is_zero()).then(|| (var(r, j), c))
                    }));
                    eqs.push((row, rhs.get(i, j)));
                }
            }
            // B_n B_{n−1} = 0
            for w in prev.columns() {
                for r in 0..rows {
                    let row = SparseVec::from_pairs(w.iter().map(|(k, c)| (var(r, k), c.clone())));
                    eqs.push((row, CycScalar::zero()));
                }
            }
            // B_n(im d_{n+1}) ⊆ im d_{n+2}: annihilators of im d_{n+2} kill B_n d_{n+1}
            let annihilators = kernel_from_equations(rows, dmap(n + 2).columns());
            for w in d_up.columns().iter().filter(|w| !w.is_zero()) {
                for l in &annihilators {
                    let row = SparseVec::from_pairs(
                        w.iter().flat_map(|(k, c)| l.iter().map(move |(r, a)| (var(r, k), a.mul_ref(c)))),
                    );
                    eqs.push((row, CycScalar::zero()));
                }
            }
            let Some(particular) = solve_affine(width, &eqs) else {
                continue 'attempt;
            };
            let homogeneous: Vec<Vector> = eqs.iter().map(|(r, _)| r.clone()).collect();
            let free = kernel_from_equations(width, &homogeneous);
            let x = free.iter().fold(particular, |acc, k| {
                let c = random_scalar(rng, 2);
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&k.scale(&c))
                }
            });
            b.insert(n, SparseMatrix::unflatten(rows, cols, &x));
        }
        return MixedComplex { dims, d: c.maps, b };
    }
    MixedComplex {
        dims,
        d: c.maps,
        b: BTreeMap::new(),
    }
}

/// The family's own random object: a staged complex, N-complex or mixed
/// complex, or a simple for data outside the named families.
pub fn random_family_object<R: Rng>(alg: &HopfAlgebra, rng: &mut R, limits: &Limits) -> Result<Comodule> {
    let r = limits.radius;
    match Family::of(alg.datum()) {
        Family::NComplex(2) => from_complex(alg, &random_n_complex(rng, alg.order(), 2, -r, r, limits.piece)),
        Family::NComplex(n) => from_n_complex(alg, &random_n_complex(rng, alg.order(), n, -r, r, limits.piece)),
        Family::Mixed => from_mixed(alg, &random_mixed(rng, -r, r, limits.piece)),
        Family::Other => simple(alg, &random_degree(rng, alg.rank(), r)),
    }
}

/// A random colinear map M → N, a combination of a basis of Hom^H(M, N).
pub fn random_map<R: Rng>(m: &Comodule, n: &Comodule, rng: &mut R) -> Result<ComodMap> {
    let order = m.alg().order();
    Ok(hom_space(m, n)?
        .iter()
        .fold(ComodMap::zero(m, n), |acc, f| acc.add(&f.scale(&random_scalar(rng, order)))))
}

fn leaf<R: Rng>(alg: &HopfAlgebra, rng: &mut R, limits: &Limits) -> Result<Comodule> {
    match rng.gen_range(0..6) {
        0 | 1 => simple(alg, &random_degree(rng, alg.rank(), limits.radius)),
        2 => Ok(regular_b(alg)),
        3 => Ok(b_lower(alg)),
        _ => random_family_object(alg, rng, limits),
    }
}

fn grow<R: Rng>(alg: &HopfAlgebra, rng: &mut R, limits: &Limits, depth: u32) -> Result<Comodule> {
    if depth == 0 || rng.gen_bool(0.35) {
        return leaf(alg, rng, limits);
    }
    let m = grow(alg, rng, limits, depth - 1)?;
    if m.dim() > limits.max_dim {
        return Ok(m);
    }
    match rng.gen_range(0..5) {
        0 => direct_sum(&m, &grow(alg, rng, limits, depth - 1)?),
        1 => tensor(&m, &leaf(alg, rng, limits)?),
        2 if m.dim() * (alg.pbw_count() - 1) <= limits.max_dim => suspend(&m),
        3 if m.dim() * (alg.pbw_count() - 1) <= limits.max_dim => desuspend(&m),
        _ => {
            let n = grow(alg, rng, limits, depth - 1)?;
            if m.dim() * alg.pbw_count() + n.dim() > 2 * limits.max_dim {
                return direct_sum(&m, &n);
            }
            Ok(cone(&random_map(&m, &n, rng)?)?.object)
        }
    }
}

/// A nonzero comodule from the constructor grammar (simples, B, B_{<top},
/// the family's complexes, closed under ⊕, ⊗, T, T′ and cones) with
/// dimension at most `limits.max_dim`.
pub fn random_comodule<R: Rng>(alg: &HopfAlgebra, rng: &mut R, limits: &Limits) -> Comodule {
    loop {
        if let Ok(m) = grow(alg, rng, limits, limits.depth) {
            if m.dim() > 0 && m.dim() <= limits.max_dim {
                return m;
            }
        }
    }
}

/// A short exact sequence 0 → X → Y → Z → 0 given by its two maps.
#[derive(Clone, Debug)]
pub struct Ses {
    pub u: ComodMap,
    pub v: ComodMap,
    pub kind: &'static str,
}

/// A random short exact sequence: a cone row 0→Y→Co(f)→TX→0, a kernel or
/// image sequence of a random map, the defining sequence 0→X→X⊗B→TX→0, or
/// a split sequence. Kernel and image sequences use a random endomorphism
/// of X⊕Y so both ends are usually nonzero.
pub fn random_ses<R: Rng>(alg: &HopfAlgebra, rng: &mut R, limits: &Limits) -> Result<Ses> {
    let small = Limits {
        max_dim: (limits.max_dim / 2).max(1),
        ..*limits
    };
    let x = random_comodule(alg, rng, &small);
    let y = random_comodule(alg, rng, &small);
    let (u, v, kind) = match rng.gen_range(0..5) {
        0 => {
            let c = cone(&random_map(&x, &y, rng)?)?;
            (c.from_target, c.to_suspension, "cone")
        }
        1 => {
            let s = direct_sum(&x, &y)?;
            let k = kernel(&random_map(&s, &s, rng)?);
            (k.to_comodule().1, k.quotient().1, "kernel")
        }
        2 => {
            let s = direct_sum(&x, &y)?;
            let i = image(&random_map(&s, &s, rng)?);
            (i.to_comodule().1, i.quotient().1, "image")
        }
        3 => {
            let i = embed_e(&x)?;
            let p = cokernel(&i).1;
            (i, p, "injective")
        }
        _ => {
            let s = direct_sum(&x, &y)?;
            let [ix, _, _, py] = direct_sum_maps(&x, &y, &s);
            (ix, py, "split")
        }
    };
    Ok(Ses { u, v, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::check_exact;

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(trial_rng(7, 3).gen::<u64>(), trial_rng(7, 4).gen::<u64>());
    }

    #[test]
    fn sampled_data_are_valid() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..10 {
            let d = random_datum(&mut rng);
            assert!(d.validate().valid);
            assert!(d.rank <= 2 && d.cyclotomic_order <= 12);
            assert!(d.generators.iter().all(|g| g.nilpotency <= 4));
        }
    }

    #[test]
    fn staged_complexes_are_nilpotent() {
        let mut rng = trial_rng(2, 0);
        for n in [2, 3, 4] {
            let alg = HopfAlgebra::new(HopfDatum::n_complex(n)).unwrap();
            for _ in 0..5 {
                let c = random_n_complex(&mut rng, n, n, -3, 3, 3);
                from_n_complex(&alg, &c).unwrap();
            }
        }
        let alg = HopfAlgebra::new(HopfDatum::mixed()).unwrap();
        let mut nontrivial = 0;
        for _ in 0..10 {
            let c = random_mixed(&mut rng, -2, 2, 2);
            nontrivial += c.b.values().any(|m| !m.is_zero()) as usize;
            from_mixed(&alg, &c).unwrap();
        }
        assert!(nontrivial > 0);
    }

    #[test]
    fn grammar_objects_validate() {
        let mut rng = trial_rng(3, 0);
        for d in [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed(), HopfDatum::rank_two_example()] {
            let alg = HopfAlgebra::new(d).unwrap();
            for _ in 0..5 {
                let m = random_comodule(&alg, &mut rng, &Limits::default());
                assert!(m.validate().valid);
                let s = random_ses(&alg, &mut rng, &Limits::default()).unwrap();
                check_exact(&s.u, &s.v).unwrap();
            }
        }
    }
}
