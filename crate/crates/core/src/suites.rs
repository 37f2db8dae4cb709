//! Deterministic randomized check suites. Each trial draws from its own
//! seeded stream, trials run in parallel, and reports are ordered by trial
//! index.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::comodule::{
    direct_sum, from_complex, from_n_complex, hom_space, read_differential, regular_b, tensor, unit, ComodMap,
    GradedComplex,
};
use crate::error::{Error, Result};
use crate::homology::{coinvariants, h0, hn, homology_table, integral_action, kunneth0, les_check};
use crate::homrep::{hom_homotopy, invariance_checks, lambda_action, lambda_identities, stable_hom_a, EquivariantModule};
use crate::hopf::{check_hopf_axioms, left_integral, quantum_determinant, HopfAlgebra, HopfDatum};
use crate::ktheory::{divides, k0_class, k0_equal};
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::random::{random_comodule, random_datum, random_map, random_n_complex, random_scalar, random_ses, trial_rng, Limits};
use crate::stable::{desuspend, embed_e, is_injective_object, stable_zero, suspend, ul_hom_dim};
use crate::Matrix;

pub const SUITES: &[&str] = &["hopf", "complex", "ncomplex", "teoiso", "les", "k0-ring", "stable", "kunneth", "homrep"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Homology window used by the suites that compare H_n.
    pub window: (i64, i64),
    pub limits: Limits,
    /// Fixed datum; by default trials cycle through dg, N = 3 and mixed.
    pub datum: Option<HopfDatum>,
}

impl SuiteConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        SuiteConfig {
            trials,
            seed,
            window: (-2, 2),
            limits: Limits::default(),
            datum: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TrialOutcome {
    pub index: usize,
    pub datum: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

type Trial = fn(&HopfAlgebra, &mut rand_chacha::ChaCha8Rng, &SuiteConfig) -> Result<()>;

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(Error::IncompatibleStructures(msg.into()))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        fail(msg())
    }
}

fn trial_for(name: &str) -> Option<Trial> {
    Some(match name {
        "hopf" => hopf_trial,
        "complex" => complex_trial,
        "ncomplex" => ncomplex_trial,
        "teoiso" => teoiso_trial,
        "les" => les_trial,
        "k0-ring" => k0_trial,
        "stable" => stable_trial,
        "kunneth" => kunneth_trial,
        "homrep" => homrep_trial,
        _ => return None,
    })
}

fn default_datum(name: &str, index: usize) -> HopfDatum {
    match name {
        "complex" => HopfDatum::dg(),
        "ncomplex" => HopfDatum::n_complex(3),
        _ => [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed()][index % 3].clone(),
    }
}

fn datum_label(d: &HopfDatum) -> String {
    serde_json::to_string(d).unwrap_or_default()
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let trial = trial_for(name).ok_or_else(|| Error::Parse(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", "))))?;
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = trial_rng(config.seed, index as u64);
            let datum = match (&config.datum, name) {
                (Some(d), _) => d.clone(),
                (None, "hopf") => random_datum(&mut rng),
                (None, _) => default_datum(name, index),
            };
            let label = datum_label(&datum);
            let result = HopfAlgebra::new(datum).and_then(|alg| trial(&alg, &mut rng, config));
            TrialOutcome {
                index,
                datum: label,
                passed: result.is_ok(),
                detail: result.err().map(|e| e.to_string()).unwrap_or_default(),
            }
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: config.seed,
        trials: config.trials,
        passed,
        failures: outcomes.into_iter().filter(|o| !o.passed).collect(),
    })
}

fn hopf_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, _: &SuiteConfig) -> Result<()> {
    left_integral(alg)?;
    quantum_determinant(alg)?;
    for check in check_hopf_axioms(alg, 1, 20, rng) {
        ensure(check.passed, || format!("{} fails at {}", check.name, check.failure.clone().unwrap_or_default()))?;
    }
    Ok(())
}

fn rank(m: &Matrix) -> usize {
    Echelon::from_rows(m.nrows(), m.columns().iter().cloned()).rank()
}

fn block(c: &GradedComplex, n: i64) -> Matrix {
    let dim = |k: i64| c.dims.get(&k).copied().unwrap_or(0);
    c.maps.get(&n).cloned().unwrap_or_else(|| SparseMatrix::zero(dim(n - 1), dim(n)))
}

/// dim ker ∂_n − rank ∂_{n+1}.
pub fn classical_homology(c: &GradedComplex, n: i64) -> usize {
    let dim = c.dims.get(&n).copied().unwrap_or(0);
    dim - rank(&block(c, n)) - rank(&block(c, n + 1))
}

fn complex_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let c = random_n_complex(rng, alg.order(), 2, -4, 4, 6);
    let m = from_complex(alg, &c)?;
    ensure(read_differential(&m)? == normalized(&c), || "differential does not round trip".into())?;
    let table = homology_table(&m, config.window.0, config.window.1)?;
    for (n, d) in &table.dims {
        let expected = classical_homology(&c, *n);
        ensure(*d == expected, || format!("H_{n}: {d} vs classical {expected}"))?;
    }
    Ok(())
}

/// Drops zero blocks so complexes compare structurally.
fn normalized(c: &GradedComplex) -> GradedComplex {
    GradedComplex {
        dims: c.dims.iter().filter(|(_, d)| **d > 0).map(|(n, d)| (*n, *d)).collect(),
        maps: c.maps.iter().filter(|(_, m)| !m.is_zero()).map(|(n, m)| (*n, m.clone())).collect(),
    }
}

/// dim(ker ∂^{N−1} ∩ M_{N−1}) − dim ∂(M_N).
pub fn n_complex_h1(c: &GradedComplex, n: u32) -> usize {
    let top = n as i64 - 1;
    let dim = |k: i64| c.dims.get(&k).copied().unwrap_or(0);
    let mut p = SparseMatrix::identity(dim(top));
    for k in (1..=top).rev() {
        p = block(c, k).compose(&p);
    }
    dim(top) - rank(&p) - rank(&block(c, top + 1))
}

fn ncomplex_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, _: &SuiteConfig) -> Result<()> {
    let n = alg.nilpotency()[0];
    let c = random_n_complex(rng, alg.order(), n, -3, 3, 3);
    let m = from_n_complex(alg, &c)?;
    let (got, expected) = (hn(&m, 1)?, n_complex_h1(&c, n));
    ensure(got == expected, || format!("H_1 = {got}, expected {expected}"))
}

fn teoiso_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let m = random_comodule(alg, rng, &config.limits);
    let (ul, h) = (ul_hom_dim(&unit(alg), &m)?, h0(&m)?.dim);
    ensure(ul == h, || format!("ulHom(k, M) = {ul}, H_0(M) = {h} for {} dims", m.dim()))
}

fn les_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let s = random_ses(alg, rng, &config.limits)?;
    let report = les_check(&s.u, &s.v, config.window.0, config.window.1)?;
    ensure(report.comparison_ok, || format!("{} sequence: comparison maps fail", s.kind))?;
    report.into_result().map(|_| ())
}

fn k0_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let small = Limits {
        max_dim: config.limits.max_dim / 2,
        ..config.limits
    };
    let (m, n) = (random_comodule(alg, rng, &small), random_comodule(alg, rng, &small));
    let (cm, cn) = (k0_class(&m), k0_class(&n));
    let t = k0_class(&tensor(&m, &n)?);
    ensure(t.representative == cm.mul(&cn).representative, || "[M⊗N] ≠ [M][N]".into())?;
    ensure(k0_class(&tensor(&m, &regular_b(alg))?).is_zero(), || "[M⊗B] ≢ 0".into())?;
    ensure(k0_equal(&k0_class(&suspend(&m)?), &cm.neg()), || "[TM] ≢ −[M]".into())?;
    ensure(k0_equal(&k0_class(&desuspend(&m)?), &cm.neg()), || "[T′M] ≢ −[M]".into())?;
    let s = random_ses(alg, rng, &small)?;
    let [x, y, z] = [&s.u.source, &s.u.target, &s.v.target].map(k0_class);
    ensure(y.representative == x.add(&z).representative, || format!("{} sequence: [Y] ≠ [X]+[Z]", s.kind))?;
    let g = cm.generator.clone();
    let p = g.mul(&cn.representative);
    ensure(divides(&g, &p).is_some_and(|q| q.mul(&g) == p), || "divides is unsound".into())?;
    Ok(())
}

fn stable_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let limits = &config.limits;
    let m = random_comodule(alg, rng, limits);
    let mb = tensor(&m, &regular_b(alg))?;
    ensure(is_injective_object(&mb)?, || "M⊗B is not injective".into())?;
    let (lo, hi) = config.window;
    ensure(homology_table(&mb, lo, hi)?.is_zero(), || "H_•(M⊗B) ≠ 0".into())?;
    ensure(k0_equal(&k0_class(&suspend(&m)?), &k0_class(&m).neg()), || "[TM] ≢ −[M]".into())?;
    let base = homology_table(&m, lo, hi)?;
    for (name, round) in [("TT′M", suspend(&desuspend(&m)?)?), ("T′TM", desuspend(&suspend(&m)?)?)] {
        let t = homology_table(&round, lo, hi)?;
        ensure(t.dims == base.dims, || format!("H_•({name}) = {:?}, H_•(M) = {:?}", t.dims, base.dims))?;
        ensure(k0_equal(&k0_class(&round), &k0_class(&m)), || format!("[{name}] ≢ [M]"))?;
    }
    // stably-zero maps form an ideal
    let n = random_comodule(alg, rng, limits);
    let i = embed_e(&m)?;
    let through = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<ComodMap> { Ok(random_map(&i.target, &n, rng)?.compose(&i)) };
    let (f, g) = (through(rng)?, through(rng)?);
    ensure(stable_zero(&f)? && stable_zero(&f.add(&g))?, || "sum of stably-zero maps".into())?;
    let after = random_map(&n, &random_comodule(alg, rng, limits), rng)?;
    let before = random_map(&random_comodule(alg, rng, limits), &m, rng)?;
    ensure(stable_zero(&after.compose(&f))?, || "post-composite of a stably-zero map".into())?;
    ensure(stable_zero(&f.compose(&before))?, || "pre-composite of a stably-zero map".into())?;
    Ok(())
}

fn kunneth_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let small = Limits {
        max_dim: config.limits.max_dim / 2,
        ..config.limits
    };
    let (m, n) = (random_comodule(alg, rng, &small), random_comodule(alg, rng, &small));
    let (_, report) = kunneth0(&m, &n)?;
    ensure(report.well_defined, || "Künneth map is not well defined".into())?;
    let coinv = Echelon::from_rows(m.dim(), coinvariants(&m));
    ensure(integral_action(&m)?.iter().all(|v| coinv.contains(v)), || "Λ·M ⊄ M^coH".into())?;
    let (lo, hi) = config.window;
    let sum = homology_table(&direct_sum(&m, &n)?, lo, hi)?;
    let (hm, hn_) = (homology_table(&m, lo, hi)?, homology_table(&n, lo, hi)?);
    for (k, d) in &sum.dims {
        ensure(*d == hm.dims[k] + hn_.dims[k], || format!("H_{k} is not additive"))?;
    }
    Ok(())
}

fn homrep_trial(alg: &HopfAlgebra, rng: &mut rand_chacha::ChaCha8Rng, config: &SuiteConfig) -> Result<()> {
    let m = random_comodule(alg, rng, &config.limits);
    let h = h0(&m)?.dim;
    let k = EquivariantModule::over_ground(&unit(alg));
    let mm = EquivariantModule::over_ground(&m);
    let (homotopy, _) = hom_homotopy(&k, &mm)?;
    let stable = stable_hom_a(&k, &mm)?;
    ensure(homotopy == h && stable == h, || format!("H_0(Hom(k,M)) = {homotopy}, D_H(k,M) = {stable}, H_0(M) = {h}"))?;
    let lambda = left_integral(alg)?;
    let l1 = lambda.eval(&alg.one());
    for f in hom_space(&m, &m)? {
        let g = lambda_action(&m, &m, &f.matrix)?;
        ensure(g == f.matrix.scale(&l1) && g.is_zero(), || "Λ·f ≠ Λ(1)f = 0 for colinear f".into())?;
    }
    let order = alg.order();
    let mut cols = Vec::new();
    for _ in 0..m.dim() {
        let mut col = Vec::new();
        for i in 0..m.dim() {
            if rng.gen_bool(0.3) {
                col.push((i, random_scalar(rng, order)));
            }
        }
        cols.push(SparseVec::from_pairs(col));
    }
    let f = SparseMatrix::from_columns(m.dim(), cols);
    ensure(lambda_identities(&m, &m, &f)?, || "Λ·(Λ·f) ≠ Λ(1)(Λ·f)".into())?;
    let monos = alg.monomials_in_box(1);
    ensure(invariance_checks(&m, &m, &f, &monos)?, || "Λ·f is not invariant".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", &SuiteConfig::new(1, 0)), Err(Error::Parse(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let c = SuiteConfig::new(3, 11);
        assert_eq!(run_suite("teoiso", &c).unwrap(), run_suite("teoiso", &c).unwrap());
    }

    #[test]
    fn every_suite_passes_a_few_trials() {
        for name in SUITES {
            let r = run_suite(name, &SuiteConfig::new(3, 5)).unwrap();
            assert!(r.all_passed(), "{name}: {:?}", r.failures);
        }
    }

    #[test]
    fn oracle_on_a_known_complex() {
        let alg = HopfAlgebra::new(HopfDatum::dg()).unwrap();
        let mut rng = trial_rng(0, 0);
        let c = random_n_complex(&mut rng, 2, 2, -1, 1, 2);
        let m = from_complex(&alg, &c).unwrap();
        for n in -1..=1 {
            assert_eq!(hn(&m, n).unwrap(), classical_homology(&c, n));
        }
    }
}
