use hopfology::comodule::{regular_b, unit};
use hopfology::homology::{homology_table, hn, kunneth0};
use hopfology::stable::{desuspend, ul_hom_dim};
use hopfology::{HopfAlgebra, HopfDatum};

fn mixed() -> HopfAlgebra {
    HopfAlgebra::new(HopfDatum::mixed()).unwrap()
}

#[test]
fn mixed_unit_low_degrees() {
    let alg = mixed();
    let k = unit(&alg);
    assert_eq!(hn(&k, 0).unwrap(), 1);
    assert_eq!(hn(&k, 1).unwrap(), 1);
    assert_eq!(hn(&k, -1).unwrap(), 0);
}

#[test]
fn mixed_desuspension_of_unit_is_three_dimensional() {
    // T′(k) = k ⊕ kx ⊕ ky with D = 1.
    let alg = mixed();
    assert_eq!(desuspend(&unit(&alg)).unwrap().dim(), 3);
}

/// Pins the computed table so a regression is visible.
#[test]
fn mixed_unit_table_on_wide_window() {
    let alg = mixed();
    let t = homology_table(&unit(&alg), -4, 4).unwrap();
    let ones: Vec<i64> = t.dims.iter().filter(|(_, d)| **d == 1).map(|(n, _)| *n).collect();
    assert_eq!(ones, vec![-4, -2, 0, 1, 3]);
    assert!(t.dims.values().all(|d| *d <= 1));
}

/// The table with ones at n ∈ {0, 1} only. Not attainable with the
/// shift functors as defined: H_3(k) = H_1(T′²k) is nonzero.
#[test]
#[ignore = "stated table conflicts with the computed one"]
fn mixed_unit_table_stated() {
    let alg = mixed();
    let t = homology_table(&unit(&alg), -4, 4).unwrap();
    for (n, d) in &t.dims {
        assert_eq!(*d, usize::from(*n == 0 || *n == 1), "n = {n}");
    }
}

#[test]
fn injective_b_has_no_homology() {
    for d in [HopfDatum::dg(), HopfDatum::n_complex(3), HopfDatum::mixed()] {
        let alg = HopfAlgebra::new(d).unwrap();
        let t = homology_table(&regular_b(&alg), -2, 2).unwrap();
        assert!(t.is_zero());
        assert_eq!(ul_hom_dim(&unit(&alg), &regular_b(&alg)).unwrap(), 0);
    }
}

#[test]
fn degree_zero_kunneth_is_iso_for_units() {
    let alg = mixed();
    let (_, report) = kunneth0(&unit(&alg), &unit(&alg)).unwrap();
    assert!(report.well_defined);
    assert!(report.injective && report.surjective);
}
