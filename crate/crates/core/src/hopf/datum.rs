use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::scalars::{is_primitive_root, root_of_unity};

/// A skew-primitive generator x_i: its grading degree γ_i and nilpotency N_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub degree: Vec<i64>,
    pub nilpotency: u32,
}

/// Which way group elements commute past generators.
///
/// `Standard` means g^a x_i = χ(a,γ_i) x_i g^a and x_i x_j = χ(γ_i,γ_j) x_j x_i.
/// `Inverse` replaces every χ by χ⁻¹, which is the same as negating the
/// bicharacter matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Standard,
    Inverse,
}

/// Presentation of k[ℤʳ]#B for a quantum linear space B.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HopfDatum {
    pub rank: usize,
    pub cyclotomic_order: u32,
    /// χ(a,b) = ζ_L^{aᵀQb}.
    pub bicharacter: Vec<Vec<i64>>,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub valid: bool,
    pub dim_b: u64,
    pub violations: Vec<String>,
}

impl HopfDatum {
    /// Exterior algebra on one generator of degree 1: dg vector spaces.
    pub fn dg() -> Self {
        Self::n_complex(2)
    }

    /// One generator of degree 1 with q = ζ_N: N-complexes.
    pub fn n_complex(n: u32) -> Self {
        HopfDatum {
            rank: 1,
            cyclotomic_order: n,
            bicharacter: vec![vec![1]],
            generators: vec![Generator {
                degree: vec![1],
                nilpotency: n,
            }],
            orientation: Orientation::Standard,
        }
    }

    /// Generators x of degree 1 and y of degree −1, both squaring to zero:
    /// mixed complexes.
    pub fn mixed() -> Self {
        HopfDatum {
            rank: 1,
            cyclotomic_order: 2,
            bicharacter: vec![vec![1]],
            generators: vec![
                Generator {
                    degree: vec![1],
                    nilpotency: 2,
                },
                Generator {
                    degree: vec![-1],
                    nilpotency: 2,
                },
            ],
            orientation: Orientation::Standard,
        }
    }

    /// Rank two with x₁² = 0 in degree e₁ and x₂³ = 0 in degree e₂.
    pub fn rank_two_example() -> Self {
        HopfDatum {
            rank: 2,
            cyclotomic_order: 6,
            bicharacter: vec![vec![3, 0], vec![0, 2]],
            generators: vec![
                Generator {
                    degree: vec![1, 0],
                    nilpotency: 2,
                },
                Generator {
                    degree: vec![0, 1],
                    nilpotency: 3,
                },
            ],
            orientation: Orientation::Standard,
        }
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// aᵀQb, not reduced and without the orientation sign.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.bicharacter[i][j] * bj;
            }
        }
        s
    }

    /// Exponent e in [0, L) with q_ij = ζ_L^e.
    pub fn q_exponent(&self, i: usize, j: usize) -> i64 {
        self.form(&self.generators[i].degree, &self.generators[j].degree)
            .rem_euclid(self.cyclotomic_order as i64)
    }

    pub fn dim_b(&self) -> u64 {
        self.generators.iter().map(|g| g.nilpotency as u64).product()
    }

    pub fn validate(&self) -> DatumReport {
        let mut violations = Vec::new();
        let r = self.rank;
        if self.cyclotomic_order == 0 {
            violations.push("cyclotomic order must be positive".to_string());
        }
        if self.bicharacter.len() != r || self.bicharacter.iter().any(|row| row.len() != r) {
            violations.push(format!("bicharacter must be a {r}x{r} matrix"));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree.len() != r {
                violations.push(format!("generator {i}: degree has length {}, expected {r}", g.degree.len()));
            }
            if g.nilpotency < 2 {
                violations.push(format!("generator {i}: nilpotency {} < 2", g.nilpotency));
            }
        }
        if !violations.is_empty() {
            return DatumReport {
                valid: false,
                dim_b: 0,
                violations,
            };
        }
        let l = self.cyclotomic_order;
        for (i, g) in self.generators.iter().enumerate() {
            let e = self.q_exponent(i, i);
            if !is_primitive_root(&root_of_unity(l, e), g.nilpotency) {
                let order = l / (e as u32).gcd(&l);
                violations.push(format!(
                    "q_{i}{i} = ζ_{l}^{e} has order {order}, but x_{i} has nilpotency {}",
                    g.nilpotency
                ));
            }
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let s = (self.q_exponent(i, j) + self.q_exponent(j, i)).rem_euclid(l as i64);
                if s != 0 {
                    violations.push(format!("q_{i}{j}·q_{j}{i} = ζ_{l}^{s} ≠ 1"));
                }
            }
        }
        DatumReport {
            valid: violations.is_empty(),
            dim_b: self.dim_b(),
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_data_are_valid() {
        let r = HopfDatum::dg().validate();
        assert!(r.valid);
        assert_eq!(r.dim_b, 2);
        let r = HopfDatum::mixed().validate();
        assert!(r.valid, "{:?}", r.violations);
        assert_eq!(r.dim_b, 4);
        assert!(HopfDatum::n_complex(5).validate().valid);
        let r = HopfDatum::rank_two_example().validate();
        assert!(r.valid, "{:?}", r.violations);
        assert_eq!(r.dim_b, 6);
    }

    #[test]
    fn trivial_self_braiding_is_rejected() {
        let mut d = HopfDatum::dg();
        d.bicharacter = vec![vec![0]];
        let r = d.validate();
        assert!(!r.valid);
        assert!(r.violations[0].contains("q_00"));
    }

    #[test]
    fn non_inverse_cross_braiding_is_rejected() {
        let mut d = HopfDatum::rank_two_example();
        d.bicharacter[0][1] = 1;
        let r = d.validate();
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| v.contains("q_01")));
    }

    #[test]
    fn json_round_trip() {
        let d = HopfDatum::mixed();
        let s = serde_json::to_string(&d).unwrap();
        let back: HopfDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(d, back);
        let minimal = r#"{"rank":1,"cyclotomic_order":2,"bicharacter":[[1]],"generators":[{"degree":[1],"nilpotency":2}]}"#;
        let d: HopfDatum = serde_json::from_str(minimal).unwrap();
        assert_eq!(d, HopfDatum::dg());
    }
}
