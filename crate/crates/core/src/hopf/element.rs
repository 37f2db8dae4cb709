use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::Ring;
use crate::scalars::CycScalar;

/// Normal-form monomial gᵃ·x₁^{n₁}⋯x_m^{n_m}. Ordered lexicographically by
/// group part, then PBW exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HMonomial {
    pub group: Vec<i64>,
    pub pbw: Vec<u32>,
}

impl HMonomial {
    pub fn new(group: Vec<i64>, pbw: Vec<u32>) -> Self {
        HMonomial { group, pbw }
    }

    pub fn group_like(group: Vec<i64>, generators: usize) -> Self {
        HMonomial {
            group,
            pbw: vec![0; generators],
        }
    }

    pub fn is_group_like(&self) -> bool {
        self.pbw.iter().all(|n| *n == 0)
    }
}

impl fmt::Display for HMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self
            .group
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",");
        if self.group.len() == 1 {
            write!(f, "g^{g}")?;
        } else {
            write!(f, "g^({g})")?;
        }
        for (i, n) in self.pbw.iter().enumerate() {
            match n {
                0 => {}
                1 => write!(f, "·x{}", i + 1)?,
                _ => write!(f, "·x{}^{n}", i + 1)?,
            }
        }
        Ok(())
    }
}

/// Finitely supported linear combination of keys with cyclotomic
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, CycScalar>,
}

/// An element of H.
pub type HElement = Combination<HMonomial>;
/// An element of H⊗H.
pub type HTensorElement = Combination<(HMonomial, HMonomial)>;
/// An element of H⊗H⊗H.
pub type HTensor3Element = Combination<(HMonomial, HMonomial, HMonomial)>;

impl<K: Ord + Clone> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: CycScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(key, c);
        s
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, CycScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, CycScalar)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, key: K, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                *cur = cur.add_ref(&c);
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &CycScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &K) -> CycScalar {
        self.terms.get(key).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (k, c) in other.iter() {
            s.add_term(k.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycScalar::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    /// Applies a linear map defined on keys.
    pub fn map_linear<K2: Ord + Clone>(&self, f: impl Fn(&K) -> Combination<K2>) -> Combination<K2> {
        let mut out = Combination::zero();
        for (k, c) in self.iter() {
            for (k2, c2) in f(k).iter() {
                out.add_term(k2.clone(), c.mul_ref(c2));
            }
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    k.to_string()
                } else {
                    format!("({c})·{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Human-readable form of an element of H⊗H.
pub fn format_tensor(t: &HTensorElement) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    t.iter()
        .map(|((a, b), c)| {
            if c.is_one() {
                format!("{a}⊗{b}")
            } else {
                format!("({c})·{a}⊗{b}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
