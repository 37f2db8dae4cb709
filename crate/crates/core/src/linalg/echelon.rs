use std::collections::{BTreeMap, HashMap};

use super::field::Field;
use super::sparse::SparseVec;

/// Incrementally maintained fully reduced row echelon form.
///
/// Every stored row has a pivot (its first nonzero index) equal to one, and
/// every other row is zero in that column. The row space is therefore spanned
/// by a basis whose coordinates can be read off the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    width: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec<F>>>(width: usize, rows: I) -> Self {
        let mut e = Echelon::new(width);
        for r in rows {
            e.insert(&r);
        }
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Pivot column of each row, in row order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Removes the row-space component of `v` along pivot columns. The
    /// result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(&i).map(|&r| (r, c.clone())))
            .collect();
        match hits.len() {
            0 => v.clone(),
            1 => v.axpy(&hits[0].1.neg_ref(), &self.rows[hits[0].0]),
            _ => {
                let mut acc: BTreeMap<usize, F> = v.iter().map(|(i, c)| (i, c.clone())).collect();
                for (r, c) in hits {
                    let neg = c.neg_ref();
                    for (i, x) in self.rows[r].iter() {
                        let delta = neg.mul_ref(x);
                        match acc.get_mut(&i) {
                            Some(cur) => *cur = cur.add_ref(&delta),
                            None => {
                                acc.insert(i, delta);
                            }
                        }
                    }
                }
                SparseVec::from_pairs(acc)
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((pc, _)) = r.first() else {
            return false;
        };
        let r = r.normalized();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if let Some(c) = row.get(pc).cloned() {
                *row = row.axpy(&c.neg_ref(), &r);
                debug_assert!(row.first().map(|(i, _)| i) == Some(self.pivots[k]));
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.pivots.push(pc);
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` (assumed in the row space) in the row basis.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Vec<F> {
        self.pivots
            .iter()
            .map(|p| v.get(*p).cloned().unwrap_or_else(F::zero))
            .collect()
    }

    /// Non-pivot columns, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Basis of the solution space of the homogeneous system whose equations
    /// are the stored rows. The j-th vector has a one at the j-th free column
    /// and zeros at the other free columns.
    pub fn nullspace(&self) -> Vec<SparseVec<F>> {
        let free = self.free_columns();
        let mut parts: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.iter() {
                if c != p {
                    parts.entry(c).or_default().push((p, x.neg_ref()));
                }
            }
        }
        free.into_iter()
            .map(|f| {
                let mut pairs = parts.remove(&f).unwrap_or_default();
                pairs.push((f, F::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Solves the affine system `rows · x = rhs` in `width` unknowns. Returns one
/// particular solution (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve_affine<F: Field>(
    width: usize,
    equations: &[(SparseVec<F>, F)],
) -> Option<SparseVec<F>> {
    // The constant column sits at index `width`, after every unknown, so a
    // pivot there means 0 = 1.
    let mut e = Echelon::new(width + 1);
    for (row, rhs) in equations {
        let aug = if rhs.is_zero() {
            row.clone()
        } else {
            row.add(&SparseVec::from_pairs(vec![(width, rhs.neg_ref())]))
        };
        e.insert(&aug);
    }
    if e.is_pivot(width) {
        return None;
    }
    Some(SparseVec::from_pairs(
        e.rows
            .iter()
            .zip(&e.pivots)
            .filter_map(|(row, &p)| row.get(width).map(|c| (p, c.neg_ref()))),
    ))
}

/// Basis of the kernel of the linear map whose equation rows are given.
pub fn kernel_from_equations<F: Field>(width: usize, equations: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    Echelon::from_rows(width, equations.iter().cloned()).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use crate::linalg::Ring;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn v(d: &[i64]) -> SparseVec<BigRational> {
        SparseVec::from_dense(&d.iter().map(|x| q(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, 2, 3])));
        assert!(e.insert(&v(&[2, 4, 7])));
        assert!(!e.insert(&v(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[0, 0, 1])));
        assert!(!e.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![v(&[1, 1, 0, 2]), v(&[0, 1, 1, 1])];
        let ker = kernel_from_equations(4, &rows);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let kd = k.to_dense(4);
            for r in &rows {
                assert!(r.dot_dense(&kd) == q(0));
            }
        }
    }

    #[test]
    fn affine_solve() {
        // x + y = 3, y = 1
        let eqs = vec![(v(&[1, 1]), q(3)), (v(&[0, 1]), q(1))];
        let x = solve_affine(2, &eqs).unwrap();
        assert_eq!(x.to_dense(2), vec![q(2), q(1)]);
        let bad = vec![(v(&[1, 1]), q(3)), (v(&[2, 2]), q(1))];
        assert!(solve_affine(2, &bad).is_none());
    }
}
