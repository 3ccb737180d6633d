//! Symmetric integer trilinear (cubic) forms.
//!
//! Storage is the symmetric trilinear form itself: the entry at a sorted
//! triple `(i, j, k)` is the value `F(e_i, e_j, e_k)` on basis vectors.
//! Cup products of integral classes give these values directly, so no
//! denominators ever appear. Unlisted triples are zero.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::Zero;

use crate::error::{Error, Result};
use crate::lattice::matrix::UnimodularMap;
use crate::lattice::vector::{check_rank, IntVector, LinearForm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicForm {
    rank: usize,
    entries: BTreeMap<(usize, usize, usize), BigInt>,
}

impl CubicForm {
    pub fn zero_form(rank: usize) -> Self {
        CubicForm {
            rank,
            entries: BTreeMap::new(),
        }
    }

    /// Build from `(i, j, k) -> F(e_i, e_j, e_k)` pairs. Indices are sorted
    /// internally; values at the same triple accumulate; zeros are pruned.
    pub fn from_entries<I>(rank: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), BigInt)>,
    {
        let mut form = CubicForm::zero_form(rank);
        for ((i, j, k), v) in entries {
            form.add_entry(i, j, k, v)?;
        }
        Ok(form)
    }

    pub fn from_i64_entries(
        rank: usize,
        entries: &[((usize, usize, usize), i64)],
    ) -> Result<Self> {
        Self::from_entries(
            rank,
            entries.iter().map(|&(t, v)| (t, BigInt::from(v))),
        )
    }

    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, v: BigInt) -> Result<()> {
        let t = sort3(i, j, k);
        if t.2 >= self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: t.2 + 1,
            });
        }
        let slot = self.entries.entry(t).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&t);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `F(e_i, e_j, e_k)`; the indices may come in any order.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> BigInt {
        self.entries
            .get(&sort3(i, j, k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Nonzero entries at sorted triples, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn negated(&self) -> CubicForm {
        CubicForm {
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .map(|(&t, v)| (t, -v))
                .collect(),
        }
    }

    /// Full symmetric trilinear evaluation `F(x, y, z)`.
    pub fn eval(&self, x: &IntVector, y: &IntVector, z: &IntVector) -> Result<BigInt> {
        check_rank(self.rank, x.rank())?;
        check_rank(self.rank, y.rank())?;
        check_rank(self.rank, z.rank())?;
        let mut acc = BigInt::zero();
        for (&(i, j, k), v) in &self.entries {
            // sum of x_a y_b z_c over the distinct permutations (a,b,c)
            // of the multiset {i,j,k}
            let mut sym = BigInt::zero();
            for (a, b, c) in distinct_permutations(i, j, k) {
                sym += x.get(a) * y.get(b) * z.get(c);
            }
            acc += v * sym;
        }
        Ok(acc)
    }

    /// Diagonal value `F(w, w, w)`, the cubic polynomial of the form.
    pub fn eval_diag(&self, w: &IntVector) -> Result<BigInt> {
        check_rank(self.rank, w.rank())?;
        let mut acc = BigInt::zero();
        for (&(i, j, k), v) in &self.entries {
            let mult = BigInt::from(multiplicity(i, j, k));
            acc += v * mult * w.get(i) * w.get(j) * w.get(k);
        }
        Ok(acc)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (&(i, j, k), v)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j},{k}): {v}")?;
        }
        write!(f, "}}")
    }
}

fn sort3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut t = [i, j, k];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// Number of distinct permutations of the multiset `{i, j, k}`.
fn multiplicity(i: usize, j: usize, k: usize) -> u32 {
    if i == j && j == k {
        1
    } else if i == j || j == k || i == k {
        3
    } else {
        6
    }
}

fn distinct_permutations(i: usize, j: usize, k: usize) -> Vec<(usize, usize, usize)> {
    let mut perms = vec![
        (i, j, k),
        (i, k, j),
        (j, i, k),
        (j, k, i),
        (k, i, j),
        (k, j, i),
    ];
    perms.sort_unstable();
    perms.dedup();
    perms
}

/// Pull back a cubic form and a linear form along a unimodular basis
/// change: `F'(x, y, z) = F(Mx, My, Mz)` and `p'(x) = p(Mx)`.
pub fn change_basis(
    f: &CubicForm,
    p: &LinearForm,
    m: &UnimodularMap,
) -> Result<(CubicForm, LinearForm)> {
    check_rank(f.rank(), m.size())?;
    check_rank(f.rank(), p.rank())?;
    let n = f.rank();
    let cols: Vec<IntVector> = (0..n).map(|j| m.column(j)).collect();

    let mut new_form = CubicForm::zero_form(n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = f.eval(&cols[i], &cols[j], &cols[k])?;
                if !v.is_zero() {
                    new_form.add_entry(i, j, k, v)?;
                }
            }
        }
    }

    let p_coeffs = cols
        .iter()
        .map(|c| p.eval(c))
        .collect::<Result<Vec<_>>>()?;
    Ok((new_form, LinearForm::new(p_coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Rank-1 form with a single cube entry 1 (the projective-space form).
    fn p3_form() -> CubicForm {
        CubicForm::from_i64_entries(1, &[((0, 0, 0), 1)]).unwrap()
    }

    /// Rank-2 form with two cube entries 1 and no mixed entries.
    fn blpt_form() -> CubicForm {
        CubicForm::from_i64_entries(2, &[((0, 0, 0), 1), ((1, 1, 1), 1)]).unwrap()
    }

    /// Rank-2 bundle form: h^2 y = 1, h y^2 = -1, y^3 = 1, h^3 = 0.
    fn bundle_form() -> CubicForm {
        CubicForm::from_i64_entries(2, &[((0, 0, 1), 1), ((0, 1, 1), -1), ((1, 1, 1), 1)])
            .unwrap()
    }

    #[test]
    fn diag_evaluation() {
        let w = IntVector::from_i64(&[4]);
        assert_eq!(p3_form().eval(&w, &w, &w).unwrap(), bi(64));
        assert_eq!(p3_form().eval_diag(&IntVector::from_i64(&[1])).unwrap(), bi(1));

        let w = IntVector::from_i64(&[1, 1]);
        assert_eq!(blpt_form().eval(&w, &w, &w).unwrap(), bi(2));

        let w = IntVector::from_i64(&[4, -2]);
        assert_eq!(blpt_form().eval_diag(&w).unwrap(), bi(56));

        let w = IntVector::from_i64(&[4, 2]);
        assert_eq!(bundle_form().eval_diag(&w).unwrap(), bi(56));
    }

    #[test]
    fn eval_on_zero_vector() {
        let z = IntVector::zero(2);
        let w = IntVector::from_i64(&[3, 5]);
        assert_eq!(blpt_form().eval(&z, &w, &w).unwrap(), bi(0));
    }

    #[test]
    fn eval_matches_diag() {
        let f = bundle_form();
        let w = IntVector::from_i64(&[3, -7]);
        assert_eq!(f.eval(&w, &w, &w).unwrap(), f.eval_diag(&w).unwrap());
    }

    #[test]
    fn entry_accumulation_and_pruning() {
        let mut f = CubicForm::zero_form(2);
        f.add_entry(1, 0, 0, bi(2)).unwrap();
        f.add_entry(0, 0, 1, bi(-2)).unwrap();
        assert!(f.is_identically_zero());
        assert!(f.add_entry(0, 0, 2, bi(1)).is_err());
    }

    #[test]
    fn change_basis_identity_and_sign() {
        let f = bundle_form();
        let p = LinearForm::from_i64(&[0, 4]);
        let id = UnimodularMap::identity(2);
        let (f2, p2) = change_basis(&f, &p, &id).unwrap();
        assert_eq!(f2, f);
        assert_eq!(p2, p);

        let neg = UnimodularMap::negated_identity(2);
        let (f3, p3) = change_basis(&f, &p, &neg).unwrap();
        let w = IntVector::from_i64(&[4, 2]);
        assert_eq!(f3.eval_diag(&w).unwrap(), -f.eval_diag(&w).unwrap());
        assert_eq!(p3, p.neg());
    }

    #[test]
    fn change_basis_bundle_to_blowup() {
        // M = [[1,0],[1,1]] pulls the bundle tuple back to the blow-up tuple.
        let m = UnimodularMap::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap();
        let p_bundle = LinearForm::from_i64(&[0, 4]);
        let (f2, p2) = change_basis(&bundle_form(), &p_bundle, &m).unwrap();
        assert_eq!(f2, blpt_form());
        assert_eq!(p2, LinearForm::from_i64(&[4, 4]));
    }

    #[test]
    fn diagonal_transport() {
        let m = UnimodularMap::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap();
        let f = bundle_form();
        let (f2, _) = change_basis(&f, &LinearForm::zero(2), &m).unwrap();
        let w = IntVector::from_i64(&[4, -2]);
        let mw = m.apply(&w).unwrap();
        assert_eq!(f2.eval_diag(&w).unwrap(), f.eval_diag(&mw).unwrap());
    }
}
