//! Vanishing loci of cubic forms: rational lines of binary cubics and
//! hyperplanes contained in the vanishing locus.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::cubic::CubicForm;
use crate::lattice::matrix::covector_kernel_basis;
use crate::lattice::roots::rational_roots_cubic;
use crate::lattice::vector::{IntVector, LinearForm};

/// Default coefficient bound for the bounded hyperplane enumeration.
pub const DEFAULT_HYPERPLANE_BOUND: u64 = 100;

/// All primitive integer vectors `v` (up to sign, first nonzero coordinate
/// positive) on which a rank-2 cubic form vanishes identically, i.e.
/// `F(t v) = 0` for all `t`.
///
/// A binary cubic that is not identically zero vanishes on at most three
/// rational lines; they are found exactly by rational-root analysis of the
/// associated binary cubic polynomial, together with the explicit test of
/// the line `(1, 0)`.
pub fn find_vanishing_lines(f: &CubicForm) -> Result<Vec<IntVector>> {
    if f.rank() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.rank(),
        });
    }
    if f.is_identically_zero() {
        return Err(Error::IdenticallyZeroForm);
    }

    // F(a, b) = A a^3 + B a^2 b + C a b^2 + D b^3
    let a = f.entry(0, 0, 0);
    let b = BigInt::from(3) * f.entry(0, 0, 1);
    let c = BigInt::from(3) * f.entry(0, 1, 1);
    let d = f.entry(1, 1, 1);

    let mut lines = Vec::new();
    if a.is_zero() {
        lines.push(IntVector::from_i64(&[1, 0]));
    }
    for (p, q) in rational_roots_cubic(&a, &b, &c, &d) {
        lines.push(IntVector::new(vec![p, q]).normalize_sign());
    }
    lines.sort();
    lines.dedup();
    debug_assert!(lines.len() <= 3);
    debug_assert!(lines
        .iter()
        .all(|v| f.eval_diag(v).map(|x| x.is_zero()).unwrap_or(false)));
    Ok(lines)
}

/// Whether the form vanishes identically on the sublattice spanned by
/// `basis`: by multilinearity this is equivalent to `F(b_i, b_j, b_k) = 0`
/// for all basis triples.
pub fn vanishes_on_span(f: &CubicForm, basis: &[IntVector]) -> Result<bool> {
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate().skip(i) {
            for bk in basis.iter().skip(j) {
                if !f.eval(bi, bj, bk)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Primitive covectors `phi` (sign-normalized) whose kernel hyperplane is
/// contained in the vanishing locus of `f`.
///
/// Rank 2 delegates exactly to [`find_vanishing_lines`] via duality and is
/// complete regardless of the bound. Rank >= 3 enumerates primitive
/// covectors with coefficients bounded by `bound` and verifies vanishing
/// on an integer kernel basis; completeness is relative to the bound,
/// which callers should record.
pub fn find_vanishing_hyperplanes(f: &CubicForm, bound: u64) -> Vec<LinearForm> {
    let n = f.rank();
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        let lines = match find_vanishing_lines(f) {
            Ok(lines) => lines,
            // the zero form vanishes on every hyperplane; report none
            // rather than a bound-dependent slice of an infinite answer
            Err(_) => return Vec::new(),
        };
        let mut out: Vec<LinearForm> = lines
            .iter()
            .map(|v| {
                LinearForm::new(vec![v.get(1).clone(), -v.get(0).clone()])
                    .normalize_sign()
            })
            .collect();
        out.sort();
        out
    } else {
        let mut out = Vec::new();
        let mut coeffs = vec![-(bound as i64); n];
        loop {
            let phi = LinearForm::from_i64(&coeffs);
            if phi.is_primitive() && is_sign_normalized(&phi) {
                let kernel = covector_kernel_basis(phi.coeffs());
                if vanishes_on_span(f, &kernel).unwrap_or(false) {
                    out.push(phi);
                }
            }
            if !odometer_step(&mut coeffs, bound as i64) {
                break;
            }
        }
        out.sort();
        out
    }
}

fn is_sign_normalized(phi: &LinearForm) -> bool {
    match phi.coeffs().iter().find(|c| !c.is_zero()) {
        Some(c) => c.is_positive(),
        None => false,
    }
}

fn odometer_step(coeffs: &mut [i64], bound: i64) -> bool {
    for i in (0..coeffs.len()).rev() {
        if coeffs[i] < bound {
            coeffs[i] += 1;
            for c in &mut coeffs[i + 1..] {
                *c = -bound;
            }
            return true;
        }
    }
    false
}

/// Integer kernel basis of a covector, re-exported here because the
/// vanishing-hyperplane consumers (the conic-bundle rule) need the
/// hyperplane's lattice points.
pub fn hyperplane_kernel(phi: &LinearForm) -> Vec<IntVector> {
    covector_kernel_basis(phi.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn blpt_form() -> CubicForm {
        CubicForm::from_i64_entries(2, &[((0, 0, 0), 1), ((1, 1, 1), 1)]).unwrap()
    }

    #[test]
    fn blowup_form_has_one_line() {
        let lines = find_vanishing_lines(&blpt_form()).unwrap();
        assert_eq!(lines, vec![IntVector::from_i64(&[1, -1])]);
    }

    #[test]
    fn product_form_has_two_lines() {
        // 3 a^2 b: trivial bundle over the plane with omega = 0
        let f = CubicForm::from_i64_entries(2, &[((0, 0, 1), 1)]).unwrap();
        let lines = find_vanishing_lines(&f).unwrap();
        assert_eq!(
            lines,
            vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[1, 0])]
        );
    }

    #[test]
    fn pure_cube_has_one_line() {
        let f = CubicForm::from_i64_entries(2, &[((0, 0, 0), 1)]).unwrap();
        let lines = find_vanishing_lines(&f).unwrap();
        assert_eq!(lines, vec![IntVector::from_i64(&[0, 1])]);
    }

    #[test]
    fn zero_form_is_rejected() {
        let f = CubicForm::zero_form(2);
        assert!(matches!(
            find_vanishing_lines(&f),
            Err(Error::IdenticallyZeroForm)
        ));
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let f = CubicForm::from_i64_entries(3, &[((0, 0, 0), 1)]).unwrap();
        assert!(find_vanishing_lines(&f).is_err());
    }

    #[test]
    fn lines_vanish_at_small_multiples() {
        // sufficient for a cubic: check t = 1, 2, 3 along each line
        let f = blpt_form();
        for v in find_vanishing_lines(&f).unwrap() {
            for t in 1i64..=3 {
                let tv = v.scale(&bi(t));
                assert!(f.eval_diag(&tv).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rank2_hyperplane_duality() {
        let planes = find_vanishing_hyperplanes(&blpt_form(), 10);
        assert_eq!(planes, vec![LinearForm::from_i64(&[1, 1])]);
        // kernel of (1,1) is span (1,-1)
        let k = hyperplane_kernel(&planes[0]);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].normalize_sign(), IntVector::from_i64(&[1, -1]));
    }

    #[test]
    fn rank3_coordinate_hyperplane() {
        // only entry e_2^3 = 1: F vanishes on span(e_0, e_1)
        let f = CubicForm::from_i64_entries(3, &[((2, 2, 2), 1)]).unwrap();
        let planes = find_vanishing_hyperplanes(&f, 2);
        assert!(planes.contains(&LinearForm::from_i64(&[0, 0, 1])));
        for phi in &planes {
            let kernel = hyperplane_kernel(phi);
            assert!(vanishes_on_span(&f, &kernel).unwrap());
        }
    }

    #[test]
    fn fermat_rank3_has_no_hyperplane() {
        // three cube entries 1, no mixed entries: the plane cubic curve is
        // smooth, so no line lies on it
        let f = CubicForm::from_i64_entries(
            3,
            &[((0, 0, 0), 1), ((1, 1, 1), 1), ((2, 2, 2), 1)],
        )
        .unwrap();
        assert!(find_vanishing_hyperplanes(&f, 10).is_empty());
    }

    #[test]
    fn partial_diagonal_vanishing_is_not_enough() {
        // F(x,x,y) = 1, F(x,y,y) = -1: the diagonal cubic 3a^2b - 3ab^2
        // vanishes at e_0, e_1 and e_0 + e_1 but the form does not vanish
        // on the span; the trilinear check must reject it.
        let f =
            CubicForm::from_i64_entries(2, &[((0, 0, 1), 1), ((0, 1, 1), -1)]).unwrap();
        let basis = vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])];
        for v in &basis {
            assert!(f.eval_diag(v).unwrap().is_zero());
        }
        let sum = basis[0].add(&basis[1]).unwrap();
        assert!(f.eval_diag(&sum).unwrap().is_zero());
        assert!(!vanishes_on_span(&f, &basis).unwrap());
    }
}
