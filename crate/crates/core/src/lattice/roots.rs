//! Exact rational roots of integer polynomials of degree at most 3.
//!
//! No factorization and no floating point: cubic roots are located by a
//! monic transform followed by integer bisection on the (at most three)
//! monotone pieces, so the cost is logarithmic in the coefficient size.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// All rational roots `p/q` (lowest terms, `q > 0`) of
/// `a3 t^3 + a2 t^2 + a1 t + a0 = 0`.
///
/// The zero polynomial has every rational as a root; callers must not pass
/// it. Roots are returned sorted and deduplicated.
pub fn rational_roots_cubic(
    a3: &BigInt,
    a2: &BigInt,
    a1: &BigInt,
    a0: &BigInt,
) -> Vec<(BigInt, BigInt)> {
    debug_assert!(
        !(a3.is_zero() && a2.is_zero() && a1.is_zero() && a0.is_zero()),
        "zero polynomial"
    );
    let mut roots: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();

    if a3.is_zero() {
        if a2.is_zero() {
            if !a1.is_zero() {
                roots.insert(reduce_fraction(-a0.clone(), a1.clone()));
            }
            return roots.into_iter().collect();
        }
        // quadratic: roots are rational iff the discriminant is a perfect square
        let disc = a1 * a1 - BigInt::from(4) * a2 * a0;
        if disc.is_negative() {
            return Vec::new();
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return Vec::new();
        }
        let two_a2 = BigInt::from(2) * a2;
        roots.insert(reduce_fraction(-a1 + &s, two_a2.clone()));
        roots.insert(reduce_fraction(-a1 - &s, two_a2));
        return roots.into_iter().collect();
    }

    // Monic transform: s = a3 * t is an integer root of
    //   h(s) = s^3 + a2 s^2 + (a3 a1) s + a3^2 a0.
    let c2 = a2.clone();
    let c1 = a3 * a1;
    let c0 = a3 * a3 * a0;
    for s0 in integer_roots_monic_cubic(&c2, &c1, &c0) {
        roots.insert(reduce_fraction(s0, a3.clone()));
    }
    roots.into_iter().collect()
}

/// Integer roots of the monic cubic `s^3 + c2 s^2 + c1 s + c0`.
fn integer_roots_monic_cubic(c2: &BigInt, c1: &BigInt, c0: &BigInt) -> Vec<BigInt> {
    let h = |s: &BigInt| -> BigInt { ((s + c2) * s + c1) * s + c0 };

    // Cauchy bound: every real root lies in [-bound, bound].
    let bound: BigInt =
        BigInt::one() + [c2.abs(), c1.abs(), c0.abs()].into_iter().max().unwrap();

    let mut found = BTreeSet::new();
    // h'(s) = 3 s^2 + 2 c2 s + c1; its discriminant decides the shape.
    let disc4 = BigInt::from(4) * c2 * c2 - BigInt::from(12) * c1;
    if disc4.is_positive() {
        // critical points at (-2 c2 -+ sqrt(disc4)) / 6
        let r = disc4.sqrt();
        let six = BigInt::from(6);
        let base = BigInt::from(-2) * c2;
        let t1 = (&base - &r - BigInt::one()).div_floor(&six); // < left critical point
        let m1 = (&base - &r).div_ceil(&six); // >= left critical point
        let m2 = (&base + &r).div_floor(&six); // <= right critical point
        let t2 = (&base + &r + BigInt::one()).div_ceil(&six); // > right critical point

        monotone_bisect(&h, &(-&bound), &t1.clone().min(bound.clone()), &mut found);
        monotone_bisect(
            &h,
            &m1.clone().max(-&bound),
            &m2.clone().min(bound.clone()),
            &mut found,
        );
        monotone_bisect(&h, &t2.clone().max(-&bound), &bound, &mut found);

        // the (at most two) integers in each gap between the certified
        // monotone ranges
        probe_range(&h, &(&t1 + 1u32), &(&m1 - 1u32), &mut found);
        probe_range(&h, &(&m2 + 1u32), &(&t2 - 1u32), &mut found);
    } else {
        // nonnegative derivative everywhere: a single monotone sweep
        monotone_bisect(&h, &(-&bound), &bound, &mut found);
    }
    found.into_iter().collect()
}

/// Bisect for a zero of `h` on the integer range `[lo, hi]`, on which `h`
/// is monotone (either direction).
fn monotone_bisect<F>(h: &F, lo: &BigInt, hi: &BigInt, found: &mut BTreeSet<BigInt>)
where
    F: Fn(&BigInt) -> BigInt,
{
    if lo > hi {
        return;
    }
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let v_lo = h(&lo);
    let v_hi = h(&hi);
    if v_lo.is_zero() {
        found.insert(lo.clone());
    }
    if v_hi.is_zero() {
        found.insert(hi.clone());
    }
    if v_lo.sign() == v_hi.sign() {
        return;
    }
    let lo_sign = v_lo.sign();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let v = h(&mid);
        if v.is_zero() {
            found.insert(mid);
            return;
        }
        if v.sign() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

fn probe_range<F>(h: &F, lo: &BigInt, hi: &BigInt, found: &mut BTreeSet<BigInt>)
where
    F: Fn(&BigInt) -> BigInt,
{
    let mut s = lo.clone();
    let mut guard = 0;
    while s <= *hi {
        if h(&s).is_zero() {
            found.insert(s.clone());
        }
        s += 1u32;
        guard += 1;
        // each gap holds at most two integers by construction
        debug_assert!(guard <= 4, "monotonicity gap unexpectedly wide");
        if guard > 8 {
            break;
        }
    }
}

/// Reduce `num/den` to lowest terms with a positive denominator.
fn reduce_fraction(num: BigInt, den: BigInt) -> (BigInt, BigInt) {
    debug_assert!(!den.is_zero());
    let g = num.gcd(&den);
    let (mut p, mut q) = if g.is_zero() {
        (num, den)
    } else {
        (num / &g, den / &g)
    };
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    (p, q)
}
