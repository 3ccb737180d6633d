//! Seeded random generators for tuples, basis changes, surfaces and
//! packages. All randomness flows through an explicit RNG so the suites
//! that use these are reproducible.

use num::bigint::BigInt;
use rand::Rng;

use crate::chern::ACStructure;
use crate::construct::{SurfaceData, ThreefoldPackage};
use crate::lattice::{CubicForm, IntVector, LinearForm, SquareMatrix, UnimodularMap};
use crate::wall::{BettiData, WallTuple};

/// A random spin tuple with entries in `[-range, range]`; admissibility
/// is not arranged, so both verdicts occur.
pub fn random_spin_tuple<R: Rng>(rng: &mut R, rank: usize, range: i64) -> WallTuple {
    let mut form = CubicForm::zero_form(rank);
    for i in 0..rank {
        for j in i..rank {
            for k in j..rank {
                form.add_entry(i, j, k, BigInt::from(rng.random_range(-range..=range)))
                    .expect("indices in range");
            }
        }
    }
    let p1 = LinearForm::new(
        (0..rank)
            .map(|_| BigInt::from(rng.random_range(-range..=range)))
            .collect(),
    );
    let b3 = 2 * rng.random_range(0..4u64);
    WallTuple::new(b3, form, p1, true).expect("even b3")
}

/// A random admissible spin tuple: pair entries are made even and `p1`
/// is chosen congruent to `4 F(e_i)^3` mod 24 on each basis vector.
pub fn random_admissible_tuple<R: Rng>(rng: &mut R, rank: usize, range: i64) -> WallTuple {
    let mut form = CubicForm::zero_form(rank);
    for i in 0..rank {
        for j in i..rank {
            for k in j..rank {
                let mut v = rng.random_range(-range..=range);
                if i == j && j < k && (v + form_entry(&form, i, k, k)) % 2 != 0 {
                    v += 1;
                }
                if i < j && j == k && (v + form_entry(&form, i, i, j)) % 2 != 0 {
                    v += 1;
                }
                form.add_entry(i, j, k, BigInt::from(v)).expect("indices in range");
            }
        }
    }
    let p1 = LinearForm::new(
        (0..rank)
            .map(|i| {
                let diag = form_entry(&form, i, i, i);
                BigInt::from(4 * diag + 24 * rng.random_range(-range..=range))
            })
            .collect(),
    );
    WallTuple::new(0, form, p1, true).expect("even b3")
}

fn form_entry(form: &CubicForm, i: usize, j: usize, k: usize) -> i64 {
    i64::try_from(&form.entry(i, j, k)).expect("sampled entries stay small")
}

/// A random unimodular map built as a product of elementary operations
/// (transvections, swaps and sign flips).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> UnimodularMap {
    let mut rows = vec![vec![BigInt::from(0); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    if n >= 1 {
        for _ in 0..steps {
            match rng.random_range(0..3) {
                0 if n >= 2 => {
                    let i = rng.random_range(0..n);
                    let mut j = rng.random_range(0..n);
                    while j == i {
                        j = rng.random_range(0..n);
                    }
                    let c = BigInt::from(rng.random_range(-2..=2i64));
                    for col in 0..n {
                        let add = &rows[j][col] * &c;
                        rows[i][col] += add;
                    }
                }
                1 if n >= 2 => {
                    let i = rng.random_range(0..n);
                    let mut j = rng.random_range(0..n);
                    while j == i {
                        j = rng.random_range(0..n);
                    }
                    rows.swap(i, j);
                }
                _ => {
                    let i = rng.random_range(0..n);
                    for col in 0..n {
                        rows[i][col] = -rows[i][col].clone();
                    }
                }
            }
        }
    }
    UnimodularMap::new(SquareMatrix::from_rows(rows).expect("square"))
        .expect("elementary operations preserve unimodularity")
}

/// A random simply connected surface model: symmetric pairing, random
/// `c1`, and Euler number chosen so that Noether integrality and
/// `euler = 2 + b2` both hold.
pub fn random_surface<R: Rng>(rng: &mut R, rank: usize, range: i64) -> SurfaceData {
    loop {
        let mut pairing = vec![vec![BigInt::from(0); rank]; rank];
        for i in 0..rank {
            for j in i..rank {
                let v = BigInt::from(rng.random_range(-range..=range));
                pairing[i][j] = v.clone();
                pairing[j][i] = v;
            }
        }
        let c1s = IntVector::new(
            (0..rank)
                .map(|_| BigInt::from(rng.random_range(-range..=range)))
                .collect(),
        );
        // euler = 2 + b2 (simply connected) and 12 | c1^2 + euler
        let mut c1sq = BigInt::from(0);
        for i in 0..rank {
            for j in 0..rank {
                c1sq += c1s.get(i) * &pairing[i][j] * c1s.get(j);
            }
        }
        let residue = ((-&c1sq) % 12 + 12) % 12;
        let euler_i64 = i64::try_from(&residue).expect("residue") + 12 * rng.random_range(1..5i64);
        let b2 = euler_i64 - 2;
        if b2 < rank as i64 {
            continue;
        }
        if let Ok(s) = SurfaceData::new(pairing, c1s, BigInt::from(euler_i64), b2 as u64) {
            return s;
        }
    }
}

/// A random package: admissible spin tuple, even `c1`, matching Betti
/// data. Even classes always satisfy the Chern parity constraint.
pub fn random_package<R: Rng>(rng: &mut R, rank: usize, range: i64) -> ThreefoldPackage {
    let tuple = random_admissible_tuple(rng, rank, range);
    let c1 = IntVector::new(
        (0..rank)
            .map(|_| BigInt::from(2 * rng.random_range(-range..=range)))
            .collect(),
    );
    let betti = BettiData::new(rank as u64, tuple.b3()).expect("even b3");
    ThreefoldPackage::new(
        tuple,
        betti,
        ACStructure::new(c1),
        vec!["random_package".into()],
    )
    .expect("even classes have even parity")
}
