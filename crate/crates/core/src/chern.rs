//! Chern numbers of candidate (almost-)complex structures from the
//! cohomology ring, and the single-structure Kahler obstruction checks.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::wall::{BettiData, WallTuple};

/// Largest possible value of `|p1 . c1| = |c1^3 - 48|` on a Fano
/// threefold: `c1 c2 = 24 chi(O) = 24` there, `p1 . c1 = c1^3 - 2 c1c2`,
/// and the anticanonical degree of a Fano threefold lies in `[2, 64]`.
/// A first Pontryagin form whose values on the even lattice all exceed
/// this bound in absolute value (unless zero) cannot come from a Fano
/// structure except through the residual case `p1(c1) = 0, c1^3 = 48`.
pub const FANO_P1_PAIRING_BOUND: i64 = 46;

/// A candidate first Chern class. For spin manifolds these are exactly
/// the classes with even coordinates (each homotopy class of almost
/// complex structures has one); non-spin tuples carry odd classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ACStructure {
    c1: IntVector,
}

impl ACStructure {
    pub fn new(c1: IntVector) -> Self {
        ACStructure { c1 }
    }

    pub fn c1(&self) -> &IntVector {
        &self.c1
    }

    pub fn rank(&self) -> usize {
        self.c1.rank()
    }

    pub fn is_even(&self) -> bool {
        self.c1.is_even()
    }
}

/// All candidate first Chern classes of a spin tuple with coordinates in
/// `2Z` and absolute value at most `2 * box_radius`, in lexicographic
/// order. The output size is exactly `(2 * box_radius + 1)^rank`.
pub fn enumerate_ac_structures(t: &WallTuple, box_radius: u64) -> Result<Vec<ACStructure>> {
    if !t.spin() {
        return Err(Error::NonSpinTuple);
    }
    let n = t.rank();
    let b = box_radius as i64;
    let mut out = Vec::new();
    let mut coords = vec![-b; n];
    loop {
        out.push(ACStructure::new(IntVector::new(
            coords.iter().map(|&c| BigInt::from(2 * c)).collect(),
        )));
        let mut idx = n;
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            if coords[idx] < b {
                coords[idx] += 1;
                for c in &mut coords[idx + 1..] {
                    *c = -b;
                }
                break;
            }
        }
    }
}

/// The three Chern numbers of a threefold structure on the tuple:
/// `c1^3 = F(c1)`, `c1 c2 = (F(c1) - p1(c1)) / 2` from
/// `p1 = c1^2 - 2 c2`, and `c3` the Euler number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernNumbers {
    pub c1_cubed: BigInt,
    pub c1c2: BigInt,
    pub c3: BigInt,
}

impl ChernNumbers {
    /// Exact holomorphic Euler characteristic `c1 c2 / 24`.
    pub fn chi_o(&self) -> BigRational {
        BigRational::new(self.c1c2.clone(), BigInt::from(24))
    }

    /// `chi(O)` as an integer, available exactly when Riemann-Roch
    /// integrality `24 | c1 c2` holds.
    pub fn chi_o_integer(&self) -> Option<BigInt> {
        let (q, r) = self.c1c2.div_rem(&BigInt::from(24));
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

pub fn chern_numbers(t: &WallTuple, b: &BettiData, a: &ACStructure) -> Result<ChernNumbers> {
    if t.rank() != a.rank() {
        return Err(Error::DimensionMismatch {
            expected: t.rank(),
            found: a.rank(),
        });
    }
    if t.spin() && !a.is_even() {
        return Err(Error::OddChernClass);
    }
    let c1_cubed = t.form().eval_diag(a.c1())?;
    let p1c1 = t.p1().eval(a.c1())?;
    let diff = &c1_cubed - &p1c1;
    if diff.is_odd() {
        return Err(Error::ChernParity {
            value: diff.to_string(),
        });
    }
    let c1c2 = diff / BigInt::from(2);
    Ok(ChernNumbers {
        c1_cubed,
        c1c2,
        c3: b.euler(),
    })
}

/// Hypotheses about the (hypothetical) Kahler structure under test; the
/// tuple alone cannot determine minimality, uniruledness or the Kodaira
/// dimension, so they are caller-supplied and the checks are conditional.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hypotheses {
    pub minimal_general_type: bool,
    pub non_uniruled: bool,
    pub kodaira_0_1_2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckVerdict {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckVerdict {
    pub fn failed(&self) -> bool {
        matches!(self, CheckVerdict::Fail)
    }
}

/// Outcome of the per-structure obstruction battery, with the integer
/// evidence each verdict is based on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub chern: ChernNumbers,
    /// `24 | c1 c2` (Riemann-Roch integrality).
    pub rr_integrality: CheckVerdict,
    /// Miyaoka-Yau for minimal general type, in the integer form
    /// `0 > c1^3` and `3 c1^3 >= 8 c1c2`.
    pub miyaoka_yau: CheckVerdict,
    /// `c1^3 = 0` for minimal structures of Kodaira dimension 0, 1 or 2.
    pub kodaira_012_vanishing: CheckVerdict,
    /// For spin tuples with `b3 = 0`: no Kahler structure of general type
    /// exists at all (Riemann-Roch forces `c1 c2 = 24 + 24 h^{2,0} > 0`,
    /// contradicting Miyaoka-Yau).
    pub general_type_impossible: bool,
    /// The `c1^3` envelope for non-uniruled spin structures.
    pub non_uniruled_bounds: CheckVerdict,
    pub non_uniruled_lower: Option<BigInt>,
    /// `h^{2,0}` is bounded by `b2` for the structures considered here.
    pub h20_bound: u64,
}

impl ObstructionReport {
    /// Whether any applicable check failed.
    pub fn obstructed(&self) -> bool {
        self.rr_integrality.failed()
            || self.miyaoka_yau.failed()
            || self.kodaira_012_vanishing.failed()
            || self.non_uniruled_bounds.failed()
    }
}

/// Run the exact-integer obstruction battery for one structure.
pub fn kaehler_obstructions(
    t: &WallTuple,
    b: &BettiData,
    a: &ACStructure,
    hyp: Hypotheses,
) -> Result<ObstructionReport> {
    let chern = chern_numbers(t, b, a)?;

    let rr_integrality = if (&chern.c1c2 % BigInt::from(24)).is_zero() {
        CheckVerdict::Pass
    } else {
        CheckVerdict::Fail
    };

    let miyaoka_yau = if hyp.minimal_general_type {
        let negative = chern.c1_cubed.is_negative();
        let my = BigInt::from(3) * &chern.c1_cubed >= BigInt::from(8) * &chern.c1c2;
        if negative && my {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    } else {
        CheckVerdict::NotApplicable
    };

    let kodaira_012_vanishing = if hyp.kodaira_0_1_2 {
        if chern.c1_cubed.is_zero() {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    } else {
        CheckVerdict::NotApplicable
    };

    let general_type_impossible = t.spin() && t.b3() == 0;

    let (non_uniruled_bounds, non_uniruled_lower) = if hyp.non_uniruled {
        match chern.chi_o_integer() {
            Some(chi) => {
                let (lower, upper) = cor_ineq_bounds(b, &chi);
                let ok = chern.c1_cubed >= lower && chern.c1_cubed <= upper;
                (
                    if ok { CheckVerdict::Pass } else { CheckVerdict::Fail },
                    Some(lower),
                )
            }
            // integrality already failed; the envelope needs an integral chi
            None => (CheckVerdict::NotApplicable, None),
        }
    } else {
        (CheckVerdict::NotApplicable, None)
    };

    Ok(ObstructionReport {
        chern,
        rr_integrality,
        miyaoka_yau,
        kodaira_012_vanishing,
        general_type_impossible,
        non_uniruled_bounds,
        non_uniruled_lower,
        h20_bound: b.b2(),
    })
}

/// Effective `c1^3` envelope for non-uniruled spin threefolds:
/// `0 >= c1^3 >= min(64 chi(O) - 8 b2 + 8, -8 b2 + 8)`.
pub fn cor_ineq_bounds(b: &BettiData, chi_o: &BigInt) -> (BigInt, BigInt) {
    let b2 = BigInt::from(b.b2());
    let general_type_branch =
        BigInt::from(64) * chi_o - BigInt::from(8) * &b2 + BigInt::from(8);
    let kod_012_branch = BigInt::from(-8) * &b2 + BigInt::from(8);
    (general_type_branch.min(kod_012_branch), BigInt::zero())
}

/// Case analysis record for rank-1 (i.e. `b2 = 1`) tuples: a Kahler
/// structure would be Fano, Calabi-Yau, or have ample canonical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2OneReport {
    /// Cube of the generator normalized so that it is positive.
    pub generator_cube: BigInt,
    /// `p1` value on that generator.
    pub p1_value: BigInt,
    /// Calabi-Yau needs `p1(L) < 0` (Miyaoka); refuted when `p1(L) >= 0`.
    pub calabi_yau_refuted: bool,
    /// Fano structures form a bounded family; refuted when `|p1(L)|`
    /// exceeds the supplied threshold.
    pub fano_refuted: bool,
    /// Ample canonical class also gives a bounded family (Matsusaka plus
    /// Miyaoka-Yau); refuted by the same divisibility threshold.
    pub ample_canonical_refuted: bool,
    pub certified_non_kaehler: bool,
}

/// Refute the three `b2 = 1` Kahler cases for a rank-1 spin tuple.
///
/// The generator `L` is normalized by `F(L) > 0`; the boundedness
/// threshold for the Fano and ample-canonical cases is caller-supplied
/// ([`FANO_P1_PAIRING_BOUND`] is a documented default for the Fano side).
pub fn b2_one_certify(t: &WallTuple, p1_bound: &BigInt) -> Result<B2OneReport> {
    if t.rank() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: t.rank(),
        });
    }
    let cube = t.form().entry(0, 0, 0);
    if cube.is_zero() {
        return Err(Error::Precondition(
            "cube of the generator vanishes: no generator with F(L) > 0".into(),
        ));
    }
    // normalize the generator: F(-e) = -F(e)
    let (generator_cube, p1_value) = if cube.is_positive() {
        (cube, t.p1().get(0).clone())
    } else {
        (-cube, -t.p1().get(0).clone())
    };

    let calabi_yau_refuted = !p1_value.is_negative();
    let beyond_bound = p1_value.abs() > p1_bound.abs();
    let fano_refuted = beyond_bound;
    let ample_canonical_refuted = beyond_bound;
    let certified_non_kaehler = calabi_yau_refuted && fano_refuted && ample_canonical_refuted;
    Ok(B2OneReport {
        generator_cube,
        p1_value,
        calabi_yau_refuted,
        fano_refuted,
        ample_canonical_refuted,
        certified_non_kaehler,
    })
}
