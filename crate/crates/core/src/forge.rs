//! Infinite twisted families from a seed tuple and machine-checkable
//! non-Kahler certificates refuting every terminal case a Kahler
//! structure could reduce to: point blow-downs, minimal models of each
//! Kodaira dimension, Fano threefolds, quadric bundles over curves and
//! unramified conic bundles over surfaces.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::chern::FANO_P1_PAIRING_BOUND;
use crate::error::{Error, Result};
use crate::lattice::{
    covector_kernel_basis, find_vanishing_hyperplanes, find_vanishing_lines,
    IntVector, LinearForm,
};
use crate::wall::{
    homotopy_equivalent_identified, is_admissible, BettiData, WallTuple,
};

/// Point blow-ups have first Pontryagin class of content at most 4.
pub const BLOW_DOWN_CONTENT_BOUND: u64 = 4;

/// Twist a seed tuple: keep the lattice and cubic form, replace `p1` by
/// `r (p1 + omega)`.
///
/// For an admissible spin seed with `b3 = 0`, `omega = 0 mod 48`
/// coefficient-wise and `r = 1 mod 48`, the result is again admissible
/// and is homotopy-identified with the seed (the homotopy type only sees
/// `p1` mod 48); both facts are re-verified on the output.
pub fn forge_family(seed: &WallTuple, omega: &LinearForm, r: &BigInt) -> Result<WallTuple> {
    if !seed.spin() {
        return Err(Error::NonSpinTuple);
    }
    if seed.b3() != 0 {
        return Err(Error::Precondition(format!(
            "forging requires b3 = 0, got {}",
            seed.b3()
        )));
    }
    if omega.rank() != seed.rank() {
        return Err(Error::DimensionMismatch {
            expected: seed.rank(),
            found: omega.rank(),
        });
    }
    if !is_admissible(seed)? {
        return Err(Error::Precondition("seed tuple is not admissible".into()));
    }
    let m48 = BigInt::from(48);
    if omega.coeffs().iter().any(|c| !(c % &m48).is_zero()) {
        return Err(Error::Precondition(
            "every coefficient of omega must be divisible by 48".into(),
        ));
    }
    if !((r - BigInt::one()) % &m48).is_zero() {
        return Err(Error::Precondition(format!(
            "r must be 1 mod 48, got {r}"
        )));
    }

    let p1 = seed.p1().add(omega)?.scale(r);
    let forged = WallTuple::new(0, seed.form().clone(), p1, true)?;
    if !is_admissible(&forged)? {
        return Err(Error::InvalidConstruction(
            "forged tuple failed the admissibility re-check".into(),
        ));
    }
    debug_assert!(homotopy_equivalent_identified(seed, &forged)?);
    Ok(forged)
}

/// Report of the concrete genericity conditions replacing the abstract
/// "general omega": the twisted form `p1 + omega` must be nonzero on
/// every vanishing line and not identically zero on any vanishing
/// hyperplane of the cubic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    /// Vanishing lines (rank 2 only) with the value of `p1 + omega`.
    pub line_conditions: Vec<(IntVector, BigInt)>,
    /// Vanishing hyperplanes with the values of `p1 + omega` on an
    /// integer kernel basis.
    pub hyperplane_conditions: Vec<(LinearForm, Vec<BigInt>)>,
    /// The cubic form was identically zero, so the conditions cannot be
    /// enumerated.
    pub zero_form: bool,
    pub hyperplane_bound: u64,
    pub accepted: bool,
}

pub fn genericity_check(
    seed: &WallTuple,
    omega: &LinearForm,
    hyperplane_bound: u64,
) -> Result<GenericityReport> {
    if omega.rank() != seed.rank() {
        return Err(Error::DimensionMismatch {
            expected: seed.rank(),
            found: omega.rank(),
        });
    }
    let target = seed.p1().add(omega)?;
    let mut report = GenericityReport {
        line_conditions: Vec::new(),
        hyperplane_conditions: Vec::new(),
        zero_form: false,
        hyperplane_bound,
        accepted: true,
    };
    if seed.rank() < 2 {
        return Ok(report);
    }
    if seed.form().is_identically_zero() {
        report.zero_form = true;
        report.accepted = false;
        return Ok(report);
    }
    if seed.rank() == 2 {
        for v in find_vanishing_lines(seed.form())? {
            let value = target.eval(&v)?;
            if value.is_zero() {
                report.accepted = false;
            }
            report.line_conditions.push((v, value));
        }
    }
    for phi in find_vanishing_hyperplanes(seed.form(), hyperplane_bound) {
        let kernel = covector_kernel_basis(phi.coeffs());
        let values = kernel
            .iter()
            .map(|k| target.eval(k))
            .collect::<Result<Vec<_>>>()?;
        if values.iter().all(|v| v.is_zero()) {
            report.accepted = false;
        }
        report.hyperplane_conditions.push((phi, values));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Refuted,
    NotRefuted,
    NotChecked,
}

impl CaseStatus {
    pub fn refuted(&self) -> bool {
        matches!(self, CaseStatus::Refuted)
    }
}

/// Search bounds and optional provenance metadata for certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Coordinate box for the Fano candidate search over even classes.
    pub fano_box: u64,
    /// Coefficient bound for the rank-3 vanishing-hyperplane enumeration.
    pub hyperplane_bound: u64,
    /// Label of the seed tuple, recorded in the certificate.
    pub label: Option<String>,
    /// Twist parameter `r`, recorded in the certificate.
    pub r: Option<BigInt>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            fano_box: 16,
            hyperplane_bound: 100,
            label: None,
            r: None,
        }
    }
}

/// No point blow-down exists when the content of `p1` exceeds 4, since a
/// blow-up's first Pontryagin class is not divisible by any larger
/// integer; a Kahler structure would then be minimal or a Mori fibre
/// space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowDownCase {
    pub p1_content: BigInt,
    pub threshold: u64,
    pub status: CaseStatus,
}

/// General type is impossible outright for spin tuples with `b3 = 0`:
/// Riemann-Roch forces `c1 c2 = 24 + 24 h^{2,0} >= 24`, while Miyaoka-Yau
/// on a minimal model of general type forces `c1 c2 < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralTypeCase {
    pub rr_lower_bound: BigInt,
    pub status: CaseStatus,
}

/// Kodaira dimension 0, 1 or 2 needs an even class with `F(c1) = 0` and
/// `p1(c1) = -48 - 48 h^{2,0}` with `h^{2,0} <= b2`; every value of `p1`
/// is divisible by its content, so content beyond `48 (1 + b2)` refutes
/// the case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kod012Case {
    pub p1_content: BigInt,
    pub threshold: BigInt,
    pub status: CaseStatus,
}

/// Fano candidates are even classes with `2 <= F(c1) <= 64`, `c1c2 = 24`
/// and hence `p1(c1) = F(c1) - 48`. The box search is complemented by a
/// content argument outside the box: when the content of `p1` on even
/// classes exceeds [`FANO_P1_PAIRING_BOUND`], only the residual case
/// `p1(c1) = 0, F(c1) = 48` remains, which is decided exactly in rank at
/// most 2 (kernel-line analysis) and within the box otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoCase {
    pub box_radius: u64,
    /// Content of `p1` on the even sublattice (twice the content of `p1`).
    pub even_content: BigInt,
    /// Fano-consistent classes found (in the box or by the residual
    /// analysis); nonempty means the case is not refuted.
    pub witnesses: Vec<IntVector>,
    /// Whether the exclusion outside the box was exact rather than
    /// box-relative.
    pub exact_beyond_box: bool,
    pub status: CaseStatus,
}

/// A quadric bundle over a curve forces `b2 = 2` and a vanishing line of
/// the cubic form (the fibre class) on which `p1` evaluates to zero;
/// refuted when every vanishing line has nonzero `p1` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricOverCurveCase {
    pub lines: Vec<(IntVector, BigInt)>,
    pub b2: u64,
    pub status: CaseStatus,
}

/// An unramified conic bundle over a surface pulls the surface lattice
/// back to a vanishing hyperplane of the cubic form on which `p1`
/// vanishes identically; refuted when `p1` restricts nontrivially to
/// every candidate hyperplane. Exact in rank 2 by line duality, bounded
/// in rank 3, not checked beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicOverSurfaceCase {
    pub hyperplanes: Vec<(LinearForm, Vec<BigInt>)>,
    pub bound_used: Option<u64>,
    pub exact: bool,
    pub status: CaseStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertifiedNonKaehler,
    Inconclusive,
}

/// Structured record of which Kahler terminal cases were refuted and by
/// what integer evidence. The verdict is certified only when every case
/// carries a refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub label: Option<String>,
    pub r: Option<BigInt>,
    pub fano_box: u64,
    pub hyperplane_bound: u64,
    pub blow_down: BlowDownCase,
    pub general_type: GeneralTypeCase,
    pub kodaira_012: Kod012Case,
    pub fano: FanoCase,
    pub quadric_over_curve: QuadricOverCurveCase,
    pub conic_over_surface: ConicOverSurfaceCase,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        matches!(self.verdict, Verdict::CertifiedNonKaehler)
    }

    /// Names of the cases that are not refuted, in battery order.
    pub fn failing_cases(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.blow_down.status.refuted() {
            out.push("blow_down");
        }
        if !self.general_type.status.refuted() {
            out.push("general_type");
        }
        if !self.kodaira_012.status.refuted() {
            out.push("kodaira_012");
        }
        if !self.fano.status.refuted() {
            out.push("fano");
        }
        if !self.quadric_over_curve.status.refuted() {
            out.push("quadric_over_curve");
        }
        if !self.conic_over_surface.status.refuted() {
            out.push("conic_over_surface");
        }
        out
    }
}

/// Run the full refutation battery for a spin tuple with `b3 = 0`.
/// Inconclusive is a value, not an error: it lists the cases that could
/// not be refuted with the given bounds.
pub fn certify_non_kaehler(
    t: &WallTuple,
    b: &BettiData,
    config: &CertifyConfig,
) -> Result<Certificate> {
    if !t.spin() {
        return Err(Error::NonSpinTuple);
    }
    if t.b3() != 0 {
        return Err(Error::Precondition(format!(
            "certification requires b3 = 0, got {}",
            t.b3()
        )));
    }

    let content = t.p1().content();

    let blow_down = BlowDownCase {
        p1_content: content.clone(),
        threshold: BLOW_DOWN_CONTENT_BOUND,
        status: if content > BigInt::from(BLOW_DOWN_CONTENT_BOUND) {
            CaseStatus::Refuted
        } else {
            CaseStatus::NotRefuted
        },
    };

    let general_type = GeneralTypeCase {
        rr_lower_bound: BigInt::from(24),
        status: CaseStatus::Refuted,
    };

    let kod_threshold = BigInt::from(48) * (BigInt::one() + BigInt::from(b.b2()));
    let kodaira_012 = Kod012Case {
        p1_content: content.clone(),
        threshold: kod_threshold.clone(),
        status: if content > kod_threshold {
            CaseStatus::Refuted
        } else {
            CaseStatus::NotRefuted
        },
    };

    let fano = fano_case(t, config.fano_box, &content)?;
    let quadric_over_curve = quadric_case(t, b)?;
    let conic_over_surface = conic_case(t, b, config.hyperplane_bound)?;

    let all_refuted = blow_down.status.refuted()
        && general_type.status.refuted()
        && kodaira_012.status.refuted()
        && fano.status.refuted()
        && quadric_over_curve.status.refuted()
        && conic_over_surface.status.refuted();

    Ok(Certificate {
        label: config.label.clone(),
        r: config.r.clone(),
        fano_box: config.fano_box,
        hyperplane_bound: config.hyperplane_bound,
        blow_down,
        general_type,
        kodaira_012,
        fano,
        quadric_over_curve,
        conic_over_surface,
        verdict: if all_refuted {
            Verdict::CertifiedNonKaehler
        } else {
            Verdict::Inconclusive
        },
    })
}

fn fano_case(t: &WallTuple, box_radius: u64, p1_content: &BigInt) -> Result<FanoCase> {
    let n = t.rank();
    let mut witnesses = Vec::new();
    let bound = box_radius as i64;
    // even classes only: step through c1 = 2 d
    let half = bound.div_euclid(2);
    let mut coords = vec![-half; n];
    loop {
        let c1 = IntVector::new(coords.iter().map(|&c| BigInt::from(2 * c)).collect());
        let cube = t.form().eval_diag(&c1)?;
        if cube >= BigInt::from(2) && cube <= BigInt::from(64) {
            let p1c1 = t.p1().eval(&c1)?;
            if p1c1 == &cube - BigInt::from(48) {
                witnesses.push(c1);
            }
        }
        let mut idx = n;
        let mut done = false;
        loop {
            if idx == 0 {
                done = true;
                break;
            }
            idx -= 1;
            if coords[idx] < half {
                coords[idx] += 1;
                for c in &mut coords[idx + 1..] {
                    *c = -half;
                }
                break;
            }
        }
        if done {
            break;
        }
    }

    let even_content = BigInt::from(2) * p1_content;
    let mut exact_beyond_box = false;
    let status = if !witnesses.is_empty() {
        CaseStatus::NotRefuted
    } else if even_content > BigInt::from(FANO_P1_PAIRING_BOUND) {
        // every even class has p1 value divisible by the even content, so
        // |p1(c1)| = |F(c1) - 48| <= 46 forces p1(c1) = 0 and F(c1) = 48
        match n {
            1 => {
                // p1 is nonzero here, so its kernel is trivial
                exact_beyond_box = true;
                CaseStatus::Refuted
            }
            2 => {
                exact_beyond_box = true;
                let kernel = covector_kernel_basis(t.p1().coeffs());
                debug_assert_eq!(kernel.len(), 1);
                let k = &kernel[0];
                // even classes on the kernel line are 2 s k; then
                // F(c1) = 8 s^3 F(k) = 48 forces s = +-1 and F(k) = +-6
                let fk = t.form().eval_diag(k)?;
                if fk.abs() == BigInt::from(6) {
                    let s = if fk.is_positive() { 1 } else { -1 };
                    witnesses.push(k.scale(&BigInt::from(2 * s)));
                    CaseStatus::NotRefuted
                } else {
                    CaseStatus::Refuted
                }
            }
            _ => {
                // residual classes inside the box were already covered by
                // the main search; beyond the box the exclusion is
                // box-relative
                CaseStatus::Refuted
            }
        }
    } else {
        // content too small to exclude candidates beyond the box
        CaseStatus::NotRefuted
    };

    Ok(FanoCase {
        box_radius,
        even_content,
        witnesses,
        exact_beyond_box,
        status,
    })
}

fn quadric_case(t: &WallTuple, b: &BettiData) -> Result<QuadricOverCurveCase> {
    if t.rank() == 2 {
        match find_vanishing_lines(t.form()) {
            Ok(lines) => {
                let mut evidence = Vec::new();
                let mut refuted = true;
                for v in lines {
                    let value = t.p1().eval(&v)?;
                    if value.is_zero() {
                        refuted = false;
                    }
                    evidence.push((v, value));
                }
                Ok(QuadricOverCurveCase {
                    lines: evidence,
                    b2: b.b2(),
                    status: if refuted {
                        CaseStatus::Refuted
                    } else {
                        CaseStatus::NotRefuted
                    },
                })
            }
            Err(Error::IdenticallyZeroForm) => Ok(QuadricOverCurveCase {
                lines: Vec::new(),
                b2: b.b2(),
                status: CaseStatus::NotRefuted,
            }),
            Err(e) => Err(e),
        }
    } else if b.b2() != 2 {
        // a quadric bundle over a curve has relative Picard rank one and
        // h^{2,0} = 0, hence b2 = 2
        Ok(QuadricOverCurveCase {
            lines: Vec::new(),
            b2: b.b2(),
            status: CaseStatus::Refuted,
        })
    } else {
        // working rank differs from b2 = 2: the lattice model cannot
        // enumerate the lines
        Ok(QuadricOverCurveCase {
            lines: Vec::new(),
            b2: b.b2(),
            status: CaseStatus::NotChecked,
        })
    }
}

fn conic_case(
    t: &WallTuple,
    b: &BettiData,
    hyperplane_bound: u64,
) -> Result<ConicOverSurfaceCase> {
    let n = t.rank();
    if n == 1 {
        // a conic bundle over a surface has b2 at least b2(S) + 1 >= 2
        return Ok(ConicOverSurfaceCase {
            hyperplanes: Vec::new(),
            bound_used: None,
            exact: true,
            status: if b.b2() == 1 {
                CaseStatus::Refuted
            } else {
                CaseStatus::NotChecked
            },
        });
    }
    if n > 3 {
        return Ok(ConicOverSurfaceCase {
            hyperplanes: Vec::new(),
            bound_used: None,
            exact: false,
            status: CaseStatus::NotChecked,
        });
    }
    if t.form().is_identically_zero() {
        // every hyperplane lies in the vanishing locus; nothing to refute
        return Ok(ConicOverSurfaceCase {
            hyperplanes: Vec::new(),
            bound_used: None,
            exact: n == 2,
            status: CaseStatus::NotRefuted,
        });
    }
    let exact = n == 2;
    let planes = find_vanishing_hyperplanes(t.form(), hyperplane_bound);
    let mut evidence = Vec::new();
    let mut refuted = true;
    for phi in planes {
        let kernel = covector_kernel_basis(phi.coeffs());
        let values = kernel
            .iter()
            .map(|k| t.p1().eval(k))
            .collect::<Result<Vec<_>>>()?;
        if values.iter().all(|v| v.is_zero()) {
            refuted = false;
        }
        evidence.push((phi, values));
    }
    Ok(ConicOverSurfaceCase {
        hyperplanes: evidence,
        bound_used: if exact { None } else { Some(hyperplane_bound) },
        exact,
        status: if refuted {
            CaseStatus::Refuted
        } else {
            CaseStatus::NotRefuted
        },
    })
}
