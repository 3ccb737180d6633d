//! Command-line front end: tuple documents in and structured,
//! deterministic output back. Exit status 0 on success, 1 on invalid
//! input, 2 when a certification run stays inconclusive.

mod doc;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use serde_json::{json, Value};

use doc::{int_vector_doc, linear_form_doc, parse_int_list, Int, TupleDocument};
use sixfold::chern::{
    chern_numbers, enumerate_ac_structures, kaehler_obstructions, CheckVerdict,
    Hypotheses,
};
use sixfold::construct::{
    blow_down, blow_down_candidates, blow_up_point, dolgachev_bundle,
    dolgachev_surface, gallery, p1_bundle, SurfaceData, ThreefoldPackage,
    DEFAULT_BLOW_DOWN_BOX,
};
use sixfold::forge::{
    certify_non_kaehler, forge_family, genericity_check, CaseStatus, Certificate,
    CertifyConfig,
};
use sixfold::lattice::{IntVector, LinearForm};
use sixfold::wall::{find_isomorphism, is_admissible};

#[derive(Parser)]
#[command(
    name = "sixfold",
    about = "Exact-integer toolkit for spin 6-manifold tuples: admissibility, \
             classification, Chern numbers, obstructions, constructions, \
             forging and non-Kahler certification",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the realizability congruence 4W^3 = p1(W) mod 24.
    CheckAdmissible { file: PathBuf },
    /// Search for a unimodular isomorphism between two tuples.
    Classify {
        file1: PathBuf,
        file2: PathBuf,
        /// Entry bound for the backtracking search.
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Chern numbers of the document's first Chern class.
    Chern { file: PathBuf },
    /// List candidate first Chern classes in a coordinate box.
    EnumerateAcs {
        file: PathBuf,
        /// Classes run over even vectors with coordinates up to 2*BOX.
        #[arg(long = "box", default_value_t = 1)]
        box_radius: u64,
    },
    /// Run the single-structure Kahler obstruction battery.
    Obstruct {
        file: PathBuf,
        #[arg(long)]
        minimal_general_type: bool,
        #[arg(long)]
        non_uniruled: bool,
        #[arg(long)]
        kod012: bool,
    },
    /// Symbolic constructions.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Twist the seed tuple: p1 becomes r (p1 + omega).
    Forge {
        file: PathBuf,
        /// Comma-separated coefficients, each divisible by 48.
        #[arg(long)]
        omega: String,
        /// Twist factor, congruent to 1 mod 48.
        #[arg(long)]
        r: String,
        /// Also run the genericity conditions for omega and report them.
        #[arg(long)]
        check_genericity: bool,
    },
    /// Refute every Kahler terminal case; exit 2 when inconclusive.
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        fano_box: u64,
        #[arg(long, default_value_t = 100)]
        hyperplane_bound: u64,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Blow up a point of the document's package.
    BlowupPoint { file: PathBuf },
    /// Contract an exceptional class, or list the candidates if no class
    /// is given.
    Blowdown {
        file: PathBuf,
        /// Comma-separated coordinates of the class to contract.
        #[arg(long)]
        class: Option<String>,
        /// Candidate search box.
        #[arg(long = "box", default_value_t = DEFAULT_BLOW_DOWN_BOX)]
        box_radius: u64,
    },
    /// P^1-bundle over a base surface.
    P1Bundle {
        /// Base surface: "p2" or "dolgachev".
        #[arg(long)]
        surface: String,
        /// Dolgachev order (odd, at least 3); required for that base.
        #[arg(long)]
        q: Option<u64>,
        /// Comma-separated twist coordinates in the surface basis.
        #[arg(long)]
        omega: String,
    },
    /// The Dolgachev bundle X_q with the fixed twist f' + 2h.
    Dolgachev {
        #[arg(long)]
        q: u64,
    },
    /// Print the reference gallery, or one entry as a tuple document.
    Gallery {
        #[arg(long)]
        name: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<sixfold::Error> for Failure {
    fn from(e: sixfold::Error) -> Failure {
        invalid(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let fmt = cli.format;
    match cli.command {
        Command::CheckAdmissible { file } => check_admissible(&file, fmt),
        Command::Classify {
            file1,
            file2,
            bound,
        } => classify(&file1, &file2, bound, fmt),
        Command::Chern { file } => chern(&file, fmt),
        Command::EnumerateAcs { file, box_radius } => enumerate_acs(&file, box_radius, fmt),
        Command::Obstruct {
            file,
            minimal_general_type,
            non_uniruled,
            kod012,
        } => obstruct(
            &file,
            Hypotheses {
                minimal_general_type,
                non_uniruled,
                kodaira_0_1_2: kod012,
            },
            fmt,
        ),
        Command::Construct { what } => construct(what, fmt),
        Command::Forge {
            file,
            omega,
            r,
            check_genericity,
        } => forge(&file, &omega, &r, check_genericity, fmt),
        Command::Certify {
            file,
            fano_box,
            hyperplane_bound,
        } => certify(&file, fano_box, hyperplane_bound, fmt),
    }
}

fn load_document(path: &PathBuf) -> Result<TupleDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_package(path: &PathBuf) -> Result<(Option<String>, ThreefoldPackage), Failure> {
    let doc = load_document(path)?;
    let tuple = doc.to_tuple().map_err(invalid)?;
    let betti = doc.to_betti().map_err(invalid)?;
    let c1 = doc
        .to_c1()
        .map_err(invalid)?
        .ok_or_else(|| invalid("document has no c1 field"))?;
    let pkg = ThreefoldPackage::new(tuple, betti, c1, vec!["document".into()])?;
    Ok((doc.name, pkg))
}

fn emit(fmt: Format, value: Value, text: String) {
    match fmt {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable value")
        ),
        Format::Text => println!("{text}"),
    }
}

fn int_value(v: &BigInt) -> Value {
    serde_json::to_value(Int::from(v)).expect("int encoding")
}

fn check_admissible(file: &PathBuf, fmt: Format) -> CmdResult {
    let doc = load_document(file)?;
    let tuple = doc.to_tuple().map_err(invalid)?;
    let admissible = is_admissible(&tuple)?;
    emit(
        fmt,
        json!({ "admissible": admissible }),
        if admissible {
            "admissible".into()
        } else {
            "inadmissible".into()
        },
    );
    Ok(())
}

fn classify(file1: &PathBuf, file2: &PathBuf, bound: u64, fmt: Format) -> CmdResult {
    let t1 = load_document(file1)?.to_tuple().map_err(invalid)?;
    let t2 = load_document(file2)?.to_tuple().map_err(invalid)?;
    match find_isomorphism(&t1, &t2, bound)? {
        Some(m) => {
            let rows: Vec<Vec<Int>> = m
                .matrix()
                .rows()
                .iter()
                .map(|row| row.iter().map(Int::from).collect())
                .collect();
            emit(
                fmt,
                json!({ "found": true, "bound": bound, "matrix": rows }),
                format!("isomorphism found within bound {bound}: {m}"),
            );
        }
        None => {
            emit(
                fmt,
                json!({ "found": false, "bound": bound }),
                format!(
                    "no isomorphism found within bound {bound} \
                     (not a proof of non-isomorphism)"
                ),
            );
        }
    }
    Ok(())
}

fn chern(file: &PathBuf, fmt: Format) -> CmdResult {
    let (_, pkg) = load_package(file)?;
    let c = chern_numbers(pkg.tuple(), pkg.betti(), pkg.c1())?;
    let chi = c.chi_o();
    let chi_int = c.chi_o_integer();
    emit(
        fmt,
        json!({
            "c1_cubed": int_value(&c.c1_cubed),
            "c1c2": int_value(&c.c1c2),
            "c3": int_value(&c.c3),
            "chi_o": chi.to_string(),
            "chi_o_integer": chi_int.as_ref().map(int_value),
        }),
        format!(
            "c1^3 = {}\nc1c2 = {}\nc3 = {}\nchi_O = {}",
            c.c1_cubed, c.c1c2, c.c3, chi
        ),
    );
    Ok(())
}

fn enumerate_acs(file: &PathBuf, box_radius: u64, fmt: Format) -> CmdResult {
    let doc = load_document(file)?;
    let tuple = doc.to_tuple().map_err(invalid)?;
    let acs = enumerate_ac_structures(&tuple, box_radius)?;
    let classes: Vec<Vec<Int>> = acs.iter().map(|a| int_vector_doc(a.c1())).collect();
    let text = acs
        .iter()
        .map(|a| a.c1().to_string())
        .collect::<Vec<_>>()
        .join("\n");
    emit(
        fmt,
        json!({ "count": acs.len(), "box": box_radius, "classes": classes }),
        format!("{} classes in box {box_radius}\n{text}", acs.len()),
    );
    Ok(())
}

fn verdict_str(v: CheckVerdict) -> &'static str {
    match v {
        CheckVerdict::Pass => "pass",
        CheckVerdict::Fail => "fail",
        CheckVerdict::NotApplicable => "not-applicable",
    }
}

fn obstruct(file: &PathBuf, hyp: Hypotheses, fmt: Format) -> CmdResult {
    let (_, pkg) = load_package(file)?;
    let report = kaehler_obstructions(pkg.tuple(), pkg.betti(), pkg.c1(), hyp)?;
    emit(
        fmt,
        json!({
            "c1_cubed": int_value(&report.chern.c1_cubed),
            "c1c2": int_value(&report.chern.c1c2),
            "c3": int_value(&report.chern.c3),
            "rr_integrality": verdict_str(report.rr_integrality),
            "miyaoka_yau": verdict_str(report.miyaoka_yau),
            "kodaira_012_vanishing": verdict_str(report.kodaira_012_vanishing),
            "general_type_impossible": report.general_type_impossible,
            "non_uniruled_bounds": verdict_str(report.non_uniruled_bounds),
            "non_uniruled_lower": report.non_uniruled_lower.as_ref().map(int_value),
            "h20_bound": report.h20_bound,
            "obstructed": report.obstructed(),
        }),
        format!(
            "c1^3 = {}, c1c2 = {}, c3 = {}\n\
             rr_integrality: {}\n\
             miyaoka_yau: {}\n\
             kodaira_012_vanishing: {}\n\
             general_type_impossible: {}\n\
             non_uniruled_bounds: {}\n\
             h20_bound: {}\n\
             obstructed: {}",
            report.chern.c1_cubed,
            report.chern.c1c2,
            report.chern.c3,
            verdict_str(report.rr_integrality),
            verdict_str(report.miyaoka_yau),
            verdict_str(report.kodaira_012_vanishing),
            report.general_type_impossible,
            verdict_str(report.non_uniruled_bounds),
            report.h20_bound,
            report.obstructed(),
        ),
    );
    Ok(())
}

fn construct(what: ConstructCmd, fmt: Format) -> CmdResult {
    match what {
        ConstructCmd::BlowupPoint { file } => {
            let (name, pkg) = load_package(&file)?;
            let up = blow_up_point(&pkg);
            let doc = TupleDocument::from_package(
                name.map(|n| format!("{n}-blowup")),
                &up,
            );
            print_document(&doc, fmt);
            Ok(())
        }
        ConstructCmd::Blowdown {
            file,
            class,
            box_radius,
        } => {
            let (name, pkg) = load_package(&file)?;
            match class {
                Some(spec) => {
                    let coords = parse_int_list(&spec).map_err(invalid)?;
                    let e = IntVector::new(coords);
                    let down = blow_down(&pkg, &e)?;
                    let doc = TupleDocument::from_package(
                        name.map(|n| format!("{n}-blowdown")),
                        &down,
                    );
                    print_document(&doc, fmt);
                }
                None => {
                    let cands = blow_down_candidates(pkg.tuple(), box_radius);
                    let list: Vec<Vec<Int>> =
                        cands.iter().map(int_vector_doc).collect();
                    let text = cands
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("\n");
                    emit(
                        fmt,
                        json!({ "box": box_radius, "candidates": list }),
                        format!(
                            "{} blow-down candidates in box {box_radius}\n{text}",
                            cands.len()
                        ),
                    );
                }
            }
            Ok(())
        }
        ConstructCmd::P1Bundle { surface, q, omega } => {
            let base = match surface.as_str() {
                "p2" => SurfaceData::projective_plane(),
                "dolgachev" => {
                    let q = q.ok_or_else(|| invalid("--q is required for the Dolgachev base"))?;
                    dolgachev_surface(q)?
                }
                other => {
                    return Err(invalid(format!(
                        "unknown surface {other:?}; expected \"p2\" or \"dolgachev\""
                    )))
                }
            };
            let omega = IntVector::new(parse_int_list(&omega).map_err(invalid)?);
            let pkg = p1_bundle(&base, &omega)?;
            let doc = TupleDocument::from_package(Some("p1-bundle".into()), &pkg);
            print_document(&doc, fmt);
            Ok(())
        }
        ConstructCmd::Dolgachev { q } => {
            let pkg = dolgachev_bundle(q)?;
            let doc = TupleDocument::from_package(Some(format!("dolgachev-q{q}")), &pkg);
            print_document(&doc, fmt);
            Ok(())
        }
        ConstructCmd::Gallery { name } => gallery_cmd(name, fmt),
    }
}

fn gallery_cmd(name: Option<String>, fmt: Format) -> CmdResult {
    let entries = gallery();
    match name {
        Some(n) => {
            let entry = entries
                .into_iter()
                .find(|e| e.name == n)
                .ok_or_else(|| invalid(format!("no gallery entry named {n:?}")))?;
            let doc = TupleDocument::from_package(Some(n), &entry.package);
            print_document(&doc, fmt);
        }
        None => {
            let docs: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "kaehler": e.kaehler,
                        "uniruled": e.uniruled,
                        "c1_divisibility": int_value(&e.c1_divisibility),
                        "document": serde_json::to_value(TupleDocument::from_package(
                            Some(e.name.to_string()),
                            &e.package,
                        ))
                        .expect("document encoding"),
                    })
                })
                .collect();
            let text = entries
                .iter()
                .map(|e| {
                    let c = e.package.chern();
                    format!(
                        "{}: c1^3 = {}, c1c2 = {}, c3 = {}, spin = {}, uniruled = {}",
                        e.name,
                        c.c1_cubed,
                        c.c1c2,
                        c.c3,
                        e.package.tuple().spin(),
                        e.uniruled
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(fmt, Value::Array(docs), text);
        }
    }
    Ok(())
}

fn forge(
    file: &PathBuf,
    omega_spec: &str,
    r_spec: &str,
    check_genericity: bool,
    fmt: Format,
) -> CmdResult {
    let doc = load_document(file)?;
    let tuple = doc.to_tuple().map_err(invalid)?;
    let omega = LinearForm::new(parse_int_list(omega_spec).map_err(invalid)?);
    let r: BigInt = r_spec
        .parse()
        .map_err(|_| invalid(format!("invalid integer --r {r_spec:?}")))?;

    if check_genericity {
        let report = genericity_check(&tuple, &omega, 100)?;
        if !report.accepted {
            let conditions: Vec<String> = report
                .line_conditions
                .iter()
                .filter(|(_, v)| v == &BigInt::from(0))
                .map(|(l, _)| format!("(p1 + omega) vanishes on the line {l}"))
                .chain(
                    report
                        .hyperplane_conditions
                        .iter()
                        .filter(|(_, vs)| vs.iter().all(|v| v == &BigInt::from(0)))
                        .map(|(phi, _)| {
                            format!("(p1 + omega) vanishes on the hyperplane ker {phi}")
                        }),
                )
                .collect();
            return Err(invalid(format!(
                "omega fails the genericity conditions: {}",
                conditions.join("; ")
            )));
        }
    }

    let forged = forge_family(&tuple, &omega, &r)?;
    let out = TupleDocument::from_tuple(
        doc.name.map(|n| format!("{n}-r{r}")),
        &forged,
        doc.betti
            .map(|b| sixfold::wall::BettiData::new(b.b2, b.b3))
            .transpose()
            .map_err(|e| invalid(e.to_string()))?
            .as_ref(),
        None,
    );
    print_document(&out, fmt);
    Ok(())
}

fn case_json(name: &str, status: CaseStatus, evidence: Value) -> Value {
    json!({
        "case": name,
        "status": match status {
            CaseStatus::Refuted => "refuted",
            CaseStatus::NotRefuted => "not-refuted",
            CaseStatus::NotChecked => "not-checked",
        },
        "evidence": evidence,
    })
}

fn certificate_json(cert: &Certificate) -> Value {
    let cases = vec![
        case_json(
            "blow_down",
            cert.blow_down.status,
            json!({
                "p1_content": int_value(&cert.blow_down.p1_content),
                "threshold": cert.blow_down.threshold,
            }),
        ),
        case_json(
            "general_type",
            cert.general_type.status,
            json!({ "rr_lower_bound": int_value(&cert.general_type.rr_lower_bound) }),
        ),
        case_json(
            "kodaira_012",
            cert.kodaira_012.status,
            json!({
                "p1_content": int_value(&cert.kodaira_012.p1_content),
                "threshold": int_value(&cert.kodaira_012.threshold),
            }),
        ),
        case_json(
            "fano",
            cert.fano.status,
            json!({
                "box": cert.fano.box_radius,
                "even_content": int_value(&cert.fano.even_content),
                "witnesses": cert.fano.witnesses.iter().map(int_vector_doc).collect::<Vec<_>>(),
                "exact_beyond_box": cert.fano.exact_beyond_box,
            }),
        ),
        case_json(
            "quadric_over_curve",
            cert.quadric_over_curve.status,
            json!({
                "b2": cert.quadric_over_curve.b2,
                "lines": cert.quadric_over_curve.lines.iter().map(|(v, p)| json!({
                    "line": int_vector_doc(v),
                    "p1_value": int_value(p),
                })).collect::<Vec<_>>(),
            }),
        ),
        case_json(
            "conic_over_surface",
            cert.conic_over_surface.status,
            json!({
                "exact": cert.conic_over_surface.exact,
                "bound": cert.conic_over_surface.bound_used,
                "hyperplanes": cert.conic_over_surface.hyperplanes.iter().map(|(phi, vals)| json!({
                    "covector": linear_form_doc(phi),
                    "p1_on_kernel": vals.iter().map(int_value).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
        ),
    ];
    json!({
        "seed": cert.label,
        "r": cert.r.as_ref().map(int_value),
        "bounds": {
            "fano_box": cert.fano_box,
            "hyperplane_bound": cert.hyperplane_bound,
        },
        "cases": cases,
        "verdict": if cert.certified() { "certified-non-kaehler" } else { "inconclusive" },
        "failing_cases": cert.failing_cases(),
    })
}

fn certify(
    file: &PathBuf,
    fano_box: u64,
    hyperplane_bound: u64,
    fmt: Format,
) -> CmdResult {
    let doc = load_document(file)?;
    let tuple = doc.to_tuple().map_err(invalid)?;
    let betti = doc.to_betti().map_err(invalid)?;
    let config = CertifyConfig {
        fano_box,
        hyperplane_bound,
        label: doc.name.clone(),
        r: None,
    };
    let cert = certify_non_kaehler(&tuple, &betti, &config)?;

    let status_line = |name: &str, s: CaseStatus| {
        format!(
            "{name}: {}",
            match s {
                CaseStatus::Refuted => "refuted",
                CaseStatus::NotRefuted => "not refuted",
                CaseStatus::NotChecked => "not checked",
            }
        )
    };
    let text = [
        status_line("blow_down", cert.blow_down.status),
        status_line("general_type", cert.general_type.status),
        status_line("kodaira_012", cert.kodaira_012.status),
        status_line("fano", cert.fano.status),
        status_line("quadric_over_curve", cert.quadric_over_curve.status),
        status_line("conic_over_surface", cert.conic_over_surface.status),
        format!(
            "verdict: {}",
            if cert.certified() {
                "certified-non-kaehler"
            } else {
                "inconclusive"
            }
        ),
    ]
    .join("\n");
    emit(fmt, certificate_json(&cert), text);

    if cert.certified() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: format!(
                "certification inconclusive; unresolved cases: {}",
                cert.failing_cases().join(", ")
            ),
        })
    }
}

fn print_document(doc: &TupleDocument, fmt: Format) {
    match fmt {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(doc).expect("document encoding")
        ),
        Format::Text => {
            // the document is the interchange format even in text mode;
            // summarize the invariants above it
            let summary = match (doc.to_tuple(), doc.to_betti(), doc.to_c1()) {
                (Ok(t), Ok(b), Ok(Some(c1))) => match chern_numbers(&t, &b, &c1) {
                    Ok(c) => format!(
                        "# c1^3 = {}, c1c2 = {}, c3 = {}, spin = {}",
                        c.c1_cubed,
                        c.c1c2,
                        c.c3,
                        t.spin()
                    ),
                    Err(e) => format!("# {e}"),
                },
                (Ok(t), _, _) => format!("# rank {}, spin = {}", t.rank(), t.spin()),
                _ => String::new(),
            };
            println!(
                "{summary}\n{}",
                serde_json::to_string_pretty(doc).expect("document encoding")
            );
        }
    }
}
