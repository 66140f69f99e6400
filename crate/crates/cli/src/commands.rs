//! Command implementations. Every command builds a text report and a JSON
//! mirror; all output is deterministic byte-for-byte for fixed inputs.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use thiserror::Error;

use denseclass::abelian::{AbelianError, FgAbelianGroup, GroupElement, Subgroup};
use denseclass::cartan::SubcatCount;
use denseclass::excat::{
    bounded_vectors, classify, generator_image, g_membership, k0, object_label, verify_bijection,
    DenseClass, ExactCatPresentation, ExcatError, Variant, VerificationReport,
};
use denseclass::intlinalg::{snf, IntMatrix};

use crate::catalog;
use crate::io;

#[derive(Debug, Parser)]
#[command(
    name = "denseclass",
    version,
    about = "Grothendieck groups of exact categories and classification of dense (co)resolving subcategories"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Resolving,
    Coresolving,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Resolving => Variant::Resolving,
            VariantArg::Coresolving => Variant::Coresolving,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form of an integer matrix file
    Snf { file: PathBuf },
    /// Structure of a finitely generated abelian group file
    Group {
        file: PathBuf,
        /// Enumerate all subgroups (the group must be finite)
        #[arg(long)]
        subgroups: bool,
    },
    /// Classify the dense (co)resolving subcategories of a presentation
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Resolving)]
        variant: VariantArg,
        /// Also run the bounded brute-force verification
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Cartan matrix of a quiver algebra and its dense-subcategory count
    Cartan { file: PathBuf },
    /// Built-in simple-singularity table
    Singularity {
        /// Singularity type: a_n, d_n, e6, e7 or e8
        #[arg(long = "type")]
        type_tag: Option<String>,
        /// Parameter n (required for a_n and d_n)
        #[arg(long)]
        n: Option<u64>,
        /// Produce the whole table
        #[arg(long)]
        all: bool,
        /// Largest parameter for --all
        #[arg(long, default_value_t = 20)]
        max_n: u64,
    },
    /// Subgroups of a group containing the span of designated elements
    QuotientClassify {
        file: PathBuf,
        /// Element coordinates like 1,0,0 (repeatable); defaults to the
        /// file's generators
        #[arg(long)]
        designated: Vec<String>,
    },
    /// Bounded brute-force verification of a presentation's classification
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: u64,
    },
}

#[derive(Debug, Error)]
pub enum CmdError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    InfiniteDimensional(String),
}

impl CmdError {
    pub fn code(&self) -> i32 {
        match self {
            CmdError::Input(_) => 2,
            CmdError::InfiniteDimensional(_) => 3,
        }
    }
}

/// Rendered command result. `code` is 0 except for verification failures.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s =
                    serde_json::to_string_pretty(&report.json).expect("serializable value");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: report.code,
            }
        }
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: err.code(),
        },
    }
}

pub fn execute(command: &Command) -> Result<Report, CmdError> {
    match command {
        Command::Snf { file } => cmd_snf(file),
        Command::Group { file, subgroups } => cmd_group(file, *subgroups),
        Command::Classify {
            file,
            variant,
            bound,
        } => cmd_classify(file, *variant, *bound),
        Command::Cartan { file } => cmd_cartan(file),
        Command::Singularity {
            type_tag,
            n,
            all,
            max_n,
        } => cmd_singularity(type_tag.as_deref(), *n, *all, *max_n),
        Command::QuotientClassify { file, designated } => cmd_quotient_classify(file, designated),
        Command::Verify { file, bound } => cmd_verify(file, *bound),
    }
}

fn bigint_json(b: &BigInt) -> Value {
    i64::try_from(b)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(b.to_string()))
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| bigint_json(m.at(r, c))).collect()))
            .collect(),
    )
}

fn factor_list(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        "(none)".to_string()
    } else {
        factors
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn cmd_snf(file: &Path) -> Result<Report, CmdError> {
    let matrix = io::read_matrix(file)?;
    let sf = snf(&matrix);
    let text = format!(
        "S =\n{}\nU =\n{}\nV =\n{}\ninvariant factors: {}\n",
        sf.s,
        sf.u,
        sf.v,
        factor_list(&sf.invariant_factors)
    );
    let json = json!({
        "s": matrix_json(&sf.s),
        "u": matrix_json(&sf.u),
        "v": matrix_json(&sf.v),
        "invariant_factors": sf.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json,
        code: 0,
    })
}

fn group_from_file(file: &Path) -> Result<(FgAbelianGroup, Vec<GroupElement>), CmdError> {
    let gf = io::read_group(file)?;
    let relations = io::rows_to_matrix_with_cols(gf.ambient_rank, &gf.relations)?;
    let group = FgAbelianGroup::from_relations(gf.ambient_rank, &relations)
        .map_err(|e| CmdError::Input(e.to_string()))?;
    let mut gens = Vec::with_capacity(gf.generators.len());
    for row in &gf.generators {
        let coords = row
            .iter()
            .map(io::JsonInt::to_bigint)
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(
            group
                .element(coords)
                .map_err(|e| CmdError::Input(e.to_string()))?,
        );
    }
    Ok((group, gens))
}

fn cmd_group(file: &Path, subgroups: bool) -> Result<Report, CmdError> {
    let (group, _) = group_from_file(file)?;
    let structure = group.invariant_factors();
    let mut text = format!(
        "group = {structure}\nfinitely many subgroups: {}\n",
        if structure.is_finite() { "yes" } else { "no" }
    );
    let mut json = json!({
        "group": structure.to_string(),
        "finite": structure.is_finite(),
    });
    let mut code = 0;
    if subgroups {
        match group.enumerate_subgroups() {
            Ok(subs) => {
                text.push_str(&format!("{} subgroups:\n", subs.len()));
                for (i, h) in subs.iter().enumerate() {
                    text.push_str(&format!("subgroup {}: {h}\n", i + 1));
                }
                json["status"] = Value::from("ok");
                json["subgroups"] = Value::Array(
                    subs.iter().map(|h| matrix_json(h.lattice())).collect(),
                );
            }
            Err(AbelianError::InfiniteGroup { free_rank }) => {
                text.push_str(&format!(
                    "infinitely many subgroups (free rank {free_rank})\n"
                ));
                json["status"] = Value::from("infinitely_many");
                code = 0;
            }
            Err(e) => return Err(CmdError::Input(e.to_string())),
        }
    }
    Ok(Report { text, json, code })
}

/// Sample members of a class among objects with multiplicities at most 2,
/// capped for display.
fn member_samples(p: &ExactCatPresentation, class: &DenseClass) -> Vec<String> {
    const CAP: usize = 8;
    let mut labels = Vec::new();
    let mut truncated = false;
    for v in bounded_vectors(p.rank(), 2) {
        if g_membership(p, class, &v).expect("validated vectors") {
            if labels.len() == CAP {
                truncated = true;
                break;
            }
            labels.push(object_label(p.indecomposables(), &v));
        }
    }
    if truncated {
        labels.push("...".to_string());
    }
    labels
}

fn render_verification(report: &VerificationReport) -> (String, Value) {
    let mut text = format!("verification at bound {}\n", report.bound);
    if !report.roundtrip_applicable {
        text.push_str(
            "roundtrip and injectivity skipped (bound below twice the largest generator multiplicity)\n",
        );
    }
    let flag = |ok: bool| if ok { "ok" } else { "FAIL" };
    let mut class_values = Vec::new();
    for (i, c) in report.classes.iter().enumerate() {
        text.push_str(&format!(
            "class {}: subgroup {}, members {}, ses-closure {}, sum-closure {}, density {}, roundtrip {}, maximality {}\n",
            i + 1,
            c.subgroup,
            c.members.len(),
            flag(c.ses_closure_ok),
            flag(c.sum_closure_ok),
            flag(c.density_ok),
            flag(c.roundtrip_ok),
            flag(c.maximality_ok),
        ));
        for failure in &c.failures {
            text.push_str(&format!("  {failure}\n"));
        }
        class_values.push(json!({
            "subgroup": matrix_json(c.subgroup.lattice()),
            "members": c.members.len(),
            "ses_closure_ok": c.ses_closure_ok,
            "sum_closure_ok": c.sum_closure_ok,
            "density_ok": c.density_ok,
            "roundtrip_ok": c.roundtrip_ok,
            "maximality_ok": c.maximality_ok,
            "failures": c.failures,
        }));
    }
    text.push_str(&format!(
        "injectivity: {}\n{}\n",
        flag(report.injectivity_ok),
        if report.passed() {
            "VERIFY PASS"
        } else {
            "VERIFY FAIL"
        }
    ));
    let value = json!({
        "bound": report.bound,
        "roundtrip_applicable": report.roundtrip_applicable,
        "classes": class_values,
        "injectivity_ok": report.injectivity_ok,
        "passed": report.passed(),
    });
    (text, value)
}

fn cmd_classify(file: &Path, variant: VariantArg, bound: Option<u64>) -> Result<Report, CmdError> {
    let p = io::read_presentation(file)?;
    let k = k0(&p);
    let image = generator_image(&p, &k);
    let k0_structure = k.group().invariant_factors();
    let quotient_structure = k
        .group()
        .quotient(&image)
        .expect("image lives in K0")
        .invariant_factors();

    let mut text = format!(
        "K0 = {k0_structure}\ngenerator image = {image}\nquotient by generator image = {quotient_structure}\n"
    );
    match classify(&p, variant.into()) {
        Err(ExcatError::InfinitelyMany { .. }) => {
            text.push_str("infinitely many dense resolving subcategories\n");
            let json = json!({
                "status": "infinitely_many",
                "k0": k0_structure.to_string(),
                "generator_image": matrix_json(image.lattice()),
                "quotient": quotient_structure.to_string(),
            });
            Ok(Report {
                text,
                json,
                code: 0,
            })
        }
        Err(other) => Err(CmdError::Input(other.to_string())),
        Ok(classes) => {
            text.push_str(&format!(
                "{} dense resolving subcategories\n",
                classes.len()
            ));
            let mut class_values = Vec::new();
            for (i, class) in classes.iter().enumerate() {
                let class_quotient = k
                    .group()
                    .quotient(&class.subgroup)
                    .expect("classified subgroup")
                    .invariant_factors();
                let samples = member_samples(&p, class);
                text.push_str(&format!(
                    "class {}: subgroup {}, K0/H = {class_quotient}, members (mult <= 2): {}\n",
                    i + 1,
                    class.subgroup,
                    samples.join(", "),
                ));
                class_values.push(json!({
                    "subgroup": matrix_json(class.subgroup.lattice()),
                    "quotient": class_quotient.to_string(),
                    "member_samples": samples,
                }));
            }
            let mut json = json!({
                "status": "ok",
                "k0": k0_structure.to_string(),
                "generator_image": matrix_json(image.lattice()),
                "quotient": quotient_structure.to_string(),
                "classes": class_values,
            });
            let mut code = 0;
            if let Some(b) = bound {
                let report =
                    verify_bijection(&p, b).map_err(|e| CmdError::Input(e.to_string()))?;
                let (vtext, vjson) = render_verification(&report);
                text.push_str(&vtext);
                json["verification"] = vjson;
                if !report.passed() {
                    code = 1;
                }
            }
            Ok(Report { text, json, code })
        }
    }
}

fn cmd_cartan(file: &Path) -> Result<Report, CmdError> {
    let quiver = io::read_quiver(file)?;
    let report = quiver
        .dense_resolving_count()
        .map_err(|e| CmdError::InfiniteDimensional(e.to_string()))?;
    let mut text = format!(
        "Cartan matrix:\n{}\ndeterminant = {}\ninvariant factors: {}\n",
        report.matrix,
        report.determinant,
        factor_list(&report.invariant_factors)
    );
    let count_value;
    match &report.count {
        SubcatCount::Finite(count) => {
            text.push_str(&format!(
                "dense resolving subcategories (divisor formula) = {count}\n"
            ));
            count_value = bigint_json(count);
        }
        SubcatCount::Infinite => {
            text.push_str("dense resolving subcategories (divisor formula) = INFINITE\n");
            count_value = Value::from("infinite");
        }
    }
    let mut json = json!({
        "cartan_matrix": matrix_json(&report.matrix),
        "determinant": bigint_json(&report.determinant),
        "invariant_factors": report.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
        "count": count_value,
    });
    if let Some(order) = report.cokernel.order() {
        if order <= BigInt::from(10_000) {
            let enumerated = report
                .cokernel
                .enumerate_subgroups()
                .map_err(|e| CmdError::Input(e.to_string()))?
                .len();
            text.push_str(&format!(
                "cross-check by subgroup enumeration = {enumerated}\n"
            ));
            json["cross_check"] = Value::from(enumerated);
        }
    }
    Ok(Report {
        text,
        json,
        code: 0,
    })
}

fn cmd_singularity(
    type_tag: Option<&str>,
    n: Option<u64>,
    all: bool,
    max_n: u64,
) -> Result<Report, CmdError> {
    let entries = if all {
        if type_tag.is_some() {
            return Err(CmdError::Input(
                "--all and --type are mutually exclusive".to_string(),
            ));
        }
        catalog::all_entries(max_n)
    } else {
        let tag = type_tag.ok_or_else(|| {
            CmdError::Input("give --type, or --all for the whole table".to_string())
        })?;
        vec![catalog::entry(tag, n).map_err(CmdError::Input)?]
    };

    struct Row {
        label: String,
        type_tag: &'static str,
        parameter: Option<u64>,
        k0: String,
        count: BigInt,
    }
    let mut rows = Vec::with_capacity(entries.len());
    for e in &entries {
        let recomputed = e
            .recomputed_count()
            .map_err(|err| CmdError::Input(err.to_string()))?;
        if recomputed != e.expected_count {
            return Err(CmdError::Input(format!(
                "catalog assertion failed for {}: closed form {} vs enumeration {recomputed}",
                e.label, e.expected_count
            )));
        }
        rows.push(Row {
            label: e.label.clone(),
            type_tag: e.type_tag,
            parameter: e.parameter,
            k0: e.k0_structure().to_string(),
            count: recomputed,
        });
    }

    let label_width = rows.iter().map(|r| r.label.len()).max().unwrap_or(4).max(4);
    let k0_width = rows.iter().map(|r| r.k0.len()).max().unwrap_or(2).max(2);
    let mut text = format!(
        "{:label_width$}  {:k0_width$}  dense resolving subcategories\n",
        "type", "K0"
    );
    for r in &rows {
        text.push_str(&format!(
            "{:label_width$}  {:k0_width$}  {}\n",
            r.label, r.k0, r.count
        ));
    }
    let json = json!({
        "rows": rows.iter().map(|r| json!({
            "type": r.type_tag,
            "label": r.label,
            "n": r.parameter,
            "k0": r.k0,
            "count": bigint_json(&r.count),
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json,
        code: 0,
    })
}

fn cmd_quotient_classify(file: &Path, designated: &[String]) -> Result<Report, CmdError> {
    let (group, file_gens) = group_from_file(file)?;
    let elements: Vec<GroupElement> = if designated.is_empty() {
        file_gens
    } else {
        let mut elems = Vec::with_capacity(designated.len());
        for spec in designated {
            let coords = io::parse_coordinates(spec)?;
            elems.push(
                group
                    .element(coords)
                    .map_err(|e| CmdError::Input(e.to_string()))?,
            );
        }
        elems
    };
    let span: Subgroup = group
        .subgroup_generated(&elements)
        .map_err(|e| CmdError::Input(e.to_string()))?;
    let structure = group.invariant_factors();
    let mut text = format!("group = {structure}\ndesignated span = {span}\n");
    match group.subgroups_containing(&span) {
        Ok(subs) => {
            text.push_str(&format!(
                "{} subgroups containing the designated span:\n",
                subs.len()
            ));
            for (i, h) in subs.iter().enumerate() {
                text.push_str(&format!("subgroup {}: {h}\n", i + 1));
            }
            let json = json!({
                "status": "ok",
                "group": structure.to_string(),
                "designated_span": matrix_json(span.lattice()),
                "subgroups": subs.iter().map(|h| matrix_json(h.lattice())).collect::<Vec<_>>(),
            });
            Ok(Report {
                text,
                json,
                code: 0,
            })
        }
        Err(AbelianError::InfinitelyMany { quotient }) => {
            text.push_str(&format!(
                "infinitely many subgroups containing the designated span (quotient = {quotient})\n"
            ));
            let json = json!({
                "status": "infinitely_many",
                "group": structure.to_string(),
                "designated_span": matrix_json(span.lattice()),
                "quotient": quotient.to_string(),
            });
            Ok(Report {
                text,
                json,
                code: 0,
            })
        }
        Err(e) => Err(CmdError::Input(e.to_string())),
    }
}

fn cmd_verify(file: &Path, bound: u64) -> Result<Report, CmdError> {
    let p = io::read_presentation(file)?;
    let report = verify_bijection(&p, bound).map_err(|e| CmdError::Input(e.to_string()))?;
    let (text, json) = render_verification(&report);
    Ok(Report {
        code: if report.passed() { 0 } else { 1 },
        text,
        json,
    })
}
