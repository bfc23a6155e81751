//! Command-line interface for constructing, checking, analyzing, twisting
//! and searching hom-associative algebras given by structure constants.
//!
//! Inputs are JSON algebra files, built-in fixtures (`fixture:<id>`), or
//! seeded generated examples (`random:<recipe>:<field>:<dim>`). Exit codes:
//! 0 all requested checks passed, 1 a check or operation precondition
//! failed (witness in the report), 2 usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homalg_core::algebra::{CheckOutcome, Element, HomAlgebra, LinearMap, UnitReport};
use homalg_core::analysis::{
    self, associative_factor, centralizer, codim_analysis, nucleus, verify_two_sided_unit,
    FactorError, IdentityReport, IdentityStatus,
};
use homalg_core::field::FieldSpec;
use homalg_core::fixtures::{load_fixture, Fixture, FixtureId, FixtureOptions};
use homalg_core::format::{self, LoadedAlgebra};
use homalg_core::generate::{random_hom_algebra, Recipe};
use homalg_core::linalg::{Matrix, Vector};
use homalg_core::search::{
    search_with_hooks, SearchHooks, SearchOutcome, SearchSpec, SearchStatus,
};
use homalg_core::truncated::{TruncatedFixture, DEFAULT_DEGREE_BOUND};
use homalg_core::twisting::{
    detwist, enumerate_twists, generalized_twist, weak_embedding_obstruction, yau_twist,
    TwistEnumError, TwistEnumOptions,
};

#[derive(Parser)]
#[command(
    name = "homalg",
    version,
    about = "Exact checks, analyses, twists and model search for hom-associative algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON report on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Seed for `random:` inputs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node or enumeration budget where applicable
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Degree bound for the degree-truncated fixture
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistMode {
    Yau,
    Generalized,
}

#[derive(Subcommand)]
enum Command {
    /// Run axiom and identity checks on an algebra
    Check {
        /// Path, fixture:<id>, or random:<recipe>:<field>:<dim>
        input: String,
        /// Check the twisted associativity axiom
        #[arg(long)]
        hom_associative: bool,
        /// Check plain associativity
        #[arg(long)]
        associative: bool,
        /// Check commutativity
        #[arg(long)]
        commutative: bool,
        /// Report classical and weak unit solution sets
        #[arg(long)]
        units: bool,
        /// Run the unital identity suite
        #[arg(long)]
        unital_identities: bool,
        /// Run the weak-unit identity suite (needs a bijective twist)
        #[arg(long)]
        weak_unit_identities: bool,
        /// Run identity suites without precondition checks
        #[arg(long)]
        diagnostic: bool,
        /// Search for a pair certifying no weakly unital extension exists
        #[arg(long)]
        obstruction: bool,
    },
    /// Codimension analysis, derived subspaces and the associative factor
    Analyze { input: String },
    /// Twist a product by a linear map
    Twist {
        input: String,
        #[arg(long, value_enum)]
        mode: TwistMode,
        /// JSON file holding the twisting matrix (a bare 2D array of value
        /// strings, or an algebra file with an "alpha" field); defaults to
        /// the input's own twisting map
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// Write the twisted algebra to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover an associative product from a weakly left unital carrier
    /// with bijective twisting map
    Detwist {
        input: String,
        /// Write the de-twisted algebra to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the twisting maps compatible with a unital algebra
    EnumerateTwists {
        input: String,
        /// Candidate element (comma-separated coordinates); required over Q,
        /// may be repeated
        #[arg(long = "candidate")]
        candidates: Vec<String>,
    },
    /// Run a model search from a JSON spec file
    Search { spec: PathBuf },
    /// Print or export a built-in fixture
    Fixture {
        id: String,
        /// Write the fixture to this path (not available for the
        /// degree-truncated fixture)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Input {
    Plain(LoadedAlgebra),
    Truncated(TruncatedFixture),
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .trim_start_matches("GF")
        .trim_start_matches("gf")
        .trim_start_matches('(')
        .trim_end_matches(')');
    let p: u64 = digits
        .parse()
        .map_err(|_| anyhow!("cannot parse field {s:?}; expected Q or GF<p>"))?;
    Ok(FieldSpec::prime(p)?)
}

fn resolve_input(spec: &str, degree_bound: usize, seed: u64) -> Result<Input> {
    if let Some(id) = spec.strip_prefix("fixture:") {
        let id: FixtureId = id.parse().map_err(|e: String| anyhow!(e))?;
        return Ok(match load_fixture(id, &FixtureOptions { degree_bound }) {
            Fixture::Plain(l) => Input::Plain(l),
            Fixture::DegreeTruncated(t) => Input::Truncated(t),
        });
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [recipe, field, dim] = parts.as_slice() else {
            bail!("random input must be random:<recipe>:<field>:<dim>");
        };
        let recipe: Recipe = recipe.parse().map_err(|e: String| anyhow!(e))?;
        let field = parse_field(field)?;
        let dim: usize = dim.parse().context("bad dimension in random input")?;
        let h = random_hom_algebra(field, dim, recipe, seed)?;
        let unit = h.algebra().two_sided_unit();
        let (algebra, alpha) = h.into_parts();
        let mut metadata = serde_json::Map::new();
        metadata.insert("generator".into(), json!(recipe.as_str()));
        metadata.insert("seed".into(), json!(seed));
        return Ok(Input::Plain(LoadedAlgebra {
            algebra,
            alpha: Some(alpha),
            unit,
            metadata,
        }));
    }
    Ok(Input::Plain(format::load(spec)?))
}

/// Collects report entries and renders them as text lines or one JSON
/// document. Any `fail` entry flips the process outcome to exit code 1.
struct Reporter {
    command: &'static str,
    json: bool,
    entries: Vec<Value>,
    ok: bool,
}

impl Reporter {
    fn new(command: &'static str, json: bool) -> Reporter {
        Reporter {
            command,
            json,
            entries: Vec::new(),
            ok: true,
        }
    }

    fn entry(&mut self, status: &str, name: &str, text: String, detail: Value) {
        if !self.json {
            println!("{:<4} {}: {}", status.to_uppercase(), name, text);
        }
        let mut obj = json!({ "name": name, "status": status, "text": text });
        if !detail.is_null() {
            obj["detail"] = detail;
        }
        self.entries.push(obj);
    }

    fn pass(&mut self, name: &str, text: impl Into<String>) {
        self.entry("pass", name, text.into(), Value::Null);
    }

    fn fail(&mut self, name: &str, text: impl Into<String>, detail: Value) {
        self.ok = false;
        self.entry("fail", name, text.into(), detail);
    }

    fn info(&mut self, name: &str, text: impl Into<String>, detail: Value) {
        self.entry("info", name, text.into(), detail);
    }

    fn skip(&mut self, name: &str, text: impl Into<String>) {
        self.entry("skip", name, text.into(), Value::Null);
    }

    fn finish(self, extra: Value) -> bool {
        if self.json {
            let mut doc = json!({
                "command": self.command,
                "ok": self.ok,
                "entries": self.entries,
            });
            if !extra.is_null() {
                doc["result"] = extra;
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
        } else if !self.ok {
            println!("result: FAIL");
        } else {
            println!("result: ok");
        }
        self.ok
    }
}

fn witness_value<W: serde::Serialize>(w: &W) -> Value {
    serde_json::to_value(w).unwrap_or(Value::Null)
}

fn loaded_value(l: &LoadedAlgebra) -> Value {
    serde_json::to_value(format::to_file(l)).unwrap_or(Value::Null)
}

fn identity_entries(reporter: &mut Reporter, reports: &[IdentityReport]) {
    for r in reports {
        let name = r.identity_id.as_str();
        match &r.status {
            IdentityStatus::Pass => reporter.pass(name, r.formula),
            IdentityStatus::Fail { witness } => reporter.fail(
                name,
                format!(
                    "{} fails at basis indices {:?}: lhs = {}, rhs = {}",
                    r.formula, witness.indices, witness.lhs, witness.rhs
                ),
                witness_value(witness),
            ),
            IdentityStatus::Skipped { reason } => {
                reporter.skip(name, format!("{} ({reason})", r.formula))
            }
        }
    }
}

fn unit_report_value(r: &UnitReport) -> Value {
    witness_value(r)
}

fn require_hom_algebra(l: &LoadedAlgebra) -> Result<HomAlgebra> {
    l.hom_algebra()
        .ok_or_else(|| anyhow!("this input has no twisting map; add an \"alpha\" field"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    reporter: &mut Reporter,
    input: &Input,
    mut hom_associative: bool,
    mut associative: bool,
    mut commutative: bool,
    mut units: bool,
    unital_identities: bool,
    weak_unit_identities: bool,
    diagnostic: bool,
    obstruction: bool,
) -> Result<()> {
    let explicit = hom_associative
        || associative
        || commutative
        || units
        || unital_identities
        || weak_unit_identities
        || obstruction;
    if !explicit {
        associative = true;
        commutative = true;
        hom_associative = true;
        units = true;
    }

    match input {
        Input::Truncated(t) => {
            if unital_identities || weak_unit_identities || obstruction {
                bail!("identity suites and obstruction search are not available for the degree-truncated fixture");
            }
            if hom_associative {
                let r = t.check_hom_associative_bounded();
                let text = format!(
                    "checked {} basis triples in bounds, skipped {}",
                    r.checked_tuples, r.skipped_tuples
                );
                match &r.outcome {
                    CheckOutcome::Pass => reporter.pass("hom-associative", text),
                    CheckOutcome::Fail(w) => reporter.fail(
                        "hom-associative",
                        format!("{text}; fails at {:?}", w.indices),
                        witness_value(w),
                    ),
                }
            }
            if associative {
                let r = t.check_associative_bounded();
                match &r.outcome {
                    CheckOutcome::Pass => reporter.pass("associative", "all in-bound triples"),
                    CheckOutcome::Fail(w) => reporter.fail(
                        "associative",
                        format!(
                            "fails at basis triple {:?} ({}, {}, {})",
                            w.indices,
                            t.basis_name(w.indices.0),
                            t.basis_name(w.indices.1),
                            t.basis_name(w.indices.2)
                        ),
                        witness_value(w),
                    ),
                }
            }
            if commutative {
                let r = t.check_commutative_bounded();
                match &r.outcome {
                    CheckOutcome::Pass => reporter.pass("commutative", "all in-bound pairs"),
                    CheckOutcome::Fail(w) => reporter.fail(
                        "commutative",
                        format!("fails at basis pair ({}, {})", w.indices.0, w.indices.1),
                        witness_value(w),
                    ),
                }
            }
            if units {
                if t.unit_holds() {
                    reporter.info("units", "two-sided unit at basis index 0", Value::Null);
                } else {
                    reporter.fail("units", "designated unit fails", Value::Null);
                }
            }
            Ok(())
        }
        Input::Plain(l) => {
            let a = &l.algebra;
            if associative {
                match a.check_associative() {
                    CheckOutcome::Pass => reporter.pass("associative", "all basis triples"),
                    CheckOutcome::Fail(w) => reporter.fail(
                        "associative",
                        format!(
                            "fails at basis triple {:?}: lhs = {}, rhs = {}",
                            w.indices, w.lhs, w.rhs
                        ),
                        witness_value(&w),
                    ),
                }
            }
            if commutative {
                match a.check_commutative() {
                    CheckOutcome::Pass => reporter.pass("commutative", "all basis pairs"),
                    CheckOutcome::Fail(w) => reporter.fail(
                        "commutative",
                        format!(
                            "fails at basis pair {:?}: lhs = {}, rhs = {}",
                            w.indices, w.lhs, w.rhs
                        ),
                        witness_value(&w),
                    ),
                }
            }
            if hom_associative {
                if let Some(h) = l.hom_algebra() {
                    match h.check_hom_associative() {
                        CheckOutcome::Pass => reporter.pass("hom-associative", "all basis triples"),
                        CheckOutcome::Fail(w) => reporter.fail(
                            "hom-associative",
                            format!(
                                "fails at basis triple {:?}: lhs = {}, rhs = {}",
                                w.indices, w.lhs, w.rhs
                            ),
                            witness_value(&w),
                        ),
                    }
                } else if explicit {
                    bail!("--hom-associative needs a twisting map; the input has none");
                }
            }
            if units {
                match l.hom_algebra() {
                    Some(h) => {
                        let report = h.find_units();
                        let text = match (&report.two_sided_unit, &report.weak_left_units) {
                            (Some(u), _) => format!("two-sided unit {u}"),
                            (None, Some(w)) => {
                                format!("no two-sided unit; weak left unit {}", w.particular)
                            }
                            (None, None) => "no two-sided unit, no weak left unit".to_string(),
                        };
                        reporter.info("units", text, unit_report_value(&report));
                    }
                    None => {
                        let text = match a.two_sided_unit() {
                            Some(u) => format!("two-sided unit {u}"),
                            None => "no two-sided unit".to_string(),
                        };
                        reporter.info("units", text, Value::Null);
                    }
                }
            }
            if unital_identities {
                let h = require_hom_algebra(l)?;
                let unit = match &l.unit {
                    Some(u) => {
                        verify_two_sided_unit(a, u)
                            .map_err(|e| anyhow!("file unit is invalid: {e}"))?;
                        Some(u.clone())
                    }
                    None => a.two_sided_unit(),
                };
                match (unit, diagnostic) {
                    (Some(u), false) => match analysis::verify_unital_identities(&h, &u) {
                        Ok(reports) => identity_entries(reporter, &reports),
                        Err(e) => reporter.fail(
                            "unital-identities",
                            format!("precondition failed: {e}"),
                            Value::Null,
                        ),
                    },
                    (unit, _) => {
                        if !diagnostic && unit.is_none() {
                            reporter.info(
                                "unital-identities",
                                "no two-sided unit; running in diagnostic mode",
                                Value::Null,
                            );
                        }
                        let reports =
                            analysis::verify_unital_identities_diagnostic(&h, unit.as_ref());
                        identity_entries(reporter, &reports);
                    }
                }
            }
            if weak_unit_identities {
                let h = require_hom_algebra(l)?;
                let outcome = if diagnostic {
                    homalg_core::twisting::verify_section3_lemmas_diagnostic(&h)
                } else {
                    homalg_core::twisting::verify_section3_lemmas(&h)
                };
                match outcome {
                    Ok(reports) => identity_entries(reporter, &reports),
                    Err(e) => reporter.fail(
                        "weak-unit-identities",
                        format!("precondition failed: {e}"),
                        Value::Null,
                    ),
                }
            }
            if obstruction {
                let h = require_hom_algebra(l)?;
                match weak_embedding_obstruction(&h) {
                    Some(w) => reporter.info(
                        "obstruction",
                        format!(
                            "witness found: x = {}, y = {} with x*y = 0 but a(x)*a(y) = {}",
                            w.x, w.y, w.alpha_product
                        ),
                        witness_value(&w),
                    ),
                    None => reporter.info(
                        "obstruction",
                        "no witness found (not a proof of embeddability)",
                        Value::Null,
                    ),
                }
            }
            Ok(())
        }
    }
}

fn cmd_analyze(reporter: &mut Reporter, input: &Input) -> Result<()> {
    match input {
        Input::Truncated(t) => {
            reporter.info(
                "carrier",
                format!("degree bound {}, dimension {}", t.bound(), t.dim()),
                json!({ "bound": t.bound(), "dim": t.dim() }),
            );
            let kernel = t.alpha_kernel();
            reporter.info(
                "twist-kernel",
                format!("dimension {} (computed on the in-bound domain)", kernel.dim()),
                witness_value(&kernel),
            );
            let hom = t.check_hom_associative_bounded();
            reporter.info(
                "hom-associative",
                format!(
                    "{} on {} in-bound triples ({} skipped)",
                    if hom.passed() { "holds" } else { "fails" },
                    hom.checked_tuples,
                    hom.skipped_tuples
                ),
                witness_value(&hom),
            );
            let assoc = t.check_associative_bounded();
            reporter.info(
                "associative",
                if assoc.passed() { "holds in bounds" } else { "fails" },
                witness_value(&assoc),
            );
            let factor = t.check_factor_associative_bounded();
            reporter.info(
                "factor",
                format!(
                    "quotient by the twist kernel is the truncated polynomial part; associative on {} in-bound triples",
                    factor.checked_tuples
                ),
                witness_value(&factor),
            );
            Ok(())
        }
        Input::Plain(l) => {
            let h = require_hom_algebra(l)?;
            let unit = match &l.unit {
                Some(u) => {
                    verify_two_sided_unit(&l.algebra, u)
                        .map_err(|e| anyhow!("file unit is invalid: {e}"))?;
                    Some(u.clone())
                }
                None => l.algebra.two_sided_unit(),
            };
            let Some(unit) = unit else {
                reporter.fail(
                    "precondition",
                    "codimension analysis needs a two-sided unit and none exists",
                    Value::Null,
                );
                return Ok(());
            };
            match codim_analysis(&h, &unit) {
                Err(e) => {
                    reporter.fail("precondition", format!("{e}"), Value::Null);
                    return Ok(());
                }
                Ok(report) => {
                    reporter.info(
                        "codim",
                        format!(
                            "codim Im(alpha) = {}; alpha injective: {}, surjective: {}",
                            report.codim_im_alpha, report.alpha_injective, report.alpha_surjective
                        ),
                        witness_value(&report),
                    );
                    reporter.info(
                        "prediction",
                        match report.triggering_clause {
                            Some(clause) => format!(
                                "predicted associative by {:?}; actually associative: {}",
                                clause, report.actual_associative
                            ),
                            None => format!(
                                "no sufficient clause fires; actually associative: {}",
                                report.actual_associative
                            ),
                        },
                        Value::Null,
                    );
                    reporter.info(
                        "decomposition",
                        format!(
                            "unit line + image + complement dims: {} + {} + {}",
                            report.decomposition.unit_line.dim(),
                            report.decomposition.im_alpha.dim(),
                            report.decomposition.u_complement.dim()
                        ),
                        Value::Null,
                    );
                    if !report.implications_hold() {
                        reporter.fail(
                            "consistency",
                            "structure-theory implications violated",
                            Value::Null,
                        );
                    }
                }
            }
            let nuc = nucleus(&l.algebra);
            let centre = centralizer(&l.algebra);
            reporter.info(
                "subspaces",
                format!(
                    "nucleus dim {}, centralizer dim {}, Im(alpha) dim {}, Ke(alpha) dim {}",
                    nuc.dim(),
                    centre.dim(),
                    analysis::alpha_image(&h).dim(),
                    analysis::alpha_kernel(&h).dim()
                ),
                json!({
                    "nucleus_dim": nuc.dim(),
                    "centralizer_dim": centre.dim(),
                    "image_dim": analysis::alpha_image(&h).dim(),
                    "kernel_dim": analysis::alpha_kernel(&h).dim(),
                }),
            );
            match associative_factor(&h) {
                Ok(f) => reporter.info(
                    "factor",
                    format!(
                        "associative factor of dimension {}; induced twist injective: {}",
                        f.factor.dim(),
                        f.induced_alpha.invert().is_ok()
                    ),
                    Value::Null,
                ),
                Err(FactorError::Degenerate) => reporter.info(
                    "factor",
                    "kernel is the whole carrier; factor would be zero-dimensional",
                    Value::Null,
                ),
                Err(e) => reporter.fail("factor", format!("{e}"), Value::Null),
            }
            Ok(())
        }
    }
}

fn parse_alpha_file(path: &Path, field: FieldSpec, dim: usize) -> Result<LinearMap> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    // try a bare 2D array of value strings first, then a full algebra file
    if let Ok(rows) = serde_json::from_str::<Vec<Vec<String>>>(&text) {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            bail!("alpha matrix in {} must be {dim}x{dim}", path.display());
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &rows {
            for v in row {
                entries.push(field.parse_scalar(v)?);
            }
        }
        return Ok(LinearMap::new(Matrix::new(field, dim, dim, entries)?)?);
    }
    let loaded = format::parse_str(&text)?;
    loaded
        .alpha
        .ok_or_else(|| anyhow!("{} holds no twisting map", path.display()))
}

fn cmd_twist(
    reporter: &mut Reporter,
    input: &Input,
    mode: TwistMode,
    alpha_path: Option<&Path>,
    out: Option<&Path>,
) -> Result<Value> {
    let Input::Plain(l) = input else {
        bail!("the degree-truncated fixture cannot be twisted");
    };
    let alpha = match alpha_path {
        Some(p) => parse_alpha_file(p, l.algebra.field(), l.algebra.dim())?,
        None => l
            .alpha
            .clone()
            .ok_or_else(|| anyhow!("no twisting map: pass --alpha or use an input with one"))?,
    };
    let twisted = match mode {
        TwistMode::Yau => yau_twist(&l.algebra, &alpha),
        TwistMode::Generalized => generalized_twist(&l.algebra, &alpha),
    };
    match twisted {
        Err(e) => {
            reporter.fail("twist", format!("{e}"), witness_value(&format!("{e:?}")));
            Ok(Value::Null)
        }
        Ok(h) => {
            reporter.pass("hom-associative", "twisted product verified on all basis triples");
            let units = h.find_units();
            if let Some(w) = &units.weak_left_units {
                reporter.info(
                    "weak-units",
                    format!("weak left unit {}", w.particular),
                    unit_report_value(&units),
                );
            }
            let result = LoadedAlgebra {
                algebra: h.algebra().clone(),
                alpha: Some(h.alpha().clone()),
                unit: None,
                metadata: l.metadata.clone(),
            };
            if let Some(path) = out {
                format::save(&result, path)?;
                reporter.info("saved", path.display().to_string(), Value::Null);
            }
            if !reporter.json {
                println!("{}", format::to_string_pretty(&result));
            }
            Ok(loaded_value(&result))
        }
    }
}

fn cmd_detwist(reporter: &mut Reporter, input: &Input, out: Option<&Path>) -> Result<Value> {
    let Input::Plain(l) = input else {
        bail!("the degree-truncated fixture cannot be de-twisted");
    };
    let h = require_hom_algebra(l)?;
    match detwist(&h) {
        Err(e) => {
            reporter.fail("detwist", format!("{e}"), Value::Null);
            Ok(Value::Null)
        }
        Ok(result) => {
            reporter.pass(
                "detwist",
                format!("associative product recovered; left unit {}", result.left_unit),
            );
            let retwisted = generalized_twist(&result.detwisted, h.alpha())
                .expect("re-twisting a de-twisted product always satisfies the compatibility equation");
            if retwisted.algebra() == h.algebra() {
                reporter.pass("round-trip", "re-twisting reproduces the input product exactly");
            } else {
                reporter.fail("round-trip", "re-twist mismatch", Value::Null);
            }
            // the recovered unit is guaranteed one-sided only; record it in
            // the unit field just when it is two-sided
            let two_sided =
                verify_two_sided_unit(&result.detwisted, &result.left_unit).is_ok();
            let mut metadata = l.metadata.clone();
            metadata.insert(
                "left_unit".into(),
                witness_value(result.left_unit.coords()),
            );
            let saved = LoadedAlgebra {
                algebra: result.detwisted.clone(),
                alpha: None,
                unit: two_sided.then(|| result.left_unit.clone()),
                metadata,
            };
            if let Some(path) = out {
                format::save(&saved, path)?;
                reporter.info("saved", path.display().to_string(), Value::Null);
            }
            if !reporter.json {
                println!("{}", format::to_string_pretty(&saved));
            }
            Ok(loaded_value(&saved))
        }
    }
}

fn cmd_enumerate_twists(
    reporter: &mut Reporter,
    input: &Input,
    candidates: &[String],
    budget: Option<u64>,
) -> Result<Value> {
    let Input::Plain(l) = input else {
        bail!("the degree-truncated fixture does not support twist enumeration");
    };
    let a = &l.algebra;
    let unit = match &l.unit {
        Some(u) => u.clone(),
        None => match a.two_sided_unit() {
            Some(u) => u,
            None => {
                reporter.fail("precondition", "the algebra has no two-sided unit", Value::Null);
                return Ok(Value::Null);
            }
        },
    };
    let parsed_candidates = if candidates.is_empty() {
        None
    } else {
        let mut out = Vec::new();
        for c in candidates {
            let coords: Result<Vec<_>> = c
                .split(',')
                .map(|v| Ok(a.field().parse_scalar(v.trim())?))
                .collect();
            out.push(Element::new(Vector::new(a.field(), coords?)?));
        }
        Some(out)
    };
    let opts = TwistEnumOptions {
        budget: budget.unwrap_or(1 << 20),
        candidates: parsed_candidates,
    };
    match enumerate_twists(a, &unit, &opts) {
        Err(TwistEnumError::CandidatesRequired) => {
            bail!("enumeration over Q requires --candidate elements")
        }
        Err(e) => {
            reporter.fail("enumerate", format!("{e}"), Value::Null);
            Ok(Value::Null)
        }
        Ok(corr) => {
            reporter.pass(
                "enumerate",
                format!(
                    "{} admissible twisting maps ({}; pairing and composition law verified)",
                    corr.twist_maps.len(),
                    if corr.complete { "complete" } else { "candidates only" }
                ),
            );
            for (i, x) in corr.ac_elements.iter().enumerate() {
                reporter.info(&format!("element[{i}]"), format!("{x}"), witness_value(x));
            }
            if !corr.rejected.is_empty() {
                reporter.info(
                    "rejected",
                    format!("{} candidates failed membership", corr.rejected.len()),
                    witness_value(&corr.rejected),
                );
            }
            Ok(json!({
                "count": corr.twist_maps.len(),
                "complete": corr.complete,
                "elements": witness_value(&corr.ac_elements),
                "maps": witness_value(&corr.twist_maps),
            }))
        }
    }
}

fn status_value(outcome: &SearchOutcome) -> Value {
    match outcome.status {
        SearchStatus::Found => json!("found"),
        SearchStatus::ExhaustedNone => json!("exhausted-none"),
        SearchStatus::BudgetExceeded => json!("budget-exceeded"),
        SearchStatus::Count(n) => json!({ "count": n }),
    }
}

fn cmd_search(reporter: &mut Reporter, spec_path: &Path, budget: Option<u64>) -> Result<Value> {
    let text = std::fs::read_to_string(spec_path)
        .with_context(|| format!("cannot read {}", spec_path.display()))?;
    let mut spec: SearchSpec = serde_json::from_str(&text)
        .with_context(|| format!("invalid search spec {}", spec_path.display()))?;
    if let Some(b) = budget {
        spec.budget = b;
    }

    let interrupted = Arc::new(AtomicBool::new(false));
    let flag = interrupted.clone();
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));

    let mut progress = |nodes: u64| {
        eprintln!("nodes explored: {nodes}");
    };
    let mut hooks = SearchHooks {
        interrupt: Some(&interrupted),
        progress: Some(&mut progress),
    };
    let outcome = search_with_hooks(&spec, &mut hooks)?;

    let text = match &outcome.status {
        SearchStatus::Found => "model found".to_string(),
        SearchStatus::ExhaustedNone => "search space exhausted, no model".to_string(),
        SearchStatus::BudgetExceeded => {
            if interrupted.load(Ordering::Relaxed) {
                "interrupted; partial exploration only".to_string()
            } else {
                "budget exceeded; partial exploration only".to_string()
            }
        }
        SearchStatus::Count(n) => format!("{n} models"),
    };
    let status = status_value(&outcome);
    let nodes_explored = outcome.nodes_explored;
    reporter.info(
        "outcome",
        format!("{text} ({nodes_explored} nodes explored)"),
        json!({ "status": status, "nodes_explored": nodes_explored }),
    );

    let model_value = outcome
        .model
        .map(|h| {
            let unit = h.algebra().two_sided_unit();
            let (algebra, alpha) = h.into_parts();
            let loaded = LoadedAlgebra {
                algebra,
                alpha: Some(alpha),
                unit,
                metadata: serde_json::Map::new(),
            };
            if !reporter.json {
                println!("{}", format::to_string_pretty(&loaded));
            }
            loaded_value(&loaded)
        })
        .unwrap_or(Value::Null);

    Ok(json!({
        "status": status,
        "nodes_explored": nodes_explored,
        "model": model_value,
    }))
}

fn cmd_fixture(
    reporter: &mut Reporter,
    id: &str,
    out: Option<&Path>,
    degree_bound: usize,
) -> Result<Value> {
    let id: FixtureId = id.parse().map_err(|e: String| anyhow!(e))?;
    match load_fixture(id, &FixtureOptions { degree_bound }) {
        Fixture::Plain(l) => {
            reporter.pass("fixture", format!("{id} verified"));
            if let Some(path) = out {
                format::save(&l, path)?;
                reporter.info("saved", path.display().to_string(), Value::Null);
            }
            if !reporter.json {
                println!("{}", format::to_string_pretty(&l));
            }
            Ok(loaded_value(&l))
        }
        Fixture::DegreeTruncated(t) => {
            if out.is_some() {
                bail!("the degree-truncated fixture has no complete file form (its twisting map leaves the bound); use --degree-bound to inspect other sizes");
            }
            reporter.pass("fixture", format!("{id} verified at degree bound {}", t.bound()));
            let kernel_dim = t.alpha_kernel().dim();
            let hom = t.check_hom_associative_bounded();
            let assoc = t.check_associative_bounded();
            reporter.info(
                "summary",
                format!(
                    "dimension {}, twist kernel dimension {kernel_dim}, hom-associative on {} in-bound triples, associative: {}",
                    t.dim(),
                    hom.checked_tuples,
                    assoc.passed()
                ),
                json!({
                    "dim": t.dim(),
                    "bound": t.bound(),
                    "kernel_dim": kernel_dim,
                    "hom_associative_in_bounds": hom.passed(),
                    "associative": assoc.passed(),
                }),
            );
            Ok(json!({
                "dim": t.dim(),
                "bound": t.bound(),
                "kernel_dim": kernel_dim,
            }))
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match &cli.command {
        Command::Check {
            input,
            hom_associative,
            associative,
            commutative,
            units,
            unital_identities,
            weak_unit_identities,
            diagnostic,
            obstruction,
        } => {
            let mut reporter = Reporter::new("check", json);
            let input = resolve_input(input, cli.degree_bound, cli.seed)?;
            cmd_check(
                &mut reporter,
                &input,
                *hom_associative,
                *associative,
                *commutative,
                *units,
                *unital_identities,
                *weak_unit_identities,
                *diagnostic,
                *obstruction,
            )?;
            Ok(reporter.finish(Value::Null))
        }
        Command::Analyze { input } => {
            let mut reporter = Reporter::new("analyze", json);
            let input = resolve_input(input, cli.degree_bound, cli.seed)?;
            cmd_analyze(&mut reporter, &input)?;
            Ok(reporter.finish(Value::Null))
        }
        Command::Twist {
            input,
            mode,
            alpha,
            out,
        } => {
            let mut reporter = Reporter::new("twist", json);
            let input = resolve_input(input, cli.degree_bound, cli.seed)?;
            let result = cmd_twist(&mut reporter, &input, *mode, alpha.as_deref(), out.as_deref())?;
            Ok(reporter.finish(result))
        }
        Command::Detwist { input, out } => {
            let mut reporter = Reporter::new("detwist", json);
            let input = resolve_input(input, cli.degree_bound, cli.seed)?;
            let result = cmd_detwist(&mut reporter, &input, out.as_deref())?;
            Ok(reporter.finish(result))
        }
        Command::EnumerateTwists { input, candidates } => {
            let mut reporter = Reporter::new("enumerate-twists", json);
            let input = resolve_input(input, cli.degree_bound, cli.seed)?;
            let result = cmd_enumerate_twists(&mut reporter, &input, candidates, cli.budget)?;
            Ok(reporter.finish(result))
        }
        Command::Search { spec } => {
            let mut reporter = Reporter::new("search", json);
            let result = cmd_search(&mut reporter, spec, cli.budget)?;
            Ok(reporter.finish(result))
        }
        Command::Fixture { id, out } => {
            let mut reporter = Reporter::new("fixture", json);
            let result = cmd_fixture(&mut reporter, id, out.as_deref(), cli.degree_bound)?;
            Ok(reporter.finish(result))
        }
    }
}

fn main() -> ExitCode {
    // die quietly when the reader of our stdout goes away (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
