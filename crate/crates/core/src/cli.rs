//! The `lmconvex` command line.
//!
//! Every verb prints one JSON report on standard output and a short summary
//! on standard error. Exit status: 0 when every verdict is positive, 1 when a
//! check fails, 2 on usage, format or budget errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::constructions::{
    generate_from_subbase, preimage_structure, product_structure, quotient_structure,
    restricted_hull_identity, substructure, HullOperator, Subbase, DEFAULT_PRODUCT_BUDGET,
};
use crate::convexity::{
    check_classical, check_l_convexity, check_lm_fuzzy, check_m_fuzzifying, cut_lower_structure,
    cut_upper_structure, is_coarser, lower_levels, meet_structures, structure_from_lower_cuts,
    structure_from_upper_cuts, upper_levels, ClassicalConvexity, ConvexityCertificate, DomainKind,
    FuzzyFamily, StructureMap,
};
use crate::error::{Error, Result};
use crate::functors::{adjunction_check, cpf_transfer, iota, omega, FunctorContext};
use crate::fuzzy::{FuzzyDomain, FuzzySet, PointSet};
use crate::gallery::{emit, residuum, GalleryItem, UpperSetReading, ENTRIES};
use crate::io::{
    lattice_from_file, lattice_to_file, parse_json, read_json, witness_value, FuzzySetFile,
    LatticeFile, LatticeRef, Workspace,
};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::morphisms::{
    cpf_cut_equivalence, is_convex_to_convex, is_cpf, is_cpf_via_preimage, is_quotient_function,
    StructuredSpacePair, Verdict,
};
use crate::oracle;
use crate::suite::{check_names, run_checks, SuiteConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "lmconvex", version, about = "Check and build finite (L,M)-fuzzy convex structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Largest carrier the property suite enumerates.
    #[arg(long, global = true, default_value_t = 2)]
    pub max_points: usize,
    /// Comma-separated lattice names for the property suite.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,chain3,diamond")]
    pub lattices: Vec<String>,
    #[arg(long, global = true, default_value_t = crate::suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Size budget for products and exhaustive enumeration.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Cross-check against the brute-force oracles.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Use the literal final term `U(x)` in the upper-set example.
    #[arg(long = "literal-example-2-3", global = true)]
    pub literal_upper_sets: bool,
    /// Also write the structure a verb builds to this file, in the input format.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Extra lattice files to register under their file stems.
    #[arg(long = "lattice-file", global = true)]
    pub lattice_files: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a lattice (file or builtin name) and report its structure.
    CheckLattice {
        lattice: String,
        /// Elements to meet.
        #[arg(long, value_delimiter = ',')]
        meet: Vec<String>,
        /// Elements to join.
        #[arg(long, value_delimiter = ',')]
        join: Vec<String>,
    },
    /// Check the convexity axioms; with several files also compare them.
    CheckStructure {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Level cuts of a structure map (with reconstruction) or of a fuzzy set.
    Cuts { file: PathBuf },
    /// Forward and backward images of a fuzzy set along a map.
    Image { map: PathBuf, fuzzy_set: PathBuf },
    /// The structure generated by a subbase.
    Generate { subbase: PathBuf },
    /// The quotient structure along a surjection.
    Quotient { structure: PathBuf, map: PathBuf },
    /// The preimage structure along a surjection.
    Preimage { structure: PathBuf, map: PathBuf },
    /// The structure restricted to a subset of points.
    Substructure {
        structure: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<String>,
        /// Subsets whose hulls to report (crisp structures over M = 2).
        #[arg(long)]
        hull: Vec<String>,
    },
    /// The product structure of several factors.
    Product {
        #[arg(required = true)]
        factors: Vec<PathBuf>,
    },
    /// Whether a map is convexity-preserving, in every available form.
    CheckCpf { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Translate an M-fuzzifying structure to an (L,M)-fuzzy one.
    Omega {
        structure: PathBuf,
        /// The lattice L of the output.
        #[arg(long = "l", default_value = "chain3")]
        l: String,
    },
    /// Translate an (L,M)-fuzzy structure to an M-fuzzifying one.
    Iota { structure: PathBuf },
    /// Transposition check for a map X -> Y (fuzzy target) or CPF transfer (crisp target).
    AdjointCheck { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Worked examples.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Run the property suite.
    Theorems {
        /// Only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Random instances per sampled check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GalleryAction {
    List,
    Emit { name: String },
    /// `a -> b` in a distributive lattice.
    Residuum { lattice: String, a: String, b: String },
}

/// Verb name and the library operations it exposes.
pub const VERBS: &[(&str, &[&str])] = &[
    ("check-lattice", &["verify_lattice", "is_distributive", "meet_family", "join_family", "wedge_below", "op_wedge_below", "beta", "alpha", "check_beta_meet_hypothesis"]),
    ("check-structure", &["check_classical", "check_l_convexity", "check_m_fuzzifying", "check_lm_fuzzy", "meet_structures", "is_coarser"]),
    ("cuts", &["cut_lower", "cut_upper", "cut_strict", "decompose", "cut_lower_structure", "cut_upper_structure", "structure_from_lower_cuts", "structure_from_upper_cuts"]),
    ("image", &["forward_image", "backward_image"]),
    ("generate", &["generate_from_subbase"]),
    ("quotient", &["quotient_structure"]),
    ("preimage", &["preimage_structure"]),
    ("substructure", &["substructure", "hull", "restricted_hull_identity"]),
    ("product", &["product_structure"]),
    ("check-cpf", &["is_cpf", "is_cpf_via_preimage", "is_convex_to_convex", "is_quotient_function", "cpf_cut_equivalence"]),
    ("omega", &["omega"]),
    ("iota", &["iota"]),
    ("adjoint-check", &["cpf_transfer", "adjunction_check"]),
    ("gallery", &["residuum", "interval_degree_structure", "upper_set_structure", "fuzzy_convex_sublattice_family"]),
    ("theorems", &["run_suite"]),
];

/// Every operation the verb table must cover exactly once.
pub const OPERATIONS: &[&str] = &[
    "verify_lattice", "is_distributive", "meet_family", "join_family", "wedge_below",
    "op_wedge_below", "beta", "alpha", "check_beta_meet_hypothesis",
    "cut_lower", "cut_upper", "cut_strict", "decompose", "forward_image", "backward_image",
    "check_classical", "check_l_convexity", "check_m_fuzzifying", "check_lm_fuzzy",
    "cut_lower_structure", "cut_upper_structure", "meet_structures", "is_coarser",
    "structure_from_lower_cuts", "structure_from_upper_cuts",
    "preimage_structure", "quotient_structure", "substructure", "hull", "restricted_hull_identity",
    "generate_from_subbase", "product_structure",
    "is_cpf", "is_cpf_via_preimage", "is_convex_to_convex", "is_quotient_function", "cpf_cut_equivalence",
    "omega", "iota", "cpf_transfer", "adjunction_check",
    "residuum", "interval_degree_structure", "upper_set_structure", "fuzzy_convex_sublattice_family",
    "run_suite",
];

struct Outcome {
    ok: bool,
    inputs: Vec<String>,
    result: Value,
    summary: String,
}


/// Parses `args` (program name first), runs the verb, writes the report.
/// Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let verb = verb_name(&cli.command);
    match execute(&cli).and_then(|o| save(&cli.opts, &o).map(|_| o)) {
        Ok(o) => {
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "verb": verb,
                "inputs": o.inputs,
                "verdict": if o.ok { "pass" } else { "fail" },
                "result": o.result,
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json values serialize"));
            let _ = writeln!(err, "{verb}: {}{}", if o.ok { "pass" } else { "FAIL" }, o.summary);
            i32::from(!o.ok)
        }
        Err(e) => {
            let mut error = json!({ "message": e.to_string() });
            if let Error::Budget { what, required, budget } = &e {
                error["what"] = json!(what);
                error["required"] = json!(required.to_string());
                error["budget"] = json!(budget.to_string());
            }
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "verb": verb,
                "verdict": "error",
                "error": error,
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json values serialize"));
            let _ = writeln!(err, "{verb}: error: {e}");
            2
        }
    }
}

fn save(opts: &GlobalOpts, o: &Outcome) -> Result<()> {
    let Some(path) = &opts.output else { return Ok(()) };
    let Some(structure) = o.result.get("structure") else {
        return Err(Error::Precondition("this verb builds no structure to write".into()));
    };
    let text = serde_json::to_string_pretty(structure).expect("json values serialize");
    std::fs::write(path, text + "\n").map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::CheckLattice { .. } => "check-lattice",
        Command::CheckStructure { .. } => "check-structure",
        Command::Cuts { .. } => "cuts",
        Command::Image { .. } => "image",
        Command::Generate { .. } => "generate",
        Command::Quotient { .. } => "quotient",
        Command::Preimage { .. } => "preimage",
        Command::Substructure { .. } => "substructure",
        Command::Product { .. } => "product",
        Command::CheckCpf { .. } => "check-cpf",
        Command::Omega { .. } => "omega",
        Command::Iota { .. } => "iota",
        Command::AdjointCheck { .. } => "adjoint-check",
        Command::Gallery { .. } => "gallery",
        Command::Theorems { .. } => "theorems",
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    let mut ws = Workspace::new();
    for path in &opts.lattice_files {
        ws.load_lattice(path)?;
    }
    match &cli.command {
        Command::CheckLattice { lattice, meet, join } => check_lattice(&mut ws, opts, lattice, meet, join),
        Command::CheckStructure { files } => check_structures(&mut ws, opts, files),
        Command::Cuts { file } => cuts(&mut ws, file),
        Command::Image { map, fuzzy_set } => image(&mut ws, map, fuzzy_set),
        Command::Generate { subbase } => {
            let phi = ws.load_structure(subbase)?;
            let generated = generate_from_subbase(&Subbase(phi.clone()));
            let mut result = json!({ "structure": structure_json(&ws, &generated) });
            let mut ok = check_lm_fuzzy(&generated).is_valid();
            if opts.oracle {
                let meet = oracle::definitional_meet(&phi, opts.budget.unwrap_or(oracle::DEFINITIONAL_MEET_CAP))?;
                ok &= meet == generated;
                result["oracle_agrees"] = json!(meet == generated);
            }
            Ok(built(vec![path_str(subbase)], ok, result, &generated))
        }
        Command::Quotient { structure, map } => {
            let c = ws.load_structure(structure)?;
            let f = ws.load_map(map)?;
            let q = quotient_structure(&c, &f)?;
            let pair = StructuredSpacePair::new(c, q.clone(), f)?;
            let cpf = is_cpf(&pair);
            let ok = check_lm_fuzzy(&q).is_valid() && cpf.holds;
            let result = json!({
                "structure": structure_json(&ws, &q),
                "map_is_cpf": verdict_json(pair.target().domain(), &cpf),
            });
            Ok(built(vec![path_str(structure), path_str(map)], ok, result, &q))
        }
        Command::Preimage { structure, map } => {
            let d = ws.load_structure(structure)?;
            let f = ws.load_map(map)?;
            let p = preimage_structure(&d, &f)?;
            let mut ok = check_lm_fuzzy(&p).is_valid();
            let mut result = json!({ "structure": structure_json(&ws, &p) });
            if opts.oracle {
                let agree = oracle::preimage_by_enumeration(&d, &f)? == p;
                ok &= agree;
                result["oracle_agrees"] = json!(agree);
            }
            Ok(built(vec![path_str(structure), path_str(map)], ok, result, &p))
        }
        Command::Substructure { structure, points, hull } => sub(&mut ws, opts, structure, points, hull),
        Command::Product { factors } => {
            let structures = factors.iter().map(|p| ws.load_structure(p)).collect::<Result<Vec<_>>>()?;
            let p = product_structure(&structures, opts.budget.unwrap_or(DEFAULT_PRODUCT_BUDGET))?;
            let ok = check_lm_fuzzy(&p.structure).is_valid();
            let result = json!({
                "carrier": p.carrier.points(),
                "projections": p.projections.iter().map(crate::io::map_to_file).collect::<Vec<_>>(),
                "structure": structure_json(&ws, &p.structure),
            });
            Ok(built(factors.iter().map(|p| path_str(p)).collect(), ok, result, &p.structure))
        }
        Command::CheckCpf { source, target, map } => check_cpf(&mut ws, source, target, map),
        Command::Omega { structure, l } => {
            let s = ws.load_structure(structure)?;
            let l = lattice_arg(&mut ws, l)?;
            let ctx = FunctorContext::new(l, s.m().clone())?;
            let w = omega(&ctx, &s)?;
            let ok = check_lm_fuzzy(&w).is_valid();
            Ok(built(vec![path_str(structure)], ok, json!({ "structure": structure_json(&ws, &w) }), &w))
        }
        Command::Iota { structure } => {
            let c = ws.load_structure(structure)?;
            let ctx = FunctorContext::new(c.lattice().clone(), c.m().clone())?;
            let i = iota(&ctx, &c)?;
            let ok = check_lm_fuzzy(&i).is_valid();
            Ok(built(vec![path_str(structure)], ok, json!({ "structure": structure_json(&ws, &i) }), &i))
        }
        Command::AdjointCheck { source, target, map } => adjoint(&mut ws, source, target, map),
        Command::Gallery { action } => gallery(&mut ws, opts, action),
        Command::Theorems { only, samples } => theorems(opts, only, *samples),
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn built(inputs: Vec<String>, ok: bool, result: Value, s: &StructureMap) -> Outcome {
    Outcome {
        ok,
        inputs,
        result,
        summary: format!(" ({} sets with non-bottom degree)", s.support().len()),
    }
}

/// A path to a lattice file, else a registered or builtin name.
fn lattice_arg(ws: &mut Workspace, arg: &str) -> Result<Arc<FiniteLattice>> {
    let path = Path::new(arg);
    if path.is_file() {
        return ws.load_lattice(path);
    }
    ws.resolve_lattice(&LatticeRef::Name(arg.to_string()))
}

fn structure_json(ws: &Workspace, s: &StructureMap) -> Value {
    serde_json::to_value(ws.structure_to_file(s)).expect("structure files serialize")
}

fn set_json(d: &FuzzyDomain, a: &FuzzySet) -> Value {
    match a.as_crisp(d.lattice()) {
        Some(s) if d.lattice().len() == 2 => json!(d.carrier().render(s)),
        _ => json!(d.render(a).into_iter().collect::<std::collections::BTreeMap<_, _>>()),
    }
}

fn family_json(f: &FuzzyFamily) -> Value {
    Value::Array(f.iter().map(|a| set_json(f.domain(), &a)).collect())
}

fn certificate_json(d: &FuzzyDomain, c: &ConvexityCertificate) -> Value {
    json!({
        "valid": c.is_valid(),
        "violations": c.violations.iter().map(|v| json!({
            "axiom": v.axiom.to_string(),
            "witness": v.witness.iter().map(|w| witness_value(d, w)).collect::<Vec<_>>(),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

fn verdict_json(d: &FuzzyDomain, v: &Verdict) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|w| witness_value(d, w)),
    })
}

// ---------------------------------------------------------------------------

fn check_lattice(ws: &mut Workspace, opts: &GlobalOpts, arg: &str, meet: &[String], join: &[String]) -> Result<Outcome> {
    let path = Path::new(arg);
    let built = if path.is_file() {
        let file: LatticeFile = read_json(path)?;
        lattice_from_file(&file)
    } else if let Some(lat) = ws.lattice(arg) {
        Ok((**lat).clone())
    } else {
        Ok(FiniteLattice::builtin(arg)?)
    };
    let lat = match built {
        Ok(lat) => lat,
        Err(Error::Lattice(e @ (LatticeError::Cycle(..)
        | LatticeError::NoJoin(..)
        | LatticeError::NoMeet(..)
        | LatticeError::NotReflexive(..)
        | LatticeError::NotTransitive(..)))) => {
            return Ok(Outcome {
                ok: false,
                inputs: vec![arg.to_string()],
                result: json!({ "lattice": false, "reason": e.to_string() }),
                summary: format!(" ({e})"),
            });
        }
        Err(e) => return Err(e),
    };
    let name = |e| lat.name(e).to_string();
    let names = |f: crate::lattice::ElementFamily| f.iter().map(name).collect::<Vec<_>>();
    let mut result = json!({
        "lattice": true,
        "elements": lat.names(),
        "covers": lattice_to_file(&lat).covers,
        "bottom": name(lat.bottom()),
        "top": name(lat.top()),
        "chain": lat.is_chain(),
        "distributive": lat.is_distributive(),
        "distributivity_witness": lat.distributivity_witness().map(|(a, b, c)| [name(a), name(b), name(c)]),
        "beta_meet_hypothesis": lat.check_beta_meet_hypothesis(),
        "beta_meet_witness": lat.beta_meet_witness().map(|(a, b)| [name(a), name(b)]),
        "beta": lat.elements().map(|b| (name(b), names(lat.beta(b)))).collect::<std::collections::BTreeMap<_, _>>(),
        "alpha": lat.elements().map(|a| (name(a), names(lat.alpha(a)))).collect::<std::collections::BTreeMap<_, _>>(),
    });
    if !meet.is_empty() {
        result["meet"] = json!(name(lat.meet_named(meet)?));
    }
    if !join.is_empty() {
        result["join"] = json!(name(lat.join_named(join)?));
    }
    let mut ok = true;
    if opts.oracle {
        let mut agree = true;
        for a in lat.elements() {
            agree &= oracle::beta(&lat, a)? == lat.beta(a) && oracle::alpha(&lat, a)? == lat.alpha(a);
        }
        result["oracle_agrees"] = json!(agree);
        ok = agree;
    }
    let summary = format!(
        " ({} elements, {}distributive)",
        lat.len(),
        if lat.is_distributive() { "" } else { "not " }
    );
    Ok(Outcome { ok, inputs: vec![arg.to_string()], result, summary })
}

fn certify(s: &StructureMap) -> Result<ConvexityCertificate> {
    match s.kind() {
        DomainKind::Crisp => check_m_fuzzifying(s),
        DomainKind::Fuzzy => Ok(check_lm_fuzzy(s)),
    }
}

fn check_structures(ws: &mut Workspace, opts: &GlobalOpts, files: &[PathBuf]) -> Result<Outcome> {
    let structures = files.iter().map(|p| ws.load_structure(p)).collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    let mut reports = Vec::new();
    let mut summary = String::new();
    for (path, s) in files.iter().zip(&structures) {
        let cert = certify(s)?;
        ok &= cert.is_valid();
        if let Some(v) = cert.first() {
            if summary.is_empty() {
                summary = format!(" ({} violated in {})", v.axiom, path.display());
            }
        }
        let mut r = json!({
            "file": path_str(path),
            "kind": s.kind().to_string(),
            "certificate": certificate_json(s.domain(), &cert),
        });
        if opts.oracle {
            let agree = oracle::check_lm_fuzzy_by_subfamilies(s) == cert.is_valid();
            ok &= agree;
            r["oracle_agrees"] = json!(agree);
        }
        if s.m().len() == 2 {
            // over M = 2 a structure is the family of sets with degree top
            let tops: Vec<u64> = s.support().into_iter().map(|(c, _)| c).collect();
            let family = match s.kind() {
                DomainKind::Crisp => {
                    let sets: Vec<PointSet> = tops.iter().map(|&c| PointSet(c)).collect();
                    certificate_json(s.domain(), &check_classical(s.carrier(), &sets))
                }
                DomainKind::Fuzzy => certificate_json(
                    s.domain(),
                    &check_l_convexity(&FuzzyFamily::from_codes(s.domain().clone(), tops)),
                ),
            };
            r["as_family"] = family;
        }
        reports.push(r);
    }
    let mut result = json!({ "structures": reports });
    if structures.len() > 1 && structures.iter().all(|s| s.same_shape(&structures[0])) {
        let meet = meet_structures(&structures)?;
        let mut coarser = Vec::new();
        for (i, a) in structures.iter().enumerate() {
            for (j, b) in structures.iter().enumerate() {
                if i != j && is_coarser(a, b)? {
                    coarser.push([path_str(&files[i]), path_str(&files[j])]);
                }
            }
        }
        result["meet"] = structure_json(ws, &meet);
        result["meet_valid"] = json!(certify(&meet)?.is_valid());
        result["coarser_than"] = json!(coarser);
    }
    Ok(Outcome { ok, inputs: files.iter().map(|p| path_str(p)).collect(), result, summary })
}

fn cuts(ws: &mut Workspace, file: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Format(format!("{}: {e}", file.display())))?;
    let source = file.display().to_string();
    let value: Value = parse_json(&text, &source)?;
    if value.get("values").is_some() {
        let parsed: FuzzySetFile = parse_json(&text, &source)?;
        let (d, a) = ws.fuzzy_set_from_file(&parsed)?;
        let l = d.lattice();
        let x = d.carrier();
        let levels: Vec<Value> = l
            .elements()
            .map(|c| {
                json!({
                    "level": l.name(c),
                    "lower": x.render(a.cut_lower(l, c)),
                    "upper": x.render(a.cut_upper(l, c)),
                    "strict": x.render(a.cut_strict(l, c)),
                })
            })
            .collect();
        let holds = a.decompose(l).holds();
        return Ok(Outcome {
            ok: holds,
            inputs: vec![source],
            result: json!({ "levels": levels, "decomposition_holds": holds }),
            summary: String::new(),
        });
    }
    let s = ws.load_structure(file)?;
    let m = s.m().clone();
    let lower: std::collections::BTreeMap<_, _> = lower_levels(&m)
        .into_iter()
        .map(|a| cut_lower_structure(&s, a).map(|f| (a, f)))
        .collect::<Result<_>>()?;
    let upper: std::collections::BTreeMap<_, _> = upper_levels(&m)
        .into_iter()
        .map(|a| cut_upper_structure(&s, a).map(|f| (a, f)))
        .collect::<Result<_>>()?;
    let valid = certify(&s)?.is_valid();
    let rebuild = |r: Result<StructureMap>| -> Result<Value> {
        match r {
            Ok(t) => Ok(json!(t == s)),
            Err(Error::Precondition(why)) => Ok(json!(why)),
            Err(e) => Err(e),
        }
    };
    let from_lower = rebuild(structure_from_lower_cuts(s.kind(), s.domain().clone(), m.clone(), &lower))?;
    let from_upper = rebuild(structure_from_upper_cuts(s.kind(), s.domain().clone(), m.clone(), &upper))?;
    let ok = !valid || (from_lower == json!(true) && from_upper == json!(true));
    let level_json = |cuts: &std::collections::BTreeMap<_, FuzzyFamily>| -> Vec<Value> {
        cuts.iter()
            .map(|(&a, f)| json!({ "level": m.name(a), "sets": family_json(f) }))
            .collect()
    };
    Ok(Outcome {
        ok,
        inputs: vec![source],
        result: json!({
            "valid": valid,
            "lower": level_json(&lower),
            "upper": level_json(&upper),
            "rebuilt_from_lower": from_lower,
            "rebuilt_from_upper": from_upper,
        }),
        summary: String::new(),
    })
}

fn image(ws: &mut Workspace, map: &Path, set: &Path) -> Result<Outcome> {
    let f = ws.load_map(map)?;
    let (d, a) = ws.load_fuzzy_set(set)?;
    let l = d.lattice().clone();
    let mut result = json!({});
    let mut any = false;
    if **d.carrier() == **f.domain() {
        let target = FuzzyDomain::new(f.codomain().clone(), l.clone())?;
        result["forward"] = set_json(&target, &f.forward_image(&a, &l));
        any = true;
    }
    if **d.carrier() == **f.codomain() {
        let source = FuzzyDomain::new(f.domain().clone(), l.clone())?;
        result["backward"] = set_json(&source, &f.backward_image(&a));
        any = true;
    }
    if !any {
        return Err(Error::Mismatch("the fuzzy set lives on neither end of the map".into()));
    }
    Ok(Outcome { ok: true, inputs: vec![path_str(map), path_str(set)], result, summary: String::new() })
}

fn sub(ws: &mut Workspace, opts: &GlobalOpts, structure: &Path, points: &[String], hulls: &[String]) -> Result<Outcome> {
    let c = ws.load_structure(structure)?;
    let y = c.carrier().subset(points)?;
    let restricted = substructure(&c, y)?;
    let mut ok = check_lm_fuzzy(&restricted).is_valid();
    let mut result = json!({ "structure": structure_json(ws, &restricted) });
    if opts.oracle {
        let agree = oracle::substructure_by_enumeration(&c, y)? == restricted;
        ok &= agree;
        result["oracle_agrees"] = json!(agree);
    }
    if c.kind() == DomainKind::Crisp && c.m().len() == 2 {
        let members: Vec<PointSet> = c.support().into_iter().map(|(code, _)| PointSet(code)).collect();
        if check_classical(c.carrier(), &members).is_valid() {
            let co = HullOperator::new(ClassicalConvexity::new(c.carrier().clone(), &members)?);
            let mut identity = true;
            for &a in &members {
                identity &= restricted_hull_identity(&co, y, a)?;
            }
            ok &= identity;
            result["restricted_hull_identity"] = json!(identity);
            let mut hull_json = serde_json::Map::new();
            for h in hulls {
                let names: Vec<&str> = h.split(',').filter(|s| !s.is_empty()).collect();
                let a = c.carrier().subset(&names)?;
                hull_json.insert(h.clone(), json!(c.carrier().render(co.hull(a))));
            }
            result["hulls"] = Value::Object(hull_json);
        }
    } else if !hulls.is_empty() {
        return Err(Error::Precondition("hulls need a crisp structure over M = 2".into()));
    }
    Ok(built(vec![path_str(structure)], ok, result, &restricted))
}

fn check_cpf(ws: &mut Workspace, source: &Path, target: &Path, map: &Path) -> Result<Outcome> {
    let c = ws.load_structure(source)?;
    let d = ws.load_structure(target)?;
    let f = ws.load_map(map)?;
    let pair = StructuredSpacePair::new(c, d, f.clone())?;
    let td = pair.target().domain();
    let cpf = is_cpf(&pair);
    let cuts = cpf_cut_equivalence(&pair)?;
    let m = pair.source().m();
    let mut result = json!({
        "cpf": verdict_json(td, &cpf),
        "convex_to_convex": verdict_json(pair.source().domain(), &is_convex_to_convex(&pair)),
        "cut_levels": {
            "lower": cuts.lower.iter().map(|&(a, ok)| json!([m.name(a), ok])).collect::<Vec<_>>(),
            "upper": cuts.upper.iter().map(|&(a, ok)| json!([m.name(a), ok])).collect::<Vec<_>>(),
            "consistent": cuts.consistent(),
        },
    });
    if f.is_surjective() {
        result["cpf_via_preimage"] = verdict_json(pair.source().domain(), &is_cpf_via_preimage(&pair)?);
        result["quotient_function"] = verdict_json(td, &is_quotient_function(&pair));
    }
    let summary = match &cpf.witness {
        Some(w) => format!(" (witness {})", serde_json::to_string(&witness_value(td, w)).expect("serializes")),
        None => String::new(),
    };
    Ok(Outcome {
        ok: cpf.holds && cuts.consistent(),
        inputs: vec![path_str(source), path_str(target), path_str(map)],
        result,
        summary,
    })
}

fn adjoint(ws: &mut Workspace, source: &Path, target: &Path, map: &Path) -> Result<Outcome> {
    let s = ws.load_structure(source)?;
    let t = ws.load_structure(target)?;
    let f = ws.load_map(map)?;
    let inputs = vec![path_str(source), path_str(target), path_str(map)];
    match t.kind() {
        DomainKind::Fuzzy => {
            let ctx = FunctorContext::new(t.lattice().clone(), t.m().clone())?;
            let r = adjunction_check(&ctx, &s, &t, &f)?;
            Ok(Outcome {
                ok: r.implication_holds(),
                inputs,
                result: json!({
                    "cpf_into_iota": r.left,
                    "cpf_out_of_omega": r.right,
                    "implication_holds": r.implication_holds(),
                    "converse_holds": r.converse_holds(),
                }),
                summary: String::new(),
            })
        }
        DomainKind::Crisp => {
            let l = Arc::new(FiniteLattice::chain(3)?);
            let ctx = FunctorContext::new(l, t.m().clone())?;
            let r = cpf_transfer(&ctx, &f, &s, &t)?;
            Ok(Outcome {
                ok: r.agree(),
                inputs,
                result: json!({
                    "cpf_fuzzifying": r.fuzzifying.holds,
                    "cpf_after_omega": r.omega.holds,
                    "agree": r.agree(),
                }),
                summary: String::new(),
            })
        }
    }
}

fn gallery(ws: &mut Workspace, opts: &GlobalOpts, action: &GalleryAction) -> Result<Outcome> {
    match action {
        GalleryAction::List => Ok(Outcome {
            ok: true,
            inputs: Vec::new(),
            result: json!(ENTRIES.iter().map(|&(n, d)| json!({ "name": n, "description": d })).collect::<Vec<_>>()),
            summary: format!(" ({} entries)", ENTRIES.len()),
        }),
        GalleryAction::Emit { name } => {
            let reading = if opts.literal_upper_sets { UpperSetReading::Literal } else { UpperSetReading::Corrected };
            let item = emit(name, reading)?;
            let cert = item.check();
            let (d, output) = match &item {
                GalleryItem::Structure(s) => (s.domain().clone(), json!({ "structure": structure_json(ws, s) })),
                GalleryItem::Family(f) => (f.domain().clone(), json!({ "family": family_json(f) })),
            };
            let mut result = output;
            result["certificate"] = certificate_json(&d, &cert);
            Ok(Outcome { ok: cert.is_valid(), inputs: vec![name.clone()], result, summary: String::new() })
        }
        GalleryAction::Residuum { lattice, a, b } => {
            let lat = lattice_arg(ws, lattice)?;
            let r = residuum(&lat, lat.elem(a)?, lat.elem(b)?)?;
            Ok(Outcome {
                ok: true,
                inputs: vec![lattice.clone()],
                result: json!({ "a": a, "b": b, "residuum": lat.name(r) }),
                summary: format!(" ({a} -> {b} = {})", lat.name(r)),
            })
        }
    }
}

fn theorems(opts: &GlobalOpts, only: &[String], samples: usize) -> Result<Outcome> {
    for name in only {
        if !check_names().any(|(n, _)| n == name) {
            return Err(Error::Format(format!("unknown check `{name}`")));
        }
    }
    let mut cfg = SuiteConfig {
        max_points: opts.max_points,
        lattices: opts.lattices.clone(),
        seed: opts.seed,
        oracle: opts.oracle,
        samples,
        ..SuiteConfig::default()
    };
    if let Some(b) = opts.budget {
        cfg.exhaustive_cap = b;
    }
    let report = run_checks(&cfg, |n| only.is_empty() || only.iter().any(|o| o == n))?;
    let descriptions: std::collections::BTreeMap<_, _> = check_names().collect();
    let checks: Vec<Value> = report
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "description": descriptions[o.name],
                "passed": o.passed(),
                "cases": o.cases,
                "failures": o.failures,
                "skipped": o.skipped,
                "witness": o.witness,
                "notes": o.notes,
            })
        })
        .collect();
    let failed: Vec<&str> = report.outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
    let cases: u64 = report.outcomes.iter().map(|o| o.cases).sum();
    let summary = if failed.is_empty() {
        format!(" ({} checks, {cases} cases)", report.outcomes.len())
    } else {
        format!(" (failed: {})", failed.join(", "))
    };
    Ok(Outcome {
        ok: report.passed(),
        inputs: Vec::new(),
        result: json!({
            "config": {
                "max_points": cfg.max_points,
                "lattices": cfg.lattices,
                "seed": cfg.seed,
                "oracle": cfg.oracle,
                "samples": cfg.samples,
                "exhaustive_cap": cfg.exhaustive_cap.to_string(),
            },
            "checks": checks,
        }),
        summary,
    })
}
