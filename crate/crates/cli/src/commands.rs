//! Command drivers: each turns resolved declarations into reports and details.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rclkit_core::adjunction::validate_adjunction;
use rclkit_core::quotient::{build_quotient, induce_adjunction, induce_functor, validate_quotient, well_definedness_audit};
use rclkit_core::recollement::{
    check_recollement, closure_hypotheses, lift_subcategory_pair, normalize_recollement, quotient_by_left_subcategory,
    quotient_recollement, restrict_to_subcategory, R3Semantics, Recollement, RecollementCertificate,
};
use rclkit_core::triangulated::{
    check_mutation_pair, triangulated_quotient_recollement, validate_exact, validate_triangulated,
    verify_quotient_triangulation,
};
use rclkit_core::{validate_category, validate_functor, FinLinCategory, LinearFunctor, Subcategory, ValidationReport};
use serde_json::{json, Map, Value};

use crate::ast::Workspace;
use crate::canon::digest;
use crate::certificate::Certificate;
use crate::error::{core_exit_code, CliError};
use crate::parser::parse;
use crate::resolve::{resolve, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    CheckRecollement,
    Quotient,
    Induce,
    Restrict,
    Lift,
    LeftQuotient,
    QuotientRecollement,
    MutationCheck,
    TriangulateQuotient,
    TriRecollement,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::CheckRecollement => "check-recollement",
            Command::Quotient => "quotient",
            Command::Induce => "induce",
            Command::Restrict => "restrict",
            Command::Lift => "lift",
            Command::LeftQuotient => "left-quotient",
            Command::QuotientRecollement => "quotient-recollement",
            Command::MutationCheck => "mutation-check",
            Command::TriangulateQuotient => "triangulate-quotient",
            Command::TriRecollement => "tri-recollement",
        }
    }
}

/// Command-line options shared by all commands. Subcategories are
/// comma-separated generator names.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Options {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub xp: Option<String>,
    #[arg(long)]
    pub xpp: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, value_parser = ["strict", "iso"])]
    pub semantics: Option<String>,
    #[arg(long)]
    pub category: Option<String>,
    #[arg(long)]
    pub functor: Option<String>,
    #[arg(long)]
    pub adjunction: Option<String>,
    #[arg(long)]
    pub recollement: Option<String>,
    #[arg(long)]
    pub mutation: Option<String>,
    #[arg(long)]
    pub trirecollement: Option<String>,
}

impl Options {
    fn semantics(&self) -> R3Semantics {
        match self.semantics.as_deref() {
            Some("iso") => R3Semantics::IsoClosed,
            _ => R3Semantics::Strict,
        }
    }

    fn to_map(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let fields = [
            ("x", &self.x),
            ("xp", &self.xp),
            ("xpp", &self.xpp),
            ("d", &self.d),
            ("semantics", &self.semantics),
            ("category", &self.category),
            ("functor", &self.functor),
            ("adjunction", &self.adjunction),
            ("recollement", &self.recollement),
            ("mutation", &self.mutation),
            ("trirecollement", &self.trirecollement),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                m.insert(k.into(), Value::String(v.clone()));
            }
        }
        m
    }
}

#[derive(Default)]
struct Outcome {
    reports: Vec<ValidationReport>,
    details: Map<String, Value>,
    unchecked: Vec<String>,
    semantics: Option<R3Semantics>,
}

impl Outcome {
    fn detail(&mut self, k: &str, v: impl Into<Value>) {
        self.details.insert(k.into(), v.into());
    }

    fn recollement(&mut self, cert: RecollementCertificate) {
        self.semantics = Some(cert.r3_semantics);
        self.detail("recollement", cert.subject.clone());
        self.detail("image_i_lower", cert.image_i_lower);
        self.detail("kernel_j_upper", cert.kernel_j_upper);
        self.detail("normalized", cert.normalized);
        self.detail("notes", cert.notes);
        self.reports.extend([cert.r1, cert.r2, cert.r3]);
    }
}

fn pick<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, flag: &str, chosen: &Option<String>) -> Result<(&'a str, &'a T), CliError> {
    match chosen {
        Some(n) => map
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError::Input(format!("no {kind} named `{n}`"))),
        None if map.len() == 1 => Ok(map.iter().next().map(|(k, v)| (k.as_str(), v)).expect("one entry")),
        None if map.is_empty() => Err(CliError::Input(format!("the workspace declares no {kind}"))),
        None => Err(CliError::Input(format!(
            "the workspace declares {} {kind} declarations; choose one with --{flag}",
            map.len()
        ))),
    }
}

fn subcategory(c: &Arc<FinLinCategory>, flag: &str, spec: &Option<String>) -> Result<Subcategory, CliError> {
    let spec = spec.as_ref().ok_or_else(|| CliError::Input(format!("missing --{flag}")))?;
    let names: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Subcategory::from_names(c.clone(), &names).map_err(|e| CliError::Input(format!("--{flag}: {e}")))
}

fn object_map(f: &LinearFunctor) -> Value {
    let m: Map<String, Value> = (0..f.source.num_generators())
        .map(|g| (f.source.generator_name(g).to_string(), Value::String(f.target.display_object(&f.object_map[g]))))
        .collect();
    Value::Object(m)
}

fn surviving(c: &FinLinCategory) -> Vec<String> {
    (0..c.num_generators()).filter(|&g| !c.is_null(g)).map(|g| c.generator_name(g).to_string()).collect()
}

fn validate(res: &Resolved, out: &mut Outcome) {
    for c in res.categories.values() {
        out.reports.push(validate_category(c));
    }
    for f in res.functors.values() {
        out.reports.push(validate_functor(f));
    }
    for t in res.transformations.values() {
        out.reports.push(t.validate());
    }
    for a in res.adjunctions.values() {
        let mut r = ValidationReport::new(format!("adjunction {}", a.name));
        r.merge("triangle identities", validate_adjunction(a));
        out.reports.push(r);
    }
    for t in res.triangulated.values() {
        out.reports.push(validate_triangulated(t));
    }
    for e in res.exact.values() {
        out.reports.push(validate_exact(e));
    }
    let counts: Map<String, Value> = [
        ("categories", res.categories.len()),
        ("subcategories", res.subcategories.len()),
        ("functors", res.functors.len()),
        ("transformations", res.transformations.len()),
        ("adjunctions", res.adjunctions.len()),
        ("recollements", res.recollements.len()),
        ("triangulated", res.triangulated.len()),
        ("exact", res.exact.len()),
        ("mutations", res.mutations.len()),
        ("trirecollements", res.trirecollements.len()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), json!(v)))
    .collect();
    out.detail("declarations", counts);
}

/// Pushes the closure hypotheses as a report and says whether they hold.
fn closure_gate(r: &Recollement, x: &Subcategory, out: &mut Outcome) -> Result<bool, CliError> {
    let n = normalize_recollement(r)?;
    let report = closure_hypotheses(&n, x);
    let ok = report.passed();
    out.reports.push(report);
    Ok(ok)
}

fn dispatch(cmd: Command, ws: &Workspace, res: &Resolved, o: &Options) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let sem = o.semantics();
    match cmd {
        Command::Validate => validate(res, &mut out),
        Command::CheckRecollement => {
            let (_, r) = pick(&res.recollements, "recollement", "recollement", &o.recollement)?;
            out.recollement(check_recollement(r, sem));
        }
        Command::Quotient => {
            let (_, c) = pick(&res.categories, "category", "category", &o.category)?;
            let x = subcategory(c, "x", &o.x)?;
            let q = build_quotient(&x)?;
            out.reports.push(validate_quotient(&q));
            out.detail("quotient", q.presentation.name());
            out.detail("surviving_generators", surviving(&q.presentation));
            let p = &q.presentation;
            let dims: Map<String, Value> = q
                .surviving_generators()
                .iter()
                .flat_map(|&a| q.surviving_generators().into_iter().map(move |b| (a, b)))
                .map(|(a, b)| (format!("{} -> {}", p.generator_name(a), p.generator_name(b)), json!(p.hom_dim(a, b))))
                .collect();
            out.detail("hom_dimensions", dims);
        }
        Command::Induce => {
            if o.functor.is_some() || res.adjunctions.is_empty() {
                let (_, f) = pick(&res.functors, "functor", "functor", &o.functor)?;
                let x = subcategory(&f.source, "x", &o.x)?;
                let xp = subcategory(&f.target, "xp", &o.xp)?;
                let ft = induce_functor(f, &x, &xp)?;
                out.reports.push(validate_functor(&ft));
                out.detail("functor", ft.name.clone());
                out.detail("object_map", object_map(&ft));
            } else {
                let (_, a) = pick(&res.adjunctions, "adjunction", "adjunction", &o.adjunction)?;
                let x = subcategory(a.lower(), "x", &o.x)?;
                let xp = subcategory(a.upper(), "xp", &o.xp)?;
                out.reports.push(well_definedness_audit(a, &x, &xp)?);
                let induced = induce_adjunction(a, &x, &xp)?;
                let mut r = ValidationReport::new(format!("induced adjunction {}", induced.name));
                r.merge("triangle identities", validate_adjunction(&induced));
                out.reports.push(r);
                out.detail("left", object_map(&induced.left));
                out.detail("right", object_map(&induced.right));
            }
        }
        Command::Restrict => {
            let (_, r) = pick(&res.recollements, "recollement", "recollement", &o.recollement)?;
            let x = subcategory(&r.middle, "x", &o.x)?;
            if closure_gate(r, &x, &mut out)? {
                out.recollement(check_recollement(&restrict_to_subcategory(r, &x)?, sem));
            }
        }
        Command::Lift => {
            let (_, r) = pick(&res.recollements, "recollement", "recollement", &o.recollement)?;
            let xp = subcategory(&r.left, "xp", &o.xp)?;
            let xpp = subcategory(&r.right, "xpp", &o.xpp)?;
            let (x, restricted) = lift_subcategory_pair(r, &xp, &xpp)?;
            out.detail("x", x.names());
            out.recollement(check_recollement(&restricted, sem));
        }
        Command::LeftQuotient => {
            let (_, r) = pick(&res.recollements, "recollement", "recollement", &o.recollement)?;
            let xp = subcategory(&r.left, "xp", &o.xp)?;
            let qr = quotient_by_left_subcategory(r, &xp, sem)?;
            out.detail("predicate", qr.predicate);
            out.detail("quotients", qr.quotients.iter().map(|q| q.presentation.name().to_string()).collect::<Vec<_>>());
            out.recollement(qr.certificate);
        }
        Command::QuotientRecollement => {
            let (_, r) = pick(&res.recollements, "recollement", "recollement", &o.recollement)?;
            let x = subcategory(&r.middle, "x", &o.x)?;
            if closure_gate(r, &x, &mut out)? {
                let qr = quotient_recollement(r, &x, sem)?;
                out.detail("predicate", qr.predicate);
                out.detail("quotients", qr.quotients.iter().map(|q| q.presentation.name().to_string()).collect::<Vec<_>>());
                out.recollement(qr.certificate);
            }
        }
        Command::MutationCheck => {
            let (_, m) = pick(&res.mutations, "mutation", "mutation", &o.mutation)?;
            out.reports.push(check_mutation_pair(m));
        }
        Command::TriangulateQuotient => {
            let (_, m) = pick(&res.mutations, "mutation", "mutation", &o.mutation)?;
            let (qt, report) = verify_quotient_triangulation(m);
            out.reports.push(report);
            if let Some(qt) = qt {
                out.detail("quotient", qt.presentation().name());
                out.detail("surviving_generators", surviving(qt.presentation()));
                out.detail("sigma", object_map(&qt.sigma));
            }
            out.unchecked = vec!["TR2".into(), "TR4".into()];
        }
        Command::TriRecollement => {
            let (name, tr) = pick(&res.trirecollements, "trirecollement", "trirecollement", &o.trirecollement)?;
            let m = &res.mutations[&ws.decls.trirecollements[name].mutation];
            let d = match &o.d {
                Some(_) => subcategory(&tr.middle.base, "d", &o.d)?,
                None => m.d.clone(),
            };
            let t = triangulated_quotient_recollement(tr, &d, m, sem)?;
            out.detail("d", d.names());
            out.detail("d_left", t.d_left.names());
            out.detail("predicate", t.additive.predicate);
            out.detail("quotients", t.triangulations.iter().map(|q| q.presentation().name().to_string()).collect::<Vec<_>>());
            out.detail("tri_notes", t.notes.clone());
            out.recollement(t.additive.certificate.clone());
            out.reports.extend(t.triangulation_reports.iter().cloned());
            out.reports.extend(t.exactness.iter().cloned());
            out.unchecked = vec!["TR2".into(), "TR4".into()];
        }
    }
    Ok(out)
}

fn error_kind(e: &CliError) -> &'static str {
    match e {
        CliError::Syntax(_) => "syntax",
        CliError::Declaration { .. } => "declaration",
        CliError::Input(_) => "input",
        CliError::Engine(c) => match core_exit_code(c) {
            1 => "hypothesis",
            3 => "inconsistent",
            _ => "input",
        },
    }
}

/// Runs a command on workspace source text. The certificate is produced even
/// when the input is rejected.
pub fn run_source(cmd: Command, src: &str, opts: &Options) -> Certificate {
    let mut cert = Certificate { command: cmd.name().into(), options: opts.to_map(), ..Default::default() };
    let result = parse(src).map_err(CliError::from).and_then(|ws| {
        cert.input_digest = Some(digest(&ws.decls));
        let res = resolve(&ws)?;
        dispatch(cmd, &ws, &res, opts)
    });
    match result {
        Ok(out) => {
            cert.reports = out.reports;
            cert.details = out.details;
            cert.unchecked = out.unchecked;
            cert.r3_semantics = out.semantics;
            cert.exit_code = if cert.failed_checks() == 0 { 0 } else { 1 };
        }
        Err(e) => {
            cert.error = Some((error_kind(&e).into(), e.to_string()));
            cert.exit_code = e.exit_code();
        }
    }
    cert
}

pub fn run_file(cmd: Command, path: &Path, opts: &Options) -> Certificate {
    match std::fs::read_to_string(path) {
        Ok(src) => run_source(cmd, &src, opts),
        Err(e) => {
            let err = CliError::Input(format!("{}: {e}", path.display()));
            Certificate {
                command: cmd.name().into(),
                options: opts.to_map(),
                error: Some(("input".into(), err.to_string())),
                exit_code: err.exit_code(),
                ..Default::default()
            }
        }
    }
}
