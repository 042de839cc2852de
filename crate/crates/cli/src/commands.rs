//! The subcommands. Each returns a JSON report, a plain-text summary and an
//! exit code.

use std::path::Path;

use protoexact::category::{
    audit_axioms, audit_obscure, classify_strictness, Audit, AuditBounds, AuditReport, Category,
    CategoryError, DiagramSampler,
};
use protoexact::exec::Exec;
use protoexact::factorization::{
    factor_map, precover, replay_certificate, special_preenvelope, Certificate, FactorError,
    FactorOptions, GeneratingSet,
};
use protoexact::instances::{
    all_subspaces, brute_quotient_norm, counterexample_suite, pointed_strictness, FinPointedSet,
    PointedMap, WeightedCat,
};
use protoexact::random::RandomWeighted;
use protoexact::scalars::{Elem, Magnitude, ValuedField};
use protoexact::weighted::{
    chain_colimit, classify_morphism, cokernel, kernel, orthogonalize, pullback, pushout,
    quotient_norm, WeightedError, WeightedSpace,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::{
    self, build_map, in_file, parse_vector, read_map, read_weighted_map, AnyMap, AnyObject,
    CliError, Entry, RawMap,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON document every command produces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub bounds: Value,
    pub result: Value,
}

pub struct Outcome {
    pub report: Report,
    pub summary: String,
    pub code: u8,
}

fn outcome(command: &str, bounds: Value, result: Value, summary: String) -> Outcome {
    Outcome {
        report: Report {
            tool: "protoexact".into(),
            version: VERSION.into(),
            command: command.into(),
            bounds,
            result,
        },
        summary,
        code: 0,
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn category_error(e: CategoryError) -> CliError {
    match e {
        CategoryError::BudgetExceeded { .. } => CliError::Limit(e.to_string()),
        other => CliError::Invariant(other.to_string()),
    }
}

fn weighted_error(e: WeightedError) -> CliError {
    CliError::Invariant(e.to_string())
}

fn elems(field: ValuedField, v: &[Elem]) -> Vec<String> {
    v.iter().map(|x| field.format_elem(x)).collect()
}

fn describe(space: &WeightedSpace) -> String {
    let w: Vec<String> = space.weights().iter().map(|m| m.to_string()).collect();
    format!(
        "dim {} over {}, weights [{}]",
        space.dim(),
        space.field(),
        w.join(", ")
    )
}

/// `F2`, `F5`: prime fields with the trivial absolute value. `Q2`: the
/// 2-adic rationals. `Q`: the rationals with the trivial absolute value.
pub fn parse_field(text: &str) -> Result<ValuedField, CliError> {
    let bad = || {
        CliError::Parse(format!(
            "field `--field`: cannot read {text:?}; use F<p>, Q<p> or Q"
        ))
    };
    if text == "Q" {
        return Ok(ValuedField::Rationals);
    }
    let (kind, p) = text.split_at(1);
    let p: u32 = p.parse().map_err(|_| bad())?;
    let field = match kind {
        "F" => ValuedField::prime_field(p),
        "Q" => ValuedField::padic(p),
        _ => return Err(bad()),
    };
    field.map_err(|e| CliError::Parse(format!("field `--field`: {e}")))
}

pub fn parse_weights(text: &str) -> Result<Vec<Magnitude>, CliError> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|e| CliError::Parse(format!("field `--weights`: {e}")))
        })
        .collect()
}

// ---- compute ----

pub fn kernel_cmd(map: &Path) -> Result<Outcome, CliError> {
    let f = read_weighted_map(map)?;
    let k = kernel(&f);
    let summary = format!("kernel: {}", describe(k.domain()));
    Ok(outcome(
        "compute kernel",
        json!({}),
        json!({ "kernel": k }),
        summary,
    ))
}

pub fn cokernel_cmd(map: &Path) -> Result<Outcome, CliError> {
    let f = read_weighted_map(map)?;
    let q = cokernel(&f);
    let summary = format!("cokernel: {}", describe(q.codomain()));
    Ok(outcome(
        "compute cokernel",
        json!({}),
        json!({ "cokernel": q }),
        summary,
    ))
}

pub fn pullback_cmd(f: &Path, g: &Path) -> Result<Outcome, CliError> {
    let (f, g) = (read_weighted_map(f)?, read_weighted_map(g)?);
    let sq = pullback(&f, &g).map_err(weighted_error)?;
    let summary = format!("pullback: {}", describe(sq.apex()));
    let result = json!({ "apex": sq.apex(), "to_x": sq.to_x, "to_z": sq.to_z });
    Ok(outcome("compute pullback", json!({}), result, summary))
}

pub fn pushout_cmd(i: &Path, g: &Path) -> Result<Outcome, CliError> {
    let (i, g) = (read_weighted_map(i)?, read_weighted_map(g)?);
    let sq = pushout(&i, &g).map_err(weighted_error)?;
    let summary = format!("pushout: {}", describe(sq.apex()));
    let result = json!({ "apex": sq.apex(), "from_x": sq.from_x, "from_z": sq.from_z });
    Ok(outcome("compute pushout", json!({}), result, summary))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceInput {
    space: WeightedSpace,
    generators: Vec<Vec<Entry>>,
    #[serde(default)]
    vector: Option<Vec<Entry>>,
}

fn read_subspace(path: &Path) -> Result<(SubspaceInput, Vec<Vec<Elem>>), CliError> {
    let raw: SubspaceInput = input::read(path)?;
    let field = raw.space.field();
    let gens = raw
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| parse_vector(field, &raw.space, g, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| in_file(path, e))?;
    Ok((raw, gens))
}

pub fn quotient_norm_cmd(path: &Path) -> Result<Outcome, CliError> {
    let (raw, gens) = read_subspace(path)?;
    let field = raw.space.field();
    let v = raw
        .vector
        .as_ref()
        .ok_or_else(|| CliError::Parse(format!("{}: field `vector`: missing", path.display())))?;
    let m = parse_vector(field, &raw.space, v, "vector").map_err(|e| in_file(path, e))?;
    let basis = orthogonalize(&raw.space, &gens);
    let norm = quotient_norm(&basis, &m);
    let residual = elems(field, &basis.residual(&m));
    let summary = format!(
        "quotient norm: {norm}\nminimizing representative: [{}]",
        residual.join(", ")
    );
    let result = json!({ "norm": norm, "representative": residual, "basis": basis });
    Ok(outcome("compute quotient-norm", json!({}), result, summary))
}

pub fn orthogonalize_cmd(path: &Path) -> Result<Outcome, CliError> {
    let (raw, gens) = read_subspace(path)?;
    let basis = orthogonalize(&raw.space, &gens);
    let certificate = match basis.check_certificate() {
        Ok(()) => "verified".to_string(),
        Err(e) => format!("failed: {e}"),
    };
    let norms: Vec<String> = basis.norms().iter().map(|m| m.to_string()).collect();
    let summary = format!(
        "rank {} (+{} null), pivots {:?}, norms [{}], certificate {certificate}",
        basis.rank(),
        basis.null_vectors().len(),
        basis.pivots(),
        norms.join(", ")
    );
    let result = json!({ "basis": basis, "certificate": certificate });
    Ok(outcome("compute orthogonalize", json!({}), result, summary))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainInput {
    first: WeightedSpace,
    maps: Vec<RawMap>,
    #[serde(default)]
    points: Vec<ChainPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainPoint {
    stage: usize,
    vector: Vec<Entry>,
}

pub fn colimit_cmd(path: &Path) -> Result<Outcome, CliError> {
    let raw: ChainInput = input::read(path)?;
    let maps = raw
        .maps
        .into_iter()
        .enumerate()
        .map(|(i, m)| build_map(m, &format!("maps[{i}].")))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| in_file(path, e))?;
    let chain = chain_colimit(&raw.first, &maps).map_err(weighted_error)?;
    let field = raw.first.field();
    let mut points = Vec::new();
    let mut lines = vec![format!("colimit: {}", describe(chain.colimit()))];
    for (k, p) in raw.points.iter().enumerate() {
        let stage = chain.stages.get(p.stage).ok_or_else(|| {
            CliError::Parse(format!(
                "{}: field `points[{k}].stage`: no stage {}",
                path.display(),
                p.stage
            ))
        })?;
        let x = parse_vector(field, stage, &p.vector, &format!("points[{k}].vector"))
            .map_err(|e| in_file(path, e))?;
        let inf = chain.colimit_norm(p.stage, &x);
        let image = chain.image_norm(p.stage, &x);
        lines.push(format!(
            "point {k} at stage {}: inf over the chain {inf}, norm in the colimit {image}",
            p.stage
        ));
        points.push(json!({ "stage": p.stage, "vector": elems(field, &x), "inf_norm": inf, "colimit_norm": image }));
    }
    let result = json!({ "colimit": chain.colimit(), "cocone": chain.cocone, "points": points });
    Ok(outcome(
        "compute colimit",
        json!({}),
        result,
        lines.join("\n"),
    ))
}

// ---- classify ----

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pointed_record(f: &PointedMap) -> Result<Value, CliError> {
    let c = FinPointedSet::new(f.source().max(f.target()));
    let s = pointed_strictness(f);
    let id_x = c.identity(&f.source());
    let id_y = c.identity(&f.target());
    let back = c.hom(&f.target(), &f.source()).map_err(category_error)?;
    let split_mono = back.iter().any(|r| r.after(f).as_ref() == Some(&id_x));
    let split_epi = back.iter().any(|s| f.after(s).as_ref() == Some(&id_y));
    Ok(json!({
        "mono": f.is_injective(),
        "epi": f.is_surjective(),
        "strict_mono": s.is_strict_mono(),
        "strict_epi": s.is_strict_epi(),
        "iso": f.is_injective() && f.is_surjective(),
        "split_mono": split_mono,
        "split_epi": split_epi,
    }))
}

pub fn classify_cmd(map: &Path) -> Result<Outcome, CliError> {
    let (record, extra) = match read_map(map)? {
        AnyMap::Weighted(f) => {
            let c = classify_morphism(&f).map_err(|e| in_file(map, weighted_error(e)))?;
            (to_json(&c), json!({ "operator_norm": f.operator_norm() }))
        }
        AnyMap::Pointed(f) => (pointed_record(&f)?, json!({})),
    };
    let keys = [
        "mono",
        "epi",
        "strict_mono",
        "strict_epi",
        "iso",
        "split_mono",
        "split_epi",
    ];
    let summary = keys
        .iter()
        .map(|k| format!("{k:<12} {}", yes(record[k] == json!(true))))
        .collect::<Vec<_>>();
    let mut result = json!({ "classification": record });
    if let Some(n) = extra.get("operator_norm") {
        result["operator_norm"] = n.clone();
    }
    Ok(outcome("classify", json!({}), result, summary.join("\n")))
}

// ---- audit ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InstanceKind {
    Pointed,
    Weighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Axioms,
    Obscure,
    All,
}

pub struct AuditOptions {
    pub instance: InstanceKind,
    pub suite: Suite,
    pub max_size: usize,
    pub field: String,
    pub weights: String,
    pub max_dim: usize,
    pub sampled: bool,
    pub bounds: AuditBounds,
    pub exec: Exec,
}

fn run_suite<C: Category>(
    c: &C,
    suite: Suite,
    bounds: AuditBounds,
    exec: Exec,
    sampler: Option<&dyn DiagramSampler<C>>,
) -> Result<Vec<AuditReport>, CliError> {
    let a = Audit {
        category: c,
        bounds,
        exec,
    };
    let mut out = Vec::new();
    if suite != Suite::Obscure {
        out.push(audit_axioms(&a, sampler).map_err(category_error)?);
    }
    if suite != Suite::Axioms {
        out.push(audit_obscure(&a, sampler).map_err(category_error)?);
    }
    Ok(out)
}

pub fn audit_cmd(o: AuditOptions) -> Result<Outcome, CliError> {
    let reports = match o.instance {
        InstanceKind::Pointed => {
            if o.sampled {
                return Err(CliError::Parse(
                    "field `--sampled`: pointed sets are audited exhaustively".into(),
                ));
            }
            run_suite(
                &FinPointedSet::new(o.max_size),
                o.suite,
                o.bounds,
                o.exec,
                None,
            )?
        }
        InstanceKind::Weighted => {
            let field = parse_field(&o.field)?;
            if o.sampled {
                let ValuedField::PAdic(p) = field else {
                    return Err(CliError::Parse(
                        "field `--sampled`: sampling runs over Q<p> fields".into(),
                    ));
                };
                let sampler = RandomWeighted {
                    max_dim: o.max_dim.max(1),
                    ..RandomWeighted::padic(p)
                };
                run_suite(
                    &WeightedCat::new(field),
                    o.suite,
                    o.bounds,
                    o.exec,
                    Some(&sampler),
                )?
            } else {
                if field.order().is_none() {
                    return Err(CliError::Parse(format!(
                        "field `--field`: {field} is infinite; pass --sampled or a finite field"
                    )));
                }
                let c = WeightedCat::finite(field, &parse_weights(&o.weights)?, o.max_dim)
                    .map_err(category_error)?;
                run_suite(&c, o.suite, o.bounds, o.exec, None)?
            }
        }
    };
    let summary = reports
        .iter()
        .map(|r| r.summary())
        .collect::<Vec<_>>()
        .join("\n");
    let bounds = reports
        .first()
        .map(|r| r.bounds.clone())
        .unwrap_or(Value::Null);
    Ok(outcome(
        "audit",
        bounds,
        json!({ "reports": reports }),
        summary,
    ))
}

pub fn counterexamples_cmd(max_size: usize, exec: Exec) -> Result<Outcome, CliError> {
    let r = counterexample_suite(max_size, &exec).map_err(category_error)?;
    let mut summary = r.report.summary();
    for c in &r.cases {
        summary.push_str(&format!(
            "  {}/{}: surjective {}, strictness {:?} (closed form {:?})\n",
            c.case,
            c.role,
            yes(c.surjective),
            c.from_kernels,
            c.closed_form
        ));
    }
    summary.push_str(&format!(
        "all verdicts as expected: {}",
        yes(r.as_expected())
    ));
    Ok(outcome(
        "counterexamples",
        r.report.bounds.clone(),
        to_json(&r),
        summary,
    ))
}

// ---- factor ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Generators {
    /// Every admissible monomorphism of the instance.
    Monos,
    /// Admissible monomorphisms out of rank-one objects.
    RankOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorMode {
    Map,
    Envelope,
    Precover,
}

/// Enough to rebuild the instance a certificate lives in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceParams {
    Pointed {
        max_size: usize,
    },
    Weighted {
        field: ValuedField,
        weights: Vec<Magnitude>,
        max_dim: usize,
    },
}

impl InstanceParams {
    fn weighted(&self) -> Result<WeightedCat, CliError> {
        match self {
            InstanceParams::Weighted {
                field,
                weights,
                max_dim,
            } => WeightedCat::finite(*field, weights, *max_dim).map_err(category_error),
            InstanceParams::Pointed { .. } => unreachable!("caller matched the kind"),
        }
    }
}

pub struct FactorOptionsCli {
    pub mode: FactorMode,
    pub input: std::path::PathBuf,
    pub generators: Generators,
    pub fuel: usize,
    pub max_size: usize,
    pub weights: String,
    pub max_dim: usize,
    pub exec: Exec,
}

enum FactorInput<O, M> {
    Map(M),
    Object(O),
}

fn run_factor<C>(
    c: &C,
    params: &InstanceParams,
    o: &FactorOptionsCli,
    gens: GeneratingSet<C::Mor>,
    input: FactorInput<C::Obj, C::Mor>,
) -> Result<Outcome, CliError>
where
    C: Category,
    C::Obj: Serialize,
    C::Mor: Serialize,
{
    let opts = FactorOptions {
        exec: o.exec.clone(),
        ..FactorOptions::new(o.fuel)
    };
    let result = match (&input, o.mode) {
        (FactorInput::Map(f), _) => factor_map(c, f, &gens, &opts),
        (FactorInput::Object(x), FactorMode::Envelope) => {
            special_preenvelope(c, x, &gens, &opts).map(|(_, cert)| cert)
        }
        (FactorInput::Object(x), _) => precover(c, x, &gens, &opts).map(|(_, cert)| cert),
    };
    let bounds = json!({
        "instance": params,
        "mode": o.mode,
        "generators": o.generators,
        "generator_count": gens.generators.len(),
        "fuel": o.fuel,
    });
    let (cert, code): (Certificate<C>, u8) = match result {
        Ok(cert) => (cert, 0),
        Err(FactorError::FuelExhausted { partial }) => (*partial, 3),
        Err(FactorError::Category(e)) => return Err(category_error(e)),
    };
    let mut summary = format!(
        "{} against {} generators ({}): {} steps, {}",
        c.name(),
        gens.generators.len(),
        gens.label,
        cert.steps.len(),
        if cert.complete {
            "right leg lifts against every generator"
        } else {
            "incomplete"
        }
    );
    if code == 3 {
        summary.push_str(&format!(
            "\nfuel exhausted at {} with unfilled lifting problems",
            o.fuel
        ));
    }
    let mut out = outcome("factor", bounds, json!({ "certificate": cert }), summary);
    out.code = code;
    Ok(out)
}

fn field_of(input: &AnyMap) -> Option<ValuedField> {
    match input {
        AnyMap::Weighted(f) => Some(f.domain().field()),
        AnyMap::Pointed(_) => None,
    }
}

pub fn factor_cmd(o: FactorOptionsCli) -> Result<Outcome, CliError> {
    // Either a morphism or an object, pointed or weighted.
    let (pointed, field, input): (bool, Option<ValuedField>, Result<AnyMap, AnyObject>) =
        match o.mode {
            FactorMode::Map => {
                let m = read_map(&o.input)?;
                (matches!(m, AnyMap::Pointed(_)), field_of(&m), Ok(m))
            }
            _ => {
                let x: AnyObject = input::read(&o.input)?;
                match &x {
                    AnyObject::Pointed(_) => (true, None, Err(x)),
                    AnyObject::Weighted(s) => (false, Some(s.field()), Err(x)),
                }
            }
        };
    let label = match o.generators {
        Generators::Monos => "admissible monos",
        Generators::RankOne => "rank-one admissible monos",
    };
    if pointed {
        let params = InstanceParams::Pointed {
            max_size: o.max_size,
        };
        let c = FinPointedSet::new(o.max_size);
        let gens = match o.generators {
            Generators::Monos => GeneratingSet::admissible_monos(&c, &o.exec),
            Generators::RankOne => GeneratingSet::rank_one(&c, &o.exec, |n: &usize| *n == 1),
        }
        .map_err(category_error)?;
        let gens = GeneratingSet {
            label: label.into(),
            ..gens
        };
        let input = match input {
            Ok(AnyMap::Pointed(f)) => FactorInput::Map(f),
            Err(AnyObject::Pointed(n)) => FactorInput::Object(n),
            _ => unreachable!("kind checked above"),
        };
        return run_factor(&c, &params, &o, gens, input);
    }
    let field = field.expect("weighted input has a field");
    if field.order().is_none() {
        return Err(CliError::Parse(format!(
            "{}: factorization enumerates lifting problems and needs a finite field, not {field}",
            o.input.display()
        )));
    }
    let params = InstanceParams::Weighted {
        field,
        weights: parse_weights(&o.weights)?,
        max_dim: o.max_dim,
    };
    let c = params.weighted()?;
    let gens = match o.generators {
        Generators::Monos => GeneratingSet::admissible_monos(&c, &o.exec),
        Generators::RankOne => {
            GeneratingSet::rank_one(&c, &o.exec, |s: &WeightedSpace| s.dim() == 1)
        }
    }
    .map_err(category_error)?;
    let gens = GeneratingSet {
        label: label.into(),
        ..gens
    };
    let input = match input {
        Ok(AnyMap::Weighted(f)) => FactorInput::Map(f),
        Err(AnyObject::Weighted(x)) => FactorInput::Object(x),
        _ => unreachable!("kind checked above"),
    };
    run_factor(&c, &params, &o, gens, input)
}

pub fn verify_cert_cmd(path: &Path, exec: Exec) -> Result<Outcome, CliError> {
    let report: Report = input::read(path)?;
    if report.command != "factor" {
        return Err(CliError::Parse(format!(
            "{}: field `command`: expected a factor report, found {:?}",
            path.display(),
            report.command
        )));
    }
    let field_err = |name: &str, e: serde_json::Error| {
        CliError::Parse(format!("{}: field `{name}`: {e}", path.display()))
    };
    let params: InstanceParams = serde_json::from_value(report.bounds["instance"].clone())
        .map_err(|e| field_err("bounds.instance", e))?;
    let cert = report.result["certificate"].clone();
    let (outcome_json, steps, complete) = match &params {
        InstanceParams::Pointed { max_size } => {
            let c = FinPointedSet::new(*max_size);
            replay(&c, cert, &exec).map_err(|e| e.located(path))?
        }
        InstanceParams::Weighted { .. } => {
            let c = params.weighted()?;
            replay(&c, cert, &exec).map_err(|e| e.located(path))?
        }
    };
    let summary = format!(
        "replay: {outcome_json} ({steps} steps, complete: {})",
        yes(complete)
    );
    let result = json!({ "replay": outcome_json, "steps": steps, "complete": complete });
    Ok(outcome("verify-cert", report.bounds, result, summary))
}

enum ReplayFailure {
    Cert(serde_json::Error),
    Other(CliError),
}

impl ReplayFailure {
    fn located(self, path: &Path) -> CliError {
        match self {
            ReplayFailure::Cert(e) => CliError::Parse(format!(
                "{}: field `result.certificate`: {e}",
                path.display()
            )),
            ReplayFailure::Other(e) => e,
        }
    }
}

fn replay<C>(c: &C, cert: Value, exec: &Exec) -> Result<(Value, usize, bool), ReplayFailure>
where
    C: Category,
    C::Obj: for<'de> Deserialize<'de>,
    C::Mor: for<'de> Deserialize<'de>,
{
    let cert: Certificate<C> = serde_json::from_value(cert).map_err(ReplayFailure::Cert)?;
    let opts = FactorOptions {
        exec: exec.clone(),
        ..FactorOptions::new(cert.fuel)
    };
    let out =
        replay_certificate(c, &cert, &opts).map_err(|e| ReplayFailure::Other(category_error(e)))?;
    Ok((to_json(&out), cert.steps.len(), cert.complete))
}

// ---- oracle-check ----

struct Comparison {
    name: &'static str,
    compared: u64,
    mismatches: u64,
    first: Option<String>,
}

impl Comparison {
    fn new(name: &'static str) -> Comparison {
        Comparison {
            name,
            compared: 0,
            mismatches: 0,
            first: None,
        }
    }

    fn record(&mut self, agree: bool, what: impl FnOnce() -> String) {
        self.compared += 1;
        if !agree {
            self.mismatches += 1;
            self.first.get_or_insert_with(what);
        }
    }

    fn json(&self) -> Value {
        json!({ "check": self.name, "compared": self.compared, "mismatches": self.mismatches, "first_mismatch": self.first })
    }
}

/// Brute force against the algorithms on the bounded instances.
pub fn oracle_check_cmd(
    field: &str,
    weights: &str,
    max_dim: usize,
    max_size: usize,
) -> Result<Outcome, CliError> {
    let field = parse_field(field)?;
    let c =
        WeightedCat::finite(field, &parse_weights(weights)?, max_dim).map_err(category_error)?;
    let objects = c.objects().map_err(category_error)?;

    let mut qn = Comparison::new("quotient norm vs coset minimum");
    for x in &objects {
        let subs = all_subspaces(x)
            .ok_or_else(|| CliError::Invariant("space is not enumerable".into()))?;
        let vectors = x
            .vectors()
            .ok_or_else(|| CliError::Invariant("space is not enumerable".into()))?;
        for sub in &subs {
            let basis = orthogonalize(x, sub);
            for m in &vectors {
                let fast = quotient_norm(&basis, m);
                let brute = brute_quotient_norm(x, sub, m).expect("finite field");
                qn.record(fast == brute, || {
                    format!("{}: {fast} vs {brute}", describe(x))
                });
            }
        }
    }

    let mut ws = Comparison::new("weighted strictness: closed form vs kernels and cokernels");
    for x in &objects {
        for y in &objects {
            for f in c.hom(x, y).map_err(category_error)? {
                let native = classify_morphism(&f).map_err(weighted_error)?;
                let generic = classify_strictness(&c, &f).map_err(category_error)?;
                ws.record(
                    native.strict_mono == generic.is_strict_mono()
                        && native.strict_epi == generic.is_strict_epi(),
                    || serde_json::to_string(&f).expect("maps serialize"),
                );
            }
        }
    }

    let mut ps = Comparison::new("pointed strictness: closed form vs kernels and cokernels");
    let pc = FinPointedSet::generic(max_size);
    for n in 0..=max_size {
        for m in 0..=max_size {
            for f in FinPointedSet::all_maps(n, m) {
                let derived = classify_strictness(&pc, &f).map_err(category_error)?;
                ps.record(pointed_strictness(&f) == derived, || format!("{f:?}"));
            }
        }
    }

    let checks = [qn, ws, ps];
    let summary = checks
        .iter()
        .map(|k| {
            format!(
                "{:<58} {:>8} compared, {} mismatches",
                k.name, k.compared, k.mismatches
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let bounds = json!({ "instance": c.describe_bounds(), "max_non_base_elements": max_size });
    let result = json!({ "checks": checks.iter().map(Comparison::json).collect::<Vec<_>>() });
    Ok(outcome("oracle-check", bounds, result, summary))
}
