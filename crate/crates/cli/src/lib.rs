//! Verification pipelines behind the `klr` binary. Each command reads a TOML
//! config, fills defaults, runs, and returns a JSON report whose keys are
//! sorted; identical inputs give identical bytes.

use std::fmt::Debug;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use klr_core::arith::{LaurentPoly, RatFunc, SignedQPower};
use klr_core::cartan::CartanConfig;
use klr_core::cyclotomic::{
    count_projectives, kgroup_commutator_check, resolution_dim_check, sl2_identity_check, CyclotomicError, CyclotomicFamily, ModuleRep,
};
use klr_core::dynkin::{self, DynkinError, QuiverConfig};
use klr_core::klr::checks::{brute_force_graded_dims, contents, relation_suite};
use klr_core::klr::{words_of_content, Character, KlrAlgebra, QFamily};
use klr_core::rmatrix::{self, AffineRep};
use klr_core::shapovalov::{block_normalization_exponent, HighestWeight, ShapovalovError};
use klr_core::swquiver::{build_quiver, DatumConfig, DenominatorConfig, VertexConfig};
use klr_core::CartanDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    KlrDim,
    Cyclotomic,
    Shapovalov,
    Rmatrix,
    Fusion,
    QuiverFromDenominators,
    PhiMap,
    VerifyG0,
    VerifySl2,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::KlrDim,
        Command::Cyclotomic,
        Command::Shapovalov,
        Command::Rmatrix,
        Command::Fusion,
        Command::QuiverFromDenominators,
        Command::PhiMap,
        Command::VerifyG0,
        Command::VerifySl2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::KlrDim => "klr-dim",
            Command::Cyclotomic => "cyclotomic",
            Command::Shapovalov => "shapovalov",
            Command::Rmatrix => "rmatrix",
            Command::Fusion => "fusion",
            Command::QuiverFromDenominators => "quiver-from-denominators",
            Command::PhiMap => "phi-map",
            Command::VerifyG0 => "verify-g0",
            Command::VerifySl2 => "verify-sl2",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| CliError::Config(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{message}")]
    Module { code: String, message: String },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Module { .. } => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn code(&self) -> String {
        match self {
            CliError::Config(_) => "cli::ConfigError".into(),
            CliError::Module { code, .. } => code.clone(),
            CliError::Io(_) => "cli::IoError".into(),
        }
    }
}

fn module_err<E: Debug + std::fmt::Display>(module: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| {
        let dbg = format!("{e:?}");
        let variant: String = dbg.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        CliError::Module { code: format!("{module}::{variant}"), message: e.to_string() }
    }
}

/// What a run produced: the report bytes and whether every verdict passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: String,
    pub passed: bool,
    pub cache_hit: bool,
}

/// Parses `config_text` for `command`, applies the `cutoff` override and
/// returns the canonical inputs that are echoed and hashed.
pub fn canonical_inputs(command: Command, config_text: Option<&str>, cutoff: Option<i64>) -> Result<Value, CliError> {
    let text = config_text.unwrap_or("");
    match command {
        Command::KlrDim => canon::<KlrDimConfig>(text, cutoff),
        Command::Cyclotomic => canon::<CyclotomicConfig>(text, cutoff),
        Command::Shapovalov => canon::<ShapovalovConfig>(text, cutoff),
        Command::Rmatrix => canon::<RmatrixConfig>(text, cutoff),
        Command::Fusion => canon::<FusionConfig>(text, cutoff),
        Command::QuiverFromDenominators => canon::<SwConfig>(text, cutoff),
        Command::PhiMap => canon::<PhiConfig>(text, cutoff),
        Command::VerifyG0 => canon::<G0Config>(text, cutoff),
        Command::VerifySl2 => canon::<Sl2Config>(text, cutoff),
    }
}

trait JobConfig: Serialize + DeserializeOwned {
    fn cutoff_mut(&mut self) -> Option<&mut i64> {
        None
    }
    fn validate(&self) -> Result<(), String> {
        Ok(())
    }
}

fn canon<C: JobConfig>(text: &str, cutoff: Option<i64>) -> Result<Value, CliError> {
    let mut cfg: C = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(c) = cutoff {
        match cfg.cutoff_mut() {
            Some(slot) => *slot = c,
            None => return Err(CliError::Config("this command takes no cutoff".into())),
        }
    }
    if let Some(c) = cfg.cutoff_mut() {
        if *c <= 0 {
            return Err(CliError::Config(format!("cutoff must be positive, got {c}")));
        }
    }
    cfg.validate().map_err(CliError::Config)?;
    serde_json::to_value(&cfg).map_err(|e| CliError::Config(e.to_string()))
}

fn from_canon<C: DeserializeOwned>(v: &Value) -> C {
    serde_json::from_value(v.clone()).expect("canonical inputs round-trip")
}

/// sha256 over the command name and the canonical inputs.
pub fn cache_key(command: Command, inputs: &Value) -> String {
    let mut h = Sha256::new();
    h.update(command.name().as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_string(inputs).expect("json").as_bytes());
    hex::encode(h.finalize())
}

/// Writes `bytes` next to `path` and renames it into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let tmp: PathBuf = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Runs `command`. With a cache directory, a report stored under the same
/// content hash is returned as is; fresh reports are stored atomically.
pub fn run(command: Command, config_text: Option<&str>, cutoff: Option<i64>, cache: Option<&Path>) -> Result<Outcome, CliError> {
    let inputs = canonical_inputs(command, config_text, cutoff)?;
    let slot = cache.map(|d| d.join(format!("{}.json", cache_key(command, &inputs))));
    if let Some(p) = &slot {
        if let Ok(report) = fs::read_to_string(p) {
            if let Ok(v) = serde_json::from_str::<Value>(&report) {
                let passed = v.get("passed").and_then(Value::as_bool).unwrap_or(false);
                return Ok(Outcome { report, passed, cache_hit: true });
            }
        }
    }
    let (results, verdicts) = execute(command, &inputs)?;
    let passed = verdicts.values().all(|v| v.as_bool().unwrap_or(false));
    let report = json!({
        "command": command.name(),
        "inputs": inputs,
        "results": results,
        "verdicts": Value::Object(verdicts),
        "passed": passed,
    });
    let mut report = serde_json::to_string_pretty(&report).expect("json");
    report.push('\n');
    if let Some(p) = &slot {
        atomic_write(p, report.as_bytes())?;
    }
    Ok(Outcome { report, passed, cache_hit: false })
}

type Verdicts = Map<String, Value>;

fn execute(command: Command, inputs: &Value) -> Result<(Value, Verdicts), CliError> {
    match command {
        Command::KlrDim => klr_dim(from_canon(inputs)),
        Command::Cyclotomic => cyclotomic(from_canon(inputs)),
        Command::Shapovalov => shapovalov(from_canon(inputs)),
        Command::Rmatrix => rmatrix_cmd(from_canon(inputs)),
        Command::Fusion => fusion(from_canon(inputs)),
        Command::QuiverFromDenominators => sw_quiver(from_canon(inputs)),
        Command::PhiMap => phi_map(from_canon(inputs)),
        Command::VerifyG0 => verify_g0(from_canon(inputs)),
        Command::VerifySl2 => verify_sl2(from_canon(inputs)),
    }
}

// ---- JSON helpers

fn lp(p: &LaurentPoly) -> Value {
    json!({ "pairs": p, "text": p.to_string() })
}

fn character(c: &Character) -> Value {
    Value::Array(c.iter().map(|(w, p)| json!({ "word": w, "dim": lp(p) })).collect())
}

fn verdict(v: &mut Verdicts, name: &str, ok: bool) {
    v.insert(name.into(), Value::Bool(ok));
}

// ---- shared config pieces

fn a1() -> CartanConfig {
    CartanConfig { kind: Some("A1".into()), matrix: None, symmetrizer: None }
}

fn lambda2() -> Vec<i64> {
    vec![2]
}

fn c12() -> i64 {
    12
}

fn c40() -> i64 {
    40
}

fn yes() -> bool {
    true
}

fn build_cartan(c: &CartanConfig) -> Result<CartanDatum, CliError> {
    c.build().map_err(module_err("cartan"))
}

fn build_q(d: &CartanDatum, quiver: &Option<Vec<Vec<u32>>>) -> Result<QFamily, CliError> {
    match quiver {
        None => Ok(QFamily::standard(d)),
        Some(a) => QFamily::from_quiver(d, a).map_err(module_err("klr")),
    }
}

/// `beta` alone, all `β` of height `≤ max_height`, or `default`.
fn select_betas(
    rank: usize,
    beta: &Option<Vec<i64>>,
    max_height: Option<usize>,
    zero: bool,
    default: Vec<Vec<i64>>,
) -> Result<Vec<Vec<i64>>, CliError> {
    match (beta, max_height) {
        (Some(_), Some(_)) => Err(CliError::Config("give at most one of `beta` and `max_height`".into())),
        (Some(b), None) => {
            if b.len() != rank || b.iter().any(|&x| x < 0) {
                return Err(CliError::Config(format!("beta {b:?} is not in Z_{{>=0}}^{rank}")));
            }
            Ok(vec![b.clone()])
        }
        (None, Some(h)) => Ok((if zero { 0 } else { 1 }..=h).flat_map(|k| contents(rank, k)).collect()),
        (None, None) => Ok(default),
    }
}

fn check_lambda(d: &CartanDatum, lambda: &[i64]) -> Result<(), CliError> {
    if lambda.len() != d.rank() {
        return Err(CliError::Config(format!("lambda {lambda:?} has the wrong length for rank {}", d.rank())));
    }
    Ok(())
}

// ---- klr-dim

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KlrDimConfig {
    #[serde(default = "a1")]
    cartan: CartanConfig,
    /// Arrow matrix of a quiver defining `Q`; absent means the standard family.
    #[serde(default)]
    quiver: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    beta: Option<Vec<i64>>,
    #[serde(default)]
    max_height: Option<usize>,
    #[serde(default = "c12")]
    cutoff: i64,
    /// Words of length up to this are run through the relation suite; 0 skips it.
    #[serde(default = "four")]
    relation_length: usize,
}

fn four() -> usize {
    4
}

impl JobConfig for KlrDimConfig {
    fn cutoff_mut(&mut self) -> Option<&mut i64> {
        Some(&mut self.cutoff)
    }
}

fn klr_dim(c: KlrDimConfig) -> Result<(Value, Verdicts), CliError> {
    let d = build_cartan(&c.cartan)?;
    let q = build_q(&d, &c.quiver)?;
    let betas = select_betas(d.rank(), &c.beta, c.max_height, false, (1..=3).flat_map(|k| contents(d.rank(), k)).collect())?;
    let mut rows = Vec::new();
    let mut all_equal = true;
    for b in &betas {
        let alg = KlrAlgebra::new(d.clone(), q.clone(), b.clone());
        for nu in words_of_content(b) {
            let brute = brute_force_graded_dims(&alg, &nu, c.cutoff);
            for mu in words_of_content(b) {
                let formula = alg.graded_dim_hom(&nu, &mu, c.cutoff).poly().clone();
                let got = brute.get(&mu).cloned().unwrap_or_default();
                all_equal &= formula == got;
                rows.push(json!({ "beta": b, "nu": nu, "mu": mu, "formula": lp(&formula), "brute_force": lp(&got) }));
            }
        }
    }
    let mut v = Verdicts::new();
    verdict(&mut v, "graded_dim_oracle", all_equal);
    let relations = if c.relation_length > 0 {
        let r = relation_suite(&d, &q, c.relation_length);
        verdict(&mut v, "relations_rewrite_to_zero", r.passed);
        serde_json::to_value(&r).expect("json")
    } else {
        Value::Null
    };
    let results = json!({ "q_family": q.canonical_string(), "graded_dims": rows, "relations": relations });
    Ok((results, v))
}

// ---- cyclotomic

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclotomicConfig {
    #[serde(default = "a1")]
    cartan: CartanConfig,
    #[serde(default)]
    quiver: Option<Vec<Vec<u32>>>,
    #[serde(default = "lambda2")]
    lambda: Vec<i64>,
    #[serde(default)]
    beta: Option<Vec<i64>>,
    #[serde(default)]
    max_height: Option<usize>,
    /// Degree bound for the quotient computation.
    #[serde(default = "c40")]
    cutoff: i64,
    #[serde(default = "seven")]
    seed: u64,
}

fn seven() -> u64 {
    7
}

impl JobConfig for CyclotomicConfig {
    fn cutoff_mut(&mut self) -> Option<&mut i64> {
        Some(&mut self.cutoff)
    }
}

fn cyc_err(e: CyclotomicError) -> CliError {
    module_err("cyclotomic")(e)
}

fn cyclotomic(c: CyclotomicConfig) -> Result<(Value, Verdicts), CliError> {
    let d = build_cartan(&c.cartan)?;
    check_lambda(&d, &c.lambda)?;
    let q = build_q(&d, &c.quiver)?;
    let mut first = vec![0; d.rank()];
    first[0] = 1;
    let betas = select_betas(d.rank(), &c.beta, c.max_height, true, vec![first])?;
    let fam = CyclotomicFamily::new(d.clone(), q, c.lambda.clone(), c.cutoff).map_err(cyc_err)?;
    let hw = HighestWeight::new(d.clone(), c.lambda.clone()).map_err(module_err("shapovalov"))?;
    let mut shadow_ok = true;
    let mut rank_ok = true;
    let mut rows = Vec::new();
    for b in &betas {
        let alg = fam.get(b).map_err(cyc_err)?;
        let shift = block_normalization_exponent(&d, &c.lambda, b);
        let mut mismatches = Vec::new();
        for mu in words_of_content(b) {
            for nu in words_of_content(b) {
                let want = hw.shapovalov(&nu, &mu).shift(shift);
                let got = alg.block_dim(&mu, &nu);
                if got != want {
                    mismatches.push(json!({ "mu": mu, "nu": nu, "block": lp(&got), "gram": lp(&want) }));
                }
            }
        }
        shadow_ok &= mismatches.is_empty();
        let rank = hw.weight_multiplicity(b);
        let pc = count_projectives(&alg, c.seed);
        if pc.complete {
            rank_ok &= pc.distinct == rank;
        }
        let blocks: Vec<Value> = alg.blocks().iter().map(|bd| json!({ "left": bd.left, "right": bd.right, "dim": lp(&bd.dim) })).collect();
        rows.push(json!({
            "beta": b,
            "dim": alg.dim(),
            "graded_dim": lp(&alg.graded_dim()),
            "blocks": blocks,
            "normalization_exponent": shift,
            "gram_mismatches": mismatches,
            "gram_rank": rank,
            "projectives": {
                "distinct": pc.distinct,
                "complete": pc.complete,
                "primitive_idempotents": pc.primitive_idempotents,
                "characters": pc.characters.iter().map(character).collect::<Vec<_>>(),
            },
        }));
    }
    let mut v = Verdicts::new();
    verdict(&mut v, "blocks_match_gram", shadow_ok);
    verdict(&mut v, "gram_rank_counts_projectives", rank_ok);
    Ok((json!({ "algebras": rows }), v))
}

// ---- shapovalov

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapovalovConfig {
    #[serde(default = "a1")]
    cartan: CartanConfig,
    #[serde(default = "lambda2")]
    lambda: Vec<i64>,
    #[serde(default)]
    beta: Option<Vec<i64>>,
    #[serde(default)]
    max_height: Option<usize>,
    /// Height of the probe words in the Serre check.
    #[serde(default = "one")]
    serre_extra: usize,
}

fn one() -> usize {
    1
}

impl JobConfig for ShapovalovConfig {}

fn shapovalov(c: ShapovalovConfig) -> Result<(Value, Verdicts), CliError> {
    let d = build_cartan(&c.cartan)?;
    check_lambda(&d, &c.lambda)?;
    let hw = HighestWeight::new(d.clone(), c.lambda.clone()).map_err(module_err("shapovalov"))?;
    let mut first = vec![0; d.rank()];
    first[0] = 1;
    let betas = select_betas(d.rank(), &c.beta, c.max_height, true, vec![first])?;
    let mut symmetric = true;
    let mut rows = Vec::new();
    for b in &betas {
        let (words, g) = hw.gram(b);
        for (a, row) in g.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                symmetric &= *x == g[k][a];
            }
        }
        let gram: Vec<Vec<Value>> = g.iter().map(|r| r.iter().map(lp).collect()).collect();
        rows.push(json!({ "beta": b, "words": words, "gram": gram, "rank": hw.weight_multiplicity(b) }));
    }
    let mut serre = Vec::new();
    let mut serre_ok = true;
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            match hw.serre_check(i, j, c.serre_extra) {
                Ok(r) => serre.push(serde_json::to_value(&r).expect("json")),
                Err(ShapovalovError::IdentityViolation(m)) => {
                    serre_ok = false;
                    serre.push(json!({ "i": i, "j": j, "passed": false, "failure": m }));
                }
                Err(e) => return Err(module_err("shapovalov")(e)),
            }
        }
    }
    let mut v = Verdicts::new();
    verdict(&mut v, "gram_symmetric", symmetric);
    verdict(&mut v, "serre_relations", serre_ok);
    Ok((json!({ "weights": rows, "serre": serre }), v))
}

// ---- rmatrix

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RmatrixConfig {
    #[serde(default = "two")]
    n: usize,
    /// Fundamental labels of the two factors; `1` is the vector representation.
    #[serde(default = "one")]
    i: usize,
    #[serde(default = "one")]
    j: usize,
    #[serde(default = "yes")]
    yang_baxter: bool,
    /// Include every matrix entry in the report.
    #[serde(default = "yes")]
    entries: bool,
}

fn two() -> usize {
    2
}

impl JobConfig for RmatrixConfig {
    fn validate(&self) -> Result<(), String> {
        if self.n < 2 || !(1..self.n).contains(&self.i) || !(1..self.n).contains(&self.j) {
            return Err(format!("need n >= 2 and 1 <= i, j < n, got n = {}, i = {}, j = {}", self.n, self.i, self.j));
        }
        Ok(())
    }
}

fn rm_err(e: rmatrix::RmatrixError) -> CliError {
    module_err("rmatrix")(e)
}

fn module_of(n: usize, l: usize) -> Result<AffineRep, CliError> {
    if l == 1 {
        rmatrix::build_vector_rep(n).map_err(rm_err)
    } else {
        rmatrix::fundamental_rep(n, l).map(|a| (*a).clone()).map_err(rm_err)
    }
}

/// `Π_s (z - (-q)^{|i-j|+2s})`, `s = 1..min(i, j, n-i, n-j)`.
fn expected_denominator(n: usize, i: usize, j: usize) -> RatFunc {
    let m = i.min(j).min(n - i).min(n - j) as i64;
    let z = RatFunc::var_pow(1, 1);
    let mut out = RatFunc::one();
    for s in 1..=m {
        out = &out * &(&z - &SignedQPower::minus_q((i as i64 - j as i64).abs() + 2 * s).to_ratfunc());
    }
    out
}

fn rmatrix_cmd(c: RmatrixConfig) -> Result<(Value, Verdicts), CliError> {
    let m1 = module_of(c.n, c.i)?;
    let m2 = module_of(c.n, c.j)?;
    let r = if c.i == 1 && c.j == 1 {
        (*rmatrix::vector_rmatrix(c.n).map_err(rm_err)?).clone()
    } else {
        rmatrix::solve_normalized_rmatrix(&m1, &m2).map_err(rm_err)?
    };
    let den = rmatrix::denominator(&r);
    let expect = expected_denominator(c.n, c.i, c.j);
    let unit = rmatrix::unitarity_scalar(&m1, &m2).map_err(rm_err)?;
    let mut v = Verdicts::new();
    // the solver rejects a nullspace of dimension other than one
    verdict(&mut v, "unique", true);
    verdict(&mut v, "denominator_matches", den == expect);
    let yb = if c.yang_baxter {
        let rep = rmatrix::yang_baxter_check(&m1, &m2, &m2).map_err(rm_err)?;
        verdict(&mut v, "yang_baxter", rep.passed);
        serde_json::to_value(&rep).expect("json")
    } else {
        Value::Null
    };
    let results = json!({
        "variable": "z = z_2 / z_1",
        "dims": [r.d1, r.d2],
        "denominator": rmatrix::format_z_poly(&den),
        "denominator_expected": rmatrix::format_z_poly(&expect),
        "unitarity_scalar": unit.to_string(),
        "yang_baxter": yb,
        "matrix": if c.entries { r.to_json() } else { Value::Null },
    });
    Ok((results, v))
}

// ---- fusion

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FusionConfig {
    #[serde(default = "two")]
    n: usize,
    /// Window start `a`; windows are `X(a), …, X(a+l-1)` with `X(j) = q^{2j}`.
    #[serde(default)]
    start: i64,
    /// Longest window; defaults to `n + 1`.
    #[serde(default)]
    max_length: Option<usize>,
}

impl JobConfig for FusionConfig {
    fn validate(&self) -> Result<(), String> {
        if self.n < 2 {
            return Err(format!("need n >= 2, got {}", self.n));
        }
        if self.max_length == Some(0) {
            return Err("max_length must be positive".into());
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn fusion(c: FusionConfig) -> Result<(Value, Verdicts), CliError> {
    let top = c.max_length.unwrap_or(c.n + 1);
    let mut rows = Vec::new();
    let mut dims_ok = true;
    for l in 1..=top {
        let b = c.start + l as i64 - 1;
        let m = rmatrix::fusion_module(c.n, c.start, b).map_err(rm_err)?;
        let expected = binomial(c.n, l);
        let (dim, row) = match &m {
            None => (0, json!({ "l": l, "window": [c.start, b], "zero": true, "dim": 0, "expected_dim": expected })),
            Some(m) => {
                let ch: Vec<Value> = m.rep.character().iter().map(|(w, k)| json!({ "weight": w, "multiplicity": k })).collect();
                let row = json!({
                    "l": l,
                    "window": [c.start, b],
                    "zero": false,
                    "dim": m.rep.dim(),
                    "expected_dim": expected,
                    "center": m.center.to_string(),
                    "character": ch,
                });
                (m.rep.dim(), row)
            }
        };
        dims_ok &= dim == expected;
        rows.push(row);
    }
    let v_rep = rmatrix::build_vector_rep(c.n).map_err(rm_err)?;
    let single = rmatrix::fusion_module(c.n, c.start, c.start).map_err(rm_err)?;
    let single_ok =
        single.is_some_and(|m| m.rep.same_action(&v_rep) && m.evaluated().same_action(&v_rep.rescaled(&RatFunc::q_pow(2 * c.start))));
    let mut v = Verdicts::new();
    verdict(&mut v, "dimensions", dims_ok);
    verdict(&mut v, "single_point_is_evaluated_vector", single_ok);
    Ok((json!({ "windows": rows }), v))
}

// ---- quiver-from-denominators

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SwConfig {
    #[serde(default = "three")]
    n: usize,
    #[serde(default = "window_vertices")]
    vertices: Vec<VertexConfig>,
    /// Absent: computed from the fusion-built fundamental modules.
    #[serde(default = "vector_denominator")]
    denominators: Option<Vec<DenominatorConfig>>,
    /// Also require a path quiver with `A^J_{k,k+1} = -1` and `Q^J_{k,k+1} = u - v`.
    #[serde(default = "yes")]
    expect_path: bool,
}

fn three() -> usize {
    3
}

fn window_vertices() -> Vec<VertexConfig> {
    (0..4).map(|j| VertexConfig { name: format!("X{j}"), sign: 1, exp: 2 * j, s: 1 }).collect()
}

fn vector_denominator() -> Option<Vec<DenominatorConfig>> {
    Some(vec![DenominatorConfig { s1: 1, s2: 1, coeffs: vec![vec![(2, "-1".into())], vec![(0, "1".into())]] }])
}

impl JobConfig for SwConfig {}

fn sw_quiver(c: SwConfig) -> Result<(Value, Verdicts), CliError> {
    let sw = module_err("swquiver");
    let dd = DatumConfig { n: c.n, vertices: c.vertices.clone(), denominators: c.denominators.clone() }.build().map_err(&sw)?;
    let quiver = build_quiver(&dd).map_err(&sw)?;
    let m = dd.len();
    let mut orders = vec![vec![0i64; m]; m];
    for (i, row) in orders.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            if i != j {
                *o = dd.d(i, j).map_err(&sw)?;
            }
        }
    }
    let mut qs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if quiver.cartan[i][j] != 0 {
                qs.push(json!({ "i": i, "j": j, "q": quiver.q_string(i, j) }));
            }
        }
    }
    let arrows: Vec<Value> = quiver.quiver.arrows.iter().map(|(&(i, j), &k)| json!([i, j, k])).collect();
    let mut v = Verdicts::new();
    verdict(&mut v, "symmetric_gcm", (0..m).all(|i| (0..m).all(|j| quiver.cartan[i][j] == quiver.cartan[j][i])));
    if c.expect_path {
        let path = (0..m).all(|i| {
            (0..m).all(|j| {
                let adj = i.abs_diff(j) == 1;
                let a = if i == j {
                    2
                } else if adj {
                    -1
                } else {
                    0
                };
                let arrow = quiver.quiver.arrows.get(&(i, j)).copied().unwrap_or(0);
                quiver.cartan[i][j] == a && arrow == u32::from(adj && i < j) && (!adj || quiver.q_string(i.min(j), i.max(j)) == "u - v")
            })
        });
        verdict(&mut v, "path_quiver", path);
    }
    let results = json!({
        "vertices": dd.vertices,
        "x": dd.x.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "s": dd.s,
        "zero_orders": orders,
        "cartan": quiver.cartan,
        "arrows": arrows,
        "q": qs,
    });
    Ok((results, v))
}

// ---- phi-map / verify-g0

fn type_a2() -> String {
    "A2".into()
}

fn arrow01() -> Vec<(usize, usize)> {
    vec![(0, 1)]
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiConfig {
    #[serde(rename = "type", default = "type_a2")]
    kind: String,
    #[serde(default = "arrow01")]
    arrows: Vec<(usize, usize)>,
    #[serde(default)]
    xi: Option<Vec<i64>>,
    #[serde(default)]
    lo: Option<i64>,
    #[serde(default)]
    hi: Option<i64>,
}

impl JobConfig for PhiConfig {}

fn dyn_err(e: DynkinError) -> CliError {
    module_err("dynkin")(e)
}

fn phi_map(c: PhiConfig) -> Result<(Value, Verdicts), CliError> {
    let (q, h) = QuiverConfig { kind: c.kind.clone(), arrows: c.arrows.clone(), xi: c.xi.clone() }.build().map_err(dyn_err)?;
    let cox = dynkin::adapted_coxeter(&q).map_err(dyn_err)?;
    let (dlo, dhi) = dynkin::default_window(&q, &h).map_err(dyn_err)?;
    let (lo, hi) = (c.lo.unwrap_or(dlo), c.hi.unwrap_or(dhi));
    let roots = q.datum.positive_roots().map_err(module_err("cartan"))?;
    let gammas: Vec<Vec<i64>> = (0..q.rank()).map(|i| dynkin::gamma(&q, i)).collect();
    let mut v = Verdicts::new();
    let same = cox.adapted_orders.iter().all(|o| {
        (0..q.rank()).all(|k| q.datum.weyl_act(o, &q.datum.simple_root(k)) == q.datum.weyl_act(&cox.word, &q.datum.simple_root(k)))
    });
    verdict(&mut v, "coxeter_unique", same);
    let table = match dynkin::phi_map(&q, &h, lo, hi) {
        Ok(t) => t,
        Err(e @ DynkinError::InductionConflict { .. }) => {
            verdict(&mut v, "bijection", false);
            let results = json!({ "coxeter": cox, "window": [lo, hi], "gamma": gammas, "conflict": e.to_string() });
            return Ok((results, v));
        }
        Err(e) => return Err(dyn_err(e)),
    };
    let base = (0..q.rank()).all(|i| table.get(i, h.xi[i]).is_some_and(|r| r.root == gammas[i] && r.j == 0));
    let positive = table.rows.iter().all(|r| roots.contains(&r.root));
    let onto = roots.iter().all(|b| table.preimage(b, 0).is_some());
    verdict(&mut v, "base_row_is_gamma", base);
    verdict(&mut v, "bijection", positive && onto);
    let results = json!({ "coxeter": cox, "window": [lo, hi], "gamma": gammas, "positive_roots": roots, "table": table });
    Ok((results, v))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct G0Config {
    #[serde(rename = "type", default = "type_a2")]
    kind: String,
    #[serde(default = "arrow01")]
    arrows: Vec<(usize, usize)>,
    #[serde(default)]
    xi: Option<Vec<i64>>,
}

impl JobConfig for G0Config {}

fn verify_g0(c: G0Config) -> Result<(Value, Verdicts), CliError> {
    let (q, h) = QuiverConfig { kind: c.kind, arrows: c.arrows, xi: c.xi }.build().map_err(dyn_err)?;
    let mut v = Verdicts::new();
    match dynkin::verify_thm_g0(&q, &h) {
        Ok(r) => {
            verdict(&mut v, "pole_order_at_most_one", r.max_pole_order <= 1);
            verdict(&mut v, "cartan_and_quiver", r.passed);
            Ok((serde_json::to_value(&r).expect("json"), v))
        }
        Err(e @ DynkinError::HypothesisViolated { .. }) => {
            verdict(&mut v, "pole_order_at_most_one", false);
            Ok((json!({ "failure": e.to_string() }), v))
        }
        Err(e @ DynkinError::IdentityViolation(_)) => {
            verdict(&mut v, "cartan_and_quiver", false);
            Ok((json!({ "failure": e.to_string() }), v))
        }
        Err(e) => Err(dyn_err(e)),
    }
}

// ---- verify-sl2

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sl2Config {
    #[serde(default = "a1")]
    cartan: CartanConfig,
    #[serde(default)]
    quiver: Option<Vec<Vec<u32>>>,
    #[serde(default = "lambda2")]
    lambda: Vec<i64>,
    #[serde(default)]
    beta: Option<Vec<i64>>,
    #[serde(default)]
    max_height: Option<usize>,
    /// q-degree cutoff of the resolution comparison.
    #[serde(default = "c12")]
    cutoff: i64,
    /// Degree bound for the quotient computation.
    #[serde(default = "c40")]
    build_cutoff: i64,
    /// Resolution comparison; absent means only for rank 1.
    #[serde(default)]
    resolution: Option<bool>,
}

impl JobConfig for Sl2Config {
    fn cutoff_mut(&mut self) -> Option<&mut i64> {
        Some(&mut self.cutoff)
    }
    fn validate(&self) -> Result<(), String> {
        if self.build_cutoff <= 0 {
            return Err("build_cutoff must be positive".into());
        }
        Ok(())
    }
}

fn verify_sl2(c: Sl2Config) -> Result<(Value, Verdicts), CliError> {
    let d = build_cartan(&c.cartan)?;
    check_lambda(&d, &c.lambda)?;
    let q = build_q(&d, &c.quiver)?;
    let betas = select_betas(d.rank(), &c.beta, c.max_height, true, (0..=3).flat_map(|k| contents(d.rank(), k)).collect())?;
    let fam = CyclotomicFamily::new(d.clone(), q, c.lambda.clone(), c.build_cutoff).map_err(cyc_err)?;
    let with_resolution = c.resolution.unwrap_or(d.rank() == 1);
    let (mut sl2_ok, mut comm_ok, mut res_ok) = (true, true, true);
    let mut rows = Vec::new();
    for b in &betas {
        let alg = fam.get(b).map_err(cyc_err)?;
        let modules: Vec<ModuleRep> = if b.iter().all(|&x| x == 0) {
            vec![ModuleRep::trivial(b.len())]
        } else {
            alg.live_words().iter().map(|w| ModuleRep::projective(&alg, w)).collect()
        };
        let mut checks = Vec::new();
        for (k, m) in modules.iter().enumerate() {
            for i in 0..d.rank() {
                match sl2_identity_check(&fam, i, m) {
                    Ok(r) => checks.push(json!({
                        "module": k, "kind": "sl2", "i": i, "lambda_i": r.lambda_i, "branch": r.branch,
                        "lhs": character(&r.lhs), "rhs": character(&r.rhs), "passed": r.passed,
                    })),
                    Err(e @ CyclotomicError::IdentityViolation { .. }) => {
                        sl2_ok = false;
                        checks.push(json!({ "module": k, "kind": "sl2", "i": i, "passed": false, "failure": e.to_string() }));
                    }
                    Err(e) => return Err(cyc_err(e)),
                }
                for j in 0..d.rank() {
                    match kgroup_commutator_check(&fam, i, j, m) {
                        Ok(r) => checks.push(json!({
                            "module": k, "kind": "commutator", "i": i, "j": j,
                            "commutator": character(&r.commutator), "expected": character(&r.expected), "passed": r.passed,
                        })),
                        Err(e @ CyclotomicError::IdentityViolation { .. }) => {
                            comm_ok = false;
                            checks.push(
                                json!({ "module": k, "kind": "commutator", "i": i, "j": j, "passed": false, "failure": e.to_string() }),
                            );
                        }
                        Err(e) => return Err(cyc_err(e)),
                    }
                }
            }
        }
        let mut resolution = Vec::new();
        if with_resolution {
            for i in 0..d.rank() {
                match resolution_dim_check(&fam, b, i, c.cutoff) {
                    Ok(r) => {
                        res_ok &= r.passed;
                        resolution.push(json!({ "i": i, "f": lp(&r.f), "k0": lp(&r.k0), "k1": lp(&r.k1), "passed": r.passed }));
                    }
                    Err(e @ CyclotomicError::IdentityViolation { .. }) => {
                        res_ok = false;
                        resolution.push(json!({ "i": i, "passed": false, "failure": e.to_string() }));
                    }
                    Err(e) => return Err(cyc_err(e)),
                }
            }
        }
        rows.push(json!({ "beta": b, "modules": modules.len(), "checks": checks, "resolution": resolution }));
    }
    let mut v = Verdicts::new();
    verdict(&mut v, "sl2_identities", sl2_ok);
    verdict(&mut v, "commutator_identity", comm_ok);
    if with_resolution {
        verdict(&mut v, "resolution_shadow", res_ok);
    }
    Ok((json!({ "weights": rows }), v))
}
