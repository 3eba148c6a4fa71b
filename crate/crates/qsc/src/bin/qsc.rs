//! `qsc` command-line front end.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qsc::ads3::{self, AbaSeed, AdS3Roots, Auxiliary, DressingModel};
use qsc::analytic::{self, Coupling, SourceF, SourceKind};
use qsc::exact::GaussRat;
use qsc::hubbard::{self, HubbardRoots, HubbardSpec, LiebWuRoots};
use qsc::newton::NewtonOptions;
use qsc::qsystem::{self, BSeed, QSystem, QSystemJson};
use qsc::suite::{self, SuiteOptions};
use qsc::tysystem::{self, THook};
use qsc::{ed, Error};

#[derive(Parser)]
#[command(name = "qsc", version, about = "Q-system, Bethe ansatz and spectral-curve checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 7, global = true)]
    rng_seed: u64,
    /// Overrides the default floating-point tolerance of the command.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Audit the QQ-relations of a seed, a Q-system file, or random seeds.
    CheckQq(QSource),
    /// Generate a Q-system from a seed.
    GenQsystem {
        #[command(flatten)]
        source: QSource,
        /// Add the corner functions Q_{12|0} and Q_{0|12}.
        #[arg(long)]
        corners: bool,
    },
    /// Build Wronskian T-functions and check the Hirota equation.
    CheckHirota {
        #[command(flatten)]
        source: QSource,
        /// Hook window as `A,S`.
        #[arg(long, value_parser = pair::<i64>, default_value = "4,4")]
        window: (i64, i64),
    },
    /// Character solution for twists given as `re,im` rationals.
    Character {
        #[arg(long, allow_hyphen_values = true)]
        sx: String,
        #[arg(long, allow_hyphen_values = true)]
        sy: String,
        /// Hook window as `A,S`.
        #[arg(long, value_parser = pair::<i64>, default_value = "3,3")]
        window: (i64, i64),
    },
    /// Solve the nested Hubbard Bethe equations from a JSON spec with a seed.
    SolveNested {
        /// Path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Solve the Lieb-Wu equations for given quantum numbers.
    SolveLiebwu(LiebWuArgs),
    /// Exact-diagonalization spectra of the periodic Hubbard chain.
    Ed {
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        u: f64,
        /// Single sector `N_up,N_down`; all sectors when absent.
        #[arg(long, value_parser = pair::<usize>)]
        sector: Option<(usize, usize)>,
    },
    /// Match every real-root Lieb-Wu state of a chain against exact diagonalization.
    Compare {
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        u: f64,
    },
    /// Check the truncated f-product identities at random off-cut points.
    CheckF {
        #[arg(long, default_value_t = 0.8)]
        h: f64,
        /// Inhomogeneity rapidities of the Ext source.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.3, -0.7, 1.1])]
        u0: Vec<f64>,
        #[arg(long = "N", value_delimiter = ',', default_values_t = [4, 16])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Case-B Pμ residuals built on a solved nested configuration.
    PmuCheck {
        /// Nested spec as for `solve-nested`; a built-in configuration when absent.
        #[arg(long)]
        input: Option<String>,
        #[arg(long = "N", default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// AdS3 Bethe residuals of given roots, or of a solution found from a seed.
    Ads3Residuals {
        /// Path or inline JSON: roots (`hcoup`, `L`, `xp`, ...) or a solve request (`h`, `L`, `seed`).
        #[arg(long)]
        input: String,
    },
    /// Double-crossing structure of a dressing model against massive roots.
    Ads3Crossing {
        #[arg(long, default_value_t = 0.7)]
        h: f64,
        #[arg(long = "L", default_value_t = 3)]
        l: usize,
        /// Left massive rapidities.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.4])]
        u: Vec<f64>,
        /// Right massive rapidities.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ub: Vec<f64>,
        /// Test point `re,im`.
        #[arg(long, value_parser = pair::<f64>, allow_hyphen_values = true, default_value = "0.3,0.6")]
        point: (f64, f64),
        #[arg(long, value_enum, default_value_t = Model::Toy)]
        model: Model,
    },
    /// Run the acceptance battery.
    Suite {
        /// Comma-separated criterion names.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Constant,
    Toy,
}

#[derive(Args)]
struct QSource {
    /// Seed or Q-system as a path or inline JSON.
    #[arg(long, conflicts_with = "random")]
    seed: Option<String>,
    /// Number of random seeds.
    #[arg(long)]
    random: Option<usize>,
    /// Maximal seed degree for random seeds.
    #[arg(long, default_value_t = 3)]
    degree: usize,
}

#[derive(Args)]
struct LiebWuArgs {
    /// Path or inline JSON `{"L","u","N","M","I","J"}`; replaces the flags below.
    #[arg(long)]
    input: Option<String>,
    #[arg(long = "L", required_unless_present = "input")]
    l: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    u: Option<f64>,
    #[arg(long = "N", required_unless_present = "input")]
    n: Option<usize>,
    #[arg(long = "M", default_value_t = 0)]
    m: usize,
    #[arg(long = "I", value_delimiter = ',', allow_hyphen_values = true)]
    i: Vec<i64>,
    #[arg(long = "J", value_delimiter = ',', allow_hyphen_values = true)]
    j: Vec<i64>,
    /// Match the energy against the ED spectrum of sector (N−M, M).
    #[arg(long)]
    compare_ed: bool,
}

/// Failure with its exit code: 1 numeric, 2 input, 3 oracle mismatch.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::ShellViolation(_) | Error::DegenerateTwist(_) | Error::OnCut | Error::SectorTooLarge(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: msg.to_string() }
}

/// Command result: JSON payload, optional table for CSV and pretty output, exit code.
struct Output {
    value: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    code: u8,
}

impl Output {
    fn new(value: Value, pass: bool) -> Self {
        Output { value, table: None, code: if pass { 0 } else { 1 } }
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

fn pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated values, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad value {x:?}"));
    Ok((p(a)?, p(b)?))
}

fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))? };
    serde_json::from_str(&text).map_err(|e| input_error(format!("malformed JSON: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn load_systems(src: &QSource, rng_seed: u64) -> Result<Vec<QSystem>, Failure> {
    match (&src.seed, src.random) {
        (Some(s), _) => {
            let v: Value = read_json(s)?;
            if v.get("Q").is_some() {
                let j: QSystemJson = serde_json::from_value(v).map_err(input_error)?;
                Ok(vec![QSystem::from_json(&j)?])
            } else {
                let seed: BSeed = serde_json::from_value(v).map_err(input_error)?;
                Ok(vec![qsystem::generate_from_seed(&seed)?])
            }
        }
        (None, Some(n)) => Ok(suite::random_systems(rng_seed, n, src.degree)?.0),
        (None, None) => Err(input_error("give --seed or --random")),
    }
}

fn cmd_check_qq(src: &QSource, g: &Global) -> Result<Output, Failure> {
    let systems = load_systems(src, g.rng_seed)?;
    let reports: Vec<_> = systems.iter().map(qsystem::check_qq).collect();
    let pass = reports.iter().all(|r| r.pass);
    let rows = reports
        .iter()
        .enumerate()
        .flat_map(|(k, r)| r.families.iter().map(move |f| vec![k.to_string(), f.name.to_string(), f.residuals.len().to_string(), f.pass().to_string()]))
        .collect();
    let value = json!({ "pass": pass, "systems": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
    Ok(Output::new(value, pass).table(vec!["system", "family", "residuals", "pass"], rows))
}

fn cmd_gen(src: &QSource, corners: bool, g: &Global) -> Result<Output, Failure> {
    let systems = load_systems(src, g.rng_seed)?;
    let systems = if corners { systems.iter().map(qsystem::complete_corners).collect::<qsc::Result<Vec<_>>>()? } else { systems };
    let rows = systems
        .iter()
        .enumerate()
        .flat_map(|(k, q)| q.to_json().q.into_iter().map(move |(key, f)| vec![k.to_string(), key, f.to_string()]))
        .collect();
    let value = if systems.len() == 1 { to_value(&systems[0].to_json()) } else { Value::Array(systems.iter().map(|q| to_value(&q.to_json())).collect()) };
    Ok(Output::new(value, true).table(vec!["system", "component", "value"], rows))
}

fn cmd_check_hirota(src: &QSource, w: (i64, i64), g: &Global) -> Result<Output, Failure> {
    let systems = load_systems(src, g.rng_seed)?;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (k, q) in systems.iter().enumerate() {
        let t = tysystem::wronskian_t(q, w)?;
        let report = tysystem::check_hirota(&t);
        let y = tysystem::y11_y22_residual(&t, q)?.is_zero();
        let failing = report.failing_cells();
        pass &= report.pass && y;
        rows.push(vec![k.to_string(), report.residuals.len().to_string(), report.pass.to_string(), y.to_string()]);
        entries.push(json!({ "cells": report.residuals.len(), "hirota": report.pass, "failing_cells": failing, "y11_y22": y, "T": t.to_json() }));
    }
    Ok(Output::new(json!({ "pass": pass, "systems": entries }), pass).table(vec!["system", "cells", "hirota", "y11_y22"], rows))
}

fn cmd_character(sx: &str, sy: &str, w: (i64, i64)) -> Result<Output, Failure> {
    let sx = GaussRat::parse_pair(sx).map_err(input_error)?;
    let sy = GaussRat::parse_pair(sy).map_err(input_error)?;
    let (q, t): (QSystem, THook) = tysystem::character_solution(&sx, &sy, w)?;
    let hirota = tysystem::check_hirota(&t).pass;
    let shift = t.t.values().all(|f| &f.shift(2) == f);
    let dual = tysystem::wronskian_t(&qsystem::hodge(&q), w)? == t;
    let pass = hirota && shift && dual;
    let value = json!({ "pass": pass, "hirota": hirota, "shift_invariant": shift, "hodge_trivial": dual, "Q": q.to_json(), "T": t.to_json() });
    let rows = vec![vec![hirota.to_string(), shift.to_string(), dual.to_string()]];
    Ok(Output::new(value, pass).table(vec!["hirota", "shift_invariant", "hodge_trivial"], rows))
}

/// Nested spec: homogeneous with `L` sites, or inhomogeneous from `inhom` pairs or shell rapidities `u0`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NestedInput {
    h: f64,
    #[serde(rename = "L")]
    l: Option<usize>,
    inhom: Option<Vec<(Complex64, Complex64)>>,
    u0: Option<Vec<Complex64>>,
    #[serde(default = "one")]
    x1: Complex64,
    #[serde(default = "one")]
    y1: Complex64,
    seed: HubbardRoots,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn nested_spec(inp: &NestedInput) -> Result<HubbardSpec, Failure> {
    let c = Coupling::new(inp.h)?;
    let inhom = match (&inp.inhom, &inp.u0) {
        (Some(p), None) => Some(p.clone()),
        (None, Some(us)) => Some(us.iter().map(|&u| analytic::shell_pair(u, c)).collect::<qsc::Result<Vec<_>>>()?),
        (None, None) => None,
        _ => return Err(input_error("give at most one of inhom and u0")),
    };
    match (inhom, inp.l) {
        (Some(p), None) => Ok(HubbardSpec::with_inhomogeneities(c, p, inp.x1, inp.y1)?),
        (None, Some(l)) => Ok(HubbardSpec::homogeneous(c, l, inp.x1, inp.y1)),
        _ => Err(input_error("give exactly one of L and inhomogeneities")),
    }
}

fn solve_nested_input(inp: &NestedInput) -> Result<(HubbardSpec, HubbardRoots), Failure> {
    let spec = nested_spec(inp)?;
    let s = &inp.seed;
    let roots = hubbard::solve_nested(&spec, (s.x1e.len(), s.u11.len(), s.x112.len()), s, NewtonOptions::default())?;
    Ok((spec, roots))
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Plain decimal for moderate magnitudes, exponent notation for tiny or huge ones.
fn num(x: f64) -> String {
    if x != 0.0 && x.is_finite() && !(1e-4..1e8).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn c_str(z: Complex64) -> String {
    let im = num(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", num(z.re))
}

fn cmd_solve_nested(input: &str) -> Result<Output, Failure> {
    let inp: NestedInput = read_json(input)?;
    let (spec, roots) = solve_nested_input(&inp)?;
    let res = hubbard::nested_residuals(&spec, &roots)?;
    let mut rows = Vec::new();
    for (node, rs) in [("x1e", &roots.x1e), ("u11", &roots.u11), ("x112", &roots.x112)] {
        rows.extend(rs.iter().map(|z| vec![node.to_string(), c_str(*z)]));
    }
    let value = json!({ "roots": roots, "residuals": res, "residual": max_norm(&res) });
    Ok(Output::new(value, true).table(vec!["node", "root"], rows))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiebWuInput {
    #[serde(rename = "L")]
    l: usize,
    u: f64,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M", default)]
    m: usize,
    #[serde(rename = "I", default)]
    i: Vec<i64>,
    #[serde(rename = "J", default)]
    j: Vec<i64>,
}

#[derive(Serialize)]
struct LiebWuOutput {
    #[serde(rename = "L")]
    l: usize,
    u: f64,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "I")]
    i: Vec<i64>,
    #[serde(rename = "J")]
    j: Vec<i64>,
    k: Vec<Complex64>,
    lambda: Vec<Complex64>,
    #[serde(rename = "E")]
    e: Complex64,
    #[serde(rename = "P")]
    p: f64,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ed: Option<ed::MatchReport>,
}

fn cmd_solve_liebwu(a: &LiebWuArgs, g: &Global) -> Result<Output, Failure> {
    let inp = match &a.input {
        Some(s) => read_json::<LiebWuInput>(s)?,
        None => LiebWuInput { l: a.l.unwrap_or_default(), u: a.u.unwrap_or_default(), n: a.n.unwrap_or_default(), m: a.m, i: a.i.clone(), j: a.j.clone() },
    };
    let roots: LiebWuRoots = hubbard::solve_liebwu(inp.l, inp.u, inp.n, inp.m, &inp.i, &inp.j)?;
    let em = hubbard::energy_momentum(inp.l, inp.u, &roots);
    let residual = max_norm(&hubbard::liebwu_residuals(inp.l, inp.u, &roots)?);
    let ed = if a.compare_ed {
        let spec = ed::sector_spectrum(inp.l, inp.u, (inp.n - inp.m, inp.m))?;
        Some(ed::match_spectrum(&[em.e.re], &spec, g.tol.unwrap_or(1e-8)))
    } else {
        None
    };
    let code = if ed.as_ref().is_some_and(|r| !r.pass) { 3 } else { 0 };
    let mut rows: Vec<Vec<String>> = roots.k.iter().map(|z| vec!["k".into(), c_str(*z)]).collect();
    rows.extend(roots.lambda.iter().map(|z| vec!["lambda".into(), c_str(*z)]));
    rows.push(vec!["E".into(), c_str(em.e)]);
    rows.push(vec!["P".into(), num(em.p)]);
    rows.push(vec!["residual".into(), num(residual)]);
    if let Some(r) = &ed {
        rows.push(vec!["ed_gap".into(), num(r.entries[0].gap)]);
    }
    let out = LiebWuOutput { l: inp.l, u: inp.u, n: inp.n, m: inp.m, i: inp.i, j: inp.j, k: roots.k, lambda: roots.lambda, e: em.e, p: em.p, residual, ed };
    Ok(Output { value: to_value(&out), table: Some((vec!["quantity", "value"], rows)), code })
}

fn cmd_ed(l: usize, u: f64, sector: Option<(usize, usize)>) -> Result<Output, Failure> {
    let spectra = match sector {
        Some(s) => vec![(s, ed::sector_spectrum(l, u, s)?)],
        None => ed::all_sector_spectra(l, u)?,
    };
    let mut rows = Vec::new();
    let mut sectors = Vec::new();
    for ((a, b), ev) in &spectra {
        rows.extend(ev.iter().enumerate().map(|(k, e)| vec![a.to_string(), b.to_string(), k.to_string(), num(*e)]));
        sectors.push(json!({ "n_up": a, "n_down": b, "dim": ev.len(), "eigenvalues": ev }));
    }
    Ok(Output::new(json!({ "L": l, "u": u, "sectors": sectors }), true).table(vec!["n_up", "n_down", "index", "energy"], rows))
}

fn cmd_compare(l: usize, u: f64, g: &Global) -> Result<Output, Failure> {
    let tol = g.tol.unwrap_or(1e-8);
    let mut rows = Vec::new();
    let mut states = Vec::new();
    let mut pass = true;
    for n in 0..=l {
        for m in 0..=n / 2 {
            let spec = ed::sector_spectrum(l, u, (n - m, m))?;
            let mut found = suite::liebwu_sector_energies(l, u, n, m);
            found.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
            for (i, j, e) in found {
                let r = ed::match_spectrum(&[e], &spec, tol);
                let entry = &r.entries[0];
                pass &= r.pass;
                rows.push(vec![n.to_string(), m.to_string(), format!("{i:?}"), format!("{j:?}"), num(e), num(entry.gap)]);
                states.push(json!({ "N": n, "M": m, "I": i, "J": j, "E": e, "nearest": entry.nearest, "gap": entry.gap }));
            }
        }
    }
    let value = json!({ "L": l, "u": u, "pass": pass, "states": states });
    Ok(Output { value, table: Some((vec!["N", "M", "I", "J", "E", "gap"], rows)), code: if pass { 0 } else { 3 } })
}

fn cmd_check_f(h: f64, u0: &[f64], ns: &[usize], points: usize, g: &Global) -> Result<Output, Failure> {
    let c = Coupling::new(h)?;
    let pairs = u0.iter().map(|&u| analytic::shell_pair(Complex64::new(u, 0.0), c)).collect::<qsc::Result<Vec<_>>>()?;
    let (yp, ym) = pairs.into_iter().unzip();
    let f = SourceF::new(c, SourceKind::Ext { yp, ym })?;
    let worst = suite::truncation_errors(&f, ns, points, &mut suite::seeded_rng(g.rng_seed, 5))?;
    let tol = g.tol.unwrap_or(1e-12);
    let pass = worst.iter().all(|w| *w < tol);
    let rows = vec![vec![num(worst[0]), num(worst[1]), num(worst[2])]];
    let value = json!({ "pass": pass, "N": ns, "points": points, "f": worst[0], "mu": worst[1], "omega": worst[2] });
    Ok(Output::new(value, pass).table(vec!["f", "mu", "omega"], rows))
}

fn cmd_pmu(input: &Option<String>, n: usize, points: usize, g: &Global) -> Result<Output, Failure> {
    let (spec, roots) = match input {
        Some(s) => solve_nested_input(&read_json(s)?)?,
        None => suite::solved_nested_configuration()?,
    };
    let worst = suite::pmu_max_residual(&spec, &roots, n, points, &mut suite::seeded_rng(g.rng_seed, 7))?;
    let pass = worst < g.tol.unwrap_or(1e-8);
    let value = json!({ "pass": pass, "N": n, "points": points, "roots": roots, "max_residual": worst });
    Ok(Output::new(value, pass).table(vec!["N", "points", "max_residual"], vec![vec![n.to_string(), points.to_string(), num(worst)]]))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbaRequest {
    h: f64,
    #[serde(rename = "L")]
    l: usize,
    seed: AbaSeed,
}

fn cmd_ads3_residuals(input: &str, g: &Global) -> Result<Output, Failure> {
    let v: Value = read_json(input)?;
    let d = DressingModel::default();
    let roots = if v.get("hcoup").is_some() {
        let r: AdS3Roots = serde_json::from_value(v).map_err(input_error)?;
        r.validate()?;
        r
    } else {
        let req: AbaRequest = serde_json::from_value(v).map_err(input_error)?;
        ads3::solve_aba(Coupling::new(req.h)?, req.l, &req.seed, &d, NewtonOptions::default())?
    };
    let res = ads3::aba_residuals(&roots, &d)?;
    let residual = max_norm(&res);
    let momentum = roots.momentum_defect();
    let pass = residual < g.tol.unwrap_or(1e-10);
    let rows = res.iter().enumerate().map(|(k, z)| vec![k.to_string(), c_str(*z)]).collect();
    let value = json!({ "pass": pass, "roots": roots, "residuals": res, "residual": residual, "momentum_defect": momentum });
    Ok(Output::new(value, pass).table(vec!["equation", "residual"], rows))
}

fn cmd_ads3_crossing(h: f64, l: usize, u: &[f64], ub: &[f64], point: (f64, f64), model: Model, g: &Global) -> Result<Output, Failure> {
    let re = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    let roots = AdS3Roots::from_rapidities(Coupling::new(h)?, l, &re(u), &re(ub), Auxiliary::default())?;
    let at = Complex64::new(point.0, point.1);
    let tol = g.tol.unwrap_or(1e-8);
    let report = match model {
        Model::Constant => ads3::crossing_structure_check(&roots, at, |_, _| Complex64::new(1.0, 0.0), tol)?,
        Model::Toy => ads3::crossing_structure_check(&roots, at, ads3::toy_log_sigma(&roots), tol)?,
    };
    let rows = vec![vec![c_str(report.factor), c_str(report.measured[0]), c_str(report.measured[1]), report.logarithmic.to_string(), report.pass.to_string()]];
    Ok(Output::new(to_value(&report), report.pass).table(vec!["factor", "measured_plus", "measured_minus", "logarithmic", "pass"], rows))
}

fn cmd_suite(only: &Option<Vec<String>>, g: &Global) -> Result<Output, Failure> {
    let report = suite::run(&SuiteOptions { rng_seed: g.rng_seed, tol: g.tol, only: only.clone() })?;
    if let Some(f) = report.first_failure() {
        eprintln!("first failing criterion: {} ({})", f.id, f.name);
    }
    let rows = report.criteria.iter().map(|c| vec![c.id.to_string(), c.name.clone(), if c.pass { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()]).collect();
    Ok(Output::new(to_value(&report), report.pass).table(vec!["id", "name", "status", "detail"], rows))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(k, x)| flatten(&format!("{prefix}.{k}"), x, out)),
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn render(out: &Output, format: Format) -> String {
    let (header, rows) = match &out.table {
        Some((h, r)) => (h.clone(), r.clone()),
        None => {
            let mut rows = Vec::new();
            flatten("", &out.value, &mut rows);
            (vec!["key", "value"], rows)
        }
    };
    match format {
        Format::Json => serde_json::to_string_pretty(&out.value).expect("JSON values serialize") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).and_then(|_| rows.iter().try_for_each(|r| w.write_record(r))).expect("in-memory CSV write");
            String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
        }
        Format::Pretty => {
            let widths: Vec<usize> = (0..header.len()).map(|k| rows.iter().map(|r| r[k].chars().count()).chain([header[k].len()]).max().unwrap_or(0)).collect();
            let line = |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string() + "\n";
            let mut s = line(header.clone());
            for r in &rows {
                s += &line(r.iter().map(String::as_str).collect());
            }
            s
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::CheckQq(src) => cmd_check_qq(src, g),
        Command::GenQsystem { source, corners } => cmd_gen(source, *corners, g),
        Command::CheckHirota { source, window } => cmd_check_hirota(source, *window, g),
        Command::Character { sx, sy, window } => cmd_character(sx, sy, *window),
        Command::SolveNested { input } => cmd_solve_nested(input),
        Command::SolveLiebwu(a) => cmd_solve_liebwu(a, g),
        Command::Ed { l, u, sector } => cmd_ed(*l, *u, *sector),
        Command::Compare { l, u } => cmd_compare(*l, *u, g),
        Command::CheckF { h, u0, n, points } => cmd_check_f(*h, u0, n, *points, g),
        Command::PmuCheck { input, n, points } => cmd_pmu(input, *n, *points, g),
        Command::Ads3Residuals { input } => cmd_ads3_residuals(input, g),
        Command::Ads3Crossing { h, l, u, ub, point, model } => cmd_ads3_crossing(*h, *l, u, ub, *point, *model, g),
        Command::Suite { only } => cmd_suite(only, g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("QSC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli) {
        Ok(out) => {
            // A closed downstream pipe is not an error for the computation.
            let _ = std::io::stdout().lock().write_all(render(&out, cli.global.format).as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
