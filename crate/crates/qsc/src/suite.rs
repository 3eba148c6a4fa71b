//! Acceptance battery: ten criteria run as a deterministic, seeded suite.

use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ads3::{self, AbaSeed, AdS3Roots, Auxiliary, DressingModel};
use crate::analytic::{self, Coupling, Sheet, SourceF, SourceKind, ZhukPoint};
use crate::exact::GaussRat;
use crate::hubbard::{self, HubbardRoots, HubbardSpec};
use crate::newton::NewtonOptions;
use crate::qsystem::{check_qq, generate_from_seed, hodge, BSeed, QSystem};
use crate::tysystem::{character_solution, check_hirota, wronskian_t, y11_y22_residual};
use crate::{ed, Result};

/// Criterion names accepted by `--only`, in run order.
pub const CRITERIA: [&str; 10] = ["qq", "hodge", "hirota", "liebwu", "truncation", "baxter", "pmu", "character", "ads3", "ed"];

/// Suite controls.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub rng_seed: u64,
    /// Overrides every floating-point tolerance when set.
    pub tol: Option<f64>,
    /// Restricts the run to the named criteria.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { rng_seed: 7, tol: None, only: None }
    }
}

impl SuiteOptions {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        seeded_rng(self.rng_seed, salt)
    }
}

/// Outcome of one criterion. Timing is checked but not reported, so output is reproducible.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub rng_seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| !c.pass)
    }
}

fn outcome(id: usize, pass: bool, detail: String) -> CriterionResult {
    CriterionResult { id, name: CRITERIA[id - 1].to_string(), pass, detail }
}

fn from_result(id: usize, r: Result<(bool, String)>) -> CriterionResult {
    match r {
        Ok((pass, detail)) => outcome(id, pass, detail),
        Err(e) => outcome(id, false, format!("error: {e}")),
    }
}

/// Runs the selected criteria in parallel and reports them in id order.
pub fn run(opts: &SuiteOptions) -> Result<SuiteReport> {
    let selected: Vec<usize> = match &opts.only {
        None => (1..=10).collect(),
        Some(names) => {
            let mut ids = Vec::new();
            for n in names {
                let id = CRITERIA.iter().position(|c| c == n).ok_or_else(|| crate::Error::InvalidInput(format!("unknown criterion {n}")))?;
                ids.push(id + 1);
            }
            ids.sort_unstable();
            ids.dedup();
            ids
        }
    };
    let criteria: Vec<CriterionResult> = selected.into_par_iter().map(|id| run_one(id, opts)).collect();
    let pass = criteria.iter().all(|c| c.pass);
    Ok(SuiteReport { rng_seed: opts.rng_seed, criteria, pass })
}

pub fn run_one(id: usize, opts: &SuiteOptions) -> CriterionResult {
    match id {
        1 => from_result(1, qq_suite(opts)),
        2 => from_result(2, hodge_suite(opts)),
        3 => from_result(3, hirota_suite(opts)),
        4 => from_result(4, liebwu_vs_ed(opts)),
        5 => from_result(5, truncation_identities(opts)),
        6 => from_result(6, baxter_projections(opts)),
        7 => from_result(7, pmu_case_b(opts)),
        8 => from_result(8, character_checks(opts)),
        9 => from_result(9, ads3_checks(opts)),
        10 => from_result(10, ed_self_checks(opts)),
        _ => outcome(id.clamp(1, 10), false, format!("no criterion {id}")),
    }
}

/// Deterministic RNG stream for one consumer of a run seed.
pub fn seeded_rng(rng_seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(rng_seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// `count` generated Q-systems with seed degrees cycling through `1..=max_degree`.
///
/// Constant seeds always give a vanishing `Q_{12|12}`, so degree 0 is excluded. Other
/// non-generic seeds are redrawn; the number of redraws is returned.
pub fn random_systems(rng_seed: u64, count: usize, max_degree: usize) -> Result<(Vec<QSystem>, usize)> {
    if max_degree == 0 {
        return Err(crate::Error::InvalidInput("constant seeds are always degenerate; use degree >= 1".into()));
    }
    let mut rng = seeded_rng(rng_seed, 1);
    let mut systems = Vec::with_capacity(count);
    let mut redrawn = 0;
    while systems.len() < count {
        match generate_from_seed(&BSeed::random(&mut rng, 1 + systems.len() % max_degree)) {
            Ok(q) => systems.push(q),
            Err(crate::Error::Degenerate(_)) if redrawn < 1000 => redrawn += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((systems, redrawn))
}

/// The 20 seeded Q-systems shared by criteria 1–3.
pub fn seeded_systems(opts: &SuiteOptions) -> Result<(Vec<QSystem>, usize)> {
    random_systems(opts.rng_seed, 20, 3)
}

fn qq_suite(opts: &SuiteOptions) -> Result<(bool, String)> {
    let start = Instant::now();
    let (systems, redrawn) = seeded_systems(opts)?;
    let failing: Vec<usize> = systems.iter().enumerate().filter(|(_, q)| !check_qq(q).pass).map(|(k, _)| k).collect();
    let elapsed = start.elapsed();
    let pass = failing.is_empty() && elapsed < Duration::from_secs(30);
    Ok((pass, format!("{} systems ({redrawn} degenerate seeds redrawn), failing seeds {:?}, within time budget: {}", systems.len(), failing, elapsed < Duration::from_secs(30))))
}

fn hodge_suite(opts: &SuiteOptions) -> Result<(bool, String)> {
    let (systems, _) = seeded_systems(opts)?;
    let mut bad = 0;
    for q in &systems {
        let hh = hodge(&hodge(q));
        for a in 0..4u8 {
            for i in 0..4u8 {
                let expect = if (a.count_ones() + i.count_ones()) % 2 == 1 { -q.q(a, i) } else { q.q(a, i).clone() };
                if hh.q(a, i) != &expect {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{} systems x 16 components, {bad} mismatches", systems.len())))
}

fn hirota_suite(opts: &SuiteOptions) -> Result<(bool, String)> {
    let (systems, _) = seeded_systems(opts)?;
    let results: Vec<(bool, bool, bool)> = systems
        .par_iter()
        .map(|q| {
            let t = wronskian_t(q, (4, 4))?;
            // Low-degree seeds truncate the hook: T vanishes on the fat part and Y is 0/0.
            let nontrivial = [(1, 1), (2, 2)].iter().all(|&(a, s)| t.get(a, s).is_some_and(|f| !f.is_zero()));
            Ok((check_hirota(&t).pass, y11_y22_residual(&t, q)?.is_zero(), nontrivial))
        })
        .collect::<Result<_>>()?;
    let hirota_fail = results.iter().filter(|r| !r.0).count();
    let y_fail = results.iter().filter(|r| !r.1).count();
    let nontrivial = results.iter().filter(|r| r.2).count();
    Ok((
        hirota_fail == 0 && y_fail == 0 && nontrivial > 0,
        format!("{} systems, Hirota failures {hirota_fail}, Y11Y22 failures {y_fail} ({nontrivial} with nonvanishing T_11, T_22)", results.len()),
    ))
}

fn combinations(pool: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Real-root Lieb-Wu energies for every admissible quantum-number choice of a sector.
pub fn liebwu_sector_energies(l: usize, u: f64, n: usize, m: usize) -> Vec<(Vec<i64>, Vec<i64>, f64)> {
    let li = l as i64;
    let is: Vec<i64> = (-li..li).collect();
    let js: Vec<i64> = (-2..=2).collect();
    let jobs: Vec<(Vec<i64>, Vec<i64>)> = combinations(&is, n).into_iter().flat_map(|i| combinations(&js, m).into_iter().map(move |j| (i.clone(), j))).collect();
    jobs.into_par_iter()
        .filter_map(|(i, j)| {
            let roots = hubbard::solve_liebwu(l, u, n, m, &i, &j).ok()?;
            let real = roots.k.iter().chain(&roots.lambda).all(|z| z.im.abs() < 1e-9);
            real.then(|| (i, j, hubbard::energy_momentum(l, u, &roots).e.re))
        })
        .collect()
}

fn liebwu_vs_ed(opts: &SuiteOptions) -> Result<(bool, String)> {
    let start = Instant::now();
    let tol = opts.tol(1e-8);
    let mut found = 0usize;
    let mut worst = 0.0f64;
    let mut mismatches = Vec::new();
    for l in 2..=4usize {
        for u in [0.5, 1.0, 2.0] {
            for n in 0..=l {
                for m in 0..=n / 2 {
                    let spec = ed::sector_spectrum(l, u, (n - m, m))?;
                    for (i, j, e) in liebwu_sector_energies(l, u, n, m) {
                        let r = ed::match_spectrum(&[e], &spec, tol);
                        found += 1;
                        worst = worst.max(r.entries[0].gap);
                        if !r.pass {
                            mismatches.push(format!("L={l} u={u} N={n} M={m} I={i:?} J={j:?}"));
                        }
                    }
                }
            }
        }
    }
    // Free limit: with M = 0 the momenta are 2πI/L exactly.
    let u0 = 1e-8;
    let free_tol = opts.tol(1e-6);
    let ed_tol = opts.tol(1e-4);
    let mut free_worst = 0.0f64;
    let mut free_ed_worst = 0.0f64;
    let mut free_count = 0usize;
    for l in 2..=4usize {
        let pool: Vec<i64> = (0..l as i64).collect();
        for n in 0..=l {
            let spec = ed::sector_spectrum(l, u0, (n, 0))?;
            for i in combinations(&pool, n) {
                let roots = hubbard::solve_liebwu(l, u0, n, 0, &i, &[])?;
                let e = hubbard::energy_momentum(l, u0, &roots).e.re;
                let formula = u0 * (l as f64 - 2.0 * n as f64) - 2.0 * i.iter().map(|&k| (2.0 * std::f64::consts::PI * k as f64 / l as f64).cos()).sum::<f64>();
                free_worst = free_worst.max((e - formula).abs());
                free_ed_worst = free_ed_worst.max(ed::match_spectrum(&[e], &spec, ed_tol).entries[0].gap);
                free_count += 1;
            }
        }
    }
    let in_time = start.elapsed() < Duration::from_secs(120);
    let pass = found > 0 && mismatches.is_empty() && free_worst < free_tol && free_ed_worst < ed_tol && in_time;
    Ok((
        pass,
        format!(
            "{found} real-root solutions, worst ED gap {worst:.3e}, mismatches {mismatches:?}; free limit {free_count} states, formula gap {free_worst:.3e}, ED gap {free_ed_worst:.3e}, within time budget: {in_time}"
        ),
    ))
}

/// Random point off the cut, away from the real segment `[−h, h]`.
fn random_point<R: Rng>(rng: &mut R, c: Coupling) -> ZhukPoint {
    loop {
        let u = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
        if u.im.abs() > 0.05 || u.re.abs() > c.h + 0.05 {
            let sheet = if rng.gen_bool(0.5) { Sheet::Outer } else { Sheet::Inner };
            return ZhukPoint::new(u, sheet);
        }
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Ext source with inhomogeneities at rapidities 0.3, −0.7 and 1.1.
pub fn test_source(c: Coupling) -> Result<SourceF> {
    let yp_ym: Vec<(Complex64, Complex64)> = [0.3, -0.7, 1.1].iter().map(|&u0| analytic::shell_pair(Complex64::new(u0, 0.0), c)).collect::<Result<_>>()?;
    let (yp, ym) = yp_ym.into_iter().unzip();
    SourceF::new(c, SourceKind::Ext { yp, ym })
}

/// Worst relative errors of the truncation identities for `f`, `μ` and `ω` over random off-cut points.
pub fn truncation_errors<R: Rng>(f: &SourceF, ns: &[usize], points: usize, rng: &mut R) -> Result<[f64; 3]> {
    let mut worst = [0.0f64; 3];
    for &n in ns {
        for _ in 0..points {
            let p = random_point(rng, f.c);
            let fv = f.eval(&p)?;
            let fn0 = analytic::truncated_f(f, n, &p)?.value;
            let fn2 = analytic::truncated_f(f, n, &ZhukPoint::outer(p.u + Complex64::i()))?.value;
            let far = f.eval(&ZhukPoint::outer(p.u + Complex64::new(0.0, (n + 1) as f64)))?;
            worst[0] = worst[0].max(rel(fn0 / fn2, fv / far));
            let (mu, om) = analytic::mu_omega(f, n, &p)?;
            let (mu_t, om_t) = analytic::mu_omega(f, n, &p.swapped())?;
            worst[1] = worst[1].max(rel(mu / mu_t, fv * fv));
            worst[2] = worst[2].max(rel(om / om_t, fv * fv));
        }
    }
    Ok(worst)
}

fn truncation_identities(opts: &SuiteOptions) -> Result<(bool, String)> {
    let tol = opts.tol(1e-12);
    let f = test_source(Coupling::new(0.8)?)?;
    let worst = truncation_errors(&f, &[4, 16], 200, &mut opts.rng(5))?;
    let pass = worst.iter().all(|w| *w < tol);
    Ok((pass, format!("N in {{4,16}}, 200 points each; worst relative errors f {:.3e}, mu {:.3e}, omega {:.3e}", worst[0], worst[1], worst[2])))
}

fn random_c<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}

fn baxter_projections(opts: &SuiteOptions) -> Result<(bool, String)> {
    let tol = opts.tol(1e-12);
    let mut rng = opts.rng(6);
    let mut worst = [0.0f64; 2];
    for _ in 0..100 {
        let fval = Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
        let p = [random_c(&mut rng), random_c(&mut rng) + 0.5];
        let p1 = random_c(&mut rng);
        let pstar = [p1, (1.0 / fval - fval - p1 * p[0]) / p[1]];
        let mu = Matrix2::new(random_c(&mut rng), random_c(&mut rng), random_c(&mut rng), random_c(&mut rng));
        let next = analytic::baxter_step(&mu, &p, &pstar, fval);
        let f2 = fval * fval;
        worst[0] = worst[0].max(rel(analytic::antisym_part(&next), analytic::antisym_part(&mu) / f2));
        worst[1] = worst[1].max(rel(analytic::sym_det(&next), analytic::sym_det(&mu) / (f2 * f2)));
    }
    let pass = worst.iter().all(|w| *w < tol);
    Ok((pass, format!("100 random inputs; worst relative errors antisymmetric {:.3e}, symmetric det {:.3e}", worst[0], worst[1])))
}

/// Inhomogeneous nested configuration shared by the Pμ criterion and the examples.
pub fn solved_nested_configuration() -> Result<(HubbardSpec, HubbardRoots)> {
    let c = Coupling::new(0.8)?;
    let one = Complex64::new(1.0, 0.0);
    let inhom = [0.2, -0.5].iter().map(|&u0| analytic::shell_pair(Complex64::new(u0, 0.0), c)).collect::<Result<Vec<_>>>()?;
    let spec = HubbardSpec::with_inhomogeneities(c, inhom, one, one)?;
    let seed = HubbardRoots { x1e: vec![Complex64::new(-24.0, 0.3)], u11: vec![Complex64::new(-5.5, 0.1)], x112: vec![Complex64::new(-0.3, 0.01)] };
    let roots = hubbard::solve_nested(&spec, (1, 1, 1), &seed, NewtonOptions::default())?;
    Ok((spec, roots))
}

/// Max case-B Pμ residual of the exact construction built on a nested solution, with an Ext source.
pub fn pmu_max_residual<R: Rng>(spec: &HubbardSpec, roots: &HubbardRoots, n: usize, points: usize, rng: &mut R) -> Result<f64> {
    let (yp, ym) = spec.inhom.clone().ok_or_else(|| crate::Error::InvalidInput("an Ext source needs inhomogeneities".into()))?.into_iter().unzip();
    let f = SourceF::new(spec.c, SourceKind::Ext { yp, ym })?;
    let sol = analytic::PmuSolution { source: &f, n, twist: spec.x1, first_sheet: roots.x1e.clone(), second_sheet: roots.x112.clone() };
    let low = |p: &ZhukPoint| sol.lower(p);
    let up = |p: &ZhukPoint| sol.upper(p);
    let mut worst = 0.0f64;
    for _ in 0..points {
        let p = random_point(rng, spec.c);
        for r in analytic::pmu_residual_case_b(&low, &up, &f, n, &p)? {
            worst = worst.max(r.norm());
        }
    }
    Ok(worst)
}

fn pmu_case_b(opts: &SuiteOptions) -> Result<(bool, String)> {
    let tol = opts.tol(1e-8);
    let (spec, roots) = solved_nested_configuration()?;
    let nested = hubbard::nested_residuals(&spec, &roots)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let n = 12;
    let worst = pmu_max_residual(&spec, &roots, n, 50, &mut opts.rng(7))?;
    Ok((worst < tol && nested < 1e-12, format!("nested residual {nested:.3e}; N = {n}, 50 points, max Pmu residual {worst:.3e}")))
}

fn random_twist<R: Rng>(rng: &mut R) -> GaussRat {
    loop {
        let g = GaussRat::from_ratios(rng.gen_range(-9..=9), rng.gen_range(1..=6), rng.gen_range(-9..=9), rng.gen_range(1..=6));
        if !g.is_zero() && g.pow(4) != Some(GaussRat::one()) {
            return g;
        }
    }
}

fn character_checks(opts: &SuiteOptions) -> Result<(bool, String)> {
    let mut rng = opts.rng(8);
    let mut done = 0;
    let mut failures = Vec::new();
    while done < 10 {
        let (sx, sy) = (random_twist(&mut rng), random_twist(&mut rng));
        let (q, t) = match character_solution(&sx, &sy, (3, 3)) {
            Ok(v) => v,
            Err(crate::Error::DegenerateTwist(_)) => continue,
            Err(e) => return Err(e),
        };
        let hirota = check_hirota(&t).pass;
        let shift = t.t.values().all(|f| &f.shift(2) == f);
        let dual = wronskian_t(&hodge(&q), (3, 3))? == t;
        if !(hirota && shift && dual) {
            failures.push(format!("twist {done}: hirota {hirota} shift {shift} hodge {dual}"));
        }
        done += 1;
    }
    Ok((failures.is_empty(), format!("10 twists, failures {failures:?}")))
}

fn ads3_checks(opts: &SuiteOptions) -> Result<(bool, String)> {
    let tol = opts.tol(1e-10);
    let cross_tol = opts.tol(1e-8);
    let mut rng = opts.rng(9);
    let rat = |rng: &mut ChaCha8Rng| GaussRat::from_ratios(rng.gen_range(-9..=9), rng.gen_range(1..=5), rng.gen_range(-9..=9), rng.gen_range(1..=5));
    let mut continuation = true;
    for _ in 0..20 {
        let y: Vec<GaussRat> = (0..2).map(|_| rat(&mut rng)).collect();
        let yb: Vec<GaussRat> = (0..1).map(|_| rat(&mut rng)).collect();
        let x = rat(&mut rng);
        let (Some(inv), false) = (x.inv(), x.is_zero()) else { continue };
        continuation &= ads3::r_y_exact(&y, &yb, &inv) == ads3::b_y_exact(&y, &yb, &x);
    }
    let c = Coupling::new(0.5)?;
    let d = DressingModel::default();
    let seed = AbaSeed { u: vec![Complex64::new(0.6, 0.0)], ub: vec![Complex64::new(-0.6, 0.0)], aux: Auxiliary::default() };
    let roots = ads3::solve_aba(c, 4, &seed, &d, NewtonOptions::default())?;
    let aba = ads3::aba_residuals(&roots, &d)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let momentum = roots.momentum_defect();
    let pair = AdS3Roots::from_rapidities(Coupling::new(0.7)?, 3, &[Complex64::new(0.4, 0.0)], &[], Auxiliary::default())?;
    let u = Complex64::new(0.3, 0.6);
    let constant = ads3::crossing_structure_check(&pair, u, |_, _| Complex64::new(1.0, 0.0), cross_tol)?;
    let toy = ads3::crossing_structure_check(&pair, u, ads3::toy_log_sigma(&pair), cross_tol)?;
    let pass = continuation && aba < tol && momentum < 1e-9 && constant.logarithmic && !constant.pass && toy.pass;
    Ok((
        pass,
        format!(
            "exact continuation {continuation}; two-particle ABA residual {aba:.3e}, momentum defect {momentum:.3e}; crossing factor |A - 1| = {:.3e}, constant model pass {}, toy model pass {}",
            (constant.factor - 1.0).norm(),
            constant.pass,
            toy.pass
        ),
    ))
}

fn ed_self_checks(opts: &SuiteOptions) -> Result<(bool, String)> {
    let tol = opts.tol(1e-10);
    let u = 0.9;
    let mut dims_ok = true;
    let mut trace_gap = 0.0f64;
    let mut total_trace = 0.0f64;
    let mut swap_gap = 0.0f64;
    for l in 1..=4usize {
        let spectra = ed::all_sector_spectra(l, u)?;
        let dims: usize = spectra.iter().map(|(_, s)| s.len()).sum();
        dims_ok &= dims == 4usize.pow(l as u32);
        for ((a, b), ev) in &spectra {
            let h = ed::build_hamiltonian(l, u, (*a, *b))?;
            trace_gap = trace_gap.max((h.trace() - ev.iter().sum::<f64>()).abs());
            total_trace += h.trace();
            let mirror = &spectra.iter().find(|(s, _)| *s == (*b, *a)).expect("all sectors present").1;
            swap_gap = ev.iter().zip(mirror).fold(swap_gap, |m, (x, y)| m.max((x - y).abs()));
        }
    }
    let two = ed::sector_spectrum(2, 1.0, (1, 0))?;
    let two_gap = (two[0] + 2.0).abs().max((two[1] - 2.0).abs());
    let pass = dims_ok && trace_gap < tol && total_trace.abs() < tol && swap_gap < tol && two.len() == 2 && two_gap < tol;
    Ok((
        pass,
        format!("L = 1..4: dimension audit {dims_ok}, trace gap {trace_gap:.3e}, total trace {total_trace:.3e}, spin-swap gap {swap_gap:.3e}; L = 2 (1,0) spectrum {two:?}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_criterion_is_rejected() {
        let opts = SuiteOptions { only: Some(vec!["nope".into()]), ..Default::default() };
        assert!(run(&opts).is_err());
    }

    #[test]
    fn only_runs_selected() {
        let opts = SuiteOptions { only: Some(vec!["ed".into(), "hodge".into()]), ..Default::default() };
        let r = run(&opts).unwrap();
        assert_eq!(r.criteria.iter().map(|c| c.id).collect::<Vec<_>>(), vec![2, 10]);
        assert!(r.pass, "{:?}", r.first_failure());
    }

    #[test]
    fn zero_tolerance_fails_float_criteria() {
        let opts = SuiteOptions { tol: Some(0.0), only: Some(vec!["baxter".into()]), ..Default::default() };
        assert!(!run(&opts).unwrap().pass);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(combinations(&[1, 2], 0), vec![Vec::<i64>::new()]);
    }
}
