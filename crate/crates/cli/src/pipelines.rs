//! One function per pipeline. Each returns its numeric results, the
//! consistency checks it ran, and the artifacts to write.

use std::fmt::Write;

use aperiodica::cps::{character_lift_check, Scheme, WeightFunction, Window};
use aperiodica::gap::{
    default_psi, gap_certificate, interior_patch, reconstruct_window, riemann_sandwich, t_operator,
};
use aperiodica::groups::{SetDescriptor, SpaceDescriptor, VanHoveSpec};
use aperiodica::measures::{mean_estimate, uniform_upper_density, PointMeasure};
use aperiodica::meyer::{
    density_bound_check, lambda_theta, m_theta_from, meyer_test, PointSet, DEFAULT_F_SEARCH_BOUND,
};
use aperiodica::{Real, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{exact, radius_patch, ExperimentConfig, PipelineName};
use crate::error::{CliError, CliResult};
use crate::svg::emit_svg_strip;

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<(String, bool)>,
    pub points_csv: Option<String>,
    pub svg: Option<String>,
}

impl Outcome {
    fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }
}

pub fn run_pipeline(c: &ExperimentConfig) -> CliResult<Outcome> {
    match c.pipeline {
        PipelineName::Generate => generate(c),
        PipelineName::Density => density(c),
        PipelineName::Mean => mean(c),
        PipelineName::GapCert => gap_cert(c),
        PipelineName::TOperator => t_operator_checks(c),
        PipelineName::MeyerCheck => meyer_check(c),
        PipelineName::Counterexample => counterexample(c),
        PipelineName::LiftCheck => lift_check(c),
        PipelineName::Reconstruct => reconstruct(c),
    }
}

fn no_params(c: &ExperimentConfig) -> CliResult<()> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct None_ {}
    c.params::<None_>().map(|_| ())
}

fn is_euclidean(s: &Scheme) -> bool {
    matches!(s, Scheme::Quadratic(_))
}

/// `points.csv` columns: `m,n,x,x_star`. `count` is its number of rows and
/// `expected_count = density_constant · window_measure · patch_measure`.
fn generate(c: &ExperimentConfig) -> CliResult<Outcome> {
    no_params(c)?;
    let s = c.scheme()?;
    let w = c.window(&s)?;
    let patch = c.patch(&s.direct_space())?;
    let proj = s.cut_and_project(&w, &patch)?;
    let d_s = s.density_constant();
    let theta_w = w.haar_measure()?;
    let volume = patch.haar_measure()?;
    let mut out = Outcome {
        results: json!({
            "count": proj.len(),
            "density_constant": d_s,
            "density_constant_f64": d_s.to_f64(),
            "window_measure": theta_w,
            "patch_measure": volume,
            "expected_count": (d_s * theta_w * volume).to_f64(),
        }),
        points_csv: Some(proj.to_csv()),
        ..Default::default()
    };
    if is_euclidean(&s) {
        let svg = emit_svg_strip(&s, &w, &patch)?;
        out.check("svg_highlights_match_points", svg.matches(r#"class="selected""#).count() == proj.len());
        out.svg = Some(svg);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityParams {
    #[serde(default)]
    radii: Option<Vec<i64>>,
}

/// `estimate(r) = #{x in points.csv : -r <= x < r} / (2r)` (on `Z`,
/// `#{-r..=r} / (2r + 1)`); `envelope` is the range of `estimate(r)` over
/// eleven radii in `[0.9 R, R]`.
fn density(c: &ExperimentConfig) -> CliResult<Outcome> {
    let params: DensityParams = c.params()?;
    let s = c.scheme()?;
    let w = c.window(&s)?;
    let r = c.radius.ok_or_else(|| CliError::Config("density needs a radius".into()))?;
    let space = s.direct_space();
    let proj = s.cut_and_project(&w, &radius_patch(&space, r)?)?;
    let points = proj.to_point_set()?;
    let expected = s.density_constant() * w.haar_measure()?;
    let estimate_at = |radius: i64| -> CliResult<(usize, f64)> {
        let (count, volume) = match space {
            SpaceDescriptor::Integers => {
                let n = points.points().iter().filter(|x| x.to_f64().abs() <= radius as f64).count();
                (n, (2 * radius + 1) as f64)
            }
            _ => {
                let (lo, hi) = (Real::integer(-radius), Real::integer(radius));
                let n = points.points().iter().filter(|x| x.value_cmp(&lo).is_ge() && x.value_cmp(&hi).is_lt()).count();
                (n, (2 * radius) as f64)
            }
        };
        Ok((count, count as f64 / volume))
    };
    let radii = params.radii.unwrap_or_else(|| {
        let mut v: Vec<i64> = [r / 100, r / 10, r].into_iter().filter(|&x| x >= 1).collect();
        v.dedup();
        v
    });
    if radii.iter().any(|&x| x < 1 || x > r) {
        return Err(CliError::Config(format!("radii must lie in [1, {r}]")));
    }
    let mut per_radius = Vec::new();
    let mut errors = Vec::new();
    for &radius in &radii {
        let (count, est) = estimate_at(radius)?;
        let err = (est - expected.to_f64()).abs();
        errors.push(err);
        per_radius.push(json!({"radius": radius, "count": count, "estimate": est, "error": err}));
    }
    let tail: Vec<f64> = (0..=10)
        .map(|i| r - (r as f64 * 0.1 * i as f64 / 10.0).floor() as i64)
        .map(|radius| estimate_at(radius).map(|e| e.1))
        .collect::<CliResult<_>>()?;
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (_, estimate) = estimate_at(r)?;
    Ok(Outcome {
        results: json!({
            "radius": r,
            "expected": expected.to_f64(),
            "expected_exact": expected,
            "estimate": estimate,
            "envelope": [lo, hi],
            "per_radius": per_radius,
            "error_decreasing": errors.windows(2).all(|e| e[1] < e[0]),
        }),
        points_csv: Some(proj.to_csv()),
        ..Default::default()
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeanParams {
    #[serde(default)]
    weight: Option<WeightFunction>,
    #[serde(default = "default_translates")]
    translates: usize,
    #[serde(default = "default_max_shift")]
    max_shift: i64,
}

fn default_translates() -> usize {
    8
}

fn default_max_shift() -> i64 {
    100
}

/// Mean of `Ω(h)` over seeded integer translates in `[0, max_shift]`
/// (the first is always `0`), against `D_S ∫ h`.
fn mean(c: &ExperimentConfig) -> CliResult<Outcome> {
    let params: MeanParams = c.params()?;
    let s = c.scheme()?;
    let h = match (params.weight, &c.window) {
        (Some(h), _) => h,
        (None, Some(_)) => WeightFunction::indicator(c.window(&s)?),
        (None, None) => return Err(CliError::Config("mean needs a weight or a window".into())),
    };
    let n_max = c.horizon()?;
    let space = s.direct_space();
    let patch = match (&c.patch, c.radius) {
        (None, None) => radius_patch(&space, n_max as i64 + params.max_shift + 1)?,
        _ => c.patch(&space)?,
    };
    let mu = s.omega_comb(&h, &patch)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut shifts = vec![Real::zero()];
    shifts.extend((1..params.translates).map(|_| Real::integer(rng.gen_range(0..=params.max_shift))));
    let v = VanHoveSpec::new(space)?;
    let estimate = mean_estimate(&mu, &v, n_max, &shifts)?;
    let expected = s.density_constant() * h.integral()?;
    Ok(Outcome {
        results: json!({
            "expected": expected.to_f64(),
            "expected_exact": expected,
            "estimate": estimate,
            "tolerance": 4.0 / n_max as f64,
        }),
        points_csv: Some(mu.to_csv()),
        ..Default::default()
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GapParams {
    eps: Real,
}

fn gap_cert(c: &ExperimentConfig) -> CliResult<Outcome> {
    let params: GapParams = c.params()?;
    let eps = exact(params.eps)?;
    let s = c.scheme()?;
    let w = Window::new(c.window(&s)?);
    let n_max = c.horizon()?;
    let space = s.direct_space();
    let patch = match (&c.patch, c.radius) {
        (None, None) => radius_patch(&space, n_max as i64 + 1)?,
        _ => c.patch(&space)?,
    };
    let v = VanHoveSpec::new(space)?;
    let cert = gap_certificate(&s, &w, &eps, &patch, &v, n_max)?;
    let tolerance = 2.0 / n_max as f64;
    let report = cert.report();
    let mut out = Outcome {
        results: json!({
            "certificate": report,
            "certified_bound_exact": cert.certified_bound,
            "eps_exact": eps,
            "horizon_tolerance": tolerance,
            "sandwich_margin": cert.sandwich.margin,
            "enclosing": cert.enclosing,
            "mean_sequence": cert.empirical_mean_gap.sequence,
        }),
        points_csv: Some(measures_csv(&cert.mu_eps, &cert.nu_eps)),
        ..Default::default()
    };
    out.check("ordering", cert.ordering_holds);
    out.check("certified_bound_le_eps", cert.certified_bound.value_cmp(&eps).is_le());
    out.check("mean_gap_within_bound", report.empirical_mean_gap <= report.certified_bound + tolerance);
    out.check("discrepancy_within_eps", report.discrepancy_density <= eps.to_f64() + tolerance);
    Ok(out)
}

/// Columns `x,mu,nu` over the union of both supports.
fn measures_csv(mu: &PointMeasure, nu: &PointMeasure) -> String {
    let mut xs: Vec<Real> = mu.atoms().iter().chain(nu.atoms()).map(|a| a.0).collect();
    xs.sort_by(|a, b| a.value_cmp(b));
    xs.dedup_by(|a, b| a.value_cmp(b).is_eq());
    let mut out = String::from("x,mu,nu\n");
    for x in xs {
        let _ = writeln!(out, "{},{},{}", x.to_f64(), mu.weight_at(&x).re.to_f64(), nu.weight_at(&x).re.to_f64());
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TParams {
    #[serde(default = "default_trials")]
    trials: usize,
    #[serde(default = "default_intervals")]
    intervals: usize,
}

fn default_trials() -> usize {
    100
}

fn default_intervals() -> usize {
    20
}

/// Summary of the `𝒯` checks over seeded random measures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TReport {
    pub trials: usize,
    pub lambda_points: usize,
    pub gamma_points: usize,
    pub psi_radius: f64,
    pub interior: (f64, f64),
    pub fixed_point_max_error: f64,
    pub support_in_gamma: bool,
    pub positivity: bool,
    pub linearity_max_error: f64,
    pub restriction_inequality: bool,
    pub intervals_checked: usize,
    /// Largest `M_n(𝒯μ) − M_n(μ)` minus the boundary allowance
    /// `μ((A_n − K) ∖ A_n)/|A_n|`; nonpositive when the contraction holds.
    pub mean_contraction_excess: f64,
}

fn random_measure(rng: &mut ChaCha8Rng, support: &PointSet) -> CliResult<PointMeasure> {
    let mut atoms = Vec::new();
    for x in support.points() {
        if rng.gen_bool(0.7) {
            atoms.push((*x, Weight::real(Real::ratio(rng.gen_range(0..1000), 100))));
        }
    }
    Ok(PointMeasure::new(atoms, support.patch().clone())?)
}

pub fn t_operator_report(c: &ExperimentConfig) -> CliResult<TReport> {
    let params: TParams = c.params()?;
    let s = c.scheme()?;
    if !matches!(s.direct_space(), SpaceDescriptor::EuclideanLine) {
        return Err(CliError::Config("t-operator runs on schemes with direct space R".into()));
    }
    let w = match &c.window {
        Some(_) => c.window(&s)?,
        None => SetDescriptor::interval(0, 1),
    };
    let radius = c.radius.unwrap_or(200);
    let patch = radius_patch(&s.direct_space(), radius)?;
    let sandwich = riemann_sandwich(&Window::new(w.clone()), &Real::ratio(1, 10))?;
    let Some(&[(a, b)]) = w.hull()?.intervals_slice() else {
        return Err(CliError::Config("the window must be a nonempty bounded subset of R".into()));
    };
    let enclosing = SetDescriptor::interval(a - Real::one(), b + Real::one());
    let omega = s.omega_comb(&sandwich.upper, &patch)?;
    let lambda = s.cut_and_project(&w, &patch)?.to_point_set()?;
    let gamma = s.cut_and_project(&enclosing, &patch)?.to_point_set()?;
    let psi = default_psi(&gamma)?;
    let r = psi.support_radius();
    let (lo, hi) = interior_patch(&omega, &psi)?;
    let n_max = c.horizon.unwrap_or((radius / 2) as u64);
    let v = VanHoveSpec::new(SpaceDescriptor::EuclideanLine)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut rep = TReport {
        trials: params.trials,
        lambda_points: lambda.len(),
        gamma_points: gamma.len(),
        psi_radius: r.to_f64(),
        interior: (lo.to_f64(), hi.to_f64()),
        support_in_gamma: true,
        positivity: true,
        restriction_inequality: true,
        mean_contraction_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    for _ in 0..params.trials {
        let mu = random_measure(&mut rng, &lambda)?;
        let nu = random_measure(&mut rng, &gamma)?;
        let t_mu = t_operator(&psi, &omega, &mu)?;
        let t_nu = t_operator(&psi, &omega, &nu)?;
        for (x, w) in mu.atoms() {
            if x.value_cmp(&lo).is_ge() && x.value_cmp(&hi).is_le() {
                let e = (t_mu.weight_at(x) - *w).modulus();
                rep.fixed_point_max_error = rep.fixed_point_max_error.max(e);
            }
        }
        rep.support_in_gamma &= t_mu.atoms().iter().chain(t_nu.atoms()).all(|(x, _)| gamma.contains(x));
        rep.positivity &= t_mu.is_positive() && t_nu.is_positive();
        let (ca, cb) = (Real::ratio(rng.gen_range(-50..50), 7), Real::ratio(rng.gen_range(-50..50), 11));
        let lhs = t_operator(&psi, &omega, &mu.linear_combination(ca, &nu, cb)?)?;
        let rhs = t_mu.linear_combination(ca, &t_nu, cb)?;
        let diff = lhs.linear_combination(Real::one(), &rhs, -Real::one())?;
        for (_, w) in diff.atoms() {
            rep.linearity_max_error = rep.linearity_max_error.max(w.modulus());
        }
        for _ in 0..params.intervals {
            let start = rng.gen_range(-radius..radius - 1);
            let len = rng.gen_range(1..=(radius - start).min(50));
            let (s0, s1) = (Real::integer(start), Real::integer(start + len));
            let inner = t_nu.mass_in(&s0, &s1).re;
            let outer = nu.mass_in(&(s0 - r), &(s1 + r)).re;
            rep.restriction_inequality &= inner.value_cmp(&outer).is_le();
            rep.intervals_checked += 1;
        }
        let m_t = mean_estimate(&t_nu, &v, n_max, &[])?;
        let m = mean_estimate(&nu, &v, n_max, &[])?;
        for (a, b) in m_t.sequence.iter().zip(&m.sequence) {
            let n = Real::integer(a.n as i64);
            let edge = nu.mass_in(&(-n - r), &-n).re + nu.mass_in(&n, &(n + r)).re;
            let allowance = edge.to_f64() / (2.0 * a.n as f64);
            rep.mean_contraction_excess = rep.mean_contraction_excess.max(a.value - b.value - allowance);
        }
    }
    Ok(rep)
}

fn t_operator_checks(c: &ExperimentConfig) -> CliResult<Outcome> {
    let rep = t_operator_report(c)?;
    let mut out = Outcome { results: serde_json::to_value(&rep).expect("serializable"), ..Default::default() };
    out.check("fixed_point", rep.fixed_point_max_error <= 1e-9);
    out.check("support", rep.support_in_gamma);
    out.check("positivity", rep.positivity);
    out.check("linearity", rep.linearity_max_error <= 1e-12);
    out.check("restriction_inequality", rep.restriction_inequality);
    out.check("mean_contraction", rep.mean_contraction_excess <= 1e-12);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum SetChoice {
    Model,
    MTheta,
    MThetaComplement,
    LambdaTheta,
    PerturbedIntegers,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeyerParams {
    #[serde(default = "model")]
    set: SetChoice,
    #[serde(default = "pi")]
    theta: f64,
    #[serde(default = "default_f_bound")]
    f_search_bound: usize,
}

fn model() -> SetChoice {
    SetChoice::Model
}

fn pi() -> f64 {
    std::f64::consts::PI
}

fn default_f_bound() -> usize {
    DEFAULT_F_SEARCH_BOUND
}

fn theta_sets(theta: f64, bound: i64) -> CliResult<(aperiodica::meyer::ThetaSet, PointSet)> {
    let lambda = lambda_theta(theta, bound as f64)?;
    let m = m_theta_from(&lambda);
    Ok((lambda, m))
}

fn chosen_set(c: &ExperimentConfig, choice: SetChoice, theta: f64) -> CliResult<PointSet> {
    let radius = || c.radius.ok_or_else(|| CliError::Config("this set needs a radius".into()));
    Ok(match choice {
        SetChoice::Model => {
            let s = c.scheme()?;
            let w = c.window(&s)?;
            s.cut_and_project(&w, &c.patch(&s.direct_space())?)?.to_point_set()?
        }
        SetChoice::MTheta => {
            let r = radius()?;
            theta_sets(theta, r)?.1.restrict(&Real::integer(-r), &Real::integer(r))?
        }
        SetChoice::MThetaComplement => {
            let r = radius()?;
            let m = theta_sets(theta, r)?.1;
            PointSet::integers_where(-r, r, |n| !m.contains(&Real::integer(n)))
        }
        SetChoice::LambdaTheta => theta_sets(theta, radius()?)?.0.to_point_set(),
        SetChoice::PerturbedIntegers => {
            let r = radius()?;
            let pts = (-r..=r).map(|n| Real::integer(n) + Real::ratio(1, (n.abs() + 2) as i128)).collect();
            PointSet::new(pts, SetDescriptor::interval(-r - 1, r + 1))?
        }
    })
}

fn points_csv(ps: &PointSet) -> String {
    let mut out = String::from("x\n");
    for x in ps.points() {
        let _ = writeln!(out, "{}", x.to_f64());
    }
    out
}

fn meyer_check(c: &ExperimentConfig) -> CliResult<Outcome> {
    let params: MeyerParams = c.params()?;
    let ps = chosen_set(c, params.set, params.theta)?;
    let verdict = meyer_test(&ps, params.f_search_bound)?;
    Ok(Outcome {
        results: json!({"point_count": ps.len(), "verdict": verdict}),
        points_csv: Some(points_csv(&ps)),
        ..Default::default()
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterexampleParams {
    #[serde(default = "pi")]
    theta: f64,
    #[serde(default = "default_bound")]
    bound: f64,
    #[serde(default = "default_t_max")]
    t_max: u64,
    #[serde(default = "default_t_step")]
    t_step: u64,
    #[serde(default = "default_n_values")]
    n_values: Vec<f64>,
    #[serde(default = "default_udens_horizons")]
    udens_horizons: Vec<u64>,
}

fn default_bound() -> f64 {
    100_000.0
}

fn default_t_max() -> u64 {
    1000
}

fn default_t_step() -> u64 {
    10
}

fn default_n_values() -> Vec<f64> {
    vec![10.0, 100.0, 1000.0]
}

fn default_udens_horizons() -> Vec<u64> {
    vec![100, 1000, 10_000]
}

/// `points.csv` lists `Λ_θ` as `digits,value` (bit `j` of `digits` selects
/// `θ^j`); `M_θ` is the set of `⌊v⌋` and `⌊v⌋ + 1`.
fn counterexample(c: &ExperimentConfig) -> CliResult<Outcome> {
    let p: CounterexampleParams = c.params()?;
    if p.t_step == 0 {
        return Err(CliError::Config("t_step must be positive".into()));
    }
    let lambda = lambda_theta(p.theta, p.bound)?;
    let m = m_theta_from(&lambda);
    let mut sweep = Vec::new();
    for t in (0..=p.t_max).step_by(p.t_step as usize) {
        for &n in &p.n_values {
            sweep.push(density_bound_check(&lambda, t as f64, n)?);
        }
    }
    let all_ok = sweep.iter().all(|d| d.ok);
    let v = VanHoveSpec::new(SpaceDescriptor::Integers)?;
    let udens = p
        .udens_horizons
        .iter()
        .map(|&n| uniform_upper_density(&m, &v, n))
        .collect::<aperiodica::Result<Vec<_>>>()?;
    let values: Vec<f64> = udens.iter().map(|d| d.value).collect();
    let mut csv = String::from("digits,value\n");
    for e in &lambda.elements {
        let _ = writeln!(csv, "{},{}", e.digits, e.value);
    }
    let mut out = Outcome {
        results: json!({
            "theta": p.theta,
            "bound": p.bound,
            "lambda_count": lambda.len(),
            "m_count": m.len(),
            "density_sweep": sweep,
            "all_ok": all_ok,
            "udens": udens,
            "udens_decreasing": values.windows(2).all(|w| w[1] < w[0]),
        }),
        points_csv: Some(csv),
        ..Default::default()
    };
    out.check("density_bound_sweep", all_ok);
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftParams {
    beta: Real,
    gamma: Real,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_tol() -> f64 {
    1e-9
}

fn lift_check(c: &ExperimentConfig) -> CliResult<Outcome> {
    let p: LiftParams = c.params()?;
    let s = c.scheme()?;
    let radius = c.radius.unwrap_or(1000);
    let rep = character_lift_check(&s, p.beta, p.gamma, radius, p.tol)?;
    Ok(Outcome { results: json!({"radius": radius, "report": rep}), ..Default::default() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Source {
    Model,
    MTheta,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReconstructParams {
    #[serde(default = "source_model")]
    source: Source,
    #[serde(default = "pi")]
    theta: f64,
    #[serde(default)]
    threshold: Option<Real>,
}

fn source_model() -> Source {
    Source::Model
}

fn reconstruct(c: &ExperimentConfig) -> CliResult<Outcome> {
    let p: ReconstructParams = c.params()?;
    let s = c.scheme()?;
    let lambda = match p.source {
        Source::Model => {
            let w = c.window(&s)?;
            s.cut_and_project(&w, &c.patch(&s.direct_space())?)?.to_point_set()?
        }
        Source::MTheta => {
            let r = c.radius.ok_or_else(|| CliError::Config("m-theta needs a radius".into()))?;
            let m = theta_sets(p.theta, r)?.1;
            PointSet::integers_where(0, r, |n| m.contains(&Real::integer(n)))
        }
    };
    let threshold = p.threshold.map(exact).transpose()?;
    let est = reconstruct_window(&s, &lambda, threshold)?;
    let again = s.cut_and_project(&est.window_estimate, lambda.patch())?.to_point_set()?;
    let mut out = Outcome {
        results: json!({"estimate": est}),
        points_csv: Some(points_csv(&lambda)),
        ..Default::default()
    };
    out.check("no_point_lost", lambda.points().iter().all(|x| again.contains(x)));
    Ok(out)
}
