//! The ten acceptance checks. Runs without the test harness so each check
//! prints exactly one PASS/FAIL line; exits nonzero if any check fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use aperiodica::cps::{character_lift_check, Scheme, WeightFunction, Window};
use aperiodica::gap::{gap_certificate, reconstruct_window};
use aperiodica::groups::{SetDescriptor, SpaceDescriptor, VanHoveSpec};
use aperiodica::measures::{mean_estimate, uniform_upper_density, PointMeasure};
use aperiodica::meyer::{density_bound_check, lambda_theta, m_theta_from, PointSet};
use aperiodica::{QuadraticNumber, Real};
use aperiodica_cli::pipelines::t_operator_report;
use aperiodica_cli::{ExperimentConfig, PipelineName};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, runtime limit in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn p_adic_exactness() -> Check {
    for p in [2u64, 3, 5, 7] {
        let s = Scheme::padic(p, 12).map_err(|e| e.to_string())?;
        for r in 0..p {
            let w = SetDescriptor::residue_classes(s.internal_space(), &[(r, 1)]).map_err(|e| e.to_string())?;
            let got = s
                .cut_and_project(&w, &SetDescriptor::int_closed(-10_000, 10_000))
                .and_then(|x| x.to_point_set())
                .map_err(|e| e.to_string())?
                .to_integers()
                .ok_or("non-integer points")?;
            let want: Vec<i64> = (-10_000i64..=10_000).filter(|n| n.rem_euclid(p as i64) == r as i64).collect();
            if got != want {
                return Err(format!("p = {p}, r = {r}: {} points, expected {}", got.len(), want.len()));
            }
        }
    }
    Ok("22 residue windows equal pZ + r on [-1e4, 1e4]".into())
}

fn golden_count(len: Real, r: i64) -> Result<usize, String> {
    let s = Scheme::golden();
    s.cut_and_project(&SetDescriptor::interval(Real::zero(), len), &SetDescriptor::interval(-r, r))
        .map(|p| p.len())
        .map_err(|e| e.to_string())
}

fn density_formula() -> Check {
    let mut details = Vec::new();
    for len in [Real::ratio(3, 10), Real::one(), Real::ratio(3, 2)] {
        let expected = len.to_f64() / 5f64.sqrt();
        let errors: Vec<f64> = [100i64, 1000, 10_000]
            .iter()
            .map(|&r| golden_count(len, r).map(|c| (c as f64 / (2 * r) as f64 - expected).abs()))
            .collect::<Result<_, _>>()?;
        let ok = errors[2] <= 5.0 / 10_000.0 && errors.windows(2).all(|e| e[1] < e[0]);
        details.push(format!("l={}: {:.1e}/{:.1e}/{:.1e}", len.to_f64(), errors[0], errors[1], errors[2]));
        if !ok {
            return Err(details.join(", "));
        }
    }
    Ok(format!("errors {}", details.join(", ")))
}

fn gap_certificates() -> Check {
    let s = Scheme::golden();
    let v = VanHoveSpec::new(SpaceDescriptor::EuclideanLine).map_err(|e| e.to_string())?;
    let n_max = 10_000u64;
    let tol = 2.0 / n_max as f64;
    let w = Window::new(SetDescriptor::interval(0, 1));
    let mut details = Vec::new();
    for eps in [Real::ratio(1, 10), Real::ratio(1, 100)] {
        let c = gap_certificate(&s, &w, &eps, &SetDescriptor::interval(-10_001, 10_001), &v, n_max)
            .map_err(|e| e.to_string())?;
        let bound = c.certified_bound.to_f64();
        let mean = c.empirical_mean_gap.value;
        let disc = c.empirical_discrepancy_density.value;
        details.push(format!("eps {}: bound {bound:.5}, mean {mean:.5}, udens {disc:.5}", eps.to_f64()));
        let ok = c.certified_bound.value_cmp(&eps).is_le()
            && c.ordering_holds
            && mean <= bound + tol
            && disc <= eps.to_f64() + tol;
        if !ok {
            return Err(details.join("; "));
        }
    }
    Ok(details.join("; "))
}

fn t_operator_properties() -> Check {
    let mut c = ExperimentConfig::new(PipelineName::TOperator);
    c.seed = 2024;
    c.radius = Some(200);
    let rep = t_operator_report(&c).map_err(|e| e.to_string())?;
    let detail = format!(
        "{} measures, {} intervals; fixed-point error {:.1e}, linearity error {:.1e}",
        rep.trials, rep.intervals_checked, rep.fixed_point_max_error, rep.linearity_max_error
    );
    ensure(
        rep.trials == 100
            && rep.intervals_checked == 2000
            && rep.fixed_point_max_error <= 1e-9
            && rep.support_in_gamma
            && rep.restriction_inequality
            && rep.linearity_max_error <= 1e-12,
        detail,
    )
}

/// `Λ_π` by subset sums of `π^j`, as floats.
fn subset_sums(bound: f64) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let digits = (0..).take_while(|&j| pi.powi(j) <= bound).count() as i32;
    let mut v: Vec<f64> = (0u32..1 << digits)
        .map(|mask| (0..digits).filter(|j| mask >> j & 1 == 1).map(|j| pi.powi(j)).sum())
        .filter(|&s| s <= bound)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

fn lambda_pi_density() -> Check {
    let pi = std::f64::consts::PI;
    let lambda = lambda_theta(pi, 1e5).map_err(|e| e.to_string())?;
    let oracle = subset_sums(1e5);
    let mut cases = 0;
    for t in (0..=1000).step_by(10) {
        for n in [10.0, 100.0, 1000.0] {
            let d = density_bound_check(&lambda, t as f64, n).map_err(|e| e.to_string())?;
            let count = oracle.iter().filter(|&&x| x >= t as f64 && x <= t as f64 + n).count();
            let bound = (9.0 * n.powf(3f64.ln() / pi.ln()) + 1.0) / n;
            if d.count != count || count as f64 / n >= bound || !d.ok {
                return Err(format!("t = {t}, n = {n}: count {} (oracle {count}), bound {bound}", d.count));
            }
            cases += 1;
        }
    }
    let m = m_theta_from(&lambda);
    let m_oracle: BTreeSet<i64> = oracle.iter().flat_map(|x| [x.floor() as i64, x.floor() as i64 + 1]).collect();
    let v = VanHoveSpec::new(SpaceDescriptor::Integers).map_err(|e| e.to_string())?;
    let mut values = Vec::new();
    for n_max in [100u64, 1000, 10_000] {
        let d = uniform_upper_density(&m, &v, n_max).map_err(|e| e.to_string())?;
        let n = n_max as i64;
        let best = (-2 * n..=100_001)
            .map(|x| m_oracle.range(x..=x + 2 * n).count())
            .max()
            .unwrap_or(0) as f64
            / (2 * n + 1) as f64;
        let last = d.per_n.last().map(|p| p.1).unwrap_or(f64::NAN);
        if (best - last).abs() > 1e-12 {
            return Err(format!("udens at n = {n}: {last}, sliding-window oracle {best}"));
        }
        values.push(d.value);
    }
    let detail = format!("{cases} strict bounds; udens {:.4}/{:.4}/{:.4}", values[0], values[1], values[2]);
    ensure(values[2] < 0.05 && values.windows(2).all(|w| w[1] < w[0]), detail)
}

fn character_lift() -> Check {
    let s = Scheme::golden();
    let beta: QuadraticNumber = "1/2+1/10*sqrt(5)".parse().map_err(|e: aperiodica::Error| e.to_string())?;
    let alpha: QuadraticNumber = "1/2+1/2*sqrt(5)".parse().map_err(|e: aperiodica::Error| e.to_string())?;
    let sqrt5: QuadraticNumber = "sqrt(5)".parse().map_err(|e: aperiodica::Error| e.to_string())?;
    // β = α/√5 and γ = α′/√5, checked against the definitions.
    let gamma = beta.checked_sub(&QuadraticNumber::from_integer(1)).ok_or("overflow")?;
    let ok_defs = beta.checked_mul(&sqrt5) == Some(alpha) && gamma.checked_mul(&sqrt5) == Some(alpha.conjugate());
    let dual = character_lift_check(&s, Real::Exact(beta), Real::Exact(gamma), 1000, 1e-9).map_err(|e| e.to_string())?;
    let other = character_lift_check(&s, Real::ratio(3, 10), Real::ratio(3, 10), 1000, 1e-9).map_err(|e| e.to_string())?;
    ensure(
        ok_defs && dual.pass && dual.max_deviation < 1e-9 && !other.pass && other.max_deviation > 0.5,
        format!("dual deviation {:.1e}, (0.3, 0.3) deviation {:.3}", dual.max_deviation, other.max_deviation),
    )
}

fn window_reconstruction() -> Check {
    let s = Scheme::golden();
    let patch = SetDescriptor::interval(-10_000, 10_000);
    let lambda = s
        .cut_and_project(&SetDescriptor::interval(0, 1), &patch)
        .and_then(|p| p.to_point_set())
        .map_err(|e| e.to_string())?;
    let est = reconstruct_window(&s, &lambda, None).map_err(|e| e.to_string())?;
    let ends = est.window_estimate.intervals_slice().ok_or("not an interval window")?;
    let n = est.point_count as f64;
    let (a, b) = (ends[0].0.to_f64(), ends[ends.len() - 1].1.to_f64());
    let ok_golden = a.abs() <= 10.0 / n && (b - 1.0).abs() <= 10.0 / n;
    let m = m_theta_from(&lambda_theta(std::f64::consts::PI, 1e4).map_err(|e| e.to_string())?);
    let p2 = Scheme::padic(2, 20).map_err(|e| e.to_string())?;
    let masses: Vec<f64> = [1000i64, 10_000]
        .iter()
        .map(|&r| {
            let ps = PointSet::integers_where(0, r, |k| m.contains(&Real::integer(k)));
            reconstruct_window(&p2, &ps, None).map(|e| e.boundary_mass_estimate)
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(
        ok_golden && masses[0] < 2.0 * masses[1],
        format!("golden [{a:.6}, {b:.6}) with N = {n}; M_pi boundary mass {} -> {}", masses[0], masses[1]),
    )
}

fn mean_uniformity() -> Check {
    let n = 1000u64;
    let shifts: Vec<Real> = (0..8).map(|k| Real::integer(37 * k)).collect();
    let z = PointSet::integers_where(-1300, 1300, |_| true);
    let vz = VanHoveSpec::new(SpaceDescriptor::Integers).map_err(|e| e.to_string())?;
    let ez = mean_estimate(&PointMeasure::dirac_comb(&z), &vz, n, &shifts).map_err(|e| e.to_string())?;
    let s = Scheme::golden();
    let h = WeightFunction::indicator(SetDescriptor::interval(0, 1));
    let mu = s.omega_comb(&h, &SetDescriptor::interval(-1300, 1300)).map_err(|e| e.to_string())?;
    let vr = VanHoveSpec::new(SpaceDescriptor::EuclideanLine).map_err(|e| e.to_string())?;
    let eg = mean_estimate(&mu, &vr, n, &shifts).map_err(|e| e.to_string())?;
    let limit = 4.0 / n as f64;
    ensure(
        ez.spread <= limit && eg.spread <= limit,
        format!("spreads {:.1e} (Z), {:.1e} (golden) <= {limit:.0e}", ez.spread, eg.spread),
    )
}

/// `lo <= x < hi` for `x = m + n·a`, decided with a margin and exactly near the ends.
fn in_range(m: i64, n: i64, a: &QuadraticNumber, lo: &Real, hi: &Real) -> bool {
    let x = m as f64 + n as f64 * a.to_f64();
    let (l, h) = (lo.to_f64(), hi.to_f64());
    if (x - l).abs() > 1e-6 && (x - h).abs() > 1e-6 {
        return l <= x && x < h;
    }
    let v = QuadraticNumber::from_integer(n)
        .checked_mul(a)
        .and_then(|v| v.checked_add(&QuadraticNumber::from_integer(m)))
        .expect("small coordinates");
    let v = Real::Exact(v);
    v.value_cmp(lo).is_ge() && v.value_cmp(hi).is_lt()
}

fn rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Real {
    let den = rng.gen_range(1..=12i64);
    Real::ratio(rng.gen_range(lo * den..=hi * den) as i128, den as i128)
}

fn brute_force_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let alphas = ["1/2+1/2*sqrt(5)", "1+sqrt(2)", "sqrt(3)", "2+sqrt(7)", "1/3+2/3*sqrt(2)"];
    let mut points = 0;
    for round in 0..10 {
        let r = rng.gen_range(20..=200i64);
        if round % 2 == 0 {
            let alpha: QuadraticNumber = alphas[round / 2].parse().map_err(|e: aperiodica::Error| e.to_string())?;
            let conj = alpha.conjugate();
            let s = Scheme::quadratic(alpha).map_err(|e| e.to_string())?;
            let w0 = rational(&mut rng, -2, 1);
            let w1 = w0 + rational(&mut rng, 0, 2) + Real::ratio(1, 10);
            let (p0, p1) = (Real::integer(-r), Real::integer(r));
            let proj = s
                .cut_and_project(&SetDescriptor::interval(w0, w1), &SetDescriptor::interval(p0, p1))
                .map_err(|e| e.to_string())?;
            let got: BTreeSet<(i64, i64)> = proj.lattice_points().iter().map(|p| (p.coords[0], p.coords[1])).collect();
            let spread = (alpha.to_f64() - conj.to_f64()).abs();
            let n_max = ((r as f64 + w0.to_f64().abs().max(w1.to_f64().abs())) / spread).ceil() as i64 + 2;
            let mut want = BTreeSet::new();
            for n in -n_max..=n_max {
                let m_max = r + (n as f64 * alpha.to_f64()).abs().ceil() as i64 + 2;
                for m in -m_max..=m_max {
                    if in_range(m, n, &alpha, &p0, &p1) && in_range(m, n, &conj, &w0, &w1) {
                        want.insert((m, n));
                    }
                }
            }
            if got != want {
                return Err(format!("alpha {alpha}, window [{w0}, {w1}), R = {r}: {} vs {}", got.len(), want.len()));
            }
            points += got.len();
        } else {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let s = Scheme::padic(p, 10).map_err(|e| e.to_string())?;
            let classes: Vec<(u64, u32)> = (0..rng.gen_range(1..4))
                .map(|_| {
                    let j = rng.gen_range(1..4u32);
                    (rng.gen_range(0..p.pow(j)), j)
                })
                .collect();
            let w = SetDescriptor::residue_classes(s.internal_space(), &classes).map_err(|e| e.to_string())?;
            let got = s
                .cut_and_project(&w, &SetDescriptor::int_closed(-r, r))
                .and_then(|x| x.to_point_set())
                .map_err(|e| e.to_string())?
                .to_integers()
                .ok_or("non-integer points")?;
            let want: Vec<i64> = (-r..=r)
                .filter(|n| classes.iter().any(|&(c, j)| n.rem_euclid(p.pow(j) as i64) as u64 == c))
                .collect();
            if got != want {
                return Err(format!("p = {p}, classes {classes:?}, R = {r}"));
            }
            points += got.len();
        }
    }
    Ok(format!("10 seeded scheme/window pairs, {points} points"))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["generate", "--scheme", "padic:5", "--window", r#"{"residues":[[2,1]]}"#, "--radius", "20"],
    &["generate", "--window", r#"{"intervals":[[0,1]]}"#, "--radius", "50"],
    &["density", "--window", r#"{"intervals":[[0,1]]}"#, "--radius", "2000"],
    &["mean", "--window", r#"{"intervals":[[0,1]]}"#, "--horizon", "300"],
    &["gap-cert", "--window", r#"{"intervals":[[0,1]]}"#, "--horizon", "300", "--eps", "0.1"],
    &["t-operator", "--radius", "100", "--param", "trials=10"],
    &["meyer-check", "--window", r#"{"intervals":[[0,1]]}"#, "--radius", "150"],
    &["counterexample", "--param", "bound=10000", "--param", "udens_horizons=[100,1000]"],
    &["lift-check", "--radius", "100", "--param", r#"beta="1/3""#, "--param", "gamma=0"],
    &["reconstruct", "--scheme", "padic:2", "--radius", "2000", "--param", "source=\"m-theta\""],
];

fn run_cli(args: &[&str], out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_aperiodica"))
        .args(args)
        .args(["--seed", "17", "--out"])
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&status.stderr)));
    }
    Ok(())
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for (i, args) in DETERMINISM_RUNS.iter().enumerate() {
        let (a, b) = (dir.path().join(format!("{i}a")), dir.path().join(format!("{i}b")));
        run_cli(args, &a)?;
        run_cli(args, &b)?;
        for name in ["results.json", "points.csv", "strip.svg"] {
            let (fa, fb) = (std::fs::read(a.join(name)).ok(), std::fs::read(b.join(name)).ok());
            if fa != fb {
                return Err(format!("{} differs for {args:?}", name));
            }
            compared += fa.is_some() as usize;
        }
    }
    Ok(format!("{} pipelines, {compared} artifacts byte-identical", DETERMINISM_RUNS.len()))
}

fn main() {
    let checks: [Criterion; 10] = [
        ("p-adic exactness", 1, p_adic_exactness),
        ("density formula", 10, density_formula),
        ("gap certificate", 30, gap_certificates),
        ("T operator properties", 10, t_operator_properties),
        ("Lambda_theta density bound", 60, lambda_pi_density),
        ("character lift", 5, character_lift),
        ("window reconstruction", 30, window_reconstruction),
        ("mean uniformity", 5, mean_uniformity),
        ("brute-force oracle equivalence", 10, brute_force_equivalence),
        ("determinism", 5, determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match result {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        failures += !ok as usize;
        let time_note = if in_time { String::new() } else { " TOO SLOW".to_string() };
        println!(
            "{} {:>2}. {name}: {detail} [{:.2}s / {limit}s{time_note}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} acceptance check(s) failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance checks passed");
}
