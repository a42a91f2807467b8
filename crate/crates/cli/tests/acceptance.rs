//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Random inputs are seeded, so every run checks the same cases.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use qzero_cli::{emit, parse_json, Format};
use qzero_core::bounds::{
    all_bounds, bound_cauchy, bound_enestrom_kakeya, bound_refined, default_deltas, delta_budget, refined_radius,
};
use qzero_core::companion::{gershgorin_balls, scaled_companion};
use qzero_core::oracle::{class_distance_range, find_zeros, residual_scale, verify_containment, verify_exclusion};
use qzero_core::zerofree::{bernstein_check, bernstein_check_all, zero_free_ball, zero_free_radius};
use qzero_core::{QPolynomial, Quaternion, RootConfig, ZeroSet};

const MARGIN: f64 = 1e-9;
const SAMPLES: usize = 20_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Quaternion {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let q = Quaternion::from(v);
        let n = q.norm();
        if n > 1e-6 {
            return q / n;
        }
    }
}

/// Monic, degree `n`, coefficient norms uniform in `[0, m]`.
fn random_poly(rng: &mut ChaCha8Rng, n: usize, m: f64) -> QPolynomial {
    let coeffs = (0..n).map(|_| random_unit(rng) * rng.random_range(0.0..=m)).collect();
    QPolynomial::new(coeffs).unwrap()
}

fn zeros(f: &QPolynomial) -> ZeroSet {
    find_zeros(f, &RootConfig::default()).unwrap()
}

fn worst(acc: &mut f64, v: Option<f64>) {
    if let Some(v) = v {
        *acc = acc.min(v);
    }
}

fn containment_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0usize;
    let mut worst_margin = f64::INFINITY;
    let mut problems = Vec::new();
    for n in 2..=6 {
        for m in [0.5, 1.0, 2.0] {
            for _ in 0..1000 {
                let f = random_poly(&mut rng, n, m);
                let zs = zeros(&f);
                if zs.count() != n || zs.deficit != 0 {
                    problems.push(format!("oracle found {} of {n} zeros for {f}", zs.count()));
                    continue;
                }
                for b in all_bounds(&f).unwrap() {
                    let Some(region) = &b.region else { continue };
                    let v = verify_containment(&zs, region, MARGIN);
                    worst(&mut worst_margin, v.worst_margin);
                    if !v.pass {
                        problems.push(format!("{} fails for {f}", b.method));
                    }
                }
                checked += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        problems.push(format!("took {secs:.1} s"));
    }
    outcome(
        problems.is_empty(),
        format!(
            "{checked} polynomials, worst margin {worst_margin:.3e}, {secs:.1} s{}",
            problems
                .first()
                .map(|p| format!("; first problem: {p}"))
                .unwrap_or_default()
        ),
    )
}

fn sharpness_witness() -> Outcome {
    let f = QPolynomial::from_real(&[1.0, 0.0]).unwrap();
    let r = bound_refined(&f, None).unwrap().radius().unwrap();
    let zs = zeros(&f);
    let [s] = zs.spherical.as_slice() else {
        return outcome(false, format!("expected one spherical class, got {:?}", zs));
    };
    let norm = s.normsq.sqrt();
    let pass = (r - 1.0).abs() <= 1e-12 && (norm - 1.0).abs() <= 1e-12 && s.re.abs() <= 1e-12 && zs.isolated.is_empty();
    outcome(pass, format!("refined radius {r}, class norm {norm}, Re {}", s.re))
}

fn worked_example() -> Outcome {
    let f = QPolynomial::new(vec![Quaternion::J, Quaternion::I]).unwrap();
    let expected = [
        Quaternion::new(0.5, -0.5, -0.5, -0.5),
        Quaternion::new(-0.5, -0.5, 0.5, -0.5),
    ];
    let zs = zeros(&f);
    let found = zs.isolated.len() == 2
        && zs.spherical.is_empty()
        && expected
            .iter()
            .all(|e| zs.isolated.iter().any(|z| z.zero.dist(*e) <= 1e-10));
    let max_res = zs.isolated.iter().map(|z| z.residual).fold(0.0, f64::max);
    let independent = expected
        .iter()
        .map(|&e| (e * e + e * Quaternion::I + Quaternion::J).norm())
        .fold(0.0, f64::max);
    let refined = bound_refined(&f, None).unwrap().radius().unwrap();
    let cauchy = bound_cauchy(&f).radius().unwrap();
    let pass = found
        && max_res <= 1e-10
        && independent <= 1e-10
        && (refined - 3f64.sqrt()).abs() <= 1e-12
        && cauchy == 2.0
        && refined < cauchy;
    outcome(
        pass,
        format!("zeros matched: {found}, max residual {max_res:e}, refined {refined}, cauchy {cauchy}"),
    )
}

fn log_grid() -> Vec<f64> {
    (-30..=30).map(|e| 10f64.powf(e as f64 / 10.0)).collect()
}

fn dominance_grid() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=20 {
        for p in 0..n {
            for &m in &log_grid() {
                let r = refined_radius(n, Some(p), m);
                let cauchy = 1.0 + m;
                cases += 1;
                if r > cauchy * (1.0 + 1e-12) || (p < n - 1 && r >= cauchy) {
                    bad.push(format!("n={n} p={p} M={m}: {r} vs {cauchy}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{cases} grid points{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn delta_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_rel = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut bad = Vec::new();
    for n in 1..=20 {
        for p in 0..n {
            for &m in &log_grid() {
                let direct: f64 = (1..=p + 1).map(|k| m / (1.0 + m).powi((n - p + k - 1) as i32)).sum();
                let closed = delta_budget(n, p, m);
                let rel = (direct - closed).abs() / closed.abs();
                worst_rel = worst_rel.max(rel);
                if rel > 1e-12 {
                    bad.push(format!("identity n={n} p={p} M={m}: {direct} vs {closed}"));
                }
            }
        }
        for &m in &log_grid() {
            // Extreme case: every coefficient of norm M, then a random one.
            let full = QPolynomial::new((0..n).map(|_| random_unit(&mut rng) * m).collect()).unwrap();
            for f in [full, random_poly(&mut rng, n, m)] {
                let big_m = f.max_coeff_norm();
                if big_m == 0.0 {
                    continue;
                }
                let s = default_deltas(&f, big_m).unwrap().sum_norm();
                worst_sum = worst_sum.max(s);
                if s > 1.0 + 1e-11 {
                    bad.push(format!("delta sum {s} for n={n} M={m}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "worst relative error {worst_rel:.2e}, largest delta sum {worst_sum}{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn gershgorin_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_margin = f64::INFINITY;
    let mut bad = Vec::new();
    for _ in 0..200 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(0.1..3.0);
        let f = random_poly(&mut rng, n, m);
        let zs = zeros(&f);
        for _ in 0..5 {
            let d: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.random_range(-1.0..1.0))).collect();
            let region = gershgorin_balls(&scaled_companion(&f, &d).unwrap());
            let v = verify_containment(&zs, &region, MARGIN);
            worst(&mut worst_margin, v.worst_margin);
            if !v.pass {
                bad.push(format!("{f} with D = {d:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "1000 scaled matrices, worst margin {worst_margin:.3e}{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn zero_free() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_margin = f64::INFINITY;
    let mut bad = Vec::new();
    for i in 0..200 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(0.1..3.0);
        let f = random_poly(&mut rng, n, m);
        let zs = zeros(&f);
        for t in [0.5, 1.0, 2.0] {
            let z = zero_free_ball(&f, t, SAMPLES, i).unwrap();
            for ball in [z.ball(), z.complex_slice_ball()] {
                let v = verify_exclusion(&zs, &ball, MARGIN);
                worst(&mut worst_margin, v.worst_margin);
                if !v.pass {
                    bad.push(format!("{f} at t = {t}"));
                }
            }
        }
    }

    let f = QPolynomial::from_real(&[1.0, 0.0]).unwrap();
    let z = zero_free_ball(&f, 1.0, SAMPLES, 0).unwrap();
    let expect = 1.0 / (2.0 * 3f64.sqrt());
    let class = zeros(&f).spherical[0].class();
    let nearest = class_distance_range(class, z.center).0;
    if (z.radius - expect).abs() > 1e-12 || (zero_free_radius(1.0, 2) - expect).abs() > 1e-12 {
        bad.push(format!("spot radius {} != {expect}", z.radius));
    }
    if (nearest - 2f64.sqrt()).abs() > 1e-9 {
        bad.push(format!("nearest zero at {nearest}, center {}", z.center));
    }
    outcome(
        bad.is_empty(),
        format!(
            "600 balls, worst margin {worst_margin:.3e}; spot radius {}, nearest zero {nearest}{}",
            z.radius,
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn bernstein() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = 0;
    let mut bad = Vec::new();
    for i in 0..200 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(0.1..3.0);
        let f = random_poly(&mut rng, n, m);
        for t in [0.5, 1.0, 2.0] {
            for r in bernstein_check_all(&f, t, SAMPLES, i).unwrap() {
                checks += 1;
                if !r.pass {
                    bad.push(format!("{f}, k = {}, t = {t}: {} > {}", r.k, r.max_derivative, r.bound));
                }
            }
        }
    }
    let mut worst_gap = 0.0f64;
    for n in 1..=6 {
        let f = QPolynomial::monomial(n).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let r = bernstein_check(&f, t, 1, SAMPLES, 0).unwrap();
            let gap = (r.max_derivative - r.bound).abs() / r.bound.max(1.0);
            worst_gap = worst_gap.max(gap);
            if gap > 1e-9 {
                bad.push(format!("q^{n}, t = {t}: {} vs {}", r.max_derivative, r.bound));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checks} sampled inequalities, monomial equality gap {worst_gap:.2e}{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn zero_moduli(zs: &ZeroSet) -> Vec<f64> {
    zs.isolated
        .iter()
        .map(|z| z.zero.norm())
        .chain(zs.spherical.iter().map(|s| s.normsq.sqrt()))
        .collect()
}

fn enestrom_kakeya() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut largest = 0.0f64;
    let mut bad = Vec::new();
    for _ in 0..500 {
        let n = rng.random_range(1..=6);
        let mut acc = 0.0;
        let mut all: Vec<Quaternion> = (0..=n)
            .map(|_| {
                // Occasional zero steps give repeated coefficients.
                if rng.random_bool(0.8) {
                    acc += rng.random_range(0.0..2.0);
                }
                Quaternion::real(acc)
            })
            .collect();
        if all[n].w == 0.0 {
            all[n] = Quaternion::ONE;
        }
        if !bound_enestrom_kakeya(&all).applicable {
            bad.push(format!("not applicable to {all:?}"));
            continue;
        }
        let f = QPolynomial::from_non_monic(&all).unwrap();
        let zs = zeros(&f);
        if zs.count() != n {
            bad.push(format!("oracle found {} of {n} zeros for {all:?}", zs.count()));
            continue;
        }
        for r in zero_moduli(&zs) {
            largest = largest.max(r);
            if r > 1.0 + 1e-9 {
                bad.push(format!("zero of modulus {r} for {all:?}"));
            }
        }
    }
    let spot = QPolynomial::from_non_monic(&[1.0, 2.0, 3.0].map(Quaternion::real)).unwrap();
    let moduli = zero_moduli(&zeros(&spot));
    let expect = (1.0f64 / 3.0).sqrt();
    if moduli.is_empty() || moduli.iter().any(|r| (r - expect).abs() > 1e-10) {
        bad.push(format!("spot moduli {moduli:?}"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "500 sequences, largest modulus {largest}; spot moduli {moduli:?}{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn oracle_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_err = 0.0f64;
    let mut worst_res = 0.0f64;
    let mut bad = Vec::new();
    for _ in 0..500 {
        let n = rng.random_range(1..=6);
        let roots: Vec<Quaternion> = (0..n)
            .map(|_| random_unit(&mut rng) * rng.random_range(0.2..2.0))
            .collect();
        let f = QPolynomial::from_linear_factors(&roots).unwrap();
        let zs = zeros(&f);
        let known = roots[0];
        let err = zs
            .isolated
            .iter()
            .map(|z| z.zero.dist(known))
            .chain(zs.spherical.iter().map(|s| {
                let (lo, _) = class_distance_range(s.class(), known);
                lo
            }))
            .fold(f64::INFINITY, f64::min);
        worst_err = worst_err.max(err);
        let scale = residual_scale(&f);
        let res = zs.isolated.iter().map(|z| z.residual / scale).fold(0.0, f64::max);
        worst_res = worst_res.max(res);
        if err > 1e-8 || res > 1e-8 || zs.count() != n {
            bad.push(format!(
                "roots {roots:?}: error {err:e}, residual {res:e}, {} zeros",
                zs.count()
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "500 products, worst root error {worst_err:.2e}, worst scaled residual {worst_res:.2e}{}",
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    )
}

fn cli_golden() -> Outcome {
    let golden_path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/worked_example.json");
    let golden = match std::fs::read_to_string(golden_path) {
        Ok(g) => g,
        Err(e) => return outcome(false, format!("cannot read golden file: {e}")),
    };
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qzero"))
            .args(["--poly", "0 0 1 0, 0 1 0 0", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let outputs: Vec<_> = (0..2).map(|_| run()).collect();
    let texts: BTreeSet<&[u8]> = outputs.iter().map(|o| o.stdout.as_slice()).collect();
    let status_ok = outputs.iter().all(|o| o.status.success());
    let identical = texts.len() == 1 && outputs[0].stdout == golden.as_bytes();
    let round_trip = parse_json(&golden)
        .map(|r| emit(&r, Format::Json) == golden)
        .unwrap_or(false);
    outcome(
        status_ok && identical && round_trip,
        format!("exit ok: {status_ok}, matches golden across runs: {identical}, round trip: {round_trip}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("containment sweep", containment_sweep),
        ("sharpness witness q^2 + 1", sharpness_witness),
        ("worked isolated-zero case", worked_example),
        ("refinement dominance grid", dominance_grid),
        ("delta budget identity", delta_identity),
        ("gershgorin consistency", gershgorin_consistency),
        ("zero-free ball", zero_free),
        ("bernstein checks", bernstein),
        ("enestrom-kakeya", enestrom_kakeya),
        ("oracle soundness", oracle_soundness),
        ("cli determinism and round trip", cli_golden),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
