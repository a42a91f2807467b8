//! Max-modulus search on spheres `|q| = t`, sampled Bernstein-type derivative
//! checks, and the zero-free ball around the max-modulus point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::refined_radius;
use crate::companion::Ball;
use crate::error::{Error, Result};
use crate::poly::{nth_derivative, QPolynomial};
use crate::quat::{project_to_sphere, sample_sphere, Quaternion};

pub const DEFAULT_SAMPLES: usize = 50_000;
/// Step sizes, relative to `t`, of the three local refinement rounds.
const REFINE_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
const REFINE_MAX_SWEEPS: usize = 200;
/// Slack on the sampled Bernstein comparison, relative to `max(1, bound)`.
pub const BERNSTEIN_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxModulusResult {
    pub t: f64,
    /// Best point found on the whole sphere.
    pub argmax: Quaternion,
    /// `|f(argmax)|`, a lower estimate of `max_{|q|=t} |f(q)|`.
    pub value: f64,
    /// Best point on the complex slice `t·e^{iα}`.
    pub complex_argmax: Quaternion,
    pub complex_value: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Larger value wins; ties go to the lexicographically smaller point.
fn better(a: (f64, Quaternion), b: (f64, Quaternion)) -> (f64, Quaternion) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if b.1.lex_cmp(&a.1).is_lt() {
                b
            } else {
                a
            }
        }
    }
}

/// Best point by `score`, independent of how rayon partitions the work.
fn best_of<F>(points: &[Quaternion], score: F) -> (f64, Quaternion)
where
    F: Fn(Quaternion) -> f64 + Sync,
{
    points
        .par_iter()
        .map(|&p| (score(p), p))
        .reduce(|| (f64::NEG_INFINITY, Quaternion::ZERO), better)
}

/// Hill climbing on `|q| = t` by axis perturbations with shrinking steps.
fn refine_on_sphere<F>(start: (f64, Quaternion), t: f64, score: F) -> (f64, Quaternion)
where
    F: Fn(Quaternion) -> f64,
{
    let mut best = start;
    for rel in REFINE_STEPS {
        let step = rel * t;
        for _ in 0..REFINE_MAX_SWEEPS {
            let mut improved = false;
            for axis in 0..4 {
                for sign in [-1.0, 1.0] {
                    let mut c = best.1.to_array();
                    c[axis] += sign * step;
                    let cand = project_to_sphere(Quaternion::from(c), t);
                    let v = score(cand);
                    if v > best.0 {
                        best = (v, cand);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    best
}

/// Same search restricted to `t·e^{iα}`.
fn complex_slice_max<F>(t: f64, count: usize, score: F) -> (f64, Quaternion)
where
    F: Fn(Quaternion) -> f64 + Sync,
{
    let m = count.clamp(8, 4096);
    let at = |alpha: f64| Quaternion::new(t * alpha.cos(), t * alpha.sin(), 0.0, 0.0);
    let mut pts: Vec<Quaternion> = (0..m)
        .map(|j| at(2.0 * std::f64::consts::PI * j as f64 / m as f64))
        .collect();
    pts.extend_from_slice(&[Quaternion::real(t), Quaternion::real(-t)]);
    let (mut v, mut p) = best_of(&pts, &score);
    let mut alpha = p.x.atan2(p.w);
    let mut step = 2.0 * std::f64::consts::PI / m as f64;
    while step > 1e-12 {
        let mut improved = false;
        for s in [-step, step] {
            let cand = at(alpha + s);
            let cv = score(cand);
            if cv > v {
                (v, p, alpha) = (cv, cand, alpha + s);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (v, p)
}

fn check_sphere_args(t: f64, count: usize) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Argument(format!("t must be positive, got {t}")));
    }
    if count == 0 {
        return Err(Error::Argument("sample count must be at least 1".into()));
    }
    Ok(())
}

/// Estimates `max_{|q|=t} |f(q)|` from `count` seeded samples plus the axis
/// points, then refines the best sample locally.
pub fn max_modulus_on_sphere(f: &QPolynomial, t: f64, count: usize, seed: u64) -> Result<MaxModulusResult> {
    check_sphere_args(t, count)?;
    let sample = sample_sphere(t, count, seed)?;
    let score = |q: Quaternion| f.eval_right(q).norm();
    let (value, argmax) = refine_on_sphere(best_of(&sample.points, score), t, score);
    let (complex_value, complex_argmax) = complex_slice_max(t, count, score);
    Ok(MaxModulusResult {
        t,
        argmax,
        value,
        complex_argmax,
        complex_value,
        samples: count,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BernsteinReport {
    pub k: usize,
    pub t: f64,
    /// Sampled estimate of `max_{|q|=t} |f^{(k)}(q)|`.
    pub max_derivative: f64,
    /// Sampled estimate of `max_{|q|=t} |f(q)|`.
    pub max_value: f64,
    /// `n(n-1)⋯(n-k+1) / t^k`.
    pub factor: f64,
    pub bound: f64,
    pub pass: bool,
    /// Always true: both maxima are estimates, so this is a check, not a proof.
    pub sampled: bool,
}

/// `max|f^{(k)}| ≤ n(n-1)⋯(n-k+1)/t^k · max|f|` on `|q| = t` for every
/// `k = 1..=n`, with both maxima estimated on the same sample set.
pub fn bernstein_check_all(f: &QPolynomial, t: f64, samples: usize, seed: u64) -> Result<Vec<BernsteinReport>> {
    (1..=f.degree())
        .map(|k| bernstein_check(f, t, k, samples, seed))
        .collect()
}

/// Sampled check of the `k`-th derivative inequality.
pub fn bernstein_check(f: &QPolynomial, t: f64, k: usize, samples: usize, seed: u64) -> Result<BernsteinReport> {
    let n = f.degree();
    if k == 0 || k > n {
        return Err(Error::Argument(format!("derivative order must be in 1..={n}, got {k}")));
    }
    check_sphere_args(t, samples)?;
    let sample = sample_sphere(t, samples, seed)?;
    let dk = nth_derivative(f, k);
    let score_f = |q: Quaternion| f.eval_right(q).norm();
    let score_d = |q: Quaternion| dk.eval_right(q).norm();
    let (max_value, _) = refine_on_sphere(best_of(&sample.points, score_f), t, score_f);
    let (max_derivative, _) = refine_on_sphere(best_of(&sample.points, score_d), t, score_d);
    let falling: f64 = (n - k + 1..=n).map(|j| j as f64).product();
    let factor = falling / t.powi(k as i32);
    let bound = factor * max_value;
    let pass = max_derivative <= bound + BERNSTEIN_SLACK * bound.max(1.0);
    Ok(BernsteinReport {
        k,
        t,
        max_derivative,
        max_value,
        factor,
        bound,
        pass,
        sampled: true,
    })
}

/// `t / (n·(2ⁿ - 1)^{1/n})`.
pub fn zero_free_radius(t: f64, n: usize) -> f64 {
    t / (n as f64 * refined_radius(n, Some(n - 1), 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeBall {
    /// The full-sphere max-modulus point.
    pub center: Quaternion,
    pub radius: f64,
    pub t: f64,
    pub n: usize,
    pub max_modulus: MaxModulusResult,
}

impl ZeroFreeBall {
    /// The open ball `|q - center| < radius`.
    pub fn ball(&self) -> Ball {
        Ball::open(self.center, self.radius)
    }

    /// Same radius, centered at the complex-slice max-modulus point.
    pub fn complex_slice_ball(&self) -> Ball {
        Ball::open(self.max_modulus.complex_argmax, self.radius)
    }

    /// Recomputes the radius from `(t, n)`.
    pub fn radius_is_consistent(&self) -> bool {
        zero_free_radius(self.t, self.n).to_bits() == self.radius.to_bits()
    }
}

/// Open ball around the max-modulus point of `|q| = t` in which `f` has no
/// zeros.
pub fn zero_free_ball(f: &QPolynomial, t: f64, samples: usize, seed: u64) -> Result<ZeroFreeBall> {
    let max_modulus = max_modulus_on_sphere(f, t, samples, seed)?;
    let n = f.degree();
    Ok(ZeroFreeBall {
        center: max_modulus.argmax,
        radius: zero_free_radius(t, n),
        t,
        n,
        max_modulus,
    })
}
