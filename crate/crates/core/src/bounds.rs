//! Zero-inclusion regions for monic quaternionic polynomials.
//!
//! Every bound is a pure function returning a [`BoundResult`]. A bound whose
//! hypothesis fails returns a result flagged not applicable rather than an
//! error, so callers can tabulate all bounds side by side. Errors are reserved
//! for invalid caller-supplied parameters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::companion::{Ball, Region};
use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::quat::Quaternion;

/// Lower clamp for the default scale `r` of the two-ball union bound.
pub const RATHER_MIN_R: f64 = 1e-9;
/// Imaginary parts below this count as zero for the Eneström–Kakeya test.
pub const REAL_COEFF_TOL: f64 = 1e-14;
/// Allowed rounding excess in `Σ|δ_k| ≤ 1`.
pub const DELTA_SUM_TOL: f64 = 1e-11;
/// Relative factor for the norm given to `δ_k` of a vanishing coefficient.
pub const DELTA_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    EnestromKakeya,
    Cauchy,
    RatherUnion,
    RefinedLacunary,
    #[serde(rename = "corollary_1")]
    Corollary1,
    #[serde(rename = "corollary_2")]
    Corollary2,
    #[serde(rename = "corollary_3")]
    Corollary3,
    #[serde(rename = "corollary_4")]
    Corollary4,
    GeneralizedDelta,
}

impl BoundMethod {
    pub const ALL: [BoundMethod; 9] = [
        BoundMethod::EnestromKakeya,
        BoundMethod::Cauchy,
        BoundMethod::RatherUnion,
        BoundMethod::RefinedLacunary,
        BoundMethod::Corollary1,
        BoundMethod::Corollary2,
        BoundMethod::Corollary3,
        BoundMethod::Corollary4,
        BoundMethod::GeneralizedDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::EnestromKakeya => "enestrom_kakeya",
            BoundMethod::Cauchy => "cauchy",
            BoundMethod::RatherUnion => "rather_union",
            BoundMethod::RefinedLacunary => "refined_lacunary",
            BoundMethod::Corollary1 => "corollary_1",
            BoundMethod::Corollary2 => "corollary_2",
            BoundMethod::Corollary3 => "corollary_3",
            BoundMethod::Corollary4 => "corollary_4",
            BoundMethod::GeneralizedDelta => "generalized_delta",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub method: BoundMethod,
    /// Present iff `applicable`.
    pub region: Option<Region>,
    pub parameters: BTreeMap<String, f64>,
    pub applicable: bool,
    pub reason: Option<String>,
}

impl BoundResult {
    fn applicable(method: BoundMethod, region: Region, parameters: &[(&str, f64)]) -> Self {
        Self {
            method,
            region: Some(region),
            parameters: params(parameters),
            applicable: true,
            reason: None,
        }
    }

    fn not_applicable(method: BoundMethod, reason: impl Into<String>, parameters: &[(&str, f64)]) -> Self {
        Self {
            method,
            region: None,
            parameters: params(parameters),
            applicable: false,
            reason: Some(reason.into()),
        }
    }

    /// Radius of a single-ball region centered at the origin.
    pub fn radius(&self) -> Option<f64> {
        match self.region.as_ref()?.balls.as_slice() {
            [b] if b.center.is_zero() => Some(b.radius),
            _ => None,
        }
    }
}

fn params(p: &[(&str, f64)]) -> BTreeMap<String, f64> {
    p.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn p_param(p: Option<usize>) -> f64 {
    p.map_or(-1.0, |p| p as f64)
}

/// `ln(eˣ - 1)` for `x ≥ 0`, without overflow for large `x`.
fn ln_expm1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// `((1 + M)^{p+1} - 1)^{1/n}`, or 0 when `p = -1`.
///
/// Computed in log space: `(1 + M)^{p+1}` overflows long before its root does.
pub fn refined_radius(n: usize, p: Option<usize>, m: f64) -> f64 {
    let Some(p) = p else { return 0.0 };
    let x = (p as f64 + 1.0) * m.ln_1p();
    (ln_expm1(x) / n as f64).exp()
}

/// `((1 + M)^{p+1} - 1) / (1 + M)^n`, the closed form of
/// `Σ_{k=1}^{p+1} M / (1 + M)^{n-p+k-1}`.
pub fn delta_budget(n: usize, p: usize, m: f64) -> f64 {
    let l = m.ln_1p();
    (ln_expm1((p as f64 + 1.0) * l) - n as f64 * l).exp()
}

/// Eneström–Kakeya: real `0 ≤ a_0 ≤ a_1 ≤ … ≤ a_n` (with `a_n > 0`) puts all
/// zeros in `|q| ≤ 1`. `all` lists `a_0 … a_n` including the leading term.
pub fn bound_enestrom_kakeya(all: &[Quaternion]) -> BoundResult {
    let method = BoundMethod::EnestromKakeya;
    if all.len() < 2 {
        return BoundResult::not_applicable(method, "degree must be at least 1", &[]);
    }
    if let Some(k) = all.iter().position(|a| a.imag_norm() > REAL_COEFF_TOL) {
        return BoundResult::not_applicable(method, format!("coefficient a_{k} is not real"), &[]);
    }
    let reals: Vec<f64> = all.iter().map(|a| a.w).collect();
    if reals[0] < 0.0 {
        return BoundResult::not_applicable(method, "a_0 is negative", &[]);
    }
    if let Some(k) = reals.windows(2).position(|w| w[1] < w[0]) {
        return BoundResult::not_applicable(method, format!("coefficients decrease from a_{k} to a_{}", k + 1), &[]);
    }
    if !(reals[reals.len() - 1] > 0.0) {
        return BoundResult::not_applicable(method, "leading coefficient is zero", &[]);
    }
    BoundResult::applicable(
        method,
        Region::single(Ball::origin(1.0)),
        &[("n", (all.len() - 1) as f64)],
    )
}

/// Eneström–Kakeya on a monic polynomial (leading coefficient 1).
pub fn bound_enestrom_kakeya_monic(f: &QPolynomial) -> BoundResult {
    let all: Vec<Quaternion> = (0..=f.degree()).map(|k| f.coeff(k)).collect();
    bound_enestrom_kakeya(&all)
}

/// Cauchy: `|q| ≤ 1 + max_k |a_k|`.
pub fn bound_cauchy(f: &QPolynomial) -> BoundResult {
    let m = f.max_coeff_norm();
    BoundResult::applicable(
        BoundMethod::Cauchy,
        Region::single(Ball::origin(1.0 + m)),
        &[("M", m), ("n", f.degree() as f64)],
    )
}

/// Coefficient `a_ν` in the descending convention `qⁿ + q^{n-1} a_1 + … + a_n`.
fn descending(f: &QPolynomial, nu: usize) -> Quaternion {
    f.coeff(f.degree() - nu)
}

/// Smallest `r` (clamped at [`RATHER_MIN_R`]) for which the nonzero
/// `α_ν = |a_ν| / r^ν`, `ν ≥ 2`, are nonincreasing.
pub fn default_rather_r(f: &QPolynomial) -> f64 {
    let n = f.degree();
    let nonzero: Vec<(usize, f64)> = (2..=n)
        .map(|nu| (nu, descending(f, nu).norm()))
        .filter(|&(_, a)| a > 0.0)
        .collect();
    let r = match nonzero.as_slice() {
        [] => RATHER_MIN_R,
        [(m, a)] => a.powf(1.0 / *m as f64),
        _ => nonzero
            .windows(2)
            .map(|w| (w[1].1 / w[0].1).powf(1.0 / (w[1].0 - w[0].0) as f64))
            .fold(0.0, f64::max),
    };
    r.max(RATHER_MIN_R)
}

/// Two-ball union: `{|q| ≤ r(1 + α)} ∪ {|q + a_1| ≤ r}` with `α_ν = |a_ν| / r^ν`
/// and `α = max_{ν≥2} α_ν`, which is `α_2` when the nonzero `α_ν` are ordered
/// decreasingly. Coefficients are indexed in descending order
/// (`a_ν` multiplies `q^{n-ν}`).
pub fn bound_rather(f: &QPolynomial, r: Option<f64>) -> Result<BoundResult> {
    let method = BoundMethod::RatherUnion;
    let n = f.degree();
    if let Some(r) = r {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Argument(format!("r must be positive, got {r}")));
        }
    }
    if n < 2 {
        return Ok(BoundResult::not_applicable(method, "degree must be at least 2", &[]));
    }
    let r = r.unwrap_or_else(|| default_rather_r(f));
    let alphas: Vec<(usize, f64)> = (2..=n)
        .map(|nu| (nu, descending(f, nu).norm() / r.powi(nu as i32)))
        .collect();
    let alpha_2 = alphas[0].1;
    let positive: Vec<&(usize, f64)> = alphas.iter().filter(|(_, a)| *a > 0.0).collect();
    if let Some(w) = positive.windows(2).find(|w| w[1].1 > w[0].1 * (1.0 + 1e-12)) {
        return Ok(BoundResult::not_applicable(
            method,
            format!("alpha_{} < alpha_{} at r = {r}", w[0].0, w[1].0),
            &[("r", r)],
        ));
    }
    let alpha_max = alphas.iter().map(|&(_, a)| a).fold(0.0, f64::max);
    let a1 = descending(f, 1);
    let region = Region::new(vec![Ball::origin(r * (1.0 + alpha_max)), Ball::closed(-a1, r)])?;
    Ok(BoundResult::applicable(
        method,
        region,
        &[
            ("alpha_2", alpha_2),
            ("alpha_max", alpha_max),
            ("n", n as f64),
            ("r", r),
        ],
    ))
}

/// Refined Cauchy bound: `|q| ≤ ((1 + M)^{p+1} - 1)^{1/n}` with `p` the lacunary index
/// and `M ≥ max_{k≤p} |a_k|` (the maximum itself by default).
pub fn bound_refined(f: &QPolynomial, m: Option<f64>) -> Result<BoundResult> {
    let coeff_max = f.max_coeff_norm();
    let m = match m {
        None => coeff_max,
        Some(m) if !(m >= 0.0) || !m.is_finite() => {
            return Err(Error::Argument(format!("M must be a nonnegative real, got {m}")))
        }
        Some(m) if m < coeff_max => {
            return Err(Error::Argument(format!(
                "M = {m} is smaller than max |a_k| = {coeff_max}"
            )))
        }
        Some(m) => m,
    };
    let n = f.degree();
    let p = f.lacunary_index();
    Ok(BoundResult::applicable(
        BoundMethod::RefinedLacunary,
        Region::single(Ball::origin(refined_radius(n, p, m))),
        &[("M", m), ("n", n as f64), ("p", p_param(p))],
    ))
}

/// Simplified consequences of the refined bound, in order:
/// 1. `((1 + M)ⁿ - 1)^{1/n}`, ignoring lacunarity;
/// 2. `(1 + M)^{(p+1)/n}`;
/// 3. `2^{(p+1)/n}` when `M ≤ 1`;
/// 4. `(2ⁿ - 1)^{1/n}` when `M ≤ 1`.
pub fn bound_corollaries(f: &QPolynomial) -> Vec<BoundResult> {
    let n = f.degree();
    let nf = n as f64;
    let p = f.lacunary_index();
    let p1 = p.map_or(0.0, |p| p as f64 + 1.0);
    let m = f.max_coeff_norm();
    let base = [("M", m), ("n", nf), ("p", p_param(p))];
    let ball = |r: f64| Region::single(Ball::origin(r));

    let cor1 = BoundResult::applicable(BoundMethod::Corollary1, ball(refined_radius(n, Some(n - 1), m)), &base);
    let cor2 = BoundResult::applicable(BoundMethod::Corollary2, ball((p1 / nf * m.ln_1p()).exp()), &base);
    let (cor3, cor4) = if m <= 1.0 {
        (
            BoundResult::applicable(BoundMethod::Corollary3, ball((p1 / nf * 2f64.ln()).exp()), &base),
            BoundResult::applicable(
                BoundMethod::Corollary4,
                ball(refined_radius(n, Some(n - 1), 1.0)),
                &base,
            ),
        )
    } else {
        let why = format!("some |a_j| exceeds 1 (max {m})");
        (
            BoundResult::not_applicable(BoundMethod::Corollary3, why.clone(), &base),
            BoundResult::not_applicable(BoundMethod::Corollary4, why, &base),
        )
    };
    vec![cor1, cor2, cor3, cor4]
}

/// `p + 1` nonzero weights with `Σ|δ_k| ≤ 1`. Only the norms matter.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaWeights {
    deltas: Vec<Quaternion>,
    sum_norm: f64,
}

impl DeltaWeights {
    pub fn new(deltas: Vec<Quaternion>) -> Result<Self> {
        if let Some(k) = deltas.iter().position(|d| !(d.norm() > 0.0) || !d.is_finite()) {
            return Err(Error::Argument(format!("delta_{} must be nonzero and finite", k + 1)));
        }
        let sum_norm: f64 = deltas.iter().map(|d| d.norm()).sum();
        if sum_norm > 1.0 + DELTA_SUM_TOL {
            return Err(Error::Argument(format!("sum of |delta_k| is {sum_norm} > 1")));
        }
        Ok(Self { deltas, sum_norm })
    }

    /// Real weights with the given norms.
    pub fn from_norms(norms: &[f64]) -> Result<Self> {
        Self::new(norms.iter().map(|&x| Quaternion::real(x)).collect())
    }

    pub fn deltas(&self) -> &[Quaternion] {
        &self.deltas
    }

    pub fn sum_norm(&self) -> f64 {
        self.sum_norm
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// `δ_k = [(1+M)ⁿ / ((1+M)^{p+1} - 1)] · a_{p-k+1} / (1+M)^{n-p+k-1}`.
///
/// The geometric sum `Σ M/(1+M)^{n-p+k-1} = ((1+M)^{p+1} - 1)/(1+M)ⁿ` keeps
/// `Σ|δ_k| ≤ 1`. A vanishing `a_{p-k+1}` gets the real weight
/// `M·10⁻¹²/(1+M)^{n-p+k-1}` so every weight stays nonzero.
pub fn default_deltas(f: &QPolynomial, m: f64) -> Result<DeltaWeights> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Argument(format!("M must be positive, got {m}")));
    }
    let coeff_max = f.max_coeff_norm();
    if m < coeff_max {
        return Err(Error::Argument(format!(
            "M = {m} is smaller than max |a_k| = {coeff_max}"
        )));
    }
    let Some(p) = f.lacunary_index() else {
        return DeltaWeights::new(Vec::new());
    };
    let n = f.degree();
    let l = m.ln_1p();
    let ln_budget = ln_expm1((p as f64 + 1.0) * l);
    let deltas = (1..=p + 1)
        .map(|k| {
            let a = f.coeff(p + 1 - k);
            let e = (n - p + k - 1) as f64;
            if a.is_zero() {
                Quaternion::real(m * DELTA_FLOOR * (-e * l).exp())
            } else {
                // (1+M)^n / (1+M)^e = (1+M)^{p+1-k}
                a * (((p + 1 - k) as f64) * l - ln_budget).exp()
            }
        })
        .collect();
    DeltaWeights::new(deltas)
}

/// Weighted bound: `|q| ≤ max_k (|a_{p-k+1}| / |δ_k|)^{1/(n-p+k-1)}`.
pub fn bound_generalized(f: &QPolynomial, w: &DeltaWeights) -> Result<BoundResult> {
    let n = f.degree();
    let p = f.lacunary_index();
    let expected = p.map_or(0, |p| p + 1);
    if w.len() != expected {
        return Err(Error::Argument(format!(
            "expected {expected} delta weights (p = {}), got {}",
            p_param(p),
            w.len()
        )));
    }
    let radius = match p {
        None => 0.0,
        Some(p) => (1..=p + 1)
            .map(|k| {
                let a = f.coeff(p + 1 - k).norm();
                if a == 0.0 {
                    return 0.0;
                }
                let e = (n - p + k - 1) as f64;
                ((a.ln() - w.deltas[k - 1].norm().ln()) / e).exp()
            })
            .fold(0.0, f64::max),
    };
    Ok(BoundResult::applicable(
        BoundMethod::GeneralizedDelta,
        Region::single(Ball::origin(radius)),
        &[("delta_sum", w.sum_norm), ("n", n as f64), ("p", p_param(p))],
    ))
}

/// Weighted bound with the default weights at `M = max |a_k|`; `q^n` gives radius 0.
pub fn bound_generalized_default(f: &QPolynomial) -> Result<BoundResult> {
    let m = f.max_coeff_norm();
    if m == 0.0 {
        return bound_generalized(f, &DeltaWeights::new(Vec::new())?);
    }
    bound_generalized(f, &default_deltas(f, m)?)
}

/// Every bound with default parameters, one result per [`BoundMethod`], in
/// [`BoundMethod::ALL`] order.
pub fn all_bounds(f: &QPolynomial) -> Result<Vec<BoundResult>> {
    let mut out = vec![
        bound_enestrom_kakeya_monic(f),
        bound_cauchy(f),
        bound_rather(f, None)?,
        bound_refined(f, None)?,
    ];
    out.extend(bound_corollaries(f));
    out.push(bound_generalized_default(f)?);
    Ok(out)
}
