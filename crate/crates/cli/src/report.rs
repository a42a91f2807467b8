//! Report assembly and rendering.
//!
//! Every float in a [`Report`] is rounded to 12 significant digits when the
//! report is built, so the JSON text is stable across runs and survives a
//! parse/emit round trip unchanged.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use qzero_core::bounds::all_bounds;
use qzero_core::oracle::{find_zeros, verify_containment, verify_exclusion};
use qzero_core::zerofree::zero_free_ball;
use qzero_core::{BoundMethod, BoundResult, Quaternion, RootConfig, VerdictReport};

use crate::error::CliError;
use crate::input::{Form, InputSpec};

pub const SCHEMA: &str = "qzero-report/1";
/// Absolute containment slack, multiplied by `1 + max|a_k|`.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn quad(q: Quaternion) -> [f64; 4] {
    q.to_array().map(round12)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub polynomial: PolynomialEcho,
    pub bounds: Vec<BoundEntry>,
    /// `null` when the oracle was skipped.
    pub zeros: Option<ZerosEntry>,
    pub zero_free: ZeroFreeEntry,
    /// `null` unless timing was requested; timings would break determinism.
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialEcho {
    /// Form of the input; `coefficients` are always the monic f-form.
    pub input_form: Form,
    pub degree: usize,
    /// `a_0 … a_{n-1}`; the leading coefficient is 1.
    pub coefficients: Vec<[f64; 4]>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallEntry {
    pub center: [f64; 4],
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub failures: usize,
    /// Smallest margin over all zeros; `null` when there are none.
    pub worst_margin: Option<f64>,
}

impl Verdict {
    fn from_report(r: &VerdictReport) -> Self {
        Self {
            pass: r.pass,
            failures: r.verdicts.iter().filter(|v| !v.ok).count(),
            worst_margin: r.worst_margin.map(round12),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub applicable: bool,
    /// Set when the region is one ball about the origin.
    pub radius: Option<f64>,
    pub region: Vec<BallEntry>,
    pub parameters: BTreeMap<String, f64>,
    pub reason: Option<String>,
    /// `null` when the oracle was skipped or the bound does not apply.
    pub containment: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedEntry {
    pub zero: [f64; 4],
    pub norm: f64,
    pub residual: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalEntry {
    /// Common real part of the class.
    pub re: f64,
    /// Common squared norm of the class.
    pub normsq: f64,
    /// Radius of the 2-sphere of imaginary parts.
    pub sphere_radius: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZerosEntry {
    /// With multiplicity, spherical classes counting two.
    pub count: usize,
    /// Zeros the oracle could not resolve.
    pub deficit: usize,
    pub digest: String,
    pub isolated: Vec<IsolatedEntry>,
    pub spherical: Vec<SphericalEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeEntry {
    pub t: f64,
    pub radius: f64,
    /// Sampled max-modulus point on `|q| = t`.
    pub center: [f64; 4],
    pub max_modulus: f64,
    pub complex_slice_center: [f64; 4],
    pub complex_slice_max_modulus: f64,
    pub samples: usize,
    pub seed: u64,
    pub exclusion: Option<Verdict>,
    pub complex_slice_exclusion: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub bounds_ms: f64,
    pub oracle_ms: f64,
    pub zero_free_ms: f64,
}

impl Report {
    /// True when every verdict present passed.
    pub fn passed(&self) -> bool {
        let bounds_ok = self
            .bounds
            .iter()
            .filter_map(|b| b.containment.as_ref())
            .all(|v| v.pass);
        let zf = &self.zero_free;
        bounds_ok
            && zf.exclusion.as_ref().is_none_or(|v| v.pass)
            && zf.complex_slice_exclusion.as_ref().is_none_or(|v| v.pass)
    }

    /// Human-readable list of failed verdicts.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .bounds
            .iter()
            .filter_map(|b| {
                let v = b.containment.as_ref()?;
                (!v.pass).then(|| format!("{}: {} zero(s) outside the region", b.name, v.failures))
            })
            .collect();
        for (label, v) in [
            ("zero-free ball", &self.zero_free.exclusion),
            ("complex-slice zero-free ball", &self.zero_free.complex_slice_exclusion),
        ] {
            if let Some(v) = v.as_ref().filter(|v| !v.pass) {
                out.push(format!("{label}: {} zero(s) inside", v.failures));
            }
        }
        out
    }
}

fn bound_entry(b: &BoundResult, containment: Option<Verdict>) -> BoundEntry {
    BoundEntry {
        name: b.method.name().to_string(),
        applicable: b.applicable,
        radius: b.radius().map(round12),
        region: b
            .region
            .iter()
            .flat_map(|r| &r.balls)
            .map(|ball| BallEntry {
                center: quad(ball.center),
                radius: round12(ball.radius),
            })
            .collect(),
        parameters: b.parameters.iter().map(|(k, &v)| (k.clone(), round12(v))).collect(),
        reason: b.reason.clone(),
        containment,
    }
}

fn millis(start: Instant) -> f64 {
    round12(start.elapsed().as_secs_f64() * 1e3)
}

/// Runs every selected bound, the oracle (unless disabled) and the
/// zero-free search. Deterministic in `spec` unless timing is requested.
pub fn run_report(spec: &InputSpec) -> Result<Report, CliError> {
    let (f, notes) = spec.polynomial()?;
    let slack = CONTAINMENT_SLACK * (1.0 + f.max_coeff_norm());

    let clock = Instant::now();
    let bounds: Vec<BoundResult> = all_bounds(&f)?
        .into_iter()
        .filter(|b| spec.bounds.contains(&b.method))
        .collect();
    let bounds_ms = millis(clock);

    let clock = Instant::now();
    let zeros = if spec.oracle {
        let cfg = RootConfig {
            residual_tol: spec.tol_res,
            seed: spec.seed,
            ..RootConfig::default()
        };
        Some(find_zeros(&f, &cfg)?)
    } else {
        None
    };
    let oracle_ms = millis(clock);

    let clock = Instant::now();
    let zfb = zero_free_ball(&f, spec.t, spec.samples, spec.seed)?;
    let zero_free_ms = millis(clock);

    let bound_entries = bounds
        .iter()
        .map(|b| {
            let verdict = match (&zeros, &b.region) {
                (Some(zs), Some(region)) => Some(Verdict::from_report(&verify_containment(zs, region, slack))),
                _ => None,
            };
            bound_entry(b, verdict)
        })
        .collect();

    let mm = &zfb.max_modulus;
    let zero_free = ZeroFreeEntry {
        t: round12(zfb.t),
        radius: round12(zfb.radius),
        center: quad(zfb.center),
        max_modulus: round12(mm.value),
        complex_slice_center: quad(mm.complex_argmax),
        complex_slice_max_modulus: round12(mm.complex_value),
        samples: mm.samples,
        seed: mm.seed,
        exclusion: zeros
            .as_ref()
            .map(|zs| Verdict::from_report(&verify_exclusion(zs, &zfb.ball(), slack))),
        complex_slice_exclusion: zeros
            .as_ref()
            .map(|zs| Verdict::from_report(&verify_exclusion(zs, &zfb.complex_slice_ball(), slack))),
    };

    let zeros = zeros.map(|zs| ZerosEntry {
        count: zs.count(),
        deficit: zs.deficit,
        digest: zs.digest.clone(),
        isolated: zs
            .isolated
            .iter()
            .map(|z| IsolatedEntry {
                zero: quad(z.zero),
                norm: round12(z.zero.norm()),
                residual: round12(z.residual),
                multiplicity: z.multiplicity,
            })
            .collect(),
        spherical: zs
            .spherical
            .iter()
            .map(|s| SphericalEntry {
                re: round12(s.re),
                normsq: round12(s.normsq),
                sphere_radius: round12(s.class().sphere_radius()),
                residual: round12(s.residual),
            })
            .collect(),
    });

    Ok(Report {
        schema: SCHEMA.to_string(),
        polynomial: PolynomialEcho {
            input_form: spec.form,
            degree: f.degree(),
            coefficients: f.coeffs().iter().map(|&a| quad(a)).collect(),
            notes,
        },
        bounds: bound_entries,
        zeros,
        zero_free,
        timing: spec.timing.then_some(Timing {
            bounds_ms,
            oracle_ms,
            zero_free_ms,
        }),
    })
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = inline_scalar_arrays(&serde_json::to_string_pretty(report).expect("report serializes"));
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

/// Puts arrays holding only numbers on one line: `[1.0, 0.0, 0.0, 0.0]`.
fn inline_scalar_arrays(pretty: &str) -> String {
    let mut out = String::with_capacity(pretty.len());
    let mut rest = pretty;
    while let Some(open) = rest.find('[') {
        out.push_str(&rest[..open]);
        let tail = &rest[open + 1..];
        let close = tail.find(']').filter(|&c| !tail[..c].contains(['[', '{', '"']));
        match close {
            Some(c) if !tail[..c].trim().is_empty() => {
                let items: Vec<&str> = tail[..c].split(',').map(str::trim).collect();
                out.push('[');
                out.push_str(&items.join(", "));
                out.push(']');
                rest = &tail[c + 1..];
            }
            _ => {
                out.push('[');
                rest = tail;
            }
        }
    }
    out.push_str(rest);
    out
}

pub fn parse_json(text: &str) -> Result<Report, CliError> {
    Ok(serde_json::from_str(text)?)
}

/// Plain decimal, switching to exponent form for very small or large values.
fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e12).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn fmt_quad(q: &[f64; 4]) -> String {
    format!("[{}, {}, {}, {}]", num(q[0]), num(q[1]), num(q[2]), num(q[3]))
}

/// Position in the canonical bound order; breaks radius ties.
fn method_rank(name: &str) -> usize {
    BoundMethod::ALL
        .iter()
        .position(|m| m.name() == name)
        .unwrap_or(usize::MAX)
}

/// Radius of the smallest origin ball holding the region; used for sorting.
fn enclosing_radius(b: &BoundEntry) -> f64 {
    b.region
        .iter()
        .map(|ball| ball.center.iter().map(|x| x * x).sum::<f64>().sqrt() + ball.radius)
        .fold(0.0, f64::max)
}

fn verdict_cell(v: Option<&Verdict>) -> &'static str {
    match v {
        None => "-",
        Some(v) if v.pass => "ok",
        Some(_) => "FAIL",
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let p = &r.polynomial;
    let _ = writeln!(
        out,
        "polynomial of degree {} (monic, coefficients on the right)",
        p.degree
    );
    for (k, a) in p.coefficients.iter().enumerate() {
        let _ = writeln!(out, "  a_{k} = {}", fmt_quad(a));
    }
    for note in &p.notes {
        let _ = writeln!(out, "  note: {note}");
    }

    let mut order: Vec<&BoundEntry> = r.bounds.iter().collect();
    order.sort_by(|a, b| {
        b.applicable
            .cmp(&a.applicable)
            .then(enclosing_radius(a).total_cmp(&enclosing_radius(b)))
            .then(method_rank(&a.name).cmp(&method_rank(&b.name)))
    });
    // `order` is sorted, so the first single ball is the smallest.
    let optimal = order
        .iter()
        .find(|b| b.applicable && b.radius.is_some())
        .map(|b| b.name.as_str());

    let _ = writeln!(out);
    let _ = writeln!(out, "{:<18} {:>16}  zeros", "bound", "radius");
    for b in order {
        let radius = match (b.applicable, b.radius) {
            (false, _) => "n/a".to_string(),
            (true, Some(rad)) => num(rad),
            (true, None) => format!("union of {}", b.region.len()),
        };
        let note = if optimal == Some(b.name.as_str()) {
            "OPTIMAL".to_string()
        } else if let Some(reason) = &b.reason {
            reason.clone()
        } else if b.radius.is_none() && b.applicable {
            b.region
                .iter()
                .map(|ball| format!("|q - {}| <= {}", fmt_quad(&ball.center), num(ball.radius)))
                .collect::<Vec<_>>()
                .join(" or ")
        } else {
            String::new()
        };
        let row = format!(
            "{:<18} {:>16}  {:<6} {}",
            b.name,
            radius,
            verdict_cell(b.containment.as_ref()),
            note
        );
        let _ = writeln!(out, "{}", row.trim_end());
    }

    let _ = writeln!(out);
    match &r.zeros {
        None => {
            let _ = writeln!(out, "zeros: oracle skipped");
        }
        Some(z) => {
            let _ = writeln!(out, "zeros: {} with multiplicity", z.count);
            for iz in &z.isolated {
                let mult = if iz.multiplicity > 1 {
                    format!("  multiplicity {}", iz.multiplicity)
                } else {
                    String::new()
                };
                let _ = writeln!(
                    out,
                    "  isolated  {}  |q| = {}  residual {:e}{mult}",
                    fmt_quad(&iz.zero),
                    num(iz.norm),
                    iz.residual
                );
            }
            for s in &z.spherical {
                let _ = writeln!(
                    out,
                    "  spherical Re q = {}, |q|^2 = {}  residual {:e}",
                    num(s.re),
                    num(s.normsq),
                    s.residual
                );
            }
            if z.deficit > 0 {
                let _ = writeln!(out, "  {} zero(s) unresolved", z.deficit);
            }
        }
    }

    let zf = &r.zero_free;
    let _ = writeln!(out);
    let _ = writeln!(out, "zero-free ball for t = {}: radius {}", num(zf.t), num(zf.radius));
    let _ = writeln!(
        out,
        "  center {}  max |f| = {}  [{}]",
        fmt_quad(&zf.center),
        num(zf.max_modulus),
        verdict_cell(zf.exclusion.as_ref())
    );
    let _ = writeln!(
        out,
        "  complex slice {}  max |f| = {}  [{}]",
        fmt_quad(&zf.complex_slice_center),
        num(zf.complex_slice_max_modulus),
        verdict_cell(zf.complex_slice_exclusion.as_ref())
    );

    if let Some(t) = &r.timing {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "timing: bounds {} ms, oracle {} ms, zero-free {} ms",
            t.bounds_ms, t.oracle_ms, t.zero_free_ms
        );
    }
    out
}
