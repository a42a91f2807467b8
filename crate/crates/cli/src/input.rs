//! Coefficient input: quadruples `w x y z` separated by commas or newlines,
//! listed from `a_0` upward.

use qzero_core::{BoundMethod, QPolynomial, Quaternion};

use crate::error::CliError;

/// Which side the coefficients sit on in the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// `Σ q^k a_k`, the canonical form.
    F,
    /// `Σ a_k q^k`.
    G,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    /// As parsed, before any normalization.
    pub coefficients: Vec<Quaternion>,
    /// The last quadruple is the leading coefficient rather than an implicit 1.
    pub leading: bool,
    pub form: Form,
    pub t: f64,
    pub samples: usize,
    pub seed: u64,
    pub tol_res: f64,
    pub bounds: Vec<BoundMethod>,
    pub oracle: bool,
    pub timing: bool,
}

impl InputSpec {
    pub fn new(coefficients: Vec<Quaternion>) -> Self {
        Self {
            coefficients,
            leading: false,
            form: Form::F,
            t: 1.0,
            samples: qzero_core::zerofree::DEFAULT_SAMPLES,
            seed: 0,
            tol_res: qzero_core::RootConfig::default().residual_tol,
            bounds: BoundMethod::ALL.to_vec(),
            oracle: true,
            timing: false,
        }
    }

    /// The canonical monic f-form polynomial, plus notes on any conversion.
    pub fn polynomial(&self) -> Result<(QPolynomial, Vec<String>), CliError> {
        let mut notes = Vec::new();
        let mut coeffs = self.coefficients.clone();
        if self.form == Form::G {
            // conj(Σ a_k q^k) = Σ conj(q)^k conj(a_k), so g(q) = 0 iff
            // f(conj q) = 0 for f with conjugated coefficients.
            coeffs.iter_mut().for_each(|a| *a = a.conj());
            notes.push(
                "input given in g-form: coefficients were conjugated; the zeros of the input are the \
                 conjugates of the zeros reported here"
                    .to_string(),
            );
        }
        let f = if self.leading {
            if coeffs.len() < 2 {
                return Err(CliError::Usage("--leading needs at least two coefficients".into()));
            }
            let lead = coeffs[coeffs.len() - 1];
            if lead != Quaternion::ONE {
                notes.push(format!("normalized by the leading coefficient {lead}"));
            }
            QPolynomial::from_non_monic(&coeffs)?
        } else {
            QPolynomial::new(coeffs)?
        };
        Ok((f, notes))
    }
}

/// Parses quadruples. Positions in errors are 1-based: `line` is the input
/// line, `field` the number's index within its quadruple.
pub fn parse_coefficients(text: &str) -> Result<Vec<Quaternion>, CliError> {
    let mut out = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = line.split('#').next().unwrap_or("");
        for chunk in line.split(',') {
            let fields: Vec<&str> = chunk.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 4 {
                return Err(CliError::Parse {
                    line: line_no,
                    field: fields.len().min(4) + usize::from(fields.len() < 4),
                    message: format!("expected 4 numbers `w x y z`, found {}", fields.len()),
                });
            }
            let mut c = [0.0; 4];
            for (k, s) in fields.iter().enumerate() {
                let v: f64 = s.parse().map_err(|_| CliError::Parse {
                    line: line_no,
                    field: k + 1,
                    message: format!("`{s}` is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(CliError::Parse {
                        line: line_no,
                        field: k + 1,
                        message: format!("`{s}` is not finite"),
                    });
                }
                c[k] = v;
            }
            out.push(Quaternion::from(c));
        }
    }
    if out.is_empty() {
        return Err(CliError::Parse {
            line: 1,
            field: 1,
            message: "no coefficients given".into(),
        });
    }
    Ok(out)
}

/// `all`, or a comma list of bound names.
pub fn parse_bounds(text: &str) -> Result<Vec<BoundMethod>, CliError> {
    if text.trim() == "all" {
        return Ok(BoundMethod::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m = BoundMethod::from_name(name).ok_or_else(|| {
            let known: Vec<&str> = BoundMethod::ALL.iter().map(|m| m.name()).collect();
            CliError::Usage(format!("unknown bound `{name}`; known: {}", known.join(", ")))
        })?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--bounds selected nothing".into()));
    }
    out.sort();
    Ok(out)
}
