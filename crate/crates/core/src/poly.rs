//! Monic one-sided quaternionic polynomials `f(q) = qⁿ + Σ_{k<n} q^k a_k`.
//!
//! Coefficients sit to the right of the powers. Polynomial products treat the
//! indeterminate as central, so `(Σ q^i A_i)(Σ q^j B_j) = Σ q^{i+j} A_i B_j`.
//! With this convention a zero of the left factor is a zero of the product.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Monic polynomial of degree `n ≥ 1` with right coefficients `a_0 … a_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomial {
    coeffs: Vec<Quaternion>,
}

impl QPolynomial {
    /// `coeffs[k]` multiplies `q^k`; the leading `qⁿ` is implicit.
    pub fn new(coeffs: Vec<Quaternion>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("a monic polynomial needs degree at least 1".into()));
        }
        if let Some(k) = coeffs.iter().position(|a| !a.is_finite()) {
            return Err(Error::Argument(format!("coefficient a_{k} is not finite")));
        }
        Ok(Self { coeffs })
    }

    /// Normalises `Σ_{k≤n} q^k a_k` with invertible leading `a_n` by right
    /// multiplication with `a_n⁻¹`. The zero set is unchanged.
    pub fn from_non_monic(all: &[Quaternion]) -> Result<Self> {
        let (lead, rest) = all
            .split_last()
            .ok_or_else(|| Error::Argument("empty coefficient list".into()))?;
        let inv = lead.inv()?;
        Self::new(rest.iter().map(|&a| a * inv).collect())
    }

    /// Real-coefficient monic polynomial.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    /// `qⁿ`.
    pub fn monomial(n: usize) -> Result<Self> {
        Self::new(vec![Quaternion::ZERO; n])
    }

    /// Central-variable product `(q - r_1)(q - r_2)⋯(q - r_n)`. `r_1` is
    /// always a zero of the result.
    pub fn from_linear_factors(roots: &[Quaternion]) -> Result<Self> {
        // Full coefficient list including the leading one, lowest degree first.
        let mut acc = vec![Quaternion::ONE];
        for &r in roots {
            let mut next = vec![Quaternion::ZERO; acc.len() + 1];
            // acc · (q - r) = Σ q^{i+1} A_i - Σ q^i A_i r
            for (i, &a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] += -(a * r);
            }
            acc = next;
        }
        acc.pop();
        Self::new(acc)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// Coefficient of `q^k`, including the implicit leading one.
    pub fn coeff(&self, k: usize) -> Quaternion {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[k],
            std::cmp::Ordering::Equal => Quaternion::ONE,
            std::cmp::Ordering::Greater => Quaternion::ZERO,
        }
    }

    /// Largest `k` with `a_k ≠ 0`, or `None` when every lower coefficient
    /// vanishes (the lacunary index `p = -1`).
    pub fn lacunary_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|a| !a.is_zero())
    }

    /// `max_k |a_k|`.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn eval_right(&self, q: Quaternion) -> Quaternion {
        eval_right(self, q)
    }

    /// `qⁿ + Σ a_k q^k`: the same coefficients placed on the left.
    pub fn eval_left(&self, q: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ONE;
        for &a in self.coeffs.iter().rev() {
            acc = acc * q + a;
        }
        acc
    }

    pub fn derivative(&self) -> ScaledPolynomial {
        derivative(self)
    }

    /// `f(q)` with real `s` substituted as `f(s·q) / sⁿ`, i.e. coefficients
    /// `a_k s^{k-n}`; zeros are divided by `s`.
    pub fn scale_argument(&self, s: f64) -> Result<Self> {
        let n = self.degree() as i32;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a * s.powi(k as i32 - n))
                .collect(),
        )
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.degree())?;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            match k {
                0 => write!(f, " + ({a})")?,
                1 => write!(f, " + q({a})")?,
                _ => write!(f, " + q^{k}({a})")?,
            }
        }
        Ok(())
    }
}

/// `qⁿ + Σ_k q^k a_k`, by Horner's scheme with `q` multiplied from the left:
/// `q·(q^j a) = q^{j+1} a`.
pub fn eval_right(f: &QPolynomial, q: Quaternion) -> Quaternion {
    let mut acc = Quaternion::ONE;
    for &a in f.coeffs.iter().rev() {
        acc = q * acc + a;
    }
    acc
}

/// `lead·q^m + Σ_{k<m} q^k c_k` with a real leading scalar, e.g. a derivative
/// of a monic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPolynomial {
    pub leading: f64,
    pub coeffs: Vec<Quaternion>,
}

impl ScaledPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval_right(&self, q: Quaternion) -> Quaternion {
        let mut acc = Quaternion::real(self.leading);
        for &c in self.coeffs.iter().rev() {
            acc = q * acc + c;
        }
        acc
    }

    /// Term-by-term derivative; the derivative of a constant is the zero
    /// constant.
    pub fn derivative(&self) -> ScaledPolynomial {
        let m = self.degree();
        if m == 0 {
            return ScaledPolynomial {
                leading: 0.0,
                coeffs: Vec::new(),
            };
        }
        ScaledPolynomial {
            leading: self.leading * m as f64,
            coeffs: (1..m).map(|k| self.coeffs[k] * k as f64).collect(),
        }
    }
}

impl From<&QPolynomial> for ScaledPolynomial {
    fn from(f: &QPolynomial) -> Self {
        ScaledPolynomial {
            leading: 1.0,
            coeffs: f.coeffs.clone(),
        }
    }
}

/// `n q^{n-1} + Σ_{k≥1} q^{k-1} k a_k`.
pub fn derivative(f: &QPolynomial) -> ScaledPolynomial {
    ScaledPolynomial::from(f).derivative()
}

/// The `k`-th derivative, `k ≥ 0`.
pub fn nth_derivative(f: &QPolynomial, k: usize) -> ScaledPolynomial {
    let mut d = ScaledPolynomial::from(f);
    for _ in 0..k {
        d = d.derivative();
    }
    d
}

/// `f̄`: same degree, conjugated coefficients.
pub fn conjugate_poly(f: &QPolynomial) -> QPolynomial {
    QPolynomial {
        coeffs: f.coeffs.iter().map(|a| a.conj()).collect(),
    }
}

/// Monic polynomial with real coefficients `c_0 … c_m` (`c_m = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.last() {
            Some(&l) if l == 1.0 && coeffs.len() >= 2 => {}
            _ => return Err(Error::Argument("real polynomial must be monic of degree ≥ 1".into())),
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Argument("real polynomial coefficient is not finite".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `F(z)` and `F'(z)` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Derivative, not renormalised (leading coefficient is the degree).
    pub fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
        coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect()
    }

    /// Running bound `Σ |c_k| |z|^k`, the scale of the rounding error in
    /// [`RealPolynomial::eval`].
    pub fn eval_magnitude(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }
}

/// `F = f · f̄` with a central indeterminate.
///
/// `c_m = Σ_{i+j=m} A_i conj(A_j)` pairs each term with its conjugate, so the
/// result is real; the imaginary residue is checked against `1e-12` of the
/// coefficient scale and then dropped.
pub fn conjugate_product(f: &QPolynomial) -> Result<RealPolynomial> {
    let n = f.degree();
    let full: Vec<Quaternion> = (0..=n).map(|k| f.coeff(k)).collect();
    let mut out = Vec::with_capacity(2 * n + 1);
    for m in 0..=2 * n {
        let lo = m.saturating_sub(n);
        let hi = m.min(n);
        let mut acc = Quaternion::ZERO;
        let mut scale = 0.0;
        for i in lo..=hi {
            let term = full[i] * full[m - i].conj();
            scale += full[i].norm() * full[m - i].norm();
            acc += term;
        }
        if acc.imag_norm() > 1e-12 * scale.max(1.0) {
            return Err(Error::Internal(format!(
                "conjugate product coefficient c_{m} has imaginary residue {:e}",
                acc.imag_norm()
            )));
        }
        out.push(acc.w);
    }
    // The leading coefficient is exactly |1|² = 1.
    *out.last_mut().expect("degree ≥ 1") = 1.0;
    RealPolynomial::new(out)
}

/// Characteristic polynomial `q² - 2·re·q + normsq` of a similarity class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassQuadratic {
    pub re: f64,
    pub normsq: f64,
}

impl ClassQuadratic {
    /// Class parameters from a complex representative `z`.
    pub fn from_complex(z: Complex64) -> Self {
        Self {
            re: z.re,
            normsq: z.norm_sqr(),
        }
    }

    pub fn from_quaternion(q: Quaternion) -> Self {
        Self {
            re: q.w,
            normsq: q.norm_sq(),
        }
    }

    /// Radius `√(normsq - re²)` of the class 2-sphere, clamped at zero.
    pub fn sphere_radius(&self) -> f64 {
        (self.normsq - self.re * self.re).max(0.0).sqrt()
    }

    /// The class member `re + s·u` for a unit imaginary direction `u`.
    pub fn member(&self, u: [f64; 3]) -> Quaternion {
        let s = self.sphere_radius();
        let un = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        Quaternion::new(self.re, s * u[0] / un, s * u[1] / un, s * u[2] / un)
    }

    /// Evaluates the quadratic at a quaternion.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        q * q - q * (2.0 * self.re) + Quaternion::real(self.normsq)
    }
}

/// Remainder `q·c + d` of `f` modulo `q² - 2·re·q + normsq`.
///
/// Powers reduce as `q^k ≡ α_k q + β_k` with real `α, β`, so
/// `c = Σ α_k a_k` and `d = Σ β_k a_k` (with `a_n = 1`).
pub fn remainder_linear(f: &QPolynomial, cq: ClassQuadratic) -> (Quaternion, Quaternion) {
    let (mut alpha, mut beta) = (0.0f64, 1.0f64);
    let mut c = Quaternion::ZERO;
    let mut d = Quaternion::ZERO;
    for k in 0..=f.degree() {
        let a = f.coeff(k);
        c += a * alpha;
        d += a * beta;
        // q^{k+1} = q(α q + β) ≡ (2·re·α + β) q - α·normsq
        let next_alpha = 2.0 * cq.re * alpha + beta;
        beta = -alpha * cq.normsq;
        alpha = next_alpha;
    }
    (c, d)
}

/// Exact quotient of `f` by the real quadratic `cq`, assuming the remainder
/// vanishes. Returns `None` for degree below 3 (quotient of degree < 1).
pub fn deflate_quadratic(f: &QPolynomial, cq: ClassQuadratic) -> Option<QPolynomial> {
    let n = f.degree();
    if n < 3 {
        return None;
    }
    // Synthetic division from the top; the quotient is monic of degree n-2.
    let mut quotient = vec![Quaternion::ZERO; n - 1];
    let mut work: Vec<Quaternion> = (0..=n).map(|k| f.coeff(k)).collect();
    for m in (2..=n).rev() {
        let lead = work[m];
        quotient[m - 2] = lead;
        work[m] = Quaternion::ZERO;
        work[m - 1] += lead * (2.0 * cq.re);
        work[m - 2] += lead * (-cq.normsq);
    }
    quotient.pop();
    QPolynomial::new(quotient).ok()
}
