//! Companion matrices, positive-diagonal similarity scaling and Geršgorin
//! balls for left eigenvalues.
//!
//! The left eigenvalues of the companion matrix `C_f` are exactly the zeros
//! of `f`, and a similarity `D⁻¹ C_f D` with a real positive diagonal `D`
//! keeps them. Geršgorin's theorem for left eigenvalues then localises the
//! zeros. The eigenvalues themselves are never computed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::quat::Quaternion;

/// Square quaternion matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix must be square and nonempty".into()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|q| !q.is_finite()) {
            return Err(Error::Argument("matrix entries must be finite".into()));
        }
        Ok(Self { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Zero-based entry `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Quaternion {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Quaternion) {
        self.entries[row * self.n + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Quaternion]> {
        self.entries.chunks(self.n)
    }
}

/// A quaternionic ball `|q - center| ≤ radius`, or `< radius` when open.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Quaternion,
    pub radius: f64,
    pub open: bool,
}

impl Ball {
    pub fn closed(center: Quaternion, radius: f64) -> Self {
        Self {
            center,
            radius,
            open: false,
        }
    }

    pub fn open(center: Quaternion, radius: f64) -> Self {
        Self {
            center,
            radius,
            open: true,
        }
    }

    /// Centered at the origin.
    pub fn origin(radius: f64) -> Self {
        Self::closed(Quaternion::ZERO, radius)
    }

    /// `radius - |q - center|`; nonnegative inside.
    pub fn margin(&self, q: Quaternion) -> f64 {
        self.radius - q.dist(self.center)
    }
}

/// Finite union of balls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub balls: Vec<Ball>,
}

impl Region {
    pub fn new(balls: Vec<Ball>) -> Result<Self> {
        if balls.is_empty() {
            return Err(Error::Argument("a region needs at least one ball".into()));
        }
        Ok(Self { balls })
    }

    pub fn single(ball: Ball) -> Self {
        Self { balls: vec![ball] }
    }

    /// Largest margin over the balls: nonnegative iff `q` is in the union.
    pub fn margin(&self, q: Quaternion) -> f64 {
        self.balls.iter().map(|b| b.margin(q)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, q: Quaternion, slack: f64) -> bool {
        self.margin(q) >= -slack
    }
}

/// `C_f`: ones on the subdiagonal, last column `-a_0, …, -a_{n-1}` top to
/// bottom.
pub fn companion_matrix(f: &QPolynomial) -> QMatrix {
    let n = f.degree();
    let mut m = QMatrix::zeros(n);
    for row in 0..n {
        if row > 0 {
            m.set(row, row - 1, Quaternion::ONE);
        }
        m.set(row, n - 1, -f.coeff(row));
    }
    m
}

/// `D⁻¹ C_f D` with `D = diag(d)`: entry `(μ, ν)` is `c_{μν} · d_ν / d_μ`.
pub fn scaled_companion(f: &QPolynomial, d: &[f64]) -> Result<QMatrix> {
    let n = f.degree();
    if d.len() != n {
        return Err(Error::Argument(format!(
            "scaling diagonal has {} entries, expected {n}",
            d.len()
        )));
    }
    if let Some(bad) = d.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::Argument(format!("scaling entries must be positive, got {bad}")));
    }
    let mut m = companion_matrix(f);
    for row in 0..n {
        for col in 0..n {
            let c = m.get(row, col);
            if !c.is_zero() {
                m.set(row, col, c * (d[col] / d[row]));
            }
        }
    }
    Ok(m)
}

/// The diagonal `(r^{n-1}, …, r, 1)`. Under [`scaled_companion`] it puts `r`
/// on the subdiagonal and `-a_k / r^{n-1-k}` in the last column.
pub fn geometric_scaling(r: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| r.powi((n - 1 - k) as i32)).collect()
}

/// Closed ball per row: center `a_{μμ}`, radius `Σ_{ν≠μ} |a_{μν}|`.
pub fn gershgorin_balls(a: &QMatrix) -> Region {
    let balls = a
        .rows()
        .enumerate()
        .map(|(mu, row)| {
            let mut norms: Vec<f64> = row
                .iter()
                .enumerate()
                .filter(|&(nu, _)| nu != mu)
                .map(|(_, x)| x.norm())
                .collect();
            norms.sort_by(|x, y| y.total_cmp(x));
            Ball::closed(row[mu], norms.iter().sum())
        })
        .collect();
    Region { balls }
}
