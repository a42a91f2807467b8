//! Quaternion arithmetic over `f64` components and seeded sampling on
//! spheres `|q| = t`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A quaternion `w + x i + y j + z k`.
///
/// Multiplication follows Hamilton's rules `i² = j² = k² = ijk = -1` and is
/// not commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm, computed with scaling so that very large or very small
    /// components neither overflow nor underflow.
    pub fn norm(self) -> f64 {
        let [w, x, y, z] = self.to_array();
        w.hypot(x).hypot(y.hypot(z))
    }

    /// Norm of the imaginary part.
    pub fn imag_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn is_zero(self) -> bool {
        self.to_array().iter().all(|&c| c == 0.0)
    }

    /// Multiplicative inverse `conj(a) / |a|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::Domain(format!("non-invertible quaternion {self}")));
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Distance `|self - other|`.
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Lexicographic total order on the components, used for deterministic
    /// tie-breaking.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Hamilton product.
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

pub fn qinv(a: Quaternion) -> Result<Quaternion> {
    a.inv()
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        qmul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w)?;
        for (c, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            if c.is_sign_negative() {
                write!(f, " - {}{unit}", -c)?;
            } else {
                write!(f, " + {c}{unit}")?;
            }
        }
        Ok(())
    }
}

/// Points on the sphere `|q| = radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereSample {
    pub points: Vec<Quaternion>,
    pub radius: f64,
    pub seed: u64,
    pub count: usize,
}

/// The eight axis points `±t, ±ti, ±tj, ±tk`.
pub fn axis_points(t: f64) -> [Quaternion; 8] {
    [
        Quaternion::new(t, 0.0, 0.0, 0.0),
        Quaternion::new(-t, 0.0, 0.0, 0.0),
        Quaternion::new(0.0, t, 0.0, 0.0),
        Quaternion::new(0.0, -t, 0.0, 0.0),
        Quaternion::new(0.0, 0.0, t, 0.0),
        Quaternion::new(0.0, 0.0, -t, 0.0),
        Quaternion::new(0.0, 0.0, 0.0, t),
        Quaternion::new(0.0, 0.0, 0.0, -t),
    ]
}

/// Projects `q` radially onto `|q| = t`. `q` must be nonzero.
pub(crate) fn project_to_sphere(q: Quaternion, t: f64) -> Quaternion {
    // Two passes: the first normalises, the second removes the residual
    // rounding in the norm.
    let p = q * (t / q.norm());
    p * (t / p.norm())
}

/// Draws `count` points uniformly on `|q| = t`, after the eight axis points.
///
/// Each random point is four standard normal deviates from a ChaCha8 stream
/// seeded with `seed`, normalised and scaled by `t`. The result has
/// `count + 8` points and is bit-for-bit reproducible for a given
/// `(t, count, seed)`.
pub fn sample_sphere(t: f64, count: usize, seed: u64) -> Result<SphereSample> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Argument(format!("sphere radius must be positive, got {t}")));
    }
    if count == 0 {
        return Err(Error::Argument("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count + 8);
    points.extend_from_slice(&axis_points(t));
    while points.len() < count + 8 {
        let g = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        // Normal 4-vectors vanish with probability zero; skip the event anyway.
        if g.norm() < 1e-150 {
            continue;
        }
        points.push(project_to_sphere(g, t));
    }
    Ok(SphereSample {
        points,
        radius: t,
        seed,
        count,
    })
}
