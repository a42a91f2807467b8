//! Independent root finder for monic quaternionic polynomials.
//!
//! The zeros of `f` lie in the similarity classes of the complex roots of the
//! real polynomial `F = f·f̄`. Each class `{q : Re q = re, |q|² = normsq}` is
//! resolved through the remainder `q·c + d` of `f` modulo the class quadratic:
//! a vanishing remainder means the whole class is a (spherical) zero,
//! otherwise the class holds the single zero `q = -d·c⁻¹`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::companion::{Ball, Region};
use crate::error::{Error, Result};
use crate::poly::{
    conjugate_product, deflate_quadratic, remainder_linear, ClassQuadratic, QPolynomial, RealPolynomial,
};
use crate::quat::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Aberth stops once every step is below `convergence_tol·(1 + |z|)`.
    pub convergence_tol: f64,
    /// Relative to `1 + max|a_k|`.
    pub spherical_threshold: f64,
    /// Relative to `1 + max|a_k| + R_cauchyⁿ`.
    pub residual_tol: f64,
    /// Seeds the sampled representatives of spherical classes.
    pub seed: u64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            convergence_tol: 1e-15,
            spherical_threshold: 1e-10,
            residual_tol: 1e-8,
            seed: 0,
        }
    }
}

/// Angle offset of the equiangular Aberth start points.
const START_ANGLE_OFFSET: f64 = 0.4;

/// All complex roots of a monic real polynomial, by Aberth–Ehrlich iteration
/// from equiangular start points on the circle `|z| = 1 + max|c_k|`.
pub fn real_poly_roots(f: &RealPolynomial, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let c = f.coeffs();
    let m = f.degree();
    let radius = 1.0 + c[..m].iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64 + START_ANGLE_OFFSET;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; m];

    for _ in 0..cfg.max_iterations {
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (p, dp) = f.eval_with_derivative(z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let s: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let denom = dp - p * s;
            let step = if denom.norm() == 0.0 || !denom.is_finite() {
                // Degenerate configuration: nudge off it.
                Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm())
            } else {
                p / denom
            };
            z[i] -= step;
            if step.norm() <= cfg.convergence_tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }

    // Clustered (multiple) roots stall with steps at rounding noise. Accept
    // when every residual is at the rounding level of F.
    let worst = z
        .iter()
        .map(|&zi| f.eval(zi).norm() / f.eval_magnitude(zi).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    if worst <= 1e3 * f64::EPSILON * m as f64 {
        Ok(z)
    } else {
        Err(Error::Convergence {
            iterations: cfg.max_iterations,
            worst_residual: worst,
        })
    }
}

/// A group of root approximations standing for one root of multiplicity
/// `len` at `center`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
    /// Largest member distance from the center plus its inclusion radius.
    pub spread: f64,
}

/// Groups approximations into connected components of their inclusion disks
/// `|z - z_i| ≤ deg·|W_i|`, with `W_i = F(z_i) / ∏_{j≠i}(z_i - z_j)` the
/// Weierstrass correction inflated by the rounding error of `F(z_i)`. Each
/// component of `k` disks holds `k` roots.
pub fn cluster_roots(f: &RealPolynomial, z: &[Complex64]) -> Vec<RootCluster> {
    let m = z.len();
    let radii: Vec<f64> = (0..m)
        .map(|i| {
            let noise = 16.0 * m as f64 * f64::EPSILON * f.eval_magnitude(z[i]);
            let num = f.eval(z[i]).norm() + noise;
            let den: f64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm()).product();
            if den == 0.0 {
                f64::INFINITY
            } else {
                m as f64 * num / den
            }
        })
        .collect();

    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..m {
        for j in i + 1..m {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }

    groups
        .into_iter()
        .map(|g| {
            let center = g.iter().map(|&i| z[i]).sum::<Complex64>() / g.len() as f64;
            let spread = g
                .iter()
                .map(|&i| (z[i] - center).norm() + radii[i].min(1e300))
                .fold(0.0, f64::max);
            RootCluster {
                center,
                multiplicity: g.len(),
                spread,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedZero {
    pub zero: Quaternion,
    /// `|f(zero)|`.
    pub residual: f64,
    pub multiplicity: usize,
}

/// A whole similarity class of zeros; counts as two zeros.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalZero {
    pub re: f64,
    pub normsq: f64,
    /// `max(|c|, |d|)` of the vanishing remainder.
    pub residual: f64,
}

impl SphericalZero {
    pub fn class(&self) -> ClassQuadratic {
        ClassQuadratic {
            re: self.re,
            normsq: self.normsq,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub isolated: Vec<IsolatedZero>,
    pub spherical: Vec<SphericalZero>,
    /// FNV-1a digest of the coefficient bits.
    pub digest: String,
    /// Zeros (with multiplicity) that could not be resolved.
    pub deficit: usize,
}

impl ZeroSet {
    /// Zero count with multiplicity, each spherical class counting two.
    pub fn count(&self) -> usize {
        self.isolated.iter().map(|z| z.multiplicity).sum::<usize>() + 2 * self.spherical.len()
    }

    /// `count` seeded points on every spherical class.
    pub fn spherical_representatives(&self, count: usize, seed: u64) -> Vec<Quaternion> {
        self.spherical
            .iter()
            .flat_map(|s| class_representatives(s.class(), count, seed))
            .collect()
    }
}

/// Uniform seeded points on the 2-sphere of a similarity class.
pub fn class_representatives(cq: ClassQuadratic, count: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u: [f64; 3] = [
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        ];
        if u.iter().map(|x| x * x).sum::<f64>() > 1e-300 {
            out.push(cq.member(u));
        }
    }
    out
}

fn digest(f: &QPolynomial) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for a in f.coeffs() {
        for c in a.to_array() {
            for b in c.to_bits().to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    format!("{h:016x}")
}

/// `1 + max|a_k| + R_cauchyⁿ`, the residual scale of `f` near its zeros.
pub fn residual_scale(f: &QPolynomial) -> f64 {
    let m = f.max_coeff_norm();
    1.0 + m + (1.0 + m).powi(f.degree() as i32)
}

/// Real 4×4 Jacobian of `q ↦ f(q)`.
fn jacobian(f: &QPolynomial, q: Quaternion) -> Matrix4<f64> {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut jac = Matrix4::zeros();
    for (col, &h) in basis.iter().enumerate() {
        // d(q^{k+1}) = h q^k + q d(q^k)
        let mut power = Quaternion::ONE;
        let mut dpower = Quaternion::ZERO;
        let mut acc = Quaternion::ZERO;
        for k in 1..=f.degree() {
            dpower = h * power + q * dpower;
            power = q * power;
            acc += dpower * f.coeff(k);
        }
        jac.set_column(col, &Vector4::from(acc.to_array()));
    }
    jac
}

/// One damped Newton step, kept only if it lowers `|f(q)|`.
fn polish(f: &QPolynomial, q: Quaternion) -> Quaternion {
    let res = f.eval_right(q);
    let r0 = res.norm();
    if r0 == 0.0 {
        return q;
    }
    let Some(step) = jacobian(f, q).lu().solve(&-Vector4::from(res.to_array())) else {
        return q;
    };
    let step = Quaternion::from([step[0], step[1], step[2], step[3]]);
    let mut damping = 1.0;
    for _ in 0..4 {
        let cand = q + step * damping;
        if f.eval_right(cand).norm() < r0 {
            return cand;
        }
        damping *= 0.5;
    }
    q
}

fn eval_coeffs(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
    }
    (p, dp)
}

/// Sharpens the center of a cluster of multiplicity `k > 1` by Newton's
/// method on `F^{(k-1)}`, which has a simple root there. Keeps the centroid
/// if the iteration leaves the cluster.
pub fn refine_cluster(f: &RealPolynomial, cl: &RootCluster) -> Complex64 {
    if cl.multiplicity < 2 {
        return cl.center;
    }
    let mut c = f.coeffs().to_vec();
    for _ in 1..cl.multiplicity {
        c = RealPolynomial::derivative_coeffs(&c);
    }
    let mut z = cl.center;
    for _ in 0..50 {
        let (p, dp) = eval_coeffs(&c, z);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    if z.is_finite() && (z - cl.center).norm() <= 2.0 * cl.spread {
        z
    } else {
        cl.center
    }
}

/// All zeros of `f`: isolated zeros with multiplicities and spherical classes.
pub fn find_zeros(f: &QPolynomial, cfg: &RootConfig) -> Result<ZeroSet> {
    let big = conjugate_product(f)?;
    // Vanishing low coefficients are exact roots at the origin; the iteration
    // cannot see them since F(z)/Σ|c_k||z|^k stays 1 near a lone power of z.
    let at_origin = big.coeffs().iter().take_while(|&&c| c == 0.0).count();
    let mut clusters = Vec::new();
    if at_origin < big.degree() {
        let rest = RealPolynomial::new(big.coeffs()[at_origin..].to_vec())?;
        let roots = real_poly_roots(&rest, cfg)?;
        clusters.extend(cluster_roots(&rest, &roots).into_iter().map(|cl| RootCluster {
            center: refine_cluster(&rest, &cl),
            ..cl
        }));
    }
    if at_origin > 0 {
        clusters.push(RootCluster {
            center: Complex64::new(0.0, 0.0),
            multiplicity: at_origin,
            spread: 0.0,
        });
    }

    let coeff_scale = 1.0 + f.max_coeff_norm();
    let spherical_tol = cfg.spherical_threshold * coeff_scale;
    let res_limit = cfg.residual_tol * residual_scale(f);

    let mut isolated = Vec::new();
    let mut spherical = Vec::new();
    let mut upper = 0usize;
    let mut lower = 0usize;
    let mut deficit = 0usize;

    for cl in &clusters {
        let real_class = cl.center.im.abs() <= cl.spread;
        if real_class {
            // F(x) = |f(x)|² on the real axis: real roots have even multiplicity.
            let x = Quaternion::real(cl.center.re);
            let mult = cl.multiplicity / 2;
            deficit += cl.multiplicity % 2;
            if mult == 0 {
                continue;
            }
            let x = if mult == 1 { polish(f, x) } else { x };
            isolated.push(IsolatedZero {
                zero: x,
                residual: f.eval_right(x).norm(),
                multiplicity: mult,
            });
            continue;
        }
        if cl.center.im < 0.0 {
            lower += cl.multiplicity;
            continue;
        }
        upper += cl.multiplicity;

        let cq = ClassQuadratic::from_complex(cl.center);
        let mut g = f.clone();
        let mut left = cl.multiplicity;
        while left > 0 {
            let (c, d) = remainder_linear(&g, cq);
            let rem = c.norm().max(d.norm());
            if rem <= spherical_tol && left >= 2 {
                spherical.push(SphericalZero {
                    re: cq.re,
                    normsq: cq.normsq,
                    residual: rem,
                });
                left -= 2;
                match deflate_quadratic(&g, cq) {
                    Some(next) => g = next,
                    None => break,
                }
                continue;
            }
            let inv = c.inv().map_err(|_| {
                Error::Internal(format!(
                    "class (re {}, normsq {}) has a vanishing linear remainder coefficient",
                    cq.re, cq.normsq
                ))
            })?;
            let q0 = -(d * inv);
            let class_err = (2.0 * q0.w - 2.0 * cq.re).abs().max((q0.norm_sq() - cq.normsq).abs());
            if class_err > 1e-6 * (1.0 + cq.normsq) {
                return Err(Error::Internal(format!(
                    "zero {q0} lies outside its class (re {}, normsq {}) by {class_err:e}",
                    cq.re, cq.normsq
                )));
            }
            let q0 = if left == 1 { polish(f, q0) } else { q0 };
            isolated.push(IsolatedZero {
                zero: q0,
                residual: f.eval_right(q0).norm(),
                multiplicity: left,
            });
            left = 0;
        }
        deficit += left;
    }
    deficit += upper.abs_diff(lower);

    if let Some(z) = isolated.iter().find(|z| !(z.residual <= res_limit)) {
        return Err(Error::Internal(format!(
            "isolated zero {} has residual {:e} above {res_limit:e}",
            z.zero, z.residual
        )));
    }

    isolated.sort_by(|a, b| a.zero.lex_cmp(&b.zero));
    spherical.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.normsq.total_cmp(&b.normsq)));
    let mut zs = ZeroSet {
        isolated,
        spherical,
        digest: digest(f),
        deficit,
    };
    let found = zs.count();
    if found + zs.deficit != f.degree() {
        zs.deficit = f.degree().saturating_sub(found);
    }
    Ok(zs)
}

/// Nearest and farthest distance from `center` to the class 2-sphere
/// `{re + v : v imaginary, |v| = s}`.
pub fn class_distance_range(cq: ClassQuadratic, center: Quaternion) -> (f64, f64) {
    let s = cq.sphere_radius();
    let dw = cq.re - center.w;
    let cv = center.imag_norm();
    ((dw.hypot(cv - s)), dw.hypot(cv + s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Isolated,
    Spherical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroVerdict {
    pub kind: ZeroKind,
    pub index: usize,
    /// For containment: how far inside the best ball. For exclusion: how far
    /// outside the ball. Negative means violated.
    pub margin: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verdicts: Vec<ZeroVerdict>,
    pub pass: bool,
    /// Smallest margin; `None` when there are no zeros.
    pub worst_margin: Option<f64>,
}

impl VerdictReport {
    fn from_verdicts(verdicts: Vec<ZeroVerdict>) -> Self {
        let pass = verdicts.iter().all(|v| v.ok);
        let worst_margin = verdicts.iter().map(|v| v.margin).reduce(f64::min);
        Self {
            verdicts,
            pass,
            worst_margin,
        }
    }
}

/// Every isolated zero must lie in some ball, and every spherical class must
/// lie entirely inside a single ball, within `slack`.
pub fn verify_containment(zs: &ZeroSet, region: &Region, slack: f64) -> VerdictReport {
    let mut verdicts = Vec::new();
    for (index, z) in zs.isolated.iter().enumerate() {
        let margin = region.margin(z.zero);
        verdicts.push(ZeroVerdict {
            kind: ZeroKind::Isolated,
            index,
            margin,
            ok: margin >= -slack,
        });
    }
    for (index, s) in zs.spherical.iter().enumerate() {
        let margin = region
            .balls
            .iter()
            .map(|b| b.radius - class_distance_range(s.class(), b.center).1)
            .fold(f64::NEG_INFINITY, f64::max);
        verdicts.push(ZeroVerdict {
            kind: ZeroKind::Spherical,
            index,
            margin,
            ok: margin >= -slack,
        });
    }
    VerdictReport::from_verdicts(verdicts)
}

/// Every zero, including the nearest point of each spherical class, must lie
/// outside `ball` within `slack`.
pub fn verify_exclusion(zs: &ZeroSet, ball: &Ball, slack: f64) -> VerdictReport {
    let mut verdicts = Vec::new();
    for (index, z) in zs.isolated.iter().enumerate() {
        let margin = z.zero.dist(ball.center) - ball.radius;
        verdicts.push(ZeroVerdict {
            kind: ZeroKind::Isolated,
            index,
            margin,
            ok: margin >= -slack,
        });
    }
    for (index, s) in zs.spherical.iter().enumerate() {
        let margin = class_distance_range(s.class(), ball.center).0 - ball.radius;
        verdicts.push(ZeroVerdict {
            kind: ZeroKind::Spherical,
            index,
            margin,
            ok: margin >= -slack,
        });
    }
    VerdictReport::from_verdicts(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RootConfig {
        RootConfig::default()
    }

    fn sorted(mut z: Vec<Complex64>) -> Vec<Complex64> {
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }

    #[test]
    fn real_roots_examples() {
        let f = RealPolynomial::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        let z = real_poly_roots(&f, &cfg()).unwrap();
        let third = std::f64::consts::PI / 3.0;
        let expect = sorted(
            [third, -third, 2.0 * third, -2.0 * third]
                .iter()
                .map(|&t| Complex64::from_polar(1.0, t))
                .collect(),
        );
        for (a, b) in sorted(z).iter().zip(&expect) {
            assert!((a - b).norm() < 1e-14, "{a} vs {b}");
        }

        let g = RealPolynomial::new(vec![1.0, 0.0, 1.0]).unwrap();
        let z = sorted(real_poly_roots(&g, &cfg()).unwrap());
        assert!((z[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((z[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let h = RealPolynomial::new(vec![1.0, -2.0, 1.0]).unwrap();
        let z = real_poly_roots(&h, &cfg()).unwrap();
        let cl = cluster_roots(&h, &z);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 2);
        assert!((refine_cluster(&h, &cl[0]) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        for r in z {
            assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn spherical_zero_of_q2_plus_1() {
        let f = QPolynomial::from_real(&[1.0, 0.0]).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        assert!(zs.isolated.is_empty());
        assert_eq!(zs.spherical.len(), 1);
        let s = zs.spherical[0];
        assert!(s.re.abs() < 1e-12 && (s.normsq - 1.0).abs() < 1e-12);
        assert_eq!(zs.count(), 2);
        assert_eq!(zs.deficit, 0);
    }

    #[test]
    fn isolated_zeros_of_worked_example() {
        let f = QPolynomial::new(vec![Quaternion::J, Quaternion::I]).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        assert!(zs.spherical.is_empty());
        let expect = [
            Quaternion::new(-0.5, -0.5, 0.5, -0.5),
            Quaternion::new(0.5, -0.5, -0.5, -0.5),
        ];
        assert_eq!(zs.isolated.len(), 2);
        for (z, e) in zs.isolated.iter().zip(expect) {
            assert!(z.zero.dist(e) < 1e-12, "{} vs {e}", z.zero);
            assert!(z.residual <= 1e-12);
            assert_eq!(z.multiplicity, 1);
        }
    }

    #[test]
    fn double_zero_at_origin() {
        let f = QPolynomial::monomial(2).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        assert_eq!(zs.isolated.len(), 1);
        assert_eq!(zs.isolated[0].multiplicity, 2);
        assert_eq!(zs.isolated[0].zero, Quaternion::ZERO);
        assert_eq!(zs.deficit, 0);

        for n in 1..=6 {
            let zs = find_zeros(&QPolynomial::monomial(n).unwrap(), &cfg()).unwrap();
            assert_eq!(zs.isolated.len(), 1);
            assert_eq!(zs.isolated[0].multiplicity, n);
        }

        // q²(q - j): the leftmost factor's root j plus a double zero at 0.
        let g = QPolynomial::from_linear_factors(&[Quaternion::J, Quaternion::ZERO, Quaternion::ZERO]).unwrap();
        let zs = find_zeros(&g, &cfg()).unwrap();
        assert_eq!(zs.count(), 3);
        assert!(zs
            .isolated
            .iter()
            .any(|z| z.zero == Quaternion::ZERO && z.multiplicity == 2));
        assert!(zs.isolated.iter().any(|z| z.zero.dist(Quaternion::J) < 1e-12));
    }

    #[test]
    fn spherical_class_with_extra_isolated_zero() {
        // (q² + 1)(q - u) with u = (i + j)/√2 in the unit imaginary class.
        let u = Quaternion::new(0.0, 1.0, 1.0, 0.0) / 2f64.sqrt();
        let f = QPolynomial::new(vec![-u, Quaternion::ONE, -u]).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        assert_eq!(zs.spherical.len(), 1);
        assert_eq!(zs.count() + zs.deficit, 3);
    }

    #[test]
    fn real_zero_is_reported_once() {
        let f = QPolynomial::from_real(&[-2.0]).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        assert_eq!(zs.isolated.len(), 1);
        assert!(zs.isolated[0].zero.dist(Quaternion::real(2.0)) < 1e-12);
    }

    #[test]
    fn class_distance_matches_dense_sampling() {
        let cases = [
            (
                ClassQuadratic {
                    re: 0.3,
                    normsq: 0.3 * 0.3 + 0.64,
                },
                Quaternion::new(1.0, 0.2, -0.4, 0.1),
            ),
            (
                ClassQuadratic { re: -1.0, normsq: 2.0 },
                Quaternion::new(0.0, 0.0, 0.0, 0.0),
            ),
            (
                ClassQuadratic { re: 0.0, normsq: 1.0 },
                Quaternion::new(1.0, 0.0, 0.0, 0.0),
            ),
        ];
        for (cq, c) in cases {
            let (lo, hi) = class_distance_range(cq, c);
            let pts = class_representatives(cq, 20_000, 9);
            let best_lo = refine_on_class(cq, c, &pts, |d| d);
            let best_hi = -refine_on_class(cq, c, &pts, |d| -d);
            assert!((best_lo - lo).abs() < 1e-6, "{best_lo} vs {lo}");
            assert!((best_hi - hi).abs() < 1e-6, "{best_hi} vs {hi}");
        }
    }

    /// Minimises `key(dist)` over the class sphere: best sample, then
    /// shrinking axis steps on the direction vector.
    fn refine_on_class(cq: ClassQuadratic, c: Quaternion, pts: &[Quaternion], key: impl Fn(f64) -> f64) -> f64 {
        let s = cq.sphere_radius();
        let score = |u: [f64; 3]| key(cq.member(u).dist(c));
        let mut best = pts
            .iter()
            .map(|p| [p.x, p.y, p.z])
            .min_by(|a, b| score(*a).total_cmp(&score(*b)))
            .unwrap();
        let mut step = 0.05 * s.max(1e-3);
        while step > 1e-12 {
            let mut improved = false;
            for axis in 0..3 {
                for sign in [-1.0, 1.0] {
                    let mut cand = best;
                    cand[axis] += sign * step;
                    if score(cand) < score(best) {
                        best = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        key(cq.member(best).dist(c))
    }

    #[test]
    fn containment_examples() {
        let f = QPolynomial::from_real(&[1.0, 0.0]).unwrap();
        let zs = find_zeros(&f, &cfg()).unwrap();
        let rep = verify_containment(&zs, &Region::single(Ball::origin(1.0)), 1e-9);
        assert!(rep.pass);
        assert!(rep.worst_margin.unwrap().abs() < 1e-12);

        let g = QPolynomial::new(vec![Quaternion::J, Quaternion::I]).unwrap();
        let zs = find_zeros(&g, &cfg()).unwrap();
        let rep = verify_containment(&zs, &Region::single(Ball::origin(3f64.sqrt())), 1e-9);
        assert!(rep.pass);
        assert!((rep.worst_margin.unwrap() - (3f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!(!verify_containment(&zs, &Region::single(Ball::origin(0.9)), 1e-9).pass);

        let origin = ZeroSet {
            isolated: vec![IsolatedZero {
                zero: Quaternion::ZERO,
                residual: 0.0,
                multiplicity: 1,
            }],
            spherical: vec![],
            digest: String::new(),
            deficit: 0,
        };
        let ball = Ball::open(Quaternion::ONE, 0.28);
        assert!(verify_exclusion(&origin, &ball, 1e-9).pass);
        assert!(!verify_containment(&origin, &Region::single(ball), 1e-9).pass);
    }
}
