//! Rigid-body transforms and small numeric helpers shared across the crate.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Singular values below this are truncated in pseudoinverse computations.
pub const PINV_TRUNCATION: f64 = 1e-8;

/// Skew-symmetric matrix of `v`, so that `skew(v) * w == v.cross(&w)`.
pub fn skew(v: &Vec3) -> Mat3 {
    Mat3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// A proper rigid transform: rotation then translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: Mat3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(rotation: Mat3, translation: Vec3) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn from_translation(translation: Vec3) -> Self {
        Self {
            rotation: Mat3::identity(),
            translation,
        }
    }

    /// Build from 6 raw parameters: translation followed by an axis-angle
    /// rotation vector (the parameterization used for free wrist poses).
    pub fn from_params(params: &[f64; 6]) -> Self {
        let t = Vec3::new(params[0], params[1], params[2]);
        let r = Vec3::new(params[3], params[4], params[5]);
        Self {
            rotation: rotation_exp(&r),
            translation: t,
        }
    }

    pub fn transform_point(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    pub fn transform_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation * v
    }

    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// Orthonormality and determinant check, `R^T R = I` and `det R = +1`.
    pub fn is_valid(&self, tol: f64) -> bool {
        let err = (self.rotation.transpose() * self.rotation - Mat3::identity()).norm();
        err <= tol && (self.rotation.determinant() - 1.0).abs() <= tol
    }
}

/// Rodrigues exponential map: rotation matrix of the axis-angle vector `r`.
pub fn rotation_exp(r: &Vec3) -> Mat3 {
    let theta = r.norm();
    if theta < 1e-12 {
        return Mat3::identity() + skew(r);
    }
    let k = skew(&(r / theta));
    Mat3::identity() + k * theta.sin() + k * k * (1.0 - theta.cos())
}

/// Derivative of the exponential map: `dR/dr_k` for the axis-angle vector `r`.
///
/// Closed form from the first-order variation of the Rodrigues formula; at
/// the identity it reduces to the generator `[e_k]_x`.
pub fn rotation_exp_grad(r: &Vec3, k: usize) -> Mat3 {
    let theta2 = r.norm_squared();
    let mut e = Vec3::zeros();
    e[k] = 1.0;
    if theta2 < 1e-16 {
        return skew(&e);
    }
    let rot = rotation_exp(r);
    let term = r.cross(&((Mat3::identity() - rot) * e));
    (skew(r) * r[k] + skew(&term)) * rot / theta2
}

/// Moore-Penrose pseudoinverse with small singular values truncated.
pub fn pseudoinverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = m.clone().svd(true, true);
    let u = svd.u.as_ref().expect("svd u");
    let vt = svd.v_t.as_ref().expect("svd v_t");
    let mut sigma_inv = DMatrix::zeros(vt.nrows(), u.ncols());
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s > PINV_TRUNCATION {
            sigma_inv[(i, i)] = 1.0 / s;
        }
    }
    vt.transpose() * sigma_inv * u.transpose()
}

/// Central finite-difference gradient of `f` at `x` with step `h`.
pub fn fd_gradient<F: FnMut(&DVector<f64>) -> f64>(
    f: &mut F,
    x: &DVector<f64>,
    h: f64,
) -> DVector<f64> {
    let mut g = DVector::zeros(x.len());
    let mut xp = x.clone();
    for i in 0..x.len() {
        let orig = xp[i];
        xp[i] = orig + h;
        let fp = f(&xp);
        xp[i] = orig - h;
        let fm = f(&xp);
        xp[i] = orig;
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

/// Stable per-task seed derivation (splitmix64 over the pair), so batch
/// entries get independent, reproducible RNG streams.
pub fn derive_seed(global_seed: u64, task_index: u64) -> u64 {
    let mut z = global_seed ^ task_index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn skew_matches_cross_product() {
        let v = Vec3::new(0.3, -1.2, 2.0);
        let w = Vec3::new(-0.5, 0.1, 0.7);
        assert_relative_eq!(skew(&v) * w, v.cross(&w), epsilon = 1e-15);
    }

    #[test]
    fn exp_map_is_orthonormal() {
        let r = Vec3::new(0.4, -0.9, 1.3);
        let t = RigidTransform::new(rotation_exp(&r), Vec3::zeros());
        assert!(t.is_valid(1e-12));
    }

    #[test]
    fn exp_grad_matches_finite_differences() {
        let r = Vec3::new(0.7, -0.2, 0.5);
        let h = 1e-6;
        for k in 0..3 {
            let analytic = rotation_exp_grad(&r, k);
            let mut rp = r;
            rp[k] += h;
            let mut rm = r;
            rm[k] -= h;
            let fd = (rotation_exp(&rp) - rotation_exp(&rm)) / (2.0 * h);
            assert_relative_eq!(analytic, fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn exp_grad_at_identity_is_generator() {
        let g = rotation_exp_grad(&Vec3::zeros(), 2);
        assert_relative_eq!(g, skew(&Vec3::new(0.0, 0.0, 1.0)), epsilon = 1e-15);
    }

    #[test]
    fn pseudoinverse_solves_least_squares() {
        let j = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 0.09, 0.04, 0.0, 0.0]);
        let pinv = pseudoinverse(&j);
        let d = DVector::from_column_slice(&[0.0, 1.0, 0.0]);
        let dq = &pinv * &d;
        let back = &j * &dq;
        assert_relative_eq!(back[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn derive_seed_is_stable() {
        assert_eq!(derive_seed(1, 0), derive_seed(1, 0));
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }

    #[test]
    fn transform_round_trip() {
        let t = RigidTransform::new(
            rotation_exp(&Vec3::new(0.1, 0.2, -0.4)),
            Vec3::new(0.02, -0.01, 0.03),
        );
        let p = Vec3::new(0.05, 0.01, -0.02);
        let q = t.inverse().transform_point(&t.transform_point(&p));
        assert_relative_eq!(q, p, epsilon = 1e-14);
    }
}
