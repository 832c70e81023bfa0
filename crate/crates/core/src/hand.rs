//! Hand description loading, forward kinematics, and fingertip Jacobians.
//!
//! The hand is a tree of revolute/prismatic joints over named links. Fingers
//! are root-to-tip joint chains with a designated tip link carrying local
//! contact-sample points. The fingertip reference point used by Jacobians,
//! pinch motions, and manipulability is the centroid of the tip link's
//! stored samples (the pad center), expressed in world frame.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::math::{Mat3, RigidTransform, Vec3};

pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointKind {
    Revolute,
    Prismatic,
}

#[derive(Debug, Clone)]
pub struct Joint {
    pub name: String,
    pub parent: usize,
    pub child: usize,
    pub kind: JointKind,
    pub origin: RigidTransform,
    pub axis: Vec3,
    pub limits: (f64, f64),
}

#[derive(Debug, Clone)]
pub struct Finger {
    pub name: String,
    /// Indices into `HandModel::joints`, ordered root to tip.
    pub joints: Vec<usize>,
    pub tip_link: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    /// Position in the tip link frame, metres.
    pub point: Vec3,
    /// Inward unit normal in the tip link frame.
    pub normal: Vec3,
}

#[derive(Debug, Clone)]
pub struct HandModel {
    pub joints: Vec<Joint>,
    pub fingers: Vec<Finger>,
    /// Link names; index 0 is the root link.
    pub links: Vec<String>,
    /// Per tip-link samples (link index -> samples).
    pub samples: BTreeMap<usize, Vec<SurfaceSample>>,
    /// Per tip-link local sample centroid (the pad center).
    pad_centers: BTreeMap<usize, Vec3>,
    pub dof: usize,
}

/// A joint configuration clamped into the model's limits.
#[derive(Debug, Clone, PartialEq)]
pub struct JointConfig {
    pub values: Vec<f64>,
}

impl JointConfig {
    /// Clamp `values` into the model's joint limits. Out-of-range values are
    /// clamped rather than rejected; optimizer steps routinely overshoot.
    pub fn clamped(model: &HandModel, values: &[f64]) -> Result<Self> {
        if values.len() != model.dof {
            return Err(Error::DimensionMismatch {
                expected: model.dof,
                got: values.len(),
            });
        }
        let values = values
            .iter()
            .zip(&model.joints)
            .map(|(v, j)| v.clamp(j.limits.0, j.limits.1))
            .collect();
        Ok(Self { values })
    }

    pub fn zeros(model: &HandModel) -> Self {
        Self::clamped(model, &vec![0.0; model.dof]).expect("dof matches")
    }

    /// Midpoint of every joint's limit interval.
    pub fn mid_limits(model: &HandModel) -> Self {
        let values = model
            .joints
            .iter()
            .map(|j| 0.5 * (j.limits.0 + j.limits.1))
            .collect();
        Self { values }
    }
}

// Raw serde schema for the hand description file.
#[derive(Deserialize)]
struct RawHand {
    joints: Vec<RawJoint>,
    fingers: Vec<RawFinger>,
    fingertip_samples: BTreeMap<String, Vec<RawSample>>,
}

#[derive(Deserialize)]
struct RawJoint {
    name: String,
    parent: String,
    child: String,
    #[serde(rename = "type")]
    kind: String,
    origin: RawOrigin,
    axis: [f64; 3],
    limits: [f64; 2],
}

#[derive(Deserialize)]
struct RawOrigin {
    translation: [f64; 3],
    /// Row-major 3x3 rotation matrix.
    rotation: [f64; 9],
}

#[derive(Deserialize)]
struct RawFinger {
    name: String,
    joint_names: Vec<String>,
    tip_link: String,
}

#[derive(Deserialize)]
struct RawSample {
    point: [f64; 3],
    normal: [f64; 3],
}

/// Load and validate a hand description file.
pub fn load_hand(path: impl AsRef<Path>) -> Result<HandModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let raw: RawHand = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: format!("line {}: {}", e.line(), e),
    })?;
    build_hand(raw)
}

fn build_hand(raw: RawHand) -> Result<HandModel> {
    // Collect link names; child links in joint order, then find the root.
    let mut links: Vec<String> = Vec::new();
    let mut link_index = BTreeMap::new();
    let mut intern = |name: &str, links: &mut Vec<String>| -> usize {
        *link_index.entry(name.to_string()).or_insert_with(|| {
            links.push(name.to_string());
            links.len() - 1
        })
    };

    // Root detection: exactly one link that never appears as a child.
    let child_names: Vec<&str> = raw.joints.iter().map(|j| j.child.as_str()).collect();
    let roots: Vec<&str> = raw
        .joints
        .iter()
        .map(|j| j.parent.as_str())
        .filter(|p| !child_names.contains(p))
        .collect();
    let root = match roots.first() {
        Some(r) if roots.iter().all(|x| x == r) => r.to_string(),
        _ => {
            return Err(Error::CyclicTree(
                roots.first().unwrap_or(&"<none>").to_string(),
            ))
        }
    };
    intern(&root, &mut links);

    let mut joints = Vec::with_capacity(raw.joints.len());
    for rj in &raw.joints {
        let kind = match rj.kind.as_str() {
            "revolute" => JointKind::Revolute,
            "prismatic" => JointKind::Prismatic,
            other => {
                return Err(Error::Parse {
                    path: rj.name.clone(),
                    message: format!("unknown joint type '{other}'"),
                })
            }
        };
        let axis = Vec3::from_column_slice(&rj.axis);
        if (axis.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitAxis(rj.name.clone()));
        }
        if rj.limits[0] > rj.limits[1] {
            return Err(Error::BadLimits {
                joint: rj.name.clone(),
                lo: rj.limits[0],
                hi: rj.limits[1],
            });
        }
        let rot = Mat3::from_row_slice(&rj.origin.rotation);
        let origin = RigidTransform::new(rot, Vec3::from_column_slice(&rj.origin.translation));
        if !origin.is_valid(UNIT_TOL) {
            return Err(Error::Parse {
                path: rj.name.clone(),
                message: "origin rotation is not orthonormal".into(),
            });
        }
        let parent = intern(&rj.parent, &mut links);
        let child = intern(&rj.child, &mut links);
        joints.push(Joint {
            name: rj.name.clone(),
            parent,
            child,
            kind,
            origin,
            axis,
            limits: (rj.limits[0], rj.limits[1]),
        });
    }

    // Every child link is produced by exactly one joint and the tree must be
    // connected from the root (acyclic by construction if both hold).
    let mut producer: BTreeMap<usize, usize> = BTreeMap::new();
    for (ji, j) in joints.iter().enumerate() {
        if producer.insert(j.child, ji).is_some() || j.child == 0 {
            return Err(Error::CyclicTree(links[j.child].clone()));
        }
    }
    // Walk each joint's parent chain to the root; a cycle or a dangling
    // parent shows up as a chain longer than the joint count.
    for j in &joints {
        let mut link = j.parent;
        let mut steps = 0;
        while link != 0 {
            match producer.get(&link) {
                Some(&ji) => link = joints[ji].parent,
                None => return Err(Error::CyclicTree(links[link].clone())),
            }
            steps += 1;
            if steps > joints.len() {
                return Err(Error::CyclicTree(links[link].clone()));
            }
        }
    }

    let name_to_joint: BTreeMap<&str, usize> = joints
        .iter()
        .enumerate()
        .map(|(i, j)| (j.name.as_str(), i))
        .collect();

    let mut fingers = Vec::new();
    for rf in &raw.fingers {
        let mut idxs = Vec::with_capacity(rf.joint_names.len());
        for n in &rf.joint_names {
            let ji = *name_to_joint
                .get(n.as_str())
                .ok_or_else(|| Error::FingerNotChain(rf.name.clone()))?;
            idxs.push(ji);
        }
        if idxs.is_empty() {
            return Err(Error::FingerNotChain(rf.name.clone()));
        }
        // Consecutive joints must share a link: child of one is parent of next.
        for w in idxs.windows(2) {
            if joints[w[0]].child != joints[w[1]].parent {
                return Err(Error::FingerNotChain(rf.name.clone()));
            }
        }
        let tip_link = *link_index
            .get(&rf.tip_link)
            .ok_or_else(|| Error::UnknownTipLink(rf.tip_link.clone()))?;
        if joints[*idxs.last().unwrap()].child != tip_link {
            return Err(Error::UnknownTipLink(rf.tip_link.clone()));
        }
        fingers.push(Finger {
            name: rf.name.clone(),
            joints: idxs,
            tip_link,
        });
    }

    let mut samples = BTreeMap::new();
    let mut pad_centers = BTreeMap::new();
    for (link_name, raw_samples) in &raw.fingertip_samples {
        let li = *link_index
            .get(link_name)
            .ok_or_else(|| Error::UnknownTipLink(link_name.clone()))?;
        let mut out = Vec::with_capacity(raw_samples.len());
        let mut centroid = Vec3::zeros();
        for s in raw_samples {
            let normal = Vec3::from_column_slice(&s.normal);
            if (normal.norm() - 1.0).abs() > 1e-6 {
                return Err(Error::Parse {
                    path: link_name.clone(),
                    message: "fingertip sample normal is not unit".into(),
                });
            }
            let point = Vec3::from_column_slice(&s.point);
            centroid += point;
            out.push(SurfaceSample { point, normal });
        }
        if !out.is_empty() {
            centroid /= out.len() as f64;
        }
        samples.insert(li, out);
        pad_centers.insert(li, centroid);
    }

    let dof = joints.len();
    Ok(HandModel {
        joints,
        fingers,
        links,
        samples,
        pad_centers,
        dof,
    })
}

impl HandModel {
    pub fn finger(&self, name: &str) -> Result<&Finger> {
        self.fingers
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFinger(name.to_string()))
    }

    pub fn finger_index(&self, name: &str) -> Result<usize> {
        self.fingers
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFinger(name.to_string()))
    }

    /// The thumb/index pair used by pinch operations, by conventional names.
    pub fn pinch_pair(&self) -> Result<(usize, usize)> {
        Ok((self.finger_index("thumb")?, self.finger_index("index")?))
    }

    pub fn tip_samples(&self, finger: &Finger) -> Result<&[SurfaceSample]> {
        match self.samples.get(&finger.tip_link) {
            Some(s) if !s.is_empty() => Ok(s),
            _ => Err(Error::NoFingertipSamples(finger.name.clone())),
        }
    }

    /// Local pad center of a finger's tip link (centroid of its samples).
    pub fn pad_center(&self, finger: &Finger) -> Result<Vec3> {
        self.pad_centers
            .get(&finger.tip_link)
            .copied()
            .ok_or_else(|| Error::NoFingertipSamples(finger.name.clone()))
    }

    /// Longest root-to-pad distance at the zero configuration, used for
    /// initialization radii.
    pub fn max_finger_length(&self) -> f64 {
        let q = JointConfig::zeros(self);
        let fk = fk_links(self, &q.values, None);
        self.fingers
            .iter()
            .filter_map(|f| {
                let c = self.pad_center(f).ok()?;
                Some(fk[f.tip_link].transform_point(&c).norm())
            })
            .fold(0.0, f64::max)
    }

    /// Largest thumb-index pad separation over a deterministic sweep of
    /// in-limit configurations; conservative upper bound on pinch width.
    pub fn max_pinch_aperture(&self) -> Result<f64> {
        let (ti, ii) = self.pinch_pair()?;
        let mut best: f64 = 0.0;
        let steps = 6usize;
        // Sweep only the pinch fingers' joints on a coarse grid; the other
        // joints do not move the pair.
        let pinch_joints: Vec<usize> = self.fingers[ti]
            .joints
            .iter()
            .chain(self.fingers[ii].joints.iter())
            .copied()
            .collect();
        let combos = (steps + 1).pow(pinch_joints.len().min(4) as u32);
        let swept = &pinch_joints[..pinch_joints.len().min(4)];
        let mut q = JointConfig::mid_limits(self).values;
        for combo in 0..combos {
            let mut c = combo;
            for &ji in swept {
                let t = (c % (steps + 1)) as f64 / steps as f64;
                c /= steps + 1;
                let (lo, hi) = self.joints[ji].limits;
                q[ji] = lo + t * (hi - lo);
            }
            let fk = fk_links(self, &q, None);
            let pt = fk[self.fingers[ti].tip_link]
                .transform_point(&self.pad_center(&self.fingers[ti])?);
            let pi = fk[self.fingers[ii].tip_link]
                .transform_point(&self.pad_center(&self.fingers[ii])?);
            best = best.max((pt - pi).norm());
        }
        Ok(best)
    }
}

/// Internal FK: world transform of every link, indexed by link id.
/// `root` composes an external wrist pose onto the root link.
pub fn fk_links(model: &HandModel, q: &[f64], root: Option<&RigidTransform>) -> Vec<RigidTransform> {
    debug_assert_eq!(q.len(), model.dof);
    let mut out = vec![RigidTransform::identity(); model.links.len()];
    if let Some(r) = root {
        out[0] = *r;
    }
    // Joints are stored parent-before-child for the fixtures we author, but
    // iterate until fixpoint-free by processing in dependency order.
    let mut done = vec![false; model.links.len()];
    done[0] = true;
    let mut remaining: Vec<usize> = (0..model.joints.len()).collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|&ji| {
            let j = &model.joints[ji];
            if !done[j.parent] {
                return true;
            }
            let motion = match j.kind {
                JointKind::Revolute => {
                    RigidTransform::new(crate::math::rotation_exp(&(j.axis * q[ji])), Vec3::zeros())
                }
                JointKind::Prismatic => RigidTransform::from_translation(j.axis * q[ji]),
            };
            out[j.child] = out[j.parent].compose(&j.origin).compose(&motion);
            done[j.child] = true;
            false
        });
        assert!(remaining.len() < before, "joint tree not topologically reachable");
    }
    out
}

/// World transform of every link, keyed by link name.
pub fn forward_kinematics(
    model: &HandModel,
    q: &JointConfig,
) -> Result<BTreeMap<String, RigidTransform>> {
    if q.values.len() != model.dof {
        return Err(Error::DimensionMismatch {
            expected: model.dof,
            got: q.values.len(),
        });
    }
    let fk = fk_links(model, &q.values, None);
    Ok(model
        .links
        .iter()
        .cloned()
        .zip(fk.iter().copied())
        .collect())
}

/// World position of a finger's pad center.
pub fn fingertip_position(
    model: &HandModel,
    fk: &[RigidTransform],
    finger: &Finger,
) -> Result<Vec3> {
    let c = model.pad_center(finger)?;
    Ok(fk[finger.tip_link].transform_point(&c))
}

/// World axis and world position of a joint's frame, from link transforms.
pub fn joint_world(model: &HandModel, fk: &[RigidTransform], joint_index: usize) -> (Vec3, Vec3) {
    let j = &model.joints[joint_index];
    let frame = fk[j.parent].compose(&j.origin);
    (frame.rotation * j.axis, frame.translation)
}

/// Positional Jacobian of an arbitrary world point rigidly attached to
/// `finger`'s tip link, with respect to that finger's joints (3 x d_f).
pub fn point_jacobian(
    model: &HandModel,
    fk: &[RigidTransform],
    finger: &Finger,
    world_point: &Vec3,
) -> DMatrix<f64> {
    let mut jac = DMatrix::zeros(3, finger.joints.len());
    for (col, &ji) in finger.joints.iter().enumerate() {
        let (axis, origin) = joint_world(model, fk, ji);
        let v = match model.joints[ji].kind {
            JointKind::Revolute => axis.cross(&(world_point - origin)),
            JointKind::Prismatic => axis,
        };
        jac.set_column(col, &v.into());
    }
    jac
}

/// Positional Jacobian of the fingertip pad center for a named finger.
pub fn fingertip_jacobian(model: &HandModel, q: &JointConfig, finger: &str) -> Result<DMatrix<f64>> {
    if q.values.len() != model.dof {
        return Err(Error::DimensionMismatch {
            expected: model.dof,
            got: q.values.len(),
        });
    }
    let f = model.finger(finger)?;
    let fk = fk_links(model, &q.values, None);
    let tip = fingertip_position(model, &fk, f)?;
    Ok(point_jacobian(model, &fk, f, &tip))
}

/// Derivative of the fingertip Jacobian column `m` with respect to joint `k`
/// of the same finger (both indices into `finger.joints`). Used by the
/// manipulability gradient.
pub fn jacobian_column_derivative(
    model: &HandModel,
    fk: &[RigidTransform],
    finger: &Finger,
    tip: &Vec3,
    m: usize,
    k: usize,
) -> Vec3 {
    let jm = finger.joints[m];
    let jk = finger.joints[k];
    let (a_m, p_m) = joint_world(model, fk, jm);
    let (a_k, p_k) = joint_world(model, fk, jk);
    let kind_m = model.joints[jm].kind;
    let kind_k = model.joints[jk].kind;
    match (kind_m, kind_k) {
        (JointKind::Prismatic, JointKind::Revolute) => {
            if k < m {
                a_k.cross(&a_m)
            } else {
                Vec3::zeros()
            }
        }
        (JointKind::Prismatic, JointKind::Prismatic) => Vec3::zeros(),
        (JointKind::Revolute, kk) => {
            // col_m = a_m x (tip - p_m)
            if k < m {
                match kk {
                    JointKind::Revolute => {
                        a_k.cross(&a_m).cross(&(tip - p_m)) + a_m.cross(&a_k.cross(&(tip - p_m)))
                    }
                    // Upstream prismatic shifts tip and p_m equally.
                    JointKind::Prismatic => Vec3::zeros(),
                }
            } else {
                // k >= m: only the tip point moves.
                let dtip = match kk {
                    JointKind::Revolute => a_k.cross(&(tip - p_k)),
                    JointKind::Prismatic => a_k,
                };
                a_m.cross(&dtip)
            }
        }
    }
}
