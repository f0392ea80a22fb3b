//! Walk models, the type-A Weyl chamber, step sets and the step
//! generating function.
//!
//! Two step sets admit a reflection-principle treatment with zero drift:
//! the lock step model (every coordinate moves by ±1 each step) and the
//! random turns model (exactly one coordinate moves by ±1 each step).
//! All walks are confined to the open cone x_1 < x_2 < … < x_k.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    LockStep,
    RandomTurns,
}

/// A walk model: which step set, and the dimension k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub kind: ModelKind,
    pub k: usize,
}

impl Model {
    pub fn new(kind: ModelKind, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("dimension k must be at least 1"));
        }
        Ok(Model { kind, k })
    }

    pub fn lock_step(k: usize) -> Result<Self> {
        Model::new(ModelKind::LockStep, k)
    }

    pub fn random_turns(k: usize) -> Result<Self> {
        Model::new(ModelKind::RandomTurns, k)
    }

    /// Value of S at z = (1,…,1): 2^k for lock step, 2k for random turns.
    pub fn steps_per_point(&self) -> u64 {
        match self.kind {
            ModelKind::LockStep => 1u64 << self.k,
            ModelKind::RandomTurns => 2 * self.k as u64,
        }
    }
}

/// A single step: component-wise displacement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepVector(pub Vec<i64>);

/// A lattice point strictly inside the chamber x_1 < … < x_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChamberPoint(Vec<i64>);

impl ChamberPoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if !in_chamber(&coords) {
            return Err(Error::domain(format!(
                "{coords:?} is not strictly increasing (not a chamber point)"
            )));
        }
        Ok(ChamberPoint(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }
}

/// True iff the coordinates are strictly increasing.
pub fn in_chamber(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] < w[1])
}

/// The full step set of the model, generated (never hard-coded per k).
///
/// Lock step: all 2^k sign patterns (±1,…,±1). Random turns: the 2k
/// signed unit vectors. Both sets are closed under negation and under
/// coordinate permutations.
pub fn steps(model: Model) -> Vec<StepVector> {
    let k = model.k;
    match model.kind {
        ModelKind::LockStep => (0..1u64 << k)
            .map(|mask| {
                StepVector(
                    (0..k)
                        .map(|j| if mask >> j & 1 == 1 { 1 } else { -1 })
                        .collect(),
                )
            })
            .collect(),
        ModelKind::RandomTurns => (0..k)
            .flat_map(|j| {
                [1i64, -1].into_iter().map(move |sign| {
                    let mut delta = vec![0i64; k];
                    delta[j] = sign;
                    StepVector(delta)
                })
            })
            .collect(),
    }
}

/// Necessary conditions for P_n^+(u→v) > 0 (parity, and for random turns
/// the triangle bound). A `true` result does not guarantee a positive
/// count; a `false` result guarantees the count is zero.
///
/// Lock step walks live on the sublattice where all coordinates share one
/// parity; each step flips every coordinate's parity, so u and v must each
/// be parity-constant and u_1 − v_1 ≡ n (mod 2). Random turns change the
/// coordinate sum by ±1 per step, so n ≡ Σ(v_j − u_j) (mod 2) and
/// n ≥ Σ|v_j − u_j|.
pub fn reachable(model: Model, u: &ChamberPoint, v: &ChamberPoint, n: u64) -> bool {
    let (u, v) = (u.coords(), v.coords());
    match model.kind {
        ModelKind::LockStep => {
            let pu = u[0].rem_euclid(2);
            let pv = v[0].rem_euclid(2);
            u.iter().all(|x| x.rem_euclid(2) == pu)
                && v.iter().all(|x| x.rem_euclid(2) == pv)
                && (u[0] - v[0]).rem_euclid(2) == (n % 2) as i64
                && u.iter().zip(v).all(|(a, b)| (a - b).abs() as u64 <= n)
        }
        ModelKind::RandomTurns => {
            let total: i64 = u.iter().zip(v).map(|(a, b)| b - a).sum();
            let dist: u64 = u.iter().zip(v).map(|(a, b)| (b - a).unsigned_abs()).sum();
            total.rem_euclid(2) == (n % 2) as i64 && dist <= n
        }
    }
}

/// Evaluates the step generating function S(z) at a complex point.
/// S_ls(z) = ∏(z_j + 1/z_j), S_rt(z) = Σ(z_j + 1/z_j).
pub fn step_gen_value(model: Model, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != model.k {
        return Err(Error::DimensionMismatch {
            expected: model.k,
            got: z.len(),
        });
    }
    if z.iter().any(|w| w.norm_sqr() == 0.0) {
        return Err(Error::domain("step generating function undefined at z_j = 0"));
    }
    let terms = z.iter().map(|w| w + 1.0 / w);
    Ok(match model.kind {
        ModelKind::LockStep => terms.product(),
        ModelKind::RandomTurns => terms.sum(),
    })
}
