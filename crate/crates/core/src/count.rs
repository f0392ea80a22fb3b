//! Exact walk counting: closed-form free counts, the reflection sum for
//! confined counts, and a brute-force dynamic program used as an
//! independent check and for free-endpoint totals.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::model::{in_chamber, steps, ChamberPoint, Model, ModelKind, StepVector};
use crate::perm::signed_permutations;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

thread_local! {
    static FACTORIALS: RefCell<Vec<BigUint>> = RefCell::new(vec![BigUint::one()]);
}

/// n! from a growable per-thread table.
pub fn factorial(n: u64) -> BigUint {
    FACTORIALS.with(|cell| {
        let mut table = cell.borrow_mut();
        while (table.len() as u64) <= n {
            let next = table.last().unwrap() * BigUint::from(table.len());
            table.push(next);
        }
        table[n as usize].clone()
    })
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(r) * factorial(n - r))
}

pub fn multinomial(n: u64, parts: &[u64]) -> BigUint {
    debug_assert_eq!(parts.iter().sum::<u64>(), n);
    let mut denom = BigUint::one();
    for &p in parts {
        denom *= factorial(p);
    }
    factorial(n) / denom
}

/// Walks of one coordinate with ±1 steps from 0 to d in n steps.
fn one_dim_count(n: u64, d: i64) -> BigUint {
    if d.unsigned_abs() > n || (n as i64 + d) % 2 != 0 {
        return BigUint::zero();
    }
    binomial(n, ((n as i64 + d) / 2) as u64)
}

/// Unconfined n-step counts from u to v (arbitrary integer endpoints).
///
/// Lock step factorizes over coordinates. Random turns sums over the
/// split of the n steps among coordinates.
pub fn free_count(model: Model, u: &[i64], v: &[i64], n: u64) -> BigUint {
    debug_assert_eq!(u.len(), model.k);
    debug_assert_eq!(v.len(), model.k);
    let d: Vec<i64> = u.iter().zip(v).map(|(a, b)| b - a).collect();
    match model.kind {
        ModelKind::LockStep => {
            let mut prod = BigUint::one();
            for &dj in &d {
                let c = one_dim_count(n, dj);
                if c.is_zero() {
                    return BigUint::zero();
                }
                prod *= c;
            }
            prod
        }
        ModelKind::RandomTurns => {
            let mut total = BigUint::zero();
            let mut parts = vec![0u64; d.len()];
            rt_compositions(n, &d, 0, &mut parts, &mut total);
            total
        }
    }
}

fn rt_compositions(remaining: u64, d: &[i64], j: usize, parts: &mut [u64], total: &mut BigUint) {
    if j == d.len() - 1 {
        parts[j] = remaining;
        let mut term = multinomial(parts.iter().sum(), parts);
        for (m, &dm) in parts.iter().zip(d) {
            let c = one_dim_count(*m, dm);
            if c.is_zero() {
                return;
            }
            term *= c;
        }
        *total += term;
        return;
    }
    let lo = d[j].unsigned_abs();
    // the tail still needs at least Σ|d_m| steps
    let tail: u64 = d[j + 1..].iter().map(|x| x.unsigned_abs()).sum();
    if lo + tail > remaining {
        return;
    }
    let mut nj = lo;
    while nj <= remaining - tail {
        parts[j] = nj;
        rt_compositions(remaining - nj, d, j + 1, parts, total);
        nj += 2;
    }
}

fn signed_reflection_terms(model: Model, u: &[i64], v: &[i64], n: u64) -> Vec<BigInt> {
    let perms = signed_permutations(u);
    let term = |(p, s): &(Vec<i64>, i32)| {
        let c = free_count(model, p, v, n);
        if *s > 0 {
            BigInt::from_biguint(Sign::Plus, c)
        } else {
            -BigInt::from_biguint(Sign::Plus, c)
        }
    };
    #[cfg(feature = "parallel")]
    {
        perms.par_iter().map(term).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        perms.iter().map(term).collect()
    }
}

/// Confined n-step count u → v inside the chamber, as the signed sum of
/// free counts over permuted starting points.
pub fn reflection_count(model: Model, u: &ChamberPoint, v: &ChamberPoint, n: u64) -> Result<BigUint> {
    if u.k() != model.k || v.k() != model.k {
        return Err(Error::DimensionMismatch {
            expected: model.k,
            got: if u.k() != model.k { u.k() } else { v.k() },
        });
    }
    let total: BigInt = signed_reflection_terms(model, u.coords(), v.coords(), n)
        .into_iter()
        .sum();
    total
        .to_biguint()
        .ok_or_else(|| Error::internal("signed reflection sum came out negative"))
}

/// Confined count summed over all chamber endpoints, via the reflection
/// formula applied pointwise. Quadratic in the window size; used to
/// cross-check the dynamic program.
pub fn confined_total_reflection(model: Model, u: &ChamberPoint, n: u64) -> Result<BigUint> {
    let layer = |v: &[i64]| -> BigInt {
        signed_reflection_terms(model, u.coords(), v, n)
            .into_iter()
            .sum()
    };
    let k = model.k;
    let lo: Vec<i64> = u.coords().iter().map(|&x| x - n as i64).collect();
    let hi: Vec<i64> = u.coords().iter().map(|&x| x + n as i64).collect();
    let mut total = BigInt::zero();
    let mut v = lo.clone();
    loop {
        if in_chamber(&v) {
            total += layer(&v);
        }
        // odometer over the box [lo, hi]^k
        let mut j = 0;
        loop {
            if j == k {
                return total
                    .to_biguint()
                    .ok_or_else(|| Error::internal("negative free-endpoint total"));
            }
            v[j] += 1;
            if v[j] <= hi[j] {
                break;
            }
            v[j] = lo[j];
            j += 1;
        }
    }
}

/// The distribution after n confined steps: counts for every endpoint in
/// the reachable window, indexed by lattice coordinates.
pub struct FinalLayer {
    origin: Vec<i64>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    data: Vec<BigUint>,
}

impl FinalLayer {
    fn flat(&self, v: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for j in 0..v.len() {
            let off = v[j] - self.origin[j];
            if off < 0 || off as usize >= self.dims[j] {
                return None;
            }
            idx += off as usize * self.strides[j];
        }
        Some(idx)
    }

    pub fn get(&self, v: &[i64]) -> BigUint {
        self.flat(v).map_or_else(BigUint::zero, |i| self.data[i].clone())
    }

    /// Sum over every endpoint (all stored cells lie in the chamber).
    pub fn total(&self) -> BigUint {
        self.data.iter().sum()
    }
}

struct Grid {
    origin: Vec<i64>,
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Grid {
    fn new(u: &[i64], n: u64) -> Grid {
        let k = u.len();
        let origin: Vec<i64> = u.iter().map(|&x| x - n as i64).collect();
        let dims = vec![2 * n as usize + 1; k];
        let mut strides = vec![1usize; k];
        for j in (0..k - 1).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        Grid { origin, dims, strides }
    }

    fn len(&self) -> usize {
        self.dims[0] * self.strides[0]
    }

    fn coords(&self, mut flat: usize, out: &mut [i64]) {
        for j in 0..self.dims.len() {
            out[j] = self.origin[j] + (flat / self.strides[j]) as i64;
            flat %= self.strides[j];
        }
    }

    fn flat_of(&self, v: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for j in 0..v.len() {
            let off = v[j] - self.origin[j];
            if off < 0 || off as usize >= self.dims[j] {
                return None;
            }
            idx += off as usize * self.strides[j];
        }
        Some(idx)
    }
}

fn dp_step_range(
    grid: &Grid,
    steps: &[StepVector],
    src: &[BigUint],
    dst: &mut [BigUint],
    base: usize,
) {
    let k = grid.dims.len();
    let mut v = vec![0i64; k];
    for (off, cell) in dst.iter_mut().enumerate() {
        let flat = base + off;
        grid.coords(flat, &mut v);
        if !in_chamber(&v) {
            cell.set_zero();
            continue;
        }
        let mut acc = BigUint::zero();
        'steps: for s in steps {
            let mut src_flat = 0usize;
            for j in 0..k {
                let off_j = v[j] - s.0[j] - grid.origin[j];
                if off_j < 0 || off_j as usize >= grid.dims[j] {
                    continue 'steps;
                }
                src_flat += off_j as usize * grid.strides[j];
            }
            let c = &src[src_flat];
            if !c.is_zero() {
                acc += c;
            }
        }
        *cell = acc;
    }
}

fn dp_run(model: Model, u: &ChamberPoint, n: u64, parallel: bool) -> FinalLayer {
    let grid = Grid::new(u.coords(), n);
    let step_set = steps(model);
    let mut src = vec![BigUint::zero(); grid.len()];
    let mut dst = vec![BigUint::zero(); grid.len()];
    src[grid
        .flat_of(u.coords())
        .expect("start point inside its own window")] = BigUint::one();
    for _ in 0..n {
        #[cfg(feature = "parallel")]
        if parallel {
            let chunk = grid.strides[0].max(1);
            dst.par_chunks_mut(chunk).enumerate().for_each(|(i, slab)| {
                dp_step_range(&grid, &step_set, &src, slab, i * chunk);
            });
            std::mem::swap(&mut src, &mut dst);
            continue;
        }
        let _ = parallel;
        dp_step_range(&grid, &step_set, &src, &mut dst, 0);
        std::mem::swap(&mut src, &mut dst);
    }
    FinalLayer {
        origin: grid.origin,
        dims: grid.dims,
        strides: grid.strides,
        data: src,
    }
}

/// Runs the confined step-by-step dynamic program and returns the final
/// distribution. Data-parallel over grid slabs when the `parallel`
/// feature is enabled.
pub fn confined_final_layer(model: Model, u: &ChamberPoint, n: u64) -> FinalLayer {
    dp_run(model, u, n, cfg!(feature = "parallel"))
}

/// Sequential variant of [`confined_final_layer`], kept for benchmarking
/// against the data-parallel path.
pub fn confined_final_layer_seq(model: Model, u: &ChamberPoint, n: u64) -> FinalLayer {
    dp_run(model, u, n, false)
}

/// Confined u → v count by brute-force dynamic programming.
pub fn confined_count_dp(model: Model, u: &ChamberPoint, v: &ChamberPoint, n: u64) -> BigUint {
    confined_final_layer(model, u, n).get(v.coords())
}

/// Confined count with a free endpoint (summed over all chamber points).
pub fn confined_total_dp(model: Model, u: &ChamberPoint, n: u64) -> BigUint {
    confined_final_layer(model, u, n).total()
}
