//! Truncated multivariate power series with exact Gaussian-rational
//! coefficients, plus univariate Taylor coefficient lists.
//!
//! All arithmetic is exact up to the stated total degree bound and makes
//! no claim beyond it. Multiplication is naive with degree filtering;
//! every use here has few variables and small degree.

use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qrat::{qr_i_pow, qr_one, qr_ratio, QRat};

/// A polynomial in `k` variables, truncated at total degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    k: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, QRat>,
}

impl MultiSeries {
    pub fn zero(k: usize, degree: usize) -> Self {
        MultiSeries {
            k,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, degree: usize, c: QRat) -> Self {
        let mut s = MultiSeries::zero(k, degree);
        s.add_term(vec![0; k], c);
        s
    }

    pub fn one(k: usize, degree: usize) -> Self {
        MultiSeries::constant(k, degree, qr_one())
    }

    /// The variable z_j (0-based).
    pub fn var(k: usize, degree: usize, j: usize) -> Self {
        assert!(j < k);
        let mut expo = vec![0u32; k];
        expo[j] = 1;
        let mut s = MultiSeries::zero(k, degree);
        s.add_term(expo, qr_one());
        s
    }

    /// A single monomial c·z^expo.
    pub fn monomial(k: usize, degree: usize, expo: Vec<u32>, c: QRat) -> Self {
        assert_eq!(expo.len(), k);
        let mut s = MultiSeries::zero(k, degree);
        s.add_term(expo, c);
        s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, expo: &[u32]) -> QRat {
        self.terms.get(expo).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QRat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, expo: Vec<u32>, c: QRat) {
        if c.is_zero() || expo.iter().map(|&e| e as usize).sum::<usize>() > self.degree {
            return;
        }
        let entry = self.terms.entry(expo.clone()).or_insert_with(QRat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&expo);
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return MultiSeries::zero(self.k, self.degree);
        }
        let mut out = MultiSeries::zero(self.k, self.degree);
        for (expo, v) in &self.terms {
            out.add_term(expo.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Evaluates the polynomial at an exact point.
    pub fn eval(&self, x: &[QRat]) -> QRat {
        assert_eq!(x.len(), self.k);
        let mut acc = QRat::zero();
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for (xm, &e) in x.iter().zip(expo) {
                for _ in 0..e {
                    term = term * xm.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.k, rhs.k);
        let degree = self.degree.min(rhs.degree);
        let mut out = MultiSeries::zero(self.k, degree);
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        self + &(-rhs)
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        let mut out = MultiSeries::zero(self.k, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.k, rhs.k);
        let degree = self.degree.min(rhs.degree);
        let mut out = MultiSeries::zero(self.k, degree);
        for (ea, ca) in &self.terms {
            let da: usize = ea.iter().map(|&e| e as usize).sum();
            for (eb, cb) in &rhs.terms {
                let db: usize = eb.iter().map(|&e| e as usize).sum();
                if da + db > degree {
                    continue;
                }
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Taylor coefficients a_0…a_D of a univariate function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub a: Vec<QRat>,
}

impl SeriesCoeffs {
    pub fn new(a: Vec<QRat>) -> Self {
        SeriesCoeffs { a }
    }

    /// f(w) = e^{iw}: a_l = i^l / l!.
    pub fn exp_i(degree: usize) -> Self {
        let mut a = Vec::with_capacity(degree + 1);
        let mut inv_fact = qr_one();
        for l in 0..=degree {
            if l > 0 {
                inv_fact = inv_fact * qr_ratio(1, l as i64);
            }
            a.push(qr_i_pow(l as u32) * inv_fact.clone());
        }
        SeriesCoeffs::new(a)
    }

    /// f(w) = 1/(1−w): a_l = 1.
    pub fn geometric(degree: usize) -> Self {
        SeriesCoeffs::new(vec![qr_one(); degree + 1])
    }

    pub fn coeff(&self, l: usize) -> QRat {
        self.a.get(l).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn max_index(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    /// The univariate truncated series f(c·w) in variable w_j.
    pub fn series_in(&self, k: usize, degree: usize, j: usize, c: &QRat) -> MultiSeries {
        let mut out = MultiSeries::zero(k, degree);
        let mut cpow = qr_one();
        for l in 0..=degree.min(self.max_index()) {
            if l > 0 {
                cpow = cpow * c.clone();
            }
            let mut expo = vec![0u32; k];
            expo[j] = l as u32;
            out.add_term(expo, self.coeff(l) * cpow.clone());
        }
        out
    }
}
