//! Arithmetic at the root of unity `xi = exp(2 pi i / ell)`.

use crate::error::{RelError, RelResult};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type CMat = DMatrix<C64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eq_tol: f64,
    pub zero_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eq_tol: 1e-9, zero_tol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eq_tol: f64, zero_tol: f64) -> RelResult<Self> {
        let ok = |t: f64| t.is_finite() && t > 0.0;
        if !ok(eq_tol) || !ok(zero_tol) {
            return Err(RelError::InvalidDatum("tolerances must be finite and positive".into()));
        }
        Ok(Tolerance { eq_tol, zero_tol })
    }
}

/// How q-integers are formed inside a truncated exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QIntConvention {
    /// `(q^j - q^-j) / (q - q^-1)`
    Balanced,
    /// `(1 - q^j) / (1 - q)`
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity {
    pub ell: u32,
    pub xi: C64,
}

impl RootOfUnity {
    pub fn new(ell: u32) -> RelResult<Self> {
        if ell < 3 || ell.is_multiple_of(2) {
            return Err(RelError::InvalidDatum(format!("ell must be odd and >= 3, got {ell}")));
        }
        Ok(RootOfUnity { ell, xi: C64::from_polar(1.0, 2.0 * PI / ell as f64) })
    }

    /// `xi^z = exp(2 pi i z / ell)` for complex `z`.
    pub fn xi_pow(&self, z: C64) -> C64 {
        (C64::new(0.0, 2.0 * PI / self.ell as f64) * z).exp()
    }

    pub fn xi_powr(&self, z: f64) -> C64 {
        self.xi_pow(C64::new(z, 0.0))
    }

    /// Integer powers reduced mod ell, exact up to one `from_polar`.
    pub fn xi_powi(&self, k: i64) -> C64 {
        let r = k.rem_euclid(self.ell as i64);
        C64::from_polar(1.0, 2.0 * PI * r as f64 / self.ell as f64)
    }

    /// `{z} = xi^z - xi^-z`.
    pub fn qnum(&self, z: C64) -> C64 {
        self.xi_pow(z) - self.xi_pow(-z)
    }

    pub fn qnumr(&self, z: f64) -> C64 {
        self.qnum(C64::new(z, 0.0))
    }

    /// Balanced q-integer `(j) = {j}/{1}`.
    pub fn qint(&self, j: i64) -> C64 {
        self.qnumr(j as f64) / self.qnumr(1.0)
    }

    /// Product of balanced q-integers `(1)(2)...(k)`; rejects `k >= ell`.
    pub fn qfact(&self, k: usize) -> RelResult<C64> {
        if k >= self.ell as usize {
            return Err(RelError::FactorialVanishes { k, ell: self.ell });
        }
        Ok((1..=k as i64).map(|j| self.qint(j)).product())
    }

    /// Truncated exponential `sum_{n < ell} X^n / (n)_q!` with q-integers in base `q`.
    pub fn qexp_trunc(&self, q: C64, x: &CMat, conv: QIntConvention) -> RelResult<CMat> {
        if x.nrows() != x.ncols() {
            return Err(RelError::NotSquare { rows: x.nrows(), cols: x.ncols() });
        }
        let d = x.nrows();
        let mut out = CMat::identity(d, d);
        let mut pow = CMat::identity(d, d);
        let mut fact = C64::new(1.0, 0.0);
        for n in 1..self.ell as usize {
            pow = mul_sparse(&pow, x);
            if max_abs(&pow) <= 1e-12 {
                break;
            }
            fact *= qint_base(q, n as i32, conv);
            if fact.norm() < 1e-300 {
                return Err(RelError::FactorialVanishes { k: n, ell: self.ell });
            }
            out += &pow / fact;
        }
        Ok(out)
    }
}

/// `a * b`, skipping zero entries of `b`. Fast when `b` is sparse.
pub fn mul_sparse(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch");
    let mut out = CMat::zeros(a.nrows(), b.ncols());
    let zero = C64::new(0.0, 0.0);
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let z = b[(k, j)];
            if z != zero {
                out.column_mut(j).axpy(z, &a.column(k), C64::new(1.0, 0.0));
            }
        }
    }
    out
}

/// q-integer in an arbitrary base, using the limit value when the denominator vanishes.
pub fn qint_base(q: C64, j: i32, conv: QIntConvention) -> C64 {
    match conv {
        QIntConvention::Balanced => {
            let den = q - q.inv();
            if den.norm() < 1e-12 {
                // q = +-1: (j)_q -> j q^(j-1)
                return q.powi(j - 1) * j as f64;
            }
            (q.powi(j) - q.powi(-j)) / den
        }
        QIntConvention::Asymmetric => {
            let den = C64::new(1.0, 0.0) - q;
            if den.norm() < 1e-12 {
                return C64::new(j as f64, 0.0);
            }
            (C64::new(1.0, 0.0) - q.powi(j)) / den
        }
    }
}

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Kronecker product `a (x) b` with `a` as the slow index.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}
