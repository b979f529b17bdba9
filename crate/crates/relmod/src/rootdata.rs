//! Root datum of sl(m|n) in the distinguished Borel, weights in fundamental
//! coordinates, typicality, alcove and grading predicates.
//!
//! Weights are stored as `c_i = lambda(H_i)`. The epsilon/delta representative
//! of a weight is the one orthogonal to the supertrace `sum eps_i - sum delta_j`;
//! on that section the form agrees with the inverse of the symmetrized Cartan
//! matrix, which is the form used by the Cartan part of the R-matrix.

use crate::error::{RelError, RelResult};
use crate::scalars::{c64, RootOfUnity, Tolerance};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for CJson {
    fn from(z: C64) -> Self {
        CJson { re: z.re, im: z.im }
    }
}

impl From<CJson> for C64 {
    fn from(z: CJson) -> Self {
        C64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub m: usize,
    pub n: usize,
    pub coords: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightJson {
    pub c: Vec<f64>,
    pub a: CJson,
}

impl Weight {
    pub fn zero(m: usize, n: usize) -> Self {
        Weight { m, n, coords: vec![c64(0.0, 0.0); m + n - 1] }
    }

    /// `lambda_a^c`: `c` lists the r-1 coordinates away from the odd node.
    pub fn from_ca(m: usize, n: usize, c: &[i64], a: C64) -> RelResult<Self> {
        let r = m + n - 1;
        if c.len() != r - 1 {
            return Err(RelError::BadCoords { expected: r - 1, got: c.len() });
        }
        let mut coords = Vec::with_capacity(r);
        for (i, &ci) in c.iter().enumerate() {
            if i == m - 1 {
                coords.push(a);
            }
            coords.push(c64(ci as f64, 0.0));
        }
        if coords.len() < r {
            coords.push(a);
        }
        Ok(Weight { m, n, coords })
    }

    pub fn a(&self) -> C64 {
        self.coords[self.m - 1]
    }

    /// Coordinates away from the odd node, in order.
    pub fn c_part(&self) -> Vec<C64> {
        self.coords.iter().enumerate().filter(|(i, _)| *i != self.m - 1).map(|(_, z)| *z).collect()
    }

    /// Integral c-part, if every coordinate off the odd node is a nonnegative integer.
    pub fn c_nat(&self, tol: f64) -> Option<Vec<i64>> {
        self.c_part()
            .iter()
            .map(|z| {
                let k = z.re.round();
                if (z - c64(k, 0.0)).norm() <= tol && k >= 0.0 {
                    Some(k as i64)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_perturbative(&self, tol: f64) -> bool {
        self.c_part().iter().all(|z| (z - c64(z.re.round(), 0.0)).norm() <= tol)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            m: self.m,
            n: self.n,
            coords: self.coords.iter().zip(&o.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.scale(c64(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Weight {
        Weight { m: self.m, n: self.n, coords: self.coords.iter().map(|x| x * s).collect() }
    }

    pub fn to_json(&self) -> WeightJson {
        WeightJson { c: self.c_part().iter().map(|z| z.re).collect(), a: self.a().into() }
    }

    pub fn from_json(m: usize, n: usize, w: &WeightJson) -> RelResult<Self> {
        let r = m + n - 1;
        if w.c.len() != r - 1 {
            return Err(RelError::BadCoords { expected: r - 1, got: w.c.len() });
        }
        let mut coords: Vec<C64> = w.c.iter().map(|&x| c64(x, 0.0)).collect();
        coords.insert(m - 1, w.a.into());
        Ok(Weight { m, n, coords })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum GradingClass {
    /// Root-lattice coordinates of the weight, reduced mod 1.
    Full(Vec<CJson>),
    /// `a mod Z`, real part in `[0, 1)`.
    Perturbative(CJson),
}

impl GradingClass {
    /// Equality of classes up to `tol`, treating fractional parts as points on a circle.
    pub fn approx_eq(&self, other: &GradingClass, tol: f64) -> bool {
        let near = |x: &CJson, y: &CJson| {
            let d = (x.re - y.re).abs();
            d.min(1.0 - d) <= tol && (x.im - y.im).abs() <= tol
        };
        match (self, other) {
            (GradingClass::Full(a), GradingClass::Full(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| near(x, y)),
            (GradingClass::Perturbative(a), GradingClass::Perturbative(b)) => near(a, b),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypicalityReport {
    pub typical: bool,
    /// Odd roots `eps_i - delta_j` (1-based `(i, j)`) whose factor vanishes.
    pub witness: Vec<(usize, usize)>,
    /// Set when a vanishing factor is nonzero in floating point but below tolerance.
    pub near_wall: bool,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub m: usize,
    pub n: usize,
    pub ell: u32,
    pub r: usize,
    pub ru: RootOfUnity,
    pub tol: Tolerance,
    pub d: Vec<i32>,
    pub cartan: Vec<Vec<i64>>,
    /// Simple roots in eps/delta coordinates (length m + n).
    pub simple: Vec<Vec<f64>>,
    pub pos_even: Vec<Vec<f64>>,
    pub pos_odd: Vec<Vec<f64>>,
    /// Labels `(i, j)` of `pos_odd`, meaning `eps_i - delta_j`.
    pub odd_labels: Vec<(usize, usize)>,
    fund: Vec<Vec<f64>>,
    pub rho0: Weight,
    pub rho1: Weight,
    pub rho: Weight,
    pub pi_wt: Weight,
}

fn eps(m: usize, n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; m + n];
    v[i] = 1.0;
    v
}

fn delta(m: usize, n: usize, j: usize) -> Vec<f64> {
    let mut v = vec![0.0; m + n];
    v[m + j] = 1.0;
    v
}

fn vsub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vscale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

impl RootDatum {
    pub fn new(m: usize, n: usize, ell: u32) -> RelResult<Self> {
        Self::with_tol(m, n, ell, Tolerance::default())
    }

    pub fn with_tol(m: usize, n: usize, ell: u32, tol: Tolerance) -> RelResult<Self> {
        if m == 0 || n == 0 || m == n {
            return Err(RelError::InvalidDatum(format!("need m != n, both positive (m={m}, n={n})")));
        }
        let r = m + n - 1;
        let ru = RootOfUnity::new(ell)?;
        if (ell as usize) < r {
            return Err(RelError::InvalidDatum(format!("ell = {ell} is below the rank {r}")));
        }
        let d: Vec<i32> = (1..=r).map(|i| if i <= m { 1 } else { -1 }).collect();
        let mut simple = Vec::with_capacity(r);
        for i in 0..m - 1 {
            simple.push(vsub(&eps(m, n, i), &eps(m, n, i + 1)));
        }
        simple.push(vsub(&eps(m, n, m - 1), &delta(m, n, 0)));
        for k in 0..n - 1 {
            simple.push(vsub(&delta(m, n, k), &delta(m, n, k + 1)));
        }
        let mut pos_even = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                pos_even.push(vsub(&eps(m, n, i), &eps(m, n, j)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                pos_even.push(vsub(&delta(m, n, i), &delta(m, n, j)));
            }
        }
        let mut pos_odd = Vec::new();
        let mut odd_labels = Vec::new();
        for i in 0..m {
            for j in 0..n {
                pos_odd.push(vsub(&eps(m, n, i), &delta(m, n, j)));
                odd_labels.push((i + 1, j + 1));
            }
        }
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let p = form_real(m, &simple[i], &simple[j]);
                cartan[i][j] = (p * d[i] as f64).round() as i64;
            }
        }

        // supertrace direction and its norm m - n
        let str_v: Vec<f64> = (0..m + n).map(|k| if k < m { 1.0 } else { -1.0 }).collect();
        let str_norm = (m as f64) - (n as f64);
        let project = |v: Vec<f64>| -> Vec<f64> {
            let t = form_real(m, &v, &str_v) / str_norm;
            vsub(&v, &vscale(&str_v, t))
        };
        let rho0_v = {
            let s = pos_even.iter().fold(vec![0.0; m + n], |acc, a| vadd(&acc, a));
            vscale(&s, 0.5)
        };
        let rho1_v = {
            let s = pos_odd.iter().fold(vec![0.0; m + n], |acc, a| vadd(&acc, a));
            vscale(&s, 0.5)
        };
        let mut fund = Vec::with_capacity(r);
        for k in 1..m {
            let v = (0..k).fold(vec![0.0; m + n], |acc, i| vadd(&acc, &eps(m, n, i)));
            fund.push(project(v));
        }
        fund.push(vscale(&rho1_v, -2.0 / ((m as f64) - (n as f64))));
        for k in 1..n {
            let v = (k..n).fold(vec![0.0; m + n], |acc, j| vsub(&acc, &delta(m, n, j)));
            fund.push(project(v));
        }

        let mut rd = RootDatum {
            m,
            n,
            ell,
            r,
            ru,
            tol,
            d,
            cartan,
            simple,
            pos_even,
            pos_odd,
            odd_labels,
            fund,
            rho0: Weight::zero(m, n),
            rho1: Weight::zero(m, n),
            rho: Weight::zero(m, n),
            pi_wt: Weight::zero(m, n),
        };
        let to_w = |rd: &RootDatum, v: &[f64]| rd.from_eps_delta(&v.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
        rd.rho0 = to_w(&rd, &rho0_v);
        rd.rho1 = to_w(&rd, &rho1_v);
        rd.rho = rd.rho0.sub(&rd.rho1);
        // pi = 2 rho - 2 ell rho0
        rd.pi_wt = rd.rho.scale(c64(2.0, 0.0)).sub(&rd.rho0.scale(c64(2.0 * ell as f64, 0.0)));
        Ok(rd)
    }

    pub fn xi(&self) -> C64 {
        self.ru.xi
    }

    /// Fundamental weight representative `w_i` (0-based) in eps/delta coordinates.
    pub fn fundamental(&self, i: usize) -> &[f64] {
        &self.fund[i]
    }

    pub fn check(&self, w: &Weight) -> RelResult<()> {
        if w.m != self.m || w.n != self.n {
            return Err(RelError::MismatchedDatum);
        }
        if w.coords.len() != self.r {
            return Err(RelError::BadCoords { expected: self.r, got: w.coords.len() });
        }
        Ok(())
    }

    pub fn weight(&self, c: &[i64], a: C64) -> RelResult<Weight> {
        Weight::from_ca(self.m, self.n, c, a)
    }

    pub fn eps_delta(&self, w: &Weight) -> Vec<C64> {
        let mut v = vec![c64(0.0, 0.0); self.m + self.n];
        for (i, ci) in w.coords.iter().enumerate() {
            for (k, x) in self.fund[i].iter().enumerate() {
                v[k] += ci * x;
            }
        }
        v
    }

    /// Inverse of [`Self::eps_delta`]: `c_j = d_j <v, alpha_j>`.
    pub fn from_eps_delta(&self, v: &[C64]) -> Weight {
        let coords = (0..self.r)
            .map(|j| {
                let p = self.form_c(v, &self.simple[j].iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
                p * self.d[j] as f64
            })
            .collect();
        Weight { m: self.m, n: self.n, coords }
    }

    fn form_c(&self, a: &[C64], b: &[C64]) -> C64 {
        let mut s = c64(0.0, 0.0);
        for k in 0..self.m + self.n {
            let sign = if k < self.m { 1.0 } else { -1.0 };
            s += a[k] * b[k] * sign;
        }
        s
    }

    pub fn pairing(&self, l: &Weight, mu: &Weight) -> RelResult<C64> {
        self.check(l)?;
        self.check(mu)?;
        Ok(self.form_c(&self.eps_delta(l), &self.eps_delta(mu)))
    }

    /// Pairing of a weight with a root given in eps/delta coordinates.
    pub fn pair_root(&self, l: &Weight, root: &[f64]) -> C64 {
        let rc: Vec<C64> = root.iter().map(|&x| c64(x, 0.0)).collect();
        self.form_c(&self.eps_delta(l), &rc)
    }

    pub fn form_roots(&self, a: &[f64], b: &[f64]) -> f64 {
        form_real(self.m, a, b)
    }

    /// The weight of a root vector (root as a weight).
    pub fn root_weight(&self, root: &[f64]) -> Weight {
        self.from_eps_delta(&root.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn is_typical(&self, l: &Weight) -> TypicalityReport {
        let lr = l.add(&self.rho);
        let mut witness = Vec::new();
        let mut near_wall = false;
        for (alpha, lab) in self.pos_odd.iter().zip(&self.odd_labels) {
            let f = self.ru.qnum(self.pair_root(&lr, alpha));
            if f.norm() <= self.tol.zero_tol {
                witness.push(*lab);
                if f.norm() > 1e-13 {
                    near_wall = true;
                }
            }
        }
        TypicalityReport { typical: witness.is_empty(), witness, near_wall }
    }

    /// `<lambda + rho, eps_i - delta_j>` written out in fundamental coordinates (1-based i, j).
    pub fn odd_shift_arith(&self, l: &Weight, i: usize, j: usize) -> C64 {
        let m = self.m;
        let c = &l.coords;
        let mut s = c64(0.0, 0.0);
        for k in i..m {
            s += c[k - 1];
        }
        s += l.a();
        for k in m + 1..m + j {
            s -= c[k - 1];
        }
        s + c64((m + 1) as f64 - i as f64 - j as f64, 0.0)
    }

    pub fn is_typical_arith(&self, l: &Weight) -> bool {
        let half = self.ell as f64 / 2.0;
        for i in 1..=self.m {
            for j in 1..=self.n {
                let x = self.odd_shift_arith(l, i, j) / half;
                if (x - c64(x.re.round(), 0.0)).norm() <= self.tol.zero_tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn in_alcove(&self, l: &Weight, strict: bool) -> RelResult<bool> {
        self.check(l)?;
        let c = l.c_nat(self.tol.zero_tol).ok_or(RelError::NonIntegralC)?;
        let ell = self.ell as i64;
        let left: i64 = c[..self.m - 1].iter().map(|x| x + 1).sum();
        let right: i64 = c[self.m - 1..].iter().map(|x| x + 1).sum();
        Ok(if strict { left < ell && right < ell } else { left <= ell && right <= ell })
    }

    /// Dimension of the strictly negative Borel part at the root of unity.
    pub fn borel_dim(&self) -> u128 {
        let e = (self.m * self.m + self.n * self.n - self.m - self.n) / 2;
        (self.ell as u128).pow(e as u32) * 2u128.pow((self.m * self.n) as u32)
    }

    pub fn small_d(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        (m - n).abs() / gcd(m, n)
    }

    /// Coordinates of a weight in the basis of simple roots.
    pub fn root_coords(&self, l: &Weight) -> Vec<C64> {
        // solve A^T x = c  where c_i = sum_j x_j a_ij
        let r = self.r;
        let mut a = vec![vec![c64(0.0, 0.0); r + 1]; r];
        for i in 0..r {
            for j in 0..r {
                a[i][j] = c64(self.cartan[i][j] as f64, 0.0);
            }
            a[i][r] = l.coords[i];
        }
        solve_dense(a)
    }

    pub fn grading_full(&self, l: &Weight) -> GradingClass {
        GradingClass::Full(self.root_coords(l).into_iter().map(|z| frac_c(z).into()).collect())
    }

    pub fn grading_pert(&self, l: &Weight) -> GradingClass {
        GradingClass::Perturbative(frac_c(l.a()).into())
    }

    /// Critical perturbative class: `2a` integral.
    pub fn is_critical_pert(&self, a: C64) -> bool {
        let x = a * 2.0;
        (x - c64(x.re.round(), 0.0)).norm() <= self.tol.zero_tol
    }

    /// `2 <lambda, alpha_i> in ell Z` for all simple roots.
    pub fn in_lambda_z(&self, l: &Weight) -> bool {
        (0..self.r).all(|i| {
            let x = self.pair_root(l, &self.simple[i]) * 2.0 / self.ell as f64;
            (x - c64(x.re.round(), 0.0)).norm() <= self.tol.zero_tol
        })
    }

    /// `lambda in ell Lambda_W` and in the root lattice.
    pub fn in_lambda_z0(&self, l: &Weight) -> bool {
        let int = |z: C64| (z - c64(z.re.round(), 0.0)).norm() <= self.tol.zero_tol;
        let ell = self.ell as f64;
        (0..self.r).all(|i| int(self.pair_root(l, &self.simple[i]) / ell)) && self.root_coords(l).into_iter().all(int)
    }
}

fn form_real(m: usize, a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).enumerate().map(|(k, (x, y))| if k < m { x * y } else { -x * y }).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn frac_c(z: C64) -> C64 {
    let mut f = z.re - z.re.floor();
    if f > 1.0 - 1e-12 {
        f = 0.0;
    }
    c64(f, z.im)
}

/// Gaussian elimination on an augmented `r x (r+1)` system.
fn solve_dense(mut a: Vec<Vec<C64>>) -> Vec<C64> {
    let r = a.len();
    for col in 0..r {
        let piv = (col..r).max_by(|&x, &y| a[x][col].norm().partial_cmp(&a[y][col].norm()).unwrap()).unwrap();
        a.swap(col, piv);
        let p = a[col][col];
        for k in col..=r {
            a[col][k] /= p;
        }
        for row in 0..r {
            if row != col {
                let f = a[row][col];
                if f.norm() > 0.0 {
                    for k in col..=r {
                        let v = a[col][k];
                        a[row][k] -= f * v;
                    }
                }
            }
        }
    }
    a.into_iter().map(|row| row[r]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: C64, b: C64, t: f64) -> bool {
        (a - b).norm() <= t
    }

    #[test]
    fn fundamental_weights_dual_to_simple_roots() {
        for (m, n, ell) in [(2, 1, 5), (3, 1, 7), (1, 2, 5), (2, 3, 7), (3, 2, 5)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            for i in 0..rd.r {
                for j in 0..rd.r {
                    let p = rd.form_roots(rd.fundamental(i), &rd.simple[j]);
                    let want = if i == j { rd.d[i] as f64 } else { 0.0 };
                    assert!((p - want).abs() < 1e-12, "({m},{n}) w{i} a{j}");
                }
            }
        }
    }

    #[test]
    fn wm_norm() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let w = rd.weight(&[0], c64(1.0, 0.0)).unwrap();
        assert!(close(rd.pairing(&w, &w).unwrap(), c64(-2.0, 0.0), 1e-12));
        let rd = RootDatum::new(3, 1, 7).unwrap();
        let w = rd.weight(&[0, 0], c64(1.0, 0.0)).unwrap();
        // mn/(n-m)
        assert!(close(rd.pairing(&w, &w).unwrap(), c64(-1.5, 0.0), 1e-12));
        let z = Weight::zero(3, 1);
        assert!(close(rd.pairing(&z, &w).unwrap(), c64(0.0, 0.0), 1e-15));
    }

    #[test]
    fn cartan_sl21() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        assert_eq!(rd.cartan, vec![vec![2, -1], vec![-1, 0]]);
        assert_eq!(rd.d, vec![1, 1]);
        let rd = RootDatum::new(1, 2, 5).unwrap();
        assert_eq!(rd.d, vec![1, -1]);
    }

    #[test]
    fn symmetrized_cartan_is_form() {
        for (m, n) in [(2, 1), (3, 1), (2, 3), (1, 3)] {
            let rd = RootDatum::new(m, n, 7).unwrap();
            for i in 0..rd.r {
                for j in 0..rd.r {
                    let p = rd.form_roots(&rd.simple[i], &rd.simple[j]);
                    assert_eq!(p.round() as i64, rd.d[i] as i64 * rd.cartan[i][j]);
                }
            }
        }
    }

    #[test]
    fn counts_and_rho_identities() {
        for (m, n, ell) in [(2, 1, 5), (3, 1, 7), (2, 3, 5), (1, 2, 3)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            assert_eq!(rd.pos_even.len(), (m * m + n * n - m - n) / 2);
            assert_eq!(rd.pos_odd.len(), m * n);
            let two_rho = rd.rho.scale(c64(2.0, 0.0));
            for a in &rd.simple {
                let lhs = rd.pair_root(&two_rho, a);
                assert!(close(lhs, c64(rd.form_roots(a, a), 0.0), 1e-12));
            }
            let pi2 = two_rho.sub(&rd.rho0.scale(c64(2.0 * ell as f64, 0.0)));
            for (x, y) in pi2.coords.iter().zip(&rd.pi_wt.coords) {
                assert!(close(*x, *y, 1e-12));
            }
        }
    }

    #[test]
    fn form_matches_inverse_symmetrized_cartan() {
        // <lambda, mu> = c^T B^{-1} c' with B_ij = a_ij / d_j
        let rd = RootDatum::new(3, 1, 7).unwrap();
        let l = rd.weight(&[1, 2], c64(0.3, 0.1)).unwrap();
        let mu = rd.weight(&[0, 3], c64(-1.2, 0.4)).unwrap();
        let r = rd.r;
        let mut b = nalgebra::DMatrix::<f64>::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                b[(i, j)] = rd.cartan[i][j] as f64 / rd.d[j] as f64;
            }
        }
        let binv = b.try_inverse().unwrap();
        let mut s = c64(0.0, 0.0);
        for i in 0..r {
            for j in 0..r {
                s += l.coords[i] * mu.coords[j] * binv[(i, j)];
            }
        }
        assert!(close(s, rd.pairing(&l, &mu).unwrap(), 1e-12));
    }

    #[test]
    fn typicality_examples() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let w = rd.weight(&[1], c64(0.3, 0.0)).unwrap();
        assert!(rd.is_typical(&w).typical);
        let w = rd.weight(&[0], c64(0.0, 0.0)).unwrap();
        let rep = rd.is_typical(&w);
        assert!(!rep.typical);
        assert_eq!(rep.witness, vec![(2, 1)]);
        let w = rd.weight(&[0], c64(2.5, 0.0)).unwrap();
        assert!(!rd.is_typical(&w).typical);
        assert!(!rd.is_typical_arith(&w));
        let w = rd.weight(&[0], c64(1.0, 0.0)).unwrap();
        assert!(rd.is_typical_arith(&w) && rd.is_typical(&w).typical);
        let rd = RootDatum::new(3, 1, 7).unwrap();
        let w = rd.weight(&[1, 0], c64(0.4, 0.0)).unwrap();
        assert_eq!(rd.is_typical_arith(&w), rd.is_typical(&w).typical);
    }

    #[test]
    fn odd_shift_matches_pairing() {
        for (m, n) in [(2, 1), (3, 1), (2, 3), (3, 2)] {
            let rd = RootDatum::new(m, n, 7).unwrap();
            let c: Vec<i64> = (0..rd.r - 1).map(|k| (k as i64 * 2 + 1) % 4).collect();
            let l = rd.weight(&c, c64(0.37, 0.2)).unwrap();
            let lr = l.add(&rd.rho);
            for (alpha, &(i, j)) in rd.pos_odd.iter().zip(&rd.odd_labels) {
                assert!(close(rd.pair_root(&lr, alpha), rd.odd_shift_arith(&l, i, j), 1e-12));
            }
        }
    }

    #[test]
    fn alcove_examples() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let w = |c| rd.weight(&[c], c64(0.3, 0.0)).unwrap();
        assert!(rd.in_alcove(&w(3), true).unwrap());
        assert!(!rd.in_alcove(&w(4), true).unwrap());
        assert!(rd.in_alcove(&w(4), false).unwrap());
        assert!(rd.in_alcove(&w(0), true).unwrap());
        let bad = Weight { m: 2, n: 1, coords: vec![c64(0.5, 0.0), c64(0.3, 0.0)] };
        assert_eq!(rd.in_alcove(&bad, true), Err(RelError::NonIntegralC));
    }

    #[test]
    fn borel_dims() {
        assert_eq!(RootDatum::new(2, 1, 5).unwrap().borel_dim(), 20);
        assert_eq!(RootDatum::new(3, 1, 7).unwrap().borel_dim(), 2744);
        assert_eq!(RootDatum::new(1, 2, 5).unwrap().borel_dim(), 20);
    }

    #[test]
    fn gradings() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        assert_eq!(rd.small_d(), 1);
        let a = rd.weight(&[2], c64(0.3, 0.1)).unwrap();
        let b = rd.weight(&[2], c64(1.3, 0.1)).unwrap();
        assert!(rd.grading_pert(&a).approx_eq(&rd.grading_pert(&b), 1e-12));
        assert!(rd.is_critical_pert(c64(0.5, 0.0)));
        assert!(!rd.is_critical_pert(c64(0.3, 0.0)));
        // shifting by a root keeps the full class
        let alpha = rd.root_weight(&rd.simple[0].clone());
        assert!(rd.grading_full(&a).approx_eq(&rd.grading_full(&a.add(&alpha)), 1e-12));
        assert!(!rd.grading_full(&a).approx_eq(&rd.grading_full(&a.add(&rd.weight(&[0], c64(0.5, 0.0)).unwrap())), 1e-12));
    }

    #[test]
    fn rejects_bad_data() {
        assert!(RootDatum::new(2, 2, 5).is_err());
        assert!(RootDatum::new(2, 1, 4).is_err());
        assert!(RootDatum::new(4, 3, 5).is_err());
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let other = Weight::zero(3, 1);
        assert_eq!(rd.pairing(&other, &other), Err(RelError::MismatchedDatum));
    }

    proptest! {
        #[test]
        fn eps_delta_round_trip(c1 in 0i64..5, c2 in 0i64..5, ar in -3.0f64..3.0, ai in -1.0f64..1.0) {
            let rd = RootDatum::new(3, 1, 7).unwrap();
            let w = rd.weight(&[c1, c2], c64(ar, ai)).unwrap();
            let back = rd.from_eps_delta(&rd.eps_delta(&w));
            for (x, y) in w.coords.iter().zip(&back.coords) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }

        #[test]
        fn pairing_bilinear_symmetric(c1 in 0i64..5, ar in -3.0f64..3.0, c2 in 0i64..5, br in -3.0f64..3.0, s in -2.0f64..2.0) {
            let rd = RootDatum::new(2, 1, 5).unwrap();
            let l = rd.weight(&[c1], c64(ar, 0.1)).unwrap();
            let mu = rd.weight(&[c2], c64(br, -0.2)).unwrap();
            let p = rd.pairing(&l, &mu).unwrap();
            prop_assert!((p - rd.pairing(&mu, &l).unwrap()).norm() < 1e-12);
            let ls = l.scale(c64(s, 0.0)).add(&mu);
            let lhs = rd.pairing(&ls, &mu).unwrap();
            let rhs = p * s + rd.pairing(&mu, &mu).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }

        #[test]
        fn perturbative_iff_integral(c1 in 0i64..5, frac in 0.05f64..0.95) {
            let rd = RootDatum::new(2, 1, 5).unwrap();
            let w = rd.weight(&[c1], c64(0.2, 0.0)).unwrap();
            prop_assert!(w.is_perturbative(1e-12));
            let mut v = w.clone();
            v.coords[0] += c64(frac, 0.0);
            prop_assert!(!v.is_perturbative(1e-12));
            let _ = rd;
        }

        #[test]
        fn remark_alcove_even_pairings(c1 in 0i64..6, c2 in 0i64..6) {
            let rd = RootDatum::new(3, 1, 7).unwrap();
            let w = rd.weight(&[c1, c2], c64(0.3, 0.0)).unwrap();
            if rd.in_alcove(&w, true).unwrap() {
                let lr = w.add(&rd.rho);
                for a in &rd.pos_even {
                    let p = rd.pair_root(&lr, a);
                    prop_assert!(p.im.abs() < 1e-12);
                    let k = p.re.round();
                    prop_assert!((p.re - k).abs() < 1e-12 && (1.0..=6.0).contains(&k));
                }
            }
        }
    }
}
