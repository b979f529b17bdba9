//! Matrix representations of the unrolled quantum group of sl(2|1).

use crate::error::{RelError, RelResult};
use crate::rootdata::{CJson, RootDatum, Weight};
use crate::scalars::{c64, max_abs, CMat};
use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Serialize;

pub type CVec = DVector<C64>;

/// Exponent `k` in `F12 = F1 F2 - xi^k F2 F1`.
pub const F12_XI_POWER: i64 = -1;
/// Exponent `k` in `E12 = E1 E2 - xi^k E2 E1`.
pub const E12_XI_POWER: i64 = -1;

#[derive(Debug, Clone)]
pub struct WeightModule {
    pub weights: Vec<Weight>,
    pub parity: Vec<bool>,
    pub e: Vec<CMat>,
    pub f: Vec<CMat>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub max_residual: f64,
    pub worst: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleJson {
    pub label: String,
    pub dim: usize,
    pub weights: Vec<Vec<CJson>>,
    pub parities: Vec<u8>,
    pub e: Vec<Vec<Vec<CJson>>>,
    pub f: Vec<Vec<Vec<CJson>>>,
}

fn require_sl21(rd: &RootDatum) -> RelResult<()> {
    if rd.m != 2 || rd.n != 1 {
        return Err(RelError::Unsupported("module construction is implemented for sl(2|1) only".into()));
    }
    Ok(())
}

fn mat_json(m: &CMat) -> Vec<Vec<CJson>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect()).collect()
}

fn diag_from(v: Vec<C64>) -> CMat {
    CMat::from_diagonal(&CVec::from_vec(v))
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Whether generator `i` is odd.
    pub fn odd(rd: &RootDatum, i: usize) -> bool {
        i == rd.m - 1
    }

    pub fn h(&self, i: usize) -> CMat {
        diag_from(self.weights.iter().map(|w| w.coords[i]).collect())
    }

    pub fn k(&self, rd: &RootDatum, i: usize, power: i32) -> CMat {
        let d = rd.d[i] as f64 * power as f64;
        diag_from(self.weights.iter().map(|w| rd.ru.xi_pow(w.coords[i] * d)).collect())
    }

    /// `(-1)^{parity}` as a diagonal operator.
    pub fn parity_op(&self) -> CMat {
        diag_from(self.parity.iter().map(|&p| c64(if p { -1.0 } else { 1.0 }, 0.0)).collect())
    }

    /// Pivot `K_pi^power`, acting on a weight `nu` vector by `xi^{power <pi, nu>}`.
    pub fn k_pi(&self, rd: &RootDatum, power: i32) -> CMat {
        diag_from(
            self.weights
                .iter()
                .map(|w| rd.ru.xi_pow(rd.pairing(&rd.pi_wt, w).unwrap() * power as f64))
                .collect(),
        )
    }

    /// Cartan-Weyl root vectors `(E_alpha, F_alpha)` for `alpha_1, alpha_1 + alpha_2, alpha_2`.
    pub fn root_vectors(&self, rd: &RootDatum) -> Vec<(CMat, CMat)> {
        self.root_vectors_with(rd, E12_XI_POWER, F12_XI_POWER)
    }

    pub fn root_vectors_with(&self, rd: &RootDatum, e_pow: i64, f_pow: i64) -> Vec<(CMat, CMat)> {
        let ru = &rd.ru;
        let e12 = &self.e[0] * &self.e[1] - &self.e[1] * &self.e[0] * ru.xi_powi(e_pow);
        let f12 = &self.f[0] * &self.f[1] - &self.f[1] * &self.f[0] * ru.xi_powi(f_pow);
        vec![(self.e[0].clone(), self.f[0].clone()), (e12, f12), (self.e[1].clone(), self.f[1].clone())]
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            label: self.label.clone(),
            dim: self.dim(),
            weights: self.weights.iter().map(|w| w.coords.iter().map(|&z| z.into()).collect()).collect(),
            parities: self.parity.iter().map(|&p| p as u8).collect(),
            e: self.e.iter().map(mat_json).collect(),
            f: self.f.iter().map(mat_json).collect(),
        }
    }

    fn one_dim(rd: &RootDatum, w: Weight, odd: bool, label: String) -> WeightModule {
        let z = CMat::zeros(1, 1);
        WeightModule { weights: vec![w], parity: vec![odd], e: vec![z.clone(); rd.r], f: vec![z; rd.r], label }
    }
}

/// Letters of an F-word: 0 for `F_1`, 1 for `F_2`.
type Word = Vec<usize>;

fn pbw_index(c: usize, e2: usize, e12: usize, k: usize) -> usize {
    (e2 * 2 + e12) * (c + 1) + k
}

/// `F2^{e2} F12^{e12} F1^k` expanded into F-words with coefficients.
fn pbw_words(rd: &RootDatum, e2: usize, e12: usize, k: usize) -> Vec<(Word, C64)> {
    let u = rd.ru.xi_powi(F12_XI_POWER);
    let mut heads: Vec<(Word, C64)> = vec![(vec![1; e2], c64(1.0, 0.0))];
    if e12 == 1 {
        heads = heads
            .into_iter()
            .flat_map(|(w, z)| {
                let mut a = w.clone();
                a.extend([0, 1]);
                let mut b = w;
                b.extend([1, 0]);
                [(a, z), (b, -z * u)]
            })
            .collect();
    }
    for (w, _) in heads.iter_mut() {
        w.extend(std::iter::repeat_n(0, k));
    }
    heads
}

/// Typical envelope `V(lambda_a^c)` of sl(2|1), built on the PBW basis
/// `F2^{e2} F12^{e12} F1^k v+`.
pub fn make_typical(rd: &RootDatum, a: C64, c: usize) -> RelResult<WeightModule> {
    require_sl21(rd)?;
    let hw = rd.weight(&[c as i64], a)?;
    if !rd.is_typical(&hw).typical {
        return Err(RelError::NotTypical);
    }
    if c + 2 > rd.ell as usize {
        return Err(RelError::NotInAlcove);
    }
    let dim = 4 * (c + 1);
    let u = rd.ru.xi_powi(F12_XI_POWER);
    let shift = |i: usize, j: usize| -> f64 { -(rd.cartan[i][j] as f64) };
    let mut weights = vec![hw.clone(); dim];
    let mut parity = vec![false; dim];
    for e2 in 0..2 {
        for e12 in 0..2 {
            for k in 0..=c {
                let idx = pbw_index(c, e2, e12, k);
                let mut w = hw.clone();
                for i in 0..2 {
                    w.coords[i] += shift(i, 1) * (e2 + e12) as f64 + shift(i, 0) * (e12 + k) as f64;
                }
                weights[idx] = w;
                parity[idx] = (e2 + e12) % 2 == 1;
            }
        }
    }
    let mut f1 = CMat::zeros(dim, dim);
    let mut f2 = CMat::zeros(dim, dim);
    for e2 in 0..2 {
        for e12 in 0..2 {
            for k in 0..=c {
                let src = pbw_index(c, e2, e12, k);
                let up = |i: &mut CMat, e2: usize, e12: usize, k: usize, z: C64| {
                    if k <= c {
                        i[(pbw_index(c, e2, e12, k), src)] += z;
                    }
                };
                match (e2, e12) {
                    (0, 0) => up(&mut f1, 0, 0, k + 1, c64(1.0, 0.0)),
                    (0, 1) => up(&mut f1, 0, 1, k + 1, u.inv()),
                    (1, 0) => {
                        up(&mut f1, 0, 1, k, c64(1.0, 0.0));
                        up(&mut f1, 1, 0, k + 1, u);
                    }
                    _ => up(&mut f1, 1, 1, k + 1, c64(1.0, 0.0)),
                }
                if e2 == 0 {
                    f2[(pbw_index(c, 1, e12, k), src)] += c64(1.0, 0.0);
                }
            }
        }
    }
    let fm = [f1, f2];
    let eval = |word: &[usize]| -> CVec {
        let mut v = CVec::zeros(dim);
        v[0] = c64(1.0, 0.0);
        for &l in word.iter().rev() {
            v = &fm[l] * v;
        }
        v
    };
    let mut es = vec![CMat::zeros(dim, dim), CMat::zeros(dim, dim)];
    for e2 in 0..2 {
        for e12 in 0..2 {
            for k in 0..=c {
                let src = pbw_index(c, e2, e12, k);
                for (word, coef) in pbw_words(rd, e2, e12, k) {
                    for i in 0..2 {
                        let odd_i = i == 1;
                        for p in 0..word.len() {
                            if word[p] != i {
                                continue;
                            }
                            let odd_before = word[..p].iter().filter(|&&l| l == 1).count();
                            let sign = if odd_i && odd_before % 2 == 1 { -1.0 } else { 1.0 };
                            let mut mu = hw.coords[i];
                            for &l in &word[p + 1..] {
                                mu += shift(i, l);
                            }
                            let di = rd.d[i] as f64;
                            let sc = rd.ru.qnum(mu * di) / rd.ru.qnumr(di);
                            let mut rest = word.clone();
                            rest.remove(p);
                            let v = eval(&rest) * (coef * sc * sign);
                            let mut col = es[i].column_mut(src);
                            col += v;
                        }
                    }
                }
            }
        }
    }
    let [f1, f2] = fm;
    Ok(WeightModule { weights, parity, e: es, f: vec![f1, f2], label: format!("typical(a={a}, c={c})") })
}

/// Standard 3-dimensional module with parities (even, even, odd).
pub fn make_standard(rd: &RootDatum) -> RelResult<WeightModule> {
    require_sl21(rd)?;
    let mut e1 = CMat::zeros(3, 3);
    let mut e2 = CMat::zeros(3, 3);
    e1[(0, 1)] = c64(1.0, 0.0);
    e2[(1, 2)] = c64(1.0, 0.0);
    let f1 = e1.transpose();
    let f2 = e2.transpose();
    let h = [[1.0, -1.0, 0.0], [0.0, 1.0, 1.0]];
    let weights = (0..3).map(|k| Weight { m: 2, n: 1, coords: vec![c64(h[0][k], 0.0), c64(h[1][k], 0.0)] }).collect();
    Ok(WeightModule { weights, parity: vec![false, false, true], e: vec![e1, e2], f: vec![f1, f2], label: "standard".into() })
}

pub fn make_sigma(rd: &RootDatum, odd: bool, l: &Weight) -> RelResult<WeightModule> {
    rd.check(l)?;
    if !rd.in_lambda_z(l) {
        return Err(RelError::NotInLambdaZ);
    }
    Ok(WeightModule::one_dim(rd, l.clone(), odd, format!("sigma(odd={odd})")))
}

pub fn make_trivial(rd: &RootDatum) -> WeightModule {
    WeightModule::one_dim(rd, Weight::zero(rd.m, rd.n), false, "trivial".into())
}

pub fn make_odd_trivial(rd: &RootDatum) -> WeightModule {
    WeightModule::one_dim(rd, Weight::zero(rd.m, rd.n), true, "odd trivial".into())
}

/// One-dimensional even module with `H_m` acting by `ell`.
pub fn make_epsilon(rd: &RootDatum) -> WeightModule {
    let mut w = Weight::zero(rd.m, rd.n);
    w.coords[rd.m - 1] = c64(rd.ell as f64, 0.0);
    WeightModule::one_dim(rd, w, false, "epsilon".into())
}

/// Dual module with action `(u phi) = (-1)^{|u||phi|} phi(S(u) .)`.
pub fn dual(rd: &RootDatum, v: &WeightModule) -> WeightModule {
    let n = v.dim();
    let act = |s_u: &CMat, odd: bool| -> CMat {
        let mut out = s_u.transpose();
        if odd {
            for j in 0..n {
                if v.parity[j] {
                    let mut col = out.column_mut(j);
                    col *= c64(-1.0, 0.0);
                }
            }
        }
        out
    };
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..rd.r {
        let odd = WeightModule::odd(rd, i);
        let se = -(v.k(rd, i, 1) * &v.e[i]);
        let sf = -(&v.f[i] * v.k(rd, i, -1));
        e.push(act(&se, odd));
        f.push(act(&sf, odd));
    }
    WeightModule {
        weights: v.weights.iter().map(|w| w.scale(c64(-1.0, 0.0))).collect(),
        parity: v.parity.clone(),
        e,
        f,
        label: format!("dual({})", v.label),
    }
}

/// Super tensor product via the coproduct; basis `v_i (x) w_j` at index `i * dim(W) + j`.
pub fn tensor(rd: &RootDatum, v: &WeightModule, w: &WeightModule) -> WeightModule {
    let iw = CMat::identity(w.dim(), w.dim());
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..rd.r {
        let odd = WeightModule::odd(rd, i);
        let mut left_e = v.k(rd, i, -1);
        let mut left_f = CMat::identity(v.dim(), v.dim());
        if odd {
            left_e *= v.parity_op();
            left_f = v.parity_op();
        }
        e.push(v.e[i].kronecker(&iw) + left_e.kronecker(&w.e[i]));
        f.push(v.f[i].kronecker(&w.k(rd, i, 1)) + left_f.kronecker(&w.f[i]));
    }
    let mut weights = Vec::new();
    let mut parity = Vec::new();
    for (a, pa) in v.weights.iter().zip(&v.parity) {
        for (b, pb) in w.weights.iter().zip(&w.parity) {
            weights.push(a.add(b));
            parity.push(pa ^ pb);
        }
    }
    WeightModule { weights, parity, e, f, label: format!("({}) x ({})", v.label, w.label) }
}

fn supercomm(a: &CMat, b: &CMat, both_odd: bool) -> CMat {
    if both_odd {
        a * b + b * a
    } else {
        a * b - b * a
    }
}

/// Residuals of the defining relations of the unrolled quantum group.
pub fn check_relations(rd: &RootDatum, v: &WeightModule) -> RelationReport {
    let mut worst = (0.0f64, String::from("none"));
    let mut note = |r: f64, name: String| {
        if r > worst.0 || worst.1 == "none" && r >= worst.0 {
            worst = (r, name);
        }
    };
    let n = v.dim();
    let xi = rd.xi();
    for i in 0..rd.r {
        let h = v.h(i);
        for j in 0..rd.r {
            let a = c64(rd.cartan[i][j] as f64, 0.0);
            note(max_abs(&(&h * &v.e[j] - &v.e[j] * &h - &v.e[j] * a)), format!("[H{},E{}]", i + 1, j + 1));
            note(max_abs(&(&h * &v.f[j] - &v.f[j] * &h + &v.f[j] * a)), format!("[H{},F{}]", i + 1, j + 1));
            let k = v.k(rd, i, 1);
            let kinv = v.k(rd, i, -1);
            let q = rd.ru.xi_powr((rd.d[i] as i64 * rd.cartan[i][j]) as f64);
            note(max_abs(&(&k * &v.e[j] * &kinv - &v.e[j] * q)), format!("K{} E{} K^-1", i + 1, j + 1));
            note(max_abs(&(&k * &v.f[j] * &kinv - &v.f[j] / q)), format!("K{} F{} K^-1", i + 1, j + 1));
            let both_odd = WeightModule::odd(rd, i) && WeightModule::odd(rd, j);
            let lhs = supercomm(&v.e[i], &v.f[j], both_odd);
            let rhs = if i == j {
                let di = rd.d[i] as f64;
                (&k - &kinv) / (rd.ru.xi_powr(di) - rd.ru.xi_powr(-di))
            } else {
                CMat::zeros(n, n)
            };
            note(max_abs(&(lhs - rhs)), format!("[E{},F{}]", i + 1, j + 1));
        }
        let odd = WeightModule::odd(rd, i);
        for (g, name) in [(&v.e[i], "E"), (&v.f[i], "F")] {
            if odd {
                note(max_abs(&(g * g)), format!("{name}{}^2", i + 1));
            } else {
                note(max_abs(&g.pow(rd.ell)), format!("{name}{}^ell", i + 1));
            }
            let mut bad = 0.0f64;
            for r in 0..n {
                for c in 0..n {
                    if (v.parity[r] ^ v.parity[c]) != odd {
                        bad = bad.max(g[(r, c)].norm());
                    }
                }
            }
            note(bad, format!("{name}{} parity", i + 1));
        }
    }
    let s = xi + xi.inv();
    for (g, name) in [(&v.e, "E"), (&v.f, "F")] {
        let (a, b) = (&g[0], &g[1]);
        let serre = a * a * b - a * b * a * s + b * a * a;
        note(max_abs(&serre), format!("{name} Serre"));
    }
    let tol = rd.tol.eq_tol;
    RelationReport { max_residual: worst.0, worst: worst.1, pass: worst.0 <= tol }
}

/// Orthonormal basis (as columns) of the kernel of `a`.
pub fn null_space(a: &CMat, tol: f64) -> CMat {
    let (r, c) = a.shape();
    let mut sq = CMat::zeros(r.max(c), c);
    sq.view_mut((0, 0), (r, c)).copy_from(a);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let scale = svd.singular_values.iter().cloned().fold(1.0, f64::max);
    let cols: Vec<CVec> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol * scale)
        .map(|(k, _)| vt.row(k).adjoint())
        .collect();
    if cols.is_empty() {
        CMat::zeros(c, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Dimension of the smallest subspace containing `start` and closed under all generators.
pub fn closure_dim(v: &WeightModule, start: &CVec, tol: f64) -> usize {
    let gens: Vec<&CMat> = v.e.iter().chain(v.f.iter()).collect();
    let mut basis: Vec<CVec> = Vec::new();
    let mut queue = vec![start.clone()];
    while let Some(mut x) = queue.pop() {
        for b in &basis {
            let p = b.dotc(&x);
            x -= b * p;
        }
        let nrm = x.norm();
        if nrm <= tol {
            continue;
        }
        x /= c64(nrm, 0.0);
        for g in &gens {
            queue.push(*g * &x);
        }
        basis.push(x);
        if basis.len() == v.dim() {
            break;
        }
    }
    basis.len()
}

/// Weight vectors killed by every `E_i`, computed weight space by weight space.
pub fn highest_weight_vectors(v: &WeightModule, tol: f64) -> Vec<(Weight, bool, CVec)> {
    let mut groups: Vec<(Weight, Vec<usize>)> = Vec::new();
    for (idx, w) in v.weights.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| g.coords.iter().zip(&w.coords).all(|(a, b)| (a - b).norm() < 1e-9)) {
            Some((_, ids)) => ids.push(idx),
            None => groups.push((w.clone(), vec![idx])),
        }
    }
    let n = v.dim();
    let mut out = Vec::new();
    for (w, ids) in groups {
        let mut stacked = CMat::zeros(n * v.e.len(), ids.len());
        for (gi, g) in v.e.iter().enumerate() {
            for (cj, &id) in ids.iter().enumerate() {
                for r in 0..n {
                    stacked[(gi * n + r, cj)] = g[(r, id)];
                }
            }
        }
        let ker = null_space(&stacked, tol);
        for k in 0..ker.ncols() {
            let mut vec = CVec::zeros(n);
            for (cj, &id) in ids.iter().enumerate() {
                vec[id] = ker[(cj, k)];
            }
            out.push((w.clone(), v.parity[ids[0]], vec));
        }
    }
    out
}

/// Simple iff there is a single highest weight line and it generates the module.
pub fn is_simple(v: &WeightModule, tol: f64) -> bool {
    let hws = highest_weight_vectors(v, tol);
    hws.len() == 1 && closure_dim(v, &hws[0].2, tol) == v.dim()
}
