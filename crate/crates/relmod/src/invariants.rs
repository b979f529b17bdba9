//! Closed-form invariant data: modified dimensions for both ideals, twists,
//! open Hopf link values, the compatibility map, Kirby colors and Delta.

use crate::error::{RelError, RelResult};
use crate::fusion;
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::c64;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ideal {
    Projective,
    Perturbative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct InvariantContext {
    pub datum: RootDatum,
    pub ideal: Ideal,
}

#[derive(Debug, Clone)]
pub struct ColorSum {
    pub terms: Vec<(Weight, C64)>,
}

fn one() -> C64 {
    c64(1.0, 0.0)
}

impl InvariantContext {
    pub fn new(datum: RootDatum, ideal: Ideal) -> Self {
        InvariantContext { datum, ideal }
    }

    pub fn mdim(&self, l: &Weight) -> RelResult<C64> {
        match self.ideal {
            Ideal::Projective => mdim_proj(&self.datum, l),
            Ideal::Perturbative => mdim_pert(&self.datum, l),
        }
    }

    /// Open Hopf link with closed component `circle` around the strand `strand`.
    pub fn s_prime(&self, circle: &Weight, strand: &Weight) -> RelResult<C64> {
        match self.ideal {
            Ideal::Projective => s_prime(&self.datum, circle, strand),
            Ideal::Perturbative => s_prime_pert(&self.datum, circle, strand),
        }
    }
}

/// `theta = xi^{<lambda + pi, lambda>}`.
pub fn twist_scalar(rd: &RootDatum, l: &Weight) -> RelResult<C64> {
    let p = rd.pairing(&l.add(&rd.pi_wt), l)?;
    Ok(rd.ru.xi_pow(p))
}

/// `lambda* = -pi - lambda`, the highest weight of the dual of the projective module.
pub fn dual_weight_proj(rd: &RootDatum, l: &Weight) -> Weight {
    rd.pi_wt.add(l).scale(c64(-1.0, 0.0))
}

fn too_small(rd: &RootDatum, z: C64) -> bool {
    z.norm() <= rd.tol.zero_tol
}

/// Open Hopf link for the dimension-D modules: sums over the weights of the
/// closed component `circle`, evaluated on the strand weight `strand`.
pub fn s_prime(rd: &RootDatum, circle: &Weight, strand: &Weight) -> RelResult<C64> {
    rd.check(circle)?;
    rd.check(strand)?;
    let x = strand.scale(c64(2.0, 0.0)).add(&rd.pi_wt);
    let ell = rd.ell as f64;
    let mut v = rd.ru.xi_pow(rd.pairing(&x, circle)?);
    for a in &rd.pos_even {
        let t = rd.pair_root(&x, a);
        let den = one() - rd.ru.xi_pow(-t);
        if too_small(rd, den) {
            return Err(RelError::DegenerateWeight("even-root denominator of S' vanishes".into()));
        }
        v *= (one() - rd.ru.xi_pow(-t * ell)) / den;
    }
    for a in &rd.pos_odd {
        let t = rd.pair_root(&x, a);
        v *= one() - rd.ru.xi_pow(-t);
    }
    Ok(v)
}

/// Open Hopf link for typical envelopes: the even factors are replaced by the
/// classical character of the even part of the closed component.
pub fn s_prime_pert(rd: &RootDatum, circle: &Weight, strand: &Weight) -> RelResult<C64> {
    rd.check(circle)?;
    rd.check(strand)?;
    let c = circle.c_nat(rd.tol.zero_tol).ok_or(RelError::NonIntegralC)?;
    let x = strand.scale(c64(2.0, 0.0)).add(&rd.pi_wt);
    let mut v = rd.ru.xi_pow(rd.pairing(&x, circle)?);
    let mut ch = c64(0.0, 0.0);
    for (shift, mult) in fusion::g0_weight_drops(rd.m, rd.n, &c) {
        // shift is in eps/delta coordinates, below the highest weight
        let t = rd.pair_root(&x, &shift);
        ch += rd.ru.xi_pow(-t) * mult as f64;
    }
    v *= ch;
    for a in &rd.pos_odd {
        let t = rd.pair_root(&x, a);
        v *= one() - rd.ru.xi_pow(-t);
    }
    Ok(v)
}

/// Modified dimension on the projective ideal.
pub fn mdim_proj(rd: &RootDatum, l: &Weight) -> RelResult<C64> {
    rd.check(l)?;
    let y = l.add(&rd.pi_wt.scale(c64(0.5, 0.0)));
    let ell = rd.ell as f64;
    let mut num = one();
    let mut den = one();
    for a in &rd.pos_even {
        let t = rd.pair_root(&y, a);
        num *= rd.ru.qnum(t);
        den *= rd.ru.qnum(t * ell);
    }
    for a in &rd.pos_odd {
        den *= rd.ru.qnum(rd.pair_root(&y, a));
    }
    if too_small(rd, den) {
        return Err(RelError::DegenerateWeight("modified dimension denominator vanishes".into()));
    }
    Ok(num / den)
}

/// Modified dimension on the perturbative ideal; exactly zero on the alcove boundary.
pub fn mdim_pert(rd: &RootDatum, l: &Weight) -> RelResult<C64> {
    rd.check(l)?;
    if !rd.is_typical(l).typical {
        return Err(RelError::NotTypical);
    }
    if !rd.in_alcove(l, false)? {
        return Err(RelError::NotInAlcove);
    }
    let lr = l.add(&rd.rho);
    let mut v = one();
    for a in &rd.pos_even {
        let t = rd.pair_root(&lr, a);
        let k = t.re.round() as i64;
        if k % rd.ell as i64 == 0 {
            return Ok(c64(0.0, 0.0));
        }
        v *= rd.ru.qnumr(k as f64) / rd.ru.qnum(rd.pair_root(&rd.rho, a));
    }
    for a in &rd.pos_odd {
        v /= rd.ru.qnum(rd.pair_root(&lr, a));
    }
    Ok(v)
}

fn sl21_weight(rd: &RootDatum, alpha: C64, c: i64) -> RelResult<Weight> {
    if rd.m != 2 || rd.n != 1 {
        return Err(RelError::Unsupported("sl(2|1) only".into()));
    }
    rd.weight(&[c], alpha)
}

/// Hopf link value for sl(2|1) typical colors `(alpha, c)` and `(alpha', c')`.
pub fn hopf_value_sl21(rd: &RootDatum, alpha: C64, c: i64, alpha2: C64, c2: i64) -> RelResult<C64> {
    for (a, cc) in [(alpha, c), (alpha2, c2)] {
        if !rd.is_typical(&sl21_weight(rd, a, cc)?).typical {
            return Err(RelError::NotTypical);
        }
    }
    let e = -(alpha * 2.0 + (c + 1) as f64) * (alpha2 * 2.0 + (c2 + 1) as f64);
    Ok(rd.ru.xi_pow(e) * rd.ru.qnumr(((c + 1) * (c2 + 1)) as f64) / rd.ru.qnumr(1.0))
}

/// Integer coefficient `2 d m n / (n - m)` of the compatibility map.
pub fn psi_coefficient(rd: &RootDatum) -> i64 {
    let (m, n) = (rd.m as i64, rd.n as i64);
    2 * rd.small_d() * m * n / (n - m)
}

/// `psi(a, k) = xi^{ell a k 2dmn/(n-m)}`.
pub fn psi_compat(rd: &RootDatum, a: C64, k: i64) -> C64 {
    rd.ru.xi_pow(a * (rd.ell as f64 * k as f64 * psi_coefficient(rd) as f64))
}

/// Kirby color of grading `a mod Z` for sl(2|1): all `lambda_{a+k}^c`, `0 <= k, c < ell`.
pub fn kirby_color_sl21(rd: &RootDatum, a: C64) -> RelResult<ColorSum> {
    if rd.is_critical_pert(a) {
        return Err(RelError::CriticalGrading);
    }
    let ell = rd.ell as i64;
    let mut terms = Vec::with_capacity((ell * ell) as usize);
    for k in 0..ell {
        for c in 0..ell {
            let w = sl21_weight(rd, a + k as f64, c)?;
            let d = mdim_pert(rd, &w)?;
            terms.push((w, d));
        }
    }
    Ok(ColorSum { terms })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaMode {
    ClosedForm,
    NumericSum(C64),
}

/// Delta for sl(2|1), either in closed form or as the finite double sum at grading `a`.
pub fn delta_pm_sl21(rd: &RootDatum, sign: Sign, mode: DeltaMode) -> RelResult<C64> {
    if rd.m != 2 || rd.n != 1 {
        return Err(RelError::Unsupported("sl(2|1) only".into()));
    }
    let ru = &rd.ru;
    let ell = rd.ell as i64;
    let q1 = ru.qnumr(1.0);
    match mode {
        DeltaMode::ClosedForm => {
            let s = if sign == Sign::Plus { -1.0 } else { 1.0 };
            Ok(s * 2.0 * ell as f64 / q1)
        }
        DeltaMode::NumericSum(a) => {
            if rd.is_critical_pert(a) {
                return Err(RelError::CriticalGrading);
            }
            let s = if sign == Sign::Plus { 1 } else { -1 };
            let pre = ru.qnum(a) * ru.qnum(a + 1.0) / (q1 * q1);
            let mut total = c64(0.0, 0.0);
            for k in 0..ell {
                let dk = ru.qnum(a + k as f64);
                if too_small(rd, dk) {
                    return Err(RelError::DegenerateWeight("{a+k} vanishes".into()));
                }
                let mut inner = c64(0.0, 0.0);
                for m in 0..ell {
                    let dm = ru.qnum(a + (k + m + 1) as f64);
                    if too_small(rd, dm) {
                        return Err(RelError::DegenerateWeight("{a+k+m+1} vanishes".into()));
                    }
                    let q = ru.qnumr((m + 1) as f64);
                    inner += ru.xi_powi(s * m * (1 - 2 * k)) * q * q / dm;
                }
                total += ru.xi_powi(s * (1 - 2 * k * k)) * pre / dk * inner;
            }
            Ok(total)
        }
    }
}

/// `d(mu) d(lambda) S'(mu, lambda) S'(lambda*, mu)` on the projective ideal.
pub fn zeta_term(rd: &RootDatum, l: &Weight, mu: &Weight) -> RelResult<C64> {
    let ls = dual_weight_proj(rd, l);
    Ok(mdim_proj(rd, mu)? * mdim_proj(rd, l)? * s_prime(rd, mu, l)? * s_prime(rd, &ls, mu)?)
}
