//! Young-diagram fusion rules, Pieri steps, dimensions and characters of
//! typical envelopes.

use crate::error::{RelError, RelResult};
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::c64;
use itertools::Itertools;
use num_complex::Complex64 as C64;
use std::collections::BTreeMap;

/// A partition fitting in the `m x n` box, stored with exactly `m` parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxPartition(pub Vec<usize>);

/// Weight multiplicities relative to `base`, keyed by integral coordinate offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub base: Weight,
    pub entries: BTreeMap<Vec<i64>, (u64, u64)>,
}

impl Character {
    pub fn dim(&self) -> u64 {
        self.entries.values().map(|(e, o)| e + o).sum()
    }

    pub fn product(&self, other: &Character) -> Character {
        let mut entries = BTreeMap::new();
        for (k1, (e1, o1)) in &self.entries {
            for (k2, (e2, o2)) in &other.entries {
                let k: Vec<i64> = k1.iter().zip(k2).map(|(x, y)| x + y).collect();
                let slot = entries.entry(k).or_insert((0, 0));
                slot.0 += e1 * e2 + o1 * o2;
                slot.1 += e1 * o2 + o1 * e2;
            }
        }
        Character { base: self.base.add(&other.base), entries }
    }

    /// Re-express over a new base; fails unless the shift is integral.
    pub fn rebase(&self, base: &Weight) -> Option<Character> {
        let shift: Vec<i64> = self
            .base
            .coords
            .iter()
            .zip(&base.coords)
            .map(|(x, y)| {
                let d = x - y;
                let k = d.re.round();
                if (d - c64(k, 0.0)).norm() < 1e-9 {
                    Some(k as i64)
                } else {
                    None
                }
            })
            .collect::<Option<_>>()?;
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.iter().zip(&shift).map(|(a, b)| a + b).collect(), *v))
            .collect();
        Some(Character { base: base.clone(), entries })
    }

    pub fn parity_shift(&self) -> Character {
        let entries = self.entries.iter().map(|(k, (e, o))| (k.clone(), (*o, *e))).collect();
        Character { base: self.base.clone(), entries }
    }

    pub fn sum(chars: &[Character], base: &Weight) -> Option<Character> {
        let mut entries: BTreeMap<Vec<i64>, (u64, u64)> = BTreeMap::new();
        for ch in chars {
            for (k, (e, o)) in ch.rebase(base)?.entries {
                let slot = entries.entry(k).or_insert((0, 0));
                slot.0 += e;
                slot.1 += o;
            }
        }
        Some(Character { base: base.clone(), entries })
    }
}

pub fn diagrams_in_box(m: usize, n: usize) -> Vec<BoxPartition> {
    fn rec(m: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<BoxPartition>) {
        if acc.len() == m {
            out.push(BoxPartition(acc.clone()));
            return;
        }
        for p in 0..=max {
            acc.push(p);
            rec(m, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn conjugate(parts: &[usize], len: usize) -> Vec<usize> {
    (1..=len).map(|j| parts.iter().filter(|&&p| p >= j).count()).collect()
}

/// `(lambda_hat, mu)` with `lambda_hat_i = n - lambda_{m+1-i}` and `mu` its conjugate.
pub fn complement_conjugate(l: &BoxPartition, n: usize) -> (Vec<usize>, Vec<usize>) {
    let m = l.0.len();
    let hat: Vec<usize> = (0..m).map(|i| n - l.0[m - 1 - i]).collect();
    let mu = conjugate(&hat, n);
    (hat, mu)
}

pub fn summand_weight(rd: &RootDatum, l: &BoxPartition, z: C64) -> RelResult<Weight> {
    let (m, n) = (rd.m, rd.n);
    let (_, mu) = complement_conjugate(l, n);
    let mut c = Vec::with_capacity(rd.r - 1);
    for i in 0..m - 1 {
        c.push((l.0[i] - l.0[i + 1]) as i64);
    }
    for j in 0..n - 1 {
        c.push((mu[j] - mu[j + 1]) as i64);
    }
    let a = z + (mu[0] + l.0[m - 1]) as f64 - n as f64;
    rd.weight(&c, a)
}

/// Parity of the highest weight vector of the summand for `l` inside the product.
pub fn summand_parity(l: &BoxPartition, n: usize) -> bool {
    let boxes: usize = l.0.iter().sum();
    (l.0.len() * n - boxes) % 2 == 1
}

pub fn tensor_decompose_zero(rd: &RootDatum, a: C64, b: C64) -> RelResult<Vec<Weight>> {
    if rd.is_critical_pert(a + b) {
        return Err(RelError::CriticalGrading);
    }
    diagrams_in_box(rd.m, rd.n).iter().map(|l| summand_weight(rd, l, a + b)).collect()
}

/// Gelfand-Tsetlin patterns with top row `top`; yields the content vector of each.
fn gt_contents(top: &[i64]) -> Vec<Vec<i64>> {
    let k = top.len();
    if k == 0 {
        return vec![vec![]];
    }
    if k == 1 {
        return vec![vec![top[0]]];
    }
    let ranges: Vec<Vec<i64>> = (0..k - 1).map(|i| (top[i + 1]..=top[i]).collect()).collect();
    let total: i64 = top.iter().sum();
    let mut out = Vec::new();
    for row in ranges.into_iter().multi_cartesian_product() {
        let s: i64 = row.iter().sum();
        for mut cont in gt_contents(&row) {
            cont.push(total - s);
            out.push(cont);
        }
    }
    out
}

/// Partition rows from Dynkin labels `c_1..c_{k-1}` of gl(k): `p_i = sum_{j >= i} c_j`, `p_k = 0`.
fn rows_from_labels(labels: &[i64]) -> Vec<i64> {
    let k = labels.len() + 1;
    (0..k).map(|i| labels[i..].iter().sum()).collect()
}

/// Weights of the even part with highest weight `c` (c-part, length r-1), as
/// drops below the highest weight in eps/delta coordinates, with multiplicities.
pub fn g0_weight_drops(m: usize, n: usize, c: &[i64]) -> Vec<(Vec<f64>, u64)> {
    assert_eq!(c.len(), m + n - 2);
    let top_e = rows_from_labels(&c[..m - 1]);
    let top_d = rows_from_labels(&c[m - 1..]);
    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let ce = gt_contents(&top_e);
    let cd = gt_contents(&top_d);
    for x in &ce {
        for y in &cd {
            let mut drop: Vec<i64> = top_e.iter().zip(x).map(|(t, v)| t - v).collect();
            drop.extend(top_d.iter().zip(y).map(|(t, v)| t - v));
            *mult.entry(drop).or_insert(0) += 1;
        }
    }
    mult.into_iter().map(|(k, v)| (k.into_iter().map(|x| x as f64).collect(), v)).collect()
}

pub fn g0_dim(m: usize, n: usize, c: &[i64]) -> u64 {
    assert_eq!(c.len(), m + n - 2);
    (gt_contents(&rows_from_labels(&c[..m - 1])).len() * gt_contents(&rows_from_labels(&c[m - 1..])).len()) as u64
}

pub fn envelope_dim(rd: &RootDatum, c: &[i64]) -> RelResult<u64> {
    let w = rd.weight(c, c64(0.25, 0.0))?;
    if c.iter().any(|&x| x < 0) || !rd.in_alcove(&w, false)? {
        return Err(RelError::NotInAlcove);
    }
    Ok((1u64 << (rd.m * rd.n)) * g0_dim(rd.m, rd.n, c))
}

/// Integral coordinates `d_j <v, alpha_j>` of an integral eps/delta vector.
pub fn eps_delta_to_offset(rd: &RootDatum, v: &[f64]) -> Vec<i64> {
    (0..rd.r).map(|j| (rd.form_roots(v, &rd.simple[j]) * rd.d[j] as f64).round() as i64).collect()
}

/// Character of the typical envelope: even-part character times the exterior
/// algebra on the negative odd roots.
pub fn envelope_character(rd: &RootDatum, l: &Weight) -> RelResult<Character> {
    let c = l.c_nat(rd.tol.zero_tol).ok_or(RelError::NonIntegralC)?;
    let mut entries: BTreeMap<Vec<i64>, (u64, u64)> = BTreeMap::new();
    let odd: Vec<Vec<i64>> = rd.pos_odd.iter().map(|a| eps_delta_to_offset(rd, a)).collect();
    for (drop, mult) in g0_weight_drops(rd.m, rd.n, &c) {
        let d0 = eps_delta_to_offset(rd, &drop);
        for subset in 0u32..(1 << odd.len()) {
            let mut k: Vec<i64> = d0.iter().map(|x| -x).collect();
            for (i, o) in odd.iter().enumerate() {
                if subset & (1 << i) != 0 {
                    for (kk, oo) in k.iter_mut().zip(o) {
                        *kk -= oo;
                    }
                }
            }
            let slot = entries.entry(k).or_insert((0, 0));
            if subset.count_ones() % 2 == 0 {
                slot.0 += mult;
            } else {
                slot.1 += mult;
            }
        }
    }
    Ok(Character { base: l.clone(), entries })
}

/// Character of the standard module: `eps_i` even, `delta_j` odd.
pub fn standard_character(rd: &RootDatum) -> Character {
    let mut entries = BTreeMap::new();
    for k in 0..rd.m + rd.n {
        let mut v = vec![0.0; rd.m + rd.n];
        v[k] = 1.0;
        let key = eps_delta_to_offset(rd, &v);
        let slot = entries.entry(key).or_insert((0, 0));
        if k < rd.m {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
    }
    Character { base: Weight::zero(rd.m, rd.n), entries }
}

/// `omega = xi^{ell n / (2 (m - n))}`.
pub fn psi_omega(rd: &RootDatum) -> C64 {
    rd.ru.xi_powr(rd.ell as f64 * rd.n as f64 / (2.0 * (rd.m as f64 - rd.n as f64)))
}

/// Evaluate a supercharacter under `eps_i -> omega`, `delta_j -> -omega`.
/// The character must sit on an integral base.
pub fn psi_superdim(rd: &RootDatum, ch: &Character) -> RelResult<C64> {
    let base = ch.base.c_nat(1e-9).zip(Some(ch.base.a())).and_then(|(c, a)| {
        let k = a.re.round();
        ((a - c64(k, 0.0)).norm() < 1e-9).then(|| {
            let mut v = c;
            v.insert(rd.m - 1, k as i64);
            v
        })
    });
    let base = base.ok_or(RelError::Unsupported("psi needs an integral base weight".into()))?;
    let om = psi_omega(rd);
    let mut total = c64(0.0, 0.0);
    for (k, (e, o)) in &ch.entries {
        let coords: Vec<i64> = k.iter().zip(&base).map(|(x, y)| x + y).collect();
        let (sx, sy) = integral_rep_sums(rd, &coords);
        let v = om.powi(sx as i32) * (-om).powi(sy as i32);
        total += v * (*e as f64 - *o as f64);
    }
    Ok(total)
}

/// Sums of eps- and delta-coefficients of the integral representative
/// `sum c_i w_i` with `w_k = eps_1 + .. + eps_k`, `w_m = sum eps`, `w_{m+k} = -(delta_{k+1} + .. + delta_n)`.
fn integral_rep_sums(rd: &RootDatum, coords: &[i64]) -> (i64, i64) {
    let (m, n) = (rd.m as i64, rd.n as i64);
    let mut sx = 0;
    let mut sy = 0;
    for (i, &c) in coords.iter().enumerate() {
        let i = i as i64 + 1;
        if i < m {
            sx += c * i;
        } else if i == m {
            sx += c * m;
        } else {
            sy -= c * (n - (i - m));
        }
    }
    (sx, sy)
}

/// One Pieri step: tensor with the standard module and add a single box.
pub fn pieri_step(rd: &RootDatum, weights: &[Weight]) -> RelResult<Vec<Weight>> {
    let mut out = Vec::new();
    for l in weights {
        if !rd.is_typical(l).typical {
            return Err(RelError::NotTypical);
        }
        if !rd.in_alcove(l, true)? {
            return Err(RelError::NotInAlcove);
        }
        for k in 0..rd.m + rd.n {
            let mut v = vec![0.0; rd.m + rd.n];
            v[k] = 1.0;
            let off = eps_delta_to_offset(rd, &v);
            let cand = Weight {
                m: rd.m,
                n: rd.n,
                coords: l.coords.iter().zip(&off).map(|(x, o)| x + *o as f64).collect(),
            };
            if cand.c_nat(1e-9).is_some() {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl_dim(rows: &[i64]) -> u64 {
        let k = rows.len();
        let mut num = 1i64;
        let mut den = 1i64;
        for i in 0..k {
            for j in i + 1..k {
                num *= rows[i] - rows[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        (num / den) as u64
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn box_counts() {
        assert_eq!(
            diagrams_in_box(2, 1),
            vec![BoxPartition(vec![0, 0]), BoxPartition(vec![1, 0]), BoxPartition(vec![1, 1])]
        );
        assert_eq!(diagrams_in_box(1, 1).len(), 2);
        assert_eq!(diagrams_in_box(2, 2).len(), 6);
        for (m, n) in [(3, 1), (2, 3), (3, 3), (4, 2)] {
            assert_eq!(diagrams_in_box(m, n).len() as u64, binom((m + n) as u64, m as u64));
        }
    }

    #[test]
    fn complement_examples() {
        let (hat, mu) = complement_conjugate(&BoxPartition(vec![0, 0]), 1);
        assert_eq!(hat, vec![1, 1]);
        assert_eq!(mu, vec![2]);
        let (hat, mu) = complement_conjugate(&BoxPartition(vec![3, 3]), 3);
        assert_eq!(hat, vec![0, 0]);
        assert_eq!(mu, vec![0, 0, 0]);
        for l in diagrams_in_box(3, 2) {
            let (hat, _) = complement_conjugate(&l, 2);
            let (back, _) = complement_conjugate(&BoxPartition(hat), 2);
            assert_eq!(back, l.0);
        }
    }

    fn same(a: &Weight, b: &Weight) -> bool {
        a.coords.iter().zip(&b.coords).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn summand_weights_sl21() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let z = c64(0.7, 0.1);
        let w = summand_weight(&rd, &BoxPartition(vec![1, 1]), z).unwrap();
        assert!(same(&w, &rd.weight(&[0], z).unwrap()));
        let w = summand_weight(&rd, &BoxPartition(vec![0, 0]), z).unwrap();
        assert!(same(&w, &rd.weight(&[0], z + 1.0).unwrap()));
        let w = summand_weight(&rd, &BoxPartition(vec![1, 0]), z).unwrap();
        assert!(same(&w, &rd.weight(&[1], z).unwrap()));
        // full rectangle is the top summand
        for (m, n) in [(3, 1), (2, 3)] {
            let rd = RootDatum::new(m, n, 7).unwrap();
            let w = summand_weight(&rd, &BoxPartition(vec![n; m]), z).unwrap();
            assert!(same(&w, &rd.weight(&vec![0; m + n - 2], z).unwrap()));
        }
    }

    #[test]
    fn g0_dims_match_weyl() {
        assert_eq!(g0_dim(2, 1, &[0]), 1);
        assert_eq!(g0_dim(2, 1, &[1]), 2);
        assert_eq!(g0_dim(3, 1, &[1, 0]), 3);
        for c in [[0i64, 0], [1, 0], [2, 1], [0, 3], [2, 2]] {
            assert_eq!(g0_dim(3, 1, &c), weyl_dim(&rows_from_labels(&c)));
        }
        // sl(2) x sl(3)
        for c in [[1i64, 0, 0], [2, 1, 1], [0, 2, 0]] {
            let want = weyl_dim(&rows_from_labels(&c[..1])) * weyl_dim(&rows_from_labels(&c[1..]));
            assert_eq!(g0_dim(2, 3, &c), want);
        }
        let rd = RootDatum::new(3, 1, 7).unwrap();
        assert_eq!(envelope_dim(&rd, &[1, 0]).unwrap(), 24);
        let rd = RootDatum::new(2, 1, 5).unwrap();
        assert_eq!(envelope_dim(&rd, &[0]).unwrap(), 4);
        assert_eq!(envelope_dim(&rd, &[1]).unwrap(), 8);
        assert_eq!(envelope_dim(&rd, &[5]), Err(RelError::NotInAlcove));
    }

    #[test]
    fn decomposition_dimension_identity() {
        for (m, n, ell) in [(2, 1, 5), (1, 2, 5), (3, 1, 7), (2, 3, 7)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            let ws = tensor_decompose_zero(&rd, c64(0.31, 0.1), c64(0.17, -0.05)).unwrap();
            let g0: u64 = ws.iter().map(|w| g0_dim(m, n, &w.c_nat(1e-9).unwrap())).sum();
            assert_eq!(g0, 1u64 << (m * n), "({m},{n})");
            for (i, w) in ws.iter().enumerate() {
                assert!(rd.is_typical(w).typical);
                assert!(rd.in_alcove(w, false).unwrap());
                for v in &ws[i + 1..] {
                    assert_ne!(w, v);
                }
            }
        }
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let ws = tensor_decompose_zero(&rd, c64(0.3, 0.0), c64(0.2, 0.0)).unwrap_err();
        assert_eq!(ws, RelError::CriticalGrading);
    }

    #[test]
    fn sl21_decomposition_dims() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let ws = tensor_decompose_zero(&rd, c64(0.3, 0.1), c64(0.4, 0.0)).unwrap();
        let dims: Vec<u64> = ws.iter().map(|w| envelope_dim(&rd, &w.c_nat(1e-9).unwrap()).unwrap()).collect();
        assert_eq!(dims, vec![4, 8, 4]);
        assert!(ws.contains(&rd.weight(&[0], c64(0.7, 0.1)).unwrap()));
    }

    #[test]
    fn character_convolution() {
        for (m, n, ell) in [(2, 1, 7), (3, 1, 7), (1, 2, 7), (3, 2, 11)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            let (a, b) = (c64(0.31, 0.1), c64(0.17, -0.05));
            let zero = vec![0i64; rd.r - 1];
            let va = envelope_character(&rd, &rd.weight(&zero, a).unwrap()).unwrap();
            let vb = envelope_character(&rd, &rd.weight(&zero, b).unwrap()).unwrap();
            let prod = va.product(&vb);
            let parts: Vec<Character> = diagrams_in_box(m, n)
                .iter()
                .map(|l| {
                    let ch = envelope_character(&rd, &summand_weight(&rd, l, a + b).unwrap()).unwrap();
                    if summand_parity(l, n) {
                        ch.parity_shift()
                    } else {
                        ch
                    }
                })
                .collect();
            let sum = Character::sum(&parts, &prod.base).unwrap();
            assert_eq!(sum.entries, prod.entries, "({m},{n})");
        }
    }

    #[test]
    fn pieri_sl21() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let a = c64(0.3, 0.1);
        let out = pieri_step(&rd, &[rd.weight(&[0], a).unwrap()]).unwrap();
        assert_eq!(out, vec![rd.weight(&[1], a).unwrap(), rd.weight(&[0], a + 1.0).unwrap()]);
        let dims: u64 = out.iter().map(|w| envelope_dim(&rd, &w.c_nat(1e-9).unwrap()).unwrap()).sum();
        assert_eq!(dims, 12);
    }

    #[test]
    fn pieri_conserves_dimension_and_reaches_alcove() {
        for (m, n, ell) in [(2, 1, 5), (3, 1, 7), (2, 3, 5)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            let start = rd.weight(&vec![0; rd.r - 1], c64(0.21, 0.13)).unwrap();
            let mut frontier = vec![start];
            let mut reached = std::collections::BTreeSet::new();
            for _ in 0..6 {
                let mut next = Vec::new();
                for w in &frontier {
                    if !rd.in_alcove(w, true).unwrap() {
                        continue;
                    }
                    let out = pieri_step(&rd, std::slice::from_ref(w)).unwrap();
                    let din = envelope_dim(&rd, &w.c_nat(1e-9).unwrap()).unwrap();
                    let dout: u64 = out.iter().map(|v| envelope_dim(&rd, &v.c_nat(1e-9).unwrap()).unwrap()).sum();
                    assert_eq!(dout, din * (m + n) as u64);
                    let lr = w.add(&rd.rho);
                    for v in &out {
                        assert!(rd.in_alcove(v, false).unwrap());
                        let vr = v.add(&rd.rho);
                        for al in &rd.pos_even {
                            let inc = (rd.pair_root(&vr, al) - rd.pair_root(&lr, al)).norm();
                            assert!(inc <= 1.0 + 1e-9);
                        }
                        reached.insert(v.c_nat(1e-9).unwrap());
                    }
                    next.extend(out);
                }
                frontier = next;
                frontier.dedup();
            }
            if (m, n) == (2, 1) {
                for c in 0..5 {
                    assert!(reached.contains(&vec![c]));
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let rd = RootDatum::new(2, 1, 5).unwrap();
        let om = psi_omega(&rd);
        let triv = Character { base: Weight::zero(2, 1), entries: BTreeMap::from([(vec![0, 0], (1, 0))]) };
        assert!((psi_superdim(&rd, &triv).unwrap() - c64(1.0, 0.0)).norm() < 1e-12);
        let v = psi_superdim(&rd, &standard_character(&rd)).unwrap();
        assert!((v - om * 3.0).norm() < 1e-12);
    }

    #[test]
    fn psi_of_big_module_is_borel_dim() {
        // supercharacter of the dimension-D module with highest weight (ell-1) rho0
        for (m, n, ell) in [(2, 1, 5), (3, 1, 5), (1, 2, 7)] {
            let rd = RootDatum::new(m, n, ell).unwrap();
            let hw = rd.rho0.scale(c64((ell - 1) as f64, 0.0));
            let mut ch = Character { base: hw, entries: BTreeMap::from([(vec![0; rd.r], (1, 0))]) };
            for al in &rd.pos_even {
                let off = eps_delta_to_offset(&rd, al);
                let mut e = BTreeMap::new();
                for k in 0..ell as i64 {
                    e.insert(off.iter().map(|x| -k * x).collect::<Vec<_>>(), (1, 0));
                }
                ch = ch.product(&Character { base: Weight::zero(m, n), entries: e });
            }
            for al in &rd.pos_odd {
                let off = eps_delta_to_offset(&rd, al);
                let e = BTreeMap::from([(vec![0; rd.r], (1, 0)), (off.iter().map(|x| -x).collect(), (0, 1))]);
                ch = ch.product(&Character { base: Weight::zero(m, n), entries: e });
            }
            let v = psi_superdim(&rd, &ch).unwrap();
            assert!((v - c64(rd.borel_dim() as f64, 0.0)).norm() < 1e-6, "({m},{n}): {v}");
        }
    }
}
