//! Colored framed tangles in Morse form, the renormalized invariant and surgery invariants.

use crate::braiding::{braiding, braiding_inv, is_scalar, twist_op};
use crate::error::{RelError, RelResult};
use crate::invariants::{delta_pm_sl21, kirby_color_sl21, DeltaMode, Ideal, InvariantContext, Sign};
use crate::repr::{dual, make_sigma, make_standard, make_trivial, make_typical, WeightModule};
use crate::rootdata::{CJson, RootDatum, Weight};
use crate::scalars::{c64, CMat};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Elementary piece of a Morse diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Piece {
    /// Vertical strands, no effect.
    #[serde(rename = "id")]
    Id,
    /// `coev : 1 -> V (x) V*`.
    #[serde(rename = "cup")]
    Cup,
    /// `ev : V* (x) V -> 1`.
    #[serde(rename = "cap")]
    Cap,
    /// `coev' : 1 -> V* (x) V`.
    #[serde(rename = "cupP")]
    CupPrime,
    /// `ev' : V (x) V* -> 1`.
    #[serde(rename = "capP")]
    CapPrime,
    #[serde(rename = "crossP")]
    CrossPos,
    #[serde(rename = "crossN")]
    CrossNeg,
    #[serde(rename = "twistP")]
    TwistPos,
    #[serde(rename = "twistN")]
    TwistNeg,
}

/// A strand at one level: palette index and orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub color: usize,
    pub up: bool,
}

impl Strand {
    pub fn up(color: usize) -> Self {
        Strand { color, up: true }
    }

    pub fn down(color: usize) -> Self {
        Strand { color, up: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub op: Piece,
    pub pos: usize,
    /// Color of the component created by a cup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<usize>,
}

/// Morse word read bottom to top.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MorseDiagram {
    pub bottom: Vec<Strand>,
    pub slices: Vec<Slice>,
}

impl MorseDiagram {
    pub fn new(bottom: Vec<Strand>) -> Self {
        MorseDiagram { bottom, slices: Vec::new() }
    }

    pub fn push(&mut self, op: Piece, pos: usize) -> &mut Self {
        self.slices.push(Slice { op, pos, color: None });
        self
    }

    pub fn cup(&mut self, op: Piece, pos: usize, color: usize) -> &mut Self {
        self.slices.push(Slice { op, pos, color: Some(color) });
        self
    }

    pub fn append(&mut self, other: &MorseDiagram) -> &mut Self {
        self.slices.extend_from_slice(&other.slices);
        self
    }

    /// Strand lists at every level, bottom first.
    pub fn levels(&self) -> RelResult<Vec<Vec<Strand>>> {
        let ill = |s: String| RelError::IllFormedDiagram(s);
        let mut cur = self.bottom.clone();
        let mut out = vec![cur.clone()];
        for (k, s) in self.slices.iter().enumerate() {
            let need = match s.op {
                Piece::Id => 0,
                Piece::Cup | Piece::CupPrime => 0,
                Piece::TwistPos | Piece::TwistNeg => 1,
                _ => 2,
            };
            if s.pos + need > cur.len() || (need == 0 && s.pos > cur.len()) {
                return Err(ill(format!("slice {k}: position {} out of range", s.pos)));
            }
            match s.op {
                Piece::Id | Piece::TwistPos | Piece::TwistNeg => {}
                Piece::Cup | Piece::CupPrime => {
                    let c = s.color.ok_or_else(|| ill(format!("slice {k}: cup without color")))?;
                    let pair = if s.op == Piece::Cup { [Strand::up(c), Strand::down(c)] } else { [Strand::down(c), Strand::up(c)] };
                    cur.splice(s.pos..s.pos, pair);
                }
                Piece::Cap | Piece::CapPrime => {
                    let (a, b) = (cur[s.pos], cur[s.pos + 1]);
                    let ok = a.color == b.color && if s.op == Piece::Cap { !a.up && b.up } else { a.up && !b.up };
                    if !ok {
                        return Err(ill(format!("slice {k}: cap does not match strands {a:?} {b:?}")));
                    }
                    cur.drain(s.pos..s.pos + 2);
                }
                Piece::CrossPos | Piece::CrossNeg => cur.swap(s.pos, s.pos + 1),
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn top(&self) -> RelResult<Vec<Strand>> {
        Ok(self.levels()?.pop().unwrap_or_default())
    }
}

/// A palette entry: a module with its highest weight, or a Kirby color.
#[derive(Debug, Clone)]
pub enum Color {
    Module { module: WeightModule, hw: Option<Weight> },
    Kirby { grading: C64, terms: Vec<(C64, WeightModule, Weight)> },
}

/// JSON description of a palette entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ColorSpec {
    Typical { a: CJson, c: usize },
    Standard,
    Trivial,
    Sigma { odd: bool, coords: Vec<f64> },
    Kirby { a: CJson },
}

impl ColorSpec {
    pub fn build(&self, rd: &RootDatum) -> RelResult<Color> {
        Ok(match self {
            ColorSpec::Typical { a, c } => {
                let module = make_typical(rd, (*a).into(), *c)?;
                let hw = module.weights[0].clone();
                Color::Module { module, hw: Some(hw) }
            }
            ColorSpec::Standard => Color::Module { module: make_standard(rd)?, hw: None },
            ColorSpec::Trivial => Color::Module { module: make_trivial(rd), hw: None },
            ColorSpec::Sigma { odd, coords } => {
                let w = Weight { m: rd.m, n: rd.n, coords: coords.iter().map(|&x| c64(x, 0.0)).collect() };
                Color::Module { module: make_sigma(rd, *odd, &w)?, hw: None }
            }
            ColorSpec::Kirby { a } => kirby_color(rd, (*a).into())?,
        })
    }
}

/// Kirby color of grading `a` with zero terms dropped.
pub fn kirby_color(rd: &RootDatum, a: C64) -> RelResult<Color> {
    let sum = kirby_color_sl21(rd, a)?;
    let mut terms = Vec::new();
    for (w, d) in sum.terms {
        if d.norm() <= rd.tol.zero_tol {
            continue;
        }
        let c = w.c_nat(rd.tol.zero_tol).ok_or(RelError::NonIntegralC)?[0] as usize;
        terms.push((d, make_typical(rd, w.a(), c)?, w));
    }
    Ok(Color::Kirby { grading: a, terms })
}

pub fn typical_color(rd: &RootDatum, a: C64, c: usize) -> RelResult<Color> {
    ColorSpec::Typical { a: a.into(), c }.build(rd)
}

/// A diagram together with its palette.
#[derive(Debug, Clone)]
pub struct ColoredDiagram {
    pub diagram: MorseDiagram,
    pub palette: Vec<Color>,
}

/// Multilinear expansion of every Kirby color.
pub fn expand_kirby(d: &ColoredDiagram) -> Vec<(C64, ColoredDiagram)> {
    let mut out = vec![(c64(1.0, 0.0), d.palette.clone())];
    for (idx, color) in d.palette.iter().enumerate() {
        if let Color::Kirby { terms, .. } = color {
            let mut next = Vec::with_capacity(out.len() * terms.len());
            for (w, pal) in &out {
                for (coef, module, hw) in terms {
                    let mut p = pal.clone();
                    p[idx] = Color::Module { module: module.clone(), hw: Some(hw.clone()) };
                    next.push((w * coef, p));
                }
            }
            out = next;
        }
    }
    out.into_iter().map(|(w, palette)| (w, ColoredDiagram { diagram: d.diagram.clone(), palette })).collect()
}

/// Operator caches for one plain palette.
struct Engine<'a> {
    rd: &'a RootDatum,
    modules: Vec<&'a WeightModule>,
    duals: Vec<WeightModule>,
    cross: HashMap<(Strand, Strand, bool), CMat>,
    twist: HashMap<(Strand, bool), CMat>,
}

impl<'a> Engine<'a> {
    fn new(rd: &'a RootDatum, palette: &'a [Color]) -> RelResult<Self> {
        let mut modules = Vec::with_capacity(palette.len());
        for c in palette {
            match c {
                Color::Module { module, .. } => modules.push(module),
                Color::Kirby { .. } => return Err(RelError::IllFormedDiagram("unexpanded Kirby color".into())),
            }
        }
        let duals = modules.iter().map(|m| dual(rd, m)).collect();
        Ok(Engine { rd, modules, duals, cross: HashMap::new(), twist: HashMap::new() })
    }

    fn object(&self, s: Strand) -> &WeightModule {
        if s.up {
            self.modules[s.color]
        } else {
            &self.duals[s.color]
        }
    }

    fn dim(&self, s: Strand) -> usize {
        self.modules[s.color].dim()
    }

    fn coev(&self, c: usize, prime: bool) -> CMat {
        let v = self.modules[c];
        let n = v.dim();
        let kpi = v.k_pi(self.rd, -1);
        let mut out = CMat::zeros(n * n, 1);
        for i in 0..n {
            out[(i * n + i, 0)] = if prime {
                kpi[(i, i)] * if v.parity[i] { -1.0 } else { 1.0 }
            } else {
                c64(1.0, 0.0)
            };
        }
        out
    }

    fn ev(&self, c: usize, prime: bool) -> CMat {
        let v = self.modules[c];
        let n = v.dim();
        let kpi = v.k_pi(self.rd, 1);
        let mut out = CMat::zeros(1, n * n);
        for i in 0..n {
            out[(0, i * n + i)] = if prime {
                kpi[(i, i)] * if v.parity[i] { -1.0 } else { 1.0 }
            } else {
                c64(1.0, 0.0)
            };
        }
        out
    }

    fn crossing(&mut self, a: Strand, b: Strand, positive: bool) -> CMat {
        if let Some(m) = self.cross.get(&(a, b, positive)) {
            return m.clone();
        }
        let (x, y) = (self.object(a), self.object(b));
        let m = if positive { braiding(self.rd, x, y) } else { braiding_inv(self.rd, y, x) };
        self.cross.insert((a, b, positive), m.clone());
        m
    }

    fn twist_of(&mut self, s: Strand, positive: bool) -> CMat {
        if let Some(m) = self.twist.get(&(s, positive)) {
            return m.clone();
        }
        let t = twist_op(self.rd, self.object(s));
        let m = if positive { t } else { t.try_inverse().expect("twist is invertible") };
        self.twist.insert((s, positive), m.clone());
        m
    }

    fn run(&mut self, d: &MorseDiagram) -> RelResult<CMat> {
        let levels = d.levels()?;
        let n0: usize = d.bottom.iter().map(|&s| self.dim(s)).product();
        let mut state = CMat::identity(n0, n0);
        for (k, s) in d.slices.iter().enumerate() {
            let lv = &levels[k];
            let dims: Vec<usize> = lv.iter().map(|&x| self.dim(x)).collect();
            let (op, width) = match s.op {
                Piece::Id => continue,
                Piece::Cup => (self.coev(s.color.unwrap(), false), 0),
                Piece::CupPrime => (self.coev(s.color.unwrap(), true), 0),
                Piece::Cap => (self.ev(lv[s.pos].color, false), 2),
                Piece::CapPrime => (self.ev(lv[s.pos].color, true), 2),
                Piece::CrossPos => (self.crossing(lv[s.pos], lv[s.pos + 1], true), 2),
                Piece::CrossNeg => (self.crossing(lv[s.pos], lv[s.pos + 1], false), 2),
                Piece::TwistPos => (self.twist_of(lv[s.pos], true), 1),
                Piece::TwistNeg => (self.twist_of(lv[s.pos], false), 1),
            };
            let left: usize = dims[..s.pos].iter().product();
            let right: usize = dims[s.pos + width..].iter().product();
            state = apply_local(&state, left, &op, right);
        }
        Ok(state)
    }
}

/// `(Id_left (x) op (x) Id_right) * state` for an even operator `op`.
fn apply_local(state: &CMat, left: usize, op: &CMat, right: usize) -> CMat {
    let (out, inp) = (op.nrows(), op.ncols());
    debug_assert_eq!(state.nrows(), left * inp * right);
    let cols = state.ncols();
    let mut res = CMat::zeros(left * out * right, cols);
    let zero = c64(0.0, 0.0);
    for y in 0..out {
        for x in 0..inp {
            let z = op[(y, x)];
            if z == zero {
                continue;
            }
            for l in 0..left {
                let src = (l * inp + x) * right;
                let dst = (l * out + y) * right;
                for col in 0..cols {
                    for r in 0..right {
                        res[(dst + r, col)] += z * state[(src + r, col)];
                    }
                }
            }
        }
    }
    res
}

/// Matrix of a plain colored diagram from its bottom space to its top space.
pub fn evaluate(rd: &RootDatum, d: &ColoredDiagram) -> RelResult<CMat> {
    let colors = d.diagram.bottom.iter().map(|s| s.color).chain(d.diagram.slices.iter().filter_map(|s| s.color));
    for c in colors {
        if c >= d.palette.len() {
            return Err(RelError::IllFormedDiagram(format!("color {c} not in palette")));
        }
    }
    Engine::new(rd, &d.palette)?.run(&d.diagram)
}

/// `d(V) <f>` for a plain `(1,1)`-tangle whose boundary strand is colored by a simple `V`.
fn f_prime_plain(ctx: &InvariantContext, d: &ColoredDiagram) -> RelResult<C64> {
    let rd = &ctx.datum;
    let top = d.diagram.top()?;
    if d.diagram.bottom.len() != 1 || top != d.diagram.bottom || !top[0].up {
        return Err(RelError::IllFormedDiagram("expected a (1,1)-tangle with an upward boundary strand".into()));
    }
    let hw = match &d.palette[top[0].color] {
        Color::Module { hw: Some(hw), .. } => hw.clone(),
        _ => return Err(RelError::NotSimple),
    };
    let f = evaluate(rd, d)?;
    if !is_scalar(&f, 1e-8) {
        return Err(RelError::NotSimple);
    }
    Ok(ctx.mdim(&hw)? * f[(0, 0)])
}

/// Renormalized invariant of the closure of a `(1,1)`-tangle, cut along its boundary strand.
/// Kirby colors are expanded and the summands evaluated in parallel.
pub fn f_prime(ctx: &InvariantContext, d: &ColoredDiagram) -> RelResult<C64> {
    let has_kirby = d.palette.iter().any(|c| matches!(c, Color::Kirby { .. }));
    if has_kirby && ctx.ideal != Ideal::Perturbative {
        return Err(RelError::Unsupported("Kirby colors are defined on the perturbative ideal".into()));
    }
    let terms = expand_kirby(d);
    let vals: Vec<RelResult<C64>> = terms.par_iter().map(|(w, t)| f_prime_plain(ctx, t).map(|v| w * v)).collect();
    let mut total = c64(0.0, 0.0);
    for v in vals {
        total += v?;
    }
    Ok(total)
}

/// Surgery presentation of a typical-colored knot in a 3-manifold.
/// `components[i]` is the palette index of the Kirby color on surgery component `i`,
/// `linking` their linking matrix with framings on the diagonal, and `knot_linking[i]`
/// the linking number of component `i` with the colored knot.
#[derive(Debug, Clone)]
pub struct SurgeryPresentation {
    pub diagram: ColoredDiagram,
    pub components: Vec<usize>,
    pub linking: Vec<Vec<i64>>,
    pub knot_linking: Vec<i64>,
    pub knot_grading: C64,
}

/// Gradings `g` of the surgery components solving `L g + k a = 0`, with `a` the knot grading.
pub fn compatible_gradings(linking: &[Vec<i64>], knot_linking: &[i64], a: C64) -> RelResult<Vec<C64>> {
    let n = linking.len();
    if knot_linking.len() != n {
        return Err(RelError::IllFormedDiagram("knot linking vector has the wrong length".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let l = DMatrix::from_fn(n, n, |i, j| c64(linking[i][j] as f64, 0.0));
    let rhs = nalgebra::DVector::from_fn(n, |i, _| -a * knot_linking[i] as f64);
    let g = l.lu().solve(&rhs).ok_or_else(|| RelError::IllFormedDiagram("linking matrix is singular".into()))?;
    Ok(g.iter().copied().collect())
}

impl SurgeryPresentation {
    /// Checks gradings: non-critical and compatible with the linking data modulo integers.
    pub fn check_gradings(&self, rd: &RootDatum) -> RelResult<()> {
        let n = self.linking.len();
        if self.components.len() != n {
            return Err(RelError::IllFormedDiagram("one Kirby color per surgery component is required".into()));
        }
        let mut g = Vec::with_capacity(n);
        for &c in &self.components {
            match self.diagram.palette.get(c) {
                Some(Color::Kirby { grading, .. }) => g.push(*grading),
                _ => return Err(RelError::IllFormedDiagram(format!("palette entry {c} is not a Kirby color"))),
            }
        }
        if rd.is_critical_pert(self.knot_grading) || g.iter().any(|&x| rd.is_critical_pert(x)) {
            return Err(RelError::CriticalGrading);
        }
        for i in 0..n {
            let r: C64 = (0..n).map(|j| g[j] * self.linking[i][j] as f64).sum::<C64>() + self.knot_grading * self.knot_linking[i] as f64;
            if (r - c64(r.re.round(), 0.0)).norm() > 1e-8 {
                return Err(RelError::IllFormedDiagram(format!("grading of component {i} is incompatible with the linking data")));
            }
        }
        Ok(())
    }
}

/// Surgery data of a diagram file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurgeryJson {
    pub components: Vec<usize>,
    pub linking: Vec<Vec<i64>>,
    pub knot_linking: Vec<i64>,
    pub knot_grading: CJson,
}

/// JSON form of a diagram file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    pub palette: Vec<ColorSpec>,
    pub bottom: Vec<Strand>,
    pub slices: Vec<Slice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery: Option<SurgeryJson>,
}

impl DiagramFile {
    pub fn build(&self, rd: &RootDatum) -> RelResult<ColoredDiagram> {
        let palette = self.palette.iter().map(|c| c.build(rd)).collect::<RelResult<Vec<_>>>()?;
        Ok(ColoredDiagram { diagram: MorseDiagram { bottom: self.bottom.clone(), slices: self.slices.clone() }, palette })
    }

    pub fn build_surgery(&self, rd: &RootDatum) -> RelResult<SurgeryPresentation> {
        let s = self.surgery.as_ref().ok_or_else(|| RelError::IllFormedDiagram("missing surgery data".into()))?;
        Ok(SurgeryPresentation {
            diagram: self.build(rd)?,
            components: s.components.clone(),
            linking: s.linking.clone(),
            knot_linking: s.knot_linking.clone(),
            knot_grading: s.knot_grading.into(),
        })
    }
}

/// Numbers of positive and negative eigenvalues of a symmetric integer matrix.
pub fn signature(linking: &[Vec<i64>]) -> RelResult<(usize, usize)> {
    let n = linking.len();
    if linking.iter().any(|r| r.len() != n) {
        return Err(RelError::IllFormedDiagram("linking matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if linking[i][j] != linking[j][i] {
                return Err(RelError::IllFormedDiagram("linking matrix is not symmetric".into()));
            }
        }
    }
    if n == 0 {
        return Ok((0, 0));
    }
    let m = DMatrix::from_fn(n, n, |i, j| linking[i][j] as f64);
    let ev = m.symmetric_eigen().eigenvalues;
    Ok((ev.iter().filter(|&&x| x > 1e-9).count(), ev.iter().filter(|&&x| x < -1e-9).count()))
}

/// `F'(L) / (Delta_+^{b+} Delta_-^{b-})`.
pub fn cgp_invariant(ctx: &InvariantContext, p: &SurgeryPresentation) -> RelResult<C64> {
    let rd = &ctx.datum;
    p.check_gradings(rd)?;
    let (bp, bm) = signature(&p.linking)?;
    let dp = delta_pm_sl21(rd, Sign::Plus, DeltaMode::ClosedForm)?;
    let dm = delta_pm_sl21(rd, Sign::Minus, DeltaMode::ClosedForm)?;
    if (dp * dm).norm() <= rd.tol.zero_tol {
        return Err(RelError::DegenerateDelta);
    }
    let f = f_prime(ctx, &p.diagram)?;
    Ok(f / (dp.powi(bp as i32) * dm.powi(bm as i32)))
}

/// Ready-made diagrams.
pub mod shapes {
    use super::*;

    /// Bare strand of color `v`.
    pub fn strand(v: usize) -> MorseDiagram {
        MorseDiagram::new(vec![Strand::up(v)])
    }

    /// Circle of color `w` linked once with the strand at position `pos`, closed on the right.
    /// `positive` selects the crossing type, `framing` adds twists to the circle.
    pub fn encircle(d: &mut MorseDiagram, pos: usize, w: usize, positive: bool, framing: i64) {
        let cross = if positive { Piece::CrossPos } else { Piece::CrossNeg };
        d.cup(Piece::Cup, pos + 1, w);
        d.push(cross, pos).push(cross, pos);
        let t = if framing >= 0 { Piece::TwistPos } else { Piece::TwistNeg };
        for _ in 0..framing.abs() {
            d.push(t, pos + 1);
        }
        d.push(Piece::CapPrime, pos + 1);
    }

    /// Strand `v` with a circle `w` around it: the Hopf link cut along `v`.
    pub fn hopf(v: usize, w: usize, positive: bool) -> MorseDiagram {
        let mut d = strand(v);
        encircle(&mut d, 0, w, positive, 0);
        d
    }

    /// Knot `V(a, c)` as a bare strand, with no surgery.
    pub fn bare_knot(rd: &RootDatum, a: C64, c: usize) -> RelResult<SurgeryPresentation> {
        Ok(SurgeryPresentation {
            diagram: ColoredDiagram { diagram: strand(0), palette: vec![typical_color(rd, a, c)?] },
            components: vec![],
            linking: vec![],
            knot_linking: vec![],
            knot_grading: a,
        })
    }

    /// Knot `V(a, c)` with framing `sign` and a `sign`-framed Kirby circle around it.
    /// Blowing down the circle returns [`bare_knot`].
    pub fn stabilized(rd: &RootDatum, a: C64, c: usize, sign: i64, positive: bool) -> RelResult<SurgeryPresentation> {
        let lk = if positive { 1 } else { -1 };
        let g = compatible_gradings(&[vec![sign]], &[lk], a)?;
        let palette = vec![typical_color(rd, a, c)?, kirby_color(rd, g[0])?];
        let mut d = strand(0);
        d.push(if sign > 0 { Piece::TwistPos } else { Piece::TwistNeg }, 0);
        encircle(&mut d, 0, 1, positive, sign);
        Ok(SurgeryPresentation {
            diagram: ColoredDiagram { diagram: d, palette },
            components: vec![1],
            linking: vec![vec![sign]],
            knot_linking: vec![lk],
            knot_grading: a,
        })
    }

    /// Two presentations related by sliding one `+1`-framed meridian of the knot over another.
    /// The first has two stacked meridians. In the second, one meridian `C1` of the knot
    /// carries a `+2`-framed meridian of its own, and the evaluation is cut along `C1`.
    pub fn handle_slide_pair(rd: &RootDatum, a: C64, c: usize) -> RelResult<(SurgeryPresentation, SurgeryPresentation)> {
        let la = vec![vec![1, 0], vec![0, 1]];
        let ga = compatible_gradings(&la, &[1, 1], a)?;
        let mut da = strand(0);
        encircle(&mut da, 0, 1, true, 1);
        encircle(&mut da, 0, 2, true, 1);
        let pa = SurgeryPresentation {
            diagram: ColoredDiagram { diagram: da, palette: vec![typical_color(rd, a, c)?, kirby_color(rd, ga[0])?, kirby_color(rd, ga[1])?] },
            components: vec![1, 2],
            linking: la,
            knot_linking: vec![1, 1],
            knot_grading: a,
        };
        let lb = vec![vec![1, -1], vec![-1, 2]];
        let gb = compatible_gradings(&lb, &[1, 0], a)?;
        let mut db = strand(0);
        db.push(Piece::TwistPos, 0);
        encircle(&mut db, 0, 1, true, 0);
        encircle(&mut db, 0, 2, false, 2);
        let pb = SurgeryPresentation {
            diagram: ColoredDiagram { diagram: db, palette: vec![kirby_color(rd, gb[0])?, typical_color(rd, a, c)?, kirby_color(rd, gb[1])?] },
            components: vec![0, 2],
            linking: lb,
            knot_linking: vec![1, 0],
            knot_grading: a,
        };
        Ok((pa, pb))
    }
}
