//! Construction A for (R-1)-saturating sets in PG(R,q), and a plain greedy
//! baseline.
//!
//! The construction starts from an arc `K_0` of L points and repeatedly picks
//! a hyperplane `Π` skew to the current set `K`, adds R points of `Π` in
//! general position (which covers all of `Π`), and stops once at most R points
//! remain uncovered; those are then added directly.
//!
//! The first point added in each step is the *leading point*. With the exact
//! strategy it maximizes `δ(P)`, the number of uncovered points outside `Π`
//! that become covered when P alone joins K. Counting uses the following
//! identity: for an uncovered `B ∉ Π` scaled so that `h·B = 1`, and an
//! (R-1)-subset D of K, B lies in `<D, P>` for `P ∈ Π` exactly when
//! `P = v - B` for a vector `v ∈ <D>` with `h·v = 1`. Those `q^{rank D - 1}`
//! points form the affine part `Γ̂(D, B)` of `<D, B> ∩ Π`.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds;
use crate::codes::{saturation_level, set_to_parity_check, ParityCheck};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTables};
use crate::pg::{
    binomial, find_skew_hyperplane, for_each_combination, format_tuple, general_position, hyperplane_points,
    normal_rational_curve, row_reduce, theta, Bitmap, DualHyperplane, PgSpace, PointId, SpanWalker,
};

/// Coverage of PG(R,q) by the (R-1)-saturation spans of a growing point set.
#[derive(Clone, Debug)]
pub struct CoverageState {
    space: PgSpace,
    points: Vec<PointId>,
    /// Step at which each point of `points` was added (0 for the start set).
    tags: Vec<usize>,
    member: Bitmap,
    covered: Bitmap,
    uncovered: u64,
    step: usize,
}

impl CoverageState {
    /// Starts from `k0`, any R of whose points must be in general position.
    pub fn init(k0: &[PointId], space: &PgSpace) -> Result<Self> {
        let r = space.dim();
        let n = space.num_points() as usize;
        let mut state = Self {
            space: space.clone(),
            points: Vec::new(),
            tags: Vec::new(),
            member: Bitmap::new(n),
            covered: Bitmap::new(n),
            uncovered: n as u64,
            step: 0,
        };
        let mut bad = None;
        for_each_combination(k0.len(), r.min(k0.len()), |idx| {
            if bad.is_none() {
                let pts: Vec<PointId> = idx.iter().map(|&i| k0[i]).collect();
                if !general_position(&pts, space) {
                    bad = Some(pts);
                }
            }
        });
        if let Some(pts) = bad {
            return Err(Error::Precondition(format!("start points {pts:?} are not in general position")));
        }
        state.mark_spans(k0)?;
        Ok(state)
    }

    pub fn space(&self) -> &PgSpace {
        &self.space
    }

    /// The current set K in order of addition.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.member.get(p.index())
    }

    pub fn is_covered(&self, p: PointId) -> bool {
        self.covered.get(p.index())
    }

    pub fn covered(&self) -> &Bitmap {
        &self.covered
    }

    pub fn uncovered_count(&self) -> u64 {
        self.uncovered
    }

    pub fn uncovered_points(&self) -> Vec<PointId> {
        self.covered.zeros().map(|i| PointId(i as u32)).collect()
    }

    /// Adds `new` to K and marks the span of every R-subset of `K ∪ new` that
    /// contains a new point (the whole set if it has fewer than R points).
    /// Points already in K are ignored. Returns how many points became
    /// covered.
    pub fn mark_spans(&mut self, new: &[PointId]) -> Result<u64> {
        let n = self.space.num_points();
        let mut fresh: Vec<PointId> = Vec::new();
        for &p in new {
            if p.0 as u64 >= n {
                return Err(Error::InvalidConfig(format!("point id {p} outside {:?}", self.space)));
            }
            if fresh.contains(&p) {
                return Err(Error::DuplicatePoint(p.0 as u64));
            }
            if !self.contains(p) {
                fresh.push(p);
            }
        }
        if fresh.is_empty() {
            return Ok(0);
        }
        let old = self.points.len();
        for &p in &fresh {
            self.member.set(p.index());
            self.points.push(p);
            self.tags.push(self.step);
        }
        let all = &self.points;
        let k = self.space.dim().min(all.len());
        let mut subsets: Vec<Vec<PointId>> = Vec::new();
        for_each_combination(all.len(), k, |idx| {
            if idx.iter().any(|&i| i >= old) {
                subsets.push(idx.iter().map(|&i| all[i]).collect());
            }
        });
        let space = &self.space;
        let hits: Vec<Vec<u32>> = subsets
            .par_iter()
            .map(|pts| {
                let mut out = Vec::new();
                let basis = space.basis_of(pts);
                space.for_each_span_point(&basis, |id| out.push(id.0));
                out
            })
            .collect();
        let mut delta = 0;
        for list in hits {
            for id in list {
                if self.covered.set(id as usize) {
                    delta += 1;
                }
            }
        }
        self.uncovered -= delta;
        Ok(delta)
    }

    /// Checks the step preconditions (`new ⊂ Π`, general position, `Π` skew
    /// to K), then marks.
    pub fn extend(&mut self, plane: &DualHyperplane, new: &[PointId]) -> Result<u64> {
        let f = self.space.field().clone();
        for &p in new {
            if !plane.contains(&f, &self.space.point(p)) {
                return Err(Error::Precondition(format!("point {p} is not on the hyperplane {plane}")));
            }
        }
        if !general_position(new, &self.space) {
            return Err(Error::Precondition("new points are not in general position".into()));
        }
        if let Some(&p) = self.points.iter().find(|&&p| plane.contains(&f, &self.space.point(p))) {
            return Err(Error::Precondition(format!("hyperplane {plane} meets the current set at {p}")));
        }
        self.step += 1;
        self.mark_spans(new)
    }

    /// Number of uncovered points outside `Π` that adding `p` alone would
    /// cover. Direct count over the spans of `D ∪ {p}`.
    pub fn delta_of(&self, plane: &DualHyperplane, p: PointId) -> u64 {
        let f = &**self.space.field();
        let r = self.space.dim();
        let k = (r - 1).min(self.points.len());
        let mut seen = std::collections::HashSet::new();
        for_each_combination(self.points.len(), k, |idx| {
            let mut pts: Vec<PointId> = idx.iter().map(|&i| self.points[i]).collect();
            pts.push(p);
            let basis = self.space.basis_of(&pts);
            SpanWalker::new(f, &basis).walk(|v| {
                let id = self.space.index(v);
                if !self.covered.get(id.index()) && !plane.contains(f, v) {
                    seen.insert(id);
                }
            });
        });
        seen.len() as u64
    }
}

/// How the leading point is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Argmax of δ over all of `Π`.
    Exact,
    /// Argmax of δ over this many seeded-random points of `Π`.
    Sampled(usize),
    /// A uniform point of `Π`.
    Random,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exact => write!(f, "exact"),
            Strategy::Sampled(k) => write!(f, "sampled:{k}"),
            Strategy::Random => write!(f, "random"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Strategy::Exact),
            "random" => Ok(Strategy::Random),
            _ => {
                let k = s
                    .strip_prefix("sampled:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown strategy `{s}`; use exact, sampled:K or random")))?;
                Ok(Strategy::Sampled(k))
            }
        }
    }
}

/// `Π` as PG(R-1,q): a point of `Π` is identified by its coordinates with the
/// first coordinate where `h` is nonzero dropped.
struct PlaneChart {
    pivot: usize,
    local: PgSpace,
    /// Global id of each local point.
    global: Vec<PointId>,
}

impl PlaneChart {
    fn new(plane: &DualHyperplane, space: &PgSpace) -> Result<Self> {
        let f = space.field();
        let h = plane.coeffs();
        let pivot = h.iter().position(|&c| c != 0).expect("canonical hyperplane");
        let local = PgSpace::new(space.dim() - 1, f.clone())?;
        let mut full = vec![0; space.coords()];
        let global = local
            .ids()
            .map(|id| {
                let w = local.point(id);
                let mut acc = 0;
                let mut it = w.iter();
                for (k, slot) in full.iter_mut().enumerate() {
                    if k != pivot {
                        *slot = *it.next().unwrap();
                        acc = f.add(acc, f.mul(h[k], *slot));
                    }
                }
                // h[pivot] = 1
                full[pivot] = f.neg(acc);
                space.id_of(&full).expect("nonzero")
            })
            .collect();
        Ok(Self { pivot, local, global })
    }

    fn drop_pivot(&self, v: &[Elem], out: &mut Vec<Elem>) {
        out.clear();
        out.extend(v.iter().enumerate().filter(|&(k, _)| k != self.pivot).map(|(_, &x)| x));
    }
}

/// Vectors `v ∈ <D>` with `h·v = 1`, for each (R-1)-subset D of `k`.
fn affine_parts(k: &[PointId], plane: &DualHyperplane, space: &PgSpace) -> Vec<Vec<Vec<Elem>>> {
    let f = &**space.field();
    let r = space.dim();
    let mut out = Vec::new();
    for_each_combination(k.len(), (r - 1).min(k.len()), |idx| {
        let pts: Vec<PointId> = idx.iter().map(|&i| k[i]).collect();
        out.push(affine_part(&space.basis_of(&pts), plane, f));
    });
    out
}

fn affine_part(basis: &[Vec<Elem>], plane: &DualHyperplane, f: &FieldTables) -> Vec<Vec<Elem>> {
    let vals: Vec<Elem> = basis.iter().map(|b| plane.eval(f, b)).collect();
    let Some(p) = vals.iter().position(|&x| x != 0) else {
        return Vec::new();
    };
    let inv = f.inv(vals[p]).unwrap();
    let anchor: Vec<Elem> = basis[p].iter().map(|&x| f.mul(x, inv)).collect();
    let dirs: Vec<Vec<Elem>> = basis
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(i, b)| b.iter().zip(&anchor).map(|(&x, &a)| f.sub(x, f.mul(vals[i], a))).collect())
        .collect();
    let q = f.order();
    let mut out = Vec::with_capacity((q as usize).pow(dirs.len() as u32));
    let mut coef = vec![0u32; dirs.len()];
    loop {
        let mut v = anchor.clone();
        for (d, &c) in dirs.iter().zip(&coef) {
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(d) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        out.push(v);
        let Some(i) = coef.iter().rposition(|&c| c + 1 < q) else { break };
        coef[i] += 1;
        coef[i + 1..].fill(0);
    }
    out
}

/// δ for every point of `Π`, indexed by `chart.local` ids.
fn delta_table(state: &CoverageState, plane: &DualHyperplane, chart: &PlaneChart) -> Vec<u64> {
    let space = &state.space;
    let f = &**space.field();
    let parts: Vec<Vec<Vec<Elem>>> = affine_parts(&state.points, plane, space)
        .into_iter()
        .map(|part| {
            part.iter()
                .map(|v| {
                    let mut w = Vec::new();
                    chart.drop_pivot(v, &mut w);
                    w
                })
                .collect()
        })
        .collect();
    let targets: Vec<u32> =
        state.covered.zeros().filter(|&i| !plane.contains(f, &space.point(PointId(i as u32)))).map(|i| i as u32).collect();
    let m = chart.local.num_points() as usize;
    targets
        .par_chunks(256)
        .fold(
            || (vec![0u64; m], vec![u32::MAX; m]),
            |(mut counts, mut stamp), chunk| {
                let mut b = vec![0; space.coords()];
                let mut bd = Vec::new();
                let mut w = vec![0; space.dim()];
                for &bid in chunk {
                    space.point_into(PointId(bid), &mut b);
                    let s = f.inv(plane.eval(f, &b)).unwrap();
                    for x in b.iter_mut() {
                        *x = f.mul(*x, s);
                    }
                    chart.drop_pivot(&b, &mut bd);
                    for part in &parts {
                        for v in part {
                            for k in 0..w.len() {
                                w[k] = f.sub(v[k], bd[k]);
                            }
                            let loc = chart.local.id_of(&w).expect("v - B is nonzero").index();
                            if stamp[loc] != bid {
                                stamp[loc] = bid;
                                counts[loc] += 1;
                            }
                        }
                    }
                }
                (counts, stamp)
            },
        )
        .map(|(c, _)| c)
        .reduce(|| vec![0u64; m], |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
}

/// δ for every point of `Π`, keyed by global id, in increasing id order.
pub fn delta_by_point(state: &CoverageState, plane: &DualHyperplane) -> Result<Vec<(PointId, u64)>> {
    let chart = PlaneChart::new(plane, &state.space)?;
    let table = delta_table(state, plane, &chart);
    let mut out: Vec<(PointId, u64)> = chart.global.iter().copied().zip(table).collect();
    out.sort_unstable();
    Ok(out)
}

/// Picks the leading point of `Π` and returns it with its δ.
pub fn select_leading_point<R: Rng + ?Sized>(
    state: &CoverageState,
    plane: &DualHyperplane,
    strategy: Strategy,
    rng: &mut R,
) -> Result<(PointId, u64)> {
    match strategy {
        Strategy::Exact => {
            let all = delta_by_point(state, plane)?;
            // ties go to the smallest id, which comes first
            let best = all.iter().fold(None::<(PointId, u64)>, |acc, &(p, d)| match acc {
                Some((_, bd)) if bd >= d => acc,
                _ => Some((p, d)),
            });
            best.ok_or_else(|| Error::Precondition("hyperplane has no points".into()))
        }
        Strategy::Sampled(k) => {
            let pts = hyperplane_points(plane, &state.space);
            let sample: Vec<PointId> = if k >= pts.len() {
                pts
            } else {
                let mut s: Vec<PointId> = pts.choose_multiple(rng, k).copied().collect();
                s.sort_unstable();
                s
            };
            let scored: Vec<(PointId, u64)> = sample.par_iter().map(|&p| (p, state.delta_of(plane, p))).collect();
            let best = scored.iter().fold(None::<(PointId, u64)>, |acc, &(p, d)| match acc {
                Some((_, bd)) if bd >= d => acc,
                _ => Some((p, d)),
            });
            best.ok_or_else(|| Error::Precondition("hyperplane has no points".into()))
        }
        Strategy::Random => {
            let pts = hyperplane_points(plane, &state.space);
            let p = *pts.choose(rng).ok_or_else(|| Error::Precondition("hyperplane has no points".into()))?;
            Ok((p, state.delta_of(plane, p)))
        }
    }
}

/// Completes `leading` to R points of `Π` in general position by scanning
/// `Π` in id order and keeping every point that raises the rank.
pub fn complete_in_plane(leading: PointId, plane: &DualHyperplane, space: &PgSpace) -> Vec<PointId> {
    let f = space.field();
    let r = space.dim();
    let mut chosen = vec![leading];
    let mut rows = vec![space.point(leading)];
    for p in hyperplane_points(plane, space) {
        if chosen.len() == r {
            break;
        }
        if p == leading {
            continue;
        }
        rows.push(space.point(p));
        if row_reduce(f, rows.clone()).len() == rows.len() {
            chosen.push(p);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// The affine parts `Γ̂(D, B)` for every (R-1)-subset D of `k0`, as sorted
/// point lists.
pub fn gamma_sets(k0: &[PointId], b: PointId, plane: &DualHyperplane, space: &PgSpace) -> Result<Vec<Vec<PointId>>> {
    let f = &**space.field();
    let mut bv = space.point(b);
    let hb = plane.eval(f, &bv);
    if hb == 0 {
        return Err(Error::Precondition(format!("point {b} lies on the hyperplane")));
    }
    if k0.iter().any(|&p| plane.contains(f, &space.point(p))) {
        return Err(Error::Precondition("hyperplane meets the start set".into()));
    }
    let probe = CoverageState::init(k0, space)?;
    if probe.is_covered(b) {
        return Err(Error::Precondition(format!("point {b} is already covered by the start set")));
    }
    let s = f.inv(hb).unwrap();
    for x in bv.iter_mut() {
        *x = f.mul(*x, s);
    }
    let mut w = vec![0; space.coords()];
    Ok(affine_parts(k0, plane, space)
        .into_iter()
        .map(|part| {
            let mut ids: Vec<PointId> = part
                .iter()
                .map(|v| {
                    for k in 0..w.len() {
                        w[k] = f.sub(v[k], bv[k]);
                    }
                    space.id_of(&w).expect("nonzero")
                })
                .collect();
            ids.sort_unstable();
            ids
        })
        .collect())
}

/// `|⋃_D Γ̂(D, B)|`.
pub fn gamma_union_size(k0: &[PointId], b: PointId, plane: &DualHyperplane, space: &PgSpace) -> Result<u64> {
    let sets = gamma_sets(k0, b, plane, space)?;
    let mut all: Vec<PointId> = sets.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    Ok(all.len() as u64)
}

/// Lower bound `q^{R-3} C(L,R-1) (q + 1/2 - C(L,R-1)/2)` on `|⋃ Γ̂|`, valid
/// when `C(L,R-1) - 1 <= q`.
pub fn gamma_lower_bound(q: u64, r: usize, l: u64) -> Option<f64> {
    let n = binomial(l, r as u64 - 1) as f64;
    if n - 1.0 > q as f64 {
        return None;
    }
    Some((q as f64).powi(r as i32 - 3) * n * (q as f64 + 0.5 - 0.5 * n))
}

/// Step budget for Construction A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationCap {
    pub steps: u64,
    /// The unrounded value of the formula used.
    pub raw: f64,
    /// True when the decay-based formula applies (`C(L,R-1) - 1 <= q` and
    /// `β > 0`); false for the loose fallback `4 θ_{R-1,q}^{1/R} ln q`.
    pub applicable: bool,
}

/// Number of steps after which at most R points are left uncovered:
/// `⌈(R!/β^{R-1}) Φ* (q ln q)^{1/R} - 1⌉`.
pub fn iteration_cap(q: u64, r: usize, lambda: f64) -> IterationCap {
    let qf = q as f64;
    let ru = r as u32;
    let l = bounds::start_size(lambda, ru, qf);
    let b = bounds::beta(lambda, ru, qf);
    let hyp = (binomial(l, r as u64 - 1) as f64) - 1.0 <= qf;
    if hyp && b > 0.0 {
        if let Ok(phi_star) = bounds::phi_star(lambda, ru, qf) {
            let raw = (bounds::ln_factorial(ru) - (r - 1) as f64 * b.ln()).exp() * phi_star * bounds::root_q_ln_q(qf, ru) - 1.0;
            return IterationCap { steps: raw.ceil().max(0.0) as u64, raw, applicable: true };
        }
    }
    let raw = 4.0 * (theta(ru - 1, q) as f64).powf(1.0 / r as f64) * qf.ln();
    IterationCap { steps: raw.ceil() as u64, raw, applicable: false }
}

/// Construction A parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionConfig {
    pub q: u64,
    pub r: usize,
    pub lambda: f64,
    pub seed: u64,
    pub strategy: Strategy,
    /// Defaults to the iteration cap plus 8.
    pub max_steps: Option<u64>,
    pub verify: bool,
    /// Raise a start size `L <= R` to `R + 1` instead of rejecting it.
    pub clamp_start: bool,
    /// Resampling budget for the decay check of the sampled strategy.
    pub decay_retries: u32,
}

impl ConstructionConfig {
    pub fn new(q: u64, r: usize) -> Self {
        Self {
            q,
            r,
            lambda: bounds::lambda_min(r as u32),
            seed: 0,
            strategy: Strategy::Exact,
            max_steps: None,
            verify: true,
            clamp_start: false,
            decay_retries: 16,
        }
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn verify(mut self, verify: bool) -> Self {
        self.verify = verify;
        self
    }

    pub fn clamp_start(mut self, clamp: bool) -> Self {
        self.clamp_start = clamp;
        self
    }

    pub fn max_steps(mut self, steps: u64) -> Self {
        self.max_steps = Some(steps);
        self
    }
}

/// One step of the construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub w: usize,
    pub hyperplane: DualHyperplane,
    pub leading: PointId,
    pub added: Vec<PointId>,
    pub delta: u64,
    pub gain: u64,
    pub uncovered_in_plane: u64,
    pub uncovered_after: u64,
    pub retries: u32,
}

/// A point set together with its ambient space.
#[derive(Clone, Debug)]
pub struct SaturatingSet {
    pub space: PgSpace,
    pub points: Vec<PointId>,
}

impl SaturatingSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_parity_check(&self) -> Result<ParityCheck> {
        set_to_parity_check(&self.points, &self.space)
    }

    pub fn saturation_level(&self) -> Option<usize> {
        saturation_level(&self.points, &self.space)
    }
}

/// Trace and outcome of a construction run.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub config: ConstructionConfig,
    pub start_size: u64,
    pub start_clamped: bool,
    pub uncovered_start: u64,
    pub cap: IterationCap,
    pub max_steps: u64,
    pub gamma_bound: Option<f64>,
    pub steps: Vec<StepRecord>,
    pub patched: Vec<PointId>,
    pub final_size: usize,
    pub saturation_level: Option<usize>,
    pub verified: bool,
    pub notes: Vec<String>,
    pub wall_time: Duration,
}

impl ConstructionReport {
    /// Key-value header followed by the per-step table. Wall time is left
    /// out so that reruns render identically.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        writeln!(s, "construction A").unwrap();
        writeln!(s, "q = {}", c.q).unwrap();
        writeln!(s, "R = {}", c.r).unwrap();
        writeln!(s, "lambda = {}", c.lambda).unwrap();
        writeln!(s, "seed = {}", c.seed).unwrap();
        writeln!(s, "strategy = {}", c.strategy).unwrap();
        writeln!(s, "start_size = {}", self.start_size).unwrap();
        writeln!(s, "start_clamped = {}", self.start_clamped).unwrap();
        writeln!(s, "uncovered_start = {}", self.uncovered_start).unwrap();
        writeln!(s, "iteration_cap = {}", self.cap.steps).unwrap();
        writeln!(s, "iteration_cap_applicable = {}", self.cap.applicable).unwrap();
        writeln!(s, "max_steps = {}", self.max_steps).unwrap();
        match self.gamma_bound {
            Some(g) => writeln!(s, "gamma_bound = {g}").unwrap(),
            None => writeln!(s, "gamma_bound = n/a").unwrap(),
        }
        writeln!(s, "steps = {}", self.steps.len()).unwrap();
        writeln!(s, "patched = {}", self.patched.len()).unwrap();
        writeln!(s, "final_size = {}", self.final_size).unwrap();
        match self.saturation_level {
            Some(l) => writeln!(s, "saturation_level = {l}").unwrap(),
            None => writeln!(s, "saturation_level = n/a").unwrap(),
        }
        writeln!(s, "verified = {}", self.verified).unwrap();
        for n in &self.notes {
            writeln!(s, "note = {n}").unwrap();
        }
        writeln!(s, "w\thyperplane\tleading\tdelta\tgain\tuncovered_in_plane\tuncovered_after\tretries").unwrap();
        for st in &self.steps {
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                st.w,
                st.hyperplane,
                st.leading,
                st.delta,
                st.gain,
                st.uncovered_in_plane,
                st.uncovered_after,
                st.retries
            )
            .unwrap();
        }
        s
    }
}

/// Runs Construction A.
pub fn construction_a(cfg: &ConstructionConfig) -> Result<(SaturatingSet, ConstructionReport)> {
    let started = Instant::now();
    if !(cfg.lambda > 0.0) {
        return Err(Error::InvalidConfig(format!("lambda must be positive, got {}", cfg.lambda)));
    }
    if cfg.r < 3 {
        return Err(Error::InvalidConfig(format!("R must be at least 3, got {}", cfg.r)));
    }
    let field = FieldTables::of_order(cfg.q)?.shared();
    let space = PgSpace::new(cfg.r, field)?;
    let r = cfg.r;
    let mut notes = Vec::new();

    let mut l = bounds::start_size(cfg.lambda, r as u32, cfg.q as f64);
    let mut clamped = false;
    if l <= r as u64 {
        if !cfg.clamp_start {
            return Err(Error::InvalidConfig(format!("start size L = {l} must exceed R = {r}")));
        }
        notes.push(format!("start size raised from {l} to {}", r + 1));
        l = r as u64 + 1;
        clamped = true;
    }
    if l > cfg.q + 1 {
        return Err(Error::InvalidConfig(format!("start size L = {l} exceeds the arc size q + 1 = {}", cfg.q + 1)));
    }
    let nrc = normal_rational_curve(&space)?;
    let k0 = &nrc[..l as usize];
    let mut state = CoverageState::init(k0, &space)?;
    let uncovered_start = state.uncovered_count();

    let cap = iteration_cap(cfg.q, r, cfg.lambda);
    if !cap.applicable {
        notes.push("decay hypothesis C(L,R-1)-1 <= q fails; step budget uses the fallback cap".into());
    }
    let max_steps = cfg.max_steps.unwrap_or(cap.steps + 8);
    let gamma_bound = gamma_lower_bound(cfg.q, r, l);
    let theta_plane = theta(r as u32 - 1, cfg.q) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut steps = Vec::new();

    while state.uncovered_count() > r as u64 {
        if steps.len() as u64 >= max_steps {
            return Err(Error::MaxStepsExceeded(max_steps as usize));
        }
        let plane = find_skew_hyperplane(state.points(), &space, &mut rng)?;
        let before = state.uncovered_count();
        let in_plane = hyperplane_points(&plane, &space).iter().filter(|&&p| !state.is_covered(p)).count() as u64;

        let mut retries = 0;
        let (next, leading, delta) = loop {
            let (leading, delta) = select_leading_point(&state, &plane, cfg.strategy, &mut rng)?;
            let added = complete_in_plane(leading, &plane, &space);
            let mut trial = state.clone();
            trial.extend(&plane, &added)?;
            let decay_ok = match (cfg.strategy, gamma_bound) {
                (Strategy::Sampled(_), Some(g)) => trial.uncovered_count() as f64 <= before as f64 * (1.0 - g / theta_plane),
                _ => true,
            };
            if decay_ok || retries >= cfg.decay_retries {
                if !decay_ok {
                    notes.push(format!("step {}: decay inequality unmet after {retries} resamples", steps.len() + 1));
                }
                break (trial, leading, delta);
            }
            retries += 1;
        };
        state = next;
        let added = state.points()[state.points().len() - r..].to_vec();
        steps.push(StepRecord {
            w: steps.len() + 1,
            hyperplane: plane,
            leading,
            added,
            delta,
            gain: before - state.uncovered_count(),
            uncovered_in_plane: in_plane,
            uncovered_after: state.uncovered_count(),
            retries,
        });
    }

    let patched = state.uncovered_points();
    state.mark_spans(&patched)?;
    let points = state.points().to_vec();
    let set = SaturatingSet { space: space.clone(), points };

    let (level, verified) = if cfg.verify {
        let level = set.saturation_level();
        if let Some(l) = level {
            if l < r - 1 {
                notes.push(format!("saturation level {l} is below R-1"));
            }
        }
        (level, matches!(level, Some(l) if l < r))
    } else {
        (None, false)
    };

    let report = ConstructionReport {
        config: cfg.clone(),
        start_size: l,
        start_clamped: clamped,
        uncovered_start,
        cap,
        max_steps,
        gamma_bound,
        steps,
        patched,
        final_size: set.len(),
        saturation_level: level,
        verified,
        notes,
        wall_time: started.elapsed(),
    };
    Ok((set, report))
}

/// Outcome of a greedy run.
#[derive(Clone, Debug)]
pub struct BaselineReport {
    pub q: u64,
    pub r: usize,
    pub seed: u64,
    pub candidate_sample: usize,
    pub size: usize,
    pub saturation_level: Option<usize>,
    pub verified: bool,
    pub wall_time: Duration,
}

impl BaselineReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "greedy baseline").unwrap();
        writeln!(s, "q = {}", self.q).unwrap();
        writeln!(s, "R = {}", self.r).unwrap();
        writeln!(s, "seed = {}", self.seed).unwrap();
        writeln!(s, "candidate_sample = {}", self.candidate_sample).unwrap();
        writeln!(s, "size = {}", self.size).unwrap();
        match self.saturation_level {
            Some(l) => writeln!(s, "saturation_level = {l}").unwrap(),
            None => writeln!(s, "saturation_level = n/a").unwrap(),
        }
        writeln!(s, "verified = {}", self.verified).unwrap();
        s
    }
}

/// Randomized greedy: repeatedly add the candidate covering the most
/// uncovered points, where the candidates are a seeded sample of
/// `candidate_sample` points outside the set (all of them when 0), and ties
/// go to the earlier point of the shuffled sample.
pub fn greedy_baseline(q: u64, r: usize, seed: u64, candidate_sample: usize) -> Result<(SaturatingSet, BaselineReport)> {
    let started = Instant::now();
    if r < 1 {
        return Err(Error::InvalidConfig("R must be at least 1".into()));
    }
    let field = FieldTables::of_order(q)?.shared();
    let space = PgSpace::new(r, field)?;
    let f = &**space.field();
    let n = space.num_points() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: Vec<PointId> = Vec::new();
    let mut member = Bitmap::new(n);
    let mut covered = Bitmap::new(n);
    let mut uncovered = n;

    while uncovered > 0 {
        let mut pool: Vec<PointId> = space.ids().filter(|p| !member.get(p.index())).collect();
        pool.shuffle(&mut rng);
        if candidate_sample > 0 {
            pool.truncate(candidate_sample);
        }
        let k = (r - 1).min(set.len());
        let mut bases: Vec<Vec<PointId>> = Vec::new();
        for_each_combination(set.len(), k, |idx| bases.push(idx.iter().map(|&i| set[i]).collect()));
        let covered_ref = &covered;
        let gains: Vec<usize> = pool
            .par_iter()
            .map(|&p| {
                let mut seen = std::collections::HashSet::new();
                for base in &bases {
                    let mut pts = base.clone();
                    pts.push(p);
                    let basis = space.basis_of(&pts);
                    SpanWalker::new(f, &basis).walk(|v| {
                        let id = space.index(v);
                        if !covered_ref.get(id.index()) {
                            seen.insert(id);
                        }
                    });
                }
                seen.len()
            })
            .collect();
        let (best, _) = gains
            .iter()
            .enumerate()
            .fold((0, 0), |(bi, bg), (i, &g)| if g > bg { (i, g) } else { (bi, bg) });
        let p = pool[best];
        for base in &bases {
            let mut pts = base.clone();
            pts.push(p);
            let basis = space.basis_of(&pts);
            SpanWalker::new(f, &basis).walk(|v| {
                if covered.set(space.index(v).index()) {
                    uncovered -= 1;
                }
            });
        }
        if bases.is_empty() && covered.set(p.index()) {
            uncovered -= 1;
        }
        member.set(p.index());
        set.push(p);
    }

    let level = saturation_level(&set, &space);
    let verified = matches!(level, Some(l) if l < r);
    let report = BaselineReport {
        q,
        r,
        seed,
        candidate_sample,
        size: set.len(),
        saturation_level: level,
        verified,
        wall_time: started.elapsed(),
    };
    Ok((SaturatingSet { space, points: set }, report))
}

/// Coordinates of the points, one per line.
pub fn render_points(set: &SaturatingSet) -> String {
    set.points.iter().map(|&p| format_tuple(&set.space.point(p)) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::span_closure;

    fn space(n: usize, q: u64) -> PgSpace {
        PgSpace::new(n, FieldTables::of_order(q).unwrap().shared()).unwrap()
    }

    /// Unit vectors followed by the all-ones vector.
    fn frame(s: &PgSpace) -> Vec<PointId> {
        let n = s.coords();
        let mut out: Vec<PointId> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                s.index(&v)
            })
            .collect();
        out.push(s.index(&vec![1; n]));
        out
    }

    /// Union of the spans of all subsets of size at most R.
    fn brute_cover(points: &[PointId], s: &PgSpace) -> Bitmap {
        let mut b = Bitmap::new(s.num_points() as usize);
        for k in 1..=s.dim().min(points.len()) {
            for_each_combination(points.len(), k, |idx| {
                let pts: Vec<PointId> = idx.iter().map(|&i| points[i]).collect();
                for p in span_closure(&pts, s) {
                    b.set(p.index());
                }
            });
        }
        b
    }

    #[test]
    fn init_four_planes() {
        let s = space(3, 3);
        let k0 = &frame(&s)[..4];
        let st = CoverageState::init(k0, &s).unwrap();
        assert_eq!(st.covered(), &brute_cover(k0, &s));
        // points with no zero coordinate
        assert_eq!(st.uncovered_count(), 8);
        assert_eq!(st.uncovered_count(), 40 - st.covered().count_ones() as u64);
    }

    #[test]
    fn init_q13_matches_brute_complement() {
        let s = space(3, 13);
        assert_eq!(bounds::start_size(3.0, 3, 13.0), 9);
        let nrc = normal_rational_curve(&s).unwrap();
        let st = CoverageState::init(&nrc[..9], &s).unwrap();
        let brute = brute_cover(&nrc[..9], &s);
        assert_eq!(st.covered(), &brute);
        assert_eq!(st.uncovered_count(), s.num_points() - brute.count_ones() as u64);
        assert!(st.uncovered_count() <= 13u64.pow(3));
    }

    #[test]
    fn init_rejects_dependent_start() {
        let s = space(3, 3);
        let pts: Vec<PointId> = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]].iter().map(|v| s.index(v)).collect();
        assert!(matches!(CoverageState::init(&pts, &s), Err(Error::Precondition(_))));
    }

    #[test]
    fn coverage_soundness_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 4] {
            let s = space(3, q);
            let mut st = CoverageState::init(&frame(&s)[..3], &s).unwrap();
            for _ in 0..4 {
                let add: Vec<PointId> = (0..rng.gen_range(1..4)).map(|_| PointId(rng.gen_range(0..s.num_points() as u32))).collect();
                let mut add = add;
                add.sort();
                add.dedup();
                let before = st.uncovered_count();
                let d = st.mark_spans(&add).unwrap();
                assert_eq!(before - d, st.uncovered_count());
                assert_eq!(st.covered(), &brute_cover(st.points(), &s), "q={q}");
                assert!(st.points().iter().all(|&p| st.is_covered(p)));
            }
        }
    }

    #[test]
    fn marking_is_idempotent() {
        let s = space(3, 5);
        let nrc = normal_rational_curve(&s).unwrap();
        let mut st = CoverageState::init(&nrc[..4], &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = find_skew_hyperplane(st.points(), &s, &mut rng).unwrap();
        let (lead, _) = select_leading_point(&st, &h, Strategy::Exact, &mut rng).unwrap();
        let added = complete_in_plane(lead, &h, &s);
        let in_plane = hyperplane_points(&h, &s).iter().filter(|&&p| !st.is_covered(p)).count() as u64;
        let d = st.clone().extend(&h, &added).unwrap();
        assert!(d >= in_plane);
        st.mark_spans(&added).unwrap();
        assert_eq!(st.mark_spans(&added).unwrap(), 0);
    }

    #[test]
    fn extend_checks_preconditions() {
        let s = space(3, 3);
        let mut st = CoverageState::init(&frame(&s)[..4], &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = find_skew_hyperplane(st.points(), &s, &mut rng).unwrap();
        let off = s.ids().find(|&p| !h.contains(s.field(), &s.point(p))).unwrap();
        assert!(st.extend(&h, &[off]).is_err());
        let meets = DualHyperplane::new(&s, &[0, 0, 0, 1]).unwrap();
        let pts = hyperplane_points(&meets, &s);
        assert!(st.extend(&meets, &pts[..3]).is_err());
    }

    #[test]
    fn exact_delta_matches_direct_recount() {
        for (q, l) in [(13u64, 5usize), (7, 4), (5, 6)] {
            let s = space(3, q);
            let nrc = normal_rational_curve(&s).unwrap();
            let mut st = CoverageState::init(&nrc[..l], &s).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..2 {
                let h = find_skew_hyperplane(st.points(), &s, &mut rng).unwrap();
                let table = delta_by_point(&st, &h).unwrap();
                for &(p, d) in table.iter().step_by(7) {
                    assert_eq!(d, st.delta_of(&h, p), "q={q} p={p}");
                }
                let (lead, d) = select_leading_point(&st, &h, Strategy::Exact, &mut rng).unwrap();
                let max = table.iter().map(|x| x.1).max().unwrap();
                assert_eq!(d, max);
                assert_eq!(lead, table.iter().find(|x| x.1 == max).unwrap().0);
                let avg = table.iter().map(|x| x.1).sum::<u64>() as f64 / table.len() as f64;
                assert!(d as f64 >= avg);
                let added = complete_in_plane(lead, &h, &s);
                st.extend(&h, &added).unwrap();
            }
        }
    }

    #[test]
    fn delta_matches_remarking_in_pg4() {
        let s = space(4, 3);
        let st = CoverageState::init(&frame(&s)[..4], &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = find_skew_hyperplane(st.points(), &s, &mut rng).unwrap();
        for (p, d) in delta_by_point(&st, &h).unwrap().into_iter().step_by(5) {
            let mut t = st.clone();
            t.mark_spans(&[p]).unwrap();
            let newly = s
                .ids()
                .filter(|&x| !st.is_covered(x) && t.is_covered(x) && !h.contains(s.field(), &s.point(x)))
                .count() as u64;
            assert_eq!(d, newly);
        }
    }

    #[test]
    fn single_pair_gamma() {
        let s = space(3, 7);
        let nrc = normal_rational_curve(&s).unwrap();
        let k0 = &nrc[..2];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = find_skew_hyperplane(k0, &s, &mut rng).unwrap();
        let probe = CoverageState::init(k0, &s).unwrap();
        let b = s.ids().find(|&p| !probe.is_covered(p) && !h.contains(s.field(), &s.point(p))).unwrap();
        let sets = gamma_sets(k0, b, &h, &s).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].len(), 7);
        assert_eq!(gamma_lower_bound(7, 3, 2), Some(7.0));
    }

    #[test]
    fn iteration_cap_values() {
        let c = iteration_cap(49, 3, 1.0);
        assert!(c.applicable);
        // independent evaluation: L = 5, C(5,2) = 10, Φ* = 98/87
        let x = (49f64 * 49f64.ln()).cbrt();
        let beta = 1.0 - 2.0 / x;
        assert!(beta > 0.0);
        assert!((bounds::phi_star(1.0, 3, 49.0).unwrap() - 98.0 / 87.0).abs() < 1e-12);
        let expected = 6.0 / (beta * beta) * (98.0 / 87.0) * x - 1.0;
        assert!((c.raw - expected).abs() < 1e-9, "{c:?} vs {expected}");
        assert_eq!(c.steps, expected.ceil() as u64);
        assert!(!iteration_cap(13, 3, 3.0).applicable);
    }

    #[test]
    fn iteration_cap_grows_with_q() {
        let caps: Vec<f64> = (0..40).map(|i| iteration_cap(10u64.pow(4) + 997 * i * i, 3, 3.0).raw).collect();
        assert!(caps.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("exact".parse::<Strategy>().unwrap(), Strategy::Exact);
        assert_eq!("sampled:12".parse::<Strategy>().unwrap(), Strategy::Sampled(12));
        assert_eq!("random".parse::<Strategy>().unwrap(), Strategy::Random);
        assert!("sampled:0".parse::<Strategy>().is_err());
        assert!("best".parse::<Strategy>().is_err());
        assert_eq!(Strategy::Sampled(3).to_string(), "sampled:3");
    }

    #[test]
    fn small_construction_runs() {
        for strategy in [Strategy::Exact, Strategy::Sampled(5), Strategy::Random] {
            let cfg = ConstructionConfig::new(13, 3).lambda(3.0).strategy(strategy);
            let (set, rep) = construction_a(&cfg).unwrap();
            assert!(rep.verified, "{strategy}");
            assert_eq!(set.saturation_level(), Some(2));
            assert_eq!(rep.start_size, 9);
            for w in rep.steps.windows(2) {
                assert!(w[1].uncovered_after <= w[0].uncovered_after);
            }
            for st in &rep.steps {
                if st.uncovered_in_plane > 0 || st.delta > 0 {
                    assert!(st.gain > 0);
                }
                assert!(st.gain >= st.uncovered_in_plane + st.delta);
            }
        }
    }

    #[test]
    fn construction_rejects_short_start() {
        let cfg = ConstructionConfig::new(13, 3).lambda(1.0);
        assert!(matches!(construction_a(&cfg), Err(Error::InvalidConfig(_))));
        let (_, rep) = construction_a(&cfg.clamp_start(true)).unwrap();
        assert!(rep.start_clamped && rep.verified);
    }

    #[test]
    fn construction_is_deterministic() {
        let cfg = ConstructionConfig::new(11, 3).lambda(3.0).seed(4);
        let a = construction_a(&cfg).unwrap();
        let b = construction_a(&cfg).unwrap();
        assert_eq!(a.1.render(), b.1.render());
        assert_eq!(a.0.points, b.0.points);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn marking_matches_brute_cover(q in 2u64..=4, seed in 0u64..1000, batches in 1usize..5) {
            let s = space(3, q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut st = CoverageState::init(&frame(&s)[..2], &s).unwrap();
            for _ in 0..batches {
                let mut add: Vec<PointId> = (0..rng.gen_range(1..4)).map(|_| PointId(rng.gen_range(0..s.num_points() as u32))).collect();
                add.sort();
                add.dedup();
                st.mark_spans(&add).unwrap();
                proptest::prop_assert_eq!(st.covered(), &brute_cover(st.points(), &s));
            }
        }
    }

    #[test]
    fn greedy_small() {
        let (set, rep) = greedy_baseline(5, 3, 0, 0).unwrap();
        assert!(rep.verified);
        assert!(set.len() >= 4);
        let (set2, _) = greedy_baseline(5, 3, 0, 0).unwrap();
        assert_eq!(set.points, set2.points);
    }
}
