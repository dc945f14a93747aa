//! Closed-form constants and bound functions for the length function
//! `l_q(tR+1, R)`.
//!
//! Every function takes `q` as a real number. The symbols follow the usual
//! names for this family of bounds:
//!
//! * `X(q) = (q ln q)^{1/R}`
//! * `D_{λ,R} = λ + R·R!/λ^{R-1}` and its minimum `D_min` at `λ_min`
//! * `β(q) = λ - (R-1)/X(q)`
//! * `Υ(q) = λ^{R-1}/(R-1)! · (ln^{R-1} q / q)^{1/R}`
//! * `Φ(q) = 2/(2 - 1/q - Υ(q))`, `Ω(q) = λ + R·R!/β(q)^{R-1} · Φ(q)`
//! * `Φ*(q) = 2q/(2q - 1 - C(L,R-1))` with `L = ⌊λ X(q)⌋`, and `Ω*` likewise
//! * `Q_{λ,R}`: `⌈e^{R-1}⌉` when `Υ(e^{R-1}) <= 1`, else the ceiling of the
//!   root of `Υ(y) = 1` above `e^{R-1}`
//! * `C_{λ,R} = λ + R·R!/β(Q)^{R-1} · 2Q/(Q-1)`
//!
//! Factorials are handled through `ln R!` so that R can go to the thousands.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pg::binomial;

/// `ln n!`.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `θ_{m,q} = (q^{m+1}-1)/(q-1)` for real q.
pub fn theta_real(m: u32, q: f64) -> f64 {
    (0..=m).map(|k| q.powi(k as i32)).sum()
}

/// `(q ln q)^{1/R}`.
pub fn root_q_ln_q(q: f64, r: u32) -> f64 {
    (q * q.ln()).powf(1.0 / r as f64)
}

/// `ln(R·R!)`.
fn ln_r_rfact(r: u32) -> f64 {
    (r as f64).ln() + ln_factorial(r)
}

/// `D_{λ,R} = λ + R·R!/λ^{R-1}`.
pub fn d_lambda(lambda: f64, r: u32) -> f64 {
    lambda + (ln_r_rfact(r) - (r - 1) as f64 * lambda.ln()).exp()
}

/// `λ_min = (R(R-1)R!)^{1/R}`, the minimizer of `D_{λ,R}`.
pub fn lambda_min(r: u32) -> f64 {
    (((r as f64).ln() + ((r - 1) as f64).ln() + ln_factorial(r)) / r as f64).exp()
}

/// `D_min = R/(R-1) · λ_min`.
pub fn d_min(r: u32) -> f64 {
    r as f64 / (r - 1) as f64 * lambda_min(r)
}

/// The three λ-only constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub d: f64,
    pub lambda_min: f64,
    pub d_min: f64,
}

pub fn constants(lambda: f64, r: u32) -> Constants {
    Constants { d: d_lambda(lambda, r), lambda_min: lambda_min(r), d_min: d_min(r) }
}

pub fn beta(lambda: f64, r: u32, q: f64) -> f64 {
    lambda - (r - 1) as f64 / root_q_ln_q(q, r)
}

/// `ln Υ(q)`, well conditioned for large q.
pub fn ln_upsilon(lambda: f64, r: u32, q: f64) -> f64 {
    let k = (r - 1) as f64;
    k * lambda.ln() - ln_factorial(r - 1) + (k * q.ln().ln() - q.ln()) / r as f64
}

pub fn upsilon(lambda: f64, r: u32, q: f64) -> f64 {
    ln_upsilon(lambda, r, q).exp()
}

/// `Φ(q)`; fails where the denominator is not positive.
pub fn phi(lambda: f64, r: u32, q: f64) -> Result<f64> {
    let den = 2.0 - 1.0 / q - upsilon(lambda, r, q);
    if den <= 0.0 {
        return Err(Error::OutsideValidity(format!("2 - 1/q - Υ = {den} <= 0 at q = {q}")));
    }
    Ok(2.0 / den)
}

/// `R·R!/β^{R-1}`; fails where β is not positive.
fn tail_factor(lambda: f64, r: u32, q: f64) -> Result<f64> {
    let b = beta(lambda, r, q);
    if b <= 0.0 {
        return Err(Error::OutsideValidity(format!("β = {b} <= 0 at q = {q}")));
    }
    Ok((ln_r_rfact(r) - (r - 1) as f64 * b.ln()).exp())
}

pub fn omega(lambda: f64, r: u32, q: f64) -> Result<f64> {
    Ok(lambda + tail_factor(lambda, r, q)? * phi(lambda, r, q)?)
}

/// `L = ⌊λ (q ln q)^{1/R}⌋`, the starting arc size.
pub fn start_size(lambda: f64, r: u32, q: f64) -> u64 {
    (lambda * root_q_ln_q(q, r)).floor() as u64
}

/// `Φ*(q) = 2q/(2q - 1 - C(L,R-1))`.
pub fn phi_star(lambda: f64, r: u32, q: f64) -> Result<f64> {
    let b = binomial(start_size(lambda, r, q), (r - 1) as u64) as f64;
    let den = 2.0 * q - 1.0 - b;
    if den <= 0.0 {
        return Err(Error::OutsideValidity(format!("2q - 1 - C(L,R-1) = {den} <= 0 at q = {q}")));
    }
    Ok(2.0 * q / den)
}

pub fn omega_star(lambda: f64, r: u32, q: f64) -> Result<f64> {
    Ok(lambda + tail_factor(lambda, r, q)? * phi_star(lambda, r, q)?)
}

/// `ψ(q,R) = (2 + q/(q-1)) / (q ln q)^{1/R}`.
pub fn psi(q: f64, r: u32) -> f64 {
    (2.0 + q / (q - 1.0)) / root_q_ln_q(q, r)
}

/// The threshold `Q_{λ,R}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    pub value: u128,
    /// Root of `Υ(y) = 1` when that branch is taken.
    pub root: Option<f64>,
    /// False when the root lies within `1e-6` of an integer, so the ceiling
    /// may be off by one.
    pub exact: bool,
}

impl QValue {
    pub fn as_f64(&self) -> f64 {
        self.value as f64
    }
}

/// `Q_{λ,R}` by bisection on `ln Υ` to absolute tolerance `1e-6` (or the
/// resolution of f64), followed by an integer bracket check.
pub fn q_of_lambda(lambda: f64, r: u32) -> QValue {
    let e = ((r - 1) as f64).exp();
    let f = |y: f64| ln_upsilon(lambda, r, y);
    if f(e) <= 0.0 {
        return QValue { value: e.ceil() as u128, root: None, exact: true };
    }
    let mut lo = e;
    let mut hi = 2.0 * e;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-6 || mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    // Q is the least integer above e^{R-1} with Υ(Q) <= 1.
    let mut n = hi.ceil();
    // integers are only distinguishable below 2^52
    if n < 4.5e15 {
        while n - 1.0 > e && f(n - 1.0) <= 0.0 {
            n -= 1.0;
        }
        while f(n) > 0.0 {
            n += 1.0;
        }
    }
    let exact = n < 4.5e15 && (root - root.round()).abs() > 1e-6;
    QValue { value: n as u128, root: Some(root), exact }
}

/// `C_{λ,R}`.
pub fn c_of_lambda(lambda: f64, r: u32) -> Result<f64> {
    let q = q_of_lambda(lambda, r).as_f64();
    Ok(lambda + tail_factor(lambda, r, q)? * 2.0 * q / (q - 1.0))
}

/// Inputs for a bound evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub lambda: f64,
    pub r: u32,
    pub q: f64,
    pub t: u32,
    pub q0: Option<f64>,
}

impl BoundParams {
    pub fn new(lambda: f64, r: u32, q: f64) -> Self {
        Self { lambda, r, q, t: 1, q0: None }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidConfig(format!("λ must be positive, got {}", self.lambda)));
        }
        if self.r < 3 {
            return Err(Error::InvalidConfig(format!("R must be at least 3, got {}", self.r)));
        }
        if !(self.q >= 2.0) {
            return Err(Error::InvalidConfig(format!("q must be at least 2, got {}", self.q)));
        }
        if self.t == 0 {
            return Err(Error::InvalidConfig("t must be at least 1".into()));
        }
        Ok(())
    }
}

/// Every constant and bound function at one `(λ, R, q)`. Functions that are
/// undefined at this q are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValues {
    pub theta: f64,
    pub l: u64,
    pub beta: f64,
    pub upsilon: f64,
    pub phi: Option<f64>,
    pub phi_star: Option<f64>,
    pub omega: Option<f64>,
    pub omega_star: Option<f64>,
    pub q_threshold: QValue,
    pub c: Option<f64>,
    pub d: f64,
    pub d_min: f64,
    pub lambda_min: f64,
    pub psi: f64,
}

pub fn bound_functions(p: &BoundParams) -> Result<BoundValues> {
    p.validate()?;
    let (l, r, q) = (p.lambda, p.r, p.q);
    Ok(BoundValues {
        theta: theta_real(r, q),
        l: start_size(l, r, q),
        beta: beta(l, r, q),
        upsilon: upsilon(l, r, q),
        phi: phi(l, r, q).ok(),
        phi_star: phi_star(l, r, q).ok(),
        omega: omega(l, r, q).ok(),
        omega_star: omega_star(l, r, q).ok(),
        q_threshold: q_of_lambda(l, r),
        c: c_of_lambda(l, r).ok(),
        d: d_lambda(l, r),
        d_min: d_min(r),
        lambda_min: lambda_min(r),
        psi: psi(q, r),
    })
}

/// Which coefficient drives a length bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundMode {
    /// `Ω(q)`, valid for `q > Q_{λ,R}`.
    Decreasing,
    /// `C_{λ,R}` when `q0` is `None`, else `Ω(Q0)`; valid for q above the
    /// respective threshold.
    Constant { q0: Option<f64> },
    /// `D_min` (with `D_{λ,R}` and `3.43R` reported alongside), valid only
    /// for q large enough.
    Asymptotic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthBound {
    pub r_codim: u32,
    pub coefficient: f64,
    pub value: f64,
    /// The single-coefficient form `(c + R(2+q'/(q'-1))/X(q')) q^{(r-R)/R} (ln q)^{1/R}`
    /// (with the `2R/X` variant for t = 1).
    pub chained: f64,
    pub guaranteed: bool,
    /// `c X(q) + 2R <= q + 1`, checked for t >= 2.
    pub side_condition: Option<bool>,
    pub notes: Vec<String>,
    pub asymptotic: Option<AsymptoticTerms>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticTerms {
    pub d_lambda: f64,
    pub d_min: f64,
    pub universal: f64,
    pub psi: f64,
}

/// Upper bound on `l_q(tR+1, R)`.
pub fn length_bound(q: f64, r: u32, t: u32, lambda: f64, mode: BoundMode) -> Result<LengthBound> {
    BoundParams { lambda, r, q, t, q0: None }.validate()?;
    let qv = q_of_lambda(lambda, r);
    let qt = qv.as_f64();
    let mut notes = Vec::new();
    let mut guaranteed = true;
    let mut asymptotic = None;

    let (coefficient, q_ref) = match mode {
        BoundMode::Decreasing => {
            if q <= qt {
                guaranteed = false;
                notes.push(format!("q = {q} is not above Q = {}", qv.value));
            }
            (omega(lambda, r, q)?, q)
        }
        BoundMode::Constant { q0: None } => {
            if q <= qt {
                guaranteed = false;
                notes.push(format!("q = {q} is not above Q = {}", qv.value));
            }
            (c_of_lambda(lambda, r)?, qt)
        }
        BoundMode::Constant { q0: Some(q0) } => {
            if q0 <= qt {
                guaranteed = false;
                notes.push(format!("Q0 = {q0} is not above Q = {}", qv.value));
            }
            if q <= q0 {
                guaranteed = false;
                notes.push(format!("q = {q} is not above Q0 = {q0}"));
            }
            (omega(lambda, r, q0)?, q0)
        }
        BoundMode::Asymptotic => {
            guaranteed = false;
            notes.push("holds only for q large enough".into());
            let terms = AsymptoticTerms {
                d_lambda: d_lambda(lambda, r),
                d_min: d_min(r),
                universal: 3.43 * r as f64,
                psi: psi(q, r),
            };
            asymptotic = Some(terms);
            (terms.d_min, q)
        }
    };

    let x = root_q_ln_q(q, r);
    let rf = r as f64;
    let r_codim = t * r + 1;
    let (value, chained, side_condition) = if t == 1 {
        let value = coefficient * x + 2.0 * rf;
        (value, (coefficient + 2.0 * rf / root_q_ln_q(q_ref, r)) * x, None)
    } else {
        let scale = q.powf((r_codim - r) as f64 / rf) * q.ln().powf(1.0 / rf);
        let value = coefficient * scale + 2.0 * rf * q.powi(t as i32 - 1) + rf * theta_real(t - 1, q);
        let chained = (coefficient + rf * (2.0 + q_ref / (q_ref - 1.0)) / root_q_ln_q(q_ref, r)) * scale;
        let side = coefficient * x + 2.0 * rf <= q + 1.0;
        if !side {
            guaranteed = false;
            notes.push("side condition c·(q ln q)^{1/R} + 2R <= q + 1 fails".into());
        }
        (value, chained, Some(side))
    };
    Ok(LengthBound { r_codim, coefficient, value, chained, guaranteed, side_condition, notes, asymptotic })
}

/// Compares `D(a)` with `D(b)` without forming either value:
/// `D(a) - D(b) = (a - b)(1 - Σ_{j<k} R·R!/(a^{j+1} b^{k-j}))` with `k = R - 1`.
fn d_less(a: f64, b: f64, r: u32) -> bool {
    let k = r - 1;
    let ln_a = ln_r_rfact(r);
    let (la, lb) = (a.ln(), b.ln());
    let s: f64 = (0..k).map(|j| (ln_a - (j + 1) as f64 * la - (k - j) as f64 * lb).exp()).sum();
    (a - b) * (1.0 - s) < 0.0
}

/// Minimizes `D_{λ,R}` over λ by golden-section search.
pub fn golden_section_lambda(r: u32) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (1e-3, 4.0 * r as f64 + 10.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    while hi - lo > 1e-13 * hi {
        if d_less(c, d, r) {
            hi = d;
            d = c;
            c = hi - inv_phi * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + inv_phi * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// One `D_min < c·R` claim.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DminCheck {
    pub r: u32,
    pub d_min: f64,
    pub factor: f64,
    pub holds: bool,
}

/// Thresholds `(c, R_from)` such that `D_min < c R` for all `R >= R_from`.
pub const DMIN_THRESHOLDS: [(f64, u32); 4] = [(1.651, 3), (0.961, 7), (0.498, 36), (0.4, 178)];

/// Checks every applicable threshold for `R = 3..=r_max`.
pub fn dmin_inequalities(r_max: u32) -> Vec<DminCheck> {
    let mut out = Vec::new();
    for r in 3..=r_max {
        let dm = d_min(r);
        for &(factor, from) in &DMIN_THRESHOLDS {
            if r >= from {
                out.push(DminCheck { r, d_min: dm, factor, holds: dm < factor * r as f64 });
            }
        }
    }
    out
}

/// One row of the constants table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub r: u32,
    pub lambda: f64,
    pub is_lambda_min: bool,
    /// `e^{R-1}`.
    pub e: f64,
    pub upsilon_e: f64,
    pub q: QValue,
    pub c: Option<f64>,
    /// `(Q0, Ω(Q0))`, with `None` where `Q0 <= Q_{λ,R}`.
    pub omega_q0: Vec<(f64, Option<f64>)>,
    pub d: f64,
    /// `D_min / R` on the λ_min rows.
    pub d_min_ratio: Option<f64>,
}

/// λ choice for a table row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LambdaChoice {
    Value(f64),
    Min,
}

/// The standard rows: R = 3..7 with their λ values and `λ_min`.
pub fn table1_default_rows() -> Vec<(u32, Vec<LambdaChoice>)> {
    use LambdaChoice::*;
    vec![
        (3, vec![Value(2.35), Value(3.0), Min]),
        (4, vec![Value(2.2), Value(2.5), Min]),
        (5, vec![Value(2.3), Value(2.5), Min]),
        (6, vec![Value(2.5), Min]),
        (7, vec![Value(2.95), Min]),
    ]
}

pub const TABLE1_Q0: [f64; 2] = [5e4, 15e4];

pub fn table1(rows: &[(u32, Vec<LambdaChoice>)], q0s: &[f64]) -> Vec<Table1Row> {
    let mut out = Vec::new();
    for (r, lambdas) in rows {
        let r = *r;
        for &choice in lambdas {
            let (lambda, is_min) = match choice {
                LambdaChoice::Value(l) => (l, false),
                LambdaChoice::Min => (lambda_min(r), true),
            };
            let e = ((r - 1) as f64).exp();
            let q = q_of_lambda(lambda, r);
            let omega_q0 = q0s
                .iter()
                .map(|&q0| (q0, if q0 > q.as_f64() { omega(lambda, r, q0).ok() } else { None }))
                .collect();
            out.push(Table1Row {
                r,
                lambda,
                is_lambda_min: is_min,
                e,
                upsilon_e: upsilon(lambda, r, e),
                q,
                c: c_of_lambda(lambda, r).ok(),
                omega_q0,
                d: d_lambda(lambda, r),
                d_min_ratio: is_min.then(|| d_min(r) / r as f64),
            });
        }
    }
    out
}

/// Plain-text rendering of table rows.
pub fn render_table1(rows: &[Table1Row]) -> String {
    let mut s = String::new();
    let q0s: Vec<f64> = rows.first().map(|r| r.omega_q0.iter().map(|x| x.0).collect()).unwrap_or_default();
    write!(s, "R\tlambda\tE\tUpsilon(E)\tQ\tC").unwrap();
    for q0 in &q0s {
        write!(s, "\tOmega({q0})").unwrap();
    }
    writeln!(s, "\tD\tD/R").unwrap();
    for row in rows {
        let lam = if row.is_lambda_min { format!("min={:.5}", row.lambda) } else { format!("{}", row.lambda) };
        let c = row.c.map_or("-".to_string(), |c| format!("{c:.4}"));
        write!(s, "{}\t{}\t{:.2}\t{:.4}\t{}\t{}", row.r, lam, row.e, row.upsilon_e, row.q.value, c).unwrap();
        for (_, om) in &row.omega_q0 {
            write!(s, "\t{}", om.map_or("-".to_string(), |v| format!("{v:.4}"))).unwrap();
        }
        let ratio = row.d_min_ratio.map_or("-".to_string(), |v| format!("{v:.4}"));
        writeln!(s, "\t{:.4}\t{}", row.d, ratio).unwrap();
    }
    s
}

/// Points of the t = 1 decreasing-function bound and its value divided by
/// `(q ln q)^{1/R}`, on a geometric grid of `points` values of q.
pub fn curve(lambda: f64, r: u32, q_from: f64, q_to: f64, points: usize) -> Result<Vec<(f64, f64, f64)>> {
    if !(q_from >= 2.0 && q_to >= q_from && points >= 1) {
        return Err(Error::InvalidConfig("curve needs 2 <= q-from <= q-to and points >= 1".into()));
    }
    let step = if points == 1 { 0.0 } else { (q_to / q_from).ln() / (points - 1) as f64 };
    (0..points)
        .map(|i| {
            let q = q_from * (step * i as f64).exp();
            let b = length_bound(q, r, 1, lambda, BoundMode::Decreasing)?;
            Ok((q, b.value, b.value / root_q_ln_q(q, r)))
        })
        .collect()
}

pub fn render_curve_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut s = String::from("q,value,normalized\n");
    for (q, v, n) in rows {
        writeln!(s, "{q:.6},{v:.6},{n:.6}").unwrap();
    }
    s
}

/// A comparator bound from the literature on `l_q(r, R)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceBound {
    pub name: &'static str,
    /// `None` when only the order of growth is known.
    pub value: Option<f64>,
    /// Whether `(q, r, R)` lies in the stated range.
    pub in_range: bool,
    pub detail: String,
}

/// The R = 2 coefficient: `0.998√3` up to 160001, `1.05√3` up to 321007, and
/// `√(3 + ln ln q/ln q) + √(1/(3 ln² q)) + 3/√(q ln q)` beyond.
pub fn phi_r2(q: f64) -> f64 {
    if q <= 160001.0 {
        0.998 * 3f64.sqrt()
    } else if q <= 321007.0 {
        1.05 * 3f64.sqrt()
    } else {
        let l = q.ln();
        (3.0 + l.ln() / l).sqrt() + (1.0 / (3.0 * l * l)).sqrt() + 3.0 / (q * l).sqrt()
    }
}

/// Limit of [`phi_r2`] as q grows.
pub const PHI_R2_LIMIT: f64 = 1.7320508075688772;

fn floor_pow(q: f64, e: f64) -> f64 {
    q.powf(e).floor()
}

/// R = 2, odd `r = 2t+1 >= 3`, `r ∉ {9, 13}`.
pub fn r2_bound(q: f64, r: u32) -> ReferenceBound {
    let in_range = r >= 3 && r % 2 == 1 && r != 9 && r != 13;
    let rf = r as f64;
    let value = phi_r2(q) * q.powf((rf - 2.0) / 2.0) * q.ln().sqrt() + 2.0 * floor_pow(q, (rf - 5.0) / 2.0);
    ReferenceBound { name: "R=2 odd r", value: Some(value), in_range, detail: format!("Phi(q) = {:.6}", phi_r2(q)) }
}

/// R = 3, `r = 3t+1`; `c4` is 2.61 on [13, 4373] and 2.65 above that (to 7057,
/// or 7577 when r = 4).
pub fn r3_bound_r4(q: f64, r: u32) -> ReferenceBound {
    let top = if r == 4 { 7577.0 } else { 7057.0 };
    let c4 = if q <= 4373.0 { 2.61 } else { 2.65 };
    let in_range = r >= 4 && r % 3 == 1 && (13.0..=top).contains(&q);
    let rf = r as f64;
    let value = c4 * q.powf((rf - 3.0) / 3.0) * q.ln().cbrt()
        + 3.0 * floor_pow(q, (rf - 7.0) / 3.0)
        + 2.0 * floor_pow(q, (rf - 10.0) / 3.0)
        + if r == 13 { 1.0 } else { 0.0 };
    ReferenceBound { name: "R=3 r=3t+1", value: Some(value), in_range, detail: format!("c4 = {c4}") }
}

/// R = 3, `r = 3t+2`; `c5` is 2.785 on [11, 401] and 2.884 on (401, 839].
pub fn r3_bound_r5(q: f64, r: u32) -> ReferenceBound {
    let c5 = if q <= 401.0 { 2.785 } else { 2.884 };
    let in_range = r >= 5 && r % 3 == 2 && (11.0..=839.0).contains(&q);
    let rf = r as f64;
    let value = c5 * q.powf((rf - 3.0) / 3.0) * q.ln().cbrt()
        + 3.0 * floor_pow(q, (rf - 8.0) / 3.0)
        + 2.0 * floor_pow(q, (rf - 11.0) / 3.0)
        + if r == 14 { 1.0 } else { 0.0 };
    ReferenceBound { name: "R=3 r=3t+2", value: Some(value), in_range, detail: format!("c5 = {c5}") }
}

/// Direct sum of an R = 2 code of codimension `2t+1` with `R-2` Hamming codes
/// of codimension t, for `r = tR+1`.
pub fn direct_sum_bound(q: f64, r: u32, radius: u32) -> ReferenceBound {
    let in_shape = radius >= 3 && r > radius && (r - 1) % radius == 0;
    let t = if in_shape { (r - 1) / radius } else { 1 };
    let first = r2_bound(q, 2 * t + 1);
    let value = first.value.unwrap() + (radius - 2) as f64 * theta_real(t - 1, q);
    let exponent = (r as f64 - radius as f64) / radius as f64 + (radius as f64 - 2.0) / (2.0 * radius as f64);
    ReferenceBound {
        name: "direct sum",
        value: Some(value),
        in_range: in_shape && first.in_range,
        detail: format!("order q^{exponent:.6} sqrt(ln q)"),
    }
}

/// Every comparator that applies to `(q, r, R)`, plus the lower-bound growth
/// order, whose constant is not known.
pub fn reference_bounds(q: f64, r: u32, radius: u32) -> Vec<ReferenceBound> {
    let mut out = Vec::new();
    match radius {
        2 => out.push(r2_bound(q, r)),
        3 if r % 3 == 1 => out.push(r3_bound_r4(q, r)),
        3 if r % 3 == 2 => out.push(r3_bound_r5(q, r)),
        _ => {}
    }
    if radius >= 3 {
        out.push(direct_sum_bound(q, r, radius));
    }
    let exponent = (r as f64 - radius as f64) / radius as f64;
    out.push(ReferenceBound {
        name: "lower bound order",
        value: None,
        in_range: true,
        detail: format!("c q^{exponent:.6}, constant unspecified"),
    });
    out
}
