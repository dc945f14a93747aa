//! The q^m-concatenating lift: from an `[n0, n0 - r0]_q R` code with a short
//! length, build codes of codimension `r0 + Rm` and covering radius at most R.
//!
//! Columns of the lifted parity-check matrix, in order:
//!
//! * type A, for each starting column `h_i` and each `ξ ∈ GF(q^m)`:
//!   `(h_i; rep(ξ μ_{i,1}); ...; rep(ξ μ_{i,R}))`;
//! * type B, for each block `k`: the points of PG(m-1,q) in block k's m rows;
//! * padding (optional): `q^m` copies of each block's first type-B column.
//!
//! Here `rep` writes an element of GF(q^m) in the power basis of the primitive
//! element of GF(q^m), and the multipliers `μ_i ∈ GF(q)^R` are points of the
//! normal rational curve of PG(R-1,q), so any R of them are independent.
//!
//! Radius: a syndrome `(s; v_1..v_R)` with `s = Σ_{k≤R'} c_k h_{i_k}` takes
//! type-A columns at `i_1..i_R'`. Their block contributions are
//! `Σ_k c_k ξ_k μ_{i_k}` (coordinates in GF(q^m)); an invertible R'×R' minor
//! of the μ matrix fixes R' blocks exactly, and each of the other R - R'
//! blocks is matched by one type-B column.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::codes::{covering_radius, ParityCheck};
use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, FieldTables};
use crate::pg::{for_each_combination, format_tuple, normal_rational_curve, rank_of_vectors, theta, PgSpace};

/// Input of one lift.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    pub h0: ParityCheck,
    pub m: u32,
    pub radius: usize,
    pub pad: bool,
    /// One tuple in GF(q)^R per column of `h0`.
    pub mu: Vec<Vec<Elem>>,
}

impl LiftSpec {
    /// Uses the default multipliers from [`default_multipliers`].
    pub fn new(h0: ParityCheck, m: u32, radius: usize, pad: bool) -> Result<Self> {
        let mu = default_multipliers(h0.field(), h0.cols(), radius)?;
        Ok(Self { h0, m, radius, pad, mu })
    }

    /// Unpadded length `n0 q^m + R θ_{m-1,q}`, plus `R q^m` if padded.
    pub fn length(&self) -> u128 {
        let q = self.h0.field().order() as u64;
        let m = self.m;
        let base = self.h0.cols() as u128 * (q as u128).pow(m) + self.radius as u128 * theta(m - 1, q);
        if self.pad {
            base + self.radius as u128 * (q as u128).pow(m)
        } else {
            base
        }
    }

    pub fn codimension(&self) -> usize {
        self.h0.rows() + self.radius * self.m as usize
    }

    /// Sidecar text recording the parameters of the lift.
    pub fn manifest(&self) -> String {
        let f = self.h0.field();
        let mut s = String::new();
        writeln!(s, "lift").unwrap();
        writeln!(s, "q = {}", f.header()).unwrap();
        writeln!(s, "n0 = {}", self.h0.cols()).unwrap();
        writeln!(s, "r0 = {}", self.h0.rows()).unwrap();
        writeln!(s, "m = {}", self.m).unwrap();
        writeln!(s, "R = {}", self.radius).unwrap();
        writeln!(s, "padded = {}", self.pad).unwrap();
        writeln!(s, "n = {}", self.length()).unwrap();
        writeln!(s, "r = {}", self.codimension()).unwrap();
        for (i, mu) in self.mu.iter().enumerate() {
            writeln!(s, "mu {} = {}", i, format_tuple(mu)).unwrap();
        }
        s
    }
}

/// The first `n0` points of the normal rational curve of PG(R-1,q) in id
/// order. When the curve does not exist (`q < R`) or is too short, and
/// `n0 <= R`, the first `n0` unit vectors are used instead.
pub fn default_multipliers(field: &Arc<FieldTables>, n0: usize, radius: usize) -> Result<Vec<Vec<Elem>>> {
    if radius == 0 {
        return Err(Error::InvalidConfig("R must be at least 1".into()));
    }
    let q = field.order() as usize;
    if n0 > (q + 1).max(radius) {
        return Err(Error::Precondition(format!("starting length {n0} exceeds max(q + 1, R) = {}", (q + 1).max(radius))));
    }
    let units = || {
        (0..n0)
            .map(|i| {
                let mut v = vec![0; radius];
                v[i] = 1;
                v
            })
            .collect()
    };
    if radius == 1 {
        return Ok(vec![vec![1]; n0]);
    }
    let space = PgSpace::new(radius - 1, field.clone())?;
    match normal_rational_curve(&space) {
        Ok(nrc) if nrc.len() >= n0 => Ok(nrc[..n0].iter().map(|&p| space.point(p)).collect()),
        _ => Ok(units()),
    }
}

/// Coordinates of GF(q^m) elements in the power basis `1, α, ..., α^{m-1}`
/// of the primitive element α, over the embedded GF(q).
struct PowerBasis {
    coords: Vec<Vec<Elem>>,
}

impl PowerBasis {
    fn new(emb: &Embedding, m: u32) -> Self {
        let sub = emb.sub();
        let sup = emb.sup();
        let q = sub.order();
        let alpha = sup.primitive_element();
        let powers: Vec<Elem> = (0..m as u64).map(|j| sup.pow(alpha, j)).collect();
        let mut coords = vec![Vec::new(); sup.order() as usize];
        let mut c = vec![0u32; m as usize];
        loop {
            let x = c.iter().zip(&powers).fold(0, |acc, (&cj, &pj)| sup.add(acc, sup.mul(emb.apply(cj), pj)));
            coords[x as usize] = c.clone();
            let Some(i) = c.iter().rposition(|&v| v + 1 < q) else { break };
            c[i] += 1;
            c[i + 1..].fill(0);
        }
        Self { coords }
    }

    fn rep(&self, x: Elem) -> &[Elem] {
        &self.coords[x as usize]
    }
}

/// Canonical points of PG(m-1,q) in id order.
fn projective_points(field: &Arc<FieldTables>, m: u32) -> Result<Vec<Vec<Elem>>> {
    if m == 1 {
        return Ok(vec![vec![1]]);
    }
    let space = PgSpace::new(m as usize - 1, field.clone())?;
    Ok(space.ids().map(|p| space.point(p)).collect())
}

/// Builds the lifted parity-check matrix.
pub fn lift_qm(spec: &LiftSpec) -> Result<ParityCheck> {
    let h0 = &spec.h0;
    let f = h0.field();
    let (r0, n0, big_r, m) = (h0.rows(), h0.cols(), spec.radius, spec.m);
    if m == 0 {
        return Err(Error::InvalidConfig("extension degree m must be at least 1".into()));
    }
    if big_r == 0 {
        return Err(Error::InvalidConfig("R must be at least 1".into()));
    }
    let q = f.order() as usize;
    if n0 > (q + 1).max(big_r) {
        return Err(Error::Precondition(format!("starting length {n0} exceeds max(q + 1, R) = {}", (q + 1).max(big_r))));
    }
    let rank = h0.rank();
    if rank < r0 {
        return Err(Error::RankDeficient { rank, rows: r0 });
    }
    if spec.mu.len() != n0 {
        return Err(Error::LengthMismatch { expected: n0, got: spec.mu.len() });
    }
    for mu in &spec.mu {
        if mu.len() != big_r {
            return Err(Error::LengthMismatch { expected: big_r, got: mu.len() });
        }
        if let Some(&x) = mu.iter().find(|&&x| !f.contains(x as u64)) {
            return Err(Error::ElementOutOfRange { value: x as u64, order: q as u64 });
        }
    }
    let k = big_r.min(n0);
    let mut dependent = false;
    for_each_combination(n0, k, |idx| {
        let rows: Vec<Vec<Elem>> = idx.iter().map(|&i| spec.mu[i].clone()).collect();
        if rank_of_vectors(f, &rows) < k {
            dependent = true;
        }
    });
    if dependent {
        return Err(Error::Precondition(format!("some {k} multiplier tuples are linearly dependent")));
    }
    let sup = FieldTables::new(f.characteristic(), f.degree() * m)?.shared();
    let emb = Embedding::new(f.clone(), sup.clone())?;
    let basis = PowerBasis::new(&emb, m);
    let rows = r0 + big_r * m as usize;
    let mu_up: Vec<Vec<Elem>> = spec.mu.iter().map(|mu| mu.iter().map(|&x| emb.apply(x)).collect()).collect();

    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(spec.length() as usize);
    for (i, h) in h0.columns().iter().enumerate() {
        for xi in sup.elements() {
            let mut col = h.clone();
            for &mu in &mu_up[i] {
                col.extend_from_slice(basis.rep(sup.mul(xi, mu)));
            }
            cols.push(col);
        }
    }
    let points = projective_points(f, m)?;
    let block_col = |k: usize, p: &[Elem]| {
        let mut col = vec![0; rows];
        col[r0 + k * m as usize..r0 + (k + 1) * m as usize].copy_from_slice(p);
        col
    };
    for k in 0..big_r {
        for p in &points {
            cols.push(block_col(k, p));
        }
    }
    if spec.pad {
        let copies = sup.order() as usize;
        for k in 0..big_r {
            let col = block_col(k, &points[0]);
            cols.extend(std::iter::repeat(col).take(copies));
        }
    }
    ParityCheck::new(f.clone(), rows, cols)
}

/// Numeric check of the length chain for one lift, with
/// `n0 = φ (q ln q)^{1/R} + c2`:
/// `n = φ q^m (q ln q)^{1/R} + c2 q^m + R θ_{m,q}
///    < (φ + (c2 + R q/(q-1)) / (q ln q)^{1/R}) q^m (q ln q)^{1/R}`.
/// When `r0 = R + 1`, `q^m (q ln q)^{1/R} = q^{(r-R)/R} (ln q)^{1/R}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthChain {
    pub phi: f64,
    pub c2: f64,
    /// Padded length `n0 q^m + R θ_{m,q}`.
    pub length: u128,
    /// The middle expression evaluated with φ.
    pub expanded: f64,
    pub upper: f64,
    /// True when `r0 = R + 1`, so the chain is in terms of `q^{(r-R)/R}`.
    pub codimension_form: bool,
    pub holds: bool,
}

pub fn length_chain(n0: usize, r0: usize, q: u64, radius: usize, m: u32, c2: f64) -> LengthChain {
    let qf = q as f64;
    let root = (qf * qf.ln()).powf(1.0 / radius as f64);
    let phi = (n0 as f64 - c2) / root;
    let qm = qf.powi(m as i32);
    let length = n0 as u128 * (q as u128).pow(m) + radius as u128 * theta(m, q);
    let expanded = phi * qm * root + c2 * qm + radius as f64 * theta(m, q) as f64;
    let upper = (phi + (c2 + radius as f64 * qf / (qf - 1.0)) / root) * qm * root;
    let rel = ((expanded - length as f64) / length as f64).abs();
    let codimension_form = r0 == radius + 1;
    let holds = rel < 1e-9 && (length as f64) < upper;
    LengthChain { phi, c2, length, expanded, upper, codimension_form, holds }
}

/// One row of a family check.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub m: u32,
    pub r: usize,
    pub n: usize,
    pub n_padded: u128,
    pub radius: Option<usize>,
    pub chain: LengthChain,
    pub ok: bool,
}

/// Lifts for every `m` in `m_range`, verifying each radius with the
/// syndrome oracle and the length chain with `c2 = 2R`.
pub fn verify_family(h0: &ParityCheck, m_range: std::ops::RangeInclusive<u32>, radius: usize) -> Result<Vec<FamilyMember>> {
    let r0_radius = covering_radius(h0)?.radius;
    if r0_radius > radius {
        return Err(Error::Precondition(format!("starting code has radius {r0_radius} > {radius}")));
    }
    let q = h0.field().order() as u64;
    let mut out = Vec::new();
    for m in m_range {
        let spec = LiftSpec::new(h0.clone(), m, radius, false)?;
        let h = lift_qm(&spec)?;
        let rad = covering_radius(&h)?.radius;
        let chain = length_chain(h0.cols(), h0.rows(), q, radius, m, 2.0 * radius as f64);
        let padded = LiftSpec { pad: true, ..spec.clone() }.length();
        out.push(FamilyMember {
            m,
            r: h.rows(),
            n: h.cols(),
            n_padded: padded,
            radius: Some(rad),
            ok: rad <= radius && chain.holds,
            chain,
        });
    }
    Ok(out)
}

pub fn render_family(members: &[FamilyMember]) -> String {
    let mut s = String::from("m\tr\tn\tn_padded\tradius\tphi\tupper\tchain\n");
    for f in members {
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.3}\t{}",
            f.m,
            f.r,
            f.n,
            f.n_padded,
            f.radius.map_or("n/a".to_string(), |r| r.to_string()),
            f.chain.phi,
            f.chain.upper,
            if f.chain.holds { "holds" } else { "fails" }
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<FieldTables> {
        FieldTables::of_order(q).unwrap().shared()
    }

    /// Radius by enumerating sums of at most `w` scaled columns.
    fn brute_radius(h: &ParityCheck) -> usize {
        let f = h.field();
        let q = f.order() as usize;
        let r = h.rows();
        let total = q.pow(r as u32);
        let enc = |v: &[Elem]| v.iter().fold(0usize, |a, &x| a * q + x as usize);
        let mut seen = vec![false; total];
        seen[0] = true;
        let mut count = 1;
        let mut w = 0;
        while count < total {
            w += 1;
            for_each_combination(h.cols(), w, |idx| {
                let mut c = vec![1u32; w];
                loop {
                    let mut s = vec![0; r];
                    for (&j, &cj) in idx.iter().zip(&c) {
                        for (x, &y) in s.iter_mut().zip(h.column(j)) {
                            *x = f.add(*x, f.mul(cj, y));
                        }
                    }
                    let e = enc(&s);
                    if !seen[e] {
                        seen[e] = true;
                        count += 1;
                    }
                    let Some(i) = c.iter().rposition(|&v| (v as usize) + 1 < q) else { break };
                    c[i] += 1;
                    c[i + 1..].fill(1);
                }
            });
        }
        w
    }

    #[test]
    fn identity_gf3_m1() {
        let h0 = ParityCheck::identity(gf(3), 3).unwrap();
        let spec = LiftSpec::new(h0, 1, 3, false).unwrap();
        let h = lift_qm(&spec).unwrap();
        assert_eq!((h.rows(), h.cols()), (6, 12));
        assert_eq!(covering_radius(&h).unwrap().radius, 3);
        assert_eq!(brute_radius(&h), 3);
        let padded = lift_qm(&LiftSpec { pad: true, ..spec }).unwrap();
        assert_eq!(padded.cols(), 21);
        assert_eq!(covering_radius(&padded).unwrap().radius, 3);
    }

    #[test]
    fn identity_gf3_m2_length() {
        let h0 = ParityCheck::identity(gf(3), 3).unwrap();
        let h = lift_qm(&LiftSpec::new(h0, 2, 3, false).unwrap()).unwrap();
        assert_eq!((h.rows(), h.cols()), (9, 39));
        assert_eq!(covering_radius(&h).unwrap().radius, 3);
    }

    #[test]
    fn codimension_law() {
        let h0 = ParityCheck::identity(gf(4), 4).unwrap();
        let spec = LiftSpec::new(h0, 2, 3, true).unwrap();
        assert_eq!(spec.codimension(), 10);
        assert_eq!(spec.length(), 4 * 16 + 3 * 21);
    }

    #[test]
    fn type_a_counts_and_zero_column() {
        let f = gf(4);
        let h0 = ParityCheck::identity(f.clone(), 2).unwrap();
        let h = lift_qm(&LiftSpec::new(h0.clone(), 2, 3, false).unwrap()).unwrap();
        // ξ = 0 comes first in each A-block
        for i in 0..2 {
            let col = h.column(i * 16);
            assert_eq!(&col[..2], h0.column(i));
            assert!(col[2..].iter().all(|&x| x == 0));
        }
        assert_eq!(h.cols(), 2 * 16 + 3 * 5);
        assert!(h.is_full_rank());
    }

    #[test]
    fn radius_preserved_small_fields() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            let hamming = ParityCheck::hamming(f.clone(), 2).unwrap();
            for (h0, radius) in [(ParityCheck::identity(f.clone(), 2).unwrap(), 2), (hamming, 1)] {
                if h0.cols() > (q as usize + 1).max(radius) {
                    continue;
                }
                for m in [1u32, 2] {
                    let spec = LiftSpec::new(h0.clone(), m, radius, false).unwrap();
                    let rows = spec.codimension() as u32;
                    if (q as u128).pow(rows) > 2_000_000 {
                        continue;
                    }
                    let h = lift_qm(&spec).unwrap();
                    let a = covering_radius(&h).unwrap().radius;
                    assert!(a <= radius, "q={q} m={m}");
                    let p = lift_qm(&LiftSpec { pad: true, ..spec }).unwrap();
                    assert_eq!(covering_radius(&p).unwrap().radius, a);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = gf(3);
        let h0 = ParityCheck::identity(f.clone(), 3).unwrap();
        assert!(lift_qm(&LiftSpec::new(h0.clone(), 0, 3, false).unwrap()).is_err());
        let wide = ParityCheck::hamming(f.clone(), 3).unwrap();
        assert!(LiftSpec::new(wide, 1, 3, false).is_err());
        let deficient = ParityCheck::from_rows(f.clone(), &[vec![1, 2], vec![2, 1]]).unwrap();
        let spec = LiftSpec::new(deficient, 1, 2, false).unwrap();
        assert!(matches!(lift_qm(&spec), Err(Error::RankDeficient { .. })));
        let mut spec = LiftSpec::new(h0, 1, 3, false).unwrap();
        spec.mu[1] = spec.mu[0].clone();
        assert!(lift_qm(&spec).is_err());
    }

    #[test]
    fn chain_and_geometric_sum() {
        // 1 + 1/3 + 1/9 < 3/2
        assert!(1.0 + 1.0 / 3.0 + 1.0 / 9.0 < 1.5);
        let c = length_chain(5, 4, 4, 3, 1, 6.0);
        assert_eq!(c.length, 35);
        assert!(c.codimension_form && c.holds);
        let c = length_chain(3, 3, 3, 3, 2, 6.0);
        assert_eq!(c.length, 27 + 39);
        assert!(c.holds && !c.codimension_form);
    }

    #[test]
    fn family_gf3() {
        let h0 = ParityCheck::identity(gf(3), 3).unwrap();
        let fam = verify_family(&h0, 1..=2, 3).unwrap();
        assert_eq!(fam.iter().map(|f| f.n).collect::<Vec<_>>(), vec![12, 39]);
        assert!(fam.iter().all(|f| f.ok && f.radius == Some(3)));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn lift_keeps_radius(q in proptest::sample::select(vec![2u64, 3, 4]), r0 in 2usize..=3, seed in 0u64..10_000) {
            use rand::{Rng, SeedableRng};
            let f = gf(q);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n0 = rng.gen_range(r0..=q as usize + 1);
            let cols: Vec<Vec<Elem>> = (0..n0)
                .map(|_| loop {
                    let c: Vec<Elem> = (0..r0).map(|_| rng.gen_range(0..q as u32)).collect();
                    if c.iter().any(|&x| x != 0) {
                        break c;
                    }
                })
                .collect();
            let h0 = ParityCheck::new(f.clone(), r0, cols).unwrap();
            proptest::prop_assume!(h0.is_full_rank());
            let radius = covering_radius(&h0).unwrap().radius;
            proptest::prop_assume!(n0 <= (q as usize + 1).max(radius));
            for m in [1u32, 2] {
                let spec = LiftSpec::new(h0.clone(), m, radius, false).unwrap();
                if (q as u128).pow(spec.codimension() as u32) > 300_000 {
                    continue;
                }
                let h = lift_qm(&spec).unwrap();
                proptest::prop_assert_eq!(h.rows(), r0 + radius * m as usize);
                proptest::prop_assert_eq!(h.cols() as u128, spec.length());
                let a = covering_radius(&h).unwrap().radius;
                proptest::prop_assert!(a <= radius);
                let p = lift_qm(&LiftSpec { pad: true, ..spec }).unwrap();
                proptest::prop_assert_eq!(covering_radius(&p).unwrap().radius, a);
            }
        }
    }

    #[test]
    fn gf2_unit_multipliers() {
        let f = gf(2);
        let mu = default_multipliers(&f, 4, 4).unwrap();
        assert_eq!(mu[0], vec![1, 0, 0, 0]);
        assert_eq!(projective_points(&f, 3).unwrap().len(), 7);
    }
}
