//! Linear codes given by parity-check matrices, with exact covering-radius and
//! saturation oracles.
//!
//! An `r x n` matrix whose columns are distinct points of PG(r-1,q) defines an
//! `[n, n-r]_q` code. Its covering radius is `rho + 1` exactly when the column
//! set is `rho`-saturating, which is what lets the same objects be checked from
//! either side.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTables};
use crate::pg::{rank_of_vectors, Bitmap, PgSpace, PointId};

/// Default cap on `q^r` for the syndrome-space oracle.
pub const SYNDROME_CAP: u64 = 20_000_000;

const PCM_MAGIC: &str = "%covercode-pcm v1";

/// An `r x n` parity-check matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    field: Arc<FieldTables>,
    rows: usize,
    columns: Vec<Vec<Elem>>,
}

impl ParityCheck {
    /// Builds a matrix from its columns. Zero columns are rejected.
    pub fn new(field: Arc<FieldTables>, rows: usize, columns: Vec<Vec<Elem>>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidConfig("parity-check matrix needs at least one row".into()));
        }
        for col in &columns {
            if col.len() != rows {
                return Err(Error::LengthMismatch { expected: rows, got: col.len() });
            }
            if let Some(&bad) = col.iter().find(|&&c| !field.contains(c as u64)) {
                return Err(Error::ElementOutOfRange { value: bad as u64, order: field.order() as u64 });
            }
            if col.iter().all(|&c| c == 0) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Self { field, rows, columns })
    }

    /// Builds a matrix from row vectors of equal length.
    pub fn from_rows(field: Arc<FieldTables>, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: bad.len() });
        }
        let columns = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::new(field, rows.len(), columns)
    }

    /// The `r x r` identity, a code of length r and covering radius r.
    pub fn identity(field: Arc<FieldTables>, r: usize) -> Result<Self> {
        let columns = (0..r)
            .map(|j| {
                let mut c = vec![0; r];
                c[j] = 1;
                c
            })
            .collect();
        Self::new(field, r, columns)
    }

    /// The Hamming code of codimension r: all points of PG(r-1,q) as columns.
    pub fn hamming(field: Arc<FieldTables>, r: usize) -> Result<Self> {
        let space = PgSpace::new(r - 1, field)?;
        let all: Vec<PointId> = space.ids().collect();
        set_to_parity_check(&all, &space)
    }

    pub fn field(&self) -> &Arc<FieldTables> {
        &self.field
    }

    /// Codimension r (row count).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Length n (column count).
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Elem>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Elem] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.columns[j][i]
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.field, &self.columns)
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Appends a column.
    pub fn push_column(&mut self, col: Vec<Elem>) -> Result<()> {
        let mut tmp = Self::new(self.field.clone(), self.rows, vec![col])?;
        self.columns.append(&mut tmp.columns);
        Ok(())
    }

    /// Serializes in the line-oriented pcm text format.
    pub fn to_pcm(&self) -> String {
        let mut out = String::new();
        let f = &self.field;
        writeln!(out, "{PCM_MAGIC}").unwrap();
        writeln!(out, "q {}^{} rows {} cols {}", f.characteristic(), f.degree(), self.rows, self.cols()).unwrap();
        for i in 0..self.rows {
            let row: Vec<String> = self.columns.iter().map(|c| c[i].to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    /// Parses the pcm text format.
    pub fn from_pcm(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };

        let (ln, magic) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        if magic != PCM_MAGIC {
            return Err(perr(ln, "missing `%covercode-pcm v1` header"));
        }
        let (ln, header) = lines.next().ok_or_else(|| perr(2, "missing field header"))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        if tok.len() != 6 || tok[0] != "q" || tok[2] != "rows" || tok[4] != "cols" {
            return Err(perr(ln, "expected `q <p>^<e> rows <r> cols <n>`"));
        }
        let (p, e) = tok[1].split_once('^').ok_or_else(|| perr(ln, "field must be written <p>^<e>"))?;
        let p: u32 = p.parse().map_err(|_| perr(ln, "bad characteristic"))?;
        let e: u32 = e.parse().map_err(|_| perr(ln, "bad exponent"))?;
        let r: usize = tok[3].parse().map_err(|_| perr(ln, "bad row count"))?;
        let n: usize = tok[5].parse().map_err(|_| perr(ln, "bad column count"))?;
        let field = FieldTables::new(p, e)?.shared();

        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, line) = lines.next().ok_or_else(|| perr(ln + rows.len() + 1, "missing matrix row"))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<Elem>().map_err(|_| perr(ln, "bad element")))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(perr(ln, &format!("expected {n} entries, found {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| !field.contains(v as u64)) {
                return Err(perr(ln, &format!("element {bad} outside GF({})", field.order())));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(perr(ln, "trailing content after matrix"));
        }
        if n == 0 {
            return Self::new(field, r, Vec::new());
        }
        Self::from_rows(field, &rows)
    }
}

/// The parity-check matrix whose columns are the given points, in order.
pub fn set_to_parity_check(points: &[PointId], space: &PgSpace) -> Result<ParityCheck> {
    if points.is_empty() {
        return Err(Error::InvalidConfig("point set is empty".into()));
    }
    let mut seen = Bitmap::new(space.num_points() as usize);
    for &p in points {
        if p.0 as u64 >= space.num_points() {
            return Err(Error::InvalidConfig(format!("point id {p} outside {space:?}")));
        }
        if !seen.set(p.index()) {
            return Err(Error::DuplicatePoint(p.0 as u64));
        }
    }
    let columns = points.iter().map(|&p| space.point(p)).collect();
    ParityCheck::new(space.field().clone(), space.coords(), columns)
}

/// The points of PG(r-1,q) named by the columns of `h`, in column order.
pub fn parity_check_to_set(h: &ParityCheck) -> Result<(PgSpace, Vec<PointId>)> {
    if h.rows() < 2 {
        return Err(Error::InvalidConfig("need at least two rows to name projective points".into()));
    }
    let space = PgSpace::new(h.rows() - 1, h.field().clone())?;
    let mut seen = Bitmap::new(space.num_points() as usize);
    let mut ids = Vec::with_capacity(h.cols());
    for col in h.columns() {
        let id = space.id_of(col)?;
        if !seen.set(id.index()) {
            return Err(Error::DuplicatePoint(id.0 as u64));
        }
        ids.push(id);
    }
    Ok((space, ids))
}

/// Exact covering radius with the per-weight syndrome census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusReport {
    pub radius: usize,
    /// `histogram[w]` = number of syndromes whose coset leader has weight w.
    pub histogram: Vec<u64>,
}

impl RadiusReport {
    pub fn total(&self) -> u64 {
        self.histogram.iter().sum()
    }
}

/// Covering radius via breadth-first search over the syndrome space, capped at
/// [`SYNDROME_CAP`].
pub fn covering_radius(h: &ParityCheck) -> Result<RadiusReport> {
    covering_radius_with_cap(h, SYNDROME_CAP)
}

pub fn covering_radius_with_cap(h: &ParityCheck, cap: u64) -> Result<RadiusReport> {
    let f = &*h.field;
    let q = f.order() as u64;
    let r = h.rows;
    let size = (q as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SyndromeSpaceTooLarge { size, cap });
    }
    let rank = h.rank();
    if rank < r {
        return Err(Error::RankDeficient { rank, rows: r });
    }
    let size = size as usize;

    // Every nonzero multiple of every column, deduplicated as vectors.
    let mut moves: Vec<Vec<Elem>> = h
        .columns
        .iter()
        .flat_map(|col| (1..q as Elem).map(move |c| col.iter().map(|&x| f.mul(c, x)).collect::<Vec<_>>()))
        .collect();
    moves.sort_unstable();
    moves.dedup();

    const UNSEEN: u8 = u8::MAX;
    let mut dist = vec![UNSEEN; size];
    dist[0] = 0;
    let mut frontier = vec![0usize];
    let mut histogram = vec![1u64];
    let mut digits = vec![0; r];
    while !frontier.is_empty() {
        let level = histogram.len() as u8;
        let mut next = Vec::new();
        for &s in &frontier {
            decode(s, q, &mut digits);
            for mv in &moves {
                let mut t = 0usize;
                for (&d, &m) in digits.iter().zip(mv) {
                    t = t * q as usize + f.add(d, m) as usize;
                }
                if dist[t] == UNSEEN {
                    dist[t] = level;
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        histogram.push(next.len() as u64);
        frontier = next;
    }
    debug_assert!(dist.iter().all(|&d| d != UNSEEN), "full rank implies every syndrome is reached");
    Ok(RadiusReport { radius: histogram.len() - 1, histogram })
}

fn decode(mut s: usize, q: u64, out: &mut [Elem]) {
    for d in out.iter_mut().rev() {
        *d = (s as u64 % q) as Elem;
        s /= q as usize;
    }
}

/// Smallest rho such that every point of the space lies in the span of at most
/// `rho + 1` points of `set`, or `None` when `set` does not span the space.
pub fn saturation_level(set: &[PointId], space: &PgSpace) -> Option<usize> {
    let levels = saturation_levels(set, space)?;
    Some(levels.len() - 1)
}

/// Number of points first reached at each level; `None` when `set` does not
/// span the space.
///
/// A point X reaches level `k+1` when `X + c s` lies at level `k` or below for
/// some `s` in the set and some scalar c. Levels are filled one at a time from
/// a frozen snapshot of the previous ones, so the scan over X parallelizes.
pub fn saturation_levels(set: &[PointId], space: &PgSpace) -> Option<Vec<u64>> {
    if set.is_empty() {
        return None;
    }
    let f = &**space.field();
    let q = f.order();
    let w = space.coords();
    let n = space.num_points() as usize;

    let mut reached = Bitmap::new(n);
    for &s in set {
        reached.set(s.index());
    }
    let mut counts = vec![reached.count_ones() as u64];
    // multiples[s][c*w..] = c * s
    let multiples: Vec<Vec<Elem>> = set
        .iter()
        .map(|&s| {
            let v = space.point(s);
            (0..q).flat_map(|c| v.iter().map(move |&x| f.mul(c, x)).collect::<Vec<_>>()).collect()
        })
        .collect();

    let mut remaining: Vec<u32> = reached.zeros().map(|i| i as u32).collect();
    while !remaining.is_empty() {
        let snapshot = &reached;
        let hit: Vec<bool> = remaining
            .par_iter()
            .map_init(
                || (vec![0; w], vec![0; w]),
                |(x, y), &id| {
                    space.point_into(PointId(id), x);
                    multiples.iter().any(|mult| {
                        (1..q as usize).any(|c| {
                            let m = &mult[c * w..(c + 1) * w];
                            for k in 0..w {
                                y[k] = f.add(x[k], m[k]);
                            }
                            match space.id_of(y) {
                                Ok(t) => snapshot.get(t.index()),
                                Err(_) => false,
                            }
                        })
                    })
                },
            )
            .collect();
        let mut fresh = 0;
        let mut still = Vec::with_capacity(remaining.len());
        for (&id, &h) in remaining.iter().zip(&hit) {
            if h {
                fresh += 1;
            } else {
                still.push(id);
            }
        }
        if fresh == 0 {
            return None;
        }
        for (&id, &h) in remaining.iter().zip(&hit) {
            if h {
                reached.set(id as usize);
            }
        }
        counts.push(fresh);
        remaining = still;
    }
    Some(counts)
}

/// Block-diagonal direct sum of two parity-check matrices over the same field.
pub fn direct_sum(a: &ParityCheck, b: &ParityCheck) -> Result<ParityCheck> {
    if a.field != b.field {
        return Err(Error::FieldMismatch { left: a.field.order() as u64, right: b.field.order() as u64 });
    }
    let r = a.rows + b.rows;
    let left = a.columns.iter().map(|c| {
        let mut v = c.clone();
        v.resize(r, 0);
        v
    });
    let right = b.columns.iter().map(|c| {
        let mut v = vec![0; a.rows];
        v.extend_from_slice(c);
        v
    });
    ParityCheck::new(a.field.clone(), r, left.chain(right).collect())
}

/// Covering density `sum_{i<=R} C(n,i)(q-1)^i / q^r` of an `[n, n-r]_q R` code.
pub fn covering_density(n: u64, r: u64, q: u64, radius: u64) -> f64 {
    let lq1 = ((q - 1) as f64).ln();
    let lq = (q as f64).ln();
    let mut ln_binom = 0.0;
    let mut total = 0.0;
    for i in 0..=radius.min(n) {
        if i > 0 {
            ln_binom += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        total += (ln_binom + i as f64 * lq1 - r as f64 * lq).exp();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::for_each_combination;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Arc<FieldTables> {
        FieldTables::of_order(q).unwrap().shared()
    }

    /// Radius by trying every combination of at most R columns with every
    /// nonzero coefficient tuple.
    fn brute_radius(h: &ParityCheck) -> usize {
        let f = h.field();
        let q = f.order() as usize;
        let r = h.rows();
        let size = q.pow(r as u32);
        let mut covered = vec![false; size];
        covered[0] = true;
        let mut seen = 1;
        let encode = |v: &[Elem]| v.iter().fold(0usize, |a, &d| a * q + d as usize);
        let mut weight = 0;
        while seen < size {
            weight += 1;
            assert!(weight <= h.cols(), "rank deficient");
            for_each_combination(h.cols(), weight, |idx| {
                let mut coef = vec![1 as Elem; weight];
                loop {
                    let mut s = vec![0; r];
                    for (&j, &c) in idx.iter().zip(&coef) {
                        for k in 0..r {
                            s[k] = f.add(s[k], f.mul(c, h.entry(k, j)));
                        }
                    }
                    let t = encode(&s);
                    if !covered[t] {
                        covered[t] = true;
                        seen += 1;
                    }
                    let Some(p) = coef.iter().rposition(|&c| (c as usize) < q - 1) else { break };
                    coef[p] += 1;
                    coef[p + 1..].fill(1);
                }
            });
        }
        weight
    }

    /// Saturation level by taking unions of spans of all k-subsets.
    fn brute_saturation(set: &[PointId], space: &PgSpace) -> Option<usize> {
        let mut covered = Bitmap::new(space.num_points() as usize);
        for k in 1..=space.coords() {
            for_each_combination(set.len(), k, |idx| {
                let pts: Vec<PointId> = idx.iter().map(|&i| set[i]).collect();
                for p in crate::pg::span_closure(&pts, space) {
                    covered.set(p.index());
                }
            });
            if covered.count_ones() as u64 == space.num_points() {
                return Some(k - 1);
            }
        }
        None
    }

    #[test]
    fn identity_radius() {
        let h = ParityCheck::identity(gf(3), 3).unwrap();
        let rep = covering_radius(&h).unwrap();
        assert_eq!(rep.radius, 3);
        assert_eq!(rep.histogram, vec![1, 6, 12, 8]);
    }

    #[test]
    fn hamming_is_perfect() {
        let h = ParityCheck::hamming(gf(3), 3).unwrap();
        assert_eq!((h.rows(), h.cols(), h.rank()), (3, 13, 3));
        let rep = covering_radius(&h).unwrap();
        assert_eq!(rep.radius, 1);
        assert_eq!(rep.total(), 27);
        assert!((covering_density(13, 3, 3, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_examples() {
        assert!((covering_density(3, 3, 3, 3) - 1.0).abs() < 1e-12);
        assert!((covering_density(7, 3, 2, 1) - 1.0).abs() < 1e-12);
        assert!(covering_density(12, 6, 3, 3) >= 1.0);
    }

    #[test]
    fn radius_refuses_rank_deficient_and_large() {
        let h = ParityCheck::from_rows(gf(3), &[vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(covering_radius(&h).unwrap_err(), Error::RankDeficient { rank: 1, rows: 2 });
        let big = ParityCheck::identity(gf(2), 30).unwrap();
        assert!(matches!(covering_radius(&big), Err(Error::SyndromeSpaceTooLarge { .. })));
    }

    #[test]
    fn set_matrix_round_trip() {
        let s = PgSpace::new(3, gf(4)).unwrap();
        let pts: Vec<PointId> = [3u32, 0, 70, 12, 44].iter().map(|&i| PointId(i)).collect();
        let h = set_to_parity_check(&pts, &s).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 5));
        let (_, back) = parity_check_to_set(&h).unwrap();
        assert_eq!(back, pts);
        let dup = [PointId(1), PointId(1)];
        assert_eq!(set_to_parity_check(&dup, &s).unwrap_err(), Error::DuplicatePoint(1));
    }

    #[test]
    fn pcm_round_trip() {
        let h = ParityCheck::hamming(gf(4), 3).unwrap();
        let text = h.to_pcm();
        assert!(text.starts_with("%covercode-pcm v1\nq 2^2 rows 3 cols 21\n"));
        let back = ParityCheck::from_pcm(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_pcm(), text);
    }

    #[test]
    fn pcm_rejects_malformed() {
        assert!(ParityCheck::from_pcm("").is_err());
        assert!(ParityCheck::from_pcm("%covercode-pcm v1\nq 3^1 rows 1 cols 2\n1\n").is_err());
        assert!(ParityCheck::from_pcm("%covercode-pcm v1\nq 3^1 rows 1 cols 1\n3\n").is_err());
        assert!(ParityCheck::from_pcm("%covercode-pcm v1\nq 4^1 rows 1 cols 1\n1\n").is_err());
        assert!(ParityCheck::from_pcm("%covercode-pcm v2\nq 3^1 rows 1 cols 1\n1\n").is_err());
    }

    #[test]
    fn saturation_examples() {
        let s = PgSpace::new(2, gf(2)).unwrap();
        let all: Vec<PointId> = s.ids().collect();
        assert_eq!(saturation_level(&all, &s), Some(0));
        let line: Vec<PointId> = [[0, 1, 0], [0, 0, 1], [0, 1, 1]].iter().map(|v| s.index(v)).collect();
        assert_eq!(saturation_level(&line, &s), None);
        let frame: Vec<PointId> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].iter().map(|v| s.index(v)).collect();
        assert_eq!(saturation_level(&frame, &s), Some(1));
        assert_eq!(saturation_level(&[], &s), None);
    }

    #[test]
    fn direct_sum_examples() {
        let id = ParityCheck::identity(gf(3), 3).unwrap();
        let ham = ParityCheck::hamming(gf(3), 3).unwrap();
        let d = direct_sum(&id, &id).unwrap();
        assert_eq!((d.rows(), d.cols()), (6, 6));
        assert_eq!(covering_radius(&d).unwrap().radius, 6);
        let d = direct_sum(&id, &ham).unwrap();
        assert_eq!((d.rows(), d.cols()), (6, 16));
        assert_eq!(covering_radius(&d).unwrap().radius, 4);
        let other = ParityCheck::identity(gf(2), 2).unwrap();
        assert!(matches!(direct_sum(&id, &other), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn bfs_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, r) in [(2u64, 3usize), (2, 4), (2, 6), (3, 3), (3, 4), (4, 3), (5, 2), (3, 6)] {
            let f = gf(q);
            for _ in 0..6 {
                let n = rng.gen_range(r..r + 5);
                let mut cols: Vec<Vec<Elem>> = (0..r)
                    .map(|j| {
                        let mut c = vec![0; r];
                        c[j] = 1;
                        c
                    })
                    .collect();
                while cols.len() < n {
                    let c: Vec<Elem> = (0..r).map(|_| rng.gen_range(0..q as Elem)).collect();
                    if c.iter().any(|&x| x != 0) {
                        cols.push(c);
                    }
                }
                let h = ParityCheck::new(f.clone(), r, cols).unwrap();
                assert_eq!(covering_radius(&h).unwrap().radius, brute_radius(&h), "q={q} r={r}");
            }
        }
    }

    #[test]
    fn saturation_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, q) in [(2usize, 3u64), (3, 2), (2, 4), (3, 3)] {
            let s = PgSpace::new(n, gf(q)).unwrap();
            for _ in 0..20 {
                let k = rng.gen_range(1..8);
                let mut pts: Vec<PointId> = (0..k).map(|_| PointId(rng.gen_range(0..s.num_points() as u32))).collect();
                pts.sort();
                pts.dedup();
                assert_eq!(saturation_level(&pts, &s), brute_saturation(&pts, &s));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adding_a_column_never_raises_radius(seed in any::<u64>(), extra in proptest::collection::vec(0u32..3, 3)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = gf(3);
            let mut cols: Vec<Vec<Elem>> = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]];
            for _ in 0..rng.gen_range(0..4) {
                cols.push((0..4).map(|_| rng.gen_range(0..3)).collect());
            }
            cols.retain(|c| c.iter().any(|&x| x != 0));
            let h = ParityCheck::new(f.clone(), 4, cols).unwrap();
            let before = covering_radius(&h).unwrap();
            prop_assert_eq!(before.total(), 81);
            prop_assert_eq!(before.histogram[0], 1);
            let mut col = extra.clone();
            col.push(1);
            let mut g = h.clone();
            g.push_column(col).unwrap();
            prop_assert!(covering_radius(&g).unwrap().radius <= before.radius);
        }

        #[test]
        fn correspondence_on_random_plane_sets(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = PgSpace::new(2, gf(3)).unwrap();
            let mut pts: Vec<PointId> = (0..rng.gen_range(1..9)).map(|_| PointId(rng.gen_range(0..13))).collect();
            pts.sort();
            pts.dedup();
            let h = set_to_parity_check(&pts, &s).unwrap();
            match saturation_level(&pts, &s) {
                Some(rho) => prop_assert_eq!(covering_radius(&h).unwrap().radius, rho + 1),
                None => prop_assert!(!h.is_full_rank()),
            }
        }
    }
}
