//! Points, subspaces and hyperplanes of PG(N,q).
//!
//! Points are canonical homogeneous coordinate tuples (first nonzero
//! coordinate equal to 1) and are numbered densely in lexicographic order of
//! their coordinate encodings. The numbering is arithmetic: a point whose
//! leading 1 sits at position `i` gets id
//! `theta_{N-i-1} + (tail read as a big-endian base-q number)`, so no point
//! table is ever materialized.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTables};

/// Largest number of points an enumerated space may have (256 MiB of bitmap).
pub const MAX_POINTS: u64 = 1 << 31;

/// Dense index of a point of PG(N,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fixed-size bitset over point ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    words: Vec<u64>,
    len: usize,
}

impl Bitmap {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Sets bit `i`, returning true if it was previously clear.
    #[inline]
    pub fn set(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| !self.get(i))
    }
}

/// `theta_{m,q} = (q^{m+1} - 1)/(q - 1)`, the number of points of PG(m,q).
pub fn theta(m: u32, q: u64) -> u128 {
    (0..=m).map(|k| (q as u128).pow(k)).sum()
}

/// Calls `f` with every k-subset of `0..n` as an increasing index slice, in
/// lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// An enumerated PG(N,q).
#[derive(Clone)]
pub struct PgSpace {
    dim: usize,
    field: Arc<FieldTables>,
    num_points: u64,
    /// `offsets[i]` = number of points whose leading 1 sits after position i.
    offsets: Vec<u64>,
    /// `weights[k] = q^{N-k}`.
    weights: Vec<u64>,
}

impl fmt::Debug for PgSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({},{})", self.dim, self.field.order())
    }
}

impl PgSpace {
    pub fn new(dim: usize, field: Arc<FieldTables>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("projective dimension must be at least 1".into()));
        }
        let q = field.order() as u64;
        let points = theta(dim as u32, q);
        if points > MAX_POINTS as u128 {
            return Err(Error::SpaceTooLarge { dim, q, points, cap: MAX_POINTS });
        }
        let n = dim;
        let weights: Vec<u64> = (0..=n).map(|k| q.pow((n - k) as u32)).collect();
        let offsets: Vec<u64> = (0..=n).map(|i| theta((n - i) as u32, q) as u64 - q.pow((n - i) as u32)).collect();
        Ok(Self { dim, field, num_points: points as u64, offsets, weights })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of a coordinate vector (N+1).
    #[inline]
    pub fn coords(&self) -> usize {
        self.dim + 1
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldTables> {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.order()
    }

    #[inline]
    pub fn num_points(&self) -> u64 {
        self.num_points
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.num_points as u32).map(PointId)
    }

    /// Index of an already canonical tuple.
    #[inline]
    pub fn index(&self, v: &[Elem]) -> PointId {
        let lead = v.iter().position(|&c| c != 0).expect("canonical point is nonzero");
        debug_assert_eq!(v[lead], 1, "tuple not canonical");
        let mut id = self.offsets[lead];
        for k in lead + 1..v.len() {
            id += v[k] as u64 * self.weights[k];
        }
        PointId(id as u32)
    }

    /// Index of the projective point of any nonzero vector.
    #[inline]
    pub fn id_of(&self, v: &[Elem]) -> Result<PointId> {
        let f = &*self.field;
        let lead = v.iter().position(|&c| c != 0).ok_or(Error::ZeroVector)?;
        let inv = f.inv(v[lead]).expect("nonzero");
        let mut id = self.offsets[lead];
        for k in lead + 1..v.len() {
            id += f.mul(v[k], inv) as u64 * self.weights[k];
        }
        Ok(PointId(id as u32))
    }

    /// Writes the canonical coordinates of `id` into `out`.
    pub fn point_into(&self, id: PointId, out: &mut [Elem]) {
        let id = id.0 as u64;
        assert!(id < self.num_points, "point id out of range");
        let lead = (0..=self.dim).find(|&i| id >= self.offsets[i]).expect("offsets end at zero");
        let mut tail = id - self.offsets[lead];
        out[..lead].fill(0);
        out[lead] = 1;
        for k in (lead + 1..=self.dim).rev() {
            let q = self.q() as u64;
            out[k] = (tail % q) as Elem;
            tail /= q;
        }
    }

    pub fn point(&self, id: PointId) -> Vec<Elem> {
        let mut v = vec![0; self.coords()];
        self.point_into(id, &mut v);
        v
    }

    /// Scales `v` in place so its first nonzero coordinate is 1.
    pub fn canonicalize(&self, v: &mut [Elem]) -> Result<()> {
        canonicalize(&self.field, v)
    }

    /// Canonical form of `v` as a new tuple.
    pub fn canonical(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.check_vector(v)?;
        let mut w = v.to_vec();
        canonicalize(&self.field, &mut w)?;
        Ok(w)
    }

    /// Validates length and element range of a coordinate tuple.
    pub fn check_vector(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.coords() {
            return Err(Error::LengthMismatch { expected: self.coords(), got: v.len() });
        }
        if let Some(&bad) = v.iter().find(|&&c| !self.field.contains(c as u64)) {
            return Err(Error::ElementOutOfRange { value: bad as u64, order: self.q() as u64 });
        }
        Ok(())
    }

    /// Row-reduced basis of the span of the points.
    pub fn basis_of(&self, ids: &[PointId]) -> Vec<Vec<Elem>> {
        let rows: Vec<Vec<Elem>> = ids.iter().map(|&id| self.point(id)).collect();
        row_reduce(&self.field, rows)
    }

    /// Calls `f` with the id of every point in the span of the row-reduced
    /// `basis`; `(q^k - 1)/(q - 1)` calls for a basis of size k.
    pub fn for_each_span_point(&self, basis: &[Vec<Elem>], mut f: impl FnMut(PointId)) {
        SpanWalker::new(&self.field, basis).walk(|v| f(self.index(v)));
    }

    pub fn format_point(&self, v: &[Elem]) -> String {
        format_tuple(v)
    }
}

pub fn format_tuple(v: &[Elem]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Scales `v` in place so its first nonzero coordinate is 1.
pub fn canonicalize(field: &FieldTables, v: &mut [Elem]) -> Result<()> {
    let lead = v.iter().position(|&c| c != 0).ok_or(Error::ZeroVector)?;
    let inv = field.inv(v[lead]).expect("nonzero");
    for c in &mut v[lead..] {
        *c = field.mul(*c, inv);
    }
    Ok(())
}

/// Reduced row echelon form with zero rows dropped. Every row is canonical.
pub fn row_reduce(field: &FieldTables, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        for c in &mut rows[rank] {
            *c = field.mul(*c, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Rank over GF(q) of a list of vectors.
pub fn rank_of_vectors(field: &FieldTables, rows: &[Vec<Elem>]) -> usize {
    row_reduce(field, rows.to_vec()).len()
}

/// Rank of the coordinate tuples of the given points.
pub fn rank_of(points: &[PointId], space: &PgSpace) -> usize {
    space.basis_of(points).len()
}

/// Whether the points are linearly independent as vectors.
pub fn general_position(points: &[PointId], space: &PgSpace) -> bool {
    rank_of(points, space) == points.len()
}

/// Enumerates the vectors of a projective span whose leading coefficient
/// (with respect to a row-reduced basis) is 1. With a row-reduced basis those
/// vectors are already canonical.
pub struct SpanWalker<'a> {
    field: &'a FieldTables,
    width: usize,
    k: usize,
    /// multiples[j][c * width..] = c * basis[j]
    multiples: Vec<Vec<Elem>>,
}

impl<'a> SpanWalker<'a> {
    pub fn new(field: &'a FieldTables, basis: &[Vec<Elem>]) -> Self {
        let width = basis.first().map_or(0, Vec::len);
        let q = field.order();
        let multiples = basis
            .iter()
            .map(|b| (0..q).flat_map(|c| b.iter().map(move |&x| field.mul(c, x))).collect())
            .collect();
        Self { field, width, k: basis.len(), multiples }
    }

    pub fn walk(&self, mut f: impl FnMut(&[Elem])) {
        let q = self.field.order();
        let w = self.width;
        let mut acc = vec![0; w];
        let mut coef = vec![0u32; self.k];
        for lead in 0..self.k {
            let free = self.k - lead - 1;
            coef[lead + 1..].fill(0);
            loop {
                acc.copy_from_slice(&self.multiples[lead][w..2 * w]);
                for j in lead + 1..self.k {
                    let c = coef[j] as usize;
                    if c != 0 {
                        let m = &self.multiples[j][c * w..(c + 1) * w];
                        for (a, &x) in acc.iter_mut().zip(m) {
                            *a = self.field.add(*a, x);
                        }
                    }
                }
                f(&acc);
                // odometer over the free coefficients
                let mut pos = self.k;
                loop {
                    if pos == lead + 1 {
                        break;
                    }
                    pos -= 1;
                    coef[pos] += 1;
                    if coef[pos] < q {
                        break;
                    }
                    coef[pos] = 0;
                    if pos == lead + 1 {
                        pos = lead;
                        break;
                    }
                }
                if free == 0 || pos == lead {
                    break;
                }
            }
        }
    }
}

/// All points of the subspace generated by `points`, in increasing id order.
pub fn span_closure(points: &[PointId], space: &PgSpace) -> Vec<PointId> {
    let basis = space.basis_of(points);
    let mut out = Vec::new();
    space.for_each_span_point(&basis, |id| out.push(id));
    out.sort_unstable();
    out
}

/// The normal rational curve `{(1,t,...,t^N)} ∪ {(0,...,0,1)}`, in point-id order.
pub fn normal_rational_curve(space: &PgSpace) -> Result<Vec<PointId>> {
    let f = space.field();
    let n = space.dim();
    let q = f.order();
    if (q as usize) + 1 < n + 2 {
        return Err(Error::Precondition(format!(
            "normal rational curve of PG({n},{q}) has q+1 = {} points, fewer than N+2; arc property cannot hold",
            q + 1
        )));
    }
    let mut pts: Vec<PointId> = (0..q)
        .map(|t| {
            let v: Vec<Elem> = (0..=n as u64).map(|k| f.pow(t, k)).collect();
            space.index(&v)
        })
        .collect();
    let mut inf = vec![0; n + 1];
    inf[n] = 1;
    pts.push(space.index(&inf));
    pts.sort_unstable();
    Ok(pts)
}

/// A hyperplane `{P : coeffs · P = 0}` with canonical coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualHyperplane {
    coeffs: Vec<Elem>,
}

impl DualHyperplane {
    pub fn new(space: &PgSpace, coeffs: &[Elem]) -> Result<Self> {
        Ok(Self { coeffs: space.canonical(coeffs)? })
    }

    /// The hyperplane whose coefficient tuple is the point `id` of the dual space.
    pub fn from_dual_id(space: &PgSpace, id: PointId) -> Self {
        Self { coeffs: space.point(id) }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    #[inline]
    pub fn eval(&self, field: &FieldTables, v: &[Elem]) -> Elem {
        field.dot(&self.coeffs, v)
    }

    #[inline]
    pub fn contains(&self, field: &FieldTables, v: &[Elem]) -> bool {
        self.eval(field, v) == 0
    }
}

impl fmt::Display for DualHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_tuple(&self.coeffs))
    }
}

/// Points of the hyperplane, in increasing id order.
pub fn hyperplane_points(h: &DualHyperplane, space: &PgSpace) -> Vec<PointId> {
    let basis = hyperplane_basis(h, space);
    let mut out = Vec::with_capacity(theta(space.dim() as u32 - 1, space.q() as u64) as usize);
    space.for_each_span_point(&basis, |id| out.push(id));
    out.sort_unstable();
    out
}

/// Row-reduced basis of the N-dimensional solution space of `h · x = 0`.
pub fn hyperplane_basis(h: &DualHyperplane, space: &PgSpace) -> Vec<Vec<Elem>> {
    let f = space.field();
    let c = h.coeffs();
    let pivot = c.iter().position(|&x| x != 0).expect("canonical hyperplane");
    // c[pivot] = 1, so x_pivot = -sum_{k != pivot} c_k x_k.
    let rows = (0..c.len())
        .filter(|&k| k != pivot)
        .map(|k| {
            let mut v = vec![0; c.len()];
            v[k] = 1;
            v[pivot] = f.neg(c[k]);
            v
        })
        .collect();
    row_reduce(f, rows)
}

/// Finds a hyperplane containing none of `set`.
///
/// Tries `64 (N+1)` random dual points first, then scans the dual space in id
/// order. Fails only when `set` blocks every hyperplane.
pub fn find_skew_hyperplane<R: Rng + ?Sized>(set: &[PointId], space: &PgSpace, rng: &mut R) -> Result<DualHyperplane> {
    let f = space.field();
    let coords: Vec<Vec<Elem>> = set.iter().map(|&id| space.point(id)).collect();
    let skew = |h: &DualHyperplane| coords.iter().all(|v| !h.contains(f, v));
    let trials = 64 * space.coords();
    for _ in 0..trials {
        let id = PointId(rng.gen_range(0..space.num_points()) as u32);
        let h = DualHyperplane::from_dual_id(space, id);
        if skew(&h) {
            return Ok(h);
        }
    }
    space
        .ids()
        .map(|id| DualHyperplane::from_dual_id(space, id))
        .find(|h| skew(h))
        .ok_or(Error::BlockingSet)
}
