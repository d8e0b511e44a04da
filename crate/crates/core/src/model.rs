//! Freiman isomorphisms of order 2, full-dimensional embeddings and volume.
//!
//! Every F2-isomorphic copy of `A` in `Z^d`, `d = dim A`, is an integer affine
//! image of one canonical embedding built from a saturated basis of the
//! relation kernel. Images under maps of determinant `±1` have the same number
//! of lattice points in their hull, and maps with `|det| > 1` can only add
//! lattice points (they pull back `Z^d` to a finer lattice), so the canonical
//! embedding already realizes the minimum hull count.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conjecture;
use crate::dimension::{relation_rank, spanning_relations};
use crate::error::{Error, Result};
use crate::grid::{add, AdditiveSet, GridSet, Point, MAX_GRID_DIM};
use crate::hull::count_points;
use crate::lattice::{integer_kernel, reduce_basis};
use crate::rank::IntMatrix;

const NONE: u32 = u32::MAX;

/// Sum classes of all unordered index pairs of a point list.
#[derive(Debug, Clone)]
pub(crate) struct SumTable {
    k: usize,
    class: Vec<u32>,
    class_size: Vec<u32>,
    /// Per element: sorted sizes of the classes of `(x, y)` over all `y`.
    fingerprint: Vec<Vec<u32>>,
}

impl SumTable {
    pub(crate) fn new(points: &[Point]) -> Self {
        let k = points.len();
        let mut sums: Vec<(Point, usize, usize)> = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                sums.push((add(&points[i], &points[j]), i, j));
            }
        }
        sums.sort_unstable();
        let mut class = vec![0u32; k * k];
        let mut class_size = Vec::new();
        let mut prev: Option<Point> = None;
        for (s, i, j) in sums {
            if prev != Some(s) {
                class_size.push(0);
                prev = Some(s);
            }
            let id = (class_size.len() - 1) as u32;
            *class_size.last_mut().unwrap() += 1;
            class[i * k + j] = id;
            class[j * k + i] = id;
        }
        let fingerprint = (0..k)
            .map(|x| {
                let mut f: Vec<u32> = (0..k).map(|y| class_size[class[x * k + y] as usize]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        SumTable {
            k,
            class,
            class_size,
            fingerprint,
        }
    }

    fn class(&self, i: usize, j: usize) -> u32 {
        self.class[i * self.k + j]
    }

    pub(crate) fn doubling(&self) -> usize {
        self.class_size.len()
    }

    fn participation(&self, x: usize) -> usize {
        (0..self.k)
            .filter(|&y| self.class_size[self.class(x, y) as usize] >= 2)
            .count()
    }
}

struct Matcher<'a> {
    a: &'a SumTable,
    b: &'a SumTable,
    order: Vec<usize>,
    phi: Vec<usize>,
    used: Vec<bool>,
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    trail: Vec<(u32, u32)>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a SumTable, b: &'a SumTable) -> Self {
        let k = a.k;
        // Most-constrained first: start from the element in the most
        // coincidences, then prefer elements linked to those already placed.
        let part: Vec<usize> = (0..k).map(|x| a.participation(x)).collect();
        let mut order = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        for _ in 0..k {
            let next = (0..k)
                .filter(|&x| !placed[x])
                .max_by_key(|&x| {
                    let links = order
                        .iter()
                        .filter(|&&p| a.class_size[a.class(x, p) as usize] >= 2)
                        .count();
                    (links, part[x], std::cmp::Reverse(x))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        Matcher {
            a,
            b,
            order,
            phi: vec![usize::MAX; k],
            used: vec![false; k],
            fwd: vec![NONE; a.class_size.len()],
            bwd: vec![NONE; b.class_size.len()],
            trail: Vec::new(),
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (ca, cb) = self.trail.pop().unwrap();
            self.fwd[ca as usize] = NONE;
            self.bwd[cb as usize] = NONE;
        }
    }

    fn search(&mut self, depth: usize) -> bool {
        let k = self.a.k;
        if depth == k {
            return true;
        }
        let x = self.order[depth];
        for y in 0..k {
            if self.used[y] || self.a.fingerprint[x] != self.b.fingerprint[y] {
                continue;
            }
            let mark = self.trail.len();
            self.phi[x] = y;
            let mut ok = true;
            for idx in 0..=depth {
                let p = if idx == depth { x } else { self.order[idx] };
                let q = self.phi[p];
                let ca = self.a.class(x, p);
                let cb = self.b.class(y, q);
                match (self.fwd[ca as usize], self.bwd[cb as usize]) {
                    (NONE, NONE) => {
                        if self.a.class_size[ca as usize] != self.b.class_size[cb as usize] {
                            ok = false;
                            break;
                        }
                        self.fwd[ca as usize] = cb;
                        self.bwd[cb as usize] = ca;
                        self.trail.push((ca, cb));
                    }
                    (f, g) if f == cb && g == ca => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.used[y] = true;
                if self.search(depth + 1) {
                    return true;
                }
                self.used[y] = false;
            }
            self.undo(mark);
        }
        self.phi[x] = usize::MAX;
        false
    }
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// An explicit F2-isomorphism `A → B` as an index map, if one exists.
pub fn f2_isomorphism<A, B>(a: &A, b: &B) -> Option<Vec<usize>>
where
    A: AdditiveSet + ?Sized,
    B: AdditiveSet + ?Sized,
{
    let (pa, pb) = (a.points(), b.points());
    if pa.len() != pb.len() {
        return None;
    }
    let (ta, tb) = (SumTable::new(&pa), SumTable::new(&pb));
    if ta.doubling() != tb.doubling()
        || sorted(&ta.class_size) != sorted(&tb.class_size)
        || sorted(&ta.fingerprint) != sorted(&tb.fingerprint)
    {
        return None;
    }
    if pa.len() >= 2 && relation_rank(a) != relation_rank(b) {
        return None;
    }
    let mut m = Matcher::new(&ta, &tb);
    if m.search(0) {
        Some(m.phi)
    } else {
        None
    }
}

/// True iff a bijection preserving every relation `x + y = z + t` exists.
pub fn f2_isomorphic<A, B>(a: &A, b: &B) -> bool
where
    A: AdditiveSet + ?Sized,
    B: AdditiveSet + ?Sized,
{
    f2_isomorphism(a, b).is_some()
}

/// Checks that `i ↦ map[i]` is an F2-isomorphism between the two point lists.
pub fn is_f2_isomorphism(a: &[Point], b: &[Point], map: &[usize]) -> bool {
    let k = a.len();
    if b.len() != k || map.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for &m in map {
        if m >= k || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    let (ta, tb) = (SumTable::new(a), SumTable::new(b));
    if ta.doubling() != tb.doubling() {
        return false;
    }
    let mut fwd = vec![NONE; ta.doubling()];
    for i in 0..k {
        for j in i..k {
            let (ca, cb) = (ta.class(i, j), tb.class(map[i], map[j]));
            match fwd[ca as usize] {
                NONE => fwd[ca as usize] = cb,
                f if f == cb => {}
                _ => return false,
            }
        }
    }
    // Equal class counts make the well-defined class map a bijection.
    let mut img = fwd.clone();
    img.sort_unstable();
    img.dedup();
    img.len() == ta.doubling()
}

/// A full-dimensional F2-isomorphic copy of `A` in `Z^d`, `d = dim A ≤ 3`.
///
/// Coordinates come from a saturated integer basis of the kernel of the
/// relation matrix with the first point pinned to the origin, size-reduced and
/// shifted so each coordinate starts at 0. Point order follows the input.
pub fn embed_full_dim<S: AdditiveSet + ?Sized>(set: &S) -> Result<GridSet> {
    let points = set.points();
    let k = points.len();
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "embedding needs at least 2 points, got {k}"
        )));
    }
    let rel = spanning_relations(&points);
    let mut rows: Vec<Vec<i64>> = rel.iter_rows().map(|r| r.to_vec()).collect();
    let mut pin = vec![0; k];
    pin[0] = 1;
    rows.push(pin);
    let mut basis = integer_kernel(&IntMatrix::from_rows(k, &rows))?;
    let d = basis.len();
    if d > MAX_GRID_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    reduce_basis(&mut basis);
    if d == 1 && basis[0][k - 1] < basis[0][0] {
        basis[0].iter_mut().for_each(|x| *x = -*x);
    }
    for v in basis.iter_mut() {
        let m = *v.iter().min().unwrap();
        v.iter_mut().for_each(|x| *x -= m);
    }
    let pts: Vec<Point> = (0..k)
        .map(|i| {
            let mut p = [0; 3];
            for (c, v) in basis.iter().enumerate() {
                p[c] = v[i];
            }
            p
        })
        .collect();
    let identity: Vec<usize> = (0..k).collect();
    if !is_f2_isomorphism(&points, &pts, &identity) {
        return Err(Error::InvalidInput(
            "kernel embedding failed the isomorphism check".into(),
        ));
    }
    GridSet::new(d, pts)
}

/// `x ↦ M x + t` on `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    dim: usize,
    matrix: [[i64; 3]; 3],
    translation: Point,
}

impl AffineMap {
    pub fn new(dim: usize, matrix: [[i64; 3]; 3], translation: Point) -> Result<Self> {
        if dim == 0 || dim > MAX_GRID_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(AffineMap {
            dim,
            matrix,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut matrix = [[0; 3]; 3];
        for (i, row) in matrix.iter_mut().enumerate().take(dim) {
            row[i] = 1;
        }
        AffineMap {
            dim,
            matrix,
            translation: [0; 3],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn determinant(&self) -> i64 {
        let m = &self.matrix;
        match self.dim {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate().take(self.dim) {
            *o = (0..self.dim).map(|j| self.matrix[i][j] * p[j]).sum::<i64>() + self.translation[i];
        }
        out
    }

    pub fn is_injective_on(&self, points: &[Point]) -> bool {
        let mut img: Vec<Point> = points.iter().map(|p| self.apply(p)).collect();
        img.sort_unstable();
        img.windows(2).all(|w| w[0] != w[1])
    }

    /// Every map with linear coefficients in `[-r, r]`, zero translation,
    /// nonzero determinant; lexicographic order.
    pub fn enumerate_linear(dim: usize, radius: u32) -> Vec<AffineMap> {
        let r = radius as i64;
        let n = dim * dim;
        let side = (2 * r + 1) as usize;
        let total = side.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut matrix = [[0; 3]; 3];
            for idx in (0..n).rev() {
                matrix[idx / dim][idx % dim] = (c % side) as i64 - r;
                c /= side;
            }
            let m = AffineMap {
                dim,
                matrix,
                translation: [0; 3],
            };
            if m.determinant() != 0 {
                out.push(m);
            }
        }
        out
    }
}

/// Minimum hull count over the injective images of `g` under bounded maps,
/// ties broken by the lexicographically smallest map.
pub fn min_hull_over_affine_images(g: &GridSet, radius: u32) -> (u64, AffineMap) {
    let d = g.ambient_dim();
    let pts = g.as_points();
    let mut best = (count_points(pts, d), AffineMap::identity(d));
    for m in AffineMap::enumerate_linear(d, radius) {
        if !m.is_injective_on(pts) {
            continue;
        }
        let img: Vec<Point> = pts.iter().map(|p| m.apply(p)).collect();
        let c = count_points(&img, d);
        if (c, &m) < (best.0, &best.1) {
            best = (c, m);
        }
    }
    best
}

/// Where the matching lower bound of an exact volume comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// The conjectured extremal volume at the set's `(k, T, d)`.
    Conjectured,
    /// A value supplied by the caller, e.g. a family's stated volume.
    Stated,
    /// `vol A ≥ |A|`.
    Cardinality,
    /// The canonical embedding's saturated-lattice minimality.
    LatticeMinimality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "bound")]
pub enum Certificate {
    Exact1d,
    ExactCertified(BoundSource),
    UpperBoundOnly,
}

impl Certificate {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Certificate::UpperBoundOnly)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Exact1d => "exact-1d",
            Certificate::ExactCertified(_) => "exact-certified",
            Certificate::UpperBoundOnly => "upper-bound-only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: u64,
    pub dim: usize,
    pub certificate: Certificate,
    pub witness: Option<GridSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeConfig {
    /// Coefficient radius of the affine image search run on top of the
    /// canonical embedding; 0 evaluates the embedding only.
    pub search_radius: u32,
    /// Accept the saturated-lattice argument as a certificate.
    pub lattice_certificate: bool,
    pub stated_lower_bound: Option<u64>,
}

impl Default for VolumeConfig {
    fn default() -> Self {
        VolumeConfig {
            search_radius: 0,
            lattice_certificate: true,
            stated_lower_bound: None,
        }
    }
}

pub fn volume<S: AdditiveSet + ?Sized>(set: &S) -> Result<VolumeResult> {
    volume_with(set, &VolumeConfig::default())
}

pub fn volume_with<S: AdditiveSet + ?Sized>(set: &S, cfg: &VolumeConfig) -> Result<VolumeResult> {
    let emb = embed_full_dim(set)?;
    let d = emb.ambient_dim();
    let k = set.cardinality();
    if d == 1 {
        // The 1-dimensional embedding is the normalization.
        let span = emb.as_points().iter().map(|p| p[0]).max().unwrap() as u64 + 1;
        return Ok(VolumeResult {
            value: span,
            dim: 1,
            certificate: Certificate::Exact1d,
            witness: Some(emb),
        });
    }
    let (value, map) = min_hull_over_affine_images(&emb, cfg.search_radius);
    let witness = if map == AffineMap::identity(d) {
        emb
    } else {
        let pts = emb.as_points().iter().map(|p| map.apply(p)).collect();
        GridSet::new(d, pts)?
    };
    let doubling = SumTable::new(&set.points()).doubling() as u64;
    let conj = conjecture::params_from(k as u64, doubling, d as u64)
        .and_then(|p| conjecture::conjectured_vol(&p))
        .ok();
    let certificate = if conj == Some(value) {
        Certificate::ExactCertified(BoundSource::Conjectured)
    } else if cfg.stated_lower_bound == Some(value) {
        Certificate::ExactCertified(BoundSource::Stated)
    } else if value == k as u64 {
        Certificate::ExactCertified(BoundSource::Cardinality)
    } else if cfg.lattice_certificate {
        Certificate::ExactCertified(BoundSource::LatticeMinimality)
    } else {
        Certificate::UpperBoundOnly
    };
    Ok(VolumeResult {
        value,
        dim: d,
        certificate,
        witness: Some(witness),
    })
}
