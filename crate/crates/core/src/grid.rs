//! Point sets in `Z^m` (m ≤ 3) and the common view shared with [`IntSet`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::IntSet;

/// A lattice point; coordinates beyond the ambient dimension are zero.
pub type Point = [i64; 3];

pub const MAX_GRID_DIM: usize = 3;

pub(crate) fn add(p: &Point, q: &Point) -> Point {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2]]
}

pub(crate) fn sub(p: &Point, q: &Point) -> Point {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

pub(crate) fn cross(u: &Point, v: &Point) -> Point {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn dot(u: &Point, v: &Point) -> i64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Anything that can be viewed as a finite list of distinct lattice points.
pub trait AdditiveSet {
    fn points(&self) -> Vec<Point>;

    fn cardinality(&self) -> usize;
}

impl AdditiveSet for IntSet {
    fn points(&self) -> Vec<Point> {
        self.elements().iter().map(|&x| [x as i64, 0, 0]).collect()
    }

    fn cardinality(&self) -> usize {
        self.len()
    }
}

/// Distinct points in `Z^m`, `1 ≤ m ≤ 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSet {
    dim: usize,
    points: Vec<Point>,
}

impl GridSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 || dim > MAX_GRID_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        if points.iter().any(|p| p[dim..].iter().any(|&c| c != 0)) {
            return Err(Error::InvalidInput(format!(
                "coordinates beyond dimension {dim} must be zero"
            )));
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("points must be distinct".into()));
        }
        Ok(GridSet { dim, points })
    }

    /// Builds from coordinate rows of equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("ragged coordinate rows".into()));
        }
        if dim == 0 || dim > MAX_GRID_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let pts = rows
            .iter()
            .map(|r| {
                let mut p = [0; 3];
                p[..dim].copy_from_slice(r);
                p
            })
            .collect();
        GridSet::new(dim, pts)
    }

    /// Ambient dimension `m`.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn as_points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the affine hull of the points.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points)
    }

    pub fn coords(&self, i: usize) -> &[i64] {
        &self.points[i][..self.dim]
    }
}

/// Rank of `{p - p_0}`, at most 3.
pub(crate) fn affine_rank(points: &[Point]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, p0)).collect();
    let Some(u) = diffs.iter().find(|d| **d != [0, 0, 0]) else {
        return 0;
    };
    let Some(n) = diffs
        .iter()
        .map(|d| cross(u, d))
        .find(|c| *c != [0, 0, 0])
    else {
        return 1;
    };
    if diffs.iter().any(|d| dot(&n, d) != 0) {
        3
    } else {
        2
    }
}

impl AdditiveSet for GridSet {
    fn points(&self) -> Vec<Point> {
        self.points.clone()
    }

    fn cardinality(&self) -> usize {
        self.points.len()
    }
}

/// Text form: semicolon-separated points, comma-separated coordinates.
impl fmt::Display for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, c) in p[..self.dim].iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GridSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut rows = Vec::new();
        for pt in s.split(';') {
            let row = pt
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    t.parse::<i64>()
                        .map_err(|_| Error::parse(t, "expected an integer coordinate"))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let dim = rows[0].len();
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::parse(
                s.split(';').nth(bad).unwrap_or(""),
                format!("expected {dim} coordinates"),
            ));
        }
        if dim > MAX_GRID_DIM {
            return Err(Error::parse(s, "at most 3 coordinates per point"));
        }
        GridSet::from_rows(&rows)
    }
}

/// Either an integer set or a grid set, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum AnySet {
    Int(IntSet),
    Grid(GridSet),
}

impl AnySet {
    pub fn as_int(&self) -> Option<&IntSet> {
        match self {
            AnySet::Int(a) => Some(a),
            AnySet::Grid(_) => None,
        }
    }

    pub fn as_grid(&self) -> Option<&GridSet> {
        match self {
            AnySet::Grid(g) => Some(g),
            AnySet::Int(_) => None,
        }
    }
}

impl AdditiveSet for AnySet {
    fn points(&self) -> Vec<Point> {
        match self {
            AnySet::Int(a) => a.points(),
            AnySet::Grid(g) => g.points(),
        }
    }

    fn cardinality(&self) -> usize {
        match self {
            AnySet::Int(a) => a.len(),
            AnySet::Grid(g) => g.len(),
        }
    }
}

impl fmt::Display for AnySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnySet::Int(a) => a.fmt(f),
            AnySet::Grid(g) => g.fmt(f),
        }
    }
}

/// A literal containing `;` is a grid set, anything else an integer set.
impl FromStr for AnySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains(';') {
            s.parse().map(AnySet::Grid)
        } else {
            s.parse().map(AnySet::Int)
        }
    }
}

impl From<IntSet> for AnySet {
    fn from(a: IntSet) -> Self {
        AnySet::Int(a)
    }
}

impl From<GridSet> for AnySet {
    fn from(g: GridSet) -> Self {
        AnySet::Grid(g)
    }
}

/// Pairwise sums `{p + q}` of a point list, sorted and deduplicated.
pub fn point_sumset(points: &[Point]) -> Vec<Point> {
    let mut out = Vec::with_capacity(points.len() * (points.len() + 1) / 2);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i..] {
            out.push(add(p, q));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `|2A|` for any additive set.
pub fn doubling_of<S: AdditiveSet + ?Sized>(set: &S) -> usize {
    point_sumset(&set.points()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_text_round_trip() {
        let g: GridSet = "0,0;1,0;0,1".parse().unwrap();
        assert_eq!(g.ambient_dim(), 2);
        assert_eq!(g.len(), 3);
        assert_eq!(g.to_string(), "0,0;1,0;0,1");
        assert_eq!(g.affine_dim(), 2);
    }

    #[test]
    fn grid_rejects_bad_literals() {
        assert!("0,0;1".parse::<GridSet>().is_err());
        assert!("0,0;0,0".parse::<GridSet>().is_err());
        assert!("0,0,0,0;1,0,0,0".parse::<GridSet>().is_err());
        match "0,0;1,q".parse::<GridSet>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "q"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn any_set_dispatch() {
        assert!(matches!("0,1,3".parse::<AnySet>(), Ok(AnySet::Int(_))));
        assert!(matches!("0,0;1,1".parse::<AnySet>(), Ok(AnySet::Grid(_))));
    }

    #[test]
    fn affine_rank_cases() {
        assert_eq!(affine_rank(&[[0, 0, 0]]), 0);
        assert_eq!(affine_rank(&[[0, 0, 0], [2, 2, 0], [4, 4, 0]]), 1);
        assert_eq!(affine_rank(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]), 2);
        assert_eq!(affine_rank(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3);
    }

    #[test]
    fn grid_doubling() {
        let g: GridSet = "0,0;1,0;0,1".parse().unwrap();
        assert_eq!(doubling_of(&g), 6);
    }
}
