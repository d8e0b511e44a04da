//! Lattice points in convex hulls, with integer predicates only.

use num_integer::Integer;

use crate::grid::{affine_rank, cross, dot, sub, GridSet, Point};

/// `|conv(P) ∩ Z^m|`.
pub fn hull_lattice_count(p: &GridSet) -> u64 {
    count_points(p.as_points(), p.ambient_dim())
}

pub(crate) fn count_points(points: &[Point], ambient_dim: usize) -> u64 {
    match ambient_dim {
        1 => {
            let lo = points.iter().map(|p| p[0]).min().unwrap();
            let hi = points.iter().map(|p| p[0]).max().unwrap();
            (hi - lo) as u64 + 1
        }
        2 => pick_count(points),
        _ => halfspace_count(points),
    }
}

fn cross2(o: &Point, a: &Point, b: &Point) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Counter-clockwise hull vertices without collinear points (monotone chain).
pub(crate) fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Pick's theorem on the hull polygon: `I + B = A + B/2 + 1`.
fn pick_count(points: &[Point]) -> u64 {
    let h = convex_hull_2d(points);
    let edge = |a: &Point, b: &Point| ((b[0] - a[0]).abs() as u64).gcd(&((b[1] - a[1]).abs() as u64));
    match h.len() {
        0 => 0,
        1 => 1,
        2 => edge(&h[0], &h[1]) + 1,
        n => {
            let mut twice_area: i128 = 0;
            let mut boundary: u64 = 0;
            for i in 0..n {
                let (a, b) = (&h[i], &h[(i + 1) % n]);
                twice_area += a[0] as i128 * b[1] as i128 - b[0] as i128 * a[1] as i128;
                boundary += edge(a, b);
            }
            let twice_area = twice_area.unsigned_abs() as u64;
            (twice_area + boundary) / 2 + 1
        }
    }
}

fn primitive(n: Point) -> Option<Point> {
    let g = n.iter().fold(0i64, |g, &c| g.gcd(&c));
    if g == 0 {
        return None;
    }
    let mut v = [n[0] / g, n[1] / g, n[2] / g];
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        v = [-v[0], -v[1], -v[2]];
    }
    Some(v)
}

/// Constraint `n · x ≤ h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct HalfSpace {
    n: Point,
    h: i64,
}

/// Valid half-spaces whose intersection is exactly `conv(P)`, including the
/// equalities cutting out its affine hull when it is lower-dimensional.
fn hull_halfspaces(points: &[Point]) -> Vec<HalfSpace> {
    let r = affine_rank(points);
    let mut normals: Vec<Point> = Vec::new();
    let k = points.len();
    for i in 0..k {
        for j in i + 1..k {
            let u = sub(&points[j], &points[i]);
            if r < 3 {
                normals.push(u);
                for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                    normals.push(cross(&u, &e));
                }
            }
            for l in j + 1..k {
                normals.push(cross(&u, &sub(&points[l], &points[i])));
            }
        }
    }
    if r == 0 {
        normals.extend([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }
    let mut normals: Vec<Point> = normals.into_iter().filter_map(primitive).collect();
    normals.sort_unstable();
    normals.dedup();
    let mut out = Vec::with_capacity(2 * normals.len());
    for n in normals {
        let vals = points.iter().map(|p| dot(&n, p));
        let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        out.push(HalfSpace { n, h: hi });
        out.push(HalfSpace {
            n: [-n[0], -n[1], -n[2]],
            h: -lo,
        });
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Scans the bounding box over `(y, z)` and solves each constraint for the `x` range.
fn halfspace_count(points: &[Point]) -> u64 {
    let hs = hull_halfspaces(points);
    let lo = |c: usize| points.iter().map(|p| p[c]).min().unwrap();
    let hi = |c: usize| points.iter().map(|p| p[c]).max().unwrap();
    let mut total = 0u64;
    for y in lo(1)..=hi(1) {
        'z: for z in lo(2)..=hi(2) {
            let mut xl = lo(0);
            let mut xh = hi(0);
            for c in &hs {
                let rest = c.h - c.n[1] * y - c.n[2] * z;
                match c.n[0].signum() {
                    0 => {
                        if rest < 0 {
                            continue 'z;
                        }
                    }
                    1 => xh = xh.min(Integer::div_floor(&rest, &c.n[0])),
                    _ => xl = xl.max(Integer::div_ceil(&rest, &c.n[0])),
                }
                if xl > xh {
                    continue 'z;
                }
            }
            total += (xh - xl + 1) as u64;
        }
    }
    total
}

/// Membership in `conv(P)` for any point list in `Z^3`.
pub fn in_hull(points: &[Point], x: &Point) -> bool {
    hull_halfspaces(points).iter().all(|c| dot(&c.n, x) <= c.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(s: &str) -> GridSet {
        s.parse().unwrap()
    }

    #[test]
    fn segment_count() {
        let g = GridSet::from_rows(&(0..=9).map(|x| vec![x]).collect::<Vec<_>>()).unwrap();
        assert_eq!(hull_lattice_count(&g), 10);
    }

    #[test]
    fn thin_triangle() {
        for n in 1..8 {
            let g = grid(&format!("0,0;{n},0;0,1"));
            assert_eq!(hull_lattice_count(&g), n as u64 + 2);
        }
    }

    #[test]
    fn family_iii_shape() {
        // ([0,11] \ [1,2]) × {0} ∪ {(0,1)}
        let mut rows: Vec<Vec<i64>> = vec![vec![0, 0]];
        rows.extend((3..=11).map(|x| vec![x, 0]));
        rows.push(vec![0, 1]);
        let g = GridSet::from_rows(&rows).unwrap();
        assert_eq!(hull_lattice_count(&g), 13);
    }

    #[test]
    fn degenerate_two_dimensional_inputs() {
        assert_eq!(hull_lattice_count(&grid("0,0;4,6")), 3);
        assert_eq!(hull_lattice_count(&grid("0,0;2,3;4,6;6,9")), 4);
        assert_eq!(hull_lattice_count(&grid("3,3")), 1);
    }

    #[test]
    fn unit_cube_and_simplex() {
        let cube = grid("0,0,0;1,0,0;0,1,0;0,0,1;1,1,0;1,0,1;0,1,1;1,1,1");
        assert_eq!(hull_lattice_count(&cube), 8);
        let simplex = grid("0,0,0;2,0,0;0,2,0;0,0,2");
        assert_eq!(hull_lattice_count(&simplex), 10);
    }

    #[test]
    fn degenerate_three_dimensional_inputs() {
        // planar, linear and single-point hulls embedded in Z^3
        assert_eq!(hull_lattice_count(&grid("0,0,0;3,0,3;0,1,0")), 5);
        assert_eq!(hull_lattice_count(&grid("0,0,0;2,2,2")), 3);
        assert_eq!(hull_lattice_count(&grid("1,2,3")), 1);
    }

    #[test]
    fn halfspace_route_matches_pick() {
        let samples = [
            "0,0;5,1;2,7;-3,4",
            "0,0;1,0;0,1",
            "0,0;7,3",
            "0,0;4,0;4,4;0,4;2,2",
            "-2,-1;3,5;6,-4;0,9;1,1",
        ];
        for s in samples {
            let g = grid(s);
            assert_eq!(pick_count(g.as_points()), halfspace_count(g.as_points()), "{s}");
        }
    }

    #[test]
    fn membership() {
        let pts = [[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]];
        assert!(in_hull(&pts, &[1, 1, 0]));
        assert!(!in_hull(&pts, &[1, 1, 1]));
    }
}
