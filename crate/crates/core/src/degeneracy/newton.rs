use num_traits::{One, Zero};

use crate::symcore::{int, Rational};

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonReport {
    /// Vertices of the lower-left boundary, ascending in the first coordinate.
    pub polygon_vertices: Vec<Point>,
    pub t_c: Rational,
    pub alpha: Rational,
    /// Hull of (0,0), (1,1) and ((j+1)/(j+k+2), 1/(j+k+2)); collinear points are kept.
    pub lp_region_vertices: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Newton polygon of the quadrants at (j+1, k+1), (j,k) ∈ E.
pub fn newton_predict(e: &[(u32, u32)]) -> NewtonReport {
    assert!(!e.is_empty(), "newton_predict needs at least one pair");
    let mut pts: Vec<Point> = e
        .iter()
        .map(|&(j, k)| (int(j as i64 + 1), int(k as i64 + 1)))
        .collect();
    pts.sort();
    pts.dedup();
    // lower hull by monotone chain, then keep the stretch from min-x to min-y
    let mut hull: Vec<Point> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rational::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let min_y = hull.iter().map(|p| p.1.clone()).min().expect("nonempty");
    let end = hull.iter().position(|p| p.1 == min_y).expect("present");
    hull.truncate(end + 1);
    // remove points that are not strictly decreasing in y (staircase dominated)
    let mut vertices: Vec<Point> = Vec::new();
    for p in hull {
        if vertices.last().is_some_and(|q: &Point| p.1 >= q.1) {
            continue;
        }
        vertices.push(p);
    }
    let t_c = diagonal_intersection(&vertices);
    let alpha = Rational::one() / (int(2) * &t_c);
    let mut region: Vec<Point> = vec![(int(0), int(0)), (int(1), int(1))];
    for &(j, k) in e {
        let s = int((j + k + 2) as i64);
        region.push((int(j as i64 + 1) / &s, Rational::one() / &s));
    }
    NewtonReport {
        polygon_vertices: vertices,
        t_c,
        alpha,
        lp_region_vertices: hull_keep_collinear(region),
    }
}

fn diagonal_intersection(v: &[Point]) -> Rational {
    let first = &v[0];
    if first.1 <= first.0 {
        return first.0.clone();
    }
    let last = &v[v.len() - 1];
    if last.0 <= last.1 {
        return last.1.clone();
    }
    for w in v.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let fa = &a.0 - &a.1;
        let fb = &b.0 - &b.1;
        if fa <= Rational::zero() && fb >= Rational::zero() {
            let s = -&fa / (&fb - &fa);
            return &a.0 + &(s * (&b.0 - &a.0));
        }
    }
    unreachable!("diagonal must cross the staircase")
}

/// Convex hull keeping boundary points that are collinear with hull edges; ascending order.
fn hull_keep_collinear(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let build = |iter: &mut dyn Iterator<Item = &Point>| {
        let mut h: Vec<Point> = Vec::new();
        for p in iter {
            while h.len() >= 2 && cross(&h[h.len() - 2], &h[h.len() - 1], p) < Rational::zero() {
                h.pop();
            }
            h.push(p.clone());
        }
        h
    };
    let lower = build(&mut pts.iter());
    let upper = build(&mut pts.iter().rev());
    let mut all: Vec<Point> = lower.into_iter().chain(upper).collect();
    all.sort();
    all.dedup();
    all
}

impl NewtonReport {
    /// Whether (1/p, α) lies in the closed region.
    pub fn lp_contains(&self, q: &Point) -> bool {
        let v = &self.lp_region_vertices;
        let n = v.len();
        if n == 1 {
            return &v[0] == q;
        }
        // strict hull in counterclockwise order
        let mut pts = v.clone();
        pts.sort();
        let chain = |iter: &mut dyn Iterator<Item = &Point>| {
            let mut h: Vec<Point> = Vec::new();
            for p in iter {
                while h.len() >= 2 && cross(&h[h.len() - 2], &h[h.len() - 1], p) <= Rational::zero() {
                    h.pop();
                }
                h.push(p.clone());
            }
            h
        };
        let mut lower = chain(&mut pts.iter());
        let mut upper = chain(&mut pts.iter().rev());
        lower.pop();
        upper.pop();
        let ccw: Vec<Point> = lower.into_iter().chain(upper).collect();
        if ccw.len() <= 2 {
            // degenerate: segment between the extreme points
            let (a, b) = (&pts[0], &pts[pts.len() - 1]);
            if !cross(a, b, q).is_zero() {
                return false;
            }
            let lo = a.0.clone().min(b.0.clone());
            let hi = a.0.clone().max(b.0.clone());
            let lo1 = a.1.clone().min(b.1.clone());
            let hi1 = a.1.clone().max(b.1.clone());
            return q.0 >= lo && q.0 <= hi && q.1 >= lo1 && q.1 <= hi1;
        }
        (0..ccw.len()).all(|i| cross(&ccw[i], &ccw[(i + 1) % ccw.len()], q) >= Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    #[test]
    fn nondegenerate_corner() {
        let r = newton_predict(&[(0, 0)]);
        assert_eq!(r.polygon_vertices, vec![(int(1), int(1))]);
        assert_eq!(r.t_c, int(1));
        assert_eq!(r.alpha, rat(1, 2));
    }

    #[test]
    fn type_zero_one_region() {
        let r = newton_predict(&[(0, 1)]);
        assert_eq!(r.t_c, int(2));
        assert_eq!(
            r.lp_region_vertices,
            vec![(int(0), int(0)), (rat(1, 3), rat(1, 3)), (int(1), int(1))]
        );
        assert!(r.lp_contains(&(rat(1, 2), rat(1, 2))));
        assert!(!r.lp_contains(&(rat(1, 2), rat(1, 3))));
    }

    #[test]
    fn region_with_area() {
        let r = newton_predict(&[(1, 0)]);
        // vertex (2/3, 1/3)
        assert!(r.lp_region_vertices.contains(&(rat(2, 3), rat(1, 3))));
        assert!(r.lp_contains(&(rat(1, 2), rat(2, 5))));
        assert!(!r.lp_contains(&(rat(1, 2), rat(1, 5))));
    }

    #[test]
    fn antidiagonal_staircase() {
        for n in 2..=6u32 {
            let e: Vec<(u32, u32)> = (0..=n - 2).map(|j| (j, n - 2 - j)).collect();
            let r = newton_predict(&e);
            assert_eq!(r.t_c, rat(n as i64, 2));
            assert_eq!(r.alpha, rat(1, n as i64));
        }
    }

    #[test]
    fn dominated_points_dropped() {
        let r = newton_predict(&[(0, 3), (3, 0), (3, 3), (1, 1)]);
        assert_eq!(r.polygon_vertices, vec![(int(1), int(4)), (int(2), int(2)), (int(4), int(1))]);
        assert_eq!(r.t_c, int(2));
    }
}
