//! Lines of PG(3,q) as canonical Plücker 6-tuples.
//!
//! Coordinates are ordered `(p01, p02, p03, p12, p13, p23)`. A tuple is a line
//! iff it is nonzero and lies on the Klein quadric
//! `p01*p23 - p02*p13 + p03*p12 = 0`. Two lines meet iff the polar form
//! [`bilinear`] vanishes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTable};

/// A line in canonical form: the first nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line([Elem; 6]);

impl Line {
    /// Wraps coordinates that are already canonical and on the quadric.
    /// Callers outside the enumeration code should go through [`canonicalize`].
    pub(crate) const fn from_canonical(coords: [Elem; 6]) -> Self {
        Line(coords)
    }

    pub fn coords(&self) -> [Elem; 6] {
        self.0
    }

    pub fn p01(&self) -> Elem {
        self.0[0]
    }
    pub fn p02(&self) -> Elem {
        self.0[1]
    }
    pub fn p03(&self) -> Elem {
        self.0[2]
    }
    pub fn p12(&self) -> Elem {
        self.0[3]
    }
    pub fn p13(&self) -> Elem {
        self.0[4]
    }
    pub fn p23(&self) -> Elem {
        self.0[5]
    }

    /// Coefficients `c` with `bilinear(f, l, self) = sum l[k] * c[k]`.
    pub fn polar(&self, f: &FieldTable) -> [Elem; 6] {
        let [a, b, c, d, e, g] = self.0;
        [g, f.neg(e), d, c, f.neg(b), a]
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.0;
        write!(f, "({a}, {b}, {c}, {d}, {e}, {g})")
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line{self}")
    }
}

/// A raw coordinate tuple as written in certificates: integers, possibly
/// negative, not necessarily normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawTuple(pub [i64; 6]);

impl fmt::Display for RawTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.0;
        write!(f, "({a}, {b}, {c}, {d}, {e}, {g})")
    }
}

impl FromStr for RawTuple {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("expected a parenthesized tuple, got {s:?}"))?;
        let values = inner
            .split(',')
            .map(|t| {
                // the typeset listings use U+2212 for minus
                let t = t.trim().replace('\u{2212}', "-");
                t.parse::<i64>()
                    .map_err(|_| format!("bad coordinate {t:?}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let arr: [i64; 6] = values
            .try_into()
            .map_err(|v: Vec<i64>| format!("expected 6 coordinates, got {}", v.len()))?;
        Ok(RawTuple(arr))
    }
}

impl RawTuple {
    pub fn to_labels(&self, f: &FieldTable) -> Result<[Elem; 6]> {
        let mut out = [0; 6];
        for (o, &v) in out.iter_mut().zip(&self.0) {
            *o = f.label(v)?;
        }
        Ok(out)
    }
}

/// `p01*p23 - p02*p13 + p03*p12`.
pub fn quadric(f: &FieldTable, c: &[Elem; 6]) -> Elem {
    let [a, b, cc, d, e, g] = *c;
    f.add(f.sub(f.mul(a, g), f.mul(b, e)), f.mul(cc, d))
}

/// Scales `raw` so that its first nonzero coordinate is 1 and checks the
/// quadric relation.
pub fn canonicalize(f: &FieldTable, raw: [Elem; 6]) -> Result<Line> {
    let lead = *raw.iter().find(|&&x| x != 0).ok_or(Error::ZeroTuple)?;
    let scale = f.inv(lead);
    let coords = raw.map(|x| f.mul(x, scale));
    if quadric(f, &coords) != 0 {
        return Err(Error::QuadricViolation(Line(raw).to_string()));
    }
    Ok(Line(coords))
}

/// Canonical form of a certificate tuple.
pub fn canonicalize_raw(f: &FieldTable, raw: &RawTuple) -> Result<Line> {
    canonicalize(f, raw.to_labels(f)?).map_err(|e| match e {
        Error::QuadricViolation(_) => Error::QuadricViolation(raw.to_string()),
        other => other,
    })
}

/// The polar form `B(L, M)`; zero iff the lines share a point.
#[inline]
pub fn bilinear(f: &FieldTable, l: &Line, m: &Line) -> Elem {
    dot(f, &l.0, &m.polar(f))
}

/// `sum a[k]*b[k]` in the field.
#[inline]
pub fn dot(f: &FieldTable, a: &[Elem; 6], b: &[Elem; 6]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// True iff `l` and `m` share a point. Every line meets itself.
#[inline]
pub fn meets(f: &FieldTable, l: &Line, m: &Line) -> bool {
    debug_assert!(l.0.iter().chain(&m.0).all(|&x| (x as u32) < f.order()));
    bilinear(f, l, m) == 0
}

/// Distinct and non-meeting.
pub fn skew(f: &FieldTable, l: &Line, m: &Line) -> bool {
    !meets(f, l, m)
}

/// A point of PG(3,q), canonical (first nonzero coordinate 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub(crate) [Elem; 4]);

impl Point {
    pub fn coords(&self) -> [Elem; 4] {
        self.0
    }

    pub fn from_raw(f: &FieldTable, raw: [Elem; 4]) -> Option<Point> {
        let lead = *raw.iter().find(|&&x| x != 0)?;
        let s = f.inv(lead);
        Some(Point(raw.map(|x| f.mul(x, s))))
    }

    /// Position in the fixed point order: `(1,a,b,c)` blocks first, then
    /// `(0,1,b,c)`, `(0,0,1,c)` and `(0,0,0,1)`.
    pub fn index(&self, q: u32) -> usize {
        let q = q as usize;
        let [a, b, c, d] = self.0.map(|x| x as usize);
        if a != 0 {
            b + c * q + d * q * q
        } else if b != 0 {
            q * q * q + c + d * q
        } else if c != 0 {
            q * q * q + q * q + d
        } else {
            q * q * q + q * q + q
        }
    }
}

/// Number of points of PG(3,q).
pub fn point_count(q: u32) -> usize {
    let q = q as usize;
    q * q * q + q * q + q + 1
}

/// The line through two distinct points.
pub fn join(f: &FieldTable, x: &Point, y: &Point) -> Line {
    let (x, y) = (x.0, y.0);
    let p = |i: usize, j: usize| f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
    let raw = [p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3)];
    canonicalize(f, raw).expect("join of distinct points is a line")
}

/// Column `j` of the skew Plücker matrix; it lies on the line when nonzero.
fn matrix_column(f: &FieldTable, l: &Line, j: usize) -> [Elem; 4] {
    let [p01, p02, p03, p12, p13, p23] = l.0;
    let m = [
        [0, p01, p02, p03],
        [f.neg(p01), 0, p12, p13],
        [f.neg(p02), f.neg(p12), 0, p23],
        [f.neg(p03), f.neg(p13), f.neg(p23), 0],
    ];
    [m[0][j], m[1][j], m[2][j], m[3][j]]
}

/// Two distinct points spanning `l`.
pub fn spanning_points(f: &FieldTable, l: &Line) -> (Point, Point) {
    let mut cols = (0..4).filter_map(|j| Point::from_raw(f, matrix_column(f, l, j)));
    let first = cols.next().expect("Plücker matrix of a line has rank 2");
    let second = cols
        .find(|pt| *pt != first)
        .expect("Plücker matrix of a line has rank 2");
    (first, second)
}

/// The q+1 points of `l`.
pub fn points_on(f: &FieldTable, l: &Line) -> Vec<Point> {
    let (x, y) = spanning_points(f, l);
    let mut pts = Vec::with_capacity(f.order() as usize + 1);
    pts.push(x);
    for t in 0..f.order() {
        let t = t as Elem;
        let raw = std::array::from_fn(|k| f.add(y.0[k], f.mul(t, x.0[k])));
        pts.push(Point::from_raw(f, raw).expect("y + t*x is nonzero"));
    }
    pts
}

/// Canonical points of the plane `x_k = 0` (q^2 + q + 1 of them).
pub fn plane_points(f: &FieldTable, k: usize) -> Vec<Point> {
    let q = f.order() as usize;
    let mut out = Vec::with_capacity(q * q + q + 1);
    let others: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    // enumerate (1,a,b), (0,1,b), (0,0,1) over the three free coordinates
    for lead in 0..3 {
        let free = 2 - lead;
        for n in 0..q.pow(free as u32) {
            let mut c = [0 as Elem; 4];
            c[others[lead]] = 1;
            let mut rest = n;
            for slot in &others[lead + 1..] {
                c[*slot] = (rest % q) as Elem;
                rest /= q;
            }
            out.push(Point(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(f: &FieldTable, v: [i64; 6]) -> [Elem; 6] {
        RawTuple(v).to_labels(f).unwrap()
    }

    #[test]
    fn canonicalize_q29_certificate_tuple() {
        // oracle: integer arithmetic mod 29. inv(9) = 13 since 9*13 = 117 = 4*29 + 1.
        let f = FieldTable::new(29).unwrap();
        let inv9 = (1..29).find(|x| 9 * x % 29 == 1).unwrap();
        assert_eq!(inv9, 13);
        let expected: Vec<Elem> = [9i64, 0, 9, -1, 0, 1]
            .iter()
            .map(|&v| ((v.rem_euclid(29)) * inv9 % 29) as Elem)
            .collect();
        assert_eq!(expected, vec![1, 0, 1, 16, 0, 13]);
        let l = canonicalize(&f, raw(&f, [9, 0, 9, -1, 0, 1])).unwrap();
        assert_eq!(l.coords().to_vec(), expected);
    }

    #[test]
    fn canonicalize_edge_cases() {
        let f = FieldTable::new(5).unwrap();
        let l = canonicalize(&f, [0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(l.coords(), [0, 0, 0, 0, 0, 1]);
        assert_eq!(canonicalize(&f, [0; 6]), Err(Error::ZeroTuple));
        assert!(matches!(
            canonicalize(&f, [1, 0, 0, 0, 0, 1]),
            Err(Error::QuadricViolation(_))
        ));
    }

    #[test]
    fn q8_certificate_seed_is_on_quadric() {
        let f = FieldTable::new(8).unwrap();
        let l = canonicalize(&f, [1, 4, 1, 0, 6, 5]).unwrap();
        assert_eq!(l.coords(), [1, 4, 1, 0, 6, 5]);
        assert_eq!(quadric(&f, &l.coords()), 0);
    }

    #[test]
    fn meeting_examples() {
        for q in [2, 3, 8, 29] {
            let f = FieldTable::new(q).unwrap();
            let a = canonicalize(&f, [0, 0, 0, 0, 0, 1]).unwrap();
            let b = canonicalize(&f, [1, 0, 3 % q as Elem, 0, 0, 0]).unwrap();
            assert_eq!(bilinear(&f, &a, &b), 1);
            assert!(!meets(&f, &a, &b));
            assert!(meets(&f, &a, &a));
            assert!(meets(&f, &b, &b));
        }
    }

    #[test]
    fn canonicalize_is_scale_invariant() {
        let f = FieldTable::new(9).unwrap();
        // pick a few lines by joining points
        let pts: Vec<Point> = plane_points(&f, 0);
        for w in pts.windows(2).step_by(7) {
            let l = join(&f, &w[0], &w[1]);
            for s in 1..9 {
                let scaled = l.coords().map(|x| f.mul(x, s));
                assert_eq!(canonicalize(&f, scaled).unwrap(), l);
            }
            assert_eq!(canonicalize(&f, l.coords()).unwrap(), l);
        }
    }

    #[test]
    fn points_lie_on_their_line() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = FieldTable::new(q).unwrap();
            for (x, y) in plane_points(&f, 3)
                .iter()
                .zip(plane_points(&f, 0).iter().rev())
            {
                if x == y {
                    continue;
                }
                let l = join(&f, x, y);
                let pts = points_on(&f, &l);
                assert_eq!(pts.len(), q as usize + 1);
                let mut sorted = pts.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), q as usize + 1);
                assert!(pts.contains(x) && pts.contains(y));
                for pair in pts.windows(2) {
                    assert_eq!(join(&f, &pair[0], &pair[1]), l);
                }
            }
        }
    }

    #[test]
    fn point_indices_are_a_bijection() {
        for q in [2u32, 3, 4] {
            let f = FieldTable::new(q).unwrap();
            let mut seen = vec![0; point_count(q)];
            for n in 1..q.pow(4) {
                let raw = std::array::from_fn(|k| ((n / q.pow(k as u32)) % q) as Elem);
                let pt = Point::from_raw(&f, raw).unwrap();
                if pt.coords() == raw {
                    seen[pt.index(q)] += 1;
                }
            }
            assert!(seen.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn raw_tuple_parsing() {
        let t: RawTuple = "(9, 0, -3, 3, 0, 1)".parse().unwrap();
        assert_eq!(t.0, [9, 0, -3, 3, 0, 1]);
        let t: RawTuple = "(9, 0, \u{2212}3, 3, 0, 1)".parse().unwrap();
        assert_eq!(t.0[2], -3);
        assert!("(1, 2, 3)".parse::<RawTuple>().is_err());
        assert!("1, 2, 3, 4, 5, 6".parse::<RawTuple>().is_err());
    }
}
