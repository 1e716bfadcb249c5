//! Secrecy capacity regions of the deterministic model as exact 2-D polytopes.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::detmodel::{classify, regime, DetConfig, Regime};
use crate::error::{invalid, Result, ZicError};
use crate::verifier::Rational;

/// Half-plane `a*R1 + b*R2 <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Constraint {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>, c: impl Into<Rational>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    fn lhs(&self, p: &Point) -> Rational {
        self.a * p.0 + self.b * p.1
    }

    pub fn holds(&self, p: &Point) -> bool {
        self.lhs(p) <= self.c
    }

    fn tight(&self, p: &Point) -> bool {
        self.lhs(p) == self.c
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*R1 + {}*R2 <= {}", self.a, self.b, self.c)
    }
}

impl Serialize for Constraint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b, self.c]
            .map(|v| v.to_string())
            .serialize(s)
    }
}

/// Rate pair `(R1, R2)`.
pub type Point = (Rational, Rational);

/// Nonnegative rate pairs satisfying every constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateRegion {
    pub constraints: Vec<Constraint>,
}

impl RateRegion {
    pub fn new(constraints: Vec<Constraint>) -> Self {
        Self { constraints }
    }

    /// The user constraints followed by `-R1 <= 0` and `-R2 <= 0`.
    fn with_nonnegativity(&self) -> Vec<Constraint> {
        let mut all = self.constraints.clone();
        all.push(Constraint::new(-1, 0, 0));
        all.push(Constraint::new(0, -1, 0));
        all
    }
}

pub fn capacity_region(cfg: &DetConfig) -> Result<RateRegion> {
    let (m, n, c) = (
        i64::from(cfg.m()),
        i64::from(cfg.n()),
        i64::from(cfg.c()),
    );
    let constraints = match regime(cfg)? {
        Regime::WeakModerate => vec![
            Constraint::new(1, 0, m),
            Constraint::new(0, 1, m),
            Constraint::new(1, 1, 2 * m - n + c),
        ],
        Regime::High => vec![
            Constraint::new(1, 0, m),
            Constraint::new(0, 1, 2 * m - n),
            Constraint::new(1, 1, m + c),
        ],
        Regime::VeryHigh => vec![Constraint::new(1, 0, m), Constraint::new(0, 1, 0)],
    };
    Ok(RateRegion::new(constraints))
}

pub fn contains(region: &RateRegion, p: &Point) -> bool {
    !p.0.is_negative() && !p.1.is_negative() && region.constraints.iter().all(|k| k.holds(p))
}

fn intersect(k: &Constraint, l: &Constraint) -> Option<Point> {
    let det = k.a * l.b - k.b * l.a;
    if det.is_zero() {
        return None;
    }
    Some((
        (k.c * l.b - k.b * l.c) / det,
        (k.a * l.c - k.c * l.a) / det,
    ))
}

/// Some nonzero direction `d >= 0` along which the region recedes forever.
fn recession_direction(constraints: &[Constraint]) -> Option<Point> {
    let one = Rational::from(1);
    let zero = Rational::from(0);
    let mut candidates = vec![(one, zero), (zero, one)];
    for k in constraints {
        // Directions on the boundary of a*d1 + b*d2 <= 0.
        candidates.push((k.b, -k.a));
        candidates.push((-k.b, k.a));
    }
    candidates.into_iter().find(|d| {
        !d.0.is_negative()
            && !d.1.is_negative()
            && !(d.0.is_zero() && d.1.is_zero())
            && constraints
                .iter()
                .all(|k| k.a * d.0 + k.b * d.1 <= zero)
    })
}

/// Vertices in counterclockwise order, starting from the lowest, then
/// leftmost, point.
pub fn vertices(region: &RateRegion) -> Result<Vec<Point>> {
    let all = region.with_nonnegativity();
    if recession_direction(&all).is_some() {
        return Err(ZicError::Unbounded);
    }
    let mut pts: Vec<Point> = Vec::new();
    for (i, k) in all.iter().enumerate() {
        for l in &all[i + 1..] {
            if let Some(p) = intersect(k, l) {
                if all.iter().all(|h| h.holds(&p)) && !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    if pts.is_empty() {
        return Err(invalid("region is empty"));
    }
    sort_ccw(&mut pts);
    debug_assert!(pts
        .iter()
        .all(|p| all.iter().filter(|k| k.tight(p)).count() >= 2));
    Ok(pts)
}

fn sort_ccw(pts: &mut [Point]) {
    let len = Rational::from(pts.len() as i64);
    let cx = pts.iter().map(|p| p.0).sum::<Rational>() / len;
    let cy = pts.iter().map(|p| p.1).sum::<Rational>() / len;
    // Angle order around the centroid; half-plane split keeps it exact.
    let upper = |v: &Point| v.1 > Rational::zero() || (v.1.is_zero() && v.0 >= Rational::zero());
    pts.sort_by(|p, q| {
        let u = (p.0 - cx, p.1 - cy);
        let v = (q.0 - cx, q.1 - cy);
        match (upper(&u), upper(&v)) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => (v.0 * u.1).cmp(&(u.0 * v.1)),
        }
    });
    let start = (0..pts.len())
        .min_by(|&i, &j| (pts[i].1, pts[i].0).cmp(&(pts[j].1, pts[j].0)))
        .unwrap_or(0);
    pts.rotate_left(start);
}

/// Largest achievable `R1 + R2`.
pub fn sum_capacity(cfg: &DetConfig) -> Result<Rational> {
    sum_capacity_of(cfg.m(), cfg.n(), cfg.c())
}

fn sum_capacity_of(m: u32, n: u32, c: u32) -> Result<Rational> {
    let (m64, n64, c64) = (i64::from(m), i64::from(n), i64::from(c));
    let value = match classify(m, n)? {
        Regime::WeakModerate => (2 * m64).min(2 * m64 - n64 + c64),
        Regime::High => m64 + c64.min(2 * m64 - n64),
        Regime::VeryHigh => m64,
    };
    Ok(Rational::from(value))
}

/// `(alpha, sum_capacity / m)` for each `alpha`, with `n = alpha * m`.
///
/// Pure arithmetic, so `n` is not bounded by the level cap of [`DetConfig`].
pub fn sum_capacity_curve(
    m: u32,
    c: u32,
    alpha_grid: &[Rational],
) -> Result<Vec<(Rational, Rational)>> {
    if m == 0 {
        return Err(ZicError::UndefinedAlpha);
    }
    let m_r = Rational::from(i64::from(m));
    alpha_grid
        .iter()
        .map(|&alpha| {
            let n = alpha * m_r;
            let levels = u32::try_from(n.to_integer()).ok().filter(|_| n.is_integer());
            let Some(levels) = levels else {
                return Err(invalid(format!(
                    "alpha = {alpha} gives non-integral or out-of-range n = {n} for m = {m}"
                )));
            };
            Ok((alpha, sum_capacity_of(m, levels, c)? / m_r))
        })
        .collect()
}
