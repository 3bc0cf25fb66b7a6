//! Exact horizontal placement for a fixed set of per-class coverage radii.
//!
//! User `i` is covered by a UAV whose ground projection lies inside the disc of
//! radius `R_class(i)` centered at the user. Maximizing the covered count is
//! therefore a maximum-depth problem over an arrangement of discs. Some
//! deepest point is either a disc center (when one disc sits inside all the
//! others of an optimal set) or a vertex of the arrangement, so scoring every
//! user position and every pairwise circle intersection is exact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::channel::ClassId;
use crate::error::{Error, Result};
use crate::radius::CoverageDisc;

/// Relative slack of the closed-disc membership test.
pub const GEOM_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// A ground user: position in metres and QoS class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct User {
    pub x: f64,
    pub y: f64,
    pub class_id: ClassId,
}

impl User {
    pub fn new(x: f64, y: f64, class_id: u32) -> Self {
        User {
            x,
            y,
            class_id: ClassId(class_id),
        }
    }
}

/// Coverage radius of every class at one altitude.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RadiusMap(BTreeMap<ClassId, f64>);

impl RadiusMap {
    pub fn new() -> Self {
        RadiusMap(BTreeMap::new())
    }

    pub fn insert(&mut self, class_id: ClassId, radius: f64) -> Result<()> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::input(format!(
                "radius of class {class_id} must be finite and >= 0, got {radius}"
            )));
        }
        self.0.insert(class_id, radius);
        Ok(())
    }

    pub fn from_discs(discs: &[CoverageDisc]) -> Result<Self> {
        let mut map = RadiusMap::new();
        for d in discs {
            map.insert(d.class_id, d.radius)?;
        }
        Ok(map)
    }

    pub fn get(&self, class_id: ClassId) -> Option<f64> {
        self.0.get(&class_id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClassId, f64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    pub fn max_radius(&self) -> f64 {
        self.0.values().copied().fold(0.0, f64::max)
    }

    /// Per-user radii, failing on a class id missing from the map.
    fn per_user(&self, users: &[User]) -> Result<Vec<f64>> {
        users
            .iter()
            .enumerate()
            .map(|(i, u)| {
                self.get(u.class_id).ok_or_else(|| {
                    Error::input(format!("user {i} references unknown class {}", u.class_id))
                })
            })
            .collect()
    }
}

/// Axis-aligned rectangle, metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Self {
        Rect {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    /// Smallest rectangle containing every user; `None` for an empty slice.
    pub fn bounding(users: &[User]) -> Option<Self> {
        let first = users.first()?;
        let init = Rect::new(first.x, first.y, first.x, first.y);
        Some(users.iter().fold(init, |r, u| Rect {
            x_min: r.x_min.min(u.x),
            y_min: r.y_min.min(u.y),
            x_max: r.x_max.max(u.x),
            y_max: r.y_max.max(u.y),
        }))
    }

    pub fn diagonal(&self) -> f64 {
        (self.x_max - self.x_min).hypot(self.y_max - self.y_min)
    }
}

/// A horizontal UAV position with the resulting per-user coverage indicators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementSolution {
    pub x_d: f64,
    pub y_d: f64,
    pub covered: Vec<bool>,
    pub covered_count: usize,
}

impl PlacementSolution {
    /// Covered users per class.
    pub fn per_class(&self, users: &[User]) -> BTreeMap<ClassId, usize> {
        let mut counts = BTreeMap::new();
        for (u, &c) in users.iter().zip(&self.covered) {
            let e = counts.entry(u.class_id).or_insert(0);
            if c {
                *e += 1;
            }
        }
        counts
    }
}

#[inline]
fn covers(dx: f64, dy: f64, radius: f64) -> bool {
    let reach = radius * (1.0 + GEOM_EPS);
    dx * dx + dy * dy <= reach * reach
}

/// Coverage indicators for a UAV projected at `(x, y)`.
pub fn evaluate_center(x: f64, y: f64, users: &[User], radii: &RadiusMap) -> Result<PlacementSolution> {
    let per_user = radii.per_user(users)?;
    Ok(evaluate_with(x, y, users, &per_user))
}

fn evaluate_with(x: f64, y: f64, users: &[User], per_user: &[f64]) -> PlacementSolution {
    let covered: Vec<bool> = users
        .iter()
        .zip(per_user)
        .map(|(u, &r)| covers(u.x - x, u.y - y, r))
        .collect();
    let covered_count = covered.iter().filter(|&&c| c).count();
    PlacementSolution {
        x_d: x,
        y_d: y,
        covered,
        covered_count,
    }
}

fn count_with(x: f64, y: f64, users: &[User], per_user: &[f64]) -> usize {
    users
        .iter()
        .zip(per_user)
        .filter(|(u, &r)| covers(u.x - x, u.y - y, r))
        .count()
}

/// Intersection points of two circles: none for disjoint, nested or
/// concentric circles, one at tangency, two otherwise.
pub fn circle_intersections(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<Point> {
    let dx = c2.x - c1.x;
    let dy = c2.y - c1.y;
    let d2 = dx * dx + dy * dy;
    if d2 == 0.0 {
        return Vec::new();
    }
    let d = d2.sqrt();
    // distance from c1 to the radical line along c1→c2
    let a = (d2 + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let scale = r1.max(r2).max(d);
    let tangent_tol = 1e-12 * scale * scale;
    let (ux, uy) = (dx / d, dy / d);
    let foot = Point::new(c1.x + a * ux, c1.y + a * uy);
    if h2 < -tangent_tol {
        Vec::new()
    } else if h2 <= tangent_tol {
        vec![foot]
    } else {
        let h = h2.sqrt();
        vec![
            Point::new(foot.x - h * uy, foot.y + h * ux),
            Point::new(foot.x + h * uy, foot.y - h * ux),
        ]
    }
}

/// `true` when `(count, x, y)` beats the incumbent: more users, then
/// lexicographically smaller position.
#[inline]
fn better(count: usize, p: Point, best: Option<(usize, Point)>) -> bool {
    match best {
        None => true,
        Some((bc, bp)) => {
            count > bc
                || (count == bc
                    && (p.x < bp.x || (p.x == bp.x && p.y < bp.y)))
        }
    }
}

/// Number of candidate centers the exact solver scores for `users`.
pub fn candidate_count(users: &[User], radii: &RadiusMap) -> Result<usize> {
    let per_user = radii.per_user(users)?;
    let mut n = users.len();
    for i in 0..users.len() {
        for j in (i + 1)..users.len() {
            n += circle_intersections(pos(&users[i]), per_user[i], pos(&users[j]), per_user[j]).len();
        }
    }
    Ok(n)
}

#[inline]
fn pos(u: &User) -> Point {
    Point::new(u.x, u.y)
}

/// Center covering the maximum number of users. Ties resolve to the
/// lexicographically smallest `(x, y)`.
pub fn solve_exact(users: &[User], radii: &RadiusMap) -> Result<PlacementSolution> {
    if users.is_empty() {
        return Err(Error::input("horizontal placement needs at least one user"));
    }
    let per_user = radii.per_user(users)?;
    let mut best: Option<(usize, Point)> = None;
    let mut consider = |p: Point| {
        let count = count_with(p.x, p.y, users, &per_user);
        if better(count, p, best) {
            best = Some((count, p));
        }
    };
    for u in users {
        consider(pos(u));
    }
    for i in 0..users.len() {
        for j in (i + 1)..users.len() {
            for p in circle_intersections(pos(&users[i]), per_user[i], pos(&users[j]), per_user[j]) {
                consider(p);
            }
        }
    }
    let (_, p) = best.expect("at least one candidate");
    Ok(evaluate_with(p.x, p.y, users, &per_user))
}

/// Brute-force placement over the lattice `bounds.min + step·(i, j)`.
///
/// Only a lower bound on the optimum; used to cross-check [`solve_exact`].
pub fn grid_oracle(users: &[User], radii: &RadiusMap, step: f64, bounds: Rect) -> Result<PlacementSolution> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::input(format!("grid step must be > 0, got {step}")));
    }
    if !(bounds.x_max >= bounds.x_min && bounds.y_max >= bounds.y_min) {
        return Err(Error::input("grid bounds are inverted"));
    }
    let per_user = radii.per_user(users)?;
    let nx = ((bounds.x_max - bounds.x_min) / step).floor() as usize;
    let ny = ((bounds.y_max - bounds.y_min) / step).floor() as usize;
    let mut best: Option<(usize, Point)> = None;
    for i in 0..=nx {
        let x = bounds.x_min + step * i as f64;
        for j in 0..=ny {
            let y = bounds.y_min + step * j as f64;
            let count = count_with(x, y, users, &per_user);
            if better(count, Point::new(x, y), best) {
                best = Some((count, Point::new(x, y)));
            }
        }
    }
    let (_, p) = best.expect("grid has at least one point");
    Ok(evaluate_with(p.x, p.y, users, &per_user))
}

/// Smallest big-M that makes every relaxed distance constraint vacuous when
/// the UAV is confined to `bounds` and every user lies inside it.
pub fn big_m(bounds: &Rect, radii: &RadiusMap) -> f64 {
    bounds.diagonal() + radii.max_radius()
}

/// Plain-text big-M model of the horizontal placement problem, one distance
/// constraint per user:
///
/// ```text
/// # uavbs placement model v1
/// # maximize sum_i u_i
/// # s.t. sqrt((x - x_d)^2 + (y - y_d)^2) <= radius + M (1 - u_i)
/// bounds x_d <x_min> <x_max>
/// bounds y_d <y_min> <y_max>
/// binary u <n_users>
/// dist <user_id> <x> <y> <radius> <M>
/// ```
pub fn export_model(users: &[User], radii: &RadiusMap, bounds: &Rect) -> Result<String> {
    let per_user = radii.per_user(users)?;
    let m = big_m(bounds, radii);
    let mut out = String::new();
    out.push_str("# uavbs placement model v1\n");
    out.push_str("# maximize sum_i u_i\n");
    out.push_str("# s.t. sqrt((x - x_d)^2 + (y - y_d)^2) <= radius + M (1 - u_i)\n");
    writeln!(out, "bounds x_d {} {}", bounds.x_min, bounds.x_max).unwrap();
    writeln!(out, "bounds y_d {} {}", bounds.y_min, bounds.y_max).unwrap();
    writeln!(out, "binary u {}", users.len()).unwrap();
    for (i, (u, r)) in users.iter().zip(&per_user).enumerate() {
        writeln!(out, "dist {i} {} {} {r} {m}", u.x, u.y).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uniform(r: f64, classes: &[u32]) -> RadiusMap {
        let mut m = RadiusMap::new();
        for &c in classes {
            m.insert(ClassId(c), r).unwrap();
        }
        m
    }

    #[test]
    fn evaluate_examples() {
        let lone = [User::new(12.0, -4.0, 1)];
        assert_eq!(evaluate_center(12.0, -4.0, &lone, &uniform(5.0, &[1])).unwrap().covered_count, 1);

        let pair = [User::new(0.0, 0.0, 1), User::new(100.0, 0.0, 1)];
        assert_eq!(evaluate_center(50.0, 0.0, &pair, &uniform(60.0, &[1])).unwrap().covered_count, 2);
        let s = evaluate_center(50.0, 0.0, &pair, &uniform(40.0, &[1])).unwrap();
        assert_eq!(s.covered_count, 0);
        assert_eq!(s.covered, vec![false, false]);
    }

    #[test]
    fn evaluate_unknown_class() {
        let users = [User::new(0.0, 0.0, 7)];
        assert!(matches!(
            evaluate_center(0.0, 0.0, &users, &uniform(1.0, &[1])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn zero_radius_covers_only_coincident_users() {
        let users = [User::new(3.0, 4.0, 1), User::new(3.0, 4.0 + 1e-9, 1)];
        let s = evaluate_center(3.0, 4.0, &users, &uniform(0.0, &[1])).unwrap();
        assert_eq!(s.covered, vec![true, false]);
    }

    #[test]
    fn intersections_examples() {
        let o = Point::new(0.0, 0.0);
        let t = circle_intersections(o, 1.0, Point::new(2.0, 0.0), 1.0);
        assert_eq!(t.len(), 1);
        assert!((t[0].x - 1.0).abs() < 1e-12 && t[0].y.abs() < 1e-12);

        let two = circle_intersections(o, 1.0, Point::new(1.0, 0.0), 1.0);
        assert_eq!(two.len(), 2);
        let s3 = 3f64.sqrt() / 2.0;
        let mut ys: Vec<f64> = two.iter().map(|p| p.y).collect();
        ys.sort_by(f64::total_cmp);
        assert!((ys[0] + s3).abs() < 1e-12 && (ys[1] - s3).abs() < 1e-12);
        for p in &two {
            assert!((p.x - 0.5).abs() < 1e-12);
            assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-12);
            assert!(((p.x - 1.0).hypot(p.y) - 1.0).abs() < 1e-12);
        }

        assert!(circle_intersections(o, 1.0, Point::new(5.0, 0.0), 1.0).is_empty());
        assert!(circle_intersections(o, 5.0, Point::new(1.0, 0.0), 1.0).is_empty());
        assert!(circle_intersections(o, 1.0, o, 1.0).is_empty());
        // internal tangency
        assert_eq!(circle_intersections(o, 2.0, Point::new(1.0, 0.0), 1.0).len(), 1);
    }

    #[test]
    fn solve_single_user() {
        let users = [User::new(-17.0, 250.0, 1)];
        let s = solve_exact(&users, &uniform(10.0, &[1])).unwrap();
        assert_eq!(s.covered_count, 1);
        assert_eq!((s.x_d, s.y_d), (-17.0, 250.0));
    }

    #[test]
    fn solve_empty_is_error() {
        assert!(matches!(solve_exact(&[], &uniform(1.0, &[1])), Err(Error::Input(_))));
    }

    #[test]
    fn solve_equilateral_triangle() {
        let side = 200.0;
        let users = [
            User::new(0.0, 0.0, 1),
            User::new(side, 0.0, 1),
            User::new(side / 2.0, side * 3f64.sqrt() / 2.0, 1),
        ];
        let radii = uniform(120.0, &[1]);
        let s = solve_exact(&users, &radii).unwrap();
        assert_eq!(s.covered_count, 3);
        let bounds = Rect::new(-10.0, -10.0, 210.0, 190.0);
        assert_eq!(grid_oracle(&users, &radii, 1.0, bounds).unwrap().covered_count, 3);
        // circumradius 115.47 m: a 115 m disc cannot reach all three
        assert_eq!(solve_exact(&users, &uniform(115.0, &[1])).unwrap().covered_count, 2);
    }

    #[test]
    fn solve_prefers_lexicographically_smallest_center() {
        let users = [User::new(0.0, 0.0, 1), User::new(1000.0, 0.0, 1)];
        let s = solve_exact(&users, &uniform(10.0, &[1])).unwrap();
        assert_eq!(s.covered_count, 1);
        // among all candidates covering one user the smallest x wins
        assert!(s.x_d <= 0.0);
    }

    #[test]
    fn duplicate_positions_count_separately() {
        let users = [User::new(5.0, 5.0, 1), User::new(5.0, 5.0, 2), User::new(500.0, 5.0, 1)];
        let mut radii = uniform(10.0, &[1]);
        radii.insert(ClassId(2), 30.0).unwrap();
        assert_eq!(solve_exact(&users, &radii).unwrap().covered_count, 2);
    }

    #[test]
    fn mixed_radii_need_intersection_candidates() {
        // optimum is only reachable away from every user position
        let users = [
            User::new(0.0, 0.0, 1),
            User::new(180.0, 0.0, 2),
            User::new(90.0, 150.0, 2),
        ];
        let mut radii = RadiusMap::new();
        radii.insert(ClassId(1), 100.0).unwrap();
        radii.insert(ClassId(2), 110.0).unwrap();
        let exact = solve_exact(&users, &radii).unwrap();
        let grid = grid_oracle(&users, &radii, 0.5, Rect::new(-20.0, -20.0, 200.0, 170.0)).unwrap();
        assert_eq!(exact.covered_count, 3);
        assert_eq!(grid.covered_count, 3);
    }

    #[test]
    fn candidate_count_bound() {
        let users: Vec<User> = (0..12)
            .map(|i| User::new((i * 37 % 100) as f64, (i * 61 % 100) as f64, 1 + i % 2))
            .collect();
        let mut radii = uniform(60.0, &[1]);
        radii.insert(ClassId(2), 35.0).unwrap();
        let n = users.len();
        assert!(candidate_count(&users, &radii).unwrap() <= n + n * (n - 1));
    }

    #[test]
    fn model_export_format() {
        let users = [User::new(0.0, 0.0, 1), User::new(30.0, 40.0, 2)];
        let mut radii = uniform(100.0, &[1]);
        radii.insert(ClassId(2), 150.0).unwrap();
        let bounds = Rect::new(0.0, 0.0, 30.0, 40.0);
        let text = export_model(&users, &radii, &bounds).unwrap();
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(
            lines,
            vec![
                "bounds x_d 0 30",
                "bounds y_d 0 40",
                "binary u 2",
                "dist 0 0 0 100 200",
                "dist 1 30 40 150 200",
            ]
        );
    }

    #[test]
    fn big_m_makes_constraints_vacuous() {
        let users = [User::new(0.0, 0.0, 1), User::new(300.0, 400.0, 1)];
        let radii = uniform(50.0, &[1]);
        let bounds = Rect::bounding(&users).unwrap();
        let m = big_m(&bounds, &radii);
        // any center in bounds satisfies every relaxed constraint
        for (cx, cy) in [(0.0, 0.0), (300.0, 400.0), (0.0, 400.0), (300.0, 0.0)] {
            for u in &users {
                assert!((u.x - cx).hypot(u.y - cy) <= 50.0 + m);
            }
        }
    }

    fn instance() -> impl Strategy<Value = (Vec<User>, f64, f64)> {
        (
            prop::collection::vec((0.0f64..1000.0, 0.0f64..1000.0, 1u32..=2), 1..12),
            50.0f64..400.0,
            50.0f64..400.0,
        )
            .prop_map(|(pts, r1, r2)| {
                (pts.into_iter().map(|(x, y, c)| User::new(x, y, c)).collect(), r1, r2)
            })
    }

    fn radii2(r1: f64, r2: f64) -> RadiusMap {
        let mut m = RadiusMap::new();
        m.insert(ClassId(1), r1).unwrap();
        m.insert(ClassId(2), r2).unwrap();
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_dominates_coarse_grid((users, r1, r2) in instance(), step in 5.0f64..50.0) {
            let radii = radii2(r1, r2);
            let exact = solve_exact(&users, &radii).unwrap();
            let grid = grid_oracle(&users, &radii, step, Rect::new(0.0, 0.0, 1000.0, 1000.0)).unwrap();
            prop_assert!(exact.covered_count >= grid.covered_count);
        }

        #[test]
        fn larger_radii_never_hurt((users, r1, r2) in instance(), grow in 0.0f64..200.0) {
            let base = solve_exact(&users, &radii2(r1, r2)).unwrap();
            let bigger = solve_exact(&users, &radii2(r1 + grow, r2 + grow)).unwrap();
            prop_assert!(bigger.covered_count >= base.covered_count);
        }

        #[test]
        fn translation_preserves_count((users, r1, r2) in instance(), tx in -5e3f64..5e3, ty in -5e3f64..5e3) {
            let radii = radii2(r1, r2);
            let moved: Vec<User> = users.iter().map(|u| User { x: u.x + tx, y: u.y + ty, ..*u }).collect();
            prop_assert_eq!(
                solve_exact(&users, &radii).unwrap().covered_count,
                solve_exact(&moved, &radii).unwrap().covered_count
            );
        }

        #[test]
        fn flags_rederivable((users, r1, r2) in instance()) {
            let radii = radii2(r1, r2);
            let s = solve_exact(&users, &radii).unwrap();
            let again = evaluate_center(s.x_d, s.y_d, &users, &radii).unwrap();
            prop_assert_eq!(s.covered_count, s.covered.iter().filter(|&&c| c).count());
            prop_assert_eq!(again, s);
        }
    }
}
