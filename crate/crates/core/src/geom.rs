//! Exact rational planar geometry: points, directions, affine unimodular
//! maps, and convex bodies given as vertices plus recession generators.
//!
//! Bodies are canonicalized so that structural equality is semantic equality:
//! vertices are stored counterclockwise starting from the lexicographically
//! smallest vertex, no three stored vertices are collinear, and recession
//! generators are primitive integer vectors reduced to an extreme set.

use crate::error::GeomError;
use crate::num::{ceil_int, floor_int, is_integer, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.x) && is_integer(&self.y)
    }

    pub fn sub(&self, other: &Point2) -> Direction2 {
        Direction2::new(&self.x - &other.x, &self.y - &other.y)
            .expect("distinct points give a nonzero direction")
    }

    pub fn add_scaled(&self, d: &Direction2, t: &Rational) -> Point2 {
        Point2::new(&self.x + t * &d.x, &self.y + t * &d.y)
    }
}

/// Nonzero rational vector. The magnitude is significant (it scales cut
/// coefficients); [`Direction2::primitive`] gives the canonical integer form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction2 {
    pub x: Rational,
    pub y: Rational,
}

impl Direction2 {
    pub fn new(x: Rational, y: Rational) -> Result<Self, GeomError> {
        if x.is_zero() && y.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        Ok(Direction2 { x, y })
    }

    pub fn cross(&self, other: &Direction2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Direction2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn neg(&self) -> Direction2 {
        Direction2 {
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    pub fn scale(&self, t: &Rational) -> Direction2 {
        Direction2 {
            x: &self.x * t,
            y: &self.y * t,
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Direction2 {
        Direction2 {
            x: -self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn parallel(&self, other: &Direction2) -> bool {
        self.cross(other).is_zero()
    }

    /// Canonical primitive integer form: clear denominators, divide by the
    /// gcd, and fix the sign so the first nonzero component is positive.
    pub fn primitive(&self) -> (BigInt, BigInt) {
        let den = self.x.denom().lcm(self.y.denom());
        let mut a = self.x.numer() * (&den / self.x.denom());
        let mut b = self.y.numer() * (&den / self.y.denom());
        let g = a.gcd(&b);
        if !g.is_zero() {
            a = &a / &g;
            b = &b / &g;
        }
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    /// Primitive form keeping the original orientation.
    pub fn primitive_oriented(&self) -> Direction2 {
        let (a, b) = self.primitive();
        let mut d = Direction2 {
            x: Rational::from_integer(a),
            y: Rational::from_integer(b),
        };
        if d.dot(self).is_negative() {
            d = d.neg();
        }
        d
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.x) && is_integer(&self.y)
    }
}

/// Affine map `x -> M x + w` with `M` unimodular and `w` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineUnimodularMap {
    pub m: [[BigInt; 2]; 2],
    pub w: [BigInt; 2],
}

impl AffineUnimodularMap {
    pub fn new(m: [[i64; 2]; 2], w: [i64; 2]) -> Result<Self, GeomError> {
        Self::from_bigint(
            [
                [BigInt::from(m[0][0]), BigInt::from(m[0][1])],
                [BigInt::from(m[1][0]), BigInt::from(m[1][1])],
            ],
            [BigInt::from(w[0]), BigInt::from(w[1])],
        )
    }

    pub fn from_bigint(m: [[BigInt; 2]; 2], w: [BigInt; 2]) -> Result<Self, GeomError> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.magnitude() != &BigInt::one().to_biguint().unwrap() {
            return Err(GeomError::NotUnimodular);
        }
        Ok(AffineUnimodularMap { m, w })
    }

    pub fn identity() -> Self {
        AffineUnimodularMap {
            m: [
                [BigInt::one(), BigInt::zero()],
                [BigInt::zero(), BigInt::one()],
            ],
            w: [BigInt::zero(), BigInt::zero()],
        }
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply_point(&self, p: &Point2) -> Point2 {
        Point2::new(
            Rational::from_integer(self.m[0][0].clone()) * &p.x
                + Rational::from_integer(self.m[0][1].clone()) * &p.y
                + Rational::from_integer(self.w[0].clone()),
            Rational::from_integer(self.m[1][0].clone()) * &p.x
                + Rational::from_integer(self.m[1][1].clone()) * &p.y
                + Rational::from_integer(self.w[1].clone()),
        )
    }

    pub fn apply_direction(&self, d: &Direction2) -> Direction2 {
        Direction2 {
            x: Rational::from_integer(self.m[0][0].clone()) * &d.x
                + Rational::from_integer(self.m[0][1].clone()) * &d.y,
            y: Rational::from_integer(self.m[1][0].clone()) * &d.x
                + Rational::from_integer(self.m[1][1].clone()) * &d.y,
        }
    }

    pub fn apply_body(&self, b: &ConvexBody2) -> ConvexBody2 {
        ConvexBody2::from_points_dirs(
            b.vertices.iter().map(|p| self.apply_point(p)).collect(),
            b.recession.iter().map(|d| self.apply_direction(d)).collect(),
        )
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let det = self.det();
        // adj(M)/det with det = +-1.
        let inv = [
            [&self.m[1][1] / &det, -&self.m[0][1] / &det],
            [-&self.m[1][0] / &det, &self.m[0][0] / &det],
        ];
        let w = [
            -(&inv[0][0] * &self.w[0] + &inv[0][1] * &self.w[1]),
            -(&inv[1][0] * &self.w[0] + &inv[1][1] * &self.w[1]),
        ];
        AffineUnimodularMap { m: inv, w }
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        let m = [
            [
                &self.m[0][0] * &other.m[0][0] + &self.m[0][1] * &other.m[1][0],
                &self.m[0][0] * &other.m[0][1] + &self.m[0][1] * &other.m[1][1],
            ],
            [
                &self.m[1][0] * &other.m[0][0] + &self.m[1][1] * &other.m[1][0],
                &self.m[1][0] * &other.m[0][1] + &self.m[1][1] * &other.m[1][1],
            ],
        ];
        let w = [
            &self.m[0][0] * &other.w[0] + &self.m[0][1] * &other.w[1] + &self.w[0],
            &self.m[1][0] * &other.w[0] + &self.m[1][1] * &other.w[1] + &self.w[1],
        ];
        AffineUnimodularMap { m, w }
    }

    /// Unimodular `M` with `M d = (1, 0)` for a primitive integer `d`,
    /// completed by extended gcd; `w = 0`.
    pub fn send_primitive_to_e1(d: (&BigInt, &BigInt)) -> AffineUnimodularMap {
        let e = d.0.extended_gcd(d.1);
        debug_assert!(e.gcd.is_one(), "direction must be primitive");
        // u*d0 + v*d1 = 1, second row (-d1, d0) kills d.
        AffineUnimodularMap {
            m: [[e.x, e.y], [-d.1.clone(), d.0.clone()]],
            w: [BigInt::zero(), BigInt::zero()],
        }
    }
}

/// Outward halfplane `a . x <= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfplane {
    pub a: Direction2,
    pub c: Rational,
}

impl Halfplane {
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a.x * &p.x + &self.a.y * &p.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Boundary,
    Outside,
}

/// Convex body `conv(vertices) + cone(recession)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexBody2 {
    vertices: Vec<Point2>,
    recession: Vec<Direction2>,
    facets: Vec<Halfplane>,
    dim: usize,
}

impl ConvexBody2 {
    /// Canonical body from arbitrary generating points and recession
    /// directions.
    pub fn from_points_dirs(points: Vec<Point2>, dirs: Vec<Direction2>) -> ConvexBody2 {
        assert!(!points.is_empty(), "a body needs at least one point");
        let recession = reduce_cone(dirs);
        let vertices = hull_vertices(points, &recession);
        let dim = body_dim(&vertices, &recession);
        let facets = compute_facets(&vertices, &recession, dim);
        ConvexBody2 {
            vertices,
            recession,
            facets,
            dim,
        }
    }

    pub fn polygon(points: Vec<Point2>) -> ConvexBody2 {
        Self::from_points_dirs(points, Vec::new())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn recession(&self) -> &[Direction2] {
        &self.recession
    }

    pub fn facets(&self) -> &[Halfplane] {
        &self.facets
    }

    pub fn is_bounded(&self) -> bool {
        self.recession.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Recession cone is two-dimensional (wedge, halfplane, or plane).
    pub fn recession_full_dim(&self) -> bool {
        self.recession.len() >= 2
            && self
                .recession
                .iter()
                .any(|d| !d.parallel(&self.recession[0]))
    }

    /// Recession cone is a line (two opposite generators).
    pub fn recession_is_line(&self) -> bool {
        self.recession.len() == 2
            && self.recession[0].parallel(&self.recession[1])
            && self.recession[0].dot(&self.recession[1]).is_negative()
    }

    pub fn locate(&self, p: &Point2) -> PointLocation {
        if self.dim < 2 {
            return if self.degenerate_contains(p) {
                PointLocation::Boundary
            } else {
                PointLocation::Outside
            };
        }
        let mut on_boundary = false;
        for f in &self.facets {
            let v = f.eval(p);
            if v > f.c {
                return PointLocation::Outside;
            }
            if v == f.c {
                on_boundary = true;
            }
        }
        if on_boundary {
            PointLocation::Boundary
        } else {
            PointLocation::Interior
        }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.locate(p) != PointLocation::Outside
    }

    pub fn contains_strictly(&self, p: &Point2) -> bool {
        self.locate(p) == PointLocation::Interior
    }

    fn degenerate_contains(&self, p: &Point2) -> bool {
        match (self.vertices.len(), self.recession.len()) {
            (1, 0) => p == &self.vertices[0],
            _ => {
                // Point set on a line (possibly with recession along it).
                let base = &self.vertices[0];
                if p == base {
                    return true;
                }
                let d = p.sub(base);
                let axis = if self.vertices.len() > 1 {
                    self.vertices[1].sub(base)
                } else {
                    self.recession[0].clone()
                };
                if !d.parallel(&axis) {
                    return false;
                }
                // Project on the axis and compare with the 1-D hull.
                let t = |q: &Point2| -> Rational {
                    let dq = Direction2 {
                        x: &q.x - &base.x,
                        y: &q.y - &base.y,
                    };
                    dq.dot(&axis)
                };
                let tp = d.dot(&axis);
                let mut lo: Option<Rational> = None;
                let mut hi: Option<Rational> = None;
                for v in &self.vertices {
                    let tv = t(v);
                    if lo.as_ref().is_none_or(|l| &tv < l) {
                        lo = Some(tv.clone());
                    }
                    if hi.as_ref().is_none_or(|h| &tv > h) {
                        hi = Some(tv);
                    }
                }
                for r in &self.recession {
                    if r.dot(&axis).is_positive() {
                        hi = None;
                    } else {
                        lo = None;
                    }
                }
                lo.is_none_or(|l| tp >= l) && hi.is_none_or(|h| tp <= h)
            }
        }
    }

    /// Does this body contain `other` entirely (vertices and recession)?
    pub fn contains_body(&self, other: &ConvexBody2) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
            && other.recession.iter().all(|d| self.recession_contains(d))
    }

    pub fn recession_contains(&self, d: &Direction2) -> bool {
        if self.dim < 2 {
            if self.recession.is_empty() {
                return false;
            }
            return d.parallel(&self.recession[0])
                && (self.recession.iter().any(|r| r.dot(d).is_positive()));
        }
        self.facets.iter().all(|f| !f.a.dot(d).is_positive())
    }

    /// Integer bounding box (only meaningful for bounded bodies).
    pub fn integer_bbox(&self) -> Result<(BigInt, BigInt, BigInt, BigInt), GeomError> {
        if !self.is_bounded() {
            return Err(GeomError::UnboundedBody);
        }
        let xs: Vec<&Rational> = self.vertices.iter().map(|p| &p.x).collect();
        let ys: Vec<&Rational> = self.vertices.iter().map(|p| &p.y).collect();
        let xmin = ceil_int(xs.iter().min().unwrap());
        let xmax = floor_int(xs.iter().max().unwrap());
        let ymin = ceil_int(ys.iter().min().unwrap());
        let ymax = floor_int(ys.iter().max().unwrap());
        Ok((xmin, xmax, ymin, ymax))
    }

    /// All integer points of a bounded body, tagged interior or boundary,
    /// enumerated row by row from exact per-row intervals.
    pub fn lattice_points(&self) -> Result<Vec<(Point2, PointLocation)>, GeomError> {
        if !self.is_bounded() {
            return Err(GeomError::UnboundedBody);
        }
        let mut out = Vec::new();
        if self.dim < 2 {
            // Degenerate: scan the small bounding box directly.
            let xs: Vec<&Rational> = self.vertices.iter().map(|p| &p.x).collect();
            let ys: Vec<&Rational> = self.vertices.iter().map(|p| &p.y).collect();
            let xmin = ceil_int(xs.iter().min().unwrap());
            let xmax = floor_int(xs.iter().max().unwrap());
            let ymin = ceil_int(ys.iter().min().unwrap());
            let ymax = floor_int(ys.iter().max().unwrap());
            let mut x = xmin.clone();
            while x <= xmax {
                let mut y = ymin.clone();
                while y <= ymax {
                    let p = Point2::new(
                        Rational::from_integer(x.clone()),
                        Rational::from_integer(y.clone()),
                    );
                    if self.locate(&p) != PointLocation::Outside {
                        out.push((p, PointLocation::Boundary));
                    }
                    y += 1;
                }
                x += 1;
            }
            return Ok(out);
        }
        let ys: Vec<&Rational> = self.vertices.iter().map(|p| &p.y).collect();
        let ymin = ceil_int(ys.iter().min().unwrap());
        let ymax = floor_int(ys.iter().max().unwrap());
        let mut y = ymin.clone();
        while y <= ymax {
            let yr = Rational::from_integer(y.clone());
            if let Some((lo, hi)) = self.row_interval(&yr) {
                let mut x = ceil_int(&lo);
                let xmax = floor_int(&hi);
                while x <= xmax {
                    let p = Point2::new(Rational::from_integer(x.clone()), yr.clone());
                    let loc = self.locate(&p);
                    debug_assert_ne!(loc, PointLocation::Outside);
                    out.push((p, loc));
                    x += 1;
                }
            }
            y += 1;
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Closed x-interval of the body on the horizontal line at height `y`,
    /// `None` when they do not meet (bounded bodies only).
    fn row_interval(&self, y: &Rational) -> Option<(Rational, Rational)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for f in &self.facets {
            let rhs = &f.c - &f.a.y * y;
            if f.a.x.is_zero() {
                if rhs.is_negative() {
                    return None;
                }
            } else if f.a.x.is_positive() {
                let bound = &rhs / &f.a.x;
                if hi.as_ref().is_none_or(|h| &bound < h) {
                    hi = Some(bound);
                }
            } else {
                let bound = &rhs / &f.a.x;
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
            _ => None,
        }
    }

    /// No integer point in the interior. Exact for bounded and unbounded
    /// bodies; degenerate bodies are vacuously lattice-free.
    pub fn is_lattice_free(&self) -> bool {
        if self.dim < 2 {
            return true;
        }
        if self.recession_full_dim() {
            // A full-dimensional recession cone swallows arbitrarily large
            // discs, so some integer point is interior.
            return false;
        }
        if self.is_bounded() {
            let ys: Vec<&Rational> = self.vertices.iter().map(|p| &p.y).collect();
            let ymin = ceil_int(ys.iter().min().unwrap());
            let ymax = floor_int(ys.iter().max().unwrap());
            let mut y = ymin.clone();
            while y <= ymax {
                if self.horizontal_line_has_interior_integer(&Rational::from_integer(y.clone()))
                {
                    return false;
                }
                y += 1;
            }
            return true;
        }
        // Single ray or line: map the primitive recession direction to (1,0)
        // and scan the finitely many integer ordinates of the image.
        let (a, b) = self.recession[0].primitive();
        let map = AffineUnimodularMap::send_primitive_to_e1((&a, &b));
        let img = map.apply_body(self);
        let ys: Vec<&Rational> = img.vertices.iter().map(|p| &p.y).collect();
        let ymin = ceil_int(ys.iter().min().unwrap());
        let ymax = floor_int(ys.iter().max().unwrap());
        let mut y = ymin.clone();
        while y <= ymax {
            if img.horizontal_line_has_interior_integer(&Rational::from_integer(y.clone())) {
                return false;
            }
            y += 1;
        }
        true
    }

    /// Is some integer point with ordinate `y` strictly interior? The body
    /// may be unbounded along +-x only.
    fn horizontal_line_has_interior_integer(&self, y: &Rational) -> bool {
        // Solve the facet system restricted to the line.
        let mut lo: Option<Rational> = None; // strict bounds on x
        let mut hi: Option<Rational> = None;
        for f in &self.facets {
            // a.x * x <= c - a.y * y
            let rhs = &f.c - &f.a.y * y;
            if f.a.x.is_zero() {
                if rhs.is_negative() || rhs.is_zero() {
                    // Line outside or on the boundary facet: no interior here.
                    return false;
                }
            } else if f.a.x.is_positive() {
                let bound = &rhs / &f.a.x;
                if hi.as_ref().is_none_or(|h| &bound < h) {
                    hi = Some(bound);
                }
            } else {
                let bound = &rhs / &f.a.x;
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if lo >= hi {
                    return false;
                }
                // Strict interval (lo, hi): integer inside?
                let first = floor_int(&lo) + 1;
                Rational::from_integer(first) < hi
            }
            // Interval unbounded on a side with nonempty interior.
            _ => true,
        }
    }

    /// The unique boundary point `origin + dir / lambda` with `lambda > 0`,
    /// or `None` when `dir` recedes (never exits).
    pub fn ray_boundary_intersection(
        &self,
        origin: &Point2,
        dir: &Direction2,
    ) -> Result<Option<(Point2, Rational)>, GeomError> {
        if self.locate(origin) != PointLocation::Interior {
            return Err(GeomError::OriginNotInterior);
        }
        // Exit parameter: min over facets with a . dir > 0 of
        // (c - a . origin) / (a . dir).
        let mut t_exit: Option<Rational> = None;
        for f in &self.facets {
            let ad = f.a.dot(dir);
            if ad.is_positive() {
                let t = (&f.c - f.eval(origin)) / ad;
                if t_exit.as_ref().is_none_or(|cur| &t < cur) {
                    t_exit = Some(t);
                }
            }
        }
        match t_exit {
            None => Ok(None),
            Some(t) => {
                debug_assert!(t.is_positive());
                let p = origin.add_scaled(dir, &t);
                let lambda = t.recip();
                Ok(Some((p, lambda)))
            }
        }
    }

    /// Intersections of the boundary with the line `a . x = c`, for a
    /// full-dimensional body. Returns 0, 1, or 2 points (an edge lying on the
    /// line yields its endpoints).
    pub fn boundary_line_crossings(&self, a: &Direction2, c: &Rational) -> Vec<Point2> {
        let mut pts: Vec<Point2> = Vec::new();
        if self.dim < 2 {
            return pts;
        }
        // Intersect the line with the body: the result is a segment/ray/point.
        // Clip the parametric line by every facet.
        let d = a.perp(); // direction of the line
        // base point on the line
        let base = if !a.x.is_zero() {
            Point2::new(c / &a.x, Rational::zero())
        } else {
            Point2::new(Rational::zero(), c / &a.y)
        };
        let mut tlo: Option<Rational> = None;
        let mut thi: Option<Rational> = None;
        let mut empty = false;
        for f in &self.facets {
            let ad = f.a.dot(&d);
            let rhs = &f.c - f.eval(&base);
            if ad.is_zero() {
                if rhs.is_negative() {
                    empty = true;
                    break;
                }
            } else if ad.is_positive() {
                let t = &rhs / &ad;
                if thi.as_ref().is_none_or(|h| &t < h) {
                    thi = Some(t);
                }
            } else {
                let t = &rhs / &ad;
                if tlo.as_ref().is_none_or(|l| &t > l) {
                    tlo = Some(t);
                }
            }
        }
        if empty {
            return pts;
        }
        if let (Some(lo), Some(hi)) = (&tlo, &thi) {
            if lo > hi {
                return pts;
            }
        }
        if let Some(lo) = tlo {
            pts.push(base.add_scaled(&d, &lo));
        }
        if let Some(hi) = thi {
            let p = base.add_scaled(&d, &hi);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts
    }
}

/// Canonicalize recession generators: primitive, deduplicated, reduced to the
/// extreme rays of their cone (or kept as a spanning set when the cone is a
/// halfplane or the plane).
fn reduce_cone(dirs: Vec<Direction2>) -> Vec<Direction2> {
    let mut prim: Vec<Direction2> = Vec::new();
    for d in dirs {
        let p = d.primitive_oriented();
        if !prim.contains(&p) {
            prim.push(p);
        }
    }
    if prim.len() <= 1 {
        return prim;
    }
    // Detect full plane / halfplane: if some pair is opposite and a third
    // direction exists off their line, or the cone spans more than pi.
    let full = |ds: &Vec<Direction2>| -> bool {
        // Cone is all of R2 iff 0 is in the interior of conv of directions:
        // check no halfplane contains all generators.
        // Try each generator's perpendicular as witness.
        for w in ds.iter() {
            let n = w.perp();
            if ds.iter().all(|d| !n.dot(d).is_negative())
                || ds.iter().all(|d| !n.dot(d).is_positive())
            {
                return false;
            }
        }
        true
    };
    if full(&prim) {
        // Keep a canonical spanning triple.
        return vec![
            Direction2::new(Rational::from_integer(1.into()), Rational::zero()).unwrap(),
            Direction2::new(Rational::from_integer((-1).into()), Rational::zero()).unwrap(),
            Direction2::new(Rational::zero(), Rational::from_integer(1.into())).unwrap(),
        ];
    }
    // The cone lies in a halfplane; find extreme generators by angular sweep:
    // pick n with n . d >= 0 for all d, then extremes minimize/maximize the
    // signed cross against a reference.
    let mut extreme: Vec<Direction2> = Vec::new();
    for cand in &prim {
        // cand is extreme iff it is not a positive combination of others:
        // in 2D, iff some halfplane through 0 touches only cand.
        let others: Vec<&Direction2> = prim.iter().filter(|d| *d != cand).collect();
        if others.is_empty() {
            extreme.push(cand.clone());
            continue;
        }
        let mut is_extreme = false;
        let n1 = cand.perp();
        for n in [&n1, &n1.neg()] {
            if others.iter().all(|d| n.dot(d).is_positive()) {
                is_extreme = true;
            }
        }
        // Opposite pair forming a line: both are extreme.
        if others.len() == 1 && others[0].parallel(cand) {
            is_extreme = true;
        }
        if is_extreme && !extreme.contains(cand) {
            extreme.push(cand.clone());
        }
    }
    if extreme.is_empty() {
        // All generators parallel same orientation.
        extreme.push(prim[0].clone());
    }
    extreme.sort();
    extreme
}

/// Monotone-chain hull; drops points absorbed by the recession cone; no three
/// collinear output vertices; CCW from the lexicographically smallest vertex.
fn hull_vertices(points: Vec<Point2>, recession: &[Direction2]) -> Vec<Point2> {
    let mut pts = points;
    pts.sort();
    pts.dedup();
    if pts.len() > 1 {
        let hull = convex_hull_ccw(&pts);
        pts = hull;
    }
    if recession.is_empty() || pts.len() == 1 {
        if !recession.is_empty() {
            return pts;
        }
        return pts;
    }
    // Remove points interior to conv(others) + cone(recession): a vertex v
    // survives iff it is not in the set generated by the remaining points.
    loop {
        let mut removed = false;
        for i in 0..pts.len() {
            if pts.len() == 1 {
                break;
            }
            let mut rest = pts.clone();
            let v = rest.remove(i);
            let sub = assemble(&rest, recession);
            if sub_contains(&sub, &v) {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    if pts.len() > 1 {
        pts = order_ccw(pts, recession);
    }
    pts
}

struct RawBody<'a> {
    verts: Vec<Point2>,
    rec: &'a [Direction2],
}

fn assemble<'a>(verts: &[Point2], rec: &'a [Direction2]) -> RawBody<'a> {
    RawBody {
        verts: verts.to_vec(),
        rec,
    }
}

/// Membership in conv(verts) + cone(rec) without canonicalization: check
/// every candidate separating line through pairs of generators.
fn sub_contains(body: &RawBody, p: &Point2) -> bool {
    // Solve a tiny LP feasibility exactly: p = sum li vi + sum mj dj,
    // li >= 0, sum li = 1, mj >= 0. With <= 7 generators brute-force over
    // support bases of size <= 3.
    let n = body.verts.len();
    let m = body.rec.len();
    let gens: Vec<(Rational, Rational, bool)> = body
        .verts
        .iter()
        .map(|v| (v.x.clone(), v.y.clone(), true))
        .chain(body.rec.iter().map(|d| (d.x.clone(), d.y.clone(), false)))
        .collect();
    let total = n + m;
    let idxs: Vec<usize> = (0..total).collect();
    // Try all subsets of size 1..=3.
    for a in 0..idxs.len() {
        if try_combination(&gens, &[a], p) {
            return true;
        }
        for b in (a + 1)..idxs.len() {
            if try_combination(&gens, &[a, b], p) {
                return true;
            }
            for c in (b + 1)..idxs.len() {
                if try_combination(&gens, &[a, b, c], p) {
                    return true;
                }
            }
        }
    }
    false
}

fn try_combination(gens: &[(Rational, Rational, bool)], support: &[usize], p: &Point2) -> bool {
    // Unknowns: one coefficient per support index. Equations:
    // sum ci * gx = px, sum ci * gy = py, sum over point-gens ci = 1.
    let k = support.len();
    let mut a: Vec<Vec<Rational>> = vec![Vec::with_capacity(k); 3];
    for &i in support {
        a[0].push(gens[i].0.clone());
        a[1].push(gens[i].1.clone());
        a[2].push(if gens[i].2 {
            Rational::from_integer(1.into())
        } else {
            Rational::zero()
        });
    }
    let b = vec![p.x.clone(), p.y.clone(), Rational::from_integer(1.into())];
    // Solve least-structured: use k x k subsystem when k < 3 by checking
    // consistency after solving.
    // Build augmented and do exact elimination over 3 rows, k cols.
    let mut rows: Vec<Vec<Rational>> = (0..3)
        .map(|r| {
            let mut row = a[r].clone();
            row.push(b[r].clone());
            row
        })
        .collect();
    // eliminate
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        if r == 3 {
            break;
        }
        let Some(pr) = (r..3).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let piv = rows[r][col].clone();
        for c in 0..=k {
            rows[r][c] = &rows[r][c] / &piv;
        }
        for i in 0..3 {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..=k {
                    rows[i][c] = &rows[i][c] - &f * &rows[r][c];
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    // Consistency: remaining rows must be all-zero.
    for i in r..3 {
        if rows[i][..k].iter().all(|v| v.is_zero()) && !rows[i][k].is_zero() {
            return false;
        }
    }
    if pivot_cols.len() < k {
        // Underdetermined within support: skip (other supports will catch it).
        return false;
    }
    // Read solution, require nonnegativity.
    let mut coef = vec![Rational::zero(); k];
    for (row_idx, &col) in pivot_cols.iter().enumerate() {
        coef[col] = rows[row_idx][k].clone();
    }
    coef.iter().all(|c| !c.is_negative())
}

fn convex_hull_ccw(sorted: &[Point2]) -> Vec<Point2> {
    let cross = |o: &Point2, a: &Point2, b: &Point2| -> Rational {
        (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
    };
    let mut lower: Vec<Point2> = Vec::new();
    for p in sorted {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // All collinear: keep the two ends.
        let mut v = vec![sorted[0].clone()];
        if sorted.last() != sorted.first() {
            v.push(sorted.last().unwrap().clone());
        }
        return v;
    }
    lower
}

fn order_ccw(mut pts: Vec<Point2>, recession: &[Direction2]) -> Vec<Point2> {
    if pts.len() <= 2 {
        pts.sort();
        return pts;
    }
    pts.sort();
    let hull = convex_hull_ccw(&pts);
    let mut v = if hull.len() >= 3 { hull } else { pts };
    // Rotate to start at the lexicographically smallest vertex.
    let start = v
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    v.rotate_left(start);
    let _ = recession;
    v
}

fn body_dim(verts: &[Point2], rec: &[Direction2]) -> usize {
    let mut dirs: Vec<Direction2> = Vec::new();
    for v in verts.iter().skip(1) {
        dirs.push(v.sub(&verts[0]));
    }
    dirs.extend(rec.iter().cloned());
    if dirs.is_empty() {
        return 0;
    }
    if dirs.iter().all(|d| d.parallel(&dirs[0])) {
        1
    } else {
        2
    }
}

/// All facets via candidate supporting lines through generator pairs.
fn compute_facets(verts: &[Point2], rec: &[Direction2], dim: usize) -> Vec<Halfplane> {
    if dim < 2 {
        return Vec::new();
    }
    let mut cands: Vec<(Direction2, Rational)> = Vec::new();
    let mut push_line = |p: &Point2, d: &Direction2| {
        // Line through p with direction d; normal candidates +-perp(d).
        let n = d.perp();
        let c = &n.x * &p.x + &n.y * &p.y;
        cands.push((n.clone(), c.clone()));
        cands.push((n.neg(), -c));
    };
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            let d = verts[j].sub(&verts[i]);
            push_line(&verts[i], &d);
        }
        for r in rec {
            push_line(&verts[i], r);
        }
    }
    let mut facets: Vec<Halfplane> = Vec::new();
    'cand: for (n, c) in cands {
        // All vertices on n.x <= c, all recession dirs n.d <= 0, and the
        // facet touches at least one vertex.
        let mut touch = 0usize;
        for v in verts {
            let val = &n.x * &v.x + &n.y * &v.y;
            if val > c {
                continue 'cand;
            }
            if val == c {
                touch += 1;
            }
        }
        if touch == 0 {
            continue;
        }
        for r in rec {
            if n.dot(r).is_positive() {
                continue 'cand;
            }
        }
        // Canonical scale: primitive integer normal.
        let (a, b) = n.primitive();
        let pn = Direction2 {
            x: Rational::from_integer(a),
            y: Rational::from_integer(b),
        };
        let scale = if !n.x.is_zero() { &pn.x / &n.x } else { &pn.y / &n.y };
        if scale.is_negative() {
            // primitive() may flip the sign; keep outward orientation.
            let f = Halfplane {
                a: pn.neg(),
                c: &c * -&scale,
            };
            if !facets.contains(&f) {
                facets.push(f);
            }
        } else {
            let f = Halfplane {
                a: pn,
                c: &c * &scale,
            };
            if !facets.contains(&f) {
                facets.push(f);
            }
        }
    }
    facets
}

/// Exact intersection of lines through (p1, d1) and (p2, d2).
pub fn line_line_intersection(
    p1: &Point2,
    d1: &Direction2,
    p2: &Point2,
    d2: &Direction2,
) -> Option<Point2> {
    let det = d1.cross(d2);
    if det.is_zero() {
        return None;
    }
    // p1 + t d1 = p2 + s d2  =>  t = cross(p2 - p1, d2) / cross(d1, d2)
    let w = p2.sub(p1);
    let t = w.cross(d2) / det;
    Some(p1.add_scaled(d1, &t))
}

/// Intersection of the ray `origin + t dir, t >= 0` with the line through
/// `(lp, ld)`; `None` if parallel or behind the origin.
pub fn ray_line_intersection(
    origin: &Point2,
    dir: &Direction2,
    lp: &Point2,
    ld: &Direction2,
) -> Option<(Point2, Rational)> {
    let det = dir.cross(ld);
    if det.is_zero() {
        return None;
    }
    let w = lp.sub(origin);
    let t = w.cross(ld) / det;
    if t.is_negative() {
        return None;
    }
    Some((origin.add_scaled(dir, &t), t))
}

/// Integer points on the closed segment [p, q], in order from p to q.
pub fn segment_lattice_points(p: &Point2, q: &Point2) -> Vec<Point2> {
    let mut out = Vec::new();
    if p == q {
        if p.is_integral() {
            out.push(p.clone());
        }
        return out;
    }
    let d = q.sub(p);
    let (a, b) = d.primitive();
    let prim = Direction2 {
        x: Rational::from_integer(a.clone()),
        y: Rational::from_integer(b.clone()),
    };
    let prim = if prim.dot(&d).is_negative() {
        prim.neg()
    } else {
        prim
    };
    // Any integer point on the line is p0 + k * prim for a base integer point
    // p0. Find one by solving for rational offset with integral result.
    // Parametrize x = p + t d; integer points need specific t.
    // Use the line's integer structure: find integer point via extended gcd on
    // the primitive normal form n . x = c.
    let n = prim.perp();
    let (nx, ny) = (&n.x, &n.y);
    let c = nx * &p.x + ny * &p.y;
    if !crate::num::is_integer(&c) {
        return out;
    }
    let c = c.to_integer();
    let (na, nb) = (nx.to_integer(), ny.to_integer());
    let e = na.extended_gcd(&nb);
    if !(&c % &e.gcd).is_zero() {
        return out;
    }
    let q0 = &c / &e.gcd;
    let base = Point2::new(
        Rational::from_integer(&e.x * &q0),
        Rational::from_integer(&e.y * &q0),
    );
    // base + k * prim enumerates integer points on the line. Clamp to [p, q].
    // t-range along prim: t(base) + k in [t(p), t(q)] measured in prim units.
    let tof = |pt: &Point2| -> Rational {
        // projection coefficient: (pt - p) = t * prim (valid as prim || d)
        if !prim.x.is_zero() {
            (&pt.x - &p.x) / &prim.x
        } else {
            (&pt.y - &p.y) / &prim.y
        }
    };
    let t0 = tof(&base);
    let t1 = tof(q); // t(p) = 0
    let reversed = t1.is_negative();
    let (lo, hi) = if reversed {
        (t1, Rational::zero())
    } else {
        (Rational::zero(), t1)
    };
    let kmin = ceil_int(&(&lo - &t0));
    let kmax = floor_int(&(&hi - &t0));
    let mut k = kmin.clone();
    while k <= kmax {
        let t = &t0 + Rational::from_integer(k.clone());
        out.push(p.add_scaled(&prim, &t));
        k += 1;
    }
    out.sort_by(|u, v| {
        let tu = tof(u);
        let tv = tof(v);
        if reversed {
            tv.cmp(&tu)
        } else {
            tu.cmp(&tv)
        }
    });
    out
}

/// Integer points strictly between p and q.
pub fn segment_interior_lattice_points(p: &Point2, q: &Point2) -> Vec<Point2> {
    segment_lattice_points(p, q)
        .into_iter()
        .filter(|z| z != p && z != q)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_int};

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::new(rat_int(x), rat_int(y))
    }
    fn ptr(xn: i64, xd: i64, yn: i64, yd: i64) -> Point2 {
        Point2::new(rat(xn, xd), rat(yn, yd))
    }
    fn dir(x: i64, y: i64) -> Direction2 {
        Direction2::new(rat_int(x), rat_int(y)).unwrap()
    }

    fn t1_triangle() -> ConvexBody2 {
        ConvexBody2::polygon(vec![pt(0, 0), pt(2, 0), pt(0, 2)])
    }

    #[test]
    fn hull_canonical_order() {
        let b = ConvexBody2::polygon(vec![pt(0, 2), pt(0, 0), pt(2, 0), pt(1, 0)]);
        assert_eq!(b.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
    }

    #[test]
    fn ray_boundary_hits_vertex() {
        // Example body conv{(0,0),(2,0),(0,2)}, origin (1/2,1/2), dir (3/2,-1/2):
        // exits at (2,0) with lambda = 1.
        let b = t1_triangle();
        let (p, l) = b
            .ray_boundary_intersection(&ptr(1, 2, 1, 2), &Direction2::new(rat(3, 2), rat(-1, 2)).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(p, pt(2, 0));
        assert_eq!(l, rat_int(1));
    }

    #[test]
    fn ray_boundary_unbounded_in_recession() {
        // {0 <= y <= 1} as conv{(0,0),(0,1)} + cone{(1,0),(-1,0)}.
        let strip = ConvexBody2::from_points_dirs(
            vec![pt(0, 0), pt(0, 1)],
            vec![dir(1, 0), dir(-1, 0)],
        );
        let r = strip
            .ray_boundary_intersection(&ptr(1, 2, 1, 2), &dir(1, 0))
            .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn ray_boundary_unit_square_diagonal() {
        // Oracle: brute-force edge-by-edge segment intersection.
        let sq = ConvexBody2::polygon(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]);
        let origin = ptr(1, 2, 1, 2);
        let d = dir(1, 1);
        let (p, l) = sq.ray_boundary_intersection(&origin, &d).unwrap().unwrap();
        // Brute force: intersect the parametric ray with each edge segment.
        let verts = sq.vertices();
        let mut best: Option<Rational> = None;
        for i in 0..verts.len() {
            let a = &verts[i];
            let b = &verts[(i + 1) % verts.len()];
            let e = b.sub(a);
            if let Some((q, t)) = ray_line_intersection(&origin, &d, a, &e) {
                // q must lie on [a, b]
                let within = {
                    let ta = if !e.x.is_zero() {
                        (&q.x - &a.x) / &e.x
                    } else {
                        (&q.y - &a.y) / &e.y
                    };
                    !ta.is_negative() && ta <= rat_int(1)
                };
                if within && t.is_positive() && best.as_ref().is_none_or(|cur| &t < cur) {
                    best = Some(t);
                }
            }
        }
        let t = best.unwrap();
        assert_eq!(origin.add_scaled(&d, &t), p);
        assert_eq!(l, t.recip());
        assert_eq!(p, pt(1, 1));
    }

    #[test]
    fn ray_origin_not_interior() {
        let b = t1_triangle();
        let err = b.ray_boundary_intersection(&pt(0, 0), &dir(1, 1)).unwrap_err();
        assert!(matches!(err, GeomError::OriginNotInterior));
    }

    #[test]
    fn lattice_points_t1() {
        // Six boundary points, zero interior.
        let b = t1_triangle();
        let pts = b.lattice_points().unwrap();
        let interior: Vec<_> = pts
            .iter()
            .filter(|(_, l)| *l == PointLocation::Interior)
            .collect();
        assert!(interior.is_empty());
        let boundary: Vec<_> = pts
            .iter()
            .filter(|(_, l)| *l == PointLocation::Boundary)
            .map(|(p, _)| p.clone())
            .collect();
        let expect = vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 1), pt(1, 1), pt(0, 2)];
        assert_eq!(boundary.len(), 6);
        for e in expect {
            assert!(boundary.contains(&e));
        }
    }

    #[test]
    fn lattice_points_inside_unit_cell_empty() {
        let b = ConvexBody2::polygon(vec![ptr(1, 4, 1, 4), ptr(3, 4, 1, 4), ptr(1, 2, 3, 4)]);
        assert!(b.lattice_points().unwrap().is_empty());
    }

    #[test]
    fn lattice_points_rectangle() {
        let b = ConvexBody2::polygon(vec![pt(0, 0), pt(3, 0), pt(3, 1), pt(0, 1)]);
        let pts = b.lattice_points().unwrap();
        assert_eq!(pts.len(), 8);
        assert!(pts.iter().all(|(_, l)| *l == PointLocation::Boundary));
    }

    #[test]
    fn lattice_points_unbounded_err() {
        let strip = ConvexBody2::from_points_dirs(vec![pt(0, 0), pt(0, 1)], vec![dir(1, 0)]);
        assert!(matches!(
            strip.lattice_points().unwrap_err(),
            GeomError::UnboundedBody
        ));
    }

    #[test]
    fn t1_is_lattice_free_and_dilation_is_not() {
        let b = t1_triangle();
        assert!(b.is_lattice_free());
        // Dilate by 3/2 about (1/2,1/2): v -> c + 3/2 (v - c).
        let c = ptr(1, 2, 1, 2);
        let dil: Vec<Point2> = b
            .vertices()
            .iter()
            .map(|v| {
                let d = v.sub(&c);
                c.add_scaled(&d, &rat(3, 2))
            })
            .collect();
        let big = ConvexBody2::polygon(dil);
        // Oracle: (1,1) must now be interior.
        assert_eq!(big.locate(&pt(1, 1)), PointLocation::Interior);
        assert!(!big.is_lattice_free());
    }

    #[test]
    fn split_set_lattice_free() {
        let strip = ConvexBody2::from_points_dirs(
            vec![pt(0, 0), pt(0, 1)],
            vec![dir(1, 0), dir(-1, 0)],
        );
        assert!(strip.is_lattice_free());
        // Widen: 0 <= y <= 3/2 is not.
        let wide = ConvexBody2::from_points_dirs(
            vec![pt(0, 0), ptr(0, 1, 3, 2)],
            vec![dir(1, 0), dir(-1, 0)],
        );
        assert!(!wide.is_lattice_free());
    }

    #[test]
    fn tilted_strip_lattice_free() {
        // 0 <= x2 - x1 <= 1.
        let strip = ConvexBody2::from_points_dirs(
            vec![pt(0, 0), pt(0, 1)],
            vec![dir(1, 1), dir(-1, -1)],
        );
        assert!(strip.is_lattice_free());
    }

    #[test]
    fn full_dim_recession_not_lattice_free() {
        let wedge = ConvexBody2::from_points_dirs(vec![ptr(1, 2, 1, 2)], vec![dir(1, 0), dir(0, 1)]);
        assert!(!wedge.is_lattice_free());
    }

    #[test]
    fn apply_map_examples() {
        let id = AffineUnimodularMap::identity();
        let p = ptr(3, 2, 1, 2);
        assert_eq!(id.apply_point(&p), p);

        // M=[[0,-1],[1,0]], w=(1,0) applied to (3/2,1/2) -> (1/2,3/2).
        let m = AffineUnimodularMap::new([[0, -1], [1, 0]], [1, 0]).unwrap();
        assert_eq!(m.apply_point(&ptr(3, 2, 1, 2)), ptr(1, 2, 3, 2));

        // Integral translation preserves lattice-freeness.
        let t = AffineUnimodularMap::new([[1, 0], [0, 1]], [5, -7]).unwrap();
        let img = t.apply_body(&t1_triangle());
        assert!(img.is_lattice_free());
        assert_eq!(img.vertices()[0], pt(5, -7));
    }

    #[test]
    fn map_inverse_composes_to_identity() {
        let m = AffineUnimodularMap::new([[2, 1], [1, 1]], [3, -2]).unwrap();
        let inv = m.inverse();
        assert_eq!(m.compose(&inv), AffineUnimodularMap::identity());
        assert_eq!(inv.compose(&m), AffineUnimodularMap::identity());
    }

    #[test]
    fn unimodular_invariance_of_lattice_census() {
        let b = t1_triangle();
        let maps = [
            AffineUnimodularMap::new([[1, 2], [0, 1]], [1, -1]).unwrap(),
            AffineUnimodularMap::new([[0, -1], [1, 0]], [2, 3]).unwrap(),
            AffineUnimodularMap::new([[3, 2], [1, 1]], [0, 0]).unwrap(),
        ];
        for m in maps {
            let img = m.apply_body(&b);
            assert_eq!(img.is_lattice_free(), b.is_lattice_free());
            let a = b.lattice_points().unwrap();
            let c = img.lattice_points().unwrap();
            assert_eq!(a.len(), c.len());
            let mut interior_a = 0;
            let mut interior_c = 0;
            for (_, l) in &a {
                if *l == PointLocation::Interior {
                    interior_a += 1;
                }
            }
            for (_, l) in &c {
                if *l == PointLocation::Interior {
                    interior_c += 1;
                }
            }
            assert_eq!(interior_a, interior_c);
        }
    }

    #[test]
    fn segment_lattice_point_count() {
        let pts = segment_lattice_points(&pt(0, 0), &pt(0, 2));
        assert_eq!(pts, vec![pt(0, 0), pt(0, 1), pt(0, 2)]);
        let none = segment_lattice_points(&ptr(1, 2, 0, 1), &ptr(1, 2, 7, 3));
        assert!(none.is_empty());
        let diag = segment_interior_lattice_points(&pt(-1, -1), &pt(2, 2));
        assert_eq!(diag, vec![pt(0, 0), pt(1, 1)]);
    }

    #[test]
    fn degenerate_bodies() {
        let seg = ConvexBody2::polygon(vec![pt(0, 0), pt(0, 3)]);
        assert_eq!(seg.dim(), 1);
        assert!(seg.is_lattice_free());
        assert_eq!(seg.locate(&pt(0, 1)), PointLocation::Boundary);
        assert_eq!(seg.locate(&pt(1, 1)), PointLocation::Outside);
        let point = ConvexBody2::polygon(vec![ptr(1, 2, 1, 2)]);
        assert_eq!(point.dim(), 0);
        assert!(point.is_lattice_free());
    }

    #[test]
    fn boundary_line_crossings_triangle() {
        let b = t1_triangle();
        // Line y = 1 crosses at (0,1) and (1,1).
        let pts = b.boundary_line_crossings(&dir(0, 1), &rat_int(1));
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&pt(0, 1)));
        assert!(pts.contains(&pt(1, 1)));
    }

    #[test]
    fn body_equality_is_structural() {
        let a = ConvexBody2::polygon(vec![pt(0, 0), pt(2, 0), pt(0, 2), pt(1, 1)]);
        let b = ConvexBody2::polygon(vec![pt(0, 2), pt(2, 0), pt(0, 0)]);
        assert_eq!(a.vertices(), b.vertices());
    }
}
