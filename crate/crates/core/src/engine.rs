//! One split disjunction applied to `P(R,f)^0` intersected with retained
//! cuts: exact enumeration of each piece's vertices, validity checks for
//! candidate cuts, and the triangle/wedge/diamond constructions used by the
//! synthesizer.

use crate::error::EngineError;
use crate::geom::{ray_line_intersection, ConvexBody2, Direction2, Point2};
use crate::hpoly::HPolyhedron;
use crate::linalg::{dot, rank};
use crate::model::{induced_body, minimal_representation, CutIneq, TwoRowModel};
use crate::num::Rational;
use crate::sweep::{max_pinned_vertex_extension_impl, PinnedSideFamily, SweepOutcome};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `(pi . x <= pi0) or (pi . x >= pi0 + 1)` with primitive integral `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitDisjunction {
    pub pi: (BigInt, BigInt),
    pub pi0: BigInt,
}

impl SplitDisjunction {
    pub fn new(pi1: i64, pi2: i64, pi0: i64) -> Self {
        Self::from_bigint((BigInt::from(pi1), BigInt::from(pi2)), BigInt::from(pi0))
    }

    /// Canonicalize: divide by gcd, and orient so the first nonzero
    /// component of `pi` is positive (swapping the two sides as needed).
    pub fn from_bigint(pi: (BigInt, BigInt), pi0: BigInt) -> Self {
        let g = pi.0.gcd(&pi.1);
        assert!(!g.is_zero(), "pi must be nonzero");
        let (mut a, mut b) = (&pi.0 / &g, &pi.1 / &g);
        let mut c = pi0;
        if !(&pi.0 % &g).is_zero() || !(&pi.1 % &g).is_zero() {
            unreachable!();
        }
        // pi0 must stay integral under scaling; scaling by 1/g is only done
        // when it divides pi0 as well, otherwise keep the unscaled data.
        if !(&c % &g).is_zero() {
            a = pi.0.clone();
            b = pi.1.clone();
        } else {
            c = &c / &g;
        }
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            // (-pi, -pi0-1) describes the same disjunction with sides swapped.
            c = -c - 1;
            a = -a;
            b = -b;
        }
        SplitDisjunction { pi: (a, b), pi0: c }
    }

    pub fn eval(&self, p: &Point2) -> Rational {
        Rational::from_integer(self.pi.0.clone()) * &p.x
            + Rational::from_integer(self.pi.1.clone()) * &p.y
    }

    pub fn with_pi0(&self, pi0: BigInt) -> SplitDisjunction {
        SplitDisjunction::from_bigint(self.pi.clone(), pi0)
    }

    pub fn pi_direction(&self) -> Direction2 {
        Direction2::new(
            Rational::from_integer(self.pi.0.clone()),
            Rational::from_integer(self.pi.1.clone()),
        )
        .expect("pi nonzero")
    }

    /// The split set `pi0 <= pi.x <= pi0+1` as a body.
    pub fn split_body(&self) -> ConvexBody2 {
        let d = self.pi_direction();
        let line_dir = d.perp();
        let base0 = point_on_line(&d, &Rational::from_integer(self.pi0.clone()));
        let base1 = point_on_line(&d, &Rational::from_integer(&self.pi0 + 1));
        ConvexBody2::from_points_dirs(vec![base0, base1], vec![line_dir.clone(), line_dir.neg()])
    }

    /// Transform through `x' = M x + w`: a disjunction on x'-space pulls back
    /// to `pi_orig = M^T pi`, `pi0_orig = pi0 - pi . w`.
    pub fn pull_back(&self, map: &crate::geom::AffineUnimodularMap) -> SplitDisjunction {
        let pi = (
            &map.m[0][0] * &self.pi.0 + &map.m[1][0] * &self.pi.1,
            &map.m[0][1] * &self.pi.0 + &map.m[1][1] * &self.pi.1,
        );
        let pi0 = &self.pi0 - (&self.pi.0 * &map.w[0] + &self.pi.1 * &map.w[1]);
        SplitDisjunction::from_bigint(pi, pi0)
    }
}

fn point_on_line(normal: &Direction2, c: &Rational) -> Point2 {
    if !normal.x.is_zero() {
        Point2::new(c / &normal.x, Rational::zero())
    } else {
        Point2::new(Rational::zero(), c / &normal.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfspaceSide {
    /// `pi . x <= pi0`
    Le,
    /// `pi . x >= pi0 + 1`
    Ge,
}

/// `P(R,f)^0` together with retained cuts.
#[derive(Clone, Debug)]
pub struct CutSystem {
    pub model: TwoRowModel,
    pub retained: Vec<CutIneq>,
}

impl CutSystem {
    pub fn bare(model: TwoRowModel) -> Self {
        CutSystem {
            model,
            retained: Vec::new(),
        }
    }

    pub fn with_cuts(model: TwoRowModel, retained: Vec<CutIneq>) -> Self {
        CutSystem { model, retained }
    }

    /// Rows of the piece polyhedron in s-space.
    pub fn piece_polyhedron(
        &self,
        disj: &SplitDisjunction,
        side: HalfspaceSide,
    ) -> Result<HPolyhedron, EngineError> {
        let k = self.model.k();
        let mut p = HPolyhedron::nonneg_orthant(k)?;
        for cut in &self.retained {
            p.add_row(cut.alpha.clone(), Rational::one());
        }
        // pi . (f + R s) <= pi0  <=>  -(pi R) s >= pi.f - pi0
        let pir: Vec<Rational> = self
            .model
            .columns
            .iter()
            .map(|c| disj.eval(&Point2::new(c.x.clone(), c.y.clone())))
            .collect();
        let pif = disj.eval(&self.model.f);
        match side {
            HalfspaceSide::Le => {
                let a: Vec<Rational> = pir.iter().map(|v| -v.clone()).collect();
                let b = &pif - Rational::from_integer(disj.pi0.clone());
                p.add_row(a, b);
            }
            HalfspaceSide::Ge => {
                let b = Rational::from_integer(&disj.pi0 + 1) - &pif;
                p.add_row(pir, b);
            }
        }
        Ok(p)
    }
}

/// A vertex of one piece, in (x, s) space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceVertex {
    pub x: Point2,
    pub s: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceEnumeration {
    pub vertices: Vec<PieceVertex>,
    pub rays: Vec<Vec<Rational>>,
}

impl PieceEnumeration {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn x_vertices(&self) -> Vec<Point2> {
        let mut out: Vec<Point2> = Vec::new();
        for v in &self.vertices {
            if !out.contains(&v.x) {
                out.push(v.x.clone());
            }
        }
        out
    }
}

/// Ground-truth path: exhaustive active-set enumeration of one piece.
pub fn enumerate_piece_vertices(
    system: &CutSystem,
    disj: &SplitDisjunction,
    side: HalfspaceSide,
) -> Result<PieceEnumeration, EngineError> {
    let p = system.piece_polyhedron(disj, side)?;
    let vertices = p
        .vertices()
        .into_iter()
        .map(|(s, _)| PieceVertex {
            x: system.model.point_of(&s),
            s,
        })
        .collect();
    let rays = p.extreme_rays();
    Ok(PieceEnumeration { vertices, rays })
}

/// Fast geometric path: candidate vertices from ray/boundary crossings with
/// the disjunction line, induced-body vertices and pairwise boundary
/// intersections, filtered by exact feasibility and vertex rank.
pub fn enumerate_piece_vertices_fast(
    system: &CutSystem,
    disj: &SplitDisjunction,
    side: HalfspaceSide,
) -> Result<PieceEnumeration, EngineError> {
    let model = &system.model;
    let k = model.k();
    let poly = system.piece_polyhedron(disj, side)?;
    let line_c = match side {
        HalfspaceSide::Le => Rational::from_integer(disj.pi0.clone()),
        HalfspaceSide::Ge => Rational::from_integer(&disj.pi0 + 1),
    };
    let pi = disj.pi_direction();
    let mut cand: Vec<Vec<Rational>> = Vec::new();
    let push_point = |x: &Point2, cand: &mut Vec<Vec<Rational>>| {
        if let Ok(reps) = minimal_representation(model, x) {
            for r in reps {
                cand.push(r.to_dense(k));
            }
        }
    };

    // f itself (s = 0).
    cand.push(vec![Rational::zero(); k]);
    // Column rays crossing the disjunction line.
    let line_dir = pi.perp();
    let base = point_on_line(&pi, &line_c);
    for (i, col) in model.columns.iter().enumerate() {
        if let Some((_, t)) = ray_line_intersection(&model.f, col, &base, &line_dir) {
            let mut s = vec![Rational::zero(); k];
            s[i] = t;
            cand.push(s);
        }
    }
    let bodies: Vec<ConvexBody2> = system
        .retained
        .iter()
        .map(|c| induced_body(model, c))
        .collect();
    for (cut, body) in system.retained.iter().zip(&bodies) {
        // Induced-body points on the rays.
        for (i, a) in cut.alpha.iter().enumerate() {
            if !a.is_zero() {
                let mut s = vec![Rational::zero(); k];
                s[i] = a.clone().recip();
                cand.push(s);
            }
        }
        // Boundary crossings with the disjunction line.
        for x in body.boundary_line_crossings(&pi, &line_c) {
            push_point(&x, &mut cand);
        }
    }
    // Pairwise boundary intersections of two retained bodies.
    for i in 0..bodies.len() {
        for j in (i + 1)..bodies.len() {
            for x in boundary_boundary_intersections(&bodies[i], &bodies[j]) {
                push_point(&x, &mut cand);
            }
        }
    }
    // Support-3 active sets: two tight cuts plus the line.
    if system.retained.len() >= 2 && k >= 3 {
        for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    let support = [a, b, c];
                    let rows: Vec<Vec<Rational>> = vec![
                        support
                            .iter()
                            .map(|&i| system.retained[0].alpha[i].clone())
                            .collect(),
                        support
                            .iter()
                            .map(|&i| system.retained[1].alpha[i].clone())
                            .collect(),
                        support
                            .iter()
                            .map(|&i| disj.eval(&Point2::new(
                                model.columns[i].x.clone(),
                                model.columns[i].y.clone(),
                            )))
                            .collect(),
                    ];
                    let rhs = vec![
                        Rational::one(),
                        Rational::one(),
                        &line_c - disj.eval(&model.f),
                    ];
                    if let Some(sol) = crate::linalg::solve_square(&rows, &rhs) {
                        let mut s = vec![Rational::zero(); k];
                        for (idx, &i) in support.iter().enumerate() {
                            s[i] = sol[idx].clone();
                        }
                        cand.push(s);
                    }
                }
            }
        }
    }

    // Filter: feasible and vertex (k linearly independent tight rows).
    let mut vertices: Vec<PieceVertex> = Vec::new();
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for s in cand {
        if s.len() != k || !poly.satisfies(&s) || seen.contains(&s) {
            continue;
        }
        let tight: Vec<Vec<Rational>> = poly
            .rows
            .iter()
            .filter(|(a, b)| &dot(a, &s) == b)
            .map(|(a, _)| a.clone())
            .collect();
        if rank(&tight) < k {
            continue;
        }
        seen.push(s.clone());
        vertices.push(PieceVertex {
            x: model.point_of(&s),
            s,
        });
    }
    let rays = poly.extreme_rays();
    Ok(PieceEnumeration { vertices, rays })
}

/// All intersection points of the boundaries of two full-dimensional bodies.
fn boundary_boundary_intersections(a: &ConvexBody2, b: &ConvexBody2) -> Vec<Point2> {
    let mut out = Vec::new();
    for fa in a.facets() {
        for x in b.boundary_line_crossings(&fa.a, &fa.c) {
            if a.locate(&x) == crate::geom::PointLocation::Boundary && !out.contains(&x) {
                out.push(x.clone());
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub empty: bool,
    pub x_vertices: Vec<Point2>,
    pub vertex_count: usize,
    pub ray_count: usize,
}

/// Outcome of checking one candidate cut against both pieces of a
/// disjunction: Prop. 6.4 style, every vertex must satisfy the cut and every
/// extreme ray must have nonnegative value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    pub pass: bool,
    pub le: PieceReport,
    pub ge: PieceReport,
    pub witness: Option<PieceVertex>,
}

pub fn check_cut_after_disjunction(
    system: &CutSystem,
    disj: &SplitDisjunction,
    candidate: &CutIneq,
) -> Result<VerificationRecord, EngineError> {
    let le = enumerate_piece_vertices(system, disj, HalfspaceSide::Le)?;
    let ge = enumerate_piece_vertices(system, disj, HalfspaceSide::Ge)?;
    let mut pass = true;
    let mut witness = None;
    for piece in [&le, &ge] {
        for v in &piece.vertices {
            if candidate.eval(&v.s) < Rational::one() {
                pass = false;
                witness = Some(v.clone());
                break;
            }
        }
        if !pass {
            break;
        }
        for r in &piece.rays {
            if dot(&candidate.alpha, r).is_negative() {
                pass = false;
                witness = Some(PieceVertex {
                    x: system.model.point_of(r),
                    s: r.clone(),
                });
                break;
            }
        }
        if !pass {
            break;
        }
    }
    let report = |e: &PieceEnumeration| PieceReport {
        empty: e.is_empty(),
        x_vertices: e.x_vertices(),
        vertex_count: e.vertices.len(),
        ray_count: e.rays.len(),
    };
    Ok(VerificationRecord {
        pass,
        le: report(&le),
        ge: report(&ge),
        witness,
    })
}

/// The paper's triangle-through-three-points construction. Roles `(i, j, k)`
/// are column indices: `X, Y` lie in `f + cone{r^i, r^j}`, `Z` in
/// `f + cone{r^i, r^k}`; the triangle is `conv{p^i, p^j, p^k}` with `p^i`,
/// `p^j` on the line `XY` and `p^k` on the line `p^i Z`.
pub fn triangle_construct(
    model: &TwoRowModel,
    roles: (usize, usize, usize),
    x: &Point2,
    y: &Point2,
    z: &Point2,
) -> Result<ConvexBody2, EngineError> {
    let (i, j, k) = roles;
    if x == y {
        return Err(EngineError::IntersectionMissing);
    }
    let dxy = y.sub(x);
    let pi = on_ray_intersection(model, i, x, &dxy)?;
    let pj = on_ray_intersection(model, j, x, &dxy)?;
    let pk = if z == &pi {
        return Err(EngineError::IntersectionMissing);
    } else {
        let d = z.sub(&pi);
        on_ray_intersection(model, k, &pi, &d)?
    };
    Ok(ConvexBody2::polygon(vec![pi, pj, pk]))
}

fn on_ray_intersection(
    model: &TwoRowModel,
    col: usize,
    lp: &Point2,
    ld: &Direction2,
) -> Result<Point2, EngineError> {
    // A point already on the ray short-circuits (Z on its own ray).
    let (p, _t) = ray_line_intersection(&model.f, &model.columns[col], lp, ld)
        .ok_or(EngineError::IntersectionMissing)?;
    Ok(p)
}

/// Construction `wedge^i(p1, p2)`: the maximal triangle with apex on ray
/// `r^i` whose sides pass through the integral points `p1` and `p2`; the
/// strip through `p1`, `p2` parallel to `r^i` when the supremum is infinite.
pub fn wedge_construct(
    model: &TwoRowModel,
    apex_role: usize,
    p1: &Point2,
    p2: &Point2,
    start_hint: Option<&Rational>,
) -> Result<ConvexBody2, EngineError> {
    if p1 == p2 {
        return Err(EngineError::NoAdmissibleLambda);
    }
    if !p1.is_integral() || !p2.is_integral() {
        return Err(EngineError::NoAdmissibleLambda);
    }
    let j = other_support(model, apex_role, p1)?;
    let k = other_support(model, apex_role, p2)?;
    if j == k {
        return Err(EngineError::NoAdmissibleLambda);
    }
    let apex_dir = model.columns[apex_role].clone();
    let fam = PinnedSideFamily {
        f: &model.f,
        apex_dir: &apex_dir,
        pin_a: p1,
        ray_a: &model.columns[j],
        pin_b: p2,
        ray_b: &model.columns[k],
    };
    let start = match start_hint {
        Some(t) => t.clone(),
        None => find_start(&fam)?,
    };
    match fam.sweep(&start).map_err(EngineError::Geom)? {
        SweepOutcome::InfiniteStrip(strip) => Ok(strip),
        SweepOutcome::Finite(_, tri) => Ok(tri),
    }
}

fn other_support(
    model: &TwoRowModel,
    apex_role: usize,
    p: &Point2,
) -> Result<usize, EngineError> {
    let reps = minimal_representation(model, p).map_err(EngineError::Model)?;
    // Prefer a representation supported on {apex_role, other}.
    for r in &reps {
        let idx: Vec<usize> = r.entries.iter().map(|(i, _)| *i).collect();
        if idx.len() == 2 && idx.contains(&apex_role) {
            return Ok(*idx.iter().find(|&&i| i != apex_role).unwrap());
        }
    }
    for r in &reps {
        let idx: Vec<usize> = r.entries.iter().map(|(i, _)| *i).collect();
        if idx.len() == 1 && idx[0] != apex_role {
            return Ok(idx[0]);
        }
    }
    Err(EngineError::NoAdmissibleLambda)
}

fn find_start(fam: &PinnedSideFamily) -> Result<Rational, EngineError> {
    // Smallest apex parameter where the triangle degenerates; probe beyond it.
    let mut t = Rational::one();
    for _ in 0..60 {
        if let Ok(tri) = fam.triangle_at(&t) {
            if tri.is_lattice_free() {
                return Ok(t);
            }
        }
        t /= Rational::from_integer(2.into());
    }
    let mut t = Rational::from_integer(2.into());
    for _ in 0..20 {
        if let Ok(tri) = fam.triangle_at(&t) {
            if tri.is_lattice_free() {
                return Ok(t);
            }
        }
        t *= Rational::from_integer(2.into());
    }
    Err(EngineError::NoAdmissibleLambda)
}

/// Construction `diamond^1` / `diamond^3` on a standardized Q2 model (the
/// four unit-cell integer points sit on the four sides, `0 < f_1 < 1`).
pub fn diamond_construct(
    model: &TwoRowModel,
    side: usize,
) -> Result<ConvexBody2, EngineError> {
    if model.k() != 4 {
        return Err(EngineError::NotStandardQ2);
    }
    let one = Rational::one();
    let zero = Rational::zero();
    let (apex, pin2, pin4, q3_role) = match side {
        1 => (
            0usize,
            Point2::new(zero.clone(), one.clone()),
            Point2::new(zero.clone(), zero.clone()),
            2usize,
        ),
        3 => (
            2usize,
            Point2::new(one.clone(), one.clone()),
            Point2::new(one.clone(), zero.clone()),
            0usize,
        ),
        _ => return Err(EngineError::NotStandardQ2),
    };
    // pins attach to rays r^2 and r^4 in both orientations.
    let ray2 = 1usize;
    let ray4 = 3usize;
    let apex_dir = model.columns[apex].clone();
    let fam = PinnedSideFamily {
        f: &model.f,
        apex_dir: &apex_dir,
        pin_a: &pin2,
        ray_a: &model.columns[ray2],
        pin_b: &pin4,
        ray_b: &model.columns[ray4],
    };
    let start = find_start(&fam).map_err(|_| EngineError::NotStandardQ2)?;
    let (q2, q4, apex_vertex) = match fam.sweep(&start).map_err(EngineError::Geom)? {
        SweepOutcome::Finite(_, tri) => {
            // Identify vertices by ray membership.
            let v2 = vertex_on_ray(model, ray2, &tri).ok_or(EngineError::NotStandardQ2)?;
            let v4 = vertex_on_ray(model, ray4, &tri).ok_or(EngineError::NotStandardQ2)?;
            let va = vertex_on_ray(model, apex, &tri).ok_or(EngineError::NotStandardQ2)?;
            (v2, v4, Some(va))
        }
        SweepOutcome::InfiniteStrip(_) => {
            // Limit points: lines through the pins parallel to the apex ray.
            let q2 = ray_line_intersection(&model.f, &model.columns[ray2], &pin2, &apex_dir)
                .map(|(p, _)| p)
                .ok_or(EngineError::NotStandardQ2)?;
            let q4 = ray_line_intersection(&model.f, &model.columns[ray4], &pin4, &apex_dir)
                .map(|(p, _)| p)
                .ok_or(EngineError::NotStandardQ2)?;
            (q2, q4, None)
        }
    };
    // q3: furthest point along the remaining ray keeping conv{q2, q3, q4}
    // lattice-free; ties between the two moving segments resolve toward the
    // q2 side implicitly by the minimal blocking parameter.
    let fixed = vec![q2.clone(), q4.clone()];
    let mut t_start = Rational::one();
    let mut ok = false;
    for _ in 0..60 {
        let mut pts = fixed.clone();
        pts.push(model.f.add_scaled(&model.columns[q3_role], &t_start));
        let body = ConvexBody2::polygon(pts);
        if body.dim() == 2 && body.is_lattice_free() {
            ok = true;
            break;
        }
        t_start /= Rational::from_integer(2.into());
    }
    if !ok {
        return Err(EngineError::NotStandardQ2);
    }
    let t3 = max_pinned_vertex_extension_impl(
        &model.f,
        &fixed,
        &model.columns[q3_role],
        &t_start,
        false,
    )
    .map_err(EngineError::Geom)?;
    let Some(t3) = t3 else {
        // No blocking point ever: the construction degenerates.
        return Err(EngineError::NotStandardQ2);
    };
    let q3 = model.f.add_scaled(&model.columns[q3_role], &t3);
    let body = match apex_vertex {
        Some(p) => ConvexBody2::polygon(vec![p, q2, q3, q4]),
        None => ConvexBody2::from_points_dirs(vec![q2, q3, q4], vec![apex_dir]),
    };
    if !body.is_lattice_free() {
        return Err(EngineError::NotStandardQ2);
    }
    Ok(body)
}

fn vertex_on_ray(model: &TwoRowModel, col: usize, body: &ConvexBody2) -> Option<Point2> {
    for v in body.vertices() {
        if *v == model.f {
            continue;
        }
        let d = v.sub(&model.f);
        if d.parallel(&model.columns[col]) && d.dot(&model.columns[col]).is_positive() {
            return Some(v.clone());
        }
    }
    None
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
    fn dirr(xn: i64, xd: i64, yn: i64, yd: i64) -> Direction2 {
        Direction2::new(rat(xn, xd), rat(yn, yd)).unwrap()
    }
    fn dir(x: i64, y: i64) -> Direction2 {
        Direction2::new(rat_int(x), rat_int(y)).unwrap()
    }

    fn example_model_3col() -> TwoRowModel {
        TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr(-1, 2, 3, 2), dir(1, 0), dirr(-1, 2, -1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn disjunction_canonicalization() {
        let d = SplitDisjunction::new(0, -2, -2);
        assert_eq!(d.pi, (BigInt::from(0), BigInt::from(1)));
        assert_eq!(d.pi0, BigInt::from(0));
        let d = SplitDisjunction::new(-1, 0, 0);
        assert_eq!(d.pi, (BigInt::from(1), BigInt::from(0)));
        assert_eq!(d.pi0, BigInt::from(-1));
    }

    #[test]
    fn bare_model_piece_vertices_match_fast_path() {
        let m = example_model_3col();
        let sys = CutSystem::bare(m);
        let disj = SplitDisjunction::new(1, 0, 0);
        for side in [HalfspaceSide::Le, HalfspaceSide::Ge] {
            let brute = enumerate_piece_vertices(&sys, &disj, side).unwrap();
            let fast = enumerate_piece_vertices_fast(&sys, &disj, side).unwrap();
            let mut bx = brute.x_vertices();
            let mut fx = fast.x_vertices();
            bx.sort();
            fx.sort();
            assert_eq!(bx, fx);
        }
    }

    #[test]
    fn empty_piece_is_empty_not_error() {
        // Two-variable model with both rays pointing down and f2 < 1: the
        // x2 >= 1 piece is empty.
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr(-1, 2, -1, 2), dirr(1, 2, -1, 2)],
        )
        .unwrap();
        let sys = CutSystem::bare(m);
        let disj = SplitDisjunction::new(0, 1, 0);
        let ge = enumerate_piece_vertices(&sys, &disj, HalfspaceSide::Ge).unwrap();
        assert!(ge.is_empty());
        let le = enumerate_piece_vertices(&sys, &disj, HalfspaceSide::Le).unwrap();
        assert!(!le.is_empty());
    }

    #[test]
    fn trivial_candidate_rejected() {
        let m = example_model_3col();
        let sys = CutSystem::bare(m);
        let disj = SplitDisjunction::new(0, 1, 0);
        // A cut that no feasible vertex satisfies: huge coefficient demands.
        let candidate = CutIneq::new(vec![rat_int(1), rat(1, 1000), rat(1, 1000)]).unwrap();
        let rec = check_cut_after_disjunction(&sys, &disj, &candidate).unwrap();
        assert!(!rec.pass);
        assert!(rec.witness.is_some());
    }

    #[test]
    fn triangle_construct_identity_on_ray_points() {
        let m = example_model_3col();
        // X, Y, Z already on rays 1, 2, 3 respectively.
        let x = pt(0, 2); // f + 1*(col 0)
        let y = ptr(3, 2, 1, 2); // f + 1*(col 1)
        let z = pt(0, 0); // f + 1*(col 2)
        let tri = triangle_construct(&m, (0, 1, 2), &x, &y, &z).unwrap();
        assert_eq!(tri.vertices(), &[pt(0, 0), ptr(3, 2, 1, 2), pt(0, 2)]);
    }

    #[test]
    fn wedge_vertical_apex_is_split_strip() {
        // Completed model: f=(1/2,3/2), columns {(-1,-3/2),(1,-3/2),(0,1)}.
        let m = TwoRowModel::new(
            ptr(1, 2, 3, 2),
            vec![dirr(-1, 1, -3, 2), dirr(1, 1, -3, 2), dir(0, 1)],
        )
        .unwrap();
        let w = wedge_construct(&m, 2, &pt(0, 1), &pt(1, 1), Some(&rat(1, 2))).unwrap();
        assert!(w.recession_is_line());
        assert!(w.is_lattice_free());
        // It is exactly the strip 0 <= x1 <= 1.
        assert!(w.contains(&pt(0, 5)));
        assert!(w.contains(&pt(1, -7)));
        assert!(!w.contains(&ptr(3, 2, 0, 1)));
    }

    #[test]
    fn wedge_degenerate_pins_rejected() {
        let m = example_model_3col();
        assert_eq!(
            wedge_construct(&m, 0, &pt(0, 1), &pt(0, 1), None).unwrap_err(),
            EngineError::NoAdmissibleLambda
        );
    }

    #[test]
    fn pull_back_of_disjunction() {
        // x' = Mx + w with M=[[0,-1],[1,0]], w=(1,0); the std disjunction
        // (x1' <= 0) v (x1' >= 1) pulls back to the x2 disjunction.
        let map = crate::geom::AffineUnimodularMap::new([[0, -1], [1, 0]], [1, 0]).unwrap();
        let std = SplitDisjunction::new(1, 0, 0);
        let orig = std.pull_back(&map);
        // pi = M^T (1,0) = (0,-1), pi0 = 0 - (1,0).(1,0) = -1; canonical form
        // flips to pi=(0,1), pi0 = 0.
        assert_eq!(orig.pi, (BigInt::from(0), BigInt::from(1)));
        assert_eq!(orig.pi0, BigInt::from(0));
    }
}

#[cfg(test)]
mod construction_tests {
    use super::*;
    use crate::num::{rat, rat_int};

    fn ptr(xn: i64, xd: i64, yn: i64, yd: i64) -> Point2 {
        Point2::new(rat(xn, xd), rat(yn, yd))
    }
    fn dir(x: i64, y: i64) -> Direction2 {
        Direction2::new(rat_int(x), rat_int(y)).unwrap()
    }

    #[test]
    fn triangle_construct_role_consistent_permutations() {
        // Swapping X and Y (same side) leaves the triangle unchanged.
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr2(-1, 2, 3, 2), dir(1, 0), dirr2(-1, 2, -1, 2)],
        )
        .unwrap();
        let x = Point2::new(rat_int(0), rat_int(2));
        let y = ptr(3, 2, 1, 2);
        let z = Point2::new(rat_int(0), rat_int(0));
        let t1 = triangle_construct(&m, (0, 1, 2), &x, &y, &z).unwrap();
        let t2 = triangle_construct(&m, (1, 0, 2), &y, &x, &z).unwrap();
        assert_eq!(t1, t2);
    }

    fn dirr2(xn: i64, xd: i64, yn: i64, yd: i64) -> Direction2 {
        Direction2::new(rat(xn, xd), rat(yn, yd)).unwrap()
    }
}
