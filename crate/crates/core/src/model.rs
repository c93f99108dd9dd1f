//! The set `P(R,f)`, cut inequalities, the `phi` map between lattice-free
//! bodies and cuts, induced lattice-free sets, minimal representations, and
//! the column-level reductions and liftings.

use crate::error::ModelError;
use crate::geom::{ConvexBody2, Direction2, Point2, PointLocation};
use crate::linalg::solve_square;
use crate::num::Rational;
use crate::sweep;
use num_traits::{One, Signed, Zero};

/// `P(R,f) = {(x,s) in Z^2 x R^k_+ : f + R s = x}` with `f` non-integral and
/// nonzero rational columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowModel {
    pub f: Point2,
    pub columns: Vec<Direction2>,
}

impl TwoRowModel {
    pub fn new(f: Point2, columns: Vec<Direction2>) -> Result<Self, ModelError> {
        if f.is_integral() {
            return Err(ModelError::FIntegral);
        }
        if columns.is_empty() {
            return Err(ModelError::ZeroColumn);
        }
        Ok(TwoRowModel { f, columns })
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    /// Point reached by the solution vector `s`.
    pub fn point_of(&self, s: &[Rational]) -> Point2 {
        let mut p = self.f.clone();
        for (c, v) in self.columns.iter().zip(s) {
            p = p.add_scaled(c, v);
        }
        p
    }

    /// Dimension of `cone(columns)`: 0 is impossible, 1 when all columns are
    /// parallel, 2 otherwise.
    pub fn cone_dim(&self) -> usize {
        if self
            .columns
            .iter()
            .all(|c| c.parallel(&self.columns[0]))
        {
            1
        } else {
            2
        }
    }

    /// Does `cone(columns)` equal all of R^2?
    pub fn cone_is_full(&self) -> bool {
        if self.cone_dim() < 2 {
            return false;
        }
        // Full iff no halfplane contains every column.
        for c in &self.columns {
            let n = c.perp();
            if self.columns.iter().all(|d| !n.dot(d).is_negative())
                || self.columns.iter().all(|d| !n.dot(d).is_positive())
            {
                return false;
            }
        }
        true
    }

    pub fn sub_model(&self, keep: &[usize]) -> TwoRowModel {
        TwoRowModel {
            f: self.f.clone(),
            columns: keep.iter().map(|&i| self.columns[i].clone()).collect(),
        }
    }
}

/// Cut `sum alpha_i s_i >= 1` with `alpha_i >= 0`, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutIneq {
    pub alpha: Vec<Rational>,
}

impl CutIneq {
    pub fn new(alpha: Vec<Rational>) -> Result<Self, ModelError> {
        if alpha.iter().any(|a| a.is_negative()) || alpha.iter().all(|a| a.is_zero()) {
            return Err(ModelError::ZeroColumn);
        }
        Ok(CutIneq { alpha })
    }

    /// Normalize `sum c_i s_i >= rhs` with `rhs > 0` to right-hand side 1.
    pub fn from_rhs(coeffs: Vec<Rational>, rhs: Rational) -> Result<Self, ModelError> {
        if !rhs.is_positive() {
            return Err(ModelError::ZeroColumn);
        }
        Self::new(coeffs.into_iter().map(|c| c / &rhs).collect())
    }

    pub fn eval(&self, s: &[Rational]) -> Rational {
        crate::linalg::dot(&self.alpha, s)
    }

    /// Componentwise `self <= other` (then `self` implies `other`).
    pub fn dominates(&self, other: &CutIneq) -> bool {
        self.alpha.len() == other.alpha.len()
            && self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
    }
}

/// A point `f + sum multiplier r^index` using at most two columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRep {
    pub entries: Vec<(usize, Rational)>,
    pub target: Point2,
}

impl SparseRep {
    pub fn value_under(&self, cut: &CutIneq) -> Rational {
        let mut acc = Rational::zero();
        for (i, m) in &self.entries {
            acc += &cut.alpha[*i] * m;
        }
        acc
    }

    pub fn to_dense(&self, k: usize) -> Vec<Rational> {
        let mut s = vec![Rational::zero(); k];
        for (i, m) in &self.entries {
            s[*i] = m.clone();
        }
        s
    }
}

/// Intersection-cut coefficients `phi(body)` (Prop. 2.1): zero on recession
/// directions, otherwise the unique `lambda > 0` scaling each ray to the
/// boundary.
pub fn phi_from_body(model: &TwoRowModel, body: &ConvexBody2) -> Result<CutIneq, ModelError> {
    if body.locate(&model.f) != PointLocation::Interior {
        return Err(ModelError::FNotInterior);
    }
    if !body.is_lattice_free() {
        return Err(ModelError::BodyNotLatticeFree);
    }
    let mut alpha = Vec::with_capacity(model.k());
    for col in &model.columns {
        match body.ray_boundary_intersection(&model.f, col)? {
            None => alpha.push(Rational::zero()),
            Some((_, lambda)) => alpha.push(lambda),
        }
    }
    CutIneq::new(alpha)
}

/// The induced lattice-free set `L_alpha` (Eq. of Prop. 2.3): hull of
/// `f + r^i/alpha_i` over positive coefficients together with `f`, plus the
/// cone of the zero-coefficient columns.
pub fn induced_body(model: &TwoRowModel, cut: &CutIneq) -> ConvexBody2 {
    let mut pts = vec![model.f.clone()];
    let mut dirs = Vec::new();
    for (col, a) in model.columns.iter().zip(&cut.alpha) {
        if a.is_zero() {
            dirs.push(col.clone());
        } else {
            let t = a.clone().recip();
            pts.push(model.f.add_scaled(col, &t));
        }
    }
    ConvexBody2::from_points_dirs(pts, dirs)
}

/// A cut is valid for `conv(P(R,f))` iff its induced set is lattice-free.
pub fn cut_is_valid(model: &TwoRowModel, cut: &CutIneq) -> bool {
    induced_body(model, cut).is_lattice_free()
}

/// All minimal representations of `x` (at most two nonzero multipliers,
/// non-parallel support pairs).
pub fn minimal_representation(
    model: &TwoRowModel,
    x: &Point2,
) -> Result<Vec<SparseRep>, ModelError> {
    let mut reps = Vec::new();
    if *x == model.f {
        reps.push(SparseRep {
            entries: Vec::new(),
            target: x.clone(),
        });
        return Ok(reps);
    }
    let d = x.sub(&model.f);
    for (i, col) in model.columns.iter().enumerate() {
        if d.parallel(col) {
            // x = f + t col with t > 0
            let t = if !col.x.is_zero() {
                &d.x / &col.x
            } else {
                &d.y / &col.y
            };
            if t.is_positive() {
                reps.push(SparseRep {
                    entries: vec![(i, t)],
                    target: x.clone(),
                });
            }
        }
    }
    for i in 0..model.k() {
        for j in (i + 1)..model.k() {
            let (ci, cj) = (&model.columns[i], &model.columns[j]);
            if ci.parallel(cj) {
                continue;
            }
            let a = vec![
                vec![ci.x.clone(), cj.x.clone()],
                vec![ci.y.clone(), cj.y.clone()],
            ];
            let b = vec![d.x.clone(), d.y.clone()];
            if let Some(sol) = solve_square(&a, &b) {
                if sol[0].is_positive() && sol[1].is_positive() {
                    reps.push(SparseRep {
                        entries: vec![(i, sol[0].clone()), (j, sol[1].clone())],
                        target: x.clone(),
                    });
                }
            }
        }
    }
    if reps.is_empty() {
        return Err(ModelError::NotInCone);
    }
    Ok(reps)
}

/// Prop. 6.3 test: the representation violates the cut iff its value is
/// below 1, iff the target lies in the relative interior of the triangle
/// spanned by `f` and the two scaled support rays.
pub fn rep_violates(cut: &CutIneq, rep: &SparseRep) -> bool {
    rep.value_under(cut) < Rational::one()
}

/// Keep exactly the columns whose scaled points are vertices of `L_alpha`;
/// ties on a shared vertex keep the lowest index. The induced body is
/// unchanged.
pub fn reduce_to_vertex_columns(
    model: &TwoRowModel,
    cut: &CutIneq,
) -> Result<(TwoRowModel, CutIneq, Vec<usize>), ModelError> {
    if !model.cone_is_full() {
        return Err(ModelError::ConeNotFull);
    }
    let body = induced_body(model, cut);
    if !body.is_bounded() {
        return Err(ModelError::UnboundedInduced);
    }
    let mut keep: Vec<usize> = Vec::new();
    let mut used_vertices: Vec<Point2> = Vec::new();
    for (i, (col, a)) in model.columns.iter().zip(&cut.alpha).enumerate() {
        if a.is_zero() {
            continue;
        }
        let t = a.clone().recip();
        let p = model.f.add_scaled(col, &t);
        if body.vertices().contains(&p) && !used_vertices.contains(&p) {
            keep.push(i);
            used_vertices.push(p);
        }
    }
    let sub = model.sub_model(&keep);
    let sub_cut = CutIneq::new(keep.iter().map(|&i| cut.alpha[i].clone()).collect())?;
    debug_assert_eq!(induced_body(&sub, &sub_cut), body);
    Ok((sub, sub_cut, keep))
}

/// Append a column inside `cone(columns)` with the coefficient that places
/// its scaled point exactly on the boundary of `L_alpha` (Prop. 4.4); zero
/// when the new column recedes. The induced body is unchanged.
pub fn lift_column(
    model: &TwoRowModel,
    cut: &CutIneq,
    new_col: &Direction2,
) -> Result<(TwoRowModel, CutIneq), ModelError> {
    let body = induced_body(model, cut);
    let coeff = match body.ray_boundary_intersection(&model.f, new_col)? {
        None => Rational::zero(),
        Some((_, lambda)) => lambda,
    };
    let mut columns = model.columns.clone();
    columns.push(new_col.clone());
    let mut alpha = cut.alpha.clone();
    alpha.push(coeff);
    Ok((
        TwoRowModel {
            f: model.f.clone(),
            columns,
        },
        CutIneq { alpha },
    ))
}

/// Result of completing a sub-full cone to R^2 (Prop. 3.1).
#[derive(Clone, Debug)]
pub struct ConeCompletion {
    pub model: TwoRowModel,
    pub cut: CutIneq,
    /// Column actually appended (equals the probe unless the integral-vertex
    /// perturbation fired).
    pub added_column: Direction2,
    pub gamma: Rational,
    pub perturbed: bool,
}

/// Extend a facet-defining cut whose columns span a two-dimensional but
/// proper cone by one column so that the cone becomes R^2, the cut stays
/// facet-defining, and the induced body is not a type-1 triangle.
pub fn complete_cone(
    model: &TwoRowModel,
    cut: &CutIneq,
    probe: &Direction2,
) -> Result<ConeCompletion, ModelError> {
    if model.cone_is_full() {
        return Err(ModelError::ConeAlreadyFull);
    }
    if model.cone_dim() < 2 {
        return Err(ModelError::ConeNotFull);
    }
    {
        let mut cols = model.columns.clone();
        cols.push(probe.clone());
        let probe_model = TwoRowModel {
            f: model.f.clone(),
            columns: cols,
        };
        if !probe_model.cone_is_full() {
            return Err(ModelError::ProbeInsufficient);
        }
    }
    if cut.alpha.iter().any(|a| a.is_zero()) {
        // A zero coefficient contributes a recession direction; such cuts are
        // dominated by split inequalities and have no finite gamma.
        return Err(ModelError::GammaZero);
    }
    let points: Vec<Point2> = model
        .columns
        .iter()
        .zip(&cut.alpha)
        .map(|(c, a)| model.f.add_scaled(c, &a.clone().recip()))
        .collect();

    // gamma = 0 iff the beta -> 0 limit body conv(points + {f}) + cone(probe)
    // is lattice-free.
    let mut base = points.clone();
    base.push(model.f.clone());
    let limit = ConvexBody2::from_points_dirs(base.clone(), vec![probe.clone()]);
    if limit.is_lattice_free() {
        return Err(ModelError::GammaZero);
    }

    let body_at = |beta: &Rational| -> ConvexBody2 {
        let mut pts = base.clone();
        pts.push(model.f.add_scaled(probe, &beta.clone().recip()));
        ConvexBody2::polygon(pts)
    };

    // Halve beta until the body is not lattice-free; the blocking point that
    // realizes gamma is interior there.
    let mut beta_bad = Rational::one();
    let mut guard = 0;
    while body_at(&beta_bad).is_lattice_free() {
        beta_bad /= Rational::from_integer(2.into());
        guard += 1;
        if guard > 256 {
            return Err(ModelError::GammaZero);
        }
    }
    let bad = body_at(&beta_bad);
    let mut gamma = Rational::zero();
    let mut witness: Option<Point2> = None;
    for (p, loc) in bad.lattice_points().map_err(ModelError::Geom)? {
        if loc != PointLocation::Interior {
            continue;
        }
        // Largest beta with p interior: p enters through an edge [v, y(beta)]
        // as beta decreases. Solve collinearity of (v, p, y(beta)) for each
        // hull generator v: linear in 1/beta.
        for v in &base {
            if *v == p {
                continue;
            }
            // cross(v - p, f - p) + (1/beta) cross(v - p, probe) = 0
            let vp = v.sub(&p);
            let fp = model.f.sub(&p);
            let c0 = vp.cross(&fp);
            let c1 = vp.cross(probe);
            if c1.is_zero() {
                continue;
            }
            let inv_beta = -c0 / c1;
            if !inv_beta.is_positive() {
                continue;
            }
            let beta = inv_beta.recip();
            // p must be on the boundary of the body at this beta.
            let b = body_at(&beta);
            if b.locate(&p) == PointLocation::Boundary && beta > gamma {
                gamma = beta.clone();
                witness = Some(p.clone());
            }
        }
    }
    if gamma.is_zero() {
        return Err(ModelError::GammaZero);
    }
    debug_assert!(body_at(&gamma).is_lattice_free());
    let _ = witness;

    let new_point = model.f.add_scaled(probe, &gamma.clone().recip());
    let final_body = body_at(&gamma);

    // Prop. 3.1 second case: when the new point is integral and both incident
    // boundary segments carry relative-interior integer points, replace the
    // probe so the body cannot be a T1 triangle.
    let mut added_column = probe.clone();
    let mut added_coeff = gamma.clone();
    let mut perturbed = false;
    if new_point.is_integral() {
        let verts = final_body.vertices();
        let n = verts.len();
        let pos = verts.iter().position(|v| *v == new_point);
        if let Some(pos) = pos {
            let prev = &verts[(pos + n - 1) % n];
            let next = &verts[(pos + 1) % n];
            let seg_a = crate::geom::segment_interior_lattice_points(prev, &new_point);
            let seg_b = crate::geom::segment_interior_lattice_points(&new_point, next);
            if !seg_a.is_empty() && !seg_b.is_empty() {
                // Take the lattice point closest to the new vertex on one
                // segment; the midpoint between them is non-integral.
                let p = seg_a.last().unwrap().clone();
                let mid = Point2::new(
                    (&p.x + &new_point.x) / Rational::from_integer(2.into()),
                    (&p.y + &new_point.y) / Rational::from_integer(2.into()),
                );
                let dir = mid.sub(&model.f);
                let mut cols = model.columns.clone();
                cols.push(dir.clone());
                let pm = TwoRowModel {
                    f: model.f.clone(),
                    columns: cols,
                };
                if pm.cone_is_full() {
                    added_column = dir;
                    added_coeff = Rational::one();
                    perturbed = true;
                } else {
                    let p2 = seg_b.first().unwrap().clone();
                    let mid2 = Point2::new(
                        (&p2.x + &new_point.x) / Rational::from_integer(2.into()),
                        (&p2.y + &new_point.y) / Rational::from_integer(2.into()),
                    );
                    added_column = mid2.sub(&model.f);
                    added_coeff = Rational::one();
                    perturbed = true;
                }
            }
        }
    }

    let mut columns = model.columns.clone();
    columns.push(added_column.clone());
    let mut alpha = cut.alpha.clone();
    alpha.push(added_coeff);
    let out_model = TwoRowModel {
        f: model.f.clone(),
        columns,
    };
    let out_cut = CutIneq { alpha };
    debug_assert!(cut_is_valid(&out_model, &out_cut));
    Ok(ConeCompletion {
        model: out_model,
        cut: out_cut,
        added_column,
        gamma,
        perturbed,
    })
}

/// Maximal `t` such that `conv(fixed + {f + t dir})` stays lattice-free,
/// computed by the exact blocking-point sweep. `None` means unbounded.
pub fn max_extension_along_ray(
    f: &Point2,
    fixed: &[Point2],
    dir: &Direction2,
    t_start: &Rational,
) -> Result<Option<Rational>, ModelError> {
    sweep::max_pinned_vertex_extension(f, fixed, dir, t_start).map_err(ModelError::from)
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

    /// Four-column running example: f=(1/2,1/2), columns
    /// {(-1/2,3/2),(1,0),(3/2,-1/2),(-1/2,-1/2)}.
    fn example_model_4col() -> TwoRowModel {
        TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![
                dirr(-1, 2, 3, 2),
                dir(1, 0),
                dirr(3, 2, -1, 2),
                dirr(-1, 2, -1, 2),
            ],
        )
        .unwrap()
    }

    /// Three-column reduction: drop the third column.
    fn example_model_3col() -> TwoRowModel {
        TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr(-1, 2, 3, 2), dir(1, 0), dirr(-1, 2, -1, 2)],
        )
        .unwrap()
    }

    fn t1_body() -> ConvexBody2 {
        ConvexBody2::polygon(vec![pt(0, 0), pt(2, 0), pt(0, 2)])
    }

    fn strip_body() -> ConvexBody2 {
        ConvexBody2::from_points_dirs(vec![pt(0, 0), pt(0, 1)], vec![dir(1, 0), dir(-1, 0)])
    }

    #[test]
    fn phi_t1_all_ones() {
        let cut = phi_from_body(&example_model_4col(), &t1_body()).unwrap();
        assert_eq!(cut.alpha, vec![rat_int(1); 4]);
    }

    #[test]
    fn phi_strip_recession_and_vertical() {
        let m = TwoRowModel::new(ptr(1, 2, 1, 2), vec![dir(1, 0), dir(0, 1)]).unwrap();
        let cut = phi_from_body(&m, &strip_body()).unwrap();
        assert_eq!(cut.alpha[0], rat_int(0));
        assert_eq!(cut.alpha[1], rat_int(2));
    }

    #[test]
    fn phi_requires_interior_f() {
        let m = TwoRowModel::new(ptr(5, 2, 1, 2), vec![dir(1, 0)]).unwrap();
        assert_eq!(
            phi_from_body(&m, &t1_body()).unwrap_err(),
            ModelError::FNotInterior
        );
    }

    #[test]
    fn induced_body_example() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        let body = induced_body(&m, &cut);
        assert_eq!(
            body.vertices(),
            &[pt(0, 0), ptr(3, 2, 1, 2), pt(0, 2)]
        );
    }

    #[test]
    fn induced_body_single_column_segment() {
        let m = TwoRowModel::new(ptr(1, 2, 1, 2), vec![dir(1, 0)]).unwrap();
        let cut = CutIneq::new(vec![rat_int(1)]).unwrap();
        let body = induced_body(&m, &cut);
        assert_eq!(body.dim(), 1);
        assert_eq!(body.vertices(), &[ptr(1, 2, 1, 2), ptr(3, 2, 1, 2)]);
    }

    #[test]
    fn induced_body_with_zero_coefficient() {
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dir(0, 1), dir(0, -1), dir(1, 0)],
        )
        .unwrap();
        let cut = CutIneq::new(vec![rat_int(2), rat_int(2), rat_int(0)]).unwrap();
        let body = induced_body(&m, &cut);
        assert_eq!(body.vertices(), &[ptr(1, 2, 0, 1), ptr(1, 2, 1, 1)]);
        assert_eq!(body.recession().len(), 1);
        assert_eq!(body.recession()[0].primitive(), (1.into(), 0.into()));
    }

    #[test]
    fn duality_l_phi_subset() {
        // L_{phi(B)} is contained in B.
        let m = example_model_4col();
        let b = t1_body();
        let cut = phi_from_body(&m, &b).unwrap();
        let induced = induced_body(&m, &cut);
        assert!(b.contains_body(&induced));
    }

    #[test]
    fn minimal_rep_examples() {
        let m = example_model_3col();
        // (0,2) = f + 1 * (-1/2,3/2)
        let reps = minimal_representation(&m, &pt(0, 2)).unwrap();
        assert!(reps
            .iter()
            .any(|r| r.entries == vec![(0usize, rat_int(1))]));
        // f itself: empty representation.
        let reps = minimal_representation(&m, &ptr(1, 2, 1, 2)).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].entries.is_empty());
        // (1,1): entries {(1, 1/3) on column 1, (2, 2/3) on column 2} in
        // one-based column numbering.
        let reps = minimal_representation(&m, &pt(1, 1)).unwrap();
        assert!(reps
            .iter()
            .any(|r| r.entries == vec![(0usize, rat(1, 3)), (1usize, rat(2, 3))]));
    }

    #[test]
    fn minimal_rep_not_in_cone() {
        let m = TwoRowModel::new(ptr(1, 2, 1, 2), vec![dir(1, 0), dir(0, 1)]).unwrap();
        assert_eq!(
            minimal_representation(&m, &pt(-3, -3)).unwrap_err(),
            ModelError::NotInCone
        );
    }

    #[test]
    fn rep_violation_matches_geometry() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        // (1,1) is on the boundary of C: value exactly 1.
        let rep = minimal_representation(&m, &pt(1, 1))
            .unwrap()
            .into_iter()
            .find(|r| r.entries.len() == 2)
            .unwrap();
        assert_eq!(rep.value_under(&cut), rat_int(1));
        assert!(!rep_violates(&cut, &rep));
        // f violates every cut.
        let rep_f = &minimal_representation(&m, &ptr(1, 2, 1, 2)).unwrap()[0];
        assert!(rep_violates(&cut, rep_f));
        // (0,2) is a vertex: tight.
        let rep_v = minimal_representation(&m, &pt(0, 2))
            .unwrap()
            .into_iter()
            .find(|r| r.entries.len() == 1)
            .unwrap();
        assert!(!rep_violates(&cut, &rep_v));
    }

    #[test]
    fn reduce_keeps_vertex_columns() {
        let m = example_model_4col();
        let cut = CutIneq::new(vec![rat_int(1); 4]).unwrap();
        let (sub, sub_cut, keep) = reduce_to_vertex_columns(&m, &cut).unwrap();
        assert_eq!(keep, vec![0, 2, 3]);
        assert_eq!(sub.k(), 3);
        assert_eq!(induced_body(&sub, &sub_cut), induced_body(&m, &cut));
    }

    #[test]
    fn reduce_identity_for_affinely_independent() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        let (_, _, keep) = reduce_to_vertex_columns(&m, &cut).unwrap();
        assert_eq!(keep, vec![0, 1, 2]);
    }

    #[test]
    fn reduce_duplicate_column_tie_break() {
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![
                dirr(-1, 2, 3, 2),
                dir(1, 0),
                dirr(-1, 2, -1, 2),
                dir(1, 0), // duplicate of column 2
            ],
        )
        .unwrap();
        let cut = CutIneq::new(vec![rat(2, 3), rat(2, 3), rat_int(1), rat(2, 3)]).unwrap();
        let (_, _, keep) = reduce_to_vertex_columns(&m, &cut).unwrap();
        assert!(keep.contains(&1) && !keep.contains(&3));
    }

    #[test]
    fn lift_preserves_body_and_places_boundary_point() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        // Lift (-1/2, 1): boundary of C along it from f is (0, 3/2), lambda 1.
        let (m2, cut2) = lift_column(&m, &cut, &dirr(-1, 2, 1, 1)).unwrap();
        assert_eq!(cut2.alpha[3], rat_int(1));
        assert_eq!(induced_body(&m2, &cut2), induced_body(&m, &cut));
        // Lifting a copy keeps the coefficient.
        let (_, cut3) = lift_column(&m, &cut, &dir(1, 0)).unwrap();
        assert_eq!(cut3.alpha[3], rat_int(1));
        // Lift (1,1): boundary hit on the line x+y = 2 at (1,1), lambda 2.
        let (_, cut4) = lift_column(&m, &cut, &dir(1, 1)).unwrap();
        assert_eq!(cut4.alpha[3], rat_int(2));
    }

    #[test]
    fn complete_cone_worked_example() {
        // f=(1/2,3/2), columns {(-1,-3/2),(1,-3/2)}, alpha=(1,1); probe (0,1)
        // gives gamma = 2 and a T2A triangle with apex (1/2,2).
        let m = TwoRowModel::new(ptr(1, 2, 3, 2), vec![dirr(-1, 1, -3, 2), dirr(1, 1, -3, 2)])
            .unwrap();
        let cut = CutIneq::new(vec![rat_int(1), rat_int(1)]).unwrap();
        let done = complete_cone(&m, &cut, &dir(0, 1)).unwrap();
        assert_eq!(done.gamma, rat_int(2));
        assert!(!done.perturbed);
        let body = induced_body(&done.model, &done.cut);
        assert_eq!(
            body.vertices(),
            &[ptr(-1, 2, 0, 1), ptr(3, 2, 0, 1), ptr(1, 2, 2, 1)]
        );
        assert!(body.is_lattice_free());

        // Probe (0,2): gamma scales to 4, same apex.
        let done2 = complete_cone(&m, &cut, &dir(0, 2)).unwrap();
        assert_eq!(done2.gamma, rat_int(4));
        assert_eq!(
            induced_body(&done2.model, &done2.cut).vertices(),
            body.vertices()
        );
    }

    #[test]
    fn complete_cone_full_cone_rejected() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        assert_eq!(
            complete_cone(&m, &cut, &dir(0, 1)).unwrap_err(),
            ModelError::ConeAlreadyFull
        );
    }

    #[test]
    fn round_trip_phi_induced_on_tight_cuts() {
        let m = example_model_3col();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        let body = induced_body(&m, &cut);
        let back = phi_from_body(&m, &body).unwrap();
        assert_eq!(back, cut);
    }
}
