//! Classification of induced lattice-free sets into the facet taxonomy
//! (split subsets, triangles T1/T2A/T2B/T3, quadrilaterals Q1/Q2) and the
//! constructive search for the integral translation plus unimodular map to
//! each standard form.

use crate::error::ClassifyError;
use crate::geom::{
    line_line_intersection, segment_interior_lattice_points, segment_lattice_points,
    AffineUnimodularMap, ConvexBody2, Direction2, Point2, PointLocation,
};
use crate::model::{induced_body, CutIneq, TwoRowModel};
use crate::num::{ceil_int, floor_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyClass {
    SplitSubset,
    T1,
    T2A,
    T2B,
    T3,
    Q1,
    Q2,
    NonFacetOther,
}

/// Classify a lattice-free body with `f` in its interior by exact
/// lattice-point census per side.
pub fn classify_body(body: &ConvexBody2, f: &Point2) -> Result<BodyClass, ClassifyError> {
    if !body.is_lattice_free() {
        return Err(ClassifyError::NotLatticeFree);
    }
    if body.locate(f) != PointLocation::Interior {
        return Err(ClassifyError::FNotInterior);
    }
    if split_container(body).is_some() {
        return Ok(BodyClass::SplitSubset);
    }
    if !body.is_bounded() {
        // Unbounded and not inside a split set: outside the facet taxonomy.
        return Ok(BodyClass::NonFacetOther);
    }
    let verts = body.vertices();
    match verts.len() {
        3 => Ok(classify_triangle(verts)),
        4 => Ok(classify_quadrilateral(verts)),
        _ => Ok(BodyClass::NonFacetOther),
    }
}

fn side_points(verts: &[Point2], i: usize) -> (Point2, Point2) {
    let n = verts.len();
    (verts[i].clone(), verts[(i + 1) % n].clone())
}

fn relint_count(verts: &[Point2], i: usize) -> usize {
    let (a, b) = side_points(verts, i);
    segment_interior_lattice_points(&a, &b).len()
}

fn total_count(verts: &[Point2], i: usize) -> usize {
    let (a, b) = side_points(verts, i);
    segment_lattice_points(&a, &b).len()
}

fn classify_triangle(verts: &[Point2]) -> BodyClass {
    let all_integral = verts.iter().all(|v| v.is_integral());
    let relint: Vec<usize> = (0..3).map(|i| relint_count(verts, i)).collect();
    if all_integral && relint.iter().all(|&c| c == 1) {
        return BodyClass::T1;
    }
    // T2: a non-integral vertex whose opposite side holds multiple integer
    // points (endpoints included).
    for v in 0..3 {
        if verts[v].is_integral() {
            continue;
        }
        let opposite = (v + 1) % 3; // side (v+1, v+2)
        if total_count(verts, opposite) < 2 {
            continue;
        }
        // Sides incident to the apex: (v, v+1) and (v+2, v).
        let s1 = relint_count(verts, v);
        let s2 = relint_count(verts, (v + 2) % 3);
        if s1 == 1 && s2 == 1 {
            return BodyClass::T2A;
        }
        if (s1 == 1 && s2 == 0) || (s1 == 0 && s2 == 1) {
            return BodyClass::T2B;
        }
    }
    let no_integral_vertex = verts.iter().all(|v| !v.is_integral());
    let boundary_total: usize = (0..3).map(|i| relint_count(verts, i)).sum();
    if no_integral_vertex && boundary_total == 3 && relint.iter().all(|&c| c == 1) {
        return BodyClass::T3;
    }
    BodyClass::NonFacetOther
}

fn classify_quadrilateral(verts: &[Point2]) -> BodyClass {
    let relint: Vec<usize> = (0..4).map(|i| relint_count(verts, i)).collect();
    let total: Vec<usize> = (0..4).map(|i| total_count(verts, i)).collect();
    let no_integral_vertex = verts.iter().all(|v| !v.is_integral());
    if no_integral_vertex && relint.iter().all(|&c| c == 1) {
        return BodyClass::Q2;
    }
    let empties = relint.iter().filter(|&&c| c == 0).count();
    if empties == 1 {
        let empty_idx = relint.iter().position(|&c| c == 0).unwrap();
        let others: Vec<usize> = (0..4).filter(|&i| i != empty_idx).collect();
        let has_multi = others.iter().any(|&i| total[i] >= 2);
        let all_touch = others.iter().all(|&i| total[i] >= 1);
        if has_multi && all_touch {
            return BodyClass::Q1;
        }
    }
    BodyClass::NonFacetOther
}

/// A split set `pi0 <= pi.x <= pi0+1` containing the body, if one exists.
pub fn split_container(body: &ConvexBody2) -> Option<crate::engine::SplitDisjunction> {
    let verts = body.vertices();
    if body.dim() < 2 {
        // Degenerate bodies fit in some split set along their direction.
        let d = if verts.len() > 1 {
            verts[1].sub(&verts[0])
        } else if !body.recession().is_empty() {
            body.recession()[0].clone()
        } else {
            return Some(crate::engine::SplitDisjunction::new(1, 0, 0));
        };
        let (a, b) = d.perp().primitive();
        let pi = Direction2::new(
            Rational::from_integer(a.clone()),
            Rational::from_integer(b.clone()),
        )
        .ok()?;
        let v = &pi.x * &verts[0].x + &pi.y * &verts[0].y;
        let pi0 = floor_int(&v);
        if Rational::from_integer(&pi0 + 1) >= v {
            return Some(crate::engine::SplitDisjunction::from_bigint((a, b), pi0));
        }
        return None;
    }
    let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
    if !body.recession().is_empty() {
        if body.recession_full_dim() {
            return None;
        }
        candidates.push(body.recession()[0].perp().primitive());
    } else {
        // pi must satisfy |pi . (u - v)| <= 1 for all vertex pairs. Two
        // independent difference vectors bound a parallelogram of candidate
        // pi; enumerate its integer points.
        let d1 = verts[1].sub(&verts[0]);
        let mut d2 = None;
        for v in verts.iter().skip(2) {
            let d = v.sub(&verts[0]);
            if !d.parallel(&d1) {
                d2 = Some(d);
                break;
            }
        }
        let d2 = d2?;
        // pi = (p, q): |p d1x + q d1y| <= 1, |p d2x + q d2y| <= 1.
        // Invert: corners of the candidate region are D^{-T} (+-1, +-1).
        let det = &d1.x * &d2.y - &d1.y * &d2.x;
        let mut pmin = None;
        let mut pmax = None;
        let mut qmin = None;
        let mut qmax = None;
        for s1 in [-1i64, 1] {
            for s2 in [-1i64, 1] {
                let c1 = Rational::from_integer(s1.into());
                let c2 = Rational::from_integer(s2.into());
                // Solve p d1x + q d1y = c1; p d2x + q d2y = c2.
                let p = (&c1 * &d2.y - &c2 * &d1.y) / &det;
                let q = (&c2 * &d1.x - &c1 * &d2.x) / &det;
                if pmin.as_ref().is_none_or(|v| &p < v) {
                    pmin = Some(p.clone());
                }
                if pmax.as_ref().is_none_or(|v| &p > v) {
                    pmax = Some(p.clone());
                }
                if qmin.as_ref().is_none_or(|v| &q < v) {
                    qmin = Some(q.clone());
                }
                if qmax.as_ref().is_none_or(|v| &q > v) {
                    qmax = Some(q);
                }
            }
        }
        let (pmin, pmax) = (ceil_int(&pmin?), floor_int(&pmax?));
        let (qmin, qmax) = (ceil_int(&qmin?), floor_int(&qmax?));
        let mut p = pmin.clone();
        while p <= pmax {
            let mut q = qmin.clone();
            while q <= qmax {
                if !(p.is_zero() && q.is_zero()) {
                    candidates.push((p.clone(), q.clone()));
                }
                q += 1;
            }
            p += 1;
        }
    }
    for (a, b) in candidates {
        let g = a.gcd(&b);
        if g.is_zero() {
            continue;
        }
        let (a, b) = (&a / &g, &b / &g);
        let pi = Direction2::new(
            Rational::from_integer(a.clone()),
            Rational::from_integer(b.clone()),
        )
        .ok()?;
        if body
            .recession()
            .iter()
            .any(|r| !pi.dot(r).is_zero())
        {
            continue;
        }
        let vals: Vec<Rational> = verts.iter().map(|v| &pi.x * &v.x + &pi.y * &v.y).collect();
        let vmin = vals.iter().min().unwrap();
        let vmax = vals.iter().max().unwrap();
        let pi0 = floor_int(vmin);
        if &Rational::from_integer(&pi0 + 1) >= vmax {
            return Some(crate::engine::SplitDisjunction::from_bigint((a, b), pi0));
        }
    }
    None
}

use num_integer::Integer;

/// Standard-form scalar parameters, where applicable per class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StdParams {
    pub delta: Option<Rational>,
    pub eps: Option<Rational>,
    pub g: Option<BigInt>,
    pub gamma: Option<Rational>,
    pub apex: Option<Point2>,
}

/// A standardized instance, plus the optional enlarged/weakened companion
/// whose induced body contains the standardized one (Shape lemma bound).
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub class: BodyClass,
    /// Original coordinates to standard coordinates.
    pub map: AffineUnimodularMap,
    /// `column_roles[r]` is the original column index playing role r+1.
    pub column_roles: Vec<usize>,
    pub model: TwoRowModel,
    pub cut: CutIneq,
    pub body: ConvexBody2,
    /// Body vertices in role order (w^1, w^2, ...).
    pub w: Vec<Point2>,
    pub params: StdParams,
    /// Set when the instance was enlarged (T2B with g = 0) or ray-weakened
    /// (Q1): the certificate is produced for this companion and binds the
    /// standardized cut by exact body containment.
    pub modified: Option<ModifiedInstance>,
}

#[derive(Clone, Debug)]
pub struct ModifiedInstance {
    pub model: TwoRowModel,
    pub cut: CutIneq,
    pub reason: String,
}

impl StandardForm {
    /// Instance the synthesizer should actually certify.
    pub fn working_instance(&self) -> (TwoRowModel, CutIneq) {
        match &self.modified {
            Some(m) => (m.model.clone(), m.cut.clone()),
            None => (self.model.clone(), self.cut.clone()),
        }
    }
}

/// Compute the standardizing map for a classified instance. The model must
/// already be reduced so that each positive-coefficient column reaches a
/// distinct vertex of the induced body.
pub fn standardize(
    model: &TwoRowModel,
    cut: &CutIneq,
    class: BodyClass,
) -> Result<StandardForm, ClassifyError> {
    let body = induced_body(model, cut);
    let found = classify_body(&body, &model.f)?;
    if found != class {
        return Err(ClassifyError::ClassMismatch);
    }
    match class {
        BodyClass::T2B | BodyClass::T2A => standardize_t2(model, cut, &body, class),
        BodyClass::T3 => standardize_t3(model, cut, &body),
        BodyClass::Q1 => standardize_q1(model, cut, &body),
        BodyClass::Q2 => standardize_q2(model, cut, &body),
        _ => Err(ClassifyError::ClassMismatch),
    }
}

/// Column index whose scaled point equals the given body vertex.
fn column_for_vertex(
    model: &TwoRowModel,
    cut: &CutIneq,
    v: &Point2,
) -> Result<usize, ClassifyError> {
    for (i, (col, a)) in model.columns.iter().zip(&cut.alpha).enumerate() {
        if a.is_zero() {
            continue;
        }
        if &model.f.add_scaled(col, &a.clone().recip()) == v {
            return Ok(i);
        }
    }
    Err(ClassifyError::ClassMismatch)
}

fn apply_candidate(
    model: &TwoRowModel,
    cut: &CutIneq,
    map: &AffineUnimodularMap,
    roles: &[usize],
) -> (TwoRowModel, CutIneq) {
    let f = map.apply_point(&model.f);
    let columns: Vec<Direction2> = roles
        .iter()
        .map(|&i| map.apply_direction(&model.columns[i]))
        .collect();
    let alpha: Vec<Rational> = roles.iter().map(|&i| cut.alpha[i].clone()).collect();
    (
        TwoRowModel { f, columns },
        CutIneq { alpha },
    )
}

/// Unimodular maps sending primitive `d` to `(1,0)`, parametrized by the
/// shear `t`: first row `p0 + t s`, second row `s = sign * perp(d)`.
struct BaseAligned {
    p0: (BigInt, BigInt),
    s: (BigInt, BigInt),
}

fn base_aligned(d: (&BigInt, &BigInt), apex_up: (&Rational, &Rational)) -> Option<BaseAligned> {
    let e = d.0.extended_gcd(d.1);
    if !e.gcd.is_one() {
        return None;
    }
    let p0 = (e.x, e.y);
    // perp choices: (-d2, d1) or (d2, -d1); pick the one putting the apex up.
    for s in [(-d.1.clone(), d.0.clone()), (d.1.clone(), -d.0.clone())] {
        let h = Rational::from_integer(s.0.clone()) * apex_up.0
            + Rational::from_integer(s.1.clone()) * apex_up.1;
        if h.is_positive() {
            return Some(BaseAligned { p0, s });
        }
    }
    None
}

fn row_dot(r: &(BigInt, BigInt), p: &Point2) -> Rational {
    Rational::from_integer(r.0.clone()) * &p.x + Rational::from_integer(r.1.clone()) * &p.y
}

#[allow(clippy::too_many_arguments)]
fn t2_candidate_maps(
    w1: &Point2,
    w2: &Point2,
    apex: &Point2,
    p1: &Point2,
) -> Vec<AffineUnimodularMap> {
    // Base direction w1 -> w2 maps to +x; apex above; P1 maps to (0,1); the
    // integer shear is pinned by 0 < apex_x < 1.
    let mut out = Vec::new();
    let dbase = w2.sub(w1);
    let (dx, dy) = dbase.primitive();
    let (dx, dy) = if (Rational::from_integer(dx.clone()) * &dbase.x
        + Rational::from_integer(dy.clone()) * &dbase.y)
        .is_negative()
    {
        (-dx, -dy)
    } else {
        (dx, dy)
    };
    let apex_rel = apex.sub(w1);
    let Some(ba) = base_aligned((&dx, &dy), (&apex_rel.x, &apex_rel.y)) else {
        return out;
    };
    // Lattice height of P1 above the base must be exactly 1.
    let h = row_dot(&ba.s, p1) - row_dot(&ba.s, w1);
    if h != Rational::one() {
        return out;
    }
    // apex_x(t) = (p0 + t s) . (apex - P1): choose integer t with the value
    // in (0, 1).
    let a_p0 = row_dot(&ba.p0, apex) - row_dot(&ba.p0, p1);
    let a_s = row_dot(&ba.s, apex) - row_dot(&ba.s, p1);
    if a_s.is_zero() {
        return out;
    }
    // 0 < a_p0 + t a_s < 1
    let lo = (-&a_p0) / &a_s;
    let hi = (Rational::one() - &a_p0) / &a_s;
    let (lo, hi) = if a_s.is_positive() { (lo, hi) } else { (hi, lo) };
    let mut t = ceil_int(&lo);
    while Rational::from_integer(t.clone()) <= hi {
        let tv = Rational::from_integer(t.clone());
        if tv > lo && tv < hi {
            let row1 = (&ba.p0.0 + &t * &ba.s.0, &ba.p0.1 + &t * &ba.s.1);
            let m = [[row1.0, row1.1], [ba.s.0.clone(), ba.s.1.clone()]];
            if let Ok(map0) = AffineUnimodularMap::from_bigint(
                m,
                [BigInt::zero(), BigInt::zero()],
            ) {
                // Translate P1 to (0, 1).
                let img = map0.apply_point(p1);
                let w = [
                    -img.x.to_integer(),
                    BigInt::one() - img.y.to_integer(),
                ];
                if img.is_integral() {
                    out.push(AffineUnimodularMap {
                        m: map0.m.clone(),
                        w,
                    });
                }
            }
        }
        t += 1;
    }
    out
}

fn standardize_t2(
    model: &TwoRowModel,
    cut: &CutIneq,
    body: &ConvexBody2,
    class: BodyClass,
) -> Result<StandardForm, ClassifyError> {
    let verts = body.vertices();
    if verts.len() != 3 || model.k() != 3 {
        return Err(ClassifyError::ClassMismatch);
    }
    // Apex candidates: non-integral vertices with a multi-point opposite side.
    let mut labelings: Vec<(usize, usize, usize)> = Vec::new(); // (w1, w2, apex)
    for a in 0..3 {
        if verts[a].is_integral() {
            continue;
        }
        let b = (a + 1) % 3;
        let c = (a + 2) % 3;
        let (u, v) = (&verts[b], &verts[c]);
        if segment_lattice_points(u, v).len() < 2 {
            continue;
        }
        labelings.push((b, c, a));
        labelings.push((c, b, a));
    }
    labelings.sort();
    for (i1, i2, ia) in labelings {
        let (w1, w2, apex) = (&verts[i1], &verts[i2], &verts[ia]);
        // Side w1-apex must hold exactly one relative-interior integer point.
        let leg1 = segment_interior_lattice_points(w1, apex);
        let leg2 = segment_interior_lattice_points(w2, apex);
        match class {
            BodyClass::T2B => {
                if leg1.len() != 1 || !leg2.is_empty() {
                    continue;
                }
            }
            BodyClass::T2A => {
                if leg1.len() != 1 || leg2.len() != 1 {
                    continue;
                }
            }
            _ => unreachable!(),
        }
        let p1 = &leg1[0];
        for map in t2_candidate_maps(w1, w2, apex, p1) {
            let roles = vec![
                column_for_vertex(model, cut, w1)?,
                column_for_vertex(model, cut, w2)?,
                column_for_vertex(model, cut, apex)?,
            ];
            let (sm, sc) = apply_candidate(model, cut, &map, &roles);
            if let Some(sf) = check_t2_clauses(model, cut, &map, roles, sm, sc, class) {
                return Ok(sf);
            }
        }
    }
    Err(ClassifyError::NoStandardizingMapFound)
}

fn check_t2_clauses(
    orig_model: &TwoRowModel,
    orig_cut: &CutIneq,
    map: &AffineUnimodularMap,
    roles: Vec<usize>,
    sm: TwoRowModel,
    sc: CutIneq,
    class: BodyClass,
) -> Option<StandardForm> {
    let body = induced_body(&sm, &sc);
    let verts = body.vertices();
    if verts.len() != 3 {
        return None;
    }
    let w1 = sm.f.add_scaled(&sm.columns[0], &sc.alpha[0].clone().recip());
    let w2 = sm.f.add_scaled(&sm.columns[1], &sc.alpha[1].clone().recip());
    let w3 = sm.f.add_scaled(&sm.columns[2], &sc.alpha[2].clone().recip());
    let zero = Rational::zero();
    let one = Rational::one();
    // w1 = (-delta, 0), 0 < delta <= 1.
    if !w1.y.is_zero() || !(-&w1.x).is_positive() || -&w1.x > one {
        return None;
    }
    let delta = -w1.x.clone();
    // w2 = (g + eps, 0), g integer >= 0, 0 <= eps < 1.
    if !w2.y.is_zero() || !w2.x.is_positive() {
        return None;
    }
    let g = floor_int(&w2.x);
    let eps = &w2.x - Rational::from_integer(g.clone());
    // w3 = (xbar, ybar), ybar > 1, 0 < xbar < 1.
    if w3.y <= one || !w3.x.is_positive() || w3.x >= one {
        return None;
    }
    // (0,1) in relint(w1 w3).
    let p01 = Point2::new(zero.clone(), one.clone());
    if !segment_interior_lattice_points(&w1, &w3).contains(&p01) {
        return None;
    }
    // Side w2 w3 relative interior census.
    let leg2 = segment_interior_lattice_points(&w2, &w3);
    match class {
        BodyClass::T2B => {
            if !leg2.is_empty() {
                return None;
            }
        }
        BodyClass::T2A => {
            if leg2 != vec![Point2::new(one.clone(), one.clone())] {
                return None;
            }
            if g < BigInt::one() {
                return None;
            }
        }
        _ => unreachable!(),
    }
    // Ray sign conditions.
    let r = &sm.columns;
    if !r[0].y.is_negative()
        || !r[0].x.is_negative()
        || !r[1].y.is_negative()
        || r[1].x.is_negative()
        || !r[2].y.is_positive()
    {
        return None;
    }
    let mut modified = None;
    if class == BodyClass::T2B && g.is_zero() {
        // Enlargement: replace r^2 by (1 - f1, -f2) with coefficient 1, so
        // the new w2 is (1, 0); the enlarged body contains the original.
        let new_r2 = Direction2::new(Rational::one() - &sm.f.x, -sm.f.y.clone()).ok()?;
        let mut columns = sm.columns.clone();
        columns[1] = new_r2;
        let mut alpha = sc.alpha.clone();
        alpha[1] = Rational::one();
        let em = TwoRowModel {
            f: sm.f.clone(),
            columns,
        };
        let ec = CutIneq { alpha };
        let ebody = induced_body(&em, &ec);
        if !ebody.is_lattice_free() || !ebody.contains_body(&body) {
            return None;
        }
        modified = Some(ModifiedInstance {
            model: em,
            cut: ec,
            reason: "g = 0 enlargement: w2 moved to (1,0)".to_string(),
        });
    }
    let _ = orig_model;
    let _ = orig_cut;
    Some(StandardForm {
        class,
        map: map.clone(),
        column_roles: roles,
        model: sm,
        cut: sc,
        body,
        w: vec![w1, w2, w3.clone()],
        params: StdParams {
            delta: Some(delta),
            eps: Some(eps),
            g: Some(g),
            gamma: None,
            apex: Some(w3),
        },
        modified,
    })
}

fn standardize_t3(
    model: &TwoRowModel,
    cut: &CutIneq,
    body: &ConvexBody2,
) -> Result<StandardForm, ClassifyError> {
    let verts = body.vertices();
    if verts.len() != 3 || model.k() != 3 {
        return Err(ClassifyError::ClassMismatch);
    }
    // Labelings: w1, w2, w3 cyclic with sides w1w2 -> (0,0), w2w3 -> (1,0),
    // w3w1 -> (0,1).
    let mut labelings: Vec<[usize; 3]> = Vec::new();
    for r in 0..3 {
        labelings.push([r, (r + 1) % 3, (r + 2) % 3]);
        labelings.push([(r + 1) % 3, r, (r + 2) % 3]);
    }
    for lab in labelings {
        let (a, b, c) = (&verts[lab[0]], &verts[lab[1]], &verts[lab[2]]);
        let p12 = match &segment_interior_lattice_points(a, b)[..] {
            [p] => p.clone(),
            _ => continue,
        };
        let p23 = match &segment_interior_lattice_points(b, c)[..] {
            [p] => p.clone(),
            _ => continue,
        };
        let p31 = match &segment_interior_lattice_points(c, a)[..] {
            [p] => p.clone(),
            _ => continue,
        };
        // M (p23 - p12) = (1,0); M (p31 - p12) = (0,1); w = -M p12.
        let u = p23.sub(&p12);
        let v = p31.sub(&p12);
        let Some(map) = map_from_basis(&u, &v, &p12, &Point2::new(Rational::zero(), Rational::zero()))
        else {
            continue;
        };
        let roles = vec![
            column_for_vertex(model, cut, a)?,
            column_for_vertex(model, cut, b)?,
            column_for_vertex(model, cut, c)?,
        ];
        let (sm, sc) = apply_candidate(model, cut, &map, &roles);
        let sbody = induced_body(&sm, &sc);
        let sverts: Vec<Point2> = (0..3)
            .map(|i| sm.f.add_scaled(&sm.columns[i], &sc.alpha[i].clone().recip()))
            .collect();
        // Clauses: designated pins on the right sides.
        let zero = Rational::zero();
        let one = Rational::one();
        let pins = [
            Point2::new(zero.clone(), zero.clone()),
            Point2::new(one.clone(), zero.clone()),
            Point2::new(zero.clone(), one.clone()),
        ];
        let ok = segment_interior_lattice_points(&sverts[0], &sverts[1]) == vec![pins[0].clone()]
            && segment_interior_lattice_points(&sverts[1], &sverts[2]) == vec![pins[1].clone()]
            && segment_interior_lattice_points(&sverts[2], &sverts[0]) == vec![pins[2].clone()]
            && sverts.iter().all(|v| !v.is_integral());
        if !ok {
            continue;
        }
        return Ok(StandardForm {
            class: BodyClass::T3,
            map,
            column_roles: roles,
            model: sm,
            cut: sc,
            body: sbody,
            w: sverts,
            params: StdParams::default(),
            modified: None,
        });
    }
    Err(ClassifyError::NoStandardizingMapFound)
}

/// Unimodular affine map with `M u = (1,0)`, `M v = (0,1)`, `anchor ->
/// target` (anchor integral).
fn map_from_basis(
    u: &Direction2,
    v: &Direction2,
    anchor: &Point2,
    target: &Point2,
) -> Option<AffineUnimodularMap> {
    if !u.is_integral() || !v.is_integral() {
        return None;
    }
    let (ux, uy) = (u.x.to_integer(), u.y.to_integer());
    let (vx, vy) = (v.x.to_integer(), v.y.to_integer());
    let det = &ux * &vy - &uy * &vx;
    if det.magnitude() != BigInt::one().magnitude() {
        return None;
    }
    // M = [u v]^{-1}
    let m = [
        [&vy / &det, -&vx / &det],
        [-&uy / &det, &ux / &det],
    ];
    let map0 = AffineUnimodularMap::from_bigint(m, [BigInt::zero(), BigInt::zero()]).ok()?;
    let img = map0.apply_point(anchor);
    if !img.is_integral() || !target.is_integral() {
        return None;
    }
    let w = [
        target.x.to_integer() - img.x.to_integer(),
        target.y.to_integer() - img.y.to_integer(),
    ];
    Some(AffineUnimodularMap { m: map0.m, w })
}

fn standardize_q1(
    model: &TwoRowModel,
    cut: &CutIneq,
    body: &ConvexBody2,
) -> Result<StandardForm, ClassifyError> {
    let verts = body.vertices();
    if verts.len() != 4 || model.k() != 4 {
        return Err(ClassifyError::ClassMismatch);
    }
    // Identify the empty side; the multi side is two steps away from it.
    // Standard labels: w1=(0,2), w2=(1+d,1-d), w3=(gamma,0), w4=(0,0); in
    // this order the sides are: w1w2 (on x+y=2), w2w3 (empty), w3w4 (holds
    // (1,0)), w4w1 (multi, on x=0).
    let n = 4;
    for start in 0..n {
        for dirn in [1usize, n - 1] {
            let idx = |i: usize| (start + dirn * i) % n;
            let w1 = &verts[idx(0)];
            let w2 = &verts[idx(1)];
            let w3 = &verts[idx(2)];
            let w4 = &verts[idx(3)];
            if !segment_interior_lattice_points(w2, w3).is_empty() {
                continue;
            }
            if !w4.is_integral() || !w1.is_integral() {
                continue;
            }
            let multi = segment_lattice_points(w4, w1);
            if multi.len() != 3 {
                continue;
            }
            let p34 = match &segment_interior_lattice_points(w3, w4)[..] {
                [p] => p.clone(),
                _ => continue,
            };
            // M: (w1 - w4)/2 -> (0,1), p34 - w4 -> (1,0), w4 -> (0,0).
            let half = w1.sub(w4).scale(&crate::num::rat(1, 2));
            let u = p34.sub(w4);
            let Some(map) = map_from_basis(&u, &half, w4, &Point2::new(Rational::zero(), Rational::zero()))
            else {
                continue;
            };
            let roles = vec![
                column_for_vertex(model, cut, w1)?,
                column_for_vertex(model, cut, w2)?,
                column_for_vertex(model, cut, w3)?,
                column_for_vertex(model, cut, w4)?,
            ];
            let (sm, sc) = apply_candidate(model, cut, &map, &roles);
            if let Some(sf) = check_q1_clauses(&map, roles, sm, sc) {
                return Ok(sf);
            }
        }
    }
    Err(ClassifyError::NoStandardizingMapFound)
}

fn check_q1_clauses(
    map: &AffineUnimodularMap,
    roles: Vec<usize>,
    sm: TwoRowModel,
    sc: CutIneq,
) -> Option<StandardForm> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let w: Vec<Point2> = (0..4)
        .map(|i| sm.f.add_scaled(&sm.columns[i], &sc.alpha[i].clone().recip()))
        .collect();
    if w[0] != Point2::new(Rational::zero(), two.clone()) {
        return None;
    }
    if w[3] != Point2::new(Rational::zero(), Rational::zero()) {
        return None;
    }
    // w2 = (1+delta, 1-delta), 0 < delta < 1.
    if &w[1].x + &w[1].y != two {
        return None;
    }
    let delta = &w[1].x - &one;
    if !delta.is_positive() || delta >= one {
        return None;
    }
    // w3 = (gamma, 0), 1 < gamma < 2.
    if !w[2].y.is_zero() {
        return None;
    }
    let gamma = w[2].x.clone();
    if gamma <= one || gamma >= two {
        return None;
    }
    let mut model = sm.clone();
    let mut cut = sc.clone();
    let mut reasons: Vec<String> = Vec::new();
    // Ray weakening 1: force r2_y < 0 by moving w2 down the line x+y=2.
    if !model.columns[1].y.is_negative() {
        let mu = &model.f.y / &two;
        let target = Point2::new(&two - &mu, mu.clone());
        let d = target.sub(&model.f);
        model.columns[1] = d;
        cut.alpha[1] = Rational::one();
        reasons.push("redirect r2 to keep r2_y < 0".to_string());
    }
    // Ray weakening 2: force r3_x >= -r3_y, i.e. gamma >= f1 + f2, by moving
    // w3 right along the axis.
    let sum = &model.f.x + &model.f.y;
    if gamma < sum {
        let new_gamma = (&sum + &two) / &two;
        let target = Point2::new(new_gamma, Rational::zero());
        let d = target.sub(&model.f);
        model.columns[2] = d;
        cut.alpha[2] = Rational::one();
        reasons.push("move w3 right so the ray meets x+y=2".to_string());
    }
    let modified = if reasons.is_empty() {
        None
    } else {
        let mbody = induced_body(&model, &cut);
        let sbody = induced_body(&sm, &sc);
        if !mbody.is_lattice_free() || !mbody.contains_body(&sbody) {
            return None;
        }
        Some(ModifiedInstance {
            model,
            cut,
            reason: reasons.join("; "),
        })
    };
    let body = induced_body(&sm, &sc);
    Some(StandardForm {
        class: BodyClass::Q1,
        map: map.clone(),
        column_roles: roles,
        model: sm,
        cut: sc,
        body,
        w,
        params: StdParams {
            delta: Some(delta),
            eps: None,
            g: None,
            gamma: Some(gamma),
            apex: None,
        },
        modified,
    })
}

fn standardize_q2(
    model: &TwoRowModel,
    cut: &CutIneq,
    body: &ConvexBody2,
) -> Result<StandardForm, ClassifyError> {
    let verts = body.vertices();
    if verts.len() != 4 || model.k() != 4 {
        return Err(ClassifyError::ClassMismatch);
    }
    let n = 4;
    let zero = Rational::zero();
    let one = Rational::one();
    for start in 0..n {
        for dirn in [1usize, n - 1] {
            let idx = |i: usize| (start + dirn * i) % n;
            let w: Vec<&Point2> = (0..4).map(|i| &verts[idx(i)]).collect();
            // Side pins, one per side: side i is (w[i], w[i+1]).
            let mut pins = Vec::new();
            let mut ok = true;
            for i in 0..4 {
                match &segment_interior_lattice_points(w[i], w[(i + 1) % 4])[..] {
                    [p] => pins.push(p.clone()),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            // Targets: side w1w2 -> (0,1), w2w3 -> (1,1), w3w4 -> (1,0),
            // w4w1 -> (0,0). Basis: pins[0]-pins[3] -> (0,1), pins[1]-pins[0]
            // -> (1,0).
            let v = pins[0].sub(&pins[3]);
            let u = pins[1].sub(&pins[0]);
            let Some(map) = map_from_basis(&u, &v, &pins[3], &Point2::new(zero.clone(), zero.clone()))
            else {
                continue;
            };
            let roles = vec![
                column_for_vertex(model, cut, w[0])?,
                column_for_vertex(model, cut, w[1])?,
                column_for_vertex(model, cut, w[2])?,
                column_for_vertex(model, cut, w[3])?,
            ];
            let (sm, sc) = apply_candidate(model, cut, &map, &roles);
            // Clauses: pins landed on the unit cell and 0 < f1 < 1.
            let sw: Vec<Point2> = (0..4)
                .map(|i| sm.f.add_scaled(&sm.columns[i], &sc.alpha[i].clone().recip()))
                .collect();
            let want = [
                Point2::new(zero.clone(), one.clone()),
                Point2::new(one.clone(), one.clone()),
                Point2::new(one.clone(), zero.clone()),
                Point2::new(zero.clone(), zero.clone()),
            ];
            let mut good = true;
            for i in 0..4 {
                if segment_interior_lattice_points(&sw[i], &sw[(i + 1) % 4])
                    != vec![want[i].clone()]
                {
                    good = false;
                    break;
                }
            }
            if !good {
                continue;
            }
            if !sm.f.x.is_positive() || sm.f.x >= one {
                continue;
            }
            let sbody = induced_body(&sm, &sc);
            return Ok(StandardForm {
                class: BodyClass::Q2,
                map,
                column_roles: roles,
                model: sm,
                cut: sc,
                body: sbody,
                w: sw,
                params: StdParams::default(),
                modified: None,
            });
        }
    }
    Err(ClassifyError::NoStandardizingMapFound)
}

/// For a Q1 body: the triangle obtained by removing the empty side and
/// extending its neighbors, when the extensions meet. The Q1 is a subset; if
/// the triangle is lattice-free and of class T2A the synthesizer can route
/// through the Shape lemma.
pub fn q1_extension_triangle(body: &ConvexBody2) -> Option<ConvexBody2> {
    let verts = body.vertices();
    if verts.len() != 4 {
        return None;
    }
    let n = 4;
    let empty = (0..4).find(|&i| {
        segment_interior_lattice_points(&verts[i], &verts[(i + 1) % n]).is_empty()
            && segment_lattice_points(&verts[i], &verts[(i + 1) % n]).is_empty()
    })?;
    // Sides adjacent to the empty side (a, b): extend (a-1, a) and (b, b+1).
    let a = empty;
    let b = (empty + 1) % n;
    let prev = (a + n - 1) % n;
    let next = (b + 1) % n;
    let d1 = verts[a].sub(&verts[prev]);
    let d2 = verts[b].sub(&verts[next]);
    let e = line_line_intersection(&verts[prev], &d1, &verts[next], &d2)?;
    // The intersection must lie beyond both endpoints for containment.
    let t1 = {
        let w = e.sub(&verts[prev]);
        if !w.parallel(&d1) {
            return None;
        }
        if !d1.x.is_zero() {
            &w.x / &d1.x
        } else {
            &w.y / &d1.y
        }
    };
    if t1 < Rational::one() {
        return None;
    }
    let tri = ConvexBody2::polygon(vec![verts[prev].clone(), e, verts[next].clone()]);
    if !tri.contains_body(body) {
        return None;
    }
    Some(tri)
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

    #[test]
    fn classify_t1() {
        let b = ConvexBody2::polygon(vec![pt(0, 0), pt(2, 0), pt(0, 2)]);
        assert_eq!(classify_body(&b, &ptr(1, 2, 1, 2)).unwrap(), BodyClass::T1);
    }

    #[test]
    fn classify_t2b_example() {
        let b = ConvexBody2::polygon(vec![pt(0, 0), ptr(3, 2, 1, 2), pt(0, 2)]);
        assert_eq!(classify_body(&b, &ptr(1, 2, 1, 2)).unwrap(), BodyClass::T2B);
    }

    #[test]
    fn classify_split_subset() {
        // 1 <= x1 + 2 x2 <= 2.
        let d = dir(2, -1); // direction of the lines
        let b = ConvexBody2::from_points_dirs(
            vec![pt(1, 0), pt(2, 0)],
            vec![d.clone(), d.neg()],
        );
        assert_eq!(
            classify_body(&b, &ptr(3, 2, 1, 10)).unwrap(),
            BodyClass::SplitSubset
        );
    }

    #[test]
    fn classify_t2a_example() {
        let b = ConvexBody2::polygon(vec![ptr(-1, 2, 0, 1), ptr(3, 2, 0, 1), ptr(1, 2, 2, 1)]);
        assert_eq!(classify_body(&b, &ptr(1, 2, 3, 2)).unwrap(), BodyClass::T2A);
    }

    #[test]
    fn classify_t3_example() {
        // Frozen T3: vertices (-1,3/2), (4/7,-6/7), (6/5,2/5).
        let b = ConvexBody2::polygon(vec![
            ptr(-1, 1, 3, 2),
            ptr(4, 7, -6, 7),
            ptr(6, 5, 2, 5),
        ]);
        assert_eq!(
            classify_body(&b, &ptr(4, 7, -1, 14)).unwrap(),
            BodyClass::T3
        );
    }

    #[test]
    fn classify_q2_example() {
        let b = ConvexBody2::polygon(vec![
            ptr(-3, 7, 1, 7),
            ptr(1, 7, 9, 7),
            ptr(10, 7, 6, 7),
            ptr(6, 7, -2, 7),
        ]);
        assert_eq!(classify_body(&b, &ptr(1, 2, 1, 2)).unwrap(), BodyClass::Q2);
    }

    #[test]
    fn classify_q1_example() {
        // Standard Q1 with delta = 1/4, gamma = 3/2.
        let b = ConvexBody2::polygon(vec![pt(0, 2), ptr(5, 4, 3, 4), ptr(3, 2, 0, 1), pt(0, 0)]);
        assert_eq!(classify_body(&b, &ptr(1, 2, 1, 2)).unwrap(), BodyClass::Q1);
    }

    #[test]
    fn classify_rejects_non_lattice_free() {
        let b = ConvexBody2::polygon(vec![pt(0, 0), pt(3, 0), pt(0, 3)]);
        assert_eq!(
            classify_body(&b, &pt(1, 1)).unwrap_err(),
            ClassifyError::NotLatticeFree
        );
    }

    #[test]
    fn standardize_worked_example_t2b() {
        // The worked T2B standardization: f=(1/2,1/2), columns
        // {(-1/2,3/2),(1,0),(-1/2,-1/2)}, goal (1,1,1).
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr(-1, 2, 3, 2), dir(1, 0), dirr(-1, 2, -1, 2)],
        )
        .unwrap();
        let cut = CutIneq::new(vec![rat_int(1); 3]).unwrap();
        let sf = standardize(&m, &cut, BodyClass::T2B).unwrap();
        assert_eq!(
            sf.map,
            AffineUnimodularMap::new([[0, -1], [1, 0]], [1, 0]).unwrap()
        );
        assert_eq!(sf.w[0], pt(-1, 0));
        assert_eq!(sf.w[1], pt(1, 0));
        assert_eq!(sf.w[2], ptr(1, 2, 3, 2));
        assert_eq!(sf.model.f, ptr(1, 2, 1, 2));
        // Roles: old column 1 -> r1, old column 3 -> r2, old column 2 -> r3.
        assert_eq!(sf.column_roles, vec![0, 2, 1]);
        assert_eq!(sf.model.columns[0], dirr(-3, 2, -1, 2));
        assert_eq!(sf.model.columns[1], dirr(1, 2, -1, 2));
        assert_eq!(sf.model.columns[2], dir(0, 1));
        assert_eq!(sf.params.delta, Some(rat_int(1)));
        assert_eq!(sf.params.g, Some(1.into()));
        assert_eq!(sf.params.eps, Some(rat_int(0)));
        // Sub-case r3_x = 0.
        assert!(sf.model.columns[2].x.is_zero());
        assert!(sf.modified.is_none());
    }

    #[test]
    fn standardize_identity_when_already_standard() {
        // Already standard T2B built directly in standard position.
        let f = ptr(1, 2, 1, 2);
        let m = TwoRowModel::new(
            f,
            vec![dirr(-3, 2, -1, 2), dirr(1, 2, -1, 2), dir(0, 1)],
        )
        .unwrap();
        let cut = CutIneq::new(vec![rat_int(1), rat_int(1), rat_int(1)]).unwrap();
        let sf = standardize(&m, &cut, BodyClass::T2B).unwrap();
        assert_eq!(sf.map, AffineUnimodularMap::identity());
        assert_eq!(sf.column_roles, vec![0, 1, 2]);
    }

    #[test]
    fn standardize_t2a_identity_qualifies() {
        let m = TwoRowModel::new(
            ptr(1, 2, 3, 2),
            vec![dirr(-1, 1, -3, 2), dirr(1, 1, -3, 2), dir(0, 1)],
        )
        .unwrap();
        let cut = CutIneq::new(vec![rat_int(1), rat_int(1), rat_int(2)]).unwrap();
        let sf = standardize(&m, &cut, BodyClass::T2A).unwrap();
        assert_eq!(sf.map, AffineUnimodularMap::identity());
        assert_eq!(sf.params.delta, Some(rat(1, 2)));
        assert_eq!(sf.w[0], ptr(-1, 2, 0, 1));
    }

    #[test]
    fn classification_invariant_under_unimodular_maps() {
        let bodies = vec![
            (
                ConvexBody2::polygon(vec![pt(0, 0), pt(2, 0), pt(0, 2)]),
                ptr(1, 2, 1, 2),
                BodyClass::T1,
            ),
            (
                ConvexBody2::polygon(vec![pt(0, 0), ptr(3, 2, 1, 2), pt(0, 2)]),
                ptr(1, 2, 1, 2),
                BodyClass::T2B,
            ),
            (
                ConvexBody2::polygon(vec![
                    ptr(-3, 7, 1, 7),
                    ptr(1, 7, 9, 7),
                    ptr(10, 7, 6, 7),
                    ptr(6, 7, -2, 7),
                ]),
                ptr(1, 2, 1, 2),
                BodyClass::Q2,
            ),
        ];
        let maps = [
            AffineUnimodularMap::new([[1, 3], [0, 1]], [2, -1]).unwrap(),
            AffineUnimodularMap::new([[0, 1], [-1, 0]], [-1, 4]).unwrap(),
            AffineUnimodularMap::new([[2, -3], [1, -1]], [0, 7]).unwrap(),
        ];
        for (b, f, class) in bodies {
            assert_eq!(classify_body(&b, &f).unwrap(), class);
            for m in &maps {
                let img = m.apply_body(&b);
                let fi = m.apply_point(&f);
                assert_eq!(classify_body(&img, &fi).unwrap(), class);
            }
        }
    }

    #[test]
    fn q1_extension_is_t1_for_standard_form() {
        let b = ConvexBody2::polygon(vec![pt(0, 2), ptr(5, 4, 3, 4), ptr(3, 2, 0, 1), pt(0, 0)]);
        let tri = q1_extension_triangle(&b).unwrap();
        assert_eq!(tri.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
        assert!(tri.contains_body(&b));
    }
}
