//! Certificate synthesis: replay of the constructive split-rank proofs.
//!
//! Each certificate is an ordered list of split-disjunction steps over the
//! instance,每 step retaining previously produced cuts, plus named
//! sub-certificates for reduction-produced cuts. Every step is verified by
//! exact piece-vertex enumeration; nothing is trusted from the construction
//! itself.

use crate::classify::{
    classify_body, q1_extension_triangle, split_container, standardize, BodyClass, StandardForm,
};
use crate::engine::{
    check_cut_after_disjunction, diamond_construct, wedge_construct, CutSystem, SplitDisjunction,
    VerificationRecord,
};
use crate::error::SynthError;
use crate::geom::{
    line_line_intersection, ray_line_intersection, AffineUnimodularMap, ConvexBody2, Direction2,
    Point2,
};
use crate::model::{
    complete_cone, induced_body, lift_column, phi_from_body, reduce_to_vertex_columns, CutIneq,
    TwoRowModel,
};
use crate::num::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct SynthOptions {
    /// Cap on disjunction-sequence iterations; hitting it signals a
    /// contradiction with the convergence lemmas.
    pub iter_cap: u64,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { iter_cap: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutRef {
    Step(usize),
    Sub(String),
}

#[derive(Clone, Debug)]
pub struct CertStep {
    pub disjunction: SplitDisjunction,
    pub entering: Vec<CutRef>,
    pub produced: CutIneq,
    pub record: VerificationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// The final step's produced cut dominates the goal.
    FinalStep,
    /// A named sub-certificate's contributed cut dominates the goal
    /// (projection, lifting, or shape delegation).
    BySub(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubKind {
    /// Same model; the certified cut dominates the contributed cut
    /// componentwise (usually they are equal).
    Plain,
    /// Sub-certificate on a column subset; the contributed cut lifts the
    /// sub-goal back. `general` marks a general (validity-only) lifting,
    /// otherwise coefficients sit on the sub-goal's body boundary.
    Lifting { kept_columns: Vec<usize>, general: bool },
    /// Sub-certificate on the model extended by one column; dropping the
    /// extra coefficient projects onto the contributed cut.
    Projection,
    /// Sub-certificate on a modified model with the same f; the contributed
    /// cut's induced body is contained in the sub-goal's induced body.
    Shape { reason: String },
}

#[derive(Clone, Debug)]
pub struct SubCertificate {
    pub kind: SubKind,
    /// Cut this sub-certificate justifies on the parent model.
    pub contributed: CutIneq,
    pub cert: Certificate,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub model: TwoRowModel,
    pub goal: CutIneq,
    pub steps: Vec<CertStep>,
    pub subs: BTreeMap<String, SubCertificate>,
    pub conclusion: Conclusion,
    pub rank_bound: u32,
}

impl Certificate {
    pub fn compute_rank_bound(&self) -> u32 {
        let mut depth = vec![0u32; self.steps.len()];
        for (i, st) in self.steps.iter().enumerate() {
            let mut d = 0;
            for r in &st.entering {
                let e = match r {
                    CutRef::Step(j) => depth[*j],
                    CutRef::Sub(n) => self.subs[n].cert.rank_bound,
                };
                d = d.max(e);
            }
            depth[i] = d + 1;
        }
        match &self.conclusion {
            Conclusion::FinalStep => depth.last().copied().unwrap_or(0),
            Conclusion::BySub(n) => self.subs[n].cert.rank_bound,
        }
    }

    pub fn final_cut(&self) -> &CutIneq {
        match &self.conclusion {
            Conclusion::FinalStep => &self.steps.last().expect("final step").produced,
            Conclusion::BySub(n) => &self.subs[n].contributed,
        }
    }
}

struct Builder<'a> {
    model: &'a TwoRowModel,
    steps: Vec<CertStep>,
    subs: BTreeMap<String, SubCertificate>,
}

impl<'a> Builder<'a> {
    fn new(model: &'a TwoRowModel) -> Self {
        Builder {
            model,
            steps: Vec::new(),
            subs: BTreeMap::new(),
        }
    }

    fn resolve(&self, refs: &[CutRef]) -> Vec<CutIneq> {
        refs.iter()
            .map(|r| match r {
                CutRef::Step(i) => self.steps[*i].produced.clone(),
                CutRef::Sub(n) => self.subs[n].contributed.clone(),
            })
            .collect()
    }

    fn push_step(
        &mut self,
        disjunction: SplitDisjunction,
        entering: Vec<CutRef>,
        produced: CutIneq,
    ) -> Result<usize, SynthError> {
        let system = CutSystem::with_cuts(self.model.clone(), self.resolve(&entering));
        let record = check_cut_after_disjunction(&system, &disjunction, &produced)?;
        if !record.pass {
            return Err(SynthError::StepVerificationFailed(format!(
                "step {} with disjunction pi=({},{}), pi0={}: witness {:?}",
                self.steps.len(),
                disjunction.pi.0,
                disjunction.pi.1,
                disjunction.pi0,
                record.witness.as_ref().map(|w| &w.x)
            )));
        }
        self.steps.push(CertStep {
            disjunction,
            entering,
            produced,
            record,
        });
        Ok(self.steps.len() - 1)
    }

    fn add_sub(&mut self, name: &str, sub: SubCertificate) {
        self.subs.insert(name.to_string(), sub);
    }

    fn finish(self, goal: CutIneq, conclusion: Conclusion) -> Result<Certificate, SynthError> {
        let ok = match &conclusion {
            Conclusion::FinalStep => self
                .steps
                .last()
                .is_some_and(|s| s.produced.dominates(&goal)),
            Conclusion::BySub(n) => self
                .subs
                .get(n)
                .is_some_and(|s| s.contributed.dominates(&goal)),
        };
        if !ok {
            return Err(SynthError::StepVerificationFailed(
                "final cut does not dominate the goal".to_string(),
            ));
        }
        let mut cert = Certificate {
            model: self.model.clone(),
            goal,
            steps: self.steps,
            subs: self.subs,
            conclusion,
            rank_bound: 0,
        };
        cert.rank_bound = cert.compute_rank_bound();
        Ok(cert)
    }
}

/// `lambda` with `p = f + lambda dir`, when `p` lies on that ray.
fn lambda_on_ray(f: &Point2, dir: &Direction2, p: &Point2) -> Option<Rational> {
    if p == f {
        return Some(Rational::zero());
    }
    let d = p.sub(f);
    if !d.parallel(dir) {
        return None;
    }
    let t = if !dir.x.is_zero() {
        &d.x / &dir.x
    } else {
        &d.y / &dir.y
    };
    if t.is_negative() {
        None
    } else {
        Some(t)
    }
}

fn x_axis_disj() -> SplitDisjunction {
    SplitDisjunction::new(1, 0, 0)
}
fn y_axis_disj() -> SplitDisjunction {
    SplitDisjunction::new(0, 1, 0)
}

/// Candidate final-step disjunctions around f: the unit-grid pair first,
/// then the two diagonals. The degenerate split-wedge instances need a
/// different line than the paper's default.
fn final_step_candidates(f: &Point2) -> Vec<SplitDisjunction> {
    let mut out = vec![x_axis_disj(), y_axis_disj()];
    for (a, b) in [(1i64, 1i64), (1, -1)] {
        let v = Rational::from_integer(a.into()) * &f.x + Rational::from_integer(b.into()) * &f.y;
        if !crate::num::is_integer(&v) {
            out.push(SplitDisjunction::new(a, b, 0).with_pi0(crate::num::floor_int(&v)));
        }
    }
    out
}

/// Crossing of the body boundary with a unit-grid line, different from the
/// designated point.
fn other_crossing(
    body: &ConvexBody2,
    axis: &SplitDisjunction,
    level: i64,
    not: &Point2,
) -> Result<Point2, SynthError> {
    let pi = axis.pi_direction();
    let pts = body.boundary_line_crossings(&pi, &Rational::from_integer(level.into()));
    let filtered: Vec<Point2> = pts.into_iter().filter(|p| p != not).collect();
    match &filtered[..] {
        [p] => Ok(p.clone()),
        _ => Err(SynthError::StepVerificationFailed(format!(
            "expected one boundary crossing differing from the pinned point, got {}",
            filtered.len()
        ))),
    }
}

/// Exact closed-form recursion for the case-1 sequence: from `c` compute the
/// next pair `(d, c')` with `d = (e-1)/(e-c)`, `c' = (a-1)/(a-d)`.
pub fn t2b_recursion_step(
    c: &Rational,
    a: &Rational,
    e: &Rational,
) -> Result<(Rational, Rational), SynthError> {
    let ec = e - c;
    if ec.is_zero() {
        return Err(SynthError::DivisionByZero);
    }
    let d = (e - Rational::one()) / ec;
    let ad = a - &d;
    if ad.is_zero() {
        return Err(SynthError::DivisionByZero);
    }
    let c_next = (a - Rational::one()) / ad;
    Ok((d, c_next))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T2bCase {
    AlternatingLeft,  // case 1: r3_x < 0, 0 < f1 < 1
    AlternatingFlat,  // case 2: r3_x < 0, 0 < f2 < 1
    VerticalApex,     // case 3: r3_x = 0
    AlternatingRight, // case 4: r3_x > 0
}

/// Diagnostics recorded along a T2B run.
#[derive(Clone, Debug, Default)]
pub struct T2bTrace {
    pub case: Option<T2bCase>,
    pub a: Option<Rational>,
    pub e: Option<Rational>,
    pub q1: Option<Rational>,
    /// Case 1/2: first coordinates of the c-points, in order.
    pub c_values: Vec<Rational>,
    /// Case 4: lambda of the u-points, in order u^{[2]}, u^{[3]}, ...
    pub lambda_u: Vec<Rational>,
    /// Case 4: q-point first coordinates, in order q^{[2]}, q^{[4]}, ...
    pub q_values: Vec<Rational>,
    /// Case 4: whether each q-point was produced while still in phase 1.
    pub q_phase1: Vec<bool>,
    /// Case 4 phase-2 gap diagnostics: (measured lambda gap, closed form).
    pub gaps: Vec<(Rational, Rational)>,
}

/// Replay the T2B disjunction sequences on a standardized instance,
/// producing an engine-verified certificate on the standardized model.
pub fn run_t2b(
    std: &StandardForm,
    opts: &SynthOptions,
) -> Result<(Certificate, T2bTrace), SynthError> {
    if std.class != BodyClass::T2B {
        return Err(SynthError::StandardizationMismatch);
    }
    let (model, goal) = std.working_instance();
    let body = induced_body(&model, &goal);
    let verts = body.vertices();
    if verts.len() != 3 {
        return Err(SynthError::StandardizationMismatch);
    }
    let f = model.f.clone();
    let w1 = f.add_scaled(&model.columns[0], &goal.alpha[0].clone().recip());
    let w2 = f.add_scaled(&model.columns[1], &goal.alpha[1].clone().recip());
    let r3x = model.columns[2].x.clone();
    let one = Rational::one();
    let case = if r3x.is_zero() {
        T2bCase::VerticalApex
    } else if r3x.is_negative() {
        if f.x.is_positive() && f.x < one {
            T2bCase::AlternatingLeft
        } else if f.y.is_positive() && f.y < one {
            T2bCase::AlternatingFlat
        } else {
            return Err(SynthError::StandardizationMismatch);
        }
    } else {
        T2bCase::AlternatingRight
    };
    let mut trace = T2bTrace {
        case: Some(case),
        ..Default::default()
    };
    let mut b = Builder::new(&model);
    match case {
        T2bCase::VerticalApex => {
            // Two steps: the x1 disjunction yields the wedge over v1 v2, the
            // x2 disjunction then yields the goal.
            let v1 = ray_grid_crossing(&model, 0, true)?;
            let v2 = ray_grid_crossing(&model, 1, false)?;
            let wedge = ConvexBody2::from_points_dirs(
                vec![v1, v2],
                vec![model.columns[2].clone()],
            );
            let beta1 = phi_from_body(&model, &wedge)?;
            let s0 = b.push_step(x_axis_disj(), vec![], beta1)?;
            b.push_step(y_axis_disj(), vec![CutRef::Step(s0)], goal.clone())?;
            let cert = b.finish(goal.clone(), Conclusion::FinalStep)?;
            return Ok((cert, trace));
        }
        T2bCase::AlternatingLeft | T2bCase::AlternatingFlat => {
            let v3 = ray_grid_crossing(&model, 2, true)?; // (0, a)
            let a = v3.y.clone();
            let e = w2.x.clone();
            let q = other_crossing(&body, &y_axis_disj(), 1, &Point2::new(Rational::zero(), one.clone()))?;
            trace.a = Some(a.clone());
            trace.e = Some(e.clone());
            trace.q1 = Some(q.x.clone());
            let p01 = Point2::new(Rational::zero(), one.clone());
            let p10 = Point2::new(one.clone(), Rational::zero());

            let mut last: usize;
            if case == T2bCase::AlternatingLeft {
                let v1 = ray_grid_crossing(&model, 0, true)?;
                let v2 = ray_grid_crossing(&model, 1, false)?; // at x = 1
                let tri0 = ConvexBody2::polygon(vec![v1.clone(), v2.clone(), v3.clone()]);
                let beta1 = phi_from_body(&model, &tri0)?;
                last = b.push_step(x_axis_disj(), vec![], beta1)?;
            } else {
                // Case 2 initialization: start with the x2 disjunction.
                let wbar3 = ray_y1_crossing(&model, 2)?;
                let tri0 = ConvexBody2::polygon(vec![w1.clone(), w2.clone(), wbar3]);
                let beta1 = phi_from_body(&model, &tri0)?;
                last = b.push_step(y_axis_disj(), vec![], beta1)?;
            }
            let v1 = ray_grid_crossing(&model, 0, true)?;
            for _ in 0..opts.iter_cap {
                // Odd-style step (x2 disjunction): compare the two candidate
                // apexes on ray r3.
                let prev_body = induced_body(&model, &b.steps[last].produced);
                let c_pt = other_crossing(&prev_body, &y_axis_disj(), 1, &p01)?;
                trace.c_values.push(c_pt.x.clone());
                let apex_dir = c_pt.sub(&w2);
                let apex = ray_line_intersection(&f, &model.columns[2], &w2, &apex_dir)
                    .map(|(p, _)| p)
                    .ok_or_else(|| {
                        SynthError::StepVerificationFailed("candidate apex missing".into())
                    })?;
                let lam_apex = lambda_on_ray(&f, &model.columns[2], &apex)
                    .ok_or(SynthError::DivisionByZero)?;
                let lam_w3 = goal.alpha[2].clone().recip();
                if lam_apex >= lam_w3 {
                    b.push_step(y_axis_disj(), vec![CutRef::Step(last)], goal.clone())?;
                    let cert = b.finish(goal.clone(), Conclusion::FinalStep)?;
                    return Ok((cert, trace));
                }
                let tri = ConvexBody2::polygon(vec![w1.clone(), w2.clone(), apex]);
                let beta = phi_from_body(&model, &tri)?;
                last = b.push_step(y_axis_disj(), vec![CutRef::Step(last)], beta)?;

                // Even-style step (x1 disjunction).
                let prev_body = induced_body(&model, &b.steps[last].produced);
                let d_pt = other_crossing(&prev_body, &x_axis_disj(), 1, &p10)?;
                let zdir = d_pt.sub(&v3);
                let z = ray_line_intersection(&f, &model.columns[1], &v3, &zdir)
                    .map(|(p, _)| p)
                    .ok_or_else(|| {
                        SynthError::StepVerificationFailed("even-step vertex missing".into())
                    })?;
                let tri = ConvexBody2::polygon(vec![v1.clone(), v3.clone(), z]);
                let beta = phi_from_body(&model, &tri)?;
                last = b.push_step(x_axis_disj(), vec![CutRef::Step(last)], beta)?;
            }
            Err(SynthError::NonTermination(opts.iter_cap))
        }
        T2bCase::AlternatingRight => run_t2b_case4(std, &model, &goal, opts, &mut trace, b),
    }
}

/// Ray crossing with `x = 0` (left = true) or `x = 1`.
fn ray_grid_crossing(
    model: &TwoRowModel,
    col: usize,
    left: bool,
) -> Result<Point2, SynthError> {
    let c = if left { Rational::zero() } else { Rational::one() };
    let base = Point2::new(c, Rational::zero());
    let vertical = Direction2::new(Rational::zero(), Rational::one()).unwrap();
    ray_line_intersection(&model.f, &model.columns[col], &base, &vertical)
        .map(|(p, _)| p)
        .ok_or_else(|| SynthError::StepVerificationFailed("ray misses the grid line".into()))
}

fn ray_y1_crossing(model: &TwoRowModel, col: usize) -> Result<Point2, SynthError> {
    let base = Point2::new(Rational::zero(), Rational::one());
    let horiz = Direction2::new(Rational::one(), Rational::zero()).unwrap();
    ray_line_intersection(&model.f, &model.columns[col], &base, &horiz)
        .map(|(p, _)| p)
        .ok_or_else(|| SynthError::StepVerificationFailed("ray misses y = 1".into()))
}

fn run_t2b_case4(
    _std: &StandardForm,
    model: &TwoRowModel,
    goal: &CutIneq,
    opts: &SynthOptions,
    trace: &mut T2bTrace,
    mut b: Builder,
) -> Result<(Certificate, T2bTrace), SynthError> {
    let f = model.f.clone();
    let one = Rational::one();
    let p01 = Point2::new(Rational::zero(), one.clone());
    let w1 = f.add_scaled(&model.columns[0], &goal.alpha[0].clone().recip());
    let w3 = f.add_scaled(&model.columns[2], &goal.alpha[2].clone().recip());
    let body = induced_body(model, goal);
    let q = other_crossing(&body, &y_axis_disj(), 1, &p01)?;
    trace.q1 = Some(q.x.clone());
    let v3 = ray_grid_crossing(model, 2, false)?; // ray r3 at x = 1
    let v2 = ray_grid_crossing(model, 1, false).ok(); // may be missing if r2_x = 0
    // z = line(v3, (0,1)) n ray r1.
    let zdir = v3.sub(&p01);
    let z = ray_line_intersection(&f, &model.columns[0], &p01, &zdir)
        .map(|(p, _)| p)
        .ok_or_else(|| SynthError::StepVerificationFailed("z point missing".into()))?;
    // wbar2 = ray r2 n {y = 1}, present when f2 > 1.
    let wbar2 = if f.y > one {
        ray_y1_crossing(model, 1).ok()
    } else {
        None
    };

    // Initialization: two-variable certificate on columns {r1, r3}, lifted
    // by the maximal-then-halved epsilon along r2.
    let sub_model = model.sub_model(&[0, 2]);
    let sub_goal = CutIneq::new(vec![goal.alpha[0].clone(), goal.alpha[2].clone()])?;
    let two_var = rank_two_var(&sub_model, &sub_goal, opts)?;
    let eps_max = crate::model::max_extension_along_ray(
        &f,
        &[w1.clone(), w3.clone()],
        &model.columns[1],
        &find_small_start(&f, &[w1.clone(), w3.clone()], &model.columns[1])?,
    )?;
    let eps = match eps_max {
        Some(t) => t / Rational::from_integer(2.into()),
        None => one.clone(),
    };
    let u2 = f.add_scaled(&model.columns[1], &eps);
    let init_body = ConvexBody2::polygon(vec![w1.clone(), w3.clone(), u2.clone()]);
    let beta2 = phi_from_body(model, &init_body)?;
    b.add_sub(
        "two_var_lift",
        SubCertificate {
            kind: SubKind::Lifting {
                kept_columns: vec![0, 2],
                general: true,
            },
            contributed: beta2.clone(),
            cert: two_var,
        },
    );
    trace.lambda_u.push(eps.clone());

    let mut last_ref = CutRef::Sub("two_var_lift".to_string());
    let mut last_cut = beta2;
    for _ in 0..opts.iter_cap {
        // Step 2j: x1 disjunction.
        let prev_body = induced_body(model, &last_cut);
        let p_pt = other_crossing(&prev_body, &x_axis_disj(), 0, &p01)?;
        // Below-or-on the line z v2 -> termination.
        let terminal = match &v2 {
            Some(v2) => {
                let dline = v2.sub(&z);
                let side_p = dline.cross(&p_pt.sub(&z));
                let side_ref = dline.cross(&p01.sub(&z));
                // (0,1) lies strictly above the line z v2 (it is on the line
                // z v3 above z); p below or on the line means the opposite
                // sign or zero.
                if side_ref.is_zero() {
                    return Err(SynthError::StandardizationMismatch);
                }
                side_p.is_zero() || (side_p.is_positive() != side_ref.is_positive())
            }
            None => false,
        };
        if terminal {
            let v2 = v2.clone().unwrap();
            let term_body = ConvexBody2::polygon(vec![z.clone(), v2, v3.clone()]);
            let beta_term = phi_from_body(model, &term_body)?;
            let s = b.push_step(x_axis_disj(), vec![last_ref.clone()], beta_term)?;
            b.push_step(y_axis_disj(), vec![CutRef::Step(s)], goal.clone())?;
            let cert = b.finish(goal.clone(), Conclusion::FinalStep)?;
            return Ok((cert, trace.clone()));
        }
        // u^{[2j+1]} = line(z, p) n ray r2.
        let udir = p_pt.sub(&z);
        let u_next = ray_line_intersection(&f, &model.columns[1], &z, &udir)
            .map(|(p, _)| p)
            .ok_or_else(|| SynthError::StepVerificationFailed("u point missing".into()))?;
        let lam_u = lambda_on_ray(&f, &model.columns[1], &u_next)
            .ok_or(SynthError::DivisionByZero)?;
        // Phase-2 gap diagnostic (previous u exists by construction).
        if let Some(prev_lam) = trace.lambda_u.last().cloned() {
            if let Some(gap_formula) = case4_gap_formula(model, &z, &w1, &p_pt) {
                let gap = &lam_u - &prev_lam;
                trace.gaps.push((gap, gap_formula));
            }
        }
        trace.lambda_u.push(lam_u.clone());
        let tri = ConvexBody2::polygon(vec![z.clone(), v3.clone(), u_next.clone()]);
        let beta = phi_from_body(model, &tri)?;
        let s = b.push_step(x_axis_disj(), vec![last_ref.clone()], beta.clone())?;
        last_ref = CutRef::Step(s);
        last_cut = beta;

        // Step 2j+1: x2 disjunction.
        let prev_body = induced_body(model, &last_cut);
        let q_pt = other_crossing(&prev_body, &y_axis_disj(), 1, &p01)?;
        trace.q_values.push(q_pt.x.clone());
        trace.q_phase1.push(match &wbar2 {
            Some(w) => {
                let lam_w = lambda_on_ray(&f, &model.columns[1], w).unwrap_or_else(Rational::zero);
                trace.lambda_u.last().unwrap() <= &lam_w
            }
            None => false,
        });
        if q_pt.x >= q.x {
            b.push_step(y_axis_disj(), vec![last_ref.clone()], goal.clone())?;
            let cert = b.finish(goal.clone(), Conclusion::FinalStep)?;
            return Ok((cert, trace.clone()));
        }
        // beta^{[2j+2]} = phi(conv{w1, w3, u'}) with u' = line(w3, q) n r2.
        let udir = q_pt.sub(&w3);
        let u_even = ray_line_intersection(&f, &model.columns[1], &w3, &udir)
            .map(|(p, _)| p)
            .ok_or_else(|| SynthError::StepVerificationFailed("u point missing".into()))?;
        let lam_u = lambda_on_ray(&f, &model.columns[1], &u_even)
            .ok_or(SynthError::DivisionByZero)?;
        trace.lambda_u.push(lam_u);
        let tri = ConvexBody2::polygon(vec![w1.clone(), w3.clone(), u_even]);
        let beta = phi_from_body(model, &tri)?;
        let s = b.push_step(y_axis_disj(), vec![last_ref.clone()], beta.clone())?;
        last_ref = CutRef::Step(s);
        last_cut = beta;
    }
    Err(SynthError::NonTermination(opts.iter_cap))
}

/// Closed-form phase-2 gap: in the frame where the line through `z` parallel
/// to `r2` is the axis, the gap is `eps * ((1 - t*/g)/(1 - eta/g) - 1)` in
/// lambda units along `r2`.
fn case4_gap_formula(
    model: &TwoRowModel,
    z: &Point2,
    w1: &Point2,
    p_pt: &Point2,
) -> Option<Rational> {
    let r2 = &model.columns[1];
    if r2.x.is_zero() {
        return None;
    }
    // g: parameter where the z-parallel line meets {x = 0}.
    let g = -&z.x / &r2.x;
    // t*: parameter where the f-parallel line meets {x = 0}.
    let t_star = -&model.f.x / &r2.x;
    // eta: parameter of the orthogonal projection of p onto the z-line.
    let d = p_pt.sub(z);
    let eta = d.dot(r2) / r2.dot(r2);
    // eps: parameter of the intersection of the z-line with line(w1, p).
    let lw = p_pt.sub(w1);
    let hit = line_line_intersection(z, r2, w1, &lw)?;
    let eps = if !r2.x.is_zero() {
        (&hit.x - &z.x) / &r2.x
    } else {
        (&hit.y - &z.y) / &r2.y
    };
    if g.is_zero() {
        return None;
    }
    let denom = Rational::one() - &eta / &g;
    if denom.is_zero() {
        return None;
    }
    let factor = (Rational::one() - &t_star / &g) / denom - Rational::one();
    Some(eps * factor)
}

fn find_small_start(
    f: &Point2,
    fixed: &[Point2],
    dir: &Direction2,
) -> Result<Rational, SynthError> {
    let mut t = Rational::one();
    for _ in 0..80 {
        let mut pts = fixed.to_vec();
        pts.push(f.clone());
        pts.push(f.add_scaled(dir, &t));
        let body = ConvexBody2::polygon(pts);
        if body.dim() == 2 && body.is_lattice_free() {
            return Ok(t);
        }
        t /= Rational::from_integer(2.into());
    }
    Err(SynthError::StandardizationMismatch)
}

/// Prop. 5.1 replay: depth <= 2 certificate for a valid cut on a two-column
/// model whose tight segment carries at least one integer point.
pub fn rank_two_var(
    model: &TwoRowModel,
    goal: &CutIneq,
    _opts: &SynthOptions,
) -> Result<Certificate, SynthError> {
    if model.k() != 2 {
        return Err(SynthError::NotFacet);
    }
    let body = induced_body(model, goal);
    if !body.is_lattice_free() {
        return Err(SynthError::NotValid);
    }
    if goal.alpha.iter().any(|a| a.is_zero()) {
        return Err(SynthError::NotFacet);
    }
    let p1 = model.f.add_scaled(&model.columns[0], &goal.alpha[0].clone().recip());
    let p2 = model.f.add_scaled(&model.columns[1], &goal.alpha[1].clone().recip());
    let ints = crate::geom::segment_lattice_points(&p1, &p2);
    if ints.is_empty() {
        return Err(SynthError::NotFacet);
    }
    let dseg = p2.sub(&p1);
    let (dx, dy) = dseg.primitive();
    use num_integer::Integer;
    let eg = dx.extended_gcd(&dy);
    if !eg.gcd.is_one() {
        return Err(SynthError::NotFacet);
    }
    for p0 in &ints {
        let fd = model.f.sub(p0);
        // Second row: +-perp(d) with f strictly above the tight line.
        let mut row2 = None;
        for s in [(-dy.clone(), dx.clone()), (dy.clone(), -dx.clone())] {
            let h = Rational::from_integer(s.0.clone()) * &fd.x
                + Rational::from_integer(s.1.clone()) * &fd.y;
            if h.is_positive() {
                row2 = Some(s);
                break;
            }
        }
        let Some(row2) = row2 else {
            continue;
        };
        let f2p = Rational::from_integer(row2.0.clone()) * &fd.x
            + Rational::from_integer(row2.1.clone()) * &fd.y;
        for or in [1i64, -1] {
            let u0 = (
                num_bigint::BigInt::from(or) * &eg.x,
                num_bigint::BigInt::from(or) * &eg.y,
            );
            let c0 = Rational::from_integer(u0.0.clone()) * &fd.x
                + Rational::from_integer(u0.1.clone()) * &fd.y;
            for t in -2i64..=2 {
                let tb = num_bigint::BigInt::from(t);
                let row1 = (&u0.0 + &tb * &row2.0, &u0.1 + &tb * &row2.1);
                let Ok(map0) = AffineUnimodularMap::from_bigint(
                    [
                        [row1.0.clone(), row1.1.clone()],
                        [row2.0.clone(), row2.1.clone()],
                    ],
                    [num_bigint::BigInt::from(0), num_bigint::BigInt::from(0)],
                ) else {
                    continue;
                };
                // Translate the anchor to (j, 0) with f1 landing in [0, 1].
                let f1_no_shift = &c0 + Rational::from_integer(tb.clone()) * &f2p;
                let j = -crate::num::floor_int(&f1_no_shift);
                let img = map0.apply_point(p0);
                let map = AffineUnimodularMap {
                    m: map0.m.clone(),
                    w: [&j - img.x.to_integer(), -img.y.to_integer()],
                };
                if let Ok(cert) = two_var_in_standard_coords(model, goal, &map) {
                    return Ok(cert);
                }
            }
        }
    }
    Err(SynthError::NotFacet)
}

fn two_var_in_standard_coords(
    model: &TwoRowModel,
    goal: &CutIneq,
    map: &AffineUnimodularMap,
) -> Result<Certificate, SynthError> {
    let smodel = TwoRowModel {
        f: map.apply_point(&model.f),
        columns: model
            .columns
            .iter()
            .map(|c| map.apply_direction(c))
            .collect(),
    };
    let one = Rational::one();
    if !smodel.f.y.is_positive() || smodel.f.x.is_negative() || smodel.f.x > one {
        return Err(SynthError::NotFacet);
    }
    let mut b = Builder::new(&smodel);
    if smodel.f.y < one {
        b.push_step(y_axis_disj(), vec![], goal.clone())?;
    } else {
        // First disjunction on x1 yields an intermediate bound x2 <= 1 - d.
        let sys = CutSystem::bare(smodel.clone());
        let mut ymax: Option<Rational> = None;
        let mut any = false;
        for side in [
            crate::engine::HalfspaceSide::Le,
            crate::engine::HalfspaceSide::Ge,
        ] {
            let piece = crate::engine::enumerate_piece_vertices(&sys, &x_axis_disj(), side)?;
            for v in &piece.vertices {
                any = true;
                if ymax.as_ref().is_none_or(|m| &v.x.y > m) {
                    ymax = Some(v.x.y.clone());
                }
            }
        }
        if !any {
            return Err(SynthError::NotFacet);
        }
        let ymax = ymax.unwrap();
        if ymax >= one {
            return Err(SynthError::NotFacet);
        }
        // x2 <= 1 - delta with the largest valid delta, capped at 1.
        let top = ymax.max(Rational::zero()); // keep rhs positive: f2 >= 1 > top
        let rhs = &smodel.f.y - &top;
        let coeffs: Vec<Rational> = smodel.columns.iter().map(|c| -c.y.clone()).collect();
        let inter = CutIneq::from_rhs(coeffs, rhs).map_err(SynthError::Model)?;
        let s0 = b.push_step(x_axis_disj(), vec![], inter)?;
        b.push_step(y_axis_disj(), vec![CutRef::Step(s0)], goal.clone())?;
    }
    let cert = b.finish(goal.clone(), Conclusion::FinalStep)?;
    transform_certificate(&cert, map, model)
}

/// Map a certificate produced in standard coordinates back to the original
/// instance: models transform through the inverse map, disjunctions pull
/// back, cut coefficients are invariant. Every step is re-verified.
pub fn transform_certificate(
    cert: &Certificate,
    orig_to_std: &AffineUnimodularMap,
    orig_model: &TwoRowModel,
) -> Result<Certificate, SynthError> {
    let inv = orig_to_std.inverse();
    let back_model = TwoRowModel {
        f: inv.apply_point(&cert.model.f),
        columns: cert
            .model
            .columns
            .iter()
            .map(|c| inv.apply_direction(c))
            .collect(),
    };
    debug_assert_eq!(back_model.f, orig_model.f);
    let mut b = Builder::new(orig_model);
    for (name, sub) in &cert.subs {
        let sub_back = transform_sub(sub, orig_to_std, orig_model)?;
        b.add_sub(name, sub_back);
    }
    for st in &cert.steps {
        let disj = st.disjunction.pull_back(orig_to_std);
        b.push_step(disj, st.entering.clone(), st.produced.clone())?;
    }
    b.finish(cert.goal.clone(), cert.conclusion.clone())
}

fn transform_sub(
    sub: &SubCertificate,
    orig_to_std: &AffineUnimodularMap,
    parent_model: &TwoRowModel,
) -> Result<SubCertificate, SynthError> {
    let inv = orig_to_std.inverse();
    let inner_model = TwoRowModel {
        f: inv.apply_point(&sub.cert.model.f),
        columns: sub
            .cert
            .model
            .columns
            .iter()
            .map(|c| inv.apply_direction(c))
            .collect(),
    };
    // The inner certificate lives in standard coordinates over its own
    // model; pull it back onto the transformed inner model.
    let back = transform_certificate(&sub.cert, orig_to_std, &inner_model)?;
    let _ = parent_model;
    Ok(SubCertificate {
        kind: sub.kind.clone(),
        contributed: sub.contributed.clone(),
        cert: back,
    })
}

/// Permute a certificate's columns: `roles[r]` is the parent-column index
/// playing role r, and the certificate is expressed in role order.
fn unpermute_certificate(
    cert: &Certificate,
    roles: &[usize],
    parent_model: &TwoRowModel,
) -> Result<Certificate, SynthError> {
    let k = parent_model.k();
    let perm_cut = |c: &CutIneq| -> CutIneq {
        let mut alpha = vec![Rational::zero(); k];
        for (r, &orig) in roles.iter().enumerate() {
            alpha[orig] = c.alpha[r].clone();
        }
        CutIneq { alpha }
    };
    let mut b = Builder::new(parent_model);
    for (name, sub) in &cert.subs {
        // Sub-certificates on the same (permuted) model columns: rebuild on
        // parent columns when the models match columnwise; otherwise keep the
        // sub as its own instance (Shape-style).
        let new_sub = match &sub.kind {
            SubKind::Plain => {
                let inner = unpermute_certificate(&sub.cert, roles, parent_model)?;
                SubCertificate {
                    kind: SubKind::Plain,
                    contributed: perm_cut(&sub.contributed),
                    cert: inner,
                }
            }
            SubKind::Lifting {
                kept_columns,
                general,
            } => {
                let mapped: Vec<usize> = kept_columns.iter().map(|&r| roles[r]).collect();
                // Reorder kept columns ascending, permuting the inner
                // certificate accordingly.
                let mut order: Vec<usize> = (0..mapped.len()).collect();
                order.sort_by_key(|&i| mapped[i]);
                let sorted: Vec<usize> = order.iter().map(|&i| mapped[i]).collect();
                let inner_roles: Vec<usize> = order.clone();
                let inner_parent = parent_model.sub_model(&sorted);
                let inner = unpermute_certificate(&sub.cert, &inner_roles, &inner_parent)?;
                SubCertificate {
                    kind: SubKind::Lifting {
                        kept_columns: sorted,
                        general: *general,
                    },
                    contributed: perm_cut(&sub.contributed),
                    cert: inner,
                }
            }
            SubKind::Shape { .. } | SubKind::Projection => SubCertificate {
                kind: sub.kind.clone(),
                contributed: perm_cut(&sub.contributed),
                cert: sub.cert.clone(),
            },
        };
        b.add_sub(name, new_sub);
    }
    for st in &cert.steps {
        b.push_step(
            st.disjunction.clone(),
            st.entering.clone(),
            perm_cut(&st.produced),
        )?;
    }
    b.finish(perm_cut(&cert.goal), cert.conclusion.clone())
}

/// Prop. 6.9 replay: wedge reduction for standardized T2A.
fn run_t2a(
    std: &StandardForm,
    opts: &SynthOptions,
    depth: usize,
) -> Result<Certificate, SynthError> {
    let (model, goal) = std.working_instance();
    let one = Rational::one();
    let wedge = wedge_construct(
        &model,
        2,
        &Point2::new(Rational::zero(), one.clone()),
        &Point2::new(one.clone(), one.clone()),
        Some(&goal.alpha[2].clone().recip()),
    )?;
    let wedge_class = classify_body(&wedge, &model.f)?;
    if wedge_class != BodyClass::SplitSubset && wedge_class != BodyClass::T2B {
        return Err(SynthError::WedgeNotReducible);
    }
    let beta = phi_from_body(&model, &wedge)?;
    let sub = certify_inner(&model, &beta, opts, depth + 1)?;
    let mut b = Builder::new(&model);
    b.add_sub(
        "wedge",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: beta,
            cert: sub,
        },
    );
    b.push_step(
        y_axis_disj(),
        vec![CutRef::Sub("wedge".to_string())],
        goal.clone(),
    )?;
    b.finish(goal, Conclusion::FinalStep)
}

/// Prop. 6.10 replay: two wedges retained together for standardized T3.
fn run_t3(
    std: &StandardForm,
    opts: &SynthOptions,
    depth: usize,
) -> Result<Certificate, SynthError> {
    let (model, goal) = std.working_instance();
    let zero = Rational::zero();
    let one = Rational::one();
    let beta_a_body = wedge_construct(
        &model,
        0,
        &Point2::new(zero.clone(), zero.clone()),
        &Point2::new(zero.clone(), one.clone()),
        Some(&goal.alpha[0].clone().recip()),
    )?;
    let beta_b_body = wedge_construct(
        &model,
        1,
        &Point2::new(zero.clone(), zero.clone()),
        &Point2::new(one.clone(), zero.clone()),
        Some(&goal.alpha[1].clone().recip()),
    )?;
    for body in [&beta_a_body, &beta_b_body] {
        let cls = classify_body(body, &model.f)?;
        if cls != BodyClass::SplitSubset && cls != BodyClass::T2B {
            return Err(SynthError::WedgeNotReducible);
        }
    }
    let beta_a = phi_from_body(&model, &beta_a_body)?;
    let beta_b = phi_from_body(&model, &beta_b_body)?;
    let cert_a = certify_inner(&model, &beta_a, opts, depth + 1)?;
    let cert_b = certify_inner(&model, &beta_b, opts, depth + 1)?;
    let mut b = Builder::new(&model);
    b.add_sub(
        "beta_a",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: beta_a,
            cert: cert_a,
        },
    );
    b.add_sub(
        "beta_b",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: beta_b,
            cert: cert_b,
        },
    );
    push_final_step(
        &mut b,
        &model.f.clone(),
        vec![
            CutRef::Sub("beta_a".to_string()),
            CutRef::Sub("beta_b".to_string()),
        ],
        goal.clone(),
    )?;
    b.finish(goal, Conclusion::FinalStep)
}

/// Push the goal-producing step, trying the candidate disjunctions in order
/// until one verifies.
fn push_final_step(
    b: &mut Builder,
    f: &Point2,
    entering: Vec<CutRef>,
    goal: CutIneq,
) -> Result<usize, SynthError> {
    let mut last_err = SynthError::StandardizationMismatch;
    for disj in final_step_candidates(f) {
        match b.push_step(disj, entering.clone(), goal.clone()) {
            Ok(i) => return Ok(i),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Prop. 7.1 replay (the proper-subset-of-T1 route) for standardized Q1.
fn run_q1(
    std: &StandardForm,
    opts: &SynthOptions,
    depth: usize,
) -> Result<Certificate, SynthError> {
    let (model, goal) = std.working_instance();
    let zero = Rational::zero();
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let f = model.f.clone();
    // x2 point: ray r2 n {y = 0}.
    let x2 = ray_line_intersection(
        &f,
        &model.columns[1],
        &Point2::new(zero.clone(), zero.clone()),
        &Direction2::new(one.clone(), zero.clone()).unwrap(),
    )
    .map(|(p, _)| p)
    .ok_or(SynthError::StandardizationMismatch)?;
    // p1: line(x2, (1,1)) n ray r1.
    let d = Point2::new(one.clone(), one.clone()).sub(&x2);
    let p1 = ray_line_intersection(&f, &model.columns[0], &x2, &d)
        .map(|(p, _)| p)
        .ok_or(SynthError::StandardizationMismatch)?;
    if p1.is_integral() {
        return Err(SynthError::StandardizationMismatch);
    }
    let u_body = ConvexBody2::polygon(vec![
        p1.clone(),
        x2.clone(),
        Point2::new(zero.clone(), zero.clone()),
    ]);
    if !u_body.is_lattice_free() {
        return Err(SynthError::StandardizationMismatch);
    }
    // x3: ray r3 n {x + y = 2}.
    let x3 = ray_line_intersection(
        &f,
        &model.columns[2],
        &Point2::new(two.clone(), zero.clone()),
        &Direction2::new(-one.clone(), one.clone()).unwrap(),
    )
    .map(|(p, _)| p)
    .ok_or(SynthError::StandardizationMismatch)?;
    // p4: line(x3, (1,0)) n ray r4.
    let d = Point2::new(one.clone(), zero.clone()).sub(&x3);
    let p4 = ray_line_intersection(&f, &model.columns[3], &x3, &d)
        .map(|(p, _)| p)
        .ok_or(SynthError::StandardizationMismatch)?;
    if p4.is_integral() {
        return Err(SynthError::StandardizationMismatch);
    }
    let v_body = ConvexBody2::polygon(vec![Point2::new(zero.clone(), two.clone()), x3, p4]);
    if !v_body.is_lattice_free() {
        return Err(SynthError::StandardizationMismatch);
    }
    let beta1 = phi_from_body(&model, &u_body)?;
    let beta2 = phi_from_body(&model, &v_body)?;
    let cert_u = certify_inner(&model, &beta1, opts, depth + 1)?;
    let cert_v = certify_inner(&model, &beta2, opts, depth + 1)?;
    let mut b = Builder::new(&model);
    b.add_sub(
        "cut_U",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: beta1,
            cert: cert_u,
        },
    );
    b.add_sub(
        "cut_V",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: beta2,
            cert: cert_v,
        },
    );
    push_final_step(
        &mut b,
        &model.f.clone(),
        vec![
            CutRef::Sub("cut_U".to_string()),
            CutRef::Sub("cut_V".to_string()),
        ],
        goal.clone(),
    )?;
    b.finish(goal, Conclusion::FinalStep)
}

/// Prop. 7.2 replay: two weakened diamonds for standardized Q2.
fn run_q2(
    std: &StandardForm,
    opts: &SynthOptions,
    depth: usize,
) -> Result<Certificate, SynthError> {
    let (model, goal) = std.working_instance();
    let f = model.f.clone();
    let qa = diamond_construct(&model, 1)?;
    let qb = diamond_construct(&model, 3)?;
    let beta_a = phi_from_body(&model, &qa)?;
    let beta_b = phi_from_body(&model, &qb)?;
    // Diagonal w1 w3 crossings with the unit lines.
    let w1 = f.add_scaled(&model.columns[0], &goal.alpha[0].clone().recip());
    let w3 = f.add_scaled(&model.columns[2], &goal.alpha[2].clone().recip());
    let diag = w3.sub(&w1);
    let vertical = Direction2::new(Rational::zero(), Rational::one()).unwrap();
    let y0 = line_line_intersection(&w1, &diag, &Point2::new(Rational::zero(), Rational::zero()), &vertical)
        .ok_or(SynthError::StandardizationMismatch)?;
    let y1 = line_line_intersection(&w1, &diag, &Point2::new(Rational::one(), Rational::zero()), &vertical)
        .ok_or(SynthError::StandardizationMismatch)?;
    let gamma_a = weaken_diamond(&model, &beta_a, &goal, 0, 2, &y0)?;
    let gamma_b = weaken_diamond(&model, &beta_b, &goal, 2, 0, &y1)?;
    if !beta_a.dominates(&gamma_a) || !beta_b.dominates(&gamma_b) {
        return Err(SynthError::DiamondNotReducible);
    }
    // The diamonds are the classifiable objects; the weakened cuts enter the
    // final step and are justified by domination.
    let cert_a = certify_inner(&model, &beta_a, opts, depth + 1)?;
    let cert_b = certify_inner(&model, &beta_b, opts, depth + 1)?;
    let mut b = Builder::new(&model);
    b.add_sub(
        "gamma_a",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: gamma_a,
            cert: cert_a,
        },
    );
    b.add_sub(
        "gamma_b",
        SubCertificate {
            kind: SubKind::Plain,
            contributed: gamma_b,
            cert: cert_b,
        },
    );
    push_final_step(
        &mut b,
        &model.f.clone(),
        vec![
            CutRef::Sub("gamma_a".to_string()),
            CutRef::Sub("gamma_b".to_string()),
        ],
        goal.clone(),
    )?;
    b.finish(goal, Conclusion::FinalStep)
}

/// Replace the diamond's coefficient on `weaken_role` so the scaled point
/// moves to the line through the anchor vertex (`anchor_role`) and the
/// diagonal crossing `y`. Degenerate geometry (line containing the ray, or
/// a candidate outside the weakening direction) falls back to the goal
/// vertex or to no weakening; the final step is engine-verified either way.
fn weaken_diamond(
    model: &TwoRowModel,
    beta: &CutIneq,
    goal: &CutIneq,
    anchor_role: usize,
    weaken_role: usize,
    y: &Point2,
) -> Result<CutIneq, SynthError> {
    let f = &model.f;
    let ray = &model.columns[weaken_role];
    let dir = if beta.alpha[anchor_role].is_zero() {
        // Unbounded diamond: the anchor recedes along its ray; use the line
        // through y parallel to it.
        model.columns[anchor_role].clone()
    } else {
        let anchor = f.add_scaled(
            &model.columns[anchor_role],
            &beta.alpha[anchor_role].clone().recip(),
        );
        y.sub(&anchor)
    };
    let candidate = if dir.parallel(ray) {
        // The weakening line contains or parallels the ray (f on the
        // diagonal): the construction degenerates, keep beta.
        None
    } else {
        ray_line_intersection(f, ray, y, &dir)
            .map(|(p, _)| p)
            .and_then(|q| lambda_on_ray(f, ray, &q))
            .filter(|l| l.is_positive())
            .map(|l| l.recip())
    };
    let _ = goal;
    let mut alpha = beta.alpha.clone();
    match candidate {
        Some(c) if c >= beta.alpha[weaken_role] => alpha[weaken_role] = c,
        _ => {} // keep beta's coefficient: no weakening
    }
    Ok(CutIneq { alpha })
}

/// Classification dispatch on a full-cone instance whose columns may need
/// vertex reduction first. Produces a certificate on `model`.
pub fn certify_inner(
    model: &TwoRowModel,
    cut: &CutIneq,
    opts: &SynthOptions,
    depth: usize,
) -> Result<Certificate, SynthError> {
    if depth > 24 {
        return Err(SynthError::StandardizationMismatch);
    }
    let body = induced_body(model, cut);
    if !body.is_lattice_free() {
        return Err(SynthError::NotValid);
    }
    // Split-subset cuts have depth 1.
    if let Some(disj) = split_container(&body) {
        let mut b = Builder::new(model);
        b.push_step(disj, vec![], cut.clone())?;
        return b.finish(cut.clone(), Conclusion::FinalStep);
    }
    if !model.cone_is_full() {
        return Err(SynthError::Model(crate::error::ModelError::ConeNotFull));
    }
    // Reduce to vertex columns.
    let (sub_model, sub_cut, keep) = reduce_to_vertex_columns(model, cut)?;
    if keep.len() < model.k() {
        let inner = certify_inner(&sub_model, &sub_cut, opts, depth + 1)?;
        // Lift the reduced goal back: boundary coefficients on the dropped
        // columns dominate the original.
        let mut lifted_model = sub_model.clone();
        let mut lifted_cut = sub_cut.clone();
        for (i, col) in model.columns.iter().enumerate() {
            if keep.contains(&i) {
                continue;
            }
            let (m2, c2) = lift_column(&lifted_model, &lifted_cut, col)?;
            lifted_model = m2;
            lifted_cut = c2;
        }
        // Reorder coefficients onto the original column order.
        let mut order: Vec<usize> = keep.clone();
        order.extend((0..model.k()).filter(|i| !keep.contains(i)));
        let mut alpha = vec![Rational::zero(); model.k()];
        for (pos, &orig) in order.iter().enumerate() {
            alpha[orig] = lifted_cut.alpha[pos].clone();
        }
        let contributed = CutIneq { alpha };
        let mut b = Builder::new(model);
        b.add_sub(
            "reduced",
            SubCertificate {
                kind: SubKind::Lifting {
                    kept_columns: keep,
                    general: false,
                },
                contributed,
                cert: inner,
            },
        );
        return b.finish(cut.clone(), Conclusion::BySub("reduced".to_string()));
    }
    let class = classify_body(&body, &model.f)?;
    match class {
        BodyClass::T1 => Err(SynthError::NotFiniteRank),
        BodyClass::NonFacetOther => Err(SynthError::UnsupportedClass),
        BodyClass::SplitSubset => unreachable!("handled above"),
        BodyClass::Q1 => {
            // Shape route through a containing T2A triangle when available.
            if let Some(tri) = q1_extension_triangle(&body) {
                if tri.is_lattice_free()
                    && classify_body(&tri, &model.f) == Ok(BodyClass::T2A)
                {
                    let columns: Vec<Direction2> =
                        tri.vertices().iter().map(|v| v.sub(&model.f)).collect();
                    let tri_model = TwoRowModel {
                        f: model.f.clone(),
                        columns,
                    };
                    let ones = CutIneq::new(vec![Rational::one(); 3])?;
                    let inner = certify_inner(&tri_model, &ones, opts, depth + 1)?;
                    let mut b = Builder::new(model);
                    b.add_sub(
                        "triangle_t2a",
                        SubCertificate {
                            kind: SubKind::Shape {
                                reason: "Q1 inside a T2A triangle".to_string(),
                            },
                            contributed: cut.clone(),
                            cert: inner,
                        },
                    );
                    return b.finish(cut.clone(), Conclusion::BySub("triangle_t2a".to_string()));
                }
            }
            let std = standardize(model, cut, class)?;
            let cert_std = run_q1(&std, opts, depth)?;
            finish_standardized(model, cut, &std, cert_std)
        }
        BodyClass::T2B => {
            let std = standardize(model, cut, class)?;
            let (cert_std, _) = run_t2b(&std, opts)?;
            finish_standardized(model, cut, &std, cert_std)
        }
        BodyClass::T2A => {
            let std = standardize(model, cut, class)?;
            let cert_std = run_t2a(&std, opts, depth)?;
            finish_standardized(model, cut, &std, cert_std)
        }
        BodyClass::T3 => {
            let std = standardize(model, cut, class)?;
            let cert_std = run_t3(&std, opts, depth)?;
            finish_standardized(model, cut, &std, cert_std)
        }
        BodyClass::Q2 => {
            let std = standardize(model, cut, class)?;
            let cert_std = run_q2(&std, opts, depth)?;
            finish_standardized(model, cut, &std, cert_std)
        }
    }
}

/// Pull a standardized-coordinates certificate back onto the original
/// instance, re-verifying every step; wrap enlarged/weakened instances in a
/// Shape node.
fn finish_standardized(
    model: &TwoRowModel,
    cut: &CutIneq,
    std: &StandardForm,
    cert_std: Certificate,
) -> Result<Certificate, SynthError> {
    match &std.modified {
        None => {
            // cert_std is on the standardized model (columns in role order):
            // pull back through the map, then undo the role permutation.
            let role_model = model.sub_model(&std.column_roles);
            let back = transform_certificate(&cert_std, &std.map, &role_model)?;
            unpermute_certificate(&back, &std.column_roles, model)
        }
        Some(m) => {
            // The certificate lives on the modified instance; bring it to
            // original coordinates as its own model and bind by containment.
            let inv = std.map.inverse();
            let mod_model_back = TwoRowModel {
                f: inv.apply_point(&m.model.f),
                columns: m
                    .model
                    .columns
                    .iter()
                    .map(|c| inv.apply_direction(c))
                    .collect(),
            };
            let back = transform_certificate(&cert_std, &std.map, &mod_model_back)?;
            let sub_body = induced_body(&back.model, &back.goal);
            let own_body = induced_body(model, cut);
            if !sub_body.contains_body(&own_body) {
                return Err(SynthError::StepVerificationFailed(
                    "shape containment failed".to_string(),
                ));
            }
            let mut b = Builder::new(model);
            b.add_sub(
                "shape",
                SubCertificate {
                    kind: SubKind::Shape {
                        reason: m.reason.clone(),
                    },
                    contributed: cut.clone(),
                    cert: back,
                },
            );
            b.finish(cut.clone(), Conclusion::BySub("shape".to_string()))
        }
    }
}

/// Full pipeline: validity check, split shortcut, cone completion,
/// vertex-column reduction, classification, standardized replay, pull-back.
pub fn synthesize(
    model: &TwoRowModel,
    goal: &CutIneq,
    opts: &SynthOptions,
) -> Result<Certificate, SynthError> {
    let body = induced_body(model, goal);
    if !body.is_lattice_free() {
        return Err(SynthError::NotValid);
    }
    if let Some(disj) = split_container(&body) {
        let mut b = Builder::new(model);
        b.push_step(disj, vec![], goal.clone())?;
        return b.finish(goal.clone(), Conclusion::FinalStep);
    }
    if !model.cone_is_full() {
        if model.cone_dim() < 2 {
            return Err(SynthError::UnsupportedClass);
        }
        let probe = completion_probe(model);
        let done = complete_cone(model, goal, &probe)?;
        let inner = synthesize(&done.model, &done.cut, opts)?;
        let mut b = Builder::new(model);
        b.add_sub(
            "completed",
            SubCertificate {
                kind: SubKind::Projection,
                contributed: goal.clone(),
                cert: inner,
            },
        );
        return b.finish(goal.clone(), Conclusion::BySub("completed".to_string()));
    }
    certify_inner(model, goal, opts, 0)
}

/// A direction completing a pointed or halfplane cone to all of R^2.
fn completion_probe(model: &TwoRowModel) -> Direction2 {
    let prims: Vec<Direction2> = model
        .columns
        .iter()
        .map(|c| c.primitive_oriented())
        .collect();
    // Halfplane cone (contains a line): leave through the inward normal.
    let has_line = prims
        .iter()
        .enumerate()
        .any(|(i, d)| {
            prims
                .iter()
                .skip(i + 1)
                .any(|e| d.parallel(e) && d.dot(e).is_negative())
        });
    if has_line {
        for c in &prims {
            for n in [c.perp(), c.perp().neg()] {
                if prims.iter().all(|d| !n.dot(d).is_negative()) {
                    return n.neg();
                }
            }
        }
    }
    // Pointed cone: the negated generator sum is interior to the antipodal
    // cone, so it completes the span.
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for c in &prims {
        sx += &c.x;
        sy += &c.y;
    }
    Direction2::new(-sx, -sy).expect("pointed cone has nonzero generator sum")
}

/// Verify a certificate structurally and re-run every engine check.
pub fn verify_certificate_struct(cert: &Certificate) -> Result<(), String> {
    for (name, sub) in &cert.subs {
        verify_certificate_struct(&sub.cert)?;
        match &sub.kind {
            SubKind::Plain => {
                if sub.cert.model != cert.model {
                    return Err(format!("sub {name}: model mismatch"));
                }
                // The certified goal must imply the contributed cut.
                if !sub.cert.goal.dominates(&sub.contributed) {
                    return Err(format!(
                        "sub {name}: certified cut does not dominate the contributed cut"
                    ));
                }
            }
            SubKind::Lifting {
                kept_columns,
                general,
            } => {
                let expect = cert.model.sub_model(kept_columns);
                if sub.cert.model != expect {
                    return Err(format!("sub {name}: lifted sub-model mismatch"));
                }
                for (pos, &i) in kept_columns.iter().enumerate() {
                    if sub.contributed.alpha[i] != sub.cert.goal.alpha[pos] {
                        return Err(format!("sub {name}: kept coefficient changed"));
                    }
                }
                if !crate::model::cut_is_valid(&cert.model, &sub.contributed) {
                    return Err(format!("sub {name}: lifted cut not valid"));
                }
                if !general {
                    // Boundary lifting: recompute each dropped coefficient.
                    let sub_body = induced_body(&sub.cert.model, &sub.cert.goal);
                    for (i, col) in cert.model.columns.iter().enumerate() {
                        if kept_columns.contains(&i) {
                            continue;
                        }
                        let want = match sub_body
                            .ray_boundary_intersection(&cert.model.f, col)
                            .map_err(|e| format!("sub {name}: {e}"))?
                        {
                            None => Rational::zero(),
                            Some((_, l)) => l,
                        };
                        if sub.contributed.alpha[i] != want {
                            return Err(format!("sub {name}: lifted coefficient off boundary"));
                        }
                    }
                }
            }
            SubKind::Projection => {
                let inner = &sub.cert.model;
                if inner.k() != cert.model.k() + 1
                    || inner.f != cert.model.f
                    || inner.columns[..cert.model.k()] != cert.model.columns[..]
                {
                    return Err(format!("sub {name}: projection model mismatch"));
                }
                if sub.contributed.alpha[..] != sub.cert.goal.alpha[..cert.model.k()] {
                    return Err(format!("sub {name}: projection coefficients mismatch"));
                }
            }
            SubKind::Shape { .. } => {
                if sub.cert.model.f != cert.model.f {
                    return Err(format!("sub {name}: shape sub-model must share f"));
                }
                if !sub.cert.model.cone_is_full() {
                    return Err(format!("sub {name}: shape sub-model cone not full"));
                }
                let own = induced_body(&cert.model, &sub.contributed);
                let theirs = induced_body(&sub.cert.model, &sub.cert.goal);
                if !theirs.contains_body(&own) {
                    return Err(format!("sub {name}: shape containment fails"));
                }
            }
        }
    }
    // Replay steps.
    let mut produced: Vec<CutIneq> = Vec::new();
    for (i, st) in cert.steps.iter().enumerate() {
        let mut retained = Vec::new();
        for r in &st.entering {
            match r {
                CutRef::Step(j) => {
                    if *j >= i {
                        return Err(format!("step {i}: forward reference"));
                    }
                    retained.push(produced[*j].clone());
                }
                CutRef::Sub(n) => match cert.subs.get(n) {
                    Some(s) => retained.push(s.contributed.clone()),
                    None => return Err(format!("step {i}: unknown sub {n}")),
                },
            }
        }
        let system = CutSystem::with_cuts(cert.model.clone(), retained);
        let rec = check_cut_after_disjunction(&system, &st.disjunction, &st.produced)
            .map_err(|e| format!("step {i}: {e}"))?;
        if !rec.pass {
            return Err(format!(
                "step {i}: produced cut fails verification (witness {:?})",
                rec.witness.map(|w| w.x)
            ));
        }
        produced.push(st.produced.clone());
    }
    let ok = match &cert.conclusion {
        Conclusion::FinalStep => produced
            .last()
            .is_some_and(|c| c.dominates(&cert.goal)),
        Conclusion::BySub(n) => cert
            .subs
            .get(n)
            .is_some_and(|s| s.contributed.dominates(&cert.goal)),
    };
    if !ok {
        return Err("conclusion does not dominate the goal".to_string());
    }
    if cert.rank_bound != cert.compute_rank_bound() {
        return Err("claimed rank bound differs from the step tree depth".to_string());
    }
    Ok(())
}
