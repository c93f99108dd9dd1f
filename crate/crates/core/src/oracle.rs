//! Ground-truth polyhedral computations at desk scale: exact disjunctive
//! hulls, bounded-coefficient split-closure rounds, and rank probes.

use crate::engine::{CutSystem, HalfspaceSide, SplitDisjunction};
use crate::error::EngineError;
use crate::hpoly::{canonical_ray, HPolyhedron, MAX_DIM};
use crate::linalg::{dot, null_space};
use crate::model::{CutIneq, TwoRowModel};
use crate::num::{ceil_int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Facets of `conv(Q^<= u Q^>=)` split into normalized cuts (`sum a s >= 1`)
/// and the trivial remainder.
#[derive(Clone, Debug, Default)]
pub struct HullFacets {
    pub cuts: Vec<CutIneq>,
    /// Facets with nonpositive right-hand side (implied by `s >= 0` for
    /// valid-cut purposes) in raw `a . s >= b` form.
    pub trivial: Vec<(Vec<Rational>, Rational)>,
    pub le_empty: bool,
    pub ge_empty: bool,
}

/// Exact facet description of the disjunctive hull in s-space.
pub fn conv_union_cuts(
    system: &CutSystem,
    disj: &SplitDisjunction,
) -> Result<HullFacets, EngineError> {
    let k = system.model.k();
    if k > MAX_DIM {
        return Err(EngineError::DimensionTooLarge);
    }
    let le = system.piece_polyhedron(disj, HalfspaceSide::Le)?;
    let ge = system.piece_polyhedron(disj, HalfspaceSide::Ge)?;
    let vle = le.vertices();
    let vge = ge.vertices();
    let mut out = HullFacets {
        le_empty: vle.is_empty(),
        ge_empty: vge.is_empty(),
        ..Default::default()
    };
    if vle.is_empty() && vge.is_empty() {
        return Ok(out);
    }
    if vle.is_empty() || vge.is_empty() {
        // Hull equals the nonempty piece, already an H-polyhedron: its rows
        // are a valid (possibly redundant) description.
        let piece = if vle.is_empty() { &ge } else { &le };
        for (a, b) in &piece.rows {
            push_facet(&mut out, a, b);
        }
        return Ok(out);
    }
    // Both pieces nonempty: gather generators and enumerate candidate facet
    // hyperplanes: every row hyperplane of either piece, plus hyperplanes
    // spanned by generator subsets mixing the two pieces.
    #[derive(Clone)]
    enum Gen {
        Point(Vec<Rational>),
        Ray(Vec<Rational>),
    }
    let mut gens1: Vec<Gen> = vle.iter().map(|(s, _)| Gen::Point(s.clone())).collect();
    for r in le.extreme_rays() {
        gens1.push(Gen::Ray(r));
    }
    let mut gens2: Vec<Gen> = vge.iter().map(|(s, _)| Gen::Point(s.clone())).collect();
    for r in ge.extreme_rays() {
        gens2.push(Gen::Ray(r));
    }
    let all: Vec<Gen> = gens1.iter().cloned().chain(gens2.iter().cloned()).collect();
    let homog = |g: &Gen| -> Vec<Rational> {
        // (s, 1) for points, (d, 0) for rays, as rows of the incidence system
        // for (a, -b).
        match g {
            Gen::Point(s) => {
                let mut v = s.clone();
                v.push(Rational::one());
                v
            }
            Gen::Ray(d) => {
                let mut v = d.clone();
                v.push(Rational::zero());
                v
            }
        }
    };
    let mut candidates: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for p in [&le, &ge] {
        for (a, b) in &p.rows {
            candidates.push((a.clone(), b.clone()));
        }
    }
    // Cross subsets of size k with at least one generator from each piece.
    let n1 = gens1.len();
    let n2 = gens2.len();
    let idx_all: Vec<usize> = (0..n1 + n2).collect();
    for combo in k_subsets(&idx_all, k) {
        let from1 = combo.iter().any(|&i| i < n1);
        let from2 = combo.iter().any(|&i| i >= n1);
        if !from1 || !from2 {
            continue;
        }
        let rows: Vec<Vec<Rational>> = combo.iter().map(|&i| homog(&all[i])).collect();
        let ns = null_space(&rows, k + 1);
        if ns.len() != 1 {
            continue;
        }
        let a: Vec<Rational> = ns[0][..k].to_vec();
        if a.iter().all(|v| v.is_zero()) {
            continue;
        }
        let b = -ns[0][k].clone();
        candidates.push((a, b));
    }
    // Keep candidates supporting all generators.
    let mut seen: Vec<(Vec<Rational>, Rational)> = Vec::new();
    'cand: for (a, b) in candidates {
        let mut oriented: Option<bool> = None; // true: keep as is; false: flip
        let mut touched = false;
        for g in &all {
            let (val, cmp) = match g {
                Gen::Point(s) => (dot(&a, s), b.clone()),
                Gen::Ray(d) => (dot(&a, d), Rational::zero()),
            };
            if val == cmp {
                if matches!(g, Gen::Point(_)) {
                    touched = true;
                }
                continue;
            }
            let side = val > cmp;
            match oriented {
                None => oriented = Some(side),
                Some(o) if o == side => {}
                _ => continue 'cand,
            }
        }
        if !touched {
            continue;
        }
        let (a, b) = match oriented {
            Some(false) => (a.iter().map(|v| -v.clone()).collect(), -b),
            _ => (a, b),
        };
        let key = canonical_row(&a, &b);
        if !seen.contains(&key) {
            seen.push(key.clone());
            push_facet(&mut out, &key.0, &key.1);
        }
    }
    Ok(out)
}

fn canonical_row(a: &[Rational], b: &Rational) -> (Vec<Rational>, Rational) {
    // Scale so entries are coprime integers (including b).
    let mut all = a.to_vec();
    all.push(b.clone());
    let scaled = canonical_ray(&all);
    let b2 = scaled.last().unwrap().clone();
    (scaled[..scaled.len() - 1].to_vec(), b2)
}

fn push_facet(out: &mut HullFacets, a: &[Rational], b: &Rational) {
    if b.is_positive() {
        if let Ok(cut) = CutIneq::from_rhs(a.to_vec(), b.clone()) {
            if !out.cuts.contains(&cut) {
                out.cuts.push(cut);
            }
            return;
        }
    }
    let row = (a.to_vec(), b.clone());
    if !out.trivial.contains(&row) {
        out.trivial.push(row);
    }
}

fn k_subsets(idx: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = idx.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.iter().map(|&i| idx[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        c[i] += 1;
        for j in (i + 1)..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Bounded split-closure approximation: a pool of cuts valid at the given
/// round, over disjunctions with `max-norm(pi) <= bound` and `pi0` in a
/// window around `pi . f`.
#[derive(Clone, Debug)]
pub struct ClosureApprox {
    pub round: u32,
    pub pool: Vec<CutIneq>,
    pub bound: i64,
    pub window: i64,
}

impl ClosureApprox {
    pub fn initial(bound: i64) -> Self {
        ClosureApprox {
            round: 0,
            pool: Vec::new(),
            bound,
            window: 2,
        }
    }

    pub fn polyhedron(&self, k: usize) -> Result<HPolyhedron, EngineError> {
        let mut p = HPolyhedron::nonneg_orthant(k)?;
        for c in &self.pool {
            p.add_row(c.alpha.clone(), Rational::one());
        }
        Ok(p)
    }

    /// Does the pooled system imply `a . s >= b`?
    pub fn implies_row(&self, k: usize, a: &[Rational], b: &Rational) -> Result<bool, EngineError> {
        let p = self.polyhedron(k)?;
        match p.minimize(a) {
            None => Ok(false),
            Some(m) => Ok(&m >= b),
        }
    }

    pub fn implies(&self, k: usize, cut: &CutIneq) -> Result<bool, EngineError> {
        self.implies_row(k, &cut.alpha, &Rational::one())
    }
}

/// All canonical primitive `pi` with `max-norm <= bound` (one orientation
/// per +-pair).
pub fn primitive_directions(bound: i64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in -bound..=bound {
            if a == 0 && b <= 0 {
                continue;
            }
            if a == 0 && b != 1 && b != -1 {
                // canonical orientation handled below; primitivity next
            }
            let g = BigInt::from(a).gcd(&BigInt::from(b));
            if g != BigInt::one() {
                continue;
            }
            out.push((BigInt::from(a), BigInt::from(b)));
        }
    }
    out
}

/// One split-closure round: add every disjunctive-hull facet over the
/// bounded disjunction family, then prune the pool by exact domination.
pub fn closure_round(
    model: &TwoRowModel,
    approx: &ClosureApprox,
) -> Result<ClosureApprox, EngineError> {
    let k = model.k();
    if k > MAX_DIM {
        return Err(EngineError::DimensionTooLarge);
    }
    let system = CutSystem::with_cuts(model.clone(), approx.pool.clone());
    let mut harvest: Vec<CutIneq> = approx.pool.clone();
    if approx.bound >= 1 {
        for (a, b) in primitive_directions(approx.bound) {
            let pif = Rational::from_integer(a.clone()) * &model.f.x
                + Rational::from_integer(b.clone()) * &model.f.y;
            let w = Rational::from_integer(approx.window.into());
            let lo = ceil_int(&(&pif - &w));
            let hi = &pif + &w;
            let mut pi0 = lo.clone();
            while Rational::from_integer(pi0.clone()) < hi {
                let disj = SplitDisjunction::from_bigint((a.clone(), b.clone()), pi0.clone());
                let facets = conv_union_cuts(&system, &disj)?;
                for c in facets.cuts {
                    if !harvest.contains(&c) {
                        harvest.push(c);
                    }
                }
                pi0 += 1;
            }
        }
    }
    // Prune: keep an irredundant subset, deterministically.
    harvest.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    let mut kept: Vec<CutIneq> = Vec::new();
    for cut in &harvest {
        let trial = ClosureApprox {
            round: 0,
            pool: kept.clone(),
            bound: approx.bound,
            window: approx.window,
        };
        if !trial.implies(k, cut)? {
            kept.push(cut.clone());
        }
    }
    // Backward sweep: drop cuts implied by the rest.
    let mut i = 0;
    while i < kept.len() {
        let mut rest = kept.clone();
        let cut = rest.remove(i);
        let trial = ClosureApprox {
            round: 0,
            pool: rest.clone(),
            bound: approx.bound,
            window: approx.window,
        };
        if trial.implies(k, &cut)? {
            kept = rest;
        } else {
            i += 1;
        }
    }
    Ok(ClosureApprox {
        round: approx.round + 1,
        pool: kept,
        bound: approx.bound,
        window: approx.window,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    FirstValidRound(u32),
    NotWithinN,
}

/// Iterate closure rounds, testing target domination each round.
pub fn rank_probe(
    model: &TwoRowModel,
    target: &CutIneq,
    max_rounds: u32,
    bound: i64,
) -> Result<ProbeOutcome, EngineError> {
    let k = model.k();
    let mut approx = ClosureApprox::initial(bound);
    if approx.implies(k, target)? {
        return Ok(ProbeOutcome::FirstValidRound(0));
    }
    for round in 1..=max_rounds {
        approx = closure_round(model, &approx)?;
        if approx.implies(k, target)? {
            return Ok(ProbeOutcome::FirstValidRound(round));
        }
    }
    Ok(ProbeOutcome::NotWithinN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Direction2, Point2};
    use crate::num::{rat, rat_int};

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
    fn hull_of_x2_disjunction_contains_wedge_cut() {
        // On the three-column example with no retained cuts, the x2
        // disjunction yields (among others) the cut with coefficients
        // (3, 0, 1): the wedge conv{(1/3,1),(0,0)} + cone{(1,0)}.
        let sys = CutSystem::bare(example_model_3col());
        let disj = SplitDisjunction::new(0, 1, 0);
        let facets = conv_union_cuts(&sys, &disj).unwrap();
        let want = CutIneq::new(vec![rat_int(3), rat_int(0), rat_int(1)]).unwrap();
        assert!(facets.cuts.contains(&want), "cuts: {:?}", facets.cuts);
        // Tightness audit: every piece vertex satisfies all facets, each
        // facet tight somewhere.
        for side in [HalfspaceSide::Le, HalfspaceSide::Ge] {
            let piece = crate::engine::enumerate_piece_vertices(&sys, &disj, side).unwrap();
            for v in &piece.vertices {
                for c in &facets.cuts {
                    assert!(c.eval(&v.s) >= rat_int(1));
                }
            }
        }
    }

    #[test]
    fn empty_piece_hull_is_other_piece() {
        // Two-variable case with f2 < 1: the x2 >= 1 side is empty and the
        // goal x2 <= 0 (s-form s1 + s2 >= 1) appears among the facets.
        let m = TwoRowModel::new(
            ptr(1, 2, 1, 2),
            vec![dirr(-1, 2, -1, 2), dirr(1, 2, -1, 2)],
        )
        .unwrap();
        let sys = CutSystem::bare(m);
        let disj = SplitDisjunction::new(0, 1, 0);
        let facets = conv_union_cuts(&sys, &disj).unwrap();
        assert!(facets.ge_empty);
        let goal = CutIneq::new(vec![rat_int(1), rat_int(1)]).unwrap();
        assert!(facets.cuts.contains(&goal));
    }

    #[test]
    fn far_disjunction_adds_nothing() {
        let sys = CutSystem::bare(example_model_3col());
        // pi0 far from f: f's cell untouched; the le piece swallows
        // everything relevant, no pi-crossing cuts with positive rhs beyond
        // the piece rows.
        let disj = SplitDisjunction::new(1, 0, 50);
        let facets = conv_union_cuts(&sys, &disj).unwrap();
        // No facet may cut off any point of P^0 itself; in particular the
        // pool stays implied: every returned cut must be valid, so its
        // induced body must be lattice-free.
        for c in &facets.cuts {
            assert!(crate::model::cut_is_valid(&sys.model, c));
        }
    }

    #[test]
    fn b0_round_is_identity() {
        let m = example_model_3col();
        let approx = ClosureApprox::initial(0);
        let next = closure_round(&m, &approx).unwrap();
        assert_eq!(next.round, 1);
        assert!(next.pool.is_empty());
    }

    #[test]
    fn trivial_row_implied_at_round_zero() {
        let m = example_model_3col();
        let approx = ClosureApprox::initial(1);
        // s1 >= 0 is implied by the ambient orthant.
        assert!(approx
            .implies_row(m.k(), &[rat_int(1), rat_int(0), rat_int(0)], &rat_int(0))
            .unwrap());
    }
}
