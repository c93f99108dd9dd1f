//! Shared fixtures and seeded random generators for the integration suites.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitrank::classify::{classify_body, BodyClass};
use splitrank::geom::{AffineUnimodularMap, ConvexBody2, Direction2, Point2, PointLocation};
use splitrank::model::{induced_body, CutIneq, TwoRowModel};
use splitrank::num::{rat, rat_int, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(x: i64, y: i64) -> Point2 {
    Point2::new(rat_int(x), rat_int(y))
}

pub fn ptr(xn: i64, xd: i64, yn: i64, yd: i64) -> Point2 {
    Point2::new(rat(xn, xd), rat(yn, yd))
}

pub fn dir(x: i64, y: i64) -> Direction2 {
    Direction2::new(rat_int(x), rat_int(y)).unwrap()
}

/// Random rational in the open interval (lo, hi) with denominator <= 32.
pub fn rand_rat_in(r: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    loop {
        let den: i64 = r.gen_range(2..=32);
        let span = hi - lo;
        let num: i64 = r.gen_range(1..den);
        let q = lo + span * rat(num, den);
        if &q > lo && &q < hi {
            return q;
        }
    }
}

/// The running example: f=(1/2,1/2), three columns, goal s1+s2+s3 >= 1.
pub fn example_3col() -> (TwoRowModel, CutIneq) {
    let model = TwoRowModel::new(
        ptr(1, 2, 1, 2),
        vec![
            Direction2::new(rat(-1, 2), rat(3, 2)).unwrap(),
            dir(1, 0),
            Direction2::new(rat(-1, 2), rat(-1, 2)).unwrap(),
        ],
    )
    .unwrap();
    let goal = CutIneq::new(vec![rat_int(1); 3]).unwrap();
    (model, goal)
}

/// The four-column T1 example with goal s1+s2+s3+s4 >= 1.
pub fn example_4col_t1() -> (TwoRowModel, CutIneq) {
    let model = TwoRowModel::new(
        ptr(1, 2, 1, 2),
        vec![
            Direction2::new(rat(-1, 2), rat(3, 2)).unwrap(),
            dir(1, 0),
            Direction2::new(rat(3, 2), rat(-1, 2)).unwrap(),
            Direction2::new(rat(-1, 2), rat(-1, 2)).unwrap(),
        ],
    )
    .unwrap();
    let goal = CutIneq::new(vec![rat_int(1); 4]).unwrap();
    (model, goal)
}

/// Instance from the vertices of a lattice-free body and an interior f: one
/// column per vertex, coefficients 1.
pub fn instance_from_vertices(f: Point2, verts: &[Point2]) -> (TwoRowModel, CutIneq) {
    let columns: Vec<Direction2> = verts.iter().map(|v| v.sub(&f)).collect();
    let k = columns.len();
    let model = TwoRowModel::new(f, columns).unwrap();
    let goal = CutIneq::new(vec![rat_int(1); k]).unwrap();
    (model, goal)
}

/// Random standard T2B instance of the requested sequence case:
/// `apex_right = false` gives case 1 (r3_x < 0), true gives case 4.
pub fn random_standard_t2b(r: &mut ChaCha8Rng, apex_right: bool) -> (TwoRowModel, CutIneq) {
    loop {
        // Base: w1 = (-delta, 0), w2 = (e, 0) with e > 1.
        let delta = rand_rat_in(r, &rat_int(0), &rat_int(1));
        let e = rand_rat_in(r, &rat(5, 4), &rat_int(3));
        // Apex on the line from w1 through (0,1), above y = 1.
        let t = rand_rat_in(r, &rat(21, 20), &rat_int(2));
        // w3 = w1 + t (delta, 1) = (delta (t-1), t)
        let w3 = Point2::new(&delta * (&t - rat_int(1)), t.clone());
        if !w3.x.is_positive() || w3.x >= rat_int(1) {
            continue;
        }
        let body = ConvexBody2::polygon(vec![
            Point2::new(-delta.clone(), rat_int(0)),
            Point2::new(e.clone(), rat_int(0)),
            w3.clone(),
        ]);
        if !body.is_lattice_free() {
            continue;
        }
        // f interior with the requested apex side; keep f away from the
        // boundary lines of the unit cell.
        let f = if apex_right {
            let fx = rand_rat_in(r, &rat(1, 16), &w3.x);
            let fy = rand_rat_in(r, &rat(1, 8), &w3.y);
            Point2::new(fx, fy)
        } else {
            let fx = rand_rat_in(r, &w3.x, &rat(15, 16));
            let fy = rand_rat_in(r, &rat(1, 8), &rat(7, 8));
            Point2::new(fx, fy)
        };
        if body.locate(&f) != PointLocation::Interior {
            continue;
        }
        if f.x == w3.x {
            continue;
        }
        let (model, goal) = instance_from_vertices(
            f,
            &[
                Point2::new(-delta.clone(), rat_int(0)),
                Point2::new(e.clone(), rat_int(0)),
                w3.clone(),
            ],
        );
        let got = classify_body(&induced_body(&model, &goal), &model.f);
        if got != Ok(BodyClass::T2B) {
            continue;
        }
        // The intended sequence case.
        let r3x = &model.columns[2].x;
        if apex_right != r3x.is_positive() || r3x.is_zero() {
            continue;
        }
        return (model, goal);
    }
}

/// Random unimodular map with entries in [-3, 3], built from elementary
/// shears and swaps so the determinant stays +-1.
pub fn random_unimodular(r: &mut ChaCha8Rng) -> AffineUnimodularMap {
    loop {
        let mut m = AffineUnimodularMap::identity();
        for _ in 0..r.gen_range(1..=4) {
            let s: i64 = r.gen_range(-2..=2);
            let kind: u8 = r.gen_range(0..3);
            let step = match kind {
                0 => AffineUnimodularMap::new([[1, s], [0, 1]], [0, 0]).unwrap(),
                1 => AffineUnimodularMap::new([[1, 0], [s, 1]], [0, 0]).unwrap(),
                _ => AffineUnimodularMap::new([[0, -1], [1, 0]], [0, 0]).unwrap(),
            };
            m = step.compose(&m);
        }
        let w1: i64 = r.gen_range(-2..=2);
        let w2: i64 = r.gen_range(-2..=2);
        let t = AffineUnimodularMap::new([[1, 0], [0, 1]], [w1, w2]).unwrap();
        m = t.compose(&m);
        let small = m
            .m
            .iter()
            .flatten()
            .all(|v| v.magnitude() <= BigInt::from(3).magnitude());
        if small {
            return m;
        }
    }
}

/// Transform a whole instance through a unimodular map.
pub fn map_instance(
    map: &AffineUnimodularMap,
    model: &TwoRowModel,
    cut: &CutIneq,
) -> (TwoRowModel, CutIneq) {
    let f = map.apply_point(&model.f);
    let columns = model
        .columns
        .iter()
        .map(|c| map.apply_direction(c))
        .collect();
    (TwoRowModel::new(f, columns).unwrap(), cut.clone())
}

/// Random nonzero direction with small rational entries.
pub fn random_direction(r: &mut ChaCha8Rng) -> Direction2 {
    loop {
        let xn: i64 = r.gen_range(-6..=6);
        let yn: i64 = r.gen_range(-6..=6);
        let d: i64 = r.gen_range(1..=4);
        if xn == 0 && yn == 0 {
            continue;
        }
        return Direction2::new(rat(xn, d), rat(yn, d)).unwrap();
    }
}

/// Random non-integral f in (-1, 2)^2.
pub fn random_f(r: &mut ChaCha8Rng) -> Point2 {
    loop {
        let p = Point2::new(
            rand_rat_in(r, &rat_int(-1), &rat_int(2)),
            rand_rat_in(r, &rat_int(-1), &rat_int(2)),
        );
        if !p.is_integral() {
            return p;
        }
    }
}

/// Random valid cut for the model: rejection-sample small coefficient
/// vectors until the induced body is lattice-free.
pub fn random_valid_cut(r: &mut ChaCha8Rng, model: &TwoRowModel) -> Option<CutIneq> {
    for _ in 0..200 {
        let alpha: Vec<Rational> = (0..model.k())
            .map(|_| {
                let n: i64 = r.gen_range(1..=6);
                let d: i64 = r.gen_range(1..=3);
                rat(n, d)
            })
            .collect();
        let cut = CutIneq::new(alpha).unwrap();
        if induced_body(model, &cut).is_lattice_free() {
            return Some(cut);
        }
    }
    None
}
