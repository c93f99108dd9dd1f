//! Property tests for the exact substrate.

use proptest::prelude::*;
use splitrank::geom::{segment_lattice_points, ConvexBody2, Direction2, Point2};
use splitrank::model::{minimal_representation, TwoRowModel};
use splitrank::num::{fmt_rat, parse_rat, Rational};
use num_bigint::BigInt;

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..60).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    /// parse(format(q)) = q for all canonical rationals.
    #[test]
    fn rational_round_trip(q in arb_rat()) {
        prop_assert_eq!(parse_rat(&fmt_rat(&q)).unwrap(), q);
    }

    /// Body canonicalization ignores generator order and duplicates.
    #[test]
    fn hull_order_independent(pts in proptest::collection::vec((arb_rat(), arb_rat()), 3..7), seed in 0u64..1000) {
        let points: Vec<Point2> = pts.iter().map(|(x, y)| Point2::new(x.clone(), y.clone())).collect();
        let a = ConvexBody2::polygon(points.clone());
        let mut shuffled = points.clone();
        // Deterministic pseudo-shuffle.
        let n = shuffled.len();
        for i in 0..n {
            let j = ((seed as usize) + i * 7) % n;
            shuffled.swap(i, j);
        }
        shuffled.push(points[0].clone());
        let b = ConvexBody2::polygon(shuffled);
        prop_assert_eq!(a.vertices(), b.vertices());
    }

    /// Segment lattice counting agrees with a brute-force box scan.
    #[test]
    fn segment_lattice_points_match_scan(
        ax in -8i64..8, ay in -8i64..8, bx in -8i64..8, by in -8i64..8, d in 1i64..4
    ) {
        let p = Point2::new(Rational::new(ax.into(), d.into()), Rational::new(ay.into(), d.into()));
        let q = Point2::new(Rational::new(bx.into(), d.into()), Rational::new(by.into(), d.into()));
        let got = segment_lattice_points(&p, &q);
        // brute force
        let mut want = Vec::new();
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                let z = Point2::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()));
                // z on segment [p, q]: collinear and within the box.
                let u = Direction2::new(&q.x - &p.x, &q.y - &p.y);
                let on = match u {
                    Err(_) => z == p,
                    Ok(u) => {
                        let w = Direction2::new(&z.x - &p.x, &z.y - &p.y);
                        match w {
                            Err(_) => true,
                            Ok(w) => {
                                if !u.cross(&w).is_integer() || u.cross(&w) != Rational::from_integer(0.into()) {
                                    false
                                } else {
                                    let t = if u.x != Rational::from_integer(0.into()) {
                                        &w.x / &u.x
                                    } else {
                                        &w.y / &u.y
                                    };
                                    t >= Rational::from_integer(0.into()) && t <= Rational::from_integer(1.into())
                                }
                            }
                        }
                    }
                };
                if on {
                    want.push(z);
                }
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        prop_assert_eq!(got_sorted, want);
    }

    /// Minimal representations reconstruct their target point.
    #[test]
    fn minimal_rep_reconstructs(
        fx in 1i64..10, fy in 1i64..10,
        tx in -6i64..6, ty in -6i64..6
    ) {
        let f = Point2::new(Rational::new(fx.into(), 11.into()), Rational::new(fy.into(), 11.into()));
        let model = TwoRowModel::new(
            f,
            vec![
                Direction2::new(Rational::from_integer((-1).into()), Rational::from_integer(2.into())).unwrap(),
                Direction2::new(Rational::from_integer(1.into()), Rational::from_integer(0.into())).unwrap(),
                Direction2::new(Rational::from_integer((-1).into()), Rational::from_integer((-2).into())).unwrap(),
            ],
        ).unwrap();
        let x = Point2::new(Rational::from_integer(tx.into()), Rational::from_integer(ty.into()));
        if let Ok(reps) = minimal_representation(&model, &x) {
            for rep in reps {
                prop_assert!(rep.entries.len() <= 2);
                let s = rep.to_dense(model.k());
                prop_assert_eq!(model.point_of(&s), x.clone());
            }
        }
    }
}
