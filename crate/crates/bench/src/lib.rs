//! Shared fixtures for the criterion benchmarks.

use splitrank::geom::{Direction2, Point2};
use splitrank::model::{CutIneq, TwoRowModel};
use splitrank::num::rat;

/// The running three-column instance with goal s1 + s2 + s3 >= 1.
pub fn example_instance() -> (TwoRowModel, CutIneq) {
    let model = TwoRowModel::new(
        Point2::new(rat(1, 2), rat(1, 2)),
        vec![
            Direction2::new(rat(-1, 2), rat(3, 2)).unwrap(),
            Direction2::new(rat(1, 1), rat(0, 1)).unwrap(),
            Direction2::new(rat(-1, 2), rat(-1, 2)).unwrap(),
        ],
    )
    .unwrap();
    let goal = CutIneq::new(vec![rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
    (model, goal)
}

/// A case-1 standard T2B that takes a couple of alternating steps.
pub fn slow_t2b_instance() -> (TwoRowModel, CutIneq) {
    let f = Point2::new(rat(1, 2), rat(1, 2));
    let w1 = Point2::new(rat(-1, 1), rat(0, 1));
    let w2 = Point2::new(rat(3, 1), rat(0, 1));
    let w3 = Point2::new(rat(1, 4), rat(5, 4));
    let model = TwoRowModel::new(
        f.clone(),
        vec![w1.sub(&f), w2.sub(&f), w3.sub(&f)],
    )
    .unwrap();
    let goal = CutIneq::new(vec![rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
    (model, goal)
}
