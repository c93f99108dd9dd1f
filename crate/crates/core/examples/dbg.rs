use splitrank::num::{rat, rat_int, fmt_rat};
use splitrank::geom::{Point2, Direction2};
use splitrank::model::{TwoRowModel, CutIneq, induced_body, phi_from_body};
use splitrank::classify::{classify_body, standardize, BodyClass, q1_extension_triangle};
use splitrank::engine::diamond_construct;
use splitrank::synth::{synthesize, SynthOptions};

fn main() {
    let f = Point2::new(rat(1,2), rat(1,2));
    let verts = [
        Point2::new(rat(-5,16), rat(1,16)),
        Point2::new(rat(1,13), rat(16,13)),
        Point2::new(rat(15,11), rat(10,11)),
        Point2::new(rat(25,27), rat(-5,27)),
    ];
    let columns: Vec<Direction2> = verts.iter().map(|v| v.sub(&f)).collect();
    let m = TwoRowModel::new(f, columns).unwrap();
    let goal = CutIneq::new(vec![rat_int(1); 4]).unwrap();
    let body = induced_body(&m, &goal);
    println!("class: {:?}", classify_body(&body, &m.f));
    let std = standardize(&m, &goal, BodyClass::Q2).unwrap();
    let (wm, wc) = std.working_instance();
    println!("std f = ({}, {})", fmt_rat(&wm.f.x), fmt_rat(&wm.f.y));
    for side in [1usize, 3] {
        match diamond_construct(&wm, side) {
            Ok(b) => {
                println!("diamond {side}: bounded={} class={:?}", b.is_bounded(), classify_body(&b, &wm.f));
                let beta = phi_from_body(&wm, &b).unwrap();
                println!("  beta: {:?}", beta.alpha.iter().map(fmt_rat).collect::<Vec<_>>());
                let ind = induced_body(&wm, &beta);
                println!("  ind class: {:?}", classify_body(&ind, &wm.f));
                if classify_body(&ind, &wm.f) == Ok(BodyClass::Q1) {
                    println!("  ext tri: {:?}", q1_extension_triangle(&ind).map(|t| classify_body(&t, &wm.f)));
                }
                match synthesize(&wm, &beta, &SynthOptions::default()) {
                    Ok(c) => println!("  sub cert rank {}", c.rank_bound),
                    Err(e) => println!("  sub cert ERR: {e}"),
                }
            }
            Err(e) => println!("diamond {side}: ERR {e}"),
        }
    }
    match synthesize(&m, &goal, &SynthOptions::default()) {
        Ok(c) => println!("full rank {}", c.rank_bound),
        Err(e) => println!("full ERR: {e}"),
    }
}
