//! Structural invariants beyond the acceptance criteria: the boundedness
//! lemma, wedge reduction classes, certificate tampering, and end-to-end
//! document round trips.

mod common;

use common::*;
use splitrank::classify::{classify_body, split_container, standardize, BodyClass};
use splitrank::engine::wedge_construct;
use splitrank::io::{certificate_to_document, verify_certificate};
use splitrank::model::{induced_body, CutIneq, TwoRowModel};
use splitrank::num::{rat, rat_int};
use splitrank::synth::{synthesize, SynthOptions};
use num_bigint::BigInt;
use num_traits::Zero;

fn opts() -> SynthOptions {
    SynthOptions::default()
}

/// Valid cuts whose induced body is not inside any split set with small
/// coefficients have all-positive coefficients and a bounded body.
#[test]
fn boundedness_lemma_on_random_cuts() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 60 {
        use rand::Rng;
        let k = r.gen_range(2..=4usize);
        let f = random_f(&mut r);
        let columns: Vec<_> = (0..k).map(|_| random_direction(&mut r)).collect();
        let Ok(model) = TwoRowModel::new(f, columns) else {
            continue;
        };
        let Some(cut) = random_valid_cut(&mut r, &model) else {
            continue;
        };
        let body = induced_body(&model, &cut);
        if split_container(&body).is_some() {
            continue;
        }
        assert!(
            cut.alpha.iter().all(|a| !a.is_zero()),
            "zero coefficient outside a split set"
        );
        assert!(body.is_bounded(), "unbounded body outside a split set");
        checked += 1;
    }
}

/// Wedge outputs on standard T2A inputs are lattice-free and classify as
/// split subsets or T2B triangles.
#[test]
fn wedge_reduction_class() {
    for (f, verts) in [
        (
            ptr(1, 2, 3, 2),
            vec![ptr(-1, 2, 0, 1), ptr(3, 2, 0, 1), ptr(1, 2, 2, 1)],
        ),
        (
            ptr(3, 4, 3, 4),
            vec![ptr(-1, 2, 0, 1), pt(2, 0), ptr(1, 3, 5, 3)],
        ),
    ] {
        let (model, goal) = instance_from_vertices(f, &verts);
        let std = standardize(&model, &goal, BodyClass::T2A).unwrap();
        let (m, c) = std.working_instance();
        let wedge = wedge_construct(
            &m,
            2,
            &pt(0, 1),
            &pt(1, 1),
            Some(&c.alpha[2].clone().recip()),
        )
        .unwrap();
        assert!(wedge.is_lattice_free());
        let class = classify_body(&wedge, &m.f).unwrap();
        assert!(
            class == BodyClass::SplitSubset || class == BodyClass::T2B,
            "wedge reduced to {class:?}"
        );
    }
}

/// A tampered certificate (pi0 shifted by one) fails re-verification with a
/// named step.
#[test]
fn tampered_certificate_fails() {
    let (model, goal) = example_3col();
    let cert = synthesize(&model, &goal, &opts()).unwrap();
    let mut doc = certificate_to_document(&cert);
    verify_certificate(&model, &doc).unwrap();
    let pi0: BigInt = doc.steps[0].pi0.parse().unwrap();
    doc.steps[0].pi0 = (pi0 + 1).to_string();
    let err = verify_certificate(&model, &doc).unwrap_err();
    assert!(err.contains("step"), "error should name the failing step: {err}");
}

/// The enlarged instance for a g = 0 standard T2B strictly contains the
/// original body.
#[test]
fn t2b_g0_enlargement_contains_original() {
    // Build a T2B whose base has epsilon > 0 and g = 0 after
    // standardization: base from (-1/2, 0) to (1/2, 0) holds exactly two
    // integer points with a fractional right end... base length must still
    // carry multiple integer points, so take (-1/4, 0) to (3/4, 0) holding
    // {0}? That is a single point; instead keep endpoints straddling both 0
    // and the fractional end: w2 = (g + eps, 0) with g = 0 requires the
    // base to hold its integers at {0} plus the integral left end.
    let f = ptr(3, 10, 2, 5);
    let verts = vec![ptr(-9, 10, 0, 1), ptr(3, 4, 0, 1), ptr(1, 5, 13, 10)];
    let body = splitrank::geom::ConvexBody2::polygon(verts.clone());
    if !body.is_lattice_free() {
        panic!("fixture not lattice-free");
    }
    let (model, goal) = instance_from_vertices(f, &verts);
    let class = classify_body(&induced_body(&model, &goal), &model.f).unwrap();
    assert_eq!(class, BodyClass::T2B);
    let std = standardize(&model, &goal, BodyClass::T2B).unwrap();
    if let Some(modified) = &std.modified {
        let enlarged = induced_body(&modified.model, &modified.cut);
        let own = induced_body(&std.model, &std.cut);
        assert!(enlarged.is_lattice_free());
        assert!(enlarged.contains_body(&own));
        // Strict: the enlarged body has a vertex outside the original.
        assert!(enlarged
            .vertices()
            .iter()
            .any(|v| !own.contains(v)));
        // And the whole pipeline still certifies the original goal.
        let cert = synthesize(&model, &goal, &opts()).unwrap();
        splitrank::synth::verify_certificate_struct(&cert).unwrap();
    } else {
        panic!("expected the g = 0 enlargement to fire");
    }
}

/// End-to-end: synthesize, serialize, re-parse, re-verify for one instance
/// of each certifiable class.
#[test]
fn document_round_trip_every_class() {
    let instances: Vec<(TwoRowModel, CutIneq)> = vec![
        example_3col(),
        instance_from_vertices(
            ptr(1, 2, 3, 2),
            &[ptr(-1, 2, 0, 1), ptr(3, 2, 0, 1), ptr(1, 2, 2, 1)],
        ),
        {
            let m = TwoRowModel::new(
                ptr(4, 7, -1, 14),
                vec![dir(-1, 1), dir(0, -1), dir(4, 3)],
            )
            .unwrap();
            let g = CutIneq::new(vec![rat(7, 11), rat(14, 11), rat(70, 11)]).unwrap();
            (m, g)
        },
        instance_from_vertices(
            ptr(1, 2, 1, 2),
            &[pt(0, 2), ptr(5, 4, 3, 4), ptr(3, 2, 0, 1), pt(0, 0)],
        ),
        instance_from_vertices(
            ptr(1, 2, 1, 2),
            &[ptr(-3, 7, 1, 7), ptr(1, 7, 9, 7), ptr(10, 7, 6, 7), ptr(6, 7, -2, 7)],
        ),
        // Split-subset goal.
        {
            let m = TwoRowModel::new(
                ptr(1, 2, 1, 2),
                vec![dir(0, 1), dir(0, -1), dir(1, 0)],
            )
            .unwrap();
            let g = CutIneq::new(vec![rat_int(2), rat_int(2), rat_int(0)]).unwrap();
            (m, g)
        },
    ];
    for (model, goal) in instances {
        let cert = synthesize(&model, &goal, &opts()).unwrap();
        let doc = certificate_to_document(&cert);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: splitrank::io::CertificateDocument = serde_json::from_str(&text).unwrap();
        verify_certificate(&model, &parsed).unwrap();
    }
}

/// Unimodular invariance of the lattice census on random bodies and maps.
#[test]
fn census_invariance_random() {
    let mut r = rng(77);
    for _ in 0..40 {
        let (model, goal) = random_standard_t2b(&mut r, false);
        let body = induced_body(&model, &goal);
        let map = random_unimodular(&mut r);
        let img = map.apply_body(&body);
        assert_eq!(body.is_lattice_free(), img.is_lattice_free());
        let a = body.lattice_points().unwrap();
        let b = img.lattice_points().unwrap();
        assert_eq!(a.len(), b.len());
    }
}
