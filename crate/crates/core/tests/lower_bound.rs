use num_bigint::BigInt;
use num_rational::BigRational;
use visroute_core::bounds::{
    gen_lower_bound, shortest_path, verify_every_triangulation_bound, verify_lemma6, verify_lower_bound, LowerBoundParams,
    Verdict,
};
use visroute_core::geom::{properly_intersects, validate_general_position};
use visroute_core::triangulation::{build_cdt, extract_h};
use visroute_core::Segment;

fn params(n: usize, x: i64, eps_den: i64) -> LowerBoundParams {
    LowerBoundParams::new(n, BigRational::from_integer(BigInt::from(x)), BigRational::new(1.into(), eps_den.into())).unwrap()
}

#[test]
fn ratio_matches_closed_form_at_large_stretch() {
    for n in [8, 16, 32] {
        let p = params(n, 1000, 1000);
        let rep = verify_lower_bound(&p).unwrap();
        assert!(rep.within_tolerance, "n = {n}: {} vs {}", rep.ratio, rep.closed_form);
        assert!(rep.ratio <= n as f64 / 4.0 + 1e-9);
    }
}

#[test]
fn ratio_increases_with_stretch() {
    for n in [8, 16, 32] {
        let ratios: Vec<f64> =
            [10, 100, 1000, 10_000].iter().map(|&x| verify_lower_bound(&params(n, x, 1000)).unwrap().ratio).collect();
        assert!(ratios.windows(2).all(|w| w[0] < w[1]), "n = {n}: {ratios:?}");
        assert!(n as f64 / 4.0 - ratios[3] < 0.01 * n as f64);
    }
}

#[test]
fn eight_points_at_x_100() {
    let rep = verify_lower_bound(&params(8, 100, 1000)).unwrap();
    assert!((rep.closed_form - 400.0 / 203.0).abs() < 1e-12);
    assert!(rep.within_tolerance);
    assert!(rep.above_bound);
}

#[test]
fn closed_form_lower_bounds_the_ratio_at_unit_stretch() {
    for n in [8, 16, 32] {
        let rep = verify_lower_bound(&params(n, 1, 1000)).unwrap();
        assert!(rep.ratio >= rep.closed_form, "n = {n}");
    }
}

#[test]
fn construction_shape() {
    for eps_den in [10, 1000, 1_000_000] {
        let lb = gen_lower_bound(&params(16, 50, eps_den)).unwrap();
        let inst = &lb.instance;
        assert_eq!(inst.n(), 16);
        assert_eq!(inst.constraints().len(), 7);
        assert!(validate_general_position(inst.points(), 6).is_ok());
        let st = Segment::new(inst.point(lb.s).clone(), inst.point(lb.t).clone()).unwrap();
        for &(a, b) in inst.constraints() {
            let c = Segment::new(inst.point(a).clone(), inst.point(b).clone()).unwrap();
            assert!(properly_intersects(&st, &c));
        }
        let tri = build_cdt(inst).unwrap();
        let h = extract_h(&tri, lb.s, lb.t);
        for (a, b) in lb.boundary_verticals() {
            assert!(!h.h.has_edge(a, b));
        }
        assert_eq!(lb.boundary_verticals().len(), lb.rows - 2);
    }
}

#[test]
fn every_sampled_triangulation_keeps_the_bound() {
    for n in [8, 16] {
        let rep = verify_every_triangulation_bound(&params(n, 1000, 1000), 10, 3).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert!(rep.triangulations > 10);
    }
}

#[test]
fn lower_bound_is_consistent_with_the_upper_bound() {
    let p = params(16, 1000, 1000);
    let lb = gen_lower_bound(&p).unwrap();
    let tri = build_cdt(&lb.instance).unwrap();
    let (h_hp, h_g, rep) = verify_lemma6(&tri, lb.s, lb.t).unwrap();
    assert_eq!((h_hp, h_g), (Verdict::Holds, Verdict::Holds));
    let direct = shortest_path(tri.graph(), lb.s, lb.t).unwrap();
    assert_eq!(direct.vertices, rep.pi_g.vertices);
    assert!(rep.ratio_h_g <= 15.0);
}
