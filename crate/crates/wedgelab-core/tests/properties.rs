//! Invariants as properties over random inputs.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use wedgelab_core::exec::Exec;
use wedgelab_core::liealg::{self, Element};
use wedgelab_core::linop::{self, EntireFn, Operator};
use wedgelab_core::polar::{self, PolarContext};
use wedgelab_core::quadric::{self, CVector, Quadric};
use wedgelab_core::report;
use wedgelab_core::wedge::CausalSymmetricSpec;
use wedgelab_core::{Complex, Tolerance};

fn entries(n: usize, r: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-r..r, n)
}

/// `(sinh a, cosh a cos φ, cosh a sin φ)` on `dS²`.
fn ds2_point(a: f64, phi: f64) -> DVector<f64> {
    DVector::from_vec(vec![a.sinh(), a.cosh() * phi.cos(), a.cosh() * phi.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cosh_squared_minus_sinh_squared(v in entries(16, 1.0)) {
        let a = Operator::new(DMatrix::from_vec(4, 4, v)).unwrap();
        let c = linop::apply_entire(EntireFn::Cosh, &a).unwrap().into_matrix();
        let s = linop::apply_entire(EntireFn::Sinh, &a).unwrap().into_matrix();
        let r = (&c * &c - &s * &s - DMatrix::identity(4, 4)).amax();
        prop_assert!(r < 1e-9 * (1.0 + c.amax().powi(2)), "residual {r:e}");
    }

    #[test]
    fn exp_of_sum_of_commuting(v in entries(9, 1.0), s in -2.0..2.0f64, t in -2.0..2.0f64) {
        let m = DMatrix::from_vec(3, 3, v);
        let e = |x: f64| linop::apply_entire(EntireFn::Exp, &Operator::new(&m * x).unwrap()).unwrap().into_matrix();
        let r = (e(s) * e(t) - e(s + t)).amax() / (1.0 + e(s + t).amax());
        prop_assert!(r < 1e-9, "residual {r:e}");
    }

    #[test]
    fn ad_is_a_derivation_on_sl3(x in entries(8, 1.0), y in entries(8, 1.0), z in entries(8, 1.0)) {
        let g = liealg::sl(3).unwrap();
        let (x, y, z) = (Element::from_vec(x), Element::from_vec(y), Element::from_vec(z));
        let lhs = g.bracket(&x, &g.bracket(&y, &z));
        let rhs = g.bracket(&g.bracket(&x, &y), &z) + g.bracket(&y, &g.bracket(&x, &z));
        prop_assert!((lhs - rhs).amax() < 1e-12);
        prop_assert!((g.bracket(&x, &y) + g.bracket(&y, &x)).amax() < 1e-14);
    }

    #[test]
    fn exp_ad_is_an_automorphism(x in entries(3, 2.0)) {
        let g = liealg::sl(2).unwrap();
        let t = g.exp_ad(&Element::from_vec(x), 1.0).unwrap();
        prop_assert!(g.automorphism_residual(&t) < 1e-9 * (1.0 + t.amax().powi(2)));
    }

    #[test]
    fn grading_projections_resolve_identity(name in prop::sample::select(vec!["sl2-cayley", "sl2xsl2", "dS3", "gl2", "sp4"]), seed in 0u64..1000) {
        let spec = CausalSymmetricSpec::by_name(name).unwrap();
        let x = DVector::from_fn(spec.dim(), |i, _| ((i as u64 * 2654435761 + seed) % 1000) as f64 / 500.0 - 1.0);
        let sum = spec.grading.project(&x, -1) + spec.grading.project(&x, 0) + spec.grading.project(&x, 1);
        prop_assert!((sum - &x).amax() < 1e-12);
        let tau = liealg::tau_from_euler(&spec.g, &spec.h, &Tolerance::default()).unwrap();
        prop_assert!((tau.apply(&tau.apply(&x)) - &x).amax() < 1e-12);
        // [h, x_j] = j x_j
        for j in [-1, 0, 1] {
            let xj = spec.grading.project(&x, j);
            prop_assert!((spec.g.bracket(&spec.h, &xj) - &xj * j as f64).amax() < 1e-12);
        }
    }

    #[test]
    fn sigma_x_is_an_automorphism(c in entries(2, 1.2)) {
        let spec = CausalSymmetricSpec::by_name("sl2-cayley").unwrap();
        let ctx = PolarContext::for_spec(&spec).unwrap();
        let x = ctx.q.basis() * DVector::from_vec(c[..ctx.q.dim()].to_vec());
        let s = polar::sigma_x(&ctx.g, &x).unwrap();
        prop_assert!(ctx.g.automorphism_residual(&s) < 1e-9 * (1.0 + s.amax().powi(2)));
    }

    #[test]
    fn point_symmetry_is_an_involution_fixing_its_centre(a in -1.5..1.5f64, p1 in 0.0..6.3f64, b in -1.5..1.5f64, p2 in 0.0..6.3f64) {
        let q = Quadric::de_sitter(2);
        let x = ds2_point(a, p1);
        let y = ds2_point(b, p2);
        prop_assert!(q.residual(&x) < 1e-12);
        let sx = |v: &DVector<f64>| q.point_symmetry(&x, v).unwrap();
        prop_assert!((sx(&x) - &x).amax() < 1e-12);
        let back = sx(&sx(&y));
        prop_assert!((&back - &y).amax() < 1e-9 * (1.0 + y.amax()));
        prop_assert!(q.residual(&sx(&y)) < 1e-9 * (1.0 + y.norm_squared()));
    }

    #[test]
    fn boosts_preserve_the_form_and_the_wedge(x in entries(4, 3.0), s in -3.0..3.0f64) {
        let x = DVector::from_vec(x);
        let b = quadric::boost_matrix(3, s);
        let y = &b * &x;
        let f = quadric::lorentz_form(&x, &x).unwrap();
        prop_assert!((quadric::lorentz_form(&y, &y).unwrap() - f).abs() < 1e-9 * (1.0 + x.norm_squared() * (2.0 * s.abs()).exp()));
        let m = quadric::wedge_margin(&x);
        if m.abs() > 1e-6 {
            prop_assert_eq!(quadric::in_right_wedge(&x, 0.0), quadric::in_right_wedge(&y, 0.0));
        }
    }

    #[test]
    fn complex_boost_flow_is_a_one_parameter_group(re in entries(3, 1.0), im in entries(3, 1.0), a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64, d in -2.0..2.0f64) {
        let x = CVector::from_fn(3, |i, _| Complex::new(re[i], im[i]));
        let (z, w) = (Complex::new(a, b), Complex::new(c, d));
        let lhs = quadric::boost_flow(&quadric::boost_flow(&x, w), z);
        let rhs = quadric::boost_flow(&x, z + w);
        prop_assert!((&lhs - &rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn floats_round_trip_through_the_csv_format(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = report::fmt_f64(x);
        prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn exec_paths_agree(n in 0usize..500, k in 1u64..1000) {
        let f = |i: usize| (i as u64).wrapping_mul(k).rotate_left(7);
        prop_assert_eq!(Exec::Sequential.map_indexed(n, f), Exec::Parallel.map_indexed(n, f));
    }
}
