use egn4d::cli::LinkConfig;
use egn4d::formats::{coefficients_raw, moment_set, Constellation4D, Point4D};
use egn4d::oracle::symbolic::derived_coefficients;
use num_complex::Complex64;
use proptest::prelude::*;

fn format_strategy() -> impl Strategy<Value = Constellation4D> {
    let coord = -1.0f64..1.0;
    prop::collection::vec(
        (
            coord.clone(),
            coord.clone(),
            coord.clone(),
            coord,
            0.1f64..1.0,
        ),
        2..7,
    )
    .prop_map(|raw| {
        let total: f64 = raw.iter().map(|r| r.4).sum();
        let probs: Vec<f64> = raw.iter().map(|r| r.4 / total).collect();
        let pts: Vec<(Complex64, Complex64)> = raw
            .iter()
            .map(|r| (Complex64::new(r.0, r.1), Complex64::new(r.2, r.3)))
            .collect();
        let mx: Complex64 = pts.iter().zip(&probs).map(|(p, w)| p.0 * w).sum();
        let my: Complex64 = pts.iter().zip(&probs).map(|(p, w)| p.1 * w).sum();
        let points = pts
            .iter()
            .map(|(x, y)| Point4D::new(x - mx, y - my))
            .collect();
        Constellation4D::new(points, Some(probs)).unwrap()
    })
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engineering_units_round_trip(
        alpha in 0.01f64..1.0,
        beta2 in -40.0f64..40.0,
        gamma in 0.0f64..5.0,
        span in 1.0f64..200.0,
        n_spans in 1u32..60,
        rate in 1.0f64..200.0,
    ) {
        let c = LinkConfig {
            alpha_db_per_km: alpha,
            beta2_ps2_per_km: beta2,
            gamma_per_w_km: gamma,
            span_km: span,
            n_spans,
            symbol_rate_gbd: rate,
        };
        let back = LinkConfig::from_si(&c.to_si().unwrap());
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300);
        prop_assert!(close(back.alpha_db_per_km, alpha));
        prop_assert!(close(back.beta2_ps2_per_km, beta2) || beta2 == 0.0 && back.beta2_ps2_per_km == 0.0);
        prop_assert!(close(back.gamma_per_w_km, gamma) || gamma == 0.0 && back.gamma_per_w_km == 0.0);
        prop_assert!(close(back.span_km, span));
        prop_assert!(close(back.symbol_rate_gbd, rate));
        prop_assert_eq!(back.n_spans, n_spans);
    }

    #[test]
    fn closed_form_coefficients_match_the_expansion(c in format_strategy()) {
        let m = moment_set(&c);
        let closed = coefficients_raw(&m);
        let derived = derived_coefficients(&m);
        let diff: Vec<Complex64> = closed.iter().zip(&derived).map(|(a, b)| a - b).collect();
        prop_assert!(max_abs(&diff) <= 1e-12 * max_abs(&derived).max(1e-300));
    }

    #[test]
    fn coefficients_scale_with_the_sixth_power(c in format_strategy(), s in 0.2f64..3.0, phase in 0.0f64..6.3) {
        let base = coefficients_raw(&moment_set(&c));
        let scaled = coefficients_raw(&moment_set(&c.scaled(Complex64::from_polar(s, phase))));
        let diff: Vec<Complex64> = base.iter().zip(&scaled).map(|(a, b)| a * s.powi(6) - b).collect();
        prop_assert!(max_abs(&diff) <= 1e-10 * max_abs(&scaled).max(1e-300));
    }

    #[test]
    fn swapping_twice_is_the_identity(c in format_strategy()) {
        let a = coefficients_raw(&moment_set(&c));
        let b = coefficients_raw(&moment_set(&c.swap_polarizations().swap_polarizations()));
        let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        prop_assert!(max_abs(&diff) <= 1e-14 * max_abs(&a).max(1e-300));
    }
}
