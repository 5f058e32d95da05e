use hedberg::besov::{dyadic_blocks, LittlewoodPaleyBasis};
use hedberg::field::{dft, idft, lp_norm, SampledField};
use hedberg::generators::{sample, GeneratorSpec};
use hedberg::grid::DomainSpec;
use hedberg::maximal::{hl_maximal, BallFamily};
use hedberg::norms::{orlicz_luxemburg_norm, YoungFunction};
use hedberg::spectral::{fractional_laplacian, heat_convolve, riesz_potential};
use proptest::prelude::*;

fn domain(dim: usize) -> DomainSpec {
    if dim == 1 {
        DomainSpec::new(1, 12.0, 128).unwrap()
    } else {
        DomainSpec::new(2, 12.0, 32).unwrap()
    }
}

fn arb_field() -> impl Strategy<Value = SampledField> {
    (1usize..=2, any::<u64>(), 2usize..8).prop_map(|(dim, seed, band)| {
        sample(&domain(dim), &GeneratorSpec::RandomBandLimited { seed, max_band: band }).unwrap()
    })
}

fn rel(a: &SampledField, b: &SampledField) -> f64 {
    a.sub(b).unwrap().sup_norm() / b.sup_norm().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transform_roundtrip(f in arb_field()) {
        prop_assert!(rel(&idft(&dft(&f)), &f) < 1e-12);
    }

    #[test]
    fn riesz_inverts_fractional_laplacian(f in arb_field(), s in 0.1f64..0.9) {
        let back = fractional_laplacian(&riesz_potential(&f, s).unwrap(), s).unwrap();
        prop_assert!(rel(&back, &f.project_mean_zero()) < 1e-10);
    }

    #[test]
    fn heat_semigroup(f in arb_field(), a in 0.01f64..1.0, b in 0.01f64..1.0) {
        let two = heat_convolve(&heat_convolve(&f, a).unwrap(), b).unwrap();
        prop_assert!(rel(&two, &heat_convolve(&f, a + b).unwrap()) < 1e-12);
    }

    #[test]
    fn littlewood_paley_blocks_sum_to_mean_zero_part(f in arb_field()) {
        let basis = LittlewoodPaleyBasis::for_domain(f.domain());
        let sum = dyadic_blocks(&f, &basis)
            .into_iter()
            .fold(SampledField::zeros(*f.domain()), |acc, b| acc.add(&b).unwrap());
        prop_assert!(rel(&sum, &f.project_mean_zero()) < 1e-10);
    }

    #[test]
    fn maximal_function_dominates(f in arb_field()) {
        let m = hl_maximal(&f, &BallFamily::dyadic(f.domain()));
        for (mv, fv) in m.values().iter().zip(f.values()) {
            prop_assert!(mv.re >= fv.norm() * (1.0 - 1e-12));
        }
        let neg = hl_maximal(&f.scale(-1.0), &BallFamily::dyadic(f.domain()));
        prop_assert_eq!(neg.values(), m.values());
    }

    #[test]
    fn orlicz_power_is_lebesgue(f in arb_field(), p in 1.2f64..4.0, c in -3.0f64..3.0) {
        prop_assume!(c.abs() > 1e-3);
        let young = YoungFunction::power(p).unwrap();
        let norm = orlicz_luxemburg_norm(&f, &young).unwrap();
        prop_assert!((norm - lp_norm(&f, p).unwrap()).abs() <= 1e-10 * norm);
        let scaled = orlicz_luxemburg_norm(&f.scale(c), &young).unwrap();
        prop_assert!((scaled - c.abs() * norm).abs() <= 1e-10 * scaled);
    }
}
