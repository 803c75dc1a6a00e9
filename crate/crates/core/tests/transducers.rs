use planta_core::meg::default_voc_table;
use planta_core::transducers::*;
use planta_core::{CalibrationTable, Extrapolation};
use proptest::prelude::*;

proptest! {
    #[test]
    fn temperature_roundtrip(t in 15.0f64..=60.0) {
        let m = TempSensorModel::default();
        let back = resistance_to_temp(&m, temp_to_resistance(&m, t).unwrap()).unwrap();
        prop_assert!((back - t).abs() <= 1e-9);
    }

    #[test]
    fn humidity_roundtrip(rh in 0.0f64..=100.0, leaf in 15.0f64..35.0, k in -0.3f64..0.3) {
        let m = HumiditySensorModel {
            curve: default_voc_table(0.2, Extrapolation::LinearExtend),
            temp_coefficient: k,
            t_reference: 25.0,
        };
        let v = m.voltage_for(rh, leaf).unwrap();
        let back = rh_from_meg_voltage(&m, v, leaf).unwrap();
        prop_assert!((back.rh - rh).abs() <= 1e-9, "{rh} -> {}", back.rh);
    }

    #[test]
    fn correction_is_identity_at_reference(v in 0.074f64..0.494, t_ref in 15.0f64..35.0, k in -0.3f64..0.3) {
        let m = HumiditySensorModel { temp_coefficient: k, t_reference: t_ref, ..HumiditySensorModel::default() };
        let r = rh_from_meg_voltage(&m, v, t_ref).unwrap();
        prop_assert_eq!(r.rh, r.raw_rh.clamp(0.0, 100.0));
    }

    #[test]
    fn adc_is_monotone_within_half_lsb(bits in 4u32..=24, mut vs in prop::collection::vec(0.0f64..=3.3, 2..200)) {
        let adc = AdcModel { bits, ..AdcModel::default() };
        vs.sort_by(f64::total_cmp);
        let codes: Vec<u64> = vs.iter().map(|&v| adc_read(&adc, v).code).collect();
        for w in codes.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        for (&v, &c) in vs.iter().zip(&codes) {
            prop_assert!((adc.code_to_voltage(c) - v).abs() <= 0.5 * adc.lsb() * (1.0 + 1e-12));
        }
    }

    /// Halving the knot spacing of a smooth monotone curve never increases
    /// the worst inversion error.
    #[test]
    fn refinement_never_hurts_inversion(b in 1e-4f64..1e-2, c in 0.0f64..0.5, scale in 10.0f64..80.0) {
        let curve = |rh: f64| 0.05 + b * rh + c * (1.0 - (-rh / scale).exp());
        let worst = |knots: usize| {
            let pts = (0..=knots).map(|i| {
                let rh = 100.0 * i as f64 / knots as f64;
                (rh, curve(rh))
            }).collect();
            let table = CalibrationTable::new(pts, Extrapolation::Error).unwrap();
            (0..=2000)
                .map(|i| {
                    let rh = i as f64 * 0.05;
                    (table.invert(curve(rh)).unwrap() - rh).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let errors: Vec<f64> = [4, 8, 16, 32, 64].iter().map(|&k| worst(k)).collect();
        for w in errors.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12, "{errors:?}");
        }
    }
}

#[test]
fn twelve_bit_sweep_within_half_lsb() {
    let adc = AdcModel::default();
    let worst = (0..10_000)
        .map(|i| {
            let v = 3.3 * i as f64 / 9_999.0;
            (adc.code_to_voltage(adc_read(&adc, v).code) - v).abs()
        })
        .fold(0.0f64, f64::max);
    assert!(worst <= 0.5 * adc.lsb(), "{worst}");
}

#[test]
fn negative_coefficient_at_35_c() {
    let m = TempSensorModel::default();
    let r = temp_to_resistance(&m, 35.0).unwrap();
    assert!((r - 0.898 * m.r0).abs() < 1e-9);
}

#[test]
fn divider_round_trip_recovers_resistance_to_quantization() {
    let adc = AdcModel::default();
    let m = TempSensorModel::default();
    for t in [15.0, 25.0, 40.0, 60.0] {
        let r = temp_to_resistance(&m, t).unwrap();
        let v = adc.divider_voltage(r, adc.vref);
        let code = adc_read(&adc, v).code;
        let r_back = divider_resistance(&adc, code, adc.vref).unwrap();
        // resistance band spanned by ±½ LSB around the true node voltage
        let r_at = |v: f64| adc.divider_fixed_resistor * v / (adc.vref - v);
        let band = (r_at(v + 0.5 * adc.lsb()) - r_at(v - 0.5 * adc.lsb())).abs();
        assert!((r_back - r).abs() <= band, "{t}: {r_back} vs {r}");
    }
}
