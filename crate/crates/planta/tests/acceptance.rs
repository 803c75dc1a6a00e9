//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use planta::cli::{stem_classify_config, synthetic_vpd};
use planta::config::ScenarioFile;
use planta::run::run_scenario_file;
use planta::stems::{stretched_offset_check, Sensor, StemTable};
use planta_core::analytics::{
    classify_stress, impedance, impedance_sweep, measured_impedance, saturation_vapor_pressure,
    translocation_lag, vapor_pressures, ImpedanceCircuit, LagConfig, StressClass, VpdInputs,
};
use planta_core::kirigami::{
    baseline_correct, rel_resistance_to_strain, strain_to_rel_resistance, BaselineConfig, DiameterPipeline,
    GaugeModel, StemGeometry,
};
use planta_core::meg::{
    default_voc_table, evaporation_efficiency, find_mpp, load_point, EfficiencyInputs, MegConfig,
};
use planta_core::powerchain::{min_power_for_readings, simulate_constant, PowerChainConfig};
use planta_core::scenario::Condition;
use planta_core::transducers::{
    adc_read, resistance_to_temp, temp_to_resistance, AdcModel, HumiditySensorModel, TempSensorModel,
};
use planta_core::{Extrapolation, TimeSeries, Unit};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn draw<S: Strategy>(runner: &mut TestRunner, s: S) -> S::Value {
    s.new_tree(runner).expect("strategy yields a value").current()
}

/// Tetens form evaluated through exp/ln rather than powf.
fn tetens_reference(t: f64) -> f64 {
    0.6107 * (std::f64::consts::LN_10 * 7.5 * t / (237.3 + t)).exp()
}

fn c1_vpd() -> Outcome {
    let r = vapor_pressures(&VpdInputs {
        leaf_temp: 25.0,
        air_temp: 25.0,
        air_rh: 60.0,
    })
    .map_err(|e| e.to_string())?;
    let sat = tetens_reference(25.0);
    let reference = (sat, sat * 0.6, sat - sat * 0.6);
    let got = (r.vp_sat, r.vp_air, r.vpd);
    for (g, (want, lit)) in [got.0, got.1, got.2].into_iter().zip([
        (reference.0, 3.1671),
        (reference.1, 1.9002),
        (reference.2, 1.2668),
    ]) {
        check!(
            (g - want).abs() <= 1e-3 && (g - lit).abs() <= 1e-3,
            "{g} vs reference {want} / {lit}"
        );
    }
    check!(
        saturation_vapor_pressure(0.0) == 0.6107,
        "vp_sat(0) = {}",
        saturation_vapor_pressure(0.0)
    );
    for t in [-10.0, 0.0, 12.5, 25.0, 41.0] {
        let r = vapor_pressures(&VpdInputs {
            leaf_temp: t,
            air_temp: t,
            air_rh: 100.0,
        })
        .map_err(|e| e.to_string())?;
        check!(r.vpd == 0.0, "vpd({t},{t},100) = {}", r.vpd);
    }
    Ok(format!("({:.4}, {:.4}, {:.4}) kPa", got.0, got.1, got.2))
}

fn c2_geometry() -> Outcome {
    let geom = StemGeometry::default();
    let full = geom.wrap_from_angle(360.0).map_err(|e| e.to_string())?;
    let want = 0.021 / std::f64::consts::PI * 1e3;
    let d = full.diameter() * 1e3;
    check!((d - want).abs() <= 1e-6, "full wrap {d} mm vs S/pi {want} mm");
    check!((want - 6.6845).abs() < 5e-5, "S/pi = {want} mm");
    let p = DiameterPipeline::new(GaugeModel::default(), geom).map_err(|e| e.to_string())?;
    let composed = p.diameter_from_reading(0.046005).map_err(|e| e.to_string())? * 1e3;
    check!((composed - 6.684).abs() <= 1e-3, "0.046005 -> {composed} mm");
    let mut worst = 0.0f64;
    for i in 0..=500 {
        let mm = 5.0 + 5.0 * i as f64 / 500.0;
        let y = p.reading_from_diameter(mm * 1e-3).map_err(|e| e.to_string())?;
        let back = p.diameter_from_reading(y).map_err(|e| e.to_string())? * 1e3;
        worst = worst.max((back - mm).abs());
    }
    check!(worst <= 1e-3, "roundtrip error {worst} mm");
    Ok(format!(
        "full wrap {d:.7} mm, 0.046005 -> {composed:.6} mm, roundtrip {worst:.1e} mm"
    ))
}

fn c3_gauge() -> Outcome {
    let g = GaugeModel::default();
    let y = strain_to_rel_resistance(&g, 0.10).map_err(|e| e.to_string())?;
    // 0.150 has no exact binary64 form; the model must return the correctly
    // rounded product of its inputs, which is within one ulp of 0.150.
    check!(y == 1.5f64 * 0.10f64, "0.10 -> {y:e}");
    check!((y - 0.150).abs() <= f64::EPSILON * 0.150, "0.10 -> {y:e}");
    let below = strain_to_rel_resistance(&g, g.knee_strain).map_err(|e| e.to_string())?;
    let above = g.gf_low * g.knee_strain + g.gf_high * 0.0;
    let jump = (below - above).abs();
    check!(jump <= 1e-15, "knee jump {jump:e}");
    let eps = g.knee_strain * f64::EPSILON;
    let left = strain_to_rel_resistance(&g, g.knee_strain - eps).map_err(|e| e.to_string())?;
    let right = strain_to_rel_resistance(&g, g.knee_strain + eps).map_err(|e| e.to_string())?;
    check!(
        (right - left).abs() <= 1e-15,
        "knee neighbourhood {:e}",
        right - left
    );
    let mut worst = 0.0f64;
    for i in 0..=25_000 {
        let s = 2.5 * i as f64 / 25_000.0;
        let back = rel_resistance_to_strain(&g, strain_to_rel_resistance(&g, s).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.max((back - s).abs());
    }
    check!(worst <= 1e-12, "inverse roundtrip {worst:e}");
    Ok(format!(
        "0.10 -> {y} (1.5 x 0.10 in binary64), knee jump {jump:e}, roundtrip {worst:.1e}"
    ))
}

fn c4_field_table() -> Outcome {
    let t = StemTable::builtin().map_err(|e| e.to_string())?;
    let pristine = |r: usize| [0, 2, 4].map(|i| t.rows[r].diameters[i]);
    check!(
        t.rows[0].day == 1 && pristine(0) == [6.43, 6.87, 6.52],
        "day 1 row {:?}",
        pristine(0)
    );
    let last = t.rows.len() - 1;
    check!(
        t.rows[last].day == 40 && pristine(last) == [6.80, 6.47, 6.15],
        "day 40 row {:?}",
        pristine(last)
    );
    let conditions = [
        (Condition::Healthy, 0.0095, StressClass::Healthy),
        (Condition::WaterStress, -0.0103, StressClass::WaterStress),
        (Condition::SalinityStress, -0.0095, StressClass::SalinityStress),
    ];
    let mut slopes = Vec::new();
    let mut labels = Vec::new();
    for (c, want, class) in conditions {
        let s = t.slope(c, Sensor::Pristine).map_err(|e| e.to_string())?;
        check!((s - want).abs() <= 5e-4, "{c:?} slope {s} vs {want}");
        slopes.push(s);
        let vpd = synthetic_vpd(&t, c, 0).map_err(|e| e.to_string())?;
        let dia = t.series(c, Sensor::Pristine).map_err(|e| e.to_string())?;
        let label = classify_stress(&vpd, &dia, &stem_classify_config()).map_err(|e| e.to_string())?;
        check!(label.label == class, "{c:?} classified {}", label.label.as_str());
        labels.push(label.label.as_str());
    }
    let offsets = stretched_offset_check(&t);
    let means: Vec<f64> = offsets.iter().map(|(_, o)| o.mean).collect();
    check!(means == [0.010, 0.015, 0.017], "offsets {means:?}");
    check!(
        offsets
            .iter()
            .all(|(_, o)| o.max_deviation == 0.0 && o.max == o.mean),
        "offset spread {offsets:?}"
    );
    Ok(format!(
        "slopes ({:+.6}, {:+.6}, {:+.6}) mm/day, offsets {means:?} mm, labels {}",
        slopes[0],
        slopes[1],
        slopes[2],
        labels.join("/")
    ))
}

fn c5_energy() -> Outcome {
    let cfg = PowerChainConfig::default();
    let e = cfg.stored_energy(3.3);
    check!((e - 4.7916e-3).abs() <= 1e-9, "stored energy {e}");
    let day = 86_400.0;
    let sim = simulate_constant(&cfg, 0.25e-6, day).map_err(|e| e.to_string())?;
    let n = sim.completed().count();
    check!(n == 5, "{n} readings at 0.25 uW");
    let imbalance = sim.ledger().storage_imbalance();
    let conversion = sim.ledger().conversion_imbalance(cfg.converter_efficiency);
    check!(
        imbalance <= 1e-9 && conversion <= 1e-9,
        "ledger imbalance {imbalance:e} / {conversion:e} J"
    );
    let p = min_power_for_readings(&cfg, 5, day).map_err(|e| e.to_string())?;
    let at = simulate_constant(&cfg, p, day)
        .map_err(|e| e.to_string())?
        .completed()
        .count();
    let below = simulate_constant(&cfg, p - 1e-12, day)
        .map_err(|e| e.to_string())?
        .completed()
        .count();
    check!(
        at >= 5 && below < 5,
        "min power {p:e} W gives {at}, {p:e} - 1e-12 W gives {below}"
    );
    Ok(format!(
        "E = {e:e} J, {n} readings/24 h, ledger {imbalance:.1e} J, min power {p:.4e} W"
    ))
}

fn c6_mpp() -> Outcome {
    let mut runner = TestRunner::deterministic();
    for case in 0..100 {
        let r_int = draw(&mut runner, 1.0f64..1e5);
        let anchor = draw(&mut runner, 0.01f64..1.0);
        let rh = draw(&mut runner, 0.0f64..100.0);
        let mut grid = draw(&mut runner, proptest::collection::vec(0.1f64..1e6, 1..80));
        grid.push(r_int);
        let cfg = MegConfig {
            voc_vs_rh: default_voc_table(anchor, Extrapolation::Clamp),
            internal_resistance: r_int,
            ..MegConfig::default()
        };
        let best = find_mpp(&cfg, rh, &grid).map_err(|e| e.to_string())?;
        let voc = planta_core::meg::open_circuit_voltage(&cfg, rh).map_err(|e| e.to_string())?;
        let p = voc * voc / (4.0 * r_int);
        check!(
            best.load_resistance == r_int,
            "case {case}: {} vs R_int {r_int}",
            best.load_resistance
        );
        check!(
            (best.power - p).abs() <= 1e-12 * p,
            "case {case}: P {} vs {p}",
            best.power
        );
        let brute = grid.iter().map(|&r| (r, load_point(voc, r_int, r).power)).fold(
            (f64::NAN, f64::NEG_INFINITY),
            |b, x| if x.1 > b.1 { x } else { b },
        );
        check!(brute.1 == best.power, "case {case}: brute force {brute:?}");
    }
    let default_peak =
        find_mpp(&MegConfig::default(), 50.0, &[5.0, 10.0, 20.0, 50.0, 100.0]).map_err(|e| e.to_string())?;
    check!(
        default_peak.load_resistance == 20.0,
        "default MPP at {} ohm",
        default_peak.load_resistance
    );
    Ok("100 random configs agree with the grid scan; default peak at 20 ohm".into())
}

fn c7_efficiency() -> Outcome {
    let inp = EfficiencyInputs::new(0.0589, 0.415);
    let input = inp.input_energy().map_err(|e| e.to_string())?;
    let eff = evaporation_efficiency(&inp).map_err(|e| e.to_string())?;
    check!((input - 1013.6).abs() <= 0.5, "input energy {input} J");
    check!((eff - 5.811e-5).abs() <= 1e-7, "efficiency {eff:e}");
    Ok(format!("input {input:.2} J, efficiency {eff:.4e}"))
}

fn c8_transducers() -> Outcome {
    let m = TempSensorModel::default();
    let mut worst_t = 0.0f64;
    for i in 0..=4500 {
        let t = 15.0 + 45.0 * i as f64 / 4500.0;
        let back = resistance_to_temp(&m, temp_to_resistance(&m, t).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst_t = worst_t.max((back - t).abs());
    }
    check!(worst_t <= 1e-9, "temperature roundtrip {worst_t:e}");
    let h = HumiditySensorModel::default();
    let mut worst_h = 0.0f64;
    for i in 0..=1000 {
        let rh = 100.0 * i as f64 / 1000.0;
        let v = h.curve.eval(rh).map_err(|e| e.to_string())?;
        worst_h = worst_h.max((h.curve.invert(v).map_err(|e| e.to_string())? - rh).abs());
    }
    check!(worst_h <= 1e-12, "humidity roundtrip {worst_h:e}");
    let adc = AdcModel::default();
    let worst_v = (0..10_000)
        .map(|i| {
            let v = adc.vref * i as f64 / 9_999.0;
            (adc.code_to_voltage(adc_read(&adc, v).code) - v).abs()
        })
        .fold(0.0f64, f64::max);
    check!(worst_v <= 0.5 * adc.lsb(), "ADC error {worst_v:e} V > half LSB");
    let r35 = temp_to_resistance(&m, 35.0).map_err(|e| e.to_string())?;
    check!((r35 - 0.898 * m.r0).abs() <= 1e-9 * m.r0, "R(35 C) = {r35}");
    Ok(format!(
        "temp {worst_t:.1e} C, rh {worst_h:.1e}, adc {:.3} LSB, R(35 C) = {:.6} r0",
        worst_v / adc.lsb(),
        r35 / m.r0
    ))
}

fn c9_lag() -> Outcome {
    let curve = |t: f64, delay: f64| 55.0 + 20.0 / (1.0 + (-(t - 3600.0 - delay) / 1800.0).exp());
    let make = |delay: f64| {
        TimeSeries::from_samples(
            "rh",
            Unit::PercentRh,
            (0..720).map(|m| {
                let t = m as f64 * 60.0;
                (t, curve(t, delay))
            }),
        )
    };
    let lower = make(0.0).map_err(|e| e.to_string())?;
    let upper = make(225.0 * 60.0).map_err(|e| e.to_string())?;
    let r = translocation_lag(&lower, &upper, &LagConfig::default()).map_err(|e| e.to_string())?;
    check!((r.lag - 225.0 * 60.0).abs() <= 60.0, "lag {} min", r.lag / 60.0);
    Ok(format!("lag {} min", r.lag / 60.0))
}

fn c10_impedance() -> Outcome {
    let mut runner = TestRunner::deterministic();
    for case in 0..100 {
        let c = ImpedanceCircuit {
            r_series: draw(&mut runner, 1.0f64..1e4),
            r_ct: draw(&mut runner, 10.0f64..1e6),
            c_dl: draw(&mut runner, 1e-9f64..1e-3),
        };
        let sweep = impedance_sweep(&c, 1.0, 1e3, 200).map_err(|e| e.to_string())?;
        check!(
            sweep.windows(2).all(|w| w[1].1.norm() <= w[0].1.norm()),
            "case {case}: |Z| not monotone for {c:?}"
        );
        let z0 = impedance(&c, 0.0).map_err(|e| e.to_string())?;
        check!(
            (z0.re - (c.r_series + c.r_ct)).abs() <= 1e-9 && z0.im.abs() <= 1e-9,
            "case {case}: Z(0) = {z0}"
        );
        let zinf = impedance(&c, f64::INFINITY).map_err(|e| e.to_string())?;
        check!(
            (zinf.re - c.r_series).abs() <= 1e-9 && zinf.im.abs() <= 1e-9,
            "case {case}: Z(inf) = {zinf}"
        );
        let zhigh = impedance(&c, 1e15).map_err(|e| e.to_string())?;
        check!((zhigh - zinf).norm() <= 1e-9, "case {case}: Z(1e15 Hz) = {zhigh}");
    }
    let z = measured_impedance(10e-3, 10e-6).map_err(|e| e.to_string())?;
    check!((z - 1000.0).abs() <= 1e-9, "10 mV / 10 uA = {z}");
    Ok(format!(
        "100 random circuits monotone with correct limits; 10 mV / 10 uA = {z} ohm"
    ))
}

fn tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).expect("readable output dir") {
            let p = entry.expect("dir entry").path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).expect("inside root").to_path_buf();
                out.push((rel, std::fs::read(&p).expect("readable file")));
            }
        }
    }
    out.sort();
    out
}

fn c11_determinism() -> Outcome {
    let file =
        ScenarioFile::from_path(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/three_plants.toml"))
            .map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_scenario_file(&file, Some(42), &a).map_err(|e| e.to_string())?;
    run_scenario_file(&file, Some(42), &b).map_err(|e| e.to_string())?;
    let (ta, tb) = (tree(&a), tree(&b));
    check!(!ta.is_empty() && ta == tb, "output trees differ");

    let period = 10.0;
    let clean = |t: f64| 0.046 + 2e-7 * t;
    let s = TimeSeries::from_samples(
        "strain",
        Unit::RelResistance,
        (0..600).map(|k| {
            let t = k as f64 * period;
            (
                t,
                clean(t) + if (3000.0..3060.0).contains(&t) { 0.05 } else { 0.0 },
            )
        }),
    )
    .map_err(|e| e.to_string())?;
    let cfg = BaselineConfig::default();
    let first = baseline_correct(&s, &cfg).map_err(|e| e.to_string())?;
    let guard = 2.0 * cfg.window as f64 * period;
    let mut worst = 0.0f64;
    for (t, v) in first.corrected.iter() {
        if t < 3000.0 - guard || t >= 3060.0 + guard {
            worst = worst.max((v - clean(t)).abs());
        }
    }
    check!(
        worst <= 1e-6,
        "residual {worst:e} outside the pulse neighbourhood"
    );
    let peak = first
        .corrected
        .iter()
        .map(|(t, v)| (v - clean(t)).abs())
        .fold(0.0f64, f64::max);
    check!(peak < 1e-3, "pulse left a residual of {peak:e}");
    let second = baseline_correct(&first.corrected, &cfg).map_err(|e| e.to_string())?;
    check!(
        second.corrected == first.corrected,
        "second pass changed the series"
    );
    Ok(format!(
        "{} files identical; pulse residual {worst:.1e}; second pass unchanged",
        ta.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("vpd formula", c1_vpd),
        ("geometry closure", c2_geometry),
        ("gauge model", c3_gauge),
        ("field table golden reproduction", c4_field_table),
        ("energy chain", c5_energy),
        ("maximum power point", c6_mpp),
        ("efficiency procedure", c7_efficiency),
        ("transducer roundtrips", c8_transducers),
        ("translocation lag", c9_lag),
        ("impedance", c10_impedance),
        ("determinism", c11_determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
