//! Small statistics kit: robust location/scale, least-squares trends and the
//! coefficient of variation used for robustness checks.

use alloc::vec::Vec;

use crate::{Error, Result, TimeSeries, SECONDS_PER_DAY};

pub fn mean(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        None
    } else {
        Some(xs.iter().sum::<f64>() / xs.len() as f64)
    }
}

/// Sample standard deviation (n − 1 denominator).
pub fn sample_std(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs)?;
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some(libm::sqrt(ss / (xs.len() - 1) as f64))
}

/// Median of a non-empty slice; reorders the slice.
pub fn median_in_place(xs: &mut [f64]) -> f64 {
    assert!(!xs.is_empty(), "median of empty slice");
    let n = xs.len();
    let mid = n / 2;
    let (_, upper, _) = xs.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if n % 2 == 1 {
        upper
    } else {
        let lower = xs[..mid].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + upper)
    }
}

pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    Some(median_in_place(&mut v))
}

/// Median absolute deviation about the median (unscaled).
pub fn mad(xs: &[f64]) -> Option<f64> {
    let m = median(xs)?;
    let mut dev: Vec<f64> = xs.iter().map(|x| (x - m).abs()).collect();
    Some(median_in_place(&mut dev))
}

/// Sample standard deviation over |mean|.
pub fn coefficient_of_variation(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let m = mean(values).unwrap_or(0.0);
    if m == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(sample_std(values).unwrap_or(0.0) / m.abs())
}

/// Ordinary least-squares `(slope, intercept_at_mean_x, mean_x)`.
/// Centred sums keep the slope insensitive to offsets in `x` or `y`.
pub fn ols(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    debug_assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let mx = mean(xs).unwrap_or(0.0);
    let my = mean(ys).unwrap_or(0.0);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        sxy += dx * (y - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / sxx, my, mx))
}

/// Least-squares slope over the trailing `window` seconds of `series`,
/// in series units per day.
pub fn linear_trend(series: &TimeSeries, window: f64) -> Result<f64> {
    let (ts, vs) = series.trailing(window);
    let (slope, _, _) = ols(ts, vs)?;
    Ok(slope * SECONDS_PER_DAY)
}

/// Slope per day of `y = a + b·t + c·sin(ωt) + d·cos(ωt)` fitted over the
/// trailing window, with ω for a 24 h period. Sparse duty-cycled readings
/// alias the day/night cycle into a plain linear trend; the harmonic terms
/// absorb it.
pub fn diurnal_trend(series: &TimeSeries, window: f64) -> Result<f64> {
    let (ts, vs) = series.trailing(window);
    if ts.len() < 5 {
        return Err(Error::InsufficientData {
            needed: 5,
            got: ts.len(),
        });
    }
    let t_mean = mean(ts).unwrap_or(0.0);
    let omega = 2.0 * core::f64::consts::PI / SECONDS_PER_DAY;
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for (&t, &y) in ts.iter().zip(vs) {
        let row = [
            1.0,
            (t - t_mean) / SECONDS_PER_DAY,
            libm::sin(omega * t),
            libm::cos(omega * t),
        ];
        for i in 0..4 {
            atb[i] += row[i] * y;
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let coef = solve4(ata, atb).ok_or(Error::ZeroVariance)?;
    Ok(coef[1])
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= scale * 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Residuals of `ys` after removing their least-squares line in `xs`.
pub fn detrend(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    match ols(xs, ys) {
        Ok((slope, my, mx)) => xs
            .iter()
            .zip(ys)
            .map(|(x, y)| y - (my + slope * (x - mx)))
            .collect(),
        Err(_) => {
            let m = mean(ys).unwrap_or(0.0);
            ys.iter().map(|y| y - m).collect()
        }
    }
}
