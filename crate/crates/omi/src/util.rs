//! Small curve utilities: local maxima and peak widths on sampled data.

use crate::real::{real, Real};

/// Indices of strict local maxima of `ys` (flat-top plateaus report their
/// first sample). Endpoints are not counted.
pub fn local_maxima<T: Real>(ys: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let n = ys.len();
    let mut i = 1;
    while i + 1 < n {
        if ys[i] > ys[i - 1] {
            // scan across a possible plateau
            let mut j = i;
            while j + 1 < n && ys[j + 1] == ys[i] {
                j += 1;
            }
            if j + 1 < n && ys[j + 1] < ys[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Largest sample of `ys` with `|xs - x0| <= half_window`.
pub fn peak_height_around<T: Real>(xs: &[T], ys: &[T], x0: T, half_window: T) -> T {
    xs.iter()
        .zip(ys)
        .filter(|(x, _)| (**x - x0).abs() <= half_window)
        .map(|(_, y)| *y)
        .fold(T::zero(), |m, y| m.max(y))
}

/// Full width at half of the local peak maximum near `x0`, by linear
/// interpolation of the half-max crossings on both sides.
pub fn fwhm_around<T: Real>(xs: &[T], ys: &[T], x0: T, half_window: T) -> Option<T> {
    let idx: Vec<usize> = (0..xs.len())
        .filter(|&i| (xs[i] - x0).abs() <= half_window)
        .collect();
    let &peak = idx
        .iter()
        .max_by(|&&a, &&b| ys[a].partial_cmp(&ys[b]).unwrap())?;
    fwhm_at_peak(xs, ys, peak)
}

/// FWHM of the peak at sample index `peak`.
pub fn fwhm_at_peak<T: Real>(xs: &[T], ys: &[T], peak: usize) -> Option<T> {
    let half = ys[peak] * real::<T>(0.5);
    if ys[peak] <= T::zero() {
        return None;
    }
    // walk left
    let mut left = None;
    for i in (0..peak).rev() {
        if ys[i] <= half {
            let f = (half - ys[i]) / (ys[i + 1] - ys[i]);
            left = Some(xs[i] + (xs[i + 1] - xs[i]) * f);
            break;
        }
    }
    let mut right = None;
    for i in (peak + 1)..xs.len() {
        if ys[i] <= half {
            let f = (ys[i - 1] - half) / (ys[i - 1] - ys[i]);
            right = Some(xs[i - 1] + (xs[i] - xs[i - 1]) * f);
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some(r - l),
        _ => None,
    }
}

/// Least-squares slope of log(y) against log(x).
pub fn log_log_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = real::<T>(xs.len() as f64);
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().fold(T::zero(), |a, b| a + *b) / n;
    let my = ly.iter().fold(T::zero(), |a, b| a + *b) / n;
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..xs.len() {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    num / den
}
