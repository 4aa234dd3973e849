//! Bracketed golden-section search.

/// `(3 - sqrt 5) / 2`, the fraction of the bracket at which interior points sit.
const INV_PHI_SQ: f64 = 0.381_966_011_250_105_1;

/// Location and value of an extremum found by [`golden_section_max`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Maximizes `f` on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// `f` is assumed unimodal on the bracket. The returned value is the best
/// evaluation seen, including both endpoints, so a monotone `f` still
/// reports its boundary maximum.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Extremum {
    assert!(lo <= hi && tol > 0.0, "invalid bracket [{lo}, {hi}] / tol {tol}");
    let mut best = Extremum { x: lo, value: f(lo) };
    let consider = |x: f64, v: f64, best: &mut Extremum| {
        if v > best.value {
            *best = Extremum { x, value: v };
        }
    };
    let fhi = f(hi);
    consider(hi, fhi, &mut best);

    let (mut a, mut b) = (lo, hi);
    let mut x1 = a + INV_PHI_SQ * (b - a);
    let mut x2 = b - INV_PHI_SQ * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_PHI_SQ * (b - a);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - INV_PHI_SQ * (b - a);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
    }
    best
}

/// Minimizing counterpart of [`golden_section_max`].
pub fn golden_section_min(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Extremum {
    let e = golden_section_max(|x| -f(x), lo, hi, tol);
    Extremum {
        x: e.x,
        value: -e.value,
    }
}

/// Global minimization on `[lo, hi]`: a uniform scan of `cells` intervals
/// locates the best grid point, then golden-section refines inside the two
/// cells around it.
pub fn scan_then_golden_min(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, cells: usize, tol: f64) -> Extremum {
    assert!(cells >= 2);
    let h = (hi - lo) / cells as f64;
    let mut best_k = 0;
    let mut best_v = f64::INFINITY;
    for k in 0..=cells {
        let v = f(lo + h * k as f64);
        if v < best_v {
            best_v = v;
            best_k = k;
        }
    }
    let a = lo + h * best_k.saturating_sub(1) as f64;
    let b = (lo + h * (best_k + 1) as f64).min(hi);
    let refined = golden_section_min(&mut f, a, b, tol);
    if refined.value <= best_v {
        refined
    } else {
        Extremum {
            x: lo + h * best_k as f64,
            value: best_v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_maximum() {
        let e = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, -1.0, 1.0, 1e-10);
        assert!((e.x - 0.3).abs() < 1e-8);
        assert!((e.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn monotone_function_reports_endpoint() {
        let e = golden_section_max(|x| x, 0.0, 1.0, 1e-9);
        assert_eq!(e.x, 1.0);
        let e = golden_section_min(|x| x, 0.0, 1.0, 1e-9);
        assert_eq!(e.x, 0.0);
    }

    #[test]
    fn scan_escapes_local_minimum() {
        // local min near -2, global min near 3
        let f = |x: f64| ((x + 2.0).powi(2) - 0.5).min((x - 3.0).powi(2) - 1.0);
        let e = scan_then_golden_min(f, -10.0, 10.0, 40, 1e-10);
        assert!((e.x - 3.0).abs() < 1e-6);
        assert!((e.value + 1.0).abs() < 1e-12);
    }
}
