//! Scalar root bracketing and unimodal maximization.

/// Bisection on `[lo, hi]` where `pred(lo)` holds and `pred(hi)` does not.
///
/// Returns the final `(lo, hi)` pair with `hi - lo <= tol`; `pred` still holds
/// at the returned `lo` and fails at `hi`.
pub fn bisect_boundary<F>(mut lo: f64, mut hi: f64, tol: f64, pred: F) -> (f64, f64)
where
    F: Fn(f64) -> bool,
{
    debug_assert!(lo <= hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Bisection for a sign change of `f` on `[lo, hi]`, returning the midpoint of
/// the final bracket. Requires `f(lo)` and `f(hi)` of opposite sign (or zero).
pub fn bisect_root<F>(mut lo: f64, mut hi: f64, tol: f64, f: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns the abscissa of the maximum once the bracket is narrower than `tol`.
pub fn golden_section_max<F>(mut a: f64, mut b: f64, tol: f64, f: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
