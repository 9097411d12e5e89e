//! Bracketed root finding and golden-section maximization.

/// Inverse golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Finds the crossing of an increasing-through-zero function inside
/// `[lo, hi]` where `g(lo) < 0 <= g(hi)`. Bisection safeguarded with Illinois
/// false-position steps; every iterate stays inside the current bracket.
pub fn bracket_root<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut glo = g(lo);
    let mut ghi = g(hi);
    if glo >= 0.0 {
        return lo;
    }
    if ghi < 0.0 {
        return hi;
    }
    let mut side = 0i8;
    for it in 0..200 {
        if hi - lo <= tol {
            break;
        }
        // Alternate an interpolation step with a plain bisection step every
        // fourth iteration so the bracket always shrinks geometrically.
        let mut x = if it % 4 == 3 || !(ghi - glo).is_finite() || ghi == glo {
            0.5 * (lo + hi)
        } else {
            (lo * ghi - hi * glo) / (ghi - glo)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let gx = g(x);
        if gx == 0.0 {
            return x;
        }
        if gx < 0.0 {
            lo = x;
            glo = gx;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            ghi = gx;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
        if gx.abs() <= f64::EPSILON * 4.0 {
            return x;
        }
    }
    0.5 * (lo + hi)
}

/// Maximizes a unimodal function on `[a, b]` by golden-section search and
/// returns `(argmax, max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
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
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
