use super::AnalyticError;

const MAX_DEPTH: u32 = 50;

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.
///
/// Fails with [`AnalyticError::Quadrature`] if some subinterval still misses
/// its share of the tolerance at the maximum recursion depth; the error
/// carries the estimated tolerance actually reached.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, AnalyticError>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let mut achieved = 0.0;
    let mut met = true;
    let value = recurse(
        &f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        tol,
        MAX_DEPTH,
        &mut achieved,
        &mut met,
    );
    if met {
        Ok(value)
    } else {
        Err(AnalyticError::Quadrature {
            requested: tol,
            achieved,
        })
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    achieved: &mut f64,
    met: &mut bool,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        *achieved += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    if depth == 0 {
        *achieved += delta.abs() / 15.0;
        *met = false;
        return left + right + delta / 15.0;
    }
    recurse(
        f,
        a,
        m,
        fa,
        flm,
        fm,
        left,
        0.5 * tol,
        depth - 1,
        achieved,
        met,
    ) + recurse(
        f,
        m,
        b,
        fm,
        frm,
        fb,
        right,
        0.5 * tol,
        depth - 1,
        achieved,
        met,
    )
}
