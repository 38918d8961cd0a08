use crate::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Interval `[lo, hi]` on which a function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks `lo < hi`, `f(lo)·f(hi) ≤ 0`.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::NoSignChange { lo, hi });
        }
        let f_lo = f(lo);
        let f_hi = f(hi);
        if !f_lo.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: lo });
        }
        if !f_hi.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: hi });
        }
        if f_lo * f_hi > 0.0 {
            return Err(Error::NoSignChange { lo, hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Plain bisection until the bracket is narrower than `tol`.
pub fn bisect_root(f: impl Fn(f64) -> f64, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        f_hi,
    } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: mid });
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grows `[lo, lo + step·2^k]` until `f` changes sign, for at most
/// `max_doublings` doublings.
pub fn expand_bracket_upward(
    f: impl Fn(f64) -> f64,
    lo: f64,
    step: f64,
    max_doublings: usize,
) -> Result<Bracket> {
    let f_lo = f(lo);
    if !f_lo.is_finite() {
        return Err(Error::NonFiniteEvaluation { x: lo });
    }
    let mut width = step;
    let mut a = lo;
    let mut fa = f_lo;
    for _ in 0..=max_doublings {
        let b = lo + width;
        let fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: b });
        }
        if fa * fb <= 0.0 {
            return Ok(Bracket {
                lo: a,
                hi: b,
                f_lo: fa,
                f_hi: fb,
            });
        }
        a = b;
        fa = fb;
        width *= 2.0;
    }
    Err(Error::NoSignChange { lo, hi: lo + width })
}
