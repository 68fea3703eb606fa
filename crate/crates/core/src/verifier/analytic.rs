//! Grid checks of three real inequalities:
//!
//! * `-ln(1 - x) <= x + x^2` on `[0, 1/2]`
//! * `f'(x) >= f(x) / (2 (sqrt x + 1))` for `f(x) = (1 + x^(-1/2))^x` on
//!   `[1, X]`, with the closed-form derivative cross-checked against a
//!   central difference
//! * `f(x) >= 2^sqrt(x)` on `[1, X]`

use rug::ops::Pow;
use rug::Float;

use super::report::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::par;
use crate::sequence::check_precision;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub log_points: usize,
    pub log_max: f64,
    pub growth_points: usize,
    pub growth_max: f64,
    pub precision_bits: u32,
    /// Allowed relative gap between closed-form and finite-difference
    /// derivatives.
    pub derivative_rel_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            log_points: 10_000,
            log_max: 0.5,
            growth_points: 1_000,
            growth_max: 1e4,
            precision_bits: 128,
            derivative_rel_tol: 1e-6,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.log_points < 2 || self.growth_points < 2 {
            return Err(Error::InvalidGrid("grids need at least two points".into()));
        }
        if !(self.log_max > 0.0 && self.log_max <= 0.5) {
            return Err(Error::InvalidGrid("log grid must lie in [0, 1/2]".into()));
        }
        if !(self.growth_max.is_finite() && self.growth_max > 1.0) {
            return Err(Error::InvalidGrid("growth grid upper end must exceed 1".into()));
        }
        if !(self.derivative_rel_tol > 0.0) {
            return Err(Error::InvalidGrid("derivative tolerance must be positive".into()));
        }
        check_precision(self.precision_bits)
            .map_err(|e| Error::InvalidGrid(e.to_string()))?;
        Ok(())
    }
}

fn grid(lo: f64, hi: f64, points: usize, i: usize) -> f64 {
    if i + 1 == points {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (points - 1) as f64
    }
}

/// `(-ln(1 - x), x + x^2)`
pub fn log_bound_sides(x: f64, prec: u32) -> (Float, Float) {
    let xf = Float::with_val(prec, x);
    let lhs = -Float::with_val(prec, -&xf).ln_1p();
    let rhs = Float::with_val(prec, &xf * &xf) + &xf;
    (lhs, rhs)
}

/// `f(x) = (1 + x^(-1/2))^x`
pub fn growth_fn(x: &Float) -> Float {
    let prec = x.prec();
    let inv_sqrt = Float::with_val(prec, x.sqrt_ref()).recip();
    let ln_f = Float::with_val(prec, inv_sqrt.ln_1p() * x);
    ln_f.exp()
}

/// `f'(x) = f(x) (ln(1 + x^(-1/2)) - 1/(2 (sqrt x + 1)))`
pub fn growth_derivative(x: &Float) -> Float {
    let prec = x.prec();
    let s = Float::with_val(prec, x.sqrt_ref());
    let l = Float::with_val(prec, s.clone().recip()).ln_1p();
    let corr = Float::with_val(prec, (s + 1u32) * 2u32).recip();
    growth_fn(x) * (l - corr)
}

fn central_difference(x: &Float) -> Float {
    let prec = x.prec();
    let h = Float::with_val(prec, x * Float::with_val(prec, Float::u_exp(1, -(prec as i32) / 3)));
    let up = growth_fn(&Float::with_val(prec, x + &h));
    let down = growth_fn(&Float::with_val(prec, x - &h));
    Float::with_val(prec, up - down) / (h * 2u32)
}

struct GrowthPoint {
    x: f64,
    /// `f' (2 (sqrt x + 1)) / f - 1`
    derivative_margin: f64,
    derivative_rel_diff: f64,
    /// `ln f(x) - sqrt(x) ln 2`
    power_margin: f64,
}

fn growth_point(x: f64, prec: u32) -> GrowthPoint {
    let xf = Float::with_val(prec, x);
    let f = growth_fn(&xf);
    let d = growth_derivative(&xf);
    let fd = central_difference(&xf);
    let s = Float::with_val(prec, xf.sqrt_ref());
    let floor = Float::with_val(prec, &f / Float::with_val(prec, (s.clone() + 1u32) * 2u32));
    let derivative_margin = Float::with_val(prec, &d / &floor).to_f64() - 1.0;
    let rel = Float::with_val(prec, &d - &fd).abs() / Float::with_val(prec, d.abs_ref());
    let two = Float::with_val(prec, 2);
    let pow2 = two.pow(&s);
    let power_margin = Float::with_val(prec, f.ln_ref()).to_f64() - Float::with_val(prec, pow2.ln_ref()).to_f64();
    GrowthPoint {
        x,
        derivative_margin,
        derivative_rel_diff: rel.to_f64(),
        power_margin,
    }
}

pub fn check_analytic_inequalities(spec: &GridSpec) -> Result<CheckReport> {
    spec.validate()?;
    let prec = spec.precision_bits;
    // rounding slack for comparisons that hold with equality at an endpoint
    let slack = f64::powi(2.0, -(prec as i32 - 8));
    let mut r = CheckReport::new("analytic-inequalities", "grid", spec.derivative_rel_tol);

    let log_margins = par::map_range(spec.log_points, |i| {
        let x = grid(0.0, spec.log_max, spec.log_points, i);
        let (lhs, rhs) = log_bound_sides(x, prec);
        (x, Float::with_val(prec, &rhs - &lhs).to_f64())
    });
    let mut log_min = f64::INFINITY;
    for (i, &(x, m)) in log_margins.iter().enumerate() {
        log_min = log_min.min(m);
        if m < -slack {
            r.fail(Witness::new(i, &[("x", x), ("margin", m)]));
        }
    }
    r.measure("log_bound_points", spec.log_points as f64);
    r.measure("log_bound_min_margin", log_min);

    let growth = par::map_range(spec.growth_points, |i| {
        growth_point(grid(1.0, spec.growth_max, spec.growth_points, i), prec)
    });
    let mut deriv_min = f64::INFINITY;
    let mut rel_max: f64 = 0.0;
    let mut power_min = f64::INFINITY;
    for (i, g) in growth.iter().enumerate() {
        deriv_min = deriv_min.min(g.derivative_margin);
        rel_max = rel_max.max(g.derivative_rel_diff);
        power_min = power_min.min(g.power_margin);
        if g.derivative_margin < -slack {
            r.fail(Witness::new(i, &[("x", g.x), ("derivative_margin", g.derivative_margin)]));
        }
        if g.derivative_rel_diff > spec.derivative_rel_tol {
            r.fail(Witness::new(i, &[("x", g.x), ("derivative_rel_diff", g.derivative_rel_diff)]));
        }
        if g.power_margin < -slack * (1.0 + g.x.sqrt()) {
            r.fail(Witness::new(i, &[("x", g.x), ("power_margin", g.power_margin)]));
        }
    }
    r.measure("growth_points", spec.growth_points as f64);
    r.measure("derivative_min_margin", deriv_min);
    r.measure("derivative_max_rel_diff", rel_max);
    r.measure("power_bound_min_margin", power_min);
    Ok(r)
}
