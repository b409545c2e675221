//! The first-order ODE for the horizontal coordinate of a section on one
//! cylindrical end of the coproduct cobordism,
//!
//! ```text
//! dx/ds + k − coeff · χ(s) · x = 0,
//! ```
//!
//! where `coeff` is the power of φ on that end and `k` the slice index of the
//! limiting orbit. On the positive end only one initial value `c` keeps `x`
//! bounded; on negative ends every initial value converges to `k / coeff`.
//!
//! Solutions are evaluated from closed-form integral representations in the
//! depth coordinate `u ≥ 0` past the neck, so no step-by-step integration is
//! involved. Write `A(u) = coeff · ∫₀ᵘ χ`. Then
//!
//! * positive end: `x(u) = (c − c∞)·e^{A(u)} + k ∫_u^∞ e^{A(u)−A(v)} dv`;
//! * negative end: `x(u) = c·e^{−A(u)} + k ∫_0^u e^{A(v)−A(u)} dv`.
//!
//! Past the cut-off window `χ = 1` and the tails are integrated by hand.

use serde::{Deserialize, Serialize};

use super::cutoff::CutoffProfile;
use super::quadrature::integrate;
use crate::error::{Error, Result};

/// Absolute tolerance of every inner quadrature.
const QUAD_TOL: f64 = 1e-15;
/// Step of the finite-difference stencils used to measure residuals.
const FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndSide {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndOde {
    pub coeff: u32,
    pub k: u32,
    pub side: EndSide,
    pub cutoff: CutoffProfile,
    /// Largest admissible residual, relative to `max(1, |x|)`.
    pub tolerance: f64,
}

impl EndOde {
    pub fn new(coeff: u32, k: u32, side: EndSide, cutoff: CutoffProfile) -> Result<Self> {
        if coeff == 0 {
            return Err(Error::OutOfRange("the end power must be at least 1".into()));
        }
        if k > coeff {
            return Err(Error::OutOfRange(format!(
                "slice {k} exceeds the end power {coeff}"
            )));
        }
        Ok(Self {
            coeff,
            k,
            side,
            cutoff,
            tolerance: 1e-9,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn a(&self) -> f64 {
        f64::from(self.coeff)
    }

    fn kf(&self) -> f64 {
        f64::from(self.k)
    }

    fn width(&self) -> f64 {
        self.cutoff.width
    }

    /// The limit `k / coeff` of bounded solutions.
    pub fn limit(&self) -> f64 {
        self.kf() / self.a()
    }

    /// `A(u)` for `u ≥ 0`.
    pub fn exponent(&self, u: f64) -> Result<f64> {
        let w = self.width();
        let inside = u.min(w);
        let (head, _) = integrate(|v| self.cutoff.at_depth(v), 0.0, inside, QUAD_TOL)?;
        Ok(self.a() * (head + (u - w).max(0.0)))
    }

    /// Depth past the neck of the end coordinate `s`.
    pub fn depth(&self, s: f64) -> f64 {
        match self.side {
            EndSide::Positive => s - self.cutoff.boundary,
            EndSide::Negative => -self.cutoff.boundary - s,
        }
    }

    pub fn coordinate(&self, u: f64) -> f64 {
        match self.side {
            EndSide::Positive => self.cutoff.boundary + u,
            EndSide::Negative => -self.cutoff.boundary - u,
        }
    }

    /// `k ∫_u^∞ e^{A(u)−A(v)} dv`, the bounded particular solution on the
    /// positive end.
    fn positive_particular(&self, u: f64) -> Result<f64> {
        let w = self.width();
        if u >= w {
            return Ok(self.limit());
        }
        let au = self.exponent(u)?;
        let aw = self.exponent(w)?;
        let mut failure = None;
        let (window, _) = integrate(
            |v| match self.exponent(v) {
                Ok(av) => (au - av).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            u,
            w,
            QUAD_TOL,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(self.kf() * (window + (au - aw).exp() / self.a()))
    }

    /// `∫_0^u e^{A(v)−A(u)} dv` for the negative end.
    fn negative_particular(&self, u: f64) -> Result<f64> {
        let w = self.width();
        let inside = u.min(w);
        let a_in = self.exponent(inside)?;
        let mut failure = None;
        let (window, _) = integrate(
            |v| match self.exponent(v) {
                Ok(av) => (av - a_in).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            0.0,
            inside,
            QUAD_TOL,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        if u <= w {
            return Ok(window);
        }
        let decay = (-self.a() * (u - w)).exp();
        Ok(window * decay + (1.0 - decay) / self.a())
    }

    /// The initial value at the neck for which the positive-end solution
    /// stays bounded.
    pub fn c_infinity(&self) -> Result<f64> {
        self.positive_particular(0.0)
    }

    /// Solution with initial value `c` at the neck, evaluated at depth `u`.
    /// Inside the neck (`u < 0`) the cut-off vanishes and `x` moves with
    /// slope `−k` in `s`.
    pub fn value_at_depth(&self, c: f64, u: f64) -> Result<f64> {
        if u < 0.0 {
            return Ok(match self.side {
                EndSide::Positive => c - self.kf() * u,
                EndSide::Negative => c + self.kf() * u,
            });
        }
        match self.side {
            EndSide::Positive => {
                let c_inf = self.c_infinity()?;
                let grow = if c == c_inf { 0.0 } else { (c - c_inf) * self.exponent(u)?.exp() };
                Ok(grow + self.positive_particular(u)?)
            }
            EndSide::Negative => {
                Ok(c * (-self.exponent(u)?).exp() + self.kf() * self.negative_particular(u)?)
            }
        }
    }

    pub fn value_at(&self, c: f64, s: f64) -> Result<f64> {
        self.value_at_depth(c, self.depth(s))
    }

    /// `dx/ds` by five-point differences, one-sided near the kinks of the
    /// cut-off so the stencil stays on one smooth piece.
    pub fn slope_at(&self, c: f64, s: f64) -> Result<f64> {
        let u = self.depth(s);
        let h = FD_STEP;
        let kinks = [0.0, self.width()];
        // Samples within rounding distance of a kink count as sitting on it.
        let snap = 1e-9;
        let crosses_left = kinks.iter().any(|&k| u - 2.0 * h < k && k <= u + snap);
        let crosses_right = kinks.iter().any(|&k| u + snap < k && k < u + 2.0 * h);
        let f = |du: f64| self.value_at_depth(c, u + du);
        let du = if crosses_left {
            (-25.0 * f(0.0)? + 48.0 * f(h)? - 36.0 * f(2.0 * h)? + 16.0 * f(3.0 * h)?
                - 3.0 * f(4.0 * h)?)
                / (12.0 * h)
        } else if crosses_right {
            (25.0 * f(0.0)? - 48.0 * f(-h)? + 36.0 * f(-2.0 * h)? - 16.0 * f(-3.0 * h)?
                + 3.0 * f(-4.0 * h)?)
                / (12.0 * h)
        } else {
            (f(-2.0 * h)? - 8.0 * f(-h)? + 8.0 * f(h)? - f(2.0 * h)?) / (12.0 * h)
        };
        Ok(match self.side {
            EndSide::Positive => du,
            EndSide::Negative => -du,
        })
    }

    /// `dx/ds + k − coeff·χ·x` at `s`.
    pub fn residual_at(&self, c: f64, s: f64) -> Result<f64> {
        let x = self.value_at(c, s)?;
        let chi = self.cutoff.at_depth(self.depth(s));
        Ok(self.slope_at(c, s)? + self.kf() - self.a() * chi * x)
    }

    fn scaled(&self, residual: f64, x: f64) -> f64 {
        residual.abs() / x.abs().max(1.0)
    }
}

/// Sample depths `u` from `start` to `end` with spacing `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl SampleGrid {
    /// Half a unit into the neck through four units past the cut-off window.
    pub fn standard(cutoff: &CutoffProfile) -> Self {
        Self {
            start: -0.5,
            end: cutoff.width + 4.0,
            step: 0.01,
        }
    }

    pub fn depths(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0 && self.end >= self.start) {
            return Err(Error::OutOfRange(format!("bad sample grid {self:?}")));
        }
        let count = ((self.end - self.start) / self.step).round() as usize;
        Ok((0..=count).map(|i| self.start + i as f64 * self.step).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub side: EndSide,
    pub c: f64,
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub residual: Vec<f64>,
    pub max_residual: f64,
}

/// Sample the solution with initial value `c` and check its residual
/// against the tolerance.
pub fn solve_end_ode(ode: &EndOde, c: f64, grid: &SampleGrid) -> Result<Trajectory> {
    let mut t = Trajectory {
        side: ode.side,
        c,
        s: Vec::new(),
        x: Vec::new(),
        residual: Vec::new(),
        max_residual: 0.0,
    };
    for u in grid.depths()? {
        let s = ode.coordinate(u);
        let x = ode.value_at(c, s)?;
        let r = ode.residual_at(c, s)?;
        t.max_residual = t.max_residual.max(ode.scaled(r, x));
        t.s.push(s);
        t.x.push(x);
        t.residual.push(r);
    }
    if t.max_residual > ode.tolerance {
        return Err(Error::Numeric {
            what: format!("end ODE residual (coeff {}, k {})", ode.coeff, ode.k),
            achieved: t.max_residual,
            required: ode.tolerance,
        });
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootResult {
    pub c_infinity: f64,
    pub limit: f64,
    /// `|x − k/coeff|` at the far end of the standard grid.
    pub deviation: f64,
}

/// The bounded initial value on the positive end, checked against the limit.
pub fn shoot_c_infinity(ode: &EndOde) -> Result<ShootResult> {
    if ode.side != EndSide::Positive {
        return Err(Error::OutOfRange("shooting applies to the positive end".into()));
    }
    let c_infinity = ode.c_infinity()?;
    let far = SampleGrid::standard(&ode.cutoff).end;
    let deviation = (ode.value_at_depth(c_infinity, far)? - ode.limit()).abs();
    if deviation > ode.tolerance {
        return Err(Error::Numeric {
            what: "shooting constant".into(),
            achieved: deviation,
            required: ode.tolerance,
        });
    }
    Ok(ShootResult {
        c_infinity,
        limit: ode.limit(),
        deviation,
    })
}

/// Independent estimate of the bounded initial value: bisect on `c` until
/// `x(horizon) = k/coeff`, with `x` from the unstable forward formula
/// `e^{A(u)} (c − k ∫_0^u e^{−A})`.
pub fn bisect_c_infinity(ode: &EndOde, horizon: f64) -> Result<f64> {
    if ode.side != EndSide::Positive || horizon <= 0.0 {
        return Err(Error::OutOfRange(
            "bisection needs the positive end and a positive horizon".into(),
        ));
    }
    let mut failure = None;
    let (drift, _) = integrate(
        |v| match ode.exponent(v) {
            Ok(a) => (-a).exp(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        horizon,
        QUAD_TOL,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let grow = ode.exponent(horizon)?.exp();
    let target = ode.limit();
    let f = |c: f64| grow * (c - ode.kf() * drift) - target;
    let mut lo = -1.0;
    let mut hi = ode.kf() * (ode.width() + 1.0) + 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign of the vertical coordinate in the section ansatz `y = ∓k·t + y₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzSign {
    /// `y = −k·t + y₀`, the one that solves the equations.
    Descending,
    /// `y = +k·t + y₀`.
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzReport {
    /// `max |∂x/∂t + ∂y/∂s|`.
    pub first_equation: f64,
    /// `max |∂y/∂t − ∂x/∂s + coeff·χ·x|`.
    pub second_equation: f64,
    /// Largest change in the second equation when `y₀` is shifted.
    pub shift_difference: f64,
}

/// Plug `(x(s), y(s, t))` into the two perturbed Cauchy–Riemann equations
/// on the sample grid, at four values of `t`.
pub fn verify_section_ansatz(
    ode: &EndOde,
    c: f64,
    sign: AnsatzSign,
    grid: &SampleGrid,
) -> Result<AnsatzReport> {
    let slope = match sign {
        AnsatzSign::Descending => -ode.kf(),
        AnsatzSign::Ascending => ode.kf(),
    };
    let y = |_s: f64, t: f64, y0: f64| slope * t + y0;
    let h = FD_STEP;
    let d_t = |s: f64, t: f64, y0: f64| {
        (y(s, t - 2.0 * h, y0) - 8.0 * y(s, t - h, y0) + 8.0 * y(s, t + h, y0)
            - y(s, t + 2.0 * h, y0))
            / (12.0 * h)
    };
    let d_s = |s: f64, t: f64, y0: f64| {
        (y(s - 2.0 * h, t, y0) - 8.0 * y(s - h, t, y0) + 8.0 * y(s + h, t, y0)
            - y(s + 2.0 * h, t, y0))
            / (12.0 * h)
    };
    let mut report = AnsatzReport {
        first_equation: 0.0,
        second_equation: 0.0,
        shift_difference: 0.0,
    };
    for u in grid.depths()? {
        let s = ode.coordinate(u);
        let x = ode.value_at(c, s)?;
        let dx_ds = ode.slope_at(c, s)?;
        let chi = ode.cutoff.at_depth(u);
        for t in [0.0, 0.25, 0.5, 0.75] {
            // x does not depend on t.
            let dx_dt = 0.0;
            let first = dx_dt + d_s(s, t, 0.3);
            let second = |y0| d_t(s, t, y0) - dx_ds + ode.a() * chi * x;
            let (base, shifted) = (second(0.3), second(0.55));
            report.first_equation = report.first_equation.max(first.abs());
            report.second_equation = report.second_equation.max(ode.scaled(base, x));
            report.shift_difference = report.shift_difference.max((base - shifted).abs());
        }
    }
    Ok(report)
}
