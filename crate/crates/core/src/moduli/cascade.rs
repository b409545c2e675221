//! Moduli spaces of coproduct sections in the twist region and the cascade
//! counts they produce.

use std::collections::BTreeMap;

use serde::Serialize;

use super::cutoff::CutoffProfile;
use super::ode::{shoot_c_infinity, solve_end_ode, EndOde, EndSide, SampleGrid};
use crate::error::{Error, Result};
use crate::floer::{interior_twist_space, TwistGenerator, TwistKind};
use crate::gf2::{F2Combination, F2LinearMap};
use crate::label::BasisLabel;
use crate::nocross::{same_slice_check, SameSliceVerdict};

/// Numbers read off the explicit section built for a circle of solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndConstruction {
    pub c_infinity: f64,
    /// Initial values used on the two negative ends.
    pub c_negative: [f64; 2],
    /// `x` at the far end of the sample grid, positive end first.
    pub limits: [f64; 3],
    /// `dx/ds` at the neck of each end.
    pub neck_slopes: [f64; 3],
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ModuliDescriptor {
    Empty {
        reason: String,
    },
    /// An S¹ of sections, the circle coming from rotating the vertical
    /// coordinate. `representative` is `(k∞, k1, k2)` after shifting by the
    /// deck translation `(m+n, m, n)` into range.
    Circle {
        representative: [u32; 3],
        construction: EndConstruction,
    },
}

impl ModuliDescriptor {
    pub fn is_circle(&self) -> bool {
        matches!(self, ModuliDescriptor::Circle { .. })
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Shift `(k∞, k1, k2)` by a multiple of `(m+n, m, n)` into `0 ≤ k1 ≤ m`,
/// `0 ≤ k2 ≤ n` with `k∞ ≥ 1`, taking the smallest such representative.
fn normalize(m: u32, n: u32, k1: i64, k2: i64) -> Option<[u32; 3]> {
    let (mi, ni) = (i64::from(m), i64::from(n));
    let lo = div_ceil(k1 - mi, mi).max(div_ceil(k2 - ni, ni));
    let hi = div_floor(k1, mi).min(div_floor(k2, ni));
    (lo..=hi).rev().find_map(|t| {
        let (a, b) = (k1 - t * mi, k2 - t * ni);
        (a + b >= 1).then(|| [(a + b) as u32, a as u32, b as u32])
    })
}

pub fn moduli_descriptor(m: u32, n: u32, k_inf: i64, k1: i64, k2: i64) -> Result<ModuliDescriptor> {
    moduli_descriptor_with(m, n, k_inf, k1, k2, CutoffProfile::default())
}

/// Sections of the coproduct cobordism from φ^{m+n} on slice `k∞` to φ^m on
/// slice `k1` and φ^n on slice `k2`, with slices taken mod the deck
/// translation.
pub fn moduli_descriptor_with(
    m: u32,
    n: u32,
    k_inf: i64,
    k1: i64,
    k2: i64,
    cutoff: CutoffProfile,
) -> Result<ModuliDescriptor> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    let rep = match moduli_shape(m, n, k_inf, k1, k2)? {
        Ok(rep) => rep,
        Err(reason) => return Ok(ModuliDescriptor::Empty { reason }),
    };
    let construction = construct(m, n, rep, cutoff)?;
    Ok(ModuliDescriptor::Circle {
        representative: rep,
        construction,
    })
}

/// The normalized representative when the moduli space is a circle, or the
/// reason it is empty. Skips the explicit construction.
pub fn moduli_shape(
    m: u32,
    n: u32,
    k_inf: i64,
    k1: i64,
    k2: i64,
) -> Result<std::result::Result<[u32; 3], String>> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    if k_inf != k1 + k2 {
        return Ok(Err(format!("classes do not balance: {k_inf} != {k1} + {k2}")));
    }
    Ok(normalize(m, n, k1, k2)
        .ok_or_else(|| "no deck translation puts both negative slices in range".to_string()))
}

/// Build the section end by end: the positive end starts at the bounded
/// value, the negative ends one unit above it.
fn construct(m: u32, n: u32, rep: [u32; 3], cutoff: CutoffProfile) -> Result<EndConstruction> {
    let grid = SampleGrid::standard(&cutoff);
    let top = EndOde::new(m + n, rep[0], EndSide::Positive, cutoff)?;
    let c_infinity = shoot_c_infinity(&top)?.c_infinity;
    let c_neg = c_infinity + 1.0;
    let ends = [
        (top, c_infinity),
        (EndOde::new(m, rep[1], EndSide::Negative, cutoff)?, c_neg),
        (EndOde::new(n, rep[2], EndSide::Negative, cutoff)?, c_neg),
    ];
    let mut limits = [0.0; 3];
    let mut neck_slopes = [0.0; 3];
    let mut max_residual: f64 = 0.0;
    for (i, (ode, c)) in ends.iter().enumerate() {
        let traj = solve_end_ode(ode, *c, &grid)?;
        limits[i] = *traj.x.last().expect("grid is nonempty");
        neck_slopes[i] = ode.slope_at(*c, ode.coordinate(0.0))?;
        max_residual = max_residual.max(traj.max_residual);
    }
    Ok(EndConstruction {
        c_infinity,
        c_negative: [c_neg, c_neg],
        limits,
        neck_slopes,
        max_residual,
    })
}

/// Product sections with ends on slices `i/m`, `j/n` and `k/(m+n)`: they
/// exist only when all three slices coincide.
pub fn product_twist_descriptor(m: u32, n: u32, i: u32, j: u32, k: u32) -> Result<ModuliDescriptor> {
    Ok(match same_slice_check(m, n, i, j, k)? {
        SameSliceVerdict::Allowed { x } => ModuliDescriptor::Empty {
            reason: format!(
                "only the constant family on x = {x}, which carries no rigid sections after fixing an end"
            ),
        },
        SameSliceVerdict::ExcludedByHomology { expected_k } => ModuliDescriptor::Empty {
            reason: format!("classes do not balance, need k = {expected_k}"),
        },
        SameSliceVerdict::ExcludedByEnergy { interval, .. } => ModuliDescriptor::Empty {
            reason: format!(
                "negative local energy on ({}, {})",
                interval.0, interval.1
            ),
        },
    })
}

/// Which end of the coproduct section is pinned to a point of its circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedEnd {
    Combined,
    First,
    Second,
}

impl FixedEnd {
    pub const ALL: [FixedEnd; 3] = [FixedEnd::Combined, FixedEnd::First, FixedEnd::Second];

    /// Generator kinds on (input, first output, second output) once this end
    /// is fixed. A fixed positive end lands on the elliptic orbit and a free
    /// one on the hyperbolic orbit; negative ends the other way round.
    pub fn assignment(self) -> (TwistKind, TwistKind, TwistKind) {
        use TwistKind::*;
        match self {
            FixedEnd::Combined => (Elliptic, Elliptic, Elliptic),
            FixedEnd::First => (Hyperbolic, Hyperbolic, Elliptic),
            FixedEnd::Second => (Hyperbolic, Elliptic, Hyperbolic),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CascadeSpec {
    pub m: u32,
    pub n: u32,
    pub k_inf: u32,
    pub k1: u32,
    pub k2: u32,
    pub fixed_end: FixedEnd,
}

impl CascadeSpec {
    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::OutOfRange("powers must be at least 1".into()));
        }
        if self.k1 > self.m || self.k2 > self.n || self.k_inf != self.k1 + self.k2 {
            return Err(Error::OutOfRange(format!("inconsistent slices {self:?}")));
        }
        Ok(())
    }
}

/// Mod-2 count of rigid cascades: one per circle of sections once an end is
/// fixed, none otherwise. Only the shape of the moduli space matters here;
/// the explicit sections are checked by [`moduli_descriptor`].
pub fn count_cascades(spec: &CascadeSpec) -> Result<u32> {
    spec.validate()?;
    let shape = moduli_shape(
        spec.m,
        spec.n,
        i64::from(spec.k_inf),
        i64::from(spec.k1),
        i64::from(spec.k2),
    )?;
    Ok(u32::from(shape.is_ok()))
}

/// The part of the coproduct on interior twist generators, assembled from
/// cascade counts: source is the interior twist part of HF(φ^{m+n}), target
/// the tensor product of the interior twist parts of HF(φ^m) and HF(φ^n).
pub fn coproduct_from_cascades(m: u32, n: u32) -> Result<F2LinearMap> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    let source = interior_twist_space(m + n);
    let target = interior_twist_space(m).tensor(&interior_twist_space(n));
    let mut images: BTreeMap<BasisLabel, F2Combination> = BTreeMap::new();
    for k1 in 1..m {
        for k2 in 1..n {
            let k_inf = k1 + k2;
            for fixed_end in FixedEnd::ALL {
                let count = count_cascades(&CascadeSpec {
                    m,
                    n,
                    k_inf,
                    k1,
                    k2,
                    fixed_end,
                })?;
                if count % 2 == 0 {
                    continue;
                }
                let (a, b, c) = fixed_end.assignment();
                let input = TwistGenerator { kind: a, slice: k_inf, power: m + n };
                let left: BasisLabel = TwistGenerator { kind: b, slice: k1, power: m }.into();
                let right: BasisLabel = TwistGenerator { kind: c, slice: k2, power: n }.into();
                images
                    .entry(input.into())
                    .or_default()
                    .add_label(left.tensor(&right));
            }
        }
    }
    F2LinearMap::from_fn(source, target, 0, |label| {
        Ok(images.get(label).cloned().unwrap_or_default())
    })
}
