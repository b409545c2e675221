//! Exhaustive check that no section of the product, coproduct or cylinder
//! cobordism crosses a cut-off slab of the twist region.
//!
//! The twist region is cut at four levels: just left and right of `x = 0`
//! and of `x = 1`. A section restricted to the region between levels carries
//! an H₁ class `(p, q1, q2)` of the mapping torus of the twist region, where
//! `p` counts the fiber direction and `q1`, `q2` the circle factors. Ends of
//! the section add or remove orbit classes between consecutive levels, and
//! each nonempty level has to satisfy a zero-wrapping equation and the local
//! energy inequality. The search fixes the free class at one anchor level,
//! propagates it through the slabs, and reports the first constraint each
//! configuration violates.

use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct H1ClassXD {
    pub p: i64,
    pub q1: i64,
    pub q2: i64,
}

impl H1ClassXD {
    pub const ZERO: H1ClassXD = H1ClassXD { p: 0, q1: 0, q2: 0 };

    pub fn new(p: i64, q1: i64, q2: i64) -> Self {
        Self { p, q1, q2 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for H1ClassXD {
    type Output = H1ClassXD;
    fn add(self, o: H1ClassXD) -> H1ClassXD {
        H1ClassXD::new(self.p + o.p, self.q1 + o.q1, self.q2 + o.q2)
    }
}

impl Sub for H1ClassXD {
    type Output = H1ClassXD;
    fn sub(self, o: H1ClassXD) -> H1ClassXD {
        self + (-o)
    }
}

impl Neg for H1ClassXD {
    type Output = H1ClassXD;
    fn neg(self) -> H1ClassXD {
        H1ClassXD::new(-self.p, -self.q1, -self.q2)
    }
}

/// `p + x·(m·q1 + n·q2)`, the flux of a class through the slice at `x`.
pub fn local_energy_lhs(c: H1ClassXD, x: Rational64, m: i64, n: i64) -> Rational64 {
    Rational64::from_integer(c.p) + x * Rational64::from_integer(m * c.q1 + n * c.q2)
}

/// Which end of the cobordism an orbit sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndLabel {
    /// The end asymptotic to φ^m.
    First,
    /// The end asymptotic to φ^n.
    Second,
    /// The end asymptotic to φ^{m+n}.
    Combined,
}

/// H₁ class of the orbit on slice `slice` of the given end.
pub fn orbit_class(end: EndLabel, slice: u32, m: u32, n: u32) -> Result<H1ClassXD> {
    let limit = match end {
        EndLabel::First => m,
        EndLabel::Second => n,
        EndLabel::Combined => m + n,
    };
    if slice > limit {
        return Err(Error::OutOfRange(format!(
            "slice {slice} on an end with {limit} slices"
        )));
    }
    let s = -i64::from(slice);
    Ok(match end {
        EndLabel::First => H1ClassXD::new(s, 1, 0),
        EndLabel::Second => H1ClassXD::new(s, 0, 1),
        EndLabel::Combined => H1ClassXD::new(s, 1, 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CobordismMode {
    Product,
    Coproduct,
    /// The trivial cylinder over φ^m, used for the differential.
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingScenario {
    pub mode: CobordismMode,
    pub m: u32,
    pub n: u32,
    /// Bound on `|q1|`, `|q2|` at every level.
    pub bound: i64,
    /// Replace the strict sign condition at `p + x·S = 0` by a weak one.
    pub relaxed: bool,
}

const LEVEL_NAMES: [&str; 4] = ["-eps1", "+eps1", "1-eps2", "1+eps2"];

/// `(x, sign)` for each level: on which side of `x = 0` or `x = 1` it lies.
const LEVEL_SHAPE: [(i64, i64); 4] = [(0, -1), (0, 1), (1, -1), (1, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Branch {
    name: &'static str,
    nonempty: [bool; 4],
    /// Level whose class is the free variable.
    anchor: usize,
}

const BRANCHES: [Branch; 7] = [
    Branch {
        name: "left crossing, right untouched",
        nonempty: [true, true, false, false],
        anchor: 1,
    },
    Branch {
        name: "left crossing, meets 1-eps2 only",
        nonempty: [true, true, true, false],
        anchor: 1,
    },
    Branch {
        name: "left crossing, meets 1+eps2 only",
        nonempty: [true, true, false, true],
        anchor: 1,
    },
    Branch {
        name: "left crossing and right crossing",
        nonempty: [true, true, true, true],
        anchor: 1,
    },
    Branch {
        name: "right crossing, left untouched",
        nonempty: [false, false, true, true],
        anchor: 2,
    },
    Branch {
        name: "right crossing, meets +eps1 only",
        nonempty: [false, true, true, true],
        anchor: 2,
    },
    Branch {
        name: "right crossing, meets -eps1 only",
        nonempty: [true, false, true, true],
        anchor: 2,
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct EndSpec {
    label: EndLabel,
    sign: EndSign,
    slices: u32,
}

/// Where one end of the section lies: outside the twist region, or on a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndPlacement {
    pub end: EndLabel,
    pub sign: EndSign,
    /// `None` when the end lies outside the twist region.
    pub slice: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingConfig {
    pub ends: Vec<EndPlacement>,
    /// Class at each level, `None` where the branch leaves the level empty.
    pub levels: [Option<H1ClassXD>; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintTally {
    pub constraint: String,
    pub count: u64,
    pub example: CrossingConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchSummary {
    pub branch: String,
    pub examined: u64,
    /// Configurations whose propagated classes leave the search box.
    pub out_of_box: u64,
    pub eliminated: Vec<ConstraintTally>,
    pub survivors: u64,
}

/// One line of the certificate: every configuration in `branch` that first
/// fails `failing_constraint`, with a representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub branch: String,
    pub failing_constraint: String,
    pub count: u64,
    pub config: CrossingConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingCertificate {
    pub scenario: CrossingScenario,
    pub examined: u64,
    pub out_of_box: u64,
    pub branches: Vec<BranchSummary>,
    pub survivor_count: u64,
    /// The first few surviving configurations.
    pub survivors: Vec<CrossingConfig>,
}

const SURVIVOR_SAMPLE: usize = 16;

impl CrossingCertificate {
    pub fn is_empty(&self) -> bool {
        self.survivor_count == 0
    }

    pub fn entries(&self) -> Vec<CertificateEntry> {
        self.branches
            .iter()
            .flat_map(|b| {
                b.eliminated.iter().map(move |t| CertificateEntry {
                    branch: b.branch.clone(),
                    failing_constraint: t.constraint.clone(),
                    count: t.count,
                    config: t.example.clone(),
                })
            })
            .collect()
    }
}

fn ends_of(sc: &CrossingScenario) -> Vec<EndSpec> {
    let (m, n) = (sc.m, sc.n);
    let e = |label, sign, slices| EndSpec { label, sign, slices };
    match sc.mode {
        CobordismMode::Product => vec![
            e(EndLabel::First, EndSign::Positive, m),
            e(EndLabel::Second, EndSign::Positive, n),
            e(EndLabel::Combined, EndSign::Negative, m + n),
        ],
        CobordismMode::Coproduct => vec![
            e(EndLabel::Combined, EndSign::Positive, m + n),
            e(EndLabel::First, EndSign::Negative, m),
            e(EndLabel::Second, EndSign::Negative, n),
        ],
        CobordismMode::Cylinder => vec![
            e(EndLabel::First, EndSign::Positive, m),
            e(EndLabel::First, EndSign::Negative, m),
        ],
    }
}

/// Slab 0 lies around `x = 0`, slab 1 inside the twist region, slab 2
/// around `x = 1`.
fn slab_of(slice: u32, slices: u32) -> usize {
    if slice == 0 {
        0
    } else if slice == slices {
        2
    } else {
        1
    }
}

/// Net class change `neg − pos` in each slab for one choice of placements.
fn slab_jumps(sc: &CrossingScenario, ends: &[EndPlacement], specs: &[EndSpec]) -> [H1ClassXD; 3] {
    let mut jumps = [H1ClassXD::ZERO; 3];
    for (p, spec) in ends.iter().zip(specs) {
        let Some(slice) = p.slice else { continue };
        let class = orbit_class(spec.label, slice, sc.m, sc.n).expect("slice within range");
        let slab = slab_of(slice, spec.slices);
        jumps[slab] = match spec.sign {
            EndSign::Negative => jumps[slab] + class,
            EndSign::Positive => jumps[slab] - class,
        };
    }
    jumps
}

fn placements(specs: &[EndSpec]) -> Vec<Vec<EndPlacement>> {
    let mut out: Vec<Vec<EndPlacement>> = vec![Vec::new()];
    for spec in specs {
        let options: Vec<Option<u32>> = std::iter::once(None)
            .chain((0..=spec.slices).map(Some))
            .collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&slice| {
                    let mut v = prefix.clone();
                    v.push(EndPlacement {
                        end: spec.label,
                        sign: spec.sign,
                        slice,
                    });
                    v
                })
            })
            .collect();
    }
    out
}

/// A failed constraint: the level and which of the three checks failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Failure {
    EmptyNonzero(usize),
    Wrapping(usize),
    Energy(usize),
}

impl Failure {
    fn index(self) -> usize {
        match self {
            Failure::EmptyNonzero(l) => l,
            Failure::Wrapping(l) => 4 + l,
            Failure::Energy(l) => 8 + l,
        }
    }

    fn describe(index: usize) -> String {
        let name = LEVEL_NAMES[index % 4];
        match index / 4 {
            0 => format!("empty level {name} carries a nonzero class"),
            1 => format!("zero wrapping at {name}"),
            _ => format!("local energy at {name}"),
        }
    }
}

const FAILURE_KINDS: usize = 12;

enum Outcome {
    OutOfBox,
    Fails(Failure),
    Survives,
}

fn evaluate(
    sc: &CrossingScenario,
    branch: &Branch,
    jumps: &[H1ClassXD; 3],
    anchor: H1ClassXD,
) -> ([H1ClassXD; 4], Outcome) {
    let mut levels = [H1ClassXD::ZERO; 4];
    levels[branch.anchor] = anchor;
    for i in branch.anchor + 1..4 {
        levels[i] = levels[i - 1] + jumps[i - 1];
    }
    for i in (0..branch.anchor).rev() {
        levels[i] = levels[i + 1] - jumps[i];
    }
    if levels.iter().any(|c| c.q1.abs() > sc.bound || c.q2.abs() > sc.bound) {
        return (levels, Outcome::OutOfBox);
    }
    let (m, n) = (i64::from(sc.m), i64::from(sc.n));
    for (i, c) in levels.iter().enumerate() {
        if !branch.nonempty[i] {
            if !c.is_zero() {
                return (levels, Outcome::Fails(Failure::EmptyNonzero(i)));
            }
            continue;
        }
        let (x0, sigma) = LEVEL_SHAPE[i];
        let s = m * c.q1 + n * c.q2;
        if c.p + x0 * s != 0 {
            return (levels, Outcome::Fails(Failure::Wrapping(i)));
        }
        // The wrapping equation leaves `p + x0·S = 0`, so only the sign rule remains.
        let ok = if sc.relaxed { sigma * s >= 0 } else { sigma * s > 0 };
        if !ok {
            return (levels, Outcome::Fails(Failure::Energy(i)));
        }
    }
    (levels, Outcome::Survives)
}

#[derive(Debug, Clone, Default)]
struct Partial {
    examined: u64,
    out_of_box: u64,
    survivors: u64,
    /// Count and first example per failure index.
    tallies: [Option<(u64, CrossingConfig)>; FAILURE_KINDS],
}

#[derive(Debug, Clone, Default)]
struct Accumulator {
    branches: Vec<Partial>,
    survivor_sample: Vec<CrossingConfig>,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            branches: vec![Partial::default(); BRANCHES.len()],
            survivor_sample: Vec::new(),
        }
    }

    /// Combine with an accumulator covering later anchors; earlier examples win.
    fn merge(mut self, other: Accumulator) -> Accumulator {
        for (a, b) in self.branches.iter_mut().zip(other.branches) {
            a.examined += b.examined;
            a.out_of_box += b.out_of_box;
            a.survivors += b.survivors;
            for (slot, other) in a.tallies.iter_mut().zip(b.tallies) {
                match (slot, other) {
                    (Some(t), Some((count, _))) => t.0 += count,
                    (slot @ None, other) => *slot = other,
                    _ => {}
                }
            }
        }
        for s in other.survivor_sample {
            if self.survivor_sample.len() < SURVIVOR_SAMPLE {
                self.survivor_sample.push(s);
            }
        }
        self
    }
}

fn scan_q1(
    sc: &CrossingScenario,
    q1: i64,
    placements: &[Vec<EndPlacement>],
    jumps: &[[H1ClassXD; 3]],
) -> Accumulator {
    let mut acc = Accumulator::new();
    let (m, n) = (i64::from(sc.m), i64::from(sc.n));
    let q2_range = if sc.mode == CobordismMode::Cylinder {
        0..=0
    } else {
        -sc.bound..=sc.bound
    };
    for q2 in q2_range {
        for (ends, jump) in placements.iter().zip(jumps) {
            for (bi, branch) in BRANCHES.iter().enumerate() {
                let p = if LEVEL_SHAPE[branch.anchor].0 == 0 {
                    0
                } else {
                    -(m * q1 + n * q2)
                };
                let (levels, outcome) = evaluate(sc, branch, jump, H1ClassXD::new(p, q1, q2));
                let part = &mut acc.branches[bi];
                part.examined += 1;
                let config = || CrossingConfig {
                    ends: ends.clone(),
                    levels: std::array::from_fn(|i| branch.nonempty[i].then_some(levels[i])),
                };
                match outcome {
                    Outcome::OutOfBox => part.out_of_box += 1,
                    Outcome::Survives => {
                        part.survivors += 1;
                        if acc.survivor_sample.len() < SURVIVOR_SAMPLE {
                            acc.survivor_sample.push(config());
                        }
                    }
                    Outcome::Fails(f) => match &mut part.tallies[f.index()] {
                        Some(t) => t.0 += 1,
                        slot @ None => *slot = Some((1, config())),
                    },
                }
            }
        }
    }
    acc
}

/// Enumerate every placement of ends and every anchor class in the box,
/// across the seven crossing branches, on a pool of `threads` workers.
pub fn enumerate_crossing_configs(
    sc: &CrossingScenario,
    threads: usize,
) -> Result<CrossingCertificate> {
    if sc.m == 0 || (sc.mode != CobordismMode::Cylinder && sc.n == 0) {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    if sc.bound < 0 {
        return Err(Error::OutOfRange("the class bound must be nonnegative".into()));
    }
    let sc = CrossingScenario {
        n: if sc.mode == CobordismMode::Cylinder { 0 } else { sc.n },
        ..*sc
    };
    let specs = ends_of(&sc);
    let placements = placements(&specs);
    let jumps: Vec<_> = placements.iter().map(|p| slab_jumps(&sc, p, &specs)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
    let acc = pool.install(|| {
        (-sc.bound..=sc.bound)
            .into_par_iter()
            .map(|q1| scan_q1(&sc, q1, &placements, &jumps))
            .reduce(Accumulator::new, Accumulator::merge)
    });
    let branches: Vec<BranchSummary> = BRANCHES
        .iter()
        .zip(acc.branches)
        .map(|(b, part)| BranchSummary {
            branch: b.name.to_string(),
            examined: part.examined,
            out_of_box: part.out_of_box,
            survivors: part.survivors,
            eliminated: part
                .tallies
                .into_iter()
                .enumerate()
                .filter_map(|(i, t)| {
                    t.map(|(count, example)| ConstraintTally {
                        constraint: Failure::describe(i),
                        count,
                        example,
                    })
                })
                .collect(),
        })
        .collect();
    Ok(CrossingCertificate {
        scenario: sc,
        examined: branches.iter().map(|b| b.examined).sum(),
        out_of_box: branches.iter().map(|b| b.out_of_box).sum(),
        survivor_count: branches.iter().map(|b| b.survivors).sum(),
        survivors: acc.survivor_sample,
        branches,
    })
}

/// Outcome of placing the three ends of a product section on slices
/// `i/m`, `j/n` and `k/(m+n)` of the twist region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SameSliceVerdict {
    /// All three slices coincide; the section can sit at `x`.
    Allowed { x: Rational64 },
    /// The classes do not balance: need `k = i + j`.
    ExcludedByHomology { expected_k: u32 },
    /// On the open interval the restricted section has class `class`, whose
    /// flux is negative, contradicting local energy.
    ExcludedByEnergy {
        interval: (Rational64, Rational64),
        class: H1ClassXD,
        witness_x: Rational64,
        witness_value: Rational64,
    },
}

pub fn same_slice_check(m: u32, n: u32, i: u32, j: u32, k: u32) -> Result<SameSliceVerdict> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    if i > m || j > n || k > m + n {
        return Err(Error::OutOfRange(format!(
            "slices ({i}, {j}, {k}) exceed ({m}, {n}, {})",
            m + n
        )));
    }
    if k != i + j {
        return Ok(SameSliceVerdict::ExcludedByHomology { expected_k: i + j });
    }
    let (mi, ni) = (i64::from(m), i64::from(n));
    let xi = Rational64::new(i64::from(i), mi);
    let xj = Rational64::new(i64::from(j), ni);
    let xk = Rational64::new(i64::from(k), mi + ni);
    if xi == xj {
        return Ok(SameSliceVerdict::Allowed { x: xk });
    }
    // The combined slice is the mediant and lies strictly between the other
    // two; past it, only the end further right still contributes.
    let (far, class) = if xi < xj {
        (xj, H1ClassXD::new(-i64::from(j), 0, 1))
    } else {
        (xi, H1ClassXD::new(-i64::from(i), 1, 0))
    };
    let witness_x = (xk + far) / 2;
    let witness_value = local_energy_lhs(class, witness_x, mi, ni);
    Ok(SameSliceVerdict::ExcludedByEnergy {
        interval: (xk, far),
        class,
        witness_x,
        witness_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(mode: CobordismMode, relaxed: bool) -> CrossingScenario {
        CrossingScenario {
            mode,
            m: 2,
            n: 3,
            bound: 4,
            relaxed,
        }
    }

    #[test]
    fn strict_is_empty() {
        for mode in [CobordismMode::Product, CobordismMode::Coproduct, CobordismMode::Cylinder] {
            let cert = enumerate_crossing_configs(&scenario(mode, false), 2).unwrap();
            assert!(cert.is_empty(), "{mode:?}");
            assert!(cert.examined > 0);
        }
    }

    #[test]
    fn relaxed_has_trivial_survivor() {
        let cert = enumerate_crossing_configs(&scenario(CobordismMode::Product, true), 2).unwrap();
        assert!(!cert.is_empty());
        assert!(cert.survivors.iter().any(|c| c
            .levels
            .iter()
            .flatten()
            .all(H1ClassXD::is_zero)));
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let sc = scenario(CobordismMode::Coproduct, false);
        assert_eq!(
            enumerate_crossing_configs(&sc, 1).unwrap(),
            enumerate_crossing_configs(&sc, 4).unwrap()
        );
    }

    #[test]
    fn same_slice_examples() {
        assert_eq!(
            same_slice_check(2, 4, 1, 2, 3).unwrap(),
            SameSliceVerdict::Allowed {
                x: Rational64::new(1, 2)
            }
        );
        assert_eq!(
            same_slice_check(2, 3, 1, 1, 3).unwrap(),
            SameSliceVerdict::ExcludedByHomology { expected_k: 2 }
        );
        let SameSliceVerdict::ExcludedByEnergy {
            interval,
            class,
            witness_value,
            ..
        } = same_slice_check(2, 3, 1, 1, 2).unwrap()
        else {
            panic!("expected an energy exclusion");
        };
        assert_eq!(interval, (Rational64::new(2, 5), Rational64::new(1, 2)));
        assert_eq!(class, H1ClassXD::new(-1, 1, 0));
        assert!(witness_value < Rational64::from_integer(0));
    }

    #[test]
    fn orbit_classes() {
        assert_eq!(orbit_class(EndLabel::Combined, 3, 2, 3).unwrap(), H1ClassXD::new(-3, 1, 1));
        assert!(orbit_class(EndLabel::First, 3, 2, 3).is_err());
    }
}
