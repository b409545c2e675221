//! The acceptance suite: nine end-to-end checks, each with a time budget.
//! A criterion passes only if its check succeeds within the budget.

use std::time::{Duration, Instant};

use serde::Serialize;
use twistfloer_core::floer::{hf_space, interior_twist_space, resolve_boundary_generator, TwistGenerator};
use twistfloer_core::indexcalc::{
    check_monotonicity, force_zero_wrapping, fredholm_index, index_after_fixing, CobordismShape,
    HypothesisBullet, MonotonicityVerdict, OrbitKind, SectionIndexData, WrappingTopology,
};
use twistfloer_core::moduli::{
    bisect_c_infinity, coproduct_from_cascades, shoot_c_infinity, solve_end_ode, CutoffProfile,
    EndOde, EndSide, SampleGrid,
};
use twistfloer_core::nocross::enumerate_crossing_configs;
use twistfloer_core::structmaps::{
    check_associativity, check_boundary_consistency, check_coassociativity, check_cocommutativity,
    product_via_composition,
};
use twistfloer_core::surface::{homology, intersection_product, ClassKind, ComplementSurface};
use twistfloer_core::{
    coproduct_map, product_map, BasisLabel, CobordismMode, CrossingScenario, F2Combination,
    SurfaceClass, SurfaceSpec, TwistCurveSpec,
};
use twistfloer_oracles::{intersection_by_chords, CwSurface, OracleClass};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub elapsed_secs: f64,
    pub budget_secs: f64,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {} ({:.3} s of {} s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_secs,
            self.budget_secs,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "decomposition dimensions", 1),
    (2, "product structure", 1),
    (3, "coproduct twist rows", 1),
    (4, "algebraic identities", 10),
    (5, "no-crossing enumeration", 60),
    (6, "index calculus", 1),
    (7, "end ODE reconstruction", 5),
    (8, "cascade cross-check", 1),
    (9, "oracle equivalence", 5),
];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_genus_two() -> (SurfaceSpec, TwistCurveSpec) {
    (SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating)
}

fn split_genus_four() -> (SurfaceSpec, TwistCurveSpec) {
    (
        SurfaceSpec::new(4, 0),
        TwistCurveSpec::Separating {
            g1: 2,
            b1: 0,
            g2: 2,
            b2: 0,
        },
    )
}

fn core<T>(r: twistfloer_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn dimensions() -> Check {
    let (s, c) = closed_genus_two();
    for m in 1..=6u32 {
        let dim = core(hf_space(s, c, m))?.space.dim();
        let expected = 4 + 2 * (m as usize - 1);
        ensure(dim == expected, || format!("m = {m}: dimension {dim}, expected {expected}"))?;
    }
    Ok("dim HF = 4 + 2(m-1) for m = 1..6".into())
}

fn product_structure() -> Check {
    let mut cases = 0;
    for (s, c) in [closed_genus_two(), split_genus_four()] {
        for m in 1..=5u32 {
            for n in 1..=(6 - m) {
                let mu = core(product_map(s, c, m, n))?;
                for (j, label) in mu.source().labels().enumerate() {
                    let twisted = label.factors().iter().any(|f| matches!(f, BasisLabel::Twist(_)));
                    ensure(!twisted || mu.column(j).is_zero(), || {
                        format!("({m},{n}): twist input {label} has nonzero product")
                    })?;
                }
                let cs = core(hf_space(s, c, m))?.complement;
                for (k, comp) in cs.components.iter().enumerate() {
                    let k = k as u32 + 1;
                    for i in 1..=comp.genus {
                        let a: BasisLabel = SurfaceClass::a(k, i).into();
                        let b: BasisLabel = SurfaceClass::b(k, i).into();
                        let image = core(mu.image_of(&a.tensor(&b)))?;
                        ensure(image == F2Combination::basis(SurfaceClass::pt(k).into()), || {
                            format!("({m},{n}): {a}⊗{b} maps to {image}")
                        })?;
                    }
                }
                let composed = core(product_via_composition(s, c, m, n))?;
                if let Some((label, l, r)) = mu.first_difference(&composed) {
                    return Err(format!("({m},{n}): routes differ on {label}: {l} vs {r}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} product matrices match the composed route"))
}

fn resolved(g: TwistGenerator, cs: &ComplementSurface) -> Result<F2Combination, String> {
    if g.slice > 0 && g.slice < g.power {
        Ok(F2Combination::basis(g.into()))
    } else {
        core(resolve_boundary_generator(g.kind, g.slice, g.power, cs))
    }
}

fn coproduct_rows() -> Check {
    let mut rows = 0;
    for (s, c) in [closed_genus_two(), split_genus_four()] {
        for total in 2..=8u32 {
            for m in 1..total {
                let n = total - m;
                let delta = core(coproduct_map(s, c, m, n))?;
                let cs = core(hf_space(s, c, total))?.complement;
                for k in 1..total {
                    let mut expect_e = F2Combination::zero();
                    let mut expect_h = F2Combination::zero();
                    for i in 0..=m {
                        if k < i || k - i > n {
                            continue;
                        }
                        let j = k - i;
                        let (ei, ej) = (
                            resolved(TwistGenerator::elliptic(i, m), &cs)?,
                            resolved(TwistGenerator::elliptic(j, n), &cs)?,
                        );
                        let (hi, hj) = (
                            resolved(TwistGenerator::hyperbolic(i, m), &cs)?,
                            resolved(TwistGenerator::hyperbolic(j, n), &cs)?,
                        );
                        expect_e.add(&ei.tensor(&ej));
                        expect_h.add(&ei.tensor(&hj));
                        expect_h.add(&hi.tensor(&ej));
                    }
                    for (g, expected) in [
                        (TwistGenerator::elliptic(k, total), expect_e),
                        (TwistGenerator::hyperbolic(k, total), expect_h),
                    ] {
                        let got = core(delta.image_of(&g.into()))?;
                        ensure(got == expected, || {
                            format!("({m},{n}) row {g}: got {got}, expected {expected}")
                        })?;
                        rows += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{rows} twist rows match term for term"))
}

fn identities() -> Check {
    let mut checked = 0;
    for (s, c) in [closed_genus_two(), split_genus_four()] {
        for m in 1..=5u32 {
            for n in 1..=(6 - m) {
                for p in 1..=(7 - m - n) {
                    for report in [
                        core(check_associativity(s, c, m, n, p))?,
                        core(check_coassociativity(s, c, m, n, p))?,
                    ] {
                        for chk in &report.checks {
                            if let Some(ce) = &chk.counterexample {
                                let what = if chk.name.starts_with("coassoc") {
                                    "boundary identification falsified: "
                                } else {
                                    ""
                                };
                                return Err(format!(
                                    "{what}{} fails on {}: {} vs {}",
                                    chk.name, ce.input, ce.lhs, ce.rhs
                                ));
                            }
                            checked += 1;
                        }
                    }
                }
                let report = core(check_cocommutativity(s, c, m, n))?;
                ensure(report.all_pass(), || format!("cocommutativity fails for ({m},{n})"))?;
                for chk in core(check_boundary_consistency(s, c, m, n))? {
                    ensure(chk.pass, || format!("boundary identification falsified: {}", chk.name))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identity checks pass on two topologies"))
}

fn no_crossing(threads: usize) -> Check {
    let mut examined = 0u64;
    for mode in [CobordismMode::Product, CobordismMode::Coproduct] {
        for m in 1..=4 {
            for n in 1..=4 {
                let sc = CrossingScenario {
                    mode,
                    m,
                    n,
                    bound: 10,
                    relaxed: false,
                };
                let cert = core(enumerate_crossing_configs(&sc, threads))?;
                ensure(cert.is_empty(), || {
                    format!("{mode:?} ({m},{n}): {} surviving configurations", cert.survivor_count)
                })?;
                examined += cert.examined;
            }
        }
    }
    let control = core(enumerate_crossing_configs(
        &CrossingScenario {
            mode: CobordismMode::Product,
            m: 2,
            n: 3,
            bound: 10,
            relaxed: true,
        },
        threads,
    ))?;
    ensure(!control.is_empty(), || "relaxed control run found nothing".into())?;
    Ok(format!(
        "{examined} configurations eliminated; relaxed control keeps {}",
        control.survivor_count
    ))
}

fn index_calculus() -> Check {
    use OrbitKind::*;
    let coproduct = SectionIndexData::new(CobordismShape::Coproduct, vec![Hyperbolic], vec![Elliptic, Elliptic]);
    let ind = core(fredholm_index(&coproduct))?;
    ensure(ind == 1, || format!("twist-region coproduct section has index {ind}"))?;
    ensure(index_after_fixing(ind, 1) == 0, || "fixing an end does not reach 0".into())?;
    for g in 2..=4u32 {
        for topology in [
            WrappingTopology::ClosedNonSeparating { genus: g },
            WrappingTopology::Separating {
                genus: [g, g],
                has_boundary: [false, false],
            },
        ] {
            let bound = core(force_zero_wrapping(topology, 0))?;
            ensure(bound.forced_zero, || format!("{topology:?}: wrapping not forced ({})", bound.witness))?;
        }
    }
    let ns = TwistCurveSpec::NonSeparating;
    let sep = |g1, b1, g2, b2| TwistCurveSpec::Separating { g1, b1, g2, b2 };
    let table = [
        (SurfaceSpec::new(1, 0), ns, Some(HypothesisBullet::NonSeparating)),
        (SurfaceSpec::new(2, 0), ns, None),
        (SurfaceSpec::new(1, 1), ns, None),
        (SurfaceSpec::new(3, 2), ns, None),
        (SurfaceSpec::new(2, 0), sep(1, 0, 1, 0), Some(HypothesisBullet::Separating)),
        (SurfaceSpec::new(4, 0), sep(2, 0, 2, 0), None),
        (SurfaceSpec::new(3, 0), sep(2, 0, 1, 0), Some(HypothesisBullet::Separating)),
        (SurfaceSpec::new(1, 1), sep(1, 0, 0, 1), Some(HypothesisBullet::Separating)),
        (SurfaceSpec::new(2, 1), sep(2, 0, 0, 1), None),
        (SurfaceSpec::new(1, 2), sep(1, 1, 0, 1), None),
    ];
    for (s, c, expected) in table {
        let got = match check_monotonicity(s, c) {
            MonotonicityVerdict::Satisfied => None,
            MonotonicityVerdict::Violated { bullet, .. } => Some(bullet),
        };
        ensure(got == expected, || format!("{s:?} {c:?}: got {got:?}, expected {expected:?}"))?;
    }
    Ok("index 1 before fixing, wrapping forced for g = 2..4, 10-case table matches".into())
}

fn ode_reconstruction() -> Check {
    let cutoff = CutoffProfile::default();
    let (m, n, k_inf) = (2u32, 3u32, 3u32);
    let top = core(EndOde::new(m + n, k_inf, EndSide::Positive, cutoff))?;
    let shot = core(shoot_c_infinity(&top))?;
    let far = core(top.value_at(shot.c_infinity, cutoff.boundary + 30.0))?;
    let target = f64::from(k_inf) / f64::from(m + n);
    ensure((far - target).abs() < 1e-8, || format!("x(N+30) = {far}, expected {target}"))?;
    let traj = core(solve_end_ode(&top, shot.c_infinity, &SampleGrid::standard(&cutoff)))?;
    ensure(traj.max_residual < 1e-9, || format!("residual {:.3e}", traj.max_residual))?;
    let bis = core(bisect_c_infinity(&top, cutoff.width + 5.0))?;
    ensure((bis - shot.c_infinity).abs() < 1e-9, || {
        format!("bisection {bis} vs quadrature {}", shot.c_infinity)
    })?;
    let slope = core(top.slope_at(shot.c_infinity, cutoff.boundary))?;
    ensure((slope + f64::from(k_inf)).abs() < 1e-6, || format!("positive neck slope {slope}"))?;
    let mut worst: f64 = 0.0;
    for k1 in 0..=m.min(k_inf) {
        let k2 = k_inf - k1;
        if k2 > n {
            continue;
        }
        for (coeff, k) in [(m, k1), (n, k2)] {
            let ode = core(EndOde::new(coeff, k, EndSide::Negative, cutoff))?;
            let c = shot.c_infinity + 1.0;
            let x = core(ode.value_at(c, -20.0))?;
            let limit = f64::from(k) / f64::from(coeff);
            ensure((x - limit).abs() < 1e-6, || format!("split ({k1},{k2}): x(-20) = {x}, limit {limit}"))?;
            let slope = core(ode.slope_at(c, -cutoff.boundary))?;
            ensure((slope + f64::from(k)).abs() < 1e-6, || format!("negative neck slope {slope} for k = {k}"))?;
            let t = core(solve_end_ode(&ode, c, &SampleGrid::standard(&cutoff)))?;
            worst = worst.max(t.max_residual);
        }
    }
    Ok(format!(
        "c∞ = {:.12}, |x(N+30) - 3/5| = {:.1e}, max residual {:.1e}",
        shot.c_infinity,
        (far - target).abs(),
        traj.max_residual.max(worst)
    ))
}

fn cascade_cross_check() -> Check {
    let (s, c) = closed_genus_two();
    let mut pairs = 0;
    for total in 2..=8u32 {
        for m in 1..total {
            let n = total - m;
            let source = interior_twist_space(total);
            let target = interior_twist_space(m).tensor(&interior_twist_space(n));
            let block = core(core(coproduct_map(s, c, m, n))?.restrict(&source, &target))?;
            let cascades = core(coproduct_from_cascades(m, n))?;
            if let Some((label, l, r)) = cascades.first_difference(&block) {
                return Err(format!("({m},{n}) on {label}: cascades {l}, coproduct {r}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} interior blocks agree"))
}

fn oracle_equivalence() -> Check {
    let mut surfaces = 0;
    for h in 0..=3u32 {
        for c in 1..=4u32 {
            let cs = core(ComplementSurface::standalone(h, c))?;
            let dims = homology(&cs).dims_by_degree();
            let betti = CwSurface::new(h as usize, c as usize).betti();
            let ours = [dims[0], dims.get(1).copied().unwrap_or(0), dims.get(2).copied().unwrap_or(0)];
            ensure(ours == betti, || format!("({h},{c}): dims {ours:?}, CW {betti:?}"))?;
            let classes = cs.basis_classes();
            for x in &classes {
                for y in &classes {
                    let oracle = |c: &SurfaceClass| match c.kind {
                        ClassKind::Pt => None,
                        ClassKind::A => Some(OracleClass::A(c.index as usize)),
                        ClassKind::B => Some(OracleClass::B(c.index as usize)),
                        ClassKind::D => Some(OracleClass::D(c.index as usize)),
                    };
                    let expected = match (oracle(x), oracle(y)) {
                        (Some(a), Some(b)) => intersection_by_chords(h as usize, a, b),
                        _ => 0,
                    };
                    let got = intersection_product(x, y).len() as u8;
                    ensure(got == expected, || format!("({h},{c}): {x}·{y} = {got}, oracle {expected}"))?;
                }
            }
            surfaces += 1;
        }
    }
    Ok(format!("{surfaces} surfaces match the CW and chord oracles"))
}

pub fn run_criterion(id: u8, threads: usize) -> CriterionResult {
    let (_, name, budget) = CRITERIA[usize::from(id) - 1];
    let start = Instant::now();
    let outcome = match id {
        1 => dimensions(),
        2 => product_structure(),
        3 => coproduct_rows(),
        4 => identities(),
        5 => no_crossing(threads),
        6 => index_calculus(),
        7 => ode_reconstruction(),
        8 => cascade_cross_check(),
        9 => oracle_equivalence(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("over budget; {d}")),
        Err(e) => (false, e),
    };
    CriterionResult {
        id,
        name,
        pass,
        elapsed_secs: elapsed.as_secs_f64(),
        budget_secs: budget.as_secs_f64(),
        detail,
    }
}

pub fn run_all(threads: usize) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _, _)| run_criterion(id, threads)).collect()
}
