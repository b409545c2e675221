//! One function per subcommand. Each returns the JSON value (or CSV text)
//! to emit; `main` decides where it goes.

use serde::Serialize;
use serde_json::{json, Value};
use twistfloer_core::floer::hf_space;
use twistfloer_core::indexcalc::{
    check_monotonicity, cz, force_zero_wrapping, fredholm_index, CobordismShape, OrbitKind,
    SectionIndexData, WrappingTopology,
};
use twistfloer_core::moduli::{
    coproduct_from_cascades, count_cascades, shoot_c_infinity, solve_end_ode, CascadeSpec, EndOde,
    EndSide, FixedEnd, SampleGrid,
};
use twistfloer_core::nocross::enumerate_crossing_configs;
use twistfloer_core::structmaps::{
    check_associativity, check_boundary_consistency, check_coassociativity, check_cocommutativity,
    product_via_composition, IdentityCheck,
};
use twistfloer_core::surface::{complement, homology};
use twistfloer_core::floer::interior_twist_space;
use twistfloer_core::{coproduct_map, product_map, CobordismMode, CrossingScenario, F2LinearMap};

use crate::config::RunConfig;
use crate::{CliError, SCHEMA_VERSION};

/// Every nonzero column of a map, keyed by its source label.
#[derive(Debug, Serialize)]
struct Image {
    input: String,
    output: Vec<String>,
}

fn images(map: &F2LinearMap) -> Vec<Image> {
    map.source()
        .labels()
        .enumerate()
        .filter_map(|(j, label)| {
            let col = map.column(j);
            (!col.is_zero()).then(|| Image {
                input: label.to_string(),
                output: col.iter().map(ToString::to_string).collect(),
            })
        })
        .collect()
}

pub fn homology_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    let cs = complement(s, c)?;
    let h = homology(&cs);
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "surface": s,
        "curve": c,
        "components": cs.components,
        "euler_characteristic": cs.euler_characteristic(),
        "dims_by_degree": h.dims_by_degree(),
        "basis": h,
    }))
}

pub fn hf_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    let fs = hf_space(s, c, cfg.powers.m)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "power": fs.power,
        "dim": fs.space.dim(),
        "dims_by_degree": fs.space.dims_by_degree(),
        "morse_dim": fs.morse.dim(),
        "twist_dim": fs.twist.dim(),
        "basis": fs.space,
    }))
}

pub fn product_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    let (m, n) = (cfg.powers.m, cfg.powers.n);
    let mu = product_map(s, c, m, n)?;
    let composed = product_via_composition(s, c, m, n)?;
    let mut checks = vec![IdentityCheck {
        name: "entrywise product equals the composed route".into(),
        pass: mu == composed,
        counterexample: None,
    }];
    if let Some(p) = cfg.powers.p {
        checks.extend(check_associativity(s, c, m, n, p)?.checks);
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "m": m,
        "n": n,
        "images": images(&mu),
        "map": mu,
        "checks": checks,
    }))
}

pub fn coproduct_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    let (m, n) = (cfg.powers.m, cfg.powers.n);
    let delta = coproduct_map(s, c, m, n)?;
    let mut checks = check_cocommutativity(s, c, m, n)?.checks;
    checks.extend(check_boundary_consistency(s, c, m, n)?);
    if let Some(p) = cfg.powers.p {
        checks.extend(check_coassociativity(s, c, m, n, p)?.checks);
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "m": m,
        "n": n,
        "images": images(&delta),
        "map": delta,
        "checks": checks,
    }))
}

pub fn verify_nocrossing_cmd(cfg: &RunConfig, mode: CobordismMode, relaxed: bool) -> Result<Value, CliError> {
    let sc = CrossingScenario {
        mode,
        m: cfg.powers.m,
        n: cfg.powers.n,
        bound: cfg.enumeration.bound,
        relaxed,
    };
    let cert = enumerate_crossing_configs(&sc, cfg.enumeration.threads)?;
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "scenario": sc,
        "empty": cert.is_empty(),
        "examined": cert.examined,
        "out_of_box": cert.out_of_box,
        "survivor_count": cert.survivor_count,
        "survivors": cert.survivors,
        "branches": cert.branches,
        "certificate": cert.entries(),
    });
    if let Some(path) = &cfg.output.certificate {
        crate::write_json(path, &value)?;
    }
    Ok(value)
}

pub fn index_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    use OrbitKind::*;
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    complement(s, c)?;
    let topology = WrappingTopology::of(s, c);
    let kinds = [MorseMin, MorseSaddle, MorseMax, Elliptic, Hyperbolic];
    let cz_table: Vec<Value> = kinds.iter().map(|&k| json!({"orbit": k, "cz": cz(k)})).collect();
    let examples = [
        SectionIndexData::new(CobordismShape::Product, vec![MorseMax, MorseMax], vec![MorseMin]),
        SectionIndexData::new(CobordismShape::Coproduct, vec![Hyperbolic], vec![Elliptic, Elliptic]),
        SectionIndexData::new(CobordismShape::Coproduct, vec![Elliptic], vec![Elliptic, Elliptic]),
    ];
    let mut sections = Vec::new();
    for d in &examples {
        sections.push(json!({"section": d, "index": fredholm_index(d)?}));
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "surface": s,
        "curve": c,
        "monotonicity": check_monotonicity(s, c),
        "topology": topology,
        "wrapping_at_index_zero": force_zero_wrapping(topology, 0)?,
        "cz": cz_table,
        "sections": sections,
    }))
}

#[derive(Debug, Clone, Copy)]
pub struct OdeRequest {
    pub k_inf: u32,
    pub k1: u32,
    pub k2: u32,
}

fn ode_ends(cfg: &RunConfig, req: OdeRequest) -> Result<(f64, Vec<(&'static str, EndOde, f64)>), CliError> {
    let (m, n) = (cfg.powers.m, cfg.powers.n);
    if req.k_inf != req.k1 + req.k2 {
        return Err(CliError::Usage(format!(
            "need k-inf = k1 + k2, got {} != {} + {}",
            req.k_inf, req.k1, req.k2
        )));
    }
    let cutoff = cfg.cutoff()?;
    let tol = cfg.ode.tolerance;
    let top = EndOde::new(m + n, req.k_inf, EndSide::Positive, cutoff)?.with_tolerance(tol);
    let c_inf = shoot_c_infinity(&top)?.c_infinity;
    let ends = vec![
        ("positive", top, c_inf),
        ("first", EndOde::new(m, req.k1, EndSide::Negative, cutoff)?.with_tolerance(tol), c_inf + 1.0),
        ("second", EndOde::new(n, req.k2, EndSide::Negative, cutoff)?.with_tolerance(tol), c_inf + 1.0),
    ];
    Ok((c_inf, ends))
}

/// CSV with columns `end,s,x,residual` for the three ends.
pub fn ode_csv(cfg: &RunConfig, req: OdeRequest) -> Result<String, CliError> {
    let (_, ends) = ode_ends(cfg, req)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["end", "s", "x", "residual"]).map_err(CliError::Csv)?;
    for (name, ode, c) in ends {
        let traj = solve_end_ode(&ode, c, &SampleGrid::standard(&ode.cutoff))?;
        for i in 0..traj.s.len() {
            w.write_record([
                name.to_string(),
                format!("{:.6}", traj.s[i]),
                format!("{:.15e}", traj.x[i]),
                format!("{:.3e}", traj.residual[i]),
            ])
            .map_err(CliError::Csv)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn ode_summary(cfg: &RunConfig, req: OdeRequest) -> Result<Value, CliError> {
    let (c_inf, ends) = ode_ends(cfg, req)?;
    let mut out = Vec::new();
    for (name, ode, c) in ends {
        let traj = solve_end_ode(&ode, c, &SampleGrid::standard(&ode.cutoff))?;
        out.push(json!({
            "end": name,
            "coeff": ode.coeff,
            "k": ode.k,
            "initial_value": c,
            "limit": ode.limit(),
            "final_x": traj.x.last(),
            "neck_slope": ode.slope_at(c, ode.coordinate(0.0))?,
            "max_residual": traj.max_residual,
        }));
    }
    Ok(json!({"schema_version": SCHEMA_VERSION, "c_infinity": c_inf, "ends": out}))
}

pub fn cascades_cmd(cfg: &RunConfig) -> Result<Value, CliError> {
    let (s, c) = (cfg.surface_spec(), cfg.curve_spec()?);
    let (m, n) = (cfg.powers.m, cfg.powers.n);
    let mut counts = Vec::new();
    for k1 in 0..=m {
        for k2 in 0..=n {
            for fixed_end in FixedEnd::ALL {
                let spec = CascadeSpec {
                    m,
                    n,
                    k_inf: k1 + k2,
                    k1,
                    k2,
                    fixed_end,
                };
                counts.push(json!({"spec": spec, "count": count_cascades(&spec)?}));
            }
        }
    }
    let from_cascades = coproduct_from_cascades(m, n)?;
    let source = interior_twist_space(m + n);
    let target = interior_twist_space(m).tensor(&interior_twist_space(n));
    let block = coproduct_map(s, c, m, n)?.restrict(&source, &target)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "m": m,
        "n": n,
        "counts": counts,
        "matches_coproduct": from_cascades == block,
        "images": images(&from_cascades),
    }))
}
