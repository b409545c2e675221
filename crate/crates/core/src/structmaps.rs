//! The product HF(φ^m) ⊗ HF(φ^n) → HF(φ^{m+n}) and the coproduct in the
//! other direction, together with the algebraic identities they satisfy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::floer::{
    hf_space, iota, proj, twist_element, BoundaryIdentification, EdgeIdentification,
    TwistGenerator, TwistKind,
};
use crate::gf2::{compose, swap_map, tensor, F2Combination, F2LinearMap};
use crate::label::BasisLabel;
use crate::surface::{diagonal_coproduct, intersection_map, intersection_product, SurfaceSpec, TwistCurveSpec};

fn check_powers(powers: &[u32]) -> Result<()> {
    if powers.contains(&0) {
        return Err(Error::OutOfRange("powers must be at least 1".into()));
    }
    Ok(())
}

/// The product, written down entry by entry: Morse classes multiply by the
/// intersection product, anything involving a twist generator maps to zero.
pub fn product_map(s: SurfaceSpec, c: TwistCurveSpec, m: u32, n: u32) -> Result<F2LinearMap> {
    check_powers(&[m, n])?;
    let (a, b, t) = (hf_space(s, c, m)?, hf_space(s, c, n)?, hf_space(s, c, m + n)?);
    F2LinearMap::from_fn(a.space.tensor(&b.space), t.space, -2, |label| {
        match label.factors() {
            [BasisLabel::Surface(x), BasisLabel::Surface(y)] => Ok(intersection_product(x, y)),
            [_, _] => Ok(F2Combination::zero()),
            _ => Err(Error::Arity(format!("{label} is not a pair"))),
        }
    })
}

/// The product as `ι ∘ ∩ ∘ (proj ⊗ proj)`.
pub fn product_via_composition(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
) -> Result<F2LinearMap> {
    check_powers(&[m, n])?;
    let (a, b, t) = (hf_space(s, c, m)?, hf_space(s, c, n)?, hf_space(s, c, m + n)?);
    let cap = intersection_map(&a.complement);
    let projections = tensor(&proj(&a), &proj(&b));
    compose(&iota(&t), &compose(&cap, &projections)?)
}

/// Formal terms of the coproduct of a twist generator of φ^{m+n}, before
/// boundary slices are resolved: `e_k ↦ Σ e_i⊗e_j` and
/// `h_k ↦ Σ (e_i⊗h_j + h_i⊗e_j)` over `i + j = k`, `0 ≤ i ≤ m`, `0 ≤ j ≤ n`.
pub fn twist_expansion_terms(
    kind: TwistKind,
    k: u32,
    m: u32,
    n: u32,
) -> Vec<(TwistGenerator, TwistGenerator)> {
    let lo = k.saturating_sub(n);
    let hi = k.min(m);
    let mut terms = Vec::new();
    for i in lo..=hi {
        let j = k - i;
        match kind {
            TwistKind::Elliptic => {
                terms.push((TwistGenerator::elliptic(i, m), TwistGenerator::elliptic(j, n)));
            }
            TwistKind::Hyperbolic => {
                terms.push((TwistGenerator::elliptic(i, m), TwistGenerator::hyperbolic(j, n)));
                terms.push((TwistGenerator::hyperbolic(i, m), TwistGenerator::elliptic(j, n)));
            }
        }
    }
    terms
}

pub fn coproduct_map(s: SurfaceSpec, c: TwistCurveSpec, m: u32, n: u32) -> Result<F2LinearMap> {
    coproduct_map_with(s, c, m, n, &EdgeIdentification)
}

/// The coproduct with an explicit rule for boundary slices.
pub fn coproduct_map_with(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
    ident: &dyn BoundaryIdentification,
) -> Result<F2LinearMap> {
    check_powers(&[m, n])?;
    let (a, b, t) = (hf_space(s, c, m)?, hf_space(s, c, n)?, hf_space(s, c, m + n)?);
    let cs = &t.complement;
    let target = a.space.tensor(&b.space);
    F2LinearMap::from_fn(t.space.clone(), target, 0, |label| match label {
        BasisLabel::Surface(x) => Ok(diagonal_coproduct(x)),
        BasisLabel::Twist(g) => {
            let mut out = F2Combination::zero();
            for (x, y) in twist_expansion_terms(g.kind, g.slice, m, n) {
                out.add(&twist_element(x, cs, ident)?.tensor(&twist_element(y, cs, ident)?));
            }
            Ok(out)
        }
        other => Err(Error::UnknownLabel(other.to_string())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub lhs: F2Combination,
    pub rhs: F2Combination,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl IdentityCheck {
    fn compare(name: impl Into<String>, lhs: &F2LinearMap, rhs: &F2LinearMap) -> Self {
        let counterexample = lhs.first_difference(rhs).map(|(label, l, r)| Counterexample {
            input: label.to_string(),
            lhs: l,
            rhs: r,
        });
        Self {
            name: name.into(),
            pass: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureMapReport {
    pub map: F2LinearMap,
    pub checks: Vec<IdentityCheck>,
}

impl StructureMapReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `μ ∘ (μ ⊗ id) = μ ∘ (id ⊗ μ)` on HF(φ^m) ⊗ HF(φ^n) ⊗ HF(φ^p).
pub fn check_associativity(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
    p: u32,
) -> Result<StructureMapReport> {
    check_powers(&[m, n, p])?;
    let id_m = F2LinearMap::identity(hf_space(s, c, m)?.space);
    let id_p = F2LinearMap::identity(hf_space(s, c, p)?.space);
    let lhs = compose(
        &product_map(s, c, m + n, p)?,
        &tensor(&product_map(s, c, m, n)?, &id_p),
    )?;
    let rhs = compose(
        &product_map(s, c, m, n + p)?,
        &tensor(&id_m, &product_map(s, c, n, p)?),
    )?;
    let check = IdentityCheck::compare(format!("associativity ({m},{n},{p})"), &lhs, &rhs);
    Ok(StructureMapReport {
        map: lhs,
        checks: vec![check],
    })
}

pub fn check_coassociativity(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
    p: u32,
) -> Result<StructureMapReport> {
    check_coassociativity_with(s, c, m, n, p, &EdgeIdentification)
}

/// `(Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ` from HF(φ^{m+n+p}).
pub fn check_coassociativity_with(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
    p: u32,
    ident: &dyn BoundaryIdentification,
) -> Result<StructureMapReport> {
    check_powers(&[m, n, p])?;
    let id_m = F2LinearMap::identity(hf_space(s, c, m)?.space);
    let id_p = F2LinearMap::identity(hf_space(s, c, p)?.space);
    let lhs = compose(
        &tensor(&coproduct_map_with(s, c, m, n, ident)?, &id_p),
        &coproduct_map_with(s, c, m + n, p, ident)?,
    )?;
    let rhs = compose(
        &tensor(&id_m, &coproduct_map_with(s, c, n, p, ident)?),
        &coproduct_map_with(s, c, m, n + p, ident)?,
    )?;
    let check = IdentityCheck::compare(format!("coassociativity ({m},{n},{p})"), &lhs, &rhs);
    Ok(StructureMapReport {
        map: lhs,
        checks: vec![check],
    })
}

/// `swap ∘ Δ^{m,n} = Δ^{n,m}`.
pub fn check_cocommutativity(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
) -> Result<StructureMapReport> {
    check_powers(&[m, n])?;
    let delta = coproduct_map(s, c, m, n)?;
    let swap = swap_map(&hf_space(s, c, m)?.space, &hf_space(s, c, n)?.space)?;
    let lhs = compose(&swap, &delta)?;
    let rhs = coproduct_map(s, c, n, m)?;
    let check = IdentityCheck::compare(format!("cocommutativity ({m},{n})"), &lhs, &rhs);
    Ok(StructureMapReport {
        map: delta,
        checks: vec![check],
    })
}

/// On the boundary slices `0` and `m+n`, resolving each formal term of the
/// twist expansion must agree with applying Δ₀ to the resolved input.
pub fn check_boundary_consistency(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
) -> Result<Vec<IdentityCheck>> {
    boundary_consistency_with(s, c, m, n, &EdgeIdentification)
}

pub fn boundary_consistency_with(
    s: SurfaceSpec,
    c: TwistCurveSpec,
    m: u32,
    n: u32,
    ident: &dyn BoundaryIdentification,
) -> Result<Vec<IdentityCheck>> {
    check_powers(&[m, n])?;
    let t = hf_space(s, c, m + n)?;
    let cs = &t.complement;
    let mut checks = Vec::new();
    for k in [0, m + n] {
        for kind in [TwistKind::Elliptic, TwistKind::Hyperbolic] {
            let g = TwistGenerator { kind, slice: k, power: m + n };
            let mut lhs = F2Combination::zero();
            for (x, y) in twist_expansion_terms(kind, k, m, n) {
                lhs.add(&twist_element(x, cs, ident)?.tensor(&twist_element(y, cs, ident)?));
            }
            let mut rhs = F2Combination::zero();
            for label in twist_element(g, cs, ident)?.iter() {
                let BasisLabel::Surface(x) = label else {
                    return Err(Error::UnknownLabel(label.to_string()));
                };
                rhs.add(&diagonal_coproduct(x));
            }
            let pass = lhs == rhs;
            checks.push(IdentityCheck {
                name: format!("boundary consistency {g}"),
                pass,
                counterexample: (!pass).then(|| Counterexample {
                    input: g.to_string(),
                    lhs,
                    rhs,
                }),
            });
        }
    }
    Ok(checks)
}
