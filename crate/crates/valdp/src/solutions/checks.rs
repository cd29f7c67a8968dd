//! Law checkers for extension systems and completability.
//!
//! Every checker works over an explicit finite sample (valuations or
//! factor pairs) and verifies its law by enumeration; a passing verdict
//! therefore says "holds on the sample", never a universal claim. The
//! witness of a failing check names the sample element and point.

use super::{completions, ExtensionSystem, SolutionError};
use crate::tuples::{Scope, Tuple, VarId};
use crate::valuation::Valuation;

/// Result of one enumerated law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub name: String,
    pub holds: bool,
    /// Number of elementary comparisons performed.
    pub cases: u64,
    pub witness: Option<String>,
}

impl LawCheck {
    fn pass(name: &str, cases: u64) -> LawCheck {
        LawCheck {
            name: name.to_string(),
            holds: true,
            cases,
            witness: None,
        }
    }

    fn fail(name: &str, cases: u64, witness: String) -> LawCheck {
        LawCheck {
            name: name.to_string(),
            holds: false,
            cases,
            witness: Some(witness),
        }
    }

    pub fn format(&self) -> String {
        match (&self.holds, &self.witness) {
            (true, _) => format!("{}: holds ({} cases)", self.name, self.cases),
            (false, Some(w)) => format!("{}: fails [{}]", self.name, w),
            (false, None) => format!("{}: fails", self.name),
        }
    }
}

fn scope_from_mask(vars: &[VarId], mask: u32) -> Scope {
    Scope::new(
        vars.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v),
    )
}

fn sorted_tuples(mut ts: Vec<Tuple>) -> Vec<Tuple> {
    ts.sort_by(|a, b| a.values().cmp(b.values()));
    ts.dedup();
    ts
}

/// Verifies the two-step decomposition law of an extension system by
/// full enumeration: for every instance valuation `phi`, every nested
/// pair `X` within `Y` within `d(phi)`, and every solution `x` of
/// `phi` projected to `X`, the direct extension set must equal the one
/// assembled from extensions through `Y`.
pub fn check_fces(
    es: &dyn ExtensionSystem,
    instances: &[Valuation],
) -> Result<LawCheck, SolutionError> {
    const NAME: &str = "extension-system law";
    let mut cases = 0u64;
    for phi in instances {
        let domain: Vec<VarId> = phi.label().iter().collect();
        let n = domain.len();
        for ymask in 0..(1u32 << n) {
            let y_scope = scope_from_mask(&domain, ymask);
            let proj_y = phi.project(&y_scope)?;
            let mut xmask = ymask;
            loop {
                let x_scope = scope_from_mask(&domain, xmask);
                let proj_x = phi.project(&x_scope)?;
                for x in es.solutions(&proj_x)?.tuples() {
                    cases += 1;
                    let lhs = sorted_tuples(es.extension_set(phi, x)?);
                    let mut rhs = Vec::new();
                    for y in es.extension_set(&proj_y, x)? {
                        let xy = x.concat(&y)?;
                        for z in es.extension_set(phi, &xy)? {
                            rhs.push(y.concat(&z)?);
                        }
                    }
                    let rhs = sorted_tuples(rhs);
                    if lhs != rhs {
                        return Ok(LawCheck::fail(
                            NAME,
                            cases,
                            format!(
                                "valuation over {}, X = {}, Y = {}, x = {}",
                                phi.vars().format_scope(phi.label()),
                                phi.vars().format_scope(&x_scope),
                                phi.vars().format_scope(&y_scope),
                                phi.vars().format_tuple(x)
                            ),
                        ));
                    }
                }
                if xmask == 0 {
                    break;
                }
                xmask = (xmask - 1) & ymask;
            }
        }
    }
    Ok(LawCheck::pass(NAME, cases))
}

/// Both directions of projective completability over a sample of factor
/// pairs: for each pair, completing the solutions of the projection to
/// the first label through the projection to the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveReport {
    /// Projective completability itself: completions stay inside the
    /// solution set.
    pub subset: LawCheck,
    /// The unconditional converse: every solution arises as some
    /// completion.
    pub superset: LawCheck,
}

impl ProjectiveReport {
    pub fn holds(&self) -> bool {
        self.subset.holds && self.superset.holds
    }
}

pub fn check_projective_completability(
    es: &dyn ExtensionSystem,
    products: &[(Valuation, Valuation)],
) -> Result<ProjectiveReport, SolutionError> {
    let mut cases = 0u64;
    let mut subset_witness = None;
    let mut superset_witness = None;
    for (k, (xi1, xi2)) in products.iter().enumerate() {
        cases += 1;
        let phi = xi1.combine(xi2)?;
        let cx = es.solutions(&phi.project(xi1.label())?)?;
        let cy_projection = phi.project(xi2.label())?;
        let co = completions(&cx, &cy_projection, es)?;
        let c = es.solutions(&phi)?;
        if subset_witness.is_none() {
            if let Some(bad) = co.tuples().iter().find(|t| !c.contains(t)) {
                subset_witness = Some(format!(
                    "product {k}: completion {} is not a solution",
                    phi.vars().format_tuple(bad)
                ));
            }
        }
        if superset_witness.is_none() {
            if let Some(missed) = c.tuples().iter().find(|t| !co.contains(t)) {
                superset_witness = Some(format!(
                    "product {k}: solution {} is not among the completions",
                    phi.vars().format_tuple(missed)
                ));
            }
        }
    }
    let subset = match subset_witness {
        Some(w) => LawCheck::fail("projective completability", cases, w),
        None => LawCheck::pass("projective completability", cases),
    };
    let superset = match superset_witness {
        Some(w) => LawCheck::fail("projective completability (converse)", cases, w),
        None => LawCheck::pass("projective completability (converse)", cases),
    };
    Ok(ProjectiveReport { subset, superset })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiecewiseFlavor {
    /// Completions through the raw second factor stay inside the
    /// solution set.
    Plain,
    /// Plain, and no non-empty solution subset completes to nothing.
    GuaranteedNonEmpty,
    /// Completions through the raw second factor are exactly the
    /// solution set.
    Total,
}

impl PiecewiseFlavor {
    fn name(&self) -> &'static str {
        match self {
            PiecewiseFlavor::Plain => "piecewise completability",
            PiecewiseFlavor::GuaranteedNonEmpty => "guaranteed-non-empty piecewise completability",
            PiecewiseFlavor::Total => "total piecewise completability",
        }
    }
}

/// Piecewise completability over a sample of factor pairs: the partial
/// solutions of the projection to the first label are completed through
/// the raw second factor. Since completions distribute over unions, the
/// guaranteed-non-empty flavor only needs the singleton subsets.
pub fn check_piecewise_completability(
    es: &dyn ExtensionSystem,
    products: &[(Valuation, Valuation)],
    flavor: PiecewiseFlavor,
) -> Result<LawCheck, SolutionError> {
    let name = flavor.name();
    let mut cases = 0u64;
    for (k, (xi1, xi2)) in products.iter().enumerate() {
        cases += 1;
        let phi = xi1.combine(xi2)?;
        let cx = es.solutions(&phi.project(xi1.label())?)?;
        let co = completions(&cx, xi2, es)?;
        let c = es.solutions(&phi)?;
        match flavor {
            PiecewiseFlavor::Plain | PiecewiseFlavor::GuaranteedNonEmpty => {
                if let Some(bad) = co.tuples().iter().find(|t| !c.contains(t)) {
                    return Ok(LawCheck::fail(
                        name,
                        cases,
                        format!(
                            "product {k}: completion {} is not a solution",
                            phi.vars().format_tuple(bad)
                        ),
                    ));
                }
                if flavor == PiecewiseFlavor::GuaranteedNonEmpty {
                    let overlap = xi2.label().inter(cx.scope());
                    for x in cx.tuples() {
                        if es.extension_set(xi2, &x.project(&overlap)?)?.is_empty() {
                            return Ok(LawCheck::fail(
                                name,
                                cases,
                                format!(
                                    "product {k}: partial solution {} has no completion",
                                    phi.vars().format_tuple(x)
                                ),
                            ));
                        }
                    }
                }
            }
            PiecewiseFlavor::Total => {
                if !co.set_eq(&c) {
                    return Ok(LawCheck::fail(
                        name,
                        cases,
                        format!(
                            "product {k}: completions yield {} tuples, solution set has {}",
                            co.len(),
                            c.len()
                        ),
                    ));
                }
            }
        }
    }
    Ok(LawCheck::pass(name, cases))
}

/// The pointwise completion conditions, quantified over every tuple of
/// the first factor's frame (not only solutions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpkCondition {
    /// Extension sets of the second factor are never empty.
    Cpk1,
    /// They are contained in the extension sets of the product.
    Cpk2,
    /// They are exactly the extension sets of the product.
    Cpk3,
}

impl CpkCondition {
    fn name(&self) -> &'static str {
        match self {
            CpkCondition::Cpk1 => "CPK1 (non-empty extensions)",
            CpkCondition::Cpk2 => "CPK2 (factor extensions complete)",
            CpkCondition::Cpk3 => "CPK3 (factor extensions exact)",
        }
    }
}

pub fn check_cpk(
    es: &dyn ExtensionSystem,
    products: &[(Valuation, Valuation)],
    which: CpkCondition,
) -> Result<LawCheck, SolutionError> {
    let name = which.name();
    let mut cases = 0u64;
    for (k, (xi1, xi2)) in products.iter().enumerate() {
        let phi = xi1.combine(xi2)?;
        let z_scope = xi1.label();
        let overlap = z_scope.inter(xi2.label());
        for x in xi1.vars().enumerate(z_scope)? {
            cases += 1;
            let w2 = sorted_tuples(es.extension_set(xi2, &x.project(&overlap)?)?);
            let witness = |detail: &str| {
                format!(
                    "product {k}, point {}: {detail}",
                    phi.vars().format_tuple(&x)
                )
            };
            match which {
                CpkCondition::Cpk1 => {
                    if w2.is_empty() {
                        return Ok(LawCheck::fail(name, cases, witness("empty extension set")));
                    }
                }
                CpkCondition::Cpk2 => {
                    let wfull = sorted_tuples(es.extension_set(&phi, &x)?);
                    if let Some(bad) = w2.iter().find(|z| !wfull.contains(z)) {
                        return Ok(LawCheck::fail(
                            name,
                            cases,
                            witness(&format!(
                                "extension {} of the factor does not extend the product",
                                phi.vars().format_tuple(bad)
                            )),
                        ));
                    }
                }
                CpkCondition::Cpk3 => {
                    let wfull = sorted_tuples(es.extension_set(&phi, &x)?);
                    if w2 != wfull {
                        return Ok(LawCheck::fail(
                            name,
                            cases,
                            witness(&format!(
                                "factor extensions ({}) differ from product extensions ({})",
                                w2.len(),
                                wfull.len()
                            )),
                        ));
                    }
                }
            }
        }
    }
    Ok(LawCheck::pass(name, cases))
}
