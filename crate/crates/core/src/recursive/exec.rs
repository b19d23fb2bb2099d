//! Bottom-up execution of a plan. Every intermediate design is verified and checked against
//! the goal of its node before its parent uses it.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::constructions::*;
use super::plan::{PlanNode, Rule, Status};
use crate::apps::ooc::OocCode;
use crate::design::{Design, DesignKind, DesignParams};
use crate::direct::direct_family;
use crate::error::{ForgeError, Result};
use crate::search::{cdm, search, Budget, Cache, Outcome, SearchProblem};
use crate::verify::verify;

#[derive(Clone, Debug, Default)]
pub struct ExecContext {
    /// Designs supplied by the caller, keyed by [`DesignParams::key`].
    pub ingredients: HashMap<String, Design>,
    /// Codes supplied by the caller, keyed as `OOC2D-n{n}-m{m}`.
    pub codes: HashMap<String, OocCode>,
    pub cache: Option<Cache>,
    pub budget: Budget,
}

impl ExecContext {
    pub fn with_budget(budget: Budget) -> Self {
        ExecContext { budget, ..Default::default() }
    }

    pub fn add_ingredient(&mut self, d: Design) -> Result<()> {
        let rep = verify(&d);
        if !rep.valid {
            return Err(ForgeError::Verification { what: format!("ingredient {}", d.params), detail: rep.summary() });
        }
        self.ingredients.insert(d.params.key(), d);
        Ok(())
    }

    /// A supplied, cached or searched design for `goal`.
    pub fn obtain(&self, goal: &DesignParams) -> Result<Option<Design>> {
        if let Some(d) = self.ingredients.get(&goal.key()) {
            return Ok(Some(d.clone()));
        }
        if let Some(d) = self.cache.as_ref().and_then(|c| c.get(goal)) {
            return Ok(Some(d));
        }
        let res = search(&SearchProblem::new(goal.clone(), self.budget))?;
        match res.outcome {
            Outcome::Found(d) => {
                if let Some(c) = &self.cache {
                    c.put(&d)?;
                }
                Ok(Some(d))
            }
            Outcome::NotFound => Err(ForgeError::NotFound(goal.to_string())),
            Outcome::BudgetExhausted => Ok(None),
        }
    }
}

fn goal_matches(d: &Design, goal: &DesignParams) -> bool {
    d.params.key() == goal.key()
}

fn finish(goal: &DesignParams, mut d: Design, provenance: String) -> Result<Design> {
    if !goal_matches(&d, goal) {
        return Err(ForgeError::Verification { what: goal.to_string(), detail: format!("built {} instead", d.params) });
    }
    let rep = verify(&d);
    if !rep.valid {
        return Err(ForgeError::Verification { what: goal.to_string(), detail: rep.summary() });
    }
    d.provenance = provenance;
    Ok(d)
}

/// The whole goal searched directly once a construction step could not be completed.
fn search_instead(goal: &DesignParams, ctx: &ExecContext, why: &str) -> Result<Design> {
    log::warn!("{why}; searching {goal} directly");
    match ctx.obtain(goal) {
        Ok(Some(d)) => finish(goal, d, format!("search:{}", goal.key())),
        Ok(None) => Err(ForgeError::BudgetExhausted(format!("{goal} ({why})"))),
        Err(e) => Err(e),
    }
}

/// Build the design of `node`.
pub fn execute_plan(node: &PlanNode, ctx: &ExecContext) -> Result<Design> {
    match &node.status {
        Status::Exists => {}
        Status::NotExists(r) => return Err(ForgeError::NotConstructible(format!("{}: {r}", node.goal))),
        Status::Open(r) => return Err(ForgeError::NotConstructible(format!("{}: {r}", node.goal))),
    }
    let goal = &node.goal;
    if let Some(d) = ctx.ingredients.get(&goal.key()) {
        return finish(goal, d.clone(), format!("supplied:{}", goal.key()));
    }
    let rule = node.rule.ok_or_else(|| ForgeError::NotConstructible(goal.to_string()))?;
    let child = |i: usize| -> Result<Design> {
        let c = node.children.get(i).ok_or_else(|| ForgeError::InvalidParams(format!("{rule} node is missing child {i}")))?;
        execute_plan(c, ctx)
    };
    let sub = |ds: &[&Design]| ds.iter().map(|d| d.provenance.as_str()).collect::<Vec<_>>().join(", ");
    match rule {
        Rule::Direct(id) => {
            let d = direct_family(id, goal.n, goal.m, goal.t)?;
            let p = d.provenance.clone();
            finish(goal, d, p)
        }
        Rule::Search | Rule::Cache | Rule::External => {
            let d = match ctx.obtain(goal) {
                Ok(Some(d)) => d,
                Ok(None) if rule == Rule::External => return Err(ForgeError::ExternalRequired(goal.key())),
                Ok(None) => return Err(ForgeError::BudgetExhausted(goal.to_string())),
                Err(ForgeError::NotFound(_)) if rule == Rule::External => return Err(ForgeError::ExternalRequired(goal.key())),
                Err(e) => return Err(e),
            };
            let p = if d.provenance.is_empty() { format!("{rule}:{}", goal.key()) } else { d.provenance.clone() };
            finish(goal, d, p)
        }
        Rule::CdmInflate { v } => {
            let base = child(0)?;
            let d = inflate_by_cdm(&base, &cdm(3, v)?)?;
            finish(goal, d, format!("{rule}[{}]", sub(&[&base])))
        }
        Rule::Compose => {
            let (outer, inner) = rayon::join(|| child(0), || child(1));
            let (outer, inner) = (outer?, inner?);
            let d = compose_fill(&outer, &inner)?;
            finish(goal, d, format!("{rule}[{}]", sub(&[&outer, &inner])))
        }
        Rule::PdfToGdd => {
            let pdf = child(0)?;
            finish(goal, pdf_to_strict_gdd(&pdf)?, format!("{rule}[{}]", pdf.provenance))
        }
        Rule::PbdToScgdd => {
            let pbd = child(0)?;
            finish(goal, pbd_to_scgdd(&pbd)?, format!("{rule}[{}]", pbd.provenance))
        }
        Rule::SchgddToScgdd => {
            let (h, s) = (child(0)?, child(1)?);
            finish(goal, schgdd_to_scgdd(&h, &s)?, format!("{rule}[{}]", sub(&[&h, &s])))
        }
        Rule::GddMgdd | Rule::ScgddFill => {
            let source = child(0)?;
            let mut sizes: Vec<u32> = source.base_blocks.iter().map(|b| b.len() as u32).collect();
            sizes.sort_unstable();
            sizes.dedup();
            let wanted = |c: &PlanNode| match c.goal.kind {
                DesignKind::Mgdd => sizes.contains(&c.goal.t),
                DesignKind::Schgdd => sizes.contains(&c.goal.n),
                _ => false,
            };
            // Only the ingredients for block sizes that occur are built.
            let picked: Vec<&PlanNode> = node.children[1..].iter().filter(|c| wanted(c)).collect();
            let built: Vec<Design> = picked.par_iter().map(|c| execute_plan(c, ctx)).collect::<Result<_>>()?;
            let by_size: BTreeMap<u32, Design> = built
                .into_iter()
                .map(|d| (if d.params.kind == DesignKind::Mgdd { d.params.t } else { d.params.n }, d))
                .collect();
            let d = if rule == Rule::GddMgdd {
                from_strict_gdd_and_mgdd(&source, &by_size)?
            } else {
                match from_scgdd_and_schgdd(&source, &by_size) {
                    Ok(d) => d,
                    Err(ForgeError::NotConstructible(why)) => return search_instead(goal, ctx, &why),
                    Err(e) => return Err(e),
                }
            };
            let mut parts = vec![&source];
            parts.extend(by_size.values());
            let prov = format!("{rule}[{}]", sub(&parts));
            finish(goal, d, prov)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursive::plan::plan;
    use crate::verify::verify_schgdd;

    #[test]
    fn executes_small_plans() {
        let ctx = ExecContext::default();
        for (n, m, t) in [(4, 6, 6), (4, 4, 4), (6, 2, 4), (9, 1, 9), (3, 6, 5)] {
            let d = execute_plan(&plan(n, m, t), &ctx).unwrap();
            assert_eq!(d.params, DesignParams::schgdd(n, m, t));
            assert!(verify_schgdd(&d).valid, "({n},{m},{t})");
        }
        assert!(matches!(execute_plan(&plan(5, 1, 4), &ctx), Err(ForgeError::NotConstructible(_))));
    }
}
