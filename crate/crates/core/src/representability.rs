//! `PA(A)` as an object in its own right, its action on `A`, and the
//! representing morphism `B -> PA(A)` of a derived action.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::derived::{check_derived_action, enumerate_derived_actions, DerivedActionTriple};
use crate::error::{Error, Result};
use crate::object::{check_axioms, is_morphism, make_object, FiniteGwaObject, GwaMorphism, Table};
use crate::pentaction::{
    check_pentaction, enumerate_pentactions, pent_add, pent_pow, zero_pentaction, Pentaction, PentactionCandidate,
};
use crate::report::{CheckReport, Violation};
use crate::search::Budget;

/// The set of pentactions of `A` with sum as addition and power as action.
#[derive(Debug, Clone)]
pub struct PAObject {
    pub base: Arc<FiniteGwaObject>,
    /// Canonical order, with the zero pentaction at index 0.
    pub elements: Vec<Pentaction>,
    /// Present when sum and power are closed on `elements`.
    pub add: Option<Table>,
    pub act: Option<Table>,
    /// Present when the tables also form a group with action.
    pub object: Option<Arc<FiniteGwaObject>>,
    /// Closure failures (`pa.closure.add`, `pa.closure.act`) followed by the
    /// group, action and reduced checks of the tables.
    pub report: CheckReport,
    index: HashMap<PentactionCandidate, usize>,
}

impl PAObject {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &PentactionCandidate) -> Option<usize> {
        self.index.get(p).copied()
    }
}

pub fn build_pa_object(a: &Arc<FiniteGwaObject>, budget: &Budget) -> Result<PAObject> {
    let mut elements = enumerate_pentactions(a, budget)?;
    let zero = zero_pentaction(a);
    if let Some(pos) = elements.iter().position(|p| *p == zero) {
        let z = elements.remove(pos);
        elements.insert(0, z);
    }
    let k = elements.len();
    let index: HashMap<PentactionCandidate, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.candidate().clone(), i))
        .collect();

    let table = |op: fn(&FiniteGwaObject, &Pentaction, &Pentaction) -> Result<PentactionCandidate>| {
        (0..k)
            .into_par_iter()
            .map(|i| {
                (0..k)
                    .map(|j| Ok(op(a, &elements[i], &elements[j])?).map(|c| index.get(&c).copied()))
                    .collect::<Result<Vec<Option<usize>>>>()
            })
            .collect::<Result<Vec<_>>>()
    };
    let add_raw = table(|a, p, q| pent_add(a, p, q))?;
    let act_raw = table(|a, p, q| pent_pow(a, p, q))?;

    let mut report = CheckReport::pass();
    let mut close = |raw: Vec<Vec<Option<usize>>>, id: &str| -> Option<Table> {
        let mut missing = None;
        for (i, row) in raw.iter().enumerate() {
            if let Some(j) = row.iter().position(Option::is_none) {
                missing = Some(vec![i, j]);
                break;
            }
        }
        match missing {
            Some(w) => {
                report.push(id, w);
                None
            }
            None => Some(
                raw.into_iter()
                    .map(|r| r.into_iter().map(Option::unwrap).collect())
                    .collect(),
            ),
        }
    };
    let add = close(add_raw, "pa.closure.add");
    let act = close(act_raw, "pa.closure.act");

    let mut object = None;
    if let (Some(add), Some(act)) = (&add, &act) {
        report.merge(check_axioms(k, add, act, true)?);
        let gwa_ok = report.violations.iter().all(|v| v.condition.starts_with("reduced."));
        if gwa_ok {
            let name = format!("PA({})", a.name());
            object = Some(Arc::new(make_object(name, k, add.clone(), act.clone(), false)?));
        }
    }
    Ok(PAObject {
        base: a.clone(),
        elements,
        add,
        act,
        object,
        report,
        index,
    })
}

fn pa_object(pa: &PAObject) -> Result<&Arc<FiniteGwaObject>> {
    pa.object.as_ref().ok_or_else(|| {
        Error::structural(format!(
            "PA({}) is not a group with action: {:?}",
            pa.base.name(),
            pa.report.failed_conditions()
        ))
    })
}

/// `𝔟·a = b·a`, `a^𝔟 = a^b`, `𝔟^a = b^a`, read off the components.
pub fn pa_action(pa: &PAObject) -> Result<DerivedActionTriple> {
    let b = pa_object(pa)?.clone();
    let n = pa.base.order();
    let dot = pa.elements.iter().map(|p| p.dot_left.clone()).collect();
    let up = (0..n).map(|x| pa.elements.iter().map(|p| p.up[x]).collect()).collect();
    let pow = pa.elements.iter().map(|p| p.pow.clone()).collect();
    DerivedActionTriple::new(pa.base.clone(), b, dot, up, pow)
}

/// `φ(b) = (b·-, (-b)·-, (-)^b, (-)^{-b}, b^(-))`, looked up in `PA(A)`.
pub fn represent(t: &DerivedActionTriple, pa: &PAObject) -> Result<GwaMorphism> {
    let check = check_derived_action(t);
    if !check.passed {
        return Err(Error::Rejected {
            context: "triple to represent".into(),
            report: check,
        });
    }
    let target = pa_object(pa)?.clone();
    let (a, b) = (&*t.a, &*t.b);
    let mut map = Vec::with_capacity(b.order());
    for x in 0..b.order() {
        let nx = b.neg(x);
        let cand = PentactionCandidate {
            dot_left: t.dot[x].clone(),
            dot_right: t.dot[nx].clone(),
            up: (0..a.order()).map(|k| t.up[k][x]).collect(),
            up_left: (0..a.order()).map(|k| t.up[k][nx]).collect(),
            pow: t.pow[x].clone(),
        };
        let report = check_pentaction(a, &cand)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::structural(format!(
                "phi({x}) is not a pentaction: {} fails at {:?}",
                v.condition, v.witness
            )));
        }
        let idx = pa
            .index_of(&cand)
            .ok_or_else(|| Error::structural(format!("phi({x}) is missing from PA({})", a.name())))?;
        map.push(idx);
    }
    GwaMorphism::new(t.b.clone(), target, map)
}

/// Exhaustive check that `phi` is the only map `B -> PA(A)` satisfying
/// `b·a = φ(b)·a`, `a^b = a^φ(b)`, `b^a = φ(b)^a`.
///
/// `factor` (witness `b`) flags a value of `phi` violating the identities;
/// `unique` (witness `b, i`) flags another admissible value `i` at `b`.
pub fn verify_uniqueness(
    t: &DerivedActionTriple,
    phi: &[usize],
    pa: &PAObject,
    budget: &Budget,
) -> Result<CheckReport> {
    let (na, nb) = (t.a.order(), t.b.order());
    if phi.len() != nb || phi.iter().any(|&i| i >= pa.order()) {
        return Err(Error::input("phi does not map B into PA(A)"));
    }
    budget.tick((nb * pa.order()) as u64, "uniqueness check")?;
    let admissible = |x: usize, p: &Pentaction| {
        (0..na).all(|k| t.dot[x][k] == p.dot_left[k] && t.up[k][x] == p.up[k] && t.pow[x][k] == p.pow[k])
    };
    let mut report = CheckReport::pass();
    for (x, &px) in phi.iter().enumerate() {
        if !admissible(x, &pa.elements[px]) {
            report.push("factor", vec![x]);
        }
        if let Some(i) = (0..pa.order()).find(|&i| i != px && admissible(x, &pa.elements[i])) {
            report.push("unique", vec![x, i]);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationFailure {
    #[serde(rename = "B")]
    pub b: String,
    pub triple: usize,
    pub stage: String,
    pub detail: String,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentabilityReport {
    pub pairs_checked: usize,
    pub all_passed: bool,
    pub failures: Vec<RepresentationFailure>,
}

/// For every `B` in `objects` and every derived action of `B` on `A`: builds
/// `φ`, checks it is a morphism, and checks it is unique.
pub fn verify_representability(
    pa: &PAObject,
    objects: &[Arc<FiniteGwaObject>],
    budget: &Budget,
) -> Result<RepresentabilityReport> {
    let mut pairs = Vec::new();
    for b in objects {
        for (k, t) in enumerate_derived_actions(&pa.base, b, budget)?.into_iter().enumerate() {
            pairs.push((k, t));
        }
    }
    let results: Vec<Option<RepresentationFailure>> = pairs
        .par_iter()
        .map(|(k, t)| -> Result<Option<RepresentationFailure>> {
            let fail = |stage: &str, detail: String, violations: Vec<Violation>| {
                Some(RepresentationFailure {
                    b: t.b.name().to_string(),
                    triple: *k,
                    stage: stage.into(),
                    detail,
                    violations,
                })
            };
            let phi = match represent(t, pa) {
                Ok(phi) => phi,
                Err(e @ (Error::Structural(_) | Error::Rejected { .. })) => {
                    return Ok(fail("represent", e.to_string(), Vec::new()))
                }
                Err(e) => return Err(e),
            };
            let hom = is_morphism(&phi);
            if !hom.passed {
                return Ok(fail("morphism", "phi is not a morphism".into(), hom.violations));
            }
            let uniq = verify_uniqueness(t, &phi.map, pa, budget)?;
            if !uniq.passed {
                return Ok(fail("uniqueness", "phi is not unique".into(), uniq.violations));
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let failures: Vec<_> = results.into_iter().flatten().collect();
    Ok(RepresentabilityReport {
        pairs_checked: pairs.len(),
        all_passed: failures.is_empty(),
        failures,
    })
}

/// Combined report as emitted by the command line.
#[derive(Debug, Clone, Serialize)]
pub struct PaReport {
    pub pa_order: usize,
    pub pa_rgwa: CheckReport,
    pub pa_action: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representability: Option<RepresentabilityReport>,
}

impl PaReport {
    pub fn passed(&self) -> bool {
        self.pa_rgwa.passed && self.pa_action.passed && self.representability.as_ref().is_none_or(|r| r.all_passed)
    }
}

/// Builds `PA(A)`, checks it, and checks its action on `A`. When `PA(A)` is not
/// a group with action the action report carries a single `pa.not_gwa` entry.
pub fn pa_report(pa: &PAObject) -> Result<PaReport> {
    let pa_action = match pa_action(pa) {
        Ok(t) => check_derived_action(&t),
        Err(Error::Structural(_)) => {
            let mut r = CheckReport::pass();
            r.push("pa.not_gwa", Vec::new());
            r
        }
        Err(e) => return Err(e),
    };
    Ok(PaReport {
        pa_order: pa.order(),
        pa_rgwa: pa.report.clone(),
        pa_action,
        representability: None,
    })
}
