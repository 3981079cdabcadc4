//! Derived subobject, perfectness, stabilizers and the quotient procedure that
//! removes the weak stabilizer of an abelian trivial-action object.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::object::{quotient_with_projection, subobject_closure, ElementSet, FiniteGwaObject};
use crate::pentaction::{enumerate_pentactions, pent_add, Pentaction};
use crate::search::Budget;

/// Subobject generated by all `a^{a'}`.
pub fn derived_subobject(a: &FiniteGwaObject) -> ElementSet {
    let n = a.order();
    let seeds = ElementSet::new(
        n,
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| a.act(x, y)),
    )
    .expect("in range");
    subobject_closure(a, &seeds)
}

pub fn is_perfect(a: &FiniteGwaObject) -> bool {
    derived_subobject(a).is_full()
}

/// Elements `s` with `a^s = a` for every `a`.
pub fn stabilizer(a: &FiniteGwaObject) -> ElementSet {
    let n = a.order();
    ElementSet::new(n, (0..n).filter(|&s| (0..n).all(|x| a.act(x, s) == x))).expect("in range")
}

/// The raw set `{ b^(b'^a), b^(a^b') - b^a, a^(b+b') - a^(b'+b) }` over all
/// pentactions `b, b'` and elements `a`. Not closed up to a subobject.
pub fn weak_stabilizer(a: &FiniteGwaObject, budget: &Budget) -> Result<ElementSet> {
    let pents = enumerate_pentactions(a, budget)?;
    weak_stabilizer_of(a, &pents)
}

pub fn weak_stabilizer_of(a: &FiniteGwaObject, pents: &[Pentaction]) -> Result<ElementSet> {
    let n = a.order();
    let mut hit = vec![false; n];
    for p in pents {
        for q in pents {
            let pq = pent_add(a, p, q)?;
            let qp = pent_add(a, q, p)?;
            for x in 0..n {
                hit[p.pow[q.pow[x]]] = true;
                hit[a.sub(p.pow[q.up[x]], p.pow[x])] = true;
                hit[a.sub(pq.up[x], qp.up[x])] = true;
            }
        }
    }
    ElementSet::new(n, (0..n).filter(|&x| hit[x]))
}

/// The chain `W_1 ⊂ W_2 ⊂ …` and the final quotient `C = A / W_n`.
#[derive(Debug, Clone)]
pub struct NoetherChain {
    pub subgroups: Vec<ElementSet>,
    pub quotient: FiniteGwaObject,
    /// Projection `A -> C`.
    pub projection: Vec<usize>,
    /// Weak stabilizer of `C`, contained in `{0}` on success.
    pub quotient_weak_stabilizer: ElementSet,
    /// Whether every intermediate quotient was perfect.
    pub quotients_perfect: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoetherSummary {
    pub subgroup_orders: Vec<usize>,
    pub quotient_order: usize,
}

impl NoetherChain {
    pub fn summary(&self) -> NoetherSummary {
        NoetherSummary {
            subgroup_orders: self.subgroups.iter().map(ElementSet::len).collect(),
            quotient_order: self.quotient.order(),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.subgroups
            .windows(2)
            .all(|w| w[0].is_subset(&w[1]) && w[0].len() < w[1].len())
    }
}

/// Repeatedly quotients out the subgroup generated by the weak stabilizer,
/// pulled back to `A`, until the quotient has weak stabilizer inside `{0}`.
pub fn noether_quotient(a: &FiniteGwaObject, budget: &Budget) -> Result<NoetherChain> {
    if !a.is_abelian_trivial() {
        return Err(Error::Unsupported(format!(
            "noether_quotient needs an abelian object with trivial action; {} is not",
            a.name()
        )));
    }
    let n = a.order();
    let mut subgroups: Vec<ElementSet> = Vec::new();
    let mut current = ElementSet::new(n, [0])?;
    let mut quotients_perfect = true;
    loop {
        let (quot, projection) = quotient_with_projection(a, &current)?;
        quotients_perfect &= is_perfect(&quot);
        let wst = weak_stabilizer(&quot, budget)?;
        if wst.is_trivial() {
            return Ok(NoetherChain {
                subgroups,
                quotient: quot,
                projection,
                quotient_weak_stabilizer: wst,
                quotients_perfect,
            });
        }
        let preimage = ElementSet::new(n, (0..n).filter(|&x| wst.contains(projection[x])))?;
        let next = subobject_closure(a, &preimage.union(&current));
        if next.len() <= current.len() {
            return Err(Error::structural("weak stabilizer chain failed to grow"));
        }
        subgroups.push(next.clone());
        current = next;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub perfect: bool,
    pub stabilizer: Vec<usize>,
    pub weak_stabilizer: Vec<usize>,
    pub noether_chain: Option<NoetherSummary>,
}

pub fn analyze(a: &FiniteGwaObject, budget: &Budget) -> Result<AnalysisReport> {
    let noether_chain = if a.is_abelian_trivial() {
        Some(noether_quotient(a, budget)?.summary())
    } else {
        None
    };
    Ok(AnalysisReport {
        perfect: is_perfect(a),
        stabilizer: stabilizer(a).members().to_vec(),
        weak_stabilizer: weak_stabilizer(a, budget)?.members().to_vec(),
        noether_chain,
    })
}
