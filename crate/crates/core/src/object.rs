//! Finite groups with action stored as operation tables.
//!
//! Elements are the dense indices `0..n`, with `0` the additive zero. The
//! addition table is `add[x][y] = x + y` and the action table is
//! `act[x][y] = x^y`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{CheckReport, Scanner};

pub type Table = Vec<Vec<usize>>;

/// On-disk form of an object: `{"name", "order", "add", "act"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectFile {
    pub name: String,
    pub order: usize,
    pub add: Table,
    pub act: Table,
}

/// A validated group with action on itself.
///
/// Construct through [`make_object`] or [`ObjectFile`]; the tables are never
/// mutated afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGwaObject {
    name: String,
    add: Table,
    act: Table,
    neg: Vec<usize>,
    reduced: bool,
}

impl FiniteGwaObject {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn act_table(&self) -> &Table {
        &self.act
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    /// `x - y`, i.e. `x + (-y)`.
    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg[y]]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    /// `x^y`.
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.act[x][y]
    }

    /// Whether the two reduced conditions hold, independently of whether they
    /// were required at construction time.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.add[x][y] == self.add[y][x]))
    }

    pub fn has_trivial_action(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.act[x][y] == x))
    }

    pub fn is_abelian_trivial(&self) -> bool {
        self.is_abelian() && self.has_trivial_action()
    }

    pub fn to_file(&self) -> ObjectFile {
        ObjectFile {
            name: self.name.clone(),
            order: self.order(),
            add: self.add.clone(),
            act: self.act.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Builds an object from tables that already passed the group and action
    /// checks.
    fn from_checked(name: String, add: Table, act: Table) -> Self {
        let neg = negation(&add);
        let reduced = reduced_violations(&add, &act, true).passed;
        FiniteGwaObject {
            name,
            add,
            act,
            neg,
            reduced,
        }
    }
}

impl ObjectFile {
    pub fn into_object(self, require_reduced: bool) -> Result<FiniteGwaObject> {
        if self.order != self.add.len() {
            return Err(Error::input(format!(
                "declared order {} but add table has {} rows",
                self.order,
                self.add.len()
            )));
        }
        make_object(self.name, self.order, self.add, self.act, require_reduced)
    }
}

fn negation(add: &Table) -> Vec<usize> {
    let n = add.len();
    (0..n).map(|x| (0..n).find(|&y| add[x][y] == 0).unwrap_or(0)).collect()
}

fn check_shape(order: usize, table: &Table, what: &str) -> Result<()> {
    if table.len() != order {
        return Err(Error::input(format!(
            "{what} table has {} rows, expected {order}",
            table.len()
        )));
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != order {
            return Err(Error::input(format!(
                "{what} row {r} has {} entries, expected {order}",
                row.len()
            )));
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(Error::input(format!(
                "{what}[{r}][{c}] = {v} is out of range for order {order}"
            )));
        }
    }
    Ok(())
}

/// Scans the group axioms, the action axioms and optionally the two reduced
/// conditions.
///
/// Condition ids: `group.assoc` (x,y,z), `group.identity` (x),
/// `group.inverse` (x), `action.add` (g,g',h), `action.compose` (g,h,h'),
/// `action.zero` (g), `reduced.central` (x,y,z), `reduced.collapse` (x,y,z).
pub fn check_axioms(order: usize, add: &Table, act: &Table, require_reduced: bool) -> Result<CheckReport> {
    if order == 0 {
        return Err(Error::input("order must be positive"));
    }
    check_shape(order, add, "add")?;
    check_shape(order, act, "act")?;
    let n = order;
    let mut s = Scanner::new(false);
    s.check("group.assoc", [n, n, n], |[x, y, z]| {
        add[add[x][y]][z] == add[x][add[y][z]]
    });
    s.check("group.identity", [n], |[x]| add[0][x] == x && add[x][0] == x);
    s.check("group.inverse", [n], |[x]| {
        (0..n).any(|y| add[x][y] == 0 && add[y][x] == 0)
    });
    s.check("action.add", [n, n, n], |[g, g2, h]| {
        act[add[g][g2]][h] == add[act[g][h]][act[g2][h]]
    });
    s.check("action.compose", [n, n, n], |[g, h, h2]| {
        act[g][add[h][h2]] == act[act[g][h]][h2]
    });
    s.check("action.zero", [n], |[g]| act[g][0] == g);
    let mut report = s.finish();
    if require_reduced {
        report.merge(reduced_violations(add, act, false));
    }
    Ok(report)
}

fn reduced_violations(add: &Table, act: &Table, stop_at_first: bool) -> CheckReport {
    let n = add.len();
    let mut s = Scanner::new(stop_at_first);
    let stop = s.check("reduced.central", [n, n, n], |[x, y, z]| {
        y == 0 || add[act[x][y]][z] == add[z][act[x][y]]
    });
    if !stop {
        s.check("reduced.collapse", [n, n, n], |[x, y, z]| {
            act[x][act[y][z]] == act[x][y]
        });
    }
    s.finish()
}

/// Validates tables and wraps them as an object, or returns the failing report.
pub fn make_object(
    name: impl Into<String>,
    order: usize,
    add: Table,
    act: Table,
    require_reduced: bool,
) -> Result<FiniteGwaObject> {
    let name = name.into();
    let report = check_axioms(order, &add, &act, require_reduced)?;
    if !report.passed {
        return Err(Error::Rejected {
            context: format!("object {name}"),
            report,
        });
    }
    Ok(FiniteGwaObject::from_checked(name, add, act))
}

/// A map between objects, not necessarily a morphism until checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwaMorphism {
    pub source: Arc<FiniteGwaObject>,
    pub target: Arc<FiniteGwaObject>,
    pub map: Vec<usize>,
}

impl GwaMorphism {
    pub fn new(source: Arc<FiniteGwaObject>, target: Arc<FiniteGwaObject>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::input(format!(
                "map has length {}, source {} has order {}",
                map.len(),
                source.name(),
                source.order()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::input(format!(
                "map value {v} out of range for target {} of order {}",
                target.name(),
                target.order()
            )));
        }
        Ok(GwaMorphism { source, target, map })
    }

    pub fn identity(obj: Arc<FiniteGwaObject>) -> Self {
        let map = (0..obj.order()).collect();
        GwaMorphism {
            source: obj.clone(),
            target: obj,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// Checks `f(x+y) = f(x)+f(y)` (`hom.add`) and `f(x^y) = f(x)^f(y)`
/// (`hom.act`) over all pairs.
pub fn is_morphism(f: &GwaMorphism) -> CheckReport {
    let (s, t, m) = (&*f.source, &*f.target, &f.map);
    let n = s.order();
    let mut sc = Scanner::new(false);
    sc.check("hom.add", [n, n], |[x, y]| m[s.add(x, y)] == t.add(m[x], m[y]));
    sc.check("hom.act", [n, n], |[x, y]| m[s.act(x, y)] == t.act(m[x], m[y]));
    sc.finish()
}

/// A sorted, duplicate-free subset of an object's carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    parent_order: usize,
    members: Vec<usize>,
}

impl ElementSet {
    pub fn new(parent_order: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&m) = set.iter().find(|&&m| m >= parent_order) {
            return Err(Error::input(format!(
                "element {m} out of range for order {parent_order}"
            )));
        }
        Ok(ElementSet {
            parent_order,
            members: set.into_iter().collect(),
        })
    }

    pub fn empty(parent_order: usize) -> Self {
        ElementSet {
            parent_order,
            members: Vec::new(),
        }
    }

    pub fn full(parent_order: usize) -> Self {
        ElementSet {
            parent_order,
            members: (0..parent_order).collect(),
        }
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// True when the set is contained in `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.members.iter().all(|&x| x == 0)
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        ElementSet {
            parent_order: self.parent_order,
            members,
        }
    }
}

/// Smallest subset containing `0` and `seeds` that is closed under addition,
/// negation and the action with both arguments in the subset.
pub fn subobject_closure(a: &FiniteGwaObject, seeds: &ElementSet) -> ElementSet {
    let n = a.order();
    let mut inside = vec![false; n];
    let mut members = vec![0usize];
    inside[0] = true;
    for &s in seeds.members() {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    let mut done = 0;
    while done < members.len() {
        let x = members[done];
        done += 1;
        let mut fresh = vec![a.neg(x)];
        for &y in &members[..done] {
            fresh.extend([a.add(x, y), a.add(y, x), a.act(x, y), a.act(y, x)]);
        }
        for z in fresh {
            if !inside[z] {
                inside[z] = true;
                members.push(z);
            }
        }
    }
    ElementSet {
        parent_order: n,
        members: (0..n).filter(|&x| inside[x]).collect(),
    }
}

fn require_abelian_trivial(a: &FiniteGwaObject, op: &str) -> Result<()> {
    if !a.is_abelian_trivial() {
        return Err(Error::Unsupported(format!(
            "{op} is only defined for abelian objects with trivial action; {} is not",
            a.name()
        )));
    }
    Ok(())
}

/// `A/W` for an abelian trivial-action `A`, together with the projection
/// `A -> A/W`. Cosets are numbered by their smallest representative.
pub fn quotient_with_projection(a: &FiniteGwaObject, w: &ElementSet) -> Result<(FiniteGwaObject, Vec<usize>)> {
    require_abelian_trivial(a, "quotient")?;
    if w.parent_order() != a.order() {
        return Err(Error::input("subgroup belongs to an object of different order"));
    }
    if subobject_closure(a, w) != *w {
        return Err(Error::input(format!(
            "{:?} is not a subgroup of {}",
            w.members(),
            a.name()
        )));
    }
    let n = a.order();
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let label = reps.len();
        reps.push(x);
        for &k in w.members() {
            projection[a.add(x, k)] = label;
        }
    }
    let m = reps.len();
    let add: Table = (0..m)
        .map(|i| (0..m).map(|j| projection[a.add(reps[i], reps[j])]).collect())
        .collect();
    let act: Table = (0..m).map(|i| vec![i; m]).collect();
    let name = format!("{}/{:?}", a.name(), w.members());
    Ok((FiniteGwaObject::from_checked(name, add, act), projection))
}

pub fn quotient_by_subgroup(a: &FiniteGwaObject, w: &ElementSet) -> Result<FiniteGwaObject> {
    quotient_with_projection(a, w).map(|(q, _)| q)
}

/// The subobject carried by a closed subset, relabelled in increasing order of
/// the original indices.
pub fn restrict_to_subobject(a: &FiniteGwaObject, s: &ElementSet) -> Result<FiniteGwaObject> {
    if s.parent_order() != a.order() || subobject_closure(a, s) != *s {
        return Err(Error::input(format!(
            "{:?} is not a subobject of {}",
            s.members(),
            a.name()
        )));
    }
    let members = s.members();
    let pos = |x: usize| members.binary_search(&x).expect("closed subset");
    let add = members
        .iter()
        .map(|&x| members.iter().map(|&y| pos(a.add(x, y))).collect())
        .collect();
    let act = members
        .iter()
        .map(|&x| members.iter().map(|&y| pos(a.act(x, y))).collect())
        .collect();
    let name = format!("{}|{:?}", a.name(), members);
    Ok(FiniteGwaObject::from_checked(name, add, act))
}
