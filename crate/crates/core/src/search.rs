//! Backtracking over maps `G -> X` whose value on `x + y` is determined by the
//! values on `x` and `y`.
//!
//! Homomorphisms, crossed maps and actions `B -> Aut(A)` all have this shape,
//! so a single engine with constraint propagation serves every enumerator in
//! the crate.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::object::FiniteGwaObject;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A shared visit counter. Searches call [`Budget::tick`] once per candidate or
/// search node and abort once the limit is crossed.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    #[inline]
    pub fn tick(&self, n: u64, context: &str) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before + n > self.limit {
            return Err(Error::Budget {
                limit: self.limit,
                context: format!("{context} (after {before} visits)"),
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Enumerates every total map `v: domain -> 0..codomain` such that
/// `v[x + y] == combine(x, v[x], y, v[y])` for all `x, y` and `accept(v)`
/// holds. Output is sorted lexicographically.
pub fn search_maps<C, F>(
    domain: &FiniteGwaObject,
    codomain: usize,
    combine: C,
    accept: F,
    budget: &Budget,
    context: &str,
) -> Result<Vec<Vec<usize>>>
where
    C: Fn(usize, usize, usize, usize) -> Option<usize>,
    F: Fn(&[usize]) -> bool,
{
    let mut out = Vec::new();
    let mut vals = vec![None; domain.order()];
    descend(
        domain, codomain, &combine, &accept, budget, context, &mut vals, &mut out,
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend<C, F>(
    domain: &FiniteGwaObject,
    codomain: usize,
    combine: &C,
    accept: &F,
    budget: &Budget,
    context: &str,
    vals: &mut [Option<usize>],
    out: &mut Vec<Vec<usize>>,
) -> Result<()>
where
    C: Fn(usize, usize, usize, usize) -> Option<usize>,
    F: Fn(&[usize]) -> bool,
{
    let Some(x) = vals.iter().position(Option::is_none) else {
        let total: Vec<usize> = vals.iter().map(|v| v.expect("assigned")).collect();
        if accept(&total) {
            out.push(total);
        }
        return Ok(());
    };
    for v in 0..codomain {
        budget.tick(1, context)?;
        let mut next = vals.to_vec();
        next[x] = Some(v);
        if propagate(domain, combine, &mut next) {
            descend(domain, codomain, combine, accept, budget, context, &mut next, out)?;
        }
    }
    Ok(())
}

/// Closes the assigned part under the combination rule. Returns false on a
/// conflict.
fn propagate<C>(domain: &FiniteGwaObject, combine: &C, vals: &mut [Option<usize>]) -> bool
where
    C: Fn(usize, usize, usize, usize) -> Option<usize>,
{
    let n = vals.len();
    loop {
        let mut changed = false;
        for x in 0..n {
            let Some(vx) = vals[x] else { continue };
            for y in 0..n {
                let Some(vy) = vals[y] else { continue };
                let Some(v) = combine(x, vx, y, vy) else {
                    return false;
                };
                let z = domain.add(x, y);
                match vals[z] {
                    None => {
                        vals[z] = Some(v);
                        changed = true;
                    }
                    Some(w) if w != v => return false,
                    Some(_) => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

pub fn is_bijection(m: &[usize]) -> bool {
    let mut seen = vec![false; m.len()];
    for &v in m {
        if v >= m.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

pub fn inverse(m: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; m.len()];
    for (x, &v) in m.iter().enumerate() {
        inv[v] = x;
    }
    inv
}

/// `x ↦ second(first(x))`.
pub fn then(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&v| second[v]).collect()
}

/// Additive bijections of `a`, sorted.
pub fn automorphisms(a: &FiniteGwaObject, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    search_maps(
        a,
        a.order(),
        |_, vx, _, vy| Some(a.add(vx, vy)),
        is_bijection,
        budget,
        "automorphism search",
    )
}

/// Maps `P` with `P(x + y) = P(x)^y + P(y)`, sorted. These are exactly the
/// candidates for the exponent component of a pentaction or a derived action.
pub fn crossed_maps(a: &FiniteGwaObject, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    search_maps(
        a,
        a.order(),
        |_, vx, y, vy| Some(a.add(a.act(vx, y), vy)),
        |_| true,
        budget,
        "crossed map search",
    )
}

/// Composition table over a list of bijections closed under composition:
/// `table[i][j]` is the index of `x ↦ maps[j](maps[i](x))`.
pub fn composition_table(maps: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    maps.iter()
        .map(|f| {
            maps.iter()
                .map(|g| {
                    let h = then(f, g);
                    maps.binary_search(&h)
                        .map_err(|_| Error::structural("map list not closed under composition"))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_trivial, direct_sum};

    fn brute_force_automorphisms(a: &FiniteGwaObject) -> Vec<Vec<usize>> {
        let n = a.order();
        let mut out = Vec::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut m = vec![0; n];
            let mut c = code;
            for k in (0..n).rev() {
                m[k] = c % n;
                c /= n;
            }
            let additive = (0..n).all(|x| (0..n).all(|y| m[a.add(x, y)] == a.add(m[x], m[y])));
            if additive && is_bijection(&m) {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn automorphism_counts() {
        let b = Budget::default();
        let expected = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (7, 6), (8, 4)];
        for (n, count) in expected {
            let z = cyclic_trivial(n).unwrap();
            assert_eq!(automorphisms(&z, &b).unwrap().len(), count, "Aut(Z/{n})");
        }
        let v4 = direct_sum(&cyclic_trivial(2).unwrap(), &cyclic_trivial(2).unwrap()).unwrap();
        assert_eq!(automorphisms(&v4, &b).unwrap().len(), 6);
    }

    #[test]
    fn automorphisms_match_brute_force() {
        let b = Budget::default();
        let z2 = cyclic_trivial(2).unwrap();
        let z4 = cyclic_trivial(4).unwrap();
        for obj in [
            cyclic_trivial(6).unwrap(),
            direct_sum(&z2, &z2).unwrap(),
            direct_sum(&z2, &z4).unwrap(),
        ] {
            assert_eq!(automorphisms(&obj, &b).unwrap(), brute_force_automorphisms(&obj));
        }
    }

    #[test]
    fn crossed_maps_on_trivial_action_are_endomorphisms() {
        let b = Budget::default();
        let z6 = cyclic_trivial(6).unwrap();
        assert_eq!(crossed_maps(&z6, &b).unwrap().len(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let z8 = cyclic_trivial(8).unwrap();
        let tiny = Budget::new(3);
        assert!(matches!(automorphisms(&z8, &tiny), Err(Error::Budget { .. })));
    }

    #[test]
    fn composition_table_of_aut_z5() {
        let b = Budget::default();
        let auts = automorphisms(&cyclic_trivial(5).unwrap(), &b).unwrap();
        let t = composition_table(&auts).unwrap();
        // identity is the smallest automorphism
        assert_eq!(auts[0], vec![0, 1, 2, 3, 4]);
        for (i, row) in t.iter().enumerate() {
            assert_eq!(t[0][i], i);
            assert_eq!(row[0], i);
        }
    }
}
