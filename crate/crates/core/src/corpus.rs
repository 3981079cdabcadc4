//! Standard objects and constructors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::object::{make_object, FiniteGwaObject, Table};
use crate::search::{automorphisms, composition_table, search_maps, Budget};

/// `Z/n` with trivial action.
pub fn cyclic_trivial(n: usize) -> Result<FiniteGwaObject> {
    if n == 0 {
        return Err(Error::input("cyclic group order must be positive"));
    }
    let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let act = (0..n).map(|x| vec![x; n]).collect();
    make_object(format!("z{n}"), n, add, act, true)
}

/// Componentwise sum; the pair `(a, b)` gets index `a * |B| + b`.
pub fn direct_sum(a: &FiniteGwaObject, b: &FiniteGwaObject) -> Result<FiniteGwaObject> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let split = |x: usize| (x / nb, x % nb);
    let pair = |x: usize, y: usize| x * nb + y;
    let mut add = vec![vec![0; n]; n];
    let mut act = vec![vec![0; n]; n];
    for x in 0..n {
        let (x1, x2) = split(x);
        for y in 0..n {
            let (y1, y2) = split(y);
            add[x][y] = pair(a.add(x1, y1), b.add(x2, y2));
            act[x][y] = pair(a.act(x1, y1), b.act(x2, y2));
        }
    }
    make_object(format!("{}x{}", a.name(), b.name()), n, add, act, false)
}

/// Conjugation action `x^y = -y + x + y` on the group given by `add`.
/// Returns raw tables; for non-abelian groups they fail the reduced check.
pub fn conjugation_object(add: &Table) -> Result<(Table, Table)> {
    let n = add.len();
    let trivial: Table = (0..n).map(|x| vec![x; n]).collect();
    let report = crate::object::check_axioms(n, add, &trivial, false)?;
    if report.fails("group.assoc") || report.fails("group.identity") || report.fails("group.inverse") {
        return Err(Error::Rejected {
            context: "conjugation_object: addition table".into(),
            report,
        });
    }
    let neg: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| add[x][y] == 0).unwrap()).collect();
    let act = (0..n)
        .map(|x| (0..n).map(|y| add[add[neg[y]][x]][y]).collect())
        .collect();
    Ok((add.clone(), act))
}

/// Symmetric group on three letters. Elements are the permutations of
/// `{0,1,2}` in lexicographic order and `(x + y)(i) = y(x(i))`.
pub fn s3_add_table() -> Table {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|x| perms.iter().map(|y| index([y[x[0]], y[x[1]], y[x[2]]])).collect())
        .collect()
}

pub fn klein4() -> FiniteGwaObject {
    let z2 = cyclic_trivial(2).unwrap();
    direct_sum(&z2, &z2).unwrap().with_name("klein4")
}

pub fn z2xz4() -> FiniteGwaObject {
    direct_sum(&cyclic_trivial(2).unwrap(), &cyclic_trivial(4).unwrap())
        .unwrap()
        .with_name("z2xz4")
}

/// Klein four group `{0, e1, e2, e1+e2}` (indices 0..3 as in [`klein4`]) where
/// `e1` and `e2` act by swapping `e1` and `e2`, and `e1+e2` acts trivially.
pub fn klein_swap() -> FiniteGwaObject {
    let v4 = klein4();
    let swap = [0, 2, 1, 3];
    let act = (0..4)
        .map(|x| (0..4).map(|y| if y == 1 || y == 2 { swap[x] } else { x }).collect())
        .collect();
    make_object("klein4_swap", 4, v4.add_table().clone(), act, true).unwrap()
}

/// The validated part of the emitted corpus: `z1`..`z8`, `klein4`, `z2xz4`.
pub fn standard_objects() -> Vec<FiniteGwaObject> {
    let mut out: Vec<_> = (1..=8).map(|n| cyclic_trivial(n).unwrap()).collect();
    out.push(klein4());
    out.push(z2xz4());
    out
}

pub fn standard_objects_arc() -> Vec<Arc<FiniteGwaObject>> {
    standard_objects().into_iter().map(Arc::new).collect()
}

/// Named file stems and tables for the corpus, in emission order. The S3
/// conjugation entry is a negative example and does not validate as reduced.
pub fn corpus_files() -> Vec<crate::object::ObjectFile> {
    let mut files: Vec<_> = standard_objects().iter().map(FiniteGwaObject::to_file).collect();
    let (add, act) = conjugation_object(&s3_add_table()).unwrap();
    files.push(crate::object::ObjectFile {
        name: "s3_conjugation".into(),
        order: 6,
        add,
        act,
    });
    files
}

/// Invariant-factor lists `d1 | d2 | ... | dk` with `d1 > 1` and product `n`.
fn invariant_factors(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, min_div: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            if !rest.is_multiple_of(d) {
                continue;
            }
            if let Some(&last) = prefix.last() {
                if d % last != 0 {
                    continue;
                }
            } else if d < min_div {
                continue;
            }
            prefix.push(d);
            rec(rest / d, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// One representative of every finite abelian group of order `n`.
pub fn abelian_groups(n: usize) -> Result<Vec<FiniteGwaObject>> {
    if n == 0 {
        return Err(Error::input("order must be positive"));
    }
    if n == 1 {
        return Ok(vec![cyclic_trivial(1)?]);
    }
    invariant_factors(n)
        .into_iter()
        .map(|factors| {
            let mut obj = cyclic_trivial(factors[0])?;
            for &d in &factors[1..] {
                obj = direct_sum(&obj, &cyclic_trivial(d)?)?;
            }
            Ok(obj)
        })
        .collect()
}

/// Every reduced group with action on an abelian group of order at most
/// `max_order`, one per action table.
///
/// A reduced object with more than one element is abelian: for `y != 0` every
/// `x^y` is central and `x ↦ x^y` is onto. So searching abelian carriers is
/// exhaustive up to relabelling of the carrier.
pub fn search_reduced_objects(max_order: usize, budget: &Budget) -> Result<Vec<FiniteGwaObject>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for g in abelian_groups(n)? {
            let auts = automorphisms(&g, budget)?;
            let comp = composition_table(&auts)?;
            // rho(y + y') = rho(y) followed by rho(y')
            let actions = search_maps(
                &g,
                auts.len(),
                |_, ry, _, ry2| Some(comp[ry][ry2]),
                |_| true,
                budget,
                "action search",
            )?;
            let mut found = Vec::new();
            for rho in actions {
                let act: Table = (0..n).map(|x| (0..n).map(|y| auts[rho[y]][x]).collect()).collect();
                if let Ok(obj) = make_object(String::new(), n, g.add_table().clone(), act, true) {
                    found.push(obj);
                }
            }
            found.sort_by(|a, b| a.act_table().cmp(b.act_table()));
            for (k, obj) in found.into_iter().enumerate() {
                let name = format!("{}@{k}", g.name());
                out.push(obj.with_name(name));
            }
        }
    }
    Ok(out)
}
