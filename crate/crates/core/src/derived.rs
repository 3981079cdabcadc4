//! Actions of one object on another as triples `(b·a, a^b, b^a)`.
//!
//! A split extension `0 -> A -i-> E -p-> B -> 0` with section `j` induces
//! `b·a = j(b) + a - j(b)`, `b^a = j(b)^a - j(b)` and `a^b = a^{j(b)}`. The
//! checker below scans the twenty-two conditions characterizing such triples.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{is_morphism, restrict_to_subobject, ElementSet, FiniteGwaObject, GwaMorphism, Table};
use crate::report::{CheckReport, Scanner};
use crate::search::{automorphisms, composition_table, crossed_maps, search_maps, Budget};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitExtension {
    pub a: Arc<FiniteGwaObject>,
    pub e: Arc<FiniteGwaObject>,
    pub b: Arc<FiniteGwaObject>,
    pub i: GwaMorphism,
    pub p: GwaMorphism,
    pub j: GwaMorphism,
}

/// A triple of maps `B × A -> A`. Validity is decided by
/// [`check_derived_action`]; a value of this type may be unverified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedActionTriple {
    pub a: Arc<FiniteGwaObject>,
    pub b: Arc<FiniteGwaObject>,
    /// `dot[b][a] = b·a`
    pub dot: Table,
    /// `up[a][b] = a^b`
    pub up: Table,
    /// `pow[b][a] = b^a`
    pub pow: Table,
}

/// On-disk form of a triple. Objects are referred to by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFile {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub dot: Table,
    pub up: Table,
    pub pow: Table,
}

/// On-disk form of a split extension: paths of the three object files and the
/// three maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitExtensionFile {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "B")]
    pub b: String,
    pub i: Vec<usize>,
    pub p: Vec<usize>,
    pub j: Vec<usize>,
}

impl DerivedActionTriple {
    pub fn new(a: Arc<FiniteGwaObject>, b: Arc<FiniteGwaObject>, dot: Table, up: Table, pow: Table) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let shape = |t: &Table, rows: usize, cols: usize, what: &str| -> Result<()> {
            if t.len() != rows || t.iter().any(|r| r.len() != cols) {
                return Err(Error::input(format!("{what} table must be {rows}x{cols}")));
            }
            if t.iter().flatten().any(|&v| v >= na) {
                return Err(Error::input(format!("{what} table has entries outside 0..{na}")));
            }
            Ok(())
        };
        shape(&dot, nb, na, "dot")?;
        shape(&up, na, nb, "up")?;
        shape(&pow, nb, na, "pow")?;
        Ok(DerivedActionTriple { a, b, dot, up, pow })
    }

    /// `dot=id, up=id, pow=0`.
    pub fn trivial(a: Arc<FiniteGwaObject>, b: Arc<FiniteGwaObject>) -> Self {
        let (na, nb) = (a.order(), b.order());
        DerivedActionTriple {
            dot: vec![(0..na).collect(); nb],
            up: (0..na).map(|x| vec![x; nb]).collect(),
            pow: vec![vec![0; na]; nb],
            a,
            b,
        }
    }

    pub fn from_file(file: TripleFile, a: Arc<FiniteGwaObject>, b: Arc<FiniteGwaObject>) -> Result<Self> {
        if file.a != a.name() || file.b != b.name() {
            return Err(Error::input(format!(
                "triple refers to {} and {}, got objects {} and {}",
                file.a,
                file.b,
                a.name(),
                b.name()
            )));
        }
        DerivedActionTriple::new(a, b, file.dot, file.up, file.pow)
    }

    pub fn to_file(&self) -> TripleFile {
        TripleFile {
            a: self.a.name().to_string(),
            b: self.b.name().to_string(),
            dot: self.dot.clone(),
            up: self.up.clone(),
            pow: self.pow.clone(),
        }
    }

    /// `dot ‖ up ‖ pow`, row-major.
    pub fn canonical_key(&self) -> Vec<usize> {
        self.dot
            .iter()
            .chain(self.up.iter())
            .chain(self.pow.iter())
            .flatten()
            .copied()
            .collect()
    }
}

/// Checks injectivity of `i` (`ext.inj`), surjectivity of `p` (`ext.surj`),
/// `image(i) = ker(p)` (`ext.ker`) and `p∘j = id` (`ext.section`), plus that
/// the three maps are morphisms (`ext.i.*`, `ext.p.*`, `ext.j.*`).
pub fn check_split_extension(ext: &SplitExtension) -> Result<CheckReport> {
    let endpoints = [
        ("i", &ext.i, &ext.a, &ext.e),
        ("p", &ext.p, &ext.e, &ext.b),
        ("j", &ext.j, &ext.b, &ext.e),
    ];
    for (name, f, s, t) in endpoints {
        if f.source != *s || f.target != *t {
            return Err(Error::input(format!("map {name} has mismatched endpoints")));
        }
    }
    let (na, ne, nb) = (ext.a.order(), ext.e.order(), ext.b.order());
    let mut report = CheckReport::pass();
    for (name, f) in [("i", &ext.i), ("p", &ext.p), ("j", &ext.j)] {
        for v in is_morphism(f).violations {
            report.push(
                format!("ext.{name}.{}", v.condition.trim_start_matches("hom.")),
                v.witness,
            );
        }
    }
    let mut s = Scanner::new(false);
    s.check("ext.inj", [na, na], |[x, y]| x == y || ext.i.apply(x) != ext.i.apply(y));
    s.check("ext.surj", [nb], |[b]| (0..ne).any(|e| ext.p.apply(e) == b));
    s.check("ext.ker", [ne], |[e]| {
        let in_kernel = ext.p.apply(e) == 0;
        let in_image = (0..na).any(|x| ext.i.apply(x) == e);
        in_kernel == in_image
    });
    s.check("ext.section", [nb], |[b]| ext.p.apply(ext.j.apply(b)) == b);
    report.merge(s.finish());
    Ok(report)
}

/// Reads the induced triple off a split extension, computing inside `E` and
/// pulling results back through `i`.
pub fn action_from_split_extension(ext: &SplitExtension) -> Result<DerivedActionTriple> {
    let report = check_split_extension(ext)?;
    if !report.passed {
        return Err(Error::Rejected {
            context: "split extension".into(),
            report,
        });
    }
    let e = &*ext.e;
    let (na, nb) = (ext.a.order(), ext.b.order());
    let mut back = vec![usize::MAX; e.order()];
    for x in 0..na {
        back[ext.i.apply(x)] = x;
    }
    let pull = |v: usize, what: &str| -> Result<usize> {
        match back[v] {
            usize::MAX => Err(Error::structural(format!("{what} lands outside image(i)"))),
            x => Ok(x),
        }
    };
    let mut dot = vec![vec![0; na]; nb];
    let mut pow = vec![vec![0; na]; nb];
    let mut up = vec![vec![0; nb]; na];
    for b in 0..nb {
        let jb = ext.j.apply(b);
        for x in 0..na {
            let ix = ext.i.apply(x);
            dot[b][x] = pull(e.sub(e.add(jb, ix), jb), "b·a")?;
            pow[b][x] = pull(e.sub(e.act(jb, ix), jb), "b^a")?;
            up[x][b] = pull(e.act(ix, jb), "a^b")?;
        }
    }
    DerivedActionTriple::new(ext.a.clone(), ext.b.clone(), dot, up, pow)
}

/// Scans the twenty-two conditions. Witness tuples list the `B` variables
/// first, then the `A` variables: `(b, b', a, a')` restricted to the
/// variables a condition mentions.
fn scan(t: &DerivedActionTriple, stop_at_first: bool) -> CheckReport {
    let (a, b) = (&*t.a, &*t.b);
    let (na, nb) = (a.order(), b.order());
    let (dot, up, pow) = (&t.dot, &t.up, &t.pow);
    let mut s = Scanner::new(stop_at_first);
    macro_rules! cond {
        ($id:literal, $dims:expr, $holds:expr) => {
            if s.check($id, $dims, $holds) {
                return s.finish();
            }
        };
    }
    cond!("ga.1", [nb, nb, na], |[x, y, u]| dot[b.add(x, y)][u]
        == dot[x][dot[y][u]]);
    cond!("ga.2", [nb, na, na], |[x, u, v]| dot[x][a.add(u, v)]
        == a.add(dot[x][u], dot[x][v]));
    cond!("ga.3", [na], |[u]| dot[0][u] == u);
    cond!("1A", [nb, na, na], |[x, u, v]| up[a.add(u, v)][x]
        == a.add(up[u][x], up[v][x]));
    cond!("2A", [nb, nb, na], |[x, y, u]| {
        pow[b.add(x, y)][u] == a.add(pow[x][u], dot[x][pow[y][u]])
    });
    cond!("3A", [nb, na, na], |[x, u, v]| v == 0
        || a.act(dot[x][u], v) == a.act(u, v));
    cond!("4A", [nb, nb, na], |[x, y, u]| up[dot[x][u]][y] == up[u][y]);
    cond!("1B", [nb, na, na], |[x, u, v]| {
        pow[x][a.add(u, v)] == a.add(a.act(pow[x][u], v), pow[x][v])
    });
    cond!("2B", [nb, nb, na], |[x, y, u]| up[u][b.add(x, y)] == up[up[u][x]][y]);
    cond!("3B", [nb, na, na], |[x, u, v]| up[a.act(u, dot[x][v])][x]
        == a.act(up[u][x], v));
    cond!("4B", [nb, nb, na], |[x, y, u]| up[pow[x][dot[y][u]]][y]
        == pow[b.act(x, y)][u]);
    cond!("zeroB", [na], |[u]| up[u][0] == u);
    cond!("a1", [nb, na, na], |[x, u, v]| v == 0
        || dot[x][a.act(u, v)] == a.act(u, v));
    cond!("a2", [nb, nb, na], |[x, y, u]| y == 0 || dot[x][up[u][y]] == up[u][y]);
    cond!("a3", [nb, nb, na], |[x, y, u]| y == 0 || dot[b.act(x, y)][u] == u);
    cond!("a4", [nb, na, na], |[x, u, v]| pow[x][a.act(u, v)] == pow[x][u]);
    cond!("a5", [nb, nb, na], |[x, y, u]| up[u][b.act(x, y)] == up[u][x]);
    cond!("a6", [nb, na, na], |[x, u, v]| x == 0
        || a.add(up[u][x], v) == a.add(v, up[u][x]));
    cond!("a7", [nb, na, na], |[x, u, v]| a.act(u, up[v][x]) == a.act(u, v));
    cond!("a8", [nb, na, na], |[x, u, v]| v == 0 || a.act(u, pow[x][v]) == u);
    cond!("a9", [nb, nb, na], |[x, y, u]| pow[x][pow[y][u]] == 0);
    cond!("a10", [nb, nb, na], |[x, y, u]| pow[x][up[u][y]] == pow[x][u]);
    s.finish()
}

/// Condition ids: `ga.1`–`ga.3`, `1A`–`4A`, `1B`–`4B`, `zeroB`, `a1`–`a10`.
pub fn check_derived_action(t: &DerivedActionTriple) -> CheckReport {
    scan(t, false)
}

pub fn is_derived_action(t: &DerivedActionTriple) -> bool {
    scan(t, true).passed
}

/// All triples passing [`check_derived_action`], ordered by
/// [`DerivedActionTriple::canonical_key`].
///
/// `b ↦ (a ↦ a^b)` and `b ↦ (a ↦ b·a)` are searched as actions of `B` by
/// automorphisms of `A`, then `b ↦ (a ↦ b^a)` as a map into the crossed maps
/// of `A` obeying `(b+b')^a = b^a + b·(b'^a)`.
pub fn enumerate_derived_actions(
    a: &Arc<FiniteGwaObject>,
    b: &Arc<FiniteGwaObject>,
    budget: &Budget,
) -> Result<Vec<DerivedActionTriple>> {
    let (na, nb) = (a.order(), b.order());
    let auts = automorphisms(a, budget)?;
    let comp = composition_table(&auts)?;
    // up: U_{b+b'} = U_b then U_{b'}; dot: D_{b+b'} = D_{b'} then D_b
    let ups = search_maps(
        b,
        auts.len(),
        |_, x, _, y| Some(comp[x][y]),
        |_| true,
        budget,
        "up-action search",
    )?;
    let dots = search_maps(
        b,
        auts.len(),
        |_, x, _, y| Some(comp[y][x]),
        |_| true,
        budget,
        "dot-action search",
    )?;
    let crossed = crossed_maps(a, budget)?;

    let work: Vec<(&Vec<usize>, &Vec<usize>)> = ups.iter().flat_map(|u| dots.iter().map(move |d| (u, d))).collect();
    let chunks: Vec<Vec<DerivedActionTriple>> = work
        .par_iter()
        .map(|&(u, d)| -> Result<Vec<DerivedActionTriple>> {
            let pow_choices = search_maps(
                b,
                crossed.len(),
                |x, px, _, py| {
                    let dx = &auts[d[x]];
                    let sum: Vec<usize> = (0..na).map(|k| a.add(crossed[px][k], dx[crossed[py][k]])).collect();
                    crossed.binary_search(&sum).ok()
                },
                |_| true,
                budget,
                "pow search",
            )?;
            budget.tick(pow_choices.len() as u64, "derived action enumeration")?;
            let dot: Table = (0..nb).map(|x| auts[d[x]].clone()).collect();
            let up: Table = (0..na).map(|k| (0..nb).map(|x| auts[u[x]][k]).collect()).collect();
            let mut found = Vec::new();
            for ps in pow_choices {
                let pow: Table = ps.iter().map(|&i| crossed[i].clone()).collect();
                let t = DerivedActionTriple {
                    a: a.clone(),
                    b: b.clone(),
                    dot: dot.clone(),
                    up: up.clone(),
                    pow,
                };
                if is_derived_action(&t) {
                    found.push(t);
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<_> = chunks.into_iter().flatten().collect();
    all.sort_by_cached_key(DerivedActionTriple::canonical_key);
    Ok(all)
}

/// Largest table space the brute-force filter accepts.
pub const BRUTE_FORCE_MAX_CANDIDATES: u64 = 1 << 24;

/// Filters every triple of tables, with no pruning. Refuses spaces larger than
/// [`BRUTE_FORCE_MAX_CANDIDATES`].
pub fn enumerate_derived_actions_bruteforce(
    a: &Arc<FiniteGwaObject>,
    b: &Arc<FiniteGwaObject>,
) -> Result<Vec<DerivedActionTriple>> {
    let (na, nb) = (a.order(), b.order());
    let digits = 3 * na * nb;
    let space = (na as u64)
        .checked_pow(digits as u32)
        .filter(|&s| s <= BRUTE_FORCE_MAX_CANDIDATES);
    let Some(space) = space else {
        return Err(Error::Unsupported(format!(
            "brute-force derived action search over {na}^{digits} tables refused"
        )));
    };
    let found: Vec<DerivedActionTriple> = (0..space)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let mut flat = vec![0usize; digits];
            for k in (0..digits).rev() {
                flat[k] = (c % na as u64) as usize;
                c /= na as u64;
            }
            let mut it = flat.into_iter();
            let dot: Table = (0..nb).map(|_| it.by_ref().take(na).collect()).collect();
            let up: Table = (0..na).map(|_| it.by_ref().take(nb).collect()).collect();
            let pow: Table = (0..nb).map(|_| it.by_ref().take(na).collect()).collect();
            let t = DerivedActionTriple {
                a: a.clone(),
                b: b.clone(),
                dot,
                up,
                pow,
            };
            is_derived_action(&t).then_some(t)
        })
        .collect();
    Ok(found)
}

/// The split extension `A -> A ⊕ B -> B` with `i(a) = (a,0)`, `p(a,b) = b`,
/// `j(b) = (0,b)`, using the pair indexing of [`crate::corpus::direct_sum`].
pub fn direct_sum_extension(a: &Arc<FiniteGwaObject>, b: &Arc<FiniteGwaObject>) -> Result<SplitExtension> {
    let e = Arc::new(crate::corpus::direct_sum(a, b)?);
    let nb = b.order();
    let i = GwaMorphism::new(a.clone(), e.clone(), (0..a.order()).map(|x| x * nb).collect())?;
    let p = GwaMorphism::new(e.clone(), b.clone(), (0..e.order()).map(|x| x % nb).collect())?;
    let j = GwaMorphism::new(b.clone(), e.clone(), (0..nb).collect())?;
    Ok(SplitExtension {
        a: a.clone(),
        e,
        b: b.clone(),
        i,
        p,
        j,
    })
}

/// Split extensions internal to `E`: for each idempotent endomorphism `f` of
/// `E`, `A = ker f`, `B = im f`, with inclusions and `p = f`.
pub fn idempotent_split_extensions(e: &Arc<FiniteGwaObject>, budget: &Budget) -> Result<Vec<SplitExtension>> {
    let endos = search_maps(
        e,
        e.order(),
        |_, vx, _, vy| Some(e.add(vx, vy)),
        |m| {
            (0..m.len()).all(|x| m[m[x]] == m[x])
                && (0..m.len()).all(|x| (0..m.len()).all(|y| m[e.act(x, y)] == e.act(m[x], m[y])))
        },
        budget,
        "idempotent search",
    )?;
    let mut out = Vec::new();
    for f in endos {
        let kernel = ElementSet::new(e.order(), (0..e.order()).filter(|&x| f[x] == 0))?;
        let image = ElementSet::new(e.order(), f.iter().copied())?;
        let a = Arc::new(restrict_to_subobject(e, &kernel)?);
        let b = Arc::new(restrict_to_subobject(e, &image)?);
        let pos = |s: &ElementSet, x: usize| s.members().binary_search(&x).expect("member");
        let i = GwaMorphism::new(a.clone(), e.clone(), kernel.members().to_vec())?;
        let p = GwaMorphism::new(e.clone(), b.clone(), f.iter().map(|&x| pos(&image, x)).collect())?;
        let j = GwaMorphism::new(b.clone(), e.clone(), image.members().to_vec())?;
        out.push(SplitExtension {
            a,
            e: e.clone(),
            b,
            i,
            p,
            j,
        });
    }
    Ok(out)
}
