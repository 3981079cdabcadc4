//! Pentactions of an object: five self-maps `b·-`, `-·b`, `(-)^b`, `^b(-)`,
//! `b^(-)` subject to nineteen conditions, together with the zero pentaction,
//! sum, opposite and power.

use std::ops::Deref;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::FiniteGwaObject;
use crate::report::{CheckReport, Scanner};
use crate::search::{automorphisms, crossed_maps, inverse, Budget};

/// Five maps on the carrier of an object, stored as value sequences.
///
/// The derived ordering compares `dotL ‖ dotR ‖ up ‖ upL ‖ pow`
/// lexicographically, which is the canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PentactionCandidate {
    /// `a ↦ b·a`
    #[serde(rename = "dotL")]
    pub dot_left: Vec<usize>,
    /// `a ↦ a·b`
    #[serde(rename = "dotR")]
    pub dot_right: Vec<usize>,
    /// `a ↦ a^b`
    pub up: Vec<usize>,
    /// `a ↦ ^b a`
    #[serde(rename = "upL")]
    pub up_left: Vec<usize>,
    /// `a ↦ b^a`
    pub pow: Vec<usize>,
}

/// A candidate that passed [`check_pentaction`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pentaction(PentactionCandidate);

impl Deref for Pentaction {
    type Target = PentactionCandidate;
    fn deref(&self) -> &PentactionCandidate {
        &self.0
    }
}

impl AsRef<PentactionCandidate> for Pentaction {
    fn as_ref(&self) -> &PentactionCandidate {
        &self.0
    }
}

impl AsRef<PentactionCandidate> for PentactionCandidate {
    fn as_ref(&self) -> &PentactionCandidate {
        self
    }
}

impl Pentaction {
    pub fn verify(a: &FiniteGwaObject, cand: PentactionCandidate) -> Result<Pentaction> {
        let report = check_pentaction(a, &cand)?;
        if report.passed {
            Ok(Pentaction(cand))
        } else {
            Err(Error::Rejected {
                context: format!("pentaction of {}", a.name()),
                report,
            })
        }
    }

    pub fn candidate(&self) -> &PentactionCandidate {
        &self.0
    }

    pub fn into_candidate(self) -> PentactionCandidate {
        self.0
    }
}

/// On-disk form: the candidate maps plus the name of the object they act on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PentactionFile {
    pub object: String,
    #[serde(flatten)]
    pub maps: PentactionCandidate,
}

impl PentactionCandidate {
    pub fn to_file(&self, a: &FiniteGwaObject) -> PentactionFile {
        PentactionFile {
            object: a.name().to_string(),
            maps: self.clone(),
        }
    }

    fn components(&self) -> [(&'static str, &Vec<usize>); 5] {
        [
            ("dotL", &self.dot_left),
            ("dotR", &self.dot_right),
            ("up", &self.up),
            ("upL", &self.up_left),
            ("pow", &self.pow),
        ]
    }

    fn check_shape(&self, a: &FiniteGwaObject) -> Result<()> {
        let n = a.order();
        for (name, m) in self.components() {
            if m.len() != n {
                return Err(Error::input(format!(
                    "component {name} has length {}, object {} has order {n}",
                    m.len(),
                    a.name()
                )));
            }
            if let Some(&v) = m.iter().find(|&&v| v >= n) {
                return Err(Error::input(format!("component {name} has out-of-range value {v}")));
            }
        }
        Ok(())
    }
}

/// Scans the nineteen pentaction conditions.
///
/// Witnesses are `(a, a')`, or `(a)` for 11 and 12. In 5° the left exponent
/// `^{x}y` of the object on itself is read as `y^{-x}`.
fn scan(a: &FiniteGwaObject, c: &PentactionCandidate, stop_at_first: bool) -> CheckReport {
    let n = a.order();
    let (l, r, u, v, p) = (&c.dot_left, &c.dot_right, &c.up, &c.up_left, &c.pow);
    let add = |x, y| a.add(x, y);
    let act = |x, y| a.act(x, y);
    let mut s = Scanner::new(stop_at_first);
    macro_rules! cond {
        ($id:literal, $dims:expr, $holds:expr) => {
            if s.check($id, $dims, $holds) {
                return s.finish();
            }
        };
    }
    cond!("p1", [n, n], |[x, y]| l[add(x, y)] == add(l[x], l[y]));
    cond!("p1d", [n, n], |[x, y]| r[add(x, y)] == add(r[x], r[y]));
    cond!("p2", [n, n], |[x, y]| u[add(x, y)] == add(u[x], u[y]));
    cond!("p2d", [n, n], |[x, y]| v[add(x, y)] == add(v[x], v[y]));
    cond!("p3", [n, n], |[x, y]| y == 0 || act(l[x], y) == act(x, y));
    cond!("p3d", [n, n], |[x, y]| y == 0 || act(r[x], y) == act(x, y));
    cond!("p4", [n, n], |[x, y]| p[add(x, y)] == add(act(p[x], y), p[y]));
    cond!("p5", [n, n], |[x, y]| u[act(x, l[y])] == act(u[x], y));
    cond!("p5d", [n, n], |[x, y]| v[act(x, a.neg(r[y]))] == act(v[x], a.neg(y)));
    cond!("p6", [n, n], |[x, y]| y == 0 || l[act(x, y)] == act(x, y));
    cond!("p6d", [n, n], |[x, y]| y == 0 || r[act(x, y)] == act(x, y));
    cond!("p7", [n, n], |[x, y]| p[act(x, y)] == p[x]);
    let moves_up = (0..n).any(|x| u[x] != x);
    cond!("p8", [n, n], |[x, y]| !moves_up || add(u[x], y) == add(y, u[x]));
    let moves_up_left = (0..n).any(|x| v[x] != x);
    cond!("p8d", [n, n], |[x, y]| !moves_up_left || add(v[x], y) == add(y, v[x]));
    cond!("p9", [n, n], |[x, y]| act(x, u[y]) == act(x, y));
    cond!("p9d", [n, n], |[x, y]| act(x, v[y]) == act(x, y));
    cond!("p10", [n, n], |[x, y]| y == 0 || act(x, p[y]) == x);
    cond!("p11", [n], |[x]| r[l[x]] == x && l[r[x]] == x);
    cond!("p12", [n], |[x]| v[u[x]] == x && u[v[x]] == x);
    s.finish()
}

/// Full report over the conditions `p1, p1d, p2, p2d, p3, p3d, p4, p5, p5d,
/// p6, p6d, p7, p8, p8d, p9, p9d, p10, p11, p12`.
pub fn check_pentaction(a: &FiniteGwaObject, cand: &PentactionCandidate) -> Result<CheckReport> {
    cand.check_shape(a)?;
    Ok(scan(a, cand, false))
}

/// Short-circuiting membership test for well-shaped candidates.
pub fn is_pentaction(a: &FiniteGwaObject, cand: &PentactionCandidate) -> bool {
    scan(a, cand, true).passed
}

/// `(id, id, id, id, 0)`.
pub fn zero_pentaction(a: &FiniteGwaObject) -> Pentaction {
    let id: Vec<usize> = (0..a.order()).collect();
    Pentaction(PentactionCandidate {
        dot_left: id.clone(),
        dot_right: id.clone(),
        up: id.clone(),
        up_left: id,
        pow: vec![0; a.order()],
    })
}

fn check_pair(a: &FiniteGwaObject, p: &PentactionCandidate, q: &PentactionCandidate) -> Result<()> {
    p.check_shape(a)?;
    q.check_shape(a)
}

/// Sum: `(b+b')·a = b·(b'·a)`, `a·(b+b') = (a·b)·b'`, `a^(b+b') = (a^b)^b'`,
/// `^(b+b')a = ^b(^b' a)`, `(b+b')^a = b^a + b·(b'^a)`.
pub fn pent_add(
    a: &FiniteGwaObject,
    p: impl AsRef<PentactionCandidate>,
    q: impl AsRef<PentactionCandidate>,
) -> Result<PentactionCandidate> {
    let (p, q) = (p.as_ref(), q.as_ref());
    check_pair(a, p, q)?;
    let n = a.order();
    Ok(PentactionCandidate {
        dot_left: (0..n).map(|x| p.dot_left[q.dot_left[x]]).collect(),
        dot_right: (0..n).map(|x| q.dot_right[p.dot_right[x]]).collect(),
        up: (0..n).map(|x| q.up[p.up[x]]).collect(),
        up_left: (0..n).map(|x| p.up_left[q.up_left[x]]).collect(),
        pow: (0..n).map(|x| a.add(p.pow[x], p.dot_left[q.pow[x]])).collect(),
    })
}

/// Opposite: swaps `b·-` with `-·b` and `(-)^b` with `^b(-)`, and sets
/// `(-b)^a = -((b^a)·b)`.
pub fn pent_neg(a: &FiniteGwaObject, p: impl AsRef<PentactionCandidate>) -> Result<PentactionCandidate> {
    let p = p.as_ref();
    p.check_shape(a)?;
    Ok(PentactionCandidate {
        dot_left: p.dot_right.clone(),
        dot_right: p.dot_left.clone(),
        up: p.up_left.clone(),
        up_left: p.up.clone(),
        pow: p.pow.iter().map(|&x| a.neg(p.dot_right[x])).collect(),
    })
}

/// Power: both dot maps become the identity, `a^(b^b') = a^b`,
/// `^(b^b')a = ^b a`, and `(b^b')^a = (b^(b'·a))^b'`.
pub fn pent_pow(
    a: &FiniteGwaObject,
    p: impl AsRef<PentactionCandidate>,
    q: impl AsRef<PentactionCandidate>,
) -> Result<PentactionCandidate> {
    let (p, q) = (p.as_ref(), q.as_ref());
    check_pair(a, p, q)?;
    let n = a.order();
    Ok(PentactionCandidate {
        dot_left: (0..n).collect(),
        dot_right: (0..n).collect(),
        up: p.up.clone(),
        up_left: p.up_left.clone(),
        pow: (0..n).map(|x| q.up[p.pow[q.dot_left[x]]]).collect(),
    })
}

/// All pentactions in canonical order.
///
/// `up` ranges over automorphisms and `upL` is its inverse; `dotL` ranges over
/// automorphisms fixing every `x^y` with `y != 0` and `dotR` is its inverse;
/// `pow` ranges over maps with `P(x+y) = P(x)^y + P(y)`. Each of these
/// restrictions is implied by the conditions, and every surviving combination
/// is checked in full.
pub fn enumerate_pentactions(a: &FiniteGwaObject, budget: &Budget) -> Result<Vec<Pentaction>> {
    let n = a.order();
    let auts = automorphisms(a, budget)?;
    let fixed: Vec<usize> = (0..n)
        .flat_map(|x| (1..n).map(move |y| (x, y)))
        .map(|(x, y)| a.act(x, y))
        .collect();

    let ups: Vec<(Vec<usize>, Vec<usize>)> = auts
        .iter()
        .map(|u| (u.clone(), inverse(u)))
        .filter(|(u, v)| {
            let commutes = |m: &[usize]| {
                (0..n).all(|x| m[x] == x) || (0..n).all(|x| (0..n).all(|y| a.add(m[x], y) == a.add(y, m[x])))
            };
            let absorbed = |m: &[usize]| (0..n).all(|x| (0..n).all(|y| a.act(x, m[y]) == a.act(x, y)));
            commutes(u) && commutes(v) && absorbed(u) && absorbed(v)
        })
        .collect();
    let dots: Vec<(Vec<usize>, Vec<usize>)> = auts
        .iter()
        .filter(|l| fixed.iter().all(|&x| l[x] == x))
        .map(|l| (l.clone(), inverse(l)))
        .filter(|(l, r)| (0..n).all(|x| (1..n).all(|y| a.act(l[x], y) == a.act(x, y) && a.act(r[x], y) == a.act(x, y))))
        .collect();
    let pows: Vec<Vec<usize>> = crossed_maps(a, budget)?
        .into_iter()
        .filter(|p| {
            (0..n).all(|x| (0..n).all(|y| p[a.act(x, y)] == p[x]))
                && (0..n).all(|x| (1..n).all(|y| a.act(x, p[y]) == x))
        })
        .collect();

    let per_up = (dots.len() * pows.len()) as u64;
    let chunks: Vec<Vec<Pentaction>> = ups
        .par_iter()
        .map(|(u, v)| -> Result<Vec<Pentaction>> {
            budget.tick(per_up, "pentaction enumeration")?;
            let mut found = Vec::new();
            for (l, r) in &dots {
                for p in &pows {
                    let cand = PentactionCandidate {
                        dot_left: l.clone(),
                        dot_right: r.clone(),
                        up: u.clone(),
                        up_left: v.clone(),
                        pow: p.clone(),
                    };
                    if is_pentaction(a, &cand) {
                        found.push(Pentaction(cand));
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Pentaction> = chunks.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

pub const BRUTE_FORCE_MAX_ORDER: usize = 3;

/// Direct filter of all `n^(5n)` five-tuples of maps. Only for `n <= 3`.
pub fn enumerate_pentactions_bruteforce(a: &FiniteGwaObject) -> Result<Vec<Pentaction>> {
    let n = a.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "brute-force pentaction enumeration refused for order {n} > {BRUTE_FORCE_MAX_ORDER}"
        )));
    }
    let maps = all_maps(n);
    let chunks: Vec<Vec<Pentaction>> = maps
        .par_iter()
        .map(|dot_left| {
            let mut found = Vec::new();
            let mut cand = PentactionCandidate {
                dot_left: dot_left.clone(),
                dot_right: vec![0; n],
                up: vec![0; n],
                up_left: vec![0; n],
                pow: vec![0; n],
            };
            // odometer over dotR ‖ up ‖ upL ‖ pow, last digit fastest
            loop {
                if is_pentaction(a, &cand) {
                    found.push(Pentaction(cand.clone()));
                }
                if !advance(&mut cand, n) {
                    break;
                }
            }
            found
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn advance(c: &mut PentactionCandidate, n: usize) -> bool {
    for m in [&mut c.pow, &mut c.up_left, &mut c.up, &mut c.dot_right] {
        for k in (0..n).rev() {
            m[k] += 1;
            if m[k] < n {
                return true;
            }
            m[k] = 0;
        }
    }
    false
}

fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |v| {
                    let mut m = prefix.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}
