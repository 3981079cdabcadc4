//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use rgwa::corpus::{
    conjugation_object, cyclic_trivial, klein_swap, s3_add_table, search_reduced_objects, standard_objects,
};
use rgwa::derived::{
    action_from_split_extension, check_derived_action, direct_sum_extension, enumerate_derived_actions,
    DerivedActionTriple,
};
use rgwa::pentaction::{
    check_pentaction, enumerate_pentactions, enumerate_pentactions_bruteforce, is_pentaction, pent_add, pent_pow,
    zero_pentaction,
};
use rgwa::representability::{build_pa_object, pa_report, verify_representability};
use rgwa::structure::{analyze, is_perfect, noether_quotient, stabilizer, weak_stabilizer_of};
use rgwa::{check_axioms, Budget, FiniteGwaObject};

const SEARCH_ORDER: usize = 6;

fn budget() -> Budget {
    Budget::new(u64::MAX / 4)
}

/// Standard objects, the swap action on the Klein group, and every reduced
/// object found by search up to `SEARCH_ORDER`.
fn reduced_corpus() -> Vec<FiniteGwaObject> {
    let mut out = standard_objects();
    out.push(klein_swap());
    out.extend(search_reduced_objects(SEARCH_ORDER, &budget()).unwrap());
    out
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn axiom_gate() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let z = cyclic_trivial(n).map_err(|e| e.to_string())?;
        let r = check_axioms(n, z.add_table(), z.act_table(), true).unwrap();
        ensure(r.passed, || format!("z{n} fails {:?}", r.failed_conditions()))?;
    }
    let (add, act) = conjugation_object(&s3_add_table()).unwrap();
    let r = check_axioms(6, &add, &act, true).unwrap();
    let failed = r.failed_conditions();
    ensure(!failed.is_empty(), || "S3 conjugation passes the reduced checks".into())?;
    ensure(failed.iter().all(|c| c.starts_with("reduced.")), || {
        format!("S3 conjugation fails non-reduced checks: {failed:?}")
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "axiom gate")?;
    Ok(format!("z1..z8 pass, S3 fails only {failed:?} in {elapsed:?}"))
}

fn oracle_equivalence() -> Outcome {
    let expected = [1usize, 2, 6];
    let mut detail = Vec::new();
    for (n, &count) in (1..=3).zip(&expected) {
        let z = cyclic_trivial(n).unwrap();
        let start = Instant::now();
        let brute = enumerate_pentactions_bruteforce(&z).unwrap();
        let pruned = enumerate_pentactions(&z, &budget()).unwrap();
        let elapsed = start.elapsed();
        ensure(brute.len() == count, || {
            format!("brute force finds {} on Z/{n}", brute.len())
        })?;
        ensure(brute == pruned, || format!("sequences differ on Z/{n}"))?;
        within(elapsed, Duration::from_secs(30), &format!("Z/{n}"))?;
        detail.push(format!("Z/{n}: {count} in {elapsed:?}"));
    }
    Ok(detail.join(", "))
}

fn zero_pentaction_everywhere() -> Outcome {
    let corpus = reduced_corpus();
    for a in &corpus {
        let r = check_pentaction(a, &zero_pentaction(a)).unwrap();
        ensure(r.passed, || format!("{} fails {:?}", a.name(), r.failed_conditions()))?;
    }
    Ok(format!("{} objects", corpus.len()))
}

fn perfect_object_laws() -> Outcome {
    let mut pairs = 0usize;
    let mut objects = 0usize;
    for a in reduced_corpus() {
        if !is_perfect(&a) {
            continue;
        }
        objects += 1;
        let n = a.order();
        let pents = enumerate_pentactions(&a, &budget()).unwrap();
        for p in &pents {
            ensure((0..n).all(|x| p.dot_left[x] == x && p.dot_right[x] == x), || {
                format!("{}: pentaction with non-identity dot maps", a.name())
            })?;
        }
        pents.par_iter().try_for_each(|p| {
            pents.iter().try_for_each(|q| {
                let sum = pent_add(&a, p, q).unwrap();
                ensure(is_pentaction(&a, &sum), || format!("{}: sum leaves PA", a.name()))?;
                let pow = pent_pow(&a, p, q).unwrap();
                ensure(is_pentaction(&a, &pow), || format!("{}: power leaves PA", a.name()))?;
                ensure((0..n).all(|x| pow.pow[x] == q.up[p.pow[x]]), || {
                    format!("{}: power of pentactions disagrees at element level", a.name())
                })
            })
        })?;
        pairs += pents.len() * pents.len();
    }
    Ok(format!("{objects} perfect objects, {pairs} pairs"))
}

/// Independent evaluation of a single condition at a witness, with `B`
/// variables listed before `A` variables.
fn condition_holds(t: &DerivedActionTriple, id: &str, w: &[usize]) -> bool {
    let (a, b) = (&*t.a, &*t.b);
    let (dot, up, pow) = (&t.dot, &t.up, &t.pow);
    match (id, w) {
        ("ga.1", &[x, y, u]) => dot[b.add(x, y)][u] == dot[x][dot[y][u]],
        ("ga.2", &[x, u, v]) => dot[x][a.add(u, v)] == a.add(dot[x][u], dot[x][v]),
        ("ga.3", &[u]) => dot[0][u] == u,
        ("1A", &[x, u, v]) => up[a.add(u, v)][x] == a.add(up[u][x], up[v][x]),
        ("2A", &[x, y, u]) => pow[b.add(x, y)][u] == a.add(pow[x][u], dot[x][pow[y][u]]),
        ("3A", &[x, u, v]) => v == 0 || a.act(dot[x][u], v) == a.act(u, v),
        ("4A", &[x, y, u]) => up[dot[x][u]][y] == up[u][y],
        ("1B", &[x, u, v]) => pow[x][a.add(u, v)] == a.add(a.act(pow[x][u], v), pow[x][v]),
        ("2B", &[x, y, u]) => up[u][b.add(x, y)] == up[up[u][x]][y],
        ("3B", &[x, u, v]) => up[a.act(u, dot[x][v])][x] == a.act(up[u][x], v),
        ("4B", &[x, y, u]) => up[pow[x][dot[y][u]]][y] == pow[b.act(x, y)][u],
        ("zeroB", &[u]) => up[u][0] == u,
        ("a1", &[x, u, v]) => v == 0 || dot[x][a.act(u, v)] == a.act(u, v),
        ("a2", &[x, y, u]) => y == 0 || dot[x][up[u][y]] == up[u][y],
        ("a3", &[x, y, u]) => y == 0 || dot[b.act(x, y)][u] == u,
        ("a4", &[x, u, v]) => pow[x][a.act(u, v)] == pow[x][u],
        ("a5", &[x, y, u]) => up[u][b.act(x, y)] == up[u][x],
        ("a6", &[x, u, v]) => x == 0 || a.add(up[u][x], v) == a.add(v, up[u][x]),
        ("a7", &[x, u, v]) => a.act(u, up[v][x]) == a.act(u, v),
        ("a8", &[x, u, v]) => v == 0 || a.act(u, pow[x][v]) == u,
        ("a9", &[x, y, u]) => pow[x][pow[y][u]] == 0,
        ("a10", &[x, y, u]) => pow[x][up[u][y]] == pow[x][u],
        _ => panic!("unknown condition {id} with witness {w:?}"),
    }
}

fn derived_action_soundness() -> Outcome {
    let mut small: Vec<Arc<FiniteGwaObject>> = standard_objects()
        .into_iter()
        .filter(|o| o.order() <= 4)
        .map(Arc::new)
        .collect();
    small.push(Arc::new(klein_swap()));
    let (mut triples, mut mutants) = (0usize, 0usize);
    for a in &small {
        for b in &small {
            let ext = direct_sum_extension(a, b).unwrap();
            let t = action_from_split_extension(&ext).unwrap();
            let r = check_derived_action(&t);
            ensure(r.passed, || {
                format!("{} on {} fails {:?}", b.name(), a.name(), r.failed_conditions())
            })?;
            triples += 1;
            let (na, nb) = (a.order(), b.order());
            if na < 2 {
                continue;
            }
            let tables: [(&str, usize, usize); 3] = [("dot", nb, na), ("up", na, nb), ("pow", nb, na)];
            for (which, rows, cols) in tables {
                for r0 in 0..rows {
                    for c0 in 0..cols {
                        let mut m = t.clone();
                        let table = match which {
                            "dot" => &mut m.dot,
                            "up" => &mut m.up,
                            _ => &mut m.pow,
                        };
                        table[r0][c0] = (table[r0][c0] + 1) % na;
                        let report = check_derived_action(&m);
                        ensure(!report.passed, || {
                            format!(
                                "mutating {which}[{r0}][{c0}] on ({}, {}) still passes",
                                a.name(),
                                b.name()
                            )
                        })?;
                        for v in &report.violations {
                            ensure(!condition_holds(&m, &v.condition, &v.witness), || {
                                format!("{} reported at {:?} but holds there", v.condition, v.witness)
                            })?;
                        }
                        mutants += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{triples} direct-sum triples pass, {mutants} mutants rejected with valid witnesses"
    ))
}

fn stabilizer_containment() -> Outcome {
    let corpus = reduced_corpus();
    for a in &corpus {
        let pents = enumerate_pentactions(a, &budget()).unwrap();
        let w = weak_stabilizer_of(a, &pents).unwrap();
        let st = stabilizer(a);
        ensure(w.is_subset(&st), || {
            format!("{}: wSt {:?} not in St {:?}", a.name(), w.members(), st.members())
        })?;
        ensure(st.is_trivial() == a.is_zero(), || {
            format!(
                "{}: St = {:?} on an object of order {}",
                a.name(),
                st.members(),
                a.order()
            )
        })?;
    }
    Ok(format!("{} objects", corpus.len()))
}

fn noether_procedure() -> Outcome {
    // (n, subgroup orders, |C|) recorded from the first verified run
    let fixtures: [(usize, &[usize], usize); 3] = [(2, &[2], 1), (4, &[4], 1), (6, &[6], 1)];
    let mut detail = Vec::new();
    for (n, orders, quotient) in fixtures {
        let chain = noether_quotient(&cyclic_trivial(n).unwrap(), &budget()).map_err(|e| e.to_string())?;
        ensure(chain.is_strict(), || format!("Z/{n}: chain is not strictly increasing"))?;
        ensure(chain.quotient_weak_stabilizer.is_trivial(), || {
            format!("Z/{n}: wSt(C) is not zero")
        })?;
        let s = chain.summary();
        ensure(s.subgroup_orders == orders && s.quotient_order == quotient, || {
            format!("Z/{n}: got {:?}, |C| = {}", s.subgroup_orders, s.quotient_order)
        })?;
        detail.push(format!("Z/{n}: {:?} |C|={}", s.subgroup_orders, s.quotient_order));
    }
    Ok(detail.join(", "))
}

fn representability_witnesses() -> Outcome {
    let b = budget();
    let acting: Vec<Arc<FiniteGwaObject>> = search_reduced_objects(3, &b)
        .unwrap()
        .into_iter()
        .map(Arc::new)
        .collect();
    let mut candidates = vec![cyclic_trivial(1).unwrap(), klein_swap()];
    candidates.extend(search_reduced_objects(SEARCH_ORDER, &b).unwrap());
    let mut witnesses = Vec::new();
    for a in candidates {
        let pents = enumerate_pentactions(&a, &b).unwrap();
        if !(is_perfect(&a) && weak_stabilizer_of(&a, &pents).unwrap().is_trivial()) {
            continue;
        }
        let a = Arc::new(a);
        let pa = build_pa_object(&a, &b).unwrap();
        let report = pa_report(&pa).unwrap();
        ensure(report.pa_rgwa.passed, || {
            format!("PA({}) fails {:?}", a.name(), report.pa_rgwa.failed_conditions())
        })?;
        ensure(report.pa_action.passed, || {
            format!(
                "action of PA({}) fails {:?}",
                a.name(),
                report.pa_action.failed_conditions()
            )
        })?;
        let rep = verify_representability(&pa, &acting, &b).unwrap();
        ensure(rep.all_passed && rep.pairs_checked > 0, || {
            format!("{}: representability fails {:?}", a.name(), rep.failures)
        })?;
        witnesses.push(format!("{}({} pairs)", a.name(), rep.pairs_checked));
    }
    ensure(witnesses.len() > 1, || "no witness beyond the zero object".into())?;

    let z2 = Arc::new(cyclic_trivial(2).unwrap());
    let diag = analyze(&z2, &b).unwrap();
    ensure(diag.weak_stabilizer != [0], || {
        "Z/2 unexpectedly meets the hypotheses".into()
    })?;
    let pa = build_pa_object(&z2, &b).unwrap();
    let report = pa_report(&pa).unwrap();
    let rendered = serde_json::to_string(&report).unwrap();
    Ok(format!(
        "witnesses {}; Z/2 diagnostic passed={} ({} bytes)",
        witnesses.join(" "),
        report.passed(),
        rendered.len()
    ))
}

/// Everything the library enumerates or reports, serialized in one document.
fn snapshot() -> String {
    let b = budget();
    let mut objects = standard_objects();
    objects.push(klein_swap());
    let searched = search_reduced_objects(SEARCH_ORDER, &b).unwrap();
    let mut docs = Vec::new();
    for a in objects.iter().chain(&searched) {
        let pents: Vec<_> = enumerate_pentactions(a, &b)
            .unwrap()
            .into_iter()
            .map(|p| p.into_candidate())
            .collect();
        let arc = Arc::new(a.clone());
        let pa = build_pa_object(&arc, &b).unwrap();
        docs.push(json!({
            "object": a.to_file(),
            "pentactions": pents,
            "analysis": analyze(a, &b).unwrap(),
            "pa": pa_report(&pa).unwrap(),
        }));
    }
    let small: Vec<Arc<FiniteGwaObject>> = objects
        .iter()
        .filter(|o| o.order() <= 3)
        .cloned()
        .map(Arc::new)
        .collect();
    for a in &small {
        for bb in &small {
            let ts: Vec<_> = enumerate_derived_actions(a, bb, &b)
                .unwrap()
                .iter()
                .map(|t| t.to_file())
                .collect();
            docs.push(json!(ts));
        }
    }
    let zero = Arc::new(cyclic_trivial(1).unwrap());
    let pa = build_pa_object(&zero, &b).unwrap();
    docs.push(json!(verify_representability(&pa, &small, &b).unwrap()));
    serde_json::to_string(&docs).unwrap()
}

fn determinism() -> Outcome {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(snapshot)
    };
    let reference = run(1);
    for threads in [1, 4, 4] {
        ensure(run(threads) == reference, || {
            format!("output differs with {threads} threads")
        })?;
    }
    Ok(format!(
        "{} bytes identical over 4 runs with 1 and 4 threads",
        reference.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom gate", axiom_gate),
        ("pentaction oracle equivalence", oracle_equivalence),
        ("zero pentaction", zero_pentaction_everywhere),
        ("perfect-object laws", perfect_object_laws),
        ("derived-action soundness", derived_action_soundness),
        ("stabilizer containment", stabilizer_containment),
        ("noetherian procedure", noether_procedure),
        ("representability witnesses", representability_witnesses),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
