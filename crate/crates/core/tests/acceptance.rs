//! Acceptance suite. Runs every criterion in order and prints one
//! `PASS`/`FAIL` line per criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use superchar::certificates::{
    perturb_labels, restriction_coeff_nonzero, tensor_certificate, tensor_coeff_nonzero, trivial_coeff_nonzero,
};
use superchar::combinatorics::{
    conjugate, degree_exponent, enumerate_set_partitions, q_stirling, r_exponent, DEFAULT_ENUMERATION_GUARD,
};
use superchar::engine::{
    expand, expand_with_order, restrict, restrict_with_order, tensor, CharacterCombination, Coefficient, ConflictOrder,
};
use superchar::explicit::{explicit_trivial_coefficient, mixed_label_trivial_coefficient, significant_crossings};
use superchar::straighten::{check_identity, straighten, straighten_with_order};
use superchar::values::{Decomposed, PointwiseVerifier};
use superchar::{ArcMultiset, Error, NodeSet, QSetPartition};

use common::{modulus, multisets, partitions, random_multiset};

type Outcome = Result<String, String>;

static DEGREE_CHECKS: AtomicUsize = AtomicUsize::new(0);
static ORDER_CHECKS: AtomicUsize = AtomicUsize::new(0);
static INLINE_FAILURES: Mutex<Vec<String>> = Mutex::new(Vec::new());

fn ns(text: &str) -> NodeSet {
    text.parse().unwrap()
}

fn q_pow(q: u32, e: u32) -> Coefficient {
    (q as Coefficient).pow(e)
}

/// Degree conservation and order independence on one engine output.
fn inline_checks(
    what: &dyn Fn() -> String,
    comb: &CharacterCombination,
    degree: Coefficient,
    alt: &CharacterCombination,
) {
    DEGREE_CHECKS.fetch_add(1, Ordering::Relaxed);
    ORDER_CHECKS.fetch_add(1, Ordering::Relaxed);
    let mut failures = Vec::new();
    if comb.total_degree().ok() != Some(degree) {
        failures.push(format!("degree not conserved for {}", what()));
    }
    if comb != alt {
        failures.push(format!("conflict order changed the result for {}", what()));
    }
    if !failures.is_empty() {
        INLINE_FAILURES.lock().unwrap().extend(failures);
    }
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn worked_restriction() -> Outcome {
    let (l, k) = (ns("1..10"), ns("1,4,5,6,7,9"));
    for q in [2u32, 3] {
        let lambda = QSetPartition::parse(modulus(q), l.clone(), "1-1-3,2-1-10,4-1-7,7-1-9,3-1-8,5-1-6").unwrap();
        let oracle = restrict(&lambda, &k, &l).unwrap().trivial_coefficient();
        let cert = trivial_coeff_nonzero(&lambda, &k, &l).unwrap();
        ensure(oracle == 0 && !cert, || {
            format!("q={q}: oracle {oracle}, certificate {cert}")
        })?;
    }
    Ok("trivial coefficient 0 and no complete matching at q = 2, 3".into())
}

fn crossing_example() -> Outcome {
    let (l, k) = (ns("1..12"), ns("4,5,7,8,9,10"));
    let lambda = QSetPartition::parse(modulus(2), l.clone(), "1-1-5,2-1-7,3-1-9,4-1-12,6-1-10,8-1-11").unwrap();
    let r = r_exponent(&lambda, &k, &l).unwrap();
    let c = significant_crossings(&lambda, &k).len();
    let oracle = restrict(&lambda, &k, &l).unwrap().trivial_coefficient();
    let closed = explicit_trivial_coefficient(&lambda, &k, &l).unwrap();
    ensure(r == 7 && c == 5 && oracle == 4096 && closed == 4096, || {
        format!("r={r} |C|={c} oracle={oracle} closed form={closed}")
    })?;
    Ok(format!("r={r}, |C|={c}, oracle {oracle}"))
}

fn three_q_minus_two() -> Outcome {
    let k = NodeSet::interval(1, 5);
    let mut seen = Vec::new();
    for q in [3u32, 5] {
        let start = Instant::now();
        let mut values = std::collections::BTreeSet::new();
        for a in 1..q {
            for b in 1..q {
                let c = (2 * q - a - b) % q;
                if c == 0 {
                    continue;
                }
                let lambda = ArcMultiset::parse(modulus(q), k.clone(), &format!("1-{a}-5,1-{b}-5,1-{c}-5")).unwrap();
                values.insert(expand(&lambda, &k).unwrap().trivial_coefficient());
            }
        }
        let want = 3 * q as Coefficient - 2;
        ensure(values.len() == 1 && values.contains(&want), || {
            format!("q={q}: got {values:?}, want {want}")
        })?;
        ensure(start.elapsed() < Duration::from_secs(5), || {
            format!("q={q} took {:?}", start.elapsed())
        })?;
        seen.push(format!("{want} at q={q}"));
    }
    Ok(seen.join(", "))
}

fn tensor_table() -> Outcome {
    // (b, d, f) with a = c = 1 and e = g = h = 1 over F_5
    let k = NodeSet::interval(1, 6);
    let q = modulus(5);
    let cases = [
        ("b+d=0, a+c-f=0", 1, 4, 2, vec!["1-1-6"], vec![], vec![], true),
        (
            "b+d=0, a+c-f!=0",
            1,
            4,
            1,
            vec!["1-1-6", "1-1-6"],
            vec!["1-4-6"],
            vec![],
            false,
        ),
        (
            "b+d!=0, a+c-f=0",
            1,
            1,
            2,
            vec!["1-1-6"],
            vec!["2-1-5"],
            vec![("2-1-5", "1-1-6")],
            true,
        ),
        (
            "b+d!=0, a+c-f!=0",
            1,
            1,
            1,
            vec!["1-1-6", "1-1-6"],
            vec!["2-1-5", "1-4-6"],
            vec![("2-1-5", "1-1-6"), ("2-1-5", "1-1-6")],
            false,
        ),
    ];
    for (name, b, d, f, open, solid, edges, nonzero) in cases {
        let lambda = QSetPartition::parse(q, k.clone(), &format!("1-1-6,2-{b}-5")).unwrap();
        let mu = QSetPartition::parse(q, k.clone(), &format!("1-1-6,2-{d}-5,3-1-4")).unwrap();
        let nu = QSetPartition::parse(q, k.clone(), &format!("1-{f}-6,2-1-3,3-1-5")).unwrap();
        let (g, w) = tensor_certificate(&lambda, &mu, &nu, &k).unwrap();
        let arcs = |v: &[superchar::certificates::GraphVertex]| {
            let mut s: Vec<String> = v.iter().map(|x| x.arc.to_string()).collect();
            s.sort();
            s
        };
        let mut want_solid: Vec<String> = solid.iter().map(|s| s.to_string()).collect();
        want_solid.sort();
        ensure(arcs(&g.solid) == want_solid, || {
            format!("{name}: solid {:?}", arcs(&g.solid))
        })?;
        let ours_open = arcs(&g.open);
        for o in &open {
            ensure(
                ours_open.iter().filter(|x| x == o).count() >= open.iter().filter(|x| x == &o).count(),
                || format!("{name}: open {ours_open:?} lacks {o}"),
            )?;
        }
        let ours_edges: Vec<(String, String)> =
            g.edges().map(|(s, o)| (s.arc.to_string(), o.arc.to_string())).collect();
        for (s, o) in &edges {
            ensure(ours_edges.iter().any(|(x, y)| x == s && y == o), || {
                format!("{name}: missing edge {s}--{o}")
            })?;
        }
        ensure(w.is_covering() == nonzero, || {
            format!("{name}: verdict {}", w.is_covering())
        })?;
        let oracle = tensor(&lambda, &mu, &k).unwrap().coefficient(&nu);
        ensure((oracle > 0) == nonzero, || {
            format!("{name}: oracle coefficient {oracle}")
        })?;
    }
    Ok("four cases, nonzero iff a+c-f = 0".into())
}

fn trivial_certificates() -> Outcome {
    let q = 2;
    let mut instances = 0usize;
    for n in 0..=6u32 {
        let l = NodeSet::interval(1, n);
        let parts = partitions(&l, q);
        let results: Vec<Result<usize, String>> = parts
            .par_iter()
            .map(|lambda| {
                let mut count = 0;
                let degree = q_pow(q, degree_exponent(lambda, &l));
                for k in l.subsets() {
                    let comb = restrict(lambda, &k, &l).unwrap();
                    let alt = restrict_with_order(lambda, &k, &l, ConflictOrder::RightLeftBoth).unwrap();
                    inline_checks(&|| format!("restrict λ={lambda} K={k}"), &comb, degree, &alt);
                    let cert = trivial_coeff_nonzero(lambda, &k, &l).unwrap();
                    let c = comb.trivial_coefficient();
                    ensure(cert == (c > 0), || {
                        format!("λ={lambda} K={k}: certificate {cert}, oracle {c}")
                    })?;
                    count += 1;
                }
                Ok(count)
            })
            .collect();
        for r in results {
            instances += r?;
        }
    }
    Ok(format!("{instances} instances, 0 mismatches"))
}

fn tensor_pair(lambda: &QSetPartition, mu: &QSetPartition, k: &NodeSet, q: u32) -> CharacterCombination {
    let comb = tensor(lambda, mu, k).unwrap();
    let alt = expand_with_order(&lambda.union(mu).unwrap(), k, ConflictOrder::RightLeftBoth).unwrap();
    let degree = q_pow(q, degree_exponent(lambda, k) + degree_exponent(mu, k));
    inline_checks(&|| format!("tensor {lambda} ⊗ {mu}"), &comb, degree, &alt);
    comb
}

fn tensor_certificates() -> Outcome {
    let mut triples = 0usize;
    for q in [2u32, 3] {
        for n in 0..=4u32 {
            let k = NodeSet::interval(1, n);
            let parts = partitions(&k, q);
            let pairs: Vec<(&QSetPartition, &QSetPartition)> =
                parts.iter().flat_map(|a| parts.iter().map(move |b| (a, b))).collect();
            let results: Vec<Result<usize, String>> = pairs
                .par_iter()
                .map(|&(lambda, mu)| {
                    let comb = tensor_pair(lambda, mu, &k, q);
                    for nu in &parts {
                        let cert = tensor_coeff_nonzero(lambda, mu, nu, &k).unwrap();
                        let c = comb.coefficient(nu);
                        ensure(cert == (c > 0), || {
                            format!("q={q} {lambda} ⊗ {mu} ∋ {nu}: certificate {cert}, oracle {c}")
                        })?;
                    }
                    Ok(parts.len())
                })
                .collect();
            for r in results {
                triples += r?;
            }
        }
    }
    let k = NodeSet::interval(1, 5);
    let parts = partitions(&k, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e45);
    let samples: Vec<(usize, usize, usize)> = (0..10_000)
        .map(|_| {
            (
                rng.gen_range(0..parts.len()),
                rng.gen_range(0..parts.len()),
                rng.gen_range(0..parts.len()),
            )
        })
        .collect();
    let sampled: Vec<Result<(), String>> = samples
        .par_iter()
        .map(|&(x, y, z)| {
            let (lambda, mu, nu) = (&parts[x], &parts[y], &parts[z]);
            let c = tensor_pair(lambda, mu, &k, 2).coefficient(nu);
            let cert = tensor_coeff_nonzero(lambda, mu, nu, &k).unwrap();
            ensure(cert == (c > 0), || {
                format!("n=5 {lambda} ⊗ {mu} ∋ {nu}: certificate {cert}, oracle {c}")
            })
        })
        .collect();
    for r in sampled {
        r?;
    }
    Ok(format!(
        "{triples} exhaustive triples plus {} samples at n=5, 0 mismatches",
        samples.len()
    ))
}

fn restriction_certificates() -> Outcome {
    let q = 2;
    let mut instances = 0usize;
    for n in 0..=5u32 {
        let l = NodeSet::interval(1, n);
        let parts = partitions(&l, q);
        let results: Vec<Result<usize, String>> = parts
            .par_iter()
            .map(|lambda| {
                let mut count = 0;
                let degree = q_pow(q, degree_exponent(lambda, &l));
                for k in l.subsets() {
                    let comb = restrict(lambda, &k, &l).unwrap();
                    let alt = restrict_with_order(lambda, &k, &l, ConflictOrder::RightLeftBoth).unwrap();
                    inline_checks(&|| format!("restrict λ={lambda} K={k}"), &comb, degree, &alt);
                    for mu in partitions(&k, q) {
                        let cert = restriction_coeff_nonzero(lambda, &mu, &k, &l).unwrap();
                        let c = comb.coefficient(&mu);
                        ensure(cert == (c > 0), || {
                            format!("λ={lambda} K={k} μ={mu}: certificate {cert}, oracle {c}")
                        })?;
                        count += 1;
                    }
                }
                Ok(count)
            })
            .collect();
        for r in results {
            instances += r?;
        }
    }
    Ok(format!("{instances} triples, 0 mismatches"))
}

fn straightening_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5712);
    let inputs: Vec<(NodeSet, ArcMultiset)> = (0..1200)
        .map(|x| {
            let q = if x % 2 == 0 { 2 } else { 3 };
            let k = NodeSet::interval(1, rng.gen_range(2..=5));
            let lambda = random_multiset(&mut rng, &k, q, 4);
            (k, lambda)
        })
        .collect();
    let results: Vec<Result<(), String>> = inputs
        .par_iter()
        .map(|(k, lambda)| {
            let comb = expand(lambda, k).unwrap();
            let alt = expand_with_order(lambda, k, ConflictOrder::RightLeftBoth).unwrap();
            inline_checks(
                &|| format!("expand {lambda}"),
                &comb,
                q_pow(lambda.q(), degree_exponent(lambda, k)),
                &alt,
            );
            for order in [ConflictOrder::BothLeftRight, ConflictOrder::RightLeftBoth] {
                let s = straighten_with_order(lambda, k, order).unwrap();
                ensure(check_identity(lambda, k, &s).unwrap(), || {
                    format!("identity fails for {lambda} over {k}")
                })?;
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    let k = NodeSet::interval(1, 5);
    let golden = ArcMultiset::parse(modulus(3), k.clone(), "1-1-3,1-1-3,1-1-3,2-2-5,4-1-5,3-2-5").unwrap();
    let s = straighten(&golden, &k).unwrap();
    ensure(s.k_prime.to_string() == "1,4,7,8,11", || format!("K' = {}", s.k_prime))?;
    ensure(s.l_prime.to_string() == "2,3,5,6,9,10", || {
        format!("L' = {}", s.l_prime)
    })?;
    ensure(s.trace.len() == 4, || format!("trace has {} steps", s.trace.len()))?;
    ensure(check_identity(&golden, &k, &s).unwrap(), || {
        "golden identity fails".into()
    })?;
    Ok(format!(
        "{} random multisets under both orders, golden K' = {}",
        inputs.len(),
        s.k_prime
    ))
}

fn pointwise() -> Outcome {
    let mut checked = 0usize;
    for q in [2u32, 3] {
        for n in 0..=4u32 {
            let l = NodeSet::interval(1, n);
            let parts_l = partitions(&l, q);
            let subsets: Vec<NodeSet> = l.subsets().collect();
            let restrictions: Vec<Result<usize, String>> = subsets
                .par_iter()
                .map(|k| {
                    let mut v = PointwiseVerifier::new(k, modulus(q), DEFAULT_ENUMERATION_GUARD).unwrap();
                    for lambda in &parts_l {
                        let comb = restrict(lambda, k, &l).unwrap();
                        ensure(
                            v.verify(Decomposed::Restriction { lambda, l: &l }, &comb).unwrap(),
                            || format!("q={q} restrict λ={lambda} K={k}"),
                        )?;
                    }
                    Ok(parts_l.len())
                })
                .collect();
            for r in restrictions {
                checked += r?;
            }
            let tensors: Vec<Result<usize, String>> = parts_l
                .par_iter()
                .map(|lambda| {
                    let mut v = PointwiseVerifier::new(&l, modulus(q), DEFAULT_ENUMERATION_GUARD).unwrap();
                    for mu in &parts_l {
                        let comb = tensor(lambda, mu, &l).unwrap();
                        ensure(v.verify(Decomposed::Tensor { lambda, mu }, &comb).unwrap(), || {
                            format!("q={q} tensor {lambda} ⊗ {mu}")
                        })?;
                    }
                    Ok(parts_l.len())
                })
                .collect();
            for r in tensors {
                checked += r?;
            }
            let all = multisets(&l, q, 3);
            let expansions: Vec<Result<usize, String>> = all
                .par_chunks(64)
                .map(|chunk| {
                    let mut v = PointwiseVerifier::new(&l, modulus(q), DEFAULT_ENUMERATION_GUARD).unwrap();
                    for lambda in chunk {
                        let comb = expand(lambda, &l).unwrap();
                        ensure(v.verify(Decomposed::Multiset { lambda }, &comb).unwrap(), || {
                            format!("q={q} expand {lambda}")
                        })?;
                    }
                    Ok(chunk.len())
                })
                .collect();
            for r in expansions {
                checked += r?;
            }
        }
    }
    Ok(format!("{checked} decompositions equal pointwise"))
}

fn orthogonality() -> Outcome {
    let q = 2;
    let mut pairs = 0usize;
    for n in 0..=5u32 {
        let k = NodeSet::interval(1, n);
        let parts = partitions(&k, q);
        let results: Vec<Result<usize, String>> = parts
            .par_iter()
            .map(|lambda| {
                let bar = conjugate(lambda);
                let expected_if_equal = q_pow(q, superchar::combinatorics::crossings(lambda).len() as u32);
                for mu in &parts {
                    let c = tensor(lambda, mu, &k).unwrap().trivial_coefficient();
                    let want = if **mu == bar { expected_if_equal } else { 0 };
                    ensure(c == want, || {
                        format!("{lambda} ⊗ {mu}: trivial coefficient {c}, expected {want}")
                    })?;
                }
                Ok(parts.len())
            })
            .collect();
        for r in results {
            pairs += r?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn enumeration() -> Outcome {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
    for (n, &b) in bell.iter().enumerate() {
        let got = partitions(&NodeSet::interval(1, n as u32), 2).len();
        ensure(got == b, || format!("|S_[1,{n}](2)| = {got}, expected {b}"))?;
    }
    for q in [2u32, 3] {
        let mut counts = vec![vec![0u128; 9]; 9];
        for n in 0..=7usize {
            let k = NodeSet::interval(1, n as u32);
            for p in enumerate_set_partitions(&k, modulus(q), None, DEFAULT_ENUMERATION_GUARD).unwrap() {
                counts[n][n - p.len()] += 1;
            }
        }
        for n in 1..=7usize {
            for j in 1..=n {
                let rec = counts[n - 1][j - 1] + (j as u128) * (q as u128 - 1) * counts[n - 1][j];
                ensure(counts[n][j] == rec, || {
                    format!("q={q}: S({n},{j}) = {} but recursion gives {rec}", counts[n][j])
                })?;
                ensure(counts[n][j] == q_stirling(n, j, q), || {
                    format!("q={q}: q_stirling({n},{j}) disagrees")
                })?;
            }
        }
    }
    Ok("Bell numbers n = 0..7 and the q-Stirling recursion for q = 2, 3".into())
}

fn inline_summary() -> Outcome {
    let failures = INLINE_FAILURES.lock().unwrap();
    let (d, o) = (
        DEGREE_CHECKS.load(Ordering::Relaxed),
        ORDER_CHECKS.load(Ordering::Relaxed),
    );
    ensure(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures[0])
    })?;
    ensure(d > 0 && o > 0, || "no inline checks ran".into())?;
    Ok(format!("{d} degree checks and {o} order checks"))
}

fn explicit_formulas() -> Outcome {
    let mut half_in = 0usize;
    for (q, max_n) in [(2u32, 6u32), (3, 5)] {
        for n in 0..=max_n {
            let l = NodeSet::interval(1, n);
            let parts = partitions(&l, q);
            let results: Vec<Result<usize, String>> = parts
                .par_iter()
                .map(|lambda| {
                    let mut count = 0;
                    for k in l.subsets() {
                        match explicit_trivial_coefficient(lambda, &k, &l) {
                            Ok(v) => {
                                let o = restrict(lambda, &k, &l).unwrap().trivial_coefficient();
                                ensure(v == o, || format!("q={q} λ={lambda} K={k}: closed {v}, oracle {o}"))?;
                                count += 1;
                            }
                            Err(Error::Hypothesis(_)) => {}
                            Err(e) => return Err(e.to_string()),
                        }
                    }
                    Ok(count)
                })
                .collect();
            for r in results {
                half_in += r?;
            }
        }
    }
    let mut mixed_count = 0usize;
    for q in [2u32, 3, 5] {
        let max_arcs = if q == 5 { 3 } else { 4 };
        for n in 1..=4u32 {
            let k = NodeSet::interval(1, n);
            let all = multisets(&k, q, max_arcs);
            let results: Vec<Result<usize, String>> = all
                .par_iter()
                .map(|lambda| {
                    let mixed = perturb_labels(lambda, &k).iter().all(|x| x.left_label != x.right_label);
                    match mixed_label_trivial_coefficient(lambda, &k) {
                        Ok(v) => {
                            let o = expand(lambda, &k).unwrap().trivial_coefficient();
                            ensure(mixed && v == o, || format!("q={q} λ={lambda}: closed {v}, oracle {o}"))?;
                            Ok(1)
                        }
                        Err(Error::Hypothesis(_)) => {
                            ensure(!mixed, || format!("q={q} λ={lambda} wrongly rejected")).map(|_| 0)
                        }
                        Err(e) => Err(e.to_string()),
                    }
                })
                .collect();
            for r in results {
                mixed_count += r?;
            }
        }
    }
    for q in [3u32, 5] {
        let k = NodeSet::interval(1, 5);
        let lambda = ArcMultiset::parse(modulus(q), k.clone(), &format!("1-1-5,1-1-5,1-{}-5", q - 2)).unwrap();
        ensure(
            matches!(mixed_label_trivial_coefficient(&lambda, &k), Err(Error::Hypothesis(_))),
            || format!("labeled form accepted the q={q} triple"),
        )?;
        ensure(QSetPartition::new(lambda.clone()).is_err(), || {
            format!("q={q} triple accepted as a set partition")
        })?;
    }
    Ok(format!(
        "{half_in} half-in instances and {mixed_count} mixed-label multisets match; the 3q-2 triple is rejected"
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        ("worked restriction example", secs(1), worked_restriction),
        ("crossing example r=7, |C|=5, 4096", secs(60), crossing_example),
        ("3q-2 trivial coefficient", secs(10), three_q_minus_two),
        ("tensor case table", secs(5), tensor_table),
        ("trivial-coefficient certificate, n<=6", secs(600), trivial_certificates),
        (
            "tensor certificate, n<=4 and sampled n=5",
            secs(600),
            tensor_certificates,
        ),
        ("restriction certificate, n<=5", secs(600), restriction_certificates),
        ("straightening identity", secs(300), straightening_identity),
        ("pointwise character verification", secs(600), pointwise),
        ("orthogonality", secs(300), orthogonality),
        ("enumeration counts", secs(10), enumeration),
        ("degree conservation and order independence", secs(1), inline_summary),
        ("closed-form coefficients", secs(600), explicit_formulas),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; exceeded {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
