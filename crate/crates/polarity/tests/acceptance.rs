//! Acceptance run: one PASS/FAIL line per criterion, with pinned sample
//! counts, sizes and time budgets. Exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polarity::contexts::{brute_force_concepts, concept_lattice, FormalContext};
use polarity::fibration::{
    carrier, cleavage_factorize, diamond, kernel_square_between, verify_oef_axioms, verify_oef_axioms_with,
    CleavageFactorization, DiamondDiagram, OefConfig, OefReport,
};
use polarity::galois::all_adjunctions;
use polarity::order::enumerate::{monotone_maps, posets, preorders, up_to_isomorphism};
use polarity::order::{equalizer, mediator_with_search, product, pullback, Cone, Limit};
use polarity::polar::{diagonal_fill, CommutingSquare, Polar, Strictness};
use polarity::{sample, Adjunction, MonotoneMap, Preorder};

const SEED: u64 = 0x00C0_FFEE;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn run(name: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        fail(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let ok = outcome.ok && in_budget;
    println!(
        "{} {name}: {} [{:.2}s of {}s budget]",
        if ok { "PASS" } else { "FAIL" },
        if in_budget {
            outcome.detail
        } else {
            format!("{}; over budget", outcome.detail)
        },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    ok
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

fn small_posets(max: usize) -> Vec<Preorder> {
    (1..=max).flat_map(|n| up_to_isomorphism(posets(n))).collect()
}

fn small_preorders(max: usize) -> Vec<Preorder> {
    (0..=max).flat_map(|n| up_to_isomorphism(preorders(n))).collect()
}

fn polar_soundness() -> Outcome {
    const SAMPLES: usize = 500;
    const MAX_SIZE: usize = 6;
    let mut r = rng(1);
    for k in 0..SAMPLES {
        let g = sample::random_adjunction(&mut r, MAX_SIZE);
        let p = Polar::of(&g).expect("posetal sample");
        let composite = |a: &Adjunction, b: &Adjunction| a.then(b).expect("composable");
        let (central, closed_iso, open_iso) = (
            p.central_isomorphism(),
            p.closed_isomorphism(),
            p.open_isomorphism(),
        );
        let checks = [
            (
                "full flavor recomposes",
                composite(&p.reflection(), &p.coreflection()) == g,
            ),
            (
                "closed flavor recomposes",
                composite(&p.closed_reflection(), &p.closed_coreflection()) == g,
            ),
            (
                "open flavor recomposes",
                composite(&p.open_reflection(), &p.open_coreflection()) == g,
            ),
            (
                "closed reflection then iso is full",
                composite(&p.closed_reflection(), &closed_iso) == p.reflection(),
            ),
            (
                "iso then open coreflection is full",
                composite(&open_iso, &p.open_coreflection()) == p.coreflection(),
            ),
            (
                "closed and open reflections differ by the central iso",
                composite(&p.closed_reflection(), &central) == p.open_reflection(),
            ),
            (
                "central iso factors through the axis",
                composite(&closed_iso, &open_iso) == central,
            ),
            (
                "isomorphisms are isomorphisms",
                [&central, &closed_iso, &open_iso]
                    .iter()
                    .all(|i| i.classify().is_isomorphism),
            ),
        ];
        if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
            return fail(format!("sample {k}: {law} fails for {g:?}"));
        }
    }
    pass(format!(
        "{SAMPLES} adjunctions, carriers <= {MAX_SIZE}, three flavors"
    ))
}

/// Every adjunction `src ⇌ tgt`, by brute force over pairs of functions.
fn brute_adjunctions(src: &Preorder, tgt: &Preorder) -> Vec<(Vec<usize>, Vec<usize>)> {
    let functions = |a: usize, b: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out
                .into_iter()
                .flat_map(|f| (0..b).map(move |y| [f.clone(), vec![y]].concat()))
                .collect();
        }
        out
    };
    let mut found = Vec::new();
    for l in functions(src.len(), tgt.len()) {
        for r in functions(tgt.len(), src.len()) {
            let adjoint =
                (0..src.len()).all(|a| (0..tgt.len()).all(|b| tgt.leq(l[a], b) == src.leq(a, r[b])));
            if adjoint {
                found.push((l.clone(), r));
            }
        }
    }
    found
}

fn diagonal_uniqueness() -> Outcome {
    const SQUARES: usize = 100;
    const MAX_SIZE: usize = 4;
    let mut r = rng(2);
    for k in 0..SQUARES {
        let sq = sample::random_fill_square(&mut r, MAX_SIZE);
        let d = match diagonal_fill(&sq) {
            Ok(d) => d,
            Err(e) => return fail(format!("square {k}: {e}")),
        };
        if sq.top().then(&d).as_ref() != Ok(sq.left()) || d.then(sq.bottom()).as_ref() != Ok(sq.right()) {
            return fail(format!("square {k}: fill equations fail"));
        }
        let solutions = brute_adjunctions(d.source(), d.target())
            .into_iter()
            .filter(|(l, rr)| {
                let (e, s, left, m) = (sq.top(), sq.right(), sq.left(), sq.bottom());
                let a0 = e.source().len();
                let b1 = m.target().len();
                (0..a0).all(|a| l[e.left().apply(a)] == left.left().apply(a))
                    && (0..d.source().len()).all(|b| m.left().apply(l[b]) == s.left().apply(b))
                    && (0..b1).all(|c| rr[m.right().apply(c)] == s.right().apply(c))
                    && (0..d.target().len()).all(|c| e.right().apply(rr[c]) == left.right().apply(c))
            })
            .count();
        if solutions != 1 {
            return fail(format!(
                "square {k}: {solutions} fills found by exhaustive search"
            ));
        }
    }
    pass(format!(
        "{SQUARES} squares, carriers <= {MAX_SIZE}, exactly one fill each"
    ))
}

fn context(g: usize, m: usize, cross: impl Fn(usize, usize) -> bool) -> FormalContext {
    FormalContext::new(
        (1..=g).map(|i| format!("g{i}")).collect(),
        (1..=m).map(|i| format!("m{i}")).collect(),
        (0..g).map(|i| (0..m).map(|j| cross(i, j)).collect()).collect(),
    )
    .expect("distinct labels")
}

fn concept_oracle() -> Outcome {
    const RANDOM_5X5: usize = 200;
    let agree = |k: &FormalContext| concept_lattice(k).map(|(_, c)| c).ok() == brute_force_concepts(k).ok();
    for bits in 0u32..512 {
        let k = context(3, 3, |i, j| bits >> (3 * i + j) & 1 == 1);
        if !agree(&k) {
            return fail(format!("3x3 context {bits:09b} disagrees"));
        }
    }
    let mut r = rng(3);
    for k in 0..RANDOM_5X5 {
        let density = r.gen_range(0.1..0.9);
        let ctx = sample::random_context(&mut r, 5, 5, density);
        if !agree(&ctx) {
            return fail(format!("random 5x5 context {k} disagrees:\n{}", ctx.to_cxt()));
        }
    }
    for n in 1..=5 {
        let contranominal = concept_lattice(&context(n, n, |i, j| i != j)).map(|(_, c)| c.len());
        if contranominal != Ok(1 << n) {
            return fail(format!("contranominal scale {n}: {contranominal:?} concepts"));
        }
        let identity = concept_lattice(&context(n, n, |i, j| i == j)).map(|(_, c)| c.len());
        let expected = if n == 1 { 1 } else { n + 2 };
        if identity != Ok(expected) {
            return fail(format!(
                "identity context {n}: {identity:?} concepts, expected {expected}"
            ));
        }
    }
    pass(format!(
        "512 3x3 + {RANDOM_5X5} random 5x5 contexts match; 2^n concepts for contranominal scales n=1..5 (identity contexts: n+2)"
    ))
}

fn diamond_identities() -> Outcome {
    const SAMPLES: usize = 300;
    const MAX_SIZE: usize = 6;
    let mut r = rng(4);
    for k in 0..SAMPLES {
        let g = sample::random_adjunction(&mut r, MAX_SIZE);
        let d = diamond(&g).expect("posetal sample");
        if d.identities.len() != 7 {
            return fail(format!("sample {k}: {} identities", d.identities.len()));
        }
        if let Some((name, _)) = d.identities.iter().find(|(_, &ok)| !ok) {
            return fail(format!("sample {k}: {name} fails"));
        }
        if !d.equ.classify().is_equivalence || !d.equ_co.classify().is_equivalence {
            return fail(format!("sample {k}: an equ leg is not an equivalence"));
        }
    }
    pass(format!(
        "{SAMPLES} adjunctions, carriers <= {MAX_SIZE}, 7 identities strict"
    ))
}

fn kernel_identities() -> Outcome {
    const MAX_SIZE: usize = 3;
    const PADDED: usize = 50;
    let objects = small_posets(MAX_SIZE);
    let adj: Vec<Vec<Vec<Adjunction>>> = objects
        .iter()
        .map(|a| objects.iter().map(|b| all_adjunctions(a, b)).collect())
        .collect();
    let mut diamonds: HashMap<Adjunction, DiamondDiagram> = HashMap::new();
    let mut diamond_of = |g: &Adjunction| {
        diamonds
            .entry(g.clone())
            .or_insert_with(|| diamond(g).expect("posetal"))
            .clone()
    };

    let n = objects.len();
    let mut strict = Vec::new();
    for a0 in 0..n {
        for a1 in 0..n {
            for g in &adj[a0][a1] {
                for b0 in 0..n {
                    for f0 in &adj[a0][b0] {
                        for (to_b1, bottoms) in adj[a1].iter().zip(&adj[b0]) {
                            for f1 in to_b1 {
                                let upper = g.then(f1).expect("composable");
                                for h in bottoms {
                                    if f0.then(h).as_ref() == Ok(&upper) {
                                        strict.push((g.clone(), h.clone(), f0.clone(), f1.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for (k, (g, h, f0, f1)) in strict.iter().enumerate() {
        let sq = CommutingSquare::new(g.clone(), h.clone(), f0.clone(), f1.clone()).expect("strict");
        debug_assert_eq!(sq.strictness(), Strictness::Strict);
        if let Err(e) = kernel_square_between(&sq, &diamond_of(g), &diamond_of(h)) {
            return fail(format!("enumerated square {k}: {e}"));
        }
    }

    let mut r = rng(5);
    for k in 0..PADDED {
        let (g, h, f0, f1) = &strict[r.gen_range(0..strict.len())];
        let sq = CommutingSquare::new(g.clone(), h.clone(), f0.clone(), f1.clone()).expect("strict");
        let size = r.gen_range(2..=3);
        let pad = sample::random_poset(&mut r, size);
        let padded = sample::pad_square(&sq, &pad).expect("padding keeps squares commuting");
        let result = kernel_square_between(
            &padded,
            &diamond(padded.top()).unwrap(),
            &diamond(padded.bottom()).unwrap(),
        );
        if let Err(e) = result {
            return fail(format!("padded square {k}: {e}"));
        }
    }
    pass(format!(
        "{} strict squares over {} posets of size <= {MAX_SIZE}, plus {PADDED} padded squares; 8 identities each",
        strict.len(),
        objects.len()
    ))
}

fn summarize(report: &OefReport) -> Vec<(&'static str, bool, usize)> {
    vec![
        ("cleavage", report.cleavage.passed, report.cleavage.instances),
        (
            "cleavage uniqueness",
            report.cleavage_uniqueness.passed,
            report.cleavage_uniqueness.instances,
        ),
        (
            "split laws",
            report.split_laws.passed,
            report.split_laws.instances,
        ),
        (
            "right cancellation",
            report.right_cancellation.passed,
            report.right_cancellation.instances,
        ),
        (
            "left cancellation",
            report.left_cancellation.passed,
            report.left_cancellation.instances,
        ),
        (
            "equivalence factorization",
            report.equivalence_factorization.passed,
            report.equivalence_factorization.instances,
        ),
        (
            "equalizers cartesian",
            report.equalizers_cartesian.passed,
            report.equalizers_cartesian.instances,
        ),
        (
            "adjoints cartesian",
            report.adjoints_cartesian.passed,
            report.adjoints_cartesian.instances,
        ),
        (
            "faithfulness",
            report.faithfulness.passed,
            report.faithfulness.instances,
        ),
        (
            "limit preservation",
            report.limit_preservation.passed,
            report.limit_preservation.instances,
        ),
    ]
}

fn oef_axioms() -> Outcome {
    const SEEDED: usize = 500;
    const SEEDED_SIZE: usize = 5;
    let objects = small_preorders(3);
    let exhaustive: Vec<MonotoneMap> = objects
        .iter()
        .flat_map(|a| objects.iter().flat_map(move |b| monotone_maps(a, b)))
        .collect();
    let config = OefConfig::default();
    let report = verify_oef_axioms(&exhaustive, &objects, config);
    for (law, ok, instances) in summarize(&report) {
        if !ok || instances == 0 {
            return fail(format!("exhaustive {law}: passed={ok}, {instances} instances"));
        }
    }

    let mut r = rng(6);
    let seeded: Vec<MonotoneMap> = (0..SEEDED)
        .map(|k| {
            if k % 5 == 0 {
                let g = sample::random_adjunction(&mut r, SEEDED_SIZE);
                if k % 10 == 0 {
                    g.left().clone()
                } else {
                    g.right().clone()
                }
            } else {
                let (n0, n1) = (r.gen_range(0..=SEEDED_SIZE), r.gen_range(1..=SEEDED_SIZE));
                let a = sample::random_preorder(&mut r, n0);
                let b = sample::random_preorder(&mut r, n1);
                sample::random_monotone(&mut r, &a, &b)
            }
        })
        .collect();
    let test_objects = small_preorders(2);
    let seeded_report = verify_oef_axioms(&seeded, &test_objects, config);
    for (law, ok, instances) in summarize(&seeded_report) {
        if !ok || instances == 0 {
            return fail(format!("seeded {law}: passed={ok}, {instances} instances"));
        }
    }

    let coarsen = |e: &MonotoneMap| {
        let apex = Preorder::indiscrete(e.src().len()).relabel(carrier(e.src()))?;
        CleavageFactorization::from_parts(e, apex, (0..e.src().len()).collect(), e.image().to_vec())
    };
    let refine = |e: &MonotoneMap| {
        let cf = cleavage_factorize(e);
        CleavageFactorization::from_parts(
            e,
            e.src().clone(),
            cf.gap.image().to_vec(),
            cf.lift.image().to_vec(),
        )
    };
    let shift = |e: &MonotoneMap| {
        let mut cf = cleavage_factorize(e);
        if let Some(swap) = (0..e.src().len()).find(|&x| !cf.apex.equiv(x, 0)) {
            let mut image = cf.gap.image().to_vec();
            image.swap(0, swap);
            cf.gap = MonotoneMap::new(e.src().clone(), cf.apex.clone(), image)?;
        }
        Ok(cf)
    };
    type Mutant<'a> = (
        &'a str,
        &'a dyn Fn(&MonotoneMap) -> polarity::Result<CleavageFactorization>,
    );
    let mutants: [Mutant; 3] = [
        ("coarsened apex", &coarsen),
        ("refined apex", &refine),
        ("shifted gap", &shift),
    ];
    for (name, mutant) in mutants {
        let caught = verify_oef_axioms_with(&exhaustive, &objects, config, mutant);
        if caught.all_passed() {
            return fail(format!("mutation `{name}` went undetected"));
        }
    }
    pass(format!(
        "{} exhaustive maps over {} preorders of size <= 3, {SEEDED} seeded maps of size <= {SEEDED_SIZE}; 3 mutations caught",
        exhaustive.len(),
        objects.len()
    ))
}

/// Mediators counted element by element, without the library's index or
/// enumerator: the product of the number of apex elements matching each
/// vertex element, restricted to monotone choices when unique.
fn count_mediators(cone: &Cone, limit: &impl Limit) -> usize {
    let apex = limit.apex();
    let proj = limit.projections();
    let choices: Vec<Vec<usize>> = (0..cone.vertex().len())
        .map(|c| {
            (0..apex.len())
                .filter(|&x| {
                    proj.iter()
                        .zip(cone.legs())
                        .all(|(p, l)| p.apply(x) == l.apply(c))
                })
                .collect()
        })
        .collect();
    if choices.iter().any(|c| c.len() != 1) {
        return if choices.iter().any(Vec::is_empty) {
            0
        } else {
            choices.iter().map(Vec::len).product()
        };
    }
    let f: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    let v = cone.vertex();
    let monotone = (0..v.len()).all(|a| (0..v.len()).all(|b| !v.leq(a, b) || apex.leq(f[a], f[b])));
    usize::from(monotone)
}

fn limit_universality() -> Outcome {
    const LAX_SAMPLES: usize = 500;
    let objects = small_preorders(3);
    let vertices = small_preorders(2);
    let mut cones = 0usize;
    let mut check = |cone: Cone, limit: &dyn Fn(&Cone) -> (usize, bool), what: &str| -> Result<(), String> {
        cones += 1;
        let (count, found) = limit(&cone);
        if count != 1 || !found {
            return Err(format!("{what}: {count} mediators, library found one: {found}"));
        }
        Ok(())
    };
    for a in &objects {
        for b in &objects {
            let limit = product(a, b);
            for v in &vertices {
                for l0 in monotone_maps(v, a) {
                    for l1 in monotone_maps(v, b) {
                        let cone = Cone::new(v.clone(), vec![l0.clone(), l1]).unwrap();
                        let res = check(
                            cone,
                            &|c| {
                                (
                                    count_mediators(c, &limit),
                                    mediator_with_search(c, &limit, 0).is_ok(),
                                )
                            },
                            "product",
                        );
                        if let Err(e) = res {
                            return fail(e);
                        }
                    }
                }
            }
            let homs = monotone_maps(a, b);
            for f in &homs {
                for g in &homs {
                    let limit = equalizer(f, g).unwrap();
                    for v in &vertices {
                        for leg in monotone_maps(v, a) {
                            let cone = Cone::new(v.clone(), vec![leg]).unwrap();
                            if !limit.commutes(cone.legs()) {
                                continue;
                            }
                            let res = check(
                                cone,
                                &|c| {
                                    (
                                        count_mediators(c, &limit),
                                        mediator_with_search(c, &limit, 0).is_ok(),
                                    )
                                },
                                "equalizer",
                            );
                            if let Err(e) = res {
                                return fail(e);
                            }
                        }
                    }
                }
            }
        }
    }
    let small = small_preorders(2);
    for a in &small {
        for b in &small {
            for c in &objects {
                for f0 in monotone_maps(a, c) {
                    for f1 in monotone_maps(b, c) {
                        let limit = pullback(&f0, &f1).unwrap();
                        for v in &vertices {
                            for l0 in monotone_maps(v, a) {
                                for l1 in monotone_maps(v, b) {
                                    let cone = Cone::new(v.clone(), vec![l0.clone(), l1]).unwrap();
                                    if !limit.commutes(cone.legs()) {
                                        continue;
                                    }
                                    let res = check(
                                        cone,
                                        &|c| {
                                            (
                                                count_mediators(c, &limit),
                                                mediator_with_search(c, &limit, 0).is_ok(),
                                            )
                                        },
                                        "pullback",
                                    );
                                    if let Err(e) = res {
                                        return fail(e);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut r = rng(7);
    let mut antecedent = 0;
    for k in 0..LAX_SAMPLES {
        let n = |r: &mut ChaCha8Rng| r.gen_range(1..=3);
        let (na, nb, nv) = (n(&mut r), n(&mut r), r.gen_range(0..=5));
        let a = sample::random_preorder(&mut r, na);
        let b = sample::random_preorder(&mut r, nb);
        let v = sample::random_preorder(&mut r, nv);
        let limit = product(&a, &b);
        let f = sample::random_monotone(&mut r, &v, &limit.apex);
        let g = sample::random_monotone(&mut r, &v, &limit.apex);
        let below = [&limit.proj0, &limit.proj1]
            .iter()
            .all(|p| f.then(p).unwrap().pointwise_leq(&g.then(p).unwrap()));
        antecedent += usize::from(below);
        if below && !f.pointwise_leq(&g) {
            return fail(format!("sample {k}: projections do not reflect the order"));
        }
        let self_below = [&limit.proj0, &limit.proj1]
            .iter()
            .all(|p| f.then(p).unwrap().pointwise_leq(&f.then(p).unwrap()));
        if !self_below || !f.pointwise_leq(&f) {
            return fail(format!("sample {k}: reflexive instance fails"));
        }
    }
    pass(format!(
        "{cones} cones over orders of size <= 3 with one mediator each; {LAX_SAMPLES} lax-mono samples ({antecedent} non-vacuous)"
    ))
}

fn cli_goldens() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let fixture = |f: &str| root.join("fixtures").join(f).display().to_string();
    let cases: [(&[&str], &str); 6] = [
        (&["concepts", &fixture("id2.cxt")], "concepts_id2.json"),
        (
            &["factorize", "--flavor", "full", &fixture("collapse.json")],
            "factorize_collapse_full.json",
        ),
        (
            &["factorize", "--flavor", "closed", &fixture("collapse.json")],
            "factorize_collapse_closed.json",
        ),
        (
            &["factorize", "--flavor", "open", &fixture("collapse.json")],
            "factorize_collapse_open.json",
        ),
        (&["diamond", &fixture("collapse.json")], "diamond_collapse.json"),
        (
            &["quotient", &fixture("indiscrete2.json")],
            "quotient_indiscrete2.json",
        ),
    ];
    for (args, golden) in cases {
        let expected = std::fs::read(root.join("golden").join(golden)).expect("golden present");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = polarity::cli::run_with(
            std::iter::once("polarity").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        if code != 0 || out != expected {
            return fail(format!(
                "{golden}: exit {code}, output differs: {}",
                String::from_utf8_lossy(&err)
            ));
        }
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = polarity::cli::run_with(["polarity", "check", &fixture("bad.json")], &mut out, &mut err);
    if code != 1 || !String::from_utf8_lossy(&err).contains("`1`") {
        return fail(format!("check bad.json: exit {code}"));
    }
    pass("6 goldens byte-identical; failing check exits 1 with witness")
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run("polar factorization soundness", secs(30), polar_soundness),
        run("diagonalization uniqueness", secs(60), diagonal_uniqueness),
        run("concept-lattice oracle equivalence", secs(60), concept_oracle),
        run("diamond diagram identities", secs(30), diamond_identities),
        run("kernel identities", secs(120), kernel_identities),
        run("fibration axioms", secs(60), oef_axioms),
        run("limit universal properties", secs(30), limit_universality),
        run("cli golden files", secs(5), cli_goldens),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
