//! Acceptance run: one PASS/FAIL line per criterion, then the known-gap
//! fixture. Exits non-zero if any criterion fails other than through the
//! documented overlapping-window gap.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use degen4::collect::{collect_closure, COLLECT_DEGREE};
use degen4::cuts::{check_dichotomy, good_subgraph};
use degen4::discharging::{
    check_distance_inflow, check_lemma_faces, distance_instances, expected_total, run_staged, DischargeConfig, DistancePattern,
};
use degen4::embed::EmbeddedGraph;
use degen4::generators::enumerate::{connected_planar_graphs, triangulations};
use degen4::generators::fixtures::{self, ReductionFixture};
use degen4::generators::random::{random_tree, random_triangulation, thin};
use degen4::generators::{named, NAMES};
use degen4::graph::Graph;
use degen4::graph6::to_graph6;
use degen4::oracle::{compare_extract_to_oracle, min_deletion_exact, verify_theorem2_exhaustive};
use degen4::potential::gamma;
use degen4::reducer::{audit_reduction, extract_with_report, ReductionStep};
use degen4::{verify_certificate, ExtractionCertificate};

type Outcome = Result<String, String>;

fn r(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

struct Corpus {
    /// Named solids and constructed fixtures, with labels.
    fixtures: Vec<(String, EmbeddedGraph)>,
    /// Every triangulation on 7 to 12 vertices.
    small_triangulations: Vec<EmbeddedGraph>,
    /// Every connected planar graph on 7 to 9 vertices.
    small_planar: Vec<Graph>,
    /// Random triangulations, the sweep's main body.
    random: Vec<(String, EmbeddedGraph)>,
    /// Random triangulations with some edges dropped.
    thinned: Vec<(String, EmbeddedGraph)>,
}

/// Size of the `i`-th random triangulation: log-uniform between 12 and 3000.
fn sweep_order(rng: &mut ChaCha8Rng) -> usize {
    (12f64 * (3000f64 / 12.0).powf(rng.gen::<f64>())).round() as usize
}

fn build_corpus() -> Corpus {
    let mut fixtures: Vec<(String, EmbeddedGraph)> =
        NAMES.iter().map(|&name| (name.to_string(), named(name).expect("named graph"))).collect();
    fixtures.push(("distance_witness".into(), fixtures::distance_witness().eg));
    fixtures.push(("five_windows_sender".into(), fixtures::five_windows_sender().eg));
    for (name, f) in reduction_fixtures() {
        fixtures.push((name.into(), f.eg));
    }

    let small_triangulations = (7..=12).flat_map(triangulations).collect();
    let small_planar = (7..=9).flat_map(connected_planar_graphs).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = Vec::new();
    for seed in 0..1000u64 {
        let n = sweep_order(&mut rng);
        // Every other graph asks for minimum degree 5, which exists for n = 12 and n >= 14.
        let md = if seed % 2 == 0 && n != 13 { 5 } else { 3 };
        let eg = random_triangulation(n, seed, md).expect("random triangulation");
        random.push((format!("random(n={n}, seed={seed}, md={md})"), eg));
    }
    for (seed, md) in [(0u64, 3usize), (1, 5), (2, 3), (3, 5)] {
        let eg = random_triangulation(10_000, seed, md).expect("random triangulation");
        random.push((format!("random(n=10000, seed={seed}, md={md})"), eg));
    }
    let thinned = (0..200u64)
        .map(|seed| {
            let n = 8 + (seed as usize * 7) % 200;
            let host = random_triangulation(n, seed, if seed % 2 == 0 && n >= 14 { 5 } else { 3 }).expect("random triangulation");
            let keep = 0.5 + (seed % 5) as f64 * 0.1;
            (format!("thin(n={n}, seed={seed}, keep={keep})"), thin(&host, seed, keep))
        })
        .collect();
    Corpus { fixtures, small_triangulations, small_planar, random, thinned }
}

impl Corpus {
    /// Every embedded graph, labelled.
    fn embedded(&self) -> impl Iterator<Item = (String, &EmbeddedGraph)> + '_ {
        let small = self.small_triangulations.iter().map(|eg| (format!("triangulation {}", to_graph6(&eg.graph)), eg));
        self.fixtures.iter().chain(&self.random).chain(&self.thinned).map(|(name, eg)| (name.clone(), eg)).chain(small)
    }
}

fn reduction_fixtures() -> Vec<(&'static str, ReductionFixture)> {
    vec![
        ("deg8_eight_fives", fixtures::deg8_eight_fives()),
        ("deg8_six_fives", fixtures::deg8_six_fives()),
        ("deg8_four_fives", fixtures::deg8_four_fives()),
        ("deg7_five_fives", fixtures::deg7_five_fives()),
        ("deg7_three_fives", fixtures::deg7_three_fives()),
    ]
}

fn min_degree_five_connected(g: &Graph) -> bool {
    g.vertex_count() > 0 && g.is_connected() && g.min_degree().unwrap_or(0) >= 5
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let ico = named("icosahedron").unwrap().graph;
    let report = extract_with_report(&ico).map_err(|e| e.to_string())?;
    let oracle = min_deletion_exact(&ico, 4, None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (s, c, g) = (report.certificate.deletions.len(), report.collected(), gamma(&ico));
    let detail = format!("|S| = {s}, collected {c}, gamma {g}, oracle {}, {elapsed:.2?}", oracle.optimum_deletions);
    let ok = s == 1 && c == 11 && g == r(1, 1) && oracle.optimum_deletions == 1 && oracle.optimal && elapsed < Duration::from_secs(1);
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion2(c: &Corpus) -> Outcome {
    let tri = verify_theorem2_exhaustive(c.small_triangulations.iter().map(|eg| eg.graph.clone())).map_err(|e| e.to_string())?;
    let planar = verify_theorem2_exhaustive(c.small_planar.iter().cloned()).map_err(|e| e.to_string())?;
    Ok(format!(
        "triangulations 7..12: {} graphs ({} collect-all, {} witnesses); connected planar 7..9: {} graphs ({} collect-all, {} witnesses)",
        c.small_triangulations.len(),
        tri.collect_all,
        tri.witness,
        c.small_planar.len(),
        planar.collect_all,
        planar.witness
    ))
}

fn is_triangulation(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.edge_count() == 3 * g.vertex_count() - 6
}

fn criterion3(c: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut largest = 0;
    let mut worst = r(1, 1);
    for (name, eg) in c.random.iter().chain(&c.fixtures) {
        let g = &eg.graph;
        let report = extract_with_report(g).map_err(|e| format!("{name}: {e}"))?;
        let cert = &report.certificate;
        verify_certificate(g, cert).map_err(|e| format!("{name}: {e}"))?;
        let (n, s) = (g.vertex_count() as i64, cert.deletions.len() as i64);
        if Rational64::from_integer(s) > gamma(g) {
            return Err(format!("{name}: |S| = {s} exceeds gamma {}", gamma(g)));
        }
        let kept = r(n - s, n);
        let d = g.average_degree().map_err(|e| e.to_string())?;
        if g.is_connected() && d >= r(2, 1) && kept < (r(38, 1) - d) / 36 {
            return Err(format!("{name}: kept {kept} below (38 - {d})/36"));
        }
        if is_triangulation(g) && kept <= r(8, 9) {
            return Err(format!("{name}: kept {kept} is not above 8/9"));
        }
        if 9 * s >= n {
            return Err(format!("{name}: {s} deletions is not below n/9 = {n}/9"));
        }
        worst = worst.min(kept);
        largest = largest.max(n);
        checked += 1;
    }
    Ok(format!("{checked} graphs up to n = {largest}; smallest kept fraction {worst}"))
}

fn criterion4(c: &Corpus) -> Outcome {
    let (mut runs, mut lemma7) = (0, 0);
    for (name, eg) in c.embedded() {
        let expected = expected_total(eg);
        let (s0, s1, s2, s3) = run_staged(eg, DischargeConfig::default());
        for (stage, s) in [("initial", &s0), ("step 1", &s1), ("step 2", &s2), ("step 3", &s3)] {
            if s.total(eg) != expected {
                return Err(format!("{name}: total {} after {stage}, expected {expected}", s.total(eg)));
            }
        }
        if min_degree_five_connected(&eg.graph) {
            let check = check_lemma_faces(&s3, eg);
            if !check.passed() {
                return Err(format!("{name}: {} faces violate, vertex total {}", check.violations.len(), check.vertex_total));
            }
            lemma7 += 1;
        }
        runs += 1;
    }
    Ok(format!("conservation on {runs} graphs; face bound on {lemma7} min-degree-5 graphs"))
}

/// True when two distance windows into `receiver` share at least two path
/// vertices. The inflow bound counts windows as if consecutive ones met
/// only at an end vertex, so such overlaps are the documented way it fails.
fn windows_overlap(eg: &EmbeddedGraph, receiver: usize) -> bool {
    let paths: Vec<[usize; 4]> =
        distance_instances(eg, DistancePattern::Strict).into_iter().filter(|i| i.receiver == receiver).map(|i| i.witness_path).collect();
    paths.iter().enumerate().any(|(i, a)| paths[i + 1..].iter().any(|b| a != b && a.iter().filter(|x| b.contains(x)).count() >= 2))
}

fn criterion5(c: &Corpus) -> Verdict {
    let (mut runs, mut transfers) = (0, 0);
    let (mut overlapping, mut unexplained) = (Vec::new(), Vec::new());
    for (name, eg) in c.embedded() {
        let state = run_staged(eg, DischargeConfig { pattern: DistancePattern::Strict }).3;
        for v in check_distance_inflow(&state, eg) {
            let line = format!("{name}: v{} (degree {}, {} fives) received {} > {}", v.receiver, v.degree, v.fives, v.inflow, v.bound);
            if windows_overlap(eg, v.receiver) {
                overlapping.push(line);
            } else {
                unexplained.push(line);
            }
        }
        transfers += state.ledger.iter().filter(|t| t.step == 2).count();
        runs += 1;
    }
    let summary = format!("{runs} runs, {transfers} distance transfers");
    if !unexplained.is_empty() {
        Verdict::Fail(format!("{summary}; {} violations without overlapping windows, first {}", unexplained.len(), unexplained[0]))
    } else if !overlapping.is_empty() {
        Verdict::Gap(format!(
            "{summary}; {} receivers over the bound, all with overlapping windows: {}",
            overlapping.len(),
            overlapping.join("; ")
        ))
    } else {
        Verdict::Pass(format!("{summary}, no receiver over its bound"))
    }
}

fn criterion6(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, eg) in c.embedded().filter(|(_, eg)| min_degree_five_connected(&eg.graph)) {
        let gs = good_subgraph(eg).map_err(|e| format!("{name}: {e}"))?;
        let state = run_staged(eg, DischargeConfig::default()).3;
        if !check_dichotomy(&gs, &state).passed() {
            return Err(format!("{name}: no rich extraordinary vertex and ordinary total not positive"));
        }
        checked += 1;
    }
    Ok(format!("{checked} min-degree-5 graphs"))
}

fn criterion7(c: &Corpus) -> Outcome {
    let mut graphs: Vec<Graph> = c.small_triangulations.iter().map(|eg| eg.graph.clone()).collect();
    graphs.extend(c.small_planar.iter().cloned());
    graphs.extend(c.embedded().map(|(_, eg)| eg.graph.clone()).filter(|g| g.vertex_count() <= 14));
    for seed in 0..200u64 {
        let n = 12 + (seed % 3) as usize;
        let md = if n == 13 || seed % 2 == 1 { 3 } else { 5 };
        graphs.push(random_triangulation(n, seed, md).expect("random triangulation").graph);
    }
    let mut inexact = 0;
    for g in &graphs {
        let cmp = compare_extract_to_oracle(g).map_err(|e| e.to_string())?;
        if !cmp.optimal {
            inexact += 1;
        }
    }
    if inexact > 0 {
        return Err(format!("oracle did not finish on {inexact} graphs"));
    }
    Ok(format!("{} graphs with n <= 14", graphs.len()))
}

/// Collects in a random legal order and returns the collected set.
fn random_closure(g: &Graph, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let mut h = g.clone();
    let mut collected = BTreeSet::new();
    loop {
        let ready: Vec<usize> = h.vertices().filter(|&v| h.degree(v) <= COLLECT_DEGREE).collect();
        let Some(&v) = ready.choose(rng) else { break };
        h.remove_vertex(v).unwrap();
        collected.insert(v);
    }
    collected
}

fn criterion8(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // Graphs with a non-trivial cascade: a min-degree-5 triangulation with
    // one vertex removed, and thinned triangulations.
    let mut hosts: Vec<Graph> = Vec::new();
    for seed in 0..10u64 {
        let eg = random_triangulation(40 + 10 * seed as usize, seed, 5).expect("random triangulation");
        let v = eg.graph.vertices().next().unwrap();
        hosts.push(eg.graph.delete_vertex(v).unwrap());
    }
    hosts.extend(c.thinned.iter().take(20).map(|(_, eg)| eg.graph.clone()));
    for g in &hosts {
        let expected: BTreeSet<usize> = collect_closure(g, COLLECT_DEGREE).order.into_iter().collect();
        for _ in 0..100 {
            if random_closure(g, &mut rng) != expected {
                return Err(format!("closure depends on the order on {}", to_graph6(g)));
            }
        }
    }

    let mut legal_collects = 0;
    for g in hosts.iter().chain(c.small_planar.iter().step_by(97)) {
        for v in g.vertices().filter(|&v| g.degree(v) <= COLLECT_DEGREE) {
            if gamma(&g.delete_vertex(v).unwrap()) > gamma(g) {
                return Err(format!("collecting {v} raises gamma on {}", to_graph6(g)));
            }
            legal_collects += 1;
        }
    }

    let mut trees = 0;
    for n in 1..=150 {
        for seed in 0..3 {
            let t = random_tree(n, seed);
            if gamma(&t) != r(0, 1) {
                return Err(format!("tree on {n} vertices has gamma {}", gamma(&t)));
            }
            trees += 1;
        }
    }

    let mut round_trips = 0;
    for (name, eg) in c.random.iter().take(100).chain(&c.fixtures) {
        let cert = extract_with_report(&eg.graph).map_err(|e| format!("{name}: {e}"))?.certificate;
        let back = ExtractionCertificate::from_json(&cert.to_json()).map_err(|e| format!("{name}: {e}"))?;
        if back != cert {
            return Err(format!("{name}: certificate changed in a round trip"));
        }
        verify_certificate(&eg.graph, &back).map_err(|e| format!("{name}: {e}"))?;
        round_trips += 1;
    }
    Ok(format!(
        "confluence on {} graphs x 100 orders; {legal_collects} collects never raise gamma; {trees} trees with gamma 0; {round_trips} certificate round trips",
        hosts.len()
    ))
}

fn criterion9() -> Outcome {
    // (b, Σe at most, ΔΦ at least, ΔΓ at least) required of each reduction.
    let bounds = [
        ([8, 0, 0, 1, 0, 0], 16, 19, r(23, 18)),
        ([6, 0, 0, 1, 0, 0], 11, 19, r(10, 9)),
        ([4, 3, 0, 1, 0, 0], 13, 26, r(25, 18)),
        ([5, 1, 1, 0, 0, 0], 11, 19, r(10, 9)),
        ([3, 3, 1, 0, 0, 0], 11, 21, r(7, 6)),
    ];
    let mut lines = Vec::new();
    for ((name, f), (b, sigma_e, delta_phi, delta_gamma)) in reduction_fixtures().into_iter().zip(bounds) {
        let g = &f.eg.graph;
        let mut after = g.delete_vertex(f.deleted).unwrap();
        for &v in &f.collected {
            after.remove_vertex(v).unwrap();
        }
        let step = ReductionStep { deleted: f.deleted, collected: f.collected.clone(), gamma_before: gamma(g), gamma_after: gamma(&after) };
        let audit = audit_reduction(g, &step).map_err(|e| format!("{name}: {e}"))?;
        let ok = audit.b == b
            && audit.sigma_e <= sigma_e
            && audit.delta_phi >= delta_phi
            && audit.delta_tc == 0
            && audit.delta_gamma >= delta_gamma
            && step.delta_gamma() == audit.delta_gamma;
        if !ok {
            return Err(format!("{name}: {audit:?}"));
        }
        lines.push(format!("{name} dGamma {}", audit.delta_gamma));
    }
    Ok(lines.join(", "))
}

/// The constructed configuration on which the distance-discharging bound
/// fails under both patterns.
fn known_gap() -> Verdict {
    let eg = fixtures::overlapping_windows().eg;
    let mut details = Vec::new();
    let mut over = false;
    for pattern in [DistancePattern::Strict, DistancePattern::Relaxed] {
        let state = run_staged(&eg, DischargeConfig { pattern }).3;
        match check_distance_inflow(&state, &eg).first() {
            Some(v) => {
                over = true;
                details.push(format!("{pattern:?}: v{} (degree {}) received {} > {}", v.receiver, v.degree, v.inflow, v.bound));
            }
            None => details.push(format!("{pattern:?}: within bound")),
        }
    }
    let faces = check_lemma_faces(&run_staged(&eg, DischargeConfig::default()).3, &eg);
    let text = format!("{}; face bound {}", details.join("; "), if faces.passed() { "holds" } else { "fails" });
    if over {
        Verdict::Gap(text)
    } else {
        Verdict::Pass(text)
    }
}

enum Verdict {
    Pass(String),
    Fail(String),
    /// A failure of the documented overlapping-window kind: reported as a
    /// failure, but not a regression.
    Gap(String),
}

impl From<Outcome> for Verdict {
    fn from(o: Outcome) -> Verdict {
        match o {
            Ok(d) => Verdict::Pass(d),
            Err(d) => Verdict::Fail(d),
        }
    }
}

fn report(label: &str, start: Instant, verdict: &Verdict) {
    let elapsed = start.elapsed();
    match verdict {
        Verdict::Pass(detail) => println!("PASS {label}: {detail} [{elapsed:.1?}]"),
        Verdict::Fail(detail) => println!("FAIL {label}: {detail} [{elapsed:.1?}]"),
        Verdict::Gap(detail) => println!("FAIL {label} (known gap, overlapping windows): {detail} [{elapsed:.1?}]"),
    }
}

fn main() {
    let start = Instant::now();
    let corpus = build_corpus();
    println!(
        "corpus: {} fixtures, {} small triangulations, {} small planar graphs, {} random, {} thinned [{:.1?}]",
        corpus.fixtures.len(),
        corpus.small_triangulations.len(),
        corpus.small_planar.len(),
        corpus.random.len(),
        corpus.thinned.len(),
        start.elapsed()
    );

    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let c = &corpus;
    let criteria: Vec<(&str, Check)> = vec![
        ("1 icosahedron exactness", Box::new(|| criterion1().into())),
        ("2 theorem 2 exhaustive", Box::new(move || criterion2(c).into())),
        ("3 theorem 1 / corollary 3 sweep", Box::new(move || criterion3(c).into())),
        ("4 conservation and face bound", Box::new(move || criterion4(c).into())),
        ("5 distance inflow bound", Box::new(move || criterion5(c))),
        ("6 ordinary/extraordinary dichotomy", Box::new(move || criterion6(c).into())),
        ("7 oracle sandwich", Box::new(move || criterion7(c).into())),
        ("8 property suites", Box::new(move || criterion8(c).into())),
        ("9 audit fixtures", Box::new(|| criterion9().into())),
    ];
    let (mut passed, mut gaps, mut failed) = (0, 0, 0);
    for (label, check) in &criteria {
        let t = Instant::now();
        let verdict = check();
        match verdict {
            Verdict::Pass(_) => passed += 1,
            Verdict::Gap(_) => gaps += 1,
            Verdict::Fail(_) => failed += 1,
        }
        report(label, t, &verdict);
    }
    let t = Instant::now();
    report("fixture overlapping_windows: distance inflow", t, &known_gap());

    println!(
        "{passed} of {} criteria passed, {gaps} failed as a known gap, {failed} failed otherwise [{:.1?}]",
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
