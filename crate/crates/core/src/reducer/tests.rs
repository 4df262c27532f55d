use num_rational::Rational64;
use proptest::prelude::*;

use super::*;
use crate::generators::enumerate::connected_planar_graphs;
use crate::generators::fixtures::{self, ReductionFixture};
use crate::generators::named;
use crate::generators::random::{random_tree, random_triangulation};

fn r(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

fn fixture_step(f: &ReductionFixture) -> ReductionStep {
    let g = &f.eg.graph;
    let mut after = g.delete_vertex(f.deleted).unwrap();
    for &v in &f.collected {
        after.remove_vertex(v).unwrap();
    }
    ReductionStep { deleted: f.deleted, collected: f.collected.clone(), gamma_before: gamma(g), gamma_after: gamma(&after) }
}

#[test]
fn theorem2_examples() {
    let ico = named("icosahedron").unwrap().graph;
    match theorem2_witness(&ico).unwrap() {
        Some(Theorem2Outcome::Witness { deleted, collected }) => {
            assert_eq!(collected.len(), 6);
            assert_eq!(closure_after_delete(&ico, deleted).len(), 11);
        }
        other => panic!("unexpected {other:?}"),
    }
    let oct = named("octahedron").unwrap().graph;
    match theorem2_witness(&oct).unwrap() {
        Some(Theorem2Outcome::CollectAll(order)) => assert_eq!(order, vec![0, 1, 2, 3, 4, 5]),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn theorem2_on_small_connected_planar_graphs() {
    for n in 7..=8 {
        for g in connected_planar_graphs(n) {
            assert!(theorem2_witness(&g).unwrap().is_some());
        }
    }
}

#[test]
fn icosahedron_reduction() {
    let ico = named("icosahedron").unwrap().graph;
    let all: Vec<VertexId> = ico.vertices().collect();
    let (step, phase) = find_reduction(&ico, &all).unwrap();
    assert_eq!(phase, SearchPhase::Hotspot);
    assert_eq!(step.deleted, 0);
    assert_eq!(step.collected.len(), 11);
    assert_eq!(step.gamma_before, r(1, 1));
    assert_eq!(step.gamma_after, r(0, 1));
}

#[test]
fn lemma10_reduction_gains_at_least_23_18() {
    let w = fixtures::lemma10();
    let g = &w.eg.graph;
    let collected = closure_after_delete(g, w.center);
    assert!(w.ring.iter().all(|v| collected.contains(v)));
    let mut removed = vec![w.center];
    removed.extend(&collected);
    assert!(delta_gamma_closed(g, &removed) >= r(23, 18));
    let (step, _) = find_reduction(g, &[w.center]).unwrap();
    assert!(step.delta_gamma() >= r(23, 18));
}

#[test]
fn extract_examples() {
    let ico = named("icosahedron").unwrap().graph;
    let report = extract_with_report(&ico).unwrap();
    let cert = &report.certificate;
    assert_eq!(cert.deletions.len(), 1);
    assert_eq!(report.collected(), 11);
    assert_eq!(cert.gamma, r(1, 1));
    assert_eq!(report.fallback_hits, 0);
    assert!(verify_certificate(&ico, cert).is_ok());

    let tree = random_tree(30, 4);
    let cert = extract(&tree).unwrap();
    assert!(cert.deletions.is_empty());
    assert_eq!(cert.gamma, r(0, 1));
    assert_eq!(verify_certificate(&tree, &cert).unwrap().collected, 30);
}

#[test]
fn certificate_json_shape() {
    let cert = ExtractionCertificate { gamma: r(4, 6), events: vec![Event::Delete { v: 3 }, Event::Collect { v: 1 }], deletions: vec![3] };
    let json = cert.to_json();
    assert_eq!(json, r#"{"gamma":"2/3","events":[{"op":"delete","v":3},{"op":"collect","v":1}],"deletions":[3]}"#);
    assert_eq!(ExtractionCertificate::from_json(&json).unwrap(), cert);
    assert!(ExtractionCertificate::from_json(r#"{"gamma":"1/0","events":[],"deletions":[]}"#).is_err());
    assert!(ExtractionCertificate::from_json(r#"{"gamma":"1","events":[{"op":"erase","v":1}],"deletions":[]}"#).is_err());
}

#[test]
fn tampered_certificates_fail() {
    let ico = named("icosahedron").unwrap().graph;
    let cert = extract(&ico).unwrap();
    let delete_at = cert.events.iter().position(|e| matches!(e, Event::Delete { .. })).unwrap();
    assert_eq!(delete_at, 0);

    // A collect moved ahead of the deletion that enables it.
    let mut moved = cert.clone();
    let first = moved.events.remove(1);
    moved.events.insert(0, first);
    assert!(matches!(verify_certificate(&ico, &moved), Err(CertificateError::IllegalCollect { position: 0, degree: 5, .. })));

    // One extra deletion breaks the budget of Γ = 1.
    let mut greedy = cert.clone();
    let v = greedy.events[1].vertex();
    greedy.events[1] = Event::Delete { v };
    greedy.deletions.push(v);
    assert!(matches!(verify_certificate(&ico, &greedy), Err(CertificateError::OverBudget { deletions: 2, .. })));

    let mut unknown = cert.clone();
    unknown.events.push(Event::Collect { v: 99 });
    assert!(matches!(verify_certificate(&ico, &unknown), Err(CertificateError::UnknownVertex { position: 12, .. })));

    let mut twice = cert.clone();
    twice.events.push(Event::Collect { v: 5 });
    assert!(matches!(verify_certificate(&ico, &twice), Err(CertificateError::DoubleEvent { position: 12, .. })));

    let mut short = cert.clone();
    short.events.pop();
    assert!(matches!(verify_certificate(&ico, &short), Err(CertificateError::Incomplete { remaining: 1 })));

    let mut list = cert.clone();
    list.deletions.clear();
    assert_eq!(verify_certificate(&ico, &list), Err(CertificateError::DeletionMismatch));

    let mut claim = cert;
    claim.gamma = r(2, 1);
    assert!(matches!(verify_certificate(&ico, &claim), Err(CertificateError::GammaMismatch { .. })));
}

#[test]
fn audit_fixtures() {
    // (fixture, b, Σe, ΔΦ, ΔΓ), all exact for these hosts.
    let cases = [
        (fixtures::deg8_eight_fives(), [8, 0, 0, 1, 0, 0], 16, 19, r(23, 18)),
        (fixtures::deg8_six_fives(), [6, 0, 0, 1, 0, 0], 11, 19, r(10, 9)),
        (fixtures::deg8_four_fives(), [4, 3, 0, 1, 0, 0], 13, 26, r(25, 18)),
        (fixtures::deg7_five_fives(), [5, 1, 1, 0, 0, 0], 11, 19, r(10, 9)),
        (fixtures::deg7_three_fives(), [3, 3, 1, 0, 0, 0], 11, 23, r(11, 9)),
    ];
    for (f, b, sigma_e, delta_phi, delta_gamma) in cases {
        let step = fixture_step(&f);
        let audit = audit_reduction(&f.eg.graph, &step).unwrap();
        assert_eq!(audit.b, b);
        assert_eq!(audit.sigma_e, sigma_e);
        assert_eq!(audit.delta_phi, delta_phi);
        assert_eq!(audit.delta_phi_bound, delta_phi);
        assert_eq!(audit.delta_tc, 0);
        assert!(audit.tc_rule_applies);
        assert_eq!(audit.delta_gamma, delta_gamma);
        assert_eq!(step.delta_gamma(), delta_gamma);
    }
}

#[test]
fn audit_counts_tree_components_exactly() {
    // Path 0-1-2-3-4: deleting 1 leaves the trees {0} and {2,3,4}.
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let step = ReductionStep { deleted: 1, collected: vec![], gamma_before: gamma(&g), gamma_after: r(0, 1) };
    let audit = audit_reduction(&g, &step).unwrap();
    assert_eq!(audit.delta_tc, -1);
    assert!(!audit.tc_rule_applies);
    assert_eq!(audit.delta_vertices, 1);
}

#[test]
fn audit_rejects_illegal_replay() {
    let f = fixtures::deg8_six_fives();
    let mut step = fixture_step(&f);
    step.collected.insert(0, f.eg.graph.vertices().find(|&v| f.eg.graph.degree(v) >= 6 && v != f.deleted).unwrap());
    assert!(matches!(audit_reduction(&f.eg.graph, &step), Err(AuditError::Replay { position: 1, .. })));
}

#[test]
fn extraction_stays_within_budget_on_triangulations() {
    for (n, seed) in [(40, 1), (120, 2), (300, 3)] {
        let eg = random_triangulation(n, seed, 3).unwrap();
        let g = &eg.graph;
        let report = extract_with_report(g).unwrap();
        let cert = &report.certificate;
        verify_certificate(g, cert).unwrap();
        assert!(Rational64::from_integer(cert.deletions.len() as i64) <= gamma(g));
        for step in &report.steps {
            assert!(step.collected.len() >= 6);
            assert!(step.delta_gamma() >= r(1, 1));
        }
        // Collected fraction at least (38 - d)/36 with d the average degree.
        let d = g.average_degree().unwrap();
        let fraction = Rational64::new(report.collected() as i64, n as i64);
        assert!(fraction >= (Rational64::from_integer(38) - d) / 36);
    }
}

fn min_degree_five(n: usize, seed: u64) -> Option<Graph> {
    random_triangulation(n, seed, 5).ok().map(|eg| eg.graph)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn local_closure_matches_full_closure(n in 20usize..80, seed in 0u64..1000, pick in 0usize..1000) {
        if let Some(g) = min_degree_five(n, seed) {
            let w = pick % g.vertex_count();
            let full = collect_closure(&g.delete_vertex(w).unwrap(), COLLECT_DEGREE).order;
            prop_assert_eq!(closure_after_delete(&g, w), full);
        }
    }

    #[test]
    fn reductions_lower_gamma_by_the_exact_amount(n in 20usize..80, seed in 0u64..1000) {
        if let Some(g) = min_degree_five(n, seed) {
            let (step, _) = find_reduction(&g, &[]).unwrap();
            let mut after = g.delete_vertex(step.deleted).unwrap();
            let rest = collect_closure(&after, COLLECT_DEGREE);
            prop_assert_eq!(&rest.order, &step.collected);
            after = rest.remainder;
            prop_assert_eq!(step.gamma_after, gamma(&after));
            prop_assert!(step.delta_gamma() >= r(1, 1));
            let audit = audit_reduction(&g, &step).unwrap();
            prop_assert_eq!(audit.delta_gamma, step.delta_gamma());
        }
    }

    #[test]
    fn certificates_round_trip(n in 8usize..150, seed in 0u64..1000) {
        let g = random_triangulation(n, seed, 3).unwrap().graph;
        let cert = extract(&g).unwrap();
        let parsed = ExtractionCertificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&parsed, &cert);
        prop_assert!(verify_certificate(&g, &parsed).is_ok());
    }

    #[test]
    fn arbitrary_certificates_are_rejected_without_panicking(
        gamma in (-5i64..40, 1i64..5),
        events in proptest::collection::vec((any::<bool>(), 0usize..16), 0..16),
        deletions in proptest::collection::vec(0usize..16, 0..4),
    ) {
        let events: Vec<String> = events
            .iter()
            .map(|&(delete, v)| format!(r#"{{"op":"{}","v":{v}}}"#, if delete { "delete" } else { "collect" }))
            .collect();
        let json = format!(r#"{{"gamma":"{}/{}","events":[{}],"deletions":{:?}}}"#, gamma.0, gamma.1, events.join(","), deletions);
        let cert = ExtractionCertificate::from_json(&json).unwrap();
        let ico = named("icosahedron").unwrap().graph;
        if let Ok(report) = verify_certificate(&ico, &cert) {
            prop_assert_eq!(report.deletions + report.collected, 12);
        }
    }
}
