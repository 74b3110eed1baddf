use forbid_core::*;

#[test]
fn graph6_and_edge_list_round_trip() {
    for g in [
        Graph::petersen(),
        Graph::cycle(70),
        Graph::new(0),
        Graph::star(5).complement(),
    ] {
        assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}

#[test]
fn serialized_artifacts_round_trip() {
    let sys = sample_partition_system(8, 4, 3, 10_000, Thresholds::relaxed(8, 4)).unwrap();
    let back: PartitionSystem = serde_json::from_str(&serde_json::to_string(&sys).unwrap()).unwrap();
    assert_eq!(back, sys);
    let pat = make_l_pattern(3);
    let back: LPattern = serde_json::from_str(&serde_json::to_string(&pat).unwrap()).unwrap();
    assert_eq!(back, pat);
    let (_, log) = build_eps_graph(&sys, 2).unwrap();
    let back: BuildLog = serde_json::from_str(&serde_json::to_string(&log).unwrap()).unwrap();
    assert_eq!(back, log);
}

#[test]
fn certificates_are_witnessed() {
    let pat = make_l_pattern(2);
    let g = forbid_core::constructions::sample_jumble_graph(&pat, 5);
    for cert in certify_jumble(&g, &pat, 1_000_000).unwrap() {
        if cert.status == Status::Refuted {
            assert!(cert.witness.is_some(), "{}", cert.claim);
        }
    }
    let c5 = Graph::cycle(5);
    let certs = certify_ars(&c5, 2, None, 1_000_000).unwrap();
    assert_eq!(certs.len(), 4);
    assert_eq!(bundle_status(&certs), Status::Refuted);
}

#[test]
fn budgets_turn_into_unknown() {
    let g = Graph::cycle(11);
    let pattern = Pattern::new(vec![PartConstraint::Stable, PartConstraint::Clique]);
    assert_eq!(pattern_partition(&g, &pattern, false, 2).exists(), None);
    assert_eq!(pattern_partition(&g, &pattern, false, u64::MAX).exists(), Some(false));
}
