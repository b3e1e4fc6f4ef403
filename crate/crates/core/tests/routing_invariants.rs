//! Routing correctness: edge validity, semantic preservation under the
//! layout permutations, oracle agreement at toy sizes, and the published
//! device walkthroughs.

use qae_core::qae::{build_qae, QaeProblem};
use qae_core::route::{
    brute_force_route, builtin_coupling_map, route, routed_two_qubit_count, CouplingMap,
};
use qae_core::transpile::NativeGateSet;
use qae_core::unitary::{circuit_unitary, equivalent_up_to_global_phase, permutation_unitary};
use qae_core::{Circuit, GateInstance};

fn line(n: usize) -> CouplingMap {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    CouplingMap::new("line", n, &edges).unwrap()
}

fn dense_circuit(width: usize) -> Circuit {
    let mut c = Circuit::new(width, 0);
    let mut angle = 0.3;
    for a in 0..width {
        c.push(GateInstance::h(a)).unwrap();
        for b in (a + 1)..width {
            c.push(GateInstance::cry(angle, a, b)).unwrap();
            angle += 0.4;
        }
    }
    for a in (1..width).rev() {
        c.push(GateInstance::cp(angle, a, a - 1)).unwrap();
        angle += 0.25;
    }
    c
}

#[test]
fn routed_two_qubit_gates_sit_on_device_edges() {
    let cases: Vec<(Circuit, CouplingMap)> = vec![
        (
            build_qae(&QaeProblem::new(0.2, 3).unwrap()),
            builtin_coupling_map("yorktown").unwrap(),
        ),
        (
            build_qae(&QaeProblem::new(0.2, 5).unwrap()),
            builtin_coupling_map("tokyo").unwrap(),
        ),
        (dense_circuit(4), line(5)),
    ];
    for (circuit, device) in cases {
        let routed = route(&circuit, &device, 21, 8).unwrap();
        for g in routed.circuit.gates() {
            if g.kind.is_two_qubit() {
                assert!(
                    device.has_edge(g.qubits[0], g.qubits[1]),
                    "({}, {}) not an edge of {}",
                    g.qubits[0],
                    g.qubits[1],
                    device.name()
                );
            }
        }
    }
}

/// Undoing the final layout and pre-applying the initial one recovers the
/// original unitary exactly (up to global phase).
#[test]
fn routing_preserves_semantics() {
    let cases: Vec<(Circuit, CouplingMap)> = vec![
        (dense_circuit(4), builtin_coupling_map("yorktown").unwrap()),
        (dense_circuit(4), line(4)),
        (dense_circuit(3), line(5)),
        (
            build_qae(&QaeProblem::new(0.35, 3).unwrap()).without_measurements(),
            builtin_coupling_map("yorktown").unwrap(),
        ),
    ];
    for (circuit, device) in cases {
        let routed = route(&circuit, &device, 5, 4).unwrap();
        let mut extended = Circuit::new(device.qubit_count(), circuit.classical_width());
        extended.append(&circuit).unwrap();
        let reference = circuit_unitary(&extended).unwrap();

        let u_routed = circuit_unitary(&routed.circuit.without_measurements()).unwrap();
        let p_init = permutation_unitary(routed.initial_layout.as_slice());
        let p_final = permutation_unitary(routed.final_layout.as_slice());
        let recovered = p_final.dagger().mul(&u_routed).mul(&p_init);
        assert!(
            equivalent_up_to_global_phase(&recovered, &reference, 1e-10).unwrap(),
            "semantics broken on {}",
            device.name()
        );
    }
}

/// Best-of-64 heuristic routing lands within one SWAP of the exhaustive
/// optimum on every toy instance, and matches it on the bow-tie walkthrough.
#[test]
fn heuristic_tracks_the_oracle() {
    let yorktown = builtin_coupling_map("yorktown").unwrap();
    let qae3 = build_qae(&QaeProblem::new(0.2, 3).unwrap());
    let cases: Vec<(Circuit, CouplingMap)> = vec![
        (qae3.clone(), yorktown.clone()),
        (build_qae(&QaeProblem::new(0.7, 2).unwrap()), line(3)),
        (dense_circuit(4), line(4)),
        (dense_circuit(4), yorktown.clone()),
        (dense_circuit(3), line(5)),
        (dense_circuit(4), CouplingMap::complete(4)),
    ];
    for (circuit, device) in cases {
        let optimal = brute_force_route(&circuit, &device).unwrap();
        let routed = route(&circuit, &device, 1234, 64).unwrap();
        assert!(
            routed.swap_count <= optimal + 1,
            "{}: heuristic {} vs oracle {optimal}",
            device.name(),
            routed.swap_count
        );
    }
    let optimal = brute_force_route(&qae3, &yorktown).unwrap();
    let routed = route(&qae3, &yorktown, 1234, 64).unwrap();
    assert_eq!(optimal, 1);
    assert_eq!(routed.swap_count, optimal);
}

#[test]
fn yorktown_walkthrough_totals() {
    let qae3 = build_qae(&QaeProblem::new(0.2, 3).unwrap());
    let device = builtin_coupling_map("yorktown").unwrap();
    let routed = route(&qae3, &device, 7, 64).unwrap();
    assert_eq!(routed.swap_count, 1);
    assert_eq!(
        routed_two_qubit_count(&routed, &NativeGateSet::superconducting()),
        15
    );
}

#[test]
fn tokyo_quartet_hosts_three_evaluation_qubits_for_free() {
    let device = builtin_coupling_map("tokyo").unwrap();
    let qae3 = build_qae(&QaeProblem::new(0.2, 3).unwrap());
    let routed = route(&qae3, &device, 7, 64).unwrap();
    assert_eq!(routed.swap_count, 0);
    assert_eq!(
        routed_two_qubit_count(&routed, &NativeGateSet::superconducting()),
        12
    );

    let qae4 = build_qae(&QaeProblem::new(0.2, 4).unwrap());
    let routed = route(&qae4, &device, 7, 64).unwrap();
    assert_eq!(routed.swap_count, 1);
    assert_eq!(
        routed_two_qubit_count(&routed, &NativeGateSet::superconducting()),
        23
    );
}

/// The n=4 estimation circuit interacts every pair of its five qubits, so a
/// 0-SWAP placement would need a 5-clique; Tokyo has none, making one SWAP
/// (total 23) optimal there.
#[test]
fn tokyo_has_no_five_clique() {
    let device = builtin_coupling_map("tokyo").unwrap();
    let n = device.qubit_count();
    for a in 0..n {
        for b in (a + 1)..n {
            if !device.has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..n {
                if !(device.has_edge(a, c) && device.has_edge(b, c)) {
                    continue;
                }
                for d in (c + 1)..n {
                    if !(device.has_edge(a, d) && device.has_edge(b, d) && device.has_edge(c, d)) {
                        continue;
                    }
                    for e in (d + 1)..n {
                        assert!(
                            !(device.has_edge(a, e)
                                && device.has_edge(b, e)
                                && device.has_edge(c, e)
                                && device.has_edge(d, e)),
                            "unexpected 5-clique {{{a},{b},{c},{d},{e}}}"
                        );
                    }
                }
            }
        }
    }
}

/// The ion-trap target needs no routing; counting the unrouted circuit after
/// ion-trap lowering gives the all-to-all figure.
#[test]
fn ion_target_count_of_unrouted_circuit() {
    let qae3 = build_qae(&QaeProblem::new(0.2, 3).unwrap());
    let ion = NativeGateSet::iontrap();
    let lowered = qae_core::transpile::transpile(&qae3, &ion);
    assert_eq!(lowered.count_two_qubit_gates(), 9);
}

#[test]
fn measurements_follow_their_qubit() {
    let qae3 = build_qae(&QaeProblem::new(0.2, 3).unwrap());
    let device = builtin_coupling_map("yorktown").unwrap();
    let routed = route(&qae3, &device, 7, 64).unwrap();
    let measures: Vec<&GateInstance> = routed
        .circuit
        .gates()
        .iter()
        .filter(|g| g.kind == qae_core::GateKind::Measure)
        .collect();
    assert_eq!(measures.len(), 3);
    for m in measures {
        // Evaluation qubit k (classical bit k) must sit where the final
        // layout says logical k ended up.
        let logical = m.cbit.unwrap();
        assert_eq!(m.qubits[0], routed.final_layout.physical(logical));
    }
}
