//! Property tests pitting the sparse simulator kernels against the dense
//! matrix route, which never share code.

use num_complex::Complex64;
use proptest::prelude::*;

use qae_core::sim::run_statevector;
use qae_core::unitary::circuit_unitary;
use qae_core::{Circuit, GateInstance};

fn arb_gate(width: usize) -> impl Strategy<Value = GateInstance> {
    let angle = -core::f64::consts::PI..core::f64::consts::PI;
    let q = 0..width;
    let pair = (0..width, 0..width - 1).prop_map(move |(a, d)| {
        let b = (a + 1 + d) % width;
        (a, b)
    });
    prop_oneof![
        q.clone().prop_map(GateInstance::h),
        q.clone().prop_map(GateInstance::x),
        q.clone().prop_map(GateInstance::sx),
        (angle.clone(), q.clone()).prop_map(|(a, q)| GateInstance::rz(a, q)),
        (angle.clone(), q.clone()).prop_map(|(a, q)| GateInstance::rx(a, q)),
        (angle.clone(), q.clone()).prop_map(|(a, q)| GateInstance::ry(a, q)),
        (angle.clone(), angle.clone(), angle.clone(), q)
            .prop_map(|(t, p, l, q)| GateInstance::u(t, p, l, q)),
        pair.clone().prop_map(|(a, b)| GateInstance::cx(a, b)),
        (angle.clone(), pair.clone()).prop_map(|(t, (a, b))| GateInstance::cry(t, a, b)),
        (angle.clone(), pair.clone()).prop_map(|(t, (a, b))| GateInstance::cp(t, a, b)),
        (angle, pair.clone()).prop_map(|(t, (a, b))| GateInstance::rxx(t, a, b)),
        pair.prop_map(|(a, b)| GateInstance::swap(a, b)),
    ]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|width| {
        prop::collection::vec(arb_gate(width), 0..30).prop_map(move |gates| {
            let mut c = Circuit::new(width, 0);
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulator_matches_matrix_column(c in arb_circuit()) {
        let state = run_statevector(&c).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let mut basis = vec![Complex64::ZERO; 1 << c.width()];
        basis[0] = Complex64::ONE;
        let expected = u.mul_vec(&basis);
        for (a, b) in state.amplitudes().iter().zip(&expected) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn normalization_survives_every_gate(c in arb_circuit()) {
        let mut state = qae_core::sim::StateVector::zero_state(c.width());
        for g in c.gates() {
            state.apply(g);
            prop_assert!((state.norm_sqr() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn every_circuit_unitary_is_unitary(c in arb_circuit()) {
        let u = circuit_unitary(&c).unwrap();
        prop_assert!(u.is_unitary(1e-10));
    }
}
