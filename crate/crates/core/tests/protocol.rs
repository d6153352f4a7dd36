mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use telecanon_core::bases::{build_basis_form1, build_basis_form2};
use telecanon_core::channels::{build_form1, build_form2};
use telecanon_core::extractor::{classify, extract_operators};
use telecanon_core::protocol::{haar_qubit, Teleporter};
use telecanon_core::Execution;

fn teleporters(seed: u64, n: usize) -> Vec<Teleporter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..n {
        let p = random_params1(&mut rng);
        let (ch, basis) = (build_form1(&p).unwrap(), build_basis_form1(&p).unwrap());
        let v = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
        out.push(Teleporter::new(&ch, &basis, v).unwrap());
        let p = random_params2(&mut rng);
        let (ch, basis) = (build_form2(&p).unwrap(), build_basis_form2(&p).unwrap());
        let v = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
        out.push(Teleporter::new(&ch, &basis, v).unwrap());
    }
    out
}

#[test]
fn every_sampled_outcome_restores_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for t in teleporters(1, 20) {
        let input = haar_qubit(&mut rng);
        for trace in t.run_shots(&input, 50, 9, Execution::Sequential).unwrap() {
            assert!(trace.fidelity >= 1.0 - 1e-10);
            assert_eq!(trace.outcome.bit_width, 2);
            assert!(trace.outcome.outcome_index <= 4);
            let premeasure_norm: f64 = trace
                .bob_premeasure
                .iter()
                .map(|z| z.re * z.re + z.im * z.im)
                .sum();
            // ‖½σχ‖² = ¼ for unitary σ, and equals the outcome probability
            assert!((premeasure_norm - trace.probability).abs() < 1e-12);
        }
    }
}

#[test]
fn zero_outcomes_have_zero_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for t in teleporters(2, 20) {
        let input = haar_qubit(&mut rng);
        let p = t.distribution(&input).unwrap();
        for &i in &t.verdict().zero_indices {
            assert!(p[i - 1] < 1e-20);
        }
        let counts = t
            .outcome_counts(&input, 2000, 5, Execution::Parallel)
            .unwrap();
        assert!(counts[4..].iter().all(|&c| c == 0));
    }
}

#[test]
fn batch_is_execution_independent() {
    for t in teleporters(3, 3) {
        let a = t.batch_fidelity(500, 42, Execution::Sequential).unwrap();
        let b = t.batch_fidelity(500, 42, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.min_fidelity >= 1.0 - 1e-10);
        assert!(a.mean_fidelity <= 1.0 + 1e-12);
    }
}
