//! Random-case generators for the oracle comparisons.

use rand::prelude::*;

use voidgauge::synth::CountSpec;

/// A 2x2 table with every cell at least 1 and total at most `max_n`.
/// Cells are shuffled so no corner is systematically the big one.
pub fn random_table(rng: &mut impl Rng, max_n: u64) -> (u64, u64, u64, u64) {
    assert!(max_n >= 4);
    let n = rng.gen_range(4..=max_n);
    let mut cells = [0u64; 4];
    cells[0] = rng.gen_range(1..=n - 3);
    cells[1] = rng.gen_range(1..=n - cells[0] - 2);
    cells[2] = rng.gen_range(1..=n - cells[0] - cells[1] - 1);
    cells[3] = n - cells[0] - cells[1] - cells[2];
    cells.shuffle(rng);
    (cells[0], cells[1], cells[2], cells[3])
}

/// A feasible count spec whose five analysis denominators are all nonzero,
/// so every indicator is computable.
pub fn random_feasible_spec(rng: &mut impl Rng, max_total: u32) -> CountSpec {
    assert!(max_total >= 8);
    let total_n = rng.gen_range(8..=max_total);
    let capacity_gate = rng.gen_range(1..=total_n);
    let capacity_fully_allow = rng.gen_range(0..=capacity_gate);
    let high_control = rng.gen_range(1..=total_n);
    let high_contribution = rng.gen_range(1..=high_control);
    let discipline_challenge = rng.gen_range(0..=high_contribution);
    let ontology_gate = rng.gen_range(1..=total_n);
    let metacognition = rng.gen_range(1..=ontology_gate);
    let gated_immaterial = rng.gen_range(0..=metacognition);
    let ungated = ontology_gate - metacognition;
    let ungated_immaterial = rng.gen_range(0..=ungated);
    CountSpec {
        total_n,
        capacity_gate,
        capacity_fully_allow,
        high_control,
        high_contribution,
        discipline_challenge,
        ontology_gate,
        metacognition,
        gated_immaterial,
        gated_other: metacognition - gated_immaterial,
        ungated_immaterial,
        ungated_other: ungated - ungated_immaterial,
    }
}
