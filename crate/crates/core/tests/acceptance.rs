//! The acceptance gate: runs every verification suite once at full budget
//! and prints one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use sumcrit_core::harness;

#[test]
fn acceptance_criteria() {
    let seed = 42;
    let outcomes = vec![
        ("01 simplex count law", harness::simplex_count_law()),
        ("02 closed-form oracle", harness::simplex_sum_oracle(seed, 200)),
        ("03 bound soundness", harness::bound_soundness(seed, 500)),
        ("04 refined bound soundness", harness::refined_bound_soundness(seed, 500)),
        ("05 h-vector consistency", harness::hvector_consistency(seed, 100)),
        ("06 stackedness agreement", harness::stackedness_agreement(seed, 100)),
        ("07 total stackability", harness::total_stackability_suite()),
        ("08 2-D classifier census", harness::census_2d(100_000)),
        ("09 family k-independence", harness::family_k_independence()),
        ("10 monotonicity closure", harness::monotonicity_closure(seed)),
        ("11 |kA| equivalence", harness::corollary_ka_suite()),
        ("12 dimension-one exhaustive", harness::dim1_exhaustive()),
    ];
    let mut failed = 0usize;
    for (label, o) in &outcomes {
        let status = if o.passed() { "pass" } else { "fail" };
        let notes = if o.notes.is_empty() {
            String::new()
        } else {
            format!(" ({})", o.notes.join("; "))
        };
        println!("{status}: {label} — {} instances, {} violations{notes}", o.instances, o.violations.len());
        if !o.passed() {
            failed += 1;
            for v in o.violations.iter().take(5) {
                println!("    {v}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
