use braidforge::suite::{run_criterion, CriterionReport};

fn check(number: u8) {
    let report: CriterionReport = run_criterion(number).expect("known criterion");
    println!("\n{report}");
    for f in &report.failures {
        println!("    {f}");
    }
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_1_presentation_relations() {
    check(1);
}

#[test]
fn criterion_2_alternative_relations() {
    check(2);
}

#[test]
fn criterion_3_pure_relations_reproduced() {
    check(3);
}

#[test]
fn criterion_4_conjugation_identities() {
    check(4);
}

#[test]
fn criterion_5_action_coherence() {
    check(5);
}

#[test]
fn criterion_6_normal_form_round_trip() {
    check(6);
}

#[test]
fn criterion_7_normal_form_stability() {
    check(7);
}

#[test]
fn criterion_8_schreier_system() {
    check(8);
}
