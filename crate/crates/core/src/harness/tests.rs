use super::*;

fn main_suite(space: &FiniteSpace) -> SuiteReport {
    run_axiom_suite(space, &UniverseSpec::default_for(space), &Axiom::MAIN, &SuiteOptions::default())
}

#[test]
fn example1_regression_passes() {
    let report = example1_regression();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(report.universe.size, 12);
    for g in ["a", "b", "c", "d"] {
        assert!(report.checks.iter().any(|c| c.group == g));
    }
    let a = &report.checks[0];
    assert_eq!(a.tv, vec!["s"]);
}

#[test]
fn one_point_space_passes_everything() {
    let space = FiniteSpace::discrete(1);
    let r = run_axiom_suite(&space, &UniverseSpec::default_for(&space), &Axiom::ALL, &SuiteOptions::default());
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn sierpinski_main_axioms_pass_and_full_separation_fails() {
    let space = FiniteSpace::sierpinski();
    let r = main_suite(&space);
    assert!(r.passed(), "{}", r.render_text());
    let full = run_axiom_suite(&space, &UniverseSpec::default_for(&space), &[Axiom::FullSeparation], &SuiteOptions::default());
    assert!(!full.passed());
}

#[test]
fn discrete_two_points_pass_full_separation() {
    let space = FiniteSpace::discrete(2);
    let r = run_axiom_suite(&space, &UniverseSpec::default_for(&space), &Axiom::ALL, &SuiteOptions::default());
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn reports_are_deterministic() {
    let space = FiniteSpace::sierpinski();
    let a = serde_json::to_string(&main_suite(&space)).unwrap();
    let b = serde_json::to_string(&main_suite(&space)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_on_two_points() {
    let table = correlation_sweep(2, &UniverseConfig::default()).unwrap();
    assert_eq!(table.rows.len(), 4);
    assert!(table.passed(), "{}", table.render_text());
    let ex1 = table.rows.iter().find(|r| r.space == "{a,b}:{},{a,b},{b}").unwrap();
    assert!(!ex1.locally_homogeneous && !ex1.full_separation);
}

#[test]
fn axiom_names_round_trip() {
    for a in Axiom::ALL {
        assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
    }
    assert_eq!("Bounded_Separation".parse::<Axiom>().unwrap(), Axiom::BoundedSeparation);
    assert!("infinity".parse::<Axiom>().is_err());
}

#[test]
fn timings_are_opt_in() {
    let space = FiniteSpace::discrete(1);
    let spec = UniverseSpec::default_for(&space);
    let plain = run_axiom_suite(&space, &spec, &[Axiom::Pairing], &SuiteOptions::default());
    assert!(plain.checks.iter().all(|c| c.elapsed_ms.is_none()));
    let timed = run_axiom_suite(&space, &spec, &[Axiom::Pairing], &SuiteOptions { timings: true });
    assert!(timed.checks.iter().all(|c| c.elapsed_ms.is_some()));
}
