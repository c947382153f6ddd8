use lad_bench::{gaussian_around, gaussian_mu, linear_around, small_experiment};
use lad_core::experiment::{run_experiment, Problem};

#[test]
fn fixtures_are_centred_on_the_prediction() {
    let (range, w) = linear_around(20.0, 0.5);
    assert_eq!((range.lower(), range.upper()), (10.0, 30.0));
    assert_eq!(w.eval(20.0), 1.0);
    let (_, g) = gaussian_around(20.0, 0.5);
    assert!(g.eval(20.0) > g.eval(25.0));
    assert_eq!(gaussian_mu(20.0, 0.5).center, 20.0);
}

#[test]
fn small_experiments_run() {
    let report = run_experiment(&small_experiment(Problem::Ski, 4)).unwrap();
    assert_eq!(report.repetitions, 4);
    assert_eq!(report.rows.len(), 8);
}
