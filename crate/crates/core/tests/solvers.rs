mod common;

use itsketch::embed::{measure_distortion, range_basis, SparseSignEmbedding};
use itsketch::linalg::{householder_qr_econ, qr_solve, tri_solve_upper, tri_solve_upper_transpose};
use itsketch::linalg::vecops::{dist2, norm2};
use itsketch::metrics::forward_error;
use itsketch::problems::gen_randsvd;
use itsketch::solvers::*;
use itsketch::{DenseMatrix, Operator};

#[test]
fn sketch_and_solve_preserves_consistent_systems() {
    let p = gen_randsvd(600, 15, 1e3, 0.0, 1).unwrap();
    let a = p.a.as_dense().unwrap();
    let s = SparseSignEmbedding::new(300, 600, 8, 2).unwrap();
    let (x0, qr) = sketch_and_solve(a, &p.b, &s).unwrap();
    assert!(norm2(&a.residual(&p.b, &x0)) <= 1e-12 * norm2(&p.b));
    assert!(qr.r.is_upper_triangular());
}

#[test]
fn sketch_and_solve_bounds_on_a_few_seeds() {
    for seed in 0..5 {
        let p = gen_randsvd(800, 20, 1e3, 1e-2, seed).unwrap();
        let a = p.a.as_dense().unwrap();
        let t = p.truth.as_ref().unwrap();
        let s = SparseSignEmbedding::new(400, 800, 8, 10 + seed).unwrap();
        let q = range_basis(&a.hstack(&DenseMatrix::from_column(&p.b).unwrap()).unwrap()).unwrap();
        let eps = measure_distortion(&s, &q).unwrap().epsilon;
        let (x0, _) = sketch_and_solve(a, &p.b, &s).unwrap();
        let r0 = norm2(&a.residual(&p.b, &x0));
        assert!(r0 <= (1.0 + eps) / (1.0 - eps) * t.beta * (1.0 + 1e-8));
        let bound = 2.0 * eps.sqrt() / (1.0 - eps) * t.kappa * t.beta;
        assert!(dist2(&t.x, &x0) <= bound * (1.0 + 1e-8));
    }
}

#[test]
fn consistent_system_stops_immediately() {
    let p = gen_randsvd(1000, 20, 1e2, 0.0, 3).unwrap();
    let a = p.a.as_dense().unwrap();
    let meter = p.meter(false).unwrap().unwrap();
    let res = iterative_sketching(a, &p.b, &SolverConfig::new(400).seed(4), Some(&meter)).unwrap();
    assert!(res.trace.records[0].errors.unwrap().fe <= 1e-12);
    assert_eq!(res.trace.stop_reason, StopReason::StoppingRule);
    assert!(res.iterations <= 5, "{}", res.iterations);
    assert!(res.trace.last().errors.unwrap().fe <= 1e-12);
}

#[test]
fn early_iterations_contract_at_the_predicted_rate() {
    let p = gen_randsvd(2000, 30, 10.0, 1e-2, 5).unwrap();
    let a = p.a.as_dense().unwrap();
    let cfg = SolverConfig::new(600).seed(6).fixed_iterations(8);
    let sketch = Sketch::new(a, &p.b, &cfg).unwrap();
    let q = range_basis(&a.hstack(&DenseMatrix::from_column(&p.b).unwrap()).unwrap()).unwrap();
    let eps = measure_distortion(&sketch.embedding, &q).unwrap().epsilon;
    let meter = p.meter(false).unwrap().unwrap();
    let res = iterative_sketching_with(a, &p.b, &sketch, &cfg, Some(&meter)).unwrap();
    let re = res.trace.residual_errors();
    let g = rate_g_is(eps).unwrap();
    for w in re.windows(2) {
        assert!(w[1] / w[0] <= g + 0.05, "{} > {}", w[1] / w[0], g + 0.05);
    }
}

#[test]
fn basic_update_adds_exactly_the_correction() {
    let p = gen_randsvd(500, 12, 1e4, 1e-4, 7).unwrap();
    let a = p.a.as_dense().unwrap();
    let cfg = SolverConfig::new(240).seed(8).fixed_iterations(6);
    let sketch = Sketch::new(a, &p.b, &cfg).unwrap();
    let res = iterative_sketching_with(a, &p.b, &sketch, &cfg, None).unwrap();
    let r = &sketch.qr.r;
    for w in res.trace.records.windows(2) {
        let xi = w[0].x.as_ref().unwrap();
        let ri = a.residual(&p.b, xi);
        assert_eq!(&ri, w[0].residual.as_ref().unwrap());
        let d = tri_solve_upper(r, &tri_solve_upper_transpose(r, &a.tmul_vec(&ri)).unwrap()).unwrap();
        let next: Vec<f64> = xi.iter().zip(&d).map(|(x, d)| x + d).collect();
        let got = w[1].x.as_ref().unwrap();
        assert!(next.iter().zip(got).all(|(p, q)| p.to_bits() == q.to_bits()));
    }
}

#[test]
fn solves_are_deterministic() {
    let p = gen_randsvd(700, 10, 1e6, 1e-5, 9).unwrap();
    let a = p.a.as_dense().unwrap();
    let meter = p.meter(true).unwrap().unwrap();
    for v in [Variant::Basic, Variant::Damped, Variant::Momentum] {
        let cfg = SolverConfig::new(200).seed(3).variant(v);
        let r1 = iterative_sketching(a, &p.b, &cfg, Some(&meter)).unwrap();
        let r2 = iterative_sketching(a, &p.b, &cfg, Some(&meter)).unwrap();
        assert_eq!(r1, r2);
    }
    let cfg = SolverConfig::new(200).seed(3).max_iters(30);
    let s1 = sketch_and_precondition(a, &p.b, &cfg, None).unwrap();
    let s2 = sketch_and_precondition(a, &p.b, &cfg, None).unwrap();
    assert_eq!(s1, s2);
}

#[test]
fn plateau_is_stable_after_the_rule_fires() {
    for (kappa, beta) in [(1e1, 1e-12), (1e1, 1e-3), (1e10, 1e-12), (1e10, 1e-3)] {
        let p = gen_randsvd(4000, 50, kappa, beta, 11).unwrap();
        let a = p.a.as_dense().unwrap();
        let meter = p.meter(false).unwrap().unwrap();
        let cfg = SolverConfig::new(1000).seed(12).max_iters(200);
        let stop = iterative_sketching(a, &p.b, &cfg, Some(&meter)).unwrap();
        let more = iterative_sketching(a, &p.b, &cfg.clone().extra_iterations(3), Some(&meter)).unwrap();
        assert_eq!(stop.trace.stop_reason, StopReason::StoppingRule);
        assert_eq!(more.iterations, stop.iterations + 3);
        let fe0 = stop.trace.last().errors.unwrap().fe;
        let fe1 = more.trace.last().errors.unwrap().fe;
        assert!(fe1 <= 10.0 * fe0 && fe0 <= 10.0 * fe1, "{fe0} vs {fe1}");
    }
}

#[test]
fn residual_error_stays_below_the_exact_arithmetic_bound() {
    for seed in 0..3 {
        let p = gen_randsvd(2000, 20, 1e2, 1e-2, seed).unwrap();
        let a = p.a.as_dense().unwrap();
        let t = p.truth.as_ref().unwrap();
        let cfg = SolverConfig::new(600).seed(seed + 20).fixed_iterations(8);
        let sketch = Sketch::new(a, &p.b, &cfg).unwrap();
        let q = range_basis(&a.hstack(&DenseMatrix::from_column(&p.b).unwrap()).unwrap()).unwrap();
        let eps = measure_distortion(&sketch.embedding, &q).unwrap().epsilon;
        assert!(eps < 0.29);
        let res = iterative_sketching_with(a, &p.b, &sketch, &cfg, None).unwrap();
        let curve = theoretical_bound_curve(Variant::Basic, eps, t.kappa, 1.0, t.beta, 8).unwrap();
        for (rec, b) in res.trace.records.iter().zip(&curve) {
            let err = dist2(&t.r, rec.residual.as_ref().unwrap());
            assert!(err <= b.re + 1e-10, "iter {}: {err} > {}", b.iter, b.re);
        }
    }
}

#[test]
fn lsqr_with_exact_preconditioner_is_fast() {
    for (seed, kappa) in [(0, 1e2), (1, 1e4), (2, 1e6)] {
        let p = gen_randsvd(300, 15, kappa, 1e-3, seed).unwrap();
        let a = p.a.as_dense().unwrap();
        let t = p.truth.as_ref().unwrap();
        let r = householder_qr_econ(a).unwrap().r;
        let x0 = vec![0.0; 15];
        let before = dist2(&t.r, &a.residual(&p.b, &x0));
        let (x, it) = lsqr(a, &p.b, &x0, &r, 3, 0.0).unwrap();
        assert!(it <= 3);
        let after = dist2(&t.r, &a.residual(&p.b, &x));
        assert!(after * 1e6 <= before, "{after} vs {before}");
    }
}

#[test]
fn lsqr_with_sketched_preconditioner_matches_qr() {
    let p = gen_randsvd(200, 20, 1e3, 1e-2, 13).unwrap();
    let a = p.a.as_dense().unwrap();
    let s = SparseSignEmbedding::new(100, 200, 8, 14).unwrap();
    let (x0, qr) = sketch_and_solve(a, &p.b, &s).unwrap();
    let (x, _) = lsqr(a, &p.b, &x0, &qr.r, 100, 1e-15).unwrap();
    let xq = qr_solve(a, &p.b).unwrap();
    assert!(forward_error(&xq, &x).unwrap() <= 1e-8);
}

#[test]
fn sketch_and_precondition_solves_consistent_systems_from_any_start() {
    let p = gen_randsvd(800, 20, 1e3, 0.0, 15).unwrap();
    let a = p.a.as_dense().unwrap();
    let meter = p.meter(false).unwrap().unwrap();
    for init in [Init::Zero, Init::SketchAndSolve] {
        let cfg = SolverConfig::new(400).seed(16).init(init).max_iters(60);
        let res = sketch_and_precondition(a, &p.b, &cfg, Some(&meter)).unwrap();
        assert!(res.trace.last().errors.unwrap().fe <= 1e-10);
    }
}

#[test]
fn damped_and_momentum_converge() {
    let p = gen_randsvd(1000, 20, 1e4, 1e-6, 17).unwrap();
    let a = p.a.as_dense().unwrap();
    let t = p.truth.as_ref().unwrap();
    let fe_qr = forward_error(&t.x, &qr_solve(a, &p.b).unwrap()).unwrap();
    for v in [Variant::Damped, Variant::Momentum] {
        let cfg = SolverConfig::new(400).seed(18).variant(v);
        let res = iterative_sketching(a, &p.b, &cfg, None).unwrap();
        assert_eq!(res.trace.stop_reason, StopReason::StoppingRule);
        assert!(forward_error(&t.x, &res.solution).unwrap() <= 10.0 * fe_qr);
    }
}

#[test]
fn momentum_first_step_has_no_momentum_term() {
    let p = gen_randsvd(400, 10, 1e2, 1e-3, 19).unwrap();
    let a = p.a.as_dense().unwrap();
    let cfg = SolverConfig::new(200).seed(20).fixed_iterations(1);
    let eps = cfg.param_epsilon(10);
    let (alpha, _) = momentum_params(eps).unwrap();
    let sketch = Sketch::new(a, &p.b, &cfg).unwrap();
    let mom = iterative_sketching_with(a, &p.b, &sketch, &cfg.clone().variant(Variant::Momentum), None).unwrap();
    let r = &sketch.qr.r;
    let r0 = a.residual(&p.b, &sketch.x0);
    let d = tri_solve_upper(r, &tri_solve_upper_transpose(r, &a.tmul_vec(&r0)).unwrap()).unwrap();
    for j in 0..10 {
        let expect = sketch.x0[j] + alpha * d[j] + 0.0;
        assert!((mom.solution[j] - expect).abs() <= 1e-15 * expect.abs().max(1.0));
    }
}

#[test]
fn bad_variants_report_divergence_instead_of_failing() {
    let p = gen_randsvd(2000, 30, 1e10, 1e-6, 21).unwrap();
    let a = p.a.as_dense().unwrap();
    let cfg = SolverConfig::new(600).seed(22).max_iters(200);
    let res = bad_variant(a, &p.b, &cfg, BadKind::Matrix, None).unwrap();
    assert_ne!(res.trace.stop_reason, StopReason::StoppingRule);
}

#[test]
fn invalid_configs_are_rejected() {
    let a = DenseMatrix::identity(5);
    let b = [1.0; 5];
    assert!(iterative_sketching(&a, &b, &SolverConfig::new(3), None).is_err());
    assert!(iterative_sketching(&a, &b, &SolverConfig::new(10).zeta(11), None).is_err());
    assert!(iterative_sketching(&a, &b[..4], &SolverConfig::new(10), None).is_err());
}
