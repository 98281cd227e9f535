use fokas_core::evaluator::BoundaryOperator;
use fokas_core::oracle::fd::{fd_evolve, FdGrid};
use fokas_core::oracle::relation::compare_fields;
use fokas_core::transforms::BoundaryDatum;
use fokas_core::{SpectralParams, C64};

#[test]
fn probe_fd_agreement() {
    let p = SpectralParams::standard();
    let g0 = BoundaryDatum::gaussian(1.0, 0.3, 0.1, C64::new(1.0, 0.0)).unwrap();
    let g1 = BoundaryDatum::gaussian(1.0, 0.5, 0.12, C64::new(0.5, 0.3)).unwrap();
    let op = BoundaryOperator::with_default_cut(p, g0.clone(), g1.clone(), 1e-10).unwrap();

    for (l, nx) in [(20.0, 2000usize), (60.0, 6000)] {
        let grid = FdGrid::new(l, nx, 1e-3, 1000).unwrap();
        let fd = fd_evolve(&p, &grid, &|t| g0.eval(t), &|t| g1.eval(t), None, None).unwrap();
        println!("L={l}: leakage {:.2e}", sol_leak(&fd));
        let xs: Vec<f64> = (0..240).map(|i| 1e-3 + (19.0) * i as f64 / 239.0).collect();
        for &t in &[0.25, 0.5, 1.0] {
            let vals: Vec<C64> =
                xs.iter().map(|&x| op.evaluate_point(x, t, 1e-8).unwrap().value).collect();
            let cmp = compare_fields(&xs, &vals, &fd, t).unwrap();
            println!("  t={t}: relL2 {:.3e}  maxdiff {:.3e}  refL2 {:.3e}", cmp.rel_l2, cmp.max_abs_diff, cmp.ref_l2);
        }
    }
}

fn sol_leak(s: &fokas_core::oracle::fd::FdSolution) -> f64 { s.leakage }
