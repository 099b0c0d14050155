use ddp_core::instances::{random_semicomplete, random_requests, Instance, Request, verify_solution};
use ddp_core::pathwidth::*;
use ddp_core::solver::{solve, SolveOptions};

#[test]
fn dbg_unit_copy() {
    for seed in 0..30 {
        let n = 6 + (seed as usize % 3);
        let g = random_semicomplete(n, 0.2, 3000 + seed);
        let mut rng = ddp_core::rng::split(3000 + seed, 7);
        let k = 1 + (seed as usize % 3);
        let reqs: Vec<Request> = random_requests(n, k, &mut rng);
        let c = 1 + (seed as usize % 2);
        let inst = Instance::new(g.clone(), reqs, c, false);
        let (_, dec) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
        eprintln!("seed {seed} starting");
        let via_dp = dp_solve(&inst, &dec).unwrap();
        let via_search = solve(&inst, SolveOptions::any()).unwrap();
        assert_eq!(via_dp.is_some(), via_search.is_some(), "seed {seed}");
        if let Some(sol) = via_dp {
            assert!(verify_solution(&inst, &sol).is_ok());
        }
    }
}
