mod common;

use common::{all_subsets, instance, redraw, rel};
use semedge_core::{
    check_add_directed, identify_lambda, identify_omega, identify_path_sum, identify_path_sum_cutvertex, Admg,
    Method, Status, VertexSet,
};

const DRAWS: u64 = 100;

fn proper_descendants(g: &Admg, b: &str) -> Vec<String> {
    g.descendants(&VertexSet::new([b]))
        .unwrap()
        .iter()
        .filter(|c| *c != b)
        .map(str::to_string)
        .collect()
}

#[test]
fn lambda_regressions_recover_coefficients() {
    let mut hits = 0;
    for seed in 0..150 {
        let g = instance(seed, 2, 7).graph().clone();
        for (a, b) in g.directed_edges() {
            let r = identify_lambda(&g, &a, &b).unwrap();
            if !r.is_identified() {
                continue;
            }
            hits += 1;
            let adj = r.adjustment.clone().unwrap();
            for d in 0..DRAWS {
                let p = redraw(&g, seed * 1000 + d);
                let s = p.covariance().unwrap();
                let got = s.regression_coef(&a, &b, &adj).unwrap();
                assert!(rel(got, p.lambda(&a, &b).unwrap()) < 1e-8, "{a}->{b} adj {adj} in {g:?}");
                assert_eq!(got, r.evaluate(&s).unwrap());
            }
        }
    }
    assert!(hits > 200, "only {hits} identified coefficients");
}

#[test]
fn path_sum_regressions_recover_path_sums() {
    let mut hits = 0;
    for seed in 0..150 {
        let g = instance(seed + 5000, 2, 7).graph().clone();
        for b in g.vertices() {
            for c in proper_descendants(&g, b) {
                let r = identify_path_sum(&g, b, &c).unwrap();
                if !r.is_identified() {
                    continue;
                }
                hits += 1;
                let adj = r.adjustment.clone().unwrap();
                for d in 0..DRAWS {
                    let p = redraw(&g, seed * 1000 + d);
                    let s = p.covariance().unwrap();
                    let got = s.regression_coef(b, &c, &adj).unwrap();
                    let want = p.path_sum(b, &c).unwrap().value;
                    assert!(rel(got, want) < 1e-8, "{b}->{c} adj {adj} in {g:?}");
                }
            }
        }
    }
    assert!(hits > 200, "only {hits} identified path sums");
}

#[test]
fn cutvertex_recipes_recover_path_sums() {
    let (mut chains, mut checked) = (0, 0);
    for seed in 0..400 {
        let g = instance(seed + 9000, 3, 8).graph().clone();
        for b in g.vertices() {
            for c in proper_descendants(&g, b) {
                let r = identify_path_sum_cutvertex(&g, b, &c).unwrap();
                let Some(recipe) = r.recipe.clone() else { continue };
                assert_eq!(recipe.first().unwrap().from, *b);
                assert_eq!(recipe.last().unwrap().to, c);
                for w in recipe.windows(2) {
                    assert_eq!(w[0].to, w[1].from);
                }
                if recipe.len() > 1 {
                    chains += 1;
                    assert_eq!(r.status, Status::GenericallyIdentifiable);
                    assert!(!identify_path_sum(&g, b, &c).unwrap().is_identified());
                }
                checked += 1;
                for d in 0..20 {
                    let p = redraw(&g, seed * 1000 + d);
                    let s = p.covariance().unwrap();
                    let prod: f64 = recipe
                        .iter()
                        .map(|st| s.regression_coef(&st.from, &st.to, &st.adjustment).unwrap())
                        .product();
                    assert!(rel(prod, p.path_sum(b, &c).unwrap().value) < 1e-8);
                }
            }
        }
    }
    assert!(chains > 0 && checked > 100, "chains {chains}, checked {checked}");
}

#[test]
fn omega_partial_covariances_recover_error_covariances() {
    let mut hits = 0;
    for seed in 0..300 {
        let g = instance(seed + 20_000, 2, 7).graph().clone();
        for (a, b) in g.bidirected_edges() {
            let r = identify_omega(&g, &a, &b).unwrap();
            if !r.is_identified() {
                continue;
            }
            hits += 1;
            let adj = r.adjustment.clone().unwrap();
            for d in 0..DRAWS {
                let p = redraw(&g, seed * 1000 + d);
                let s = p.covariance().unwrap();
                let got = s.conditional_cov(&a, &b, &adj).unwrap();
                assert!(rel(got, p.omega(&a, &b).unwrap()) < 1e-8, "{a}<->{b} xi {adj} in {g:?}");
            }
        }
    }
    assert!(hits > 50, "only {hits} identified error covariances");
}

/// True when some single regression over an adjustment set drawn from the
/// remaining vertices matches `truth` on every draw.
fn some_regression_matches(g: &Admg, v: &str, w: &str, truth: impl Fn(&semedge_core::SemParameters) -> f64, seed: u64) -> Option<VertexSet> {
    let rest: Vec<String> = g.vertices().iter().filter(|x| *x != v && *x != w).cloned().collect();
    let draws: Vec<_> = (0..10)
        .map(|d| {
            let p = redraw(g, seed * 100 + d);
            let s = p.covariance().unwrap();
            (s, truth(&p))
        })
        .collect();
    all_subsets(&rest).into_iter().map(VertexSet::new).find(|cond| {
        draws.iter().all(|(s, t)| (s.regression_coef(v, w, cond).unwrap() - t).abs() <= 1e-4)
    })
}

#[test]
fn unidentified_coefficients_have_no_matching_regression() {
    let mut failures = 0;
    for seed in 0..250 {
        let g = instance(seed + 40_000, 3, 6).graph().clone();
        for (a, b) in g.directed_edges() {
            if identify_lambda(&g, &a, &b).unwrap().is_identified() {
                continue;
            }
            failures += 1;
            let found = some_regression_matches(&g, &a, &b, |p| p.lambda(&a, &b).unwrap(), seed);
            assert!(found.is_none(), "lambda {a}->{b} matched by adjustment {:?} in {g:?}", found);
        }
    }
    assert!(failures > 30, "only {failures} unidentified coefficients");
}

#[test]
fn unidentified_path_sums_have_no_matching_regression() {
    let mut failures = 0;
    for seed in 0..250 {
        let g = instance(seed + 60_000, 3, 6).graph().clone();
        for b in g.vertices() {
            for c in proper_descendants(&g, b) {
                if identify_path_sum(&g, b, &c).unwrap().is_identified() {
                    continue;
                }
                failures += 1;
                let found = some_regression_matches(&g, b, &c, |p| p.path_sum(b, &c).unwrap().value, seed);
                assert!(found.is_none(), "path sum {b}->{c} matched by adjustment {:?} in {g:?}", found);
            }
        }
    }
    assert!(failures > 30, "only {failures} unidentified path sums");
}

#[test]
fn global_fixability_implies_per_target_decision() {
    for seed in 0..300 {
        let g = instance(seed + 80_000, 2, 7).graph().clone();
        for a in g.vertices() {
            for b in g.vertices() {
                let Ok(r) = check_add_directed(&g, a, b, Method::Regression) else { continue };
                let fixable = r.checks.iter().find(|c| c.name == "b fixable").map(|c| c.passed);
                if fixable == Some(true) {
                    assert!(r.is_identified(), "add {a}->{b} in {g:?}: {}", r.summary());
                }
            }
        }
    }
}
