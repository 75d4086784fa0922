mod common;

use common::{instance, oracle_cov, rel_cov, rng};
use nalgebra::DMatrix;
use rand::Rng;
use semedge_core::{
    add_directed, check_add_directed, check_remove_bidirected, check_remove_directed, remove_bidirected,
    remove_directed, sample_cov, simulate, transform_data_add, transform_data_remove, transform_matrix_remove,
    CovEstimator, CovMatrix, Edge, Method, SemParameters,
};

/// Forward model with one error covariance zeroed, without requiring the
/// modified Ω to stay positive definite.
fn oracle_without_omega(p: &SemParameters, a: &str, b: &str) -> CovMatrix {
    let g = p.graph();
    let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
    let n = g.len();
    let t = (DMatrix::identity(n, n) - p.lambda_matrix()).try_inverse().unwrap();
    let mut om = p.omega_matrix().clone();
    om[(i, j)] = 0.0;
    om[(j, i)] = 0.0;
    let mut s = t.transpose() * om * &t;
    for r in 0..n {
        for c in 0..r {
            s[(r, c)] = s[(c, r)];
        }
    }
    CovMatrix::new(g.vertices().to_vec(), s).unwrap()
}

fn assert_symmetric(c: &CovMatrix) {
    let m = c.matrix();
    assert_eq!(m, &m.transpose());
}

#[test]
fn removing_directed_edges_matches_forward_model() {
    for method in [Method::Regression, Method::Cutvertex] {
        let mut hits = 0;
        for seed in 0..300 {
            let p = instance(seed, 2, 8);
            let g = p.graph();
            let s = p.covariance().unwrap();
            for (a, b) in g.directed_edges() {
                if !check_remove_directed(g, &a, &b, method).unwrap().is_identified() {
                    continue;
                }
                hits += 1;
                let r = remove_directed(&s, g, &a, &b, method).unwrap();
                let q = p.without_edge(&Edge::directed(&*a, &*b)).unwrap();
                assert_eq!(&r.new_graph, q.graph());
                assert!(rel_cov(&r.new_cov, &oracle_cov(&q)) < 1e-8, "remove {a}->{b} in {g:?}");
                assert_symmetric(&r.new_cov);
                // non-descendants of b keep their covariances exactly
                let nd = g.nondescendants(&b).unwrap();
                for v in nd.iter() {
                    for w in nd.iter() {
                        assert_eq!(r.new_cov.get(v, w).unwrap(), s.get(v, w).unwrap());
                    }
                }
            }
        }
        assert!(hits > 300, "{method:?}: only {hits} removals");
    }
}

#[test]
fn adding_directed_edges_matches_forward_model() {
    let mut hits = 0;
    for seed in 0..300 {
        let p = instance(seed + 1000, 2, 8);
        let g = p.graph();
        let s = p.covariance().unwrap();
        let lam = rng(seed).random_range(-0.8..0.8);
        for a in g.vertices() {
            for b in g.vertices() {
                let Ok(report) = check_add_directed(g, a, b, Method::Regression) else { continue };
                if !report.is_identified() {
                    continue;
                }
                hits += 1;
                let r = add_directed(&s, g, a, b, lam, Method::Regression).unwrap();
                let q = p.with_directed_edge(a, b, lam).unwrap();
                assert!(rel_cov(&r.new_cov, &oracle_cov(&q)) < 1e-8, "add {a}->{b} in {g:?}");
                assert_symmetric(&r.new_cov);
                let zero = add_directed(&s, g, a, b, 0.0, Method::Regression).unwrap();
                assert_eq!(zero.new_cov.matrix(), s.matrix());
            }
        }
    }
    assert!(hits > 300, "only {hits} additions");
}

#[test]
fn removing_bidirected_edges_matches_forward_model() {
    let mut hits = 0;
    for seed in 0..600 {
        let p = instance(seed + 2000, 2, 8);
        let g = p.graph();
        let s = p.covariance().unwrap();
        for (a, b) in g.bidirected_edges() {
            if !check_remove_bidirected(g, &a, &b).unwrap().is_identified() {
                continue;
            }
            hits += 1;
            let r = remove_bidirected(&s, g, &a, &b).unwrap();
            assert!(rel_cov(&r.new_cov, &oracle_without_omega(&p, &a, &b)) < 1e-8, "remove {a}<->{b} in {g:?}");
            assert_symmetric(&r.new_cov);
            if let Ok(q) = p.without_edge(&Edge::bidirected(&*a, &*b)) {
                assert!(rel_cov(&r.new_cov, &oracle_cov(&q)) < 1e-8);
            }
        }
    }
    assert!(hits > 100, "only {hits} bidirected removals");
}

#[test]
fn remove_then_add_restores_covariance() {
    let mut hits = 0;
    for seed in 0..300 {
        let p = instance(seed + 3000, 2, 8);
        let g = p.graph();
        let s = p.covariance().unwrap();
        for (a, b) in g.directed_edges() {
            let Ok(removed) = remove_directed(&s, g, &a, &b, Method::Regression) else { continue };
            let lam = removed.used[0].value;
            let Ok(back) = add_directed(&removed.new_cov, &removed.new_graph, &a, &b, lam, Method::Regression) else {
                continue;
            };
            hits += 1;
            assert_eq!(&back.new_graph, g);
            assert!(rel_cov(&back.new_cov, &s) < 1e-8);
        }
    }
    assert!(hits > 100, "only {hits} round trips");
}

#[test]
fn add_then_remove_restores_covariance() {
    let mut hits = 0;
    for seed in 0..300 {
        let p = instance(seed + 4000, 2, 8);
        let g = p.graph();
        let s = p.covariance().unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                let Ok(added) = add_directed(&s, g, a, b, 0.35, Method::Regression) else { continue };
                let Ok(back) = remove_directed(&added.new_cov, &added.new_graph, a, b, Method::Regression) else {
                    continue;
                };
                hits += 1;
                assert!((back.used[0].value - 0.35).abs() < 1e-8);
                assert!(rel_cov(&back.new_cov, &s) < 1e-8);
            }
        }
    }
    assert!(hits > 100, "only {hits} round trips");
}

#[test]
fn transform_matrix_is_a_congruence() {
    for seed in 0..200 {
        let p = instance(seed + 5000, 2, 8);
        let g = p.graph();
        let s = p.covariance().unwrap();
        for (a, b) in g.directed_edges() {
            let Ok(m) = transform_matrix_remove(&s, g, &a, &b, Method::Regression) else { continue };
            let star = remove_directed(&s, g, &a, &b, Method::Regression).unwrap().new_cov;
            let c = CovMatrix::new(m.labels.clone(), {
                let mut x = &m.matrix * s.matrix() * m.matrix.transpose();
                for r in 0..x.nrows() {
                    for k in 0..r {
                        x[(r, k)] = x[(k, r)];
                    }
                }
                x
            })
            .unwrap();
            assert!(rel_cov(&c, &star) < 1e-8);
        }
    }
}

#[test]
fn transformed_samples_estimate_interventional_covariance() {
    let n = 100_000;
    let mut done = 0;
    for seed in 0..100 {
        if done == 6 {
            break;
        }
        let p = instance(seed + 6000, 3, 6);
        let g = p.graph();
        let s = p.covariance().unwrap();
        let Some((a, b)) = g
            .directed_edges()
            .into_iter()
            .find(|(a, b)| check_remove_directed(g, a, b, Method::Regression).unwrap().is_identified())
        else {
            continue;
        };
        done += 1;
        let d = simulate(&s, n, seed).unwrap();
        let star = remove_directed(&s, g, &a, &b, Method::Regression).unwrap().new_cov;
        let x = transform_data_remove(&d, &s, g, &a, &b, Method::Regression).unwrap();
        let est = sample_cov(&x, CovEstimator::Centered).unwrap();
        assert!(est.max_rel_diff(&star).unwrap() < 5.0 / (n as f64).sqrt());

        // the same map applied to columns in a different order
        let mut rev = d.labels().to_vec();
        rev.reverse();
        let shuffled = d.reordered(&rev).unwrap();
        let y = transform_data_remove(&shuffled, &s, g, &a, &b, Method::Regression).unwrap();
        assert_eq!(y.labels(), shuffled.labels());
        assert_eq!(y.reordered(x.labels()).unwrap(), x);
    }
    assert_eq!(done, 6);
}

#[test]
fn data_transform_roundtrip() {
    let p = instance(77, 4, 6);
    let g = p.graph();
    let s = p.covariance().unwrap();
    let d = simulate(&s, 200, 3).unwrap();
    for (a, b) in g.directed_edges() {
        let Ok(r) = remove_directed(&s, g, &a, &b, Method::Regression) else { continue };
        let Ok(x) = transform_data_remove(&d, &s, g, &a, &b, Method::Regression) else { continue };
        let lam = r.used[0].value;
        let Ok(back) = transform_data_add(&x, &r.new_cov, &r.new_graph, &a, &b, lam, Method::Regression) else {
            continue;
        };
        assert!((back.rows() - d.rows()).abs().max() < 1e-10);
        let untouched = g.nondescendants(&b).unwrap();
        for v in untouched.iter() {
            assert_eq!(x.column(v).unwrap(), d.column(v).unwrap());
        }
    }
}
