//! Edge interventions in linear Gaussian structural equation models over
//! acyclic directed mixed graphs.
//!
//! The crate covers the graph primitives ([`graph`]), the parameterized
//! model and its covariance ([`sem`], [`trek`]), regression identifiability
//! ([`identify`]), covariance and data updates for edge interventions
//! ([`intervention`]), constraint mining by repeated edge removal
//! ([`constraints`]), and file formats ([`io`]).

pub mod constraints;
pub mod cov;
pub mod data;
pub mod error;
pub mod graph;
pub mod identify;
pub mod intervention;
pub mod io;
pub mod linalg;
pub mod random;
pub mod sem;
pub mod trek;

pub use constraints::{
    derive_constraints, eval_gadget, eval_verma, plan_removals, residual_of_plan, ConstraintSet, PlanTarget,
    RemovalPlan, RemovalStep, Residual,
};
pub use cov::CovMatrix;
pub use data::{sample_cov, simulate, standardize, CovEstimator, Dataset, Standardization};
pub use error::{Error, Result};
pub use graph::{natural_cmp, Admg, Edge, VertexSet};
pub use identify::{
    check_add_directed, check_remove_bidirected, check_remove_directed, check_simple_generic, identify_lambda,
    identify_omega, identify_path_sum, identify_path_sum_cutvertex, Check, IdentifiabilityReport, Method, Operation,
    RegressionStep, Status, Target,
};
pub use intervention::{
    add_directed, bidirected_quantities_from_params, remove_bidirected, remove_bidirected_forced, remove_directed,
    transform_data_add, transform_data_remove, transform_matrix_add, transform_matrix_remove, BidirectedQuantities,
    InterventionResult, LinearTransform, PdCheck, UsedQuantity,
};
pub use random::{random_admg, random_instance, random_parameters, GraphSpec};
pub use sem::{covariance_from_params, path_sum, PathSum, SemParameters};
pub use trek::{covariance_via_treks, enumerate_treks, trek_count, Trek, TrekSource};
