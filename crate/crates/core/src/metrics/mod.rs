//! Structural measurements of a single graph.

mod clustering;
mod degree;
mod modularity;
mod paths;
mod report;

pub use clustering::{clustering, local_clustering, Clustering};
pub use degree::{assortativity_r, degree_ccdf, degree_centrality_corr, edge_density, knn_spectrum, pearson};
pub use modularity::{modularity_matrix, q_levels, q_split, LevelQ, QLevels};
pub use paths::{
    betweenness, degree_quartiles, hierarchy_h, path_stats, quartile_ampl, quartile_ampl_from, AllPairs, Monotonicity,
    PathStats,
};
pub use report::{MetricsOptions, MetricsReport};
