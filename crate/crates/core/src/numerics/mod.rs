//! Dense linear algebra and sampling routines: symmetric eigensolver,
//! truncated SVD, classical MDS, NMF topic factorization, PCA, and a
//! two-group Gibbs sampler.

pub mod gibbs;
pub mod jacobi;
pub mod mds;
pub mod nmf;
pub mod pca;
pub mod svd;

pub use gibbs::{gibbs_compare, GibbsConfig, GibbsPriors, PosteriorSamples};
pub use mds::{classical_mds, Embedding};
pub use nmf::{nmf, topic_model, Nmf, TopicModel};
pub use pca::{pca, Pca};
pub use svd::{truncated_svd, Svd};
