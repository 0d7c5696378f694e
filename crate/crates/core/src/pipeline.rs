//! The full chain from a rooted graph to the 5-tree / 5-co-tree pair.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dual::{dual, DualGraph};
use crate::dual_order::{dual_canonical_ordering, DualCanonicalOrdering, DualOrderError};
use crate::embedding::PlanarGraph;
use crate::order::{
    compute_canonical_ordering, enumerate_vertices, label_edges, CanonicalOrdering, EdgeAnnotation,
    OrderError,
};
use crate::trees::{
    five_tree_from, h_edges, h_zero, HSubgraph, HZeroForest, SpanningTreePair, TreeError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    DualOrder(#[from] DualOrderError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Every intermediate object of the pipeline.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub ordering: CanonicalOrdering,
    pub annotation: EdgeAnnotation,
    pub dual: DualGraph,
    pub dual_ordering: DualCanonicalOrdering,
    pub dual_annotation: EdgeAnnotation,
    pub h: HSubgraph,
    pub hstar: HSubgraph,
    pub h0: HZeroForest,
    pub five: SpanningTreePair,
}

/// Wall-clock time of each stage.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimes {
    pub ordering: Duration,
    pub labels: Duration,
    pub dual_ordering: Duration,
    pub five_tree: Duration,
}

impl StageTimes {
    pub fn total(&self) -> Duration {
        self.ordering + self.labels + self.dual_ordering + self.five_tree
    }
}

impl Pipeline {
    pub fn run(g: &PlanarGraph) -> Result<Self, PipelineError> {
        Self::run_timed(g).map(|(p, _)| p)
    }

    pub fn run_timed(g: &PlanarGraph) -> Result<(Self, StageTimes), PipelineError> {
        let mut times = StageTimes::default();
        let t = Instant::now();
        let ordering = compute_canonical_ordering(g)?;
        times.ordering = t.elapsed();

        let t = Instant::now();
        let annotation = label_edges(g, &ordering, &enumerate_vertices(g, &ordering));
        times.labels = t.elapsed();

        let t = Instant::now();
        let dualg = dual(g);
        let dual_ordering = dual_canonical_ordering(g, &ordering, &dualg)?;
        let gs = dualg.graph();
        let dual_annotation = label_edges(
            gs,
            &dual_ordering.ordering,
            &enumerate_vertices(gs, &dual_ordering.ordering),
        );
        times.dual_ordering = t.elapsed();

        let t = Instant::now();
        let h = h_edges(g, &annotation);
        let hstar = h_edges(gs, &dual_annotation);
        let h0 = h_zero(g, &h, &hstar)?;
        let five = five_tree_from(g, &h, &h0)?;
        times.five_tree = t.elapsed();

        Ok((
            Pipeline {
                ordering,
                annotation,
                dual: dualg,
                dual_ordering,
                dual_annotation,
                h,
                hstar,
                h0,
                five,
            },
            times,
        ))
    }
}

/// Spanning tree of `g` with maximum degree at most 5 whose co-tree also has
/// maximum degree at most 5.
pub fn five_tree(g: &PlanarGraph) -> Result<SpanningTreePair, PipelineError> {
    Pipeline::run(g).map(|p| p.five)
}
