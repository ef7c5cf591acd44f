//! Pass-audited edge stream over a graph and an arrival order.

use thiserror::Error;

use crate::graph::{ArrivalOrder, BipartiteGraph};

/// Work-counter budget: an audited algorithm may charge at most this many
/// operations per delivered edge before `per_edge_work_bound_ok` turns false.
pub const PER_EDGE_WORK_BOUND: u64 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("pass budget of {budget} exhausted")]
    PassBudgetExceeded { budget: u32 },
    #[error("arrival order has length {order_len} but the graph has {m} edges")]
    OrderLengthMismatch { order_len: usize, m: usize },
}

/// What an audited run did: passes opened, the high-water mark of edges the
/// algorithm kept in memory at once, and whether charged work stayed within
/// a constant per delivered edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditReport {
    pub passes_used: u32,
    pub peak_retained_edges: usize,
    pub per_edge_work_bound_ok: bool,
}

/// A readable stream of the graph's edges in a fixed arrival order.
///
/// Each opened pass yields exactly the `m` edges `graph.edge(perm[0]) ..
/// graph.edge(perm[m-1])`. The source counts passes (optionally against an
/// armed budget) and meters the edges an algorithm reports as stored, so a
/// run can be audited afterwards via [`StreamSource::audit_report`].
#[derive(Debug)]
pub struct StreamSource<'g> {
    graph: &'g BipartiteGraph,
    order: &'g ArrivalOrder,
    passes_opened: u32,
    pass_budget: Option<u32>,
    retained_current: usize,
    retained_peak: usize,
    work_ops: u64,
}

impl<'g> StreamSource<'g> {
    pub fn new(
        graph: &'g BipartiteGraph,
        order: &'g ArrivalOrder,
    ) -> Result<Self, StreamError> {
        if order.len() != graph.m() {
            return Err(StreamError::OrderLengthMismatch {
                order_len: order.len(),
                m: graph.m(),
            });
        }
        Ok(Self {
            graph,
            order,
            passes_opened: 0,
            pass_budget: None,
            retained_current: 0,
            retained_peak: 0,
            work_ops: 0,
        })
    }

    /// Arms a pass budget: any `open_pass` beyond `budget` fails loudly
    /// instead of silently handing out another pass.
    pub fn arm_pass_budget(&mut self, budget: u32) {
        self.pass_budget = Some(budget);
    }

    pub fn n_a(&self) -> usize {
        self.graph.n_a()
    }

    pub fn n_b(&self) -> usize {
        self.graph.n_b()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn passes_opened(&self) -> u32 {
        self.passes_opened
    }

    pub fn open_pass(&mut self) -> Result<Pass<'g>, StreamError> {
        if let Some(budget) = self.pass_budget {
            if self.passes_opened >= budget {
                return Err(StreamError::PassBudgetExceeded { budget });
            }
        }
        self.passes_opened += 1;
        Ok(Pass {
            graph: self.graph,
            perm: self.order.perm(),
            pos: 0,
        })
    }

    /// Records `count` edges newly stored by the algorithm under audit.
    pub fn note_stored(&mut self, count: usize) {
        self.retained_current += count;
        self.retained_peak = self.retained_peak.max(self.retained_current);
    }

    /// Records `count` stored edges released by the algorithm under audit.
    pub fn note_released(&mut self, count: usize) {
        debug_assert!(count <= self.retained_current);
        self.retained_current = self.retained_current.saturating_sub(count);
    }

    /// Charges `ops` units of per-edge work against the audit budget.
    pub fn note_work(&mut self, ops: u64) {
        self.work_ops += ops;
    }

    pub fn peak_retained_edges(&self) -> usize {
        self.retained_peak
    }

    pub fn audit_report(&self) -> AuditReport {
        let delivered = u64::from(self.passes_opened) * self.graph.m() as u64;
        AuditReport {
            passes_used: self.passes_opened,
            peak_retained_edges: self.retained_peak,
            per_edge_work_bound_ok: self.work_ops <= PER_EDGE_WORK_BOUND * (delivered + 1),
        }
    }
}

/// One traversal of the stream. Borrows the graph and order directly, so the
/// owning [`StreamSource`] stays usable for audit notes while iterating.
#[derive(Debug, Clone)]
pub struct Pass<'g> {
    graph: &'g BipartiteGraph,
    perm: &'g [usize],
    pos: usize,
}

impl Pass<'_> {
    pub fn n_a(&self) -> usize {
        self.graph.n_a()
    }

    pub fn n_b(&self) -> usize {
        self.graph.n_b()
    }

    pub fn m(&self) -> usize {
        self.perm.len()
    }
}

impl Iterator for Pass<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let &edge_index = self.perm.get(self.pos)?;
        self.pos += 1;
        Some(self.graph.edge(edge_index))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.perm.len() - self.pos;
        (rest, Some(rest))
    }
}
