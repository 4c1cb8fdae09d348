use crate::error::Result;
use crate::margins::{margin_graph, ratio_graph, RatioOptions, WeightedGraph};
use crate::profiles::Profile;
use crate::relations::Relation;

use super::{unanimous_indifference, Ccr, Measure};

/// `x` defeats `y` iff `x -> y` is an edge whose weight beats the splitting
/// number of every majority path from `y` back to `x`.
pub fn split_cycle_defeats<W: Copy + Ord>(g: &WeightedGraph<W>) -> Relation {
    let wide = g.widest_paths();
    Relation::from_fn(g.n(), |x, y| {
        g.has_edge(x, y) && wide[y][x].is_none_or(|split| g.weight(x, y) > split)
    })
}

/// Same relation computed from majority cycles: `x` defeats `y` iff `x -> y`
/// is an edge whose weight beats the splitting number of every majority
/// cycle containing both.
pub fn split_cycle_defeats_by_cycles<W: Copy + Ord>(g: &WeightedGraph<W>) -> Relation {
    let n = g.n();
    let mut worst: Vec<Option<W>> = vec![None; n * n];
    for cycle in g.majority_cycles() {
        let split = g.splitting_number(&cycle);
        for &x in &cycle.vertices {
            for &y in &cycle.vertices {
                let slot = &mut worst[x * n + y];
                if slot.is_none_or(|w| split > w) {
                    *slot = Some(split);
                }
            }
        }
    }
    Relation::from_fn(n, |x, y| {
        g.has_edge(x, y) && worst[x * n + y].is_none_or(|split| g.weight(x, y) > split)
    })
}

/// Split Cycle with unanimous indifference as its weak part.
#[derive(Debug, Clone, Copy)]
pub struct SplitCycle {
    pub measure: Measure,
}

impl SplitCycle {
    pub fn strict_part(&self, p: &Profile) -> Relation {
        match self.measure {
            Measure::Margin => split_cycle_defeats(&margin_graph(p)),
            Measure::Ratio => split_cycle_defeats(&ratio_graph(p, RatioOptions::default())),
        }
    }
}

impl Ccr for SplitCycle {
    fn name(&self) -> String {
        format!("split-cycle({})", self.measure)
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        Ok(self.strict_part(p).union(&unanimous_indifference(p)))
    }
}
