//! Minimal priority relabeling of finite graphs and the stair parity index.
//!
//! A labeling *classifies* a cycle by the parity of the largest label on it.
//! [`min_priorities`] finds a labeling with the fewest distinct values that
//! classifies every cycle exactly as the input does.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{AcceptanceKind, AcceptanceSpec, Condition, Dvpa, StateId};
use crate::summaries::{step_graph, wm_summaries, StepGraph};

/// A finite directed graph on vertices `0..len` with a priority per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityGraph {
    succ: Vec<Vec<usize>>,
    pub priority: Vec<u32>,
}

impl PriorityGraph {
    pub fn new(priority: Vec<u32>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut succ = vec![Vec::new(); priority.len()];
        for (a, b) in edges {
            if !succ[a].contains(&b) {
                succ[a].push(b);
            }
        }
        PriorityGraph { succ, priority }
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn with_priorities(&self, priority: Vec<u32>) -> Self {
        assert_eq!(priority.len(), self.len());
        PriorityGraph {
            succ: self.succ.clone(),
            priority,
        }
    }

    /// Strongly connected components of the subgraph induced by `members`.
    fn sccs(&self, members: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut next = 0usize;
        for root in (0..n).filter(|&v| members[v]) {
            if index[root] != usize::MAX {
                continue;
            }
            // explicit DFS frames: (vertex, next successor position)
            let mut frames = vec![(root, 0usize)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
                if let Some(&w) = self.succ[v].get(*pos) {
                    *pos += 1;
                    if !members[w] {
                        continue;
                    }
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _)) = frames.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
        out
    }

    fn is_cyclic(&self, comp: &[usize]) -> bool {
        comp.len() > 1 || self.has_edge(comp[0], comp[0])
    }

    /// Whether some vertex lies on a cycle.
    pub fn has_cycle(&self) -> bool {
        self.sccs(&vec![true; self.len()])
            .iter()
            .any(|c| self.is_cyclic(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityAssignment {
    pub relabel: Vec<u32>,
    /// Number of values in the contiguous range used.
    pub count: u32,
    /// Parity of the smallest value used; the range starts at 0 or 1.
    pub base_parity: u32,
}

/// Labels the cyclic SCCs inside `members` with values at least `floor`;
/// returns the largest label given. Each label is the least one of the
/// required parity that dominates the labels nested below it.
fn label_sccs(
    g: &PriorityGraph,
    members: &[bool],
    floor: u32,
    labels: &mut [Option<u32>],
) -> Option<u32> {
    let mut top = None;
    for comp in g.sccs(members) {
        if !g.is_cyclic(&comp) {
            continue;
        }
        let m = comp
            .iter()
            .map(|&v| g.priority[v])
            .max()
            .expect("non-empty");
        let parity = m % 2;
        let mut rest = vec![false; g.len()];
        for &v in &comp {
            rest[v] = g.priority[v] != m;
        }
        let inner = label_sccs(g, &rest, floor, labels);
        let value = match inner {
            None if parity >= floor => parity,
            None => parity + 2,
            Some(l) if l % 2 == parity => l,
            Some(l) => l + 1,
        };
        // the maximal vertices, and those on no cycle avoiding them
        for &v in &comp {
            if labels[v].is_none() {
                labels[v] = Some(value);
            }
        }
        top = top.max(Some(value));
    }
    top
}

/// Maps sorted used values onto a gap-free range that keeps order and parity.
pub fn compress(labels: &[u32]) -> (Vec<u32>, u32, u32) {
    let used: BTreeSet<u32> = labels.iter().copied().collect();
    let mut map = BTreeMap::new();
    let mut prev: Option<(u32, u32)> = None;
    for &u in &used {
        let n = match prev {
            None => u % 2,
            Some((pu, pn)) if pu % 2 == u % 2 => pn,
            Some((_, pn)) => pn + 1,
        };
        map.insert(u, n);
        prev = Some((u, n));
    }
    let out: Vec<u32> = labels.iter().map(|u| map[u]).collect();
    let base = map.values().next().copied().unwrap_or(0);
    let count = map.values().last().map_or(0, |&hi| hi - base + 1);
    (out, count, base % 2)
}

/// A labeling with the fewest priorities that classifies every cycle of
/// `graph` as the original priorities do.
pub fn min_priorities(graph: &PriorityGraph) -> PriorityAssignment {
    // the greedy labels are pointwise least above their floor, so one of
    // the two floors reaches the optimum
    let [even, odd] = [0, 1].map(|floor| {
        let n = graph.len();
        let mut labels = vec![None; n];
        label_sccs(graph, &vec![true; n], floor, &mut labels);
        let least = labels.iter().flatten().copied().min().unwrap_or(0);
        let filled: Vec<u32> = labels.into_iter().map(|l| l.unwrap_or(least)).collect();
        let (relabel, count, base_parity) = compress(&filled);
        PriorityAssignment {
            relabel,
            count,
            base_parity,
        }
    });
    if odd.count < even.count {
        odd
    } else {
        even
    }
}

/// Vertex count above which [`classification_equivalent`] refuses to run.
pub const CLASSIFICATION_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("graph has {0} vertices, the exhaustive check handles at most {CLASSIFICATION_LIMIT}")]
pub struct TooLarge(pub usize);

/// Whether `pi` and `pi2` classify every cycle of `graph` alike.
///
/// Exhaustive over vertex subsets: a cycle exists on exactly the strongly
/// connected subsets, so comparing maxima over those suffices.
pub fn classification_equivalent(
    graph: &PriorityGraph,
    pi: &[u32],
    pi2: &[u32],
) -> Result<bool, TooLarge> {
    let n = graph.len();
    if n > CLASSIFICATION_LIMIT {
        return Err(TooLarge(n));
    }
    Ok(strongly_connected_subsets(graph).into_iter().all(|set| {
        let max = |p: &[u32]| {
            (0..n)
                .filter(|v| set & (1 << v) != 0)
                .map(|v| p[v])
                .max()
                .expect("non-empty subset")
        };
        max(pi) % 2 == max(pi2) % 2
    }))
}

/// Bitmasks of the vertex sets that carry a cycle through all their vertices.
pub fn strongly_connected_subsets(graph: &PriorityGraph) -> Vec<u32> {
    let n = graph.len();
    assert!(n <= 31, "subset enumeration needs a bitmask");
    let closure = |set: u32, start: usize, forward: bool| -> u32 {
        let mut seen = 1u32 << start;
        let mut todo = vec![start];
        while let Some(v) = todo.pop() {
            for w in 0..n {
                if set & (1 << w) == 0 || seen & (1 << w) != 0 {
                    continue;
                }
                let edge = if forward {
                    graph.has_edge(v, w)
                } else {
                    graph.has_edge(w, v)
                };
                if edge {
                    seen |= 1 << w;
                    todo.push(w);
                }
            }
        }
        seen
    };
    (1u32..(1u32 << n))
        .filter(|&set| {
            let first = set.trailing_zeros() as usize;
            if set.count_ones() == 1 {
                return graph.has_edge(first, first);
            }
            closure(set, first, true) == set && closure(set, first, false) == set
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("stair index needs a stair acceptance condition, found {0}")]
pub struct NotStair(pub AcceptanceKind);

/// Result of [`stair_index`].
#[derive(Clone, Debug)]
pub struct StairIndex {
    pub count: u32,
    pub graph: StepGraph,
    /// The input as a stair-parity DVPA with minimal priorities.
    pub relabeled: Dvpa,
}

/// Minimal number of priorities for a stair DVPA with the same transitions.
///
/// States that never occur on a step get the smallest label used. A step
/// graph without cycles admits no infinite run and gets the single odd
/// label 1.
pub fn stair_index(dvpa: &Dvpa) -> Result<StairIndex, NotStair> {
    if !dvpa.kind().is_stair() {
        return Err(NotStair(dvpa.kind()));
    }
    let wm = wm_summaries(dvpa);
    let graph = step_graph(dvpa, &wm);
    let order: Vec<StateId> = graph.vertices.iter().copied().collect();
    let position: BTreeMap<StateId, usize> =
        order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let pg = PriorityGraph::new(
        order.iter().map(|q| graph.priority[q]).collect(),
        graph.edges.keys().map(|(a, b)| (position[a], position[b])),
    );

    let (labels, count) = if pg.has_cycle() {
        let a = min_priorities(&pg);
        (a.relabel, a.count)
    } else {
        (vec![1; pg.len()], 1)
    };
    let floor = labels.iter().copied().min().unwrap_or(1);
    let priorities: Vec<u32> = dvpa
        .states()
        .map(|q| position.get(&q).map_or(floor, |&i| labels[i]))
        .collect();
    let spec = AcceptanceSpec::new(
        AcceptanceKind::StairParity,
        Condition::Priorities(priorities),
        dvpa.state_count(),
    )
    .expect("one priority per state");
    Ok(StairIndex {
        count,
        graph,
        relabeled: dvpa.with_acceptance(spec),
    })
}
