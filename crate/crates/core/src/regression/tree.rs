//! CART regression trees grown by variance reduction on weighted rows.

use rand::seq::index::sample;

use crate::seed::{seeded_rng, Key};

use super::FeatureSubsample;

const LEAF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
struct Node {
    feature: u32,
    threshold: f64,
    left: u32,
    right: u32,
    value: f64,
}

/// A fitted regression tree stored as a flat node array; node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    pub fn predict_row(&self, features: &[&[f64]], row: usize) -> f64 {
        let mut node = &self.nodes[0];
        while node.feature != LEAF {
            let x = features[node.feature as usize][row];
            node = if x <= node.threshold {
                &self.nodes[node.left as usize]
            } else {
                &self.nodes[node.right as usize]
            };
        }
        node.value
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            let n = &nodes[i];
            if n.feature == LEAF {
                0
            } else {
                1 + walk(nodes, n.left as usize).max(walk(nodes, n.right as usize))
            }
        }
        walk(&self.nodes, 0)
    }
}

pub(crate) struct GrowParams {
    pub max_depth: usize,
    pub min_leaf: f64,
    pub subsample: FeatureSubsample,
    pub seed: u64,
}

/// Shared read-only state for growing one tree.
pub(crate) struct Grower<'a> {
    pub features: &'a [&'a [f64]],
    pub targets: &'a [f64],
    /// Bootstrap multiplicity of each row.
    pub weights: &'a [u32],
    pub params: GrowParams,
}

struct Best {
    gain: f64,
    feature: usize,
    threshold: f64,
}

impl Grower<'_> {
    /// Grows a tree from per-feature row lists, each sorted by that
    /// feature's value. Also accumulates impurity decrease per feature.
    pub fn grow(&self, sorted: Vec<Vec<u32>>, importance: &mut [f64]) -> Tree {
        let mut nodes = Vec::new();
        let mut goes_left = vec![false; self.targets.len()];
        self.grow_node(sorted, 0, 1, &mut nodes, &mut goes_left, importance);
        Tree { nodes }
    }

    fn grow_node(
        &self,
        sorted: Vec<Vec<u32>>,
        depth: usize,
        node_id: u64,
        nodes: &mut Vec<Node>,
        goes_left: &mut [bool],
        importance: &mut [f64],
    ) -> u32 {
        let index = nodes.len() as u32;
        let rows = &sorted[0];
        let (mut w, mut s, mut ss) = (0.0, 0.0, 0.0);
        for &r in rows {
            let c = f64::from(self.weights[r as usize]);
            let y = self.targets[r as usize];
            w += c;
            s += c * y;
            ss += c * y * y;
        }
        let value = s / w;
        nodes.push(Node {
            feature: LEAF,
            threshold: 0.0,
            left: LEAF,
            right: LEAF,
            value,
        });
        let sse = (ss - s * s / w).max(0.0);
        if depth >= self.params.max_depth || w < 2.0 * self.params.min_leaf || sse <= 1e-14 * w {
            return index;
        }

        let Some(best) = self.best_split(&sorted, node_id, w, s, sse) else {
            return index;
        };

        let column = self.features[best.feature];
        for &r in rows {
            goes_left[r as usize] = column[r as usize] <= best.threshold;
        }
        let mut left = Vec::with_capacity(sorted.len());
        let mut right = Vec::with_capacity(sorted.len());
        for list in sorted {
            let (l, r): (Vec<u32>, Vec<u32>) =
                list.into_iter().partition(|&r| goes_left[r as usize]);
            left.push(l);
            right.push(r);
        }
        importance[best.feature] += best.gain;

        let l = self.grow_node(left, depth + 1, node_id * 2, nodes, goes_left, importance);
        let r = self.grow_node(
            right,
            depth + 1,
            node_id * 2 + 1,
            nodes,
            goes_left,
            importance,
        );
        let node = &mut nodes[index as usize];
        node.feature = best.feature as u32;
        node.threshold = best.threshold;
        node.left = l;
        node.right = r;
        index
    }

    fn candidates(&self, node_id: u64) -> Vec<usize> {
        let k = self.features.len();
        let take = self.params.subsample.count(k);
        if take >= k {
            return (0..k).collect();
        }
        // Keyed by node position so that deeper trees refine shallower ones.
        let mut rng = seeded_rng(self.params.seed, &[Key::Str("node"), Key::Int(node_id)]);
        let mut chosen = sample(&mut rng, k, take).into_vec();
        chosen.sort_unstable();
        chosen
    }

    fn best_split(
        &self,
        sorted: &[Vec<u32>],
        node_id: u64,
        w: f64,
        s: f64,
        sse: f64,
    ) -> Option<Best> {
        let min_leaf = self.params.min_leaf;
        let parent = s * s / w;
        let mut best: Option<Best> = None;
        for f in self.candidates(node_id) {
            let column = self.features[f];
            let list = &sorted[f];
            let (mut wl, mut sl) = (0.0, 0.0);
            for pair in list.windows(2) {
                let (r, next) = (pair[0] as usize, pair[1] as usize);
                let c = f64::from(self.weights[r]);
                wl += c;
                sl += c * self.targets[r];
                let (x, x_next) = (column[r], column[next]);
                if x_next <= x {
                    continue;
                }
                let wr = w - wl;
                if wl < min_leaf {
                    continue;
                }
                if wr < min_leaf {
                    break;
                }
                let sr = s - sl;
                let gain = sl * sl / wl + sr * sr / wr - parent;
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    let mut threshold = 0.5 * (x + x_next);
                    if threshold >= x_next {
                        threshold = x;
                    }
                    best = Some(Best {
                        gain,
                        feature: f,
                        threshold,
                    });
                }
            }
        }
        best.filter(|b| b.gain > 1e-12 * sse)
    }
}
