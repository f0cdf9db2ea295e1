use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf {
        class_counts: Vec<usize>,
        prediction: usize,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// CART classification tree grown with Gini impurity until every leaf is
/// pure or cannot be split.
///
/// Candidate thresholds are midpoints between consecutive distinct values;
/// samples with `x <= threshold` go left. Ties between equally good splits
/// go to the lowest feature index, then the lowest threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    n_classes: usize,
}

impl DecisionTree {
    /// Fits on all rows of `columns` (one slice per feature).
    pub fn fit(columns: &[&[f64]], labels: &[usize], n_classes: usize) -> Result<Self> {
        let mut seen = vec![false; n_classes];
        for &l in labels {
            seen[l] = true;
        }
        if seen.iter().filter(|&&s| s).count() < 2 {
            return Err(Error::SingleClass);
        }
        let all: Vec<usize> = (0..labels.len()).collect();
        Ok(Self::fit_indices(columns, labels, n_classes, &all))
    }

    /// Fits on the rows listed in `rows`. A single-class training set gives a
    /// one-leaf tree.
    pub(crate) fn fit_indices(
        columns: &[&[f64]],
        labels: &[usize],
        n_classes: usize,
        rows: &[usize],
    ) -> Self {
        let mut tree = Self {
            nodes: Vec::new(),
            n_classes,
        };
        tree.grow(columns, labels, rows.to_vec());
        tree
    }

    fn grow(&mut self, columns: &[&[f64]], labels: &[usize], rows: Vec<usize>) -> usize {
        let mut counts = vec![0usize; self.n_classes];
        for &i in &rows {
            counts[labels[i]] += 1;
        }
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let split = if pure || rows.len() < 2 {
            None
        } else {
            best_split(columns, labels, self.n_classes, &rows)
        };
        let id = self.nodes.len();
        match split {
            None => {
                let prediction = majority(&counts);
                self.nodes.push(Node::Leaf {
                    class_counts: counts,
                    prediction,
                });
            }
            Some((feature, threshold)) => {
                self.nodes.push(Node::Leaf {
                    class_counts: Vec::new(),
                    prediction: 0,
                });
                let (l, r): (Vec<usize>, Vec<usize>) = rows
                    .into_iter()
                    .partition(|&i| columns[feature][i] <= threshold);
                let left = self.grow(columns, labels, l);
                let right = self.grow(columns, labels, r);
                self.nodes[id] = Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                };
            }
        }
        id
    }

    /// Predicts from a row accessor `value(feature_index)`.
    pub fn predict_with(&self, value: impl Fn(usize) -> f64) -> usize {
        let mut node = 0;
        loop {
            match &self.nodes[node] {
                Node::Leaf { prediction, .. } => return *prediction,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if value(*feature) <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        self.predict_with(|f| row[f])
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Split thresholds as (feature, threshold) pairs.
    pub fn splits(&self) -> Vec<(usize, f64)> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Split {
                    feature, threshold, ..
                } => Some((*feature, *threshold)),
                Node::Leaf { .. } => None,
            })
            .collect()
    }
}

fn majority(counts: &[usize]) -> usize {
    let mut best = 0;
    for (c, &n) in counts.iter().enumerate() {
        if n > counts[best] {
            best = c;
        }
    }
    best
}

/// sum over children of n_child * gini(child), up to the common factor.
fn weighted_gini(counts: &[usize], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let sq: f64 = counts.iter().map(|&c| (c * c) as f64).sum();
    n as f64 - sq / n as f64
}

fn best_split(
    columns: &[&[f64]],
    labels: &[usize],
    n_classes: usize,
    rows: &[usize],
) -> Option<(usize, f64)> {
    let mut best: Option<(f64, usize, f64)> = None;
    let mut order = rows.to_vec();
    let mut total = vec![0usize; n_classes];
    for &i in rows {
        total[labels[i]] += 1;
    }
    for (f, col) in columns.iter().enumerate() {
        order.copy_from_slice(rows);
        order.sort_by(|&a, &b| col[a].total_cmp(&col[b]));
        let mut left = vec![0usize; n_classes];
        let mut right = total.clone();
        for k in 0..order.len() - 1 {
            let i = order[k];
            left[labels[i]] += 1;
            right[labels[i]] -= 1;
            let (a, b) = (col[i], col[order[k + 1]]);
            if !(b > a) {
                continue;
            }
            let score = weighted_gini(&left, k + 1) + weighted_gini(&right, order.len() - k - 1);
            let better = match best {
                None => true,
                Some((s, _, _)) => score < s,
            };
            if better {
                let mid = 0.5 * (a + b);
                let threshold = if mid < b { mid } else { a };
                best = Some((score, f, threshold));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}
