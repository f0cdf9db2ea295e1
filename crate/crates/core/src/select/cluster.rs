use serde::Serialize;

use super::scores::TaskResultMatrix;
use crate::error::{Error, Result};

/// Redundancy clusters over a set of features.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterAssignment {
    /// Cluster id per feature. Ids are numbered by each cluster's lowest member.
    pub cluster_of: Vec<usize>,
    /// Members of each cluster in ascending order.
    pub members: Vec<Vec<usize>>,
    pub gamma: f64,
}

impl ClusterAssignment {
    pub fn n_clusters(&self) -> usize {
        self.members.len()
    }

    /// Largest pairwise distance inside each cluster.
    pub fn max_within(&self, distances: &[Vec<f64>]) -> Vec<f64> {
        self.members
            .iter()
            .map(|m| {
                let mut d = 0.0f64;
                for (a, &i) in m.iter().enumerate() {
                    for &j in &m[a + 1..] {
                        d = d.max(distances[i][j]);
                    }
                }
                d
            })
            .collect()
    }
}

/// How a representative is picked from each cluster.
#[derive(Debug, Clone, PartialEq)]
pub enum RepresentativeMode<'a> {
    BestScore,
    /// One name per cluster, in cluster order.
    CuratedList(&'a [String]),
}

fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return None;
    }
    Some((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

fn shared(a: &[Option<f64>], b: &[Option<f64>]) -> (Vec<f64>, Vec<f64>) {
    a.iter()
        .zip(b)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .unzip()
}

/// Correlation distance between two rows over the tasks where both are computed.
pub fn row_distance(matrix: &TaskResultMatrix, i: usize, j: usize) -> Result<f64> {
    let (a, b) = shared(matrix.row(i), matrix.row(j));
    if a.len() < 3 {
        return Err(Error::InsufficientOverlap(i, j));
    }
    match pearson(&a, &b) {
        Some(r) => Ok(1.0 - r),
        None => {
            let sd = |v: &[f64]| v.iter().all(|x| *x == v[0]);
            Err(Error::ConstantRow(if sd(&a) { i } else { j }))
        }
    }
}

/// Pairwise `1 - r` over features, using pairwise-complete tasks.
pub fn performance_correlation_distance(matrix: &TaskResultMatrix) -> Result<Vec<Vec<f64>>> {
    let f = matrix.n_features();
    let mut d = vec![vec![0.0; f]; f];
    for i in 0..f {
        for j in i + 1..f {
            let v = row_distance(matrix, i, j)?;
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    Ok(d)
}

/// Agglomerative complete-linkage clustering, merging while the closest
/// pair of clusters is within `gamma`.
///
/// Equal merge heights are broken by the clusters' lowest members, compared
/// lexicographically as (first, second).
pub fn complete_linkage_cluster(distances: &[Vec<f64>], gamma: f64) -> ClusterAssignment {
    let n = distances.len();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut link: Vec<Vec<f64>> = distances.to_vec();
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for b in a + 1..n {
                if !alive[b] {
                    continue;
                }
                let d = link[a][b];
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, a, b));
                }
            }
        }
        let Some((d, a, b)) = best else { break };
        if !(d <= gamma) {
            break;
        }
        // slot a keeps the lower minimum member, so slot order tracks member order
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        members[a].sort_unstable();
        alive[b] = false;
        for c in 0..n {
            if alive[c] && c != a {
                let v = link[a][c].max(link[b][c]);
                link[a][c] = v;
                link[c][a] = v;
            }
        }
    }
    let members: Vec<Vec<usize>> = members
        .into_iter()
        .zip(&alive)
        .filter_map(|(m, &keep)| keep.then_some(m))
        .collect();
    let mut cluster_of = vec![0; n];
    for (c, m) in members.iter().enumerate() {
        for &i in m {
            cluster_of[i] = c;
        }
    }
    ClusterAssignment {
        cluster_of,
        members,
        gamma,
    }
}

/// One representative per cluster.
pub fn select_representatives(
    assignment: &ClusterAssignment,
    scores: &[f64],
    names: &[String],
    mode: &RepresentativeMode<'_>,
) -> Result<Vec<usize>> {
    match mode {
        RepresentativeMode::BestScore => Ok(assignment
            .members
            .iter()
            .map(|m| {
                let mut best = m[0];
                for &i in &m[1..] {
                    if scores[i] > scores[best] {
                        best = i;
                    }
                }
                best
            })
            .collect()),
        RepresentativeMode::CuratedList(curated) => {
            if curated.len() != assignment.n_clusters() {
                return Err(Error::InvalidConfig(format!(
                    "{} curated names for {} clusters",
                    curated.len(),
                    assignment.n_clusters()
                )));
            }
            curated
                .iter()
                .zip(&assignment.members)
                .enumerate()
                .map(|(c, (name, m))| {
                    m.iter()
                        .copied()
                        .find(|&i| &names[i] == name)
                        .ok_or_else(|| Error::CuratedNameNotInCluster {
                            name: name.clone(),
                            cluster: c,
                        })
                })
                .collect()
        }
    }
}
