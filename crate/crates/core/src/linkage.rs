//! Agglomerative clustering with the average linkage criterion.
//!
//! The implementation keeps a dense distance matrix and applies the
//! Lance-Williams update after each merge, which is O(n³) overall and fine at
//! the scale of a few hundred terms. Clusters are identified by their smallest
//! member index; on equal distances the lexicographically smallest pair of
//! identifiers merges first. Distances within [`TIE_EPSILON`] count as equal,
//! so rounding noise (e.g. between duplicate points) cannot reorder merges.

pub const TIE_EPSILON: f64 = 1e-12;

/// One merge step. `left < right` are cluster identifiers (smallest member
/// index); the merged cluster keeps `left`.
#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub observations: usize,
    pub merges: Vec<Merge>,
}

/// Builds the full dendrogram from a symmetric distance matrix.
pub fn average_linkage(dist: &[Vec<f64>]) -> Dendrogram {
    let n = dist.len();
    let mut d: Vec<Vec<f64>> = dist.to_vec();
    let mut size = vec![1usize; n];
    let mut active = vec![true; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for _ in 1..n {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in (0..n).filter(|&i| active[i]) {
            for j in (i + 1..n).filter(|&j| active[j]) {
                if best.is_none_or(|(_, _, b)| d[i][j] < b - TIE_EPSILON) {
                    best = Some((i, j, d[i][j]));
                }
            }
        }
        let (i, j, distance) = best.expect("at least two active clusters");
        let (si, sj) = (size[i] as f64, size[j] as f64);
        for k in (0..n).filter(|&k| active[k] && k != i && k != j) {
            let merged = (si * d[i][k] + sj * d[j][k]) / (si + sj);
            d[i][k] = merged;
            d[k][i] = merged;
        }
        active[j] = false;
        size[i] += size[j];
        merges.push(Merge {
            left: i,
            right: j,
            distance,
            size: size[i],
        });
    }
    Dendrogram {
        observations: n,
        merges,
    }
}

impl Dendrogram {
    /// Applies the first `steps` merges and returns the clusters, each sorted,
    /// ordered by smallest member.
    pub fn clusters_after(&self, steps: usize) -> Vec<Vec<usize>> {
        let mut members: Vec<Option<Vec<usize>>> = (0..self.observations).map(|i| Some(vec![i])).collect();
        for m in self.merges.iter().take(steps) {
            let right = members[m.right].take().expect("right cluster is active");
            members[m.left].as_mut().expect("left cluster is active").extend(right);
        }
        members
            .into_iter()
            .flatten()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// Cuts the tree into `k` clusters.
    pub fn cut_to(&self, k: usize) -> Vec<Vec<usize>> {
        let k = k.clamp(1.min(self.observations), self.observations);
        self.clusters_after(self.observations - k)
    }

    /// Keeps every merge whose linkage distance is at most `max_distance`.
    /// Average linkage is monotone, so this is a prefix of the merge list.
    pub fn cut_at(&self, max_distance: f64) -> Vec<Vec<usize>> {
        let steps = self
            .merges
            .iter()
            .take_while(|m| m.distance <= max_distance + 1e-12)
            .count();
        self.clusters_after(steps)
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn distance_matrix<T>(items: &[T], metric: impl Fn(&T, &T) -> f64) -> Vec<Vec<f64>> {
    let n = items.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = metric(&items[i], &items[j]);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_of_points() {
        let pts = [0.0, 1.0, 5.0, 6.5];
        let d = distance_matrix(&pts, |a: &f64, b: &f64| (a - b).abs());
        let tree = average_linkage(&d);
        assert_eq!(tree.merges[0], Merge { left: 0, right: 1, distance: 1.0, size: 2 });
        assert_eq!(tree.merges[1], Merge { left: 2, right: 3, distance: 1.5, size: 2 });
        // mean of |{0,1} x {5,6.5}| = (5 + 6.5 + 4 + 5.5) / 4
        assert!((tree.merges[2].distance - 5.25).abs() < 1e-12);
        assert_eq!(tree.cut_to(2), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(tree.cut_at(1.2), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn ties_merge_smallest_pair_first() {
        let pts = [0.0, 1.0, 2.0];
        let d = distance_matrix(&pts, |a: &f64, b: &f64| (a - b).abs());
        let tree = average_linkage(&d);
        assert_eq!((tree.merges[0].left, tree.merges[0].right), (0, 1));
    }

    #[test]
    fn degenerate_sizes() {
        assert!(average_linkage(&[]).merges.is_empty());
        let one = average_linkage(&[vec![0.0]]);
        assert_eq!(one.cut_to(3), vec![vec![0]]);
    }
}
