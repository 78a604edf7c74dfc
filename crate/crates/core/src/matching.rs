//! Maximum bipartite matching (Hopcroft–Karp) and the König vertex cover.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// A maximum matching between `0..left` and `0..right`.
#[derive(Debug, Clone)]
pub struct Matching {
    pub pair_left: Vec<Option<usize>>,
    pub pair_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pair_left.iter().flatten().count()
    }
}

/// Hopcroft–Karp on adjacency lists `adj[l]` of right vertices.
/// Neighbours are scanned in list order, so the result is deterministic.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Matching {
    let left = adj.len();
    let mut pl = vec![FREE; left];
    let mut pr = vec![FREE; right];
    let mut dist = vec![0usize; left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if pl[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = pr[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left {
            if pl[l] == FREE {
                augment(adj, l, &mut pl, &mut pr, &mut dist);
            }
        }
    }
    Matching {
        pair_left: pl.into_iter().map(|r| (r != FREE).then_some(r)).collect(),
        pair_right: pr.into_iter().map(|l| (l != FREE).then_some(l)).collect(),
    }
}

fn augment(adj: &[Vec<usize>], l: usize, pl: &mut [usize], pr: &mut [usize], dist: &mut [usize]) -> bool {
    for &r in &adj[l] {
        let m = pr[r];
        if m == FREE || (dist[m] == dist[l] + 1 && augment(adj, m, pl, pr, dist)) {
            pl[l] = r;
            pr[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// König: from a maximum matching, a minimum vertex cover as
/// `(left vertices, right vertices)`.
pub fn konig_cover(adj: &[Vec<usize>], right: usize, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let left = adj.len();
    // Alternating reachability from free left vertices.
    let mut seen_l = vec![false; left];
    let mut seen_r = vec![false; right];
    let mut stack: Vec<usize> = (0..left).filter(|&l| m.pair_left[l].is_none()).collect();
    for &l in &stack {
        seen_l[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if !seen_r[r] {
                seen_r[r] = true;
                if let Some(l2) = m.pair_right[r] {
                    if !seen_l[l2] {
                        seen_l[l2] = true;
                        stack.push(l2);
                    }
                }
            }
        }
    }
    let cover_left = seen_l.iter().map(|&s| !s).collect();
    (cover_left, seen_r)
}
