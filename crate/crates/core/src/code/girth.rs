use std::collections::VecDeque;

use super::ParityCheckMatrix;

/// Length of the shortest cycle in the Tanner graph, `None` if acyclic.
pub fn girth(h: &ParityCheckMatrix) -> Option<u32> {
    girth_from_roots(h, 0..h.n())
}

/// Shortest cycle through any of the given variable nodes.
///
/// Every cycle of a Tanner graph visits a variable node, so rooting at all
/// variables yields the girth. For codes with a transitive automorphism
/// (quasi-cyclic codes) one root per orbit suffices.
pub(crate) fn girth_from_roots(
    h: &ParityCheckMatrix,
    roots: impl IntoIterator<Item = usize>,
) -> Option<u32> {
    let n = h.n();
    let nodes = n + h.m();
    // node ids: variables 0..n, checks n..n+m
    let nbrs = |u: usize| -> Box<dyn Iterator<Item = usize> + '_> {
        if u < n {
            Box::new(h.var_nbrs(u).iter().map(move |&j| n + j))
        } else {
            Box::new(h.check_nbrs(u - n).iter().copied())
        }
    };

    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for root in roots {
        for &t in &touched {
            dist[t] = u32::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // any cycle closed from here is at least 2 * dist[u] long
            if 2 * dist[u] >= best {
                break;
            }
            for w in nbrs(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best <= 4 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 4 {
            break;
        }
    }
    (best != u32::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[u8]]) -> ParityCheckMatrix {
        ParityCheckMatrix::from_dense(rows).unwrap()
    }

    #[test]
    fn four_cycle() {
        assert_eq!(girth(&dense(&[&[1, 1], &[1, 1]])), Some(4));
    }

    #[test]
    fn tree_is_acyclic() {
        assert_eq!(girth(&dense(&[&[1, 1, 0], &[0, 1, 1]])), None);
    }

    #[test]
    fn six_cycle() {
        let h = dense(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(girth(&h), Some(6));
    }

    #[test]
    fn eight_cycle() {
        let h = dense(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert_eq!(girth(&h), Some(8));
    }
}
