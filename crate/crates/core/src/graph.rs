use crate::code::ParityCheckMatrix;

/// Edge-indexed view of a Tanner graph for message-passing decoders.
///
/// Edges are numbered check by check: the edges of check `j` occupy
/// `check_offsets[j]..check_offsets[j + 1]`, in the order of its
/// neighborhood. `var_edges` lists, per variable, the ids of its edges.
#[derive(Debug, Clone)]
pub(crate) struct EdgeGraph {
    pub check_offsets: Vec<usize>,
    pub edge_var: Vec<usize>,
    pub var_offsets: Vec<usize>,
    pub var_edges: Vec<usize>,
}

impl EdgeGraph {
    pub fn new(h: &ParityCheckMatrix) -> Self {
        let mut check_offsets = Vec::with_capacity(h.m() + 1);
        let mut edge_var = Vec::with_capacity(h.edges());
        check_offsets.push(0);
        for row in h.checks() {
            edge_var.extend_from_slice(row);
            check_offsets.push(edge_var.len());
        }
        let mut var_offsets = vec![0; h.n() + 1];
        for &i in &edge_var {
            var_offsets[i + 1] += 1;
        }
        for i in 0..h.n() {
            var_offsets[i + 1] += var_offsets[i];
        }
        let mut fill = var_offsets.clone();
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &i) in edge_var.iter().enumerate() {
            var_edges[fill[i]] = e;
            fill[i] += 1;
        }
        EdgeGraph {
            check_offsets,
            edge_var,
            var_offsets,
            var_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.var_offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.check_offsets.len() - 1
    }

    #[inline]
    pub fn check_edges(&self, j: usize) -> std::ops::Range<usize> {
        self.check_offsets[j]..self.check_offsets[j + 1]
    }

    #[inline]
    pub fn var_edges(&self, i: usize) -> &[usize] {
        &self.var_edges[self.var_offsets[i]..self.var_offsets[i + 1]]
    }

    /// True when every check has even parity over `bits`.
    pub fn satisfied(&self, bits: &[u8]) -> bool {
        (0..self.m()).all(|j| {
            self.check_edges(j)
                .fold(0u8, |acc, e| acc ^ bits[self.edge_var[e]])
                == 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_numbering() {
        let h = ParityCheckMatrix::from_dense(&[[1u8, 1, 1, 0], [0, 1, 1, 1]]).unwrap();
        let g = EdgeGraph::new(&h);
        assert_eq!(g.edge_var, vec![0, 1, 2, 1, 2, 3]);
        assert_eq!(g.check_edges(1), 3..6);
        assert_eq!(g.var_edges(1), &[1, 3]);
        assert_eq!(g.var_edges(3), &[5]);
        assert!(g.satisfied(&[1, 1, 0, 1]));
        assert!(!g.satisfied(&[1, 0, 0, 0]));
    }
}
