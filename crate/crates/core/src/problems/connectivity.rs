//! Connectivity of simple undirected graphs on `v` labelled vertices.
//!
//! A graph is a binary word with one position per unordered pair `i < j`,
//! pairs in lexicographic order. Solutions are the spanning trees of the
//! complete graph; a graph is in region `T` when it contains every edge of `T`.

use crate::error::{Error, Result};
use crate::problems::ProblemSlice;
use crate::string::{Alphabet, Letter};
use crate::universe::{Slice, Word};

pub const MAX_VERTICES: usize = 6;

/// Vertex pairs `(i, j)`, `i < j`, in position order.
pub fn edge_positions(vertices: usize) -> Vec<(usize, usize)> {
    (1..=vertices)
        .flat_map(|i| (i + 1..=vertices).map(move |j| (i, j)))
        .collect()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// `false` if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn connected(vertices: usize, edges: &[(usize, usize)], present: impl Fn(usize) -> bool) -> bool {
    let mut sets = DisjointSets::new(vertices + 1);
    let mut components = vertices;
    for (e, &(i, j)) in edges.iter().enumerate() {
        if present(e) && sets.union(i, j) {
            components -= 1;
        }
    }
    components == 1
}

/// Spanning trees of `K_v` as sorted edge-index lists, lexicographic.
fn spanning_trees(vertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(vertices - 1);
    choose_trees(vertices, edges, 0, &mut chosen, &mut out);
    out
}

fn choose_trees(
    vertices: usize,
    edges: &[(usize, usize)],
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == vertices - 1 {
        let mut sets = DisjointSets::new(vertices + 1);
        if chosen.iter().all(|&e| sets.union(edges[e].0, edges[e].1)) {
            out.push(chosen.clone());
        }
        return;
    }
    for e in start..edges.len() {
        chosen.push(e);
        choose_trees(vertices, edges, e + 1, chosen, out);
        chosen.pop();
    }
}

pub fn connectivity_problem(vertices: usize) -> Result<ProblemSlice> {
    if !(2..=MAX_VERTICES).contains(&vertices) {
        return Err(Error::Validation(format!(
            "vertex count must be between 2 and {MAX_VERTICES}, got {vertices}"
        )));
    }
    let edges = edge_positions(vertices);
    let slice = Slice::full(Alphabet::binary(), edges.len())?
        .relabel(format!("graphs on {vertices} vertices"));
    let trees = spanning_trees(vertices, &edges);
    let solutions = trees
        .iter()
        .map(|t| {
            t.iter()
                .map(|&e| format!("{}{}", edges[e].0, edges[e].1))
                .collect::<Vec<_>>()
                .join("-")
        })
        .collect();
    let has = |x: &Word, e: usize| x.letters()[e] == Letter(1);
    let f_edges = edges.clone();
    ProblemSlice::new(
        slice,
        format!("connectivity {vertices}"),
        move |x| connected(vertices, &f_edges, |e| has(x, e)),
        solutions,
        move |x, i| trees[i].iter().all(|&e| has(x, e)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_order() {
        assert_eq!(edge_positions(3), [(1, 2), (1, 3), (2, 3)]);
        assert_eq!(edge_positions(4).len(), 6);
    }

    #[test]
    fn tree_counts_follow_cayley() {
        for v in 2..=5 {
            let trees = spanning_trees(v, &edge_positions(v));
            assert_eq!(trees.len(), v.pow(v as u32 - 2), "v={v}");
        }
    }

    #[test]
    fn three_vertices() {
        let p = connectivity_problem(3).unwrap();
        assert_eq!(p.slice().len(), 8);
        let f: Vec<String> = p.target_set().iter().map(|w| w.render(p.slice().alphabet())).collect();
        assert_eq!(f, ["011", "101", "110", "111"]);
        assert_eq!(p.solutions()[0], "12-13");
        assert!(p.satisfies(&p.slice().parse_word("110").unwrap(), 0));
    }

    #[test]
    fn two_vertices() {
        let p = connectivity_problem(2).unwrap();
        let f: Vec<String> = p.target_set().iter().map(|w| w.render(p.slice().alphabet())).collect();
        assert_eq!(f, ["1"]);
        assert_eq!(p.alpha(), 1);
    }

    #[test]
    fn vertex_bounds() {
        assert!(connectivity_problem(1).is_err());
        assert!(connectivity_problem(MAX_VERTICES + 1).is_err());
    }
}
