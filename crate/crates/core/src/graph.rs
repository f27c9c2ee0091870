//! Connected multigraphs, maximum spanning trees, and the fundamental
//! cycle / cutset incidence structure.

use crate::bitset::{masked_parity, words_for, EdgeSet};
use crate::error::{Error, Result};

/// An immutable connected multigraph.
///
/// Vertices are `0..vertex_count`; edges are identified by their dense index
/// `0..edge_count` in construction order. Parallel edges are allowed,
/// self-loops are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph and verifies connectivity.
    pub fn new(vertex_count: usize, endpoints: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        if vertex_count > 1 && endpoints.is_empty() {
            return Err(Error::EmptyEdgeList { vertex_count });
        }
        for (edge, &(u, v)) in endpoints.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge, vertex: u });
            }
        }
        let mut uf = UnionFind::new(vertex_count);
        for &(u, v) in endpoints {
            uf.union(u, v);
        }
        let components = uf.component_count();
        if components > 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(Self {
            vertex_count,
            edges: endpoints.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Rank of the cycle space, `|E| - |V| + 1`.
    pub fn cotree_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }
}

/// Union-find with path compression and union by rank.
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `x` and `y` were in different components.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }

    fn component_count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&v| self.find(v) == v)
            .count()
    }
}

/// A spanning tree `T` / cospanning tree `T̄` split of a graph, together with
/// the incidence structure between fundamental cycles and cutsets.
///
/// The incidence matrix `M` has one row per branch and one column per chord,
/// with `M[b][c] = 1` iff branch `b` lies on the fundamental cycle of chord
/// `c` — equivalently, iff chord `c` lies on the fundamental cutset of branch
/// `b`. Both samplers read the same matrix, one by columns and one by rows.
#[derive(Debug, Clone)]
pub struct TreePartition {
    graph: Graph,
    branch_ids: Vec<usize>,
    chord_ids: Vec<usize>,
    /// role[edge]: branch position or chord position.
    role: Vec<Role>,
    root: usize,
    /// BFS order over the tree, root first.
    pub(crate) traversal: Vec<usize>,
    /// parent_vertex[root] == root.
    pub(crate) parent_vertex: Vec<usize>,
    /// Edge id connecting each non-root vertex to its parent.
    pub(crate) parent_edge: Vec<usize>,
    /// Per chord position: mask over branch positions (column of M).
    cycle_cols: Vec<Vec<u64>>,
    /// Per branch position: mask over chord positions (row of M).
    cut_rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy)]
enum Role {
    Branch(u32),
    Chord(u32),
}

/// Builds the spanning tree of maximum total weight.
///
/// Greedy edge selection in descending weight order, ties broken by the
/// smaller edge id, so the partition is deterministic. `weights` must hold
/// one finite value per edge.
pub fn maximum_spanning_tree(graph: &Graph, weights: &[f64]) -> TreePartition {
    assert_eq!(
        weights.len(),
        graph.edge_count(),
        "need one weight per edge"
    );
    assert!(
        weights.iter().all(|w| w.is_finite()),
        "weights must be finite"
    );

    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by(|&a, &b| {
        weights[b]
            .partial_cmp(&weights[a])
            .expect("finite weights compare")
            .then(a.cmp(&b))
    });

    let mut uf = UnionFind::new(graph.vertex_count());
    let mut is_branch = vec![false; graph.edge_count()];
    let mut picked = 0;
    for &e in &order {
        if picked == graph.vertex_count() - 1 {
            break;
        }
        let (u, v) = graph.endpoints(e);
        if uf.union(u, v) {
            is_branch[e] = true;
            picked += 1;
        }
    }
    debug_assert_eq!(picked, graph.vertex_count() - 1);

    TreePartition::from_branch_flags(graph.clone(), &is_branch)
}

impl TreePartition {
    fn from_branch_flags(graph: Graph, is_branch: &[bool]) -> Self {
        let mut branch_ids = Vec::new();
        let mut chord_ids = Vec::new();
        let mut role = Vec::with_capacity(graph.edge_count());
        for (e, &b) in is_branch.iter().enumerate() {
            if b {
                role.push(Role::Branch(branch_ids.len() as u32));
                branch_ids.push(e);
            } else {
                role.push(Role::Chord(chord_ids.len() as u32));
                chord_ids.push(e);
            }
        }

        // Root the tree at vertex 0 and record a BFS traversal.
        let n = graph.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for &e in &branch_ids {
            let (u, v) = graph.endpoints(e);
            adjacency[u].push((e, v));
            adjacency[v].push((e, u));
        }
        let root = 0;
        let mut parent_vertex = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut traversal = Vec::with_capacity(n);
        parent_vertex[root] = root;
        traversal.push(root);
        let mut head = 0;
        while head < traversal.len() {
            let u = traversal[head];
            head += 1;
            for &(e, v) in &adjacency[u] {
                if parent_vertex[v] == usize::MAX {
                    parent_vertex[v] = u;
                    parent_edge[v] = e;
                    traversal.push(v);
                }
            }
        }
        debug_assert_eq!(traversal.len(), n);

        // Branch-position bitmask of the tree path from each vertex to the
        // root; the path between two vertices is the XOR of their root paths.
        let branch_words = words_for(branch_ids.len());
        let mut root_path = vec![vec![0u64; branch_words]; n];
        for &v in traversal.iter().skip(1) {
            let p = parent_vertex[v];
            let mut mask = root_path[p].clone();
            if let Role::Branch(pos) = role[parent_edge[v]] {
                mask[pos as usize / 64] |= 1 << (pos as usize % 64);
            }
            root_path[v] = mask;
        }

        let mut cycle_cols = Vec::with_capacity(chord_ids.len());
        for &c in &chord_ids {
            let (u, v) = graph.endpoints(c);
            let mut col = root_path[u].clone();
            for (w, o) in col.iter_mut().zip(&root_path[v]) {
                *w ^= o;
            }
            cycle_cols.push(col);
        }

        let chord_words = words_for(chord_ids.len());
        let mut cut_rows = vec![vec![0u64; chord_words]; branch_ids.len()];
        for (cpos, col) in cycle_cols.iter().enumerate() {
            for (bpos, row) in cut_rows.iter_mut().enumerate() {
                if col[bpos / 64] >> (bpos % 64) & 1 == 1 {
                    row[cpos / 64] |= 1 << (cpos % 64);
                }
            }
        }

        Self {
            graph,
            branch_ids,
            chord_ids,
            role,
            root,
            traversal,
            parent_vertex,
            parent_edge,
            cycle_cols,
            cut_rows,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Edge ids of the spanning tree, ascending.
    pub fn branch_ids(&self) -> &[usize] {
        &self.branch_ids
    }

    /// Edge ids of the cospanning tree, ascending.
    pub fn chord_ids(&self) -> &[usize] {
        &self.chord_ids
    }

    pub fn branch_count(&self) -> usize {
        self.branch_ids.len()
    }

    pub fn chord_count(&self) -> usize {
        self.chord_ids.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn is_branch(&self, edge: usize) -> bool {
        matches!(self.role[edge], Role::Branch(_))
    }

    pub fn is_chord(&self, edge: usize) -> bool {
        matches!(self.role[edge], Role::Chord(_))
    }

    /// Position of `edge` within the ascending branch list, if a branch.
    pub fn branch_position(&self, edge: usize) -> Option<usize> {
        match self.role[edge] {
            Role::Branch(p) => Some(p as usize),
            Role::Chord(_) => None,
        }
    }

    /// Position of `edge` within the ascending chord list, if a chord.
    pub fn chord_position(&self, edge: usize) -> Option<usize> {
        match self.role[edge] {
            Role::Chord(p) => Some(p as usize),
            Role::Branch(_) => None,
        }
    }

    /// True when this partition was built over a graph equal to `graph`.
    pub fn is_partition_of(&self, graph: &Graph) -> bool {
        self.graph == *graph
    }

    /// The chord plus the unique tree path between its endpoints.
    pub fn fundamental_cycle(&self, chord: usize) -> Result<EdgeSet> {
        let Some(cpos) = self.chord_position(chord) else {
            return Err(Error::NotAChord { edge: chord });
        };
        let mut set = EdgeSet::new(self.graph.edge_count());
        set.insert(chord);
        let col = &self.cycle_cols[cpos];
        for (bpos, &b) in self.branch_ids.iter().enumerate() {
            if col[bpos / 64] >> (bpos % 64) & 1 == 1 {
                set.insert(b);
            }
        }
        Ok(set)
    }

    /// The branch plus all chords whose fundamental cycle contains it.
    pub fn fundamental_cutset(&self, branch: usize) -> Result<EdgeSet> {
        let Some(bpos) = self.branch_position(branch) else {
            return Err(Error::NotABranch { edge: branch });
        };
        let mut set = EdgeSet::new(self.graph.edge_count());
        set.insert(branch);
        let row = &self.cut_rows[bpos];
        for (cpos, &c) in self.chord_ids.iter().enumerate() {
            if row[cpos / 64] >> (cpos % 64) & 1 == 1 {
                set.insert(c);
            }
        }
        Ok(set)
    }

    /// Parity over branch-position `bits` of the fundamental cycle of the
    /// chord at `chord_pos`; this is the chord value forced by cycle parity.
    pub(crate) fn chord_parity(&self, branch_bits: &[u64], chord_pos: usize) -> bool {
        masked_parity(branch_bits, &self.cycle_cols[chord_pos])
    }

    /// Parity over chord-position `bits` of the fundamental cutset of the
    /// branch at `branch_pos`; this is the branch value forced by cutset
    /// parity.
    pub(crate) fn branch_parity(&self, chord_bits: &[u64], branch_pos: usize) -> bool {
        masked_parity(chord_bits, &self.cut_rows[branch_pos])
    }
}
