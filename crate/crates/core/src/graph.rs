//! Simple undirected graphs and the circulant constructions used to build
//! candidate Folkman graphs.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::GraphError;

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted and symmetric. Edges are indexed in
/// lexicographic order of `(min, max)` endpoint pairs; the index of an edge
/// is what the triangle graph uses as its vertex label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    // prefix sums of the number of higher-labeled neighbours, so edge (u, v)
    // with u < v has index upper_start[u] + rank of v among the upper
    // neighbours of u
    upper_start: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Cycle C_n (n ≥ 3).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let mut upper_start = Vec::with_capacity(adj.len() + 1);
        let mut acc = 0;
        upper_start.push(0);
        for (u, list) in adj.iter().enumerate() {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            acc += list.len() - list.partition_point(|&v| v <= u);
            upper_start.push(acc);
        }
        Self { adj, upper_start }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        *self.upper_start.last().unwrap_or(&0)
    }

    /// Sorted neighbour list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Neighbours of `u` with a larger label.
    pub fn upper_neighbors(&self, u: usize) -> &[usize] {
        let list = &self.adj[u];
        &list[list.partition_point(|&v| v <= u)..]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in the canonical lexicographic ordering.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if b >= self.adj.len() {
            return None;
        }
        let upper = self.upper_neighbors(a);
        upper
            .binary_search(&b)
            .ok()
            .map(|pos| self.upper_start[a] + pos)
    }

    /// Edges `(u, v)` with `u < v` in canonical (index) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.adj.len()).flat_map(move |u| self.upper_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Endpoints of every edge, indexed by edge index.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Sorted list of distinct vertex degrees paired with their multiplicity.
    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for u in 0..self.adj.len() {
            *counts.entry(self.degree(u)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Subgraph induced on `keep` (ascending, distinct), relabeled `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut new_label = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_label[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (new_label[w] != usize::MAX).then_some(new_label[w]))
                    .collect()
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }
}

/// Connection set of a circulant graph on Z_n: nonzero residues closed under
/// negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    modulus: usize,
    residues: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(modulus: usize, residues: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        if modulus < 3 {
            return Err(GraphError::InvalidParameter(format!("modulus {modulus} must be at least 3")));
        }
        let set: BTreeSet<usize> = residues.into_iter().map(|s| s % modulus).collect();
        if set.contains(&0) {
            return Err(GraphError::InvalidParameter("0 cannot be a connection residue".into()));
        }
        if let Some(&s) = set.iter().find(|&&s| !set.contains(&(modulus - s))) {
            return Err(GraphError::NotSymmetric { modulus, residue: s });
        }
        Ok(Self { modulus, residues: set.into_iter().collect() })
    }

    /// Nonzero r-th power residues {α^r mod n}. Enumerates every α, so `n`
    /// need not be prime.
    pub fn residues_of_power(n: usize, r: u32) -> Result<Self, GraphError> {
        if n < 3 || r == 0 {
            return Err(GraphError::InvalidParameter(format!("need n >= 3 and r >= 1, got n={n}, r={r}")));
        }
        let set: BTreeSet<usize> = (1..n).map(|a| pow_mod(a, r as u64, n)).filter(|&x| x != 0).collect();
        if !set.contains(&(n - 1)) {
            return Err(GraphError::MinusOneNotInSet { modulus: n, detail: format!("-1 is not an {r}-th power residue") });
        }
        Self::new(n, set)
    }

    /// Cyclic subgroup {s^i mod n : 0 ≤ i < ord(s)} of the unit group.
    pub fn powers_of(n: usize, s: usize) -> Result<Self, GraphError> {
        if n < 3 || s == 0 || s >= n {
            return Err(GraphError::InvalidParameter(format!("need 1 <= s < n and n >= 3, got n={n}, s={s}")));
        }
        if s.gcd(&n) != 1 {
            return Err(GraphError::InvalidParameter(format!("gcd({s}, {n}) != 1")));
        }
        let mut set = vec![1usize];
        let mut x = s % n;
        while x != 1 {
            set.push(x);
            x = mul_mod(x, s, n);
        }
        if !set.contains(&(n - 1)) {
            return Err(GraphError::MinusOneNotInSet {
                modulus: n,
                detail: format!("-1 is not a power of {s} (order {})", set.len()),
            });
        }
        Self::new(n, set)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// The circulant graph Cay(Z_n, S).
    pub fn circulant(&self) -> Graph {
        let n = self.modulus;
        let adj = (0..n)
            .map(|u| {
                let mut list: Vec<usize> = self.residues.iter().map(|&s| (u + s) % n).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }
}

fn mul_mod(a: usize, b: usize, n: usize) -> usize {
    ((a as u128 * b as u128) % n as u128) as usize
}

fn pow_mod(mut base: usize, mut exp: u64, n: usize) -> usize {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Residue circulant G(n, r): u ~ v iff u − v is a nonzero r-th power mod n.
pub fn make_residue_circulant(n: usize, r: u32) -> Result<Graph, GraphError> {
    Ok(ConnectionSet::residues_of_power(n, r)?.circulant())
}

/// Power circulant L(n, s): u ~ v iff u − v lies in the cyclic group generated by s.
pub fn make_power_circulant(n: usize, s: usize) -> Result<Graph, GraphError> {
    Ok(ConnectionSet::powers_of(n, s)?.circulant())
}

/// A graph together with the original label of each of its vertices.
#[derive(Clone, Debug)]
pub struct Relabeled {
    pub graph: Graph,
    /// `original[new] = old`
    pub original: Vec<usize>,
}

/// Removes C(d, k) = {i·d mod n : 0 ≤ i < k} and compacts the remaining
/// labels in ascending order.
pub fn delete_progression(g: &Graph, d: usize, k: usize) -> Result<Relabeled, GraphError> {
    let n = g.vertex_count();
    if k > n {
        return Err(GraphError::InvalidParameter(format!("cannot delete {k} of {n} vertices")));
    }
    let mut removed = vec![false; n];
    if n > 0 {
        for i in 0..k {
            removed[mul_mod(i, d, n)] = true;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    Ok(Relabeled { graph: g.induced(&keep), original: keep })
}

/// Adds a vertex labeled `n` joined to each of `targets`.
pub fn add_cone_vertex(g: &Graph, targets: &[usize]) -> Result<Graph, GraphError> {
    let n = g.vertex_count();
    let mut sorted = targets.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateEdge(w[0], n));
    }
    if let Some(&t) = sorted.iter().find(|&&t| t >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: t, n });
    }
    let mut adj: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).to_vec()).collect();
    for &t in &sorted {
        adj[t].push(n);
    }
    adj.push(sorted);
    Ok(Graph::from_sorted_adjacency(adj))
}
