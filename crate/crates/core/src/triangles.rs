//! Triangle and K4 enumeration, the triangle graph H_G, and the
//! correspondence between cuts of H_G and edge 2-colorings of G.

use crate::cut::Cut;
use crate::error::GraphError;
use crate::graph::Graph;

/// A triangle of the host graph, stored both as its sorted vertex triple and
/// as the canonical indices of its three edges `{a,b}`, `{a,c}`, `{b,c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
}

fn intersect_sorted<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let x = a[i];
                    i += 1;
                    j += 1;
                    return Some(x);
                }
            }
        }
        None
    })
}

/// Every triangle exactly once, ordered by sorted vertex triple.
///
/// For each edge `u < v` the third vertex is drawn from the intersection of
/// the upper neighbour lists of `u` and `v`.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        let upper_u = g.upper_neighbors(u);
        for (pos, &v) in upper_u.iter().enumerate() {
            let e_uv = g.edge_index(u, v).expect("edge");
            // w > v, and w's rank in upper(u) gives e_uw directly
            for w in intersect_sorted(&upper_u[pos + 1..], g.upper_neighbors(v)) {
                out.push(Triangle {
                    vertices: [u, v, w],
                    edges: [e_uv, g.edge_index(u, w).expect("edge"), g.edge_index(v, w).expect("edge")],
                });
            }
        }
    }
    out
}

/// Number of triangles.
pub fn triangle_count(g: &Graph) -> usize {
    let mut count = 0;
    for u in 0..g.vertex_count() {
        let upper_u = g.upper_neighbors(u);
        for (pos, &v) in upper_u.iter().enumerate() {
            count += intersect_sorted(&upper_u[pos + 1..], g.upper_neighbors(v)).count();
        }
    }
    count
}

/// Some K4 of `g`, if one exists. Scans adjacent pairs inside N(u) ∩ N(v)
/// for every edge `u < v`, restricted to labels above `v`.
pub fn find_k4(g: &Graph) -> Option<[usize; 4]> {
    let mut common = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.upper_neighbors(u) {
            common.clear();
            common.extend(intersect_sorted(g.upper_neighbors(u), g.upper_neighbors(v)));
            for (i, &w) in common.iter().enumerate() {
                if let Some(&x) = common[i + 1..].iter().find(|&&x| g.has_edge(w, x)) {
                    return Some([u, v, w, x]);
                }
            }
        }
    }
    None
}

pub fn is_k4_free(g: &Graph) -> bool {
    find_k4(g).is_none()
}

/// The triangle graph H_G: one vertex per edge of G, two vertices adjacent
/// when their edges lie in a common triangle.
#[derive(Clone, Debug)]
pub struct TriangleGraph {
    pub host: Graph,
    pub h: Graph,
    pub triangles: Vec<Triangle>,
}

impl TriangleGraph {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// 2·t△(G), the cut size that witnesses a triangle-free 2-coloring.
    pub fn two_t(&self) -> u64 {
        2 * self.triangles.len() as u64
    }
}

/// Builds H_G for a K4-free graph. A K4 is a hard error carrying the clique.
pub fn build_triangle_graph(g: &Graph) -> Result<TriangleGraph, GraphError> {
    if let Some(k4) = find_k4(g) {
        return Err(GraphError::ContainsK4(k4));
    }
    build_triangle_graph_unchecked(g)
}

/// Builds H_G without the K4 check. Two distinct edges of a simple graph lie
/// in at most one common triangle, so H_G stays simple either way; the check
/// only matters for Folkman membership.
pub fn build_triangle_graph_unchecked(g: &Graph) -> Result<TriangleGraph, GraphError> {
    let triangles = enumerate_triangles(g);
    let mut adj = vec![Vec::new(); g.edge_count()];
    for t in &triangles {
        let [a, b, c] = t.edges;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    for (x, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(x.min(w[0]), x.max(w[0])));
        }
    }
    Ok(TriangleGraph { host: g.clone(), h: Graph::from_sorted_adjacency(adj), triangles })
}

/// Edge 2-coloring of a graph, indexed by canonical edge index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<u8>) -> Result<Self, GraphError> {
        if colors.len() != g.edge_count() {
            return Err(GraphError::SizeMismatch { expected: g.edge_count(), got: colors.len() });
        }
        if let Some(&c) = colors.iter().find(|&&c| c > 1) {
            return Err(GraphError::InvalidParameter(format!("color {c} is not 0 or 1")));
        }
        Ok(Self { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Swaps the two color classes.
    pub fn swapped(&self) -> Self {
        Self { colors: self.colors.iter().map(|c| 1 - c).collect() }
    }
}

/// Edge `e` gets color 0 when the cut puts it on the +1 side, else 1.
pub fn coloring_from_cut(tg: &TriangleGraph, cut: &Cut) -> Result<EdgeColoring, GraphError> {
    let m = tg.host.edge_count();
    if cut.assignment.len() != m {
        return Err(GraphError::SizeMismatch { expected: m, got: cut.assignment.len() });
    }
    Ok(EdgeColoring { colors: cut.assignment.iter().map(|&x| u8::from(x < 0)).collect() })
}

/// Inverse of [`coloring_from_cut`].
pub fn cut_from_coloring(tg: &TriangleGraph, coloring: &EdgeColoring) -> Result<Cut, GraphError> {
    let m = tg.host.edge_count();
    if coloring.len() != m {
        return Err(GraphError::SizeMismatch { expected: m, got: coloring.len() });
    }
    let assignment = coloring.colors.iter().map(|&c| if c == 0 { 1 } else { -1 }).collect();
    Ok(Cut::new(&tg.h, assignment).expect("coloring has one entry per vertex of H"))
}

/// Triangles whose three edges share one color, enumerated directly on `g`.
pub fn count_monochromatic_triangles(g: &Graph, coloring: &EdgeColoring) -> Result<usize, GraphError> {
    if coloring.len() != g.edge_count() {
        return Err(GraphError::SizeMismatch { expected: g.edge_count(), got: coloring.len() });
    }
    Ok(enumerate_triangles(g)
        .iter()
        .filter(|t| {
            let [a, b, c] = t.edges.map(|e| coloring.colors[e]);
            a == b && b == c
        })
        .count())
}
