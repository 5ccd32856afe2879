//! Undirected simple graphs, the generalized Petersen and I-graph families,
//! and the distance machinery the rest of the crate is built on.

use std::collections::VecDeque;
use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Vertex id. Ids are contiguous in `0..n_vertices`.
pub type Vertex = usize;

/// Which rim of a Petersen-like graph a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rim {
    A,
    B,
}

impl Rim {
    pub fn other(self) -> Rim {
        match self {
            Rim::A => Rim::B,
            Rim::B => Rim::A,
        }
    }
}

impl fmt::Display for Rim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rim::A => write!(f, "a"),
            Rim::B => write!(f, "b"),
        }
    }
}

/// Rim and (possibly negative, for cover windows) index of a labeled vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub rim: Rim,
    pub index: i64,
}

impl Label {
    pub fn new(rim: Rim, index: i64) -> Self {
        Label { rim, index }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.rim, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GpParams {
    pub n: usize,
    pub k: usize,
}

impl GpParams {
    pub fn new(n: usize, k: usize) -> Result<Self, GraphError> {
        if n < 5 || k < 1 || 2 * k >= n {
            return Err(GraphError::ParamDomain(format!(
                "GP(n,k) requires n >= 5 and 1 <= k < n/2, got n={n}, k={k}"
            )));
        }
        Ok(GpParams { n, k })
    }
}

impl fmt::Display for GpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP({},{})", self.n, self.k)
    }
}

/// Parameters of I(n, j, k): `j` steps along the A rim, `k` along the B rim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IGraphParams {
    pub n: usize,
    pub j: usize,
    pub k: usize,
}

impl IGraphParams {
    pub fn new(n: usize, j: usize, k: usize) -> Result<Self, GraphError> {
        if n < 5 || j == 0 || k == 0 || 2 * j >= n || 2 * k >= n {
            return Err(GraphError::ParamDomain(format!(
                "I(n,j,k) requires n >= 5 and 0 < j,k < n/2, got n={n}, j={j}, k={k}"
            )));
        }
        Ok(IGraphParams { n, j, k })
    }

    pub fn is_connected(&self) -> bool {
        is_connected_igraph(*self)
    }
}

impl From<GpParams> for IGraphParams {
    fn from(p: GpParams) -> Self {
        IGraphParams {
            n: p.n,
            j: 1,
            k: p.k,
        }
    }
}

impl fmt::Display for IGraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({},{},{})", self.n, self.j, self.k)
    }
}

/// Where a graph came from. Carried along so bound calculators and
/// strategies can recover the family parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Generic,
    Gp(GpParams),
    IGraph(IGraphParams),
    /// Finite truncation `lo..=hi` of the cyclic cover of I(n, j, k).
    CoverWindow {
        base: IGraphParams,
        lo: i64,
        hi: i64,
    },
}

/// Immutable undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    labels: Option<Vec<Label>>,
    family: Family,
    n_edges: usize,
}

/// Length of a shortest cycle, or `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n_vertices: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(u, v) in edges {
            if u >= n_vertices || v >= n_vertices {
                return Err(GraphError::InvalidVertex(u.max(v)));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u, w[0]));
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
            family: Family::Generic,
            n_edges: edges.len(),
        })
    }

    /// Builds a labeled graph whose edges may repeat (they are deduplicated).
    /// Used by the family constructors, where e.g. `j = n/2` style wraparound
    /// cannot occur but deduplication keeps the invariant unconditional.
    pub(crate) fn from_labeled_edges(
        labels: Vec<Label>,
        family: Family,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Self {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert_ne!(u, v);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut twice = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adjacency,
            labels: Some(labels),
            family,
            n_edges: twice / 2,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n_vertices() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<Label> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n_vertices() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Id of `a_index` / `b_index` in a GP or I-graph (`a_i -> i`, `b_i -> n + i`).
    /// The index is reduced modulo `n`.
    pub fn family_vertex(&self, rim: Rim, index: i64) -> Option<Vertex> {
        let n = match self.family {
            Family::Gp(p) => p.n,
            Family::IGraph(p) => p.n,
            _ => return None,
        };
        let i = index.rem_euclid(n as i64) as usize;
        Some(match rim {
            Rim::A => i,
            Rim::B => n + i,
        })
    }

    /// Parameters `(n, j, k)` for GP (with `j = 1`) and I-graphs.
    pub fn igraph_params(&self) -> Option<IGraphParams> {
        match self.family {
            Family::Gp(p) => Some(p.into()),
            Family::IGraph(p) => Some(p),
            _ => None,
        }
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn distances(&self, source: Vertex) -> Result<Vec<Option<u32>>, GraphError> {
        self.check_vertex(source)?;
        Ok(self
            .bfs(source)
            .into_iter()
            .map(|d| (d != u32::MAX).then_some(d))
            .collect())
    }

    /// Raw BFS with `u32::MAX` for unreachable vertices.
    pub(crate) fn bfs(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n_vertices()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1;
            for &w in &self.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = du;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances, `u32::MAX` for unreachable pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.n_vertices()).map(|v| self.bfs(v)).collect()
    }

    pub fn eccentricity(&self, v: Vertex) -> Result<Option<u32>, GraphError> {
        let d = self.distances(v)?;
        Ok(d.iter()
            .copied()
            .collect::<Option<Vec<_>>>()
            .and_then(|d| d.into_iter().max()))
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n_vertices()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices() > 0 && self.components().1 == 1
    }

    /// Length of a shortest cycle. BFS from every root; a non-tree edge
    /// `(u, w)` closes a walk of length `d(u) + d(w) + 1`, and the minimum
    /// over all roots is attained by an actual cycle.
    pub fn girth(&self) -> Girth {
        let n = self.n_vertices();
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adjacency[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == u32::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Degree and girth lower bounds on the cop number, plus the family
    /// upper bound where one is known.
    pub fn lower_bounds(&self) -> BoundReport {
        let min_degree = self.min_degree() as u32;
        let girth = self.girth();
        let aigner_fromme_lb = if girth.at_least(5) {
            min_degree.max(1)
        } else {
            1
        };
        let frankl_lb = frankl_bound(min_degree, girth);
        let upper_bound = match self.family {
            Family::Gp(_) => Some(4),
            Family::IGraph(p) if p.j == 1 => Some(4),
            Family::IGraph(p) if is_connected_igraph(p) => Some(5),
            _ => None,
        };
        BoundReport {
            min_degree,
            girth,
            aigner_fromme_lb,
            frankl_lb,
            upper_bound,
        }
    }

    /// Writes the `p <n> <m>` edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {} {}\n", self.n_vertices(), self.n_edges());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the `p <n> <m>` edge-list format. Lines starting with `#`
    /// and blank lines are ignored.
    pub fn parse_edge_list(reader: impl BufRead) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.map_err(|e| GraphError::Parse {
                line: lineno,
                msg: e.to_string(),
            })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: lineno,
                    msg: format!("expected a non-negative integer, found `{s}`"),
                })
            };
            match (header, tokens.as_slice()) {
                (None, ["p", n, m]) => header = Some((num(n)?, num(m)?)),
                (None, _) => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "expected header `p <n_vertices> <n_edges>`".into(),
                    })
                }
                (Some(_), [u, v]) => edges.push((num(u)?, num(v)?)),
                (Some(_), _) => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "expected an edge `u v`".into(),
                    })
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }
}

/// `(delta - 1)^t + 1` for the largest admissible `t`, or 1 when no `t >= 1`
/// applies.
fn frankl_bound(delta: u32, girth: Girth) -> u32 {
    if delta < 2 {
        return 1;
    }
    let max_t = match girth {
        Girth::Finite(g) => (g + 3) / 8,
        // Finite forests have leaves, so this is unreachable with delta >= 2;
        // cap anyway to keep the arithmetic finite.
        Girth::Infinite => 16,
    };
    if max_t == 0 {
        return 1;
    }
    let base = u64::from(delta - 1);
    let value = base.saturating_pow(max_t).saturating_add(1);
    value.min(u64::from(u32::MAX)) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub min_degree: u32,
    pub girth: Girth,
    pub aigner_fromme_lb: u32,
    pub frankl_lb: u32,
    pub upper_bound: Option<u32>,
}

impl BoundReport {
    pub fn lower_bound(&self) -> u32 {
        self.aigner_fromme_lb.max(self.frankl_lb)
    }
}

/// GP(n, k): outer cycle `a_i a_{i+1}`, spokes `a_i b_i`, inner `b_i b_{i+k}`.
pub fn build_gp(params: GpParams) -> Result<Graph, GraphError> {
    let p = GpParams::new(params.n, params.k)?;
    Ok(build_rims(p.n, 1, p.k, Family::Gp(p)))
}

/// I(n, j, k): `a_i a_{i+j}`, `a_i b_i`, `b_i b_{i+k}`.
pub fn build_igraph(params: IGraphParams) -> Result<Graph, GraphError> {
    let p = IGraphParams::new(params.n, params.j, params.k)?;
    Ok(build_rims(p.n, p.j, p.k, Family::IGraph(p)))
}

fn build_rims(n: usize, j: usize, k: usize, family: Family) -> Graph {
    let labels = (0..n)
        .map(|i| Label::new(Rim::A, i as i64))
        .chain((0..n).map(|i| Label::new(Rim::B, i as i64)))
        .collect();
    let edges = (0..n).flat_map(|i| [(i, (i + j) % n), (i, n + i), (n + i, n + (i + k) % n)]);
    Graph::from_labeled_edges(labels, family, edges)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Connectivity criterion for I-graphs: connected iff `gcd(n, j, k) = 1`.
pub fn is_connected_igraph(params: IGraphParams) -> bool {
    gcd(gcd(params.n, params.j), params.k) == 1
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs() as usize, b.unsigned_abs() as usize) as i64
}

/// A subgraph given by explicit vertex and edge lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Subgraph {
    pub fn new(mut vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Subgraph { vertices, edges }
    }

    /// The subgraph of `g` induced by `vertices`.
    pub fn induced(g: &Graph, vertices: Vec<Vertex>) -> Self {
        let mut s = Subgraph::new(vertices, Vec::new());
        let edges = g
            .edges()
            .filter(|&(u, v)| s.contains(u) && s.contains(v))
            .collect();
        s.edges = edges;
        s
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Local adjacency lists indexed by position in `vertices`. Edges with
    /// an endpoint outside the vertex list are reported as an error.
    pub fn local_adjacency(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            let (Some(pu), Some(pv)) = (self.position(u), self.position(v)) else {
                return Err(GraphError::NotASubgraph(format!(
                    "edge ({u},{v}) leaves the vertex set"
                )));
            };
            adj[pu].push(pv);
            adj[pv].push(pu);
        }
        Ok(adj)
    }

    /// Distances within the subgraph between local positions, `u32::MAX`
    /// when disconnected.
    pub fn local_distances(&self) -> Result<Vec<Vec<u32>>, GraphError> {
        let adj = self.local_adjacency()?;
        let m = adj.len();
        let mut out = Vec::with_capacity(m);
        for s in 0..m {
            let mut dist = vec![u32::MAX; m];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            out.push(dist);
        }
        Ok(out)
    }

    fn check_contained_in(&self, g: &Graph) -> Result<(), GraphError> {
        for &v in &self.vertices {
            g.check_vertex(v)
                .map_err(|_| GraphError::NotASubgraph(format!("vertex {v} is not in the graph")))?;
        }
        for &(u, v) in &self.edges {
            if !self.contains(u) || !self.contains(v) {
                return Err(GraphError::NotASubgraph(format!(
                    "edge ({u},{v}) leaves the vertex set"
                )));
            }
            if !g.has_edge(u, v) {
                return Err(GraphError::NotASubgraph(format!(
                    "edge ({u},{v}) is not in the graph"
                )));
            }
        }
        Ok(())
    }
}

/// True iff distances inside `sub` equal distances in `g` for every pair of
/// subgraph vertices.
pub fn is_isometric_subgraph(g: &Graph, sub: &Subgraph) -> Result<bool, GraphError> {
    sub.check_contained_in(g)?;
    let local = sub.local_distances()?;
    for (pu, &u) in sub.vertices.iter().enumerate() {
        let ambient = g.bfs(u);
        for (pv, &v) in sub.vertices.iter().enumerate() {
            if local[pu][pv] != ambient[v] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Connected with `|E| = |V| - 1`.
pub fn is_tree(sub: &Subgraph) -> bool {
    let Ok(adj) = sub.local_adjacency() else {
        return false;
    };
    let m = adj.len();
    if m == 0 || sub.edges.len() + 1 != m {
        return false;
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == m
}

/// Cycle graph on `len` vertices.
pub fn cycle_graph(len: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    Graph::from_edges(len, &edges)
}

/// Path graph on `len` vertices.
pub fn path_graph(len: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
    Graph::from_edges(len, &edges)
}
