use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::edge::{Edge, MAX_BOARD_ORDER};
use crate::error::GraphError;

/// Structural class of a target graph, detected from its edges.
///
/// `P_2` and `P_3` are reported as paths even though they are also stars;
/// use [`TargetGraph::star_leaves`] when the star reading matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    Generic,
    Tree,
    Path,
    Star,
}

/// The graph a player tries to build. Never has isolated vertices.
///
/// Serializes as its edge-list text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TargetGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    kind: GraphKind,
    adjacency: Vec<u128>,
}

impl TargetGraph {
    /// Validates and builds a target from zero-based pairs.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        if vertex_count > MAX_BOARD_ORDER {
            return Err(GraphError::TooLarge { order: vertex_count, cap: MAX_BOARD_ORDER });
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in pairs {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: a.max(b) + 1, order: vertex_count });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a + 1));
            }
            let e = Edge::new(a, b);
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.to_string()));
            }
        }
        let mut adjacency = vec![0u128; vertex_count];
        for e in &seen {
            adjacency[e.lo()] |= 1 << e.hi();
            adjacency[e.hi()] |= 1 << e.lo();
        }
        if let Some(v) = adjacency.iter().position(|&row| row == 0) {
            return Err(GraphError::IsolatedVertex(v + 1));
        }
        let edges: Vec<Edge> = seen.into_iter().collect();
        let kind = detect_kind(vertex_count, &edges, &adjacency);
        Ok(TargetGraph { vertex_count, edges, kind, adjacency })
    }

    /// `P_n`: the path on `n >= 2` vertices.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("path needs n >= 2")
    }

    /// `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &pairs).expect("star needs at least one leaf")
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Self::new(n, &pairs).expect("complete graph needs n >= 2")
    }

    /// Parses `"n; u-v u-v ..."` with one-based vertices.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let text = text.trim();
        let (head, body) = text
            .split_once(';')
            .ok_or_else(|| GraphError::Malformed("expected \"n; u-v ...\"".into()))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| GraphError::Malformed(format!("bad vertex count {:?}", head.trim())))?;
        let mut pairs = Vec::new();
        for token in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (a, b) = token
                .split_once('-')
                .ok_or_else(|| GraphError::Malformed(format!("bad edge token {token:?}")))?;
            let parse_vertex = |s: &str| -> Result<usize, GraphError> {
                let x: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| GraphError::Malformed(format!("bad vertex {s:?}")))?;
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order: n });
                }
                Ok(x - 1)
            };
            pairs.push((parse_vertex(a)?, parse_vertex(b)?));
        }
        Self::new(n, &pairs)
    }

    /// Row-major upper triangle of the adjacency matrix as `'0'`/`'1'`.
    pub fn to_bitstring(&self) -> String {
        let n = self.vertex_count;
        let mut out = String::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
        }
        out
    }

    pub fn from_bitstring(bits: &str) -> Result<Self, GraphError> {
        let bits = bits.trim();
        let len = bits.len();
        let mut n = 1;
        while n * (n - 1) / 2 < len {
            n += 1;
        }
        if n * (n - 1) / 2 != len {
            return Err(GraphError::Malformed(format!("length {len} is not a triangular number")));
        }
        let mut pairs = Vec::new();
        let mut chars = bits.chars();
        for i in 0..n {
            for j in i + 1..n {
                match chars.next() {
                    Some('1') => pairs.push((i, j)),
                    Some('0') => {}
                    other => return Err(GraphError::Malformed(format!("unexpected character {other:?}"))),
                }
            }
        }
        Self::new(n, &pairs)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_tree(&self) -> bool {
        matches!(self.kind, GraphKind::Tree | GraphKind::Path | GraphKind::Star)
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    #[inline]
    pub fn neighbors_mask(&self, v: usize) -> u128 {
        self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        super::bits(self.adjacency[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of leaves if this is `K_{1,k}` (including `P_2`, `P_3`).
    pub fn star_leaves(&self) -> Option<usize> {
        let n = self.vertex_count;
        (self.edges.len() == n - 1 && self.max_degree() == n - 1).then_some(n - 1)
    }

    /// Subgraph on `vertices` (zero-based, in this graph's labels), relabelled
    /// `0..k` in the given order. Fails if the result has an isolated vertex.
    pub fn induced(&self, vertices: &[usize]) -> Result<TargetGraph, GraphError> {
        let mut pairs = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        TargetGraph::new(vertices.len(), &pairs)
    }

    /// Depth-first order from the lowest-index vertex, children in
    /// increasing index order.
    pub fn dfs_order(&self) -> Result<DfsOrder, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let n = self.vertex_count;
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        let mut stack = vec![(0usize, None::<usize>)];
        while let Some((v, p)) = stack.pop() {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            order.push(v);
            parent.push(p);
            // reversed so the smallest child is popped first
            let mut children: Vec<usize> = self.neighbors(v).filter(|&w| !visited[w]).collect();
            children.reverse();
            stack.extend(children.into_iter().map(|w| (w, Some(v))));
        }
        Ok(DfsOrder { order, parent })
    }

    /// Edge-list text, the inverse of [`TargetGraph::parse`].
    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        format!("{}; {}", self.vertex_count, edges.join(" "))
    }

    /// Short human label such as `P5`, `K1,3` or `G(5,6)`.
    pub fn label(&self) -> String {
        match self.kind {
            GraphKind::Path => format!("P{}", self.vertex_count),
            GraphKind::Star => format!("K1,{}", self.vertex_count - 1),
            GraphKind::Tree => format!("T{}[{}]", self.vertex_count, self.to_bitstring()),
            GraphKind::Generic => format!("G{}[{}]", self.vertex_count, self.to_bitstring()),
        }
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl TryFrom<String> for TargetGraph {
    type Error = GraphError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        TargetGraph::parse(&s)
    }
}

impl From<TargetGraph> for String {
    fn from(g: TargetGraph) -> String {
        g.to_text()
    }
}

impl FromStr for TargetGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TargetGraph::parse(s)
    }
}

/// DFS sequence `v_0..v_{n-1}` of a tree; `parent[i]` is the parent of
/// `order[i]` and is `None` only for the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsOrder {
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl DfsOrder {
    /// The prefix subtree `T_i` on `order[0..=i]`, relabelled by position.
    pub fn prefix(&self, tree: &TargetGraph, i: usize) -> TargetGraph {
        tree.induced(&self.order[..=i]).expect("DFS prefix of a tree is connected")
    }
}

fn detect_kind(n: usize, edges: &[Edge], adjacency: &[u128]) -> GraphKind {
    if edges.len() + 1 != n || !is_connected(n, adjacency) {
        return GraphKind::Generic;
    }
    let max_degree = adjacency.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0);
    if max_degree <= 2 {
        GraphKind::Path
    } else if max_degree == n - 1 {
        GraphKind::Star
    } else {
        GraphKind::Tree
    }
}

fn is_connected(n: usize, adjacency: &[u128]) -> bool {
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut reached: u128 = 1;
    let mut frontier: u128 = 1;
    while frontier != 0 {
        let mut next = 0;
        for v in super::bits(frontier) {
            next |= adjacency[v];
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached == full
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_detects_path_and_star() {
        let p4 = TargetGraph::parse("4; 1-2 2-3 3-4").unwrap();
        assert_eq!(p4.kind(), GraphKind::Path);
        assert_eq!(p4, TargetGraph::path(4));
        let k13 = TargetGraph::parse("4; 1-2 1-3 1-4").unwrap();
        assert_eq!(k13.kind(), GraphKind::Star);
        assert_eq!(k13.star_leaves(), Some(3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(TargetGraph::parse("3; 1-2"), Err(GraphError::IsolatedVertex(3)));
        assert_eq!(TargetGraph::parse("3; 1-2 2-1"), Err(GraphError::DuplicateEdge("1-2".into())));
        assert_eq!(TargetGraph::parse("3; 1-1 2-3"), Err(GraphError::SelfLoop(1)));
        assert!(matches!(TargetGraph::parse("3; 1-4"), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(TargetGraph::parse("1-2 2-3"), Err(GraphError::Malformed(_))));
        assert!(matches!(TargetGraph::parse("x; 1-2"), Err(GraphError::Malformed(_))));
    }

    #[test]
    fn kinds() {
        assert_eq!(TargetGraph::cycle(4).kind(), GraphKind::Generic);
        let spider = TargetGraph::parse("5; 1-2 1-3 3-4 3-5").unwrap();
        assert_eq!(spider.kind(), GraphKind::Tree);
        let forest = TargetGraph::parse("4; 1-2 3-4").unwrap();
        assert_eq!(forest.kind(), GraphKind::Generic);
    }

    #[test]
    fn bitstring_roundtrip() {
        let g = TargetGraph::parse("5; 1-2 1-3 3-4 3-5").unwrap();
        assert_eq!(g.to_bitstring(), "1100000110");
        assert_eq!(TargetGraph::from_bitstring(&g.to_bitstring()).unwrap(), g);
        assert!(TargetGraph::from_bitstring("10").is_err());
        assert_eq!(TargetGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn dfs_path_and_star() {
        let d = TargetGraph::path(4).dfs_order().unwrap();
        assert_eq!(d.order, vec![0, 1, 2, 3]);
        assert_eq!(d.parent, vec![None, Some(0), Some(1), Some(2)]);
        let d = TargetGraph::star(3).dfs_order().unwrap();
        assert_eq!(d.order, vec![0, 1, 2, 3]);
        assert!(d.parent[1..].iter().all(|&p| p == Some(0)));
        assert_eq!(TargetGraph::cycle(4).dfs_order(), Err(GraphError::NotATree));
    }

    #[test]
    fn dfs_spider_prefixes_are_connected() {
        let spider = TargetGraph::parse("5; 1-2 1-3 3-4 3-5").unwrap();
        let d = spider.dfs_order().unwrap();
        assert_eq!(d.order, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.parent, vec![None, Some(0), Some(0), Some(2), Some(2)]);
        for i in 1..spider.vertex_count() {
            let t = d.prefix(&spider, i);
            assert_eq!(t.edge_count(), i);
            assert!(t.is_tree());
        }
    }
}
