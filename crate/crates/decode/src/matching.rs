//! Minimum-weight perfect matching on a decoding graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::convert::Infallible;

use gbcode::graph::DecodingGraph;
use gbcode::Bits;
use petgraph::graph::UnGraph;
use rustworkx_core::max_weight_matching::max_weight_matching;

use crate::DecodeError;

// fixed-point scale for edge weights, so matching runs on integers
const SCALE: f64 = 65536.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingOutput {
    pub correction: Bits,
    /// Matched pairs of flagged checks; `None` pairs a check with the boundary.
    pub pairs: Vec<(usize, Option<usize>)>,
    /// Total path weight of the matching, in edge-weight units.
    pub weight: f64,
}

/// All-pairs shortest paths over a decoding graph, reused across syndromes.
#[derive(Debug, Clone)]
pub struct MatchingDecoder {
    graph: DecodingGraph,
    qubits: usize,
    // dist[s][t] in fixed point, pred[s][t] = edge entering t on a shortest path from s
    dist: Vec<Vec<Option<i64>>>,
    pred: Vec<Vec<Option<usize>>>,
}

impl MatchingDecoder {
    /// `qubits` is the length of the corrections to produce.
    pub fn new(graph: DecodingGraph, qubits: usize) -> Self {
        let total = graph.nodes + usize::from(graph.has_boundary);
        let endpoint = |v: Option<usize>| v.unwrap_or(graph.nodes);
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); total];
        for (idx, e) in graph.edges.iter().enumerate() {
            let w = (e.weight.max(0.0) * SCALE).round() as i64;
            let v = endpoint(e.v);
            adj[e.u].push((v, idx, w));
            adj[v].push((e.u, idx, w));
        }
        let (dist, pred) = (0..total).map(|s| dijkstra(&adj, s)).unzip();
        MatchingDecoder {
            graph,
            qubits,
            dist,
            pred,
        }
    }

    pub fn graph(&self) -> &DecodingGraph {
        &self.graph
    }

    /// Shortest-path distance between two nodes (the boundary is node `nodes`).
    pub fn distance(&self, u: usize, v: usize) -> Option<f64> {
        self.dist[u][v].map(|d| d as f64 / SCALE)
    }

    fn path_qubits(&self, s: usize, t: usize, out: &mut Bits) {
        let mut cur = t;
        while cur != s {
            let idx = self.pred[s][cur].expect("reachable");
            let e = &self.graph.edges[idx];
            out.flip(e.qubit);
            let other = e.v.unwrap_or(self.graph.nodes);
            cur = if cur == e.u { other } else { e.u };
        }
    }

    pub fn decode(&self, syndrome: &Bits) -> Result<MatchingOutput, DecodeError> {
        if syndrome.len() != self.graph.nodes {
            return Err(DecodeError::SyndromeLength {
                expected: self.graph.nodes,
                got: syndrome.len(),
            });
        }
        let flagged: Vec<usize> = syndrome.iter_ones().collect();
        let f = flagged.len();
        let boundary = self.graph.boundary();
        let total = if boundary.is_some() { 2 * f } else { f };
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for i in 0..f {
            for j in i + 1..f {
                if let Some(d) = self.dist[flagged[i]][flagged[j]] {
                    edges.push((i, j, d));
                }
            }
        }
        if let Some(b) = boundary {
            for i in 0..f {
                if let Some(d) = self.dist[flagged[i]][b] {
                    edges.push((i, f + i, d));
                }
                for j in i + 1..f {
                    edges.push((f + i, f + j, 0));
                }
            }
        }
        let big = edges.iter().map(|e| e.2).max().unwrap_or(0) + 1;
        let mut g: UnGraph<(), i64> = UnGraph::with_capacity(total, edges.len());
        for _ in 0..total {
            g.add_node(());
        }
        for &(u, v, w) in &edges {
            g.add_edge((u as u32).into(), (v as u32).into(), big - w);
        }
        let matched = max_weight_matching(&g, true, |e| Ok::<i128, Infallible>(*e.weight() as i128), false)
            .unwrap_or_else(|never| match never {});
        if 2 * matched.len() != total {
            return Err(DecodeError::Unmatchable);
        }
        let mut matched: Vec<(usize, usize)> = matched
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        matched.sort_unstable();
        let mut correction = Bits::zeros(self.qubits);
        let mut pairs = Vec::new();
        let mut weight = 0i64;
        for (u, v) in matched {
            if u >= f {
                continue;
            }
            let s = flagged[u];
            let t = if v < f {
                flagged[v]
            } else {
                boundary.expect("boundary copies exist")
            };
            weight += self.dist[s][t].expect("edge only added when reachable");
            self.path_qubits(s, t, &mut correction);
            pairs.push((s, (v < f).then_some(t)));
        }
        Ok(MatchingOutput {
            correction,
            pairs,
            weight: weight as f64 / SCALE,
        })
    }
}

fn dijkstra(adj: &[Vec<(usize, usize, i64)>], s: usize) -> (Vec<Option<i64>>, Vec<Option<usize>>) {
    let mut dist: Vec<Option<i64>> = vec![None; adj.len()];
    let mut pred = vec![None; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(0);
    heap.push(Reverse((0i64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue;
        }
        for &(v, idx, w) in &adj[u] {
            let nd = d + w;
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                pred[v] = Some(idx);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    (dist, pred)
}
