//! Sum-product belief propagation in the log-likelihood domain.

use gbcode::{BinaryMatrix, Bits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// All checks update from the same round of variable messages.
    #[default]
    Flooding,
    /// Checks update one at a time, each seeing the latest posteriors.
    Serial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpConfig {
    pub max_iterations: usize,
    pub schedule: Schedule,
    /// Weight of the previous check message in each update, in `[0, 1)`.
    pub damping: f64,
    /// Bound on message magnitudes.
    pub clip: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        BpConfig {
            max_iterations: 100,
            schedule: Schedule::Flooding,
            damping: 0.0,
            clip: 30.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BpOutput {
    /// Posterior log-likelihood ratios `ln(P(0)/P(1))` per variable.
    pub llr: Vec<f64>,
    pub hard: Bits,
    pub converged: bool,
    pub iterations: usize,
}

/// Tanner-graph edge lists for a parity-check matrix.
#[derive(Debug, Clone)]
pub struct BeliefPropagation {
    h: BinaryMatrix,
    // edge e joins edge_check[e] and edge_var[e]; edges sorted by check
    edge_var: Vec<usize>,
    check_edges: Vec<std::ops::Range<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl BeliefPropagation {
    pub fn new(h: &BinaryMatrix) -> Self {
        let mut edge_var = Vec::new();
        let mut check_edges = Vec::with_capacity(h.num_rows());
        let mut var_edges = vec![Vec::new(); h.num_cols()];
        for row in h.rows() {
            let start = edge_var.len();
            for v in row.iter_ones() {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_edges.push(start..edge_var.len());
        }
        BeliefPropagation {
            h: h.clone(),
            edge_var,
            check_edges,
            var_edges,
        }
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn decode(&self, syndrome: &Bits, priors: &[f64], cfg: &BpConfig) -> BpOutput {
        assert_eq!(syndrome.len(), self.h.num_rows(), "syndrome length");
        assert_eq!(priors.len(), self.h.num_cols(), "prior length");
        assert!(cfg.max_iterations >= 1, "max_iterations must be positive");
        let clip = cfg.clip;
        let channel: Vec<f64> = priors
            .iter()
            .map(|&p| ((1.0 - p) / p).ln().clamp(-clip, clip))
            .collect();
        let hard0 = Bits::from_bools(channel.iter().map(|&l| l < 0.0));
        if self.h.mul_vec(&hard0) == *syndrome {
            return BpOutput {
                llr: channel,
                hard: hard0,
                converged: true,
                iterations: 0,
            };
        }
        let mut check_msg = vec![0.0f64; self.edge_var.len()];
        let mut var_msg: Vec<f64> = self.edge_var.iter().map(|&v| channel[v]).collect();
        let mut posterior = channel.clone();
        let mut hard = hard0;
        for it in 1..=cfg.max_iterations {
            match cfg.schedule {
                Schedule::Flooding => {
                    for (c, range) in self.check_edges.iter().enumerate() {
                        self.update_check(c, range.clone(), syndrome, &var_msg, &mut check_msg, cfg);
                    }
                    for (v, edges) in self.var_edges.iter().enumerate() {
                        let total = channel[v] + edges.iter().map(|&e| check_msg[e]).sum::<f64>();
                        posterior[v] = total;
                        for &e in edges {
                            var_msg[e] = (total - check_msg[e]).clamp(-clip, clip);
                        }
                    }
                }
                Schedule::Serial => {
                    for (c, range) in self.check_edges.iter().enumerate() {
                        for e in range.clone() {
                            var_msg[e] = (posterior[self.edge_var[e]] - check_msg[e]).clamp(-clip, clip);
                        }
                        self.update_check(c, range.clone(), syndrome, &var_msg, &mut check_msg, cfg);
                        for e in range.clone() {
                            posterior[self.edge_var[e]] = var_msg[e] + check_msg[e];
                        }
                    }
                }
            }
            hard = Bits::from_bools(posterior.iter().map(|&l| l < 0.0));
            if self.h.mul_vec(&hard) == *syndrome {
                return BpOutput {
                    llr: posterior,
                    hard,
                    converged: true,
                    iterations: it,
                };
            }
        }
        BpOutput {
            llr: posterior,
            hard,
            converged: false,
            iterations: cfg.max_iterations,
        }
    }

    fn update_check(
        &self,
        c: usize,
        range: std::ops::Range<usize>,
        syndrome: &Bits,
        var_msg: &[f64],
        check_msg: &mut [f64],
        cfg: &BpConfig,
    ) {
        const EDGE: f64 = 1.0 - 1e-15;
        let sign = if syndrome.get(c) { -1.0 } else { 1.0 };
        let t: Vec<f64> = range.clone().map(|e| (var_msg[e] / 2.0).tanh()).collect();
        for (k, e) in range.enumerate() {
            let prod: f64 = t
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, x)| x)
                .product();
            let fresh = (sign * 2.0 * prod.clamp(-EDGE, EDGE).atanh()).clamp(-cfg.clip, cfg.clip);
            check_msg[e] = cfg.damping * check_msg[e] + (1.0 - cfg.damping) * fresh;
        }
    }
}

/// One-shot form of [`BeliefPropagation::decode`].
pub fn bp_decode(h: &BinaryMatrix, syndrome: &Bits, priors: &[f64], cfg: &BpConfig) -> BpOutput {
    BeliefPropagation::new(h).decode(syndrome, priors, cfg)
}
