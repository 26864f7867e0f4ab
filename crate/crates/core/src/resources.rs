//! Resource-state constructors: W, GHZ, graph states and the two-centered
//! GHZ graph, plus the closed-form lossy W state.
//!
//! Helper parties occupy the low qubit indices and the target pair the last
//! two, so losing `i` helpers means tracing out qubits `0..i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_count, Error, Result};
use crate::qcore::{DensityOperator, Ket, C64, MAX_QUBITS};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {a}-{b} outside 0..{vertices}"
                )));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
        }
        Ok(Self {
            vertices,
            edges: set,
        })
    }

    /// Star with center 0; its graph state is LU-equivalent to GHZ.
    pub fn star(vertices: usize) -> Result<Self> {
        Self::new(vertices, (1..vertices).map(|v| (0, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Edges as ordered pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Edge-list text: an optional `# vertices N` line, then one `a b` pair per
/// line. Other `#` lines and blank lines are ignored. Without the header the
/// vertex count is one more than the largest index.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# vertices {}", self.vertices)?;
        for (a, b) in self.edges() {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut parts = comment.split_whitespace();
                if parts.next() == Some("vertices") {
                    let n = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| {
                            Error::Parse(format!("line {}: bad vertex count", lineno + 1))
                        })?;
                    declared = Some(n);
                }
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            match nums.as_slice() {
                [a, b] => edges.push((*a, *b)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex ids",
                        lineno + 1
                    )))
                }
            }
        }
        let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Graph::new(declared.unwrap_or(inferred), edges)
    }
}

/// Roots and leaf partition of a two-centered GHZ graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCenteredLayout {
    pub root_a: usize,
    pub root_b: usize,
    pub leaves_a: Vec<usize>,
    pub leaves_b: Vec<usize>,
}

impl TwoCenteredLayout {
    pub fn vertex_count(&self) -> usize {
        2 + self.leaves_a.len() + self.leaves_b.len()
    }

    /// All leaves, those of root a first.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.leaves_a.iter().chain(self.leaves_b.iter()).copied()
    }
}

fn check_register(n: usize) -> Result<()> {
    check_count("qubit count", n, 2, MAX_QUBITS)
}

/// `|W_n>`: uniform superposition of the weight-one basis states.
pub fn w_state(n: usize) -> Result<Ket> {
    check_register(n)?;
    let dim = 1usize << n;
    let a = C64::new((n as f64).sqrt().recip(), 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    for q in 0..n {
        amps[1 << q] = a;
    }
    Ket::new(amps)
}

/// `(|0…0> + |1…1>)/√2`.
pub fn ghz_state(n: usize) -> Result<Ket> {
    check_register(n)?;
    let dim = 1usize << n;
    let a = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = a;
    amps[dim - 1] = a;
    Ket::new(amps)
}

/// Applies controlled-Z between qubits `a` and `b` in place.
pub fn apply_cz(ket: &mut Ket, a: usize, b: usize) -> Result<()> {
    let n = ket.qubits();
    for q in [a, b] {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, qubits: n });
        }
    }
    if a == b {
        return Err(Error::DuplicateQubit(a));
    }
    let mask = (1usize << (n - 1 - a)) | (1usize << (n - 1 - b));
    for (idx, amp) in ket.amplitudes_mut().iter_mut().enumerate() {
        if idx & mask == mask {
            *amp = -*amp;
        }
    }
    Ok(())
}

/// `∏ CZ_ab |+>^{⊗N}` over the graph's edges.
pub fn graph_state(g: &Graph) -> Result<Ket> {
    check_count("vertex count", g.vertex_count(), 1, MAX_QUBITS)?;
    let mut ket = Ket::plus(g.vertex_count())?;
    for (a, b) in g.edges() {
        apply_cz(&mut ket, a, b)?;
    }
    Ok(ket)
}

/// Two adjacent roots `0` and `1`; leaves `2..n` split as evenly as possible,
/// the first `⌈(n-2)/2⌉` attached to root 0 and the rest to root 1.
pub fn two_centered_graph(n: usize) -> Result<(Graph, TwoCenteredLayout)> {
    check_count("qubit count", n, 4, MAX_QUBITS)?;
    let leaves = n - 2;
    let split = 2 + leaves.div_ceil(2);
    let layout = TwoCenteredLayout {
        root_a: 0,
        root_b: 1,
        leaves_a: (2..split).collect(),
        leaves_b: (split..n).collect(),
    };
    let edges = std::iter::once((0, 1))
        .chain(layout.leaves_a.iter().map(|&l| (0, l)))
        .chain(layout.leaves_b.iter().map(|&l| (1, l)));
    Ok((Graph::new(n, edges)?, layout))
}

/// Closed-form state of an `N`-party W resource after losing `i` helpers:
/// `(i/N)|0^{N-i}><0^{N-i}| + ((N-i)/N)|W_{N-i}><W_{N-i}|`.
pub fn w_sigma(n: usize, lost: usize) -> Result<DensityOperator> {
    check_register(n)?;
    check_count("lost count", lost, 0, n - 2)?;
    let live = n - lost;
    let w = w_state(live)?.projector();
    if lost == 0 {
        return Ok(w);
    }
    let vac = Ket::basis(live, 0)?.projector();
    let nf = n as f64;
    DensityOperator::mixture(&[(lost as f64 / nf, &vac), (live as f64 / nf, &w)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{concurrence, partial_trace};

    #[test]
    fn w2_is_bell_and_w3_amplitudes() {
        let w2 = w_state(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let got: Vec<f64> = w2.amplitudes().iter().map(|a| a.re).collect();
        for (g, w) in got.iter().zip([0.0, h, h, 0.0]) {
            assert!((g - w).abs() < 1e-15);
        }
        let w3 = w_state(3).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let got: Vec<f64> = w3.amplitudes().iter().map(|a| a.re).collect();
        for (idx, v) in got.iter().enumerate() {
            let want = if idx.count_ones() == 1 { s } else { 0.0 };
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn register_bounds() {
        assert!(w_state(1).is_err());
        assert!(w_state(13).is_err());
        assert!(ghz_state(1).is_err());
        assert!(two_centered_graph(3).is_err());
        assert!(w_sigma(4, 3).is_err());
    }

    #[test]
    fn ghz2_is_phi_plus() {
        let g = ghz_state(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let got: Vec<f64> = g.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(got, vec![h, 0.0, 0.0, h]);
    }

    #[test]
    fn ghz_reductions_are_classical() {
        for n in 3..=6 {
            let rho = ghz_state(n).unwrap().projector();
            for drop in 1..n {
                let keep: Vec<usize> = (drop..n).collect();
                let r = partial_trace(&rho, &keep).unwrap();
                let d = r.dim();
                for i in 0..d {
                    for j in 0..d {
                        let want = if i == j && (i == 0 || i == d - 1) { 0.5 } else { 0.0 };
                        assert!((r.entry(i, j).re - want).abs() < 1e-14);
                        assert!(r.entry(i, j).im.abs() < 1e-14);
                    }
                }
            }
        }
        let rho = ghz_state(4).unwrap().projector();
        let pair = partial_trace(&rho, &[2, 3]).unwrap();
        assert!(concurrence(&pair).unwrap() < 1e-9);
    }

    #[test]
    fn two_centered_edges() {
        let (g, _) = two_centered_graph(4).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3)]);
        let (g, _) = two_centered_graph(6).unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]
        );
        let (_, l) = two_centered_graph(7).unwrap();
        assert_eq!((l.leaves_a.len(), l.leaves_b.len()), (3, 2));
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let (g, _) = two_centered_graph(7).unwrap();
        let text = g.to_string();
        assert_eq!(text.parse::<Graph>().unwrap(), g);
        let bare: Graph = "0 1\n1 2\n".parse().unwrap();
        assert_eq!(bare.vertex_count(), 3);
        assert!("0 1 2\n".parse::<Graph>().is_err());
        assert!("0 x\n".parse::<Graph>().is_err());
    }

    #[test]
    fn w_sigma_examples() {
        let s = w_sigma(5, 0).unwrap();
        assert!(s.max_abs_diff(&w_state(5).unwrap().projector()) < 1e-15);
        let s = w_sigma(3, 1).unwrap();
        let psi = w_state(2).unwrap().projector();
        let zero = Ket::basis(2, 0).unwrap().projector();
        let want = DensityOperator::mixture(&[(1.0 / 3.0, &zero), (2.0 / 3.0, &psi)]).unwrap();
        assert!(s.max_abs_diff(&want) < 1e-15);
        for n in 3..=9 {
            let c = concurrence(&w_sigma(n, n - 2).unwrap()).unwrap();
            assert!((c - 2.0 / n as f64).abs() < 1e-9);
        }
    }
}
