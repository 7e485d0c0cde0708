use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::noise_model::{Pauli, PauliString};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Rejects self-loops, out-of-range vertices and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::validation(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::validation(format!("self-loop at vertex {a}")));
            }
            if !adjacency[a].insert(b) {
                return Err(Error::validation(format!("duplicate edge ({a}, {b})")));
            }
            adjacency[b].insert(a);
        }
        Ok(Self { adjacency })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighborhood(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && self.adjacency[a].contains(&b)
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency.iter().enumerate().flat_map(|(a, nb)| nb.range(a + 1..).map(move |&b| (a, b))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Common degree of all vertices, if the graph is regular.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n()).all(|v| self.degree(v) == d).then_some(d)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::domain(format!("vertex {v} out of range for {} vertices", self.n())));
        }
        Ok(())
    }

    /// Parses the plain-text edge-list format: one `i j` pair per line,
    /// `#` comments, and an optional `n <count>` header. Without a header
    /// the vertex count is the largest index plus one.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::validation(format!("line {}: cannot parse {line:?}", lineno + 1));
            match fields.as_slice() {
                ["n", count] => {
                    if declared.is_some() {
                        return Err(Error::validation(format!("line {}: repeated n header", lineno + 1)));
                    }
                    declared = Some(count.parse::<usize>().map_err(|_| bad())?);
                }
                [a, b] => {
                    let a = a.parse::<usize>().map_err(|_| bad())?;
                    let b = b.parse::<usize>().map_err(|_| bad())?;
                    edges.push((a, b));
                }
                _ => return Err(bad()),
            }
        }
        let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Self::new(declared.unwrap_or(inferred), edges)
    }

    /// Writes the graph in the format read by [`Graph::parse`], with header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (a, b) in self.edges() {
            writeln!(out, "{a} {b}").expect("write to string");
        }
        out
    }
}

/// Graph families used throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lattice {
    /// Open chain `0 - 1 - … - (n-1)`.
    Linear(usize),
    /// Closed chain, `n ≥ 3`.
    Ring(usize),
    /// `rows × cols` square lattice, row-major indices.
    Grid2d(usize, usize),
    /// `a × b × c` cubic lattice, index `(x·b + y)·c + z`.
    Grid3d(usize, usize, usize),
    /// Vertex 0 joined to every other vertex (GHZ up to local unitaries).
    Star(usize),
    Custom {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl Lattice {
    /// A pair of adjacent vertices that both have the bulk degree of the
    /// family, when the lattice is large enough to have one.
    pub fn interior_pair(&self) -> Option<(usize, usize)> {
        match *self {
            Lattice::Linear(n) if n >= 4 => Some((n / 2 - 1, n / 2)),
            Lattice::Ring(n) if n >= 3 => Some((0, 1)),
            Lattice::Grid2d(r, c) if r >= 3 && c >= 4 => {
                let row = r / 2;
                Some((row * c + c / 2 - 1, row * c + c / 2))
            }
            Lattice::Grid3d(a, b, c) if a >= 3 && b >= 3 && c >= 4 => {
                let base = ((a / 2) * b + b / 2) * c;
                Some((base + c / 2 - 1, base + c / 2))
            }
            Lattice::Star(n) if n >= 2 => Some((0, 1)),
            _ => None,
        }
    }
}

/// Builds the graph of a lattice family.
pub fn make_lattice(kind: &Lattice) -> Result<Graph> {
    let positive = |dims: &[usize]| {
        if dims.contains(&0) {
            Err(Error::validation(format!("lattice dimensions must be positive, got {dims:?}")))
        } else {
            Ok(())
        }
    };
    match kind {
        Lattice::Linear(n) => {
            positive(&[*n])?;
            Graph::new(*n, (1..*n).map(|i| (i - 1, i)))
        }
        Lattice::Ring(n) => {
            if *n < 3 {
                return Err(Error::validation(format!("a ring needs at least 3 vertices, got {n}")));
            }
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        Lattice::Grid2d(rows, cols) => {
            positive(&[*rows, *cols])?;
            let idx = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..*rows {
                for c in 0..*cols {
                    if c + 1 < *cols {
                        edges.push((idx(r, c), idx(r, c + 1)));
                    }
                    if r + 1 < *rows {
                        edges.push((idx(r, c), idx(r + 1, c)));
                    }
                }
            }
            Graph::new(rows * cols, edges)
        }
        Lattice::Grid3d(a, b, c) => {
            positive(&[*a, *b, *c])?;
            let idx = |x: usize, y: usize, z: usize| (x * b + y) * c + z;
            let mut edges = Vec::new();
            for x in 0..*a {
                for y in 0..*b {
                    for z in 0..*c {
                        if z + 1 < *c {
                            edges.push((idx(x, y, z), idx(x, y, z + 1)));
                        }
                        if y + 1 < *b {
                            edges.push((idx(x, y, z), idx(x, y + 1, z)));
                        }
                        if x + 1 < *a {
                            edges.push((idx(x, y, z), idx(x + 1, y, z)));
                        }
                    }
                }
            }
            Graph::new(a * b * c, edges)
        }
        Lattice::Star(n) => {
            positive(&[*n])?;
            Graph::new(*n, (1..*n).map(|i| (0, i)))
        }
        Lattice::Custom { n, edges } => Graph::new(*n, edges.iter().copied()),
    }
}

/// Stabilizer generator `K_j = X_j ∏_{k ∈ N(j)} Z_k`.
pub fn correlation_operator(g: &Graph, j: usize) -> Result<PauliString> {
    g.check_vertex(j)?;
    let letters = (0..g.n())
        .map(|v| {
            if v == j {
                Pauli::X
            } else if g.has_edge(j, v) {
                Pauli::Z
            } else {
                Pauli::I
            }
        })
        .collect();
    Ok(PauliString::new(letters))
}
