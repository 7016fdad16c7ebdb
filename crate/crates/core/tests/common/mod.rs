//! Independent oracles used by the integration tests. Nothing here calls into
//! the ladder fold or the divider/ADC code paths of the library.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// Explicit two-rail resistor graph solved by nodal analysis.
///
/// Nodes: the lead terminal, and a flat-rail node plus a string-rail node at
/// the base, at every contact and at the tip. Zero-ohm edges merge nodes.
pub struct NodalLine {
    pub flat_ohm_per_mm: f64,
    pub string_ohm_per_mm: f64,
    pub lead_ohm: f64,
    pub length_mm: f64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl NodalLine {
    pub fn default_line() -> Self {
        NodalLine {
            flat_ohm_per_mm: 50.0,
            string_ohm_per_mm: 200.0,
            lead_ohm: 10_000.0,
            length_mm: 80.0,
        }
    }

    /// Two-terminal resistance, `None` when the terminals are disconnected.
    /// `contacts` are `(position_mm, bridge_ohm)` with unique positions.
    pub fn resistance(&self, contacts: &[(f64, f64)]) -> Option<f64> {
        if contacts.is_empty() {
            return None;
        }
        let mut stations: Vec<f64> = vec![0.0, self.length_mm];
        stations.extend(contacts.iter().map(|c| c.0));
        stations.sort_by(f64::total_cmp);
        stations.dedup();

        let n = stations.len();
        let flat = |k: usize| 1 + k;
        let string = |k: usize| 1 + n + k;
        let terminal = 0;
        let nodes = 1 + 2 * n;

        let mut edges: Vec<(usize, usize, f64)> = vec![(terminal, flat(0), self.lead_ohm)];
        for k in 1..n {
            let len = stations[k] - stations[k - 1];
            edges.push((flat(k - 1), flat(k), self.flat_ohm_per_mm * len));
            edges.push((string(k - 1), string(k), self.string_ohm_per_mm * len));
        }
        for &(pos, bridge) in contacts {
            let k = stations.iter().position(|&s| s == pos).unwrap();
            edges.push((flat(k), string(k), bridge));
        }

        let mut uf = UnionFind((0..nodes).collect());
        for &(a, b, r) in &edges {
            if r == 0.0 {
                uf.union(a, b);
            }
        }
        let ground = uf.find(string(0));
        let source = uf.find(terminal);
        if ground == source {
            return Some(0.0);
        }
        let mut index = vec![usize::MAX; nodes];
        let mut m = 0;
        for v in 0..nodes {
            let r = uf.find(v);
            if r != ground && index[r] == usize::MAX {
                index[r] = m;
                m += 1;
            }
        }
        let mut g = DMatrix::<f64>::zeros(m, m);
        for &(a, b, r) in &edges {
            if r == 0.0 {
                continue;
            }
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                continue;
            }
            let c = 1.0 / r;
            for (x, y) in [(ra, rb), (rb, ra)] {
                if x != ground {
                    g[(index[x], index[x])] += c;
                    if y != ground {
                        g[(index[x], index[y])] -= c;
                    }
                }
            }
        }
        let mut current = DVector::<f64>::zeros(m);
        current[index[source]] = 1.0;
        // a floating island (e.g. no bridge reaches it) would make g singular
        let v = g.lu().solve(&current)?;
        let r = v[index[source]];
        r.is_finite().then_some(r)
    }
}

/// Closed-form chain for a firm single contact on the default line:
/// R = 10k + 250 d, V/Vs = R / (R + 100k), counts = floor(1023 V/Vs).
pub fn firm_contact_counts(d_mm: f64) -> u32 {
    let r = 10_000.0 + 250.0 * d_mm;
    (r / (r + 100_000.0) * 1023.0 + 1e-9).floor() as u32
}

/// Expected counts for firm contacts at 0, 5, ..., 80 mm on the default
/// line, frozen from an independent evaluation of the closed forms above.
pub const FROZEN_SWEEP_COUNTS: [u32; 17] = [
    93, 103, 113, 123, 133, 143, 152, 161, 170, 179, 187, 196, 204, 212, 220, 228, 236,
];

/// Largest |p - d| over the frozen sweep with calibration (1023, 236, 93).
pub const FROZEN_MAX_DEVIATION_P: f64 = 3.111_888_111_888_11;

pub fn population_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n
}

pub fn manifest_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}
