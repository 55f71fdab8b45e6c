#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;

use swldpc::code::SparseParityMatrix;

/// Random sparse matrix with `m` rows of weight 1 to 3. Weight-1 rows reveal
/// a bit outright; without them the marginals of two fair sources on a tree
/// are all 1/2.
pub fn random_rows<R: Rng>(rng: &mut R, n: usize, m: usize) -> SparseParityMatrix {
    let rows = (0..m)
        .map(|_| {
            let w = rng.gen_range(1..=3.min(n));
            sample(rng, n, w).into_vec()
        })
        .collect();
    SparseParityMatrix::from_rows(n, rows).unwrap()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// True if the joint graph of `h1`, `h2` and the per-position correlation
/// checks has no cycle. Computed from the matrices alone.
pub fn joint_graph_is_forest(h1: &SparseParityMatrix, h2: &SparseParityMatrix) -> bool {
    let n = h1.n();
    let checks = h1.m() + h2.m() + n;
    let mut uf = UnionFind((0..2 * n + checks).collect());
    let check_node = |c: usize| 2 * n + c;
    let mut edges = Vec::new();
    for (k, row) in h1.rows().iter().enumerate() {
        edges.extend(row.iter().map(|&i| (i, check_node(k))));
    }
    for (k, row) in h2.rows().iter().enumerate() {
        edges.extend(row.iter().map(|&i| (n + i, check_node(h1.m() + k))));
    }
    for i in 0..n {
        let c = check_node(h1.m() + h2.m() + i);
        edges.push((i, c));
        edges.push((n + i, c));
    }
    edges.into_iter().all(|(a, b)| uf.union(a, b))
}

/// Draws code pairs of length `n` until the joint graph is cycle-free.
pub fn random_tree_codes<R: Rng>(
    rng: &mut R,
    n: usize,
) -> (SparseParityMatrix, SparseParityMatrix) {
    for _ in 0..100_000 {
        let m1 = rng.gen_range(1..=4);
        let m2 = rng.gen_range(1..=4);
        let h1 = random_rows(rng, n, m1);
        let h2 = random_rows(rng, n, m2);
        if joint_graph_is_forest(&h1, &h2) {
            return (h1, h2);
        }
    }
    panic!("no cycle-free instance found for n = {n}");
}

pub fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct OracleAgreement {
    /// Largest |decoder - exact| over bits with a finite exact LLR.
    pub worst_finite: f64,
    /// Bits with a finite, nonzero exact LLR.
    pub informative: usize,
    /// Bits pinned by the syndromes (exact LLR infinite).
    pub pinned: usize,
    /// Hard decisions compared against bitwise MAP.
    pub decisions: usize,
}

/// Compares decoder posteriors for the 2n source bits against exact marginals.
///
/// A bit pinned by the syndromes has an infinite exact LLR, which the decoder
/// can only represent up to the message clamp; for those the sign must agree
/// and the magnitude must be at least half the clamp.
pub fn compare_with_oracle(
    posteriors: &[f64],
    hard: &[u8],
    exact: &swldpc::ExactMarginals,
) -> Result<OracleAgreement, String> {
    let llrs = exact.llrs();
    let map = exact.bitwise_decisions();
    let mut agreement = OracleAgreement::default();
    for (v, (&bp, &ex)) in posteriors.iter().zip(&llrs).enumerate() {
        if ex.is_finite() {
            agreement.worst_finite = agreement.worst_finite.max((bp - ex).abs());
            if ex.abs() > 1e-9 {
                agreement.informative += 1;
            }
        } else {
            agreement.pinned += 1;
            if bp.signum() != ex.signum() || bp.abs() < swldpc::LLR_MAX / 2.0 {
                return Err(format!("pinned bit {v}: decoder {bp}, exact {ex}"));
            }
        }
        if bp.abs() > 1e-6 {
            agreement.decisions += 1;
            if hard[v] != map[v] {
                return Err(format!("bit {v}: decision {} but MAP {}", hard[v], map[v]));
            }
        }
    }
    Ok(agreement)
}
