//! Exact posterior marginals by enumeration, for checking the decoder on
//! small instances.

use crate::code::{SparseParityMatrix, Syndrome};
use crate::correlation::CorrelationModel;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Exact per-bit posteriors and the most likely pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMarginals {
    /// `Pr(u1[i] = 1 | s1, s2)`
    pub u1_one: Vec<f64>,
    /// `Pr(u2[i] = 1 | s1, s2)`
    pub u2_one: Vec<f64>,
    /// Highest-weight pair; ties go to the lexicographically smallest `(u1, u2)`.
    pub map_u1: Vec<u8>,
    pub map_u2: Vec<u8>,
    /// Number of pairs consistent with both syndromes.
    pub support: usize,
}

impl ExactMarginals {
    /// `ln(P0 / P1)` for every `u1` bit, then every `u2` bit (the decoder's
    /// variable order for the source blocks).
    pub fn llrs(&self) -> Vec<f64> {
        self.u1_one
            .iter()
            .chain(&self.u2_one)
            .map(|&p1| (1.0 - p1).ln() - p1.ln())
            .collect()
    }

    /// Bitwise MAP decisions in the same order as [`llrs`](Self::llrs).
    pub fn bitwise_decisions(&self) -> Vec<u8> {
        self.u1_one
            .iter()
            .chain(&self.u2_one)
            .map(|&p1| u8::from(p1 > 0.5))
            .collect()
    }
}

fn solutions(h: &SparseParityMatrix, s: &Syndrome) -> Vec<u32> {
    let masks: Vec<u32> = h
        .rows()
        .iter()
        .map(|r| r.iter().fold(0, |m, &i| m | 1 << i))
        .collect();
    (0..1u32 << h.n())
        .filter(|&x| {
            masks
                .iter()
                .zip(s.bits())
                .all(|(&mask, &b)| (x & mask).count_ones() % 2 == b as u32)
        })
        .collect()
}

fn unpack(x: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((x >> i) & 1) as u8).collect()
}

/// Enumerates every `(u1, u2)` consistent with the syndromes and weighs it by
/// `p^agreements (1 - p)^disagreements`.
pub fn brute_force_marginals(
    h1: &SparseParityMatrix,
    h2: &SparseParityMatrix,
    model: &CorrelationModel,
    s1: &Syndrome,
    s2: &Syndrome,
) -> Result<ExactMarginals> {
    let n = h1.n();
    if h2.n() != n {
        return Err(Error::LengthMismatch {
            what: "code 2 block length",
            expected: n,
            found: h2.n(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "block length must be positive".into(),
        ));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if s1.len() != h1.m() {
        return Err(Error::LengthMismatch {
            what: "syndrome 1",
            expected: h1.m(),
            found: s1.len(),
        });
    }
    if s2.len() != h2.m() {
        return Err(Error::LengthMismatch {
            what: "syndrome 2",
            expected: h2.m(),
            found: s2.len(),
        });
    }
    let first = solutions(h1, s1);
    let second = solutions(h2, s2);
    if first.is_empty() || second.is_empty() {
        return Err(Error::NoSolution);
    }

    let p = model.p();
    let weight_by_distance: Vec<f64> = (0..=n)
        .map(|d| p.powi((n - d) as i32) * (1.0 - p).powi(d as i32))
        .collect();
    // bit-reversed masks order like the bit sequences, index 0 first
    let lex = |x: u32| x.reverse_bits() >> (32 - n);

    let mut total = 0.0;
    let mut ones1 = vec![0.0; n];
    let mut ones2 = vec![0.0; n];
    let mut best: Option<(f64, u32, u32)> = None;
    for &a in &first {
        for &b in &second {
            let w = weight_by_distance[(a ^ b).count_ones() as usize];
            total += w;
            for i in 0..n {
                if a >> i & 1 == 1 {
                    ones1[i] += w;
                }
                if b >> i & 1 == 1 {
                    ones2[i] += w;
                }
            }
            let better = match best {
                None => true,
                Some((bw, ba, bb)) => w > bw || (w == bw && (lex(a), lex(b)) < (lex(ba), lex(bb))),
            };
            if better {
                best = Some((w, a, b));
            }
        }
    }
    let (_, a, b) = best.expect("at least one pair");
    Ok(ExactMarginals {
        u1_one: ones1.iter().map(|w| w / total).collect(),
        u2_one: ones2.iter().map(|w| w / total).collect(),
        map_u1: unpack(a, n),
        map_u2: unpack(b, n),
        support: first.len() * second.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{syndrome, tiny_matrix};

    fn model(p: f64) -> CorrelationModel {
        CorrelationModel::new(p).unwrap()
    }

    #[test]
    fn unique_solution_is_point_mass() {
        let id = SparseParityMatrix::identity(4);
        let s = Syndrome::zeros(4);
        let m = brute_force_marginals(&id, &id, &model(0.9), &s, &s).unwrap();
        assert_eq!(m.support, 1);
        assert!(m.u1_one.iter().chain(&m.u2_one).all(|&x| x == 0.0));
        assert_eq!(m.map_u1, vec![0; 4]);
    }

    #[test]
    fn identity_and_tiny_code_by_hand() {
        // u1 = 101 known; code 2 with s2 = 11 allows u2 in {010, 101}.
        // 101 agrees everywhere: weight p^3 = 0.729; 010 disagrees everywhere: 0.001.
        let id = SparseParityMatrix::identity(3);
        let h2 = tiny_matrix();
        let s1 = syndrome(&id, &[1, 0, 1]).unwrap();
        let s2 = Syndrome::from_bits(vec![1, 1]).unwrap();
        let m = brute_force_marginals(&id, &h2, &model(0.9), &s1, &s2).unwrap();
        assert_eq!(m.support, 2);
        let p101 = 0.729 / 0.730;
        assert!((m.u2_one[0] - p101).abs() < 1e-12);
        assert!((m.u2_one[1] - (1.0 - p101)).abs() < 1e-12);
        assert!((m.u2_one[2] - p101).abs() < 1e-12);
        assert_eq!(m.u1_one, vec![1.0, 0.0, 1.0]);
        assert_eq!(m.map_u2, vec![1, 0, 1]);
    }

    #[test]
    fn symmetric_under_source_swap() {
        let h = tiny_matrix();
        let s = Syndrome::from_bits(vec![1, 0]).unwrap();
        let m = brute_force_marginals(&h, &h, &model(0.7), &s, &s).unwrap();
        for i in 0..3 {
            assert!((m.u1_one[i] - m.u2_one[i]).abs() < 1e-15);
        }
        assert!(m.u1_one.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn lexicographic_tie_break() {
        // p = 0.5 makes every pair equally likely.
        let h = tiny_matrix();
        let s = Syndrome::from_bits(vec![0, 0]).unwrap();
        let m = brute_force_marginals(&h, &h, &model(0.5), &s, &s).unwrap();
        assert_eq!(m.map_u1, vec![0, 0, 0]);
        assert_eq!(m.map_u2, vec![0, 0, 0]);
        let s = Syndrome::from_bits(vec![1, 0]).unwrap();
        let m = brute_force_marginals(&h, &h, &model(0.5), &s, &s).unwrap();
        // candidates 100 and 011: lexicographically 011 < 100
        assert_eq!(m.map_u1, vec![0, 1, 1]);
    }

    #[test]
    fn errors() {
        let big = SparseParityMatrix::identity(17);
        let s = Syndrome::zeros(17);
        assert!(matches!(
            brute_force_marginals(&big, &big, &model(0.9), &s, &s),
            Err(Error::TooLarge { .. })
        ));
        // 0 = u0 ^ u1 and 1 = u0 ^ u1 cannot both hold
        let h = SparseParityMatrix::from_rows(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let s = Syndrome::from_bits(vec![0, 1]).unwrap();
        assert_eq!(
            brute_force_marginals(&h, &h, &model(0.9), &s, &s),
            Err(Error::NoSolution)
        );
    }
}
