use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseParityMatrix;
use crate::error::{Error, Result};

const MAX_SHUFFLES: usize = 64;
const MAX_SWAP_TRIES: usize = 10_000;

/// Random `(dv, dc)`-regular parity-check matrix with `m = n dv / dc` rows.
///
/// Each column contributes `dv` edge sockets. The sockets are shuffled and
/// dealt to checks `dc` at a time; any socket that would give a check the same
/// column twice is swapped with a random socket of another check that can take
/// it. If a repair gets stuck the whole permutation is redrawn, up to a fixed
/// number of times. Length-4 cycles are not avoided.
pub fn gallager_construct(n: usize, dv: usize, dc: usize, seed: u64) -> Result<SparseParityMatrix> {
    if dv < 2 {
        return Err(Error::InvalidParameter(format!("variable degree {dv} < 2")));
    }
    if dc <= dv {
        return Err(Error::InvalidParameter(format!(
            "check degree {dc} must exceed variable degree {dv}"
        )));
    }
    if n < dc {
        return Err(Error::InvalidParameter(format!(
            "block length {n} smaller than check degree {dc}"
        )));
    }
    if !(n * dv).is_multiple_of(dc) {
        return Err(Error::InvalidParameter(format!(
            "n * dv = {} is not divisible by dc = {dc}",
            n * dv
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sockets: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, dv)).collect();

    for _ in 0..MAX_SHUFFLES {
        sockets.shuffle(&mut rng);
        if repair(&mut sockets, dc, &mut rng) {
            let rows = sockets.chunks(dc).map(<[usize]>::to_vec).collect();
            return SparseParityMatrix::from_rows(n, rows);
        }
    }
    Err(Error::Construction(format!(
        "could not remove parallel edges for n={n}, dv={dv}, dc={dc} after {MAX_SHUFFLES} shuffles"
    )))
}

fn repair(sockets: &mut [usize], dc: usize, rng: &mut ChaCha8Rng) -> bool {
    let total = sockets.len();
    let check_of = |pos: usize| pos / dc;
    let holds =
        |s: &[usize], check: usize, col: usize| s[check * dc..(check + 1) * dc].contains(&col);
    for pos in 0..total {
        let c = check_of(pos);
        let x = sockets[pos];
        if !sockets[c * dc..pos].contains(&x) {
            continue;
        }
        let mut fixed = false;
        for _ in 0..MAX_SWAP_TRIES {
            let t = rng.gen_range(0..total);
            let c2 = check_of(t);
            let y = sockets[t];
            if c2 == c || holds(sockets, c, y) || holds(sockets, c2, x) {
                continue;
            }
            sockets.swap(pos, t);
            fixed = true;
            break;
        }
        if !fixed {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_regular(h: &SparseParityMatrix, dv: usize, dc: usize) {
        h.validate().unwrap();
        assert!(h.cols().iter().all(|c| c.len() == dv));
        assert!(h.rows().iter().all(|r| r.len() == dc));
    }

    #[test]
    fn small_code_degrees() {
        for seed in 0..20 {
            let h = gallager_construct(6, 2, 3, seed).unwrap();
            assert_eq!(h.m(), 4);
            assert_regular(&h, 2, 3);
        }
    }

    #[test]
    fn half_rate_code() {
        let h = gallager_construct(1024, 3, 6, 7).unwrap();
        assert_eq!(h.m(), 512);
        assert_eq!(h.rate(), 0.5);
        assert_regular(&h, 3, 6);
        assert_eq!(h, gallager_construct(1024, 3, 6, 7).unwrap());
        assert_ne!(h, gallager_construct(1024, 3, 6, 8).unwrap());
    }

    #[test]
    fn degree_not_dividing_length() {
        // n * dv divisible by dc although n is not.
        let h = gallager_construct(10, 2, 4, 3).unwrap();
        assert_eq!(h.m(), 5);
        assert_regular(&h, 2, 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gallager_construct(10, 1, 3, 0).is_err());
        assert!(gallager_construct(10, 3, 3, 0).is_err());
        assert!(gallager_construct(4, 2, 6, 0).is_err());
        assert!(gallager_construct(7, 3, 6, 0).is_err());
    }

    #[test]
    fn length_equal_to_check_degree() {
        // Every check must contain every column.
        let h = gallager_construct(3, 2, 3, 0).unwrap();
        assert_eq!(h.rows(), &[vec![0, 1, 2], vec![0, 1, 2]]);
    }
}
