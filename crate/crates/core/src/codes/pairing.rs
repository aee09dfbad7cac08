//! The Cantor pairing `e(i, j) = (i + j)(i + j + 1)/2 + j` and its inverse.

/// Cantor pairing of `(i, j)`.
pub fn cantor_pair(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(n: usize) -> (usize, usize) {
    // d is the largest diagonal with d(d+1)/2 <= n.
    let n128 = n as u128;
    let mut d = ((8 * n128 + 1).isqrt() - 1) / 2;
    while d * (d + 1) / 2 > n128 {
        d -= 1;
    }
    while (d + 1) * (d + 2) / 2 <= n128 {
        d += 1;
    }
    let j = (n128 - d * (d + 1) / 2) as usize;
    (d as usize - j, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(cantor_pair(0, 0), 0);
        assert_eq!(cantor_pair(1, 0), 1);
        assert_eq!(cantor_pair(0, 1), 2);
        assert_eq!(cantor_pair(1, 1), 4);
        assert_eq!(cantor_unpair(4), (1, 1));
    }

    #[test]
    fn inverse_below_one_million() {
        for n in 0..1_000_000 {
            let (i, j) = cantor_unpair(n);
            assert_eq!(cantor_pair(i, j), n);
        }
        for i in 0..300 {
            for j in 0..300 {
                assert_eq!(cantor_unpair(cantor_pair(i, j)), (i, j));
            }
        }
    }

    #[test]
    fn enumerates_diagonals_in_order() {
        // Walking the diagonals directly gives n = 0, 1, 2, ...
        let mut n = 0;
        for d in 0..50 {
            for j in 0..=d {
                assert_eq!(cantor_unpair(n), (d - j, j));
                n += 1;
            }
        }
    }
}
