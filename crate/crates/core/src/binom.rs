//! Exact binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` as an exact big integer, with `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Signed-top variant used by the degree formulas: zero whenever `n < 0`.
pub fn binomial_signed(n: i64, k: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    binomial(n as u64, k)
}

/// `C(n, k)` in machine words, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Pascal table of `C(a, b)` for `a, b <= 64`, saturating at `u64::MAX`.
pub(crate) fn pascal_table() -> Vec<[u64; 65]> {
    let mut table = vec![[0u64; 65]; 65];
    for a in 0..=64 {
        table[a][0] = 1;
        for b in 1..=a {
            table[a][b] = table[a - 1][b - 1].saturating_add(table[a - 1][b]);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 3), BigUint::from(10u32));
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(4, 4), BigUint::one());
        assert_eq!(binomial(4, 5), BigUint::zero());
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binomial_signed(-1, 0), BigUint::zero());
    }

    #[test]
    fn word_and_big_agree() {
        let table = pascal_table();
        for n in 0..=64u64 {
            for k in 0..=n {
                let big = binomial(n, k as i64);
                let word = binomial_u64(n, k).unwrap();
                assert_eq!(big, BigUint::from(word));
                assert_eq!(table[n as usize][k as usize], word);
            }
        }
        assert_eq!(binomial_u64(68, 34), None);
    }
}
