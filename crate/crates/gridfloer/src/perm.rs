//! Small permutation utilities shared by the generator enumeration and the
//! sign assignment (which keys its memo table on Lehmer ranks).

/// Factorials up to 20! (fits in u64); grids are capped far below this.
pub const FACT: [u64; 21] = {
    let mut f = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Lehmer rank of `perm` in lexicographic order, in `0..n!`.
pub fn rank(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut r = 0u64;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count() as u64;
        r += smaller * FACT[n - 1 - i];
    }
    r
}

/// Inverse of [`rank`]: writes the `r`-th permutation of `{0..n-1}` into `out`.
pub fn unrank(n: usize, mut r: u64, out: &mut [u8]) {
    debug_assert_eq!(out.len(), n);
    let mut avail: Vec<u8> = (0..n as u8).collect();
    for i in 0..n {
        let f = FACT[n - 1 - i];
        let k = (r / f) as usize;
        r %= f;
        out[i] = avail.remove(k);
    }
}

/// Number of inversions: pairs `i < j` with `perm[i] > perm[j]`.
pub fn inversions(perm: &[u8]) -> u64 {
    let mut inv = 0u64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Sign of the permutation: `+1` for even, `-1` for odd.
pub fn sign(perm: &[u8]) -> i64 {
    if inversions(perm) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Inverse permutation.
pub fn inverse(perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_roundtrip() {
        let n = 5;
        let mut buf = vec![0u8; n];
        for r in 0..FACT[n] {
            unrank(n, r, &mut buf);
            assert_eq!(rank(&buf), r);
        }
    }

    #[test]
    fn rank_is_lexicographic() {
        assert_eq!(rank(&[0, 1, 2]), 0);
        assert_eq!(rank(&[2, 1, 0]), 5);
        assert_eq!(rank(&[1, 0, 2]), 2);
    }

    #[test]
    fn sign_matches_inversion_parity() {
        assert_eq!(sign(&[0, 1, 2]), 1);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
    }
}
