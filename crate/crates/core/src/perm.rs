//! Signed permutation enumeration via Heap's algorithm.
//!
//! Each swap of two entries flips the sign, so the sign is maintained
//! incrementally instead of recounting inversions.

/// Calls `f(perm, sign)` once for every permutation of `items`, with
/// `sign` the signature relative to the initial order. The slice passed
/// to `f` is reused between calls.
pub fn for_each_signed_permutation<T: Clone, F: FnMut(&[T], i32)>(items: &[T], mut f: F) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    let mut sign = 1i32;
    f(&a, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            f(&a, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Collects all `(permutation, sign)` pairs. Convenience wrapper used in
/// tests and in code paths where allocation is not a concern.
pub fn signed_permutations<T: Clone>(items: &[T]) -> Vec<(Vec<T>, i32)> {
    let mut out = Vec::new();
    for_each_signed_permutation(items, |p, s| out.push((p.to_vec(), s)));
    out
}
