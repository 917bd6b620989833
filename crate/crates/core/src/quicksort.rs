//! First-element-pivot Lomuto quicksort, kept as the reference the
//! samplesort degenerates to when `2^k - 1 >= n - 1`.

/// Sorts `v` with the first element as pivot and a Lomuto pass using
/// `is_less(x, pivot)`, then recurses on both sides.
pub fn quicksort_ref<T, F>(mut v: &mut [T], is_less: &mut F)
where
    F: FnMut(&T, &T) -> bool,
{
    // recurse into the smaller side, loop on the larger
    while v.len() > 1 {
        let mut j = 0;
        for i in 1..v.len() {
            if is_less(&v[i], &v[0]) {
                j += 1;
                v.swap(j, i);
            }
        }
        v.swap(0, j);
        let (left, rest) = v.split_at_mut(j);
        let right = &mut rest[1..];
        if left.len() < right.len() {
            quicksort_ref(left, is_less);
            v = right;
        } else {
            quicksort_ref(right, is_less);
            v = left;
        }
    }
}
