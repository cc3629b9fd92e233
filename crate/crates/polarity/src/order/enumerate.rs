//! Exhaustive enumeration of small orders and maps.

use std::collections::HashSet;

use super::map::MonotoneMap;
use super::preorder::Preorder;

/// Every monotone map from `src` to `tgt`, in lexicographic order of images.
pub fn monotone_maps(src: &Preorder, tgt: &Preorder) -> Vec<MonotoneMap> {
    monotone_maps_bounded(src, tgt, usize::MAX).unwrap_or_default()
}

/// Like [`monotone_maps`] but gives up with `None` once more than `cap`
/// maps have been found.
pub fn monotone_maps_bounded(src: &Preorder, tgt: &Preorder, cap: usize) -> Option<Vec<MonotoneMap>> {
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(src.len());
    if extend(src, tgt, &mut image, &mut out, cap) {
        Some(out)
    } else {
        None
    }
}

fn extend(
    src: &Preorder,
    tgt: &Preorder,
    image: &mut Vec<usize>,
    out: &mut Vec<MonotoneMap>,
    cap: usize,
) -> bool {
    let j = image.len();
    if j == src.len() {
        if out.len() == cap {
            return false;
        }
        out.push(MonotoneMap::new_unchecked(
            src.clone(),
            tgt.clone(),
            image.clone(),
        ));
        return true;
    }
    for t in 0..tgt.len() {
        let fits = (0..j)
            .all(|i| (!src.leq(i, j) || tgt.leq(image[i], t)) && (!src.leq(j, i) || tgt.leq(t, image[i])));
        if fits {
            image.push(t);
            let ok = extend(src, tgt, image, out, cap);
            image.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// All preorders on the elements `0..n`, labelled by their index.
pub fn preorders(n: usize) -> Vec<Preorder> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << cells.len() {
        let mut rows = vec![vec![false; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in cells.iter().enumerate() {
            rows[i][j] = bits >> k & 1 == 1;
        }
        if let Ok(p) = Preorder::from_matrix(labels.clone(), rows) {
            out.push(p);
        }
    }
    out
}

/// All posets on `0..n`.
pub fn posets(n: usize) -> Vec<Preorder> {
    preorders(n).into_iter().filter(Preorder::is_poset).collect()
}

/// One representative per isomorphism class, keeping the first seen.
pub fn up_to_isomorphism(orders: impl IntoIterator<Item = Preorder>) -> Vec<Preorder> {
    let mut seen = HashSet::new();
    orders
        .into_iter()
        .filter(|p| seen.insert((p.len(), canonical_key(p))))
        .collect()
}

/// The lexicographically least relation matrix over all relabellings.
fn canonical_key(p: &Preorder) -> Vec<bool> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let key: Vec<bool> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| p.leq(perm[i], perm[j]))
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
        let counts: Vec<usize> = (0..=4).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
        let counts: Vec<usize> = (0..=4).map(|n| up_to_isomorphism(posets(n)).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
        let counts: Vec<usize> = (0..=3).map(|n| up_to_isomorphism(preorders(n)).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 9]);
    }

    #[test]
    fn monotone_maps_between_chains() {
        // non-decreasing sequences of length 3 over 3 values
        assert_eq!(monotone_maps(&Preorder::chain(3), &Preorder::chain(3)).len(), 10);
        assert_eq!(
            monotone_maps(&Preorder::antichain(2), &Preorder::chain(3)).len(),
            9
        );
        assert_eq!(monotone_maps(&Preorder::empty(), &Preorder::chain(3)).len(), 1);
        assert!(monotone_maps(&Preorder::chain(1), &Preorder::empty()).is_empty());
        assert!(monotone_maps_bounded(&Preorder::chain(3), &Preorder::chain(3), 9).is_none());
    }
}
