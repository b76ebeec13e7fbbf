//! Integer model of the multilinear components of the free Lie algebra,
//! embedded in the free associative algebra via [u, v] = uv - vu.
//!
//! A multilinear associative monomial on n letters is a word listing the
//! letters 1..=n exactly once. The multilinear Lie component has the
//! left-normed basis { [[...[x_1, x_w1], x_w2]...] : w a permutation of
//! {2..n} }, of size (n-1)!. Coordinates in that basis can be read off an
//! associative expansion: the only word starting with letter 1 in the
//! expansion of a left-normed basis element is its own letter sequence.
//!
//! All coefficients here are integers; reduction mod p happens when the
//! operad tables are built.

use std::collections::BTreeMap;

pub type Word = Vec<u8>;
pub type ZLin = BTreeMap<Word, i64>;

fn prune(acc: &mut ZLin) {
    acc.retain(|_, c| *c != 0);
}

/// Associative product (concatenation) of linear combinations.
fn concat(a: &ZLin, b: &ZLin) -> ZLin {
    let mut out = ZLin::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            *out.entry(w).or_insert(0) += ca * cb;
        }
    }
    prune(&mut out);
    out
}

/// Commutator [a, b] = ab - ba.
pub fn bracket(a: &ZLin, b: &ZLin) -> ZLin {
    let mut out = concat(a, b);
    for (w, c) in concat(b, a) {
        *out.entry(w).or_insert(0) -= c;
    }
    prune(&mut out);
    out
}

fn letter(x: u8) -> ZLin {
    let mut m = ZLin::new();
    m.insert(vec![x], 1);
    m
}

/// Expansion of the left-normed bracket [[...[c_0, c_1], c_2]...], c_last].
pub fn left_normed(letters: &[u8]) -> ZLin {
    let mut acc = letter(letters[0]);
    for &c in &letters[1..] {
        acc = bracket(&acc, &letter(c));
    }
    acc
}

/// The left-normed basis words of the multilinear Lie component on n
/// letters: [1, w] for w running over permutations of {2..n} in
/// lexicographic order. Each entry is the full letter sequence.
pub fn basis_letter_sequences(n: usize) -> Vec<Vec<u8>> {
    let tail: Vec<u8> = (2..=n as u8).collect();
    let mut seqs = Vec::new();
    let mut perm = tail.clone();
    loop {
        let mut seq = vec![1u8];
        seq.extend_from_slice(&perm);
        seqs.push(seq);
        if !next_perm(&mut perm) {
            break;
        }
    }
    seqs
}

fn next_perm(v: &mut [u8]) -> bool {
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

/// Expansions of the left-normed basis of the multilinear component.
pub fn basis_expansions(n: usize) -> Vec<ZLin> {
    basis_letter_sequences(n)
        .iter()
        .map(|seq| left_normed(seq))
        .collect()
}

/// Read the coordinates of a Lie element (given by its associative
/// expansion) in the left-normed basis: the coefficient on basis element
/// [1, w] equals the coefficient of the word 1w. Returns None if the
/// element fails the reconstruction check (i.e. is not in the Lie span).
pub fn coordinates(n: usize, v: &ZLin) -> Option<Vec<i64>> {
    let seqs = basis_letter_sequences(n);
    let coords: Vec<i64> = seqs.iter().map(|s| *v.get(s).unwrap_or(&0)).collect();
    // Reconstruction check: sum coords * basis expansion == v.
    let mut recon = ZLin::new();
    for (c, b) in coords.iter().zip(basis_expansions(n)) {
        if *c == 0 {
            continue;
        }
        for (w, cw) in b {
            *recon.entry(w).or_insert(0) += c * cw;
        }
    }
    prune(&mut recon);
    let mut v2 = v.clone();
    prune(&mut v2);
    if recon == v2 {
        Some(coords)
    } else {
        None
    }
}

/// Relabel letters by a map sending letter x to images[x - 1] + 1 (the
/// left action of a permutation given in 0-based one-line notation).
pub fn relabel(v: &ZLin, images: &[usize]) -> ZLin {
    let mut out = ZLin::new();
    for (w, c) in v {
        let nw: Word = w.iter().map(|&x| (images[x as usize - 1] + 1) as u8).collect();
        *out.entry(nw).or_insert(0) += c;
    }
    out
}

/// Partial composition a o_i b: substitute b (on m letters) into letter i
/// of a (on n letters), shifting letters as usual: letters of b become
/// i..i+m-1, letters of a above i shift by m-1.
pub fn substitute(a: &ZLin, i: u8, b: &ZLin, m: usize) -> ZLin {
    let shift = (m - 1) as u8;
    let mut out = ZLin::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = Vec::with_capacity(wa.len() + wb.len() - 1);
            for &x in wa {
                if x == i {
                    for &y in wb {
                        w.push(y + i - 1);
                    }
                } else if x > i {
                    w.push(x + shift);
                } else {
                    w.push(x);
                }
            }
            *out.entry(w).or_insert(0) += ca * cb;
        }
    }
    prune(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_counts() {
        assert_eq!(basis_expansions(1).len(), 1);
        assert_eq!(basis_expansions(2).len(), 1);
        assert_eq!(basis_expansions(3).len(), 2);
        assert_eq!(basis_expansions(4).len(), 6);
    }

    #[test]
    fn jacobi_identity_holds() {
        // [[1,2],3] + [[2,3],1] + [[3,1],2] = 0 in the associative model.
        let a = left_normed(&[1, 2, 3]);
        let b = left_normed(&[2, 3, 1]);
        let c = left_normed(&[3, 1, 2]);
        let mut sum = a;
        for (w, cc) in b.iter().chain(c.iter()) {
            *sum.entry(w.clone()).or_insert(0) += cc;
        }
        prune(&mut sum);
        assert!(sum.is_empty());
    }

    #[test]
    fn coordinates_identify_basis() {
        for n in 2..=4 {
            let basis = basis_expansions(n);
            for (i, b) in basis.iter().enumerate() {
                let coords = coordinates(n, b).expect("basis is in the span");
                for (j, &c) in coords.iter().enumerate() {
                    assert_eq!(c, i64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn non_lie_element_rejected() {
        // The bare word 12 is not a Lie element.
        let mut v = ZLin::new();
        v.insert(vec![1, 2], 1);
        assert!(coordinates(2, &v).is_none());
    }

    #[test]
    fn bracket_of_basis_elements_stays_in_span() {
        // [[1,2], [3,4]] is multilinear on 4 letters; must lie in the span.
        let a = left_normed(&[1, 2]);
        let b = left_normed(&[3, 4]);
        let v = bracket(&a, &b);
        let coords = coordinates(4, &v).expect("Lie element");
        // [[1,2],[3,4]] = [[[1,2],3],4] - [[[1,2],4],3]
        let mut expected = vec![0i64; 6];
        let seqs = basis_letter_sequences(4);
        let i1 = seqs.iter().position(|s| s == &vec![1, 2, 3, 4]).unwrap();
        let i2 = seqs.iter().position(|s| s == &vec![1, 2, 4, 3]).unwrap();
        expected[i1] = 1;
        expected[i2] = -1;
        assert_eq!(coords, expected);
    }

    #[test]
    fn substitution_shifts_letters() {
        // [1,2] o_1 [1,2] = [[1,2],3]
        let b2 = left_normed(&[1, 2]);
        let v = substitute(&b2, 1, &b2, 2);
        let coords = coordinates(3, &v).unwrap();
        assert_eq!(coords, vec![1, 0]);
        // [1,2] o_2 [1,2] = [1,[2,3]] = [[1,2],3] - [[1,3],2]
        let v2 = substitute(&b2, 2, &b2, 2);
        let coords2 = coordinates(3, &v2).unwrap();
        assert_eq!(coords2, vec![1, -1]);
    }
}
