//! Compositions of integers, composition surgery, shuffles, block
//! permutations, and left-coset representatives for the nested stabilizer
//! shapes used by the divided-power relations.
//!
//! Wreath factors are laid out part-major: a factor `Sigma_c wr Sigma_q`
//! with q a composition of m occupies c*m consecutive points, arranged as
//! one block of size c*q_j per part j, each block holding the c aligned
//! sub-blocks of the copies.

use std::collections::HashSet;

use thiserror::Error;

/// Enumerated-index guard for coset enumeration.
pub const DEFAULT_INDEX_BOUND: u128 = 1_000_000;
const GROUP_ORDER_BOUND: u128 = 3_628_800; // 10!

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("bad split: {l} + {lp} != part {part}")]
    BadSplit { l: usize, lp: usize, part: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

/// A composition (ordered tuple of non-negative parts).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Composition {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Offsets of each block: prefix sums, length len()+1.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &p in &self.parts {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// Replace part i (0-based) by the two parts (l, lp); the surgery
    /// r o_i (l, lp) of the splitting relation.
    pub fn split(&self, i: usize, l: usize, lp: usize) -> Result<Composition, CombError> {
        if i >= self.parts.len() {
            return Err(CombError::ShapeMismatch(format!(
                "split index {i} out of range"
            )));
        }
        if l + lp != self.parts[i] {
            return Err(CombError::BadSplit {
                l,
                lp,
                part: self.parts[i],
            });
        }
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.extend_from_slice(&self.parts[..i]);
        parts.push(l);
        parts.push(lp);
        parts.extend_from_slice(&self.parts[i + 1..]);
        Ok(Composition::new(parts))
    }

    /// Replace part i by a whole sub-composition of it.
    pub fn split_multi(&self, i: usize, sub: &Composition) -> Result<Composition, CombError> {
        if i >= self.parts.len() || sub.total() != self.parts[i] {
            return Err(CombError::ShapeMismatch(format!(
                "split_multi at {i}: sub-composition of {} into part {}",
                sub.total(),
                self.parts.get(i).copied().unwrap_or(0)
            )));
        }
        let mut parts = Vec::new();
        parts.extend_from_slice(&self.parts[..i]);
        parts.extend_from_slice(sub.parts());
        parts.extend_from_slice(&self.parts[i + 1..]);
        Ok(Composition::new(parts))
    }

    /// Drop zero parts, returning the surviving composition and the indices
    /// of the retained parts.
    pub fn strip_zeros(&self) -> (Composition, Vec<usize>) {
        let mut parts = Vec::new();
        let mut kept = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            if p > 0 {
                parts.push(p);
                kept.push(i);
            }
        }
        (Composition::new(parts), kept)
    }
}

/// The grouping operation q |> r: sum consecutive parts of r in groups of
/// sizes given by q (q is a composition of r.len()).
pub fn refine(q: &Composition, r: &Composition) -> Result<Composition, CombError> {
    if q.total() != r.len() {
        return Err(CombError::ShapeMismatch(format!(
            "q sums to {} but r has {} parts",
            q.total(),
            r.len()
        )));
    }
    let mut parts = Vec::with_capacity(q.len());
    let mut idx = 0;
    for &g in q.parts() {
        let sum: usize = r.parts()[idx..idx + g].iter().sum();
        parts.push(sum);
        idx += g;
    }
    Ok(Composition::new(parts))
}

/// The diamond operation r <> (q_1, ..., q_s): part r_i is replaced by the
/// parts (r_i * q_{i,1}, ..., r_i * q_{i,u_i}), listed i-major.
pub fn diamond(r: &Composition, qs: &[Composition]) -> Result<Composition, CombError> {
    if qs.len() != r.len() {
        return Err(CombError::ShapeMismatch(format!(
            "{} inner compositions for {} parts",
            qs.len(),
            r.len()
        )));
    }
    let mut parts = Vec::new();
    for (&ri, qi) in r.parts().iter().zip(qs) {
        for &qij in qi.parts() {
            parts.push(ri * qij);
        }
    }
    Ok(Composition::new(parts))
}

/// A permutation of {0, ..., n-1} in one-line notation: `images[i]` is the
/// image of point i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, CombError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(CombError::ShapeMismatch("not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// self after other: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            images: (0..self.n()).map(|i| self.images[other.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Decompose into adjacent transpositions (i, i+1); the product, applied
    /// left to right, reproduces the permutation: self = t_k * ... * t_1.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        // Bubble-sort the inverse one-line word; each swap records a factor.
        let mut word = self.inverse().images;
        let mut factors = Vec::new();
        let n = word.len();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    factors.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        factors.reverse();
        factors
    }
}

/// Block permutation: permute the s consecutive blocks of sizes r_i
/// according to rho, preserving the order inside each block. Block j is
/// moved to the position range of block rho(j) in the permuted composition
/// r^rho (whose part i is r_{rho^{-1}(i)}).
pub fn block_permutation(rho: &Perm, r: &Composition) -> Result<Perm, CombError> {
    if rho.n() != r.len() {
        return Err(CombError::ShapeMismatch(format!(
            "rho on {} letters, composition with {} parts",
            rho.n(),
            r.len()
        )));
    }
    let n = r.total();
    let old_off = r.offsets();
    let permuted = permute_composition(rho, r);
    let new_off = permuted.offsets();
    let mut images = vec![0; n];
    for j in 0..r.len() {
        let target = rho.apply(j);
        for t in 0..r.parts()[j] {
            images[old_off[j] + t] = new_off[target] + t;
        }
    }
    Perm::from_images(images)
}

/// The permuted composition r^rho with part i equal to r_{rho^{-1}(i)}.
pub fn permute_composition(rho: &Perm, r: &Composition) -> Composition {
    let inv = rho.inverse();
    Composition::new((0..r.len()).map(|i| r.parts()[inv.apply(i)]).collect())
}

/// All (r_1, ..., r_s)-shuffles: permutations increasing on each block of r,
/// in lexicographic order of their one-line notation.
pub fn shuffles(r: &Composition) -> Vec<Perm> {
    let n = r.total();
    let offsets = r.offsets();
    let s = r.len();
    // Backtracking over which block supplies each successive image value?
    // Simpler: choose, for each block, the set of image positions; images
    // within a block are that set in increasing order. Enumerate
    // lexicographically by recursing over positions 0..n of the one-line
    // word: position i belongs to block b(i), and its image must be the
    // next unused value assigned to that block in increasing order. To get
    // lexicographic one-line order, enumerate assignments of image sets.
    let mut result = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut block_of = vec![0usize; n];
    for b in 0..s {
        for t in offsets[b]..offsets[b + 1] {
            block_of[t] = b;
        }
    }
    // next position to fill per block
    let mut next_pos: Vec<usize> = (0..s).map(|b| offsets[b]).collect();
    fn rec(
        val: usize,
        n: usize,
        s: usize,
        offsets: &[usize],
        images: &mut Vec<usize>,
        next_pos: &mut Vec<usize>,
        result: &mut Vec<Perm>,
    ) {
        if val == n {
            result.push(Perm::from_images_unchecked(
                images.iter().map(|&x| x).collect(),
            ));
            return;
        }
        // Assign image value `val` to the next open slot of some block; to
        // enumerate shuffles in lex order of one-line notation we try the
        // block whose open position is smallest first... every choice
        // order yields all shuffles; sort at the end for determinism.
        for b in 0..s {
            if next_pos[b] < offsets[b + 1] {
                let pos = next_pos[b];
                images[pos] = val;
                next_pos[b] += 1;
                rec(val + 1, n, s, offsets, images, next_pos, result);
                next_pos[b] -= 1;
                images[pos] = usize::MAX;
            }
        }
    }
    rec(0, n, s, &offsets, &mut images, &mut next_pos, &mut result);
    result.sort();
    result.dedup();
    result
}

impl Perm {
    fn from_images_unchecked(images: Vec<usize>) -> Perm {
        Perm { images }
    }
}

/// One wreath factor `Sigma_copies wr Sigma_inner` in part-major layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathFactor {
    pub copies: usize,
    pub inner: Composition,
}

impl WreathFactor {
    /// Plain Young factor `Sigma_t` (one copy, full inner group).
    pub fn young(t: usize) -> WreathFactor {
        WreathFactor {
            copies: 1,
            inner: Composition::new(vec![t]),
        }
    }

    pub fn width(&self) -> usize {
        self.copies * self.inner.total()
    }

    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for i in 2..=self.copies {
            acc *= i as u128;
        }
        for &q in self.inner.parts() {
            let mut f: u128 = 1;
            for i in 2..=q {
                f *= i as u128;
            }
            acc *= f.pow(self.copies as u32);
        }
        acc
    }
}

/// A product of consecutive wreath factors, a subgroup of `Sigma_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSubgroup {
    pub factors: Vec<WreathFactor>,
}

impl ProductSubgroup {
    /// The Young subgroup of a composition.
    pub fn young(r: &Composition) -> ProductSubgroup {
        ProductSubgroup {
            factors: r.parts().iter().map(|&t| WreathFactor::young(t)).collect(),
        }
    }

    /// Young subgroup of `r` viewed inside the blocks of a coarser
    /// composition obtained by grouping with `q` (so it embeds in
    /// Young(q |> r) blockwise).
    pub fn young_refined(q: &Composition, r: &Composition) -> Result<ProductSubgroup, CombError> {
        if q.total() != r.len() {
            return Err(CombError::ShapeMismatch("grouping mismatch".into()));
        }
        let mut factors = Vec::new();
        let mut idx = 0;
        for &g in q.parts() {
            factors.push(WreathFactor {
                copies: 1,
                inner: Composition::new(r.parts()[idx..idx + g].to_vec()),
            });
            idx += g;
        }
        Ok(ProductSubgroup { factors })
    }

    pub fn width(&self) -> usize {
        self.factors.iter().map(|f| f.width()).sum()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|f| f.order()).product()
    }

    /// Membership test.
    pub fn contains(&self, sigma: &Perm) -> bool {
        if sigma.n() != self.width() {
            return false;
        }
        let mut offset = 0;
        for factor in &self.factors {
            let m = factor.inner.total();
            let part_off = factor.inner.offsets();
            let c = factor.copies;
            // Position of (part j, copy t, index u) in part-major layout:
            // offset + c*part_off[j] + t*q_j + u.
            let mut copy_image: Vec<Option<usize>> = vec![None; c];
            for (j, &qj) in factor.inner.parts().iter().enumerate() {
                for t in 0..c {
                    let base = offset + c * part_off[j] + t * qj;
                    for u in 0..qj {
                        let img = sigma.apply(base + u);
                        // must land in part j of some copy t'
                        if img < offset + c * part_off[j] || img >= offset + c * part_off[j + 1] {
                            return false;
                        }
                        let tp = (img - offset - c * part_off[j]) / qj.max(1);
                        match copy_image[t] {
                            None => copy_image[t] = Some(tp),
                            Some(prev) if prev == tp => {}
                            Some(_) => return false,
                        }
                    }
                }
            }
            offset += c * m;
        }
        true
    }

    /// Enumerate all elements (order must be modest).
    pub fn elements(&self) -> Result<Vec<Perm>, CombError> {
        let order = self.order();
        if order > GROUP_ORDER_BOUND {
            return Err(CombError::TooLarge(format!("subgroup order {order}")));
        }
        let n = self.width();
        let mut result = vec![Perm::identity(n)];
        let mut offset = 0;
        for factor in &self.factors {
            let c = factor.copies;
            let part_off = factor.inner.offsets();
            // Elements of one wreath factor: a copy permutation rho and,
            // per copy and part, an inner permutation.
            let mut factor_elems: Vec<Perm> = Vec::new();
            let copy_perms = all_permutations(c);
            // inner choices: per (copy, part), a permutation of q_j.
            let mut slots = Vec::new();
            for t in 0..c {
                for (j, &qj) in factor.inner.parts().iter().enumerate() {
                    slots.push((t, j, qj));
                }
            }
            let inner_choices: Vec<Vec<Perm>> = slots
                .iter()
                .map(|&(_, _, qj)| all_permutations(qj))
                .collect();
            let mut idx = vec![0usize; slots.len()];
            loop {
                for rho in &copy_perms {
                    let mut images: Vec<usize> = (0..n).collect();
                    for (slot, &(t, j, qj)) in slots.iter().enumerate() {
                        let pi = &inner_choices[slot][idx[slot]];
                        let base_src = offset + c * part_off[j] + t * qj;
                        let base_dst = offset + c * part_off[j] + rho.apply(t) * qj;
                        for u in 0..qj {
                            images[base_src + u] = base_dst + pi.apply(u);
                        }
                    }
                    factor_elems.push(Perm::from_images_unchecked(images));
                }
                // odometer
                let mut carry = true;
                for (slot, ic) in idx.iter_mut().zip(&inner_choices) {
                    if !carry {
                        break;
                    }
                    *slot += 1;
                    if *slot == ic.len() {
                        *slot = 0;
                    } else {
                        carry = false;
                    }
                }
                if carry {
                    break;
                }
            }
            // Combine with previously accumulated factors (disjoint
            // supports commute, composition is just merging images).
            let mut next = Vec::with_capacity(result.len() * factor_elems.len());
            for base in &result {
                for fe in &factor_elems {
                    next.push(base.compose(fe));
                }
            }
            result = next;
            offset += factor.width();
        }
        Ok(result)
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm::from_images_unchecked(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
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

/// The ambient group for coset enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BigGroup {
    Full(usize),
    Young(Composition),
}

impl BigGroup {
    pub fn n(&self) -> usize {
        match self {
            BigGroup::Full(n) => *n,
            BigGroup::Young(r) => r.total(),
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            BigGroup::Full(n) => (1..=*n as u128).product(),
            BigGroup::Young(r) => r
                .parts()
                .iter()
                .map(|&t| (1..=t as u128).product::<u128>())
                .product(),
        }
    }

    pub fn contains(&self, sigma: &Perm) -> bool {
        match self {
            BigGroup::Full(n) => sigma.n() == *n,
            BigGroup::Young(r) => {
                if sigma.n() != r.total() {
                    return false;
                }
                let off = r.offsets();
                for b in 0..r.len() {
                    for t in off[b]..off[b + 1] {
                        let img = sigma.apply(t);
                        if img < off[b] || img >= off[b + 1] {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// All elements in lexicographic one-line order.
    fn elements_lex(&self) -> Vec<Perm> {
        match self {
            BigGroup::Full(n) => all_permutations(*n),
            BigGroup::Young(r) => {
                let n = r.total();
                let off = r.offsets();
                let per_block: Vec<Vec<Perm>> =
                    r.parts().iter().map(|&t| all_permutations(t)).collect();
                let mut result = Vec::new();
                let mut idx = vec![0usize; r.len()];
                loop {
                    let mut images: Vec<usize> = (0..n).collect();
                    for b in 0..r.len() {
                        let pi = &per_block[b][idx[b]];
                        for t in 0..r.parts()[b] {
                            images[off[b] + t] = off[b] + pi.apply(t);
                        }
                    }
                    result.push(Perm::from_images_unchecked(images));
                    let mut carry = true;
                    // increment last block fastest so output is lex ordered
                    for b in (0..r.len()).rev() {
                        if !carry {
                            break;
                        }
                        idx[b] += 1;
                        if idx[b] == per_block[b].len() {
                            idx[b] = 0;
                        } else {
                            carry = false;
                        }
                    }
                    if carry {
                        break;
                    }
                }
                result
            }
        }
    }
}

/// Deterministic, duplicate-free set of left-coset representatives of
/// `small` in `big`: the lexicographically smallest element of each coset.
pub fn coset_reps(
    big: &BigGroup,
    small: &ProductSubgroup,
    index_bound: u128,
) -> Result<Vec<Perm>, CombError> {
    let n = big.n();
    if small.width() != n {
        return Err(CombError::ShapeMismatch(format!(
            "subgroup on {} points inside group on {n}",
            small.width()
        )));
    }
    let big_order = big.order();
    if big_order > GROUP_ORDER_BOUND {
        return Err(CombError::TooLarge(format!("group order {big_order}")));
    }
    let small_order = small.order();
    let index = big_order / small_order;
    if index > index_bound {
        return Err(CombError::TooLarge(format!("coset index {index}")));
    }
    let h_elements = small.elements()?;
    for h in &h_elements {
        if !big.contains(h) {
            return Err(CombError::ShapeMismatch(
                "subgroup not contained in ambient group".into(),
            ));
        }
    }
    let mut reps = Vec::with_capacity(index as usize);
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    for sigma in big.elements_lex() {
        if visited.contains(sigma.images()) {
            continue;
        }
        for h in &h_elements {
            visited.insert(sigma.compose(h).images.clone());
        }
        reps.push(sigma);
    }
    debug_assert_eq!(reps.len() as u128, index);
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn split_cases() {
        assert_eq!(c(&[3, 1]).split(0, 2, 1).unwrap(), c(&[2, 1, 1]));
        assert_eq!(c(&[2]).split(0, 0, 2).unwrap(), c(&[0, 2]));
        assert_eq!(c(&[1, 1]).split(1, 1, 0).unwrap(), c(&[1, 1, 0]));
        assert!(c(&[3]).split(0, 1, 1).is_err());
    }

    #[test]
    fn refine_cases() {
        assert_eq!(refine(&c(&[2, 1]), &c(&[1, 1, 1])).unwrap(), c(&[2, 1]));
        assert_eq!(refine(&c(&[3]), &c(&[1, 2, 3])).unwrap(), c(&[6]));
        assert_eq!(refine(&c(&[1, 1]), &c(&[2, 2])).unwrap(), c(&[2, 2]));
        assert!(refine(&c(&[2]), &c(&[1, 1, 1])).is_err());
    }

    #[test]
    fn refine_all_ones_is_identity() {
        let r = c(&[2, 0, 3, 1]);
        let ones = c(&[1; 4]);
        assert_eq!(refine(&ones, &r).unwrap(), r);
    }

    #[test]
    fn diamond_cases() {
        assert_eq!(diamond(&c(&[2]), &[c(&[1, 1])]).unwrap(), c(&[2, 2]));
        assert_eq!(
            diamond(&c(&[1, 1]), &[c(&[1]), c(&[1])]).unwrap(),
            c(&[1, 1])
        );
        assert_eq!(diamond(&c(&[1]), &[c(&[2])]).unwrap(), c(&[2]));
    }

    #[test]
    fn block_permutation_cases() {
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let bp = block_permutation(&swap, &c(&[2, 1])).unwrap();
        assert_eq!(bp.images(), &[1, 2, 0]);
        assert!(
            block_permutation(&Perm::identity(2), &c(&[2, 1]))
                .unwrap()
                .is_identity()
        );
        let bp2 = block_permutation(&swap, &c(&[1, 1])).unwrap();
        assert_eq!(bp2.images(), &[1, 0]);
    }

    #[test]
    fn block_permutation_homomorphism() {
        // blockperm(rho sigma, r) = blockperm(rho, r^sigma) * blockperm(sigma, r)
        let r = c(&[2, 1, 3]);
        for rho in all_permutations(3) {
            for sigma in all_permutations(3) {
                let lhs = block_permutation(&rho.compose(&sigma), &r).unwrap();
                let r_sigma = permute_composition(&sigma, &r);
                let rhs = block_permutation(&rho, &r_sigma)
                    .unwrap()
                    .compose(&block_permutation(&sigma, &r).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(&c(&[1, 1])).len(), 2);
        assert_eq!(shuffles(&c(&[2, 1])).len(), 3);
        assert_eq!(shuffles(&c(&[2, 2])).len(), 6);
    }

    #[test]
    fn shuffles_match_multinomial() {
        use crate::field::lucas_multinomial;
        // |Sh(r)| = multinomial(n; r), checked exactly (large prime).
        for r in [c(&[1, 1, 1]), c(&[2, 3]), c(&[1, 2, 2]), c(&[4, 4])] {
            let n = r.total() as u64;
            let parts: Vec<u64> = r.parts().iter().map(|&x| x as u64).collect();
            let expected = lucas_multinomial(n, &parts, 101).unwrap();
            assert_eq!(shuffles(&r).len() as u64 % 101, expected);
        }
    }

    #[test]
    fn shuffles_increase_on_blocks() {
        let r = c(&[2, 2]);
        let off = r.offsets();
        for sh in shuffles(&r) {
            for b in 0..r.len() {
                for t in off[b]..off[b + 1] - 1 {
                    assert!(sh.apply(t) < sh.apply(t + 1));
                }
            }
        }
    }

    #[test]
    fn coset_reps_trivial_cases() {
        // Sigma_2 / Sigma_2 -> {id}
        let reps = coset_reps(
            &BigGroup::Full(2),
            &ProductSubgroup::young(&c(&[2])),
            DEFAULT_INDEX_BOUND,
        )
        .unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_identity());

        // Sigma_3 / Sigma_1^3 = all of Sigma_3
        let reps = coset_reps(
            &BigGroup::Full(3),
            &ProductSubgroup::young(&c(&[1, 1, 1])),
            DEFAULT_INDEX_BOUND,
        )
        .unwrap();
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn coset_reps_young_in_young() {
        // Sigma_q / Sigma_{q o r} for q = (2), r = (1,1): 2 reps.
        let reps = coset_reps(
            &BigGroup::Young(c(&[2])),
            &ProductSubgroup::young(&c(&[1, 1])),
            DEFAULT_INDEX_BOUND,
        )
        .unwrap();
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn coset_reps_complete_and_disjoint() {
        // reps * |small| = |big| and no two reps in the same coset.
        let big = BigGroup::Full(5);
        let small = ProductSubgroup {
            factors: vec![WreathFactor {
                copies: 2,
                inner: c(&[1, 1]),
            },
            WreathFactor::young(1)],
        };
        let reps = coset_reps(&big, &small, DEFAULT_INDEX_BOUND).unwrap();
        assert_eq!(reps.len() as u128 * small.order(), big.order());
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                // same coset iff a^-1 b in small
                assert!(!small.contains(&a.inverse().compose(b)));
            }
        }
    }

    #[test]
    fn wreath_membership() {
        // Sigma_2 wr Sigma_2 inside Sigma_4 (copies 2, inner (2)):
        // part-major layout is one block of 4 with two sub-blocks {0,1},{2,3}.
        let w = ProductSubgroup {
            factors: vec![WreathFactor {
                copies: 2,
                inner: c(&[2]),
            }],
        };
        assert_eq!(w.order(), 8);
        let els = w.elements().unwrap();
        assert_eq!(els.len(), 8);
        for e in &els {
            assert!(w.contains(e));
        }
        // The 4-cycle (0 1 2 3) swaps sub-blocks inconsistently: not in w.
        let four_cycle = Perm::from_images(vec![1, 2, 3, 0]).unwrap();
        assert!(!w.contains(&four_cycle));
    }

    #[test]
    fn wreath_with_inner_composition() {
        // Sigma_2 wr Sigma_{(1,2)}: copies 2 of an inner composition (1,2)
        // of 3; width 6, part-major: part 0 occupies {0,1}, part 1 {2..6}.
        let w = ProductSubgroup {
            factors: vec![WreathFactor {
                copies: 2,
                inner: c(&[1, 2]),
            }],
        };
        assert_eq!(w.order(), 2 * 2 * 2); // 2! * (1!2!)^2
        let els = w.elements().unwrap();
        assert_eq!(els.len(), 8);
        for e in &els {
            assert!(w.contains(e), "element {:?} fails membership", e);
        }
        // Young subgroup of the diamond composition contains the wreath:
        // r = (2), q = (1,2): diamond = (2,4).
        let young = BigGroup::Young(c(&[2, 4]));
        for e in &els {
            assert!(young.contains(e));
        }
    }

    #[test]
    fn adjacent_factorization_reconstructs() {
        // Contract: self = t_{f_last} o ... o t_{f_0} (apply f_0 first).
        for sigma in all_permutations(4) {
            let rebuilt = sigma.adjacent_factorization().iter().fold(
                Perm::identity(4),
                |acc, &i| Perm::transposition(4, i, i + 1).compose(&acc),
            );
            assert_eq!(rebuilt, sigma);
        }
    }

    #[test]
    fn index_bound_enforced() {
        let res = coset_reps(
            &BigGroup::Full(8),
            &ProductSubgroup::young(&c(&[1; 8])),
            100,
        );
        assert!(matches!(res, Err(CombError::TooLarge(_))));
    }
}
