//! Development of difference families into 2-designs and the design
//! invariants used for isomorphism testing: block intersection profiles and
//! incidence-matrix ranks over prime fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::BlockFamily;
use crate::field::is_prime;

/// A block design: `v` points and a list (multiset) of sorted point-index
/// blocks of common size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<Vec<u32>>,
    /// Provenance label (construction + group description).
    pub origin: String,
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<u32>>, origin: String) -> Design {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            debug_assert!(b.iter().all(|&x| (x as usize) < v));
        }
        let k = blocks.first().map(|b| b.len()).unwrap_or(0);
        debug_assert!(blocks.iter().all(|b| b.len() == k));
        Design { v, k, blocks, origin }
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks as fixed-width bitsets over the points.
    pub(crate) fn bitsets(&self) -> Vec<Vec<u64>> {
        let words = self.v.div_ceil(64);
        self.blocks
            .iter()
            .map(|block| {
                let mut bits = vec![0u64; words];
                for &x in block {
                    bits[x as usize / 64] |= 1 << (x % 64);
                }
                bits
            })
            .collect()
    }

    /// Applies a point permutation (and a deterministic block reordering via
    /// the sort in `new`), giving an isomorphic design.
    pub fn relabeled(&self, perm: &[u32]) -> Result<Design> {
        check_permutation(perm, self.v)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| perm[x as usize]).collect())
            .collect();
        Ok(Design::new(self.v, blocks, format!("{} (relabeled)", self.origin)))
    }
}

/// The point permutations x ↦ x + g for every group element g. All of them
/// are automorphisms of the development of any family over the group; useful
/// as seeds for the canonical-form search.
pub fn translation_permutations(family: &BlockFamily) -> Vec<Vec<u32>> {
    let group = &family.group;
    let v = group.order() as u32;
    (1..v)
        .map(|g| (0..v).map(|x| group.add(x, g)).collect())
        .collect()
}

pub(crate) fn check_permutation(perm: &[u32], v: usize) -> Result<()> {
    if perm.len() != v {
        return Err(Error::NotAPermutation);
    }
    let mut seen = vec![false; v];
    for &x in perm {
        if (x as usize) >= v || std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::NotAPermutation);
        }
    }
    Ok(())
}

/// Histogram of |B_i ∩ B_j| over unordered pairs of distinct block positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub histogram: BTreeMap<usize, u64>,
}

impl IntersectionProfile {
    /// The occurring intersection sizes, sorted.
    pub fn support(&self) -> Vec<usize> {
        self.histogram.keys().copied().collect()
    }

    pub fn total_pairs(&self) -> u64 {
        self.histogram.values().sum()
    }
}

/// The development {D_i + g : all i, all g}: outer loop over base blocks,
/// inner loop over group elements in index order. Translates are kept as a
/// multiset; each orbit is asserted to have full length v.
pub fn develop(family: &BlockFamily) -> Design {
    let group = &family.group;
    let v = group.order() as usize;
    let mut blocks = Vec::with_capacity(family.b() * v);
    for base in &family.blocks {
        let orbit_start = blocks.len();
        for g in 0..v as u32 {
            let mut translate: Vec<u32> = base.iter().map(|&x| group.add(x, g)).collect();
            translate.sort_unstable();
            blocks.push(translate);
        }
        // full-orbit assertion: all v translates of this base block distinct
        let mut orbit: Vec<&Vec<u32>> = blocks[orbit_start..].iter().collect();
        orbit.sort_unstable();
        orbit.dedup();
        assert_eq!(orbit.len(), v, "orbit of a base block must have full length");
    }
    Design::new(v, blocks, format!("dev({})", family.label))
}

/// Checks the 2-design property: every pair of points in exactly λ blocks.
/// Returns λ, or a witness pair encoded as the two point indices.
pub fn verify_2design(design: &Design) -> std::result::Result<u64, (u32, u32, u64)> {
    let v = design.v;
    let mut pair_counts = vec![0u64; v * v];
    for block in &design.blocks {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                pair_counts[x as usize * v + y as usize] += 1;
            }
        }
    }
    let mut lambda = None;
    for x in 0..v {
        for y in x + 1..v {
            let c = pair_counts[x * v + y];
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => return Err((x as u32, y as u32, c)),
                _ => {}
            }
        }
    }
    Ok(lambda.unwrap_or(0))
}

fn popcount_intersection(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn histogram_from_counts(counts: Vec<u64>) -> IntersectionProfile {
    let histogram = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    IntersectionProfile { histogram }
}

/// Exact block intersection histogram, the off-diagonal of MᵀM read as an
/// unordered-pair multiset. Dispatches to the parallel path when built with
/// the `parallel` feature.
pub fn intersection_profile(design: &Design) -> IntersectionProfile {
    #[cfg(feature = "parallel")]
    {
        intersection_profile_par(design)
    }
    #[cfg(not(feature = "parallel"))]
    {
        intersection_profile_seq(design)
    }
}

/// Single-threaded pair sweep.
pub fn intersection_profile_seq(design: &Design) -> IntersectionProfile {
    let bitsets = design.bitsets();
    let mut counts = vec![0u64; design.k + 1];
    for (i, a) in bitsets.iter().enumerate() {
        for b in &bitsets[i + 1..] {
            counts[popcount_intersection(a, b)] += 1;
        }
    }
    histogram_from_counts(counts)
}

/// Pair sweep partitioned across rayon workers; exact counts independent of
/// the partitioning.
#[cfg(feature = "parallel")]
pub fn intersection_profile_par(design: &Design) -> IntersectionProfile {
    use rayon::prelude::*;
    let bitsets = design.bitsets();
    let k = design.k;
    let counts = (0..bitsets.len())
        .into_par_iter()
        .fold(
            || vec![0u64; k + 1],
            |mut counts, i| {
                let a = &bitsets[i];
                for b in &bitsets[i + 1..] {
                    counts[popcount_intersection(a, b)] += 1;
                }
                counts
            },
        )
        .reduce(
            || vec![0u64; k + 1],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    histogram_from_counts(counts)
}

/// Sorted set of occurring intersection sizes.
pub fn profile_support(design: &Design) -> Vec<usize> {
    intersection_profile(design).support()
}

/// Rank of the v×b point-block incidence matrix over GF(ℓ), by elimination.
pub fn incidence_p_rank(design: &Design, ell: u64) -> Result<usize> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if design.blocks.is_empty() || design.v == 0 {
        return Ok(0);
    }
    // rows = points, columns = blocks; eliminate row by row
    let b = design.b();
    let mut rows: Vec<Vec<u64>> = vec![vec![0; b]; design.v];
    for (j, block) in design.blocks.iter().enumerate() {
        for &x in block {
            rows[x as usize][j] = 1;
        }
    }
    let mut rank = 0;
    let mut col = 0;
    while col < b && rank < design.v {
        if let Some(pivot) = (rank..design.v).find(|&i| rows[i][col] % ell != 0) {
            rows.swap(rank, pivot);
            let inv = mod_inv(rows[rank][col] % ell, ell);
            for x in rows[rank].iter_mut() {
                *x = *x % ell * inv % ell;
            }
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[col] % ell != 0 {
                    let factor = row[col] % ell;
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x % ell + ell - factor * p % ell) % ell;
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    Ok(rank)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
