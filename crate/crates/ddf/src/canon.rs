//! Canonical forms, isomorphism testing and automorphism group orders for
//! small designs.
//!
//! The engine is a from-scratch individualization–refinement search over the
//! point set. Refinement is the equitable two-step coloring on the bipartite
//! point/block incidence structure: blocks are signed by the multiset of
//! their point colors, points by the multiset of their block signatures.
//! Only point cells are individualized; blocks are put into canonical order
//! by sorting once the points are labeled, so certificates are invariant
//! under any block reordering by construction.
//!
//! Certificates compare by full byte equality; nothing is hashed.

use crate::design::{check_permutation, Design};
use crate::error::{Error, Result};

/// Search budget for the canonical-form engine.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_points: usize,
    pub max_blocks: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_points: 128, max_blocks: 512 }
    }
}

impl Budget {
    fn admit(&self, design: &Design) -> Result<()> {
        if design.v > self.max_points || design.b() > self.max_blocks {
            return Err(Error::BudgetExceeded {
                points: design.v,
                blocks: design.b(),
                max_points: self.max_points,
                max_blocks: self.max_blocks,
            });
        }
        Ok(())
    }
}

/// Canonical byte sequence determined by the isomorphism class of a design.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Outcome of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    NotIsomorphic,
    /// A point bijection mapping the block multiset of the first design onto
    /// the second; validated before being returned.
    Isomorphic(Vec<u32>),
}

/// True iff applying `map` to every block of `d1` yields exactly the block
/// multiset of `d2`.
pub fn verify_isomorphism(d1: &Design, d2: &Design, map: &[u32]) -> Result<bool> {
    check_permutation(map, d1.v)?;
    if d1.v != d2.v || d1.b() != d2.b() || d1.k != d2.k {
        return Ok(false);
    }
    let mut mapped: Vec<Vec<u32>> = d1
        .blocks
        .iter()
        .map(|b| {
            let mut nb: Vec<u32> = b.iter().map(|&x| map[x as usize]).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    mapped.sort_unstable();
    let mut target = d2.blocks.clone();
    target.sort_unstable();
    Ok(mapped == target)
}

/// Partition of the points into an ordered list of cells.
type Cells = Vec<Vec<u32>>;

struct Refiner<'a> {
    design: &'a Design,
    blocks_of_point: Vec<Vec<u32>>,
}

impl<'a> Refiner<'a> {
    fn new(design: &'a Design) -> Refiner<'a> {
        let mut blocks_of_point = vec![Vec::new(); design.v];
        for (j, block) in design.blocks.iter().enumerate() {
            for &x in block {
                blocks_of_point[x as usize].push(j as u32);
            }
        }
        Refiner { design, blocks_of_point }
    }

    /// Equitable refinement; deterministic and isomorphism-invariant:
    /// sub-cells are ordered by their signature values, and block signature
    /// ids are assigned by sorted order of the signatures themselves.
    fn refine(&self, mut cells: Cells) -> Cells {
        loop {
            let mut colors = vec![0u32; self.design.v];
            for (c, cell) in cells.iter().enumerate() {
                for &x in cell {
                    colors[x as usize] = c as u32;
                }
            }
            // block signatures -> canonical ids
            let mut block_sigs: Vec<Vec<u32>> = self
                .design
                .blocks
                .iter()
                .map(|b| {
                    let mut sig: Vec<u32> = b.iter().map(|&x| colors[x as usize]).collect();
                    sig.sort_unstable();
                    sig
                })
                .collect();
            let mut uniq = block_sigs.clone();
            uniq.sort_unstable();
            uniq.dedup();
            let block_ids: Vec<u32> = block_sigs
                .drain(..)
                .map(|s| uniq.binary_search(&s).unwrap() as u32)
                .collect();
            // point signatures
            let point_sig: Vec<Vec<u32>> = (0..self.design.v)
                .map(|i| {
                    let mut sig: Vec<u32> = self.blocks_of_point[i]
                        .iter()
                        .map(|&j| block_ids[j as usize])
                        .collect();
                    sig.sort_unstable();
                    sig
                })
                .collect();
            // split every cell by point signature, sub-cells ordered by signature
            let mut next: Cells = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(&Vec<u32>, u32)> =
                    cell.iter().map(|&x| (&point_sig[x as usize], x)).collect();
                keyed.sort();
                let mut sub: Vec<u32> = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        split = split || !sub.is_empty();
                        if sub.len() != cell.len() {
                            split = true;
                        }
                        next.push(std::mem::take(&mut sub));
                    }
                    sub.push(w[1].1);
                }
                if sub.len() != cell.len() {
                    split = true;
                }
                next.push(sub);
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }
}

fn first_smallest_nonsingleton(cells: &Cells) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (t, cell) in cells.iter().enumerate() {
        if cell.len() > 1 && best.map(|(len, _)| cell.len() < len).unwrap_or(true) {
            best = Some((cell.len(), t));
        }
    }
    best.map(|(_, t)| t)
}

fn individualize(cells: &Cells, t: usize, u: u32) -> Cells {
    let mut next = Vec::with_capacity(cells.len() + 1);
    next.extend_from_slice(&cells[..t]);
    next.push(vec![u]);
    next.push(cells[t].iter().copied().filter(|&x| x != u).collect());
    next.extend_from_slice(&cells[t + 1..]);
    next
}

/// labeling[point] = canonical position.
fn labeling_of(cells: &Cells, v: usize) -> Vec<u32> {
    let mut labeling = vec![0u32; v];
    for (c, cell) in cells.iter().enumerate() {
        debug_assert_eq!(cell.len(), 1);
        labeling[cell[0] as usize] = c as u32;
    }
    labeling
}

fn certificate_bytes(design: &Design, labeling: &[u32]) -> Vec<u8> {
    let mut blocks: Vec<Vec<u32>> = design
        .blocks
        .iter()
        .map(|b| {
            let mut nb: Vec<u32> = b.iter().map(|&x| labeling[x as usize]).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    blocks.sort_unstable();
    let mut bytes = Vec::with_capacity(12 + design.b() * design.k * 2);
    for header in [design.v as u32, design.k as u32, design.b() as u32] {
        bytes.extend_from_slice(&header.to_le_bytes());
    }
    for block in blocks {
        for x in block {
            bytes.extend_from_slice(&(x as u16).to_le_bytes());
        }
    }
    bytes
}

/// Orbits of `cell` under the subgroup generated by the stored automorphisms
/// that fix every point in `fixed`; returns one representative per orbit.
fn orbit_representatives(cell: &[u32], autos: &[Vec<u32>], fixed: &[u32], v: usize) -> Vec<u32> {
    let applicable: Vec<&Vec<u32>> = autos
        .iter()
        .filter(|perm| fixed.iter().all(|&x| perm[x as usize] == x))
        .collect();
    if applicable.is_empty() {
        return cell.to_vec();
    }
    // union-find over points
    let mut parent: Vec<u32> = (0..v as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for perm in applicable {
        for i in 0..v as u32 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, perm[i as usize]));
            if a != b {
                parent[a as usize] = b;
            }
        }
    }
    let mut seen_roots = Vec::new();
    let mut reps = Vec::new();
    for &x in cell {
        let root = find(&mut parent, x);
        if !seen_roots.contains(&root) {
            seen_roots.push(root);
            reps.push(x);
        }
    }
    reps
}

struct CanonSearch<'a> {
    refiner: Refiner<'a>,
    best: Option<(Vec<u8>, Vec<u32>)>,
    autos: Vec<Vec<u32>>,
}

impl<'a> CanonSearch<'a> {
    fn run(design: &'a Design, seeds: &[Vec<u32>]) -> (Vec<u8>, Vec<u32>, Vec<Vec<u32>>) {
        let autos: Vec<Vec<u32>> = seeds
            .iter()
            .filter(|perm| verify_isomorphism(design, design, perm).unwrap_or(false))
            .cloned()
            .collect();
        let mut search = CanonSearch { refiner: Refiner::new(design), best: None, autos };
        let initial = vec![(0..design.v as u32).collect::<Vec<u32>>()];
        search.descend(initial, &mut Vec::new());
        let (cert, labeling) = search.best.expect("search visits at least one leaf");
        (cert, labeling, search.autos)
    }

    fn descend(&mut self, cells: Cells, fixed: &mut Vec<u32>) {
        let cells = self.refiner.refine(cells);
        let Some(t) = first_smallest_nonsingleton(&cells) else {
            let labeling = labeling_of(&cells, self.refiner.design.v);
            let cert = certificate_bytes(self.refiner.design, &labeling);
            match &self.best {
                None => self.best = Some((cert, labeling)),
                Some((best_cert, best_lab)) => {
                    if cert < *best_cert {
                        self.best = Some((cert, labeling));
                    } else if cert == *best_cert && labeling != *best_lab {
                        // λ2^{-1} ∘ λ1 is an automorphism when both labelings
                        // produce the same canonical block listing
                        let mut inv = vec![0u32; labeling.len()];
                        for (i, &pos) in labeling.iter().enumerate() {
                            inv[pos as usize] = i as u32;
                        }
                        let perm: Vec<u32> =
                            best_lab.iter().map(|&pos| inv[pos as usize]).collect();
                        debug_assert!(
                            verify_isomorphism(self.refiner.design, self.refiner.design, &perm)
                                .unwrap()
                        );
                        if !self.autos.contains(&perm) {
                            self.autos.push(perm);
                        }
                    }
                }
            }
            return;
        };
        let reps =
            orbit_representatives(&cells[t], &self.autos, fixed, self.refiner.design.v);
        for u in reps {
            fixed.push(u);
            self.descend(individualize(&cells, t, u), fixed);
            fixed.pop();
        }
    }
}

/// Canonical certificate of a design's isomorphism class.
pub fn canonical_form(design: &Design, budget: &Budget) -> Result<Certificate> {
    canonical_form_seeded(design, &[], budget)
}

/// Canonical certificate, with known automorphisms (e.g. the translations of
/// a development) seeded into the search to prune symmetric branches. Seeds
/// that are not genuine automorphisms are validated away.
pub fn canonical_form_seeded(
    design: &Design,
    seeds: &[Vec<u32>],
    budget: &Budget,
) -> Result<Certificate> {
    budget.admit(design)?;
    let (cert, _, _) = CanonSearch::run(design, seeds);
    Ok(Certificate(cert))
}

fn canonical_labeling(design: &Design, budget: &Budget) -> Result<(Vec<u8>, Vec<u32>)> {
    budget.admit(design)?;
    let (cert, labeling, _) = CanonSearch::run(design, &[]);
    Ok((cert, labeling))
}

/// Isomorphism test via certificate equality; on success the witness point
/// bijection is assembled from the two canonical labelings and re-validated.
pub fn are_isomorphic(d1: &Design, d2: &Design, budget: &Budget) -> Result<IsoOutcome> {
    if d1.v != d2.v || d1.b() != d2.b() || d1.k != d2.k {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let (cert1, lab1) = canonical_labeling(d1, budget)?;
    let (cert2, lab2) = canonical_labeling(d2, budget)?;
    if cert1 != cert2 {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    // x ↦ lab2^{-1}(lab1(x))
    let mut inv2 = vec![0u32; d2.v];
    for (i, &pos) in lab2.iter().enumerate() {
        inv2[pos as usize] = i as u32;
    }
    let map: Vec<u32> = lab1.iter().map(|&pos| inv2[pos as usize]).collect();
    assert!(
        verify_isomorphism(d1, d2, &map)?,
        "canonical labelings with equal certificates must compose to an isomorphism"
    );
    Ok(IsoOutcome::Isomorphic(map))
}

/// Order of the group of point permutations preserving the block multiset.
///
/// Exhaustive individualization–refinement enumeration of all automorphisms:
/// the left copy always individualizes the first vertex of the target cell,
/// the right copy tries every vertex, so every automorphism corresponds to
/// exactly one root-to-leaf path.
pub fn automorphism_group_order(design: &Design, budget: &Budget) -> Result<u64> {
    budget.admit(design)?;
    let refiner = Refiner::new(design);
    let initial: Cells = vec![(0..design.v as u32).collect()];
    let mut count = 0u64;
    enumerate_isos(&refiner, &refiner, initial.clone(), initial, &mut |map| {
        debug_assert!(verify_isomorphism(design, design, map).unwrap());
        count += 1;
    });
    Ok(count)
}

fn cell_sizes(cells: &Cells) -> Vec<usize> {
    cells.iter().map(|c| c.len()).collect()
}

fn enumerate_isos(
    left: &Refiner,
    right: &Refiner,
    lcells: Cells,
    rcells: Cells,
    on_leaf: &mut impl FnMut(&[u32]),
) {
    let lcells = left.refine(lcells);
    let rcells = right.refine(rcells);
    if cell_sizes(&lcells) != cell_sizes(&rcells) {
        return;
    }
    let Some(t) = first_smallest_nonsingleton(&lcells) else {
        // discrete on both sides: candidate bijection by cell position
        let llab = labeling_of(&lcells, left.design.v);
        let rlab = labeling_of(&rcells, right.design.v);
        let mut inv_r = vec![0u32; right.design.v];
        for (i, &pos) in rlab.iter().enumerate() {
            inv_r[pos as usize] = i as u32;
        }
        let map: Vec<u32> = llab.iter().map(|&pos| inv_r[pos as usize]).collect();
        if verify_isomorphism(left.design, right.design, &map).unwrap_or(false) {
            on_leaf(&map);
        }
        return;
    };
    let u = lcells[t][0];
    let lnext = individualize(&lcells, t, u);
    for &w in &rcells[t] {
        enumerate_isos(left, right, lnext.clone(), individualize(&rcells, t, w), on_leaf);
    }
}
