//! The three difference-family constructions: Wilson (cyclotomic cosets in
//! GF(p^m)), Momihara (GR(p², 2n)) and Davis (GR(p², r)).

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::group::GroupView;
use crate::ring::RingCtx;

/// A labeled collection of disjoint equal-size subsets of a finite abelian
/// group, given as sorted element-index sets.
#[derive(Debug, Clone)]
pub struct BlockFamily {
    pub group: GroupView,
    pub blocks: Vec<Vec<u32>>,
    pub label: String,
}

impl BlockFamily {
    fn new(group: GroupView, mut blocks: Vec<Vec<u32>>, label: String) -> Result<BlockFamily> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let k = blocks.first().map(|b| b.len()).unwrap_or(0);
        let mut seen = vec![false; group.order() as usize];
        for b in &blocks {
            if b.len() != k {
                return Err(Error::UnequalBlockSizes(k, b.len()));
            }
            for &x in b {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::NotDisjoint(x));
                }
            }
        }
        Ok(BlockFamily { group, blocks, label })
    }

    /// Assembles a family from pre-built parts, re-validating disjointness
    /// and equal block sizes. Used when loading serialized families.
    pub fn from_parts(
        group: GroupView,
        blocks: Vec<Vec<u32>>,
        label: String,
    ) -> Result<BlockFamily> {
        for b in &blocks {
            for &x in b {
                if x as u64 >= group.order() {
                    return Err(Error::IndexOutOfRange {
                        index: x as u64,
                        bound: group.order(),
                    });
                }
            }
        }
        BlockFamily::new(group, blocks, label)
    }

    pub fn v(&self) -> u64 {
        self.group.order()
    }

    pub fn k(&self) -> usize {
        self.blocks.first().map(|b| b.len()).unwrap_or(0)
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// True when the blocks partition the nonzero group elements.
    pub fn is_near_complete(&self) -> bool {
        let total: usize = self.blocks.iter().map(|b| b.len()).sum();
        total as u64 == self.v() - 1 && self.blocks.iter().all(|b| !b.contains(&self.group.zero()))
    }
}

/// Wilson's family: the cosets C_0, ..., C_{e-1} of the e-th powers in
/// GF(p^m)^*, a (q, f, f-1) near-complete disjoint difference family.
pub fn wilson_family(p: u64, m: usize, e: u64) -> Result<BlockFamily> {
    let field = FieldCtx::new(p, m)?;
    let q = field.q();
    if e == 0 || (q - 1) % e != 0 {
        return Err(Error::DoesNotDivide { divisor: e, of: q - 1 });
    }
    let f = (q - 1) / e;
    if e < 2 || f < 2 {
        return Err(Error::DegenerateParameters(format!(
            "wilson requires e, f >= 2, got e = {e}, f = {f}"
        )));
    }
    let group = GroupView::from_field(&field);
    let blocks: Vec<Vec<u32>> = field
        .cyclotomic_classes(e)?
        .into_iter()
        .map(|class| {
            class
                .into_iter()
                .map(|elem| group.index_of_code(elem.0).expect("class element in group"))
                .collect()
        })
        .collect();
    BlockFamily::new(group, blocks, format!("wilson(p={p},m={m},e={e})"))
}

/// Momihara's family in GR(p², 2n): blocks D_i = ξ^i(P ∪ ∪_j ξ^j(1+p·x_j)R_n^*)
/// for i = 0..p^n, with parameters (p^{4n}, (p^{2n}+1)(p^n-1), k-1).
pub fn momihara_family(p: u64, n: usize) -> Result<BlockFamily> {
    let ring = RingCtx::new(p, 2 * n)?;
    let emb = ring.subring()?;
    let pn = emb.pn();
    let group = GroupView::from_ring(&ring);

    // D_0 = P ∪ (∪_j ξ^j (1+p·x_j) R_n^*), with the positional pairing j ↔ x_j.
    let mut base = ring.coset_p(&emb);
    for (j, &xj) in emb.reps_s().iter().enumerate() {
        let factor = ring.mul(
            ring.pow(ring.xi(), j as u64),
            ring.add(ring.one(), ring.scale_by_p(xj)),
        );
        base.extend(emb.units().iter().map(|&u| ring.mul(factor, u)));
    }

    let mut blocks = Vec::with_capacity(pn as usize + 1);
    for i in 0..=pn {
        let scale = ring.pow(ring.xi(), i);
        let block: Vec<u32> = base
            .iter()
            .map(|&d| {
                group
                    .index_of_code(ring.mul(scale, d).0)
                    .expect("block element in group")
            })
            .collect();
        blocks.push(block);
    }
    BlockFamily::new(group, blocks, format!("momihara(p={p},n={n})"))
}

/// Davis's family in GR(p², r): the p^r cosets (1+pα)T^* of the Teichmüller
/// group by principal units, plus the nonzero ideal pT^*; parameters
/// (p^{2r}, p^r-1, p^r-2).
pub fn davis_family(p: u64, r: usize) -> Result<BlockFamily> {
    let ring = RingCtx::new(p, r)?;
    if ring.qf() == 2 {
        return Err(Error::DegenerateParameters(
            "davis requires p^r > 2 (blocks of size p^r - 1 >= 2)".into(),
        ));
    }
    let group = GroupView::from_ring(&ring);
    let teich_star = &ring.teichmuller()[1..];

    let mut blocks = Vec::with_capacity(ring.qf() as usize + 1);
    for &alpha in ring.teichmuller() {
        let factor = ring.add(ring.one(), ring.scale_by_p(alpha));
        let block: Vec<u32> = teich_star
            .iter()
            .map(|&t| {
                group
                    .index_of_code(ring.mul(factor, t).0)
                    .expect("unit block element in group")
            })
            .collect();
        blocks.push(block);
    }
    let ideal_block: Vec<u32> = teich_star
        .iter()
        .map(|&t| {
            group
                .index_of_code(ring.scale_by_p(t).0)
                .expect("ideal block element in group")
        })
        .collect();
    blocks.push(ideal_block);
    BlockFamily::new(group, blocks, format!("davis(p={p},r={r})"))
}
