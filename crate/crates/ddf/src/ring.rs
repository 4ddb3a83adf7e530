//! Exact arithmetic in the Galois ring GR(p², r).
//!
//! The modulus is the field modulus of GF(p^r) lifted verbatim to
//! coefficients mod p². Elements are coefficient vectors mod p² packed as
//! base-p² integer codes. The generator ξ of the Teichmüller group is
//! obtained as x^{p^r} in the quotient: in characteristic p² every principal
//! unit has exponent p, so raising a unit to the p^r-th power strips its
//! principal part and keeps the Teichmüller part.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, DEFAULT_SIZE_BOUND};

/// An element of GR(p², r), packed as a base-p² integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem(pub(crate) u64);

impl RingElem {
    /// The packed base-p² coefficient code; matches `GroupView` element codes.
    pub fn code(self) -> u64 {
        self.0
    }
}

/// The Galois ring GR(p², r) with its Teichmüller set precomputed.
#[derive(Debug, Clone)]
pub struct RingCtx {
    p: u64,
    p2: u64,
    r: usize,
    /// p^r = |T| = |R/I|.
    qf: u64,
    /// p^{2r} = |R|.
    order: u64,
    /// Monic lift of the field modulus, constant term first, length r+1, coefficients mod p².
    modulus: Vec<u64>,
    /// [0, 1, ξ, ξ², ..., ξ^{p^r-2}].
    teich: Vec<RingElem>,
    teich_index: HashMap<RingElem, u32>,
    /// field residue code (base p) -> Teichmüller index of the unique t ≡ that residue (mod p).
    residue_to_teich: Vec<u32>,
    /// code of p·t -> Teichmüller index of t.
    ideal_to_teich: HashMap<RingElem, u32>,
}

impl RingCtx {
    pub fn new(p: u64, r: usize) -> Result<RingCtx> {
        Self::with_bound(p, r, DEFAULT_SIZE_BOUND)
    }

    pub fn with_bound(p: u64, r: usize, bound: u64) -> Result<RingCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut order: u64 = 1;
        for _ in 0..2 * r {
            order = order
                .checked_mul(p)
                .filter(|&v| v <= bound)
                .ok_or(Error::SizeExceeded { order: u64::MAX, bound })?;
        }
        // The field search also covers the p^r ≤ bound precondition.
        let field = FieldCtx::with_bound(p, r, bound)?;
        let modulus = field.modulus().to_vec();
        let p2 = p * p;
        let qf = field.q();

        let mut ring = RingCtx {
            p,
            p2,
            r,
            qf,
            order,
            modulus,
            teich: Vec::new(),
            teich_index: HashMap::new(),
            residue_to_teich: Vec::new(),
            ideal_to_teich: HashMap::new(),
        };

        // ξ = x^{p^r}; its order is p^r - 1 because x reduces to the primitive α mod p.
        // For r = 1 the root of the degree-1 modulus x + c is the constant -c.
        let x = if r == 1 {
            ring.from_int((p2 - ring.modulus[0] % p2) % p2)
        } else {
            ring.from_coeffs(&[0, 1])
        };
        let xi = ring.pow(x, qf);

        let mut teich = vec![RingElem(0), RingElem(1)];
        let mut cur = xi;
        for _ in 1..qf.saturating_sub(1) {
            teich.push(cur);
            cur = ring.mul(cur, xi);
        }
        if qf > 1 {
            debug_assert_eq!(cur, RingElem(1), "ξ must have order exactly p^r - 1");
        }
        let teich_index: HashMap<RingElem, u32> =
            teich.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();
        let mut residue_to_teich = vec![u32::MAX; qf as usize];
        let mut ideal_to_teich = HashMap::new();
        for (i, &t) in teich.iter().enumerate() {
            residue_to_teich[ring.residue_code(t) as usize] = i as u32;
            let pt = ring.scale_by_p(t);
            ideal_to_teich.insert(pt, i as u32);
        }
        debug_assert!(residue_to_teich.iter().all(|&v| v != u32::MAX));

        ring.teich = teich;
        ring.teich_index = teich_index;
        ring.residue_to_teich = residue_to_teich;
        ring.ideal_to_teich = ideal_to_teich;
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// p^r, the size of the Teichmüller set.
    pub fn qf(&self) -> u64 {
        self.qf
    }

    /// p^{2r}, the number of ring elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        RingElem(1)
    }

    pub fn xi(&self) -> RingElem {
        self.teich_elem(if self.qf > 2 { 2 } else { 1 })
    }

    /// The Teichmüller sequence [0, 1, ξ, ..., ξ^{p^r-2}].
    pub fn teichmuller(&self) -> &[RingElem] {
        &self.teich
    }

    /// Teichmüller element by index: 0 -> 0, i >= 1 -> ξ^{i-1}.
    pub fn teich_elem(&self, index: u32) -> RingElem {
        self.teich[index as usize]
    }

    pub fn teich_index_of(&self, a: RingElem) -> Option<u32> {
        self.teich_index.get(&a).copied()
    }

    pub fn coeffs(&self, a: RingElem) -> Vec<u64> {
        let mut c = a.0;
        let mut out = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            out.push(c % self.p2);
            c /= self.p2;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> RingElem {
        assert!(coeffs.len() <= self.r);
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p2 + c % self.p2;
        }
        RingElem(code)
    }

    /// Element with the given packed coefficient code (the `GroupView` code).
    pub fn from_code(&self, code: u64) -> RingElem {
        assert!(code < self.order());
        RingElem(code)
    }

    /// The integer n·1 as a ring element.
    pub fn from_int(&self, n: u64) -> RingElem {
        self.from_coeffs(&[n % self.p2])
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        let mut code = 0u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += (x % self.p2 + y % self.p2) % self.p2 * scale;
            x /= self.p2;
            y /= self.p2;
            scale *= self.p2;
        }
        RingElem(code)
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let mut code = 0u64;
        let mut x = a.0;
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += (self.p2 - x % self.p2) % self.p2 * scale;
            x /= self.p2;
            scale *= self.p2;
        }
        RingElem(code)
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        let ac = self.coeffs(a);
        let bc = self.coeffs(b);
        let mut prod = vec![0u64; 2 * self.r];
        for (i, &ai) in ac.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bc.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p2;
            }
        }
        // reduce by the monic modulus
        for k in (self.r..2 * self.r).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            let shift = k - self.r;
            for (i, &mc) in self.modulus.iter().take(self.r).enumerate() {
                let idx = i + shift;
                prod[idx] = (prod[idx] + self.p2 - lead * mc % self.p2) % self.p2;
            }
        }
        self.from_coeffs(&prod[..self.r])
    }

    pub fn pow(&self, a: RingElem, mut e: u64) -> RingElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// p·a.
    pub fn scale_by_p(&self, a: RingElem) -> RingElem {
        self.mul_scalar(a, self.p)
    }

    fn mul_scalar(&self, a: RingElem, s: u64) -> RingElem {
        let mut code = 0u64;
        let mut x = a.0;
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += x % self.p2 * s % self.p2 * scale;
            x /= self.p2;
            scale *= self.p2;
        }
        RingElem(code)
    }

    /// The residue of `a` in R/I ≅ GF(p^r), packed base p.
    fn residue_code(&self, a: RingElem) -> u64 {
        let mut code = 0u64;
        let mut x = a.0;
        let mut scale = 1u64;
        for _ in 0..self.r {
            code += x % self.p2 % self.p * scale;
            x /= self.p2;
            scale *= self.p;
        }
        code
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.residue_code(a) != 0
    }

    /// All p^{2r} elements in code (lexicographic coefficient) order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.order).map(RingElem)
    }

    /// The maximal ideal I = pR = pT, of size p^r.
    pub fn ideal_elements(&self) -> Vec<RingElem> {
        self.teich.iter().map(|&t| self.scale_by_p(t)).collect()
    }

    /// The principal units P = 1 + I, of size p^r.
    pub fn principal_units(&self) -> Vec<RingElem> {
        self.ideal_elements()
            .into_iter()
            .map(|z| self.add(self.one(), z))
            .collect()
    }

    /// The unique p-adic representation a = a0 + p·a1 with a0, a1 ∈ T,
    /// returned as Teichmüller indices.
    pub fn padic(&self, a: RingElem) -> (u32, u32) {
        let i0 = self.residue_to_teich[self.residue_code(a) as usize];
        let a0 = self.teich[i0 as usize];
        let rest = self.sub(a, a0);
        let i1 = *self
            .ideal_to_teich
            .get(&rest)
            .expect("a - a0 lies in the ideal by construction");
        (i0, i1)
    }

    /// The unique decomposition u = α0(1 + p·α1) of a unit, α0 ∈ T*, α1 ∈ T,
    /// returned as Teichmüller indices.
    pub fn unit_decompose(&self, u: RingElem) -> Result<(u32, u32)> {
        if !self.is_unit(u) {
            return Err(Error::NotAUnit);
        }
        let i0 = self.residue_to_teich[self.residue_code(u) as usize];
        debug_assert!(i0 >= 1);
        // α0^{-1} = ξ^{(p^r-1) - (i0-1)} (index 1 is ξ^0 = 1)
        let inv_exp = (self.qf - 1 - (i0 as u64 - 1)) % (self.qf - 1);
        let a0_inv = self.teich[(1 + inv_exp) as usize];
        let principal = self.mul(u, a0_inv);
        let rest = self.sub(principal, self.one());
        let i1 = *self
            .ideal_to_teich
            .get(&rest)
            .expect("u·α0^{-1} - 1 lies in the ideal");
        Ok((i0, i1))
    }

    /// The subring GR(p², n) of GR(p², 2n), with the fixed transversal S.
    pub fn subring(&self) -> Result<SubringEmbedding> {
        if self.r % 2 != 0 {
            return Err(Error::OddDegree(self.r));
        }
        let n = self.r / 2;
        let pn = self.p.pow(n as u32);
        // T_n = {0} ∪ powers of ξ^{p^n+1}
        let step = self.pow(self.xi(), pn + 1);
        let mut teich_sub = vec![self.zero(), self.one()];
        let mut cur = step;
        for _ in 1..pn.saturating_sub(1) {
            teich_sub.push(cur);
            cur = self.mul(cur, step);
        }
        // R_n = T_n + p·T_n
        let mut elements = Vec::new();
        let mut units = Vec::new();
        for &a0 in &teich_sub {
            for &a1 in &teich_sub {
                let e = self.add(a0, self.scale_by_p(a1));
                elements.push(e);
                if a0 != self.zero() {
                    units.push(e);
                }
            }
        }
        let ideal_sub: Vec<RingElem> = teich_sub.iter().map(|&t| self.scale_by_p(t)).collect();
        // reps_S: greedy over the Teichmüller sequence; p·x must hit a fresh coset of I_{2n}/I_n.
        let in_ideal_sub = |z: RingElem| ideal_sub.contains(&z);
        let mut reps = Vec::with_capacity(pn as usize);
        for &x in &self.teich {
            let px = self.scale_by_p(x);
            let covered = reps
                .iter()
                .any(|&y: &RingElem| in_ideal_sub(self.sub(px, self.scale_by_p(y))));
            if !covered {
                reps.push(x);
                if reps.len() == pn as usize {
                    break;
                }
            }
        }
        assert_eq!(reps.len(), pn as usize, "transversal of I_2n/I_n must have p^n elements");
        Ok(SubringEmbedding {
            n,
            pn,
            teich_sub,
            elements,
            units,
            ideal_sub,
            reps,
        })
    }

    /// The coset P = p·ξ^{p^n}·T_n^* used by the Momihara construction.
    pub fn coset_p(&self, emb: &SubringEmbedding) -> Vec<RingElem> {
        let shift = self.pow(self.xi(), emb.pn);
        emb.teich_sub[1..]
            .iter()
            .map(|&t| self.scale_by_p(self.mul(shift, t)))
            .collect()
    }
}

/// The subring R_n = GR(p², n) inside GR(p², 2n), plus the transversal data
/// the Momihara construction needs.
#[derive(Debug, Clone)]
pub struct SubringEmbedding {
    n: usize,
    pn: u64,
    /// T_n, with 0 first, then powers of ξ^{p^n+1}.
    teich_sub: Vec<RingElem>,
    /// All p^{2n} elements of R_n.
    elements: Vec<RingElem>,
    /// R_n^*, the p^n(p^n-1) units of R_n.
    units: Vec<RingElem>,
    /// I_n = p·T_n.
    ideal_sub: Vec<RingElem>,
    /// S = {x_0, ..., x_{p^n-1}} ⊆ T_{2n} with {p·x_j} a transversal of I_{2n}/I_n.
    reps: Vec<RingElem>,
}

impl SubringEmbedding {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pn(&self) -> u64 {
        self.pn
    }

    pub fn teich_sub(&self) -> &[RingElem] {
        &self.teich_sub
    }

    pub fn elements(&self) -> &[RingElem] {
        &self.elements
    }

    pub fn units(&self) -> &[RingElem] {
        &self.units
    }

    pub fn ideal_sub(&self) -> &[RingElem] {
        &self.ideal_sub
    }

    pub fn reps_s(&self) -> &[RingElem] {
        &self.reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn make_ring_gr_4_2() {
        let ring = RingCtx::new(2, 2).unwrap();
        assert_eq!(ring.order(), 16);
        assert_eq!(ring.teichmuller().len(), 4);
        let units: Vec<_> = ring.elements().filter(|&a| ring.is_unit(a)).collect();
        assert_eq!(units.len(), 12);
    }

    #[test]
    fn make_ring_z9() {
        let ring = RingCtx::new(3, 1).unwrap();
        assert_eq!(ring.order(), 9);
        // T = {0, 1, 8}: ξ = 8 is the unique element of order 2 in (Z/9)^*
        let teich: HashSet<u64> = ring.teichmuller().iter().map(|t| t.0).collect();
        assert_eq!(teich, HashSet::from([0, 1, 8]));
    }

    #[test]
    fn xi_has_exact_order() {
        for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (5, 1)] {
            let ring = RingCtx::new(p, r).unwrap();
            let ord = ring.qf() - 1;
            assert_eq!(ring.pow(ring.xi(), ord), ring.one());
            for k in 1..ord {
                assert_ne!(ring.pow(ring.xi(), k), ring.one(), "p={p} r={r} k={k}");
            }
            // Teichmüller elements are pairwise distinct mod p
            let residues: HashSet<u64> =
                ring.teichmuller().iter().map(|&t| ring.residue_code(t)).collect();
            assert_eq!(residues.len(), ring.qf() as usize);
        }
    }

    #[test]
    fn principal_unit_product_law() {
        // (1+pα)(1+pβ) = 1+p(α+β) for Teichmüller α, β
        let ring = RingCtx::new(3, 2).unwrap();
        for &a in ring.teichmuller() {
            for &b in ring.teichmuller() {
                let lhs = ring.mul(
                    ring.add(ring.one(), ring.scale_by_p(a)),
                    ring.add(ring.one(), ring.scale_by_p(b)),
                );
                let rhs = ring.add(ring.one(), ring.scale_by_p(ring.add(a, b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ideal_squares_to_zero() {
        let ring = RingCtx::new(2, 3).unwrap();
        for &x in &ring.ideal_elements() {
            for &y in &ring.ideal_elements() {
                assert_eq!(ring.mul(x, y), ring.zero());
            }
            assert_eq!(ring.add(x, ring.neg(x)), ring.zero());
        }
    }

    #[test]
    fn padic_representation() {
        let ring = RingCtx::new(2, 2).unwrap();
        assert_eq!(ring.padic(ring.zero()), (0, 0));
        assert_eq!(ring.padic(ring.scale_by_p(ring.one())), (0, 1));
        // 3 = 1 + 2·1 in GR(4, r)
        assert_eq!(ring.padic(ring.from_int(3)), (1, 1));
        // total: reconstruct every element
        for a in ring.elements() {
            let (i0, i1) = ring.padic(a);
            let back = ring.add(ring.teich_elem(i0), ring.scale_by_p(ring.teich_elem(i1)));
            assert_eq!(back, a);
        }
    }

    #[test]
    fn unit_decomposition() {
        let ring = RingCtx::new(2, 2).unwrap();
        // ξ = ξ·(1 + p·0)
        assert_eq!(ring.unit_decompose(ring.xi()).unwrap(), (2, 0));
        // -1 = 3 = 1·(1+2·1)
        assert_eq!(ring.unit_decompose(ring.from_int(3)).unwrap(), (1, 1));
        assert_eq!(ring.unit_decompose(ring.scale_by_p(ring.one())).unwrap_err(), Error::NotAUnit);
        for u in ring.elements().filter(|&u| ring.is_unit(u)) {
            let (i0, i1) = ring.unit_decompose(u).unwrap();
            assert!(i0 >= 1);
            let back = ring.mul(
                ring.teich_elem(i0),
                ring.add(ring.one(), ring.scale_by_p(ring.teich_elem(i1))),
            );
            assert_eq!(back, u);
        }
    }

    #[test]
    fn minus_one_in_teichmuller_group_for_odd_p() {
        for (p, r) in [(3u64, 1usize), (3, 2), (5, 1), (7, 1)] {
            let ring = RingCtx::new(p, r).unwrap();
            let minus_one = ring.neg(ring.one());
            let (i0, i1) = ring.unit_decompose(minus_one).unwrap();
            assert_eq!(i1, 0, "-1 must be a pure Teichmüller element for odd p");
            // index (p^r-1)/2 in exponent terms: ξ^{(p^r-1)/2}
            assert_eq!(i0 as u64, 1 + (ring.qf() - 1) / 2);
        }
        // for p = 2, -1 is a principal unit
        let ring = RingCtx::new(2, 3).unwrap();
        let minus_one = ring.neg(ring.one());
        let (i0, _) = ring.unit_decompose(minus_one).unwrap();
        assert_eq!(i0, 1, "-1 = 1·(1+2α) for p = 2");
    }

    #[test]
    fn unit_group_is_direct_product() {
        let ring = RingCtx::new(3, 2).unwrap();
        let principal = ring.principal_units();
        assert_eq!(principal.len(), 9);
        let mut all = HashSet::new();
        for &t in &ring.teichmuller()[1..] {
            for &pu in &principal {
                all.insert(ring.mul(t, pu));
            }
        }
        assert_eq!(all.len(), (ring.qf() * (ring.qf() - 1)) as usize);
        assert!(all.iter().all(|&u| ring.is_unit(u)));
    }

    #[test]
    fn subring_gr_4_2() {
        let ring = RingCtx::new(2, 2).unwrap();
        let emb = ring.subring().unwrap();
        // T_1 = {0, 1, ξ^3} = {0, 1} since ξ^3 = 1
        let t1: HashSet<u64> = emb.teich_sub().iter().map(|t| t.0).collect();
        assert_eq!(t1, HashSet::from([0, 1]));
        // R_1 ≅ Z/4: {0, 1, 2, 3}·1, closed under + and ·
        let r1: HashSet<RingElem> = emb.elements().iter().copied().collect();
        assert_eq!(r1.len(), 4);
        for &a in emb.elements() {
            for &b in emb.elements() {
                assert!(r1.contains(&ring.add(a, b)));
                assert!(r1.contains(&ring.mul(a, b)));
            }
        }
        assert_eq!(emb.reps_s().len(), 2);
        assert_eq!(emb.reps_s()[0], ring.zero());
    }

    #[test]
    fn subring_requires_even_degree() {
        let ring = RingCtx::new(2, 3).unwrap();
        assert_eq!(ring.subring().unwrap_err(), Error::OddDegree(3));
    }

    #[test]
    fn transversal_properties() {
        for (p, n) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let ring = RingCtx::new(p, 2 * n).unwrap();
            let emb = ring.subring().unwrap();
            let pn = emb.pn();
            assert_eq!(emb.reps_s().len(), pn as usize);
            assert_eq!(emb.units().len(), (pn * (pn - 1)) as usize);
            assert_eq!(emb.elements().len(), (pn * pn) as usize);
            // {p·x_j} covers all p^n cosets of I_{2n}/I_n: pairwise non-equivalent
            let ideal_sub: HashSet<RingElem> = emb.ideal_sub().iter().copied().collect();
            for (i, &x) in emb.reps_s().iter().enumerate() {
                for &y in &emb.reps_s()[..i] {
                    let diff = ring.sub(ring.scale_by_p(x), ring.scale_by_p(y));
                    assert!(!ideal_sub.contains(&diff));
                }
            }
            // {1 + p·x_j} is a transversal of P_{2n}/P_n: the quotient map through
            // the ideal is the same check, already covered above.
        }
    }

    #[test]
    fn coset_p_properties() {
        for (p, n) in [(2u64, 1usize), (3, 1)] {
            let ring = RingCtx::new(p, 2 * n).unwrap();
            let emb = ring.subring().unwrap();
            let coset = ring.coset_p(&emb);
            assert_eq!(coset.len(), (emb.pn() - 1) as usize);
            let rn: HashSet<RingElem> = emb.elements().iter().copied().collect();
            let ideal: HashSet<RingElem> = ring.ideal_elements().into_iter().collect();
            for &z in &coset {
                assert!(ideal.contains(&z));
                assert!(!rn.contains(&z));
                // P = -P
                assert!(coset.contains(&ring.neg(z)));
            }
        }
    }
}
