//! A uniform view of the additive group underlying a field or ring context.
//!
//! Blocks, difference multisets and designs all speak in group element
//! *indices*. The enumeration order is fixed and documented:
//! - field: index 0 is the zero element, index 1+t is α^t;
//! - ring: index = packed coefficient code, i.e. lexicographic coefficient
//!   order with the constant term least significant.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::ring::RingCtx;

/// Serializable description of where a group came from; enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDesc {
    Field { p: u64, r: usize, modulus: Vec<u64> },
    Ring { p: u64, r: usize, modulus: Vec<u64> },
    Subgroup { parent: Box<GroupDesc>, order: u64 },
}

/// The additive group of a field or ring, with indexed elements.
#[derive(Debug, Clone)]
pub struct GroupView {
    /// Element codes in enumeration order; position = index.
    elems: Vec<u64>,
    index: HashMap<u64, u32>,
    /// Digits are taken mod this (p for fields, p² for rings).
    digit_mod: u64,
    ndigits: usize,
    desc: GroupDesc,
}

impl GroupView {
    pub fn from_field(ctx: &FieldCtx) -> GroupView {
        let elems: Vec<u64> = ctx.elements().iter().map(|e| e.0).collect();
        let index = elems.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        GroupView {
            elems,
            index,
            digit_mod: ctx.p(),
            ndigits: ctx.r(),
            desc: GroupDesc::Field {
                p: ctx.p(),
                r: ctx.r(),
                modulus: ctx.modulus().to_vec(),
            },
        }
    }

    pub fn from_ring(ctx: &RingCtx) -> GroupView {
        let elems: Vec<u64> = ctx.elements().map(|e| e.0).collect();
        let index = elems.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        GroupView {
            elems,
            index,
            digit_mod: ctx.p() * ctx.p(),
            ndigits: ctx.r(),
            desc: GroupDesc::Ring {
                p: ctx.p(),
                r: ctx.r(),
                modulus: ctx.modulus().to_vec(),
            },
        }
    }

    /// Restricts the view to a subgroup given by indices into `self`.
    /// The zero element becomes index 0; the rest keep their relative order.
    pub fn subgroup_view(&self, members: &[u32]) -> Result<GroupView> {
        let mut codes: Vec<u64> = members.iter().map(|&i| self.elems[i as usize]).collect();
        codes.sort_unstable_by_key(|&c| self.index[&c]);
        codes.dedup();
        if codes.first() != Some(&0) {
            // group index 0 is always the zero element in field/ring views
            if !codes.contains(&0) {
                return Err(Error::NotASubgroup);
            }
        }
        codes.retain(|&c| c != 0);
        codes.insert(0, 0);
        let index: HashMap<u64, u32> =
            codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let sub = GroupView {
            elems: codes,
            index,
            digit_mod: self.digit_mod,
            ndigits: self.ndigits,
            desc: GroupDesc::Subgroup {
                parent: Box::new(self.desc.clone()),
                order: members.len() as u64,
            },
        };
        // closure check
        for i in 0..sub.order() as u32 {
            if !sub.contains_code(sub.neg_code(sub.elems[i as usize])) {
                return Err(Error::NotASubgroup);
            }
            for j in 0..sub.order() as u32 {
                let s = sub.add_code(sub.elems[i as usize], sub.elems[j as usize]);
                if !sub.contains_code(s) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(sub)
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn desc(&self) -> &GroupDesc {
        &self.desc
    }

    fn add_code(&self, a: u64, b: u64) -> u64 {
        let mut code = 0u64;
        let (mut x, mut y) = (a, b);
        let mut scale = 1u64;
        for _ in 0..self.ndigits {
            code += (x % self.digit_mod + y % self.digit_mod) % self.digit_mod * scale;
            x /= self.digit_mod;
            y /= self.digit_mod;
            scale *= self.digit_mod;
        }
        code
    }

    fn neg_code(&self, a: u64) -> u64 {
        let mut code = 0u64;
        let mut x = a;
        let mut scale = 1u64;
        for _ in 0..self.ndigits {
            code += (self.digit_mod - x % self.digit_mod) % self.digit_mod * scale;
            x /= self.digit_mod;
            scale *= self.digit_mod;
        }
        code
    }

    fn contains_code(&self, c: u64) -> bool {
        self.index.contains_key(&c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let code = self.add_code(self.elems[a as usize], self.elems[b as usize]);
        self.index[&code]
    }

    pub fn neg(&self, a: u32) -> u32 {
        let code = self.neg_code(self.elems[a as usize]);
        self.index[&code]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let code = self.add_code(self.elems[a as usize], self.neg_code(self.elems[b as usize]));
        self.index[&code]
    }

    /// Index of an element given by its raw code, if present.
    pub fn index_of_code(&self, code: u64) -> Option<u32> {
        self.index.get(&code).copied()
    }

    pub fn code_of(&self, index: u32) -> u64 {
        self.elems[index as usize]
    }
}
