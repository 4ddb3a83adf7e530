//! JSON wire types for families, designs and computed results.
//!
//! Every document carries an `indexing` header stating the element
//! enumeration conventions, so consumers never have to guess how indices
//! map to field/ring elements. Serialization is byte-stable: struct field
//! order is fixed and all maps are ordered.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::design::{Design, IntersectionProfile};
use crate::error::{Error, Result};
use crate::family::BlockFamily;
use crate::field::FieldCtx;
use crate::group::{GroupDesc, GroupView};
use crate::ring::RingCtx;

/// Element indexing conventions; emitted in every document header.
pub const INDEXING_NOTE: &str = "field: index 0 = zero, index 1+t = alpha^t; \
ring: index = packed base-p^2 coefficient code, constant term least significant";

/// Rebuilds the group view described by a serialized `GroupDesc`.
pub fn group_from_desc(desc: &GroupDesc) -> Result<GroupView> {
    match desc {
        GroupDesc::Field { p, r, modulus } => {
            let ctx = FieldCtx::new(*p, *r)?;
            if ctx.modulus() != modulus.as_slice() {
                return Err(Error::DegenerateParameters(format!(
                    "field modulus mismatch: expected {:?}, file says {:?}",
                    ctx.modulus(),
                    modulus
                )));
            }
            Ok(GroupView::from_field(&ctx))
        }
        GroupDesc::Ring { p, r, modulus } => {
            let ctx = RingCtx::new(*p, *r)?;
            if ctx.modulus() != modulus.as_slice() {
                return Err(Error::DegenerateParameters(format!(
                    "ring modulus mismatch: expected {:?}, file says {:?}",
                    ctx.modulus(),
                    modulus
                )));
            }
            Ok(GroupView::from_ring(&ctx))
        }
        GroupDesc::Subgroup { .. } => Err(Error::DegenerateParameters(
            "subgroup views are not reconstructible from JSON".into(),
        )),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub indexing: String,
    pub group: GroupDesc,
    pub label: String,
    pub v: u64,
    pub k: usize,
    pub b: usize,
    pub blocks: Vec<Vec<u32>>,
}

impl FamilyJson {
    pub fn from_family(fam: &BlockFamily) -> FamilyJson {
        FamilyJson {
            indexing: INDEXING_NOTE.into(),
            group: fam.group.desc().clone(),
            label: fam.label.clone(),
            v: fam.v(),
            k: fam.k(),
            b: fam.b(),
            blocks: fam.blocks.clone(),
        }
    }

    pub fn into_family(self) -> Result<BlockFamily> {
        let group = group_from_desc(&self.group)?;
        BlockFamily::from_parts(group, self.blocks, self.label)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignJson {
    pub indexing: String,
    pub origin: String,
    pub v: usize,
    pub k: usize,
    pub b: usize,
    /// Pair multiplicity when the design has been certified; absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    pub blocks: Vec<Vec<u32>>,
}

impl DesignJson {
    pub fn from_design(design: &Design, lambda: Option<u64>) -> DesignJson {
        DesignJson {
            indexing: INDEXING_NOTE.into(),
            origin: design.origin.clone(),
            v: design.v,
            k: design.k,
            b: design.b(),
            lambda,
            blocks: design.blocks.clone(),
        }
    }

    pub fn into_design(self) -> Result<Design> {
        let k = self.blocks.first().map(|b| b.len()).unwrap_or(0);
        for b in &self.blocks {
            if b.len() != k {
                return Err(Error::UnequalBlockSizes(k, b.len()));
            }
            for &x in b {
                if x as usize >= self.v {
                    return Err(Error::IndexOutOfRange {
                        index: x as u64,
                        bound: self.v as u64,
                    });
                }
            }
        }
        Ok(Design::new(self.v, self.blocks, self.origin))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub element: u32,
    pub multiplicity: u64,
}

/// Output of the `verify` operations: one uniform shape for ddf, edf,
/// difference-set, relative-difference-set and bridge checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyJson {
    pub indexing: String,
    pub kind: String,
    pub label: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    /// Extra named quantities (e.g. the bridge's three lambdas or RDS m, n).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileJson {
    pub indexing: String,
    pub origin: String,
    pub histogram: BTreeMap<usize, u64>,
    pub support: Vec<usize>,
}

impl ProfileJson {
    pub fn new(origin: &str, profile: &IntersectionProfile) -> ProfileJson {
        ProfileJson {
            indexing: INDEXING_NOTE.into(),
            origin: origin.into(),
            histogram: profile.histogram.clone(),
            support: profile.support(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankJson {
    pub indexing: String,
    pub origin: String,
    pub ell: u64,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsoJson {
    pub indexing: String,
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bijection: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutJson {
    pub indexing: String,
    pub origin: String,
    pub order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub id: String,
    pub claim: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub indexing: String,
    pub checks: Vec<CheckJson>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}
