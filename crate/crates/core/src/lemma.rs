//! Exhaustive checker for the support-set lemma behind the `l_1^m` result.
//!
//! A family is a multiset of `k` subsets of `{1..m}`, each of size at least
//! two (the supports of non-extreme unit vectors of `l_1^m`). A *heavy
//! triple* is three members, at distinct positions, whose common
//! intersection has at least two elements.
//!
//! * Claim (i): if `k > m(m-1)`, every family has a heavy triple.
//! * Claim (ii): if `k = m(m-1)` and a family has no heavy triple, all its
//!   members are 2-sets and every 2-subset occurs exactly twice.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_UNIVERSE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    HeavyTriple,
    PairCover,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::HeavyTriple => "i",
            Claim::PairCover => "ii",
        })
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Claim::HeavyTriple),
            "ii" => Ok(Claim::PairCover),
            other => Err(Error::UnknownName(other.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub m: usize,
    pub k: usize,
    pub claim: Claim,
    pub families_checked: u64,
    /// Families without a heavy triple.
    pub triple_free: u64,
    pub holds: bool,
    /// First failing family, members as sorted 1-based index lists.
    pub counterexample: Option<Vec<Vec<usize>>>,
}

fn members(mask: u32, m: usize) -> Vec<usize> {
    (0..m)
        .filter(|j| mask & (1 << j) != 0)
        .map(|j| j + 1)
        .collect()
}

fn has_heavy_triple(family: &[u32]) -> bool {
    let k = family.len();
    for r in 0..k {
        for s in r + 1..k {
            let rs = family[r] & family[s];
            if rs.count_ones() < 2 {
                continue;
            }
            if family[s + 1..].iter().any(|&t| (rs & t).count_ones() >= 2) {
                return true;
            }
        }
    }
    false
}

fn is_double_pair_cover(family: &[u32], m: usize) -> bool {
    if family.iter().any(|s| s.count_ones() != 2) {
        return false;
    }
    for a in 0..m {
        for b in a + 1..m {
            let pair = (1u32 << a) | (1u32 << b);
            if family.iter().filter(|&&s| s == pair).count() != 2 {
                return false;
            }
        }
    }
    true
}

/// Calls `visit` with every non-decreasing sequence of `k` indices below
/// `types`; stops early when `visit` returns `false`.
fn for_each_multiset(types: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if types == 0 {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] + 1 < types) else {
            return;
        };
        let v = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = v;
        }
    }
}

pub fn lemma_check(m: usize, k: usize, claim: Claim) -> Result<LemmaReport> {
    if m < 2 {
        return Err(Error::PreconditionViolated(format!("m = {m} < 2")));
    }
    let bound = m * (m - 1);
    match claim {
        Claim::HeavyTriple if k <= bound => {
            return Err(Error::PreconditionViolated(format!(
                "claim i needs k > {bound}, got {k}"
            )));
        }
        Claim::PairCover if k != bound => {
            return Err(Error::PreconditionViolated(format!(
                "claim ii needs k = {bound}, got {k}"
            )));
        }
        _ => {}
    }
    if m > MAX_UNIVERSE {
        return Err(Error::TooLarge {
            what: format!("m = {m} > {MAX_UNIVERSE}"),
        });
    }

    let subsets: Vec<u32> = (0u32..1 << m).filter(|s| s.count_ones() >= 2).collect();
    let mut report = LemmaReport {
        m,
        k,
        claim,
        families_checked: 0,
        triple_free: 0,
        holds: true,
        counterexample: None,
    };
    let mut family = vec![0u32; k];
    for_each_multiset(subsets.len(), k, |idx| {
        for (slot, &i) in family.iter_mut().zip(idx) {
            *slot = subsets[i];
        }
        report.families_checked += 1;
        if has_heavy_triple(&family) {
            return true;
        }
        report.triple_free += 1;
        let ok = match claim {
            Claim::HeavyTriple => false,
            Claim::PairCover => is_double_pair_cover(&family, m),
        };
        if !ok {
            report.holds = false;
            report.counterexample = Some(family.iter().map(|&s| members(s, m)).collect());
        }
        ok
    });
    Ok(report)
}
