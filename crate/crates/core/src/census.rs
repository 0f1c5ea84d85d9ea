//! Exhaustive small-digraph censuses and classifier-versus-oracle runs.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::classifier::{classify, Tag, Verdict};
use crate::digraph::Digraph;
use crate::error::{capability, input, Result};
use crate::involution::{classify_twi, is_tournament_with_involution, TwiClass};
use crate::oracle::{is_hh_bruteforce, is_hh_cone_criterion, Witness};
use crate::structure::{connectivity_report, BidirStatus};

pub const CENSUS_MAX_VERTICES: usize = 5;
pub const TWI_CENSUS_MAX_VERTICES: usize = 8;

/// Reflexive digraph on `n` vertices whose off-diagonal entries are the bits
/// of `bits`, in row-major order.
pub fn reflexive_from_bits(n: usize, bits: u64) -> Digraph {
    let mut i = 0;
    let mut edges = Vec::new();
    for u in 0..n {
        edges.push((u, u));
        for v in 0..n {
            if u != v {
                if bits >> i & 1 == 1 {
                    edges.push((u, v));
                }
                i += 1;
            }
        }
    }
    Digraph::new(n, &edges).expect("vertices are in range")
}

/// One canonical representative per isomorphism class of reflexive digraphs
/// on `n` vertices, sorted by canonical code.
pub fn enumerate_reflexive(n: usize) -> Result<Vec<Digraph>> {
    if n > CENSUS_MAX_VERTICES {
        return capability(format!(
            "the census is limited to {CENSUS_MAX_VERTICES} vertices"
        ));
    }
    let free = n * n.saturating_sub(1);
    let mut codes: Vec<(Vec<u8>, u64)> = (0..1u64 << free)
        .into_par_iter()
        .map(|bits| {
            let code = reflexive_from_bits(n, bits)
                .canonical_code()
                .expect("within the guard");
            (code, bits)
        })
        .collect();
    codes.par_sort_unstable();
    codes.dedup_by(|a, b| a.0 == b.0);
    Ok(codes
        .into_iter()
        .map(|(_, bits)| {
            reflexive_from_bits(n, bits)
                .canonical()
                .expect("within the guard")
        })
        .collect())
}

/// Which decision procedure disagreed with the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Classifier,
    ConeCriterion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub digraph: Digraph,
    pub check: Check,
    pub oracle_hh: bool,
    pub claimed_hh: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub hh_quasiorder: usize,
    pub hh_c3_one: usize,
    pub hh_dwi: usize,
    /// Bidirectionally disconnected and not HH.
    pub not_hh: usize,
    pub connected_improper_hh: usize,
    pub connected_improper_not_hh: usize,
    /// Bidirectionally connected and not improper; decided by the oracle alone.
    pub connected_other_hh: usize,
    pub connected_other_not_hh: usize,
}

impl CensusCounts {
    pub fn sum(&self) -> usize {
        self.hh_quasiorder
            + self.hh_c3_one
            + self.hh_dwi
            + self.not_hh
            + self.connected_improper_hh
            + self.connected_improper_not_hh
            + self.connected_other_hh
            + self.connected_other_not_hh
    }

    fn add(&mut self, other: &CensusCounts) {
        self.hh_quasiorder += other.hh_quasiorder;
        self.hh_c3_one += other.hh_c3_one;
        self.hh_dwi += other.hh_dwi;
        self.not_hh += other.not_hh;
        self.connected_improper_hh += other.connected_improper_hh;
        self.connected_improper_not_hh += other.connected_improper_not_hh;
        self.connected_other_hh += other.connected_other_hh;
        self.connected_other_not_hh += other.connected_other_not_hh;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Keep refutations for the first this many NOT_HH classes.
    Sample(usize),
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub total: usize,
    pub counts: CensusCounts,
    pub disagreements: Vec<Disagreement>,
    pub witnesses: Vec<(Digraph, Witness)>,
}

struct Outcome {
    counts: CensusCounts,
    disagreement: Option<Disagreement>,
    witness: Option<Witness>,
}

fn examine(d: &Digraph) -> Result<Outcome> {
    let oracle = is_hh_bruteforce(d)?;
    let hh = oracle.is_hh();
    let mut counts = CensusCounts::default();
    let mut disagreement = None;
    let mut disagree = |check, claimed_hh: bool| {
        if claimed_hh != hh {
            disagreement = Some(Disagreement {
                digraph: d.clone(),
                check,
                oracle_hh: hh,
                claimed_hh,
            });
        }
    };
    if connectivity_report(d).status == BidirStatus::Disconnected {
        let c = classify(d)?;
        disagree(Check::Classifier, c.verdict == Verdict::Hh);
        match (c.verdict, c.tag) {
            (Verdict::Hh, Tag::Quasiorder) => counts.hh_quasiorder += 1,
            (Verdict::Hh, Tag::C3OneInflation) => counts.hh_c3_one += 1,
            (Verdict::Hh, _) => counts.hh_dwi += 1,
            _ => counts.not_hh += 1,
        }
    } else if d.is_improper() {
        disagree(Check::ConeCriterion, is_hh_cone_criterion(d)?.is_hh());
        if hh {
            counts.connected_improper_hh += 1;
        } else {
            counts.connected_improper_not_hh += 1;
        }
    } else if hh {
        counts.connected_other_hh += 1;
    } else {
        counts.connected_other_not_hh += 1;
    }
    Ok(Outcome {
        counts,
        disagreement,
        witness: oracle.witness,
    })
}

/// Runs the classifier (bidirectionally disconnected classes) or the cone
/// criterion (connected improper classes) against the oracle on every class.
pub fn crossvalidate(n: usize, mode: WitnessMode) -> Result<CensusReport> {
    let classes = enumerate_reflexive(n)?;
    crossvalidate_classes(n, &classes, mode)
}

/// [`crossvalidate`] over an explicit list of reflexive digraphs.
pub fn crossvalidate_classes(
    n: usize,
    classes: &[Digraph],
    mode: WitnessMode,
) -> Result<CensusReport> {
    let outcomes: Vec<Outcome> = classes
        .par_iter()
        .map(examine)
        .collect::<Result<Vec<_>>>()?;
    let mut report = CensusReport {
        n,
        total: classes.len(),
        counts: CensusCounts::default(),
        disagreements: Vec::new(),
        witnesses: Vec::new(),
    };
    for (d, o) in classes.iter().zip(outcomes) {
        report.counts.add(&o.counts);
        report.disagreements.extend(o.disagreement);
        if let Some(w) = o.witness {
            let keep = match mode {
                WitnessMode::Full => true,
                WitnessMode::Sample(k) => report.witnesses.len() < k,
            };
            if keep {
                report.witnesses.push((d.clone(), w));
            }
        }
    }
    Ok(report)
}

/// Isomorphism classes of tournaments with involution on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwiCensus {
    pub n: usize,
    /// Labeled candidates that passed [`is_tournament_with_involution`].
    pub labeled: usize,
    pub classes: Vec<(Digraph, TwiClass)>,
}

/// Enumerates tournaments with involution on `n` vertices.
///
/// For `n ≥ 2` the involution has no fixed points, so up to relabeling it is
/// `(0 1)(2 3)…`. Partners get a double edge and every other pair one of its
/// two orientations; a cheap mask test for `x → y ⇒ y → x'` prunes before
/// the full recognizer runs.
pub fn tournaments_with_involution(n: usize) -> Result<TwiCensus> {
    if n > TWI_CENSUS_MAX_VERTICES {
        return capability(format!(
            "the tournament census is limited to {TWI_CENSUS_MAX_VERTICES} vertices"
        ));
    }
    if n == 0 {
        return Ok(TwiCensus {
            n,
            labeled: 0,
            classes: Vec::new(),
        });
    }
    if n == 1 {
        let d = Digraph::one_looped();
        let class = classify_twi(&d)?;
        return Ok(TwiCensus {
            n,
            labeled: 1,
            classes: vec![(d, class)],
        });
    }
    if n % 2 == 1 {
        return input(
            "a tournament with involution on two or more vertices has an even vertex count",
        );
    }
    let partner = |v: usize| v ^ 1;
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| v != partner(u))
        .collect();
    let base: Vec<u64> = (0..n).map(|v| 1u64 << v | 1u64 << partner(v)).collect();
    let found: Vec<(Vec<u8>, Digraph)> = (0..1u64 << free.len())
        .into_par_iter()
        .filter_map(|bits| {
            let mut out = base.clone();
            let mut inc = base.clone();
            for (i, &(u, v)) in free.iter().enumerate() {
                let (a, b) = if bits >> i & 1 == 1 { (u, v) } else { (v, u) };
                out[a] |= 1 << b;
                inc[b] |= 1 << a;
            }
            if (0..n).any(|x| out[x] & !inc[partner(x)] != 0) {
                return None;
            }
            let d = Digraph::from_fn(n, |u, v| out[u] >> v & 1 == 1);
            if !is_tournament_with_involution(&d) {
                return None;
            }
            Some((d.canonical_code().expect("within the guard"), d))
        })
        .collect();
    let labeled = found.len();
    let mut unique: HashMap<Vec<u8>, Digraph> = HashMap::new();
    for (code, d) in found {
        unique.entry(code).or_insert(d);
    }
    let mut reps: Vec<(Vec<u8>, Digraph)> = unique.into_iter().collect();
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    let classes = reps
        .into_iter()
        .map(|(_, d)| {
            let c = d.canonical().expect("within the guard");
            let class = classify_twi(&c)?;
            Ok((c, class))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwiCensus {
        n,
        labeled,
        classes,
    })
}
