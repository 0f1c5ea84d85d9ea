//! Structural HH decision for reflexive bidirectionally disconnected digraphs.
//!
//! Such a digraph is HH iff it is an HH quasiorder, an inflation of
//! `k·C₃° + l·𝟏°` with `k + l ≥ 1`, or an inflation of an HH digraph with
//! involution. Bidirectionally connected inputs get
//! [`Verdict::OracleRequired`]: no polynomial catalogue is available there.

use crate::digraph::Digraph;
use crate::error::{input, Result};
use crate::involution::{dwi_components, dwi_family_accepts, is_digraph_with_involution, TwiClass};
use crate::oracle::{is_hh_bruteforce, Witness, ORACLE_MAX_VERTICES};
use crate::partition::Partition;
use crate::posets::{as_poset, equivalence_classes, is_hh_poset, PosetHHReason};
use crate::structure::{
    connected_components, connectivity_report, quotient, recognize_inflation, BidirStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Hh,
    NotHh,
    OracleRequired,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Quasiorder,
    C3OneInflation,
    DwiInflation,
    None,
}

/// What the quotient was recognized as.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// The `≡`-quotient is an HH poset for the given reason.
    Quasiorder(PosetHHReason),
    /// The twin quotient is `k·C₃° + l·𝟏°`.
    C3One { k: usize, l: usize },
    /// The twin quotient is a digraph with involution with these components.
    Dwi(Vec<TwiClass>),
}

/// Evidence for an HH verdict: `D` is the inflation of `quotient` along
/// `partition`, with `retraction ∘ injection = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub quotient: Digraph,
    pub partition: Partition,
    /// Vertex of `D` to vertex of `quotient`.
    pub retraction: Vec<usize>,
    /// Vertex of `quotient` to a representative in `D`.
    pub injection: Vec<usize>,
    pub family: Family,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub tag: Tag,
    /// Present exactly when the verdict is HH.
    pub certificate: Option<Certificate>,
    /// A refutation, when one was computed.
    pub witness: Option<Witness>,
}

impl Classification {
    fn hh(tag: Tag, certificate: Certificate) -> Self {
        Classification {
            verdict: Verdict::Hh,
            tag,
            certificate: Some(certificate),
            witness: None,
        }
    }

    fn bare(verdict: Verdict) -> Self {
        Classification {
            verdict,
            tag: Tag::None,
            certificate: None,
            witness: None,
        }
    }
}

/// Counts `(k, l)` when every component of `q` is a reflexive 3-cycle or a
/// looped point.
pub fn check_c3_one_components(q: &Digraph) -> Option<(usize, usize)> {
    let c3 = Digraph::reflexive_cycle(3);
    let (mut k, mut l) = (0, 0);
    for block in connected_components(q).blocks() {
        match block.len() {
            1 if q.has_loop(block.first().unwrap()) => l += 1,
            3 => {
                let (sub, _) = q.induced(block).ok()?;
                if !sub.is_isomorphic(&c3).ok()? {
                    return None;
                }
                k += 1;
            }
            _ => return None,
        }
    }
    Some((k, l))
}

fn certificate(d: &Digraph, partition: Partition, family: Family) -> Result<Certificate> {
    let q = quotient(d, &partition)?;
    Ok(Certificate {
        quotient: q.digraph,
        partition,
        retraction: q.retraction,
        injection: q.injection,
        family,
    })
}

fn quasiorder_case(d: &Digraph) -> Result<Option<Certificate>> {
    if !d.is_transitive() {
        return Ok(None);
    }
    let classes = equivalence_classes(d);
    let q = quotient(d, &classes)?;
    let reason = is_hh_poset(&as_poset(&q.digraph).expect("≡-quotient of a quasiorder"))?;
    if !reason.is_hh() {
        return Ok(None);
    }
    Ok(Some(Certificate {
        quotient: q.digraph,
        partition: classes,
        retraction: q.retraction,
        injection: q.injection,
        family: Family::Quasiorder(reason),
    }))
}

/// Decides HH for a reflexive digraph without running the oracle.
///
/// The cases are tried in the order quasiorder, `C₃°/𝟏°` inflation,
/// involution inflation; the first match fixes the tag.
pub fn classify(d: &Digraph) -> Result<Classification> {
    if !d.is_reflexive() {
        return input("classify needs a reflexive digraph");
    }
    if connectivity_report(d).status == BidirStatus::Connected {
        return Ok(Classification::bare(Verdict::OracleRequired));
    }
    if let Some(cert) = quasiorder_case(d)? {
        return Ok(Classification::hh(Tag::Quasiorder, cert));
    }
    let rec = recognize_inflation(d)?;
    if !rec.valid {
        return Ok(Classification::bare(Verdict::NotHh));
    }
    if let Some((k, l)) = check_c3_one_components(&rec.quotient) {
        if k + l >= 1 {
            let cert = certificate(d, rec.partition, Family::C3One { k, l })?;
            return Ok(Classification::hh(Tag::C3OneInflation, cert));
        }
    }
    if is_digraph_with_involution(&rec.quotient)?.is_some() {
        if let Some(classes) = dwi_components(&rec.quotient)? {
            if dwi_family_accepts(&classes) {
                let cert = certificate(d, rec.partition, Family::Dwi(classes))?;
                return Ok(Classification::hh(Tag::DwiInflation, cert));
            }
        }
    }
    Ok(Classification::bare(Verdict::NotHh))
}

/// [`classify`], then attach an oracle refutation to NOT_HH verdicts when
/// every component is small enough for the oracle.
pub fn classify_with_witness(d: &Digraph) -> Result<Classification> {
    let mut c = classify(d)?;
    if c.verdict == Verdict::NotHh {
        let small = connected_components(d)
            .blocks()
            .iter()
            .all(|b| b.len() <= ORACLE_MAX_VERTICES);
        if small {
            c.witness = is_hh_bruteforce(d)?.witness;
        }
    }
    Ok(c)
}
