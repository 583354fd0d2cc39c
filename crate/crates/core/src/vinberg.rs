//! Combinatorics of the Vinberg monoid: nilpotent-cone strata `(J, w)`,
//! arc-space strata index sets and the constant `b(λ)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplicity::dominant_below;
use crate::rational::Coweight;
use crate::rootdata::RootDatum;
use crate::weyl::{coxeter_elements, min_double_coset_reps, WeylElement, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilconeStratum {
    pub j: BTreeSet<usize>,
    pub w: WeylElement,
    pub dim: i64,
    pub is_top: bool,
}

impl NilconeStratum {
    /// `{1,2}`-style label of `J` (1-based).
    pub fn j_string(&self) -> String {
        let parts: Vec<String> = self.j.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `|Φ⁺_I|`: positive roots supported on `I`.
fn levi_positive_roots(rd: &RootDatum, subset: &BTreeSet<usize>) -> usize {
    rd.positive_roots()
        .iter()
        .filter(|a| {
            a.iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || subset.contains(&i))
        })
        .count()
}

/// `dim G − dim L_{J^c} − l(w) + |J|`.
pub fn stratum_dimension(rd: &RootDatum, j: &BTreeSet<usize>, w: &WeylElement) -> i64 {
    let jc: BTreeSet<usize> = (0..rd.rank()).filter(|i| !j.contains(i)).collect();
    let dim_l = 2 * levi_positive_roots(rd, &jc) + rd.rank();
    rd.dim_group() as i64 - dim_l as i64 - w.length() as i64 + j.len() as i64
}

/// Pieces `X_{∅,J,w}` for `w ∈ ^{J^c}W^{J^c}`, optionally restricted to
/// those inside the nilpotent cone (`J ⊆ Supp(w)`).
fn pieces(rd: &RootDatum, only_nilcone: bool) -> Result<Vec<NilconeStratum>> {
    let group = WeylGroup::new(rd)?;
    let r = rd.rank();
    let top = rd.dim_group() as i64 - r as i64;
    let mut out: Vec<NilconeStratum> = (0u32..(1u32 << r))
        .into_par_iter()
        .flat_map_iter(|mask| {
            let j: BTreeSet<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let jc: BTreeSet<usize> = (0..r).filter(|i| !j.contains(i)).collect();
            min_double_coset_reps(rd, &group, &jc, &jc)
                .into_iter()
                .filter(|w| !only_nilcone || j.is_subset(w.support()))
                .map(|w| {
                    let dim = stratum_dimension(rd, &j, &w);
                    NilconeStratum {
                        j: j.clone(),
                        w,
                        dim,
                        is_top: dim == top,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| {
        let ja: Vec<usize> = a.j.iter().copied().collect();
        let jb: Vec<usize> = b.j.iter().copied().collect();
        (ja.len(), ja, a.w.length(), a.w.reduced_word()).cmp(&(
            jb.len(),
            jb,
            b.w.length(),
            b.w.reduced_word(),
        ))
    });
    Ok(out)
}

/// All strata of the nilpotent cone.
pub fn nilcone_strata(rd: &RootDatum) -> Result<Vec<NilconeStratum>> {
    pieces(rd, true)
}

/// The pieces `X_{∅,Δ,w}` of the open `G × G`-orbit, one per `w ∈ W`,
/// before intersecting with the nilpotent cone.
pub fn open_orbit_pieces(rd: &RootDatum) -> Result<Vec<NilconeStratum>> {
    let full: BTreeSet<usize> = (0..rd.rank()).collect();
    Ok(pieces(rd, false)?
        .into_iter()
        .filter(|s| s.j == full)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilconeReport {
    pub label: String,
    pub dim_group: usize,
    pub rank: usize,
    pub dim_nilcone: i64,
    pub strata: usize,
    pub top_strata: usize,
    pub coxeter_count: usize,
}

/// Summary with the checks: maximal dimension `dim G − r`, attained exactly
/// at `(Δ, w)` for Coxeter `w`, all other strata strictly smaller.
pub fn nilcone_report(rd: &RootDatum) -> Result<NilconeReport> {
    let strata = nilcone_strata(rd)?;
    let cox = coxeter_elements(rd)?;
    let target = rd.dim_group() as i64 - rd.rank() as i64;
    let max = strata
        .iter()
        .map(|s| s.dim)
        .max()
        .expect("(∅, e) is always a stratum");
    if max != target {
        return Err(Error::Inconsistent(format!(
            "maximal stratum dimension {max} differs from dim G - r = {target}"
        )));
    }
    let full: BTreeSet<usize> = (0..rd.rank()).collect();
    let tops: Vec<&NilconeStratum> = strata.iter().filter(|s| s.dim == target).collect();
    for s in &tops {
        if s.j != full || !cox.iter().any(|c| c.action() == s.w.action()) {
            return Err(Error::Inconsistent(format!(
                "top stratum (J = {}, w = {}) is not (Delta, Coxeter)",
                s.j_string(),
                s.w
            )));
        }
    }
    if tops.len() != cox.len() {
        return Err(Error::Inconsistent(format!(
            "{} top strata but {} Coxeter elements",
            tops.len(),
            cox.len()
        )));
    }
    if let Some(s) = strata.iter().find(|s| !s.is_top && s.dim >= target) {
        return Err(Error::Inconsistent(format!(
            "non-top stratum (J = {}, w = {}) has dimension {}",
            s.j_string(),
            s.w,
            s.dim
        )));
    }
    Ok(NilconeReport {
        label: rd.label_string(),
        dim_group: rd.dim_group(),
        rank: rd.rank(),
        dim_nilcone: max,
        strata: strata.len(),
        top_strata: tops.len(),
        coxeter_count: cox.len(),
    })
}

/// `{μ dominant : μ ≤ λ}`, the Cartan-decomposition index set of `L⁺Vin^λ`.
pub fn arc_strata_index(rd: &RootDatum, lambda: &Coweight) -> Result<Vec<Coweight>> {
    dominant_below(rd, lambda)
}

/// `b(λ) = max_i ⟨λ, ω_i + ω_{ι(i)}⟩`.
pub fn b_constant(rd: &RootDatum, lambda: &Coweight) -> Result<i64> {
    rd.check_rank(lambda)?;
    if !rd.is_dominant(lambda) {
        return Err(Error::NotDominant(format!("({lambda}) is not dominant")));
    }
    let c = lambda.coords();
    let iota = rd.w0_permutation();
    let best = (0..rd.rank())
        .map(|i| c[i] + c[iota[i]])
        .max()
        .unwrap_or_default();
    if !best.is_integer() {
        return Err(Error::NonIntegral(format!("b({lambda}) = {best}")));
    }
    Ok(best.to_integer())
}
