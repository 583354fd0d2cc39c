//! Weight multiplicities of the dual group.
//!
//! A weight of `Ĝ` is a coweight of `G`. Positive roots of `Ĝ` are the
//! positive coroots of `G` and `ρ̂ = ρ∨`, so everything is done directly in
//! the coordinates of `G`: weights are tracked by their integer
//! fundamental-coweight coordinates `n_j = ⟨μ, α_j⟩` together with the
//! coroot-coordinate gap `β = λ − μ`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Coweight;
use crate::rootdata::RootDatum;
use crate::weyl::enumerate_group;

/// Integer `⟨μ, α_j⟩`, or an error if `μ` is not in the coweight lattice.
fn omega_coords(rd: &RootDatum, cw: &Coweight) -> Result<Vec<i64>> {
    rd.dominance_values(cw)
        .iter()
        .map(|q| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::NotDominant(format!("({cw}) is not integral")))
            }
        })
        .collect()
}

fn require_dominant_integral(rd: &RootDatum, cw: &Coweight) -> Result<Vec<i64>> {
    rd.check_rank(cw)?;
    let n = omega_coords(rd, cw)?;
    if n.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("({cw}) is not dominant")));
    }
    Ok(n)
}

/// All dominant integral `μ ≤ λ` (so `λ − μ` is a nonnegative integral
/// combination of simple coroots), ordered by increasing height of `λ − μ`
/// and then lexicographically on `λ − μ`. The first entry is `λ`.
pub fn dominant_below(rd: &RootDatum, lambda: &Coweight) -> Result<Vec<Coweight>> {
    Ok(dominant_below_gaps(rd, lambda)?
        .into_iter()
        .map(|beta| lambda.sub(&Coweight::integral(beta)))
        .collect())
}

/// The gaps `β = λ − μ` for [`dominant_below`].
fn dominant_below_gaps(rd: &RootDatum, lambda: &Coweight) -> Result<Vec<Vec<i64>>> {
    let n_lambda = require_dominant_integral(rd, lambda)?;
    let r = rd.rank();
    // A dominant coweight has nonnegative coroot coordinates, so β_i ≤ λ_i.
    let bound: Vec<i64> = lambda
        .coords()
        .iter()
        .map(|q| q.floor().to_integer())
        .collect();
    let cartan = rd.cartan();
    let mut out = vec![];
    let mut beta = vec![0i64; r];
    loop {
        let dominant = (0..r).all(|j| {
            let s: i64 = (0..r).map(|i| beta[i] * cartan[i][j]).sum();
            n_lambda[j] - s >= 0
        });
        if dominant {
            out.push(beta.clone());
        }
        // odometer over the box
        let mut k = 0;
        while k < r {
            if beta[k] < bound[k] {
                beta[k] += 1;
                break;
            }
            beta[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    out.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    Ok(out)
}

/// Number of ways to write `β` as an ℕ-combination of positive coroots.
pub fn kostant_partition(rd: &RootDatum, beta: &[i64]) -> u64 {
    let mut memo = HashMap::new();
    partition_rec(rd.positive_coroots(), beta, 0, &mut memo)
}

fn partition_rec(
    coroots: &[Vec<i64>],
    beta: &[i64],
    k: usize,
    memo: &mut HashMap<(Vec<i64>, usize), u64>,
) -> u64 {
    if beta.iter().any(|&x| x < 0) {
        return 0;
    }
    if beta.iter().all(|&x| x == 0) {
        return 1;
    }
    if k == coroots.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(beta.to_vec(), k)) {
        return v;
    }
    let rest: Vec<i64> = beta.iter().zip(&coroots[k]).map(|(a, b)| a - b).collect();
    let v = partition_rec(coroots, beta, k + 1, memo) + partition_rec(coroots, &rest, k, memo);
    memo.insert((beta.to_vec(), k), v);
    v
}

/// Dominant weights of `V(λ)` with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub lambda: Coweight,
    /// In [`dominant_below`] order.
    pub entries: Vec<(Coweight, u64)>,
}

impl WeightSystem {
    pub fn multiplicity(&self, mu: &Coweight) -> u64 {
        self.entries
            .iter()
            .find(|(m, _)| m == mu)
            .map_or(0, |(_, k)| *k)
    }

    /// `Σ m_{λμ}·|W·μ|`.
    pub fn dimension(&self, rd: &RootDatum) -> u64 {
        self.entries
            .iter()
            .map(|(mu, m)| m * orbit_size(rd, mu))
            .sum()
    }
}

/// Size of the W-orbit of a coweight.
pub fn orbit_size(rd: &RootDatum, mu: &Coweight) -> u64 {
    rd.orbit(mu).len() as u64
}

/// Freudenthal's recursion over the dominant weights of `V(λ)`.
pub fn weight_system(rd: &RootDatum, lambda: &Coweight) -> Result<WeightSystem> {
    let n_lambda = require_dominant_integral(rd, lambda)?;
    let gaps = dominant_below_gaps(rd, lambda)?;
    let r = rd.rank();
    let cartan = rd.cartan();
    let norms = rd.coroot_norms();
    let coroots: Vec<(Vec<i64>, Vec<i64>)> = rd
        .positive_coroots()
        .iter()
        .map(|b| {
            let n: Vec<i64> = (0..r)
                .map(|j| (0..r).map(|i| b[i] * cartan[i][j]).sum())
                .collect();
            (b.clone(), n)
        })
        .collect();
    let omega_of = |beta: &[i64]| -> Vec<i64> {
        (0..r)
            .map(|j| n_lambda[j] - (0..r).map(|i| beta[i] * cartan[i][j]).sum::<i64>())
            .collect()
    };
    // doubled invariant form: ⟨x, y⟩ for x in ω∨ coordinates, y in coroot coordinates
    let form = |n: &[i64], c: &[i64]| -> i128 {
        (0..r)
            .map(|j| n[j] as i128 * c[j] as i128 * norms[j] as i128)
            .sum()
    };

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut entries = Vec::with_capacity(gaps.len());
    for beta in &gaps {
        let n_mu = omega_of(beta);
        let m = if beta.iter().all(|&x| x == 0) {
            1
        } else {
            let mut acc: i128 = 0;
            for (b, nb) in &coroots {
                for k in 1i64.. {
                    let mut n: Vec<i64> = n_mu.iter().zip(nb).map(|(x, y)| x + k * y).collect();
                    let mut g: Vec<i64> = beta.iter().zip(b).map(|(x, y)| x - k * y).collect();
                    let f = form(&n, b);
                    while let Some(i) = (0..r).find(|&i| n[i] < 0) {
                        let ni = n[i];
                        for j in 0..r {
                            n[j] -= ni * cartan[i][j];
                        }
                        g[i] += ni;
                    }
                    if g.iter().any(|&x| x < 0) {
                        break;
                    }
                    let Some(&md) = mult.get(&n) else { break };
                    acc += f * md as i128;
                }
            }
            let lhs_n: Vec<i64> = (0..r).map(|j| n_lambda[j] + n_mu[j] + 2).collect();
            let coef = form(&lhs_n, beta);
            if coef <= 0 || (2 * acc) % coef != 0 {
                return Err(Error::Inconsistent(format!(
                    "Freudenthal recursion is not integral at λ−μ = {beta:?}"
                )));
            }
            u64::try_from(2 * acc / coef)
                .map_err(|_| Error::Inconsistent("negative multiplicity".into()))?
        };
        mult.insert(n_mu, m);
        entries.push((lambda.sub(&Coweight::integral(beta.clone())), m));
    }
    Ok(WeightSystem {
        lambda: lambda.clone(),
        entries,
    })
}

/// `m_{λμ}` by Freudenthal. Zero unless `μ ≤ λ` integrally.
pub fn multiplicity_freudenthal(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
    require_dominant_integral(rd, lambda)?;
    require_dominant_integral(rd, mu)?;
    if !rd.leq_integral(mu, lambda) {
        return Ok(0);
    }
    Ok(weight_system(rd, lambda)?.multiplicity(mu))
}

/// `m_{λμ} = Σ_w (−1)^{l(w)} P(w(λ+ρ∨) − (μ+ρ∨))`.
pub fn multiplicity_kostant(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
    require_dominant_integral(rd, lambda)?;
    require_dominant_integral(rd, mu)?;
    if !rd.leq_integral(mu, lambda) {
        return Ok(0);
    }
    let group = enumerate_group(rd)?;
    let shifted_lambda = lambda.add(rd.rho_check());
    let shifted_mu = mu.add(rd.rho_check());
    let mut memo = HashMap::new();
    let mut total: i128 = 0;
    for w in &group {
        let v = w.act(&shifted_lambda).sub(&shifted_mu);
        let Some(beta) = v.as_integral() else {
            return Err(Error::Inconsistent("non-integral Kostant argument".into()));
        };
        let p = partition_rec(rd.positive_coroots(), beta, 0, &mut memo) as i128;
        if w.length() % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    u64::try_from(total).map_err(|_| Error::Inconsistent("negative Kostant sum".into()))
}

/// Whether `μ` is a weight of `V(λ)`: `dom(μ) ≤ λ` integrally.
pub fn is_weight(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> bool {
    let (d, _) = rd.dominant_reduce(mu);
    rd.leq_integral(&d, lambda) && rd.dominance_values(&d).iter().all(|q| q.is_integer())
}

/// `⟨λ + ρ∨, θ⟩` maximized over the simple factors.
pub fn sweep_size(rd: &RootDatum, lambda: &Coweight) -> i64 {
    let vals = rd.dominance_values(lambda);
    let mut best = 0;
    for (t, off) in rd.factors() {
        let n = t.rank();
        let theta = rd
            .positive_roots()
            .iter()
            .filter(|a| {
                a.iter()
                    .enumerate()
                    .all(|(i, &x)| x == 0 || (off..off + n).contains(&i))
            })
            .max_by_key(|a| a.iter().sum::<i64>())
            .expect("factor has roots");
        let s: crate::rational::Rational = theta.iter().zip(&vals).map(|(&a, v)| *v * a + a).sum();
        best = best.max(s.ceil().to_integer());
    }
    best
}

/// Dominant coweights in the cocharacter lattice with `sweep_size ≤ bound`.
pub fn sweep_lambdas(rd: &RootDatum, bound: i64) -> Vec<Coweight> {
    let r = rd.rank();
    let mut out = vec![];
    let mut n = vec![0i64; r];
    loop {
        let q: Vec<_> = n.iter().map(|&x| crate::rational::int(x)).collect();
        let lambda = rd.from_fundamental(&q);
        let ok = sweep_size(rd, &lambda) <= bound;
        if ok && rd.in_lattice(&lambda) {
            out.push(lambda);
        }
        // increase coordinates while in range; each n_j ≤ bound suffices
        let mut k = 0;
        while k < r {
            if n[k] < bound {
                n[k] += 1;
                break;
            }
            n[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    out.sort_by_key(|a| rd.dominance_values(a));
    out
}
