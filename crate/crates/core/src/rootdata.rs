//! Root data of types A–G and finite products, with exact lattice
//! arithmetic on coweights.
//!
//! Conventions: coweights are written in the simple-coroot basis, weights
//! in the fundamental-weight basis. The Cartan matrix has entries
//! `C[i][j] = ⟨α_j, α_i∨⟩`, so `⟨λ, α_j⟩ = Σ_i c_i C[i][j]` for a coweight
//! `λ = Σ c_i α_i∨`, and `⟨λ, ω_j⟩ = c_j`. Simple roots follow Bourbaki
//! numbering (`B_n`: `α_n` short, `C_n`: `α_n` long, `G2`: `α_1` short,
//! `F4`: `α_3, α_4` short).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::rational::{int, Coweight, Rational, Weight};

/// Largest Weyl group the crate will enumerate.
pub const WEYL_ORDER_CAP: u64 = 51_840;
/// Largest rank accepted for a single simple factor.
pub const MAX_FACTOR_RANK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl SimpleType {
    pub fn rank(self) -> usize {
        match self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) => n,
            SimpleType::E(n) => n,
            SimpleType::F4 => 4,
            SimpleType::G2 => 2,
        }
    }

    /// Number of positive roots, from the classification.
    pub fn positive_root_count(self) -> usize {
        match self {
            SimpleType::A(n) => n * (n + 1) / 2,
            SimpleType::B(n) | SimpleType::C(n) => n * n,
            SimpleType::D(n) => n * (n - 1),
            SimpleType::E(6) => 36,
            SimpleType::E(7) => 63,
            SimpleType::E(_) => 120,
            SimpleType::F4 => 24,
            SimpleType::G2 => 6,
        }
    }

    pub fn weyl_order(self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self {
            SimpleType::A(n) => fact(n + 1),
            SimpleType::B(n) | SimpleType::C(n) => (1u64 << n) * fact(n),
            SimpleType::D(n) => (1u64 << (n - 1)) * fact(n),
            SimpleType::E(6) => 51_840,
            SimpleType::E(7) => 2_903_040,
            SimpleType::E(_) => 696_729_600,
            SimpleType::F4 => 1152,
            SimpleType::G2 => 12,
        }
    }

    pub fn coxeter_number(self) -> usize {
        match self {
            SimpleType::A(n) => n + 1,
            SimpleType::B(n) | SimpleType::C(n) => 2 * n,
            SimpleType::D(n) => 2 * n - 2,
            SimpleType::E(6) => 12,
            SimpleType::E(7) => 18,
            SimpleType::E(_) => 30,
            SimpleType::F4 => 12,
            SimpleType::G2 => 6,
        }
    }

    fn cartan(self) -> IntMatrix {
        let n = self.rank();
        let mut c = linalg::identity(n);
        c.iter_mut()
            .for_each(|row| row.iter_mut().for_each(|x| *x *= 2));
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self {
            SimpleType::A(_) | SimpleType::B(_) | SimpleType::C(_) => {
                (0..n - 1).for_each(|i| link(i, i + 1));
            }
            SimpleType::D(_) => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            SimpleType::E(_) => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            SimpleType::F4 => (0..3).for_each(|i| link(i, i + 1)),
            SimpleType::G2 => link(0, 1),
        }
        match self {
            SimpleType::B(_) => c[n - 1][n - 2] = -2,
            SimpleType::C(_) => c[n - 2][n - 1] = -2,
            SimpleType::F4 => c[2][1] = -2,
            SimpleType::G2 => c[0][1] = -3,
            _ => {}
        }
        c
    }

    fn check(self) -> Result<()> {
        let ok = match self {
            SimpleType::A(n) => (1..=MAX_FACTOR_RANK).contains(&n),
            SimpleType::B(n) | SimpleType::C(n) => (2..=MAX_FACTOR_RANK).contains(&n),
            SimpleType::D(n) => (4..=MAX_FACTOR_RANK).contains(&n),
            SimpleType::E(n) => n == 6,
            SimpleType::F4 | SimpleType::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownLabel(self.to_string()))
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(n) => write!(f, "A{n}"),
            SimpleType::B(n) => write!(f, "B{n}"),
            SimpleType::C(n) => write!(f, "C{n}"),
            SimpleType::D(n) => write!(f, "D{n}"),
            SimpleType::E(n) => write!(f, "E{n}"),
            SimpleType::F4 => write!(f, "F4"),
            SimpleType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownLabel(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) => SimpleType::A(n),
            ('B', n) => SimpleType::B(n),
            ('C', n) => SimpleType::C(n),
            ('D', n) => SimpleType::D(n),
            ('E', n) => SimpleType::E(n),
            ('F', 4) => SimpleType::F4,
            ('G', 2) => SimpleType::G2,
            _ => return Err(bad()),
        };
        t.check()?;
        Ok(t)
    }
}

/// Parse `A2`, `B3`, `A1xA1`, `A1×G2`.
pub fn parse_label(label: &str) -> Result<Vec<SimpleType>> {
    let parts: Vec<&str> = label.split(['x', 'X', '×']).collect();
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(Error::UnknownLabel(label.to_string()));
    }
    parts.into_iter().map(str::parse).collect()
}

/// Which lattice between the coroot lattice and the fundamental-coweight
/// lattice is the cocharacter lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Generators in fundamental-coweight coordinates.
    Custom(Vec<Vec<i64>>),
}

impl FromStr for Isogeny {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sc" | "simply_connected" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "adjoint" | "ad" => Ok(Isogeny::Adjoint),
            other => Err(Error::Parse(format!("unknown isogeny `{other}`"))),
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => f.write_str("sc"),
            Isogeny::Adjoint => f.write_str("adjoint"),
            Isogeny::Custom(g) => write!(f, "custom{g:?}"),
        }
    }
}

/// A finite abelian group `⊕ ℤ/d_i` with the projection from the isogeny
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    /// Nontrivial invariant factors, each dividing the next.
    pub invariant_factors: Vec<i64>,
    /// `r × k` matrix taking lattice-basis coordinates to the `k` cyclic
    /// coordinates (before reduction mod `d_i`).
    pub projection: IntMatrix,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Reduce an element given by arbitrary integer representatives.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, d)| a.rem_euclid(*d))
            .collect()
    }

    fn apply(&self, basis_coords: &[i64]) -> Vec<i64> {
        let k = self.invariant_factors.len();
        let y: Vec<i64> = (0..k)
            .map(|j| {
                basis_coords
                    .iter()
                    .zip(&self.projection)
                    .map(|(x, row)| x * row[j])
                    .sum()
            })
            .collect();
        self.reduce(&y)
    }

    /// Normalize a user-supplied element: the trivial group accepts `[]`
    /// or any all-zero vector.
    pub fn normalize(&self, x: &[i64]) -> Result<Vec<i64>> {
        if self.is_trivial() && x.iter().all(|&v| v == 0) {
            return Ok(vec![]);
        }
        if x.len() != self.invariant_factors.len() {
            return Err(Error::Rank {
                expected: self.invariant_factors.len(),
                got: x.len(),
            });
        }
        Ok(self.reduce(x))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Admit `E6` (|W| = 51840, at the cap).
    pub allow_e6: bool,
}

/// An immutable root datum.
#[derive(Debug, Clone)]
pub struct RootDatum {
    label: Vec<SimpleType>,
    offsets: Vec<usize>,
    rank: usize,
    cartan: IntMatrix,
    cartan_inv: RatMatrix,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    coroot_norms: Vec<i64>,
    rho: Weight,
    rho_check: Coweight,
    w0_permutation: Vec<usize>,
    isogeny: Isogeny,
    lattice_basis: IntMatrix,
    lattice_basis_inv: RatMatrix,
    pi1: FiniteAbelianGroup,
}

impl RootDatum {
    pub fn build(label: &str, isogeny: Isogeny) -> Result<Self> {
        Self::build_with(label, isogeny, BuildOptions::default())
    }

    pub fn build_with(label: &str, isogeny: Isogeny, opts: BuildOptions) -> Result<Self> {
        let types = parse_label(label)?;
        if !opts.allow_e6 {
            if let Some(t) = types.iter().find(|t| matches!(t, SimpleType::E(_))) {
                return Err(Error::SizeGuard {
                    order: t.weyl_order(),
                    cap: WEYL_ORDER_CAP - 1,
                });
            }
        }
        Self::from_types(types, isogeny)
    }

    pub fn simply_connected(label: &str) -> Result<Self> {
        Self::build(label, Isogeny::SimplyConnected)
    }

    pub fn adjoint(label: &str) -> Result<Self> {
        Self::build(label, Isogeny::Adjoint)
    }

    fn from_types(types: Vec<SimpleType>, isogeny: Isogeny) -> Result<Self> {
        let rank: usize = types.iter().map(|t| t.rank()).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut offsets = Vec::with_capacity(types.len());
        let mut off = 0;
        for t in &types {
            offsets.push(off);
            for (i, row) in t.cartan().into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    cartan[off + i][off + j] = x;
                }
            }
            off += t.rank();
        }
        Self::from_cartan(types, offsets, cartan, isogeny)
    }

    fn from_cartan(
        label: Vec<SimpleType>,
        offsets: Vec<usize>,
        cartan: IntMatrix,
        isogeny: Isogeny,
    ) -> Result<Self> {
        let rank = cartan.len();
        let cartan_inv = linalg::inverse(&linalg::to_rational(&cartan))
            .ok_or_else(|| Error::Inconsistent("singular Cartan matrix".into()))?;
        let (positive_roots, positive_coroots) = close_roots(&cartan);
        let expected: usize = label.iter().map(|t| t.positive_root_count()).sum();
        if positive_roots.len() != expected {
            return Err(Error::Inconsistent(format!(
                "root closure produced {} positive roots, expected {expected}",
                positive_roots.len()
            )));
        }
        let mut root_index = HashMap::new();
        for (k, a) in positive_roots.iter().enumerate() {
            root_index.insert(a.clone(), k);
        }
        let n = positive_roots.len();
        for (k, a) in positive_roots.iter().enumerate() {
            root_index.insert(a.iter().map(|x| -x).collect(), n + k);
        }
        let coroot_norms = symmetrize(&cartan);

        let mut two_rho_check = vec![0i64; rank];
        for b in &positive_coroots {
            two_rho_check.iter_mut().zip(b).for_each(|(s, x)| *s += x);
        }
        let rho_check = Coweight::new(two_rho_check, 2)?;
        let rho = Weight(vec![1; rank]);
        let w0_permutation = w0_permutation(&cartan);

        let gens = match &isogeny {
            Isogeny::SimplyConnected => cartan.clone(),
            Isogeny::Adjoint => linalg::identity(rank),
            Isogeny::Custom(g) => {
                if g.iter().any(|v| v.len() != rank) {
                    return Err(Error::Isogeny(format!(
                        "generators must have length {rank}"
                    )));
                }
                g.clone()
            }
        };
        let lattice_basis = linalg::lattice_basis(&gens);
        let lattice_basis_inv = (lattice_basis.len() == rank)
            .then(|| linalg::inverse(&linalg::to_rational(&lattice_basis)))
            .flatten()
            .ok_or_else(|| Error::Isogeny("generators do not span a full-rank lattice".into()))?;
        // Coroots expressed in the lattice basis must be integral.
        let mut coroot_coords = Vec::with_capacity(rank);
        for row in &cartan {
            let x = linalg::row_times(
                &linalg::to_rational(std::slice::from_ref(row))[0],
                &lattice_basis_inv,
            );
            if !linalg::is_integral(&x) {
                return Err(Error::Isogeny(
                    "lattice does not contain the coroot lattice".into(),
                ));
            }
            coroot_coords.push(x.iter().map(|q| q.to_integer()).collect::<Vec<_>>());
        }
        let (diag, v) = linalg::smith(&coroot_coords);
        let keep: Vec<usize> = (0..rank).filter(|&i| diag[i] != 1).collect();
        let pi1 = FiniteAbelianGroup {
            invariant_factors: keep.iter().map(|&i| diag[i]).collect(),
            projection: v
                .iter()
                .map(|row| keep.iter().map(|&i| row[i]).collect())
                .collect(),
        };

        Ok(RootDatum {
            label,
            offsets,
            rank,
            cartan,
            cartan_inv,
            positive_roots,
            positive_coroots,
            root_index,
            coroot_norms,
            rho,
            rho_check,
            w0_permutation,
            isogeny,
            lattice_basis,
            lattice_basis_inv,
            pi1,
        })
    }

    /// The Langlands dual datum: transposed Cartan matrix, with the dual
    /// cocharacter lattice.
    pub fn dual(&self) -> Result<RootDatum> {
        // Dual lattice generators: columns of C·B⁻¹ in fundamental-weight coordinates.
        let c = linalg::to_rational(&self.cartan);
        let prod: RatMatrix = c
            .iter()
            .map(|row| linalg::row_times(row, &self.lattice_basis_inv))
            .collect();
        let gens: Vec<Vec<i64>> = linalg::transpose(&prod)
            .into_iter()
            .map(|col| {
                if linalg::is_integral(&col) {
                    Ok(col.iter().map(|q| q.to_integer()).collect())
                } else {
                    Err(Error::Inconsistent("dual lattice is not integral".into()))
                }
            })
            .collect::<Result<_>>()?;
        let label = self
            .label
            .iter()
            .map(|t| match *t {
                SimpleType::B(n) => SimpleType::C(n),
                SimpleType::C(n) => SimpleType::B(n),
                t => t,
            })
            .collect();
        let mut dual = Self::from_cartan(
            label,
            self.offsets.clone(),
            linalg::transpose(&self.cartan),
            Isogeny::Custom(gens),
        )?;
        dual.isogeny = match self.isogeny {
            Isogeny::SimplyConnected => Isogeny::Adjoint,
            Isogeny::Adjoint => Isogeny::SimplyConnected,
            _ => dual.isogeny,
        };
        Ok(dual)
    }

    pub fn label(&self) -> &[SimpleType] {
        &self.label
    }

    pub fn label_string(&self) -> String {
        self.label
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    /// `(type, first simple index)` per simple factor.
    pub fn factors(&self) -> impl Iterator<Item = (SimpleType, usize)> + '_ {
        self.label.iter().copied().zip(self.offsets.iter().copied())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    /// Basis of the cocharacter lattice, rows in fundamental-coweight coordinates.
    pub fn isogeny_lattice(&self) -> &IntMatrix {
        &self.lattice_basis
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive coroots, index-aligned with [`Self::positive_roots`].
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Root at index `k`: positive roots first, then their negatives.
    pub fn root(&self, k: usize) -> Vec<i64> {
        let n = self.positive_roots.len();
        if k < n {
            self.positive_roots[k].clone()
        } else {
            self.positive_roots[k - n].iter().map(|x| -x).collect()
        }
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Index of `-α`.
    pub fn negate_index(&self, k: usize) -> usize {
        let n = self.positive_roots.len();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn is_positive_index(&self, k: usize) -> bool {
        k < self.positive_roots.len()
    }

    pub fn dim_group(&self) -> usize {
        self.rank + self.num_roots()
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_check(&self) -> &Coweight {
        &self.rho_check
    }

    /// `ι` with `ω_{ι(i)} = −w₀(ω_i)`.
    pub fn w0_permutation(&self) -> &[usize] {
        &self.w0_permutation
    }

    /// Squared lengths of the simple coroots under a W-invariant form,
    /// scaled to coprime positive integers per factor.
    pub fn coroot_norms(&self) -> &[i64] {
        &self.coroot_norms
    }

    pub fn weyl_order(&self) -> u64 {
        self.label.iter().map(|t| t.weyl_order()).product()
    }

    /// `Π 2^{r_i − 1}` over simple factors.
    pub fn coxeter_count_formula(&self) -> u64 {
        self.label.iter().map(|t| 1u64 << (t.rank() - 1)).product()
    }

    pub fn check_rank(&self, cw: &Coweight) -> Result<()> {
        if cw.rank() != self.rank {
            return Err(Error::Rank {
                expected: self.rank,
                got: cw.rank(),
            });
        }
        Ok(())
    }

    /// `⟨λ, α_j⟩` for each simple root, i.e. fundamental-coweight coordinates.
    pub fn dominance_values(&self, cw: &Coweight) -> Vec<Rational> {
        let c = cw.numerators();
        (0..self.rank)
            .map(|j| {
                let s: i64 = (0..self.rank).map(|i| c[i] * self.cartan[i][j]).sum();
                Rational::new(s, cw.denominator())
            })
            .collect()
    }

    /// Coweight from fundamental-coweight coordinates.
    pub fn from_fundamental(&self, n: &[Rational]) -> Coweight {
        Coweight::from_rationals(&linalg::row_times(n, &self.cartan_inv))
    }

    pub fn fundamental_coweight(&self, i: usize) -> Coweight {
        let mut n = vec![Rational::zero(); self.rank];
        n[i] = Rational::one();
        self.from_fundamental(&n)
    }

    pub fn is_dominant(&self, cw: &Coweight) -> bool {
        self.dominance_values(cw).iter().all(|q| !q.is_negative())
    }

    /// `⟨α, λ⟩` for a root in simple-root coordinates.
    pub fn pair_root(&self, root: &[i64], cw: &Coweight) -> Rational {
        self.dominance_values(cw)
            .iter()
            .zip(root)
            .map(|(v, &a)| v * a)
            .sum()
    }

    /// `⟨α_j∨, α_i⟩`-style pairing of a weight (fundamental-weight coords)
    /// with a coweight.
    pub fn pair_weight(&self, w: &Weight, cw: &Coweight) -> Rational {
        w.pair(cw)
    }

    /// `s_i(λ) = λ − ⟨λ, α_i⟩ α_i∨`.
    pub fn reflect(&self, cw: &Coweight, i: usize) -> Coweight {
        let mut c = cw.coords();
        c[i] -= self.dominance_values(cw)[i];
        Coweight::from_rationals(&c)
    }

    /// Apply a Weyl word (`[i_1, …, i_k]` meaning `s_{i_1}⋯s_{i_k}`).
    pub fn apply_word(&self, word: &[usize], cw: &Coweight) -> Coweight {
        word.iter()
            .rev()
            .fold(cw.clone(), |acc, &i| self.reflect(&acc, i))
    }

    /// Reflect a root (simple-root coordinates) by `s_i`.
    pub fn reflect_root(&self, root: &[i64], i: usize) -> Vec<i64> {
        let p: i64 = root.iter().zip(&self.cartan[i]).map(|(a, c)| a * c).sum();
        let mut out = root.to_vec();
        out[i] -= p;
        out
    }

    pub fn apply_word_to_root(&self, word: &[usize], root: &[i64]) -> Vec<i64> {
        word.iter()
            .rev()
            .fold(root.to_vec(), |acc, &i| self.reflect_root(&acc, i))
    }

    /// Dominant representative of the W-orbit of `ν`, together with a word
    /// `w` (in `s_{i_1}⋯s_{i_k}` form) with `w(ν)` equal to it.
    pub fn dominant_reduce(&self, nu: &Coweight) -> (Coweight, Vec<usize>) {
        let mut cur = nu.clone();
        let mut applied = Vec::new();
        loop {
            let vals = self.dominance_values(&cur);
            match vals.iter().position(|q| q.is_negative()) {
                Some(i) => {
                    cur = self.reflect(&cur, i);
                    applied.push(i);
                }
                None => break,
            }
        }
        applied.reverse();
        (cur, applied)
    }

    /// `ν ≤_ℚ λ`: `λ − ν` is a nonnegative rational combination of simple coroots.
    pub fn leq_q(&self, nu: &Coweight, lambda: &Coweight) -> bool {
        lambda.sub(nu).is_nonnegative()
    }

    /// `μ ≤ λ` in the integral dominance order.
    pub fn leq_integral(&self, mu: &Coweight, lambda: &Coweight) -> bool {
        let d = lambda.sub(mu);
        d.is_integral() && d.is_nonnegative()
    }

    fn lattice_coords(&self, cw: &Coweight) -> Option<Vec<i64>> {
        let n = self.dominance_values(cw);
        if !linalg::is_integral(&n) {
            return None;
        }
        let x = linalg::row_times(&n, &self.lattice_basis_inv);
        linalg::is_integral(&x).then(|| x.iter().map(|q| q.to_integer()).collect())
    }

    /// Membership in the cocharacter lattice.
    pub fn in_lattice(&self, cw: &Coweight) -> bool {
        self.lattice_coords(cw).is_some()
    }

    pub fn fundamental_group(&self) -> &FiniteAbelianGroup {
        &self.pi1
    }

    /// `p_G : X_*(T) → π₁(G)`.
    pub fn project(&self, cw: &Coweight) -> Result<Vec<i64>> {
        self.check_rank(cw)?;
        let x = self.lattice_coords(cw).ok_or_else(|| {
            Error::Precondition(format!("coweight ({cw}) is not in the cocharacter lattice"))
        })?;
        Ok(self.pi1.apply(&x))
    }

    /// Dimension of the irreducible representation of the dual group with
    /// highest weight `λ`: `Π_{α>0} ⟨λ+ρ∨, α⟩ / ⟨ρ∨, α⟩`.
    pub fn weyl_dimension(&self, lambda: &Coweight) -> Result<u64> {
        self.check_rank(lambda)?;
        let vals = self.dominance_values(lambda);
        if vals.iter().any(|q| q.is_negative() || !q.is_integer()) {
            return Err(Error::NotDominant(format!(
                "({lambda}) is not dominant integral"
            )));
        }
        let vals: Vec<i128> = vals.iter().map(|q| q.to_integer() as i128).collect();
        let mut acc = num_rational::Ratio::<i128>::one();
        for a in &self.positive_roots {
            let ht: i128 = a.iter().map(|&x| x as i128).sum();
            let p: i128 = a.iter().zip(&vals).map(|(&x, v)| x as i128 * v).sum();
            acc *= num_rational::Ratio::new(p + ht, ht);
        }
        if !acc.is_integer() {
            return Err(Error::Inconsistent(
                "Weyl dimension is not an integer".into(),
            ));
        }
        u64::try_from(acc.to_integer()).map_err(|_| Error::Inconsistent("overflow".into()))
    }

    /// Highest root of a simple datum.
    pub fn highest_root(&self) -> Result<Vec<i64>> {
        if self.label.len() != 1 {
            return Err(Error::Unsupported("highest root of a product".into()));
        }
        Ok(self
            .positive_roots
            .iter()
            .max_by_key(|a| a.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system"))
    }

    pub fn zero(&self) -> Coweight {
        Coweight::zero(self.rank)
    }

    /// Simple coroot `α_i∨`.
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        Coweight::integral(v)
    }

    /// `⟨ρ, λ⟩`.
    pub fn rho_pairing(&self, cw: &Coweight) -> Rational {
        cw.height()
    }

    /// The W-orbit of a coweight, by BFS.
    pub fn orbit(&self, cw: &Coweight) -> Vec<Coweight> {
        let mut seen = std::collections::HashSet::new();
        let mut q = VecDeque::new();
        seen.insert(cw.clone());
        q.push_back(cw.clone());
        let mut out = vec![];
        while let Some(x) = q.pop_front() {
            for i in 0..self.rank {
                let y = self.reflect(&x, i);
                if seen.insert(y.clone()) {
                    q.push_back(y);
                }
            }
            out.push(x);
        }
        out
    }

    pub fn integral_lattice_point(&self, n: &[i64]) -> Coweight {
        let q: Vec<Rational> = n.iter().map(|&x| int(x)).collect();
        self.from_fundamental(&q)
    }
}

/// Closure of the simple roots (and coroots, in lockstep) under simple
/// reflections, keeping positive ones.
fn close_roots(cartan: &IntMatrix) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = vec![];
    let mut coroots: Vec<Vec<i64>> = vec![];
    let mut seen = std::collections::HashSet::new();
    let mut q = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        q.push_back((e.clone(), e));
    }
    while let Some((a, b)) = q.pop_front() {
        for i in 0..r {
            // s_i(α) = α − ⟨α, α_i∨⟩ α_i ; s_i(β∨) = β∨ − ⟨β∨, α_i⟩ α_i∨
            let pa: i64 = (0..r).map(|j| a[j] * cartan[i][j]).sum();
            let pb: i64 = (0..r).map(|j| b[j] * cartan[j][i]).sum();
            let mut a2 = a.clone();
            a2[i] -= pa;
            let mut b2 = b.clone();
            b2[i] -= pb;
            if a2.iter().all(|&x| x >= 0) && seen.insert(a2.clone()) {
                q.push_back((a2, b2));
            }
        }
        roots.push(a);
        coroots.push(b);
    }
    // Stable order: by height, then lexicographically.
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by_key(|&k| {
        (
            roots[k].iter().sum::<i64>(),
            std::cmp::Reverse(roots[k].clone()),
        )
    });
    (
        idx.iter().map(|&k| roots[k].clone()).collect(),
        idx.iter().map(|&k| coroots[k].clone()).collect(),
    )
}

/// Integers `L_i > 0` with `C[j][i]·L_i = C[i][j]·L_j`.
fn symmetrize(cartan: &IntMatrix) -> Vec<i64> {
    let r = cartan.len();
    let mut l: Vec<Option<Rational>> = vec![None; r];
    for start in 0..r {
        if l[start].is_some() {
            continue;
        }
        l[start] = Some(Rational::one());
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if j != i && cartan[i][j] != 0 && l[j].is_none() {
                    l[j] = Some(l[i].unwrap() * Rational::new(cartan[j][i], cartan[i][j]));
                    stack.push(j);
                    comp.push(j);
                }
            }
        }
        let den = comp
            .iter()
            .fold(1i64, |acc, &k| acc.lcm(l[k].unwrap().denom()));
        let mut ints: Vec<i64> = comp
            .iter()
            .map(|&k| (l[k].unwrap() * den).to_integer())
            .collect();
        let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
        ints.iter_mut().for_each(|x| *x /= g);
        for (&k, v) in comp.iter().zip(ints) {
            l[k] = Some(int(v));
        }
    }
    l.into_iter().map(|x| x.unwrap().to_integer()).collect()
}

fn reflection_matrix(cartan: &IntMatrix, i: usize) -> IntMatrix {
    let r = cartan.len();
    let mut s = linalg::identity(r);
    for j in 0..r {
        s[i][j] -= cartan[j][i];
    }
    s
}

fn w0_permutation(cartan: &IntMatrix) -> Vec<usize> {
    let r = cartan.len();
    let refl: Vec<IntMatrix> = (0..r).map(|i| reflection_matrix(cartan, i)).collect();
    let mut m = linalg::identity(r);
    loop {
        let col_pos = |m: &IntMatrix, i: usize| (0..r).all(|k| m[k][i] >= 0);
        match (0..r).find(|&i| col_pos(&m, i)) {
            Some(i) => m = linalg::mat_mul(&m, &refl[i]),
            None => break,
        }
    }
    (0..r)
        .map(|i| {
            (0..r)
                .find(|&k| m[k][i] == -1)
                .expect("w0 permutes simple coroots")
        })
        .collect()
}

pub(crate) fn simple_reflection_matrix(rd: &RootDatum, i: usize) -> IntMatrix {
    reflection_matrix(&rd.cartan, i)
}
