//! Weyl group elements as integer matrices on simple-coroot coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rational::Coweight;
use crate::rootdata::{simple_reflection_matrix, RootDatum, WEYL_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    action: IntMatrix,
    reduced_word: Vec<usize>,
    support: BTreeSet<usize>,
}

impl WeylElement {
    pub fn identity(rd: &RootDatum) -> Self {
        WeylElement {
            action: linalg::identity(rd.rank()),
            reduced_word: vec![],
            support: BTreeSet::new(),
        }
    }

    pub fn simple(rd: &RootDatum, i: usize) -> Self {
        Self::from_matrix(rd, simple_reflection_matrix(rd, i))
    }

    /// The element `s_{i_1}⋯s_{i_k}` (0-based indices).
    pub fn from_word(rd: &RootDatum, word: &[usize]) -> Result<Self> {
        let mut m = linalg::identity(rd.rank());
        for &i in word {
            if i >= rd.rank() {
                return Err(Error::Precondition(format!(
                    "simple reflection index {} out of range",
                    i + 1
                )));
            }
            m = linalg::mat_mul(&m, &simple_reflection_matrix(rd, i));
        }
        Ok(Self::from_matrix(rd, m))
    }

    /// Canonical element for an action matrix, with a reduced word found by
    /// following right descents.
    pub fn from_matrix(rd: &RootDatum, action: IntMatrix) -> Self {
        let r = rd.rank();
        let mut m = action.clone();
        let mut word = VecDeque::new();
        while let Some(i) = (0..r).find(|&i| column_negative(&m, i)) {
            word.push_front(i);
            m = linalg::mat_mul(&m, &simple_reflection_matrix(rd, i));
        }
        debug_assert_eq!(m, linalg::identity(r));
        let reduced_word: Vec<usize> = word.into();
        let support = reduced_word.iter().copied().collect();
        WeylElement {
            action,
            reduced_word,
            support,
        }
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn reduced_word(&self) -> &[usize] {
        &self.reduced_word
    }

    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn rank(&self) -> usize {
        self.action.len()
    }

    pub fn is_identity(&self) -> bool {
        self.reduced_word.is_empty()
    }

    pub fn act(&self, cw: &Coweight) -> Coweight {
        let v = linalg::mat_vec(&self.action, cw.numerators());
        Coweight::new(v, cw.denominator()).expect("positive denominator")
    }

    /// Action on an integer vector in simple-coroot coordinates.
    pub fn act_integral(&self, v: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.action, v)
    }

    /// Action on a root in simple-root coordinates.
    pub fn act_on_root(&self, rd: &RootDatum, root: &[i64]) -> Vec<i64> {
        rd.apply_word_to_root(&self.reduced_word, root)
    }

    pub fn mul(&self, rd: &RootDatum, other: &WeylElement) -> WeylElement {
        Self::from_matrix(rd, linalg::mat_mul(&self.action, &other.action))
    }

    pub fn inverse(&self, rd: &RootDatum) -> WeylElement {
        let w: Vec<usize> = self.reduced_word.iter().rev().copied().collect();
        Self::from_word(rd, &w).expect("indices in range")
    }

    /// `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        column_negative(&self.action, i)
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, rd: &RootDatum, i: usize) -> bool {
        self.inverse(rd).is_right_descent(i)
    }

    /// Number of positive coroots sent to negative coroots.
    pub fn inversions(&self, rd: &RootDatum) -> usize {
        rd.positive_coroots()
            .iter()
            .filter(|b| self.act_integral(b).iter().all(|&x| x <= 0))
            .count()
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let id = linalg::identity(self.rank());
        let mut m = self.action.clone();
        let mut k = 1;
        while m != id {
            m = linalg::mat_mul(&m, &self.action);
            k += 1;
        }
        k
    }

    /// `dim_ℚ ker(w − 1)`.
    pub fn fixed_space_dim(&self) -> usize {
        let r = self.rank();
        let diff: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.action[i][j] - i64::from(i == j))
                    .collect()
            })
            .collect();
        r - linalg::rank(&linalg::to_rational(&diff))
    }

    /// 1-based word, e.g. `s1 s2`.
    pub fn word_string(&self) -> String {
        if self.reduced_word.is_empty() {
            return "e".into();
        }
        self.reduced_word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

fn column_negative(m: &IntMatrix, i: usize) -> bool {
    // w(α_i∨) is a root, so one negative entry means all are nonpositive.
    m.iter().any(|row| row[i] < 0)
}

fn guard(rd: &RootDatum) -> Result<()> {
    let order = rd.weyl_order();
    if order > WEYL_ORDER_CAP {
        return Err(Error::SizeGuard {
            order,
            cap: WEYL_ORDER_CAP,
        });
    }
    Ok(())
}

/// The full Weyl group, in BFS order (identity first, nondecreasing length).
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
}

impl WeylGroup {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let elements = enumerate_group(rd)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.action.clone(), k))
            .collect();
        Ok(WeylGroup { elements, index })
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.action).copied()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("nonempty group")
    }
}

/// BFS closure over right multiplication by simple reflections.
pub fn enumerate_group(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    guard(rd)?;
    let r = rd.rank();
    let refl: Vec<IntMatrix> = (0..r).map(|i| simple_reflection_matrix(rd, i)).collect();
    let id = WeylElement::identity(rd);
    let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
    seen.insert(id.action.clone(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let (m, word) = (out[head].action.clone(), out[head].reduced_word.clone());
        for (i, s) in refl.iter().enumerate() {
            let m2 = linalg::mat_mul(&m, s);
            if seen.insert(m2.clone(), ()).is_none() {
                let mut w2 = word.clone();
                w2.push(i);
                let support = w2.iter().copied().collect();
                out.push(WeylElement {
                    action: m2,
                    reduced_word: w2,
                    support,
                });
            }
        }
        head += 1;
    }
    Ok(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = vec![];
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All products of the simple reflections of one factor in every order,
/// deduplicated by action matrix.
fn factor_coxeter(rd: &RootDatum, indices: &[usize]) -> BTreeMap<IntMatrix, Vec<usize>> {
    let mut found = BTreeMap::new();
    for p in permutations(indices) {
        let w = WeylElement::from_word(rd, &p).expect("in range");
        found.entry(w.action).or_insert(p);
    }
    found
}

/// The `S`-Coxeter elements: products of all simple reflections, each
/// exactly once. Enumerated per simple factor (factors commute) and
/// combined.
pub fn coxeter_elements(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    guard(rd)?;
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for (t, off) in rd.factors() {
        let idx: Vec<usize> = (off..off + t.rank()).collect();
        let words: Vec<Vec<usize>> = factor_coxeter(rd, &idx).into_values().collect();
        acc = acc
            .iter()
            .flat_map(|a| {
                words.iter().map(move |w| {
                    let mut v = a.clone();
                    v.extend(w);
                    v
                })
            })
            .collect();
    }
    let mut out: Vec<WeylElement> = acc
        .iter()
        .map(|w| WeylElement::from_word(rd, w))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.reduced_word.cmp(&b.reduced_word));
    Ok(out)
}

/// Coxeter elements by brute force over all `r!` orderings of the full set
/// of simple reflections.
pub fn coxeter_elements_brute(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    guard(rd)?;
    let idx: Vec<usize> = (0..rd.rank()).collect();
    let mut out: Vec<WeylElement> = factor_coxeter(rd, &idx)
        .into_keys()
        .map(|m| WeylElement::from_matrix(rd, m))
        .collect();
    out.sort_by(|a, b| a.reduced_word.cmp(&b.reduced_word));
    Ok(out)
}

/// Minimal length representatives of `W_{J1} \ W / W_{J2}`: elements with
/// no left descent in `J1` and no right descent in `J2`.
pub fn min_double_coset_reps(
    rd: &RootDatum,
    group: &WeylGroup,
    j1: &BTreeSet<usize>,
    j2: &BTreeSet<usize>,
) -> Vec<WeylElement> {
    group
        .elements()
        .iter()
        .filter(|w| {
            j2.iter().all(|&i| !w.is_right_descent(i))
                && j1.iter().all(|&i| !w.is_left_descent(rd, i))
        })
        .cloned()
        .collect()
}

/// Elements of the standard parabolic subgroup `W_J`.
pub fn parabolic_subgroup(group: &WeylGroup, j: &BTreeSet<usize>) -> Vec<WeylElement> {
    group
        .elements()
        .iter()
        .filter(|w| w.support().is_subset(j))
        .cloned()
        .collect()
}

pub fn fixed_space_dim(w: &WeylElement) -> usize {
    w.fixed_space_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::SimpleType;
    use std::collections::HashSet;

    fn sc(l: &str) -> RootDatum {
        RootDatum::simply_connected(l).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn group_orders_and_lengths() {
        assert_eq!(enumerate_group(&sc("A1")).unwrap().len(), 2);
        let a2 = enumerate_group(&sc("A2")).unwrap();
        let mut lens: Vec<usize> = a2.iter().map(|w| w.length()).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(enumerate_group(&sc("B2")).unwrap().len(), 8);
        for l in ["G2", "A3", "B3", "C3", "D4", "F4", "A1xA1xA1"] {
            let rd = sc(l);
            let g = enumerate_group(&rd).unwrap();
            assert_eq!(g.len() as u64, rd.weyl_order(), "{l}");
            assert!(g[0].is_identity());
        }
    }

    #[test]
    fn lengths_match_inversions_and_descent_words() {
        for l in ["A3", "B3", "G2", "A1xB2"] {
            let rd = sc(l);
            for w in enumerate_group(&rd).unwrap() {
                assert_eq!(w.length(), w.inversions(&rd));
                let again = WeylElement::from_matrix(&rd, w.action().clone());
                assert_eq!(again.length(), w.length());
                assert_eq!(
                    WeylElement::from_word(&rd, w.reduced_word())
                        .unwrap()
                        .action(),
                    w.action()
                );
            }
        }
    }

    /// All reduced words of `w`, by recursion on right descents.
    fn all_reduced_words(rd: &RootDatum, w: &WeylElement) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![vec![]];
        }
        let mut out = vec![];
        for i in 0..rd.rank() {
            if w.is_right_descent(i) {
                let shorter = w.mul(rd, &WeylElement::simple(rd, i));
                for mut word in all_reduced_words(rd, &shorter) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        out
    }

    #[test]
    fn support_independent_of_reduced_word() {
        for l in ["A2", "A3", "B3", "C3", "G2", "A1xA2"] {
            let rd = sc(l);
            for w in enumerate_group(&rd).unwrap() {
                for word in all_reduced_words(&rd, &w) {
                    assert_eq!(word.len(), w.length());
                    let s: BTreeSet<usize> = word.iter().copied().collect();
                    assert_eq!(&s, w.support(), "{l} {w}");
                }
            }
        }
    }

    #[test]
    fn coxeter_counts() {
        assert_eq!(coxeter_elements(&sc("A1")).unwrap().len(), 1);
        assert_eq!(coxeter_elements(&sc("A2")).unwrap().len(), 2);
        assert_eq!(coxeter_elements(&sc("A1xA1")).unwrap().len(), 1);
        for l in ["A3", "B3", "C3", "D4", "G2", "F4", "A2xB2", "A1xA1xA2"] {
            let rd = sc(l);
            let cox = coxeter_elements(&rd).unwrap();
            assert_eq!(cox.len() as u64, rd.coxeter_count_formula(), "{l}");
            let brute = coxeter_elements_brute(&rd).unwrap();
            let a: HashSet<_> = cox.iter().map(|w| w.action().clone()).collect();
            let b: HashSet<_> = brute.iter().map(|w| w.action().clone()).collect();
            assert_eq!(a, b, "{l}");
            for w in &cox {
                assert_eq!(w.length(), rd.rank());
                assert_eq!(w.support().len(), rd.rank());
            }
        }
    }

    #[test]
    fn coxeter_orders_are_coxeter_numbers() {
        for l in ["A1", "A2", "A3", "B2", "G2", "B3", "F4"] {
            let rd = sc(l);
            let h = rd.label()[0].coxeter_number();
            for w in coxeter_elements(&rd).unwrap() {
                assert_eq!(w.order(), h, "{l}");
            }
        }
        assert_eq!(SimpleType::G2.coxeter_number(), 6);
    }

    #[test]
    fn longest_element() {
        for l in ["A2", "B3", "G2", "D4"] {
            let rd = sc(l);
            let g = WeylGroup::new(&rd).unwrap();
            let w0 = g.longest();
            assert_eq!(w0.length(), rd.num_positive_roots());
            assert!(w0.mul(&rd, w0).is_identity());
        }
    }

    #[test]
    fn double_coset_examples() {
        let rd = sc("A2");
        let g = WeylGroup::new(&rd).unwrap();
        let all = set(&[0, 1]);
        let reps = min_double_coset_reps(&rd, &g, &all, &all);
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_identity());
        assert_eq!(
            min_double_coset_reps(&rd, &g, &set(&[]), &set(&[])).len(),
            6
        );
        // ⟨s1⟩\S3/⟨s1⟩ has two double cosets: {e, s1} and the rest.
        assert_eq!(
            min_double_coset_reps(&rd, &g, &set(&[0]), &set(&[0])).len(),
            2
        );
    }

    /// Exhaustive double coset scan: partition W into `W_{J1} w W_{J2}` and
    /// check each block has a unique minimal-length element equal to a rep.
    #[test]
    fn double_cosets_partition_group() {
        for l in ["A2", "A3", "B2", "G2", "B3"] {
            let rd = sc(l);
            let g = WeylGroup::new(&rd).unwrap();
            let r = rd.rank();
            for m1 in 0..(1u32 << r) {
                for m2 in 0..(1u32 << r) {
                    let j1: BTreeSet<usize> = (0..r).filter(|i| m1 >> i & 1 == 1).collect();
                    let j2: BTreeSet<usize> = (0..r).filter(|i| m2 >> i & 1 == 1).collect();
                    let p1 = parabolic_subgroup(&g, &j1);
                    let p2 = parabolic_subgroup(&g, &j2);
                    let mut block_of = vec![usize::MAX; g.order()];
                    let mut minima = vec![];
                    for (k, w) in g.elements().iter().enumerate() {
                        if block_of[k] != usize::MAX {
                            continue;
                        }
                        let id = minima.len();
                        let mut best = w.clone();
                        for a in &p1 {
                            for b in &p2 {
                                let x = a.mul(&rd, w).mul(&rd, b);
                                let pos = g.position(&x).unwrap();
                                block_of[pos] = id;
                                if x.length() < best.length() {
                                    best = x;
                                }
                            }
                        }
                        minima.push(best);
                    }
                    let reps = min_double_coset_reps(&rd, &g, &j1, &j2);
                    assert_eq!(reps.len(), minima.len(), "{l} {j1:?} {j2:?}");
                    let want: HashSet<_> = minima.iter().map(|w| w.action().clone()).collect();
                    let got: HashSet<_> = reps.iter().map(|w| w.action().clone()).collect();
                    assert_eq!(want, got);
                }
            }
        }
    }

    #[test]
    fn fixed_space_examples() {
        let a1 = sc("A1");
        assert_eq!(WeylElement::identity(&a1).fixed_space_dim(), 1);
        assert_eq!(WeylElement::simple(&a1, 0).fixed_space_dim(), 0);
        let a2 = sc("A2");
        for w in coxeter_elements(&a2).unwrap() {
            assert_eq!(fixed_space_dim(&w), 0);
        }
        assert_eq!(WeylElement::simple(&a2, 0).fixed_space_dim(), 1);
    }

    #[test]
    fn size_guard() {
        let big = RootDatum::simply_connected("A5xA4").unwrap();
        assert!(matches!(
            enumerate_group(&big),
            Err(Error::SizeGuard { .. })
        ));
    }
}
