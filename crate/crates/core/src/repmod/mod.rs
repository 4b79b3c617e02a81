//! Representations of `g` and of the parabolic `p`.
//!
//! A [`GModule`] stores one action matrix per basis element of `g`; a
//! [`PModule`] stores one per basis element of `p` (in
//! [`GradedLieAlgebra::p_basis`] order) together with the eigenvalue of the
//! grading element on each basis vector. All bases are homogeneous.

pub mod highest;

use crate::error::{BggError, Result};
use crate::gradedla::GradedLieAlgebra;
use crate::linalg::{Coordinates, Echelon, SparseMat, SparseVec};
use crate::rational::Rat;
use crate::rootspace::Weight;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub const DEFAULT_MODULE_BUDGET: u64 = 500;

#[derive(Clone, Debug)]
pub struct GModule {
    weights: Vec<Weight>,
    actions: Vec<SparseMat>,
    form: SparseMat,
    highest_weight: Weight,
}

impl GModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Action of the `a`-th basis element of `g`.
    pub fn action(&self, a: usize) -> &SparseMat {
        &self.actions[a]
    }

    pub fn action_of(&self, x: &SparseVec) -> SparseMat {
        let n = self.dim();
        x.iter().fold(SparseMat::zeros(n, n), |m, (a, c)| m.add_scaled(c, &self.actions[*a]))
    }

    /// Positive definite contravariant form.
    pub fn form(&self) -> &SparseMat {
        &self.form
    }

    /// The adjoint representation, straight from the structure constants.
    pub fn adjoint(g: &GradedLieAlgebra) -> GModule {
        let d = g.dim();
        let weights = (0..d).map(|a| g.basis_weight(a)).collect();
        let actions = (0..d).map(|a| g.ad(a).clone()).collect();
        // <x, y> = -B(x, sigma y), scaled so the highest root vector has norm 1
        let top = g.positive_index(g.roots().positive_roots().len() - 1);
        let norm = g.killing().get(top, g.opposite(top));
        let form = SparseMat::from_entries(
            d,
            d,
            (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).filter_map(|(a, b)| {
                let v = -g.killing_form(&g.element(a), &g.sigma(&g.element(b))) / &norm;
                (!v.is_zero()).then_some((a, b, v))
            }),
        );
        let highest_weight = g.basis_weight(top);
        GModule { weights, actions, form, highest_weight }
    }

    pub fn trivial(g: &GradedLieAlgebra) -> GModule {
        build_irrep(g, &vec![0; g.rank()], DEFAULT_MODULE_BUDGET).unwrap()
    }

    /// Checks `[A(a), A(b)] = A([a, b])` on every pair of basis elements.
    pub fn is_representation(&self, g: &GradedLieAlgebra) -> bool {
        (0..g.dim()).all(|a| {
            (0..g.dim()).all(|b| {
                let lhs = self.actions[a].mul(&self.actions[b]).sub(&self.actions[b].mul(&self.actions[a]));
                lhs == self.action_of(g.bracket_basis(a, b))
            })
        })
    }
}

/// Irreducible module with dominant highest weight `lambda`.
pub fn build_irrep(g: &GradedLieAlgebra, lambda: &[i64], budget: u64) -> Result<GModule> {
    if lambda.len() != g.rank() || lambda.iter().any(|&c| c < 0) {
        return Err(BggError::ValidationError(format!("highest weight {lambda:?} is not dominant")));
    }
    let dim = g.roots().weyl_dimension(lambda);
    if dim > budget {
        return Err(BggError::DimensionOverBudget { what: format!("irreducible module {lambda:?}"), dim, budget });
    }
    let simple = highest::build(g.cartan(), lambda);
    let n = simple.dim();
    let l = g.rank();
    let comm = |a: &SparseMat, b: &SparseMat| a.mul(b).sub(&b.mul(a));
    let npos = g.roots().positive_roots().len();
    let mut pos: Vec<SparseMat> = Vec::with_capacity(npos);
    let mut neg: Vec<SparseMat> = Vec::with_capacity(npos);
    for k in 0..npos {
        match g.recipe(k) {
            None => {
                let i = g.roots().positive_roots()[k].iter().position(|&c| c == 1).unwrap();
                pos.push(simple.e[i].clone());
                neg.push(simple.f[i].clone());
            }
            Some(r) => {
                let inv = Rat::new(1, r.divisor);
                pos.push(comm(&simple.e[r.simple], &pos[r.shorter]).scale(&inv));
                neg.push(comm(&neg[r.shorter], &simple.f[r.simple]).scale(&inv));
            }
        }
    }
    let mut actions = vec![SparseMat::zeros(n, n); g.dim()];
    for k in 0..npos {
        actions[g.positive_index(k)] = pos[k].clone();
        actions[g.negative_index(k)] = neg[k].clone();
    }
    for i in 0..l {
        actions[g.h_index(i)] = simple.h(i);
    }
    Ok(GModule { weights: simple.weights, actions, form: simple.form, highest_weight: lambda.to_vec() })
}

/// Label of a `g_0`-irreducible piece: the highest weight of its dual, in
/// fundamental coordinates of `g`. Crossed coordinates may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrepLabel {
    pub coords: Weight,
    pub e_eigenvalue: Rat,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PModule {
    grades: Vec<Rat>,
    actions: Vec<SparseMat>,
}

impl PModule {
    pub fn new(grades: Vec<Rat>, actions: Vec<SparseMat>) -> Self {
        let n = grades.len();
        assert!(actions.iter().all(|a| a.shape() == (n, n)), "action matrix of the wrong size");
        PModule { grades, actions }
    }

    pub fn zero(g: &GradedLieAlgebra) -> Self {
        PModule { grades: vec![], actions: vec![SparseMat::zeros(0, 0); g.p_basis().len()] }
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    /// Eigenvalue of the grading element on each basis vector.
    pub fn grades(&self) -> &[Rat] {
        &self.grades
    }

    /// Action of the `k`-th element of `p_basis`.
    pub fn action(&self, k: usize) -> &SparseMat {
        &self.actions[k]
    }

    pub fn actions(&self) -> &[SparseMat] {
        &self.actions
    }

    /// Action of the `g` basis element `a`, which must lie in `p`.
    pub fn action_by(&self, g: &GradedLieAlgebra, a: usize) -> &SparseMat {
        &self.actions[g.p_position(a).expect("element is not in p")]
    }

    /// Action of an element of `p` given in `g` coordinates.
    pub fn action_of(&self, g: &GradedLieAlgebra, x: &SparseVec) -> SparseMat {
        let n = self.dim();
        x.iter().fold(SparseMat::zeros(n, n), |m, (a, c)| m.add_scaled(c, self.action_by(g, *a)))
    }

    /// Checks homogeneity and the bracket relations on `p`.
    pub fn is_p_module(&self, g: &GradedLieAlgebra) -> bool {
        let pb = g.p_basis();
        for (k, &a) in pb.iter().enumerate() {
            for (i, row) in self.actions[k].rows().iter().enumerate() {
                for (j, _) in row {
                    if self.grades[i] != &self.grades[*j] + Rat::int(g.grade(a)) {
                        return false;
                    }
                }
            }
        }
        pb.iter().enumerate().all(|(k, _)| {
            pb.iter().enumerate().all(|(m, &b)| {
                let lhs = self.actions[k].mul(&self.actions[m]).sub(&self.actions[m].mul(&self.actions[k]));
                lhs == self.action_of(g, g.bracket_basis(pb[k], b))
            })
        })
    }

    /// Rebuilds every action of grade at least 2 from those of grade 0 and 1.
    pub fn derived_action(&self, g: &GradedLieAlgebra, a: usize) -> SparseMat {
        if g.grade(a) <= 1 || g.is_cartan(a) {
            return self.action_by(g, a).clone();
        }
        let k = g.roots().positive_index(g.basis_root(a)).unwrap();
        let r = g.recipe(k).expect("simple roots have grade at most 1");
        let e = self.action_by(g, g.e_index(r.simple));
        let shorter = self.derived_action(g, g.positive_index(r.shorter));
        e.mul(&shorter).sub(&shorter.mul(e)).scale(&Rat::new(1, r.divisor))
    }

    /// Action of `p` restricted to an invariant subspace, in the given basis.
    pub fn restrict(&self, basis: &SparseMat) -> Result<PModule> {
        let coords = Coordinates::new(basis);
        let grades = basis
            .cols()
            .iter()
            .map(|c| {
                let g0 = &self.grades[c[0].0];
                if c.iter().any(|(i, _)| &self.grades[*i] != g0) {
                    return Err(BggError::ShapeMismatch("subspace basis is not homogeneous".into()));
                }
                Ok(g0.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let actions = self
            .actions
            .iter()
            .map(|a| {
                coords
                    .coords_of_cols(&a.mul(basis))
                    .ok_or_else(|| BggError::ShapeMismatch("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PModule { grades, actions })
    }

    /// The quotient onto a set of basis vectors whose complement is a submodule.
    pub fn quotient_onto(&self, keep: &[usize]) -> PModule {
        PModule {
            grades: keep.iter().map(|&i| self.grades[i].clone()).collect(),
            actions: self.actions.iter().map(|a| a.submatrix(keep, keep)).collect(),
        }
    }
}

/// `V` viewed as a `P`-module.
pub fn restrict_to_parabolic(g: &GradedLieAlgebra, v: &GModule) -> PModule {
    let grades = v.weights().iter().map(|w| g.weight_grade(w)).collect();
    let actions = g.p_basis().iter().map(|&a| v.action(a).clone()).collect();
    PModule { grades, actions }
}

/// `p_+` with the adjoint action, in the basis `g.p_plus()`.
pub fn p_plus_module(g: &GradedLieAlgebra) -> PModule {
    let pp = g.p_plus();
    let mut pos = HashMap::new();
    for (k, &a) in pp.iter().enumerate() {
        pos.insert(a, k);
    }
    let n = pp.len();
    let actions = g
        .p_basis()
        .iter()
        .map(|&z| {
            SparseMat::from_entries(
                n,
                n,
                pp.iter().enumerate().flat_map(|(j, &b)| {
                    g.bracket_basis(z, b).iter().map(|(c, v)| (pos[c], j, v.clone())).collect::<Vec<_>>()
                }),
            )
        })
        .collect();
    PModule { grades: pp.iter().map(|&a| Rat::int(g.grade(a))).collect(), actions }
}

pub fn tensor(m1: &PModule, m2: &PModule) -> PModule {
    let (n1, n2) = (m1.dim(), m2.dim());
    let grades = (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j))).map(|(i, j)| &m1.grades[i] + &m2.grades[j]).collect();
    let (i1, i2) = (SparseMat::identity(n1), SparseMat::identity(n2));
    let actions = m1.actions.iter().zip(&m2.actions).map(|(a, b)| a.kron(&i2).add(&i1.kron(b))).collect();
    PModule { grades, actions }
}

pub fn dual_module(m: &PModule) -> PModule {
    PModule {
        grades: m.grades.iter().map(|g| -g).collect(),
        actions: m.actions.iter().map(|a| a.transpose().scale(&Rat::int(-1))).collect(),
    }
}

/// Increasing `n`-subsets of `0..m`, in lexicographic order.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < n - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, n, cur, out);
            cur.pop();
        }
    }
    rec(0, m, n, &mut cur, &mut out);
    out
}

/// Sorts a list of distinct indices, returning the permutation sign; `None` on a repeat.
pub fn sort_with_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// `Lambda^n M` in the basis of increasing wedges.
pub fn exterior_power(m: &PModule, n: usize) -> PModule {
    let sets = subsets(m.dim(), n);
    let index: HashMap<Vec<usize>, usize> = sets.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
    let grades = sets.iter().map(|s| s.iter().map(|&i| m.grades[i].clone()).sum()).collect();
    let cols: Vec<Vec<SparseVec>> = m.actions.iter().map(|a| a.cols()).collect();
    let actions = cols
        .iter()
        .map(|acols| {
            let mut entries = Vec::new();
            for (k, s) in sets.iter().enumerate() {
                for pos in 0..n {
                    for (c, v) in &acols[s[pos]] {
                        let mut t = s.clone();
                        t[pos] = *c;
                        if let Some(sign) = sort_with_sign(&mut t) {
                            entries.push((index[&t], k, v * Rat::int(sign)));
                        }
                    }
                }
            }
            SparseMat::from_entries(sets.len(), sets.len(), entries)
        })
        .collect();
    PModule { grades, actions }
}

/// One `g_0`-irreducible piece of a completely reducible module.
#[derive(Clone, Debug)]
pub struct G0Component {
    pub label: IrrepLabel,
    pub highest_weight: Weight,
    /// columns span the piece, in the coordinates of the decomposed module
    pub embedding: SparseMat,
}

impl G0Component {
    pub fn dim(&self) -> usize {
        self.embedding.ncols()
    }

    pub fn e_eigenvalue(&self) -> &Rat {
        &self.label.e_eigenvalue
    }
}

/// Label of the `g_0`-piece with highest weight `mu`.
pub fn label_for(g: &GradedLieAlgebra, mu: &[i64]) -> IrrepLabel {
    let uncrossed: Vec<usize> = g.parabolic().uncrossed().collect();
    let lowest = g.roots().to_antidominant_in(mu, &uncrossed);
    let coords: Weight = lowest.iter().map(|c| -c).collect();
    IrrepLabel { e_eigenvalue: -g.weight_grade(&coords), coords }
}

/// Weyl dimension of the `g_0`-module with highest weight `mu`.
pub fn levi_dimension(g: &GradedLieAlgebra, mu: &[i64]) -> u64 {
    let d = g.cartan().root_lengths();
    let mut q = Rat::ONE;
    for beta in g.roots().positive_roots() {
        if g.parabolic().crossed().any(|i| beta[i] != 0) {
            continue;
        }
        let mut a = Rat::ZERO;
        let mut b = Rat::ZERO;
        for j in 0..g.rank() {
            let w = Rat::int(beta[j]) * &d[j];
            a += &w * Rat::int(mu[j] + 1);
            b += w;
        }
        q = q * a / b;
    }
    q.to_i64().expect("Levi dimension is integral") as u64
}

/// Splits a module on which `p_+` acts trivially into `g_0`-irreducibles.
///
/// The Cartan elements must act diagonally. Pieces are returned ordered by
/// eigenvalue of the grading element, then by label.
pub fn decompose_completely_reducible(g: &GradedLieAlgebra, m: &PModule) -> Result<Vec<G0Component>> {
    for &a in g.p_plus() {
        if !m.action_by(g, a).is_zero() {
            return Err(BggError::NotCompletelyReducibleInput("p_+ acts nontrivially".into()));
        }
    }
    let weights = diagonal_weights(g, m)?;
    let ambient = m.dim();
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (v, w) in weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(v);
    }
    let uncrossed: Vec<usize> = g.parabolic().uncrossed().collect();
    let raise: Vec<&SparseMat> = uncrossed.iter().map(|&j| m.action_by(g, g.e_index(j))).collect();
    let lower: Vec<&SparseMat> = uncrossed.iter().map(|&j| m.action_by(g, g.f_index(j))).collect();
    let mut out = Vec::new();
    for (mu, idx) in by_weight.iter().rev() {
        let block = if raise.is_empty() {
            SparseMat::zeros(0, idx.len())
        } else {
            let stacked: Vec<SparseMat> = raise.iter().map(|e| e.select_cols(idx)).collect();
            SparseMat::vstack(&stacked.iter().collect::<Vec<_>>())
        };
        let kernel = block.kernel();
        for hw in kernel.cols() {
            let v: SparseVec = hw.iter().map(|(k, c)| (idx[*k], c.clone())).collect();
            let mut ech = Echelon::new(ambient);
            ech.insert(v.clone());
            let mut span = vec![v];
            let mut frontier = 0;
            while frontier < span.len() {
                let cur = span[frontier].clone();
                frontier += 1;
                for f in &lower {
                    let w = f.mul_vec(&cur);
                    if !w.is_empty() && ech.insert(w.clone()) {
                        span.push(w);
                    }
                }
            }
            let expected = levi_dimension(g, mu) as usize;
            if span.len() != expected {
                return Err(BggError::NotCompletelyReducibleInput(format!(
                    "piece of highest weight {mu:?} has dimension {} instead of {expected}",
                    span.len()
                )));
            }
            let label = label_for(g, mu);
            out.push(G0Component {
                label,
                highest_weight: mu.clone(),
                embedding: SparseMat::from_cols(ambient, &span),
            });
        }
    }
    let total: usize = out.iter().map(|c| c.dim()).sum();
    if total != ambient {
        return Err(BggError::NotCompletelyReducibleInput(format!("pieces cover {total} of {ambient} dimensions")));
    }
    out.sort_by(|a, b| a.label.e_eigenvalue.cmp(&b.label.e_eigenvalue).then(b.label.coords.cmp(&a.label.coords)));
    Ok(out)
}

/// Weights read off the diagonal Cartan actions.
pub fn diagonal_weights(g: &GradedLieAlgebra, m: &PModule) -> Result<Vec<Weight>> {
    let n = m.dim();
    let mut weights = vec![vec![0i64; g.rank()]; n];
    for i in 0..g.rank() {
        let h = m.action_by(g, g.h_index(i));
        for (v, row) in h.rows().iter().enumerate() {
            match row.as_slice() {
                [] => {}
                [(j, x)] if *j == v && x.is_integer() => weights[v][i] = x.to_i64().unwrap(),
                _ => return Err(BggError::NotCompletelyReducibleInput("Cartan does not act diagonally".into())),
            }
        }
    }
    Ok(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootspace::{CartanMatrix, ParabolicSpec};

    fn algebra(s: char, n: usize, nodes: &[usize]) -> GradedLieAlgebra {
        let c = CartanMatrix::of_type(s, n).unwrap();
        GradedLieAlgebra::new(&c, &ParabolicSpec::new(&c, nodes).unwrap()).unwrap()
    }

    fn sorted_weights(m: &GModule) -> Vec<Weight> {
        let mut w = m.weights().to_vec();
        w.sort();
        w
    }

    #[test]
    fn irreps_are_representations() {
        let g = algebra('A', 3, &[1, 3]);
        for lam in [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 0, 1]] {
            let v = build_irrep(&g, &lam, 500).unwrap();
            assert!(v.is_representation(&g), "{lam:?}");
        }
        let g = algebra('B', 2, &[1]);
        let v = build_irrep(&g, &[1, 1], 500).unwrap();
        assert_eq!(v.dim(), 16);
        assert!(v.is_representation(&g));
    }

    #[test]
    fn adjoint_matches_highest_root_irrep() {
        for g in [algebra('A', 3, &[1, 3]), algebra('B', 2, &[1]), algebra('G', 2, &[2])] {
            let top = g.basis_weight(g.positive_index(g.roots().positive_roots().len() - 1));
            let v = build_irrep(&g, &top, 500).unwrap();
            let ad = GModule::adjoint(&g);
            assert_eq!(v.dim(), g.dim());
            assert_eq!(sorted_weights(&v), sorted_weights(&ad));
            assert!(ad.is_representation(&g));
            // adjoint form is contravariant
            for i in 0..g.rank() {
                let (e, f) = (ad.action(g.e_index(i)), ad.action(g.f_index(i)));
                assert_eq!(f.transpose().mul(ad.form()), ad.form().mul(e));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = algebra('A', 3, &[1, 3]);
        assert!(matches!(build_irrep(&g, &[3, 3, 3], 500), Err(BggError::DimensionOverBudget { .. })));
    }

    #[test]
    fn derived_actions_agree() {
        let g = algebra('A', 3, &[1, 3]);
        let v = restrict_to_parabolic(&g, &build_irrep(&g, &[1, 1, 0], 500).unwrap());
        assert!(v.is_p_module(&g));
        for &a in g.p_basis() {
            assert_eq!(&v.derived_action(&g, a), v.action_by(&g, a));
        }
    }

    #[test]
    fn tensor_exterior_dual_are_p_modules() {
        let g = algebra('A', 2, &[1, 2]);
        let pp = p_plus_module(&g);
        assert!(pp.is_p_module(&g));
        let v = restrict_to_parabolic(&g, &build_irrep(&g, &[1, 0], 500).unwrap());
        for n in 0..=3 {
            let w = exterior_power(&pp, n);
            assert_eq!(w.dim(), [1, 3, 3, 1][n]);
            assert!(w.is_p_module(&g));
            assert!(tensor(&w, &v).is_p_module(&g));
        }
        assert!(dual_module(&v).is_p_module(&g));
    }

    #[test]
    fn decomposition_of_restricted_trivial_grading() {
        // On g_0 itself (adjoint restricted to grade 0, where p_+ acts by zero after
        // passing to the grade-0 quotient) the decomposition is centre plus semisimple part.
        let g = algebra('A', 3, &[2]);
        let ad = restrict_to_parabolic(&g, &GModule::adjoint(&g));
        let keep: Vec<usize> = (0..g.dim()).filter(|&a| g.grade(a) == -1).collect();
        // g_- is the quotient g/p and carries a trivial p_+ action
        let q = ad.quotient_onto(&keep);
        let comps = decompose_completely_reducible(&g, &q).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim(), 4);
        assert_eq!(comps[0].label.e_eigenvalue, Rat::int(-1));
        let full = decompose_completely_reducible(&g, &ad);
        assert!(matches!(full, Err(BggError::NotCompletelyReducibleInput(_))));
    }
}
