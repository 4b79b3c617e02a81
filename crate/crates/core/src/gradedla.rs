//! The graded Lie algebra attached to a Dynkin diagram with crossed nodes.
//!
//! The Chevalley basis is realised inside the smallest fundamental
//! representation. Root vectors are built by height with
//! `x_beta = [e_i, x_gamma] / (p + 1)` and `x_{-beta} = [x_{-gamma}, f_i] / (p + 1)`,
//! which makes `x_{-beta} = -omega(x_beta)` for the Chevalley involution `omega`.
//! Structure constants are then read off the matrices.
//!
//! Basis layout: negative roots (deepest first), then the coroots `h_i`, then
//! the positive roots in [`RootSystem`] order.

use crate::error::Result;
use crate::linalg::{axpy, collect_vec, lookup, scale, SparseMat, SparseVec};
use crate::rational::Rat;
use crate::repmod::highest;
use crate::rootspace::{CartanMatrix, ParabolicSpec, RootSystem, Weight};

/// How a non-simple positive root vector is obtained from a shorter one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRecipe {
    pub simple: usize,
    /// index of the shorter positive root
    pub shorter: usize,
    pub divisor: i64,
}

/// `eta_k` spans `p_+`; `xi_k` is the Killing-dual element of `g_-`.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub eta: Vec<usize>,
    pub xi: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    roots: RootSystem,
    parabolic: ParabolicSpec,
    dim: usize,
    npos: usize,
    // root coordinates per basis element (zero for the Cartan part)
    basis_roots: Vec<Vec<i64>>,
    grades: Vec<i64>,
    brackets: Vec<SparseVec>,
    ad: Vec<SparseMat>,
    killing: SparseMat,
    recipes: Vec<Option<RootRecipe>>,
    grading: SparseVec,
    p_plus: Vec<usize>,
    p_basis: Vec<usize>,
    p_pos: Vec<Option<usize>>,
    duals: DualBasisPair,
    faithful: Vec<SparseMat>,
}

impl GradedLieAlgebra {
    pub fn new(cartan: &CartanMatrix, parabolic: &ParabolicSpec) -> Result<Self> {
        let roots = RootSystem::new(cartan);
        let l = cartan.rank();
        let npos = roots.positive_roots().len();
        let dim = 2 * npos + l;

        // smallest fundamental representation
        let k = (0..l)
            .min_by_key(|&k| {
                let mut w = vec![0; l];
                w[k] = 1;
                roots.weyl_dimension(&w)
            })
            .unwrap();
        let mut top = vec![0; l];
        top[k] = 1;
        let rep = highest::build(cartan, &top);
        let comm = |a: &SparseMat, b: &SparseMat| a.mul(b).sub(&b.mul(a));

        let mut pos_mats: Vec<SparseMat> = Vec::with_capacity(npos);
        let mut neg_mats: Vec<SparseMat> = Vec::with_capacity(npos);
        let mut recipes = Vec::with_capacity(npos);
        for beta in roots.positive_roots() {
            let height: i64 = beta.iter().sum();
            if height == 1 {
                let i = beta.iter().position(|&c| c == 1).unwrap();
                pos_mats.push(rep.e[i].clone());
                neg_mats.push(rep.f[i].clone());
                recipes.push(None);
                continue;
            }
            let (i, shorter) = (0..l)
                .find_map(|i| {
                    let mut g = beta.clone();
                    g[i] -= 1;
                    roots.positive_index(&g).map(|s| (i, s))
                })
                .expect("non-simple positive root has a shorter predecessor");
            let gamma = roots.positive_roots()[shorter].clone();
            let mut p = 0;
            let mut down = gamma.clone();
            loop {
                down[i] -= 1;
                if roots.is_root(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let inv = Rat::new(1, p + 1);
            pos_mats.push(comm(&rep.e[i], &pos_mats[shorter]).scale(&inv));
            neg_mats.push(comm(&neg_mats[shorter], &rep.f[i]).scale(&inv));
            recipes.push(Some(RootRecipe { simple: i, shorter, divisor: p + 1 }));
        }

        let mut basis_roots = Vec::with_capacity(dim);
        let mut faithful = Vec::with_capacity(dim);
        for k in (0..npos).rev() {
            basis_roots.push(roots.positive_roots()[k].iter().map(|c| -c).collect());
            faithful.push(neg_mats[k].clone());
        }
        for i in 0..l {
            basis_roots.push(vec![0; l]);
            faithful.push(rep.h(i));
        }
        for k in 0..npos {
            basis_roots.push(roots.positive_roots()[k].clone());
            faithful.push(pos_mats[k].clone());
        }
        let grades: Vec<i64> =
            basis_roots.iter().map(|r| parabolic.crossed().map(|i| r[i]).sum()).collect();

        let mut g = GradedLieAlgebra {
            roots,
            parabolic: parabolic.clone(),
            dim,
            npos,
            basis_roots,
            grades,
            brackets: Vec::new(),
            ad: Vec::new(),
            killing: SparseMat::zeros(0, 0),
            recipes,
            grading: Vec::new(),
            p_plus: Vec::new(),
            p_basis: Vec::new(),
            p_pos: Vec::new(),
            duals: DualBasisPair { eta: vec![], xi: vec![] },
            faithful,
        };
        g.brackets = g.structure_constants(&rep.weights);
        g.ad = (0..dim)
            .map(|a| SparseMat::from_cols(dim, &(0..dim).map(|b| g.brackets[a * dim + b].clone()).collect::<Vec<_>>()))
            .collect();
        g.killing = g.killing_matrix();
        g.grading = g.grading_coords(cartan);
        g.p_plus = {
            let mut v: Vec<usize> = (0..dim).filter(|&a| g.grades[a] > 0).collect();
            v.sort_by_key(|&a| (g.grades[a], a));
            v
        };
        g.p_basis = (0..dim).filter(|&a| g.grades[a] >= 0).collect();
        g.p_pos = vec![None; dim];
        for (k, &a) in g.p_basis.iter().enumerate() {
            g.p_pos[a] = Some(k);
        }
        let xi = g
            .p_plus
            .iter()
            .map(|&a| {
                let b = g.opposite(a);
                let kappa = g.killing.get(a, b);
                vec![(b, kappa.recip())]
            })
            .collect();
        g.duals = DualBasisPair { eta: g.p_plus.clone(), xi };
        Ok(g)
    }

    fn structure_constants(&self, rep_weights: &[Weight]) -> Vec<SparseVec> {
        let l = self.rank();
        let dim = self.dim;
        let mut out = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let m = self.faithful[a].mul(&self.faithful[b]).sub(&self.faithful[b].mul(&self.faithful[a]));
                if m.is_zero() {
                    continue;
                }
                let sum: Vec<i64> = (0..l).map(|i| self.basis_roots[a][i] + self.basis_roots[b][i]).collect();
                let v: SparseVec = if sum.iter().all(|&c| c == 0) {
                    // Cartan part: solve sum_i c_i wt_v(i) = m[v][v]
                    let n = rep_weights.len();
                    let sys = SparseMat::from_entries(
                        n,
                        l,
                        (0..n).flat_map(|v| (0..l).map(move |i| (v, i, Rat::int(rep_weights[v][i])))),
                    );
                    let rhs: SparseVec =
                        (0..n).filter_map(|v| Some((v, m.get(v, v))).filter(|e| !e.1.is_zero())).collect();
                    let c = sys.solve(&rhs).expect("bracket of opposite root vectors is not in the Cartan");
                    c.into_iter().map(|(i, x)| (self.npos + i, x)).collect()
                } else {
                    let t = self.root_to_basis(&sum).expect("bracket lands on a non-root");
                    let (r, row) = self.faithful[t].rows().iter().enumerate().find(|(_, r)| !r.is_empty()).unwrap();
                    let (c, x) = &row[0];
                    let coef = &m.get(r, *c) / x;
                    vec![(t, coef)]
                };
                let mut check = SparseMat::zeros(m.nrows(), m.ncols());
                for (t, x) in &v {
                    check = check.add_scaled(x, &self.faithful[*t]);
                }
                assert_eq!(check, m, "bracket is not in the span of the basis");
                out[a * dim + b] = v;
            }
        }
        out
    }

    fn killing_matrix(&self) -> SparseMat {
        let dim = self.dim;
        let mut entries = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                if self.basis_roots[a].iter().zip(&self.basis_roots[b]).any(|(x, y)| x + y != 0) {
                    continue;
                }
                let mut t = Rat::ZERO;
                for (i, row) in self.ad[a].rows().iter().enumerate() {
                    for (j, v) in row {
                        t += v * self.ad[b].get(*j, i);
                    }
                }
                entries.push((a, b, t));
            }
        }
        SparseMat::from_entries(dim, dim, entries)
    }

    fn grading_coords(&self, cartan: &CartanMatrix) -> SparseVec {
        // alpha_j(E) = sum_i c_i A[j][i] = [j crossed]
        let l = self.rank();
        let at = SparseMat::from_i64(&(0..l).map(|j| (0..l).map(|i| cartan.entry(j, i)).collect()).collect::<Vec<_>>());
        let rhs: SparseVec = self.parabolic.crossed().map(|j| (j, Rat::ONE)).collect();
        let c = at.solve(&rhs).unwrap();
        c.into_iter().map(|(i, x)| (self.npos + i, x)).collect()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.roots.cartan()
    }

    pub fn parabolic(&self) -> &ParabolicSpec {
        &self.parabolic
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> i64 {
        self.roots.grading_depth(&self.parabolic)
    }

    pub fn grade(&self, a: usize) -> i64 {
        self.grades[a]
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    /// Basis indices of `g_j`.
    pub fn graded_piece(&self, j: i64) -> Vec<usize> {
        (0..self.dim).filter(|&a| self.grades[a] == j).collect()
    }

    pub fn basis_root(&self, a: usize) -> &[i64] {
        &self.basis_roots[a]
    }

    /// Weight of a basis element in fundamental weight coordinates.
    pub fn basis_weight(&self, a: usize) -> Weight {
        self.roots.root_to_weight(&self.basis_roots[a])
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        a >= self.npos && a < self.npos + self.rank()
    }

    pub fn h_index(&self, i: usize) -> usize {
        self.npos + i
    }

    pub fn positive_index(&self, k: usize) -> usize {
        self.npos + self.rank() + k
    }

    pub fn negative_index(&self, k: usize) -> usize {
        self.npos - 1 - k
    }

    pub fn e_index(&self, i: usize) -> usize {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        self.root_to_basis(&r).unwrap()
    }

    pub fn f_index(&self, i: usize) -> usize {
        let mut r = vec![0; self.rank()];
        r[i] = -1;
        self.root_to_basis(&r).unwrap()
    }

    /// Basis index of the root vector for a (positive or negative) root.
    pub fn root_to_basis(&self, root: &[i64]) -> Option<usize> {
        if let Some(k) = self.roots.positive_index(root) {
            return Some(self.positive_index(k));
        }
        let neg: Vec<i64> = root.iter().map(|c| -c).collect();
        self.roots.positive_index(&neg).map(|k| self.negative_index(k))
    }

    /// The root vector of the opposite root; Cartan elements map to themselves.
    pub fn opposite(&self, a: usize) -> usize {
        if self.is_cartan(a) {
            return a;
        }
        let neg: Vec<i64> = self.basis_roots[a].iter().map(|c| -c).collect();
        self.root_to_basis(&neg).unwrap()
    }

    pub fn recipe(&self, k: usize) -> Option<&RootRecipe> {
        self.recipes[k].as_ref()
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.brackets[a * self.dim + b]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (a, u) in x {
            for (b, v) in y {
                let uv = u * v;
                for (c, w) in self.bracket_basis(*a, *b) {
                    acc.push((*c, &uv * w));
                }
            }
        }
        collect_vec(acc)
    }

    /// `ad x` as a matrix on the basis.
    pub fn ad(&self, a: usize) -> &SparseMat {
        &self.ad[a]
    }

    pub fn ad_of(&self, x: &SparseVec) -> SparseMat {
        let mut m = SparseMat::zeros(self.dim, self.dim);
        for (a, c) in x {
            m = m.add_scaled(c, &self.ad[*a]);
        }
        m
    }

    pub fn killing(&self) -> &SparseMat {
        &self.killing
    }

    pub fn killing_form(&self, x: &SparseVec, y: &SparseVec) -> Rat {
        crate::linalg::dot(x, &self.killing.mul_vec(y))
    }

    /// The grading element `E`, with `[E, x] = j x` on `g_j`.
    pub fn grading_element(&self) -> &SparseVec {
        &self.grading
    }

    /// `nu(E)` for a weight in fundamental coordinates.
    pub fn weight_grade(&self, nu: &[i64]) -> Rat {
        self.grading.iter().map(|(a, c)| c * Rat::int(nu[a - self.npos])).sum()
    }

    /// Basis indices spanning `p_+`, ordered by grade.
    pub fn p_plus(&self) -> &[usize] {
        &self.p_plus
    }

    /// Basis indices spanning `p`, in basis order.
    pub fn p_basis(&self) -> &[usize] {
        &self.p_basis
    }

    /// Position of a basis element within [`Self::p_basis`].
    pub fn p_position(&self, a: usize) -> Option<usize> {
        self.p_pos[a]
    }

    pub fn dual_basis_pair(&self) -> &DualBasisPair {
        &self.duals
    }

    /// Drops the components of negative grade.
    pub fn project_p(&self, x: &SparseVec) -> SparseVec {
        x.iter().filter(|(a, _)| self.grades[*a] >= 0).cloned().collect()
    }

    /// Chevalley involution composed with `-1`: `x_alpha -> -x_{-alpha}`, `h -> -h`.
    pub fn sigma(&self, x: &SparseVec) -> SparseVec {
        let v: Vec<(usize, Rat)> = x.iter().map(|(a, c)| (self.opposite(*a), -c)).collect();
        collect_vec(v)
    }

    /// The faithful matrix realisation used to derive the structure constants.
    pub fn faithful_matrix(&self, a: usize) -> &SparseMat {
        &self.faithful[a]
    }

    /// Coroot `h_beta = [x_beta, x_{-beta}]` for a positive root index.
    pub fn coroot(&self, k: usize) -> SparseVec {
        let a = self.positive_index(k);
        self.bracket_basis(a, self.opposite(a)).clone()
    }

    pub fn element(&self, a: usize) -> SparseVec {
        vec![(a, Rat::ONE)]
    }

    pub fn combine(&self, terms: &[(Rat, &SparseVec)]) -> SparseVec {
        terms.iter().fold(Vec::new(), |acc, (c, v)| axpy(&acc, c, v))
    }

    pub fn scaled(&self, x: &SparseVec, c: &Rat) -> SparseVec {
        scale(x, c)
    }

    pub fn coefficient(&self, x: &SparseVec, a: usize) -> Rat {
        lookup(x, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra(s: char, n: usize, nodes: &[usize]) -> GradedLieAlgebra {
        let c = CartanMatrix::of_type(s, n).unwrap();
        let p = ParabolicSpec::new(&c, nodes).unwrap();
        GradedLieAlgebra::new(&c, &p).unwrap()
    }

    fn battery() -> Vec<GradedLieAlgebra> {
        vec![
            algebra('A', 1, &[1]),
            algebra('A', 2, &[1]),
            algebra('A', 2, &[1, 2]),
            algebra('A', 3, &[1, 3]),
            algebra('A', 3, &[2]),
            algebra('B', 2, &[1]),
            algebra('G', 2, &[1]),
            algebra('C', 3, &[2]),
        ]
    }

    #[test]
    fn jacobi_and_antisymmetry() {
        for g in battery() {
            let d = g.dim();
            for a in 0..d {
                for b in 0..d {
                    let ab = g.bracket_basis(a, b);
                    let ba = g.bracket_basis(b, a);
                    assert_eq!(*ab, scale(ba, &Rat::int(-1)));
                }
            }
            for a in 0..d {
                for b in a + 1..d {
                    for c in b + 1..d {
                        let (x, y, z) = (g.element(a), g.element(b), g.element(c));
                        let s1 = g.bracket(&x, &g.bracket(&y, &z));
                        let s2 = g.bracket(&y, &g.bracket(&z, &x));
                        let s3 = g.bracket(&z, &g.bracket(&x, &y));
                        assert!(axpy(&axpy(&s1, &Rat::ONE, &s2), &Rat::ONE, &s3).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_basis_properties() {
        for g in battery() {
            let l = g.rank();
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    for (_, c) in g.bracket_basis(a, b) {
                        assert!(c.is_integer(), "non-integral structure constant");
                    }
                }
            }
            for k in 0..g.roots().positive_roots().len() {
                let beta = g.roots().positive_roots()[k].clone();
                let h = g.coroot(k);
                // beta(h_beta) = 2 and [h_beta, x_beta] = 2 x_beta
                let xb = g.element(g.positive_index(k));
                assert_eq!(g.bracket(&h, &xb), scale(&xb, &Rat::int(2)));
                for i in 0..l {
                    let hi = g.element(g.h_index(i));
                    assert_eq!(g.bracket(&hi, &xb), scale(&xb, &Rat::int(g.roots().pairing(&beta, i))));
                }
            }
            // sigma is an automorphism
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let (x, y) = (g.element(a), g.element(b));
                    assert_eq!(g.sigma(&g.bracket(&x, &y)), g.bracket(&g.sigma(&x), &g.sigma(&y)));
                }
            }
        }
    }

    #[test]
    fn grading_element_and_killing_form() {
        for g in battery() {
            let e = g.grading_element().clone();
            for a in 0..g.dim() {
                let x = g.element(a);
                assert_eq!(g.bracket(&e, &x), scale(&x, &Rat::int(g.grade(a))));
                // B pairs g_i with g_{-i} only
                for b in 0..g.dim() {
                    if g.grade(a) + g.grade(b) != 0 {
                        assert!(g.killing().get(a, b).is_zero());
                    }
                }
            }
            // ad-invariance of the Killing form on a sample
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let bb = g.element(b);
                    for c in [0, g.dim() / 2, g.dim() - 1] {
                        let x = g.element(a);
                        let z = g.element(c);
                        let lhs = g.killing_form(&g.bracket(&x, &bb), &z);
                        let rhs = -g.killing_form(&bb, &g.bracket(&x, &z));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // dual bases: B(eta_a, xi_b) = delta
            let d = g.dual_basis_pair();
            for (i, &a) in d.eta.iter().enumerate() {
                for (j, xi) in d.xi.iter().enumerate() {
                    let v = g.killing_form(&g.element(a), xi);
                    assert_eq!(v, if i == j { Rat::ONE } else { Rat::ZERO });
                }
            }
        }
    }

    #[test]
    fn sl2_killing_and_grading_dims() {
        let g = algebra('A', 1, &[1]);
        // B(e, f) = 4 and xi = f / 4
        let d = g.dual_basis_pair();
        assert_eq!(d.xi[0], vec![(g.f_index(0), Rat::new(1, 4))]);
        let dims = |g: &GradedLieAlgebra| {
            let k = g.depth();
            (-k..=k).map(|j| g.graded_piece(j).len()).collect::<Vec<_>>()
        };
        assert_eq!(dims(&algebra('A', 3, &[1, 3])), vec![1, 4, 5, 4, 1]);
        assert_eq!(dims(&algebra('A', 2, &[1])), vec![2, 4, 2]);
        assert_eq!(dims(&algebra('A', 2, &[1, 2])), vec![1, 2, 2, 2, 1]);
        assert_eq!(dims(&algebra('G', 2, &[1])), vec![2, 1, 2, 4, 2, 1, 2]);
        // nu(E) = nu_1 + nu_2 + nu_3 for A3 crossed at 1 and 3
        let a3 = algebra('A', 3, &[1, 3]);
        assert_eq!(a3.weight_grade(&[2, -3, 5]), Rat::int(4));
    }
}
