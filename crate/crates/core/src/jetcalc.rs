//! Weighted jet modules of `P`-modules.
//!
//! `J^r(V)` is realised on free coordinates: a basis vector is a word
//! `(a_1, ..., a_j)` of `p_+` indices with `j <= r` together with a basis
//! vector of `V`. The first-order module `J^1(V) = V + p_+ (x) V` carries
//!
//! `Z.(v, Z_1 (x) w) = (Z.v, [Z, Z_1] (x) w + Z_1 (x) Z.w + sum_a eta_a (x) [Z, xi_a]_p . v)`
//!
//! and `J^r(V) = V + p_+ (x) J^{r-1}(V)` iterates the same rule with the
//! footpoint of an element being its truncation to words of length `r - 1`.
//! The semi-holonomic jets are exactly the image of the map into
//! `J^1(J^{r-1}(V))` sending `F` to `(trunc F, b (x) F(b ++ .))`; the tests
//! check this against the equaliser of the two projections.
//!
//! An optional cap drops every coordinate whose homogeneity exceeds it. The
//! dropped part is a submodule, so capped jets are quotient modules and all
//! maps below commute with capping.

use crate::gradedla::GradedLieAlgebra;
use crate::linalg::{SparseMat, SparseVec};
use crate::rational::Rat;
use crate::repmod::{p_plus_module, PModule};
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_JET_BUDGET: usize = 20_000;

pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct JetSpace {
    order: usize,
    cap: Option<Rat>,
    base: PModule,
    coords: Vec<(Word, usize)>,
    index: HashMap<(Word, usize), usize>,
    module: PModule,
}

fn within(cap: &Option<Rat>, x: &Rat) -> bool {
    cap.as_ref().is_none_or(|c| x <= c)
}

impl JetSpace {
    /// `J^order(base)`, truncated above homogeneity `cap`.
    pub fn build(g: &GradedLieAlgebra, base: &PModule, order: usize, cap: Option<Rat>) -> JetSpace {
        let ppm = p_plus_module(g);
        let eta: Vec<Rat> = g.p_plus().iter().map(|&a| Rat::int(g.grade(a))).collect();
        Self::build_with(g, base, order, cap, &ppm, &eta)
    }

    fn build_with(
        g: &GradedLieAlgebra,
        base: &PModule,
        order: usize,
        cap: Option<Rat>,
        ppm: &PModule,
        eta: &[Rat],
    ) -> JetSpace {
        let bg = base.grades();
        if order == 0 {
            let keep: Vec<usize> = (0..base.dim()).filter(|&k| within(&cap, &bg[k])).collect();
            let coords: Vec<(Word, usize)> = keep.iter().map(|&k| (vec![], k)).collect();
            let index = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
            return JetSpace { order, cap, base: base.clone(), coords, index, module: base.quotient_onto(&keep) };
        }
        let inner_cap = cap.as_ref().map(|c| c - Rat::ONE);
        let inner = Self::build_with(g, base, order - 1, inner_cap, ppm, eta);
        let mut coords: Vec<(Word, usize)> = Vec::new();
        let mut grades: Vec<Rat> = Vec::new();
        for k in 0..base.dim() {
            if within(&cap, &bg[k]) {
                coords.push((vec![], k));
                grades.push(bg[k].clone());
            }
        }
        for (a, ea) in eta.iter().enumerate() {
            for (i, (u, k)) in inner.coords.iter().enumerate() {
                let h = ea + &inner.module.grades()[i];
                if within(&cap, &h) {
                    let mut w = vec![a];
                    w.extend(u);
                    coords.push((w, *k));
                    grades.push(h);
                }
            }
        }
        let index: HashMap<(Word, usize), usize> = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let n = coords.len();
        let inner_cols: Vec<Vec<SparseVec>> = inner.module.actions().iter().map(|m| m.cols()).collect();
        let base_cols: Vec<Vec<SparseVec>> = base.actions().iter().map(|m| m.cols()).collect();
        let ad_cols: Vec<Vec<SparseVec>> = ppm.actions().iter().map(|m| m.cols()).collect();
        let duals = g.dual_basis_pair();
        let actions = g
            .p_basis()
            .iter()
            .enumerate()
            .map(|(z, &zg)| {
                // [Z, xi_a]_p acting on the inner jets
                let extra: Vec<Option<Vec<SparseVec>>> = duals
                    .xi
                    .iter()
                    .map(|xi| {
                        let y = g.project_p(&g.bracket(&g.element(zg), xi));
                        (!y.is_empty()).then(|| inner.module.action_of(g, &y).cols())
                    })
                    .collect();
                let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
                let push = |entries: &mut Vec<(usize, usize, Rat)>, w: Word, k: usize, src: usize, v: Rat| {
                    if let Some(&t) = index.get(&(w, k)) {
                        entries.push((t, src, v));
                    }
                };
                for (src, (w, k)) in coords.iter().enumerate() {
                    if w.is_empty() {
                        for (k2, v) in &base_cols[z][*k] {
                            push(&mut entries, vec![], *k2, src, v.clone());
                        }
                    } else {
                        let (b, u) = (w[0], &w[1..]);
                        for (a, v) in &ad_cols[z][b] {
                            let mut w2 = vec![*a];
                            w2.extend(u);
                            push(&mut entries, w2, *k, src, v.clone());
                        }
                        if let Some(&ui) = inner.index.get(&(u.to_vec(), *k)) {
                            for (t, v) in &inner_cols[z][ui] {
                                let (u2, k2) = &inner.coords[*t];
                                let mut w2 = vec![b];
                                w2.extend(u2);
                                push(&mut entries, w2, *k2, src, v.clone());
                            }
                        }
                    }
                    // footpoint term
                    if w.len() < order {
                        if let Some(&xi) = inner.index.get(&(w.clone(), *k)) {
                            for (a, cols) in extra.iter().enumerate() {
                                let Some(cols) = cols else { continue };
                                for (t, v) in &cols[xi] {
                                    let (u2, k2) = &inner.coords[*t];
                                    let mut w2 = vec![a];
                                    w2.extend(u2);
                                    push(&mut entries, w2, *k2, src, v.clone());
                                }
                            }
                        }
                    }
                }
                SparseMat::from_entries(n, n, entries)
            })
            .collect();
        JetSpace { order, cap, base: base.clone(), coords, index, module: PModule::new(grades, actions) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cap(&self) -> Option<&Rat> {
        self.cap.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn base(&self) -> &PModule {
        &self.base
    }

    pub fn module(&self) -> &PModule {
        &self.module
    }

    pub fn coords(&self) -> &[(Word, usize)] {
        &self.coords
    }

    pub fn index_of(&self, word: &[usize], k: usize) -> Option<usize> {
        self.index.get(&(word.to_vec(), k)).copied()
    }

    /// Truncation to a lower order jet space over the same base and cap.
    pub fn truncation_to(&self, lower: &JetSpace) -> SparseMat {
        SparseMat::from_entries(
            lower.dim(),
            self.dim(),
            self.coords
                .iter()
                .enumerate()
                .filter_map(|(i, (w, k))| lower.index_of(w, *k).map(|t| (t, i, Rat::ONE))),
        )
    }

    /// The map `F -> (trunc F, b (x) F(b ++ .))` into `J^1` of the lower space.
    pub fn embedding_into_first_jets(&self, lower: &JetSpace, jet1: &JetSpace) -> SparseMat {
        let mut entries = Vec::new();
        for (i, (w, k)) in self.coords.iter().enumerate() {
            if let Some(y) = lower.index_of(w, *k) {
                if let Some(t) = jet1.index_of(&[], y) {
                    entries.push((t, i, Rat::ONE));
                }
            }
            if let Some((&b, u)) = w.split_first() {
                if let Some(y) = lower.index_of(u, *k) {
                    if let Some(t) = jet1.index_of(&[b], y) {
                        entries.push((t, i, Rat::ONE));
                    }
                }
            }
        }
        SparseMat::from_entries(jet1.dim(), self.dim(), entries)
    }

    /// `J^{k+1}(X) -> J^k(J^1 X)`, moving the last letter of each word into the
    /// first-jet factor. `outer` is `J^k` over the module of `jet1 = J^1(X)`.
    pub fn embedding_into_jets_of_first_jets(&self, jet1: &JetSpace, outer: &JetSpace) -> SparseMat {
        let mut entries = Vec::new();
        for (i, (w, k)) in self.coords.iter().enumerate() {
            // (u, (0, x)) with u = w
            if let Some(x) = jet1.index_of(&[], *k) {
                if let Some(t) = outer.index_of(w, x) {
                    entries.push((t, i, Rat::ONE));
                }
            }
            // (u, (c, x)) with w = u ++ [c]
            if let Some((&c, u)) = w.split_last() {
                if let Some(x) = jet1.index_of(&[c], *k) {
                    if let Some(t) = outer.index_of(u, x) {
                        entries.push((t, i, Rat::ONE));
                    }
                }
            }
        }
        SparseMat::from_entries(outer.dim(), self.dim(), entries)
    }

    /// `J^r(f)` for a homogeneous linear map between the bases of two jet spaces.
    pub fn jet_of_map(&self, target: &JetSpace, f: &SparseMat) -> SparseMat {
        assert_eq!(f.ncols(), self.base.dim(), "map does not start at the base module");
        assert_eq!(f.nrows(), target.base.dim(), "map does not end at the target base");
        let cols = f.cols();
        let mut entries = Vec::new();
        for (i, (w, k)) in self.coords.iter().enumerate() {
            for (k2, v) in &cols[*k] {
                match target.index_of(w, *k2) {
                    Some(t) => entries.push((t, i, v.clone())),
                    None => assert!(
                        target.cap.is_some(),
                        "image coordinate missing from an uncapped target"
                    ),
                }
            }
        }
        SparseMat::from_entries(target.dim(), self.dim(), entries)
    }

    /// Coordinates whose word has the given length.
    pub fn coords_of_length(&self, len: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.coords[i].0.len() == len).collect()
    }
}

/// Number of jet coordinates per homogeneity, keyed by offset from a reference
/// grade, computed without building the space.
pub type GradeProfile = BTreeMap<i64, usize>;

/// Profile of `J^order` of a module with the given profile, dropping offsets above `cap`.
pub fn jet_profile(base: &GradeProfile, eta_grades: &[i64], order: usize, cap: Option<i64>) -> GradeProfile {
    let fits = |x: i64| cap.is_none_or(|c| x <= c);
    let mut out: GradeProfile = base.iter().filter(|(g, _)| fits(**g)).map(|(g, c)| (*g, *c)).collect();
    let mut layer = out.clone();
    for _ in 0..order {
        let mut next = GradeProfile::new();
        for (g, c) in &layer {
            for e in eta_grades {
                if fits(g + e) {
                    let slot = next.entry(g + e).or_insert(0);
                    *slot = slot.saturating_add(*c);
                }
            }
        }
        for (g, c) in &next {
            let slot = out.entry(*g).or_insert(0);
            *slot = slot.saturating_add(*c);
        }
        layer = next;
    }
    out
}

pub fn profile_dim(p: &GradeProfile) -> usize {
    p.values().fold(0usize, |a, b| a.saturating_add(*b))
}

/// Uncapped `J^1(V)`.
pub fn jet1(g: &GradedLieAlgebra, v: &PModule) -> JetSpace {
    JetSpace::build(g, v, 1, None)
}

/// `J^1(f)` for `f: X -> Y`.
pub fn jet1_of_map(g: &GradedLieAlgebra, x: &PModule, y: &PModule, f: &SparseMat) -> SparseMat {
    jet1(g, x).jet_of_map(&jet1(g, y), f)
}

/// `J^r(V)` together with its realisation inside `J^1(J^{r-1}(V))`.
#[derive(Clone, Debug)]
pub struct SemiHolonomicJet {
    pub space: JetSpace,
    pub lower: JetSpace,
    pub first_jets_of_lower: JetSpace,
    pub embedding: SparseMat,
}

pub fn semiholonomic(g: &GradedLieAlgebra, v: &PModule, r: usize, cap: Option<Rat>) -> SemiHolonomicJet {
    assert!(r >= 1, "semi-holonomic jets start at order 1");
    let space = JetSpace::build(g, v, r, cap.clone());
    let lower = JetSpace::build(g, v, r - 1, cap.clone());
    let first_jets_of_lower = JetSpace::build(g, lower.module(), 1, cap);
    let embedding = space.embedding_into_first_jets(&lower, &first_jets_of_lower);
    SemiHolonomicJet { space, lower, first_jets_of_lower, embedding }
}

impl SemiHolonomicJet {
    /// The two maps `J^1(J^{r-1}) -> J^1(J^{r-2})` whose equaliser is `J^r`:
    /// the footpoint followed by the inclusion of `J^{r-1}`, and `J^1` of the
    /// footpoint of `J^{r-1}`.
    pub fn projections(&self, g: &GradedLieAlgebra) -> (SparseMat, SparseMat) {
        let r = self.space.order();
        assert!(r >= 2, "the equaliser description needs order at least 2");
        let cap = self.space.cap().cloned();
        let lower2 = JetSpace::build(g, self.space.base(), r - 2, cap.clone());
        let jet1_lower2 = JetSpace::build(g, lower2.module(), 1, cap);
        let footpoint = self.first_jets_of_lower.truncation_to(&JetSpace::build(g, self.lower.module(), 0, self.space.cap().cloned()));
        let incl = self.lower.embedding_into_first_jets(&lower2, &jet1_lower2);
        let first = incl.mul(&footpoint);
        let trunc = self.lower.truncation_to(&lower2);
        let second = self.first_jets_of_lower.jet_of_map(&jet1_lower2, &trunc);
        (first, second)
    }
}

/// Witness that a linear map commutes with the action of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceCertificate {
    pub generators_checked: usize,
}

/// First generator of `g_0 + g_1` that fails to commute, with its residual norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub generator: usize,
    pub residual_nnz: usize,
}

/// Checks `f A_src(Z) = A_dst(Z) f` for `Z` running over a basis of `g_0 + g_1`,
/// optionally only on a subspace of the source (given by basis columns).
pub fn check_equivariance(
    g: &GradedLieAlgebra,
    f: &SparseMat,
    src: &PModule,
    dst: &PModule,
    on: Option<&SparseMat>,
) -> Result<EquivarianceCertificate, EquivarianceFailure> {
    assert_eq!(f.shape(), (dst.dim(), src.dim()), "map shape does not match the modules");
    let mut checked = 0;
    for (k, &a) in g.p_basis().iter().enumerate() {
        if g.grade(a) > 1 {
            continue;
        }
        let mut res = f.mul(src.action(k)).sub(&dst.action(k).mul(f));
        if let Some(b) = on {
            res = res.mul(b);
        }
        if !res.is_zero() {
            return Err(EquivarianceFailure { generator: a, residual_nnz: res.nnz() });
        }
        checked += 1;
    }
    Ok(EquivarianceCertificate { generators_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{build_irrep, restrict_to_parabolic};
    use crate::rootspace::{CartanMatrix, ParabolicSpec};

    fn algebra(s: char, n: usize, nodes: &[usize]) -> GradedLieAlgebra {
        let c = CartanMatrix::of_type(s, n).unwrap();
        GradedLieAlgebra::new(&c, &ParabolicSpec::new(&c, nodes).unwrap()).unwrap()
    }

    fn module(g: &GradedLieAlgebra, lam: &[i64]) -> PModule {
        restrict_to_parabolic(g, &build_irrep(g, lam, 500).unwrap())
    }

    #[test]
    fn jets_are_p_modules_with_expected_dims() {
        for (g, lam) in [(algebra('A', 1, &[1]), vec![1]), (algebra('A', 2, &[1, 2]), vec![0, 0]), (algebra('A', 2, &[1]), vec![1, 0])] {
            let v = module(&g, &lam);
            let np = g.p_plus().len();
            for r in 0..=2 {
                let j = JetSpace::build(&g, &v, r, None);
                let expected: usize = (0..=r).map(|k| np.pow(k as u32)).sum::<usize>() * v.dim();
                assert_eq!(j.dim(), expected);
                assert!(j.module().is_p_module(&g), "J^{r}");
            }
        }
    }

    #[test]
    fn capped_jets_are_quotients() {
        let g = algebra('A', 2, &[1, 2]);
        let v = module(&g, &[1, 0]);
        let full = JetSpace::build(&g, &v, 3, None);
        let cap = Rat::int(2);
        let capped = JetSpace::build(&g, &v, 3, Some(cap.clone()));
        assert!(capped.module().is_p_module(&g));
        let proj = full.truncation_to(&capped);
        assert!(check_equivariance(&g, &proj, full.module(), capped.module(), None).is_ok());
    }

    #[test]
    fn semiholonomic_embedding_is_the_equaliser() {
        for (g, lam, cap) in [
            (algebra('A', 1, &[1]), vec![2], None),
            (algebra('A', 2, &[1, 2]), vec![0, 0], None),
            (algebra('A', 2, &[1]), vec![0, 1], Some(Rat::int(2))),
            (algebra('A', 3, &[1, 3]), vec![0, 0, 0], Some(Rat::int(2))),
        ] {
            let v = module(&g, &lam);
            for r in 2..=3 {
                let sh = semiholonomic(&g, &v, r, cap.clone());
                let emb = &sh.embedding;
                assert_eq!(emb.rank(), sh.space.dim());
                // the embedding intertwines the actions
                assert!(check_equivariance(&g, emb, sh.space.module(), sh.first_jets_of_lower.module(), None).is_ok());
                let (p1, p2) = sh.projections(&g);
                assert!(p1.mul(emb).sub(&p2.mul(emb)).is_zero());
                // and its image is the whole equaliser
                let eq = p1.sub(&p2).kernel();
                assert_eq!(eq.ncols(), sh.space.dim(), "r = {r}");
            }
        }
    }

    #[test]
    fn inner_embedding_is_equivariant() {
        let g = algebra('A', 2, &[1, 2]);
        let v = module(&g, &[1, 0]);
        let cap = Some(Rat::int(3));
        for k in 0..=2 {
            let big = JetSpace::build(&g, &v, k + 1, cap.clone());
            let j1 = JetSpace::build(&g, &v, 1, cap.clone());
            let outer = JetSpace::build(&g, j1.module(), k, cap.clone());
            let m = big.embedding_into_jets_of_first_jets(&j1, &outer);
            assert_eq!(m.rank(), big.dim());
            assert!(check_equivariance(&g, &m, big.module(), outer.module(), None).is_ok());
        }
    }

    #[test]
    fn profile_matches_built_spaces() {
        let g = algebra('A', 3, &[1, 3]);
        let v = module(&g, &[1, 0, 0]);
        let eta: Vec<i64> = g.p_plus().iter().map(|&a| g.grade(a)).collect();
        let lowest = v.grades().iter().min().unwrap().clone();
        let mut base = GradeProfile::new();
        for x in v.grades() {
            *base.entry((x - &lowest).to_i64().unwrap()).or_insert(0) += 1;
        }
        for (order, cap) in [(1, None), (2, Some(2)), (3, Some(3))] {
            let built = JetSpace::build(&g, &v, order, cap.map(|c| &lowest + Rat::int(c)));
            assert_eq!(profile_dim(&jet_profile(&base, &eta, order, cap)), built.dim());
        }
    }

    #[test]
    fn jet_functor_respects_composition() {
        let g = algebra('A', 1, &[1]);
        let v = module(&g, &[2]);
        let j2 = JetSpace::build(&g, &v, 2, None);
        let scale = SparseMat::scalar(v.dim(), &Rat::int(3));
        let f = j2.jet_of_map(&j2, &scale);
        assert_eq!(f, SparseMat::scalar(j2.dim(), &Rat::int(3)));
        let j1 = jet1(&g, &v);
        assert_eq!(jet1_of_map(&g, &v, &v, &SparseMat::identity(v.dim())), SparseMat::identity(j1.dim()));
    }
}
