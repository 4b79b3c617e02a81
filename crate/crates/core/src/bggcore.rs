//! Splitting operators and the BGG sequence of a `g`-module.
//!
//! For an irreducible piece `E_0` of `H^n` (in harmonic representatives) we
//! take the `P`-submodule `E` of the cochains it generates, graded as
//! `E_0 + E_1 + ... + E_r` by homogeneity. The maps
//!
//! `L_i(e, Z (x) f) = j_i(e) - (n+1) box^{-1} del*((Z ^ f)_i)`
//!
//! from `J^1(E/E^i)` to `E/E^{i+1}` prolong and compose to a `P`-homomorphism
//! `L` from semi-holonomic jets of `E/E^1` to `E`, and the BGG operator is
//! the harmonic part of the twisted differential applied to `J^1(L)`.
//!
//! Everything is homogeneous, so a target of homogeneity `h` only sees jet
//! coordinates up to `h`; the jet spaces are built with that cap.

use crate::error::{BggError, Result};
use crate::gradedla::GradedLieAlgebra;
use crate::hodge::{CochainComplex, CohomologyComponent};
use crate::jetcalc::{check_equivariance, jet_profile, profile_dim, GradeProfile, JetSpace, DEFAULT_JET_BUDGET};
use crate::linalg::{Coordinates, Echelon, SparseMat, SparseVec};
use crate::rational::Rat;
use crate::repmod::{build_irrep, GModule, IrrepLabel, PModule, DEFAULT_MODULE_BUDGET};
use crate::rootspace::{CartanMatrix, ParabolicSpec, Weight};
use std::collections::HashMap;

/// The `P`-submodule of `C^n` generated by one cohomology component.
#[derive(Clone, Debug)]
pub struct GeneratedSubmodule {
    component: CohomologyComponent,
    base_grade: Rat,
    basis: SparseMat,
    offsets: Vec<usize>,
    module: PModule,
    block_coords: Vec<Coordinates>,
    laplacian: Vec<SparseMat>,
    laplacian_inv: Vec<SparseMat>,
    // -(n+1) box^{-1} del*(eta_a ^ f_k) in E coordinates, keyed by (a, k)
    corrections: HashMap<(usize, usize), SparseVec>,
    del_cols: Vec<SparseVec>,
    wedge_cols: Vec<Vec<SparseVec>>,
}

fn grade1_positions(g: &GradedLieAlgebra) -> Vec<usize> {
    g.p_basis().iter().enumerate().filter(|(_, &a)| g.grade(a) == 1).map(|(k, _)| k).collect()
}

/// Positions in `p_basis` of a generating set of `p`: `g_0` and `g_1`.
fn generator_positions(g: &GradedLieAlgebra) -> Vec<usize> {
    g.p_basis().iter().enumerate().filter(|(_, &a)| g.grade(a) <= 1).map(|(k, _)| k).collect()
}

fn eta_grades(g: &GradedLieAlgebra) -> Vec<i64> {
    g.p_plus().iter().map(|&a| g.grade(a)).collect()
}

pub fn generate_submodule(
    g: &GradedLieAlgebra,
    cc: &CochainComplex,
    component: &CohomologyComponent,
) -> Result<GeneratedSubmodule> {
    let n = component.level;
    let cn = cc.module(n);
    let g1 = grade1_positions(g);
    let mut blocks = vec![component.harmonic_basis.clone()];
    loop {
        let last = blocks.last().unwrap();
        let images: Vec<SparseMat> = g1.iter().map(|&k| cn.action(k).mul(last)).collect();
        let next = SparseMat::hstack(&images.iter().collect::<Vec<_>>()).column_space();
        if next.ncols() == 0 {
            break;
        }
        blocks.push(next);
    }
    let base_grade = {
        let col = component.harmonic_basis.col(0);
        cn.grades()[col[0].0].clone()
    };
    let mut offsets = vec![0];
    for b in &blocks {
        offsets.push(offsets.last().unwrap() + b.ncols());
    }
    let basis = SparseMat::hstack(&blocks.iter().collect::<Vec<_>>());
    let module = cn.restrict(&basis)?;
    let block_coords: Vec<Coordinates> = blocks.iter().map(Coordinates::new).collect();
    let mut laplacian = Vec::new();
    let mut laplacian_inv = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let s = block_coords[i]
            .coords_of_cols(&cc.laplacian(n).mul(b))
            .ok_or(BggError::SingularLaplacianBlock(i))?;
        if i == 0 {
            if !s.is_zero() {
                return Err(BggError::CertificationFailure("component is not harmonic".into()));
            }
            laplacian_inv.push(SparseMat::zeros(b.ncols(), b.ncols()));
        } else {
            laplacian_inv.push(s.inverse().ok_or(BggError::SingularLaplacianBlock(i))?);
        }
        laplacian.push(s);
    }
    let mut gs = GeneratedSubmodule {
        component: component.clone(),
        base_grade,
        basis,
        offsets,
        module,
        block_coords,
        laplacian,
        laplacian_inv,
        corrections: HashMap::new(),
        del_cols: Vec::new(),
        wedge_cols: Vec::new(),
    };
    if n < cc.top() {
        gs.del_cols = cc.del(n).mul(&gs.basis).cols();
        gs.wedge_cols = (0..g.p_plus().len()).map(|a| cc.wedge_matrix(a, n).mul(&gs.basis).cols()).collect();
        gs.corrections = gs.build_corrections(g, cc)?;
    }
    Ok(gs)
}

impl GeneratedSubmodule {
    fn build_corrections(&self, g: &GradedLieAlgebra, cc: &CochainComplex) -> Result<HashMap<(usize, usize), SparseVec>> {
        let n = self.level();
        let factor = -Rat::int(n as i64 + 1);
        let mut out = HashMap::new();
        for (a, eg) in eta_grades(g).into_iter().enumerate() {
            for k in 0..self.dim() {
                let i = self.block_of(k) + eg as usize;
                if i > self.r() {
                    continue;
                }
                let v = cc.codel(n).mul_vec(&self.wedge_cols[a][k]);
                let c = self.block_coords[i].coords(&v).ok_or_else(|| {
                    BggError::CertificationFailure("codifferential of a wedge leaves the generated submodule".into())
                })?;
                let y = self.laplacian_inv[i].mul_vec(&c);
                let lifted: SparseVec = y.into_iter().map(|(t, x)| (self.offsets[i] + t, &factor * &x)).collect();
                out.insert((a, k), lifted);
            }
        }
        Ok(out)
    }

    pub fn component(&self) -> &CohomologyComponent {
        &self.component
    }

    pub fn level(&self) -> usize {
        self.component.level
    }

    /// Homogeneity of the generating component.
    pub fn base_grade(&self) -> &Rat {
        &self.base_grade
    }

    /// Number of homogeneity steps above the generating component.
    pub fn r(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Basis of `E` in cochain coordinates, grouped by homogeneity.
    pub fn basis(&self) -> &SparseMat {
        &self.basis
    }

    pub fn module(&self) -> &PModule {
        &self.module
    }

    fn block_of(&self, k: usize) -> usize {
        self.offsets.partition_point(|&o| o <= k) - 1
    }

    /// `dim E/E^i`; the first `i` blocks.
    pub fn quotient_dim(&self, i: usize) -> usize {
        self.offsets[i.min(self.r() + 1)]
    }

    /// `E/E^i` as a `P`-module.
    pub fn quotient(&self, i: usize) -> PModule {
        let keep: Vec<usize> = (0..self.quotient_dim(i)).collect();
        self.module.quotient_onto(&keep)
    }

    /// `E/E^j -> E/E^i` for `i <= j`.
    pub fn projection(&self, j: usize, i: usize) -> SparseMat {
        let (dj, di) = (self.quotient_dim(j), self.quotient_dim(i));
        assert!(di <= dj, "projections go down the filtration");
        SparseMat::from_entries(di, dj, (0..di).map(|k| (k, k, Rat::ONE)))
    }

    /// The degree-preserving inclusion `E/E^i -> E/E^{i+1}`; not equivariant.
    pub fn inclusion(&self, i: usize) -> SparseMat {
        self.projection(i + 1, i).transpose()
    }

    /// Cochains represented by `E/E^i`, using the homogeneous splitting.
    pub fn lift(&self, i: usize) -> SparseMat {
        self.basis.select_cols(&(0..self.quotient_dim(i)).collect::<Vec<_>>())
    }

    /// The Laplacian on `E/E^i`, block diagonal by homogeneity.
    pub fn laplacian_on(&self, i: usize) -> SparseMat {
        let q = i.min(self.r() + 1);
        SparseMat::direct_sum(&self.laplacian[..q].iter().collect::<Vec<_>>())
    }

    /// Inverse of the Laplacian on the blocks above the first, zero on the first.
    pub fn laplacian_inverse_on(&self, i: usize) -> SparseMat {
        let q = i.min(self.r() + 1);
        SparseMat::direct_sum(&self.laplacian_inv[..q].iter().collect::<Vec<_>>())
    }

    /// `E` lies in `ker del*` and everything above the first block in `im del*`.
    pub fn check_codifferential_containments(&self, cc: &CochainComplex) -> (bool, bool) {
        let n = self.level();
        let in_kernel = n == 0 || cc.codel(n - 1).mul(&self.basis).is_zero();
        let upper = self.basis.select_cols(&(self.offsets[1]..self.dim()).collect::<Vec<_>>());
        if n == cc.top() {
            return (in_kernel, upper.ncols() == 0);
        }
        let image = cc.codel(n).column_space();
        let rank = image.ncols();
        let in_image = SparseMat::hstack(&[&image, &upper]).rank() == rank;
        (in_kernel, in_image)
    }

    /// Grade profile of `E/E^i` as offsets from the base grade.
    pub fn profile(&self, i: usize) -> GradeProfile {
        let mut p = GradeProfile::new();
        for (b, d) in self.block_dims().into_iter().enumerate().take(i) {
            *p.entry(b as i64).or_insert(0) += d;
        }
        p
    }

    /// `L_i` on the given (possibly capped) first jets of `E/E^i`, valued in `E/E^{i+1}`.
    pub fn splitting_map(&self, i: usize, jet1: &JetSpace) -> SparseMat {
        assert!(i >= 1 && i <= self.r(), "splitting maps are indexed 1..=r");
        assert_eq!(jet1.base().dim(), self.quotient_dim(i), "jets over the wrong quotient");
        let mut entries = Vec::new();
        for (col, (w, k)) in jet1.coords().iter().enumerate() {
            match w.as_slice() {
                [] => entries.push((*k, col, Rat::ONE)),
                [a] => {
                    if let Some(v) = self.corrections.get(&(*a, *k)) {
                        if v.first().is_some_and(|(t, _)| self.block_of(*t) == i) {
                            entries.extend(v.iter().map(|(t, x)| (*t, col, x.clone())));
                        }
                    }
                }
                _ => panic!("not a first jet space"),
            }
        }
        SparseMat::from_entries(self.quotient_dim(i + 1), jet1.dim(), entries)
    }

    /// `(f_0, Z (x) f_1) -> del f_0 + (n+1) Z ^ f_1` on first jets of an
    /// order-zero jet space over a quotient of `E`.
    fn twisted_differential_on(&self, cc: &CochainComplex, footpoints: &JetSpace, jet1: &JetSpace) -> SparseMat {
        let n = self.level();
        let factor = Rat::int(n as i64 + 1);
        let rows = cc.dim(n + 1);
        let cols: Vec<SparseVec> = jet1
            .coords()
            .iter()
            .map(|(w, y)| {
                let k = footpoints.coords()[*y].1;
                match w.as_slice() {
                    [] => self.del_cols[k].clone(),
                    [a] => self.wedge_cols[*a][k].iter().map(|(t, x)| (*t, &factor * x)).collect(),
                    _ => unreachable!(),
                }
            })
            .collect();
        SparseMat::from_cols(rows, &cols)
    }
}

/// `(f_0, Z (x) f_1) -> del f_0 + (n+1) Z ^ f_1` on `J^1(C^n)`.
pub fn twisted_differential(g: &GradedLieAlgebra, cc: &CochainComplex, n: usize) -> (JetSpace, SparseMat) {
    assert!(n < cc.top(), "no twisted differential out of the top degree");
    let jet = JetSpace::build(g, cc.module(n), 1, None);
    let del = cc.del(n);
    let wedges: Vec<SparseMat> = (0..g.p_plus().len()).map(|a| cc.wedge_matrix(a, n)).collect();
    let factor = Rat::int(n as i64 + 1);
    let cols: Vec<SparseVec> = jet
        .coords()
        .iter()
        .map(|(w, k)| match w.as_slice() {
            [] => del.col(*k),
            [a] => wedges[*a].col(*k).into_iter().map(|(t, x)| (t, &factor * &x)).collect(),
            _ => unreachable!(),
        })
        .collect();
    let m = SparseMat::from_cols(cc.dim(n + 1), &cols);
    (jet, m)
}

/// The composite splitting operator on capped semi-holonomic jets.
#[derive(Clone, Debug)]
pub struct Splitter {
    /// `J^s(E/E^1)`
    pub source: JetSpace,
    /// `E/E^{s+1}` as an order-zero jet space with the same cap
    pub target: JetSpace,
    pub map: SparseMat,
}

impl Splitter {
    pub fn length(&self) -> usize {
        self.source.order()
    }
}

/// `L_s o J^1(L_{s-1}) o ... o J^{s-1}(L_1)`, cut off above `cap`.
pub fn compose_splitter(g: &GradedLieAlgebra, gs: &GeneratedSubmodule, s: usize, cap: Option<Rat>) -> Splitter {
    assert!(s <= gs.r(), "the composite has at most r factors");
    let source = JetSpace::build(g, &gs.quotient(1), s, cap.clone());
    let mut space = source.clone();
    let mut map = SparseMat::identity(source.dim());
    for i in 1..=s {
        let j1 = JetSpace::build(g, &gs.quotient(i), 1, cap.clone());
        let outer = JetSpace::build(g, j1.module(), s - i, cap.clone());
        let inner = space.embedding_into_jets_of_first_jets(&j1, &outer);
        let li = gs.splitting_map(i, &j1);
        let next = JetSpace::build(g, &gs.quotient(i + 1), s - i, cap.clone());
        map = outer.jet_of_map(&next, &li).mul(&inner).mul(&map);
        space = next;
    }
    Splitter { source, target: space, map }
}

/// Largest jet space the operator pipeline builds for a given length and cap offset.
fn pipeline_dim(gs: &GeneratedSubmodule, eta: &[i64], s: usize, cap: i64) -> usize {
    let mut worst = profile_dim(&jet_profile(&gs.profile(1), eta, s + 1, Some(cap)));
    let src = jet_profile(&gs.profile(1), eta, s, Some(cap));
    worst = worst.max(profile_dim(&jet_profile(&src, eta, 1, Some(cap))));
    for i in 1..=s {
        let j1 = jet_profile(&gs.profile(i), eta, 1, Some(cap));
        worst = worst.max(profile_dim(&jet_profile(&j1, eta, s - i, Some(cap))));
    }
    let top = jet_profile(&gs.profile(s + 1), eta, 0, Some(cap));
    worst.max(profile_dim(&jet_profile(&top, eta, 1, Some(cap))))
}

/// One nonzero block of a BGG operator.
#[derive(Clone, Debug)]
pub struct OperatorBlock {
    pub target: usize,
    pub order: i64,
    /// rows: harmonic coordinates of the target component
    pub block: SparseMat,
}

/// `pi_H o d_V o J^1(L)` out of one component, restricted to the targets it can reach.
#[derive(Clone, Debug)]
pub struct BggOperator {
    pub source_jets: JetSpace,
    pub splitter: Option<Splitter>,
    /// `d_V o J^1(L)` in cochain coordinates of the next degree
    pub values: SparseMat,
    pub blocks: Vec<OperatorBlock>,
    /// targets whose blocks were computed (zero or not)
    pub decided: Vec<usize>,
    /// targets left out because the jets they need exceed the budget
    pub undecided: Vec<usize>,
}

/// Difference of homogeneities; the order of any operator between the two.
pub fn operator_order(source: &CohomologyComponent, target: &CohomologyComponent) -> Result<Rat> {
    if target.level != source.level + 1 {
        return Err(BggError::NonAdjacentLevels { from: source.level, to: target.level });
    }
    Ok(target.e_eigenvalue() - source.e_eigenvalue())
}

pub fn bgg_operator(
    g: &GradedLieAlgebra,
    cc: &CochainComplex,
    gs: &GeneratedSubmodule,
    targets: &[CohomologyComponent],
    jet_budget: usize,
) -> Result<BggOperator> {
    let n = gs.level();
    let eta = eta_grades(g);
    let mut candidates: Vec<(i64, usize)> = Vec::new();
    for (t, comp) in targets.iter().enumerate() {
        let d = operator_order(gs.component(), comp)?;
        if let Some(d) = d.to_i64().filter(|&d| d >= 1) {
            candidates.push((d, t));
        }
    }
    candidates.sort();
    let feasible = |m: i64| pipeline_dim(gs, &eta, gs.r().min(m as usize), m) <= jet_budget;
    let mut max_order = candidates.last().map_or(0, |c| c.0);
    while max_order > 0 && !feasible(max_order) {
        max_order -= 1;
    }
    let decided: Vec<usize> = candidates.iter().filter(|c| c.0 <= max_order).map(|c| c.1).collect();
    let undecided: Vec<usize> = candidates.iter().filter(|c| c.0 > max_order).map(|c| c.1).collect();
    if decided.is_empty() {
        let source_jets = JetSpace::build(g, &gs.quotient(1), 0, None);
        let values = SparseMat::zeros(if n < cc.top() { cc.dim(n + 1) } else { 0 }, source_jets.dim());
        return Ok(BggOperator { source_jets, splitter: None, values, blocks: vec![], decided, undecided });
    }
    let s = gs.r().min(max_order as usize);
    let cap = Some(gs.base_grade() + Rat::int(max_order));
    let splitter = compose_splitter(g, gs, s, cap.clone());
    let source_jets = JetSpace::build(g, &gs.quotient(1), s + 1, cap.clone());
    let jet_of_source = JetSpace::build(g, splitter.source.module(), 1, cap.clone());
    let outer = source_jets.embedding_into_first_jets(&splitter.source, &jet_of_source);
    let jet_of_target = JetSpace::build(g, splitter.target.module(), 1, cap);
    let prolonged = jet_of_source.jet_of_map(&jet_of_target, &splitter.map);
    let dv = gs.twisted_differential_on(cc, &splitter.target, &jet_of_target);
    let values = dv.mul(&prolonged).mul(&outer);
    let harmonic = SparseMat::hstack(&targets.iter().map(|t| &t.harmonic_basis).collect::<Vec<_>>());
    let coords = cc.harmonic_projector(n + 1, &harmonic).mul(&values);
    let mut start = 0;
    let mut blocks = Vec::new();
    for (t, comp) in targets.iter().enumerate() {
        let rows: Vec<usize> = (start..start + comp.dim()).collect();
        start += comp.dim();
        if !decided.contains(&t) {
            continue;
        }
        let block = coords.select_rows(&rows);
        if !block.is_zero() {
            let order = operator_order(gs.component(), comp)?.to_i64().unwrap();
            blocks.push(OperatorBlock { target: t, order, block });
        }
    }
    Ok(BggOperator { source_jets, splitter: Some(splitter), values, blocks, decided, undecided })
}

/// `p`-module structure on a sum of cohomology components (with `p_+` acting by zero).
fn harmonic_module(g: &GradedLieAlgebra, cc: &CochainComplex, comps: &[&CohomologyComponent]) -> (SparseMat, PModule) {
    let n = comps[0].level;
    let h = SparseMat::hstack(&comps.iter().map(|c| &c.harmonic_basis).collect::<Vec<_>>());
    let proj = cc.harmonic_projector(n, &h);
    let grades = comps.iter().flat_map(|c| std::iter::repeat_n(c.e_eigenvalue().clone(), c.dim())).collect();
    let actions = g
        .p_basis()
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            if g.grade(a) > 0 {
                SparseMat::zeros(h.ncols(), h.ncols())
            } else {
                proj.mul(&cc.module(n).action(k).mul(&h))
            }
        })
        .collect();
    (proj, PModule::new(grades, actions))
}

/// Named pass/fail results of the identities checked on an operator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorChecks {
    pub values_in_kernel_of_codifferential: bool,
    pub splits_harmonic_projection: bool,
    pub splitter_equivariant: bool,
    pub operator_equivariant: bool,
    pub positive_orders: bool,
}

impl OperatorChecks {
    pub fn all(&self) -> bool {
        self.values_in_kernel_of_codifferential
            && self.splits_harmonic_projection
            && self.splitter_equivariant
            && self.operator_equivariant
            && self.positive_orders
    }
}

pub fn check_operator(
    g: &GradedLieAlgebra,
    cc: &CochainComplex,
    gs: &GeneratedSubmodule,
    targets: &[CohomologyComponent],
    op: &BggOperator,
) -> OperatorChecks {
    let n = gs.level();
    let Some(sp) = &op.splitter else {
        return OperatorChecks {
            values_in_kernel_of_codifferential: true,
            splits_harmonic_projection: true,
            splitter_equivariant: true,
            operator_equivariant: true,
            positive_orders: true,
        };
    };
    let values_in_kernel_of_codifferential = cc.codel(n).mul(&op.values).is_zero();
    let lifted = gs.lift(gs.r() + 1).select_cols(&sp.target.coords().iter().map(|c| c.1).collect::<Vec<_>>());
    let harmonic = cc.harmonic_projector(n, &gs.component().harmonic_basis).mul(&lifted).mul(&sp.map);
    let footpoint = SparseMat::from_entries(
        gs.quotient_dim(1),
        sp.source.dim(),
        sp.source.coords().iter().enumerate().filter(|(_, c)| c.0.is_empty()).map(|(i, c)| (c.1, i, Rat::ONE)),
    );
    let splits_harmonic_projection = harmonic == footpoint;
    let splitter_equivariant = check_equivariance(g, &sp.map, sp.source.module(), sp.target.module(), None).is_ok();
    let decided: Vec<&CohomologyComponent> = op.decided.iter().map(|&t| &targets[t]).collect();
    let (proj, target_module) = harmonic_module(g, cc, &decided);
    let operator = proj.mul(&op.values);
    let operator_equivariant =
        check_equivariance(g, &operator, op.source_jets.module(), &target_module, None).is_ok();
    let positive_orders = op.blocks.iter().all(|b| b.order >= 1);
    OperatorChecks {
        values_in_kernel_of_codifferential,
        splits_harmonic_projection,
        splitter_equivariant,
        operator_equivariant,
        positive_orders,
    }
}

/// Whether every row of `m` lies in the row space of `constraints`, i.e. `m`
/// vanishes on `ker constraints`.
fn vanishes_on_kernel(constraints: &SparseMat, m: &SparseMat) -> bool {
    assert_eq!(constraints.ncols(), m.ncols());
    let mut e = Echelon::new(constraints.ncols());
    for r in constraints.rows() {
        e.insert(r.clone());
    }
    m.rows().iter().all(|r| e.contains(r))
}

/// Applies constraints on `Y` slot by slot to `J^1(Y)`.
fn constraints_on_first_jets(c: &SparseMat, jet1: &JetSpace) -> SparseMat {
    let slots = 1 + jet1.coords().iter().filter_map(|(w, _)| w.first()).max().map_or(0, |m| m + 1);
    let mut entries = Vec::new();
    let cols = c.transpose();
    for (j, (w, y)) in jet1.coords().iter().enumerate() {
        let slot = w.first().map_or(0, |a| a + 1);
        for (row, x) in cols.row(*y) {
            entries.push((slot * c.nrows() + row, j, x.clone()));
        }
    }
    SparseMat::from_entries(slots * c.nrows(), jet1.dim(), entries)
}

/// Results of the splitter identities for one generated submodule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitterChecks {
    /// `pi o L_i = p_i`
    pub projection: bool,
    /// the `g_1`-equivariance defect of `L_i` matches its closed form
    pub defect: bool,
    /// the constrained first jets are submodules on which `L_i` is equivariant
    pub constrained_jets: bool,
    /// compatibility of footpoints and lower splitters on constrained jets
    pub compatibility: bool,
    /// prolonged splitters map constrained jets into constrained jets
    pub containment: bool,
    /// highest prolongation order checked for the containment
    pub containment_depth: usize,
}

impl SplitterChecks {
    pub fn all(&self) -> bool {
        self.projection && self.defect && self.constrained_jets && self.compatibility && self.containment
    }
}

/// Checks the identities behind the splitting operators, with uncapped jets.
/// Containments are checked for prolongation orders up to `max_depth` while
/// the jets involved stay within `jet_budget`.
pub fn check_splitters(
    g: &GradedLieAlgebra,
    gs: &GeneratedSubmodule,
    max_depth: usize,
    jet_budget: usize,
) -> SplitterChecks {
    let r = gs.r();
    let gens = generator_positions(g);
    let g1 = grade1_positions(g);
    // index i holds data for E/E^i; index 0 unused
    let quotients: Vec<PModule> = (0..=r + 1).map(|i| gs.quotient(i)).collect();
    let j1: Vec<JetSpace> = (0..=r + 1).map(|i| JetSpace::build(g, &quotients[i], 1, None)).collect();
    let foot: Vec<SparseMat> = j1
        .iter()
        .map(|j| {
            SparseMat::from_entries(
                j.base().dim(),
                j.dim(),
                j.coords().iter().enumerate().filter(|(_, c)| c.0.is_empty()).map(|(i, c)| (c.1, i, Rat::ONE)),
            )
        })
        .collect();
    let ls: Vec<SparseMat> =
        (0..=r).map(|i| if i == 0 { SparseMat::zeros(0, 0) } else { gs.splitting_map(i, &j1[i]) }).collect();
    let jpi = |i: usize, k: usize| j1[i].jet_of_map(&j1[k], &gs.projection(i, k));

    let mut out = SplitterChecks { projection: true, defect: true, ..Default::default() };
    for i in 1..=r {
        out.projection &= gs.projection(i + 1, i).mul(&ls[i]) == foot[i];
        for &w in &g1 {
            let lhs = ls[i].mul(j1[i].module().action(w)).sub(&quotients[i + 1].action(w).mul(&ls[i]));
            let ok = if i == 1 {
                lhs.is_zero()
            } else {
                let x = ls[i - 1].mul(&jpi(i, i - 1)).sub(&foot[i]);
                let rhs = gs
                    .laplacian_inverse_on(i + 1)
                    .mul(quotients[i + 1].action(w))
                    .mul(&gs.laplacian_on(i + 1))
                    .mul(&gs.inclusion(i))
                    .mul(&x);
                lhs == rhs
            };
            out.defect &= ok;
        }
    }

    // constraints cutting out the constrained first jets of E/E^i
    let mut cons: Vec<SparseMat> = vec![SparseMat::zeros(0, 0); r + 2];
    cons[1] = SparseMat::zeros(0, j1[1].dim());
    for i in 1..=r {
        let p = jpi(i + 1, i);
        cons[i + 1] = SparseMat::vstack(&[&cons[i].mul(&p), &ls[i].mul(&p).sub(&foot[i + 1])]);
    }
    out.constrained_jets = true;
    out.compatibility = true;
    for i in 1..=r + 1 {
        for &k in &gens {
            let a = j1[i].module().action(k);
            out.constrained_jets &= vanishes_on_kernel(&cons[i], &cons[i].mul(a));
            if i <= r {
                let defect = ls[i].mul(a).sub(&quotients[i + 1].action(k).mul(&ls[i]));
                out.constrained_jets &= vanishes_on_kernel(&cons[i], &defect);
            }
        }
        for k in 1..i {
            let p = jpi(i, k);
            out.compatibility &= vanishes_on_kernel(&cons[i], &cons[k].mul(&p));
            let diff = gs.projection(i, k + 1).mul(&foot[i]).sub(&ls[k].mul(&p));
            out.compatibility &= vanishes_on_kernel(&cons[i], &diff);
        }
    }

    // constraints on higher constrained jets: J^1 of the previous ones, pulled back
    let eta = eta_grades(g);
    let higher = |i: usize, k: usize| -> Option<(JetSpace, SparseMat)> {
        let dim = profile_dim(&jet_profile(&gs.profile(i), &eta, k, None));
        if dim > jet_budget {
            return None;
        }
        let mut space = j1[i].clone();
        let mut c = cons[i].clone();
        for order in 2..=k {
            let next = JetSpace::build(g, &quotients[i], order, None);
            let first = JetSpace::build(g, space.module(), 1, None);
            let emb = next.embedding_into_first_jets(&space, &first);
            c = constraints_on_first_jets(&c, &first).mul(&emb);
            space = next;
        }
        Some((space, c))
    };
    out.containment = true;
    out.containment_depth = 0;
    'depth: for k in 1..=max_depth {
        for i in 1..=r {
            let (Some((src, c_src)), Some((dst, c_dst))) = (higher(i, k + 1), higher(i + 1, k)) else {
                break 'depth;
            };
            let outer = JetSpace::build(g, j1[i].module(), k, None);
            let inner = src.embedding_into_jets_of_first_jets(&j1[i], &outer);
            let m = outer.jet_of_map(&dst, &ls[i]).mul(&inner);
            out.containment &= vanishes_on_kernel(&c_src, &c_dst.mul(&m));
        }
        out.containment_depth = k;
    }
    out
}

/// A `g`-module with its cochain complex and cohomology, ready for the BGG machinery.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub algebra: GradedLieAlgebra,
    pub module: GModule,
    pub complex: CochainComplex,
    pub cohomology: Vec<Vec<CohomologyComponent>>,
}

impl Pipeline {
    pub fn new(cartan: &CartanMatrix, parabolic: &ParabolicSpec, weight: &[i64], module_budget: u64) -> Result<Self> {
        let algebra = GradedLieAlgebra::new(cartan, parabolic)?;
        let module = build_irrep(&algebra, weight, module_budget)?;
        let complex = CochainComplex::build(&algebra, &module);
        let cohomology = (0..=complex.top()).map(|n| complex.cohomology(&algebra, n)).collect::<Result<Vec<_>>>()?;
        Ok(Pipeline { algebra, module, complex, cohomology })
    }

    pub fn generated_submodule(&self, level: usize, index: usize) -> Result<GeneratedSubmodule> {
        generate_submodule(&self.algebra, &self.complex, &self.cohomology[level][index])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    pub label: IrrepLabel,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BggArrow {
    /// (level, index within the level)
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub order: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramOptions {
    pub module_budget: u64,
    pub jet_budget: usize,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        DiagramOptions { module_budget: DEFAULT_MODULE_BUDGET, jet_budget: DEFAULT_JET_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct BggDiagram {
    pub algebra: String,
    pub parabolic: ParabolicSpec,
    pub weight: Weight,
    pub columns: Vec<Vec<DiagramNode>>,
    pub arrows: Vec<BggArrow>,
    /// pairs whose operator block was not computed for lack of budget, with their order
    pub undecided: Vec<BggArrow>,
    pub checks: OperatorChecks,
}

impl BggDiagram {
    pub fn is_complete(&self) -> bool {
        self.undecided.is_empty()
    }

    pub fn column_dims(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.iter().map(|n| n.dim).sum()).collect()
    }
}

pub fn build_bgg_diagram(
    cartan: &CartanMatrix,
    parabolic: &ParabolicSpec,
    weight: &[i64],
    options: &DiagramOptions,
) -> Result<BggDiagram> {
    let pl = Pipeline::new(cartan, parabolic, weight, options.module_budget)?;
    diagram_of(&pl, options)
}

pub fn diagram_of(pl: &Pipeline, options: &DiagramOptions) -> Result<BggDiagram> {
    let (g, cc) = (&pl.algebra, &pl.complex);
    let columns = pl
        .cohomology
        .iter()
        .map(|level| level.iter().map(|c| DiagramNode { label: c.label.clone(), dim: c.dim() }).collect())
        .collect();
    let mut arrows = Vec::new();
    let mut undecided = Vec::new();
    let mut checks = OperatorChecks {
        values_in_kernel_of_codifferential: true,
        splits_harmonic_projection: true,
        splitter_equivariant: true,
        operator_equivariant: true,
        positive_orders: true,
    };
    for n in 0..cc.top() {
        let targets = &pl.cohomology[n + 1];
        for (i, comp) in pl.cohomology[n].iter().enumerate() {
            let gs = generate_submodule(g, cc, comp)?;
            let op = bgg_operator(g, cc, &gs, targets, options.jet_budget)?;
            let c = check_operator(g, cc, &gs, targets, &op);
            checks.values_in_kernel_of_codifferential &= c.values_in_kernel_of_codifferential;
            checks.splits_harmonic_projection &= c.splits_harmonic_projection;
            checks.splitter_equivariant &= c.splitter_equivariant;
            checks.operator_equivariant &= c.operator_equivariant;
            checks.positive_orders &= c.positive_orders;
            for b in &op.blocks {
                arrows.push(BggArrow { from: (n, i), to: (n + 1, b.target), order: b.order });
            }
            for &t in &op.undecided {
                let order = operator_order(comp, &targets[t])?.to_i64().unwrap();
                undecided.push(BggArrow { from: (n, i), to: (n + 1, t), order });
            }
        }
    }
    Ok(BggDiagram {
        algebra: g.cartan().name(),
        parabolic: g.parabolic().clone(),
        weight: pl.module.highest_weight().clone(),
        columns,
        arrows,
        undecided,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pipeline(s: char, n: usize, nodes: &[usize], lam: &[i64]) -> Pipeline {
        let c = CartanMatrix::of_type(s, n).unwrap();
        Pipeline::new(&c, &ParabolicSpec::new(&c, nodes).unwrap(), lam, 500).unwrap()
    }

    #[test]
    fn sl2_generated_submodule_is_everything() {
        for m in 0..4 {
            let pl = pipeline('A', 1, &[1], &[m]);
            let gs = pl.generated_submodule(0, 0).unwrap();
            assert_eq!(gs.r(), m as usize);
            assert_eq!(gs.dim(), m as usize + 1);
            assert_eq!(gs.check_codifferential_containments(&pl.complex), (true, true));
        }
    }

    #[test]
    fn sl2_operator_has_order_m_plus_one() {
        for m in 0..4 {
            let pl = pipeline('A', 1, &[1], &[m]);
            let gs = pl.generated_submodule(0, 0).unwrap();
            let op = bgg_operator(&pl.algebra, &pl.complex, &gs, &pl.cohomology[1], DEFAULT_JET_BUDGET).unwrap();
            assert_eq!(op.blocks.len(), 1);
            assert_eq!(op.blocks[0].order, m + 1);
            assert!(check_operator(&pl.algebra, &pl.complex, &gs, &pl.cohomology[1], &op).all());
            assert!(check_splitters(&pl.algebra, &gs, 2, 5000).all());
        }
    }

    #[test]
    fn sl2_splitter_of_standard_module_is_injective() {
        let pl = pipeline('A', 1, &[1], &[1]);
        let gs = pl.generated_submodule(0, 0).unwrap();
        let sp = compose_splitter(&pl.algebra, &gs, 1, None);
        assert_eq!(sp.source.dim(), 2);
        assert_eq!(sp.map.rank(), 2);
    }

    #[test]
    fn twisted_differential_is_equivariant() {
        for (s, n, nodes, lam) in [('A', 2, vec![1], vec![1, 0]), ('A', 2, vec![1, 2], vec![0, 1]), ('B', 2, vec![1], vec![0, 1])] {
            let pl = pipeline(s, n, &nodes, &lam);
            for deg in 0..pl.complex.top() {
                let (jet, d) = twisted_differential(&pl.algebra, &pl.complex, deg);
                assert!(check_equivariance(&pl.algebra, &d, jet.module(), pl.complex.module(deg + 1), None).is_ok());
                let foot: Vec<usize> = jet.coords_of_length(0);
                assert_eq!(d.select_cols(&foot), pl.complex.del(deg));
            }
        }
    }

    #[test]
    fn trivial_module_on_a3_has_rumin_orders() {
        let c = CartanMatrix::of_type('A', 3).unwrap();
        let d = build_bgg_diagram(&c, &ParabolicSpec::new(&c, &[1, 3]).unwrap(), &[0, 0, 0], &DiagramOptions::default())
            .unwrap();
        assert_eq!(d.column_dims(), vec![1, 4, 5, 5, 4, 1]);
        assert!(d.is_complete());
        assert!(d.checks.all(), "{:?}", d.checks);
        for a in &d.arrows {
            assert_eq!(a.order, if a.from.0 == 2 { 2 } else { 1 }, "{a:?}");
        }
    }

    #[test]
    fn splitter_identities_on_small_cases() {
        for (s, n, nodes, lam) in [('A', 2, vec![1], vec![1, 0]), ('A', 2, vec![1, 2], vec![1, 1]), ('B', 2, vec![1], vec![1, 0])] {
            let pl = pipeline(s, n, &nodes, &lam);
            for level in 0..pl.cohomology.len() {
                for idx in 0..pl.cohomology[level].len() {
                    let gs = pl.generated_submodule(level, idx).unwrap();
                    let ch = check_splitters(&pl.algebra, &gs, 1, 20_000);
                    assert!(ch.all(), "{s}{n} {nodes:?} {lam:?} level {level} #{idx}: {ch:?}");
                }
            }
        }
    }
}
