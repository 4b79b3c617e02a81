//! Irreducible highest weight modules from the Cartan matrix alone.
//!
//! Weight spaces are built depth by depth. At weight `mu` the vectors
//! `f_i w` (with `w` one level up) span the weight space, and because the
//! raising operators jointly detect nonzero vectors below the top, a candidate
//! is kept exactly when its images under all `e_j` are independent of the
//! images already kept. Those images follow from
//! `e_j f_i w = f_i e_j w + delta_ij <wt(w), alpha_i^vee> w`.

use crate::linalg::{axpy, collect_vec, Coordinates, Echelon, SparseMat, SparseVec};
use crate::rational::Rat;
use crate::rootspace::{CartanMatrix, Weight};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub weights: Vec<Weight>,
    pub e: Vec<SparseMat>,
    pub f: Vec<SparseMat>,
    /// Contravariant form, `<v_top, v_top> = 1`, `<f_i u, v> = <u, e_i v>`.
    pub form: SparseMat,
}

impl SimpleModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn h(&self, i: usize) -> SparseMat {
        let n = self.dim();
        SparseMat::from_entries(n, n, (0..n).map(|v| (v, v, Rat::int(self.weights[v][i]))))
    }
}

/// Builds `L(lambda)`; `lambda` must be dominant.
pub fn build(cartan: &CartanMatrix, lambda: &[i64]) -> SimpleModule {
    let l = cartan.rank();
    assert!(lambda.iter().all(|&c| c >= 0), "highest weight must be dominant");
    let mut weights: Vec<Weight> = vec![lambda.to_vec()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    // e_cols[j][b] = e_j b, f_cols[i][b] = f_i b
    let mut e_cols: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; l];
    let mut f_cols: Vec<Vec<SparseVec>> = vec![Vec::new(); l];
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &w in &layer {
            for i in 0..l {
                let mu: Weight = (0..l).map(|k| weights[w][k] - cartan.entry(i, k)).collect();
                groups.entry(mu).or_default().push((i, w));
            }
        }
        let base = weights.len();
        let mut next = Vec::new();
        let mut f_new: Vec<(usize, usize, SparseVec)> = Vec::new();
        // Groups are visited in descending weight order for a stable basis.
        for (mu, cands) in groups.into_iter().rev() {
            // raising images, keyed by (basis index, j) -> basis * l + j
            let images: Vec<SparseVec> = cands
                .iter()
                .map(|&(i, w)| {
                    let mut acc: Vec<(usize, Rat)> = Vec::new();
                    for j in 0..l {
                        for (u, c) in &e_cols[j][w] {
                            for (x, d) in &f_cols[i][*u] {
                                acc.push((x * l + j, c * d));
                            }
                        }
                        if i == j {
                            acc.push((w * l + j, Rat::int(weights[w][i])));
                        }
                    }
                    collect_vec(acc)
                })
                .collect();
            let mut ech = Echelon::new(base * l);
            let mut chosen = Vec::new();
            for (k, img) in images.iter().enumerate() {
                if ech.insert(img.clone()) {
                    chosen.push(k);
                }
            }
            if chosen.is_empty() {
                continue;
            }
            let first = weights.len();
            for (pos, &k) in chosen.iter().enumerate() {
                let b = first + pos;
                weights.push(mu.clone());
                parent.push(Some(cands[k]));
                next.push(b);
                for col in e_cols.iter_mut() {
                    col.push(Vec::new());
                }
                for (key, v) in &images[k] {
                    e_cols[key % l][b].push((key / l, v.clone()));
                }
            }
            let sel = SparseMat::from_cols(base * l, &chosen.iter().map(|&k| images[k].clone()).collect::<Vec<_>>());
            let coords = Coordinates::new(&sel);
            for (k, &(i, w)) in cands.iter().enumerate() {
                let c = coords.coords(&images[k]).expect("candidate image outside the kept span");
                f_new.push((i, w, c.into_iter().map(|(p, v)| (first + p, v)).collect()));
            }
        }
        for col in f_cols.iter_mut() {
            col.resize(weights.len(), Vec::new());
        }
        for (i, w, v) in f_new {
            f_cols[i][w] = v;
        }
        layer = next;
    }
    let n = weights.len();
    for col in f_cols.iter_mut() {
        col.resize(n, Vec::new());
    }
    let e: Vec<SparseMat> = e_cols.iter().map(|c| SparseMat::from_cols(n, c)).collect();
    let f: Vec<SparseMat> = f_cols.iter().map(|c| SparseMat::from_cols(n, c)).collect();
    let form = contravariant_form(&weights, &parent, &e_cols);
    SimpleModule { weights, e, f, form }
}

fn contravariant_form(
    weights: &[Weight],
    parent: &[Option<(usize, usize)>],
    e_cols: &[Vec<SparseVec>],
) -> SparseMat {
    let n = weights.len();
    let mut by_weight: HashMap<&Weight, Vec<usize>> = HashMap::new();
    for (b, w) in weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(b);
    }
    let mut rows: Vec<SparseVec> = vec![Vec::new(); n];
    rows[0] = vec![(0, Rat::ONE)];
    // basis vectors appear in order of depth, so parents are always done first
    for b in 1..n {
        let (i, w) = parent[b].unwrap();
        for &u in &by_weight[&weights[b]] {
            if u > b {
                continue;
            }
            // <f_i w, u> = <w, e_i u>
            let val: Rat = e_cols[i][u].iter().map(|(x, c)| c * crate::linalg::lookup(&rows[w], *x)).sum();
            if !val.is_zero() {
                rows[b] = axpy(&rows[b], &val, &vec![(u, Rat::ONE)]);
                if u != b {
                    rows[u] = axpy(&rows[u], &val, &vec![(b, Rat::ONE)]);
                }
            }
        }
    }
    SparseMat::from_rows(n, rows)
}
