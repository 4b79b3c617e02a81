//! Cartan matrices, root systems, parabolic data and Weyl group combinatorics.
//!
//! Conventions: `A[i][j] = <alpha_i, alpha_j^vee>`, so row `i` of the Cartan
//! matrix is the simple root `alpha_i` written in fundamental weights. Nodes
//! are numbered from 0 internally and from 1 in every user-facing string.
//! Weights are integer vectors in the fundamental weight basis; roots are
//! integer vectors in the simple root basis.

use crate::error::{BggError, Result};
use crate::rational::Rat;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub type Weight = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    label: Option<String>,
    // squared root lengths, shortest = 1
    lengths: Vec<Rat>,
}

fn series_matrix(series: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let chain = |n: usize| {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match (series, n) {
        ('A', n) if n >= 1 => Some(chain(n)),
        ('B', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            Some(a)
        }
        ('C', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            Some(a)
        }
        ('D', n) if n >= 3 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            link(&mut a, n - 3, n - 1);
            Some(a)
        }
        ('E', n) if (6..=8).contains(&n) => {
            let mut a = vec![vec![0i64; n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
            Some(a)
        }
        ('F', 4) => {
            let mut a = chain(4);
            a[1][2] = -2;
            Some(a)
        }
        ('G', 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

impl CartanMatrix {
    /// Validates and accepts an arbitrary integer matrix.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(BggError::NotFiniteType("empty matrix".into()));
        }
        if a.iter().any(|r| r.len() != n) {
            return Err(BggError::NotFiniteType("matrix is not square".into()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(BggError::NotFiniteType(format!("diagonal entry {} is {}", i + 1, a[i][i])));
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(BggError::NotFiniteType(format!("bad off-diagonal pair at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if a[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(BggError::NotIrreducible(format!("node {} is not connected to node 1", j + 1)));
        }
        // symmetrize: A[i][j] d[j] = A[j][i] d[i]
        let mut d: Vec<Option<Rat>> = vec![None; n];
        d[0] = Some(Rat::ONE);
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && a[i][j] != 0 {
                    let dj = d[i].clone().unwrap() * Rat::new(a[j][i], a[i][j]);
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(x) if *x != dj => {
                            return Err(BggError::NotFiniteType("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let d: Vec<Rat> = d.into_iter().map(Option::unwrap).collect();
        let min = d.iter().min().unwrap().clone();
        let lengths: Vec<Rat> = d.iter().map(|x| x / &min).collect();
        // positive definiteness of (alpha_i, alpha_j) = A[i][j] d[j] / 2
        let mut g: Vec<Vec<Rat>> =
            (0..n).map(|i| (0..n).map(|j| Rat::int(a[i][j]) * &lengths[j] / Rat::int(2)).collect()).collect();
        for k in 0..n {
            if !g[k][k].is_positive() {
                return Err(BggError::NotFiniteType("symmetrized form is not positive definite".into()));
            }
            for i in k + 1..n {
                let f = &g[i][k] / &g[k][k];
                for j in k..n {
                    let t = &f * &g[k][j];
                    g[i][j] -= t;
                }
            }
        }
        let label = Self::identify(&a);
        Ok(CartanMatrix { a, label, lengths })
    }

    fn identify(a: &[Vec<i64>]) -> Option<String> {
        let n = a.len();
        for s in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            if series_matrix(s, n).as_deref() == Some(a) {
                return Some(format!("{s}{n}"));
            }
        }
        None
    }

    pub fn of_type(series: char, rank: usize) -> Result<Self> {
        let s = series.to_ascii_uppercase();
        let a = series_matrix(s, rank)
            .ok_or_else(|| BggError::NotFiniteType(format!("no Dynkin diagram {s}{rank}")))?;
        Self::new(a)
    }

    /// Parses a series label such as `A3`, `b 2` or `G2`.
    pub fn parse(label: &str) -> Result<Self> {
        let t: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chars = t.chars();
        let s = chars.next().ok_or_else(|| BggError::NotFiniteType("empty algebra label".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| BggError::NotFiniteType(format!("cannot read rank in {label:?}")))?;
        Self::of_type(s, rank)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Series label when known, else the matrix rows.
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!("{:?}", self.a),
        }
    }

    /// Squared lengths of the simple roots, normalised so the shortest is 1.
    pub fn root_lengths(&self) -> &[Rat] {
        &self.lengths
    }

    /// Inverse Cartan matrix entry `(A^{-1})[i][j]`.
    pub fn inverse(&self) -> Vec<Vec<Rat>> {
        let m = crate::linalg::SparseMat::from_i64(&self.a);
        m.inverse().expect("finite-type Cartan matrices are invertible").to_dense()
    }
}

/// The crossed nodes of a Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicSpec {
    rank: usize,
    crossed: BTreeSet<usize>,
}

impl ParabolicSpec {
    /// `nodes` are 1-based.
    pub fn new(cartan: &CartanMatrix, nodes: &[usize]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(BggError::ValidationError("no crossed nodes".into()));
        }
        let mut crossed = BTreeSet::new();
        for &k in nodes {
            if k == 0 || k > cartan.rank() {
                return Err(BggError::ValidationError(format!(
                    "node {k} is outside 1..={}",
                    cartan.rank()
                )));
            }
            crossed.insert(k - 1);
        }
        Ok(ParabolicSpec { rank: cartan.rank(), crossed })
    }

    pub fn is_crossed(&self, i: usize) -> bool {
        self.crossed.contains(&i)
    }

    /// 0-based crossed nodes.
    pub fn crossed(&self) -> impl Iterator<Item = usize> + '_ {
        self.crossed.iter().copied()
    }

    pub fn uncrossed(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(|i| !self.crossed.contains(i))
    }

    /// 1-based crossed nodes.
    pub fn nodes(&self) -> Vec<usize> {
        self.crossed.iter().map(|i| i + 1).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.nodes().iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// `w = s_{word[0]} s_{word[1]} ...`, stored with `w(rho)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    rho_image: Weight,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rho_image(&self) -> &Weight {
        &self.rho_image
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let s: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", s.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(cartan: &CartanMatrix) -> Self {
        let n = cartan.rank();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut layer = simple.clone();
        let mut positive = Vec::new();
        while !layer.is_empty() {
            layer.sort_by(|a, b| b.cmp(a));
            positive.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..n {
                    let mut down = beta.clone();
                    let mut p = 0;
                    loop {
                        down[i] -= 1;
                        if all.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| beta[j] * cartan.entry(j, i)).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            for r in &next {
                all.insert(r.clone());
            }
            layer = next.into_iter().collect();
        }
        let index = positive.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        RootSystem { cartan: cartan.clone(), positive, index }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Ordered by height, then lexicographically descending.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        let neg: Vec<i64> = root.iter().map(|c| -c).collect();
        self.index.contains_key(root) || self.index.contains_key(&neg)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().unwrap()
    }

    /// `<beta, alpha_i^vee>` for `beta` in simple root coordinates.
    pub fn pairing(&self, root: &[i64], i: usize) -> i64 {
        root.iter().enumerate().map(|(j, c)| c * self.cartan.entry(j, i)).sum()
    }

    /// A root (or any element of the root lattice) in fundamental weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        (0..self.rank()).map(|i| self.pairing(root, i)).collect()
    }

    /// Sum of the coefficients over the crossed nodes.
    pub fn sigma_height(&self, root: &[i64], p: &ParabolicSpec) -> Result<i64> {
        if !self.is_root(root) {
            return Err(BggError::UnknownRoot(root.to_vec()));
        }
        Ok(p.crossed().map(|i| root[i]).sum())
    }

    /// Depth `k` of the grading `g_{-k} + ... + g_k`.
    pub fn grading_depth(&self, p: &ParabolicSpec) -> i64 {
        self.positive.iter().map(|r| p.crossed().map(|i| r[i]).sum::<i64>()).max().unwrap_or(0)
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank()]
    }

    pub fn reflect(&self, i: usize, mu: &[i64]) -> Weight {
        let c = mu[i];
        (0..self.rank()).map(|j| mu[j] - c * self.cartan.entry(i, j)).collect()
    }

    pub fn reflect_root(&self, i: usize, root: &[i64]) -> Vec<i64> {
        let c = self.pairing(root, i);
        let mut out = root.to_vec();
        out[i] -= c;
        out
    }

    pub fn act(&self, w: &WeylElement, mu: &[i64]) -> Weight {
        let mut v = mu.to_vec();
        for &i in w.word.iter().rev() {
            v = self.reflect(i, &v);
        }
        v
    }

    /// `w . lambda = w(lambda + rho) - rho`.
    pub fn affine_dot_action(&self, w: &WeylElement, lambda: &[i64]) -> Weight {
        let shifted: Weight = lambda.iter().map(|c| c + 1).collect();
        self.act(w, &shifted).into_iter().map(|c| c - 1).collect()
    }

    /// The antidominant element of the orbit of `mu` under the reflections in `nodes`.
    pub fn to_antidominant_in(&self, mu: &[i64], nodes: &[usize]) -> Weight {
        let mut v = mu.to_vec();
        while let Some(&i) = nodes.iter().find(|&&i| v[i] > 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    /// Highest weight of the dual of the irreducible module with highest weight `lambda`.
    pub fn dual_weight(&self, lambda: &[i64]) -> Weight {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.to_antidominant_in(lambda, &all).into_iter().map(|c| -c).collect()
    }

    /// Dimension of the irreducible module of dominant highest weight `lambda`.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> u64 {
        let d = self.cartan.root_lengths();
        let mut num = Rat::ONE;
        let mut den = Rat::ONE;
        for beta in &self.positive {
            let mut a = Rat::ZERO;
            let mut b = Rat::ZERO;
            for j in 0..self.rank() {
                let w = Rat::int(beta[j]) * &d[j];
                a += &w * Rat::int(lambda[j] + 1);
                b += w;
            }
            num *= &a;
            den *= &b;
        }
        let q = num / den;
        assert!(q.is_integer(), "Weyl dimension formula gave a fraction");
        q.to_i64().expect("dimension overflow") as u64
    }

    /// Minimal length coset representatives `W^p`, grouped by length.
    pub fn parabolic_hasse(&self, p: &ParabolicSpec) -> Vec<Vec<WeylElement>> {
        let n = self.rank();
        let dominant = |mu: &Weight| p.uncrossed().all(|j| mu[j] > 0);
        let mut levels = vec![vec![WeylElement { word: vec![], rho_image: self.rho() }]];
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(self.rho());
        loop {
            let mut next = Vec::new();
            for w in levels.last().unwrap() {
                for i in 0..n {
                    let mut image = vec![0; n];
                    image[i] = 1;
                    for &k in w.word.iter().rev() {
                        image = self.reflect_root(k, &image);
                    }
                    if image.iter().any(|&c| c < 0) {
                        continue;
                    }
                    let shift = self.root_to_weight(&image);
                    let mu: Weight = w.rho_image.iter().zip(&shift).map(|(a, b)| a - b).collect();
                    if dominant(&mu) && seen.insert(mu.clone()) {
                        let mut word = w.word.clone();
                        word.push(i);
                        next.push(WeylElement { word, rho_image: mu });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| b.rho_image.cmp(&a.rho_image));
            levels.push(next);
        }
        levels
    }
}
