//! Based root data given by explicit lattices `X_*(T) = Z^rank`.
//!
//! Roots live in `X^*(T)` and coroots in `X_*(T)`, both written in the dual
//! standard coordinates, so the pairing is the dot product. The finite Weyl
//! group is enumerated once at construction.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{self, QuotientMap};

/// Cap on the size of an enumerated finite Weyl group.
pub const WEYL_GROUP_CAP: usize = 200_000;

/// A cocharacter `lambda` in `X_*(T) = Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(lattice::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(lattice::sub(&self.0, &other.0))
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: i64) -> Coweight {
        Coweight(lattice::scale(&self.0, c))
    }
}

impl From<Vec<i64>> for Coweight {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl From<&[i64]> for Coweight {
    fn from(v: &[i64]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Handle to an element of the finite Weyl group of a particular datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWeylElt(pub(crate) u32);

impl FiniteWeylElt {
    pub const IDENTITY: FiniteWeylElt = FiniteWeylElt(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Standard Levi subgroup, given by a subset of simple-root indices
/// (0-based). The full set is `G` itself, the empty set the torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StandardLevi(BTreeSet<usize>);

impl StandardLevi {
    pub fn new<I: IntoIterator<Item = usize>>(simple: I) -> Self {
        Self(simple.into_iter().collect())
    }

    pub fn torus() -> Self {
        Self(BTreeSet::new())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &StandardLevi) -> bool {
        self.0.is_subset(&other.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    GL,
    SL,
    PGL,
    Sp,
    GSp,
}

impl core::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" => Ok(Preset::GL),
            "SL" => Ok(Preset::SL),
            "PGL" => Ok(Preset::PGL),
            "Sp" => Ok(Preset::Sp),
            "GSp" => Ok(Preset::GSp),
            _ => Err(Error::UnsupportedPreset(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
struct WeylEntry {
    /// Action on `X_*(T)`.
    matrix: Vec<Vec<i64>>,
    /// Lexicographically least reduced word (simple-root indices).
    word: Vec<usize>,
    /// Image of `2 rho^vee`; determines the element.
    key: Vec<i64>,
    inverse: u32,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    pos_roots: Vec<Vec<i64>>,
    pos_coroots: Vec<Vec<i64>>,
    root_coeffs: Vec<Vec<i64>>,
    two_rho: Vec<i64>,
    two_rho_check: Vec<i64>,
    components: Vec<Vec<usize>>,
    highest_roots: Vec<usize>,
    weyl: Vec<WeylEntry>,
    weyl_index: BTreeMap<Vec<i64>, u32>,
    simple_refl: Vec<FiniteWeylElt>,
    omega_map: QuotientMap,
    /// Small non-central dominant coweights; sums of these reach every
    /// dominant pairing pattern (the list always contains `2 rho^vee`).
    dominant_steps: Vec<Coweight>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates and builds a datum from explicit simple roots and coroots.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let bad = |field: &str, reason: String| Error::InvalidDatum { field: field.into(), reason };
        if rank == 0 {
            return Err(bad("rank", "rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(bad(
                "simple_coroots",
                format!("{} simple roots but {} simple coroots", simple_roots.len(), simple_coroots.len()),
            ));
        }
        for (i, r) in simple_roots.iter().enumerate() {
            if r.len() != rank {
                return Err(bad("simple_roots", format!("entry {i} has length {}, expected {rank}", r.len())));
            }
        }
        for (i, r) in simple_coroots.iter().enumerate() {
            if r.len() != rank {
                return Err(bad("simple_coroots", format!("entry {i} has length {}, expected {rank}", r.len())));
            }
        }
        let n = simple_roots.len();
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| lattice::dot(&simple_roots[i], &simple_coroots[j])).collect()).collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(bad(
                    "simple_coroots",
                    format!("<alpha_{i}, alpha_{i}^vee> = {} (must be 2)", cartan[i][i]),
                ));
            }
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(bad(
                            "simple_coroots",
                            format!("<alpha_{i}, alpha_{j}^vee> = {} > 0", cartan[i][j]),
                        ));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(bad(
                            "simple_coroots",
                            format!("Cartan entries ({i},{j}) and ({j},{i}) disagree in vanishing"),
                        ));
                    }
                }
            }
        }
        let components = connected_components(&cartan);
        for comp in &components {
            // finite type: every principal minor of the component is positive
            let k = comp.len();
            for mask in 1u32..(1u32 << k) {
                let idx: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| comp[b]).collect();
                let sub: Vec<Vec<i64>> = idx.iter().map(|&a| idx.iter().map(|&b| cartan[a][b]).collect()).collect();
                if lattice::determinant(&sub) <= 0 {
                    return Err(bad(
                        "simple_coroots",
                        format!("Cartan matrix is not of finite type (principal minor on {idx:?} is not positive)"),
                    ));
                }
            }
        }

        // positive roots and their coroots, in simple-root / simple-coroot coordinates
        let mut seen: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((c, d)) = queue.pop_front() {
            for j in 0..n {
                let pc: i64 = (0..n).map(|i| c[i] * cartan[i][j]).sum();
                let pd: i64 = (0..n).map(|i| d[i] * cartan[j][i]).sum();
                let mut c2 = c.clone();
                c2[j] -= pc;
                let mut d2 = d.clone();
                d2[j] -= pd;
                if c2.iter().all(|x| *x >= 0) && c2.iter().any(|x| *x > 0) && !seen.contains_key(&c2) {
                    if seen.len() > 10_000 {
                        return Err(bad("simple_roots", "root system is not finite".into()));
                    }
                    seen.insert(c2.clone(), d2.clone());
                    queue.push_back((c2, d2));
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            let mut v = vec![0; rank];
            for (c, b) in coeffs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            v
        };
        let pos_roots: Vec<Vec<i64>> = pos.iter().map(|(c, _)| combine(c, &simple_roots)).collect();
        let pos_coroots: Vec<Vec<i64>> = pos.iter().map(|(_, d)| combine(d, &simple_coroots)).collect();
        let root_coeffs: Vec<Vec<i64>> = pos.iter().map(|(c, _)| c.clone()).collect();
        let mut two_rho = vec![0; rank];
        let mut two_rho_check = vec![0; rank];
        for (r, c) in pos_roots.iter().zip(&pos_coroots) {
            two_rho = lattice::add(&two_rho, r);
            two_rho_check = lattice::add(&two_rho_check, c);
        }
        let highest_roots = components
            .iter()
            .map(|comp| {
                (0..root_coeffs.len())
                    .filter(|&r| (0..n).all(|i| root_coeffs[r][i] == 0 || comp.contains(&i)))
                    .max_by_key(|&r| (root_coeffs[r].iter().sum::<i64>(), r))
                    .expect("component has roots")
            })
            .collect();

        let omega_map = QuotientMap::new(rank, &simple_coroots);
        let mut rd = RootDatum {
            name: name.into(),
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            pos_roots,
            pos_coroots,
            root_coeffs,
            two_rho,
            two_rho_check,
            components,
            highest_roots,
            weyl: Vec::new(),
            weyl_index: BTreeMap::new(),
            simple_refl: Vec::new(),
            omega_map,
            dominant_steps: Vec::new(),
        };
        rd.enumerate_weyl_group()?;
        rd.dominant_steps = rd.compute_dominant_steps();
        Ok(rd)
    }

    /// Standard presets: `GL_n` (n <= 6), `SL_n` (n <= 5), `PGL_n` (n <= 4),
    /// `Sp_4` and `GSp_4` (pass `n = 4`).
    pub fn preset(family: Preset, n: usize) -> Result<Self> {
        let unsupported = || Error::UnsupportedPreset(format!("{family:?}_{n}"));
        let type_a_cartan = |m: usize| -> Vec<Vec<i64>> {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| match (i as i64 - j as i64).abs() {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect()
        };
        match family {
            Preset::GL => {
                if !(1..=6).contains(&n) {
                    return Err(unsupported());
                }
                let roots: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                Self::new(format!("GL{n}"), n, roots.clone(), roots)
            }
            Preset::SL => {
                if !(2..=5).contains(&n) {
                    return Err(unsupported());
                }
                // X_* = coroot lattice, basis = simple coroots
                let a = type_a_cartan(n - 1);
                Self::new(format!("SL{n}"), n - 1, a.clone(), lattice::identity(n - 1))
            }
            Preset::PGL => {
                if !(2..=4).contains(&n) {
                    return Err(unsupported());
                }
                // X_* = coweight lattice, basis = fundamental coweights
                let a = type_a_cartan(n - 1);
                let coroots = (0..n - 1).map(|j| (0..n - 1).map(|i| a[i][j]).collect()).collect();
                Self::new(format!("PGL{n}"), n - 1, lattice::identity(n - 1), coroots)
            }
            Preset::Sp => {
                if n != 4 {
                    return Err(unsupported());
                }
                Self::new("Sp4", 2, vec![vec![1, -1], vec![0, 2]], vec![vec![1, -1], vec![0, 1]])
            }
            Preset::GSp => {
                if n != 4 {
                    return Err(unsupported());
                }
                // coordinates (t1, t2, c) with c the similitude factor
                Self::new("GSp4", 3, vec![vec![1, -1, 0], vec![0, 2, -1]], vec![vec![1, -1, 0], vec![0, 1, 0]])
            }
        }
    }

    fn enumerate_weyl_group(&mut self) -> Result<()> {
        let n = self.simple_roots.len();
        let refl: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| {
                let mut m = lattice::identity(self.rank);
                for (r, row) in m.iter_mut().enumerate() {
                    for (c, x) in row.iter_mut().enumerate() {
                        *x -= self.simple_coroots[i][r] * self.simple_roots[i][c];
                    }
                }
                m
            })
            .collect();
        let x0 = self.two_rho_check.clone();
        let mut entries =
            vec![WeylEntry { matrix: lattice::identity(self.rank), word: Vec::new(), key: x0.clone(), inverse: 0 }];
        let mut index: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        index.insert(x0, 0);
        // BFS by length, left multiplication by simple reflections
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for (i, s) in refl.iter().enumerate() {
                    let key = lattice::mat_vec(s, &entries[w].key);
                    if index.contains_key(&key) {
                        continue;
                    }
                    if entries.len() >= WEYL_GROUP_CAP {
                        return Err(Error::InvalidDatum {
                            field: "simple_roots".into(),
                            reason: format!("Weyl group exceeds {WEYL_GROUP_CAP} elements"),
                        });
                    }
                    let mut word = vec![i];
                    word.extend_from_slice(&entries[w].word);
                    index.insert(key.clone(), entries.len() as u32);
                    next.push(entries.len());
                    entries.push(WeylEntry { matrix: lattice::mat_mul(s, &entries[w].matrix), word, key, inverse: 0 });
                }
            }
            frontier = next;
        }
        // lexicographically least reduced words, shortest first
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by_key(|&w| entries[w].word.len());
        for &w in &order {
            let len = entries[w].word.len();
            if len == 0 {
                continue;
            }
            for (i, s) in refl.iter().enumerate() {
                let key = lattice::mat_vec(s, &entries[w].key);
                let u = index[&key] as usize;
                if entries[u].word.len() + 1 == len {
                    let mut word = vec![i];
                    word.extend_from_slice(&entries[u].word);
                    entries[w].word = word;
                    break;
                }
            }
        }
        for entry in entries.iter_mut() {
            let mut key = self.two_rho_check.clone();
            for &i in &entry.word {
                key = lattice::mat_vec(&refl[i], &key);
            }
            entry.inverse = index[&key];
        }
        self.simple_refl =
            refl.iter().map(|s| FiniteWeylElt(index[&lattice::mat_vec(s, &self.two_rho_check)])).collect();
        self.weyl = entries;
        self.weyl_index = index;
        Ok(())
    }

    fn compute_dominant_steps(&self) -> Vec<Coweight> {
        if self.simple_roots.is_empty() {
            return Vec::new();
        }
        let bound = if self.rank <= 4 { 2 } else { 1 };
        let mut steps: Vec<Coweight> =
            self.dominant_coweights(i64::MAX, bound).into_iter().filter(|c| !self.is_central(c)).collect();
        let rc = Coweight(self.two_rho_check.clone());
        if !steps.contains(&rc) {
            steps.push(rc);
        }
        steps
    }

    /// A dominant `nu` of minimal `<2 rho, nu>` such that `lambda + nu` is
    /// dominant as well.
    pub fn dominant_complement(&self, lambda: &Coweight) -> Coweight {
        use alloc::collections::BinaryHeap;
        use core::cmp::Reverse;

        let k = self.simple_roots.len();
        let need: Vec<i64> = (0..k).map(|i| (-lattice::dot(&self.simple_roots[i], &lambda.0)).max(0)).collect();
        let cap = |p: Vec<i64>| -> Vec<i64> { p.iter().zip(&need).map(|(a, b)| *a.min(b)).collect() };
        let start = vec![0; k];
        let mut best: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        let mut via: BTreeMap<Vec<i64>, (Vec<i64>, usize)> = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        best.insert(start.clone(), 0);
        heap.push(Reverse((0i64, start)));
        while let Some(Reverse((cost, state))) = heap.pop() {
            if state == need {
                let mut nu = vec![0; self.rank];
                let mut cur = state;
                while let Some((prev, step)) = via.get(&cur) {
                    nu = lattice::add(&nu, &self.dominant_steps[*step].0);
                    cur = prev.clone();
                }
                return Coweight(nu);
            }
            if best.get(&state).is_some_and(|c| *c < cost) {
                continue;
            }
            for (j, g) in self.dominant_steps.iter().enumerate() {
                let pairing: Vec<i64> = (0..k).map(|i| state[i] + lattice::dot(&self.simple_roots[i], &g.0)).collect();
                let next = cap(pairing);
                if next == state {
                    continue;
                }
                let c = cost + self.two_rho_pairing(g);
                if best.get(&next).is_none_or(|old| c < *old) {
                    best.insert(next.clone(), c);
                    via.insert(next.clone(), (state.clone(), j));
                    heap.push(Reverse((c, next)));
                }
            }
        }
        unreachable!("2 rho^vee is among the steps, so every pattern is reachable")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// `cartan()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.pos_roots
    }

    /// Coroots matching `positive_roots()` index by index.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.pos_coroots
    }

    /// Coordinates of each positive root in the simple roots.
    pub fn root_coefficients(&self) -> &[Vec<i64>] {
        &self.root_coeffs
    }

    /// Sum of positive roots, an element of `X^*(T)`.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// Sum of positive coroots, an element of `X_*(T)`.
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    /// Irreducible components as lists of simple-root indices.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Index into `positive_roots()` of the highest root of each component.
    pub fn highest_roots(&self) -> &[usize] {
        &self.highest_roots
    }

    pub fn coweight(&self, coords: &[i64]) -> Result<Coweight> {
        if coords.len() != self.rank {
            return Err(Error::InvalidInput(format!(
                "coweight {coords:?} has {} coordinates, {} expects {}",
                coords.len(),
                self.name,
                self.rank
            )));
        }
        Ok(Coweight(coords.to_vec()))
    }

    /// `<2 rho, lambda>`.
    pub fn two_rho_pairing(&self, lambda: &Coweight) -> i64 {
        lattice::dot(&self.two_rho, &lambda.0)
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| lattice::dot(a, &lambda.0) >= 0)
    }

    pub fn is_dominant_for(&self, lambda: &Coweight, levi: &StandardLevi) -> bool {
        levi.indices().all(|i| lattice::dot(&self.simple_roots[i], &lambda.0) >= 0)
    }

    /// Whether `lambda` is central (pairs trivially with every root).
    pub fn is_central(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| lattice::dot(a, &lambda.0) == 0)
    }

    /// Minuscule: `<alpha, lambda>` in `{-1, 0, 1}` for every root.
    pub fn is_minuscule(&self, lambda: &Coweight) -> bool {
        self.pos_roots.iter().all(|a| lattice::dot(a, &lambda.0).abs() <= 1)
    }

    pub fn reflect(&self, i: usize, lambda: &Coweight) -> Coweight {
        let p = lattice::dot(&self.simple_roots[i], &lambda.0);
        Coweight(lattice::sub(&lambda.0, &lattice::scale(&self.simple_coroots[i], p)))
    }

    /// Dominant representative of the orbit of `lambda` together with the
    /// element `w` of minimal length carrying `lambda` to it.
    pub fn dominate(&self, lambda: &Coweight) -> (Coweight, FiniteWeylElt) {
        self.dominate_in(lambda, None)
    }

    /// As [`dominate`](Self::dominate) for the Weyl group of a standard Levi.
    pub fn dominate_levi(&self, lambda: &Coweight, levi: &StandardLevi) -> (Coweight, FiniteWeylElt) {
        self.dominate_in(lambda, Some(levi))
    }

    fn dominate_in(&self, lambda: &Coweight, levi: Option<&StandardLevi>) -> (Coweight, FiniteWeylElt) {
        let mut cur = lambda.clone();
        let mut w = FiniteWeylElt::IDENTITY;
        loop {
            let step = (0..self.simple_roots.len())
                .filter(|&i| levi.is_none_or(|m| m.contains(i)))
                .find(|&i| lattice::dot(&self.simple_roots[i], &cur.0) < 0);
            match step {
                Some(i) => {
                    cur = self.reflect(i, &cur);
                    w = self.mul(self.simple_refl[i], w);
                }
                None => return (cur, w),
            }
        }
    }

    /// Full Weyl orbit, sorted lexicographically.
    pub fn weyl_orbit(&self, lambda: &Coweight) -> Vec<Coweight> {
        self.orbit_in(lambda, None)
    }

    pub fn levi_orbit(&self, lambda: &Coweight, levi: &StandardLevi) -> Vec<Coweight> {
        self.orbit_in(lambda, Some(levi))
    }

    fn orbit_in(&self, lambda: &Coweight, levi: Option<&StandardLevi>) -> Vec<Coweight> {
        let mut seen = BTreeSet::new();
        seen.insert(lambda.clone());
        let mut stack = vec![lambda.clone()];
        while let Some(x) = stack.pop() {
            for i in 0..self.simple_roots.len() {
                if levi.is_some_and(|m| !m.contains(i)) {
                    continue;
                }
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Coordinates of `lambda` in the simple coroots, if it lies in their
    /// rational span.
    pub fn coroot_coordinates(&self, lambda: &Coweight) -> Option<Vec<lattice::Q>> {
        lattice::solve_coefficients(&self.simple_coroots, &lambda.0)
    }

    /// `lambda <= mu`: `mu - lambda` is a non-negative integer combination of
    /// simple coroots.
    pub fn dominance_leq(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        match lattice::integer_coefficients(&self.simple_coroots, &mu.sub(lambda).0) {
            Some(c) => c.iter().all(|x| *x >= 0),
            None => false,
        }
    }

    /// Class of `lambda` in `X_*(T) / Q^vee`.
    pub fn omega_class(&self, lambda: &Coweight) -> Vec<i64> {
        self.omega_map.apply(&lambda.0)
    }

    pub fn omega_map(&self) -> &QuotientMap {
        &self.omega_map
    }

    // ---- finite Weyl group ----

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn weyl_elements(&self) -> impl Iterator<Item = FiniteWeylElt> {
        (0..self.weyl.len() as u32).map(FiniteWeylElt)
    }

    pub fn simple_reflection(&self, i: usize) -> FiniteWeylElt {
        self.simple_refl[i]
    }

    pub fn weyl_matrix(&self, w: FiniteWeylElt) -> &[Vec<i64>] {
        &self.weyl[w.index()].matrix
    }

    pub fn weyl_word(&self, w: FiniteWeylElt) -> &[usize] {
        &self.weyl[w.index()].word
    }

    pub fn weyl_length(&self, w: FiniteWeylElt) -> usize {
        self.weyl[w.index()].word.len()
    }

    /// `w(2 rho^vee)`; `w^{-1}(alpha) > 0` iff `<alpha, key> > 0`.
    pub(crate) fn weyl_key(&self, w: FiniteWeylElt) -> &[i64] {
        &self.weyl[w.index()].key
    }

    pub fn weyl_inverse(&self, w: FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt(self.weyl[w.index()].inverse)
    }

    pub fn mul(&self, u: FiniteWeylElt, w: FiniteWeylElt) -> FiniteWeylElt {
        let key = lattice::mat_vec(&self.weyl[u.index()].matrix, &self.weyl[w.index()].key);
        FiniteWeylElt(self.weyl_index[&key])
    }

    pub fn act(&self, w: FiniteWeylElt, lambda: &Coweight) -> Coweight {
        Coweight(lattice::mat_vec(&self.weyl[w.index()].matrix, &lambda.0))
    }

    /// Finite Weyl element acting on coweights by the given matrix, if any.
    pub fn weyl_from_matrix(&self, m: &[Vec<i64>]) -> Option<FiniteWeylElt> {
        let key = lattice::mat_vec(m, &self.two_rho_check);
        let w = FiniteWeylElt(*self.weyl_index.get(&key)?);
        (self.weyl_matrix(w) == m).then_some(w)
    }

    /// The reflection `s_beta` for the positive root with index `r`.
    pub fn root_reflection(&self, r: usize) -> FiniteWeylElt {
        let x = &self.two_rho_check;
        let p = lattice::dot(&self.pos_roots[r], x);
        let key = lattice::sub(x, &lattice::scale(&self.pos_coroots[r], p));
        FiniteWeylElt(self.weyl_index[&key])
    }

    // ---- Levi subgroups ----

    /// Root datum of a standard Levi: same lattices, subset of simple roots.
    pub fn levi_datum(&self, levi: &StandardLevi) -> Result<RootDatum> {
        if let Some(bad) = levi.indices().find(|&i| i >= self.simple_roots.len()) {
            return Err(Error::InvalidInput(format!("Levi index {} out of range for {}", bad + 1, self.name)));
        }
        let labels: Vec<String> = levi.indices().map(|i| (i + 1).to_string()).collect();
        RootDatum::new(
            format!("{}[M:{}]", self.name, labels.join(",")),
            self.rank,
            levi.indices().map(|i| self.simple_roots[i].clone()).collect(),
            levi.indices().map(|i| self.simple_coroots[i].clone()).collect(),
        )
    }

    pub fn full_levi(&self) -> StandardLevi {
        StandardLevi::new(0..self.simple_roots.len())
    }

    /// `2 rho_N = 2 rho_G - 2 rho_M` for the unipotent radical of the
    /// standard parabolic with Levi `M`.
    pub fn two_rho_unipotent(&self, levi: &StandardLevi) -> Vec<i64> {
        let mut out = self.two_rho.clone();
        for (r, c) in self.pos_roots.iter().zip(&self.root_coeffs) {
            let in_levi = c.iter().enumerate().all(|(i, x)| *x == 0 || levi.contains(i));
            if in_levi {
                out = lattice::sub(&out, r);
            }
        }
        out
    }

    /// Dominant coweights with `<2 rho, lambda> <= max_two_rho` and every
    /// coordinate in `[-bound, bound]`, in lexicographic order.
    pub fn dominant_coweights(&self, max_two_rho: i64, bound: i64) -> Vec<Coweight> {
        let mut out = Vec::new();
        let mut cur = vec![-bound; self.rank];
        loop {
            let c = Coweight(cur.clone());
            if self.is_dominant(&c) && self.two_rho_pairing(&c) <= max_two_rho {
                out.push(c);
            }
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    for x in cur.iter_mut().skip(i + 1) {
                        *x = -bound;
                    }
                    break;
                }
            }
        }
    }
}

fn connected_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if comp[j] == usize::MAX && cartan[i][j] != 0 {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
