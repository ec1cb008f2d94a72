//! The extended affine Weyl group `W = X_*(T) ⋊ W_0 = W_aff ⋊ Omega`.
//!
//! The base alcove is the one in the dominant chamber, so `l(t_lambda) =
//! <2 rho, lambda>` for dominant `lambda`. Simple affine reflections are
//! numbered as follows: node 0 is the affine reflection of the first
//! irreducible component, nodes `1..=k` are the finite simple reflections
//! `s_1..s_k`, and the affine reflections of further components follow.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::lattice;
use crate::rootdata::{Coweight, FiniteWeylElt, RootDatum};

/// Index of a simple affine reflection.
pub type NodeId = usize;

/// Default cap on the size of an enumerated facet subgroup `W_f`.
pub const FACET_CAP: usize = 100_000;

/// `t_lambda * w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineElt {
    pub translation: Coweight,
    pub finite: FiniteWeylElt,
}

impl AffineElt {
    pub fn identity(rank: usize) -> Self {
        Self { translation: Coweight::zero(rank), finite: FiniteWeylElt::IDENTITY }
    }

    pub fn translation(lambda: Coweight) -> Self {
        Self { translation: lambda, finite: FiniteWeylElt::IDENTITY }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.finite.is_identity()
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }
}

/// Class of a coweight in `X_*(T) / Q^vee`, in the coordinates of the
/// datum's quotient map (torsion coordinates reduced).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OmegaElt(pub Vec<i64>);

impl OmegaElt {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }
}

impl fmt::Display for OmegaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A set of simple affine reflections generating a finite subgroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Facet(BTreeSet<NodeId>);

impl Facet {
    pub fn new<I: IntoIterator<Item = NodeId>>(nodes: I) -> Self {
        Self(nodes.into_iter().collect())
    }

    pub fn iwahori() -> Self {
        Self(BTreeSet::new())
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, s: NodeId) -> bool {
        self.0.contains(&s)
    }

    pub fn is_iwahori(&self) -> bool {
        self.0.is_empty()
    }
}

/// Weights `L(s)` on the simple affine reflections; `q_s = v^{2 L(s)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSystem {
    weights: Vec<u32>,
}

impl ParamSystem {
    /// `L = 1` on every node.
    pub fn equal(w: &AffineWeylGroup) -> Self {
        Self { weights: vec![1; w.num_nodes()] }
    }

    /// Validates that `L` is positive and constant on conjugacy classes of
    /// simple reflections (odd braid relations and `Omega`-conjugation).
    pub fn new(w: &AffineWeylGroup, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != w.num_nodes() {
            return Err(Error::InvalidInput(format!(
                "parameter system has {} weights, group has {} nodes",
                weights.len(),
                w.num_nodes()
            )));
        }
        if let Some(s) = weights.iter().position(|x| *x == 0) {
            return Err(Error::InvalidInput(format!("L(s{s}) must be positive")));
        }
        for s in 0..w.num_nodes() {
            for t in s + 1..w.num_nodes() {
                if weights[s] != weights[t] && w.braid_order(s, t).is_some_and(|m| m % 2 == 1) {
                    return Err(Error::InvalidInput(format!("L(s{s}) != L(s{t}) but s{s}, s{t} are conjugate")));
                }
            }
            for om in w.omega_generators() {
                let t = w.conjugate_node(om, s);
                if weights[s] != weights[t] {
                    return Err(Error::InvalidInput(format!("L(s{s}) != L(s{t}) but they are conjugate under Omega")));
                }
            }
        }
        Ok(Self { weights })
    }

    pub fn weight(&self, s: NodeId) -> u32 {
        self.weights[s]
    }

    pub fn is_equal_parameter(&self) -> bool {
        self.weights.iter().all(|x| *x == 1)
    }

    /// `q_s = v^{2 L(s)}`.
    pub fn q_s(&self, s: NodeId) -> LaurentPoly {
        LaurentPoly::v_pow(2 * self.weights[s] as i32)
    }
}

#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    rd: Arc<RootDatum>,
    nodes: Vec<AffineElt>,
    /// Component index of each node.
    node_component: Vec<usize>,
    omega_gens: Vec<AffineElt>,
}

impl PartialEq for AffineWeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rd == other.rd
    }
}

impl AffineWeylGroup {
    pub fn new(rd: RootDatum) -> Self {
        Self::from_arc(Arc::new(rd))
    }

    pub fn from_arc(rd: Arc<RootDatum>) -> Self {
        let k = rd.semisimple_rank();
        let affine_node = |c: usize| {
            let r = rd.highest_roots()[c];
            AffineElt { translation: Coweight(rd.positive_coroots()[r].clone()), finite: rd.root_reflection(r) }
        };
        let mut nodes = Vec::new();
        let mut node_component = Vec::new();
        let comp_of = |i: usize| rd.components().iter().position(|c| c.contains(&i)).unwrap_or(0);
        if k > 0 {
            nodes.push(affine_node(0));
            node_component.push(0);
            for i in 0..k {
                nodes.push(AffineElt { translation: Coweight::zero(rd.rank()), finite: rd.simple_reflection(i) });
                node_component.push(comp_of(i));
            }
            for c in 1..rd.components().len() {
                nodes.push(affine_node(c));
                node_component.push(c);
            }
        }
        let mut w = Self { rd, nodes, node_component, omega_gens: Vec::new() };
        let mut gens = BTreeSet::new();
        for j in 0..w.rd.rank() {
            let mut e = vec![0; w.rd.rank()];
            e[j] = 1;
            let (_, om) = w.reduced_word(&AffineElt::translation(Coweight(e)));
            if !om.is_identity() {
                gens.insert(om);
            }
        }
        w.omega_gens = gens.into_iter().collect();
        w
    }

    pub fn datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, s: NodeId) -> &AffineElt {
        &self.nodes[s]
    }

    /// Whether node `s` is the affine reflection of its component.
    pub fn is_affine_node(&self, s: NodeId) -> bool {
        s == 0 || s > self.rd.semisimple_rank()
    }

    pub fn node_component(&self, s: NodeId) -> usize {
        self.node_component[s]
    }

    /// The facet of all finite simple reflections (a special vertex).
    pub fn special_facet(&self) -> Facet {
        Facet::new(1..=self.rd.semisimple_rank())
    }

    /// Length-zero lifts of the classes of the standard basis vectors.
    pub fn omega_generators(&self) -> &[AffineElt] {
        &self.omega_gens
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt::identity(self.rd.rank())
    }

    pub fn from_finite(&self, w: FiniteWeylElt) -> AffineElt {
        AffineElt { translation: Coweight::zero(self.rd.rank()), finite: w }
    }

    /// Checks that `x` is an element of this group (dimensions and handle).
    pub fn validate(&self, x: &AffineElt) -> Result<()> {
        if x.translation.rank() != self.rd.rank() || x.finite.index() >= self.rd.weyl_order() {
            return Err(Error::MismatchedDatum);
        }
        Ok(())
    }

    pub fn mul(&self, x: &AffineElt, y: &AffineElt) -> AffineElt {
        AffineElt {
            translation: x.translation.add(&self.rd.act(x.finite, &y.translation)),
            finite: self.rd.mul(x.finite, y.finite),
        }
    }

    pub fn inverse(&self, x: &AffineElt) -> AffineElt {
        let wi = self.rd.weyl_inverse(x.finite);
        AffineElt { translation: self.rd.act(wi, &x.translation).neg(), finite: wi }
    }

    pub fn left_mul_node(&self, s: NodeId, x: &AffineElt) -> AffineElt {
        self.mul(&self.nodes[s], x)
    }

    pub fn right_mul_node(&self, x: &AffineElt, s: NodeId) -> AffineElt {
        self.mul(x, &self.nodes[s])
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, x: &AffineElt) -> usize {
        let key = self.rd.weyl_key(x.finite);
        let lambda = x.translation.coords();
        let mut len = 0i64;
        for alpha in self.rd.positive_roots() {
            let p = lattice::dot(alpha, lambda);
            len += if lattice::dot(alpha, key) > 0 { p.abs() } else { (p - 1).abs() };
        }
        len as usize
    }

    /// Weighted length `l_L(x)`: the sum of `L(s)` along a reduced word.
    pub fn weighted_length(&self, x: &AffineElt, params: &ParamSystem) -> usize {
        if params.is_equal_parameter() {
            return self.length(x);
        }
        self.reduced_word(x).0.iter().map(|&s| params.weight(s) as usize).sum()
    }

    pub fn is_left_descent(&self, s: NodeId, x: &AffineElt) -> bool {
        self.length(&self.left_mul_node(s, x)) < self.length(x)
    }

    pub fn is_right_descent(&self, x: &AffineElt, s: NodeId) -> bool {
        self.length(&self.right_mul_node(x, s)) < self.length(x)
    }

    /// `x = s_{i_1} ... s_{i_k} * omega` with the lexicographically least
    /// reduced word; `omega` has length zero.
    pub fn reduced_word(&self, x: &AffineElt) -> (Vec<NodeId>, AffineElt) {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (s, next) = (0..self.nodes.len())
                .map(|s| (s, self.left_mul_node(s, &cur)))
                .find(|(_, y)| self.length(y) < len)
                .expect("an element of positive length has a left descent");
            word.push(s);
            cur = next;
            len -= 1;
        }
        (word, cur)
    }

    /// Image of the translation part in `X_*(T) / Q^vee`.
    pub fn omega_component(&self, x: &AffineElt) -> OmegaElt {
        OmegaElt(self.rd.omega_class(&x.translation))
    }

    /// Sort key `(length, word, omega)` used for every ordered output.
    pub fn order_key(&self, x: &AffineElt) -> (usize, Vec<NodeId>, OmegaElt) {
        let (word, _) = self.reduced_word(x);
        (word.len(), word, self.omega_component(x))
    }

    pub fn sort_elements(&self, xs: &mut Vec<AffineElt>) {
        let mut keyed: Vec<_> = xs.drain(..).map(|x| (self.order_key(&x), x)).collect();
        keyed.sort();
        xs.extend(keyed.into_iter().map(|(_, x)| x));
    }

    /// Order of `s t`, or `None` if it exceeds 12 (infinite in practice).
    pub fn braid_order(&self, s: NodeId, t: NodeId) -> Option<usize> {
        let st = self.mul(&self.nodes[s], &self.nodes[t]);
        let mut cur = st.clone();
        for m in 1..=12 {
            if cur.is_identity() {
                return Some(m);
            }
            cur = self.mul(&cur, &st);
        }
        None
    }

    /// The node `omega s omega^{-1}` for a length-zero `omega`.
    pub fn conjugate_node(&self, omega: &AffineElt, s: NodeId) -> NodeId {
        let c = self.mul(&self.mul(omega, &self.nodes[s]), &self.inverse(omega));
        self.nodes.iter().position(|n| *n == c).expect("length-zero elements permute the simple affine reflections")
    }

    /// Bruhat order on `W`: same `Omega`-component and `W_aff`-parts
    /// comparable.
    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> bool {
        if self.omega_component(x) != self.omega_component(y) {
            return false;
        }
        let mut x = x.clone();
        let mut y = y.clone();
        let mut lx = self.length(&x);
        let mut ly = self.length(&y);
        loop {
            if lx >= ly {
                return lx == ly && x == y;
            }
            let s =
                (0..self.nodes.len()).find(|&s| self.length(&self.left_mul_node(s, &y)) < ly).expect("positive length");
            y = self.left_mul_node(s, &y);
            ly -= 1;
            let sx = self.left_mul_node(s, &x);
            let lsx = self.length(&sx);
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
        }
    }

    /// `{x : x <= y}`, via products of subwords of one reduced word of `y`,
    /// sorted by [`order_key`](Self::order_key).
    pub fn lower_cone(&self, y: &AffineElt) -> Vec<AffineElt> {
        let (word, omega) = self.reduced_word(y);
        self.cone_from_word(&word, &omega)
    }

    /// Lower cone from an explicit reduced expression `word * omega`.
    pub fn cone_from_word(&self, word: &[NodeId], omega: &AffineElt) -> Vec<AffineElt> {
        let mut set = BTreeSet::new();
        set.insert(omega.clone());
        for &s in word.iter().rev() {
            let new: Vec<AffineElt> = set.iter().map(|z| self.left_mul_node(s, z)).collect();
            set.extend(new);
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        self.sort_elements(&mut out);
        out
    }

    /// `Adm(mu)`: union of the lower cones of `t_lambda`, `lambda` in the
    /// Weyl orbit of `mu`.
    pub fn admissible_set(&self, mu: &Coweight) -> Vec<AffineElt> {
        let mut set = BTreeSet::new();
        for lambda in self.rd.weyl_orbit(mu) {
            set.extend(self.lower_cone(&AffineElt::translation(lambda)));
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        self.sort_elements(&mut out);
        out
    }

    pub fn check_facet(&self, f: &Facet) -> Result<()> {
        if let Some(s) = f.nodes().find(|&s| s >= self.nodes.len()) {
            return Err(Error::InvalidInput(format!(
                "facet node s{s} does not exist ({} has nodes s0..s{})",
                self.rd.name(),
                self.nodes.len().saturating_sub(1)
            )));
        }
        Ok(())
    }

    /// All elements of `W_f`, sorted; fails if more than `cap` are found.
    pub fn facet_elements(&self, f: &Facet, cap: usize) -> Result<Vec<AffineElt>> {
        self.check_facet(f)?;
        // a facet holding every node of some component generates an
        // infinite affine Weyl group
        for c in 0..self.rd.components().len() {
            let all = (0..self.nodes.len()).filter(|&s| self.node_component[s] == c).all(|s| f.contains(s));
            if all {
                return Err(Error::InfiniteFacet { cap });
            }
        }
        let mut seen = BTreeSet::new();
        seen.insert(self.identity());
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for s in f.nodes() {
                let y = self.right_mul_node(&x, s);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::InfiniteFacet { cap });
                    }
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<AffineElt> = seen.into_iter().collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// `P_f = sum_{w in W_f} q^{l_L(w)}` as a polynomial in `v`.
    pub fn poincare(&self, f: &Facet, params: &ParamSystem) -> Result<LaurentPoly> {
        let elts = self.facet_elements(f, FACET_CAP)?;
        Ok(elts.iter().map(|w| LaurentPoly::v_pow(2 * self.weighted_length(w, params) as i32)).sum())
    }

    /// Unique minimal-length element of `W_f x W_f`.
    pub fn double_coset_min(&self, x: &AffineElt, f: &Facet) -> Result<AffineElt> {
        self.check_facet(f)?;
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        'outer: loop {
            for s in f.nodes() {
                let y = self.left_mul_node(s, &cur);
                let ly = self.length(&y);
                if ly < len {
                    cur = y;
                    len = ly;
                    continue 'outer;
                }
                let y = self.right_mul_node(&cur, s);
                let ly = self.length(&y);
                if ly < len {
                    cur = y;
                    len = ly;
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// `W_f \ Adm(mu) / W_f`, as minimal representatives in sorted order.
    pub fn admissible_set_parahoric(&self, mu: &Coweight, f: &Facet) -> Result<Vec<AffineElt>> {
        self.facet_elements(f, FACET_CAP)?;
        let mut set = BTreeSet::new();
        for x in self.admissible_set(mu) {
            set.insert(self.double_coset_min(&x, f)?);
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    // ---- rendering ----

    pub fn node_label(&self, s: NodeId) -> String {
        format!("s{s}")
    }

    /// `t[1,0]*s1`: the translation followed by a reduced word of the
    /// finite part in the finite simple reflections.
    pub fn format_elt(&self, x: &AffineElt) -> String {
        let mut out = format!("t{}", x.translation);
        for &i in self.rd.weyl_word(x.finite) {
            out.push_str(&format!("*s{}", i + 1));
        }
        out
    }

    /// `s0.s1.w[1]`: reduced word followed by the `Omega` label when it is
    /// nontrivial; `e` for the identity.
    pub fn format_word(&self, x: &AffineElt) -> String {
        let (word, omega) = self.reduced_word(x);
        let mut parts: Vec<String> = word.iter().map(|&s| self.node_label(s)).collect();
        if !omega.is_identity() {
            parts.push(format!("w[{}]", self.omega_component(&omega)));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(".")
        }
    }

    /// Parses the `t[...]*s1*s2` form.
    pub fn parse_elt(&self, text: &str) -> Result<AffineElt> {
        let bad = || Error::InvalidInput(format!("cannot parse element `{text}` (expected e.g. t[1,0]*s1)"));
        let mut parts = text.trim().split('*');
        let head = parts.next().ok_or_else(bad)?.trim();
        let inner = head.strip_prefix("t[").and_then(|h| h.strip_suffix(']')).ok_or_else(bad)?;
        let coords: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|c| c.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        let translation = self.rd.coweight(&coords)?;
        let mut finite = FiniteWeylElt::IDENTITY;
        for p in parts {
            let i: usize = p.trim().strip_prefix('s').and_then(|n| n.parse().ok()).ok_or_else(bad)?;
            if i == 0 || i > self.rd.semisimple_rank() {
                return Err(bad());
            }
            finite = self.rd.mul(finite, self.rd.simple_reflection(i - 1));
        }
        Ok(AffineElt { translation, finite })
    }
}

/// Map from each node to its image under conjugation by `omega`.
pub fn omega_action(w: &AffineWeylGroup, omega: &AffineElt) -> BTreeMap<NodeId, NodeId> {
    (0..w.num_nodes()).map(|s| (s, w.conjugate_node(omega, s))).collect()
}
