//! The Iwahori-Hecke algebra of `(W, L)` over `Z[v, v^-1]` in the `T_w` basis.
//!
//! The coefficient of `T_w` is read as the value of the corresponding
//! bi-Iwahori-invariant function on the double coset of `w` (Iwahori volume 1).

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::affweyl::{AffineElt, AffineWeylGroup, Facet, NodeId, ParamSystem, FACET_CAP};
use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, PolyFraction};

/// Finitely supported `AffineElt -> LaurentPoly`; no stored coefficient is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<AffineElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: AffineElt) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    pub fn term(x: AffineElt, c: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(x, c);
        h
    }

    pub fn from_terms<I: IntoIterator<Item = (AffineElt, LaurentPoly)>>(terms: I) -> Self {
        let mut h = Self::zero();
        for (x, c) in terms {
            h.add_term(x, c);
        }
        h
    }

    pub fn add_term(&mut self, x: AffineElt, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &AffineElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &AffineElt> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(x, a)| (x.clone(), a * c)))
    }

    pub fn add(&self, other: &HeckeElt) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), -c);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &HeckeElt, c: &LaurentPoly) {
        for (x, a) in &other.terms {
            self.add_term(x.clone(), a * c);
        }
    }
}

/// Value table of a central element at parahoric level `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParahoricFn {
    pub facet: Facet,
    /// `P_f(q) = sum_{w in W_f} q^{l_L(w)}`.
    pub poincare: LaurentPoly,
    /// Coefficients of `h * e_f`, one per double coset, keyed by the
    /// minimal representative.
    pub values: BTreeMap<AffineElt, PolyFraction>,
    /// Coefficients of `P_f * (h * e_f) = h * sum_{w in W_f} T_w`.
    pub integral: BTreeMap<AffineElt, LaurentPoly>,
}

#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    group: AffineWeylGroup,
    params: ParamSystem,
}

impl HeckeAlgebra {
    pub fn new(group: AffineWeylGroup, params: ParamSystem) -> Self {
        Self { group, params }
    }

    /// Equal parameters `L = 1`.
    pub fn equal(group: AffineWeylGroup) -> Self {
        let params = ParamSystem::equal(&group);
        Self { group, params }
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn params(&self) -> &ParamSystem {
        &self.params
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::basis(self.group.identity())
    }

    pub fn check(&self, h: &HeckeElt) -> Result<()> {
        h.support().try_for_each(|x| self.group.validate(x))
    }

    /// `h * T_s`.
    pub fn right_mul_node(&self, h: &HeckeElt, s: NodeId) -> HeckeElt {
        let q = self.params.q_s(s);
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let xs = self.group.right_mul_node(x, s);
            if self.group.length(&xs) > self.group.length(x) {
                out.add_term(xs, c.clone());
            } else {
                out.add_term(x.clone(), c * &q_minus_one);
                out.add_term(xs, c * &q);
            }
        }
        out
    }

    /// `T_s * h`.
    pub fn left_mul_node(&self, s: NodeId, h: &HeckeElt) -> HeckeElt {
        let q = self.params.q_s(s);
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let sx = self.group.left_mul_node(s, x);
            if self.group.length(&sx) > self.group.length(x) {
                out.add_term(sx, c.clone());
            } else {
                out.add_term(x.clone(), c * &q_minus_one);
                out.add_term(sx, c * &q);
            }
        }
        out
    }

    /// `h * T_s^{-1}`.
    pub fn right_mul_node_inv(&self, h: &HeckeElt, s: NodeId) -> HeckeElt {
        let w = self.params.weight(s) as i32;
        let q_inv = LaurentPoly::v_pow(-2 * w);
        let q_inv_minus_one = &q_inv - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let xs = self.group.right_mul_node(x, s);
            if self.group.length(&xs) > self.group.length(x) {
                out.add_term(xs, c * &q_inv);
                out.add_term(x.clone(), c * &q_inv_minus_one);
            } else {
                out.add_term(xs, c.clone());
            }
        }
        out
    }

    /// `h * T_y` for `y` of length zero.
    pub fn right_mul_omega(&self, h: &HeckeElt, y: &AffineElt) -> HeckeElt {
        HeckeElt::from_terms(h.terms().map(|(x, c)| (self.group.mul(x, y), c.clone())))
    }

    /// `T_y * h` for `y` of length zero.
    pub fn left_mul_omega(&self, y: &AffineElt, h: &HeckeElt) -> HeckeElt {
        HeckeElt::from_terms(h.terms().map(|(x, c)| (self.group.mul(y, x), c.clone())))
    }

    /// `h * T_y`.
    pub fn right_mul_basis(&self, h: &HeckeElt, y: &AffineElt) -> HeckeElt {
        let (word, omega) = self.group.reduced_word(y);
        let mut cur = h.clone();
        for s in word {
            cur = self.right_mul_node(&cur, s);
        }
        self.right_mul_omega(&cur, &omega)
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        self.check(a)?;
        self.check(b)?;
        let mut out = HeckeElt::zero();
        for (y, c) in b.terms() {
            out.add_scaled(&self.right_mul_basis(a, y), c);
        }
        Ok(out)
    }

    /// `T_x^{-1}`, expanded in the `T` basis.
    pub fn inverse_basis(&self, x: &AffineElt) -> Result<HeckeElt> {
        self.group.validate(x)?;
        let (word, omega) = self.group.reduced_word(x);
        let mut cur = HeckeElt::basis(self.group.inverse(&omega));
        for &s in word.iter().rev() {
            cur = self.right_mul_node_inv(&cur, s);
        }
        Ok(cur)
    }

    /// `h * T_x^{-1}` without expanding the inverse separately.
    pub fn right_mul_inverse_basis(&self, h: &HeckeElt, x: &AffineElt) -> HeckeElt {
        let (word, omega) = self.group.reduced_word(x);
        let mut cur = self.right_mul_omega(h, &self.group.inverse(&omega));
        for &s in word.iter().rev() {
            cur = self.right_mul_node_inv(&cur, s);
        }
        cur
    }

    /// Commutes with every `T_s` and with the `Omega` generators.
    pub fn is_central(&self, h: &HeckeElt) -> bool {
        if self.check(h).is_err() {
            return false;
        }
        (0..self.group.num_nodes()).all(|s| self.right_mul_node(h, s) == self.left_mul_node(s, h))
            && self.group.omega_generators().iter().all(|om| self.right_mul_omega(h, om) == self.left_mul_omega(om, h))
    }

    /// `sum_{w in W_f} T_w`.
    pub fn facet_sum(&self, f: &Facet) -> Result<HeckeElt> {
        Ok(HeckeElt::from_terms(self.group.facet_elements(f, FACET_CAP)?.into_iter().map(|w| (w, LaurentPoly::one()))))
    }

    /// Value table of `h * e_f` with `e_f = P_f^{-1} sum_{W_f} T_w`.
    ///
    /// Requires `h` central; checks that the coefficients are constant on
    /// each `W_f` double coset.
    pub fn compress_to_parahoric(&self, h: &HeckeElt, f: &Facet) -> Result<ParahoricFn> {
        if !self.is_central(h) {
            return Err(Error::NotCentral);
        }
        let wf = self.group.facet_elements(f, FACET_CAP)?;
        let poincare = self.group.poincare(f, &self.params)?;
        let sum = HeckeElt::from_terms(wf.iter().map(|w| (w.clone(), LaurentPoly::one())));
        let g = self.mul(h, &sum)?;
        let mut reps: BTreeMap<AffineElt, LaurentPoly> = BTreeMap::new();
        for (x, c) in g.terms() {
            let m = self.group.double_coset_min(x, f)?;
            if let Some(prev) = reps.get(&m) {
                if prev != c {
                    return Err(Error::Inconsistency(format!(
                        "coefficients of {} and {} differ inside one double coset",
                        self.group.format_elt(&m),
                        self.group.format_elt(x)
                    )));
                }
            } else {
                reps.insert(m, c.clone());
            }
        }
        // every element of each coset must carry the same coefficient
        for (m, c) in &reps {
            for u in &wf {
                let um = self.group.mul(u, m);
                for w in &wf {
                    let x = self.group.mul(&um, w);
                    if &g.coeff(&x) != c {
                        return Err(Error::Inconsistency(format!(
                            "coefficient at {} is not constant on its double coset",
                            self.group.format_elt(&x)
                        )));
                    }
                }
            }
        }
        let values = reps
            .iter()
            .map(|(m, c)| Ok((m.clone(), PolyFraction::new(c.clone(), poincare.clone())?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ParahoricFn { facet: f.clone(), poincare, values, integral: reps })
    }

    /// Terms of `h` sorted by `(length, word, omega)`.
    pub fn sorted_terms<'a>(&self, h: &'a HeckeElt) -> Vec<(&'a AffineElt, &'a LaurentPoly)> {
        let mut keyed: Vec<_> = h.terms().map(|(x, c)| (self.group.order_key(x), x, c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, x, c)| (x, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Coweight, Preset, RootDatum};

    fn alg(f: Preset, n: usize) -> HeckeAlgebra {
        HeckeAlgebra::equal(AffineWeylGroup::new(RootDatum::preset(f, n).unwrap()))
    }

    fn t(h: &HeckeAlgebra, v: &[i64]) -> AffineElt {
        let x = AffineElt::translation(Coweight(v.to_vec()));
        h.group().validate(&x).unwrap();
        x
    }

    #[test]
    fn quadratic_relation() {
        let h = alg(Preset::GL, 2);
        let s = HeckeElt::basis(h.group().node(1).clone());
        let sq = h.mul(&s, &s).unwrap();
        let q = LaurentPoly::q();
        let expected =
            HeckeElt::from_terms([(h.group().node(1).clone(), &q - &LaurentPoly::one()), (h.group().identity(), q)]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn omega_products() {
        let h = alg(Preset::GL, 2);
        let om = h.group().omega_generators()[0].clone();
        let inv = h.group().inverse(&om);
        let p = h.mul(&HeckeElt::basis(om), &HeckeElt::basis(inv)).unwrap();
        assert_eq!(p, h.one());
    }

    #[test]
    fn inverse_round_trip() {
        let h = alg(Preset::GL, 2);
        let s = h.group().node(1).clone();
        let inv = h.inverse_basis(&s).unwrap();
        let qi = LaurentPoly::v_pow(-2);
        assert_eq!(
            inv,
            HeckeElt::from_terms([(s.clone(), qi.clone()), (h.group().identity(), &qi - &LaurentPoly::one())])
        );
        let x = t(&h, &[1, 0]);
        let p = h.mul(&HeckeElt::basis(x.clone()), &h.inverse_basis(&x).unwrap()).unwrap();
        assert_eq!(p, h.one());
        assert_eq!(h.inverse_basis(&h.group().identity()).unwrap(), h.one());
    }

    #[test]
    fn lengths_add_gives_basis_product() {
        let h = alg(Preset::GL, 2);
        let a = t(&h, &[1, 0]);
        let b = t(&h, &[0, 1]);
        let p = h.mul(&HeckeElt::basis(a.clone()), &HeckeElt::basis(b.clone())).unwrap();
        // l(t10) + l(t01) = 2 > 0 = l(t11): a genuine expansion
        assert!(p.len() > 1);
        let c = t(&h, &[2, 0]);
        let p = h.mul(&HeckeElt::basis(a.clone()), &HeckeElt::basis(a)).unwrap();
        assert_eq!(p, HeckeElt::basis(c));
    }

    #[test]
    fn centrality_examples() {
        let h = alg(Preset::GL, 2);
        assert!(h.is_central(&h.one()));
        assert!(!h.is_central(&HeckeElt::basis(h.group().node(1).clone())));
        assert!(h.is_central(&HeckeElt::basis(t(&h, &[1, 1]))));
    }

    #[test]
    fn compression_of_identity() {
        let h = alg(Preset::GL, 2);
        let f = Facet::new([1]);
        let c = h.compress_to_parahoric(&h.one(), &f).unwrap();
        assert_eq!(c.values.len(), 1);
        let v = &c.values[&h.group().identity()];
        assert_eq!(*v, PolyFraction::new(LaurentPoly::one(), LaurentPoly::one() + LaurentPoly::q()).unwrap());
        let iw = h.compress_to_parahoric(&HeckeElt::basis(t(&h, &[1, 1])), &Facet::iwahori()).unwrap();
        assert_eq!(iw.integral[&t(&h, &[1, 1])], LaurentPoly::one());
        assert_eq!(h.compress_to_parahoric(&HeckeElt::basis(h.group().node(1).clone()), &f), Err(Error::NotCentral));
    }

    #[test]
    fn facet_sum_is_quasi_idempotent() {
        let h = alg(Preset::Sp, 4);
        let f = Facet::new([1, 2]);
        let e = h.facet_sum(&f).unwrap();
        let p = h.group().poincare(&f, h.params()).unwrap();
        assert_eq!(h.mul(&e, &e).unwrap(), e.scale(&p));
    }
}
