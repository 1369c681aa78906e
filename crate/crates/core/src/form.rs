//! Invariant forms on the complexified dual Lie algebra: basis monomials
//! `α_S ∧ ᾱ_T` and finite linear combinations of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::scalar::GaussianRational;

/// Largest supported complex dimension; index sets are stored as bit masks.
pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(&self) -> usize {
        self.p + self.q
    }

    /// Dimension of `Λ^{p,q}` in complex dimension `n`.
    pub fn dim(&self, n: usize) -> usize {
        binomial(n, self.p) * binomial(n, self.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// The wedge monomial `α_{s1}∧…∧α_{sp}∧ᾱ_{t1}∧…∧ᾱ_{tq}` with ascending
/// index lists. Bit `i-1` of `holo` (resp. `anti`) marks `α_i` (resp. `ᾱ_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct BasisForm {
    holo: u32,
    anti: u32,
}

fn indices(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

fn mask_of(idx: &[usize]) -> Option<u32> {
    let mut m = 0u32;
    for &i in idx {
        if i == 0 || i > MAX_DIM || m & (1 << (i - 1)) != 0 {
            return None;
        }
        m |= 1 << (i - 1);
    }
    Some(m)
}

/// Number of pairs (a in `left`, b in `right`) with a > b.
fn inversions(left: u32, right: u32) -> u32 {
    let mut count = 0;
    let mut r = right;
    while r != 0 {
        let b = r.trailing_zeros();
        let above = if b >= 31 { 0 } else { !((1u32 << (b + 1)) - 1) };
        count += (left & above).count_ones();
        r &= r - 1;
    }
    count
}

impl BasisForm {
    pub const ONE: BasisForm = BasisForm { holo: 0, anti: 0 };

    /// Builds a monomial from 1-based index lists, which must be strictly
    /// increasing.
    pub fn new(holo: &[usize], anti: &[usize]) -> Option<Self> {
        if !holo.windows(2).all(|w| w[0] < w[1]) || !anti.windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        Some(BasisForm { holo: mask_of(holo)?, anti: mask_of(anti)? })
    }

    pub fn from_masks(holo: u32, anti: u32) -> Self {
        BasisForm { holo, anti }
    }

    pub fn holo_mask(&self) -> u32 {
        self.holo
    }

    pub fn anti_mask(&self) -> u32 {
        self.anti
    }

    pub fn holo(&self) -> Vec<usize> {
        indices(self.holo).collect()
    }

    pub fn anti(&self) -> Vec<usize> {
        indices(self.anti).collect()
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.holo.count_ones() as usize, self.anti.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        self.bidegree().total()
    }

    /// Largest generator index appearing, 0 for the unit monomial.
    pub fn max_index(&self) -> usize {
        32 - (self.holo | self.anti).leading_zeros() as usize
    }

    /// `self ∧ other` reduced to canonical order: `None` when an index
    /// repeats, otherwise `(negative, monomial)`.
    pub fn wedge(&self, other: &BasisForm) -> Option<(bool, BasisForm)> {
        if self.holo & other.holo != 0 || self.anti & other.anti != 0 {
            return None;
        }
        // move other's holomorphic block left past our antiholomorphic block,
        // then shuffle each block into ascending order
        let swaps = self.anti.count_ones() * other.holo.count_ones()
            + inversions(self.holo, other.holo)
            + inversions(self.anti, other.anti);
        Some((swaps % 2 == 1, BasisForm { holo: self.holo | other.holo, anti: self.anti | other.anti }))
    }

    /// `conj(α_S∧ᾱ_T) = (−1)^{|S||T|} α_T∧ᾱ_S`.
    pub fn conjugate(&self) -> (bool, BasisForm) {
        let sign = self.holo.count_ones() * self.anti.count_ones();
        (sign % 2 == 1, BasisForm { holo: self.anti, anti: self.holo })
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> BasisForm {
        BasisForm { holo: self.holo << offset, anti: self.anti << offset }
    }

    /// All monomials of bidegree `(p,q)` in dimension `n`, in canonical order.
    pub fn basis(n: usize, bideg: Bidegree) -> Vec<BasisForm> {
        let holos = subsets(n, bideg.p);
        let antis = subsets(n, bideg.q);
        let mut out = Vec::with_capacity(holos.len() * antis.len());
        for &h in &holos {
            for &a in &antis {
                out.push(BasisForm { holo: h, anti: a });
            }
        }
        out
    }

    /// All monomials of total degree `k`, ordered by bidegree `(k,0), (k-1,1), …`
    /// and canonically within each bidegree.
    pub fn basis_total(n: usize, k: usize) -> Vec<BasisForm> {
        (0..=k.min(n))
            .rev()
            .filter(|&p| k - p <= n)
            .flat_map(|p| BasisForm::basis(n, Bidegree::new(p, k - p)))
            .collect()
    }

    pub fn render(&self) -> String {
        if self.holo == 0 && self.anti == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> =
            indices(self.holo).map(|i| format!("a{i}")).chain(indices(self.anti).map(|i| format!("~a{i}"))).collect();
        parts.join("^")
    }
}

/// Bit masks of all `k`-subsets of `{1..n}`, in lexicographic order of the
/// sorted index lists.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

fn cmp_masks(a: u32, b: u32) -> Ordering {
    indices(a).cmp(indices(b))
}

impl Ord for BasisForm {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_masks(self.holo, other.holo).then_with(|| cmp_masks(self.anti, other.anti))
    }
}

impl PartialOrd for BasisForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A finite linear combination of basis monomials in complex dimension `n`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form {
    n: usize,
    terms: BTreeMap<BasisForm, GaussianRational>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        Form::monomial(n, BasisForm::ONE, c)
    }

    pub fn one(n: usize) -> Self {
        Form::scalar(n, GaussianRational::one())
    }

    pub fn monomial(n: usize, basis: BasisForm, c: GaussianRational) -> Self {
        let mut f = Form::zero(n);
        f.add_term(basis, c);
        f
    }

    /// `α_i`, 1-indexed.
    pub fn holo_generator(n: usize, i: usize) -> Self {
        Form::monomial(n, BasisForm::new(&[i], &[]).expect("index in range"), GaussianRational::one())
    }

    /// `ᾱ_i`, 1-indexed.
    pub fn anti_generator(n: usize, i: usize) -> Self {
        Form::monomial(n, BasisForm::new(&[], &[i]).expect("index in range"), GaussianRational::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BasisForm, GaussianRational)>) -> Self {
        let mut f = Form::zero(n);
        for (b, c) in terms {
            f.add_term(b, c);
        }
        f
    }

    /// Builds the form with coordinate vector `coords` on `basis`.
    pub fn from_coords(n: usize, basis: &[BasisForm], coords: &[GaussianRational]) -> Self {
        Form::from_terms(n, basis.iter().copied().zip(coords.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, basis: BasisForm, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisForm, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, basis: &BasisForm) -> GaussianRational {
        self.terms.get(basis).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coordinates on `basis`; terms outside `basis` are ignored.
    pub fn coords(&self, basis: &[BasisForm]) -> Vec<GaussianRational> {
        basis.iter().map(|b| self.coefficient(b)).collect()
    }

    /// Distinct bidegrees present, ascending.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut out: Vec<Bidegree> = self.terms.keys().map(|b| b.bidegree()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn component(&self, bideg: Bidegree) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(b, _)| b.bidegree() == bideg).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect() }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, -c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Form) {
        for (b, c) in &other.terms {
            self.add_term(*b, c.clone());
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&-GaussianRational::one())
    }

    /// Same terms, viewed in a larger ambient dimension.
    pub fn embed(&self, n: usize) -> Form {
        debug_assert!(n >= self.n);
        Form { n, terms: self.terms.clone() }
    }

    /// Reindexes generators by `+offset` into dimension `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Form {
        Form { n, terms: self.terms.iter().map(|(b, c)| (b.shifted(offset), c.clone())).collect() }
    }

    /// DSL rendering: `(c)*a1^~a2 + …`, or `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms.iter().map(|(b, c)| format!("({c})*{}", b.render())).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct TermRef<'a>(&'a BasisForm, &'a GaussianRational);

impl Serialize for TermRef<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("monomial", &self.0.render())?;
        m.serialize_entry("coeff", self.1)?;
        m.end()
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (b, c) in &self.terms {
            seq.serialize_element(&TermRef(b, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_are_binomial_products() {
        for n in 1..=5 {
            for p in 0..=n {
                for q in 0..=n {
                    let b = BasisForm::basis(n, Bidegree::new(p, q));
                    assert_eq!(b.len(), binomial(n, p) * binomial(n, q));
                    assert!(b.windows(2).all(|w| w[0] < w[1]), "basis not sorted");
                }
            }
            let total: usize = (0..=2 * n).map(|k| BasisForm::basis_total(n, k).len()).sum();
            assert_eq!(total, 1 << (2 * n));
        }
    }

    #[test]
    fn lexicographic_order() {
        let a = BasisForm::new(&[1, 3], &[]).unwrap();
        let b = BasisForm::new(&[2], &[]).unwrap();
        let c = BasisForm::new(&[1, 2], &[]).unwrap();
        assert!(c < a && a < b);
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(BasisForm::new(&[2, 1], &[]).is_none());
        assert!(BasisForm::new(&[1, 1], &[]).is_none());
        assert!(BasisForm::new(&[0], &[]).is_none());
        assert!(BasisForm::new(&[], &[MAX_DIM + 1]).is_none());
    }

    #[test]
    fn monomial_wedge_signs() {
        let a1 = BasisForm::new(&[1], &[]).unwrap();
        let b1 = BasisForm::new(&[], &[1]).unwrap();
        assert_eq!(a1.wedge(&a1), None);
        // ~a1 ^ a1 = -(a1 ^ ~a1)
        assert_eq!(b1.wedge(&a1), Some((true, BasisForm::new(&[1], &[1]).unwrap())));
        let x = BasisForm::new(&[1], &[2]).unwrap();
        let y = BasisForm::new(&[2], &[1]).unwrap();
        assert_eq!(x.wedge(&y), Some((false, BasisForm::new(&[1, 2], &[1, 2]).unwrap())));
    }

    #[test]
    fn component_split_reconstitutes() {
        let n = 2;
        let mut f = Form::zero(n);
        f.add_term(BasisForm::new(&[1], &[]).unwrap(), GaussianRational::from_int(1, 2));
        f.add_term(BasisForm::new(&[], &[2]).unwrap(), GaussianRational::from_int(3, 0));
        f.add_term(BasisForm::new(&[1], &[2]).unwrap(), GaussianRational::from_int(0, -1));
        let mut back = Form::zero(n);
        for bd in f.bidegrees() {
            back.add_assign(&f.component(bd));
        }
        assert_eq!(back, f);
        assert_eq!(f.bidegrees().len(), 3);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let b = BasisForm::new(&[1], &[]).unwrap();
        let mut f = Form::monomial(1, b, GaussianRational::one());
        f.add_term(b, -GaussianRational::one());
        assert!(f.is_zero());
        assert_eq!(f, Form::zero(1));
    }
}
