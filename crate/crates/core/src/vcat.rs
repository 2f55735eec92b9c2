//! Finite V-categories, V-functors and V-bifunctors.
//!
//! Hom tables are materialised. Functor categories are enumerated by
//! backtracking over object images, pruning on partial functoriality, and
//! list their objects in lexicographic order of the image tuple.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::quantale::{Elem, QuantaleRef};

/// Index of an object in a [`VCategory`].
pub type Obj = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("malformed hom table: {0}")]
    Shape(String),
    #[error("reflexivity fails at object {0}: k ≰ X(x,x)")]
    ReflexivityFail(Obj),
    #[error("transitivity fails at ({0}, {1}, {2}): X(x,y) ⊗ X(y,z) ≰ X(x,z)")]
    TransitivityFail(Obj, Obj, Obj),
    #[error("categories are enriched over different quantale instances")]
    QuantaleMismatch,
    #[error("enumeration budget exceeded: {what} limit {limit} (search space {n}^{m})")]
    BudgetExceeded {
        what: &'static str,
        limit: u64,
        n: usize,
        m: usize,
    },
}

/// Limits for functor-category enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Partial assignments visited by the backtracking search.
    pub max_visits: u64,
    /// Objects of the resulting functor category.
    pub max_objects: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_visits: 1_000_000,
            max_objects: 50_000,
        }
    }
}

impl Budget {
    pub fn with_max_objects(max_objects: usize) -> Self {
        Budget {
            max_objects,
            ..Budget::default()
        }
    }
}

/// A finite category enriched in a quantale. Cheap to clone.
#[derive(Clone)]
pub struct VCategory {
    quantale: QuantaleRef,
    labels: Arc<[String]>,
    hom: Arc<[Elem]>,
}

impl fmt::Debug for VCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VCategory")
            .field("objects", &self.labels)
            .field("hom", &self.hom_table())
            .finish()
    }
}

impl VCategory {
    /// Validates `k ≤ X(x,x)` and `X(x,y) ⊗ X(y,z) ≤ X(x,z)`.
    pub fn new(
        quantale: QuantaleRef,
        labels: Vec<String>,
        hom: Vec<Vec<Elem>>,
    ) -> Result<Self, CategoryError> {
        let m = labels.len();
        if hom.len() != m || hom.iter().any(|row| row.len() != m) {
            return Err(CategoryError::Shape(format!("hom must be {m}x{m}")));
        }
        if let Some(bad) = hom.iter().flatten().find(|&&e| e >= quantale.len()) {
            return Err(CategoryError::Shape(format!(
                "hom entry {bad} is not a quantale element"
            )));
        }
        let cat = Self::from_flat(quantale, labels, hom.into_iter().flatten().collect());
        cat.validate()?;
        Ok(cat)
    }

    pub(crate) fn from_flat(quantale: QuantaleRef, labels: Vec<String>, hom: Vec<Elem>) -> Self {
        debug_assert_eq!(hom.len(), labels.len() * labels.len());
        VCategory {
            quantale,
            labels: labels.into(),
            hom: hom.into(),
        }
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let q = &self.quantale;
        let m = self.len();
        for x in 0..m {
            if !q.is_unit_below(self.hom(x, x)) {
                return Err(CategoryError::ReflexivityFail(x));
            }
        }
        for x in 0..m {
            for y in 0..m {
                let xy = self.hom(x, y);
                for z in 0..m {
                    if !q.leq(q.tensor(xy, self.hom(y, z)), self.hom(x, z)) {
                        return Err(CategoryError::TransitivityFail(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// The quantale as a category over itself, `V(x,y) = x → y`.
    pub fn of_quantale(q: &QuantaleRef) -> Self {
        let n = q.len();
        let hom = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| q.residuate(x, y))
            .collect();
        Self::from_flat(q.clone(), q.labels().to_vec(), hom)
    }

    /// The free V-category on a set: `k` on the diagonal, bottom elsewhere.
    pub fn discrete(q: &QuantaleRef, labels: Vec<String>) -> Self {
        let m = labels.len();
        let hom = (0..m * m)
            .map(|i| if i / m == i % m { q.unit() } else { q.bottom() })
            .collect();
        Self::from_flat(q.clone(), labels, hom)
    }

    /// The one-object category with hom `k`.
    pub fn singleton(q: &QuantaleRef) -> Self {
        Self::discrete(q, vec!["*".into()])
    }

    pub fn quantale(&self) -> &QuantaleRef {
        &self.quantale
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Obj) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> Elem {
        self.hom[x * self.len() + y]
    }

    pub fn hom_table(&self) -> Vec<Vec<Elem>> {
        let m = self.len();
        if m == 0 {
            return Vec::new();
        }
        self.hom.chunks(m).map(|r| r.to_vec()).collect()
    }

    /// The representable row `X(x, −)`.
    pub fn row(&self, x: Obj) -> &[Elem] {
        let m = self.len();
        &self.hom[x * m..(x + 1) * m]
    }

    /// The representable column `X(−, x)`.
    pub fn column(&self, x: Obj) -> Vec<Elem> {
        self.objects().map(|y| self.hom(y, x)).collect()
    }

    /// Whether both categories live over the same quantale instance.
    pub fn same_base(&self, other: &VCategory) -> bool {
        Arc::ptr_eq(&self.quantale, &other.quantale)
    }

    /// Same base, same size and identical hom tables.
    pub fn same_table(&self, other: &VCategory) -> bool {
        self.same_base(other) && self.len() == other.len() && self.hom == other.hom
    }

    pub(crate) fn check_base(&self, other: &VCategory) -> Result<(), CategoryError> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(CategoryError::QuantaleMismatch)
        }
    }

    /// Underlying preorder: `x ≤ y` iff `k ≤ X(x,y)`.
    #[inline]
    pub fn le(&self, x: Obj, y: Obj) -> bool {
        self.quantale.is_unit_below(self.hom(x, y))
    }

    #[inline]
    pub fn is_iso(&self, x: Obj, y: Obj) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    pub fn underlying_order(&self) -> Vec<Vec<bool>> {
        self.objects()
            .map(|x| self.objects().map(|y| self.le(x, y)).collect())
            .collect()
    }

    /// All ordered pairs `(x, y)` with `x ≅ y`, including the diagonal.
    pub fn iso_pairs(&self) -> Vec<(Obj, Obj)> {
        self.objects()
            .flat_map(|x| self.objects().map(move |y| (x, y)))
            .filter(|&(x, y)| self.is_iso(x, y))
            .collect()
    }

    pub fn is_separated(&self) -> bool {
        self.iso_pairs().into_iter().all(|(x, y)| x == y)
    }

    /// Least index in the isomorphism class of `x`.
    pub fn canonical(&self, x: Obj) -> Obj {
        self.objects().find(|&y| self.is_iso(x, y)).unwrap_or(x)
    }

    pub fn dual(&self) -> VCategory {
        let m = self.len();
        let hom = (0..m * m).map(|i| self.hom(i % m, i / m)).collect();
        VCategory {
            quantale: self.quantale.clone(),
            labels: self.labels.clone(),
            hom,
        }
    }

    /// Cartesian product with `∧` homs. Pair `(x, y)` has index `x·|Y| + y`.
    pub fn product(&self, other: &VCategory) -> Result<VCategory, CategoryError> {
        let q = self.quantale.clone();
        self.pair_category(other, |a, b| q.meet2(a, b))
    }

    /// Tensor product with `⊗` homs. Pair `(x, y)` has index `x·|Y| + y`.
    pub fn tensor_product(&self, other: &VCategory) -> Result<VCategory, CategoryError> {
        let q = self.quantale.clone();
        self.pair_category(other, |a, b| q.tensor(a, b))
    }

    fn pair_category(
        &self,
        other: &VCategory,
        combine: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<VCategory, CategoryError> {
        self.check_base(other)?;
        let (m, n) = (self.len(), other.len());
        let labels = (0..m * n)
            .map(|i| format!("({},{})", self.label(i / n), other.label(i % n)))
            .collect();
        let mut hom = Vec::with_capacity(m * n * m * n);
        for i in 0..m * n {
            for j in 0..m * n {
                hom.push(combine(self.hom(i / n, j / n), other.hom(i % n, j % n)));
            }
        }
        Ok(Self::from_flat(self.quantale.clone(), labels, hom))
    }

    /// The full subcategory on `objects`, in the given order.
    pub fn full_subcategory(&self, objects: &[Obj]) -> VCategory {
        let labels = objects.iter().map(|&x| self.labels[x].clone()).collect();
        let hom = objects
            .iter()
            .flat_map(|&x| objects.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.hom(x, y))
            .collect();
        Self::from_flat(self.quantale.clone(), labels, hom)
    }
}

/// The V-category `Y^X` of V-functors together with the enumerated maps.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    category: VCategory,
    source: VCategory,
    target: VCategory,
    maps: Arc<Vec<Vec<Obj>>>,
    index: Arc<HashMap<Vec<Obj>, Obj>>,
}

impl FunctorCategory {
    pub fn category(&self) -> &VCategory {
        &self.category
    }

    pub fn source(&self) -> &VCategory {
        &self.source
    }

    pub fn target(&self) -> &VCategory {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<Obj>] {
        &self.maps
    }

    /// Image tuple of functor-category object `f`.
    pub fn map(&self, f: Obj) -> &[Obj] {
        &self.maps[f]
    }

    /// Index of the functor with the given image tuple, if it is a V-functor.
    pub fn position(&self, map: &[Obj]) -> Option<Obj> {
        self.index.get(map).copied()
    }

    /// `(Y^X)^op`, presented as `(Y^op)^{X^op}` on the same maps.
    pub fn dual(&self) -> FunctorCategory {
        FunctorCategory {
            category: self.category.dual(),
            source: self.source.dual(),
            target: self.target.dual(),
            maps: self.maps.clone(),
            index: self.index.clone(),
        }
    }
}

/// Enumerates all V-functors `source → target`.
pub fn functor_category(
    source: &VCategory,
    target: &VCategory,
    budget: Budget,
) -> Result<FunctorCategory, CategoryError> {
    source.check_base(target)?;
    let q = source.quantale().clone();
    let (m, n) = (source.len(), target.len());
    let exceeded = |what, limit| CategoryError::BudgetExceeded { what, limit, n, m };

    let mut maps: Vec<Vec<Obj>> = Vec::new();
    let mut current: Vec<Obj> = Vec::with_capacity(m);
    let mut visits: u64 = 0;

    // iterative backtracking keeps lexicographic order
    let mut next_candidate: Vec<Obj> = vec![0; m + 1];
    let consistent = |current: &[Obj], cand: Obj| {
        let i = current.len();
        current.iter().enumerate().all(|(j, &fj)| {
            q.leq(source.hom(j, i), target.hom(fj, cand)) && q.leq(source.hom(i, j), target.hom(cand, fj))
        }) && q.leq(source.hom(i, i), target.hom(cand, cand))
    };
    if m == 0 {
        maps.push(Vec::new());
    } else if n > 0 {
        loop {
            let depth = current.len();
            if depth == m {
                if maps.len() >= budget.max_objects {
                    return Err(exceeded("objects", budget.max_objects as u64));
                }
                maps.push(current.clone());
                match current.pop() {
                    Some(last) => next_candidate[m - 1] = last + 1,
                    None => break,
                }
                continue;
            }
            let mut placed = false;
            while next_candidate[depth] < n {
                let cand = next_candidate[depth];
                visits += 1;
                if visits > budget.max_visits {
                    return Err(exceeded("visits", budget.max_visits));
                }
                if consistent(&current, cand) {
                    current.push(cand);
                    next_candidate[depth + 1] = 0;
                    placed = true;
                    break;
                }
                next_candidate[depth] += 1;
            }
            if !placed {
                match current.pop() {
                    Some(last) => next_candidate[depth - 1] = last + 1,
                    None => break,
                }
            }
        }
    }

    let len = maps.len();
    let mut hom = Vec::with_capacity(len * len);
    for f in &maps {
        for g in &maps {
            hom.push(q.meet(f.iter().zip(g).map(|(&fx, &gx)| target.hom(fx, gx))));
        }
    }
    let labels = maps
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&y| target.label(y)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let index = maps.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    Ok(FunctorCategory {
        category: VCategory::from_flat(q.clone(), labels, hom),
        source: source.clone(),
        target: target.clone(),
        maps: Arc::new(maps),
        index: Arc::new(index),
    })
}

/// A map of objects between two V-categories. Construction only checks
/// typing; use [`verify_vfunctor`] for the functoriality condition.
#[derive(Clone, Debug)]
pub struct VFunctor {
    source: VCategory,
    target: VCategory,
    map: Vec<Obj>,
}

impl VFunctor {
    pub fn new(source: VCategory, target: VCategory, map: Vec<Obj>) -> Result<Self, CategoryError> {
        source.check_base(&target)?;
        if map.len() != source.len() {
            return Err(CategoryError::Shape(format!(
                "functor map has {} entries for {} objects",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(CategoryError::Shape(format!("image {bad} is not a target object")));
        }
        Ok(VFunctor { source, target, map })
    }

    pub fn identity(x: &VCategory) -> Self {
        VFunctor {
            source: x.clone(),
            target: x.clone(),
            map: x.objects().collect(),
        }
    }

    pub fn source(&self) -> &VCategory {
        &self.source
    }

    pub fn target(&self) -> &VCategory {
        &self.target
    }

    pub fn map(&self) -> &[Obj] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Obj) -> Obj {
        self.map[x]
    }

    /// `f^op : X^op → Y^op`, the same object map.
    pub fn dual(&self) -> VFunctor {
        VFunctor {
            source: self.source.dual(),
            target: self.target.dual(),
            map: self.map.clone(),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &VFunctor) -> VFunctor {
        VFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        }
    }

    /// First pair `(x, y)` with `X(x,y) ≰ Y(fx,fy)`.
    pub fn functoriality_witness(&self) -> Option<(Obj, Obj)> {
        let q = self.source.quantale();
        self.source
            .objects()
            .flat_map(|x| self.source.objects().map(move |y| (x, y)))
            .find(|&(x, y)| !q.leq(self.source.hom(x, y), self.target.hom(self.map[x], self.map[y])))
    }

    /// `f ≤ g` pointwise in the underlying order of the target.
    pub fn le(&self, g: &VFunctor) -> bool {
        self.source.objects().all(|x| self.target.le(self.map[x], g.map[x]))
    }
}

pub fn verify_vfunctor(f: &VFunctor) -> bool {
    f.functoriality_witness().is_none()
}

pub fn is_fully_faithful(f: &VFunctor) -> bool {
    let x = f.source();
    x.objects()
        .all(|a| x.objects().all(|b| x.hom(a, b) == f.target().hom(f.apply(a), f.apply(b))))
}

pub fn is_essentially_surjective(f: &VFunctor) -> bool {
    let y = f.target();
    y.objects().all(|b| f.map().iter().any(|&fa| y.is_iso(b, fa)))
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence(f: &VFunctor) -> bool {
    verify_vfunctor(f) && is_fully_faithful(f) && is_essentially_surjective(f)
}

/// Checks `Y(fx, y) = X(x, gy)` for all `x, y`.
pub fn check_adjunction(f: &VFunctor, g: &VFunctor) -> bool {
    let (x_cat, y_cat) = (f.source(), f.target());
    if g.source().len() != y_cat.len() || g.target().len() != x_cat.len() {
        return false;
    }
    x_cat
        .objects()
        .all(|x| y_cat.objects().all(|y| y_cat.hom(f.apply(x), y) == x_cat.hom(x, g.apply(y))))
}

/// A map `left ⊗ right → target`, stored row-major by `(left, right)`.
#[derive(Clone, Debug)]
pub struct VBifunctor {
    left: VCategory,
    right: VCategory,
    target: VCategory,
    map: Vec<Obj>,
}

impl VBifunctor {
    pub fn new(
        left: VCategory,
        right: VCategory,
        target: VCategory,
        map: Vec<Vec<Obj>>,
    ) -> Result<Self, CategoryError> {
        left.check_base(&right)?;
        left.check_base(&target)?;
        if map.len() != left.len() || map.iter().any(|r| r.len() != right.len()) {
            return Err(CategoryError::Shape(format!(
                "bifunctor table must be {}x{}",
                left.len(),
                right.len()
            )));
        }
        if let Some(&bad) = map.iter().flatten().find(|&&z| z >= target.len()) {
            return Err(CategoryError::Shape(format!("image {bad} is not a target object")));
        }
        Ok(VBifunctor {
            left,
            right,
            target,
            map: map.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(left: VCategory, right: VCategory, target: VCategory, map: Vec<Obj>) -> Self {
        debug_assert_eq!(map.len(), left.len() * right.len());
        VBifunctor {
            left,
            right,
            target,
            map,
        }
    }

    pub fn left(&self) -> &VCategory {
        &self.left
    }

    pub fn right(&self) -> &VCategory {
        &self.right
    }

    pub fn target(&self) -> &VCategory {
        &self.target
    }

    #[inline]
    pub fn get(&self, x: Obj, y: Obj) -> Obj {
        self.map[x * self.right.len() + y]
    }

    pub fn table(&self) -> Vec<Vec<Obj>> {
        (0..self.left.len())
            .map(|x| (0..self.right.len()).map(|y| self.get(x, y)).collect())
            .collect()
    }

    /// Images of all pairs, row-major.
    pub fn images(&self) -> &[Obj] {
        &self.map
    }

    /// `φ^∂(y, x) = φ(x, y)`.
    pub fn partial_swap(&self) -> VBifunctor {
        let (m, n) = (self.left.len(), self.right.len());
        let map = (0..n * m).map(|i| self.get(i % m, i / m)).collect();
        VBifunctor::from_flat(self.right.clone(), self.left.clone(), self.target.clone(), map)
    }

    /// `φ^op : left^op ⊗ right^op → target^op`.
    pub fn dual(&self) -> VBifunctor {
        VBifunctor::from_flat(
            self.left.dual(),
            self.right.dual(),
            self.target.dual(),
            self.map.clone(),
        )
    }

    /// The same map as a V-functor out of the tensor product.
    pub fn as_functor(&self) -> VFunctor {
        let source = self
            .left
            .tensor_product(&self.right)
            .expect("bifunctor components share a base");
        VFunctor {
            source,
            target: self.target.clone(),
            map: self.map.clone(),
        }
    }

    /// A failing partial functoriality, as `(fixed side, fixed object, a, b)`.
    pub fn bifunctoriality_witness(&self) -> Option<BifunctorWitness> {
        let q = self.left.quantale();
        let t = &self.target;
        for y in self.right.objects() {
            for a in self.left.objects() {
                for b in self.left.objects() {
                    if !q.leq(self.left.hom(a, b), t.hom(self.get(a, y), self.get(b, y))) {
                        return Some(BifunctorWitness::Left { fixed_right: y, a, b });
                    }
                }
            }
        }
        for x in self.left.objects() {
            for a in self.right.objects() {
                for b in self.right.objects() {
                    if !q.leq(self.right.hom(a, b), t.hom(self.get(x, a), self.get(x, b))) {
                        return Some(BifunctorWitness::Right { fixed_left: x, a, b });
                    }
                }
            }
        }
        None
    }
}

/// Where a bifunctor fails one of its partial functorialities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "variable", rename_all = "snake_case")]
pub enum BifunctorWitness {
    /// `φ(−, y)` is not a V-functor: fails on `left(a, b)`.
    Left { fixed_right: Obj, a: Obj, b: Obj },
    /// `φ(x, −)` is not a V-functor: fails on `right(a, b)`.
    Right { fixed_left: Obj, a: Obj, b: Obj },
}

pub fn verify_bifunctor(phi: &VBifunctor) -> bool {
    phi.bifunctoriality_witness().is_none()
}
