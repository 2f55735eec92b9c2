//! Completeness of finite V-categories.
//!
//! A complete category is recognised as tensored, cotensored and
//! order-complete. Every universal object is located by matching its defining
//! representable against a hash of the category's rows (or columns), which
//! returns the least index of the isomorphism class.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::quantale::{Elem, QuantaleRef};
use crate::vcat::{
    functor_category, Budget, CategoryError, FunctorCategory, Obj, VBifunctor, VCategory, VFunctor,
};

/// Why a category is not complete.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "missing", rename_all = "snake_case")]
pub enum Incomplete {
    #[error("no tensor {v} ⋆ x{x}")]
    Tensor { v: Elem, x: Obj },
    #[error("no cotensor {v} ⤙ x{x}")]
    Cotensor { v: Elem, x: Obj },
    #[error("no join of x{a} and x{b}")]
    Join { a: Obj, b: Obj },
    #[error("no meet of x{a} and x{b}")]
    Meet { a: Obj, b: Obj },
    #[error("no bottom object")]
    Bottom,
    #[error("no top object")]
    Top,
    #[error("weight has no supremum")]
    Supremum,
    #[error("weight has no infimum")]
    Infimum,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletenessError {
    #[error("category is not complete: {0}")]
    NotComplete(Incomplete),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Shape(String),
    #[error("map {0:?} is not a V-functor of the expected functor category")]
    NotFunctor(Vec<Obj>),
}

/// A category together with the tables witnessing its completeness.
#[derive(Clone, Debug)]
pub struct CompleteCategory {
    category: VCategory,
    tensor: Vec<Obj>,
    cotensor: Vec<Obj>,
    join: Vec<Obj>,
    meet: Vec<Obj>,
    bottom: Obj,
    top: Obj,
    rows: HashMap<Vec<Elem>, Obj>,
    columns: HashMap<Vec<Elem>, Obj>,
}

/// Alias matching the name used for completeness certificates.
pub type CompletenessWitness = CompleteCategory;

fn first_index(vectors: impl Iterator<Item = Vec<Elem>>) -> HashMap<Vec<Elem>, Obj> {
    let mut map = HashMap::new();
    for (i, v) in vectors.enumerate() {
        map.entry(v).or_insert(i);
    }
    map
}

/// Searches tensors, cotensors and underlying joins and meets.
pub fn is_complete(x: &VCategory) -> Result<CompleteCategory, Incomplete> {
    let q = x.quantale().clone();
    let m = x.len();
    let rows = first_index(x.objects().map(|a| x.row(a).to_vec()));
    let columns = first_index(x.objects().map(|a| x.column(a)));

    let mut tensor = Vec::with_capacity(q.len() * m);
    let mut cotensor = Vec::with_capacity(q.len() * m);
    for v in q.elements() {
        for a in x.objects() {
            // X(v ⋆ a, y) = v → X(a, y)
            let row: Vec<Elem> = x.objects().map(|y| q.residuate(v, x.hom(a, y))).collect();
            tensor.push(*rows.get(&row).ok_or(Incomplete::Tensor { v, x: a })?);
            // X(y, v ⤙ a) = v → X(y, a)
            let col: Vec<Elem> = x.objects().map(|y| q.residuate(v, x.hom(y, a))).collect();
            cotensor.push(*columns.get(&col).ok_or(Incomplete::Cotensor { v, x: a })?);
        }
    }

    let order = x.underlying_order();
    let least = |cands: &[Obj]| cands.iter().copied().find(|&c| cands.iter().all(|&d| order[c][d]));
    let greatest = |cands: &[Obj]| cands.iter().copied().find(|&c| cands.iter().all(|&d| order[d][c]));
    let all: Vec<Obj> = x.objects().collect();
    let bottom = least(&all).ok_or(Incomplete::Bottom)?;
    let top = greatest(&all).ok_or(Incomplete::Top)?;
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    for a in 0..m {
        for b in a..m {
            let upper: Vec<Obj> = all.iter().copied().filter(|&u| order[a][u] && order[b][u]).collect();
            let j = least(&upper).ok_or(Incomplete::Join { a, b })?;
            let lower: Vec<Obj> = all.iter().copied().filter(|&l| order[l][a] && order[l][b]).collect();
            let w = greatest(&lower).ok_or(Incomplete::Meet { a, b })?;
            join[a * m + b] = j;
            join[b * m + a] = j;
            meet[a * m + b] = w;
            meet[b * m + a] = w;
        }
    }

    Ok(CompleteCategory {
        category: x.clone(),
        tensor,
        cotensor,
        join,
        meet,
        bottom,
        top,
        rows,
        columns,
    })
}

impl CompleteCategory {
    /// The quantale itself, `v ⋆ r = v ⊗ r` and `v ⤙ r = v → r`.
    pub fn of_quantale(q: &QuantaleRef) -> Self {
        is_complete(&VCategory::of_quantale(q)).expect("a quantale is complete over itself")
    }

    pub fn category(&self) -> &VCategory {
        &self.category
    }

    pub fn quantale(&self) -> &QuantaleRef {
        self.category.quantale()
    }

    pub fn len(&self) -> usize {
        self.category.len()
    }

    pub fn is_empty(&self) -> bool {
        self.category.is_empty()
    }

    #[inline]
    pub fn hom(&self, a: Obj, b: Obj) -> Elem {
        self.category.hom(a, b)
    }

    #[inline]
    pub fn tensor(&self, v: Elem, x: Obj) -> Obj {
        self.tensor[v * self.len() + x]
    }

    #[inline]
    pub fn cotensor(&self, v: Elem, x: Obj) -> Obj {
        self.cotensor[v * self.len() + x]
    }

    #[inline]
    pub fn join2(&self, a: Obj, b: Obj) -> Obj {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet2(&self, a: Obj, b: Obj) -> Obj {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> Obj {
        self.bottom
    }

    pub fn top(&self) -> Obj {
        self.top
    }

    /// Underlying join; the empty join is the bottom object.
    pub fn join<I: IntoIterator<Item = Obj>>(&self, items: I) -> Obj {
        items.into_iter().fold(self.bottom, |acc, x| self.join2(acc, x))
    }

    /// Underlying meet; the empty meet is the top object.
    pub fn meet<I: IntoIterator<Item = Obj>>(&self, items: I) -> Obj {
        items.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    /// `sup μ` for a weight `μ ∈ V^{X^op}`.
    pub fn sup(&self, mu: &[Elem]) -> Obj {
        let row = sup_row(&self.category, mu);
        *self.rows.get(&row).expect("complete categories have all suprema")
    }

    /// `inf λ` for a weight `λ ∈ V^X`.
    pub fn inf(&self, lambda: &[Elem]) -> Obj {
        let col = inf_column(&self.category, lambda);
        *self.columns.get(&col).expect("complete categories have all infima")
    }

    /// The dual is complete with tensors and cotensors exchanged and joins
    /// and meets exchanged.
    pub fn dual(&self) -> CompleteCategory {
        CompleteCategory {
            category: self.category.dual(),
            tensor: self.cotensor.clone(),
            cotensor: self.tensor.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
            rows: self.columns.clone(),
            columns: self.rows.clone(),
        }
    }

    /// Hom-table equality with another complete category.
    pub fn same_table(&self, other: &CompleteCategory) -> bool {
        self.category.same_table(&other.category)
    }
}

/// `X(sup μ, −) = ⋀_y μy → X(y, −)`.
fn sup_row(x: &VCategory, mu: &[Elem]) -> Vec<Elem> {
    let q = x.quantale();
    x.objects()
        .map(|t| q.meet(x.objects().map(|y| q.residuate(mu[y], x.hom(y, t)))))
        .collect()
}

/// `X(−, inf λ) = ⋀_y λy → X(−, y)`.
fn inf_column(x: &VCategory, lambda: &[Elem]) -> Vec<Elem> {
    let q = x.quantale();
    x.objects()
        .map(|t| q.meet(x.objects().map(|y| q.residuate(lambda[y], x.hom(t, y)))))
        .collect()
}

fn check_weight(x: &VCategory, w: &[Elem]) -> Result<(), CompletenessError> {
    if w.len() != x.len() || w.iter().any(|&e| e >= x.quantale().len()) {
        return Err(CompletenessError::Shape(format!(
            "weight {w:?} does not match a category with {} objects",
            x.len()
        )));
    }
    Ok(())
}

/// Least-index object satisfying the supremum identity, found by search.
pub fn sup(x: &VCategory, mu: &[Elem]) -> Result<Obj, CompletenessError> {
    check_weight(x, mu)?;
    let row = sup_row(x, mu);
    x.objects()
        .find(|&t| x.row(t) == row.as_slice())
        .ok_or(CompletenessError::NotComplete(Incomplete::Supremum))
}

/// Least-index object satisfying the infimum identity, found by search.
pub fn inf(x: &VCategory, lambda: &[Elem]) -> Result<Obj, CompletenessError> {
    check_weight(x, lambda)?;
    let col = inf_column(x, lambda);
    x.objects()
        .find(|&t| x.objects().all(|y| x.hom(y, t) == col[y]))
        .ok_or(CompletenessError::NotComplete(Incomplete::Infimum))
}

/// Presheaf category `V^{X^op}` with the Yoneda embedding `x ↦ X(−, x)`.
pub fn yoneda(x: &VCategory, budget: Budget) -> Result<(FunctorCategory, VFunctor), CompletenessError> {
    let v = VCategory::of_quantale(x.quantale());
    let presheaves = functor_category(&x.dual(), &v, budget)?;
    let map = x
        .objects()
        .map(|a| {
            let col = x.column(a);
            presheaves.position(&col).ok_or(CompletenessError::NotFunctor(col))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let y = VFunctor::new(x.clone(), presheaves.category().clone(), map)?;
    Ok((presheaves, y))
}

/// Copresheaf category `(V^X)^op` with the co-Yoneda embedding `x ↦ X(x, −)`.
pub fn co_yoneda(x: &VCategory, budget: Budget) -> Result<(FunctorCategory, VFunctor), CompletenessError> {
    let v = VCategory::of_quantale(x.quantale());
    let copresheaves = functor_category(x, &v, budget)?.dual();
    let map = x
        .objects()
        .map(|a| {
            let row = x.row(a).to_vec();
            copresheaves.position(&row).ok_or(CompletenessError::NotFunctor(row))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let y = VFunctor::new(x.clone(), copresheaves.category().clone(), map)?;
    Ok((copresheaves, y))
}

/// `(f^→ μ) y = ⋁_x Y(fx, y) ⊗ μx`.
///
/// Pass `f.dual()` to push a presheaf forward along `f`.
pub fn f_arrow(f: &VFunctor, mu: &[Elem]) -> Vec<Elem> {
    let y_cat = f.target();
    let q = y_cat.quantale();
    y_cat
        .objects()
        .map(|y| q.join(f.source().objects().map(|x| q.tensor(y_cat.hom(f.apply(x), y), mu[x]))))
        .collect()
}

/// `ι(a, x) b = A(b, a) ⋆ x` as an object of `X^{A^op}`.
///
/// `space` must be `functor_category(A^op, X)`.
pub fn iota(space: &FunctorCategory, x: &CompleteCategory, a: Obj, obj: Obj) -> Result<Obj, CompletenessError> {
    let a_op = space.source();
    let map: Vec<Obj> = a_op.objects().map(|b| x.tensor(a_op.hom(a, b), obj)).collect();
    space.position(&map).ok_or(CompletenessError::NotFunctor(map))
}

/// `ι†(a, x) b = A(a, b) ⋆ x` as an object of `(X^A)^op`.
///
/// `space` must be `functor_category(A, X).dual()`; the tensor is taken in
/// the undualised `x`.
pub fn iota_dag(space: &FunctorCategory, x: &CompleteCategory, a: Obj, obj: Obj) -> Result<Obj, CompletenessError> {
    let a_op = space.source();
    let map: Vec<Obj> = a_op.objects().map(|b| x.tensor(a_op.hom(b, a), obj)).collect();
    space.position(&map).ok_or(CompletenessError::NotFunctor(map))
}

/// The bifunctor `ι : A ⊗ X → X^{A^op}`.
pub fn iota_bifunctor(
    a: &VCategory,
    x: &CompleteCategory,
    space: &FunctorCategory,
) -> Result<VBifunctor, CompletenessError> {
    let map = a
        .objects()
        .flat_map(|i| x.category().objects().map(move |o| (i, o)))
        .map(|(i, o)| iota(space, x, i, o))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VBifunctor::from_flat(
        a.clone(),
        x.category().clone(),
        space.category().clone(),
        map,
    ))
}

/// The bifunctor `ι† : A ⊗ X^op → (X^A)^op`.
pub fn iota_dag_bifunctor(
    a: &VCategory,
    x: &CompleteCategory,
    space: &FunctorCategory,
) -> Result<VBifunctor, CompletenessError> {
    let map = a
        .objects()
        .flat_map(|i| x.category().objects().map(move |o| (i, o)))
        .map(|(i, o)| iota_dag(space, x, i, o))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VBifunctor::from_flat(
        a.clone(),
        x.category().dual(),
        space.category().clone(),
        map,
    ))
}

/// First `(y, y')` where `Y(y,y') ≠ ⋀_x Y(fx,y) → Y(fx,y')` for the given
/// image set.
pub fn density_witness(target: &VCategory, images: &[Obj]) -> Option<(Obj, Obj)> {
    let q = target.quantale();
    target
        .objects()
        .flat_map(|y| target.objects().map(move |z| (y, z)))
        .find(|&(y, z)| {
            let via = q.meet(images.iter().map(|&fx| q.residuate(target.hom(fx, y), target.hom(fx, z))));
            via != target.hom(y, z)
        })
}

/// Codensity criterion `Y(y,y') = ⋀_x Y(y',fx) → Y(y,fx)`; returns the first
/// failing pair.
pub fn codensity_witness(target: &VCategory, images: &[Obj]) -> Option<(Obj, Obj)> {
    density_witness(&target.dual(), images).map(|(y, z)| (z, y))
}

pub fn is_dense(f: &VFunctor) -> bool {
    density_witness(f.target(), f.map()).is_none()
}

pub fn is_codense(f: &VFunctor) -> bool {
    codensity_witness(f.target(), f.map()).is_none()
}

/// A map `g` with `Y(fx, y) = X(x, gy)`, found by column lookup.
pub fn right_adjoint_of(f: &VFunctor) -> Option<VFunctor> {
    let (x, y) = (f.source(), f.target());
    let columns = first_index(x.objects().map(|a| x.column(a)));
    let map = y
        .objects()
        .map(|b| {
            let col: Vec<Elem> = x.objects().map(|a| y.hom(f.apply(a), b)).collect();
            columns.get(&col).copied()
        })
        .collect::<Option<Vec<_>>>()?;
    VFunctor::new(y.clone(), x.clone(), map).ok()
}

/// A map `g` with `X(gy, x) = Y(y, fx)`, found by row lookup.
pub fn left_adjoint_of(f: &VFunctor) -> Option<VFunctor> {
    let (x, y) = (f.source(), f.target());
    let rows = first_index(x.objects().map(|a| x.row(a).to_vec()));
    let map = y
        .objects()
        .map(|b| {
            let row: Vec<Elem> = x.objects().map(|a| y.hom(b, f.apply(a))).collect();
            rows.get(&row).copied()
        })
        .collect::<Option<Vec<_>>>()?;
    VFunctor::new(y.clone(), x.clone(), map).ok()
}

/// Whether `f(sup μ) ≅ sup (f^op)^→ μ` for every presheaf `μ` on the source.
pub fn preserves_sups(
    f: &VFunctor,
    source: &CompleteCategory,
    target: &CompleteCategory,
    budget: Budget,
) -> Result<bool, CompletenessError> {
    let v = VCategory::of_quantale(source.quantale());
    let presheaves = functor_category(&source.category().dual(), &v, budget)?;
    let f_op = f.dual();
    Ok(presheaves.maps().iter().all(|mu| {
        let lhs = f.apply(source.sup(mu));
        let rhs = target.sup(&f_arrow(&f_op, mu));
        target.category().is_iso(lhs, rhs)
    }))
}

/// Whether `f(v ⋆ x) ≅ v ⋆ fx` for all `v, x`.
pub fn preserves_tensors(f: &VFunctor, source: &CompleteCategory, target: &CompleteCategory) -> bool {
    let q = source.quantale();
    q.elements().all(|v| {
        source.category().objects().all(|x| {
            target
                .category()
                .is_iso(f.apply(source.tensor(v, x)), target.tensor(v, f.apply(x)))
        })
    })
}

/// Whether the underlying monotone map has a right adjoint between the
/// underlying orders.
pub fn has_order_right_adjoint(f: &VFunctor) -> bool {
    let (x, y) = (f.source(), f.target());
    y.objects().all(|b| {
        // g(b) must be a greatest element of {a : fa ≤ b} that also bounds it
        let below: Vec<Obj> = x.objects().filter(|&a| y.le(f.apply(a), b)).collect();
        below.iter().any(|&g| below.iter().all(|&a| x.le(a, g)))
    }) && x.objects().all(|a| x.objects().all(|c| !x.le(a, c) || y.le(f.apply(a), f.apply(c))))
}
