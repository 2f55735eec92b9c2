//! Two-variable adjunctions and the Isbell and Kan adjunctions they induce.
//!
//! A [`TwoVarAdjunction`] `(X, Y, Z, ⊙, ↙, ↘)` over complete categories is
//! built from `⊙` alone: both residuals are derived through underlying joins
//! and then checked against the triple hom identity
//! `Z(x⊙y, z) = X(x, z↙y) = Y(y, x↘z)`.
//!
//! A bifunctor table `A^op ⊗ B → W` then induces one of three adjunctions
//! between enumerated functor categories, whose closure operator has the
//! concept lattice as its (pseudo-)fixed points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completeness::{is_complete, CompleteCategory, CompletenessError, Incomplete};
use crate::vcat::{
    functor_category, BifunctorWitness, Budget, CategoryError, FunctorCategory, Obj, VBifunctor, VCategory,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Completeness(#[from] CompletenessError),
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("{table} is not a V-bifunctor: {witness:?}")]
    NotBifunctor {
        table: &'static str,
        witness: BifunctorWitness,
    },
    #[error("⊙ does not preserve suprema: hom identity fails at x={x}, y={y}, z={z}")]
    NotCocontinuous { x: Obj, y: Obj, z: Obj },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("not a closure operator: {law} fails at {witness:?}")]
    NotClosure { law: &'static str, witness: Vec<Obj> },
    #[error("operator image {0:?} is not an object of the expected functor category")]
    NotFunctor(Vec<Obj>),
    #[error("fixed points are not complete: {0}")]
    NotComplete(Incomplete),
}

/// Which induced adjunction a concept lattice comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `Mφ = Fix(φ↓φ↑)` for `φ : A^op ⊗ B → Z`.
    Isbell,
    /// `Kψ = Fix(ψ_*ψ*)` for `ψ : A^op ⊗ B → Y`.
    KanStar,
    /// `K†ζ = Fix(ζ†ζ_†)` for `ζ : A^op ⊗ B → X`.
    KanDag,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Isbell, Kind::KanStar, Kind::KanDag];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Isbell => "isbell",
            Kind::KanStar => "kan_star",
            Kind::KanDag => "kan_dag",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "isbell" => Ok(Kind::Isbell),
            "kan_star" | "kan-star" | "kanstar" => Ok(Kind::KanStar),
            "kan_dag" | "kan-dag" | "kandag" => Ok(Kind::KanDag),
            other => Err(format!("unknown mode `{other}` (expected isbell, kan_star or kan_dag)")),
        }
    }
}

/// `(X, Y, Z, ⊙, ↙, ↘)` over complete V-categories.
#[derive(Clone, Debug)]
pub struct TwoVarAdjunction {
    x: CompleteCategory,
    y: CompleteCategory,
    z: CompleteCategory,
    /// `x ⊙ y`, indexed `[x][y]`.
    with: Vec<Obj>,
    /// `z ↙ y`, indexed `[z][y]`.
    lda: Vec<Obj>,
    /// `x ↘ z`, indexed `[x][z]`.
    rda: Vec<Obj>,
}

impl TwoVarAdjunction {
    /// Derives both residuals of `⊙` and verifies the triple hom identity.
    pub fn derive(
        x: CompleteCategory,
        y: CompleteCategory,
        z: CompleteCategory,
        with: Vec<Vec<Obj>>,
    ) -> Result<Self, AdjunctionError> {
        x.category().check_base(y.category())?;
        x.category().check_base(z.category())?;
        let (nx, ny, nz) = (x.len(), y.len(), z.len());
        if with.len() != nx || with.iter().any(|r| r.len() != ny) {
            return Err(AdjunctionError::Shape(format!("⊙ must be {nx}x{ny}")));
        }
        if let Some(&bad) = with.iter().flatten().find(|&&o| o >= nz) {
            return Err(AdjunctionError::Shape(format!("⊙ image {bad} is not an object of Z")));
        }
        let with: Vec<Obj> = with.into_iter().flatten().collect();
        let w = |a: Obj, b: Obj| with[a * ny + b];
        let zc = z.category();

        let mut lda = Vec::with_capacity(nz * ny);
        for c in 0..nz {
            for b in 0..ny {
                lda.push(x.join((0..nx).filter(|&a| zc.le(w(a, b), c))));
            }
        }
        let mut rda = Vec::with_capacity(nx * nz);
        for a in 0..nx {
            for c in 0..nz {
                rda.push(y.join((0..ny).filter(|&b| zc.le(w(a, b), c))));
            }
        }
        let t = TwoVarAdjunction {
            x,
            y,
            z,
            with,
            lda,
            rda,
        };
        t.check_bifunctor("⊙", &t.with_bifunctor())?;
        t.verify_hom_identity()?;
        t.check_bifunctor("↙", &t.lda_bifunctor())?;
        t.check_bifunctor("↘", &t.rda_bifunctor())?;
        Ok(t)
    }

    /// `(V, V, V, ⊗, →, →)`.
    pub fn of_quantale(q: &crate::quantale::QuantaleRef) -> Self {
        let v = CompleteCategory::of_quantale(q);
        let with = q.elements().map(|a| q.elements().map(|b| q.tensor(a, b)).collect()).collect();
        Self::derive(v.clone(), v.clone(), v, with).expect("quantale multiplication is a two-variable adjunction")
    }

    /// `(V, X, X, ⋆, X^op(−,−), ⤙)` for a complete `X`.
    pub fn tensor_cotensor(x: &CompleteCategory) -> Self {
        let v = CompleteCategory::of_quantale(x.quantale());
        let with = v
            .category()
            .objects()
            .map(|e| x.category().objects().map(|o| x.tensor(e, o)).collect())
            .collect();
        Self::derive(v, x.clone(), x.clone(), with).expect("tensors give a two-variable adjunction")
    }

    fn check_bifunctor(&self, table: &'static str, b: &VBifunctor) -> Result<(), AdjunctionError> {
        match b.bifunctoriality_witness() {
            Some(witness) => Err(AdjunctionError::NotBifunctor { table, witness }),
            None => Ok(()),
        }
    }

    fn verify_hom_identity(&self) -> Result<(), AdjunctionError> {
        for a in 0..self.x.len() {
            for b in 0..self.y.len() {
                for c in 0..self.z.len() {
                    let via_z = self.z.hom(self.with(a, b), c);
                    let via_x = self.x.hom(a, self.lda(c, b));
                    let via_y = self.y.hom(b, self.rda(a, c));
                    if via_z != via_x || via_z != via_y {
                        return Err(AdjunctionError::NotCocontinuous { x: a, y: b, z: c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-checks the triple hom identity and bifunctoriality of all tables.
    pub fn verify(&self) -> Result<(), AdjunctionError> {
        self.check_bifunctor("⊙", &self.with_bifunctor())?;
        self.check_bifunctor("↙", &self.lda_bifunctor())?;
        self.check_bifunctor("↘", &self.rda_bifunctor())?;
        self.verify_hom_identity()
    }

    pub fn x(&self) -> &CompleteCategory {
        &self.x
    }

    pub fn y(&self) -> &CompleteCategory {
        &self.y
    }

    pub fn z(&self) -> &CompleteCategory {
        &self.z
    }

    #[inline]
    pub fn with(&self, x: Obj, y: Obj) -> Obj {
        self.with[x * self.y.len() + y]
    }

    #[inline]
    pub fn lda(&self, z: Obj, y: Obj) -> Obj {
        self.lda[z * self.y.len() + y]
    }

    #[inline]
    pub fn rda(&self, x: Obj, z: Obj) -> Obj {
        self.rda[x * self.z.len() + z]
    }

    /// `⊙ : X ⊗ Y → Z`.
    pub fn with_bifunctor(&self) -> VBifunctor {
        VBifunctor::from_flat(
            self.x.category().clone(),
            self.y.category().clone(),
            self.z.category().clone(),
            self.with.clone(),
        )
    }

    /// `↙ : Z ⊗ Y^op → X`.
    pub fn lda_bifunctor(&self) -> VBifunctor {
        VBifunctor::from_flat(
            self.z.category().clone(),
            self.y.category().dual(),
            self.x.category().clone(),
            self.lda.clone(),
        )
    }

    /// `↘ : X^op ⊗ Z → Y`.
    pub fn rda_bifunctor(&self) -> VBifunctor {
        VBifunctor::from_flat(
            self.x.category().dual(),
            self.z.category().clone(),
            self.y.category().clone(),
            self.rda.clone(),
        )
    }

    /// The two associated adjunctions
    /// `(X, Z^op, Y^op, ↘, ↙^∂, ⊙)` and `(Z^op, Y, X^op, ↙, ⊙, ↘^∂)`,
    /// each verified.
    pub fn associates(&self) -> Result<(TwoVarAdjunction, TwoVarAdjunction), AdjunctionError> {
        let (nx, ny, nz) = (self.x.len(), self.y.len(), self.z.len());
        let second = TwoVarAdjunction {
            x: self.x.clone(),
            y: self.z.dual(),
            z: self.y.dual(),
            with: self.rda.clone(),
            // [y][z] ↦ z ↙ y
            lda: (0..ny * nz).map(|i| self.lda(i % nz, i / nz)).collect(),
            // [x][y] ↦ x ⊙ y
            rda: self.with.clone(),
        };
        let third = TwoVarAdjunction {
            x: self.z.dual(),
            y: self.y.clone(),
            z: self.x.dual(),
            with: self.lda.clone(),
            lda: self.with.clone(),
            // [z][x] ↦ x ↘ z
            rda: (0..nz * nx).map(|i| self.rda(i % nx, i / nx)).collect(),
        };
        second.verify()?;
        third.verify()?;
        Ok((second, third))
    }
}

/// A bifunctor `A^op ⊗ B → W` given by its table `φ(a, b)`.
#[derive(Clone, Debug)]
pub struct BifunctorTable {
    a: VCategory,
    b: VCategory,
    target: VCategory,
    values: Vec<Obj>,
}

impl BifunctorTable {
    pub fn new(a: VCategory, b: VCategory, target: VCategory, values: Vec<Vec<Obj>>) -> Result<Self, AdjunctionError> {
        let bif = VBifunctor::new(a.dual(), b.clone(), target.clone(), values)?;
        if let Some(witness) = bif.bifunctoriality_witness() {
            return Err(AdjunctionError::NotBifunctor { table: "φ", witness });
        }
        Ok(BifunctorTable {
            a,
            b,
            target,
            values: bif.images().to_vec(),
        })
    }

    pub fn a(&self) -> &VCategory {
        &self.a
    }

    pub fn b(&self) -> &VCategory {
        &self.b
    }

    pub fn target(&self) -> &VCategory {
        &self.target
    }

    #[inline]
    pub fn get(&self, a: Obj, b: Obj) -> Obj {
        self.values[a * self.b.len() + b]
    }

    pub fn table(&self) -> Vec<Vec<Obj>> {
        self.a
            .objects()
            .map(|a| self.b.objects().map(|b| self.get(a, b)).collect())
            .collect()
    }

    pub fn as_bifunctor(&self) -> VBifunctor {
        VBifunctor::from_flat(self.a.dual(), self.b.clone(), self.target.clone(), self.values.clone())
    }

    /// The same table read as `A ⊗ B^op → W^op`, i.e. over `A' = A^op`,
    /// `B' = B^op`.
    pub fn dual(&self) -> BifunctorTable {
        BifunctorTable {
            a: self.a.dual(),
            b: self.b.dual(),
            target: self.target.dual(),
            values: self.values.clone(),
        }
    }

    fn expect_target(&self, expected: &CompleteCategory, role: &str) -> Result<(), AdjunctionError> {
        if self.target.same_table(expected.category()) {
            Ok(())
        } else {
            Err(AdjunctionError::TypeMismatch(format!(
                "table values must lie in {role} of the two-variable adjunction"
            )))
        }
    }
}

fn expect_len(arg: &[Obj], len: usize, what: &str) -> Result<(), AdjunctionError> {
    if arg.len() == len {
        Ok(())
    } else {
        Err(AdjunctionError::TypeMismatch(format!(
            "{what} has {} components, expected {len}",
            arg.len()
        )))
    }
}

/// `(φ↑μ) b = ⋀_a φ(a,b) ↙ μa` for `μ ∈ Y^{A^op}`.
pub fn isbell_up(t: &TwoVarAdjunction, phi: &BifunctorTable, mu: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    phi.expect_target(&t.z, "Z")?;
    expect_len(mu, phi.a.len(), "μ")?;
    Ok(phi
        .b
        .objects()
        .map(|b| t.x.meet(phi.a.objects().map(|a| t.lda(phi.get(a, b), mu[a]))))
        .collect())
}

/// `(φ↓λ) a = ⋀_b λb ↘ φ(a,b)` for `λ ∈ X^B`.
pub fn isbell_down(t: &TwoVarAdjunction, phi: &BifunctorTable, lambda: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    phi.expect_target(&t.z, "Z")?;
    expect_len(lambda, phi.b.len(), "λ")?;
    Ok(phi
        .a
        .objects()
        .map(|a| t.y.meet(phi.b.objects().map(|b| t.rda(lambda[b], phi.get(a, b)))))
        .collect())
}

/// `(ψ*λ) a = ⋁_b λb ⊙ ψ(a,b)` for `λ ∈ X^{B^op}`.
pub fn kan_star_upper(t: &TwoVarAdjunction, psi: &BifunctorTable, lambda: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    psi.expect_target(&t.y, "Y")?;
    expect_len(lambda, psi.b.len(), "λ")?;
    Ok(psi
        .a
        .objects()
        .map(|a| t.z.join(psi.b.objects().map(|b| t.with(lambda[b], psi.get(a, b)))))
        .collect())
}

/// `(ψ_*μ) b = ⋀_a μa ↙ ψ(a,b)` for `μ ∈ Z^{A^op}`.
pub fn kan_star_lower(t: &TwoVarAdjunction, psi: &BifunctorTable, mu: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    psi.expect_target(&t.y, "Y")?;
    expect_len(mu, psi.a.len(), "μ")?;
    Ok(psi
        .b
        .objects()
        .map(|b| t.x.meet(psi.a.objects().map(|a| t.lda(mu[a], psi.get(a, b)))))
        .collect())
}

/// `(ζ_†λ) a = ⋀_b ζ(a,b) ↘ λb` for `λ ∈ Z^B`.
pub fn kan_dag_lower(t: &TwoVarAdjunction, zeta: &BifunctorTable, lambda: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    zeta.expect_target(&t.x, "X")?;
    expect_len(lambda, zeta.b.len(), "λ")?;
    Ok(zeta
        .a
        .objects()
        .map(|a| t.y.meet(zeta.b.objects().map(|b| t.rda(zeta.get(a, b), lambda[b]))))
        .collect())
}

/// `(ζ†μ) b = ⋁_a ζ(a,b) ⊙ μa` for `μ ∈ Y^A`.
pub fn kan_dag_upper(t: &TwoVarAdjunction, zeta: &BifunctorTable, mu: &[Obj]) -> Result<Vec<Obj>, AdjunctionError> {
    zeta.expect_target(&t.x, "X")?;
    expect_len(mu, zeta.a.len(), "μ")?;
    Ok(zeta
        .b
        .objects()
        .map(|b| t.z.join(zeta.a.objects().map(|a| t.with(zeta.get(a, b), mu[a]))))
        .collect())
}

/// An adjunction `left ⊣ right` between two enumerated functor categories,
/// tabulated on objects.
#[derive(Clone, Debug)]
pub struct InducedAdjunction {
    kind: Kind,
    left_space: FunctorCategory,
    right_space: FunctorCategory,
    left: Vec<Obj>,
    right: Vec<Obj>,
}

impl InducedAdjunction {
    /// Enumerates the functor categories of `kind` and tabulates both
    /// operators.
    ///
    /// | kind      | left space     | right space    | left ⊣ right |
    /// |-----------|----------------|----------------|--------------|
    /// | isbell    | `Y^{A^op}`     | `(X^B)^op`     | `φ↑ ⊣ φ↓`    |
    /// | kan_star  | `X^{B^op}`     | `Z^{A^op}`     | `ψ* ⊣ ψ_*`   |
    /// | kan_dag   | `(Z^B)^op`     | `(Y^A)^op`     | `ζ_† ⊣ ζ†`   |
    pub fn new(
        t: &TwoVarAdjunction,
        kind: Kind,
        table: &BifunctorTable,
        budget: Budget,
    ) -> Result<Self, AdjunctionError> {
        let (a, b) = (table.a(), table.b());
        type Op = fn(&TwoVarAdjunction, &BifunctorTable, &[Obj]) -> Result<Vec<Obj>, AdjunctionError>;
        let (left_space, right_space, up, down): (FunctorCategory, FunctorCategory, Op, Op) = match kind {
            Kind::Isbell => {
                table.expect_target(&t.z, "Z")?;
                (
                    functor_category(&a.dual(), t.y.category(), budget)?,
                    functor_category(b, t.x.category(), budget)?.dual(),
                    isbell_up,
                    isbell_down,
                )
            }
            Kind::KanStar => {
                table.expect_target(&t.y, "Y")?;
                (
                    functor_category(&b.dual(), t.x.category(), budget)?,
                    functor_category(&a.dual(), t.z.category(), budget)?,
                    kan_star_upper,
                    kan_star_lower,
                )
            }
            Kind::KanDag => {
                table.expect_target(&t.x, "X")?;
                (
                    functor_category(b, t.z.category(), budget)?.dual(),
                    functor_category(a, t.y.category(), budget)?.dual(),
                    kan_dag_lower,
                    kan_dag_upper,
                )
            }
        };
        let tabulate = |from: &FunctorCategory, to: &FunctorCategory, op: Op| {
            from.maps()
                .iter()
                .map(|m| {
                    let image = op(t, table, m)?;
                    to.position(&image).ok_or(AdjunctionError::NotFunctor(image))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let left = tabulate(&left_space, &right_space, up)?;
        let right = tabulate(&right_space, &left_space, down)?;
        Ok(InducedAdjunction {
            kind,
            left_space,
            right_space,
            left,
            right,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn left_space(&self) -> &FunctorCategory {
        &self.left_space
    }

    pub fn right_space(&self) -> &FunctorCategory {
        &self.right_space
    }

    /// Left adjoint on objects of the left space.
    pub fn left(&self) -> &[Obj] {
        &self.left
    }

    /// Right adjoint on objects of the right space.
    pub fn right(&self) -> &[Obj] {
        &self.right
    }

    /// First `(l, r)` with `R(left l, r) ≠ L(l, right r)`.
    pub fn adjointness_witness(&self) -> Option<(Obj, Obj)> {
        let (l_cat, r_cat) = (self.left_space.category(), self.right_space.category());
        l_cat
            .objects()
            .flat_map(|l| r_cat.objects().map(move |r| (l, r)))
            .find(|&(l, r)| r_cat.hom(self.left[l], r) != l_cat.hom(l, self.right[r]))
    }

    /// `right ∘ left` on the left space.
    pub fn closure(&self) -> Vec<Obj> {
        self.left.iter().map(|&r| self.right[r]).collect()
    }

    /// `left ∘ right` on the right space.
    pub fn interior(&self) -> Vec<Obj> {
        self.right.iter().map(|&l| self.left[l]).collect()
    }
}

/// A closure operator with its fixed points.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub carrier: VCategory,
    pub closure_map: Vec<Obj>,
    /// All `a` with `ha ≅ a`, ascending.
    pub fixed: Vec<Obj>,
}

impl ClosureReport {
    /// `Fix(h)` as a full subcategory, objects in the order of `fixed`.
    pub fn fix_category(&self) -> VCategory {
        self.carrier.full_subcategory(&self.fixed)
    }
}

/// Checks that `h` is a V-closure operator (`1 ≤ h`, `hh ≅ h`), lists its
/// fixed points and checks that `h : A → Fix(h)` is left adjoint to the
/// inclusion.
pub fn closure_fixed_points(carrier: &VCategory, h: &[Obj]) -> Result<ClosureReport, AdjunctionError> {
    if h.len() != carrier.len() || h.iter().any(|&x| x >= carrier.len()) {
        return Err(AdjunctionError::Shape("closure map does not fit its carrier".into()));
    }
    let q = carrier.quantale();
    for a in carrier.objects() {
        for b in carrier.objects() {
            if !q.leq(carrier.hom(a, b), carrier.hom(h[a], h[b])) {
                return Err(AdjunctionError::NotClosure {
                    law: "functoriality",
                    witness: vec![a, b],
                });
            }
        }
    }
    for a in carrier.objects() {
        if !carrier.le(a, h[a]) {
            return Err(AdjunctionError::NotClosure {
                law: "inflation (1 ≤ h)",
                witness: vec![a],
            });
        }
        if !carrier.is_iso(h[h[a]], h[a]) {
            return Err(AdjunctionError::NotClosure {
                law: "idempotence (hh ≅ h)",
                witness: vec![a],
            });
        }
    }
    let fixed: Vec<Obj> = carrier.objects().filter(|&a| carrier.is_iso(h[a], a)).collect();
    for a in carrier.objects() {
        for &b in &fixed {
            if carrier.hom(h[a], b) != carrier.hom(a, b) {
                return Err(AdjunctionError::NotClosure {
                    law: "reflection (h ⊣ inclusion)",
                    witness: vec![a, b],
                });
            }
        }
    }
    Ok(ClosureReport {
        carrier: carrier.clone(),
        closure_map: h.to_vec(),
        fixed,
    })
}

/// A concept: a fixed point and its image under the left adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Concept {
    /// Object of the left space.
    pub primary: Obj,
    /// Object of the right space.
    pub mate: Obj,
}

/// The complete V-category of fixed points of an induced closure.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    adjunction: InducedAdjunction,
    concepts: Vec<Concept>,
    category: CompleteCategory,
}

impl ConceptLattice {
    pub fn kind(&self) -> Kind {
        self.adjunction.kind
    }

    pub fn adjunction(&self) -> &InducedAdjunction {
        &self.adjunction
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Fixed points with the inherited homs; object `i` is `concepts()[i]`.
    pub fn category(&self) -> &VCategory {
        self.category.category()
    }

    pub fn completeness(&self) -> &CompleteCategory {
        &self.category
    }

    pub fn primary_map(&self, i: usize) -> &[Obj] {
        self.adjunction.left_space.map(self.concepts[i].primary)
    }

    pub fn mate_map(&self, i: usize) -> &[Obj] {
        self.adjunction.right_space.map(self.concepts[i].mate)
    }

    /// Index of the concept whose primary component is `primary`.
    pub fn index_of_primary(&self, primary: Obj) -> Option<usize> {
        self.concepts.binary_search_by_key(&primary, |c| c.primary).ok()
    }
}

/// Builds `Mφ`, `Kψ` or `K†ζ`, including the completeness check of the
/// fixed-point category.
pub fn concept_lattice(
    t: &TwoVarAdjunction,
    kind: Kind,
    table: &BifunctorTable,
    budget: Budget,
) -> Result<ConceptLattice, AdjunctionError> {
    let adjunction = InducedAdjunction::new(t, kind, table, budget)?;
    let report = closure_fixed_points(adjunction.left_space.category(), &adjunction.closure())?;
    let concepts: Vec<Concept> = report
        .fixed
        .iter()
        .map(|&p| Concept {
            primary: p,
            mate: adjunction.left[p],
        })
        .collect();
    let category = is_complete(&report.fix_category()).map_err(AdjunctionError::NotComplete)?;
    Ok(ConceptLattice {
        adjunction,
        concepts,
        category,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;
    use crate::vcat::VCategory;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn quantale_triple_residuals_are_residuation() {
        for q in [Quantale::boolean(), Quantale::lukasiewicz(4).unwrap(), Quantale::lawvere(3).unwrap()] {
            let t = TwoVarAdjunction::of_quantale(&q);
            for a in q.elements() {
                for b in q.elements() {
                    assert_eq!(t.lda(a, b), q.residuate(b, a));
                    assert_eq!(t.rda(a, b), q.residuate(a, b));
                }
            }
        }
    }

    #[test]
    fn boolean_fca_example() {
        let q = Quantale::boolean();
        let t = TwoVarAdjunction::of_quantale(&q);
        let a = VCategory::discrete(&q, names("a", 2));
        let b = VCategory::discrete(&q, names("b", 2));
        let phi = BifunctorTable::new(a, b, VCategory::of_quantale(&q), vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(isbell_up(&t, &phi, &[1, 1]).unwrap(), vec![1, 0]);
        assert_eq!(isbell_up(&t, &phi, &[0, 0]).unwrap(), vec![1, 1]);
        let lattice = concept_lattice(&t, Kind::Isbell, &phi, Budget::default()).unwrap();
        let extents: Vec<&[Obj]> = (0..lattice.len()).map(|i| lattice.primary_map(i)).collect();
        assert_eq!(extents, vec![&[0, 1][..], &[1, 1][..]]);
        assert_eq!(lattice.mate_map(0), &[1, 1]);
        assert_eq!(lattice.mate_map(1), &[1, 0]);
    }

    #[test]
    fn identity_is_a_closure_with_everything_fixed() {
        let q = Quantale::goedel(3).unwrap();
        let v = VCategory::of_quantale(&q);
        let report = closure_fixed_points(&v, &[0, 1, 2]).unwrap();
        assert_eq!(report.fixed, vec![0, 1, 2]);
    }

    #[test]
    fn deflationary_map_is_not_a_closure() {
        let q = Quantale::goedel(3).unwrap();
        let v = VCategory::of_quantale(&q);
        let err = closure_fixed_points(&v, &[0, 0, 0]).unwrap_err();
        assert!(matches!(err, AdjunctionError::NotClosure { law: "inflation (1 ≤ h)", .. }));
    }

    #[test]
    fn wrong_target_is_a_type_mismatch() {
        let q = Quantale::boolean();
        let t = TwoVarAdjunction::of_quantale(&q);
        let a = VCategory::discrete(&q, names("a", 1));
        let other = VCategory::discrete(&q, names("z", 2));
        let phi = BifunctorTable::new(a.clone(), a, other, vec![vec![0]]).unwrap();
        assert!(matches!(isbell_up(&t, &phi, &[0]), Err(AdjunctionError::TypeMismatch(_))));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("kan-star".parse::<Kind>().unwrap(), Kind::KanStar);
        assert_eq!("kan_dag".parse::<Kind>().unwrap(), Kind::KanDag);
        assert!("galois".parse::<Kind>().is_err());
    }
}
