//! Representation certificates for concept lattices.
//!
//! A complete `C` is equivalent to `Mφ` when it has a dense bifunctor
//! `α : A ⊗ Y → C` and a codense `β : B ⊗ X^op → C` with
//! `C(α(a,y), β(b,x)) = Z(x⊙y, φ(a,b))`. The Kan lattices have the same
//! shape with the roles of `A`/`B` and of the dense/codense side exchanged:
//!
//! | kind     | dense          | codense        | hom identity                          |
//! |----------|----------------|----------------|---------------------------------------|
//! | isbell   | `α : A⊗Y → C`  | `β : B⊗X^op→C` | `C(α(a,y), β(b,x)) = Z(x⊙y, φ(a,b))`  |
//! | kan_star | `β : B⊗X → C`  | `α : A⊗Z → C`  | `C(β(b,x), α(a,z)) = Y(ψ(a,b), x↘z)`  |
//! | kan_dag  | `β : B⊗Z^op→C` | `α : A⊗Y^op→C` | `C(β(b,z), α(a,y)) = X(ζ(a,b), z↙y)`  |
//!
//! [`verify_representation`] checks all hypotheses, builds
//! `hμ = ⋁_s dense(s, μs)` and certifies that it is fully faithful and
//! essentially surjective.

use serde::{Serialize, Serializer};

use crate::adjunction::{concept_lattice, AdjunctionError, BifunctorTable, ConceptLattice, Kind, TwoVarAdjunction};
use crate::completeness::{codensity_witness, density_witness, iota, iota_dag, is_complete, CompleteCategory, Incomplete};
use crate::quantale::Elem;
use crate::vcat::{BifunctorWitness, Budget, Obj, VBifunctor, VCategory, VFunctor};

/// Why a certificate flag is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Witness {
    Incomplete { missing: Incomplete },
    NotBifunctor { map: &'static str, witness: BifunctorWitness },
    NotDense { map: &'static str, pair: (Obj, Obj) },
    NotCodense { map: &'static str, pair: (Obj, Obj) },
    /// `a`, `b` index `A`, `B`; the remaining two arguments are those of the
    /// dense and codense map respectively.
    HomIdentity {
        a: Obj,
        b: Obj,
        dense_arg: Obj,
        codense_arg: Obj,
        found: String,
        expected: String,
    },
    /// `C(hμ, codense(r,u)) ≠ U(mate(μ) r, u)` for concept `concept`.
    HIdentity {
        concept: usize,
        r: Obj,
        u: Obj,
        found: String,
        expected: String,
    },
    NotFullyFaithful { concepts: (usize, usize) },
    NotEssentiallySurjective { object: Obj },
}

fn ser_bifunctor<S: Serializer>(b: &VBifunctor, s: S) -> Result<S::Ok, S::Error> {
    b.table().serialize(s)
}

fn ser_functor<S: Serializer>(f: &Option<VFunctor>, s: S) -> Result<S::Ok, S::Error> {
    f.as_ref().map(|f| f.map().to_vec()).serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationCertificate {
    pub kind: Kind,
    #[serde(serialize_with = "ser_bifunctor")]
    pub alpha: VBifunctor,
    #[serde(serialize_with = "ser_bifunctor")]
    pub beta: VBifunctor,
    pub complete: bool,
    pub alpha_bifunctor_ok: bool,
    pub beta_bifunctor_ok: bool,
    pub dense_ok: bool,
    pub codense_ok: bool,
    pub hom_identity_ok: bool,
    /// `C(hμ, codense(r,u))` agrees with the mate of `μ`.
    pub h_identity_ok: bool,
    /// `h : lattice → C`, absent when `C` is not complete.
    #[serde(serialize_with = "ser_functor")]
    pub h: Option<VFunctor>,
    pub h_fully_faithful: bool,
    pub h_ess_surjective: bool,
    /// `h` is a bijection on objects.
    pub h_bijective: bool,
    pub witnesses: Vec<Witness>,
}

impl RepresentationCertificate {
    pub fn is_valid(&self) -> bool {
        self.complete
            && self.alpha_bifunctor_ok
            && self.beta_bifunctor_ok
            && self.dense_ok
            && self.codense_ok
            && self.hom_identity_ok
            && self.h_identity_ok
            && self.h_fully_faithful
            && self.h_ess_surjective
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialise")
    }
}

/// The concept lattice of a table with its canonical dense and codense
/// bifunctors.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    pub lattice: ConceptLattice,
    pub alpha: VBifunctor,
    pub beta: VBifunctor,
}

/// Kind-dependent data: which side is dense, the complete categories the
/// two generators range over, and the expected hom values.
struct Shape<'a> {
    t: &'a TwoVarAdjunction,
    table: &'a BifunctorTable,
    kind: Kind,
    /// `W`: second argument of the dense map.
    w: CompleteCategory,
    /// `U^op`: second argument of the codense map is an object of `U`.
    u_dual: CompleteCategory,
}

impl<'a> Shape<'a> {
    fn new(t: &'a TwoVarAdjunction, kind: Kind, table: &'a BifunctorTable) -> Self {
        let (w, u_dual) = match kind {
            Kind::Isbell => (t.y().clone(), t.x().clone()),
            Kind::KanStar => (t.x().clone(), t.z().dual()),
            Kind::KanDag => (t.z().dual(), t.y().clone()),
        };
        Shape {
            t,
            table,
            kind,
            w,
            u_dual,
        }
    }

    /// `S`, indexing the dense map.
    fn s(&self) -> &VCategory {
        match self.kind {
            Kind::Isbell => self.table.a(),
            _ => self.table.b(),
        }
    }

    /// `R`, indexing the codense map.
    fn r(&self) -> &VCategory {
        match self.kind {
            Kind::Isbell => self.table.b(),
            _ => self.table.a(),
        }
    }

    fn u(&self) -> VCategory {
        self.u_dual.category().dual()
    }

    /// `(a, b)` from `(s, r)`.
    fn ab(&self, s: Obj, r: Obj) -> (Obj, Obj) {
        match self.kind {
            Kind::Isbell => (s, r),
            _ => (r, s),
        }
    }

    fn expected(&self, s: Obj, w: Obj, r: Obj, u: Obj) -> Elem {
        let (a, b) = self.ab(s, r);
        let v = self.table.get(a, b);
        let t = self.t;
        match self.kind {
            Kind::Isbell => t.z().hom(t.with(u, w), v),
            Kind::KanStar => t.y().hom(v, t.rda(w, u)),
            Kind::KanDag => t.x().hom(v, t.lda(w, u)),
        }
    }

    /// Maps `(dense, codense)` to `(alpha, beta)`.
    fn name<T>(&self, dense: T, codense: T) -> (T, T) {
        match self.kind {
            Kind::Isbell => (dense, codense),
            _ => (codense, dense),
        }
    }
}

/// Canonical `α`, `β` into `Mφ`.
pub fn construct_alpha_beta(
    t: &TwoVarAdjunction,
    phi: &BifunctorTable,
    budget: Budget,
) -> Result<CanonicalPair, AdjunctionError> {
    canonical_pair(t, Kind::Isbell, phi, budget)
}

/// Canonical dense and codense maps into the concept lattice of any kind.
pub fn canonical_pair(
    t: &TwoVarAdjunction,
    kind: Kind,
    table: &BifunctorTable,
    budget: Budget,
) -> Result<CanonicalPair, AdjunctionError> {
    let lattice = concept_lattice(t, kind, table, budget)?;
    let shape = Shape::new(t, kind, table);
    let adj = lattice.adjunction();
    let closure = adj.closure();
    let concept_of = |p: Obj| {
        lattice
            .index_of_primary(p)
            .ok_or_else(|| AdjunctionError::NotFunctor(adj.left_space().map(p).to_vec()))
    };

    let mut dense = Vec::with_capacity(shape.s().len() * shape.w.len());
    for s in shape.s().objects() {
        for w in shape.w.category().objects() {
            let p = iota(adj.left_space(), &shape.w, s, w)?;
            dense.push(concept_of(closure[p])?);
        }
    }
    let mut codense = Vec::with_capacity(shape.r().len() * shape.u_dual.len());
    for r in shape.r().objects() {
        for u in shape.u_dual.category().objects() {
            let m = iota_dag(adj.right_space(), &shape.u_dual, r, u)?;
            let p = adj.right()[m];
            ensure_fixed(&lattice, p)?;
            codense.push(concept_of(lattice_representative(&lattice, p))?);
        }
    }
    let c = lattice.category().clone();
    let dense = VBifunctor::from_flat(shape.s().clone(), shape.w.category().clone(), c.clone(), dense);
    let codense = VBifunctor::from_flat(shape.r().clone(), shape.u(), c, codense);
    let (alpha, beta) = shape.name(dense, codense);
    Ok(CanonicalPair { lattice, alpha, beta })
}

fn ensure_fixed(lattice: &ConceptLattice, p: Obj) -> Result<(), AdjunctionError> {
    let space = lattice.adjunction().left_space();
    let closure = lattice.adjunction().closure();
    if space.category().is_iso(closure[p], p) {
        Ok(())
    } else {
        Err(AdjunctionError::NotClosure {
            law: "right adjoint lands in fixed points",
            witness: vec![p],
        })
    }
}

/// The fixed point listed for the `≅`-class of `p`.
fn lattice_representative(lattice: &ConceptLattice, p: Obj) -> Obj {
    let space = lattice.adjunction().left_space().category();
    if lattice.index_of_primary(p).is_some() {
        return p;
    }
    lattice
        .concepts()
        .iter()
        .map(|c| c.primary)
        .find(|&q| space.is_iso(p, q))
        .unwrap_or(p)
}

/// Checks the Isbell representation hypotheses for `C`, `α : A⊗Y → C`,
/// `β : B⊗X^op → C`.
pub fn verify_representation(
    t: &TwoVarAdjunction,
    phi: &BifunctorTable,
    c: &VCategory,
    alpha: &VBifunctor,
    beta: &VBifunctor,
    budget: Budget,
) -> Result<RepresentationCertificate, AdjunctionError> {
    verify_representation_kan(t, Kind::Isbell, phi, c, alpha, beta, budget)
}

/// Checks the representation hypotheses of any kind; see the module table
/// for the roles of `alpha` and `beta`.
pub fn verify_representation_kan(
    t: &TwoVarAdjunction,
    kind: Kind,
    table: &BifunctorTable,
    c: &VCategory,
    alpha: &VBifunctor,
    beta: &VBifunctor,
    budget: Budget,
) -> Result<RepresentationCertificate, AdjunctionError> {
    let lattice = concept_lattice(t, kind, table, budget)?;
    let shape = Shape::new(t, kind, table);
    let (dense_name, codense_name) = shape.name("alpha", "beta");
    let (dense, codense) = shape.name(alpha, beta);

    let types_ok = dense.left().same_table(shape.s())
        && dense.right().same_table(shape.w.category())
        && dense.target().same_table(c)
        && codense.left().same_table(shape.r())
        && codense.right().same_table(&shape.u())
        && codense.target().same_table(c);
    if !types_ok {
        return Err(AdjunctionError::TypeMismatch(format!(
            "{dense_name} and {codense_name} must have the domains and codomain required for {kind}"
        )));
    }

    let q = c.quantale();
    let mut witnesses = Vec::new();
    let mut cert = RepresentationCertificate {
        kind,
        alpha: alpha.clone(),
        beta: beta.clone(),
        complete: false,
        alpha_bifunctor_ok: false,
        beta_bifunctor_ok: false,
        dense_ok: false,
        codense_ok: false,
        hom_identity_ok: false,
        h_identity_ok: false,
        h: None,
        h_fully_faithful: false,
        h_ess_surjective: false,
        h_bijective: false,
        witnesses: Vec::new(),
    };

    let completeness = match is_complete(c) {
        Ok(cc) => Some(cc),
        Err(missing) => {
            witnesses.push(Witness::Incomplete { missing });
            None
        }
    };
    cert.complete = completeness.is_some();

    let mut bif_ok = |b: &VBifunctor, map: &'static str| match b.bifunctoriality_witness() {
        Some(witness) => {
            witnesses.push(Witness::NotBifunctor { map, witness });
            false
        }
        None => true,
    };
    cert.alpha_bifunctor_ok = bif_ok(alpha, "alpha");
    cert.beta_bifunctor_ok = bif_ok(beta, "beta");

    match density_witness(c, dense.images()) {
        Some(pair) => witnesses.push(Witness::NotDense { map: dense_name, pair }),
        None => cert.dense_ok = true,
    }
    match codensity_witness(c, codense.images()) {
        Some(pair) => witnesses.push(Witness::NotCodense {
            map: codense_name,
            pair,
        }),
        None => cert.codense_ok = true,
    }

    cert.hom_identity_ok = true;
    'hom: for s in shape.s().objects() {
        for w in shape.w.category().objects() {
            for r in shape.r().objects() {
                for u in shape.u_dual.category().objects() {
                    let found = c.hom(dense.get(s, w), codense.get(r, u));
                    let expected = shape.expected(s, w, r, u);
                    if found != expected {
                        let (a, b) = shape.ab(s, r);
                        witnesses.push(Witness::HomIdentity {
                            a,
                            b,
                            dense_arg: w,
                            codense_arg: u,
                            found: q.label(found).to_string(),
                            expected: q.label(expected).to_string(),
                        });
                        cert.hom_identity_ok = false;
                        break 'hom;
                    }
                }
            }
        }
    }

    if let Some(cc) = completeness {
        let h_map: Vec<Obj> = (0..lattice.len())
            .map(|i| {
                let mu = lattice.primary_map(i);
                cc.join(shape.s().objects().map(|s| dense.get(s, mu[s])))
            })
            .collect();
        let h = VFunctor::new(lattice.category().clone(), c.clone(), h_map)?;

        cert.h_identity_ok = true;
        'mate: for i in 0..lattice.len() {
            let mate = lattice.mate_map(i);
            for r in shape.r().objects() {
                for u in shape.u_dual.category().objects() {
                    let found = c.hom(h.apply(i), codense.get(r, u));
                    let expected = shape.u_dual.hom(u, mate[r]);
                    if found != expected {
                        witnesses.push(Witness::HIdentity {
                            concept: i,
                            r,
                            u,
                            found: q.label(found).to_string(),
                            expected: q.label(expected).to_string(),
                        });
                        cert.h_identity_ok = false;
                        break 'mate;
                    }
                }
            }
        }

        let m = lattice.category();
        cert.h_fully_faithful = match m
            .objects()
            .flat_map(|i| m.objects().map(move |j| (i, j)))
            .find(|&(i, j)| m.hom(i, j) != c.hom(h.apply(i), h.apply(j)))
        {
            Some(concepts) => {
                witnesses.push(Witness::NotFullyFaithful { concepts });
                false
            }
            None => true,
        };

        // μ_c s = sup_W C(dense(s, −), c), then hμ_c ≅ c
        let space = lattice.adjunction().left_space();
        let closure = lattice.adjunction().closure();
        let preimage = |obj: Obj| -> Option<usize> {
            let mu: Vec<Obj> = shape
                .s()
                .objects()
                .map(|s| {
                    let weight: Vec<Elem> = shape.w.category().objects().map(|w| c.hom(dense.get(s, w), obj)).collect();
                    shape.w.sup(&weight)
                })
                .collect();
            let p = space.position(&mu)?;
            lattice.index_of_primary(lattice_representative(&lattice, closure[p]))
        };
        cert.h_ess_surjective = true;
        for obj in c.objects() {
            if !preimage(obj).is_some_and(|i| c.is_iso(h.apply(i), obj)) {
                witnesses.push(Witness::NotEssentiallySurjective { object: obj });
                cert.h_ess_surjective = false;
                break;
            }
        }

        let mut hit = vec![false; c.len()];
        for &o in h.map() {
            hit[o] = true;
        }
        cert.h_bijective = lattice.len() == c.len() && hit.iter().all(|&b| b);
        cert.h = Some(h);
    }

    cert.witnesses = witnesses;
    Ok(cert)
}

/// Canonical self-test: the lattice of `table` against its own canonical
/// maps.
pub fn self_certificate(
    t: &TwoVarAdjunction,
    kind: Kind,
    table: &BifunctorTable,
    budget: Budget,
) -> Result<RepresentationCertificate, AdjunctionError> {
    let pair = canonical_pair(t, kind, table, budget)?;
    verify_representation_kan(t, kind, table, pair.lattice.category(), &pair.alpha, &pair.beta, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;
    use crate::vcat::is_equivalence;

    fn boolean_context() -> (TwoVarAdjunction, BifunctorTable) {
        let q = Quantale::boolean();
        let t = TwoVarAdjunction::of_quantale(&q);
        let a = VCategory::discrete(&q, vec!["a1".into(), "a2".into()]);
        let b = VCategory::discrete(&q, vec!["b1".into(), "b2".into()]);
        let phi = BifunctorTable::new(a, b, VCategory::of_quantale(&q), vec![vec![1, 0], vec![1, 1]]).unwrap();
        (t, phi)
    }

    #[test]
    fn canonical_certificates_are_valid_for_every_kind() {
        let (t, phi) = boolean_context();
        for kind in Kind::ALL {
            let cert = self_certificate(&t, kind, &phi, Budget::default()).unwrap();
            assert!(cert.is_valid(), "{kind}: {:?}", cert.witnesses);
            assert!(cert.h_bijective);
            assert!(is_equivalence(cert.h.as_ref().unwrap()));
        }
    }

    #[test]
    fn constant_beta_fails_codensity() {
        let (t, phi) = boolean_context();
        let pair = construct_alpha_beta(&t, &phi, Budget::default()).unwrap();
        let c = pair.lattice.category();
        let top = pair.lattice.completeness().top();
        let constant = VBifunctor::new(
            pair.beta.left().clone(),
            pair.beta.right().clone(),
            c.clone(),
            vec![vec![top; pair.beta.right().len()]; pair.beta.left().len()],
        )
        .unwrap();
        let cert = verify_representation(&t, &phi, c, &pair.alpha, &constant, Budget::default()).unwrap();
        assert!(!cert.codense_ok);
        assert!(!cert.is_valid());
        assert!(cert.witnesses.iter().any(|w| matches!(w, Witness::NotCodense { map: "beta", .. })));
    }

    #[test]
    fn certificate_serialises_with_witnesses() {
        let (t, phi) = boolean_context();
        let cert = self_certificate(&t, Kind::Isbell, &phi, Budget::default()).unwrap();
        let json = cert.to_json();
        assert_eq!(json["dense_ok"], true);
        assert_eq!(json["kind"], "isbell");
        assert!(json["witnesses"].as_array().unwrap().is_empty());
        assert_eq!(json["h"].as_array().unwrap().len(), 2);
    }
}
