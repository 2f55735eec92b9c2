//! Bundled contexts.

use super::schema::{CategorySpec, ContextFile, QuantaleSpec, TripleSpec, ValueRef};
use super::FcaError;
use crate::adjunction::Kind;
use crate::quantale::{Quantale, QuantaleRef};
use crate::vcat::{functor_category, Budget, VCategory};

pub const FIXTURE_NAMES: [&str; 7] = [
    "boolean-2x2",
    "v-distributor-2x2",
    "evaluation-isbell",
    "evaluation-kan",
    "singleton-cotensor",
    "hom-distributor-identity",
    "lawvere-formal-balls",
];

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub context: ContextFile,
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn cells(rows: &[&[&str]]) -> Vec<Vec<ValueRef>> {
    rows.iter().map(|r| r.iter().map(|&s| ValueRef::from(s)).collect()).collect()
}

fn hom_cells(c: &VCategory) -> Vec<Vec<ValueRef>> {
    let q = c.quantale();
    c.hom_table()
        .into_iter()
        .map(|r| r.into_iter().map(|e| ValueRef::Label(q.label(e).to_string())).collect())
        .collect()
}

fn tensor_cotensor_v() -> Option<TripleSpec> {
    Some(TripleSpec::TensorCotensor {
        tensor_cotensor: CategorySpec::Named("V".into()),
    })
}

fn base(name: &str, quantale: &str, objects: Vec<String>, attributes: Vec<String>) -> ContextFile {
    ContextFile {
        name: Some(name.to_string()),
        quantale: QuantaleSpec::Name(quantale.to_string()),
        objects,
        attributes,
        incidence: Vec::new(),
        mode: Some(Kind::Isbell),
        a_hom: None,
        b_hom: None,
        triple: None,
    }
}

/// The two-object category `a1 → a2` with `A(a1,a2) = 1/2` over `goedel(3)`.
fn evaluation_domain(q: &QuantaleRef) -> VCategory {
    VCategory::new(q.clone(), labels("a", 2), vec![vec![2, 1], vec![0, 2]]).expect("valid category")
}

/// `φ(a, μ) = μa` for `B = X^{A^op}`, `X = V = goedel(3)`.
fn evaluation(name: &str, mode: Kind) -> ContextFile {
    let q = Quantale::goedel(3).expect("goedel(3)");
    let a = evaluation_domain(&q);
    let v = VCategory::of_quantale(&q);
    let presheaves = functor_category(&a.dual(), &v, Budget::default()).expect("small presheaf category");
    let b = presheaves.category();
    let mut file = base(name, "goedel(3)", a.labels().to_vec(), b.labels().to_vec());
    file.a_hom = Some(hom_cells(&a));
    file.b_hom = Some(hom_cells(b));
    file.incidence = a
        .objects()
        .map(|i| {
            presheaves
                .maps()
                .iter()
                .map(|mu| ValueRef::Label(q.label(mu[i]).to_string()))
                .collect()
        })
        .collect();
    file.triple = tensor_cotensor_v();
    file.mode = Some(mode);
    file
}

pub fn fixture(name: &str) -> Result<Fixture, FcaError> {
    let (name, description, context) = match name {
        "boolean-2x2" => {
            let mut f = base(name, "boolean2", labels("a", 2), labels("b", 2));
            f.incidence = cells(&[&["1", "0"], &["1", "1"]]);
            ("boolean-2x2", "the classical two-object, two-attribute Boolean context", f)
        }
        "v-distributor-2x2" => {
            let mut f = base(name, "lukasiewicz(3)", labels("a", 2), labels("b", 2));
            f.incidence = cells(&[&["1", "1/2"], &["0", "1"]]);
            (
                "v-distributor-2x2",
                "a distributor between discrete two-object categories over lukasiewicz(3), with the quantale triple",
                f,
            )
        }
        "evaluation-isbell" => (
            "evaluation-isbell",
            "evaluation phi(a, mu) = mu(a) with B = X^{A^op}, X = goedel(3); every presheaf is a concept",
            evaluation(name, Kind::Isbell),
        ),
        "evaluation-kan" => (
            "evaluation-kan",
            "evaluation psi(a, mu) = mu(a) with B = X^{A^op}, X = goedel(3), read as a Kan context",
            evaluation(name, Kind::KanStar),
        ),
        "singleton-cotensor" => {
            let mut f = base(name, "lukasiewicz(3)", labels("a", 2), vec!["*".into()]);
            f.a_hom = Some(cells(&[&["1", "1/2"], &["1/2", "1"]]));
            f.incidence = cells(&[&["1"], &["1/2"]]);
            f.triple = tensor_cotensor_v();
            (
                "singleton-cotensor",
                "a single presheaf tau on a two-object category over lukasiewicz(3); concepts are the cotensors v -> tau",
                f,
            )
        }
        "hom-distributor-identity" => {
            let hom: &[&[&str]] = &[&["1", "1", "1"], &["1/2", "1", "1"], &["0", "0", "1"]];
            let mut f = base(name, "goedel(3)", labels("a", 3), labels("a", 3));
            f.a_hom = Some(cells(hom));
            f.b_hom = Some(cells(hom));
            f.incidence = cells(hom);
            f.triple = tensor_cotensor_v();
            f.mode = Some(Kind::KanDag);
            (
                "hom-distributor-identity",
                "zeta = hom of a three-object category over goedel(3); every object of (X^A)^op is a concept",
                f,
            )
        }
        "lawvere-formal-balls" => {
            let d: &[&[&str]] = &[&["0", "1", "2"], &["1", "0", "1"], &["2", "1", "0"]];
            let mut f = base(name, "lawvere(4)", labels("p", 3), labels("p", 3));
            f.a_hom = Some(cells(d));
            f.b_hom = Some(cells(d));
            f.incidence = cells(d);
            (
                "lawvere-formal-balls",
                "a three-point metric space over lawvere(4) with its distance as incidence; formal balls A(-,a) + r",
                f,
            )
        }
        other => return Err(FcaError::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name,
        description,
        context,
    })
}
