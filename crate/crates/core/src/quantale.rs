//! Finite commutative unital quantales.
//!
//! A quantale is stored as index-based tables over an ordered list of opaque
//! labels. Residuation and the binary lattice operations are derived once at
//! construction and cached, so every later query is a table lookup.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Index of a quantale element.
pub type Elem = usize;

/// Shared handle to a validated quantale. Categories compare their base by
/// pointer identity, so two separately built quantales never mix.
pub type QuantaleRef = Arc<Quantale>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("order is not a partial order: {law} fails at {witness:?}")]
    NotPartialOrder { law: &'static str, witness: Vec<Elem> },
    #[error("lattice incomplete: no {missing} for {witness:?}")]
    LatticeIncomplete {
        missing: &'static str,
        witness: Vec<Elem>,
    },
    #[error("not a commutative monoid: {law} fails at {witness:?}")]
    NotMonoid { law: &'static str, witness: Vec<Elem> },
    #[error("tensor does not distribute over joins at {witness:?}")]
    NotDistributive { witness: Vec<Elem> },
    #[error("unknown quantale family `{0}`")]
    UnknownFamily(String),
    #[error("bad size {n} for family {family}")]
    BadSize { family: Family, n: usize },
}

/// Built-in quantale families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Boolean2,
    Goedel,
    Lukasiewicz,
    Lawvere,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Boolean2 => "boolean2",
            Family::Goedel => "goedel",
            Family::Lukasiewicz => "lukasiewicz",
            Family::Lawvere => "lawvere",
        })
    }
}

impl FromStr for Family {
    type Err = QuantaleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "boolean2" | "boolean" | "2" => Ok(Family::Boolean2),
            "goedel" | "godel" | "gödel" => Ok(Family::Goedel),
            "lukasiewicz" | "łukasiewicz" => Ok(Family::Lukasiewicz),
            "lawvere" => Ok(Family::Lawvere),
            other => Err(QuantaleError::UnknownFamily(other.to_string())),
        }
    }
}

/// A finite commutative unital quantale `(V, ⊗, k)`.
#[derive(Debug)]
pub struct Quantale {
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    tensor: Vec<Elem>,
    unit: Elem,
    residuum: Vec<Elem>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Quantale {
    /// Validates the tables and derives residuation.
    ///
    /// Distributivity is checked on binary joins and the empty join, which
    /// suffices in a finite lattice.
    pub fn new(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<Elem>>,
        unit: Elem,
    ) -> Result<QuantaleRef, QuantaleError> {
        let n = labels.len();
        if n == 0 {
            return Err(QuantaleError::Shape("empty carrier".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::Shape(format!("leq must be {n}x{n}")));
        }
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::Shape(format!("tensor must be {n}x{n}")));
        }
        if let Some(bad) = tensor.iter().flatten().find(|&&e| e >= n) {
            return Err(QuantaleError::Shape(format!(
                "tensor entry {bad} out of range 0..{n}"
            )));
        }
        if unit >= n {
            return Err(QuantaleError::Shape(format!("unit {unit} out of range 0..{n}")));
        }
        let leq: Vec<bool> = leq.into_iter().flatten().collect();
        let tensor: Vec<Elem> = tensor.into_iter().flatten().collect();
        let le = |x: Elem, y: Elem| leq[x * n + y];

        for x in 0..n {
            if !le(x, x) {
                return Err(QuantaleError::NotPartialOrder {
                    law: "reflexivity",
                    witness: vec![x],
                });
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(QuantaleError::NotPartialOrder {
                        law: "antisymmetry",
                        witness: vec![x, y],
                    });
                }
                for z in 0..n {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return Err(QuantaleError::NotPartialOrder {
                            law: "transitivity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }

        let least = |cands: &[Elem]| cands.iter().copied().find(|&c| cands.iter().all(|&d| le(c, d)));
        let greatest = |cands: &[Elem]| cands.iter().copied().find(|&c| cands.iter().all(|&d| le(d, c)));
        let all: Vec<Elem> = (0..n).collect();
        let bottom = least(&all).ok_or(QuantaleError::LatticeIncomplete {
            missing: "bottom (empty join)",
            witness: vec![],
        })?;
        let top = greatest(&all).ok_or(QuantaleError::LatticeIncomplete {
            missing: "top (empty meet)",
            witness: vec![],
        })?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let upper: Vec<Elem> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
                join[x * n + y] = least(&upper).ok_or(QuantaleError::LatticeIncomplete {
                    missing: "join",
                    witness: vec![x, y],
                })?;
                let lower: Vec<Elem> = (0..n).filter(|&l| le(l, x) && le(l, y)).collect();
                meet[x * n + y] = greatest(&lower).ok_or(QuantaleError::LatticeIncomplete {
                    missing: "meet",
                    witness: vec![x, y],
                })?;
            }
        }

        let t = |x: Elem, y: Elem| tensor[x * n + y];
        for x in 0..n {
            if t(unit, x) != x {
                return Err(QuantaleError::NotMonoid {
                    law: "unit",
                    witness: vec![unit, x],
                });
            }
            for y in 0..n {
                if t(x, y) != t(y, x) {
                    return Err(QuantaleError::NotMonoid {
                        law: "commutativity",
                        witness: vec![x, y],
                    });
                }
                for z in 0..n {
                    if t(t(x, y), z) != t(x, t(y, z)) {
                        return Err(QuantaleError::NotMonoid {
                            law: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        for x in 0..n {
            if t(x, bottom) != bottom {
                return Err(QuantaleError::NotDistributive { witness: vec![x] });
            }
            for y in 0..n {
                for z in 0..n {
                    if t(x, join[y * n + z]) != join[t(x, y) * n + t(x, z)] {
                        return Err(QuantaleError::NotDistributive {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }

        // x → y = ⋁{z : x ⊗ z ≤ y}
        let mut residuum = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                residuum[x * n + y] = (0..n)
                    .filter(|&z| le(t(x, z), y))
                    .fold(bottom, |acc, z| join[acc * n + z]);
            }
        }

        Ok(Arc::new(Quantale {
            labels,
            n,
            leq,
            tensor,
            unit,
            residuum,
            join,
            meet,
            bottom,
            top,
        }))
    }

    /// Looks up a built-in family by name.
    pub fn builtin(name: &str, n: usize) -> Result<QuantaleRef, QuantaleError> {
        match name.parse::<Family>()? {
            Family::Boolean2 => Ok(Self::boolean()),
            Family::Goedel => Self::goedel(n),
            Family::Lukasiewicz => Self::lukasiewicz(n),
            Family::Lawvere => Self::lawvere(n),
        }
    }

    /// The two-element Boolean algebra with `⊗ = ∧`.
    pub fn boolean() -> QuantaleRef {
        chain(vec!["0".into(), "1".into()], |x, y| x.min(y)).expect("boolean algebra is a quantale")
    }

    /// The `n`-chain with `⊗ = min`.
    pub fn goedel(n: usize) -> Result<QuantaleRef, QuantaleError> {
        if n < 2 {
            return Err(QuantaleError::BadSize {
                family: Family::Goedel,
                n,
            });
        }
        chain(unit_interval_labels(n), |x, y| x.min(y))
    }

    /// `n` equally spaced points of `[0,1]` with `x ⊗ y = max(0, x + y − 1)`.
    pub fn lukasiewicz(n: usize) -> Result<QuantaleRef, QuantaleError> {
        if n < 2 {
            return Err(QuantaleError::BadSize {
                family: Family::Lukasiewicz,
                n,
            });
        }
        // on indices: max(0, i + j − (n−1))
        chain(unit_interval_labels(n), move |x, y| (x + y).saturating_sub(n - 1))
    }

    /// Discretised Lawvere quantale `{0, 1, …, n−1, ∞}` ordered by reverse
    /// numeric order, with saturating addition and unit `0`.
    ///
    /// Element index `i < n` carries the number `i`; index `n` is `∞`.
    pub fn lawvere(n: usize) -> Result<QuantaleRef, QuantaleError> {
        if n < 2 {
            return Err(QuantaleError::BadSize {
                family: Family::Lawvere,
                n,
            });
        }
        let size = n + 1;
        let mut labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        labels.push("inf".into());
        let leq = (0..size)
            .map(|x| (0..size).map(|y| x >= y).collect())
            .collect();
        let tensor = (0..size)
            .map(|x| (0..size).map(|y| if x + y >= n { n } else { x + y }).collect())
            .collect();
        Self::new(labels, leq, tensor, 0)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn tensor(&self, x: Elem, y: Elem) -> Elem {
        self.tensor[x * self.n + y]
    }

    /// `x → y`, the right adjoint of `x ⊗ −`.
    #[inline]
    pub fn residuate(&self, x: Elem, y: Elem) -> Elem {
        self.residuum[x * self.n + y]
    }

    #[inline]
    pub fn unit(&self) -> Elem {
        self.unit
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn join2(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }

    #[inline]
    pub fn meet2(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    /// Join of a possibly empty family; the empty join is the bottom.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join2(acc, x))
    }

    /// Meet of a possibly empty family; the empty meet is the top.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    /// `k ≤ x`.
    #[inline]
    pub fn is_unit_below(&self, x: Elem) -> bool {
        self.leq(self.unit, x)
    }

    /// Rows of the order relation, for serialisation.
    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn tensor_table(&self) -> Vec<Vec<Elem>> {
        self.tensor.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn residuum_table(&self) -> Vec<Vec<Elem>> {
        self.residuum.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// A chain whose index order is the lattice order.
fn chain(labels: Vec<String>, op: impl Fn(Elem, Elem) -> Elem) -> Result<QuantaleRef, QuantaleError> {
    let n = labels.len();
    let leq = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
    let tensor = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
    Quantale::new(labels, leq, tensor, n - 1)
}

fn unit_interval_labels(n: usize) -> Vec<String> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let d = n - 1;
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == d => "1".to_string(),
            i => {
                let g = gcd(i, d);
                format!("{}/{}", i / g, d / g)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_triples(q: &Quantale) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        q.elements()
            .flat_map(move |x| q.elements().flat_map(move |y| q.elements().map(move |z| (x, y, z))))
    }

    #[test]
    fn boolean_from_tables() {
        let q = Quantale::new(
            vec!["0".into(), "1".into()],
            vec![vec![true, true], vec![false, true]],
            vec![vec![0, 0], vec![0, 1]],
            1,
        )
        .unwrap();
        assert_eq!(q.residuate(1, 0), 0);
        assert_eq!(q.residuate(0, 0), 1);
        assert_eq!(q.join([0, 1]), 1);
        assert_eq!(q.join([]), 0);
        assert_eq!(q.meet([]), 1);
    }

    #[test]
    fn lukasiewicz_three_chain() {
        let q = Quantale::lukasiewicz(3).unwrap();
        assert_eq!(q.labels(), ["0", "1/2", "1"]);
        assert_eq!(q.tensor(1, 1), 0);
        assert_eq!(q.tensor(1, 2), 1);
        // min(1, 1 − x + y) at x = ½, y = 0
        assert_eq!(q.residuate(1, 0), 1);
        assert_eq!(q.meet([1, 2]), 1);
    }

    #[test]
    fn join_as_tensor_is_rejected() {
        let err = Quantale::new(
            vec!["0".into(), "1".into()],
            vec![vec![true, true], vec![false, true]],
            vec![vec![0, 1], vec![1, 1]],
            1,
        )
        .unwrap_err();
        assert_eq!(
            err,
            QuantaleError::NotMonoid {
                law: "unit",
                witness: vec![1, 0]
            }
        );
    }

    #[test]
    fn non_lattice_is_rejected() {
        // two incomparable elements have neither a join nor a bottom
        let err = Quantale::new(
            vec!["a".into(), "b".into()],
            vec![vec![true, false], vec![false, true]],
            vec![vec![0, 0], vec![0, 1]],
            1,
        )
        .unwrap_err();
        assert!(matches!(err, QuantaleError::LatticeIncomplete { .. }), "{err}");
    }

    #[test]
    fn non_distributive_is_rejected() {
        // M3 diamond with ⊗ = ∧ fails distributivity
        let le = |x: usize, y: usize| x == y || x == 0 || y == 4;
        let leq = (0..5).map(|x| (0..5).map(|y| le(x, y)).collect()).collect();
        let meet = |x: usize, y: usize| if x == y { x } else if x == 4 { y } else if y == 4 { x } else { 0 };
        let tensor = (0..5).map(|x| (0..5).map(|y| meet(x, y)).collect()).collect();
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let err = Quantale::new(labels, leq, tensor, 4).unwrap_err();
        assert!(matches!(err, QuantaleError::NotDistributive { .. }), "{err}");
    }

    #[test]
    fn lawvere_saturates() {
        let q = Quantale::lawvere(4).unwrap();
        assert_eq!(q.len(), 5);
        assert_eq!(q.unit(), 0);
        assert_eq!(q.label(q.tensor(2, 3)), "inf");
        assert_eq!(q.tensor(1, 2), 3);
        assert_eq!(q.label(q.join([])), "inf");
        assert_eq!(q.label(q.top()), "0");
        // x → y = max{0, y − x} for finite y
        for x in 0..5 {
            for y in 0..4usize {
                let expected = y.saturating_sub(x);
                assert_eq!(q.residuate(x, y), expected, "{x} -> {y}");
            }
        }
        assert_eq!(q.residuate(3, 1), 0);
    }

    #[test]
    fn goedel_residuum() {
        let q = Quantale::goedel(3).unwrap();
        assert_eq!(q.residuate(1, 0), 0);
        assert_eq!(q.residuate(0, 1), 2);
        assert_eq!(q.residuate(2, 1), 1);
    }

    #[test]
    fn builtin_lookup() {
        let q = Quantale::builtin("boolean2", 0).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(q.residuate(x, y), usize::from(x == 0 || y == 1));
            }
        }
        assert!(matches!(
            Quantale::builtin("product", 3),
            Err(QuantaleError::UnknownFamily(_))
        ));
        assert!(matches!(
            Quantale::builtin("goedel", 1),
            Err(QuantaleError::BadSize { .. })
        ));
    }

    #[test]
    fn residuation_adjointness_on_builtins() {
        for q in [
            Quantale::boolean(),
            Quantale::goedel(5).unwrap(),
            Quantale::lukasiewicz(6).unwrap(),
            Quantale::lawvere(5).unwrap(),
        ] {
            for (x, y, z) in all_triples(&q) {
                assert_eq!(q.leq(q.tensor(x, y), z), q.leq(x, q.residuate(y, z)));
            }
        }
    }

    #[test]
    fn fraction_labels() {
        assert_eq!(unit_interval_labels(5), ["0", "1/4", "1/2", "3/4", "1"]);
    }
}
