//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use crate::adjunction::ConceptLattice;
use crate::vcat::{Obj, VCategory};

/// Least-index representatives of the `≅`-classes, ascending.
pub fn representatives(c: &VCategory) -> Vec<Obj> {
    c.objects().filter(|&x| c.canonical(x) == x).collect()
}

/// Covering pairs `(lower, upper)` of the underlying order on class
/// representatives.
pub fn covering_pairs(c: &VCategory) -> Vec<(Obj, Obj)> {
    let reps = representatives(c);
    let below = |x: Obj, y: Obj| x != y && c.le(x, y);
    let mut pairs = Vec::new();
    for &x in &reps {
        for &y in &reps {
            if below(x, y) && !reps.iter().any(|&k| below(x, k) && below(k, y)) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes are concepts labelled `extent|intent`, edges go from each concept
/// to the concepts covering it.
pub fn to_dot(lattice: &ConceptLattice) -> String {
    let c = lattice.category();
    let adj = lattice.adjunction();
    let list = |space: &VCategory, map: &[Obj]| {
        let cells: Vec<&str> = map.iter().map(|&o| space.label(o)).collect();
        format!("[{}]", cells.join(","))
    };
    let mut out = String::new();
    writeln!(out, "digraph concepts {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for i in representatives(c) {
        let label = format!(
            "{}|{}",
            list(adj.left_space().target(), lattice.primary_map(i)),
            list(adj.right_space().target(), lattice.mate_map(i))
        );
        writeln!(out, "  c{i} [label=\"{}\"];", escape(&label)).unwrap();
    }
    for (x, y) in covering_pairs(c) {
        writeln!(out, "  c{x} -> c{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;

    #[test]
    fn chain_covers() {
        let q = Quantale::goedel(4).unwrap();
        let v = VCategory::of_quantale(&q);
        assert_eq!(covering_pairs(&v), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn iso_objects_collapse() {
        let q = Quantale::boolean();
        let c = VCategory::new(q, vec!["x".into(), "y".into()], vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(representatives(&c), vec![0]);
        assert!(covering_pairs(&c).is_empty());
    }
}
