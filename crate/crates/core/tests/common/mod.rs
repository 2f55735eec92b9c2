//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's enumeration or
//! operator code; only the raw tables of quantales and categories are read.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qcat::adjunction::BifunctorTable;
use qcat::quantale::{Elem, Quantale, QuantaleRef};
use qcat::vcat::VCategory;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// All `n^m` maps `{0..m} → {0..n}` in lexicographic order.
pub fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Least upper bound from the order table alone.
pub fn lub(q: &Quantale, items: &[Elem]) -> Elem {
    let ub: Vec<Elem> = q.elements().filter(|&u| items.iter().all(|&i| q.leq(i, u))).collect();
    *ub.iter()
        .find(|&&u| ub.iter().all(|&v| q.leq(u, v)))
        .expect("finite complete lattice")
}

pub fn glb(q: &Quantale, items: &[Elem]) -> Elem {
    let lb: Vec<Elem> = q.elements().filter(|&l| items.iter().all(|&i| q.leq(l, i))).collect();
    *lb.iter()
        .find(|&&l| lb.iter().all(|&v| q.leq(v, l)))
        .expect("finite complete lattice")
}

/// `x → y` as the largest `z` with `x ⊗ z ≤ y`, by search.
pub fn residuum(q: &Quantale, x: Elem, y: Elem) -> Elem {
    let below: Vec<Elem> = q.elements().filter(|&z| q.leq(q.tensor(x, z), y)).collect();
    lub(q, &below)
}

/// Hom of the quantale as a category over itself.
pub fn vhom(q: &Quantale, x: Elem, y: Elem) -> Elem {
    residuum(q, x, y)
}

/// All V-functors `src → tgt` by filtering every map.
pub fn brute_functors(src: &VCategory, tgt: &VCategory) -> Vec<Vec<usize>> {
    let q = src.quantale();
    all_maps(src.len(), tgt.len())
        .into_iter()
        .filter(|f| {
            src.objects()
                .all(|x| src.objects().all(|y| q.leq(src.hom(x, y), tgt.hom(f[x], f[y]))))
        })
        .collect()
}

/// `⋀_x tgt(f x, g x)`.
pub fn pointwise_hom(tgt: &VCategory, f: &[usize], g: &[usize]) -> Elem {
    let q = tgt.quantale();
    let values: Vec<Elem> = f.iter().zip(g).map(|(&a, &b)| tgt.hom(a, b)).collect();
    glb(q, &values)
}

/// All presheaves `A^op → V` as value vectors.
pub fn presheaves(a: &VCategory) -> Vec<Vec<Elem>> {
    let q = a.quantale();
    all_maps(a.len(), q.len())
        .into_iter()
        .filter(|mu| {
            // A(x,y) ≤ μy → μx
            a.objects()
                .all(|x| a.objects().all(|y| q.leq(a.hom(x, y), residuum(q, mu[y], mu[x]))))
        })
        .collect()
}

/// All copresheaves `A → V`.
pub fn copresheaves(a: &VCategory) -> Vec<Vec<Elem>> {
    presheaves(&a.dual())
}

/// Presheaf hom `⋀_a μa → μ'a`.
pub fn presheaf_hom(q: &Quantale, mu: &[Elem], nu: &[Elem]) -> Elem {
    let values: Vec<Elem> = mu.iter().zip(nu).map(|(&x, &y)| residuum(q, x, y)).collect();
    glb(q, &values)
}

/// A random V-category on `n` objects by rejection sampling; falls back to
/// the discrete category after many rejections.
pub fn random_category(rng: &mut Rng8, q: &QuantaleRef, n: usize) -> VCategory {
    for _ in 0..500 {
        let hom: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { q.top() } else { rng.gen_range(0..q.len()) })
                    .collect()
            })
            .collect();
        if let Ok(c) = VCategory::new(q.clone(), names("o", n), hom) {
            return c;
        }
    }
    VCategory::discrete(q, names("o", n))
}

/// Every V-category with `n ≤ 2` objects whose diagonal is the top element.
pub fn all_small_categories(q: &QuantaleRef, n: usize) -> Vec<VCategory> {
    match n {
        1 => vec![VCategory::singleton(q)],
        2 => q
            .elements()
            .flat_map(|u| q.elements().map(move |v| (u, v)))
            .filter_map(|(u, v)| VCategory::new(q.clone(), names("o", 2), vec![vec![q.top(), u], vec![v, q.top()]]).ok())
            .collect(),
        _ => panic!("only n ≤ 2"),
    }
}

/// Every bifunctorial table `A^op ⊗ B → target`, by filtering all tables.
pub fn all_tables(a: &VCategory, b: &VCategory, target: &VCategory) -> Vec<BifunctorTable> {
    all_maps(a.len() * b.len(), target.len())
        .into_iter()
        .filter_map(|flat| {
            let values = flat.chunks(b.len().max(1)).map(<[usize]>::to_vec).collect();
            BifunctorTable::new(a.clone(), b.clone(), target.clone(), values).ok()
        })
        .collect()
}

/// A uniformly random bifunctorial table.
pub fn random_table(rng: &mut Rng8, a: &VCategory, b: &VCategory, target: &VCategory) -> BifunctorTable {
    let mut tables = all_tables(a, b, target);
    let k = rng.gen_range(0..tables.len());
    tables.swap_remove(k)
}

/// Classical formal concepts `(extent, intent)` by closing every subset of
/// objects.
pub fn galois_concepts(incidence: &[Vec<bool>]) -> BTreeSet<(Vec<bool>, Vec<bool>)> {
    let na = incidence.len();
    let nb = incidence.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << na) {
        let subset: Vec<bool> = (0..na).map(|i| mask & (1 << i) != 0).collect();
        let intent: Vec<bool> = (0..nb).map(|j| (0..na).all(|i| !subset[i] || incidence[i][j])).collect();
        let extent: Vec<bool> = (0..na).map(|i| (0..nb).all(|j| !intent[j] || incidence[i][j])).collect();
        out.insert((extent, intent));
    }
    out
}

pub fn quantales() -> Vec<(&'static str, QuantaleRef)> {
    vec![
        ("boolean2", Quantale::boolean()),
        ("lukasiewicz(3)", Quantale::lukasiewicz(3).unwrap()),
    ]
}
