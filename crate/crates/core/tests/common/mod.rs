//! Oracles computed straight from color matrices, sharing no code with the
//! library beyond reading `color`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use semidirect_core::{quotient, CMorphism, ClosedSubset, RelSet, Scheme};

/// `a[p][q][s]` by counting middle points for every pair; `None` if two
/// pairs with the same color disagree.
pub fn triple_loop_constants(s: &Scheme) -> Option<Vec<Vec<Vec<u32>>>> {
    let n = s.order();
    let r = s.rank();
    let mut a = vec![vec![vec![u32::MAX; r]; r]; r];
    for x in 0..n {
        for z in 0..n {
            let c = s.color(x, z);
            let mut counts = vec![vec![0u32; r]; r];
            for y in 0..n {
                counts[s.color(x, y)][s.color(y, z)] += 1;
            }
            for p in 0..r {
                for q in 0..r {
                    if a[p][q][c] == u32::MAX {
                        a[p][q][c] = counts[p][q];
                    } else if a[p][q][c] != counts[p][q] {
                        return None;
                    }
                }
            }
        }
    }
    Some(a)
}

pub fn transpose_star(s: &Scheme, p: usize) -> usize {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            if s.color(x, y) == p {
                return s.color(y, x);
            }
        }
    }
    panic!("relation {p} is empty")
}

/// Colors of `(x, z)` over all paths `x -p- y -q- z`.
pub fn path_product(s: &Scheme, ps: &BTreeSet<usize>, qs: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = s.order();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if !ps.contains(&s.color(x, y)) {
                continue;
            }
            for z in 0..n {
                if qs.contains(&s.color(y, z)) {
                    out.insert(s.color(x, z));
                }
            }
        }
    }
    out
}

pub fn one(p: usize) -> BTreeSet<usize> {
    BTreeSet::from([p])
}

pub fn set_of(r: &RelSet) -> BTreeSet<usize> {
    r.iter().collect()
}

/// `0 ∈ T` and `T* T ⊆ T`.
pub fn brute_closed(s: &Scheme, t: &BTreeSet<usize>) -> bool {
    if !t.contains(&0) {
        return false;
    }
    let star: BTreeSet<usize> = t.iter().map(|&p| transpose_star(s, p)).collect();
    path_product(s, &star, t).is_subset(t)
}

/// `p T = T p` for every relation `p`.
pub fn brute_normal(s: &Scheme, t: &BTreeSet<usize>) -> bool {
    (0..s.rank()).all(|p| path_product(s, &one(p), t) == path_product(s, t, &one(p)))
}

/// Every closed subset, by testing all subsets containing `0`.
pub fn brute_closed_subsets(s: &Scheme) -> BTreeSet<BTreeSet<usize>> {
    let r = s.rank();
    (0u64..1 << (r - 1))
        .map(|mask| {
            let mut t = BTreeSet::from([0]);
            t.extend((1..r).filter(|&p| mask >> (p - 1) & 1 == 1));
            t
        })
        .filter(|t| brute_closed(s, t))
        .collect()
}

/// Two color matrices on the same points induce the same partition of pairs.
pub fn same_pair_partition(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for (ra, rb) in a.iter().zip(b) {
        for (&ca, &cb) in ra.iter().zip(rb) {
            if *fwd.entry(ca).or_insert(cb) != cb || *back.entry(cb).or_insert(ca) != ca {
                return false;
            }
        }
    }
    a.len() == b.len()
}

/// All based point bijections `a -> b` carrying each color class onto a
/// color class, by plain backtracking.
pub fn all_based_isos(a: &Scheme, b: &Scheme) -> Vec<Vec<usize>> {
    fn go(a: &Scheme, b: &Scheme, img: &mut Vec<usize>, rel: &mut BTreeMap<usize, usize>, out: &mut Vec<Vec<usize>>) {
        let x = img.len();
        if x == a.order() {
            let inj: BTreeSet<usize> = rel.values().copied().collect();
            if inj.len() == rel.len() {
                out.push(img.clone());
            }
            return;
        }
        for y in 0..b.order() {
            if img.contains(&y) || (x == a.basepoint()) != (y == b.basepoint()) {
                continue;
            }
            let mut added = Vec::new();
            let mut ok = true;
            img.push(y);
            'check: for w in 0..=x {
                for (p, q) in [(a.color(w, x), b.color(img[w], y)), (a.color(x, w), b.color(y, img[w]))] {
                    match rel.get(&p) {
                        Some(&q0) if q0 != q => {
                            ok = false;
                            break 'check;
                        }
                        Some(_) => {}
                        None => {
                            rel.insert(p, q);
                            added.push(p);
                        }
                    }
                }
            }
            if ok {
                go(a, b, img, rel, out);
            }
            img.pop();
            for p in added {
                rel.remove(&p);
            }
        }
    }
    let mut out = Vec::new();
    if a.order() == b.order() && a.rank() == b.rank() {
        go(a, b, &mut Vec::new(), &mut BTreeMap::new(), &mut out);
    }
    out
}

/// Every morphism `dom -> cod` of the category: normal closed subsets on
/// both sides and each based isomorphism of the quotients.
pub fn all_cmorphisms(dom: &Arc<Scheme>, cod: &Arc<Scheme>) -> Vec<CMorphism> {
    let mut out = Vec::new();
    let normals = |s: &Scheme| -> Vec<BTreeSet<usize>> {
        brute_closed_subsets(s).into_iter().filter(|t| brute_normal(s, t)).collect()
    };
    for t in normals(dom) {
        for u in normals(cod) {
            let t_sub = ClosedSubset::new(&**dom, t.iter().copied().collect()).unwrap();
            let u_sub = ClosedSubset::new(&**cod, u.iter().copied().collect()).unwrap();
            let qd = quotient(dom, &t_sub).unwrap();
            let qc = quotient(cod, &u_sub).unwrap();
            for iso in all_based_isos(&qd.scheme, &qc.scheme) {
                let point_iso: Vec<usize> = (0..dom.order())
                    .map(|x| qc.partition.representative(iso[qd.block_of(x)]))
                    .collect();
                out.push(CMorphism::new(dom.clone(), cod.clone(), t_sub.clone(), u_sub.clone(), &point_iso).unwrap());
            }
        }
    }
    out
}

/// Color matrix of the wreath product: copies of `t` on the blocks, and
/// the nonidentity `u` relations between blocks.
pub fn wreath_matrix(u: &Scheme, t: &Scheme) -> Vec<Vec<usize>> {
    let (m, n) = (u.order(), t.order());
    let code = |y1: usize, x1: usize, y2: usize, x2: usize| -> usize {
        if y1 == y2 {
            t.color(x1, x2)
        } else {
            t.rank() + u.color(y1, y2) - 1
        }
    };
    (0..m * n).map(|a| (0..m * n).map(|b| code(a / n, a % n, b / n, b % n)).collect()).collect()
}

/// Color matrix of the direct product, colors `(u, t)` coded as `u * r_t + t`.
pub fn direct_matrix(u: &Scheme, t: &Scheme) -> Vec<Vec<usize>> {
    let (m, n) = (u.order(), t.order());
    (0..m * n)
        .map(|a| (0..m * n).map(|b| u.color(a / n, b / n) * t.rank() + t.color(a % n, b % n)).collect())
        .collect()
}
