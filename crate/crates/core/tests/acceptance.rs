//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any
//! failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use semidirect_core::crosscheck::counted_constants;
use semidirect_core::fixtures;
use semidirect_core::iso::is_symmetric;
use semidirect_core::recovery::boundary_subsets;
use semidirect_core::{
    algebraic_automorphisms, canonical_split, enumerate_closed_subsets, find_isomorphism, reconstruct,
    semidirect_product, subscheme, CMorphism, Scheme,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sorted_valencies(s: &Scheme) -> Vec<usize> {
    let mut v = s.valencies().to_vec();
    v.sort_unstable();
    v
}

fn product_reproduction() -> Outcome {
    let start = Instant::now();
    let product = fixtures::s12_product();
    let elapsed = start.elapsed();
    let s = &product.scheme;
    ensure!(s.order() == 12 && s.rank() == 6, "order/rank {}/{}", s.order(), s.rank());
    ensure!(triple_loop_constants(s).is_some(), "pair counts are not regular");
    ensure!(sorted_valencies(s) == [1, 1, 2, 2, 3, 3], "valencies {:?}", sorted_valencies(s));
    let thin = (0..6).filter(|&p| s.valency(p) == 1).count();
    ensure!(thin == 2, "{thin} thin relations");
    let big: Vec<usize> = (0..6).filter(|&p| s.valency(p) == 3).collect();
    ensure!(
        transpose_star(s, big[0]) == big[1] && transpose_star(s, big[1]) == big[0],
        "valency-3 relations {big:?} are not conjugate"
    );
    // [1,t] = [1,1] and [3,t] = [3,1]: one relation per odd u, covering both labels
    for u in [1, 3] {
        let rels: Vec<usize> = (0..6).filter(|&p| product.label_of(p).0 == u).collect();
        ensure!(rels.len() == 1, "u = {u} splits into {rels:?}");
        let class = &product.label_of(rels[0]).1;
        ensure!(class.iter().collect::<Vec<_>>() == [0, 1], "u = {u} class {class:?}");
        ensure!(product.label_lookup(u, 0) == product.label_lookup(u, 1), "[{u},t] != [{u},1]");
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("order 12, rank 6, valencies [1, 1, 2, 2, 3, 3] in {elapsed:?}"))
}

fn closed_subset_census() -> Outcome {
    let s = fixtures::s12();
    let found: BTreeSet<BTreeSet<usize>> =
        enumerate_closed_subsets(&s).iter().map(|c| set_of(c.members())).collect();
    let expected: BTreeSet<BTreeSet<usize>> = [
        BTreeSet::from([0]),
        set_of(fixtures::k1().members()),
        set_of(fixtures::k2().members()),
        set_of(fixtures::k3().members()),
        (0..6).collect(),
    ]
    .into();
    ensure!(found == expected, "library census {found:?}");
    let brute = brute_closed_subsets(&s);
    ensure!(brute == expected, "brute-force census {brute:?}");
    for k in [fixtures::k1(), fixtures::k2(), fixtures::k3()] {
        ensure!(brute_normal(&s, &set_of(k.members())), "{:?} is not normal", k.members());
    }
    Ok("{0}, K1, K2, K3, full; K1, K2, K3 normal".into())
}

fn classified_isomorphism() -> Outcome {
    let s = fixtures::s12();
    let h = fixtures::hm34();
    let start = Instant::now();
    let iso = find_isomorphism(&s, &h, false).ok_or("no isomorphism found")?;
    let elapsed = start.elapsed();
    let n = s.order();
    ensure!(
        same_pair_partition(
            &(0..n).map(|x| (0..n).map(|y| iso.rel_bij[s.color(x, y)]).collect()).collect::<Vec<Vec<usize>>>(),
            &(0..n).map(|x| (0..n).map(|y| h.color(iso.point_bij[x], iso.point_bij[y])).collect()).collect::<Vec<Vec<usize>>>(),
        ),
        "witness does not carry colors onto colors"
    );
    for x in 0..n {
        for y in 0..n {
            ensure!(iso.rel_bij[s.color(x, y)] == h.color(iso.point_bij[x], iso.point_bij[y]), "pair ({x}, {y})");
        }
    }
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("witness {:?} in {elapsed:?}", iso.point_bij))
}

fn split_properties() -> Outcome {
    for (name, action) in fixtures::fixture_actions() {
        let t = action.t_scheme().clone();
        let product = semidirect_product(&action);
        let sd = canonical_split(&product, t.clone()).map_err(|e| format!("{name}: {e}"))?;
        let s = &*sd.s;
        let tt = set_of(sd.t_tilde.members());
        ensure!(brute_closed(s, &tt) && brute_normal(s, &tt), "{name}: T̃ not normal");
        let sub = subscheme(s, &sd.t_tilde, s.basepoint()).map_err(|e| e.to_string())?;
        ensure!(find_isomorphism(&t, &sub.scheme, true).is_some(), "{name}: basepoint coset is not T");
        // iπ: one point per coset, and distinct U relations reach distinct
        // unions of double cosets
        let coset_of = |z: usize| -> BTreeSet<usize> { (0..s.order()).filter(|&w| tt.contains(&s.color(z, w))).collect() };
        let cosets: BTreeSet<BTreeSet<usize>> = sd.i_map.iter().map(|&z| coset_of(z)).collect();
        let all_cosets: BTreeSet<BTreeSet<usize>> = (0..s.order()).map(coset_of).collect();
        ensure!(cosets.len() == sd.i_map.len() && cosets == all_cosets, "{name}: iπ is not onto the cosets");
        let u = action.u_scheme();
        for (y1, &z1) in sd.i_map.iter().enumerate() {
            for (y2, &z2) in sd.i_map.iter().enumerate() {
                let class = path_product(s, &path_product(s, &tt, &one(s.color(z1, z2))), &tt);
                for (w1, &v1) in sd.i_map.iter().enumerate() {
                    for (w2, &v2) in sd.i_map.iter().enumerate() {
                        let same_u = u.color(y1, y2) == u.color(w1, w2);
                        ensure!(same_u == class.contains(&s.color(v1, v2)), "{name}: iπ relation map is not bijective");
                    }
                }
            }
        }
        for &ui in &sd.i_rel {
            for &t in &tt {
                ensure!(path_product(s, &one(t), &one(ui)).len() == 1, "{name}: |t(ui)| != 1 for {t}, {ui}");
                ensure!(path_product(s, &one(ui), &one(t)).len() == 1, "{name}: |(ui)t| != 1 for {t}, {ui}");
            }
        }
    }
    Ok("example, trivial, full".into())
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    for (name, action) in fixtures::fixture_actions() {
        let t = action.t_scheme().clone();
        let product = semidirect_product(&action);
        let sd = canonical_split(&product, t.clone()).map_err(|e| format!("{name}: {e}"))?;
        let r = reconstruct(&sd, t).map_err(|e| format!("{name}: {e}"))?;
        let s = &*sd.s;
        let target = &r.product.scheme;
        let ok = r.is_isomorphism(s)
            && (0..s.order()).all(|a| {
                (0..s.order()).all(|b| r.eta_rel[s.color(a, b)] == target.color(r.eta[a], r.eta[b]))
            })
            && r.eta.iter().collect::<BTreeSet<_>>().len() == s.order()
            && r.eta[s.basepoint()] == target.basepoint();
        ensure!(ok, "{name}: η is not an isomorphism");
        verdicts.push(name);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("{} in {elapsed:?}", verdicts.join(", ")))
}

fn degenerate_oracles() -> Outcome {
    let u = fixtures::u4();
    let t = fixtures::t3();
    let au = triple_loop_constants(&u).ok_or("U4 irregular")?;
    let at = triple_loop_constants(&t).ok_or("T3 irregular")?;

    let direct = fixtures::direct_u4_t3();
    let n = t.order();
    ensure!(same_pair_partition(&direct.color_matrix(), &direct_matrix(&u, &t)), "direct product pairs differ");
    // factor coordinates of each relation, read from a witness pair
    let coords: Vec<(usize, usize)> = (0..direct.rank())
        .map(|p| {
            let (a, b) = (0..direct.order())
                .flat_map(|a| (0..direct.order()).map(move |b| (a, b)))
                .find(|&(a, b)| direct.color(a, b) == p)
                .unwrap();
            (u.color(a / n, b / n), t.color(a % n, b % n))
        })
        .collect();
    let constants = direct.structure_constants();
    for p in 0..direct.rank() {
        for q in 0..direct.rank() {
            for s in 0..direct.rank() {
                let ((u1, t1), (u2, t2), (u3, t3)) = (coords[p], coords[q], coords[s]);
                let expected = au[u1][u2][u3] * at[t1][t2][t3];
                ensure!(constants[p][q][s] == expected, "direct a[{p}][{q}][{s}]");
            }
        }
    }

    let wreath = fixtures::wreath_u4_t3();
    ensure!(wreath.rank() == 5, "wreath rank {}", wreath.rank());
    ensure!(sorted_valencies(&wreath) == [1, 2, 3, 3, 3], "wreath valencies {:?}", sorted_valencies(&wreath));
    ensure!(same_pair_partition(&wreath.color_matrix(), &wreath_matrix(&u, &t)), "wreath pairs differ");
    let oracle = Scheme::from_color_matrix(&wreath_matrix(&u, &t), 0).map_err(|e| e.to_string())?;
    ensure!(triple_loop_constants(&oracle).is_some(), "wreath oracle irregular");
    Ok("direct rank 8 matches factor constants; wreath rank 5, valencies [1, 2, 3, 3, 3]".into())
}

fn counting_crosscheck() -> Outcome {
    let mut triples = 0;
    for (name, action) in fixtures::fixture_actions() {
        let product = semidirect_product(&action);
        let counted = counted_constants(&action, &product);
        let brute = triple_loop_constants(&product.scheme).ok_or(format!("{name}: irregular"))?;
        let r = product.scheme.rank();
        for p in 0..r {
            for q in 0..r {
                for s in 0..r {
                    ensure!(
                        counted[p][q][s] == brute[p][q][s],
                        "{name}: a[{p}][{q}][{s}] counted {} brute {}",
                        counted[p][q][s],
                        brute[p][q][s]
                    );
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} triples agree"))
}

fn valency_identity() -> Outcome {
    let mut checked = 0;
    for (name, action) in fixtures::fixture_actions() {
        let t = action.t_scheme().clone();
        let product = semidirect_product(&action);
        let sd = canonical_split(&product, t).map_err(|e| format!("{name}: {e}"))?;
        let u = action.u_scheme();
        for rel in 0..u.rank() {
            let (_, right) = boundary_subsets(&sd, rel);
            let ui = sd.i_rel[rel];
            let n_ui = (0..sd.s.order()).filter(|&z| sd.s.color(sd.s.basepoint(), z) == ui).count();
            let n_u = (0..u.order()).filter(|&y| u.color(u.basepoint(), y) == rel).count();
            let n_right = (0..sd.s.order()).filter(|&z| right.contains(sd.s.color(sd.s.basepoint(), z))).count();
            ensure!(n_ui == n_u * n_right, "{name}: u = {rel}: {n_ui} != {n_u} · {n_right}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (split, u) cases"))
}

fn automorphisms_and_symmetry() -> Outcome {
    let s = fixtures::s12();
    for (name, k) in [("K1", fixtures::k1()), ("K2", fixtures::k2()), ("K3", fixtures::k3())] {
        let sub = subscheme(&s, &k, s.basepoint()).map_err(|e| e.to_string())?;
        let autos = algebraic_automorphisms(&sub.scheme);
        ensure!(autos.len() == 1, "{name}: {} automorphisms", autos.len());
    }
    ensure!(!is_symmetric(&s), "S12 is symmetric");
    ensure!((0..6).any(|p| transpose_star(&s, p) != p), "brute force finds S12 symmetric");
    let k3 = subscheme(&s, &fixtures::k3(), s.basepoint()).map_err(|e| e.to_string())?;
    ensure!(is_symmetric(&k3.scheme), "K3 subscheme is not symmetric");
    ensure!((0..k3.scheme.rank()).all(|p| transpose_star(&k3.scheme, p) == p), "brute force finds K3 asymmetric");
    Ok("K1, K2, K3 rigid; S12 asymmetric; K3 symmetric".into())
}

fn category_laws() -> Outcome {
    let t = Arc::new(fixtures::t3());
    let u = Arc::new(fixtures::u4());
    let s = Arc::new(fixtures::s12());
    let mut total = 0;
    for scheme in [t, u, s] {
        let family = all_cmorphisms(&scheme, &scheme);
        ensure!(!family.is_empty(), "empty family");
        let id = CMorphism::identity(scheme.clone());
        for phi in &family {
            let compose = |a: &CMorphism, b: &CMorphism| a.compose(b).map_err(|e| e.to_string());
            ensure!(compose(&id, phi)? == *phi && compose(phi, &id)? == *phi, "identity law fails");
            ensure!(phi.star().star() == *phi, "star is not an involution");
            ensure!(id.leq(&compose(phi, &phi.star())?).map_err(|e| e.to_string())?, "id ≤ φφ* fails");
            for psi in &family {
                let phi_psi = compose(phi, psi)?;
                ensure!(phi_psi.star() == compose(&psi.star(), &phi.star())?, "(φψ)* != ψ*φ*");
                for chi in &family {
                    ensure!(compose(&phi_psi, chi)? == compose(phi, &compose(psi, chi)?)?, "associativity fails");
                }
            }
        }
        total += family.len();
    }
    Ok(format!("{total} morphisms on T3, U4, S12"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("product reproduction", product_reproduction),
        ("closed-subset census", closed_subset_census),
        ("isomorphism to the classified scheme", classified_isomorphism),
        ("split properties of fixture products", split_properties),
        ("round trip", round_trip),
        ("degenerate-action oracles", degenerate_oracles),
        ("counting cross-check", counting_crosscheck),
        ("valency identity", valency_identity),
        ("automorphisms and symmetry", automorphisms_and_symmetry),
        ("category laws", category_laws),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}: {name}: {detail}", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}: {name}: {reason}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
