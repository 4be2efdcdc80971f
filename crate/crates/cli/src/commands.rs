use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use semidirect_core::fixtures;
use semidirect_core::io::{emit_action, emit_scheme, join, parse_action, parse_scheme, parse_table};
use semidirect_core::iso::is_symmetric;
use semidirect_core::recovery::{basepoint_coset_scheme, reconstruct};
use semidirect_core::{
    algebraic_automorphisms, boundary_subsets, canonical_split, enumerate_closed_subsets, find_isomorphism,
    full_action, is_normal, quotient, semidirect_product, subscheme, trivial_action, validate_split_data,
    ClosedSubset, Error, RelSet, RelationAlgebra, Scheme, SemidirectScheme,
};

use crate::Command;

pub enum Verdict {
    Yes,
    No,
}

type Result<T> = std::result::Result<T, String>;

fn context(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_scheme(path: &Path) -> Result<Scheme> {
    parse_scheme(&read(path)?).map_err(context(path))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

/// Write to `path` if given, otherwise to standard output.
fn deliver(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => emit(out, text),
    }
}

fn closed_subset(s: &Scheme, relations: &[usize]) -> Result<ClosedSubset> {
    let mut set: RelSet = relations.iter().copied().collect();
    set.insert(0);
    for p in set.iter() {
        s.check_relation(p).map_err(|e| e.to_string())?;
    }
    ClosedSubset::new(s, set).map_err(|e| e.to_string())
}

fn product_output(
    out: &mut dyn Write,
    product: &SemidirectScheme,
    path: Option<&Path>,
    labels: Option<&Path>,
) -> Result<()> {
    if let Some(l) = labels {
        write_file(l, &product.label_table())?;
    }
    deliver(out, path, &emit_scheme(&product.scheme))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| e.to_string())?
    };
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<Verdict> {
    match command {
        Command::Verify { scheme } => verify(out, &scheme),
        Command::Constants { scheme } => {
            let s = read_scheme(&scheme)?;
            say!(out, "valencies: {}", join(s.valencies()));
            say!(out, "star: {}", join(s.star_map()));
            for p in 0..s.rank() {
                for q in 0..s.rank() {
                    for r in 0..s.rank() {
                        let a = s.constant(p, q, r);
                        if a > 0 {
                            say!(out, "a {p} {q} {r}: {a}");
                        }
                    }
                }
            }
            Ok(Verdict::Yes)
        }
        Command::Closed { scheme } => {
            let s = read_scheme(&scheme)?;
            let all = enumerate_closed_subsets(&s);
            say!(out, "count: {}", all.len());
            for c in &all {
                say!(out, "closed: {} normal: {}", join(c.members().members()), is_normal(&s, c));
            }
            Ok(Verdict::Yes)
        }
        Command::Quotient { scheme, subset, out: path } => {
            let s = read_scheme(&scheme)?;
            let t = closed_subset(&s, &subset)?;
            let q = quotient(&s, &t).map_err(|e| e.to_string())?;
            deliver(out, path.as_deref(), &emit_scheme(&q.scheme))?;
            Ok(Verdict::Yes)
        }
        Command::Subscheme { scheme, subset, point, out: path } => {
            let s = read_scheme(&scheme)?;
            let t = closed_subset(&s, &subset)?;
            let sub = subscheme(&s, &t, point).map_err(|e| e.to_string())?;
            deliver(out, path.as_deref(), &emit_scheme(&sub.scheme))?;
            Ok(Verdict::Yes)
        }
        Command::Thin { table, out: path } => {
            let rows = parse_table(&read(&table)?).map_err(context(&table))?;
            let s = Scheme::thin_from_group(&rows).map_err(context(&table))?;
            deliver(out, path.as_deref(), &emit_scheme(&s))?;
            Ok(Verdict::Yes)
        }
        Command::Direct { u, t, out: path, labels } => {
            let action = trivial_action(Arc::new(read_scheme(&u)?), Arc::new(read_scheme(&t)?));
            product_output(out, &semidirect_product(&action), path.as_deref(), labels.as_deref())?;
            Ok(Verdict::Yes)
        }
        Command::Wreath { u, t, out: path, labels } => {
            let action = full_action(Arc::new(read_scheme(&u)?), Arc::new(read_scheme(&t)?));
            product_output(out, &semidirect_product(&action), path.as_deref(), labels.as_deref())?;
            Ok(Verdict::Yes)
        }
        Command::Semidirect { u, action, out: path, labels } => {
            let u = Arc::new(read_scheme(&u)?);
            let dir = action.parent().map(Path::to_path_buf).unwrap_or_default();
            let resolve = |name: &str| -> semidirect_core::Result<Scheme> {
                let p = dir.join(name);
                let text = fs::read_to_string(&p).map_err(|e| Error::Parse { line: 0, reason: format!("{}: {e}", p.display()) })?;
                parse_scheme(&text)
            };
            let a = parse_action(&read(&action)?, u, &resolve).map_err(context(&action))?;
            product_output(out, &semidirect_product(&a), path.as_deref(), labels.as_deref())?;
            Ok(Verdict::Yes)
        }
        Command::Recover { scheme, subset, split, u, t, out: path } => {
            recover(out, &scheme, &subset, split, &u, t.as_deref(), path.as_deref())
        }
        Command::Iso { a, b, based } => {
            let (sa, sb) = (read_scheme(&a)?, read_scheme(&b)?);
            match find_isomorphism(&sa, &sb, based) {
                Some(iso) => {
                    say!(out, "isomorphic: true");
                    say!(out, "based: {}", iso.based);
                    say!(out, "points: {}", join(&iso.point_bij));
                    say!(out, "relations: {}", join(&iso.rel_bij));
                    Ok(Verdict::Yes)
                }
                None => {
                    say!(out, "isomorphic: false");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Example6 { out_dir } => example6(out, out_dir),
    }
}

fn verify(out: &mut dyn Write, path: &Path) -> Result<Verdict> {
    match parse_scheme(&read(path)?) {
        Ok(s) => {
            say!(out, "valid: true");
            say!(out, "order: {}", s.order());
            say!(out, "rank: {}", s.rank());
            say!(out, "basepoint: {}", s.basepoint());
            say!(out, "valencies: {}", join(s.valencies()));
            say!(out, "symmetric: {}", s.is_symmetric());
            say!(out, "thin: {}", s.is_thin());
            Ok(Verdict::Yes)
        }
        Err(e @ Error::Parse { .. }) => Err(context(path)(e)),
        Err(e) => {
            say!(out, "valid: false");
            say!(out, "reason: {e}");
            Ok(Verdict::No)
        }
    }
}

fn recover(
    out: &mut dyn Write,
    scheme: &Path,
    subset: &[usize],
    split: Vec<usize>,
    u: &Path,
    t: Option<&Path>,
    path: Option<&Path>,
) -> Result<Verdict> {
    let s = Arc::new(read_scheme(scheme)?);
    let u = Arc::new(read_scheme(u)?);
    let t_tilde = closed_subset(&s, subset)?;
    let sd = validate_split_data(s, t_tilde, split, u).map_err(|e| e.to_string())?;
    let t = match t {
        Some(p) => read_scheme(p)?,
        None => basepoint_coset_scheme(&sd).map_err(|e| e.to_string())?,
    };
    let r = reconstruct(&sd, Arc::new(t)).map_err(|e| e.to_string())?;
    let act = emit_action(&r.recovered.action);
    match path {
        Some(p) => {
            write_file(p, &act)?;
            say!(out, "eta: {}", join(&r.eta));
            say!(out, "eta-relations: {}", join(&r.eta_rel));
        }
        None => {
            emit(out, &act)?;
            say!(out, "# eta: {}", join(&r.eta));
            say!(out, "# eta-relations: {}", join(&r.eta_rel));
        }
    }
    Ok(Verdict::Yes)
}

fn example6(out: &mut dyn Write, out_dir: Option<PathBuf>) -> Result<Verdict> {
    let action = fixtures::example_action();
    let t = action.t_scheme().clone();
    let u = action.u_scheme().clone();
    let product = semidirect_product(&action);
    let s = &product.scheme;

    let mut sorted = s.valencies().to_vec();
    sorted.sort_unstable();
    say!(out, "order: {}", s.order());
    say!(out, "rank: {}", s.rank());
    say!(out, "valencies: {}", join(s.valencies()));
    say!(out, "valency-multiset: {}", join(&sorted));
    let thin: Vec<usize> = (0..s.rank()).filter(|&p| s.valency(p) == 1).collect();
    say!(out, "thin-relations: {}", join(&thin));
    say!(out, "star: {}", join(s.star_map()));
    say!(out, "symmetric: {}", is_symmetric(s));
    for (k, (lu, class)) in product.labels.iter().enumerate() {
        say!(out, "label {k}: u {lu} t {}", join(class.members()));
    }

    let closed = enumerate_closed_subsets(s);
    say!(out, "closed-subsets: {}", closed.len());
    for c in &closed {
        let sub = subscheme(s, c, s.basepoint()).map_err(|e| e.to_string())?;
        say!(
            out,
            "closed: {} normal: {} automorphisms: {} symmetric: {}",
            join(c.members().members()),
            is_normal(s, c),
            algebraic_automorphisms(&sub.scheme).len(),
            is_symmetric(&sub.scheme)
        );
    }

    let sd = canonical_split(&product, t.clone()).map_err(|e| e.to_string())?;
    say!(out, "t-tilde: {}", join(sd.t_tilde.members().members()));
    say!(out, "splitting: {}", join(&sd.i_map));
    for rel in 0..u.rank() {
        let (left, right) = boundary_subsets(&sd, rel);
        say!(out, "boundary {rel}: {} | {}", join(left.members()), join(right.members()));
    }
    let r = reconstruct(&sd, t.clone()).map_err(|e| e.to_string())?;
    let round_trip = r.is_isomorphism(&sd.s);
    say!(out, "reconstruct-isomorphic: {round_trip}");
    say!(out, "eta: {}", join(&r.eta));

    let hm34 = fixtures::hm34();
    let iso = find_isomorphism(s, &hm34, false);
    say!(out, "hm34-isomorphic: {}", iso.is_some());
    if let Some(iso) = &iso {
        say!(out, "hm34-points: {}", join(&iso.point_bij));
        say!(out, "hm34-relations: {}", join(&iso.rel_bij));
    }

    if let Some(dir) = out_dir {
        fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        write_file(&dir.join("t3.scm"), &emit_scheme(&t))?;
        write_file(&dir.join("u4.scm"), &emit_scheme(&u))?;
        write_file(&dir.join("s12.scm"), &emit_scheme(s))?;
        write_file(&dir.join("s12.labels"), &product.label_table())?;
        write_file(&dir.join("hm34.scm"), &emit_scheme(&hm34))?;
        write_file(&dir.join("example.act"), &emit_action(&action))?;
        say!(out, "written: {}", dir.display());
    }
    Ok(if round_trip && iso.is_some() { Verdict::Yes } else { Verdict::No })
}
