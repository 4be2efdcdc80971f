//! Text formats.
//!
//! A scheme file (`.scm`) is a header `n r b` followed by `n` rows of `n`
//! relation indices. An action file (`.act`) looks like
//!
//! ```text
//! Y 4
//! X 3
//! tau
//! 3 2 0
//! 0 1 1
//! 1 0 1
//! 1 1 0
//! point 1
//! 0 1 1
//! 1 0 1
//! 1 1 0
//! alpha 0 1
//! pair 0 1
//! primed 0 1
//! doubled 0 1
//! map
//! 0 -> 0
//! 1 -> 0
//! 2 -> 0
//! ```
//!
//! `tau <path>` may replace the inline scheme. Point blocks take an
//! optional basepoint (`point y b`); the basepoint of `T` is the default.
//! In both formats blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::action::{build_action_from_partial, Action};
use crate::algebra::RelSet;
use crate::category::CMorphism;
use crate::closure::ClosedSubset;
use crate::error::{Error, Result};
use crate::labelling::{LabellingSet, TauScheme};
use crate::scheme::Scheme;

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(k, l)| (k + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((k, l)) => {
                self.last = k;
                Ok((k, l))
            }
            None => Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().copied()
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| Error::parse(line, format!("not a nonnegative integer: {w:?}"))))
        .collect()
}

fn keyword<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str> {
    let mut parts = text.splitn(2, char::is_whitespace);
    if parts.next() != Some(key) {
        return Err(Error::parse(line, format!("expected `{key}`, found {text:?}")));
    }
    Ok(parts.next().unwrap_or("").trim())
}

fn single(line: usize, text: &str) -> Result<usize> {
    match numbers(line, text)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::parse(line, format!("expected one integer, found {text:?}"))),
    }
}

fn read_scheme(lines: &mut Lines<'_>) -> Result<Scheme> {
    let (k, header) = lines.next("header `n r b`")?;
    let [n, r, b] = numbers(k, header)?[..] else {
        return Err(Error::parse(k, "header must be `n r b`"));
    };
    if n == 0 {
        return Err(Error::parse(k, "a scheme needs at least one point"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (k, text) = lines.next("matrix row")?;
        let row = numbers(k, text)?;
        if row.len() != n {
            return Err(Error::parse(k, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    let s = Scheme::from_color_matrix(&rows, b)?;
    if s.rank() != r {
        return Err(Error::parse(k, format!("header says rank {r}, matrix has rank {}", s.rank())));
    }
    Ok(s)
}

/// Parse a `.scm` file. Anything after the matrix is an error.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let mut lines = Lines::new(text);
    let s = read_scheme(&mut lines)?;
    if let Some((k, _)) = lines.peek() {
        return Err(Error::parse(k, "trailing content after the matrix"));
    }
    Ok(s)
}

pub fn emit_scheme(s: &Scheme) -> String {
    let mut out = format!("{} {} {}\n", s.order(), s.rank(), s.basepoint());
    write_matrix(&mut out, s);
    out
}

fn write_matrix(out: &mut String, s: &Scheme) {
    for x in 0..s.order() {
        let row: Vec<String> = s.row(x).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Parse a Cayley table, one row per element, identity first.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = Lines::new(text);
    let mut rows = Vec::new();
    while let Some((k, text)) = lines.peek() {
        lines.next("row")?;
        rows.push(numbers(k, text)?);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "empty table"));
    }
    Ok(rows)
}

/// Parse a `.act` file for an action of `u`. `resolve` loads the scheme
/// named by `tau <path>`.
pub fn parse_action(text: &str, u: Arc<Scheme>, resolve: &dyn Fn(&str) -> Result<Scheme>) -> Result<Action> {
    let mut lines = Lines::new(text);
    let (k, l) = lines.next("`Y m`")?;
    let m = single(k, keyword(k, l, "Y")?)?;
    if m != u.order() {
        return Err(Error::parse(k, format!("Y has {m} points but U has {}", u.order())));
    }
    let (k, l) = lines.next("`X n`")?;
    let n = single(k, keyword(k, l, "X")?)?;
    let (k, l) = lines.next("`tau`")?;
    let path = keyword(k, l, "tau")?;
    let t = if path.is_empty() { read_scheme(&mut lines)? } else { resolve(path)? };
    if t.order() != n {
        return Err(Error::parse(k, format!("X has {n} points but T has {}", t.order())));
    }
    let t = Arc::new(t);
    let tau = Arc::new(LabellingSet::of_scheme(&t));

    let mut points = BTreeMap::new();
    let mut pairs = BTreeMap::new();
    while let Some((k, l)) = lines.peek() {
        lines.next("block")?;
        let mut words = l.split_whitespace();
        match words.next() {
            Some("point") => {
                let args = numbers(k, &l["point".len()..])?;
                let (y, b) = match args[..] {
                    [y] => (y, t.basepoint()),
                    [y, b] => (y, b),
                    _ => return Err(Error::parse(k, "expected `point y [b]`")),
                };
                if y >= m {
                    return Err(Error::parse(k, format!("point {y} out of range")));
                }
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let (k, text) = lines.next("matrix row")?;
                    let row = numbers(k, text)?;
                    if row.len() != n {
                        return Err(Error::parse(k, format!("row has {} entries, expected {n}", row.len())));
                    }
                    rows.push(row);
                }
                let scheme = Arc::new(Scheme::from_color_matrix(&rows, b)?);
                let (ka, la) = lines.next("`alpha`")?;
                let alpha = numbers(ka, keyword(ka, la, "alpha")?)?;
                let ts = TauScheme::new(tau.clone(), scheme, alpha)?;
                if points.insert(y, ts).is_some() {
                    return Err(Error::parse(k, format!("point {y} given twice")));
                }
            }
            Some("pair") => {
                let [y1, y2] = numbers(k, &l["pair".len()..])?[..] else {
                    return Err(Error::parse(k, "expected `pair y1 y2`"));
                };
                if y1 >= m || y2 >= m {
                    return Err(Error::parse(k, format!("pair ({y1}, {y2}) out of range")));
                }
                let (kp, lp) = lines.next("`primed`")?;
                let primed = RelSet::from(numbers(kp, keyword(kp, lp, "primed")?)?);
                let (kd, ld) = lines.next("`doubled`")?;
                let doubled = RelSet::from(numbers(kd, keyword(kd, ld, "doubled")?)?);
                let (km, lm) = lines.next("`map`")?;
                if lm != "map" {
                    return Err(Error::parse(km, format!("expected `map`, found {lm:?}")));
                }
                let mut map = vec![usize::MAX; n];
                for _ in 0..n {
                    let (ke, le) = lines.next("`x -> x'`")?;
                    let Some((a, b)) = le.split_once("->") else {
                        return Err(Error::parse(ke, "expected `x -> x'`"));
                    };
                    let (a, b) = (single(ke, a)?, single(ke, b)?);
                    if a >= n || map[a] != usize::MAX {
                        return Err(Error::parse(ke, format!("bad or repeated source point {a}")));
                    }
                    map[a] = b;
                }
                if pairs.insert((y1, y2), (k, primed, doubled, map)).is_some() {
                    return Err(Error::parse(k, format!("pair ({y1}, {y2}) given twice")));
                }
            }
            _ => return Err(Error::parse(k, format!("expected `point` or `pair`, found {l:?}"))),
        }
    }

    // morphisms are built once every point block is known
    let scheme_of = |y: usize| -> Result<Arc<Scheme>> {
        if let Some(ts) = points.get(&y) {
            Ok(ts.scheme.clone())
        } else if y == u.basepoint() {
            Ok(t.clone())
        } else {
            Err(Error::ShapeMismatch(format!("no point block for {y}")))
        }
    };
    let mut morphisms = BTreeMap::new();
    for ((y1, y2), (k, primed, doubled, map)) in pairs {
        let dom = scheme_of(y1).map_err(|e| Error::parse(k, e.to_string()))?;
        let cod = scheme_of(y2).map_err(|e| Error::parse(k, e.to_string()))?;
        let primed = ClosedSubset::new(&*dom, primed)?;
        let doubled = ClosedSubset::new(&*cod, doubled)?;
        morphisms.insert((y1, y2), CMorphism::new(dom, cod, primed, doubled, &map)?);
    }
    build_action_from_partial(u, t, points, morphisms)
}

/// Emit an action: `T` inline, every point block other than the
/// basepoint's, and every pair `y1 < y2`.
pub fn emit_action(action: &Action) -> String {
    let u = action.u_scheme();
    let t = action.t_scheme();
    let mut out = String::new();
    let _ = writeln!(out, "Y {}", u.order());
    let _ = writeln!(out, "X {}", t.order());
    out.push_str("tau\n");
    out.push_str(&emit_scheme(t));
    for (y, ts) in action.points().iter().enumerate() {
        if y == u.basepoint() {
            continue;
        }
        if ts.scheme.basepoint() == t.basepoint() {
            let _ = writeln!(out, "point {y}");
        } else {
            let _ = writeln!(out, "point {y} {}", ts.scheme.basepoint());
        }
        write_matrix(&mut out, &ts.scheme);
        let _ = writeln!(out, "alpha {}", join(&ts.alpha));
    }
    for y1 in 0..u.order() {
        for y2 in y1 + 1..u.order() {
            let phi = action.pair(y1, y2);
            let _ = writeln!(out, "pair {y1} {y2}");
            let _ = writeln!(out, "primed {}", join(phi.t_phi().members().members()));
            let _ = writeln!(out, "doubled {}", join(phi.u_phi().members().members()));
            out.push_str("map\n");
            for (x, img) in phi.point_map().into_iter().enumerate() {
                let _ = writeln!(out, "{x} -> {img}");
            }
        }
    }
    out
}

/// Space-separated values.
pub fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
