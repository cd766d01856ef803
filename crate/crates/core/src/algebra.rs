//! Finite biquandles, their axioms, Alexander biquandles and endomorphism enumeration.
//!
//! Elements are stored 0-indexed. All text and JSON formats are 1-indexed, so
//! the shift happens only in [`Biquandle::parse`], [`Biquandle::to_text`] and
//! the serde helpers.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A finite biquandle given by its two operation tables.
///
/// `under(x, y)` is x ▷̲ y and `over(x, y)` is x ▷̄ y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biquandle {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
}

/// Axiom groups of a biquandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// x ▷̲ x = x ▷̄ x
    FixedPoint,
    /// α_y : x ↦ x ▷̄ y is a bijection
    OverColumn,
    /// β_y : x ↦ x ▷̲ y is a bijection
    UnderColumn,
    /// S(x, y) = (y ▷̄ x, x ▷̲ y) is a bijection
    Switch,
    /// (x▷̲y)▷̲(z▷̲y) = (x▷̲z)▷̲(y▷̄z)
    ExchangeUnder,
    /// (x▷̲y)▷̄(z▷̲y) = (x▷̄z)▷̲(y▷̄z)
    ExchangeMixed,
    /// (x▷̄y)▷̄(z▷̄y) = (x▷̄z)▷̄(y▷̲z)
    ExchangeOver,
}

impl Axiom {
    /// The axiom group number (1, 2 or 3).
    pub fn group(self) -> u8 {
        match self {
            Axiom::FixedPoint => 1,
            Axiom::OverColumn | Axiom::UnderColumn | Axiom::Switch => 2,
            _ => 3,
        }
    }
}

/// First failed axiom together with a witness tuple (0-indexed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass"),
            Some(v) => {
                let w: Vec<String> = v.witness.iter().map(|x| (x + 1).to_string()).collect();
                write!(
                    f,
                    "fail: axiom ({}) {:?} violated at ({})",
                    v.axiom.group(),
                    v.axiom,
                    w.join(",")
                )
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BiquandleJson {
    n: usize,
    under: Vec<Vec<i64>>,
    over: Vec<Vec<i64>>,
}

fn check_entry(row: usize, col: usize, value: i64, n: usize) -> Result<usize> {
    if value < 1 || value as usize > n {
        return Err(Error::EntryOutOfRange { row, col, value, n });
    }
    Ok(value as usize - 1)
}

impl Biquandle {
    /// Builds a biquandle from 0-indexed tables without checking the axioms.
    pub fn from_tables(under: Vec<Vec<usize>>, over: Vec<Vec<usize>>) -> Result<Self> {
        let n = under.len();
        if n == 0 {
            return Err(Error::Parse("empty biquandle".into()));
        }
        if over.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: over.len(),
            });
        }
        let mut u = Vec::with_capacity(n * n);
        let mut o = Vec::with_capacity(n * n);
        for (r, (ur, or)) in under.iter().zip(&over).enumerate() {
            for row in [ur, or] {
                if row.len() != n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: row.len(),
                    });
                }
            }
            for (c, &v) in ur.iter().enumerate() {
                check_entry(r, c, v as i64 + 1, n)?;
                u.push(v);
            }
            for (c, &v) in or.iter().enumerate() {
                check_entry(r, c + n, v as i64 + 1, n)?;
                o.push(v);
            }
        }
        Ok(Biquandle { n, under: u, over: o })
    }

    /// Parses the augmented n×2n operation matrix (1-indexed entries).
    ///
    /// Accepts either bare rows or a leading line holding only `n`. The
    /// characters `| [ ] , ;` are treated as whitespace so matrices can be
    /// pasted in bracketed form. A text starting with `{` is read as JSON.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return Self::from_json(text);
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for line in text.lines() {
            let cleaned: String = line
                .chars()
                .map(|c| if "|[],;".contains(c) { ' ' } else { c })
                .collect();
            let cleaned = cleaned.split('#').next().unwrap_or("");
            let row = cleaned
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("not an integer: `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !row.is_empty() {
                rows.push(row);
            }
        }
        if rows.first().map(|r| r.len()) == Some(1) {
            let declared = rows.remove(0)[0];
            if declared < 1 || declared as usize != rows.len() {
                return Err(Error::Parse(format!(
                    "header declares n = {declared} but {} rows follow",
                    rows.len()
                )));
            }
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty biquandle".into()));
        }
        let mut under = vec![vec![0; n]; n];
        let mut over = vec![vec![0; n]; n];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != 2 * n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    2 * n
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                let e = check_entry(r, c, v, n)?;
                if c < n {
                    under[r][c] = e;
                } else {
                    over[r][c - n] = e;
                }
            }
        }
        Self::from_tables(under, over)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BiquandleJson = serde_json::from_str(text)?;
        if raw.n == 0 || raw.under.len() != raw.n || raw.over.len() != raw.n {
            return Err(Error::Parse(format!(
                "expected {} rows in each table",
                raw.n
            )));
        }
        let conv = |table: &[Vec<i64>], offset: usize| -> Result<Vec<Vec<usize>>> {
            table
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    if row.len() != raw.n {
                        return Err(Error::Parse(format!("row {} has wrong length", r + 1)));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(c, &v)| check_entry(r, c + offset, v, raw.n))
                        .collect()
                })
                .collect()
        };
        Self::from_tables(conv(&raw.under, 0)?, conv(&raw.over, raw.n)?)
    }

    pub fn to_json(&self) -> String {
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<i64>> {
            (0..self.n)
                .map(|x| (0..self.n).map(|y| f(x, y) as i64 + 1).collect())
                .collect()
        };
        let raw = BiquandleJson {
            n: self.n,
            under: table(&|x, y| self.under(x, y)),
            over: table(&|x, y| self.over(x, y)),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Text form: `n` on the first line, then the 1-indexed augmented matrix.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for x in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|y| self.under(x, y) + 1)
                .chain((0..self.n).map(|y| self.over(x, y) + 1))
                .map(|v| v.to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    /// x ▷̲ y
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    /// x ▷̄ y
    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    /// 0-indexed under table, row x column y.
    pub fn under_table(&self) -> Vec<Vec<usize>> {
        self.under.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// 0-indexed over table, row x column y.
    pub fn over_table(&self) -> Vec<Vec<usize>> {
        self.over.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Checks all three axiom groups and reports the first violation.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let fail = |axiom, witness: Vec<usize>| ValidationReport {
            violation: Some(Violation { axiom, witness }),
        };
        for x in 0..n {
            if self.under(x, x) != self.over(x, x) {
                return fail(Axiom::FixedPoint, vec![x]);
            }
        }
        for y in 0..n {
            for (axiom, op) in [
                (Axiom::OverColumn, Self::over as fn(&Self, usize, usize) -> usize),
                (Axiom::UnderColumn, Self::under),
            ] {
                let mut seen = vec![None; n];
                for x in 0..n {
                    let v = op(self, x, y);
                    if let Some(prev) = seen[v] {
                        return fail(axiom, vec![prev, x, y]);
                    }
                    seen[v] = Some(x);
                }
            }
        }
        let mut seen = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let image = self.over(y, x) * n + self.under(x, y);
                if let Some((px, py)) = seen[image] {
                    return fail(Axiom::Switch, vec![px, py, x, y]);
                }
                seen[image] = Some((x, y));
            }
        }
        let (u, o) = (|a, b| self.under(a, b), |a, b| self.over(a, b));
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if u(u(x, y), u(z, y)) != u(u(x, z), o(y, z)) {
                        return fail(Axiom::ExchangeUnder, vec![x, y, z]);
                    }
                    if o(u(x, y), u(z, y)) != u(o(x, z), o(y, z)) {
                        return fail(Axiom::ExchangeMixed, vec![x, y, z]);
                    }
                    if o(o(x, y), o(z, y)) != o(o(x, z), u(y, z)) {
                        return fail(Axiom::ExchangeOver, vec![x, y, z]);
                    }
                }
            }
        }
        ValidationReport { violation: None }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The Alexander biquandle on Z_m with x ▷̲ y = t·x + (r−t)·y and x ▷̄ y = r·x.
///
/// Element index `i` stands for the residue `(i + 1) mod m`, so in 1-indexed
/// form element `k` is the residue `k mod m` and element `m` is zero.
pub fn alexander_biquandle(m: i64, t: i64, r: i64) -> Result<Biquandle> {
    if m < 1 {
        return Err(Error::Parse(format!("modulus must be positive, got {m}")));
    }
    for u in [t, r] {
        if gcd(u.rem_euclid(m), m) != 1 {
            return Err(Error::NotAUnit(u, m));
        }
    }
    let mu = m as usize;
    let value = |i: usize| (i as i64 + 1).rem_euclid(m);
    let index = |v: i64| (v - 1).rem_euclid(m) as usize;
    let mut under = vec![vec![0; mu]; mu];
    let mut over = vec![vec![0; mu]; mu];
    for i in 0..mu {
        for j in 0..mu {
            under[i][j] = index(t * value(i) + (r - t) * value(j));
            over[i][j] = index(r * value(i));
        }
    }
    Biquandle::from_tables(under, over)
}

/// A map between finite biquandles, stored as its 0-indexed image tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BqMap {
    image: Vec<usize>,
}

impl BqMap {
    pub fn new(image: Vec<usize>) -> Self {
        BqMap { image }
    }

    pub fn identity(n: usize) -> Self {
        BqMap {
            image: (0..n).collect(),
        }
    }

    /// Builds a map from the 1-indexed tuple notation `[f(x_1), …, f(x_n)]`.
    pub fn from_one_indexed(tuple: &[i64], target_size: usize) -> Result<Self> {
        let image = tuple
            .iter()
            .enumerate()
            .map(|(i, &v)| check_entry(0, i, v, target_size))
            .collect::<Result<Vec<_>>>()?;
        Ok(BqMap { image })
    }

    pub fn to_one_indexed(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &BqMap) -> BqMap {
        BqMap {
            image: inner.image.iter().map(|&x| self.image[x]).collect(),
        }
    }
}

impl fmt::Display for BqMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Returns the first pair (x, y) at which `f` fails to be a homomorphism X → Y.
pub fn homomorphism_violation(
    f: &BqMap,
    source: &Biquandle,
    target: &Biquandle,
) -> Result<Option<(usize, usize)>> {
    if f.len() != source.size() {
        return Err(Error::SizeMismatch {
            expected: source.size(),
            found: f.len(),
        });
    }
    if let Some(&bad) = f.image.iter().find(|&&v| v >= target.size()) {
        return Err(Error::EntryOutOfRange {
            row: 0,
            col: 0,
            value: bad as i64 + 1,
            n: target.size(),
        });
    }
    for x in 0..source.size() {
        for y in 0..source.size() {
            let (fx, fy) = (f.apply(x), f.apply(y));
            if f.apply(source.under(x, y)) != target.under(fx, fy)
                || f.apply(source.over(x, y)) != target.over(fx, fy)
            {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(f: &BqMap, source: &Biquandle, target: &Biquandle) -> Result<bool> {
    Ok(homomorphism_violation(f, source, target)?.is_none())
}

/// All endomorphisms of `x`, in lexicographic order of their image tuples.
///
/// Depth-first assignment of f(0), f(1), …; every pair equation whose three
/// arguments are already assigned is checked as soon as the last one is.
pub fn endomorphisms(x: &Biquandle) -> Vec<BqMap> {
    let n = x.size();
    let mut image = vec![usize::MAX; n];
    let mut out = Vec::new();
    extend_endo(x, 0, &mut image, &mut out);
    out
}

fn extend_endo(x: &Biquandle, k: usize, image: &mut Vec<usize>, out: &mut Vec<BqMap>) {
    let n = x.size();
    if k == n {
        out.push(BqMap::new(image.clone()));
        return;
    }
    for v in 0..n {
        image[k] = v;
        if consistent_through(x, k, image) {
            extend_endo(x, k + 1, image, out);
        }
    }
    image[k] = usize::MAX;
}

/// Checks every equation involving only elements 0..=k that mentions k.
fn consistent_through(x: &Biquandle, k: usize, image: &[usize]) -> bool {
    for a in 0..=k {
        for b in 0..=k {
            if a != k && b != k {
                let (u, o) = (x.under(a, b), x.over(a, b));
                if (u == k && image[u] != x.under(image[a], image[b]))
                    || (o == k && image[o] != x.over(image[a], image[b]))
                {
                    return false;
                }
                continue;
            }
            let (fa, fb) = (image[a], image[b]);
            let u = x.under(a, b);
            if u <= k && image[u] != x.under(fa, fb) {
                return false;
            }
            let o = x.over(a, b);
            if o <= k && image[o] != x.over(fa, fb) {
                return false;
            }
        }
    }
    true
}
