//! Too many pairwise non-commensurable intersection directions inside `Z^p`
//! rule out a proper cocompact action on a CAT(0) cube complex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{commensurable, hnf, LatticeError, Sublattice};

/// The group-theoretic hypothesis that lattice data alone cannot confirm.
pub const HIGHEST_HYPOTHESIS: &str =
    "the free-abelian subgroups whose intersections with Z^p are listed are highest";

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommensurabilityClass {
    pub representative: Sublattice,
    /// Positions in the input list.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub p: usize,
    pub k: usize,
    pub classes: Vec<CommensurabilityClass>,
    pub class_count: usize,
    pub threshold: u64,
    pub fired: bool,
    pub hypotheses_assumed: Vec<String>,
}

/// Groups `lattices` by commensurability and fires when there are at least
/// `C(p, k) + 1` classes.
pub fn obstruction(p: usize, k: usize, lattices: &[Sublattice]) -> Result<ObstructionReport, LatticeError> {
    let mut classes: Vec<CommensurabilityClass> = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        if l.ambient != p {
            return Err(LatticeError::AmbientMismatch(p, l.ambient));
        }
        if l.rank() != k {
            return Err(LatticeError::RankMismatch {
                index: i,
                expected: k,
                got: l.rank(),
            });
        }
        let mut placed = false;
        for c in classes.iter_mut() {
            if commensurable(&c.representative, l)? {
                c.members.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(CommensurabilityClass {
                representative: l.clone(),
                members: vec![i],
            });
        }
    }
    let threshold = binomial(p, k)
        .and_then(|c| c.checked_add(1))
        .ok_or(LatticeError::Overflow)?;
    let class_count = classes.len();
    Ok(ObstructionReport {
        p,
        k,
        classes,
        class_count,
        threshold,
        fired: class_count as u64 >= threshold,
        hypotheses_assumed: vec![HIGHEST_HYPOTHESIS.to_string()],
    })
}

/// Intersection data as shipped in JSON: each entry lists generators of one
/// intersection with `Z^p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionData {
    pub p: usize,
    pub k: usize,
    pub intersections: Vec<Vec<Vec<i64>>>,
}

impl IntersectionData {
    pub fn lattices(&self) -> Result<Vec<Sublattice>, LatticeError> {
        self.intersections.iter().map(|g| hnf(self.p, g)).collect()
    }

    pub fn obstruction(&self) -> Result<ObstructionReport, LatticeError> {
        obstruction(self.p, self.k, &self.lattices()?)
    }
}

/// Multiple HNN extension of `Z^p` with cyclic edge groups: stable letter
/// `t` conjugates `b` to `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TubularPresentation {
    pub rank: usize,
    pub edges: Vec<TubularEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TubularEdge {
    pub letter: String,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Lattice {
        line: usize,
        #[source]
        source: LatticeError,
    },
}

fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1
}

fn check_vector(v: &[i64], p: usize) -> Result<(), LatticeError> {
    if v.len() != p {
        return Err(LatticeError::DimensionMismatch {
            index: 0,
            expected: p,
            got: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(LatticeError::ZeroVector);
    }
    if !is_primitive(v) {
        return Err(LatticeError::NotPrimitive(v.to_vec()));
    }
    Ok(())
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|ch: char| !(ch.is_alphanumeric() || ch == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, ch)| ch.is_ascii_digit() || (i == 0 && ch == '-'))
            .count();
        rest[..len]
            .parse()
            .inspect(|_| self.pos += len)
            .map_err(|_| self.err("expected an integer"))
    }

    fn vector(&mut self) -> Result<Vec<i64>, PresentationError> {
        self.eat("(")?;
        let mut v = vec![self.integer()?];
        loop {
            self.skip_ws();
            if self.text[self.pos..].starts_with(')') {
                self.pos += 1;
                return Ok(v);
            }
            self.eat(",")?;
            v.push(self.integer()?);
        }
    }

    fn end(&mut self) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

impl TubularPresentation {
    /// Parses `rank p` followed by lines `edge t1: (b) -> (c)`. Blank lines
    /// and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut rank = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim_end();
            if body.trim_start().is_empty() || body.trim_start().starts_with('#') {
                continue;
            }
            let mut cur = Cursor { text: body, pos: 0, line };
            let start = cur.pos;
            match cur.word() {
                "rank" => {
                    if rank.is_some() {
                        cur.pos = start;
                        return Err(cur.err("duplicate `rank` line"));
                    }
                    let p = cur.integer()?;
                    if p < 1 {
                        return Err(cur.err("rank must be positive"));
                    }
                    cur.end()?;
                    rank = Some(p as usize);
                }
                "edge" => {
                    let Some(p) = rank else {
                        cur.pos = start;
                        return Err(cur.err("`edge` before `rank`"));
                    };
                    let letter = cur.word().to_string();
                    if letter.is_empty() {
                        return Err(cur.err("expected a stable letter name"));
                    }
                    cur.eat(":")?;
                    let b = cur.vector()?;
                    cur.eat("->")?;
                    let c = cur.vector()?;
                    cur.end()?;
                    for v in [&b, &c] {
                        check_vector(v, p).map_err(|source| PresentationError::Lattice { line, source })?;
                    }
                    edges.push(TubularEdge { letter, b, c });
                }
                _ => {
                    cur.pos = start;
                    cur.skip_ws();
                    return Err(cur.err("expected `rank` or `edge`"));
                }
            }
        }
        let rank = rank.ok_or(PresentationError::Syntax {
            line: 1,
            column: 1,
            message: "missing `rank` line".into(),
        })?;
        Ok(TubularPresentation { rank, edges })
    }
}

/// The obstruction applied to the cyclic groups `<b>` and `<c>` of every edge.
pub fn tubular_obstruction(t: &TubularPresentation) -> Result<ObstructionReport, LatticeError> {
    let mut lattices = Vec::with_capacity(2 * t.edges.len());
    for e in &t.edges {
        for v in [&e.b, &e.c] {
            check_vector(v, t.rank)?;
            lattices.push(hnf(t.rank, std::slice::from_ref(v))?);
        }
    }
    obstruction(t.rank, 1, &lattices)
}
