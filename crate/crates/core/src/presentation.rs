//! Finite group presentations: a relator-word parser and Todd–Coxeter
//! coset enumeration.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::group::GroupTable;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("unknown generator at byte {0}")]
    UnknownGenerator(usize),
    #[error("unbalanced parenthesis at byte {0}")]
    Unbalanced(usize),
    #[error("bad exponent at byte {0}")]
    BadExponent(usize),
    #[error("word is too long")]
    TooLong,
}

/// Upper bound on the length of an expanded word.
pub const MAX_WORD_LEN: usize = 1 << 16;

/// Parses words such as `a^2`, `(ab)^2`, `a b a^-1` or `x1*y1^-3`;
/// `1` is the empty word unless it names a generator.
/// Generators are matched greedily by longest name; whitespace, `*`
/// and `.` separate factors.
pub fn parse_word(s: &str, generators: &[String]) -> Result<Word, WordParseError> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
        gens: generators,
        depth: 0,
    };
    let w = p.word()?;
    if p.pos < p.s.len() {
        return Err(WordParseError::Unbalanced(p.pos));
    }
    Ok(w)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    gens: &'a [String],
    depth: usize,
}

impl Parser<'_> {
    fn skip(&mut self) {
        while self.pos < self.s.len() && matches!(self.s[self.pos], b' ' | b'\t' | b'*' | b'.') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, WordParseError> {
        let mut out = Vec::new();
        loop {
            self.skip();
            if self.pos >= self.s.len() || self.s[self.pos] == b')' {
                return Ok(out);
            }
            let atom = if self.s[self.pos] == b'(' {
                let open = self.pos;
                self.pos += 1;
                self.depth += 1;
                if self.depth > 64 {
                    return Err(WordParseError::Unbalanced(open));
                }
                let inner = self.word()?;
                if self.pos >= self.s.len() || self.s[self.pos] != b')' {
                    return Err(WordParseError::Unbalanced(open));
                }
                self.pos += 1;
                self.depth -= 1;
                inner
            } else {
                let rest = &self.s[self.pos..];
                let best = self
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !g.is_empty() && rest.starts_with(g.as_bytes()))
                    .max_by_key(|(i, g)| (g.len(), usize::MAX - i));
                match best {
                    Some((gen, name)) => {
                        self.pos += name.len();
                        vec![Letter {
                            gen,
                            inverse: false,
                        }]
                    }
                    None if rest.starts_with(b"1") => {
                        self.pos += 1;
                        Vec::new()
                    }
                    None => return Err(WordParseError::UnknownGenerator(self.pos)),
                }
            };
            let exp = self.exponent()?;
            let unit = if exp < 0 { invert(&atom) } else { atom };
            let reps = exp.unsigned_abs() as usize;
            if out.len() + unit.len().saturating_mul(reps) > MAX_WORD_LEN {
                return Err(WordParseError::TooLong);
            }
            for _ in 0..reps {
                out.extend_from_slice(&unit);
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, WordParseError> {
        if self.pos >= self.s.len() || self.s[self.pos] != b'^' {
            return Ok(1);
        }
        let at = self.pos;
        self.pos += 1;
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<i64>().ok())
            .filter(|e| e.unsigned_abs() <= MAX_WORD_LEN as u64)
            .ok_or(WordParseError::BadExponent(at))
    }
}

/// Renders a word with run-length exponents, e.g. `a^2`, `abab`, `b^-1a`.
/// Tokens are space separated unless every generator is a single letter.
pub fn format_word(w: &[Letter], generators: &[String]) -> String {
    if w.is_empty() {
        return if generators.iter().any(|g| g == "1") {
            String::new()
        } else {
            "1".to_string()
        };
    }
    let compact = generators
        .iter()
        .all(|g| g.chars().count() == 1 && g.chars().all(char::is_alphabetic));
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = (j - i) as i64;
        let exp = if w[i].inverse { -run } else { run };
        let mut t = generators[w[i].gen].clone();
        if exp != 1 {
            t.push_str(&format!("^{exp}"));
        }
        tokens.push(t);
        i = j;
    }
    tokens.join(if compact { "" } else { " " })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, WordParseError> {
        let generators: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let relators = relators
            .iter()
            .map(|r| parse_word(r, &generators))
            .collect::<Result<_, _>>()?;
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Evaluates a word under generator images in `g`.
    pub fn evaluate(&self, w: &[Letter], g: &GroupTable, images: &[usize]) -> usize {
        g.product(w.iter().map(|l| {
            if l.inverse {
                g.inv(images[l.gen])
            } else {
                images[l.gen]
            }
        }))
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| format_word(r, &self.generators))
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{} | {}⟩",
            self.generators.join(","),
            self.relator_strings().join(", ")
        )
    }
}

/// Complete coset table of the trivial subgroup: `table[c][2g]` is
/// `c·g`, `table[c][2g+1]` is `c·g⁻¹`; coset 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn apply(&self, c: usize, l: Letter) -> usize {
        self.table[c][2 * l.gen + usize::from(l.inverse)]
    }
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup, HLT
/// strategy with coincidence processing. Gives up once more than
/// `max_cosets` cosets have been defined.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Option<CosetTable> {
    let cols = 2 * p.generators.len();
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| 2 * l.gen + usize::from(l.inverse))
                .collect()
        })
        .collect();
    let mut e = Enumerator {
        table: vec![vec![None; cols]],
        parent: vec![0],
        defined: 1,
        max: max_cosets,
    };
    let mut c = 0;
    while c < e.table.len() {
        if e.parent[c] == c {
            for r in &rels {
                if e.parent[c] != c {
                    break;
                }
                if !r.is_empty() {
                    e.scan_and_fill(c, r)?;
                }
            }
            for x in 0..cols {
                if e.parent[c] == c && e.table[c][x].is_none() {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..e.table.len()).filter(|&k| e.parent[k] == k).collect();
    let mut new_index = vec![usize::MAX; e.table.len()];
    for (i, &k) in live.iter().enumerate() {
        new_index[k] = i;
    }
    let table = live
        .iter()
        .map(|&k| {
            e.table[k]
                .iter()
                .map(|v| new_index[v.expect("complete table")])
                .collect()
        })
        .collect();
    Some(CosetTable { table })
}

struct Enumerator {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    defined: usize,
    max: usize,
}

impl Enumerator {
    fn define(&mut self, c: usize, x: usize) -> Option<()> {
        if self.defined >= self.max {
            return None;
        }
        let n = self.table.len();
        self.table.push(vec![None; self.table[0].len()]);
        self.parent.push(n);
        self.defined += 1;
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
        Some(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Option<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j >= i as isize {
                match self.table[b][w[j as usize] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i as isize {
                self.table[f][w[i]] = Some(b);
                self.table[b][w[i] ^ 1] = Some(f);
                return Some(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, k: usize) -> usize {
        let mut r = k;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = k;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut VecDeque<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.table[e].len() {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][x ^ 1] = None;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(t) = self.table[e1][x] {
                    self.merge(f1, t, &mut queue);
                } else if let Some(t) = self.table[f1][x ^ 1] {
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][x ^ 1] = Some(e1);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentsError {
    #[error("relator `{0}` does not hold in the group")]
    RelatorFails(String),
    #[error("coset enumeration exceeded {0} cosets")]
    EnumerationBound(usize),
    #[error("the presented group has order {presented}, the table has order {table}")]
    OrderMismatch { presented: usize, table: usize },
    #[error("generator images do not generate the group")]
    NotSurjective,
    #[error("expected {expected} generator images, got {got}")]
    Arity { expected: usize, got: usize },
}

/// Checks that `p` presents `g` via `images`: every relator evaluates
/// to the identity and the evaluation map from the enumerated cosets
/// onto `g` is a bijection.
pub fn verify_presents(
    p: &Presentation,
    g: &GroupTable,
    images: &[usize],
    max_cosets: usize,
) -> Result<(), PresentsError> {
    if images.len() != p.generators.len() {
        return Err(PresentsError::Arity {
            expected: p.generators.len(),
            got: images.len(),
        });
    }
    for r in &p.relators {
        if p.evaluate(r, g, images) != g.identity() {
            return Err(PresentsError::RelatorFails(format_word(r, &p.generators)));
        }
    }
    let table = todd_coxeter(p, max_cosets).ok_or(PresentsError::EnumerationBound(max_cosets))?;
    if table.order() != g.order() {
        return Err(PresentsError::OrderMismatch {
            presented: table.order(),
            table: g.order(),
        });
    }
    let mut image = vec![usize::MAX; table.order()];
    image[0] = g.identity();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for gen in 0..p.generators.len() {
            let d = table.apply(
                c,
                Letter {
                    gen,
                    inverse: false,
                },
            );
            if image[d] == usize::MAX {
                image[d] = g.mul(image[c], images[gen]);
                queue.push_back(d);
            }
        }
    }
    let mut hit = vec![false; g.order()];
    for &i in &image {
        if i == usize::MAX || hit[i] {
            return Err(PresentsError::NotSurjective);
        }
        hit[i] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_powers_and_groups() {
        let g = gens(&["a", "b"]);
        let w = parse_word("(ab)^2", &g).unwrap();
        assert_eq!(format_word(&w, &g), "abab");
        let w = parse_word("a^-2 b", &g).unwrap();
        assert_eq!(format_word(&w, &g), "a^-2b");
        assert_eq!(parse_word("", &g).unwrap(), vec![]);
        assert!(parse_word("c", &g).is_err());
        assert!(parse_word("(a", &g).is_err());
        assert!(parse_word("a)", &g).is_err());
        assert!(parse_word("a^x", &g).is_err());
    }

    #[test]
    fn longest_generator_wins() {
        let g = gens(&["x", "x1"]);
        let w = parse_word("x1x", &g).unwrap();
        assert_eq!(
            w,
            vec![
                Letter {
                    gen: 1,
                    inverse: false
                },
                Letter {
                    gen: 0,
                    inverse: false
                }
            ]
        );
    }

    #[test]
    fn enumerates_small_groups() {
        let order = |g: &[&str], r: &[&str]| {
            todd_coxeter(&Presentation::parse(g, r).unwrap(), 10_000)
                .unwrap()
                .order()
        };
        assert_eq!(order(&["a"], &["a^2"]), 2);
        assert_eq!(order(&["a"], &["a^5"]), 5);
        assert_eq!(order(&["a", "b"], &["a^2", "b^2", "(ab)^2"]), 4);
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(ab)^2"]), 6);
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(ab)^3"]), 12);
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(ab)^4"]), 24);
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(ab)^5"]), 60);
        assert_eq!(order(&[], &[]), 1);
    }

    #[test]
    fn bound_is_respected() {
        let p = Presentation::parse(&["a"], &[]).unwrap();
        assert!(todd_coxeter(&p, 100).is_none());
    }

    #[test]
    fn presents_s3() {
        let s3 = GroupTable::symmetric(3);
        let p = Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^2"]).unwrap();
        let images = [s3.index_of("(12)").unwrap(), s3.index_of("(123)").unwrap()];
        assert!(verify_presents(&p, &s3, &images, 10_000).is_ok());
        let wrong = [s3.index_of("(12)").unwrap(), s3.index_of("(13)").unwrap()];
        assert!(matches!(
            verify_presents(&p, &s3, &wrong, 10_000),
            Err(PresentsError::RelatorFails(_))
        ));
    }
}
