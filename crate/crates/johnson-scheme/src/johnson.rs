//! Johnson and doubly-constant-weight spaces: words, distances, spheres,
//! brute-force perfect-code verification, complements, configuration
//! distributions and explicit anticodes.
//!
//! Everything here works by direct enumeration on concrete codes; this is
//! the oracle layer against which the symbolic formulas of [`crate::moments`]
//! and the rules of [`crate::sieve`] are validated.

use crate::exactmath::{binom_i, ExactInt};
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// Errors from space construction, verification and file parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JohnsonError {
    /// A word does not fit the space it was declared in.
    BadWord(String),
    /// Two words from different spaces were combined.
    ParamMismatch(String),
    /// An enumeration guard was exceeded; never a silent truncation.
    SpaceTooLarge { size: ExactInt, guard: ExactInt },
    /// A code/block file failed to parse; carries the 1-based line number.
    Parse { line: usize, msg: String },
    /// No coordinate partition realizes the requested translate leader.
    NoSuchTranslate { leader: u32 },
}

impl fmt::Display for JohnsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JohnsonError::BadWord(msg) => write!(f, "bad word: {msg}"),
            JohnsonError::ParamMismatch(msg) => write!(f, "parameter mismatch: {msg}"),
            JohnsonError::SpaceTooLarge { size, guard } => {
                write!(f, "space of size {size} exceeds enumeration guard {guard}")
            }
            JohnsonError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            JohnsonError::NoSuchTranslate { leader } => {
                write!(f, "no coordinate partition realizes translate leader {leader}")
            }
        }
    }
}

impl std::error::Error for JohnsonError {}

/// A word of the Johnson space J(n,w): a w-subset of {0..n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: u32,
    support: Vec<u32>,
}

impl Word {
    pub fn new(n: u32, mut support: Vec<u32>) -> Result<Self, JohnsonError> {
        support.sort_unstable();
        if support.windows(2).any(|p| p[0] == p[1]) {
            return Err(JohnsonError::BadWord("repeated coordinate".into()));
        }
        if support.iter().any(|&i| i >= n) {
            return Err(JohnsonError::BadWord(format!("coordinate >= n = {n}")));
        }
        Ok(Word { n, support })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.support.len() as u32
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn contains(&self, coord: u32) -> bool {
        self.support.binary_search(&coord).is_ok()
    }

    /// Size of the support intersection with another word of the same space.
    pub fn intersection_size(&self, other: &Word) -> u32 {
        let (mut i, mut j, mut c) = (0usize, 0usize, 0u32);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Support complement within {0..n-1}; a word of J(n, n-w).
    pub fn complement(&self) -> Word {
        let support = (0..self.n).filter(|c| !self.contains(*c)).collect();
        Word {
            n: self.n,
            support,
        }
    }

    /// Number of support coordinates strictly below `k`.
    pub fn ones_below(&self, k: u32) -> u32 {
        self.support.iter().take_while(|&&c| c < k).count() as u32
    }

    /// Size of the support intersection with an arbitrary sorted index set.
    pub fn ones_in(&self, set: &[u32]) -> u32 {
        self.support
            .iter()
            .filter(|c| set.binary_search(c).is_ok())
            .count() as u32
    }
}

/// Johnson distance: w minus the support intersection size
/// (half the Hamming distance).
pub fn j_distance(u: &Word, v: &Word) -> Result<u32, JohnsonError> {
    if u.n != v.n || u.weight() != v.weight() {
        return Err(JohnsonError::ParamMismatch(format!(
            "J({},{}) vs J({},{})",
            u.n,
            u.weight(),
            v.n,
            v.weight()
        )));
    }
    Ok(u.weight() - u.intersection_size(v))
}

/// Hamming distance between the characteristic vectors (= 2 x J-distance).
pub fn h_distance(u: &Word, v: &Word) -> Result<u32, JohnsonError> {
    Ok(2 * j_distance(u, v)?)
}

/// Sphere size Phi_e(n,w) = sum_{i=0}^{e} C(w,i) C(n-w,i).
pub fn sphere_size(n: u64, w: u64, e: u64) -> ExactInt {
    assert!(w <= n, "sphere_size requires w <= n");
    (0..=e)
        .map(|i| binom_i(w as i64, i as i64) * binom_i((n - w) as i64, i as i64))
        .sum()
}

/// Doubly-constant-weight sphere size
/// Phi_e(n1,w1,n2,w2) = sum_{i+j<=e} C(w1,i)C(n1-w1,i)C(w2,j)C(n2-w2,j).
pub fn sphere_size_doubly(n1: u64, w1: u64, n2: u64, w2: u64, e: u64) -> ExactInt {
    assert!(w1 <= n1 && w2 <= n2);
    let mut total = ExactInt::zero();
    for i in 0..=e {
        let first = binom_i(w1 as i64, i as i64) * binom_i((n1 - w1) as i64, i as i64);
        for j in 0..=(e - i) {
            total += &first
                * binom_i(w2 as i64, j as i64)
                * binom_i((n2 - w2) as i64, j as i64);
        }
    }
    total
}

/// Visits every w-subset of {0..n-1} in lexicographic order.
pub fn for_each_subset<F: FnMut(&[u32])>(n: u32, w: u32, mut f: F) {
    if w > n {
        return;
    }
    let w = w as usize;
    let mut cur: Vec<u32> = (0..w as u32).collect();
    loop {
        f(&cur);
        // advance to the next combination in lexicographic order
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < n - (w - i) as u32 {
                cur[i] += 1;
                for j in i + 1..w {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All words of J(n,w) in lexicographic order (small n only).
pub fn enumerate_space(n: u32, w: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_subset(n, w, |s| {
        out.push(Word {
            n,
            support: s.to_vec(),
        })
    });
    out
}

/// The radius-e ball around a word, by full-space enumeration.
pub fn ball(center: &Word, e: u32) -> Vec<Word> {
    enumerate_space(center.n, center.weight())
        .into_iter()
        .filter(|v| j_distance(center, v).unwrap() <= e)
        .collect()
}

/// A constant-weight code: a set of distinct words of one space J(n,w).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: u32,
    w: u32,
    words: Vec<Word>,
}

impl Code {
    pub fn new(n: u32, w: u32, mut words: Vec<Word>) -> Result<Self, JohnsonError> {
        for word in &words {
            if word.n != n || word.weight() != w {
                return Err(JohnsonError::ParamMismatch(format!(
                    "word {:?} not in J({n},{w})",
                    word.support
                )));
            }
        }
        words.sort();
        if words.windows(2).any(|p| p[0] == p[1]) {
            return Err(JohnsonError::BadWord("duplicate codeword".into()));
        }
        Ok(Code { n, w, words })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Minimum pairwise Johnson distance; `None` for fewer than two words.
    pub fn min_j_distance(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let d = j_distance(u, v).unwrap();
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// Support-complement of every codeword: a code in J(n, n-w).
    pub fn complement(&self) -> Code {
        let words = self.words.iter().map(Word::complement).collect();
        Code::new(self.n, self.n - self.w, words).unwrap()
    }

    /// Parses the code file format: one word per line as whitespace-separated
    /// 0-based coordinate indices; '#' starts a comment; an optional header
    /// line `n=<n> w=<w>` fixes the parameters (otherwise inferred).
    pub fn parse(text: &str) -> Result<Self, JohnsonError> {
        let mut declared: Option<(u32, u32)> = None;
        let mut rows: Vec<(usize, Vec<u32>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.contains('=') {
                let mut n = None;
                let mut w = None;
                for part in line.split_whitespace() {
                    let (key, value) = part.split_once('=').ok_or(JohnsonError::Parse {
                        line: line_no,
                        msg: format!("malformed header field '{part}'"),
                    })?;
                    let value: u32 = value.parse().map_err(|_| JohnsonError::Parse {
                        line: line_no,
                        msg: format!("bad number '{value}'"),
                    })?;
                    match key {
                        "n" => n = Some(value),
                        "w" => w = Some(value),
                        _ => {
                            return Err(JohnsonError::Parse {
                                line: line_no,
                                msg: format!("unknown header key '{key}'"),
                            })
                        }
                    }
                }
                match (n, w) {
                    (Some(n), Some(w)) => declared = Some((n, w)),
                    _ => {
                        return Err(JohnsonError::Parse {
                            line: line_no,
                            msg: "header must declare both n= and w=".into(),
                        })
                    }
                }
                continue;
            }
            let coords: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            let coords = coords.map_err(|_| JohnsonError::Parse {
                line: line_no,
                msg: "coordinates must be nonnegative integers".into(),
            })?;
            rows.push((line_no, coords));
        }
        let (n, w) = match declared {
            Some(nw) => nw,
            None => {
                let w = rows.first().map_or(0, |(_, c)| c.len() as u32);
                let n = rows
                    .iter()
                    .flat_map(|(_, c)| c.iter())
                    .max()
                    .map_or(w, |m| m + 1);
                (n, w)
            }
        };
        let mut words = Vec::with_capacity(rows.len());
        for (line_no, coords) in rows {
            if coords.len() as u32 != w {
                return Err(JohnsonError::Parse {
                    line: line_no,
                    msg: format!("expected {w} coordinates, found {}", coords.len()),
                });
            }
            let word = Word::new(n, coords).map_err(|e| JohnsonError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            words.push(word);
        }
        Code::new(n, w, words).map_err(|e| JohnsonError::Parse {
            line: 0,
            msg: e.to_string(),
        })
    }
}

/// Outcome of brute-force perfect-code verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectVerdict {
    /// Every vector of the space is within distance e of exactly one codeword.
    Perfect {
        /// Minimum pairwise J-distance (absent for a single-word code);
        /// equals 2e+1 whenever defined.
        min_j_distance: Option<u32>,
    },
    /// Some vector is covered `count` times (0 = uncovered, >1 = overlap).
    NotPerfect { witness: Word, count: usize },
}

impl PerfectVerdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PerfectVerdict::Perfect { .. })
    }
}

/// Default guard on the ambient length for [`verify_perfect`].
pub const DEFAULT_N_GUARD: u32 = 40;

/// Brute-force e-perfect verification by full enumeration of J(n,w).
///
/// Returns `Perfect` iff the radius-e balls around the codewords partition
/// the space; on success the minimum J-distance is reported and checked to
/// equal 2e+1 when the code has at least two words.
pub fn verify_perfect(code: &Code, e: u32, n_guard: u32) -> Result<PerfectVerdict, JohnsonError> {
    if code.n > n_guard {
        return Err(JohnsonError::SpaceTooLarge {
            size: binom_i(code.n as i64, code.w as i64),
            guard: binom_i(n_guard as i64, code.w.min(n_guard) as i64),
        });
    }
    let mut verdict = None;
    for_each_subset(code.n, code.w, |s| {
        if verdict.is_some() {
            return;
        }
        let v = Word {
            n: code.n,
            support: s.to_vec(),
        };
        let count = code
            .words
            .iter()
            .filter(|c| j_distance(c, &v).unwrap() <= e)
            .count();
        if count != 1 {
            verdict = Some(PerfectVerdict::NotPerfect { witness: v, count });
        }
    });
    if let Some(v) = verdict {
        return Ok(v);
    }
    let min = code.min_j_distance();
    if let Some(d) = min {
        debug_assert_eq!(d, 2 * e + 1, "perfect code must have min distance 2e+1");
    }
    Ok(PerfectVerdict::Perfect {
        min_j_distance: min,
    })
}

/// A word of the doubly-constant-weight space: w1 ones among the first n1
/// coordinates and w2 ones among the last n2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoublyWord {
    n1: u32,
    n2: u32,
    first: Word,
    second: Word,
}

impl DoublyWord {
    /// Builds from a global support over {0..n1+n2-1}.
    pub fn new(n1: u32, n2: u32, w1: u32, w2: u32, support: Vec<u32>) -> Result<Self, JohnsonError> {
        let (a, b): (Vec<u32>, Vec<u32>) = support.into_iter().partition(|&c| c < n1);
        let first = Word::new(n1, a)?;
        let second = Word::new(n2, b.into_iter().map(|c| c - n1).collect())?;
        if first.weight() != w1 || second.weight() != w2 {
            return Err(JohnsonError::BadWord(format!(
                "configuration ({},{}) instead of ({w1},{w2})",
                first.weight(),
                second.weight()
            )));
        }
        Ok(DoublyWord {
            n1,
            n2,
            first,
            second,
        })
    }

    pub fn from_blocks(first: Word, second: Word) -> Self {
        DoublyWord {
            n1: first.n(),
            n2: second.n(),
            first,
            second,
        }
    }

    pub fn first(&self) -> &Word {
        &self.first
    }

    pub fn second(&self) -> &Word {
        &self.second
    }
}

/// Johnson distance on the doubly space: the sum of the per-block distances.
pub fn j_distance_doubly(u: &DoublyWord, v: &DoublyWord) -> Result<u32, JohnsonError> {
    Ok(j_distance(&u.first, &v.first)? + j_distance(&u.second, &v.second)?)
}

/// A doubly-constant-weight code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyCode {
    n1: u32,
    w1: u32,
    n2: u32,
    w2: u32,
    words: Vec<DoublyWord>,
}

/// Which coordinate block a complement acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSelector {
    FirstBlock,
    SecondBlock,
    Whole,
}

impl DoublyCode {
    pub fn new(
        n1: u32,
        w1: u32,
        n2: u32,
        w2: u32,
        mut words: Vec<DoublyWord>,
    ) -> Result<Self, JohnsonError> {
        for word in &words {
            if word.n1 != n1
                || word.n2 != n2
                || word.first.weight() != w1
                || word.second.weight() != w2
            {
                return Err(JohnsonError::ParamMismatch("word/space mismatch".into()));
            }
        }
        words.sort();
        if words.windows(2).any(|p| p[0] == p[1]) {
            return Err(JohnsonError::BadWord("duplicate codeword".into()));
        }
        Ok(DoublyCode {
            n1,
            w1,
            n2,
            w2,
            words,
        })
    }

    pub fn params(&self) -> (u32, u32, u32, u32) {
        (self.n1, self.w1, self.n2, self.w2)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[DoublyWord] {
        &self.words
    }

    /// Complement the supports inside the selected block(s).
    pub fn complement(&self, which: BlockSelector) -> DoublyCode {
        let words = self
            .words
            .iter()
            .map(|u| {
                let first = match which {
                    BlockSelector::FirstBlock | BlockSelector::Whole => u.first.complement(),
                    BlockSelector::SecondBlock => u.first.clone(),
                };
                let second = match which {
                    BlockSelector::SecondBlock | BlockSelector::Whole => u.second.complement(),
                    BlockSelector::FirstBlock => u.second.clone(),
                };
                DoublyWord::from_blocks(first, second)
            })
            .collect();
        let (w1, w2) = match which {
            BlockSelector::FirstBlock => (self.n1 - self.w1, self.w2),
            BlockSelector::SecondBlock => (self.w1, self.n2 - self.w2),
            BlockSelector::Whole => (self.n1 - self.w1, self.n2 - self.w2),
        };
        DoublyCode::new(self.n1, w1, self.n2, w2, words).unwrap()
    }

    /// Parses the doubly code file format: mandatory header
    /// `n1=<n1> w1=<w1> n2=<n2> w2=<w2>`, then one word per line as global
    /// 0-based coordinates (second-block coordinates offset by n1).
    pub fn parse(text: &str) -> Result<Self, JohnsonError> {
        let mut declared: Option<(u32, u32, u32, u32)> = None;
        let mut words: Vec<DoublyWord> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.contains('=') {
                let mut fields = [None; 4];
                for part in line.split_whitespace() {
                    let (key, value) = part.split_once('=').ok_or(JohnsonError::Parse {
                        line: line_no,
                        msg: format!("malformed header field '{part}'"),
                    })?;
                    let value: u32 = value.parse().map_err(|_| JohnsonError::Parse {
                        line: line_no,
                        msg: format!("bad number '{value}'"),
                    })?;
                    let slot = match key {
                        "n1" => 0,
                        "w1" => 1,
                        "n2" => 2,
                        "w2" => 3,
                        _ => {
                            return Err(JohnsonError::Parse {
                                line: line_no,
                                msg: format!("unknown header key '{key}'"),
                            })
                        }
                    };
                    fields[slot] = Some(value);
                }
                match fields {
                    [Some(n1), Some(w1), Some(n2), Some(w2)] => {
                        declared = Some((n1, w1, n2, w2))
                    }
                    _ => {
                        return Err(JohnsonError::Parse {
                            line: line_no,
                            msg: "header must declare n1= w1= n2= w2=".into(),
                        })
                    }
                }
                continue;
            }
            let (n1, w1, n2, w2) = declared.ok_or(JohnsonError::Parse {
                line: line_no,
                msg: "words before the mandatory 'n1= w1= n2= w2=' header".into(),
            })?;
            let coords: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            let coords = coords.map_err(|_| JohnsonError::Parse {
                line: line_no,
                msg: "coordinates must be nonnegative integers".into(),
            })?;
            if coords.iter().any(|&c| c >= n1 + n2) {
                return Err(JohnsonError::Parse {
                    line: line_no,
                    msg: format!("coordinate >= n1+n2 = {}", n1 + n2),
                });
            }
            let word =
                DoublyWord::new(n1, n2, w1, w2, coords).map_err(|e| JohnsonError::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
            words.push(word);
        }
        let (n1, w1, n2, w2) = declared.ok_or(JohnsonError::Parse {
            line: 0,
            msg: "missing 'n1= w1= n2= w2=' header".into(),
        })?;
        DoublyCode::new(n1, w1, n2, w2, words).map_err(|e| JohnsonError::Parse {
            line: 0,
            msg: e.to_string(),
        })
    }
}

/// All words of the doubly space, lexicographic in (first block, second block).
pub fn enumerate_space_doubly(n1: u32, w1: u32, n2: u32, w2: u32) -> Vec<DoublyWord> {
    let mut out = Vec::new();
    for first in enumerate_space(n1, w1) {
        for second in enumerate_space(n2, w2) {
            out.push(DoublyWord::from_blocks(first.clone(), second));
        }
    }
    out
}

/// Default guard on the doubly space size for [`verify_perfect_doubly`].
pub const DEFAULT_DOUBLY_GUARD: u64 = 10_000_000;

/// Brute-force e-perfect verification over the doubly space.
pub fn verify_perfect_doubly(
    code: &DoublyCode,
    e: u32,
    space_guard: u64,
) -> Result<DoublyPerfectVerdict, JohnsonError> {
    let size = binom_i(code.n1 as i64, code.w1 as i64) * binom_i(code.n2 as i64, code.w2 as i64);
    if size.to_u64().map_or(true, |s| s > space_guard) {
        return Err(JohnsonError::SpaceTooLarge {
            size,
            guard: ExactInt::from(space_guard),
        });
    }
    for v in enumerate_space_doubly(code.n1, code.w1, code.n2, code.w2) {
        let count = code
            .words
            .iter()
            .filter(|c| j_distance_doubly(c, &v).unwrap() <= e)
            .count();
        if count != 1 {
            return Ok(DoublyPerfectVerdict::NotPerfect { witness: v, count });
        }
    }
    let mut min: Option<u32> = None;
    for (i, u) in code.words.iter().enumerate() {
        for v in &code.words[i + 1..] {
            let d = j_distance_doubly(u, v).unwrap();
            min = Some(min.map_or(d, |b| b.min(d)));
        }
    }
    if let Some(d) = min {
        debug_assert_eq!(d, 2 * e + 1);
    }
    Ok(DoublyPerfectVerdict::Perfect { min_j_distance: min })
}

/// Outcome of doubly perfect-code verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoublyPerfectVerdict {
    Perfect { min_j_distance: Option<u32> },
    NotPerfect { witness: DoublyWord, count: usize },
}

impl DoublyPerfectVerdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, DoublyPerfectVerdict::Perfect { .. })
    }
}

/// Counts of codewords by the number of support coordinates inside a chosen
/// prefix block of size k: `counts[s]` = codewords with s ones in the prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigDistribution {
    pub k: u32,
    /// Indexed by ones-in-prefix s = 0..=min(k,w).
    pub counts: Vec<u64>,
}

impl ConfigDistribution {
    /// Total over all configurations = |code|.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Configuration distribution of the code for the prefix {0..k-1}.
pub fn configuration_distribution(code: &Code, k: u32) -> ConfigDistribution {
    let top = k.min(code.w) as usize;
    let mut counts = vec![0u64; top + 1];
    for word in code.words() {
        counts[word.ones_below(k) as usize] += 1;
    }
    ConfigDistribution { k, counts }
}

/// Configuration distribution for an arbitrary prefix index set.
pub fn configuration_distribution_for(code: &Code, prefix: &[u32]) -> ConfigDistribution {
    let k = prefix.len() as u32;
    let top = k.min(code.w) as usize;
    let mut counts = vec![0u64; top + 1];
    for word in code.words() {
        counts[word.ones_in(prefix) as usize] += 1;
    }
    ConfigDistribution {
        k,
        counts,
    }
}

/// Finds the lexicographically least size-w prefix realizing translate
/// leader j, and returns its configuration distribution.
///
/// Leader j means: exactly one codeword has w-j support coordinates in the
/// prefix, and no codeword has w-i coordinates there for any other i <= e.
/// Leader 0 picks a prefix aligned with a codeword.
pub fn translate_distribution(
    code: &Code,
    e: u32,
    leader: u32,
) -> Result<(Vec<u32>, ConfigDistribution), JohnsonError> {
    assert!(leader <= e);
    let w = code.w;
    let mut found: Option<(Vec<u32>, ConfigDistribution)> = None;
    for_each_subset(code.n, w, |prefix| {
        if found.is_some() {
            return;
        }
        let dist = configuration_distribution_for(code, prefix);
        let ok = (0..=e.min(w)).all(|i| {
            let s = (w - i) as usize; // ones-in-prefix for configuration (w-i, i)
            let expected = if i == leader { 1 } else { 0 };
            dist.counts[s] == expected
        });
        if ok {
            found = Some((prefix.to_vec(), dist));
        }
    });
    found.ok_or(JohnsonError::NoSuchTranslate { leader })
}

/// The two explicit anticode constructions used by the diameter bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnticodeFlavor {
    /// All w-subsets containing a fixed t-subset; size C(n-t,w-t).
    FixedTSubset,
    /// All w-subsets meeting a fixed (t+2)-subset S in at least t+1 points;
    /// size C(n-t-2,w-t-2) + (t+2) C(n-t-2,w-t-1).
    SIntersecting,
}

/// Constructs the named anticode and returns it with its verified diameter.
pub fn anticode_ball(
    n: u32,
    w: u32,
    t: u32,
    flavor: AnticodeFlavor,
) -> Result<(Vec<Word>, u32), JohnsonError> {
    if t > w || w > n {
        return Err(JohnsonError::ParamMismatch(format!(
            "need t <= w <= n, got t={t} w={w} n={n}"
        )));
    }
    if n > DEFAULT_N_GUARD {
        return Err(JohnsonError::SpaceTooLarge {
            size: binom_i(n as i64, w as i64),
            guard: binom_i(DEFAULT_N_GUARD as i64, w.min(DEFAULT_N_GUARD) as i64),
        });
    }
    let words: Vec<Word> = enumerate_space(n, w)
        .into_iter()
        .filter(|word| match flavor {
            AnticodeFlavor::FixedTSubset => (0..t).all(|c| word.contains(c)),
            AnticodeFlavor::SIntersecting => {
                let s_size = t + 2;
                if s_size > n {
                    return false;
                }
                (0..s_size).filter(|&c| word.contains(c)).count() as u32 >= t + 1
            }
        })
        .collect();
    let mut diameter = 0;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            diameter = diameter.max(j_distance(u, v)?);
        }
    }
    Ok((words, diameter))
}

/// The doubly anticode: fixed t1-subset in the first block and t2-subset in
/// the second; size C(n1-t1,w1-t1) C(n2-t2,w2-t2), diameter w1+w2-t1-t2.
pub fn anticode_doubly(
    n1: u32,
    w1: u32,
    t1: u32,
    n2: u32,
    w2: u32,
    t2: u32,
) -> Result<(Vec<DoublyWord>, u32), JohnsonError> {
    if t1 > w1 || w1 > n1 || t2 > w2 || w2 > n2 {
        return Err(JohnsonError::ParamMismatch("need t_i <= w_i <= n_i".into()));
    }
    let words: Vec<DoublyWord> = enumerate_space_doubly(n1, w1, n2, w2)
        .into_iter()
        .filter(|word| {
            (0..t1).all(|c| word.first.contains(c)) && (0..t2).all(|c| word.second.contains(c))
        })
        .collect();
    let mut diameter = 0;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            diameter = diameter.max(j_distance_doubly(u, v)?);
        }
    }
    Ok((words, diameter))
}
