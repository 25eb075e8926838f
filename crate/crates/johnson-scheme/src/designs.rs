//! Block designs, Steiner systems and doubly Steiner systems: verification
//! by enumeration, derived structures, and the Chapter-4 existence bounds.

use crate::exactmath::{binom_i, ExactInt, ExactRational};
use crate::johnson::{for_each_subset, Code, JohnsonError, Word};
use std::fmt;

/// Errors from design verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignError {
    /// Blocks of unequal size or duplicate blocks.
    Malformed(String),
    /// A derived design was requested from a non-Steiner input.
    NotSteiner { t: u32 },
    /// Underlying word/space error.
    Johnson(JohnsonError),
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignError::Malformed(msg) => write!(f, "malformed design: {msg}"),
            DesignError::NotSteiner { t } => {
                write!(f, "input does not verify as a Steiner system at t={t}")
            }
            DesignError::Johnson(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DesignError {}

impl From<JohnsonError> for DesignError {
    fn from(e: JohnsonError) -> Self {
        DesignError::Johnson(e)
    }
}

/// A block design: a collection of distinct w-subsets of an n-point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDesign {
    n: u32,
    w: u32,
    blocks: Vec<Vec<u32>>,
}

impl BlockDesign {
    pub fn new(n: u32, blocks: Vec<Vec<u32>>) -> Result<Self, DesignError> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let w = blocks.first().map_or(0, |b| b.len() as u32);
        for b in &blocks {
            if b.len() as u32 != w {
                return Err(DesignError::Malformed("blocks of unequal size".into()));
            }
            if b.windows(2).any(|p| p[0] == p[1]) {
                return Err(DesignError::Malformed("repeated point in block".into()));
            }
            if b.iter().any(|&p| p >= n) {
                return Err(DesignError::Malformed(format!("point >= n = {n}")));
            }
        }
        blocks.sort();
        if blocks.windows(2).any(|p| p[0] == p[1]) {
            return Err(DesignError::Malformed("duplicate block".into()));
        }
        Ok(BlockDesign { n, w, blocks })
    }

    /// The canonical Fano-plane fixture: blocks 013, 124, 235, 346, 450,
    /// 561, 602 on 7 points (a 2-(7,3,1) design).
    pub fn fano() -> BlockDesign {
        BlockDesign::new(
            7,
            vec![
                vec![0, 1, 3],
                vec![1, 2, 4],
                vec![2, 3, 5],
                vec![3, 4, 6],
                vec![4, 5, 0],
                vec![5, 6, 1],
                vec![6, 0, 2],
            ],
        )
        .unwrap()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// View as a constant-weight code in J(n,w).
    pub fn as_code(&self) -> Result<Code, DesignError> {
        let words: Result<Vec<Word>, _> = self
            .blocks
            .iter()
            .map(|b| Word::new(self.n, b.clone()))
            .collect();
        Ok(Code::new(self.n, self.w, words?)?)
    }

    /// Parses the block-list file format shared with codes.
    pub fn parse(text: &str) -> Result<Self, DesignError> {
        let code = Code::parse(text)?;
        BlockDesign::new(
            code.n(),
            code.words().iter().map(|w| w.support().to_vec()).collect(),
        )
    }
}

/// Returns λ iff every t-subset of the points lies in exactly λ blocks.
///
/// Convention for t=0: every design is a 0-design with λ = block count.
pub fn verify_design(d: &BlockDesign, t: u32) -> Option<u64> {
    if t > d.w {
        return None;
    }
    if t == 0 {
        return Some(d.block_count() as u64);
    }
    let mut lambda: Option<u64> = None;
    let mut ok = true;
    for_each_subset(d.n, t, |subset| {
        if !ok {
            return;
        }
        let count = d
            .blocks
            .iter()
            .filter(|b| subset.iter().all(|p| b.binary_search(p).is_ok()))
            .count() as u64;
        match lambda {
            None => lambda = Some(count),
            Some(l) if l != count => ok = false,
            _ => {}
        }
    });
    if ok {
        lambda
    } else {
        None
    }
}

/// The largest t for which the design is a t-design (0 if none beyond the
/// trivial 0-design).
///
/// Convention: a collection of a single block is assigned strength w (the
/// block contains each of its own t-subsets exactly once); this degenerate
/// case corresponds to the one-word trivial perfect code.
pub fn code_strength(d: &BlockDesign) -> u32 {
    if d.block_count() == 1 {
        return d.w;
    }
    let mut best = 0;
    for t in 1..=d.w {
        if verify_design(d, t).is_some() {
            best = t;
        } else {
            break; // every t-design is an s-design for s < t
        }
    }
    best
}

/// One necessary condition for a Steiner system S(t,w,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteinerCondition {
    /// C(n-i,t-i) / C(w-i,t-i) must be an integer.
    Divisibility {
        i: u32,
        ratio: ExactRational,
        pass: bool,
    },
    /// Tits bound n >= (t+1)(w-t+1) (for w < n).
    TitsBound { required: u64, pass: bool },
}

impl SteinerCondition {
    pub fn pass(&self) -> bool {
        match self {
            SteinerCondition::Divisibility { pass, .. } => *pass,
            SteinerCondition::TitsBound { pass, .. } => *pass,
        }
    }
}

/// Verdicts for all Steiner divisibility conditions plus the Tits bound,
/// and the block count C(n,t)/C(w,t) when everything passes.
pub struct SteinerReport {
    pub conditions: Vec<SteinerCondition>,
    pub block_count: Option<ExactInt>,
}

impl SteinerReport {
    pub fn admissible(&self) -> bool {
        self.conditions.iter().all(SteinerCondition::pass)
    }

    /// The first failing condition, if any.
    pub fn first_failure(&self) -> Option<&SteinerCondition> {
        self.conditions.iter().find(|c| !c.pass())
    }
}

/// Checks the divisibility ratios C(n-i,t-i)/C(w-i,t-i) for 0 <= i <= t and
/// the Tits bound n >= (t+1)(w-t+1) when w < n.
pub fn steiner_conditions(t: u32, w: u32, n: u32) -> SteinerReport {
    assert!(t <= w && w <= n, "need t <= w <= n");
    let mut conditions = Vec::new();
    let mut all_pass = true;
    for i in 0..=t {
        let num = binom_i((n - i) as i64, (t - i) as i64);
        let den = binom_i((w - i) as i64, (t - i) as i64);
        let ratio = ExactRational::new(num, den);
        let pass = ratio.is_integer();
        all_pass &= pass;
        conditions.push(SteinerCondition::Divisibility { i, ratio, pass });
    }
    if w < n {
        let required = (t as u64 + 1) * (w as u64 - t as u64 + 1);
        let pass = n as u64 >= required;
        all_pass &= pass;
        conditions.push(SteinerCondition::TitsBound { required, pass });
    }
    let block_count = if all_pass {
        Some(binom_i(n as i64, t as i64) / binom_i(w as i64, t as i64))
    } else {
        None
    };
    SteinerReport {
        conditions,
        block_count,
    }
}

/// Derived design at a point of a Steiner system S(t,w,n): the blocks
/// through the point, with the point removed and the remaining points
/// renumbered — an S(t-1,w-1,n-1).
pub fn derived_design(d: &BlockDesign, t: u32, point: u32) -> Result<BlockDesign, DesignError> {
    if t == 0 || verify_design(d, t) != Some(1) {
        return Err(DesignError::NotSteiner { t });
    }
    let renumber = |p: u32| if p > point { p - 1 } else { p };
    let blocks = d
        .blocks
        .iter()
        .filter(|b| b.binary_search(&point).is_ok())
        .map(|b| {
            b.iter()
                .filter(|&&p| p != point)
                .map(|&p| renumber(p))
                .collect()
        })
        .collect();
    BlockDesign::new(d.n - 1, blocks)
}

/// Incidence matrix: rows are blocks, columns are points, a[i][j] = 1 iff
/// point j lies in block i.
pub fn incidence_matrix(d: &BlockDesign) -> Vec<Vec<u8>> {
    d.blocks
        .iter()
        .map(|b| {
            (0..d.n)
                .map(|p| u8::from(b.binary_search(&p).is_ok()))
                .collect()
        })
        .collect()
}

/// Parameters of a doubly Steiner system S(t1,t2,w1,w2,n1,n2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublySteinerParams {
    pub t1: u32,
    pub t2: u32,
    pub w1: u32,
    pub w2: u32,
    pub n1: u32,
    pub n2: u32,
}

/// Parameter-level verdict for a doubly Steiner system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublySteinerBounds {
    /// |C| = C(n1,t1)C(n2,t2)/(C(w1,t1)C(w2,t2)), exact.
    pub size: ExactRational,
    pub size_integral: bool,
    /// max{w1(t2+1) - t1 t2, (w1-t1+1)(t1+1)} after normalization.
    pub n1_lower: u64,
    /// max{w2(t1+1) - t1 t2, (w2-t2+1)(t2+1)} after normalization.
    pub n2_lower: u64,
    pub n1_pass: bool,
    pub n2_pass: bool,
    /// The bounds assume t2 > t1; when t1 > t2 the blocks are swapped first
    /// (by symmetry) and this flag records the swap. t1 = t2 leaves the
    /// hypothesis unmet and only the raw expressions are reported.
    pub swapped: bool,
    pub hypothesis_met: bool,
}

impl DoublySteinerBounds {
    pub fn all_pass(&self) -> bool {
        self.size_integral && self.n1_pass && self.n2_pass
    }
}

/// Evaluates the doubly Steiner size integrality and both lower bounds on
/// n1 and n2.
pub fn doubly_steiner_bounds(p: &DoublySteinerParams) -> DoublySteinerBounds {
    assert!(p.t1 <= p.w1 && p.w1 <= p.n1 && p.t2 <= p.w2 && p.w2 <= p.n2);
    let size = ExactRational::new(
        binom_i(p.n1 as i64, p.t1 as i64) * binom_i(p.n2 as i64, p.t2 as i64),
        binom_i(p.w1 as i64, p.t1 as i64) * binom_i(p.w2 as i64, p.t2 as i64),
    );
    let size_integral = size.is_integer();
    let swapped = p.t1 > p.t2;
    let q = if swapped {
        DoublySteinerParams {
            t1: p.t2,
            t2: p.t1,
            w1: p.w2,
            w2: p.w1,
            n1: p.n2,
            n2: p.n1,
        }
    } else {
        *p
    };
    let (t1, t2, w1, w2) = (q.t1 as u64, q.t2 as u64, q.w1 as u64, q.w2 as u64);
    let n1_lower = (w1 * (t2 + 1)).saturating_sub(t1 * t2).max((w1 - t1 + 1) * (t1 + 1));
    let n2_lower = (w2 * (t1 + 1)).saturating_sub(t1 * t2).max((w2 - t2 + 1) * (t2 + 1));
    DoublySteinerBounds {
        size,
        size_integral,
        n1_lower,
        n2_lower,
        n1_pass: q.n1 as u64 >= n1_lower,
        n2_pass: q.n2 as u64 >= n2_lower,
        swapped,
        hypothesis_met: q.t1 < q.t2 && q.t1 < q.w1,
    }
}

/// Verification of a concrete doubly Steiner system: every configuration
/// (t1,t2) word lies in exactly one codeword, plus the diameter-perfect
/// size equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoublyCoverVerdict {
    Verified { diameter_perfect: bool },
    Fail { witness: (Vec<u32>, Vec<u32>), count: usize },
}

/// Checks the perfect-cover property of a doubly code against S(t1,t2,...).
pub fn doubly_steiner_verify(
    p: &DoublySteinerParams,
    code: &crate::johnson::DoublyCode,
) -> Result<DoublyCoverVerdict, DesignError> {
    let (n1, w1, n2, w2) = code.params();
    if (n1, w1, n2, w2) != (p.n1, p.w1, p.n2, p.w2) {
        return Err(DesignError::Malformed(
            "code parameters do not match the declared system".into(),
        ));
    }
    let mut t1_subsets = Vec::new();
    for_each_subset(p.n1, p.t1, |s| t1_subsets.push(s.to_vec()));
    let mut t2_subsets = Vec::new();
    for_each_subset(p.n2, p.t2, |s| t2_subsets.push(s.to_vec()));
    for s1 in &t1_subsets {
        for s2 in &t2_subsets {
            let count = code
                .words()
                .iter()
                .filter(|u| {
                    s1.iter().all(|c| u.first().contains(*c))
                        && s2.iter().all(|c| u.second().contains(*c))
                })
                .count();
            if count != 1 {
                return Ok(DoublyCoverVerdict::Fail {
                    witness: (s1.clone(), s2.clone()),
                    count,
                });
            }
        }
    }
    // diameter-perfect equality with the product anticode
    let lhs = ExactInt::from(code.len() as u64)
        * binom_i((p.n1 - p.t1) as i64, (p.w1 - p.t1) as i64)
        * binom_i((p.n2 - p.t2) as i64, (p.w2 - p.t2) as i64);
    let rhs = binom_i(p.n1 as i64, p.w1 as i64) * binom_i(p.n2 as i64, p.w2 as i64);
    Ok(DoublyCoverVerdict::Verified {
        diameter_perfect: lhs == rhs,
    })
}

/// The anticode inequality of the diameter bound's second construction:
/// C(n-t-2,w-t-2) + (t+2) C(n-t-2,w-t-1) <= C(n-t,w-t).
pub fn anticode_inequality_holds(n: u32, w: u32, t: u32) -> bool {
    let n = n as i64;
    let w = w as i64;
    let t = t as i64;
    binom_i(n - t - 2, w - t - 2) + ExactInt::from(t + 2) * binom_i(n - t - 2, w - t - 1)
        <= binom_i(n - t, w - t)
}
